use deletion_lattice::channel::{run_pipeline, ChannelConfig, ChannelModel, TrialError};
use deletion_lattice::codebook::generate;

#[test]
fn exhaustive_single_deletions_are_all_corrected() {
    let cb = generate(8, 20, 2).unwrap();
    assert_eq!(cb.len(), 36);
    let config = ChannelConfig {
        max_deletions: 1,
        model: ChannelModel::Exhaustive,
        seed: 0,
    };
    let rep = run_pipeline(&cb, &config).unwrap();
    assert_eq!((rep.trials, rep.successes), (720, 720));
    assert_eq!(rep.hypothesis_violations, 0);
}

#[test]
fn two_deletions_exceed_the_single_deletion_decoder() {
    let cb = generate(8, 28, 3).unwrap();
    let config = ChannelConfig {
        max_deletions: 2,
        model: ChannelModel::UniformRandom { trials: 2000 },
        seed: 11,
    };
    let rep = run_pipeline(&cb, &config).unwrap();
    assert_eq!(rep.trials, 2000);
    assert!(rep.success_rate() < 1.0);
    assert!(rep.success_rate() > 0.0);
    assert_eq!(rep.hypothesis_violations, 0);
    assert!(rep
        .examples
        .iter()
        .all(|e| !matches!(e.error, TrialError::RunCountChanged { .. })));

    let exhaustive = ChannelConfig {
        model: ChannelModel::Exhaustive,
        ..config
    };
    let rep = run_pipeline(&cb, &exhaustive).unwrap();
    assert_eq!(rep.trials, cb.len() as u64 * 378);
    assert!(rep.failures > 0);
}

#[test]
fn reports_serialize_to_json() {
    let cb = generate(8, 20, 2).unwrap();
    let config = ChannelConfig {
        max_deletions: 1,
        model: ChannelModel::UniformRandom { trials: 50 },
        seed: 3,
    };
    let rep = run_pipeline(&cb, &config).unwrap();
    let json = serde_json::to_value(&rep).unwrap();
    assert_eq!(json["trials"], 50);
    assert_eq!(json["successes"], 50);
    assert!(rep.summary().contains("rate=1.000000"));
}
