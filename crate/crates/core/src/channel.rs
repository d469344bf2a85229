//! Budgeted deletion channel and the encode, delete, decode pipeline.

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::codebook::Codebook;
use crate::decoder::{decode_auto, DecodeBranch, DecodeFailure};
use crate::error::{Error, Result};
use crate::runlength::{phi, phi_inverse, RunVector};

/// Failure examples kept in a report.
const MAX_EXAMPLES: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum ChannelModel {
    /// Every codeword with every set of exactly `t` deleted positions.
    Exhaustive,
    /// Seeded draws: codeword uniform, pattern size uniform on `0..=t`,
    /// positions uniform among subsets of that size.
    UniformRandom { trials: u64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ChannelConfig {
    pub max_deletions: usize,
    pub model: ChannelModel,
    pub seed: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TrialError {
    /// The received word no longer has the codeword's run count.
    RunCountChanged { expected: usize, got: Option<usize> },
    Decode(DecodeFailure),
    /// Decoding produced a different codeword.
    Miscorrected { decoded: Vec<i64> },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct FailureExample {
    pub codeword: Vec<i64>,
    pub positions: Vec<usize>,
    pub received: Option<Vec<i64>>,
    pub error: TrialError,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize)]
pub struct SimulationReport {
    pub trials: u64,
    pub successes: u64,
    pub failures: u64,
    pub parity_fix_successes: u64,
    pub projection_successes: u64,
    pub hypothesis_violations: u64,
    pub examples: Vec<FailureExample>,
}

impl SimulationReport {
    pub fn success_rate(&self) -> f64 {
        if self.trials == 0 {
            return 1.0;
        }
        self.successes as f64 / self.trials as f64
    }

    pub fn summary(&self) -> String {
        format!(
            "trials={} successes={} failures={} rate={:.6} parity_fix={} projection={} violations={}",
            self.trials,
            self.successes,
            self.failures,
            self.success_rate(),
            self.parity_fix_successes,
            self.projection_successes,
            self.hypothesis_violations
        )
    }
}

/// Removes the symbols at strictly increasing `positions`.
pub fn apply_deletions(word: &[u8], positions: &[usize]) -> Result<Vec<u8>> {
    if let Some(&p) = positions.iter().find(|&&p| p >= word.len()) {
        return Err(Error::OutOfRange {
            index: p,
            len: word.len(),
        });
    }
    if positions.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Parameter("deletion positions must be strictly increasing".into()));
    }
    let mut skip = positions.iter().peekable();
    Ok(word
        .iter()
        .enumerate()
        .filter(|(i, _)| {
            if skip.peek() == Some(&i) {
                skip.next();
                false
            } else {
                true
            }
        })
        .map(|(_, &b)| b)
        .collect())
}

/// All `k`-subsets of `0..len` in lexicographic order.
fn combinations(len: usize, k: usize) -> Vec<Vec<usize>> {
    if k > len {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let Some(i) = (0..k).rev().find(|&i| idx[i] != i + len - k) else {
            return out;
        };
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}

struct Trial {
    outcome: std::result::Result<DecodeBranch, TrialError>,
    example: FailureExample,
}

fn run_trial(codebook: &Codebook, codeword: &[i64], positions: Vec<usize>) -> Result<Trial> {
    let rv = RunVector::new(codeword.to_vec())?;
    let sent = phi_inverse(&rv);
    let received = apply_deletions(&sent, &positions)?;
    let mut example = FailureExample {
        codeword: codeword.to_vec(),
        positions,
        received: None,
        error: TrialError::RunCountChanged {
            expected: codebook.n,
            got: None,
        },
    };
    // n is taken from the received word itself
    let runs = match phi(&received) {
        Ok(runs) => runs,
        Err(_) => {
            return Ok(Trial {
                outcome: Err(example.error.clone()),
                example,
            })
        }
    };
    example.received = Some(runs.runs().to_vec());
    if runs.len() != codebook.n {
        example.error = TrialError::RunCountChanged {
            expected: codebook.n,
            got: Some(runs.len()),
        };
        return Ok(Trial {
            outcome: Err(example.error.clone()),
            example,
        });
    }
    let trace = decode_auto(runs.runs(), codebook.total)?;
    let outcome = match (trace.output, trace.failure) {
        (Some(out), _) if out == codeword => Ok(trace.branch),
        (Some(out), _) => Err(TrialError::Miscorrected { decoded: out }),
        (None, Some(f)) => Err(TrialError::Decode(f)),
        (None, None) => Err(TrialError::Decode(DecodeFailure::NoEvenProjection)),
    };
    if let Err(e) = &outcome {
        example.error = e.clone();
    }
    Ok(Trial { outcome, example })
}

pub fn run_pipeline(codebook: &Codebook, config: &ChannelConfig) -> Result<SimulationReport> {
    if codebook.is_empty() {
        return Err(Error::Parameter("codebook is empty".into()));
    }
    if config.max_deletions as i64 > codebook.r - 1 {
        return Err(Error::Parameter(format!(
            "deletion budget {} exceeds r - 1 = {}",
            config.max_deletions,
            codebook.r - 1
        )));
    }
    let t = config.max_deletions;
    let trials: Vec<Result<Trial>> = match config.model {
        ChannelModel::Exhaustive => {
            let patterns = combinations(codebook.total as usize, t);
            codebook
                .words
                .par_iter()
                .flat_map_iter(|w| patterns.iter().map(move |p| run_trial(codebook, w, p.clone())))
                .collect()
        }
        ChannelModel::UniformRandom { trials } => (0..trials)
            .into_par_iter()
            .map(|k| {
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
                rng.set_stream(k);
                let w = &codebook.words[rng.gen_range(0..codebook.words.len())];
                let size = rng.gen_range(0..=t);
                let mut positions = sample(&mut rng, codebook.total as usize, size).into_vec();
                positions.sort_unstable();
                run_trial(codebook, w, positions)
            })
            .collect(),
    };
    let mut report = SimulationReport::default();
    for trial in trials {
        let trial = trial?;
        report.trials += 1;
        match trial.outcome {
            Ok(DecodeBranch::ParityFix) => {
                report.successes += 1;
                report.parity_fix_successes += 1;
            }
            Ok(DecodeBranch::Projection) => {
                report.successes += 1;
                report.projection_successes += 1;
            }
            Err(e) => {
                report.failures += 1;
                if matches!(e, TrialError::RunCountChanged { .. }) {
                    report.hypothesis_violations += 1;
                }
                if report.examples.len() < MAX_EXAMPLES {
                    report.examples.push(trial.example);
                }
            }
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codebook::generate;
    use crate::runlength::{format_word, parse_word};

    #[test]
    fn deletion_examples() {
        let w = parse_word("0011100011").unwrap();
        assert_eq!(format_word(&apply_deletions(&w, &[3]).unwrap()), "001100011");
        assert_eq!(apply_deletions(&w, &[]).unwrap(), w);
        assert!(matches!(apply_deletions(&w, &[10]), Err(Error::OutOfRange { .. })));
        assert!(apply_deletions(&w, &[3, 3]).is_err());
        let runs = phi(&apply_deletions(&w, &[3]).unwrap()).unwrap();
        assert_eq!(runs.runs(), &[2, 2, 3, 2]);
    }

    #[test]
    fn combinations_count() {
        assert_eq!(combinations(5, 2).len(), 10);
        assert_eq!(combinations(3, 0), vec![Vec::<usize>::new()]);
        assert!(combinations(2, 3).is_empty());
    }

    #[test]
    fn zero_deletions_always_succeed() {
        let cb = generate(8, 20, 2).unwrap();
        let config = ChannelConfig {
            max_deletions: 0,
            model: ChannelModel::Exhaustive,
            seed: 0,
        };
        let rep = run_pipeline(&cb, &config).unwrap();
        assert_eq!(rep.trials, cb.len() as u64);
        assert_eq!(rep.successes, rep.trials);
        assert_eq!(rep.projection_successes, rep.trials);
    }

    #[test]
    fn budget_is_enforced() {
        let cb = generate(8, 12, 1).unwrap();
        let config = ChannelConfig {
            max_deletions: 1,
            model: ChannelModel::Exhaustive,
            seed: 0,
        };
        assert!(run_pipeline(&cb, &config).is_err());
    }

    #[test]
    fn random_model_is_deterministic() {
        let cb = generate(8, 20, 2).unwrap();
        let config = ChannelConfig {
            max_deletions: 1,
            model: ChannelModel::UniformRandom { trials: 300 },
            seed: 7,
        };
        let a = run_pipeline(&cb, &config).unwrap();
        let b = run_pipeline(&cb, &config).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.trials, 300);
        assert_eq!(a.failures, 0);
        assert!(a.parity_fix_successes > 0 && a.projection_successes > 0);
    }
}
