use num_bigint::BigInt;
use proptest::prelude::*;

use deletion_lattice::bounds::{ambient_count, ball_volume, gilbert_lower, hamming_upper, rate_bound};
use deletion_lattice::channel::apply_deletions;
use deletion_lattice::codebook::generate;
use deletion_lattice::codes_z4::Z4Word;
use deletion_lattice::decoder::{decode_auto, decode_with, coset_representative, DecodeOptions};
use deletion_lattice::lattice::in_two_coset_form;
use deletion_lattice::runlength::{phi, phi_inverse, RunVector};
use deletion_lattice::series::IntSeries;
use deletion_lattice::tables::golden_diff;

fn run_vector() -> impl Strategy<Value = Vec<i64>> {
    (1usize..=5).prop_flat_map(|half| prop::collection::vec(1i64..=6, 2 * half))
}

fn series(degree: usize) -> impl Strategy<Value = IntSeries> {
    prop::collection::vec(-20i64..=20, degree + 1).prop_map(move |c| IntSeries::from_i64(&c, degree))
}

proptest! {
    #[test]
    fn phi_round_trip(runs in run_vector()) {
        let rv = RunVector::new(runs).unwrap();
        let word = phi_inverse(&rv);
        prop_assert_eq!(word.len() as i64, rv.total());
        prop_assert_eq!(phi(&word).unwrap(), rv);
    }

    #[test]
    fn series_ring_laws(a in series(12), b in series(12), c in series(12)) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a * &b, &b * &a);
    }

    #[test]
    fn reciprocal_inverts_unit_series(mut coeffs in prop::collection::vec(-9i64..=9, 10), sign in prop::bool::ANY) {
        coeffs[0] = if sign { 1 } else { -1 };
        let a = IntSeries::from_i64(&coeffs, 9);
        let inv = a.reciprocal().unwrap();
        prop_assert_eq!(&a * &inv, IntSeries::one(9));
    }

    #[test]
    fn z4_arithmetic_is_symbolwise(x in prop::collection::vec(0u8..4, 1..32), y in prop::collection::vec(0u8..4, 1..32), k in 0u8..4) {
        let n = x.len().min(y.len());
        let (x, y) = (&x[..n], &y[..n]);
        let (wx, wy) = (Z4Word::from_symbols(x), Z4Word::from_symbols(y));
        let sum: Vec<u8> = x.iter().zip(y).map(|(a, b)| (a + b) % 4).collect();
        prop_assert_eq!(wx.add(wy).to_symbols(n), sum);
        let neg: Vec<u8> = x.iter().map(|a| (4 - a) % 4).collect();
        prop_assert_eq!(wx.neg().to_symbols(n), neg);
        let scaled: Vec<u8> = x.iter().map(|a| a * k % 4).collect();
        prop_assert_eq!(wx.scale(k).to_symbols(n), scaled);
        let lee: usize = x.iter().map(|&a| (a.min(4 - a)) as usize).sum();
        prop_assert_eq!(wx.lee_weight(), lee);
    }

    #[test]
    fn single_deletion_is_corrected(index in 0usize..1000, position in 0usize..28) {
        let cb = generate(8, 28, 2).unwrap();
        let word = &cb.words[index % cb.len()];
        let sent = phi_inverse(&RunVector::new(word.clone()).unwrap());
        let received = phi(&apply_deletions(&sent, &[position]).unwrap()).unwrap();
        let trace = decode_auto(received.runs(), 28).unwrap();
        prop_assert_eq!(trace.output.as_ref(), Some(word));
        prop_assert!(trace.additions_used <= 38);
        prop_assert!(trace.parity_tests_used <= 8);
    }

    #[test]
    fn projection_recovers_codeword_shifted_by_one(index in 0usize..1000, j in 0usize..8) {
        let cb = generate(8, 20, 1).unwrap();
        let word = &cb.words[index % cb.len()];
        let mut x = word.clone();
        x[j] -= 1;
        let odd = word[0] % 2 == 1;
        let a = coset_representative(8, 20, odd);
        let trace = decode_with(&x, 20, &a, DecodeOptions { force_projection: true }).unwrap();
        prop_assert_eq!(trace.output.as_ref(), Some(word));
        prop_assert!(in_two_coset_form(word));
    }

    // The ratios satisfy ambient / V(n, d-1) <= ambient / V(n, e); after the
    // ceiling and the floor the lower bound can exceed the upper one by one
    // (n = 2, d = 3, N = 2, r = 1 gives I = 1, S = 0).
    #[test]
    fn gilbert_below_hamming(n in 2u64..=24, d in 1u64..=8, r in 1i64..=4, slack in 0i64..=60) {
        let total = n as i64 * r + slack;
        let lower: BigInt = gilbert_lower(n, d, total, r).unwrap();
        let upper: BigInt = hamming_upper(n, d, total, r).unwrap();
        let ambient = ambient_count(n, total, r);
        let (wide, narrow) = (ball_volume(n, d - 1), ball_volume(n, (d - 1) / 2));
        prop_assert!(&ambient * &narrow <= &ambient * &wide);
        prop_assert!(lower <= upper + 1);
    }

    #[test]
    fn asymptotic_lower_below_upper(r in 1u32..=5, eta in 0.01f64..0.99, delta in 0.0f64..1.99) {
        let p = rate_bound(r, eta, delta).unwrap();
        prop_assert!(p.lower.is_finite() && p.upper.is_finite());
        prop_assert!(p.lower <= p.upper + 1e-12);
    }

    #[test]
    fn golden_diff_detects_any_edit(values in prop::collection::vec(0u64..1000, 1..20), at in 0usize..20, bump in 1u64..5) {
        let csv = |v: &[u64]| {
            let mut s = String::from("i,v\n");
            for (i, x) in v.iter().enumerate() {
                s.push_str(&format!("{i},{x}\n"));
            }
            s
        };
        let base = csv(&values);
        prop_assert!(golden_diff(&base, &base).unwrap().passed());
        let mut edited = values.clone();
        let k = at % edited.len();
        edited[k] += bump;
        prop_assert!(!golden_diff(&csv(&edited), &base).unwrap().passed());
    }
}
