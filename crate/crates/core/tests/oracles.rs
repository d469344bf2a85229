//! Independent brute-force oracles for the generating-function, search and
//! bound machinery.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;

use deletion_lattice::bounds::ball_volume;
use deletion_lattice::codebook::{compositions, generate};
use deletion_lattice::codes_gf2::{build_binary_code, BinaryCodeName};
use deletion_lattice::codes_z4::{GolayExtension, Z4LinearCode};
use deletion_lattice::lattice::{BaseCode, ConstructionALattice};
use deletion_lattice::runlength::{levenshtein_indel_distance, manhattan_distance, phi, RunVector};
use deletion_lattice::series::{ball_series, nu_series};

fn big(x: u64) -> BigInt {
    BigInt::from(x)
}

/// Points of `A(C)` with entries `>= r` summing to `total`, by direct scan.
fn brute_count(code: &BaseCode, total: usize, r: usize) -> u64 {
    let lattice = ConstructionALattice::new(code.clone());
    let n = code.length();
    if total < n * r {
        return 0;
    }
    compositions(n, total as i64, r as i64)
        .iter()
        .filter(|x| lattice.contains(x).unwrap())
        .count() as u64
}

#[test]
fn nu_matches_brute_force_counts() {
    let codes: Vec<BaseCode> = vec![
        Z4LinearCode::klemm(4).unwrap().into(),
        build_binary_code(BinaryCodeName::ExtendedHamming8).unwrap().into(),
    ];
    for code in &codes {
        for r in 0..=2 {
            let nu = nu_series(code, r, 20).unwrap();
            for total in 0..=20 {
                assert_eq!(
                    nu.coefficient(total).unwrap(),
                    big(brute_count(code, total, r)),
                    "{} r={r} N={total}",
                    code.name()
                );
            }
        }
    }
}

#[test]
fn codebook_matches_brute_force_for_n4() {
    let lattice = ConstructionALattice::new(Z4LinearCode::klemm(4).unwrap());
    for r in 1..=3 {
        for total in 4..=16i64 {
            let expected: Vec<Vec<i64>> = compositions(4, total, r)
                .into_iter()
                .filter(|x| lattice.contains(x).unwrap())
                .collect();
            let cb = generate(4, total, r).unwrap();
            assert_eq!(cb.words, expected, "N={total} r={r}");
        }
    }
}

#[test]
fn shift_property_of_klemm_lattices() {
    for n in [4usize, 8] {
        let code: BaseCode = Z4LinearCode::klemm(n).unwrap().into();
        for r in 0..=3 {
            let lo = nu_series(&code, r, 60).unwrap();
            let hi = nu_series(&code, r + 1, 60).unwrap();
            for total in 0..=60 - n {
                assert_eq!(hi.coefficient(total + n).unwrap(), lo.coefficient(total).unwrap());
            }
        }
    }
}

/// `1/2 [(x0+x2)^s + (x0-x2)^s + (x1+x3)^s + (x1-x3)^s]` expanded by the
/// binomial theorem.
fn klemm_closed_form(s: usize) -> BTreeMap<[usize; 4], u64> {
    let binom = |n: usize, k: usize| -> i128 { (0..k).fold(1i128, |a, i| a * (n - i) as i128 / (i + 1) as i128) };
    let mut twice: BTreeMap<[usize; 4], i128> = BTreeMap::new();
    for k in 0..=s {
        let sign = if k % 2 == 0 { 1 } else { -1 };
        let c = binom(s, k);
        *twice.entry([s - k, 0, k, 0]).or_default() += c + sign * c;
        *twice.entry([0, s - k, 0, k]).or_default() += c + sign * c;
    }
    twice
        .into_iter()
        .filter(|&(_, v)| v != 0)
        .map(|(key, v)| {
            assert_eq!(v % 2, 0);
            (key, (v / 2) as u64)
        })
        .collect()
}

#[test]
fn klemm_closed_form_even_lengths() {
    for s in [2usize, 4, 6, 8] {
        let cwe = Z4LinearCode::klemm(s).unwrap().complete_weight_enumerator().unwrap();
        assert_eq!(cwe.terms, klemm_closed_form(s), "s={s}");
    }
}

#[test]
fn klemm_closed_form_undercounts_odd_lengths() {
    // 2 * all-ones lies outside 2 P_s when s is odd, doubling the code.
    for s in [3usize, 5, 7] {
        let code = Z4LinearCode::klemm(s).unwrap();
        assert_eq!(code.size(), 1u128 << (s + 1));
        let formula_total: u64 = klemm_closed_form(s).values().sum();
        assert_eq!(formula_total, 1 << s);
    }
}

#[test]
fn cwe_substitution_agrees_with_direct_distribution() {
    for code in [Z4LinearCode::klemm(8).unwrap(), Z4LinearCode::bw16().unwrap()] {
        let cwe = code.complete_weight_enumerator().unwrap();
        for r in 0..=4 {
            let direct = code.shifted_weight_distribution(r).unwrap();
            let via = cwe.substitute_shift(r);
            let d = direct.degree().max(via.degree());
            for k in 0..=d {
                assert_eq!(direct.coefficient(k), via.coefficient(k), "{} r={r} k={k}", code.name());
            }
            assert_eq!(direct.sum_coefficients(), BigInt::from(code.size()));
        }
    }
}

#[test]
fn minimum_lee_distances() {
    for n in [4usize, 6, 8] {
        assert_eq!(Z4LinearCode::klemm(n).unwrap().min_lee_distance().unwrap(), 4);
    }
    assert_eq!(Z4LinearCode::bw16().unwrap().min_lee_distance().unwrap(), 8);
    assert_eq!(
        ConstructionALattice::new(Z4LinearCode::klemm(8).unwrap()).min_distance().unwrap(),
        4
    );
}

#[test]
fn golay_lift_residue_and_lee_distance() {
    let code = Z4LinearCode::golay(GolayExtension::NegativeSum).unwrap();
    assert_eq!(code.code_type(), (12, 0));
    assert_eq!(code.min_lee_distance().unwrap(), 12);
}

/// Points of `Z^n` with `sum |x_i| <= budget`, visited one by one.
fn count_ball_points(n: usize, budget: i64) -> u64 {
    if n == 0 {
        return 1;
    }
    (-budget..=budget)
        .map(|x| count_ball_points(n - 1, budget - x.abs()))
        .sum()
}

#[test]
fn ball_volume_three_ways() {
    for n in 1..=8usize {
        let series = ball_series(n, 8);
        for e in 0..=8usize {
            let closed = ball_volume(n as u64, e as u64);
            assert_eq!(closed, big(count_ball_points(n, e as i64)), "n={n} e={e}");
            assert_eq!(series.coefficient(e), closed, "n={n} e={e}");
        }
    }
}

/// Words of length `len` that start with 0 and end with 1.
fn words(len: usize) -> Vec<Vec<u8>> {
    (0..1u32 << len)
        .map(|v| (0..len).map(|i| (v >> (len - 1 - i) & 1) as u8).collect::<Vec<u8>>())
        .filter(|w| w[0] == 0 && w[len - 1] == 1)
        .collect()
}

#[test]
fn isometry_exhaustive_up_to_length_12() {
    let mut unrestricted_counterexamples = 0usize;
    for len in 2..=12 {
        let mut by_runs: BTreeMap<usize, Vec<(Vec<u8>, RunVector)>> = BTreeMap::new();
        for w in words(len) {
            let rv = phi(&w).unwrap();
            by_runs.entry(rv.len()).or_default().push((w, rv));
        }
        for group in by_runs.values() {
            for (i, (u, pu)) in group.iter().enumerate() {
                for (v, pv) in &group[i + 1..] {
                    let indel = levenshtein_indel_distance(u, v) as u64;
                    let manhattan = manhattan_distance(pu.runs(), pv.runs()).unwrap();
                    assert!(indel <= manhattan, "{u:?} {v:?}");
                    if indel != manhattan {
                        unrestricted_counterexamples += 1;
                    }
                    // narrowed statement: runs >= r on both sides and the
                    // vectors within 2r of each other
                    let min_run = pu.runs().iter().chain(pv.runs()).min().copied().unwrap();
                    for r in 1..=3 {
                        if min_run >= r && manhattan <= 2 * r as u64 {
                            assert_eq!(indel, manhattan, "r={r} {u:?} {v:?}");
                        }
                    }
                }
            }
        }
    }
    // 000101 and 010001 have runs (3,1,1,1) and (1,1,3,1): Manhattan 4,
    // indel 2
    assert!(unrestricted_counterexamples > 0);
    assert_eq!(
        levenshtein_indel_distance(&[0, 0, 0, 1, 0, 1], &[0, 1, 0, 0, 0, 1]),
        2
    );
}

#[test]
fn deletions_within_budget_move_runs_by_their_count() {
    for len in 2..=12 {
        for w in words(len) {
            let rv = phi(&w).unwrap();
            let r = *rv.runs().iter().min().unwrap() as usize;
            if r < 2 {
                continue;
            }
            // every set of at most r - 1 deleted positions
            for mask in 1u32..1 << len {
                let t = mask.count_ones() as usize;
                if t > r - 1 {
                    continue;
                }
                let received: Vec<u8> = (0..len).filter(|i| mask >> i & 1 == 0).map(|i| w[i]).collect();
                let got = phi(&received).unwrap();
                assert_eq!(got.len(), rv.len());
                assert_eq!(manhattan_distance(rv.runs(), got.runs()).unwrap(), t as u64);
                assert_eq!(levenshtein_indel_distance(&w, &received), t);
            }
        }
    }
}

#[test]
fn table_iv_codewords_are_well_separated() {
    let cb = generate(8, 12, 1).unwrap();
    assert_eq!(cb.len(), 36);
    assert_eq!(cb.min_pairwise_distance(), Some(4));
    let set: BTreeSet<_> = cb.words.iter().collect();
    assert_eq!(set.len(), 36);
}
