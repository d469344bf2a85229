//! Single-deletion decoder for codebooks carved from `A(K_n)`.
//!
//! `A(K_n) = 2 D_n u (1 + 2 D_n)` and `2 D_n` is a translate of
//! `2 A_{n-1}`, so after subtracting a coset representative `a` the
//! received vector is decoded against `2 A_{n-1}` by moving the whole
//! coordinate sum onto one coordinate. A received sum of `N - 1` means one
//! run lost a symbol and the lone coordinate of the wrong parity is
//! incremented instead.
//!
//! Additions and parity tests are counted the way the algorithm is
//! costed: `n - 1` for the sum test, `n` to subtract `a`, `n - 1` for the
//! residual sum, one addition and one parity test per projection tried,
//! and `n` to add `a` back, for at most `5n - 2` additions and `n` parity
//! tests.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::lattice::in_two_coset_form;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeBranch {
    ParityFix,
    Projection,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeFailure {
    /// Sum is `N - 1` but no single coordinate has the minority parity.
    NoParityOutlier,
    /// No projection `phi^(i)(x - a)` lands in `2 A_{n-1}`.
    NoEvenProjection,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DecodeTrace {
    pub input: Vec<i64>,
    pub output: Option<Vec<i64>>,
    pub branch: DecodeBranch,
    /// Zero-based coordinate whose projection succeeded.
    pub projection_index: Option<usize>,
    pub additions_used: usize,
    pub parity_tests_used: usize,
    pub failure: Option<DecodeFailure>,
}

impl DecodeTrace {
    pub fn succeeded(&self) -> bool {
        self.output.is_some()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct DecodeOptions {
    /// Skip the `N - 1` parity shortcut and always project.
    pub force_projection: bool,
}

/// `x` with its coordinate sum subtracted from coordinate `i`; the result
/// has zero sum.
pub fn phi_projection(x: &[i64], i: usize) -> Vec<i64> {
    let s: i64 = x.iter().sum();
    let mut out = x.to_vec();
    out[i] -= s;
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NearestPoint {
    pub point: Vec<i64>,
    pub index: usize,
    /// `|sum x|`, a lower bound on the distance from `x` to `A_{n-1}`
    /// that the projection attains.
    pub distance: u64,
}

/// A closest point of `A_{n-1}` to `x`, obtained by projecting along the
/// largest coordinate.
pub fn nearest_in_an1(x: &[i64]) -> NearestPoint {
    let index = x
        .iter()
        .enumerate()
        .max_by_key(|&(i, &v)| (v, std::cmp::Reverse(i)))
        .map_or(0, |(i, _)| i);
    NearestPoint {
        point: phi_projection(x, index),
        index,
        distance: x.iter().sum::<i64>().unsigned_abs(),
    }
}

/// Coset representative of `A_{n-1}` for codewords of sum `N`:
/// `(1, ..., 1, N - n + 1)` for the all-odd coset, `(N, 0, ..., 0)` for the
/// all-even one.
pub fn coset_representative(n: usize, total: i64, odd: bool) -> Vec<i64> {
    if odd {
        let mut a = vec![1i64; n];
        a[n - 1] = total - n as i64 + 1;
        a
    } else {
        let mut a = vec![0i64; n];
        a[0] = total;
        a
    }
}

/// Majority coordinate parity (`true` = odd), `None` on a tie.
pub fn majority_parity(x: &[i64]) -> Option<bool> {
    let odd = x.iter().filter(|v| v.rem_euclid(2) == 1).count();
    let even = x.len() - odd;
    match odd.cmp(&even) {
        std::cmp::Ordering::Greater => Some(true),
        std::cmp::Ordering::Less => Some(false),
        std::cmp::Ordering::Equal => None,
    }
}

pub fn decode(x: &[i64], total: i64, a: &[i64]) -> Result<DecodeTrace> {
    decode_with(x, total, a, DecodeOptions::default())
}

pub fn decode_with(x: &[i64], total: i64, a: &[i64], options: DecodeOptions) -> Result<DecodeTrace> {
    let n = x.len();
    if n < 2 {
        return Err(Error::Parameter("decoder needs n >= 2".into()));
    }
    if a.len() != n {
        return Err(Error::Dimension { expected: n, got: a.len() });
    }
    let mut additions = n - 1;
    let sum: i64 = x.iter().sum();

    if sum == total - 1 && !options.force_projection {
        let coset_odd = a[0].rem_euclid(2) == 1;
        let outliers: Vec<usize> = (0..n)
            .filter(|&j| (x[j].rem_euclid(2) == 1) != coset_odd)
            .collect();
        let mut trace = DecodeTrace {
            input: x.to_vec(),
            output: None,
            branch: DecodeBranch::ParityFix,
            projection_index: None,
            additions_used: additions,
            parity_tests_used: n,
            failure: None,
        };
        if let [j] = outliers[..] {
            let mut out = x.to_vec();
            out[j] += 1;
            trace.additions_used += 1;
            trace.projection_index = Some(j);
            trace.output = Some(out);
        } else {
            trace.failure = Some(DecodeFailure::NoParityOutlier);
        }
        return Ok(trace);
    }

    let shifted: Vec<i64> = x.iter().zip(a).map(|(v, c)| v - c).collect();
    additions += n;
    let s: i64 = shifted.iter().sum();
    additions += n - 1;
    let mut parity_tests = 0;
    let mut found = None;
    for i in 0..n {
        let mut candidate = shifted.clone();
        candidate[i] -= s;
        additions += 1;
        parity_tests += 1;
        if candidate.iter().all(|v| v.rem_euclid(2) == 0) {
            found = Some((i, candidate));
            break;
        }
    }
    let mut trace = DecodeTrace {
        input: x.to_vec(),
        output: None,
        branch: DecodeBranch::Projection,
        projection_index: None,
        additions_used: additions,
        parity_tests_used: parity_tests,
        failure: None,
    };
    match found {
        Some((i, point)) => {
            trace.additions_used += n;
            trace.projection_index = Some(i);
            trace.output = Some(point.iter().zip(a).map(|(p, c)| p + c).collect());
        }
        None => trace.failure = Some(DecodeFailure::NoEvenProjection),
    }
    Ok(trace)
}

/// Decodes without a caller-supplied coset: the coset comes from the
/// majority parity of `x`, and on a tie both cosets are tried and the one
/// landing in `A(K_n)` with sum `N` is kept.
pub fn decode_auto(x: &[i64], total: i64) -> Result<DecodeTrace> {
    let n = x.len();
    if n < 2 {
        return Err(Error::Parameter("decoder needs n >= 2".into()));
    }
    let parities: Vec<bool> = match majority_parity(x) {
        Some(p) => vec![p],
        None => vec![true, false],
    };
    let mut last = None;
    for odd in parities {
        let a = coset_representative(n, total, odd);
        let trace = decode(x, total, &a)?;
        let good = trace
            .output
            .as_ref()
            .is_some_and(|o| o.iter().sum::<i64>() == total && in_two_coset_form(o));
        if good {
            return Ok(trace);
        }
        last = Some(trace);
    }
    let mut trace = last.expect("at least one coset tried");
    if trace.failure.is_none() {
        trace.failure = Some(DecodeFailure::NoEvenProjection);
        trace.output = None;
    }
    Ok(trace)
}

/// `(additions, parity tests)` spent by a decode.
pub fn count_operations(trace: &DecodeTrace) -> (usize, usize) {
    (trace.additions_used, trace.parity_tests_used)
}

#[cfg(test)]
mod tests {
    use super::*;

    const A: [i64; 8] = [1, 1, 1, 1, 1, 1, 1, 5];

    #[test]
    fn projection_examples() {
        assert_eq!(phi_projection(&[2, 1, 0, 0, 0, 0, 0, -4], 1), vec![2, 2, 0, 0, 0, 0, 0, -4]);
        assert_eq!(phi_projection(&[1, 1], 0), vec![-1, 1]);
        assert_eq!(phi_projection(&[3, -1, -2], 2), vec![3, -1, -2]);
    }

    #[test]
    fn nearest_point_bound() {
        let p = nearest_in_an1(&[1, 0]);
        assert_eq!((p.point, p.distance), (vec![0, 0], 1));
        let x = [2, 1, 0, 0, 0, 0, 0, -4];
        let p = nearest_in_an1(&x);
        assert_eq!(p.distance, 1);
        let realized: u64 = x.iter().zip(&p.point).map(|(a, b)| a.abs_diff(*b)).sum();
        assert_eq!(realized, 1);
        assert_eq!(nearest_in_an1(&[3, -3]).distance, 0);
    }

    #[test]
    fn worked_example_both_branches() {
        let x = [3, 2, 1, 1, 1, 1, 1, 1];
        let fix = decode(&x, 12, &A).unwrap();
        assert_eq!(fix.branch, DecodeBranch::ParityFix);
        assert_eq!(fix.output, Some(vec![3, 3, 1, 1, 1, 1, 1, 1]));
        let forced = decode_with(&x, 12, &A, DecodeOptions { force_projection: true }).unwrap();
        assert_eq!(forced.branch, DecodeBranch::Projection);
        assert_eq!(forced.projection_index, Some(1));
        assert_eq!(forced.output, fix.output);
        assert!(forced.additions_used <= 38 && forced.parity_tests_used <= 8);
        assert_eq!(count_operations(&fix), (8, 8));
    }

    #[test]
    fn coset_representatives() {
        assert_eq!(coset_representative(8, 12, true), A.to_vec());
        assert_eq!(coset_representative(4, 8, false), vec![8, 0, 0, 0]);
        assert_eq!(majority_parity(&[3, 2, 1, 1]), Some(true));
        assert_eq!(majority_parity(&[2, 3]), None);
    }

    #[test]
    fn failures_are_signalled() {
        // two deletions in different runs
        let t = decode(&[2, 2, 1, 1, 1, 1, 1, 1], 12, &A).unwrap();
        assert_eq!(t.failure, Some(DecodeFailure::NoEvenProjection));
        assert!(t.output.is_none());
        // sum N-1 with two wrong-parity coordinates
        let t = decode(&[2, 2, 2, 1, 1, 1, 1, 1], 12, &A).unwrap();
        assert_eq!(t.failure, Some(DecodeFailure::NoParityOutlier));
        assert!(decode(&[1], 1, &[1]).is_err());
    }

    #[test]
    fn n_two_tie_is_resolved() {
        // (3,3) in A(K_2); delete from the first run
        let t = decode_auto(&[2, 3], 6).unwrap();
        assert_eq!(t.output, Some(vec![3, 3]));
        assert!(t.additions_used <= 8);
    }
}
