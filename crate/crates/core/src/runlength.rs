//! Runlength map between binary words and positive integer vectors.
//!
//! A word starting with `0` and ending with `1` has an even number `n` of
//! maximal runs; its image is `(x_1, y_1, ..., x_{n/2}, y_{n/2})`. A few
//! deletions that leave every run nonempty move the image by exactly that
//! many units in Manhattan distance.

use std::fmt;

use crate::error::{Error, Result};

/// Runlengths of a word that starts with 0 and ends with 1.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RunVector(Vec<i64>);

impl RunVector {
    pub fn new(runs: Vec<i64>) -> Result<Self> {
        if runs.is_empty() || !runs.len().is_multiple_of(2) {
            return Err(Error::Domain(format!(
                "run count {} must be even and positive",
                runs.len()
            )));
        }
        if let Some(bad) = runs.iter().find(|&&x| x < 1) {
            return Err(Error::Domain(format!("non-positive run length {bad}")));
        }
        Ok(RunVector(runs))
    }

    pub fn runs(&self) -> &[i64] {
        &self.0
    }

    /// Number of runs `n`.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Word length `N`.
    pub fn total(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn into_inner(self) -> Vec<i64> {
        self.0
    }
}

impl fmt::Display for RunVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "{}", parts.join(" "))
    }
}

pub fn parse_word(s: &str) -> Result<Vec<u8>> {
    s.trim()
        .chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            other => Err(Error::Parse(format!("{other:?} is not a binary symbol"))),
        })
        .collect()
}

pub fn format_word(word: &[u8]) -> String {
    word.iter().map(|&b| if b == 0 { '0' } else { '1' }).collect()
}

pub fn phi(word: &[u8]) -> Result<RunVector> {
    let violation = |reason: &str| Error::Hypothesis {
        word: format_word(word),
        reason: reason.to_string(),
    };
    match (word.first(), word.last()) {
        (None, _) => return Err(violation("empty word")),
        (Some(&first), _) if first != 0 => return Err(violation("does not start with 0")),
        (_, Some(&last)) if last != 1 => return Err(violation("does not end with 1")),
        _ => {}
    }
    if let Some(&bad) = word.iter().find(|&&b| b > 1) {
        return Err(Error::Domain(format!("symbol {bad} is not binary")));
    }
    let runs = word
        .chunk_by(|a, b| a == b)
        .map(|run| run.len() as i64)
        .collect();
    RunVector::new(runs)
}

pub fn phi_inverse(rv: &RunVector) -> Vec<u8> {
    rv.runs()
        .iter()
        .enumerate()
        .flat_map(|(i, &len)| std::iter::repeat_n((i % 2) as u8, len as usize))
        .collect()
}

pub fn manhattan_distance(u: &[i64], v: &[i64]) -> Result<u64> {
    if u.len() != v.len() {
        return Err(Error::Dimension {
            expected: u.len(),
            got: v.len(),
        });
    }
    Ok(u.iter().zip(v).map(|(a, b)| a.abs_diff(*b)).sum())
}

/// Insertion/deletion distance `|u| + |v| - 2 LCS(u, v)`.
pub fn levenshtein_indel_distance(u: &[u8], v: &[u8]) -> usize {
    let mut prev = vec![0usize; v.len() + 1];
    let mut cur = vec![0usize; v.len() + 1];
    for &a in u {
        for (j, &b) in v.iter().enumerate() {
            cur[j + 1] = if a == b {
                prev[j] + 1
            } else {
                prev[j + 1].max(cur[j])
            };
        }
        std::mem::swap(&mut prev, &mut cur);
    }
    u.len() + v.len() - 2 * prev[v.len()]
}

/// Every run is at least `r` long.
pub fn validate_hypothesis(rv: &RunVector, r: i64) -> bool {
    rv.runs().iter().all(|&x| x >= r)
}
