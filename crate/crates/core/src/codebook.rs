//! Explicit `(n, d, N, r)`-sets carved from `A(K_n)`.
//!
//! Points of `A(K_n)` are written in the basis of
//! [`klemm_generator_matrix`](crate::lattice::klemm_generator_matrix):
//!
//! ```text
//! c = (x1, x1 + 2 x2, ..., x1 + 2 x_{n-1}, x1 + 2 (x2 + ... + x_{n-1}) + 4 x_n)
//! ```
//!
//! and a depth-first search walks `x1, x2, ...` inside per-level windows
//! that keep every coordinate `>= r` and leave room for the remaining
//! coordinates to reach the sum `N`. The last variable is forced by the
//! sum, so level `n` is a feasibility check.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Codebook {
    pub n: usize,
    pub d: usize,
    pub total: i64,
    pub r: i64,
    /// Codewords in ascending lexicographic order.
    pub words: Vec<Vec<i64>>,
    /// `visited_nodes[i - 1]` = assignments made at level `i`.
    pub visited_nodes: Vec<u64>,
}

/// Minimum Manhattan distance of `A(K_n)`: 4 for even `n >= 4`, else 2.
pub fn klemm_lattice_distance(n: usize) -> usize {
    if n >= 4 && n.is_multiple_of(2) {
        4
    } else {
        2
    }
}

fn ceil_div(a: i64, b: i64) -> i64 {
    a.div_euclid(b) + i64::from(a.rem_euclid(b) != 0)
}

struct Search {
    n: usize,
    total: i64,
    r: i64,
}

struct Branch {
    words: Vec<Vec<i64>>,
    visited: Vec<u64>,
}

impl Search {
    fn run_from(&self, x1: i64) -> Branch {
        let mut branch = Branch {
            words: Vec::new(),
            visited: vec![0; self.n],
        };
        branch.visited[0] = 1;
        let mut vars = vec![0i64; self.n];
        vars[0] = x1;
        // S_1 = c_1 = x1, T accumulates x1 + 2 sum x_j
        self.descend(2, x1, x1, &mut vars, &mut branch);
        branch
    }

    /// Assigns level `level` given `S_{level-1}` and the running `T`.
    fn descend(&self, level: usize, prefix_sum: i64, t: i64, vars: &mut [i64], out: &mut Branch) {
        let (n, total, r) = (self.n as i64, self.total, self.r);
        let x1 = vars[0];
        if level == self.n {
            let lo = ceil_div(r - t, 4);
            let hi = (total - (n - 1) * r - t).div_euclid(4);
            let residual = total - prefix_sum - t;
            if residual.rem_euclid(4) != 0 {
                return;
            }
            let xn = residual / 4;
            if xn < lo || xn > hi {
                return;
            }
            out.visited[self.n - 1] += 1;
            vars[self.n - 1] = xn;
            let mut word: Vec<i64> = vars[1..self.n - 1].iter().map(|&x| x1 + 2 * x).collect();
            word.insert(0, x1);
            word.push(t + 4 * xn);
            out.words.push(word);
            return;
        }
        let i = level as i64;
        let lo = ceil_div(r - x1, 2);
        let hi = (total - (n - i) * r - prefix_sum - x1).div_euclid(2);
        for x in lo..=hi {
            out.visited[level - 1] += 1;
            vars[level - 1] = x;
            let c = x1 + 2 * x;
            self.descend(level + 1, prefix_sum + c, t + 2 * x, vars, out);
        }
    }
}

/// All points of `A(K_n)` with coordinates `>= r` summing to `N`.
pub fn generate(n: usize, total: i64, r: i64) -> Result<Codebook> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Parameter(format!("codebook needs even n >= 2, got {n}")));
    }
    if r < 1 {
        return Err(Error::Parameter("codebook needs r >= 1".into()));
    }
    let search = Search { n, total, r };
    let top = total - (n as i64 - 1) * r;
    let branches: Vec<Branch> = (r..=top).into_par_iter().map(|x1| search.run_from(x1)).collect();
    let mut words = Vec::new();
    let mut visited = vec![0u64; n];
    for b in branches {
        words.extend(b.words);
        for (v, c) in visited.iter_mut().zip(b.visited) {
            *v += c;
        }
    }
    words.sort();
    Ok(Codebook {
        n,
        d: klemm_lattice_distance(n),
        total,
        r,
        words,
        visited_nodes: visited,
    })
}

/// Product of per-level window widths ignoring all coupling:
/// `(N - n r + 1) * ceil((N - n r + 2) / 2)^(level - 1)`.
pub fn naive_node_bound(n: usize, total: i64, r: i64, level: u32) -> BigInt {
    let slack = total - n as i64 * r;
    if level == 0 || slack < 0 {
        return BigInt::zero();
    }
    let first = BigInt::from(slack + 1);
    let width = BigInt::from(ceil_div(slack + 2, 2));
    (1..level).fold(first, |acc, _| acc * &width)
}

impl Codebook {
    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    /// Smallest pairwise Manhattan distance, `None` below two words.
    pub fn min_pairwise_distance(&self) -> Option<u64> {
        let mut best: Option<u64> = None;
        for (i, a) in self.words.iter().enumerate() {
            for b in &self.words[i + 1..] {
                let d: u64 = a.iter().zip(b).map(|(x, y)| x.abs_diff(*y)).sum();
                best = Some(best.map_or(d, |m| m.min(d)));
            }
        }
        best
    }

    pub fn header(&self) -> String {
        format!(
            "# n={} d={} N={} r={} count={}",
            self.n,
            self.d,
            self.total,
            self.r,
            self.words.len()
        )
    }
}

impl fmt::Display for Codebook {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.header())?;
        for w in &self.words {
            let parts: Vec<String> = w.iter().map(|x| x.to_string()).collect();
            writeln!(f, "{}", parts.join(" "))?;
        }
        Ok(())
    }
}

/// Parameters from a `# n=.. d=.. N=.. r=.. count=..` header line.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct CodebookHeader {
    pub n: usize,
    pub d: usize,
    pub total: i64,
    pub r: i64,
    pub count: usize,
}

impl FromStr for CodebookHeader {
    type Err = Error;

    fn from_str(line: &str) -> Result<Self> {
        let body = line
            .trim()
            .strip_prefix('#')
            .ok_or_else(|| Error::Parse("codebook header must start with '#'".into()))?;
        let mut fields = [None::<i64>; 5];
        const KEYS: [&str; 5] = ["n", "d", "N", "r", "count"];
        for token in body.split_whitespace() {
            let (key, value) = token
                .split_once('=')
                .ok_or_else(|| Error::Parse(format!("bad header field {token:?}")))?;
            let slot = KEYS
                .iter()
                .position(|&k| k == key)
                .ok_or_else(|| Error::Parse(format!("unknown header key {key:?}")))?;
            fields[slot] = Some(
                value
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad value in {token:?}")))?,
            );
        }
        let get = |i: usize| fields[i].ok_or_else(|| Error::Parse(format!("missing {}", KEYS[i])));
        Ok(CodebookHeader {
            n: get(0)? as usize,
            d: get(1)? as usize,
            total: get(2)?,
            r: get(3)?,
            count: get(4)? as usize,
        })
    }
}

impl FromStr for Codebook {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header: CodebookHeader = lines
            .next()
            .ok_or_else(|| Error::Parse("empty codebook file".into()))?
            .parse()?;
        let words = lines
            .map(|l| {
                let w = l
                    .split_whitespace()
                    .map(|t| t.parse::<i64>().map_err(|_| Error::Parse(format!("bad integer {t:?}"))))
                    .collect::<Result<Vec<_>>>()?;
                if w.len() != header.n {
                    return Err(Error::Dimension {
                        expected: header.n,
                        got: w.len(),
                    });
                }
                Ok(w)
            })
            .collect::<Result<Vec<_>>>()?;
        if words.len() != header.count {
            return Err(Error::Parse(format!(
                "header announces {} words, found {}",
                header.count,
                words.len()
            )));
        }
        Ok(Codebook {
            n: header.n,
            d: header.d,
            total: header.total,
            r: header.r,
            words,
            visited_nodes: Vec::new(),
        })
    }
}

/// Largest candidate set [`exact_packing_number`] accepts.
pub const PACKING_CANDIDATE_LIMIT: usize = 5000;

/// All vectors with `n` entries `>= r` summing to `total`.
pub fn compositions(n: usize, total: i64, r: i64) -> Vec<Vec<i64>> {
    fn rec(n: usize, left: i64, r: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if n == 1 {
            if left >= r {
                cur.push(left);
                out.push(cur.clone());
                cur.pop();
            }
            return;
        }
        let mut x = r;
        while left - x >= (n as i64 - 1) * r {
            cur.push(x);
            rec(n - 1, left - x, r, cur, out);
            cur.pop();
            x += 1;
        }
    }
    let mut out = Vec::new();
    if n > 0 {
        rec(n, total, r, &mut Vec::with_capacity(n), &mut out);
    }
    out
}

/// Size of a largest `(n, d, N, r)`-set, by exact maximum clique search on
/// the graph joining candidates at distance `>= d`.
pub fn exact_packing_number(n: usize, total: i64, r: i64, d: u64) -> Result<usize> {
    let candidates = compositions(n, total, r);
    if candidates.len() > PACKING_CANDIDATE_LIMIT {
        return Err(Error::Capacity {
            size: candidates.len() as u128,
            limit: PACKING_CANDIDATE_LIMIT as u128,
        });
    }
    if candidates.is_empty() {
        return Ok(0);
    }
    let v = candidates.len();
    let words = v.div_ceil(64);
    let mut adj = vec![vec![0u64; words]; v];
    for i in 0..v {
        for j in i + 1..v {
            let dist: u64 = candidates[i]
                .iter()
                .zip(&candidates[j])
                .map(|(a, b)| a.abs_diff(*b))
                .sum();
            if dist >= d {
                adj[i][j / 64] |= 1 << (j % 64);
                adj[j][i / 64] |= 1 << (i % 64);
            }
        }
    }
    let mut all = vec![0u64; words];
    for i in 0..v {
        all[i / 64] |= 1 << (i % 64);
    }
    let mut best = 1;
    max_clique(&adj, all, 0, &mut best);
    Ok(best)
}

fn bits(set: &[u64]) -> impl Iterator<Item = usize> + '_ {
    set.iter().enumerate().flat_map(|(w, &b)| {
        let mut b = b;
        std::iter::from_fn(move || {
            if b == 0 {
                return None;
            }
            let t = b.trailing_zeros() as usize;
            b &= b - 1;
            Some(w * 64 + t)
        })
    })
}

/// Branch and bound with a greedy colouring bound.
fn max_clique(adj: &[Vec<u64>], candidates: Vec<u64>, size: usize, best: &mut usize) {
    let order: Vec<usize> = bits(&candidates).collect();
    if order.is_empty() {
        *best = (*best).max(size);
        return;
    }
    // colour classes give an upper bound on clique size per prefix
    let mut colour = vec![0usize; order.len()];
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for (k, &u) in order.iter().enumerate() {
        let slot = classes
            .iter()
            .position(|cls| cls.iter().all(|&w| adj[u][w / 64] >> (w % 64) & 1 == 0));
        match slot {
            Some(c) => {
                classes[c].push(u);
                colour[k] = c + 1;
            }
            None => {
                classes.push(vec![u]);
                colour[k] = classes.len();
            }
        }
    }
    let mut ranked: Vec<(usize, usize)> = order.iter().copied().zip(colour).collect();
    ranked.sort_by_key(|&(_, c)| c);
    let mut remaining = candidates;
    for &(u, c) in ranked.iter().rev() {
        if size + c <= *best {
            return;
        }
        let next: Vec<u64> = remaining.iter().zip(&adj[u]).map(|(a, b)| a & b).collect();
        max_clique(adj, next, size + 1, best);
        remaining[u / 64] &= !(1 << (u % 64));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn tiny_codebooks() {
        let cb = generate(8, 8, 1).unwrap();
        assert_eq!(cb.words, vec![vec![1; 8]]);
        let cb = generate(8, 12, 1).unwrap();
        assert_eq!(cb.len(), 36);
        assert!(cb.words.contains(&vec![5, 1, 1, 1, 1, 1, 1, 1]));
        assert!(cb.words.contains(&vec![1, 5, 1, 1, 1, 1, 1, 1]));
        assert_eq!(cb.min_pairwise_distance(), Some(4));
    }

    #[test]
    fn infeasible_is_empty() {
        assert!(generate(8, 7, 1).unwrap().is_empty());
        assert!(generate(4, 10, 1).unwrap().words.iter().all(|w| w.iter().sum::<i64>() == 10));
        assert!(generate(1, 4, 1).is_err());
    }

    #[test]
    fn naive_bound_values() {
        assert_eq!(naive_node_bound(8, 12, 1, 2), BigInt::from(15));
        assert_eq!(naive_node_bound(8, 12, 1, 6), BigInt::from(1215));
        assert_eq!(naive_node_bound(8, 16, 1, 6), BigInt::from(28125));
        assert_eq!(naive_node_bound(8, 8, 1, 6), BigInt::one());
    }

    #[test]
    fn packing_numbers() {
        for total in 2..12 {
            assert_eq!(exact_packing_number(2, total, 1, 1).unwrap(), (total - 1) as usize);
            assert_eq!(exact_packing_number(2, total, 1, 2 * total as u64).unwrap(), 1);
        }
        // (3,1),(1,3) are 4 apart; (2,2) is 2 from both
        assert_eq!(exact_packing_number(2, 4, 1, 4).unwrap(), 2);
        assert!(matches!(exact_packing_number(6, 40, 1, 4), Err(Error::Capacity { .. })));
    }

    #[test]
    fn file_format_round_trip() {
        let cb = generate(8, 12, 1).unwrap();
        let text = cb.to_string();
        assert!(text.starts_with("# n=8 d=4 N=12 r=1 count=36\n"));
        let parsed: Codebook = text.parse().unwrap();
        assert_eq!(parsed.words, cb.words);
        assert!("# n=8 d=4 N=12 r=1 count=2\n1 1 1 1 1 1 1 1\n".parse::<Codebook>().is_err());
        assert!("n=8".parse::<CodebookHeader>().is_err());
    }
}
