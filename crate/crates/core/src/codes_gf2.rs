//! Binary linear codes of length at most 64.
//!
//! Codewords are packed into `u64` with bit `j` holding coordinate `j`.
//! Only the codes needed to feed Construction A with modulus 2 are built
//! here: repetition, even-weight, Reed-Muller and the extended Hamming
//! code `[8,4,4]`.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Largest dimension we are willing to enumerate exhaustively.
pub const MAX_ENUM_DIMENSION: usize = 26;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryLinearCode {
    name: String,
    length: usize,
    generator: Vec<u64>,
}

/// `A_w` for `w = 0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightDistribution(pub Vec<u64>);

impl WeightDistribution {
    pub fn total(&self) -> u128 {
        self.0.iter().map(|&a| a as u128).sum()
    }

    pub fn min_nonzero_weight(&self) -> Option<usize> {
        self.0.iter().skip(1).position(|&a| a > 0).map(|w| w + 1)
    }

    /// MacWilliams transform `B_j = |C|^{-1} sum_w A_w K_j(w)` with binary
    /// Krawtchouk polynomials. Returns `None` when a coefficient is not an
    /// integer (the input is not a linear code's distribution).
    pub fn macwilliams_transform(&self) -> Option<WeightDistribution> {
        let n = self.0.len() - 1;
        let size = self.total() as i128;
        let binom = |a: usize, b: usize| -> i128 {
            if b > a {
                return 0;
            }
            (0..b).fold(1i128, |acc, i| acc * (a - i) as i128 / (i as i128 + 1))
        };
        let mut out = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let mut acc: i128 = 0;
            for (w, &a) in self.0.iter().enumerate() {
                if a == 0 {
                    continue;
                }
                let k: i128 = (0..=j)
                    .map(|s| {
                        let sign = if s % 2 == 0 { 1 } else { -1 };
                        sign * binom(w, s) * binom(n - w, j - s)
                    })
                    .sum();
                acc += a as i128 * k;
            }
            if acc % size != 0 || acc < 0 {
                return None;
            }
            out.push((acc / size) as u64);
        }
        Some(WeightDistribution(out))
    }
}

/// Named binary codes understood by [`build_binary_code`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinaryCodeName {
    ExtendedHamming8,
    ReedMuller { order: usize, m: usize },
    Repetition(usize),
    EvenWeight(usize),
}

impl fmt::Display for BinaryCodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BinaryCodeName::ExtendedHamming8 => write!(f, "extended_hamming_8"),
            BinaryCodeName::ReedMuller { order, m } => write!(f, "reed_muller({order},{m})"),
            BinaryCodeName::Repetition(s) => write!(f, "repetition({s})"),
            BinaryCodeName::EvenWeight(s) => write!(f, "even_weight({s})"),
        }
    }
}

/// Splits `name(a,b,...)` into the head and its integer arguments.
pub(crate) fn parse_call(s: &str) -> Result<(String, Vec<usize>)> {
    let s = s.trim();
    match s.find('(') {
        None => Ok((s.to_string(), Vec::new())),
        Some(open) => {
            let close = s
                .rfind(')')
                .filter(|&c| c > open && c == s.len() - 1)
                .ok_or_else(|| Error::Parameter(format!("malformed code name {s:?}")))?;
            let args = s[open + 1..close]
                .split(',')
                .map(|a| {
                    a.trim()
                        .parse::<usize>()
                        .map_err(|_| Error::Parameter(format!("bad argument {a:?} in {s:?}")))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok((s[..open].trim().to_string(), args))
        }
    }
}

impl FromStr for BinaryCodeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, args) = parse_call(s)?;
        match (head.as_str(), args.as_slice()) {
            ("extended_hamming_8" | "h8", []) => Ok(BinaryCodeName::ExtendedHamming8),
            ("reed_muller" | "rm", &[order, m]) => Ok(BinaryCodeName::ReedMuller { order, m }),
            ("repetition", &[s]) => Ok(BinaryCodeName::Repetition(s)),
            ("even_weight", &[s]) => Ok(BinaryCodeName::EvenWeight(s)),
            _ => Err(Error::Parameter(format!("unknown binary code {s:?}"))),
        }
    }
}

pub fn build_binary_code(name: BinaryCodeName) -> Result<BinaryLinearCode> {
    match name {
        BinaryCodeName::ExtendedHamming8 => {
            let mut code = BinaryLinearCode::reed_muller(1, 3)?;
            code.name = name.to_string();
            Ok(code)
        }
        BinaryCodeName::ReedMuller { order, m } => BinaryLinearCode::reed_muller(order, m),
        BinaryCodeName::Repetition(s) => BinaryLinearCode::repetition(s),
        BinaryCodeName::EvenWeight(s) => BinaryLinearCode::even_weight(s),
    }
}

pub(crate) fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Reduced row echelon basis: each row paired with its pivot bit.
fn echelon(rows: &[u64]) -> Vec<(u64, u32)> {
    let mut basis: Vec<(u64, u32)> = Vec::new();
    for &row in rows {
        let mut r = row;
        for &(b, p) in &basis {
            if r >> p & 1 == 1 {
                r ^= b;
            }
        }
        if r == 0 {
            continue;
        }
        let p = r.trailing_zeros();
        for (b, _) in basis.iter_mut() {
            if *b >> p & 1 == 1 {
                *b ^= r;
            }
        }
        basis.push((r, p));
    }
    basis
}

pub(crate) fn gf2_rank(rows: &[u64]) -> usize {
    echelon(rows).len()
}

impl BinaryLinearCode {
    /// Builds a code from generator rows; rows must be independent.
    pub fn from_rows(name: impl Into<String>, length: usize, generator: Vec<u64>) -> Result<Self> {
        if length == 0 || length > 64 {
            return Err(Error::Parameter(format!("length {length} not in 1..=64")));
        }
        if generator.iter().any(|&r| r & !mask(length) != 0) {
            return Err(Error::Parameter("generator row wider than code length".into()));
        }
        if gf2_rank(&generator) != generator.len() {
            return Err(Error::Parameter("generator rows are linearly dependent".into()));
        }
        Ok(BinaryLinearCode {
            name: name.into(),
            length,
            generator,
        })
    }

    pub fn repetition(s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::Parameter("repetition length must be >= 1".into()));
        }
        Self::from_rows(format!("repetition({s})"), s, vec![mask(s)])
    }

    pub fn even_weight(s: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::Parameter("even-weight length must be >= 1".into()));
        }
        let rows = (0..s - 1).map(|i| 0b11u64 << i).collect();
        Self::from_rows(format!("even_weight({s})"), s, rows)
    }

    /// Evaluation code of all monomials of degree `<= order` in `m`
    /// variables. Points of `F_2^m` are taken in lexicographic order with
    /// the first variable as the most significant bit.
    pub fn reed_muller(order: usize, m: usize) -> Result<Self> {
        if order > m || m > 6 {
            return Err(Error::Parameter(format!(
                "reed_muller({order},{m}) needs 0 <= order <= m <= 6"
            )));
        }
        let n = 1usize << m;
        let mut monomials: Vec<u32> = (0u32..1 << m).filter(|v| v.count_ones() as usize <= order).collect();
        // degree first, then lexicographic in the variable set
        monomials.sort_by_key(|&v| (v.count_ones(), v.reverse_bits()));
        let rows = monomials
            .iter()
            .map(|&vars| {
                (0..n).fold(0u64, |acc, point| {
                    // variable i is bit (m-1-i) of the point index
                    let mut value = 1;
                    for i in 0..m {
                        if vars >> i & 1 == 1 && point >> (m - 1 - i) & 1 == 0 {
                            value = 0;
                        }
                    }
                    acc | (value << point)
                })
            })
            .collect();
        Self::from_rows(format!("reed_muller({order},{m})"), n, rows)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn length(&self) -> usize {
        self.length
    }

    pub fn dimension(&self) -> usize {
        self.generator.len()
    }

    pub fn generator(&self) -> &[u64] {
        &self.generator
    }

    pub fn size(&self) -> u128 {
        1u128 << self.dimension()
    }

    /// Membership of a packed word.
    pub fn contains(&self, word: u64) -> bool {
        if word & !mask(self.length) != 0 {
            return false;
        }
        let basis = echelon(&self.generator);
        let mut r = word;
        for (b, p) in basis {
            if r >> p & 1 == 1 {
                r ^= b;
            }
        }
        r == 0
    }

    fn check_capacity(&self) -> Result<()> {
        if self.dimension() > MAX_ENUM_DIMENSION {
            return Err(Error::Capacity {
                size: self.size(),
                limit: 1u128 << MAX_ENUM_DIMENSION,
            });
        }
        Ok(())
    }

    /// Visits every codeword once, in Gray-code order of information words.
    pub fn for_each_codeword(&self, mut visit: impl FnMut(u64)) -> Result<()> {
        self.check_capacity()?;
        let mut word = 0u64;
        visit(word);
        for step in 1u64..(1u64 << self.dimension()) {
            word ^= self.generator[step.trailing_zeros() as usize];
            visit(word);
        }
        Ok(())
    }

    pub fn codewords(&self) -> Result<Vec<u64>> {
        let mut out = Vec::with_capacity(self.size() as usize);
        self.for_each_codeword(|w| out.push(w))?;
        Ok(out)
    }

    pub fn weight_distribution(&self) -> Result<WeightDistribution> {
        let mut counts = vec![0u64; self.length + 1];
        self.for_each_codeword(|w| counts[w.count_ones() as usize] += 1)?;
        Ok(WeightDistribution(counts))
    }

    pub fn min_hamming_weight(&self) -> Result<usize> {
        if self.dimension() == 0 {
            return Err(Error::ZeroCode);
        }
        self.weight_distribution()?
            .min_nonzero_weight()
            .ok_or(Error::ZeroCode)
    }
}
