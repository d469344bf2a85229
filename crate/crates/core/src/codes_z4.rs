//! Linear codes over `Z4` and their complete weight enumerators.
//!
//! Words are bit-sliced: a length-`n` vector over `Z4` (n <= 64) is a pair
//! of `u64` planes with value `lo + 2*hi` in each coordinate. Addition is
//! a half-adder across the planes, so enumerating the 4^12 codewords of
//! the lifted Golay code costs a few instructions per word.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::codes_gf2::{gf2_rank, mask, parse_call, BinaryLinearCode};
use crate::error::{Error, Result};
use crate::series::{shift_exponent, IntSeries};

/// Codes larger than `2^MAX_ENUM_LOG2` words are refused.
pub const MAX_ENUM_LOG2: usize = 25;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Z4Word {
    pub lo: u64,
    pub hi: u64,
}

impl Z4Word {
    pub const ZERO: Z4Word = Z4Word { lo: 0, hi: 0 };

    pub fn from_symbols(symbols: &[u8]) -> Self {
        symbols.iter().enumerate().fold(Z4Word::ZERO, |w, (j, &s)| Z4Word {
            lo: w.lo | ((s & 1) as u64) << j,
            hi: w.hi | ((s >> 1 & 1) as u64) << j,
        })
    }

    pub fn symbol(self, j: usize) -> u8 {
        ((self.lo >> j & 1) | (self.hi >> j & 1) << 1) as u8
    }

    pub fn to_symbols(self, n: usize) -> Vec<u8> {
        (0..n).map(|j| self.symbol(j)).collect()
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn add(self, other: Z4Word) -> Z4Word {
        Z4Word {
            lo: self.lo ^ other.lo,
            hi: self.hi ^ other.hi ^ (self.lo & other.lo),
        }
    }

    #[inline]
    #[allow(clippy::should_implement_trait)]
    pub fn neg(self) -> Z4Word {
        Z4Word {
            lo: self.lo,
            hi: self.hi ^ self.lo,
        }
    }

    pub fn scale(self, k: u8) -> Z4Word {
        match k & 3 {
            0 => Z4Word::ZERO,
            1 => self,
            2 => Z4Word { lo: 0, hi: self.lo },
            _ => self.neg(),
        }
    }

    /// Symbol counts `(n0, n1, n2, n3)` over the first `n` coordinates.
    #[inline]
    pub fn composition(self, n: usize) -> [usize; 4] {
        let n1 = (self.lo & !self.hi).count_ones() as usize;
        let n2 = (!self.lo & self.hi).count_ones() as usize;
        let n3 = (self.lo & self.hi).count_ones() as usize;
        [n - n1 - n2 - n3, n1, n2, n3]
    }

    pub fn lee_weight(self) -> usize {
        let [_, n1, n2, n3] = self.composition(64);
        n1 + 2 * n2 + n3
    }
}

/// Composition `(n0, n1, n2, n3)` to number of codewords with it.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CompleteWeightEnumerator {
    pub length: usize,
    pub terms: BTreeMap<[usize; 4], u64>,
}

impl CompleteWeightEnumerator {
    pub fn total(&self) -> u128 {
        self.terms.values().map(|&c| c as u128).sum()
    }

    /// Substitutes `x_j -> q^{s(j)}` where `s(j)` is the least integer
    /// `>= r` congruent to `j` mod 4.
    pub fn substitute_shift(&self, r: usize) -> IntSeries {
        let s: [usize; 4] = std::array::from_fn(|j| shift_exponent(j, r, 4));
        let degree = self.length * (r + 3);
        let mut coeffs = vec![0u64; degree + 1];
        for (comp, &count) in &self.terms {
            let e: usize = comp.iter().zip(&s).map(|(a, b)| a * b).sum();
            coeffs[e] += count;
        }
        IntSeries::from_u64(&coeffs, degree)
    }

    pub fn min_lee_weight(&self) -> Option<usize> {
        self.terms
            .keys()
            .filter(|c| c[0] != self.length)
            .map(|c| c[1] + 2 * c[2] + c[3])
            .min()
    }
}

/// Dense accumulator indexed by `(n1, n2, n3)`.
struct CompositionCounts {
    n: usize,
    counts: Vec<u64>,
}

impl CompositionCounts {
    fn new(n: usize) -> Self {
        CompositionCounts {
            n,
            counts: vec![0; (n + 1).pow(3)],
        }
    }

    #[inline]
    fn add(&mut self, w: Z4Word) {
        let [_, n1, n2, n3] = w.composition(self.n);
        let side = self.n + 1;
        self.counts[(n1 * side + n2) * side + n3] += 1;
    }

    fn merge(mut self, other: Self) -> Self {
        for (a, b) in self.counts.iter_mut().zip(other.counts) {
            *a += b;
        }
        self
    }

    fn into_cwe(self) -> CompleteWeightEnumerator {
        let side = self.n + 1;
        let mut terms = BTreeMap::new();
        for (idx, &c) in self.counts.iter().enumerate() {
            if c == 0 {
                continue;
            }
            let (n1, n2, n3) = (idx / (side * side), idx / side % side, idx % side);
            terms.insert([self.n - n1 - n2 - n3, n1, n2, n3], c);
        }
        CompleteWeightEnumerator {
            length: self.n,
            terms,
        }
    }
}

/// A `Z4`-submodule of `Z4^n` in standard form: `k1` generators of order 4
/// (each carrying a unit pivot) and `k2` generators of order 2.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z4LinearCode {
    name: String,
    length: usize,
    order_four: Vec<(Z4Word, usize)>,
    order_two: Vec<Z4Word>,
}

impl Z4LinearCode {
    /// Normalizes an arbitrary generating set into standard form.
    pub fn from_generators(name: impl Into<String>, length: usize, rows: &[Vec<u8>]) -> Result<Self> {
        if length == 0 || length > 64 {
            return Err(Error::Parameter(format!("length {length} not in 1..=64")));
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != length) {
            return Err(Error::Dimension {
                expected: length,
                got: bad.len(),
            });
        }
        let mut pending: Vec<Vec<u8>> = rows
            .iter()
            .map(|r| r.iter().map(|&s| s & 3).collect())
            .collect();
        let mut pivots: Vec<(Vec<u8>, usize)> = Vec::new();
        loop {
            let found = pending
                .iter()
                .enumerate()
                .find_map(|(i, r)| r.iter().position(|&s| s & 1 == 1).map(|c| (i, c)));
            let Some((i, col)) = found else { break };
            let mut pivot = pending.swap_remove(i);
            if pivot[col] == 3 {
                pivot.iter_mut().for_each(|s| *s = (4 - *s) & 3);
            }
            let eliminate = |row: &mut Vec<u8>| {
                let k = row[col];
                if k != 0 {
                    for (s, p) in row.iter_mut().zip(&pivot) {
                        *s = (*s + 4 * 4 - k * p) & 3;
                    }
                }
            };
            pending.iter_mut().for_each(eliminate);
            pivots.iter_mut().for_each(|(r, _)| eliminate(r));
            pivots.push((pivot, col));
        }
        // what is left is even; keep an independent set of halves
        let halves: Vec<u64> = pending
            .iter()
            .map(|r| r.iter().enumerate().fold(0u64, |acc, (j, &s)| acc | ((s >> 1) as u64) << j))
            .filter(|&h| h != 0)
            .collect();
        let mut basis: Vec<u64> = Vec::new();
        for h in halves {
            let mut candidate = basis.clone();
            candidate.push(h);
            if gf2_rank(&candidate) > basis.len() {
                basis = candidate;
            }
        }
        Ok(Z4LinearCode {
            name: name.into(),
            length,
            order_four: pivots
                .into_iter()
                .map(|(r, c)| (Z4Word::from_symbols(&r), c))
                .collect(),
            order_two: basis.into_iter().map(|h| Z4Word { lo: 0, hi: h }).collect(),
        })
    }

    /// `K_s = R_s + 2 P_s`: repetition code plus twice the even-weight code.
    pub fn klemm(s: usize) -> Result<Self> {
        if s < 2 {
            return Err(Error::Parameter("klemm(s) needs s >= 2".into()));
        }
        let mut rows = vec![vec![1u8; s]];
        for i in 0..s - 1 {
            let mut r = vec![0u8; s];
            r[i] = 2;
            r[i + 1] = 2;
            rows.push(r);
        }
        Self::from_generators(format!("klemm({s})"), s, &rows)
    }

    /// `RM(1,4) + 2 RM(2,4)`, whose Construction A lattice is `BW16`.
    pub fn bw16() -> Result<Self> {
        let rm1 = BinaryLinearCode::reed_muller(1, 4)?;
        let rm2 = BinaryLinearCode::reed_muller(2, 4)?;
        let lift = |w: u64, k: u8| (0..16).map(|j| ((w >> j & 1) as u8) * k).collect::<Vec<u8>>();
        let rows: Vec<Vec<u8>> = rm1
            .generator()
            .iter()
            .map(|&w| lift(w, 1))
            .chain(rm2.generator().iter().map(|&w| lift(w, 2)))
            .collect();
        Self::from_generators("bw16_code", 16, &rows)
    }

    /// Extended Hensel lift of the binary Golay code, `QR_24` over `Z4`.
    pub fn golay(extension: GolayExtension) -> Result<Self> {
        let g4 = hensel_lift_golay()?;
        let mut rows = Vec::with_capacity(12);
        for shift in 0..12 {
            let mut row = vec![0u8; 24];
            for (i, &c) in g4.coeffs().iter().enumerate() {
                row[i + shift] = c;
            }
            let sum: u32 = row[..23].iter().map(|&c| c as u32).sum();
            row[23] = match extension {
                GolayExtension::NegativeSum => ((4 - sum % 4) % 4) as u8,
                GolayExtension::PositiveSum => (sum % 4) as u8,
            };
            rows.push(row);
        }
        let code = Self::from_generators("golay_z4", 24, &rows)?;
        if code.order_four.len() != 12 || !code.order_two.is_empty() {
            return Err(Error::Construction(format!(
                "lifted Golay code has type 4^{} 2^{}, expected 4^12",
                code.order_four.len(),
                code.order_two.len()
            )));
        }
        Ok(code)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn length(&self) -> usize {
        self.length
    }

    /// `(k1, k2)`: numbers of order-4 and order-2 generators.
    pub fn code_type(&self) -> (usize, usize) {
        (self.order_four.len(), self.order_two.len())
    }

    pub fn size(&self) -> u128 {
        let (k1, k2) = self.code_type();
        1u128 << (2 * k1 + k2)
    }

    pub fn generators(&self) -> Vec<(Z4Word, u8)> {
        self.order_four
            .iter()
            .map(|&(w, _)| (w, 4u8))
            .chain(self.order_two.iter().map(|&w| (w, 2u8)))
            .collect()
    }

    /// Reduction mod 2 as a binary code.
    pub fn residue_code(&self) -> Result<BinaryLinearCode> {
        let rows: Vec<u64> = self.order_four.iter().map(|(w, _)| w.lo).collect();
        BinaryLinearCode::from_rows(format!("{} mod 2", self.name), self.length, rows)
    }

    pub fn contains(&self, word: Z4Word) -> bool {
        let m = mask(self.length);
        if (word.lo | word.hi) & !m != 0 {
            return false;
        }
        let mut x = word;
        for &(row, col) in &self.order_four {
            let k = x.symbol(col);
            x = x.add(row.scale(k).neg());
        }
        if x.lo != 0 {
            return false;
        }
        let mut basis: Vec<u64> = self.order_two.iter().map(|w| w.hi).collect();
        let rank = gf2_rank(&basis);
        basis.push(x.hi);
        gf2_rank(&basis) == rank
    }

    pub fn contains_symbols(&self, symbols: &[u8]) -> bool {
        symbols.len() == self.length && self.contains(Z4Word::from_symbols(symbols))
    }

    fn check_capacity(&self) -> Result<()> {
        let (k1, k2) = self.code_type();
        if 2 * k1 + k2 > MAX_ENUM_LOG2 {
            return Err(Error::Capacity {
                size: self.size(),
                limit: 1u128 << MAX_ENUM_LOG2,
            });
        }
        Ok(())
    }

    /// Folds over all codewords. The information space is split on the
    /// leading generators and the pieces are processed in parallel, each
    /// with its own accumulator.
    pub fn fold_codewords<A, I, V, M>(&self, init: I, visit: V, merge: M) -> Result<A>
    where
        A: Send,
        I: Fn() -> A + Sync,
        V: Fn(&mut A, Z4Word) + Sync,
        M: Fn(A, A) -> A + Sync + Send,
    {
        self.check_capacity()?;
        let gens = self.generators();
        let split = gens
            .iter()
            .scan(1usize, |tasks, &(_, order)| {
                if *tasks >= 64 {
                    return None;
                }
                *tasks *= order as usize;
                Some(())
            })
            .count();
        let mut prefixes = vec![Z4Word::ZERO];
        for &(g, order) in &gens[..split] {
            prefixes = prefixes
                .iter()
                .flat_map(|&p| (0..order).map(move |k| p.add(g.scale(k))))
                .collect();
        }
        let rest = &gens[split..];
        let result = prefixes
            .into_par_iter()
            .map(|start| {
                let mut acc = init();
                walk(rest, start, &mut |w| visit(&mut acc, w));
                acc
            })
            .reduce(&init, &merge);
        Ok(result)
    }

    pub fn for_each_codeword(&self, mut visit: impl FnMut(Z4Word)) -> Result<()> {
        self.check_capacity()?;
        walk(&self.generators(), Z4Word::ZERO, &mut visit);
        Ok(())
    }

    pub fn complete_weight_enumerator(&self) -> Result<CompleteWeightEnumerator> {
        let n = self.length;
        let counts = self.fold_codewords(
            || CompositionCounts::new(n),
            |acc, w| acc.add(w),
            CompositionCounts::merge,
        )?;
        Ok(counts.into_cwe())
    }

    /// `sum_c q^{sum_i s(c_i)}` with `s(j)` the least integer `>= r`
    /// congruent to `j` mod 4, accumulated directly while streaming.
    pub fn shifted_weight_distribution(&self, r: usize) -> Result<IntSeries> {
        let n = self.length;
        let s: [usize; 4] = std::array::from_fn(|j| shift_exponent(j, r, 4));
        let degree = n * (r + 3);
        let counts = self.fold_codewords(
            || vec![0u64; degree + 1],
            |acc, w| {
                let c = w.composition(n);
                acc[c[0] * s[0] + c[1] * s[1] + c[2] * s[2] + c[3] * s[3]] += 1;
            },
            |mut a, b| {
                a.iter_mut().zip(b).for_each(|(x, y)| *x += y);
                a
            },
        )?;
        Ok(IntSeries::from_u64(&counts, degree))
    }

    pub fn min_lee_distance(&self) -> Result<usize> {
        if self.size() == 1 {
            return Err(Error::ZeroCode);
        }
        self.complete_weight_enumerator()?
            .min_lee_weight()
            .ok_or(Error::ZeroCode)
    }
}

fn walk(gens: &[(Z4Word, u8)], word: Z4Word, visit: &mut impl FnMut(Z4Word)) {
    match gens.split_first() {
        None => visit(word),
        Some((&(g, order), rest)) => {
            let mut w = word;
            for _ in 0..order {
                walk(rest, w, visit);
                w = w.add(g);
            }
        }
    }
}

/// How the 24th coordinate of the lifted Golay code is formed from the
/// 23 cyclic coordinates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum GolayExtension {
    /// `c_inf = -sum c_i`, making every coordinate sum vanish mod 4.
    #[default]
    NegativeSum,
    PositiveSum,
}

/// Named `Z4` codes understood by [`build_z4_code`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Z4CodeName {
    Klemm(usize),
    Bw16,
    GolayZ4,
}

impl fmt::Display for Z4CodeName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Z4CodeName::Klemm(s) => write!(f, "klemm({s})"),
            Z4CodeName::Bw16 => write!(f, "bw16_code"),
            Z4CodeName::GolayZ4 => write!(f, "golay_z4"),
        }
    }
}

impl FromStr for Z4CodeName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let (head, args) = parse_call(s)?;
        match (head.as_str(), args.as_slice()) {
            ("klemm", &[s]) => Ok(Z4CodeName::Klemm(s)),
            ("bw16_code" | "bw16", []) => Ok(Z4CodeName::Bw16),
            ("golay_z4" | "qr24", []) => Ok(Z4CodeName::GolayZ4),
            _ => Err(Error::Parameter(format!("unknown Z4 code {s:?}"))),
        }
    }
}

pub fn build_z4_code(name: Z4CodeName) -> Result<Z4LinearCode> {
    match name {
        Z4CodeName::Klemm(s) => Z4LinearCode::klemm(s),
        Z4CodeName::Bw16 => Z4LinearCode::bw16(),
        Z4CodeName::GolayZ4 => Z4LinearCode::golay(GolayExtension::default()),
    }
}

/// Dense polynomial over `Z4`, lowest degree first, no trailing zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Z4Poly(Vec<u8>);

impl Z4Poly {
    pub fn new(coeffs: impl IntoIterator<Item = u8>) -> Self {
        let mut c: Vec<u8> = coeffs.into_iter().map(|x| x & 3).collect();
        while c.last() == Some(&0) {
            c.pop();
        }
        Z4Poly(c)
    }

    /// `x^exps[0] + x^exps[1] + ...`
    pub fn from_exponents(exps: &[usize]) -> Self {
        let deg = exps.iter().copied().max().unwrap_or(0);
        let mut c = vec![0u8; deg + 1];
        for &e in exps {
            c[e] = (c[e] + 1) & 3;
        }
        Z4Poly::new(c)
    }

    pub fn coeffs(&self) -> &[u8] {
        &self.0
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn mul(&self, other: &Z4Poly) -> Z4Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Z4Poly(Vec::new());
        }
        let mut out = vec![0u8; self.0.len() + other.0.len() - 1];
        for (i, &a) in self.0.iter().enumerate() {
            for (j, &b) in other.0.iter().enumerate() {
                out[i + j] = (out[i + j] + a * b) & 3;
            }
        }
        Z4Poly::new(out)
    }

    pub fn sub(&self, other: &Z4Poly) -> Z4Poly {
        let len = self.0.len().max(other.0.len());
        Z4Poly::new((0..len).map(|i| {
            let a = self.0.get(i).copied().unwrap_or(0);
            let b = other.0.get(i).copied().unwrap_or(0);
            (a + 4 - b) & 3
        }))
    }

    pub fn reduce_mod2(&self) -> Z4Poly {
        Z4Poly::new(self.0.iter().map(|c| c & 1))
    }

    /// Quotient and remainder by a monic divisor.
    pub fn div_rem(&self, divisor: &Z4Poly) -> Result<(Z4Poly, Z4Poly)> {
        let d = divisor
            .degree()
            .filter(|&d| divisor.0[d] == 1)
            .ok_or_else(|| Error::Lift("divisor must be monic".into()))?;
        let mut rem = self.0.clone();
        if rem.len() <= d {
            return Ok((Z4Poly(Vec::new()), self.clone()));
        }
        let mut quot = vec![0u8; rem.len() - d];
        for top in (d..rem.len()).rev() {
            let k = rem[top];
            if k == 0 {
                continue;
            }
            quot[top - d] = k;
            for (i, &c) in divisor.0.iter().enumerate() {
                let idx = top - d + i;
                rem[idx] = (rem[idx] + 4 * 4 - k * c) & 3;
            }
        }
        Ok((Z4Poly::new(quot), Z4Poly::new(rem)))
    }
}

/// Binary Golay generator `x^11+x^10+x^6+x^5+x^4+x^2+1`, a factor of
/// `x^23 - 1` over `F_2`.
pub fn golay_generator_gf2() -> Z4Poly {
    Z4Poly::from_exponents(&[0, 2, 4, 5, 6, 10, 11])
}

/// `x^n - 1` over `Z4`.
pub fn x_n_minus_one(n: usize) -> Z4Poly {
    let mut c = vec![0u8; n + 1];
    c[0] = 3;
    c[n] = 1;
    Z4Poly::new(c)
}

/// Graeffe lift of a binary polynomial: with `g = e + o` split into even
/// and odd powers, `G(x^2) = +-(e^2 - o^2)` taken mod 4, sign chosen so
/// that the lift is monic.
pub fn graeffe_lift(g2: &Z4Poly) -> Z4Poly {
    let even = Z4Poly::new(g2.coeffs().iter().enumerate().map(|(i, &c)| if i % 2 == 0 { c } else { 0 }));
    let odd = Z4Poly::new(g2.coeffs().iter().enumerate().map(|(i, &c)| if i % 2 == 1 { c } else { 0 }));
    let diff = even.mul(&even).sub(&odd.mul(&odd));
    let halved = Z4Poly::new(diff.coeffs().iter().step_by(2).copied());
    match halved.coeffs().last() {
        Some(3) => Z4Poly::new(halved.coeffs().iter().map(|&c| (4 - c) & 3)),
        _ => halved,
    }
}

/// Lifts the binary Golay generator to the unique monic divisor of
/// `x^23 - 1` over `Z4` reducing to it mod 2.
pub fn hensel_lift_golay() -> Result<Z4Poly> {
    let g2 = golay_generator_gf2();
    let g4 = graeffe_lift(&g2);
    if g4.reduce_mod2() != g2 {
        return Err(Error::Lift("lift does not reduce to the binary generator".into()));
    }
    let (_, rem) = x_n_minus_one(23).div_rem(&g4)?;
    if rem.degree().is_some() {
        return Err(Error::Lift(format!("x^23-1 leaves remainder {:?}", rem.coeffs())));
    }
    Ok(g4)
}
