//! Truncated power series with exact integer coefficients, and the
//! generating functions built on them: shifted nu-series of Construction A
//! lattices, the hat construction, and Manhattan ball volumes.

use std::fmt;
use std::ops::{Add, Mul};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::BaseCode;

/// `c_0 + c_1 q + ... + c_D q^D`, all arithmetic exact modulo `q^{D+1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntSeries {
    coeffs: Vec<BigInt>,
}

impl IntSeries {
    pub fn zero(degree: usize) -> Self {
        IntSeries {
            coeffs: vec![BigInt::zero(); degree + 1],
        }
    }

    pub fn one(degree: usize) -> Self {
        Self::monomial(0, degree)
    }

    pub fn monomial(exponent: usize, degree: usize) -> Self {
        let mut s = Self::zero(degree);
        if exponent <= degree {
            s.coeffs[exponent] = BigInt::one();
        }
        s
    }

    /// Takes the first `degree + 1` values, zero-padding if short.
    pub fn from_coeffs(mut coeffs: Vec<BigInt>, degree: usize) -> Self {
        coeffs.resize(degree + 1, BigInt::zero());
        IntSeries { coeffs }
    }

    pub fn from_u64(values: &[u64], degree: usize) -> Self {
        Self::from_coeffs(values.iter().map(|&v| BigInt::from(v)).collect(), degree)
    }

    pub fn from_i64(values: &[i64], degree: usize) -> Self {
        Self::from_coeffs(values.iter().map(|&v| BigInt::from(v)).collect(), degree)
    }

    /// Truncation degree `D`.
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// `[q^k]`; zero above the truncation degree is NOT implied, so callers
    /// needing that distinction should check [`IntSeries::degree`].
    pub fn coefficient(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn truncate(&self, degree: usize) -> Self {
        Self::from_coeffs(self.coeffs.iter().take(degree + 1).cloned().collect(), degree)
    }

    /// Value at `q = 1` of the truncated polynomial.
    pub fn sum_coefficients(&self) -> BigInt {
        self.coeffs.iter().sum()
    }

    /// Multiplies by `q^k`.
    pub fn shift(&self, k: usize) -> Self {
        let d = self.degree();
        let mut out = Self::zero(d);
        for (i, c) in self.coeffs.iter().enumerate() {
            if i + k <= d {
                out.coeffs[i + k] = c.clone();
            }
        }
        out
    }

    /// `1/f` for `f(0) = +-1`, via `g_k = -f_0 sum_{j>=1} f_j g_{k-j}`.
    pub fn reciprocal(&self) -> Result<Self> {
        let f0 = &self.coeffs[0];
        if !f0.abs().is_one() {
            return Err(Error::Domain(format!("constant term {f0} is not a unit")));
        }
        let d = self.degree();
        let mut g = Self::zero(d);
        g.coeffs[0] = f0.clone();
        for k in 1..=d {
            let acc: BigInt = (1..=k).map(|j| &self.coeffs[j] * &g.coeffs[k - j]).sum();
            g.coeffs[k] = -(f0 * acc);
        }
        Ok(g)
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }
}

impl Add for &IntSeries {
    type Output = IntSeries;

    fn add(self, rhs: &IntSeries) -> IntSeries {
        let d = self.degree().min(rhs.degree());
        IntSeries {
            coeffs: (0..=d).map(|k| &self.coeffs[k] + &rhs.coeffs[k]).collect(),
        }
    }
}

impl Mul for &IntSeries {
    type Output = IntSeries;

    fn mul(self, rhs: &IntSeries) -> IntSeries {
        let d = self.degree().min(rhs.degree());
        let mut out = IntSeries::zero(d);
        for (i, a) in self.coeffs.iter().enumerate().take(d + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate().take(d + 1 - i) {
                if !b.is_zero() {
                    out.coeffs[i + j] += a * b;
                }
            }
        }
        out
    }
}

impl fmt::Display for IntSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{c}")?,
                1 => write!(f, "{c}*q")?,
                _ => write!(f, "{c}*q^{k}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        write!(f, " + O(q^{})", self.degree() + 1)
    }
}

/// Least integer `>= r` congruent to `residue` mod `m`.
pub fn shift_exponent(residue: usize, r: usize, m: usize) -> usize {
    r + (residue % m + m - r % m) % m
}

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Coefficients of `1/(1 - q^m)^n` up to degree `D`: `C(i+n-1, n-1)` at
/// degree `m*i`, zero elsewhere.
pub fn geometric_power(m: usize, n: usize, degree: usize) -> IntSeries {
    assert!(m >= 1 && n >= 1, "geometric_power needs m, n >= 1");
    let mut s = IntSeries::zero(degree);
    for i in 0..=degree / m {
        s.coeffs[m * i] = binomial((i + n - 1) as u64, (n - 1) as u64);
    }
    s
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeTag {
    pub code_name: String,
    pub modulus: usize,
    pub dimension: usize,
}

/// Shifted nu-series: points of a lattice with every coordinate `>= r`,
/// counted by coordinate sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NuSeries {
    pub tag: LatticeTag,
    pub shift: usize,
    pub series: IntSeries,
}

impl NuSeries {
    pub fn coefficient(&self, norm: usize) -> Result<BigInt> {
        if norm > self.series.degree() {
            return Err(Error::Degree {
                have: self.series.degree(),
                need: norm,
            });
        }
        Ok(self.series.coefficient(norm))
    }
}

/// Builds the nu-series from a precomputed shifted weight polynomial, so
/// that one enumeration of a code can serve several shifts.
pub fn nu_series_from_numerator(
    tag: LatticeTag,
    shift: usize,
    numerator: &IntSeries,
    degree: usize,
) -> NuSeries {
    let geometric = geometric_power(tag.modulus, tag.dimension, degree);
    let numerator = IntSeries::from_coeffs(numerator.coeffs().to_vec(), degree);
    NuSeries {
        series: &numerator * &geometric,
        tag,
        shift,
    }
}

/// `nu_{A(C)}(r; q)` up to degree `D`: the shifted weight polynomial of `C`
/// times `1/(1 - q^m)^n`.
pub fn nu_series(code: &BaseCode, r: usize, degree: usize) -> Result<NuSeries> {
    let numerator = code.shifted_weight_distribution(r)?;
    let tag = LatticeTag {
        code_name: code.name().to_string(),
        modulus: code.modulus(),
        dimension: code.length(),
    };
    Ok(nu_series_from_numerator(tag, r, &numerator, degree))
}

/// Number of points of the hat set built from `nu`'s lattice at norm `N`:
/// lattice points with coordinates `>= r` and coordinate sum `<= N - r`, so
/// that the appended coordinate is also `>= r`.
pub fn hat_coefficient(nu: &NuSeries, norm: usize) -> Result<BigInt> {
    let r = nu.shift;
    if norm < r {
        return Ok(BigInt::zero());
    }
    let top = norm - r;
    if top > nu.series.degree() {
        return Err(Error::Degree {
            have: nu.series.degree(),
            need: top,
        });
    }
    Ok(nu.series.coeffs()[..=top].iter().sum())
}

/// Cumulative Manhattan ball volumes of `Z^n`: `(1+q)^n / (1-q)^{n+1}`.
pub fn ball_series(n: usize, degree: usize) -> IntSeries {
    let numerator: Vec<BigInt> = (0..=n as u64).map(|i| binomial(n as u64, i)).collect();
    let numerator = IntSeries::from_coeffs(numerator, degree);
    &numerator * &geometric_power(1, n + 1, degree)
}

/// Exact `floor(a / b)` and `ceil(a / b)` for positive `b`.
pub(crate) fn floor_ceil(a: &BigInt, b: &BigInt) -> (BigInt, BigInt) {
    (a.div_floor(b), a.div_ceil(b))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(s: &IntSeries) -> Vec<i64> {
        s.coeffs().iter().map(|c| i64::try_from(c).unwrap()).collect()
    }

    #[test]
    fn geometric_power_examples() {
        assert_eq!(ints(&geometric_power(1, 1, 3)), vec![1, 1, 1, 1]);
        assert_eq!(ints(&geometric_power(1, 4, 2)), vec![1, 4, 10]);
        assert_eq!(ints(&geometric_power(4, 2, 8)), vec![1, 0, 0, 0, 2, 0, 0, 0, 3]);
        let g = geometric_power(4, 1, 8);
        assert_eq!(ints(&(&g * &g)), ints(&geometric_power(4, 2, 8)));
    }

    #[test]
    fn reciprocal_inverts() {
        let f = IntSeries::from_i64(&[1, -1], 6);
        assert_eq!(ints(&f.reciprocal().unwrap()), vec![1; 7]);
        let f = IntSeries::from_i64(&[1, 0, 0, 0, -2, 0, 0, 0, 1], 20);
        assert_eq!(f.reciprocal().unwrap(), geometric_power(4, 2, 20));
        assert!(IntSeries::from_i64(&[2, 1], 3).reciprocal().is_err());
    }

    #[test]
    fn shift_exponents() {
        assert_eq!((0..4).map(|j| shift_exponent(j, 1, 4)).collect::<Vec<_>>(), vec![4, 1, 2, 3]);
        assert_eq!((0..4).map(|j| shift_exponent(j, 2, 4)).collect::<Vec<_>>(), vec![4, 5, 2, 3]);
        assert_eq!((0..4).map(|j| shift_exponent(j, 0, 4)).collect::<Vec<_>>(), vec![0, 1, 2, 3]);
        assert_eq!((0..2).map(|j| shift_exponent(j, 1, 2)).collect::<Vec<_>>(), vec![2, 1]);
        assert_eq!((0..2).map(|j| shift_exponent(j, 2, 2)).collect::<Vec<_>>(), vec![2, 3]);
        assert_eq!(shift_exponent(3, 5, 4), 7);
    }

    #[test]
    fn ball_series_small() {
        assert_eq!(ints(&ball_series(1, 4)), vec![1, 3, 5, 7, 9]);
        assert_eq!(ball_series(2, 3).coefficient(1), BigInt::from(5));
        assert_eq!(ball_series(8, 3).coefficient(3), BigInt::from(833));
    }

    #[test]
    fn display_is_readable() {
        let s = IntSeries::from_i64(&[1, 0, 3], 2);
        assert_eq!(s.to_string(), "1 + 3*q^2 + O(q^3)");
    }

    #[test]
    fn floor_and_ceiling() {
        let (f, c) = floor_ceil(&BigInt::from(6435), &BigInt::from(17));
        assert_eq!((f, c), (BigInt::from(378), BigInt::from(379)));
    }
}
