//! Bounds on the largest `(n, d, N, r)`-set.
//!
//! The finite bounds are exact integer computations: the ambient count is
//! a stars-and-bars binomial, and the Gilbert and Hamming analogues divide
//! it by Manhattan ball volumes. The lower bound rounds up and the upper
//! bound rounds down; with a ceiling on both, `S(8,1,24,2)` would be 379
//! where the tabulated value is `floor(6435/17) = 378`.
//!
//! The asymptotic exponents are floating point, with `H` and `L` extended
//! by continuity at 0.

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::series::floor_ceil;

fn binomial(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Number of points of `Z^n` at Manhattan distance `<= e` from the origin:
/// `sum_i 2^i C(n, i) C(e, i)`.
pub fn ball_volume(n: u64, e: u64) -> BigInt {
    (0..=n.min(e))
        .map(|i| (BigInt::one() << i) * binomial(n, i) * binomial(e, i))
        .sum()
}

/// Vectors of `n` integers `>= r` summing to `N`: `C(N - n r + n - 1, n - 1)`,
/// zero when `N < n r`.
pub fn ambient_count(n: u64, total: i64, r: i64) -> BigInt {
    let slack = total - n as i64 * r;
    if slack < 0 || n == 0 {
        return BigInt::zero();
    }
    binomial(slack as u64 + n - 1, n - 1)
}

/// Whether `N > n r`, `n >= d` and `r > e >= 1` with `e = floor((d-1)/2)`.
pub fn in_gilbert_hamming_domain(n: u64, d: u64, total: i64, r: i64) -> bool {
    let e = d.saturating_sub(1) / 2;
    total > n as i64 * r && n >= d && e >= 1 && r > e as i64
}

/// `ceil(ambient / V(n, d - 1))`.
pub fn gilbert_lower(n: u64, d: u64, total: i64, r: i64) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::Parameter("minimum distance must be >= 1".into()));
    }
    let (_, ceil) = floor_ceil(&ambient_count(n, total, r), &ball_volume(n, d - 1));
    Ok(ceil)
}

/// `floor(ambient / V(n, e))` with `e = floor((d - 1) / 2)`.
pub fn hamming_upper(n: u64, d: u64, total: i64, r: i64) -> Result<BigInt> {
    if d == 0 {
        return Err(Error::Parameter("minimum distance must be >= 1".into()));
    }
    let (floor, _) = floor_ceil(&ambient_count(n, total, r), &ball_volume(n, (d - 1) / 2));
    Ok(floor)
}

/// `floor(d / (d - N (1 - 1/(2n))))` when `d > N (1 - 1/(2n))`, compared
/// exactly as `2 n d > N (2 n - 1)`.
pub fn johnson_upper(n: u64, d: u64, total: i64) -> Option<BigInt> {
    let two_n = BigInt::from(2 * n);
    let numerator = &two_n * BigInt::from(d);
    let threshold = BigInt::from(total) * (&two_n - BigInt::from(1));
    let gap: BigInt = &numerator - threshold;
    if !gap.is_positive() {
        return None;
    }
    Some(floor_ceil(&numerator, &gap).0)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub n: u64,
    pub d: u64,
    pub total: i64,
    pub r: i64,
    pub e: u64,
    pub ambient: BigInt,
    pub gilbert_lower: BigInt,
    pub hamming_upper: BigInt,
    pub johnson_upper: Option<BigInt>,
    pub nu_lower: Option<BigInt>,
    /// Parameters satisfy the hypotheses under which the two bounds are
    /// stated; rows outside are still evaluated.
    pub in_domain: bool,
}

impl BoundReport {
    pub fn compute(n: u64, d: u64, total: i64, r: i64, nu_lower: Option<BigInt>) -> Result<Self> {
        Ok(BoundReport {
            n,
            d,
            total,
            r,
            e: (d.max(1) - 1) / 2,
            ambient: ambient_count(n, total, r),
            gilbert_lower: gilbert_lower(n, d, total, r)?,
            hamming_upper: hamming_upper(n, d, total, r)?,
            johnson_upper: johnson_upper(n, d, total),
            nu_lower,
            in_domain: in_gilbert_hamming_domain(n, d, total, r),
        })
    }
}

/// `log2` of a positive big integer.
pub fn log2_big(x: &BigInt) -> Result<f64> {
    if !x.is_positive() {
        return Err(Error::Domain(format!("log2 of non-positive {x}")));
    }
    let bits = x.bits();
    let shift = bits.saturating_sub(60);
    let top = (x >> shift).to_f64().unwrap_or(f64::INFINITY);
    Ok(top.log2() + shift as f64)
}

/// Binary entropy, with `H(0) = H(1) = 0`.
pub fn entropy(q: f64) -> Result<f64> {
    if !(0.0..=1.0).contains(&q) {
        return Err(Error::Domain(format!("entropy argument {q} outside [0, 1]")));
    }
    let term = |p: f64| if p > 0.0 { -p * p.log2() } else { 0.0 };
    Ok(term(q) + term(1.0 - q))
}

/// Exponent of Manhattan ball volumes with radius proportional to the
/// dimension: `x log2 x + log2(x + sqrt(x^2+1)) - x log2(sqrt(x^2+1) - 1)`.
///
/// Evaluated as `asinh(x)/ln 2 + x log2((sqrt(x^2+1) + 1)/x)`, which is the
/// same function without the cancellation in `sqrt(x^2+1) - 1`.
pub fn lee_exponent(x: f64) -> Result<f64> {
    if x.is_nan() || x < 0.0 {
        return Err(Error::Domain(format!("lee exponent argument {x} is negative")));
    }
    if x == 0.0 {
        return Ok(0.0);
    }
    let root = (x * x + 1.0).sqrt();
    Ok(x.asinh() / std::f64::consts::LN_2 + x * ((root + 1.0) / x).log2())
}

/// `f(r, eta, delta) = [1 - eta + eta/r] H(eta / (eta + r(1 - eta)))
///                     - (eta/r) L(r delta / eta)`.
pub fn rate_exponent(r: f64, eta: f64, delta: f64) -> Result<f64> {
    if r < 1.0 {
        return Err(Error::Domain(format!("r = {r} must be >= 1")));
    }
    if !(eta > 0.0 && eta < 1.0) {
        return Err(Error::Domain(format!("eta = {eta} must lie in (0, 1)")));
    }
    if !(0.0..2.0).contains(&delta) {
        return Err(Error::Domain(format!("delta = {delta} must lie in [0, 2)")));
    }
    let scale = 1.0 - eta + eta / r;
    let h = entropy(eta / (eta + r * (1.0 - eta)))?;
    Ok(scale * h - (eta / r) * lee_exponent(r * delta / eta)?)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticPoint {
    pub r: u32,
    pub eta: f64,
    pub delta: f64,
    pub lower: f64,
    pub upper: f64,
}

/// Lower and upper asymptotic exponents `f(r, eta, delta)` and
/// `f(r, eta, delta/2)`.
pub fn rate_bound(r: u32, eta: f64, delta: f64) -> Result<AsymptoticPoint> {
    let rf = r as f64;
    Ok(AsymptoticPoint {
        r,
        eta,
        delta,
        lower: rate_exponent(rf, eta, delta)?,
        upper: rate_exponent(rf, eta, delta / 2.0)?,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CurvePoint {
    pub r: u32,
    pub eta: f64,
    pub delta: f64,
    pub value: f64,
}

/// `f(r, eta, delta)` over the grid, eta outer and delta inner.
pub fn curve_emit(r: u32, etas: &[f64], deltas: &[f64]) -> Result<Vec<CurvePoint>> {
    let mut out = Vec::with_capacity(etas.len() * deltas.len());
    for &eta in etas {
        for &delta in deltas {
            out.push(CurvePoint {
                r,
                eta,
                delta,
                value: rate_exponent(r as f64, eta, delta)?,
            });
        }
    }
    Ok(out)
}

/// `0, step, 2 step, ..., <= max` computed from integer multiples.
pub fn delta_grid(step: f64, max: f64) -> Vec<f64> {
    let count = (max / step + 1e-9).floor() as usize;
    (0..=count).map(|k| k as f64 * step).collect()
}
