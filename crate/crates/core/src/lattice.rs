//! Construction A lattices `A(C) = { x in Z^n : x mod m in C }` for
//! `m in {2, 4}`, represented by the code itself rather than a basis.

use std::str::FromStr;

use crate::codes_gf2::{build_binary_code, BinaryCodeName, BinaryLinearCode};
use crate::codes_z4::{build_z4_code, Z4CodeName, Z4LinearCode, Z4Word};
use crate::error::{Error, Result};
use crate::series::{shift_exponent, IntSeries};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseCode {
    Binary(BinaryLinearCode),
    Z4(Z4LinearCode),
}

impl BaseCode {
    pub fn modulus(&self) -> usize {
        match self {
            BaseCode::Binary(_) => 2,
            BaseCode::Z4(_) => 4,
        }
    }

    pub fn length(&self) -> usize {
        match self {
            BaseCode::Binary(c) => c.length(),
            BaseCode::Z4(c) => c.length(),
        }
    }

    pub fn name(&self) -> &str {
        match self {
            BaseCode::Binary(c) => c.name(),
            BaseCode::Z4(c) => c.name(),
        }
    }

    /// Membership of a word already reduced into `0..m`.
    pub fn contains_residues(&self, residues: &[u8]) -> bool {
        if residues.len() != self.length() {
            return false;
        }
        match self {
            BaseCode::Binary(c) => {
                let packed = residues
                    .iter()
                    .enumerate()
                    .fold(0u64, |acc, (j, &s)| acc | ((s & 1) as u64) << j);
                c.contains(packed)
            }
            BaseCode::Z4(c) => c.contains(Z4Word::from_symbols(residues)),
        }
    }

    /// Minimum Lee weight of a nonzero codeword (Hamming weight for `m = 2`).
    pub fn min_lee_distance(&self) -> Result<usize> {
        match self {
            BaseCode::Binary(c) => c.min_hamming_weight(),
            BaseCode::Z4(c) => c.min_lee_distance(),
        }
    }

    /// `sum_c q^{sum_i s(c_i)}` with `s(j)` the least integer `>= r`
    /// congruent to `j` mod `m`.
    pub fn shifted_weight_distribution(&self, r: usize) -> Result<IntSeries> {
        match self {
            BaseCode::Binary(c) => {
                let n = c.length();
                let (a, b) = (shift_exponent(0, r, 2), shift_exponent(1, r, 2));
                let degree = n * b.max(a);
                let mut counts = vec![0u64; degree + 1];
                for (w, &count) in c.weight_distribution()?.0.iter().enumerate() {
                    counts[(n - w) * a + w * b] += count;
                }
                Ok(IntSeries::from_u64(&counts, degree))
            }
            BaseCode::Z4(c) => c.shifted_weight_distribution(r),
        }
    }
}

/// Accepts any name understood by the binary or the `Z4` code builders.
impl FromStr for BaseCode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        if let Ok(name) = s.parse::<BinaryCodeName>() {
            return Ok(build_binary_code(name)?.into());
        }
        match s.parse::<Z4CodeName>() {
            Ok(name) => Ok(build_z4_code(name)?.into()),
            Err(_) => Err(Error::Parameter(format!("unknown code {s:?}"))),
        }
    }
}

impl From<BinaryLinearCode> for BaseCode {
    fn from(c: BinaryLinearCode) -> Self {
        BaseCode::Binary(c)
    }
}

impl From<Z4LinearCode> for BaseCode {
    fn from(c: Z4LinearCode) -> Self {
        BaseCode::Z4(c)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionALattice {
    code: BaseCode,
}

impl ConstructionALattice {
    pub fn new(code: impl Into<BaseCode>) -> Self {
        ConstructionALattice { code: code.into() }
    }

    pub fn code(&self) -> &BaseCode {
        &self.code
    }

    pub fn modulus(&self) -> usize {
        self.code.modulus()
    }

    pub fn dimension(&self) -> usize {
        self.code.length()
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        if x.len() != self.dimension() {
            return Err(Error::Dimension {
                expected: self.dimension(),
                got: x.len(),
            });
        }
        let m = self.modulus() as i64;
        let residues: Vec<u8> = x.iter().map(|&v| v.rem_euclid(m) as u8).collect();
        Ok(self.code.contains_residues(&residues))
    }

    /// `min(d', m)` where `d'` is the minimum Lee distance of the code; the
    /// zero code gives `m Z^n` with distance `m`.
    pub fn min_distance(&self) -> Result<usize> {
        match self.code.min_lee_distance() {
            Ok(d) => Ok(d.min(self.modulus())),
            Err(Error::ZeroCode) => Ok(self.modulus()),
            Err(e) => Err(e),
        }
    }
}

/// Upper-triangular generator of `A(K_n)`: all-ones first row, then rows
/// `2 e_i + 2 e_n` for `1 < i < n`, then `4 e_n`. Only even `n`: for odd
/// `n` twice the all-ones row leaves the span of these rows.
pub fn klemm_generator_matrix(n: usize) -> Result<Vec<Vec<i64>>> {
    if n < 2 || !n.is_multiple_of(2) {
        return Err(Error::Parameter(format!("klemm generator needs even n >= 2, got {n}")));
    }
    let mut g = vec![vec![0i64; n]; n];
    g[0] = vec![1; n];
    for (i, row) in g.iter_mut().enumerate().take(n - 1).skip(1) {
        row[i] = 2;
        row[n - 1] = 2;
    }
    g[n - 1][n - 1] = 4;
    Ok(g)
}

/// Integer coefficients `a` with `a G = x`, for square upper-triangular `G`.
pub fn solve_upper_triangular(g: &[Vec<i64>], x: &[i64]) -> Option<Vec<i64>> {
    let n = g.len();
    let mut a = vec![0i64; n];
    for j in 0..n {
        let partial: i64 = (0..j).map(|i| a[i] * g[i][j]).sum();
        let rest = x[j] - partial;
        if g[j][j] == 0 || rest % g[j][j] != 0 {
            return None;
        }
        a[j] = rest / g[j][j];
    }
    Some(a)
}

/// `x in 2 D_n` or `x in 1 + 2 D_n`, with `D_n` the even-sum lattice.
pub fn in_two_coset_form(x: &[i64]) -> bool {
    let all_even = x.iter().all(|v| v.rem_euclid(2) == 0);
    let all_odd = x.iter().all(|v| v.rem_euclid(2) == 1);
    if all_even {
        x.iter().map(|v| v / 2).sum::<i64>().rem_euclid(2) == 0
    } else if all_odd {
        x.iter().map(|v| (v - 1) / 2).sum::<i64>().rem_euclid(2) == 0
    } else {
        false
    }
}

/// Checks `A(K_n) = 2 D_n u (1 + 2 D_n)` on every point of `[lo, hi]^n`.
pub fn coset_structure_check(n: usize, lo: i64, hi: i64) -> Result<bool> {
    let lattice = ConstructionALattice::new(Z4LinearCode::klemm(n)?);
    let mut x = vec![lo; n];
    loop {
        if lattice.contains(&x)? != in_two_coset_form(&x) {
            return Ok(false);
        }
        let mut j = 0;
        while j < n && x[j] == hi {
            x[j] = lo;
            j += 1;
        }
        if j == n {
            return Ok(true);
        }
        x[j] += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::codes_gf2::{build_binary_code, BinaryCodeName};

    fn h8() -> ConstructionALattice {
        ConstructionALattice::new(build_binary_code(BinaryCodeName::ExtendedHamming8).unwrap())
    }

    fn k(n: usize) -> ConstructionALattice {
        ConstructionALattice::new(Z4LinearCode::klemm(n).unwrap())
    }

    #[test]
    fn membership_examples() {
        let mut x = vec![0i64; 8];
        x[0] = 2;
        assert!(h8().contains(&x).unwrap());
        x[0] = 1;
        assert!(!h8().contains(&x).unwrap());
        assert!(k(8).contains(&[1; 8]).unwrap());
        assert!(!k(4).contains(&[1, 1, 1, 2]).unwrap());
        assert!(k(8).contains(&[1; 4]).is_err());
    }

    #[test]
    fn min_distances() {
        assert_eq!(h8().min_distance().unwrap(), 2);
        assert_eq!(k(8).min_distance().unwrap(), 4);
        let zero = Z4LinearCode::from_generators("zero", 6, &[]).unwrap();
        assert_eq!(ConstructionALattice::new(zero).min_distance().unwrap(), 4);
    }

    #[test]
    fn generator_matrix_shape() {
        let g = klemm_generator_matrix(8).unwrap();
        assert_eq!(g[0], vec![1; 8]);
        assert_eq!(g[3], vec![0, 0, 0, 2, 0, 0, 0, 2]);
        assert_eq!(g[7], vec![0, 0, 0, 0, 0, 0, 0, 4]);
        let det: i64 = (0..8).map(|i| g[i][i]).product();
        assert_eq!(det, 256);
        let lattice = k(8);
        for row in &g {
            assert!(lattice.contains(row).unwrap());
        }
    }

    #[test]
    fn span_equals_lattice_small_window() {
        assert!(klemm_generator_matrix(3).is_err());
        for n in [2usize, 4] {
            let g = klemm_generator_matrix(n).unwrap();
            let lattice = k(n);
            let total = 9usize.pow(n as u32);
            for idx in 0..total {
                let x: Vec<i64> = (0..n).map(|j| (idx / 9usize.pow(j as u32) % 9) as i64 - 4).collect();
                assert_eq!(
                    solve_upper_triangular(&g, &x).is_some(),
                    lattice.contains(&x).unwrap(),
                    "x={x:?}"
                );
            }
        }
    }

    #[test]
    fn coset_structure() {
        assert!(coset_structure_check(4, 0, 4).unwrap());
        assert!(!in_two_coset_form(&[1, 1, 1, 2]));
    }
}
