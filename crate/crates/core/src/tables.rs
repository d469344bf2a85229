//! Recipes that regenerate every numeric table and figure dataset as CSV,
//! plus a cell-by-cell comparator against stored golden files.

use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_bigint::BigInt;

use crate::bounds::{curve_emit, delta_grid, gilbert_lower, hamming_upper};
use crate::codebook::{generate, naive_node_bound};
use crate::codes_gf2::{build_binary_code, BinaryCodeName};
use crate::codes_z4::{GolayExtension, Z4LinearCode};
use crate::error::{Error, Result};
use crate::lattice::BaseCode;
use crate::series::{hat_coefficient, nu_series_from_numerator, LatticeTag, NuSeries};

/// Absolute tolerance for floating-point cells in [`golden_diff`].
pub const FLOAT_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TableId {
    I,
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    Fig1,
    Fig2,
}

impl TableId {
    pub const ALL: [TableId; 10] = [
        TableId::I,
        TableId::II,
        TableId::III,
        TableId::IV,
        TableId::V,
        TableId::VI,
        TableId::VII,
        TableId::VIII,
        TableId::Fig1,
        TableId::Fig2,
    ];

    /// Base name of the CSV file, e.g. `table_iii` or `fig1`.
    pub fn file_stem(self) -> &'static str {
        match self {
            TableId::I => "table_i",
            TableId::II => "table_ii",
            TableId::III => "table_iii",
            TableId::IV => "table_iv",
            TableId::V => "table_v",
            TableId::VI => "table_vi",
            TableId::VII => "table_vii",
            TableId::VIII => "table_viii",
            TableId::Fig1 => "fig1",
            TableId::Fig2 => "fig2",
        }
    }

    /// Stored golden CSV, if the table has reference numbers.
    pub fn golden(self) -> Option<&'static str> {
        Some(match self {
            TableId::I => include_str!("../golden/table_i.csv"),
            TableId::II => include_str!("../golden/table_ii.csv"),
            TableId::III => include_str!("../golden/table_iii.csv"),
            TableId::IV => include_str!("../golden/table_iv.csv"),
            TableId::V => include_str!("../golden/table_v.csv"),
            TableId::VI => include_str!("../golden/table_vi.csv"),
            TableId::VII => include_str!("../golden/table_vii.csv"),
            TableId::VIII => include_str!("../golden/table_viii.csv"),
            TableId::Fig1 | TableId::Fig2 => return None,
        })
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            TableId::I => "I",
            TableId::II => "II",
            TableId::III => "III",
            TableId::IV => "IV",
            TableId::V => "V",
            TableId::VI => "VI",
            TableId::VII => "VII",
            TableId::VIII => "VIII",
            TableId::Fig1 => "fig1",
            TableId::Fig2 => "fig2",
        };
        f.write_str(s)
    }
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key = s.trim().to_ascii_lowercase();
        let key = key.strip_prefix("table_").unwrap_or(&key);
        Ok(match key {
            "i" | "1" => TableId::I,
            "ii" | "2" => TableId::II,
            "iii" | "3" => TableId::III,
            "iv" | "4" => TableId::IV,
            "v" | "5" => TableId::V,
            "vi" | "6" => TableId::VI,
            "vii" | "7" => TableId::VII,
            "viii" | "8" => TableId::VIII,
            "fig1" => TableId::Fig1,
            "fig2" => TableId::Fig2,
            _ => return Err(Error::Parse(format!("unknown table id {s:?}"))),
        })
    }
}

/// Inclusive arithmetic range of norms `start, start + step, ..., <= end`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NormRange {
    pub start: usize,
    pub end: usize,
    pub step: usize,
}

impl NormRange {
    fn values(self) -> Vec<usize> {
        (self.start..=self.end).step_by(self.step.max(1)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableSpec {
    pub id: TableId,
    /// Replaces the shift values of a series table.
    pub shifts: Option<Vec<usize>>,
    /// Replaces the norm range of every block of a series table.
    pub norms: Option<NormRange>,
    /// Skips the Leech block of Table III.
    pub skip_lambda24: bool,
}

impl TableSpec {
    pub fn new(id: TableId) -> Self {
        TableSpec {
            id,
            shifts: None,
            norms: None,
            skip_lambda24: false,
        }
    }
}

impl From<TableId> for TableSpec {
    fn from(id: TableId) -> Self {
        TableSpec::new(id)
    }
}

/// One block of rows: a shift `r` and the norms listed for it.
struct Block {
    r: usize,
    norms: Vec<usize>,
}

/// Default blocks: `rows` norms from `first(r)` in steps of `step`.
fn blocks(spec: &TableSpec, shifts: &[usize], rows: usize, step: usize, first: impl Fn(usize) -> usize) -> Vec<Block> {
    let shifts = spec.shifts.clone().unwrap_or_else(|| shifts.to_vec());
    shifts
        .into_iter()
        .map(|r| Block {
            r,
            norms: match spec.norms {
                Some(range) => range.values(),
                None => (0..rows).map(|i| first(r) + i * step).collect(),
            },
        })
        .collect()
}

fn max_norm(blocks: &[Block]) -> usize {
    blocks.iter().flat_map(|b| b.norms.iter().copied()).max().unwrap_or(0)
}

/// Nu-series of `code` for every requested shift, enumerating the code once.
fn nu_for_shifts(code: &BaseCode, shifts: &[usize], degree: usize) -> Result<Vec<NuSeries>> {
    let tag = LatticeTag {
        code_name: code.name().to_string(),
        modulus: code.modulus(),
        dimension: code.length(),
    };
    match code {
        BaseCode::Z4(c) => {
            let cwe = c.complete_weight_enumerator()?;
            Ok(shifts
                .iter()
                .map(|&r| nu_series_from_numerator(tag.clone(), r, &cwe.substitute_shift(r), degree))
                .collect())
        }
        BaseCode::Binary(_) => shifts
            .iter()
            .map(|&r| {
                let numerator = code.shifted_weight_distribution(r)?;
                Ok(nu_series_from_numerator(tag.clone(), r, &numerator, degree))
            })
            .collect(),
    }
}

fn nu_hat_table(code: BaseCode, blocks: &[Block]) -> Result<String> {
    let shifts: Vec<usize> = blocks.iter().map(|b| b.r).collect();
    let series = nu_for_shifts(&code, &shifts, max_norm(blocks))?;
    let mut out = String::from("r,N,nu,nu_hat\n");
    for (block, nu) in blocks.iter().zip(&series) {
        for &norm in &block.norms {
            let value = nu.coefficient(norm)?;
            let hat = hat_coefficient(nu, norm)?;
            writeln!(out, "{},{},{},{}", block.r, norm, value, hat).expect("string write");
        }
    }
    Ok(out)
}

fn table_iii(spec: &TableSpec) -> Result<String> {
    let mut lattices = vec![("bw16", BaseCode::from(Z4LinearCode::bw16()?), 16)];
    if !spec.skip_lambda24 {
        lattices.push((
            "lambda24",
            BaseCode::from(Z4LinearCode::golay(GolayExtension::default())?),
            24,
        ));
    }
    let mut out = String::from("lattice,r,N,nu\n");
    for (label, code, n) in lattices {
        let blocks = blocks(spec, &[1, 2], 15, 4, |r| n * r);
        let shifts: Vec<usize> = blocks.iter().map(|b| b.r).collect();
        let series = nu_for_shifts(&code, &shifts, max_norm(&blocks))?;
        for (block, nu) in blocks.iter().zip(&series) {
            for &norm in &block.norms {
                writeln!(out, "{},{},{},{}", label, block.r, norm, nu.coefficient(norm)?).expect("string write");
            }
        }
    }
    Ok(out)
}

fn table_iv() -> Result<String> {
    let cb = generate(8, 12, 1)?;
    let mut out = String::from("c1,c2,c3,c4,c5,c6,c7,c8\n");
    for w in &cb.words {
        let cells: Vec<String> = w.iter().map(|x| x.to_string()).collect();
        writeln!(out, "{}", cells.join(",")).expect("string write");
    }
    Ok(out)
}

fn table_v() -> Result<String> {
    let cb = generate(8, 12, 1)?;
    let mut out = String::from("level,nodes,upper_bound\n");
    for level in 2..=7u32 {
        let nodes = cb.visited_nodes[level as usize - 1];
        let bound = naive_node_bound(8, 12, 1, level);
        writeln!(out, "{level},{nodes},{bound}").expect("string write");
    }
    Ok(out)
}

fn table_vi(spec: &TableSpec) -> Result<String> {
    let norms = spec
        .norms
        .map(NormRange::values)
        .unwrap_or_else(|| (8..=64).step_by(4).collect());
    let mut out = String::from("N,nodes_level7,nodes_level6,upper_bound_level6\n");
    for norm in norms {
        let cb = generate(8, norm as i64, 1)?;
        let bound = naive_node_bound(8, norm as i64, 1, 6);
        writeln!(out, "{},{},{},{}", norm, cb.visited_nodes[6], cb.visited_nodes[5], bound).expect("string write");
    }
    Ok(out)
}

/// Bound rows `r,N,I,nu,S` with minimum distance `d`.
fn bounds_table(code: BaseCode, d: u64, blocks: &[Block]) -> Result<String> {
    let n = code.length() as u64;
    let shifts: Vec<usize> = blocks.iter().map(|b| b.r).collect();
    let series = nu_for_shifts(&code, &shifts, max_norm(blocks))?;
    let mut out = String::from("r,N,I,nu,S\n");
    for (block, nu) in blocks.iter().zip(&series) {
        let r = block.r as i64;
        for &norm in &block.norms {
            let total = norm as i64;
            let lower: BigInt = gilbert_lower(n, d, total, r)?;
            let upper: BigInt = hamming_upper(n, d, total, r)?;
            writeln!(out, "{},{},{},{},{}", block.r, norm, lower, nu.coefficient(norm)?, upper).expect("string write");
        }
    }
    Ok(out)
}

fn figure(etas: &[f64]) -> Result<String> {
    let deltas = delta_grid(0.01, 1.0);
    let mut out = String::from("r,eta,delta,f\n");
    for p in curve_emit(2, etas, &deltas)? {
        writeln!(out, "{},{:.2},{:.2},{:.10}", p.r, p.eta, p.delta, p.value).expect("string write");
    }
    Ok(out)
}

pub fn reproduce_table(spec: &TableSpec) -> Result<String> {
    match spec.id {
        TableId::I => {
            let code = build_binary_code(BinaryCodeName::ExtendedHamming8)?;
            nu_hat_table(code.into(), &blocks(spec, &[1, 2], 15, 2, |r| 8 * r))
        }
        TableId::II => {
            let code = Z4LinearCode::klemm(8)?;
            nu_hat_table(code.into(), &blocks(spec, &[1, 2], 15, 4, |r| 8 * r))
        }
        TableId::III => table_iii(spec),
        TableId::IV => table_iv(),
        TableId::V => table_v(),
        TableId::VI => table_vi(spec),
        TableId::VII => {
            let code = Z4LinearCode::klemm(8)?;
            bounds_table(code.into(), 4, &blocks(spec, &[2, 3, 4], 15, 4, |r| 24 + 8 * (r - 2)))
        }
        TableId::VIII => {
            let code = Z4LinearCode::bw16()?;
            bounds_table(code.into(), 4, &blocks(spec, &[2, 3, 4], 16, 4, |r| 36 + 16 * (r - 2)))
        }
        TableId::Fig1 => figure(&[0.2, 0.4, 0.5, 0.6, 0.8]),
        TableId::Fig2 => figure(&[0.1, 0.3, 0.5, 0.7, 0.9]),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DiffOutcome {
    Pass,
    Mismatch {
        /// One-based data row, header excluded.
        row: usize,
        column: String,
        expected: String,
        got: String,
    },
}

impl DiffOutcome {
    pub fn passed(&self) -> bool {
        matches!(self, DiffOutcome::Pass)
    }
}

impl fmt::Display for DiffOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DiffOutcome::Pass => write!(f, "pass"),
            DiffOutcome::Mismatch {
                row,
                column,
                expected,
                got,
            } => write!(f, "row {row}, column {column}: expected {expected}, got {got}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum CellKind {
    Integer,
    Float,
    Text,
}

fn cell_kind(cell: &str) -> CellKind {
    if cell.parse::<BigInt>().is_ok() {
        CellKind::Integer
    } else if cell.parse::<f64>().is_ok() {
        CellKind::Float
    } else {
        CellKind::Text
    }
}

fn rows(csv: &str) -> Vec<Vec<&str>> {
    csv.lines()
        .filter(|l| !l.trim().is_empty())
        .map(|l| l.split(',').map(str::trim).collect())
        .collect()
}

/// Compares two CSV documents: exact for integer and text cells, within
/// [`FLOAT_TOLERANCE`] for float cells. Differing headers, row widths or
/// cell kinds are schema errors; the first differing cell or a missing row
/// is a mismatch.
pub fn golden_diff(generated: &str, golden: &str) -> Result<DiffOutcome> {
    let got = rows(generated);
    let want = rows(golden);
    let (Some(got_header), Some(want_header)) = (got.first(), want.first()) else {
        return Err(Error::Schema("missing header row".into()));
    };
    if got_header != want_header {
        return Err(Error::Schema(format!(
            "header {:?} differs from {:?}",
            got_header.join(","),
            want_header.join(",")
        )));
    }
    let width = want_header.len();
    for i in 1..want.len().max(got.len()) {
        let (g, w) = match (got.get(i), want.get(i)) {
            (Some(g), Some(w)) => (g, w),
            (g, w) => {
                return Ok(DiffOutcome::Mismatch {
                    row: i,
                    column: "<row>".into(),
                    expected: w.map_or("<none>".into(), |w| w.join(",")),
                    got: g.map_or("<none>".into(), |g| g.join(",")),
                })
            }
        };
        if g.len() != width || w.len() != width {
            return Err(Error::Schema(format!("row {i} does not have {width} cells")));
        }
        for (j, (a, b)) in g.iter().zip(w.iter()).enumerate() {
            let (ka, kb) = (cell_kind(a), cell_kind(b));
            if ka != kb {
                return Err(Error::Schema(format!(
                    "row {i}, column {}: {a:?} and {b:?} have different cell types",
                    want_header[j]
                )));
            }
            let equal = match ka {
                CellKind::Float => {
                    let (x, y) = (a.parse::<f64>().unwrap_or(f64::NAN), b.parse::<f64>().unwrap_or(f64::NAN));
                    (x - y).abs() <= FLOAT_TOLERANCE
                }
                CellKind::Integer => a.parse::<BigInt>().ok() == b.parse::<BigInt>().ok(),
                CellKind::Text => a == b,
            };
            if !equal {
                return Ok(DiffOutcome::Mismatch {
                    row: i,
                    column: want_header[j].to_string(),
                    expected: b.to_string(),
                    got: a.to_string(),
                });
            }
        }
    }
    Ok(DiffOutcome::Pass)
}
