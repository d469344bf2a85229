use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use deletion_lattice::bounds::{curve_emit, delta_grid, BoundReport};
use deletion_lattice::channel::{run_pipeline, ChannelConfig, ChannelModel};
use deletion_lattice::codebook::{generate, CodebookHeader};
use deletion_lattice::decoder::{decode_auto, decode_with, coset_representative, DecodeOptions};
use deletion_lattice::lattice::BaseCode;
use deletion_lattice::runlength::{format_word, parse_word, phi, phi_inverse, RunVector};
use deletion_lattice::series::{hat_coefficient, nu_series};
use deletion_lattice::tables::{golden_diff, reproduce_table, NormRange, TableId, TableSpec};
use deletion_lattice::Error;

#[derive(Parser)]
#[command(name = "latdel", version, about = "Lattice codes for the binary deletion channel")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Construction {
    Plain,
    Hat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Model {
    Exhaustive,
    Random,
}

#[derive(Subcommand)]
enum Command {
    /// Coefficients of the shifted nu-series of a Construction A lattice.
    Nu {
        /// Code name, e.g. h8, reed_muller(1,3), klemm(8), bw16, golay_z4.
        #[arg(long)]
        code: String,
        #[arg(long)]
        r: usize,
        #[arg(long = "n-min")]
        n_min: usize,
        #[arg(long = "n-max")]
        n_max: usize,
        #[arg(long, default_value_t = 1)]
        step: usize,
        #[arg(long, value_enum, default_value_t = Construction::Plain)]
        construction: Construction,
    },
    /// Lists every codeword of A(K_n) with runs >= r and total length N.
    Codebook {
        #[arg(long)]
        n: usize,
        #[arg(long = "total")]
        total: i64,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        output: Option<PathBuf>,
        /// Also print visited-node counts per level to stderr.
        #[arg(long)]
        stats: bool,
    },
    /// Decodes a received run vector against a codebook's parameters.
    Decode {
        /// Codebook file; only its header is used.
        #[arg(long)]
        codebook: PathBuf,
        /// Received run vector, space separated.
        #[arg(long, allow_hyphen_values = true)]
        received: String,
        /// Coset of A_{n-1} to use instead of the majority parity.
        #[arg(long, value_parser = ["odd", "even"])]
        coset: Option<String>,
        #[arg(long)]
        force_projection: bool,
    },
    /// Binary word of a run vector.
    Encode {
        #[arg(long)]
        runs: String,
    },
    /// Run vector of a binary word.
    DecodeRuns {
        #[arg(long)]
        word: String,
    },
    /// Finite bounds on the size of (n, d, N, r)-sets.
    Bounds {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        d: u64,
        #[arg(long)]
        r: i64,
        #[arg(long = "n-min")]
        n_min: i64,
        #[arg(long = "n-max")]
        n_max: i64,
        #[arg(long, default_value_t = 1)]
        step: usize,
        /// Code whose nu-series supplies a constructive lower bound.
        #[arg(long)]
        code: Option<String>,
    },
    /// Asymptotic rate exponent over a delta grid.
    Asymptotic {
        #[arg(long, default_value_t = 2)]
        r: u32,
        #[arg(long, value_delimiter = ',', default_values_t = [0.2, 0.4, 0.5, 0.6, 0.8])]
        eta: Vec<f64>,
        #[arg(long, default_value_t = 0.01)]
        delta_step: f64,
        #[arg(long, default_value_t = 1.0)]
        delta_max: f64,
    },
    /// Encode, delete and decode over a codebook.
    Simulate {
        #[arg(long)]
        n: usize,
        #[arg(long = "total")]
        total: i64,
        #[arg(long)]
        r: i64,
        /// Deletion budget, at most r - 1.
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = Model::Exhaustive)]
        model: Model,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 10_000)]
        trials: u64,
    },
    /// Regenerates tables and figure data as CSV.
    Tables {
        /// Table id: I..VIII, fig1, fig2.
        #[arg(long, required_unless_present = "all")]
        id: Option<String>,
        #[arg(long)]
        all: bool,
        /// Directory for the CSV files; stdout when absent.
        #[arg(long)]
        out_dir: Option<PathBuf>,
        /// Compare against the stored golden files.
        #[arg(long)]
        check: bool,
        #[arg(long, value_delimiter = ',')]
        shifts: Option<Vec<usize>>,
        #[arg(long = "n-min", requires = "n_max")]
        n_min: Option<usize>,
        #[arg(long = "n-max", requires = "n_min")]
        n_max: Option<usize>,
        #[arg(long, default_value_t = 4)]
        step: usize,
        #[arg(long)]
        skip_lambda24: bool,
    },
}

enum Failure {
    Domain(String),
    Internal(String),
    // reader went away, e.g. `| head`
    ClosedPipe,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Construction(_) | Error::Lift(_) => Failure::Internal(e.to_string()),
            _ => Failure::Domain(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        if e.kind() == io::ErrorKind::BrokenPipe {
            return Failure::ClosedPipe;
        }
        Failure::Internal(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Internal(e.to_string())
    }
}

type CliResult = Result<(), Failure>;

fn parse_runs(s: &str) -> Result<Vec<i64>, Failure> {
    s.split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| t.parse().map_err(|_| Failure::Domain(format!("bad integer {t:?}"))))
        .collect()
}

fn cmd_nu(code: &str, r: usize, lo: usize, hi: usize, step: usize, construction: Construction) -> CliResult {
    let code: BaseCode = code.parse()?;
    let degree = match construction {
        Construction::Plain => hi,
        Construction::Hat => hi.saturating_sub(r),
    };
    let nu = nu_series(&code, r, degree)?;
    let label = match construction {
        Construction::Plain => "plain",
        Construction::Hat => "hat",
    };
    let mut out = io::stdout().lock();
    writeln!(out, "# code={} m={} r={} construction={}", code.name(), code.modulus(), r, label)?;
    writeln!(out, "N,coefficient")?;
    for norm in (lo..=hi).step_by(step.max(1)) {
        let value = match construction {
            Construction::Plain => nu.coefficient(norm)?,
            Construction::Hat => hat_coefficient(&nu, norm)?,
        };
        writeln!(out, "{norm},{value}")?;
    }
    Ok(())
}

fn cmd_codebook(n: usize, total: i64, r: i64, output: Option<PathBuf>, stats: bool) -> CliResult {
    let cb = generate(n, total, r)?;
    if stats {
        for (level, nodes) in cb.visited_nodes.iter().enumerate() {
            eprintln!("level {} nodes {}", level + 1, nodes);
        }
    }
    match output {
        Some(path) => fs::write(path, cb.to_string())?,
        None => write!(io::stdout().lock(), "{cb}")?,
    }
    Ok(())
}

fn cmd_decode(path: PathBuf, received: &str, coset: Option<String>, force: bool) -> CliResult {
    let text = fs::read_to_string(path)?;
    let header: CodebookHeader = text
        .lines()
        .next()
        .ok_or_else(|| Failure::Domain("empty codebook file".into()))?
        .parse()?;
    let x = parse_runs(received)?;
    if x.len() != header.n {
        return Err(Error::Dimension {
            expected: header.n,
            got: x.len(),
        }
        .into());
    }
    let trace = match coset {
        Some(c) => {
            let a = coset_representative(header.n, header.total, c == "odd");
            decode_with(&x, header.total, &a, DecodeOptions { force_projection: force })?
        }
        None if !force => decode_auto(&x, header.total)?,
        None => return Err(Failure::Domain("--force-projection needs --coset".into())),
    };
    let mut out = io::stdout().lock();
    match &trace.output {
        Some(y) => writeln!(out, "decoded {}", RunVector::new(y.clone()).map_or_else(|_| format!("{y:?}"), |v| v.to_string()))?,
        None => writeln!(out, "decoded none ({:?})", trace.failure)?,
    }
    writeln!(out, "branch {:?}", trace.branch)?;
    if let Some(i) = trace.projection_index {
        writeln!(out, "index {i}")?;
    }
    writeln!(out, "additions {}", trace.additions_used)?;
    writeln!(out, "parity_tests {}", trace.parity_tests_used)?;
    if trace.output.is_none() {
        return Err(Failure::Domain("decoding failed".into()));
    }
    Ok(())
}

fn cmd_bounds(n: u64, d: u64, r: i64, lo: i64, hi: i64, step: usize, code: Option<String>) -> CliResult {
    let nu = match code {
        Some(name) => {
            let code: BaseCode = name.parse()?;
            if code.length() as u64 != n {
                return Err(Error::Dimension {
                    expected: n as usize,
                    got: code.length(),
                }
                .into());
            }
            if r < 0 {
                return Err(Failure::Domain("r must be >= 0".into()));
            }
            Some(nu_series(&code, r as usize, hi.max(0) as usize)?)
        }
        None => None,
    };
    let mut out = io::stdout().lock();
    writeln!(out, "N,I,nu_lower,S,johnson")?;
    for total in (lo..=hi).step_by(step.max(1)) {
        let nu_lower = match &nu {
            Some(s) if total >= 0 => Some(s.coefficient(total as usize)?),
            _ => None,
        };
        let rep = BoundReport::compute(n, d, total, r, nu_lower)?;
        let opt = |v: &Option<num_bigint::BigInt>| v.as_ref().map_or(String::new(), |x| x.to_string());
        writeln!(
            out,
            "{},{},{},{},{}",
            total,
            rep.gilbert_lower,
            opt(&rep.nu_lower),
            rep.hamming_upper,
            opt(&rep.johnson_upper)
        )?;
    }
    Ok(())
}

fn cmd_asymptotic(r: u32, etas: &[f64], step: f64, max: f64) -> CliResult {
    if step.is_nan() || step <= 0.0 {
        return Err(Failure::Domain("delta step must be positive".into()));
    }
    let points = curve_emit(r, etas, &delta_grid(step, max))?;
    let mut out = io::stdout().lock();
    writeln!(out, "r,eta,delta,f")?;
    for p in points {
        writeln!(out, "{},{},{},{:.10}", p.r, p.eta, p.delta, p.value)?;
    }
    Ok(())
}

fn cmd_simulate(n: usize, total: i64, r: i64, t: usize, model: Model, seed: u64, trials: u64) -> CliResult {
    let cb = generate(n, total, r)?;
    let config = ChannelConfig {
        max_deletions: t,
        model: match model {
            Model::Exhaustive => ChannelModel::Exhaustive,
            Model::Random => ChannelModel::UniformRandom { trials },
        },
        seed,
    };
    let report = run_pipeline(&cb, &config)?;
    let mut out = io::stdout().lock();
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)?;
    writeln!(out, "{}", report.summary())?;
    Ok(())
}

fn cmd_tables(
    id: Option<String>,
    all: bool,
    out_dir: Option<PathBuf>,
    check: bool,
    shifts: Option<Vec<usize>>,
    norms: Option<NormRange>,
    skip_lambda24: bool,
) -> CliResult {
    let ids: Vec<TableId> = if all {
        TableId::ALL.to_vec()
    } else {
        vec![id.unwrap_or_default().parse()?]
    };
    if let Some(dir) = &out_dir {
        fs::create_dir_all(dir)?;
    }
    let mut mismatches = 0;
    for id in ids {
        let spec = TableSpec {
            id,
            shifts: shifts.clone(),
            norms,
            skip_lambda24,
        };
        let csv = reproduce_table(&spec)?;
        match &out_dir {
            Some(dir) => fs::write(dir.join(format!("{}.csv", id.file_stem())), &csv)?,
            None => write!(io::stdout().lock(), "{csv}")?,
        }
        if check {
            if let Some(golden) = id.golden() {
                let outcome = golden_diff(&csv, golden)?;
                eprintln!("{id}: {outcome}");
                if !outcome.passed() {
                    mismatches += 1;
                }
            }
        }
    }
    if mismatches > 0 {
        return Err(Failure::Domain(format!("{mismatches} table(s) differ from golden")));
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::Nu {
            code,
            r,
            n_min,
            n_max,
            step,
            construction,
        } => cmd_nu(&code, r, n_min, n_max, step, construction),
        Command::Codebook {
            n,
            total,
            r,
            output,
            stats,
        } => cmd_codebook(n, total, r, output, stats),
        Command::Decode {
            codebook,
            received,
            coset,
            force_projection,
        } => cmd_decode(codebook, &received, coset, force_projection),
        Command::Encode { runs } => {
            let rv = RunVector::new(parse_runs(&runs)?)?;
            writeln!(io::stdout().lock(), "{}", format_word(&phi_inverse(&rv)))?;
            Ok(())
        }
        Command::DecodeRuns { word } => {
            let rv = phi(&parse_word(&word)?)?;
            writeln!(io::stdout().lock(), "{rv}")?;
            Ok(())
        }
        Command::Bounds {
            n,
            d,
            r,
            n_min,
            n_max,
            step,
            code,
        } => cmd_bounds(n, d, r, n_min, n_max, step, code),
        Command::Asymptotic {
            r,
            eta,
            delta_step,
            delta_max,
        } => cmd_asymptotic(r, &eta, delta_step, delta_max),
        Command::Simulate {
            n,
            total,
            r,
            t,
            model,
            seed,
            trials,
        } => cmd_simulate(n, total, r, t, model, seed, trials),
        Command::Tables {
            id,
            all,
            out_dir,
            check,
            shifts,
            n_min,
            n_max,
            step,
            skip_lambda24,
        } => {
            let norms = n_min.zip(n_max).map(|(start, end)| NormRange { start, end, step });
            cmd_tables(id, all, out_dir, check, shifts, norms, skip_lambda24)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) | Err(Failure::ClosedPipe) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Internal(msg)) => {
            eprintln!("internal error: {msg}");
            ExitCode::from(2)
        }
    }
}
