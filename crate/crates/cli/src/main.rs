use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fermat_slice::curve_analysis::{
    decompose, AnalysisOptions, Analyzer, EnumLimits, ENUM_CEILING_VAR,
};
use fermat_slice::report::{
    self, analyze_all, canonical_json, is_verified, render_text, report_json, sweep_configs,
    write_csv, CensusRow, CensusSummary, ReportError, Sweep,
};
use fermat_slice::verify::{self, BatteryOptions};
use fermat_slice::{AnalysisError, CurveConfig, FieldSpec};

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;

#[derive(Parser)]
#[command(
    name = "fermat-slice",
    version,
    about = "Plane sections X0^d + X1^d + X2^d + (e0 X0 + e1 X1 + e2 X2)^d = 0 over F_q, q = 2d + 1",
    after_help = format!(
        "Exit status: 0 when every check passes, 1 on a verification failure, 2 on invalid input.\n\
         Set {ENUM_CEILING_VAR} to raise the enumeration ceiling."
    )
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct FieldArgs {
    /// Characteristic (prime, greater than 3)
    #[arg(long)]
    p: u32,
    /// Extension degree
    #[arg(long, default_value_t = 1)]
    h: u32,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Decompose one curve and check every claim about it
    Analyze {
        #[command(flatten)]
        field: FieldArgs,
        /// Parameter e0 as an element index in [0, q)
        #[arg(long)]
        e0: u64,
        #[arg(long)]
        e1: u64,
        #[arg(long)]
        e2: u64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Scan F_{q^k} for singular points of G, k = 1..=K (0 skips)
        #[arg(long, default_value_t = 1)]
        probe_depth: u32,
    },
    /// Analyze many configurations and write one CSV row per configuration
    #[command(
        after_help = "Sampling draws distinct configurations with ChaCha8 seeded by --seed, \
        then sorts them by (e0, e1, e2)."
    )]
    Census {
        #[command(flatten)]
        field: FieldArgs,
        /// `all`, `signatures`, or `sample N`
        #[arg(long, num_args = 1..=2, value_names = ["MODE", "N"], default_values = ["signatures"])]
        sweep: Vec<String>,
        /// Seed for `--sweep sample N`
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// CSV destination (standard output when omitted)
        #[arg(long)]
        out: Option<PathBuf>,
        /// Stop at the first configuration that fails verification
        #[arg(long)]
        fail_fast: bool,
        /// Permit `--sweep all` for q above 13
        #[arg(long)]
        allow_large: bool,
        #[arg(long, default_value_t = 1)]
        probe_depth: u32,
    },
    /// Print a classification table instantiated at q, checked by brute force
    Tables {
        #[command(flatten)]
        field: FieldArgs,
        /// Table number: 1 zero-coordinate points, 2 other points, 3 lines,
        /// 4 curve G for odd d, 5 curve G for even d
        #[arg(long, value_parser = clap::value_parser!(u8).range(1..=5))]
        table: u8,
    },
    /// Run the full verification battery over a list of fields
    Verify {
        /// Characteristics, comma separated
        #[arg(long, value_delimiter = ',', default_values_t = [5u32, 7, 11, 13])]
        p_list: Vec<u32>,
        /// Extension degrees, one per characteristic or a single value for all
        #[arg(long, value_delimiter = ',', default_values_t = [1u32])]
        h_list: Vec<u32>,
        /// Extension depth of the singularity probe (0 skips)
        #[arg(long, default_value_t = 3)]
        probe_depth: u32,
        /// Configurations sampled per field above q = 13
        #[arg(long, default_value_t = 200)]
        sample_size: usize,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        /// JSON destination for the machine-readable report
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn field(args: &FieldArgs) -> Result<Arc<FieldSpec>, ReportError> {
    FieldSpec::new(args.p, args.h)
        .map(Arc::new)
        .map_err(|e| ReportError::Analysis(e.into()))
}

fn parse_sweep(words: &[String], seed: u64) -> Result<Sweep, ReportError> {
    match words {
        [m] if m == "all" => Ok(Sweep::All),
        [m] if m == "signatures" => Ok(Sweep::Signatures),
        [m, n] if m == "sample" => n
            .parse()
            .map(|count| Sweep::Sample { count, seed })
            .map_err(|_| {
                ReportError::Usage(format!(
                    "sample size must be a non-negative integer (got {n:?})"
                ))
            }),
        _ => Err(ReportError::Usage(format!(
            "--sweep expects `all`, `signatures` or `sample N` (got {:?})",
            words.join(" ")
        ))),
    }
}

fn output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, ReportError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn status(ok: bool) -> u8 {
    if ok {
        0
    } else {
        EXIT_FAILED
    }
}

fn run(cli: Cli) -> Result<u8, ReportError> {
    let limits = EnumLimits::from_env();
    match cli.command {
        Command::Analyze {
            field: fa,
            e0,
            e1,
            e2,
            format,
            probe_depth,
        } => {
            let spec = field(&fa)?;
            let config = CurveConfig::from_indices(spec.clone(), [e0, e1, e2])
                .map_err(AnalysisError::from)?;
            let analyzer = Analyzer::new(spec, limits);
            let r = decompose(&analyzer, &config, AnalysisOptions { probe_depth })?;
            let mut out = io::stdout().lock();
            match format {
                Format::Text => write!(out, "{}", render_text(&r))?,
                Format::Json => writeln!(out, "{}", canonical_json(&report_json(&r)))?,
            }
            Ok(status(is_verified(&r)))
        }
        Command::Census {
            field: fa,
            sweep,
            seed,
            out,
            fail_fast,
            allow_large,
            probe_depth,
        } => {
            let spec = field(&fa)?;
            let sweep = parse_sweep(&sweep, seed)?;
            let configs = sweep_configs(&spec, sweep, allow_large)?;
            let analyzer = Analyzer::new(spec, limits);
            let options = AnalysisOptions { probe_depth };
            let rows: Vec<CensusRow> = if fail_fast {
                let mut rows = Vec::new();
                for c in &configs {
                    let row = CensusRow::from_report(&decompose(&analyzer, c, options)?);
                    let stop = !row.verified;
                    rows.push(row);
                    if stop {
                        break;
                    }
                }
                rows
            } else {
                analyze_all(&analyzer, &configs, options)?
                    .iter()
                    .map(CensusRow::from_report)
                    .collect()
            };
            write_csv(&rows, output(&out)?)?;
            let summary = CensusSummary::from_rows(&rows);
            eprintln!("{}", summary.line());
            Ok(status(summary.failed == 0))
        }
        Command::Tables { field: fa, table } => {
            let analyzer = Analyzer::new(field(&fa)?, limits);
            let t = report::render_table(&analyzer, table)?;
            print!("{}", t.text);
            for m in &t.mismatches {
                eprintln!("mismatch: {m}");
            }
            Ok(status(t.mismatches.is_empty()))
        }
        Command::Verify {
            p_list,
            h_list,
            probe_depth,
            sample_size,
            seed,
            out,
        } => {
            let fields: Vec<(u32, u32)> = match h_list.as_slice() {
                [h] => p_list.iter().map(|&p| (p, *h)).collect(),
                hs if hs.len() == p_list.len() => {
                    p_list.iter().copied().zip(hs.iter().copied()).collect()
                }
                _ => {
                    return Err(ReportError::Usage(
                        "--h-list needs one value or one value per entry of --p-list".into(),
                    ))
                }
            };
            let options = BatteryOptions {
                fields,
                probe_depth,
                sample_size,
                seed,
                limits,
            };
            let report = verify::run_battery(&options)?;
            for f in &report.fields {
                println!(
                    "field q={} (p={}, h={}, modulus {:?}, lambda {}): {} configurations{}",
                    f.q,
                    f.p,
                    f.h,
                    f.modulus,
                    f.lambda,
                    f.configs,
                    if f.exhaustive {
                        ", exhaustive"
                    } else {
                        ", sampled"
                    }
                );
            }
            for c in &report.criteria {
                println!("{c}");
                for n in &c.notes {
                    println!("    note: {n}");
                }
                for f in &c.failures {
                    println!("    failure: {f}");
                }
            }
            if let Some(path) = &out {
                let mut w = output(&Some(path.clone()))?;
                writeln!(w, "{}", verify::battery_json(&report))?;
                w.flush()?;
            }
            Ok(status(report.passed()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(ReportError::Io(e)) if e.kind() == io::ErrorKind::BrokenPipe => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
