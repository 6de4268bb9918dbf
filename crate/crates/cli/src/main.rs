//! `qburst`: burst limits of quantum cyclic and Reed-Solomon codes, error-trapping
//! statistics, code search and table verification.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use qburst::cycliccode::CyclicCode;
use qburst::fixtures::{verify, Fixtures, Verdict, VerifyOptions};
use qburst::galois::{Elem, Field, SelfDualBasis};
use qburst::notation::parse_generator;
use qburst::qccburst::{algorithm1, brute_force_limit, QuantumCyclicCode, ORACLE_LIMIT};
use qburst::qetd::{qetd_stats, DecodeMode};
use qburst::qrsburst::{algorithm2, RsCode};
use qburst::report::{code_label, emit, Format};
use qburst::search::{search, FieldChoice, SearchJob};

#[derive(Parser)]
#[command(name = "qburst", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum FieldArg {
    Gf2,
    Gf4,
}

impl From<FieldArg> for FieldChoice {
    fn from(f: FieldArg) -> Self {
        match f {
            FieldArg::Gf2 => FieldChoice::Gf2,
            FieldArg::Gf4 => FieldChoice::Gf4,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ModeArg {
    Joint,
    Split,
}

#[derive(Subcommand)]
enum Command {
    /// Burst limit L and nondegenerate limit ell0 of a quantum cyclic code.
    BurstLimit {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        field: FieldArg,
        /// Generator in `(c^e ... c^0)` notation.
        #[arg(long)]
        gen: String,
        /// Second generator of a GF(2) CSS pair.
        #[arg(long)]
        gen2: Option<String>,
        /// Cross-check against exhaustive burst enumeration.
        #[arg(long)]
        oracle: bool,
    },
    /// Burst limit of the binary image of a quantum Reed-Solomon code.
    RsLimit {
        #[arg(long)]
        m: u32,
        /// Quantum dimension K.
        #[arg(long)]
        kq: usize,
        /// Ordered self-dual basis as comma-separated field elements.
        #[arg(long)]
        basis: Option<String>,
    },
    /// Exhaustive error-trapping statistics over all bursts up to lmax.
    QetdSim {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum)]
        field: FieldArg,
        #[arg(long)]
        gen: String,
        #[arg(long)]
        gen2: Option<String>,
        #[arg(long)]
        lmax: Option<usize>,
        #[arg(long, value_enum)]
        mode: Option<ModeArg>,
    },
    /// Search dual-containing cyclic codes over a length range.
    Search {
        #[arg(long)]
        n_min: usize,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum)]
        field: FieldArg,
        #[arg(long, allow_negative_numbers = true)]
        delta_max: i64,
        /// Worker threads (0: all cores).
        #[arg(long, env = "QBURST_JOBS", default_value_t = 0)]
        jobs: usize,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "json")]
        format: FormatArg,
    },
    /// Recompute the bundled result tables and compare.
    VerifyTables {
        #[arg(long)]
        fixtures: PathBuf,
        /// Include rows marked `slow`.
        #[arg(long)]
        include_slow: bool,
        #[arg(long, env = "QBURST_JOBS", default_value_t = 0)]
        jobs: usize,
    },
}

type CliResult = Result<ExitCode, String>;

fn build_code(n: usize, field: FieldArg, gen: &str, gen2: Option<&str>) -> Result<QuantumCyclicCode, String> {
    let f = FieldChoice::from(field).field();
    let code = |g: &str| -> Result<CyclicCode, String> {
        let p = parse_generator(g, &f).map_err(|e| e.to_string())?;
        CyclicCode::from_generator(n, &p).map_err(|e| e.to_string())
    };
    let q = match (field, gen2) {
        (FieldArg::Gf2, Some(g2)) => QuantumCyclicCode::css(code(gen)?, code(g2)?),
        (FieldArg::Gf2, None) => {
            let c = code(gen)?;
            QuantumCyclicCode::css(c.clone(), c)
        }
        (FieldArg::Gf4, None) => QuantumCyclicCode::hermitian(code(gen)?),
        (FieldArg::Gf4, Some(_)) => return Err("--gen2 requires --field gf2".into()),
    };
    q.map_err(|e| e.to_string())
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string(v).expect("serializable")
}

fn run(cli: Cli) -> CliResult {
    match cli.command {
        Command::BurstLimit {
            n,
            field,
            gen,
            gen2,
            oracle,
        } => {
            let code = build_code(n, field, &gen, gen2.as_deref())?;
            let rep = algorithm1(&code);
            println!("{}", to_json(&rep));
            if oracle {
                let (l, ell0) = brute_force_limit(&code, ORACLE_LIMIT).map_err(|e| e.to_string())?;
                println!("{}", serde_json::json!({"oracle_L": l, "oracle_ell0": ell0}));
                if (l, ell0) != (rep.l, rep.ell0) {
                    return Ok(ExitCode::from(2));
                }
            }
        }
        Command::RsLimit { m, kq, basis } => {
            let rs = match basis {
                None => RsCode::new(m, kq),
                Some(text) => {
                    let f = Field::with_default_modulus(m).map_err(|e| e.to_string())?;
                    let els = text
                        .split(',')
                        .map(|t| {
                            t.trim()
                                .parse::<Elem>()
                                .map_err(|e| format!("basis element {t:?}: {e}"))
                        })
                        .collect::<Result<Vec<_>, _>>()?;
                    let b = SelfDualBasis::from_elements(&f, els).map_err(|e| e.to_string())?;
                    RsCode::with_basis(m, kq, b)
                }
            }
            .map_err(|e| e.to_string())?;
            println!("{}", to_json(&algorithm2(&rs)));
        }
        Command::QetdSim {
            n,
            field,
            gen,
            gen2,
            lmax,
            mode,
        } => {
            let code = build_code(n, field, &gen, gen2.as_deref())?;
            let mode = mode.map(|m| match m {
                ModeArg::Joint => DecodeMode::Joint,
                ModeArg::Split => DecodeMode::Split,
            });
            let s = qetd_stats(&code, lmax, mode).map_err(|e| e.to_string())?;
            println!("code\tN_D\tN_0\tN\tN_D/N\tN_0/N\tN_D/N_0\tgenerator");
            println!(
                "{}\t{}\t{}\t{}\t{:.1}%\t{:.1}%\t{:.2}\t{}",
                code_label(s.n, s.k),
                s.decoded,
                s.exact,
                s.total,
                100.0 * s.ratio_decoded(),
                100.0 * s.ratio_exact(),
                s.ratio_gain(),
                code.generator_strings().join(" ; ")
            );
        }
        Command::Search {
            n_min,
            n_max,
            field,
            delta_max,
            jobs,
            out,
            format,
        } => {
            let job = SearchJob {
                n_min,
                n_max,
                field: field.into(),
                delta_max,
                jobs,
            };
            let reports = search(&job).map_err(|e| e.to_string())?;
            let format = match format {
                FormatArg::Json => Format::Json,
                FormatArg::Csv => Format::Csv,
            };
            let bytes = emit(&reports, format).map_err(|e| e.to_string())?;
            std::fs::write(&out, bytes).map_err(|e| format!("{}: {e}", out.display()))?;
            eprintln!("{} reports written to {}", reports.len(), out.display());
        }
        Command::VerifyTables {
            fixtures,
            include_slow,
            jobs,
        } => {
            let fx = Fixtures::load(&fixtures).map_err(|e| e.to_string())?;
            let pool = rayon_pool(jobs)?;
            let checks = pool.install(|| verify(&fx, VerifyOptions { include_slow }));
            let mut failed = 0;
            for c in &checks {
                println!("{c}");
                if c.verdict == Verdict::Mismatch {
                    failed += 1;
                }
            }
            println!("{} rows checked, {failed} unexpected discrepancies", checks.len());
            if failed > 0 {
                return Ok(ExitCode::from(2));
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn rayon_pool(jobs: usize) -> Result<rayon::ThreadPool, String> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
