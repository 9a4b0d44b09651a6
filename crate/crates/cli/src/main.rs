use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};

use semidec::decomp::{field_pipeline, ring_pipeline, DecompositionPlan};
use semidec::families::{build_family, FamilyKind, FamilySpec};
use semidec::monoid::{depth_report, greens, Monoid, MonoidSpec, DEFAULT_LIMIT};
use semidec::report::{export_depth, export_greens, export_plan, Format};
use semidec::semiring::{SemiringJson, SemiringTable};
use semidec::witness::{search_division, Certificate, DEFAULT_SEARCH_LIMIT};
use semidec::Error;

/// Triangular matrix monoids: enumeration, Green's structure and checked
/// wreath product decompositions.
#[derive(Parser)]
#[command(name = "semidec", version)]
struct Cli {
    /// Bound on the order of any enumerated monoid or closure. Defaults to
    /// $SEMIDEC_LIMIT, or 100000.
    #[arg(long, global = true)]
    limit: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Pipeline {
    Ring,
    Field,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate a family and write it as monoid JSON.
    Family {
        #[arg(long)]
        kind: String,
        #[arg(long)]
        n: usize,
        /// zp:<p>, bool, or table:<path>
        #[arg(long, default_value = "zp:2")]
        ring: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Green's relations and depth of a monoid read from JSON.
    Analyze {
        input: PathBuf,
        /// Comma-separated: greens, depth
        #[arg(long, default_value = "greens,depth")]
        report: String,
        #[arg(long, default_value = "text")]
        format: String,
        /// Also write the J-order as DOT.
        #[arg(long)]
        dot: Option<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a decomposition pipeline for T_n and print its group length.
    Decompose {
        #[arg(long, value_enum)]
        pipeline: Pipeline,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value = "zp:2")]
        ring: String,
        /// Write the end-to-end certificate here.
        #[arg(long)]
        cert: Option<PathBuf>,
        /// Write the plan, with every step certificate, as JSON.
        #[arg(long)]
        plan: Option<PathBuf>,
    },
    /// Re-verify a certificate; exit status 1 if it fails.
    Verify { cert: PathBuf },
    /// Exhaustive search for a division between two small monoids.
    Search {
        #[arg(long)]
        source: PathBuf,
        #[arg(long)]
        target: PathBuf,
        /// Largest target order to search.
        #[arg(long, default_value_t = DEFAULT_SEARCH_LIMIT)]
        max_target: usize,
        /// Write the certificate here when one is found.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Export a depth report or a plan as json, dot or text.
    Export {
        /// Monoid JSON to report on; omit when exporting a pipeline plan.
        input: Option<PathBuf>,
        #[arg(long, value_enum, requires = "n")]
        pipeline: Option<Pipeline>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long, default_value = "zp:2")]
        ring: String,
        /// greens or depth, for monoid input.
        #[arg(long, default_value = "depth")]
        report: String,
        #[arg(long, default_value = "text")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failures of this kind exit with status 2.
#[derive(Debug)]
struct Usage(String);

impl std::fmt::Display for Usage {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Usage {}

fn usage(msg: impl Into<String>) -> anyhow::Error {
    Usage(msg.into()).into()
}

fn parse_ring(spec: &str) -> anyhow::Result<Arc<SemiringTable>> {
    let ring = match spec.split_once(':') {
        Some(("zp", p)) => {
            let p = p.parse().map_err(|_| usage(format!("bad prime {p:?}")))?;
            SemiringTable::prime_field(p).map_err(|e| usage(e.to_string()))?
        }
        Some(("table", path)) => {
            let text = fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
            SemiringTable::from_json(&serde_json::from_str::<SemiringJson>(&text)?)?
        }
        None if spec == "bool" => SemiringTable::boolean(),
        _ => return Err(usage(format!("ring must be zp:<p>, bool or table:<path>, not {spec:?}"))),
    };
    Ok(Arc::new(ring))
}

fn parse_format(s: &str) -> anyhow::Result<Format> {
    s.parse().map_err(|e: Error| usage(e.to_string()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> anyhow::Result<()> {
    match out {
        Some(path) => fs::write(path, text).with_context(|| format!("writing {}", path.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_monoid(path: &Path) -> anyhow::Result<Arc<Monoid>> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let spec: MonoidSpec = serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))?;
    Ok(spec.build()?)
}

fn json(value: &MonoidSpec) -> anyhow::Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run_pipeline(pipeline: Pipeline, n: usize, ring: &Arc<SemiringTable>, limit: usize) -> anyhow::Result<DecompositionPlan> {
    Ok(match pipeline {
        Pipeline::Ring => ring_pipeline(n, ring, limit)?,
        Pipeline::Field => field_pipeline(n, ring, limit)?,
    })
}

fn default_limit() -> anyhow::Result<usize> {
    match std::env::var("SEMIDEC_LIMIT") {
        Ok(v) => v.parse().map_err(|_| usage(format!("SEMIDEC_LIMIT={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_LIMIT),
    }
}

fn run(cli: Cli) -> anyhow::Result<ExitCode> {
    let limit = match cli.limit {
        Some(l) => l,
        None => default_limit()?,
    };
    if limit == 0 {
        bail!(usage("limit must be positive"));
    }
    match cli.command {
        Command::Family { kind, n, ring, out } => {
            let kind: FamilyKind = kind.parse().map_err(|e: Error| usage(e.to_string()))?;
            let m = build_family(&FamilySpec::new(kind, n, &parse_ring(&ring)?), limit)?;
            write_or_print(out.as_deref(), &json(&m.spec())?)?;
            if out.is_some() {
                println!("{}: {} elements", m.label(), m.len());
            }
        }
        Command::Analyze { input, report, format, dot, out } => {
            let m = read_monoid(&input)?;
            let format = parse_format(&format)?;
            let mut text = String::new();
            for part in report.split(',').map(str::trim).filter(|p| !p.is_empty()) {
                match part {
                    "greens" => text += &export_greens(&m, &greens(&m), format)?,
                    "depth" => text += &export_depth(&m, &depth_report(&m), format)?,
                    other => bail!(usage(format!("unknown report {other:?}"))),
                }
            }
            write_or_print(out.as_deref(), &text)?;
            if let Some(path) = dot {
                fs::write(&path, export_depth(&m, &depth_report(&m), Format::Dot)?)?;
            }
        }
        Command::Decompose { pipeline, n, ring, cert, plan: plan_path } => {
            let plan = run_pipeline(pipeline, n, &parse_ring(&ring)?, limit)?;
            if let Some(path) = cert {
                let composite = plan.composite.as_ref().context("the pipeline produced no composite witness")?;
                fs::write(&path, composite.certificate().to_json()? + "\n")?;
            }
            if let Some(path) = plan_path {
                fs::write(&path, export_plan(&plan, Format::Json)?)?;
            }
            for w in &plan.witnesses {
                eprintln!("verified {}: closure {}", w.name, w.witness.closure_size()?);
            }
            match plan.group_length {
                Some(g) => println!("group_length={g}"),
                None => println!("group_length=undefined"),
            }
        }
        Command::Verify { cert } => {
            let text = fs::read_to_string(&cert).with_context(|| format!("reading {}", cert.display()))?;
            let certificate = Certificate::from_json(&text)?;
            match certificate.verify(limit) {
                Ok(w) => println!("verified: {} (closure {})", w.describe(), w.closure_size()?),
                Err(e) => {
                    eprintln!("verification failed: {e}");
                    return Ok(ExitCode::from(1));
                }
            }
        }
        Command::Search { source, target, max_target, out } => {
            let (s, t) = (read_monoid(&source)?, read_monoid(&target)?);
            match search_division(&s, &t, max_target)? {
                Some(w) => {
                    println!("found: {} (closure {})", w.describe(), w.closure_size()?);
                    if let Some(path) = out {
                        fs::write(&path, w.certificate().to_json()? + "\n")?;
                    }
                }
                None => println!("not found: {} does not divide {}", s.label(), t.label()),
            }
        }
        Command::Export { input, pipeline, n, ring, report, format, out } => {
            let format = parse_format(&format)?;
            let text = match (input, pipeline) {
                (Some(path), None) => {
                    let m = read_monoid(&path)?;
                    match report.as_str() {
                        "greens" => export_greens(&m, &greens(&m), format)?,
                        "depth" => export_depth(&m, &depth_report(&m), format)?,
                        other => bail!(usage(format!("unknown report {other:?}"))),
                    }
                }
                (None, Some(p)) => {
                    let plan = run_pipeline(p, n.expect("clap requires n"), &parse_ring(&ring)?, limit)?;
                    export_plan(&plan, format)?
                }
                _ => bail!(usage("export needs either a monoid file or --pipeline")),
            };
            write_or_print(out.as_deref(), &text)?;
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            if e.downcast_ref::<Usage>().is_some() {
                ExitCode::from(2)
            } else {
                ExitCode::from(1)
            }
        }
    }
}
