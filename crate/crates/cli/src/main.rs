//! `gcnlab`: command-line access to the GC_n toolkit.
//!
//! Results are printed as JSON on stdout. Exit codes: 0 when the property
//! holds or the command succeeded, 1 when the property fails (not poised,
//! not GC, no maximal line, ...), 2 for input and usage errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use gcnlab_core::gc::{self, GcVerdict};
use gcnlab_core::gen::{self, GeneratorKind, GeneratorSpec};
use gcnlab_core::gm::{self, SearchKinds};
use gcnlab_core::svg::{plot_svg, Overlay};
use gcnlab_core::{interp, io, mdseq, Error, NodeSet};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "gcnlab", version, about = "Exact analysis of GC_n interpolation node sets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the node set is poised for its degree
    CheckPoised { file: PathBuf },
    /// Fundamental polynomial of one node
    Fundamental {
        file: PathBuf,
        #[arg(long)]
        node: usize,
    },
    /// Factor every fundamental polynomial into lines
    CertifyGc { file: PathBuf },
    /// Lines used by one node
    UsedLines {
        file: PathBuf,
        #[arg(long)]
        node: usize,
    },
    /// Maximal line sequence and m-distribution sequence of a node
    Mdseq {
        file: PathBuf,
        #[arg(long)]
        node: usize,
        /// Force this used line (a,b,c) into first position
        #[arg(long, value_name = "a,b,c", allow_hyphen_values = true)]
        fix_line: Option<String>,
        /// Also enumerate every reachable m-distribution sequence
        #[arg(long)]
        all: bool,
    },
    /// Lines through degree + 1 nodes
    MaximalLines { file: PathBuf },
    /// Check that a GC set has a maximal line
    VerifyGm { file: PathBuf },
    /// Count lines through a node by how many target nodes they meet
    IncidenceProfile {
        file: PathBuf,
        #[arg(long)]
        node: usize,
        #[arg(long, value_delimiter = ',')]
        target: Option<Vec<usize>>,
    },
    /// Essential dependence of the intersections of two random line products
    CayleyBacharach {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = gen::DEFAULT_COORDINATE_BOUND)]
        bound: u32,
    },
    /// Generate a certified GC set
    Generate {
        #[arg(long)]
        kind: GeneratorKind,
        #[arg(long)]
        degree: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = gen::DEFAULT_COORDINATE_BOUND)]
        bound: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate many GC sets and look for one without a maximal line
    Search {
        #[arg(long)]
        degree: usize,
        #[arg(long)]
        trials: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// `mixed` or a generator kind
        #[arg(long, default_value = "mixed")]
        kind: String,
    },
    /// Render the node set as SVG
    Plot {
        file: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum)]
        overlay: Vec<OverlayKind>,
        /// Node for the `used` and `roles` overlays
        #[arg(long)]
        node: Option<usize>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OverlayKind {
    /// Lines through degree + 1 nodes
    Maximal,
    /// Lines used by --node
    Used,
    /// Primary/secondary nodes of --node's m-line sequence
    Roles,
}

/// Command failure, split by exit code.
enum Failure {
    Property(Value),
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::NotPoised
            | Error::NotGC(_)
            | Error::TooManyCollinear { .. }
            | Error::MultiplicityPresent(_)
            | Error::NotProductOfCandidateLines { .. } => Failure::Property(json!({ "error": e.to_string() })),
            other => Failure::Input(other.to_string()),
        }
    }
}

type Outcome = Result<Value, Failure>;

fn load(path: &Path) -> Result<NodeSet, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    io::load_nodeset(&text).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

fn certificate(xs: &NodeSet) -> Result<gcnlab_core::GCCertificate, Failure> {
    match gc::certify_gc(xs)? {
        GcVerdict::Certified(c) => Ok(c),
        GcVerdict::NotGc(w) => Err(Failure::Property(json!({
            "gc": false,
            "node": w.node,
            "residual_degree": w.residual_degree,
            "fundamental": w.fundamental.to_string(),
        }))),
    }
}

fn holds(v: Value, ok: bool) -> Outcome {
    if ok {
        Ok(v)
    } else {
        Err(Failure::Property(v))
    }
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::CheckPoised { file } => {
            let xs = load(&file)?;
            let poised = interp::is_poised(&xs);
            let mut v = json!({
                "poised": poised,
                "nodes": xs.len(),
                "dimension": gcnlab_core::dim_pi(xs.degree()),
            });
            if !poised {
                if let Some(p) = interp::annihilator(&xs) {
                    v["annihilator"] = json!(p.to_string());
                }
            }
            holds(v, poised)
        }
        Command::Fundamental { file, node } => {
            let xs = load(&file)?;
            let f = interp::fundamental(&xs, node)?;
            Ok(json!({
                "node": node,
                "poly": f.poly.to_string(),
                "coefficients": f.poly.coeffs().iter().map(gcnlab_core::geom::fmt_scalar).collect::<Vec<_>>(),
            }))
        }
        Command::CertifyGc { file } => {
            let xs = load(&file)?;
            Ok(io::certificate_value(&certificate(&xs)?))
        }
        Command::UsedLines { file, node } => {
            let xs = load(&file)?;
            let cert = certificate(&xs)?;
            let lines = gc::used_lines_of(&cert, node)?;
            Ok(json!({ "node": node, "lines": lines.iter().map(io::line_value).collect::<Vec<_>>() }))
        }
        Command::Mdseq {
            file,
            node,
            fix_line,
            all,
        } => {
            let xs = load(&file)?;
            let cert = certificate(&xs)?;
            let seq = match fix_line {
                Some(s) => mdseq::fixed_first_mdseq(&cert, node, &io::parse_line_key(&s)?)?,
                None => mdseq::greedy_mdseq(&cert, node)?,
            };
            let mut v = io::sequence_value(&seq);
            if all {
                v["mdsequences"] = io::mdsequences_value(&mdseq::enumerate_mdseqs(&cert, node)?);
            }
            Ok(v)
        }
        Command::MaximalLines { file } => {
            let xs = load(&file)?;
            let ml = gm::maximal_lines(&xs)?;
            Ok(Value::Array(
                ml.iter()
                    .map(|(l, nodes)| json!({ "line": io::line_value(l), "nodes": nodes }))
                    .collect(),
            ))
        }
        Command::VerifyGm { file } => {
            let xs = load(&file)?;
            let cert = certificate(&xs)?;
            let r = gm::gm_report(&cert)?;
            holds(io::report_value(&r), r.satisfied)
        }
        Command::IncidenceProfile { file, node, target } => {
            let xs = load(&file)?;
            let p = gm::incidence_profile(&xs, node, target.as_deref())?;
            Ok(io::profile_value(&p))
        }
        Command::CayleyBacharach { m, n, seed, bound } => {
            if m == 0 || n == 0 {
                return Err(Failure::Input("--m and --n must be positive".into()));
            }
            let (a, b) = gm::random_cayley_bacharach_instance(m, n, seed, bound)?;
            let ok = gm::cayley_bacharach_check(&a, &b)?;
            let pts = gm::cross_intersections(&a, &b)?;
            holds(
                json!({
                    "lines_m": a.iter().map(io::line_value).collect::<Vec<_>>(),
                    "lines_n": b.iter().map(io::line_value).collect::<Vec<_>>(),
                    "points": pts.iter().map(|p| json!([gcnlab_core::geom::fmt_scalar(&p.x), gcnlab_core::geom::fmt_scalar(&p.y)])).collect::<Vec<_>>(),
                    "degree": (m + n) as i64 - 3,
                    "essentially_dependent": ok,
                }),
                ok,
            )
        }
        Command::Generate {
            kind,
            degree,
            seed,
            bound,
            out,
        } => {
            let spec = GeneratorSpec {
                coordinate_bound: bound,
                ..GeneratorSpec::new(kind, degree, seed)
            };
            let g = gen::generate(&spec)?;
            let v = io::nodeset_value(&g.nodeset);
            if let Some(path) = out {
                fs::write(&path, io::to_text(&v)).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
            }
            Ok(v)
        }
        Command::Search {
            degree,
            trials,
            seed,
            kind,
        } => {
            let kinds = if kind == "mixed" {
                SearchKinds::Mixed
            } else {
                SearchKinds::Only(kind.parse().map_err(Failure::Input)?)
            };
            let s = gm::search_counterexample(degree, trials, seed, kinds)?;
            let ok = s.failures.is_empty();
            holds(io::summary_value(&s), ok)
        }
        Command::Plot {
            file,
            out,
            overlay,
            node,
        } => {
            let xs = load(&file)?;
            let mut ov = Overlay::default();
            for kind in overlay {
                ov = match kind {
                    OverlayKind::Maximal => ov.with_maximal_lines(&xs)?,
                    OverlayKind::Used | OverlayKind::Roles => {
                        let k = node.ok_or_else(|| Failure::Input("this overlay needs --node".into()))?;
                        let cert = certificate(&xs)?;
                        match kind {
                            OverlayKind::Used => ov.with_used_lines(&cert, k)?,
                            _ => ov.with_roles(&cert, k)?,
                        }
                    }
                };
            }
            fs::write(&out, plot_svg(&xs, &ov)).map_err(|e| Failure::Input(format!("{}: {e}", out.display())))?;
            Ok(json!({ "written": out.display().to_string() }))
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli.command) {
        Ok(v) => {
            print!("{}", io::to_text(&v));
            ExitCode::SUCCESS
        }
        Err(Failure::Property(v)) => {
            print!("{}", io::to_text(&v));
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
