use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use geodual_core::classify::{
    classification_tsv, classify, partial_search, partial_tsv, verify_collapse_identity, verify_uncollapsed,
    ClassifyError, UncollapsedVerdict, DEFAULT_GROUP_LIMIT,
};
use geodual_core::fp_group::{
    abelian_invariants, coset_enumeration, geodesic_presentation, quotient_coset_table, subgroup_presentation,
    triangle_presentation, FpGroupError,
};
use geodual_core::surface::{is_geodesic_self_dual, FlagSurface, SurfaceError};
use geodual_core::voltage::{materialize_lift, prop_assignment, verify_lift, VoltageError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}: {source}")]
    Surface { path: PathBuf, source: SurfaceError },
    #[error(transparent)]
    Group(#[from] FpGroupError),
    #[error(transparent)]
    Voltage(#[from] VoltageError),
    #[error(transparent)]
    Classify(#[from] ClassifyError),
    #[error("{0}")]
    Usage(String),
}

/// What a command prints and how it exits: 0 success, 1 negative or
/// inconclusive result. Errors exit with 2.
pub struct Outcome {
    pub exit_code: u8,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn new(exit_code: u8, stdout: String) -> Self {
        Outcome {
            exit_code,
            stdout,
            stderr: String::new(),
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "geodual", version, about = "Geodesic self-dual surfaces and the groups behind them")]
pub struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Classify geodesic self-dual surfaces of one degree as a TSV report.
    Classify(ClassifyArgs),
    /// Work with a surface file.
    #[command(subcommand)]
    Surface(SurfaceCommand),
    /// Queries on the groups T_d and H_d.
    #[command(subcommand)]
    Group(GroupCommand),
    /// Lift a surface along the corner voltage assignment for a prime.
    Lift(LiftArgs),
}

#[derive(Debug, Args)]
struct ClassifyArgs {
    #[arg(long)]
    degree: usize,
    /// Largest flag count for the bounded search used when degree ≥ 10.
    #[arg(long)]
    order_cap: Option<usize>,
    #[arg(short, long)]
    output: Option<PathBuf>,
    /// Also write every classified surface to this directory.
    #[arg(long)]
    surfaces_dir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum SurfaceCommand {
    /// Counts and topology of the surface.
    Info { file: PathBuf },
    /// Write the geodesic dual.
    Dual {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Whether the surface is isomorphic to its geodesic dual.
    Selfdual { file: PathBuf },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Family {
    #[value(name = "T", alias = "t")]
    T,
    #[value(name = "H", alias = "h")]
    H,
}

#[derive(Debug, Subcommand)]
enum GroupCommand {
    Order {
        family: Family,
        degree: usize,
        #[arg(long, default_value_t = DEFAULT_GROUP_LIMIT)]
        limit: usize,
    },
    /// Invariants of the group, or of the normal closure of the given words inside it.
    Abelian {
        family: Family,
        degree: usize,
        words: Vec<String>,
        #[arg(long, default_value_t = DEFAULT_GROUP_LIMIT)]
        limit: usize,
    },
    /// Without arguments, the checks behind the collapses at degrees 3, 4 and 7.
    /// With --d and --k, whether H_d differs from H_k.
    CollapseCheck {
        #[arg(long, requires = "k")]
        d: Option<usize>,
        #[arg(long, requires = "d")]
        k: Option<usize>,
        #[arg(long, default_value_t = DEFAULT_GROUP_LIMIT)]
        limit: usize,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LiftMode {
    Verify,
    Materialize,
}

#[derive(Debug, Args)]
struct LiftArgs {
    file: PathBuf,
    #[arg(long)]
    prime: u32,
    mode: LiftMode,
    /// Largest lifted flag count to materialize.
    #[arg(long, default_value_t = 1_000_000)]
    limit: usize,
    #[arg(short, long)]
    output: Option<PathBuf>,
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Classify(args) => cmd_classify(args),
        Command::Surface(cmd) => cmd_surface(cmd),
        Command::Group(cmd) => cmd_group(cmd),
        Command::Lift(args) => cmd_lift(args),
    }
}

fn read_surface(path: &Path) -> Result<FlagSurface, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    FlagSurface::parse(&text).map_err(|source| CliError::Surface {
        path: path.to_owned(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

/// Writes `text` to `output`, or returns it for stdout.
fn emit(output: Option<&Path>, text: String) -> Result<String, CliError> {
    match output {
        Some(path) => {
            write_file(path, &text)?;
            Ok(String::new())
        }
        None => Ok(text),
    }
}

fn cmd_classify(args: ClassifyArgs) -> Result<Outcome, CliError> {
    let d = args.degree;
    if d < 3 {
        return Err(CliError::Usage(format!("--degree must be at least 3, got {d}")));
    }
    if d >= 10 {
        let Some(cap) = args.order_cap else {
            return Ok(Outcome {
                exit_code: 1,
                stdout: String::new(),
                stderr: format!("H_{d} is infinite or exceeds the enumeration limit; use --order-cap for a bounded search\n"),
            });
        };
        let found = partial_search(d, cap)?;
        let mut text = format!("# NON-EXHAUSTIVE: bounded search over surfaces with at most {cap} flags\n");
        text.push_str(&partial_tsv(d, &found));
        if let Some(dir) = &args.surfaces_dir {
            write_surfaces(dir, d, found.iter().map(|e| &e.surface))?;
        }
        let code = if found.is_empty() { 1 } else { 0 };
        return Ok(Outcome::new(code, emit(args.output.as_deref(), text)?));
    }
    let mut outcome_stderr = String::new();
    if args.order_cap.is_some() {
        outcome_stderr.push_str("note: --order-cap is ignored below degree 10, where the classification is complete\n");
    }
    let entries = classify(d)?;
    if let Some(dir) = &args.surfaces_dir {
        write_surfaces(dir, d, entries.iter().map(|e| &e.surface))?;
    }
    let code = if entries.is_empty() { 1 } else { 0 };
    let mut outcome = Outcome::new(code, emit(args.output.as_deref(), classification_tsv(d, &entries))?);
    outcome.stderr = outcome_stderr;
    Ok(outcome)
}

fn write_surfaces<'a>(dir: &Path, d: usize, surfaces: impl Iterator<Item = &'a FlagSurface>) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|source| CliError::Io {
        path: dir.to_owned(),
        source,
    })?;
    for s in surfaces {
        write_file(&dir.join(format!("d{d}_{}.srf", s.flag_count())), &s.to_text())?;
    }
    Ok(())
}

fn cmd_surface(cmd: SurfaceCommand) -> Result<Outcome, CliError> {
    match cmd {
        SurfaceCommand::Info { file } => {
            let st = read_surface(&file)?.stats();
            let degree = st.uniform_degree.map_or("mixed".to_string(), |d| d.to_string());
            let text = format!(
                "V={} E={} F={} chi={} orientable={} degree={}\n",
                st.vertex_count,
                st.edge_count,
                st.face_count,
                st.euler_characteristic,
                if st.orientable { "yes" } else { "no" },
                degree
            );
            Ok(Outcome::new(0, text))
        }
        SurfaceCommand::Dual { file, output } => {
            let dual = read_surface(&file)?.geodesic_dual();
            Ok(Outcome::new(0, emit(output.as_deref(), dual.to_text())?))
        }
        SurfaceCommand::Selfdual { file } => {
            let s = read_surface(&file)?;
            Ok(match is_geodesic_self_dual(&s) {
                Some(iso) => Outcome::new(0, format!("yes\tanchor {}\n", iso.apply(1))),
                None => Outcome::new(1, "no\n".into()),
            })
        }
    }
}

fn presentation(family: Family, degree: usize) -> Result<geodual_core::GroupPresentation, CliError> {
    if degree == 0 {
        return Err(CliError::Usage("degree must be at least 1".into()));
    }
    Ok(match family {
        Family::T => triangle_presentation(degree),
        Family::H => geodesic_presentation(degree),
    })
}

fn cmd_group(cmd: GroupCommand) -> Result<Outcome, CliError> {
    match cmd {
        GroupCommand::Order { family, degree, limit } => {
            let p = presentation(family, degree)?;
            Ok(match coset_enumeration(&p, &[], limit) {
                Ok(t) => Outcome::new(0, format!("{}\n", t.coset_count())),
                Err(FpGroupError::LimitExceeded { .. }) => Outcome::new(1, "infinite-or-exceeds-limit\n".into()),
                Err(e) => return Err(e.into()),
            })
        }
        GroupCommand::Abelian {
            family,
            degree,
            words,
            limit,
        } => {
            let p = presentation(family, degree)?;
            if words.is_empty() {
                return Ok(Outcome::new(0, format!("{}\n", abelian_invariants(&p))));
            }
            let ws = words.iter().map(|w| p.parse_word(w)).collect::<Result<Vec<_>, _>>()?;
            Ok(match quotient_coset_table(&p, &ws, limit) {
                Ok(t) => {
                    let inv = abelian_invariants(&subgroup_presentation(&p, &t));
                    Outcome::new(0, format!("index {}\n{inv}\n", t.coset_count()))
                }
                Err(FpGroupError::LimitExceeded { .. }) => Outcome::new(1, "infinite-or-exceeds-limit\n".into()),
                Err(e) => return Err(e.into()),
            })
        }
        GroupCommand::CollapseCheck { d, k, limit } => match (d, k) {
            (Some(d), Some(k)) => {
                let v = verify_uncollapsed(d, k, limit).map_err(|e| match e {
                    ClassifyError::InvalidParameter(m) => CliError::Usage(m),
                    other => other.into(),
                })?;
                let code = if matches!(v, UncollapsedVerdict::Distinct(_)) { 0 } else { 1 };
                Ok(Outcome::new(code, format!("{v}\n")))
            }
            _ => {
                let r = verify_collapse_identity();
                Ok(Outcome::new(if r.all_passed() { 0 } else { 1 }, r.to_string()))
            }
        },
    }
}

fn cmd_lift(args: LiftArgs) -> Result<Outcome, CliError> {
    let s = read_surface(&args.file)?;
    let va = prop_assignment(&s, args.prime)?;
    match args.mode {
        LiftMode::Verify => {
            let report = verify_lift(&va)?;
            let code = if report.all_match() { 0 } else { 1 };
            Ok(Outcome::new(code, report.to_string()))
        }
        LiftMode::Materialize => match materialize_lift(&va, args.limit) {
            Ok(lift) => {
                let mut text = emit(args.output.as_deref(), lift.to_text())?;
                if args.output.is_some() {
                    let st = lift.stats();
                    writeln!(text, "flags={} degree={}", st.flag_count, st.uniform_degree.map_or("mixed".to_string(), |d| d.to_string()))
                        .expect("writing to a string");
                }
                Ok(Outcome::new(0, text))
            }
            Err(VoltageError::LimitExceeded { limit }) => {
                Ok(Outcome::new(1, format!("lift orbit exceeds {limit} flags\n")))
            }
            Err(e) => Err(e.into()),
        },
    }
}
