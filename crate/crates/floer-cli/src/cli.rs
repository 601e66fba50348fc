//! Argument parsing and the three subcommands.

use crate::dto::{domain_dumps, save, ComplexDump};
use crate::parallel::build_braid;
use crate::reproduce::reproduce;
use crate::{exit, CliError};
use clap::{Args, Parser, Subcommand, ValueEnum};
use floer_core::arc_engine::Mode;
use floer_core::braid_core::{parse_braid, print_braid};
use floer_core::invariants::{psi_sharp, BuildOptions, FloerComplex, PsiSharp};
use floer_core::ring::DEFAULT_WINDOW;
use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "floer", version, about = "Floer complexes, contact classes and vanishing certificates for braid closures")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    Capped,
    Halfarc,
}

impl From<ModeArg> for Mode {
    fn from(m: ModeArg) -> Mode {
        match m {
            ModeArg::Capped => Mode::Capped,
            ModeArg::Halfarc => Mode::HalfArc,
        }
    }
}

#[derive(Args, Debug, Clone)]
pub struct Bounds {
    /// Smallest kept hbar exponent.
    #[arg(long, default_value_t = DEFAULT_WINDOW.0, allow_negative_numbers = true)]
    pub hbar_min: i64,
    /// Largest kept hbar exponent.
    #[arg(long, default_value_t = DEFAULT_WINDOW.1, allow_negative_numbers = true)]
    pub hbar_max: i64,
    /// Largest total domain weight that is counted [default: 4 * strands].
    #[arg(long)]
    pub max_weight: Option<i64>,
    /// Write the JSON document here.
    #[arg(long)]
    pub json: Option<PathBuf>,
    /// Seed for the randomized suites.
    #[arg(long, default_value_t = 7)]
    pub seed: u64,
}

#[derive(Args, Debug, Clone)]
pub struct BraidArgs {
    /// Braid word, e.g. "s1^-3 s2 s1^2 s2" or "-1 -1 2".
    #[arg(long, allow_hyphen_values = true)]
    pub braid: String,
    #[arg(long)]
    pub strands: usize,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Build the complex of a braid and dump it.
    Complex {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long, value_enum, default_value = "capped")]
        mode: ModeArg,
        /// Also write every index-1 domain with its verdict.
        #[arg(long)]
        domains: Option<PathBuf>,
        /// Also write the planar cell complex.
        #[arg(long)]
        cells: Option<PathBuf>,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Search for a primitive of the contact class.
    PsiSharp {
        #[command(flatten)]
        braid: BraidArgs,
        #[arg(long, value_enum, default_value = "halfarc")]
        mode: ModeArg,
        #[command(flatten)]
        bounds: Bounds,
    },
    /// Rerun a fixed computation and print its check table.
    Reproduce {
        /// bp, model-2x2, index-calibration, lattice-rank, properties or stabilization.
        target: String,
        #[command(flatten)]
        bounds: Bounds,
    },
}

/// Validated settings shared by every command.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub command: &'static str,
    pub braid: Option<String>,
    pub strands: Option<usize>,
    pub mode: Option<Mode>,
    pub hbar_window: (i64, i64),
    pub max_weight: Option<i64>,
    pub output: Option<PathBuf>,
    pub seed: u64,
}

impl RunConfig {
    fn new(command: &'static str, braid: Option<&BraidArgs>, mode: Option<ModeArg>, b: &Bounds) -> Result<Self, CliError> {
        if b.hbar_min > b.hbar_max {
            return Err(CliError::Config(format!("empty hbar window [{}, {}]", b.hbar_min, b.hbar_max)));
        }
        if b.max_weight.is_some_and(|w| w <= 0) {
            return Err(CliError::Config("--max-weight must be positive".into()));
        }
        if braid.is_some_and(|a| a.strands == 0) {
            return Err(CliError::Config("--strands must be positive".into()));
        }
        Ok(RunConfig {
            command,
            braid: braid.map(|a| a.braid.clone()),
            strands: braid.map(|a| a.strands),
            mode: mode.map(Mode::from),
            hbar_window: (b.hbar_min, b.hbar_max),
            max_weight: b.max_weight,
            output: b.json.clone(),
            seed: b.seed,
        })
    }

    pub fn options(&self) -> BuildOptions {
        BuildOptions { hbar_window: self.hbar_window, max_weight: self.max_weight }
    }

    fn complex(&self) -> Result<(String, FloerComplex), CliError> {
        let b = parse_braid(self.braid.as_deref().unwrap_or(""), self.strands.unwrap_or(1))?;
        let fc = build_braid(self.mode.unwrap_or(Mode::HalfArc), &b, self.options())?;
        Ok((print_braid(&b), fc))
    }
}

fn summary(out: &mut dyn Write, word: &str, fc: &FloerComplex) -> std::io::Result<()> {
    let m = &fc.differential;
    writeln!(out, "braid [{}] on {} strands, {:?}", word, fc.strands(), fc.cx.layout)?;
    writeln!(
        out,
        "bounds: hbar window [{}, {}], max weight {}",
        fc.options.hbar_window.0, fc.options.hbar_window.1, fc.max_weight
    )?;
    writeln!(
        out,
        "generators {}  classes {}  lattice rank {}  entries {}  undetermined {}  determinate fraction {:.4}",
        fc.generators.len(),
        fc.class_count,
        fc.lattice.rank(),
        m.entries().count(),
        m.indeterminate_count(),
        m.determinate_fraction()
    )?;
    match fc.contact {
        Some(x) => writeln!(out, "contact generator {} {}", x, fc.label(x)),
        None => writeln!(out, "no contact generator"),
    }
}

fn cmd_complex(cfg: &RunConfig, domains: Option<&PathBuf>, cells: Option<&PathBuf>, out: &mut dyn Write) -> Result<i32, CliError> {
    let (word, fc) = cfg.complex()?;
    summary(out, &word, &fc).map_err(|e| CliError::io("stdout", e))?;
    if let Some(p) = &cfg.output {
        save(p, &ComplexDump::new(&fc, Some(word.clone()), None))?;
    }
    if let Some(p) = domains {
        save(p, &domain_dumps(&fc))?;
    }
    if let Some(p) = cells {
        save(p, &fc.cx)?;
    }
    Ok(if fc.differential.is_fully_determinate() { exit::OK } else { exit::INCONCLUSIVE })
}

fn cmd_psi_sharp(cfg: &RunConfig, out: &mut dyn Write) -> Result<i32, CliError> {
    let (word, fc) = cfg.complex()?;
    let io = |e| CliError::io("stdout", e);
    summary(out, &word, &fc).map_err(io)?;
    let status = psi_sharp(&fc)?;
    let mut certificate = None;
    let code = match &status {
        PsiSharp::Vanishing(c) => {
            writeln!(out, "Vanishing: d xi = h^{} x, verified {}", c.p, c.verify(&fc)).map_err(io)?;
            for &(g, k) in &c.terms {
                writeln!(out, "  h^{} {}  {}", k, g, fc.label(g)).map_err(io)?;
            }
            certificate = Some(c.clone());
            exit::OK
        }
        PsiSharp::NoPrimitiveAtBounds { tried } => {
            writeln!(out, "NoPrimitiveAtBounds: no primitive of h^p x for p in {:?} within the bounds", tried).map_err(io)?;
            exit::OK
        }
        PsiSharp::Inconclusive { reason } => {
            writeln!(out, "Inconclusive: {}", reason).map_err(io)?;
            exit::INCONCLUSIVE
        }
    };
    if let Some(p) = &cfg.output {
        save(p, &ComplexDump::new(&fc, Some(word), certificate))?;
    }
    Ok(code)
}

fn cmd_reproduce(cfg: &RunConfig, target: &str, out: &mut dyn Write) -> Result<i32, CliError> {
    let report = reproduce(target, cfg.options(), cfg.seed)?;
    write!(out, "{}", report.render()).map_err(|e| CliError::io("stdout", e))?;
    if let Some(p) = &cfg.output {
        save(p, &report)?;
    }
    Ok(report.exit_code())
}

fn dispatch(cli: Cli, out: &mut dyn Write) -> Result<i32, CliError> {
    match cli.command {
        Command::Complex { braid, mode, domains, cells, bounds } => {
            let cfg = RunConfig::new("complex", Some(&braid), Some(mode), &bounds)?;
            cmd_complex(&cfg, domains.as_ref(), cells.as_ref(), out)
        }
        Command::PsiSharp { braid, mode, bounds } => {
            let cfg = RunConfig::new("psi-sharp", Some(&braid), Some(mode), &bounds)?;
            cmd_psi_sharp(&cfg, out)
        }
        Command::Reproduce { target, bounds } => {
            let cfg = RunConfig::new("reproduce", None, None, &bounds)?;
            cmd_reproduce(&cfg, &target, out)
        }
    }
}

/// Parses `args` (program name first), runs the command and returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind::*;
            let text = e.render().to_string();
            return match e.kind() {
                DisplayHelp | DisplayVersion => {
                    let _ = write!(out, "{}", text);
                    exit::OK
                }
                _ => {
                    let _ = write!(err, "{}", text);
                    exit::ERROR
                }
            };
        }
    };
    match dispatch(cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {}", e);
            exit::ERROR
        }
    }
}
