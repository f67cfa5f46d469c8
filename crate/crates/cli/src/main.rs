//! `agc`: builds AG codes on `y^2 = x^p - x`, computes automorphism groups and
//! reproduces the worked examples.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;

use agaut::audit::Caps;
use clap::{Args, Parser, Subcommand, ValueEnum};

use config::{caps_from_env, BaseSpec, EvalSpec, Format, RunConfig, CAPS_ENV};

#[derive(Parser)]
#[command(
    name = "agc",
    version,
    about = "Exact AG codes and automorphism groups for y^2 = x^p - x"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct CapOpts {
    /// Largest group enumerated by closure.
    #[arg(long)]
    cap_closure: Option<usize>,
    /// Largest number of projective messages searched for the minimum distance.
    #[arg(long)]
    cap_min_distance: Option<u64>,
    /// Longest code whose permutation automorphism group is searched exhaustively.
    #[arg(long)]
    cap_paut_n: Option<usize>,
}

impl CapOpts {
    fn resolve(&self) -> agaut::Result<Caps> {
        let mut caps = caps_from_env(std::env::var(CAPS_ENV).ok().as_deref())?;
        if let Some(v) = self.cap_closure {
            caps.closure = v;
        }
        if let Some(v) = self.cap_min_distance {
            caps.min_distance = v;
        }
        if let Some(v) = self.cap_paut_n {
            caps.paut_n = v;
        }
        Ok(caps)
    }
}

#[derive(Args, Clone)]
struct CurveOpts {
    #[arg(long, default_value_t = 7)]
    p: u32,
    /// Degree of the field of definition over GF(p).
    #[arg(long, default_value_t = 1)]
    ext: usize,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(flatten)]
    caps: CapOpts,
}

impl CurveOpts {
    fn config(&self) -> agaut::Result<RunConfig> {
        Ok(RunConfig::new(
            self.p,
            self.ext,
            self.format,
            self.caps.resolve()?,
        ))
    }
}

#[derive(Args, Clone)]
struct CodeOpts {
    /// Base point of D: `inf` or `x0=<element>`.
    #[arg(long, alias = "point")]
    base: Option<BaseSpec>,
    /// Multiplicity of the base point in D.
    #[arg(long)]
    m: Option<u32>,
    /// Evaluation set.
    #[arg(long = "E", value_enum)]
    eval: Option<EvalSpec>,
    /// Explicit evaluation points as `x,y;x,y;...`.
    #[arg(long)]
    points: Option<String>,
    /// Parameter of the generator gamma2.
    #[arg(long)]
    a: Option<String>,
}

impl CodeOpts {
    fn apply(&self, cfg: &mut RunConfig) {
        cfg.base = self.base.clone();
        cfg.m = self.m;
        cfg.eval = self.eval;
        cfg.points = self.points.clone();
        cfg.a = self.a.clone();
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Example {
    #[value(name = "1")]
    One,
    #[value(name = "2")]
    Two,
    #[value(name = "remark2")]
    Remark2,
}

#[derive(Subcommand)]
enum Command {
    /// List the rational points.
    Points {
        #[command(flatten)]
        curve: CurveOpts,
    },
    /// Order and generators of the automorphism group.
    Aut {
        #[command(flatten)]
        curve: CurveOpts,
        #[arg(long)]
        a: Option<String>,
        /// Print every element.
        #[arg(long)]
        list: bool,
    },
    /// Orbits of the automorphism group on the rational points.
    Orbits {
        #[command(flatten)]
        curve: CurveOpts,
        /// `inf`, `x0=<element>` or `x,y`.
        #[arg(long)]
        point: Option<String>,
    },
    /// Stabilizer of a rational point.
    Stab {
        #[command(flatten)]
        curve: CurveOpts,
        /// `inf`, `x0=<element>` or `x,y`.
        #[arg(long)]
        point: String,
        #[arg(long)]
        list: bool,
    },
    /// Riemann-Roch basis of L(m P).
    Rrbasis {
        #[command(flatten)]
        curve: CurveOpts,
        #[arg(long, alias = "point")]
        base: Option<BaseSpec>,
        #[arg(long)]
        m: u32,
    },
    /// Build C(D, E) and report its parameters and generator matrix.
    Code {
        #[command(flatten)]
        curve: CurveOpts,
        #[command(flatten)]
        code: CodeOpts,
        /// Compute the minimum distance by enumeration.
        #[arg(long)]
        exact_d: bool,
        /// Write the generator matrix to this file.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Format of the matrix file.
        #[arg(long, value_enum, default_value_t = Format::Text)]
        matrix_format: Format,
    },
    /// Permutation automorphism group of a short code, by exhaustive search.
    Paut {
        #[command(flatten)]
        curve: CurveOpts,
        #[command(flatten)]
        code: CodeOpts,
        /// Read the code from a generator-matrix file instead.
        #[arg(long)]
        matrix: Option<PathBuf>,
        #[arg(long)]
        list: bool,
    },
    /// Coordinate permutations induced by the stabilizer of D and E.
    Rho {
        #[command(flatten)]
        curve: CurveOpts,
        #[command(flatten)]
        code: CodeOpts,
        #[arg(long)]
        list: bool,
    },
    /// Reproduce a worked example and check every published number.
    Verify {
        #[arg(long, value_enum)]
        example: Example,
        #[arg(long)]
        m: Option<u32>,
        /// Characteristic for `remark2`.
        #[arg(long)]
        p: Option<u32>,
        #[arg(long)]
        exact_d: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
        #[command(flatten)]
        caps: CapOpts,
    },
    /// Compare [n, k, d]_q with the Gilbert-Varshamov guarantee.
    Gv {
        n: u64,
        k: u64,
        d: u64,
        q: u64,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

fn run(cli: Cli) -> agaut::Result<(commands::Outcome, Format)> {
    let with = |curve: &CurveOpts, code: Option<&CodeOpts>| -> agaut::Result<RunConfig> {
        let mut cfg = curve.config()?;
        if let Some(code) = code {
            code.apply(&mut cfg);
        }
        cfg.validate()?;
        Ok(cfg)
    };
    Ok(match cli.command {
        Command::Points { curve } => (commands::points(&with(&curve, None)?)?, curve.format),
        Command::Aut { curve, a, list } => {
            let mut cfg = with(&curve, None)?;
            cfg.a = a;
            (commands::aut(&cfg, list)?, curve.format)
        }
        Command::Orbits { curve, point } => (
            commands::orbits(&with(&curve, None)?, point.as_deref())?,
            curve.format,
        ),
        Command::Stab { curve, point, list } => (
            commands::stab(&with(&curve, None)?, &point, list)?,
            curve.format,
        ),
        Command::Rrbasis { curve, base, m } => {
            let mut cfg = with(&curve, None)?;
            cfg.base = base;
            cfg.m = Some(m);
            (commands::rrbasis(&cfg)?, curve.format)
        }
        Command::Code {
            curve,
            code,
            exact_d,
            output,
            matrix_format,
        } => (
            commands::code(
                &with(&curve, Some(&code))?,
                exact_d,
                output.as_deref(),
                matrix_format,
            )?,
            curve.format,
        ),
        Command::Paut {
            curve,
            code,
            matrix,
            list,
        } => (
            commands::paut(&with(&curve, Some(&code))?, matrix.as_deref(), list)?,
            curve.format,
        ),
        Command::Rho { curve, code, list } => (
            commands::rho(&with(&curve, Some(&code))?, list)?,
            curve.format,
        ),
        Command::Verify {
            example,
            m,
            p,
            exact_d,
            format,
            caps,
        } => (
            commands::verify(example, m, p, exact_d, &caps.resolve()?)?,
            format,
        ),
        Command::Gv { n, k, d, q, format } => (commands::gv(n, k, d, q)?, format),
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((outcome, format)) => {
            match format {
                Format::Text => print!("{}", outcome.text),
                Format::Json => println!(
                    "{}",
                    serde_json::to_string_pretty(&outcome.json).expect("reports serialize")
                ),
            }
            if outcome.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_cap_exceeded() { 3 } else { 2 })
        }
    }
}
