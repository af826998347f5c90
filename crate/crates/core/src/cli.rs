//! Command-line front end.
//!
//! Exit codes: 0 pass, 1 identity or series failure, 2 usage error
//! (unknown name, bad flag, malformed config), 3 precondition violated or
//! hypothesis not met.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::campaign::{capped_degree, run_campaign, CampaignConfig, DEFAULT_CONFIG};
use crate::error::Error;
use crate::identities::{check_identity, IdentityId};
use crate::params::Params;
use crate::polyfun::Tables;
use crate::rational::{format_rational, parse_rational};
use crate::series::{check_omega_reciprocity, hwz_g_series, omega_required_degree, CheckStatus, OmegaParams};
use crate::sums::SumName;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_PRECONDITION: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "hbsum", version, about = "Exact Dedekind and Hardy-Berndt type sums and their reciprocity identities")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a named sum exactly.
    Eval {
        #[arg(long)]
        sum: String,
        #[command(flatten)]
        flags: ParamFlags,
    },
    /// Check one identity at one parameter point.
    Check {
        #[arg(long)]
        identity: String,
        #[command(flatten)]
        flags: ParamFlags,
    },
    /// Run a sweep campaign from a JSON config (the bundled one by default).
    Sweep {
        #[arg(long)]
        config: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Write the report here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Print the bundled config and exit.
        #[arg(long)]
        print_default_config: bool,
    },
    /// Build a generating-function series and check it degree by degree.
    Series {
        #[arg(long, value_enum, default_value_t = Theorem::Omega)]
        theorem: Theorem,
        #[arg(long, default_value_t = 6)]
        degree: u32,
        /// Write the series in `i j num/den` form to this file.
        #[arg(long)]
        export: Option<PathBuf>,
        #[command(flatten)]
        flags: ParamFlags,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Theorem {
    Omega,
    #[value(name = "hwz-g")]
    HwzG,
}

/// Numeric parameters; each accepts `num/den` or a bare integer.
#[derive(Debug, Args)]
struct ParamFlags {
    #[arg(long, allow_hyphen_values = true)]
    p: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    q: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    n: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    m: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    r: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    c: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    x: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    y: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    z: Option<String>,
    #[arg(long = "X", allow_hyphen_values = true)]
    big_x: Option<String>,
    #[arg(long = "Y", allow_hyphen_values = true)]
    big_y: Option<String>,
}

impl ParamFlags {
    fn to_params(&self) -> Result<Params, Error> {
        let mut out = Params::new();
        let fields = [
            ("p", &self.p),
            ("q", &self.q),
            ("n", &self.n),
            ("m", &self.m),
            ("r", &self.r),
            ("a", &self.a),
            ("b", &self.b),
            ("c", &self.c),
            ("d", &self.d),
            ("x", &self.x),
            ("y", &self.y),
            ("z", &self.z),
            ("X", &self.big_x),
            ("Y", &self.big_y),
        ];
        for (name, v) in fields {
            if let Some(s) = v {
                out.set(name, parse_rational(s)?);
            }
        }
        Ok(out)
    }
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::UnknownIdentity(_)
        | Error::UnknownSum(_)
        | Error::MissingParam { .. }
        | Error::NotInteger { .. }
        | Error::Parse(_) => EXIT_USAGE,
        Error::DegreeOutOfRange { .. } | Error::Domain(_) | Error::Precondition(_) | Error::DegreeMismatch { .. } => {
            EXIT_PRECONDITION
        }
    }
}

fn tables_for(degree: usize) -> Result<Tables, Error> {
    Ok(Tables::new(capped_degree(degree)?))
}

/// Parses `args` (program name first), runs the command and returns the
/// process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let rendered = e.render().to_string();
            let _ = if e.use_stderr() {
                write!(err, "{rendered}")
            } else {
                write!(out, "{rendered}")
            };
            return code;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            exit_code(&e)
        }
    }
}

fn dispatch(cmd: Command, out: &mut dyn Write) -> Result<i32, Error> {
    let io = |e: std::io::Error| Error::Parse(format!("i/o: {e}"));
    match cmd {
        Command::Eval { sum, flags } => {
            let name: SumName = sum.parse()?;
            let params = flags.to_params()?;
            let t = tables_for(name.required_degree(&params))?;
            let v = name.evaluate(&t, &params)?;
            writeln!(out, "{}", format_rational(&v)).map_err(io)?;
            Ok(EXIT_PASS)
        }
        Command::Check { identity, flags } => {
            let id: IdentityId = identity.parse()?;
            let params = flags.to_params()?;
            let t = tables_for(id.required_degree(&params))?;
            let c = check_identity(&t, id, &params)?;
            let (verdict, code) = match &c.residual {
                None => ("not-applicable", EXIT_PRECONDITION),
                Some(r) if num_traits::Zero::is_zero(r) => ("pass", EXIT_PASS),
                Some(_) => ("fail", EXIT_FAIL),
            };
            let residual = c.residual.as_ref().map(format_rational).unwrap_or_else(|| "-".into());
            writeln!(
                out,
                "{id} [{}] applicable={} residual={residual} {verdict}",
                c.params, c.applicable
            )
            .map_err(io)?;
            Ok(code)
        }
        Command::Sweep {
            config,
            format,
            output,
            print_default_config,
        } => {
            if print_default_config {
                write!(out, "{DEFAULT_CONFIG}").map_err(io)?;
                return Ok(EXIT_PASS);
            }
            let cfg = match config {
                Some(path) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
                    CampaignConfig::from_json(&text)?
                }
                None => CampaignConfig::default(),
            };
            let report = run_campaign(&cfg)?;
            let body = match format {
                Format::Json => report.to_json() + "\n",
                Format::Text => report.to_text(),
            };
            match output {
                Some(path) => std::fs::write(&path, body).map_err(io)?,
                None => write!(out, "{body}").map_err(io)?,
            }
            Ok(if report.pass { EXIT_PASS } else { EXIT_FAIL })
        }
        Command::Series {
            theorem,
            degree,
            export,
            flags,
        } => {
            let params = flags.to_params()?;
            let owner = "series";
            let rat = |n: &str| params.rat_or_zero(n);
            let (a, b, c) = (params.int(owner, "a")?, params.int(owner, "b")?, params.int(owner, "c")?);
            match theorem {
                Theorem::Omega => {
                    let d = if params.contains("d") { params.int(owner, "d")? } else { 2 };
                    let op = OmegaParams::new(a, b, c, d, rat("x"), rat("y"), rat("z"));
                    op.validate()?;
                    let t = tables_for(omega_required_degree(degree))?;
                    let rep = check_omega_reciprocity(&t, &op, degree)?;
                    let rhs = rep.verdict.rhs().map(|r| format_rational(&r)).unwrap_or_else(|| "undetermined".into());
                    writeln!(out, "branch: {} rhs: {rhs}", rep.verdict.branch()).map_err(io)?;
                    if let Some(w) = &rep.verdict.witness {
                        writeln!(out, "witness: R={} offsets=({}, {}, {})", format_rational(&w.r), w.a0, w.b0, w.c0)
                            .map_err(io)?;
                    }
                    writeln!(out, "lhs constant: {}", format_rational(&rep.lhs_constant())).map_err(io)?;
                    let shown = rep.residual.as_ref().unwrap_or(&rep.lhs);
                    let label = if rep.residual.is_some() { "residual" } else { "lhs" };
                    for deg in 0..=degree {
                        let coeffs: Vec<String> = (0..=deg)
                            .map(|i| format_rational(&shown.coeff(i, deg - i)))
                            .collect();
                        writeln!(out, "{label} degree {deg}: {}", coeffs.join(" ")).map_err(io)?;
                    }
                    if let Some(path) = export {
                        std::fs::write(&path, shown.export_text()).map_err(io)?;
                    }
                    let status = match rep.status {
                        CheckStatus::Pass => "pass",
                        CheckStatus::Fail => "fail",
                        CheckStatus::Indeterminate => "indeterminate",
                    };
                    writeln!(out, "status: {status}").map_err(io)?;
                    Ok(if rep.status == CheckStatus::Pass { EXIT_PASS } else { EXIT_FAIL })
                }
                Theorem::HwzG => {
                    let t = tables_for(degree as usize + 2)?;
                    let g = hwz_g_series(&t, a, b, c, &rat("x"), &rat("y"), &rat("z"), degree)?;
                    let text = g.export_text();
                    match export {
                        Some(path) => std::fs::write(&path, &text).map_err(io)?,
                        None => write!(out, "{text}").map_err(io)?,
                    }
                    Ok(EXIT_PASS)
                }
            }
        }
    }
}
