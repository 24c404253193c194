mod svg;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use witt_core::hermitian::{form_from_json, witt_to_form_json};
use witt_core::knot::{fixtures_from_json, genus_bound_from_rank, parse_knot_expr};
use witt_core::profile::{profiles_equal, signature_profile};
use witt_core::rank::{rank_lower_bound, unit_ball, Norm};
use witt_core::step::step_from_json;
use witt_core::Error;

/// Exact Witt-rank bounds for hermitian forms over Q(t).
#[derive(Parser)]
#[command(name = "witt", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Diagonalize a hermitian form and print its Witt normal form
    Diagonalize {
        /// Form file (JSON, kind matrix or diagonal)
        form: PathBuf,
    },
    /// Print the exact signature step function of a form
    Signature {
        form: PathBuf,
        /// Also compute N evenly spaced plot samples (plus breakpoint flanks)
        #[arg(long, value_name = "N")]
        plot: Option<usize>,
        /// Write an SVG step plot to this path
        #[arg(long, value_name = "PATH")]
        svg: Option<PathBuf>,
        /// Output format for stdout
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Print the rank lower-bound report of a form
    Rank {
        form: PathBuf,
    },
    /// Realize a step specification as a minimal diagonal form
    Realize {
        /// Step file (JSON)
        step: PathBuf,
    },
    /// Exact unit-ball polygon of a norm on the span of two forms
    #[command(name = "norm-ball")]
    NormBall {
        form1: PathBuf,
        form2: PathBuf,
        #[arg(long, value_enum)]
        norm: NormArg,
    },
    /// Knot 4-genus lower bounds from a Seifert fixture file
    Knot {
        /// Fixture file (JSON array of labeled Seifert matrices and
        /// sum/mirror combinators)
        fixtures: PathBuf,
        /// Evaluate one combinator expression, e.g. "sum(mirror(5_1),10_132)"
        #[arg(long)]
        expr: Option<String>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum NormArg {
    /// sup |sigma|
    S,
    /// stable rank
    RhoS,
}

impl From<NormArg> for Norm {
    fn from(n: NormArg) -> Norm {
        match n {
            NormArg::S => Norm::S,
            NormArg::RhoS => Norm::RhoS,
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            report_error(&Error::BadInput(e.to_string()));
            return ExitCode::from(1);
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            let code = if e.is_precondition() { 2 } else { 1 };
            report_error(&e);
            ExitCode::from(code)
        }
    }
}

fn report_error(e: &Error) {
    let location = match e {
        Error::Syntax { position, .. } => {
            serde_json::Value::String(format!("offset {position}"))
        }
        _ => serde_json::Value::Null,
    };
    let code = if e.is_precondition() { 2 } else { 1 };
    let payload = serde_json::json!({
        "error": { "code": code, "message": e.to_string(), "location": location }
    });
    eprintln!("{payload}");
}

fn load_json(path: &Path) -> Result<serde_json::Value, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::BadInput(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Error::BadInput(format!("invalid JSON in {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Diagonalize { form } => {
            let matrix = form_from_json(&load_json(&form)?)?;
            let w = matrix.normal_form()?;
            println!("{}", witt_to_form_json(&w));
        }
        Command::Signature {
            form,
            plot,
            svg,
            format,
        } => {
            let matrix = form_from_json(&load_json(&form)?)?;
            let w = matrix.normal_form()?;
            let profile = signature_profile(&w);
            let want_samples = plot.is_some() || matches!(format, Format::Csv);
            let samples = if want_samples {
                Some(profile.sample_plot(plot.unwrap_or(32))?)
            } else {
                None
            };
            if let Some(path) = svg {
                let image = svg::render(&profile);
                std::fs::write(&path, image).map_err(|e| {
                    Error::BadInput(format!("cannot write {}: {e}", path.display()))
                })?;
            }
            match format {
                Format::Json => {
                    println!("{}", profile.to_json(samples.as_deref()));
                }
                Format::Csv => {
                    println!("theta,sigma");
                    for (theta, v) in samples.unwrap() {
                        println!("{},{v}", witt_core::rational::format_rational(&theta));
                    }
                }
            }
        }
        Command::Rank { form } => {
            let matrix = form_from_json(&load_json(&form)?)?;
            let w = matrix.normal_form()?;
            println!("{}", rank_lower_bound(&w).to_json());
        }
        Command::Realize { step } => {
            let spec = step_from_json(&load_json(&step)?)?;
            let w = spec.realize()?;
            let realized_profile = signature_profile(&w);
            let matches = profiles_equal(&realized_profile, &spec.to_profile());
            let output = serde_json::json!({
                "form": witt_to_form_json(&w),
                "verification": {
                    "dimension": w.dimension(),
                    "r_of_step": spec.r_of_step()?,
                    "profile_match": matches,
                },
            });
            println!("{output}");
        }
        Command::NormBall { form1, form2, norm } => {
            let w1 = form_from_json(&load_json(&form1)?)?.normal_form()?;
            let w2 = form_from_json(&load_json(&form2)?)?.normal_form()?;
            let norm: Norm = norm.into();
            let ball = unit_ball(&w1, &w2, norm)?;
            println!("{}", ball.to_json(norm));
        }
        Command::Knot { fixtures, expr } => {
            let list = fixtures_from_json(&load_json(&fixtures)?)?;
            match expr {
                Some(text) => {
                    let matrix = parse_knot_expr(&text, &list)?;
                    let w = matrix.hermitianize()?.normal_form()?;
                    let r = rank_lower_bound(&w).r;
                    let output = serde_json::json!({
                        "expr": text,
                        "r": r,
                        "genus_lower_bound": genus_bound_from_rank(r),
                    });
                    println!("{output}");
                }
                None => {
                    let mut reports = Vec::new();
                    for (label, matrix) in &list {
                        let w = matrix.hermitianize()?.normal_form()?;
                        let r = rank_lower_bound(&w).r;
                        reports.push(serde_json::json!({
                            "label": label,
                            "dimension": matrix.dimension(),
                            "r": r,
                            "genus_lower_bound": genus_bound_from_rank(r),
                        }));
                    }
                    println!("{}", serde_json::Value::Array(reports));
                }
            }
        }
    }
    Ok(())
}
