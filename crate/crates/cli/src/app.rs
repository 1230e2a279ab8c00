use std::ffi::OsString;
use std::io::Write;

use clap::{Parser, Subcommand, ValueEnum};
use conevol_core::verify::{run_identity_suite, VerificationConfig};
use conevol_core::{
    admits_spherical, existence_interval, volume, Evaluation, InvariantReport, Rational,
    TorusLinkParams,
};
use serde_json::Value;

use crate::angle::{parse_angle, AngleExpr};
use crate::error::{CliError, EXIT_INVALID, EXIT_OK};
use crate::render::{self, Focus, GridCell};
use crate::sweep::run_sweep;

/// Largest grid accepted by `table`.
pub const MAX_TABLE_CELLS: u64 = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "conevol",
    version,
    about = "Volumes and singular lengths of spherical torus-link cone-manifolds"
)]
pub struct Cli {
    /// Output format; csv applies to `sweep` and `table` only
    #[arg(long, global = true, value_enum, env = "CONEVOL_FORMAT")]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Parameters and the spherical existence window of t(P,Q)
    #[command(allow_negative_numbers = true)]
    Info { p: i64, q: i64 },

    /// Volume of T(P,Q)(alpha)
    #[command(allow_negative_numbers = true)]
    Volume {
        p: i64,
        q: i64,
        /// Cone angle, e.g. `2/3*pi` or radians `2.1`
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        /// Evaluate outside the asserted window (analytic continuation)
        #[arg(long)]
        force: bool,
    },

    /// Length of each singular component of T(P,Q)(alpha)
    #[command(allow_negative_numbers = true)]
    Length {
        p: i64,
        q: i64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long)]
        force: bool,
    },

    /// Volumes and lengths at equally spaced angles inside the window
    #[command(allow_negative_numbers = true)]
    Sweep {
        p: i64,
        q: i64,
        #[arg(long, default_value_t = 10)]
        samples: usize,
    },

    /// Grid of volumes over 1 <= p <= P_MAX, 1 <= q <= Q_MAX at one angle
    Table {
        #[arg(long)]
        p_max: u64,
        #[arg(long)]
        q_max: u64,
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
    },

    /// Seeded randomized check of every identity
    Verify {
        #[arg(long, default_value_t = 1000)]
        trials: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 50)]
        p_max: u64,
        #[arg(long, default_value_t = 50)]
        q_max: u64,
        #[arg(long, default_value_t = 1e-6)]
        fd_step: f64,
        #[arg(long, default_value_t = 1e-9)]
        rel_tol: f64,
    },
}

/// Parse `args` (including the program name), run, and return the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() {
                EXIT_INVALID
            } else {
                EXIT_OK
            };
            let text = e.render().to_string();
            let sink: &mut dyn Write = if e.use_stderr() { err } else { out };
            let _ = sink.write_all(text.as_bytes());
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(()) => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if matches!(e, CliError::Core(conevol_core::Error::NotAsserted { .. })) {
                let _ = writeln!(
                    err,
                    "hint: pass --force to evaluate the analytic continuation"
                );
            }
            e.exit_code()
        }
    }
}

fn execute(cli: &Cli, out: &mut dyn Write) -> Result<(), CliError> {
    let format = cli.format.unwrap_or(Format::Human);
    match &cli.command {
        Command::Info { p, q } => {
            no_csv(format, "info")?;
            let params = TorusLinkParams::new(*p, *q)?;
            let window = existence_interval::<Rational>(&params);
            match format {
                Format::Json => emit_json(out, &render::info_json(&params, &window)),
                _ => emit(out, &render::info_text(&params, &window)),
            }
        }
        Command::Volume { p, q, alpha, force } => {
            invariant_command(format, *p, *q, alpha, *force, Focus::Volume, out)
        }
        Command::Length { p, q, alpha, force } => {
            invariant_command(format, *p, *q, alpha, *force, Focus::Length, out)
        }
        Command::Sweep { p, q, samples } => {
            let params = TorusLinkParams::new(*p, *q)?;
            let rows = run_sweep(&params, *samples)?;
            match format {
                Format::Csv => emit(out, &render::sweep_csv(&rows)),
                Format::Json => {
                    let window = existence_interval::<Rational>(&params);
                    emit_json(out, &render::sweep_json(&params, &window, &rows))
                }
                Format::Human => emit(out, &render::sweep_text(&params, &rows)),
            }
        }
        Command::Table {
            p_max,
            q_max,
            alpha,
        } => {
            let angle = parse_angle(alpha)?;
            let cells = grid(*p_max, *q_max, &angle)?;
            match format {
                Format::Csv => emit(out, &render::table_csv(*q_max, &cells)),
                Format::Json => emit_json(out, &render::table_json(&angle, &cells)),
                Format::Human => emit(out, &render::table_text(&angle.parsed, *q_max, &cells)),
            }
        }
        Command::Verify {
            trials,
            seed,
            p_max,
            q_max,
            fd_step,
            rel_tol,
        } => {
            no_csv(format, "verify")?;
            let config = VerificationConfig {
                trials: *trials,
                p_max: *p_max,
                q_max: *q_max,
                seed: *seed,
                fd_step: *fd_step,
                rel_tol: *rel_tol,
            };
            let report = run_identity_suite(&config)?;
            match format {
                Format::Json => emit_json(out, &render::verify_json(&config, &report))?,
                _ => emit(out, &render::verify_text(&config, &report))?,
            }
            if report.passed() {
                Ok(())
            } else {
                Err(CliError::VerificationFailed(report.failures.len()))
            }
        }
    }
}

fn invariant_command(
    format: Format,
    p: i64,
    q: i64,
    alpha: &str,
    force: bool,
    focus: Focus,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    no_csv(
        format,
        if focus == Focus::Volume {
            "volume"
        } else {
            "length"
        },
    )?;
    let params = TorusLinkParams::new(p, q)?;
    let angle = parse_angle(alpha)?;
    let report = InvariantReport::evaluate(&params, &angle.parsed, force)?;
    if !report.asserted_spherical && !force {
        // Reuse the library's refusal so the message names the window.
        volume(&params, &angle.parsed, Evaluation::Strict)?;
    }
    match format {
        Format::Json => emit_json(out, &render::report_json(&report, &angle)),
        _ => emit(out, &render::report_text(&report, &angle, focus)),
    }
}

fn grid(p_max: u64, q_max: u64, angle: &AngleExpr) -> Result<Vec<GridCell>, CliError> {
    if p_max < 1 || q_max < 1 {
        return Err(CliError::Usage(
            "--p-max and --q-max must be at least 1".into(),
        ));
    }
    if p_max.saturating_mul(q_max) > MAX_TABLE_CELLS {
        return Err(CliError::Usage(format!(
            "table of {p_max} x {q_max} exceeds {MAX_TABLE_CELLS} cells"
        )));
    }
    let mut cells = Vec::with_capacity((p_max * q_max) as usize);
    for p in 1..=p_max {
        for q in 1..=q_max {
            let params = TorusLinkParams::new(p as i64, q as i64)?;
            let volume = if admits_spherical(&params, &angle.parsed)? {
                Some(volume(&params, &angle.parsed, Evaluation::Strict)?)
            } else {
                None
            };
            cells.push(GridCell { p, q, volume });
        }
    }
    Ok(cells)
}

fn no_csv(format: Format, command: &str) -> Result<(), CliError> {
    if format == Format::Csv {
        return Err(CliError::Usage(format!(
            "csv output is only available for sweep and table, not {command}"
        )));
    }
    Ok(())
}

fn emit(out: &mut dyn Write, text: &str) -> Result<(), CliError> {
    out.write_all(text.as_bytes())?;
    Ok(())
}

fn emit_json(out: &mut dyn Write, value: &Value) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(value).expect("json values always serialize");
    writeln!(out, "{text}")?;
    Ok(())
}
