use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use lgcurve::{
    cmd_hh, cmd_jacobi, cmd_koszul, cmd_mf, cmd_orbifold, init_threads, load_mf, load_model,
    parse_field, CliResult, ExtChoice, HhVariant, MfAction, Outcome,
};

const AFTER_HELP: &str = "\
Exit codes: 0 ok, 1 other error, 2 parse error, 3 non-isolated critical locus,
4 no stabilization, 5 matrix factorization check failed, 6 non-isolated sector.

Environment: LGCURVE_THREADS sets the number of worker threads.";

#[derive(Parser, Debug)]
#[command(name = "lgcurve", version, about = "Hochschild invariants of Landau-Ginzburg models", after_help = AFTER_HELP)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    /// Override the model's field: `rationals` or `prime:P`.
    #[arg(long, global = true)]
    field: Option<String>,
    /// Largest tensor window for ordinary homology.
    #[arg(long, global = true)]
    window: Option<usize>,
    /// Fail with exit code 3 when the critical locus is not isolated.
    #[arg(long, global = true)]
    require_isolated: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Machine,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Variant {
    Ordinary,
    Bm,
    CompactCohomology,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Method {
    Auto,
    Smith,
    Truncate,
}

#[derive(Subcommand, Debug)]
enum MfCommand {
    /// Check P0·P1 = P1·P0 = W and the graded degrees.
    Verify,
    /// Even and odd Ext dimensions between factorizations.
    Ext {
        /// Source factorization by name; all when omitted.
        #[arg(long)]
        from: Option<String>,
        /// Target factorization by name; all when omitted.
        #[arg(long)]
        to: Option<String>,
        /// `auto` uses Smith form for one variable and truncation otherwise.
        #[arg(long, value_enum, default_value_t = Method::Auto)]
        method: Method,
    },
    /// Degree audit of twisted objects and graded factorizations.
    GradedAudit,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Milnor number, graded Jacobi dimensions and the canonical module shift.
    Jacobi {
        /// Model file (TOML).
        model: PathBuf,
    },
    /// Hochschild homology or cohomology of the model.
    Hh {
        /// Model file (TOML).
        model: PathBuf,
        /// `ordinary` needs a finite model; `bm` and `compact-cohomology` a polynomial one.
        #[arg(long, value_enum)]
        variant: Variant,
    },
    /// Matrix factorizations over the model.
    Mf {
        /// Model file (TOML).
        model: PathBuf,
        /// Factorization file (TOML).
        factorizations: PathBuf,
        #[command(subcommand)]
        action: MfCommand,
    },
    /// Sector decomposition of the orbifold invariants.
    Orbifold {
        /// Model file (TOML) with a `[group]` table.
        model: PathBuf,
    },
    /// Koszul cohomology of dW and the E2 page.
    Koszul {
        /// Model file (TOML).
        model: PathBuf,
    },
}

fn run(cli: &Cli) -> CliResult<Outcome> {
    init_threads()?;
    let field = cli.field.as_deref().map(parse_field).transpose()?;
    match &cli.command {
        Command::Jacobi { model } => cmd_jacobi(&load_model(model, field)?, cli.require_isolated),
        Command::Hh { model, variant } => {
            let variant = match variant {
                Variant::Ordinary => HhVariant::Ordinary,
                Variant::Bm => HhVariant::BorelMoore,
                Variant::CompactCohomology => HhVariant::CompactCohomology,
            };
            cmd_hh(&load_model(model, field)?, variant, cli.window)
        }
        Command::Mf {
            model,
            factorizations,
            action,
        } => {
            let loaded = load_model(model, field)?;
            let mf = load_mf(factorizations, &loaded)?;
            let action = match action {
                MfCommand::Verify => MfAction::Verify,
                MfCommand::Ext { from, to, method } => MfAction::Ext {
                    from: from.clone(),
                    to: to.clone(),
                    method: match method {
                        Method::Auto => ExtChoice::Auto,
                        Method::Smith => ExtChoice::Smith,
                        Method::Truncate => ExtChoice::Truncate,
                    },
                },
                MfCommand::GradedAudit => MfAction::GradedAudit,
            };
            cmd_mf(&loaded, &mf, &action)
        }
        Command::Orbifold { model } => cmd_orbifold(&load_model(model, field)?),
        Command::Koszul { model } => cmd_koszul(&load_model(model, field)?, cli.require_isolated),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            let text = match cli.format {
                Format::Human => out.report.to_human(),
                Format::Machine => out.report.to_machine(),
            };
            let _ = std::io::stdout().write_all(text.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.code)
        }
    }
}
