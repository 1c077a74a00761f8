use clap::{Args, Parser, Subcommand};

use confalg_core::module::Rank1Action;
use confalg_core::rational::parse_rational;
use confalg_core::Poly;

use crate::doc::Rank1ActionDoc;
use crate::error::{CliError, EXIT_MATH, EXIT_OK};
use crate::input::{grid_points, load_target, parse_bindings, parse_grid};
use crate::render::{Format, Render};
use crate::report;

#[derive(Debug, Parser)]
#[command(name = "confalg", version, about = "Lie conformal algebras: axioms, annihilation algebras and rank-one modules")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Preset name (vir, w, wb, tsv, tsvc) or path to an algebra file.
    pub target: String,
    /// Parameter bindings such as `a=1 b=0` or `c=1/2`.
    #[arg(long = "param", num_args = 1.., action = clap::ArgAction::Append)]
    pub params: Vec<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check skew-symmetry and the Jacobi identity.
    Verify {
        #[command(flatten)]
        common: Common,
        /// Also check at every point of a grid such as `a=0..2` or `b=0,1/2`.
        #[arg(long = "param-grid", num_args = 1.., action = clap::ArgAction::Append)]
        grid: Vec<String>,
    },
    /// Annihilation algebra: closed-form comparison, filtration check, small bracket table.
    Ann {
        #[command(flatten)]
        common: Common,
        #[arg(long = "max-label", default_value = "6")]
        max_label: String,
    },
    /// Finite-dimensional quotient of the annihilation algebra by a filtration term.
    Truncate {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        level: u64,
    },
    /// Free rank-one modules and their irreducibility.
    Classify {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = report::DEFAULT_DEGREE)]
        degree: u32,
        #[arg(long, default_value_t = report::DEFAULT_DMAX)]
        dmax: u32,
    },
    /// Submodules of one rank-one module.
    Submodules {
        #[command(flatten)]
        common: Common,
        /// Action of one generator, such as `L=d+2*x+1`; unlisted generators act by 0.
        #[arg(long = "action", num_args = 1.., action = clap::ArgAction::Append, conflicts_with = "action_json")]
        actions: Vec<String>,
        /// A rank-one action in JSON, as written by `classify --format json`.
        #[arg(long = "action-json")]
        action_json: Option<String>,
        #[arg(long, default_value_t = report::DEFAULT_DMAX)]
        dmax: u32,
    },
    /// Everything above in one document.
    Report {
        #[command(flatten)]
        common: Common,
        #[arg(long, default_value_t = 3)]
        truncate: u64,
        #[arg(long, default_value_t = report::DEFAULT_DEGREE)]
        degree: u32,
        #[arg(long, default_value_t = report::DEFAULT_DMAX)]
        dmax: u32,
    },
}

/// What a command printed and the exit code it asks for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub warnings: Vec<String>,
    pub code: i32,
}

fn ok(stdout: String) -> Outcome {
    Outcome { stdout, warnings: Vec::new(), code: EXIT_OK }
}

fn action_from_flags(
    alg: &confalg_core::ConformalAlgebra,
    items: &[String],
) -> Result<Rank1Action, CliError> {
    let mut actions = vec![Poly::zero(); alg.rank()];
    for item in items {
        let (g, p) = item
            .split_once('=')
            .ok_or_else(|| CliError::Input(format!("expected GEN=POLY, found `{}`", item)))?;
        actions[alg.index_of(g.trim())?] = p.trim().parse()?;
    }
    Ok(Rank1Action::new(alg, actions)?)
}

pub fn run(cli: Cli) -> Result<Outcome, CliError> {
    match cli.command {
        Command::Verify { common, grid } => {
            let target = load_target(&common.target)?;
            let alg = &target.algebra;
            let bindings = parse_bindings(alg, &common.params)?;
            let mut warnings = Vec::new();
            let points = if grid.is_empty() {
                Vec::new()
            } else if alg.params().is_empty() {
                warnings.push(format!("{} has no parameters; --param-grid ignored", alg.name));
                Vec::new()
            } else {
                grid_points(&parse_grid(alg, &grid)?)
            };
            let doc = report::verify(alg, &bindings, &points)?;
            let code = if doc.passed { EXIT_OK } else { EXIT_MATH };
            Ok(Outcome { stdout: doc.render(common.format)?, warnings, code })
        }
        Command::Ann { common, max_label } => {
            let target = load_target(&common.target)?;
            let bindings = parse_bindings(&target.algebra, &common.params)?;
            let alg = target.algebra.specialize(&bindings)?;
            let doc = report::annihilation(&alg, &parse_rational(&max_label)?)?;
            let passed = doc.closed_form.as_ref().is_none_or(|c| c.passed)
                && doc.filtration.as_ref().is_none_or(|c| c.passed);
            Ok(Outcome { stdout: doc.render(common.format)?, warnings: Vec::new(), code: if passed { EXIT_OK } else { EXIT_MATH } })
        }
        Command::Truncate { common, level } => {
            let target = load_target(&common.target)?;
            let bindings = parse_bindings(&target.algebra, &common.params)?;
            let doc = report::quotient(&target.algebra, level, &bindings)?;
            Ok(ok(doc.render(common.format)?))
        }
        Command::Classify { common, degree, dmax } => {
            let target = load_target(&common.target)?;
            let bindings = parse_bindings(&target.algebra, &common.params)?;
            let doc = report::classify(&target.algebra, &bindings, degree, dmax)?;
            Ok(ok(doc.render(common.format)?))
        }
        Command::Submodules { common, actions, action_json, dmax } => {
            let target = load_target(&common.target)?;
            let alg = &target.algebra;
            let (act, bindings) = match action_json {
                Some(path) => {
                    let doc: Rank1ActionDoc = serde_json::from_str(&std::fs::read_to_string(path)?)?;
                    let mut items = common.params.clone();
                    if items.is_empty() {
                        items = doc.params.iter().map(|(k, v)| format!("{}={}", k, v)).collect();
                    }
                    let bindings = parse_bindings(alg, &items)?;
                    (doc.to_action(&alg.specialize(&bindings)?)?, bindings)
                }
                None => {
                    if actions.is_empty() {
                        return Err(CliError::Input("give the module with --action or --action-json".into()));
                    }
                    let bindings = parse_bindings(alg, &common.params)?;
                    (action_from_flags(&alg.specialize(&bindings)?, &actions)?, bindings)
                }
            };
            let doc = report::submodules(&act, &bindings, dmax)?;
            Ok(ok(doc.render(common.format)?))
        }
        Command::Report { common, truncate, degree, dmax } => {
            let target = load_target(&common.target)?;
            let bindings = parse_bindings(&target.algebra, &common.params)?;
            let doc = report::dossier(&target.algebra, &bindings, truncate, degree, dmax)?;
            Ok(ok(doc.render(common.format)?))
        }
    }
}
