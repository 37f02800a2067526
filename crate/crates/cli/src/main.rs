//! `cuspline` — exact cuspidal-line computations from JSON instance files.
//!
//! Every command reads one instance file, runs one engine operation, and
//! prints canonical JSON on stdout. Errors are structured JSON too, with
//! the exit code mirrored in the body: 2 validation, 3 engine, 64 usage,
//! 65 parse.

mod emit;
mod error;
mod fuzz;
mod wire;

use clap::{Args, Parser, Subcommand};

use cuspline_core::gl::{m_star, FormalSum};
use cuspline_core::jantzen::{
    assoc_check, classify_steinberg, mu_filter_left, mu_filter_right, product_distribute,
    psi_glue, x_project, DecompositionInput, Side, SteinbergClass,
};
use cuspline_core::params::mu_star_standard;
use cuspline_core::transfer::{transfer_langlands, LinePairContext};
use cuspline_core::unitarity::{is_unitarizable_generic, x_project_generic};
use cuspline_core::Error as CoreError;

use error::{CliError, CliResult, EXIT_USAGE};
use wire::InstanceFile;

#[derive(Parser)]
#[command(name = "cuspline", version, disable_help_subcommand = true)]
#[command(about = "Exact cuspidal-line computations for classical p-adic groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct InputArgs {
    /// Instance file (JSON).
    #[arg(long)]
    input: String,
}

#[derive(Args)]
struct TransferArgs {
    /// Instance file (JSON).
    #[arg(long)]
    input: String,
    /// Source endpoint `rho:sigma`, overriding the payload.
    #[arg(long)]
    src: Option<String>,
    /// Target endpoint `rho:sigma`, overriding the payload.
    #[arg(long)]
    dst: Option<String>,
}

#[derive(Args)]
struct FuzzArgs {
    /// Suite: coassoc | assoc | roundtrip | preservation | transfer | mu-left.
    #[arg(long)]
    suite: String,
    #[arg(long, default_value_t = 1000)]
    trials: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Subcommand)]
enum Command {
    /// Project a family onto the two parts of a regular partition.
    Split(InputArgs),
    /// Merge per-part bundles into one family.
    Glue(InputArgs),
    /// Filtered Jacquet sum over the part carrying the GL label.
    MuLeft(InputArgs),
    /// Filtered Jacquet sum over the opposite part.
    MuRight(InputArgs),
    /// GL comultiplication of a standard module.
    MStar(InputArgs),
    /// Jacquet sum of a classical standard module.
    MuStar(InputArgs),
    /// Distribute a product over caller-supplied decompositions.
    Distribute(InputArgs),
    /// Check the three-part coherence identities.
    AssocCheck(InputArgs),
    /// Classify a one-line parameter against the Steinberg support.
    SteinbergClassify(InputArgs),
    /// Decide unitarizability of a generic label.
    UnitaryGeneric(InputArgs),
    /// Per-line component of a generic label.
    ProjectGeneric(InputArgs),
    /// Transport a one-line parameter onto another line with equal alpha.
    Transfer(TransferArgs),
    /// Run a seeded property suite and report failures.
    Fuzz(FuzzArgs),
}

fn main() {
    std::process::exit(run());
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    print!("{e}");
                    return 0;
                }
                _ => {
                    let message = e.to_string().lines().next().unwrap_or("usage error").to_string();
                    let err = CliError::usage(message);
                    println!("{}", err.to_json());
                    return EXIT_USAGE;
                }
            }
        }
    };
    match dispatch(cli.command) {
        Ok((body, code)) => {
            println!("{body}");
            code
        }
        Err(err) => {
            println!("{}", err.to_json());
            err.code
        }
    }
}

/// Engine errors carry exit code 3; everything raised while building the
/// inputs was already tagged as validation or parse.
fn engine<'a>(path: &'a str) -> impl Fn(CoreError) -> CliError + 'a {
    move |e| CliError::engine(path, e)
}

fn dispatch(command: Command) -> CliResult<(String, i32)> {
    match command {
        Command::MStar(a) => {
            let path = &a.input;
            let file = InstanceFile::load(path)?;
            let reg = file.registry(path)?;
            let p: wire::MStarPayload = file.payload(path)?;
            let beta = wire::to_standard(&p.standard, &reg, path)?;
            Ok((emit::render(&emit::gg_sum(&m_star(&beta))), 0))
        }
        Command::MuStar(a) => {
            let path = &a.input;
            let file = InstanceFile::load(path)?;
            let reg = file.registry(path)?;
            let p: wire::MuStarPayload = file.payload(path)?;
            let sigma = p
                .sigma
                .as_ref()
                .or(file.sigma.as_ref())
                .ok_or_else(|| CliError::validation(path, "no sigma declared"))?
                .to_sigma();
            let beta = wire::to_standard(&p.standard, &reg, path)?;
            Ok((emit::render(&emit::mu_sum(&mu_star_standard(&beta, &sigma))), 0))
        }
        Command::MuLeft(a) => {
            let path = &a.input;
            let file = InstanceFile::load(path)?;
            let reg = file.registry(path)?;
            let p: wire::MuLeftPayload = file.payload(path)?;
            let beta = wire::to_standard(&p.beta, &reg, path)?;
            let gamma = p.gamma.to_family(&reg, path)?;
            let x1 = wire::to_line_set(&p.x1, &reg, path)?;
            let x2 = wire::to_line_set(&p.x2, &reg, path)?;
            let sum = mu_filter_left(&beta, &gamma, &x1, &x2).map_err(engine(path))?;
            Ok((emit::render(&emit::induced_sum(&sum)), 0))
        }
        Command::MuRight(a) => {
            let path = &a.input;
            let file = InstanceFile::load(path)?;
            let reg = file.registry(path)?;
            let p: wire::MuRightPayload = file.payload(path)?;
            let sigma = p
                .sigma
                .as_ref()
                .or(file.sigma.as_ref())
                .ok_or_else(|| CliError::validation(path, "no sigma declared"))?
                .to_sigma();
            let beta = wire::to_standard(&p.beta, &reg, path)?;
            let mut xi = FormalSum::zero();
            for term in &p.xi {
                xi.add_term(
                    (
                        wire::to_standard(&term.gl, &reg, path)?.canonical(),
                        sigma.clone(),
                    ),
                    term.mult,
                );
            }
            let x1 = wire::to_line_set(&p.x1, &reg, path)?;
            let x2 = wire::to_line_set(&p.x2, &reg, path)?;
            let sum = mu_filter_right(&beta, &xi, &x1, &x2).map_err(engine(path))?;
            Ok((emit::render(&emit::mu_sum(&sum)), 0))
        }
        Command::Split(a) => {
            let path = &a.input;
            let file = InstanceFile::load(path)?;
            let reg = file.registry(path)?;
            let p: wire::SplitPayload = file.payload(path)?;
            let family = p.family.to_family(&reg, path)?;
            let x1 = wire::to_line_set(&p.x1, &reg, path)?;
            let x2 = wire::to_line_set(&p.x2, &reg, path)?;
            let input = DecompositionInput::new(family, x1, x2).map_err(engine(path))?;
            let out = emit::SplitOut {
                x1: emit::FamilyOut::new(&x_project(&input, Side::X1)),
                x2: emit::FamilyOut::new(&x_project(&input, Side::X2)),
            };
            Ok((emit::render(&out), 0))
        }
        Command::Glue(a) => {
            let path = &a.input;
            let file = InstanceFile::load(path)?;
            let reg = file.registry(path)?;
            let p: wire::GluePayload = file.payload(path)?;
            let sigma = match (&p.sigma, &file.sigma) {
                (Some(s), _) | (None, Some(s)) => s.to_sigma(),
                (None, None) => p
                    .parts
                    .first()
                    .map(|part| part.family.sigma.to_sigma())
                    .ok_or_else(|| CliError::validation(path, "glue needs at least one part"))?,
            };
            let mut parts = Vec::new();
            for part in &p.parts {
                parts.push((
                    wire::to_line_set(&part.lines, &reg, path)?,
                    part.family.to_family(&reg, path)?,
                ));
            }
            let glued = psi_glue(&sigma, &parts).map_err(engine(path))?;
            let out = emit::GlueOut {
                display: emit::glued_display(&glued),
                family: emit::FamilyOut::new(&glued),
            };
            Ok((emit::render(&out), 0))
        }
        Command::Distribute(a) => {
            let path = &a.input;
            let file = InstanceFile::load(path)?;
            let reg = file.registry(path)?;
            let p: wire::DistributePayload = file.payload(path)?;
            let build = |side: &[wire::WeightedFamilyW]| -> CliResult<FormalSum<_>> {
                let mut sum = FormalSum::zero();
                for w in side {
                    sum.add_term(w.family.to_family(&reg, path)?, w.mult);
                }
                Ok(sum)
            };
            let side1 = build(&p.side1)?;
            let side2 = build(&p.side2)?;
            let product = product_distribute(&side1, &side2).map_err(engine(path))?;
            Ok((emit::render(&emit::family_sum(&product)), 0))
        }
        Command::AssocCheck(a) => {
            let path = &a.input;
            let file = InstanceFile::load(path)?;
            let reg = file.registry(path)?;
            let p: wire::AssocPayload = file.payload(path)?;
            let family = p.family.to_family(&reg, path)?;
            let x1 = wire::to_line_set(&p.x1, &reg, path)?;
            let x2 = wire::to_line_set(&p.x2, &reg, path)?;
            let x3 = wire::to_line_set(&p.x3, &reg, path)?;
            let ok = assoc_check(&family, &x1, &x2, &x3).map_err(engine(path))?;
            Ok((emit::render(&emit::AssocOut { ok }), 0))
        }
        Command::SteinbergClassify(a) => {
            let path = &a.input;
            let file = InstanceFile::load(path)?;
            let reg = file.registry(path)?;
            let p: wire::SteinbergPayload = file.payload(path)?;
            let family = p.param.to_family(&reg, path)?;
            let params: Vec<_> = family.params().collect();
            if params.len() != 1 {
                return Err(CliError::validation(
                    path,
                    "steinberg-classify expects a parameter on exactly one line",
                ));
            }
            let class = classify_steinberg(params[0], p.n).map_err(engine(path))?;
            let name = match class {
                SteinbergClass::Steinberg => "steinberg",
                SteinbergClass::DualCandidate => "dual-candidate",
                SteinbergClass::Other => "other",
            };
            Ok((
                emit::render(&emit::SteinbergOut {
                    class: name.to_string(),
                }),
                0,
            ))
        }
        Command::UnitaryGeneric(a) => {
            let path = &a.input;
            let file = InstanceFile::load(path)?;
            let reg = file.registry(path)?;
            let p: wire::UnitaryPayload = file.payload(path)?;
            let generic = p.generic.to_generic(&reg, path)?;
            let (ok, witness) = is_unitarizable_generic(&generic).map_err(engine(path))?;
            Ok((emit::render(&emit::UnitaryOut::new(ok, witness)), 0))
        }
        Command::ProjectGeneric(a) => {
            let path = &a.input;
            let file = InstanceFile::load(path)?;
            let reg = file.registry(path)?;
            let p: wire::ProjectGenericPayload = file.payload(path)?;
            let generic = p.generic.to_generic(&reg, path)?;
            let line = reg
                .get(&p.line)
                .map_err(|e| CliError::validation(path, e))?;
            let projected = x_project_generic(&generic, &line);
            Ok((emit::render(&emit::GenericOut::new(&projected)), 0))
        }
        Command::Transfer(a) => {
            let path = &a.input;
            let file = InstanceFile::load(path)?;
            let reg = file.registry(path)?;
            let p: wire::TransferPayload = file.payload(path)?;
            let resolve = |flag: &Option<String>,
                           endpoint: &Option<wire::EndpointW>,
                           which: &str|
             -> CliResult<(cuspline_core::lines::CuspidalSymbol, _)> {
                if let Some(spec) = flag {
                    let (rho, sigma_id) = spec.split_once(':').ok_or_else(|| {
                        CliError::usage(format!("--{which} expects `rho:sigma`, got `{spec}`"))
                    })?;
                    let sym = reg.get(rho).map_err(|e| CliError::validation(path, e))?;
                    return Ok((sym, file.find_sigma(sigma_id, path)?));
                }
                if let Some(e) = endpoint {
                    let sym = reg.get(&e.rho).map_err(|err| CliError::validation(path, err))?;
                    return Ok((sym, e.sigma.to_sigma()));
                }
                Err(CliError::validation(
                    path,
                    format!("transfer {which} endpoint is missing (flag or payload field)"),
                ))
            };
            let src = resolve(&a.src, &p.src, "src")?;
            let dst = resolve(&a.dst, &p.dst, "dst")?;
            let ctx = LinePairContext::new(src, dst).map_err(engine(path))?;
            let family = p.param.to_family(&reg, path)?;
            let mut moved = Vec::new();
            for param in family.params() {
                moved.push(transfer_langlands(&ctx, param).map_err(engine(path))?);
            }
            let out_family =
                cuspline_core::params::JantzenFamily::new(ctx.dst_sigma().clone(), moved)
                    .map_err(engine(path))?;
            let out = emit::TransferOut {
                param: emit::FamilyOut::new(&out_family),
                warning: ctx
                    .alpha_zero_warning()
                    .then(|| "alpha-zero-noncanonical".to_string()),
            };
            Ok((emit::render(&out), 0))
        }
        Command::Fuzz(a) => {
            let suite = fuzz::Suite::parse(&a.suite)?;
            let report = fuzz::run_suite(suite, a.trials, a.seed);
            let code = report.exit_code();
            Ok((emit::render(&report), code))
        }
    }
}
