//! Seeded fuzz suites over the engine's executable laws.
//!
//! Each trial draws from its own deterministic stream (`seed` selects the
//! run, the trial index selects the stream), so reports are byte-identical
//! across invocations and any failing trial can be replayed alone.

use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use cuspline_core::gl::{m_star, FormalSum, StandardGL};
use cuspline_core::jantzen::{
    assoc_check, filter_mu_terms, mu_filter_left_standard, psi_glue, x_project,
    DecompositionInput, Side,
};
use cuspline_core::lines::{CuspidalSymbol, LineSet};
use cuspline_core::params::{mu_star_standard, ClassicalStandard, SigmaSupport};
use cuspline_core::sample::{
    demo_registry, demo_sigma, gen_family, gen_generic, gen_generic_single_line, gen_partition,
    gen_standard,
};
use cuspline_core::transfer::{transfer_preserves_generic_unitarity, LinePairContext};
use cuspline_core::unitarity::preservation_check;

use crate::error::{CliError, CliResult, EXIT_ENGINE};

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Suite {
    Coassoc,
    Assoc,
    Roundtrip,
    Preservation,
    Transfer,
    MuLeft,
}

impl Suite {
    pub fn parse(name: &str) -> CliResult<Suite> {
        match name {
            "coassoc" => Ok(Suite::Coassoc),
            "assoc" => Ok(Suite::Assoc),
            "roundtrip" => Ok(Suite::Roundtrip),
            "preservation" => Ok(Suite::Preservation),
            "transfer" => Ok(Suite::Transfer),
            "mu-left" => Ok(Suite::MuLeft),
            other => Err(CliError::validation(
                "",
                format!(
                    "unknown suite `{other}`; known: coassoc, assoc, roundtrip, \
                     preservation, transfer, mu-left"
                ),
            )),
        }
    }

    fn name(self) -> &'static str {
        match self {
            Suite::Coassoc => "coassoc",
            Suite::Assoc => "assoc",
            Suite::Roundtrip => "roundtrip",
            Suite::Preservation => "preservation",
            Suite::Transfer => "transfer",
            Suite::MuLeft => "mu-left",
        }
    }
}

#[derive(Serialize)]
pub struct Failure {
    pub trial: u64,
    pub message: String,
}

#[derive(Serialize)]
pub struct Report {
    pub suite: String,
    pub seed: u64,
    pub trials: u64,
    pub failures: Vec<Failure>,
    pub status: String,
}

impl Report {
    pub fn exit_code(&self) -> i32 {
        if self.failures.is_empty() {
            0
        } else {
            EXIT_ENGINE
        }
    }
}

fn trial_rng(seed: u64, trial: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial);
    rng
}

fn coassoc_trial(rng: &mut ChaCha8Rng, symbols: &[CuspidalSymbol]) -> Result<(), String> {
    let beta = gen_standard(rng, symbols, 4);
    let sum = m_star(&beta);
    let expand = |left: bool| {
        let mut out: FormalSum<(StandardGL, StandardGL, StandardGL)> = FormalSum::zero();
        for ((l, r), m) in sum.iter() {
            let inner = if left { m_star(l) } else { m_star(r) };
            for ((a, b), n) in inner.iter() {
                let term = if left {
                    (a.clone(), b.clone(), r.clone())
                } else {
                    (l.clone(), a.clone(), b.clone())
                };
                out.add_term(term, m * n);
            }
        }
        out
    };
    if expand(true) == expand(false) {
        Ok(())
    } else {
        Err(format!("coassociativity failed on {beta:?}"))
    }
}

fn assoc_trial(
    rng: &mut ChaCha8Rng,
    symbols: &[CuspidalSymbol],
    sigma: &SigmaSupport,
) -> Result<(), String> {
    let fam = gen_family(rng, symbols, sigma, 3);
    let (x1, rest) = gen_partition(rng, symbols);
    let rest_syms: Vec<CuspidalSymbol> = rest.symbols().cloned().collect();
    let (x2, x3) = gen_partition(rng, &rest_syms);
    match assoc_check(&fam, &x1, &x2, &x3) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("associativity failed on {fam:?}")),
        Err(e) => Err(format!("associativity errored on {fam:?}: {e}")),
    }
}

fn roundtrip_trial(
    rng: &mut ChaCha8Rng,
    symbols: &[CuspidalSymbol],
    sigma: &SigmaSupport,
) -> Result<(), String> {
    let fam = gen_family(rng, symbols, sigma, 3);
    let (x1, x2) = gen_partition(rng, symbols);
    let input = DecompositionInput::new(fam.clone(), x1.clone(), x2.clone())
        .map_err(|e| format!("partition rejected on {fam:?}: {e}"))?;
    let g1 = x_project(&input, Side::X1);
    let g2 = x_project(&input, Side::X2);
    let glued = psi_glue(sigma, &[(x1, g1.clone()), (x2, g2.clone())])
        .map_err(|e| format!("glue failed on {fam:?}: {e}"))?;
    if glued != fam {
        return Err(format!("round trip failed on {fam:?}"));
    }
    if fam.degree() + sigma.rank != g1.degree() + g2.degree() {
        return Err(format!("degree law failed on {fam:?}"));
    }
    Ok(())
}

fn preservation_trial(
    rng: &mut ChaCha8Rng,
    symbols: &[CuspidalSymbol],
    sigma: &SigmaSupport,
) -> Result<(), String> {
    let p = gen_generic(rng, symbols, sigma, 3, 0.7);
    match preservation_check(&p) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("preservation failed on {p:?}")),
        Err(e) => Err(format!("preservation errored on {p:?}: {e}")),
    }
}

fn transfer_trial(rng: &mut ChaCha8Rng, trial: u64) -> Result<(), String> {
    let reg = demo_registry();
    let pairs = [("rho0", "rho0b"), ("rhoH", "rhoHb"), ("rho1", "rho1b")];
    let (src, dst) = pairs[(trial % 3) as usize];
    let sigma1 = SigmaSupport::new("s1", 0);
    let sigma2 = SigmaSupport::new("s2", 2);
    let ctx = LinePairContext::new(
        (reg.get(src).expect("demo symbol"), sigma1.clone()),
        (reg.get(dst).expect("demo symbol"), sigma2),
    )
    .expect("matching exponents");
    let p = gen_generic_single_line(rng, ctx.src_line(), &sigma1);
    match transfer_preserves_generic_unitarity(&ctx, &p) {
        Ok(true) => Ok(()),
        Ok(false) => Err(format!("transfer changed the decision on {p:?}")),
        Err(e) => Err(format!("transfer errored on {p:?}: {e}")),
    }
}

fn mu_left_trial(rng: &mut ChaCha8Rng, sigma: &SigmaSupport) -> Result<(), String> {
    let reg = demo_registry();
    let rho0 = reg.get("rho0").expect("demo symbol");
    let ups = reg.get("ups").expect("demo symbol");
    let x1 = LineSet::closure_of([rho0.clone()]);
    let x2 = LineSet::closure_of([ups.clone()]);
    let beta = gen_standard(rng, &[rho0], 2);
    let gamma_gl = gen_standard(rng, &[ups.clone(), ups.partner()], 2);
    let gamma = ClassicalStandard::new(gamma_gl.clone(), sigma.clone());
    let closed = mu_filter_left_standard(&beta, &gamma, &x1, &x2)
        .map_err(|e| format!("closed form errored on {beta:?}: {e}"))?;
    let direct = filter_mu_terms(&mu_star_standard(&beta.concat(&gamma_gl), sigma), &x1, None);
    if closed == direct {
        Ok(())
    } else {
        Err(format!(
            "filter identity failed on beta = {beta:?}, gamma = {gamma_gl:?}"
        ))
    }
}

pub fn run_suite(suite: Suite, trials: u64, seed: u64) -> Report {
    let reg = demo_registry();
    let sigma = demo_sigma();
    let symbols = reg.symbols();
    let mut failures = Vec::new();
    for trial in 0..trials {
        let mut rng = trial_rng(seed, trial);
        let outcome = match suite {
            Suite::Coassoc => coassoc_trial(&mut rng, &symbols),
            Suite::Assoc => assoc_trial(&mut rng, &symbols, &sigma),
            Suite::Roundtrip => roundtrip_trial(&mut rng, &symbols, &sigma),
            Suite::Preservation => preservation_trial(&mut rng, &symbols, &sigma),
            Suite::Transfer => transfer_trial(&mut rng, trial),
            Suite::MuLeft => mu_left_trial(&mut rng, &sigma),
        };
        if let Err(message) = outcome {
            failures.push(Failure { trial, message });
        }
    }
    let status = if failures.is_empty() { "ok" } else { "failed" };
    Report {
        suite: suite.name().to_string(),
        seed,
        trials,
        failures,
        status: status.to_string(),
    }
}
