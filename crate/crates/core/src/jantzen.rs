//! The line-decomposition engine.
//!
//! With families stored natively as per-line tuples, the decomposition
//! bijection is definitional: projecting onto a part of a regular partition
//! restricts the tuple, and gluing merges tuples over disjoint parts. The
//! value of this module is that the bookkeeping laws tying those maps to
//! the Jacquet-module machinery become executable: the filter identities
//! for `mu*` over a part, bilinear product distribution, the `mu*` gluing
//! rule, temperedness transfer, three-part associativity, and the
//! classification of parameters with generalized Steinberg support.

use std::fmt;

use crate::error::{Error, Result};
use crate::gl::{big_m_star, FormalSum, Multisegment, Segment, StandardGL};
use crate::lines::{is_regular_partition, LineSet, PointMultiset};
use crate::params::{
    mu_star_standard, steinberg_support, ClassicalStandard, DiscreteSeriesParam, JantzenFamily,
    LanglandsParam, MuTerm, Sign, SigmaSupport, TemperedParam,
};
use crate::rat::Rat;

/// A family together with a validated regular two-part partition covering
/// its lines.
#[derive(Clone, Debug)]
pub struct DecompositionInput {
    family: JantzenFamily,
    x1: LineSet,
    x2: LineSet,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Side {
    X1,
    X2,
}

impl DecompositionInput {
    pub fn new(family: JantzenFamily, x1: LineSet, x2: LineSet) -> Result<Self> {
        let (support, _) = family.cuspidal_support();
        if !is_regular_partition(&x1, &x2, &support)? {
            return Err(Error::IrregularPartition(
                "parts are not closed under contragredient or interact".into(),
            ));
        }
        let union = x1.union(&x2);
        for line in family.line_ids() {
            if !union.contains_line_id(line) {
                return Err(Error::SupportViolation(format!(
                    "family line {line} is covered by neither part"
                )));
            }
        }
        Ok(DecompositionInput { family, x1, x2 })
    }

    pub fn family(&self) -> &JantzenFamily {
        &self.family
    }

    pub fn part(&self, side: Side) -> &LineSet {
        match side {
            Side::X1 => &self.x1,
            Side::X2 => &self.x2,
        }
    }
}

/// Projection onto one part of the partition: the per-line tuple restricted
/// to the lines of that part, over the same partial cuspidal support. The
/// Langlands display of the result is re-established by the canonical
/// per-line normal form.
pub fn x_project(input: &DecompositionInput, side: Side) -> JantzenFamily {
    input.family.restrict(input.part(side))
}

/// Formal sum of families with positive integer multiplicities.
pub type FormalFamilySum = FormalSum<JantzenFamily>;

/// Inverse of the projections: merges per-line bundles over pairwise
/// disjoint, self-contragredient parts that cover them.
pub fn psi_glue(sigma: &SigmaSupport, parts: &[(LineSet, JantzenFamily)]) -> Result<JantzenFamily> {
    for (i, (set_a, fam)) in parts.iter().enumerate() {
        if fam.sigma() != sigma {
            return Err(Error::SigmaMismatch(
                sigma.id.clone(),
                fam.sigma().id.clone(),
            ));
        }
        if !set_a.is_self_contragredient() {
            return Err(Error::IrregularPartition(format!(
                "part {i} is not closed under contragredient"
            )));
        }
        for line in fam.line_ids() {
            if !set_a.contains_line_id(line) {
                return Err(Error::SupportViolation(format!(
                    "bundle line {line} is outside its declared part"
                )));
            }
        }
        for (set_b, _) in &parts[i + 1..] {
            if !set_a.is_disjoint_from(set_b) {
                return Err(Error::OverlappingParts(
                    "glue parts must be pairwise disjoint".into(),
                ));
            }
        }
    }
    let mut out = JantzenFamily::cuspidal(sigma.clone());
    for (_, fam) in parts {
        out = out.merge(fam)?;
    }
    Ok(out)
}

/// Glued Langlands display: all rows of all lines grouped by exponent,
/// exponents strictly decreasing, rows within a group in canonical order.
pub fn glued_langlands_rows(family: &JantzenFamily) -> Vec<(Rat, Vec<Segment>)> {
    let mut rows: Vec<Segment> = family
        .params()
        .flat_map(|p| p.rows().iter().cloned())
        .collect();
    rows.sort_by(|a, b| b.exponent().cmp(&a.exponent()).then_with(|| a.cmp(b)));
    let mut out: Vec<(Rat, Vec<Segment>)> = Vec::new();
    for seg in rows {
        match out.last_mut() {
            Some((exp, group)) if *exp == seg.exponent() => group.push(seg),
            _ => out.push((seg.exponent(), vec![seg])),
        }
    }
    out
}

/// Right-hand label of a filtered Jacquet term: a GL label stacked on an
/// opaque family, `tau' x| gamma`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct InducedFamily {
    pub gl: StandardGL,
    pub family: JantzenFamily,
}

impl fmt::Debug for InducedFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gl.is_unit() {
            write!(f, "{:?}", self.family)
        } else {
            write!(f, "{:?}x|{:?}", self.gl, self.family)
        }
    }
}

fn check_left_parts(
    beta: &StandardGL,
    gamma_support: &PointMultiset,
    gamma_lines: &LineSet,
    x1: &LineSet,
    x2: &LineSet,
) -> Result<()> {
    if !beta.supported_in(x1) {
        return Err(Error::SupportViolation(
            "beta must be supported in the first part".into(),
        ));
    }
    for s in gamma_lines.symbols() {
        if !x2.contains_symbol(s) {
            return Err(Error::SupportViolation(format!(
                "gamma line {} is outside the second part",
                s.line_id()
            )));
        }
    }
    let combined = beta.support().merged(gamma_support);
    if !is_regular_partition(x1, x2, &combined)? {
        return Err(Error::IrregularPartition(
            "parts are not regular for the combined support".into(),
        ));
    }
    Ok(())
}

/// Closed form for the Jacquet sum of `beta x| gamma` filtered over the
/// part carrying `beta`: `M*(beta)` with `gamma` appended to every right
/// factor. The left-support filter is the operative one; the term with
/// trivial left factor always passes.
pub fn mu_filter_left(
    beta: &StandardGL,
    gamma: &JantzenFamily,
    x1: &LineSet,
    x2: &LineSet,
) -> Result<FormalSum<(StandardGL, InducedFamily)>> {
    let (gamma_support, _) = gamma.cuspidal_support();
    check_left_parts(beta, &gamma_support, &gamma.lines_as_set(), x1, x2)?;
    Ok(big_m_star(beta).map(|(l, r)| {
        (
            l.clone(),
            InducedFamily {
                gl: r.clone(),
                family: gamma.clone(),
            },
        )
    }))
}

/// Same closed form with `gamma` given as a classical standard label; the
/// right factors flatten to `(tau' x gamma_gl) x| sigma`.
pub fn mu_filter_left_standard(
    beta: &StandardGL,
    gamma: &ClassicalStandard,
    x1: &LineSet,
    x2: &LineSet,
) -> Result<FormalSum<MuTerm>> {
    let gamma_lines = LineSet::closure_of(gamma.gl.factors().iter().map(|s| s.cusp().clone()));
    check_left_parts(beta, &gamma.gl.support(), &gamma_lines, x1, x2)?;
    Ok(big_m_star(beta).map(|(l, r)| {
        (
            l.clone(),
            ClassicalStandard::new(r.concat(&gamma.gl), gamma.sigma.clone()),
        )
    }))
}

/// The opposite-part filter: given `s_GL(gamma) = Xi (x) sigma`, every term
/// `xi (x) sigma` becomes `xi (x) (beta x| sigma)`.
pub fn mu_filter_right(
    beta: &StandardGL,
    gamma_s_gl: &FormalSum<(StandardGL, SigmaSupport)>,
    x1: &LineSet,
    x2: &LineSet,
) -> Result<FormalSum<MuTerm>> {
    if !beta.supported_in(x1) {
        return Err(Error::SupportViolation(
            "beta must be supported in the first part".into(),
        ));
    }
    let mut combined = beta.support();
    for ((xi, _), _) in gamma_s_gl.iter() {
        if !xi.supported_in(x2) {
            return Err(Error::SupportViolation(
                "a left factor of s_GL(gamma) leaves the second part".into(),
            ));
        }
        combined = combined.merged(&xi.support());
    }
    if !is_regular_partition(x1, x2, &combined)? {
        return Err(Error::IrregularPartition(
            "parts are not regular for the combined support".into(),
        ));
    }
    let mut out = FormalSum::zero();
    for ((xi, sigma), m) in gamma_s_gl.iter() {
        out.add_term(
            (
                xi.clone(),
                ClassicalStandard::new(beta.clone(), sigma.clone()),
            ),
            m,
        );
    }
    Ok(out)
}

/// Support filter on classical Jacquet terms: the left GL factor must lie
/// in `left`; when `right` is given, the GL part of the classical label
/// must lie in it as well.
pub fn filter_mu_terms(
    sum: &FormalSum<MuTerm>,
    left: &LineSet,
    right: Option<&LineSet>,
) -> FormalSum<MuTerm> {
    sum.filter(|(l, cs)| {
        l.supported_in(left) && right.is_none_or(|rp| cs.gl.supported_in(rp))
    })
}

/// Bilinear distribution of a product over per-side decompositions: every
/// pair of irreducible constituents glues, and multiplicities multiply.
/// The per-side decompositions are caller-supplied; the engine computes
/// them itself only in the trivial case (see
/// [`trivial_induction_decomposition`]).
pub fn product_distribute(
    side1: &FormalFamilySum,
    side2: &FormalFamilySum,
) -> Result<FormalFamilySum> {
    side1.product(side2, |a, b| a.merge(b))
}

/// The one decomposition the engine can produce on its own: inducing by
/// the empty GL label changes nothing, so `1 x| gamma = gamma`.
pub fn trivial_induction_decomposition(
    beta: &StandardGL,
    gamma: &JantzenFamily,
) -> Option<FormalFamilySum> {
    if beta.is_unit() {
        Some(FormalSum::singleton(gamma.clone(), 1))
    } else {
        None
    }
}

/// Right-hand labels that can be glued across disjoint parts.
pub trait GlueRight: Ord + Clone {
    fn glue(&self, other: &Self) -> Result<Self>;
    fn line_set(&self) -> LineSet;
}

impl GlueRight for JantzenFamily {
    fn glue(&self, other: &Self) -> Result<Self> {
        self.merge(other)
    }

    fn line_set(&self) -> LineSet {
        self.lines_as_set()
    }
}

impl GlueRight for ClassicalStandard {
    fn glue(&self, other: &Self) -> Result<Self> {
        if self.sigma != other.sigma {
            return Err(Error::SigmaMismatch(
                self.sigma.id.clone(),
                other.sigma.id.clone(),
            ));
        }
        Ok(ClassicalStandard::new(
            self.gl.concat(&other.gl),
            self.sigma.clone(),
        ))
    }

    fn line_set(&self) -> LineSet {
        LineSet::closure_of(self.gl.factors().iter().map(|s| s.cusp().clone()))
    }
}

/// Glues two per-part Jacquet sums: terms combine as
/// `(eta1 x eta2) (x) glue(theta1, theta2)` with multiplicities
/// multiplying. The GL factors must live on disjoint lines.
pub fn mu_glue<T: GlueRight>(
    side1: &FormalSum<(StandardGL, T)>,
    side2: &FormalSum<(StandardGL, T)>,
) -> Result<FormalSum<(StandardGL, T)>> {
    side1.product(side2, |(eta1, theta1), (eta2, theta2)| {
        let l1 = LineSet::closure_of(eta1.factors().iter().map(|s| s.cusp().clone()));
        let l2 = LineSet::closure_of(eta2.factors().iter().map(|s| s.cusp().clone()));
        if !l1.is_disjoint_from(&l2) {
            return Err(Error::OverlappingParts(
                "GL factors of the glued terms share a line".into(),
            ));
        }
        Ok((eta1.concat(eta2).canonical(), theta1.glue(theta2)?))
    })
}

/// Temperedness data of a glued family: tempered when every per-line layer
/// has no Langlands rows, square-integrable when additionally every
/// tempered layer is a bare discrete-series parameter.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct TemperedFlags {
    pub tempered: bool,
    pub square_integrable: bool,
}

pub fn tempered_glued(family: &JantzenFamily) -> TemperedFlags {
    TemperedFlags {
        tempered: family.params().all(LanglandsParam::is_tempered),
        square_integrable: family.params().all(LanglandsParam::is_square_integrable),
    }
}

/// Checks the two three-part coherence identities on a regular partition
/// `(x1, x2, x3)` covering the family: projecting to `x1` through either
/// two-part grouping agrees, and gluing is associative.
pub fn assoc_check(
    family: &JantzenFamily,
    x1: &LineSet,
    x2: &LineSet,
    x3: &LineSet,
) -> Result<bool> {
    let (support, _) = family.cuspidal_support();
    for (a, b) in [(x1, x2), (x1, x3), (x2, x3)] {
        if !is_regular_partition(a, b, &support)? {
            return Err(Error::IrregularPartition(
                "three-part partition is not regular".into(),
            ));
        }
    }
    let x12 = x1.union(x2);
    let x13 = x1.union(x3);
    let x23 = x2.union(x3);

    // X1((X1 u X2)(pi)) against X1((X1 u X3)(pi))
    let via_x12 = {
        let outer = x_project(
            &DecompositionInput::new(family.clone(), x12.clone(), x3.clone())?,
            Side::X1,
        );
        x_project(
            &DecompositionInput::new(outer, x1.clone(), x2.clone())?,
            Side::X1,
        )
    };
    let via_x13 = {
        let outer = x_project(
            &DecompositionInput::new(family.clone(), x13.clone(), x2.clone())?,
            Side::X1,
        );
        x_project(
            &DecompositionInput::new(outer, x1.clone(), x3.clone())?,
            Side::X1,
        )
    };
    if via_x12 != via_x13 {
        return Ok(false);
    }

    // associativity of gluing
    let sigma = family.sigma().clone();
    let p1 = family.restrict(x1);
    let p2 = family.restrict(x2);
    let p3 = family.restrict(x3);
    let left = psi_glue(
        &sigma,
        &[
            (
                x12.clone(),
                psi_glue(&sigma, &[(x1.clone(), p1.clone()), (x2.clone(), p2.clone())])?,
            ),
            (x3.clone(), p3.clone()),
        ],
    )?;
    let right = psi_glue(
        &sigma,
        &[
            (x1.clone(), p1),
            (
                x23.clone(),
                psi_glue(&sigma, &[(x2.clone(), p2), (x3.clone(), p3)])?,
            ),
        ],
    )?;
    Ok(left == right && left == *family)
}

/// The nonvanishing of the filtered Jacquet sum: computes the classical
/// Jacquet sum of `beta x| sigma` and filters on the left by `part`. The
/// term with trivial left factor passes vacuously, so the result is
/// populated for every standard label.
pub fn lemma_nonzero_check(beta: &StandardGL, sigma: &SigmaSupport, part: &LineSet) -> bool {
    !filter_mu_terms(&mu_star_standard(beta, sigma), part, None).is_zero()
}

/// Classification of a one-line parameter against the generalized Steinberg
/// infinitesimal character of rank `n`.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum SteinbergClass {
    Steinberg,
    DualCandidate,
    Other,
}

/// Decides whether a one-line parameter with Steinberg support is the
/// anchored discrete-series shape, the fully split Langlands shape, or
/// anything else. Parameters whose support differs from the rank-`n`
/// Steinberg support are `Other` immediately. The sign record is ignored:
/// it changes neither the support nor the block structure.
pub fn classify_steinberg(param: &LanglandsParam, n: u64) -> Result<SteinbergClass> {
    if n == 0 {
        return Err(Error::InvalidArgument(
            "Steinberg rank must be positive".into(),
        ));
    }
    let line = param.line().clone();
    if !line.is_self_dual() {
        return Ok(SteinbergClass::Other);
    }
    let expected = steinberg_support(&line, n)?;
    if param.gl_support() != expected {
        return Ok(SteinbergClass::Other);
    }
    let alpha = line.alpha();
    let t = param.tempered();

    let anchored = Segment::new(
        line.clone(),
        alpha,
        alpha + Rat::from_integer(n as i64 - 1),
    )
    .expect("anchored interval is a segment");
    let is_steinberg = param.rows().is_empty()
        && t.signed().is_empty()
        && t.extra().is_empty()
        && t.ds().jord().as_slice() == std::slice::from_ref(&anchored);
    if is_steinberg {
        return Ok(SteinbergClass::Steinberg);
    }

    let dual = steinberg_dual_shape(&line, param.sigma().clone(), n)?;
    if *param == dual {
        return Ok(SteinbergClass::DualCandidate);
    }
    Ok(SteinbergClass::Other)
}

/// The conventional fully split shape with Steinberg support: one singleton
/// Langlands row per positive support exponent; at `alpha = 0` the
/// leftover zero point sits as a positively signed block over the trivial
/// discrete series (the choice of sign is the non-canonical part).
pub fn steinberg_dual_shape(
    line: &crate::lines::CuspidalSymbol,
    sigma: SigmaSupport,
    n: u64,
) -> Result<LanglandsParam> {
    let expected = steinberg_support(line, n)?;
    let mut rows = Vec::new();
    let mut residue_signed = Vec::new();
    for (p, _) in expected.iter() {
        if p.x > Rat::from_integer(0) {
            rows.push(Segment::new(line.clone(), p.x, p.x)?);
        } else {
            residue_signed.push((Segment::new(line.clone(), p.x, p.x)?, Sign::Plus));
        }
    }
    let ds = DiscreteSeriesParam::trivial(line.clone(), sigma);
    let tempered = TemperedParam::new(ds, residue_signed, Multisegment::empty())?;
    LanglandsParam::new(rows, tempered)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lines::{Registry, SymbolSpec};
    use crate::params::EpsilonRecord;
    use crate::rat::{rat, rat_int};

    fn reg() -> Registry {
        Registry::new(vec![
            SymbolSpec::self_dual("rho0", rat_int(0)),
            SymbolSpec::self_dual("rhoH", rat(1, 2)),
            SymbolSpec::self_dual("rho1", rat_int(1)),
            SymbolSpec::with_partner("tau", "tauT", rat_int(0)),
            SymbolSpec::with_partner("tauT", "tau", rat_int(0)),
        ])
        .unwrap()
    }

    fn sigma() -> SigmaSupport {
        SigmaSupport::new("s", 0)
    }

    fn seg(r: &Registry, id: &str, b: Rat, e: Rat) -> Segment {
        Segment::new(r.get(id).unwrap(), b, e).unwrap()
    }

    fn row_param(r: &Registry, line: &str, rows: Vec<Segment>) -> LanglandsParam {
        LanglandsParam::new(rows, TemperedParam::trivial(r.get(line).unwrap(), sigma())).unwrap()
    }

    fn line_set(r: &Registry, ids: &[&str]) -> LineSet {
        LineSet::closure_of(ids.iter().map(|id| r.get(id).unwrap()))
    }

    fn two_line_family(r: &Registry) -> JantzenFamily {
        JantzenFamily::new(
            sigma(),
            vec![
                row_param(r, "rho0", vec![seg(r, "rho0", rat_int(1), rat_int(2))]),
                row_param(r, "rhoH", vec![seg(r, "rhoH", rat(1, 2), rat(1, 2))]),
            ],
        )
        .unwrap()
    }

    #[test]
    fn project_restricts_the_tuple() {
        let r = reg();
        let fam = two_line_family(&r);
        let input = DecompositionInput::new(
            fam.clone(),
            line_set(&r, &["rho0"]),
            line_set(&r, &["rhoH"]),
        )
        .unwrap();
        let left = x_project(&input, Side::X1);
        assert_eq!(left.line_ids(), vec!["rho0"]);
        assert_eq!(left.sigma(), &sigma());
        // a part that misses all family lines projects to sigma itself
        let input2 = DecompositionInput::new(
            fam.clone(),
            line_set(&r, &["rho0", "rhoH"]),
            line_set(&r, &["tau"]),
        )
        .unwrap();
        assert!(x_project(&input2, Side::X2).is_cuspidal());
        // round trip
        let glued = psi_glue(
            &sigma(),
            &[
                (line_set(&r, &["rho0"]), x_project(&input, Side::X1)),
                (line_set(&r, &["rhoH"]), x_project(&input, Side::X2)),
            ],
        )
        .unwrap();
        assert_eq!(glued, fam);
    }

    #[test]
    fn glue_validates_and_adds_degrees() {
        let r = reg();
        let f1 = JantzenFamily::new(
            sigma(),
            vec![row_param(&r, "rho0", vec![seg(&r, "rho0", rat_int(1), rat_int(2))])],
        )
        .unwrap();
        let f2 = JantzenFamily::new(
            sigma(),
            vec![row_param(&r, "rhoH", vec![seg(&r, "rhoH", rat(1, 2), rat(3, 2))])],
        )
        .unwrap();
        let glued = psi_glue(
            &sigma(),
            &[
                (line_set(&r, &["rho0"]), f1.clone()),
                (line_set(&r, &["rhoH"]), f2.clone()),
            ],
        )
        .unwrap();
        let r_rank = sigma().rank;
        assert_eq!(
            glued.degree(),
            f1.degree() + f2.degree() - r_rank
        );
        // gluing sigma itself changes nothing
        let again = psi_glue(
            &sigma(),
            &[
                (line_set(&r, &["rho0", "rhoH"]), glued.clone()),
                (line_set(&r, &["tau"]), JantzenFamily::cuspidal(sigma())),
            ],
        )
        .unwrap();
        assert_eq!(again, glued);
        // overlapping parts are rejected
        assert!(psi_glue(
            &sigma(),
            &[
                (line_set(&r, &["rho0"]), f1.clone()),
                (line_set(&r, &["rho0"]), JantzenFamily::cuspidal(sigma())),
            ],
        )
        .is_err());
        // sigma mismatch is rejected
        let other = SigmaSupport::new("t", 2);
        assert!(psi_glue(&other, &[(line_set(&r, &["rho0"]), f1)]).is_err());
    }

    #[test]
    fn mu_filter_left_matches_mu_star_on_sigma() {
        let r = reg();
        let beta = StandardGL::single(seg(&r, "rho0", rat_int(0), rat_int(0)));
        let x1 = line_set(&r, &["rho0"]);
        let x2 = LineSet::empty();
        let gamma = JantzenFamily::cuspidal(sigma());
        let sum = mu_filter_left(&beta, &gamma, &x1, &x2).unwrap();
        // flatten the opaque family (sigma itself) and compare
        let flattened = sum.map(|(l, ind)| {
            (
                l.clone(),
                ClassicalStandard::new(ind.gl.clone(), ind.family.sigma().clone()),
            )
        });
        assert_eq!(flattened, mu_star_standard(&beta, &sigma()));
    }

    #[test]
    fn mu_filter_left_unit_beta() {
        let r = reg();
        let gamma = JantzenFamily::new(
            sigma(),
            vec![row_param(&r, "tau", vec![seg(&r, "tau", rat_int(1), rat_int(1))])],
        )
        .unwrap();
        let sum = mu_filter_left(
            &StandardGL::unit(),
            &gamma,
            &line_set(&r, &["rho0"]),
            &line_set(&r, &["tau"]),
        )
        .unwrap();
        assert_eq!(sum.num_terms(), 1);
        assert_eq!(
            sum.multiplicity(&(
                StandardGL::unit(),
                InducedFamily {
                    gl: StandardGL::unit(),
                    family: gamma
                }
            )),
            1
        );
    }

    #[test]
    fn mu_filter_left_is_m_star_with_gamma_appended() {
        let r = reg();
        let beta = StandardGL::single(seg(&r, "rho0", rat_int(0), rat_int(1)));
        let gamma = JantzenFamily::new(
            sigma(),
            vec![row_param(&r, "tau", vec![seg(&r, "tau", rat_int(1), rat_int(1))])],
        )
        .unwrap();
        let x1 = line_set(&r, &["rho0"]);
        let x2 = line_set(&r, &["tau"]);
        let sum = mu_filter_left(&beta, &gamma, &x1, &x2).unwrap();
        let want = big_m_star(&beta).map(|(l, rgt)| {
            (
                l.clone(),
                InducedFamily {
                    gl: rgt.clone(),
                    family: gamma.clone(),
                },
            )
        });
        assert_eq!(sum, want);
        // support violations are rejected
        assert!(mu_filter_left(&beta, &gamma, &x2, &x1).is_err());
        // a second part that is not closed under contragredient makes the
        // partition irregular
        let half_pair = LineSet::from_raw_symbols([r.get("tau").unwrap()]);
        let result = mu_filter_left(&beta, &JantzenFamily::cuspidal(sigma()), &x1, &half_pair);
        assert!(matches!(result, Err(Error::IrregularPartition(_))));
    }

    #[test]
    fn mu_filter_right_examples() {
        let r = reg();
        let beta = StandardGL::single(seg(&r, "rho0", rat_int(0), rat_int(0)));
        let x1 = line_set(&r, &["rho0"]);
        let x2 = line_set(&r, &["rhoH"]);
        let xi_seg = StandardGL::single(seg(&r, "rhoH", rat(1, 2), rat(1, 2)));
        let xi = FormalSum::singleton((xi_seg.clone(), sigma()), 2);
        let sum = mu_filter_right(&beta, &xi, &x1, &x2).unwrap();
        assert_eq!(sum.num_terms(), 1);
        assert_eq!(
            sum.multiplicity(&(
                xi_seg,
                ClassicalStandard::new(beta.clone(), sigma())
            )),
            2
        );
        // empty input sum stays empty
        let empty = mu_filter_right(&beta, &FormalSum::zero(), &x1, &x2).unwrap();
        assert!(empty.is_zero());
        // unit beta leaves Xi (x) sigma unchanged
        let sum2 = mu_filter_right(&StandardGL::unit(), &xi, &x1, &x2).unwrap();
        for ((_, cs), m) in sum2.iter() {
            assert!(cs.gl.is_unit());
            assert_eq!(m, 2);
        }
    }

    #[test]
    fn product_distribute_bilinearity() {
        let r = reg();
        let f1a = JantzenFamily::new(
            sigma(),
            vec![row_param(&r, "rho0", vec![seg(&r, "rho0", rat_int(1), rat_int(1))])],
        )
        .unwrap();
        let f1b = JantzenFamily::new(
            sigma(),
            vec![row_param(&r, "rho0", vec![seg(&r, "rho0", rat_int(2), rat_int(2))])],
        )
        .unwrap();
        let f2a = JantzenFamily::new(
            sigma(),
            vec![row_param(&r, "rhoH", vec![seg(&r, "rhoH", rat(1, 2), rat(1, 2))])],
        )
        .unwrap();
        let f2b = JantzenFamily::new(
            sigma(),
            vec![row_param(&r, "rhoH", vec![seg(&r, "rhoH", rat(3, 2), rat(3, 2))])],
        )
        .unwrap();
        let f2c = JantzenFamily::new(
            sigma(),
            vec![row_param(&r, "rhoH", vec![seg(&r, "rhoH", rat(1, 2), rat(3, 2))])],
        )
        .unwrap();

        // both sides irreducible: a single glued term of multiplicity one
        let one = product_distribute(
            &FormalSum::singleton(f1a.clone(), 1),
            &FormalSum::singleton(f2a.clone(), 1),
        )
        .unwrap();
        assert_eq!(one.num_terms(), 1);
        assert_eq!(one.total(), 1);

        // 2 terms x 3 terms -> 6 glued terms with product multiplicities
        let mut s1 = FormalSum::zero();
        s1.add_term(f1a.clone(), 2);
        s1.add_term(f1b, 1);
        let mut s2 = FormalSum::zero();
        s2.add_term(f2a, 1);
        s2.add_term(f2b, 3);
        s2.add_term(f2c, 1);
        let six = product_distribute(&s1, &s2).unwrap();
        assert_eq!(six.num_terms(), 6);
        assert_eq!(six.total(), (2 + 1) * (1 + 3 + 1));

        // sigma alone on one side reduces to the other side
        let cusp = FormalSum::singleton(JantzenFamily::cuspidal(sigma()), 1);
        assert_eq!(product_distribute(&s1, &cusp).unwrap(), s1);

        // mismatched sigma is an error
        let bad = FormalSum::singleton(JantzenFamily::cuspidal(SigmaSupport::new("t", 0)), 1);
        assert!(product_distribute(&s1, &bad).is_err());
    }

    #[test]
    fn trivial_decomposition_only_for_unit() {
        let r = reg();
        let gamma = JantzenFamily::cuspidal(sigma());
        assert!(trivial_induction_decomposition(&StandardGL::unit(), &gamma).is_some());
        let beta = StandardGL::single(seg(&r, "rho0", rat_int(0), rat_int(0)));
        assert!(trivial_induction_decomposition(&beta, &gamma).is_none());
    }

    #[test]
    fn mu_glue_bilinearity_and_consistency() {
        let r = reg();
        // gluing against a trivial side keeps the other side, with the
        // right factors glued
        let beta1 = StandardGL::single(seg(&r, "rho0", rat_int(0), rat_int(1)));
        let beta2 = StandardGL::single(seg(&r, "rhoH", rat(1, 2), rat(1, 2)));
        let side1 = mu_star_standard(&beta1, &sigma());
        let side2 = mu_star_standard(&beta2, &sigma());
        let glued = mu_glue(&side1, &side2).unwrap();
        let direct = mu_star_standard(&beta1.concat(&beta2), &sigma());
        assert_eq!(glued, direct);

        let trivial = FormalSum::singleton(
            (StandardGL::unit(), ClassicalStandard::cuspidal(sigma())),
            1,
        );
        assert_eq!(mu_glue(&side1, &trivial).unwrap(), side1);

        // two-by-two bilinearity
        let mut a = FormalSum::zero();
        a.add_term(
            (StandardGL::unit(), ClassicalStandard::new(beta1.clone(), sigma())),
            1,
        );
        a.add_term((beta1.clone(), ClassicalStandard::cuspidal(sigma())), 1);
        let mut b = FormalSum::zero();
        b.add_term(
            (StandardGL::unit(), ClassicalStandard::new(beta2.clone(), sigma())),
            1,
        );
        b.add_term((beta2.clone(), ClassicalStandard::cuspidal(sigma())), 1);
        assert_eq!(mu_glue(&a, &b).unwrap().num_terms(), 4);

        // overlapping eta lines are rejected
        let same_line = mu_star_standard(&beta1, &sigma());
        assert!(mu_glue(
            &same_line.filter(|(l, _)| !l.is_unit()),
            &same_line.filter(|(l, _)| !l.is_unit())
        )
        .is_err());
    }

    #[test]
    fn tempered_flags() {
        let r = reg();
        let ds_param = LanglandsParam::tempered_only(
            TemperedParam::new(
                DiscreteSeriesParam::new(
                    r.get("rho0").unwrap(),
                    Multisegment::from_segments([seg(&r, "rho0", rat_int(0), rat_int(1))]),
                    EpsilonRecord::empty(),
                    sigma(),
                )
                .unwrap(),
                vec![],
                Multisegment::empty(),
            )
            .unwrap(),
        );
        let fam = JantzenFamily::new(sigma(), vec![ds_param]).unwrap();
        let flags = tempered_glued(&fam);
        assert!(flags.tempered && flags.square_integrable);

        let with_rows = two_line_family(&r);
        let flags2 = tempered_glued(&with_rows);
        assert!(!flags2.tempered && !flags2.square_integrable);

        let empty = tempered_glued(&JantzenFamily::cuspidal(sigma()));
        assert!(empty.tempered && empty.square_integrable);
    }

    #[test]
    fn assoc_on_small_families() {
        let r = reg();
        let fam = two_line_family(&r);
        assert!(assoc_check(
            &fam,
            &line_set(&r, &["rho0"]),
            &line_set(&r, &["rhoH"]),
            &line_set(&r, &["tau"]),
        )
        .unwrap());
        // one line with both other parts empty
        let single = JantzenFamily::new(
            sigma(),
            vec![row_param(&r, "rho0", vec![seg(&r, "rho0", rat_int(1), rat_int(1))])],
        )
        .unwrap();
        assert!(assoc_check(
            &single,
            &line_set(&r, &["rho0"]),
            &LineSet::empty(),
            &LineSet::empty(),
        )
        .unwrap());
        // overlapping parts are an error
        assert!(assoc_check(
            &fam,
            &line_set(&r, &["rho0"]),
            &line_set(&r, &["rho0"]),
            &LineSet::empty(),
        )
        .is_err());
    }

    #[test]
    fn lemma_nonzero_examples() {
        let r = reg();
        let beta = StandardGL::single(seg(&r, "rho0", rat_int(0), rat_int(0)));
        assert!(lemma_nonzero_check(&beta, &sigma(), &line_set(&r, &["rho0"])));
        assert!(lemma_nonzero_check(&StandardGL::unit(), &sigma(), &line_set(&r, &["rho0"])));
        // the trivial-left term survives even when the part misses the line
        assert!(lemma_nonzero_check(&beta, &sigma(), &line_set(&r, &["rhoH"])));
    }

    #[test]
    fn steinberg_classification_examples() {
        let r = reg();
        let line = r.get("rhoH").unwrap();
        // anchored block for n = 2, alpha = 1/2
        let st = LanglandsParam::tempered_only(
            TemperedParam::new(
                DiscreteSeriesParam::new(
                    line.clone(),
                    Multisegment::from_segments([seg(&r, "rhoH", rat(1, 2), rat(3, 2))]),
                    EpsilonRecord::empty(),
                    sigma(),
                )
                .unwrap(),
                vec![],
                Multisegment::empty(),
            )
            .unwrap(),
        );
        assert_eq!(classify_steinberg(&st, 2).unwrap(), SteinbergClass::Steinberg);

        let dual = steinberg_dual_shape(&line, sigma(), 2).unwrap();
        assert_eq!(
            classify_steinberg(&dual, 2).unwrap(),
            SteinbergClass::DualCandidate
        );

        // wrong support gates to Other
        let off = row_param(&r, "rhoH", vec![seg(&r, "rhoH", rat(5, 2), rat(5, 2))]);
        assert_eq!(classify_steinberg(&off, 2).unwrap(), SteinbergClass::Other);

        // n = 0 is rejected
        assert!(classify_steinberg(&st, 0).is_err());
    }

    #[test]
    fn glued_display_groups_by_exponent() {
        let r = reg();
        let fam = JantzenFamily::new(
            sigma(),
            vec![
                row_param(
                    &r,
                    "rho0",
                    vec![
                        seg(&r, "rho0", rat_int(1), rat_int(1)),
                        seg(&r, "rho0", rat_int(2), rat_int(2)),
                    ],
                ),
                row_param(&r, "rhoH", vec![seg(&r, "rhoH", rat(1, 2), rat(3, 2))]),
            ],
        )
        .unwrap();
        let rows = glued_langlands_rows(&fam);
        let exps: Vec<Rat> = rows.iter().map(|(e, _)| *e).collect();
        assert_eq!(exps, vec![rat_int(2), rat_int(1)]);
        // exponent 1 groups the rho0 row with the rhoH row
        assert_eq!(rows[1].1.len(), 2);
    }
}
