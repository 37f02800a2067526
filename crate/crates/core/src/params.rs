//! Layered parameters for irreducibles of classical groups.
//!
//! On one self-dual cuspidal line an irreducible is described in three
//! layers: a discrete-series parameter (Jordan blocks in `alpha + Z` plus a
//! partial sign record), a tempered layer on top of it (signed reducing
//! blocks and symmetric extra segments), and finally Langlands rows with
//! strictly positive exponents. A [`JantzenFamily`] stores a classical
//! irreducible natively as its tuple of per-line parameters together with
//! the shared partial cuspidal support `sigma`.
//!
//! The sign record `epsilon` is carried verbatim as opaque data keyed by
//! numeric spans; only its domain shape is validated, admissibility is not
//! modeled.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::gl::{big_m_star, FormalSum, Multisegment, Segment, Span, StandardGL};
use crate::lines::{CuspidalSymbol, LineSet, PointMultiset};
use crate::rat::{self, Rat};

/// The partial cuspidal support: an opaque classical cuspidal token with
/// its rank.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SigmaSupport {
    pub id: String,
    pub rank: u64,
}

impl SigmaSupport {
    pub fn new(id: &str, rank: u64) -> Self {
        SigmaSupport {
            id: id.to_string(),
            rank,
        }
    }
}

impl fmt::Debug for SigmaSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(r={})", self.id, self.rank)
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn as_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn from_i8(v: i8) -> Result<Sign> {
        match v {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            _ => Err(Error::InvalidParam(format!("sign must be 1 or -1, got {v}"))),
        }
    }
}

/// Partial sign data on Jordan blocks and block pairs, keyed by numeric
/// spans so it is independent of the particular symbol carrying the blocks.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct EpsilonRecord {
    blocks: BTreeMap<Span, Sign>,
    pairs: BTreeMap<(Span, Span), Sign>,
}

impl EpsilonRecord {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn set_block(&mut self, span: Span, sign: Sign) {
        self.blocks.insert(span, sign);
    }

    pub fn set_pair(&mut self, a: Span, b: Span, sign: Sign) {
        let key = if a <= b { (a, b) } else { (b, a) };
        self.pairs.insert(key, sign);
    }

    pub fn blocks(&self) -> impl Iterator<Item = (&Span, Sign)> {
        self.blocks.iter().map(|(s, &v)| (s, v))
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&(Span, Span), Sign)> {
        self.pairs.iter().map(|(s, &v)| (s, v))
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty() && self.pairs.is_empty()
    }

    fn validate_against(&self, jord: &Multisegment) -> Result<()> {
        for span in self.blocks.keys() {
            if !jord.contains_span(*span) {
                return Err(Error::InvalidParam(format!(
                    "epsilon is declared on {span} which is not a Jordan block"
                )));
            }
        }
        for (a, b) in self.pairs.keys() {
            if !jord.contains_span(*a) || !jord.contains_span(*b) {
                return Err(Error::InvalidParam(format!(
                    "epsilon pair ({a},{b}) leaves the Jordan blocks"
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Debug for EpsilonRecord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "eps{{")?;
        for (s, v) in &self.blocks {
            write!(f, "{s}:{:+}," , v.as_i8())?;
        }
        for ((a, b), v) in &self.pairs {
            write!(f, "({a},{b}):{:+},", v.as_i8())?;
        }
        write!(f, "}}")
    }
}

/// Discrete-series layer: Jordan blocks in `alpha + Z` on a self-dual line
/// plus the sign record. A trivial layer (no blocks, no signs) stands for
/// `sigma` itself and is allowed on any line.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DiscreteSeriesParam {
    line: CuspidalSymbol,
    jord: Multisegment,
    eps: EpsilonRecord,
    sigma: SigmaSupport,
}

impl DiscreteSeriesParam {
    pub fn new(
        line: CuspidalSymbol,
        jord: Multisegment,
        eps: EpsilonRecord,
        sigma: SigmaSupport,
    ) -> Result<Self> {
        let nontrivial = !jord.is_empty() || !eps.is_empty();
        let line = if nontrivial { line } else { line.line_symbol() };
        if nontrivial && !line.is_self_dual() {
            return Err(Error::NotSelfDual(line.id().to_string()));
        }
        let alpha = line.alpha();
        for seg in jord.iter() {
            if seg.cusp() != &line {
                return Err(Error::LineMismatch(format!(
                    "Jordan block {seg:?} is not on line {}",
                    line.id()
                )));
            }
            if !(seg.b() - alpha).is_integer() {
                return Err(Error::InvalidParam(format!(
                    "Jordan block {seg:?} does not lie in {} + Z",
                    rat::format_rat(alpha)
                )));
            }
        }
        if jord.has_duplicates() {
            return Err(Error::InvalidParam("repeated Jordan block".into()));
        }
        eps.validate_against(&jord)?;
        Ok(DiscreteSeriesParam {
            line,
            jord,
            eps,
            sigma,
        })
    }

    pub fn trivial(line: CuspidalSymbol, sigma: SigmaSupport) -> Self {
        DiscreteSeriesParam {
            line: line.line_symbol(),
            jord: Multisegment::empty(),
            eps: EpsilonRecord::empty(),
            sigma,
        }
    }

    pub fn line(&self) -> &CuspidalSymbol {
        &self.line
    }

    pub fn jord(&self) -> &Multisegment {
        &self.jord
    }

    pub fn eps(&self) -> &EpsilonRecord {
        &self.eps
    }

    pub fn sigma(&self) -> &SigmaSupport {
        &self.sigma
    }

    pub fn is_trivial(&self) -> bool {
        self.jord.is_empty() && self.eps.is_empty()
    }
}

impl fmt::Debug for DiscreteSeriesParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ds({}; jord={:?})", self.line.id(), self.jord)
    }
}

/// Tempered layer: a discrete-series base, signed reducing blocks, and
/// symmetric extra segments.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TemperedParam {
    ds: DiscreteSeriesParam,
    signed: Vec<(Segment, Sign)>,
    extra: Multisegment,
}

impl TemperedParam {
    pub fn new(
        ds: DiscreteSeriesParam,
        signed: Vec<(Segment, Sign)>,
        extra: Multisegment,
    ) -> Result<Self> {
        let nontrivial = !signed.is_empty() || !extra.is_empty();
        if nontrivial && !ds.line().is_self_dual() {
            return Err(Error::NotSelfDual(ds.line().id().to_string()));
        }
        let alpha = ds.line().alpha();
        let mut signed = signed;
        signed.sort();
        for w in signed.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidParam(format!(
                    "repeated signed block {:?}",
                    w[0].0
                )));
            }
        }
        for (seg, _) in &signed {
            if seg.cusp() != ds.line() {
                return Err(Error::LineMismatch(format!(
                    "signed block {seg:?} is not on line {}",
                    ds.line().id()
                )));
            }
            if !seg.is_symmetric() {
                return Err(Error::InvalidParam(format!(
                    "signed block {seg:?} is not symmetric about 0"
                )));
            }
            // the block must actually reduce against the discrete series
            if !seg.contains_exponent(alpha) || ds.jord().contains(seg) {
                return Err(Error::InvalidParam(format!(
                    "signed block {seg:?} does not reduce against the discrete series"
                )));
            }
        }
        for seg in extra.iter() {
            if seg.cusp() != ds.line() {
                return Err(Error::LineMismatch(format!(
                    "extra segment {seg:?} is not on line {}",
                    ds.line().id()
                )));
            }
            if !seg.is_symmetric() {
                return Err(Error::InvalidParam(format!(
                    "extra segment {seg:?} is not symmetric about 0"
                )));
            }
            let listed = ds.jord().contains(seg) || signed.iter().any(|(s, _)| s == seg);
            if !listed && seg.contains_exponent(alpha) {
                return Err(Error::InvalidParam(format!(
                    "extra segment {seg:?} neither appears among the blocks nor \
                     induces irreducibly"
                )));
            }
        }
        Ok(TemperedParam { ds, signed, extra })
    }

    pub fn trivial(line: CuspidalSymbol, sigma: SigmaSupport) -> Self {
        TemperedParam {
            ds: DiscreteSeriesParam::trivial(line, sigma),
            signed: Vec::new(),
            extra: Multisegment::empty(),
        }
    }

    pub fn ds(&self) -> &DiscreteSeriesParam {
        &self.ds
    }

    pub fn signed(&self) -> &[(Segment, Sign)] {
        &self.signed
    }

    pub fn extra(&self) -> &Multisegment {
        &self.extra
    }

    pub fn line(&self) -> &CuspidalSymbol {
        self.ds.line()
    }

    pub fn sigma(&self) -> &SigmaSupport {
        self.ds.sigma()
    }

    pub fn is_trivial(&self) -> bool {
        self.ds.is_trivial() && self.signed.is_empty() && self.extra.is_empty()
    }

    /// Blocks excluded by the reducibility test: Jordan blocks together
    /// with the signed blocks.
    fn is_block(&self, seg: &Segment) -> bool {
        self.ds.jord().contains(seg) || self.signed.iter().any(|(s, _)| s == seg)
    }

    /// Whether `delta(base) x| tau` reduces for this tempered `tau`: the
    /// base must be a symmetric segment on the same self-dual line, contain
    /// `alpha`, and appear neither among the blocks nor among the extra
    /// segments.
    pub fn induction_reducible(&self, base: &Segment) -> Result<bool> {
        if !base.cusp().same_line_as(self.line()) {
            return Err(Error::LineMismatch(format!(
                "{base:?} is not on line {}",
                self.line().id()
            )));
        }
        if !self.line().is_self_dual() {
            return Err(Error::NotSelfDual(self.line().id().to_string()));
        }
        if !base.is_symmetric() {
            return Err(Error::InvalidArgument(format!(
                "{base:?} is not symmetric about 0"
            )));
        }
        let alpha = self.line().alpha();
        Ok(base.contains_exponent(alpha) && !self.is_block(base) && !self.extra.contains(base))
    }

    /// Points contributed to the cuspidal support by this layer.
    pub fn gl_support(&self) -> PointMultiset {
        let mut out = PointMultiset::new();
        for seg in self.ds.jord().iter() {
            for p in seg.points() {
                out.add(p, 1);
            }
        }
        for (seg, _) in &self.signed {
            for p in seg.points() {
                out.add(p, 1);
            }
        }
        for seg in self.extra.iter() {
            for p in seg.points() {
                out.add(p, 1);
            }
        }
        out
    }

    pub fn gl_point_count(&self) -> u64 {
        self.ds.jord().point_count()
            + self.signed.iter().map(|(s, _)| s.card()).sum::<u64>()
            + self.extra.point_count()
    }
}

impl fmt::Debug for TemperedParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "temp({:?}", self.ds)?;
        if !self.signed.is_empty() {
            write!(f, "; signed=")?;
            f.debug_list()
                .entries(self.signed.iter().map(|(s, j)| (s, j.as_i8())))
                .finish()?;
        }
        if !self.extra.is_empty() {
            write!(f, "; extra={:?}", self.extra)?;
        }
        write!(f, ")")
    }
}

/// Langlands layer: rows with strictly positive exponents, sorted with
/// exponents nonincreasing (ties broken stably by symbol then endpoints),
/// over a tempered part on the same line.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LanglandsParam {
    neg: Vec<Segment>,
    tempered: TemperedParam,
}

fn sort_rows(rows: &mut [Segment]) {
    rows.sort_by(|a, b| {
        b.exponent()
            .cmp(&a.exponent())
            .then_with(|| a.cmp(b))
    });
}

impl LanglandsParam {
    pub fn new(rows: Vec<Segment>, tempered: TemperedParam) -> Result<Self> {
        for seg in &rows {
            if !seg.cusp().same_line_as(tempered.line()) {
                return Err(Error::LineMismatch(format!(
                    "row {seg:?} is not on line {}",
                    tempered.line().id()
                )));
            }
            if seg.exponent() <= Rat::from_integer(0) {
                return Err(Error::InvalidParam(format!(
                    "row {seg:?} has nonpositive exponent {}",
                    rat::format_rat(seg.exponent())
                )));
            }
        }
        let mut rows = rows;
        sort_rows(&mut rows);
        Ok(LanglandsParam { neg: rows, tempered })
    }

    pub fn tempered_only(tempered: TemperedParam) -> Self {
        LanglandsParam {
            neg: Vec::new(),
            tempered,
        }
    }

    /// Builds the parameter from rows that may carry nonpositive exponents:
    /// an exponent-negative row is replaced by its contragredient, which
    /// induces the same standard label. Exponent-zero rows are rejected.
    pub fn from_rows_normalized(rows: Vec<Segment>, tempered: TemperedParam) -> Result<Self> {
        let mut fixed = Vec::with_capacity(rows.len());
        for seg in rows {
            if seg.exponent() == Rat::from_integer(0) {
                return Err(Error::InvalidParam(format!(
                    "row {seg:?} has exponent zero and belongs to the tempered layer"
                )));
            }
            if seg.exponent() < Rat::from_integer(0) {
                fixed.push(seg.contragredient());
            } else {
                fixed.push(seg);
            }
        }
        LanglandsParam::new(fixed, tempered)
    }

    pub fn rows(&self) -> &[Segment] {
        &self.neg
    }

    pub fn tempered(&self) -> &TemperedParam {
        &self.tempered
    }

    pub fn line(&self) -> &CuspidalSymbol {
        self.tempered.line()
    }

    pub fn line_id(&self) -> &str {
        self.tempered.line().line_id()
    }

    pub fn sigma(&self) -> &SigmaSupport {
        self.tempered.sigma()
    }

    pub fn is_trivial(&self) -> bool {
        self.neg.is_empty() && self.tempered.is_trivial()
    }

    pub fn is_tempered(&self) -> bool {
        self.neg.is_empty()
    }

    pub fn is_square_integrable(&self) -> bool {
        self.is_tempered()
            && self.tempered.signed().is_empty()
            && self.tempered.extra().is_empty()
    }

    /// All line points of every layer.
    pub fn gl_support(&self) -> PointMultiset {
        let mut out = self.tempered.gl_support();
        for seg in &self.neg {
            for p in seg.points() {
                out.add(p, 1);
            }
        }
        out
    }

    pub fn gl_point_count(&self) -> u64 {
        self.tempered.gl_point_count() + self.neg.iter().map(Segment::card).sum::<u64>()
    }

    /// GL degree of the parameter, weighted by the line's degree unit.
    pub fn gl_degree(&self) -> u64 {
        self.gl_point_count() * self.line().degree_unit()
    }

    /// Degree of the underlying group: `rank(sigma)` plus the GL content.
    pub fn degree(&self) -> u64 {
        self.sigma().rank + self.gl_degree()
    }
}

impl fmt::Debug for LanglandsParam {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "L(")?;
        for seg in &self.neg {
            write!(f, "{seg:?},")?;
        }
        write!(f, "; {:?})", self.tempered)
    }
}

/// A classical irreducible stored natively as its tuple of per-line
/// parameters over a shared partial cuspidal support. Trivial per-line
/// entries are dropped, so the cuspidal `sigma` itself is the empty family.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct JantzenFamily {
    sigma: SigmaSupport,
    per_line: BTreeMap<String, LanglandsParam>,
}

impl JantzenFamily {
    pub fn new(sigma: SigmaSupport, params: Vec<LanglandsParam>) -> Result<Self> {
        let mut per_line = BTreeMap::new();
        for p in params {
            if p.sigma() != &sigma {
                return Err(Error::SigmaMismatch(
                    sigma.id.clone(),
                    p.sigma().id.clone(),
                ));
            }
            if p.is_trivial() {
                continue;
            }
            let key = p.line_id().to_string();
            if per_line.insert(key.clone(), p).is_some() {
                return Err(Error::InvalidParam(format!(
                    "two parameters on line {key}"
                )));
            }
        }
        Ok(JantzenFamily { sigma, per_line })
    }

    /// The cuspidal `sigma` itself.
    pub fn cuspidal(sigma: SigmaSupport) -> Self {
        JantzenFamily {
            sigma,
            per_line: BTreeMap::new(),
        }
    }

    pub fn sigma(&self) -> &SigmaSupport {
        &self.sigma
    }

    pub fn params(&self) -> impl Iterator<Item = &LanglandsParam> {
        self.per_line.values()
    }

    pub fn param_on(&self, line_id: &str) -> Option<&LanglandsParam> {
        self.per_line.get(line_id)
    }

    pub fn line_ids(&self) -> Vec<&str> {
        self.per_line.keys().map(String::as_str).collect()
    }

    pub fn num_lines(&self) -> usize {
        self.per_line.len()
    }

    pub fn is_cuspidal(&self) -> bool {
        self.per_line.is_empty()
    }

    /// Restriction to the lines of `part`; the partial cuspidal support is
    /// kept.
    pub fn restrict(&self, part: &LineSet) -> JantzenFamily {
        let per_line = self
            .per_line
            .iter()
            .filter(|(line, _)| part.contains_line_id(line))
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect();
        JantzenFamily {
            sigma: self.sigma.clone(),
            per_line,
        }
    }

    /// Union of two families on disjoint line sets over the same `sigma`.
    pub fn merge(&self, other: &JantzenFamily) -> Result<JantzenFamily> {
        if self.sigma != other.sigma {
            return Err(Error::SigmaMismatch(
                self.sigma.id.clone(),
                other.sigma.id.clone(),
            ));
        }
        let mut per_line = self.per_line.clone();
        for (k, v) in &other.per_line {
            if per_line.insert(k.clone(), v.clone()).is_some() {
                return Err(Error::InvalidParam(format!(
                    "families overlap on line {k}"
                )));
            }
        }
        Ok(JantzenFamily {
            sigma: self.sigma.clone(),
            per_line,
        })
    }

    /// Degree of the glued group: `rank(sigma)` plus all GL content.
    pub fn degree(&self) -> u64 {
        self.sigma.rank
            + self
                .per_line
                .values()
                .map(LanglandsParam::gl_degree)
                .sum::<u64>()
    }

    /// The infinitesimal-character data: every line point of every layer,
    /// together with `sigma`.
    pub fn cuspidal_support(&self) -> (PointMultiset, SigmaSupport) {
        let mut out = PointMultiset::new();
        for p in self.per_line.values() {
            out = out.merged(&p.gl_support());
        }
        (out, self.sigma.clone())
    }

    pub fn lines_as_set(&self) -> LineSet {
        LineSet::closure_of(self.per_line.values().map(|p| p.line().clone()))
    }
}

impl fmt::Debug for JantzenFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fam[{:?}", self.sigma)?;
        for (line, p) in &self.per_line {
            write!(f, "; {line}: {p:?}")?;
        }
        write!(f, "]")
    }
}

/// A classical standard-module label `beta x| sigma`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassicalStandard {
    pub gl: StandardGL,
    pub sigma: SigmaSupport,
}

impl ClassicalStandard {
    pub fn new(gl: StandardGL, sigma: SigmaSupport) -> Self {
        ClassicalStandard {
            gl: gl.canonical(),
            sigma,
        }
    }

    pub fn cuspidal(sigma: SigmaSupport) -> Self {
        ClassicalStandard {
            gl: StandardGL::unit(),
            sigma,
        }
    }
}

impl fmt::Debug for ClassicalStandard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.gl.is_unit() {
            write!(f, "{}", self.sigma.id)
        } else {
            write!(f, "{:?}x|{}", self.gl, self.sigma.id)
        }
    }
}

/// A term of the classical Jacquet-module sum: GL label tensor classical
/// standard label.
pub type MuTerm = (StandardGL, ClassicalStandard);

/// Geometric lemma for `beta x| sigma` at the standard level: every `M*`
/// term `tau (x) tau'` contributes `tau (x) (tau' x| sigma)`.
pub fn mu_star_standard(beta: &StandardGL, sigma: &SigmaSupport) -> FormalSum<MuTerm> {
    big_m_star(beta).map(|(l, r)| (l.clone(), ClassicalStandard::new(r.clone(), sigma.clone())))
}

/// The part of [`mu_star_standard`] whose classical side is exactly
/// `sigma`: the terms of `M*` with trivial right factor.
pub fn s_gl_standard(
    beta: &StandardGL,
    sigma: &SigmaSupport,
) -> FormalSum<(StandardGL, SigmaSupport)> {
    let mut out = FormalSum::zero();
    for ((l, r), m) in big_m_star(beta).iter() {
        if r.is_unit() {
            out.add_term((l.clone(), sigma.clone()), m);
        }
    }
    out
}

/// Infinitesimal-character convention for the generalized Steinberg
/// representation of rank `n` over `(rho, sigma)`: the `alpha`-anchored
/// interval `alpha, alpha+1, ..., alpha+n-1`, each point once. The anchor
/// convention is local to this operation.
pub fn steinberg_support(line: &CuspidalSymbol, n: u64) -> Result<PointMultiset> {
    if !line.is_self_dual() {
        return Err(Error::NotSelfDual(line.id().to_string()));
    }
    if n == 0 {
        return Err(Error::InvalidArgument(
            "Steinberg rank must be positive".into(),
        ));
    }
    let alpha = line.alpha();
    let mut out = PointMultiset::new();
    for k in 0..n {
        out.add(
            crate::lines::LinePoint::new(line.clone(), alpha + Rat::from_integer(k as i64)),
            1,
        );
    }
    Ok(out)
}

/// Contragredient of a family. Rows map through segmentwise contragredient
/// and are then re-expressed in Langlands normal form, which flips them
/// back onto positive exponents; Jordan and extra data are fixed setwise on
/// self-dual lines. The net effect is the canonical representative of the
/// same label, matching groups where every irreducible label is
/// contragredient-stable.
pub fn contragredient_family(family: &JantzenFamily) -> Result<JantzenFamily> {
    let mut params = Vec::new();
    for p in family.params() {
        let flipped: Vec<Segment> = p.rows().iter().map(Segment::contragredient).collect();
        let renormalized =
            LanglandsParam::from_rows_normalized(flipped, p.tempered().clone())?;
        params.push(renormalized);
    }
    JantzenFamily::new(family.sigma().clone(), params)
}
