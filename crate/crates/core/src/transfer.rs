//! Parameter transport between cuspidal pairs sharing one reducibility
//! exponent.
//!
//! Given two self-dual pairs `(rho1, sigma1)` and `(rho2, sigma2)` with the
//! same exponent `alpha`, every layer of a parameter on the first line is
//! re-keyed verbatim onto the second: Jordan blocks keep their numeric
//! spans, the sign record travels unchanged, signed blocks keep their
//! signs, and Langlands rows keep their endpoints. All validity predicates
//! read only `alpha` and numeric segment data, so re-validation after
//! transport cannot fail.
//!
//! At `alpha = 0` the transport is still deterministic but the context is
//! flagged: the sign conventions on the zero block admit no canonical
//! matching there.

use crate::error::{Error, Result};
use crate::gl::{Multisegment, Segment};
use crate::lines::CuspidalSymbol;
use crate::params::{
    DiscreteSeriesParam, LanglandsParam, SigmaSupport, TemperedParam,
};
use crate::rat::Rat;
use crate::unitarity::{is_unitarizable_generic, GenericParam};

/// A validated transfer context between two `(rho, sigma)` pairs with equal
/// `alpha`, both self-dual.
#[derive(Clone, Debug)]
pub struct LinePairContext {
    src: (CuspidalSymbol, SigmaSupport),
    dst: (CuspidalSymbol, SigmaSupport),
}

impl LinePairContext {
    pub fn new(
        src: (CuspidalSymbol, SigmaSupport),
        dst: (CuspidalSymbol, SigmaSupport),
    ) -> Result<Self> {
        for (sym, _) in [&src, &dst] {
            if !sym.is_self_dual() {
                return Err(Error::NotSelfDual(sym.id().to_string()));
            }
        }
        if src.0.alpha() != dst.0.alpha() {
            return Err(Error::AlphaMismatch(format!(
                "{} and {}",
                src.0.id(),
                dst.0.id()
            )));
        }
        Ok(LinePairContext { src, dst })
    }

    pub fn src_line(&self) -> &CuspidalSymbol {
        &self.src.0
    }

    pub fn dst_line(&self) -> &CuspidalSymbol {
        &self.dst.0
    }

    pub fn src_sigma(&self) -> &SigmaSupport {
        &self.src.1
    }

    pub fn dst_sigma(&self) -> &SigmaSupport {
        &self.dst.1
    }

    pub fn alpha(&self) -> Rat {
        self.src.0.alpha()
    }

    /// The transport in the opposite direction.
    pub fn inverse(&self) -> LinePairContext {
        LinePairContext {
            src: self.dst.clone(),
            dst: self.src.clone(),
        }
    }

    /// True when the sign conventions admit no canonical matching.
    pub fn alpha_zero_warning(&self) -> bool {
        self.alpha() == Rat::from_integer(0)
    }

    fn rekey(&self, seg: &Segment) -> Result<Segment> {
        if seg.cusp() != self.src_line() {
            return Err(Error::LineMismatch(format!(
                "{seg:?} is not on the source line {}",
                self.src_line().id()
            )));
        }
        Segment::new(self.dst_line().clone(), seg.b(), seg.e())
    }
}

/// Transports a discrete-series layer: same spans on the target line, the
/// sign record carried verbatim, the target partial cuspidal support.
pub fn transfer_ds(ctx: &LinePairContext, p: &DiscreteSeriesParam) -> Result<DiscreteSeriesParam> {
    if p.line() != ctx.src_line() && !p.is_trivial() {
        return Err(Error::LineMismatch(format!(
            "parameter lives on {}, context transports {}",
            p.line().id(),
            ctx.src_line().id()
        )));
    }
    let jord = Multisegment::from_segments(
        p.jord()
            .iter()
            .map(|s| ctx.rekey(s))
            .collect::<Result<Vec<_>>>()?,
    );
    DiscreteSeriesParam::new(
        ctx.dst_line().clone(),
        jord,
        p.eps().clone(),
        ctx.dst_sigma().clone(),
    )
}

/// Transports a tempered layer; failure of the re-validation would signal
/// an internal inconsistency, since the predicates read only `alpha` and
/// spans.
pub fn transfer_tempered(ctx: &LinePairContext, t: &TemperedParam) -> Result<TemperedParam> {
    let ds = transfer_ds(ctx, t.ds())?;
    let signed = t
        .signed()
        .iter()
        .map(|(s, j)| Ok((ctx.rekey(s)?, *j)))
        .collect::<Result<Vec<_>>>()?;
    let extra = Multisegment::from_segments(
        t.extra()
            .iter()
            .map(|s| ctx.rekey(s))
            .collect::<Result<Vec<_>>>()?,
    );
    TemperedParam::new(ds, signed, extra)
        .map_err(|e| Error::Internal(format!("transported tempered layer failed to validate: {e}")))
}

/// Transports a Langlands parameter: rows re-keyed, tempered layer
/// transported.
pub fn transfer_langlands(ctx: &LinePairContext, p: &LanglandsParam) -> Result<LanglandsParam> {
    let rows = p
        .rows()
        .iter()
        .map(|s| ctx.rekey(s))
        .collect::<Result<Vec<_>>>()?;
    let tempered = transfer_tempered(ctx, p.tempered())?;
    LanglandsParam::new(rows, tempered)
        .map_err(|e| Error::Internal(format!("transported parameter failed to validate: {e}")))
}

/// Transports a single-line generic label.
pub fn transfer_generic(ctx: &LinePairContext, p: &GenericParam) -> Result<GenericParam> {
    for d in p.deltas() {
        if d.cusp() != ctx.src_line() {
            return Err(Error::LineMismatch(format!(
                "delta {d:?} is not on the source line {}",
                ctx.src_line().id()
            )));
        }
    }
    if p.sigma() != ctx.src_sigma() {
        return Err(Error::SigmaMismatch(
            ctx.src_sigma().id.clone(),
            p.sigma().id.clone(),
        ));
    }
    let deltas = p
        .deltas()
        .iter()
        .map(|s| ctx.rekey(s))
        .collect::<Result<Vec<_>>>()?;
    let layers = p
        .tempered_layers()
        .map(|t| transfer_tempered(ctx, t))
        .collect::<Result<Vec<_>>>()?;
    GenericParam::new(deltas, layers, ctx.dst_sigma().clone())
}

/// The independence law as an executable check: the unitarizability
/// decision must agree before and after transport.
pub fn transfer_preserves_generic_unitarity(
    ctx: &LinePairContext,
    p: &GenericParam,
) -> Result<bool> {
    let (before, _) = is_unitarizable_generic(p)?;
    let (after, _) = is_unitarizable_generic(&transfer_generic(ctx, p)?)?;
    Ok(before == after)
}
