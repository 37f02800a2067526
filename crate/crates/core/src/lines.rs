//! Cuspidal symbols, twisted line points, and sets of cuspidal lines.
//!
//! A [`CuspidalSymbol`] is an opaque token standing for an irreducible
//! unitary cuspidal representation of a general linear group. It carries a
//! self-duality flag, the contragredient partner for non-self-dual symbols,
//! and the reducibility exponent `alpha` paired with the ambient classical
//! cuspidal support. Symbols are interned in a [`Registry`]; handles are
//! cheap to clone and compare by id.
//!
//! The line of a symbol `rho` consists of all twists `nu^x rho` together
//! with the twists of the contragredient, so a line is identified by the
//! unordered pair `{rho, rho~}`. [`LineSet`] stores finite unions of such
//! lines; a partition of the ambient support into line sets is regular when
//! each part is closed under contragredient and no unit shift of a support
//! point crosses parts.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use num_traits::One;

use crate::error::{Error, Result};
use crate::rat::{self, Rat};

/// Construction data for one registry entry.
#[derive(Debug, Clone)]
pub struct SymbolSpec {
    pub id: String,
    pub self_dual: bool,
    pub alpha: Rat,
    pub partner: Option<String>,
    /// GL-degree contributed by one twist of this symbol; bookkeeping only.
    pub degree_unit: u64,
}

impl SymbolSpec {
    pub fn self_dual(id: &str, alpha: Rat) -> Self {
        SymbolSpec {
            id: id.to_string(),
            self_dual: true,
            alpha,
            partner: None,
            degree_unit: 1,
        }
    }

    pub fn with_partner(id: &str, partner: &str, alpha: Rat) -> Self {
        SymbolSpec {
            id: id.to_string(),
            self_dual: false,
            alpha,
            partner: Some(partner.to_string()),
            degree_unit: 1,
        }
    }
}

struct SymbolRec {
    id: String,
    self_dual: bool,
    alpha: Rat,
    /// Index of the contragredient partner; own index when self-dual.
    partner: usize,
    degree_unit: u64,
}

struct RegInner {
    recs: Vec<SymbolRec>,
    by_id: BTreeMap<String, usize>,
}

/// Interned table of cuspidal symbols. All values flowing through one
/// computation must come from a single registry.
#[derive(Clone)]
pub struct Registry {
    inner: Arc<RegInner>,
}

impl Registry {
    pub fn new(specs: Vec<SymbolSpec>) -> Result<Registry> {
        let mut by_id = BTreeMap::new();
        for (ix, s) in specs.iter().enumerate() {
            if s.id.is_empty() {
                return Err(Error::Registry("empty symbol id".into()));
            }
            if by_id.insert(s.id.clone(), ix).is_some() {
                return Err(Error::Registry(format!("duplicate symbol id `{}`", s.id)));
            }
        }
        let mut recs = Vec::with_capacity(specs.len());
        for s in &specs {
            if !rat::is_half_integral(s.alpha) || !rat::is_nonnegative(s.alpha) {
                return Err(Error::Registry(format!(
                    "symbol `{}`: alpha must be a nonnegative half-integer, got {}",
                    s.id,
                    rat::format_rat(s.alpha)
                )));
            }
            if s.degree_unit == 0 {
                return Err(Error::Registry(format!(
                    "symbol `{}`: degree unit must be positive",
                    s.id
                )));
            }
            let partner = match (&s.partner, s.self_dual) {
                (None, true) => by_id[&s.id],
                (Some(_), true) => {
                    return Err(Error::Registry(format!(
                        "symbol `{}` is self-dual but declares a partner",
                        s.id
                    )))
                }
                (None, false) => {
                    return Err(Error::Registry(format!(
                        "symbol `{}` is not self-dual and declares no partner",
                        s.id
                    )))
                }
                (Some(p), false) => {
                    if p == &s.id {
                        return Err(Error::Registry(format!(
                            "symbol `{}` cannot partner itself",
                            s.id
                        )));
                    }
                    *by_id
                        .get(p)
                        .ok_or_else(|| Error::UnknownSymbol(p.clone()))?
                }
            };
            recs.push(SymbolRec {
                id: s.id.clone(),
                self_dual: s.self_dual,
                alpha: s.alpha,
                partner,
                degree_unit: s.degree_unit,
            });
        }
        // Partnering must be involutive with matching exponents.
        for (ix, r) in recs.iter().enumerate() {
            let p = &recs[r.partner];
            if p.partner != ix {
                return Err(Error::Registry(format!(
                    "partnering of `{}` and `{}` is not involutive",
                    r.id, p.id
                )));
            }
            if p.alpha != r.alpha {
                return Err(Error::Registry(format!(
                    "partners `{}` and `{}` carry different alpha",
                    r.id, p.id
                )));
            }
        }
        Ok(Registry {
            inner: Arc::new(RegInner { recs, by_id }),
        })
    }

    pub fn get(&self, id: &str) -> Result<CuspidalSymbol> {
        let ix = *self
            .inner
            .by_id
            .get(id)
            .ok_or_else(|| Error::UnknownSymbol(id.to_string()))?;
        Ok(CuspidalSymbol {
            reg: self.inner.clone(),
            ix,
        })
    }

    pub fn symbols(&self) -> Vec<CuspidalSymbol> {
        (0..self.inner.recs.len())
            .map(|ix| CuspidalSymbol {
                reg: self.inner.clone(),
                ix,
            })
            .collect()
    }

    pub fn len(&self) -> usize {
        self.inner.recs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.recs.is_empty()
    }
}

impl fmt::Debug for Registry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list()
            .entries(self.inner.recs.iter().map(|r| &r.id))
            .finish()
    }
}

/// Handle to one interned cuspidal symbol. Equality, ordering, and hashing
/// go through the id.
#[derive(Clone)]
pub struct CuspidalSymbol {
    reg: Arc<RegInner>,
    ix: usize,
}

impl CuspidalSymbol {
    fn rec(&self) -> &SymbolRec {
        &self.reg.recs[self.ix]
    }

    pub fn id(&self) -> &str {
        &self.rec().id
    }

    pub fn is_self_dual(&self) -> bool {
        self.rec().self_dual
    }

    pub fn alpha(&self) -> Rat {
        self.rec().alpha
    }

    pub fn degree_unit(&self) -> u64 {
        self.rec().degree_unit
    }

    /// The contragredient symbol; `self` when self-dual.
    pub fn partner(&self) -> CuspidalSymbol {
        CuspidalSymbol {
            reg: self.reg.clone(),
            ix: self.rec().partner,
        }
    }

    pub fn partner_id(&self) -> &str {
        &self.reg.recs[self.rec().partner].id
    }

    /// Canonical identifier of the line `{rho, rho~}`: the smaller of the
    /// two symbol ids.
    pub fn line_id(&self) -> &str {
        self.id().min(self.partner_id())
    }

    /// The canonical representative symbol of the line.
    pub fn line_symbol(&self) -> CuspidalSymbol {
        if self.id() <= self.partner_id() {
            self.clone()
        } else {
            self.partner()
        }
    }

    pub fn same_line_as(&self, other: &CuspidalSymbol) -> bool {
        self.line_id() == other.line_id()
    }
}

impl PartialEq for CuspidalSymbol {
    fn eq(&self, other: &Self) -> bool {
        self.id() == other.id()
    }
}

impl Eq for CuspidalSymbol {}

impl PartialOrd for CuspidalSymbol {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for CuspidalSymbol {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.id().cmp(other.id())
    }
}

impl std::hash::Hash for CuspidalSymbol {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.id().hash(state);
    }
}

impl fmt::Debug for CuspidalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

impl fmt::Display for CuspidalSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id())
    }
}

/// A twist `nu^x rho`: one point of a cuspidal line.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinePoint {
    pub cusp: CuspidalSymbol,
    pub x: Rat,
}

impl LinePoint {
    pub fn new(cusp: CuspidalSymbol, x: Rat) -> Self {
        LinePoint { cusp, x }
    }

    /// `(rho, x) -> (rho~, -x)`; an involution.
    pub fn contragredient(&self) -> LinePoint {
        LinePoint::new(self.cusp.partner(), -self.x)
    }

    /// True when both points lie on the same line `{rho, rho~}`, whatever
    /// the twists.
    pub fn same_line(&self, other: &LinePoint) -> bool {
        self.cusp.same_line_as(&other.cusp)
    }
}

impl fmt::Debug for LinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.cusp.id(), rat::format_rat(self.x))
    }
}

impl fmt::Display for LinePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "nu^{} {}", rat::format_rat(self.x), self.cusp.id())
    }
}

/// Finite multiset of line points, ordered canonically.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct PointMultiset {
    points: BTreeMap<LinePoint, u64>,
}

impl PointMultiset {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, p: LinePoint, mult: u64) {
        if mult > 0 {
            *self.points.entry(p).or_insert(0) += mult;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&LinePoint, u64)> {
        self.points.iter().map(|(p, &m)| (p, m))
    }

    pub fn contains(&self, p: &LinePoint) -> bool {
        self.points.contains_key(p)
    }

    pub fn multiplicity(&self, p: &LinePoint) -> u64 {
        self.points.get(p).copied().unwrap_or(0)
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// Total number of points counted with multiplicity.
    pub fn total(&self) -> u64 {
        self.points.values().sum()
    }

    pub fn merged(mut self, other: &PointMultiset) -> PointMultiset {
        for (p, m) in other.iter() {
            self.add(p.clone(), m);
        }
        self
    }

    /// Image under pointwise contragredient.
    pub fn contragredient(&self) -> PointMultiset {
        let mut out = PointMultiset::new();
        for (p, m) in self.iter() {
            out.add(p.contragredient(), m);
        }
        out
    }

    /// Canonical form modulo the pointwise flip `(rho, x) ~ (rho~, -x)`;
    /// classical labels do not distinguish the two representatives.
    pub fn flip_canonical(&self) -> PointMultiset {
        let mut out = PointMultiset::new();
        for (p, m) in self.iter() {
            let q = p.contragredient();
            out.add(std::cmp::min(p.clone(), q), m);
        }
        out
    }
}

impl fmt::Debug for PointMultiset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map()
            .entries(self.points.iter())
            .finish()
    }
}

/// A finite set of cuspidal symbols, normally closed under partnering so
/// that it represents a union of whole lines.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct LineSet {
    syms: BTreeSet<CuspidalSymbol>,
}

impl LineSet {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Union of the whole lines through the given symbols: each symbol is
    /// inserted together with its partner.
    pub fn closure_of<I: IntoIterator<Item = CuspidalSymbol>>(iter: I) -> LineSet {
        let mut syms = BTreeSet::new();
        for s in iter {
            syms.insert(s.partner());
            syms.insert(s);
        }
        LineSet { syms }
    }

    /// Raw symbol set without closure. Degenerate parts built this way are
    /// reported non-regular rather than silently completed.
    pub fn from_raw_symbols<I: IntoIterator<Item = CuspidalSymbol>>(iter: I) -> LineSet {
        LineSet {
            syms: iter.into_iter().collect(),
        }
    }

    /// Checked constructor for parts that must already be unions of whole
    /// lines; rejects a non-self-dual symbol listed without its partner.
    pub fn from_symbols_strict<I: IntoIterator<Item = CuspidalSymbol>>(iter: I) -> Result<LineSet> {
        let set = LineSet::from_raw_symbols(iter);
        for s in &set.syms {
            if !set.syms.contains(&s.partner()) {
                return Err(Error::InvalidParam(format!(
                    "line set lists `{}` without its partner `{}`",
                    s.id(),
                    s.partner_id()
                )));
            }
        }
        Ok(set)
    }

    pub fn contains_symbol(&self, s: &CuspidalSymbol) -> bool {
        self.syms.contains(s)
    }

    /// True when the whole line of `s` belongs to the set.
    pub fn contains_line_of(&self, s: &CuspidalSymbol) -> bool {
        self.syms.contains(s) && self.syms.contains(&s.partner())
    }

    pub fn contains_line_id(&self, line_id: &str) -> bool {
        self.syms.iter().any(|s| s.line_id() == line_id)
    }

    pub fn symbols(&self) -> impl Iterator<Item = &CuspidalSymbol> {
        self.syms.iter()
    }

    pub fn line_ids(&self) -> BTreeSet<&str> {
        self.syms.iter().map(|s| s.line_id()).collect()
    }

    pub fn is_empty(&self) -> bool {
        self.syms.is_empty()
    }

    pub fn is_self_contragredient(&self) -> bool {
        self.syms.iter().all(|s| self.syms.contains(&s.partner()))
    }

    pub fn is_disjoint_from(&self, other: &LineSet) -> bool {
        self.syms.is_disjoint(&other.syms)
    }

    pub fn union(&self, other: &LineSet) -> LineSet {
        LineSet {
            syms: self.syms.union(&other.syms).cloned().collect(),
        }
    }
}

impl fmt::Debug for LineSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set()
            .entries(self.syms.iter().map(|s| s.id()))
            .finish()
    }
}

/// Decides regularity of the partition `(x1, x2)` relative to a support
/// multiset. Overlapping parts are an error; a part that is not closed
/// under contragredient makes the partition non-regular. The unit-shift
/// interaction check is vacuous for parts that are unions of whole lines
/// but is evaluated literally so degenerate inputs answer honestly.
pub fn is_regular_partition(
    x1: &LineSet,
    x2: &LineSet,
    support: &PointMultiset,
) -> Result<bool> {
    if !x1.is_disjoint_from(x2) {
        let shared: Vec<&str> = x1
            .symbols()
            .filter(|s| x2.contains_symbol(s))
            .map(|s| s.id())
            .collect();
        return Err(Error::OverlappingParts(shared.join(", ")));
    }
    if !x1.is_self_contragredient() || !x2.is_self_contragredient() {
        return Ok(false);
    }
    for (p, _) in support.iter() {
        for (a, b) in [(x1, x2), (x2, x1)] {
            if a.contains_symbol(&p.cusp) {
                let shifted = LinePoint::new(p.cusp.clone(), p.x + Rat::one());
                let contra = p.contragredient();
                if b.contains_symbol(&shifted.cusp) || b.contains_symbol(&contra.cusp) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
