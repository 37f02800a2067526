//! Segments, standard GL modules, and the exact comultiplications.
//!
//! A [`Segment`] `[b, e]` on a cuspidal symbol `rho` stands for the
//! essentially-square-integrable representation `delta([b,e])` attached to
//! the twists `nu^b rho, ..., nu^e rho`. A [`StandardGL`] is an ordered
//! product of such deltas; the empty product is the unit of the
//! representation ring. Formal sums over pairs of standard labels are the
//! Grothendieck-group values that every identity in this crate is stated
//! against.
//!
//! Two comultiplications are implemented:
//!
//! * [`m_star`] splits each delta over its right truncations,
//!   `delta([b,e]) -> sum_c delta([c+1,e]) (x) delta([b,c])`, extended
//!   multiplicatively with componentwise concatenation;
//! * [`big_m_star`] is the variant entering classical induction, which in
//!   addition peels an initial piece onto the contragredient line with
//!   negated coordinates.
//!
//! Formal-sum terms are canonicalized (factors sorted by line, symbol, then
//! endpoints) before merging, so multiplicities are always compared on the
//! canonical form.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_traits::One;

use crate::error::{Error, Result};
use crate::lines::{CuspidalSymbol, LinePoint, LineSet, PointMultiset};
use crate::rat::{self, Rat};

/// Line-free numeric span `[b, e]`; used where segment data must be carried
/// independently of the symbol it sits on (epsilon records, transfer).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Span {
    pub b: Rat,
    pub e: Rat,
}

impl fmt::Debug for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", rat::format_rat(self.b), rat::format_rat(self.e))
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", rat::format_rat(self.b), rat::format_rat(self.e))
    }
}

/// The segment `[b, e]` on a cuspidal symbol; `e - b` is a nonnegative
/// integer and the segment has `e - b + 1` points.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Segment {
    cusp: CuspidalSymbol,
    b: Rat,
    e: Rat,
}

impl Segment {
    pub fn new(cusp: CuspidalSymbol, b: Rat, e: Rat) -> Result<Segment> {
        let len = e - b;
        if !len.is_integer() || len < Rat::from_integer(0) {
            return Err(Error::BadSegment(format!(
                "[{},{}] on {}: endpoints must differ by a nonnegative integer",
                rat::format_rat(b),
                rat::format_rat(e),
                cusp.id()
            )));
        }
        Ok(Segment { cusp, b, e })
    }

    pub fn cusp(&self) -> &CuspidalSymbol {
        &self.cusp
    }

    pub fn b(&self) -> Rat {
        self.b
    }

    pub fn e(&self) -> Rat {
        self.e
    }

    pub fn span(&self) -> Span {
        Span { b: self.b, e: self.e }
    }

    pub fn card(&self) -> u64 {
        ((self.e - self.b).to_integer() + 1) as u64
    }

    /// The exponent `e(delta) = (b + e) / 2`.
    pub fn exponent(&self) -> Rat {
        (self.b + self.e) / Rat::from_integer(2)
    }

    pub fn translate(&self, t: Rat) -> Segment {
        Segment {
            cusp: self.cusp.clone(),
            b: self.b + t,
            e: self.e + t,
        }
    }

    /// The exponent-zero translate `delta^u`.
    pub fn centered(&self) -> Segment {
        self.translate(-self.exponent())
    }

    /// `[b,e]` on `rho` goes to `[-e,-b]` on the partner symbol.
    pub fn contragredient(&self) -> Segment {
        Segment {
            cusp: self.cusp.partner(),
            b: -self.e,
            e: -self.b,
        }
    }

    /// True when `x` is one of the points `b, b+1, ..., e`.
    pub fn contains_exponent(&self, x: Rat) -> bool {
        self.b <= x && x <= self.e && (x - self.b).is_integer()
    }

    /// `-Delta = Delta`, i.e. `b = -e`.
    pub fn is_symmetric(&self) -> bool {
        self.b == -self.e
    }

    pub fn points(&self) -> impl Iterator<Item = LinePoint> + '_ {
        (0..self.card()).map(move |k| {
            LinePoint::new(self.cusp.clone(), self.b + Rat::from_integer(k as i64))
        })
    }

    /// Zelevinsky linkage: same symbol, union is again a segment, and
    /// neither contains the other. Segments on different symbols are never
    /// linked; callers compare segments in matching symbol coordinates.
    pub fn linked(&self, other: &Segment) -> bool {
        if self.cusp != other.cusp {
            return false;
        }
        let (first, second) = if (self.b, self.e) <= (other.b, other.e) {
            (self, other)
        } else {
            (other, self)
        };
        // union a segment: no gap between the pieces
        if second.b > first.e + Rat::one() || !(second.b - first.b).is_integer() {
            return false;
        }
        // neither contains the other
        !(first.b <= second.b && second.e <= first.e)
            && !(second.b <= first.b && first.e <= second.e)
    }
}

impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Segment {
    fn cmp(&self, other: &Self) -> Ordering {
        self.cusp
            .line_id()
            .cmp(other.cusp.line_id())
            .then_with(|| self.cusp.id().cmp(other.cusp.id()))
            .then_with(|| self.b.cmp(&other.b))
            .then_with(|| self.e.cmp(&other.e))
    }
}

impl fmt::Debug for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{},{}]@{}",
            rat::format_rat(self.b),
            rat::format_rat(self.e),
            self.cusp.id()
        )
    }
}

impl fmt::Display for Segment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// A finite multiset of segments kept in canonical order.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Multisegment {
    segs: Vec<Segment>,
}

impl Multisegment {
    pub fn empty() -> Self {
        Self::default()
    }

    pub fn from_segments<I: IntoIterator<Item = Segment>>(iter: I) -> Multisegment {
        let mut segs: Vec<Segment> = iter.into_iter().collect();
        segs.sort();
        Multisegment { segs }
    }

    pub fn as_slice(&self) -> &[Segment] {
        &self.segs
    }

    pub fn iter(&self) -> impl Iterator<Item = &Segment> {
        self.segs.iter()
    }

    pub fn contains(&self, s: &Segment) -> bool {
        self.segs.binary_search(s).is_ok()
    }

    /// True when some element has the same numeric span (symbol ignored).
    pub fn contains_span(&self, span: Span) -> bool {
        self.segs.iter().any(|s| s.span() == span)
    }

    pub fn len(&self) -> usize {
        self.segs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segs.is_empty()
    }

    pub fn has_duplicates(&self) -> bool {
        self.segs.windows(2).any(|w| w[0] == w[1])
    }

    pub fn point_count(&self) -> u64 {
        self.segs.iter().map(Segment::card).sum()
    }
}

impl fmt::Debug for Multisegment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.segs.iter()).finish()
    }
}

/// An ordered product `delta(D_1) x ... x delta(D_k)`; the empty list is
/// the unit `1`. Factor order is kept as given; formal-sum builders
/// canonicalize with [`StandardGL::canonical`] before merging terms.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct StandardGL {
    factors: Vec<Segment>,
}

impl StandardGL {
    pub fn unit() -> Self {
        Self::default()
    }

    pub fn from_factors<I: IntoIterator<Item = Segment>>(iter: I) -> StandardGL {
        StandardGL {
            factors: iter.into_iter().collect(),
        }
    }

    pub fn single(seg: Segment) -> StandardGL {
        StandardGL {
            factors: vec![seg],
        }
    }

    pub fn factors(&self) -> &[Segment] {
        &self.factors
    }

    pub fn is_unit(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factors sorted canonically; the representative used inside formal
    /// sums.
    pub fn canonical(&self) -> StandardGL {
        let mut factors = self.factors.clone();
        factors.sort();
        StandardGL { factors }
    }

    pub fn concat(&self, other: &StandardGL) -> StandardGL {
        let mut factors = self.factors.clone();
        factors.extend(other.factors.iter().cloned());
        StandardGL { factors }
    }

    /// Multiset of line points covered by all factors.
    pub fn support(&self) -> PointMultiset {
        let mut out = PointMultiset::new();
        for seg in &self.factors {
            for p in seg.points() {
                out.add(p, 1);
            }
        }
        out
    }

    /// True when every factor lies on a line of `part`.
    pub fn supported_in(&self, part: &LineSet) -> bool {
        self.factors.iter().all(|s| part.contains_symbol(s.cusp()))
    }

    pub fn lines(&self) -> std::collections::BTreeSet<String> {
        self.factors
            .iter()
            .map(|s| s.cusp().line_id().to_string())
            .collect()
    }

    /// Total GL degree, weighting each point by the symbol's degree unit.
    pub fn degree(&self) -> u64 {
        self.factors
            .iter()
            .map(|s| s.card() * s.cusp().degree_unit())
            .sum()
    }
}

impl fmt::Debug for StandardGL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.factors.is_empty() {
            return write!(f, "1");
        }
        let mut first = true;
        for seg in &self.factors {
            if !first {
                write!(f, "x")?;
            }
            write!(f, "d{:?}", seg)?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Display for StandardGL {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self)
    }
}

/// Finitely supported formal sum with positive integer multiplicities over
/// canonical terms.
#[derive(Clone, PartialEq, Eq)]
pub struct FormalSum<T: Ord> {
    terms: BTreeMap<T, u64>,
}

impl<T: Ord> Default for FormalSum<T> {
    fn default() -> Self {
        FormalSum {
            terms: BTreeMap::new(),
        }
    }
}

impl<T: Ord + Clone> FormalSum<T> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn singleton(term: T, mult: u64) -> Self {
        let mut s = Self::zero();
        s.add_term(term, mult);
        s
    }

    pub fn add_term(&mut self, term: T, mult: u64) {
        if mult > 0 {
            *self.terms.entry(term).or_insert(0) += mult;
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (&T, u64)> {
        self.terms.iter().map(|(t, &m)| (t, m))
    }

    pub fn multiplicity(&self, term: &T) -> u64 {
        self.terms.get(term).copied().unwrap_or(0)
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn total(&self) -> u64 {
        self.terms.values().sum()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add(&self, other: &FormalSum<T>) -> FormalSum<T> {
        let mut out = self.clone();
        for (t, m) in other.iter() {
            out.add_term(t.clone(), m);
        }
        out
    }

    pub fn map<U: Ord + Clone>(&self, f: impl Fn(&T) -> U) -> FormalSum<U> {
        let mut out = FormalSum::zero();
        for (t, m) in self.iter() {
            out.add_term(f(t), m);
        }
        out
    }

    pub fn try_map<U: Ord + Clone>(
        &self,
        f: impl Fn(&T) -> Result<U>,
    ) -> Result<FormalSum<U>> {
        let mut out = FormalSum::zero();
        for (t, m) in self.iter() {
            out.add_term(f(t)?, m);
        }
        Ok(out)
    }

    pub fn filter(&self, keep: impl Fn(&T) -> bool) -> FormalSum<T> {
        let mut out = FormalSum::zero();
        for (t, m) in self.iter() {
            if keep(t) {
                out.add_term(t.clone(), m);
            }
        }
        out
    }

    /// Bilinear product: term multiplicities multiply, term payloads are
    /// combined by `f`.
    pub fn product<U: Ord + Clone, V: Ord + Clone>(
        &self,
        other: &FormalSum<U>,
        f: impl Fn(&T, &U) -> Result<V>,
    ) -> Result<FormalSum<V>> {
        let mut out = FormalSum::zero();
        for (a, m) in self.iter() {
            for (b, n) in other.iter() {
                out.add_term(f(a, b)?, m * n);
            }
        }
        Ok(out)
    }
}

impl<T: Ord + fmt::Debug> fmt::Debug for FormalSum<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (t, m) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            if *m != 1 {
                write!(f, "{m}*")?;
            }
            write!(f, "{t:?}")?;
            first = false;
        }
        Ok(())
    }
}

/// A term of `R (x) R`: a pair of standard GL labels.
pub type GGTerm = (StandardGL, StandardGL);

/// Formal sum in `R (x) R` over standard labels.
pub type FormalSumGG = FormalSum<GGTerm>;

/// Splits of one segment under `m*`: `(left, right)` over every right
/// truncation, empty pieces omitted.
fn right_truncation_splits(seg: &Segment) -> Vec<(Option<Segment>, Option<Segment>)> {
    let card = seg.card();
    let mut out = Vec::with_capacity(card as usize + 1);
    // cut after k points kept on the right-hand (leading) piece:
    // left = [b+k, e], right = [b, b+k-1]
    for k in 0..=card {
        let left = if k < card {
            Some(
                Segment::new(
                    seg.cusp().clone(),
                    seg.b() + Rat::from_integer(k as i64),
                    seg.e(),
                )
                .expect("truncation stays a segment"),
            )
        } else {
            None
        };
        let right = if k > 0 {
            Some(
                Segment::new(
                    seg.cusp().clone(),
                    seg.b(),
                    seg.b() + Rat::from_integer(k as i64 - 1),
                )
                .expect("truncation stays a segment"),
            )
        } else {
            None
        };
        out.push((left, right));
    }
    out
}

/// The comultiplication `m*` on a standard module: on one segment
/// `delta([b,e])` it is the sum of `delta([c+1,e]) (x) delta([b,c])` over
/// `c = b-1, ..., e`; on a product it extends multiplicatively with
/// componentwise concatenation. For a `k`-factor input the raw expansion
/// has `prod (card_i + 1)` terms before merging.
pub fn m_star(beta: &StandardGL) -> FormalSumGG {
    let mut acc: Vec<(Vec<Segment>, Vec<Segment>)> = vec![(Vec::new(), Vec::new())];
    for seg in beta.factors() {
        let splits = right_truncation_splits(seg);
        let mut next = Vec::with_capacity(acc.len() * splits.len());
        for (l, r) in &acc {
            for (sl, sr) in &splits {
                let mut nl = l.clone();
                let mut nr = r.clone();
                if let Some(s) = sl {
                    nl.push(s.clone());
                }
                if let Some(s) = sr {
                    nr.push(s.clone());
                }
                next.push((nl, nr));
            }
        }
        acc = next;
    }
    let mut out = FormalSum::zero();
    for (l, r) in acc {
        out.add_term(
            (
                StandardGL::from_factors(l).canonical(),
                StandardGL::from_factors(r).canonical(),
            ),
            1,
        );
    }
    out
}

/// Splits of one segment under `M*`: for `i, j` with `b-1 <= i <= j <= e`
/// the left factor is `delta([-i,-b])` on the contragredient line times
/// `delta([j+1,e])`, and the right factor is `delta([i+1,j])`.
fn induced_splits(seg: &Segment) -> Vec<(Vec<Segment>, Option<Segment>)> {
    let card = seg.card() as i64;
    let b = seg.b();
    let e = seg.e();
    let mut out = Vec::new();
    for ki in 0..=card {
        // i = b - 1 + ki
        for kj in ki..=card {
            // j = b - 1 + kj
            let mut left = Vec::new();
            if ki >= 1 {
                // [-i, -b] on the partner symbol
                let i = b + Rat::from_integer(ki - 1);
                left.push(
                    Segment::new(seg.cusp().partner(), -i, -b)
                        .expect("contragredient piece stays a segment"),
                );
            }
            if kj < card {
                // [j+1, e]
                left.push(
                    Segment::new(seg.cusp().clone(), b + Rat::from_integer(kj), e)
                        .expect("top piece stays a segment"),
                );
            }
            let middle = if ki < kj {
                Some(
                    Segment::new(
                        seg.cusp().clone(),
                        b + Rat::from_integer(ki),
                        b + Rat::from_integer(kj - 1),
                    )
                    .expect("middle piece stays a segment"),
                )
            } else {
                None
            };
            out.push((left, middle));
        }
    }
    out
}

/// The comultiplication `M*` entering classical induction. On one segment
/// it peels an initial piece onto the contragredient line (stored with
/// negated coordinates on the partner symbol) and a final piece kept on the
/// left, with the middle going right; it extends multiplicatively over
/// factors. The empty standard maps to `1 (x) 1`.
pub fn big_m_star(beta: &StandardGL) -> FormalSumGG {
    let mut acc: Vec<(Vec<Segment>, Vec<Segment>)> = vec![(Vec::new(), Vec::new())];
    for seg in beta.factors() {
        let splits = induced_splits(seg);
        let mut next = Vec::with_capacity(acc.len() * splits.len());
        for (l, r) in &acc {
            for (sl, sm) in &splits {
                let mut nl = l.clone();
                let mut nr = r.clone();
                nl.extend(sl.iter().cloned());
                if let Some(s) = sm {
                    nr.push(s.clone());
                }
                next.push((nl, nr));
            }
        }
        acc = next;
    }
    let mut out = FormalSum::zero();
    for (l, r) in acc {
        out.add_term(
            (
                StandardGL::from_factors(l).canonical(),
                StandardGL::from_factors(r).canonical(),
            ),
            1,
        );
    }
    out
}

/// Keeps the terms whose left support lies in `left_part` and right support
/// in `right_part`. Empty supports pass vacuously.
pub fn filter_by_support(
    sum: &FormalSumGG,
    left_part: &LineSet,
    right_part: &LineSet,
) -> FormalSumGG {
    sum.filter(|(l, r)| l.supported_in(left_part) && r.supported_in(right_part))
}
