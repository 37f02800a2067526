//! Canonical JSON rendering of engine values.
//!
//! Terms are emitted in the canonical order of the underlying formal sums,
//! maps as sorted objects, and rationals as decimal-free strings, so
//! identical inputs always produce identical bytes.

use std::collections::BTreeMap;

use serde::Serialize;

use cuspline_core::gl::{FormalSum, FormalSumGG, Segment, Span, StandardGL};
use cuspline_core::jantzen::{glued_langlands_rows, InducedFamily};
use cuspline_core::params::{
    ClassicalStandard, JantzenFamily, LanglandsParam, MuTerm, SigmaSupport, TemperedParam,
};
use cuspline_core::rat::format_rat;
use cuspline_core::unitarity::{GenericParam, Witness};

#[derive(Serialize)]
pub struct SegOut {
    line: String,
    b: String,
    e: String,
}

impl SegOut {
    pub fn new(seg: &Segment) -> Self {
        SegOut {
            line: seg.cusp().id().to_string(),
            b: format_rat(seg.b()),
            e: format_rat(seg.e()),
        }
    }
}

fn segs(gl: &StandardGL) -> Vec<SegOut> {
    gl.factors().iter().map(SegOut::new).collect()
}

#[derive(Serialize)]
pub struct SpanOut {
    b: String,
    e: String,
}

impl SpanOut {
    fn new(span: &Span) -> Self {
        SpanOut {
            b: format_rat(span.b),
            e: format_rat(span.e),
        }
    }
}

#[derive(Serialize)]
pub struct SigmaOut {
    id: String,
    rank: u64,
}

impl SigmaOut {
    pub fn new(s: &SigmaSupport) -> Self {
        SigmaOut {
            id: s.id.clone(),
            rank: s.rank,
        }
    }
}

#[derive(Serialize)]
pub struct GGTermOut {
    mult: u64,
    left: Vec<SegOut>,
    right: Vec<SegOut>,
}

pub fn gg_sum(sum: &FormalSumGG) -> Vec<GGTermOut> {
    sum.iter()
        .map(|((l, r), m)| GGTermOut {
            mult: m,
            left: segs(l),
            right: segs(r),
        })
        .collect()
}

#[derive(Serialize)]
pub struct ClassicalOut {
    gl: Vec<SegOut>,
    sigma: String,
}

impl ClassicalOut {
    fn new(cs: &ClassicalStandard) -> Self {
        ClassicalOut {
            gl: segs(&cs.gl),
            sigma: cs.sigma.id.clone(),
        }
    }
}

#[derive(Serialize)]
pub struct MuTermOut {
    mult: u64,
    left: Vec<SegOut>,
    right: ClassicalOut,
}

pub fn mu_sum(sum: &FormalSum<MuTerm>) -> Vec<MuTermOut> {
    sum.iter()
        .map(|((l, cs), m)| MuTermOut {
            mult: m,
            left: segs(l),
            right: ClassicalOut::new(cs),
        })
        .collect()
}

#[derive(Serialize)]
pub struct InducedOut {
    gl: Vec<SegOut>,
    family: FamilyOut,
}

#[derive(Serialize)]
pub struct InducedTermOut {
    mult: u64,
    left: Vec<SegOut>,
    right: InducedOut,
}

pub fn induced_sum(sum: &FormalSum<(StandardGL, InducedFamily)>) -> Vec<InducedTermOut> {
    sum.iter()
        .map(|((l, ind), m)| InducedTermOut {
            mult: m,
            left: segs(l),
            right: InducedOut {
                gl: segs(&ind.gl),
                family: FamilyOut::new(&ind.family),
            },
        })
        .collect()
}

#[derive(Serialize)]
pub struct EpsOut {
    on: serde_json::Value,
    sign: i8,
}

#[derive(Serialize)]
pub struct SignedOut {
    seg: SegOut,
    sign: i8,
}

#[derive(Serialize)]
pub struct LangRowOut {
    seg: SegOut,
}

#[derive(Serialize)]
pub struct LineParamOut {
    jord: Vec<SegOut>,
    eps: Vec<EpsOut>,
    signed: Vec<SignedOut>,
    extra: Vec<SegOut>,
    lang: Vec<LangRowOut>,
}

fn tempered_layer(t: &TemperedParam) -> LineParamOut {
    let mut eps = Vec::new();
    for (span, sign) in t.ds().eps().blocks() {
        eps.push(EpsOut {
            on: serde_json::to_value(SpanOut::new(span)).expect("span serializes"),
            sign: sign.as_i8(),
        });
    }
    for ((a, b), sign) in t.ds().eps().pairs() {
        eps.push(EpsOut {
            on: serde_json::to_value([SpanOut::new(a), SpanOut::new(b)])
                .expect("span pair serializes"),
            sign: sign.as_i8(),
        });
    }
    LineParamOut {
        jord: t.ds().jord().iter().map(SegOut::new).collect(),
        eps,
        signed: t
            .signed()
            .iter()
            .map(|(s, j)| SignedOut {
                seg: SegOut::new(s),
                sign: j.as_i8(),
            })
            .collect(),
        extra: t.extra().iter().map(SegOut::new).collect(),
        lang: Vec::new(),
    }
}

fn line_param(p: &LanglandsParam) -> LineParamOut {
    let mut out = tempered_layer(p.tempered());
    out.lang = p
        .rows()
        .iter()
        .map(|s| LangRowOut { seg: SegOut::new(s) })
        .collect();
    out
}

#[derive(Serialize)]
pub struct FamilyOut {
    sigma: SigmaOut,
    lines: BTreeMap<String, LineParamOut>,
}

impl FamilyOut {
    pub fn new(family: &JantzenFamily) -> Self {
        FamilyOut {
            sigma: SigmaOut::new(family.sigma()),
            lines: family
                .params()
                .map(|p| (p.line_id().to_string(), line_param(p)))
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct GenericOut {
    sigma: SigmaOut,
    deltas: Vec<SegOut>,
    tempered: BTreeMap<String, LineParamOut>,
}

impl GenericOut {
    pub fn new(p: &GenericParam) -> Self {
        GenericOut {
            sigma: SigmaOut::new(p.sigma()),
            deltas: p.deltas().iter().map(SegOut::new).collect(),
            tempered: p
                .tempered_layers()
                .map(|t| (t.line().line_id().to_string(), tempered_layer(t)))
                .collect(),
        }
    }
}

#[derive(Serialize)]
pub struct DisplayRowOut {
    exp: String,
    rows: Vec<SegOut>,
}

pub fn glued_display(family: &JantzenFamily) -> Vec<DisplayRowOut> {
    glued_langlands_rows(family)
        .into_iter()
        .map(|(exp, rows)| DisplayRowOut {
            exp: format_rat(exp),
            rows: rows.iter().map(SegOut::new).collect(),
        })
        .collect()
}

#[derive(Serialize)]
pub struct SplitOut {
    pub x1: FamilyOut,
    pub x2: FamilyOut,
}

#[derive(Serialize)]
pub struct GlueOut {
    pub family: FamilyOut,
    pub display: Vec<DisplayRowOut>,
}

#[derive(Serialize)]
pub struct WeightedFamilyOut {
    mult: u64,
    family: FamilyOut,
}

pub fn family_sum(sum: &FormalSum<JantzenFamily>) -> Vec<WeightedFamilyOut> {
    sum.iter()
        .map(|(f, m)| WeightedFamilyOut {
            mult: m,
            family: FamilyOut::new(f),
        })
        .collect()
}

#[derive(Serialize)]
pub struct AssocOut {
    pub ok: bool,
}

#[derive(Serialize)]
pub struct WitnessOut {
    condition: String,
    base: SegOut,
    details: String,
}

#[derive(Serialize)]
pub struct UnitaryOut {
    pub unitarizable: bool,
    pub witness: Option<WitnessOut>,
}

impl UnitaryOut {
    pub fn new(ok: bool, witness: Option<Witness>) -> Self {
        UnitaryOut {
            unitarizable: ok,
            witness: witness.map(|w| WitnessOut {
                condition: w.condition.to_string(),
                base: SegOut::new(&w.base),
                details: w.detail,
            }),
        }
    }
}

#[derive(Serialize)]
pub struct SteinbergOut {
    pub class: String,
}

#[derive(Serialize)]
pub struct TransferOut {
    pub param: FamilyOut,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub warning: Option<String>,
}

pub fn render<T: Serialize>(value: &T) -> String {
    serde_json::to_string_pretty(value).expect("output serializes")
}
