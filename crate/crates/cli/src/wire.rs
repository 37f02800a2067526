//! Instance-file schema and conversion into engine values.
//!
//! One JSON file carries a symbol registry (or defers to the file named by
//! `CUSPLINE_REGISTRY`), optional partial-cuspidal-support declarations,
//! and one command payload. Rationals travel as decimal-free strings
//! `"p"`/`"p/q"` or JSON integers; unknown fields are rejected so typos
//! fail loudly.

use std::collections::BTreeMap;

use serde::Deserialize;

use cuspline_core::gl::{Multisegment, Segment, Span, StandardGL};
use cuspline_core::lines::{LineSet, Registry, SymbolSpec};
use cuspline_core::params::{
    DiscreteSeriesParam, EpsilonRecord, JantzenFamily, LanglandsParam, Sign, SigmaSupport,
    TemperedParam,
};
use cuspline_core::rat::{parse_rat, Rat};
use cuspline_core::unitarity::GenericParam;
use cuspline_core::Error as CoreError;

use crate::error::{CliError, CliResult};

pub const SCHEMA_VERSION: u32 = 1;

/// Rational literal: `3`, `"3"`, or `"3/2"`.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum RatW {
    Int(i64),
    Str(String),
}

impl RatW {
    pub fn to_rat(&self, path: &str) -> CliResult<Rat> {
        match self {
            RatW::Int(n) => Ok(Rat::from_integer(*n)),
            RatW::Str(s) => parse_rat(s).map_err(|e| CliError::validation(path, e)),
        }
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SymbolW {
    pub id: String,
    pub selfdual: bool,
    pub alpha: RatW,
    #[serde(default)]
    pub partner: Option<String>,
    #[serde(default)]
    pub degree: Option<u64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SigmaW {
    pub id: String,
    pub rank: u64,
}

impl SigmaW {
    pub fn to_sigma(&self) -> SigmaSupport {
        SigmaSupport::new(&self.id, self.rank)
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    #[serde(rename = "schemaVersion")]
    pub schema_version: u32,
    #[serde(default)]
    pub registry: Option<Vec<SymbolW>>,
    #[serde(default)]
    pub sigma: Option<SigmaW>,
    #[serde(default)]
    pub sigmas: Option<Vec<SigmaW>>,
    pub payload: serde_json::Value,
}

impl InstanceFile {
    pub fn load(path: &str) -> CliResult<InstanceFile> {
        let text =
            std::fs::read_to_string(path).map_err(|e| CliError::parse(path, e))?;
        let file: InstanceFile =
            serde_json::from_str(&text).map_err(|e| CliError::parse(path, e))?;
        if file.schema_version != SCHEMA_VERSION {
            return Err(CliError::validation(
                path,
                format!(
                    "unsupported schemaVersion {} (supported: {SCHEMA_VERSION})",
                    file.schema_version
                ),
            ));
        }
        Ok(file)
    }

    /// Registry from the file, falling back to `CUSPLINE_REGISTRY`.
    pub fn registry(&self, path: &str) -> CliResult<Registry> {
        if let Some(specs) = &self.registry {
            return build_registry(specs, path);
        }
        if let Ok(reg_path) = std::env::var("CUSPLINE_REGISTRY") {
            let text = std::fs::read_to_string(&reg_path)
                .map_err(|e| CliError::parse(&reg_path, e))?;
            let specs: Vec<SymbolW> =
                serde_json::from_str(&text).map_err(|e| CliError::parse(&reg_path, e))?;
            return build_registry(&specs, &reg_path);
        }
        Err(CliError::validation(
            path,
            "no registry: provide a `registry` field or set CUSPLINE_REGISTRY",
        ))
    }

    /// The named sigma, searched through `sigmas` and the top-level field.
    pub fn find_sigma(&self, id: &str, path: &str) -> CliResult<SigmaSupport> {
        if let Some(list) = &self.sigmas {
            if let Some(s) = list.iter().find(|s| s.id == id) {
                return Ok(s.to_sigma());
            }
        }
        if let Some(s) = &self.sigma {
            if s.id == id {
                return Ok(s.to_sigma());
            }
        }
        Err(CliError::validation(
            path,
            format!("sigma `{id}` is not declared in the instance file"),
        ))
    }

    pub fn payload<T: serde::de::DeserializeOwned>(&self, path: &str) -> CliResult<T> {
        serde_json::from_value(self.payload.clone()).map_err(|e| CliError::parse(path, e))
    }
}

pub fn build_registry(specs: &[SymbolW], path: &str) -> CliResult<Registry> {
    let mut out = Vec::with_capacity(specs.len());
    for s in specs {
        out.push(SymbolSpec {
            id: s.id.clone(),
            self_dual: s.selfdual,
            alpha: s.alpha.to_rat(path)?,
            partner: s.partner.clone(),
            degree_unit: s.degree.unwrap_or(1),
        });
    }
    Registry::new(out).map_err(|e| CliError::validation(path, e))
}

fn core_validation(path: &str) -> impl Fn(CoreError) -> CliError + '_ {
    move |e| CliError::validation(path, e)
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SegmentW {
    pub line: String,
    pub b: RatW,
    pub e: RatW,
}

impl SegmentW {
    pub fn to_segment(&self, reg: &Registry, path: &str) -> CliResult<Segment> {
        let cusp = reg.get(&self.line).map_err(core_validation(path))?;
        Segment::new(cusp, self.b.to_rat(path)?, self.e.to_rat(path)?)
            .map_err(core_validation(path))
    }
}

pub fn to_standard(segs: &[SegmentW], reg: &Registry, path: &str) -> CliResult<StandardGL> {
    Ok(StandardGL::from_factors(
        segs.iter()
            .map(|s| s.to_segment(reg, path))
            .collect::<CliResult<Vec<_>>>()?,
    ))
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpanW {
    pub b: RatW,
    pub e: RatW,
}

impl SpanW {
    fn to_span(&self, path: &str) -> CliResult<Span> {
        Ok(Span {
            b: self.b.to_rat(path)?,
            e: self.e.to_rat(path)?,
        })
    }
}

#[derive(Debug, Deserialize)]
#[serde(untagged)]
pub enum EpsOnW {
    Block(SpanW),
    Pair([SpanW; 2]),
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EpsW {
    pub on: EpsOnW,
    pub sign: i8,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SignedW {
    pub seg: SegmentW,
    pub sign: i8,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LangRowW {
    pub seg: SegmentW,
}

/// One per-line parameter: the tempered layers plus the Langlands rows.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LineParamW {
    #[serde(default)]
    pub jord: Vec<SegmentW>,
    #[serde(default)]
    pub eps: Vec<EpsW>,
    #[serde(default)]
    pub signed: Vec<SignedW>,
    #[serde(default)]
    pub extra: Vec<SegmentW>,
    #[serde(default)]
    pub lang: Vec<LangRowW>,
}

impl LineParamW {
    pub fn to_tempered(
        &self,
        line_key: &str,
        reg: &Registry,
        sigma: &SigmaSupport,
        path: &str,
    ) -> CliResult<TemperedParam> {
        let line = reg.get(line_key).map_err(core_validation(path))?;
        let jord = Multisegment::from_segments(
            self.jord
                .iter()
                .map(|s| s.to_segment(reg, path))
                .collect::<CliResult<Vec<_>>>()?,
        );
        let mut eps = EpsilonRecord::empty();
        for e in &self.eps {
            let sign = Sign::from_i8(e.sign).map_err(core_validation(path))?;
            match &e.on {
                EpsOnW::Block(s) => eps.set_block(s.to_span(path)?, sign),
                EpsOnW::Pair([a, b]) => {
                    eps.set_pair(a.to_span(path)?, b.to_span(path)?, sign)
                }
            }
        }
        let ds = DiscreteSeriesParam::new(line, jord, eps, sigma.clone())
            .map_err(core_validation(path))?;
        let signed = self
            .signed
            .iter()
            .map(|s| {
                Ok((
                    s.seg.to_segment(reg, path)?,
                    Sign::from_i8(s.sign).map_err(core_validation(path))?,
                ))
            })
            .collect::<CliResult<Vec<_>>>()?;
        let extra = Multisegment::from_segments(
            self.extra
                .iter()
                .map(|s| s.to_segment(reg, path))
                .collect::<CliResult<Vec<_>>>()?,
        );
        TemperedParam::new(ds, signed, extra).map_err(core_validation(path))
    }

    pub fn to_langlands(
        &self,
        line_key: &str,
        reg: &Registry,
        sigma: &SigmaSupport,
        path: &str,
    ) -> CliResult<LanglandsParam> {
        let tempered = self.to_tempered(line_key, reg, sigma, path)?;
        let rows = self
            .lang
            .iter()
            .map(|r| r.seg.to_segment(reg, path))
            .collect::<CliResult<Vec<_>>>()?;
        LanglandsParam::new(rows, tempered).map_err(core_validation(path))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FamilyW {
    pub sigma: SigmaW,
    #[serde(default)]
    pub lines: BTreeMap<String, LineParamW>,
}

impl FamilyW {
    pub fn to_family(&self, reg: &Registry, path: &str) -> CliResult<JantzenFamily> {
        let sigma = self.sigma.to_sigma();
        let params = self
            .lines
            .iter()
            .map(|(key, lp)| lp.to_langlands(key, reg, &sigma, path))
            .collect::<CliResult<Vec<_>>>()?;
        JantzenFamily::new(sigma, params).map_err(core_validation(path))
    }
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GenericW {
    pub sigma: SigmaW,
    #[serde(default)]
    pub deltas: Vec<SegmentW>,
    #[serde(default)]
    pub tempered: BTreeMap<String, LineParamW>,
}

impl GenericW {
    pub fn to_generic(&self, reg: &Registry, path: &str) -> CliResult<GenericParam> {
        let sigma = self.sigma.to_sigma();
        let deltas = self
            .deltas
            .iter()
            .map(|s| s.to_segment(reg, path))
            .collect::<CliResult<Vec<_>>>()?;
        let layers = self
            .tempered
            .iter()
            .map(|(key, lp)| {
                if !lp.lang.is_empty() {
                    return Err(CliError::validation(
                        path,
                        "tempered layers carry no `lang` rows; put deltas at the top level",
                    ));
                }
                lp.to_tempered(key, reg, &sigma, path)
            })
            .collect::<CliResult<Vec<_>>>()?;
        GenericParam::new(deltas, layers, sigma).map_err(core_validation(path))
    }
}

/// Whole-line set from symbol ids; each listed symbol must come with its
/// partner line implicitly, which `closure_of` guarantees; listing only one
/// half of a non-self-dual pair is accepted as naming the whole line.
pub fn to_line_set(ids: &[String], reg: &Registry, path: &str) -> CliResult<LineSet> {
    let syms = ids
        .iter()
        .map(|id| reg.get(id).map_err(core_validation(path)))
        .collect::<CliResult<Vec<_>>>()?;
    Ok(LineSet::closure_of(syms))
}

// ---- command payloads ----

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MStarPayload {
    pub standard: Vec<SegmentW>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuStarPayload {
    pub standard: Vec<SegmentW>,
    #[serde(default)]
    pub sigma: Option<SigmaW>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuLeftPayload {
    pub beta: Vec<SegmentW>,
    pub gamma: FamilyW,
    pub x1: Vec<String>,
    pub x2: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct XiTermW {
    pub mult: u64,
    pub gl: Vec<SegmentW>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MuRightPayload {
    pub beta: Vec<SegmentW>,
    pub xi: Vec<XiTermW>,
    #[serde(default)]
    pub sigma: Option<SigmaW>,
    pub x1: Vec<String>,
    pub x2: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SplitPayload {
    pub family: FamilyW,
    pub x1: Vec<String>,
    pub x2: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluePartW {
    pub lines: Vec<String>,
    pub family: FamilyW,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GluePayload {
    #[serde(default)]
    pub sigma: Option<SigmaW>,
    pub parts: Vec<GluePartW>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct WeightedFamilyW {
    pub mult: u64,
    pub family: FamilyW,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributePayload {
    pub side1: Vec<WeightedFamilyW>,
    pub side2: Vec<WeightedFamilyW>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AssocPayload {
    pub family: FamilyW,
    pub x1: Vec<String>,
    pub x2: Vec<String>,
    pub x3: Vec<String>,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SteinbergPayload {
    pub param: FamilyW,
    pub n: u64,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UnitaryPayload {
    pub generic: GenericW,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProjectGenericPayload {
    pub generic: GenericW,
    pub line: String,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EndpointW {
    pub rho: String,
    pub sigma: SigmaW,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TransferPayload {
    #[serde(default)]
    pub src: Option<EndpointW>,
    #[serde(default)]
    pub dst: Option<EndpointW>,
    pub param: FamilyW,
}
