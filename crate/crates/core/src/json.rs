//! Versioned JSON documents for command output.
//!
//! Field elements are coordinate arrays over F_p in the power basis of the field modulus,
//! polynomials in T are ascending arrays of field elements, and polynomials in x are sparse
//! `[exponent, coefficient]` lists. Every document carries `"schema": 1`. Emission is
//! deterministic, and parsing a document and emitting it again reproduces the same bytes.

use serde::{Deserialize, Serialize};

use crate::algebra::{Fe, Field, FieldCtx, Poly, RatFunc, XPoly};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::frobenius::FrobeniusData;
use crate::laurent::{LaurentSeries, Magnitude};
use crate::logalg::LogAlgResult;
use crate::lvalues::LValue;
use crate::verify::{SuiteReport, VerifyConfig};

pub const SCHEMA: u32 = 1;

pub type ElemJson = Vec<u32>;
pub type PolyJson = Vec<ElemJson>;
/// Sparse polynomial in x over A.
pub type XPolyJson = Vec<(u64, PolyJson)>;

pub fn elem(field: &Field, a: Fe) -> ElemJson {
    field.coords(a)
}

pub fn poly(p: &Poly) -> PolyJson {
    p.coeffs().iter().map(|&c| elem(p.field(), c)).collect()
}

/// Inverse of [`poly`].
pub fn to_poly(field: &Field, p: &PolyJson) -> Result<Poly> {
    Ok(Poly::from_coeffs(field, p.iter().map(|c| field.from_coords(c)).collect::<Result<_>>()?))
}

/// Requires coefficients in A.
pub fn xpoly(p: &XPoly) -> Result<XPolyJson> {
    p.terms()
        .iter()
        .map(|(&e, c)| {
            if c.is_integral() {
                Ok((e, poly(c.num())))
            } else {
                Err(Error::InvalidArgument(format!("coefficient {c} of x^{e} is not in A")))
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatFuncJson {
    pub num: PolyJson,
    pub den: PolyJson,
}

pub fn ratfunc(r: &RatFunc) -> RatFuncJson {
    RatFuncJson { num: poly(r.num()), den: poly(r.den()) }
}

/// |s| as an exponent of q in units of 1/e; `at_most` marks a difference lost below precision.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "exp", rename_all = "snake_case")]
pub enum MagnitudeJson {
    Zero,
    Exact(i64),
    AtMost(i64),
}

impl From<Magnitude> for MagnitudeJson {
    fn from(m: Magnitude) -> Self {
        match m {
            Magnitude::Zero => MagnitudeJson::Zero,
            Magnitude::Exact(v) => MagnitudeJson::Exact(v),
            Magnitude::AtMost(v) => MagnitudeJson::AtMost(v),
        }
    }
}

/// Σ c_m θ^(m/e), known up to O(θ^(err_exp/e)); `err_exp` is null for exact values.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeriesJson {
    pub e: u32,
    pub terms: Vec<(i64, ElemJson)>,
    pub err_exp: Option<i64>,
}

pub fn series(s: &LaurentSeries) -> SeriesJson {
    SeriesJson { e: s.e(), terms: s.terms().rev().map(|(m, c)| (m, elem(s.field(), c))).collect(), err_exp: s.err() }
}

impl SeriesJson {
    pub fn to_series(&self, field: &Field) -> Result<LaurentSeries> {
        let terms = self.terms.iter().map(|(m, c)| Ok((*m, field.from_coords(c)?))).collect::<Result<Vec<_>>>()?;
        Ok(LaurentSeries::new(field, self.e, terms, self.err_exp))
    }
}

/// The field and module a result was computed for.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModuleJson {
    pub q: u64,
    pub p: u32,
    pub n: u32,
    pub k: u32,
    /// Modulus of F_q over F_p, ascending, monic.
    pub fq_modulus: Vec<u32>,
    /// Modulus of F_(q^k) over F_p; equal to `fq_modulus` when k = 1.
    pub ext_modulus: Vec<u32>,
    pub kappa: Vec<PolyJson>,
}

pub fn module(ctx: &FieldCtx, phi: &DrinfeldModule) -> ModuleJson {
    ModuleJson {
        q: ctx.q(),
        p: ctx.p(),
        n: ctx.n(),
        k: ctx.k(),
        fq_modulus: ctx.base.modulus().to_vec(),
        ext_modulus: ctx.ext.modulus().to_vec(),
        kappa: (1..=phi.rank()).map(|j| poly(&phi.kappa(j))).collect(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CharpolyJson {
    pub f: PolyJson,
    pub d: usize,
    pub r0: usize,
    pub b: Vec<PolyJson>,
    pub c_f: ElemJson,
    /// a_0, …, a_(r0−1), 1.
    #[serde(rename = "P")]
    pub p: Vec<PolyJson>,
    #[serde(rename = "Qdual")]
    pub q_dual: Vec<RatFuncJson>,
    /// |φ̄(F_f)| from the reduction itself.
    pub unit_count: PolyJson,
}

pub fn charpoly(data: &FrobeniusData, unit_count: &Poly) -> CharpolyJson {
    let field = data.f.field();
    CharpolyJson {
        f: poly(&data.f),
        d: data.d,
        r0: data.r0,
        b: data.b.iter().map(poly).collect(),
        c_f: elem(field, data.c_f),
        p: data.p.iter().map(poly).collect(),
        q_dual: data.q_dual().iter().map(ratfunc).collect(),
        unit_count: poly(unit_count),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MuJson {
    pub depth: usize,
    /// [a, μ(a)] pairs.
    pub values: Vec<(PolyJson, PolyJson)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LogAlgJson {
    pub beta: XPolyJson,
    pub i_max: usize,
    /// E_0, …, E_(i_max + 2).
    #[serde(rename = "E")]
    pub e: Vec<XPolyJson>,
    /// ℰ(β, z) as [z-exponent, E_i] pairs, zero terms omitted.
    pub poly: Vec<(u64, XPolyJson)>,
    pub z_degree: u64,
    pub z_degree_bound: u64,
    pub strategy: String,
    pub text: String,
}

pub fn logalg(res: &LogAlgResult) -> Result<LogAlgJson> {
    Ok(LogAlgJson {
        beta: xpoly(&res.beta)?,
        i_max: res.i_max,
        e: res.e.iter().map(xpoly).collect::<Result<_>>()?,
        poly: res.terms().into_iter().map(|(qi, e)| Ok((qi, xpoly(e)?))).collect::<Result<_>>()?,
        z_degree: res.z_degree(),
        z_degree_bound: res.z_degree_bound(),
        strategy: res.strategy.to_string(),
        text: res.to_string(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LValueJson {
    /// "dual" (L(φ^∨, s)), "plain" (L(φ, s)) or "twisted" (L(φ^∨, χ, 0)).
    pub kind: String,
    pub s: i64,
    /// [℘, index] for twisted values.
    pub character: Option<(PolyJson, u64)>,
    pub series: SeriesJson,
    #[serde(rename = "nearest_A")]
    pub nearest_a: PolyJson,
    pub dist: MagnitudeJson,
    /// Certified: the omitted blocks total at most q^tail_bound.
    pub tail_bound: i64,
    pub depth: usize,
    /// Size of the deepest summed block.
    pub last_block: MagnitudeJson,
    /// exp_φ of the value and its nearest element of A, for the untwisted dual value at s = 0.
    pub exp: Option<ExpJson>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExpJson {
    pub series: SeriesJson,
    #[serde(rename = "nearest_A")]
    pub nearest_a: PolyJson,
    pub dist: MagnitudeJson,
}

pub fn lvalue(kind: &str, s: i64, character: Option<(PolyJson, u64)>, l: &LValue) -> Result<LValueJson> {
    let (a, dist) = l.series.nearest_a()?;
    Ok(LValueJson {
        kind: kind.into(),
        s,
        character,
        series: series(&l.series),
        nearest_a: poly(&a),
        dist: dist.into(),
        tail_bound: l.tail_bound,
        depth: l.depth,
        last_block: l.last_block().into(),
        exp: None,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyJson {
    pub config: VerifyConfig,
    pub passed: bool,
    pub reports: Vec<SuiteReport>,
}

/// Command-specific payload; the tag becomes the document's `command`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "command", content = "result", rename_all = "lowercase")]
pub enum Body {
    Charpoly(CharpolyJson),
    Mu(MuJson),
    Logalg(LogAlgJson),
    Lvalue(LValueJson),
    Verify(VerifyJson),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Document {
    pub schema: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleJson>,
    #[serde(flatten)]
    pub body: Body,
}

impl Document {
    pub fn new(module: Option<ModuleJson>, body: Body) -> Document {
        Document { schema: SCHEMA, module, body }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    pub fn from_json(s: &str) -> Result<Document> {
        let doc: Document = serde_json::from_str(s).map_err(|e| Error::InvalidArgument(format!("bad document: {e}")))?;
        if doc.schema != SCHEMA {
            return Err(Error::Unsupported(format!("schema {} (this build reads {SCHEMA})", doc.schema)));
        }
        Ok(doc)
    }
}
