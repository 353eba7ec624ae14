use std::collections::BTreeMap;

use qspine::homology::HomologySummary;
use qspine::linkdiag::Inertia;
use qspine::{FieldElem, RingElem};
use serde::Serialize;

/// Bumped whenever a field changes meaning or disappears; see `schema/report.schema.json`.
pub const SCHEMA_VERSION: u32 = 1;

/// A ring or field element: its printed form plus exact coefficients.
#[derive(Debug, Serialize)]
pub struct Poly<T: Serialize> {
    pub text: String,
    #[serde(flatten)]
    pub value: T,
}

impl From<&RingElem> for Poly<RingElem> {
    fn from(r: &RingElem) -> Self {
        Poly {
            text: r.to_string(),
            value: r.clone(),
        }
    }
}

impl From<&FieldElem> for Poly<FieldElem> {
    fn from(f: &FieldElem) -> Self {
        Poly {
            text: f.to_string(),
            value: f.clone(),
        }
    }
}

/// Milliseconds per phase, only present with `--timing`.
pub type Timing = BTreeMap<&'static str, f64>;

#[derive(Debug, Serialize)]
pub struct SkeinPart {
    pub z: Poly<RingElem>,
    pub zhat: Poly<RingElem>,
    pub z_q: u64,
    pub ohtsuki: Vec<u64>,
}

#[derive(Debug, Serialize)]
pub struct InvariantReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub presentation: String,
    pub p: u64,
    pub method: &'static str,
    pub euler_char: i64,
    pub homology: HomologySummary,
    pub homology_z_q: Option<u64>,
    pub skein: Option<SkeinPart>,
    pub agree: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<Timing>,
}

#[derive(Debug, Serialize)]
pub struct IdentityCheck {
    pub p: u64,
    pub name: String,
    pub pass: bool,
}

#[derive(Debug, Serialize)]
pub struct PrimeConstants {
    pub p: u64,
    pub g1: Poly<RingElem>,
    pub global_dim: Poly<RingElem>,
    pub c_plus: Poly<RingElem>,
    pub c_minus: Poly<RingElem>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub checks: Vec<IdentityCheck>,
    pub constants: Vec<PrimeConstants>,
    pub all_pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<Timing>,
}

#[derive(Debug, Clone, Serialize)]
pub struct Discrepancy {
    pub step: usize,
    pub r#move: String,
    pub presentation: String,
    pub expected: u64,
    pub got: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct FuzzCase {
    pub index: usize,
    pub seed: u64,
    pub start: String,
    pub end: String,
    pub z_q: Option<u64>,
    /// Why the case could not be evaluated at its start, if it could not.
    pub skipped: Option<String>,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Debug, Serialize)]
pub struct FuzzReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub p: u64,
    pub method: &'static str,
    pub seed: u64,
    pub cases: usize,
    pub moves: usize,
    pub guard: usize,
    pub results: Vec<FuzzCase>,
    pub discrepancies: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<Timing>,
}

#[derive(Debug, Serialize)]
pub struct LinkInfoReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub strands: usize,
    pub crossings: usize,
    pub components: Vec<Vec<usize>>,
    pub dotted: Vec<bool>,
    pub framings: Vec<i64>,
    pub linking_matrix: Vec<Vec<i64>>,
    pub inertia: Inertia,
}

#[derive(Debug, Serialize)]
pub struct RtwReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub p: u64,
    pub coefficient: Poly<FieldElem>,
    /// The value is `coefficient * X^x_power`.
    pub x_power: u32,
    /// `X = g_1 / (v - v^-1)`, or `null` when that is not a square root of `X^2`.
    pub explicit: Option<Poly<FieldElem>>,
    pub x_convention: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub timing_ms: Option<Timing>,
}

pub fn to_json<T: Serialize>(r: &T) -> String {
    let mut s = serde_json::to_string_pretty(r).expect("reports serialize");
    s.push('\n');
    s
}
