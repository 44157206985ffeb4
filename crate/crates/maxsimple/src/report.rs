//! Report records: one verdict-bearing analysis per (group, prime) pair,
//! aggregated into a versioned, deterministic, integers-only JSON file.

use serde::{Deserialize, Serialize};

pub const SCHEMA_VERSION: u32 = 1;

pub fn toolchain_fingerprint() -> String {
    format!("maxsimple/{}", env!("CARGO_PKG_VERSION"))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum VerdictStatus {
    Pass,
    Fail,
    Unverified,
}

/// One checked claim. `status` is tri-state so that capability limits and
/// incomplete searches never masquerade as mathematical failures.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Verdict {
    pub claim: String,
    pub status: VerdictStatus,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SimpleFingerprint {
    pub dim: u64,
    pub endo_degree: u64,
    pub abs_dim: u64,
    /// trace codes at the p-regular class representatives, canonical order
    pub traces: Vec<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ClassDescriptor {
    pub representative: String,
    pub size: u64,
    pub element_order: u64,
    pub p_regular: bool,
}

/// The full verdict sheet for one (group, prime) pair. Optional fields are
/// absent when a capability bound or an incomplete search blocked them.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub builder: Option<String>,
    pub degree: u64,
    pub order: u64,
    pub p: u64,
    pub order_p_part: u64,
    /// "two" | "mersenne" | "generic"
    pub p_class: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub o_p_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frattini_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub o_p_trivial: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub frattini_trivial: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub xc_order: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out_p_part: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_generic: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub bound_abelian: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub m_s: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_simple_dims: Option<Vec<u64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub splitting_field_degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub simples: Option<Vec<SimpleFingerprint>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub p_regular_classes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub abs_irreducible_classes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classes: Option<Vec<ClassDescriptor>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_poset: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_elementary_abelian: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub euler_bouc: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steinberg_nonzero: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steinberg_values: Option<Vec<i64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub defect_zero: Option<bool>,
    pub verdicts: Vec<Verdict>,
    pub errors: Vec<String>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ReportFile {
    pub schema_version: u32,
    pub toolchain: String,
    pub seed: u64,
    pub reports: Vec<AnalysisReport>,
}

impl AnalysisReport {
    pub fn has_fail(&self) -> bool {
        self.verdicts
            .iter()
            .any(|v| v.status == VerdictStatus::Fail)
    }

    pub fn has_unverified(&self) -> bool {
        !self.errors.is_empty()
            || self
                .verdicts
                .iter()
                .any(|v| v.status == VerdictStatus::Unverified)
    }
}

impl ReportFile {
    pub fn new(seed: u64, reports: Vec<AnalysisReport>) -> ReportFile {
        ReportFile {
            schema_version: SCHEMA_VERSION,
            toolchain: toolchain_fingerprint(),
            seed,
            reports,
        }
    }

    /// 0 = all pass, 1 = any mathematical fail, 2 = only capability or
    /// unverified entries.
    pub fn exit_code(&self) -> i32 {
        if self.reports.iter().any(|r| r.has_fail()) {
            1
        } else if self.reports.iter().any(|r| r.has_unverified()) {
            2
        } else {
            0
        }
    }

    pub fn to_json_pretty(&self) -> crate::Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }
}
