use serde::Serialize;
use serde_json::{Number, Value};

use crate::error::{Error, Result};

use super::chaos::{ExpansivityReport, MixingReport, RegularityReport, SensitivityReport};
use super::stego::{AgreementReport, CidsVerdict, CiisStegoVerdict};

pub const SCHEMA_VERSION: &str = "1.0.0";

/// JSON Schema (draft 2020-12) describing [`emit_report`] output.
pub const REPORT_SCHEMA: &str = include_str!("../../schema/security_report.schema.json");

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "property", rename_all = "snake_case")]
#[allow(clippy::large_enum_variant)]
pub enum Verdict {
    CiisStego(CiisStegoVerdict),
    CidsNotStego(CidsVerdict),
    HistogramAgreement(AgreementReport),
    Expansivity(ExpansivityReport),
    Mixing(MixingReport),
    Sensitivity(SensitivityReport),
    Regularity(RegularityReport),
}

impl Verdict {
    pub fn name(&self) -> &'static str {
        match self {
            Self::CiisStego(_) => "ciis_stego",
            Self::CidsNotStego(_) => "cids_not_stego",
            Self::HistogramAgreement(_) => "histogram_agreement",
            Self::Expansivity(_) => "expansivity",
            Self::Mixing(_) => "mixing",
            Self::Sensitivity(_) => "sensitivity",
            Self::Regularity(_) => "regularity",
        }
    }

    pub fn passed(&self) -> bool {
        match self {
            Self::CiisStego(v) => v.passed,
            Self::CidsNotStego(v) => v.passed,
            Self::HistogramAgreement(v) => v.passed,
            Self::Expansivity(v) => v.passed,
            Self::Mixing(v) => v.passed,
            Self::Sensitivity(v) => v.passed,
            Self::Regularity(v) => v.passed,
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Generator {
    pub name: String,
    pub version: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SecurityReport {
    pub schema_version: &'static str,
    pub generator: Generator,
    pub scheme: String,
    pub seed: u64,
    /// Effective configuration, echoed verbatim.
    pub configuration: Value,
    pub verdicts: Vec<Verdict>,
    pub commentary: Vec<String>,
    pub all_passed: bool,
}

impl SecurityReport {
    pub fn new(
        scheme: impl Into<String>,
        seed: u64,
        configuration: Value,
        verdicts: Vec<Verdict>,
        commentary: Vec<String>,
    ) -> Self {
        let all_passed = !verdicts.is_empty() && verdicts.iter().all(Verdict::passed);
        Self {
            schema_version: SCHEMA_VERSION,
            generator: Generator {
                name: env!("CARGO_PKG_NAME").into(),
                version: env!("CARGO_PKG_VERSION").into(),
            },
            scheme: scheme.into(),
            seed,
            configuration,
            verdicts,
            commentary,
            all_passed,
        }
    }
}

/// A real as a JSON number with 17 significant digits; non-finite values
/// become `null`.
pub fn format_real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(text.parse::<Number>().expect("formatted float is valid JSON"))
}

fn normalize(v: &mut Value) {
    match v {
        Value::Number(n) if n.is_f64() => *v = format_real(n.as_f64().unwrap_or(f64::NAN)),
        Value::Array(items) => items.iter_mut().for_each(normalize),
        Value::Object(map) => map.values_mut().for_each(normalize),
        _ => {}
    }
}

/// Serializes the report as pretty JSON with a trailing newline.
pub fn emit_report(report: &SecurityReport) -> Result<String> {
    if report.verdicts.is_empty() {
        return Err(Error::InvalidArgument("a report needs at least one verdict".into()));
    }
    let mut value = serde_json::to_value(report).map_err(|e| Error::Parse(e.to_string()))?;
    normalize(&mut value);
    let mut text = serde_json::to_string_pretty(&value).map_err(|e| Error::Parse(e.to_string()))?;
    text.push('\n');
    Ok(text)
}
