//! Condition reports shared by the command-line front end.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::cplx::{MhcReport, OpposedEntry, StrReport, TruncatedReport};
use crate::mhs::{ShiftEntry, ShiftReport, SubMhsReport};
use crate::rees::A1Report;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub name: String,
    pub status: Status,
    /// Evidence for a failure; `null` on success.
    pub witness: Value,
    pub parameters: Value,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Metadata {
    pub tool: String,
    pub version: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub d_max: Option<u32>,
}

impl Default for Metadata {
    fn default() -> Self {
        Metadata { tool: env!("CARGO_PKG_NAME").to_string(), version: env!("CARGO_PKG_VERSION").to_string(), d_max: None }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionReport {
    pub artifact: String,
    pub conditions: Vec<ConditionEntry>,
    /// Computed data that is not a pass/fail condition.
    #[serde(default)]
    pub details: Value,
    pub metadata: Metadata,
}

impl ConditionReport {
    pub fn new(artifact: impl Into<String>) -> Self {
        ConditionReport { artifact: artifact.into(), conditions: Vec::new(), details: Value::Null, metadata: Metadata::default() }
    }

    /// Adds a condition; `witness` is kept only when it fails.
    pub fn push(&mut self, name: &str, passed: bool, witness: Value, parameters: Value) {
        self.conditions.push(ConditionEntry {
            name: name.to_string(),
            status: if passed { Status::Pass } else { Status::Fail },
            witness: if passed { Value::Null } else { witness },
            parameters,
        });
    }

    pub fn passes(&self) -> bool {
        self.conditions.iter().all(|c| c.status == Status::Pass)
    }

    pub fn exit_code(&self) -> i32 {
        if self.passes() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.artifact);
        for c in &self.conditions {
            let status = match c.status {
                Status::Pass => "PASS",
                Status::Fail => "FAIL",
            };
            out.push_str(&format!("  {:<14} {status}", c.name));
            if !c.parameters.is_null() {
                out.push_str(&format!("  {}", c.parameters));
            }
            if !c.witness.is_null() {
                out.push_str(&format!("  witness: {}", c.witness));
            }
            out.push('\n');
        }
        if !self.details.is_null() {
            out.push_str(&format!("  details: {}\n", serde_json::to_string_pretty(&self.details).expect("serializable")));
        }
        out
    }
}

pub fn shift_entry_json(e: &ShiftEntry) -> Value {
    json!({ "weight": e.weight, "dim": e.dim, "found": e.found, "expected": e.expected })
}

pub fn opposed_entry_json(e: &OpposedEntry) -> Value {
    json!({ "degree": e.degree, "weight": e.weight, "dim": e.dim, "found": e.found, "expected": e.expected })
}

pub fn str_json(r: &[(i64, StrReport)]) -> Value {
    Value::Array(
        r.iter()
            .filter(|(_, s)| !s.holds())
            .map(|(k, s)| json!({ "weight": k, "e1_degenerate": s.e1_degenerate, "torsion_free": s.torsion_free, "split": s.split }))
            .collect(),
    )
}

pub fn push_shift(report: &mut ConditionReport, name: &str, r: &ShiftReport) {
    let failures: Vec<Value> = r.failures().into_iter().map(shift_entry_json).collect();
    report.push(name, r.passes(), Value::Array(failures), json!({ "shift": r.shift }));
}

pub fn push_mhc(report: &mut ConditionReport, prefix: &str, r: &MhcReport) {
    report.push(&format!("{prefix}Str"), r.str_holds(), str_json(&r.strictness), Value::Null);
    let failures: Vec<Value> = r.opposed.iter().filter(|e| !e.passes()).map(opposed_entry_json).collect();
    report.push(&format!("{prefix}MHC"), r.passes(), Value::Array(failures), json!({ "shift": r.shift }));
}

pub fn push_a1(report: &mut ConditionReport, name: &str, r: &A1Report) {
    let witnesses: Vec<Value> = r.witnesses.iter().map(|(d, e)| json!({ "degree": d, "exponent": e })).collect();
    report.push(name, r.holds, Value::Array(witnesses), Value::Null);
}

pub fn sub_mhs_json(r: &SubMhsReport) -> Value {
    json!({
        "conjugation_stable": r.conjugation_stable,
        "sub_failures": r.sub.as_ref().map(|s| s.failures().into_iter().map(shift_entry_json).collect::<Vec<_>>()),
    })
}

pub fn push_truncated(report: &mut ConditionReport, prefix: &str, r: &TruncatedReport) {
    report.push(
        &format!("{prefix}perfect-Gr"),
        r.perfect_gr(),
        json!({ "fiber_dim": r.fiber_dim, "graded_kernel_dim": r.graded_kernel_dim }),
        Value::Null,
    );
    report.push(&format!("{prefix}Str"), r.str_holds(), str_json(&r.strictness), Value::Null);
    let failures: Vec<Value> = r.opposed.iter().filter(|e| !e.passes()).map(opposed_entry_json).collect();
    report.push(&format!("{prefix}MHC"), r.opposed_holds(), Value::Array(failures), Value::Null);
    push_a1(report, &format!("{prefix}A1"), &r.a1);
    report.push(&format!("{prefix}A3"), r.a3.holds(), sub_mhs_json(&r.a3), json!({ "locus_dim": r.annihilator_locus_dim }));
}
