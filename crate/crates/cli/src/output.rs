//! CSV and JSON renderings. Floats in CSV use 17 significant digits; JSON
//! numbers use the shortest representation that round-trips.

use std::fmt::Write as _;

use serde_json::{json, Map, Value};
use talenti_core::talenti::{ComparisonReport, DiagnosticReport, INTERPRETATION_FLAGS};
use talenti_core::weights::{ConditionStatus, ValidationReport};

use crate::suites::{HardyRow, IsoRow, LayerCakeRow};

pub fn num(x: f64) -> String {
    format!("{x:.16e}")
}

pub fn iso_csv(rows: &[IsoRow]) -> String {
    let mut s = String::from("seed,n_vertices,mu_A,t_A,P_A,P_RA,gap_bound,slack,holds\n");
    for r in rows {
        let p = &r.report;
        writeln!(
            s,
            "{},{},{},{},{},{},{},{},{}",
            r.seed,
            p.vertices,
            num(p.mu_a),
            num(p.t_a),
            num(p.p_a),
            num(p.p_ra),
            num(p.gap_bound),
            num(p.slack),
            p.holds && p.calibration_holds
        )
        .unwrap();
    }
    s
}

pub fn hardy_csv(rows: &[HardyRow]) -> String {
    let mut s = String::from("trial,seed,n_cells,equal_case,lhs,rhs,slack,holds\n");
    for r in rows {
        writeln!(
            s,
            "{},{},{},{},{},{},{},{}",
            r.trial,
            r.seed,
            r.cells,
            r.equal_case,
            num(r.lhs),
            num(r.rhs),
            num(r.rhs - r.lhs),
            r.holds
        )
        .unwrap();
    }
    s
}

pub fn layer_cake_csv(rows: &[LayerCakeRow]) -> String {
    let mut s = String::from("trial,t,lhs,mid,rhs,spread\n");
    for r in rows {
        let m = &r.members;
        writeln!(s, "{},{},{},{},{},{}", r.trial, num(r.t), num(m.lhs), num(m.mid), num(m.rhs), num(r.spread)).unwrap();
    }
    s
}

/// Common header of every JSON document.
pub fn envelope(config_hash: &str, command: &str) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("config_hash".into(), json!(config_hash));
    m.insert("interpretation_flags".into(), json!(INTERPRETATION_FLAGS));
    m
}

pub fn status_name(s: ConditionStatus) -> &'static str {
    match s {
        ConditionStatus::Proved => "proved",
        ConditionStatus::EmpiricalPass => "empirical-pass",
        ConditionStatus::Fail => "fail",
    }
}

pub fn condition_json(r: &ValidationReport<f64>) -> Value {
    json!({
        "status": status_name(r.status),
        "nonnegative": r.nonnegative,
        "nonincreasing": r.nonincreasing,
        "negative_witness": r.negative_witness,
        "increase_witness": r.increase_witness,
        "closed_form": r.closed_form.as_ref().map(|c| json!({
            "criterion": c.criterion,
            "margin": c.margin,
            "holds": c.holds,
        })),
        "grid_points": r.grid_points,
    })
}

pub fn comparison_json(r: &ComparisonReport<f64>, diagnostics: &DiagnosticReport<f64>) -> Value {
    let qnorms: Vec<Value> = r
        .qnorms
        .iter()
        .map(|q| json!({"q": q.q, "lhs": q.lhs, "rhs": q.rhs, "slack": q.slack, "holds": q.holds}))
        .collect();
    let levels: Vec<Value> = diagnostics
        .levels
        .iter()
        .map(|l| {
            json!({
                "t": l.t,
                "mass": l.mass,
                "energy_above": l.energy_above,
                "work_above": l.work_above,
                "energy_rate": l.energy_rate,
                "source_above": l.source_above,
                "perimeter_defect": l.perimeter_defect,
                "differential_ratio_u": finite(l.differential_ratio_u),
                "differential_ratio_v": finite(l.differential_ratio_v),
            })
        })
        .collect();
    json!({
        "t_E": r.t_e,
        "mu_E": r.mu_e,
        "hc": r.hc,
        "max_violation": r.max_violation,
        "violation_at": r.violation_at,
        "pointwise_holds": r.pointwise_holds,
        "qnorms": qnorms,
        "diagnostics": {
            "equimeasurability_error": r.equimeasurability_error,
            "distribution_excess": r.distribution_excess,
            "levels": levels,
        },
    })
}

fn finite(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

pub fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json renders");
    s.push('\n');
    s
}
