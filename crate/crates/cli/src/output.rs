//! JSON and CSV rendering.

use causal_capacity::bounds::{channel_summary, SweepRow};
use causal_capacity::{Channel, Report};
use serde_json::{json, Map, Value};

pub const CSV_HEADER: &str = "p,gamma,causality,analytic,hw,hw_minus_causality";

/// Rounds to 12 significant digits and prints the shortest form of the result,
/// switching to exponent notation for magnitudes below 1e-4.
pub fn sig12(x: f64) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let rounded: f64 = format!("{x:.11e}").parse().expect("formatted float parses");
    if (1e-4..1e15).contains(&rounded.abs()) {
        format!("{rounded}")
    } else {
        format!("{rounded:e}")
    }
}

pub fn csv_row(r: &SweepRow<f64>) -> String {
    [
        r.p,
        r.gamma,
        r.causality,
        r.analytic,
        r.hw,
        r.hw_minus_causality,
    ]
    .map(sig12)
    .join(",")
}

fn number(x: f64) -> Value {
    serde_json::Number::from_f64(x).map_or(Value::Null, Value::Number)
}

pub fn report_json(r: &Report) -> String {
    let d = &r.diagnostics;
    let mut diag = Map::new();
    let optional = [
        ("restarts", d.restarts.map(|v| json!(v))),
        ("iterations", d.iterations.map(|v| json!(v))),
        ("best_objective", d.best_objective.map(number)),
        ("seed", d.seed.map(|v| json!(v))),
        ("tolerance", d.tolerance.map(number)),
        ("converged_restarts", d.converged_restarts.map(|v| json!(v))),
    ];
    for (key, value) in optional {
        if let Some(v) = value {
            diag.insert(key.into(), v);
        }
    }
    if !d.per_restart.is_empty() {
        diag.insert(
            "per_restart".into(),
            d.per_restart.iter().copied().map(number).collect(),
        );
    }
    for (k, v) in &d.values {
        diag.insert((*k).into(), number(*v));
    }
    for (k, v) in &d.flags {
        diag.insert((*k).into(), json!(v));
    }
    if !d.notes.is_empty() {
        diag.insert("notes".into(), json!(d.notes));
    }
    let best_input = r.best_input.as_ref().map(|psi| {
        psi.data()
            .iter()
            .map(|z| json!([z.re, z.im]))
            .collect::<Vec<_>>()
    });
    json!({
        "channel": r.channel_label,
        "method": r.method.as_str(),
        "value": number(r.value),
        "diagnostics": diag,
        "best_input": best_input,
    })
    .to_string()
}

pub fn summary_json(c: &Channel) -> String {
    let s = channel_summary(c);
    json!({
        "label": s.label,
        "qubits_in": s.qubits_in,
        "qubits_out": s.qubits_out,
        "kraus_rank": s.kraus_rank,
        "choi_spectrum": s.choi_spectrum,
        "completeness_residual": s.completeness_residual,
        "marginal_residual": s.marginal_residual,
    })
    .to_string()
}
