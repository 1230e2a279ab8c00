//! Text, CSV and JSON rendering of reports.

use conevol_core::verify::{VerificationConfig, VerificationReport};
use conevol_core::{
    Coefficient, ExactInterval, ExactScalar, InvariantReport, PiScalar, TorusLinkParams,
};
use serde_json::{json, Map, Value};

use crate::angle::AngleExpr;
use crate::sweep::SweepRow;

pub const SIG_DIGITS: usize = 12;

pub const SWEEP_CSV_HEADER: &str =
    "alpha_exact,alpha_rad,volume_exact,volume,length_exact,length_per_component";

/// `%.12g`: 12 significant digits, trailing zeros dropped, scientific
/// notation outside `1e-4 <= |x| < 1e12`.
pub fn fmt_sig(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let sci = format!("{:.*e}", SIG_DIGITS - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if exp < -4 || exp >= SIG_DIGITS as i32 {
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{}e{}{:02}", trim_zeros(mantissa), sign, exp.abs())
    } else {
        let decimals = (SIG_DIGITS as i32 - 1 - exp) as usize;
        trim_zeros(&format!("{x:.decimals$}"))
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s.to_string()
    }
}

/// JSON number carrying exactly the value printed by [`fmt_sig`].
pub fn json_float(x: f64) -> Value {
    let rounded: f64 = fmt_sig(x).parse().unwrap_or(x);
    serde_json::Number::from_f64(rounded).map_or(Value::Null, Value::Number)
}

pub fn scalar_json(x: &ExactScalar) -> Value {
    json!({
        "exact": x.to_string(),
        "coeff": x.coeff().to_string(),
        "grade": x.grade().exponent(),
        "float": x.to_float().map(json_float).unwrap_or(Value::Null),
    })
}

fn opt_scalar_json(x: &Option<ExactScalar>) -> Value {
    x.as_ref().map_or(Value::Null, scalar_json)
}

pub fn kind(params: &TorusLinkParams) -> &'static str {
    if params.is_unknot() {
        "unknot"
    } else if params.is_knot() {
        "knot"
    } else {
        "link"
    }
}

fn describe(params: &TorusLinkParams) -> String {
    match kind(params) {
        "unknot" => "unknot (degenerate singular set)".into(),
        "knot" => "knot".into(),
        _ => format!("link with {} components", params.components()),
    }
}

fn interval_json(w: &ExactInterval) -> Value {
    json!({
        "lower": scalar_json(w.lower()),
        "upper": scalar_json(w.upper()),
        "open": true,
    })
}

fn float_of<T: Coefficient>(x: &PiScalar<T>) -> String {
    x.to_float()
        .map(fmt_sig)
        .unwrap_or_else(|_| "overflow".into())
}

fn exact_and_float(x: &ExactScalar) -> String {
    format!("{x} = {}", float_of(x))
}

pub fn info_json(params: &TorusLinkParams, window: &ExactInterval) -> Value {
    json!({
        "params": params,
        "kind": kind(params),
        "interval": interval_json(window),
        "width": scalar_json(&window.width()),
        "effective_lower": scalar_json(&window.effective_lower()),
        "positivity_clamp": window.positivity_clamped(),
    })
}

pub fn info_text(params: &TorusLinkParams, window: &ExactInterval) -> String {
    let mut s = format!("t({},{}): {}\n", params.p(), params.q(), describe(params));
    if params.normalized_swap() {
        s += "  (input swapped to p <= q)\n";
    }
    s += &format!("  gcd, lcm     {}, {}\n", params.gcd(), params.lcm());
    s += &format!(
        "  window       ({}, {}) = ({}, {}) rad\n",
        window.lower(),
        window.upper(),
        float_of(window.lower()),
        float_of(window.upper())
    );
    s += &format!("  width        {}\n", exact_and_float(&window.width()));
    if window.positivity_clamped() {
        s += &format!(
            "  cone angles must be positive: admissible window is ({}, {})\n",
            window.effective_lower(),
            window.upper()
        );
    }
    s
}

fn alpha_json(alpha: &AngleExpr) -> Value {
    let mut v = scalar_json(&alpha.parsed);
    let map = v.as_object_mut().expect("object");
    map.insert("input".into(), Value::String(alpha.raw.clone()));
    map.insert("mode".into(), Value::String(alpha.mode.to_string()));
    map.insert(
        "approximation_error".into(),
        alpha.approximation_error.map_or(Value::Null, json_float),
    );
    v
}

pub fn report_json(report: &InvariantReport, alpha: &AngleExpr) -> Value {
    json!({
        "params": report.params,
        "kind": kind(&report.params),
        "alpha": alpha_json(alpha),
        "interval": interval_json(&report.interval),
        "asserted_spherical": report.asserted_spherical,
        "forced": report.forced,
        "positivity_clamp": report.positivity_clamp,
        "volume": opt_scalar_json(&report.volume),
        "volume_derivative": opt_scalar_json(&report.volume_derivative),
        "length_per_component": opt_scalar_json(&report.length_per_component),
        "length_total": opt_scalar_json(&report.length_total),
        "covering_residual": report.covering_residual.to_string(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Focus {
    Volume,
    Length,
}

pub fn report_text(report: &InvariantReport, alpha: &AngleExpr, focus: Focus) -> String {
    let params = &report.params;
    let mut s = format!(
        "T({},{})({}): {}\n",
        params.p(),
        params.q(),
        report.alpha,
        describe(params)
    );
    s += &format!("  alpha        {}\n", exact_and_float(&report.alpha));
    if let Some(err) = alpha.approximation_error {
        s += &format!(
            "               (from {} rad, approximation error {})\n",
            alpha.raw.trim(),
            fmt_sig(err)
        );
    }
    s += &format!("  window       {}\n", report.interval);
    s += if report.asserted_spherical {
        "  spherical    asserted\n"
    } else {
        "  spherical    not asserted (analytic continuation, --force)\n"
    };
    let line = |label: &str, x: &Option<ExactScalar>| {
        x.as_ref()
            .map(|v| format!("  {label:<12} {}\n", exact_and_float(v)))
            .unwrap_or_default()
    };
    match focus {
        Focus::Volume => {
            s += &line("volume", &report.volume);
            s += &line("dVol/dalpha", &report.volume_derivative);
        }
        Focus::Length => {
            s += &line("length", &report.length_per_component);
            s += &line("total length", &report.length_total);
        }
    }
    s += &format!("  covering     residual {}\n", report.covering_residual);
    s
}

pub fn sweep_csv(rows: &[SweepRow]) -> String {
    let mut s = String::from(SWEEP_CSV_HEADER);
    s.push('\n');
    for r in rows {
        s += &format!(
            "{},{},{},{},{},{}\n",
            r.alpha,
            fmt_sig(r.alpha_rad),
            r.volume,
            fmt_sig(r.volume_float),
            r.length_per_component,
            fmt_sig(r.length_float)
        );
    }
    s
}

pub fn sweep_json(params: &TorusLinkParams, window: &ExactInterval, rows: &[SweepRow]) -> Value {
    let rows: Vec<Value> = rows
        .iter()
        .map(|r| {
            json!({
                "alpha": scalar_json(&r.alpha),
                "volume": scalar_json(&r.volume),
                "length_per_component": scalar_json(&r.length_per_component),
            })
        })
        .collect();
    json!({
        "params": params,
        "interval": interval_json(window),
        "rows": rows,
    })
}

pub fn sweep_text(params: &TorusLinkParams, rows: &[SweepRow]) -> String {
    let mut s = format!(
        "sweep of T({},{})(alpha), {} samples\n",
        params.p(),
        params.q(),
        rows.len()
    );
    s += &format!(
        "{:<16} {:>16} {:<16} {:>16} {:<16} {:>16}\n",
        "alpha", "rad", "volume", "float", "length", "float"
    );
    for r in rows {
        s += &format!(
            "{:<16} {:>16} {:<16} {:>16} {:<16} {:>16}\n",
            r.alpha.to_string(),
            fmt_sig(r.alpha_rad),
            r.volume.to_string(),
            fmt_sig(r.volume_float),
            r.length_per_component.to_string(),
            fmt_sig(r.length_float)
        );
    }
    s
}

/// One cell of the volume grid; `None` where no structure is asserted.
pub struct GridCell {
    pub p: u64,
    pub q: u64,
    pub volume: Option<ExactScalar>,
}

pub fn table_text(alpha: &ExactScalar, q_max: u64, cells: &[GridCell]) -> String {
    let mut s = format!("volumes of T(p,q)({alpha}); blank where not asserted\n");
    s += &format!("{:>5}", "p\\q");
    for q in 1..=q_max {
        s += &format!(" {q:>14}");
    }
    s.push('\n');
    for row in cells.chunks(q_max as usize) {
        s += &format!("{:>5}", row[0].p);
        for c in row {
            let v = c.volume.as_ref().map(float_of).unwrap_or_default();
            s += &format!(" {v:>14}");
        }
        s.truncate(s.trim_end().len());
        s.push('\n');
    }
    s
}

pub fn table_csv(q_max: u64, cells: &[GridCell]) -> String {
    let mut s = String::from("p");
    for q in 1..=q_max {
        s += &format!(",{q}");
    }
    s.push('\n');
    for row in cells.chunks(q_max as usize) {
        s += &row[0].p.to_string();
        for c in row {
            s.push(',');
            if let Some(v) = &c.volume {
                s += &float_of(v);
            }
        }
        s.push('\n');
    }
    s
}

pub fn table_json(alpha: &AngleExpr, cells: &[GridCell]) -> Value {
    let cells: Vec<Value> = cells
        .iter()
        .map(|c| {
            json!({
                "p": c.p,
                "q": c.q,
                "asserted_spherical": c.volume.is_some(),
                "volume": opt_scalar_json(&c.volume),
            })
        })
        .collect();
    json!({ "alpha": alpha_json(alpha), "cells": cells })
}

pub fn verify_json(config: &VerificationConfig, report: &VerificationReport) -> Value {
    let mut map = Map::new();
    map.insert("config".into(), json!(config));
    map.insert("passed".into(), json!(report.passed()));
    map.insert("cases_run".into(), json!(report.cases_run));
    map.insert("checks_run".into(), json!(report.checks_run));
    map.insert("max_fd_residual".into(), json_float(report.max_fd_residual));
    map.insert(
        "max_cross_path_residual".into(),
        json_float(report.max_cross_path_residual),
    );
    map.insert("failures".into(), json!(report.failures));
    Value::Object(map)
}

pub fn verify_text(config: &VerificationConfig, report: &VerificationReport) -> String {
    let mut s = format!(
        "identity suite: {} cases, {} checks, seed {}, p <= {}, q <= {}\n",
        report.cases_run, report.checks_run, config.seed, config.p_max, config.q_max
    );
    s += &format!(
        "  max fd residual          {} (tol {})\n",
        fmt_sig(report.max_fd_residual),
        fmt_sig(config.rel_tol)
    );
    s += &format!(
        "  max cross-path residual  {} (tol {})\n",
        fmt_sig(report.max_cross_path_residual),
        fmt_sig(conevol_core::verify::CROSS_PATH_TOL)
    );
    s += &format!("  failures                 {}\n", report.failures.len());
    if !report.failures.is_empty() {
        s += &format!(
            "{:<20} {:>6} {:>6} {:<16} {:<20} {:<20} {}\n",
            "check", "p", "q", "alpha", "expected", "got", "residual"
        );
        for f in &report.failures {
            s += &format!(
                "{:<20} {:>6} {:>6} {:<16} {:<20} {:<20} {}\n",
                f.check, f.p, f.q, f.alpha, f.expected, f.got, f.residual
            );
        }
    }
    s += if report.passed() { "PASS\n" } else { "FAIL\n" };
    s
}
