//! JSON, CSV and plain-text renderings.

use fracineq::search::{ProfileRow, SearchResult};
use fracineq::selftest::SelftestSummary;
use fracineq::verify::{InequalityReport, TheoremId};
use serde_json::json;

/// Shortest round-trip decimal, or `inf`/`-inf`/`nan`.
pub fn num(v: f64) -> String {
    if v.is_finite() {
        serde_json::to_string(&v).expect("finite floats serialize")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn opt_num(v: Option<f64>) -> String {
    v.map(num).unwrap_or_default()
}

/// Header row of report tables: `param, sides..., slacks..., status,
/// quad_error`.
pub fn csv_header(theorem: TheoremId) -> Vec<String> {
    let mut h = vec!["param".to_string()];
    h.extend(theorem.side_names().iter().map(|s| s.to_string()));
    h.extend(theorem.slack_names());
    h.push("status".into());
    h.push("quad_error".into());
    h
}

/// One table row; sides and slacks that were not computed stay empty.
pub fn csv_row(param: Option<f64>, r: &InequalityReport) -> Vec<String> {
    let mut row = vec![opt_num(param)];
    let sides = r.theorem_id.side_names().len();
    let slacks = r.theorem_id.slack_names().len();
    row.extend((0..sides).map(|i| opt_num(r.sides.get(i).map(|s| s.value))));
    row.extend((0..slacks).map(|i| opt_num(r.slacks.get(i).map(|s| s.value))));
    row.push(r.status.to_string());
    row.push(num(r.quad_error));
    row
}

pub fn csv_table(header: Vec<String>, rows: impl IntoIterator<Item = Vec<String>>) -> Result<String, csv::Error> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header)?;
    for r in rows {
        w.write_record(&r)?;
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn profile_csv(rows: &[ProfileRow], theorem: TheoremId) -> Result<String, csv::Error> {
    csv_table(csv_header(theorem), rows.iter().map(|r| csv_row(Some(r.param), &r.report)))
}

pub fn profile_json(rows: &[ProfileRow]) -> String {
    let reports: Vec<&InequalityReport> = rows.iter().map(|r| &r.report).collect();
    serde_json::to_string_pretty(&reports).expect("reports serialize")
}

pub fn report_pretty(r: &InequalityReport) -> String {
    let mut out = format!("{}: {}\n", r.theorem_id, r.status);
    let i = &r.inputs;
    out += &format!("  f = {}", i.f);
    if let Some(h) = &i.h {
        out += &format!(", h = {h}");
    }
    out += &format!(", [a, b] = [{}, {}]", num(i.a), num(i.b));
    if let Some(a) = i.alpha {
        out += &format!(", alpha = {}", num(a));
    }
    if let Some(p) = i.p {
        out += &format!(", p = {}", num(p));
    }
    out += &format!(", seed = {}\n", i.seed);
    let width = r.sides.iter().chain(&r.slacks).map(|s| s.name.len()).max().unwrap_or(0);
    for s in &r.sides {
        out += &format!("  side   {:width$}  {}\n", s.name, num(s.value));
    }
    for s in &r.slacks {
        out += &format!("  slack  {:width$}  {}\n", s.name, num(s.value));
    }
    out += &format!("  quad_error {}\n", num(r.quad_error));
    if let Some(reason) = &r.reason {
        out += &format!("  reason {}: {}\n", reason.code, reason.detail);
        if let Some(w) = &reason.witness {
            out += &format!("  witness {}\n", serde_json::to_string(w).expect("witness serializes"));
        }
    }
    out
}

pub fn search_csv(r: &SearchResult) -> Result<String, csv::Error> {
    let header = ["index", "f", "h", "a", "b", "alpha", "p", "slack"].map(String::from).to_vec();
    let rows = r.trace.iter().enumerate().map(|(k, t)| {
        let i = &t.inputs;
        vec![
            k.to_string(),
            i.f.clone(),
            i.h.clone().unwrap_or_default(),
            num(i.a),
            num(i.b),
            opt_num(i.alpha),
            opt_num(i.p),
            num(t.slack),
        ]
    });
    csv_table(header, rows)
}

pub fn search_pretty(r: &SearchResult) -> String {
    let i = &r.argmin;
    let mut out = format!(
        "{}: min slack {} over {} applicable instances ({} inapplicable)\n",
        r.theorem_id,
        num(r.min_slack),
        r.n_evaluated,
        r.n_inapplicable
    );
    out += &format!("  argmin f = {}, [a, b] = [{}, {}]", i.f, num(i.a), num(i.b));
    if let Some(h) = &i.h {
        out += &format!(", h = {h}");
    }
    if let Some(a) = i.alpha {
        out += &format!(", alpha = {}", num(a));
    }
    if let Some(p) = i.p {
        out += &format!(", p = {}", num(p));
    }
    out += &format!("\n  {} improvements recorded\n", r.trace.len());
    out
}

pub fn selftest_json(s: &SelftestSummary) -> String {
    let suites: Vec<_> = s
        .by_suite()
        .into_iter()
        .map(|(suite, passed, total)| json!({"suite": suite, "passed": passed, "total": total}))
        .collect();
    let failures: Vec<_> = s
        .checks
        .iter()
        .filter(|c| !c.passed)
        .map(|c| json!({"suite": c.suite, "name": c.name, "detail": c.detail}))
        .collect();
    let v = json!({"passed": s.passed(), "failed": s.failed(), "suites": suites, "failures": failures});
    serde_json::to_string_pretty(&v).expect("summary serializes")
}

pub fn selftest_pretty(s: &SelftestSummary) -> String {
    let mut out = String::new();
    for (suite, passed, total) in s.by_suite() {
        out += &format!("{suite}: {passed}/{total} passed\n");
    }
    for c in s.checks.iter().filter(|c| !c.passed) {
        out += &format!("FAILED {} {}: {}\n", c.suite, c.name, c.detail);
    }
    out
}
