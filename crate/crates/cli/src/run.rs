use std::fs;
use std::io::Write;

use fracineq::fracint::Interval;
use fracineq::hfam::{check_h_convex, check_superadditive, ClassCheckReport, HFunction, Verdict, DEFAULT_CLASS_TOL};
use fracineq::search::{min_slack_search, tightness_profile, FamilyRange, SearchError, SearchSpace, SweepParam};
use fracineq::verify::{float, Instance, ReportWitness, Status, TheoremId, VerifyError, VerifyOptions};
use fracineq::{selftest, FunctionSpec64, HFunction64};
use serde::Serialize;
use thiserror::Error;

use crate::config::{Command, OutputFormat, Param, RunConfig};
use crate::output;
use crate::spec::{parse_function, parse_h, ParseError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("cannot parse spec: {0}")]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error(transparent)]
    Search(SearchError),
    #[error("i/o failure: {0}")]
    Io(#[from] std::io::Error),
    #[error("csv failure: {0}")]
    Csv(#[from] csv::Error),
}

fn usage<T>(msg: impl Into<String>) -> Result<T, CliError> {
    Err(CliError::Usage(msg.into()))
}

/// Executes the command and returns the process exit code: 0 holds/pass,
/// 2 violated/fail, 3 inapplicable/divergent, 1 usage or internal error.
pub fn run(config: &RunConfig) -> i32 {
    match execute(config).and_then(|(text, code)| emit(config, &text).map(|_| code)) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            1
        }
    }
}

fn emit(config: &RunConfig, text: &str) -> Result<(), CliError> {
    match &config.out_path {
        Some(path) => fs::write(path, text)?,
        None => std::io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

/// Rendered output and exit code.
pub fn execute(config: &RunConfig) -> Result<(String, i32), CliError> {
    if !(config.tol > 0.0) {
        return usage(format!("--tol must be positive, got {}", config.tol));
    }
    if config.grid_n < 3 {
        return usage(format!("--grid-n must be at least 3, got {}", config.grid_n));
    }
    match config.command {
        Command::Selftest => selftest_cmd(config),
        Command::Verify => verify_cmd(config),
        Command::Sweep => sweep_cmd(config),
        Command::Search => search_cmd(config),
        Command::Check => check_cmd(config),
    }
}

fn options(config: &RunConfig) -> VerifyOptions {
    VerifyOptions {
        tol: config.tol,
        grid_n: config.grid_n,
        seed: config.seed,
        force: config.force,
        ..VerifyOptions::default()
    }
}

fn theorem(config: &RunConfig) -> Result<TheoremId, CliError> {
    let Some(name) = &config.theorem_id else {
        return usage("--theorem is required");
    };
    match TheoremId::parse(name) {
        Some(TheoremId::Reduction) | None => usage(format!("unknown theorem '{name}'")),
        Some(t) => Ok(t),
    }
}

fn function(config: &RunConfig) -> Result<FunctionSpec64, CliError> {
    match &config.f_spec {
        Some(s) => Ok(parse_function(s)?),
        None => usage("--f is required"),
    }
}

fn h_function(config: &RunConfig) -> Result<Option<HFunction64>, CliError> {
    config.h_spec.as_deref().map(parse_h).transpose().map_err(CliError::from)
}

fn interval(config: &RunConfig, f: &FunctionSpec64) -> Result<Interval<f64>, CliError> {
    let d = f.domain();
    let (a, b) = (config.a.unwrap_or(d.a()), config.b.unwrap_or(d.b()));
    Interval::new(a, b).or_else(|_| usage(format!("need a < b, got [{a}, {b}]")))
}

fn instance(config: &RunConfig, sweep: Option<Param>) -> Result<Instance, CliError> {
    let theorem = theorem(config)?;
    let f = function(config)?;
    let interval = interval(config, &f)?;
    let h = h_function(config)?;
    if Instance::needs_h(theorem) && h.is_none() && sweep != Some(Param::S) {
        return usage(format!("{theorem} needs --h"));
    }
    if Instance::needs_alpha(theorem) && config.alpha.is_none() && sweep != Some(Param::Alpha) {
        return usage(format!("{theorem} needs --alpha"));
    }
    if Instance::needs_p(theorem) && config.p.is_none() && sweep != Some(Param::P) {
        return usage(format!("{theorem} needs --p"));
    }
    Ok(Instance {
        theorem,
        f,
        h: h.filter(|_| Instance::needs_h(theorem)),
        interval,
        alpha: config.alpha.filter(|_| Instance::needs_alpha(theorem)),
        p: config.p.filter(|_| Instance::needs_p(theorem)),
    })
}

fn selftest_cmd(config: &RunConfig) -> Result<(String, i32), CliError> {
    let s = selftest::run();
    let text = match config.output {
        OutputFormat::Json => output::selftest_json(&s) + "\n",
        OutputFormat::Csv => output::csv_table(
            vec!["suite".into(), "passed".into(), "total".into()],
            s.by_suite().into_iter().map(|(n, p, t)| vec![n.to_string(), p.to_string(), t.to_string()]),
        )?,
        OutputFormat::Pretty => output::selftest_pretty(&s),
    };
    Ok((text, if s.all_passed() { 0 } else { 2 }))
}

fn verify_cmd(config: &RunConfig) -> Result<(String, i32), CliError> {
    let inst = instance(config, None)?;
    let r = inst.run(&options(config))?;
    let text = match config.output {
        OutputFormat::Json => r.to_json() + "\n",
        OutputFormat::Csv => output::csv_table(output::csv_header(r.theorem_id), [output::csv_row(None, &r)])?,
        OutputFormat::Pretty => output::report_pretty(&r),
    };
    Ok((text, r.status.exit_code()))
}

/// Worst status wins: violated over inapplicable over holds.
fn combined_exit(statuses: impl IntoIterator<Item = Status>) -> i32 {
    let all: Vec<Status> = statuses.into_iter().collect();
    if all.contains(&Status::Violated) {
        2
    } else if all.contains(&Status::Inapplicable) {
        3
    } else {
        0
    }
}

fn sweep_cmd(config: &RunConfig) -> Result<(String, i32), CliError> {
    let Some(param) = config.param else {
        return usage("sweep needs --param alpha|p|s");
    };
    if config.values.is_empty() {
        return usage("sweep needs --values v1,v2,...");
    }
    let inst = instance(config, Some(param))?;
    let sweep = match param {
        Param::Alpha => SweepParam::Alpha,
        Param::P => SweepParam::P,
        Param::S => SweepParam::S,
    };
    let rows = tightness_profile(&inst, sweep, &config.values, &options(config))?;
    let text = match config.output {
        OutputFormat::Json => output::profile_json(&rows) + "\n",
        OutputFormat::Csv => output::profile_csv(&rows, inst.theorem)?,
        OutputFormat::Pretty => rows
            .iter()
            .map(|r| format!("{} = {}\n{}", sweep.as_str(), output::num(r.param), output::report_pretty(&r.report)))
            .collect(),
    };
    Ok((text, combined_exit(rows.iter().map(|r| r.report.status))))
}

fn range(v: &[f64], name: &str) -> Result<Option<(f64, f64)>, CliError> {
    match v {
        [] => Ok(None),
        [lo, hi] => Ok(Some((*lo, *hi))),
        _ => usage(format!("--{name} takes lo,hi")),
    }
}

fn family(name: &str) -> Result<FamilyRange, CliError> {
    Ok(match name {
        "power" => FamilyRange::power((1.0, 4.0)),
        "quadratic" => FamilyRange::quadratic((0.1, 2.0), (-1.0, 1.0), (0.0, 1.0)),
        "exp" => FamilyRange::exp(),
        "abspow" => FamilyRange::abs_power((1.0, 3.0), (0.0, 2.0)),
        other => return usage(format!("unknown search family '{other}' (power, quadratic, exp, abspow)")),
    })
}

fn search_cmd(config: &RunConfig) -> Result<(String, i32), CliError> {
    let theorem = theorem(config)?;
    let families = config.families.iter().map(|n| family(n)).collect::<Result<Vec<_>, _>>()?;
    let mut space = SearchSpace::new(theorem, families);
    space.h_set = match h_function(config)? {
        Some(h) => vec![h],
        None => vec![HFunction::identity(), HFunction::constant(1.0).map_err(VerifyError::from)?],
    };
    if let Some(r) = range(&config.a_range, "a-range")? {
        space.a_range = r;
    }
    if let Some(r) = range(&config.b_range, "b-range")? {
        space.b_range = r;
    }
    match (range(&config.alpha_range, "alpha-range")?, config.alpha) {
        (Some(r), _) => space.alpha_range = r,
        (None, Some(a)) => space.alpha_range = (a, a),
        _ => {}
    }
    match (range(&config.p_range, "p-range")?, config.p) {
        (Some(r), _) => space.p_range = Some(r),
        (None, Some(p)) => space.p_range = Some((p, p)),
        _ => {}
    }
    space.budget = config.budget;
    space.seed = config.seed;
    space.opts = VerifyOptions { grid_n: config.grid_n.min(12), ..options(config) };
    let result = match min_slack_search(&space, config.refine) {
        Ok(r) => r,
        Err(SearchError::AllInapplicable { n_inapplicable }) => {
            eprintln!("all {n_inapplicable} sampled instances were inapplicable");
            return Ok((String::new(), 3));
        }
        Err(e) => return Err(CliError::Search(e)),
    };
    let recheck = result.argmin_instance.run(&space.opts)?;
    let code = if result.min_slack >= -(config.tol + recheck.quad_error) { 0 } else { 2 };
    let text = match config.output {
        OutputFormat::Json => serde_json::to_string_pretty(&result).expect("search results serialize") + "\n",
        OutputFormat::Csv => output::search_csv(&result)?,
        OutputFormat::Pretty => output::search_pretty(&result),
    };
    Ok((text, code))
}

#[derive(Serialize)]
struct CheckOutput {
    check: &'static str,
    f: Option<String>,
    h: String,
    #[serde(with = "float")]
    a: f64,
    #[serde(with = "float")]
    b: f64,
    #[serde(with = "float")]
    max_violation: f64,
    samples: usize,
    verdict: &'static str,
    witness: Option<ReportWitness>,
}

fn check_cmd(config: &RunConfig) -> Result<(String, i32), CliError> {
    let Some(h) = h_function(config)? else {
        return usage("check needs --h");
    };
    let (report, f, i): (ClassCheckReport<f64>, Option<FunctionSpec64>, Interval<f64>) = if config.superadditive {
        let i = Interval::new(config.a.unwrap_or(0.0), config.b.unwrap_or(1.0)).or_else(|_| usage("need a < b"))?;
        let r = check_superadditive(&h, i, config.grid_n, DEFAULT_CLASS_TOL, config.seed).map_err(VerifyError::from)?;
        (r, None, i)
    } else {
        let f = function(config)?;
        let i = interval(config, &f)?;
        let r = check_h_convex(&f, &h, i, config.grid_n, DEFAULT_CLASS_TOL, config.seed).map_err(VerifyError::from)?;
        (r, Some(f), i)
    };
    let out = CheckOutput {
        check: if config.superadditive { "superadditive" } else { "h_convex" },
        f: f.map(|f| f.spec_text()),
        h: h.spec_text(),
        a: i.a(),
        b: i.b(),
        max_violation: report.max_violation,
        samples: report.samples,
        verdict: if report.passed() { "pass" } else { "fail" },
        witness: report.witness.map(Into::into),
    };
    let witness = out.witness.map(|w| serde_json::to_string(&w).expect("witness serializes")).unwrap_or_default();
    let text = match config.output {
        OutputFormat::Json => serde_json::to_string_pretty(&out).expect("check output serializes") + "\n",
        OutputFormat::Csv => output::csv_table(
            ["check", "f", "h", "max_violation", "samples", "verdict", "witness"].map(String::from).to_vec(),
            [vec![
                out.check.into(),
                out.f.clone().unwrap_or_default(),
                out.h.clone(),
                output::num(out.max_violation),
                out.samples.to_string(),
                out.verdict.into(),
                witness.clone(),
            ]],
        )?,
        OutputFormat::Pretty => {
            format!(
                "{} check of {}{}: {} (max scaled violation {}, {} samples) {}",
                out.check,
                out.f.as_deref().map(|f| format!("{f} with ")).unwrap_or_default(),
                out.h,
                out.verdict,
                output::num(out.max_violation),
                out.samples,
                if witness.is_empty() { String::new() } else { format!("witness {witness}") }
            )
            .trim_end()
            .to_string()
                + "\n"
        }
    };
    Ok((text, if report.verdict == Verdict::Pass { 0 } else { 2 }))
}
