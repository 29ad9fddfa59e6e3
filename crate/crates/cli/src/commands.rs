use std::fmt::Write;

use cmineq::catalog::listing;
use cmineq::divdiff::divided_difference;
use cmineq::jet::HARD_MAX_ORDER;
use cmineq::verifier::{
    check_cm_class, check_gen_inequality_with, find_mvt_witness, log_grid, run_gen_trials,
    run_trials, CampaignConfig, CmClassReport, GenCampaignConfig, GenReport, MvtWitness,
    VerificationReport, VerifyError,
};
use cmineq::{
    CatalogFunction, DividedDifference, ExtendedReal, FunctionId, Method, NodeSet, Params,
    DEFAULT_MAX_ORDER,
};
use serde::Serialize;

use crate::args::{
    CatalogAction, CmArgs, DivdiffArgs, Format, FunctionArgs, GenArgs, MethodArg, MvtArgs,
    SandwichArgs,
};
use crate::render::{csv, joined, json, margin_histogram, num, Error};

/// Environment variable overriding the jet-order cap.
pub const ORDER_CAP_VAR: &str = "CM_INEQ_MAX_ORDER";

/// Rendered output and whether it records a violation.
pub struct Outcome {
    pub text: String,
    pub violation: bool,
}

impl Outcome {
    fn clean(text: String) -> Self {
        Self {
            text,
            violation: false,
        }
    }
}

fn order_cap() -> Result<usize, Error> {
    match std::env::var(ORDER_CAP_VAR) {
        Err(std::env::VarError::NotPresent) => parse_order_cap(None),
        Err(e) => Err(format!("{ORDER_CAP_VAR}: {e}").into()),
        Ok(raw) => parse_order_cap(Some(&raw)),
    }
}

pub fn parse_order_cap(raw: Option<&str>) -> Result<usize, Error> {
    let Some(raw) = raw else {
        return Ok(DEFAULT_MAX_ORDER);
    };
    match raw.trim().parse::<usize>() {
        Ok(cap) if (1..=HARD_MAX_ORDER).contains(&cap) => Ok(cap),
        _ => Err(format!(
            "{ORDER_CAP_VAR} must be an integer in 1..={HARD_MAX_ORDER}, got `{raw}`"
        )
        .into()),
    }
}

fn params(args: &FunctionArgs) -> Params {
    let d = Params::default();
    Params {
        alpha: args.alpha.unwrap_or(d.alpha),
        beta: args.beta.unwrap_or(d.beta),
        gamma: args.gamma.unwrap_or(d.gamma),
    }
}

/// Resolves `--fn`; `all` (the default where allowed) selects every family.
fn select(args: &FunctionArgs, allow_all: bool) -> Result<Vec<CatalogFunction>, Error> {
    let p = params(args);
    match args.function.as_deref() {
        Some("all") | None if allow_all => Ok(CatalogFunction::all(p)?),
        Some("all") => Err("`--fn all` is not accepted here; name a single function".into()),
        None => Err("--fn is required".into()),
        Some(id) => Ok(vec![CatalogFunction::new(id.parse::<FunctionId>()?, p)?]),
    }
}

fn single(args: &FunctionArgs) -> Result<CatalogFunction, Error> {
    Ok(select(args, false)?.remove(0))
}

fn positive_nodes(nodes: &[f64]) -> Result<NodeSet, Error> {
    let ns = NodeSet::new(nodes.to_vec())?;
    ns.require_positive()?;
    Ok(ns)
}

fn names(functions: &[CatalogFunction]) -> String {
    functions
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join(", ")
}

fn fmt_ext(x: ExtendedReal) -> String {
    match x {
        ExtendedReal::Finite(v) => num(v),
        other => other.to_string(),
    }
}

#[derive(Serialize)]
struct DivdiffOutput {
    function: CatalogFunction,
    nodes: Vec<f64>,
    #[serde(flatten)]
    result: DividedDifference,
}

#[derive(Serialize)]
struct DivdiffRow {
    function: String,
    nodes: String,
    dd_standard: f64,
    s_paper: f64,
    n: usize,
    method: Method,
}

pub fn divdiff(args: &DivdiffArgs) -> Result<Outcome, Error> {
    let f = single(&args.function)?;
    let nodes = positive_nodes(&args.nodes)?;
    let values: Vec<f64> = nodes.as_slice().iter().map(|&x| f.value(x)).collect();
    let method = match args.method {
        MethodArg::Newton => Method::Newton,
        MethodArg::Lagrange => Method::Lagrange,
    };
    let result = divided_difference(&nodes, &values, method)?;
    let out = DivdiffOutput {
        function: f,
        nodes: nodes.as_slice().to_vec(),
        result,
    };
    let text = match args.format {
        Format::Json => json(&out)?,
        Format::Csv => csv([DivdiffRow {
            function: f.to_string(),
            nodes: joined(&out.nodes),
            dd_standard: result.standard,
            s_paper: result.reversed,
            n: result.n,
            method,
        }])?,
        Format::Human => format!(
            "function     {f}\nnodes        {}\nmethod       {}\nn            {}\ndd_standard  {}\ns_paper      {}\n",
            joined(&out.nodes).replace(';', ", "),
            args.method.name(),
            result.n,
            num(result.standard),
            num(result.reversed),
        ),
    };
    Ok(Outcome::clean(text))
}

impl MethodArg {
    fn name(self) -> &'static str {
        match self {
            MethodArg::Newton => "newton",
            MethodArg::Lagrange => "lagrange",
        }
    }
}

pub fn catalog(action: &CatalogAction) -> Result<Outcome, Error> {
    let CatalogAction::List { json: as_json } = action;
    let entries = listing();
    if *as_json {
        return Ok(Outcome::clean(json(&entries)?));
    }
    let mut text = String::new();
    for e in &entries {
        let params: Vec<String> = e
            .params_schema
            .iter()
            .map(|p| format!("{} {}", p.name, p.domain))
            .collect();
        let class = serde_json::to_value(e.cm_class)?;
        let _ = writeln!(
            text,
            "{:<14} {:<36} {:<22} {:<10} {}",
            e.id.as_str(),
            e.formula,
            class.as_str().unwrap_or_default(),
            if e.strict { "strict" } else { "non-strict" },
            if params.is_empty() {
                "-".to_string()
            } else {
                params.join("; ")
            },
        );
    }
    Ok(Outcome::clean(text))
}

#[derive(Serialize)]
struct SandwichRow {
    trial: usize,
    function: String,
    n: usize,
    nodes: String,
    s_value: f64,
    lower: ExtendedReal,
    upper: ExtendedReal,
    margin_lower: ExtendedReal,
    margin_upper: ExtendedReal,
    interior_a: f64,
    interior_b: ExtendedReal,
    interior_margin_lower: ExtendedReal,
    interior_margin_upper: ExtendedReal,
    gen_margin: f64,
    strict_expected: bool,
    verdict: cmineq::verifier::Verdict,
}

const SHOWN_VIOLATIONS: usize = 10;

pub fn verify_sandwich(args: &SandwichArgs) -> Result<Outcome, Error> {
    let functions = select(&args.function, true)?;
    let (n_min, n_max) = args.count.range();
    let s = &args.sampling;
    let mut config = CampaignConfig::new(functions, s.trials, s.seed);
    config.n_min = n_min;
    config.n_max = n_max;
    config.node_min = s.node_min;
    config.node_max = s.node_max;
    config.separation_floor = s.separation;
    config.max_order = order_cap()?;
    config.upper_shift = args.inject_violation.unwrap_or(0.0);
    let report = run_trials(&config)?;
    let text = match args.format {
        Format::Json => json(&report)?,
        Format::Csv => csv(report.trials.iter().map(|t| SandwichRow {
            trial: t.trial,
            function: t.function.to_string(),
            n: t.n,
            nodes: joined(&t.nodes),
            s_value: t.s_value,
            lower: t.lower,
            upper: t.upper,
            margin_lower: t.margin_lower,
            margin_upper: t.margin_upper,
            interior_a: t.interior.a,
            interior_b: t.interior.b,
            interior_margin_lower: t.interior.margin_lower,
            interior_margin_upper: t.interior.margin_upper,
            gen_margin: t.gen_margin,
            strict_expected: t.strict_expected,
            verdict: t.verdict,
        }))?,
        Format::Human => sandwich_human(&report),
    };
    Ok(Outcome {
        text,
        violation: report.has_violation(),
    })
}

fn sandwich_human(report: &VerificationReport) -> String {
    let c = &report.config;
    let s = &report.summary;
    let mut out = String::new();
    let _ = writeln!(out, "functions         {}", names(&c.functions));
    let _ = writeln!(
        out,
        "trials            {} per function, n in [{}, {}], nodes in [{}, {}], seed {}",
        c.trials, c.n_min, c.n_max, c.node_min, c.node_max, c.seed
    );
    let _ = writeln!(out, "pass              {}", s.pass);
    let _ = writeln!(out, "pass (non-strict) {}", s.pass_nonstrict);
    let _ = writeln!(out, "violation         {}", s.violation);
    let _ = writeln!(out, "strict shortfall  {}", s.strict_shortfall);
    let _ = writeln!(out, "worst margin      {}", fmt_ext(s.worst_margin));
    let _ = writeln!(out, "smallest margin per trial:");
    out.push_str(&margin_histogram(
        report.trials.iter().map(|t| t.min_margin()),
    ));
    let bad: Vec<_> = report
        .trials
        .iter()
        .filter(|t| t.verdict == cmineq::verifier::Verdict::Violation)
        .collect();
    for t in bad.iter().take(SHOWN_VIOLATIONS) {
        let _ = writeln!(
            out,
            "violation: {} trial {} nodes [{}] s = {}, bounds [{}, {}]",
            t.function,
            t.trial,
            joined(&t.nodes).replace(';', ", "),
            num(t.s_value),
            fmt_ext(t.lower),
            fmt_ext(t.upper)
        );
    }
    if bad.len() > SHOWN_VIOLATIONS {
        let _ = writeln!(out, "... and {} more", bad.len() - SHOWN_VIOLATIONS);
    }
    out
}

#[derive(Serialize)]
struct CmGrid {
    min: f64,
    max: f64,
    points: usize,
    max_order: usize,
}

#[derive(Serialize)]
struct CmSummary {
    functions: usize,
    checked: usize,
    failures: usize,
}

#[derive(Serialize)]
struct CmOutput {
    config: CmGrid,
    reports: Vec<CmClassReport>,
    summary: CmSummary,
}

#[derive(Serialize)]
struct CmRow {
    function: String,
    cm_class: cmineq::CmClass,
    strict: bool,
    max_order: usize,
    checked: usize,
    failures: usize,
}

pub fn verify_cm(args: &CmArgs) -> Result<Outcome, Error> {
    let functions = select(&args.function, true)?;
    let cap = order_cap()?;
    let max_order = args.max_order.unwrap_or(cap);
    if !(args.grid_min > 0.0 && args.grid_max >= args.grid_min && args.grid_max.is_finite()) {
        return Err(format!("bad grid [{}, {}]", args.grid_min, args.grid_max).into());
    }
    let grid = log_grid(args.grid_min, args.grid_max, args.grid_points);
    let reports = functions
        .iter()
        .map(|f| check_cm_class(f, &grid, max_order, cap))
        .collect::<Result<Vec<_>, VerifyError>>()?;
    let summary = CmSummary {
        functions: reports.len(),
        checked: reports.iter().map(|r| r.checked).sum(),
        failures: reports.iter().map(|r| r.failures.len()).sum(),
    };
    let violation = summary.failures > 0;
    let out = CmOutput {
        config: CmGrid {
            min: args.grid_min,
            max: args.grid_max,
            points: args.grid_points,
            max_order,
        },
        reports,
        summary,
    };
    let text = match args.format {
        Format::Json => json(&out)?,
        Format::Csv => csv(out.reports.iter().map(|r| CmRow {
            function: r.function.to_string(),
            cm_class: r.cm_class,
            strict: r.strict,
            max_order: r.max_order,
            checked: r.checked,
            failures: r.failures.len(),
        }))?,
        Format::Human => {
            let mut text = String::new();
            let _ = writeln!(
                text,
                "grid {} points on [{}, {}], orders 1..={}",
                args.grid_points, args.grid_min, args.grid_max, max_order
            );
            for r in &out.reports {
                let status = if r.passed() { "ok" } else { "FAILED" };
                let _ = writeln!(
                    text,
                    "{:<40} {:>6} checks  {status}",
                    r.function.to_string(),
                    r.checked
                );
                for fail in r.failures.iter().take(SHOWN_VIOLATIONS) {
                    let _ = writeln!(
                        text,
                        "  n={} x={}: (-1)^n f^(n) = {} ({:?})",
                        fail.n,
                        num(fail.x),
                        num(fail.signed_derivative),
                        fail.issue
                    );
                }
            }
            text
        }
    };
    Ok(Outcome { text, violation })
}

#[derive(Serialize)]
struct GenRow {
    trial: usize,
    nodes: String,
    lhs: f64,
    rhs: f64,
    margin: f64,
    equality_expected: bool,
    verdict: cmineq::verifier::Verdict,
}

pub fn verify_gen(args: &GenArgs) -> Result<Outcome, Error> {
    let shift = args.inject_violation.unwrap_or(0.0);
    let report = match &args.nodes {
        Some(nodes) => {
            let ns = NodeSet::new(nodes.clone())?;
            GenReport::from_results(None, vec![check_gen_inequality_with(&ns, shift)?])
        }
        None => {
            let (n_min, n_max) = args.count.range();
            let s = &args.sampling;
            let mut config = GenCampaignConfig::new(s.trials, s.seed);
            config.n_min = n_min;
            config.n_max = n_max;
            config.node_min = s.node_min;
            config.node_max = s.node_max;
            config.separation_floor = s.separation;
            config.zero_fraction = args.zero_fraction;
            config.rhs_shift = shift;
            run_gen_trials(&config)?
        }
    };
    let text = match args.format {
        Format::Json => json(&report)?,
        Format::Csv => csv(report.trials.iter().map(|t| GenRow {
            trial: t.trial,
            nodes: joined(&t.result.nodes),
            lhs: t.result.lhs,
            rhs: t.result.rhs,
            margin: t.result.margin,
            equality_expected: t.result.equality_expected,
            verdict: t.result.verdict,
        }))?,
        Format::Human => gen_human(&report),
    };
    Ok(Outcome {
        text,
        violation: report.has_violation(),
    })
}

fn gen_human(report: &GenReport) -> String {
    let s = &report.summary;
    let mut out = String::new();
    if let [only] = report.trials.as_slice() {
        let r = &only.result;
        let _ = writeln!(out, "nodes     {}", joined(&r.nodes).replace(';', ", "));
        let _ = writeln!(out, "lhs       {}", num(r.lhs));
        let _ = writeln!(out, "rhs       {}", num(r.rhs));
        let _ = writeln!(out, "margin    {}", num(r.margin));
        if r.equality_expected {
            let _ = writeln!(out, "equality case (zero node)");
        }
        let _ = writeln!(
            out,
            "verdict   {}",
            serde_json::to_value(r.verdict)
                .unwrap_or_default()
                .as_str()
                .unwrap_or_default()
        );
        return out;
    }
    let _ = writeln!(out, "trials            {}", s.trials);
    let _ = writeln!(out, "pass              {}", s.pass);
    let _ = writeln!(out, "pass (non-strict) {}", s.pass_nonstrict);
    let _ = writeln!(out, "violation         {}", s.violation);
    let _ = writeln!(out, "equality cases    {}", s.equality_cases);
    let _ = writeln!(out, "worst margin      {}", num(s.worst_margin));
    let _ = writeln!(out, "margins:");
    out.push_str(&margin_histogram(
        report
            .trials
            .iter()
            .map(|t| ExtendedReal::Finite(t.result.margin)),
    ));
    out
}

#[derive(Serialize)]
struct MvtOutput {
    function: CatalogFunction,
    nodes: Vec<f64>,
    #[serde(flatten)]
    witness: MvtWitness,
}

#[derive(Serialize)]
struct MvtRow {
    function: String,
    nodes: String,
    x0: f64,
    target: f64,
    residual: f64,
    iterations: usize,
}

pub fn mvt(args: &MvtArgs) -> Result<Outcome, Error> {
    let f = single(&args.function)?;
    let nodes = positive_nodes(&args.nodes)?;
    let witness = match find_mvt_witness(&f, &nodes) {
        Ok(w) => w,
        // The bound guarantees a witness; failing to find one is a finding.
        Err(e @ VerifyError::WitnessUnreachable { .. }) => {
            return Ok(Outcome {
                text: format!("no witness found for {f}: {e}\n"),
                violation: true,
            })
        }
        Err(e) => return Err(e.into()),
    };
    let out = MvtOutput {
        function: f,
        nodes: nodes.as_slice().to_vec(),
        witness,
    };
    let text = match args.format {
        Format::Json => json(&out)?,
        Format::Csv => csv([MvtRow {
            function: f.to_string(),
            nodes: joined(&out.nodes),
            x0: witness.x0,
            target: witness.target,
            residual: witness.residual,
            iterations: witness.iterations,
        }])?,
        Format::Human => format!(
            "function    {f}\nnodes       {}\nx0          {}\ntarget      {}\nresidual    {}\niterations  {}\n",
            joined(&out.nodes).replace(';', ", "),
            witness.x0,
            num(witness.target),
            num(witness.residual),
            witness.iterations,
        ),
    };
    Ok(Outcome::clean(text))
}
