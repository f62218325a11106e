use std::io::Read;

use anyhow::{bail, Context, Result};
use log::info;
use serde_json::{json, Value};

use flagcurve_core::checks::{run_all_checks, CheckConfig};
use flagcurve_core::classify::{classify_curve, p_conjugacy_search, reproduce_table, TableExpectations};
use flagcurve_core::criterion::build_criterion_system;
use flagcurve_core::lie::{LieElement, MatrixJson};
use flagcurve_core::lie1d::{flow_identities, sample_lambdas, verify_closures, verify_coord_changes, verify_ode_solutions};
use flagcurve_core::report::CheckItem;
use flagcurve_core::solver::system::PolySystemJson;
use flagcurve_core::solver::{find_rational_witness, PolySystem};
use flagcurve_core::sweep::SweepConfig;

use crate::{GlobalOpts, Suite};

/// JSON is the source of truth; `failure` names the first mismatch.
pub struct Report {
    pub json: Value,
    pub failure: Option<String>,
}

impl Report {
    fn ok(json: Value) -> Self {
        Report { json, failure: None }
    }

    fn from_items(items: &[CheckItem]) -> Self {
        let failure = items.iter().find(|i| !i.passed).map(|i| format!("{}: {}", i.section, i.name));
        Report {
            json: serde_json::to_value(items).expect("serializable"),
            failure,
        }
    }
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading stdin")?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {path}"))
    }
}

fn read_matrix(path: &str) -> Result<LieElement> {
    let text = read_input(path)?;
    MatrixJson::parse(&text).with_context(|| format!("parsing matrix from {path}"))
}

fn expectations(g: &GlobalOpts) -> TableExpectations {
    match g.corrupt_table_expectation {
        Some(row) => TableExpectations::default().corrupted(row),
        None => TableExpectations::default(),
    }
}

pub fn classify(g: &GlobalOpts, input: &str) -> Result<Report> {
    let x = read_matrix(input)?;
    let result = classify_curve(x.context(), &x, g.budget)?;
    info!("classified as {}", result.variant());
    let mut j = json!({ "curve": MatrixJson::from(&x) });
    if let (Some(obj), Value::Object(res)) = (j.as_object_mut(), result.to_json()) {
        obj.extend(res);
    }
    Ok(Report::ok(j))
}

pub fn table(g: &GlobalOpts) -> Result<Report> {
    let report = reproduce_table(&expectations(g), g.budget)?;
    let mismatch = report
        .rows
        .iter()
        .find(|r| !r.matches())
        .map(|r| format!("row {} expected {}, computed {}", r.row_id, r.expected, r.computed.variant()));
    let missing = report
        .conjugacy
        .iter()
        .find(|c| c.outcome.witness().is_none())
        .map(|c| format!("no conjugating element for row {} ~ row {}", c.from_row, c.to_row));
    Ok(Report {
        json: report.to_json(),
        failure: mismatch.or(missing),
    })
}

pub fn criterion(_g: &GlobalOpts, input: &str) -> Result<Report> {
    let x = read_matrix(input)?;
    let sys = build_criterion_system(x.context(), &x)?;
    let mut j = serde_json::to_value(sys.to_json())?;
    j["degreeBound"] = json!(sys.degree_bound());
    Ok(Report::ok(j))
}

pub fn conjugate(g: &GlobalOpts, from: &str, to: &str) -> Result<Report> {
    if from == "-" && to == "-" {
        bail!("at most one input may be read from stdin");
    }
    let (x1, x2) = (read_matrix(from)?, read_matrix(to)?);
    if x1.context() != x2.context() {
        bail!("matrices live in different flag contexts");
    }
    let outcome = p_conjugacy_search(x1.context(), &x1, &x2, g.budget)?;
    Ok(Report::ok(outcome.to_json()))
}

pub fn lie1d(g: &GlobalOpts, suite: Suite) -> Result<Report> {
    let lambdas = sample_lambdas();
    let items = match suite {
        Suite::Closure => verify_closures(&lambdas),
        Suite::Ode => verify_ode_solutions(&lambdas),
        Suite::Coordchange => verify_coord_changes(&lambdas, g.order as usize),
        Suite::Flow => flow_identities(),
    };
    Ok(Report::from_items(&items))
}

pub fn check_all(g: &GlobalOpts) -> Result<Report> {
    let cfg = CheckConfig {
        order: g.order as usize,
        budget: g.budget,
        expectations: expectations(g),
        sweep: Some(SweepConfig {
            seed: g.seed,
            cases: g.cases,
            budget: g.budget,
        }),
    };
    Ok(Report::from_items(&run_all_checks(&cfg)))
}

pub fn solve(g: &GlobalOpts, input: &str) -> Result<Report> {
    let text = read_input(input)?;
    let j: PolySystemJson = serde_json::from_str(&text).with_context(|| format!("parsing system from {input}"))?;
    let sys = PolySystem::from_json(&j)?;
    Ok(Report::ok(find_rational_witness(&sys, g.budget).to_json()))
}
