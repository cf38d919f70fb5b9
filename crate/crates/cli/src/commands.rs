use std::collections::{BTreeMap, BTreeSet};
use std::path::{Path, PathBuf};

use adf_core::chebyshev::{gauss_rule, lobatto_rule, t_eval, u_eval_character, ChebIndex, GaussRule};
use adf_core::export::{
    cubature_csv, gauss_csv, node_set, node_set_csv, parse_rational, to_json, CubatureRecord, GaussRecord, NodeDomain,
};
use adf_core::index_sets::{enum_hn_star, enum_lambda_n};
use adf_core::interpolation::{lebesgue_estimate, Interpolant, Kind};
use adf_core::quadrature::{cubature_omega, cubature_simplex, CubatureRule};
use adf_core::trig::{phi, tc};
use adf_core::{Complex, Exec, HomogIndex, HomogPoint};
use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use crate::budget::{ensure, omega_nodes, simplex_interior_nodes, simplex_nodes};
use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleChoice {
    /// Trigonometric rule on the fundamental domain.
    OmegaTrig,
    /// Trigonometric rule on the simplex.
    SimplexTrig,
    /// Gaussian rule in the Chebyshev variables.
    Gauss,
    /// Gauss-Lobatto type rule in the Chebyshev variables.
    Lobatto,
}

/// Settings shared by every command.
#[derive(Debug, Clone)]
pub struct Settings {
    pub dimension: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
    pub max_cells: u128,
}

fn node_count(kind: Kind, d: usize, n: u32) -> u128 {
    match kind {
        Kind::In | Kind::InStar => omega_nodes(d, n),
        Kind::Ln => simplex_interior_nodes(d, n),
        Kind::LnStar => simplex_nodes(d, n),
    }
}

fn finish(mut text: String, settings: &Settings) -> CliResult<String> {
    if !text.ends_with('\n') {
        text.push('\n');
    }
    if let Some(path) = &settings.output {
        std::fs::write(path, &text).map_err(|e| CliError::io(path, e))?;
    }
    Ok(text)
}

pub fn nodes(settings: &Settings, domain: NodeDomain, n: u32) -> CliResult<String> {
    let d = settings.dimension;
    let needed = match domain {
        NodeDomain::Omega => omega_nodes(d, n),
        NodeDomain::Simplex => simplex_nodes(d, n),
        NodeDomain::SimplexInterior => simplex_interior_nodes(d, n),
    };
    ensure("node set", needed, settings.max_cells)?;
    let set = node_set(domain, d, n)?;
    let text = match settings.format {
        Format::Json => to_json(&set)?,
        Format::Csv => node_set_csv(&set)?,
    };
    finish(text, settings)
}

/// Result of integrating every basis function up to `degree` with a rule.
#[derive(Debug, Clone, Serialize)]
pub struct SelfCheck {
    pub basis: &'static str,
    pub degree: u32,
    pub functions: usize,
    pub max_residual: f64,
}

#[derive(Serialize)]
struct WithCheck<R: Serialize> {
    #[serde(flatten)]
    rule: R,
    self_check: SelfCheck,
}

fn residual(value: Complex, is_constant: bool) -> f64 {
    (value - if is_constant { 1.0 } else { 0.0 }).norm()
}

fn trig_check(rule: &CubatureRule, degree: u32, cap: u128) -> CliResult<SelfCheck> {
    let d = rule.dimension;
    let omega = matches!(rule.domain, adf_core::quadrature::Domain::Omega);
    let count = if omega { omega_nodes(d, degree) } else { simplex_nodes(d, degree) };
    ensure("exactness sweep", count, cap)?;
    let basis = if omega { enum_hn_star(d, degree)? } else { enum_lambda_n(d, degree)? };
    let exec = Exec::default();
    let max_residual = basis
        .iter()
        .map(|k| {
            let is_constant = k.entries().iter().all(|&x| x == 0);
            let value = if omega { rule.integrate(|t| phi(k, t), exec) } else { rule.integrate(|t| tc(k, t), exec) };
            residual(value, is_constant)
        })
        .fold(0.0, f64::max);
    Ok(SelfCheck { basis: if omega { "phi" } else { "tc" }, degree, functions: basis.len(), max_residual })
}

fn chebyshev_check(rule: &GaussRule, degree: u32, cap: u128) -> CliResult<SelfCheck> {
    let d = rule.dimension;
    ensure("exactness sweep", simplex_nodes(d, degree), cap)?;
    let gauss = matches!(rule.kind, adf_core::chebyshev::RuleKind::Gauss);
    let exec = Exec::default();
    let mut functions = 0;
    let mut max_residual = 0.0f64;
    for m in 0..=degree as usize {
        for alpha in ChebIndex::of_degree(d, m) {
            let f = |t: &HomogPoint| {
                let v = if gauss { u_eval_character(&alpha, t) } else { t_eval(&alpha, t) };
                v.unwrap_or(Complex::new(f64::NAN, f64::NAN))
            };
            max_residual = max_residual.max(residual(rule.integrate_preimage(f, exec), m == 0));
            functions += 1;
        }
    }
    let basis = if gauss { "chebyshev-u" } else { "chebyshev-t" };
    Ok(SelfCheck { basis, degree, functions, max_residual })
}

pub fn cubature(settings: &Settings, choice: RuleChoice, n: u32, degree_cap: u32) -> CliResult<(String, SelfCheck)> {
    let d = settings.dimension;
    let cap = settings.max_cells;
    let needed = match choice {
        RuleChoice::OmegaTrig => omega_nodes(d, n),
        RuleChoice::SimplexTrig | RuleChoice::Lobatto => simplex_nodes(d, n),
        RuleChoice::Gauss => simplex_interior_nodes(d, n + d as u32),
    };
    ensure("cubature rule", needed, cap)?;
    let (text, check) = match choice {
        RuleChoice::OmegaTrig | RuleChoice::SimplexTrig => {
            let rule = if choice == RuleChoice::OmegaTrig { cubature_omega(d, n)? } else { cubature_simplex(d, n)? };
            let check = trig_check(&rule, rule.exactness_degree.min(degree_cap), cap)?;
            let text = match settings.format {
                Format::Json => to_json(&WithCheck { rule: CubatureRecord::from(&rule), self_check: check.clone() })?,
                Format::Csv => cubature_csv(&rule)?,
            };
            (text, check)
        }
        RuleChoice::Gauss | RuleChoice::Lobatto => {
            let rule = if choice == RuleChoice::Gauss { gauss_rule(d, n)? } else { lobatto_rule(d, n)? };
            let check = chebyshev_check(&rule, rule.degree.min(degree_cap), cap)?;
            let text = match settings.format {
                Format::Json => to_json(&WithCheck { rule: GaussRecord::from(&rule), self_check: check.clone() })?,
                Format::Csv => gauss_csv(&rule)?,
            };
            (text, check)
        }
    };
    Ok((finish(text, settings)?, check))
}

#[derive(Debug, Clone, Serialize)]
struct LebesgueRow {
    n: u32,
    estimate: f64,
    /// `estimate / (ln n)^d`; absent for `n = 1`.
    ratio: Option<f64>,
}

#[derive(Serialize)]
struct LebesgueTable {
    kind: Kind,
    dimension: usize,
    grid_factor: u32,
    rows: Vec<LebesgueRow>,
}

pub fn lebesgue(settings: &Settings, kind: Kind, orders: &[u32], grid_factor: u32) -> CliResult<String> {
    let d = settings.dimension;
    if grid_factor < 4 {
        return Err(CliError::Validation(format!("--grid must be at least 4, got {grid_factor}")));
    }
    let grid_count = |g: u32| if kind.on_simplex() { simplex_nodes(d, g) } else { omega_nodes(d, g) };
    for &n in orders {
        let points = grid_count(grid_factor.saturating_mul(n)).saturating_add(grid_count(2 * n));
        ensure(&format!("Lebesgue grid for n={n}"), points, settings.max_cells)?;
    }
    let mut rows = Vec::with_capacity(orders.len());
    for &n in orders {
        let estimate = lebesgue_estimate(kind, d, n, Some(grid_factor * n), Exec::default())?;
        let log = (n as f64).ln();
        let ratio = (n > 1).then(|| estimate / log.powi(d as i32));
        rows.push(LebesgueRow { n, estimate, ratio });
    }
    let text = match settings.format {
        Format::Json => to_json(&LebesgueTable { kind, dimension: d, grid_factor, rows })?,
        Format::Csv => {
            let mut s = String::from("n,estimate,ratio\n");
            for r in &rows {
                let ratio = r.ratio.map(|x| format!("{x:.16e}")).unwrap_or_default();
                s.push_str(&format!("{},{:.16e},{}\n", r.n, r.estimate, ratio));
            }
            s
        }
    };
    finish(text, settings)
}

fn read_json(path: &Path) -> CliResult<Value> {
    let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    serde_json::from_str(&text).map_err(|e| CliError::Validation(format!("{}: {e}", path.display())))
}

fn bad(key: String, what: &str) -> CliError {
    CliError::Validation(format!("{key}: {what}"))
}

fn parse_number(v: &Value, key: String) -> CliResult<f64> {
    match v {
        Value::Number(x) => x.as_f64().ok_or_else(|| bad(key, "not a finite number")),
        Value::String(s) => {
            let r = parse_rational(s).map_err(|_| bad(key.clone(), "expected a number or a \"p/q\" string"))?;
            num_traits_to_f64(&r).ok_or_else(|| bad(key, "rational out of range"))
        }
        _ => Err(bad(key, "expected a number or a \"p/q\" string")),
    }
}

fn num_traits_to_f64(r: &adf_core::Rational) -> Option<f64> {
    use num_traits::ToPrimitive;
    r.to_f64().filter(|x| x.is_finite())
}

fn parse_value(v: &Value, key: String) -> CliResult<Complex> {
    match v {
        Value::Array(parts) if parts.len() == 2 => {
            Ok(Complex::new(parse_number(&parts[0], format!("{key}[0]"))?, parse_number(&parts[1], format!("{key}[1]"))?))
        }
        Value::Array(_) => Err(bad(key, "expected a number or a [re, im] pair")),
        other => Ok(Complex::new(parse_number(other, key)?, 0.0)),
    }
}

fn parse_index(v: &Value, d: usize, key: String) -> CliResult<HomogIndex> {
    let entries = v.as_array().ok_or_else(|| bad(key.clone(), "expected an array of integers"))?;
    if entries.len() != d + 1 {
        return Err(bad(key, &format!("expected {} integers, got {}", d + 1, entries.len())));
    }
    let ints = entries
        .iter()
        .map(|e| e.as_i64().ok_or_else(|| bad(key.clone(), "expected an array of integers")))
        .collect::<CliResult<Vec<_>>>()?;
    HomogIndex::new(ints).map_err(|e| bad(key, &e.to_string()))
}

/// Reads `{"samples": [{"index": [...], "value": x | [re, im]}, ...]}`.
pub fn parse_samples(doc: &Value, d: usize) -> CliResult<BTreeMap<HomogIndex, Complex>> {
    let list = doc
        .get("samples")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("samples".into(), "expected an array of {index, value} objects"))?;
    let mut out = BTreeMap::new();
    for (i, entry) in list.iter().enumerate() {
        let key = format!("samples[{i}]");
        if !entry.is_object() {
            return Err(bad(key, "expected an object with index and value"));
        }
        let index = entry.get("index").ok_or_else(|| bad(format!("{key}.index"), "missing"))?;
        let value = entry.get("value").ok_or_else(|| bad(format!("{key}.value"), "missing"))?;
        let index = parse_index(index, d, format!("{key}.index"))?;
        let value = parse_value(value, format!("{key}.value"))?;
        if out.insert(index.clone(), value).is_some() {
            return Err(bad(format!("{key}.index"), &format!("duplicate node {index}")));
        }
    }
    Ok(out)
}

/// Reads `{"points": [[t_1, ..., t_{d+1}], ...]}` with zero-sum rows.
pub fn parse_points(doc: &Value, d: usize) -> CliResult<Vec<HomogPoint>> {
    let list = doc
        .get("points")
        .and_then(Value::as_array)
        .ok_or_else(|| bad("points".into(), "expected an array of coordinate arrays"))?;
    list.iter()
        .enumerate()
        .map(|(i, row)| {
            let key = format!("points[{i}]");
            let coords = row.as_array().ok_or_else(|| bad(key.clone(), "expected an array of coordinates"))?;
            if coords.len() != d + 1 {
                return Err(bad(key, &format!("expected {} coordinates, got {}", d + 1, coords.len())));
            }
            let coords = coords
                .iter()
                .enumerate()
                .map(|(j, c)| parse_number(c, format!("{key}[{j}]")))
                .collect::<CliResult<Vec<_>>>()?;
            HomogPoint::new(coords).map_err(|e| bad(key, &e.to_string()))
        })
        .collect()
}

fn show_keys(keys: &[&HomogIndex]) -> String {
    const SHOWN: usize = 5;
    let mut s: Vec<String> = keys.iter().take(SHOWN).map(|k| k.to_string()).collect();
    if keys.len() > SHOWN {
        s.push(format!("and {} more", keys.len() - SHOWN));
    }
    s.join(", ")
}

fn match_nodes(nodes: &[HomogIndex], samples: &BTreeMap<HomogIndex, Complex>) -> CliResult<()> {
    let expected: BTreeSet<&HomogIndex> = nodes.iter().collect();
    let missing: Vec<&HomogIndex> = nodes.iter().filter(|k| !samples.contains_key(*k)).collect();
    let extra: Vec<&HomogIndex> = samples.keys().filter(|k| !expected.contains(k)).collect();
    if missing.is_empty() && extra.is_empty() {
        return Ok(());
    }
    let mut parts = Vec::new();
    if !missing.is_empty() {
        parts.push(format!("{} missing ({})", missing.len(), show_keys(&missing)));
    }
    if !extra.is_empty() {
        parts.push(format!("{} extra ({})", extra.len(), show_keys(&extra)));
    }
    Err(CliError::Validation(format!("samples do not match the node set: {}", parts.join("; "))))
}

#[derive(Serialize)]
struct Evaluation {
    point: Vec<f64>,
    re: f64,
    im: f64,
}

#[derive(Serialize)]
struct EvalOutput {
    kind: Kind,
    dimension: usize,
    n: u32,
    values: Vec<Evaluation>,
}

pub fn eval(settings: &Settings, kind: Kind, n: u32, samples: &Path, points: Option<&Path>) -> CliResult<String> {
    let d = settings.dimension;
    ensure("node set", node_count(kind, d, n), settings.max_cells)?;
    let samples = parse_samples(&read_json(samples)?, d)?;
    let nodes = kind.nodes(d, n)?;
    match_nodes(&nodes, &samples)?;
    let points = match points {
        Some(path) => parse_points(&read_json(path)?, d)?,
        None => {
            let scale = adf_core::index_sets::node_scale(d, n);
            nodes.iter().map(|k| k.node(scale)).collect()
        }
    };
    let interpolant = Interpolant::new(kind, d, n, &samples)?;
    let values = interpolant.eval_many(&points, Exec::default());
    let rows: Vec<Evaluation> = points
        .iter()
        .zip(values)
        .map(|(t, v)| Evaluation { point: t.coords().to_vec(), re: v.re, im: v.im })
        .collect();
    let text = match settings.format {
        Format::Json => to_json(&EvalOutput { kind, dimension: d, n, values: rows })?,
        Format::Csv => {
            let mut header: Vec<String> = (1..=d + 1).map(|i| format!("t{i}")).collect();
            header.extend(["re".to_string(), "im".to_string()]);
            let mut s = header.join(",");
            s.push('\n');
            for r in &rows {
                let mut cells: Vec<String> = r.point.iter().map(|x| format!("{x:.16e}")).collect();
                cells.push(format!("{:.16e}", r.re));
                cells.push(format!("{:.16e}", r.im));
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            s
        }
    };
    finish(text, settings)
}
