//! JSON and CSV serialization of node sets and cubature rules.
//!
//! Exact rationals are written as `"p/q"` strings (`"p"` for integers).
//! CSV rows carry 17-significant-digit decimals followed by the exact
//! values in trailing columns. Floats in JSON use the shortest
//! representation that parses back to the same bits.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::chebyshev::{GaussRule, RuleKind};
use crate::error::{Error, Result};
use crate::index_sets::{
    c_weight, classify, enum_hn_star, enum_lambda_interior, enum_lambda_n, lambda_weight, node_scale, BoundaryClass,
};
use crate::lattice::{ExactPoint, HomogIndex};
use crate::quadrature::{CubatureRule, Domain};
use crate::Rational;

pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rational(s: &str) -> Result<Rational> {
    let bad = || Error::Malformed(format!("not a rational: {s:?}"));
    let (p, q) = match s.trim().split_once('/') {
        Some((p, q)) => (p.trim(), q.trim()),
        None => (s.trim(), "1"),
    };
    let p: BigInt = p.parse().map_err(|_| bad())?;
    let q: BigInt = q.parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    Ok(Rational::new(p, q))
}

fn float(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

fn decimal(x: f64) -> String {
    format!("{x:.16e}")
}

fn csv_error(e: impl std::fmt::Display) -> Error {
    Error::Malformed(format!("csv: {e}"))
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Malformed(format!("json: {e}"))
}

fn write_csv(header: Vec<String>, rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(&header).map_err(csv_error)?;
    for row in rows {
        w.write_record(&row).map_err(csv_error)?;
    }
    let bytes = w.into_inner().map_err(csv_error)?;
    String::from_utf8(bytes).map_err(csv_error)
}

fn numbered(prefix: &str, count: usize) -> impl Iterator<Item = String> + '_ {
    (1..=count).map(move |i| format!("{prefix}{i}"))
}

/// Which lattice node set to list.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum NodeDomain {
    /// `H*_n`, the closed fundamental domain.
    Omega,
    /// `Lambda_n`, the closed simplex.
    Simplex,
    /// `Lambda°_n`, the open simplex.
    SimplexInterior,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeRecord {
    pub index: HomogIndex,
    pub point: Vec<String>,
    pub stratum: BoundaryClass,
    pub c: String,
    /// Only for members of `Lambda_n`.
    pub lambda: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct NodeSet {
    pub domain: NodeDomain,
    pub dimension: usize,
    pub n: u32,
    pub nodes: Vec<NodeRecord>,
}

/// Nodes `k/((d+1)n)` of the chosen set with their stratum and weights.
pub fn node_set(domain: NodeDomain, d: usize, n: u32) -> Result<NodeSet> {
    let indices = match domain {
        NodeDomain::Omega => enum_hn_star(d, n)?,
        NodeDomain::Simplex => enum_lambda_n(d, n)?,
        NodeDomain::SimplexInterior => enum_lambda_interior(d, n)?,
    };
    let scale = node_scale(d, n);
    let nodes = indices
        .into_iter()
        .map(|k| {
            let lambda = if k.is_sorted_desc() { Some(rational_to_string(&lambda_weight(&k, n)?)) } else { None };
            Ok(NodeRecord {
                point: k.scaled(scale).to_strings(),
                stratum: classify(&k, n)?,
                c: rational_to_string(&c_weight(&k, n)?),
                lambda,
                index: k,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(NodeSet { domain, dimension: d, n, nodes })
}

fn stratum_label(s: &BoundaryClass) -> String {
    match s {
        BoundaryClass::Interior => "interior".into(),
        BoundaryClass::Boundary { a, b } => format!("boundary({a},{b})"),
    }
}

/// Columns `k1..`, `t1..`, `stratum`, `c`, `lambda`, then the exact `t`,
/// `c` and `lambda`.
pub fn node_set_csv(set: &NodeSet) -> Result<String> {
    let m = set.dimension + 1;
    let mut header: Vec<String> = numbered("k", m).chain(numbered("t", m)).collect();
    header.extend(["stratum", "c", "lambda", "t_exact", "c_exact", "lambda_exact"].map(String::from));
    let rows = set
        .nodes
        .iter()
        .map(|r| {
            let mut row: Vec<String> = r.index.entries().iter().map(|k| k.to_string()).collect();
            for p in &r.point {
                row.push(decimal(float(&parse_rational(p)?)));
            }
            row.push(stratum_label(&r.stratum));
            row.push(decimal(float(&parse_rational(&r.c)?)));
            let lambda = r.lambda.as_deref().map(parse_rational).transpose()?;
            row.push(lambda.as_ref().map(|l| decimal(float(l))).unwrap_or_default());
            row.push(r.point.join(" "));
            row.push(r.c.clone());
            row.push(r.lambda.clone().unwrap_or_default());
            Ok(row)
        })
        .collect::<Result<Vec<_>>>()?;
    write_csv(header, rows)
}

/// Serialized trigonometric cubature rule.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CubatureRecord {
    pub domain: Domain,
    pub dimension: usize,
    pub n: u32,
    pub exactness_degree: u32,
    pub indices: Vec<HomogIndex>,
    pub nodes: Vec<Vec<String>>,
    pub weights: Vec<String>,
}

impl From<&CubatureRule> for CubatureRecord {
    fn from(r: &CubatureRule) -> Self {
        CubatureRecord {
            domain: r.domain,
            dimension: r.dimension,
            n: r.n,
            exactness_degree: r.exactness_degree,
            indices: r.indices.clone(),
            nodes: r.nodes.iter().map(ExactPoint::to_strings).collect(),
            weights: r.weights.iter().map(rational_to_string).collect(),
        }
    }
}

impl TryFrom<CubatureRecord> for CubatureRule {
    type Error = Error;
    fn try_from(r: CubatureRecord) -> Result<Self> {
        if r.nodes.len() != r.weights.len() || r.indices.len() != r.nodes.len() {
            return Err(Error::SizeMismatch { expected: r.nodes.len(), got: r.weights.len() });
        }
        Ok(CubatureRule {
            domain: r.domain,
            dimension: r.dimension,
            n: r.n,
            exactness_degree: r.exactness_degree,
            indices: r.indices,
            nodes: r.nodes.iter().map(|p| ExactPoint::parse(p)).collect::<Result<_>>()?,
            weights: r.weights.iter().map(|w| parse_rational(w)).collect::<Result<_>>()?,
        })
    }
}

/// Columns `t1..`, `weight`, `t_exact`, `weight_exact`.
pub fn cubature_csv(rule: &CubatureRule) -> Result<String> {
    let m = rule.dimension + 1;
    let mut header: Vec<String> = numbered("t", m).collect();
    header.extend(["weight", "t_exact", "weight_exact"].map(String::from));
    let rows = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .map(|(p, w)| {
            let mut row: Vec<String> = p.to_f64().coords().iter().map(|&x| decimal(x)).collect();
            row.push(decimal(float(w)));
            row.push(p.to_strings().join(" "));
            row.push(rational_to_string(w));
            row
        })
        .collect();
    write_csv(header, rows)
}

/// Serialized rule on `Delta*`: `nodes` in the real coordinates `x`,
/// `t_preimages` exact on the simplex.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussRecord {
    pub kind: RuleKind,
    pub dimension: usize,
    pub n: u32,
    pub degree: u32,
    pub indices: Vec<HomogIndex>,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
    pub t_preimages: Vec<Vec<String>>,
}

impl From<&GaussRule> for GaussRecord {
    fn from(r: &GaussRule) -> Self {
        GaussRecord {
            kind: r.kind,
            dimension: r.dimension,
            n: r.n,
            degree: r.degree,
            indices: r.indices.clone(),
            nodes: r.nodes.clone(),
            weights: r.weights.clone(),
            t_preimages: r.t_preimages.iter().map(ExactPoint::to_strings).collect(),
        }
    }
}

impl TryFrom<GaussRecord> for GaussRule {
    type Error = Error;
    fn try_from(r: GaussRecord) -> Result<Self> {
        let len = r.nodes.len();
        for got in [r.weights.len(), r.t_preimages.len(), r.indices.len()] {
            if got != len {
                return Err(Error::SizeMismatch { expected: len, got });
            }
        }
        Ok(GaussRule {
            kind: r.kind,
            dimension: r.dimension,
            n: r.n,
            degree: r.degree,
            indices: r.indices,
            nodes: r.nodes,
            weights: r.weights,
            t_preimages: r.t_preimages.iter().map(|p| ExactPoint::parse(p)).collect::<Result<_>>()?,
        })
    }
}

/// Columns `x1..`, `weight`, `t_exact`.
pub fn gauss_csv(rule: &GaussRule) -> Result<String> {
    let mut header: Vec<String> = numbered("x", rule.dimension).collect();
    header.extend(["weight", "t_exact"].map(String::from));
    let rows = rule
        .nodes
        .iter()
        .zip(&rule.weights)
        .zip(&rule.t_preimages)
        .map(|((x, w), t)| {
            let mut row: Vec<String> = x.iter().map(|&v| decimal(v)).collect();
            row.push(decimal(*w));
            row.push(t.to_strings().join(" "));
            row
        })
        .collect();
    write_csv(header, rows)
}

/// Node coordinates, weights and exact preimages.
pub type GaussRows = (Vec<Vec<f64>>, Vec<f64>, Vec<ExactPoint>);

/// Reads back the rows written by [`gauss_csv`].
pub fn gauss_rows_from_csv(text: &str) -> Result<GaussRows> {
    let mut reader = csv::Reader::from_reader(text.as_bytes());
    let mut nodes = Vec::new();
    let mut weights = Vec::new();
    let mut pre = Vec::new();
    for rec in reader.records() {
        let rec = rec.map_err(csv_error)?;
        let fields: Vec<&str> = rec.iter().collect();
        if fields.len() < 3 {
            return Err(Error::Malformed(format!("csv row with {} fields", fields.len())));
        }
        let num = |s: &str| s.parse::<f64>().map_err(|_| Error::Malformed(format!("not a number: {s:?}")));
        let d = fields.len() - 2;
        nodes.push(fields[..d].iter().map(|s| num(s)).collect::<Result<Vec<_>>>()?);
        weights.push(num(fields[d])?);
        let parts: Vec<String> = fields[d + 1].split_whitespace().map(String::from).collect();
        pre.push(ExactPoint::parse(&parts)?);
    }
    Ok((nodes, weights, pre))
}

pub fn to_json<T: Serialize>(value: &T) -> Result<String> {
    serde_json::to_string_pretty(value).map_err(json_error)
}

pub fn from_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(json_error)
}
