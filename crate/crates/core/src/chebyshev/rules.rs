//! Gaussian and Gauss-Lobatto type cubature on `Delta*`, and the
//! generators of the ideal whose variety is the Lobatto node set.

use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use num_traits::ToPrimitive;

use crate::combinat::binomial_u64;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::index_sets::{enum_lambda_interior, enum_lambda_n, lambda_weight, node_scale};
use crate::lattice::{ExactPoint, HomogIndex, HomogPoint};
use crate::Complex;

use super::{alpha_of, k_of, x_map, ChebIndex};

/// `cos(2 pi p/q)`. Angles whose cosine is rational are returned exactly;
/// others are folded into `[0, pi/2]` first so that symmetric angles give
/// values of equal magnitude.
fn cos_turns(p: i64, q: i64) -> f64 {
    let q = q.abs().max(1);
    let p = p.rem_euclid(q);
    let g = num_integer::gcd(p, q);
    let (mut p, q) = if g > 0 { (p / g, q / g) } else { (p, q) };
    match (p, q) {
        (_, 1) => return 1.0,
        (_, 2) => return -1.0,
        (_, 3) => return -0.5,
        (_, 4) => return 0.0,
        (1, 6) | (5, 6) => return 0.5,
        _ => {}
    }
    if 2 * p > q {
        p = q - p;
    }
    if 4 * p > q {
        -(2.0 * PI * (q - 2 * p) as f64 / (2 * q) as f64).cos()
    } else {
        (2.0 * PI * p as f64 / q as f64).cos()
    }
}

/// `sin(2 pi p/q) = cos(2 pi (q - 4p)/(4q))`.
fn sin_turns(p: i64, q: i64) -> f64 {
    let p = p.rem_euclid(q);
    if 2 * p > q {
        return -sin_turns(q - p, q);
    }
    cos_turns(q - 4 * p, 4 * q)
}

/// [`super::z_map`] at a rational point, summing the subset exponentials
/// with angles reduced exactly.
pub fn z_map_exact(t: &ExactPoint) -> Vec<Complex> {
    let num = t.numerators();
    let den = t.denominator();
    let m = num.len();
    let mut sums = vec![Complex::new(0.0, 0.0); m + 1];
    for mask in 0u32..(1 << m) {
        let k = mask.count_ones() as usize;
        if k == 0 || k == m {
            continue;
        }
        let p: i64 = (0..m).filter(|&j| mask & (1 << j) != 0).map(|j| num[j]).sum();
        sums[k] += Complex::new(cos_turns(p, den), sin_turns(p, den));
    }
    (1..m).map(|k| sums[k] / binomial_u64(m as i64, k as i64) as f64).collect()
}

/// [`super::weight_w`] at a rational point, via `sin^2(pi r) = (1 - cos 2 pi r)/2`.
pub fn weight_w_exact(t: &ExactPoint) -> f64 {
    let num = t.numerators();
    let den = t.denominator();
    let mut w = 1.0;
    for i in 0..num.len() {
        for j in i + 1..num.len() {
            w *= (1.0 - cos_turns(num[i] - num[j], den)) / 2.0;
        }
    }
    w
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum RuleKind {
    /// Weight `w^{1/2}`, nodes at the interior lattice points.
    Gauss,
    /// Weight `w^{-1/2}`, nodes on the closed simplex.
    Lobatto,
}

/// Cubature rule on `Delta*` in the real coordinates `x`. Exact for
/// polynomials of total degree `degree = 2n - 1` in `x`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GaussRule {
    pub kind: RuleKind,
    pub dimension: usize,
    pub n: u32,
    pub degree: u32,
    pub indices: Vec<HomogIndex>,
    pub t_preimages: Vec<ExactPoint>,
    pub nodes: Vec<Vec<f64>>,
    pub weights: Vec<f64>,
}

impl GaussRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// `sum_i w_i f(x_i)`.
    pub fn integrate<F>(&self, f: F, exec: Exec) -> Complex
    where
        F: Fn(&[f64]) -> Complex + Sync + Send,
    {
        let pairs: Vec<(&Vec<f64>, f64)> = self.nodes.iter().zip(self.weights.iter().copied()).collect();
        exec.sum_complex(&pairs, |(x, w)| f(x) * *w)
    }

    /// `sum_i w_i g(t_i)` over the simplex preimages of the nodes.
    pub fn integrate_preimage<F>(&self, g: F, exec: Exec) -> Complex
    where
        F: Fn(&HomogPoint) -> Complex + Sync + Send,
    {
        let pairs: Vec<(HomogPoint, f64)> =
            self.t_preimages.iter().map(ExactPoint::to_f64).zip(self.weights.iter().copied()).collect();
        exec.sum_complex(&pairs, |(t, w)| g(t) * *w)
    }
}

fn check(d: usize, n: u32) -> Result<()> {
    crate::index_sets::check_dim(d)?;
    if n == 0 {
        return Err(Error::InvalidOrder(0, "must be at least 1"));
    }
    Ok(())
}

fn assemble(kind: RuleKind, d: usize, n: u32, indices: Vec<HomogIndex>, scale: i64, weights: Vec<f64>) -> Result<GaussRule> {
    let t_preimages: Vec<ExactPoint> = indices.iter().map(|k| k.scaled(scale)).collect();
    let nodes = t_preimages.iter().map(|t| x_map(&z_map_exact(t))).collect::<Result<Vec<_>>>()?;
    Ok(GaussRule { kind, dimension: d, n, degree: 2 * n - 1, indices, t_preimages, nodes, weights })
}

/// Gaussian rule for `c_{1/2} w^{1/2} dx`: nodes `x(z(j/((n+d)(d+1))))`
/// for `j` in the interior set of order `n+d`, weights
/// `2^{d(d+1)} w(y) / ((d+1)(n+d)^d)`. It has `dim Pi_{n-1}` nodes.
pub fn gauss_rule(d: usize, n: u32) -> Result<GaussRule> {
    check(d, n)?;
    let m = n + d as u32;
    let indices = enum_lambda_interior(d, m)?;
    let scale = node_scale(d, m);
    let factor = 2f64.powi((d * (d + 1)) as i32) / ((d as f64 + 1.0) * (m as f64).powi(d as i32));
    let weights = indices.iter().map(|k| factor * weight_w_exact(&k.scaled(scale))).collect();
    assemble(RuleKind::Gauss, d, n, indices, scale, weights)
}

/// Gauss-Lobatto type rule for `c_{-1/2} w^{-1/2} dx`: nodes
/// `x(z(j/((d+1)n)))`, `j in Lambda_n`, weights `lambda_j/((d+1)n^d)`.
pub fn lobatto_rule(d: usize, n: u32) -> Result<GaussRule> {
    check(d, n)?;
    let indices = enum_lambda_n(d, n)?;
    let scale = node_scale(d, n);
    let vol = (d as f64 + 1.0) * (n as f64).powi(d as i32);
    let weights = indices
        .iter()
        .map(|k| Ok(lambda_weight(k, n)?.to_f64().unwrap_or(f64::NAN) / vol))
        .collect::<Result<Vec<_>>>()?;
    assemble(RuleKind::Lobatto, d, n, indices, scale, weights)
}

/// The pair `(alpha, alpha*)` with `alpha* = alpha(sort(k - v*))`,
/// `v* = (d+1, 0, ..., 0, -d-1)`. For `|alpha| = n+1` the difference
/// `T_alpha - T_alpha*` vanishes on the Lobatto nodes of order `n`.
pub fn ideal_generator(alpha: &ChebIndex) -> (ChebIndex, ChebIndex) {
    let k = k_of(alpha);
    let d1 = k.entries().len() as i64;
    let mut shifted = k.entries().to_vec();
    shifted[0] -= d1;
    shifted[d1 as usize - 1] += d1;
    let sorted = HomogIndex::new(shifted).expect("shift by v* stays in H").sorted_desc();
    (alpha.clone(), alpha_of(&sorted).expect("sorted"))
}
