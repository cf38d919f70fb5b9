//! Discrete inner products over the lattice node sets and the cubature
//! rules on the fundamental domain and on the simplex.

use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::index_sets::{
    c_weight, check_dim, enum_hn, enum_hn_star, enum_lambda_interior, enum_lambda_n, lambda_weight, node_scale,
};
use crate::lattice::{ExactPoint, HomogIndex, HomogPoint};
use crate::{Complex, Rational};

fn check(d: usize, n: u32) -> Result<()> {
    check_dim(d)?;
    if n == 0 {
        return Err(Error::InvalidOrder(0, "must be at least 1"));
    }
    Ok(())
}

/// `(d+1) n^d` as an exact rational.
fn lattice_volume(d: usize, n: u32) -> Rational {
    Rational::from_integer(BigInt::from(d + 1) * BigInt::from(n).pow(d as u32))
}

fn weighted_sum<F, G>(exec: Exec, nodes: &[(HomogIndex, f64)], scale: i64, f: F, g: G) -> Complex
where
    F: Fn(&HomogPoint) -> Complex + Sync + Send,
    G: Fn(&HomogPoint) -> Complex + Sync + Send,
{
    exec.sum_complex(nodes, |(k, w)| {
        let t = k.node(scale);
        f(&t) * g(&t).conj() * *w
    })
}

/// `(1/((d+1)n^d)) sum_{j in H_n} f(j/((d+1)n)) conj(g(j/((d+1)n)))`.
pub fn inner_product_n<F, G>(d: usize, n: u32, f: F, g: G, exec: Exec) -> Result<Complex>
where
    F: Fn(&HomogPoint) -> Complex + Sync + Send,
    G: Fn(&HomogPoint) -> Complex + Sync + Send,
{
    check(d, n)?;
    let nodes: Vec<(HomogIndex, f64)> = enum_hn(d, n)?.into_iter().map(|k| (k, 1.0)).collect();
    let norm = nodes.len() as f64;
    Ok(weighted_sum(exec, &nodes, node_scale(d, n), f, g) / norm)
}

/// Symmetric product over `H*_n` with the boundary weights `c`.
pub fn inner_product_sym<F, G>(d: usize, n: u32, f: F, g: G, exec: Exec) -> Result<Complex>
where
    F: Fn(&HomogPoint) -> Complex + Sync + Send,
    G: Fn(&HomogPoint) -> Complex + Sync + Send,
{
    let rule = cubature_omega(d, n)?;
    Ok(rule.integrate(|t| f(t) * g(t).conj(), exec))
}

/// Simplex product over `Lambda_n` with the weights `lambda`.
pub fn inner_product_simplex<F, G>(d: usize, n: u32, f: F, g: G, exec: Exec) -> Result<Complex>
where
    F: Fn(&HomogPoint) -> Complex + Sync + Send,
    G: Fn(&HomogPoint) -> Complex + Sync + Send,
{
    let rule = cubature_simplex(d, n)?;
    Ok(rule.integrate(|t| f(t) * g(t).conj(), exec))
}

/// `(d!/n^d) sum_{j in Lambda°_n} f conj(g)` over the strictly interior nodes.
pub fn inner_product_simplex_interior<F, G>(d: usize, n: u32, f: F, g: G, exec: Exec) -> Result<Complex>
where
    F: Fn(&HomogPoint) -> Complex + Sync + Send,
    G: Fn(&HomogPoint) -> Complex + Sync + Send,
{
    check(d, n)?;
    let nodes: Vec<(HomogIndex, f64)> = enum_lambda_interior(d, n)?.into_iter().map(|k| (k, 1.0)).collect();
    let pre = crate::combinat::factorial_f64(d) / (n as f64).powi(d as i32);
    Ok(weighted_sum(exec, &nodes, node_scale(d, n), f, g) * pre)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Domain {
    /// The fundamental domain `Omega_H`.
    Omega,
    /// The fundamental simplex.
    Simplex,
}

/// Cubature rule with exact rational nodes and weights. The exactness
/// degree is measured on the trigonometric scale `(max k - min k)/(d+1)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CubatureRule {
    pub domain: Domain,
    pub dimension: usize,
    pub n: u32,
    pub indices: Vec<HomogIndex>,
    pub nodes: Vec<ExactPoint>,
    pub weights: Vec<Rational>,
    pub exactness_degree: u32,
}

impl CubatureRule {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn weight_sum(&self) -> Rational {
        self.weights.iter().fold(Rational::zero(), |a, w| a + w)
    }

    pub fn float_nodes(&self) -> Vec<HomogPoint> {
        self.nodes.iter().map(ExactPoint::to_f64).collect()
    }

    pub fn float_weights(&self) -> Vec<f64> {
        self.weights.iter().map(|w| w.to_f64().unwrap_or(f64::NAN)).collect()
    }

    /// `sum_i w_i f(x_i)`.
    pub fn integrate<F>(&self, f: F, exec: Exec) -> Complex
    where
        F: Fn(&HomogPoint) -> Complex + Sync + Send,
    {
        let pairs: Vec<(HomogPoint, f64)> = self.float_nodes().into_iter().zip(self.float_weights()).collect();
        exec.sum_complex(&pairs, |(t, w)| f(t) * *w)
    }

    /// Like [`CubatureRule::integrate`], stopping at the first failing node.
    pub fn try_integrate<F>(&self, f: F) -> Result<Complex>
    where
        F: Fn(&HomogPoint) -> Result<Complex>,
    {
        let mut acc = Complex::new(0.0, 0.0);
        for (t, w) in self.float_nodes().iter().zip(self.float_weights()) {
            acc += f(t)? * w;
        }
        Ok(acc)
    }
}

/// Nodes `j/((d+1)n)`, `j in H*_n`, weights `c_j/((d+1)n^d)`; exact for
/// all of `T_{2n-1}`.
pub fn cubature_omega(d: usize, n: u32) -> Result<CubatureRule> {
    check(d, n)?;
    let vol = lattice_volume(d, n);
    let indices = enum_hn_star(d, n)?;
    let weights = indices.iter().map(|k| Ok(c_weight(k, n)? / &vol)).collect::<Result<Vec<_>>>()?;
    Ok(build(Domain::Omega, d, n, indices, weights))
}

/// Nodes `j/((d+1)n)`, `j in Lambda_n`, weights `lambda_j/((d+1)n^d)`;
/// exact for all generalized cosines of degree up to `2n-1`.
pub fn cubature_simplex(d: usize, n: u32) -> Result<CubatureRule> {
    check(d, n)?;
    let vol = lattice_volume(d, n);
    let indices = enum_lambda_n(d, n)?;
    let weights = indices.iter().map(|k| Ok(lambda_weight(k, n)? / &vol)).collect::<Result<Vec<_>>>()?;
    Ok(build(Domain::Simplex, d, n, indices, weights))
}

fn build(domain: Domain, d: usize, n: u32, indices: Vec<HomogIndex>, weights: Vec<Rational>) -> CubatureRule {
    let scale = node_scale(d, n);
    let nodes = indices.iter().map(|k| k.scaled(scale)).collect();
    debug_assert!(weights.iter().fold(Rational::zero(), |a, w| a + w).is_one());
    CubatureRule { domain, dimension: d, n, indices, nodes, weights, exactness_degree: 2 * n - 1 }
}
