//! Exponentials `phi_k`, generalized cosines `TC_k` and sines `TS_k`, the
//! product kernel `Theta_n`, the Dirichlet kernel and the interpolation
//! kernels, all evaluated in double precision.

use std::collections::BTreeMap;
use std::f64::consts::PI;

use serde::{Deserialize, Serialize};

use crate::combinat::{factorial_f64, next_permutation, permutations};
use crate::error::{Error, Result};
use crate::index_sets::node_scale;
use crate::lattice::{HomogIndex, HomogPoint};
use crate::Complex;

/// Below this `|sin(pi s)|` the ratio `sin(pi n s)/sin(pi s)` is replaced by
/// its limit.
pub const SINGULAR_EPS: f64 = 1e-9;

/// `exp(2 pi i <k, t> / (d+1))`.
pub fn phi(k: &HomogIndex, t: &HomogPoint) -> Complex {
    let d1 = t.coords().len() as f64;
    Complex::from_polar(1.0, 2.0 * PI * k.dot(t) / d1)
}

fn phase(entries: &[i64], coords: &[f64], scale: f64) -> Complex {
    let s: f64 = entries.iter().zip(coords).map(|(&k, &x)| k as f64 * x).sum();
    Complex::from_polar(1.0, scale * s)
}

/// Average of `phi_j(t)` over the distinct elements `j` of the orbit of `k`.
pub fn tc(k: &HomogIndex, t: &HomogPoint) -> Complex {
    let scale = 2.0 * PI / t.coords().len() as f64;
    let mut v = k.entries().to_vec();
    v.sort_unstable();
    let mut acc = phase(&v, t.coords(), scale);
    let mut count = 1usize;
    while next_permutation(&mut v).is_some() {
        acc += phase(&v, t.coords(), scale);
        count += 1;
    }
    acc / count as f64
}

/// Signed average `(1/(d+1)!) sum_sigma sgn(sigma) phi_k(t sigma)`.
pub fn ts(k: &HomogIndex, t: &HomogPoint) -> Complex {
    let m = t.coords().len();
    let scale = 2.0 * PI / m as f64;
    let (kk, tt) = (k.entries(), t.coords());
    let mut acc = Complex::new(0.0, 0.0);
    for p in permutations(m).iter() {
        let s: f64 = (0..m).map(|i| kk[i] as f64 * tt[p.map[i]]).sum();
        let z = Complex::from_polar(1.0, scale * s);
        if p.sign > 0 {
            acc += z;
        } else {
            acc -= z;
        }
    }
    acc / factorial_f64(m)
}

/// `v°` with entries `(d + 2 - 2i)(d + 1)/2`, `i = 1..d+1`.
pub fn v_zero(d: usize) -> HomogIndex {
    let d = d as i64;
    HomogIndex::new_unchecked((1..=d + 1).map(|i| (d + 2 - 2 * i) * (d + 1) / 2).collect())
}

/// Closed product form of `TS_{v°}`.
pub fn ts_v0_product(t: &HomogPoint) -> Complex {
    let c = t.coords();
    let m = c.len();
    let mut prod = 1.0;
    for i in 0..m {
        for j in i + 1..m {
            prod *= (PI * (c[i] - c[j])).sin();
        }
    }
    let pairs = (m * (m - 1) / 2) as i32;
    Complex::new(0.0, 2.0).powi(pairs) * prod / factorial_f64(m)
}

/// `sin(pi n s)/sin(pi s)`, with the limit `n (-1)^{m(n-1)}` near `s = m`.
pub fn sin_ratio(n: u32, s: f64) -> f64 {
    let den = (PI * s).sin();
    if den.abs() < SINGULAR_EPS {
        let m = s.round() as i64;
        let sign = if (m * (n as i64 - 1)).rem_euclid(2) == 0 { 1.0 } else { -1.0 };
        return n as f64 * sign;
    }
    (PI * n as f64 * s).sin() / den
}

/// `prod_j sin(pi n t_j)/sin(pi t_j)`.
pub fn theta(n: u32, t: &HomogPoint) -> f64 {
    t.coords().iter().map(|&s| sin_ratio(n, s)).product()
}

/// `Theta_{n+1} - Theta_n`, the sum of `phi_k` over `H*_n`.
pub fn dirichlet(n: u32, t: &HomogPoint) -> f64 {
    theta(n + 1, t) - theta(n, t)
}

/// Compact form of `(1/((d+1)n^d)) sum_{k in H*_n} c_k phi_k(t)`.
pub fn phi_star_kernel(n: u32, t: &HomogPoint) -> f64 {
    let c = t.coords();
    let m = c.len();
    let d = m - 1;
    let ratios: Vec<f64> = c.iter().map(|&s| sin_ratio(n, s)).collect();
    // subset weights |I|! (d - |I|)! / (d+1)!
    let weights: Vec<f64> =
        (0..=d).map(|s| factorial_f64(s) * factorial_f64(d - s) / factorial_f64(m)).collect();
    let mut total = 0.0;
    for j in 0..m {
        let others: Vec<usize> = (0..m).filter(|&i| i != j).collect();
        let prod: f64 = others.iter().map(|&i| ratios[i]).product();
        if prod == 0.0 {
            continue;
        }
        let mut inner = 0.0;
        for mask in 0u32..(1 << d) {
            let mut arg = c[j];
            for (bit, &i) in others.iter().enumerate() {
                if mask & (1 << bit) != 0 {
                    arg += 2.0 * c[i];
                }
            }
            inner += weights[mask.count_ones() as usize] * (PI * arg).cos();
        }
        total += prod * (PI * n as f64 * c[j]).cos() * inner;
    }
    total / ((m as f64) * (n as f64).powi(d as i32))
}

/// Kernel of the interpolation operator on the half-open set `H_n`:
/// `(1/((d+1)n^d)) sum_{k in H_n} phi_k(t)`, via its product decomposition.
pub fn phi_n_kernel(n: u32, t: &HomogPoint) -> Complex {
    let c = t.coords();
    let m = c.len();
    let nf = n as f64;
    // sum_{v=1}^{n} e^{2 pi i v s} and sum_{v=0}^{n-1} e^{2 pi i v s}
    let upper: Vec<Complex> =
        c.iter().map(|&s| Complex::from_polar(sin_ratio(n, s), PI * (nf + 1.0) * s)).collect();
    let lower: Vec<Complex> =
        c.iter().map(|&s| Complex::from_polar(1.0, PI * (nf - 1.0) * s) * sin_ratio(n, s)).collect();
    let mut total = Complex::new(0.0, 0.0);
    for j in 0..m {
        let head: Complex = upper[..j].iter().product();
        let tail: Complex = lower[j + 1..].iter().product();
        total += head * tail;
    }
    total / ((m as f64) * nf.powi(m as i32 - 1))
}

/// `(1/(d+1)!) sum_sigma f(t sigma)`.
pub fn sym_plus<F: Fn(&HomogPoint) -> Complex>(t: &HomogPoint, f: F) -> Complex {
    let m = t.coords().len();
    let mut acc = Complex::new(0.0, 0.0);
    for p in permutations(m).iter() {
        acc += f(&t.permuted(&p.map));
    }
    acc / factorial_f64(m)
}

/// `(1/(d+1)!) sum_sigma sgn(sigma) f(t sigma)`.
pub fn sym_minus<F: Fn(&HomogPoint) -> Complex>(t: &HomogPoint, f: F) -> Complex {
    let m = t.coords().len();
    let mut acc = Complex::new(0.0, 0.0);
    for p in permutations(m).iter() {
        acc += f(&t.permuted(&p.map)) * p.sign as f64;
    }
    acc / factorial_f64(m)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Basis {
    Exp,
    GenCosine,
    GenSine,
}

/// Finite expansion in one of the three bases, keyed by index.
#[derive(Debug, Clone, PartialEq)]
pub struct TrigPoly {
    basis: Basis,
    coeffs: BTreeMap<HomogIndex, Complex>,
}

impl TrigPoly {
    pub fn new(basis: Basis, coeffs: BTreeMap<HomogIndex, Complex>) -> Result<Self> {
        let mut dims = coeffs.keys().map(|k| k.dim());
        if let Some(d) = dims.next() {
            if let Some(bad) = dims.find(|&e| e != d) {
                return Err(Error::SizeMismatch { expected: d + 1, got: bad + 1 });
            }
        }
        for k in coeffs.keys() {
            let ok = match basis {
                Basis::Exp => true,
                Basis::GenCosine => k.is_sorted_desc(),
                Basis::GenSine => k.entries().windows(2).all(|w| w[0] > w[1]),
            };
            if !ok {
                let set = if basis == Basis::GenCosine { "Lambda" } else { "Lambda°" };
                return Err(Error::OutsideSet { index: k.entries().to_vec(), set });
            }
        }
        Ok(TrigPoly { basis, coeffs })
    }

    pub fn basis(&self) -> Basis {
        self.basis
    }

    pub fn coeffs(&self) -> &BTreeMap<HomogIndex, Complex> {
        &self.coeffs
    }

    /// Largest `(max k - min k)/(d+1)` over the keys; 0 when empty.
    pub fn degree(&self) -> i64 {
        self.coeffs.keys().map(|k| k.degree()).max().unwrap_or(0)
    }

    pub fn eval(&self, t: &HomogPoint) -> Complex {
        let f = match self.basis {
            Basis::Exp => phi,
            Basis::GenCosine => tc,
            Basis::GenSine => ts,
        };
        self.coeffs.iter().map(|(k, &a)| a * f(k, t)).sum()
    }
}

/// Evaluates an exponential expansion whose keys must lie in `H*_n`.
pub fn partial_sum(poly: &TrigPoly, n: u32, t: &HomogPoint) -> Result<Complex> {
    if poly.basis != Basis::Exp {
        return Err(Error::Malformed("partial sums use the exponential basis".into()));
    }
    for k in poly.coeffs.keys() {
        if k.max() - k.min() > node_scale(k.dim(), n) {
            return Err(Error::OutsideSet { index: k.entries().to_vec(), set: "H*_n" });
        }
    }
    Ok(poly.eval(t))
}
