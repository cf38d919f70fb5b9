//! Brute-force references for the fast code paths: literal box scans of
//! the index sets, term-by-term kernel sums, the finite Fourier identities
//! and exact high-order rules used as integral references.
//!
//! Everything here is single threaded and deterministic. Work is capped
//! by explicit budgets; exceeding one is an error, never a truncation.

use std::collections::{BTreeSet, HashMap};
use std::f64::consts::PI;
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::chebyshev::weight_w;
use crate::combinat::factorial_f64;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::index_sets::{
    c_weight, enum_hn, enum_hn_star, enum_lambda_interior, enum_lambda_n, lambda_weight, node_scale,
};
use crate::lattice::{orbit, project_to_homogeneous, HomogIndex, HomogPoint};
use crate::quadrature::{cubature_omega, cubature_simplex};
use crate::trig::{dirichlet, phi, phi_n_kernel, phi_star_kernel};
use crate::Complex;

/// Default cap on the number of candidates of a box scan.
pub const SCAN_BUDGET: u128 = 10_000_000;
/// Cap on the number of terms of a direct kernel sum.
pub const KERNEL_TERM_BUDGET: u128 = 100_000;
/// Largest degree [`reference_integral`] accepts.
pub const MAX_REFERENCE_DEGREE: u32 = 60;

/// Outcome of comparing a fast code path against its reference.
#[derive(Debug, Clone, PartialEq)]
pub struct OracleReport {
    pub name: String,
    pub max_abs_error: f64,
    pub cases_checked: u64,
    pub worst_case: String,
}

impl OracleReport {
    pub fn passed(&self, tol: f64) -> bool {
        self.cases_checked > 0 && self.max_abs_error < tol
    }
}

impl fmt::Display for OracleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: max_abs_error={:.3e} cases={} worst={}",
            self.name, self.max_abs_error, self.cases_checked, self.worst_case
        )
    }
}

/// Tracks the largest error seen and where it happened.
struct Tracker {
    name: String,
    max: f64,
    cases: u64,
    worst: String,
}

impl Tracker {
    fn new(name: impl Into<String>) -> Self {
        Tracker { name: name.into(), max: 0.0, cases: 0, worst: "none".into() }
    }

    fn record(&mut self, err: f64, case: impl FnOnce() -> String) {
        self.cases += 1;
        if err > self.max || err.is_nan() {
            self.max = if err.is_nan() { f64::INFINITY } else { err };
            self.worst = case();
        }
    }

    fn finish(self) -> OracleReport {
        OracleReport { name: self.name, max_abs_error: self.max, cases_checked: self.cases, worst_case: self.worst }
    }
}

/// `H*_n` by scanning `k_1..k_d` over `[-(d+1)n, (d+1)n]` and testing the
/// defining inequalities literally.
pub fn brute_enum_hn_star(d: usize, n: u32) -> Result<Vec<HomogIndex>> {
    brute_enum_hn_star_with_budget(d, n, SCAN_BUDGET)
}

pub fn brute_enum_hn_star_with_budget(d: usize, n: u32, budget: u128) -> Result<Vec<HomogIndex>> {
    if d == 0 {
        return Err(Error::InvalidDimension(d));
    }
    let m = d as i64 + 1;
    let r = m * n as i64;
    let side = (2 * r + 1) as u128;
    let needed = side.checked_pow(d as u32).unwrap_or(u128::MAX);
    if needed > budget {
        return Err(Error::Budget { what: "box scan", needed, cap: budget });
    }
    let mut out = Vec::new();
    let mut k = vec![-r; d];
    loop {
        let last = -k.iter().sum::<i64>();
        let mut full = k.clone();
        full.push(last);
        let congruent = full.iter().all(|x| (x - full[0]).rem_euclid(m) == 0);
        let inside = full.iter().all(|a| full.iter().all(|b| (a - b).abs() <= r));
        if congruent && inside {
            out.push(HomogIndex::new(full)?);
        }
        let mut p = 0;
        while p < d {
            k[p] += 1;
            if k[p] <= r {
                break;
            }
            k[p] = -r;
            p += 1;
        }
        if p == d {
            break;
        }
    }
    out.sort_unstable_by(|a, b| b.cmp(a));
    Ok(out)
}

/// `H_n` from the box scan: `-(d+1)n < k_i - k_j <= (d+1)n` for `i < j`.
fn brute_enum_hn(d: usize, n: u32) -> Result<Vec<HomogIndex>> {
    let r = node_scale(d, n);
    Ok(brute_enum_hn_star(d, n)?
        .into_iter()
        .filter(|k| {
            let e = k.entries();
            (0..e.len()).all(|i| (i + 1..e.len()).all(|j| e[i] - e[j] > -r && e[i] - e[j] <= r))
        })
        .collect())
}

/// `c_k = 1/#{j in H*_n : j = k mod (d+1)n}`, counted by residues.
fn brute_c_weights(d: usize, n: u32, set: &[HomogIndex]) -> HashMap<HomogIndex, f64> {
    let r = node_scale(d, n);
    let residue = |k: &HomogIndex| -> Vec<i64> { k.entries().iter().map(|x| x.rem_euclid(r)).collect() };
    let mut counts: HashMap<Vec<i64>, usize> = HashMap::new();
    for k in set {
        *counts.entry(residue(k)).or_default() += 1;
    }
    set.iter().map(|k| (k.clone(), 1.0 / counts[&residue(k)] as f64)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelKind {
    /// `sum_{k in H*_n} phi_k`.
    Dirichlet,
    /// `(1/((d+1)n^d)) sum_{k in H*_n} c_k phi_k`.
    PhiStar,
    /// `(1/((d+1)n^d)) sum_{k in H_n} phi_k`.
    HalfOpen,
}

/// Literal summation of a kernel over its index set.
pub fn direct_kernel_sum(kind: KernelKind, n: u32, t: &HomogPoint) -> Result<Complex> {
    let d = t.dim();
    let m = d as u128 + 1;
    let needed = (n as u128 + 1).pow(m as u32) - (n as u128).pow(m as u32);
    if needed > KERNEL_TERM_BUDGET {
        return Err(Error::Budget { what: "kernel terms", needed, cap: KERNEL_TERM_BUDGET });
    }
    let vol = (d as f64 + 1.0) * (n as f64).powi(d as i32);
    Ok(match kind {
        KernelKind::Dirichlet => brute_enum_hn_star(d, n)?.iter().map(|k| phi(k, t)).sum(),
        KernelKind::PhiStar => {
            let set = brute_enum_hn_star(d, n)?;
            let c = brute_c_weights(d, n, &set);
            set.iter().map(|k| phi(k, t) * c[k]).sum::<Complex>() / vol
        }
        KernelKind::HalfOpen => brute_enum_hn(d, n)?.iter().map(|k| phi(k, t)).sum::<Complex>() / vol,
    })
}

/// Both finite Fourier identities for the node set `H_n / ((d+1)n)`:
/// `(1/|H_n|) sum_{j in H_n} phi_k(j/((d+1)n))` is 1 when every entry of
/// `k` is divisible by `(d+1)n` and 0 otherwise, and dually with the roles
/// of `k` and `j` exchanged and the sign of the exponent flipped. Checked
/// for all `k` (resp. `j`) in `H*_{3n}`, three cells around the origin.
pub fn dft_identity_check(d: usize, n: u32) -> Result<OracleReport> {
    let scale = node_scale(d, n);
    let base = enum_hn(d, n)?;
    let probe = enum_hn_star(d, 3 * n)?;
    let count = base.len() as f64;
    let mut tr = Tracker::new(format!("dft_identity d={d} n={n}"));
    let divisible = |k: &HomogIndex| k.entries().iter().all(|x| x.rem_euclid(scale) == 0);
    for kappa in &probe {
        let expected = if divisible(kappa) { 1.0 } else { 0.0 };
        let dft: Complex = base.iter().map(|j| phi(kappa, &j.node(scale))).sum::<Complex>() / count;
        tr.record((dft - expected).norm(), || format!("DFT kappa={kappa}"));
        let idft: Complex = base.iter().map(|k| phi(k, &kappa.node(scale)).conj()).sum::<Complex>() / count;
        tr.record((idft - expected).norm(), || format!("IDFT alpha={kappa}/{scale}"));
    }
    Ok(tr.finish())
}

/// Measure for [`reference_integral`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Measure {
    /// Normalized Lebesgue measure on the fundamental domain.
    Omega,
    /// Normalized Lebesgue measure on the fundamental simplex.
    Simplex,
    /// `c_{-1/2} w^{-1/2} dx` on `Delta*`, pulled back to the simplex.
    ChebyshevFirst,
    /// `c_{1/2} w^{1/2} dx` on `Delta*`, pulled back to the simplex.
    ChebyshevSecond,
}

/// Integral of `f` (given as a function of `t`) of trigonometric degree at
/// most `degree_bound`, by an exact rule of sufficient order.
pub fn reference_integral<F>(measure: Measure, d: usize, degree_bound: u32, f: F) -> Result<Complex>
where
    F: Fn(&HomogPoint) -> Complex + Sync + Send,
{
    if degree_bound > MAX_REFERENCE_DEGREE {
        return Err(Error::DegreeCap { degree: degree_bound as usize, cap: MAX_REFERENCE_DEGREE as usize });
    }
    let order = |deg: u32| deg / 2 + 1;
    Ok(match measure {
        Measure::Omega => cubature_omega(d, order(degree_bound))?.integrate(f, Exec::Sequential),
        Measure::Simplex | Measure::ChebyshevFirst => {
            cubature_simplex(d, order(degree_bound))?.integrate(f, Exec::Sequential)
        }
        Measure::ChebyshevSecond => {
            let scale = 2f64.powi((d * (d + 1)) as i32) / factorial_f64(d + 1);
            let rule = cubature_simplex(d, order(degree_bound + 2 * d as u32))?;
            rule.integrate(|t| f(t) * weight_w(t) * scale, Exec::Sequential)
        }
    })
}

/// Gauss-Legendre nodes and weights on `[0, 1]`.
pub fn gauss_legendre(m: usize) -> Vec<(f64, f64)> {
    (1..=m)
        .map(|i| {
            let mut x = (PI * (i as f64 - 0.25) / (m as f64 + 0.5)).cos();
            let mut dp = 1.0;
            for _ in 0..100 {
                let (mut p0, mut p1) = (1.0, x);
                for k in 2..=m {
                    let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                    p0 = p1;
                    p1 = p2;
                }
                dp = m as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-16 {
                    break;
                }
            }
            ((1.0 - x) / 2.0, 1.0 / ((1.0 - x * x) * dp * dp))
        })
        .collect()
}

/// Mean of `f` over the fundamental simplex by a collapsed tensor
/// Gauss-Legendre rule with `m` points per direction. Independent of the
/// lattice rules; exact for polynomials in `t` of degree below `2m - d`.
pub fn simplex_mean_gl<F>(d: usize, m: usize, f: F) -> Complex
where
    F: Fn(&HomogPoint) -> Complex,
{
    let gl = gauss_legendre(m);
    let mut total = Complex::new(0.0, 0.0);
    let mut idx = vec![0usize; d];
    loop {
        // gaps s_i = t_i - t_{i+1} >= 0 with sum at most 1
        let mut rest = 1.0;
        let mut s = vec![0.0; d];
        let mut weight = 1.0;
        for i in 0..d {
            let (u, w) = gl[idx[i]];
            s[i] = rest * u;
            weight *= w * rest;
            rest *= 1.0 - u;
        }
        let mut tail = vec![0.0; d + 1];
        for i in (0..d).rev() {
            tail[i] = tail[i + 1] + s[i];
        }
        let c = -tail.iter().sum::<f64>() / (d as f64 + 1.0);
        let t = HomogPoint::raw(tail.iter().map(|x| x + c).collect());
        total += f(&t) * weight;
        let mut p = 0;
        while p < d {
            idx[p] += 1;
            if idx[p] < m {
                break;
            }
            idx[p] = 0;
            p += 1;
        }
        if p == d {
            break;
        }
    }
    // the gap simplex has volume 1/d!
    total * factorial_f64(d)
}

fn set_report(name: String, fast: &[HomogIndex], brute: &[HomogIndex]) -> OracleReport {
    let a: BTreeSet<&HomogIndex> = fast.iter().collect();
    let b: BTreeSet<&HomogIndex> = brute.iter().collect();
    let diff: Vec<String> = a.symmetric_difference(&b).take(1).map(|k| k.to_string()).collect();
    let equal = a == b && fast.len() == brute.len();
    OracleReport {
        name,
        max_abs_error: if equal { 0.0 } else { 1.0 },
        cases_checked: brute.len().max(1) as u64,
        worst_case: diff.first().cloned().unwrap_or_else(|| "none".into()),
    }
}

fn random_points(rng: &mut ChaCha8Rng, d: usize, count: usize) -> Vec<HomogPoint> {
    (0..count)
        .map(|_| {
            let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.5..1.5)).collect();
            project_to_homogeneous(&v).expect("finite input")
        })
        .collect()
}

/// Orders exercised for dimension `d` by [`run_all`].
fn orders(d: usize) -> std::ops::RangeInclusive<u32> {
    if d == 2 {
        1..=5
    } else {
        1..=3
    }
}

/// Runs every registered fast/brute pair and returns one report per pair.
pub fn run_all() -> Result<Vec<OracleReport>> {
    let mut out = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for d in [2usize, 3] {
        for n in orders(d) {
            let brute = brute_enum_hn_star(d, n)?;
            out.push(set_report(format!("enum_hn_star d={d} n={n}"), &enum_hn_star(d, n)?, &brute));
            out.push(set_report(format!("enum_hn d={d} n={n}"), &enum_hn(d, n)?, &brute_enum_hn(d, n)?));
            let sorted: Vec<HomogIndex> = brute.iter().filter(|k| k.is_sorted_desc()).cloned().collect();
            out.push(set_report(format!("enum_lambda_n d={d} n={n}"), &enum_lambda_n(d, n)?, &sorted));
            let scale = node_scale(d, n);
            let strict: Vec<HomogIndex> = sorted
                .iter()
                .filter(|k| k.entries().windows(2).all(|w| w[0] > w[1]) && HomogIndex::max(k) - HomogIndex::min(k) < scale)
                .cloned()
                .collect();
            out.push(set_report(format!("enum_lambda_interior d={d} n={n}"), &enum_lambda_interior(d, n)?, &strict));

            let c = brute_c_weights(d, n, &brute);
            let mut tr = Tracker::new(format!("weights c, lambda d={d} n={n}"));
            for k in &brute {
                let fast = num_traits::ToPrimitive::to_f64(&c_weight(k, n)?).unwrap_or(f64::NAN);
                tr.record((fast - c[k]).abs(), || format!("c at {k}"));
            }
            for k in &sorted {
                let orbit_mass: f64 = orbit(k).iter().map(|j| c[j]).sum();
                let fast = num_traits::ToPrimitive::to_f64(&lambda_weight(k, n)?).unwrap_or(f64::NAN);
                tr.record((fast - orbit_mass).abs(), || format!("lambda at {k}"));
            }
            out.push(tr.finish());

            let points = random_points(&mut rng, d, 20);
            for (kind, label) in
                [(KernelKind::Dirichlet, "dirichlet"), (KernelKind::PhiStar, "phi_star"), (KernelKind::HalfOpen, "phi_n")]
            {
                let mut tr = Tracker::new(format!("{label} d={d} n={n}"));
                for t in &points {
                    let direct = direct_kernel_sum(kind, n, t)?;
                    let compact = match kind {
                        KernelKind::Dirichlet => Complex::new(dirichlet(n, t), 0.0),
                        KernelKind::PhiStar => Complex::new(phi_star_kernel(n, t), 0.0),
                        KernelKind::HalfOpen => phi_n_kernel(n, t),
                    };
                    let scale = 1.0 + direct.norm();
                    tr.record((direct - compact).norm() / scale, || format!("t={:?}", t.coords()));
                }
                out.push(tr.finish());
            }
        }
        for n in 1..=(if d == 2 { 4 } else { 3 }) {
            out.push(dft_identity_check(d, n)?);
        }
        let mut tr = Tracker::new(format!("reference_integral vs tensor Gauss-Legendre d={d}"));
        for k in enum_lambda_n(d, 2)? {
            let f = |t: &HomogPoint| crate::trig::tc(&k, t) * weight_w(t);
            let exact = reference_integral(Measure::Simplex, d, 2 + 2 * d as u32, f)?;
            let gl = simplex_mean_gl(d, 24, f);
            tr.record((exact - gl).norm(), || format!("TC_k w, k={k}"));
        }
        out.push(tr.finish());
    }
    Ok(out)
}
