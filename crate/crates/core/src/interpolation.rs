//! Trigonometric interpolation on the fundamental domain (node sets `H_n`
//! and `H*_n`) and on the simplex (`Lambda°_n` and `Lambda_n`), and an
//! empirical measurement of the Lebesgue constants.

use std::collections::BTreeMap;

use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};

use crate::combinat::factorial_f64;
use crate::error::{Error, Result};
use crate::exec::Exec;
use crate::index_sets::{
    c_weight, check_dim, enum_hn, enum_hn_star, enum_lambda_interior, enum_lambda_n, lambda_weight, node_scale,
};
use crate::lattice::{HomogIndex, HomogPoint};
use crate::trig::{phi_n_kernel, phi_star_kernel, sym_minus, tc, theta, ts};
use crate::Complex;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    /// Half-open node set `H_n` on the fundamental domain.
    In,
    /// Symmetric node set `H*_n` on the fundamental domain.
    InStar,
    /// Strictly interior simplex nodes `Lambda°_n`.
    Ln,
    /// All simplex nodes `Lambda_n`.
    LnStar,
}

impl Kind {
    pub fn nodes(self, d: usize, n: u32) -> Result<Vec<HomogIndex>> {
        check_dim(d)?;
        if n == 0 {
            return Err(Error::InvalidOrder(0, "must be at least 1"));
        }
        match self {
            Kind::In => enum_hn(d, n),
            Kind::InStar => enum_hn_star(d, n),
            Kind::Ln => enum_lambda_interior(d, n),
            Kind::LnStar => enum_lambda_n(d, n),
        }
    }

    /// True for the kinds that live on the simplex.
    pub fn on_simplex(self) -> bool {
        matches!(self, Kind::Ln | Kind::LnStar)
    }
}

/// Precomputed data for evaluating every fundamental function of one kind
/// at a point.
#[derive(Debug, Clone)]
pub struct Fundamentals {
    kind: Kind,
    d: usize,
    n: u32,
    scale: i64,
    nodes: Vec<HomogIndex>,
    /// For `LnStar`: every member of `H*_n` with its weight `c` and the
    /// position of its sorted representative in `nodes`.
    expanded: Vec<(HomogPoint, f64, usize)>,
    node_points: Vec<HomogPoint>,
}

impl Fundamentals {
    pub fn new(kind: Kind, d: usize, n: u32) -> Result<Self> {
        let nodes = kind.nodes(d, n)?;
        if nodes.is_empty() {
            return Err(Error::EmptyNodeSet);
        }
        let scale = node_scale(d, n);
        let node_points = nodes.iter().map(|k| k.node(scale)).collect();
        let mut expanded = Vec::new();
        if kind == Kind::LnStar {
            let pos: BTreeMap<&HomogIndex, usize> = nodes.iter().enumerate().map(|(i, k)| (k, i)).collect();
            for k in enum_hn_star(d, n)? {
                let c = c_weight(&k, n)?.to_f64().unwrap();
                let at = pos[&k.sorted_desc()];
                expanded.push((k.node(scale), c, at));
            }
        }
        Ok(Fundamentals { kind, d, n, scale, nodes, expanded, node_points })
    }

    pub fn kind(&self) -> Kind {
        self.kind
    }

    pub fn nodes(&self) -> &[HomogIndex] {
        &self.nodes
    }

    pub fn scale(&self) -> i64 {
        self.scale
    }

    /// Values of all fundamental functions at `t`, in node order.
    pub fn values(&self, t: &HomogPoint) -> Vec<Complex> {
        match self.kind {
            Kind::In => self.node_points.iter().map(|s| phi_n_kernel(self.n, &t.sub(s))).collect(),
            Kind::InStar => {
                self.node_points.iter().map(|s| Complex::new(phi_star_kernel(self.n, &t.sub(s)), 0.0)).collect()
            }
            Kind::Ln => {
                let pre = factorial_f64(self.d) / (self.n as f64).powi(self.d as i32);
                self.node_points
                    .iter()
                    .map(|s| {
                        let f = |u: &HomogPoint| {
                            let x = u.sub(s);
                            Complex::new(theta(self.n, &x) - theta(self.n - 1, &x), 0.0)
                        };
                        sym_minus(t, f) * pre
                    })
                    .collect()
            }
            Kind::LnStar => {
                let mut out = vec![Complex::new(0.0, 0.0); self.nodes.len()];
                for (s, c, at) in &self.expanded {
                    out[*at] += c * phi_star_kernel(self.n, &t.sub(s));
                }
                out
            }
        }
    }

    /// `sum_j |l_j(t)|`.
    pub fn lebesgue_function(&self, t: &HomogPoint) -> f64 {
        self.values(t).iter().map(|v| v.norm()).sum()
    }
}

/// `l°_j` from its expansion in generalized sines.
pub fn ln_fundamental_series(d: usize, n: u32, j: &HomogIndex, t: &HomogPoint) -> Result<f64> {
    let basis = enum_lambda_interior(d, n)?;
    let s = j.node(node_scale(d, n));
    let pre = factorial_f64(d) * factorial_f64(d + 1) / (n as f64).powi(d as i32);
    let v: Complex = basis.iter().map(|k| ts(k, t) * ts(k, &s).conj()).sum();
    Ok(v.re * pre)
}

/// `l^triangle_j` from its expansion in generalized cosines.
pub fn ln_star_fundamental_series(d: usize, n: u32, j: &HomogIndex, t: &HomogPoint) -> Result<f64> {
    let basis = enum_lambda_n(d, n)?;
    let s = j.node(node_scale(d, n));
    let lj = lambda_weight(j, n)?.to_f64().unwrap();
    let mut acc = Complex::new(0.0, 0.0);
    for k in &basis {
        let lk = lambda_weight(k, n)?.to_f64().unwrap();
        acc += tc(k, t) * tc(k, &s).conj() * lk;
    }
    Ok(acc.re * lj / ((d as f64 + 1.0) * (n as f64).powi(d as i32)))
}

/// Interpolation operator of one kind with its samples.
#[derive(Debug, Clone)]
pub struct Interpolant {
    fundamentals: Fundamentals,
    samples: Vec<Complex>,
}

impl Interpolant {
    /// Samples must be keyed by exactly the node set of `kind`.
    pub fn new(kind: Kind, d: usize, n: u32, samples: &BTreeMap<HomogIndex, Complex>) -> Result<Self> {
        let fundamentals = Fundamentals::new(kind, d, n)?;
        let mut values = Vec::with_capacity(fundamentals.nodes.len());
        for k in &fundamentals.nodes {
            match samples.get(k) {
                Some(&v) => values.push(v),
                None => return Err(Error::MissingSample(k.entries().to_vec())),
            }
        }
        if samples.len() != values.len() {
            let known: std::collections::BTreeSet<&HomogIndex> = fundamentals.nodes.iter().collect();
            let extra = samples.keys().find(|k| !known.contains(k)).unwrap();
            return Err(Error::UnexpectedSample(extra.entries().to_vec()));
        }
        Ok(Interpolant { fundamentals, samples: values })
    }

    /// Samples `f` at the nodes.
    pub fn from_fn<F: Fn(&HomogPoint) -> Complex>(kind: Kind, d: usize, n: u32, f: F) -> Result<Self> {
        let fundamentals = Fundamentals::new(kind, d, n)?;
        let samples = fundamentals.node_points.iter().map(f).collect();
        Ok(Interpolant { fundamentals, samples })
    }

    pub fn fundamentals(&self) -> &Fundamentals {
        &self.fundamentals
    }

    pub fn eval(&self, t: &HomogPoint) -> Complex {
        self.fundamentals.values(t).iter().zip(&self.samples).map(|(l, f)| l * f).sum()
    }

    pub fn eval_many(&self, points: &[HomogPoint], exec: Exec) -> Vec<Complex> {
        exec.map(points, |t| self.eval(t))
    }
}

/// Grid `Lambda_G/((d+1)G)` on the simplex or `H*_G/((d+1)G)` on the closed
/// fundamental domain. When `G` is not a multiple of `2n` the half-node
/// lattice (which contains every midpoint of adjacent nodes) is added.
pub fn lebesgue_grid(kind: Kind, d: usize, n: u32, grid: u32) -> Result<Vec<HomogPoint>> {
    let base = |g: u32| -> Result<Vec<HomogPoint>> {
        let idx = if kind.on_simplex() { enum_lambda_n(d, g)? } else { enum_hn_star(d, g)? };
        let s = node_scale(d, g);
        Ok(idx.iter().map(|k| k.node(s)).collect())
    };
    let mut pts = base(grid)?;
    if !grid.is_multiple_of(2 * n) {
        pts.extend(base(2 * n)?);
    }
    Ok(pts)
}

/// Lower estimate of the operator norm: the maximum of the Lebesgue
/// function over [`lebesgue_grid`]. `grid` defaults to `8n`.
pub fn lebesgue_estimate(kind: Kind, d: usize, n: u32, grid: Option<u32>, exec: Exec) -> Result<f64> {
    let grid = grid.unwrap_or(8 * n);
    if grid < 4 * n {
        return Err(Error::InvalidOrder(grid as i64, "grid resolution must be at least 4n"));
    }
    let fundamentals = Fundamentals::new(kind, d, n)?;
    let pts = lebesgue_grid(kind, d, n, grid)?;
    Ok(exec.max(&pts, |t| fundamentals.lebesgue_function(t)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index_sets::{classify, congruence_class, BoundaryClass};
    use crate::lattice::project_to_homogeneous;
    use crate::trig::{phi, sym_plus};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn simplex_point(rng: &mut ChaCha8Rng, d: usize) -> HomogPoint {
        // sorted barycentric draw: t_1 >= ... >= t_{d+1}, t_1 - t_{d+1} <= 1
        let mut gaps: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
        let total: f64 = gaps.iter().sum::<f64>() + rng.gen_range(0.0..1.0);
        gaps.iter_mut().for_each(|g| *g /= total);
        let mut t = vec![0.0];
        for g in &gaps {
            let last = *t.last().unwrap();
            t.push(last - g);
        }
        let mean = t.iter().sum::<f64>() / t.len() as f64;
        HomogPoint::new(t.iter().map(|x| x - mean).collect()).unwrap()
    }

    fn random_point(rng: &mut ChaCha8Rng, d: usize) -> HomogPoint {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        project_to_homogeneous(&v).unwrap()
    }

    #[test]
    fn star_interpolant_of_constants() {
        let (d, n) = (2, 3);
        let interp = Interpolant::from_fn(Kind::InStar, d, n, |_| Complex::new(1.0, 0.0)).unwrap();
        let s = node_scale(d, n);
        for j in enum_hn_star(d, n).unwrap() {
            let v = interp.eval(&j.node(s));
            let want = match classify(&j, n).unwrap() {
                BoundaryClass::Interior => 1.0,
                BoundaryClass::Boundary { .. } => congruence_class(&j, n).unwrap().len() as f64,
            };
            assert!((v - want).norm() < 1e-10, "{j}: {v}");
        }
    }

    #[test]
    fn star_interpolant_reproduces_interior_exponentials() {
        let (d, n) = (2, 3);
        let s = node_scale(d, n);
        for m in enum_hn_star(d, n - 1).unwrap() {
            let interp = Interpolant::from_fn(Kind::InStar, d, n, |t| phi(&m, t)).unwrap();
            for j in enum_hn_star(d, n - 1).unwrap() {
                let t = j.node(s);
                assert!((interp.eval(&t) - phi(&m, &t)).norm() < 1e-10);
            }
        }
    }

    #[test]
    fn half_open_interpolant_is_exact_on_its_space() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for (d, n) in [(2, 2), (2, 3), (3, 2)] {
            let f = Fundamentals::new(Kind::In, d, n).unwrap();
            for (a, k) in f.nodes().iter().enumerate() {
                let v = f.values(&k.node(f.scale()));
                for (b, x) in v.iter().enumerate() {
                    assert!((x - if a == b { 1.0 } else { 0.0 }).norm() < 1e-10);
                }
            }
            let set = enum_hn(d, n).unwrap();
            let coeffs: Vec<(HomogIndex, Complex)> =
                set.iter().map(|k| (k.clone(), Complex::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))).collect();
            let g = |t: &HomogPoint| coeffs.iter().map(|(k, a)| a * phi(k, t)).sum::<Complex>();
            let interp = Interpolant::from_fn(Kind::In, d, n, g).unwrap();
            for _ in 0..10 {
                let t = random_point(&mut rng, d);
                assert!((interp.eval(&t) - g(&t)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn interior_simplex_single_node() {
        let f = Fundamentals::new(Kind::Ln, 2, 3).unwrap();
        let node = f.nodes()[0].node(9);
        assert!((f.values(&node)[0] - 1.0).norm() < 1e-10);
        assert_eq!(Fundamentals::new(Kind::Ln, 2, 2).unwrap_err(), Error::EmptyNodeSet);
    }

    #[test]
    fn delta_property() {
        for (kind, d, n) in [(Kind::Ln, 2, 5), (Kind::LnStar, 2, 4), (Kind::InStar, 2, 2), (Kind::LnStar, 3, 3)] {
            let f = Fundamentals::new(kind, d, n).unwrap();
            let nodes = f.nodes().to_vec();
            for (a, k) in nodes.iter().enumerate() {
                if kind == Kind::InStar && classify(k, n).unwrap() != BoundaryClass::Interior {
                    continue;
                }
                let v = f.values(&k.node(f.scale()));
                for (b, x) in v.iter().enumerate() {
                    if kind == Kind::InStar && classify(&nodes[b], n).unwrap() != BoundaryClass::Interior {
                        continue;
                    }
                    assert!((x - if a == b { 1.0 } else { 0.0 }).norm() < 1e-10, "{kind:?} {k}");
                }
            }
        }
    }

    #[test]
    fn compact_and_series_forms_agree() {
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        for (d, n) in [(2, 4), (2, 6), (3, 5)] {
            let f = Fundamentals::new(Kind::Ln, d, n).unwrap();
            let g = Fundamentals::new(Kind::LnStar, d, n).unwrap();
            for _ in 0..5 {
                let t = random_point(&mut rng, d);
                for (j, v) in f.nodes().iter().zip(f.values(&t)) {
                    assert!((v.re - ln_fundamental_series(d, n, j, &t).unwrap()).abs() < 1e-10);
                    assert!(v.im.abs() < 1e-12);
                }
                for (j, v) in g.nodes().iter().zip(g.values(&t)) {
                    assert!((v.re - ln_star_fundamental_series(d, n, j, &t).unwrap()).abs() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn simplex_interpolants_reproduce_their_spaces() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for (d, n) in [(2, 4), (3, 4)] {
            let basis = enum_lambda_n(d, n).unwrap();
            let coeffs: Vec<(HomogIndex, f64)> = basis.iter().map(|k| (k.clone(), rng.gen_range(-1.0..1.0))).collect();
            let g = |t: &HomogPoint| coeffs.iter().map(|(k, a)| tc(k, t) * *a).sum::<Complex>();
            let star = Interpolant::from_fn(Kind::LnStar, d, n, g).unwrap();
            let sines = enum_lambda_interior(d, n).unwrap();
            for k in &sines {
                let h = Interpolant::from_fn(Kind::Ln, d, n, |t| ts(k, t)).unwrap();
                for _ in 0..5 {
                    let t = random_point(&mut rng, d);
                    assert!((h.eval(&t) - ts(k, &t)).norm() < 1e-9);
                }
            }
            for _ in 0..20 {
                let t = simplex_point(&mut rng, d);
                assert!((star.eval(&t) - g(&t)).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn symmetrization_consistency() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        let (d, n) = (2, 3);
        let f = |t: &HomogPoint| Complex::new((3.0 * t.coords()[0]).sin() + t.coords()[2].powi(2), 0.0);
        let star = Interpolant::from_fn(Kind::LnStar, d, n, f).unwrap();
        let s = node_scale(d, n);
        let mut samples = BTreeMap::new();
        for k in enum_hn_star(d, n).unwrap() {
            let c = c_weight(&k, n).unwrap().to_f64().unwrap();
            samples.insert(k.clone(), f(&k.sorted_desc().node(s)) * c);
        }
        let full = Interpolant::new(Kind::InStar, d, n, &samples).unwrap();
        for _ in 0..20 {
            let t = random_point(&mut rng, d);
            let lhs = star.eval(&t);
            let rhs = sym_plus(&t, |u| full.eval(u));
            assert!((lhs - rhs).norm() < 1e-10);
        }
    }

    #[test]
    fn sample_validation() {
        let mut samples: BTreeMap<HomogIndex, Complex> =
            enum_lambda_n(2, 2).unwrap().into_iter().map(|k| (k, Complex::new(1.0, 0.0))).collect();
        assert!(Interpolant::new(Kind::LnStar, 2, 2, &samples).is_ok());
        let extra = HomogIndex::new(vec![9, 0, -9]).unwrap();
        samples.insert(extra.clone(), Complex::new(0.0, 0.0));
        assert_eq!(
            Interpolant::new(Kind::LnStar, 2, 2, &samples).unwrap_err(),
            Error::UnexpectedSample(extra.entries().to_vec())
        );
        samples.remove(&extra);
        samples.remove(&HomogIndex::zero(2));
        assert_eq!(Interpolant::new(Kind::LnStar, 2, 2, &samples).unwrap_err(), Error::MissingSample(vec![0, 0, 0]));
    }

    #[test]
    fn fundamentals_are_real() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for kind in [Kind::InStar, Kind::Ln, Kind::LnStar] {
            let f = Fundamentals::new(kind, 2, 4).unwrap();
            for _ in 0..10 {
                let t = random_point(&mut rng, 2);
                assert!(f.values(&t).iter().all(|v| v.im.abs() < 1e-12));
            }
        }
    }

    #[test]
    fn lebesgue_small_cases() {
        let v = lebesgue_estimate(Kind::LnStar, 2, 1, None, Exec::Parallel).unwrap();
        assert!(v >= 1.0 - 1e-12);
        assert!(lebesgue_estimate(Kind::LnStar, 2, 2, Some(3), Exec::Sequential).is_err());
        let a = lebesgue_estimate(Kind::LnStar, 2, 3, Some(24), Exec::Sequential).unwrap();
        let b = lebesgue_estimate(Kind::LnStar, 2, 3, Some(24), Exec::Parallel).unwrap();
        assert_eq!(a, b);
        let fine = lebesgue_estimate(Kind::LnStar, 2, 3, Some(48), Exec::Parallel).unwrap();
        assert!((fine - a).abs() / a < 0.02);
    }
}
