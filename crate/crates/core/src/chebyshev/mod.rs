//! Generalized Chebyshev polynomials on the deltoid-like region `Delta*`.
//!
//! The map `t -> z` with `z_k = TC_{v^k}(t)` sends the fundamental simplex
//! onto a region of `C^d` whose points satisfy `conj(z_k) = z_{d+1-k}`; the
//! real coordinates `x` are the real and imaginary parts of those pairs.
//! Generalized cosines become the polynomials `T_alpha(z)` and quotients of
//! generalized sines by `TS_{v°}` become `U_alpha(z)`.

mod poly;
mod rules;

use std::f64::consts::PI;
use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::combinat::{binomial_u64, factorial_f64};
use crate::error::{Error, Result};
use crate::index_sets::index_from_differences;
use crate::lattice::{HomogIndex, HomogPoint};
use crate::trig::{tc, ts, v_zero};
use crate::Complex;

pub use poly::{
    shared_table, t_poly, t_poly_capped, u_poly, u_poly_capped, weight_poly, ChebyshevTable, Family,
    Monomial, ZPolynomial, DEFAULT_DEGREE_CAP,
};
pub use rules::{gauss_rule, ideal_generator, lobatto_rule, weight_w_exact, z_map_exact, GaussRule, RuleKind};

/// Multi-index `alpha` of a Chebyshev polynomial; `alpha_i` is the gap
/// `(k_i - k_{i+1})/(d+1)` of the sorted index `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ChebIndex(Vec<u32>);

impl ChebIndex {
    pub fn new(alpha: Vec<u32>) -> Self {
        ChebIndex(alpha)
    }

    /// The unit tuple `e_k`, `k = 1..d`.
    pub fn unit(d: usize, k: usize) -> Self {
        let mut a = vec![0; d];
        a[k - 1] = 1;
        ChebIndex(a)
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `|alpha|`, the total degree of `T_alpha` and `U_alpha`.
    pub fn degree(&self) -> usize {
        self.0.iter().map(|&a| a as usize).sum()
    }

    /// `(alpha_d, ..., alpha_1)`; `P_reversed = conj(P)`.
    pub fn reversed(&self) -> Self {
        ChebIndex(self.0.iter().rev().copied().collect())
    }

    /// All indices of total degree `n` in dimension `d`.
    pub fn of_degree(d: usize, n: usize) -> Vec<ChebIndex> {
        crate::index_sets::alphas_of_degree(d, n)
            .into_iter()
            .map(|a| ChebIndex(a.into_iter().map(|x| x as u32).collect()))
            .collect()
    }
}

impl fmt::Display for ChebIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// `alpha(k)` for sorted `k`.
pub fn alpha_of(k: &HomogIndex) -> Result<ChebIndex> {
    if !k.is_sorted_desc() {
        return Err(Error::Unsorted(k.entries().to_vec()));
    }
    let d1 = k.entries().len() as i64;
    Ok(ChebIndex(k.entries().windows(2).map(|w| ((w[0] - w[1]) / d1) as u32).collect()))
}

/// The sorted index `k` with `alpha(k) = alpha`.
pub fn k_of(alpha: &ChebIndex) -> HomogIndex {
    let a: Vec<i64> = alpha.0.iter().map(|&x| x as i64).collect();
    index_from_differences(&a)
}

/// Normalized elementary symmetric polynomials of `e^{2 pi i t_j}`.
pub fn z_map(t: &HomogPoint) -> Vec<Complex> {
    let m = t.coords().len();
    let mut e = vec![Complex::new(0.0, 0.0); m + 1];
    e[0] = Complex::new(1.0, 0.0);
    for (j, &tj) in t.coords().iter().enumerate() {
        let u = Complex::from_polar(1.0, 2.0 * PI * tj);
        for k in (1..=j + 1).rev() {
            let prev = e[k - 1];
            e[k] += prev * u;
        }
    }
    (1..m).map(|k| e[k] / binomial_u64(m as i64, k as i64) as f64).collect()
}

/// Tolerance on `|conj(z_k) - z_{d+1-k}|` accepted by [`x_map`].
pub const CONJUGATION_TOL: f64 = 1e-9;

/// Real coordinates `x` of a point `z` of the image of `z_map`.
pub fn x_map(z: &[Complex]) -> Result<Vec<f64>> {
    let d = z.len();
    let err = (0..d).map(|k| (z[k].conj() - z[d - 1 - k]).norm()).fold(0.0, f64::max);
    if err.is_nan() || err > CONJUGATION_TOL {
        return Err(Error::ConjugationSymmetry(err));
    }
    let mut x = vec![0.0; d];
    for k in 0..d / 2 {
        let (a, b) = (z[k], z[d - 1 - k]);
        x[k] = ((a + b) / 2.0).re;
        x[d - 1 - k] = ((a - b) / Complex::new(0.0, 2.0)).re;
    }
    if d % 2 == 1 {
        x[d / 2] = z[d / 2].re / std::f64::consts::SQRT_2;
    }
    Ok(x)
}

/// Inverse of [`x_map`].
pub fn z_from_x(x: &[f64]) -> Vec<Complex> {
    let d = x.len();
    let mut z = vec![Complex::new(0.0, 0.0); d];
    for k in 0..d / 2 {
        z[k] = Complex::new(x[k], x[d - 1 - k]);
        z[d - 1 - k] = Complex::new(x[k], -x[d - 1 - k]);
    }
    if d % 2 == 1 {
        z[d / 2] = Complex::new(x[d / 2] * std::f64::consts::SQRT_2, 0.0);
    }
    z
}

/// `x(z(t))`.
pub fn x_of_t(t: &HomogPoint) -> Vec<f64> {
    let z = z_map(t);
    x_map(&z).expect("z_map output is conjugation symmetric")
}

/// `T_alpha(z(t)) = TC_k(t)`.
pub fn t_eval(alpha: &ChebIndex, t: &HomogPoint) -> Result<Complex> {
    check_dims(alpha, t)?;
    Ok(tc(&k_of(alpha), t))
}

/// Below this `|TS_{v°}(t)|` the quotient is replaced by the expansion.
pub const U_QUOTIENT_EPS: f64 = 1e-8;

/// `U_alpha(z(t)) = TS_{k+v°}(t) / TS_{v°}(t)`, switching to the symbolic
/// expansion near the zeros of the denominator.
pub fn u_eval(alpha: &ChebIndex, t: &HomogPoint) -> Result<Complex> {
    check_dims(alpha, t)?;
    let v0 = v_zero(alpha.dim());
    let den = ts(&v0, t);
    if den.norm() < U_QUOTIENT_EPS {
        return Ok(u_poly(alpha)?.eval(&z_map(t)));
    }
    Ok(ts(&k_of(alpha).add(&v0), t) / den)
}

fn check_dims(alpha: &ChebIndex, t: &HomogPoint) -> Result<()> {
    if alpha.dim() != t.dim() {
        return Err(Error::SizeMismatch { expected: t.dim(), got: alpha.dim() });
    }
    crate::index_sets::check_dim(alpha.dim())
}

/// `U_alpha(z(t))` as the character sum `s_lambda(e^{2 pi i t_1}, ...,
/// e^{2 pi i t_{d+1}})` with `lambda_i = alpha_i + ... + alpha_d`, expanded
/// by the branching rule. Every term is an exponential with a positive
/// integer coefficient, so no digits are lost near the zeros of `TS_{v°}`.
pub fn u_eval_character(alpha: &ChebIndex, t: &HomogPoint) -> Result<Complex> {
    check_dims(alpha, t)?;
    let d = alpha.dim();
    let mut lambda = vec![0u32; d + 1];
    for i in (0..d).rev() {
        lambda[i] = lambda[i + 1] + alpha.0[i];
    }
    let mut memo = HashMap::new();
    Ok(schur(&lambda, t.coords(), &mut memo))
}

/// `s_lambda(e^{2 pi i t_1}, ..., e^{2 pi i t_m})` for `lambda` of length
/// `m`, by `s_lambda = sum_{mu interlacing lambda} x_m^{|lambda|-|mu|} s_mu`.
fn schur(lambda: &[u32], t: &[f64], memo: &mut HashMap<Vec<u32>, Complex>) -> Complex {
    let m = t.len();
    if m == 1 {
        return Complex::from_polar(1.0, 2.0 * PI * lambda[0] as f64 * t[0]);
    }
    if let Some(v) = memo.get(lambda) {
        return *v;
    }
    let size: u32 = lambda.iter().sum();
    let mut mu: Vec<u32> = lambda[1..].to_vec();
    let mut total = Complex::new(0.0, 0.0);
    loop {
        let rest: u32 = mu.iter().sum();
        let inner = schur(&mu, &t[..m - 1], memo);
        total += inner * Complex::from_polar(1.0, 2.0 * PI * (size - rest) as f64 * t[m - 1]);
        // next mu with lambda_{i+1} <= mu_i <= lambda_i, odometer style
        let mut i = 0;
        while i < m - 1 {
            if mu[i] < lambda[i] {
                mu[i] += 1;
                break;
            }
            mu[i] = lambda[i + 1];
            i += 1;
        }
        if i == m - 1 {
            break;
        }
    }
    memo.insert(lambda.to_vec(), total);
    total
}

/// `w = prod_{mu<nu} sin^2 pi(t_mu - t_nu)`.
pub fn weight_w(t: &HomogPoint) -> f64 {
    let c = t.coords();
    let mut w = 1.0;
    for i in 0..c.len() {
        for j in i + 1..c.len() {
            let s = (PI * (c[i] - c[j])).sin();
            w *= s * s;
        }
    }
    w
}

fn binomial_product(d: usize) -> f64 {
    (1..=d).map(|k| binomial_u64(d as i64 + 1, k as i64) as f64).product()
}

/// `|det dx/dt|` in the coordinates `t_1..t_d` (with `t_{d+1} = -sum`),
/// `2^{d(d+2)/2} prod_k (pi / C(d+1,k)) w^{1/2}`.
pub fn jacobian(t: &HomogPoint) -> f64 {
    let d = t.dim();
    jacobian_constant(d) * weight_w(t).sqrt()
}

fn jacobian_constant(d: usize) -> f64 {
    2f64.powf((d * (d + 2)) as f64 / 2.0) * PI.powi(d as i32) / binomial_product(d)
}

/// Normalizing constant of `w^{-1/2} dx` on `Delta*`, so that
/// `c_{-1/2} int f w^{-1/2} dx` is the mean of `f(x(t))` over the simplex.
pub fn c_minus_half(d: usize) -> f64 {
    factorial_f64(d) * (d as f64 + 1.0) / jacobian_constant(d)
}

/// Normalizing constant of `w^{1/2} dx` on `Delta*`.
pub fn c_half(d: usize) -> f64 {
    2f64.powi((d * (d + 1)) as i32) / jacobian_constant(d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::index_sets::alphas_up_to;
    use crate::lattice::project_to_homogeneous;
    use crate::trig::ts_v0_product;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_point(rng: &mut ChaCha8Rng, d: usize) -> HomogPoint {
        let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.0..1.0)).collect();
        project_to_homogeneous(&v).unwrap()
    }

    /// Random interior point of the fundamental simplex.
    fn simplex_point(rng: &mut ChaCha8Rng, d: usize) -> HomogPoint {
        let mut cuts: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
        cuts.sort_by(|a, b| b.partial_cmp(a).unwrap());
        cuts.push(0.0);
        let mean = cuts.iter().sum::<f64>() / cuts.len() as f64;
        HomogPoint::new(cuts.iter().map(|c| c - mean).collect()).unwrap()
    }

    fn close(a: Complex, b: Complex, tol: f64) -> bool {
        (a - b).norm() <= tol
    }

    #[test]
    fn z_map_values() {
        for d in 1..6 {
            for z in z_map(&HomogPoint::zero(d)) {
                assert!(close(z, Complex::new(1.0, 0.0), 1e-15));
            }
        }
        let t = HomogPoint::new(vec![1.0 / 3.0, 0.0, -1.0 / 3.0]).unwrap();
        for z in z_map(&t) {
            assert!(z.norm() < 1e-15);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for d in 1..6 {
            for _ in 0..100 {
                let t = random_point(&mut rng, d);
                let z = z_map(&t);
                for k in 0..d {
                    assert!(close(z[k].conj(), z[d - 1 - k], 1e-12));
                    assert!(close(z[k], tc(&HomogIndex::vertex(d, k + 1), &t), 1e-12));
                }
            }
        }
    }

    #[test]
    fn x_map_values() {
        let x = x_map(&[Complex::new(1.0, 0.0); 3]).unwrap();
        assert_eq!(x, vec![1.0, 1.0 / 2f64.sqrt(), 0.0]);
        assert_eq!(x_map(&[Complex::new(0.0, 0.0); 2]).unwrap(), vec![0.0, 0.0]);
        let x = x_map(&[Complex::new(1.0, 0.0); 4]).unwrap();
        assert_eq!(x, vec![1.0, 1.0, 0.0, 0.0]);
        let bad = [Complex::new(1.0, 0.5), Complex::new(1.0, 0.5)];
        assert!(matches!(x_map(&bad), Err(Error::ConjugationSymmetry(_))));
        let mut rng = ChaCha8Rng::seed_from_u64(4);
        for d in 1..6 {
            let t = random_point(&mut rng, d);
            let z = z_map(&t);
            let back = z_from_x(&x_map(&z).unwrap());
            for (a, b) in z.iter().zip(&back) {
                assert!(close(*a, *b, 1e-14));
            }
        }
    }

    #[test]
    fn alpha_and_k_round_trip() {
        assert_eq!(alpha_of(&HomogIndex::zero(2)).unwrap(), ChebIndex::new(vec![0, 0]));
        for d in 1..6 {
            for k in 1..=d {
                assert_eq!(alpha_of(&HomogIndex::vertex(d, k)).unwrap(), ChebIndex::unit(d, k));
            }
        }
        assert_eq!(k_of(&ChebIndex::new(vec![1, 1])).entries(), &[3, 0, -3]);
        for d in 1..5 {
            for a in alphas_up_to(d, 5) {
                let alpha = ChebIndex::new(a.iter().map(|&x| x as u32).collect());
                assert_eq!(alpha_of(&k_of(&alpha)).unwrap(), alpha);
            }
        }
        let unsorted = HomogIndex::new(vec![0, 3, -3]).unwrap();
        assert_eq!(alpha_of(&unsorted).unwrap_err(), Error::Unsorted(vec![0, 3, -3]));
    }

    #[test]
    fn evaluation_seeds_and_conjugation() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for d in 1..5 {
            for _ in 0..10 {
                let t = random_point(&mut rng, d);
                let z = z_map(&t);
                let zero = ChebIndex::new(vec![0; d]);
                assert!(close(t_eval(&zero, &t).unwrap(), Complex::new(1.0, 0.0), 1e-14));
                assert!(close(u_eval(&zero, &t).unwrap(), Complex::new(1.0, 0.0), 1e-10));
                for k in 1..=d {
                    let e = ChebIndex::unit(d, k);
                    let b = binomial_u64(d as i64 + 1, k as i64) as f64;
                    assert!(close(t_eval(&e, &t).unwrap(), z[k - 1], 1e-13));
                    assert!(close(u_eval(&e, &t).unwrap(), z[k - 1] * b, 1e-9));
                }
                for a in alphas_up_to(d, 3) {
                    let alpha = ChebIndex::new(a.iter().map(|&x| x as u32).collect());
                    let (p, q) = (t_eval(&alpha, &t).unwrap(), t_eval(&alpha.reversed(), &t).unwrap());
                    assert!(close(p.conj(), q, 1e-12));
                    let (p, q) = (u_eval(&alpha, &t).unwrap(), u_eval(&alpha.reversed(), &t).unwrap());
                    assert!(close(p.conj(), q, 1e-8));
                }
            }
        }
    }

    #[test]
    fn u_eval_falls_back_on_denominator_zeros() {
        let t = HomogPoint::zero(2);
        let alpha = ChebIndex::new(vec![1, 1]);
        // At t = 0 the quotient tends to prod (m_i - m_j) / prod (v°_i - v°_j)
        // with m = k + v° = (6, 0, -6) and v° = (3, 0, -3), which is 8.
        let v = u_eval(&alpha, &t).unwrap();
        let expected = u_poly(&alpha).unwrap().eval(&[Complex::new(1.0, 0.0); 2]);
        assert!(close(v, expected, 1e-12));
        assert!(close(v, Complex::new(8.0, 0.0), 1e-12));
    }

    #[test]
    fn character_sum_matches_quotient() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for d in 1..5 {
            for _ in 0..30 {
                let t = random_point(&mut rng, d);
                let den = ts(&v_zero(d), &t).norm();
                for a in alphas_up_to(d, 4) {
                    let alpha = ChebIndex::new(a.iter().map(|&x| x as u32).collect());
                    let c = u_eval_character(&alpha, &t).unwrap();
                    let q = u_eval(&alpha, &t).unwrap();
                    // the quotient carries an error of order 1e-15 / |TS_v°|
                    assert!((c - q).norm() < 1e-12 + 1e-13 / den, "{alpha}: {c} vs {q}");
                }
            }
        }
        let zero = HomogPoint::zero(2);
        let v = u_eval_character(&ChebIndex::new(vec![1, 1]), &zero).unwrap();
        assert!((v - Complex::new(8.0, 0.0)).norm() < 1e-13);
    }

    #[test]
    fn schur_divisibility() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for d in 2..4 {
            let v0 = v_zero(d);
            for _ in 0..20 {
                let t = random_point(&mut rng, d);
                let z = z_map(&t);
                for a in alphas_up_to(d, 3) {
                    let alpha = ChebIndex::new(a.iter().map(|&x| x as u32).collect());
                    let k = k_of(&alpha);
                    let lhs = ts(&k.add(&v0), &t) - u_poly(&alpha).unwrap().eval(&z) * ts(&v0, &t);
                    assert!(lhs.norm() < 1e-10);
                }
            }
        }
    }

    #[test]
    fn weight_values_and_identity() {
        assert_eq!(weight_w(&HomogPoint::zero(3)), 0.0);
        let t = HomogPoint::new(vec![1.0 / 3.0, 0.0, -1.0 / 3.0]).unwrap();
        assert!((weight_w(&t) - 27.0 / 64.0).abs() < 1e-15);
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for d in 1..5 {
            let pairs = (d * (d + 1) / 2) as i32;
            let f = factorial_f64(d + 1);
            for _ in 0..20 {
                let t = random_point(&mut rng, d);
                let w = weight_w(&t);
                let s = ts_v0_product(&t);
                let via_ts = Complex::new(-0.25, 0.0).powi(pairs) * f * f * s * s;
                assert!(close(via_ts, Complex::new(w, 0.0), 1e-12));
                let rev: Vec<usize> = (0..=d).rev().collect();
                assert!((weight_w(&HomogPoint::new(rev.iter().map(|&i| t.coords()[i]).collect()).unwrap()) - w).abs() < 1e-14);
            }
        }
    }

    /// Determinant of the real `d x d` matrix by partial pivoting.
    fn det(mut m: Vec<Vec<f64>>) -> f64 {
        let n = m.len();
        let mut det = 1.0;
        for c in 0..n {
            let p = (c..n).max_by(|&a, &b| m[a][c].abs().partial_cmp(&m[b][c].abs()).unwrap()).unwrap();
            if m[p][c] == 0.0 {
                return 0.0;
            }
            if p != c {
                m.swap(p, c);
                det = -det;
            }
            det *= m[c][c];
            for r in c + 1..n {
                let f = m[r][c] / m[c][c];
                let pivot = m[c].clone();
                for (x, p) in m[r][c..].iter_mut().zip(&pivot[c..]) {
                    *x -= f * p;
                }
            }
        }
        det
    }

    fn x_of_free(free: &[f64]) -> Vec<f64> {
        let mut c = free.to_vec();
        c.push(-free.iter().sum::<f64>());
        x_of_t(&HomogPoint::new(c).unwrap())
    }

    fn fd_jacobian(t: &HomogPoint) -> f64 {
        let d = t.dim();
        let free = &t.coords()[..d];
        let h = 1e-6;
        let mut cols = vec![vec![0.0; d]; d];
        for j in 0..d {
            let mut p = free.to_vec();
            let mut m = free.to_vec();
            p[j] += h;
            m[j] -= h;
            let (xp, xm) = (x_of_free(&p), x_of_free(&m));
            for i in 0..d {
                cols[i][j] = (xp[i] - xm[i]) / (2.0 * h);
            }
        }
        det(cols).abs()
    }

    #[test]
    fn jacobian_matches_finite_differences() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for d in 1..5 {
            for _ in 0..20 {
                let t = simplex_point(&mut rng, d);
                let (fd, closed) = (fd_jacobian(&t), jacobian(&t));
                assert!((fd - closed).abs() <= 1e-6 * closed, "d={d}: {fd} vs {closed}");
            }
        }
    }

    /// `int_{simplex} f dt_1..dt_d`; the simplex has volume `1/(d! (d+1))`
    /// in these coordinates.
    fn simplex_integral(d: usize, m: usize, f: &dyn Fn(&HomogPoint) -> f64) -> f64 {
        crate::oracle::simplex_mean_gl(d, m, |t| Complex::new(f(t), 0.0)).re / (factorial_f64(d) * (d as f64 + 1.0))
    }

    #[test]
    fn normalization_constants_integrate_one() {
        // d = 1 by hand: x = cos(2 pi t)/sqrt 2 on [-1/sqrt 2, 1/sqrt 2], w = 1 - 2x^2.
        assert!((c_minus_half(1) - 2f64.sqrt() / PI).abs() < 1e-15);
        assert!((c_half(1) * PI / (2.0 * 2f64.sqrt()) - 1.0).abs() < 1e-15);
        for d in 1..4 {
            let m = 14;
            let minus = simplex_integral(d, m, &|t| fd_jacobian(t) / weight_w(t).sqrt());
            let plus = simplex_integral(d, m, &|t| fd_jacobian(t) * weight_w(t).sqrt());
            assert!((c_minus_half(d) * minus - 1.0).abs() < 1e-6, "d={d}");
            assert!((c_half(d) * plus - 1.0).abs() < 1e-6, "d={d}");
        }
    }
}
