//! Acceptance suite. Runs every criterion, prints one PASS/FAIL line each
//! and exits non-zero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use adf_core::chebyshev::{
    gauss_rule, ideal_generator, k_of, lobatto_rule, t_eval, t_poly, u_eval, u_eval_character, u_poly, x_of_t, z_map, ChebIndex,
};
use adf_core::combinat::binomial_u64;
use adf_core::index_sets::{enum_hn, enum_hn_star, enum_lambda_interior, enum_lambda_n};
use adf_core::interpolation::{lebesgue_estimate, Fundamentals, Interpolant, Kind};
use adf_core::lattice::project_to_homogeneous;
use adf_core::oracle::{direct_kernel_sum, reference_integral, run_all, KernelKind, Measure};
use adf_core::quadrature::{cubature_omega, cubature_simplex, inner_product_n, inner_product_sym};
use adf_core::trig::{dirichlet, phi, phi_star_kernel, tc, ts};
use adf_core::{Complex, Exec, HomogIndex, HomogPoint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_point(rng: &mut ChaCha8Rng, d: usize) -> HomogPoint {
    let v: Vec<f64> = (0..d).map(|_| rng.gen_range(-1.5..1.5)).collect();
    project_to_homogeneous(&v).unwrap()
}

/// Uniform-ish point of the fundamental simplex `t_1 >= ... >= t_{d+1}`,
/// `t_1 - t_{d+1} <= 1`.
fn simplex_point(rng: &mut ChaCha8Rng, d: usize) -> HomogPoint {
    let mut cuts: Vec<f64> = (0..d).map(|_| rng.gen_range(0.0..1.0)).collect();
    cuts.sort_by(|a, b| b.partial_cmp(a).unwrap());
    cuts.push(0.0);
    let mean = cuts.iter().sum::<f64>() / cuts.len() as f64;
    HomogPoint::new(cuts.iter().map(|c| c - mean).collect()).unwrap()
}

fn c1(x: f64) -> Complex {
    Complex::new(x, 0.0)
}

fn cardinalities() -> Outcome {
    let mut checked = 0;
    for d in 1..=5usize {
        for n in 1..=6u32 {
            let (dd, nn) = (d as i64, n as i64);
            let hn = (dd + 1) * nn.pow(d as u32);
            let star = (nn + 1).pow(d as u32 + 1) - nn.pow(d as u32 + 1);
            let lam = binomial_u64(nn + dd, dd) as i64;
            let inner = binomial_u64(nn - 1, dd) as i64;
            let got = [
                enum_hn(d, n).map_err(|e| e.to_string())?.len() as i64,
                enum_hn_star(d, n).map_err(|e| e.to_string())?.len() as i64,
                enum_lambda_n(d, n).map_err(|e| e.to_string())?.len() as i64,
                enum_lambda_interior(d, n).map_err(|e| e.to_string())?.len() as i64,
            ];
            ensure(got == [hn, star, lam, inner], || format!("d={d} n={n}: got {got:?}, want {:?}", [hn, star, lam, inner]))?;
            checked += 4;
        }
    }
    Ok(format!("{checked} counts exact"))
}

fn kernel_compactness() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst = 0.0f64;
    for d in [2usize, 3] {
        let points: Vec<HomogPoint> = (0..200).map(|_| random_point(&mut rng, d)).collect();
        for n in 1..=6u32 {
            for t in &points {
                let a = direct_kernel_sum(KernelKind::Dirichlet, n, t).map_err(|e| e.to_string())?;
                let b = direct_kernel_sum(KernelKind::PhiStar, n, t).map_err(|e| e.to_string())?;
                let ea = (a - c1(dirichlet(n, t))).norm();
                let eb = (b - c1(phi_star_kernel(n, t))).norm();
                worst = worst.max(ea).max(eb);
                ensure(ea < 1e-10 && eb < 1e-10, || format!("d={d} n={n} t={:?}: errors {ea:e}, {eb:e}", t.coords()))?;
            }
        }
    }
    Ok(format!("max |compact - direct| = {worst:.2e}"))
}

fn discrete_orthogonality() -> Outcome {
    let mut worst = 0.0f64;
    for (d, nmax) in [(2usize, 4u32), (3, 2)] {
        for n in 1..=nmax {
            let set = enum_hn(d, n).map_err(|e| e.to_string())?;
            for (i, k) in set.iter().enumerate() {
                for (j, l) in set.iter().enumerate() {
                    let want = if i == j { 1.0 } else { 0.0 };
                    let f = |t: &HomogPoint| phi(k, t);
                    let g = |t: &HomogPoint| phi(l, t);
                    let a = inner_product_n(d, n, f, g, Exec::default()).map_err(|e| e.to_string())?;
                    let b = inner_product_sym(d, n, f, g, Exec::default()).map_err(|e| e.to_string())?;
                    let err = (a - want).norm().max((b - want).norm());
                    worst = worst.max(err);
                    ensure(err < 1e-12, || format!("d={d} n={n} k={k} l={l}: error {err:e}"))?;
                }
            }
        }
    }
    Ok(format!("Gram matrices within {worst:.2e} of identity"))
}

fn cubature_exactness() -> Outcome {
    let mut worst = 0.0f64;
    let mut witnesses = Vec::new();
    for d in [2usize, 3] {
        for n in 1..=3u32 {
            let omega = cubature_omega(d, n).map_err(|e| e.to_string())?;
            for k in enum_hn_star(d, 2 * n - 1).map_err(|e| e.to_string())? {
                let want = if k.entries().iter().all(|&x| x == 0) { 1.0 } else { 0.0 };
                let err = (omega.integrate(|t| phi(&k, t), Exec::default()) - want).norm();
                worst = worst.max(err);
                ensure(err < 1e-12, || format!("omega d={d} n={n} k={k}: error {err:e}"))?;
            }
            let simplex = cubature_simplex(d, n).map_err(|e| e.to_string())?;
            for k in enum_lambda_n(d, 2 * n - 1).map_err(|e| e.to_string())? {
                let want = if k.entries().iter().all(|&x| x == 0) { 1.0 } else { 0.0 };
                let err = (simplex.integrate(|t| tc(&k, t), Exec::default()) - want).norm();
                worst = worst.max(err);
                ensure(err < 1e-12, || format!("simplex d={d} n={n} k={k}: error {err:e}"))?;
            }
            // degree-2n witnesses: their exact integrals vanish
            let omega_witness = enum_hn_star(d, 2 * n)
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|k| k.degree() == 2 * n as i64)
                .map(|k| omega.integrate(|t| phi(&k, t), Exec::default()).norm())
                .fold(0.0, f64::max);
            let simplex_witness = enum_lambda_n(d, 2 * n)
                .map_err(|e| e.to_string())?
                .into_iter()
                .filter(|k| k.degree() == 2 * n as i64)
                .map(|k| simplex.integrate(|t| tc(&k, t), Exec::default()).norm())
                .fold(0.0, f64::max);
            ensure(omega_witness > 1e-3 && simplex_witness > 1e-3, || {
                format!("d={d} n={n}: no sharpness witness ({omega_witness:e}, {simplex_witness:e})")
            })?;
            witnesses.push(omega_witness.min(simplex_witness));
        }
    }
    let min_w = witnesses.iter().cloned().fold(f64::INFINITY, f64::min);
    Ok(format!("max error {worst:.2e}; smallest degree-2n witness error {min_w:.2e}"))
}

fn interpolation_delta() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut worst_delta = 0.0f64;
    let mut worst_repro = 0.0f64;
    for (d, nmax) in [(2usize, 8u32), (3, 4)] {
        for n in 1..=nmax {
            for kind in [Kind::Ln, Kind::LnStar] {
                let nodes = kind.nodes(d, n).map_err(|e| e.to_string())?;
                if nodes.is_empty() {
                    continue;
                }
                let f = Fundamentals::new(kind, d, n).map_err(|e| e.to_string())?;
                for (a, k) in f.nodes().iter().enumerate() {
                    for (b, v) in f.values(&k.node(f.scale())).iter().enumerate() {
                        let err = (v - if a == b { 1.0 } else { 0.0 }).norm();
                        worst_delta = worst_delta.max(err);
                        ensure(err < 1e-10, || format!("{kind:?} d={d} n={n} node {k}: error {err:e}"))?;
                    }
                }
                let coeffs: Vec<(HomogIndex, f64)> = nodes.iter().map(|k| (k.clone(), rng.gen_range(-1.0..1.0))).collect();
                let g = |t: &HomogPoint| -> Complex {
                    coeffs
                        .iter()
                        .map(|(k, c)| if kind == Kind::Ln { ts(k, t) * *c } else { tc(k, t) * *c })
                        .sum()
                };
                let interp = Interpolant::from_fn(kind, d, n, g).map_err(|e| e.to_string())?;
                for _ in 0..100 {
                    let t = simplex_point(&mut rng, d);
                    let err = (interp.eval(&t) - g(&t)).norm();
                    worst_repro = worst_repro.max(err);
                    ensure(err < 1e-9, || format!("{kind:?} d={d} n={n}: reproduction error {err:e}"))?;
                }
            }
        }
    }
    Ok(format!("delta error {worst_delta:.2e}; reproduction error {worst_repro:.2e}"))
}

fn lebesgue_growth() -> Outcome {
    let mut prev = 0.0;
    let mut rows = Vec::new();
    for n in [2u32, 4, 8, 16, 32] {
        let est = lebesgue_estimate(Kind::LnStar, 2, n, None, Exec::default()).map_err(|e| e.to_string())?;
        let ratio = est / (n as f64).ln().powi(2);
        rows.push(format!("n={n}: {est:.4} ({ratio:.3})"));
        ensure(ratio > 0.05 && ratio < 50.0, || format!("n={n}: ratio {ratio} outside (0.05, 50)"))?;
        ensure(est > prev, || format!("n={n}: estimate {est} not above {prev}"))?;
        prev = est;
    }
    Ok(rows.join(", "))
}

fn recurrence_consistency() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst = 0.0f64;
    for (d, deg) in [(2usize, 5usize), (3, 4)] {
        let alphas: Vec<ChebIndex> = (0..=deg).flat_map(|n| ChebIndex::of_degree(d, n)).collect();
        let polys: Vec<_> = alphas
            .iter()
            .map(|a| Ok((t_poly(a)?, u_poly(a)?)))
            .collect::<adf_core::Result<Vec<_>>>()
            .map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let t = random_point(&mut rng, d);
            let z = z_map(&t);
            for (a, (tp, up)) in alphas.iter().zip(&polys) {
                let et = (tp.eval(&z) - t_eval(a, &t).map_err(|e| e.to_string())?).norm();
                let eu = (up.eval(&z) - u_eval_character(a, &t).map_err(|e| e.to_string())?).norm();
                worst = worst.max(et).max(eu);
                ensure(et < 1e-10 && eu < 1e-10, || format!("d={d} alpha={a}: errors {et:e}, {eu:e}"))?;
            }
        }
    }
    Ok(format!("max |symbolic - trigonometric| = {worst:.2e}"))
}

/// All exponent tuples in `d` variables of total degree at most `max`.
fn exponents(d: usize, max: usize) -> Vec<Vec<u32>> {
    (0..=max)
        .flat_map(|n| ChebIndex::of_degree(d, n))
        .map(|a| a.entries().to_vec())
        .collect()
}

fn monomial(x: &[f64], beta: &[u32]) -> f64 {
    x.iter().zip(beta).map(|(v, &b)| v.powi(b as i32)).product()
}

fn gaussian_cubature() -> Outcome {
    let single = gauss_rule(2, 1).map_err(|e| e.to_string())?;
    ensure(single.nodes == vec![vec![0.0, 0.0]] && single.weights == vec![1.0], || {
        format!("d=2 n=1 rule is {:?} / {:?}", single.nodes, single.weights)
    })?;
    let mut worst = 0.0f64;
    for (d, nmax) in [(2usize, 4u32), (3, 2)] {
        for n in 1..=nmax {
            let rule = gauss_rule(d, n).map_err(|e| e.to_string())?;
            let want = binomial_u64(n as i64 + d as i64 - 1, d as i64) as usize;
            ensure(rule.len() == want, || format!("d={d} n={n}: {} nodes, want {want}", rule.len()))?;
            for alpha in ChebIndex::of_degree(d, n as usize) {
                for t in &rule.t_preimages {
                    let v = u_eval(&alpha, &t.to_f64()).map_err(|e| e.to_string())?.norm();
                    worst = worst.max(v);
                    ensure(v < 1e-10, || format!("d={d} n={n}: U{alpha} = {v:e} at {t}"))?;
                }
            }
            for beta in exponents(d, 2 * n as usize - 1) {
                let deg: u32 = beta.iter().sum();
                let exact = reference_integral(Measure::ChebyshevSecond, d, deg, |t| c1(monomial(&x_of_t(t), &beta)))
                    .map_err(|e| e.to_string())?;
                let got = rule.integrate(|x| c1(monomial(x, &beta)), Exec::default());
                let err = (got - exact).norm();
                worst = worst.max(err);
                ensure(err < 1e-10, || format!("d={d} n={n} beta={beta:?}: error {err:e}"))?;
            }
        }
    }
    Ok(format!("counts exact; single-node rule exact; max error {worst:.2e}"))
}

fn quasi_orthogonal_ideal() -> Outcome {
    let d = 2;
    let mut worst = 0.0f64;
    for n in [2u32, 3] {
        let rule = lobatto_rule(d, n).map_err(|e| e.to_string())?;
        for alpha in ChebIndex::of_degree(d, n as usize + 1) {
            let (a, star) = ideal_generator(&alpha);
            let (ka, ks) = (k_of(&a), k_of(&star));
            let gen = |t: &HomogPoint| tc(&ka, t) - tc(&ks, t);
            for t in &rule.t_preimages {
                let v = gen(&t.to_f64()).norm();
                worst = worst.max(v);
                ensure(v < 1e-10, || format!("n={n} alpha={alpha}: generator {v:e} at {t}"))?;
            }
            for beta in (0..=n as usize - 2).flat_map(|m| ChebIndex::of_degree(d, m)) {
                let kb = k_of(&beta);
                let integrand = |t: &HomogPoint| gen(t) * tc(&kb, t).conj();
                let continuous = reference_integral(Measure::ChebyshevFirst, d, 2 * n + 2, integrand)
                    .map_err(|e| e.to_string())?
                    .norm();
                let discrete = rule.integrate_preimage(integrand, Exec::default()).norm();
                worst = worst.max(continuous).max(discrete);
                ensure(continuous < 1e-10 && discrete < 1e-10, || {
                    format!("n={n} alpha={alpha} beta={beta}: {continuous:e}, {discrete:e}")
                })?;
            }
        }
    }
    Ok(format!("max residual {worst:.2e}"))
}

fn oracle_suite() -> Outcome {
    let reports = run_all().map_err(|e| e.to_string())?;
    let failed: Vec<String> = reports.iter().filter(|r| !r.passed(1e-10)).map(|r| r.to_string()).collect();
    ensure(failed.is_empty(), || failed.join("; "))?;
    let worst = reports.iter().map(|r| r.max_abs_error).fold(0.0, f64::max);
    Ok(format!("{} pairs green, max error {worst:.2e}", reports.len()))
}

type Criterion = (&'static str, fn() -> Outcome, Option<Duration>);

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("cardinalities", cardinalities, Some(Duration::from_secs(5))),
        ("kernel compactness", kernel_compactness, Some(Duration::from_secs(30))),
        ("discrete orthogonality", discrete_orthogonality, None),
        ("cubature exactness", cubature_exactness, None),
        ("interpolation delta property", interpolation_delta, None),
        ("Lebesgue growth", lebesgue_growth, Some(Duration::from_secs(300))),
        ("Chebyshev recurrence consistency", recurrence_consistency, None),
        ("Gaussian cubature", gaussian_cubature, None),
        ("quasi-orthogonal ideal", quasi_orthogonal_ideal, None),
        ("oracle suite", oracle_suite, None),
    ];
    let filter: Vec<String> = std::env::args().skip(1).filter(|a| !a.starts_with('-')).collect();
    let mut failures = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        if !filter.is_empty() && !filter.iter().any(|f| name.contains(f.as_str())) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match (outcome, limit) {
            (Ok(_), Some(l)) if elapsed > *l => Err(format!("took {elapsed:.1?}, limit {l:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {:>2} {name}: PASS ({elapsed:.2?}) {detail}", i + 1),
            Err(why) => {
                failures += 1;
                println!("criterion {:>2} {name}: FAIL ({elapsed:.2?}) {why}", i + 1);
            }
        }
    }
    if failures == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
