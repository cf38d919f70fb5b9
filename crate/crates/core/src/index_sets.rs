//! The finite index sets `H_n`, `H*_n`, `H°_n`, `Lambda_n`, `Lambda°_n`,
//! the boundary strata of `H*_n` and the exact cubature weights `c` and
//! `lambda`.
//!
//! Every enumeration is returned in lexicographically descending order.

use num_bigint::{BigInt, BigUint};
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::combinat::{binomial, factorial};
use crate::error::{Error, Result};
use crate::lattice::{orbit, HomogIndex};
use crate::Rational;

/// Run lengths of equal consecutive entries of a sorted index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Composition(Vec<usize>);

impl Composition {
    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `(d+1)! / prod p_i!`, the size of the orbit.
    pub fn multinomial(&self) -> BigUint {
        let total: usize = self.0.iter().sum();
        self.0.iter().fold(factorial(total), |acc, &p| acc / factorial(p))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum BoundaryClass {
    Interior,
    /// `a` entries attain the maximum, `b` the minimum, and the spread is
    /// exactly `(d+1) n`.
    Boundary { a: usize, b: usize },
}

/// An element of `H*_n` with its weights.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightedIndex {
    pub index: HomogIndex,
    pub class: BoundaryClass,
    pub c: Rational,
    /// Present for members of `Lambda_n` only.
    pub lambda: Option<Rational>,
}

pub(crate) fn check_dim(d: usize) -> Result<()> {
    if d == 0 {
        Err(Error::InvalidDimension(d))
    } else {
        Ok(())
    }
}

fn check_order(n: u32) -> Result<()> {
    if n == 0 {
        Err(Error::InvalidOrder(0, "must be at least 1"))
    } else {
        Ok(())
    }
}

fn sort_desc(v: &mut [HomogIndex]) {
    v.sort_unstable_by(|a, b| b.cmp(a));
}

fn spread(k: &HomogIndex) -> i64 {
    k.max() - k.min()
}

/// The scale `(d+1) n` that maps indices to nodes.
pub fn node_scale(d: usize, n: u32) -> i64 {
    (d as i64 + 1) * n as i64
}

/// All `alpha` in `N_0^d` with `lo <= alpha_i` and `sum alpha <= max_total`,
/// in lexicographic order.
fn bounded_tuples(d: usize, lo: i64, max_total: i64) -> Vec<Vec<i64>> {
    fn rec(d: usize, lo: i64, left: i64, cur: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        let slots = (d - cur.len() - 1) as i64;
        let mut a = lo;
        while a + slots * lo <= left {
            cur.push(a);
            rec(d, lo, left - a, cur, out);
            cur.pop();
            a += 1;
        }
    }
    let mut out = Vec::new();
    if d as i64 * lo <= max_total {
        rec(d, lo, max_total, &mut Vec::with_capacity(d), &mut out);
    }
    out
}

/// All non-negative `alpha` with `|alpha| = total`.
pub fn alphas_of_degree(d: usize, total: usize) -> Vec<Vec<i64>> {
    bounded_tuples(d, 0, total as i64)
        .into_iter()
        .filter(|a| a.iter().sum::<i64>() == total as i64)
        .collect()
}

/// All non-negative `alpha` with `|alpha| <= max_total`.
pub fn alphas_up_to(d: usize, max_total: usize) -> Vec<Vec<i64>> {
    bounded_tuples(d, 0, max_total as i64)
}

/// Sorted index with consecutive differences `(d+1) alpha_i`. Works for
/// arbitrary integer `alpha` (the map is linear).
pub fn index_from_differences(alpha: &[i64]) -> HomogIndex {
    let d = alpha.len() as i64;
    let mut prefix = 0i64;
    let mut total = 0i64;
    for &a in alpha {
        prefix += a;
        total += prefix;
    }
    let mut k = Vec::with_capacity(alpha.len() + 1);
    let mut run = 0i64;
    k.push(total);
    for &a in alpha {
        run += a;
        k.push(total - (d + 1) * run);
    }
    HomogIndex::new_unchecked(k)
}

/// `H_n`: `-(d+1)n < k_i - k_j <= (d+1)n` for `i < j`. Size `(d+1) n^d`.
pub fn enum_hn(d: usize, n: u32) -> Result<Vec<HomogIndex>> {
    check_dim(d)?;
    check_order(n)?;
    let scale = node_scale(d, n);
    let mut out: Vec<HomogIndex> = enum_hn_star(d, n)?
        .into_iter()
        .filter(|k| spread(k) < scale || boundary_is_half_open(k))
        .collect();
    sort_desc(&mut out);
    Ok(out)
}

/// On the boundary of `H*_n`, the half-open side keeps exactly the indices
/// whose maximal entries all precede their minimal ones.
fn boundary_is_half_open(k: &HomogIndex) -> bool {
    let (hi, lo) = (k.max(), k.min());
    let e = k.entries();
    let last_max = e.iter().rposition(|&x| x == hi).unwrap();
    let first_min = e.iter().position(|&x| x == lo).unwrap();
    last_max < first_min
}

/// `H*_n`: `|k_i - k_j| <= (d+1)n`. Size `(n+1)^{d+1} - n^{d+1}`.
pub fn enum_hn_star(d: usize, n: u32) -> Result<Vec<HomogIndex>> {
    check_dim(d)?;
    let mut out: Vec<HomogIndex> = enum_lambda_n(d, n)?.iter().flat_map(orbit).collect();
    sort_desc(&mut out);
    Ok(out)
}

/// `H°_n`: `|k_i - k_j| < (d+1)n`, which equals `H*_{n-1}`.
pub fn enum_hn_interior(d: usize, n: u32) -> Result<Vec<HomogIndex>> {
    check_dim(d)?;
    check_order(n)?;
    enum_hn_star(d, n - 1)
}

/// `Lambda_n`: sorted members of `H*_n`. Size `binomial(n+d, d)`.
pub fn enum_lambda_n(d: usize, n: u32) -> Result<Vec<HomogIndex>> {
    check_dim(d)?;
    let mut out: Vec<HomogIndex> =
        bounded_tuples(d, 0, n as i64).iter().map(|a| index_from_differences(a)).collect();
    sort_desc(&mut out);
    Ok(out)
}

/// `Lambda°_n`: strictly decreasing with spread below `(d+1)n`. Size
/// `binomial(n-1, d)`.
pub fn enum_lambda_interior(d: usize, n: u32) -> Result<Vec<HomogIndex>> {
    check_dim(d)?;
    let mut out: Vec<HomogIndex> =
        bounded_tuples(d, 1, n as i64 - 1).iter().map(|a| index_from_differences(a)).collect();
    sort_desc(&mut out);
    Ok(out)
}

fn require_in_star(k: &HomogIndex, n: u32) -> Result<()> {
    check_order(n)?;
    if spread(k) > node_scale(k.dim(), n) {
        return Err(Error::OutsideSet { index: k.entries().to_vec(), set: "H*_n" });
    }
    Ok(())
}

pub fn classify(k: &HomogIndex, n: u32) -> Result<BoundaryClass> {
    require_in_star(k, n)?;
    if spread(k) < node_scale(k.dim(), n) {
        return Ok(BoundaryClass::Interior);
    }
    let (hi, lo) = (k.max(), k.min());
    let a = k.entries().iter().filter(|&&x| x == hi).count();
    let b = k.entries().iter().filter(|&&x| x == lo).count();
    Ok(BoundaryClass::Boundary { a, b })
}

/// `1` inside, `1 / binomial(a+b, a)` on the stratum `(a, b)`.
pub fn c_weight(k: &HomogIndex, n: u32) -> Result<Rational> {
    Ok(match classify(k, n)? {
        BoundaryClass::Interior => Rational::one(),
        BoundaryClass::Boundary { a, b } => {
            Rational::new(BigInt::one(), BigInt::from(binomial((a + b) as i64, a as i64)))
        }
    })
}

pub fn composition_of(k: &HomogIndex) -> Result<Composition> {
    if !k.is_sorted_desc() {
        return Err(Error::Unsorted(k.entries().to_vec()));
    }
    let e = k.entries();
    let mut parts = vec![1usize];
    for w in e.windows(2) {
        if w[0] == w[1] {
            *parts.last_mut().unwrap() += 1;
        } else {
            parts.push(1);
        }
    }
    Ok(Composition(parts))
}

/// Simplex weight: `(d+1)!/prod p_i!` inside, and
/// `(d+1)!/((p_l + p_1)! p_2! ... p_{l-1}!)` when `k_1 - k_{d+1} = (d+1)n`.
pub fn lambda_weight(k: &HomogIndex, n: u32) -> Result<Rational> {
    let p = composition_of(k)?;
    require_in_star(k, n)?;
    let parts = p.parts();
    let top = factorial(k.dim() + 1);
    let den = if spread(k) < node_scale(k.dim(), n) {
        parts.iter().map(|&x| factorial(x)).product::<BigUint>()
    } else {
        let l = parts.len();
        let inner: BigUint = parts[1..l - 1].iter().map(|&x| factorial(x)).product();
        factorial(parts[0] + parts[l - 1]) * inner
    };
    Ok(Rational::new(BigInt::from(top), BigInt::from(den)))
}

/// `S_j`: the members of `H*_n` congruent to `j` modulo `(d+1)n Z_H`.
pub fn congruence_class(j: &HomogIndex, n: u32) -> Result<Vec<HomogIndex>> {
    let BoundaryClass::Boundary { a, .. } = classify(j, n)? else {
        return Ok(vec![j.clone()]);
    };
    let (hi, lo) = (j.max(), j.min());
    let e = j.entries();
    let extreme: Vec<usize> = (0..e.len()).filter(|&i| e[i] == hi || e[i] == lo).collect();
    // choose which extreme positions carry the maximum
    let mut mask: Vec<bool> = (0..extreme.len()).map(|i| i >= extreme.len() - a).collect();
    let mut out = Vec::new();
    loop {
        let mut k = e.to_vec();
        for (&i, &is_max) in extreme.iter().zip(&mask) {
            k[i] = if is_max { hi } else { lo };
        }
        out.push(HomogIndex::new_unchecked(k));
        if crate::combinat::next_permutation(&mut mask).is_none() {
            break;
        }
    }
    sort_desc(&mut out);
    Ok(out)
}

/// `|H_n^{a,b}| = (d+1)!/(a! b! (d+1-a-b)!) (n-1)^{d+1-a-b}`.
pub fn stratum_size(d: usize, n: u32, a: usize, b: usize) -> BigUint {
    if a == 0 || b == 0 || a + b > d + 1 {
        return BigUint::from(0u32);
    }
    let rest = d + 1 - a - b;
    let orbit = factorial(d + 1) / (factorial(a) * factorial(b) * factorial(rest));
    orbit * BigUint::from(n.saturating_sub(1)).pow(rest as u32)
}

/// `H*_n` with classes and weights; `lambda` filled for sorted members.
pub fn weighted_hn_star(d: usize, n: u32) -> Result<Vec<WeightedIndex>> {
    check_order(n)?;
    enum_hn_star(d, n)?
        .into_iter()
        .map(|k| {
            let lambda = if k.is_sorted_desc() { Some(lambda_weight(&k, n)?) } else { None };
            Ok(WeightedIndex { class: classify(&k, n)?, c: c_weight(&k, n)?, lambda, index: k })
        })
        .collect()
}

/// `Lambda_n` with classes and weights.
pub fn weighted_lambda_n(d: usize, n: u32) -> Result<Vec<WeightedIndex>> {
    check_order(n)?;
    enum_lambda_n(d, n)?
        .into_iter()
        .map(|k| {
            Ok(WeightedIndex {
                class: classify(&k, n)?,
                c: c_weight(&k, n)?,
                lambda: Some(lambda_weight(&k, n)?),
                index: k,
            })
        })
        .collect()
}
