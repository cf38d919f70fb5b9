//! Polynomials in `z_1..z_d` with exact rational coefficients, and the
//! symbolic expansion of the Chebyshev polynomials `T_alpha`, `U_alpha`
//! from their recurrence.

use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::combinat::{binomial, next_permutation};
use crate::error::{Error, Result};
use crate::index_sets::{alphas_of_degree, index_from_differences};
use crate::lattice::{orbit, HomogIndex};
use crate::trig::v_zero;
use crate::{Complex, Rational};

use super::ChebIndex;

/// Exponent tuple, ordered by total degree and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Sparse polynomial; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ZPolynomial {
    vars: usize,
    terms: BTreeMap<Monomial, Rational>,
}

impl ZPolynomial {
    pub fn zero(vars: usize) -> Self {
        ZPolynomial { vars, terms: BTreeMap::new() }
    }

    pub fn constant(vars: usize, c: Rational) -> Self {
        let mut p = Self::zero(vars);
        p.add_term(Monomial(vec![0; vars]), c);
        p
    }

    pub fn one(vars: usize) -> Self {
        Self::constant(vars, Rational::one())
    }

    /// The variable `z_{i+1}`.
    pub fn var(vars: usize, i: usize) -> Self {
        let mut e = vec![0; vars];
        e[i] = 1;
        let mut p = Self::zero(vars);
        p.add_term(Monomial(e), Rational::one());
        p
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; 0 for the zero polynomial.
    pub fn degree(&self) -> usize {
        self.terms.keys().next_back().map_or(0, Monomial::degree)
    }

    /// Terms in graded-lexicographic order.
    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exponents: &[u32]) -> Rational {
        self.terms.get(&Monomial(exponents.to_vec())).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn add_term(&mut self, m: Monomial, c: Rational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// `self += c * other`.
    pub fn add_scaled(&mut self, other: &ZPolynomial, c: &Rational) {
        if c.is_zero() {
            return;
        }
        for (m, a) in &other.terms {
            self.add_term(m.clone(), a * c);
        }
    }

    pub fn scaled(&self, c: &Rational) -> ZPolynomial {
        let mut p = Self::zero(self.vars);
        p.add_scaled(self, c);
        p
    }

    /// `z_{i+1} * self`.
    pub fn mul_var(&self, i: usize) -> ZPolynomial {
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e[i] += 1;
                (Monomial(e), c.clone())
            })
            .collect();
        ZPolynomial { vars: self.vars, terms }
    }

    pub fn mul(&self, other: &ZPolynomial) -> ZPolynomial {
        let mut p = Self::zero(self.vars);
        for (ma, a) in &self.terms {
            for (mb, b) in &other.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(x, y)| x + y).collect();
                p.add_term(Monomial(e), a * b);
            }
        }
        p
    }

    pub fn eval(&self, z: &[Complex]) -> Complex {
        let maxdeg = self.degree();
        let powers: Vec<Vec<Complex>> = z
            .iter()
            .map(|&zi| {
                let mut v = Vec::with_capacity(maxdeg + 1);
                let mut acc = Complex::new(1.0, 0.0);
                for _ in 0..=maxdeg {
                    v.push(acc);
                    acc *= zi;
                }
                v
            })
            .collect();
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono: Complex = m.0.iter().enumerate().map(|(i, &e)| powers[i][e as usize]).product();
                mono * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }
}

impl fmt::Display for ZPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (m, c) in self.terms.iter().rev() {
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let a = c.abs();
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { format!("z{}", i + 1) } else { format!("z{}^{}", i + 1, e) })
                .collect();
            if vars.is_empty() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{a}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    /// `T_alpha`, from the generalized cosines.
    First,
    /// `U_alpha`, from quotients of generalized sines.
    Second,
}

/// Maps an arbitrary index of `H` appearing in the recurrence to a
/// canonical `alpha` with its coefficient, or `None` when the term vanishes.
fn canonical(family: Family, k: &[i64]) -> Option<(Vec<u32>, i64)> {
    let d1 = k.len() as i64;
    let (sorted, sign) = match family {
        Family::First => {
            let mut s = k.to_vec();
            s.sort_unstable_by(|a, b| b.cmp(a));
            (s, 1)
        }
        Family::Second => {
            let v0 = v_zero(k.len() - 1);
            let mut m: Vec<i64> = k.iter().zip(v0.entries()).map(|(a, b)| a + b).collect();
            let mut inversions = 0usize;
            for i in 0..m.len() {
                for j in i + 1..m.len() {
                    match m[i].cmp(&m[j]) {
                        Ordering::Equal => return None,
                        Ordering::Less => inversions += 1,
                        Ordering::Greater => {}
                    }
                }
            }
            m.sort_unstable_by(|a, b| b.cmp(a));
            let s: Vec<i64> = m.iter().zip(v0.entries()).map(|(a, b)| a - b).collect();
            (s, if inversions.is_multiple_of(2) { 1 } else { -1 })
        }
    };
    let alpha = sorted.windows(2).map(|w| ((w[0] - w[1]) / d1) as u32).collect();
    Some((alpha, sign))
}

/// Expansions of all `P_alpha` of one family with `|alpha| <= max_degree`.
#[derive(Debug, Clone)]
pub struct ChebyshevTable {
    family: Family,
    d: usize,
    max_degree: usize,
    polys: HashMap<Vec<u32>, ZPolynomial>,
}

impl ChebyshevTable {
    /// Builds the table one degree layer at a time. Each new layer is the
    /// exact solution of every recurrence relation with `|alpha|` equal to
    /// the previous degree.
    pub fn build(family: Family, d: usize, max_degree: usize) -> Result<Self> {
        crate::index_sets::check_dim(d)?;
        let mut polys = HashMap::new();
        polys.insert(vec![0u32; d], ZPolynomial::one(d));
        let orbits: Vec<Vec<HomogIndex>> = (1..=d).map(|i| orbit(&HomogIndex::vertex(d, i))).collect();
        for n in 0..max_degree {
            let layer = Self::solve_layer(family, d, n, &orbits, &polys)?;
            polys.extend(layer);
        }
        Ok(ChebyshevTable { family, d, max_degree, polys })
    }

    fn solve_layer(
        family: Family,
        d: usize,
        n: usize,
        orbits: &[Vec<HomogIndex>],
        known: &HashMap<Vec<u32>, ZPolynomial>,
    ) -> Result<HashMap<Vec<u32>, ZPolynomial>> {
        let unknowns: Vec<Vec<u32>> =
            alphas_of_degree(d, n + 1).into_iter().map(|a| a.into_iter().map(|x| x as u32).collect()).collect();
        let col: HashMap<&Vec<u32>, usize> = unknowns.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut rows: Vec<Vec<Rational>> = Vec::new();
        let mut rhs: Vec<ZPolynomial> = Vec::new();
        for alpha in alphas_of_degree(d, n) {
            let k = index_from_differences(&alpha);
            let key: Vec<u32> = alpha.iter().map(|&x| x as u32).collect();
            let p_alpha = &known[&key];
            for (i, orb) in orbits.iter().enumerate() {
                let mut row = vec![Rational::zero(); unknowns.len()];
                let c = Rational::from_integer(BigInt::from(binomial(d as i64 + 1, i as i64 + 1)));
                let mut b = p_alpha.mul_var(i).scaled(&c);
                for j in orb {
                    let shifted: Vec<i64> = k.entries().iter().zip(j.entries()).map(|(a, b)| a + b).collect();
                    let Some((gamma, sign)) = canonical(family, &shifted) else { continue };
                    let s = Rational::from_integer(sign.into());
                    match col.get(&gamma) {
                        Some(&c) => row[c] += s,
                        None => b.add_scaled(&known[&gamma], &-s),
                    }
                }
                rows.push(row);
                rhs.push(b);
            }
        }
        // Gauss-Jordan elimination, carrying the polynomial right-hand sides.
        let cols = unknowns.len();
        let mut pivot_row = 0;
        for c in 0..cols {
            let Some(r) = (pivot_row..rows.len()).find(|&r| !rows[r][c].is_zero()) else {
                return Err(Error::RankDeficient(n + 1));
            };
            rows.swap(pivot_row, r);
            rhs.swap(pivot_row, r);
            let inv = rows[pivot_row][c].recip();
            for x in rows[pivot_row].iter_mut() {
                *x *= &inv;
            }
            rhs[pivot_row] = rhs[pivot_row].scaled(&inv);
            for r in 0..rows.len() {
                if r == pivot_row || rows[r][c].is_zero() {
                    continue;
                }
                let f = rows[r][c].clone();
                let (pr, rr) = if r < pivot_row {
                    let (a, b) = rows.split_at_mut(pivot_row);
                    (&b[0], &mut a[r])
                } else {
                    let (a, b) = rows.split_at_mut(r);
                    (&a[pivot_row], &mut b[0])
                };
                for (x, y) in rr.iter_mut().zip(pr) {
                    *x -= &f * y;
                }
                let pivot_rhs = rhs[pivot_row].clone();
                rhs[r].add_scaled(&pivot_rhs, &-f);
            }
            pivot_row += 1;
        }
        if rhs[pivot_row..].iter().any(|p| !p.is_zero()) {
            return Err(Error::Singular("recurrence system is inconsistent"));
        }
        Ok(unknowns.into_iter().zip(rhs).collect())
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn dimension(&self) -> usize {
        self.d
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn get(&self, alpha: &ChebIndex) -> Option<&ZPolynomial> {
        self.polys.get(alpha.entries())
    }
}

type TableCache = Mutex<HashMap<(Family, usize), Arc<ChebyshevTable>>>;

/// Shared table covering at least `degree`, built on first use.
pub fn shared_table(family: Family, d: usize, degree: usize) -> Result<Arc<ChebyshevTable>> {
    static CACHE: OnceLock<TableCache> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    let mut guard = cache.lock().unwrap_or_else(|e| e.into_inner());
    if let Some(t) = guard.get(&(family, d)) {
        if t.max_degree >= degree {
            return Ok(Arc::clone(t));
        }
    }
    let t = Arc::new(ChebyshevTable::build(family, d, degree)?);
    guard.insert((family, d), Arc::clone(&t));
    Ok(t)
}

/// Largest total degree expanded symbolically unless a caller raises it.
pub const DEFAULT_DEGREE_CAP: usize = 12;

fn poly(family: Family, alpha: &ChebIndex, cap: usize) -> Result<ZPolynomial> {
    let degree = alpha.degree();
    if degree > cap {
        return Err(Error::DegreeCap { degree, cap });
    }
    let table = shared_table(family, alpha.dim(), degree)?;
    Ok(table.get(alpha).cloned().expect("table covers the requested degree"))
}

/// Expansion of `T_alpha` in `z`.
pub fn t_poly(alpha: &ChebIndex) -> Result<ZPolynomial> {
    poly(Family::First, alpha, DEFAULT_DEGREE_CAP)
}

/// Expansion of `U_alpha` in `z`.
pub fn u_poly(alpha: &ChebIndex) -> Result<ZPolynomial> {
    poly(Family::Second, alpha, DEFAULT_DEGREE_CAP)
}

pub fn t_poly_capped(alpha: &ChebIndex, cap: usize) -> Result<ZPolynomial> {
    poly(Family::First, alpha, cap)
}

pub fn u_poly_capped(alpha: &ChebIndex, cap: usize) -> Result<ZPolynomial> {
    poly(Family::Second, alpha, cap)
}

/// `w = prod sin^2 pi(t_mu - t_nu)` as a polynomial of degree `2d` in `z`,
/// from `w = (-1/4)^{d(d+1)/2} (d+1)! sum_sigma sgn(sigma) TC_{v° + v° sigma}`.
pub fn weight_poly(d: usize) -> Result<ZPolynomial> {
    let table = shared_table(Family::First, d, 2 * d)?;
    let v0 = v_zero(d);
    let mut acc = ZPolynomial::zero(d);
    let mut perm: Vec<usize> = (0..=d).collect();
    loop {
        let sign = crate::combinat::sign_by_inversions(&perm);
        let k: Vec<i64> = (0..=d).map(|i| v0.entries()[i] + v0.entries()[perm[i]]).collect();
        let (alpha, _) = canonical(Family::First, &k).expect("first kind never vanishes");
        let p = table.get(&ChebIndex::new(alpha)).expect("degree at most 2d");
        acc.add_scaled(p, &Rational::from_integer(sign.into()));
        if next_permutation(&mut perm).is_none() {
            break;
        }
    }
    let pairs = d * (d + 1) / 2;
    let quarter = Rational::new(BigInt::from(-1), BigInt::from(4));
    let mut scale = Rational::from_integer(BigInt::from(crate::combinat::factorial(d + 1)));
    for _ in 0..pairs {
        scale *= &quarter;
    }
    Ok(acc.scaled(&scale))
}
