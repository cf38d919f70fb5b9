//! Homogeneous-coordinate geometry of the hyperplane `t_1 + ... + t_{d+1} = 0`,
//! the permutation action of `S_{d+1}`, the fundamental domain `Omega_H`, the
//! fundamental simplex and congruence modulo the lattice `Z_H^{d+1}`.

use std::cmp::Ordering;
use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::combinat::{next_permutation, sign_by_inversions};
use crate::error::{Error, Result};

/// Float point of the hyperplane. Coordinates sum to zero within
/// `1e-12 (d+1)` (scaled by the largest magnitude).
#[derive(Debug, Clone, PartialEq)]
pub struct HomogPoint {
    coords: Vec<f64>,
}

impl HomogPoint {
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidDimension(coords.len().saturating_sub(1)));
        }
        if let Some(i) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFinite(i));
        }
        let scale = coords.iter().fold(1.0f64, |m, c| m.max(c.abs()));
        let sum: f64 = coords.iter().sum();
        if sum.abs() > 1e-12 * coords.len() as f64 * scale {
            return Err(Error::Malformed(format!("coordinates sum to {sum:e}, not 0")));
        }
        Ok(HomogPoint { coords })
    }

    /// Builds a point without checking the zero-sum constraint.
    pub(crate) fn raw(coords: Vec<f64>) -> Self {
        HomogPoint { coords }
    }

    pub fn zero(d: usize) -> Self {
        HomogPoint { coords: vec![0.0; d + 1] }
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len() - 1
    }

    pub fn sub(&self, other: &HomogPoint) -> HomogPoint {
        HomogPoint::raw(self.coords.iter().zip(&other.coords).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> HomogPoint {
        HomogPoint::raw(self.coords.iter().map(|a| -a).collect())
    }

    pub fn permuted(&self, map: &[usize]) -> HomogPoint {
        HomogPoint::raw(map.iter().map(|&i| self.coords[i]).collect())
    }

    /// Closed simplex test `0 <= t_i - t_j <= 1` for `i < j`, with slack `eps`.
    pub fn in_simplex_approx(&self, eps: f64) -> bool {
        let t = &self.coords;
        t.windows(2).all(|w| w[0] - w[1] >= -eps) && t[0] - t[t.len() - 1] <= 1.0 + eps
    }
}

/// Exact rational point `num / den` of the hyperplane, kept in lowest terms
/// with a positive common denominator.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ExactPoint {
    num: Vec<i64>,
    den: i64,
}

impl ExactPoint {
    pub fn new(num: Vec<i64>, den: i64) -> Result<Self> {
        if num.len() < 2 {
            return Err(Error::InvalidDimension(num.len().saturating_sub(1)));
        }
        if den == 0 {
            return Err(Error::Malformed("zero denominator".into()));
        }
        if num.iter().map(|&x| x as i128).sum::<i128>() != 0 {
            return Err(Error::NotHomogeneous(num, "numerators do not sum to 0"));
        }
        Ok(Self::normalized(num, den))
    }

    fn normalized(mut num: Vec<i64>, mut den: i64) -> Self {
        if den < 0 {
            den = -den;
            num.iter_mut().for_each(|x| *x = -*x);
        }
        let g = num.iter().fold(den, |g, &x| g.gcd(&x));
        if g > 1 {
            num.iter_mut().for_each(|x| *x /= g);
            den /= g;
        }
        ExactPoint { num, den }
    }

    pub fn zero(d: usize) -> Self {
        ExactPoint { num: vec![0; d + 1], den: 1 }
    }

    pub fn numerators(&self) -> &[i64] {
        &self.num
    }

    pub fn denominator(&self) -> i64 {
        self.den
    }

    pub fn dim(&self) -> usize {
        self.num.len() - 1
    }

    pub fn to_f64(&self) -> HomogPoint {
        let den = self.den as f64;
        HomogPoint::raw(self.num.iter().map(|&x| x as f64 / den).collect())
    }

    /// Coordinates as `"p/q"` strings (`"p"` when the entry is an integer).
    pub fn to_strings(&self) -> Vec<String> {
        self.num
            .iter()
            .map(|&x| {
                let g = x.gcd(&self.den);
                let (p, q) = (x / g, self.den / g);
                if q == 1 {
                    p.to_string()
                } else {
                    format!("{p}/{q}")
                }
            })
            .collect()
    }

    pub fn parse(entries: &[String]) -> Result<Self> {
        let mut pairs = Vec::with_capacity(entries.len());
        for e in entries {
            let (p, q) = match e.split_once('/') {
                Some((p, q)) => (p.trim().parse::<i64>(), q.trim().parse::<i64>()),
                None => (e.trim().parse::<i64>(), Ok(1)),
            };
            match (p, q) {
                (Ok(p), Ok(q)) if q != 0 => pairs.push((p, q)),
                _ => return Err(Error::Malformed(format!("bad rational {e:?}"))),
            }
        }
        let den = pairs.iter().fold(1i64, |l, &(_, q)| l.lcm(&q.abs()));
        let num = pairs.iter().map(|&(p, q)| p * (den / q)).collect();
        ExactPoint::new(num, den)
    }

    /// Difference of two entries compared with an integer: sign of
    /// `(t_i - t_j) - c`.
    fn cmp_diff(&self, i: usize, j: usize, c: i64) -> Ordering {
        (self.num[i] - self.num[j]).cmp(&(c * self.den))
    }
}

impl fmt::Display for ExactPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.to_strings().join(", "))
    }
}

/// Element of `H`: integers summing to zero, all congruent modulo `d+1`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct HomogIndex(Vec<i64>);

impl HomogIndex {
    pub fn new(entries: Vec<i64>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidDimension(entries.len().saturating_sub(1)));
        }
        if entries.iter().map(|&x| x as i128).sum::<i128>() != 0 {
            return Err(Error::NotHomogeneous(entries, "entries do not sum to 0"));
        }
        let m = entries.len() as i64;
        let r = entries[0].rem_euclid(m);
        if entries.iter().any(|x| x.rem_euclid(m) != r) {
            return Err(Error::NotHomogeneous(entries, "entries not congruent mod d+1"));
        }
        Ok(HomogIndex(entries))
    }

    pub(crate) fn new_unchecked(entries: Vec<i64>) -> Self {
        debug_assert_eq!(entries.iter().sum::<i64>(), 0);
        HomogIndex(entries)
    }

    pub fn zero(d: usize) -> Self {
        HomogIndex(vec![0; d + 1])
    }

    /// The vertex index `v^k = ({d+1-k}^k, {-k}^{d+1-k})`.
    pub fn vertex(d: usize, k: usize) -> Self {
        let d1 = d as i64 + 1;
        let k = k as i64;
        HomogIndex((0..d1).map(|i| if i < k { d1 - k } else { -k }).collect())
    }

    pub fn entries(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn max(&self) -> i64 {
        *self.0.iter().max().unwrap()
    }

    pub fn min(&self) -> i64 {
        *self.0.iter().min().unwrap()
    }

    /// `(max - min) / (d+1)`, the trigonometric degree.
    pub fn degree(&self) -> i64 {
        (self.max() - self.min()) / (self.0.len() as i64)
    }

    pub fn is_sorted_desc(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }

    pub fn sorted_desc(&self) -> HomogIndex {
        let mut v = self.0.clone();
        v.sort_unstable_by(|a, b| b.cmp(a));
        HomogIndex(v)
    }

    pub fn add(&self, other: &HomogIndex) -> HomogIndex {
        HomogIndex(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &HomogIndex) -> HomogIndex {
        HomogIndex(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> HomogIndex {
        HomogIndex(self.0.iter().map(|a| -a).collect())
    }

    pub fn permuted(&self, map: &[usize]) -> HomogIndex {
        HomogIndex(map.iter().map(|&i| self.0[i]).collect())
    }

    /// The lattice node `k / scale` as an exact point.
    pub fn scaled(&self, scale: i64) -> ExactPoint {
        ExactPoint::normalized(self.0.clone(), scale)
    }

    /// Float node `k / scale`.
    pub fn node(&self, scale: i64) -> HomogPoint {
        let s = scale as f64;
        HomogPoint::raw(self.0.iter().map(|&k| k as f64 / s).collect())
    }

    pub fn dot(&self, t: &HomogPoint) -> f64 {
        self.0.iter().zip(t.coords()).map(|(&k, &x)| k as f64 * x).sum()
    }
}

impl TryFrom<Vec<i64>> for HomogIndex {
    type Error = Error;
    fn try_from(v: Vec<i64>) -> Result<Self> {
        HomogIndex::new(v)
    }
}

impl From<HomogIndex> for Vec<i64> {
    fn from(k: HomogIndex) -> Vec<i64> {
        k.0
    }
}

impl fmt::Display for HomogIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|x| x.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Permutation `sigma` of `{0..d}` acting on tuples by `(p sigma)_i = p_{sigma(i)}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Permutation {
    map: Vec<usize>,
    parity: i8,
}

impl Permutation {
    pub fn new(map: Vec<usize>) -> Result<Self> {
        let m = map.len();
        let mut seen = vec![false; m];
        for &i in &map {
            if i >= m || seen[i] {
                return Err(Error::Malformed(format!("{map:?} is not a permutation")));
            }
            seen[i] = true;
        }
        let parity = sign_by_inversions(&map);
        Ok(Permutation { map, parity })
    }

    pub fn identity(m: usize) -> Self {
        Permutation { map: (0..m).collect(), parity: 1 }
    }

    /// Transposition of the 0-based positions `i` and `j`.
    pub fn transposition(m: usize, i: usize, j: usize) -> Self {
        let mut map: Vec<usize> = (0..m).collect();
        map.swap(i, j);
        let parity = if i == j { 1 } else { -1 };
        Permutation { map, parity }
    }

    pub fn map(&self) -> &[usize] {
        &self.map
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// `+1` for even, `-1` for odd permutations.
    pub fn parity(&self) -> i8 {
        self.parity
    }

    /// The product `self * other`, defined so that acting by it equals
    /// acting by `self` first and then by `other`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            map: other.map.iter().map(|&i| self.map[i]).collect(),
            parity: self.parity * other.parity,
        }
    }
}

/// Anything the permutation group acts on.
pub trait Permutable: Sized {
    fn arity(&self) -> usize;
    fn permute(&self, map: &[usize]) -> Self;
}

impl Permutable for HomogIndex {
    fn arity(&self) -> usize {
        self.0.len()
    }
    fn permute(&self, map: &[usize]) -> Self {
        self.permuted(map)
    }
}

impl Permutable for HomogPoint {
    fn arity(&self) -> usize {
        self.coords.len()
    }
    fn permute(&self, map: &[usize]) -> Self {
        self.permuted(map)
    }
}

impl Permutable for ExactPoint {
    fn arity(&self) -> usize {
        self.num.len()
    }
    fn permute(&self, map: &[usize]) -> Self {
        ExactPoint { num: map.iter().map(|&i| self.num[i]).collect(), den: self.den }
    }
}

/// Embeds `R^d` into the hyperplane by appending `-(t_1 + ... + t_d)`.
pub fn project_to_homogeneous(t: &[f64]) -> Result<HomogPoint> {
    if t.is_empty() {
        return Err(Error::InvalidDimension(0));
    }
    if let Some(i) = t.iter().position(|c| !c.is_finite()) {
        return Err(Error::NonFinite(i));
    }
    let mut coords = t.to_vec();
    coords.push(-t.iter().sum::<f64>());
    Ok(HomogPoint::raw(coords))
}

pub fn apply_perm<P: Permutable>(p: &P, sigma: &Permutation) -> Result<P> {
    if p.arity() != sigma.len() {
        return Err(Error::SizeMismatch { expected: p.arity(), got: sigma.len() });
    }
    Ok(p.permute(sigma.map()))
}

/// `-1 < t_i - t_j <= 1` for all `i < j`.
pub fn in_fundamental_domain(t: &ExactPoint) -> bool {
    let m = t.num.len();
    (0..m).all(|i| {
        (i + 1..m).all(|j| t.cmp_diff(i, j, -1) == Ordering::Greater && t.cmp_diff(i, j, 1) != Ordering::Greater)
    })
}

/// `0 <= t_i - t_j <= 1` for all `i < j`.
pub fn in_simplex(t: &ExactPoint) -> bool {
    let m = t.num.len();
    (0..m).all(|i| {
        (i + 1..m).all(|j| t.cmp_diff(i, j, 0) != Ordering::Less && t.cmp_diff(i, j, 1) != Ordering::Greater)
    })
}

/// The 1-based `j` with `t` in the parallelepiped `Omega_H^{j}`: the smallest
/// index attaining the minimal coordinate.
pub fn partition_index(t: &ExactPoint) -> Result<usize> {
    if !in_fundamental_domain(t) {
        return Err(Error::OutsideDomain);
    }
    let min = *t.num.iter().min().unwrap();
    Ok(t.num.iter().position(|&x| x == min).unwrap() + 1)
}

/// Membership in `Omega_H^{j}` straight from its defining inequalities
/// (1-based `j`).
pub fn in_partition_cell(t: &ExactPoint, j: usize) -> bool {
    let j = j - 1;
    (0..t.num.len()).all(|i| match i.cmp(&j) {
        Ordering::Less => t.cmp_diff(i, j, 0) == Ordering::Greater && t.cmp_diff(i, j, 1) != Ordering::Greater,
        Ordering::Greater => t.cmp_diff(i, j, 0) != Ordering::Less && t.cmp_diff(i, j, 1) == Ordering::Less,
        Ordering::Equal => true,
    })
}

/// `s - t` has integer entries.
pub fn congruent_mod_lattice(s: &ExactPoint, t: &ExactPoint) -> bool {
    if s.num.len() != t.num.len() {
        return false;
    }
    let (sd, td) = (s.den as i128, t.den as i128);
    let den = sd * td;
    s.num
        .iter()
        .zip(&t.num)
        .all(|(&a, &b)| (a as i128 * td - b as i128 * sd).rem_euclid(den) == 0)
}

/// The unique representative in `Omega_H` of `t` modulo `Z_H^{d+1}`.
pub fn fold_into_domain(t: &ExactPoint) -> ExactPoint {
    let den = t.den;
    let mut num = t.num.clone();
    // Shrink the spread: max - min > 1 strictly decreases the sum of squares.
    loop {
        let (imax, &vmax) = num.iter().enumerate().max_by_key(|(_, &v)| v).unwrap();
        let (imin, &vmin) = num.iter().enumerate().min_by_key(|(_, &v)| v).unwrap();
        if vmax - vmin <= den {
            break;
        }
        num[imax] -= den;
        num[imin] += den;
    }
    // Now in the closure. On the boundary (spread exactly 1) the half-open
    // rule requires every maximal entry to precede every minimal one.
    let vmax = *num.iter().max().unwrap();
    let vmin = *num.iter().min().unwrap();
    if vmax - vmin == den {
        let extreme: Vec<usize> = (0..num.len()).filter(|&i| num[i] == vmax || num[i] == vmin).collect();
        let a = extreme.iter().filter(|&&i| num[i] == vmax).count();
        for (pos, &i) in extreme.iter().enumerate() {
            num[i] = if pos < a { vmax } else { vmin };
        }
    }
    ExactPoint { num, den }
}

/// Distinct elements of the orbit `k S_{d+1}`, in lexicographically
/// descending order.
pub fn orbit(k: &HomogIndex) -> Vec<HomogIndex> {
    let mut v = k.0.clone();
    v.sort_unstable();
    let mut out = vec![HomogIndex(v.clone())];
    while next_permutation(&mut v).is_some() {
        out.push(HomogIndex(v.clone()));
    }
    out.reverse();
    out
}

/// Order of the stabilizer `prod p_i!` over the multiplicities of `k`.
pub fn stabilizer_size(k: &HomogIndex) -> u64 {
    let mut v = k.0.clone();
    v.sort_unstable();
    let mut size = 1u64;
    let mut run = 1u64;
    for w in v.windows(2) {
        if w[0] == w[1] {
            run += 1;
            size *= run;
        } else {
            run = 1;
        }
    }
    size
}
