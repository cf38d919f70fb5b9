//! Exact factorials, binomials and permutation tables.

use std::sync::OnceLock;

use num_bigint::BigUint;
use num_traits::One;

pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * BigUint::from(k))
}

/// `binomial(n, k)`, zero when `k > n` or either argument is negative.
pub fn binomial(n: i64, k: i64) -> BigUint {
    if k < 0 || n < 0 || k > n {
        return BigUint::from(0u32);
    }
    let k = k.min(n - k) as u64;
    let n = n as u64;
    let mut acc = BigUint::one();
    for i in 0..k {
        acc = acc * BigUint::from(n - i) / BigUint::from(i + 1);
    }
    acc
}

/// Multinomial `(sum p)! / prod p_i!`.
pub fn multinomial(parts: &[usize]) -> BigUint {
    let total: usize = parts.iter().sum();
    let mut den = BigUint::one();
    for &p in parts {
        den *= factorial(p);
    }
    factorial(total) / den
}

pub fn binomial_u64(n: i64, k: i64) -> u64 {
    u64::try_from(binomial(n, k)).unwrap_or(u64::MAX)
}

pub fn factorial_f64(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

/// One permutation of `0..m` together with its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SignedPerm {
    pub map: Vec<usize>,
    pub sign: i8,
}

/// Advances `v` to its lexicographic successor. Returns the number of
/// transpositions performed, or `None` when `v` was the last arrangement.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> Option<usize> {
    let n = v.len();
    if n < 2 {
        return None;
    }
    let mut i = n - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return None;
    }
    let mut j = n - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    Some(1 + (n - i) / 2)
}

fn build_perms(m: usize) -> Vec<SignedPerm> {
    let mut cur: Vec<usize> = (0..m).collect();
    let mut sign = 1i8;
    let mut out = vec![SignedPerm { map: cur.clone(), sign }];
    while let Some(swaps) = next_permutation(&mut cur) {
        if swaps % 2 == 1 {
            sign = -sign;
        }
        out.push(SignedPerm { map: cur.clone(), sign });
    }
    out
}

const CACHED: usize = 10;

/// All permutations of `0..m` in lexicographic order with parity tracked
/// incrementally. Tables for `m < 10` are built once and shared.
pub fn permutations(m: usize) -> std::borrow::Cow<'static, [SignedPerm]> {
    static TABLES: [OnceLock<Vec<SignedPerm>>; CACHED] = [const { OnceLock::new() }; CACHED];
    if m < CACHED {
        std::borrow::Cow::Borrowed(TABLES[m].get_or_init(|| build_perms(m)).as_slice())
    } else {
        std::borrow::Cow::Owned(build_perms(m))
    }
}

/// Sign of a permutation from its inversion count.
pub fn sign_by_inversions(map: &[usize]) -> i8 {
    let mut inv = 0usize;
    for i in 0..map.len() {
        for j in i + 1..map.len() {
            if map[i] > map[j] {
                inv += 1;
            }
        }
    }
    if inv.is_multiple_of(2) {
        1
    } else {
        -1
    }
}
