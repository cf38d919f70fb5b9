//! Size estimates checked before any enumeration starts.

use crate::error::{CliError, CliResult};

pub const DEFAULT_MAX_CELLS: u128 = 10_000_000;
pub const MAX_CELLS_VAR: &str = "ADF_MAX_CELLS";

/// The enumeration budget, from `ADF_MAX_CELLS` when set.
pub fn max_cells() -> CliResult<u128> {
    match std::env::var(MAX_CELLS_VAR) {
        Ok(v) => v
            .trim()
            .parse::<u128>()
            .ok()
            .filter(|&c| c > 0)
            .ok_or_else(|| CliError::Validation(format!("{MAX_CELLS_VAR}={v:?} is not a positive integer"))),
        Err(_) => Ok(DEFAULT_MAX_CELLS),
    }
}

pub fn ensure(what: &str, needed: u128, cap: u128) -> CliResult<()> {
    if needed > cap {
        return Err(CliError::Budget(format!(
            "{what} needs {needed} cells, budget is {cap} (raise {MAX_CELLS_VAR} to allow it)"
        )));
    }
    Ok(())
}

fn binomial(n: u128, k: u128) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.saturating_mul(n - i) / (i + 1);
    }
    acc
}

/// `|H*_n| = (n+1)^(d+1) - n^(d+1)`.
pub fn omega_nodes(d: usize, n: u32) -> u128 {
    let e = d as u32 + 1;
    let n = n as u128;
    (n + 1).saturating_pow(e).saturating_sub(n.saturating_pow(e))
}

/// `|Lambda_n| = binomial(n+d, d)`.
pub fn simplex_nodes(d: usize, n: u32) -> u128 {
    binomial(n as u128 + d as u128, d as u128)
}

/// `|Lambda°_n| = binomial(n-1, d)`.
pub fn simplex_interior_nodes(d: usize, n: u32) -> u128 {
    binomial((n as u128).saturating_sub(1), d as u128)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(omega_nodes(2, 1), 7);
        assert_eq!(simplex_nodes(2, 1), 3);
        assert_eq!(simplex_nodes(3, 2), 10);
        assert_eq!(simplex_interior_nodes(2, 3), 1);
        assert_eq!(simplex_interior_nodes(2, 2), 0);
        assert_eq!(binomial(60, 30), 118_264_581_564_861_424);
    }

    #[test]
    fn budget_check() {
        assert!(ensure("x", 10, 10).is_ok());
        assert!(matches!(ensure("x", 11, 10), Err(CliError::Budget(_))));
    }
}
