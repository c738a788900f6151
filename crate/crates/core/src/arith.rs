//! Exact big-integer helpers shared by the other modules.

use std::sync::{LazyLock, RwLock};

use num_bigint::BigUint;
use num_traits::{One, Zero};

static PASCAL: LazyLock<RwLock<Vec<Vec<BigUint>>>> = LazyLock::new(|| RwLock::new(vec![vec![BigUint::one()]]));

/// `n!` as a big integer.
pub fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, i| acc * BigUint::from(i))
}

/// Binomial coefficient from a memoized Pascal triangle; zero when `k > n`.
pub fn binomial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    {
        let rows = PASCAL.read().unwrap();
        if let Some(row) = rows.get(n) {
            return row[k].clone();
        }
    }
    let mut rows = PASCAL.write().unwrap();
    while rows.len() <= n {
        let prev = rows.last().unwrap();
        let mut next = Vec::with_capacity(prev.len() + 1);
        next.push(BigUint::one());
        for w in prev.windows(2) {
            next.push(&w[0] + &w[1]);
        }
        next.push(BigUint::one());
        rows.push(next);
    }
    rows[n][k].clone()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(factorial(0), BigUint::one());
        assert_eq!(factorial(6), BigUint::from(720u32));
        assert_eq!(binomial(10, 3), BigUint::from(120u32));
        assert_eq!(binomial(3, 5), BigUint::zero());
        // past u64
        assert_eq!(binomial(70, 35).to_string(), "112186277816662845432");
    }
}
