//! Bernoulli numbers with the `B_1 = -1/2` convention.
//!
//! Values are memoised in a process-wide cache; concurrent callers share it.

use std::sync::{LazyLock, Mutex};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::rational::{self, Rational};

static CACHE: LazyLock<Mutex<Vec<Rational>>> = LazyLock::new(|| Mutex::new(vec![Rational::one()]));

/// `B_n`, from `sum_{j<=n} C(n+1, j) B_j = 0`.
pub fn bernoulli(n: usize) -> Rational {
    let mut cache = CACHE.lock().unwrap_or_else(|e| e.into_inner());
    while cache.len() <= n {
        let m = cache.len();
        if m > 1 && m % 2 == 1 {
            cache.push(Rational::zero());
            continue;
        }
        let mut acc = Rational::zero();
        for (j, b) in cache.iter().enumerate() {
            acc += Rational::from_integer(rational::binomial(m as i64 + 1, j as i64)) * b;
        }
        cache.push(-acc / Rational::from_integer(BigInt::from(m + 1)));
    }
    cache[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::ratio;

    /// Akiyama–Tanigawa table, which produces the `B_1 = +1/2` convention.
    fn akiyama_tanigawa(n: usize) -> Rational {
        let mut a: Vec<Rational> = Vec::new();
        for m in 0..=n {
            a.push(ratio(1, m as i64 + 1));
            for j in (1..=m).rev() {
                a[j - 1] = rational::int(j as i64) * (&a[j - 1] - &a[j]);
            }
        }
        if n == 1 {
            -a[0].clone()
        } else {
            a[0].clone()
        }
    }

    #[test]
    fn small_values() {
        assert_eq!(bernoulli(0), ratio(1, 1));
        assert_eq!(bernoulli(1), ratio(-1, 2));
        assert_eq!(bernoulli(2), ratio(1, 6));
        assert_eq!(bernoulli(3), Rational::zero());
        assert_eq!(bernoulli(4), ratio(-1, 30));
        assert_eq!(bernoulli(12), ratio(-691, 2730));
    }

    #[test]
    fn agrees_with_independent_table() {
        for n in 0..=40 {
            assert_eq!(bernoulli(n), akiyama_tanigawa(n), "n = {n}");
        }
    }

    #[test]
    fn shared_across_threads() {
        let handles: Vec<_> = (0..4).map(|k| std::thread::spawn(move || bernoulli(20 + 2 * k))).collect();
        let got: Vec<_> = handles.into_iter().map(|h| h.join().unwrap()).collect();
        assert_eq!(got[0], ratio(-174611, 330));
    }
}
