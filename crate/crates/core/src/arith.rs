//! Big-integer combinatorics: binomials, exact square roots, triangular numbers.

use num_bigint::BigUint;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::{Integer, Natural};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ArithError {
    #[error("binomial upper index must be non-negative, got {0}")]
    NegativeUpper(i64),
    #[error("triangular inverse needs a non-negative argument")]
    NegativeTriangular,
}

/// Below this lower index the product formula is cheaper than factoring.
const FACTORED_THRESHOLD: u64 = 600;

/// `binom(n, k)` for a signed lower index; zero outside `0..=n`.
pub fn binom(n: i64, k: i64) -> Result<Integer, ArithError> {
    if n < 0 {
        return Err(ArithError::NegativeUpper(n));
    }
    if k < 0 || k > n {
        return Ok(Integer::zero());
    }
    Ok(Integer::from(choose(n as u64, k as u64)))
}

/// Unsigned binomial coefficient, zero when `k > n`.
pub fn choose(n: u64, k: u64) -> Natural {
    if k > n {
        return Natural::zero();
    }
    let k = k.min(n - k);
    if k <= FACTORED_THRESHOLD {
        choose_product(n, k)
    } else {
        choose_factored(n, k)
    }
}

/// `binom(n, k)` as a machine integer, `None` on overflow.
pub fn choose_u64(n: u64, k: u64) -> Option<u64> {
    choose(n, k).to_u64()
}

// After step i the accumulator holds binom(n - k + i, i), so every division is exact.
fn choose_product(n: u64, k: u64) -> Natural {
    let base = n - k;
    let mut small: u128 = 1;
    let mut i = 1;
    while i <= k {
        match small.checked_mul((base + i) as u128) {
            Some(v) => {
                small = v / i as u128;
                i += 1;
            }
            None => break,
        }
    }
    let mut acc = Natural::from(small);
    for i in i..=k {
        acc *= base + i;
        acc /= i;
    }
    acc
}

// Legendre's formula for the prime exponents, then a balanced product.
// Every prime power p^e dividing binom(n, k) is at most n, so it fits a u64.
fn choose_factored(n: u64, k: u64) -> Natural {
    let primes = primes_up_to(n);
    let mut factors: Vec<u64> = Vec::with_capacity(primes.len() / 4);
    let nk = n - k;
    for &p in &primes {
        let mut e = 0u32;
        let mut q = p;
        loop {
            e += (n / q - k / q - nk / q) as u32;
            match q.checked_mul(p) {
                Some(next) if next <= n => q = next,
                _ => break,
            }
        }
        if e > 0 {
            factors.push(p.pow(e));
        }
    }
    product_of(&factors)
}

/// Product of machine words via a balanced multiplication tree.
pub fn product_of(factors: &[u64]) -> Natural {
    // Pack words into u128 limbs first to halve the tree height.
    let mut packed: Vec<Natural> = Vec::with_capacity(factors.len() / 2 + 1);
    let mut acc: u128 = 1;
    for &f in factors {
        match acc.checked_mul(f as u128) {
            Some(v) => acc = v,
            None => {
                packed.push(Natural::from(acc));
                acc = f as u128;
            }
        }
    }
    packed.push(Natural::from(acc));
    tree_product(packed)
}

fn tree_product(mut level: Vec<Natural>) -> Natural {
    if level.is_empty() {
        return Natural::one();
    }
    while level.len() > 1 {
        let mut next = Vec::with_capacity(level.len().div_ceil(2));
        let mut it = level.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(a * b),
                None => next.push(a),
            }
        }
        level = next;
    }
    level.pop().unwrap_or_else(Natural::one)
}

/// Sieve of Eratosthenes.
pub fn primes_up_to(n: u64) -> Vec<u64> {
    if n < 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i as u64);
            let mut j = i.saturating_mul(i);
            while j <= n {
                composite[j] = true;
                j += i;
            }
        }
    }
    primes
}

/// Floor square root, refined by Newton iteration.
pub fn isqrt(n: &Natural) -> Natural {
    n.sqrt()
}

/// Exact square root, `None` when `n` is not a perfect square.
pub fn exact_sqrt(n: &Natural) -> Option<Natural> {
    let s = isqrt(n);
    if &s * &s == *n {
        Some(s)
    } else {
        None
    }
}

/// The `d >= 1` with `d(d - 1)/2 = t`, if any.
pub fn triangular_inverse(t: &Natural) -> Option<Natural> {
    let disc = (t << 3u32) + 1u32;
    exact_sqrt(&disc).map(|s| (s + 1u32) >> 1u32)
}

/// Signed front end for [`triangular_inverse`].
pub fn triangular_inverse_signed(t: &Integer) -> Result<Option<Integer>, ArithError> {
    let t = t.to_biguint().ok_or(ArithError::NegativeTriangular)?;
    Ok(triangular_inverse(&t).map(Integer::from))
}

/// Largest `d` with `binom(d, 2) <= t`.
pub fn triangular_floor(t: &Natural) -> Natural {
    let disc = (t << 3u32) + 1u32;
    (isqrt(&disc) + 1u32) >> 1u32
}

/// Chu–Vandermonde: `sum_j binom(m, b - j) binom(a, j) == binom(m + a, b)`.
pub fn vandermonde_check(m: u64, a: u64, b: u64) -> bool {
    let lhs: BigUint = (0..=a.min(b)).map(|j| choose(m, b - j) * choose(a, j)).sum();
    lhs == choose(m + a, b)
}
