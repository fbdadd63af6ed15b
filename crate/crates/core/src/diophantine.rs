//! Search for integer solutions of `binom(d, 2) = binom(2c - 1, c - 1)`.
//!
//! The value `V(c) = binom(2c - 1, c - 1)` is stepped with
//! `V(c + 1) = V(c) * 2(2c + 1) / (c + 1)`, and `V` is triangular iff
//! `8V + 1` is a perfect square.
//!
//! Two engines:
//!
//! * [`Strategy::Exact`] keeps `V` as a big integer, rejects most `c` with
//!   square residues modulo `64 * 63 * 65 * 11`, and runs an integer square
//!   root on the rest.
//! * [`Strategy::Sieved`] keeps `V` only modulo about forty primes near
//!   `2^61`, as a numerator/denominator pair, and discards `c` as soon as
//!   `8V + 1` is a non-residue modulo one of them. Survivors are recomputed
//!   from scratch, so a sieve false positive costs time but never a wrong
//!   answer, and a true solution is never discarded.
//!
//! A range may be split into shards, each seeded by one from-scratch
//! computation and run on its own thread; results are merged in `c` order and
//! do not depend on the shard count.

use std::thread;

use num_integer::Integer as _;
use num_traits::{ToPrimitive, Zero};
use serde_json::{json, Value};
use thiserror::Error;

use crate::arith::{choose, triangular_inverse};
use crate::json::nat;
use crate::Natural;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiophantineError {
    #[error("c_min must be at least 2, got {0}")]
    CMinTooSmall(u64),
    #[error("empty range {0}..={1}")]
    EmptyRange(u64, u64),
    #[error("shard count must be at least 1")]
    NoShards,
    #[error("binom({d}, 2) != binom(2c - 1, c - 1) for c = {c}")]
    NotASolution { d: Natural, c: u64 },
}

/// A verified solution `binom(d, 2) = binom(2c - 1, c - 1) = value`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    d: Natural,
    c: u64,
    value: Natural,
}

impl Solution {
    /// Checks the equation with an independent binomial evaluation.
    pub fn new(d: Natural, c: u64) -> Result<Self, DiophantineError> {
        if c < 1 || d < Natural::from(2u32) {
            return Err(DiophantineError::NotASolution { d, c });
        }
        let value = choose(2 * c - 1, c - 1);
        if &d * (&d - 1u32) / 2u32 != value {
            return Err(DiophantineError::NotASolution { d, c });
        }
        Ok(Self { d, c, value })
    }

    pub fn d(&self) -> &Natural {
        &self.d
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    /// `(d, c)` when `d` fits in a machine word.
    pub fn pair(&self) -> Option<(u64, u64)> {
        self.d.to_u64().map(|d| (d, self.c))
    }

    pub fn to_json(&self) -> Value {
        json!({ "d": nat(&self.d), "c": self.c, "value": nat(&self.value) })
    }
}

/// `binom(2c - 1, c - 1)` advanced one `c` at a time.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CentralStepper {
    c: u64,
    value: Natural,
}

impl CentralStepper {
    /// Seeds at `c >= 1` with one from-scratch binomial.
    pub fn new(c: u64) -> Self {
        assert!(c >= 1, "the central sequence starts at c = 1");
        Self { c, value: choose(2 * c - 1, c - 1) }
    }

    pub fn c(&self) -> u64 {
        self.c
    }

    pub fn value(&self) -> &Natural {
        &self.value
    }

    /// Moves to `c + 1`. Panics if the division is ever inexact.
    pub fn step(&mut self) {
        let c = self.c;
        self.value *= 2 * (2 * c + 1);
        let (q, r) = self.value.div_rem(&Natural::from(c + 1));
        assert!(r.is_zero(), "recurrence division inexact at c = {c}");
        self.value = q;
        self.c += 1;
    }
}

const SQUARE_MODULI: [u64; 4] = [64, 63, 65, 11];
const SQUARE_MODULUS: u64 = 64 * 63 * 65 * 11;

struct SquareFilter {
    tables: Vec<Vec<bool>>,
}

impl SquareFilter {
    fn new() -> Self {
        let tables = SQUARE_MODULI
            .iter()
            .map(|&m| {
                let mut t = vec![false; m as usize];
                for x in 0..m {
                    t[(x * x % m) as usize] = true;
                }
                t
            })
            .collect();
        Self { tables }
    }

    /// False only when `8v + 1` is certainly not a square.
    fn may_be_triangular(&self, v: &Natural) -> bool {
        let r = (v % SQUARE_MODULUS).to_u64().expect("residue fits") * 8 + 1;
        SQUARE_MODULI.iter().zip(&self.tables).all(|(&m, t)| t[(r % m) as usize])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Strategy {
    #[default]
    Exact,
    Sieved,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchConfig {
    pub c_min: u64,
    pub c_max: u64,
    pub shards: usize,
    pub strategy: Strategy,
}

impl SearchConfig {
    pub fn new(c_min: u64, c_max: u64) -> Self {
        Self { c_min, c_max, shards: 1, strategy: Strategy::Exact }
    }

    fn validate(&self) -> Result<(), DiophantineError> {
        if self.c_min < 2 {
            return Err(DiophantineError::CMinTooSmall(self.c_min));
        }
        if self.c_min > self.c_max {
            return Err(DiophantineError::EmptyRange(self.c_min, self.c_max));
        }
        if self.shards == 0 {
            return Err(DiophantineError::NoShards);
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOutcome {
    pub c_min: u64,
    pub c_max: u64,
    pub solutions: Vec<Solution>,
    /// Values of `c` that passed the cheap filter and were tested exactly.
    pub candidates: u64,
}

impl SearchOutcome {
    /// Scan coverage, stated without any completeness claim beyond the range.
    pub fn coverage(&self) -> String {
        let found: Vec<String> = self.solutions.iter().map(|s| format!("({},{})", s.d, s.c)).collect();
        if found.is_empty() {
            format!("no solutions for {} <= c <= {}", self.c_min, self.c_max)
        } else {
            format!("solutions for {} <= c <= {}: {}; no others in this range", self.c_min, self.c_max, found.join(", "))
        }
    }
}

/// All solutions with `c_min <= c <= c_max`, exact engine, one shard.
pub fn search(c_min: u64, c_max: u64) -> Result<Vec<Solution>, DiophantineError> {
    search_with(&SearchConfig::new(c_min, c_max)).map(|o| o.solutions)
}

pub fn search_with(config: &SearchConfig) -> Result<SearchOutcome, DiophantineError> {
    config.validate()?;
    let ranges = shard_ranges(config.c_min, config.c_max, config.shards, config.strategy);
    let run = |(a, b): (u64, u64)| match config.strategy {
        Strategy::Exact => exact_range(a, b, None),
        Strategy::Sieved => sieved_range(a, b),
    };
    let parts: Vec<(Vec<Solution>, u64)> = if ranges.len() == 1 {
        vec![run(ranges[0])]
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = ranges.iter().map(|&r| scope.spawn(move || run(r))).collect();
            handles.into_iter().map(|h| h.join().expect("search shard panicked")).collect()
        })
    };
    let mut outcome = SearchOutcome { c_min: config.c_min, c_max: config.c_max, solutions: Vec::new(), candidates: 0 };
    for (sols, cands) in parts {
        outcome.solutions.extend(sols);
        outcome.candidates += cands;
    }
    Ok(outcome)
}

/// Exact single-shard scan reporting `(c, value, is_triangular)` for every `c`.
pub fn search_logged(
    c_min: u64,
    c_max: u64,
    log: &mut dyn FnMut(u64, &Natural, bool),
) -> Result<SearchOutcome, DiophantineError> {
    SearchConfig::new(c_min, c_max).validate()?;
    let (solutions, candidates) = exact_range(c_min, c_max, Some(log));
    Ok(SearchOutcome { c_min, c_max, solutions, candidates })
}

/// Splits `[a, b]` into at most `k` contiguous ranges of roughly equal cost:
/// quadratic in `c` for the exact engine, linear for the sieve.
pub fn shard_ranges(a: u64, b: u64, k: usize, strategy: Strategy) -> Vec<(u64, u64)> {
    let k = (k as u64).clamp(1, b - a + 1);
    let mut cuts = vec![a];
    for i in 1..k {
        let cut = match strategy {
            Strategy::Exact => {
                let (lo, hi) = (a as f64, (b + 1) as f64);
                (lo * lo + (hi * hi - lo * lo) * i as f64 / k as f64).sqrt() as u64
            }
            Strategy::Sieved => a + (b - a + 1) * i / k,
        };
        let prev = *cuts.last().expect("non-empty");
        cuts.push(cut.clamp(prev + 1, b));
    }
    cuts.push(b + 1);
    cuts.dedup();
    cuts.windows(2).map(|w| (w[0], w[1] - 1)).collect()
}

type ScanLog<'a> = &'a mut dyn FnMut(u64, &Natural, bool);

fn exact_range(a: u64, b: u64, mut log: Option<ScanLog<'_>>) -> (Vec<Solution>, u64) {
    let filter = SquareFilter::new();
    let mut stepper = CentralStepper::new(a);
    let mut solutions = Vec::new();
    let mut candidates = 0;
    loop {
        let c = stepper.c();
        let mut triangular = false;
        if filter.may_be_triangular(stepper.value()) {
            candidates += 1;
            if let Some(d) = triangular_inverse(stepper.value()) {
                triangular = true;
                solutions.push(Solution::new(d, c).expect("triangular central value is a solution"));
            }
        }
        if let Some(log) = log.as_mut() {
            log(c, stepper.value(), triangular);
        }
        if c == b {
            break;
        }
        stepper.step();
    }
    (solutions, candidates)
}

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn pow_mod(mut a: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    a %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, a, p);
        }
        a = mul_mod(a, a, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const SIEVE_PRIMES: usize = 40;

/// The largest `SIEVE_PRIMES` primes below `2^61`.
fn sieve_primes() -> Vec<u64> {
    let mut out = Vec::with_capacity(SIEVE_PRIMES);
    let mut n = (1u64 << 61) - 1;
    while out.len() < SIEVE_PRIMES {
        if is_prime_u64(n) {
            out.push(n);
        }
        n -= 2;
    }
    out
}

/// Euler's criterion; `p` odd prime, `a` reduced.
fn is_non_residue(a: u64, p: u64) -> bool {
    a != 0 && pow_mod(a, (p - 1) / 2, p) == p - 1
}

fn sieved_range(a: u64, b: u64) -> (Vec<Solution>, u64) {
    let primes = sieve_primes();
    // V(c) = N / D mod p, seeded with N = (a+1)(a+2)...(2a-1) and D = (a-1)!.
    let mut num: Vec<u64> = vec![1; primes.len()];
    let mut den: Vec<u64> = vec![1; primes.len()];
    for (k, &p) in primes.iter().enumerate() {
        for j in a + 1..2 * a {
            num[k] = mul_mod(num[k], j, p);
        }
        for j in 2..a {
            den[k] = mul_mod(den[k], j, p);
        }
    }
    let mut solutions = Vec::new();
    let mut candidates = 0;
    for c in a..=b {
        let rejected = primes.iter().enumerate().any(|(k, &p)| {
            let eight_n = mul_mod(8, num[k], p);
            is_non_residue(mul_mod((eight_n + den[k]) % p, den[k], p), p)
        });
        if !rejected {
            candidates += 1;
            let value = choose(2 * c - 1, c - 1);
            if let Some(d) = triangular_inverse(&value) {
                solutions.push(Solution::new(d, c).expect("triangular central value is a solution"));
            }
        }
        for (k, &p) in primes.iter().enumerate() {
            num[k] = mul_mod(num[k], 2 * (2 * c + 1), p);
            den[k] = mul_mod(den[k], c + 1, p);
        }
    }
    (solutions, candidates)
}
