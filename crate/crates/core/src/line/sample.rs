//! Seeded Monte-Carlo probing of lines, and a few reference linear systems.
//!
//! Trial `t` draws its two points from a ChaCha stream selected by `(seed, t)`,
//! so a histogram depends only on the seed and never on the worker count.

use std::collections::BTreeMap;
use std::thread;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{classify_line, LineCase, LineError, QuadraticForm};
use crate::{ExactField, Integer, Rational, RationalForm};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SampleConfig {
    pub trials: u64,
    pub seed: u64,
    /// Coordinates (or subspace coefficients) are drawn from `-height..=height`.
    pub height: i64,
    pub workers: usize,
    /// Optional integer basis of a linear subspace; points are drawn inside it.
    pub subspace: Option<Vec<Vec<i64>>>,
}

impl SampleConfig {
    pub fn new(trials: u64, seed: u64) -> Self {
        Self { trials, seed, height: 4, workers: 1, subspace: None }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LineHistogram {
    pub trials: u64,
    pub counts: BTreeMap<LineCase, u64>,
}

impl LineHistogram {
    pub fn count(&self, case: LineCase) -> u64 {
        self.counts.get(&case).copied().unwrap_or(0)
    }

    /// Lines that miss the base scheme.
    pub fn disjoint(&self) -> u64 {
        self.counts.iter().filter(|(c, _)| c.is_disjoint()).map(|(_, n)| n).sum()
    }

    /// Whether some sampled line is a double cover, i.e. a witness that the
    /// double-cover locus is non-empty.
    pub fn found_double_cover(&self) -> bool {
        self.count(LineCase::DoubleCover) > 0
    }

    fn merge(&mut self, other: LineHistogram) {
        self.trials += other.trials;
        for (case, n) in other.counts {
            *self.counts.entry(case).or_default() += n;
        }
    }
}

fn random_point<F: ExactField>(rng: &mut ChaCha8Rng, n: usize, config: &SampleConfig) -> Vec<F> {
    let h = config.height;
    let coords: Vec<i64> = match &config.subspace {
        None => (0..n).map(|_| rng.random_range(-h..=h)).collect(),
        Some(basis) => {
            let mut v = vec![0i64; n];
            for b in basis {
                let t = rng.random_range(-h..=h);
                for (vi, bi) in v.iter_mut().zip(b) {
                    *vi += t * bi;
                }
            }
            v
        }
    };
    coords.into_iter().map(|x| F::from_i64(x).expect("integers embed")).collect()
}

fn run_trials<F: ExactField>(
    forms: &[QuadraticForm<F>],
    n: usize,
    config: &SampleConfig,
    range: std::ops::Range<u64>,
) -> LineHistogram {
    let mut hist = LineHistogram::default();
    for t in range {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(t);
        let case = loop {
            let p = random_point::<F>(&mut rng, n, config);
            let q = random_point::<F>(&mut rng, n, config);
            match classify_line(forms, &p, &q) {
                Ok(case) => break case,
                Err(LineError::CoincidentPoints) => continue,
                Err(e) => unreachable!("inputs validated before sampling: {e}"),
            }
        };
        hist.trials += 1;
        *hist.counts.entry(case).or_default() += 1;
    }
    hist
}

/// Classifies `config.trials` random lines.
pub fn sample_lines<F: ExactField + Send + Sync>(
    forms: &[QuadraticForm<F>],
    config: &SampleConfig,
) -> Result<LineHistogram, LineError> {
    if config.trials == 0 {
        return Err(LineError::NoTrials);
    }
    if config.height < 1 {
        return Err(LineError::BadHeight);
    }
    let Some(n) = forms.first().map(|f| f.ambient_dim() + 1) else {
        return Ok(LineHistogram {
            trials: config.trials,
            counts: BTreeMap::from([(LineCase::ContainedInX, config.trials)]),
        });
    };
    if forms.iter().any(|f| f.ambient_dim() + 1 != n) {
        return Err(LineError::MixedAmbient);
    }
    if let Some(basis) = &config.subspace {
        if basis.iter().any(|b| b.len() != n) {
            return Err(LineError::SubspaceDimension { expected: n });
        }
        if !has_two_independent(basis) {
            return Err(LineError::SubspaceTooSmall);
        }
    }

    let workers = config.workers.clamp(1, config.trials.min(256) as usize);
    if workers == 1 {
        return Ok(run_trials(forms, n, config, 0..config.trials));
    }
    let chunk = config.trials.div_ceil(workers as u64);
    let mut total = LineHistogram::default();
    thread::scope(|scope| {
        let handles: Vec<_> = (0..workers as u64)
            .map(|w| {
                let start = (w * chunk).min(config.trials);
                let end = ((w + 1) * chunk).min(config.trials);
                scope.spawn(move || run_trials(forms, n, config, start..end))
            })
            .collect();
        for h in handles {
            total.merge(h.join().expect("sampling worker panicked"));
        }
    });
    Ok(total)
}

fn has_two_independent(basis: &[Vec<i64>]) -> bool {
    basis.iter().enumerate().any(|(a, u)| {
        basis[a + 1..].iter().any(|v| {
            (0..u.len()).any(|i| (i + 1..u.len()).any(|j| u[i] as i128 * v[j] as i128 != u[j] as i128 * v[i] as i128))
        })
    })
}

fn int(v: i64) -> Rational {
    Rational::from_integer(Integer::from(v))
}

/// All monomials `x_i x_j` on `P^r`: the complete system of quadrics.
pub fn complete_system(r: usize) -> Vec<RationalForm> {
    let mut forms = Vec::new();
    for i in 0..=r {
        for j in i..=r {
            forms.push(RationalForm::from_monomials(r, [(i, j, int(1))]).expect("indices in range"));
        }
    }
    forms
}

fn random_quadric(rng: &mut ChaCha8Rng, skip_axes: bool) -> RationalForm {
    let mut terms = Vec::new();
    for i in 0..4 {
        for j in i..4 {
            if skip_axes && i == j && i < 2 {
                continue;
            }
            let mut c = rng.random_range(-5i64..=5);
            let pinned = if skip_axes { (i, j) == (0, 1) } else { i == j && i < 2 };
            if pinned && c == 0 {
                c = 1;
            }
            terms.push((i, j, int(c)));
        }
    }
    RationalForm::from_monomials(4, terms).expect("indices in range")
}

fn with_w_products(mut forms: Vec<RationalForm>) -> Vec<RationalForm> {
    for i in 0..4 {
        forms.push(RationalForm::from_monomials(4, [(4, i, int(1))]).expect("indices in range"));
    }
    forms
}

/// The system `(F0 : F1 : F2 : w x : w y : w z : w u)` on `P^4` with coordinates
/// `(x : y : z : u : w)` and random integer quadrics `F_i` in `x, y, z, u`.
pub fn remw_system(seed: u64) -> Vec<RationalForm> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms = (0..3).map(|_| random_quadric(&mut rng, false)).collect();
    with_w_products(forms)
}

/// Basis of the hyperplane `w = 0` in the coordinates of [`remw_system`].
pub fn remw_hyperplane() -> Vec<Vec<i64>> {
    (0..4).map(|i| (0..5).map(|j| (i == j) as i64).collect()).collect()
}

/// A [`remw_system`] variant in which `F1` and `F2` have no `x^2` and `y^2`
/// terms, so both vanish at `(1:0:0:0:0)` and `(0:1:0:0:0)`. Those two points
/// then share their image under the quadric map and the line through them is
/// a double cover. Returns the forms and the two points.
pub fn fibre_secant_system(seed: u64) -> (Vec<RationalForm>, Vec<Rational>, Vec<Rational>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let forms = vec![random_quadric(&mut rng, false), random_quadric(&mut rng, true), random_quadric(&mut rng, true)];
    let p = [1, 0, 0, 0, 0].map(int).to_vec();
    let q = [0, 1, 0, 0, 0].map(int).to_vec();
    (with_w_products(forms), p, q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_trials_rejected() {
        let forms = complete_system(2);
        assert_eq!(sample_lines(&forms, &SampleConfig::new(0, 1)), Err(LineError::NoTrials));
        let mut cfg = SampleConfig::new(5, 1);
        cfg.height = 0;
        assert_eq!(sample_lines(&forms, &cfg), Err(LineError::BadHeight));
        cfg.height = 2;
        cfg.subspace = Some(vec![vec![1, 0, 0], vec![2, 0, 0]]);
        assert_eq!(sample_lines(&forms, &cfg), Err(LineError::SubspaceTooSmall));
        cfg.subspace = Some(vec![vec![1, 0], vec![0, 1]]);
        assert_eq!(sample_lines(&forms, &cfg), Err(LineError::SubspaceDimension { expected: 3 }));
    }

    #[test]
    fn complete_system_is_always_veronese() {
        let forms = complete_system(3);
        let hist = sample_lines(&forms, &SampleConfig::new(300, 11)).unwrap();
        assert_eq!(hist.count(LineCase::VeroneseEmbedding), 300);
        assert_eq!(hist.disjoint(), 300);
    }

    #[test]
    fn deterministic_across_worker_counts() {
        let (forms, _, _) = fibre_secant_system(3);
        let mut cfg = SampleConfig::new(200, 99);
        cfg.height = 1;
        let one = sample_lines(&forms, &cfg).unwrap();
        cfg.workers = 4;
        let four = sample_lines(&forms, &cfg).unwrap();
        assert_eq!(one, four);
        assert_eq!(one.trials, 200);
    }

    #[test]
    fn fibre_secant_line_is_a_double_cover() {
        for seed in 0..20 {
            let (forms, p, q) = fibre_secant_system(seed);
            assert_eq!(classify_line(&forms, &p, &q).unwrap(), LineCase::DoubleCover, "seed {seed}");
        }
    }

    #[test]
    fn remw_double_covers_inside_the_hyperplane() {
        for seed in 0..3 {
            let forms = remw_system(seed);
            let mut cfg = SampleConfig::new(2000, seed);
            cfg.height = 1;
            cfg.subspace = Some(remw_hyperplane());
            let inside = sample_lines(&forms, &cfg).unwrap();
            assert!(inside.count(LineCase::DoubleCover) >= 10, "seed {seed}: {:?}", inside.counts);
            // Off the hyperplane the products w x, ..., w u already span two
            // dimensions with a common factor, so a double cover is impossible.
            let mut cfg = SampleConfig::new(2000, seed);
            cfg.height = 3;
            assert!(!sample_lines(&forms, &cfg).unwrap().found_double_cover());
        }
    }

    #[test]
    fn empty_system_contains_every_line() {
        let hist = sample_lines::<Rational>(&[], &SampleConfig::new(4, 0)).unwrap();
        assert_eq!(hist.count(LineCase::ContainedInX), 4);
    }
}
