//! Seeded random rational points for exact identity testing.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::rational::Rational;
use crate::error::{Error, Result};

/// Numerators and denominators are drawn from `1..=MAX_PART`.
pub const MAX_PART: i64 = 1000;

const RETRY_BUDGET: usize = 10_000;

/// Deterministic source of random rationals.
pub struct Sampler {
    rng: ChaCha8Rng,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
        }
    }

    /// A random nonzero rational with `|p|, q ≤ MAX_PART`.
    pub fn rational(&mut self) -> Rational {
        let p = self.rng.gen_range(1..=MAX_PART);
        let q = self.rng.gen_range(1..=MAX_PART);
        let sign = if self.rng.gen_bool(0.5) { 1 } else { -1 };
        Rational::new(sign * p, q)
    }

    /// A uniform integer in `lo..=hi`.
    pub fn integer(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }

    /// A random rational avoiding the listed values.
    pub fn rational_avoiding(&mut self, avoid: &[Rational]) -> Result<Rational> {
        for _ in 0..RETRY_BUDGET {
            let r = self.rational();
            if !avoid.contains(&r) {
                return Ok(r);
            }
        }
        Err(Error::Sampling(format!(
            "could not avoid {} excluded values",
            avoid.len()
        )))
    }

    /// `count` points; each is nonzero, not ±1, distinct from the earlier
    /// ones, and accepted by `accept(previous, candidate)`.
    pub fn points(
        &mut self,
        count: usize,
        accept: &dyn Fn(&[Rational], &Rational) -> bool,
    ) -> Result<Vec<Rational>> {
        let mut out: Vec<Rational> = Vec::with_capacity(count);
        let one = Rational::from(1);
        let minus_one = Rational::from(-1);
        for idx in 0..count {
            let mut found = None;
            for _ in 0..RETRY_BUDGET {
                let c = self.rational();
                if c == one || c == minus_one || out.contains(&c) || !accept(&out, &c) {
                    continue;
                }
                found = Some(c);
                break;
            }
            match found {
                Some(c) => out.push(c),
                None => {
                    return Err(Error::Sampling(format!(
                        "constraint unsatisfied for point {idx} of {count} after {RETRY_BUDGET} draws"
                    )))
                }
            }
        }
        Ok(out)
    }
}

/// `count` seeded points satisfying `accept` (see [`Sampler::points`]).
pub fn sample_points(
    count: usize,
    seed: u64,
    accept: &dyn Fn(&[Rational], &Rational) -> bool,
) -> Result<Vec<Rational>> {
    if count == 0 {
        return Err(Error::InvalidInput("sample_points needs count >= 1".into()));
    }
    Sampler::new(seed).points(count, accept)
}

/// Accepts any candidate (distinct, nonzero, not ±1 is always enforced).
pub fn any_point(_: &[Rational], _: &Rational) -> bool {
    true
}

/// Generic position for the spectral-parameter formulas: `|x_i|` pairwise
/// distinct and `x_i x_j ≠ ±1`, so every `x_i ± x_j` and `1 ± x_i x_j`
/// factor is nonzero.
pub fn generic_position(prev: &[Rational], c: &Rational) -> bool {
    let ac = c.abs();
    prev.iter().all(|p| {
        let ap = p.abs();
        ap != ac && (&ap * &ac) != Rational::from(1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_for_fixed_seed() {
        let a = sample_points(4, 7, &generic_position).unwrap();
        let b = sample_points(4, 7, &generic_position).unwrap();
        assert_eq!(a, b);
        let c = sample_points(4, 8, &generic_position).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn two_distinct_nonzero() {
        let v = sample_points(2, 1, &any_point).unwrap();
        assert_eq!(v.len(), 2);
        assert_ne!(v[0], v[1]);
        assert!(v.iter().all(|x| *x != 0 && *x != 1 && *x != -1));
    }

    #[test]
    fn reciprocal_free_pairs() {
        let v = sample_points(4, 7, &|prev: &[Rational], c: &Rational| {
            prev.iter().all(|p| p * c != Rational::from(1))
        })
        .unwrap();
        for i in 0..4 {
            for j in 0..4 {
                if i != j {
                    assert_ne!(&v[i] * &v[j], Rational::from(1));
                }
            }
        }
    }

    #[test]
    fn unsatisfiable_predicate_fails() {
        let err = sample_points(1, 0, &|_: &[Rational], _: &Rational| false).unwrap_err();
        assert!(matches!(err, Error::Sampling(_)));
        assert!(sample_points(0, 0, &any_point).is_err());
    }
}
