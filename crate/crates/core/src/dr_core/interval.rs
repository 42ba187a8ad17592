use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{abs_diff, DrError, DrResult, DrSystem};

/// `X = [0, 1)`, `σ(x) = 2x` on `Dom(σ^n) = [0, 1/2^n)`, `d(x, y) = |x - y|`.
#[derive(Debug, Clone, Copy, Default)]
pub struct IntervalDoubling;

impl IntervalDoubling {
    pub fn point(&self, n: i64, d: i64) -> DrResult<BigRational> {
        let q = BigRational::new(BigInt::from(n), BigInt::from(d));
        self.check(&q)?;
        Ok(q)
    }

    fn check(&self, x: &BigRational) -> DrResult<()> {
        if x.is_negative() || *x >= BigRational::one() {
            return Err(DrError::InvalidPoint(format!("{x} is outside [0, 1)")));
        }
        Ok(())
    }

    /// `x ∈ Dom(σ^i)`.
    pub fn in_domain(&self, x: &BigRational, i: usize) -> bool {
        x * BigRational::from_integer(BigInt::one() << i) < BigRational::one()
    }
}

impl DrSystem for IntervalDoubling {
    type Point = BigRational;

    fn domain_horizon(&self, x: &BigRational, n: usize) -> DrResult<usize> {
        self.check(x)?;
        let mut i = 0;
        while i + 1 < n && self.in_domain(x, i + 1) {
            i += 1;
        }
        Ok(i)
    }

    fn shift(&self, x: &BigRational) -> DrResult<BigRational> {
        self.check(x)?;
        if !self.in_domain(x, 1) {
            return Err(DrError::OutsideDomain);
        }
        Ok(x * BigRational::from_integer(BigInt::from(2)))
    }

    fn base_distance(&self, x: &BigRational, y: &BigRational) -> DrResult<BigRational> {
        Ok(abs_diff(x, y))
    }

    fn neighborhood(&self, x: &BigRational, radius: &BigRational) -> Vec<BigRational> {
        let mut out = Vec::new();
        for j in 1..4 {
            let step = radius * BigRational::new(BigInt::from(j), BigInt::from(4));
            let lo = x - &step;
            if !lo.is_negative() {
                out.push(lo);
            }
            let hi = x + &step;
            if hi < BigRational::one() {
                out.push(hi);
            }
        }
        out.push(BigRational::zero());
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dr_core::*;
    use crate::numeric::{dyadic, rational};

    #[test]
    fn counterexample_distances() {
        let s = IntervalDoubling;
        let zero = s.point(0, 1).unwrap();
        let quarter = s.point(1, 4).unwrap();
        let p = s.point(6, 25).unwrap();
        assert_eq!(iterate_distance(&s, &zero, &p, 3).unwrap(), rational(24, 25));
        let a = iterate_distance(&s, &zero, &quarter, 3).unwrap();
        let b = iterate_distance(&s, &quarter, &p, 3).unwrap();
        assert_eq!(a, rational(1, 2));
        assert_eq!(b, rational(1, 50));
        assert_eq!(a + b, rational(13, 25));
        assert!(!triangle_holds(&s, &zero, &quarter, &p, 3).unwrap());
    }

    #[test]
    fn index_sets() {
        let s = IntervalDoubling;
        let quarter = s.point(1, 4).unwrap();
        assert_eq!(index_set(&s, &quarter, 3).unwrap(), vec![0, 1]);
        for n in 2..10 {
            assert_eq!(index_set(&s, &quarter, n).unwrap(), vec![0, 1]);
        }
        assert_eq!(index_set(&s, &s.point(0, 1).unwrap(), 5).unwrap(), vec![0, 1, 2, 3, 4]);
        assert_eq!(index_set(&s, &quarter, 1).unwrap(), vec![0]);
    }

    #[test]
    fn balls() {
        let s = IntervalDoubling;
        let zero = s.point(0, 1).unwrap();
        let p = s.point(6, 25).unwrap();
        assert!(!in_dynamical_ball(&s, &zero, &p, 3, &rational(24, 25)).unwrap());
        assert!(in_dynamical_ball(&s, &zero, &p, 1, &rational(1, 2)).unwrap());
        assert!(in_dynamical_ball(&s, &p, &p, 4, &rational(1, 1000)).unwrap());
    }

    #[test]
    fn shift_outside_domain() {
        let s = IntervalDoubling;
        assert_eq!(s.shift(&s.point(1, 2).unwrap()), Err(DrError::OutsideDomain));
        assert!(s.point(1, 1).is_err());
    }

    #[test]
    fn density_samples() {
        let s = IntervalDoubling;
        let zero = s.point(0, 1).unwrap();
        let r = check_density_sampled(&s, &[zero], 6, 12).unwrap();
        assert!(r.entries.iter().all(|e| e.outcome == DensityOutcome::Pass));

        // just below the boundary of Dom(σ^3): x itself is a witness
        let below = dyadic(3) - dyadic(23);
        let r = check_density_sampled(&s, &[below], 3, 12).unwrap();
        assert_eq!(r.entries[2].outcome, DensityOutcome::Pass);

        // x in [1/8, 1/4): full I_3 but small balls miss Dom(σ^3)
        let x = rational(3, 16);
        let r = check_density_sampled(&s, &[x], 3, 12).unwrap();
        assert!(matches!(r.entries[2].outcome, DensityOutcome::Inconclusive { .. }));
        assert!(!r.all_pass_or_na());
    }
}
