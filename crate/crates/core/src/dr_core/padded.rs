use num_rational::BigRational;
use num_traits::Zero;

use super::{DrError, DrResult, DrSystem};
use crate::numeric::dyadic;

/// A one-sided binary sequence: a finite prefix followed either by a repeated
/// block or by nothing known (a truncation).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryPoint {
    prefix: Vec<u8>,
    period: Option<Vec<u8>>,
}

impl BinaryPoint {
    /// `prefix` followed by `period` repeated forever.
    pub fn eventually_periodic(prefix: &str, period: &str) -> DrResult<Self> {
        let period = parse_bits(period)?;
        if period.is_empty() {
            return Err(DrError::InvalidPoint("empty period".into()));
        }
        Ok(Self { prefix: parse_bits(prefix)?, period: Some(period) })
    }

    /// Only the first `word.len()` symbols are known.
    pub fn truncated(word: &str) -> DrResult<Self> {
        Ok(Self { prefix: parse_bits(word)?, period: None })
    }

    pub fn symbol(&self, i: usize) -> DrResult<u8> {
        if i < self.prefix.len() {
            return Ok(self.prefix[i]);
        }
        match &self.period {
            Some(p) => Ok(p[(i - self.prefix.len()) % p.len()]),
            None => Err(DrError::InsufficientDepth { needed: i + 1, available: self.prefix.len() }),
        }
    }

    fn drop_front(&self, k: usize) -> DrResult<Self> {
        if k <= self.prefix.len() {
            return Ok(Self { prefix: self.prefix[k..].to_vec(), period: self.period.clone() });
        }
        match &self.period {
            Some(p) => {
                let r = (k - self.prefix.len()) % p.len();
                let mut rotated = p[r..].to_vec();
                rotated.extend_from_slice(&p[..r]);
                Ok(Self { prefix: Vec::new(), period: Some(rotated) })
            }
            None => Err(DrError::InsufficientDepth { needed: k, available: self.prefix.len() }),
        }
    }

    /// Index past which two eventually periodic points can no longer first differ.
    fn decided_len(&self, other: &Self) -> Option<usize> {
        let (p, q) = (self.period.as_ref()?, other.period.as_ref()?);
        let l = lcm(p.len(), q.len());
        Some(self.prefix.len().max(other.prefix.len()) + l)
    }
}

fn parse_bits(s: &str) -> DrResult<Vec<u8>> {
    s.chars()
        .map(|c| match c {
            '0' => Ok(0),
            '1' => Ok(1),
            _ => Err(DrError::InvalidPoint(format!("not a binary digit: {c:?}"))),
        })
        .collect()
}

fn lcm(a: usize, b: usize) -> usize {
    fn gcd(a: usize, b: usize) -> usize {
        if b == 0 { a } else { gcd(b, a % b) }
    }
    a / gcd(a, b) * b
}

/// Binary sequences with `Dom(σ^n) = [0^{3n}]` and `σ^n` dropping `3n`
/// symbols. The base distance is `1/2^i` for the first (0-based) index `i`
/// where the sequences differ.
#[derive(Debug, Clone, Copy, Default)]
pub struct PaddedBinary;

impl PaddedBinary {
    fn in_dom_once(&self, x: &BinaryPoint) -> DrResult<bool> {
        for i in 0..3 {
            if x.symbol(i)? != 0 {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

impl DrSystem for PaddedBinary {
    type Point = BinaryPoint;

    fn domain_horizon(&self, x: &BinaryPoint, n: usize) -> DrResult<usize> {
        let mut i = 0;
        while i + 1 < n {
            let base = 3 * i;
            let mut zero = true;
            for k in base..base + 3 {
                if x.symbol(k)? != 0 {
                    zero = false;
                    break;
                }
            }
            if !zero {
                break;
            }
            i += 1;
        }
        Ok(i)
    }

    fn shift(&self, x: &BinaryPoint) -> DrResult<BinaryPoint> {
        if !self.in_dom_once(x)? {
            return Err(DrError::OutsideDomain);
        }
        x.drop_front(3)
    }

    fn base_distance(&self, x: &BinaryPoint, y: &BinaryPoint) -> DrResult<BigRational> {
        let limit = x.decided_len(y);
        let mut i = 0;
        loop {
            if let Some(l) = limit {
                if i >= l {
                    return Ok(BigRational::zero());
                }
            }
            if x.symbol(i)? != y.symbol(i)? {
                return Ok(dyadic(i as u32));
            }
            i += 1;
        }
    }

    fn neighborhood(&self, x: &BinaryPoint, radius: &BigRational) -> Vec<BinaryPoint> {
        // points agreeing with x on the first j + 1 symbols, then all zeros
        let Some(j) = crate::numeric::dyadic_exponent(radius) else { return Vec::new() };
        let mut word = Vec::new();
        for i in 0..=j as usize {
            match x.symbol(i) {
                Ok(s) => word.push(s),
                Err(_) => return Vec::new(),
            }
        }
        vec![BinaryPoint { prefix: word, period: Some(vec![0]) }]
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dr_core::*;
    use crate::numeric::rational;

    fn pts() -> (BinaryPoint, BinaryPoint, BinaryPoint) {
        (
            BinaryPoint::eventually_periodic("000", "1").unwrap(),
            BinaryPoint::eventually_periodic("0000", "1").unwrap(),
            BinaryPoint::eventually_periodic("00", "1").unwrap(),
        )
    }

    #[test]
    fn padded_binary_distances() {
        let s = PaddedBinary;
        let (x, y, z) = pts();
        assert_eq!(iterate_distance(&s, &x, &y, 2).unwrap(), rational(1, 1));
        assert_eq!(iterate_distance(&s, &x, &z, 2).unwrap(), rational(1, 4));
        assert_eq!(iterate_distance(&s, &z, &y, 2).unwrap(), rational(1, 4));
        assert!(!triangle_holds(&s, &x, &z, &y, 2).unwrap());
    }

    #[test]
    fn domains() {
        let s = PaddedBinary;
        let (x, y, z) = pts();
        assert_eq!(index_set(&s, &x, 4).unwrap(), vec![0, 1]);
        assert_eq!(index_set(&s, &y, 4).unwrap(), vec![0, 1]);
        assert_eq!(index_set(&s, &z, 4).unwrap(), vec![0]);
        let zeros = BinaryPoint::eventually_periodic("", "0").unwrap();
        assert_eq!(s.domain_horizon(&zeros, 9).unwrap(), 8);
        assert_eq!(s.shift(&z), Err(DrError::OutsideDomain));
    }

    #[test]
    fn periodic_equality_is_decided() {
        let s = PaddedBinary;
        let a = BinaryPoint::eventually_periodic("01", "01").unwrap();
        let b = BinaryPoint::eventually_periodic("", "0101").unwrap();
        assert_eq!(s.base_distance(&a, &b).unwrap(), BigRational::zero());
    }

    #[test]
    fn truncation_is_reported() {
        let s = PaddedBinary;
        let a = BinaryPoint::truncated("0000").unwrap();
        let b = BinaryPoint::truncated("0000").unwrap();
        assert!(matches!(s.base_distance(&a, &b), Err(DrError::InsufficientDepth { .. })));
        assert!(matches!(s.domain_horizon(&a, 3), Err(DrError::InsufficientDepth { .. })));
        let c = BinaryPoint::truncated("0001").unwrap();
        assert_eq!(s.base_distance(&a, &c).unwrap(), rational(1, 8));
    }

    #[test]
    fn shift_drops_three() {
        let s = PaddedBinary;
        let (x, _, _) = pts();
        let sx = s.shift(&x).unwrap();
        assert_eq!(sx, BinaryPoint::eventually_periodic("", "1").unwrap());
    }
}
