//! Small numeric helpers shared by the pipelines.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Natural logarithm of a big unsigned integer. Returns `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 1000 {
        if let Some(f) = x.to_f64() {
            if f.is_finite() {
                return f.ln();
            }
        }
    }
    // keep the top 64 bits as the mantissa
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().unwrap_or(u64::MAX) as f64;
    top.ln() + shift as f64 * std::f64::consts::LN_2
}

/// `1 / 2^k` as an exact rational.
pub fn dyadic(k: u32) -> BigRational {
    BigRational::new(BigInt::one(), BigInt::one() << k)
}

/// If `q = 1/2^k` for some `k`, returns `k`.
pub fn dyadic_exponent(q: &BigRational) -> Option<u32> {
    if !q.numer().is_one() || q.denom() <= &BigInt::zero() {
        return None;
    }
    let d = q.denom();
    let k = d.bits() - 1;
    if (BigInt::one() << k) == *d {
        Some(k as u32)
    } else {
        None
    }
}

pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn to_f64(q: &BigRational) -> f64 {
    q.to_f64().unwrap_or(f64::NAN)
}

/// Formats with 12 significant digits, fixed notation where reasonable.
pub fn fmt_sig(x: f64) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let mag = x.abs().log10().floor() as i32;
    if !(-6..=15).contains(&mag) {
        return format!("{:.11e}", x);
    }
    let decimals = (11 - mag).max(0) as usize;
    let s = format!("{:.*}", decimals, x);
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Pow;

    #[test]
    fn ln_of_large_powers() {
        let three = BigUint::from(3u32);
        for n in [1u32, 10, 100, 700, 2000] {
            let v = three.clone().pow(n);
            let got = ln_biguint(&v);
            let want = n as f64 * 3f64.ln();
            assert!((got - want).abs() <= 1e-12 * want.max(1.0), "n={n}");
        }
        assert_eq!(ln_biguint(&BigUint::one()), 0.0);
        assert_eq!(ln_biguint(&BigUint::zero()), f64::NEG_INFINITY);
    }

    #[test]
    fn dyadics() {
        assert_eq!(dyadic(3), rational(1, 8));
        assert_eq!(dyadic_exponent(&rational(1, 16)), Some(4));
        assert_eq!(dyadic_exponent(&rational(1, 1)), Some(0));
        assert_eq!(dyadic_exponent(&rational(3, 16)), None);
        assert_eq!(dyadic_exponent(&rational(1, 12)), None);
    }

    #[test]
    fn twelve_digits() {
        assert_eq!(fmt_sig(std::f64::consts::LN_2), "0.69314718056");
        assert_eq!(fmt_sig(1.0986122886681098), "1.09861228867");
        assert_eq!(fmt_sig(0.0), "0");
        assert_eq!(fmt_sig(243.0), "243");
        assert_eq!(fmt_sig(1e20), "1.00000000000e20");
    }
}
