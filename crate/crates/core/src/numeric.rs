//! Small numeric helpers shared across modules.

use num_bigint::{BigInt, BigUint, Sign};
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// Natural log of a positive big integer from its bit length and top 64 bits.
///
/// Relative accuracy is limited only by the f64 conversion of the top limb
/// (about 1e-16), independent of the size of `x`. Returns `-inf` for zero.
pub fn ln_biguint(x: &BigUint) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = x.bits();
    if bits <= 64 {
        return (x.to_u64().unwrap() as f64).ln();
    }
    let shift = bits - 64;
    let top = (x >> shift).to_u64().unwrap();
    (top as f64).ln() + shift as f64 * std::f64::consts::LN_2
}

/// Natural log of a positive rational; `None` when it is not positive.
pub fn ln_rational(x: &BigRational) -> Option<f64> {
    if x.numer().sign() != Sign::Plus || x.denom().sign() != Sign::Plus {
        return None;
    }
    Some(ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude()))
}

pub fn rational_to_f64(x: &BigRational) -> f64 {
    x.to_f64().unwrap_or_else(|| {
        let l = ln_biguint(x.numer().magnitude()) - ln_biguint(x.denom().magnitude());
        let sign = if x.numer().sign() == Sign::Minus { -1.0 } else { 1.0 };
        sign * l.exp()
    })
}

/// Exact rational value of a finite double.
pub fn f64_to_rational(x: f64) -> Option<BigRational> {
    BigRational::from_float(x)
}

pub fn int(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn dot_i64(a: &[i64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(&x, y)| x as f64 * y).sum()
}

pub fn norm(v: &[f64]) -> f64 {
    dot(v, v).sqrt()
}
