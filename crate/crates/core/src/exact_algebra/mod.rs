//! Exact scalars: rationals and elements of prime-conductor cyclotomic fields.
//!
//! Character values of every group handled by this crate live in
//! `Q(zeta_p)` for a single odd prime `p`. Elements are kept in the power
//! basis `1, zeta, ..., zeta^(p-2)` and reduced eagerly, so equality is
//! coordinate-wise.

mod cyclotomic;

pub use cyclotomic::Cyc;

use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed};

use crate::error::{Error, Result};

/// Coefficient field for [`Cyc`]. Any exact field with a conversion from
/// machine integers qualifies; the engine itself instantiates it with
/// arbitrary-precision rationals.
pub trait Coeff:
    Clone + Debug + Display + PartialEq + Num + Neg<Output = Self> + FromPrimitive
{
}

impl<T> Coeff for T where
    T: Clone + Debug + Display + PartialEq + Num + Neg<Output = T> + FromPrimitive
{
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn check_conductor(p: u64) -> Result<u32> {
    if p >= 3 && is_prime(p) && p <= u32::MAX as u64 {
        Ok(p as u32)
    } else {
        Err(Error::InvalidConductor(p))
    }
}

/// Returns the rational as an integer, or `None` if it has a denominator.
pub fn as_integer(q: &BigRational) -> Option<BigInt> {
    q.is_integer().then(|| q.to_integer())
}

/// Returns the rational as a non-negative integer, erroring with `what` otherwise.
pub fn non_negative_integer(q: &BigRational, what: &str) -> Result<BigInt> {
    match as_integer(q) {
        Some(n) if !n.is_negative() => Ok(n),
        _ => Err(Error::NonIntegral {
            what: what.to_string(),
            value: q.to_string(),
        }),
    }
}

/// Returns the rational as an integer of any sign, erroring with `what` otherwise.
pub fn integer(q: &BigRational, what: &str) -> Result<BigInt> {
    as_integer(q).ok_or_else(|| Error::NonIntegral {
        what: what.to_string(),
        value: q.to_string(),
    })
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn two<T: Coeff>() -> T {
    T::one() + T::one()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes() {
        let small: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(check_conductor(2).is_err());
        assert!(check_conductor(9).is_err());
        assert_eq!(check_conductor(11).unwrap(), 11);
    }

    #[test]
    fn integrality_helpers() {
        assert_eq!(non_negative_integer(&rat(4), "x").unwrap(), BigInt::from(4));
        assert!(non_negative_integer(&rat(-1), "x").is_err());
        assert!(integer(&rat_frac(1, 2), "x").is_err());
        assert_eq!(integer(&rat(-3), "x").unwrap(), BigInt::from(-3));
    }
}
