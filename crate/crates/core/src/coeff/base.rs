use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Coefficients are stored as reduced rationals for every base domain.
/// Over `Integers` the denominator is always one, over `PrimeField(p)` the
/// numerator lies in `0..p`.
pub type Coeff = BigRational;

/// The computable ring the named constants of the language are drawn from.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BaseDomain {
    Integers,
    Rationals,
    PrimeField(u64),
}

/// Trial division.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

impl BaseDomain {
    pub fn prime_field(p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not a prime")));
        }
        Ok(BaseDomain::PrimeField(p))
    }

    pub fn characteristic(&self) -> Option<u64> {
        match self {
            BaseDomain::PrimeField(p) => Some(*p),
            _ => None,
        }
    }

    /// Brings an exact rational into the canonical form for this domain.
    pub(crate) fn normalize(&self, c: Coeff) -> Coeff {
        match self {
            BaseDomain::PrimeField(p) => {
                let p = BigInt::from(*p);
                let num = c.numer().mod_floor(&p);
                let den = c.denom().mod_floor(&p);
                // Denominators only arise from integer literals here, so they are 1.
                debug_assert!(den.is_one());
                BigRational::from_integer(num)
            }
            _ => c,
        }
    }

    /// A nonzero constant that cannot vanish in any field the base maps into.
    ///
    /// Over the integers only the units qualify: `2` vanishes in
    /// characteristic two, so `2 = 0` has to stay a genuine atom.
    pub fn is_unit_constant(&self, c: &Coeff) -> bool {
        match self {
            BaseDomain::Integers => c.abs().is_one(),
            _ => !c.is_zero(),
        }
    }

    /// Scaling that turns a leading coefficient into its canonical associate.
    ///
    /// `Integers`: sign only. `Rationals`: clears denominators and content so the
    /// result is a primitive integer polynomial with positive leading coefficient.
    /// `PrimeField`: makes the polynomial monic.
    pub(crate) fn associate_factor(&self, coeffs: &[&Coeff]) -> Coeff {
        let lead = coeffs[0];
        match self {
            BaseDomain::Integers => {
                if lead.is_negative() {
                    -Coeff::one()
                } else {
                    Coeff::one()
                }
            }
            BaseDomain::Rationals => {
                let mut den = BigInt::one();
                for c in coeffs {
                    den = den.lcm(c.denom());
                }
                let mut content = BigInt::zero();
                for c in coeffs {
                    let n = c.numer() * (&den / c.denom());
                    content = content.gcd(&n);
                }
                let mut f = BigRational::new(den, content);
                if lead.is_negative() {
                    f = -f;
                }
                f
            }
            BaseDomain::PrimeField(p) => {
                let inv = mod_inverse(lead.numer(), *p).expect("nonzero in a prime field");
                BigRational::from_integer(inv)
            }
        }
    }
}

/// Product of the distinct prime factors of `|n|` found by trial division,
/// times whatever cofactor is left unfactored. Has the same prime divisors
/// as `n`.
pub(crate) fn int_radical(n: &BigInt) -> BigInt {
    let mut rest = n.abs();
    if rest.is_zero() {
        return rest;
    }
    let mut rad = BigInt::one();
    let mut d = BigInt::from(2u32);
    let bound = BigInt::from(1000u32);
    while d <= bound && &d * &d <= rest {
        if (&rest % &d).is_zero() {
            rad *= &d;
            while (&rest % &d).is_zero() {
                rest /= &d;
            }
        }
        d += 1u32;
    }
    rad * rest
}

pub(crate) fn mod_inverse(a: &BigInt, p: u64) -> Option<BigInt> {
    let p = BigInt::from(p);
    let a = a.mod_floor(&p);
    if a.is_zero() {
        return None;
    }
    let e = a.extended_gcd(&p);
    Some(e.x.mod_floor(&p))
}

impl fmt::Display for BaseDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseDomain::Integers => write!(f, "z"),
            BaseDomain::Rationals => write!(f, "q"),
            BaseDomain::PrimeField(p) => write!(f, "fp {p}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality_by_trial_division() {
        let primes: Vec<u64> = (0..30).filter(|&n| is_prime(n)).collect();
        assert_eq!(primes, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(BaseDomain::prime_field(4).is_err());
        assert!(BaseDomain::prime_field(1).is_err());
        assert_eq!(
            BaseDomain::prime_field(7).unwrap(),
            BaseDomain::PrimeField(7)
        );
    }

    #[test]
    fn unit_constants_depend_on_base() {
        let two = Coeff::from_integer(2.into());
        assert!(!BaseDomain::Integers.is_unit_constant(&two));
        assert!(BaseDomain::Integers.is_unit_constant(&-Coeff::one()));
        assert!(BaseDomain::Rationals.is_unit_constant(&two));
        assert!(!BaseDomain::Rationals.is_unit_constant(&Coeff::zero()));
    }

    #[test]
    fn prime_field_reduction() {
        let b = BaseDomain::PrimeField(5);
        assert_eq!(
            b.normalize(Coeff::from_integer((-1).into())),
            Coeff::from_integer(4.into())
        );
        assert_eq!(
            b.normalize(Coeff::from_integer(12.into())),
            Coeff::from_integer(2.into())
        );
    }
}
