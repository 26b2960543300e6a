use std::collections::BTreeMap;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::ToPrimitive;

use super::base::{BaseDomain, Coeff};
use super::ff::{FieldDesc, FieldElem};
use super::poly::Polynomial;
use super::vars::Var;
use crate::error::{Error, Result};

/// Residue of an integer modulo `p`.
pub(crate) fn reduce_mod(n: &BigInt, p: u64) -> u64 {
    n.mod_floor(&BigInt::from(p))
        .to_u64()
        .expect("residue fits")
}

/// Image of a base coefficient in `F_p`, as a residue in `0..p`.
///
/// Fails when a rational's denominator vanishes mod `p`, or when a prime
/// field base does not match the characteristic.
pub(crate) fn coeff_residue(c: &Coeff, base: &BaseDomain, p: u64) -> Result<u64> {
    if let BaseDomain::PrimeField(q) = base {
        if *q != p {
            return Err(Error::usage(format!(
                "base F_{q} does not map into a field of characteristic {p}"
            )));
        }
    }
    let num = reduce_mod(c.numer(), p);
    let den = reduce_mod(c.denom(), p);
    if den == 0 {
        return Err(Error::Eval(format!(
            "denominator of {c} vanishes modulo {p}"
        )));
    }
    let inv = super::base::mod_inverse(&BigInt::from(den), p).expect("nonzero residue");
    Ok(reduce_mod(&(BigInt::from(num) * inv), p))
}

/// The ring homomorphism `base[vars] -> F` determined by `assignment`.
pub fn evaluate(
    f: &Polynomial,
    field: &Arc<FieldDesc>,
    assignment: &BTreeMap<Var, FieldElem>,
) -> Result<FieldElem> {
    let base = f.ring().base();
    let p = field.characteristic();
    let mut acc = field.zero();
    for (m, c) in f.terms() {
        let mut term = field.from_u64(coeff_residue(c, base, p)?);
        for (i, &e) in m.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            let v = assignment.get(&Var(i)).ok_or_else(|| {
                Error::usage(format!("no value for variable `{}`", f.ring().name(Var(i))))
            })?;
            if v.field() != field {
                return Err(Error::usage("assignment mixes fields"));
            }
            term = term.mul(&v.pow(e as u128));
        }
        acc = acc.add(&term);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{ff_extension, Ring, VarTable};
    use num_rational::BigRational;

    #[test]
    fn evaluation_examples() {
        let r = Ring::new(BaseDomain::Integers, VarTable::params(["x"]).unwrap());
        let x = r.var_poly(Var(0));
        let f = &(&x * &x) + &r.one();

        let f5 = ff_extension(5, 1).unwrap();
        let pt = BTreeMap::from([(Var(0), f5.from_u64(2))]);
        assert!(evaluate(&f, &f5, &pt).unwrap().is_zero());

        let f7 = ff_extension(7, 1).unwrap();
        assert!(evaluate(&r.int(7), &f7, &BTreeMap::new())
            .unwrap()
            .is_zero());

        // alpha^2 = alpha + 1 in F_4, so alpha^2 + 1 = alpha.
        let f4 = ff_extension(2, 2).unwrap();
        let alpha = f4.generator();
        let pt = BTreeMap::from([(Var(0), alpha.clone())]);
        assert_eq!(evaluate(&f, &f4, &pt).unwrap(), alpha);
    }

    #[test]
    fn evaluation_errors() {
        let q = Ring::new(BaseDomain::Rationals, VarTable::params(["x"]).unwrap());
        let half = q.constant(BigRational::new(1.into(), 2.into()));
        let f2 = ff_extension(2, 1).unwrap();
        let f3 = ff_extension(3, 1).unwrap();
        assert!(matches!(
            evaluate(&half, &f2, &BTreeMap::new()),
            Err(Error::Eval(_))
        ));
        assert_eq!(
            evaluate(&half, &f3, &BTreeMap::new()).unwrap(),
            f3.from_u64(2)
        );

        let fp = Ring::new(BaseDomain::PrimeField(5), VarTable::params(["x"]).unwrap());
        assert!(matches!(
            evaluate(&fp.one(), &f3, &BTreeMap::new()),
            Err(Error::Usage(_))
        ));
        let x = q.var_poly(Var(0));
        assert!(matches!(
            evaluate(&x, &f3, &BTreeMap::new()),
            Err(Error::Usage(_))
        ));
    }
}
