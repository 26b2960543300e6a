//! Explicit arithmetic in finite fields `F_{p^k} = F_p[w] / (m(w))`.
//!
//! Elements are reduced polynomials in `w` with coefficients in `0..p`.
//! The modulus is found by exhaustive search, so a given `(p, k)` always
//! yields the same field description.

use std::fmt;
use std::sync::Arc;

use super::base::is_prime;
use crate::error::{Error, Result};

/// Largest extension degree [`ff_extension`] will construct.
pub const MAX_EXTENSION_DEGREE: u32 = 32;

// Dense polynomials over F_p, lowest degree first, no trailing zeros.
type FpPoly = Vec<u64>;

fn trim(mut a: FpPoly) -> FpPoly {
    while a.last() == Some(&0) {
        a.pop();
    }
    a
}

fn mulmod(a: u64, b: u64, p: u64) -> u64 {
    ((a as u128 * b as u128) % p as u128) as u64
}

fn inv_mod(a: u64, p: u64) -> u64 {
    // p is prime: a^(p-2)
    let mut result = 1u64;
    let mut base = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = mulmod(result, base, p);
        }
        base = mulmod(base, base, p);
        e >>= 1;
    }
    result
}

fn poly_add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let n = a.len().max(b.len());
    let out = (0..n)
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(out)
}

fn poly_neg(a: &[u64], p: u64) -> FpPoly {
    a.iter().map(|&c| (p - c) % p).collect()
}

fn poly_sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    poly_add(a, &poly_neg(b, p), p)
}

fn poly_mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + mulmod(x, y, p)) % p;
        }
    }
    trim(out)
}

/// Quotient and remainder; `m` must be nonzero.
fn poly_divrem(a: &[u64], m: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let mut r = a.to_vec();
    if r.len() < m.len() {
        return (Vec::new(), r);
    }
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    let mut q = vec![0u64; r.len() - dm];
    while r.len() > dm {
        let dr = r.len() - 1;
        let c = mulmod(r[dr], lead_inv, p);
        if c != 0 {
            let shift = dr - dm;
            q[shift] = c;
            for (i, &mi) in m.iter().enumerate() {
                r[i + shift] = (r[i + shift] + p - mulmod(c, mi, p)) % p;
            }
        }
        r.pop();
        r = trim(r);
    }
    (trim(q), r)
}

fn poly_rem(a: &[u64], m: &[u64], p: u64) -> FpPoly {
    poly_divrem(a, m, p).1
}

fn poly_gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = poly_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// `base^(p^d)` modulo `m` by repeated p-th powers.
fn frobenius_power(base: &[u64], d: u32, m: &[u64], p: u64) -> FpPoly {
    let mut h = base.to_vec();
    for _ in 0..d {
        h = poly_powmod(&h, p as u128, m, p);
    }
    h
}

fn poly_powmod(a: &[u64], mut e: u128, m: &[u64], p: u64) -> FpPoly {
    let mut result = vec![1u64];
    let mut base = poly_rem(a, m, p);
    while e > 0 {
        if e & 1 == 1 {
            result = poly_rem(&poly_mul(&result, &base, p), m, p);
        }
        e >>= 1;
        if e > 0 {
            base = poly_rem(&poly_mul(&base, &base, p), m, p);
        }
    }
    trim(result)
}

/// A reducible polynomial of degree k has an irreducible factor of degree
/// d <= k/2, and such a factor divides `x^(p^d) - x`.
fn is_irreducible(f: &[u64], p: u64) -> bool {
    let k = f.len() - 1;
    if k == 0 {
        return false;
    }
    let x = vec![0u64, 1];
    for d in 1..=(k / 2) as u32 {
        let h = frobenius_power(&x, d, f, p);
        let g = poly_gcd(f, &poly_sub(&h, &x, p), p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// A finite field `F_p[w]/(modulus)` of order `p^k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldDesc {
    p: u64,
    k: u32,
    modulus: Vec<u64>,
    size: u64,
}

/// Constructs `F_{p^k}` with the first monic irreducible modulus of degree
/// `k`, candidates ordered by their coefficient vectors with the
/// `w^(k-1)` coefficient most significant.
pub fn ff_extension(p: u64, k: u32) -> Result<Arc<FieldDesc>> {
    FieldDesc::new(p, k).map(Arc::new)
}

impl FieldDesc {
    pub fn new(p: u64, k: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not a prime")));
        }
        if k == 0 {
            return Err(Error::usage("extension degree must be at least 1"));
        }
        if k > MAX_EXTENSION_DEGREE {
            return Err(Error::resource(
                "max-extension-degree",
                format!("degree {k} exceeds {MAX_EXTENSION_DEGREE}"),
            ));
        }
        let size = checked_size(p, k)?;
        for n in 0..size {
            let mut modulus = digits(n, p, k as usize);
            modulus.push(1);
            if is_irreducible(&modulus, p) {
                return Ok(FieldDesc {
                    p,
                    k,
                    modulus,
                    size,
                });
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }

    /// A field with an explicitly chosen modulus, verified irreducible.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::usage(format!("{p} is not a prime")));
        }
        let modulus = trim(modulus.into_iter().map(|c| c % p).collect());
        if modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(Error::usage("modulus must be monic of degree at least 1"));
        }
        let k = (modulus.len() - 1) as u32;
        if k > MAX_EXTENSION_DEGREE {
            return Err(Error::resource(
                "max-extension-degree",
                format!("degree {k}"),
            ));
        }
        if !is_irreducible(&modulus, p) {
            return Err(Error::usage("modulus is reducible"));
        }
        let size = checked_size(p, k)?;
        Ok(FieldDesc {
            p,
            k,
            modulus,
            size,
        })
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn degree(&self) -> u32 {
        self.k
    }

    /// Coefficients of the modulus, lowest degree first.
    pub fn modulus(&self) -> &[u64] {
        &self.modulus
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Element with the given base-`p` digit encoding (constant term least significant).
    pub fn element(self: &Arc<Self>, index: u64) -> FieldElem {
        assert!(index < self.size, "element index out of range");
        FieldElem {
            desc: self.clone(),
            rep: trim(digits(index, self.p, self.k as usize)),
        }
    }

    /// All elements in encoding order.
    pub fn elements(self: &Arc<Self>) -> impl Iterator<Item = FieldElem> + '_ {
        (0..self.size).map(move |i| self.element(i))
    }

    pub fn zero(self: &Arc<Self>) -> FieldElem {
        FieldElem {
            desc: self.clone(),
            rep: Vec::new(),
        }
    }

    pub fn one(self: &Arc<Self>) -> FieldElem {
        self.from_u64(1)
    }

    /// Image of an integer in the prime subfield.
    pub fn from_u64(self: &Arc<Self>, n: u64) -> FieldElem {
        FieldElem {
            desc: self.clone(),
            rep: trim(vec![n % self.p]),
        }
    }

    /// The class of `w`.
    pub fn generator(self: &Arc<Self>) -> FieldElem {
        FieldElem {
            desc: self.clone(),
            rep: poly_rem(&[0, 1], &self.modulus, self.p),
        }
    }
}

fn checked_size(p: u64, k: u32) -> Result<u64> {
    p.checked_pow(k)
        .filter(|&s| s <= 1 << 62)
        .ok_or_else(|| Error::resource("field-size", format!("{p}^{k} is too large")))
}

fn digits(mut n: u64, p: u64, k: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(k);
    for _ in 0..k {
        out.push(n % p);
        n /= p;
    }
    out
}

/// An element of a [`FieldDesc`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElem {
    desc: Arc<FieldDesc>,
    rep: Vec<u64>,
}

impl FieldElem {
    pub fn field(&self) -> &Arc<FieldDesc> {
        &self.desc
    }

    /// Coefficients of the representative, lowest degree first, trimmed.
    pub fn rep(&self) -> &[u64] {
        &self.rep
    }

    pub fn index(&self) -> u64 {
        self.rep
            .iter()
            .rev()
            .fold(0, |acc, &c| acc * self.desc.p + c)
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_empty()
    }

    fn same_field(&self, other: &FieldElem) {
        assert!(
            self.desc == other.desc,
            "field mismatch in element arithmetic"
        );
    }

    fn wrap(&self, rep: FpPoly) -> FieldElem {
        FieldElem {
            desc: self.desc.clone(),
            rep,
        }
    }

    pub fn add(&self, other: &FieldElem) -> FieldElem {
        self.same_field(other);
        self.wrap(poly_add(&self.rep, &other.rep, self.desc.p))
    }

    pub fn sub(&self, other: &FieldElem) -> FieldElem {
        self.same_field(other);
        self.wrap(poly_sub(&self.rep, &other.rep, self.desc.p))
    }

    pub fn neg(&self) -> FieldElem {
        self.wrap(trim(poly_neg(&self.rep, self.desc.p)))
    }

    pub fn mul(&self, other: &FieldElem) -> FieldElem {
        self.same_field(other);
        let p = self.desc.p;
        self.wrap(poly_rem(
            &poly_mul(&self.rep, &other.rep, p),
            &self.desc.modulus,
            p,
        ))
    }

    pub fn pow(&self, e: u128) -> FieldElem {
        self.wrap(poly_powmod(&self.rep, e, &self.desc.modulus, self.desc.p))
    }

    /// `e -> e^p`.
    pub fn frobenius(&self) -> FieldElem {
        self.pow(self.desc.p as u128)
    }

    /// Multiplicative inverse via the extended Euclidean algorithm.
    pub fn inverse(&self) -> Option<FieldElem> {
        if self.is_zero() {
            return None;
        }
        let p = self.desc.p;
        let (mut r0, mut r1) = (self.desc.modulus.clone(), self.rep.clone());
        let (mut s0, mut s1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
        while !r1.is_empty() {
            let (q, r) = poly_divrem(&r0, &r1, p);
            let s = poly_sub(&s0, &poly_mul(&q, &s1, p), p);
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        // r0 is a nonzero constant since the modulus is irreducible.
        let c = inv_mod(r0[0], p);
        let inv = poly_rem(&poly_mul(&s0, &[c], p), &self.desc.modulus, p);
        Some(self.wrap(inv))
    }

    /// Image under the embedding `F_{p^d} -> F_{p^k}` (d | k) that sends `w`
    /// to the first root of the source modulus in encoding order.
    pub fn embed(&self, target: &Arc<FieldDesc>) -> Result<FieldElem> {
        let src = &self.desc;
        if src.p != target.p || !target.k.is_multiple_of(src.k) {
            return Err(Error::usage(format!(
                "cannot embed F_{}^{} into F_{}^{}",
                src.p, src.k, target.p, target.k
            )));
        }
        if src.as_ref() == target.as_ref() {
            return Ok(self.clone());
        }
        let root = target
            .elements()
            .find(|e| eval_fp_poly(&src.modulus, e).is_zero())
            .expect("an irreducible of degree d splits in F_{p^k} when d | k");
        Ok(eval_fp_poly(&self.rep, &root))
    }
}

/// Horner evaluation of an F_p polynomial at a field element.
fn eval_fp_poly(coeffs: &[u64], at: &FieldElem) -> FieldElem {
    let field = at.field();
    coeffs
        .iter()
        .rev()
        .fold(field.zero(), |acc, &c| acc.mul(at).add(&field.from_u64(c)))
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.rep.is_empty() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        for (i, &c) in self.rep.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            let w = match i {
                0 => String::new(),
                1 => "w".to_string(),
                _ => format!("w^{i}"),
            };
            parts.push(match (c, w.is_empty()) {
                (_, true) => c.to_string(),
                (1, false) => w,
                (_, false) => format!("{c}*{w}"),
            });
        }
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in F_{}^{}", self, self.desc.p, self.desc.k)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_uses_modulus_x() {
        let f = ff_extension(5, 1).unwrap();
        assert_eq!(f.modulus(), &[0, 1]);
        let elems: Vec<u64> = f.elements().map(|e| e.index()).collect();
        assert_eq!(elems, vec![0, 1, 2, 3, 4]);
        assert!(f.generator().is_zero());
    }

    #[test]
    fn f4_modulus() {
        // x^2, x^2 + 1 = (x+1)^2 and x^2 + x have roots over F_2.
        let f = ff_extension(2, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 1, 1]);
    }

    #[test]
    fn f9_modulus_by_root_search() {
        // Candidates in order x^2, x^2+1, ...; x^2+1 has no root mod 3.
        let f = ff_extension(3, 2).unwrap();
        assert_eq!(f.modulus(), &[1, 0, 1]);
        for e in f.elements() {
            assert_eq!(e.pow(9), e);
        }
        assert_eq!(ff_extension(2, 3).unwrap().modulus(), &[1, 1, 0, 1]);
    }

    #[test]
    fn degree_two_times_three_is_not_irreducible() {
        // (x^2+x+1)(x^3+x+1) over F_2 has no roots but is reducible.
        let f = poly_mul(&[1, 1, 1], &[1, 1, 0, 1], 2);
        assert!(!is_irreducible(&f, 2));
        assert!(FieldDesc::with_modulus(2, f).is_err());
        assert!(FieldDesc::with_modulus(2, vec![1, 1, 0, 1]).is_ok());
    }

    #[test]
    fn errors() {
        assert!(matches!(ff_extension(4, 1), Err(Error::Usage(_))));
        assert!(matches!(ff_extension(2, 0), Err(Error::Usage(_))));
        assert!(matches!(
            ff_extension(2, MAX_EXTENSION_DEGREE + 1),
            Err(Error::Resource { .. })
        ));
    }

    #[test]
    fn inverse_and_embedding() {
        let f4 = ff_extension(2, 2).unwrap();
        let a = f4.generator();
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), f4.one());
        assert!(f4.zero().inverse().is_none());

        let f16 = ff_extension(2, 4).unwrap();
        let ea = a.embed(&f16).unwrap();
        // w^2 + w + 1 = 0 is preserved.
        assert!(ea.mul(&ea).add(&ea).add(&f16.one()).is_zero());
        assert!(a.embed(&ff_extension(2, 3).unwrap()).is_err());
        assert!(a.embed(&ff_extension(3, 2).unwrap()).is_err());
    }
}
