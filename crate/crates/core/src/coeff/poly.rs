//! Sparse multivariate polynomials with exact coefficients.
//!
//! Terms are kept sorted in descending graded-lexicographic order (variable
//! order taken from the [`VarTable`]) with no zero coefficients, so two
//! polynomials are equal exactly when their term lists are.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::base::{BaseDomain, Coeff};
use super::vars::{Var, VarKind, VarTable};
use crate::error::{Error, Result};

/// Exponent vector aligned with the ring's variable table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn exponent(&self, v: Var) -> u32 {
        self.0[v.0]
    }

    pub fn total_degree(&self) -> u32 {
        self.0.iter().sum()
    }

    fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    fn with_exponent(&self, v: Var, e: u32) -> Monomial {
        let mut m = self.0.clone();
        m[v.0] = e;
        Monomial(m)
    }
}

impl Ord for Monomial {
    /// Graded lexicographic: total degree first, then the exponent of the
    /// earliest variable.
    fn cmp(&self, other: &Self) -> Ordering {
        self.total_degree()
            .cmp(&other.total_degree())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

struct RingData {
    base: BaseDomain,
    vars: VarTable,
}

/// A base domain together with a variable table: the polynomial ring
/// `base[vars]`. Cheap to clone.
#[derive(Clone)]
pub struct Ring(Arc<RingData>);

impl Ring {
    pub fn new(base: BaseDomain, vars: VarTable) -> Self {
        Ring(Arc::new(RingData { base, vars }))
    }

    pub fn base(&self) -> &BaseDomain {
        &self.0.base
    }

    pub fn vars(&self) -> &VarTable {
        &self.0.vars
    }

    pub fn nvars(&self) -> usize {
        self.0.vars.len()
    }

    pub fn var(&self, name: &str) -> Option<Var> {
        self.0.vars.lookup(name)
    }

    pub fn name(&self, v: Var) -> &str {
        self.0.vars.name(v)
    }

    /// The ring with additional variables appended.
    pub fn extended<S: Into<String>>(
        &self,
        extra: impl IntoIterator<Item = (S, VarKind)>,
    ) -> Result<Ring> {
        Ok(Ring::new(self.base().clone(), self.vars().extended(extra)?))
    }

    /// Whether polynomials of `self` embed into `other` by padding exponents.
    pub fn embeds_into(&self, other: &Ring) -> bool {
        self.base() == other.base() && self.vars().is_prefix_of(other.vars())
    }

    pub fn zero(&self) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: Vec::new(),
        }
    }

    pub fn one(&self) -> Polynomial {
        self.constant(Coeff::one())
    }

    pub fn constant(&self, c: Coeff) -> Polynomial {
        let c = self.base().normalize(c);
        if c.is_zero() {
            return self.zero();
        }
        Polynomial {
            ring: self.clone(),
            terms: vec![(Monomial::one(self.nvars()), c)],
        }
    }

    pub fn int(&self, n: i64) -> Polynomial {
        self.constant(Coeff::from_integer(BigInt::from(n)))
    }

    pub fn var_poly(&self, v: Var) -> Polynomial {
        self.monomial(v, 1)
    }

    /// `v^e` as a polynomial.
    pub fn monomial(&self, v: Var, e: u32) -> Polynomial {
        Polynomial {
            ring: self.clone(),
            terms: vec![(
                Monomial::one(self.nvars()).with_exponent(v, e),
                Coeff::one(),
            )],
        }
    }

    /// Builds a polynomial from arbitrary (monomial, coefficient) pairs,
    /// combining duplicates and dropping zeros.
    pub fn from_terms(
        &self,
        terms: impl IntoIterator<Item = (Vec<u32>, Coeff)>,
    ) -> Result<Polynomial> {
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (exps, c) in terms {
            if exps.len() != self.nvars() {
                return Err(Error::usage(
                    "exponent vector length does not match the ring",
                ));
            }
            *acc.entry(Monomial(exps)).or_insert_with(Coeff::zero) += c;
        }
        Ok(self.collect(acc))
    }

    fn collect(&self, acc: BTreeMap<Monomial, Coeff>) -> Polynomial {
        let base = self.base();
        let terms = acc
            .into_iter()
            .rev()
            .map(|(m, c)| (m, base.normalize(c)))
            .filter(|(_, c)| !c.is_zero())
            .collect();
        Polynomial {
            ring: self.clone(),
            terms,
        }
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.base() == other.base() && self.vars() == other.vars())
    }
}

impl Eq for Ring {}

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ring({}, {})", self.base(), self.vars())
    }
}

/// A polynomial in canonical sparse form.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    ring: Ring,
    terms: Vec<(Monomial, Coeff)>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
    Neg,
}

/// Checked ring operation. `Neg` ignores `g`.
pub fn poly_arith(op: ArithOp, f: &Polynomial, g: &Polynomial) -> Result<Polynomial> {
    if op != ArithOp::Neg {
        f.check_ring(g)?;
    }
    Ok(match op {
        ArithOp::Add => f + g,
        ArithOp::Sub => f - g,
        ArithOp::Mul => f * g,
        ArithOp::Neg => -f,
    })
}

impl Polynomial {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms in descending graded-lex order.
    pub fn terms(&self) -> &[(Monomial, Coeff)] {
        &self.terms
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value if the polynomial is constant (including zero).
    pub fn constant_value(&self) -> Option<Coeff> {
        match self.terms.as_slice() {
            [] => Some(Coeff::zero()),
            [(m, c)] if m.total_degree() == 0 => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    /// A nonzero constant that vanishes in no field the base maps into.
    pub fn is_unit_constant(&self) -> bool {
        self.constant_value()
            .is_some_and(|c| self.ring.base().is_unit_constant(&c))
    }

    pub fn check_ring(&self, other: &Polynomial) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::usage(format!(
                "polynomials live in different rings: {:?} vs {:?}",
                self.ring, other.ring
            )));
        }
        Ok(())
    }

    fn check_var(&self, x: Var) -> Result<()> {
        if x.0 >= self.ring.nvars() {
            return Err(Error::usage(format!("unknown variable index {}", x.0)));
        }
        Ok(())
    }

    /// Degree in `x`; zero for the zero polynomial.
    pub fn degree_in(&self, x: Var) -> u32 {
        self.terms
            .iter()
            .map(|(m, _)| m.exponent(x))
            .max()
            .unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms
            .first()
            .map(|(m, _)| m.total_degree())
            .unwrap_or(0)
    }

    pub fn contains_var(&self, x: Var) -> bool {
        self.degree_in(x) > 0
    }

    /// Variables that occur with positive exponent, in table order.
    pub fn vars_used(&self) -> Vec<Var> {
        (0..self.ring.nvars())
            .map(Var)
            .filter(|&v| self.contains_var(v))
            .collect()
    }

    /// Leading coefficient in the canonical term order.
    pub fn leading_coeff(&self) -> Option<&Coeff> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn scale(&self, c: &Coeff) -> Polynomial {
        if c.is_zero() {
            return self.ring.zero();
        }
        let base = self.ring.base();
        let terms = self
            .terms
            .iter()
            .map(|(m, a)| (m.clone(), base.normalize(a * c)))
            .filter(|(_, a)| !a.is_zero())
            .collect();
        Polynomial {
            ring: self.ring.clone(),
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut result = self.ring.one();
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients of `x^0 .. x^d`, each free of `x`. The zero polynomial
    /// yields `[0]`.
    pub fn as_univariate(&self, x: Var) -> Result<Vec<Polynomial>> {
        self.check_var(x)?;
        Ok(self.coeffs_in(x))
    }

    pub(crate) fn coeffs_in(&self, x: Var) -> Vec<Polynomial> {
        let d = self.degree_in(x) as usize;
        let mut buckets: Vec<Vec<(Monomial, Coeff)>> = vec![Vec::new(); d + 1];
        for (m, c) in &self.terms {
            let e = m.exponent(x) as usize;
            buckets[e].push((m.with_exponent(x, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|mut terms| {
                // Removing x keeps terms distinct but can reorder them.
                terms.sort_by(|a, b| b.0.cmp(&a.0));
                Polynomial {
                    ring: self.ring.clone(),
                    terms,
                }
            })
            .collect()
    }

    /// `sum_i coeffs[i] * x^i`.
    pub fn from_univariate(coeffs: &[Polynomial], x: Var) -> Result<Polynomial> {
        let Some(first) = coeffs.first() else {
            return Err(Error::usage("empty coefficient list"));
        };
        let ring = first.ring.clone();
        let mut acc = ring.zero();
        for (i, c) in coeffs.iter().enumerate() {
            c.check_ring(first)?;
            acc = &acc + &(c * &ring.monomial(x, i as u32));
        }
        Ok(acc)
    }

    /// Leading coefficient with respect to `x`, as a polynomial free of `x`.
    pub fn leading_coeff_in(&self, x: Var) -> Polynomial {
        self.coeffs_in(x).pop().expect("at least one coefficient")
    }

    /// Replaces the variable `from` by the variable `to`.
    pub fn substitute_var(&self, from: Var, to: Var) -> Polynomial {
        let terms = self.terms.iter().map(|(m, c)| {
            let mut e = m.0.clone();
            let moved = std::mem::take(&mut e[from.0]);
            e[to.0] += moved;
            (e, c.clone())
        });
        self.ring.from_terms(terms).expect("same ring")
    }

    /// Re-expresses the polynomial in a ring whose table extends this one.
    pub fn embed(&self, ring: &Ring) -> Result<Polynomial> {
        if !self.ring.embeds_into(ring) {
            return Err(Error::usage(format!(
                "cannot embed {:?} into {:?}",
                self.ring, ring
            )));
        }
        let n = ring.nvars();
        let terms = self
            .terms
            .iter()
            .map(|(m, c)| {
                let mut e = m.0.clone();
                e.resize(n, 0);
                (Monomial(e), c.clone())
            })
            .collect();
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    /// Inverse of [`embed`](Self::embed): drops trailing variables, which must not occur.
    pub fn restrict(&self, ring: &Ring) -> Result<Polynomial> {
        if !ring.embeds_into(&self.ring) {
            return Err(Error::usage(format!(
                "cannot restrict {:?} to {:?}",
                self.ring, ring
            )));
        }
        let n = ring.nvars();
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            if m.0[n..].iter().any(|&e| e > 0) {
                return Err(Error::usage(
                    "polynomial uses variables outside the target ring",
                ));
            }
            terms.push((Monomial(m.0[..n].to_vec()), c.clone()));
        }
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    /// Canonical associate: the same zero set in every field, with a
    /// normalized leading coefficient (see [`BaseDomain`]).
    pub fn canonical_associate(&self) -> Polynomial {
        if self.is_zero() {
            return self.clone();
        }
        let coeffs: Vec<&Coeff> = self.terms.iter().map(|(_, c)| c).collect();
        let f = self.ring.base().associate_factor(&coeffs);
        if f.is_one() {
            self.clone()
        } else {
            self.scale(&f)
        }
    }

    /// An associate-up-to-radical: the canonical associate with repeated
    /// monomial factors and (over `Z`) repeated prime factors of the content
    /// collapsed. Vanishes at exactly the same points in every field.
    pub fn reduced_associate(&self) -> Polynomial {
        let p = self.canonical_associate();
        if p.is_zero() {
            return p;
        }
        let n = self.ring.nvars();
        let mut low: Vec<u32> = p.terms[0].0 .0.clone();
        for (m, _) in &p.terms[1..] {
            for (l, e) in low.iter_mut().zip(&m.0) {
                *l = (*l).min(*e);
            }
        }
        let shift: Vec<u32> = low.iter().map(|&e| e.saturating_sub(1)).collect();
        let content_factor = match self.ring.base() {
            BaseDomain::Integers => {
                let content = p.terms.iter().fold(BigInt::zero(), |g, (_, c)| {
                    num_integer::Integer::gcd(&g, c.numer())
                });
                let rad = super::base::int_radical(&content);
                (rad != content).then(|| Coeff::new(rad, content))
            }
            _ => None,
        };
        if shift.iter().all(|&e| e == 0) && content_factor.is_none() {
            return p;
        }
        let terms = p.terms.iter().map(|(m, c)| {
            let e: Vec<u32> = (0..n).map(|i| m.0[i] - shift[i]).collect();
            let c = match &content_factor {
                Some(f) => c * f,
                None => c.clone(),
            };
            (e, c)
        });
        self.ring.from_terms(terms).expect("same ring")
    }

    /// `self` with `v` set to zero.
    pub fn substitute_zero(&self, v: Var) -> Polynomial {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.exponent(v) == 0)
                .cloned()
                .collect(),
        }
    }

    /// `self / g` when `g` divides `self` exactly over the base ring.
    pub fn exact_div(&self, g: &Polynomial) -> Option<Polynomial> {
        let (gm, gc) = g.terms.first()?;
        let base = self.ring.base();
        let mut rest = self.clone();
        let mut quot = Vec::new();
        while let Some((m, c)) = rest.terms.first() {
            if m.0.iter().zip(&gm.0).any(|(a, b)| a < b) {
                return None;
            }
            let q = match base {
                BaseDomain::Integers => {
                    let (n, r) = num_integer::Integer::div_rem(c.numer(), gc.numer());
                    if !r.is_zero() {
                        return None;
                    }
                    Coeff::from_integer(n)
                }
                BaseDomain::Rationals => c / gc,
                BaseDomain::PrimeField(p) => {
                    let inv = super::base::mod_inverse(gc.numer(), *p)?;
                    base.normalize(Coeff::from_integer(c.numer() * inv))
                }
            };
            let e = Monomial(m.0.iter().zip(&gm.0).map(|(a, b)| a - b).collect());
            let t = Polynomial {
                ring: self.ring.clone(),
                terms: vec![(e, q)],
            };
            rest = &rest - &(&t * g);
            quot.push(t.terms.into_iter().next().expect("one term"));
        }
        Some(Polynomial {
            ring: self.ring.clone(),
            terms: quot,
        })
    }

    /// Total order used for sorting and tie-breaking: compares term lists
    /// from the leading term down, larger monomials first, then by coefficient.
    pub fn canonical_cmp(&self, other: &Polynomial) -> Ordering {
        for (a, b) in self.terms.iter().zip(&other.terms) {
            let ord = b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1));
            if ord != Ordering::Equal {
                return ord;
            }
        }
        self.terms.len().cmp(&other.terms.len())
    }

    fn merge(&self, other: &Polynomial, negate_other: bool) -> Polynomial {
        debug_assert!(self.ring == other.ring, "ring mismatch");
        let base = self.ring.base();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let ord = match (a.get(i), b.get(j)) {
                (Some(x), Some(y)) => x.0.cmp(&y.0),
                (Some(_), None) => Ordering::Greater,
                (None, Some(_)) => Ordering::Less,
                (None, None) => unreachable!(),
            };
            match ord {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate_other {
                        base.normalize(-&b[j].1)
                    } else {
                        b[j].1.clone()
                    };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate_other {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    let c = base.normalize(c);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: out,
        }
    }
}

impl Add for &Polynomial {
    type Output = Polynomial;

    /// Panics on ring mismatch; use [`poly_arith`] for a checked version.
    fn add(self, rhs: &Polynomial) -> Polynomial {
        assert!(
            self.ring == rhs.ring,
            "ring mismatch in polynomial addition"
        );
        self.merge(rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        assert!(
            self.ring == rhs.ring,
            "ring mismatch in polynomial subtraction"
        );
        self.merge(rhs, true)
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert!(
            self.ring == rhs.ring,
            "ring mismatch in polynomial multiplication"
        );
        if self.is_zero() || rhs.is_zero() {
            return self.ring.zero();
        }
        let mut acc: BTreeMap<Monomial, Coeff> = BTreeMap::new();
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Coeff::zero) += ca * cb;
            }
        }
        self.ring.collect(acc)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        self.scale(&-Coeff::one())
    }
}

impl Add for Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: Polynomial) -> Polynomial {
        &self + &rhs
    }
}

impl Sub for Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: Polynomial) -> Polynomial {
        &self - &rhs
    }
}

impl Mul for Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: Polynomial) -> Polynomial {
        &self * &rhs
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

/// Result of pseudo-division: `lc^delta * f = quotient * g + remainder`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoDivision {
    pub quotient: Polynomial,
    pub remainder: Polynomial,
    pub delta: u32,
}

fn trim(v: &mut Vec<Polynomial>) {
    while v.len() > 1 && v.last().is_some_and(Polynomial::is_zero) {
        v.pop();
    }
}

fn udeg(v: &[Polynomial]) -> Option<usize> {
    match v {
        [c] if c.is_zero() => None,
        _ => Some(v.len() - 1),
    }
}

/// Pseudo-division of `f` by `g` in `x` using ring operations only.
///
/// The multiplier is exactly `lc_x(g)^delta` with
/// `delta = max(deg_x f - deg_x g + 1, 0)`.
pub fn pseudo_divide(f: &Polynomial, g: &Polynomial, x: Var) -> Result<PseudoDivision> {
    f.check_ring(g)?;
    f.check_var(x)?;
    let dg = g.degree_in(x) as usize;
    if dg == 0 {
        return Err(Error::usage(
            "pseudo-division by a polynomial of degree 0 in the variable",
        ));
    }
    let ring = f.ring.clone();
    let gc = g.coeffs_in(x);
    let lc = &gc[dg];
    let mut r = f.coeffs_in(x);
    let delta = match udeg(&r) {
        Some(df) if df >= dg => (df - dg + 1) as u32,
        _ => 0,
    };
    let mut q: Vec<Polynomial> = vec![ring.zero(); (delta as usize).max(1)];
    let mut steps = 0u32;
    while let Some(dr) = udeg(&r) {
        if dr < dg {
            break;
        }
        let e = dr - dg;
        let lr = r[dr].clone();
        for c in r.iter_mut() {
            *c = &*c * lc;
        }
        for (i, gi) in gc.iter().enumerate() {
            r[i + e] = &r[i + e] - &(&lr * gi);
        }
        for c in q.iter_mut() {
            *c = &*c * lc;
        }
        q[e] = &q[e] + &lr;
        debug_assert!(r[dr].is_zero());
        trim(&mut r);
        steps += 1;
    }
    let mut remainder = Polynomial::from_univariate(&r, x)?;
    let mut quotient = Polynomial::from_univariate(&q, x)?;
    if delta > steps {
        let factor = lc.pow(delta - steps);
        remainder = &remainder * &factor;
        quotient = &quotient * &factor;
    }
    Ok(PseudoDivision {
        quotient,
        remainder,
        delta,
    })
}

pub fn pseudo_remainder(f: &Polynomial, g: &Polynomial, x: Var) -> Result<Polynomial> {
    f.check_ring(g)?;
    f.check_var(x)?;
    let dg = g.degree_in(x) as usize;
    if dg == 0 {
        return Err(Error::usage(
            "pseudo-division by a polynomial of degree 0 in the variable",
        ));
    }
    let gc = g.coeffs_in(x);
    let lc = &gc[dg];
    let mut r = f.coeffs_in(x);
    let delta = match udeg(&r) {
        Some(df) if df >= dg => (df - dg + 1) as u32,
        _ => 0,
    };
    let mut steps = 0u32;
    while let Some(dr) = udeg(&r) {
        if dr < dg {
            break;
        }
        let e = dr - dg;
        let lr = r.pop().expect("nonempty");
        for c in r.iter_mut() {
            if !c.is_zero() {
                *c = &*c * lc;
            }
        }
        for (i, gi) in gc[..dg].iter().enumerate() {
            if !gi.is_zero() {
                r[i + e] = &r[i + e] - &(&lr * gi);
            }
        }
        trim(&mut r);
        steps += 1;
    }
    let mut remainder = Polynomial::from_univariate(&r, x)?;
    if delta > steps {
        remainder = &remainder * &lc.pow(delta - steps);
    }
    Ok(remainder)
}

fn fmt_monomial(m: &Monomial, ring: &Ring) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(ring.name(Var(i)).to_string()),
            _ => parts.push(format!("{}^{}", ring.name(Var(i)), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if i == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = fmt_monomial(m, &self.ring);
            if mono.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{abs}*{mono}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}
