//! Quantifier elimination over algebraically closed fields.
//!
//! A single existential `exists x. (AND eqs = 0) & ineq != 0` is eliminated
//! by case splitting on leading coefficients and pseudo-division in `x`
//! ([`eliminate_one`]). Arbitrary formulas are prenexed and eliminated
//! innermost quantifier first, with `forall x` handled as `!exists x !`
//! ([`eliminate_all`]). Coefficients are only ever added, subtracted and
//! multiplied, so results are valid in every characteristic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::coeff::{int_radical, pseudo_remainder, BaseDomain, Coeff, Polynomial, Ring, Var};
use crate::error::Result;
use crate::formula::{to_canonical_dnf_with, to_prenex, CanonicalDnf, Formula, Piece, Quantifier};
use crate::limits::Limits;

/// A constraint system `AND eqs = 0 & ineq != 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conjunct {
    pub eqs: Vec<Polynomial>,
    pub ineq: Polynomial,
}

impl Conjunct {
    pub fn from_piece(piece: &Piece) -> Self {
        Conjunct {
            eqs: piece.closed.clone(),
            ineq: piece.open.clone(),
        }
    }

    pub fn to_formula(&self) -> Formula {
        Formula::and(
            self.eqs
                .iter()
                .map(|e| Formula::atom(e.clone()))
                .chain([Formula::nonzero(self.ineq.clone())]),
        )
    }
}

/// A quantifier-free formula without `x`, equivalent to `exists x. c` in
/// every algebraically closed field.
pub fn eliminate_one(x: Var, c: &Conjunct) -> Result<Formula> {
    eliminate_one_with(x, c, &Limits::default())
}

pub fn eliminate_one_with(x: Var, c: &Conjunct, limits: &Limits) -> Result<Formula> {
    Eliminator { x, limits }.run(c.eqs.clone(), c.ineq.clone(), Branch::default())
}

struct Eliminator<'a> {
    x: Var,
    limits: &'a Limits,
}

/// What the current branch already assumes. Over `Z` an integer constant
/// can vanish (in characteristic dividing it), so the branch also records
/// which constants were assumed zero or nonzero.
#[derive(Clone)]
struct Branch {
    /// non-constant factors assumed nonzero (reduced associates)
    nonzero: Vec<Polynomial>,
    /// variables assumed zero
    zero_vars: Vec<Var>,
    /// polynomials assumed zero, each with a variable in which its leading
    /// coefficient is known to be nonzero
    zero_polys: Vec<(Polynomial, Var)>,
    /// the characteristic divides this (squarefree) integer
    char_divides: Option<BigInt>,
    /// the characteristic divides none of the prime factors of this
    char_avoids: BigInt,
}

impl Default for Branch {
    fn default() -> Self {
        Branch {
            nonzero: Vec::new(),
            zero_vars: Vec::new(),
            zero_polys: Vec::new(),
            char_divides: None,
            char_avoids: BigInt::one(),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Status {
    Zero,
    Nonzero,
    Unknown,
}

impl Branch {
    fn status(&self, p: &Polynomial) -> Status {
        let p = self.reduce(p.clone());
        if p.is_zero() {
            return Status::Zero;
        }
        if p.is_unit_constant() {
            return Status::Nonzero;
        }
        let Some(c) = p.constant_value() else {
            return Status::Unknown;
        };
        let n = c.numer();
        if let Some(g) = &self.char_divides {
            if (n % g).is_zero() {
                return Status::Zero;
            }
            if n.gcd(g).is_one() {
                return Status::Nonzero;
            }
        }
        if divides_some_power(n, &self.char_avoids) {
            Status::Nonzero
        } else {
            Status::Unknown
        }
    }

    /// Records `p = 0`. Returns an integer constant whose vanishing is
    /// unknown and blocks using `p` for reductions; splitting on it first
    /// gives a better branch.
    fn assume_zero(&mut self, p: &Polynomial) -> Option<Polynomial> {
        let p = self.reduce(p.clone());
        if let Some(c) = p.constant_value() {
            let g = match &self.char_divides {
                Some(g) => g.gcd(c.numer()),
                None => int_radical(c.numer()),
            };
            self.char_divides = Some(g);
            return None;
        }
        if let [v] = p.vars_used()[..] {
            if p == p.ring().var_poly(v) {
                self.zero_vars.push(v);
                return None;
            }
        }
        let mut blocking = None;
        let mut main: Option<Var> = None;
        for v in p.vars_used() {
            let lc = self.reduce(p.leading_coeff_in(v));
            match self.status(&lc) {
                Status::Nonzero => {
                    if main.is_none_or(|m| p.degree_in(v) < p.degree_in(m)) {
                        main = Some(v);
                    }
                }
                Status::Unknown if lc.is_constant() && blocking.is_none() => blocking = Some(lc),
                _ => {}
            }
        }
        match main {
            Some(v) => {
                self.zero_polys.push((p, v));
                None
            }
            None => blocking,
        }
    }

    /// Branches on which `p = 0` is recorded, with the extra conditions
    /// each one assumes.
    fn zero_cases(&self, p: &Polynomial) -> Vec<(Vec<Formula>, Branch)> {
        let mut b = self.clone();
        let Some(c) = b.assume_zero(p) else {
            return vec![(Vec::new(), b)];
        };
        let mut out = Vec::new();
        let mut b0 = self.clone();
        b0.assume_zero(&c);
        for (mut conds, br) in b0.zero_cases(p) {
            conds.insert(0, Formula::atom(c.clone()));
            out.push((conds, br));
        }
        let mut b1 = self.clone();
        b1.assume_nonzero(&c);
        for (mut conds, br) in b1.zero_cases(p) {
            conds.insert(0, Formula::nonzero(c.clone()));
            out.push((conds, br));
        }
        out
    }

    fn assume_nonzero(&mut self, p: &Polynomial) {
        let (content, vars, rest) = split_factors(p);
        if !content.is_one() {
            let r = int_radical(&content);
            if let Some(g) = &self.char_divides {
                let common = g.gcd(&r);
                self.char_divides = Some(g / common);
            }
            self.char_avoids = &self.char_avoids * r;
        }
        for v in vars {
            let vp = p.ring().var_poly(v);
            if !self.nonzero.contains(&vp) {
                self.nonzero.push(vp);
            }
        }
        if !rest.is_constant() {
            let rest = rest.reduced_associate();
            if !self.nonzero.contains(&rest) {
                self.nonzero.push(rest);
            }
        }
    }

    /// A polynomial with the same zero set on this branch, with known
    /// facts applied and known-nonzero factors divided out.
    fn reduce(&self, p: Polynomial) -> Polynomial {
        let mut p = self.specialize(p);
        if p.is_constant() {
            return p;
        }
        p = p.reduced_associate();
        for f in &self.nonzero {
            while let Some(q) = p.exact_div(f) {
                p = q;
            }
        }
        if let BaseDomain::Integers = p.ring().base() {
            let (content, _, _) = split_factors(&p);
            let mut known = BigInt::one();
            let mut c = content;
            loop {
                let g = c.gcd(&self.char_avoids);
                if g.is_one() {
                    break;
                }
                c /= &g;
                known *= g;
            }
            if !known.is_one() {
                p = p.scale(&Coeff::new(BigInt::one(), known));
            }
        }
        p
    }

    /// The same polynomial function on this branch, up to a nonzero factor
    /// free of the eliminated variable: coefficients reduced modulo a known
    /// multiple of the characteristic, known-zero variables substituted,
    /// pseudo-remainders taken by known-zero polynomials.
    fn specialize(&self, p: Polynomial) -> Polynomial {
        let mut p = match &self.char_divides {
            Some(g) if !p.is_zero() => {
                let half = g / 2u32;
                let terms = p.terms().iter().map(|(m, c)| {
                    let mut r = c.numer().mod_floor(g);
                    if r > half {
                        r -= g;
                    }
                    (m.exponents().to_vec(), Coeff::from_integer(r))
                });
                p.ring().from_terms(terms).expect("same ring")
            }
            _ => p,
        };
        for &v in &self.zero_vars {
            p = p.substitute_zero(v);
        }
        for (z, v) in &self.zero_polys {
            if p.degree_in(*v) >= z.degree_in(*v) {
                p = pseudo_remainder(&p, z, *v).expect("divisor has positive degree");
            }
        }
        p
    }
}

/// `p = content * (product of vars) * rest` with `content` the integer
/// content over `Z` (1 otherwise) and `vars` the variables dividing `p`.
fn split_factors(p: &Polynomial) -> (BigInt, Vec<Var>, Polynomial) {
    let ring = p.ring();
    let content = match ring.base() {
        BaseDomain::Integers => p
            .terms()
            .iter()
            .fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer())),
        _ => BigInt::one(),
    };
    if p.is_zero() || content.is_zero() {
        return (BigInt::one(), Vec::new(), p.clone());
    }
    let vars: Vec<Var> = ring
        .vars()
        .vars()
        .filter(|&v| p.terms().iter().all(|(m, _)| m.exponent(v) > 0))
        .collect();
    let mut rest = p.scale(&Coeff::new(BigInt::one(), content.clone()));
    for &v in &vars {
        while let Some(q) = rest.exact_div(&ring.var_poly(v)) {
            rest = q;
        }
    }
    (content, vars, rest)
}

/// Every prime factor of `n` divides `m`.
fn divides_some_power(n: &BigInt, m: &BigInt) -> bool {
    let mut n = n.abs();
    loop {
        if n.is_one() {
            return true;
        }
        let g = n.gcd(m);
        if g.is_one() || n.is_zero() {
            return false;
        }
        while (&n % &g).is_zero() {
            n /= &g;
        }
    }
}

impl Eliminator<'_> {
    fn run(&self, eqs: Vec<Polynomial>, ineq: Polynomial, mut st: Branch) -> Result<Formula> {
        let x = self.x;
        let ineq = st.reduce(ineq);
        if ineq.is_zero() {
            return Ok(Formula::False);
        }

        // (0) conditions that do not mention x; constants first, since they
        // fix the characteristic for everything else
        let mut eqs: Vec<Polynomial> = eqs.into_iter().map(|e| st.reduce(e)).collect();
        eqs.sort_by_key(|e| !e.is_constant());
        let mut side = Vec::new();
        let mut live: Vec<Polynomial> = Vec::new();
        for i in 0..eqs.len() {
            let e = st.reduce(eqs[i].clone());
            if e.contains_var(x) {
                live.push(e);
                continue;
            }
            match st.status(&e) {
                Status::Zero => {}
                Status::Nonzero => return Ok(Formula::False),
                Status::Unknown => {
                    let mut cases = st.zero_cases(&e);
                    side.push(Formula::atom(e));
                    if cases.len() == 1 {
                        st = cases.pop().expect("one case").1;
                        continue;
                    }
                    let rest: Vec<Polynomial> = live.iter().chain(&eqs[i + 1..]).cloned().collect();
                    let mut parts = Vec::with_capacity(cases.len());
                    for (conds, br) in cases {
                        let sub = self.run(rest.clone(), ineq.clone(), br)?;
                        parts.push(Formula::and(conds.into_iter().chain([sub])));
                    }
                    return Ok(Formula::and(side.into_iter().chain([Formula::or(parts)])));
                }
            }
        }
        let ineq = if ineq.contains_var(x) {
            ineq
        } else {
            match st.status(&ineq) {
                Status::Zero => return Ok(Formula::False),
                Status::Nonzero => {}
                Status::Unknown => {
                    st.assume_nonzero(&ineq);
                    side.push(Formula::nonzero(ineq.clone()));
                }
            }
            ineq.ring().one()
        };
        let live: Vec<Polynomial> = live.into_iter().map(|e| st.reduce(e)).collect();
        let ineq = st.reduce(ineq);

        // (1) no equation left: some coefficient of ineq must survive
        if live.is_empty() {
            let core = self.some_coeff_nonzero(&ineq, &st);
            return Ok(Formula::and(side.into_iter().chain([core])));
        }

        // (2) split on the leading coefficient of a lowest-degree equation
        let mut live = live;
        let pivot = live
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.degree_in(x)
                    .cmp(&b.degree_in(x))
                    .then_with(|| a.canonical_cmp(b))
            })
            .map(|(i, _)| i)
            .expect("nonempty");
        let a = live.swap_remove(pivot);
        let d = a.degree_in(x);
        let lc = a.leading_coeff_in(x);
        let status = st.status(&lc);

        let branch_a = if status == Status::Nonzero {
            Formula::False
        } else {
            let reduced = &a - &(&lc * &ring_monomial(&a, x, d));
            let mut eqs: Vec<Polynomial> = live.clone();
            eqs.push(reduced);
            if status == Status::Zero {
                self.run(eqs, ineq.clone(), st.clone())?
            } else {
                let mut parts = Vec::new();
                for (conds, sa) in st.zero_cases(&lc) {
                    let sub = self.run(eqs.clone(), ineq.clone(), sa)?;
                    parts.push(Formula::and(conds.into_iter().chain([sub])));
                }
                Formula::and([Formula::atom(lc.clone()), Formula::or(parts)])
            }
        };
        if status == Status::Zero {
            return Ok(Formula::and(side.into_iter().chain([branch_a])));
        }

        let mut sb = st;
        if status == Status::Unknown {
            sb.assume_nonzero(&lc);
        }
        let rest_b = if live.is_empty() {
            self.single_equation(&a, d, &ineq, &sb)?
        } else {
            let mut eqs = vec![a.clone()];
            for e in &live {
                let r = sb.reduce(pseudo_remainder(e, &a, x)?);
                self.limits.check_degree(r.total_degree())?;
                eqs.push(r);
            }
            self.run(eqs, ineq.clone(), sb)?
        };
        let branch_b = if status == Status::Nonzero {
            rest_b
        } else {
            Formula::and([Formula::nonzero(lc), rest_b])
        };

        let core = if branch_a == branch_b {
            branch_a
        } else {
            Formula::or([branch_a, branch_b])
        };
        Ok(Formula::and(side.into_iter().chain([core])))
    }

    /// `exists x. a = 0 & ineq != 0` given that `a` has degree `d >= 1` in `x`
    /// with nonzero leading coefficient: false exactly when every root of `a`
    /// is a root of `ineq`, i.e. when `a` divides `ineq^d`.
    fn single_equation(
        &self,
        a: &Polynomial,
        d: u32,
        ineq: &Polynomial,
        st: &Branch,
    ) -> Result<Formula> {
        if !ineq.contains_var(self.x) {
            return Ok(Formula::nonzero(ineq.clone()));
        }
        let power = st.specialize(ineq.pow(d));
        self.limits.check_degree(power.total_degree())?;
        let r = st.reduce(pseudo_remainder(&power, a, self.x)?);
        self.limits.check_degree(r.total_degree())?;
        Ok(self.some_coeff_nonzero(&r, st))
    }

    /// A polynomial in `x` has a non-root in an infinite field iff one of its
    /// coefficients is nonzero.
    fn some_coeff_nonzero(&self, f: &Polynomial, st: &Branch) -> Formula {
        let mut parts = Vec::new();
        for c in f.coeffs_in(self.x) {
            match st.status(&c) {
                Status::Zero => {}
                Status::Nonzero => return Formula::True,
                Status::Unknown => parts.push(Formula::nonzero(c)),
            }
        }
        Formula::or(parts)
    }
}

fn ring_monomial(p: &Polynomial, x: Var, d: u32) -> Polynomial {
    p.ring().monomial(x, d)
}

/// Quantifier-free equivalent of `phi` over `ring`, as a formula.
pub fn eliminate_all(phi: &Formula, ring: &Ring) -> Result<Formula> {
    eliminate_all_with(phi, ring, &Limits::default())
}

pub fn eliminate_all_with(phi: &Formula, ring: &Ring, limits: &Limits) -> Result<Formula> {
    Ok(eliminate_all_dnf(phi, ring, limits)?.to_formula())
}

/// Quantifier-free equivalent of `phi` in canonical form over `ring`.
///
/// Its free variables are among those of `phi`.
pub fn eliminate_all_dnf(phi: &Formula, ring: &Ring, limits: &Limits) -> Result<CanonicalDnf> {
    for p in phi.atoms() {
        p.check_ring(&ring.one())?;
    }
    let (work, prenex) = to_prenex(phi, ring)?;
    let (prefix, matrix) = prenex.split_prefix();
    // The formula processed so far is `dnf`, or its complement when
    // `negated`; complements are only materialized when the next
    // quantifier needs the other polarity.
    let mut negated = matches!(prefix.last(), Some((Quantifier::Forall, _)));
    let mut dnf = if negated {
        to_canonical_dnf_with(&matrix.clone().negate(), &work, limits)?
    } else {
        to_canonical_dnf_with(matrix, &work, limits)?
    };
    for &(q, x) in prefix.iter().rev() {
        let want_negated = q == Quantifier::Forall;
        if negated != want_negated {
            dnf = complement(&dnf, limits)?;
        }
        dnf = exists_dnf(x, &dnf, limits)?;
        negated = want_negated;
    }
    if negated {
        dnf = complement(&dnf, limits)?;
    }
    dnf.restrict(ring)
}

fn complement(d: &CanonicalDnf, limits: &Limits) -> Result<CanonicalDnf> {
    to_canonical_dnf_with(&d.to_formula().negate(), d.ring(), limits)
}

/// Distributes `exists x` over the pieces and eliminates each one.
fn exists_dnf(x: Var, d: &CanonicalDnf, limits: &Limits) -> Result<CanonicalDnf> {
    let mut parts = Vec::with_capacity(d.pieces().len());
    for piece in d.pieces() {
        let mentions_x =
            piece.open.contains_var(x) || piece.closed.iter().any(|a| a.contains_var(x));
        if mentions_x {
            parts.push(eliminate_one_with(x, &Conjunct::from_piece(piece), limits)?);
        } else {
            parts.push(piece.to_formula());
        }
    }
    to_canonical_dnf_with(&Formula::or(parts), d.ring(), limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{BaseDomain, VarTable};
    use crate::formula::{parse, render};

    fn qe_lines(text: &str, params: &[&str]) -> Vec<String> {
        let r = Ring::new(
            BaseDomain::Integers,
            VarTable::params(params.iter().copied()).unwrap(),
        );
        let (r2, f) = parse(text, &r).unwrap();
        let d = eliminate_all_dnf(&f, &r2, &Limits::default()).unwrap();
        d.piece_lines()
    }

    #[test]
    fn linear_equation() {
        assert_eq!(
            qe_lines("exists x. a*x + b = 0", &["a", "b"]),
            ["piece: open: a closed: -", "piece: open: 1 closed: a; b"]
        );
    }

    #[test]
    fn monic_equation_always_has_a_root() {
        assert_eq!(
            qe_lines("exists x. x^2 + u*x + v = 0", &["u", "v"]),
            ["piece: open: 1 closed: -"]
        );
    }

    #[test]
    fn contradiction() {
        assert_eq!(qe_lines("exists x. x = 0 & x != 0", &[]), ["empty"]);
    }

    #[test]
    fn two_is_kept_symbolic() {
        assert_eq!(
            qe_lines("exists x. 2*x - 1 = 0", &[]),
            ["piece: open: 2 closed: -"]
        );
    }

    #[test]
    fn localization() {
        assert_eq!(
            qe_lines("exists t. u*t - 1 = 0", &["u"]),
            ["piece: open: u closed: -"]
        );
    }

    #[test]
    fn circle_over_acf() {
        assert_eq!(
            qe_lines("exists y. x^2 + y^2 - 1 = 0", &["x"]),
            ["piece: open: 1 closed: -"]
        );
    }

    #[test]
    fn every_element_is_a_square() {
        assert_eq!(
            qe_lines("forall x. exists y. y^2 = x", &[]),
            ["piece: open: 1 closed: -"]
        );
        assert_eq!(qe_lines("forall x. x = a", &["a"]), ["empty"]);
    }

    #[test]
    fn quantifier_free_input_is_canonicalized() {
        assert_eq!(
            qe_lines("a != 0 & b != 0", &["a", "b"]),
            ["piece: open: a*b closed: -"]
        );
    }

    #[test]
    fn eliminate_one_emits_both_branches() {
        let r = Ring::new(
            BaseDomain::Integers,
            VarTable::params(["a", "b", "x"]).unwrap(),
        );
        let (a, b, x) = (r.var_poly(Var(0)), r.var_poly(Var(1)), r.var_poly(Var(2)));
        let c = Conjunct {
            eqs: vec![&(&a * &x) + &b],
            ineq: r.one(),
        };
        let f = eliminate_one(Var(2), &c).unwrap();
        assert!(f.is_quantifier_free());
        assert!(!f.free_vars().contains(&Var(2)));
        assert_eq!(render(&f, &r), "a = 0 & b = 0 | a != 0");
    }

    #[test]
    fn integer_leading_coefficients_fix_the_characteristic() {
        assert_eq!(
            qe_lines("exists x. 6*x - 1 = 0", &[]),
            ["piece: open: 6 closed: -"]
        );
        assert_eq!(
            qe_lines("exists x. 2*x = 0 & 3*x - 1 = 0", &[]),
            ["piece: open: 1 closed: 2"]
        );
        assert_eq!(
            qe_lines("exists x. 4*x^2 - 1 = 0 & 2*x != 0", &[]),
            ["piece: open: 2 closed: -"]
        );
    }

    #[test]
    fn assumed_factors_are_divided_out() {
        assert_eq!(
            qe_lines("exists x. a*x - 1 = 0 & a^3*x^2 - a = 0", &["a"]),
            ["piece: open: a closed: -"]
        );
    }

    #[test]
    fn resource_limits_surface() {
        let r = Ring::new(BaseDomain::Integers, VarTable::params(["a"]).unwrap());
        let (r, f) = parse("exists x. a*x^3 + x + 1 = 0 & (a*x - 1)^3 != 0", &r).unwrap();
        let limits = Limits {
            max_pieces: 1000,
            max_degree: 3,
        };
        assert!(matches!(
            eliminate_all_dnf(&f, &r, &limits),
            Err(crate::Error::Resource { .. })
        ));
    }
}
