//! First-order formulas over ring atoms `p = 0`.

mod dnf;
mod parse;
mod prenex;
mod render;

use std::collections::BTreeSet;

use crate::coeff::{Polynomial, Ring, Var};
use crate::error::Result;

pub use dnf::{to_canonical_dnf, to_canonical_dnf_with, CanonicalDnf, Piece};
pub use parse::{parse, parse_polynomial};
pub use prenex::{to_nnf, to_prenex, Quantifier};
pub use render::render;

/// A first-order formula in the language of rings with constants.
///
/// Atoms are stored moved to one side: `Atom(p)` means `p = 0`. Bound
/// variables are indices into the ring's variable table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Formula {
    True,
    False,
    Atom(Polynomial),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Exists(Var, Box<Formula>),
    Forall(Var, Box<Formula>),
}

impl Formula {
    /// `p = 0`, folded to `True`/`False` when `p` is zero or a constant that
    /// vanishes in no field.
    pub fn atom(p: Polynomial) -> Formula {
        if p.is_zero() {
            Formula::True
        } else if p.is_unit_constant() {
            Formula::False
        } else {
            Formula::Atom(p)
        }
    }

    /// `p != 0`.
    pub fn nonzero(p: Polynomial) -> Formula {
        Formula::atom(p).negate()
    }

    /// Negation with constant folding and double-negation removal.
    pub fn negate(self) -> Formula {
        match self {
            Formula::True => Formula::False,
            Formula::False => Formula::True,
            Formula::Not(inner) => *inner,
            other => Formula::Not(Box::new(other)),
        }
    }

    /// Conjunction dropping `True` operands and collapsing on `False`.
    pub fn and(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::True => {}
                Formula::False => return Formula::False,
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    pub fn or(parts: impl IntoIterator<Item = Formula>) -> Formula {
        let mut out = Vec::new();
        for p in parts {
            match p {
                Formula::False => {}
                Formula::True => return Formula::True,
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn exists(x: Var, body: Formula) -> Formula {
        Formula::Exists(x, Box::new(body))
    }

    pub fn forall(x: Var, body: Formula) -> Formula {
        Formula::Forall(x, Box::new(body))
    }

    pub fn is_quantifier_free(&self) -> bool {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => true,
            Formula::Not(f) => f.is_quantifier_free(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().all(Formula::is_quantifier_free),
            Formula::Exists(..) | Formula::Forall(..) => false,
        }
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        let mut out = BTreeSet::new();
        self.collect_free(&mut Vec::new(), &mut out);
        out
    }

    fn collect_free(&self, bound: &mut Vec<Var>, out: &mut BTreeSet<Var>) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(p) => {
                out.extend(p.vars_used().into_iter().filter(|v| !bound.contains(v)));
            }
            Formula::Not(f) => f.collect_free(bound, out),
            Formula::And(fs) | Formula::Or(fs) => {
                for f in fs {
                    f.collect_free(bound, out);
                }
            }
            Formula::Exists(x, f) | Formula::Forall(x, f) => {
                bound.push(*x);
                f.collect_free(bound, out);
                bound.pop();
            }
        }
    }

    /// Every atom polynomial, in left-to-right order.
    pub fn atoms(&self) -> Vec<&Polynomial> {
        let mut out = Vec::new();
        self.visit_atoms(&mut |p| out.push(p));
        out
    }

    fn visit_atoms<'a>(&'a self, f: &mut impl FnMut(&'a Polynomial)) {
        match self {
            Formula::True | Formula::False => {}
            Formula::Atom(p) => f(p),
            Formula::Not(g) | Formula::Exists(_, g) | Formula::Forall(_, g) => g.visit_atoms(f),
            Formula::And(gs) | Formula::Or(gs) => {
                for g in gs {
                    g.visit_atoms(f);
                }
            }
        }
    }

    /// Rebuilds the formula with each atom polynomial transformed.
    /// Structure is preserved as is; no constant folding happens.
    pub fn try_map_atoms(
        &self,
        f: &mut impl FnMut(&Polynomial) -> Result<Polynomial>,
    ) -> Result<Formula> {
        Ok(match self {
            Formula::True => Formula::True,
            Formula::False => Formula::False,
            Formula::Atom(p) => Formula::Atom(f(p)?),
            Formula::Not(g) => Formula::Not(Box::new(g.try_map_atoms(f)?)),
            Formula::And(gs) => Formula::And(
                gs.iter()
                    .map(|g| g.try_map_atoms(f))
                    .collect::<Result<_>>()?,
            ),
            Formula::Or(gs) => Formula::Or(
                gs.iter()
                    .map(|g| g.try_map_atoms(f))
                    .collect::<Result<_>>()?,
            ),
            Formula::Exists(x, g) => Formula::Exists(*x, Box::new(g.try_map_atoms(f)?)),
            Formula::Forall(x, g) => Formula::Forall(*x, Box::new(g.try_map_atoms(f)?)),
        })
    }

    /// Re-expresses every atom in a ring extending the current one.
    pub fn embed(&self, ring: &Ring) -> Result<Formula> {
        self.try_map_atoms(&mut |p| p.embed(ring))
    }

    /// Drops trailing ring variables, none of which may occur.
    pub fn restrict(&self, ring: &Ring) -> Result<Formula> {
        self.try_map_atoms(&mut |p| p.restrict(ring))
    }

    /// Largest exponent of `x` among all atoms.
    pub fn degree_in(&self, x: Var) -> u32 {
        self.atoms()
            .iter()
            .map(|p| p.degree_in(x))
            .max()
            .unwrap_or(0)
    }

    pub fn quantifier_count(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => 0,
            Formula::Not(f) => f.quantifier_count(),
            Formula::And(fs) | Formula::Or(fs) => fs.iter().map(Formula::quantifier_count).sum(),
            Formula::Exists(_, f) | Formula::Forall(_, f) => 1 + f.quantifier_count(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::{BaseDomain, VarTable};

    #[test]
    fn smart_constructors_fold_constants() {
        let z = Ring::new(BaseDomain::Integers, VarTable::params(["u"]).unwrap());
        assert_eq!(Formula::atom(z.zero()), Formula::True);
        assert_eq!(Formula::atom(z.int(-1)), Formula::False);
        // 2 = 0 holds in characteristic two.
        assert!(matches!(Formula::atom(z.int(2)), Formula::Atom(_)));
        let q = Ring::new(BaseDomain::Rationals, VarTable::params(["u"]).unwrap());
        assert_eq!(Formula::atom(q.int(2)), Formula::False);
        assert_eq!(Formula::and([]), Formula::True);
        assert_eq!(Formula::or([]), Formula::False);
        let u = Formula::atom(z.var_poly(Var(0)));
        assert_eq!(Formula::and([Formula::True, u.clone()]), u);
        assert_eq!(u.clone().negate().negate(), u);
    }

    #[test]
    fn free_variables_are_structural() {
        let r = Ring::new(BaseDomain::Integers, VarTable::params(["a", "x"]).unwrap());
        let (a, x) = (r.var_poly(Var(0)), r.var_poly(Var(1)));
        let body = Formula::atom(&(&a * &x) - &r.one());
        let phi = Formula::and([Formula::exists(Var(1), body), Formula::atom(x.clone())]);
        assert_eq!(phi.free_vars(), BTreeSet::from([Var(0), Var(1)]));
        assert_eq!(phi.quantifier_count(), 1);
        assert!(!phi.is_quantifier_free());
    }
}
