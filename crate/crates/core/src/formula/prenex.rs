use std::collections::BTreeSet;

use super::Formula;
use crate::coeff::{Ring, Var, VarKind, VarTable};
use crate::error::Result;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Quantifier {
    Exists,
    Forall,
}

/// Negation normal form: negations sit directly on atoms. Quantifiers are
/// kept in place (`!exists` becomes `forall !`).
pub fn to_nnf(phi: &Formula) -> Formula {
    nnf(phi, false)
}

fn nnf(phi: &Formula, negated: bool) -> Formula {
    match (phi, negated) {
        (Formula::True, false) | (Formula::False, true) => Formula::True,
        (Formula::True, true) | (Formula::False, false) => Formula::False,
        (Formula::Atom(p), false) => Formula::Atom(p.clone()),
        (Formula::Atom(p), true) => Formula::Not(Box::new(Formula::Atom(p.clone()))),
        (Formula::Not(g), _) => nnf(g, !negated),
        (Formula::And(gs), false) | (Formula::Or(gs), true) => {
            Formula::And(gs.iter().map(|g| nnf(g, negated)).collect())
        }
        (Formula::Or(gs), false) | (Formula::And(gs), true) => {
            Formula::Or(gs.iter().map(|g| nnf(g, negated)).collect())
        }
        (Formula::Exists(x, g), false) | (Formula::Forall(x, g), true) => {
            Formula::Exists(*x, Box::new(nnf(g, negated)))
        }
        (Formula::Forall(x, g), false) | (Formula::Exists(x, g), true) => {
            Formula::Forall(*x, Box::new(nnf(g, negated)))
        }
    }
}

impl Formula {
    /// Leading quantifier block and the formula under it.
    pub fn split_prefix(&self) -> (Vec<(Quantifier, Var)>, &Formula) {
        let mut prefix = Vec::new();
        let mut cur = self;
        loop {
            match cur {
                Formula::Exists(x, g) => {
                    prefix.push((Quantifier::Exists, *x));
                    cur = g;
                }
                Formula::Forall(x, g) => {
                    prefix.push((Quantifier::Forall, *x));
                    cur = g;
                }
                _ => return (prefix, cur),
            }
        }
    }

    pub fn with_prefix(prefix: &[(Quantifier, Var)], matrix: Formula) -> Formula {
        prefix.iter().rev().fold(matrix, |body, &(q, x)| match q {
            Quantifier::Exists => Formula::exists(x, body),
            Quantifier::Forall => Formula::forall(x, body),
        })
    }

    /// Whether all quantifiers form a leading block over a quantifier-free body.
    pub fn is_prenex(&self) -> bool {
        self.split_prefix().1.is_quantifier_free()
    }
}

/// Prenex form with a negation-normal matrix.
///
/// A binder is renamed to a fresh `name_k` when its variable is a parameter,
/// occurs free, or was already bound elsewhere; the fresh names are appended
/// to the ring, so the returned ring may extend `ring`. Free variables are
/// untouched.
pub fn to_prenex(phi: &Formula, ring: &Ring) -> Result<(Ring, Formula)> {
    let phi = to_nnf(phi);

    let mut seen: BTreeSet<Var> = phi.free_vars();
    seen.extend(
        ring.vars()
            .vars()
            .filter(|&v| ring.vars().kind(v) == VarKind::Param),
    );
    let mut names = ring.vars().clone();
    let mut plan = Vec::new();
    plan_renames(&phi, ring, &mut seen, &mut names, &mut plan);

    let fresh: Vec<String> = plan.iter().flatten().cloned().collect();
    let (ring, phi) = if fresh.is_empty() {
        (ring.clone(), phi)
    } else {
        let big = ring.extended(fresh.iter().map(|n| (n.clone(), VarKind::Bound)))?;
        let embedded = phi.embed(&big)?;
        (big, embedded)
    };

    let mut plan = plan.into_iter();
    let renamed = apply_renames(&phi, &ring, &mut plan, &mut Vec::new());
    let (prefix, matrix) = pull(renamed);
    Ok((ring, Formula::with_prefix(&prefix, matrix)))
}

fn plan_renames(
    phi: &Formula,
    ring: &Ring,
    seen: &mut BTreeSet<Var>,
    names: &mut VarTable,
    plan: &mut Vec<Option<String>>,
) {
    match phi {
        Formula::True | Formula::False | Formula::Atom(_) => {}
        Formula::Not(g) => plan_renames(g, ring, seen, names, plan),
        Formula::And(gs) | Formula::Or(gs) => {
            for g in gs {
                plan_renames(g, ring, seen, names, plan);
            }
        }
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            if seen.insert(*x) {
                plan.push(None);
            } else {
                let name = names.fresh_name(ring.name(*x));
                *names = names
                    .extended([(name.clone(), VarKind::Bound)])
                    .expect("fresh names are unique identifiers");
                plan.push(Some(name));
            }
            plan_renames(g, ring, seen, names, plan);
        }
    }
}

fn apply_renames(
    phi: &Formula,
    ring: &Ring,
    plan: &mut impl Iterator<Item = Option<String>>,
    subst: &mut Vec<(Var, Var)>,
) -> Formula {
    match phi {
        Formula::True => Formula::True,
        Formula::False => Formula::False,
        Formula::Atom(p) => {
            let mut p = p.clone();
            let mut done: Vec<Var> = Vec::new();
            for &(from, to) in subst.iter().rev() {
                if done.contains(&from) {
                    continue;
                }
                done.push(from);
                if from != to {
                    p = p.substitute_var(from, to);
                }
            }
            Formula::Atom(p)
        }
        Formula::Not(g) => Formula::Not(Box::new(apply_renames(g, ring, plan, subst))),
        Formula::And(gs) => Formula::And(
            gs.iter()
                .map(|g| apply_renames(g, ring, plan, subst))
                .collect(),
        ),
        Formula::Or(gs) => Formula::Or(
            gs.iter()
                .map(|g| apply_renames(g, ring, plan, subst))
                .collect(),
        ),
        Formula::Exists(x, g) | Formula::Forall(x, g) => {
            let target = match plan.next().expect("one plan entry per binder") {
                Some(name) => ring.var(&name).expect("fresh variable was added"),
                None => *x,
            };
            subst.push((*x, target));
            let body = apply_renames(g, ring, plan, subst);
            subst.pop();
            if matches!(phi, Formula::Exists(..)) {
                Formula::exists(target, body)
            } else {
                Formula::forall(target, body)
            }
        }
    }
}

/// Pulls quantifiers out of a capture-free formula, left to right.
fn pull(phi: Formula) -> (Vec<(Quantifier, Var)>, Formula) {
    match phi {
        Formula::Exists(x, g) => {
            let (mut prefix, m) = pull(*g);
            prefix.insert(0, (Quantifier::Exists, x));
            (prefix, m)
        }
        Formula::Forall(x, g) => {
            let (mut prefix, m) = pull(*g);
            prefix.insert(0, (Quantifier::Forall, x));
            (prefix, m)
        }
        Formula::And(gs) => {
            let (prefix, ms) = pull_all(gs);
            (prefix, Formula::And(ms))
        }
        Formula::Or(gs) => {
            let (prefix, ms) = pull_all(gs);
            (prefix, Formula::Or(ms))
        }
        other => (Vec::new(), other),
    }
}

fn pull_all(gs: Vec<Formula>) -> (Vec<(Quantifier, Var)>, Vec<Formula>) {
    let mut prefix = Vec::new();
    let mut ms = Vec::with_capacity(gs.len());
    for g in gs {
        let (p, m) = pull(g);
        prefix.extend(p);
        ms.push(m);
    }
    (prefix, ms)
}
