//! Seeded random generators shared by the integration tests.

#![allow(dead_code)]

use acfqe::coeff::{BaseDomain, Polynomial, Ring, Var, VarKind, VarTable};
use acfqe::formula::Formula;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

pub fn z_ring(params: &[&str], bound: &[&str]) -> Ring {
    let entries = params
        .iter()
        .map(|n| (*n, VarKind::Param))
        .chain(bound.iter().map(|n| (*n, VarKind::Bound)));
    Ring::new(BaseDomain::Integers, VarTable::new(entries).unwrap())
}

fn small_exponent(rng: &mut impl Rng, max: u32) -> u32 {
    // low degrees are the interesting ones; keep the top degree rare
    let weights = [6u32, 5, 3, 1];
    let total: u32 = weights.iter().take(max as usize + 1).sum();
    let mut roll = rng.gen_range(0..total);
    for (e, w) in weights.iter().enumerate().take(max as usize + 1) {
        if roll < *w {
            return e as u32;
        }
        roll -= w;
    }
    0
}

/// A polynomial in `vars` with at most `max_terms` terms, each variable of
/// degree at most `max_deg`, small integer coefficients.
pub fn random_poly(
    rng: &mut impl Rng,
    ring: &Ring,
    vars: &[Var],
    max_deg: u32,
    max_terms: usize,
) -> Polynomial {
    let nterms = rng.gen_range(1..=max_terms);
    let terms = (0..nterms).map(|_| {
        let mut exps = vec![0u32; ring.nvars()];
        for v in vars {
            exps[v.0] = small_exponent(rng, max_deg);
        }
        let mut c = rng.gen_range(1..=3i64);
        if rng.gen_bool(0.5) {
            c = -c;
        }
        (exps, BigRational::from_integer(BigInt::from(c)))
    });
    ring.from_terms(terms).unwrap()
}

/// A literal `p = 0` or `p != 0`, never a constant.
pub fn random_literal(rng: &mut impl Rng, ring: &Ring, vars: &[Var], max_deg: u32) -> Formula {
    loop {
        let p = random_poly(rng, ring, vars, max_deg, 3);
        if p.is_constant() {
            continue;
        }
        let atom = Formula::Atom(p);
        return if rng.gen_bool(0.4) {
            atom.negate()
        } else {
            atom
        };
    }
}

/// Random and/or tree over the given leaves.
pub fn random_tree(rng: &mut impl Rng, mut leaves: Vec<Formula>) -> Formula {
    if leaves.len() == 1 {
        return leaves.pop().unwrap();
    }
    leaves.shuffle(rng);
    let split = rng.gen_range(1..leaves.len());
    let right = leaves.split_off(split);
    let (l, r) = (random_tree(rng, leaves), random_tree(rng, right));
    if rng.gen_bool(0.5) {
        Formula::And(vec![l, r])
    } else {
        Formula::Or(vec![l, r])
    }
}

/// A prenex formula over `Z[a, b]` with one or two quantified variables,
/// per-variable degree at most 3 and at most 4 atoms.
pub fn random_prenex(rng: &mut impl Rng) -> (Ring, Formula) {
    let nparams = rng.gen_range(0..=2);
    let nbound = rng.gen_range(1..=2);
    let ring = z_ring(&["a", "b"][..nparams], &["x", "y"][..nbound]);
    let vars: Vec<Var> = ring.vars().vars().collect();
    let natoms = rng.gen_range(1..=4);
    let leaves = (0..natoms)
        .map(|_| random_literal(rng, &ring, &vars, 3))
        .collect();
    let mut phi = random_tree(rng, leaves);
    for i in (nparams..nparams + nbound).rev() {
        phi = if rng.gen_bool(0.6) {
            Formula::exists(Var(i), phi)
        } else {
            Formula::forall(Var(i), phi)
        };
    }
    (ring, phi)
}

/// An arbitrary formula tree: connectives, negations, constants and
/// quantifiers (binding `x` or `y`) over parameters `a`, `b`.
pub fn random_ast(rng: &mut impl Rng, ring: &Ring, scope: &mut Vec<Var>, depth: u32) -> Formula {
    let choice = if depth == 0 { 0 } else { rng.gen_range(0..7) };
    match choice {
        0 | 1 => {
            if rng.gen_bool(0.05) {
                return if rng.gen_bool(0.5) {
                    Formula::True
                } else {
                    Formula::False
                };
            }
            let vars: Vec<Var> = ring
                .vars()
                .vars()
                .filter(|v| ring.vars().kind(*v) == VarKind::Param || scope.contains(v))
                .collect();
            random_literal(rng, ring, &vars, 3)
        }
        2 => Formula::Not(Box::new(random_ast(rng, ring, scope, depth - 1))),
        3 | 4 => {
            let n = rng.gen_range(2..=3);
            let parts = (0..n)
                .map(|_| random_ast(rng, ring, scope, depth - 1))
                .collect();
            if choice == 3 {
                Formula::And(parts)
            } else {
                Formula::Or(parts)
            }
        }
        _ => {
            let bound: Vec<Var> = ring
                .vars()
                .vars()
                .filter(|v| ring.vars().kind(*v) == VarKind::Bound)
                .collect();
            let x = *bound.choose(rng).unwrap();
            scope.push(x);
            let body = random_ast(rng, ring, scope, depth - 1);
            scope.pop();
            if choice == 5 {
                Formula::exists(x, body)
            } else {
                Formula::forall(x, body)
            }
        }
    }
}
