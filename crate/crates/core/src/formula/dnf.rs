//! The canonical quantifier-free form `OR_i (b_i != 0 & AND_j a_ij = 0)`.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use super::{to_nnf, Formula};
use crate::coeff::{Polynomial, Ring, Var};
use crate::error::{Error, Result};
use crate::limits::Limits;

/// One disjunct: `open != 0` and every `closed` entry `= 0`, i.e. the set
/// `D(open) ∩ V(closed)`. `open = 1` means there is no inequation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub open: Polynomial,
    pub closed: Vec<Polynomial>,
}

/// `v` when `p` is exactly the variable `v`.
fn single_var(p: &Polynomial) -> Option<Var> {
    match p.vars_used()[..] {
        [v] if *p == p.ring().var_poly(v) => Some(v),
        _ => None,
    }
}

impl Piece {
    /// Canonicalizes a piece; `None` when it is syntactically empty.
    ///
    /// Every polynomial is replaced by its reduced associate, a variable
    /// equated to zero is substituted into the other entries, zero
    /// equations are dropped, unit equations and a zero inequation empty the
    /// piece, and an inequation equal to one of the equations empties it.
    pub fn normalized(open: Polynomial, closed: Vec<Polynomial>) -> Option<Piece> {
        if open.is_zero() {
            return None;
        }
        let open = if open.is_unit_constant() {
            open.ring().one()
        } else {
            open.reduced_associate()
        };
        let mut eqs: Vec<Polynomial> = Vec::with_capacity(closed.len());
        for a in closed {
            if a.is_zero() {
                continue;
            }
            if a.is_unit_constant() {
                return None;
            }
            eqs.push(a.reduced_associate());
        }
        let zero_vars: Vec<Var> = eqs.iter().filter_map(single_var).collect();
        let touched = |p: &Polynomial| {
            single_var(p).is_none() && zero_vars.iter().any(|v| p.contains_var(*v))
        };
        if touched(&open) || eqs.iter().any(touched) {
            let subst = |p: Polynomial| {
                if single_var(&p).is_some() {
                    p
                } else {
                    zero_vars.iter().fold(p, |p, v| p.substitute_zero(*v))
                }
            };
            let closed = eqs.into_iter().map(subst).collect();
            return Piece::normalized(subst(open), closed);
        }
        eqs.sort_by(Polynomial::canonical_cmp);
        eqs.dedup();
        if eqs.contains(&open) {
            return None;
        }
        Some(Piece { open, closed: eqs })
    }

    pub fn top(ring: &Ring) -> Piece {
        Piece {
            open: ring.one(),
            closed: Vec::new(),
        }
    }

    pub fn is_top(&self) -> bool {
        self.open.is_one() && self.closed.is_empty()
    }

    /// `(open != 0) & a_1 = 0 & ...`, omitting a trivial inequation.
    pub fn to_formula(&self) -> Formula {
        let open = (!self.open.is_one()).then(|| Formula::nonzero(self.open.clone()));
        Formula::and(
            open.into_iter()
                .chain(self.closed.iter().map(|a| Formula::atom(a.clone()))),
        )
    }

    fn conjoin(&self, other: &Piece) -> Option<Piece> {
        let mut closed = self.closed.clone();
        closed.extend(other.closed.iter().cloned());
        let open = if self.open.is_one() {
            other.open.clone()
        } else if other.open.is_one() {
            self.open.clone()
        } else {
            &self.open * &other.open
        };
        Piece::normalized(open, closed)
    }

    /// `self` contains `other` for syntactic reasons: its equations are a
    /// subset and its inequation is trivial or identical.
    fn subsumes(&self, other: &Piece) -> bool {
        (self.open.is_one() || self.open == other.open)
            && self.closed.iter().all(|a| other.closed.contains(a))
    }

    fn canonical_cmp(&self, other: &Piece) -> Ordering {
        self.closed
            .len()
            .cmp(&other.closed.len())
            .then_with(|| {
                self.closed
                    .iter()
                    .zip(&other.closed)
                    .map(|(a, b)| a.canonical_cmp(b))
                    .find(|o| o.is_ne())
                    .unwrap_or(Ordering::Equal)
            })
            .then_with(|| self.open.canonical_cmp(&other.open))
    }

    fn max_degree(&self) -> u32 {
        self.closed
            .iter()
            .map(Polynomial::total_degree)
            .chain([self.open.total_degree()])
            .max()
            .unwrap_or(0)
    }
}

/// A finite union of pieces over one ring. The empty union is `False`; the
/// single piece `(1, [])` is `True`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalDnf {
    ring: Ring,
    pieces: Vec<Piece>,
}

impl CanonicalDnf {
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn is_false(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_true(&self) -> bool {
        self.pieces.len() == 1 && self.pieces[0].is_top()
    }

    pub fn falsum(ring: &Ring) -> Self {
        CanonicalDnf {
            ring: ring.clone(),
            pieces: Vec::new(),
        }
    }

    pub fn verum(ring: &Ring) -> Self {
        CanonicalDnf {
            ring: ring.clone(),
            pieces: vec![Piece::top(ring)],
        }
    }

    /// Canonical form of an arbitrary list of pieces.
    pub fn from_pieces(ring: &Ring, pieces: Vec<Piece>, limits: &Limits) -> Result<Self> {
        let mut out = Vec::with_capacity(pieces.len());
        for p in pieces {
            p.open.check_ring(&ring.one())?;
            for a in &p.closed {
                a.check_ring(&ring.one())?;
            }
            if let Some(p) = Piece::normalized(p.open, p.closed) {
                limits.check_degree(p.max_degree())?;
                out.push(p);
            }
        }
        Ok(CanonicalDnf {
            ring: ring.clone(),
            pieces: simplify(out),
        })
    }

    pub fn to_formula(&self) -> Formula {
        Formula::or(self.pieces.iter().map(Piece::to_formula))
    }

    pub fn free_vars(&self) -> BTreeSet<Var> {
        self.to_formula().free_vars()
    }

    /// Moves the pieces to a smaller ring; the dropped variables must not occur.
    pub fn restrict(&self, ring: &Ring) -> Result<Self> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                Ok(Piece {
                    open: p.open.restrict(ring)?,
                    closed: p
                        .closed
                        .iter()
                        .map(|a| a.restrict(ring))
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(CanonicalDnf {
            ring: ring.clone(),
            pieces,
        })
    }

    pub fn embed(&self, ring: &Ring) -> Result<Self> {
        let pieces = self
            .pieces
            .iter()
            .map(|p| {
                Ok(Piece {
                    open: p.open.embed(ring)?,
                    closed: p
                        .closed
                        .iter()
                        .map(|a| a.embed(ring))
                        .collect::<Result<_>>()?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(CanonicalDnf {
            ring: ring.clone(),
            pieces,
        })
    }

    /// One line per piece, `piece: open: <b> closed: <a1>; <a2>` with `-`
    /// for an empty equation list, or the single line `empty`.
    pub fn piece_lines(&self) -> Vec<String> {
        if self.pieces.is_empty() {
            return vec!["empty".to_string()];
        }
        self.pieces
            .iter()
            .map(|p| {
                let closed = if p.closed.is_empty() {
                    "-".to_string()
                } else {
                    p.closed
                        .iter()
                        .map(|a| a.to_string())
                        .collect::<Vec<_>>()
                        .join("; ")
                };
                format!("piece: open: {} closed: {}", p.open, closed)
            })
            .collect()
    }
}

impl fmt::Display for CanonicalDnf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.piece_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Deduplicates, drops syntactically subsumed pieces and sorts.
fn simplify(mut pieces: Vec<Piece>) -> Vec<Piece> {
    pieces.sort_by(Piece::canonical_cmp);
    pieces.dedup();
    // After dedup, two pieces subsume each other only if equal.
    let drop: Vec<bool> = pieces
        .iter()
        .enumerate()
        .map(|(i, p)| {
            pieces
                .iter()
                .enumerate()
                .any(|(j, q)| i != j && q.subsumes(p))
        })
        .collect();
    pieces
        .into_iter()
        .zip(drop)
        .filter_map(|(p, d)| (!d).then_some(p))
        .collect()
}

pub fn to_canonical_dnf(phi: &Formula, ring: &Ring) -> Result<CanonicalDnf> {
    to_canonical_dnf_with(phi, ring, &Limits::default())
}

/// Canonical disjunctive form of a quantifier-free formula.
pub fn to_canonical_dnf_with(phi: &Formula, ring: &Ring, limits: &Limits) -> Result<CanonicalDnf> {
    if !phi.is_quantifier_free() {
        return Err(Error::usage(
            "canonical form requires a quantifier-free formula",
        ));
    }
    for p in phi.atoms() {
        p.check_ring(&ring.one())?;
    }
    let pieces = build(&to_nnf(phi), ring, limits)?;
    Ok(CanonicalDnf {
        ring: ring.clone(),
        pieces,
    })
}

fn build(phi: &Formula, ring: &Ring, limits: &Limits) -> Result<Vec<Piece>> {
    Ok(match phi {
        Formula::True => vec![Piece::top(ring)],
        Formula::False => Vec::new(),
        Formula::Atom(a) => Piece::normalized(ring.one(), vec![a.clone()])
            .into_iter()
            .collect(),
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Atom(b) => Piece::normalized(b.clone(), Vec::new())
                .into_iter()
                .collect(),
            _ => unreachable!("negation normal form"),
        },
        Formula::Or(parts) => {
            let mut out = Vec::new();
            for part in parts {
                out.extend(build(part, ring, limits)?);
                limits.check_pieces(out.len())?;
            }
            simplify(out)
        }
        Formula::And(parts) => {
            let mut acc = vec![Piece::top(ring)];
            for part in parts {
                let rhs = build(part, ring, limits)?;
                limits.check_pieces(acc.len().saturating_mul(rhs.len()))?;
                let mut next = Vec::with_capacity(acc.len() * rhs.len());
                for p in &acc {
                    for q in &rhs {
                        if let Some(m) = p.conjoin(q) {
                            limits.check_degree(m.open.total_degree())?;
                            next.push(m);
                        }
                    }
                }
                acc = simplify(next);
                if acc.is_empty() {
                    break;
                }
            }
            acc
        }
        Formula::Exists(..) | Formula::Forall(..) => unreachable!("checked quantifier-free"),
    })
}
