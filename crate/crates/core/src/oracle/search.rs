//! Compiled formulas and bounded quantifier search.

use crate::coeff::{coeff_residue, Ring};
use crate::error::{Error, Result};
use crate::formula::{to_prenex, Formula, Quantifier};

use super::table::{Tower, ZERO};

/// Leaf evaluations allowed per decision, as a multiple of the sample cap.
pub const BUDGET_MULTIPLIER: u64 = 20;

struct Term {
    coeff: u64,
    powers: Vec<(usize, u32)>,
}

enum Node {
    Const(bool),
    /// true when the atom vanishes
    Atom(usize),
    Not(Box<Node>),
    And(Vec<Node>),
    Or(Vec<Node>),
}

struct Level {
    q: Quantifier,
    slot: usize,
    /// largest degree of the variable in one atom
    degree: u32,
    /// sum of its degrees over all atoms
    total: u32,
}

/// A prenex formula reduced mod `p`, with variables mapped to slots.
///
/// Slots `0..names.len()` hold the point, the rest the bound variables.
pub(crate) struct Compiled {
    slots: usize,
    prefix: Vec<Level>,
    atoms: Vec<Vec<Term>>,
    matrix: Node,
}

impl Compiled {
    pub fn new(phi: &Formula, ring: &Ring, names: &[String], p: u64) -> Result<Self> {
        let (work, pre) = to_prenex(phi, ring)?;
        let free = pre.free_vars();
        let mut slot_of: Vec<Option<usize>> = vec![None; work.nvars()];
        for (i, name) in names.iter().enumerate() {
            if let Some(v) = work.var(name) {
                if free.contains(&v) {
                    slot_of[v.0] = Some(i);
                }
            }
        }
        if let Some(v) = free.iter().find(|v| slot_of[v.0].is_none()) {
            return Err(Error::usage(format!(
                "no value for variable `{}`",
                work.name(*v)
            )));
        }
        let (prefix, matrix) = pre.split_prefix();
        let mut slots = names.len();
        let mut levels = Vec::with_capacity(prefix.len());
        for &(q, x) in &prefix {
            slot_of[x.0] = Some(slots);
            levels.push(Level {
                q,
                slot: slots,
                degree: 0,
                total: 0,
            });
            slots += 1;
        }

        let mut atoms = Vec::new();
        let base = work.base();
        for a in matrix.atoms() {
            let mut terms = Vec::new();
            for (m, c) in a.terms() {
                let coeff = coeff_residue(c, base, p)?;
                if coeff == 0 {
                    continue;
                }
                let powers = m
                    .exponents()
                    .iter()
                    .enumerate()
                    .filter(|(_, &e)| e > 0)
                    .map(|(i, &e)| (slot_of[i].expect("variable has a slot"), e))
                    .collect();
                terms.push(Term { coeff, powers });
            }
            atoms.push(terms);
        }
        for (level, &(_, x)) in levels.iter_mut().zip(&prefix) {
            for a in matrix.atoms() {
                let d = a.degree_in(x);
                level.degree = level.degree.max(d);
                level.total += d;
            }
        }
        let mut next = 0;
        let matrix = node(matrix, &mut next);
        Ok(Compiled {
            slots,
            prefix: levels,
            atoms,
            matrix,
        })
    }

    /// Truth at a point of `F_{p^m}` (values as logs in that field).
    ///
    /// `None` when a witness field would exceed `witness_cap`; a resource
    /// error when the search would exceed `budget` leaf evaluations.
    pub fn decide(
        &self,
        tower: &mut Tower,
        m: u32,
        point: &[u32],
        witness_cap: u32,
        budget: u64,
    ) -> Result<Option<bool>> {
        // Witness field degrees along the prefix.
        let mut degrees = Vec::with_capacity(self.prefix.len());
        let mut k = m;
        let mut leaves: u64 = 1;
        for level in &self.prefix {
            if level.degree > 0 {
                let q = size_of(tower, k);
                let mu = witness_degree(q, level.degree, level.total);
                k = match k.checked_mul(mu) {
                    Some(k) if k <= witness_cap => k,
                    _ => return Ok(None),
                };
                leaves = leaves.saturating_mul(size_of(tower, k));
                if leaves > budget {
                    return Err(Error::resource(
                        "oracle-budget",
                        format!("quantifier search needs more than {budget} evaluations"),
                    ));
                }
            }
            degrees.push(k);
        }
        let mut prev = m;
        tower.ensure(m)?;
        for &k in &degrees {
            tower.ensure_embedding(prev, k)?;
            prev = k;
        }
        let mut vals = vec![ZERO; self.slots];
        vals[..point.len()].copy_from_slice(point);
        Ok(self.search(tower, &degrees, 0, m, &mut vals))
    }

    fn search(
        &self,
        tower: &Tower,
        degrees: &[u32],
        i: usize,
        k: u32,
        vals: &mut Vec<u32>,
    ) -> Option<bool> {
        let Some(level) = self.prefix.get(i) else {
            return Some(self.eval(tower, k, vals));
        };
        if level.degree == 0 {
            return self.search(tower, degrees, i + 1, k, vals);
        }
        let k2 = degrees[i];
        let saved = (k2 != k).then(|| {
            let old = vals.clone();
            for v in vals.iter_mut().take(level.slot) {
                *v = tower.embed(k, k2, *v);
            }
            old
        });
        let field = tower.field(k2);
        let stop = matches!(level.q, Quantifier::Exists);
        let mut unknown = false;
        let mut result = None;
        for idx in 0..field.size() {
            vals[level.slot] = field.log_of_index(idx);
            match self.search(tower, degrees, i + 1, k2, vals) {
                Some(t) if t == stop => {
                    result = Some(stop);
                    break;
                }
                Some(_) => {}
                None => unknown = true,
            }
        }
        if let Some(old) = saved {
            *vals = old;
        }
        match result {
            Some(t) => Some(t),
            None if unknown => None,
            None => Some(!stop),
        }
    }

    fn eval(&self, tower: &Tower, k: u32, vals: &[u32]) -> bool {
        let f = tower.field(k);
        let vanishes = |a: usize| {
            let mut acc = ZERO;
            'terms: for t in &self.atoms[a] {
                let mut l = f.constant(t.coeff);
                for &(s, e) in &t.powers {
                    let v = vals[s];
                    if v == ZERO {
                        continue 'terms;
                    }
                    l = f.mul_pow(l, v, e);
                }
                acc = f.add(acc, l);
            }
            acc == ZERO
        };
        eval_node(&self.matrix, &vanishes)
    }
}

fn eval_node(n: &Node, vanishes: &impl Fn(usize) -> bool) -> bool {
    match n {
        Node::Const(b) => *b,
        Node::Atom(a) => vanishes(*a),
        Node::Not(g) => !eval_node(g, vanishes),
        Node::And(gs) => gs.iter().all(|g| eval_node(g, vanishes)),
        Node::Or(gs) => gs.iter().any(|g| eval_node(g, vanishes)),
    }
}

/// Numbers atoms in the order of [`Formula::atoms`].
fn node(phi: &Formula, next: &mut usize) -> Node {
    match phi {
        Formula::True => Node::Const(true),
        Formula::False => Node::Const(false),
        Formula::Atom(_) => {
            *next += 1;
            Node::Atom(*next - 1)
        }
        Formula::Not(g) => Node::Not(Box::new(node(g, next))),
        Formula::And(gs) => Node::And(gs.iter().map(|g| node(g, next)).collect()),
        Formula::Or(gs) => Node::Or(gs.iter().map(|g| node(g, next)).collect()),
        Formula::Exists(..) | Formula::Forall(..) => unreachable!("matrix is quantifier-free"),
    }
}

fn size_of(tower: &Tower, k: u32) -> u64 {
    tower.characteristic().checked_pow(k).unwrap_or(u64::MAX)
}

/// Extension degree `mu` for searching a variable of degree `d` (summed
/// degree `total`) over a field of size `q`: a multiple of `lcm(1..=d)`, so
/// that every root of every atom is present, with `q^mu > total`, so that
/// some point avoids all roots.
pub(crate) fn witness_degree(q: u64, d: u32, total: u32) -> u32 {
    let mut l: u64 = 1;
    for i in 1..=d as u64 {
        l = l / gcd(l, i) * i;
        if l > u32::MAX as u64 {
            return u32::MAX;
        }
    }
    let l = l as u32;
    let mut mu = l;
    while (q as u128)
        .checked_pow(mu)
        .is_some_and(|s| s <= total as u128)
    {
        mu += l;
    }
    mu
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_degrees() {
        assert_eq!(witness_degree(2, 1, 1), 1);
        assert_eq!(witness_degree(2, 1, 2), 2);
        assert_eq!(witness_degree(2, 2, 2), 2);
        assert_eq!(witness_degree(5, 3, 3), 6);
        assert_eq!(witness_degree(2, 2, 4), 4);
    }
}
