//! Finite-field model checking.
//!
//! Points are assignments over `F_{p^m}`; quantifiers are decided by
//! exhaustive search over finite extensions large enough to contain the
//! relevant roots. Used to validate eliminations and images.

mod search;
mod table;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::coeff::{evaluate, ff_extension, is_prime, BaseDomain, FieldDesc, FieldElem, Ring};
use crate::error::{Error, Result};
use crate::formula::Formula;

use search::Compiled;
pub use search::BUDGET_MULTIPLIER;
use table::Tower;

/// An assignment of field elements to variable names.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub field: Arc<FieldDesc>,
    pub assignment: BTreeMap<String, FieldElem>,
}

impl Point {
    pub fn new(
        field: &Arc<FieldDesc>,
        values: impl IntoIterator<Item = (impl Into<String>, u64)>,
    ) -> Point {
        Point {
            field: field.clone(),
            assignment: values
                .into_iter()
                .map(|(n, i)| (n.into(), field.element(i)))
                .collect(),
        }
    }

    /// The same point viewed in an extension field.
    pub fn embed(&self, target: &Arc<FieldDesc>) -> Result<Point> {
        Ok(Point {
            field: target.clone(),
            assignment: self
                .assignment
                .iter()
                .map(|(n, v)| Ok((n.clone(), v.embed(target)?)))
                .collect::<Result<_>>()?,
        })
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (p, m) = (self.field.characteristic(), self.field.degree());
        if m == 1 {
            write!(f, "F_{p}")?;
        } else {
            write!(f, "F_{p}^{m}")?;
        }
        for (i, (n, v)) in self.assignment.iter().enumerate() {
            write!(f, "{}{n} = {v}", if i == 0 { ": " } else { ", " })?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OracleConfig {
    pub primes: Vec<u64>,
    /// point fields are `F_{p^m}` for `m <= base_ext`
    pub base_ext: u32,
    /// largest absolute extension degree searched for witnesses
    pub witness_cap: u32,
    /// points per field before switching to seeded sampling
    pub sample_cap: u64,
    pub seed: u64,
}

impl Default for OracleConfig {
    fn default() -> Self {
        OracleConfig {
            primes: vec![2, 3, 5],
            base_ext: 2,
            witness_cap: 8,
            sample_cap: 10_000,
            seed: 0,
        }
    }
}

impl OracleConfig {
    pub fn validate(&self) -> Result<()> {
        if self.primes.is_empty() {
            return Err(Error::usage("at least one prime is required"));
        }
        if let Some(p) = self.primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::usage(format!("{p} is not a prime")));
        }
        if self.base_ext == 0 || self.witness_cap == 0 || self.sample_cap == 0 {
            return Err(Error::usage("oracle caps must be at least 1"));
        }
        Ok(())
    }

    fn budget(&self) -> u64 {
        self.sample_cap.saturating_mul(BUDGET_MULTIPLIER)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Inconclusive => "inconclusive",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub point: Point,
    pub lhs: bool,
    pub rhs: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Report {
    pub verdict: Verdict,
    pub counterexamples: Vec<Counterexample>,
    pub points_tested: u64,
    /// points where both sides were decided
    pub definite: u64,
    /// points where a witness cap or the search budget was hit
    pub inconclusive: u64,
    /// points dropped because a coefficient has no image mod p
    pub skipped: u64,
}

impl Report {
    /// Verdict line, counts, and at most `limit` counterexamples.
    pub fn summary(&self, limit: usize) -> String {
        let mut out = format!(
            "verdict: {}\npoints tested: {} (definite {}, inconclusive {}, skipped {})\n",
            self.verdict, self.points_tested, self.definite, self.inconclusive, self.skipped
        );
        for c in self.counterexamples.iter().take(limit) {
            out.push_str(&format!(
                "counterexample: {}; lhs {}, rhs {}\n",
                c.point, c.lhs, c.rhs
            ));
        }
        out
    }
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary(usize::MAX))
    }
}

/// Truth of a quantifier-free formula at a point.
pub fn eval_qf_at_point(phi: &Formula, ring: &Ring, pt: &Point) -> Result<bool> {
    if !phi.is_quantifier_free() {
        return Err(Error::usage("formula has quantifiers"));
    }
    let mut assignment = BTreeMap::new();
    for v in phi.free_vars() {
        let name = ring.name(v);
        let value = pt
            .assignment
            .get(name)
            .ok_or_else(|| Error::usage(format!("no value for variable `{name}`")))?;
        if value.field() != &pt.field {
            return Err(Error::usage("assignment mixes fields"));
        }
        assignment.insert(v, value.clone());
    }
    eval_qf(phi, &pt.field, &assignment)
}

fn eval_qf(
    phi: &Formula,
    field: &Arc<FieldDesc>,
    a: &BTreeMap<crate::coeff::Var, FieldElem>,
) -> Result<bool> {
    Ok(match phi {
        Formula::True => true,
        Formula::False => false,
        Formula::Atom(p) => evaluate(p, field, a)?.is_zero(),
        Formula::Not(g) => !eval_qf(g, field, a)?,
        Formula::And(gs) => {
            for g in gs {
                if !eval_qf(g, field, a)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Or(gs) => {
            for g in gs {
                if eval_qf(g, field, a)? {
                    return Ok(true);
                }
            }
            false
        }
        Formula::Exists(..) | Formula::Forall(..) => unreachable!("checked quantifier-free"),
    })
}

/// Truth of `phi` at `pt`, searching quantified variables over extensions
/// of the point field. `None` when the witness cap truncates the search.
pub fn brute_decide(
    phi: &Formula,
    ring: &Ring,
    pt: &Point,
    cfg: &OracleConfig,
) -> Result<Option<bool>> {
    cfg.validate()?;
    let (p, m) = (pt.field.characteristic(), pt.field.degree());
    if *pt.field != *ff_extension(p, m)? {
        return Err(Error::usage("point field must use the standard modulus"));
    }
    let names: Vec<String> = pt.assignment.keys().cloned().collect();
    let compiled = Compiled::new(phi, ring, &names, p)?;
    let mut tower = Tower::new(p);
    tower.ensure(m)?;
    let field = tower.field(m);
    let values: Vec<u32> = pt
        .assignment
        .values()
        .map(|v| field.log_of_index(v.index()))
        .collect();
    compiled.decide(&mut tower, m, &values, cfg.witness_cap, cfg.budget())
}

/// Compares `lhs` and `rhs` at every point (or a seeded sample of points)
/// of `F_{p^m}` for the configured primes and `m <= base_ext`.
///
/// Variables are matched by name; the point coordinates are the free
/// variables of both formulas, in name order.
pub fn equiv_check(
    lhs: &Formula,
    lhs_ring: &Ring,
    rhs: &Formula,
    rhs_ring: &Ring,
    cfg: &OracleConfig,
) -> Result<Report> {
    cfg.validate()?;
    if lhs_ring.base() != rhs_ring.base() {
        return Err(Error::usage("formulas are over different bases"));
    }
    let names = coordinate_names(lhs, lhs_ring, rhs, rhs_ring);
    let primes = match lhs_ring.base() {
        BaseDomain::PrimeField(q) => vec![*q],
        _ => cfg.primes.clone(),
    };

    let mut report = Report {
        verdict: Verdict::Inconclusive,
        counterexamples: Vec::new(),
        points_tested: 0,
        definite: 0,
        inconclusive: 0,
        skipped: 0,
    };
    for p in primes {
        let sides = Compiled::new(lhs, lhs_ring, &names, p)
            .and_then(|l| Ok((l, Compiled::new(rhs, rhs_ring, &names, p)?)));
        let mut tower = Tower::new(p);
        for m in 1..=cfg.base_ext {
            let q = p
                .checked_pow(m)
                .ok_or_else(|| Error::resource("field-size", format!("{p}^{m}")))?;
            let (l, r) = match &sides {
                Ok(s) => s,
                Err(Error::Eval(_)) => {
                    let n = point_count(q, names.len(), cfg.sample_cap);
                    report.points_tested += n;
                    report.skipped += n;
                    continue;
                }
                Err(e) => return Err(e.clone()),
            };
            tower.ensure(m)?;
            for idx in points(q, names.len(), cfg, p, m) {
                let values: Vec<u32> = idx
                    .iter()
                    .map(|&i| tower.field(m).log_of_index(i))
                    .collect();
                report.points_tested += 1;
                let a = outcome(l.decide(&mut tower, m, &values, cfg.witness_cap, cfg.budget()))?;
                let b = outcome(r.decide(&mut tower, m, &values, cfg.witness_cap, cfg.budget()))?;
                match (a, b) {
                    (Some(a), Some(b)) => {
                        report.definite += 1;
                        if a != b {
                            let desc = tower.field(m).desc.clone();
                            report.counterexamples.push(Counterexample {
                                point: Point::new(&desc, names.iter().cloned().zip(idx)),
                                lhs: a,
                                rhs: b,
                            });
                        }
                    }
                    _ => report.inconclusive += 1,
                }
            }
        }
    }
    report.verdict = if !report.counterexamples.is_empty() {
        Verdict::Fail
    } else if report.definite > 0 {
        Verdict::Pass
    } else {
        Verdict::Inconclusive
    };
    Ok(report)
}

fn outcome(r: Result<Option<bool>>) -> Result<Option<bool>> {
    match r {
        Err(Error::Resource { .. }) => Ok(None),
        other => other,
    }
}

fn coordinate_names(lhs: &Formula, lr: &Ring, rhs: &Formula, rr: &Ring) -> Vec<String> {
    let mut names = BTreeSet::new();
    for (phi, ring) in [(lhs, lr), (rhs, rr)] {
        names.extend(
            phi.free_vars()
                .into_iter()
                .map(|v| ring.name(v).to_string()),
        );
    }
    names.into_iter().collect()
}

fn point_count(q: u64, n: usize, cap: u64) -> u64 {
    q.checked_pow(n as u32).map_or(cap, |t| t.min(cap))
}

/// Encoding indices of the points to test: all of `F_q^n` in lexicographic
/// order when there are at most `sample_cap`, else a seeded sample.
fn points(
    q: u64,
    n: usize,
    cfg: &OracleConfig,
    p: u64,
    m: u32,
) -> Box<dyn Iterator<Item = Vec<u64>>> {
    match q.checked_pow(n as u32).filter(|&t| t <= cfg.sample_cap) {
        Some(total) => Box::new((0..total).map(move |mut i| {
            let mut idx = vec![0; n];
            for slot in idx.iter_mut().rev() {
                *slot = i % q;
                i /= q;
            }
            idx
        })),
        None => {
            let seed = cfg.seed ^ (p << 32) ^ m as u64;
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            Box::new(
                (0..cfg.sample_cap).map(move |_| (0..n).map(|_| rng.gen_range(0..q)).collect()),
            )
        }
    }
}

#[cfg(test)]
mod tests;
