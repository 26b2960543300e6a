//! Images of `Spec S -> Spec R` for finitely presented `S = R[t]/(f)`.
//!
//! The image of a presentation is the set of parameter points over which the
//! relations have a common solution. Eliminating the generators from the
//! image formula gives it as a finite union of pieces `D(b) ∩ V(a_1..a_k)`.

use std::fmt;

use crate::coeff::{BaseDomain, Polynomial, Ring, Var, VarKind, VarTable};
use crate::error::{Error, Result};
use crate::formula::{parse_polynomial, to_canonical_dnf_with, CanonicalDnf, Formula};
use crate::limits::Limits;
use crate::oracle::{eval_qf_at_point, Point};
use crate::qe::eliminate_all_dnf;

/// `R[gens] / (rels)` with `R = base[params]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Presentation {
    ring: Ring,
    nparams: usize,
    rels: Vec<Polynomial>,
}

impl Presentation {
    /// Relations are parsed over `params` followed by `gens`.
    pub fn new<S: AsRef<str>>(
        base: BaseDomain,
        params: &[S],
        gens: &[S],
        rels: &[S],
    ) -> Result<Self> {
        let ring = presentation_ring(base, params, gens)?;
        let rels = rels
            .iter()
            .map(|r| parse_polynomial(r.as_ref(), &ring))
            .collect::<Result<_>>()?;
        Ok(Presentation {
            ring,
            nparams: params.len(),
            rels,
        })
    }

    /// From relations already built over a ring whose first `nparams`
    /// variables are the parameters.
    pub fn from_polynomials(ring: &Ring, nparams: usize, rels: Vec<Polynomial>) -> Result<Self> {
        if nparams > ring.nvars() {
            return Err(Error::usage("more parameters than ring variables"));
        }
        for r in &rels {
            r.check_ring(&ring.one())?;
        }
        Ok(Presentation {
            ring: ring.clone(),
            nparams,
            rels,
        })
    }

    /// Reads the line-oriented presentation format:
    ///
    /// ```text
    /// base z            # or q, or fp <prime>
    /// params u
    /// gens t
    /// rel u*t - 1
    /// ```
    ///
    /// `default_base` applies when the text has no `base` line.
    pub fn parse(text: &str, default_base: &BaseDomain) -> Result<Self> {
        let mut base: Option<BaseDomain> = None;
        let mut params: Option<Vec<String>> = None;
        let mut gens: Option<Vec<String>> = None;
        let mut rels: Vec<(usize, usize, &str)> = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = i + 1;
            let content = raw.split('#').next().unwrap_or("");
            let trimmed = content.trim_start();
            if trimmed.is_empty() {
                continue;
            }
            let indent = content.len() - trimmed.len();
            let (key, rest) = trimmed
                .split_once(char::is_whitespace)
                .unwrap_or((trimmed, ""));
            let rest_col = indent + key.len() + 2;
            let syntax = |col: usize, msg: String| Error::Syntax { line, col, msg };
            match key {
                "base" => {
                    if base.is_some() {
                        return Err(syntax(indent + 1, "duplicate `base` line".into()));
                    }
                    base = Some(parse_base(rest).map_err(|m| syntax(rest_col, m))?);
                }
                "params" | "gens" => {
                    let slot = if key == "params" {
                        &mut params
                    } else {
                        &mut gens
                    };
                    if slot.is_some() {
                        return Err(syntax(indent + 1, format!("duplicate `{key}` line")));
                    }
                    let names: Vec<String> = rest
                        .split(|c: char| c == ',' || c.is_whitespace())
                        .filter(|s| !s.is_empty())
                        .map(str::to_string)
                        .collect();
                    *slot = Some(names);
                }
                "rel" => rels.push((line, rest_col, rest)),
                other => {
                    return Err(syntax(indent + 1, format!("unknown directive `{other}`")));
                }
            }
        }
        let base = base.unwrap_or_else(|| default_base.clone());
        let params = params.unwrap_or_default();
        let gens = gens.unwrap_or_default();
        let ring = presentation_ring(base, &params, &gens)?;
        let rels = rels
            .into_iter()
            .map(|(line, col, text)| {
                parse_polynomial(text, &ring).map_err(|e| relocate(e, line, col))
            })
            .collect::<Result<_>>()?;
        Ok(Presentation {
            ring,
            nparams: params.len(),
            rels,
        })
    }

    /// The ring `base[params, gens]` the relations live in.
    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// `R = base[params]`.
    pub fn param_ring(&self) -> Ring {
        let vars = VarTable::new(
            self.ring
                .vars()
                .vars()
                .take(self.nparams)
                .map(|v| (self.ring.name(v).to_string(), VarKind::Param)),
        )
        .expect("names were valid in the full ring");
        Ring::new(self.ring.base().clone(), vars)
    }

    pub fn params(&self) -> Vec<&str> {
        (0..self.nparams).map(|i| self.ring.name(Var(i))).collect()
    }

    pub fn gens(&self) -> Vec<&str> {
        (self.nparams..self.ring.nvars())
            .map(|i| self.ring.name(Var(i)))
            .collect()
    }

    pub fn rels(&self) -> &[Polynomial] {
        &self.rels
    }

    /// `exists t_1 ... t_n. AND f_j = 0`, over [`Presentation::ring`].
    pub fn image_formula(&self) -> Formula {
        self.lift_formula(Formula::and(
            self.rels.iter().map(|f| Formula::atom(f.clone())),
        ))
    }

    fn lift_formula(&self, body: Formula) -> Formula {
        (self.nparams..self.ring.nvars())
            .rev()
            .fold(body, |acc, i| Formula::exists(Var(i), acc))
    }

    /// Image of a constructible subset of `Spec S`, given over the full ring.
    pub fn image_of(&self, set: &ConstructibleSet, limits: &Limits) -> Result<ConstructibleSet> {
        if set.ring() != &self.ring {
            return Err(Error::usage("set is not over the presentation ring"));
        }
        let rels = self.rels.iter().map(|f| Formula::atom(f.clone()));
        let body = Formula::and(rels.chain([set.to_formula()]));
        let dnf = eliminate_all_dnf(&self.lift_formula(body), &self.ring, limits)?;
        Ok(ConstructibleSet {
            dnf: dnf.restrict(&self.param_ring())?,
        })
    }
}

fn presentation_ring<S: AsRef<str>>(base: BaseDomain, params: &[S], gens: &[S]) -> Result<Ring> {
    let entries = params
        .iter()
        .map(|n| (n.as_ref(), VarKind::Param))
        .chain(gens.iter().map(|n| (n.as_ref(), VarKind::Bound)));
    Ok(Ring::new(base, VarTable::new(entries)?))
}

fn parse_base(text: &str) -> std::result::Result<BaseDomain, String> {
    let words: Vec<&str> = text.split_whitespace().collect();
    match words.as_slice() {
        ["z"] => Ok(BaseDomain::Integers),
        ["q"] => Ok(BaseDomain::Rationals),
        ["fp", p] => {
            let p: u64 = p.parse().map_err(|_| format!("`{p}` is not a prime"))?;
            BaseDomain::prime_field(p).map_err(|e| e.to_string())
        }
        _ => Err(format!(
            "expected `z`, `q` or `fp <prime>`, found `{}`",
            text.trim()
        )),
    }
}

fn relocate(e: Error, line: usize, col: usize) -> Error {
    match e {
        Error::Syntax { col: c, msg, .. } => Error::Syntax {
            line,
            col: col + c - 1,
            msg,
        },
        Error::Name { col: c, name, .. } => Error::Name {
            line,
            col: col + c - 1,
            name,
        },
        other => other,
    }
}

/// A finite union of pieces `D(b) ∩ V(a_1, ..., a_k)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstructibleSet {
    dnf: CanonicalDnf,
}

impl ConstructibleSet {
    pub fn new(dnf: CanonicalDnf) -> Self {
        ConstructibleSet { dnf }
    }

    /// The set defined by a quantifier-free formula.
    pub fn from_formula(phi: &Formula, ring: &Ring) -> Result<Self> {
        Ok(ConstructibleSet {
            dnf: to_canonical_dnf_with(phi, ring, &Limits::default())?,
        })
    }

    pub fn empty(ring: &Ring) -> Self {
        ConstructibleSet {
            dnf: CanonicalDnf::falsum(ring),
        }
    }

    pub fn whole(ring: &Ring) -> Self {
        ConstructibleSet {
            dnf: CanonicalDnf::verum(ring),
        }
    }

    pub fn dnf(&self) -> &CanonicalDnf {
        &self.dnf
    }

    pub fn ring(&self) -> &Ring {
        self.dnf.ring()
    }

    pub fn to_formula(&self) -> Formula {
        self.dnf.to_formula()
    }

    pub fn piece_lines(&self) -> Vec<String> {
        self.dnf.piece_lines()
    }

    pub fn contains(&self, pt: &Point) -> Result<bool> {
        eval_qf_at_point(&self.to_formula(), self.ring(), pt)
    }
}

impl fmt::Display for ConstructibleSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for line in self.piece_lines() {
            writeln!(f, "{line}")?;
        }
        Ok(())
    }
}

/// Image of `Spec S -> Spec R` as a constructible subset of `Spec R`.
pub fn chevalley_image(p: &Presentation) -> Result<ConstructibleSet> {
    chevalley_image_with(p, &Limits::default())
}

pub fn chevalley_image_with(p: &Presentation, limits: &Limits) -> Result<ConstructibleSet> {
    let dnf = eliminate_all_dnf(&p.image_formula(), p.ring(), limits)?;
    Ok(ConstructibleSet {
        dnf: dnf.restrict(&p.param_ring())?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BoolOp {
    Union,
    Intersect,
    Complement,
}

/// Syntactic boolean algebra, re-canonicalized. `b` is required for union
/// and intersection and must be absent for complement.
pub fn constructible_bool(
    op: BoolOp,
    a: &ConstructibleSet,
    b: Option<&ConstructibleSet>,
) -> Result<ConstructibleSet> {
    let fa = a.to_formula();
    let phi = match (op, b) {
        (BoolOp::Complement, None) => fa.negate(),
        (BoolOp::Complement, Some(_)) => return Err(Error::usage("complement takes one set")),
        (_, None) => return Err(Error::usage("union and intersection take two sets")),
        (op, Some(b)) => {
            if a.ring() != b.ring() {
                return Err(Error::usage("sets are over different parameter rings"));
            }
            let fb = b.to_formula();
            if op == BoolOp::Union {
                Formula::or([fa, fb])
            } else {
                Formula::and([fa, fb])
            }
        }
    };
    ConstructibleSet::from_formula(&phi, a.ring())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::coeff::ff_extension;
    use crate::formula::{parse, render};

    fn pres(params: &[&str], gens: &[&str], rels: &[&str]) -> Presentation {
        Presentation::new(BaseDomain::Integers, params, gens, rels).unwrap()
    }

    fn set(text: &str, params: &[&str]) -> ConstructibleSet {
        let r = Ring::new(
            BaseDomain::Integers,
            VarTable::params(params.iter().copied()).unwrap(),
        );
        let (r, f) = parse(text, &r).unwrap();
        ConstructibleSet::from_formula(&f, &r).unwrap()
    }

    #[test]
    fn image_formulas() {
        let loc = pres(&["u"], &["t"], &["u*t - 1"]);
        assert_eq!(
            render(&loc.image_formula(), loc.ring()),
            "exists t. u*t - 1 = 0"
        );
        let free = pres(&[], &["t"], &[]);
        assert_eq!(
            free.image_formula(),
            Formula::exists(crate::coeff::Var(0), Formula::True)
        );
        let zero = pres(&[], &[], &["1"]);
        assert_eq!(zero.image_formula(), Formula::False);
    }

    #[test]
    fn images() {
        let loc = pres(&["u"], &["t"], &["u*t - 1"]);
        assert_eq!(
            chevalley_image(&loc).unwrap().piece_lines(),
            ["piece: open: u closed: -"]
        );
        let lin = pres(&["a", "b"], &["t"], &["a*t + b"]);
        assert_eq!(
            chevalley_image(&lin).unwrap().piece_lines(),
            ["piece: open: a closed: -", "piece: open: 1 closed: a; b"]
        );
        let id = pres(&["u"], &[], &[]);
        assert_eq!(
            chevalley_image(&id).unwrap().piece_lines(),
            ["piece: open: 1 closed: -"]
        );
        let zero = pres(&[], &[], &["1"]);
        assert_eq!(chevalley_image(&zero).unwrap().piece_lines(), ["empty"]);
    }

    #[test]
    fn boolean_examples() {
        let du = set("u != 0", &["u", "v"]);
        let dv = set("v != 0", &["u", "v"]);
        let c = constructible_bool(BoolOp::Complement, &du, None).unwrap();
        assert_eq!(c.piece_lines(), ["piece: open: 1 closed: u"]);
        let i = constructible_bool(BoolOp::Intersect, &du, Some(&dv)).unwrap();
        assert_eq!(i.piece_lines(), ["piece: open: u*v closed: -"]);
        let u = constructible_bool(BoolOp::Union, &du, Some(&c)).unwrap();
        assert_eq!(
            u.piece_lines(),
            ["piece: open: u closed: -", "piece: open: 1 closed: u"]
        );

        let other = set("u != 0", &["u"]);
        assert!(matches!(
            constructible_bool(BoolOp::Union, &du, Some(&other)),
            Err(Error::Usage(_))
        ));
        assert!(constructible_bool(BoolOp::Union, &du, None).is_err());
    }

    #[test]
    fn presentation_files() {
        let text = "# localization\nbase z\nparams u\ngens t\nrel u*t - 1   # the inverse\n";
        let p = Presentation::parse(text, &BaseDomain::Integers).unwrap();
        assert_eq!(p.params(), ["u"]);
        assert_eq!(p.gens(), ["t"]);
        assert_eq!(p, pres(&["u"], &["t"], &["u*t - 1"]));

        let p = Presentation::parse(
            "base fp 5\nparams a, b\ngens x y\nrel a*x + b*y\nrel x*y - 1",
            &BaseDomain::Integers,
        )
        .unwrap();
        assert_eq!(p.ring().base(), &BaseDomain::PrimeField(5));
        assert_eq!(p.rels().len(), 2);

        let err = Presentation::parse("params u\ngens t\nrel u*s - 1", &BaseDomain::Integers)
            .unwrap_err();
        assert_eq!(
            err,
            Error::Name {
                line: 3,
                col: 7,
                name: "s".into()
            }
        );
        let err = Presentation::parse("params u\nrel u +", &BaseDomain::Integers).unwrap_err();
        assert!(matches!(err, Error::Syntax { line: 2, .. }));
        let err = Presentation::parse("base r\n", &BaseDomain::Integers).unwrap_err();
        assert!(matches!(
            err,
            Error::Syntax {
                line: 1,
                col: 6,
                ..
            }
        ));
        assert!(Presentation::parse("params u\ngens u", &BaseDomain::Integers).is_err());
        assert!(Presentation::parse("relation x", &BaseDomain::Integers).is_err());
    }

    #[test]
    fn membership_depends_on_vanishing_pattern() {
        let s = set("a*b != 0 | a = 0 & b - 1 = 0", &["a", "b"]);
        let f3 = ff_extension(3, 1).unwrap();
        assert!(s.contains(&Point::new(&f3, [("a", 1), ("b", 2)])).unwrap());
        assert!(s.contains(&Point::new(&f3, [("a", 0), ("b", 1)])).unwrap());
        assert!(!s.contains(&Point::new(&f3, [("a", 0), ("b", 2)])).unwrap());
    }
}
