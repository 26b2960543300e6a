//! Recursive-descent parser for formulas and polynomials.
//!
//! ```text
//! formula := ('exists' | 'forall') IDENT '.' formula | disj
//! disj    := conj ('|' conj)*
//! conj    := neg ('&' neg)*
//! neg     := '!' neg | '(' formula ')' | atom
//! atom    := poly ('=' | '!=') poly
//! ```
//!
//! Quantifiers are also accepted in operand position; their bodies extend as
//! far right as possible.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

use super::Formula;
use crate::coeff::{BaseDomain, Polynomial, Ring, Var, VarKind};
use crate::error::{Error, Result};

const MAX_EXPONENT: u32 = 4096;

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Int(BigInt),
    Exists,
    Forall,
    Dot,
    LParen,
    RParen,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    Eq,
    Neq,
    Bang,
    Amp,
    Pipe,
    Eof,
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_alphabetic() {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            match word.as_str() {
                "exists" => Tok::Exists,
                "forall" => Tok::Forall,
                _ => Tok::Ident(word),
            }
        } else if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let digits: String = chars[start..i].iter().collect();
            Tok::Int(digits.parse().expect("ascii digits"))
        } else {
            i += 1;
            match c {
                '.' => Tok::Dot,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '=' => Tok::Eq,
                '&' => Tok::Amp,
                '|' => Tok::Pipe,
                '!' if chars.get(i) == Some(&'=') => {
                    i += 1;
                    Tok::Neq
                }
                '!' => Tok::Bang,
                _ => {
                    return Err(Error::Syntax {
                        line: tl,
                        col: tc,
                        msg: format!("unexpected character `{c}`"),
                    })
                }
            }
        };
        col += i - start;
        out.push(Spanned {
            tok,
            line: tl,
            col: tc,
        });
    }
    out.push(Spanned {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    ring: Ring,
    /// Number of leading table entries usable without an enclosing binder.
    declared: usize,
    scope: Vec<Var>,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].tok.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        let s = &self.toks[self.pos];
        Err(Error::Syntax {
            line: s.line,
            col: s.col,
            msg: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.err(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn formula(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Exists | Tok::Forall => self.quantified(),
            _ => self.disj(),
        }
    }

    fn quantified(&mut self) -> Result<Formula> {
        let universal = self.bump() == Tok::Forall;
        let name = match self.peek().clone() {
            Tok::Ident(n) => n,
            other => {
                return self.err(format!(
                    "expected a variable after quantifier, found {}",
                    describe(&other)
                ))
            }
        };
        self.bump();
        self.expect(Tok::Dot, "`.`")?;
        let v = self
            .ring
            .var(&name)
            .expect("binders are declared before parsing");
        self.scope.push(v);
        let body = self.formula();
        self.scope.pop();
        let body = Box::new(body?);
        Ok(if universal {
            Formula::Forall(v, body)
        } else {
            Formula::Exists(v, body)
        })
    }

    fn disj(&mut self) -> Result<Formula> {
        let mut parts = vec![self.conj()?];
        while *self.peek() == Tok::Pipe {
            self.bump();
            parts.push(self.conj()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::Or(parts)
        })
    }

    fn conj(&mut self) -> Result<Formula> {
        let mut parts = vec![self.neg()?];
        while *self.peek() == Tok::Amp {
            self.bump();
            parts.push(self.neg()?);
        }
        Ok(if parts.len() == 1 {
            parts.pop().unwrap()
        } else {
            Formula::And(parts)
        })
    }

    fn neg(&mut self) -> Result<Formula> {
        match self.peek() {
            Tok::Bang => {
                self.bump();
                Ok(Formula::Not(Box::new(self.neg()?)))
            }
            Tok::Exists | Tok::Forall => self.quantified(),
            Tok::LParen => {
                // Either a parenthesised formula or an atom starting with a
                // parenthesised polynomial; try the atom first.
                let save = self.pos;
                match self.atom() {
                    Ok(f) => Ok(f),
                    Err(atom_err) => {
                        let atom_pos = self.pos;
                        self.pos = save;
                        self.bump();
                        match self.formula().and_then(|f| {
                            self.expect(Tok::RParen, "`)`")?;
                            Ok(f)
                        }) {
                            Ok(f) => Ok(f),
                            Err(e) => Err(if self.pos >= atom_pos { e } else { atom_err }),
                        }
                    }
                }
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula> {
        let lhs = self.poly()?;
        let negated = match self.peek() {
            Tok::Eq => false,
            Tok::Neq => true,
            other => return self.err(format!("expected `=` or `!=`, found {}", describe(other))),
        };
        self.bump();
        let rhs = self.poly()?;
        let a = Formula::atom(&lhs - &rhs);
        Ok(if negated {
            Formula::Not(Box::new(a))
        } else {
            a
        })
    }

    fn poly(&mut self) -> Result<Polynomial> {
        let mut acc = match self.peek() {
            Tok::Minus => {
                self.bump();
                -&self.term()?
            }
            Tok::Plus => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = &acc * &self.factor()?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = match self.peek().clone() {
            Tok::Minus => {
                self.bump();
                return Ok(-&self.factor()?);
            }
            Tok::Int(n) => {
                self.bump();
                if *self.peek() == Tok::Slash {
                    self.bump();
                    let Tok::Int(d) = self.peek().clone() else {
                        return self.err("expected an integer denominator");
                    };
                    self.rational(n, d)?
                } else {
                    self.ring.constant(BigRational::from_integer(n))
                }
            }
            Tok::Ident(name) => {
                let v = self.resolve(&name)?;
                self.bump();
                self.ring.var_poly(v)
            }
            Tok::LParen => {
                self.bump();
                let p = self.poly()?;
                self.expect(Tok::RParen, "`)`")?;
                p
            }
            other => return self.err(format!("expected a polynomial, found {}", describe(&other))),
        };
        if *self.peek() == Tok::Caret {
            self.bump();
            let e = match self.peek() {
                Tok::Int(n) => n.to_u32().filter(|&e| e <= MAX_EXPONENT),
                _ => return self.err("expected an exponent"),
            };
            let Some(e) = e else {
                return self.err(format!("exponent larger than {MAX_EXPONENT}"));
            };
            self.bump();
            return Ok(base.pow(e));
        }
        Ok(base)
    }

    fn rational(&mut self, n: BigInt, d: BigInt) -> Result<Polynomial> {
        if d.is_zero() {
            return self.err("division by zero");
        }
        let c = match self.ring.base() {
            BaseDomain::Integers => return self.err("fractions are not allowed over the integers"),
            BaseDomain::Rationals => BigRational::new(n, d),
            BaseDomain::PrimeField(p) => {
                let Some(inv) = crate::coeff::base_inverse(&d, *p) else {
                    return self.err("denominator vanishes in the prime field");
                };
                BigRational::from_integer(n * inv)
            }
        };
        self.bump();
        Ok(self.ring.constant(c))
    }

    fn resolve(&self, name: &str) -> Result<Var> {
        if let Some(v) = self.ring.var(name) {
            if v.0 < self.declared || self.scope.contains(&v) {
                return Ok(v);
            }
        }
        let s = &self.toks[self.pos];
        Err(Error::Name {
            line: s.line,
            col: s.col,
            name: name.to_string(),
        })
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Ident(n) => format!("identifier `{n}`"),
        Tok::Int(n) => format!("integer `{n}`"),
        Tok::Eof => "end of input".to_string(),
        Tok::Exists => "`exists`".to_string(),
        Tok::Forall => "`forall`".to_string(),
        other => {
            let sym = match other {
                Tok::Dot => ".",
                Tok::LParen => "(",
                Tok::RParen => ")",
                Tok::Plus => "+",
                Tok::Minus => "-",
                Tok::Star => "*",
                Tok::Slash => "/",
                Tok::Caret => "^",
                Tok::Eq => "=",
                Tok::Neq => "!=",
                Tok::Bang => "!",
                Tok::Amp => "&",
                _ => "|",
            };
            format!("`{sym}`")
        }
    }
}

/// Parses `text` as a formula over `ring`.
///
/// Quantified identifiers missing from the table are appended to it as bound
/// variables, so the returned ring may extend the given one. Free identifiers
/// must already be declared.
pub fn parse(text: &str, ring: &Ring) -> Result<(Ring, Formula)> {
    let toks = lex(text)?;
    let mut binders: Vec<String> = Vec::new();
    for w in toks.windows(2) {
        if let (Tok::Exists | Tok::Forall, Tok::Ident(n)) = (&w[0].tok, &w[1].tok) {
            if ring.var(n).is_none() && !binders.contains(n) {
                binders.push(n.clone());
            }
        }
    }
    let full = if binders.is_empty() {
        ring.clone()
    } else {
        ring.extended(binders.into_iter().map(|n| (n, VarKind::Bound)))?
    };
    let mut p = Parser {
        toks,
        pos: 0,
        ring: full.clone(),
        declared: ring.nvars(),
        scope: Vec::new(),
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {}", describe(p.peek())));
    }
    Ok((full, f))
}

/// Parses a polynomial over `ring`; every identifier must be declared.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        ring: ring.clone(),
        declared: ring.nvars(),
        scope: Vec::new(),
    };
    let poly = p.poly()?;
    if *p.peek() != Tok::Eof {
        return p.err(format!("unexpected {}", describe(p.peek())));
    }
    Ok(poly)
}
