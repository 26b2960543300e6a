use super::Formula;
use crate::coeff::Ring;

/// Canonical text for a formula; [`parse`](super::parse) reads it back to the
/// same tree.
///
/// `True` is spelled `0 = 0` and `False` `1 = 0`. Negated atoms print as
/// `p != 0`; other negations, and nested connectives or quantifiers in operand
/// position, are parenthesised.
pub fn render(phi: &Formula, ring: &Ring) -> String {
    let mut out = String::new();
    write_formula(phi, ring, &mut out);
    out
}

fn write_formula(phi: &Formula, ring: &Ring, out: &mut String) {
    match phi {
        Formula::True => out.push_str("0 = 0"),
        Formula::False => out.push_str("1 = 0"),
        Formula::Atom(p) => {
            out.push_str(&p.to_string());
            out.push_str(" = 0");
        }
        Formula::Not(inner) => match inner.as_ref() {
            Formula::Atom(p) => {
                out.push_str(&p.to_string());
                out.push_str(" != 0");
            }
            other => {
                out.push_str("!(");
                write_formula(other, ring, out);
                out.push(')');
            }
        },
        Formula::And(parts) if parts.is_empty() => out.push_str("0 = 0"),
        Formula::Or(parts) if parts.is_empty() => out.push_str("1 = 0"),
        Formula::And(parts) => write_joined(parts, " & ", ring, out, |f| {
            matches!(
                f,
                Formula::And(_) | Formula::Or(_) | Formula::Exists(..) | Formula::Forall(..)
            )
        }),
        Formula::Or(parts) => write_joined(parts, " | ", ring, out, |f| {
            matches!(
                f,
                Formula::Or(_) | Formula::Exists(..) | Formula::Forall(..)
            )
        }),
        Formula::Exists(x, body) | Formula::Forall(x, body) => {
            out.push_str(if matches!(phi, Formula::Exists(..)) {
                "exists "
            } else {
                "forall "
            });
            out.push_str(ring.name(*x));
            out.push_str(". ");
            write_formula(body, ring, out);
        }
    }
}

fn write_joined(
    parts: &[Formula],
    sep: &str,
    ring: &Ring,
    out: &mut String,
    needs_parens: impl Fn(&Formula) -> bool,
) {
    for (i, f) in parts.iter().enumerate() {
        if i > 0 {
            out.push_str(sep);
        }
        if needs_parens(f) {
            out.push('(');
            write_formula(f, ring, out);
            out.push(')');
        } else {
            write_formula(f, ring, out);
        }
    }
}
