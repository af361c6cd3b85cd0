//! Text format for forms: `3x^2y + z^3`, `-1/2xz^2`, `(1 + 2a)x^2y`.
//!
//! Whitespace and `*` are ignored. A parenthesised coefficient is a number
//! field element written in the generator `a`.

use num_traits::{One, Signed, Zero};

use super::form::{Mono, TernaryForm};
use crate::error::{Error, Result};
use crate::numfield::{FieldElement, FieldRef};
use crate::rational::{fmt_rational, Q};
use crate::scalar::Scalar;

/// Largest accepted total degree; guards against absurd allocations.
pub const MAX_DEGREE: u32 = 4096;

/// A parsed form whose coefficients are power-basis vectors in `a`.
#[derive(Clone, Debug, PartialEq)]
pub struct ParsedForm {
    pub degree: u32,
    pub terms: Vec<(Mono, Vec<Q>)>,
}

struct Lexer<'a> {
    s: &'a [u8],
    i: usize,
}

impl<'a> Lexer<'a> {
    fn skip(&mut self) {
        while self.i < self.s.len() && (self.s[self.i].is_ascii_whitespace() || self.s[self.i] == b'*') {
            self.i += 1;
        }
    }
    fn peek(&mut self) -> Option<u8> {
        self.skip();
        self.s.get(self.i).copied()
    }
    fn bump(&mut self) -> Option<u8> {
        let c = self.peek()?;
        self.i += 1;
        Some(c)
    }
    fn err<T>(&self, what: &str) -> Result<T> {
        Err(Error::Parse(format!("{what} at byte {}", self.i)))
    }
    fn digits(&mut self) -> Result<num_bigint::BigInt> {
        self.skip();
        let start = self.i;
        while self.i < self.s.len() && self.s[self.i].is_ascii_digit() {
            self.i += 1;
        }
        if start == self.i {
            return self.err("expected digits");
        }
        let text = std::str::from_utf8(&self.s[start..self.i]).expect("ascii");
        text.parse().map_err(|_| Error::Parse("bad integer".into()))
    }
    fn small(&mut self) -> Result<u32> {
        let n = self.digits()?;
        u32::try_from(n).ok().filter(|&v| v <= MAX_DEGREE).ok_or_else(|| Error::Parse("exponent too large".into()))
    }
    /// `digits ['/' digits]`
    fn rational(&mut self) -> Result<Q> {
        let n = self.digits()?;
        if self.peek() == Some(b'/') {
            self.i += 1;
            let d = self.digits()?;
            if d.is_zero() {
                return self.err("zero denominator");
            }
            Ok(Q::new(n, d))
        } else {
            Ok(Q::from_integer(n))
        }
    }
}

fn add_into(v: &mut Vec<Q>, pow: usize, c: Q) {
    if v.len() <= pow {
        v.resize(pow + 1, Q::zero());
    }
    v[pow] += c;
}

/// Parses `elem := term (('+'|'-') term)*` with `term := [rational] ['a' ['^' n]]`.
fn parse_element_inner(lx: &mut Lexer) -> Result<Vec<Q>> {
    let mut out = Vec::new();
    let mut first = true;
    loop {
        let mut sign = Q::one();
        match lx.peek() {
            Some(b'+') => {
                lx.i += 1;
            }
            Some(b'-') => {
                lx.i += 1;
                sign = -sign;
            }
            _ if !first => break,
            _ => {}
        }
        first = false;
        let mut c = None;
        if lx.peek().is_some_and(|b| b.is_ascii_digit()) {
            c = Some(lx.rational()?);
        }
        let mut pow = 0usize;
        if lx.peek() == Some(b'a') {
            lx.i += 1;
            pow = 1;
            if lx.peek() == Some(b'^') {
                lx.i += 1;
                pow = lx.small()? as usize;
            }
        } else if c.is_none() {
            return lx.err("expected a number or `a`");
        }
        add_into(&mut out, pow, sign * c.unwrap_or_else(Q::one));
        if !matches!(lx.peek(), Some(b'+') | Some(b'-')) {
            break;
        }
    }
    Ok(out)
}

/// Parses the text form into power-basis coefficient vectors.
pub fn parse_form(text: &str) -> Result<ParsedForm> {
    let mut lx = Lexer { s: text.as_bytes(), i: 0 };
    let mut terms: Vec<(Mono, Vec<Q>)> = Vec::new();
    let mut degree: Option<u32> = None;
    let mut first = true;
    loop {
        let mut sign = Q::one();
        match lx.peek() {
            None if first => return lx.err("empty form"),
            None => break,
            Some(b'+') if !first => {
                lx.i += 1;
            }
            Some(b'-') => {
                lx.i += 1;
                sign = -sign;
            }
            Some(_) if !first => return lx.err("expected `+` or `-`"),
            Some(_) => {}
        }
        first = false;
        let mut coeff: Option<Vec<Q>> = None;
        match lx.peek() {
            Some(b'(') => {
                lx.i += 1;
                coeff = Some(parse_element_inner(&mut lx)?);
                if lx.bump() != Some(b')') {
                    return lx.err("expected `)`");
                }
            }
            Some(b) if b.is_ascii_digit() => coeff = Some(vec![lx.rational()?]),
            _ => {}
        }
        let mut mono = [0u32; 3];
        let mut any_var = false;
        while let Some(b) = lx.peek() {
            let v = match b {
                b'x' => 0,
                b'y' => 1,
                b'z' => 2,
                _ => break,
            };
            lx.i += 1;
            any_var = true;
            let mut e = 1;
            if lx.peek() == Some(b'^') {
                lx.i += 1;
                e = lx.small()?;
            }
            mono[v] = mono[v].checked_add(e).filter(|&t| t <= MAX_DEGREE).ok_or_else(|| Error::Parse("exponent too large".into()))?;
        }
        if coeff.is_none() && !any_var {
            return lx.err("expected a term");
        }
        let d = mono.iter().sum::<u32>();
        if d > MAX_DEGREE {
            return lx.err("degree too large");
        }
        match degree {
            None => degree = Some(d),
            Some(d0) if d0 != d => return lx.err(&format!("term of degree {d} in a form of degree {d0}")),
            _ => {}
        }
        let c: Vec<Q> = coeff.unwrap_or_else(|| vec![Q::one()]).into_iter().map(|v| &sign * v).collect();
        terms.push((mono, c));
    }
    Ok(ParsedForm { degree: degree.unwrap_or(0), terms })
}

impl ParsedForm {
    pub fn into_rational(self) -> Result<TernaryForm<Q>> {
        let mut out = Vec::with_capacity(self.terms.len());
        for (m, c) in self.terms {
            if c.iter().skip(1).any(|v| !v.is_zero()) {
                return Err(Error::Parse("field generator `a` in a rational form".into()));
            }
            out.push((m, c.into_iter().next().unwrap_or_else(Q::zero)));
        }
        TernaryForm::from_terms(self.degree, out)
    }

    pub fn into_field(self, field: &FieldRef) -> Result<TernaryForm<FieldElement>> {
        let out = self
            .terms
            .into_iter()
            .map(|(m, c)| (m, FieldElement::new(field, c)))
            .collect::<Vec<_>>();
        TernaryForm::from_terms(self.degree, out)
    }
}

/// Parses a number field element written in the generator `a`, such as
/// `-a-1` or `1/2 + 3a^2`.
pub fn parse_element(text: &str) -> Result<Vec<Q>> {
    let mut lx = Lexer { s: text.as_bytes(), i: 0 };
    let out = parse_element_inner(&mut lx)?;
    if lx.peek().is_some() {
        return lx.err("trailing input");
    }
    Ok(out)
}

pub fn parse_rational_form(text: &str) -> Result<TernaryForm<Q>> {
    parse_form(text)?.into_rational()
}

/// How a coefficient is rendered inside a form.
pub trait CoeffText: Scalar {
    /// `Some((negative, magnitude))` for rational values, `None` otherwise.
    fn as_signed_rational(&self) -> Option<(bool, Q)>;
    fn element_text(&self) -> String;
}

impl CoeffText for Q {
    fn as_signed_rational(&self) -> Option<(bool, Q)> {
        Some((self.is_negative(), self.abs()))
    }
    fn element_text(&self) -> String {
        fmt_rational(self)
    }
}

impl CoeffText for FieldElement {
    fn as_signed_rational(&self) -> Option<(bool, Q)> {
        self.as_rational().map(|r| (r.is_negative(), r.abs()))
    }
    fn element_text(&self) -> String {
        self.to_text()
    }
}

fn mono_text(m: &Mono) -> String {
    let mut s = String::new();
    for (v, name) in ["x", "y", "z"].iter().enumerate() {
        match m[v] {
            0 => {}
            1 => s.push_str(name),
            e => s.push_str(&format!("{name}^{e}")),
        }
    }
    s
}

/// Prints terms in decreasing lex order. The printer and parser round-trip.
pub fn format_form<K: CoeffText>(f: &TernaryForm<K>) -> String {
    let mut out = String::new();
    for (m, c) in f.terms().iter().rev() {
        let mono = mono_text(m);
        let (neg, body) = match c.as_signed_rational() {
            Some((neg, mag)) => {
                let body = if mag.is_one() && !mono.is_empty() { String::new() } else { fmt_rational(&mag) };
                (neg, body)
            }
            None => (false, format!("({})", c.element_text())),
        };
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&body);
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::q;

    #[test]
    fn parses_plain_forms() {
        let f = parse_rational_form("3x^2y + z^3").unwrap();
        assert_eq!(f.degree(), 3);
        assert_eq!(f.coeff(&[2, 1, 0]), Some(&q(3)));
        assert_eq!(format_form(&f), "3x^2y + z^3");
    }

    #[test]
    fn rejects_inhomogeneous() {
        assert!(parse_rational_form("x^2 + y").is_err());
        assert!(parse_rational_form("").is_err());
        assert!(parse_rational_form("x +").is_err());
        assert!(parse_rational_form("(a)x").is_err());
    }

    #[test]
    fn negative_and_fractional() {
        let f = parse_rational_form("- x*y + 1/2 z^2 - 3/4xz").unwrap();
        assert_eq!(format_form(&f), "-xy - 3/4xz + 1/2z^2");
        assert_eq!(parse_rational_form(&format_form(&f)).unwrap(), f);
    }
}
