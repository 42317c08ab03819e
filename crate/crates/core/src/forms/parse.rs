//! Text syntax for exact forms.
//!
//! ```text
//! form    := ['-'] term ( ('+'|'-') term )*
//! term    := coeff [ '*' monom ] | monom
//! coeff   := rat | rat '*' 'zeta3' | 'zeta3' | '(' rat [ ('+'|'-') rat '*'? 'zeta3' ] ')'
//! rat     := integer [ '/' positive-integer ]
//! monom   := var [ '^' positive-integer ] [ '*'? var [ '^' positive-integer ] ]
//! var     := 'z' | 'w'
//! ```
//!
//! Whitespace is ignored everywhere.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{CycRat, ExactForm, FormError, Rational};

#[derive(Clone, Copy, Debug, PartialEq)]
enum Tok {
    Int(usize, usize), // byte range of the digits
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    Z,
    W,
    Zeta3,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Tok)>, FormError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let tok = match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'0'..=b'9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                out.push((start, Tok::Int(start, i)));
                continue;
            }
            b'+' => Tok::Plus,
            b'-' => Tok::Minus,
            b'*' => Tok::Star,
            b'/' => Tok::Slash,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            b'z' if text[i..].starts_with("zeta3") => {
                out.push((i, Tok::Zeta3));
                i += 5;
                continue;
            }
            b'z' => Tok::Z,
            b'w' => Tok::W,
            _ => {
                let ch = text[i..].chars().next().unwrap();
                return Err(syntax(i, format!("unexpected character '{ch}'")));
            }
        };
        out.push((i, tok));
        i += 1;
    }
    Ok(out)
}

fn syntax(pos: usize, msg: impl Into<String>) -> FormError {
    FormError::Syntax { pos, msg: msg.into() }
}

struct Parser<'a> {
    text: &'a str,
    toks: Vec<(usize, Tok)>,
    pos: usize,
}

/// A parsed term: coefficient times `z^i w^j`.
struct Term {
    coeff: CycRat,
    z: usize,
    w: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<Tok> {
        self.toks.get(self.pos).map(|t| t.1)
    }

    fn peek2(&self) -> Option<Tok> {
        self.toks.get(self.pos + 1).map(|t| t.1)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map_or(self.text.len(), |t| t.0)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.peek();
        self.pos += 1;
        t
    }

    fn expect(&mut self, want: Tok, what: &str) -> Result<(), FormError> {
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(syntax(self.offset(), format!("expected {what}")))
        }
    }

    fn integer(&mut self) -> Result<BigInt, FormError> {
        match self.peek() {
            Some(Tok::Int(a, b)) => {
                self.pos += 1;
                Ok(self.text[a..b].parse().unwrap())
            }
            _ => Err(syntax(self.offset(), "expected an integer")),
        }
    }

    fn exponent(&mut self) -> Result<usize, FormError> {
        let at = self.offset();
        let n = self.integer()?;
        match usize::try_from(n) {
            Ok(e) if e > 0 => Ok(e),
            _ => Err(syntax(at, "exponent must be a positive integer")),
        }
    }

    fn rat(&mut self) -> Result<Rational, FormError> {
        let num = self.integer()?;
        if self.peek() == Some(Tok::Slash) {
            self.pos += 1;
            let at = self.offset();
            let den = self.integer()?;
            if den.is_zero() {
                return Err(syntax(at, "denominator must be positive"));
            }
            Ok(Rational::new(num, den))
        } else {
            Ok(Rational::from_integer(num))
        }
    }

    fn signed_rat(&mut self) -> Result<Rational, FormError> {
        if self.peek() == Some(Tok::Minus) {
            self.pos += 1;
            Ok(-self.rat()?)
        } else {
            self.rat()
        }
    }

    fn form(&mut self) -> Result<Vec<Term>, FormError> {
        let mut terms = Vec::new();
        let mut negate = false;
        if self.peek() == Some(Tok::Minus) {
            self.pos += 1;
            negate = true;
        }
        loop {
            let mut t = self.term()?;
            if negate {
                t.coeff = -t.coeff;
            }
            terms.push(t);
            match self.peek() {
                Some(Tok::Plus) => negate = false,
                Some(Tok::Minus) => negate = true,
                None => break,
                Some(_) => return Err(syntax(self.offset(), "expected '+', '-' or end of input")),
            }
            self.pos += 1;
        }
        Ok(terms)
    }

    fn term(&mut self) -> Result<Term, FormError> {
        let at = self.offset();
        match self.peek() {
            Some(Tok::Z | Tok::W) => {
                let (z, w) = self.monom()?;
                Ok(Term { coeff: CycRat::one(), z, w })
            }
            Some(Tok::Int(..) | Tok::Zeta3 | Tok::LParen) => {
                let coeff = self.coeff()?;
                let (z, w) = if self.peek() == Some(Tok::Star) {
                    self.pos += 1;
                    self.monom()?
                } else {
                    (0, 0)
                };
                Ok(Term { coeff, z, w })
            }
            _ => Err(syntax(at, "expected a term")),
        }
    }

    fn coeff(&mut self) -> Result<CycRat, FormError> {
        match self.peek() {
            Some(Tok::Zeta3) => {
                self.pos += 1;
                Ok(CycRat::zeta3())
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let a = self.signed_rat()?;
                let mut b = Rational::zero();
                match self.peek() {
                    Some(Tok::Plus | Tok::Minus) => {
                        let neg = self.bump() == Some(Tok::Minus);
                        let mag = if self.peek() == Some(Tok::Zeta3) {
                            Rational::one()
                        } else {
                            self.rat()?
                        };
                        if self.peek() == Some(Tok::Star) {
                            self.pos += 1;
                        }
                        self.expect(Tok::Zeta3, "'zeta3'")?;
                        b = if neg { -mag } else { mag };
                    }
                    _ => {}
                }
                self.expect(Tok::RParen, "')'")?;
                Ok(CycRat::new(a, b))
            }
            _ => {
                let r = self.rat()?;
                if self.peek() == Some(Tok::Star) && self.peek2() == Some(Tok::Zeta3) {
                    self.pos += 2;
                    Ok(CycRat::new(Rational::zero(), r))
                } else {
                    Ok(CycRat::from_rational(r))
                }
            }
        }
    }

    fn var_power(&mut self) -> Result<(Tok, usize), FormError> {
        let v = match self.peek() {
            Some(t @ (Tok::Z | Tok::W)) => t,
            _ => return Err(syntax(self.offset(), "expected 'z' or 'w'")),
        };
        self.pos += 1;
        let e = if self.peek() == Some(Tok::Caret) {
            self.pos += 1;
            self.exponent()?
        } else {
            1
        };
        Ok((v, e))
    }

    fn monom(&mut self) -> Result<(usize, usize), FormError> {
        let mut exps = (0, 0);
        let mut add = |(v, e): (Tok, usize)| {
            if v == Tok::Z {
                exps.0 += e
            } else {
                exps.1 += e
            }
        };
        add(self.var_power()?);
        match (self.peek(), self.peek2()) {
            (Some(Tok::Z | Tok::W), _) => add(self.var_power()?),
            (Some(Tok::Star), Some(Tok::Z | Tok::W)) => {
                self.pos += 1;
                add(self.var_power()?);
            }
            _ => {}
        }
        Ok(exps)
    }
}

/// Parses an exact binary form. With `expected_degree`, the result has that
/// degree or the call fails with `DegreeMismatch`.
pub fn parse_form(text: &str, expected_degree: Option<usize>) -> Result<ExactForm, FormError> {
    let mut p = Parser { text, toks: tokenize(text)?, pos: 0 };
    if p.toks.is_empty() {
        return Err(syntax(0, "empty input"));
    }
    let terms = p.form()?;

    // Zero-coefficient terms carry no degree information.
    let mut degree: Option<usize> = None;
    for t in terms.iter().filter(|t| !t.coeff.is_zero()) {
        let d = t.z + t.w;
        match degree {
            None => degree = Some(d),
            Some(e) if e != d => {
                return Err(FormError::InhomogeneousInput { expected: e, found: d });
            }
            _ => {}
        }
    }
    let degree = match (degree, expected_degree) {
        (Some(d), Some(e)) if d != e => {
            return Err(FormError::DegreeMismatch { expected: e, found: d })
        }
        (Some(d), _) => d,
        (None, e) => e.unwrap_or(0),
    };
    let mut coeffs = vec![CycRat::zero(); degree + 1];
    for t in terms {
        if t.coeff.is_zero() {
            continue;
        }
        coeffs[t.z] = coeffs[t.z].clone() + t.coeff;
    }
    Ok(ExactForm::new(degree, coeffs).unwrap())
}

/// Parses a single element of `Q(zeta3)`, e.g. `-3/2`, `zeta3`, `(1 - 2*zeta3)`.
pub fn parse_scalar(text: &str) -> Result<CycRat, FormError> {
    let f = parse_form(text, Some(0))?;
    Ok(f.coeff(0).clone())
}

pub(super) fn monomial_text(z: usize, w: usize) -> String {
    let var = |name: &str, e: usize| match e {
        0 => String::new(),
        1 => name.to_string(),
        _ => format!("{name}^{e}"),
    };
    match (z, w) {
        (0, _) => var("w", w),
        (_, 0) => var("z", z),
        _ => format!("{}*{}", var("z", z), var("w", w)),
    }
}

/// Returns the coefficient text with its sign pulled out.
fn coeff_text(c: &CycRat, has_monom: bool) -> (bool, String) {
    if c.b.is_zero() {
        let neg = c.a.is_negative();
        let mag = c.a.abs();
        if has_monom && mag.is_one() {
            (neg, String::new())
        } else {
            (neg, mag.to_string())
        }
    } else if c.a.is_zero() {
        let neg = c.b.is_negative();
        let mag = c.b.abs();
        if mag.is_one() {
            (neg, "zeta3".to_string())
        } else {
            (neg, format!("{mag}*zeta3"))
        }
    } else {
        (false, c.to_string())
    }
}

pub(super) fn serialize(f: &ExactForm) -> String {
    let d = f.degree();
    let mut out = String::new();
    for i in (0..=d).rev() {
        let c = f.coeff(i);
        if c.is_zero() {
            continue;
        }
        let monom = monomial_text(i, d - i);
        let (neg, ctext) = coeff_text(c, !monom.is_empty());
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&ctext);
        if !ctext.is_empty() && !monom.is_empty() {
            out.push('*');
        }
        out.push_str(&monom);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}
