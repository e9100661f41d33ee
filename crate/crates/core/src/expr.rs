//! Text syntax for quadratic forms.
//!
//! ```text
//! form    := ['+'|'-'] term (('+'|'-') term)*
//! term    := factor ('*' factor)*
//! factor  := INT | '(' zpoly ')' | 'X' INT ['^' INT]
//! zpoly   := ['+'|'-'] zterm (('+'|'-') zterm)*
//! zterm   := INT ['*' 'z' ['^' INT]] | 'z' ['^' INT]
//! ```
//!
//! Integers are reduced mod p. Every term with a nonzero coefficient must
//! have degree exactly 2. Whitespace is ignored. The grammar is LL(1) and is
//! parsed by recursive descent with one token of lookahead.

use std::sync::Arc;

use thiserror::Error;

use crate::gf::{Elem, GaloisField};
use crate::projspace::ProjectiveSpace;
use crate::quadric::{monomials, QuadraticForm};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown variable {name} at {pos}")]
    UnknownVariable { pos: usize, name: String },
    #[error("term at {pos} has degree {degree}, expected 2")]
    NonHomogeneous { pos: usize, degree: u32 },
    #[error("invalid field literal at {pos}: {msg}")]
    FieldLiteralInvalid { pos: usize, msg: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Tok {
    Int(u64),
    Var(u64),
    Z,
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn digits(&mut self) -> Result<u64, ParseError> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        text.parse().map_err(|_| ParseError::FieldLiteralInvalid {
            pos: start,
            msg: format!("integer {text} out of range"),
        })
    }

    /// Next token and its starting offset.
    fn next(&mut self) -> Result<(Tok, usize), ParseError> {
        self.skip_ws();
        let start = self.pos;
        let Some(&c) = self.src.get(self.pos) else {
            return Ok((Tok::End, start));
        };
        let tok = match c {
            b'0'..=b'9' => return Ok((Tok::Int(self.digits()?), start)),
            b'X' => {
                self.pos += 1;
                if !self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
                    return Err(ParseError::Syntax {
                        pos: start,
                        msg: "expected a variable index after X".into(),
                    });
                }
                let idx = self.digits().map_err(|_| ParseError::UnknownVariable {
                    pos: start,
                    name: String::from_utf8_lossy(&self.src[start..self.pos]).into_owned(),
                })?;
                return Ok((Tok::Var(idx), start));
            }
            b'z' => Tok::Z,
            b'+' => Tok::Plus,
            b'-' | 0xE2 => {
                // accept U+2212 MINUS SIGN as well as '-'
                if c == 0xE2 {
                    if self.src[self.pos..].starts_with("\u{2212}".as_bytes()) {
                        self.pos += 3;
                        return Ok((Tok::Minus, start));
                    }
                    return Err(ParseError::Syntax {
                        pos: start,
                        msg: "unexpected character".into(),
                    });
                }
                Tok::Minus
            }
            b'*' => Tok::Star,
            b'^' => Tok::Caret,
            b'(' => Tok::LParen,
            b')' => Tok::RParen,
            _ => {
                let ch = std::str::from_utf8(&self.src[self.pos..])
                    .ok()
                    .and_then(|s| s.chars().next())
                    .unwrap_or('?');
                return Err(ParseError::Syntax {
                    pos: start,
                    msg: format!("unexpected character {ch:?}"),
                });
            }
        };
        self.pos += 1;
        Ok((tok, start))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    tok: Tok,
    pos: usize,
    field: &'a GaloisField,
    n_vars: usize,
}

impl<'a> Parser<'a> {
    fn new(text: &'a str, field: &'a GaloisField, n_vars: usize) -> Result<Self, ParseError> {
        let mut lexer = Lexer {
            src: text.as_bytes(),
            pos: 0,
        };
        let (tok, pos) = lexer.next()?;
        Ok(Self {
            lexer,
            tok,
            pos,
            field,
            n_vars,
        })
    }

    fn bump(&mut self) -> Result<(), ParseError> {
        let (tok, pos) = self.lexer.next()?;
        self.tok = tok;
        self.pos = pos;
        Ok(())
    }

    fn syntax<T>(&self, msg: &str) -> Result<T, ParseError> {
        Err(ParseError::Syntax {
            pos: self.pos,
            msg: msg.into(),
        })
    }

    fn int_elem(&self, n: u64) -> Elem {
        self.field.from_int((n % self.field.characteristic()) as i64)
    }

    /// Accumulates `(i, j, coefficient)` terms.
    fn form(&mut self, out: &mut Vec<(usize, usize, Elem)>) -> Result<(), ParseError> {
        let mut negate = false;
        match self.tok {
            Tok::Plus => self.bump()?,
            Tok::Minus => {
                negate = true;
                self.bump()?;
            }
            _ => {}
        }
        loop {
            self.term(negate, out)?;
            match self.tok {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                Tok::End => return Ok(()),
                _ => return self.syntax("expected '+', '-' or end of input"),
            }
            self.bump()?;
        }
    }

    fn term(&mut self, negate: bool, out: &mut Vec<(usize, usize, Elem)>) -> Result<(), ParseError> {
        let start = self.pos;
        let f = self.field;
        let mut coeff = if negate { f.neg(Elem::ONE) } else { Elem::ONE };
        let mut vars: Vec<usize> = Vec::new();
        loop {
            match self.tok {
                Tok::Int(n) => {
                    coeff = f.mul(coeff, self.int_elem(n));
                    self.bump()?;
                }
                Tok::LParen => {
                    self.bump()?;
                    let c = self.zpoly()?;
                    if self.tok != Tok::RParen {
                        return self.syntax("expected ')'");
                    }
                    self.bump()?;
                    coeff = f.mul(coeff, c);
                }
                Tok::Var(idx) => {
                    let var_pos = self.pos;
                    if idx as usize >= self.n_vars {
                        return Err(ParseError::UnknownVariable {
                            pos: var_pos,
                            name: format!("X{idx}"),
                        });
                    }
                    self.bump()?;
                    let mut exp = 1;
                    if self.tok == Tok::Caret {
                        self.bump()?;
                        let Tok::Int(e) = self.tok else {
                            return self.syntax("expected an exponent");
                        };
                        exp = e;
                        self.bump()?;
                    }
                    if exp > 2 || vars.len() as u64 + exp > 2 {
                        return Err(ParseError::NonHomogeneous {
                            pos: start,
                            degree: (vars.len() as u64 + exp).min(u32::MAX as u64) as u32,
                        });
                    }
                    for _ in 0..exp {
                        vars.push(idx as usize);
                    }
                }
                _ => return self.syntax("expected a coefficient or a variable"),
            }
            if self.tok != Tok::Star {
                break;
            }
            self.bump()?;
        }
        if !matches!(self.tok, Tok::Plus | Tok::Minus | Tok::End) {
            return self.syntax("expected '*', '+', '-' or end of input");
        }
        if vars.len() != 2 {
            if coeff.is_zero() {
                return Ok(());
            }
            return Err(ParseError::NonHomogeneous {
                pos: start,
                degree: vars.len() as u32,
            });
        }
        out.push((vars[0], vars[1], coeff));
        Ok(())
    }

    fn zpoly(&mut self) -> Result<Elem, ParseError> {
        let f = self.field;
        if f.degree() == 1 {
            // still allow a parenthesized integer
            if let Tok::Int(n) = self.tok {
                self.bump()?;
                return Ok(self.int_elem(n));
            }
        }
        let mut acc = Elem::ZERO;
        let mut negate = false;
        match self.tok {
            Tok::Plus => self.bump()?,
            Tok::Minus => {
                negate = true;
                self.bump()?;
            }
            _ => {}
        }
        loop {
            let t = self.zterm()?;
            acc = if negate { f.sub(acc, t) } else { f.add(acc, t) };
            match self.tok {
                Tok::Plus => negate = false,
                Tok::Minus => negate = true,
                _ => return Ok(acc),
            }
            self.bump()?;
        }
    }

    fn zterm(&mut self) -> Result<Elem, ParseError> {
        let f = self.field;
        let mut c = Elem::ONE;
        let mut has_z = false;
        if let Tok::Int(n) = self.tok {
            c = self.int_elem(n);
            self.bump()?;
            if self.tok != Tok::Star {
                return Ok(c);
            }
            self.bump()?;
        }
        if self.tok == Tok::Z {
            has_z = true;
        }
        if !has_z {
            return self.syntax("expected 'z' or an integer");
        }
        let Some(z) = f.generator() else {
            return Err(ParseError::FieldLiteralInvalid {
                pos: self.pos,
                msg: "'z' is not defined in a prime field".into(),
            });
        };
        self.bump()?;
        let mut exp = 1;
        if self.tok == Tok::Caret {
            self.bump()?;
            let Tok::Int(e) = self.tok else {
                return self.syntax("expected an exponent");
            };
            exp = e;
            self.bump()?;
        }
        Ok(f.mul(c, f.pow(z, exp)))
    }
}

/// Parses a quadratic form in the variables of `space`.
pub fn parse_form(text: &str, space: &Arc<ProjectiveSpace>) -> Result<QuadraticForm, ParseError> {
    let mut parser = Parser::new(text, space.field(), space.n_vars())?;
    if parser.tok == Tok::End {
        return parser.syntax("empty expression");
    }
    let mut terms = Vec::new();
    parser.form(&mut terms)?;
    Ok(QuadraticForm::from_terms(space.clone(), &terms).expect("variables were range-checked"))
}

/// Convenience entry point building GF(q) and P^N on the fly.
pub fn parse_form_qn(text: &str, q: u64, n: usize) -> crate::Result<QuadraticForm> {
    let field = Arc::new(GaloisField::with_order(q)?);
    let space = Arc::new(ProjectiveSpace::new(field, n)?);
    Ok(parse_form(text, &space)?)
}

/// Coefficient rendering: bare integers for prime-subfield values,
/// parenthesized polynomials in `z` otherwise.
pub fn render_coeff(field: &GaloisField, c: Elem) -> String {
    let coeffs = field.coeffs(c);
    if coeffs[1..].iter().all(|&x| x == 0) {
        coeffs[0].to_string()
    } else {
        format!("({})", field.render(c))
    }
}

pub fn render_form(f: &QuadraticForm) -> String {
    let field = f.field();
    let mut terms = Vec::new();
    for ((i, j), &c) in monomials(f.n_vars()).into_iter().zip(f.coeffs()) {
        if c.is_zero() {
            continue;
        }
        let mono = if i == j {
            format!("X{i}^2")
        } else {
            format!("X{i}*X{j}")
        };
        if c == Elem::ONE {
            terms.push(mono);
        } else {
            terms.push(format!("{}*{mono}", render_coeff(field, c)));
        }
    }
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn space(q: u64, n: usize) -> Arc<ProjectiveSpace> {
        Arc::new(ProjectiveSpace::new(Arc::new(GaloisField::with_order(q).unwrap()), n).unwrap())
    }

    #[test]
    fn hyperbolic_canonical_form() {
        let s = space(2, 3);
        let f = parse_form("X0*X1 + X2*X3", &s).unwrap();
        let g = QuadraticForm::from_terms(s, &[(0, 1, Elem::ONE), (2, 3, Elem::ONE)]).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn diagonal_binary_over_gf3() {
        let s = space(3, 1);
        let f = parse_form("X0^2 + 2*X1^2", &s).unwrap();
        assert_eq!(f.coeff(0, 0), Elem(1));
        assert_eq!(f.coeff(1, 1), Elem(2));
        assert_eq!(f.coeff(0, 1), Elem(0));
        // '-' reduces mod p: -X1^2 = 2 X1^2 over GF(3)
        assert_eq!(parse_form("X0^2 - X1^2", &s).unwrap(), f);
    }

    #[test]
    fn errors() {
        let s = space(5, 2);
        assert!(matches!(
            parse_form("X0 + X1", &s),
            Err(ParseError::NonHomogeneous { pos: 0, degree: 1 })
        ));
        assert!(matches!(
            parse_form("X0*X1*X2", &s),
            Err(ParseError::NonHomogeneous { degree: 3, .. })
        ));
        assert!(matches!(
            parse_form("X0^3", &s),
            Err(ParseError::NonHomogeneous { .. })
        ));
        assert!(matches!(
            parse_form("X0*X7", &s),
            Err(ParseError::UnknownVariable { pos: 3, .. })
        ));
        assert!(matches!(parse_form("X0 X1", &s), Err(ParseError::Syntax { pos: 3, .. })));
        assert!(matches!(parse_form("Y0^2", &s), Err(ParseError::Syntax { pos: 0, .. })));
        assert!(matches!(parse_form("", &s), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_form("(z+1)*X0^2", &s),
            Err(ParseError::FieldLiteralInvalid { .. })
        ));
        assert!(matches!(parse_form("3 + X0^2", &s), Err(ParseError::NonHomogeneous { .. })));
    }

    #[test]
    fn extension_coefficients() {
        let s = space(4, 2);
        let f = parse_form("(z+1)*X0*X1 + z*X1^2", &s);
        // 'z' must be parenthesized
        assert!(f.is_err());
        let f = parse_form("(z+1)*X0*X1 + (z)*X1^2 + X2^2", &s).unwrap();
        let field = s.field();
        let z = field.generator().unwrap();
        assert_eq!(f.coeff(0, 1), field.add(z, Elem::ONE));
        assert_eq!(f.coeff(1, 1), z);
        assert_eq!(render_form(&f), "(z+1)*X0*X1 + (z)*X1^2 + X2^2");
        // z^2 reduces by the modulus
        let g = parse_form("(z^2)*X0^2", &s).unwrap();
        assert_eq!(g.coeff(0, 0), field.add(z, Elem::ONE));
    }

    #[test]
    fn repeated_monomials_accumulate() {
        let s = space(3, 1);
        let f = parse_form("X0*X1 + X1*X0 + 2 * 2 * X0^2", &s).unwrap();
        assert_eq!(f.coeff(0, 1), Elem(2));
        assert_eq!(f.coeff(0, 0), Elem(1));
        assert!(parse_form("0", &s).unwrap().is_zero());
        assert!(parse_form("X0^2 - X0^2", &s).unwrap().is_zero());
    }

    fn arb_form(q: u64, n: usize) -> impl Strategy<Value = QuadraticForm> {
        let s = space(q, n);
        let m = crate::quadric::monomial_count(n + 1);
        proptest::collection::vec(0..q as u8, m).prop_map(move |c| {
            QuadraticForm::from_coeffs(s.clone(), c.into_iter().map(Elem).collect()).unwrap()
        })
    }

    proptest! {
        #[test]
        fn render_parse_round_trip_gf4(f in arb_form(4, 3)) {
            let back = parse_form(&render_form(&f), f.space()).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn render_parse_round_trip_gf9(f in arb_form(9, 2)) {
            let back = parse_form(&render_form(&f), f.space()).unwrap();
            prop_assert_eq!(back, f);
        }

        #[test]
        fn render_parse_round_trip_gf5(f in arb_form(5, 4)) {
            let back = parse_form(&render_form(&f), f.space()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
