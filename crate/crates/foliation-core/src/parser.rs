//! Text grammar for polynomials, 1-forms and vector fields.
//!
//! Polynomials: signed integers, rationals `p/q`, variables from
//! `{x,y,z,t,u,v}`, operators `+ - * ^`, parentheses. `^` binds tightest and
//! there is no implicit multiplication. Forms add the differentials
//! `dx..dv`, vector fields the symbols `Dx..Dv`.

use crate::error::Error;
use crate::poly::{MultiPoly, Rational, Var, ALL_VARS, NVARS};
use crate::Result;
use num_bigint::BigInt;
use num_traits::Zero;

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Sym(String),
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn tokenize(s: &str) -> Result<Vec<Token>> {
    let mut out = Vec::new();
    let bytes = s.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        match c {
            ' ' | '\t' | '\n' | '\r' => i += 1,
            '+' => {
                out.push(Token::Plus);
                i += 1;
            }
            '-' => {
                out.push(Token::Minus);
                i += 1;
            }
            '*' => {
                out.push(Token::Star);
                i += 1;
            }
            '^' => {
                out.push(Token::Caret);
                i += 1;
            }
            '/' => {
                out.push(Token::Slash);
                i += 1;
            }
            '(' => {
                out.push(Token::LParen);
                i += 1;
            }
            ')' => {
                out.push(Token::RParen);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = s[start..i].parse().expect("digits parse");
                out.push(Token::Int(n));
            }
            'a'..='z' | 'A'..='Z' => {
                let start = i;
                while i < bytes.len() && (bytes[i] as char).is_ascii_alphanumeric() {
                    i += 1;
                }
                out.push(Token::Sym(s[start..i].to_string()));
            }
            _ => return Err(Error::ParseError(format!("unexpected character '{c}'"))),
        }
    }
    Ok(out)
}

/// A parsed value: a scalar polynomial plus linear parts in the differential
/// markers (`dx..`) and the vector-field markers (`Dx..`).
#[derive(Debug, Clone)]
struct Value {
    scalar: MultiPoly,
    diff: [MultiPoly; NVARS],
    field: [MultiPoly; NVARS],
}

impl Value {
    fn scalar(p: MultiPoly) -> Value {
        Value {
            scalar: p,
            diff: Default::default(),
            field: Default::default(),
        }
    }

    fn is_scalar(&self) -> bool {
        self.diff.iter().all(|p| p.is_zero()) && self.field.iter().all(|p| p.is_zero())
    }

    fn add(&self, rhs: &Value) -> Value {
        Value {
            scalar: &self.scalar + &rhs.scalar,
            diff: std::array::from_fn(|i| &self.diff[i] + &rhs.diff[i]),
            field: std::array::from_fn(|i| &self.field[i] + &rhs.field[i]),
        }
    }

    fn neg(&self) -> Value {
        Value {
            scalar: -&self.scalar,
            diff: std::array::from_fn(|i| -&self.diff[i]),
            field: std::array::from_fn(|i| -&self.field[i]),
        }
    }

    fn mul(&self, rhs: &Value) -> Result<Value> {
        if !self.is_scalar() && !rhs.is_scalar() {
            return Err(Error::ParseError(
                "products of differentials are not allowed".into(),
            ));
        }
        let (s, v) = if self.is_scalar() { (self, rhs) } else { (rhs, self) };
        Ok(Value {
            scalar: &s.scalar * &v.scalar,
            diff: std::array::from_fn(|i| &s.scalar * &v.diff[i]),
            field: std::array::from_fn(|i| &s.scalar * &v.field[i]),
        })
    }
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn next(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    fn expect(&mut self, t: &Token) -> Result<()> {
        match self.next() {
            Some(ref got) if got == t => Ok(()),
            other => Err(Error::ParseError(format!("expected {t:?}, got {other:?}"))),
        }
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Value> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.next();
                    acc = acc.add(&self.term()?);
                }
                Some(Token::Minus) => {
                    self.next();
                    acc = acc.add(&self.term()?.neg());
                }
                _ => return Ok(acc),
            }
        }
    }

    // term := unary ('*' unary)*
    fn term(&mut self) -> Result<Value> {
        let mut acc = self.unary()?;
        while self.peek() == Some(&Token::Star) {
            self.next();
            acc = acc.mul(&self.unary()?)?;
        }
        Ok(acc)
    }

    // unary := '-' unary | power
    fn unary(&mut self) -> Result<Value> {
        if self.peek() == Some(&Token::Minus) {
            self.next();
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    // power := atom ('^' INT)?
    fn power(&mut self) -> Result<Value> {
        let base = self.atom()?;
        if self.peek() == Some(&Token::Caret) {
            self.next();
            let e = match self.next() {
                Some(Token::Int(n)) => n,
                other => {
                    return Err(Error::ParseError(format!(
                        "exponent must be a nonnegative integer, got {other:?}"
                    )))
                }
            };
            if !base.is_scalar() {
                return Err(Error::ParseError("cannot exponentiate a differential".into()));
            }
            let e: usize = e
                .try_into()
                .map_err(|_| Error::ParseError("exponent out of range".into()))?;
            return Ok(Value::scalar(base.scalar.pow(e)));
        }
        Ok(base)
    }

    // atom := INT ('/' INT)? | SYM | '(' expr ')'
    fn atom(&mut self) -> Result<Value> {
        match self.next() {
            Some(Token::Int(n)) => {
                if self.peek() == Some(&Token::Slash) {
                    self.next();
                    match self.next() {
                        Some(Token::Int(d)) => {
                            if d.is_zero() {
                                return Err(Error::ParseError("zero denominator".into()));
                            }
                            Ok(Value::scalar(MultiPoly::constant(Rational::new(n, d))))
                        }
                        other => Err(Error::ParseError(format!(
                            "expected denominator integer, got {other:?}"
                        ))),
                    }
                } else {
                    Ok(Value::scalar(MultiPoly::constant(Rational::from(n))))
                }
            }
            Some(Token::Sym(name)) => self.symbol(&name),
            Some(Token::LParen) => {
                let v = self.expr()?;
                self.expect(&Token::RParen)?;
                Ok(v)
            }
            other => Err(Error::ParseError(format!("unexpected token {other:?}"))),
        }
    }

    fn symbol(&mut self, name: &str) -> Result<Value> {
        if let Some(v) = Var::from_name(name) {
            return Ok(Value::scalar(MultiPoly::var(v)));
        }
        if let Some(rest) = name.strip_prefix('d') {
            if let Some(v) = Var::from_name(rest) {
                let mut val = Value::scalar(MultiPoly::zero());
                val.diff[v.index()] = MultiPoly::one();
                return Ok(val);
            }
        }
        if let Some(rest) = name.strip_prefix('D') {
            if let Some(v) = Var::from_name(rest) {
                let mut val = Value::scalar(MultiPoly::zero());
                val.field[v.index()] = MultiPoly::one();
                return Ok(val);
            }
        }
        Err(Error::ParseError(format!("unknown symbol '{name}'")))
    }
}

fn parse_value(input: &str) -> Result<Value> {
    let input = input.trim();
    let input = input
        .strip_prefix("form:")
        .or_else(|| input.strip_prefix("field:"))
        .unwrap_or(input);
    let tokens = tokenize(input)?;
    if tokens.is_empty() {
        return Err(Error::ParseError("empty input".into()));
    }
    let mut p = Parser { tokens, pos: 0 };
    let v = p.expr()?;
    if p.pos != p.tokens.len() {
        return Err(Error::ParseError(format!(
            "trailing input at token {:?}",
            p.tokens[p.pos]
        )));
    }
    Ok(v)
}

/// Parse a plain polynomial.
pub fn parse_poly(input: &str) -> Result<MultiPoly> {
    let v = parse_value(input)?;
    if !v.is_scalar() {
        return Err(Error::ParseError(
            "expected a polynomial, found differentials".into(),
        ));
    }
    Ok(v.scalar)
}

/// Parse a 1-form: returns the coefficient of `d<var>` for each variable.
pub fn parse_form(input: &str) -> Result<[MultiPoly; NVARS]> {
    let v = parse_value(input)?;
    if !v.scalar.is_zero() || v.field.iter().any(|p| !p.is_zero()) {
        return Err(Error::ParseError(
            "expected a 1-form: every term must carry exactly one differential".into(),
        ));
    }
    Ok(v.diff)
}

/// Parse a polynomial vector field written with `Dx, Dy, Dz`.
pub fn parse_field(input: &str) -> Result<[MultiPoly; NVARS]> {
    let v = parse_value(input)?;
    if !v.scalar.is_zero() || v.diff.iter().any(|p| !p.is_zero()) {
        return Err(Error::ParseError(
            "expected a vector field: every term must carry exactly one Dx/Dy/Dz".into(),
        ));
    }
    Ok(v.field)
}

/// Print a 1-form from per-variable coefficients, eliding zero components.
pub fn format_form(coeffs: &[MultiPoly]) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            parts.push(format!("({})*d{}", c, ALL_VARS[i].name()));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

/// Print a vector field from per-variable coefficients.
pub fn format_field(coeffs: &[MultiPoly]) -> String {
    let mut parts = Vec::new();
    for (i, c) in coeffs.iter().enumerate() {
        if !c.is_zero() {
            parts.push(format!("({})*D{}", c, ALL_VARS[i].name()));
        }
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{rat, rat_int};

    #[test]
    fn parses_rationals_and_precedence() {
        let p = parse_poly("3*x^2*y - 1/2*z^3 + 2").unwrap();
        let x = MultiPoly::var(Var::X);
        let y = MultiPoly::var(Var::Y);
        let z = MultiPoly::var(Var::Z);
        let expect = &(&(&(&x * &x) * &y).mul_scalar(&rat_int(3))
            - &(&(&z * &z) * &z).mul_scalar(&rat(1, 2)))
            + &MultiPoly::constant(rat_int(2));
        assert_eq!(p, expect);
    }

    #[test]
    fn caret_binds_tighter_than_star() {
        // 2*x^2 is 2*(x^2), and -x^2 is -(x^2)
        let p = parse_poly("-x^2").unwrap();
        let x = MultiPoly::var(Var::X);
        assert_eq!(p, -&(&x * &x));
    }

    #[test]
    fn no_implicit_multiplication() {
        assert!(parse_poly("2x").is_err());
        assert!(parse_poly("x y").is_err());
    }

    #[test]
    fn parses_forms_and_fields() {
        let f = parse_form("z*dy - y*dz").unwrap();
        assert_eq!(f[Var::Y.index()], MultiPoly::var(Var::Z));
        assert_eq!(f[Var::Z.index()], -&MultiPoly::var(Var::Y));
        assert!(f[Var::X.index()].is_zero());

        let v = parse_field("field: y*Dx").unwrap();
        assert_eq!(v[Var::X.index()], MultiPoly::var(Var::Y));

        assert!(parse_form("z*dy - y").is_err());
        assert!(parse_form("dy*dz").is_err());
    }

    #[test]
    fn print_parse_round_trip() {
        let s = "(x^2*y - 2*x*z + 1/3)*dx + (y*z)*dz";
        let f = parse_form(s).unwrap();
        let printed = format_form(&f);
        let again = parse_form(&printed).unwrap();
        assert_eq!(f, again);
        assert_eq!(printed, "(x^2*y - 2*x*z + 1/3)*dx + (y*z)*dz");
    }
}
