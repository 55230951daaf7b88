//! Recursive-descent parser for the textual curve grammar.
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := atom ('^' unary)?
//! atom    := number | 't' | 'pi' | 'e' | 'i' | ident '(' expr ')' | '(' expr ')'
//! ```
//!
//! Constants are tracked exactly as Gaussian rationals whenever possible so
//! that frequencies like `7/2` or `0.25` reach the rate tags without rounding.

use num_complex::Complex64;
use num_traits::{One, Zero};

use super::rational::{parse_decimal_exact, GaussRational, Rational};
use super::{PolyExp, PolyExpError, Rate, Term};

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: i64 = 64;

/// Tags are only attached when the float value is a single correctly
/// rounded division.
const EXACT_INT_LIMIT: i64 = 1 << 53;
const TAG_DENOMINATOR: i64 = 64;

pub fn parse(text: &str) -> Result<PolyExp, PolyExpError> {
    let tokens = lex(text)?;
    let mut p = Parser { tokens, pos: 0, len: text.len() };
    let v = p.expr()?;
    match p.peek() {
        None => Ok(v.poly),
        Some(tok) => Err(syntax(tok.pos, &["+", "-", "*", "/", "^", "end of input"])),
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

#[derive(Clone, Debug)]
struct Token {
    tok: Tok,
    pos: usize,
}

fn syntax(pos: usize, expected: &[&str]) -> PolyExpError {
    PolyExpError::Syntax { pos, expected: expected.iter().map(|s| s.to_string()).collect() }
}

fn unsupported(pos: usize, reason: impl Into<String>) -> PolyExpError {
    PolyExpError::Unsupported { pos, reason: reason.into() }
}

fn lex(text: &str) -> Result<Vec<Token>, PolyExpError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let ch = bytes[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() || (ch == '.' && bytes.get(i + 1).is_some_and(u8::is_ascii_digit)) {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_digit() || bytes[i] == b'.') {
                i += 1;
            }
            if i < bytes.len() && (bytes[i] == b'e' || bytes[i] == b'E') {
                let mut j = i + 1;
                if j < bytes.len() && (bytes[j] == b'+' || bytes[j] == b'-') {
                    j += 1;
                }
                if j < bytes.len() && bytes[j].is_ascii_digit() {
                    while j < bytes.len() && bytes[j].is_ascii_digit() {
                        j += 1;
                    }
                    i = j;
                }
            }
            let lit = &text[start..i];
            if lit.matches('.').count() > 1 {
                return Err(syntax(start, &["number"]));
            }
            out.push(Token { tok: Tok::Num(lit.to_string()), pos: start });
        } else if ch.is_ascii_alphabetic() || ch == '_' {
            let start = i;
            while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                i += 1;
            }
            out.push(Token { tok: Tok::Ident(text[start..i].to_string()), pos: start });
        } else if "+-*/^()".contains(ch) {
            out.push(Token { tok: Tok::Op(ch), pos: i });
            i += 1;
        } else {
            return Err(syntax(i, &["number", "identifier", "operator"]));
        }
    }
    Ok(out)
}

/// Parsed value; `lin` holds exact `(slope, intercept)` when the value is a
/// linear form in `t` with exactly known coefficients.
#[derive(Clone, Debug)]
struct Val {
    poly: PolyExp,
    lin: Option<(GaussRational, GaussRational)>,
}

impl Val {
    fn constant(value: Complex64, exact: Option<GaussRational>) -> Val {
        Val { poly: PolyExp::constant(value), lin: exact.map(|e| (gzero(), e)) }
    }

    fn exact_constant(&self) -> Option<GaussRational> {
        match self.lin {
            Some((s, c)) if s.is_zero() => Some(c),
            _ => None,
        }
    }
}

fn gzero() -> GaussRational {
    GaussRational::real(Rational::zero())
}

fn exact_value(g: GaussRational) -> Complex64 {
    Complex64::new(super::rational::ratio_to_f64(g.re), super::rational::ratio_to_f64(g.im))
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
    len: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos)
    }

    fn here(&self) -> usize {
        self.peek().map_or(self.len, |t| t.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if matches!(self.peek(), Some(Token { tok: Tok::Op(c), .. }) if *c == op) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expect_op(&mut self, op: char) -> Result<(), PolyExpError> {
        if self.eat_op(op) {
            Ok(())
        } else {
            Err(syntax(self.here(), &[&op.to_string()]))
        }
    }

    fn expr(&mut self) -> Result<Val, PolyExpError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                let rhs = self.term()?;
                acc = add(acc, rhs, false);
            } else if self.eat_op('-') {
                let rhs = self.term()?;
                acc = add(acc, rhs, true);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Val, PolyExpError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                let rhs = self.unary()?;
                acc = mul(acc, rhs);
            } else if self.eat_op('/') {
                let at = self.here();
                let rhs = self.unary()?;
                acc = div(acc, rhs, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Val, PolyExpError> {
        if self.eat_op('-') {
            let v = self.unary()?;
            Ok(Val { poly: -&v.poly, lin: v.lin.map(|(s, c)| (s.neg(), c.neg())) })
        } else if self.eat_op('+') {
            self.unary()
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Val, PolyExpError> {
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        let at = self.here();
        let exp = self.unary()?;
        let n = exp
            .exact_constant()
            .and_then(|g| g.as_integer())
            .filter(|n| (0..=MAX_EXPONENT).contains(n))
            .ok_or_else(|| unsupported(at, format!("exponent must be an integer in 0..={MAX_EXPONENT}")))?;
        let n = n as u32;
        let lin = match base.lin {
            _ if n == 0 => Some((gzero(), GaussRational::real(Rational::one()))),
            Some(l) if n == 1 => Some(l),
            Some((s, c)) if s.is_zero() => {
                let mut acc = GaussRational::real(Rational::one());
                let mut ok = true;
                for _ in 0..n {
                    match acc.checked_mul(&c) {
                        Some(v) => acc = v,
                        None => {
                            ok = false;
                            break;
                        }
                    }
                }
                ok.then_some((gzero(), acc))
            }
            _ => None,
        };
        Ok(Val { poly: base.poly.powu(n), lin })
    }

    fn atom(&mut self) -> Result<Val, PolyExpError> {
        const ATOM: &[&str] = &["number", "t", "pi", "e", "i", "function", "("];
        let Some(tok) = self.peek().cloned() else {
            return Err(syntax(self.len, ATOM));
        };
        self.pos += 1;
        match tok.tok {
            Tok::Num(lit) => {
                let value: f64 = lit.parse().map_err(|_| syntax(tok.pos, &["number"]))?;
                let exact = parse_decimal_exact(&lit).map(GaussRational::real);
                Ok(Val::constant(Complex64::new(value, 0.0), exact))
            }
            Tok::Op('(') => {
                let v = self.expr()?;
                self.expect_op(')')?;
                Ok(v)
            }
            Tok::Op(_) => Err(syntax(tok.pos, ATOM)),
            Tok::Ident(name) => match name.as_str() {
                "t" => Ok(Val {
                    poly: PolyExp::t(),
                    lin: Some((GaussRational::real(Rational::one()), gzero())),
                }),
                "pi" => Ok(Val::constant(Complex64::new(std::f64::consts::PI, 0.0), None)),
                "e" => Ok(Val::constant(Complex64::new(std::f64::consts::E, 0.0), None)),
                "i" => Ok(Val::constant(Complex64::new(0.0, 1.0), Some(GaussRational::i()))),
                _ => {
                    if !matches!(self.peek(), Some(Token { tok: Tok::Op('('), .. })) {
                        return Err(syntax(tok.pos, ATOM));
                    }
                    self.pos += 1;
                    let arg_pos = self.here();
                    let arg = self.expr()?;
                    self.expect_op(')')?;
                    apply(&name, tok.pos, arg_pos, arg)
                }
            },
        }
    }
}

fn add(a: Val, b: Val, subtract: bool) -> Val {
    let poly = if subtract { &a.poly - &b.poly } else { &a.poly + &b.poly };
    let lin = match (a.lin, b.lin) {
        (Some((s1, c1)), Some((s2, c2))) => {
            let (s2, c2) = if subtract { (s2.neg(), c2.neg()) } else { (s2, c2) };
            s1.checked_add(&s2).zip(c1.checked_add(&c2))
        }
        _ => None,
    };
    Val { poly, lin }
}

fn mul(a: Val, b: Val) -> Val {
    let poly = &a.poly * &b.poly;
    let lin = match (a.lin, b.lin) {
        (Some((s1, c1)), Some((s2, c2))) if s1.is_zero() || s2.is_zero() => {
            let (k, (s, c)) = if s1.is_zero() { (c1, (s2, c2)) } else { (c2, (s1, c1)) };
            k.checked_mul(&s).zip(k.checked_mul(&c))
        }
        _ => None,
    };
    Val { poly, lin }
}

fn div(a: Val, b: Val, at: usize) -> Result<Val, PolyExpError> {
    let Some(k) = b.poly.constant_value() else {
        return Err(PolyExpError::DivisionByNonConstant { pos: at });
    };
    if k == Complex64::zero() {
        return Err(unsupported(at, "division by zero"));
    }
    let poly = PolyExp::from_terms(a.poly.terms().iter().map(|t| Term::new(t.coeff / k, t.power, t.rate)));
    let lin = match (a.lin, b.exact_constant()) {
        (Some((s, c)), Some(k)) => s.checked_div(&k).zip(c.checked_div(&k)),
        _ => None,
    };
    Ok(Val { poly, lin })
}

/// Rate `factor * slope` with a tag when the product is exactly `i p/q`.
fn rate_of(slope_f: Complex64, slope_exact: Option<GaussRational>, factor: GaussRational) -> Rate {
    if let Some(g) = slope_exact.and_then(|s| s.checked_mul(&factor)) {
        let small = |r: Rational| r.numer().abs() < EXACT_INT_LIMIT && *r.denom() <= TAG_DENOMINATOR;
        if g.re.is_zero() && small(g.im) {
            return Rate::imaginary(g.im);
        }
        if g.im.is_zero() && small(g.re) {
            return Rate::new(exact_value(g));
        }
    }
    Rate::new(slope_f * exact_value(factor))
}

fn apply(name: &str, fn_pos: usize, arg_pos: usize, arg: Val) -> Result<Val, PolyExpError> {
    if let Some(c) = arg.poly.constant_value() {
        let value = match name {
            "exp" => c.exp(),
            "sin" => c.sin(),
            "cos" => c.cos(),
            "sinh" => c.sinh(),
            "cosh" => c.cosh(),
            "sqrt" => c.sqrt(),
            "ln" | "log" => {
                if c == Complex64::zero() {
                    return Err(unsupported(arg_pos, "logarithm of zero"));
                }
                c.ln()
            }
            _ => return Err(unsupported(fn_pos, format!("unknown function `{name}`"))),
        };
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(unsupported(fn_pos, format!("`{name}` overflows")));
        }
        let exact = match (name, arg.exact_constant()) {
            ("exp" | "cos" | "cosh", Some(g)) if g.is_zero() => Some(GaussRational::real(Rational::one())),
            ("sin" | "sinh" | "sqrt", Some(g)) if g.is_zero() => Some(gzero()),
            ("ln" | "log", Some(g)) if g == GaussRational::real(Rational::one()) => Some(gzero()),
            _ => None,
        };
        return Ok(Val::constant(value, exact));
    }

    if !matches!(name, "exp" | "sin" | "cos" | "sinh" | "cosh") {
        if matches!(name, "sqrt" | "ln" | "log") {
            return Err(unsupported(fn_pos, format!("`{name}` only accepts constant arguments")));
        }
        return Err(unsupported(fn_pos, format!("unknown function `{name}`")));
    }
    if arg.poly.terms().iter().any(|t| !t.rate.is_zero() || t.power > 1) {
        return Err(unsupported(arg_pos, format!("argument of `{name}` must be linear in t")));
    }
    let coeff_of = |power: u32| {
        arg.poly.terms().iter().find(|t| t.power == power).map_or(Complex64::zero(), |t| t.coeff)
    };
    let slope = coeff_of(1);
    let phase = coeff_of(0);
    let (slope_exact, phase_exact) = match arg.lin {
        Some((s, c)) => (Some(s), Some(c)),
        None => (None, None),
    };
    let one = GaussRational::real(Rational::one());
    let i = GaussRational::i();
    let ci = Complex64::new(0.0, 1.0);
    let phase_is_zero = phase_exact.is_some_and(|c| c.is_zero());
    // e^{+-s phase} factors, exactly one when the phase is exactly zero.
    let factor = |s: Complex64| if phase_is_zero { Complex64::one() } else { (s * phase).exp() };
    let terms = match name {
        "exp" => vec![Term::new(factor(Complex64::one()), 0, rate_of(slope, slope_exact, one))],
        "cos" => vec![
            Term::new(0.5 * factor(ci), 0, rate_of(slope, slope_exact, i)),
            Term::new(0.5 * factor(-ci), 0, rate_of(slope, slope_exact, i.neg())),
        ],
        "sin" => vec![
            Term::new(Complex64::new(0.0, -0.5) * factor(ci), 0, rate_of(slope, slope_exact, i)),
            Term::new(Complex64::new(0.0, 0.5) * factor(-ci), 0, rate_of(slope, slope_exact, i.neg())),
        ],
        "cosh" => vec![
            Term::new(0.5 * factor(Complex64::one()), 0, rate_of(slope, slope_exact, one)),
            Term::new(0.5 * factor(-Complex64::one()), 0, rate_of(slope, slope_exact, one.neg())),
        ],
        _ => vec![
            Term::new(0.5 * factor(Complex64::one()), 0, rate_of(slope, slope_exact, one)),
            Term::new(-0.5 * factor(-Complex64::one()), 0, rate_of(slope, slope_exact, one.neg())),
        ],
    };
    if terms.iter().any(|t| !(t.coeff.re.is_finite() && t.coeff.im.is_finite())) {
        return Err(unsupported(arg_pos, "constant phase overflows"));
    }
    Ok(Val { poly: PolyExp::from_terms(terms), lin: None })
}
