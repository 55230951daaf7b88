//! Exponential polynomials: finite sums of `c t^n e^{k t}` with complex `c`, `k`.
//!
//! The class is closed under sums, products, derivatives and antiderivatives,
//! which is what makes the surface integrals below explicit. Values are kept
//! in a normalized form: one term per `(power, rate)` key, coefficients that
//! cancel are dropped, and terms are sorted by `(power, rate.re, rate.im)`.
//!
//! Purely imaginary rates may carry an exact tag `i * (p/q)`. Tags survive
//! products and calculus and are what the unit-circle substitution consumes.

mod display;
mod parse;
pub mod rational;

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use num_traits::{CheckedAdd, Zero};
use thiserror::Error;

use crate::tolerances;
pub use parse::parse;
pub use rational::{snap_ratio, Rational};

pub type Complex = Complex64;

/// `Re(k z)` above this overflows `f64`.
const EXP_OVERFLOW: f64 = 709.0;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolyExpError {
    #[error("syntax error at {pos}: expected one of {expected:?}")]
    Syntax { pos: usize, expected: Vec<String> },
    #[error("unsupported expression at {pos}: {reason}")]
    Unsupported { pos: usize, reason: String },
    #[error("division by a non-constant expression at {pos}")]
    DivisionByNonConstant { pos: usize },
    #[error("overflow evaluating exp({rate} * {z})")]
    Overflow { z: Complex, rate: Complex },
}

/// Exponential rate `k` in `e^{k t}`.
#[derive(Clone, Copy, Debug)]
pub struct Rate {
    value: Complex,
    tag: Option<Rational>,
}

impl Rate {
    pub const ZERO: Rate = Rate { value: Complex::new(0.0, 0.0), tag: Some(Rational::new_raw(0, 1)) };

    /// Untagged rate. Values within the merge tolerance of zero become zero.
    pub fn new(value: Complex) -> Rate {
        if value.norm() <= tolerances::RATE_MERGE {
            Rate::ZERO
        } else {
            Rate { value, tag: None }
        }
    }

    pub fn real(x: f64) -> Rate {
        Rate::new(Complex::new(x, 0.0))
    }

    /// The exact rate `i * r`.
    pub fn imaginary(r: Rational) -> Rate {
        Rate { value: Complex::new(0.0, rational::ratio_to_f64(r)), tag: Some(r) }
    }

    /// `i * omega`, tagged when `omega` is a ratio with a small denominator.
    pub fn imaginary_f64(omega: f64) -> Rate {
        match snap_ratio(omega) {
            Some(r) => Rate::imaginary(r),
            None => Rate::new(Complex::new(0.0, omega)),
        }
    }

    pub fn value(&self) -> Complex {
        self.value
    }

    /// `Some(p/q)` when the rate is known to be exactly `i p/q`.
    pub fn imaginary_ratio(&self) -> Option<Rational> {
        self.tag
    }

    pub fn is_zero(&self) -> bool {
        self.value.re == 0.0 && self.value.im == 0.0
    }

    pub fn conj(&self) -> Rate {
        Rate { value: self.value.conj(), tag: self.tag.map(|r| -r) }
    }

    fn sum(&self, other: &Rate) -> Rate {
        if let (Some(a), Some(b)) = (self.tag, other.tag) {
            if let Some(s) = a.checked_add(&b) {
                return Rate::imaginary(s);
            }
        }
        Rate::new(self.value + other.value)
    }

    fn matches(&self, other: &Rate) -> bool {
        match (self.tag, other.tag) {
            (Some(a), Some(b)) => a == b,
            _ => (self.value - other.value).norm() <= tolerances::RATE_MERGE,
        }
    }
}

impl PartialEq for Rate {
    fn eq(&self, other: &Rate) -> bool {
        self.value == other.value
    }
}

/// One term `coeff * t^power * e^{rate t}`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Term {
    pub coeff: Complex,
    pub power: u32,
    pub rate: Rate,
}

impl Term {
    pub fn new(coeff: Complex, power: u32, rate: Rate) -> Term {
        Term { coeff, power, rate }
    }

    fn eval(&self, z: Complex) -> Result<Complex, PolyExpError> {
        let kz = self.rate.value * z;
        if kz.re > EXP_OVERFLOW {
            return Err(PolyExpError::Overflow { z, rate: self.rate.value });
        }
        let e = if self.rate.is_zero() { Complex::new(1.0, 0.0) } else { kz.exp() };
        Ok(self.coeff * z.powu(self.power) * e)
    }
}

/// A normalized exponential polynomial.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PolyExp {
    terms: Vec<Term>,
}

impl PolyExp {
    pub fn zero() -> PolyExp {
        PolyExp { terms: Vec::new() }
    }

    pub fn constant(c: impl Into<Complex>) -> PolyExp {
        PolyExp::from_terms([Term::new(c.into(), 0, Rate::ZERO)])
    }

    pub fn one() -> PolyExp {
        PolyExp::constant(1.0)
    }

    /// The identity function `t`.
    pub fn t() -> PolyExp {
        PolyExp::monomial(1.0, 1)
    }

    pub fn monomial(c: impl Into<Complex>, power: u32) -> PolyExp {
        PolyExp::from_terms([Term::new(c.into(), power, Rate::ZERO)])
    }

    pub fn exp(c: impl Into<Complex>, rate: Rate) -> PolyExp {
        PolyExp::from_terms([Term::new(c.into(), 0, rate)])
    }

    /// `cos(omega t + phase)` through Euler's formula.
    pub fn cos(omega: f64, phase: f64) -> PolyExp {
        PolyExp::cos_rate(Rate::imaginary_f64(omega), phase)
    }

    /// `sin(omega t + phase)` through Euler's formula.
    pub fn sin(omega: f64, phase: f64) -> PolyExp {
        PolyExp::sin_rate(Rate::imaginary_f64(omega), phase)
    }

    /// `cos(omega t + phase)` where `rate = i omega`.
    pub fn cos_rate(rate: Rate, phase: f64) -> PolyExp {
        let e = Complex::from_polar(0.5, phase);
        PolyExp::from_terms([Term::new(e, 0, rate), Term::new(e.conj(), 0, rate.conj())])
    }

    /// `sin(omega t + phase)` where `rate = i omega`.
    pub fn sin_rate(rate: Rate, phase: f64) -> PolyExp {
        let e = Complex::from_polar(0.5, phase);
        let minus_i = Complex::new(0.0, -1.0);
        PolyExp::from_terms([
            Term::new(minus_i * e, 0, rate),
            Term::new(-(minus_i * e.conj()), 0, rate.conj()),
        ])
    }

    /// Builds and normalizes.
    pub fn from_terms(terms: impl IntoIterator<Item = Term>) -> PolyExp {
        PolyExp { terms: normalize(terms) }
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Value of a constant function, `None` if anything depends on `t`.
    pub fn constant_value(&self) -> Option<Complex> {
        match self.terms.as_slice() {
            [] => Some(Complex::zero()),
            [t] if t.power == 0 && t.rate.is_zero() => Some(t.coeff),
            _ => None,
        }
    }

    pub fn is_constant(&self) -> bool {
        self.constant_value().is_some()
    }

    pub fn max_power(&self) -> u32 {
        self.terms.iter().map(|t| t.power).max().unwrap_or(0)
    }

    pub fn scale(&self, c: impl Into<Complex>) -> PolyExp {
        let c = c.into();
        PolyExp::from_terms(self.terms.iter().map(|t| Term::new(t.coeff * c, t.power, t.rate)))
    }

    pub fn powu(&self, n: u32) -> PolyExp {
        let mut acc = PolyExp::one();
        for _ in 0..n {
            acc = &acc * self;
        }
        acc
    }

    /// The function `conj(p(conj z))`: conjugate coefficients and rates.
    pub fn conj(&self) -> PolyExp {
        PolyExp::from_terms(self.terms.iter().map(|t| Term::new(t.coeff.conj(), t.power, t.rate.conj())))
    }

    pub fn real_part(&self) -> PolyExp {
        (self + &self.conj()).scale(0.5)
    }

    /// Term-wise derivative.
    pub fn diff(&self) -> PolyExp {
        let mut out = Vec::with_capacity(2 * self.terms.len());
        for t in &self.terms {
            if t.power > 0 {
                out.push(Term::new(t.coeff * t.power as f64, t.power - 1, t.rate));
            }
            if !t.rate.is_zero() {
                out.push(Term::new(t.coeff * t.rate.value, t.power, t.rate));
            }
        }
        PolyExp::from_terms(out)
    }

    /// Antiderivative vanishing at `t0`.
    pub fn antideriv(&self, t0: f64) -> PolyExp {
        let mut out = Vec::new();
        for t in &self.terms {
            let n = t.power;
            if t.rate.is_zero() {
                out.push(Term::new(t.coeff / (n as f64 + 1.0), n + 1, Rate::ZERO));
                continue;
            }
            // e^{kt} sum_j (-1)^j n!/(n-j)! t^{n-j} / k^{j+1}
            let k = t.rate.value;
            let mut falling = 1.0;
            let mut kpow = k;
            for j in 0..=n {
                let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                out.push(Term::new(t.coeff * (sign * falling) / kpow, n - j, t.rate));
                falling *= (n - j) as f64;
                kpow *= k;
            }
        }
        let f = PolyExp::from_terms(out);
        let at_t0 = f.eval_real_unchecked(t0);
        &f - &PolyExp::constant(at_t0)
    }

    pub fn eval(&self, z: Complex) -> Result<Complex, PolyExpError> {
        let mut acc = Complex::zero();
        for t in &self.terms {
            acc += t.eval(z)?;
        }
        Ok(acc)
    }

    /// Sum of the term magnitudes at `z`; a scale for cancellation tests.
    pub fn eval_magnitude(&self, z: Complex) -> Result<f64, PolyExpError> {
        let mut acc = 0.0;
        for t in &self.terms {
            acc += t.eval(z)?.norm();
        }
        Ok(acc)
    }

    pub fn eval_real(&self, t: f64) -> Result<Complex, PolyExpError> {
        self.eval(Complex::new(t, 0.0))
    }

    fn eval_real_unchecked(&self, t: f64) -> Complex {
        self.eval_real(t).unwrap_or_else(|_| Complex::new(f64::NAN, 0.0))
    }

    /// Terms pair into conjugates `(c, n, k)` / `(conj c, n, conj k)`.
    pub fn is_real_on_axis(&self, tol: f64) -> bool {
        self.terms.iter().all(|t| {
            let want_rate = t.rate.conj();
            self.terms.iter().any(|u| {
                u.power == t.power
                    && u.rate.matches(&want_rate)
                    && (u.coeff - t.coeff.conj()).norm() <= tol * t.coeff.norm().max(1.0)
            })
        })
    }

    /// Sampled counterpart of [`PolyExp::is_real_on_axis`] on 64 points of [-10, 10].
    pub fn is_real_on_axis_sampled(&self, tol: f64) -> bool {
        (0..64).all(|i| {
            let t = -10.0 + 20.0 * i as f64 / 63.0;
            match (self.eval_real(t), self.eval_magnitude(Complex::new(t, 0.0))) {
                (Ok(v), Ok(scale)) => v.im.abs() <= tol * (1.0 + scale),
                _ => true,
            }
        })
    }

    /// Same term structure with coefficients within `tol` (relative to the
    /// larger coefficient of each pair, floor 1).
    pub fn approx_eq(&self, other: &PolyExp, tol: f64) -> bool {
        let diff = self - other;
        let scale = self
            .terms
            .iter()
            .chain(other.terms.iter())
            .map(|t| t.coeff.norm())
            .fold(1.0_f64, f64::max);
        diff.terms.iter().all(|t| t.coeff.norm() <= tol * scale)
    }

    /// Largest coefficient magnitude.
    pub fn max_coeff(&self) -> f64 {
        self.terms.iter().map(|t| t.coeff.norm()).fold(0.0, f64::max)
    }
}

/// Merge terms with matching keys, drop cancelled coefficients, sort.
fn normalize(raw: impl IntoIterator<Item = Term>) -> Vec<Term> {
    struct Group {
        term: Term,
        magnitude: f64,
    }
    let mut groups: Vec<Group> = Vec::new();
    let mut by_power: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for mut t in raw {
        if t.coeff.re == 0.0 && t.coeff.im == 0.0 {
            continue;
        }
        debug_assert!(t.coeff.re.is_finite() && t.coeff.im.is_finite(), "non-finite coefficient");
        if t.rate.tag.is_none() && t.rate.value.norm() <= tolerances::RATE_MERGE {
            t.rate = Rate::ZERO;
        }
        let slot = by_power.entry(t.power).or_default();
        match slot.iter().find(|&&g| groups[g].term.rate.matches(&t.rate)) {
            Some(&g) => {
                let group = &mut groups[g];
                group.term.coeff += t.coeff;
                group.magnitude += t.coeff.norm();
                if group.term.rate.tag.is_none() && t.rate.tag.is_some() {
                    group.term.rate = t.rate;
                }
            }
            None => {
                slot.push(groups.len());
                groups.push(Group { magnitude: t.coeff.norm(), term: t });
            }
        }
    }
    let mut terms: Vec<Term> = groups
        .into_iter()
        .filter(|g| g.term.coeff.norm() > tolerances::CANCELLATION * g.magnitude)
        .map(|g| g.term)
        .collect();
    terms.sort_by(|a, b| {
        a.power
            .cmp(&b.power)
            .then(a.rate.value.re.total_cmp(&b.rate.value.re))
            .then(a.rate.value.im.total_cmp(&b.rate.value.im))
    });
    terms
}

impl Add for &PolyExp {
    type Output = PolyExp;
    fn add(self, rhs: &PolyExp) -> PolyExp {
        PolyExp::from_terms(self.terms.iter().chain(rhs.terms.iter()).copied())
    }
}

impl Sub for &PolyExp {
    type Output = PolyExp;
    fn sub(self, rhs: &PolyExp) -> PolyExp {
        PolyExp::from_terms(
            self.terms
                .iter()
                .copied()
                .chain(rhs.terms.iter().map(|t| Term::new(-t.coeff, t.power, t.rate))),
        )
    }
}

impl Mul for &PolyExp {
    type Output = PolyExp;
    fn mul(self, rhs: &PolyExp) -> PolyExp {
        let mut out = Vec::with_capacity(self.terms.len() * rhs.terms.len());
        for a in &self.terms {
            for b in &rhs.terms {
                out.push(Term::new(a.coeff * b.coeff, a.power + b.power, a.rate.sum(&b.rate)));
            }
        }
        PolyExp::from_terms(out)
    }
}

impl Neg for &PolyExp {
    type Output = PolyExp;
    fn neg(self) -> PolyExp {
        self.scale(-1.0)
    }
}

macro_rules! forward_owned {
    ($trait:ident, $method:ident) => {
        impl $trait for PolyExp {
            type Output = PolyExp;
            fn $method(self, rhs: PolyExp) -> PolyExp {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&PolyExp> for PolyExp {
            type Output = PolyExp;
            fn $method(self, rhs: &PolyExp) -> PolyExp {
                (&self).$method(rhs)
            }
        }
        impl $trait<PolyExp> for &PolyExp {
            type Output = PolyExp;
            fn $method(self, rhs: PolyExp) -> PolyExp {
                self.$method(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for PolyExp {
    type Output = PolyExp;
    fn neg(self) -> PolyExp {
        -(&self)
    }
}

impl fmt::Display for PolyExp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&display::render(self))
    }
}

/// Three exponential polynomials, e.g. a curve or a frame column.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct PolyExpVec3 {
    pub x: PolyExp,
    pub y: PolyExp,
    pub z: PolyExp,
}

impl PolyExpVec3 {
    pub fn new(x: PolyExp, y: PolyExp, z: PolyExp) -> Self {
        PolyExpVec3 { x, y, z }
    }

    pub fn zero() -> Self {
        PolyExpVec3::default()
    }

    pub fn constant(v: [f64; 3]) -> Self {
        PolyExpVec3::new(PolyExp::constant(v[0]), PolyExp::constant(v[1]), PolyExp::constant(v[2]))
    }

    pub fn components(&self) -> [&PolyExp; 3] {
        [&self.x, &self.y, &self.z]
    }

    pub fn map(&self, f: impl Fn(&PolyExp) -> PolyExp) -> Self {
        PolyExpVec3::new(f(&self.x), f(&self.y), f(&self.z))
    }

    pub fn zip(&self, o: &Self, f: impl Fn(&PolyExp, &PolyExp) -> PolyExp) -> Self {
        PolyExpVec3::new(f(&self.x, &o.x), f(&self.y, &o.y), f(&self.z, &o.z))
    }

    pub fn add(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a + b)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.zip(o, |a, b| a - b)
    }

    pub fn mul_scalar(&self, s: &PolyExp) -> Self {
        self.map(|a| a * s)
    }

    pub fn scale(&self, c: impl Into<Complex>) -> Self {
        let c = c.into();
        self.map(|a| a.scale(c))
    }

    pub fn dot(&self, o: &Self) -> PolyExp {
        PolyExp::from_terms(
            [&self.x * &o.x, &self.y * &o.y, &self.z * &o.z].iter().flat_map(|p| p.terms().to_vec()),
        )
    }

    pub fn cross(&self, o: &Self) -> Self {
        PolyExpVec3::new(
            &self.y * &o.z - &self.z * &o.y,
            &self.z * &o.x - &self.x * &o.z,
            &self.x * &o.y - &self.y * &o.x,
        )
    }

    pub fn diff(&self) -> Self {
        self.map(PolyExp::diff)
    }

    pub fn antideriv(&self, t0: f64) -> Self {
        self.map(|p| p.antideriv(t0))
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero() && self.z.is_zero()
    }

    pub fn eval(&self, z: Complex) -> Result<[Complex; 3], PolyExpError> {
        Ok([self.x.eval(z)?, self.y.eval(z)?, self.z.eval(z)?])
    }

    pub fn is_real_on_axis(&self, tol: f64) -> bool {
        self.components().iter().all(|p| p.is_real_on_axis(tol))
    }

    pub fn approx_eq(&self, o: &Self, tol: f64) -> bool {
        self.x.approx_eq(&o.x, tol) && self.y.approx_eq(&o.y, tol) && self.z.approx_eq(&o.z, tol)
    }
}
