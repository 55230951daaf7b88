use num_rational::Ratio;
use num_traits::{CheckedAdd, CheckedDiv, CheckedMul, CheckedSub, Zero};

pub type Rational = Ratio<i64>;

/// Largest denominator tried when recognising a float as an exact ratio.
const SNAP_DENOMINATOR: i64 = 64;

/// Recognise `x` as `p/q` with `q <= 64` when `x * q` is an exact integer.
///
/// Used for frequencies handed in as floats (curve parameters, spin speed) so
/// that the unit-circle substitution can still see exact ratios.
pub fn snap_ratio(x: f64) -> Option<Rational> {
    if !x.is_finite() {
        return None;
    }
    for q in 1..=SNAP_DENOMINATOR {
        let y = x * q as f64;
        if y == y.round() && y.abs() < 1e15 {
            return Some(Ratio::new(y as i64, q));
        }
    }
    None
}

pub fn ratio_to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Exact complex rational `re + i im`, with overflow reported as `None`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GaussRational {
    pub re: Rational,
    pub im: Rational,
}

impl GaussRational {
    pub fn real(re: Rational) -> Self {
        GaussRational { re, im: Rational::zero() }
    }

    pub fn i() -> Self {
        GaussRational { re: Rational::zero(), im: Rational::from_integer(1) }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn checked_add(&self, o: &Self) -> Option<Self> {
        Some(GaussRational { re: self.re.checked_add(&o.re)?, im: self.im.checked_add(&o.im)? })
    }

    pub fn checked_sub(&self, o: &Self) -> Option<Self> {
        Some(GaussRational { re: self.re.checked_sub(&o.re)?, im: self.im.checked_sub(&o.im)? })
    }

    pub fn checked_mul(&self, o: &Self) -> Option<Self> {
        let rr = self.re.checked_mul(&o.re)?;
        let ii = self.im.checked_mul(&o.im)?;
        let ri = self.re.checked_mul(&o.im)?;
        let ir = self.im.checked_mul(&o.re)?;
        Some(GaussRational { re: rr.checked_sub(&ii)?, im: ri.checked_add(&ir)? })
    }

    pub fn checked_div(&self, o: &Self) -> Option<Self> {
        let den = o.re.checked_mul(&o.re)?.checked_add(&o.im.checked_mul(&o.im)?)?;
        if den.is_zero() {
            return None;
        }
        let conj = GaussRational { re: o.re, im: -o.im };
        let num = self.checked_mul(&conj)?;
        Some(GaussRational { re: num.re.checked_div(&den)?, im: num.im.checked_div(&den)? })
    }

    pub fn neg(&self) -> Self {
        GaussRational { re: -self.re, im: -self.im }
    }

    /// Integer value when this is a real integer.
    pub fn as_integer(&self) -> Option<i64> {
        if self.im.is_zero() && self.re.is_integer() {
            Some(self.re.to_integer())
        } else {
            None
        }
    }
}

/// Exact value of a decimal literal such as `12.5e-3`, if it fits.
pub fn parse_decimal_exact(text: &str) -> Option<Rational> {
    let (mantissa, exponent) = match text.find(['e', 'E']) {
        Some(pos) => (&text[..pos], text[pos + 1..].parse::<i32>().ok()?),
        None => (text, 0),
    };
    let (int_part, frac_part) = match mantissa.find('.') {
        Some(pos) => (&mantissa[..pos], &mantissa[pos + 1..]),
        None => (mantissa, ""),
    };
    let digits: String = format!("{int_part}{frac_part}");
    let digits = digits.trim_start_matches('0');
    let numer: i64 = if digits.is_empty() { 0 } else { digits.parse().ok()? };
    let scale = exponent - frac_part.len() as i32;
    let ten = Rational::from_integer(10);
    let mut value = Rational::from_integer(numer);
    for _ in 0..scale.unsigned_abs() {
        value = if scale > 0 { value.checked_mul(&ten)? } else { value.checked_div(&ten)? };
    }
    Some(value)
}
