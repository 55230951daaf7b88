//! Pretty printer whose output parses back to the identical value.
//!
//! Exact conjugate pairs print as `cos`/`sin`; everything else prints as a
//! raw exponential. Every float is printed in shortest round-trip form and
//! every arithmetic step the parser performs on it is exact.

use num_complex::Complex64;

use super::rational::Rational;
use super::{PolyExp, Rate, Term};

pub(super) fn render(p: &PolyExp) -> String {
    let terms = p.terms();
    if terms.is_empty() {
        return "0".to_string();
    }
    let mut used = vec![false; terms.len()];
    // (negative, body) pieces
    let mut pieces: Vec<(bool, String)> = Vec::new();
    for idx in 0..terms.len() {
        if used[idx] {
            continue;
        }
        used[idx] = true;
        let t = terms[idx];
        let partner = (t.rate.value().im != 0.0)
            .then(|| {
                (0..terms.len()).find(|&j| {
                    !used[j]
                        && terms[j].power == t.power
                        && terms[j].rate.value() == t.rate.value().conj()
                        && terms[j].coeff == t.coeff.conj()
                })
            })
            .flatten();
        match partner {
            Some(j) => {
                used[j] = true;
                let upper = if t.rate.value().im > 0.0 { t } else { terms[j] };
                push_pair(&mut pieces, &upper);
            }
            None => pieces.push(single(&t)),
        }
    }
    let mut out = String::new();
    for (k, (negative, body)) in pieces.iter().enumerate() {
        match (k, negative) {
            (0, true) => out.push('-'),
            (0, false) => {}
            (_, true) => out.push_str(" - "),
            (_, false) => out.push_str(" + "),
        }
        out.push_str(body);
    }
    out
}

fn num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        format!("{x}")
    }
}

fn ratio(r: Rational) -> String {
    if *r.denom() == 1 {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

fn power_factor(n: u32) -> Option<String> {
    match n {
        0 => None,
        1 => Some("t".into()),
        _ => Some(format!("t^{n}")),
    }
}

fn join(coeff: f64, factors: &[String]) -> (bool, String) {
    let negative = coeff.is_sign_negative();
    let mag = coeff.abs();
    let body = if factors.is_empty() {
        num(mag)
    } else if mag == 1.0 {
        factors.join("*")
    } else {
        format!("{}*{}", num(mag), factors.join("*"))
    };
    (negative, body)
}

fn push_pair(pieces: &mut Vec<(bool, String)>, t: &Term) {
    let k = t.rate.value();
    let mut common: Vec<String> = power_factor(t.power).into_iter().collect();
    if k.re != 0.0 {
        common.push(format!("exp({}*t)", signed(k.re)));
    }
    let freq = match t.rate.imaginary_ratio() {
        Some(r) if k.re == 0.0 => ratio(r),
        _ => num(k.im),
    };
    let freq = if freq == "1" { "t".to_string() } else { format!("{freq}*t") };
    let re2 = 2.0 * t.coeff.re;
    let im2 = -2.0 * t.coeff.im;
    if re2 != 0.0 {
        let mut f = common.clone();
        f.push(format!("cos({freq})"));
        pieces.push(join(re2, &f));
    }
    if im2 != 0.0 {
        let mut f = common;
        f.push(format!("sin({freq})"));
        pieces.push(join(im2, &f));
    }
}

fn signed(x: f64) -> String {
    if x.is_sign_negative() {
        format!("-{}", num(-x))
    } else {
        num(x)
    }
}

fn rate_factor(rate: &Rate) -> Option<String> {
    if rate.is_zero() {
        return None;
    }
    let k = rate.value();
    let arg = match rate.imaginary_ratio() {
        Some(r) => format!("{}*i*t", ratio(r)),
        None if k.im == 0.0 => format!("{}*t", signed(k.re)),
        None if k.re == 0.0 => format!("{}*i*t", signed(k.im)),
        None => format!("{}*t", complex(k)),
    };
    Some(format!("exp({arg})"))
}

fn complex(c: Complex64) -> String {
    let sign = if c.im.is_sign_negative() { '-' } else { '+' };
    format!("({}{}{}*i)", signed(c.re), sign, num(c.im.abs()))
}

fn single(t: &Term) -> (bool, String) {
    let mut factors: Vec<String> = Vec::new();
    factors.extend(power_factor(t.power));
    factors.extend(rate_factor(&t.rate));
    let c = t.coeff;
    if c.im == 0.0 {
        join(c.re, &factors)
    } else if c.re == 0.0 {
        let mut f = vec!["i".to_string()];
        f.extend(factors);
        join(c.im, &f)
    } else {
        let mut f = vec![complex(c)];
        f.extend(factors);
        (false, f.join("*"))
    }
}
