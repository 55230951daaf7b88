//! Laurent polynomials in one complex variable and the root machinery on
//! top of them: companion-matrix roots, multiplicity clusters, approximate
//! common factors, square roots and Sylvester resultants.

use std::collections::BTreeMap;
use std::fmt;

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use num_traits::Zero;

use crate::tolerances;

/// Sum of `c_k w^k` over integer `k`; no zero coefficients are stored.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, Complex64>,
}

impl LaurentPoly {
    pub fn zero() -> LaurentPoly {
        LaurentPoly::default()
    }

    pub fn monomial(c: Complex64, k: i64) -> LaurentPoly {
        LaurentPoly::from_pairs([(k, c)])
    }

    pub fn from_pairs(pairs: impl IntoIterator<Item = (i64, Complex64)>) -> LaurentPoly {
        let mut coeffs = BTreeMap::new();
        for (k, c) in pairs {
            *coeffs.entry(k).or_insert_with(Complex64::zero) += c;
        }
        coeffs.retain(|_, c| *c != Complex64::zero());
        LaurentPoly { coeffs }
    }

    /// `w^shift * (dense[0] + dense[1] w + ...)`.
    pub fn from_dense(dense: &[Complex64], shift: i64) -> LaurentPoly {
        LaurentPoly::from_pairs(dense.iter().enumerate().map(|(k, &c)| (k as i64 + shift, c)))
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, Complex64> {
        &self.coeffs
    }

    pub fn coeff(&self, k: i64) -> Complex64 {
        self.coeffs.get(&k).copied().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn max_coeff(&self) -> f64 {
        self.coeffs.values().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Drops coefficients below `rel` times the largest one.
    pub fn chop(&self, rel: f64) -> LaurentPoly {
        let cut = rel * self.max_coeff();
        LaurentPoly { coeffs: self.coeffs.iter().filter(|(_, c)| c.norm() > cut).map(|(&k, &c)| (k, c)).collect() }
    }

    pub fn scale(&self, s: Complex64) -> LaurentPoly {
        LaurentPoly::from_pairs(self.coeffs.iter().map(|(&k, &c)| (k, c * s)))
    }

    pub fn shift(&self, by: i64) -> LaurentPoly {
        LaurentPoly { coeffs: self.coeffs.iter().map(|(&k, &c)| (k + by, c)).collect() }
    }

    pub fn add(&self, o: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_pairs(self.coeffs.iter().chain(o.coeffs.iter()).map(|(&k, &c)| (k, c)))
    }

    pub fn sub(&self, o: &LaurentPoly) -> LaurentPoly {
        self.add(&o.scale(Complex64::new(-1.0, 0.0)))
    }

    pub fn mul(&self, o: &LaurentPoly) -> LaurentPoly {
        LaurentPoly::from_pairs(
            self.coeffs.iter().flat_map(|(&k1, &c1)| o.coeffs.iter().map(move |(&k2, &c2)| (k1 + k2, c1 * c2))),
        )
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        let Some(lo) = self.min_exp() else {
            return Complex64::zero();
        };
        let dense = self.to_dense().1;
        horner(&dense, w) * w.powi(lo as i32)
    }

    /// `(shift, dense)` with `self = w^shift * dense(w)` and `dense[0] != 0`.
    pub fn to_dense(&self) -> (i64, Vec<Complex64>) {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return (0, Vec::new());
        };
        let mut dense = vec![Complex64::zero(); (hi - lo + 1) as usize];
        for (&k, &c) in &self.coeffs {
            dense[(k - lo) as usize] = c;
        }
        (lo, dense)
    }

    /// Degree of the ordinary polynomial left after clearing `w^min_exp`.
    pub fn span(&self) -> usize {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => (hi - lo) as usize,
            _ => 0,
        }
    }

    /// Coefficients within `tol` relative to the larger polynomial.
    pub fn approx_eq(&self, o: &LaurentPoly, tol: f64) -> bool {
        let scale = self.max_coeff().max(o.max_coeff()).max(f64::MIN_POSITIVE);
        self.sub(o).coeffs.values().all(|c| c.norm() <= tol * scale)
    }

    /// Nonzero roots, clustered by multiplicity.
    pub fn roots(&self) -> Vec<RootCluster> {
        root_clusters(&self.to_dense().1)
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> =
            self.coeffs.iter().rev().map(|(k, c)| format!("({}{:+}i) w^{k}", c.re, c.im)).collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Quotient of two Laurent polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    pub num: LaurentPoly,
    pub den: LaurentPoly,
}

impl RationalMap {
    pub fn eval(&self, w: Complex64) -> Complex64 {
        self.num.eval(w) / self.den.eval(w)
    }

    /// Same map with the denominator's top coefficient scaled to one.
    pub fn monic(&self) -> RationalMap {
        let lead = self.den.max_exp().map_or(Complex64::new(1.0, 0.0), |k| self.den.coeff(k));
        RationalMap { num: self.num.scale(1.0 / lead), den: self.den.scale(1.0 / lead) }
    }

    /// Degree as a map of the Riemann sphere, for coprime num and den.
    pub fn degree(&self) -> usize {
        let (Some(nlo), Some(dlo)) = (self.num.min_exp(), self.den.min_exp()) else {
            return 0;
        };
        let k = nlo - dlo;
        let (p, q) = (self.num.span() as i64, self.den.span() as i64);
        if k >= 0 {
            (k + p).max(q) as usize
        } else {
            p.max(q - k) as usize
        }
    }
}

/// Root estimate with multiplicity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RootCluster {
    pub root: Complex64,
    pub multiplicity: usize,
}

pub fn horner(dense: &[Complex64], w: Complex64) -> Complex64 {
    dense.iter().rev().fold(Complex64::zero(), |acc, &c| acc * w + c)
}

fn trim(dense: &[Complex64]) -> &[Complex64] {
    let scale = dense.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut hi = dense.len();
    while hi > 0 && dense[hi - 1].norm() <= tolerances::CANCELLATION * scale {
        hi -= 1;
    }
    &dense[..hi]
}

/// Roots of `dense[0] + dense[1] w + ...` as eigenvalues of the companion
/// matrix (complex Schur form), polished by Newton steps that only stick
/// when they reduce the residual. Zero roots are not reported separately:
/// callers clear monomial factors first.
pub fn poly_roots(dense: &[Complex64]) -> Vec<Complex64> {
    let p = trim(dense);
    if p.len() < 2 {
        return Vec::new();
    }
    let n = p.len() - 1;
    // Highly symmetric companion matrices (w^n + 1) can stall the QR sweep;
    // a shift of the variable breaks the symmetry.
    let bound = 1.0 + p[..n].iter().map(|c| (c / p[n]).norm()).fold(0.0, f64::max);
    let shifts = [Complex64::zero(), Complex64::new(0.13, 0.07), Complex64::new(-0.21, 0.17)];
    let eig = shifts
        .iter()
        .find_map(|&s| {
            let s = s * bound;
            let shifted = if s == Complex64::zero() { p.to_vec() } else { taylor_coeffs(p, s) };
            companion_eigenvalues(&shifted).map(|e| e.into_iter().map(|r| r + s).collect::<Vec<_>>())
        })
        .unwrap_or_default();
    let dp: Vec<Complex64> = (1..=n).map(|k| p[k] * k as f64).collect();
    eig.into_iter()
        .map(|mut r| {
            for _ in 0..3 {
                let f = horner(p, r);
                let d = horner(&dp, r);
                if d == Complex64::zero() {
                    break;
                }
                let next = r - f / d;
                if horner(p, next).norm() < f.norm() {
                    r = next;
                } else {
                    break;
                }
            }
            r
        })
        .collect()
}

fn companion_eigenvalues(p: &[Complex64]) -> Option<Vec<Complex64>> {
    let n = p.len() - 1;
    let lead = p[n];
    let mut m = DMatrix::<Complex64>::zeros(n, n);
    for i in 1..n {
        m[(i, i - 1)] = Complex64::new(1.0, 0.0);
    }
    for i in 0..n {
        m[(i, n - 1)] = -p[i] / lead;
    }
    let t = Schur::try_new(m, f64::EPSILON, 60 * n + 100)?.unpack().1;
    Some((0..n).map(|i| t[(i, i)]).collect())
}

fn close(a: Complex64, b: Complex64, rel: f64) -> bool {
    (a - b).norm() <= rel * a.norm().max(b.norm()).max(1.0)
}

/// Roots of an ordinary polynomial grouped by multiplicity.
///
/// Roots within the cluster radius merge outright. An `m`-fold root comes
/// out of the eigenvalue solver spread over a radius near `eps^(1/m)`, so
/// wider groups merge too when the Taylor coefficients of orders below `m`
/// at their mean vanish.
pub fn root_clusters(dense: &[Complex64]) -> Vec<RootCluster> {
    let groups = cluster(&poly_roots(dense));
    let mut taken = vec![false; groups.len()];
    let mut out = Vec::new();
    for seed in 0..groups.len() {
        if taken[seed] {
            continue;
        }
        let mut near: Vec<usize> = (0..groups.len())
            .filter(|&j| j != seed && !taken[j] && close(groups[seed].root, groups[j].root, 1e-2))
            .collect();
        let dist = |j: usize| (groups[j].root - groups[seed].root).norm();
        near.sort_by(|&a, &b| dist(a).total_cmp(&dist(b)));
        let m0 = groups[seed].multiplicity;
        let mut chosen = (vec![seed], if m0 > 1 { refine_multiple(dense, groups[seed].root, m0) } else { groups[seed].root }, m0);
        for count in (1..=near.len()).rev() {
            let members: Vec<usize> = std::iter::once(seed).chain(near[..count].iter().copied()).collect();
            let m: usize = members.iter().map(|&j| groups[j].multiplicity).sum();
            let mean = members.iter().map(|&j| groups[j].root * groups[j].multiplicity as f64).sum::<Complex64>()
                / m as f64;
            let radius = 100.0 * f64::EPSILON.powf(1.0 / m as f64);
            if !members.iter().all(|&j| close(groups[j].root, mean, radius)) {
                continue;
            }
            let root = refine_multiple(dense, mean, m);
            let taylor = taylor_coeffs(dense, root);
            let scale: f64 = taylor.iter().map(|c| c.norm()).sum();
            if taylor.iter().take(m).all(|c| c.norm() <= tolerances::ROOT_MATCH * scale) {
                chosen = (members, root, m);
                break;
            }
        }
        let (chosen, root, m) = chosen;
        for &j in &chosen {
            taken[j] = true;
        }
        out.push(RootCluster { root, multiplicity: m });
    }
    out
}

/// Newton on the `(m-1)`-th derivative, where an `m`-fold root is simple.
fn refine_multiple(dense: &[Complex64], start: Complex64, m: usize) -> Complex64 {
    let mut r = start;
    for _ in 0..4 {
        let t = taylor_coeffs(dense, r);
        if m >= t.len() || t[m].norm() == 0.0 {
            break;
        }
        let step = t[m - 1] / (t[m] * m as f64);
        if !step.is_finite() || step.norm() > 1e-2 * r.norm().max(1.0) {
            break;
        }
        r -= step;
    }
    r
}

/// Coefficients of `p(r + h)` in powers of `h`.
fn taylor_coeffs(dense: &[Complex64], r: Complex64) -> Vec<Complex64> {
    let mut work = dense.to_vec();
    let n = work.len();
    for k in 0..n {
        for j in (k..n - 1).rev() {
            let next = work[j + 1];
            work[j] += r * next;
        }
    }
    work
}

/// Groups roots closer than the cluster radius; the estimate is the mean.
pub fn cluster(roots: &[Complex64]) -> Vec<RootCluster> {
    let mut groups: Vec<Vec<Complex64>> = Vec::new();
    for &r in roots {
        match groups.iter_mut().find(|g| g.iter().any(|&s| close(r, s, tolerances::ROOT_CLUSTER))) {
            Some(g) => g.push(r),
            None => groups.push(vec![r]),
        }
    }
    groups
        .into_iter()
        .map(|g| RootCluster { root: g.iter().sum::<Complex64>() / g.len() as f64, multiplicity: g.len() })
        .collect()
}

/// Divides out `(w - r)` from an ordinary polynomial, dropping the remainder.
fn deflate(dense: &[Complex64], r: Complex64) -> Vec<Complex64> {
    let n = dense.len() - 1;
    if r.norm() <= 1.0 {
        let mut out = vec![Complex64::zero(); n];
        let mut acc = Complex64::zero();
        for k in (1..=n).rev() {
            acc = acc * r + dense[k];
            out[k - 1] = acc;
        }
        out
    } else {
        // q(w) = sum q_k w^k with dense = (w - r) q; solve from the low end.
        let mut out = vec![Complex64::zero(); n];
        let mut prev = Complex64::zero();
        for k in 0..n {
            prev = (prev - dense[k]) / r;
            out[k] = prev;
        }
        out
    }
}

/// Result of cancelling the common factor of two Laurent polynomials.
#[derive(Clone, Debug, PartialEq)]
pub struct Reduced {
    pub p: LaurentPoly,
    pub q: LaurentPoly,
    /// Common roots in `C*` with the multiplicity that was cancelled.
    pub common: Vec<RootCluster>,
}

/// Cancels common monomials and approximately common root factors.
pub fn reduce_and_common_roots(p: &LaurentPoly, q: &LaurentPoly) -> Reduced {
    let (sp, mut dp) = p.to_dense();
    let (sq, mut dq) = q.to_dense();
    let rp = root_clusters(&dp);
    let rq = root_clusters(&dq);
    let mut common = Vec::new();
    let mut used = vec![false; rq.len()];
    for a in &rp {
        let hit = rq.iter().enumerate().find(|(j, b)| !used[*j] && close(a.root, b.root, tolerances::ROOT_MATCH));
        if let Some((j, b)) = hit {
            used[j] = true;
            let m = a.multiplicity.min(b.multiplicity);
            // The simpler root of the two is the better conditioned estimate.
            let root = if a.multiplicity <= b.multiplicity { a.root } else { b.root };
            for _ in 0..m {
                dp = deflate(&dp, root);
                dq = deflate(&dq, root);
            }
            common.push(RootCluster { root, multiplicity: m });
        }
    }
    let shift = sp.min(sq);
    Reduced {
        p: LaurentPoly::from_dense(&dp, sp - shift),
        q: LaurentPoly::from_dense(&dq, sq - shift),
        common,
    }
}

/// Square root of a Laurent polynomial when it is one, checked by residual.
pub fn laurent_sqrt(p: &LaurentPoly) -> Option<LaurentPoly> {
    let (shift, dense) = p.to_dense();
    if dense.is_empty() || shift % 2 != 0 || (dense.len() - 1) % 2 != 0 {
        return None;
    }
    let n = (dense.len() - 1) / 2;
    let from_low = sqrt_series(&dense, n);
    let mut rev = dense.clone();
    rev.reverse();
    let mut from_high = sqrt_series(&rev, n);
    from_high.reverse();
    let candidates = [from_low, from_high];
    let best = candidates
        .iter()
        .map(|s| {
            let sq = LaurentPoly::from_dense(s, 0);
            let res = sq.mul(&sq).sub(&LaurentPoly::from_dense(&dense, 0)).max_coeff();
            (res, s)
        })
        .min_by(|a, b| a.0.total_cmp(&b.0))?;
    let scale = dense.iter().map(|c| c.norm()).fold(0.0, f64::max);
    (best.0 <= tolerances::WEIERSTRASS_CONSISTENCY * scale).then(|| LaurentPoly::from_dense(best.1, shift / 2))
}

fn sqrt_series(dense: &[Complex64], n: usize) -> Vec<Complex64> {
    let mut s = vec![Complex64::zero(); n + 1];
    s[0] = dense[0].sqrt();
    for k in 1..=n {
        let mut acc = dense[k];
        for j in 1..k {
            acc -= s[j] * s[k - j];
        }
        s[k] = acc / (s[0] * 2.0);
    }
    s
}

/// Determinant of the Sylvester matrix of the two cleared polynomials,
/// `lc(P)^deg Q * prod Q(roots of P)` in exact arithmetic.
pub fn resultant(p: &LaurentPoly, q: &LaurentPoly) -> Complex64 {
    let (_, dp) = p.to_dense();
    let (_, dq) = q.to_dense();
    sylvester_determinant(&dp, &dq)
}

pub fn sylvester_determinant(dp: &[Complex64], dq: &[Complex64]) -> Complex64 {
    let m = dp.len().saturating_sub(1);
    let n = dq.len().saturating_sub(1);
    if dp.is_empty() || dq.is_empty() {
        return Complex64::zero();
    }
    let size = m + n;
    if size == 0 {
        return Complex64::new(1.0, 0.0);
    }
    let mut s = DMatrix::<Complex64>::zeros(size, size);
    for row in 0..n {
        for (k, &c) in dp.iter().rev().enumerate() {
            s[(row, row + k)] = c;
        }
    }
    for row in 0..m {
        for (k, &c) in dq.iter().rev().enumerate() {
            s[(n + row, row + k)] = c;
        }
    }
    // LU with partial pivoting.
    s.lu().determinant()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn poly(coeffs: &[(i64, f64, f64)]) -> LaurentPoly {
        LaurentPoly::from_pairs(coeffs.iter().map(|&(k, re, im)| (k, c(re, im))))
    }

    #[test]
    fn arithmetic_and_eval() {
        let p = poly(&[(-1, 1.0, 0.0), (1, 1.0, 0.0)]);
        let sq = p.mul(&p);
        assert_eq!(sq, poly(&[(-2, 1.0, 0.0), (0, 2.0, 0.0), (2, 1.0, 0.0)]));
        let w = c(0.3, 0.8);
        assert!((sq.eval(w) - (1.0 / w + w).powu(2)).norm() < 1e-14);
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn roots_of_cyclotomic() {
        let p = poly(&[(0, -1.0, 0.0), (5, 1.0, 0.0)]);
        let roots = p.roots();
        assert_eq!(roots.len(), 5);
        for r in roots {
            assert!((r.root.powu(5) - 1.0).norm() < 1e-13);
            assert_eq!(r.multiplicity, 1);
        }
    }

    #[test]
    fn multiple_roots_cluster() {
        // (w - 2)^3 (w + i)
        let a = poly(&[(0, -2.0, 0.0), (1, 1.0, 0.0)]);
        let b = poly(&[(0, 0.0, 1.0), (1, 1.0, 0.0)]);
        let p = a.mul(&a).mul(&a).mul(&b);
        let mut roots = p.roots();
        roots.sort_by(|x, y| y.multiplicity.cmp(&x.multiplicity));
        assert_eq!(roots.len(), 2);
        assert_eq!(roots[0].multiplicity, 3);
        assert!((roots[0].root - 2.0).norm() < 1e-10);
    }

    #[test]
    fn common_roots_and_reduction() {
        let p = poly(&[(0, -1.0, 0.0), (2, 1.0, 0.0)]);
        let q = poly(&[(0, -1.0, 0.0), (1, 1.0, 0.0)]);
        let r = reduce_and_common_roots(&p, &q);
        assert_eq!(r.common.len(), 1);
        assert!((r.common[0].root - 1.0).norm() < 1e-12);
        assert!(r.p.approx_eq(&poly(&[(0, 1.0, 0.0), (1, 1.0, 0.0)]), 1e-12));
        assert!(r.q.approx_eq(&poly(&[(0, 1.0, 0.0)]), 1e-12));
    }

    #[test]
    fn resultants() {
        let p = poly(&[(0, -1.0, 0.0), (1, 1.0, 0.0)]);
        let q = poly(&[(0, 1.0, 0.0), (1, 1.0, 0.0)]);
        assert!((resultant(&p, &q) - 2.0).norm() < 1e-14);
        // monomial factors are cleared first
        assert!((resultant(&p.shift(3), &q.shift(-2)) - 2.0).norm() < 1e-14);
        let sq = q.mul(&q);
        assert!(resultant(&sq, &q.mul(&p)).norm() < 1e-12);
    }

    #[test]
    fn square_roots() {
        let s = poly(&[(-1, 1.0, 0.5), (0, 0.0, 2.0), (2, -3.0, 0.0)]);
        let r = laurent_sqrt(&s.mul(&s)).unwrap();
        assert!(r.approx_eq(&s, 1e-12) || r.approx_eq(&s.scale(c(-1.0, 0.0)), 1e-12));
        assert!(laurent_sqrt(&poly(&[(0, 1.0, 0.0), (1, 1.0, 0.0)])).is_none());
        assert!(laurent_sqrt(&poly(&[(0, 1.0, 0.0), (1, 3.0, 0.0), (2, 1.0, 0.0)])).is_none());
    }

    #[test]
    fn rational_map_degree() {
        // (1/w)(w^3 + i)/(w^3 - i)
        let g = RationalMap { num: poly(&[(0, 0.0, 1.0), (3, 1.0, 0.0)]), den: poly(&[(1, 0.0, -1.0), (4, 1.0, 0.0)]) };
        assert_eq!(g.degree(), 4);
        let h = RationalMap { num: poly(&[(1, 0.0, -1.0)]), den: poly(&[(0, 1.0, 0.0)]) };
        assert_eq!(h.degree(), 1);
    }
}
