//! Weight functions φ, φ_F, φ̃_F and the coefficient sequences F that define
//! the approximations.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::AnalyticProfile;

/// Default truncation index of the infinite product in φ.
pub const DEFAULT_PRODUCT_TERMS: usize = 12;

/// A finite sequence F = (a_0, …, a_n) with at least one nonzero entry.
///
/// The vanishing order k of P(y) = Σ a_m y^m at y = 1 is computed once on
/// construction.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "SequenceJson", into = "SequenceJson")]
pub struct CoefficientSequence {
    coeffs: Vec<Complex64>,
    k: usize,
}

#[derive(Serialize, Deserialize)]
struct SequenceJson {
    coeffs: Vec<[f64; 2]>,
}

impl TryFrom<SequenceJson> for CoefficientSequence {
    type Error = Error;

    fn try_from(value: SequenceJson) -> Result<Self> {
        Self::new(value.coeffs.iter().map(|[re, im]| Complex64::new(*re, *im)).collect())
    }
}

impl From<CoefficientSequence> for SequenceJson {
    fn from(value: CoefficientSequence) -> Self {
        SequenceJson {
            coeffs: value.coeffs.iter().map(|c| [c.re, c.im]).collect(),
        }
    }
}

impl CoefficientSequence {
    pub fn new(coeffs: Vec<Complex64>) -> Result<Self> {
        if coeffs.iter().any(|c| !c.re.is_finite() || !c.im.is_finite()) {
            return Err(Error::InvalidArgument("coefficients must be finite".into()));
        }
        if coeffs.iter().all(|c| c.norm() == 0.0) {
            return Err(Error::AllZeroCoefficients);
        }
        let k = taylor_vanishing_order(&coeffs);
        Ok(Self { coeffs, k })
    }

    pub fn from_real(coeffs: &[f64]) -> Result<Self> {
        Self::new(coeffs.iter().map(|&a| Complex64::new(a, 0.0)).collect())
    }

    /// F^{(N)}: the coefficients of ∏_{k≥1} (1 − q^k)^{12} up to q^N.
    pub fn delta_truncation(degree: usize) -> Result<Self> {
        let c = delta_coefficients(degree)?;
        Self::new(c.into_iter().map(|a| Complex64::new(a as f64, 0.0)).collect())
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Degree index n (the sequence has n + 1 entries).
    pub fn n(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Vanishing order of P at 1.
    pub fn k(&self) -> usize {
        self.k
    }

    pub fn is_real(&self) -> bool {
        self.coeffs.iter().all(|c| c.im == 0.0)
    }

    pub fn nonzero_count(&self) -> usize {
        self.coeffs.iter().filter(|c| c.norm() != 0.0).count()
    }

    /// Σ |a_m|; bounds both finite sums in φ_F anywhere in the strip.
    pub fn abs_sum(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).sum()
    }

    pub fn scaled(&self, c: Complex64) -> Result<Self> {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// P(y) by Horner's rule.
    pub fn poly(&self, y: Complex64) -> Complex64 {
        self.coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, a| acc * y + a)
    }

    /// Σ conj(a_m) y^m.
    pub fn poly_conj(&self, y: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, a| acc * y + a.conj())
    }
}

/// Smallest k with P^{(k)}(1) ≠ 0, where a derivative counts as zero when
/// |P^{(j)}(1)| ≤ 1e-9 · max|a_m| · n!.
fn taylor_vanishing_order(coeffs: &[Complex64]) -> usize {
    let n = coeffs.len() - 1;
    let scale = coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max);
    let n_fact: f64 = (1..=n).map(|j| j as f64).product();
    let tol = 1e-9 * scale * n_fact;

    // Repeated synthetic division by (y − 1): the j-th remainder is P^{(j)}(1)/j!.
    let mut work: Vec<Complex64> = coeffs.to_vec();
    let mut j_fact = 1.0;
    for j in 0..=n {
        if j > 0 {
            j_fact *= j as f64;
        }
        let len = work.len();
        let mut acc = Complex64::new(0.0, 0.0);
        let mut quotient = vec![Complex64::new(0.0, 0.0); len.saturating_sub(1)];
        for i in (0..len).rev() {
            acc += work[i];
            if i > 0 {
                quotient[i - 1] = acc;
            }
        }
        if (acc * j_fact).norm() > tol {
            return j;
        }
        work = quotient;
    }
    n
}

/// Vanishing order k of P(y) = Σ a_m y^m at y = 1.
pub fn vanishing_order(f: &CoefficientSequence) -> usize {
    f.k()
}

/// Integer coefficients of ∏_{k=1}^{N} (1 − q^k)^{12} mod q^{N+1}.
pub fn delta_coefficients(degree: usize) -> Result<Vec<i64>> {
    let mut c = vec![0i64; degree + 1];
    c[0] = 1;
    for k in 1..=degree {
        for _ in 0..12 {
            // multiply in place by (1 − q^k), high degrees first
            for d in (k..=degree).rev() {
                c[d] = c[d].checked_sub(c[d - k]).ok_or(Error::Overflow(degree))?;
            }
        }
    }
    Ok(c)
}

/// φ(t) with the product truncated after `terms` factors.
pub fn eval_phi(t: f64, terms: usize) -> f64 {
    let q_plus = (-2.0 * PI * t.exp()).exp();
    let q_minus = (-2.0 * PI * (-t).exp()).exp();
    let mut prod = 1.0;
    let (mut a, mut b) = (1.0, 1.0);
    for _ in 1..=terms {
        a *= q_plus;
        b *= q_minus;
        prod *= (1.0 - a) * (1.0 - b);
    }
    (-2.0 * PI * t.cosh()).exp() * prod.powi(12)
}

/// The truncation tail 24 Σ_{k>K} e^{-2πk e^{-|t|}} reported alongside [`eval_phi`].
pub fn phi_truncation_tail(t: f64, terms: usize) -> f64 {
    let q = (-2.0 * PI * (-t.abs()).exp()).exp();
    24.0 * q.powi(terms as i32 + 1) / (1.0 - q)
}

/// φ_F(t) = e^{-2π cosh t} (Σ a_m e^{-2πm e^t}) (Σ conj(a_m) e^{-2πm e^{-t}}).
pub fn eval_phi_f(f: &CoefficientSequence, t: f64) -> Complex64 {
    PhiF(f).kernel(Complex64::new(t, 0.0), Complex64::new(0.0, 0.0))
}

/// φ̃_F(t) = φ_F(t) / (e^{t/2} + e^{-t/2}).
pub fn eval_phi_tilde_f(f: &CoefficientSequence, t: f64) -> Complex64 {
    PhiTildeF(f).kernel(Complex64::new(t, 0.0), Complex64::new(0.0, 0.0))
}

/// The two finite sums of φ_F at complex t, multiplied in an order that makes
/// φ_F(-t) = conj(φ_F(t)) hold bit-for-bit on the real line.
fn sum_product(f: &CoefficientSequence, et: Complex64, et_inv: Complex64) -> Complex64 {
    if f.n() == 0 {
        return f.coeffs[0] * f.coeffs[0].conj();
    }
    let r_plus = (-2.0 * PI * et).exp();
    let r_minus = (-2.0 * PI * et_inv).exp();
    f.poly(r_plus) * f.poly_conj(r_minus)
}

/// φ_F as an analytic profile.
#[derive(Debug, Clone, Copy)]
pub struct PhiF<'a>(pub &'a CoefficientSequence);

impl AnalyticProfile for PhiF<'_> {
    fn kernel(&self, t: Complex64, z: Complex64) -> Complex64 {
        let et = t.exp();
        let et_inv = (-t).exp();
        let base = (-PI * (et + et_inv) + z * t).exp();
        base * sum_product(self.0, et, et_inv)
    }

    fn envelope(&self) -> f64 {
        let s = self.0.abs_sum();
        s * s
    }
}

/// φ̃_F as an analytic profile.
#[derive(Debug, Clone, Copy)]
pub struct PhiTildeF<'a>(pub &'a CoefficientSequence);

impl AnalyticProfile for PhiTildeF<'_> {
    fn kernel(&self, t: Complex64, z: Complex64) -> Complex64 {
        let et = t.exp();
        let et_inv = (-t).exp();
        let half = (t * 0.5).exp();
        let denom = half + half.inv();
        let base = (-PI * (et + et_inv) + z * t).exp();
        base * sum_product(self.0, et, et_inv) / denom
    }

    fn envelope(&self) -> f64 {
        // |2 cosh(t/2)| ≥ 2 cos(π/4) on the strip |Im t| ≤ π/2.
        let s = self.0.abs_sum();
        s * s / 2f64.sqrt()
    }
}

/// The truncated Ramanujan profile φ on the real line.
#[derive(Debug, Clone, Copy)]
pub struct Phi {
    pub terms: usize,
}

impl crate::numerics::Profile for Phi {
    fn value(&self, t: f64) -> Complex64 {
        Complex64::new(eval_phi(t, self.terms), 0.0)
    }

    fn tail_bound(&self, cutoff: f64, growth: f64) -> f64 {
        // every factor of the product lies in (0, 1) on the real line
        crate::numerics::CoshEnvelope::new(1.0, |_t: f64| Complex64::new(0.0, 0.0))
            .tail_bound(cutoff, growth)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::Profile;
    use proptest::prelude::*;

    fn seq(a: &[f64]) -> CoefficientSequence {
        CoefficientSequence::from_real(a).unwrap()
    }

    #[test]
    fn rejects_all_zero() {
        assert_eq!(CoefficientSequence::from_real(&[0.0, 0.0]), Err(Error::AllZeroCoefficients));
    }

    #[test]
    fn delta_small_degrees() {
        assert_eq!(delta_coefficients(0).unwrap(), vec![1]);
        assert_eq!(delta_coefficients(1).unwrap(), vec![1, -12]);
        assert_eq!(delta_coefficients(3).unwrap(), vec![1, -12, 54, -88]);
    }

    #[test]
    fn delta_matches_naive_expansion() {
        // oracle: multiply the full polynomials (1 − q^k)^12 without truncating
        // early, then cut at degree N
        let n = 8;
        let mut full = vec![1i128];
        for k in 1..=n {
            for _ in 0..12 {
                let mut next = vec![0i128; full.len() + k];
                for (i, c) in full.iter().enumerate() {
                    next[i] += c;
                    next[i + k] -= c;
                }
                full = next;
            }
        }
        let expected: Vec<i64> = full[..=n].iter().map(|&c| c as i64).collect();
        assert_eq!(delta_coefficients(n).unwrap(), expected);
    }

    #[test]
    fn delta_overflow_is_detected() {
        assert!(matches!(delta_coefficients(2000), Err(Error::Overflow(2000))));
    }

    #[test]
    fn vanishing_orders() {
        assert_eq!(vanishing_order(&seq(&[1.0])), 0);
        assert_eq!(vanishing_order(&seq(&[1.0, -1.0])), 1);
        assert_eq!(vanishing_order(&seq(&[1.0, -2.0, 1.0])), 2);
        assert_eq!(vanishing_order(&seq(&[-1.0, 3.0, -3.0, 1.0])), 3);
        assert_eq!(vanishing_order(&seq(&[0.0, 0.0, 5.0])), 0);
        assert_eq!(vanishing_order(&CoefficientSequence::delta_truncation(4).unwrap()), 0);
    }

    #[test]
    fn phi_at_origin() {
        let expected = (-2.0 * PI).exp()
            * (1..=20).map(|k| (1.0 - (-2.0 * PI * k as f64).exp()).powi(24)).product::<f64>();
        assert!((eval_phi(0.0, 10) - expected).abs() < 1e-12 * expected);
        assert_eq!(eval_phi(1.0, 12), eval_phi(-1.0, 12));
        assert_eq!(eval_phi(6.0, 3), 0.0);
        assert!(phi_truncation_tail(0.0, 12) < 1e-30);
    }

    #[test]
    fn phi_f_examples() {
        let one = seq(&[1.0]);
        assert!((eval_phi_f(&one, 0.0).re - (-2.0 * PI).exp()).abs() < 1e-18);
        for t in [-2.0, -0.3, 0.7, 3.0] {
            let v = eval_phi_f(&one, t);
            assert!((v.re - (-2.0 * PI * f64::cosh(t)).exp()).abs() <= 1e-14 * v.re);
            assert_eq!(v.im, 0.0);
        }
        let fi = CoefficientSequence::new(vec![Complex64::new(0.0, 0.0), Complex64::new(0.0, 1.0)])
            .unwrap();
        let e = std::f64::consts::E;
        let expected = (-2.0 * PI * 1f64.cosh()).exp() * (-2.0 * PI * e).exp() * (-2.0 * PI / e).exp();
        let v = eval_phi_f(&fi, 1.0);
        assert!((v.re - expected).abs() < 1e-12 * expected && v.im.abs() < 1e-30);
    }

    #[test]
    fn phi_tilde_examples() {
        let one = seq(&[1.0]);
        assert!((eval_phi_tilde_f(&one, 0.0).re - (-2.0 * PI).exp() / 2.0).abs() < 1e-18);
        let expected = (-2.0 * PI * 1f64.cosh()).exp() / (2.0 * 0.5f64.cosh());
        assert!((eval_phi_tilde_f(&one, 1.0).re - expected).abs() < 1e-14 * expected);
        let f = CoefficientSequence::new(vec![Complex64::new(1.0, 2.0), Complex64::new(-0.5, 0.3)]).unwrap();
        assert_eq!(eval_phi_tilde_f(&f, -2.0), eval_phi_tilde_f(&f, 2.0).conj());
    }

    #[test]
    fn delta_family_converges_to_phi() {
        let mut prev = f64::INFINITY;
        for degree in [2, 4, 8, 16] {
            let f = CoefficientSequence::delta_truncation(degree).unwrap();
            let worst = (-500..=500)
                .map(|j| j as f64 * 0.01)
                .map(|t| (eval_phi_f(&f, t).re - eval_phi(t, 40)).abs())
                .fold(0.0, f64::max);
            assert!(worst < prev, "degree {degree}: {worst} !< {prev}");
            prev = worst;
        }
        assert!(prev < 1e-12);
    }

    #[test]
    fn ramanujan_profile_tail() {
        let phi = Phi { terms: 12 };
        assert!(phi.tail_bound(6.0, 0.0) < 1e-300);
        assert!(phi.value(0.0).re > 0.0);
    }

    #[test]
    fn json_round_trip() {
        let f = CoefficientSequence::new(vec![Complex64::new(1.0, -2.5), Complex64::new(0.0, 3.0)]).unwrap();
        let s = serde_json::to_string(&f).unwrap();
        assert_eq!(s, r#"{"coeffs":[[1.0,-2.5],[0.0,3.0]]}"#);
        let back: CoefficientSequence = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        assert!(serde_json::from_str::<CoefficientSequence>(r#"{"coeffs":[[0,0]]}"#).is_err());
    }

    fn arb_sequence() -> impl Strategy<Value = CoefficientSequence> {
        proptest::collection::vec((-5.0f64..5.0, -5.0f64..5.0), 1..6).prop_filter_map("nonzero", |v| {
            CoefficientSequence::new(v.into_iter().map(|(a, b)| Complex64::new(a, b)).collect()).ok()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1000))]
        #[test]
        fn phi_f_conjugate_symmetric(f in arb_sequence(), t in -5.0f64..5.0) {
            prop_assert_eq!(eval_phi_f(&f, -t), eval_phi_f(&f, t).conj());
        }
    }

    proptest! {
        #[test]
        fn vanishing_order_scale_invariant(f in arb_sequence(), re in -3.0f64..3.0, im in -3.0f64..3.0) {
            let c = Complex64::new(re, im);
            prop_assume!(c.norm() > 1e-3);
            prop_assert_eq!(f.scaled(c).unwrap().k(), f.k());
        }

        #[test]
        fn vanishing_order_of_planted_factor(k in 0usize..4, tail in proptest::collection::vec(-3i32..=3, 1..3)) {
            // (1 − y)^k · Q(y) with Q(1) ≠ 0
            let mut q: Vec<f64> = tail.iter().map(|&c| c as f64).collect();
            prop_assume!(q.iter().sum::<f64>() != 0.0);
            for _ in 0..k {
                let mut next = vec![0.0; q.len() + 1];
                for (i, c) in q.iter().enumerate() { next[i] += c; next[i + 1] -= c; }
                q = next;
            }
            prop_assert_eq!(seq(&q).k(), k);
        }
    }
}
