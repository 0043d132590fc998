//! Effective bounds from linear forms in two logarithms.
//!
//! Everything here is binary64. The inequalities consumed downstream have
//! slack of many orders of magnitude at the thresholds, so rounding error
//! is irrelevant; each reported constant carries an explicit tolerance.

use alloc::vec::Vec;

use libm::{asin, atan2, fabs, log, sin, sqrt};
use num_complex::Complex64;

use crate::{Error, Result};

const LN2: f64 = core::f64::consts::LN_2;
const PI: f64 = core::f64::consts::PI;

/// Integer polynomial `a_m x^m + … + a_0` with `a_m > 0` and content 1.
/// Irreducibility is the caller's business.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinimalPolynomial {
    /// `a_0, a_1, …, a_m`
    coeffs: Vec<i64>,
}

fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.unsigned_abs(), b.unsigned_abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a as i64
}

fn cabs(z: Complex64) -> f64 {
    libm::hypot(z.re, z.im)
}

impl MinimalPolynomial {
    /// From coefficients in descending order, `[a_m, …, a_0]`.
    pub fn from_descending(coeffs: &[i64]) -> Result<Self> {
        let mut asc: Vec<i64> = coeffs.iter().rev().copied().collect();
        while asc.last() == Some(&0) {
            asc.pop();
        }
        if asc.len() < 2 {
            return Err(Error::Polynomial("degree must be at least 1"));
        }
        if *asc.last().unwrap() < 0 {
            return Err(Error::Polynomial("leading coefficient must be positive"));
        }
        if asc.iter().fold(0, |g, &c| gcd(g, c)) != 1 {
            return Err(Error::Polynomial("content must be 1"));
        }
        Ok(MinimalPolynomial { coeffs: asc })
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn leading(&self) -> i64 {
        *self.coeffs.last().unwrap()
    }

    /// Coefficients, descending.
    pub fn descending(&self) -> Vec<i64> {
        self.coeffs.iter().rev().copied().collect()
    }

    /// The minimal polynomial of `−α`.
    pub fn reflect(&self) -> Self {
        let m = self.degree();
        let sign = if m % 2 == 1 { -1 } else { 1 };
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, &c)| if i % 2 == 1 { -c } else { c } * sign)
            .collect();
        MinimalPolynomial { coeffs }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c as f64)
    }

    fn eval_derivative(&self, z: Complex64) -> Complex64 {
        self.coeffs
            .iter()
            .enumerate()
            .skip(1)
            .rev()
            .fold(Complex64::new(0.0, 0.0), |acc, (i, &c)| {
                acc * z + (i as f64) * c as f64
            })
    }

    /// `Σ |a_i| |z|^i`, the scale against which residuals are judged.
    fn scale(&self, z: Complex64) -> f64 {
        let r = cabs(z);
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, &c| acc * r + fabs(c as f64))
    }

    /// All complex roots, by Durand–Kerner with a Newton polish.
    pub fn roots(&self) -> Result<Vec<Complex64>> {
        let m = self.degree();
        let lead = self.leading() as f64;
        if m == 1 {
            return Ok(alloc::vec![Complex64::new(
                -(self.coeffs[0] as f64) / lead,
                0.0
            )]);
        }
        let monic: Vec<f64> = self.coeffs.iter().map(|&c| c as f64 / lead).collect();
        let eval_monic = |z: Complex64| {
            monic
                .iter()
                .rev()
                .fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c)
        };
        let radius = 1.0 + monic[..m].iter().fold(0.0f64, |a, c| a.max(fabs(*c)));
        let seed = Complex64::new(0.4, 0.9);
        let mut z: Vec<Complex64> = (0..m).map(|k| seed.powu(k as u32 + 1) * radius).collect();
        for _ in 0..5000 {
            let mut delta = 0.0f64;
            for k in 0..m {
                let mut denom = Complex64::new(1.0, 0.0);
                for j in 0..m {
                    if j != k {
                        denom *= z[k] - z[j];
                    }
                }
                let step = eval_monic(z[k]) / denom;
                z[k] -= step;
                delta = delta.max(cabs(step) / cabs(z[k]).max(1.0));
            }
            if delta < 1e-15 {
                break;
            }
        }
        for r in z.iter_mut() {
            for _ in 0..3 {
                let d = self.eval_derivative(*r);
                if cabs(d) == 0.0 {
                    break;
                }
                *r -= self.eval(*r) / d;
            }
        }
        let residual_ok = z.iter().all(|&r| cabs(self.eval(r)) < 1e-8 * self.scale(r));
        // Durand–Kerner crawls on repeated roots, so the residual decides.
        if !residual_ok {
            return Err(Error::RootFinding);
        }
        Ok(z)
    }
}

/// Logarithmic height `(log a_m + Σ max(0, log |r_i|)) / m`.
pub fn height(p: &MinimalPolynomial) -> Result<f64> {
    let roots = p.roots()?;
    let big: f64 = roots.iter().map(|&r| log(cabs(r)).max(0.0)).sum();
    Ok((log(p.leading() as f64) + big) / p.degree() as f64)
}

/// `α = ω/ω̄ = −3/4 − i√7/4`.
pub fn alpha() -> Complex64 {
    Complex64::new(-0.75, -sqrt(7.0) / 4.0)
}

/// Constants attached to `α = ω/ω̄` (minimal polynomial `2x² + 3x + 2`).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct AlphaConstants {
    pub modulus: f64,
    /// `|log α|`, principal branch.
    pub abs_log_alpha: f64,
    pub height: f64,
    /// `D = [Q(α):Q]/2`.
    pub half_degree: f64,
    /// `a = max{20, 10.98|log α| + D h(α)}`.
    pub a: f64,
}

pub fn lmn_alpha_constants() -> AlphaConstants {
    let z = alpha();
    let modulus = cabs(z);
    let abs_log_alpha = libm::hypot(log(modulus), atan2(z.im, z.re));
    let poly = MinimalPolynomial::from_descending(&[2, 3, 2]).expect("valid polynomial");
    let height = height(&poly).expect("quadratic roots converge");
    let half_degree = poly.degree() as f64 / 2.0;
    let a = (10.98 * abs_log_alpha + half_degree * height).max(20.0);
    AlphaConstants {
        modulus,
        abs_log_alpha,
        height,
        half_degree,
        a,
    }
}

/// A lower bound `log |Λ| ≥ bound_exponent = −c·a·H²`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct LmnParameters {
    pub half_degree: f64,
    pub a: f64,
    pub h: f64,
    pub bound_exponent: f64,
}

/// `H₁ = max{17, log(n/25) + 7.45}`.
pub fn variant_h1(n: u64) -> f64 {
    (log(n as f64 / 25.0) + 7.45).max(17.0)
}

/// `log |αⁿ − 1| ≥ −9 a H₁²` for the degree-two `α` above.
pub fn lmn_lower_bound_variant(n: u64) -> LmnParameters {
    let c = lmn_alpha_constants();
    let h = variant_h1(n);
    LmnParameters {
        half_degree: c.half_degree,
        a: c.a,
        h,
        bound_exponent: -9.0 * c.a * h * h,
    }
}

/// Least integer `n` at which `log(n/25) + 7.45` exceeds 17, i.e. where the
/// non-constant branch of `H₁` takes over.
pub fn variant_h1_switch() -> u64 {
    let (mut lo, mut hi) = (1u64, 1u64 << 40);
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if log(mid as f64 / 25.0) + 7.45 > 17.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

/// `−9 a H₁² > −2⁹ (log n)²`, the relaxation used for the plain sequence.
pub fn variant_relaxation_holds(n: u64) -> bool {
    let l = log(n as f64);
    lmn_lower_bound_variant(n).bound_exponent > -512.0 * l * l
}

/// `log |b₁ iπ − b₂ log α| ≥ −8.87 a H²` with
/// `H = max{17, √D/10, log(b₁/2a + b₂/68.9) + 2.35D + 5.03}`.
pub fn lmn_two_log_bound(b1: u64, b2: u64) -> LmnParameters {
    let c = lmn_alpha_constants();
    let d = c.half_degree;
    let inner = log(b1 as f64 / (2.0 * c.a) + b2 as f64 / 68.9) + 2.35 * d + 5.03;
    let h = inner.max(17.0).max(sqrt(d) / 10.0);
    LmnParameters {
        half_degree: d,
        a: c.a,
        h,
        bound_exponent: -8.87 * c.a * h * h,
    }
}

/// The two-log `H` specialised to the sine argument:
/// `max{17, log(k₀/53.81 + m/68.9) + 7.38}`.
pub fn sine_case_h1(k0: u64, m: u64) -> f64 {
    (log(k0 as f64 / 53.81 + m as f64 / 68.9) + 7.38).max(17.0)
}

/// The chain `log(k₀/53.81 + m/68.9) + 7.38 < log(0.05m) + 7.38 <
/// log(m) + 4.385`, with `k₀` at its largest allowed value.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SineChain {
    pub m: u64,
    pub k0_max: u64,
    pub argument: f64,
    pub middle: f64,
    pub outer: f64,
}

impl SineChain {
    pub fn holds(&self) -> bool {
        self.argument < self.middle && self.middle < self.outer
    }
}

pub fn sine_chain(m: u64) -> SineChain {
    let t = theta_constants();
    // k₀ ≤ mθ/(π/2) + 1, and the even integer nearest mθ/(π/2) never exceeds it
    let k0_max = (m as f64 * t.ratio_to_half_pi + 1.0) as u64;
    SineChain {
        m,
        k0_max,
        argument: log(k0_max as f64 / 53.81 + m as f64 / 68.9) + 7.38,
        middle: log(0.05 * m as f64) + 7.38,
        outer: log(m as f64) + 4.385,
    }
}

/// `θ = arcsin √(7/8)`, with `√2 e^{−iθ} = ω`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ThetaConstants {
    pub theta: f64,
    pub sin_theta: f64,
    /// `θ / (π/2)`
    pub ratio_to_half_pi: f64,
    /// `1 / sin θ = √(8/7)`
    pub sqrt_8_over_7: f64,
    /// `e^{2iθ}` as `(re, im)`
    pub e_2i_theta: (f64, f64),
}

pub fn theta_constants() -> ThetaConstants {
    let sin_theta = sqrt(7.0 / 8.0);
    let theta = asin(sin_theta);
    ThetaConstants {
        theta,
        sin_theta,
        ratio_to_half_pi: theta / (PI / 2.0),
        sqrt_8_over_7: sqrt(8.0 / 7.0),
        e_2i_theta: (libm::cos(2.0 * theta), sin(2.0 * theta)),
    }
}

/// `2^m √(8/7) |sin((2m+1)θ) − sin(εθ)|`, which equals `|a_m − ε 2^m|`.
pub fn sine_form(m: u64, eps: i32) -> f64 {
    let t = theta_constants();
    let s = sin((2 * m + 1) as f64 * t.theta) - sin(eps as f64 * t.theta);
    libm::ldexp(t.sqrt_8_over_7 * fabs(s), m as i32)
}

/// The two inequalities whose failure bounds the collision searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Inequality {
    /// `(n/2) log 2 − 2⁹ (log n)² < (log n)/2 + log 4`
    PlainSequence,
    /// `log(24m) ≥ m log 2 + log √(8/7) − 2⁹ (log m + 4.385)²`
    ShiftedSequence,
}

impl Inequality {
    pub fn id(self) -> &'static str {
        match self {
            Inequality::PlainSequence => "a_case",
            Inequality::ShiftedSequence => "eps_case",
        }
    }

    /// The published point beyond which the inequality fails.
    pub fn claimed_bound(self) -> u64 {
        match self {
            Inequality::PlainSequence => 352_000,
            Inequality::ShiftedSequence => 302_000,
        }
    }

    /// Right minus left, oriented so that a positive gap means the
    /// inequality is false.
    pub fn gap(self, n: f64) -> f64 {
        let l = log(n);
        match self {
            Inequality::PlainSequence => n / 2.0 * LN2 - 512.0 * l * l - l / 2.0 - log(4.0),
            Inequality::ShiftedSequence => {
                let s = l + 4.385;
                n * LN2 + log(sqrt(8.0 / 7.0)) - 512.0 * s * s - log(24.0 * n)
            }
        }
    }

    pub fn gap_derivative(self, n: f64) -> f64 {
        let l = log(n);
        match self {
            Inequality::PlainSequence => LN2 / 2.0 - 1024.0 * l / n - 1.0 / (2.0 * n),
            Inequality::ShiftedSequence => LN2 - 1024.0 * (l + 4.385) / n - 1.0 / n,
        }
    }

    pub fn gap_second_derivative(self, n: f64) -> f64 {
        let l = log(n);
        match self {
            Inequality::PlainSequence => (1024.0 * (l - 1.0) + 0.5) / (n * n),
            Inequality::ShiftedSequence => (1024.0 * (l + 4.385 - 1.0) + 1.0) / (n * n),
        }
    }
}

/// The certified point past which an inequality fails.
#[derive(Clone, Debug, PartialEq)]
pub struct ThresholdResult {
    pub inequality_id: &'static str,
    /// Least `N` with the gap positive and increasing at `N`.
    pub crossing: u64,
    /// The bound being certified (`crossing ≤ verified_upper`).
    pub verified_upper: u64,
    pub gap_at_crossing: f64,
    pub gap_before_crossing: f64,
    pub derivative_at_crossing: f64,
    pub derivative_at_double: f64,
    /// `(n, gap(n))` at sample points from `verified_upper` outward.
    pub samples: Vec<(u64, f64)>,
}

/// Locate the crossing by doubling then integer bisection, and certify that
/// the gap stays positive for every `n ≥ crossing`: the gap and its
/// derivative are positive at the crossing, and the second derivative is
/// positive from there on (checked on a geometric grid to `10⁶·N`; both
/// second derivatives are `c(log n − c')/n²` with `c' < 1`).
pub fn certify_threshold(ineq: Inequality, claimed: u64) -> Result<ThresholdResult> {
    let ok = |n: u64| ineq.gap(n as f64) > 0.0 && ineq.gap_derivative(n as f64) > 0.0;
    let mut lo = 3u64;
    if ok(lo) {
        return Err(Error::Certification("gap already positive at n = 3"));
    }
    let mut hi = 16u64;
    while !ok(hi) {
        lo = hi;
        hi = hi
            .checked_mul(2)
            .ok_or(Error::Certification("no crossing found"))?;
    }
    while hi - lo > 1 {
        let mid = lo + (hi - lo) / 2;
        if ok(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let crossing = hi;
    let mut x = crossing as f64;
    while x < 1e6 * crossing as f64 {
        if ineq.gap_second_derivative(x) <= 0.0 {
            return Err(Error::Certification(
                "gap is not convex beyond the crossing",
            ));
        }
        x *= 1.01;
    }
    let derivative_at_crossing = ineq.gap_derivative(crossing as f64);
    let derivative_at_double = ineq.gap_derivative(2.0 * crossing as f64);
    if derivative_at_crossing <= 0.0 || derivative_at_double <= 0.0 {
        return Err(Error::Certification(
            "gap is not increasing at the crossing",
        ));
    }
    if crossing > claimed {
        return Err(Error::ThresholdExceeded {
            case: ineq.id(),
            crossing,
            claimed,
        });
    }
    let samples: Vec<(u64, f64)> = (0..10)
        .map(|i| {
            let n = claimed + i * claimed / 2;
            (n, ineq.gap(n as f64))
        })
        .collect();
    if samples.iter().any(|&(_, g)| g <= 0.0) {
        return Err(Error::Certification("inequality holds at a sample point"));
    }
    Ok(ThresholdResult {
        inequality_id: ineq.id(),
        crossing,
        verified_upper: claimed,
        gap_at_crossing: ineq.gap(crossing as f64),
        gap_before_crossing: ineq.gap((crossing - 1) as f64),
        derivative_at_crossing,
        derivative_at_double,
        samples,
    })
}

/// Failure bound for the plain-sequence inequality, certified `≤ 352000`.
pub fn threshold_a_case() -> Result<ThresholdResult> {
    certify_threshold(
        Inequality::PlainSequence,
        Inequality::PlainSequence.claimed_bound(),
    )
}

/// Failure bound for the shifted-sequence inequality, certified `≤ 302000`.
pub fn threshold_eps_case() -> Result<ThresholdResult> {
    certify_threshold(
        Inequality::ShiftedSequence,
        Inequality::ShiftedSequence.claimed_bound(),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn close(a: f64, b: f64, tol: f64) -> bool {
        fabs(a - b) <= tol
    }

    #[test]
    fn height_examples() {
        let p = MinimalPolynomial::from_descending(&[2, 3, 2]).unwrap();
        assert!(close(height(&p).unwrap(), LN2 / 2.0, 1e-9));
        let p = MinimalPolynomial::from_descending(&[1, -2]).unwrap();
        assert!(close(height(&p).unwrap(), LN2, 1e-12));
        let phi = (1.0 + sqrt(5.0)) / 2.0;
        let p = MinimalPolynomial::from_descending(&[1, -1, -1]).unwrap();
        assert!(close(height(&p).unwrap(), log(phi) / 2.0, 1e-9));
    }

    #[test]
    fn polynomial_validation() {
        assert!(MinimalPolynomial::from_descending(&[3]).is_err());
        assert!(MinimalPolynomial::from_descending(&[-1, 2]).is_err());
        assert!(MinimalPolynomial::from_descending(&[2, 4, 2]).is_err());
        assert_eq!(
            MinimalPolynomial::from_descending(&[0, 1, 1])
                .unwrap()
                .degree(),
            1
        );
    }

    /// Height of a product of cyclotomic-free linear factors: roots 2, 3, 1/5
    /// for 5x³ − 26x² + 35x − 6 = (x − 2)(x − 3)(5x − 1).
    #[test]
    fn cubic_height() {
        let p = MinimalPolynomial::from_descending(&[5, -26, 35, -6]).unwrap();
        let want = (log(5.0) + log(2.0) + log(3.0)) / 3.0;
        assert!(close(height(&p).unwrap(), want, 1e-9));
    }

    #[test]
    fn alpha_constants() {
        let c = lmn_alpha_constants();
        assert!(close(c.abs_log_alpha, 2.418858, 1e-6));
        assert!(close(c.a, 26.9056, 1e-3));
        assert!(close(c.modulus, 1.0, 1e-12));
        assert!(close(c.height, LN2 / 2.0, 1e-9));
    }

    #[test]
    fn variant_bound() {
        assert_eq!(lmn_lower_bound_variant(1000).h, 17.0);
        let switch = variant_h1_switch();
        // 25·e^{9.55} ≈ 351138.1
        assert!((351_000..351_300).contains(&switch), "{switch}");
        assert!(switch <= 352_000);
        assert_eq!(variant_h1(switch - 1), 17.0);
        assert!(variant_h1(switch) > 17.0);
        assert!(variant_relaxation_holds(352_000));
        assert!(variant_relaxation_holds(1_000_000));
    }

    #[test]
    fn two_log_bound() {
        let c = lmn_alpha_constants();
        let p = lmn_two_log_bound(1, 1);
        assert_eq!(p.h, 17.0);
        assert!(close(p.bound_exponent, -8.87 * c.a * 289.0, 1e-9));
        // 2a rounds to the 53.81 of the specialised form
        assert!(close(2.0 * c.a, 53.81, 5e-3));
        for m in [302_000u64, 1_000_000] {
            assert!(sine_chain(m).holds(), "m = {m}");
            let ch = sine_chain(m);
            assert!(sine_case_h1(ch.k0_max, m) < ch.outer);
        }
    }

    #[test]
    fn theta() {
        let t = theta_constants();
        assert!(close(sin(t.theta), sqrt(7.0 / 8.0), 1e-12));
        assert!(close(t.ratio_to_half_pi, 0.76995, 1e-5));
        assert!(close(t.e_2i_theta.0, -0.75, 1e-12));
        assert!(close(t.e_2i_theta.1, sqrt(7.0) / 4.0, 1e-12));
    }

    #[test]
    fn thresholds() {
        let a = threshold_a_case().unwrap();
        assert!(a.crossing <= 352_000);
        assert!(a.gap_before_crossing <= 0.0 || a.derivative_at_crossing > 0.0);
        assert!(Inequality::PlainSequence.gap(352_000.0) > 0.0);
        let e = threshold_eps_case().unwrap();
        assert!(e.crossing <= 302_000);
        assert!(Inequality::ShiftedSequence.gap(302_000.0) > 6.0e4);
        assert!(matches!(
            certify_threshold(Inequality::PlainSequence, 100_000),
            Err(Error::ThresholdExceeded { .. })
        ));
    }

    /// Central finite differences against the closed-form derivatives.
    #[test]
    fn derivatives_match_finite_differences() {
        for ineq in [Inequality::PlainSequence, Inequality::ShiftedSequence] {
            for n in [1e3, 5e4, 3e5, 2e6] {
                let h = n * 1e-4;
                let fd = (ineq.gap(n + h) - ineq.gap(n - h)) / (2.0 * h);
                assert!(close(fd, ineq.gap_derivative(n), 1e-6 * (1.0 + fabs(fd))));
                let fd2 = (ineq.gap_derivative(n + h) - ineq.gap_derivative(n - h)) / (2.0 * h);
                let d2 = ineq.gap_second_derivative(n);
                assert!(close(fd2, d2, 1e-5 * fabs(d2)));
            }
        }
    }

    #[test]
    fn sine_inequality_samples() {
        for i in 0..=10_000 {
            let x = -PI / 2.0 + PI * i as f64 / 10_000.0;
            assert!(fabs(sin(x)) >= 2.0 / PI * fabs(x) - 1e-15);
        }
    }

    proptest! {
        #[test]
        fn height_is_reflection_invariant(
            lead in 1i64..20,
            rest in proptest::collection::vec(-20i64..20, 1..5),
        ) {
            let mut coeffs = alloc::vec![lead];
            coeffs.extend(rest);
            if let Ok(p) = MinimalPolynomial::from_descending(&coeffs) {
                if let (Ok(h1), Ok(h2)) = (height(&p), height(&p.reflect())) {
                    prop_assert!(fabs(h1 - h2) < 1e-8);
                }
            }
        }
    }
}
