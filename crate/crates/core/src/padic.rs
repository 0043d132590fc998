//! Fixed-precision 2-adic arithmetic.
//!
//! A nonzero [`Padic2`] is `2^v · u` with `u` odd and known modulo `2^N`
//! (`N` relative bits); its absolute precision is `v + N`. Every operation
//! derives the output precision from its inputs and never claims more bits
//! than it has. Values that cancel below the known bits become an inexact
//! zero carrying only an absolute precision.
//!
//! On top of that sit the constants that govern `v2(Tr T2(2k) − t)`:
//!
//! ```text
//! Ω_t = ( log2((1 + t)(2ω − 1)) / log2(1 − ω) + 1 ) / 2,   Ω = Ω_0,
//! ```
//!
//! with `ω = (1 − √−7)/2` embedded so that `v2(ω) = 1`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use alloc::string::{String, ToString};

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactmath::floor_log2;
use crate::{Error, Result};

/// Default working precision, in bits.
pub const DEFAULT_PRECISION: u32 = 96;

/// Two-adic valuation of an integer; `None` (infinity) for zero.
pub fn v2(x: &BigInt) -> Option<u64> {
    x.trailing_zeros()
}

fn modulus(bits: u64) -> BigInt {
    BigInt::one() << bits
}

/// `x mod 2^bits` as a nonnegative residue.
fn reduce(x: &BigInt, bits: u64) -> BigUint {
    x.mod_floor(&modulus(bits))
        .to_biguint()
        .expect("mod_floor is nonnegative")
}

/// Inverse of an odd residue modulo `2^bits`, by Newton iteration.
fn inverse_odd(u: &BigUint, bits: u32) -> BigUint {
    debug_assert!(u.bit(0));
    let m = BigUint::one() << bits;
    let u = u % &m;
    // u·u ≡ 1 (mod 8) for every odd u
    let mut x = u.clone();
    let mut good = 3u32;
    let two = BigUint::from(2u32);
    while good < bits {
        let ux = (&u * &x) % &m;
        // x ← x(2 − ux)
        let corr = (&two + &m - ux) % &m;
        x = (x * corr) % &m;
        good *= 2;
    }
    x % m
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Repr {
    /// Zero known modulo `2^abs`; `None` means exactly zero.
    Zero {
        abs: Option<i64>,
    },
    Unit {
        val: i64,
        unit: BigUint,
        prec: u32,
    },
}

/// An element of `Q2` known to finite precision.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Padic2 {
    repr: Repr,
}

impl Padic2 {
    pub fn zero() -> Self {
        Padic2 {
            repr: Repr::Zero { abs: None },
        }
    }

    /// Zero known only modulo `2^abs`.
    pub fn zero_mod(abs: i64) -> Self {
        Padic2 {
            repr: Repr::Zero { abs: Some(abs) },
        }
    }

    /// An integer with `precision` relative bits.
    pub fn from_int(x: &BigInt, precision: u32) -> Self {
        match v2(x) {
            None => Self::zero(),
            Some(v) => Padic2 {
                repr: Repr::Unit {
                    val: v as i64,
                    unit: reduce(&(x >> v), precision as u64),
                    prec: precision,
                },
            },
        }
    }

    pub fn from_i64(x: i64, precision: u32) -> Self {
        Self::from_int(&BigInt::from(x), precision)
    }

    /// The element `2^offset · r`, known modulo `2^abs`.
    pub fn from_residue(r: &BigInt, offset: i64, abs: i64) -> Self {
        if abs <= offset {
            return Self::zero_mod(abs);
        }
        let r = reduce(r, (abs - offset) as u64);
        match r.trailing_zeros() {
            None => Self::zero_mod(abs),
            Some(v) => {
                let val = offset + v as i64;
                Padic2 {
                    repr: Repr::Unit {
                        val,
                        unit: r >> v,
                        prec: (abs - val) as u32,
                    },
                }
            }
        }
    }

    /// Valuation; `None` for a zero (exact or to precision).
    pub fn valuation(&self) -> Option<i64> {
        match &self.repr {
            Repr::Unit { val, .. } => Some(*val),
            Repr::Zero { .. } => None,
        }
    }

    /// The odd unit part, known modulo `2^precision()`.
    pub fn unit(&self) -> Option<&BigUint> {
        match &self.repr {
            Repr::Unit { unit, .. } => Some(unit),
            Repr::Zero { .. } => None,
        }
    }

    /// Guaranteed bits of the unit part; 0 for zeros.
    pub fn precision(&self) -> u32 {
        match &self.repr {
            Repr::Unit { prec, .. } => *prec,
            Repr::Zero { .. } => 0,
        }
    }

    /// The value is known modulo `2^abs_precision`; `None` for exact zero.
    pub fn abs_precision(&self) -> Option<i64> {
        match &self.repr {
            Repr::Unit { val, prec, .. } => Some(val + *prec as i64),
            Repr::Zero { abs } => *abs,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { .. })
    }

    pub fn is_exact_zero(&self) -> bool {
        matches!(self.repr, Repr::Zero { abs: None })
    }

    /// The value modulo `2^bits`, when it is 2-adically integral and at
    /// least `bits` bits are known.
    pub fn residue(&self, bits: u32) -> Option<BigUint> {
        if let Some(abs) = self.abs_precision() {
            if (bits as i64) > abs {
                return None;
            }
        }
        match &self.repr {
            Repr::Zero { .. } => Some(BigUint::zero()),
            Repr::Unit { val, unit, .. } => {
                if *val < 0 {
                    return None;
                }
                let m = BigUint::one() << bits;
                Some((unit << (*val as u64)) % m)
            }
        }
    }

    /// Forget everything beyond absolute precision `abs`.
    pub fn truncate(&self, abs: i64) -> Self {
        match &self.repr {
            Repr::Zero { abs: a } => Self::zero_mod(a.map_or(abs, |a| a.min(abs))),
            Repr::Unit { val, unit, prec } => {
                let keep = (*val + *prec as i64).min(abs);
                Self::from_residue(&BigInt::from(unit.clone()), *val, keep)
            }
        }
    }

    /// Multiply by `2^e` (any sign).
    pub fn mul_pow2(&self, e: i64) -> Self {
        match &self.repr {
            Repr::Zero { abs } => Padic2 {
                repr: Repr::Zero {
                    abs: abs.map(|a| a + e),
                },
            },
            Repr::Unit { val, unit, prec } => Padic2 {
                repr: Repr::Unit {
                    val: val + e,
                    unit: unit.clone(),
                    prec: *prec,
                },
            },
        }
    }

    pub fn checked_div(&self, rhs: &Padic2) -> Result<Padic2> {
        let (vb, ub, pb) = match &rhs.repr {
            Repr::Zero { .. } => return Err(Error::DivisionByZero),
            Repr::Unit { val, unit, prec } => (*val, unit, *prec),
        };
        Ok(match &self.repr {
            Repr::Zero { abs } => Padic2 {
                repr: Repr::Zero {
                    abs: abs.map(|a| a - vb),
                },
            },
            Repr::Unit { val, unit, prec } => {
                let p = (*prec).min(pb);
                let m = BigUint::one() << p;
                Padic2 {
                    repr: Repr::Unit {
                        val: val - vb,
                        unit: (unit * inverse_odd(ub, p)) % m,
                        prec: p,
                    },
                }
            }
        })
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut acc = Padic2::from_i64(1, self.precision().max(1));
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// The lowest `bits` binary digits, least significant first, with the
    /// valuation shift applied. Unknown digits are shown as `?`.
    pub fn binary_digits(&self, bits: u32) -> String {
        let known = self
            .abs_precision()
            .map_or(bits, |a| a.clamp(0, bits as i64) as u32);
        let r = self.residue(known);
        let mut s = String::with_capacity(bits as usize);
        for i in 0..bits {
            match &r {
                Some(r) if i < known => s.push(if r.bit(i as u64) { '1' } else { '0' }),
                _ => s.push('?'),
            }
        }
        s
    }
}

impl fmt::Display for Padic2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.repr {
            Repr::Zero { abs: None } => write!(f, "0"),
            Repr::Zero { abs: Some(a) } => write!(f, "O(2^{a})"),
            Repr::Unit { val, unit, prec } => {
                write!(f, "2^{val}·{unit} + O(2^{})", val + *prec as i64)
            }
        }
    }
}

impl Neg for &Padic2 {
    type Output = Padic2;
    fn neg(self) -> Padic2 {
        match &self.repr {
            Repr::Zero { .. } => self.clone(),
            Repr::Unit { val, unit, prec } => {
                let m = BigUint::one() << *prec;
                Padic2 {
                    repr: Repr::Unit {
                        val: *val,
                        unit: (&m - unit) % m,
                        prec: *prec,
                    },
                }
            }
        }
    }
}

impl<'a> Add<&'a Padic2> for &'a Padic2 {
    type Output = Padic2;
    fn add(self, rhs: &Padic2) -> Padic2 {
        if self.is_exact_zero() {
            return rhs.clone();
        }
        if rhs.is_exact_zero() {
            return self.clone();
        }
        let abs = self
            .abs_precision()
            .expect("inexact")
            .min(rhs.abs_precision().expect("inexact"));
        let offset = [self.valuation(), rhs.valuation()]
            .into_iter()
            .flatten()
            .chain(core::iter::once(abs))
            .min()
            .expect("nonempty");
        let mut r = BigInt::zero();
        for x in [self, rhs] {
            if let Repr::Unit { val, unit, .. } = &x.repr {
                r += BigInt::from(unit.clone()) << ((val - offset) as u64);
            }
        }
        Padic2::from_residue(&r, offset, abs)
    }
}

impl<'a> Sub<&'a Padic2> for &'a Padic2 {
    type Output = Padic2;
    fn sub(self, rhs: &Padic2) -> Padic2 {
        self + &(-rhs)
    }
}

impl<'a> Mul<&'a Padic2> for &'a Padic2 {
    type Output = Padic2;
    fn mul(self, rhs: &Padic2) -> Padic2 {
        match (&self.repr, &rhs.repr) {
            (Repr::Zero { abs: None }, _) | (_, Repr::Zero { abs: None }) => Padic2::zero(),
            (Repr::Zero { abs: Some(a) }, Repr::Zero { abs: Some(b) }) => Padic2::zero_mod(a + b),
            (Repr::Zero { abs: Some(a) }, Repr::Unit { val, .. })
            | (Repr::Unit { val, .. }, Repr::Zero { abs: Some(a) }) => Padic2::zero_mod(a + val),
            (
                Repr::Unit {
                    val: va,
                    unit: ua,
                    prec: pa,
                },
                Repr::Unit {
                    val: vb,
                    unit: ub,
                    prec: pb,
                },
            ) => {
                let p = (*pa).min(*pb);
                let m = BigUint::one() << p;
                Padic2 {
                    repr: Repr::Unit {
                        val: va + vb,
                        unit: (ua * ub) % m,
                        prec: p,
                    },
                }
            }
        }
    }
}

macro_rules! owned_binop {
    ($tr:ident, $f:ident) => {
        impl $tr for Padic2 {
            type Output = Padic2;
            fn $f(self, rhs: Padic2) -> Padic2 {
                (&self).$f(&rhs)
            }
        }
    };
}
owned_binop!(Add, add);
owned_binop!(Sub, sub);
owned_binop!(Mul, mul);

impl Neg for Padic2 {
    type Output = Padic2;
    fn neg(self) -> Padic2 {
        -&self
    }
}

/// Square root of an integer `u ≡ 1 (mod 8)` on the branch `s ≡ branch_mod8
/// (mod 8)`, to `precision` bits.
///
/// Lifting: if `s² ≡ u (mod 2^j)` with `j ≥ 4`, add `2^{j−1}` exactly when
/// `(s² − u)/2^j` is odd. Only two of the four odd residues mod 8 are
/// viable for a given `u`; the other two are rejected.
pub fn sqrt2(u: &BigInt, branch_mod8: u8, precision: u32) -> Result<Padic2> {
    if reduce(u, 3) != BigUint::one() {
        return Err(Error::NotSquareMod8(u.to_string()));
    }
    let branch = branch_mod8 % 8;
    let viable = branch % 2 == 1 && {
        let b = BigInt::from(branch);
        reduce(&(&b * &b - u), 4).is_zero()
    };
    if !viable {
        return Err(Error::NonViableBranch {
            value: u.to_string(),
            branch: branch_mod8,
        });
    }
    let mut s = BigInt::from(branch);
    for j in 4..=precision as u64 {
        let excess = (&s * &s - u) >> j;
        if excess.is_odd() {
            s += BigInt::one() << (j - 1);
        }
    }
    Ok(Padic2::from_int(&s, precision.max(1)))
}

/// `(ω, ω̄)` with `ω = (1 − s)/2`, `s² = −7`, `s ≡ 5 (mod 8)`; both carry at
/// least `precision` relative bits.
pub fn omega2(precision: u32) -> Result<(Padic2, Padic2)> {
    if precision < 8 {
        return Err(Error::InsufficientPrecision("omega2 needs at least 8 bits"));
    }
    let s = sqrt2(&BigInt::from(-7), 5, precision + 2)?;
    let one = Padic2::from_i64(1, precision + 8);
    let w = (&one - &s).mul_pow2(-1);
    let wb = (&one + &s).mul_pow2(-1);
    assert_eq!(w.valuation(), Some(1), "v2(ω) must be 1");
    assert_eq!(wb.valuation(), Some(0), "v2(ω̄) must be 0");
    assert_eq!((&one - &w).valuation(), Some(0), "1 − ω must be a unit");
    assert_eq!((&w - &wb).valuation(), Some(0), "ω − ω̄ must be a unit");
    Ok((w, wb))
}

/// The 2-adic logarithm on `1 + 2Z2`, to at most `target` absolute bits.
///
/// With `y = x − 1`, `w = v2(y)`, the series `Σ (−1)^{n+1} yⁿ/n` is cut at
/// the least `n` with `n·w − ⌊log2 n⌋ ≥ L`, `L = min(target, abs(x))`.
/// Every later term has valuation `≥ L`, and an error of `2^{abs(x)}` in `x`
/// moves no term below `abs(x)`, so the result is exact modulo `2^L`.
pub fn log2adic(x: &Padic2, target: u32) -> Result<Padic2> {
    let (unit, prec) = match &x.repr {
        Repr::Unit { val: 0, unit, prec } => (unit, *prec),
        _ => return Err(Error::LogDomain),
    };
    let abs = prec as u64;
    let lim = abs.min(target as u64);
    let y = BigInt::from(unit.clone()) - 1;
    let w = match v2(&reduce(&y, abs).into()) {
        Some(w) if w < abs => w,
        _ => return Ok(Padic2::zero_mod(lim as i64)),
    };
    let m = modulus(lim);
    let uy = (&y >> w).mod_floor(&m);
    let mut uy_pow = BigInt::one();
    let mut sum = BigInt::zero();
    let mut n = 1u64;
    while n * w < lim + floor_log2(n) as u64 {
        uy_pow = (uy_pow * &uy).mod_floor(&m);
        let e = n.trailing_zeros() as u64;
        let odd = n >> e;
        let shift = n * w - e;
        if shift < lim {
            let inv = BigInt::from(inverse_odd(&BigUint::from(odd), lim as u32));
            let term = ((&uy_pow * inv) << shift).mod_floor(&m);
            if n % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        n += 1;
    }
    Ok(Padic2::from_residue(&sum, 0, lim as i64))
}

/// `Ω_t` for `t ≡ 0 (mod 8)`, computed at working precision `precision`.
///
/// Fails with [`Error::OmegaParity`] if the ratio of logarithms is not an
/// odd 2-adic integer, and with [`Error::InsufficientPrecision`] if fewer
/// than 8 bits of `Ω_t` survive.
pub fn omega_const(t: i64, precision: u32) -> Result<Padic2> {
    if t % 8 != 0 {
        return Err(Error::InvalidShift(t));
    }
    let (w, _) = omega2(precision)?;
    let big = precision + 16;
    let one = Padic2::from_i64(1, big);
    let den = log2adic(&(&one - &w), big)?;
    let twice_w_minus_one = &w.mul_pow2(1) - &one;
    let arg = &Padic2::from_i64(1 + t, big) * &twice_w_minus_one;
    let num = log2adic(&arg, big)?;
    if den.is_zero() {
        return Err(Error::InsufficientPrecision("log2(1 − ω) vanishes"));
    }
    let ratio = num.checked_div(&den)?;
    match ratio.valuation() {
        Some(0) => {}
        Some(_) => return Err(Error::OmegaParity { t }),
        None => return Err(Error::InsufficientPrecision("ratio of logarithms vanishes")),
    }
    let omega = (&ratio + &one).mul_pow2(-1);
    if omega.abs_precision().is_some_and(|a| a < 8) {
        return Err(Error::InsufficientPrecision("fewer than 8 bits of Ω_t"));
    }
    Ok(omega)
}

/// Predicted `v2(Tr T2(2k) − t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValuationPrediction {
    pub k: u64,
    pub t: i64,
    /// `3 + v2(k − Ω_t)`.
    pub predicted: i64,
    /// `v2(k − Ω_t) < k − 4`, under which the prediction is the exact
    /// valuation rather than a lower bound.
    pub equality_guaranteed: bool,
}

/// What the 2-adic expansion proves about `v2(Tr T2(2k) − t)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ValuationBound {
    pub lower: i64,
    pub exact: bool,
}

impl ValuationBound {
    /// Whether two numbers with these valuation bounds can be equal.
    pub fn compatible(&self, other: &ValuationBound) -> bool {
        match (self.exact, other.exact) {
            (true, true) => self.lower == other.lower,
            (true, false) => self.lower >= other.lower,
            (false, true) => other.lower >= self.lower,
            (false, false) => true,
        }
    }
}

/// Valuation predictions for one shift `t`, sharing one `Ω_t`.
#[derive(Clone, Debug)]
pub struct ValuationPredictor {
    t: i64,
    omega: Padic2,
}

impl ValuationPredictor {
    pub fn new(t: i64, precision: u32) -> Result<Self> {
        Ok(ValuationPredictor {
            t,
            omega: omega_const(t, precision)?,
        })
    }

    pub fn omega(&self) -> &Padic2 {
        &self.omega
    }

    pub fn t(&self) -> i64 {
        self.t
    }

    fn k_minus_omega(&self, k: u64) -> Padic2 {
        let bits = self.omega.abs_precision().unwrap_or(64).max(64) as u32 + 64;
        &Padic2::from_int(&BigInt::from(k), bits) - &self.omega
    }

    /// `v2(k − Ω_t)`, or an error if it exceeds the known bits.
    pub fn v2_k_minus_omega(&self, k: u64) -> Result<i64> {
        self.k_minus_omega(k)
            .valuation()
            .ok_or(Error::InsufficientPrecision(
                "k − Ω_t vanishes to working precision",
            ))
    }

    pub fn predict(&self, k: u64) -> Result<ValuationPrediction> {
        if k < 2 {
            return Err(Error::OutOfDomain {
                name: "k",
                value: k as i64,
                min: 2,
            });
        }
        let v = self.v2_k_minus_omega(k)?;
        Ok(ValuationPrediction {
            k,
            t: self.t,
            predicted: 3 + v,
            equality_guaranteed: v < k as i64 - 4,
        })
    }

    /// Bound on `v2(Tr T2(2k) − t)` from
    /// `Tr − t = (ω̄^{2k−1}/(ω − ω̄) − 1 − t) − ω^{2k−1}/(ω − ω̄) + ε·2^{k−1}`,
    /// whose three terms have valuations `3 + v2(k − Ω_t)`, `2k − 1` and
    /// `k − 1` (the last only when `ε ≠ 0`).
    ///
    /// With `clip = Some(c)`, `v2(k − Ω_t)` is only trusted up to `c`; a
    /// larger value becomes the lower bound `3 + c`.
    pub fn bound(&self, k: u64, clip: Option<i64>) -> ValuationBound {
        let diff = self.k_minus_omega(k);
        let k = k as i64;
        let tail = if crate::trace::epsilon(k as u64) != 0 {
            k - 1
        } else {
            2 * k - 1
        };
        let (v, known) = match diff.valuation() {
            Some(v) => (v, true),
            None => (diff.abs_precision().unwrap_or(i64::MAX / 2), false),
        };
        let (v, known) = match clip {
            Some(c) if v >= c => (c, false),
            _ => (v, known),
        };
        let lead = 3 + v;
        ValuationBound {
            lower: lead.min(tail),
            exact: known && lead < tail,
        }
    }
}

/// One-shot wrapper around [`ValuationPredictor::predict`].
pub fn predict_v2_shifted_trace(k: u64, t: i64, precision: u32) -> Result<ValuationPrediction> {
    ValuationPredictor::new(t, precision)?.predict(k)
}

/// Decides whether `Tr T2(2k) = Tr T2(2k')` survives the 2-adic tests at
/// `t = 0` and `t = 8`.
#[derive(Clone, Debug)]
pub struct CongruenceFilter {
    plain: ValuationPredictor,
    shifted: ValuationPredictor,
}

impl CongruenceFilter {
    pub fn new(precision: u32) -> Result<Self> {
        Ok(CongruenceFilter {
            plain: ValuationPredictor::new(0, precision)?,
            shifted: ValuationPredictor::new(8, precision)?,
        })
    }

    /// The mod-4 table test: `v2(k − Ω_t)` is read only as 0, 1 or
    /// "at least 2". Admissible exactly when `k ≡ k2 (mod 4)`.
    pub fn admissible(&self, k: u64, k2: u64) -> bool {
        self.check(k, k2, Some(2))
    }

    /// Same test with every known bit of `Ω_t`; can separate weights in the
    /// same class mod 4.
    pub fn admissible_sharp(&self, k: u64, k2: u64) -> bool {
        self.check(k, k2, None)
    }

    fn check(&self, k: u64, k2: u64, clip: Option<i64>) -> bool {
        [&self.plain, &self.shifted]
            .iter()
            .all(|p| p.bound(k, clip).compatible(&p.bound(k2, clip)))
    }

    /// `(v2(k − Ω), v2(k − Ω_8))`, each clipped at 2.
    pub fn table_row(&self, k: u64) -> Result<(i64, i64)> {
        let clip = |p: &ValuationPredictor| -> Result<i64> {
            match p.v2_k_minus_omega(k) {
                Ok(v) => Ok(v.min(2)),
                // vanishing to working precision certainly means ≥ 2
                Err(Error::InsufficientPrecision(_)) => Ok(2),
                Err(e) => Err(e),
            }
        };
        Ok((clip(&self.plain)?, clip(&self.shifted)?))
    }
}

/// `true` iff equal traces at `k` and `k2` are 2-adically possible.
pub fn congruence_filter(k: u64, k2: u64, precision: u32) -> Result<bool> {
    for (name, value) in [("k", k), ("k2", k2)] {
        if value < 6 {
            return Err(Error::OutOfDomain {
                name,
                value: value as i64,
                min: 6,
            });
        }
    }
    Ok(CongruenceFilter::new(precision)?.admissible(k, k2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, bits: u32) -> Padic2 {
        Padic2::from_i64(x, bits)
    }

    #[test]
    fn valuation_examples() {
        assert_eq!(v2(&BigInt::from(-24)), Some(3));
        assert_eq!(v2(&BigInt::from(1)), Some(0));
        assert_eq!(v2(&BigInt::from(0)), None);
    }

    #[test]
    fn sqrt_examples() {
        let s = sqrt2(&BigInt::from(-7), 5, 4).unwrap();
        assert_eq!(s.residue(4), Some(BigUint::from(5u32)));
        let s = sqrt2(&BigInt::from(1), 1, 40).unwrap();
        assert_eq!(s.residue(40), Some(BigUint::one()));
        let s = sqrt2(&BigInt::from(9), 3, 40).unwrap();
        assert_eq!(s.residue(40), Some(BigUint::from(3u32)));
        assert!(matches!(
            sqrt2(&BigInt::from(3), 1, 10),
            Err(Error::NotSquareMod8(_))
        ));
        assert!(matches!(
            sqrt2(&BigInt::from(-7), 1, 10),
            Err(Error::NonViableBranch { .. })
        ));
    }

    /// Exhaustive oracle: the residues mod 16 squaring to −7 mod 32 on
    /// branch 5 mod 8.
    #[test]
    fn sqrt_branch_by_search() {
        let roots: alloc::vec::Vec<u32> = (0..16u32)
            .filter(|s| s % 8 == 5 && (s * s + 7) % 32 == 0)
            .collect();
        assert_eq!(roots, [5]);
        let s = sqrt2(&BigInt::from(-7), 5, 64).unwrap();
        let r = BigInt::from(s.residue(64).unwrap());
        assert!(reduce(&(&r * &r + 7), 64).is_zero());
    }

    #[test]
    fn omega_embedding() {
        let (w, wb) = omega2(64).unwrap();
        let one = p(1, 80);
        assert_eq!(w.valuation(), Some(1));
        assert_eq!((&one - &wb).valuation(), Some(1));
        let prod = &w * &wb;
        assert_eq!(prod.residue(60), Some(BigUint::from(2u32)));
        let sum = &w + &wb;
        assert_eq!(sum.residue(60), Some(BigUint::one()));
        assert!(omega2(7).is_err());
    }

    #[test]
    fn log_examples() {
        assert!(log2adic(&p(1, 64), 64).unwrap().is_zero());
        assert!(log2adic(&p(-1, 64), 64).unwrap().is_zero());
        let l5 = log2adic(&p(5, 64), 64).unwrap();
        assert_eq!(l5.residue(5), Some(BigUint::from(28u32)));
        assert!(matches!(log2adic(&p(2, 64), 64), Err(Error::LogDomain)));
        let (w, _) = omega2(96).unwrap();
        let one = p(1, 128);
        let x = &one - &w;
        let l = log2adic(&(&x * &x), 96).unwrap();
        assert_eq!(l.valuation(), Some(3));
    }

    /// log 5 modulo 2^32 from the series in exact rationals.
    #[test]
    fn log_matches_rational_series() {
        use num_rational::BigRational;
        let bits = 32u64;
        let mut sum = BigRational::zero();
        for n in 1..60i64 {
            let term = BigRational::new(BigInt::from(4).pow(n as u32), BigInt::from(n));
            if n % 2 == 1 {
                sum += term;
            } else {
                sum -= term;
            }
        }
        let den = sum.denom();
        let inv = BigInt::from(inverse_odd(&den.to_biguint().unwrap(), bits as u32));
        let want = reduce(&(sum.numer() * inv), bits);
        let got = log2adic(&p(5, 64), 64)
            .unwrap()
            .residue(bits as u32)
            .unwrap();
        assert_eq!(got, want);
    }

    /// Residues of Ω and Ω_8 mod 2^64, computed independently with exact
    /// rational series.
    const OMEGA_0_MOD_2_64: u64 = 11686158113550812167;
    const OMEGA_8_MOD_2_64: u64 = 11850721771880248898;

    #[test]
    fn omega_constants() {
        let o = omega_const(0, 96).unwrap();
        assert_eq!(o.residue(2), Some(BigUint::from(3u32)));
        assert_eq!(o.residue(64), Some(BigUint::from(OMEGA_0_MOD_2_64)));
        let o8 = omega_const(8, 96).unwrap();
        assert_eq!(o8.residue(2), Some(BigUint::from(2u32)));
        assert_eq!(o8.residue(64), Some(BigUint::from(OMEGA_8_MOD_2_64)));
        assert!(matches!(omega_const(4, 96), Err(Error::InvalidShift(4))));
    }

    #[test]
    fn omega_via_one_minus_two_omega() {
        let (w, _) = omega2(96).unwrap();
        let one = p(1, 128);
        let den = log2adic(&(&one - &w), 128).unwrap();
        let num = log2adic(&(&one - &w.mul_pow2(1)), 128).unwrap();
        let alt = (&num.checked_div(&den).unwrap() + &one).mul_pow2(-1);
        let omega = omega_const(0, 96).unwrap();
        let bits = alt
            .abs_precision()
            .unwrap()
            .min(omega.abs_precision().unwrap()) as u32;
        assert!(bits >= 80);
        assert_eq!(alt.residue(bits), omega.residue(bits));
    }

    #[test]
    fn precision_doubling_is_honest() {
        for t in [0, 8, 16, -8] {
            let lo = omega_const(t, 96).unwrap();
            let hi = omega_const(t, 192).unwrap();
            let bits = lo.abs_precision().unwrap() as u32;
            assert!(bits >= 88);
            assert_eq!(hi.residue(bits), lo.residue(bits), "t = {t}");
        }
    }

    #[test]
    fn lifting_the_exponent() {
        let (w, _) = omega2(128).unwrap();
        let one = p(1, 160);
        let x = &one - &w;
        for d in 1..=64u64 {
            let lhs = &x.pow(2 * d) - &one;
            let want = 3 + v2(&BigInt::from(d)).unwrap() as i64;
            assert_eq!(lhs.valuation(), Some(want), "d = {d}");
        }
    }

    #[test]
    fn prediction_examples() {
        let pred = predict_v2_shifted_trace(6, 0, 96).unwrap();
        assert_eq!(pred.predicted, 3);
        assert!(pred.equality_guaranteed);
        // k = 7 sits in the ≥ 2 row: Ω ≡ 7 (mod 2^10), so v2(7 − Ω) ≥ 2.
        let pred = predict_v2_shifted_trace(7, 0, 96).unwrap();
        assert!(pred.predicted >= 5);
        // k = 8, t = 8: exact oracle v2(Tr T2(16) − 8) = v2(216 − 8) = v2(208) = 4.
        let pred = predict_v2_shifted_trace(8, 8, 96).unwrap();
        let oracle = v2(&(crate::trace::trace_rec(8).unwrap() - 8)).unwrap() as i64;
        assert_eq!(oracle, 4);
        assert_eq!(pred.predicted, oracle);
        assert!(pred.equality_guaranteed);
    }

    #[test]
    fn congruence_examples() {
        assert!(congruence_filter(6, 10, 96).unwrap());
        assert!(!congruence_filter(6, 8, 96).unwrap());
        assert!(congruence_filter(9, 13, 96).unwrap());
        assert!(congruence_filter(5, 9, 96).is_err());
    }

    #[test]
    fn table_filter_is_the_residue_class() {
        let f = CongruenceFilter::new(96).unwrap();
        for k in 6..60u64 {
            for k2 in 6..60u64 {
                assert_eq!(f.admissible(k, k2), k % 4 == k2 % 4, "({k}, {k2})");
            }
        }
    }

    /// The sharp filter never rejects a pair whose exact shifted traces have
    /// equal valuations at t = 0 and t = 8.
    #[test]
    fn sharp_filter_is_sound() {
        use crate::trace::trace_rec;
        let f = CongruenceFilter::new(96).unwrap();
        let vals: alloc::vec::Vec<_> = (6..80u64)
            .map(|k| {
                let t = trace_rec(k).unwrap();
                (v2(&t), v2(&(t - 8)))
            })
            .collect();
        for k in 6..80u64 {
            for k2 in 6..80u64 {
                if vals[k as usize - 6] == vals[k2 as usize - 6] {
                    assert!(f.admissible_sharp(k, k2), "({k}, {k2})");
                }
            }
        }
        // Tr T2(12) − 8 = −32 and Tr T2(20) − 8 = 448 differ in valuation.
        assert!(!f.admissible_sharp(6, 10));
    }

    #[test]
    fn trace_reconstruction() {
        use crate::trace::{epsilon, trace_rec};
        let n = 160u32;
        let (w, wb) = omega2(n).unwrap();
        let one = p(1, n + 8);
        let d = &w - &wb;
        for k in 6..=200u64 {
            let e = 2 * k - 1;
            let first = &wb.pow(e).checked_div(&d).unwrap() - &one;
            let second = w.pow(e).checked_div(&d).unwrap();
            let eps = Padic2::from_int(&(BigInt::from(epsilon(k)) << (k - 1)), n);
            let total = &(&first - &second) + &eps;
            let exact = Padic2::from_int(&trace_rec(k).unwrap(), n + 8);
            let diff = &total - &exact;
            let bits = diff.abs_precision().unwrap();
            assert!(bits >= n as i64 - 8, "k = {k}: only {bits} bits");
            assert!(diff.is_zero(), "k = {k}: {diff}");
        }
    }

    fn odd_unit() -> impl Strategy<Value = i64> {
        (-(1i64 << 40)..(1i64 << 40)).prop_map(|x| 2 * x + 1)
    }

    proptest! {
        #[test]
        fn log_is_a_homomorphism(x in odd_unit(), y in odd_unit()) {
            let bits = 80;
            let lx = log2adic(&p(x, bits), bits).unwrap();
            let ly = log2adic(&p(y, bits), bits).unwrap();
            let lxy = log2adic(&p(x, bits).mul(p(y, bits)), bits).unwrap();
            let diff = &(&lx + &ly) - &lxy;
            prop_assert!(diff.is_zero());
            prop_assert!(diff.abs_precision().unwrap() >= bits as i64);
        }

        #[test]
        fn division_inverts_multiplication(x in odd_unit(), y in odd_unit(), s in 0i64..20) {
            let a = p(x, 64).mul_pow2(s);
            let b = p(y, 64);
            let q = (&a * &b).checked_div(&b).unwrap();
            prop_assert!((&q - &a).is_zero());
        }

        #[test]
        fn addition_matches_integers(x in -(1i64 << 50)..(1i64 << 50), y in -(1i64 << 50)..(1i64 << 50)) {
            let s = &p(x, 70) + &p(y, 70);
            let want = Padic2::from_i64(x + y, 70);
            prop_assert!((&s - &want).is_zero());
            if x + y != 0 {
                prop_assert_eq!(s.valuation(), want.valuation());
            }
        }
    }
}
