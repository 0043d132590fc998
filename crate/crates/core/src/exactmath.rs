//! Exact arithmetic substrate.
//!
//! Integers and rationals come from `num-bigint`/`num-rational`; this module
//! adds binomial coefficients and the quadratic ring `Z[ω]`, where
//! `ω = (1 − √−7)/2` satisfies `ω² = ω − 2`.

use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

pub use num_bigint::{BigInt, BigUint, Sign};
pub use num_rational::BigRational;

/// Binomial coefficient `C(n, k)`, zero outside `0 ≤ k ≤ n`.
///
/// Multiplicative formula with exact division at every step, so only
/// `min(k, n − k)` small multiplications are needed.
pub fn binomial(n: u64, k: i64) -> BigInt {
    if k < 0 || k as u64 > n {
        return BigInt::zero();
    }
    let k = (k as u64).min(n - k as u64);
    let mut acc = BigInt::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Exact power of two as a big integer.
pub fn pow2(e: u64) -> BigInt {
    BigInt::one() << e
}

/// `⌊log2 n⌋` for `n ≥ 1`.
pub fn floor_log2(n: u64) -> u32 {
    63 - n.leading_zeros()
}

/// An element `u + vω` of `Z[ω]`, `ω² = ω − 2`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct QuadInt {
    pub u: BigInt,
    pub v: BigInt,
}

impl QuadInt {
    pub fn new(u: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        QuadInt {
            u: u.into(),
            v: v.into(),
        }
    }

    pub fn zero() -> Self {
        QuadInt::new(0, 0)
    }

    pub fn one() -> Self {
        QuadInt::new(1, 0)
    }

    /// `ω = (1 − √−7)/2`.
    pub fn omega() -> Self {
        QuadInt::new(0, 1)
    }

    /// `ω̄ = 1 − ω = (1 + √−7)/2`.
    pub fn omega_bar() -> Self {
        QuadInt::new(1, -1)
    }

    pub fn from_int(n: impl Into<BigInt>) -> Self {
        QuadInt::new(n, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    /// The rational integer `u` when `v = 0`.
    pub fn as_integer(&self) -> Option<&BigInt> {
        self.v.is_zero().then_some(&self.u)
    }

    /// Galois conjugate: `u + vω ↦ (u + v) − vω`.
    pub fn conj(&self) -> Self {
        QuadInt {
            u: &self.u + &self.v,
            v: -&self.v,
        }
    }

    /// `N(u + vω) = u² + uv + 2v²`.
    pub fn norm(&self) -> BigInt {
        &self.u * &self.u + &self.u * &self.v + ((&self.v * &self.v) << 1)
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = QuadInt::one();
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

    /// Exact quotient `self / d`, or `None` when `d` does not divide `self`
    /// in `Z[ω]`.
    pub fn div_exact(&self, d: &QuadInt) -> Option<QuadInt> {
        let n = d.norm();
        if n.is_zero() {
            return None;
        }
        let num = self * &d.conj();
        let (qu, ru) = num.u.div_rem(&n);
        let (qv, rv) = num.v.div_rem(&n);
        (ru.is_zero() && rv.is_zero()).then_some(QuadInt { u: qu, v: qv })
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.u.is_zero(), self.v.is_zero()) {
            (_, true) => write!(f, "{}", self.u),
            (true, false) => write!(f, "{}ω", self.v),
            (false, false) if self.v.is_negative() => write!(f, "{} - {}ω", self.u, -&self.v),
            (false, false) => write!(f, "{} + {}ω", self.u, self.v),
        }
    }
}

impl<'a> Add<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: &QuadInt) -> QuadInt {
        QuadInt {
            u: &self.u + &rhs.u,
            v: &self.v + &rhs.v,
        }
    }
}

impl<'a> Sub<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: &QuadInt) -> QuadInt {
        QuadInt {
            u: &self.u - &rhs.u,
            v: &self.v - &rhs.v,
        }
    }
}

impl<'a> Mul<&'a QuadInt> for &'a QuadInt {
    type Output = QuadInt;
    // (a + bω)(c + dω) = (ac − 2bd) + (ad + bc + bd)ω
    fn mul(self, rhs: &QuadInt) -> QuadInt {
        let bd = &self.v * &rhs.v;
        QuadInt {
            u: &self.u * &rhs.u - (&bd << 1),
            v: &self.u * &rhs.v + &self.v * &rhs.u + bd,
        }
    }
}

impl Add for QuadInt {
    type Output = QuadInt;
    fn add(self, rhs: QuadInt) -> QuadInt {
        &self + &rhs
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;
    fn sub(self, rhs: QuadInt) -> QuadInt {
        &self - &rhs
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;
    fn mul(self, rhs: QuadInt) -> QuadInt {
        &self * &rhs
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;
    fn neg(self) -> QuadInt {
        QuadInt {
            u: -self.u,
            v: -self.v,
        }
    }
}
