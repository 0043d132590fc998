//! Traces of Hecke operators on level-one cusp forms.
//!
//! Three independent routes to `Tr T2(2k)`:
//!
//! * [`trace_es`]: the Eichler–Selberg trace formula (general `T_n`), built
//!   on [`crate::hurwitz`] and the coefficients `P_{2k}(t, n)`;
//! * [`trace_comb`]: the binomial-sum specialisation at `n = 2`;
//! * [`trace_rec`]: `−a_{k−1} − 1 + ε·2^{k−1}` in terms of the sequence
//!   `a_0 = 1, a_1 = −1, a_n = −3a_{n−1} − 4a_{n−2}`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::exactmath::{pow2, QuadInt};
use crate::hurwitz::hurwitz_twelfths;
use crate::{Error, Result};

/// `Tr T_n` on `S_weight(SL2(Z))`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TracePoint {
    pub weight: u64,
    pub hecke_index: u64,
    pub value: BigInt,
}

/// Streams `a_0, a_1, a_2, …`.
#[derive(Clone, Debug)]
pub struct ASequence {
    cur: BigInt,
    next: BigInt,
}

impl ASequence {
    pub fn new() -> Self {
        ASequence {
            cur: BigInt::one(),
            next: -BigInt::one(),
        }
    }
}

impl Default for ASequence {
    fn default() -> Self {
        Self::new()
    }
}

impl Iterator for ASequence {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        // a_{n+2} = −3a_{n+1} − 4a_n
        let after = -(&self.next * 3u32) - (&self.cur << 2);
        let out = core::mem::replace(&mut self.cur, core::mem::replace(&mut self.next, after));
        Some(out)
    }
}

/// `a_n` by the linear recurrence.
pub fn a_seq(n: u64) -> BigInt {
    ASequence::new().nth(n as usize).expect("infinite sequence")
}

/// `a_n = (ω^{2n+1} − ω̄^{2n+1}) / (ω − ω̄)`, evaluated exactly in `Z[ω]`.
pub fn a_seq_closed(n: u64) -> Result<BigInt> {
    let w = QuadInt::omega();
    let wb = QuadInt::omega_bar();
    let e = 2 * n + 1;
    let diff = &w.pow(e) - &wb.pow(e);
    let q = diff
        .div_exact(&(&w - &wb))
        .ok_or(Error::NotDivisible("a_seq_closed"))?;
    q.as_integer().cloned().ok_or(Error::NotDivisible(
        "a_seq_closed: quotient is not rational",
    ))
}

/// The sign `ε ∈ {0, ±1}` attached to `k` in the recurrence formula for the
/// trace: `+1` for `k ≡ 0`, `−1` for `k ≡ 1`, `0` for `k ≡ 2, 3 (mod 4)`.
pub fn epsilon(k: u64) -> i32 {
    match k % 4 {
        0 => 1,
        1 => -1,
        _ => 0,
    }
}

/// `−a − 1 + ε(k)·2^{k−1}`, where `a = a_{k−1}`.
pub fn trace_from_a(k: u64, a_prev: &BigInt) -> BigInt {
    let base = -a_prev - 1;
    match epsilon(k) {
        1 => base + pow2(k - 1),
        -1 => base - pow2(k - 1),
        _ => base,
    }
}

fn check_k(k: u64) -> Result<()> {
    if k < 2 {
        return Err(Error::OutOfDomain {
            name: "k",
            value: k as i64,
            min: 2,
        });
    }
    Ok(())
}

/// `Tr T2(2k)` through the sequence `a_n`.
pub fn trace_rec(k: u64) -> Result<BigInt> {
    check_k(k)?;
    Ok(trace_from_a(k, &a_seq(k - 1)))
}

/// Streams `(k, Tr T2(2k))` for `k = 2, 3, …` via the recurrence.
pub fn trace_rec_iter() -> impl Iterator<Item = (u64, BigInt)> {
    ASequence::new()
        .enumerate()
        .map(|(i, a)| (i as u64 + 1, a))
        .skip(1)
        .map(|(k, a)| {
            let t = trace_from_a(k, &a);
            (k, t)
        })
}

/// `C(N − j, j)` for `j = 0, 1, …, ⌊N/2⌋`, each from its predecessor by one
/// exact division.
pub struct DiagonalBinomials {
    top: u64,
    j: u64,
    cur: BigInt,
}

impl DiagonalBinomials {
    pub fn new(top: u64) -> Self {
        DiagonalBinomials {
            top,
            j: 0,
            cur: BigInt::one(),
        }
    }
}

impl Iterator for DiagonalBinomials {
    type Item = BigInt;

    fn next(&mut self) -> Option<BigInt> {
        if 2 * self.j > self.top {
            return None;
        }
        let out = self.cur.clone();
        self.j += 1;
        let (n, j) = (self.top, self.j);
        if 2 * j <= n {
            // C(n−j, j) = C(n−j+1, j−1)·(n−2j+2)(n−2j+1) / (j(n−j+1))
            self.cur *= (n - 2 * j + 2) * (n - 2 * j + 1);
            self.cur /= j * (n - j + 1);
        }
        Some(out)
    }
}

/// `[x^m] (1 − t x + n x²)^{−1}` via `P_m = t P_{m−1} − n P_{m−2}`.
pub fn p_coeff(m: u64, t: &BigInt, n: &BigInt) -> BigInt {
    let mut prev = BigInt::zero();
    let mut cur = BigInt::one();
    for _ in 0..m {
        let next = t * &cur - n * &prev;
        prev = core::mem::replace(&mut cur, next);
    }
    cur
}

/// `P_{2k}(t, n) = Σ_{j<k} (−1)^j C(2k−2−j, j) n^j t^{2k−2−2j}`.
pub fn p_closed(k: u64, t: &BigInt, n: &BigInt) -> Result<BigInt> {
    check_k(k)?;
    let top = 2 * k - 2;
    let mut sum = BigInt::zero();
    let mut n_pow = BigInt::one();
    let t_sq = t * t;
    // t powers descend, so collect them first: t^{2k−2−2j} for j = 0..k
    let mut t_pows = Vec::with_capacity(k as usize);
    let mut tp = BigInt::one();
    for _ in 0..k {
        t_pows.push(tp.clone());
        tp *= &t_sq;
    }
    for (j, c) in DiagonalBinomials::new(top).enumerate() {
        let term = c * &n_pow * &t_pows[k as usize - 1 - j];
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
        n_pow *= n;
    }
    Ok(sum)
}

/// `Tr T_n` on `S_weight(SL2(Z))` by the Eichler–Selberg trace formula:
///
/// `−½ Σ_{t² ≤ 4n} P_{2k}(t, n) H(4n − t²) − ½ Σ_{dd' = n} min(d, d')^{2k−1}`.
pub fn trace_es(weight: u64, n: u64) -> Result<BigInt> {
    if weight < 4 || weight % 2 == 1 {
        return Err(Error::InvalidWeight(weight));
    }
    if n == 0 {
        return Err(Error::OutOfDomain {
            name: "n",
            value: 0,
            min: 1,
        });
    }
    let k = weight / 2;
    let m = 2 * k - 2;
    let nb = BigInt::from(n);
    // Everything is scaled by 24: 12·H is integral and the formula halves it.
    let mut scaled = BigInt::zero();
    let mut t = 0u64;
    while t * t <= 4 * n {
        let h12 = hurwitz_twelfths((4 * n - t * t) as i64);
        if h12 != 0 {
            let p = p_coeff(m, &BigInt::from(t), &nb);
            // P is even in t
            let mult = if t == 0 { 1 } else { 2 };
            scaled -= p * (h12 * mult);
        }
        t += 1;
    }
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            let mult = if d * d == n { 1u32 } else { 2 };
            scaled -= BigInt::from(d).pow(2 * k as u32 - 1) * (12 * mult);
        }
        d += 1;
    }
    let trace = BigRational::new(scaled, BigInt::from(24));
    if !trace.is_integer() {
        return Err(Error::NotIntegral("trace_es"));
    }
    Ok(trace.to_integer())
}

/// `Tr T2(2k) = (−2)^{k−2} − 1 − Σ_{j<k} (−1)^j C(2k−2−j, j) 2^j (1 + 2^{2k−3−2j})`.
///
/// The last summand carries `2^{−1}`, so the sum is accumulated over the
/// common denominator 2 and checked for integrality.
pub fn trace_comb(k: u64) -> Result<BigInt> {
    check_k(k)?;
    let top = 2 * k - 2;
    // doubled: 2(−2)^{k−2} − 2 − Σ (−1)^j C 2^j (2 + 2^{2k−2−2j})
    let mut doubled = pow2(k - 1);
    if k % 2 == 1 {
        doubled = -doubled;
    }
    doubled -= 2;
    for (j, c) in DiagonalBinomials::new(top).enumerate() {
        let j = j as u64;
        let inner = BigInt::from(2) + pow2(2 * k - 2 - 2 * j);
        let term = (c << j) * inner;
        if j % 2 == 0 {
            doubled -= term;
        } else {
            doubled += term;
        }
    }
    let trace = BigRational::new(doubled, BigInt::from(2));
    if !trace.is_integer() {
        return Err(Error::NotIntegral("trace_comb"));
    }
    Ok(trace.to_integer())
}

/// `Σ_{j≤n} (−1)^j C(2n−j, j) 2^j`, which equals `a_n`.
pub fn identity_parts_i(n: u64) -> BigInt {
    let mut sum = BigInt::zero();
    for (j, c) in DiagonalBinomials::new(2 * n).enumerate() {
        let term = c << j;
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// `Σ_{j≤n} (−1)^j C(2n−j, j) 2^{n−j}`, which equals `(−1)^{⌊n/2⌋}`.
pub fn identity_parts_ii(n: u64) -> BigInt {
    let mut sum = BigInt::zero();
    for (j, c) in DiagonalBinomials::new(2 * n).enumerate() {
        let term = c << (n - j as u64);
        if j % 2 == 0 {
            sum += term;
        } else {
            sum -= term;
        }
    }
    sum
}

/// Coefficients of `(1 + 3x + 4x²)·Σ_{n<len} a_n xⁿ` up to degree `len − 1`.
/// For the true sequence this is `1 + 2x`.
pub fn denominator_product(a: &[BigInt]) -> Vec<BigInt> {
    (0..a.len())
        .map(|d| {
            let mut c = a[d].clone();
            if d >= 1 {
                c += &a[d - 1] * 3u32;
            }
            if d >= 2 {
                c += &a[d - 2] * 4u32;
            }
            c
        })
        .collect()
}

/// Parity helper used by tests and the valuation suite.
pub fn is_odd(x: &BigInt) -> bool {
    x.abs().is_odd()
}
