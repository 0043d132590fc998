//! Exhaustive collision searches over `a_n`, `a_n ∓ 2ⁿ` and `Tr T2(2k)`.
//!
//! Values are streamed modulo a few word-size primes; the residue tuples
//! (fingerprints) are sorted and every run of equal fingerprints is
//! re-checked with exact integers from a fresh recurrence. Equal integers
//! always have equal fingerprints, so no collision can be missed; a
//! fingerprint match that fails the exact check is counted as a false
//! positive and otherwise ignored.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::ToPrimitive;

use crate::exactmath::pow2;
use crate::trace::{epsilon, trace_from_a, ASequence};
use crate::{Error, Result};

/// Three primes just below `2^62`: `2^62 − 57`, `2^62 − 87`, `2^62 − 117`.
pub const DEFAULT_PRIMES: [u64; 3] = [
    4_611_686_018_427_387_847,
    4_611_686_018_427_387_817,
    4_611_686_018_427_387_787,
];

/// The moduli a fingerprint is taken against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FingerprintBasis {
    primes: Vec<u64>,
}

impl FingerprintBasis {
    /// Requires at least two distinct moduli in `(2^32, 2^63)`. Primality is
    /// not checked here.
    pub fn new(primes: Vec<u64>) -> Result<Self> {
        if primes.len() < 2 {
            return Err(Error::Basis("at least two primes are required"));
        }
        if primes.iter().any(|&p| p <= 1 << 32 || p >= 1 << 63) {
            return Err(Error::Basis(
                "every prime must lie strictly between 2^32 and 2^63",
            ));
        }
        let mut sorted = primes.clone();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != primes.len() {
            return Err(Error::Basis("primes must be distinct"));
        }
        Ok(FingerprintBasis { primes })
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn fingerprint(&self, x: &BigInt) -> Fingerprint {
        Fingerprint(self.primes.iter().map(|&p| residue(x, p)).collect())
    }
}

impl Default for FingerprintBasis {
    fn default() -> Self {
        FingerprintBasis {
            primes: DEFAULT_PRIMES.to_vec(),
        }
    }
}

/// Residues of one integer modulo each prime of a basis.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Fingerprint(pub Vec<u64>);

/// `x mod p` in `[0, p)`.
pub fn residue(x: &BigInt, p: u64) -> u64 {
    let r = x % BigInt::from(p);
    let r = if r.sign() == num_bigint::Sign::Minus {
        r + p
    } else {
        r
    };
    r.to_u64().expect("residue fits in u64")
}

/// Which integer sequence is searched.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum SequenceKind {
    /// `a_n`, `n ≥ 0`.
    A,
    /// `a_n − 2ⁿ` (the `ε = +1` case), `n ≥ 1`.
    AMinus2n,
    /// `a_n + 2ⁿ` (the `ε = −1` case), `n ≥ 1`.
    APlus2n,
    /// `Tr T2(2k)`, `k ≥ 6`.
    Trace,
}

impl SequenceKind {
    pub fn id(self) -> &'static str {
        match self {
            SequenceKind::A => "a",
            SequenceKind::AMinus2n => "a_minus_2n",
            SequenceKind::APlus2n => "a_plus_2n",
            SequenceKind::Trace => "trace",
        }
    }

    /// The sequence `a_n − ε·2ⁿ`.
    pub fn shifted(eps: i32) -> Result<Self> {
        match eps {
            1 => Ok(SequenceKind::AMinus2n),
            -1 => Ok(SequenceKind::APlus2n),
            _ => Err(Error::OutOfDomain {
                name: "eps",
                value: eps as i64,
                min: -1,
            }),
        }
    }

    pub fn first_index(self) -> u64 {
        match self {
            SequenceKind::A => 0,
            SequenceKind::AMinus2n | SequenceKind::APlus2n => 1,
            SequenceKind::Trace => 6,
        }
    }

    /// Index into `a_n` at which element `index` is read.
    fn a_index(self, index: u64) -> u64 {
        match self {
            SequenceKind::Trace => index - 1,
            _ => index,
        }
    }

    /// Element `index` from `a = a_{a_index}` and `two = 2^{a_index}`,
    /// generic over the ring the caller works in.
    fn combine<T>(self, index: u64, a: T, two: T, ops: &impl RingOps<T>) -> T {
        match self {
            SequenceKind::A => a,
            SequenceKind::AMinus2n => ops.sub(a, two),
            SequenceKind::APlus2n => ops.add(a, two),
            SequenceKind::Trace => {
                let base = ops.sub(ops.neg(a), ops.one());
                match epsilon(index) {
                    1 => ops.add(base, two),
                    -1 => ops.sub(base, two),
                    _ => base,
                }
            }
        }
    }
}

trait RingOps<T> {
    fn add(&self, a: T, b: T) -> T;
    fn sub(&self, a: T, b: T) -> T;
    fn neg(&self, a: T) -> T;
    fn one(&self) -> T;
}

struct ModP(u64);

impl RingOps<u64> for ModP {
    fn add(&self, a: u64, b: u64) -> u64 {
        ((a as u128 + b as u128) % self.0 as u128) as u64
    }
    fn sub(&self, a: u64, b: u64) -> u64 {
        self.add(a, self.0 - b % self.0)
    }
    fn neg(&self, a: u64) -> u64 {
        (self.0 - a % self.0) % self.0
    }
    fn one(&self) -> u64 {
        1
    }
}

/// Streams `(index, value mod p)` for `kind`, from its first index up to
/// `max_index`, using `a_n = −3a_{n−1} − 4a_{n−2}` and `2ⁿ` modulo `p`.
pub fn residues(kind: SequenceKind, max_index: u64, p: u64) -> impl Iterator<Item = (u64, u64)> {
    let ring = ModP(p);
    let mul = move |x: u64, c: u64| ((x as u128 * c as u128) % p as u128) as u64;
    let mut a_cur = 1u64;
    let mut a_next = p - 1;
    let mut two = 1u64;
    let mut n = 0u64;
    let first = kind.first_index();
    core::iter::from_fn(move || {
        let out = (n, a_cur, two);
        let after = ring.sub(ring.neg(mul(a_next, 3)), mul(a_cur, 4));
        a_cur = a_next;
        a_next = after;
        two = mul(two, 2);
        n += 1;
        Some(out)
    })
    .map(move |(n, a, two)| {
        let index = if kind == SequenceKind::Trace {
            n + 1
        } else {
            n
        };
        (index, a, two)
    })
    .skip_while(move |&(index, _, _)| index < first)
    .take_while(move |&(index, _, _)| index <= max_index)
    .map(move |(index, a, two)| (index, kind.combine(index, a, two, &ModP(p))))
}

struct Exact;

impl RingOps<BigInt> for Exact {
    fn add(&self, a: BigInt, b: BigInt) -> BigInt {
        a + b
    }
    fn sub(&self, a: BigInt, b: BigInt) -> BigInt {
        a - b
    }
    fn neg(&self, a: BigInt) -> BigInt {
        -a
    }
    fn one(&self) -> BigInt {
        BigInt::from(1)
    }
}

/// Exact element `index` of `kind`, from a fresh run of the recurrence.
pub fn exact_value(kind: SequenceKind, index: u64) -> BigInt {
    exact_values(kind, &[index]).pop().expect("one value")
}

/// Exact elements at the given indices (in that order), from one fresh run
/// of the recurrence up to the largest of them.
pub fn exact_values(kind: SequenceKind, indices: &[u64]) -> Vec<BigInt> {
    let Some(&top) = indices.iter().max() else {
        return Vec::new();
    };
    let top_a = kind.a_index(top);
    let mut wanted: Vec<(u64, usize)> = indices
        .iter()
        .enumerate()
        .map(|(i, &idx)| (kind.a_index(idx), i))
        .collect();
    wanted.sort_unstable();
    let mut out = alloc::vec![BigInt::from(0); indices.len()];
    let mut w = wanted.iter().peekable();
    for (n, a) in ASequence::new().enumerate().take(top_a as usize + 1) {
        while let Some(&&(an, slot)) = w.peek() {
            if an != n as u64 {
                break;
            }
            let idx = indices[slot];
            out[slot] = match kind {
                SequenceKind::Trace => trace_from_a(idx, &a),
                _ => kind.combine(idx, a.clone(), pow2(an), &Exact),
            };
            w.next();
        }
    }
    out
}

/// An exactly confirmed repeated value: element `m` equals element `n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Collision {
    pub m: u64,
    pub n: u64,
    pub value: BigInt,
}

/// Outcome of one search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionReport {
    pub sequence_id: &'static str,
    pub range_min: u64,
    pub range_max: u64,
    pub primes: Vec<u64>,
    /// Confirmed collisions, sorted by `(m, n)`.
    pub collisions: Vec<Collision>,
    /// Fingerprint-equal pairs that differ as integers.
    pub fingerprint_false_positives: u64,
    /// Filled in by callers that time the search; always 0 here.
    pub runtime_ms: u64,
}

/// All pairs `m < n` in `[first_index, max_index]` with equal values of
/// `kind`.
pub fn find_repeats(
    kind: SequenceKind,
    max_index: u64,
    basis: &FingerprintBasis,
) -> Result<CollisionReport> {
    if basis.primes().len() < 2 {
        return Err(Error::Basis("at least two primes are required"));
    }
    let first = kind.first_index();
    let min_max = first.max(1);
    if max_index < min_max {
        return Err(Error::OutOfDomain {
            name: "max_index",
            value: max_index as i64,
            min: min_max as i64,
        });
    }
    let width = basis.primes().len();
    let count = (max_index - first + 1) as usize;
    let mut table = alloc::vec![0u64; count * width];
    for (col, &p) in basis.primes().iter().enumerate() {
        for (index, r) in residues(kind, max_index, p) {
            table[(index - first) as usize * width + col] = r;
        }
    }
    let row = |i: u32| &table[i as usize * width..(i as usize + 1) * width];
    let mut order: Vec<u32> = (0..count as u32).collect();
    order.sort_unstable_by(|&x, &y| row(x).cmp(row(y)).then(x.cmp(&y)));

    let mut collisions = Vec::new();
    let mut false_positives = 0u64;
    let mut start = 0;
    while start < order.len() {
        let mut end = start + 1;
        while end < order.len() && row(order[end]) == row(order[start]) {
            end += 1;
        }
        if end - start > 1 {
            let indices: Vec<u64> = order[start..end]
                .iter()
                .map(|&i| i as u64 + first)
                .collect();
            let values = exact_values(kind, &indices);
            for i in 0..indices.len() {
                for j in i + 1..indices.len() {
                    if values[i] == values[j] {
                        let (m, n) = (indices[i].min(indices[j]), indices[i].max(indices[j]));
                        collisions.push(Collision {
                            m,
                            n,
                            value: values[i].clone(),
                        });
                    } else {
                        false_positives += 1;
                    }
                }
            }
        }
        start = end;
    }
    collisions.sort_unstable_by_key(|c| (c.m, c.n));
    Ok(CollisionReport {
        sequence_id: kind.id(),
        range_min: first,
        range_max: max_index,
        primes: basis.primes().to_vec(),
        collisions,
        fingerprint_false_positives: false_positives,
        runtime_ms: 0,
    })
}

/// Repeated values of `a_n` for `0 ≤ n ≤ max_index`.
pub fn find_repeats_a(max_index: u64, basis: &FingerprintBasis) -> Result<CollisionReport> {
    find_repeats(SequenceKind::A, max_index, basis)
}

/// Repeated values of `a_n − ε 2ⁿ` for `1 ≤ n ≤ max_index`.
pub fn find_repeats_eps(
    max_index: u64,
    eps: i32,
    basis: &FingerprintBasis,
) -> Result<CollisionReport> {
    find_repeats(SequenceKind::shifted(eps)?, max_index, basis)
}

/// Repeated values of `Tr T2(2k)` for `6 ≤ k ≤ k_max`.
pub fn verify_theorem(k_max: u64, basis: &FingerprintBasis) -> Result<CollisionReport> {
    find_repeats(SequenceKind::Trace, k_max, basis)
}

/// Which logarithmic bound on the smaller index applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReductionCase {
    /// `m ≤ log2(n) + 2`, for `ω^n − ω̄^n = ω^m − ω̄^m`.
    Plain,
    /// `m ≤ 3 + log2(n)`, for `a_n − ε2ⁿ = a_m − ε2^m`.
    Shifted,
}

/// Whether the smaller index of a collision obeys the logarithmic bound
/// that the 2-adic argument forces on it.
pub fn verify_reduction_bound(case: ReductionCase, m: u64, n: u64) -> bool {
    if m < 1 || m >= n {
        return false;
    }
    let log2n = libm::log2(n as f64);
    let bound = match case {
        ReductionCase::Plain => log2n + 2.0,
        ReductionCase::Shifted => log2n + 3.0,
    };
    (m as f64) <= bound
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::trace::{a_seq, trace_es, trace_rec};

    fn pairs(r: &CollisionReport) -> Vec<(u64, u64, i64)> {
        r.collisions
            .iter()
            .map(|c| (c.m, c.n, c.value.to_i64().unwrap()))
            .collect()
    }

    /// Deterministic Miller–Rabin, valid for all 64-bit inputs.
    fn is_prime(n: u64) -> bool {
        let mulmod = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
        let powmod = |mut b: u64, mut e: u64| {
            let mut r = 1u64;
            while e > 0 {
                if e & 1 == 1 {
                    r = mulmod(r, b);
                }
                b = mulmod(b, b);
                e >>= 1;
            }
            r
        };
        if n < 2 {
            return false;
        }
        let (mut d, mut s) = (n - 1, 0);
        while d % 2 == 0 {
            d /= 2;
            s += 1;
        }
        [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]
            .iter()
            .all(|&a| {
                if a % n == 0 {
                    return true;
                }
                let mut x = powmod(a, d);
                if x == 1 || x == n - 1 {
                    return true;
                }
                for _ in 1..s {
                    x = mulmod(x, x);
                    if x == n - 1 {
                        return true;
                    }
                }
                false
            })
    }

    #[test]
    fn default_primes_are_prime() {
        for p in DEFAULT_PRIMES {
            assert!(is_prime(p), "{p}");
            assert!(p > 1 << 32);
        }
        assert!(!is_prime((1u64 << 62) - 1));
    }

    #[test]
    fn basis_validation() {
        assert!(FingerprintBasis::new(alloc::vec![DEFAULT_PRIMES[0]]).is_err());
        assert!(FingerprintBasis::new(alloc::vec![DEFAULT_PRIMES[0], DEFAULT_PRIMES[0]]).is_err());
        assert!(FingerprintBasis::new(alloc::vec![DEFAULT_PRIMES[0], 1_000_003]).is_err());
        assert!(FingerprintBasis::new(DEFAULT_PRIMES[..2].to_vec()).is_ok());
    }

    #[test]
    fn residue_stream_matches_exact() {
        let p = DEFAULT_PRIMES[1];
        for kind in [
            SequenceKind::A,
            SequenceKind::AMinus2n,
            SequenceKind::APlus2n,
            SequenceKind::Trace,
        ] {
            for (index, r) in residues(kind, 150, p) {
                assert_eq!(r, residue(&exact_value(kind, index), p), "{kind:?} {index}");
            }
        }
    }

    #[test]
    fn streamed_trace_agrees_with_eichler_selberg() {
        let p = DEFAULT_PRIMES[0];
        for (k, r) in residues(SequenceKind::Trace, 120, p) {
            assert_eq!(r, residue(&trace_es(2 * k, 2).unwrap(), p));
        }
    }

    #[test]
    fn small_a_search() {
        let basis = FingerprintBasis::default();
        let r = find_repeats_a(10, &basis).unwrap();
        assert_eq!(pairs(&r), [(1, 2, -1), (1, 6, -1), (2, 6, -1)]);
        assert_eq!(r.fingerprint_false_positives, 0);
        assert!(find_repeats_a(1, &basis).unwrap().collisions.is_empty());
        assert!(find_repeats_a(0, &basis).is_err());
    }

    #[test]
    fn small_eps_searches() {
        let basis = FingerprintBasis::default();
        let r = find_repeats_eps(40, -1, &basis).unwrap();
        assert_eq!(pairs(&r), [(5, 9, 55)]);
        assert!(find_repeats_eps(8, -1, &basis)
            .unwrap()
            .collisions
            .is_empty());
        assert!(find_repeats_eps(40, 1, &basis)
            .unwrap()
            .collisions
            .is_empty());
        assert!(find_repeats_eps(40, 0, &basis).is_err());
    }

    #[test]
    fn theorem_small_range() {
        let basis = FingerprintBasis::default();
        assert!(verify_theorem(100, &basis).unwrap().collisions.is_empty());
        assert!(verify_theorem(6, &basis).unwrap().collisions.is_empty());
        assert!(verify_theorem(5, &basis).is_err());
        // brute force over exact values
        let traces: Vec<BigInt> = (6..=100).map(|k| trace_rec(k).unwrap()).collect();
        for i in 0..traces.len() {
            for j in i + 1..traces.len() {
                assert_ne!(traces[i], traces[j]);
            }
        }
        assert!(traces.contains(&BigInt::from(-24)) && traces.contains(&BigInt::from(456)));
    }

    /// Two tiny moduli make fingerprint clashes certain; every clash must be
    /// rejected by the exact check and the true collisions still found.
    #[test]
    fn false_positives_are_filtered() {
        let basis = FingerprintBasis {
            primes: alloc::vec![7, 11],
        };
        let r = find_repeats(SequenceKind::A, 200, &basis).unwrap();
        assert_eq!(pairs(&r), [(1, 2, -1), (1, 6, -1), (2, 6, -1)]);
        assert!(r.fingerprint_false_positives > 0);
    }

    #[test]
    fn reduction_bounds() {
        assert!(verify_reduction_bound(ReductionCase::Shifted, 5, 9));
        assert!(!verify_reduction_bound(ReductionCase::Plain, 100, 200));
        assert!(verify_reduction_bound(ReductionCase::Plain, 1, 2));
        assert!(!verify_reduction_bound(ReductionCase::Plain, 3, 3));
    }

    #[test]
    fn exact_values_in_requested_order() {
        let v = exact_values(SequenceKind::A, &[10, 3, 10, 0]);
        assert_eq!(v, [a_seq(10), a_seq(3), a_seq(10), a_seq(0)]);
        assert_eq!(exact_value(SequenceKind::APlus2n, 5), BigInt::from(55));
        assert_eq!(exact_value(SequenceKind::Trace, 10), BigInt::from(456));
    }
}
