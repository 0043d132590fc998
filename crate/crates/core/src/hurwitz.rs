//! Hurwitz class numbers.
//!
//! `H(n)` counts `SL2(Z)`-classes of positive definite binary quadratic forms
//! `ax² + bxy + cy²` of discriminant `b² − 4ac = −n`, imprimitive forms
//! included. Classes of multiples of `x² + y²` count `1/2` and classes of
//! multiples of `x² + xy + y²` count `1/3`. `H(0) = −1/12` and `H(n) = 0`
//! for `n < 0`.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;

/// A reduced form `(a, b, c)`: `|b| ≤ a ≤ c`, and `b ≥ 0` when `|b| = a` or
/// `a = c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ReducedForm {
    pub a: i64,
    pub b: i64,
    pub c: i64,
}

/// Weight of a class in `H(n)`, stored as twelfths.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FormWeight {
    Full,
    /// Multiple of `x² + y²`.
    Half,
    /// Multiple of `x² + xy + y²`.
    Third,
}

impl FormWeight {
    pub fn twelfths(self) -> i64 {
        match self {
            FormWeight::Full => 12,
            FormWeight::Half => 6,
            FormWeight::Third => 4,
        }
    }

    pub fn as_rational(self) -> BigRational {
        BigRational::new(self.twelfths().into(), 12.into())
    }
}

impl ReducedForm {
    pub fn discriminant(&self) -> i64 {
        self.b * self.b - 4 * self.a * self.c
    }

    pub fn weight(&self) -> FormWeight {
        if self.b == 0 && self.a == self.c {
            FormWeight::Half
        } else if self.a == self.b && self.b == self.c {
            FormWeight::Third
        } else {
            FormWeight::Full
        }
    }
}

/// All reduced forms of discriminant `−n`, ordered by `(a, b)`.
///
/// Empty for `n ≤ 0` and for `n ≡ 1, 2 (mod 4)`.
pub fn reduced_forms(n: i64) -> Vec<ReducedForm> {
    let mut forms = Vec::new();
    if n <= 0 || matches!(n.rem_euclid(4), 1 | 2) {
        return forms;
    }
    // 3a² ≤ 4ac − b² = n
    let mut a = 1i64;
    while 3 * a * a <= n {
        // b ≡ n (mod 2)
        let mut b = -a + ((n - (-a)).rem_euclid(2));
        while b <= a {
            let num = b * b + n;
            if num % (4 * a) == 0 {
                let c = num / (4 * a);
                let boundary = b.abs() == a || a == c;
                if c >= a && !(b < 0 && boundary) {
                    forms.push(ReducedForm { a, b, c });
                }
            }
            b += 2;
        }
        a += 1;
    }
    forms
}

/// `12·H(n)`, always an integer.
pub fn hurwitz_twelfths(n: i64) -> i64 {
    match n {
        0 => -1,
        n if n < 0 => 0,
        n => reduced_forms(n).iter().map(|f| f.weight().twelfths()).sum(),
    }
}

/// The Hurwitz class number `H(n)`.
pub fn hurwitz(n: i64) -> BigRational {
    BigRational::new(BigInt::from(hurwitz_twelfths(n)), BigInt::from(12))
}

/// `H(n)` together with the weighted forms it was assembled from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HurwitzValue {
    pub n: u64,
    pub value: BigRational,
    pub forms: Vec<(ReducedForm, FormWeight)>,
}

impl HurwitzValue {
    pub fn compute(n: u64) -> Self {
        let forms: Vec<_> = reduced_forms(n as i64)
            .into_iter()
            .map(|f| (f, f.weight()))
            .collect();
        HurwitzValue {
            n,
            value: hurwitz(n as i64),
            forms,
        }
    }
}

/// `H(0), H(1), …, H(max)` in order, computed lazily.
pub fn hurwitz_table(max: u64) -> impl Iterator<Item = HurwitzValue> {
    (0..=max).map(HurwitzValue::compute)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::{One, Zero};

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn named_values() {
        assert_eq!(hurwitz(3), q(1, 3));
        assert_eq!(hurwitz(23), q(3, 1));
        assert_eq!(hurwitz(0), q(-1, 12));
        assert_eq!(hurwitz(5), BigRational::zero());
        assert_eq!(hurwitz(12), q(4, 3));
        assert_eq!(hurwitz(-4), BigRational::zero());
        assert_eq!(hurwitz(4), q(1, 2));
    }

    #[test]
    fn twelve_has_an_imprimitive_third() {
        let forms = reduced_forms(12);
        assert_eq!(
            forms,
            [
                ReducedForm { a: 1, b: 0, c: 3 },
                ReducedForm { a: 2, b: 2, c: 2 }
            ]
        );
        assert_eq!(forms[1].weight(), FormWeight::Third);
    }

    #[test]
    fn small_tables() {
        let t: Vec<_> = hurwitz_table(0).map(|h| h.value).collect();
        assert_eq!(t, [q(-1, 12)]);
        let t: Vec<_> = hurwitz_table(2).map(|h| h.value).collect();
        assert_eq!(t, [q(-1, 12), BigRational::zero(), BigRational::zero()]);
    }

    #[test]
    fn forms_are_reduced_and_bounded() {
        for n in 1..=3000i64 {
            for f in reduced_forms(n) {
                assert_eq!(f.discriminant(), -n);
                assert!(f.b.abs() <= f.a && f.a <= f.c);
                assert!(3 * f.a * f.a <= n);
                if f.b.abs() == f.a || f.a == f.c {
                    assert!(f.b >= 0);
                }
            }
        }
    }

    #[test]
    fn vanishes_on_one_and_two_mod_four() {
        for n in 1..=2000i64 {
            if matches!(n % 4, 1 | 2) {
                assert!(reduced_forms(n).is_empty());
            } else {
                assert!(hurwitz_twelfths(n) > 0, "H({n}) should be positive");
            }
        }
    }

    /// Class numbers of a few fundamental discriminants, where `H(n) = h(−n)`
    /// up to the unit weight.
    #[test]
    fn fundamental_discriminants() {
        for (n, h) in [
            (20, 2),
            (23, 3),
            (47, 5),
            (71, 7),
            (163, 1),
            (84, 4),
            (104, 6),
        ] {
            assert_eq!(hurwitz(n), q(h, 1), "n = {n}");
        }
        // 27 = 3·3², so the form 3x² + 3xy + 3y² contributes a third
        assert_eq!(hurwitz(27), q(4, 3));
        assert_eq!(hurwitz(3) * q(3, 1), BigRational::one());
    }
}
