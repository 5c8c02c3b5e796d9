//! Exact coefficient arithmetic.
//!
//! Everything downstream is generic over [`Field`]. The symbolic engine
//! uses [`QAlpha`] (the field ℚ(α)); the fast path specializes α to a
//! rational number and runs over [`BigRational`].

mod poly;
mod qalpha;

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
pub use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

pub use poly::RatPoly;
pub use qalpha::{is_natural_polynomial, render_b, QAlpha};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CoeffError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at alpha = {0}")]
    Pole(String),
    #[error("not a polynomial in b: {0}")]
    NotPolynomialInB(String),
}

/// A coefficient field for the symmetric-function engine.
pub trait Field:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Neg<Output = Self>
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + for<'a> AddAssign<&'a Self>
    + for<'a> SubAssign<&'a Self>
    + for<'a> MulAssign<&'a Self>
{
    fn from_i64(n: i64) -> Self;

    fn from_rational(r: &BigRational) -> Self;

    fn inv(&self) -> Result<Self, CoeffError>;

    fn mul_ref(&self, rhs: &Self) -> Self {
        let mut t = self.clone();
        t *= rhs;
        t
    }

    fn div_ref(&self, rhs: &Self) -> Result<Self, CoeffError> {
        Ok(self.mul_ref(&rhs.inv()?))
    }

    /// A nonzero `L` such that every `L · v` has trivial denominator, so
    /// that long sums of such products need no intermediate normalization.
    fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Self>) -> Self {
        let _ = values.into_iter();
        Self::one()
    }

    /// Divide every value by a common factor, keeping trivial denominators
    /// trivial; used to stop coefficient growth in long eliminations. Only
    /// the ratios between the values are meaningful afterwards.
    fn remove_content(values: &mut [Self]) {
        let _ = values;
    }

    fn pow_u(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc *= self;
        }
        acc
    }
}

impl Field for QAlpha {
    fn from_i64(n: i64) -> Self {
        QAlpha::from_int(n)
    }

    fn from_rational(r: &BigRational) -> Self {
        QAlpha::from_ratio(r.clone())
    }

    fn inv(&self) -> Result<Self, CoeffError> {
        QAlpha::inv(self)
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn div_ref(&self, rhs: &Self) -> Result<Self, CoeffError> {
        self.checked_div(rhs)
    }

    fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Self>) -> Self {
        let mut l = RatPoly::one();
        for v in values {
            let d = v.denominator();
            if d.is_one() || l.div_rem(d).1.is_zero() {
                continue;
            }
            let g = l.gcd(d);
            l = &l * &d.div_exact(&g);
        }
        QAlpha::from_poly(l)
    }

    fn remove_content(values: &mut [Self]) {
        if values.iter().any(|v| !v.denominator().is_one()) {
            return;
        }
        let mut g = RatPoly::zero();
        let mut num = BigInt::zero();
        let mut den = BigInt::one();
        for v in values.iter() {
            let p = v.numerator();
            if !g.is_one() {
                g = g.gcd(p);
            }
            for c in p.coeffs() {
                num = num_integer::Integer::gcd(&num, c.numer());
                den = num_integer::Integer::lcm(&den, c.denom());
            }
        }
        if num.is_zero() {
            return;
        }
        let s = BigRational::new(den, num);
        for v in values.iter_mut() {
            let p = v.numerator();
            let p = if g.is_one() { p.clone() } else { p.div_exact(&g) };
            *v = QAlpha::from_poly(p.scale(&s));
        }
    }
}

impl Field for BigRational {
    fn from_i64(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }

    fn from_rational(r: &BigRational) -> Self {
        r.clone()
    }

    fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            Err(CoeffError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }

    fn mul_ref(&self, rhs: &Self) -> Self {
        self * rhs
    }

    fn common_denominator<'a>(values: impl IntoIterator<Item = &'a Self>) -> Self {
        let l = values
            .into_iter()
            .fold(BigInt::one(), |acc, v| num_integer::lcm(acc, v.denom().clone()));
        BigRational::from_integer(l)
    }
}

/// Small-integer rational shorthand.
pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Parse `"p/q"` or `"p"` into a rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    s.trim().parse::<BigRational>().ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn arb_qalpha() -> impl Strategy<Value = QAlpha> {
        (
            prop::collection::vec(-4i64..=4, 0..4),
            prop::collection::vec(-3i64..=3, 1..3),
        )
            .prop_filter_map("nonzero denominator", |(n, d)| {
                QAlpha::new(RatPoly::from_ints(&n), RatPoly::from_ints(&d)).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn field_axioms(a in arb_qalpha(), b in arb_qalpha(), c in arb_qalpha()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            if !a.is_zero() {
                prop_assert_eq!(&a * &a.inv().unwrap(), QAlpha::one());
            }
        }

        #[test]
        fn eval_is_a_ring_homomorphism(a in arb_qalpha(), b in arb_qalpha(), n in -5i64..5, d in 1i64..4) {
            let r = rat(n, d);
            if let (Ok(x), Ok(y)) = (a.eval(&r), b.eval(&r)) {
                prop_assert_eq!((&a * &b).eval(&r).unwrap(), &x * &y);
                prop_assert_eq!((&a + &b).eval(&r).unwrap(), &x + &y);
            }
        }

        #[test]
        fn b_substitution_round_trips(c in prop::collection::vec(-6i64..=6, 0..6)) {
            let a = QAlpha::from_poly(RatPoly::from_ints(&c));
            let b = a.to_b_polynomial().unwrap();
            prop_assert_eq!(QAlpha::from_b_polynomial(&b), a);
        }
    }
}
