//! Reduced fractions of polynomials in α: the field ℚ(α).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::poly::RatPoly;
use super::CoeffError;

/// An element of ℚ(α) in canonical form: `numerator / denominator` with
/// the denominator monic, the fraction fully reduced, and zero stored as
/// `0 / 1`. Equal field elements therefore have identical representations.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct QAlpha {
    num: RatPoly,
    den: RatPoly,
}

impl QAlpha {
    /// Build `num / den` in canonical form.
    pub fn new(num: RatPoly, den: RatPoly) -> Result<Self, CoeffError> {
        if den.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    /// The indeterminate α.
    pub fn alpha() -> Self {
        QAlpha {
            num: RatPoly::x(),
            den: RatPoly::one(),
        }
    }

    pub fn from_poly(num: RatPoly) -> Self {
        QAlpha {
            num,
            den: RatPoly::one(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_poly(RatPoly::from_ints(&[n]))
    }

    pub fn from_ratio(r: BigRational) -> Self {
        Self::from_poly(RatPoly::constant(r))
    }

    pub fn numerator(&self) -> &RatPoly {
        &self.num
    }

    pub fn denominator(&self) -> &RatPoly {
        &self.den
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// `Some(c)` when the element is the rational constant `c`.
    pub fn as_rational(&self) -> Option<BigRational> {
        (self.num.is_constant() && self.den.is_constant()).then(|| self.num.coeff(0))
    }

    fn reduce(num: RatPoly, den: RatPoly) -> Self {
        if num.is_zero() {
            return QAlpha {
                num,
                den: RatPoly::one(),
            };
        }
        let (num, den) = if den.is_constant() {
            (num, den)
        } else if let Some(k) = den.monic().as_unit_monomial() {
            let v = num.valuation().unwrap_or(0).min(k);
            (num.shift_down(v), den.shift_down(v))
        } else {
            let (quot, rem) = num.div_rem(&den);
            if rem.is_zero() {
                (quot, RatPoly::one())
            } else {
                let g = rem.gcd(&den);
                if g.is_one() {
                    (num, den)
                } else {
                    (num.div_exact(&g), den.div_exact(&g))
                }
            }
        };
        let lc = den.leading().expect("nonzero denominator").clone();
        if lc.is_one() {
            QAlpha { num, den }
        } else {
            let inv = lc.recip();
            QAlpha {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn inv(&self) -> Result<Self, CoeffError> {
        if self.is_zero() {
            return Err(CoeffError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &Self) -> Result<Self, CoeffError> {
        Ok(self * &rhs.inv()?)
    }

    /// Integer power (negative exponents invert).
    pub fn pow(&self, e: i32) -> Result<Self, CoeffError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let mut acc = QAlpha::one();
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        Ok(acc)
    }

    /// Evaluate at α = r.
    pub fn eval(&self, r: &BigRational) -> Result<BigRational, CoeffError> {
        let d = self.den.eval(r);
        if d.is_zero() {
            return Err(CoeffError::Pole(r.to_string()));
        }
        Ok(self.num.eval(r) / d)
    }

    /// Rewrite as a polynomial in `b = α − 1`.
    pub fn to_b_polynomial(&self) -> Result<RatPoly, CoeffError> {
        if !self.den.is_constant() {
            return Err(CoeffError::NotPolynomialInB(self.to_string()));
        }
        let c = self.den.coeff(0);
        Ok(self.num.taylor_shift(&BigRational::one()).scale(&c.recip()))
    }

    /// Inverse of [`QAlpha::to_b_polynomial`]: substitute `b = α − 1`.
    pub fn from_b_polynomial(p: &RatPoly) -> Self {
        Self::from_poly(p.taylor_shift(&-BigRational::one()))
    }

    /// Numerator and denominator rescaled to coprime integer polynomials
    /// with a positive leading denominator coefficient.
    pub fn integral_parts(&self) -> (RatPoly, RatPoly) {
        let l = num_integer::lcm(self.num.denominator_lcm(), self.den.denominator_lcm());
        let scale = BigRational::from_integer(l);
        let (n, d) = (self.num.scale(&scale), self.den.scale(&scale));
        let g = num_integer::gcd(n.integer_content(), d.integer_content());
        if g.is_zero() || g.is_one() {
            return (n, d);
        }
        let inv = BigRational::new(BigInt::one(), g);
        (n.scale(&inv), d.scale(&inv))
    }
}

impl Zero for QAlpha {
    fn zero() -> Self {
        QAlpha {
            num: RatPoly::zero(),
            den: RatPoly::one(),
        }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for QAlpha {
    fn one() -> Self {
        QAlpha {
            num: RatPoly::one(),
            den: RatPoly::one(),
        }
    }
}

/// `(num)/(den)` with integer coefficients in descending powers of `a`;
/// the denominator is omitted when it is one.
impl fmt::Display for QAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n, d) = self.integral_parts();
        if d.is_one() {
            write!(f, "{}", n.render("a"))
        } else {
            write!(f, "({})/({})", n.render("a"), d.render("a"))
        }
    }
}

impl fmt::Debug for QAlpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "QAlpha[{self}]")
    }
}

impl Add for &QAlpha {
    type Output = QAlpha;
    fn add(self, rhs: &QAlpha) -> QAlpha {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            let num = &self.num + &rhs.num;
            if self.den.is_one() {
                return QAlpha::from_poly(num);
            }
            return QAlpha::reduce(num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        QAlpha::reduce(num, &self.den * &rhs.den)
    }
}

impl Sub for &QAlpha {
    type Output = QAlpha;
    fn sub(self, rhs: &QAlpha) -> QAlpha {
        self + &(-rhs)
    }
}

impl Neg for &QAlpha {
    type Output = QAlpha;
    fn neg(self) -> QAlpha {
        QAlpha {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &QAlpha {
    type Output = QAlpha;
    fn mul(self, rhs: &QAlpha) -> QAlpha {
        if self.is_zero() || rhs.is_zero() {
            return QAlpha::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return QAlpha::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel so the product of reduced fractions stays reduced.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = &self.num.div_exact(&g1) * &rhs.num.div_exact(&g2);
        let den = &self.den.div_exact(&g2) * &rhs.den.div_exact(&g1);
        let lc = den.leading().expect("nonzero").clone();
        if lc.is_one() {
            QAlpha { num, den }
        } else {
            let inv = lc.recip();
            QAlpha {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }
}

macro_rules! forward_by_value {
    ($tr:ident, $m:ident, $tra:ident, $ma:ident) => {
        impl $tr for QAlpha {
            type Output = QAlpha;
            fn $m(self, rhs: QAlpha) -> QAlpha {
                (&self).$m(&rhs)
            }
        }
        impl<'a> $tr<&'a QAlpha> for QAlpha {
            type Output = QAlpha;
            fn $m(self, rhs: &'a QAlpha) -> QAlpha {
                (&self).$m(rhs)
            }
        }
        impl<'a> $tra<&'a QAlpha> for QAlpha {
            fn $ma(&mut self, rhs: &'a QAlpha) {
                *self = (&*self).$m(rhs);
            }
        }
        impl $tra for QAlpha {
            fn $ma(&mut self, rhs: QAlpha) {
                *self = (&*self).$m(&rhs);
            }
        }
    };
}

forward_by_value!(Add, add, AddAssign, add_assign);
forward_by_value!(Sub, sub, SubAssign, sub_assign);
forward_by_value!(Mul, mul, MulAssign, mul_assign);

impl Neg for QAlpha {
    type Output = QAlpha;
    fn neg(self) -> QAlpha {
        -&self
    }
}

/// Serialized as ascending coefficient strings of numerator and denominator.
#[derive(Serialize, Deserialize)]
struct QAlphaRepr {
    num: Vec<String>,
    den: Vec<String>,
}

impl Serialize for QAlpha {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let strs = |p: &RatPoly| p.coeffs().iter().map(|c| c.to_string()).collect();
        QAlphaRepr {
            num: strs(&self.num),
            den: strs(&self.den),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for QAlpha {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = QAlphaRepr::deserialize(d)?;
        let parse = |v: &[String]| -> Result<RatPoly, D::Error> {
            v.iter()
                .map(|s| s.parse::<BigRational>().map_err(D::Error::custom))
                .collect::<Result<Vec<_>, _>>()
                .map(RatPoly::from_coeffs)
        };
        QAlpha::new(parse(&repr.num)?, parse(&repr.den)?).map_err(D::Error::custom)
    }
}

/// Renders a polynomial in `b` for reports, e.g. `2 + 3*b + b^2`.
pub fn render_b(p: &RatPoly) -> String {
    p.render("b")
}

/// True when every coefficient of the polynomial is a nonnegative integer.
pub fn is_natural_polynomial(p: &RatPoly) -> bool {
    p.has_natural_coefficients()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(c: &[i64]) -> RatPoly {
        RatPoly::from_ints(c)
    }

    #[test]
    fn normalize_cancels_common_factor() {
        let a = QAlpha::new(poly(&[-1, 0, 1]), poly(&[-1, 1])).unwrap();
        assert_eq!(a.numerator(), &poly(&[1, 1]));
        assert!(a.denominator().is_one());
    }

    #[test]
    fn normalize_makes_denominator_monic() {
        let a = QAlpha::new(poly(&[0, 2]), poly(&[2])).unwrap();
        assert_eq!(a, QAlpha::alpha());
        let z = QAlpha::new(RatPoly::zero(), poly(&[0, 0, 0, 1])).unwrap();
        assert!(z.denominator().is_one());
        assert!(z.is_zero());
    }

    #[test]
    fn zero_denominator_is_an_error() {
        assert_eq!(
            QAlpha::new(poly(&[1]), RatPoly::zero()),
            Err(CoeffError::DivisionByZero)
        );
        assert!(QAlpha::alpha().checked_div(&QAlpha::zero()).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        let a = QAlpha::new(poly(&[1]), poly(&[-1, 1])).unwrap();
        let b = QAlpha::new(poly(&[1]), poly(&[1, 1])).unwrap();
        let expected = QAlpha::new(poly(&[0, 2]), poly(&[-1, 0, 1])).unwrap();
        assert_eq!(&a + &b, expected);
        let al = QAlpha::alpha();
        assert_eq!(&al * &al.inv().unwrap(), QAlpha::one());
        let c = QAlpha::from_poly(poly(&[1, 1]));
        assert!((&c - &c).is_zero());
    }

    #[test]
    fn b_polynomial_examples() {
        let b = |c: &[i64]| QAlpha::from_poly(poly(c)).to_b_polynomial().unwrap();
        assert_eq!(b(&[-1, 1]), poly(&[0, 1]));
        assert_eq!(b(&[0, 1]), poly(&[1, 1]));
        assert_eq!(b(&[0, 1, 1]), poly(&[2, 3, 1]));
        let bad = QAlpha::alpha().inv().unwrap();
        assert!(matches!(bad.to_b_polynomial(), Err(CoeffError::NotPolynomialInB(_))));
    }

    #[test]
    fn eval_examples() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        let a = QAlpha::new(poly(&[1, 1]), poly(&[2])).unwrap();
        assert_eq!(a.eval(&r(1, 1)).unwrap(), r(1, 1));
        let sq = QAlpha::from_poly(poly(&[0, 0, 1]));
        assert_eq!(sq.eval(&r(3, 2)).unwrap(), r(9, 4));
        let pole = QAlpha::new(poly(&[1]), poly(&[-1, 1])).unwrap();
        assert!(matches!(pole.eval(&r(1, 1)), Err(CoeffError::Pole(_))));
    }

    #[test]
    fn display_form() {
        let a = QAlpha::new(poly(&[-1, 0, 1]), poly(&[2])).unwrap();
        assert_eq!(a.to_string(), "(a^2 - 1)/(2)");
        let b = QAlpha::from_poly(poly(&[0, -8, 8]));
        assert_eq!(b.to_string(), "8*a^2 - 8*a");
        let c = QAlpha::new(poly(&[1]), poly(&[1, 1])).unwrap();
        assert_eq!(c.to_string(), "(1)/(a + 1)");
    }

    #[test]
    fn serde_round_trip() {
        let a = QAlpha::new(poly(&[3, 0, 1]), poly(&[1, 2, 1])).unwrap();
        let s = serde_json::to_string(&a).unwrap();
        let back: QAlpha = serde_json::from_str(&s).unwrap();
        assert_eq!(a, back);
    }
}
