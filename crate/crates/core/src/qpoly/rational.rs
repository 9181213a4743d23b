//! Reduced rational functions in q with integer-coefficient numerator and
//! denominator.
//!
//! The representation is canonical: numerator and denominator share no
//! polynomial factor, their contents are coprime, and the denominator has
//! positive leading coefficient. Structural equality is therefore equality of
//! rational functions. Negative powers of q are carried here (as 1/q^k)
//! rather than in a separate Laurent type.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::qpoly::PolyQ;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalFunctionQ {
    num: PolyQ,
    den: PolyQ,
}

impl RationalFunctionQ {
    pub fn new(num: PolyQ, den: PolyQ) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::Input("zero denominator".into()));
        }
        Ok(Self::reduced(num, den))
    }

    fn reduced(num: PolyQ, den: PolyQ) -> Self {
        if num.is_zero() {
            return RationalFunctionQ {
                num: PolyQ::zero(),
                den: PolyQ::one(),
            };
        }
        let g = num.gcd(&den);
        let mut num = num.exact_div(&g).expect("gcd divides");
        let mut den = den.exact_div(&g).expect("gcd divides");
        let c = num.content().gcd(&den.content());
        if !c.is_one() {
            num = num.div_content(&c);
            den = den.div_content(&c);
        }
        if den.leading_coefficient().is_negative() {
            num = -&num;
            den = -&den;
        }
        RationalFunctionQ { num, den }
    }

    pub fn zero() -> Self {
        RationalFunctionQ {
            num: PolyQ::zero(),
            den: PolyQ::one(),
        }
    }

    pub fn one() -> Self {
        RationalFunctionQ {
            num: PolyQ::one(),
            den: PolyQ::one(),
        }
    }

    pub fn from_poly(p: PolyQ) -> Self {
        RationalFunctionQ {
            num: p,
            den: PolyQ::one(),
        }
    }

    pub fn from_int(c: impl Into<BigInt>) -> Self {
        Self::from_poly(PolyQ::constant(c))
    }

    /// q^k for any integer k, negative exponents included.
    pub fn q_power(k: i64) -> Self {
        if k >= 0 {
            Self::from_poly(PolyQ::q_power(k as usize))
        } else {
            RationalFunctionQ {
                num: PolyQ::one(),
                den: PolyQ::q_power((-k) as usize),
            }
        }
    }

    pub fn numerator(&self) -> &PolyQ {
        &self.num
    }

    pub fn denominator(&self) -> &PolyQ {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// True iff the canonical denominator is 1.
    pub fn is_polynomial(&self) -> bool {
        self.den.is_one()
    }

    /// Extract the polynomial, or a divisibility error when the canonical
    /// denominator is not 1.
    pub fn to_polynomial(&self) -> Result<PolyQ> {
        if self.den.is_one() {
            Ok(self.num.clone())
        } else {
            Err(Error::Divisibility(format!(
                "({})/({}) is not a polynomial",
                self.num, self.den
            )))
        }
    }

    pub fn inverse(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::Input("inverse of zero".into()));
        }
        Ok(Self::reduced(self.den.clone(), self.num.clone()))
    }

    pub fn pow(&self, e: u32) -> Self {
        RationalFunctionQ {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }
}

impl Add for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn add(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalFunctionQ::reduced(num, den)
    }
}

impl Sub for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn sub(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        let num = &(&self.num * &rhs.den) - &(&rhs.num * &self.den);
        let den = &self.den * &rhs.den;
        RationalFunctionQ::reduced(num, den)
    }
}

impl Mul for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn mul(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        // Cross-reduce first to keep intermediate products small.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.exact_div(&g1).expect("gcd divides");
        let d = rhs.den.exact_div(&g1).expect("gcd divides");
        let b = rhs.num.exact_div(&g2).expect("gcd divides");
        let c = self.den.exact_div(&g2).expect("gcd divides");
        RationalFunctionQ::reduced(&a * &b, &c * &d)
    }
}

impl Div for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn div(self, rhs: &RationalFunctionQ) -> RationalFunctionQ {
        assert!(!rhs.is_zero(), "division by zero rational function");
        self * &RationalFunctionQ::reduced(rhs.den.clone(), rhs.num.clone())
    }
}

impl Neg for &RationalFunctionQ {
    type Output = RationalFunctionQ;
    fn neg(self) -> RationalFunctionQ {
        RationalFunctionQ {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl fmt::Display for RationalFunctionQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
