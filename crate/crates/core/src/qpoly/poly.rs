//! Integer-coefficient polynomials in the formal variable q.
//!
//! Coefficients are arbitrary-precision integers. The representation is dense
//! with trailing zeros trimmed, so structural equality is canonical equality.
//! The zero polynomial has `degree() == None` (the "minus infinity" degree).

use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct PolyQ {
    /// coeffs[k] is the coefficient of q^k; the last entry is never zero.
    coeffs: Vec<BigInt>,
}

impl PolyQ {
    pub fn zero() -> Self {
        PolyQ { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyQ::constant(BigInt::one())
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            PolyQ::zero()
        } else {
            PolyQ { coeffs: vec![c] }
        }
    }

    /// The monomial c * q^exp.
    pub fn monomial(exp: usize, c: impl Into<BigInt>) -> Self {
        let c = c.into();
        if c.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        PolyQ { coeffs }
    }

    /// q^exp.
    pub fn q_power(exp: usize) -> Self {
        PolyQ::monomial(exp, 1)
    }

    /// Construct from a low-to-high coefficient list (trailing zeros allowed).
    pub fn from_coeffs(coeffs: Vec<impl Into<BigInt>>) -> Self {
        let mut p = PolyQ {
            coeffs: coeffs.into_iter().map(Into::into).collect(),
        };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while matches!(self.coeffs.last(), Some(c) if c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, or None for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coefficient(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn leading_coefficient(&self) -> BigInt {
        self.coeffs.last().cloned().unwrap_or_else(BigInt::zero)
    }

    /// Iterate (exponent, coefficient) over the nonzero terms, ascending.
    pub fn terms(&self) -> impl Iterator<Item = (usize, &BigInt)> {
        self.coeffs.iter().enumerate().filter(|(_, c)| !c.is_zero())
    }

    pub fn has_nonnegative_coefficients(&self) -> bool {
        self.coeffs.iter().all(|c| !c.is_negative())
    }

    /// Multiply by q^k.
    pub fn shifted(&self, k: usize) -> Self {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![BigInt::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        PolyQ { coeffs }
    }

    /// gcd of all coefficients (non-negative); 0 for the zero polynomial.
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for c in &self.coeffs {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Divide every coefficient by an exact integer divisor.
    pub fn div_content(&self, g: &BigInt) -> Self {
        if self.is_zero() {
            return PolyQ::zero();
        }
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| c / g).collect(),
        }
    }

    /// Evaluate at an integer point.
    pub fn eval_int(&self, x: &BigInt) -> BigInt {
        let mut acc = BigInt::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluate at a rational point.
    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + BigRational::from(c.clone());
        }
        acc
    }

    /// Exact division: returns a/b, failing unless b divides a with an
    /// integer-coefficient quotient. Several theorems guarantee such
    /// divisibility, so a failure here is a correctness signal.
    pub fn exact_div(&self, b: &PolyQ) -> Result<PolyQ> {
        if b.is_zero() {
            return Err(Error::Divisibility(
                "division by the zero polynomial".into(),
            ));
        }
        if self.is_zero() {
            return Ok(PolyQ::zero());
        }
        if b.leading_coefficient().is_one() {
            return self.exact_div_monic(b);
        }
        let (quot, rem) = self.div_rem_rational(b);
        if !rem.iter().all(|c| c.is_zero()) {
            return Err(Error::Divisibility(format!(
                "({}) does not divide ({})",
                b, self
            )));
        }
        let mut coeffs = Vec::with_capacity(quot.len());
        for c in quot {
            if !c.is_integer() {
                return Err(Error::Divisibility(format!(
                    "({}) / ({}) has non-integer coefficients",
                    self, b
                )));
            }
            coeffs.push(c.to_integer());
        }
        let mut q = PolyQ { coeffs };
        q.trim();
        Ok(q)
    }

    /// Synthetic division by a monic divisor, staying in integers.
    fn exact_div_monic(&self, b: &PolyQ) -> Result<PolyQ> {
        let db = b.degree().expect("nonzero divisor");
        let da = self.degree().expect("nonzero dividend");
        if da < db {
            return Err(Error::Divisibility(format!(
                "({}) does not divide ({})",
                b, self
            )));
        }
        let mut rem = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = std::mem::take(&mut rem[k + db]);
            if c.is_zero() {
                continue;
            }
            for (j, bc) in b.coeffs.iter().enumerate().take(db) {
                if !bc.is_zero() {
                    rem[k + j] -= &c * bc;
                }
            }
            quot[k] = c;
        }
        if rem.iter().take(db).any(|c| !c.is_zero()) {
            return Err(Error::Divisibility(format!(
                "({}) does not divide ({})",
                b, self
            )));
        }
        let mut q = PolyQ { coeffs: quot };
        q.trim();
        Ok(q)
    }

    /// Long division over the rationals; returns (quotient, remainder).
    fn div_rem_rational(&self, b: &PolyQ) -> (Vec<BigRational>, Vec<BigRational>) {
        let db = b.degree().expect("nonzero divisor");
        let mut rem: Vec<BigRational> = self
            .coeffs
            .iter()
            .map(|c| BigRational::from(c.clone()))
            .collect();
        let lead = BigRational::from(b.leading_coefficient());
        let da = self.coeffs.len() - 1;
        if da < db {
            return (vec![BigRational::zero()], rem);
        }
        let mut quot = vec![BigRational::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let c = rem[k + db].clone() / lead.clone();
            if c.is_zero() {
                continue;
            }
            for (j, bcoeff) in b.coeffs.iter().enumerate() {
                let sub = c.clone() * BigRational::from(bcoeff.clone());
                rem[k + j] -= sub;
            }
            quot[k] = c;
        }
        rem.truncate(db);
        (quot, rem)
    }

    /// Primitive polynomial gcd (positive leading coefficient, content 1);
    /// gcd(0, 0) = 0.
    pub fn gcd(&self, other: &PolyQ) -> PolyQ {
        let mut a = self.primitive_part();
        let mut b = other.primitive_part();
        while !b.is_zero() {
            let r = a.pseudo_rem(&b);
            a = b;
            b = r.primitive_part();
        }
        a.with_positive_leading()
    }

    fn primitive_part(&self) -> PolyQ {
        if self.is_zero() {
            return PolyQ::zero();
        }
        let g = self.content();
        self.div_content(&g)
    }

    fn with_positive_leading(mut self) -> PolyQ {
        if self.leading_coefficient().is_negative() {
            for c in &mut self.coeffs {
                *c = -std::mem::take(c);
            }
        }
        self
    }

    /// Pseudo-remainder of self by b: lc(b)^(da-db+1) * self = q*b + r.
    fn pseudo_rem(&self, b: &PolyQ) -> PolyQ {
        let db = b.degree().expect("nonzero divisor");
        let lead = b.leading_coefficient();
        let mut rem = self.clone();
        while let Some(dr) = rem.degree() {
            if dr < db {
                break;
            }
            let c = rem.leading_coefficient();
            // rem := lead*rem - c * q^(dr-db) * b
            let mut scaled: Vec<BigInt> = rem.coeffs.iter().map(|x| x * &lead).collect();
            for (j, bc) in b.coeffs.iter().enumerate() {
                scaled[dr - db + j] -= &c * bc;
            }
            rem = PolyQ { coeffs: scaled };
            rem.trim();
        }
        rem
    }

    pub fn pow(&self, mut e: u32) -> PolyQ {
        let mut base = self.clone();
        let mut acc = PolyQ::one();
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
}

impl Add for &PolyQ {
    type Output = PolyQ;
    fn add(self, rhs: &PolyQ) -> PolyQ {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        let mut p = PolyQ { coeffs };
        p.trim();
        p
    }
}

impl Sub for &PolyQ {
    type Output = PolyQ;
    fn sub(self, rhs: &PolyQ) -> PolyQ {
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len().max(rhs.coeffs.len())];
        for (k, c) in self.coeffs.iter().enumerate() {
            coeffs[k] += c;
        }
        for (k, c) in rhs.coeffs.iter().enumerate() {
            coeffs[k] -= c;
        }
        let mut p = PolyQ { coeffs };
        p.trim();
        p
    }
}

impl Mul for &PolyQ {
    type Output = PolyQ;
    fn mul(self, rhs: &PolyQ) -> PolyQ {
        if self.is_zero() || rhs.is_zero() {
            return PolyQ::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] += a * b;
                }
            }
        }
        let mut p = PolyQ { coeffs };
        p.trim();
        p
    }
}

impl Neg for &PolyQ {
    type Output = PolyQ;
    fn neg(self) -> PolyQ {
        PolyQ {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl AddAssign<&PolyQ> for PolyQ {
    fn add_assign(&mut self, rhs: &PolyQ) {
        *self = &*self + rhs;
    }
}

impl fmt::Display for PolyQ {
    /// Descending exponents: `q^8 + 2*q^7 + 5*q^6`, `q - 1`, `0`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (exp, c) in self.terms().collect::<Vec<_>>().into_iter().rev() {
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            match (exp, mag.is_one()) {
                (0, _) => write!(f, "{}", mag)?,
                (1, true) => write!(f, "q")?,
                (1, false) => write!(f, "{}*q", mag)?,
                (_, true) => write!(f, "q^{}", exp)?,
                (_, false) => write!(f, "{}*q^{}", mag, exp)?,
            }
        }
        Ok(())
    }
}
