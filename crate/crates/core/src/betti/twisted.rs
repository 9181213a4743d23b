//! Truncated formal series with dimension-vector exponents and the q-twisted
//! multiplication t^d * t^e = q^{-<d,e>} t^{d+e}.
//!
//! A series lives in a fixed slope class: its exponents are 0 and the vectors
//! e <= cap with mu(e) = s (all vectors when the class is `All`, the trivial
//! stability case). Exponents exceeding the cap componentwise are dropped
//! during multiplication, which is sound for reading off coefficients at
//! e <= cap because the product is graded by exponent sum.

use std::collections::BTreeMap;

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::qpoly::RationalFunctionQ;
use crate::quiver::{euler_form, slope, DimVector, Quiver, Stability};

/// The slope class restricting series exponents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SlopeClass {
    /// No restriction; used for the trivial stability where every slope is 0.
    All,
    /// Nonzero exponents must have exactly this slope.
    Of(Rational64),
}

impl SlopeClass {
    /// The class of d with respect to theta.
    pub fn of(theta: &Stability, d: &DimVector) -> Result<SlopeClass> {
        if theta.is_zero() {
            Ok(SlopeClass::All)
        } else {
            Ok(SlopeClass::Of(slope(theta, d)?))
        }
    }

    pub fn contains(&self, theta: &Stability, e: &DimVector) -> bool {
        if e.is_zero() {
            return true;
        }
        match self {
            SlopeClass::All => true,
            SlopeClass::Of(s) => slope(theta, e).map(|m| m == *s).unwrap_or(false),
        }
    }
}

/// The ambient data of a twisted series: quiver (for the Euler form), slope
/// class, cap vector, and the stability defining slopes.
#[derive(Clone, Debug)]
pub struct SeriesSpace<'a> {
    pub quiver: &'a Quiver,
    pub theta: &'a Stability,
    pub class: SlopeClass,
    pub cap: DimVector,
}

impl<'a> SeriesSpace<'a> {
    pub fn new(
        quiver: &'a Quiver,
        theta: &'a Stability,
        class: SlopeClass,
        cap: DimVector,
    ) -> SeriesSpace<'a> {
        SeriesSpace {
            quiver,
            theta,
            class,
            cap,
        }
    }

    /// Exponents of the space: 0 and every e <= cap in the slope class, in
    /// lexicographic (hence componentwise-compatible) order.
    pub fn exponents(&self) -> Vec<DimVector> {
        DimVector::box_iter(&self.cap)
            .filter(|e| self.class.contains(self.theta, e))
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct TwistedSeries<'a> {
    space: &'a SeriesSpace<'a>,
    coeffs: BTreeMap<DimVector, RationalFunctionQ>,
}

impl<'a> TwistedSeries<'a> {
    pub fn zero(space: &'a SeriesSpace<'a>) -> TwistedSeries<'a> {
        TwistedSeries {
            space,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn unit(space: &'a SeriesSpace<'a>) -> TwistedSeries<'a> {
        let mut s = TwistedSeries::zero(space);
        s.set(DimVector::zero(space.cap.len()), RationalFunctionQ::one());
        s
    }

    pub fn set(&mut self, e: DimVector, value: RationalFunctionQ) {
        debug_assert!(e.le(&self.space.cap));
        debug_assert!(self.space.class.contains(self.space.theta, &e));
        if value.is_zero() {
            self.coeffs.remove(&e);
        } else {
            self.coeffs.insert(e, value);
        }
    }

    pub fn coefficient(&self, e: &DimVector) -> RationalFunctionQ {
        self.coeffs
            .get(e)
            .cloned()
            .unwrap_or_else(RationalFunctionQ::zero)
    }

    pub fn coefficients(&self) -> &BTreeMap<DimVector, RationalFunctionQ> {
        &self.coeffs
    }

    /// The twisted product, truncated at the cap.
    pub fn mul(&self, rhs: &TwistedSeries<'a>) -> TwistedSeries<'a> {
        let mut out: BTreeMap<DimVector, RationalFunctionQ> = BTreeMap::new();
        for (f, a) in &self.coeffs {
            for (e, b) in &rhs.coeffs {
                let target = f.add(e);
                if !target.le(&self.space.cap) {
                    continue;
                }
                let twist = euler_form(self.space.quiver, f, e).expect("matching vertex sets");
                let term = &(a * b) * &RationalFunctionQ::q_power(-twist);
                let entry = out.entry(target).or_insert_with(RationalFunctionQ::zero);
                *entry = &*entry + &term;
            }
        }
        out.retain(|_, v| !v.is_zero());
        TwistedSeries {
            space: self.space,
            coeffs: out,
        }
    }

    /// The two-sided inverse; requires an invertible (nonzero) coefficient at
    /// exponent 0. Solves self * y = 1 exponent by exponent.
    pub fn inverse(&self) -> Result<TwistedSeries<'a>> {
        let zero = DimVector::zero(self.space.cap.len());
        let a0 = self.coefficient(&zero);
        if a0.is_zero() {
            return Err(Error::Internal(
                "twisted series with zero constant term has no inverse".into(),
            ));
        }
        let a0_inv = a0.inverse().expect("nonzero");
        let mut inv: BTreeMap<DimVector, RationalFunctionQ> = BTreeMap::new();
        inv.insert(zero.clone(), a0_inv.clone());
        // lexicographic order refines the componentwise order, so every f < e
        // needed below is already present
        for e in self.space.exponents() {
            if e.is_zero() {
                continue;
            }
            let mut sum = RationalFunctionQ::zero();
            for (f, af) in &self.coeffs {
                if f.is_zero() || !f.le(&e) {
                    continue;
                }
                let g = e.checked_sub(f).expect("f <= e");
                let yg = match inv.get(&g) {
                    Some(v) => v,
                    None => continue,
                };
                let twist = euler_form(self.space.quiver, f, &g).expect("matching vertex sets");
                sum = &sum + &(&(af * yg) * &RationalFunctionQ::q_power(-twist));
            }
            let value = &(-&sum) * &a0_inv;
            if !value.is_zero() {
                inv.insert(e, value);
            }
        }
        Ok(TwistedSeries {
            space: self.space,
            coeffs: inv,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::PolyQ;

    #[test]
    fn twist_uses_euler_form() {
        let q = Quiver::from_edges(&["a", "b"], &[(0, 1), (0, 1)]);
        let theta = Stability::zero(2);
        let space = SeriesSpace::new(&q, &theta, SlopeClass::All, DimVector::new(vec![1, 1]));
        let mut td = TwistedSeries::zero(&space);
        td.set(DimVector::new(vec![1, 0]), RationalFunctionQ::one());
        let mut te = TwistedSeries::zero(&space);
        te.set(DimVector::new(vec![0, 1]), RationalFunctionQ::one());
        // t^(1,0) t^(0,1) = q^{-<(1,0),(0,1)>} t^(1,1) = q^2 t^(1,1)
        let prod = td.mul(&te);
        assert_eq!(
            prod.coefficient(&DimVector::new(vec![1, 1])),
            RationalFunctionQ::from_poly(PolyQ::q_power(2))
        );
        // reversed order is untwisted: <(0,1),(1,0)> = 0
        let prod2 = te.mul(&td);
        assert_eq!(
            prod2.coefficient(&DimVector::new(vec![1, 1])),
            RationalFunctionQ::one()
        );
    }

    #[test]
    fn inverse_is_two_sided() {
        let q = Quiver::from_edges(&["a", "b"], &[(0, 1), (1, 0), (0, 0)]);
        let theta = Stability::zero(2);
        let space = SeriesSpace::new(&q, &theta, SlopeClass::All, DimVector::new(vec![2, 2]));
        let mut a = TwistedSeries::unit(&space);
        let mut k = 1i64;
        for e in space.exponents() {
            if e.is_zero() {
                continue;
            }
            a.set(
                e,
                &RationalFunctionQ::from_int(k) * &RationalFunctionQ::q_power(-(k % 3)),
            );
            k += 1;
        }
        let inv = a.inverse().unwrap();
        let left = inv.mul(&a);
        let right = a.mul(&inv);
        for e in space.exponents() {
            let expect = if e.is_zero() {
                RationalFunctionQ::one()
            } else {
                RationalFunctionQ::zero()
            };
            assert_eq!(left.coefficient(&e), expect, "left inverse at {e}");
            assert_eq!(right.coefficient(&e), expect, "right inverse at {e}");
        }
    }

    #[test]
    fn zero_constant_term_is_not_invertible() {
        let q = Quiver::from_edges(&["a"], &[]);
        let theta = Stability::zero(1);
        let space = SeriesSpace::new(&q, &theta, SlopeClass::All, DimVector::new(vec![2]));
        let mut t = TwistedSeries::zero(&space);
        t.set(DimVector::new(vec![1]), RationalFunctionQ::one());
        assert!(t.inverse().is_err());
    }

    #[test]
    fn cap_truncates_products() {
        let q = Quiver::from_edges(&["a"], &[]);
        let theta = Stability::zero(1);
        let space = SeriesSpace::new(&q, &theta, SlopeClass::All, DimVector::new(vec![1]));
        let mut a = TwistedSeries::unit(&space);
        a.set(DimVector::new(vec![1]), RationalFunctionQ::one());
        let sq = a.mul(&a);
        // (1 + t)^2 = 1 + 2t + t^2, and t^2 is beyond the cap
        assert_eq!(
            sq.coefficient(&DimVector::new(vec![1])),
            RationalFunctionQ::from_int(2)
        );
        assert_eq!(sq.coefficients().len(), 2);
    }
}
