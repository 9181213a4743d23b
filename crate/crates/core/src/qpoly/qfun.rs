//! Orders of groups and spaces over F_q, Gaussian binomials, and bounded
//! partition series.
//!
//! - |GL_m(F_q)| = prod_{k=0}^{m-1} (q^m - q^k)
//! - |R_d(Q)(F_q)| = q^{sum_{arrows i->j} d_i d_j}
//! - [n choose k]_q, always a polynomial (exact division asserted)
//! - sum over multipartitions with bounded parts of q^{-|lambda|}

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::qpoly::{PolyQ, RationalFunctionQ};
use crate::quiver::{DimVector, Quiver};

/// |GL_m(F_q)| as a polynomial in q; gl_order(0) = 1.
pub fn gl_order(m: u32) -> PolyQ {
    let mut acc = PolyQ::one();
    for k in 0..m {
        // q^m - q^k
        let factor = &PolyQ::q_power(m as usize) - &PolyQ::q_power(k as usize);
        acc = &acc * &factor;
    }
    acc
}

/// |R_d(Q)(F_q)| = q^{sum_{arrows i->j} d_i d_j}.
pub fn r_points(quiver: &Quiver, d: &DimVector) -> PolyQ {
    let mut exp: u64 = 0;
    for a in quiver.arrows() {
        exp += d.get(a.source) as u64 * d.get(a.target) as u64;
    }
    PolyQ::q_power(exp as usize)
}

/// |R_d(Q)(F_q)| / |G_d(F_q)|, reduced.
pub fn gauge_ratio(quiver: &Quiver, d: &DimVector) -> RationalFunctionQ {
    let mut den = PolyQ::one();
    for &di in d.entries() {
        den = &den * &gl_order(di);
    }
    RationalFunctionQ::new(r_points(quiver, d), den).expect("nonzero denominator")
}

/// The Gaussian binomial [n choose k]_q; zero for k < 0 or k > n.
pub fn q_binomial(n: u32, k: i64) -> PolyQ {
    if k < 0 || k > n as i64 {
        return PolyQ::zero();
    }
    let k = k as u32;
    let mut acc = PolyQ::one();
    for i in 1..=k {
        let num = &PolyQ::q_power((n - k + i) as usize) - &PolyQ::one();
        let den = &PolyQ::q_power(i as usize) - &PolyQ::one();
        acc = (&acc * &num)
            .exact_div(&den)
            .expect("q-binomial partial products are polynomials");
    }
    acc
}

/// Iterator over weakly decreasing tuples of `parts` non-negative integers,
/// each at most `per_part`, with sum at most `weight`. Each tuple is yielded
/// exactly once, in ascending lexicographic order.
pub struct PartitionIterator {
    parts: usize,
    per_part: u32,
    stack: Vec<(Vec<u32>, u64)>,
}

impl PartitionIterator {
    pub fn new(parts: usize, per_part: u32, weight: u64) -> PartitionIterator {
        PartitionIterator {
            parts,
            per_part,
            stack: vec![(Vec::new(), weight)],
        }
    }
}

impl Iterator for PartitionIterator {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        while let Some((prefix, budget)) = self.stack.pop() {
            if prefix.len() == self.parts {
                return Some(prefix);
            }
            let bound = prefix.last().copied().unwrap_or(self.per_part);
            let max = (bound as u64).min(budget).min(self.per_part as u64) as u32;
            // push larger values first so smaller tuples pop first
            for v in (0..=max).rev() {
                let mut child = prefix.clone();
                child.push(v);
                self.stack.push((child, budget - v as u64));
            }
        }
        None
    }
}

/// sum over multipartitions lambda with at most d_i parts at vertex i and
/// |lambda| <= weight_cutoff of q^{-|lambda|}, returned as a polynomial in the
/// inverse variable u = q^{-1}.
pub fn partition_series(d: &DimVector, weight_cutoff: u64) -> PolyQ {
    let mut weights = vec![BigInt::zero(); weight_cutoff as usize + 1];
    let mut count_with_weight = vec![BigInt::zero(); weight_cutoff as usize + 1];
    count_with_weight[0] = BigInt::one();
    for &di in d.entries() {
        if di == 0 {
            continue;
        }
        for w in weights.iter_mut() {
            *w = BigInt::zero();
        }
        for lambda in PartitionIterator::new(di as usize, weight_cutoff as u32, weight_cutoff) {
            let w: u64 = lambda.iter().map(|&x| x as u64).sum();
            weights[w as usize] += 1;
        }
        let mut next = vec![BigInt::zero(); weight_cutoff as usize + 1];
        for (w1, c1) in count_with_weight.iter().enumerate() {
            if c1.is_zero() {
                continue;
            }
            for (w2, c2) in weights.iter().enumerate() {
                if w1 + w2 <= weight_cutoff as usize && !c2.is_zero() {
                    next[w1 + w2] += c1 * c2;
                }
            }
        }
        count_with_weight = next;
    }
    PolyQ::from_coeffs(count_with_weight)
}

/// Exact polynomial division; see `PolyQ::exact_div`.
pub fn exact_divide(a: &PolyQ, b: &PolyQ) -> Result<PolyQ> {
    a.exact_div(b)
}

/// Expand a rational function of q as a power series in u = q^{-1} through
/// order u^N. Requires deg num <= deg den (no positive powers of q).
pub fn expand_in_inverse_q(f: &RationalFunctionQ, order: u64) -> Result<Vec<BigRational>> {
    let n = order as usize;
    if f.is_zero() {
        return Ok(vec![BigRational::zero(); n + 1]);
    }
    let dn = f.numerator().degree().expect("nonzero");
    let dd = f.denominator().degree().expect("nonzero denominator");
    if dn > dd {
        return Err(Error::Input(format!(
            "({}) has a pole at q = infinity, no expansion in q^-1",
            f
        )));
    }
    let gap = dd - dn;
    // reversed coefficients: p(1/u) * u^{deg p} has coefficient k equal to
    // the coefficient of q^{deg p - k} in p
    let rev = |p: &PolyQ, deg: usize| -> Vec<BigRational> {
        (0..=n)
            .map(|k| {
                if k > deg {
                    BigRational::zero()
                } else {
                    BigRational::from(p.coefficient(deg - k))
                }
            })
            .collect()
    };
    let num_rev = rev(f.numerator(), dn);
    let den_rev = rev(f.denominator(), dd);
    // invert den_rev as a power series: b_0 = 1/a_0, b_m = -(1/a_0) sum a_k b_{m-k}
    let a0 = den_rev[0].clone();
    debug_assert!(!a0.is_zero());
    let mut inv = vec![BigRational::zero(); n + 1];
    inv[0] = a0.recip();
    for m in 1..=n {
        let mut s = BigRational::zero();
        for k in 1..=m {
            if !den_rev[k].is_zero() {
                s += &den_rev[k] * &inv[m - k];
            }
        }
        inv[m] = -s / a0.clone();
    }
    // result = u^gap * num_rev * inv, truncated
    let mut out = vec![BigRational::zero(); n + 1];
    for (i, c) in num_rev.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        for (j, b) in inv.iter().enumerate() {
            let k = gap + i + j;
            if k > n {
                break;
            }
            out[k] += c * b;
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::ToPrimitive;

    fn p(coeffs: &[i64]) -> PolyQ {
        PolyQ::from_coeffs(coeffs.to_vec())
    }

    #[test]
    fn gl_order_small() {
        assert_eq!(gl_order(0), PolyQ::one());
        assert_eq!(gl_order(1), p(&[-1, 1]));
        // (q^2-1)(q^2-q) = q^4 - q^3 - q^2 + q
        assert_eq!(gl_order(2), p(&[0, 1, -1, -1, 1]));
    }

    #[test]
    fn gl_order_matches_point_count() {
        for m in 0..=4u32 {
            for q in [2i64, 3] {
                let mut expect = BigInt::one();
                for k in 0..m {
                    expect *= BigInt::from(q).pow(m) - BigInt::from(q).pow(k);
                }
                assert_eq!(gl_order(m).eval_int(&BigInt::from(q)), expect);
            }
        }
    }

    #[test]
    fn r_points_examples() {
        let empty = Quiver::from_edges(&["a", "b"], &[]);
        assert_eq!(r_points(&empty, &DimVector::new(vec![2, 3])), PolyQ::one());
        for m in 0..4 {
            let lq = Quiver::from_edges(&["x"], &vec![(0, 0); m]);
            assert_eq!(
                r_points(&lq, &DimVector::new(vec![3])),
                PolyQ::q_power(9 * m)
            );
        }
        let cyc = Quiver::from_edges(&["a", "b"], &[(0, 1), (1, 0)]);
        assert_eq!(
            r_points(&cyc, &DimVector::new(vec![2, 2])),
            PolyQ::q_power(8)
        );
    }

    #[test]
    fn gauge_ratio_examples() {
        let cyc = Quiver::from_edges(&["a", "b"], &[(0, 1), (1, 0)]);
        assert_eq!(
            gauge_ratio(&cyc, &DimVector::new(vec![0, 0])),
            RationalFunctionQ::one()
        );
        let point = Quiver::from_edges(&["x"], &[]);
        assert_eq!(
            gauge_ratio(&point, &DimVector::new(vec![1])),
            RationalFunctionQ::new(PolyQ::one(), p(&[-1, 1])).unwrap()
        );
        let g22 = gauge_ratio(&cyc, &DimVector::new(vec![2, 2]));
        let expect =
            RationalFunctionQ::new(PolyQ::q_power(8), &gl_order(2) * &gl_order(2)).unwrap();
        assert_eq!(g22, expect);
    }

    #[test]
    fn q_binomial_values() {
        for n in 0..6u32 {
            assert_eq!(q_binomial(n, 0), PolyQ::one());
        }
        assert_eq!(q_binomial(2, 1), p(&[1, 1]));
        assert_eq!(q_binomial(4, 2), p(&[1, 1, 2, 1, 1]));
        assert_eq!(q_binomial(3, -1), PolyQ::zero());
        assert_eq!(q_binomial(3, 4), PolyQ::zero());
    }

    #[test]
    fn q_binomial_symmetry_and_specialization() {
        for n in 0..=7u32 {
            for k in 0..=n {
                assert_eq!(q_binomial(n, k as i64), q_binomial(n, (n - k) as i64));
                let at_one = q_binomial(n, k as i64)
                    .eval_int(&BigInt::one())
                    .to_i64()
                    .unwrap();
                let mut binom = 1i64;
                for i in 0..k as i64 {
                    binom = binom * (n as i64 - i) / (i + 1);
                }
                assert_eq!(at_one, binom);
            }
        }
    }

    #[test]
    fn exact_divide_matches_q_binomial() {
        let num = &p(&[-1, 0, 0, 0, 1]) * &p(&[-1, 0, 0, 1]); // (q^4-1)(q^3-1)
        let den = &p(&[-1, 0, 1]) * &p(&[-1, 1]); // (q^2-1)(q-1)
        assert_eq!(exact_divide(&num, &den).unwrap(), q_binomial(4, 2));
        assert!(exact_divide(&p(&[1, 1, 1]), &p(&[-1, 1])).is_err());
    }

    #[test]
    fn partition_series_small() {
        assert_eq!(
            partition_series(&DimVector::new(vec![0, 0]), 5),
            PolyQ::one()
        );
        // one part, any size up to the cutoff
        assert_eq!(
            partition_series(&DimVector::new(vec![1]), 3),
            p(&[1, 1, 1, 1])
        );
        // two parts: weights 0,1,2,2,...: partitions (0,0);(1,0);(2,0),(1,1);...
        assert_eq!(
            partition_series(&DimVector::new(vec![2]), 3),
            p(&[1, 1, 2, 2])
        );
    }

    #[test]
    fn partition_series_truncation_monotone() {
        let d = DimVector::new(vec![2, 1]);
        let short = partition_series(&d, 6);
        let long = partition_series(&d, 11);
        for k in 0..=6 {
            assert_eq!(short.coefficient(k), long.coefficient(k));
        }
    }

    #[test]
    fn gauge_ratio_expands_to_partition_series() {
        // gauge_ratio(Q, d) * q^{<d,d>} = sum over multipartitions q^{-|lambda|}
        let q = Quiver::from_edges(&["a", "b"], &[(0, 1), (1, 0), (0, 0)]);
        let d = DimVector::new(vec![2, 1]);
        let euler = crate::quiver::euler_form(&q, &d, &d).unwrap();
        let f = &gauge_ratio(&q, &d) * &RationalFunctionQ::q_power(euler);
        let n = 10;
        let series = expand_in_inverse_q(&f, n).unwrap();
        let expect = partition_series(&d, n);
        for k in 0..=n as usize {
            assert_eq!(
                series[k],
                BigRational::from(expect.coefficient(k)),
                "coefficient of q^-{k}"
            );
        }
    }
}
