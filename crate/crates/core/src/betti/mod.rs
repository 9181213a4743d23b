//! The four Poincaré-polynomial engines for smooth models of quiver moduli,
//! and the recursive non-emptiness test for moduli of semistable
//! representations.
//!
//! For a datum (Q, Theta, d) define the rational function
//!
//!   P_d(q) = sum (-1)^{s-1} q^{-sum_{k<l} <d^l, d^k>} prod_k |R_{d^k}| / |G_{d^k}|
//!
//! over mu-admissible decompositions d = d^1 + ... + d^s. The engines compute
//! the Poincaré polynomial of the smooth model M^Theta_{d,n}(Q) by
//!
//! - a recursion in the slope class of d (`smooth_model_poincare_recursion`),
//! - an explicit sum over semi-admissible decompositions
//!   (`smooth_model_poincare_summation`),
//! - inversion of a twisted generating function (`series_engine`),
//!
//! all with exact arithmetic. The zero polynomial is a legitimate output and
//! means the moduli space is empty.

mod decomp;
mod twisted;

pub use decomp::{admissible_decompositions, semi_admissible_decompositions, Decomposition};
pub use twisted::{SeriesSpace, SlopeClass, TwistedSeries};

use std::collections::{BTreeMap, HashMap};
use std::sync::Mutex;

use num_bigint::BigInt;
use num_traits::Zero;

use decomp::{visit_decompositions, DecompVisitor, Mode};

use crate::error::{Error, Result};
use crate::qpoly::{gl_order, PolyQ, RationalFunctionQ};
use crate::quiver::{euler_form, slope, DimVector, Quiver, Stability};

/// Memo table for P_d values. A cache belongs to one fixed (Q, Theta): the
/// slope class of every key is determined by that pair, so classes never mix.
/// Inserts are idempotent (a key always maps to the same value), making the
/// table safe to share across threads.
#[derive(Default)]
pub struct PdCache {
    map: Mutex<HashMap<DimVector, RationalFunctionQ>>,
}

impl PdCache {
    pub fn new() -> PdCache {
        PdCache::default()
    }
}

/// Memo table for `sst_nonempty`, bound to one (Q, Theta) like `PdCache`.
#[derive(Default)]
pub struct SstCache {
    map: Mutex<HashMap<DimVector, bool>>,
}

impl SstCache {
    pub fn new() -> SstCache {
        SstCache::default()
    }
}

/// sum_{arrows i->j} d_i d_j, the dimension of R_d(Q).
fn arrow_weight(quiver: &Quiver, d: &DimVector) -> i64 {
    quiver
        .arrows()
        .iter()
        .map(|a| d.get(a.source) as i64 * d.get(a.target) as i64)
        .sum()
}

/// Exact accumulator for sums of +-q^shift * poly with integer shifts.
struct LaurentAcc {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentAcc {
    fn new() -> LaurentAcc {
        LaurentAcc {
            coeffs: BTreeMap::new(),
        }
    }

    fn add_poly(&mut self, p: &PolyQ, shift: i64, negate: bool) {
        for (exp, c) in p.terms() {
            let entry = self
                .coeffs
                .entry(exp as i64 + shift)
                .or_insert_with(BigInt::zero);
            if negate {
                *entry -= c;
            } else {
                *entry += c;
            }
        }
        self.coeffs.retain(|_, c| !c.is_zero());
    }

    /// The accumulated Laurent polynomial divided by `den`.
    fn into_rational(self, den: &PolyQ) -> RationalFunctionQ {
        let Some((&min, _)) = self.coeffs.iter().next() else {
            return RationalFunctionQ::zero();
        };
        let max = *self.coeffs.keys().next_back().expect("nonempty");
        let mut coeffs = vec![BigInt::zero(); (max - min + 1) as usize];
        for (k, c) in self.coeffs {
            coeffs[(k - min) as usize] = c;
        }
        let num = PolyQ::from_coeffs(coeffs);
        if min >= 0 {
            RationalFunctionQ::new(num.shifted(min as usize), den.clone())
        } else {
            RationalFunctionQ::new(num, &den.clone() * &PolyQ::q_power((-min) as usize))
        }
        .expect("nonzero denominator")
    }
}

/// Shared incremental state along the decomposition search: the running
/// product of gauge ratios over the fixed common denominator prod_i gl(d_i),
/// plus the exponent bookkeeping of the summands.
struct GaugeState<'a> {
    quiver: &'a Quiver,
    gl_table: Vec<PolyQ>,
    /// common_den / prod over placed parts u of prod_i gl(u_i)
    v: PolyQ,
    /// sum of arrow weights of the placed parts
    rexp: i64,
    /// sum_{k<l} <d^l, d^k> over placed parts
    eexp: i64,
    odd_parts: bool,
}

impl<'a> GaugeState<'a> {
    fn new(quiver: &'a Quiver, d: &DimVector) -> GaugeState<'a> {
        let max = d.entries().iter().copied().max().unwrap_or(0);
        let gl_table: Vec<PolyQ> = (0..=max).map(gl_order).collect();
        let mut common = PolyQ::one();
        for &di in d.entries() {
            common = &common * &gl_table[di as usize];
        }
        GaugeState {
            quiver,
            gl_table,
            v: common,
            rexp: 0,
            eexp: 0,
            odd_parts: false,
        }
    }

    fn common_denominator(&self, d: &DimVector) -> PolyQ {
        let mut common = PolyQ::one();
        for &di in d.entries() {
            common = &common * &self.gl_table[di as usize];
        }
        common
    }

    fn push(&mut self, part: &DimVector, partial_before: &DimVector) -> Result<()> {
        for &ui in part.entries() {
            if ui > 0 {
                // gl(u_1) ... gl(u_s) divides gl(d_i) for u_1+...+u_s <= d_i,
                // so this division is exact at every prefix
                self.v = self.v.exact_div(&self.gl_table[ui as usize])?;
            }
        }
        self.rexp += arrow_weight(self.quiver, part);
        self.eexp += euler_form(self.quiver, part, partial_before)?;
        self.odd_parts = !self.odd_parts;
        Ok(())
    }

    fn pop(&mut self, part: &DimVector, partial_before: &DimVector) {
        for &ui in part.entries() {
            if ui > 0 {
                self.v = &self.v * &self.gl_table[ui as usize];
            }
        }
        self.rexp -= arrow_weight(self.quiver, part);
        self.eexp -= euler_form(self.quiver, part, partial_before).expect("validated");
        self.odd_parts = !self.odd_parts;
    }
}

struct PdVisitor<'a> {
    state: GaugeState<'a>,
    acc: LaurentAcc,
}

impl DecompVisitor for PdVisitor<'_> {
    fn push(&mut self, part: &DimVector, partial_before: &DimVector) -> Result<()> {
        self.state.push(part, partial_before)
    }
    fn pop(&mut self, part: &DimVector, partial_before: &DimVector) {
        self.state.pop(part, partial_before)
    }
    fn leaf(&mut self, _parts: &[DimVector], _k0: usize) -> Result<()> {
        // (-1)^{s-1} is positive for an odd number of parts
        self.acc.add_poly(
            &self.state.v,
            self.state.rexp - self.state.eexp,
            !self.state.odd_parts,
        );
        Ok(())
    }
}

/// The rational function P_d; P_0 = 1 (the series unit).
pub fn p_d(
    quiver: &Quiver,
    theta: &Stability,
    d: &DimVector,
    cache: &PdCache,
) -> Result<RationalFunctionQ> {
    if d.is_zero() {
        return Ok(RationalFunctionQ::one());
    }
    if let Some(v) = cache.map.lock().unwrap().get(d) {
        return Ok(v.clone());
    }
    let state = GaugeState::new(quiver, d);
    let common = state.common_denominator(d);
    let mut visitor = PdVisitor {
        state,
        acc: LaurentAcc::new(),
    };
    visit_decompositions(theta, d, Mode::Admissible, &mut visitor)?;
    let value = visitor.acc.into_rational(&common);
    cache
        .map
        .lock()
        .unwrap()
        .entry(d.clone())
        .or_insert_with(|| value.clone());
    Ok(value)
}

/// (q - 1) P_d(q), the Poincaré polynomial of the moduli of stables when d is
/// coprime for Theta.
pub fn stable_poincare(
    quiver: &Quiver,
    theta: &Stability,
    d: &DimVector,
    cache: &PdCache,
) -> Result<PolyQ> {
    if !crate::quiver::is_coprime(quiver, theta, d)? {
        return Err(Error::Precondition(format!(
            "d = {d} is not coprime for the given stability"
        )));
    }
    let q_minus_1 = RationalFunctionQ::from_poly(PolyQ::from_coeffs(vec![-1, 1]));
    let value = &q_minus_1 * &p_d(quiver, theta, d, cache)?;
    let poly = value.to_polynomial().map_err(|_| {
        Error::Internal(format!("(q-1) P_d is not a polynomial at coprime d = {d}"))
    })?;
    if !poly.has_nonnegative_coefficients() {
        return Err(Error::Internal(format!(
            "(q-1) P_d has a negative coefficient at coprime d = {d}"
        )));
    }
    Ok(poly)
}

fn finish_engine_output(value: RationalFunctionQ, what: &str) -> Result<PolyQ> {
    let poly = value
        .to_polynomial()
        .map_err(|_| Error::Internal(format!("{what} is not a polynomial: {value}")))?;
    if !poly.has_nonnegative_coefficients() {
        return Err(Error::Internal(format!(
            "{what} has negative coefficients: {poly}"
        )));
    }
    Ok(poly)
}

fn check_framed_input(quiver: &Quiver, d: &DimVector, n: &DimVector) -> Result<()> {
    if d.len() != quiver.vertex_count() || n.len() != quiver.vertex_count() {
        return Err(Error::Input("d and n must match the vertex set".into()));
    }
    if n.is_zero() {
        return Err(Error::Input("framing vector n must be nonzero".into()));
    }
    if d.is_zero() {
        return Err(Error::Input("dimension vector d must be nonzero".into()));
    }
    Ok(())
}

/// Poincaré polynomial of the smooth model by the slope-class recursion
///
///   P(d) = (q^{n.d} - 1) P_d - sum_{0<e<d, mu(e)=mu(d)} q^{-<d-e,e>} P_{d-e} P(e).
pub fn smooth_model_poincare_recursion(
    quiver: &Quiver,
    theta: &Stability,
    d: &DimVector,
    n: &DimVector,
    cache: &PdCache,
) -> Result<PolyQ> {
    check_framed_input(quiver, d, n)?;
    let mut memo: HashMap<DimVector, PolyQ> = HashMap::new();
    recursion_value(quiver, theta, d, n, cache, &mut memo)
}

fn recursion_value(
    quiver: &Quiver,
    theta: &Stability,
    d: &DimVector,
    n: &DimVector,
    cache: &PdCache,
    memo: &mut HashMap<DimVector, PolyQ>,
) -> Result<PolyQ> {
    if let Some(v) = memo.get(d) {
        return Ok(v.clone());
    }
    let mu_d = slope(theta, d)?;
    let nd = n.dot(d);
    let lead = &PolyQ::q_power(nd as usize) - &PolyQ::one();
    let mut value = &RationalFunctionQ::from_poly(lead) * &p_d(quiver, theta, d, cache)?;
    for e in DimVector::box_iter(d) {
        if e.is_zero() || &e == d || slope(theta, &e)? != mu_d {
            continue;
        }
        let f = d.checked_sub(&e).expect("e <= d");
        let inner = recursion_value(quiver, theta, &e, n, cache, memo)?;
        let twist = RationalFunctionQ::q_power(-euler_form(quiver, &f, &e)?);
        let term =
            &(&p_d(quiver, theta, &f, cache)? * &RationalFunctionQ::from_poly(inner)) * &twist;
        value = &value - &term;
    }
    let poly = finish_engine_output(value, &format!("recursion engine at {d}"))?;
    memo.insert(d.clone(), poly.clone());
    Ok(poly)
}

struct SummationVisitor<'a> {
    state: GaugeState<'a>,
    n: &'a DimVector,
    /// prefix sums of n . d^k along the current branch
    nsum: Vec<u64>,
    acc: LaurentAcc,
}

impl DecompVisitor for SummationVisitor<'_> {
    fn push(&mut self, part: &DimVector, partial_before: &DimVector) -> Result<()> {
        let prev = self.nsum.last().copied().unwrap_or(0);
        self.nsum.push(prev + self.n.dot(part));
        self.state.push(part, partial_before)
    }
    fn pop(&mut self, part: &DimVector, partial_before: &DimVector) {
        self.nsum.pop();
        self.state.pop(part, partial_before)
    }
    fn leaf(&mut self, _parts: &[DimVector], k0: usize) -> Result<()> {
        let base = self.state.rexp - self.state.eexp;
        let nk0 = self.nsum[k0 - 1] as i64;
        // (-1)^{s-1} (q^{sum_{k<=k0} n.d^k} - 1) q^base * gauge product
        self.acc
            .add_poly(&self.state.v, base + nk0, !self.state.odd_parts);
        self.acc.add_poly(&self.state.v, base, self.state.odd_parts);
        Ok(())
    }
}

/// Poincaré polynomial of the smooth model by the explicit sum over
/// semi-admissible decompositions,
///
///   sum (-1)^{s-1} (q^{sum_{k<=k0} n.d^k} - 1)
///       q^{-sum_{k<l} <d^l,d^k>} prod_k |R_{d^k}| / |G_{d^k}|.
///
/// Each summand is (q-1) times the contribution of the corresponding pair of
/// admissible decompositions of the framed datum to P_{d^}, so the sum equals
/// (q-1) P_{d^} directly.
pub fn smooth_model_poincare_summation(
    quiver: &Quiver,
    theta: &Stability,
    d: &DimVector,
    n: &DimVector,
) -> Result<PolyQ> {
    check_framed_input(quiver, d, n)?;
    let state = GaugeState::new(quiver, d);
    let common = state.common_denominator(d);
    let mut visitor = SummationVisitor {
        state,
        n,
        nsum: Vec::new(),
        acc: LaurentAcc::new(),
    };
    visit_decompositions(theta, d, Mode::SemiAdmissible, &mut visitor)?;
    let total = visitor.acc.into_rational(&common);
    finish_engine_output(total, &format!("summation engine at {d}"))
}

/// All smooth-model Poincaré polynomials of one slope class at once, as the
/// coefficients of A^{-1} B for A = sum P_e t^e and B = sum q^{n.e} P_e t^e
/// over the exponents e <= cap in the class.
pub fn series_engine(
    quiver: &Quiver,
    theta: &Stability,
    class: SlopeClass,
    cap: &DimVector,
    n: &DimVector,
    cache: &PdCache,
) -> Result<BTreeMap<DimVector, PolyQ>> {
    if n.len() != quiver.vertex_count() || cap.len() != quiver.vertex_count() {
        return Err(Error::Input("cap and n must match the vertex set".into()));
    }
    if n.is_zero() {
        return Err(Error::Input("framing vector n must be nonzero".into()));
    }
    let space = SeriesSpace::new(quiver, theta, class, cap.clone());
    let mut a = TwistedSeries::zero(&space);
    let mut b = TwistedSeries::zero(&space);
    for e in space.exponents() {
        let pe = p_d(quiver, theta, &e, cache)?;
        let ne = n.dot(&e);
        b.set(e.clone(), &RationalFunctionQ::q_power(ne as i64) * &pe);
        a.set(e, pe);
    }
    let h = a.inverse()?.mul(&b);
    let mut out = BTreeMap::new();
    for e in space.exponents() {
        let value = h.coefficient(&e);
        let poly = finish_engine_output(value, &format!("series engine at {e}"))?;
        out.insert(e, poly);
    }
    Ok(out)
}

/// The series-engine value at d itself (slope class of d, cap d).
pub fn smooth_model_poincare_series(
    quiver: &Quiver,
    theta: &Stability,
    d: &DimVector,
    n: &DimVector,
    cache: &PdCache,
) -> Result<PolyQ> {
    check_framed_input(quiver, d, n)?;
    let class = SlopeClass::of(theta, d)?;
    let mut map = series_engine(quiver, theta, class, d, n, cache)?;
    map.remove(d)
        .ok_or_else(|| Error::Internal(format!("series engine produced no coefficient at {d}")))
}

/// Whether the moduli space of semistable representations is nonempty:
/// true iff no nontrivial decomposition d = d^1 + ... + d^s exists with all
/// parts nonempty, strictly decreasing slopes, and <d^k, d^l> = 0 for k < l.
pub fn sst_nonempty(
    quiver: &Quiver,
    theta: &Stability,
    d: &DimVector,
    cache: &SstCache,
) -> Result<bool> {
    if d.is_zero() {
        return Err(Error::Precondition(
            "sst_nonempty requires a nonzero dimension vector".into(),
        ));
    }
    if let Some(&v) = cache.map.lock().unwrap().get(d) {
        return Ok(v);
    }
    let mut chosen: Vec<DimVector> = Vec::new();
    let witness = witness_search(quiver, theta, d, d, &mut chosen, cache)?;
    let value = !witness;
    cache.map.lock().unwrap().insert(d.clone(), value);
    Ok(value)
}

fn witness_search(
    quiver: &Quiver,
    theta: &Stability,
    d: &DimVector,
    remaining: &DimVector,
    chosen: &mut Vec<DimVector>,
    cache: &SstCache,
) -> Result<bool> {
    if remaining.is_zero() {
        return Ok(chosen.len() >= 2);
    }
    'parts: for part in DimVector::box_iter(remaining) {
        if part.is_zero() {
            continue;
        }
        if chosen.is_empty() && &part == d {
            continue; // the trivial decomposition is not a witness
        }
        if let Some(last) = chosen.last() {
            if slope(theta, &part)? >= slope(theta, last)? {
                continue;
            }
        }
        for earlier in chosen.iter() {
            if euler_form(quiver, earlier, &part)? != 0 {
                continue 'parts;
            }
        }
        if !sst_nonempty(quiver, theta, &part, cache)? {
            continue;
        }
        chosen.push(part.clone());
        let found = witness_search(
            quiver,
            theta,
            d,
            &remaining.checked_sub(&part).expect("part <= remaining"),
            chosen,
            cache,
        )?;
        chosen.pop();
        if found {
            return Ok(true);
        }
    }
    Ok(false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qpoly::gauge_ratio;

    fn dv(entries: &[u32]) -> DimVector {
        DimVector::new(entries.to_vec())
    }

    fn kronecker(m: usize) -> Quiver {
        Quiver::from_edges(&["i", "j"], &vec![(0, 1); m])
    }

    fn loop_quiver(m: usize) -> Quiver {
        Quiver::from_edges(&["x"], &vec![(0, 0); m])
    }

    fn two_cycle() -> Quiver {
        Quiver::from_edges(&["a", "b"], &[(0, 1), (1, 0)])
    }

    /// q^8 + 2q^7 + 5q^6 + 6q^5 + 7q^4 + 4q^3 + 2q^2: the sum of
    /// q^{8-|lambda|} over the 27 admissible multipartitions of the
    /// two-vertex cyclic quiver at d = n = (2,2).
    fn two_cycle_poly() -> PolyQ {
        PolyQ::from_coeffs(vec![0, 0, 2, 4, 7, 6, 5, 2, 1])
    }

    #[test]
    fn p_d_base_cases() {
        let q = two_cycle();
        let cache = PdCache::new();
        assert_eq!(
            p_d(&q, &Stability::zero(2), &dv(&[0, 0]), &cache).unwrap(),
            RationalFunctionQ::one()
        );
        let point = Quiver::from_edges(&["x"], &[]);
        let cache1 = PdCache::new();
        let p1 = p_d(&point, &Stability::zero(1), &dv(&[1]), &cache1).unwrap();
        assert_eq!(
            p1,
            RationalFunctionQ::new(PolyQ::one(), PolyQ::from_coeffs(vec![-1, 1])).unwrap()
        );
    }

    #[test]
    fn p_d_trivial_theta_is_gauge_ratio() {
        // with Theta = 0 only the trivial decomposition is admissible
        let q = Quiver::from_edges(&["a", "b"], &[(0, 1), (1, 0), (0, 0)]);
        let cache = PdCache::new();
        for d in [dv(&[1, 2]), dv(&[2, 2]), dv(&[3, 1])] {
            assert_eq!(
                p_d(&q, &Stability::zero(2), &d, &cache).unwrap(),
                gauge_ratio(&q, &d)
            );
            // cached value equals a fresh recomputation
            assert_eq!(
                p_d(&q, &Stability::zero(2), &d, &cache).unwrap(),
                p_d(&q, &Stability::zero(2), &d, &PdCache::new()).unwrap()
            );
        }
    }

    #[test]
    fn p_d_subspace_quiver_example() {
        // 4-subspace quiver: P_d = ((q+1)^3 - (1 + 4q)) / (q (q-1)^2)
        let q = Quiver::from_edges(
            &["0", "1", "2", "3", "4"],
            &[(1, 0), (2, 0), (3, 0), (4, 0)],
        );
        let theta = Stability::from_ints(&[-1, 0, 0, 0, 0]);
        let d = dv(&[2, 1, 1, 1, 1]);
        let cache = PdCache::new();
        let got = p_d(&q, &theta, &d, &cache).unwrap();
        let num = &PolyQ::from_coeffs(vec![1, 1]).pow(3) - &PolyQ::from_coeffs(vec![1, 4]);
        let den = &PolyQ::q_power(1) * &PolyQ::from_coeffs(vec![-1, 1]).pow(2);
        assert_eq!(got, RationalFunctionQ::new(num, den).unwrap());
    }

    #[test]
    fn stable_poincare_kronecker_line() {
        let q = kronecker(2);
        let theta = Stability::from_ints(&[1, 0]);
        let cache = PdCache::new();
        let poly = stable_poincare(&q, &theta, &dv(&[1, 1]), &cache).unwrap();
        assert_eq!(poly, PolyQ::from_coeffs(vec![1, 1]));
        assert!(matches!(
            stable_poincare(&q, &theta, &dv(&[2, 2]), &cache),
            Err(Error::Precondition(_))
        ));
    }

    #[test]
    fn stable_poincare_odd_subspace_is_positive() {
        let q = Quiver::from_edges(
            &["0", "1", "2", "3", "4", "5"],
            &[(1, 0), (2, 0), (3, 0), (4, 0), (5, 0)],
        );
        let theta = Stability::from_ints(&[-1, 0, 0, 0, 0, 0]);
        let d = dv(&[2, 1, 1, 1, 1, 1]);
        let cache = PdCache::new();
        let poly = stable_poincare(&q, &theta, &d, &cache).unwrap();
        assert!(!poly.is_zero());
        assert!(poly.has_nonnegative_coefficients());
    }

    #[test]
    fn recursion_loop_quivers() {
        // the smooth model of the m-loop quiver at d = (1), n = (1) is the
        // affine space of m scalars: point count q^m
        for m in 0..=4 {
            let q = loop_quiver(m);
            let cache = PdCache::new();
            let poly = smooth_model_poincare_recursion(
                &q,
                &Stability::zero(1),
                &dv(&[1]),
                &dv(&[1]),
                &cache,
            )
            .unwrap();
            assert_eq!(poly, PolyQ::q_power(m));
        }
    }

    #[test]
    fn recursion_matches_two_cycle_count() {
        let q = two_cycle();
        let cache = PdCache::new();
        let poly = smooth_model_poincare_recursion(
            &q,
            &Stability::zero(2),
            &dv(&[2, 2]),
            &dv(&[2, 2]),
            &cache,
        )
        .unwrap();
        assert_eq!(poly, two_cycle_poly());
    }

    #[test]
    fn recursion_empty_moduli_is_zero() {
        let q = Quiver::from_edges(&["i", "j"], &[(0, 0), (0, 1)]);
        let cache = PdCache::new();
        let poly = smooth_model_poincare_recursion(
            &q,
            &Stability::zero(2),
            &dv(&[1, 0]),
            &dv(&[0, 1]),
            &cache,
        )
        .unwrap();
        assert!(poly.is_zero());
    }

    #[test]
    fn summation_agrees_on_named_instances() {
        for m in 0..=4 {
            let q = loop_quiver(m);
            let got =
                smooth_model_poincare_summation(&q, &Stability::zero(1), &dv(&[1]), &dv(&[1]))
                    .unwrap();
            assert_eq!(got, PolyQ::q_power(m));
        }
        let q = two_cycle();
        let got =
            smooth_model_poincare_summation(&q, &Stability::zero(2), &dv(&[2, 2]), &dv(&[2, 2]))
                .unwrap();
        assert_eq!(got, two_cycle_poly());
        let q2 = Quiver::from_edges(&["i", "j"], &[(0, 0), (0, 1)]);
        let got2 =
            smooth_model_poincare_summation(&q2, &Stability::zero(2), &dv(&[1, 0]), &dv(&[0, 1]))
                .unwrap();
        assert!(got2.is_zero());
    }

    #[test]
    fn coprime_collapses_to_projective_bundle() {
        // for coprime d the sum collapses to (q^{n.d} - 1) P_d
        let q = kronecker(3);
        let theta = Stability::from_ints(&[1, 0]);
        let d = dv(&[1, 2]);
        let n = dv(&[1, 1]);
        let cache = PdCache::new();
        assert!(crate::quiver::is_coprime(&q, &theta, &d).unwrap());
        let nd = n.dot(&d) as usize;
        let pd = p_d(&q, &theta, &d, &cache).unwrap();
        let expect = (&RationalFunctionQ::from_poly(&PolyQ::q_power(nd) - &PolyQ::one()) * &pd)
            .to_polynomial()
            .unwrap();
        let got = smooth_model_poincare_summation(&q, &theta, &d, &n).unwrap();
        assert_eq!(got, expect);
        let rec = smooth_model_poincare_recursion(&q, &theta, &d, &n, &cache).unwrap();
        assert_eq!(rec, expect);
    }

    #[test]
    fn series_engine_unit_and_agreement() {
        let q = two_cycle();
        let theta = Stability::zero(2);
        let cache = PdCache::new();
        let map = series_engine(
            &q,
            &theta,
            SlopeClass::All,
            &dv(&[2, 2]),
            &dv(&[2, 2]),
            &cache,
        )
        .unwrap();
        assert_eq!(map[&dv(&[0, 0])], PolyQ::one());
        assert_eq!(map[&dv(&[2, 2])], two_cycle_poly());

        let k2 = kronecker(2);
        let theta_k = Stability::from_ints(&[1, 0]);
        let cache_k = PdCache::new();
        let map_k = series_engine(
            &k2,
            &theta_k,
            SlopeClass::of(&theta_k, &dv(&[1, 1])).unwrap(),
            &dv(&[2, 2]),
            &dv(&[1, 1]),
            &cache_k,
        )
        .unwrap();
        for d in [dv(&[1, 1]), dv(&[2, 2])] {
            let sum = smooth_model_poincare_summation(&k2, &theta_k, &d, &dv(&[1, 1])).unwrap();
            assert_eq!(map_k[&d], sum, "series vs summation at {d}");
        }
    }

    #[test]
    fn sst_nonempty_examples() {
        let cache = SstCache::new();
        let q = two_cycle();
        for d in [dv(&[1, 0]), dv(&[2, 2]), dv(&[3, 1])] {
            assert!(sst_nonempty(&q, &Stability::zero(2), &d, &cache).unwrap());
        }
        let k2 = kronecker(2);
        let cache2 = SstCache::new();
        assert!(sst_nonempty(&k2, &Stability::from_ints(&[1, 0]), &dv(&[1, 1]), &cache2).unwrap());
        let disconnected = Quiver::from_edges(&["a", "b"], &[]);
        let cache3 = SstCache::new();
        assert!(!sst_nonempty(
            &disconnected,
            &Stability::from_ints(&[1, 0]),
            &dv(&[1, 1]),
            &cache3
        )
        .unwrap());
    }
}
