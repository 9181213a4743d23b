//! Quivers, dimension vectors, stability conditions and slopes, the framing
//! construction, and the local quiver of a polystable type.
//!
//! Vertex order and the enumeration of parallel arrows are fixed at
//! construction from the input order; all downstream combinatorics use exactly
//! these orders.

use num_rational::Rational64;
use num_traits::Zero;

use crate::error::{Error, Result};

/// One arrow of a quiver. `parallel_index` enumerates arrows sharing
/// (source, target), 1-based in input order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub parallel_index: usize,
}

/// A finite directed multigraph with ordered vertices and enumerated parallel
/// arrows. Loops are allowed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Quiver {
    vertex_names: Vec<String>,
    arrows: Vec<Arrow>,
    adjacency: Vec<Vec<usize>>,
    /// Position of each arrow in the (source, target, parallel_index) order.
    arrow_rank: Vec<usize>,
    /// Arrow ids leaving each vertex, sorted by rank.
    out_arrows: Vec<Vec<usize>>,
}

impl Quiver {
    pub fn new(vertex_names: Vec<String>, arrow_pairs: Vec<(usize, usize)>) -> Result<Quiver> {
        let v = vertex_names.len();
        {
            let mut seen = std::collections::HashSet::new();
            for name in &vertex_names {
                if !seen.insert(name.clone()) {
                    return Err(Error::Input(format!("duplicate vertex name `{name}`")));
                }
            }
        }
        let mut adjacency = vec![vec![0usize; v]; v];
        let mut arrows = Vec::with_capacity(arrow_pairs.len());
        for &(s, t) in &arrow_pairs {
            if s >= v || t >= v {
                return Err(Error::Input(format!(
                    "arrow ({s}, {t}) references a vertex outside 0..{v}"
                )));
            }
            adjacency[s][t] += 1;
            arrows.push(Arrow {
                source: s,
                target: t,
                parallel_index: adjacency[s][t],
            });
        }
        let mut by_rank: Vec<usize> = (0..arrows.len()).collect();
        by_rank.sort_by_key(|&id| {
            (
                arrows[id].source,
                arrows[id].target,
                arrows[id].parallel_index,
            )
        });
        let mut arrow_rank = vec![0usize; arrows.len()];
        for (rank, &id) in by_rank.iter().enumerate() {
            arrow_rank[id] = rank;
        }
        let mut out_arrows = vec![Vec::new(); v];
        for &id in &by_rank {
            out_arrows[arrows[id].source].push(id);
        }
        Ok(Quiver {
            vertex_names,
            arrows,
            adjacency,
            arrow_rank,
            out_arrows,
        })
    }

    /// Test/builder convenience: vertices named by the given strings.
    pub fn from_edges(names: &[&str], edges: &[(usize, usize)]) -> Quiver {
        Quiver::new(
            names.iter().map(|s| s.to_string()).collect(),
            edges.to_vec(),
        )
        .expect("valid quiver literal")
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_names.len()
    }

    pub fn vertex_name(&self, i: usize) -> &str {
        &self.vertex_names[i]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertex_names
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.vertex_names.iter().position(|n| n == name)
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }

    pub fn arrow(&self, id: usize) -> &Arrow {
        &self.arrows[id]
    }

    /// Number of arrows i -> j.
    pub fn arrow_count(&self, i: usize, j: usize) -> usize {
        self.adjacency[i][j]
    }

    /// Rank of an arrow in the fixed total order on arrows
    /// (source, then target, then parallel index).
    pub fn arrow_rank(&self, id: usize) -> usize {
        self.arrow_rank[id]
    }

    /// Arrow ids with the given source, in arrow order.
    pub fn arrows_from(&self, vertex: usize) -> &[usize] {
        &self.out_arrows[vertex]
    }

    fn check_vector(&self, d: &DimVector) -> Result<()> {
        if d.len() != self.vertex_count() {
            return Err(Error::Input(format!(
                "dimension vector has {} entries, quiver has {} vertices",
                d.len(),
                self.vertex_count()
            )));
        }
        Ok(())
    }
}

/// A dimension vector: one non-negative integer per vertex.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct DimVector(Vec<u32>);

impl DimVector {
    pub fn new(entries: Vec<u32>) -> DimVector {
        DimVector(entries)
    }

    pub fn zero(len: usize) -> DimVector {
        DimVector(vec![0; len])
    }

    /// The coordinate vector of a single vertex.
    pub fn unit(len: usize, vertex: usize) -> DimVector {
        let mut e = vec![0; len];
        e[vertex] = 1;
        DimVector(e)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn get(&self, i: usize) -> u32 {
        self.0[i]
    }

    pub fn entries(&self) -> &[u32] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&x| x == 0)
    }

    /// The total dimension dim d: the sum of all entries.
    pub fn total(&self) -> u64 {
        self.0.iter().map(|&x| x as u64).sum()
    }

    /// Componentwise e <= d.
    pub fn le(&self, other: &DimVector) -> bool {
        self.len() == other.len() && self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// Componentwise e <= d with e != d.
    pub fn lt(&self, other: &DimVector) -> bool {
        self.le(other) && self != other
    }

    pub fn checked_sub(&self, other: &DimVector) -> Option<DimVector> {
        if !other.le(self) {
            return None;
        }
        Some(DimVector(
            self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect(),
        ))
    }

    pub fn add(&self, other: &DimVector) -> DimVector {
        DimVector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// The pairing n . d = sum_i n_i d_i.
    pub fn dot(&self, other: &DimVector) -> u64 {
        self.0
            .iter()
            .zip(&other.0)
            .map(|(&a, &b)| a as u64 * b as u64)
            .sum()
    }

    /// All vectors 0 <= e <= cap in lexicographic order.
    pub fn box_iter(cap: &DimVector) -> impl Iterator<Item = DimVector> {
        let cap = cap.clone();
        let mut current = Some(DimVector::zero(cap.len()));
        std::iter::from_fn(move || {
            let out = current.clone()?;
            // increment like a mixed-radix odometer, last entry fastest
            let mut next = out.clone();
            let mut i = cap.len();
            loop {
                if i == 0 {
                    current = None;
                    break;
                }
                i -= 1;
                if next.0[i] < cap.0[i] {
                    next.0[i] += 1;
                    current = Some(next);
                    break;
                }
                next.0[i] = 0;
            }
            Some(out)
        })
    }
}

impl std::fmt::Display for DimVector {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, x) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, ")")
    }
}

/// A stability condition: an exact rational weight per vertex.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stability(Vec<Rational64>);

impl Stability {
    pub fn new(weights: Vec<Rational64>) -> Stability {
        Stability(weights)
    }

    pub fn zero(len: usize) -> Stability {
        Stability(vec![Rational64::zero(); len])
    }

    pub fn from_ints(weights: &[i64]) -> Stability {
        Stability(
            weights
                .iter()
                .map(|&w| Rational64::from_integer(w))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weights(&self) -> &[Rational64] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|w| w.is_zero())
    }

    /// Theta(d).
    pub fn value(&self, d: &DimVector) -> Rational64 {
        self.0
            .iter()
            .zip(d.entries())
            .map(|(w, &x)| *w * Rational64::from_integer(x as i64))
            .sum()
    }
}

/// The Euler form <d, e> = sum_i d_i e_i - sum_{arrows i->j} d_i e_j.
pub fn euler_form(quiver: &Quiver, d: &DimVector, e: &DimVector) -> Result<i64> {
    quiver.check_vector(d)?;
    quiver.check_vector(e)?;
    let mut value: i64 = d
        .entries()
        .iter()
        .zip(e.entries())
        .map(|(&a, &b)| a as i64 * b as i64)
        .sum();
    for (i, row) in quiver.adjacency.iter().enumerate() {
        for (j, &count) in row.iter().enumerate() {
            if count > 0 {
                value -= count as i64 * d.get(i) as i64 * e.get(j) as i64;
            }
        }
    }
    Ok(value)
}

/// <d, i> for a single vertex i, used by the non-emptiness criterion.
pub fn euler_form_vertex(quiver: &Quiver, d: &DimVector, vertex: usize) -> i64 {
    let mut value = d.get(vertex) as i64;
    for (j, row) in quiver.adjacency.iter().enumerate() {
        value -= row[vertex] as i64 * d.get(j) as i64;
    }
    value
}

/// The slope mu(d) = Theta(d) / dim d; an error for d = 0.
pub fn slope(theta: &Stability, d: &DimVector) -> Result<Rational64> {
    if d.is_zero() {
        return Err(Error::UndefinedSlope);
    }
    Ok(theta.value(d) / Rational64::from_integer(d.total() as i64))
}

/// Normalize Theta for d: the least positive multiple of Theta - mu(d)*dim
/// with integer weights. The result satisfies Theta'(d) = 0 and preserves the
/// sign of mu(e) - mu(d) for every 0 != e <= d.
pub fn normalize_stability(theta: &Stability, d: &DimVector) -> Result<Stability> {
    let mu = slope(theta, d)?;
    let shifted: Vec<Rational64> = theta.0.iter().map(|w| *w - mu).collect();
    if shifted.iter().all(|w| w.is_zero()) {
        return Ok(Stability(shifted));
    }
    let mut lcm: i64 = 1;
    for w in &shifted {
        lcm = num_integer::lcm(lcm, *w.denom());
    }
    let mut gcd: i64 = 0;
    for w in &shifted {
        gcd = num_integer::gcd(gcd, (*w * Rational64::from_integer(lcm)).to_integer());
    }
    let scale = Rational64::new(lcm, gcd.abs());
    Ok(Stability(shifted.iter().map(|w| *w * scale).collect()))
}

/// True iff no 0 < e < d has the same slope as d.
pub fn is_coprime(quiver: &Quiver, theta: &Stability, d: &DimVector) -> Result<bool> {
    quiver.check_vector(d)?;
    let mu = slope(theta, d)?;
    for e in DimVector::box_iter(d) {
        if e.is_zero() || &e == d {
            continue;
        }
        if slope(theta, &e)? == mu {
            return Ok(false);
        }
    }
    Ok(true)
}

/// For each vertex: can it be reached from some vertex with nonzero framing by
/// a directed path inside supp(d)? Vertices outside supp(d) report true
/// (nothing is required of them); the empty path counts.
pub fn support_reachable(quiver: &Quiver, d: &DimVector, n: &DimVector) -> Result<Vec<bool>> {
    quiver.check_vector(d)?;
    quiver.check_vector(n)?;
    let v = quiver.vertex_count();
    let mut reached = vec![false; v];
    let mut queue = std::collections::VecDeque::new();
    for i in 0..v {
        if d.get(i) == 0 {
            reached[i] = true;
        } else if n.get(i) > 0 {
            reached[i] = true;
            queue.push_back(i);
        }
    }
    while let Some(i) = queue.pop_front() {
        for &id in quiver.arrows_from(i) {
            let j = quiver.arrow(id).target;
            if d.get(j) > 0 && !reached[j] {
                reached[j] = true;
                queue.push_back(j);
            }
        }
    }
    Ok(reached)
}

/// The framed datum (Q^, d^, Theta^) of (Q, d, Theta, n): one extra vertex
/// with n_i arrows to each i, extended dimension 1 at the new vertex.
///
/// The framing weight Theta^_infinity = mu(d) + epsilon is never materialized;
/// all hat-slope comparisons are answered through the plain slopes of the base
/// datum, which is exact for every comparison against mu^(d^).
#[derive(Clone, Debug)]
pub struct FramedDatum {
    base: Quiver,
    base_dim: DimVector,
    base_theta: Stability,
    normalized_theta: Stability,
    framing: DimVector,
    extended: Quiver,
    extended_dim: DimVector,
    slope_d: Rational64,
}

pub fn frame(
    quiver: &Quiver,
    d: &DimVector,
    theta: &Stability,
    n: &DimVector,
) -> Result<FramedDatum> {
    quiver.check_vector(d)?;
    quiver.check_vector(n)?;
    if n.is_zero() {
        return Err(Error::Input("framing vector n must be nonzero".into()));
    }
    if d.is_zero() {
        return Err(Error::Input("dimension vector d must be nonzero".into()));
    }
    let v = quiver.vertex_count();
    let mut names = quiver.vertex_names.clone();
    let mut inf_name = "∞".to_string();
    while names.contains(&inf_name) {
        inf_name.push('\'');
    }
    names.push(inf_name);
    let mut pairs: Vec<(usize, usize)> =
        quiver.arrows.iter().map(|a| (a.source, a.target)).collect();
    for i in 0..v {
        for _ in 0..n.get(i) {
            pairs.push((v, i));
        }
    }
    let extended = Quiver::new(names, pairs)?;
    let mut dhat = d.entries().to_vec();
    dhat.push(1);
    Ok(FramedDatum {
        base: quiver.clone(),
        base_dim: d.clone(),
        base_theta: theta.clone(),
        normalized_theta: normalize_stability(theta, d)?,
        framing: n.clone(),
        extended,
        extended_dim: DimVector::new(dhat),
        slope_d: slope(theta, d)?,
    })
}

impl FramedDatum {
    pub fn base(&self) -> &Quiver {
        &self.base
    }

    pub fn base_dim(&self) -> &DimVector {
        &self.base_dim
    }

    pub fn framing(&self) -> &DimVector {
        &self.framing
    }

    pub fn extended_quiver(&self) -> &Quiver {
        &self.extended
    }

    pub fn extended_dim(&self) -> &DimVector {
        &self.extended_dim
    }

    /// View a base dimension vector inside Q^ (zero at the framing vertex).
    pub fn embed(&self, e: &DimVector) -> DimVector {
        let mut x = e.entries().to_vec();
        x.push(0);
        DimVector::new(x)
    }

    /// e^ inside Q^ (one at the framing vertex).
    pub fn embed_framed(&self, e: &DimVector) -> DimVector {
        let mut x = e.entries().to_vec();
        x.push(1);
        DimVector::new(x)
    }

    /// mu^(e) < mu^(d^), for 0 != e <= d supported on the base.
    pub fn hat_lt(&self, e: &DimVector) -> Result<bool> {
        self.check_base(e)?;
        Ok(slope(&self.base_theta, e)? <= self.slope_d)
    }

    /// mu^(e) <= mu^(d^); coincides with the strict comparison.
    pub fn hat_le(&self, e: &DimVector) -> Result<bool> {
        self.hat_lt(e)
    }

    /// mu^(e^) < mu^(d^), for e < d (e = 0 allowed; the answer is false).
    pub fn hat_lt_framed(&self, e: &DimVector) -> Result<bool> {
        if !e.lt(&self.base_dim) {
            return Err(Error::Precondition(format!(
                "hat_lt_framed requires e < d, got e = {e}"
            )));
        }
        if e.is_zero() {
            return Ok(false);
        }
        Ok(slope(&self.base_theta, e)? < self.slope_d)
    }

    /// mu^(e^) <= mu^(d^); coincides with the strict comparison.
    pub fn hat_le_framed(&self, e: &DimVector) -> Result<bool> {
        self.hat_lt_framed(e)
    }

    /// Whether mu^(x) = mu^(d^) for some 0 < x < d^ (never: d^ is coprime for
    /// Theta^). Computed by the scan over all 0 < x < d^ through the symbolic
    /// comparisons rather than asserted.
    pub fn extended_is_coprime(&self) -> Result<bool> {
        for x in DimVector::box_iter(&self.extended_dim) {
            if x.is_zero() || x == self.extended_dim {
                continue;
            }
            let framed = x.get(x.len() - 1) == 1;
            let e = DimVector::new(x.entries()[..x.len() - 1].to_vec());
            let equal = if framed {
                // mu^(e^) = mu^(d^) would need <= without <
                self.hat_le_framed(&e)? && !self.hat_lt_framed(&e)?
            } else {
                if e.is_zero() {
                    continue;
                }
                self.hat_le(&e)? && !self.hat_lt(&e)?
            };
            if equal {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Debugging surface: the normalized Theta extended by
    /// Theta^_infinity = epsilon = 1/2, which satisfies the bound epsilon <= 1
    /// required for the symbolic comparisons to be faithful.
    pub fn explicit_theta_hat(&self) -> Stability {
        let mut weights = self.normalized_theta.0.clone();
        weights.push(Rational64::new(1, 2));
        Stability(weights)
    }

    fn check_base(&self, e: &DimVector) -> Result<()> {
        if e.is_zero() || !e.le(&self.base_dim) {
            return Err(Error::Precondition(format!(
                "hat comparison requires 0 != e <= d, got e = {e}"
            )));
        }
        Ok(())
    }
}

/// A polystable type: stable summand dimension vectors with multiplicities.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolystableType {
    parts: Vec<DimVector>,
    multiplicities: Vec<u32>,
}

impl PolystableType {
    pub fn new(parts: Vec<DimVector>, multiplicities: Vec<u32>) -> Result<PolystableType> {
        if parts.len() != multiplicities.len() {
            return Err(Error::Input(
                "polystable type needs one multiplicity per part".into(),
            ));
        }
        if parts.is_empty() {
            return Err(Error::Input(
                "polystable type needs at least one part".into(),
            ));
        }
        if parts.iter().any(DimVector::is_zero) {
            return Err(Error::Input("polystable type parts must be nonzero".into()));
        }
        if multiplicities.contains(&0) {
            return Err(Error::Input("multiplicities must be positive".into()));
        }
        Ok(PolystableType {
            parts,
            multiplicities,
        })
    }

    pub fn parts(&self) -> &[DimVector] {
        &self.parts
    }

    pub fn multiplicities(&self) -> &[u32] {
        &self.multiplicities
    }

    /// The ambient dimension vector sum_k z_k d^k.
    pub fn ambient(&self) -> DimVector {
        let len = self.parts[0].len();
        let mut total = DimVector::zero(len);
        for (part, &z) in self.parts.iter().zip(&self.multiplicities) {
            for _ in 0..z {
                total = total.add(part);
            }
        }
        total
    }
}

/// The local quiver datum (Q_xi, d_xi, n_xi) of a polystable type:
/// delta_{k,l} - <d^k, d^l> arrows from k to l, dimensions z_k, framings
/// n . d^k.
pub fn local_quiver(
    quiver: &Quiver,
    n: &DimVector,
    xi: &PolystableType,
) -> Result<(Quiver, DimVector, DimVector)> {
    quiver.check_vector(n)?;
    let s = xi.parts.len();
    let mut pairs = Vec::new();
    for k in 0..s {
        for l in 0..s {
            let delta = if k == l { 1 } else { 0 };
            let count = delta - euler_form(quiver, &xi.parts[k], &xi.parts[l])?;
            if count < 0 {
                return Err(Error::InfeasibleType(format!(
                    "<d^{}, d^{}> = {} exceeds delta = {}",
                    k + 1,
                    l + 1,
                    delta - count,
                    delta
                )));
            }
            for _ in 0..count {
                pairs.push((k, l));
            }
        }
    }
    let names = (1..=s).map(|k| k.to_string()).collect();
    let local = Quiver::new(names, pairs)?;
    let d_xi = DimVector::new(xi.multiplicities.clone());
    let n_xi = DimVector::new(
        xi.parts
            .iter()
            .map(|p| {
                let v = n.dot(p);
                u32::try_from(v).expect("framing pairing fits in u32")
            })
            .collect(),
    );
    Ok((local, d_xi, n_xi))
}
