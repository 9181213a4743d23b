//! Ordered decompositions of a dimension vector with slope conditions on the
//! partial sums.
//!
//! A decomposition d = d^1 + ... + d^s into nonzero vectors is mu-admissible
//! when every proper partial sum has slope strictly greater than mu(d), and
//! semi-admissible when every partial sum has slope at least mu(d). Parts are
//! enumerated depth-first in lexicographic order, pruning as soon as a
//! partial sum fails its condition.

use num_rational::Rational64;

use crate::error::{Error, Result};
use crate::quiver::{slope, DimVector, Stability};

/// An ordered decomposition of a dimension vector into nonzero parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition {
    parts: Vec<DimVector>,
    partial_sums: Vec<DimVector>,
}

impl Decomposition {
    fn new(parts: Vec<DimVector>) -> Decomposition {
        let mut sums = Vec::with_capacity(parts.len());
        let mut acc = DimVector::zero(parts.first().map_or(0, DimVector::len));
        for p in &parts {
            acc = acc.add(p);
            sums.push(acc.clone());
        }
        Decomposition {
            parts,
            partial_sums: sums,
        }
    }

    pub fn parts(&self) -> &[DimVector] {
        &self.parts
    }

    pub fn partial_sums(&self) -> &[DimVector] {
        &self.partial_sums
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
pub(crate) enum Mode {
    Admissible,
    SemiAdmissible,
}

/// Incremental hooks along the decomposition search tree. `push`/`pop` are
/// called with the part and the partial sum before it; `leaf` sees the full
/// decomposition and (in semi-admissible mode) the 1-based minimal index k0
/// with mu(d^1 + ... + d^k0) = mu(d).
pub(crate) trait DecompVisitor {
    fn push(&mut self, part: &DimVector, partial_before: &DimVector) -> Result<()>;
    fn pop(&mut self, part: &DimVector, partial_before: &DimVector);
    fn leaf(&mut self, parts: &[DimVector], k0: usize) -> Result<()>;
}

pub(crate) fn visit_decompositions(
    theta: &Stability,
    d: &DimVector,
    mode: Mode,
    visitor: &mut impl DecompVisitor,
) -> Result<()> {
    if d.is_zero() {
        return Err(Error::Precondition(
            "decompositions require a nonzero dimension vector".into(),
        ));
    }
    let mu_d = slope(theta, d)?;
    let mut parts = Vec::new();
    recurse(theta, d, mu_d, mode, d.clone(), None, &mut parts, visitor)
}

#[allow(clippy::too_many_arguments)]
fn recurse(
    theta: &Stability,
    d: &DimVector,
    mu_d: Rational64,
    mode: Mode,
    remaining: DimVector,
    k0: Option<usize>,
    parts: &mut Vec<DimVector>,
    visitor: &mut impl DecompVisitor,
) -> Result<()> {
    if remaining.is_zero() {
        return visitor.leaf(parts, k0.expect("final partial sum has slope mu(d)"));
    }
    let partial_before = d.checked_sub(&remaining).expect("remaining <= d");
    for part in DimVector::box_iter(&remaining) {
        if part.is_zero() {
            continue;
        }
        let partial = partial_before.add(&part);
        let mu = slope(theta, &partial)?;
        let last = partial == *d;
        match mode {
            Mode::Admissible => {
                if !last && mu <= mu_d {
                    continue;
                }
            }
            Mode::SemiAdmissible => {
                if mu < mu_d {
                    continue;
                }
            }
        }
        let k0_next = match k0 {
            Some(k) => Some(k),
            None if mu == mu_d => Some(parts.len() + 1),
            None => None,
        };
        visitor.push(&part, &partial_before)?;
        parts.push(part.clone());
        let next_remaining = remaining.checked_sub(&part).expect("part <= remaining");
        recurse(
            theta,
            d,
            mu_d,
            mode,
            next_remaining,
            k0_next,
            parts,
            visitor,
        )?;
        parts.pop();
        visitor.pop(&part, &partial_before);
    }
    Ok(())
}

struct Collector {
    out: Vec<(Decomposition, usize)>,
}

impl DecompVisitor for Collector {
    fn push(&mut self, _part: &DimVector, _before: &DimVector) -> Result<()> {
        Ok(())
    }
    fn pop(&mut self, _part: &DimVector, _before: &DimVector) {}
    fn leaf(&mut self, parts: &[DimVector], k0: usize) -> Result<()> {
        self.out.push((Decomposition::new(parts.to_vec()), k0));
        Ok(())
    }
}

/// All mu-admissible decompositions of d, in the fixed enumeration order.
/// The trivial decomposition (d) is always present.
pub fn admissible_decompositions(theta: &Stability, d: &DimVector) -> Result<Vec<Decomposition>> {
    let mut c = Collector { out: Vec::new() };
    visit_decompositions(theta, d, Mode::Admissible, &mut c)?;
    Ok(c.out.into_iter().map(|(dec, _)| dec).collect())
}

/// All semi-admissible decompositions of d paired with the minimal index k0
/// at which the partial-sum slope first equals mu(d).
pub fn semi_admissible_decompositions(
    theta: &Stability,
    d: &DimVector,
) -> Result<Vec<(Decomposition, usize)>> {
    let mut c = Collector { out: Vec::new() };
    visit_decompositions(theta, d, Mode::SemiAdmissible, &mut c)?;
    Ok(c.out)
}
