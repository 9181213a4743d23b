//! Cell decomposition of Hilbert schemes of path algebras: covering forests,
//! coronas, cell dimensions and relation schemas, and the bijection between
//! forests and multipartitions.
//!
//! The covering forest F_n(Q) has n_q copies of the tree T_q of paths out of
//! q. A cell is indexed by a subforest S (per copy, a prefix-closed set of
//! paths) whose vertex types count to d. Its corona consists of the children
//! just outside S together with the roots of the omitted trees; the cell
//! dimension counts, over corona vertices c, the forest vertices of the same
//! type below c.

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::hilbert::{multipartitions, Multipartition};
use crate::qpoly::PolyQ;
use crate::quiver::{DimVector, Quiver};

/// A path in Q starting at `root`; consecutive arrows compose.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PathWord {
    root: usize,
    arrows: Vec<usize>,
}

impl PathWord {
    pub fn empty(root: usize) -> PathWord {
        PathWord {
            root,
            arrows: Vec::new(),
        }
    }

    pub fn extended(&self, quiver: &Quiver, arrow: usize) -> PathWord {
        debug_assert_eq!(quiver.arrow(arrow).source, self.target(quiver));
        let mut arrows = self.arrows.clone();
        arrows.push(arrow);
        PathWord {
            root: self.root,
            arrows,
        }
    }

    pub fn root(&self) -> usize {
        self.root
    }

    pub fn arrows(&self) -> &[usize] {
        &self.arrows
    }

    pub fn len(&self) -> usize {
        self.arrows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.arrows.is_empty()
    }

    /// The type t(w): the target of the last arrow, or the root for the
    /// empty word.
    pub fn target(&self, quiver: &Quiver) -> usize {
        self.arrows
            .last()
            .map_or(self.root, |&a| quiver.arrow(a).target)
    }

    pub fn parent(&self) -> Option<PathWord> {
        if self.arrows.is_empty() {
            return None;
        }
        Some(PathWord {
            root: self.root,
            arrows: self.arrows[..self.arrows.len() - 1].to_vec(),
        })
    }
}

/// Word order: first differing arrow decides (by the fixed arrow order),
/// otherwise the proper prefix is smaller.
pub fn word_cmp(quiver: &Quiver, a: &PathWord, b: &PathWord) -> Ordering {
    debug_assert_eq!(a.root, b.root);
    for (x, y) in a.arrows.iter().zip(&b.arrows) {
        match quiver.arrow_rank(*x).cmp(&quiver.arrow_rank(*y)) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    a.arrows.len().cmp(&b.arrows.len())
}

/// One vertex of the covering forest: copy `copy` (1-based) of the tree at
/// `vertex`, at path `word`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForestVertex {
    pub vertex: usize,
    pub copy: usize,
    pub word: PathWord,
}

/// The total order on forest vertices: tree vertex, then copy, then word.
pub fn vertex_cmp(quiver: &Quiver, a: &ForestVertex, b: &ForestVertex) -> Ordering {
    a.vertex
        .cmp(&b.vertex)
        .then(a.copy.cmp(&b.copy))
        .then_with(|| word_cmp(quiver, &a.word, &b.word))
}

impl ForestVertex {
    /// `(a,1,αβ)` with the empty word rendered `()`.
    pub fn display(&self, quiver: &Quiver) -> String {
        format!(
            "({},{},{})",
            quiver.vertex_name(self.vertex),
            self.copy,
            if self.word.is_empty() {
                "()".to_string()
            } else {
                format_word(&self.word)
            }
        )
    }
}

/// Display label for an arrow: Greek letters in input order, then `a24`, ...
pub fn arrow_label(index: usize) -> String {
    const GREEK: [&str; 24] = [
        "α", "β", "γ", "δ", "ε", "ζ", "η", "θ", "ι", "κ", "λ", "μ", "ν", "ξ", "ο", "π", "ρ", "σ",
        "τ", "υ", "φ", "χ", "ψ", "ω",
    ];
    GREEK
        .get(index)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("a{index}"))
}

pub fn format_word(w: &PathWord) -> String {
    w.arrows().iter().map(|&a| arrow_label(a)).collect()
}

/// A subforest of F_n(Q): one prefix-closed set of words per (vertex, copy)
/// slot, each stored sorted in word order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subforest {
    slots: Vec<(usize, usize)>,
    trees: Vec<Vec<PathWord>>,
}

fn slot_list(n: &DimVector) -> Vec<(usize, usize)> {
    let mut slots = Vec::new();
    for v in 0..n.len() {
        for copy in 1..=n.get(v) {
            slots.push((v, copy as usize));
        }
    }
    slots
}

impl Subforest {
    pub fn empty(n: &DimVector) -> Subforest {
        let slots = slot_list(n);
        let trees = vec![Vec::new(); slots.len()];
        Subforest { slots, trees }
    }

    pub fn slots(&self) -> &[(usize, usize)] {
        &self.slots
    }

    pub fn tree(&self, slot: usize) -> &[PathWord] {
        &self.trees[slot]
    }

    pub fn slot_of(&self, vertex: usize, copy: usize) -> Option<usize> {
        self.slots
            .iter()
            .position(|&(v, c)| v == vertex && c == copy)
    }

    pub fn contains(&self, quiver: &Quiver, slot: usize, word: &PathWord) -> bool {
        self.trees[slot]
            .binary_search_by(|w| word_cmp(quiver, w, word))
            .is_ok()
    }

    fn insert(&mut self, quiver: &Quiver, slot: usize, word: PathWord) {
        if let Err(pos) = self.trees[slot].binary_search_by(|w| word_cmp(quiver, w, &word)) {
            self.trees[slot].insert(pos, word);
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.trees.iter().map(Vec::len).sum()
    }

    /// All forest vertices, slot by slot.
    pub fn vertices(&self) -> impl Iterator<Item = ForestVertex> + '_ {
        self.slots
            .iter()
            .zip(&self.trees)
            .flat_map(|(&(vertex, copy), tree)| {
                tree.iter().map(move |w| ForestVertex {
                    vertex,
                    copy,
                    word: w.clone(),
                })
            })
    }

    /// How many forest vertices have each type.
    pub fn type_counts(&self, quiver: &Quiver) -> DimVector {
        let mut counts = vec![0u32; quiver.vertex_count()];
        for tree in &self.trees {
            for w in tree {
                counts[w.target(quiver)] += 1;
            }
        }
        DimVector::new(counts)
    }

    pub fn is_prefix_closed(&self, quiver: &Quiver) -> bool {
        self.trees.iter().enumerate().all(|(slot, tree)| {
            tree.iter().all(|w| match w.parent() {
                None => true,
                Some(p) => self.contains(quiver, slot, &p),
            })
        })
    }

    /// Compact notation: each tree as its nonempty words, `()` for a root-only
    /// tree, `∅` for an empty one.
    pub fn display(&self) -> String {
        let parts: Vec<String> = self
            .trees
            .iter()
            .map(|tree| {
                if tree.is_empty() {
                    "∅".to_string()
                } else {
                    let words: Vec<String> = tree
                        .iter()
                        .filter(|w| !w.is_empty())
                        .map(format_word)
                        .collect();
                    if words.is_empty() {
                        "()".to_string()
                    } else {
                        format!("({})", words.join(","))
                    }
                }
            })
            .collect();
        format!("({})", parts.join(","))
    }
}

/// The corona C(S): children of forest vertices outside S, plus the root of
/// every empty tree. Sorted in the vertex order.
pub fn corona(quiver: &Quiver, forest: &Subforest) -> Vec<ForestVertex> {
    let mut out = Vec::new();
    for (slot, &(vertex, copy)) in forest.slots().iter().enumerate() {
        let tree = forest.tree(slot);
        if tree.is_empty() {
            out.push(ForestVertex {
                vertex,
                copy,
                word: PathWord::empty(vertex),
            });
            continue;
        }
        for w in tree {
            for &arrow in quiver.arrows_from(w.target(quiver)) {
                let child = w.extended(quiver, arrow);
                if !forest.contains(quiver, slot, &child) {
                    out.push(ForestVertex {
                        vertex,
                        copy,
                        word: child,
                    });
                }
            }
        }
    }
    out.sort_by(|a, b| vertex_cmp(quiver, a, b));
    out
}

/// The multipartition of a forest: lambda^j_m counts corona j-vertices with
/// at least m forest j-vertices above them.
pub fn phi(quiver: &Quiver, forest: &Subforest) -> Result<Multipartition> {
    let d = forest.type_counts(quiver);
    let corona = corona(quiver, forest);
    let forest_vertices: Vec<ForestVertex> = forest.vertices().collect();
    let mut parts = Vec::with_capacity(quiver.vertex_count());
    for j in 0..quiver.vertex_count() {
        let dj = d.get(j);
        let larger_counts: Vec<u32> = corona
            .iter()
            .filter(|c| c.word.target(quiver) == j)
            .map(|c| {
                forest_vertices
                    .iter()
                    .filter(|s| {
                        s.word.target(quiver) == j && vertex_cmp(quiver, c, s) == Ordering::Less
                    })
                    .count() as u32
            })
            .collect();
        let lambda: Vec<u32> = (1..=dj)
            .map(|m| larger_counts.iter().filter(|&&c| c >= m).count() as u32)
            .collect();
        parts.push(lambda);
    }
    Multipartition::new(parts)
}

/// The inverse of `phi`: grow the forest one vertex at a time, always taking
/// the globally smallest admissible corona vertex. When r vertices of type j
/// are already placed, the candidate of type j skips lambda^j_{d_j - r}
/// corona j-vertices (exactly the final corona vertices that stay below the
/// next forest j-vertex); candidates of other types are never smaller than
/// their own next forest vertex, so the global minimum inserts vertices in
/// increasing order. phi(psi(lambda)) = lambda is asserted on every call.
pub fn psi(
    quiver: &Quiver,
    d: &DimVector,
    n: &DimVector,
    lambda: &Multipartition,
) -> Result<Subforest> {
    let v = quiver.vertex_count();
    if lambda.parts().len() != v {
        return Err(Error::Input(
            "multipartition does not match the vertex set".into(),
        ));
    }
    for j in 0..v {
        if lambda.vertex_parts(j).len() != d.get(j) as usize {
            return Err(Error::Input(format!(
                "multipartition needs exactly {} parts at vertex {}",
                d.get(j),
                quiver.vertex_name(j)
            )));
        }
    }
    let mut forest = Subforest::empty(n);
    let mut placed = vec![0u32; v];
    for _ in 0..d.total() {
        let boundary = corona(quiver, &forest);
        let mut best: Option<ForestVertex> = None;
        for j in 0..v {
            if placed[j] >= d.get(j) {
                continue;
            }
            let skip = lambda.vertex_parts(j)[(d.get(j) - placed[j]) as usize - 1] as usize;
            let candidate = boundary
                .iter()
                .filter(|c| c.word.target(quiver) == j)
                .nth(skip);
            if let Some(c) = candidate {
                let better = match &best {
                    None => true,
                    Some(b) => vertex_cmp(quiver, c, b) == Ordering::Less,
                };
                if better {
                    best = Some(c.clone());
                }
            }
        }
        let Some(next) = best else {
            return Err(Error::Internal(format!(
                "corona exhausted while constructing the forest of {}",
                lambda.display()
            )));
        };
        placed[next.word.target(quiver)] += 1;
        let slot = forest
            .slot_of(next.vertex, next.copy)
            .expect("corona vertices live in forest slots");
        forest.insert(quiver, slot, next.word);
    }
    let roundtrip = phi(quiver, &forest)?;
    if &roundtrip != lambda {
        return Err(Error::Internal(format!(
            "phi(psi({})) = {}",
            lambda.display(),
            roundtrip.display()
        )));
    }
    Ok(forest)
}

/// One relation of a cell: the corona vertex and the smaller same-type forest
/// vertices spanning its target. Vacuous when the span already contains all
/// d_{t(c)} basis vectors of that type.
#[derive(Clone, Debug)]
pub struct CellRelation {
    pub corona_vertex: ForestVertex,
    pub span: Vec<ForestVertex>,
    pub vacuous: bool,
}

impl CellRelation {
    /// `(a,1,αβα) ∈ ⟨(a,1,α)⟩`, with the empty span rendered `⟨⟩ = 0`.
    pub fn display(&self, quiver: &Quiver) -> String {
        if self.span.is_empty() {
            format!("{} ∈ ⟨⟩ = 0", self.corona_vertex.display(quiver))
        } else {
            format!(
                "{} ∈ ⟨{}⟩",
                self.corona_vertex.display(quiver),
                self.span
                    .iter()
                    .map(|s| s.display(quiver))
                    .collect::<Vec<_>>()
                    .join(",")
            )
        }
    }
}

/// The relations defining the cell of a forest, one per corona vertex in the
/// vertex order.
pub fn cell_relations(quiver: &Quiver, forest: &Subforest) -> Vec<CellRelation> {
    let d = forest.type_counts(quiver);
    let forest_vertices: Vec<ForestVertex> = forest.vertices().collect();
    corona(quiver, forest)
        .into_iter()
        .map(|c| {
            let t = c.word.target(quiver);
            let mut span: Vec<ForestVertex> = forest_vertices
                .iter()
                .filter(|s| {
                    s.word.target(quiver) == t && vertex_cmp(quiver, s, &c) == Ordering::Less
                })
                .cloned()
                .collect();
            span.sort_by(|a, b| vertex_cmp(quiver, a, b));
            let vacuous = span.len() == d.get(t) as usize;
            CellRelation {
                corona_vertex: c,
                span,
                vacuous,
            }
        })
        .collect()
}

/// dim Z_S: the number of free span coefficients over all corona vertices.
pub fn cell_dimension(quiver: &Quiver, forest: &Subforest) -> u64 {
    cell_relations(quiver, forest)
        .iter()
        .map(|r| r.span.len() as u64)
        .sum()
}

/// Tree order: more vertices first, then the first differing word.
fn tree_cmp(quiver: &Quiver, a: &[PathWord], b: &[PathWord]) -> Ordering {
    b.len().cmp(&a.len()).then_with(|| {
        for (x, y) in a.iter().zip(b) {
            match word_cmp(quiver, x, y) {
                Ordering::Equal => {}
                other => return other,
            }
        }
        Ordering::Equal
    })
}

/// Forest order: slotwise lexicographic extension of the tree order. Exposed
/// for sorting listings; no computation depends on it.
pub fn forest_cmp(quiver: &Quiver, a: &Subforest, b: &Subforest) -> Ordering {
    debug_assert_eq!(a.slots(), b.slots());
    for (ta, tb) in a.trees.iter().zip(&b.trees) {
        match tree_cmp(quiver, ta, tb) {
            Ordering::Equal => {}
            other => return other,
        }
    }
    Ordering::Equal
}

/// All prefix-closed trees rooted at `vertex` whose typed vertex counts fit
/// in `budget`, paired with their counts.
fn enumerate_trees(
    quiver: &Quiver,
    vertex: usize,
    budget: &DimVector,
) -> Vec<(Vec<PathWord>, DimVector)> {
    let mut out = vec![(Vec::new(), DimVector::zero(budget.len()))];
    if budget.get(vertex) == 0 {
        return out;
    }
    let mut tree = vec![PathWord::empty(vertex)];
    let mut used = DimVector::unit(budget.len(), vertex);
    grow_tree(quiver, budget, &mut tree, &mut used, 0, &mut out);
    out
}

/// Depth-first growth: position `from` decides which children of tree[from]
/// to keep. Each prefix-closed set is reached exactly once because a tree is
/// determined by the kept-children sets of its vertices.
fn grow_tree(
    quiver: &Quiver,
    budget: &DimVector,
    tree: &mut Vec<PathWord>,
    used: &mut DimVector,
    from: usize,
    out: &mut Vec<(Vec<PathWord>, DimVector)>,
) {
    if from == tree.len() {
        out.push((tree.clone(), used.clone()));
        return;
    }
    let word = tree[from].clone();
    let arrows: Vec<usize> = quiver.arrows_from(word.target(quiver)).to_vec();
    choose_children(quiver, budget, tree, used, from, &word, &arrows, 0, out);
}

#[allow(clippy::too_many_arguments)]
fn choose_children(
    quiver: &Quiver,
    budget: &DimVector,
    tree: &mut Vec<PathWord>,
    used: &mut DimVector,
    from: usize,
    word: &PathWord,
    arrows: &[usize],
    arrow_pos: usize,
    out: &mut Vec<(Vec<PathWord>, DimVector)>,
) {
    if arrow_pos == arrows.len() {
        grow_tree(quiver, budget, tree, used, from + 1, out);
        return;
    }
    // skip this child
    choose_children(
        quiver,
        budget,
        tree,
        used,
        from,
        word,
        arrows,
        arrow_pos + 1,
        out,
    );
    // or keep it, budget permitting
    let arrow = arrows[arrow_pos];
    let t = quiver.arrow(arrow).target;
    if used.get(t) < budget.get(t) {
        tree.push(word.extended(quiver, arrow));
        bump(used, t, 1);
        choose_children(
            quiver,
            budget,
            tree,
            used,
            from,
            word,
            arrows,
            arrow_pos + 1,
            out,
        );
        tree.pop();
        bump(used, t, -1);
    }
}

fn bump(v: &mut DimVector, i: usize, delta: i32) {
    let mut entries = v.entries().to_vec();
    entries[i] = (entries[i] as i32 + delta) as u32;
    *v = DimVector::new(entries);
}

/// Direct bounded search for all subforests with type counts exactly d.
fn type_correct_subforests(quiver: &Quiver, d: &DimVector, n: &DimVector) -> Vec<Subforest> {
    fn rec(
        quiver: &Quiver,
        slots: &[(usize, usize)],
        remaining: &DimVector,
        trees: &mut Vec<Vec<PathWord>>,
        out: &mut Vec<Subforest>,
    ) {
        if trees.len() == slots.len() {
            if remaining.is_zero() {
                let mut sorted = trees.clone();
                for tree in &mut sorted {
                    tree.sort_by(|a, b| word_cmp(quiver, a, b));
                }
                out.push(Subforest {
                    slots: slots.to_vec(),
                    trees: sorted,
                });
            }
            return;
        }
        let (vertex, _) = slots[trees.len()];
        for (tree, counts) in enumerate_trees(quiver, vertex, remaining) {
            let left = remaining.checked_sub(&counts).expect("counts <= budget");
            trees.push(tree);
            rec(quiver, slots, &left, trees, out);
            trees.pop();
        }
    }
    let slots = slot_list(n);
    let mut out = Vec::new();
    rec(quiver, &slots, d, &mut Vec::new(), &mut out);
    out
}

/// The forests indexing the cells, computed as the psi-image of S_{d,n} and
/// cross-checked against the direct enumeration of all type-correct
/// subforests. A mismatch between the two computations is reported as an
/// error, never resolved silently. Sorted in the forest order.
pub fn enumerate_forests(quiver: &Quiver, d: &DimVector, n: &DimVector) -> Result<Vec<Subforest>> {
    let mut image = Vec::new();
    for lambda in multipartitions(quiver, d, n)? {
        image.push(psi(quiver, d, n, &lambda)?);
    }
    image.sort_by(|a, b| forest_cmp(quiver, a, b));

    let mut direct = type_correct_subforests(quiver, d, n);
    direct.sort_by(|a, b| forest_cmp(quiver, a, b));
    if image != direct {
        return Err(Error::Internal(format!(
            "psi(S_{{d,n}}) has {} forests but the direct enumeration found {} type-correct ones",
            image.len(),
            direct.len()
        )));
    }
    Ok(image)
}

/// One row of the cell listing.
#[derive(Clone, Debug)]
pub struct CellDescriptor {
    pub forest: Subforest,
    pub relations: Vec<CellRelation>,
    pub multipartition: Multipartition,
    pub dimension: u64,
}

/// The full cell listing in the forest order, one descriptor per cell.
pub fn cell_report(quiver: &Quiver, d: &DimVector, n: &DimVector) -> Result<Vec<CellDescriptor>> {
    let forests = enumerate_forests(quiver, d, n)?;
    forests
        .into_iter()
        .map(|forest| {
            let relations = cell_relations(quiver, &forest);
            let multipartition = phi(quiver, &forest)?;
            let dimension = relations.iter().map(|r| r.span.len() as u64).sum();
            Ok(CellDescriptor {
                forest,
                relations,
                multipartition,
                dimension,
            })
        })
        .collect()
}

/// The cell-based Poincaré polynomial: sum of q^{dim Z_S} over the cells.
pub fn hilb_poincare_cells(quiver: &Quiver, d: &DimVector, n: &DimVector) -> Result<PolyQ> {
    let mut acc = PolyQ::zero();
    for forest in enumerate_forests(quiver, d, n)? {
        acc = &acc + &PolyQ::q_power(cell_dimension(quiver, &forest) as usize);
    }
    Ok(acc)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dv(entries: &[u32]) -> DimVector {
        DimVector::new(entries.to_vec())
    }

    fn two_cycle() -> Quiver {
        Quiver::from_edges(&["a", "b"], &[(0, 1), (1, 0)])
    }

    /// Build a forest from slot word lists given as arrow-index sequences.
    fn forest(quiver: &Quiver, n: &DimVector, words: &[&[&[usize]]]) -> Subforest {
        let mut f = Subforest::empty(n);
        for (slot, tree) in words.iter().enumerate() {
            let (vertex, _) = f.slots()[slot];
            for w in tree.iter() {
                let mut word = PathWord::empty(vertex);
                for &a in w.iter() {
                    word = word.extended(quiver, a);
                }
                f.insert(quiver, slot, word);
            }
        }
        assert!(f.is_prefix_closed(quiver));
        f
    }

    /// The forest with S_{a,1} = {(), α, αβ} and S_{b,1} = {()}.
    fn chain_and_root(quiver: &Quiver) -> Subforest {
        forest(
            quiver,
            &dv(&[2, 2]),
            &[&[&[], &[0], &[0, 1]], &[], &[&[]], &[]],
        )
    }

    #[test]
    fn vertex_order_examples() {
        let q = two_cycle();
        let a1 = |arrows: &[usize]| ForestVertex {
            vertex: 0,
            copy: 1,
            word: arrows
                .iter()
                .fold(PathWord::empty(0), |w, &x| w.extended(&q, x)),
        };
        // prefix is smaller
        assert_eq!(vertex_cmp(&q, &a1(&[0]), &a1(&[0, 1, 0])), Ordering::Less);
        // copy index dominates the word
        let other_copy = ForestVertex {
            vertex: 0,
            copy: 2,
            word: PathWord::empty(0),
        };
        assert_eq!(vertex_cmp(&q, &a1(&[0, 1]), &other_copy), Ordering::Less);
        // vertex dominates everything: (a,1,αβα) < (b,1,())
        let b_root = ForestVertex {
            vertex: 1,
            copy: 1,
            word: PathWord::empty(1),
        };
        assert_eq!(vertex_cmp(&q, &a1(&[0, 1, 0]), &b_root), Ordering::Less);
    }

    #[test]
    fn corona_of_chain_and_root() {
        let q = two_cycle();
        let c = corona(&q, &chain_and_root(&q));
        let shown: Vec<String> = c.iter().map(|v| v.display(&q)).collect();
        assert_eq!(shown, vec!["(a,1,αβα)", "(a,2,())", "(b,1,β)", "(b,2,())"]);
    }

    #[test]
    fn corona_of_empty_forest_is_all_roots() {
        let q = two_cycle();
        let f = Subforest::empty(&dv(&[1, 1]));
        let c = corona(&q, &f);
        let shown: Vec<String> = c.iter().map(|v| v.display(&q)).collect();
        assert_eq!(shown, vec!["(a,1,())", "(b,1,())"]);
    }

    #[test]
    fn corona_type_counts() {
        // |C_j| = n_j - d_j + sum_i a_{ij} d_i for type-correct forests
        let q = two_cycle();
        let d = dv(&[2, 2]);
        let n = dv(&[2, 2]);
        for f in enumerate_forests(&q, &d, &n).unwrap() {
            let c = corona(&q, &f);
            for j in 0..2 {
                let count = c.iter().filter(|v| v.word.target(&q) == j).count() as i64;
                let expect = n.get(j) as i64 - d.get(j) as i64
                    + (0..2)
                        .map(|i| q.arrow_count(i, j) as i64 * d.get(i) as i64)
                        .sum::<i64>();
                assert_eq!(count, expect);
            }
        }
    }

    #[test]
    fn phi_on_sample_forests() {
        let q = two_cycle();
        let n = dv(&[2, 2]);
        // one chain filling the first tree
        let full = forest(&q, &n, &[&[&[], &[0], &[0, 1], &[0, 1, 0]], &[], &[], &[]]);
        assert_eq!(phi(&q, &full).unwrap().display(), "(0,0 | 0,0)");
        assert_eq!(
            phi(&q, &chain_and_root(&q)).unwrap().display(),
            "(0,0 | 1,0)"
        );
        // one chain filling the last tree
        let last = forest(&q, &n, &[&[], &[], &[], &[&[], &[1], &[1, 0], &[1, 0, 1]]]);
        assert_eq!(phi(&q, &last).unwrap().display(), "(2,2 | 1,1)");
    }

    #[test]
    fn psi_reconstructs_sample_forests() {
        let q = two_cycle();
        let d = dv(&[2, 2]);
        let n = dv(&[2, 2]);
        let lambda = |parts: [&[u32]; 2]| {
            Multipartition::new(vec![parts[0].to_vec(), parts[1].to_vec()]).unwrap()
        };
        let got = psi(&q, &d, &n, &lambda([&[0, 0], &[1, 0]])).unwrap();
        assert_eq!(got, chain_and_root(&q));
        assert_eq!(got.display(), "((α,αβ),∅,(),∅)");

        let zero = psi(&q, &d, &n, &lambda([&[0, 0], &[0, 0]])).unwrap();
        assert_eq!(zero.display(), "((α,αβ,αβα),∅,∅,∅)");

        let top = psi(&q, &d, &n, &lambda([&[2, 2], &[1, 1]])).unwrap();
        assert_eq!(top.display(), "(∅,∅,∅,(β,βα,βαβ))");

        // two multipartitions whose forests differ only in which copy of
        // the b-tree carries the root
        let near = psi(&q, &d, &n, &lambda([&[1, 1], &[1, 0]])).unwrap();
        assert_eq!(near.display(), "(∅,(α,αβ),(),∅)");
        let far = psi(&q, &d, &n, &lambda([&[1, 1], &[2, 0]])).unwrap();
        assert_eq!(far.display(), "(∅,(α,αβ),∅,())");

        // the loop quiver root case
        for m in 1..=3 {
            let lq = Quiver::from_edges(&["x"], &vec![(0, 0); m]);
            let f = psi(
                &lq,
                &dv(&[1]),
                &dv(&[1]),
                &Multipartition::new(vec![vec![0]]).unwrap(),
            )
            .unwrap();
            assert_eq!(f.display(), "(())");
        }
    }

    #[test]
    fn psi_rejects_multipartitions_outside_s() {
        // for the 0-loop quiver with d = n = (1), S = {(0)}; lambda = (1)
        // exhausts the corona
        let q = Quiver::from_edges(&["x"], &[]);
        let bad = Multipartition::new(vec![vec![1]]).unwrap();
        let err = psi(&q, &dv(&[1]), &dv(&[1]), &bad).unwrap_err();
        assert!(matches!(err, crate::error::Error::Internal(_)));
    }

    #[test]
    fn cell_dimensions_on_sample_forests() {
        let q = two_cycle();
        let n = dv(&[2, 2]);
        let full = forest(&q, &n, &[&[&[], &[0], &[0, 1], &[0, 1, 0]], &[], &[], &[]]);
        assert_eq!(cell_dimension(&q, &full), 8);
        assert_eq!(cell_dimension(&q, &chain_and_root(&q)), 7);
        let last = forest(&q, &n, &[&[], &[], &[], &[&[], &[1], &[1, 0], &[1, 0, 1]]]);
        assert_eq!(cell_dimension(&q, &last), 2);
    }

    #[test]
    fn relations_on_sample_forests() {
        let q = two_cycle();
        let n = dv(&[2, 2]);
        // one non-vacuous relation: (a,1,αβα) ∈ <(a,1,α)>
        let rel2: Vec<CellRelation> = cell_relations(&q, &chain_and_root(&q))
            .into_iter()
            .filter(|r| !r.vacuous)
            .collect();
        assert_eq!(rel2.len(), 1);
        assert_eq!(rel2[0].display(&q), "(a,1,αβα) ∈ ⟨(a,1,α)⟩");
        // all relations vacuous on the full chain
        let full = forest(&q, &n, &[&[&[], &[0], &[0, 1], &[0, 1, 0]], &[], &[], &[]]);
        assert!(cell_relations(&q, &full).iter().all(|r| r.vacuous));
        // an empty span: (a,1,α) ∈ <> = 0
        let spread = forest(&q, &n, &[&[&[]], &[&[], &[0]], &[&[]], &[]]);
        let rel9: Vec<CellRelation> = cell_relations(&q, &spread)
            .into_iter()
            .filter(|r| !r.vacuous)
            .collect();
        assert_eq!(rel9.len(), 1);
        assert_eq!(rel9[0].display(&q), "(a,1,α) ∈ ⟨⟩ = 0");
    }

    #[test]
    fn forest_enumeration_counts_27_cells() {
        let q = two_cycle();
        let forests = enumerate_forests(&q, &dv(&[2, 2]), &dv(&[2, 2])).unwrap();
        assert_eq!(forests.len(), 27);
        // first and last forests in the forest order
        assert_eq!(forests[0].display(), "((α,αβ,αβα),∅,∅,∅)");
        assert_eq!(forests[26].display(), "(∅,∅,∅,(β,βα,βαβ))");
    }

    #[test]
    fn forest_enumeration_edge_cases() {
        let q = two_cycle();
        let empty_d = enumerate_forests(&q, &dv(&[0, 0]), &dv(&[1, 1])).unwrap();
        assert_eq!(empty_d.len(), 1);
        assert_eq!(empty_d[0].vertex_count(), 0);

        let counter = Quiver::from_edges(&["i", "j"], &[(0, 0), (0, 1)]);
        let none = enumerate_forests(&counter, &dv(&[1, 0]), &dv(&[0, 1])).unwrap();
        assert!(none.is_empty());
    }

    #[test]
    fn cells_poincare_examples() {
        let q = two_cycle();
        assert_eq!(
            hilb_poincare_cells(&q, &dv(&[2, 2]), &dv(&[2, 2])).unwrap(),
            PolyQ::from_coeffs(vec![0, 0, 2, 4, 7, 6, 5, 2, 1])
        );
        assert_eq!(
            hilb_poincare_cells(&q, &dv(&[0, 0]), &dv(&[1, 1])).unwrap(),
            PolyQ::one()
        );
        for m in 0..=4 {
            let lq = Quiver::from_edges(&["x"], &vec![(0, 0); m]);
            assert_eq!(
                hilb_poincare_cells(&lq, &dv(&[1]), &dv(&[1])).unwrap(),
                PolyQ::q_power(m)
            );
        }
    }

    #[test]
    fn dimension_weight_law() {
        let q = two_cycle();
        let d = dv(&[2, 2]);
        let n = dv(&[2, 2]);
        let ambient = n.dot(&d) as i64 - crate::quiver::euler_form(&q, &d, &d).unwrap();
        for f in enumerate_forests(&q, &d, &n).unwrap() {
            let lam = phi(&q, &f).unwrap();
            assert_eq!(cell_dimension(&q, &f) as i64, ambient - lam.weight() as i64);
        }
    }
}
