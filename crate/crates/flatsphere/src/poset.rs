//! Finite posets under the weak-map order: construction with full partial
//! order verification, Hasse diagrams, order complexes, monotone-map checks,
//! and isomorphism testing.

use std::collections::HashMap;

use serde::Serialize;
use serde_json::json;
use thiserror::Error;

use crate::chirotope::OrientedMatroid;
use crate::homology::SimplicialComplex;
use crate::sign::sign_leq;

#[derive(Debug, Error)]
pub enum PosetError {
    #[error("weak map comparison needs matching rank and ground size: ({r1},{n1}) vs ({r2},{n2})")]
    WeakMapMismatch { r1: usize, n1: usize, r2: usize, n2: usize },
    #[error("antisymmetry violation between elements {0} and {1}")]
    NotAntisymmetric(usize, usize),
    #[error("transitivity violation: {0} ≤ {1} ≤ {2} but not {0} ≤ {2}")]
    NotTransitive(usize, usize, usize),
    #[error("monotone map assignment has length {got}, expected {expected}")]
    AssignmentLength { got: usize, expected: usize },
}

/// Weak map order on oriented matroids of equal rank and ground size:
/// `N ≤ M` iff `χ_N ≤ χ_M` or `χ_N ≤ -χ_M` entrywise in the sign order.
///
/// The result does not depend on the chirotope representatives: negating
/// either side swaps the two disjuncts.
pub fn weak_leq(below: &OrientedMatroid, above: &OrientedMatroid) -> Result<bool, PosetError> {
    if below.rank() != above.rank() || below.ground() != above.ground() {
        return Err(PosetError::WeakMapMismatch {
            r1: below.rank(),
            n1: below.ground(),
            r2: above.rank(),
            n2: above.ground(),
        });
    }
    let a = below.chirotope().signs();
    let b = above.chirotope().signs();
    let direct = a.iter().zip(b).all(|(&x, &y)| sign_leq(x, y));
    let flipped = || a.iter().zip(b).all(|(&x, &y)| sign_leq(x, y.negate()));
    Ok(direct || flipped())
}

/// Row of a boolean relation, packed 64 per word.
#[derive(Clone, Debug, PartialEq, Eq)]
struct BitRow(Vec<u64>);

impl BitRow {
    fn new(n: usize) -> BitRow {
        BitRow(vec![0u64; n.div_ceil(64)])
    }

    fn get(&self, j: usize) -> bool {
        self.0[j / 64] >> (j % 64) & 1 == 1
    }

    fn set(&mut self, j: usize) {
        self.0[j / 64] |= 1 << (j % 64);
    }

    fn is_superset(&self, other: &BitRow) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & b == *b)
    }
}

/// Finite poset over elements of type `T`, with the full order relation and
/// its transitive reduction (Hasse covers) precomputed.
#[derive(Clone, Debug)]
pub struct FinitePoset<T> {
    elements: Vec<T>,
    /// up[i] has bit j set iff element i ≤ element j.
    up: Vec<BitRow>,
    /// Cover pairs (i, j): i < j with nothing strictly between.
    covers: Vec<(usize, usize)>,
}

impl<T> FinitePoset<T> {
    /// Build from elements and a comparison, verifying that the relation is
    /// a partial order (reflexivity is granted; antisymmetry and transitivity
    /// are checked, naming an offending pair or triple).
    pub fn build<F>(elements: Vec<T>, mut leq: F) -> Result<FinitePoset<T>, PosetError>
    where
        F: FnMut(&T, &T) -> bool,
    {
        let n = elements.len();
        let mut up: Vec<BitRow> = (0..n).map(|_| BitRow::new(n)).collect();
        for i in 0..n {
            up[i].set(i);
            for j in 0..n {
                if i != j && leq(&elements[i], &elements[j]) {
                    up[i].set(j);
                }
            }
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if up[i].get(j) && up[j].get(i) {
                    return Err(PosetError::NotAntisymmetric(i, j));
                }
            }
        }
        // Transitivity: i ≤ j implies up[j] ⊆ up[i].
        for i in 0..n {
            for j in 0..n {
                if i != j && up[i].get(j) && !up[i].is_superset(&up[j]) {
                    let k = (0..n)
                        .find(|&k| up[j].get(k) && !up[i].get(k))
                        .expect("witness exists");
                    return Err(PosetError::NotTransitive(i, j, k));
                }
            }
        }
        let mut covers = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if i == j || !up[i].get(j) {
                    continue;
                }
                let has_mid = (0..n).any(|k| k != i && k != j && up[i].get(k) && up[k].get(j));
                if !has_mid {
                    covers.push((i, j));
                }
            }
        }
        covers.sort_unstable();
        Ok(FinitePoset { elements, up, covers })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn element(&self, i: usize) -> &T {
        &self.elements[i]
    }

    pub fn elements(&self) -> &[T] {
        &self.elements
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].get(j)
    }

    pub fn lt(&self, i: usize, j: usize) -> bool {
        i != j && self.up[i].get(j)
    }

    /// Hasse cover pairs `(lower, upper)`, sorted.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.lt(j, i)))
            .collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len())
            .filter(|&i| (0..self.len()).all(|j| !self.lt(i, j)))
            .collect()
    }

    /// Index of the unique minimum, when one exists.
    pub fn minimum(&self) -> Option<usize> {
        let minima = self.minimal_elements();
        match minima.as_slice() {
            [m] if (0..self.len()).all(|j| self.leq(*m, j)) => Some(*m),
            _ => None,
        }
    }

    /// The order complex: vertices are element indices, k-simplices are the
    /// (k+1)-chains.
    pub fn order_complex(&self) -> SimplicialComplex {
        let n = self.len();
        let mut chains: Vec<Vec<usize>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = (0..n).map(|i| vec![i]).collect();
        while let Some(chain) = stack.pop() {
            let last = *chain.last().expect("nonempty");
            chains.push(chain.clone());
            for next in 0..n {
                if self.lt(last, next) {
                    let mut longer = chain.clone();
                    longer.push(next);
                    stack.push(longer);
                }
            }
        }
        SimplicialComplex::from_simplices(chains).expect("chains have distinct vertices")
    }

    /// Does `map` (an index assignment into `codomain`) preserve order?
    pub fn is_monotone_into<U>(
        &self,
        codomain: &FinitePoset<U>,
        map: &[usize],
    ) -> Result<bool, PosetError> {
        if map.len() != self.len() {
            return Err(PosetError::AssignmentLength {
                got: map.len(),
                expected: self.len(),
            });
        }
        for i in 0..self.len() {
            for j in 0..self.len() {
                if self.leq(i, j) && !codomain.leq(map[i], map[j]) {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Monotone self-map with `f(x) ≤ x` everywhere.
    pub fn is_descending_homotopy(&self, map: &[usize]) -> Result<bool, PosetError> {
        Ok(self.is_monotone_into(self, map)?
            && (0..self.len()).all(|i| self.leq(map[i], i)))
    }

    /// Monotone self-map with `f(x) ≥ x` everywhere.
    pub fn is_ascending_homotopy(&self, map: &[usize]) -> Result<bool, PosetError> {
        Ok(self.is_monotone_into(self, map)?
            && (0..self.len()).all(|i| self.leq(i, map[i])))
    }

    /// Idempotence of a self-map, reported separately from the homotopy
    /// checks (the homotopy argument needs only comparability with the
    /// identity).
    pub fn is_idempotent(&self, map: &[usize]) -> Result<bool, PosetError> {
        if map.len() != self.len() {
            return Err(PosetError::AssignmentLength {
                got: map.len(),
                expected: self.len(),
            });
        }
        Ok((0..self.len()).all(|i| map[map[i]] == map[i]))
    }

    /// Subposet on a set of indices, preserving their order.
    pub fn subposet(&self, indices: &[usize]) -> FinitePoset<T>
    where
        T: Clone,
    {
        let elements: Vec<T> = indices.iter().map(|&i| self.elements[i].clone()).collect();
        FinitePoset::build(elements, |_, _| false)
            .map(|mut p| {
                // Rebuild relation from the parent rather than re-deriving.
                let k = indices.len();
                let mut up: Vec<BitRow> = (0..k).map(|_| BitRow::new(k)).collect();
                for a in 0..k {
                    for b in 0..k {
                        if self.leq(indices[a], indices[b]) {
                            up[a].set(b);
                        }
                    }
                }
                let mut covers = Vec::new();
                for a in 0..k {
                    for b in 0..k {
                        if a == b || !up[a].get(b) {
                            continue;
                        }
                        let mid = (0..k).any(|c| c != a && c != b && up[a].get(c) && up[c].get(b));
                        if !mid {
                            covers.push((a, b));
                        }
                    }
                }
                covers.sort_unstable();
                p.up = up;
                p.covers = covers;
                p
            })
            .expect("restriction of a partial order is a partial order")
    }

    /// Order isomorphism test by backtracking over cover-degree refinement
    /// classes. Two finite posets are isomorphic iff their Hasse digraphs
    /// are, since the order is the reflexive-transitive closure of covers.
    ///
    /// The search maps vertices in a connectivity-first order (each new
    /// vertex has a maximal number of already-mapped Hasse neighbors), with
    /// candidates drawn from the mapped neighborhood where possible.
    pub fn is_isomorphic<U>(&self, other: &FinitePoset<U>) -> bool {
        if self.len() != other.len() || self.covers.len() != other.covers.len() {
            return false;
        }
        let n = self.len();
        if n == 0 {
            return true;
        }
        let labels_a = refine_labels(n, &self.covers);
        let labels_b = refine_labels(n, &other.covers);
        let mut count_a: HashMap<u64, usize> = HashMap::new();
        let mut count_b: HashMap<u64, usize> = HashMap::new();
        for &l in &labels_a {
            *count_a.entry(l).or_default() += 1;
        }
        for &l in &labels_b {
            *count_b.entry(l).or_default() += 1;
        }
        if count_a != count_b {
            return false;
        }
        let up_a = adjacency(n, &self.covers, false);
        let down_a = adjacency(n, &self.covers, true);
        let up_b = adjacency(n, &other.covers, false);
        let down_b = adjacency(n, &other.covers, true);
        // Ordering: repeatedly pick the unordered vertex with the most
        // ordered neighbors, breaking ties toward rarer labels.
        let mut order = Vec::with_capacity(n);
        let mut ordered = vec![false; n];
        let mut ordered_neighbors = vec![0usize; n];
        for _ in 0..n {
            let v = (0..n)
                .filter(|&v| !ordered[v])
                .max_by_key(|&v| {
                    (
                        ordered_neighbors[v],
                        std::cmp::Reverse(count_a[&labels_a[v]]),
                        std::cmp::Reverse(v),
                    )
                })
                .expect("unordered vertex remains");
            ordered[v] = true;
            order.push(v);
            for &w in up_a[v].iter().chain(&down_a[v]) {
                ordered_neighbors[w] += 1;
            }
        }
        let mut forward: Vec<Option<usize>> = vec![None; n];
        let mut backward: Vec<Option<usize>> = vec![None; n];
        struct Search<'a> {
            labels_a: &'a [u64],
            labels_b: &'a [u64],
            up_a: &'a [Vec<usize>],
            down_a: &'a [Vec<usize>],
            up_b: &'a [Vec<usize>],
            down_b: &'a [Vec<usize>],
            order: &'a [usize],
        }
        impl Search<'_> {
            fn feasible(&self, v: usize, w: usize, fwd: &[Option<usize>], bwd: &[Option<usize>]) -> bool {
                if self.labels_a[v] != self.labels_b[w]
                    || self.up_a[v].len() != self.up_b[w].len()
                    || self.down_a[v].len() != self.down_b[w].len()
                {
                    return false;
                }
                // Mapped neighbors must correspond in both directions.
                for &x in &self.up_a[v] {
                    if let Some(y) = fwd[x] {
                        if !self.up_b[w].contains(&y) {
                            return false;
                        }
                    }
                }
                for &x in &self.down_a[v] {
                    if let Some(y) = fwd[x] {
                        if !self.down_b[w].contains(&y) {
                            return false;
                        }
                    }
                }
                for &y in &self.up_b[w] {
                    if let Some(x) = bwd[y] {
                        if !self.up_a[v].contains(&x) {
                            return false;
                        }
                    }
                }
                for &y in &self.down_b[w] {
                    if let Some(x) = bwd[y] {
                        if !self.down_a[v].contains(&x) {
                            return false;
                        }
                    }
                }
                true
            }

            fn run(&self, depth: usize, fwd: &mut Vec<Option<usize>>, bwd: &mut Vec<Option<usize>>) -> bool {
                if depth == self.order.len() {
                    return true;
                }
                let v = self.order[depth];
                // Candidates: image neighborhood of a mapped neighbor when
                // one exists, otherwise all unmapped vertices.
                let candidates: Vec<usize> = if let Some(&x) =
                    self.up_a[v].iter().find(|&&x| fwd[x].is_some())
                {
                    self.down_b[fwd[x].expect("mapped")].clone()
                } else if let Some(&x) = self.down_a[v].iter().find(|&&x| fwd[x].is_some()) {
                    self.up_b[fwd[x].expect("mapped")].clone()
                } else {
                    (0..bwd.len()).collect()
                };
                for w in candidates {
                    if bwd[w].is_some() || !self.feasible(v, w, fwd, bwd) {
                        continue;
                    }
                    fwd[v] = Some(w);
                    bwd[w] = Some(v);
                    if self.run(depth + 1, fwd, bwd) {
                        return true;
                    }
                    fwd[v] = None;
                    bwd[w] = None;
                }
                false
            }
        }
        let search = Search {
            labels_a: &labels_a,
            labels_b: &labels_b,
            up_a: &up_a,
            down_a: &down_a,
            up_b: &up_b,
            down_b: &down_b,
            order: &order,
        };
        search.run(0, &mut forward, &mut backward)
    }

    /// DOT rendering of the Hasse diagram, edges pointing from lower to
    /// higher covers.
    pub fn to_dot<F>(&self, mut label: F) -> String
    where
        F: FnMut(&T) -> String,
    {
        let mut out = String::from("digraph poset {\n  rankdir=BT;\n");
        for (i, e) in self.elements.iter().enumerate() {
            out.push_str(&format!("  n{} [label=\"{}\"];\n", i, label(e)));
        }
        for &(lo, hi) in &self.covers {
            out.push_str(&format!("  n{lo} -> n{hi};\n"));
        }
        out.push_str("}\n");
        out
    }

    /// JSON rendering: labeled elements, cover pairs, minima, maxima.
    pub fn to_json<F>(&self, mut label: F) -> serde_json::Value
    where
        F: FnMut(&T) -> String,
    {
        json!({
            "elements": self.elements.iter().map(&mut label).collect::<Vec<String>>(),
            "covers": self.covers,
            "minimal": self.minimal_elements(),
            "maximal": self.maximal_elements(),
        })
    }
}

fn adjacency(n: usize, covers: &[(usize, usize)], down: bool) -> Vec<Vec<usize>> {
    let mut adj = vec![Vec::new(); n];
    for &(lo, hi) in covers {
        if down {
            adj[hi].push(lo);
        } else {
            adj[lo].push(hi);
        }
    }
    adj
}

/// Iterated degree refinement on the Hasse digraph; a cheap isomorphism
/// invariant per vertex.
fn refine_labels(n: usize, covers: &[(usize, usize)]) -> Vec<u64> {
    let up = adjacency(n, covers, false);
    let down = adjacency(n, covers, true);
    let mut labels: Vec<u64> = (0..n)
        .map(|i| hash_tuple(&[up[i].len() as u64, down[i].len() as u64]))
        .collect();
    for _ in 0..n.min(12) {
        let mut next = Vec::with_capacity(n);
        for i in 0..n {
            let mut ups: Vec<u64> = up[i].iter().map(|&j| labels[j]).collect();
            let mut downs: Vec<u64> = down[i].iter().map(|&j| labels[j]).collect();
            ups.sort_unstable();
            downs.sort_unstable();
            let mut parts = vec![labels[i], 0xB5A1];
            parts.extend(ups);
            parts.push(0xD0D0);
            parts.extend(downs);
            next.push(hash_tuple(&parts));
        }
        if next == labels {
            break;
        }
        labels = next;
    }
    labels
}

fn hash_tuple(xs: &[u64]) -> u64 {
    // FNV-1a.
    let mut h: u64 = 0xcbf29ce484222325;
    for &x in xs {
        for b in x.to_le_bytes() {
            h ^= b as u64;
            h = h.wrapping_mul(0x100000001b3);
        }
    }
    h
}

/// Build the weak-map poset of a set of oriented matroids (deduplicated and
/// canonically sorted first).
pub fn om_poset(mut elements: Vec<OrientedMatroid>) -> Result<FinitePoset<OrientedMatroid>, PosetError> {
    elements.sort();
    elements.dedup();
    FinitePoset::build(elements, |a, b| weak_leq(a, b).expect("uniform rank and ground"))
}

/// Serializable summary of a poset of oriented matroids.
#[derive(Clone, Debug, Serialize)]
pub struct PosetSummary {
    pub size: usize,
    pub covers: usize,
    pub minimal: Vec<String>,
    pub maximal: Vec<String>,
}

impl PosetSummary {
    pub fn of(poset: &FinitePoset<OrientedMatroid>) -> PosetSummary {
        PosetSummary {
            size: poset.len(),
            covers: poset.covers().len(),
            minimal: poset
                .minimal_elements()
                .iter()
                .map(|&i| poset.element(i).sign_string())
                .collect(),
            maximal: poset
                .maximal_elements()
                .iter()
                .map(|&i| poset.element(i).sign_string())
                .collect(),
        }
    }
}
