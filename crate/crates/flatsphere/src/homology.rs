//! Integer reduced simplicial homology via Smith normal form.
//!
//! The contractibility certificate used elsewhere is: all reduced Betti
//! numbers zero, no torsion, Euler characteristic 1, with a greedy-collapse
//! certificate recorded on top when one is found. That is homology-triviality
//! plus collapsibility-when-found, which is weaker than contractibility;
//! simple connectivity is not checked.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use num::{BigInt, BigUint, Integer, One, Signed, Zero};
use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum ComplexError {
    #[error("simplex {0:?} has repeated vertices")]
    RepeatedVertices(Vec<usize>),
    #[error("family is not closed under faces: missing {0:?}")]
    NotClosed(Vec<usize>),
}

/// Abstract simplicial complex, stored by dimension with sorted vertex lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    /// `simplices[d]` lists the d-simplices, each a sorted vertex vector,
    /// sorted lexicographically and duplicate-free.
    simplices: Vec<Vec<Vec<usize>>>,
}

impl SimplicialComplex {
    /// Build from a family of simplices, closing downward under faces.
    pub fn from_simplices<I>(simplices: I) -> Result<SimplicialComplex, ComplexError>
    where
        I: IntoIterator<Item = Vec<usize>>,
    {
        let mut by_dim: Vec<BTreeSet<Vec<usize>>> = Vec::new();
        let mut stack: Vec<Vec<usize>> = Vec::new();
        for s in simplices {
            let mut v = s.clone();
            v.sort_unstable();
            let before = v.len();
            v.dedup();
            if v.len() != before {
                return Err(ComplexError::RepeatedVertices(s));
            }
            if !v.is_empty() {
                stack.push(v);
            }
        }
        while let Some(s) = stack.pop() {
            let d = s.len() - 1;
            if by_dim.len() <= d {
                by_dim.resize_with(d + 1, BTreeSet::new);
            }
            if !by_dim[d].insert(s.clone()) {
                continue;
            }
            if d > 0 {
                for omit in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(omit);
                    stack.push(face);
                }
            }
        }
        Ok(SimplicialComplex {
            simplices: by_dim.into_iter().map(|set| set.into_iter().collect()).collect(),
        })
    }

    pub fn empty() -> SimplicialComplex {
        SimplicialComplex { simplices: Vec::new() }
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.iter().all(|d| d.is_empty())
    }

    /// Dimension of the complex, or `None` when empty.
    pub fn dim(&self) -> Option<usize> {
        self.simplices
            .iter()
            .enumerate()
            .rev()
            .find(|(_, s)| !s.is_empty())
            .map(|(d, _)| d)
    }

    pub fn simplices_of_dim(&self, d: usize) -> &[Vec<usize>] {
        self.simplices.get(d).map_or(&[], |v| v.as_slice())
    }

    pub fn face_counts(&self) -> Vec<usize> {
        self.simplices.iter().map(|v| v.len()).collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.face_counts()
            .iter()
            .enumerate()
            .map(|(d, &count)| if d % 2 == 0 { count as i64 } else { -(count as i64) })
            .sum()
    }

    fn contains(&self, simplex: &[usize]) -> bool {
        let d = simplex.len().wrapping_sub(1);
        self.simplices
            .get(d)
            .is_some_and(|v| v.binary_search_by(|s| s.as_slice().cmp(simplex)).is_ok())
    }

    /// Boundary matrices `∂_d : C_d → C_{d-1}` for `d = 1, …, dim`, with
    /// alternating ±1 entries under the sorted-vertex orientation.
    /// `∂_{d-1} · ∂_d = 0` is asserted exactly for every returned pair.
    pub fn boundary_matrices(&self) -> Vec<IntMatrix> {
        let dim = match self.dim() {
            Some(d) => d,
            None => return Vec::new(),
        };
        let mut out = Vec::new();
        for d in 1..=dim {
            let lower = &self.simplices[d - 1];
            let upper = &self.simplices[d];
            let index: HashMap<&[usize], usize> =
                lower.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
            let mut m = IntMatrix::zero(lower.len(), upper.len());
            for (col, s) in upper.iter().enumerate() {
                for omit in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(omit);
                    let row = *index.get(face.as_slice()).expect("complex is closed");
                    let entry = if omit % 2 == 0 { 1i64 } else { -1i64 };
                    m.set(row, col, BigInt::from(entry));
                }
            }
            out.push(m);
        }
        for w in out.windows(2) {
            debug_assert!(w[0].mul(&w[1]).is_zero(), "∂∂ must vanish");
        }
        out
    }

    /// Reduced integer homology.
    ///
    /// The empty complex is reported through the `empty_complex` flag (its
    /// reduced homology is that of the (-1)-sphere), never silently.
    pub fn reduced_homology(&self) -> HomologyResult {
        if self.is_empty() {
            return HomologyResult {
                reduced_betti: Vec::new(),
                torsion: Vec::new(),
                euler_characteristic: 0,
                empty_complex: true,
            };
        }
        let dim = self.dim().expect("nonempty");
        let boundaries = self.boundary_matrices();
        let f: Vec<usize> = (0..=dim).map(|d| self.simplices[d].len()).collect();
        // Invariant factors of ∂_d for d = 1..=dim; ∂_0 is the augmentation,
        // an all-ones row, of rank 1.
        let factors: Vec<Vec<BigInt>> = boundaries.iter().map(smith_normal_form).collect();
        let rank = |d: usize| -> usize {
            if d == 0 {
                1
            } else if d <= dim {
                factors[d - 1].len()
            } else {
                0
            }
        };
        let mut reduced_betti = Vec::with_capacity(dim + 1);
        let mut torsion: Vec<Vec<BigUint>> = Vec::with_capacity(dim + 1);
        for d in 0..=dim {
            let betti = f[d] - rank(d) - rank(d + 1);
            reduced_betti.push(betti);
            let tors = if d < dim {
                factors[d]
                    .iter()
                    .filter(|x| !x.is_one())
                    .map(|x| x.to_biguint().expect("positive"))
                    .collect()
            } else {
                Vec::new()
            };
            torsion.push(tors);
        }
        let result = HomologyResult {
            reduced_betti,
            torsion,
            euler_characteristic: self.euler_characteristic(),
            empty_complex: false,
        };
        debug_assert_eq!(
            result.euler_characteristic,
            1 + result
                .reduced_betti
                .iter()
                .enumerate()
                .map(|(d, &b)| if d % 2 == 0 { b as i64 } else { -(b as i64) })
                .sum::<i64>(),
            "Euler characteristic must match the alternating Betti sum"
        );
        result
    }

    /// Remove free faces until none remain; returns the residual complex and
    /// the collapse sequence `(free face, unique coface)`.
    ///
    /// A simplex is free when it has exactly one proper coface, which is then
    /// necessarily one dimension up. The scan picks the smallest (dim, lex)
    /// free face each round, so the sequence is deterministic.
    pub fn greedy_collapse(&self) -> (SimplicialComplex, Vec<(Vec<usize>, Vec<usize>)>) {
        let mut present: Vec<BTreeSet<Vec<usize>>> = self
            .simplices
            .iter()
            .map(|v| v.iter().cloned().collect())
            .collect();
        let mut sequence = Vec::new();
        loop {
            let mut found: Option<(Vec<usize>, Vec<usize>)> = None;
            'scan: for d in 0..present.len() {
                for s in &present[d] {
                    let mut cofaces = Vec::new();
                    for higher_d in (d + 1)..present.len() {
                        for t in &present[higher_d] {
                            if s.iter().all(|v| t.contains(v)) {
                                cofaces.push(t.clone());
                                if cofaces.len() > 1 {
                                    break;
                                }
                            }
                        }
                        if cofaces.len() > 1 {
                            break;
                        }
                    }
                    if cofaces.len() == 1 {
                        found = Some((s.clone(), cofaces.pop().expect("one coface")));
                        break 'scan;
                    }
                }
            }
            match found {
                Some((face, coface)) => {
                    present[face.len() - 1].remove(&face);
                    present[coface.len() - 1].remove(&coface);
                    sequence.push((face, coface));
                }
                None => break,
            }
        }
        let residual = SimplicialComplex {
            simplices: present.into_iter().map(|set| set.into_iter().collect()).collect(),
        };
        (residual, sequence)
    }

    /// True when the complex is exactly one vertex.
    pub fn is_single_vertex(&self) -> bool {
        self.simplices_of_dim(0).len() == 1 && self.dim() == Some(0)
    }

    /// Validation used by constructors taking explicit families.
    pub fn check_closed(&self) -> Result<(), ComplexError> {
        for d in 1..self.simplices.len() {
            for s in &self.simplices[d] {
                for omit in 0..s.len() {
                    let mut face = s.clone();
                    face.remove(omit);
                    if !self.contains(&face) {
                        return Err(ComplexError::NotClosed(face));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Betti numbers and torsion of reduced homology, one entry per dimension.
#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct HomologyResult {
    pub reduced_betti: Vec<usize>,
    /// Invariant factors > 1 of `∂_{d+1}`, i.e. the torsion of `H̃_d`;
    /// serialized as decimal strings.
    #[serde(serialize_with = "serialize_torsion")]
    pub torsion: Vec<Vec<BigUint>>,
    pub euler_characteristic: i64,
    /// Set when the input was the empty complex, whose reduced homology is
    /// that of the (-1)-sphere: one unit of `H̃_{-1}`.
    pub empty_complex: bool,
}

fn serialize_torsion<S>(t: &[Vec<BigUint>], s: S) -> Result<S::Ok, S::Error>
where
    S: serde::Serializer,
{
    let strings: Vec<Vec<String>> = t
        .iter()
        .map(|dim| dim.iter().map(|x| x.to_string()).collect())
        .collect();
    serde::Serialize::serialize(&strings, s)
}

impl HomologyResult {
    /// The certificate used for "contractible at homology level".
    pub fn is_trivial(&self) -> bool {
        !self.empty_complex
            && self.reduced_betti.iter().all(|&b| b == 0)
            && self.torsion.iter().all(|t| t.is_empty())
            && self.euler_characteristic == 1
    }
}

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> IntMatrix {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<i64>>) -> IntMatrix {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        IntMatrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().map(BigInt::from).collect(),
        }
    }

    pub fn diagonal(entries: &[i64]) -> IntMatrix {
        let n = entries.len();
        let mut m = IntMatrix::zero(n, n);
        for (i, &x) in entries.iter().enumerate() {
            m.set(i, i, BigInt::from(x));
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = IntMatrix::zero(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let add = a * other.get(k, j);
                    let cur = out.get(i, j) + add;
                    out.set(i, j, cur);
                }
            }
        }
        out
    }

    /// Rank over the field `GF(p)`, by Gaussian elimination. Independent of
    /// the Smith normal form path; used to cross-check Betti numbers.
    pub fn rank_mod_p(&self, p: u64) -> usize {
        assert!(p >= 2);
        let p_big = BigInt::from(p);
        let mut m: Vec<Vec<u64>> = (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .map(|j| {
                        let x = self.get(i, j).mod_floor(&p_big);
                        let digits = x.to_u64_digits().1;
                        digits.first().copied().unwrap_or(0)
                    })
                    .collect()
            })
            .collect();
        let inv = |a: u64| -> u64 {
            // p is prime in all uses; Fermat inverse.
            let mut result = 1u64;
            let mut base = a % p;
            let mut e = p - 2;
            while e > 0 {
                if e & 1 == 1 {
                    result = result * base % p;
                }
                base = base * base % p;
                e >>= 1;
            }
            result
        };
        let mut rank = 0usize;
        for col in 0..self.cols {
            let Some(pivot) = (rank..self.rows).find(|&i| m[i][col] % p != 0) else {
                continue;
            };
            m.swap(rank, pivot);
            let scale = inv(m[rank][col]);
            for j in col..self.cols {
                m[rank][j] = m[rank][j] * scale % p;
            }
            for i in 0..self.rows {
                if i != rank && m[i][col] % p != 0 {
                    let factor = m[i][col];
                    for j in col..self.cols {
                        m[i][j] = (m[i][j] + p * p - factor * m[rank][j] % p) % p;
                    }
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        rank
    }
}

/// Invariant factors `d_1 | d_2 | … | d_k` of an integer matrix, positive,
/// with `k` the rank. The zero matrix has no factors.
///
/// Elimination prefers the nonzero entry of smallest magnitude as pivot and
/// alternates Euclidean row and column reductions until the pivot divides its
/// whole row and column, splits off the pivot, and recurses; the resulting
/// diagonal is normalized into a divisibility chain by gcd/lcm exchanges,
/// which computes the Smith form of a diagonal matrix.
pub fn smith_normal_form(m: &IntMatrix) -> Vec<BigInt> {
    // Sparse rows; rows and columns drop out as pivots are extracted.
    let mut rows: Vec<BTreeMap<usize, BigInt>> = (0..m.rows)
        .map(|i| {
            (0..m.cols)
                .filter(|&j| !m.get(i, j).is_zero())
                .map(|j| (j, m.get(i, j).clone()))
                .collect()
        })
        .collect();
    let mut diagonal: Vec<BigInt> = Vec::new();
    loop {
        // Pivot: smallest |entry| among active rows.
        let mut pivot: Option<(usize, usize)> = None;
        let mut best: Option<BigInt> = None;
        for (i, row) in rows.iter().enumerate() {
            for (&j, v) in row.iter() {
                let a = v.abs();
                if best.as_ref().is_none_or(|b| a < *b) {
                    best = Some(a);
                    pivot = Some((i, j));
                }
            }
        }
        let Some((mut pi, mut pj)) = pivot else { break };
        // Alternate row and column reduction. Every `continue` either
        // strictly shrinks the (positive) pivot or removes a nonzero from the
        // pivot column, so the loop terminates.
        loop {
            if rows[pi][&pj].is_negative() {
                let negated: BTreeMap<usize, BigInt> =
                    rows[pi].iter().map(|(&j, v)| (j, -v)).collect();
                rows[pi] = negated;
            }
            let pval = rows[pi][&pj].clone();
            // Row phase: reduce another row's pivot-column entry.
            if let Some(i) = (0..rows.len()).find(|&i| i != pi && rows[i].contains_key(&pj)) {
                let q = rows[i][&pj].div_floor(&pval);
                let pivot_row = rows[pi].clone();
                row_subtract(&mut rows[i], &pivot_row, &q);
                if rows[i].contains_key(&pj) {
                    // Nonzero remainder in [1, pval): it becomes the pivot.
                    pi = i;
                }
                continue;
            }
            // Column phase: the pivot column is clear; reduce an overflow
            // entry of the pivot row that the pivot does not divide. The
            // column operation `col_j -= q·col_pj` touches only the pivot row
            // because every other row is zero in column pj.
            let overflow = rows[pi]
                .iter()
                .find(|(&j, v)| j != pj && !(*v % &pval).is_zero())
                .map(|(&j, v)| (j, v.clone()));
            if let Some((j, a)) = overflow {
                let rem = a.mod_floor(&pval);
                debug_assert!(!rem.is_zero());
                rows[pi].insert(j, rem);
                pj = j;
                continue;
            }
            break;
        }
        // The pivot divides every remaining entry of its row, and its column
        // is zero elsewhere: exact column operations (again touching only the
        // pivot row) finish the split, so the pivot row can be dropped whole.
        diagonal.push(rows[pi][&pj].clone());
        rows.remove(pi);
    }
    // Normalize into a divisibility chain.
    let mut d: Vec<BigInt> = diagonal;
    debug_assert!(d.iter().all(|x| x.is_positive()));
    let k = d.len();
    loop {
        let mut changed = false;
        for i in 0..k {
            for j in (i + 1)..k {
                if !(&d[j] % &d[i]).is_zero() {
                    let g = d[i].gcd(&d[j]);
                    let l = d[i].lcm(&d[j]);
                    d[i] = g;
                    d[j] = l;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    d.sort();
    d
}

/// `row -= q * other`, dropping zeros.
fn row_subtract(row: &mut BTreeMap<usize, BigInt>, other: &BTreeMap<usize, BigInt>, q: &BigInt) {
    if q.is_zero() {
        return;
    }
    for (&j, v) in other {
        let new = match row.get(&j) {
            Some(cur) => cur - q * v,
            None => -(q * v),
        };
        if new.is_zero() {
            row.remove(&j);
        } else {
            row.insert(j, new);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hollow_triangle() -> SimplicialComplex {
        SimplicialComplex::from_simplices(vec![vec![1, 2], vec![2, 3], vec![1, 3]]).unwrap()
    }

    fn full_triangle() -> SimplicialComplex {
        SimplicialComplex::from_simplices(vec![vec![1, 2, 3]]).unwrap()
    }

    #[test]
    fn closure_and_counts() {
        let k = full_triangle();
        assert_eq!(k.face_counts(), vec![3, 3, 1]);
        assert!(k.check_closed().is_ok());
        assert_eq!(k.euler_characteristic(), 1);
    }

    #[test]
    fn single_edge_boundary() {
        let k = SimplicialComplex::from_simplices(vec![vec![1, 2]]).unwrap();
        let b = k.boundary_matrices();
        assert_eq!(b.len(), 1);
        assert_eq!(*b[0].get(0, 0), BigInt::from(-1));
        assert_eq!(*b[0].get(1, 0), BigInt::from(1));
    }

    #[test]
    fn hollow_triangle_boundary_columns_sum_to_zero() {
        let b = hollow_triangle().boundary_matrices();
        assert_eq!(b[0].rows(), 3);
        assert_eq!(b[0].cols(), 3);
        for j in 0..3 {
            let sum: BigInt = (0..3).map(|i| b[0].get(i, j).clone()).sum();
            assert!(sum.is_zero());
        }
    }

    #[test]
    fn boundary_composition_vanishes() {
        for k in [
            full_triangle(),
            SimplicialComplex::from_simplices(vec![vec![1, 2, 3, 4]]).unwrap(),
            SimplicialComplex::from_simplices(vec![vec![1, 2, 3], vec![2, 3, 4], vec![1, 4]]).unwrap(),
        ] {
            let b = k.boundary_matrices();
            for w in b.windows(2) {
                assert!(w[0].mul(&w[1]).is_zero());
            }
        }
    }

    #[test]
    fn snf_examples() {
        assert_eq!(
            smith_normal_form(&IntMatrix::diagonal(&[2, 3])),
            vec![BigInt::from(1), BigInt::from(6)]
        );
        assert_eq!(
            smith_normal_form(&IntMatrix::diagonal(&[1, 1, 1])),
            vec![BigInt::one(); 3]
        );
        assert!(smith_normal_form(&IntMatrix::zero(3, 2)).is_empty());
        // Klein-bottle style relation matrix [[1,1],[1,-1]] has factors (1,2).
        assert_eq!(
            smith_normal_form(&IntMatrix::from_rows(vec![vec![1, 1], vec![1, -1]])),
            vec![BigInt::from(1), BigInt::from(2)]
        );
        // The pivot row's overflow entries interact with later rows: the
        // answer is (1, 10), not (1, 5).
        assert_eq!(
            smith_normal_form(&IntMatrix::from_rows(vec![vec![2, 3], vec![0, 5]])),
            vec![BigInt::from(1), BigInt::from(10)]
        );
    }

    /// gcd of all i x i minors, brute force; the product of the first i
    /// invariant factors must equal it.
    fn minor_gcd(m: &IntMatrix, size: usize) -> BigInt {
        use itertools::Itertools;
        let mut g = BigInt::zero();
        for rows in (0..m.rows()).combinations(size) {
            for cols in (0..m.cols()).combinations(size) {
                let sub: Vec<Vec<BigInt>> = rows
                    .iter()
                    .map(|&i| cols.iter().map(|&j| m.get(i, j).clone()).collect())
                    .collect();
                g = g.gcd(&crate::linalg::int_det(&sub));
            }
        }
        g
    }

    proptest! {
        #[test]
        fn snf_factors_match_minor_gcds(entries in proptest::collection::vec(-6i64..7, 12)) {
            let m = IntMatrix::from_rows(
                (0..3).map(|i| entries[4 * i..4 * (i + 1)].to_vec()).collect()
            );
            let factors = smith_normal_form(&m);
            let mut product = BigInt::one();
            for (i, f) in factors.iter().enumerate() {
                product *= f;
                prop_assert_eq!(&product, &minor_gcd(&m, i + 1), "prefix {} of {:?}", i + 1, factors);
            }
            for w in factors.windows(2) {
                prop_assert!((&w[1] % &w[0]).is_zero(), "divisibility chain");
            }
        }
    }

    #[test]
    fn reduced_homology_basics() {
        let full = full_triangle().reduced_homology();
        assert!(full.is_trivial());

        let hollow = hollow_triangle().reduced_homology();
        assert_eq!(hollow.reduced_betti, vec![0, 1]);
        assert!(!hollow.is_trivial());

        let two_points = SimplicialComplex::from_simplices(vec![vec![1], vec![2]])
            .unwrap()
            .reduced_homology();
        assert_eq!(two_points.reduced_betti, vec![1]);

        let empty = SimplicialComplex::empty().reduced_homology();
        assert!(empty.empty_complex);
    }

    #[test]
    fn sphere_homology() {
        // Boundary of the tetrahedron: an S^2.
        let sphere = SimplicialComplex::from_simplices(vec![
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 4],
            vec![2, 3, 4],
        ])
        .unwrap();
        let h = sphere.reduced_homology();
        assert_eq!(h.reduced_betti, vec![0, 0, 1]);
        assert_eq!(h.euler_characteristic, 2);
    }

    #[test]
    fn projective_plane_torsion() {
        // Minimal 6-vertex triangulation of RP^2 (icosahedron mod antipodes):
        // 6 vertices, all 15 edges, 10 triangles; H̃_1 = Z/2.
        let rp2 = SimplicialComplex::from_simplices(vec![
            vec![1, 2, 3],
            vec![1, 2, 4],
            vec![1, 3, 5],
            vec![1, 4, 6],
            vec![1, 5, 6],
            vec![2, 3, 6],
            vec![2, 4, 5],
            vec![2, 5, 6],
            vec![3, 4, 5],
            vec![3, 4, 6],
        ])
        .unwrap();
        assert_eq!(rp2.face_counts(), vec![6, 15, 10]);
        let h = rp2.reduced_homology();
        assert_eq!(h.reduced_betti, vec![0, 0, 0]);
        assert_eq!(h.torsion[1], vec![BigUint::from(2u32)]);
        // Mod-2 Betti numbers see the torsion; mod-3 do not.
        let b = rp2.boundary_matrices();
        let f = rp2.face_counts();
        let h1_mod2 = f[1] - b[0].rank_mod_p(2) - b[1].rank_mod_p(2);
        let h1_mod3 = f[1] - b[0].rank_mod_p(3) - b[1].rank_mod_p(3);
        assert_eq!(h1_mod2, 1);
        assert_eq!(h1_mod3, 0);
    }

    #[test]
    fn collapse_examples() {
        let (residual, seq) = full_triangle().greedy_collapse();
        assert!(residual.is_single_vertex(), "residual: {residual:?}");
        assert_eq!(seq.len(), 3);

        let (residual, seq) = hollow_triangle().greedy_collapse();
        assert!(seq.is_empty());
        assert_eq!(residual, hollow_triangle());
    }

    #[test]
    fn cone_collapses_to_a_point() {
        // Cone over a hollow triangle with apex 0.
        let cone = SimplicialComplex::from_simplices(vec![
            vec![0, 1, 2],
            vec![0, 2, 3],
            vec![0, 1, 3],
            vec![1, 2],
            vec![2, 3],
            vec![1, 3],
        ])
        .unwrap();
        let (residual, _) = cone.greedy_collapse();
        assert!(residual.is_single_vertex());
    }

    #[test]
    fn field_rank_cross_check_on_torsion_free() {
        for k in [full_triangle(), hollow_triangle()] {
            let h = k.reduced_homology();
            let b = k.boundary_matrices();
            let f = k.face_counts();
            for d in 0..f.len() {
                for p in [2u64, 3u64] {
                    let rank_d = if d == 0 { 1 } else { b[d - 1].rank_mod_p(p) };
                    let rank_up = if d < b.len() { b[d].rank_mod_p(p) } else { 0 };
                    let betti_p = f[d] - rank_d - rank_up;
                    assert_eq!(betti_p, h.reduced_betti[d], "dim {d} mod {p}");
                }
            }
        }
    }
}
