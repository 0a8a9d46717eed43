//! Chirotopes and oriented matroids over exact rational configurations.
//!
//! A chirotope of rank `r` on ground set `{1, …, n}` is an alternating sign
//! function on r-tuples, stored here as its values on sorted r-subsets in
//! colex order. An oriented matroid is the pair `{χ, -χ}`, represented by the
//! member whose first nonzero colex entry is `+`.
//!
//! Admission is the three-term Grassmann–Plücker sign condition. The
//! literature's full axiom system is equivalent for the ranks used here, and
//! realizability is deliberately not decided; see the guide chapter on
//! chirotopes for the boundary of what "is a chirotope" means in this crate.

use std::collections::BTreeSet;
use std::fmt;

use num::{BigInt, BigRational};
use thiserror::Error;

use crate::linalg::{clear_denominators, det_sign_of_int_columns};
use crate::sign::{permutation_sign, BasisIndexer, IndexError, Sign};

#[derive(Debug, Error)]
pub enum ChirotopeError {
    #[error("sign array has length {got}, expected C({n},{r}) = {expected}")]
    WrongLength { got: usize, expected: usize, n: usize, r: usize },
    #[error("sign array is identically zero; rank condition fails")]
    IdenticallyZero,
    #[error("degenerate configuration: rank < {0}, no chirotope exists")]
    DegenerateConfiguration(usize),
    #[error("vector {index} has dimension {got}, expected {expected}")]
    VectorDimension { index: usize, got: usize, expected: usize },
    #[error("not a chirotope: {0}")]
    NotAChirotope(GpViolation),
    #[error("deletion drops rank: element {0}")]
    DeletionDropsRank(usize),
    #[error("tuple has length {got}, expected {expected}")]
    TupleLength { got: usize, expected: usize },
    #[error(transparent)]
    Index(#[from] IndexError),
}

/// A witness that the three-term Grassmann–Plücker condition fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GpViolation {
    /// Common (r-2)-tuple of the three terms.
    pub stem: Vec<usize>,
    /// The four exchanged elements a < b < c < d.
    pub quad: [usize; 4],
}

impl fmt::Display for GpViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GP instance stem {:?} quad {:?} has no sign-consistent assignment",
            self.stem, self.quad
        )
    }
}

/// Sign function on sorted r-subsets of `{1, …, n}`, at least one nonzero.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Chirotope {
    rank: usize,
    ground: usize,
    signs: Vec<Sign>,
}

impl Chirotope {
    /// Wrap a colex-ordered sign array. Rejects wrong lengths and the
    /// identically zero array (which would have rank < r).
    pub fn new(rank: usize, ground: usize, signs: Vec<Sign>) -> Result<Chirotope, ChirotopeError> {
        let indexer = BasisIndexer::new(ground, rank)?;
        if signs.len() != indexer.count() {
            return Err(ChirotopeError::WrongLength {
                got: signs.len(),
                expected: indexer.count(),
                n: ground,
                r: rank,
            });
        }
        if signs.iter().all(|s| s.is_zero()) {
            return Err(ChirotopeError::IdenticallyZero);
        }
        Ok(Chirotope { rank, ground, signs })
    }

    /// Chirotope of a rational vector configuration: column `i` is the vector
    /// of ground element `i+1`, and the entry at `{i_1 < … < i_r}` is the sign
    /// of the determinant of those columns. Exact; errors if the configuration
    /// has rank below `r`.
    pub fn from_vectors(columns: &[Vec<BigRational>]) -> Result<Chirotope, ChirotopeError> {
        let n = columns.len();
        let r = columns.first().map_or(0, |c| c.len());
        for (i, c) in columns.iter().enumerate() {
            if c.len() != r {
                return Err(ChirotopeError::VectorDimension {
                    index: i + 1,
                    got: c.len(),
                    expected: r,
                });
            }
        }
        if n < r {
            return Err(ChirotopeError::DegenerateConfiguration(r));
        }
        let int_cols: Vec<Vec<BigInt>> = columns.iter().map(|c| clear_denominators(c)).collect();
        let indexer = BasisIndexer::new(n, r)?;
        let mut signs = Vec::with_capacity(indexer.count());
        for subset in indexer.subsets() {
            let cols: Vec<&[BigInt]> = subset.iter().map(|&i| int_cols[i - 1].as_slice()).collect();
            signs.push(det_sign_of_int_columns(&cols));
        }
        if signs.iter().all(|s| s.is_zero()) {
            return Err(ChirotopeError::DegenerateConfiguration(r));
        }
        Ok(Chirotope { rank: r, ground: n, signs })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn ground(&self) -> usize {
        self.ground
    }

    pub fn indexer(&self) -> BasisIndexer {
        BasisIndexer::new(self.ground, self.rank).expect("valid by construction")
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    /// Value on a sorted r-subset.
    pub fn entry(&self, subset: &[usize]) -> Result<Sign, ChirotopeError> {
        let idx = self.indexer().rank_subset(subset)?;
        Ok(self.signs[idx])
    }

    /// Value on an arbitrary r-tuple: zero on repeats, otherwise the sorted
    /// entry times the sign of the sorting permutation.
    pub fn evaluate(&self, tuple: &[usize]) -> Result<Sign, ChirotopeError> {
        if tuple.len() != self.rank {
            return Err(ChirotopeError::TupleLength {
                got: tuple.len(),
                expected: self.rank,
            });
        }
        for &x in tuple {
            if x == 0 || x > self.ground {
                return Err(ChirotopeError::Index(IndexError::BadElement(x)));
            }
        }
        let mut sorted = tuple.to_vec();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Ok(Sign::Zero);
        }
        let perm = permutation_sign(tuple).expect("no repeats");
        Ok(self.entry(&sorted)?.mul(perm))
    }

    pub fn negate(&self) -> Chirotope {
        Chirotope {
            rank: self.rank,
            ground: self.ground,
            signs: self.signs.iter().map(|s| s.negate()).collect(),
        }
    }

    /// First GP violation in colex-lexicographic scan order, if any.
    ///
    /// The three-term condition: for every (r-2)-subset `stem` and every
    /// quadruple `a < b < c < d` disjoint from it, the multiset
    /// `{χ(stem,a,b)·χ(stem,c,d), -χ(stem,a,c)·χ(stem,b,d), χ(stem,a,d)·χ(stem,b,c)}`
    /// must be all zero or contain both `+` and `-`.
    pub fn gp_violation(&self) -> Option<GpViolation> {
        gp_violation_of(self)
    }

    pub fn is_gp_consistent(&self) -> bool {
        self.gp_violation().is_none()
    }

    /// The canonical sign string over `{+,-,0}` in colex order.
    pub fn sign_string(&self) -> String {
        self.signs.iter().map(|s| s.to_char()).collect()
    }

    /// Text form: `rank r ground n` header line, then the sign string.
    pub fn to_text(&self) -> String {
        format!("rank {} ground {}\n{}\n", self.rank, self.ground, self.sign_string())
    }

    pub fn from_text(text: &str) -> Result<Chirotope, ChirotopeError> {
        let mut lines = text.lines().filter(|l| !l.trim().is_empty());
        let header = lines.next().unwrap_or("");
        let parts: Vec<&str> = header.split_whitespace().collect();
        let parse_err = || ChirotopeError::WrongLength { got: 0, expected: 0, n: 0, r: 0 };
        if parts.len() != 4 || parts[0] != "rank" || parts[2] != "ground" {
            return Err(parse_err());
        }
        let rank: usize = parts[1].parse().map_err(|_| parse_err())?;
        let ground: usize = parts[3].parse().map_err(|_| parse_err())?;
        let body = lines.next().unwrap_or("").trim();
        let signs: Option<Vec<Sign>> = body.chars().map(Sign::from_char).collect();
        let signs = signs.ok_or_else(parse_err)?;
        Chirotope::new(rank, ground, signs)
    }

    fn first_nonzero(&self) -> Option<usize> {
        self.signs.iter().position(|s| !s.is_zero())
    }
}

/// GP check on a raw sign array; `None` input index means "identically zero".
pub fn check_chirotope_axioms(rank: usize, ground: usize, signs: &[Sign]) -> Result<(), GpCheckFailure> {
    if signs.iter().all(|s| s.is_zero()) {
        return Err(GpCheckFailure::IdenticallyZero);
    }
    let chi = Chirotope {
        rank,
        ground,
        signs: signs.to_vec(),
    };
    match gp_violation_of(&chi) {
        None => Ok(()),
        Some(v) => Err(GpCheckFailure::Violation(v)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Error)]
pub enum GpCheckFailure {
    #[error("sign array is identically zero")]
    IdenticallyZero,
    #[error("{0}")]
    Violation(GpViolation),
}

fn gp_violation_of(chi: &Chirotope) -> Option<GpViolation> {
    let r = chi.rank;
    let n = chi.ground;
    if r < 2 || n < r + 2 {
        // No three-term instance exists; only the nonzero condition applies,
        // which Chirotope::new already enforced.
        return None;
    }
    let stem_indexer = BasisIndexer::new(n, r - 2).expect("r - 2 <= n");
    for stem in stem_indexer.subsets() {
        let free: Vec<usize> = (1..=n).filter(|x| !stem.contains(x)).collect();
        let quad_indexer = BasisIndexer::new(free.len(), 4).expect("n - r + 2 >= 4");
        for quad_idx in quad_indexer.subsets() {
            let quad: Vec<usize> = quad_idx.iter().map(|&i| free[i - 1]).collect();
            let (a, b, c, d) = (quad[0], quad[1], quad[2], quad[3]);
            let ev = |x: usize, y: usize| {
                let mut t = stem.clone();
                t.push(x);
                t.push(y);
                chi.evaluate(&t).expect("valid tuple")
            };
            let t1 = ev(a, b).mul(ev(c, d));
            let t2 = ev(a, c).mul(ev(b, d)).negate();
            let t3 = ev(a, d).mul(ev(b, c));
            let terms = [t1, t2, t3];
            let has_plus = terms.contains(&Sign::Plus);
            let has_minus = terms.contains(&Sign::Minus);
            let all_zero = terms.iter().all(|s| s.is_zero());
            if !(all_zero || (has_plus && has_minus)) {
                return Some(GpViolation {
                    stem: stem.clone(),
                    quad: [a, b, c, d],
                });
            }
        }
    }
    None
}

/// Minimal signed dependency of an oriented matroid; stored with the least
/// support element in the positive part, one representative per ± pair.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedCircuit {
    pub positive: Vec<usize>,
    pub negative: Vec<usize>,
}

impl SignedCircuit {
    pub fn support(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.positive.iter().chain(&self.negative).copied().collect();
        s.sort_unstable();
        s
    }

    fn canonicalize(mut positive: Vec<usize>, mut negative: Vec<usize>) -> SignedCircuit {
        positive.sort_unstable();
        negative.sort_unstable();
        let least_pos = positive.first().copied().unwrap_or(usize::MAX);
        let least_neg = negative.first().copied().unwrap_or(usize::MAX);
        if least_neg < least_pos {
            std::mem::swap(&mut positive, &mut negative);
        }
        SignedCircuit { positive, negative }
    }
}

/// The normalized pair `{χ, -χ}`: the stored representative has its first
/// nonzero colex entry equal to `+`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct OrientedMatroid {
    canonical: Chirotope,
}

impl PartialOrd for OrientedMatroid {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for OrientedMatroid {
    /// Deterministic total order for canonical sorting; unrelated to weak maps.
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.rank(), self.ground())
            .cmp(&(other.rank(), other.ground()))
            .then_with(|| {
                let a = self.canonical.signs.iter().map(|s| s.sort_key());
                let b = other.canonical.signs.iter().map(|s| s.sort_key());
                a.cmp(b)
            })
    }
}

impl fmt::Display for OrientedMatroid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "rank {} ground {} {}", self.rank(), self.ground(), self.sign_string())
    }
}

impl OrientedMatroid {
    /// Normalize a chirotope into its oriented matroid, checking GP
    /// consistency first.
    pub fn normalize(chi: Chirotope) -> Result<OrientedMatroid, ChirotopeError> {
        if let Some(v) = chi.gp_violation() {
            return Err(ChirotopeError::NotAChirotope(v));
        }
        Ok(Self::normalize_unchecked(chi))
    }

    /// Normalization without the GP check, for enumeration pipelines that
    /// have already filtered.
    pub fn normalize_unchecked(chi: Chirotope) -> OrientedMatroid {
        let first = chi.first_nonzero().expect("chirotope has a nonzero entry");
        let canonical = if chi.signs[first] == Sign::Minus { chi.negate() } else { chi };
        OrientedMatroid { canonical }
    }

    pub fn from_vectors(columns: &[Vec<BigRational>]) -> Result<OrientedMatroid, ChirotopeError> {
        OrientedMatroid::normalize(Chirotope::from_vectors(columns)?)
    }

    pub fn from_text(text: &str) -> Result<OrientedMatroid, ChirotopeError> {
        OrientedMatroid::normalize(Chirotope::from_text(text)?)
    }

    pub fn chirotope(&self) -> &Chirotope {
        &self.canonical
    }

    pub fn rank(&self) -> usize {
        self.canonical.rank
    }

    pub fn ground(&self) -> usize {
        self.canonical.ground
    }

    pub fn sign_string(&self) -> String {
        self.canonical.sign_string()
    }

    pub fn to_text(&self) -> String {
        self.canonical.to_text()
    }

    pub fn entry(&self, subset: &[usize]) -> Result<Sign, ChirotopeError> {
        self.canonical.entry(subset)
    }

    pub fn evaluate(&self, tuple: &[usize]) -> Result<Sign, ChirotopeError> {
        self.canonical.evaluate(tuple)
    }

    /// All signed circuits, one representative per ± pair, sorted.
    ///
    /// Candidates come from (r+1)-subsets `D = {e_0 < … < e_r}` with signs
    /// `(-1)^i · χ(D \ e_i)`; nonzero candidates are filtered to minimal
    /// support and deduplicated.
    pub fn circuits(&self) -> Vec<SignedCircuit> {
        let r = self.rank();
        let n = self.ground();
        let mut found: BTreeSet<SignedCircuit> = BTreeSet::new();
        if n < r + 1 {
            return Vec::new();
        }
        let indexer = BasisIndexer::new(n, r + 1).expect("r + 1 <= n");
        for dep in indexer.subsets() {
            let mut positive = Vec::new();
            let mut negative = Vec::new();
            for (i, &e) in dep.iter().enumerate() {
                let rest: Vec<usize> = dep
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(_, &x)| x)
                    .collect();
                let mut s = self.entry(&rest).expect("sorted subset");
                if i % 2 == 1 {
                    s = s.negate();
                }
                match s {
                    Sign::Plus => positive.push(e),
                    Sign::Minus => negative.push(e),
                    Sign::Zero => {}
                }
            }
            if positive.is_empty() && negative.is_empty() {
                continue;
            }
            found.insert(SignedCircuit::canonicalize(positive, negative));
        }
        // Minimal-support filter; a guard, since (r+1)-subset candidates of a
        // chirotope already have circuit support.
        let all: Vec<SignedCircuit> = found.into_iter().collect();
        let supports: Vec<Vec<usize>> = all.iter().map(|c| c.support()).collect();
        all.iter()
            .enumerate()
            .filter(|(i, _)| {
                !supports.iter().enumerate().any(|(j, s)| {
                    j != *i
                        && s.len() < supports[*i].len()
                        && s.iter().all(|x| supports[*i].contains(x))
                })
            })
            .map(|(_, c)| c.clone())
            .collect()
    }

    /// True iff no circuit support is contained in `set`.
    pub fn is_independent(&self, set: &[usize]) -> bool {
        let circuits = self.circuits();
        self.is_independent_with(&circuits, set)
    }

    /// Circuit-based independence against a precomputed circuit list.
    pub fn is_independent_with(&self, circuits: &[SignedCircuit], set: &[usize]) -> bool {
        !circuits
            .iter()
            .any(|c| c.support().iter().all(|x| set.contains(x)))
    }

    /// Independence by basis extension: `set` extends to an r-subset with
    /// nonzero χ. Used as the second route of the dual-route check.
    pub fn is_independent_by_extension(&self, set: &[usize]) -> bool {
        let r = self.rank();
        let n = self.ground();
        let mut sorted = set.to_vec();
        sorted.sort_unstable();
        sorted.dedup();
        if sorted.len() != set.len() || sorted.len() > r {
            return false;
        }
        let rest: Vec<usize> = (1..=n).filter(|x| !sorted.contains(x)).collect();
        let need = r - sorted.len();
        let idx = BasisIndexer::new(rest.len(), need);
        let Ok(idx) = idx else { return false };
        for extension in idx.subsets() {
            let mut basis = sorted.clone();
            basis.extend(extension.iter().map(|&i| rest[i - 1]));
            basis.sort_unstable();
            if !self.entry(&basis).expect("sorted r-subset").is_zero() {
                return true;
            }
        }
        false
    }

    /// Oriented-matroid convex hull membership: `x ∈ conv(A)` iff `x ∈ A` or
    /// some signed circuit has negative part exactly `{x}` and positive part
    /// inside `A` (either orientation of the stored representative).
    pub fn convex_hull_contains(&self, set: &[usize], x: usize) -> bool {
        let circuits = self.circuits();
        self.convex_hull_contains_with(&circuits, set, x)
    }

    pub fn convex_hull_contains_with(
        &self,
        circuits: &[SignedCircuit],
        set: &[usize],
        x: usize,
    ) -> bool {
        if set.contains(&x) {
            return true;
        }
        circuits.iter().any(|c| {
            (c.negative == [x] && c.positive.iter().all(|e| set.contains(e)))
                || (c.positive == [x] && c.negative.iter().all(|e| set.contains(e)))
        })
    }

    /// True iff some element lies in no nonzero basis.
    pub fn has_loop(&self) -> bool {
        let mut in_basis = vec![false; self.ground() + 1];
        let indexer = self.canonical.indexer();
        for (i, subset) in indexer.subsets().enumerate() {
            if !self.canonical.signs[i].is_zero() {
                for &e in &subset {
                    in_basis[e] = true;
                }
            }
        }
        (1..=self.ground()).any(|e| !in_basis[e])
    }

    /// Delete element `e`; remaining elements are relabeled order-preservingly
    /// onto `{1, …, n-1}`. Errors if the restriction is identically zero.
    pub fn delete(&self, e: usize) -> Result<OrientedMatroid, ChirotopeError> {
        let r = self.rank();
        let n = self.ground();
        if e == 0 || e > n {
            return Err(ChirotopeError::Index(IndexError::BadElement(e)));
        }
        if n == 0 || n - 1 < r {
            return Err(ChirotopeError::DeletionDropsRank(e));
        }
        let new_indexer = BasisIndexer::new(n - 1, r)?;
        let mut signs = Vec::with_capacity(new_indexer.count());
        for subset in new_indexer.subsets() {
            let old: Vec<usize> = subset.iter().map(|&x| if x >= e { x + 1 } else { x }).collect();
            signs.push(self.entry(&old)?);
        }
        if signs.iter().all(|s| s.is_zero()) {
            return Err(ChirotopeError::DeletionDropsRank(e));
        }
        let chi = Chirotope { rank: r, ground: n - 1, signs };
        Ok(OrientedMatroid::normalize_unchecked(chi))
    }

    /// Join of two oriented matroids: rank `r1 + r2` on `n1 + n2` elements,
    /// with the second factor's elements shifted by `n1`.
    ///
    /// A basis splits as `B1 ⊎ B2` with `Bi` a basis of factor `i`; because
    /// every first-factor element precedes every shifted second-factor
    /// element, the shuffle permutation is the identity and
    /// `χ(B) = χ1(B1) · χ2(B2)`.
    pub fn join(&self, other: &OrientedMatroid) -> OrientedMatroid {
        let (r1, n1) = (self.rank(), self.ground());
        let (r2, n2) = (other.rank(), other.ground());
        let indexer = BasisIndexer::new(n1 + n2, r1 + r2).expect("valid");
        let mut signs = Vec::with_capacity(indexer.count());
        for subset in indexer.subsets() {
            let b1: Vec<usize> = subset.iter().copied().filter(|&x| x <= n1).collect();
            let b2: Vec<usize> = subset.iter().copied().filter(|&x| x > n1).map(|x| x - n1).collect();
            let s = if b1.len() != r1 {
                Sign::Zero
            } else {
                self.entry(&b1).expect("sorted").mul(other.entry(&b2).expect("sorted"))
            };
            signs.push(s);
        }
        let chi = Chirotope { rank: r1 + r2, ground: n1 + n2, signs };
        OrientedMatroid::normalize_unchecked(chi)
    }

    /// The empty oriented matroid (rank 0 on no elements), the identity of
    /// [`join`](Self::join). `χ(∅) = +` by convention.
    pub fn empty() -> OrientedMatroid {
        OrientedMatroid {
            canonical: Chirotope { rank: 0, ground: 0, signs: vec![Sign::Plus] },
        }
    }

    /// Relabel ground elements: new element `i` is old element `perm[i-1]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<OrientedMatroid, ChirotopeError> {
        let n = self.ground();
        assert_eq!(perm.len(), n, "permutation length must match ground size");
        let indexer = self.canonical.indexer();
        let mut signs = Vec::with_capacity(indexer.count());
        for subset in indexer.subsets() {
            let old: Vec<usize> = subset.iter().map(|&i| perm[i - 1]).collect();
            signs.push(self.evaluate(&old)?);
        }
        let chi = Chirotope { rank: self.rank(), ground: n, signs };
        Ok(OrientedMatroid::normalize_unchecked(chi))
    }

    /// Representative chirotope with a prescribed positive entry, if the
    /// entry is nonzero: the canonical one or its negation.
    pub fn representative_positive_on(&self, subset: &[usize]) -> Result<Chirotope, ChirotopeError> {
        match self.entry(subset)? {
            Sign::Plus => Ok(self.canonical.clone()),
            Sign::Minus => Ok(self.canonical.negate()),
            Sign::Zero => Err(ChirotopeError::IdenticallyZero),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{rational, rational_int};
    use proptest::prelude::*;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    pub(crate) fn vecs(entries: &[&[i64]]) -> Vec<Vec<BigRational>> {
        entries
            .iter()
            .map(|row| row.iter().map(|&x| rational_int(x)).collect())
            .collect()
    }

    #[test]
    fn identity_configuration() {
        let chi = Chirotope::from_vectors(&vecs(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(chi.entry(&[1, 2]).unwrap(), Sign::Plus);
        let chi3 = Chirotope::from_vectors(&vecs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert_eq!(chi3.entry(&[1, 2, 3]).unwrap(), Sign::Plus);
    }

    #[test]
    fn three_vector_signs_by_hand() {
        // (1,0), (0,1), (-1,-1): det(1,2) = 1, det(1,3) = -1, det(2,3) = 1.
        let chi = Chirotope::from_vectors(&vecs(&[&[1, 0], &[0, 1], &[-1, -1]])).unwrap();
        assert_eq!(chi.entry(&[1, 2]).unwrap(), Sign::Plus);
        assert_eq!(chi.entry(&[1, 3]).unwrap(), Sign::Minus);
        assert_eq!(chi.entry(&[2, 3]).unwrap(), Sign::Plus);
    }

    #[test]
    fn degenerate_configuration_rejected() {
        let err = Chirotope::from_vectors(&vecs(&[&[1, 0], &[2, 0], &[3, 0]]));
        assert!(matches!(err, Err(ChirotopeError::DegenerateConfiguration(2))));
    }

    #[test]
    fn evaluate_alternation_and_repeats() {
        let chi = Chirotope::from_vectors(&vecs(&[&[1, 0], &[0, 1]])).unwrap();
        assert_eq!(chi.evaluate(&[1, 1]).unwrap(), Sign::Zero);
        assert_eq!(chi.evaluate(&[2, 1]).unwrap(), Sign::Minus);
        assert_eq!(chi.evaluate(&[1, 2]).unwrap(), chi.entry(&[1, 2]).unwrap());
        assert!(chi.evaluate(&[1]).is_err());
    }

    #[test]
    fn gp_accepts_realizable_rejects_split_pair() {
        let chi = Chirotope::from_vectors(&vecs(&[&[1, 0], &[0, 1], &[1, 1], &[1, 2]])).unwrap();
        assert!(chi.is_gp_consistent());

        // chi(1,2) = +, chi(3,4) = +, all else 0: the instance (1,2|3,4) has
        // terms {+, 0, 0}, which no real assignment produces.
        use Sign::*;
        let bad = Chirotope::new(2, 4, vec![Plus, Zero, Zero, Zero, Zero, Plus]).unwrap();
        let v = bad.gp_violation().unwrap();
        assert_eq!(v.quad, [1, 2, 3, 4]);
        assert!(matches!(
            check_chirotope_axioms(2, 4, &[Zero; 6]),
            Err(GpCheckFailure::IdenticallyZero)
        ));
    }

    #[test]
    fn normalize_flips_leading_minus() {
        let chi = Chirotope::from_vectors(&vecs(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!(chi.entry(&[1, 2]).unwrap(), Sign::Minus);
        let om = OrientedMatroid::normalize(chi.clone()).unwrap();
        assert_eq!(om.entry(&[1, 2]).unwrap(), Sign::Plus);
        assert_eq!(om, OrientedMatroid::normalize(chi.negate()).unwrap());
    }

    #[test]
    fn normalize_of_negated_column_recomputes() {
        let cols = vecs(&[&[1, 0], &[0, 1], &[1, 1]]);
        let mut flipped = cols.clone();
        for x in &mut flipped[2] {
            *x = -x.clone();
        }
        let a = OrientedMatroid::from_vectors(&cols).unwrap();
        let b = OrientedMatroid::from_vectors(&flipped).unwrap();
        // Negating one column flips exactly the entries containing it.
        assert_eq!(a.entry(&[1, 2]).unwrap(), b.entry(&[1, 2]).unwrap());
        assert_eq!(a.entry(&[1, 3]).unwrap(), b.entry(&[1, 3]).unwrap().negate());
    }

    #[test]
    fn circuits_examples() {
        let independent = OrientedMatroid::from_vectors(&vecs(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(independent.circuits().is_empty());

        let om = OrientedMatroid::from_vectors(&vecs(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let circuits = om.circuits();
        assert_eq!(
            circuits,
            vec![SignedCircuit { positive: vec![1, 2], negative: vec![3] }]
        );

        let uniform4 =
            OrientedMatroid::from_vectors(&vecs(&[&[1, 0], &[1, 1], &[1, 2], &[1, 3]])).unwrap();
        assert_eq!(uniform4.circuits().len(), 4);
    }

    #[test]
    fn independence_and_loops() {
        let om = OrientedMatroid::from_vectors(&vecs(&[&[1, 0], &[0, 1], &[2, 0]])).unwrap();
        assert!(om.is_independent(&[1, 2]));
        assert!(!om.is_independent(&[1, 3]), "columns 1 and 3 are parallel");
        assert!(!om.has_loop());

        // Synthetic loop: only entry (1,3) nonzero leaves 2 in no basis.
        use Sign::*;
        let chi = Chirotope::new(2, 3, vec![Zero, Plus, Zero]).unwrap();
        let withloop = OrientedMatroid::normalize(chi).unwrap();
        assert!(withloop.has_loop());
        assert!(!withloop.is_independent(&[2]));
    }

    #[test]
    fn convex_hull_examples() {
        let inside = OrientedMatroid::from_vectors(&vecs(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert!(inside.convex_hull_contains(&[1, 2], 3));
        assert!(inside.convex_hull_contains(&[1, 3], 1), "x in A");

        let outside = OrientedMatroid::from_vectors(&vecs(&[&[1, 0], &[0, 1], &[-1, -1]])).unwrap();
        assert!(!outside.convex_hull_contains(&[1, 2], 3));
    }

    #[test]
    fn convex_hull_monotone_in_set() {
        // Exhaustive over small realizable configurations.
        let mut rng = StdRng::seed_from_u64(11);
        for _ in 0..40 {
            let n = 5;
            let cols: Vec<Vec<BigRational>> = (0..n)
                .map(|_| {
                    (0..2)
                        .map(|_| rational(rng.random_range(-4..5), rng.random_range(1..4)))
                        .collect()
                })
                .collect();
            let Ok(om) = OrientedMatroid::from_vectors(&cols) else { continue };
            let circuits = om.circuits();
            for a in 1..=n {
                for b in (a + 1)..=n {
                    for x in 1..=n {
                        let small = [a];
                        let large = [a, b];
                        if om.convex_hull_contains_with(&circuits, &small, x) {
                            assert!(om.convex_hull_contains_with(&circuits, &large, x));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn delete_examples() {
        let uniform3 =
            OrientedMatroid::from_vectors(&vecs(&[&[1, 0], &[1, 1], &[1, 2]])).unwrap();
        let deleted = uniform3.delete(3).unwrap();
        assert_eq!(deleted.ground(), 2);
        assert_eq!(deleted.entry(&[1, 2]).unwrap(), Sign::Plus);

        let pair = OrientedMatroid::from_vectors(&vecs(&[&[1, 0], &[0, 1]])).unwrap();
        assert!(matches!(pair.delete(1), Err(ChirotopeError::DeletionDropsRank(1))));
    }

    #[test]
    fn delete_commutes_with_realization() {
        let mut rng = StdRng::seed_from_u64(5);
        let mut checked = 0;
        while checked < 50 {
            let n = rng.random_range(3..7usize);
            let r = rng.random_range(2..4usize).min(n - 1);
            let cols: Vec<Vec<BigRational>> = (0..n)
                .map(|_| {
                    (0..r)
                        .map(|_| rational(rng.random_range(-5..6), rng.random_range(1..4)))
                        .collect()
                })
                .collect();
            let Ok(om) = OrientedMatroid::from_vectors(&cols) else { continue };
            let e = rng.random_range(1..=n);
            let mut reduced = cols.clone();
            reduced.remove(e - 1);
            match (om.delete(e), OrientedMatroid::from_vectors(&reduced)) {
                (Ok(a), Ok(b)) => assert_eq!(a, b),
                (Err(_), Err(_)) => {}
                (a, b) => panic!("delete/realize disagree: {a:?} vs {b:?}"),
            }
            checked += 1;
        }
    }

    #[test]
    fn join_examples() {
        let single = OrientedMatroid::from_vectors(&vecs(&[&[1]])).unwrap();
        let joined = single.join(&single);
        assert_eq!(joined.rank(), 2);
        assert_eq!(joined.ground(), 2);
        assert_eq!(joined.entry(&[1, 2]).unwrap(), Sign::Plus);

        let empty = OrientedMatroid::empty();
        let om = OrientedMatroid::from_vectors(&vecs(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert_eq!(empty.join(&om), om);
        assert_eq!(om.join(&empty), om);
    }

    #[test]
    fn join_is_block_diagonal_stacking() {
        let mut rng = StdRng::seed_from_u64(7);
        let mut checked = 0;
        while checked < 25 {
            let (r1, n1, r2, n2) = (2usize, 3usize, 1usize, 2usize);
            let random_cols = |rng: &mut StdRng, n: usize, r: usize| -> Vec<Vec<BigRational>> {
                (0..n)
                    .map(|_| (0..r).map(|_| rational(rng.random_range(-4..5), 1)).collect())
                    .collect()
            };
            let c1 = random_cols(&mut rng, n1, r1);
            let c2 = random_cols(&mut rng, n2, r2);
            let (Ok(m1), Ok(m2)) = (OrientedMatroid::from_vectors(&c1), OrientedMatroid::from_vectors(&c2))
            else {
                continue;
            };
            // Block-diagonal stacking: factor 1 in the top coordinates.
            let mut stacked: Vec<Vec<BigRational>> = Vec::new();
            for c in &c1 {
                let mut v = c.clone();
                v.extend(std::iter::repeat_n(rational_int(0), r2));
                stacked.push(v);
            }
            for c in &c2 {
                let mut v = vec![rational_int(0); r1];
                v.extend(c.iter().cloned());
                stacked.push(v);
            }
            let direct = OrientedMatroid::from_vectors(&stacked).unwrap();
            assert_eq!(m1.join(&m2), direct);
            checked += 1;
        }
    }

    #[test]
    fn text_roundtrip() {
        let om = OrientedMatroid::from_vectors(&vecs(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        let tex = om.to_text();
        assert!(tex.starts_with("rank 2 ground 3\n"));
        let back = OrientedMatroid::from_text(&tex).unwrap();
        assert_eq!(om, back);
    }

    #[test]
    fn independence_routes_agree_exhaustively() {
        // Every GP-consistent rank-2 sign array on up to 5 elements: circuit
        // route vs basis-extension route, plus the |S| = r shortcut.
        for n in 2..=5usize {
            let count = BasisIndexer::new(n, 2).unwrap().count();
            for code in 0..3usize.pow(count as u32) {
                let mut c = code;
                let signs: Vec<Sign> = (0..count)
                    .map(|_| {
                        let s = match c % 3 {
                            0 => Sign::Zero,
                            1 => Sign::Plus,
                            _ => Sign::Minus,
                        };
                        c /= 3;
                        s
                    })
                    .collect();
                if check_chirotope_axioms(2, n, &signs).is_err() {
                    continue;
                }
                let om = OrientedMatroid::normalize_unchecked(
                    Chirotope::new(2, n, signs).unwrap(),
                );
                let circuits = om.circuits();
                for code2 in 1..(1usize << n) {
                    let set: Vec<usize> = (1..=n).filter(|i| code2 & (1 << (i - 1)) != 0).collect();
                    let a = om.is_independent_with(&circuits, &set);
                    let b = om.is_independent_by_extension(&set);
                    assert_eq!(a, b, "n={n} set={set:?} om={om}");
                    if set.len() == 2 {
                        assert_eq!(a, !om.entry(&set).unwrap().is_zero());
                    }
                }
            }
        }
    }

    #[test]
    fn realization_soundness_random() {
        // from_vectors against the cofactor-expansion oracle in linalg tests
        // is covered there; here: alternation against an independent
        // recomputation with shuffled tuples.
        let mut rng = StdRng::seed_from_u64(23);
        let mut checked = 0;
        while checked < 100 {
            let r = rng.random_range(2..4usize);
            let n = rng.random_range(r..8usize);
            let cols: Vec<Vec<BigRational>> = (0..n)
                .map(|_| {
                    (0..r)
                        .map(|_| rational(rng.random_range(-9..10), rng.random_range(1..5)))
                        .collect()
                })
                .collect();
            let Ok(chi) = Chirotope::from_vectors(&cols) else { continue };
            // A shuffled tuple evaluates to perm-sign times the sorted entry.
            let idx = BasisIndexer::new(n, r).unwrap();
            for subset in idx.subsets() {
                let mut tuple = subset.clone();
                tuple.reverse();
                let lhs = chi.evaluate(&tuple).unwrap();
                let rhs = chi
                    .entry(&subset)
                    .unwrap()
                    .mul(permutation_sign(&tuple).unwrap());
                assert_eq!(lhs, rhs);
            }
            checked += 1;
        }
    }

    proptest! {
        #[test]
        fn normalize_negate_invariance(seed in 0u64..500) {
            let mut rng = StdRng::seed_from_u64(seed);
            let n = rng.random_range(2..6usize);
            let cols: Vec<Vec<BigRational>> = (0..n)
                .map(|_| (0..2).map(|_| rational(rng.random_range(-5..6), 1)).collect())
                .collect();
            if let Ok(chi) = Chirotope::from_vectors(&cols) {
                let a = OrientedMatroid::normalize(chi.clone()).unwrap();
                let b = OrientedMatroid::normalize(chi.negate()).unwrap();
                prop_assert_eq!(a, b);
            }
        }
    }
}
