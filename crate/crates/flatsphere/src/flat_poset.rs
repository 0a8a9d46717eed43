//! The poset of oriented matroid flattenings of a sphere: membership
//! conditions, enumeration by corank-adapted strategies, and the lowering /
//! raising self-maps that contract it.
//!
//! An oriented matroid flattening of a k-sphere `L` is a rank k+1 oriented
//! matroid on the vertices of `L` in which the vertex set of every face is
//! independent and has no other element in its (conical) convex hull. The
//! poset `P(L)` is the set of all of them under weak maps.

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::chirotope::{check_chirotope_axioms, Chirotope, ChirotopeError, OrientedMatroid};
use crate::duality::{dual, DualityError};
use crate::poset::{om_poset, FinitePoset, PosetError};
use crate::sign::{permutation_sign, BasisIndexer, Sign};
use crate::sphere::{SimplicialSphere, SphereError, SphereSpec};

#[derive(Debug, Error)]
pub enum FlatPosetError {
    #[error("oriented matroid has rank {r} on {n} elements; sphere needs rank {want_r} on {want_n}")]
    RankMismatch { r: usize, n: usize, want_r: usize, want_n: usize },
    #[error("ground set size {0} exceeds the enumeration guard {1}")]
    TooLarge(usize, usize),
    #[error("sphere {0} is out of the supported enumeration family")]
    OutOfFamily(String),
    #[error("formula anomaly for {om}: {reason}")]
    FormulaAnomaly { om: String, reason: String },
    #[error("element is not in the poset: {0}")]
    NotAnElement(String),
    #[error(transparent)]
    Chirotope(#[from] ChirotopeError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Duality(#[from] DualityError),
    #[error(transparent)]
    Sphere(#[from] SphereError),
}

/// Conditions (independent faces, empty convex hulls) for `m` to be an
/// oriented matroid flattening of `sphere`.
///
/// Independence is checked on facets; faces inherit it. The hull condition is
/// enforced in its face-pair form: no signed circuit may have its positive
/// part inside one face and its negative part inside another. Restricted to
/// singleton negative parts this is exactly "no face has another element in
/// its convex hull"; the general form also rejects configurations whose face
/// cones cross through their relative interiors (first possible in rank 3,
/// where a circuit can have both sides of size two — in rank 2 the two forms
/// agree). Without it, boundaries of simplices would admit non-embedding
/// sign patterns such as the `(+,+,-,-)` dependency.
pub fn is_om_flattening(
    m: &OrientedMatroid,
    sphere: &SimplicialSphere,
) -> Result<bool, FlatPosetError> {
    let want_r = sphere.dim() + 1;
    let want_n = sphere.vertices();
    if m.rank() != want_r || m.ground() != want_n {
        return Err(FlatPosetError::RankMismatch {
            r: m.rank(),
            n: m.ground(),
            want_r,
            want_n,
        });
    }
    let circuits = m.circuits();
    for facet in sphere.facets() {
        if !m.is_independent_with(&circuits, facet) {
            return Ok(false);
        }
    }
    // Faces are downward closed, so "⊆ some face" is just membership.
    let faces: BTreeSet<Vec<usize>> = sphere.faces().into_iter().collect();
    let side_in_a_face = |side: &[usize]| side.is_empty() || faces.contains(side);
    for c in &circuits {
        if side_in_a_face(&c.positive) && side_in_a_face(&c.negative) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// All rank-2 oriented matroids on `{1, …, n}`, from the angular model: the
/// non-loop elements are split into ordered classes (lines on a half circle)
/// with a sign each, and `χ(i,j)` follows the class order and signs.
/// Duplicates collapse under canonical normalization.
///
/// Guarded at n ≤ 8. Completeness against the raw Grassmann–Plücker search
/// is its own acceptance criterion.
pub fn enumerate_rank2_oms(
    n: usize,
    allow_loops: bool,
) -> Result<Vec<OrientedMatroid>, FlatPosetError> {
    const GUARD: usize = 8;
    if n > GUARD {
        return Err(FlatPosetError::TooLarge(n, GUARD));
    }
    let mut found: BTreeSet<OrientedMatroid> = BTreeSet::new();
    if n < 2 {
        return Ok(Vec::new());
    }
    let loop_sets: Vec<Vec<usize>> = if allow_loops {
        (0..(1usize << n))
            .map(|mask| (1..=n).filter(|i| mask >> (i - 1) & 1 == 1).collect())
            .collect()
    } else {
        vec![Vec::new()]
    };
    let indexer = BasisIndexer::new(n, 2).expect("n >= 2 checked by emptiness below");
    for loops in loop_sets {
        let non_loops: Vec<usize> = (1..=n).filter(|i| !loops.contains(i)).collect();
        let k = non_loops.len();
        if k < 2 {
            continue;
        }
        for classes in ordered_partitions(k) {
            let class_count = classes.iter().max().map_or(0, |&m| m + 1);
            if class_count < 2 {
                continue;
            }
            // Global sign flips fix χ, so pin the first non-loop to +.
            for sign_mask in 0..(1usize << (k - 1)) {
                let sign_of = |slot: usize| -> Sign {
                    if slot == 0 || sign_mask >> (slot - 1) & 1 == 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    }
                };
                let mut chi = vec![Sign::Zero; indexer.count()];
                for (a_slot, &a) in non_loops.iter().enumerate() {
                    for (b_slot, &b) in non_loops.iter().enumerate().skip(a_slot + 1) {
                        let order = match classes[a_slot].cmp(&classes[b_slot]) {
                            std::cmp::Ordering::Less => Sign::Plus,
                            std::cmp::Ordering::Equal => Sign::Zero,
                            std::cmp::Ordering::Greater => Sign::Minus,
                        };
                        // non_loops is ascending, so a < b as labels.
                        let value = sign_of(a_slot).mul(sign_of(b_slot)).mul(order);
                        let idx = indexer.rank_subset(&[a, b]).expect("pair in range");
                        chi[idx] = value;
                    }
                }
                if chi.iter().all(|s| s.is_zero()) {
                    continue;
                }
                let chirotope = Chirotope::new(2, n, chi).expect("nonzero");
                debug_assert!(chirotope.is_gp_consistent());
                found.insert(OrientedMatroid::normalize_unchecked(chirotope));
            }
        }
    }
    Ok(found.into_iter().collect())
}

/// Ordered set partitions of `{0, …, k-1}` as class-index vectors: element
/// `i` is in block `out[i]`, blocks numbered left to right, all nonempty.
fn ordered_partitions(k: usize) -> Vec<Vec<usize>> {
    let mut result = Vec::new();
    if k == 0 {
        return result;
    }
    fn extend(assignment: &mut Vec<usize>, blocks: usize, k: usize, result: &mut Vec<Vec<usize>>) {
        if assignment.len() == k {
            result.push(assignment.clone());
            return;
        }
        // Existing block:
        for b in 0..blocks {
            assignment.push(b);
            extend(assignment, blocks, k, result);
            assignment.pop();
        }
        // New block inserted at any position: shift classes >= position up.
        for pos in 0..=blocks {
            let saved = assignment.clone();
            for c in assignment.iter_mut() {
                if *c >= pos {
                    *c += 1;
                }
            }
            assignment.push(pos);
            extend(assignment, blocks + 1, k, result);
            *assignment = saved;
        }
    }
    extend(&mut Vec::new(), 0, k, &mut result);
    result
}

/// All rank-n oriented matroids on `n+1` elements (corank one), enumerated
/// from the sign pattern of the unique dependency: `χ(D \ e_j) = (-1)^j λ_j`
/// over `λ ∈ {+,-,0}^{n+1}`, not all zero.
pub fn enumerate_corank1_oms(ground: usize) -> Result<Vec<OrientedMatroid>, FlatPosetError> {
    let rank = ground - 1;
    let mut found: BTreeSet<OrientedMatroid> = BTreeSet::new();
    let indexer = BasisIndexer::new(ground, rank).expect("rank < ground");
    for code in 0..3usize.pow(ground as u32) {
        let mut c = code;
        let lambda: Vec<Sign> = (0..ground)
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
        if lambda.iter().all(|s| s.is_zero()) {
            continue;
        }
        let mut chi = vec![Sign::Zero; indexer.count()];
        for (j, &l) in lambda.iter().enumerate() {
            let subset: Vec<usize> = (1..=ground).filter(|&x| x != j + 1).collect();
            let idx = indexer.rank_subset(&subset).expect("sorted");
            chi[idx] = if j % 2 == 0 { l } else { l.negate() };
        }
        let chirotope = Chirotope::new(rank, ground, chi).expect("nonzero");
        debug_assert!(chirotope.is_gp_consistent());
        found.insert(OrientedMatroid::normalize_unchecked(chirotope));
    }
    Ok(found.into_iter().collect())
}

/// Brute-force enumeration of all rank-r oriented matroids on n elements by
/// filtering every sign array through the Grassmann–Plücker check. The
/// independent oracle for the model-based enumerations.
pub fn oms_by_gp_search(rank: usize, n: usize) -> Result<Vec<OrientedMatroid>, FlatPosetError> {
    let indexer = BasisIndexer::new(n, rank).map_err(ChirotopeError::from)?;
    let count = indexer.count();
    const GUARD: usize = 12;
    if count > GUARD {
        return Err(FlatPosetError::TooLarge(count, GUARD));
    }
    let mut found: BTreeSet<OrientedMatroid> = BTreeSet::new();
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
        if check_chirotope_axioms(rank, n, &signs).is_err() {
            continue;
        }
        found.insert(OrientedMatroid::normalize_unchecked(
            Chirotope::new(rank, n, signs).expect("nonzero"),
        ));
    }
    Ok(found.into_iter().collect())
}

/// The poset of oriented matroid flattenings of a sphere.
#[derive(Clone, Debug)]
pub struct FlatteningPoset {
    sphere: SimplicialSphere,
    poset: FinitePoset<OrientedMatroid>,
}

impl FlatteningPoset {
    pub fn sphere(&self) -> &SimplicialSphere {
        &self.sphere
    }

    pub fn poset(&self) -> &FinitePoset<OrientedMatroid> {
        &self.poset
    }

    pub fn len(&self) -> usize {
        self.poset.len()
    }

    pub fn is_empty(&self) -> bool {
        self.poset.is_empty()
    }

    pub fn contains(&self, m: &OrientedMatroid) -> bool {
        self.index_of(m).is_some()
    }

    pub fn index_of(&self, m: &OrientedMatroid) -> Option<usize> {
        self.poset.elements().binary_search(m).ok()
    }
}

/// Enumerate `P(L)` with the strategy suited to the sphere:
/// 1-spheres directly from the rank-2 model, simplex boundaries from the
/// corank-1 dependency patterns, joins of simplex boundaries (corank 2) by
/// dualizing the rank-2 enumeration.
pub fn enumerate_p(sphere: &SimplicialSphere) -> Result<FlatteningPoset, FlatPosetError> {
    match sphere.spec() {
        Some(SphereSpec::Cycle(_)) => enumerate_p_direct_rank2(sphere),
        Some(SphereSpec::Simplex(m)) => {
            if *m > 6 {
                return Err(FlatPosetError::TooLarge(*m, 6));
            }
            let candidates = enumerate_corank1_oms(m + 1)?;
            build_flattening_poset(sphere, candidates)
        }
        Some(SphereSpec::Join(_, _)) => enumerate_p_via_duality(sphere),
        None if sphere.dim() == 1 => enumerate_p_direct_rank2(sphere),
        None if sphere.vertices() == sphere.dim() + 3 => enumerate_p_via_duality(sphere),
        None => Err(FlatPosetError::OutOfFamily(sphere.name())),
    }
}

/// Direct route for 1-spheres: filter the rank-2 enumeration.
pub fn enumerate_p_direct_rank2(
    sphere: &SimplicialSphere,
) -> Result<FlatteningPoset, FlatPosetError> {
    if sphere.dim() != 1 || sphere.cycle_order().is_none() {
        return Err(FlatPosetError::OutOfFamily(sphere.name()));
    }
    let candidates = enumerate_rank2_oms(sphere.vertices(), false)?;
    build_flattening_poset(sphere, candidates)
}

/// Corank-2 route: every rank-(n-2) oriented matroid on n elements is the
/// dual of a rank-2 one, so dualize the rank-2 enumeration and filter.
pub fn enumerate_p_via_duality(
    sphere: &SimplicialSphere,
) -> Result<FlatteningPoset, FlatPosetError> {
    let n = sphere.vertices();
    let rank = sphere.dim() + 1;
    if n != rank + 2 {
        return Err(FlatPosetError::OutOfFamily(sphere.name()));
    }
    let mut candidates = Vec::new();
    for r2 in enumerate_rank2_oms(n, true)? {
        candidates.push(dual(&r2)?);
    }
    build_flattening_poset(sphere, candidates)
}

/// Oracle route: GP-filter every sign array, then apply the flattening
/// conditions. Only feasible for tiny spheres; used to cross-check the
/// model-based routes.
pub fn enumerate_p_by_gp_search(
    sphere: &SimplicialSphere,
) -> Result<FlatteningPoset, FlatPosetError> {
    let candidates = oms_by_gp_search(sphere.dim() + 1, sphere.vertices())?;
    build_flattening_poset(sphere, candidates)
}

fn build_flattening_poset(
    sphere: &SimplicialSphere,
    candidates: Vec<OrientedMatroid>,
) -> Result<FlatteningPoset, FlatPosetError> {
    let mut elements = Vec::new();
    for m in candidates {
        if is_om_flattening(&m, sphere)? {
            elements.push(m);
        }
    }
    let poset = om_poset(elements)?;
    Ok(FlatteningPoset {
        sphere: sphere.clone(),
        poset,
    })
}

/// Which ordered basis the lowering/raising maps modify, on `P(cycle(n))`
/// where `n` is the extension vertex (deleting it leaves `cycle(n-1)`).
///
/// `Printed` follows the displayed formulas; the two alternates exist because
/// the displayed basis does not involve the extension element, and the CLI
/// can run all three for comparison.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BasisVariant {
    Printed,
    NSucc,
    Succ1,
}

impl BasisVariant {
    pub fn parse(text: &str) -> Option<BasisVariant> {
        match text {
            "printed" => Some(BasisVariant::Printed),
            "n-succ" => Some(BasisVariant::NSucc),
            "succ-1" => Some(BasisVariant::Succ1),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            BasisVariant::Printed => "printed",
            BasisVariant::NSucc => "n-succ",
            BasisVariant::Succ1 => "succ-1",
        }
    }

    /// Ordered pair (a, b) whose entry the maps rewrite, on cycle(n).
    pub fn target_pair(&self, n: usize) -> (usize, usize) {
        match self {
            BasisVariant::Printed => (n - 1, 1),
            BasisVariant::NSucc => (n - 1, n),
            BasisVariant::Succ1 => (n, 1),
        }
    }
}

/// The lowering map on `P(cycle(n))`: in the representative positive on
/// basis {1,2}, the entry at the target ordered pair is zeroed unless it is
/// already `+`. Every other entry is untouched.
pub fn f0_map(m: &OrientedMatroid, variant: BasisVariant) -> Result<OrientedMatroid, FlatPosetError> {
    rewrite_entry(m, variant, |v| match v {
        Sign::Plus => Sign::Plus,
        Sign::Zero | Sign::Minus => Sign::Zero,
    })
}

/// The raising map on the image of `f0`: the entry at the target ordered
/// pair is set to `+` outright.
pub fn f1_map(m: &OrientedMatroid, variant: BasisVariant) -> Result<OrientedMatroid, FlatPosetError> {
    rewrite_entry(m, variant, |_| Sign::Plus)
}

fn rewrite_entry(
    m: &OrientedMatroid,
    variant: BasisVariant,
    f: impl Fn(Sign) -> Sign,
) -> Result<OrientedMatroid, FlatPosetError> {
    let n = m.ground();
    let rep = m.representative_positive_on(&[1, 2])?;
    let (a, b) = variant.target_pair(n);
    let old = rep.evaluate(&[a, b])?;
    let new = f(old);
    if new == old {
        return Ok(m.clone());
    }
    let (lo, hi) = (a.min(b), a.max(b));
    let perm = permutation_sign(&[a, b]).expect("distinct");
    let stored = new.mul(perm);
    let indexer = rep.indexer();
    let idx = indexer.rank_subset(&[lo, hi]).expect("pair");
    let mut signs = rep.signs().to_vec();
    signs[idx] = stored;
    let chi = Chirotope::new(2, n, signs).map_err(|e| FlatPosetError::FormulaAnomaly {
        om: m.sign_string(),
        reason: e.to_string(),
    })?;
    if let Some(v) = chi.gp_violation() {
        return Err(FlatPosetError::FormulaAnomaly {
            om: m.sign_string(),
            reason: v.to_string(),
        });
    }
    Ok(OrientedMatroid::normalize_unchecked(chi))
}

/// The subposet `Σ` of `P(cycle(n))`: elements whose deletion at the
/// extension vertex `n` lands in `P(cycle(n-1))`. The paper's second
/// characterization — `n` lies in the convex hull of `{1, n-1}` — is
/// evaluated too, and any divergence between the two filters is reported
/// rather than resolved silently.
pub struct SigmaReport {
    /// Indices into the parent poset, elements passing both filters.
    pub indices: Vec<usize>,
    pub subposet: FinitePoset<OrientedMatroid>,
    /// Elements on which the two characterizations disagree.
    pub divergence: Vec<String>,
}

pub fn sigma_subposet(p: &FlatteningPoset) -> Result<SigmaReport, FlatPosetError> {
    let n = p.sphere().vertices();
    let smaller = SimplicialSphere::cycle(n - 1)?;
    let p_smaller = enumerate_p_direct_rank2(&smaller)?;
    let mut indices = Vec::new();
    let mut divergence = Vec::new();
    for i in 0..p.len() {
        let m = p.poset().element(i);
        let by_deletion = match m.delete(n) {
            Ok(d) => p_smaller.contains(&d),
            Err(_) => false,
        };
        let by_hull = m.convex_hull_contains(&[1, n - 1], n);
        if by_deletion != by_hull {
            divergence.push(m.sign_string());
        }
        if by_deletion && by_hull {
            indices.push(i);
        }
    }
    let subposet = p.poset().subposet(&indices);
    Ok(SigmaReport {
        indices,
        subposet,
        divergence,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::rational_int;
    use num::BigRational;

    fn vecs(entries: &[&[i64]]) -> Vec<Vec<BigRational>> {
        entries
            .iter()
            .map(|row| row.iter().map(|&x| rational_int(x)).collect())
            .collect()
    }

    #[test]
    fn triangle_membership() {
        let sphere = SimplicialSphere::cycle(3).unwrap();
        let good = OrientedMatroid::from_vectors(&vecs(&[&[1, 0], &[-1, 1], &[0, -1]])).unwrap();
        assert!(is_om_flattening(&good, &sphere).unwrap());
        let bad = OrientedMatroid::from_vectors(&vecs(&[&[1, 0], &[0, 1], &[1, 1]])).unwrap();
        assert!(!is_om_flattening(&bad, &sphere).unwrap());
        // A loop fails the singleton face.
        use Sign::*;
        let with_loop = OrientedMatroid::normalize_unchecked(
            Chirotope::new(2, 3, vec![Zero, Plus, Zero]).unwrap(),
        );
        assert!(!is_om_flattening(&with_loop, &sphere).unwrap());
        // Rank mismatch is an input error, not false.
        let r3 = OrientedMatroid::from_vectors(&vecs(&[&[1, 0, 0], &[0, 1, 0], &[0, 0, 1]])).unwrap();
        assert!(is_om_flattening(&r3, &sphere).is_err());
    }

    #[test]
    fn ordered_partition_counts_are_fubini() {
        assert_eq!(ordered_partitions(1).len(), 1);
        assert_eq!(ordered_partitions(2).len(), 3);
        assert_eq!(ordered_partitions(3).len(), 13);
        assert_eq!(ordered_partitions(4).len(), 75);
        assert_eq!(ordered_partitions(5).len(), 541);
    }

    #[test]
    fn rank2_enumeration_matches_gp_search() {
        for n in 2..=4usize {
            let model: Vec<_> = enumerate_rank2_oms(n, true).unwrap();
            let search: Vec<_> = oms_by_gp_search(2, n)
                .unwrap()
                .into_iter()
                .filter(|m| m.rank() == 2)
                .collect();
            assert_eq!(model, search, "n = {n}");
        }
        // Loop-free counts: n=2 has exactly one.
        assert_eq!(enumerate_rank2_oms(2, false).unwrap().len(), 1);
    }

    #[test]
    fn p_of_small_spheres() {
        let p3 = enumerate_p(&SimplicialSphere::cycle(3).unwrap()).unwrap();
        assert_eq!(p3.len(), 1, "P(cycle 3) is a point");

        for m in 2..=4usize {
            let p = enumerate_p(&SimplicialSphere::simplex_boundary(m).unwrap()).unwrap();
            assert_eq!(p.len(), 1, "P(simplex {m}) is a point");
        }
    }

    #[test]
    fn p_matches_gp_search_route() {
        for n in 3..=5usize {
            let sphere = SimplicialSphere::cycle(n).unwrap();
            let direct = enumerate_p(&sphere).unwrap();
            let oracle = enumerate_p_by_gp_search(&sphere).unwrap();
            assert_eq!(direct.poset().elements(), oracle.poset().elements(), "n = {n}");
        }
    }

    #[test]
    fn join_minimum_is_join_of_factors() {
        let sphere = SphereSpec::Join(1, 1).build().unwrap();
        let p = enumerate_p(&sphere).unwrap();
        let m1 = enumerate_p(&SimplicialSphere::simplex_boundary(1).unwrap()).unwrap();
        let factor = m1.poset().element(0).clone();
        let expected_min = factor.join(&factor);
        let min = p.poset().minimum().expect("unique minimum");
        assert_eq!(p.poset().element(min), &expected_min);
    }

    #[test]
    fn duality_route_agrees_with_direct_on_the_4_cycle_join() {
        let sphere = SphereSpec::Join(1, 1).build().unwrap();
        let via_dual = enumerate_p_via_duality(&sphere).unwrap();
        let direct = enumerate_p_direct_rank2(&sphere).unwrap();
        assert_eq!(via_dual.poset().elements(), direct.poset().elements());
        assert!(via_dual.len() > 0);
    }

    #[test]
    fn f0_f1_on_p4() {
        let p = enumerate_p(&SimplicialSphere::cycle(4).unwrap()).unwrap();
        let n = 4;
        let (a, b) = BasisVariant::Printed.target_pair(n);
        assert_eq!((a, b), (3, 1));
        for i in 0..p.len() {
            let m = p.poset().element(i);
            let image = f0_map(m, BasisVariant::Printed).unwrap();
            assert!(p.contains(&image), "f0 image stays in P");
            // Fixed point on +, zeroed otherwise.
            let rep = m.representative_positive_on(&[1, 2]).unwrap();
            let old = rep.evaluate(&[a, b]).unwrap();
            let new_rep = image.representative_positive_on(&[1, 2]).unwrap();
            let new = new_rep.evaluate(&[a, b]).unwrap();
            match old {
                Sign::Plus => assert_eq!(new, Sign::Plus),
                _ => assert_eq!(new, Sign::Zero),
            }
            // f0 is idempotent pointwise.
            assert_eq!(f0_map(&image, BasisVariant::Printed).unwrap(), image);
            // f1 then pins the entry to +.
            let raised = f1_map(&image, BasisVariant::Printed).unwrap();
            let raised_rep = raised.representative_positive_on(&[1, 2]).unwrap();
            assert_eq!(raised_rep.evaluate(&[a, b]).unwrap(), Sign::Plus);
        }
    }

    #[test]
    fn sigma_of_p4_characterizations_agree() {
        let p = enumerate_p(&SimplicialSphere::cycle(4).unwrap()).unwrap();
        let sigma = sigma_subposet(&p).unwrap();
        assert!(sigma.divergence.is_empty(), "filters diverge: {:?}", sigma.divergence);
        assert!(!sigma.indices.is_empty());
        // Every sigma element keeps the extension vertex in conv{1, n-1}.
        for &i in &sigma.indices {
            assert!(p.poset().element(i).convex_hull_contains(&[1, 3], 4));
        }
    }

    #[test]
    fn guards_fire() {
        assert!(enumerate_rank2_oms(9, false).is_err());
        let torus_like = SimplicialSphere::cycle(9);
        assert!(torus_like.is_ok());
        assert!(enumerate_p(&torus_like.unwrap()).is_err());
    }
}
