//! Exact realization of rank-2 oriented matroids and δ-close closure
//! witnesses for weak-map pairs in a cycle's flattening poset.
//!
//! Everything runs on the doubled point set: each element contributes its
//! direction and the antipode of its direction. A rank-2 chirotope determines
//! the circular order of these 2n points exactly (zeros are coincidences),
//! and rational positions on the circle come from the tangent half-angle
//! parametrization, so antipodes stay exact: the antipode of parameter `t`
//! is `-1/t`.

use std::cmp::Ordering;

use num::{BigRational, One};
use thiserror::Error;

use crate::chirotope::{Chirotope, ChirotopeError, OrientedMatroid};
use crate::flat_poset::{is_om_flattening, FlatPosetError};
use crate::flattening::{Flattening, FlatteningError};
use crate::linalg::rational_int;
use crate::poset::{weak_leq, PosetError};
use crate::sign::Sign;
use crate::sphere::SimplicialSphere;

#[derive(Debug, Error)]
pub enum WitnessError {
    #[error("oriented matroid has rank {0}, need rank 2")]
    NotRank2(usize),
    #[error("oriented matroid has a loop; no loop-free realization exists")]
    Loopy,
    #[error("witness requires N < M strictly under weak maps")]
    NotStrictlyBelow,
    #[error("{0} is not an oriented matroid flattening of the sphere")]
    NotInPoset(String),
    #[error("witness search exhausted its budget: {0}")]
    NotFound(String),
    #[error("internal realization mismatch: {0}")]
    Realization(String),
    #[error(transparent)]
    Chirotope(#[from] ChirotopeError),
    #[error(transparent)]
    Flattening(#[from] Box<FlatteningError>),
    #[error(transparent)]
    FlatPoset(#[from] FlatPosetError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

impl From<FlatteningError> for WitnessError {
    fn from(e: FlatteningError) -> Self {
        WitnessError::Flattening(Box::new(e))
    }
}

/// Point `(element, antipode?)` encoded as `2(element-1) + antipode`.
fn point_id(element: usize, antipode: bool) -> usize {
    2 * (element - 1) + antipode as usize
}

fn point_element(pid: usize) -> usize {
    pid / 2 + 1
}

fn point_antipode(pid: usize) -> bool {
    pid % 2 == 1
}

/// The circular order of the 2n doubled points of a rank-2 chirotope.
///
/// Classes are coincidence classes in circular order starting at the class of
/// point `(1, +)`; the first `half0` classes lie in the closed-open half
/// circle starting there, and class `half0 + h` is the antipodal class of
/// class `h`.
pub struct CircularModel {
    pub point_class: Vec<usize>,
    pub classes: Vec<Vec<usize>>,
    pub half0: usize,
}

/// Sign of `sin(angle(q) - angle(p))` from the chirotope.
fn point_sin(chi: &Chirotope, p: usize, q: usize) -> Sign {
    let (i, j) = (point_element(p), point_element(q));
    if i == j {
        return Sign::Zero;
    }
    let value = chi.evaluate(&[i, j]).expect("pair of elements");
    if point_antipode(p) == point_antipode(q) {
        value
    } else {
        value.negate()
    }
}

pub fn circular_model(chi: &Chirotope) -> Result<CircularModel, WitnessError> {
    if chi.rank() != 2 {
        return Err(WitnessError::NotRank2(chi.rank()));
    }
    let n = chi.ground();
    // Tie-break witness: an element not on element 1's line.
    let witness = (2..=n)
        .find(|&j| !chi.entry(&[1, j]).expect("pair").is_zero())
        .ok_or(WitnessError::Loopy)?;
    let half = |pid: usize| -> usize {
        if pid == point_id(1, false) {
            return 0;
        }
        if pid == point_id(1, true) {
            return 1;
        }
        match point_sin(chi, point_id(1, false), pid) {
            Sign::Plus => 0,
            Sign::Minus => 1,
            Sign::Zero => {
                // Coincides with the reference or its antipode.
                let tau = point_sin(chi, pid, point_id(witness, false))
                    .mul(point_sin(chi, point_id(1, false), point_id(witness, false)));
                match tau {
                    Sign::Plus => 0,
                    Sign::Minus => 1,
                    Sign::Zero => unreachable!("witness is off the reference line"),
                }
            }
        }
    };
    let mut points: Vec<usize> = (0..2 * n).collect();
    // Loops have no direction.
    for e in 1..=n {
        let is_loop = (1..=n).all(|f| e == f || chi.entry(&[e.min(f), e.max(f)]).unwrap().is_zero());
        if is_loop {
            return Err(WitnessError::Loopy);
        }
    }
    points.sort_by(|&p, &q| {
        let (hp, hq) = (half(p), half(q));
        hp.cmp(&hq).then_with(|| match point_sin(chi, p, q) {
            Sign::Plus => Ordering::Less,
            Sign::Minus => Ordering::Greater,
            Sign::Zero => Ordering::Equal,
        })
    });
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &p in &points {
        let start_new = match classes.last() {
            Some(cls) => {
                let q = cls[0];
                half(p) != half(q) || !point_sin(chi, p, q).is_zero()
            }
            None => true,
        };
        if start_new {
            classes.push(vec![p]);
        } else {
            classes.last_mut().expect("nonempty").push(p);
        }
    }
    let half0 = classes
        .iter()
        .take_while(|cls| half(cls[0]) == 0)
        .count();
    if classes.len() != 2 * half0 {
        return Err(WitnessError::Realization(format!(
            "halves are unbalanced: {} classes, {} in the first half",
            classes.len(),
            half0
        )));
    }
    let mut point_class = vec![usize::MAX; 2 * n];
    for (c, cls) in classes.iter().enumerate() {
        for &p in cls {
            point_class[p] = c;
        }
    }
    // Antipodal pairing: class half0 + h must be the pointwise antipode of
    // class h.
    for h in 0..half0 {
        let mut image: Vec<usize> = classes[h].iter().map(|&p| p ^ 1).collect();
        image.sort_unstable();
        let mut other = classes[half0 + h].clone();
        other.sort_unstable();
        if image != other {
            return Err(WitnessError::Realization(format!(
                "antipodal pairing broken at class {h}"
            )));
        }
    }
    Ok(CircularModel {
        point_class,
        classes,
        half0,
    })
}

/// Point on the unit circle with tangent half-angle parameter `t`.
fn circle_point(t: &BigRational) -> Vec<BigRational> {
    let t2 = t * t;
    let denom = BigRational::one() + t2.clone();
    vec![
        (BigRational::one() - t2) / denom.clone(),
        rational_int(2) * t / denom,
    ]
}

fn antipode_param(t: &BigRational) -> BigRational {
    -BigRational::one() / t
}

/// Element coordinates from per-class circle parameters: class `h < half0`
/// sits at `params[h]`, its antipodal class at `-1/params[h]`.
fn coords_from(model: &CircularModel, params: &[BigRational]) -> Vec<Vec<BigRational>> {
    let n = model.point_class.len() / 2;
    (1..=n)
        .map(|e| {
            let c = model.point_class[point_id(e, false)];
            let t = if c < model.half0 {
                params[c].clone()
            } else {
                antipode_param(&params[c - model.half0])
            };
            circle_point(&t)
        })
        .collect()
}

/// Exact rational realization of a loop-free rank-2 oriented matroid.
///
/// The chirotope of the returned configuration equals the canonical
/// representative exactly; this is asserted, not assumed.
pub fn realize_rank2(m: &OrientedMatroid) -> Result<Vec<Vec<BigRational>>, WitnessError> {
    let model = circular_model(m.chirotope())?;
    let params: Vec<BigRational> = (0..model.half0).map(|h| rational_int(1 + h as i64)).collect();
    let coords = coords_from(&model, &params);
    let realized = OrientedMatroid::from_vectors(&coords)?;
    if realized != *m {
        return Err(WitnessError::Realization(format!(
            "realization has chirotope {}, want {}",
            realized.sign_string(),
            m.sign_string()
        )));
    }
    Ok(coords)
}

/// A closure witness: flattenings of the same sphere mapping to `N` and `M`
/// within `max_distance ≤ δ` of each other, coordinatewise.
#[derive(Clone, Debug)]
pub struct CoverWitness {
    pub f_below: Flattening,
    pub f_above: Flattening,
    pub max_distance: BigRational,
}

/// For `N < M` in `P(L)` with `L` a 1-sphere, build flattenings `f_N ≈ f_M`
/// with `μ₀(f_N) = N`, `μ₀(f_M) = M`, and coordinates within `δ`.
///
/// Realizes `N` from its circular model, then splits each coincidence class
/// according to `M`'s refined circular order with a rational spread `η`,
/// shrinking `η` until the exact distance bound holds.
pub fn cover_witness(
    below: &OrientedMatroid,
    above: &OrientedMatroid,
    delta: &BigRational,
    sphere: &SimplicialSphere,
) -> Result<CoverWitness, WitnessError> {
    if below == above || !weak_leq(below, above)? {
        return Err(WitnessError::NotStrictlyBelow);
    }
    for m in [below, above] {
        if !is_om_flattening(m, sphere)? {
            return Err(WitnessError::NotInPoset(m.sign_string()));
        }
    }
    // Align representatives: chi_above pointwise above the canonical
    // chi_below. A nonzero entry of chi_below pins the choice.
    let chi_n = below.chirotope().clone();
    let canonical = above.chirotope().clone();
    let entrywise = |a: &Chirotope, b: &Chirotope| {
        a.signs().iter().zip(b.signs()).all(|(&x, &y)| x.leq(y))
    };
    let chi_m = if entrywise(&chi_n, &canonical) {
        canonical
    } else {
        let negated = canonical.negate();
        debug_assert!(entrywise(&chi_n, &negated));
        negated
    };
    let model_n = circular_model(&chi_n)?;
    let model_m = circular_model(&chi_m)?;
    let n = below.ground();

    // Each class of M lies inside one class of N.
    let n_class_of_m: Vec<usize> = model_m
        .classes
        .iter()
        .map(|cls| {
            let c = model_n.point_class[cls[0]];
            debug_assert!(cls.iter().all(|&p| model_n.point_class[p] == c));
            c
        })
        .collect();
    // Local order of M-subclasses within each half-0 class of N: ascending
    // global M-order, except that the reference class wraps: subclasses just
    // below the reference angle sort at the end of M's global order and must
    // come first locally, with negative offsets.
    let ref_point = point_id(1, false);
    let mut local: Vec<Vec<usize>> = vec![Vec::new(); model_n.half0];
    for (g, &nc) in n_class_of_m.iter().enumerate() {
        if nc < model_n.half0 {
            local[nc].push(g);
        }
    }
    let befores;
    {
        let ref_cluster = &mut local[model_n.point_class[ref_point]];
        let is_before = |g: usize| {
            point_sin(&chi_m, ref_point, model_m.classes[g][0]) == Sign::Minus
        };
        ref_cluster.sort_by_key(|&g| (if is_before(g) { 0 } else { 1 }, g));
        befores = ref_cluster.iter().filter(|&&g| is_before(g)).count();
    }

    let slots: Vec<BigRational> =
        (0..model_n.half0).map(|h| rational_int(1 + h as i64)).collect();
    let f_below_coords = coords_from(&model_n, &slots);
    let f_below = Flattening::new(sphere.clone(), f_below_coords)?;
    let realized_n = f_below.mu0()?;
    if realized_n != *below {
        return Err(WitnessError::Realization(
            "realization of the lower element does not reproduce it".into(),
        ));
    }

    let mut eta = delta / rational_int(32 * (n as i64 + 1));
    for _ in 0..64 {
        // Positions per M-class: half-0 N-clusters directly, antipodal
        // partners derived so zero entries stay exact.
        let mut m_params: Vec<Option<BigRational>> = vec![None; model_m.classes.len()];
        for (c, cluster) in local.iter().enumerate() {
            let nb = if c == model_n.point_class[ref_point] { befores } else { 0 };
            for (k, &g) in cluster.iter().enumerate() {
                let offset = rational_int(k as i64 - nb as i64) * eta.clone();
                m_params[g] = Some(slots[c].clone() + offset);
            }
        }
        for g in 0..model_m.classes.len() {
            if m_params[g].is_none() {
                let partner = model_m.point_class[model_m.classes[g][0] ^ 1];
                let base = m_params[partner].clone().ok_or_else(|| {
                    WitnessError::Realization("antipodal partner not yet placed".into())
                })?;
                m_params[g] = Some(antipode_param(&base));
            }
        }
        let coords: Vec<Vec<BigRational>> = (1..=n)
            .map(|e| {
                let g = model_m.point_class[point_id(e, false)];
                circle_point(m_params[g].as_ref().expect("placed"))
            })
            .collect();
        let f_above = Flattening::new(sphere.clone(), coords)?;
        let distance = f_below.max_coordinate_distance(&f_above);
        if distance > *delta {
            eta /= rational_int(4);
            continue;
        }
        if !f_above.is_flattening()? {
            eta /= rational_int(4);
            continue;
        }
        let realized_m = f_above.mu0()?;
        if realized_m != *above {
            eta /= rational_int(4);
            continue;
        }
        return Ok(CoverWitness {
            f_below,
            f_above,
            max_distance: distance,
        });
    }
    Err(WitnessError::NotFound(format!(
        "no witness for {} under {} within the spread budget",
        below.sign_string(),
        above.sign_string()
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::flat_poset::{enumerate_p, enumerate_rank2_oms};
    use crate::linalg::rational;

    #[test]
    fn realizes_every_loop_free_rank2_om_up_to_n5() {
        for n in 2..=5usize {
            for m in enumerate_rank2_oms(n, false).unwrap() {
                let coords = realize_rank2(&m).expect("realizable");
                assert_eq!(coords.len(), n);
            }
        }
    }

    #[test]
    fn loops_are_rejected() {
        use crate::sign::Sign::*;
        let m = OrientedMatroid::normalize_unchecked(
            Chirotope::new(2, 3, vec![Zero, Plus, Zero]).unwrap(),
        );
        assert!(matches!(realize_rank2(&m), Err(WitnessError::Loopy)));
    }

    #[test]
    fn square_cover_witness() {
        let sphere = SimplicialSphere::cycle(4).unwrap();
        let p = enumerate_p(&sphere).unwrap();
        // The square OM (two antipodal pairs) sits below uniform elements.
        let square = p
            .poset()
            .elements()
            .iter()
            .find(|m| {
                m.entry(&[1, 3]).unwrap().is_zero() && m.entry(&[2, 4]).unwrap().is_zero()
            })
            .expect("square element exists")
            .clone();
        let above_idx = (0..p.len())
            .find(|&i| {
                let m = p.poset().element(i);
                *m != square && weak_leq(&square, m).unwrap()
            })
            .expect("uniform refinement exists");
        let above = p.poset().element(above_idx).clone();
        let delta = rational(1, 1_000_000);
        let w = cover_witness(&square, &above, &delta, &sphere).unwrap();
        assert!(w.max_distance <= delta);
        assert_eq!(w.f_below.mu0().unwrap(), square);
        assert_eq!(w.f_above.mu0().unwrap(), above);
    }

    #[test]
    fn all_covers_of_p4_have_witnesses() {
        let sphere = SimplicialSphere::cycle(4).unwrap();
        let p = enumerate_p(&sphere).unwrap();
        let delta = rational(1, 1_000_000);
        for &(lo, hi) in p.poset().covers() {
            let below = p.poset().element(lo);
            let above = p.poset().element(hi);
            let w = cover_witness(below, above, &delta, &sphere)
                .unwrap_or_else(|e| panic!("cover {lo}->{hi}: {e}"));
            assert!(w.max_distance <= delta);
        }
    }

    #[test]
    fn unrelated_pair_is_an_input_error() {
        let sphere = SimplicialSphere::cycle(4).unwrap();
        let p = enumerate_p(&sphere).unwrap();
        let maxes = p.poset().maximal_elements();
        assert!(maxes.len() >= 2);
        let a = p.poset().element(maxes[0]);
        let b = p.poset().element(maxes[1]);
        assert!(matches!(
            cover_witness(a, b, &rational(1, 10), &sphere),
            Err(WitnessError::NotStrictlyBelow)
        ));
        assert!(matches!(
            cover_witness(a, a, &rational(1, 10), &sphere),
            Err(WitnessError::NotStrictlyBelow)
        ));
    }
}
