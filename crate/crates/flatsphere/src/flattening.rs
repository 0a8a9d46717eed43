//! Flattenings: rational vector assignments to the vertices of a simplicial
//! k-sphere, validated as simplexwise-linear embeddings of the cone into
//! `ℝ^{k+1}` (cone vertex at the origin).
//!
//! A vertex assignment is a flattening exactly when the facet cones form a
//! complete simplicial fan: every facet cone is full-dimensional, the two
//! facets across each ridge lie strictly on opposite sides of the ridge's
//! wall, and one generic ray meets the interior of exactly one facet cone.
//! For 1-spheres an equivalent winding-number check is used and the two
//! validators are cross-tested against each other.

use num::{BigInt, BigRational, One, Signed, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::chirotope::{ChirotopeError, OrientedMatroid};
use crate::linalg::{int_det, rational, RationalMatrix};
use crate::sign::Sign;
use crate::sphere::{SimplicialSphere, SphereError, SphereSpec};

#[derive(Debug, Error)]
pub enum FlatteningError {
    #[error("vertex {0} maps to the zero vector; only the cone vertex may")]
    ZeroVector(usize),
    #[error("coordinate list has {got} vectors, expected {expected}")]
    WrongVertexCount { got: usize, expected: usize },
    #[error("vector for vertex {index} has dimension {got}, expected {expected}")]
    WrongDimension { index: usize, got: usize, expected: usize },
    #[error("non-simplicial wall data: ridge {0:?} lies in {1} facets")]
    NonSimplicialWall(Vec<usize>, usize),
    #[error("not a flattening; operation requires a valid embedding")]
    NotAFlattening,
    #[error("stratification image fails the oriented matroid flattening conditions")]
    ImageNotOmFlattening,
    #[error("cannot parse rational {0:?}")]
    BadRational(String),
    #[error(transparent)]
    Sphere(#[from] SphereError),
    #[error(transparent)]
    Chirotope(#[from] ChirotopeError),
    #[error(transparent)]
    FlatPoset(#[from] Box<crate::flat_poset::FlatPosetError>),
    #[error("json: {0}")]
    Json(String),
}

impl From<crate::flat_poset::FlatPosetError> for FlatteningError {
    fn from(e: crate::flat_poset::FlatPosetError) -> Self {
        FlatteningError::FlatPoset(Box::new(e))
    }
}

/// A rational vector per vertex of a sphere. Construction checks shapes and
/// nonzero vectors; embedding validity is a separate question answered by
/// [`Flattening::is_flattening`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Flattening {
    sphere: SimplicialSphere,
    /// coords[i] is the vector of vertex i+1, dimension k+1.
    coords: Vec<Vec<BigRational>>,
}

impl Flattening {
    pub fn new(
        sphere: SimplicialSphere,
        coords: Vec<Vec<BigRational>>,
    ) -> Result<Flattening, FlatteningError> {
        let d = sphere.dim() + 1;
        if coords.len() != sphere.vertices() {
            return Err(FlatteningError::WrongVertexCount {
                got: coords.len(),
                expected: sphere.vertices(),
            });
        }
        for (i, v) in coords.iter().enumerate() {
            if v.len() != d {
                return Err(FlatteningError::WrongDimension {
                    index: i + 1,
                    got: v.len(),
                    expected: d,
                });
            }
            if v.iter().all(|x| x.is_zero()) {
                return Err(FlatteningError::ZeroVector(i + 1));
            }
        }
        Ok(Flattening { sphere, coords })
    }

    pub fn sphere(&self) -> &SimplicialSphere {
        &self.sphere
    }

    pub fn coords(&self) -> &[Vec<BigRational>] {
        &self.coords
    }

    pub fn vertex(&self, v: usize) -> &[BigRational] {
        &self.coords[v - 1]
    }

    /// Embedding test. Dispatches to the winding-number specialization for
    /// 1-spheres and the general fan test otherwise; the two agree on
    /// 1-spheres and that agreement is part of the acceptance suite.
    pub fn is_flattening(&self) -> Result<bool, FlatteningError> {
        if self.sphere.dim() == 1 {
            self.is_flattening_winding()
        } else {
            self.is_flattening_fan()
        }
    }

    /// Generic path: facet cones nondegenerate, wall-crossing at every ridge,
    /// and a deterministically perturbed generic ray interior to exactly one
    /// facet cone.
    pub fn is_flattening_fan(&self) -> Result<bool, FlatteningError> {
        let d = self.sphere.dim() + 1;
        // (a) every facet spans.
        let mut facet_dets: Vec<Sign> = Vec::with_capacity(self.sphere.facets().len());
        for facet in self.sphere.facets() {
            let det = self.det_of(facet);
            if det.is_zero() {
                return Ok(false);
            }
            facet_dets.push(Sign::from_ordering(det.cmp(&BigInt::zero())));
        }
        // (b) opposite vertices across every wall.
        for (ridge, facets) in self.sphere.ridges() {
            if facets.len() != 2 {
                return Err(FlatteningError::NonSimplicialWall(ridge, facets.len()));
            }
            let opposite: Vec<usize> = facets
                .iter()
                .map(|&fi| {
                    *self.sphere.facets()[fi]
                        .iter()
                        .find(|v| !ridge.contains(v))
                        .expect("facet strictly contains its ridge")
                })
                .collect();
            let mut side = [Sign::Zero, Sign::Zero];
            for (slot, &v) in opposite.iter().enumerate() {
                let mut tuple = ridge.clone();
                tuple.push(v);
                let det = self.det_of(&tuple);
                side[slot] = Sign::from_ordering(det.cmp(&BigInt::zero()));
            }
            if side[0].is_zero() || side[0] != side[1].negate() {
                return Ok(false);
            }
        }
        // (c) generic ray degree one.
        let ray = self.generic_ray(d)?;
        let mut interior_count = 0usize;
        for facet in self.sphere.facets() {
            match self.cone_position(facet, &ray) {
                ConePosition::Interior => interior_count += 1,
                ConePosition::Boundary => unreachable!("ray chosen generic"),
                ConePosition::Outside => {}
            }
        }
        Ok(interior_count == 1)
    }

    /// Specialized k=1 path: consecutive determinants around the cycle share
    /// one nonzero sign and the ray-crossing count of a generic direction is
    /// exactly one (winding number ±1).
    pub fn is_flattening_winding(&self) -> Result<bool, FlatteningError> {
        let order = self
            .sphere
            .cycle_order()
            .ok_or_else(|| FlatteningError::Sphere(SphereError::OutOfFamily(self.sphere.name())))?;
        let n = order.len();
        let det2 = |a: &[BigRational], b: &[BigRational]| -> Sign {
            let d = a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone();
            Sign::from_ordering(d.cmp(&BigRational::zero()))
        };
        let mut orientation = Sign::Zero;
        for i in 0..n {
            let a = self.vertex(order[i]);
            let b = self.vertex(order[(i + 1) % n]);
            let s = det2(a, b);
            if s.is_zero() {
                return Ok(false);
            }
            if orientation.is_zero() {
                orientation = s;
            } else if s != orientation {
                return Ok(false);
            }
        }
        // Ray-crossing count: directions pass a generic ray exactly once per
        // winding. Crossing of the arc from w_i to w_{i+1} with orientation σ:
        // det(w_i, ray) and det(ray, w_{i+1}) both have sign σ.
        let ray = self.generic_ray(2)?;
        let mut crossings = 0usize;
        for i in 0..n {
            let a = self.vertex(order[i]);
            let b = self.vertex(order[(i + 1) % n]);
            if det2(a, &ray) == orientation && det2(&ray, b) == orientation {
                crossings += 1;
            }
        }
        Ok(crossings == 1)
    }

    /// Deterministic generic ray: moment-curve points (1, t, t², …) for
    /// t = 1, 2, 3, … until the ray avoids every wall hyperplane of every
    /// facet cone. Termination: each (facet, slot) pair excludes finitely
    /// many t, since the moment curve lies in no hyperplane.
    fn generic_ray(&self, d: usize) -> Result<Vec<BigRational>, FlatteningError> {
        't: for t in 1i64.. {
            let mut ray = Vec::with_capacity(d);
            let mut power = BigRational::one();
            let tq = rational(t, 1);
            for _ in 0..d {
                ray.push(power.clone());
                power *= tq.clone();
            }
            for facet in self.sphere.facets() {
                if self.det_of(facet).is_zero() {
                    // Degenerate facet: genericity against it is moot; the
                    // fan test already failed in step (a). Any ray works.
                    continue;
                }
                for omit in 0..facet.len() {
                    // Replace one generator by the ray; zero det means the
                    // ray lies on a wall hyperplane.
                    let cols: Vec<&[BigRational]> = facet
                        .iter()
                        .enumerate()
                        .map(|(k, &v)| {
                            if k == omit { ray.as_slice() } else { self.vertex(v) }
                        })
                        .collect();
                    if crate::linalg::det_sign_of_columns(&cols).is_zero() {
                        continue 't;
                    }
                }
            }
            return Ok(ray);
        }
        unreachable!("moment curve escapes every hyperplane")
    }

    /// Where a point sits relative to a simplicial cone, by Cramer's rule.
    fn cone_position(&self, facet: &[usize], point: &[BigRational]) -> ConePosition {
        let cols: Vec<&[BigRational]> = facet.iter().map(|&v| self.vertex(v)).collect();
        let base = crate::linalg::det_sign_of_columns(&cols);
        debug_assert!(!base.is_zero());
        let mut interior = true;
        for omit in 0..facet.len() {
            let replaced: Vec<&[BigRational]> = (0..facet.len())
                .map(|k| if k == omit { point } else { cols[k] })
                .collect();
            let coeff = crate::linalg::det_sign_of_columns(&replaced).mul(base);
            match coeff {
                Sign::Minus => return ConePosition::Outside,
                Sign::Zero => interior = false,
                Sign::Plus => {}
            }
        }
        if interior { ConePosition::Interior } else { ConePosition::Boundary }
    }

    fn det_of(&self, facet: &[usize]) -> BigInt {
        let cols: Vec<Vec<BigInt>> = facet
            .iter()
            .map(|&v| crate::linalg::clear_denominators(self.vertex(v)))
            .collect();
        let rows: Vec<Vec<BigInt>> = (0..cols[0].len())
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        int_det(&rows)
    }

    /// The stratification image: the oriented matroid of the vertex vectors.
    ///
    /// Requires a valid flattening; asserts that the image satisfies the
    /// oriented-matroid flattening conditions, which is the checkable content
    /// of "a flattening determines a rank k+1 oriented matroid flattening".
    pub fn mu0(&self) -> Result<OrientedMatroid, FlatteningError> {
        if !self.is_flattening()? {
            return Err(FlatteningError::NotAFlattening);
        }
        let om = OrientedMatroid::from_vectors(&self.coords)?;
        if !crate::flat_poset::is_om_flattening(&om, &self.sphere)? {
            return Err(FlatteningError::ImageNotOmFlattening);
        }
        Ok(om)
    }

    /// The GL-orbit representative: the unique linear image sending the
    /// lexicographically least facet's vertex vectors to the standard basis
    /// in vertex order. Idempotent; two flattenings have equal canonical
    /// forms iff they differ by an invertible linear map.
    pub fn canonical_form(&self) -> Result<Flattening, FlatteningError> {
        if !self.is_flattening()? {
            return Err(FlatteningError::NotAFlattening);
        }
        let facet = self.sphere.facets()[0].clone();
        let d = facet.len();
        // M = columns of the least facet; solve M x = v per vertex, i.e.
        // apply M⁻¹ to every coordinate vector.
        let m = RationalMatrix::from_rows(
            (0..d)
                .map(|i| facet.iter().map(|&v| self.vertex(v)[i].clone()).collect())
                .collect(),
        )
        .expect("rectangular");
        // Augment with all coordinate vectors and reduce: (M | all) -> (I | M⁻¹ all).
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(d);
        for i in 0..d {
            let mut row = m.row(i).to_vec();
            for v in &self.coords {
                row.push(v[i].clone());
            }
            rows.push(row);
        }
        let aug = RationalMatrix::from_rows(rows).expect("rectangular");
        let red = aug
            .reduce_to_standard()
            .map_err(|_| FlatteningError::NotAFlattening)?;
        let coords: Vec<Vec<BigRational>> = (0..self.coords.len())
            .map(|j| (0..d).map(|i| red.get(i, d + j).clone()).collect())
            .collect();
        Flattening::new(self.sphere.clone(), coords)
    }

    /// Exact maximum coordinate distance to another flattening of the same
    /// sphere.
    pub fn max_coordinate_distance(&self, other: &Flattening) -> BigRational {
        let mut best = BigRational::zero();
        for (a, b) in self.coords.iter().zip(&other.coords) {
            for (x, y) in a.iter().zip(b) {
                let diff = (x.clone() - y.clone()).abs();
                if diff > best {
                    best = diff;
                }
            }
        }
        best
    }

    pub fn to_json(&self) -> serde_json::Value {
        let file = FlatteningFile {
            sphere: self.sphere.name(),
            coords: self
                .coords
                .iter()
                .map(|v| v.iter().map(|x| x.to_string()).collect())
                .collect(),
        };
        serde_json::to_value(file).expect("serializable")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Flattening, FlatteningError> {
        let file: FlatteningFile =
            serde_json::from_value(value.clone()).map_err(|e| FlatteningError::Json(e.to_string()))?;
        let spec = SphereSpec::parse(&file.sphere)?;
        let sphere = spec.build()?;
        let coords: Result<Vec<Vec<BigRational>>, FlatteningError> = file
            .coords
            .iter()
            .map(|v| {
                v.iter()
                    .map(|s| {
                        s.parse::<BigRational>()
                            .map_err(|_| FlatteningError::BadRational(s.clone()))
                    })
                    .collect()
            })
            .collect();
        Flattening::new(sphere, coords?)
    }
}

#[derive(Debug, PartialEq, Eq)]
enum ConePosition {
    Interior,
    Boundary,
    Outside,
}

/// On-disk form: sphere descriptor plus exact rational coordinate strings.
#[derive(Serialize, Deserialize)]
struct FlatteningFile {
    sphere: String,
    coords: Vec<Vec<String>>,
}

/// Result of seeded sampling; `exhausted` marks a partial list.
#[derive(Clone, Debug)]
pub struct SampleOutcome {
    pub flattenings: Vec<Flattening>,
    pub exhausted: bool,
    pub attempts: usize,
}

/// Seeded, reproducible random flattenings of a supported sphere.
///
/// For 1-spheres: rational points on the circle through the tangent
/// half-angle map, stratified into per-vertex windows and rejection-validated
/// exactly. Higher spheres: rational jitter around a known valid flattening.
pub fn sample_flattenings(
    sphere: &SimplicialSphere,
    count: usize,
    seed: u64,
) -> Result<SampleOutcome, FlatteningError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::with_capacity(count);
    let budget = 400 * count.max(1);
    let mut attempts = 0usize;
    while out.len() < count && attempts < budget {
        attempts += 1;
        let candidate = if sphere.dim() == 1 {
            sample_circle(sphere, &mut rng)
        } else {
            sample_jitter(sphere, &mut rng)
        };
        let Ok(f) = candidate else { continue };
        if f.is_flattening()? {
            out.push(f);
        }
    }
    Ok(SampleOutcome {
        exhausted: out.len() < count,
        flattenings: out,
        attempts,
    })
}

/// Points on the unit circle: t ↦ ((1-t²)/(1+t²), 2t/(1+t²)), with the n
/// parameters drawn from consecutive windows so the directions tend to wind
/// once. Invalid configurations are rejected by the caller's exact check.
fn sample_circle(
    sphere: &SimplicialSphere,
    rng: &mut ChaCha8Rng,
) -> Result<Flattening, FlatteningError> {
    let order = sphere
        .cycle_order()
        .ok_or_else(|| FlatteningError::Sphere(SphereError::OutOfFamily(sphere.name())))?;
    let n = order.len() as i64;
    let denom = 6 * n;
    let mut coords = vec![Vec::new(); sphere.vertices()];
    for (slot, &v) in order.iter().enumerate() {
        // u in (-1, 1) windowed by slot, then t = u / (1 - u²).
        let low = -denom + 2 * denom * slot as i64 / n;
        let width = 2 * denom / n;
        let p = low + rng.random_range(1..width.max(2));
        let u = rational(p, denom);
        let t = u.clone() / (BigRational::one() - u.clone() * u);
        let t2 = t.clone() * t.clone();
        let denom_t = BigRational::one() + t2.clone();
        coords[v - 1] = vec![
            (BigRational::one() - t2) / denom_t.clone(),
            rational(2, 1) * t / denom_t,
        ];
    }
    Flattening::new(sphere.clone(), coords)
}

/// Rational jitter around a base flattening of a simplex boundary or join.
fn sample_jitter(
    sphere: &SimplicialSphere,
    rng: &mut ChaCha8Rng,
) -> Result<Flattening, FlatteningError> {
    let base = base_flattening(sphere)?;
    let coords: Vec<Vec<BigRational>> = base
        .coords
        .iter()
        .map(|v| {
            v.iter()
                .map(|x| x + rational(rng.random_range(-16..=16), 256))
                .collect()
        })
        .collect();
    Flattening::new(sphere.clone(), coords)
}

/// A known valid flattening of a supported sphere: the standard simplex cone
/// for boundaries, block stacks for joins, the regular polygon pattern (via
/// exact tangent points) for cycles.
pub fn base_flattening(sphere: &SimplicialSphere) -> Result<Flattening, FlatteningError> {
    match sphere.spec() {
        Some(SphereSpec::Simplex(m)) => {
            let d = *m;
            let mut coords = Vec::new();
            for i in 0..d {
                let mut v = vec![BigRational::zero(); d];
                v[i] = BigRational::one();
                coords.push(v);
            }
            coords.push(vec![-BigRational::one(); d]);
            Flattening::new(sphere.clone(), coords)
        }
        Some(SphereSpec::Join(a, b)) => {
            let fa = base_flattening(&SimplicialSphere::simplex_boundary(*a)?)?;
            let fb = base_flattening(&SimplicialSphere::simplex_boundary(*b)?)?;
            let (da, db) = (*a, *b);
            let mut coords = Vec::new();
            for v in fa.coords {
                let mut w = v.clone();
                w.extend(std::iter::repeat_n(BigRational::zero(), db));
                coords.push(w);
            }
            for v in fb.coords {
                let mut w = vec![BigRational::zero(); da];
                w.extend(v);
                coords.push(w);
            }
            Flattening::new(sphere.clone(), coords)
        }
        Some(SphereSpec::Cycle(_)) | None => {
            let order = sphere
                .cycle_order()
                .ok_or_else(|| FlatteningError::Sphere(SphereError::OutOfFamily(sphere.name())))?;
            let n = order.len() as i64;
            let denom = 6 * n;
            let mut coords = vec![Vec::new(); sphere.vertices()];
            for (slot, &v) in order.iter().enumerate() {
                let p = -denom + 2 * denom * slot as i64 / n + denom / n;
                let u = rational(p, denom);
                let t = u.clone() / (BigRational::one() - u.clone() * u);
                let t2 = t.clone() * t.clone();
                let dt = BigRational::one() + t2.clone();
                coords[v - 1] = vec![(BigRational::one() - t2) / dt.clone(), rational(2, 1) * t / dt];
            }
            Flattening::new(sphere.clone(), coords)
        }
    }
}
