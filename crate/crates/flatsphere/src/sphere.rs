//! Simplicial spheres from the three constructors used throughout: cycles,
//! simplex boundaries, and joins. Sphere-ness is guaranteed by construction,
//! never checked after the fact.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum SphereError {
    #[error("cycle needs at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("simplex boundary needs dimension at least 1, got {0}")]
    SimplexTooSmall(usize),
    #[error("unsupported sphere spec {0:?}; expected cycle:n, simplex:m, or join:a,b")]
    BadSpec(String),
    #[error("sphere is out of the supported family for this operation: {0}")]
    OutOfFamily(String),
}

/// Parsed sphere descriptor, the external name of a sphere.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SphereSpec {
    /// `cycle:n` — the n-gon, a 1-sphere.
    Cycle(usize),
    /// `simplex:m` — the boundary of the m-simplex, an (m-1)-sphere.
    Simplex(usize),
    /// `join:a,b` — the join of simplex boundaries `∂Δ^a * ∂Δ^b`.
    Join(usize, usize),
}

impl SphereSpec {
    pub fn parse(text: &str) -> Result<SphereSpec, SphereError> {
        let bad = || SphereError::BadSpec(text.to_string());
        let (kind, args) = text.split_once(':').ok_or_else(bad)?;
        match kind {
            "cycle" => Ok(SphereSpec::Cycle(args.parse().map_err(|_| bad())?)),
            "simplex" => Ok(SphereSpec::Simplex(args.parse().map_err(|_| bad())?)),
            "join" => {
                let (a, b) = args.split_once(',').ok_or_else(bad)?;
                Ok(SphereSpec::Join(
                    a.parse().map_err(|_| bad())?,
                    b.parse().map_err(|_| bad())?,
                ))
            }
            _ => Err(bad()),
        }
    }

    pub fn build(&self) -> Result<SimplicialSphere, SphereError> {
        match *self {
            SphereSpec::Cycle(n) => SimplicialSphere::cycle(n),
            SphereSpec::Simplex(m) => SimplicialSphere::simplex_boundary(m),
            SphereSpec::Join(a, b) => Ok(SimplicialSphere::join(
                &SimplicialSphere::simplex_boundary(a)?,
                &SimplicialSphere::simplex_boundary(b)?,
            )),
        }
    }
}

impl fmt::Display for SphereSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SphereSpec::Cycle(n) => write!(f, "cycle:{n}"),
            SphereSpec::Simplex(m) => write!(f, "simplex:{m}"),
            SphereSpec::Join(a, b) => write!(f, "join:{a},{b}"),
        }
    }
}

/// A triangulated k-sphere given by its facet list on vertices `{1, …, n}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSphere {
    dim: usize,
    vertices: usize,
    /// Sorted (k+1)-subsets, sorted lexicographically.
    facets: Vec<Vec<usize>>,
    spec: Option<SphereSpec>,
}

impl SimplicialSphere {
    /// The n-gon: vertices `1, …, n` in cyclic order.
    pub fn cycle(n: usize) -> Result<SimplicialSphere, SphereError> {
        if n < 3 {
            return Err(SphereError::CycleTooSmall(n));
        }
        let mut facets: Vec<Vec<usize>> = (1..n).map(|i| vec![i, i + 1]).collect();
        facets.push(vec![1, n]);
        facets.sort();
        Ok(SimplicialSphere {
            dim: 1,
            vertices: n,
            facets,
            spec: Some(SphereSpec::Cycle(n)),
        })
    }

    /// Boundary of the m-simplex: all m-subsets of `{1, …, m+1}`.
    pub fn simplex_boundary(m: usize) -> Result<SimplicialSphere, SphereError> {
        if m < 1 {
            return Err(SphereError::SimplexTooSmall(m));
        }
        let mut facets = Vec::new();
        for omit in 1..=(m + 1) {
            facets.push((1..=m + 1).filter(|&v| v != omit).collect::<Vec<_>>());
        }
        facets.sort();
        Ok(SimplicialSphere {
            dim: m - 1,
            vertices: m + 1,
            facets,
            spec: Some(SphereSpec::Simplex(m)),
        })
    }

    /// Join: facets are unions of one facet from each factor, with the second
    /// factor's vertices shifted by the first factor's vertex count.
    pub fn join(a: &SimplicialSphere, b: &SimplicialSphere) -> SimplicialSphere {
        let mut facets = Vec::new();
        for fa in &a.facets {
            for fb in &b.facets {
                let mut f = fa.clone();
                f.extend(fb.iter().map(|&v| v + a.vertices));
                facets.push(f);
            }
        }
        facets.sort();
        let spec = match (&a.spec, &b.spec) {
            (Some(SphereSpec::Simplex(x)), Some(SphereSpec::Simplex(y))) => {
                Some(SphereSpec::Join(*x, *y))
            }
            _ => None,
        };
        SimplicialSphere {
            dim: a.dim + b.dim + 1,
            vertices: a.vertices + b.vertices,
            facets,
            spec,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertices(&self) -> usize {
        self.vertices
    }

    pub fn facets(&self) -> &[Vec<usize>] {
        &self.facets
    }

    pub fn spec(&self) -> Option<&SphereSpec> {
        self.spec.as_ref()
    }

    /// All nonempty faces: the downward closure of the facets.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        let mut all: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut stack: Vec<Vec<usize>> = self.facets.clone();
        while let Some(s) = stack.pop() {
            if !all.insert(s.clone()) {
                continue;
            }
            if s.len() > 1 {
                for omit in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(omit);
                    stack.push(f);
                }
            }
        }
        all.into_iter().collect()
    }

    /// Ridges (codimension-1 faces) with the facets containing them. In a
    /// closed pseudomanifold every ridge lies in exactly two facets.
    pub fn ridges(&self) -> BTreeMap<Vec<usize>, Vec<usize>> {
        let mut out: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
        for (fi, facet) in self.facets.iter().enumerate() {
            for omit in 0..facet.len() {
                let mut ridge = facet.clone();
                ridge.remove(omit);
                out.entry(ridge).or_default().push(fi);
            }
        }
        out
    }

    /// For a 1-sphere, the vertices in cyclic order starting at vertex 1,
    /// oriented toward its smaller neighbor. `None` if the sphere is not a
    /// single cycle.
    pub fn cycle_order(&self) -> Option<Vec<usize>> {
        if self.dim != 1 {
            return None;
        }
        let mut adjacent: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for f in &self.facets {
            adjacent.entry(f[0]).or_default().push(f[1]);
            adjacent.entry(f[1]).or_default().push(f[0]);
        }
        if adjacent.len() != self.vertices || adjacent.values().any(|v| v.len() != 2) {
            return None;
        }
        let mut order = vec![1usize];
        let mut prev = 1usize;
        let mut cur = *adjacent[&1].iter().min()?;
        while cur != 1 {
            order.push(cur);
            let next = adjacent[&cur]
                .iter()
                .copied()
                .find(|&v| v != prev)?;
            prev = cur;
            cur = next;
        }
        if order.len() == self.vertices {
            Some(order)
        } else {
            None
        }
    }

    /// Display name: the spec when there is one, otherwise a facet dump.
    pub fn name(&self) -> String {
        match &self.spec {
            Some(s) => s.to_string(),
            None => format!("facets:{:?}", self.facets),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cycle_basics() {
        let c = SimplicialSphere::cycle(4).unwrap();
        assert_eq!(c.dim(), 1);
        assert_eq!(c.vertices(), 4);
        assert_eq!(
            c.facets(),
            &[vec![1, 2], vec![1, 4], vec![2, 3], vec![3, 4]]
        );
        assert_eq!(c.cycle_order(), Some(vec![1, 2, 3, 4]));
        assert!(SimplicialSphere::cycle(2).is_err());
    }

    #[test]
    fn simplex_boundary_basics() {
        let s = SimplicialSphere::simplex_boundary(2).unwrap();
        assert_eq!(s.facets(), SimplicialSphere::cycle(3).unwrap().facets());
        let s3 = SimplicialSphere::simplex_boundary(3).unwrap();
        assert_eq!(s3.dim(), 2);
        assert_eq!(s3.vertices(), 4);
        assert_eq!(s3.facets().len(), 4);
        assert!(SimplicialSphere::simplex_boundary(0).is_err());
    }

    #[test]
    fn join_of_two_s0_is_a_4_cycle() {
        let s0 = SimplicialSphere::simplex_boundary(1).unwrap();
        let j = SimplicialSphere::join(&s0, &s0);
        assert_eq!(j.dim(), 1);
        assert_eq!(j.vertices(), 4);
        assert_eq!(
            j.facets(),
            &[vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]
        );
        // Cyclic order interleaves factors.
        assert_eq!(j.cycle_order(), Some(vec![1, 3, 2, 4]));
    }

    #[test]
    fn ridges_lie_in_two_facets() {
        for sphere in [
            SimplicialSphere::cycle(5).unwrap(),
            SimplicialSphere::simplex_boundary(3).unwrap(),
            SimplicialSphere::join(
                &SimplicialSphere::simplex_boundary(1).unwrap(),
                &SimplicialSphere::simplex_boundary(2).unwrap(),
            ),
        ] {
            for (ridge, facets) in sphere.ridges() {
                assert_eq!(facets.len(), 2, "ridge {ridge:?} of {}", sphere.name());
            }
        }
    }

    #[test]
    fn faces_of_triangle() {
        let t = SimplicialSphere::cycle(3).unwrap();
        assert_eq!(t.faces().len(), 6, "3 vertices + 3 edges");
    }

    #[test]
    fn spec_parse_roundtrip() {
        for text in ["cycle:5", "simplex:3", "join:1,2"] {
            let spec = SphereSpec::parse(text).unwrap();
            assert_eq!(spec.to_string(), text);
            let sphere = spec.build().unwrap();
            assert_eq!(sphere.spec(), Some(&spec));
        }
        assert!(SphereSpec::parse("torus:1").is_err());
        assert!(SphereSpec::parse("cycle").is_err());
        assert!(SphereSpec::parse("join:1").is_err());
    }

    #[test]
    fn join_dimension_bookkeeping() {
        let a = SimplicialSphere::simplex_boundary(1).unwrap();
        let b = SimplicialSphere::simplex_boundary(3).unwrap();
        let j = SimplicialSphere::join(&a, &b);
        assert_eq!(j.dim(), 3);
        assert_eq!(j.vertices(), 6);
        // rank k+1 = 4 on 6 vertices: corank 2.
        assert_eq!(j.vertices() - (j.dim() + 1), 2);
    }
}
