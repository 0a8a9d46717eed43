//! Command implementations behind the CLI: each builds a [`RunReport`] whose
//! verdicts decide the process exit code. All numeric output is exact
//! (rational strings); collections are canonically sorted before writing so
//! reruns do not reorder bytes.

use std::collections::BTreeMap;
use std::path::Path;
use std::time::Instant;

use num::BigRational;
use serde_json::{json, Value};
use thiserror::Error;

use crate::chirotope::OrientedMatroid;
use crate::duality;
use crate::flat_poset::{
    self, enumerate_p, sigma_subposet, BasisVariant, FlatPosetError, FlatteningPoset,
};
use crate::flattening::{sample_flattenings, Flattening, FlatteningError};
use crate::poset::{PosetError, PosetSummary};
use crate::report::RunReport;
use crate::sphere::{SphereError, SphereSpec};
use crate::witness::{cover_witness, WitnessError};

#[derive(Debug, Error)]
pub enum RunError {
    #[error("{0}; supported sphere specs are cycle:n, simplex:m, join:a,b")]
    Usage(String),
    #[error("cannot read {path}: {reason}")]
    Io { path: String, reason: String },
    #[error(transparent)]
    Sphere(#[from] SphereError),
    #[error(transparent)]
    FlatPoset(#[from] FlatPosetError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Flattening(#[from] FlatteningError),
    #[error(transparent)]
    Duality(#[from] duality::DualityError),
    #[error(transparent)]
    Witness(#[from] WitnessError),
}

fn parse_sphere(spec: &str) -> Result<(SphereSpec, crate::sphere::SimplicialSphere), RunError> {
    let parsed = SphereSpec::parse(spec).map_err(|e| RunError::Usage(e.to_string()))?;
    let sphere = parsed.build()?;
    Ok((parsed, sphere))
}

fn om_label(m: &OrientedMatroid) -> String {
    m.sign_string()
}

fn poset_json(spec: &SphereSpec, p: &FlatteningPoset) -> Value {
    let mut base = p.poset().to_json(om_label);
    let obj = base.as_object_mut().expect("object");
    obj.insert("sphere".into(), json!(spec.to_string()));
    obj.insert("rank".into(), json!(p.sphere().dim() + 1));
    obj.insert("ground".into(), json!(p.sphere().vertices()));
    base
}

/// Build `P(L)` and export it.
pub fn poset_build(
    spec: &str,
    out_json: Option<&Path>,
    out_dot: Option<&Path>,
) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let (parsed, sphere) = parse_sphere(spec)?;
    let mut report = RunReport::new("poset-build", json!({ "sphere": spec }), None);
    let p = enumerate_p(&sphere)?;
    let summary = PosetSummary::of(p.poset());
    if let Some(path) = out_json {
        let text = serde_json::to_string_pretty(&poset_json(&parsed, &p)).expect("json");
        std::fs::write(path, text).map_err(|e| RunError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
    }
    if let Some(path) = out_dot {
        std::fs::write(path, p.poset().to_dot(om_label)).map_err(|e| RunError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
    }
    report.verdict(
        "built",
        true,
        format!(
            "{} elements, {} covers, {} minimal, {} maximal",
            summary.size,
            summary.covers,
            summary.minimal.len(),
            summary.maximal.len()
        ),
    );
    report.payload = serde_json::to_value(&summary).expect("summary");
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Order-complex homology of `P(L)`, with a collapse certificate when one is
/// found. PASS iff the reduced homology is trivial.
pub fn verify_contractible(spec: &str, budget_seconds: u64) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let (_, sphere) = parse_sphere(spec)?;
    let mut report = RunReport::new(
        "verify-contractible",
        json!({ "sphere": spec, "budget_seconds": budget_seconds }),
        None,
    );
    let over = |report: &mut RunReport, stage: &str| -> bool {
        if start.elapsed().as_secs() > budget_seconds {
            report.verdict(
                "budget",
                false,
                format!("TIMEOUT after {stage}; no verdict on contractibility"),
            );
            true
        } else {
            false
        }
    };
    let p = enumerate_p(&sphere)?;
    if over(&mut report, "enumeration") {
        report.elapsed_ms = start.elapsed().as_millis();
        return Ok(report);
    }
    let complex = p.poset().order_complex();
    if over(&mut report, "order complex construction") {
        report.elapsed_ms = start.elapsed().as_millis();
        return Ok(report);
    }
    let homology = complex.reduced_homology();
    if over(&mut report, "homology") {
        report.elapsed_ms = start.elapsed().as_millis();
        return Ok(report);
    }
    let (residual, sequence) = complex.greedy_collapse();
    let collapsed = residual.is_single_vertex();
    report.verdict(
        "homology-trivial",
        homology.is_trivial(),
        format!(
            "reduced betti {:?}, euler {}",
            homology.reduced_betti, homology.euler_characteristic
        ),
    );
    report.payload = json!({
        "poset_size": p.len(),
        "order_complex_faces": complex.face_counts(),
        "homology": homology,
        "collapsible": collapsed,
        "collapse_steps": sequence.len(),
    });
    if collapsed {
        report.verdict(
            "collapse-certificate",
            true,
            format!("collapsed to a vertex in {} steps", sequence.len()),
        );
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Seeded random commutativity checks of the duality square in `Gr(r, r+2)`.
pub fn verify_duality(r: usize, trials: usize, seed: u64) -> Result<RunReport, RunError> {
    let start = Instant::now();
    if r < 2 {
        return Err(RunError::Usage(format!("rank must be at least 2, got {r}")));
    }
    let mut report = RunReport::new(
        "verify-duality",
        json!({ "rank": r, "trials": trials }),
        Some(seed),
    );
    let result = duality::verify_duality_diagram(r, trials, seed)?;
    report.verdict(
        "diagram-commutes",
        result.passed(),
        format!(
            "{} commuting, {} degenerate, {} failures",
            result.commuting,
            result.degenerate,
            result.failures.len()
        ),
    );
    report.payload = serde_json::to_value(&result).expect("report");
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Outcome of running the lowering/raising maps under one basis variant.
#[derive(Debug, serde::Serialize)]
pub struct VariantOutcome {
    pub variant: String,
    pub f0_into_poset: bool,
    pub f0_descending: bool,
    pub f0_idempotent: bool,
    pub f1_into_image: bool,
    pub f1_ascending: bool,
    pub image_equals_sigma: bool,
    pub deletion_well_defined: bool,
    pub deletion_surjective: bool,
    pub sigma_divergence: Vec<String>,
    pub anomalies: Vec<String>,
}

fn run_variant(p: &FlatteningPoset, variant: BasisVariant) -> Result<VariantOutcome, RunError> {
    let n = p.sphere().vertices();
    let mut anomalies = Vec::new();
    let mut f0_assign: Vec<usize> = Vec::with_capacity(p.len());
    let mut f0_into_poset = true;
    for i in 0..p.len() {
        let m = p.poset().element(i);
        match flat_poset::f0_map(m, variant) {
            Ok(image) => match p.index_of(&image) {
                Some(j) => f0_assign.push(j),
                None => {
                    f0_into_poset = false;
                    anomalies.push(format!("f0 image of {} leaves the poset", m.sign_string()));
                    f0_assign.push(i);
                }
            },
            Err(e) => {
                f0_into_poset = false;
                anomalies.push(e.to_string());
                f0_assign.push(i);
            }
        }
    }
    let f0_descending = f0_into_poset && p.poset().is_descending_homotopy(&f0_assign)?;
    let f0_idempotent = f0_into_poset && p.poset().is_idempotent(&f0_assign)?;
    // P0 = image of f0, as a subposet.
    let mut image_indices: Vec<usize> = f0_assign.clone();
    image_indices.sort_unstable();
    image_indices.dedup();
    let p0 = p.poset().subposet(&image_indices);
    let mut f1_assign: Vec<usize> = Vec::with_capacity(image_indices.len());
    let mut f1_into_image = true;
    let mut f1_images: Vec<OrientedMatroid> = Vec::new();
    for (local, &i) in image_indices.iter().enumerate() {
        let m = p.poset().element(i);
        match flat_poset::f1_map(m, variant) {
            Ok(image) => {
                f1_images.push(image.clone());
                match p.index_of(&image).and_then(|j| image_indices.binary_search(&j).ok()) {
                    Some(local_j) => f1_assign.push(local_j),
                    None => {
                        f1_into_image = false;
                        anomalies.push(format!(
                            "f1 image of {} leaves the f0 image poset",
                            m.sign_string()
                        ));
                        f1_assign.push(local);
                    }
                }
            }
            Err(e) => {
                f1_into_image = false;
                anomalies.push(e.to_string());
                f1_assign.push(local);
            }
        }
    }
    let f1_ascending = f1_into_image && p0.is_ascending_homotopy(&f1_assign)?;
    // Σ and the deletion map.
    let sigma = sigma_subposet(p)?;
    let mut sigma_set: Vec<OrientedMatroid> = sigma
        .indices
        .iter()
        .map(|&i| p.poset().element(i).clone())
        .collect();
    sigma_set.sort();
    f1_images.sort();
    f1_images.dedup();
    let image_equals_sigma = f1_images == sigma_set;
    let smaller = crate::sphere::SimplicialSphere::cycle(n - 1)?;
    let p_smaller = flat_poset::enumerate_p_direct_rank2(&smaller)?;
    let mut deletion_well_defined = true;
    let mut deleted: Vec<OrientedMatroid> = Vec::new();
    for m in &sigma_set {
        match m.delete(n) {
            Ok(d) if p_smaller.contains(&d) => deleted.push(d),
            _ => {
                deletion_well_defined = false;
                anomalies.push(format!(
                    "deletion of {} at {} leaves P(cycle:{})",
                    m.sign_string(),
                    n,
                    n - 1
                ));
            }
        }
    }
    deleted.sort();
    deleted.dedup();
    let deletion_surjective = deleted.len() == p_smaller.len();
    Ok(VariantOutcome {
        variant: variant.name().to_string(),
        f0_into_poset,
        f0_descending,
        f0_idempotent,
        f1_into_image,
        f1_ascending,
        image_equals_sigma,
        deletion_well_defined,
        deletion_surjective,
        sigma_divergence: sigma.divergence,
        anomalies,
    })
}

/// Run the lowering/raising machinery on `P(cycle:n)` under the chosen basis
/// variant, with the other variants reported alongside for comparison.
pub fn verify_f0f1(spec: &str, chosen: BasisVariant) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let (parsed, sphere) = parse_sphere(spec)?;
    if !matches!(parsed, SphereSpec::Cycle(n) if n >= 4) {
        return Err(RunError::Usage(format!(
            "verify-f0f1 needs a cycle sphere with at least 4 vertices, got {spec}"
        )));
    }
    let mut report = RunReport::new(
        "verify-f0f1",
        json!({ "sphere": spec, "f0_basis_variant": chosen.name() }),
        None,
    );
    let p = enumerate_p(&sphere)?;
    let mut outcomes = Vec::new();
    for variant in [BasisVariant::Printed, BasisVariant::NSucc, BasisVariant::Succ1] {
        outcomes.push(run_variant(&p, variant)?);
    }
    let main = outcomes
        .iter()
        .find(|o| o.variant == chosen.name())
        .expect("chosen variant was run");
    report.verdict("f0-into-poset", main.f0_into_poset, "");
    report.verdict("f0-descending", main.f0_descending, "monotone and below the identity");
    report.verdict("f1-ascending", main.f1_ascending, "monotone and above the identity on the image");
    report.verdict(
        "image-equals-sigma",
        main.image_equals_sigma,
        "f1(f0(P)) equals the extension subposet as element sets",
    );
    report.verdict(
        "deletion-map",
        main.deletion_well_defined && main.deletion_surjective,
        "deletion at the extension vertex is well-defined and surjective",
    );
    report.verdict(
        "no-anomalies",
        main.anomalies.is_empty() && main.sigma_divergence.is_empty(),
        if main.anomalies.is_empty() {
            "".to_string()
        } else {
            format!("{} anomalies", main.anomalies.len())
        },
    );
    report.payload = json!({
        "poset_size": p.len(),
        "chosen": chosen.name(),
        "variants": outcomes,
    });
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Closure witnesses for every Hasse cover of `P(L)`.
pub fn verify_covers(spec: &str, delta: &BigRational) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let (_, sphere) = parse_sphere(spec)?;
    if sphere.dim() != 1 {
        return Err(RunError::Usage(format!(
            "verify-covers runs on 1-spheres, got {spec}"
        )));
    }
    let mut report = RunReport::new(
        "verify-covers",
        json!({ "sphere": spec, "delta": delta.to_string() }),
        None,
    );
    let p = enumerate_p(&sphere)?;
    let mut found = 0usize;
    let mut failures: Vec<String> = Vec::new();
    for &(lo, hi) in p.poset().covers() {
        let below = p.poset().element(lo);
        let above = p.poset().element(hi);
        match cover_witness(below, above, delta, &sphere) {
            Ok(w) => {
                debug_assert!(w.max_distance <= *delta);
                found += 1;
            }
            Err(e) => failures.push(format!(
                "{} under {}: {}",
                below.sign_string(),
                above.sign_string(),
                e
            )),
        }
    }
    report.verdict(
        "cover-witnesses",
        failures.is_empty(),
        format!("{} of {} covers witnessed", found, p.poset().covers().len()),
    );
    report.payload = json!({
        "poset_size": p.len(),
        "covers": p.poset().covers().len(),
        "witnessed": found,
        "failures": failures,
    });
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Validate a flattening file and print its stratification image.
pub fn flat_check(path: &Path) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let text = std::fs::read_to_string(path).map_err(|e| RunError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })?;
    let value: Value = serde_json::from_str(&text).map_err(|e| RunError::Io {
        path: path.display().to_string(),
        reason: format!("invalid JSON: {e}"),
    })?;
    let f = Flattening::from_json(&value)?;
    let mut report = RunReport::new(
        "flat-check",
        json!({ "file": path.display().to_string() }),
        None,
    );
    let valid = f.is_flattening()?;
    report.verdict("valid", valid, format!("sphere {}", f.sphere().name()));
    if valid {
        let om = f.mu0()?;
        report.payload = json!({
            "valid": true,
            "mu0": om.sign_string(),
            "rank": om.rank(),
            "ground": om.ground(),
        });
    } else {
        report.payload = json!({ "valid": false });
    }
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Seeded samples of flattenings with a histogram of stratification images,
/// every image checked against the flattening-poset conditions.
pub fn flat_strata(spec: &str, samples: usize, seed: u64) -> Result<RunReport, RunError> {
    let start = Instant::now();
    let (_, sphere) = parse_sphere(spec)?;
    let mut report = RunReport::new(
        "flat-strata",
        json!({ "sphere": spec, "samples": samples }),
        Some(seed),
    );
    let outcome = sample_flattenings(&sphere, samples, seed)?;
    let mut histogram: BTreeMap<String, usize> = BTreeMap::new();
    let mut all_in_poset = true;
    for f in &outcome.flattenings {
        let om = f.mu0()?;
        if !flat_poset::is_om_flattening(&om, &sphere)? {
            all_in_poset = false;
        }
        *histogram.entry(om.sign_string()).or_default() += 1;
    }
    report.verdict(
        "samples",
        !outcome.exhausted,
        format!(
            "{} of {} sampled in {} attempts",
            outcome.flattenings.len(),
            samples,
            outcome.attempts
        ),
    );
    report.verdict(
        "images-in-poset",
        all_in_poset,
        format!("{} distinct strata", histogram.len()),
    );
    report.payload = json!({
        "histogram": histogram,
        "attempts": outcome.attempts,
    });
    report.elapsed_ms = start.elapsed().as_millis();
    Ok(report)
}

/// Exhaustive check that the dual map is an order isomorphism between two
/// weak-map posets: bijective, and `x ≤ y` iff `x* ≤ y*`, both directions,
/// over every pair. Uses the posets' precomputed relations.
pub fn dual_map_is_order_iso(
    low: &crate::poset::FinitePoset<OrientedMatroid>,
    high: &crate::poset::FinitePoset<OrientedMatroid>,
) -> Result<bool, RunError> {
    if low.len() != high.len() {
        return Ok(false);
    }
    let mut mapped = Vec::with_capacity(low.len());
    for m in low.elements() {
        match high.elements().binary_search(&duality::dual(m)?) {
            Ok(i) => mapped.push(i),
            Err(_) => return Ok(false),
        }
    }
    let mut seen = vec![false; high.len()];
    for &i in &mapped {
        if seen[i] {
            return Ok(false);
        }
        seen[i] = true;
    }
    for i in 0..low.len() {
        for j in 0..low.len() {
            if low.leq(i, j) != high.leq(mapped[i], mapped[j]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
