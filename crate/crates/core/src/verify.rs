//! Reproducible checks of the toolkit's headline claims.
//!
//! Each claim returns a [`VerificationReport`]; a failing report carries the
//! offending input in its details. Randomized claims draw from a ChaCha generator
//! seeded from the caller's seed and the claim id, so reports are reproducible.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use crate::constructions::{self, Partition};
use crate::geometry;
use crate::gscheck;
use crate::io;
use crate::matroid::{self, Matroid, WeightVector};
use crate::ops::{self, IrreducibilityVerdict};
use crate::rational::{int, Rational};
use crate::set::ItemSet;
use crate::setfn::Valuation;

pub const DEFAULT_SEED: u64 = 20240601;

#[derive(Clone, Debug, Serialize)]
pub struct VerificationReport {
    pub claim: String,
    pub passed: bool,
    pub seed: u64,
    pub details: Value,
    /// Wall-clock time; excluded from reproducibility comparisons.
    pub elapsed_ms: u128,
}

type Claim = fn(u64) -> (bool, Value);

/// Claim ids in run order.
pub fn claims() -> Vec<(&'static str, Claim)> {
    vec![
        ("oxs-small", oxs_small),
        ("partition-not-weighted-rank", partition_not_weighted_rank),
        ("gadget-endowment", gadget_endowment),
        ("small-matroid-irreducibles", small_matroid_irreducibles),
        ("weighted-rank-merge", weighted_rank_merge),
        ("split-origin", split_origin),
        ("merge-face-decomposition", merge_face_decomposition),
        ("gs-oracle-agreement", gs_oracle_agreement),
        ("matroid-enumeration", matroid_enumeration),
        ("endowment-contraction-scan", endowment_contraction),
    ]
}

fn claim_rng(seed: u64, claim: &str) -> ChaCha8Rng {
    let salt = claim.bytes().fold(0xcbf29ce484222325u64, |h, b| (h ^ b as u64).wrapping_mul(0x100000001b3));
    ChaCha8Rng::seed_from_u64(seed ^ salt)
}

/// Runs the claims named in `scope` (or every claim for `"all"`), concurrently,
/// returning reports in claim order. Unknown ids are ignored.
pub fn run_claims(scope: &[String], seed: u64) -> Vec<VerificationReport> {
    let selected: Vec<(&'static str, Claim)> = claims()
        .into_iter()
        .filter(|(id, _)| scope.iter().any(|s| s == "all" || s == id))
        .collect();
    std::thread::scope(|sc| {
        let handles: Vec<_> = selected
            .iter()
            .map(|(id, f)| {
                sc.spawn(move || {
                    let start = Instant::now();
                    let (passed, details) = f(seed);
                    VerificationReport {
                        claim: id.to_string(),
                        passed,
                        seed,
                        details,
                        elapsed_ms: start.elapsed().as_millis(),
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("claim panicked")).collect()
    })
}

/// Random gross-substitutes valuations on two and three items all have exact
/// bipartite-matching representations.
pub fn oxs_small(seed: u64) -> (bool, Value) {
    let mut rng = claim_rng(seed, "oxs-small");
    let mut failures = Vec::new();
    let mut by_search = 0usize;
    let mut templates: BTreeMap<String, usize> = BTreeMap::new();
    for n in [2usize, 3] {
        for _ in 0..1000 {
            let v = constructions::random_gs_valuation(n, &mut rng, 6);
            match constructions::oxs_fit_by_templates(&v) {
                Some((name, b)) if constructions::assignment_valuation(&b) == v => {
                    *templates.entry(name).or_default() += 1;
                }
                _ => match constructions::oxs_fit(&v) {
                    Ok(b) if constructions::assignment_valuation(&b) == v => by_search += 1,
                    _ => failures.push(io::valuation_to_json(&v)),
                },
            }
        }
    }
    let passed = failures.is_empty();
    (passed, json!({"samples_per_n": 1000, "template_hits": templates, "search_fallback": by_search, "failures": failures}))
}

/// The partition valuation for `{{1,2},{3,4}}`, `a = 2`, `b = 3` is gross
/// substitutes but no weighted rank of a matroid on a subset of `[4]`.
pub fn partition_not_weighted_rank(_seed: u64) -> (bool, Value) {
    let pi = Partition::parse(4, "1,2|3,4").expect("valid partition");
    let v = constructions::partition_valuation(&pi, int(2), int(3)).expect("valid parameters");
    let gs = gscheck::is_gross_substitutes(&v).0;
    let all = matroid::enumerate_matroids_on_subsets(ItemSet::full(4)).expect("n = 4");
    let fits: Vec<Value> = all
        .iter()
        .filter_map(|m| matroid::fit_weights(m, &v).map(|w| json!({"matroid": io::matroid_to_json(m), "weights": w})))
        .collect();
    (gs && fits.is_empty(), json!({"gross_substitutes": gs, "matroids_scanned": all.len(), "fits": fits}))
}

/// Endowing the gadget's part items yields the partition valuation.
pub fn gadget_endowment(_seed: u64) -> (bool, Value) {
    let grid: Vec<(Rational, Rational)> =
        [(2, 3), (3, 4), (3, 5), (5, 9)].into_iter().map(|(a, b)| (int(a), int(b))).filter(|(a, b)| a < b && *b < *a + *a).collect();
    let mut checked = 0usize;
    let mut failures = Vec::new();
    for n in [4usize, 5] {
        for pi in constructions::all_partitions(n) {
            for (a, b) in &grid {
                let gadget = constructions::partition_gadget(&pi, *a, *b).expect("valid parameters");
                let endowed = ops::endow(&constructions::assignment_valuation(&gadget), constructions::gadget_part_items(&pi))
                    .expect("part items in ground");
                checked += 1;
                if endowed != constructions::partition_valuation(&pi, *a, *b).expect("valid parameters") {
                    failures.push(json!({"partition": pi, "a": a.to_string(), "b": b.to_string()}));
                }
            }
        }
    }
    (failures.is_empty(), json!({"cases": checked, "failures": failures}))
}

fn name_class(m: &Matroid, named: &[(String, Matroid)]) -> Option<String> {
    named.iter().find(|(_, x)| x.is_isomorphic(m)).map(|(s, _)| s.clone())
}

/// Loopless matroids on at most five elements: the connectivity filter keeps exactly
/// `U_{1,n}`, `U_{2,4}`, `U_{2,5}`, `U_{3,5}` and `E_2` up to relabeling, the four
/// listed unions hold, and only `U_{1,n}` is irreducible.
pub fn small_matroid_irreducibles(_seed: u64) -> (bool, Value) {
    let mut named: Vec<(String, Matroid)> =
        (1..=5).map(|n| (format!("U(1,{n})"), Matroid::uniform(1, ItemSet::full(n)))).collect();
    named.push(("U(2,4)".into(), Matroid::uniform(2, ItemSet::full(4))));
    named.push(("U(2,5)".into(), Matroid::uniform(2, ItemSet::full(5))));
    named.push(("U(3,5)".into(), Matroid::uniform(3, ItemSet::full(5))));
    named.push(("E2".into(), Matroid::e2()));

    let mut filtered_classes: BTreeSet<String> = BTreeSet::new();
    let mut unexpected = Vec::new();
    let mut irreducible_classes: BTreeSet<String> = BTreeSet::new();
    let mut unexpected_irreducible = Vec::new();
    let mut filter_misses_irreducible = Vec::new();
    let mut loopless = 0usize;
    for n in 1..=5 {
        for m in matroid::enumerate_matroids(ItemSet::full(n)).expect("n ≤ 5") {
            if !m.is_loopless() {
                continue;
            }
            loopless += 1;
            let cert = matroid::is_irreducible_matroid(&m).expect("n ≤ 5");
            if let Some((a, b)) = &cert.witness {
                if matroid::union(a, b) != m || *a == m || *b == m {
                    unexpected.push(json!({"bad_witness_for": io::matroid_to_json(&m)}));
                }
            }
            if cert.passes_connectivity_filter {
                match name_class(&m, &named) {
                    Some(c) => {
                        filtered_classes.insert(c);
                    }
                    None => unexpected.push(io::matroid_to_json(&m)),
                }
            }
            if cert.irreducible {
                if !cert.passes_connectivity_filter {
                    filter_misses_irreducible.push(io::matroid_to_json(&m));
                }
                match name_class(&m, &named) {
                    Some(c) if c.starts_with("U(1,") => {
                        irreducible_classes.insert(c);
                    }
                    _ => unexpected_irreducible.push(io::matroid_to_json(&m)),
                }
            }
        }
    }
    let u = |r: usize, n: usize| Matroid::uniform(r, ItemSet::full(n));
    let decompositions = [
        ("U(2,4) = U(1,4) v U(1,3)", u(2, 4), u(1, 4), u(1, 3)),
        ("U(2,5) = U(1,5) v U(1,4)", u(2, 5), u(1, 5), u(1, 4)),
        ("U(3,5) = U(2,5) v U(1,4)", u(3, 5), u(2, 5), u(1, 4)),
        ("E2 = U(1,5) v U(1,{3,4,5})", Matroid::e2(), u(1, 5), Matroid::uniform(1, ItemSet::from_items([3, 4, 5]))),
    ];
    let decomposition_results: BTreeMap<&str, bool> =
        decompositions.iter().map(|(name, m, a, b)| (*name, matroid::union(a, b) == *m)).collect();
    let expected: BTreeSet<String> = named.iter().map(|(s, _)| s.clone()).collect();
    let expected_irr: BTreeSet<String> = (1..=5).map(|n| format!("U(1,{n})")).collect();
    let passed = unexpected.is_empty()
        && filtered_classes == expected
        && unexpected_irreducible.is_empty()
        && filter_misses_irreducible.is_empty()
        && irreducible_classes == expected_irr
        && decomposition_results.values().all(|x| *x);
    (
        passed,
        json!({
            "loopless_matroids": loopless,
            "filter_classes": filtered_classes,
            "unexpected_filter_members": unexpected,
            "irreducible_classes": irreducible_classes,
            "unexpected_irreducible": unexpected_irreducible,
            "irreducible_but_filtered_out": filter_misses_irreducible,
            "decompositions": decomposition_results,
        }),
    )
}

fn weight_grid(n: usize) -> Vec<WeightVector> {
    let levels: &[i64] = if n <= 4 { &[0, 1, 2] } else { &[1, 2] };
    let mut out = Vec::new();
    let total = levels.len().pow(n as u32);
    for mut code in 0..total {
        let mut w = Vec::with_capacity(n);
        for _ in 0..n {
            w.push(levels[code % levels.len()]);
            code /= levels.len();
        }
        out.push(WeightVector::from_ints(&w).expect("nonnegative"));
    }
    out.push(WeightVector::from_ints(&(1..=n as i64).collect::<Vec<_>>()).expect("nonnegative"));
    out
}

/// Weighted ranks of reducible matroids split as merges along the union witness,
/// and the weighted rank of `M(K_4)` is certified irreducible by its independence
/// polytope.
pub fn weighted_rank_merge(_seed: u64) -> (bool, Value) {
    let mut reducible = 0usize;
    let mut checks = 0usize;
    let mut failures = Vec::new();
    for n in 1..=5 {
        let g = ItemSet::full(n);
        for m in matroid::enumerate_matroids(g).expect("n ≤ 5") {
            let cert = matroid::is_irreducible_matroid(&m).expect("n ≤ 5");
            let Some((m1, m2)) = cert.witness else { continue };
            reducible += 1;
            for w in weight_grid(n) {
                let lhs = matroid::weighted_rank(&m, &w).expect("dimensions match");
                let r1 = matroid::weighted_rank(&m1, &w.restrict(g, m1.ground())).expect("dimensions match");
                let r2 = matroid::weighted_rank(&m2, &w.restrict(g, m2.ground())).expect("dimensions match");
                checks += 1;
                if ops::merge(&r1, &r2) != lhs {
                    failures.push(json!({"matroid": io::matroid_to_json(&m), "weights": w}));
                }
            }
        }
    }
    let k4 = Matroid::graphic_k4();
    let w = WeightVector::from_ints(&[1, 2, 3, 4, 5, 6]).expect("nonnegative");
    let v = matroid::weighted_rank(&k4, &w).expect("dimensions match");
    let verdict = ops::certify_irreducible(&v);
    let independents: BTreeSet<ItemSet> = k4.independents().into_iter().collect();
    let k4_ok = match &verdict {
        Ok(IrreducibilityVerdict::CertifiedIrreducible { face }) => {
            face.points().into_iter().collect::<BTreeSet<_>>() == independents
                && IrreducibilityVerdict::CertifiedIrreducible { face: face.clone() }.reverify(&v)
        }
        _ => false,
    };
    let status = verdict.map(|x| format!("{:?}", x.status())).unwrap_or_else(|e| e.to_string());
    (
        failures.is_empty() && k4_ok,
        json!({
            "reducible_matroids": reducible,
            "merge_checks": checks,
            "failures": failures,
            "k4_verdict": status,
            "k4_face_is_independence_polytope": k4_ok,
        }),
    )
}

/// Splitting the origin off a weighted rank of `M(K_4)` gives a gross-substitutes
/// valuation that is certified irreducible and is no weighted matroid rank.
pub fn split_origin(_seed: u64) -> (bool, Value) {
    let k4 = Matroid::graphic_k4();
    let w = WeightVector::from_ints(&[1, 2, 3, 4, 5, 6]).expect("nonnegative");
    let v = constructions::split_origin_valuation(&k4, &w, int(1)).expect("valid construction");
    let g = v.ground();
    let gs = gscheck::is_gross_substitutes(&v).0;
    let simplex: Vec<ItemSet> = std::iter::once(ItemSet::EMPTY).chain(g.items().map(ItemSet::singleton)).collect();
    let independents = k4.independents();
    let q: Vec<ItemSet> = independents.iter().copied().filter(|s| !s.is_empty()).collect();
    let simplex_face = geometry::supporting_price(&v, &simplex).is_some();
    let q_face = geometry::supporting_price(&v, &q).is_some();
    let old_cell_gone = geometry::supporting_price(&v, &independents).is_none();
    let all = matroid::enumerate_matroids_on_subsets(g).expect("n = 6");
    let fits = all.iter().filter(|m| matroid::fit_weights(m, &v).is_some()).count();
    let distinct = v.distinct_nonzero_values().len();
    let verdict = ops::certify_irreducible(&v);
    let certified_by_q = matches!(&verdict, Ok(IrreducibilityVerdict::CertifiedIrreducible { face })
        if face.points() == q && IrreducibilityVerdict::CertifiedIrreducible { face: face.clone() }.reverify(&v));
    let passed = gs && simplex_face && q_face && old_cell_gone && fits == 0 && distinct >= 3 && certified_by_q;
    (
        passed,
        json!({
            "gross_substitutes": gs,
            "simplex_is_face": simplex_face,
            "q_is_face": q_face,
            "independence_cell_is_not_face": old_cell_gone,
            "matroids_scanned": all.len(),
            "weighted_rank_fits": fits,
            "distinct_nonzero_values": distinct,
            "certified_via_q": certified_by_q,
        }),
    )
}

/// Faces of a merge split as sums of faces of the factors, on three items.
///
/// Failures are split by face dimension: the full-dimensional case is the one the
/// irreducibility certificate relies on.
pub fn merge_face_decomposition(seed: u64) -> (bool, Value) {
    let mut rng = claim_rng(seed, "merge-face-decomposition");
    let mut failures = Vec::new();
    let mut faces = 0usize;
    let mut failing_faces = 0usize;
    let mut full_dimensional_failures = 0usize;
    for _ in 0..200 {
        let u = constructions::random_gs_valuation(3, &mut rng, 4);
        let v = constructions::random_gs_valuation(3, &mut rng, 4);
        let (ok, report) = ops::check_merge_face_decomposition(&u, &v).expect("GS inputs on three items");
        faces += report.len();
        if !ok {
            let bad: Vec<&ops::FaceDecomposition> = report.iter().filter(|d| d.parts.is_none()).collect();
            failing_faces += bad.len();
            full_dimensional_failures += bad.iter().filter(|d| d.face.is_full_dimensional()).count();
            let bad_faces: Vec<Vec<ItemSet>> = bad.iter().map(|d| d.face.points()).collect();
            failures.push(json!({"u": io::valuation_to_json(&u), "v": io::valuation_to_json(&v), "faces": bad_faces}));
        }
    }
    (
        failures.is_empty(),
        json!({
            "pairs": 200,
            "faces_checked": faces,
            "failing_faces": failing_faces,
            "full_dimensional_failures": full_dimensional_failures,
            "failures": failures,
        }),
    )
}

/// Every monotone integer valuation on `[3]` with values in `0..=max`.
pub fn monotone_grid3(max: i64) -> Vec<Valuation> {
    let g = ItemSet::full(3);
    let mut out = Vec::new();
    let mut vals = [0i64; 8];
    fn go(k: usize, max: i64, vals: &mut [i64; 8], out: &mut Vec<Valuation>, g: ItemSet) {
        if k == 8 {
            out.push(Valuation::from_ints(g, vals).expect("monotone by construction"));
            return;
        }
        // Masks are visited in increasing order, so all proper subsets are set.
        let lo = (0..3).filter(|b| k >> b & 1 == 1).map(|b| vals[k ^ 1 << b]).max().unwrap_or(0);
        for x in lo..=max {
            vals[k] = x;
            go(k + 1, max, vals, out, g);
        }
    }
    go(1, max, &mut vals, &mut out, g);
    out
}

/// The exchange test and the subdivision test agree on the integer grid.
pub fn gs_oracle_agreement(_seed: u64) -> (bool, Value) {
    let grid = monotone_grid3(4);
    let mut gs = 0usize;
    let mut disagreements = Vec::new();
    for v in &grid {
        let a = gscheck::is_gross_substitutes(v).0;
        let b = gscheck::is_gs_by_subdivision(v).expect("n = 3");
        gs += a as usize;
        if a != b {
            disagreements.push(json!({"valuation": io::valuation_to_json(v), "exchange": a, "subdivision": b}));
        }
    }
    (disagreements.is_empty(), json!({"valuations": grid.len(), "gross_substitutes": gs, "disagreements": disagreements}))
}

/// Rank-table search and basis-family search produce the same matroids.
pub fn matroid_enumeration(_seed: u64) -> (bool, Value) {
    let mut counts = BTreeMap::new();
    let mut agree = true;
    for n in 0..=5 {
        let g = ItemSet::full(n);
        let a = matroid::enumerate_matroids(g).expect("n ≤ 5");
        let b = matroid::enumerate_matroids_by_bases(g).expect("n ≤ 5");
        let sa: BTreeSet<Matroid> = a.iter().cloned().collect();
        let sb: BTreeSet<Matroid> = b.iter().cloned().collect();
        agree &= a.len() == b.len() && sa.len() == a.len() && sa == sb;
        counts.insert(n, json!({"rank_tables": a.len(), "basis_families": b.len()}));
    }
    (agree, json!({"counts": counts}))
}

/// A mismatch between endowing a weighted rank and weighting the contraction.
#[derive(Clone, Debug, Serialize)]
pub struct ContractionMismatch {
    pub matroid: Value,
    pub weights: WeightVector,
    pub endowed: ItemSet,
}

/// For every matroid on at most `n_max` elements, weight vectors from a small grid and
/// every `T`, tests whether `∂^T ρ^w` is a weighted rank of `M/T`. The singleton
/// values of the endowment force the weights, so a failed fit is a definite mismatch.
pub fn endowment_contraction_scan(n_max: usize) -> crate::Result<(usize, Vec<ContractionMismatch>)> {
    if n_max > 5 {
        return Err(crate::Error::GroundTooLarge { size: n_max, limit: 5 });
    }
    let mut cases = 0usize;
    let mut mismatches = Vec::new();
    for n in 0..=n_max {
        let g = ItemSet::full(n);
        let grid = if n <= 3 { weight_grid(n) } else { vec![WeightVector::ones(n), weight_grid(n).pop().expect("nonempty")] };
        for m in matroid::enumerate_matroids(g)? {
            for w in &grid {
                let rho = matroid::weighted_rank(&m, w)?;
                for t in g.subsets() {
                    cases += 1;
                    let endowed = ops::endow(&rho, t)?;
                    if matroid::fit_weights(&m.contraction(t)?, &endowed).is_none() {
                        mismatches.push(ContractionMismatch { matroid: io::matroid_to_json(&m), weights: w.clone(), endowed: t });
                    }
                }
            }
        }
    }
    Ok((cases, mismatches))
}

/// Runs [`endowment_contraction_scan`] on four elements. The scan is an experiment:
/// it passes when it runs and the all-ones and `T = ∅` cases match.
pub fn endowment_contraction(_seed: u64) -> (bool, Value) {
    match endowment_contraction_scan(4) {
        Ok((cases, mismatches)) => {
            let trivial_ok = mismatches.iter().all(|x| !x.endowed.is_empty() && x.weights.0.iter().any(|w| *w != int(1)));
            let sample: Vec<&ContractionMismatch> = mismatches.iter().take(5).collect();
            (trivial_ok, json!({"cases": cases, "mismatches": mismatches.len(), "sample": sample}))
        }
        Err(e) => (false, json!({"error": e.to_string()})),
    }
}
