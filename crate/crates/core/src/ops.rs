//! Merge and endowment operators, and irreducibility analysis.
//!
//! Valuations on a subset of a larger ground are compared and merged through their
//! zero-padded extension `u(S ∩ E_u)`.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry::{self, Face, MIrreducibility};
use crate::gscheck;
use crate::matroid::{self, WeightVector};
use crate::rational::Rational;
use crate::set::ItemSet;
use crate::setfn::Valuation;

/// Largest ground set for the face-pair decomposition check.
pub const DECOMPOSITION_LIMIT: usize = 3;
/// Largest ground set for certification.
pub const CERTIFY_LIMIT: usize = 6;
/// Number of full cells explored by certification on 6 items.
pub const CERTIFY_CELL_BUDGET: usize = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Status {
    CertifiedIrreducible,
    Reducible,
    Unknown,
}

#[derive(Clone, Debug)]
pub enum IrreducibilityVerdict {
    /// A full-dimensional face of the subdivision certified M-irreducible.
    CertifiedIrreducible { face: Face },
    /// `merge(left, right) = v` with neither factor equal to `v`.
    Reducible { left: Valuation, right: Valuation },
    Unknown,
}

impl IrreducibilityVerdict {
    pub fn status(&self) -> Status {
        match self {
            IrreducibilityVerdict::CertifiedIrreducible { .. } => Status::CertifiedIrreducible,
            IrreducibilityVerdict::Reducible { .. } => Status::Reducible,
            IrreducibilityVerdict::Unknown => Status::Unknown,
        }
    }

    /// Re-checks the certificate against `v` from scratch.
    pub fn reverify(&self, v: &Valuation) -> bool {
        match self {
            IrreducibilityVerdict::CertifiedIrreducible { face } => {
                face.is_full_dimensional()
                    && geometry::supporting_price(v, &face.points()).is_some()
                    && matches!(geometry::certify_m_irreducible(face), Ok(MIrreducibility::Certified))
            }
            IrreducibilityVerdict::Reducible { left, right } => {
                let g = v.ground();
                let (Ok(l), Ok(r)) = (pad(left, g), pad(right, g)) else { return false };
                l != *v && r != *v && merge(&l, &r) == *v
            }
            IrreducibilityVerdict::Unknown => true,
        }
    }
}

/// `u` extended to `ground` by `u(S ∩ E_u)`.
pub fn pad(u: &Valuation, ground: ItemSet) -> Result<Valuation> {
    if !u.ground().is_subset_of(ground) {
        return Err(Error::SubsetOutOfGround { set: u.ground(), ground });
    }
    if u.ground() == ground {
        return Ok(u.clone());
    }
    Valuation::from_fn(ground, |s| *u.at(s & u.ground()))
}

/// `(u1 ∗ u2)(S) = max_{T⊆S} u1(T ∩ E¹) + u2((S∖T) ∩ E²)` on `E¹ ∪ E²`.
pub fn merge(u1: &Valuation, u2: &Valuation) -> Valuation {
    let g = u1.ground() | u2.ground();
    let (e1, e2) = (u1.ground(), u2.ground());
    Valuation::from_fn(g, |s| {
        s.subsets().map(|t| *u1.at(t & e1) + *u2.at((s - t) & e2)).max().expect("T = ∅ is a candidate")
    })
    .expect("the merge of valuations is a valuation")
}

/// `∂^T u(S) = u(S ∪ T) − u(T)` on `E ∖ T`.
pub fn endow(u: &Valuation, t: ItemSet) -> Result<Valuation> {
    let g = u.ground();
    if !t.is_subset_of(g) {
        return Err(Error::SubsetOutOfGround { set: t, ground: g });
    }
    let base = *u.at(t);
    Valuation::from_fn(g - t, |s| *u.at(s | t) - base)
}

/// Searches `candidates` for `u, u′ ≠ v` with `u ∗ u′ = v`.
///
/// Candidates not below `v` pointwise, or on grounds outside `v`'s, cannot be factors
/// and are dropped before the pair search.
pub fn refute_irreducible(v: &Valuation, candidates: &[Valuation]) -> IrreducibilityVerdict {
    let g = v.ground();
    let mut seen = BTreeSet::new();
    let pool: Vec<(&Valuation, Valuation)> = candidates
        .iter()
        .filter_map(|u| {
            let padded = pad(u, g).ok()?;
            (padded != *v && padded.le_on_ground(v) && seen.insert(padded.values().to_vec())).then_some((u, padded))
        })
        .collect();
    let mut order: Vec<ItemSet> = g.subsets().collect();
    order.sort_by_key(|s| (s.len(), s.0));
    for (i, (u, pu)) in pool.iter().enumerate() {
        for (w, pw) in &pool[i..] {
            let agrees = order.iter().all(|&s| {
                s.subsets().map(|t| *pu.at(t) + *pw.at(s - t)).max().expect("nonempty") == *v.at(s)
            });
            if agrees {
                return IrreducibilityVerdict::Reducible { left: (*u).clone(), right: (*w).clone() };
            }
        }
    }
    IrreducibilityVerdict::Unknown
}

/// Weighted ranks of every matroid on a subset of `v`'s ground (weights read from
/// `v`'s singleton values) and the proper restrictions of `v`.
pub fn default_candidates(v: &Valuation) -> Result<Vec<Valuation>> {
    let g = v.ground();
    let w = WeightVector::new(v.singleton_values())?;
    let mut out = Vec::new();
    let mut seen = BTreeSet::new();
    for m in matroid::enumerate_matroids_on_subsets(g)? {
        let u = matroid::weighted_rank(&m, &w.restrict(g, m.ground()))?;
        if pad(&u, g)?.le_on_ground(v) && seen.insert((u.ground(), u.values().to_vec())) {
            out.push(u);
        }
    }
    for t in g.subsets().filter(|t| *t != g) {
        let u = v.restrict(t)?;
        if seen.insert((u.ground(), u.values().to_vec())) {
            out.push(u);
        }
    }
    Ok(out)
}

/// Looks for a full cell of the subdivision whose `ρ_P` is the rank function of an
/// irreducible matroid. Cells are tried largest first.
pub fn certify_irreducible(v: &Valuation) -> Result<IrreducibilityVerdict> {
    let n = v.dim();
    if n > CERTIFY_LIMIT {
        return Err(Error::GroundTooLarge { size: n, limit: CERTIFY_LIMIT });
    }
    if !gscheck::is_gross_substitutes(v).0 {
        return Err(Error::NotGrossSubstitutes);
    }
    let g = v.ground();
    let mut cells: Vec<Face> = if n <= geometry::FACE_ENUMERATION_LIMIT {
        geometry::full_dimensional_faces(v)?
    } else {
        let seeds = [v.singleton_values(), vec![Rational::from_integer(0); n]]
            .into_iter()
            .map(|p| geometry::grow_cell(v, p))
            .collect();
        geometry::explore_full_cells(v, seeds, Some(CERTIFY_CELL_BUDGET))
            .into_iter()
            .map(|c| Face::from_mask(g, c.mask))
            .collect()
    };
    cells.sort_by_key(|f| std::cmp::Reverse(f.len()));
    for face in cells {
        match geometry::certify_m_irreducible(&face) {
            Ok(MIrreducibility::Certified) => return Ok(IrreducibilityVerdict::CertifiedIrreducible { face }),
            Ok(MIrreducibility::Unknown) | Err(Error::NotMnat) => {}
            Err(e) => return Err(e),
        }
    }
    Ok(IrreducibilityVerdict::Unknown)
}

/// How one face of `Δ_{u∗v}` splits as a sum of faces of `Δ_u` and `Δ_v`.
#[derive(Clone, Debug)]
pub struct FaceDecomposition {
    pub face: Face,
    pub parts: Option<(Face, Face)>,
}

/// Lattice points of `(F_u + F_v) ∩ {0,1}^n`: disjoint unions `a ∪ b`.
fn sum_in_cube(fu: &Face, fv: &Face) -> BTreeSet<ItemSet> {
    let mut out = BTreeSet::new();
    for a in fu.points() {
        for b in fv.points() {
            if (a & b).is_empty() {
                out.insert(a | b);
            }
        }
    }
    out
}

/// Checks that every face of `Δ_{u∗v}` equals `(F_u + F_v) ∩ {0,1}^n` for some faces
/// `F_u` of `Δ_u` and `F_v` of `Δ_v`, comparing lattice points.
pub fn check_merge_face_decomposition(u: &Valuation, v: &Valuation) -> Result<(bool, Vec<FaceDecomposition>)> {
    let g = u.ground() | v.ground();
    if g.len() > DECOMPOSITION_LIMIT {
        return Err(Error::GroundTooLarge { size: g.len(), limit: DECOMPOSITION_LIMIT });
    }
    if !gscheck::is_gross_substitutes(u).0 || !gscheck::is_gross_substitutes(v).0 {
        return Err(Error::NotGrossSubstitutes);
    }
    let (pu, pv) = (pad(u, g)?, pad(v, g)?);
    let fu = geometry::enumerate_faces(&pu)?;
    let fv = geometry::enumerate_faces(&pv)?;
    let mut report = Vec::new();
    let mut all = true;
    for face in geometry::enumerate_faces(&merge(&pu, &pv))? {
        let target: BTreeSet<ItemSet> = face.points().into_iter().collect();
        let parts = fu
            .iter()
            .flat_map(|a| fv.iter().map(move |b| (a, b)))
            .find(|(a, b)| sum_in_cube(a, b) == target)
            .map(|(a, b)| (a.clone(), b.clone()));
        all &= parts.is_some();
        report.push(FaceDecomposition { face, parts });
    }
    Ok((all, report))
}
