//! Regular subdivisions of the cube induced by a valuation.
//!
//! A point of the cube is a subset of the ground set; point sets are bitmasks over
//! subset indices (ground sets have at most 6 items, so 64 points fit in a `u64`).
//! Full-dimensional cells are found by wall crossing: each cell's facets come from a
//! double-description run on its points, and crossing an interior facet means sliding
//! the cell's price along the facet normal until a new bundle ties.

use std::collections::{BTreeSet, VecDeque};

use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gscheck::{self, PriceVector};
use crate::linalg;
use crate::lp::LinearSystem;
use crate::matroid::{self, Matroid};
use crate::rational::Rational;
use crate::set::ItemSet;
use crate::setfn::Valuation;

/// Largest ground set whose cells fit the `u64` point masks.
pub const MAX_GEOMETRY_DIM: usize = 6;
/// Largest ground set for full face enumeration.
pub const FACE_ENUMERATION_LIMIT: usize = 5;

/// A cell of the subdivision: a set of 0/1 points whose convex hull is a face.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face {
    ground: ItemSet,
    members: u64,
    dimension: usize,
}

impl Face {
    /// Builds a face from explicit points; the dimension is computed.
    pub fn from_points(ground: ItemSet, points: &[ItemSet]) -> Result<Face> {
        check_geometry_dim(ground.len(), MAX_GEOMETRY_DIM)?;
        let mut members = 0u64;
        for p in points {
            if !p.is_subset_of(ground) {
                return Err(Error::SubsetOutOfGround { set: *p, ground });
            }
            members |= 1 << p.index_in(ground);
        }
        Ok(Face::from_mask(ground, members))
    }

    pub(crate) fn from_mask(ground: ItemSet, members: u64) -> Face {
        let dimension = affine_dim(members, ground.len());
        Face { ground, members, dimension }
    }

    pub fn ground(&self) -> ItemSet {
        self.ground
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    /// Point mask over subset indices of the ground set.
    pub fn mask(&self) -> u64 {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.members == 0
    }

    pub fn is_full_dimensional(&self) -> bool {
        self.dimension == self.ground.len()
    }

    pub fn contains(&self, s: ItemSet) -> bool {
        s.is_subset_of(self.ground) && self.members & (1 << s.index_in(self.ground)) != 0
    }

    pub fn points(&self) -> Vec<ItemSet> {
        mask_indices(self.members).map(|k| ItemSet::from_index(k, self.ground)).collect()
    }
}

#[derive(Clone, Debug, Serialize)]
pub enum MIrreducibility {
    Certified,
    Unknown,
}

fn check_geometry_dim(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::GroundTooLarge { size, limit });
    }
    Ok(())
}

pub(crate) fn mask_indices(mask: u64) -> impl Iterator<Item = usize> {
    let mut m = mask;
    std::iter::from_fn(move || {
        if m == 0 {
            return None;
        }
        let k = m.trailing_zeros() as usize;
        m &= m - 1;
        Some(k)
    })
}

fn coords(k: usize, d: usize) -> Vec<Rational> {
    (0..d).map(|b| if k >> b & 1 == 1 { Rational::one() } else { Rational::zero() }).collect()
}

fn dot_point(h: &[Rational], k: usize) -> Rational {
    h.iter().enumerate().filter(|(b, _)| k >> b & 1 == 1).map(|(_, x)| *x).sum()
}

/// Affine dimension of a point set (−0 for the empty set is reported as 0).
pub(crate) fn affine_dim(mask: u64, d: usize) -> usize {
    let mut it = mask_indices(mask);
    let Some(a0) = it.next() else { return 0 };
    let base = coords(a0, d);
    let diffs: Vec<Vec<Rational>> = it
        .map(|k| coords(k, d).iter().zip(&base).map(|(x, y)| *x - *y).collect())
        .collect();
    linalg::rank(&diffs, d)
}

/// A price whose demand set is exactly `sigma`, if one exists.
pub fn supporting_price(v: &Valuation, sigma: &[ItemSet]) -> Option<PriceVector> {
    let g = v.ground();
    if sigma.is_empty() || sigma.iter().any(|s| !s.is_subset_of(g)) {
        return None;
    }
    let d = g.len();
    let members: BTreeSet<ItemSet> = sigma.iter().copied().collect();
    // Variables (p_1..p_d, t); utility(S) = v(S) − ⟨p,S⟩.
    let row = |s: ItemSet| -> Vec<Rational> {
        let k = s.index_in(g);
        let mut r: Vec<Rational> = coords(k, d);
        r.push(Rational::one());
        r
    };
    let mut sys = LinearSystem::new(d + 1);
    for s in g.subsets() {
        if members.contains(&s) {
            // ⟨p,S⟩ + t = v(S)
            sys.eq(row(s), *v.at(s));
        } else {
            // ⟨p,S⟩ + t > v(S)
            sys.gt(row(s), *v.at(s));
        }
    }
    let x = sys.solve()?;
    let p = PriceVector(x[..d].to_vec());
    debug_assert_eq!(gscheck::demand_set(v, &p).map(|ds| ds.points).ok(), Some(members.into_iter().collect()));
    Some(p)
}

/// A full-dimensional cell and its (unique) supporting price.
#[derive(Clone, Debug)]
pub(crate) struct Cell {
    pub mask: u64,
    pub price: Vec<Rational>,
}

/// Moves `price` inside the tie set until the demand set is full-dimensional.
pub(crate) fn grow_cell(v: &Valuation, mut price: Vec<Rational>) -> Cell {
    let g = v.ground();
    let d = g.len();
    loop {
        let mask = gscheck::demand_mask(v, &price);
        if affine_dim(mask, d) == d {
            return Cell { mask, price };
        }
        let a0 = mask.trailing_zeros() as usize;
        let base = coords(a0, d);
        let diffs: Vec<Vec<Rational>> = mask_indices(mask)
            .skip(1)
            .map(|k| coords(k, d).iter().zip(&base).map(|(x, y)| *x - *y).collect())
            .collect();
        let dir = linalg::nullspace(&diffs, d).into_iter().next().expect("tie set is not full-dimensional");
        let utility = |k: usize| *v.at(ItemSet::from_index(k, g)) - dot_point(&price, k);
        let u_cell = utility(a0);
        let h0 = dot_point(&dir, a0);
        // p + s·dir lowers utility by s·⟨dir,x⟩; outsiders with ⟨dir,x⟩ < h0 catch up.
        let step = |sign: Rational| -> Option<Rational> {
            (0..1usize << d)
                .filter(|k| mask >> k & 1 == 0)
                .filter_map(|k| {
                    let gain = sign * (h0 - dot_point(&dir, k));
                    gain.is_positive().then(|| (u_cell - utility(k)) / gain)
                })
                .min()
        };
        let one = Rational::one();
        let (sign, s) = match step(one) {
            Some(s) => (one, s),
            None => (-one, step(-one).expect("points span the cube")),
        };
        for (p, x) in price.iter_mut().zip(&dir) {
            *p += sign * s * *x;
        }
    }
}

/// Facet of a full-dimensional point set: `⟨h,x⟩ ≤ beta` with equality on `tight`.
#[derive(Clone, Debug)]
pub(crate) struct Facet {
    pub normal: Vec<Rational>,
    pub offset: Rational,
    pub tight: u64,
}

fn normalize(v: &mut [Rational]) {
    let lcm = v.iter().fold(1i128, |acc, x| acc.lcm(x.denom()));
    let ints: Vec<i128> = v.iter().map(|x| (*x * Rational::from_integer(lcm)).to_integer()).collect();
    let gcd = ints.iter().fold(0i128, |acc, x| acc.gcd(x));
    if gcd == 0 {
        return;
    }
    for (slot, x) in v.iter_mut().zip(ints) {
        *slot = Rational::from_integer(x / gcd);
    }
}

/// Facets of `conv(mask)` by the double-description method on the cone
/// `{(h, β) : β − ⟨h, x⟩ ≥ 0 for x in mask}`.
pub(crate) fn facets(mask: u64, d: usize) -> Vec<Facet> {
    let dim = d + 1;
    let row = |k: usize| -> Vec<Rational> {
        let mut r: Vec<Rational> = coords(k, d).into_iter().map(|x| -x).collect();
        r.push(Rational::one());
        r
    };
    let pts: Vec<usize> = mask_indices(mask).collect();
    let mut chosen: Vec<usize> = Vec::with_capacity(dim);
    let mut basis: Vec<Vec<Rational>> = Vec::with_capacity(dim);
    for &k in &pts {
        let mut trial = basis.clone();
        trial.push(row(k));
        if linalg::rank(&trial, dim) == trial.len() {
            basis = trial;
            chosen.push(k);
            if chosen.len() == dim {
                break;
            }
        }
    }
    assert_eq!(chosen.len(), dim, "point set is not full-dimensional");

    // Initial simplicial cone: rays are the columns of the inverse of the basis matrix.
    let mut aug: Vec<Vec<Rational>> = basis
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut a = r.clone();
            a.extend((0..dim).map(|j| if i == j { Rational::one() } else { Rational::zero() }));
            a
        })
        .collect();
    linalg::rref(&mut aug, 2 * dim);
    let chosen_mask = chosen.iter().fold(0u64, |m, &k| m | 1 << k);
    let mut rays: Vec<(Vec<Rational>, u64)> = (0..dim)
        .map(|j| {
            let mut r: Vec<Rational> = (0..dim).map(|i| aug[i][dim + j]).collect();
            normalize(&mut r);
            (r, chosen_mask & !(1 << chosen[j]))
        })
        .collect();

    for &k in pts.iter().filter(|k| chosen_mask >> **k & 1 == 0) {
        let a = row(k);
        let vals: Vec<Rational> = rays.iter().map(|(r, _)| linalg::dot(&a, r)).collect();
        let mut next: Vec<(Vec<Rational>, u64)> = Vec::new();
        for (i, (r, z)) in rays.iter().enumerate() {
            if vals[i].is_positive() {
                next.push((r.clone(), *z));
            } else if vals[i].is_zero() {
                next.push((r.clone(), *z | 1 << k));
            }
        }
        for (i, (rp, zp)) in rays.iter().enumerate() {
            if !vals[i].is_positive() {
                continue;
            }
            for (j, (rm, zm)) in rays.iter().enumerate() {
                if !vals[j].is_negative() {
                    continue;
                }
                let common = zp & zm;
                if (common.count_ones() as usize) + 2 < dim {
                    continue;
                }
                let adjacent = rays
                    .iter()
                    .enumerate()
                    .all(|(t, (_, zt))| t == i || t == j || common & !zt != 0);
                if !adjacent {
                    continue;
                }
                let mut r: Vec<Rational> =
                    rm.iter().zip(rp).map(|(m, p)| vals[i] * *m - vals[j] * *p).collect();
                normalize(&mut r);
                next.push((r, common | 1 << k));
            }
        }
        rays = next;
    }

    rays.into_iter()
        .map(|(r, tight)| Facet { normal: r[..d].to_vec(), offset: r[d], tight })
        .collect()
}

/// Breadth-first wall crossing from `seeds`; stops after `budget` cells when given.
pub(crate) fn explore_full_cells(v: &Valuation, seeds: Vec<Cell>, budget: Option<usize>) -> Vec<Cell> {
    let g = v.ground();
    let d = g.len();
    let mut seen: BTreeSet<u64> = BTreeSet::new();
    let mut queue: VecDeque<Cell> = VecDeque::new();
    for c in seeds {
        if seen.insert(c.mask) {
            queue.push_back(c);
        }
    }
    let mut out = Vec::new();
    while let Some(cell) = queue.pop_front() {
        if budget.is_some_and(|b| out.len() >= b) {
            break;
        }
        let utility = |k: usize| *v.at(ItemSet::from_index(k, g)) - dot_point(&cell.price, k);
        let a0 = cell.mask.trailing_zeros() as usize;
        let t = utility(a0);
        for f in facets(cell.mask, d) {
            let s = (0..1usize << d)
                .filter(|k| cell.mask >> k & 1 == 0)
                .filter_map(|k| {
                    let lift = dot_point(&f.normal, k) - f.offset;
                    lift.is_positive().then(|| (t - utility(k)) / lift)
                })
                .min();
            let Some(s) = s else { continue };
            let price: Vec<Rational> = cell.price.iter().zip(&f.normal).map(|(p, h)| *p - s * *h).collect();
            let mask = gscheck::demand_mask(v, &price);
            debug_assert_eq!(affine_dim(mask, d), d);
            if seen.insert(mask) {
                queue.push_back(Cell { mask, price });
            }
        }
        out.push(cell);
    }
    out
}

pub(crate) fn all_full_cells(v: &Valuation) -> Vec<Cell> {
    let start = grow_cell(v, vec![Rational::zero(); v.dim()]);
    explore_full_cells(v, vec![start], None)
}

/// Full-dimensional faces of the subdivision.
pub fn full_dimensional_faces(v: &Valuation) -> Result<Vec<Face>> {
    check_geometry_dim(v.dim(), FACE_ENUMERATION_LIMIT)?;
    let g = v.ground();
    let mut faces: Vec<Face> = all_full_cells(v).into_iter().map(|c| Face::from_mask(g, c.mask)).collect();
    faces.sort();
    Ok(faces)
}

/// Every face of the subdivision (all dimensions), sorted by point mask.
pub fn enumerate_faces(v: &Valuation) -> Result<Vec<Face>> {
    check_geometry_dim(v.dim(), FACE_ENUMERATION_LIMIT)?;
    let g = v.ground();
    let d = g.len();
    if d == 0 {
        return Ok(vec![Face::from_mask(g, 1)]);
    }
    let mut all: BTreeSet<u64> = BTreeSet::new();
    for cell in all_full_cells(v) {
        all.insert(cell.mask);
        let facet_masks: Vec<u64> = facets(cell.mask, d).into_iter().map(|f| f.tight).collect();
        // Every proper face is an intersection of facets.
        let mut local: BTreeSet<u64> = facet_masks.iter().copied().collect();
        let mut frontier: Vec<u64> = local.iter().copied().collect();
        while let Some(f) = frontier.pop() {
            for &h in &facet_masks {
                let m = f & h;
                if m != 0 && local.insert(m) {
                    frontier.push(m);
                }
            }
        }
        all.extend(local);
    }
    Ok(all.into_iter().map(|m| Face::from_mask(g, m)).collect())
}

fn is_mnat_direction(a: usize, b: usize, d: usize) -> bool {
    let mut plus = 0;
    let mut minus = 0;
    for bit in 0..d {
        match ((a >> bit) & 1, (b >> bit) & 1) {
            (0, 1) => plus += 1,
            (1, 0) => minus += 1,
            _ => {}
        }
    }
    matches!((plus, minus), (1, 0) | (0, 1) | (1, 1))
}

/// Whether `{a, b}` spans an edge of `conv(mask)`: some functional is maximized on
/// the mask exactly at `a` and `b`.
fn is_edge(mask: u64, a: usize, b: usize, d: usize) -> bool {
    let ca = coords(a, d);
    let cb = coords(b, d);
    let mut sys = LinearSystem::new(d);
    sys.eq(ca.iter().zip(&cb).map(|(x, y)| *x - *y).collect(), Rational::zero());
    for k in mask_indices(mask).filter(|&k| k != a && k != b) {
        let ck = coords(k, d);
        sys.gt(ca.iter().zip(&ck).map(|(x, y)| *x - *y).collect(), Rational::zero());
    }
    sys.is_feasible()
}

/// Every edge of the face is parallel to some `e_i` or `e_i − e_j`.
pub fn is_mnat_polytope(face: &Face) -> bool {
    non_mnat_edge(face).is_none()
}

/// An edge of the face violating the M♮ condition, if any.
pub fn non_mnat_edge(face: &Face) -> Option<(ItemSet, ItemSet)> {
    let d = face.ground.len();
    let pts: Vec<usize> = mask_indices(face.members).collect();
    for (i, &a) in pts.iter().enumerate() {
        for &b in &pts[i + 1..] {
            // Only pairs in a forbidden direction need the exposure test.
            if !is_mnat_direction(a, b, d) && is_edge(face.members, a, b, d) {
                return Some((ItemSet::from_index(a, face.ground), ItemSet::from_index(b, face.ground)));
            }
        }
    }
    None
}

/// `ρ_P(I) = max_{x ∈ P} Σ_{i∈I} x_i`.
pub fn rho_of_face(face: &Face) -> Valuation {
    let g = face.ground;
    let pts = face.points();
    Valuation::from_fn(g, |s| {
        Rational::from_integer(pts.iter().map(|p| (*p & s).len()).max().unwrap_or(0) as i128)
    })
    .expect("ρ_P is a valuation")
}

/// `Certified` when `ρ_P` is the rank function of a union-irreducible matroid.
pub fn certify_m_irreducible(face: &Face) -> Result<MIrreducibility> {
    check_geometry_dim(face.ground.len(), matroid::IRREDUCIBILITY_LIMIT)?;
    if !is_mnat_polytope(face) {
        return Err(Error::NotMnat);
    }
    let Ok(m) = Matroid::from_rank_valuation(&rho_of_face(face)) else {
        return Ok(MIrreducibility::Unknown);
    };
    if matroid::is_irreducible_matroid(&m)?.irreducible {
        Ok(MIrreducibility::Certified)
    } else {
        Ok(MIrreducibility::Unknown)
    }
}
