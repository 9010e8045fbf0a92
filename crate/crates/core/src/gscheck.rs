//! Gross-substitutes membership, indirect utility and demand sets.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::geometry;
use crate::rational::Rational;
use crate::set::ItemSet;
use crate::setfn::Valuation;

/// Prices, one per ground item in increasing item order. Negative entries are allowed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct PriceVector(#[serde(with = "crate::rational::serde_rational::vec")] pub Vec<Rational>);

impl PriceVector {
    pub fn uniform(len: usize, p: Rational) -> Self {
        PriceVector(vec![p; len])
    }

    /// `⟨p, 1_S⟩` where item order follows `ground`.
    pub fn cost(&self, ground: ItemSet, s: ItemSet) -> Rational {
        ground
            .items()
            .zip(&self.0)
            .filter(|(i, _)| s.contains(*i))
            .map(|(_, p)| *p)
            .sum()
    }
}

/// Bundles maximizing `v(S) − ⟨p, S⟩`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DemandSet {
    pub points: Vec<ItemSet>,
    pub supporting_price: PriceVector,
}

/// A failing instance of the exchange inequality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ExchangeWitness {
    pub x: ItemSet,
    pub y: ItemSet,
    pub item: usize,
}

fn check_dim(v: &Valuation, p: &PriceVector) -> Result<()> {
    if p.0.len() != v.dim() {
        return Err(Error::DimensionMismatch { expected: v.dim(), got: p.0.len() });
    }
    Ok(())
}

/// `max_S v(S) − ⟨p, S⟩`.
pub fn indirect_utility(v: &Valuation, p: &PriceVector) -> Result<Rational> {
    check_dim(v, p)?;
    let g = v.ground();
    Ok(v.iter().map(|(s, x)| *x - p.cost(g, s)).max().expect("at least the empty bundle"))
}

/// Exact argmax of `v(S) − ⟨p, S⟩`, in subset-index order.
pub fn demand_set(v: &Valuation, p: &PriceVector) -> Result<DemandSet> {
    let best = indirect_utility(v, p)?;
    let g = v.ground();
    let points = v.iter().filter(|(s, x)| **x - p.cost(g, *s) == best).map(|(s, _)| s).collect();
    Ok(DemandSet { points, supporting_price: p.clone() })
}

/// Demand set as a bitmask over subset indices of the ground set.
pub(crate) fn demand_mask(v: &Valuation, p: &[Rational]) -> u64 {
    let g = v.ground();
    let costs: Vec<Rational> = g.subsets().map(|s| cost_at(g, p, s)).collect();
    let utils: Vec<Rational> = v.values().iter().zip(&costs).map(|(x, c)| *x - *c).collect();
    let best = *utils.iter().max().expect("nonempty");
    utils
        .iter()
        .enumerate()
        .filter(|(_, u)| **u == best)
        .fold(0u64, |m, (k, _)| m | (1 << k))
}

pub(crate) fn cost_at(ground: ItemSet, p: &[Rational], s: ItemSet) -> Rational {
    ground.items().zip(p).filter(|(i, _)| s.contains(*i)).map(|(_, x)| *x).sum()
}

/// The M♮-concavity exchange test: for all `X, Y` and `i ∈ X∖Y`,
/// `v(X) + v(Y) ≤ max(v(X−i) + v(Y+i), max_{j∈Y∖X} v(X−i+j) + v(Y+i−j))`.
pub fn is_gross_substitutes(v: &Valuation) -> (bool, Option<ExchangeWitness>) {
    match exchange_violation(v) {
        None => (true, None),
        Some(w) => (false, Some(w)),
    }
}

pub fn exchange_violation(v: &Valuation) -> Option<ExchangeWitness> {
    let g = v.ground();
    let vals = v.values();
    let k = g.len();
    // Work in index space: bit b of an index is the b-th ground item.
    let size = 1usize << k;
    for x in 0..size {
        for y in 0..size {
            let lhs = vals[x] + vals[y];
            let x_only = x & !y;
            let y_only = y & !x;
            let mut xi = x_only;
            while xi != 0 {
                let ib = xi & xi.wrapping_neg();
                xi &= xi - 1;
                let mut best = vals[x & !ib] + vals[y | ib];
                if best < lhs {
                    let mut yj = y_only;
                    while yj != 0 {
                        let jb = yj & yj.wrapping_neg();
                        yj &= yj - 1;
                        let cand = vals[(x & !ib) | jb] + vals[(y | ib) & !jb];
                        if cand > best {
                            best = cand;
                            if best >= lhs {
                                break;
                            }
                        }
                    }
                }
                if best < lhs {
                    let item = ItemSet::from_index(ib, g).items().next().expect("one item");
                    return Some(ExchangeWitness {
                        x: ItemSet::from_index(x, g),
                        y: ItemSet::from_index(y, g),
                        item,
                    });
                }
            }
        }
    }
    None
}

/// Largest ground set accepted by [`is_gs_by_subdivision`].
pub const SUBDIVISION_LIMIT: usize = 5;

/// Gross substitutes via the regular subdivision: every face must be an M♮ polytope.
pub fn is_gs_by_subdivision(v: &Valuation) -> Result<bool> {
    if v.dim() > SUBDIVISION_LIMIT {
        return Err(Error::GroundTooLarge { size: v.dim(), limit: SUBDIVISION_LIMIT });
    }
    let faces = geometry::enumerate_faces(v)?;
    Ok(faces.iter().all(geometry::is_mnat_polytope))
}

/// `v(S∪i) − v(S) ≥ v(T∪i) − v(T)` for all `S ⊆ T`, `i ∉ T`.
pub fn is_submodular(v: &Valuation) -> bool {
    let g = v.ground();
    g.subsets().all(|t| {
        (g - t).items().all(|i| {
            let mt = *v.at(t.with(i)) - *v.at(t);
            t.subsets().all(|s| *v.at(s.with(i)) - *v.at(s) >= mt)
        })
    })
}
