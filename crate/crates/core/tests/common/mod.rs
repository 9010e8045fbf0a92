//! Brute-force oracles shared by the integration tests.
#![allow(dead_code)]

use gsvkit::rational::int;
use gsvkit::{ItemSet, Rational, Valuation};
use gsvkit::lp::LinearSystem;
use rand::Rng;
use std::collections::BTreeSet;

pub fn set(s: &str) -> ItemSet {
    s.parse().unwrap()
}

/// All bundles of `[n]` as bitmask-ordered sets.
pub fn bundles(n: usize) -> Vec<ItemSet> {
    (0..1u32 << n).map(ItemSet).collect()
}

/// The exchange inequality checked literally over all `X, Y, i`.
pub fn gs_oracle(v: &Valuation) -> bool {
    let g = v.ground();
    for x in g.subsets() {
        for y in g.subsets() {
            for i in (x - y).items() {
                let lhs = *v.at(x) + *v.at(y);
                let mut best = *v.at(x.without(i)) + *v.at(y.with(i));
                for j in (y - x).items() {
                    best = best.max(*v.at(x.without(i).with(j)) + *v.at(y.with(i).without(j)));
                }
                if lhs > best {
                    return false;
                }
            }
        }
    }
    true
}

/// Demand set by scanning all bundles.
pub fn demand_oracle(v: &Valuation, p: &[Rational]) -> Vec<ItemSet> {
    let g = v.ground();
    let util = |s: ItemSet| -> Rational {
        *v.at(s) - g.items().zip(p).filter(|(i, _)| s.contains(*i)).map(|(_, x)| *x).sum::<Rational>()
    };
    let best = g.subsets().map(util).max().unwrap();
    g.subsets().filter(|s| util(*s) == best).collect()
}

/// `max_T u1(T ∩ E1) + u2((S∖T) ∩ E2)` by direct enumeration.
pub fn merge_oracle(u1: &Valuation, u2: &Valuation, s: ItemSet) -> Rational {
    let mut best = None;
    for t in 0..1u32 << 16 {
        let t = ItemSet(t);
        if !t.is_subset_of(s) {
            continue;
        }
        let val = *u1.at(t & u1.ground()) + *u2.at((s - t) & u2.ground());
        if best.is_none_or(|b| val > b) {
            best = Some(val);
        }
        if t == s {
            break;
        }
    }
    best.unwrap()
}

/// Maximum matching weight by trying every assignment of items to agents or none.
pub fn matching_oracle(edges: &[Vec<(usize, Rational)>], s: ItemSet) -> Rational {
    let items: Vec<usize> = s.items().collect();
    fn go(items: &[usize], edges: &[Vec<(usize, Rational)>], used: u64) -> Rational {
        let Some((&i, rest)) = items.split_first() else { return int(0) };
        let mut best = go(rest, edges, used);
        for (k, es) in edges.iter().enumerate() {
            if used >> k & 1 == 0 {
                if let Some((_, w)) = es.iter().find(|(j, _)| *j == i) {
                    best = best.max(*w + go(rest, edges, used | 1 << k));
                }
            }
        }
        best
    }
    go(&items, edges, 0)
}

/// Weighted rank by scanning every independent subset.
pub fn weighted_rank_oracle(independents: &[ItemSet], ground: ItemSet, w: &[Rational], t: ItemSet) -> Rational {
    independents
        .iter()
        .filter(|i| i.is_subset_of(t))
        .map(|i| ground.items().zip(w).filter(|(e, _)| i.contains(*e)).map(|(_, x)| *x).sum::<Rational>())
        .max()
        .unwrap_or_default()
}

pub fn random_price(rng: &mut impl Rng, n: usize) -> Vec<Rational> {
    (0..n).map(|_| Rational::new(rng.gen_range(-4..=24), rng.gen_range(1..=4))).collect()
}

/// Is there a price at which exactly `sigma` is demanded, for the table `values` over `[n]`?
/// Unknowns are `p_1..p_n` and the utility level `t`.
pub fn is_face_by_lp(n: usize, values: &[Rational], sigma: &[ItemSet]) -> bool {
    let mut sys = LinearSystem::new(n + 1);
    let row = |s: ItemSet| -> Vec<Rational> {
        let mut r: Vec<Rational> = (1..=n).map(|i| if s.contains(i) { int(1) } else { int(0) }).collect();
        r.push(int(1));
        r
    };
    for s in bundles(n) {
        let val = values[s.0 as usize];
        if sigma.contains(&s) {
            sys.eq(row(s), val);
        } else {
            sys.gt(row(s), val);
        }
    }
    sys.is_feasible()
}

pub fn lp_faces(n: usize, values: &[Rational]) -> BTreeSet<Vec<ItemSet>> {
    let all = bundles(n);
    (1u64..1 << all.len())
        .map(|m| all.iter().enumerate().filter(|(k, _)| m >> k & 1 == 1).map(|(_, s)| *s).collect::<Vec<_>>())
        .filter(|sigma| is_face_by_lp(n, values, sigma))
        .collect()
}

/// Is `x` in `conv(a) + conv(b)`?
pub fn in_minkowski_sum(n: usize, a: &[ItemSet], b: &[ItemSet], x: ItemSet) -> bool {
    let vars = a.len() + b.len();
    let mut sys = LinearSystem::new(vars);
    let unit = |k: usize| -> Vec<Rational> { (0..vars).map(|j| if j == k { int(1) } else { int(0) }).collect() };
    for k in 0..vars {
        sys.ge(unit(k), int(0));
    }
    sys.eq((0..vars).map(|j| if j < a.len() { int(1) } else { int(0) }).collect(), int(1));
    sys.eq((0..vars).map(|j| if j < a.len() { int(0) } else { int(1) }).collect(), int(1));
    for i in 1..=n {
        let coeffs = a.iter().chain(b).map(|p| if p.contains(i) { int(1) } else { int(0) }).collect();
        sys.eq(coeffs, if x.contains(i) { int(1) } else { int(0) });
    }
    sys.is_feasible()
}
