//! Matroids on subsets of `[n]`, stored as rank tables.
//!
//! A rank table is indexed by the compressed subset index of the ground set, so a
//! matroid on any `k`-element ground shares its table layout with a matroid on `[k]`.
//! Enumeration works on `[k]` and relabels onto the requested ground.

use std::collections::BTreeSet;
use std::sync::OnceLock;

use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::Rational;
use crate::set::ItemSet;
use crate::setfn::Valuation;

/// Largest ground set for exhaustive enumeration and irreducibility search.
pub const ENUMERATION_LIMIT: usize = 6;
/// Largest ground set accepted by [`is_irreducible_matroid`].
pub const IRREDUCIBILITY_LIMIT: usize = 6;
/// Largest ground set a matroid may have (parallel extensions can exceed `n`).
pub const MAX_MATROID_ITEMS: usize = 10;

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Matroid {
    ground: ItemSet,
    rank: Vec<u8>,
}

/// Nonnegative weights, one per ground element in increasing item order.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightVector(#[serde(with = "crate::rational::serde_rational::vec")] pub Vec<Rational>);

impl WeightVector {
    pub fn new(w: Vec<Rational>) -> Result<Self> {
        if let Some(x) = w.iter().find(|x| x.is_negative()) {
            return Err(Error::ParameterConstraintViolated(format!("weight {x} is negative")));
        }
        Ok(WeightVector(w))
    }

    pub fn from_ints(w: &[i64]) -> Result<Self> {
        WeightVector::new(w.iter().map(|x| Rational::from_integer(*x as i128)).collect())
    }

    pub fn ones(len: usize) -> Self {
        WeightVector(vec![Rational::from_integer(1); len])
    }

    /// Weights of the items of `sub`, where `self` is indexed by `ground`.
    pub fn restrict(&self, ground: ItemSet, sub: ItemSet) -> WeightVector {
        WeightVector(ground.items().zip(&self.0).filter(|(i, _)| sub.contains(*i)).map(|(_, w)| *w).collect())
    }
}

/// Outcome of the exhaustive union-irreducibility search.
#[derive(Clone, Debug)]
pub struct IrreducibilityCertificate {
    pub irreducible: bool,
    /// Two matroids, each different from the input, whose union is the input.
    pub witness: Option<(Matroid, Matroid)>,
    /// Connected with every one-element deletion connected.
    pub passes_connectivity_filter: bool,
}

fn check_size(size: usize, limit: usize) -> Result<()> {
    if size > limit {
        return Err(Error::GroundTooLarge { size, limit });
    }
    Ok(())
}

/// Validates the rank axioms on a table over `[k]`; returns the first offending set.
fn rank_axiom_violation(k: usize, r: &[u8]) -> Option<usize> {
    if r[0] != 0 {
        return Some(0);
    }
    for s in 1..1usize << k {
        for i in 0..k {
            if s >> i & 1 == 1 {
                let t = s ^ 1 << i;
                if r[s] < r[t] || r[s] > r[t] + 1 {
                    return Some(s);
                }
                for j in i + 1..k {
                    if s >> j & 1 == 1 {
                        let u = s ^ 1 << j;
                        if (r[t] as u16) + (r[u] as u16) < (r[s] as u16) + (r[t & u] as u16) {
                            return Some(s);
                        }
                    }
                }
            }
        }
    }
    None
}

impl Matroid {
    /// A matroid from a rank table indexed by subset index of `ground`.
    pub fn from_rank_table(ground: ItemSet, rank: Vec<u8>) -> Result<Self> {
        let k = ground.len();
        check_size(k, MAX_MATROID_ITEMS)?;
        if rank.len() != 1 << k {
            return Err(Error::DimensionMismatch { expected: 1 << k, got: rank.len() });
        }
        if let Some(s) = rank_axiom_violation(k, &rank) {
            return Err(Error::RankAxiom(ItemSet::from_index(s, ground)));
        }
        Ok(Matroid { ground, rank })
    }

    /// Reads a rank function from an integer-valued set function.
    pub fn from_rank_valuation(v: &Valuation) -> Result<Self> {
        let mut rank = Vec::with_capacity(v.values().len());
        for (s, x) in v.iter() {
            let r = x.is_integer().then(|| x.to_integer().to_u8()).flatten().ok_or(Error::RankAxiom(s))?;
            rank.push(r);
        }
        Matroid::from_rank_table(v.ground(), rank)
    }

    pub fn from_independents(ground: ItemSet, independents: &[ItemSet]) -> Result<Self> {
        check_size(ground.len(), MAX_MATROID_ITEMS)?;
        let family: BTreeSet<ItemSet> = independents.iter().copied().collect();
        if family.is_empty() {
            return Err(Error::NotDownwardClosed { member: ItemSet::EMPTY, missing: ItemSet::EMPTY });
        }
        for &s in &family {
            if !s.is_subset_of(ground) {
                return Err(Error::SubsetOutOfGround { set: s, ground });
            }
            for i in s.items() {
                if !family.contains(&s.without(i)) {
                    return Err(Error::NotDownwardClosed { member: s, missing: s.without(i) });
                }
            }
        }
        for &a in &family {
            for &b in &family {
                if a.len() < b.len() && !(b - a).items().any(|j| family.contains(&a.with(j))) {
                    return Err(Error::ExchangeAxiomFails { smaller: a, larger: b });
                }
            }
        }
        let rank = ground
            .subsets()
            .map(|s| family.iter().filter(|i| i.is_subset_of(s)).map(|i| i.len()).max().unwrap_or(0) as u8)
            .collect();
        Ok(Matroid { ground, rank })
    }

    /// A matroid from its bases; the independents are all subsets of bases.
    pub fn from_bases(ground: ItemSet, bases: &[ItemSet]) -> Result<Self> {
        let mut family = BTreeSet::new();
        for b in bases {
            if !b.is_subset_of(ground) {
                return Err(Error::SubsetOutOfGround { set: *b, ground });
            }
            family.extend(b.subsets());
        }
        let family: Vec<ItemSet> = family.into_iter().collect();
        Matroid::from_independents(ground, &family)
    }

    /// `U_{r,S}`.
    pub fn uniform(r: usize, ground: ItemSet) -> Self {
        let rank = ground.subsets().map(|s| s.len().min(r) as u8).collect();
        Matroid { ground, rank }
    }

    /// The rank-0 matroid (every element a loop).
    pub fn free_loops(ground: ItemSet) -> Self {
        Matroid::uniform(0, ground)
    }

    /// Graphic matroid of `K_4`; edges 12,13,14,23,24,34 are elements 1..6.
    pub fn graphic_k4() -> Self {
        let edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)];
        let ground = ItemSet::full(6);
        // A 3-edge set on 4 vertices is a spanning tree iff it touches every vertex
        // and is not a triangle, equivalently it is acyclic.
        let bases: Vec<ItemSet> = ground
            .subsets()
            .filter(|s| s.len() == 3)
            .filter(|s| {
                let mut parent = [0usize, 1, 2, 3, 4];
                fn find(p: &mut [usize; 5], x: usize) -> usize {
                    if p[x] != x {
                        p[x] = find(p, p[x]);
                    }
                    p[x]
                }
                s.items().all(|e| {
                    let (a, b) = edges[e - 1];
                    let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
                    parent[ra] = rb;
                    ra != rb
                })
            })
            .collect();
        debug_assert_eq!(bases.len(), 16);
        Matroid::from_bases(ground, &bases).expect("spanning trees form a matroid")
    }

    /// `U_{2,[5]}` with `{1,2}` removed from the bases.
    pub fn e2() -> Self {
        let ground = ItemSet::full(5);
        let bases: Vec<ItemSet> =
            ground.subsets().filter(|s| s.len() == 2 && *s != ItemSet::from_items([1, 2])).collect();
        Matroid::from_bases(ground, &bases).expect("valid matroid")
    }

    pub fn ground(&self) -> ItemSet {
        self.ground
    }

    pub fn table(&self) -> &[u8] {
        &self.rank
    }

    pub fn rank_of(&self, s: ItemSet) -> Result<usize> {
        if !s.is_subset_of(self.ground) {
            return Err(Error::SubsetOutOfGround { set: s, ground: self.ground });
        }
        Ok(self.rank[s.index_in(self.ground)] as usize)
    }

    pub(crate) fn r(&self, s: ItemSet) -> usize {
        self.rank[s.index_in(self.ground)] as usize
    }

    pub fn rank(&self) -> usize {
        *self.rank.last().expect("table is nonempty") as usize
    }

    pub fn is_independent(&self, s: ItemSet) -> bool {
        s.is_subset_of(self.ground) && self.r(s) == s.len()
    }

    pub fn independents(&self) -> Vec<ItemSet> {
        self.ground.subsets().filter(|s| self.r(*s) == s.len()).collect()
    }

    pub fn bases(&self) -> Vec<ItemSet> {
        let r = self.rank();
        self.ground.subsets().filter(|s| s.len() == r && self.r(*s) == r).collect()
    }

    pub fn loops(&self) -> ItemSet {
        ItemSet::from_items(self.ground.items().filter(|i| self.r(ItemSet::singleton(*i)) == 0))
    }

    pub fn is_loopless(&self) -> bool {
        self.loops().is_empty()
    }

    /// The rank function as a valuation.
    pub fn rank_valuation(&self) -> Valuation {
        Valuation::from_fn(self.ground, |s| Rational::from_integer(self.r(s) as i128)).expect("rank is a valuation")
    }

    /// `M|S`.
    pub fn restriction(&self, s: ItemSet) -> Result<Matroid> {
        if !s.is_subset_of(self.ground) {
            return Err(Error::SubsetOutOfGround { set: s, ground: self.ground });
        }
        Ok(Matroid { ground: s, rank: s.subsets().map(|t| self.rank[t.index_in(self.ground)]).collect() })
    }

    pub fn deletion(&self, e: usize) -> Result<Matroid> {
        if !self.ground.contains(e) {
            return Err(Error::ElementOutOfGround { element: e, ground: self.ground });
        }
        self.restriction(self.ground.without(e))
    }

    /// `M/T` with rank `r(S ∪ T) − r(T)` on `E∖T`.
    pub fn contraction(&self, t: ItemSet) -> Result<Matroid> {
        if let Some(e) = (t - self.ground).items().next() {
            return Err(Error::ElementOutOfGround { element: e, ground: self.ground });
        }
        let rt = self.r(t);
        let g = self.ground - t;
        Ok(Matroid { ground: g, rank: g.subsets().map(|s| (self.r(s | t) - rt) as u8).collect() })
    }

    /// Adds the elements of `ground ∖ E` as loops.
    pub fn with_loops(&self, ground: ItemSet) -> Result<Matroid> {
        if !self.ground.is_subset_of(ground) {
            return Err(Error::SubsetOutOfGround { set: self.ground, ground });
        }
        check_size(ground.len(), MAX_MATROID_ITEMS)?;
        Ok(Matroid { ground, rank: ground.subsets().map(|s| self.r(s & self.ground) as u8).collect() })
    }

    /// A proper nonempty `S` with `r(S) + r(E∖S) = r(E)`, if any.
    pub fn separator(&self) -> Option<ItemSet> {
        let k = self.ground.len();
        if k < 2 {
            return None;
        }
        let full = (1usize << k) - 1;
        (1..full)
            .find(|&s| self.rank[s] + self.rank[full ^ s] == self.rank[full])
            .map(|s| ItemSet::from_index(s, self.ground))
    }

    pub fn is_connected(&self) -> bool {
        self.separator().is_none()
    }

    /// Connected, with every one-element deletion connected.
    pub fn passes_connectivity_filter(&self) -> bool {
        self.is_connected() && self.ground.items().all(|e| self.deletion(e).expect("e in ground").is_connected())
    }

    /// Adds `new` parallel to `e`.
    pub fn parallel_extension(&self, e: usize, new: usize) -> Result<Matroid> {
        if !self.ground.contains(e) {
            return Err(Error::ElementOutOfGround { element: e, ground: self.ground });
        }
        if self.ground.contains(new) || new == 0 || new > crate::set::MAX_ITEMS {
            return Err(Error::ElementCollision { element: new, ground: self.ground });
        }
        let g = self.ground.with(new);
        check_size(g.len(), MAX_MATROID_ITEMS)?;
        let rank = g
            .subsets()
            .map(|s| if s.contains(new) { self.r(s.without(new).with(e)) as u8 } else { self.r(s) as u8 })
            .collect();
        Ok(Matroid { ground: g, rank })
    }

    /// The same matroid with element `i` renamed to `perm(i)`.
    pub fn relabel(&self, perm: impl Fn(usize) -> usize) -> Result<Matroid> {
        let g = ItemSet::from_items(self.ground.items().map(&perm));
        if g.len() != self.ground.len() {
            return Err(Error::ElementCollision { element: 0, ground: g });
        }
        let rank = g
            .subsets()
            .map(|s| {
                let pre = ItemSet::from_items(self.ground.items().filter(|i| s.contains(perm(*i))));
                self.r(pre) as u8
            })
            .collect();
        Ok(Matroid { ground: g, rank })
    }

    /// Smallest rank table over all relabelings of the ground; equal iff isomorphic.
    pub fn canonical_form(&self) -> Vec<u8> {
        let k = self.ground.len();
        let mut perm: Vec<usize> = (0..k).collect();
        let mut best: Option<Vec<u8>> = None;
        permute(&mut perm, 0, &mut |p| {
            let table: Vec<u8> = (0..1usize << k)
                .map(|s| {
                    let pre = (0..k).filter(|b| s >> p[*b] & 1 == 1).fold(0usize, |m, b| m | 1 << b);
                    self.rank[pre]
                })
                .collect();
            if best.as_ref().is_none_or(|b| table < *b) {
                best = Some(table);
            }
        });
        best.expect("at least one permutation")
    }

    pub fn is_isomorphic(&self, other: &Matroid) -> bool {
        self.ground.len() == other.ground.len() && self.canonical_form() == other.canonical_form()
    }
}

fn permute(p: &mut Vec<usize>, at: usize, f: &mut impl FnMut(&[usize])) {
    if at == p.len() {
        f(p);
        return;
    }
    for i in at..p.len() {
        p.swap(at, i);
        permute(p, at + 1, f);
        p.swap(at, i);
    }
}

impl std::fmt::Debug for Matroid {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Matroid(ground={:?}, rank={}, bases=[", self.ground, self.rank())?;
        for (k, b) in self.bases().iter().enumerate() {
            if k > 0 {
                write!(f, " ")?;
            }
            write!(f, "{b:?}")?;
        }
        write!(f, "])")
    }
}

/// `ρ^w(T) = max { w(I) : I ⊆ T independent }`, computed greedily.
pub fn weighted_rank(m: &Matroid, w: &WeightVector) -> Result<Valuation> {
    let g = m.ground;
    if w.0.len() != g.len() {
        return Err(Error::DimensionMismatch { expected: g.len(), got: w.0.len() });
    }
    let mut order: Vec<(usize, Rational)> = g.items().zip(w.0.iter().copied()).collect();
    order.sort_by_key(|p| std::cmp::Reverse(p.1));
    Valuation::from_fn(g, |t| {
        let mut chosen = ItemSet::EMPTY;
        let mut total = Rational::zero();
        for (i, wi) in &order {
            if t.contains(*i) && m.is_independent(chosen.with(*i)) {
                chosen = chosen.with(*i);
                total += *wi;
            }
        }
        total
    })
}

/// Union rank over contiguous tables: `min_{T⊆S} r1(T) + r2(T) + |S∖T|`.
fn union_rank_at(r1: &[u8], r2: &[u8], s: usize) -> u8 {
    let mut best = s.count_ones() as u8;
    let mut t = s;
    loop {
        let val = r1[t] + r2[t] + (s ^ t).count_ones() as u8;
        best = best.min(val);
        if t == 0 {
            break;
        }
        t = (t - 1) & s;
    }
    best
}

/// `M1 ∨ M2` on `E¹ ∪ E²`.
pub fn union(m1: &Matroid, m2: &Matroid) -> Matroid {
    let g = m1.ground | m2.ground;
    let a = m1.with_loops(g).expect("ground within limits");
    let b = m2.with_loops(g).expect("ground within limits");
    let rank = (0..1usize << g.len()).map(|s| union_rank_at(&a.rank, &b.rank, s)).collect();
    let m = Matroid { ground: g, rank };
    debug_assert!(rank_axiom_violation(g.len(), &m.rank).is_none());
    m
}

/// `M1 ∨ M2` from its independent sets `{I¹ ∪ I²}`.
pub fn union_by_independents(m1: &Matroid, m2: &Matroid) -> Matroid {
    let g = m1.ground | m2.ground;
    let mut family = BTreeSet::new();
    for a in m1.independents() {
        for b in m2.independents() {
            family.insert(a | b);
        }
    }
    let family: Vec<ItemSet> = family.into_iter().collect();
    Matroid::from_independents(g, &family).expect("union of matroids is a matroid")
}

/// All labeled matroids on `[k]` by depth-first search over rank tables, level by
/// cardinality, enforcing unit increase and local submodularity.
fn dfs_tables(k: usize) -> Vec<Vec<u8>> {
    let mut order: Vec<usize> = (1..1usize << k).collect();
    order.sort_by_key(|s| (s.count_ones(), *s));
    let mut table = vec![0u8; 1 << k];
    let mut out = Vec::new();
    fn go(k: usize, order: &[usize], at: usize, table: &mut Vec<u8>, out: &mut Vec<Vec<u8>>) {
        let Some(&s) = order.get(at) else {
            out.push(table.clone());
            return;
        };
        let mut lo = 0u8;
        let mut hi = u8::MAX;
        for i in 0..k {
            if s >> i & 1 == 1 {
                let t = table[s ^ 1 << i];
                lo = lo.max(t);
                hi = hi.min(t + 1);
            }
        }
        'value: for r in lo..=hi {
            for i in 0..k {
                if s >> i & 1 == 0 {
                    continue;
                }
                for j in i + 1..k {
                    if s >> j & 1 == 1 {
                        let (a, b) = (s ^ 1 << i, s ^ 1 << j);
                        if table[a] + table[b] < r + table[a & b] {
                            continue 'value;
                        }
                    }
                }
            }
            table[s] = r;
            go(k, order, at + 1, table, out);
        }
    }
    go(k, &order, 0, &mut table, &mut out);
    out
}

/// All labeled matroids on `[k]` from basis families satisfying basis exchange.
fn bases_tables(k: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    for r in 0..=k {
        let subsets: Vec<usize> = (0..1usize << k).filter(|s| s.count_ones() as usize == r).collect();
        let m = subsets.len();
        for choice in 1u64..1u64 << m {
            let family: Vec<usize> = (0..m).filter(|i| choice >> i & 1 == 1).map(|i| subsets[i]).collect();
            let member = |s: usize| family.contains(&s);
            // For bases A, B and a ∈ A∖B there is b ∈ B∖A with A − a + b a basis.
            let exchange = family.iter().all(|&a| {
                family.iter().all(|&b| {
                    (0..k).filter(|x| a >> x & 1 == 1 && b >> x & 1 == 0).all(|x| {
                        (0..k).any(|y| b >> y & 1 == 1 && a >> y & 1 == 0 && member(a ^ 1 << x | 1 << y))
                    })
                })
            });
            if exchange {
                out.push(
                    (0..1usize << k)
                        .map(|s| family.iter().map(|b| (b & s).count_ones()).max().unwrap_or(0) as u8)
                        .collect(),
                );
            }
        }
    }
    out
}

fn cached_tables(k: usize) -> &'static [Vec<u8>] {
    static CACHE: [OnceLock<Vec<Vec<u8>>>; ENUMERATION_LIMIT + 1] =
        [const { OnceLock::new() }; ENUMERATION_LIMIT + 1];
    CACHE[k].get_or_init(|| dfs_tables(k))
}

/// Every labeled matroid on `ground`, each exactly once.
pub fn enumerate_matroids(ground: ItemSet) -> Result<Vec<Matroid>> {
    check_size(ground.len(), ENUMERATION_LIMIT)?;
    Ok(cached_tables(ground.len()).iter().map(|t| Matroid { ground, rank: t.clone() }).collect())
}

/// The same family generated from basis systems (independent second strategy).
pub fn enumerate_matroids_by_bases(ground: ItemSet) -> Result<Vec<Matroid>> {
    check_size(ground.len(), ENUMERATION_LIMIT)?;
    Ok(bases_tables(ground.len()).into_iter().map(|t| Matroid { ground, rank: t }).collect())
}

/// Every labeled matroid whose ground is a subset of `ground`.
pub fn enumerate_matroids_on_subsets(ground: ItemSet) -> Result<Vec<Matroid>> {
    check_size(ground.len(), ENUMERATION_LIMIT)?;
    let mut out = Vec::new();
    for e in ground.subsets() {
        out.extend(enumerate_matroids(e)?);
    }
    Ok(out)
}

/// Exhaustive search for `M = M1 ∨ M2` with `M1, M2 ≠ M`.
///
/// A loop `e` gives the witness `(M∖e, rank-0 on {e})`. For loopless `M`, factors
/// padded with loops to the full ground must be pointwise below `M`, so the search
/// runs over pairs of such tables on the full ground and reports each factor on its
/// set of non-loops.
pub fn is_irreducible_matroid(m: &Matroid) -> Result<IrreducibilityCertificate> {
    let k = m.ground.len();
    check_size(k, IRREDUCIBILITY_LIMIT)?;
    let passes_connectivity_filter = k == 0 || m.passes_connectivity_filter();
    let certificate = |witness: Option<(Matroid, Matroid)>| IrreducibilityCertificate {
        irreducible: witness.is_none(),
        witness,
        passes_connectivity_filter,
    };
    if let Some(e) = m.loops().items().next() {
        let a = m.deletion(e)?;
        let b = Matroid::free_loops(ItemSet::singleton(e));
        debug_assert_eq!(union(&a, &b), *m);
        return Ok(certificate(Some((a, b))));
    }
    let target = &m.rank;
    let full = (1usize << k) - 1;
    let below: Vec<&Vec<u8>> = cached_tables(k)
        .iter()
        .filter(|t| *t != target && t.iter().zip(target).all(|(a, b)| a <= b))
        .collect();
    let mut order: Vec<usize> = (1..=full).collect();
    order.sort_by_key(|s| (s.count_ones(), *s));
    for (i, a) in below.iter().enumerate() {
        for b in &below[i..] {
            if a[full] + b[full] < target[full] {
                continue;
            }
            if order.iter().all(|&s| union_rank_at(a, b, s) == target[s]) {
                let fa = Matroid { ground: m.ground, rank: (*a).clone() };
                let fb = Matroid { ground: m.ground, rank: (*b).clone() };
                let fa = fa.restriction(m.ground - fa.loops())?;
                let fb = fb.restriction(m.ground - fb.loops())?;
                debug_assert_eq!(union(&fa, &fb), *m);
                return Ok(certificate(Some((fa, fb))));
            }
        }
    }
    Ok(certificate(None))
}

/// A weight vector `w ≥ 0` with `ρ^w_M = v`, if one exists.
///
/// Non-loops take `w_i = v({i})`; loops need `v({i}) = 0` and get weight 0. A matroid
/// on a proper subset of `v`'s ground is first padded with loops.
pub fn fit_weights(m: &Matroid, v: &Valuation) -> Option<WeightVector> {
    let padded;
    let m = if m.ground == v.ground() {
        m
    } else {
        padded = m.with_loops(v.ground()).ok()?;
        &padded
    };
    let loops = m.loops();
    let mut w = Vec::with_capacity(m.ground.len());
    for i in m.ground.items() {
        let x = *v.at(ItemSet::singleton(i));
        if loops.contains(i) {
            if !x.is_zero() {
                return None;
            }
            w.push(Rational::zero());
        } else {
            w.push(x);
        }
    }
    let w = WeightVector::new(w).ok()?;
    (weighted_rank(m, &w).ok()? == *v).then_some(w)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;

    fn set(s: &str) -> ItemSet {
        s.parse().unwrap()
    }

    #[test]
    fn from_independents_examples() {
        let m = Matroid::from_independents(ItemSet::full(2), &[set(""), set("1"), set("2")]).unwrap();
        assert_eq!(m, Matroid::uniform(1, ItemSet::full(2)));
        assert_eq!(m.rank_of(set("1,2")).unwrap(), 1);
        let k4 = Matroid::graphic_k4();
        assert_eq!(k4.rank(), 3);
        assert_eq!(k4.bases().len(), 16);
        let e2 = Matroid::e2();
        assert_eq!(e2.rank_of(set("1,2")).unwrap(), 1);
        assert_eq!(e2.rank(), 2);
    }

    #[test]
    fn from_independents_errors() {
        let g = ItemSet::full(2);
        assert!(matches!(
            Matroid::from_independents(g, &[set(""), set("1,2")]),
            Err(Error::NotDownwardClosed { .. })
        ));
        let g3 = ItemSet::full(3);
        let fam = [set(""), set("1"), set("2"), set("3"), set("1,2")];
        assert!(Matroid::from_independents(g3, &[fam[0], fam[1], fam[2], fam[4]]).is_ok());
        // {3} cannot be extended from {1,2}.
        assert!(matches!(Matroid::from_independents(g3, &fam), Err(Error::ExchangeAxiomFails { .. })));
    }

    #[test]
    fn rank_axioms_are_checked() {
        assert!(matches!(
            Matroid::from_rank_table(ItemSet::full(2), vec![0, 1, 1, 0]),
            Err(Error::RankAxiom(_))
        ));
        assert!(matches!(
            Matroid::from_rank_table(ItemSet::full(2), vec![0, 2, 1, 2]),
            Err(Error::RankAxiom(_))
        ));
    }

    #[test]
    fn weighted_rank_examples() {
        let k4 = Matroid::graphic_k4();
        assert_eq!(weighted_rank(&k4, &WeightVector::ones(6)).unwrap(), k4.rank_valuation());
        let u = Matroid::uniform(1, ItemSet::full(3));
        let w = WeightVector::from_ints(&[2, 5, 3]).unwrap();
        let v = weighted_rank(&u, &w).unwrap();
        for (s, x) in v.iter() {
            let expect = s.items().map(|i| w.0[i - 1]).max().unwrap_or_default();
            assert_eq!(*x, expect);
        }
        assert!(matches!(weighted_rank(&u, &WeightVector::ones(2)), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn union_examples() {
        let u14 = Matroid::uniform(1, ItemSet::full(4));
        let u13 = Matroid::uniform(1, ItemSet::full(3));
        assert_eq!(union(&u14, &u13), Matroid::uniform(2, ItemSet::full(4)));
        let u25 = Matroid::uniform(2, ItemSet::full(5));
        assert_eq!(union(&u25, &u14), Matroid::uniform(3, ItemSet::full(5)));
        let k4 = Matroid::graphic_k4();
        assert_eq!(union(&k4, &Matroid::free_loops(ItemSet::EMPTY)), k4);
    }

    #[test]
    fn deletion_and_contraction() {
        let u23 = Matroid::uniform(2, ItemSet::full(3));
        assert_eq!(u23.contraction(set("1")).unwrap(), Matroid::uniform(1, set("2,3")));
        let m = Matroid::uniform(1, set("1,2")).with_loops(ItemSet::full(3)).unwrap();
        let d = m.deletion(3).unwrap();
        for s in d.ground().subsets() {
            assert_eq!(d.r(s), m.r(s));
        }
        assert!(matches!(m.deletion(4), Err(Error::ElementOutOfGround { .. })));
        let k4 = Matroid::graphic_k4();
        for e in 1..=6 {
            assert!(k4.deletion(e).unwrap().is_connected());
        }
    }

    #[test]
    fn connectivity_examples() {
        assert!(Matroid::uniform(1, ItemSet::full(4)).is_connected());
        assert!(Matroid::graphic_k4().is_connected());
        let sum = union(&Matroid::uniform(1, set("1,2")), &Matroid::uniform(1, set("3,4")));
        assert_eq!(sum.separator(), Some(set("1,2")));
    }

    #[test]
    fn small_enumeration_counts() {
        assert_eq!(enumerate_matroids(ItemSet::EMPTY).unwrap().len(), 1);
        assert_eq!(enumerate_matroids(ItemSet::full(1)).unwrap().len(), 2);
        assert_eq!(enumerate_matroids(ItemSet::full(2)).unwrap().len(), 5);
        for k in 0..=4 {
            let a: BTreeSet<Matroid> = enumerate_matroids(ItemSet::full(k)).unwrap().into_iter().collect();
            let b: BTreeSet<Matroid> = enumerate_matroids_by_bases(ItemSet::full(k)).unwrap().into_iter().collect();
            assert_eq!(a, b);
        }
        assert!(matches!(enumerate_matroids(ItemSet::full(7)), Err(Error::GroundTooLarge { .. })));
    }

    #[test]
    fn irreducibility_examples() {
        for n in 1..=5 {
            assert!(is_irreducible_matroid(&Matroid::uniform(1, ItemSet::full(n))).unwrap().irreducible);
        }
        let cert = is_irreducible_matroid(&Matroid::uniform(2, ItemSet::full(4))).unwrap();
        let (a, b) = cert.witness.unwrap();
        assert_eq!(union(&a, &b), Matroid::uniform(2, ItemSet::full(4)));
        let e2 = Matroid::e2();
        let cert = is_irreducible_matroid(&e2).unwrap();
        let (a, b) = cert.witness.unwrap();
        assert_ne!(a, e2);
        assert_ne!(b, e2);
        assert_eq!(union(&a, &b), e2);
        let given = union(&Matroid::uniform(1, ItemSet::full(5)), &Matroid::uniform(1, set("3,4,5")));
        assert_eq!(given, e2);
    }

    #[test]
    fn parallel_extension_examples() {
        let u12 = Matroid::uniform(1, ItemSet::full(2));
        assert_eq!(u12.parallel_extension(1, 3).unwrap(), Matroid::uniform(1, ItemSet::full(3)));
        assert!(matches!(u12.parallel_extension(1, 2), Err(Error::ElementCollision { .. })));
        let ext = Matroid::graphic_k4().parallel_extension(1, 7).unwrap();
        assert_eq!(ext.rank(), 3);
        assert!(ext.is_loopless());
        assert!(ext.passes_connectivity_filter());
    }

    #[test]
    fn fit_weights_examples() {
        let u = Matroid::uniform(1, ItemSet::full(3));
        let w = WeightVector::from_ints(&[2, 5, 3]).unwrap();
        let v = weighted_rank(&u, &w).unwrap();
        assert_eq!(fit_weights(&u, &v), Some(w));
        // Padding a matroid on {1,2} with a loop at 3 cannot produce v({3}) = 3.
        assert_eq!(fit_weights(&Matroid::uniform(1, set("1,2")), &v), None);
        let v0 = Valuation::from_fn(ItemSet::full(3), |s| int(s.len().min(1) as i64)).unwrap();
        assert!(fit_weights(&Matroid::uniform(1, set("1,2")), &v0).is_none());
    }

    #[test]
    fn canonical_forms() {
        let a = Matroid::uniform(1, set("1,2")).with_loops(ItemSet::full(3)).unwrap();
        let b = Matroid::uniform(1, set("2,3")).with_loops(ItemSet::full(3)).unwrap();
        assert!(a.is_isomorphic(&b));
        assert!(!a.is_isomorphic(&Matroid::uniform(1, ItemSet::full(3))));
    }
}
