//! Named valuation families and bipartite-matching decompositions for `n ≤ 3`.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};
use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::gscheck;
use crate::lp::LinearSystem;
use crate::matroid::{self, Matroid, WeightVector};
use crate::ops;
use crate::rational::Rational;
use crate::set::ItemSet;
use crate::setfn::Valuation;

/// Largest ground set accepted by [`oxs_fit`].
pub const OXS_FIT_LIMIT: usize = 3;

/// One right-hand node of a bipartite valuation with its weighted edges to items.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Agent {
    pub name: String,
    #[serde(serialize_with = "serialize_edges")]
    pub edges: BTreeMap<usize, Rational>,
}

fn serialize_edges<S: serde::Serializer>(edges: &BTreeMap<usize, Rational>, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_map(edges.iter().map(|(i, w)| (i.to_string(), crate::rational::format(w))))
}

/// Items on the left, agents on the right; the value of a bundle is the weight of a
/// maximum matching of its items to distinct agents.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BipartiteValuation {
    pub ground: ItemSet,
    pub agents: Vec<Agent>,
}

impl BipartiteValuation {
    pub fn new(ground: ItemSet, agents: Vec<Agent>) -> Result<Self> {
        for a in &agents {
            for (i, w) in &a.edges {
                if !ground.contains(*i) {
                    return Err(Error::ElementOutOfGround { element: *i, ground });
                }
                if w.is_negative() {
                    return Err(Error::ParameterConstraintViolated(format!("edge weight {w} is negative")));
                }
            }
        }
        Ok(BipartiteValuation { ground, agents })
    }

    /// Agents named `A`, `B`, ... from plain edge maps.
    pub fn from_edges(ground: ItemSet, edges: Vec<BTreeMap<usize, Rational>>) -> Result<Self> {
        let agents = edges
            .into_iter()
            .enumerate()
            .map(|(k, edges)| Agent { name: agent_name(k), edges })
            .collect();
        BipartiteValuation::new(ground, agents)
    }
}

fn agent_name(k: usize) -> String {
    if k < 26 {
        char::from(b'A' + k as u8).to_string()
    } else {
        format!("A{k}")
    }
}

/// `v(T) = max_{i∈T} w_i` on `[len w]`.
pub fn unit_demand(w: &WeightVector) -> Valuation {
    let g = ItemSet::full(w.0.len());
    Valuation::from_fn(g, |t| t.items().map(|i| w.0[i - 1]).max().unwrap_or_default()).expect("unit demand is a valuation")
}

/// Maximum-weight matching value of every bundle.
pub fn assignment_valuation(b: &BipartiteValuation) -> Valuation {
    let m = b.agents.len();
    Valuation::from_fn(b.ground, |s| {
        // best[mask]: best matching of the items seen so far using exactly the agents in mask.
        let mut best: Vec<Option<Rational>> = vec![None; 1 << m];
        best[0] = Some(Rational::zero());
        for i in s.items() {
            let prev = best.clone();
            for (mask, val) in prev.iter().enumerate() {
                let Some(val) = val else { continue };
                for (k, agent) in b.agents.iter().enumerate() {
                    if mask >> k & 1 == 1 {
                        continue;
                    }
                    if let Some(w) = agent.edges.get(&i) {
                        let slot = &mut best[mask | 1 << k];
                        let cand = *val + *w;
                        if slot.is_none_or(|x| x < cand) {
                            *slot = Some(cand);
                        }
                    }
                }
            }
        }
        best.into_iter().flatten().max().expect("empty matching")
    })
    .expect("matching values form a valuation")
}

/// Disjoint nonempty parts covering `[n]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Partition {
    n: usize,
    parts: Vec<ItemSet>,
}

impl Partition {
    pub fn new(n: usize, parts: Vec<ItemSet>) -> Result<Self> {
        let full = ItemSet::full(n);
        let mut seen = ItemSet::EMPTY;
        for p in &parts {
            if p.is_empty() {
                return Err(Error::ParameterConstraintViolated("empty part".into()));
            }
            if !p.is_subset_of(full) {
                return Err(Error::SubsetOutOfGround { set: *p, ground: full });
            }
            if !(*p & seen).is_empty() {
                return Err(Error::ParameterConstraintViolated(format!("parts overlap at {}", *p & seen)));
            }
            seen = seen | *p;
        }
        if seen != full {
            return Err(Error::ParameterConstraintViolated(format!("parts miss {}", full - seen)));
        }
        Ok(Partition { n, parts })
    }

    /// Parses `"1,2|3,4"`.
    pub fn parse(n: usize, s: &str) -> Result<Self> {
        let parts = s
            .split('|')
            .map(|p| p.trim().parse::<ItemSet>())
            .collect::<Result<Vec<_>>>()?;
        Partition::new(n, parts)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn parts(&self) -> &[ItemSet] {
        &self.parts
    }

    /// Every part has at least two items.
    pub fn all_parts_at_least_two(&self) -> bool {
        self.parts.iter().all(|p| p.len() >= 2)
    }
}

/// All partitions of `[n]`.
pub fn all_partitions(n: usize) -> Vec<Partition> {
    fn go(i: usize, n: usize, parts: &mut Vec<ItemSet>, out: &mut Vec<Partition>) {
        if i > n {
            out.push(Partition { n, parts: parts.clone() });
            return;
        }
        for k in 0..parts.len() {
            parts[k] = parts[k].with(i);
            go(i + 1, n, parts, out);
            parts[k] = parts[k].without(i);
        }
        parts.push(ItemSet::singleton(i));
        go(i + 1, n, parts, out);
        parts.pop();
    }
    let mut out = Vec::new();
    go(1, n, &mut Vec::new(), &mut out);
    out
}

fn check_ab(a: Rational, b: Rational) -> Result<()> {
    if !(a.is_positive() && a < b && b < a + a) {
        return Err(Error::ParameterConstraintViolated(format!("need 0 < a < b < 2a, got a={a}, b={b}")));
    }
    Ok(())
}

/// `v(I) = a` when `I` is nonempty and inside one part, `b` otherwise.
pub fn partition_valuation(pi: &Partition, a: Rational, b: Rational) -> Result<Valuation> {
    check_ab(a, b)?;
    Valuation::from_fn(ItemSet::full(pi.n), |s| {
        if s.is_empty() {
            Rational::zero()
        } else if pi.parts.iter().any(|p| s.is_subset_of(*p)) {
            a
        } else {
            b
        }
    })
}

/// Bipartite graph on items `[n]` plus one item per part (`n+1..=n+m`).
///
/// Agents are one node per part, then a node `a` and a node `b−a`. Part agent `i`
/// links its own part item and the elements of part `i` with weight `a`; agent `a`
/// links every part item with weight `a`; agent `b−a` links every part item with
/// weight `b−a`. Endowing the part items yields the partition valuation on `[n]`.
pub fn partition_gadget(pi: &Partition, a: Rational, b: Rational) -> Result<BipartiteValuation> {
    check_ab(a, b)?;
    let n = pi.n;
    let m = pi.parts.len();
    let ground = ItemSet::full(n + m);
    let mut agents = Vec::with_capacity(m + 2);
    for (k, part) in pi.parts.iter().enumerate() {
        let mut edges: BTreeMap<usize, Rational> = part.items().map(|i| (i, a)).collect();
        edges.insert(n + k + 1, a);
        agents.push(Agent { name: format!("part{}", k + 1), edges });
    }
    agents.push(Agent { name: "a".into(), edges: (1..=m).map(|k| (n + k, a)).collect() });
    agents.push(Agent { name: "b-a".into(), edges: (1..=m).map(|k| (n + k, b - a)).collect() });
    BipartiteValuation::new(ground, agents)
}

/// The part items `n+1..=n+m` of [`partition_gadget`].
pub fn gadget_part_items(pi: &Partition) -> ItemSet {
    ItemSet::from_items(pi.n + 1..=pi.n + pi.parts.len())
}

/// `v(∅) = 0` and `v(S) = ρ^w(S) + c` otherwise.
pub fn split_origin_valuation(m: &Matroid, w: &WeightVector, c: Rational) -> Result<Valuation> {
    if let Some(e) = m.loops().items().next() {
        return Err(Error::HasLoop(e));
    }
    if m.rank() < 2 {
        return Err(Error::RankTooLow(m.rank()));
    }
    if w.0.iter().any(|x| !x.is_positive()) {
        return Err(Error::ParameterConstraintViolated("weights must be positive".into()));
    }
    if w.0.windows(2).all(|p| p[0] == p[1]) {
        return Err(Error::ConstantWeight);
    }
    if !c.is_positive() {
        return Err(Error::ParameterConstraintViolated(format!("c = {c} must be positive")));
    }
    matroid::weighted_rank(m, w)?.shift_nonempty(c)
}

type Template = fn(&[Rational; 3], &dyn Fn(&[usize]) -> Rational) -> Vec<Vec<(usize, Rational)>>;

/// Edge-weight templates for three items (template items 0, 1, 2 and agents A, B, C).
/// Each solves its free parameters from pair and triple values.
fn templates3() -> Vec<(&'static str, Template)> {
    vec![
        ("additive", |w, _| vec![vec![(0, w[0])], vec![(1, w[1])], vec![(2, w[2])]]),
        ("one-shared", |w, v| {
            let a = w[0] + w[1] - v(&[0, 1]);
            vec![vec![(0, w[0]), (1, w[1])], vec![(1, w[1] - a)], vec![(2, w[2])]]
        }),
        ("two-offsets", |w, v| {
            let b = v(&[0, 1]) - w[0];
            let a = v(&[0, 2]) - w[0];
            vec![vec![(0, w[0]), (1, w[1]), (2, w[2])], vec![(1, b)], vec![(2, a)]]
        }),
        ("common-offset", |w, v| {
            let c = w[0] + w[1] - v(&[0, 1]);
            vec![vec![(0, w[0]), (1, w[1]), (2, w[2])], vec![(1, w[1] - c)], vec![(2, w[2] - c)]]
        }),
        ("shared-second", |w, v| {
            let c = w[0] + w[1] + w[2] - v(&[0, 1, 2]);
            vec![vec![(0, w[0]), (1, w[1]), (2, w[2])], vec![(1, w[1]), (2, w[2])], vec![(2, w[2] - c)]]
        }),
        ("nested-offsets", |w, v| {
            let b = w[0] + w[1] - v(&[0, 1]);
            let c = w[0] + w[1] + w[2] - b - v(&[0, 1, 2]);
            vec![vec![(0, w[0]), (1, w[1]), (2, w[2])], vec![(1, w[1] - b), (2, w[2] - b)], vec![(2, w[2] - c)]]
        }),
        ("crossed-offsets", |w, v| {
            let a = w[0] + w[1] - v(&[0, 1]);
            let b = w[0] + w[1] + w[2] - v(&[0, 1, 2]);
            vec![vec![(0, w[0]), (1, w[1]), (2, w[2])], vec![(1, w[1] - b)], vec![(1, w[1] - a), (2, w[2])]]
        }),
        ("chained-offsets", |w, v| {
            let a = w[0] + w[1] - v(&[0, 1]);
            let b = w[0] + w[2] - v(&[0, 2]);
            let c = w[0] + w[1] + w[2] - a - b - v(&[0, 1, 2]);
            vec![vec![(0, w[0]), (1, w[1]), (2, w[2])], vec![(1, w[1] - a), (2, w[2] - b)], vec![(2, w[2] - b - c)]]
        }),
        ("role-family", |w, v| {
            // A takes every item at its singleton value; B and C absorb the marginals
            // of items 1 and 2 next to item 0.
            let m1 = v(&[0, 1]) - w[0];
            let m2 = v(&[0, 2]) - w[0];
            let t = v(&[0, 1, 2]) - w[0];
            vec![vec![(0, w[0]), (1, w[1]), (2, w[2])], vec![(1, m1), (2, m2)], vec![(2, t - m1)]]
        }),
    ]
}

fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..k).collect();
    fn go(p: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
        if at == p.len() {
            out.push(p.clone());
            return;
        }
        for i in at..p.len() {
            p.swap(at, i);
            go(p, at + 1, out);
            p.swap(at, i);
        }
    }
    go(&mut p, 0, &mut out);
    out
}

fn build(ground: ItemSet, items: &[usize], agents: Vec<Vec<(usize, Rational)>>) -> Option<BipartiteValuation> {
    let edges = agents
        .into_iter()
        .map(|es| es.into_iter().map(|(k, w)| (items[k], w)).collect::<BTreeMap<_, _>>())
        .filter(|es| !es.is_empty())
        .collect();
    BipartiteValuation::from_edges(ground, edges).ok()
}

/// Tries the closed-form templates under every relabeling of the items.
pub fn oxs_fit_by_templates(v: &Valuation) -> Option<(String, BipartiteValuation)> {
    let g = v.ground();
    let items: Vec<usize> = g.items().collect();
    let accept = |b: Option<BipartiteValuation>| b.filter(|b| assignment_valuation(b) == *v);
    match items.len() {
        0 => accept(build(g, &items, vec![])).map(|b| ("empty".into(), b)),
        1 => accept(build(g, &items, vec![vec![(0, *v.at(g))]])).map(|b| ("single".into(), b)),
        2 => {
            let additive = build(g, &items, vec![vec![(0, *v.at(ItemSet::singleton(items[0])))], vec![(1, *v.at(ItemSet::singleton(items[1])))]]);
            if let Some(b) = accept(additive) {
                return Some(("additive".into(), b));
            }
            for order in [[0usize, 1], [1, 0]] {
                let w0 = *v.at(ItemSet::singleton(items[order[0]]));
                let w1 = *v.at(ItemSet::singleton(items[order[1]]));
                let a = *v.at(g) - w0;
                let b = build(g, &items, vec![vec![(order[0], w0), (order[1], w1)], vec![(order[1], a)]]);
                if let Some(b) = accept(b) {
                    return Some(("shared".into(), b));
                }
            }
            None
        }
        3 => {
            for (name, template) in templates3() {
                for perm in permutations(3) {
                    let pitems: Vec<usize> = perm.iter().map(|k| items[*k]).collect();
                    let w = [0, 1, 2].map(|k| *v.at(ItemSet::singleton(pitems[k])));
                    let val = |ks: &[usize]| *v.at(ItemSet::from_items(ks.iter().map(|k| pitems[*k])));
                    if let Some(b) = accept(build(g, &pitems, template(&w, &val))) {
                        return Some((name.to_string(), b));
                    }
                }
            }
            None
        }
        _ => None,
    }
}

/// Exact search over which matching is tight for each bundle, with `|E|` agents.
pub fn oxs_fit_by_search(v: &Valuation) -> Option<BipartiteValuation> {
    let g = v.ground();
    let items: Vec<usize> = g.items().collect();
    let k = items.len();
    let var = |i: usize, a: usize| i * k + a;
    // Injections of the (local) item indices of S into agents.
    fn injections(s: &[usize], k: usize) -> Vec<Vec<(usize, usize)>> {
        let mut out = Vec::new();
        fn go(s: &[usize], k: usize, used: usize, cur: &mut Vec<(usize, usize)>, out: &mut Vec<Vec<(usize, usize)>>) {
            let Some((&i, rest)) = s.split_first() else {
                out.push(cur.clone());
                return;
            };
            for a in 0..k {
                if used >> a & 1 == 0 {
                    cur.push((i, a));
                    go(rest, k, used | 1 << a, cur, out);
                    cur.pop();
                }
            }
        }
        go(s, k, 0, &mut Vec::new(), &mut out);
        out
    }
    let row = |inj: &[(usize, usize)]| {
        let mut r = vec![Rational::zero(); k * k];
        for (i, a) in inj {
            r[var(*i, *a)] += Rational::from_integer(1);
        }
        r
    };
    let mut base = LinearSystem::new(k * k);
    for x in 0..k * k {
        let mut r = vec![Rational::zero(); k * k];
        r[x] = Rational::from_integer(1);
        base.ge(r, Rational::zero());
    }
    let mut bundles: Vec<(Vec<usize>, Rational)> = Vec::new();
    for s in g.subsets().filter(|s| !s.is_empty()) {
        let local: Vec<usize> = (0..k).filter(|i| s.contains(items[*i])).collect();
        for inj in injections(&local, k) {
            base.ge(row(&inj).into_iter().map(|x| -x).collect(), -*v.at(s));
        }
        bundles.push((local, *v.at(s)));
    }
    bundles.sort_by_key(|(s, _)| s.len());
    #[allow(clippy::type_complexity)]
    fn go(
        sys: &LinearSystem,
        bundles: &[(Vec<usize>, Rational)],
        k: usize,
        row: &dyn Fn(&[(usize, usize)]) -> Vec<Rational>,
        injections: &dyn Fn(&[usize], usize) -> Vec<Vec<(usize, usize)>>,
    ) -> Option<Vec<Rational>> {
        let Some(((s, val), rest)) = bundles.split_first() else {
            return sys.solve();
        };
        for inj in injections(s, k) {
            let mut next = sys.clone();
            next.eq(row(&inj), *val);
            if next.is_feasible() {
                if let Some(x) = go(&next, rest, k, row, injections) {
                    return Some(x);
                }
            }
        }
        None
    }
    let x = go(&base, &bundles, k, &row, &injections)?;
    let edges = (0..k)
        .map(|a| (0..k).filter(|i| !x[var(*i, a)].is_zero()).map(|i| (items[i], x[var(i, a)])).collect())
        .filter(|es: &BTreeMap<usize, Rational>| !es.is_empty())
        .collect();
    let b = BipartiteValuation::from_edges(g, edges).ok()?;
    (assignment_valuation(&b) == *v).then_some(b)
}

/// A bipartite-matching representation of a gross-substitutes valuation on at most
/// three items.
pub fn oxs_fit(v: &Valuation) -> Result<BipartiteValuation> {
    if v.dim() > OXS_FIT_LIMIT {
        return Err(Error::GroundTooLarge { size: v.dim(), limit: OXS_FIT_LIMIT });
    }
    if !gscheck::is_gross_substitutes(v).0 {
        return Err(Error::NotGrossSubstitutes);
    }
    if let Some((_, b)) = oxs_fit_by_templates(v) {
        return Ok(b);
    }
    oxs_fit_by_search(v).ok_or(Error::NoDecompositionFound)
}

/// A random gross-substitutes valuation on `[n]` with integer values.
///
/// Draws the endowment of a random bipartite valuation on `n + extra` items by its
/// extra items (plain bipartite valuations when `extra = 0`) and keeps the first
/// draw that passes the exchange test.
pub fn random_gs_valuation(n: usize, rng: &mut impl Rng, max_weight: i64) -> Valuation {
    loop {
        let extra = rng.gen_range(0..=2usize);
        let total = n + extra;
        let agents = rng.gen_range(1..=total.max(1) + 1);
        let edges: Vec<BTreeMap<usize, Rational>> = (0..agents)
            .map(|_| {
                let mut es = BTreeMap::new();
                for i in 1..=total {
                    if rng.gen_bool(0.6) {
                        es.insert(i, Rational::from_integer(rng.gen_range(0..=max_weight) as i128));
                    }
                }
                es
            })
            .collect();
        let b = BipartiteValuation::from_edges(ItemSet::full(total), edges).expect("valid edges");
        let full = assignment_valuation(&b);
        let v = ops::endow(&full, ItemSet::full(total) - ItemSet::full(n)).expect("extra items in ground");
        if gscheck::is_gross_substitutes(&v).0 {
            return v;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::int;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn set(s: &str) -> ItemSet {
        s.parse().unwrap()
    }

    #[test]
    fn unit_demand_examples() {
        let w = WeightVector::from_ints(&[3, 2, 1]).unwrap();
        let v = unit_demand(&w);
        assert_eq!(*v.at(set("2,3")), int(2));
        assert_eq!(v, matroid::weighted_rank(&Matroid::uniform(1, ItemSet::full(3)), &w).unwrap());
        assert_eq!(unit_demand(&WeightVector::from_ints(&[0, 0]).unwrap()), Valuation::zero(ItemSet::full(2)));
    }

    #[test]
    fn partition_valuation_examples() {
        let pi = Partition::parse(4, "1,2|3,4").unwrap();
        let v = partition_valuation(&pi, int(2), int(3)).unwrap();
        assert_eq!(*v.at(set("1,3")), int(3));
        assert_eq!(*v.at(set("3,4")), int(2));
        for i in 1..=4 {
            assert_eq!(*v.at(ItemSet::singleton(i)), int(2));
        }
        assert!(matches!(partition_valuation(&pi, int(1), int(2)), Err(Error::ParameterConstraintViolated(_))));
        assert!(Partition::parse(4, "1,2|2,3,4").is_err());
        assert!(Partition::parse(4, "1,2|3").is_err());
        assert_eq!(all_partitions(4).len(), 15);
        assert_eq!(all_partitions(5).len(), 52);
    }

    #[test]
    fn gadget_endowment_identity() {
        let pi = Partition::parse(4, "1,2|3,4").unwrap();
        let gadget = partition_gadget(&pi, int(2), int(3)).unwrap();
        let vbar = assignment_valuation(&gadget);
        let parts = gadget_part_items(&pi);
        assert_eq!(*vbar.at(parts), int(4));
        assert_eq!(*vbar.at(parts | set("1,3")), int(4 + 3));
        let endowed = ops::endow(&vbar, parts).unwrap();
        assert_eq!(endowed, partition_valuation(&pi, int(2), int(3)).unwrap());
        let one = Partition::parse(4, "1,2,3,4").unwrap();
        let vbar = assignment_valuation(&partition_gadget(&one, int(2), int(3)).unwrap());
        for i in ItemSet::full(4).subsets().filter(|s| !s.is_empty()) {
            assert_eq!(*vbar.at(i.with(5)), int(4));
        }
    }

    #[test]
    fn assignment_matches_merged_unit_demands() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..40 {
            let n = rng.gen_range(1..=4);
            let agents = rng.gen_range(1..=3);
            let edges: Vec<BTreeMap<usize, Rational>> = (0..agents)
                .map(|_| {
                    let mut es = BTreeMap::new();
                    for i in 1..=n {
                        if rng.gen_bool(0.7) {
                            es.insert(i, int(rng.gen_range(0..6)));
                        }
                    }
                    es
                })
                .collect();
            let b = BipartiteValuation::from_edges(ItemSet::full(n), edges.clone()).unwrap();
            let merged = edges.iter().fold(Valuation::zero(ItemSet::full(n)), |acc, es| {
                let w: Vec<i64> = (1..=n).map(|i| es.get(&i).map_or(0, |x| x.to_integer() as i64)).collect();
                ops::merge(&acc, &unit_demand(&WeightVector::from_ints(&w).unwrap()))
            });
            assert_eq!(assignment_valuation(&b), merged);
        }
    }

    #[test]
    fn split_origin_examples() {
        let k4 = Matroid::graphic_k4();
        let w = WeightVector::from_ints(&[1, 2, 3, 4, 5, 6]).unwrap();
        let v = split_origin_valuation(&k4, &w, int(1)).unwrap();
        assert!(gscheck::is_gross_substitutes(&v).0);
        assert_eq!(*v.at(set("1,2")), int(1 + 2 + 1));
        assert!(v.distinct_nonzero_values().len() >= 3);
        assert!(matches!(split_origin_valuation(&k4, &WeightVector::ones(6), int(1)), Err(Error::ConstantWeight)));
        let u1 = Matroid::uniform(1, ItemSet::full(3));
        assert!(matches!(
            split_origin_valuation(&u1, &WeightVector::from_ints(&[1, 2, 3]).unwrap(), int(1)),
            Err(Error::RankTooLow(1))
        ));
        let looped = Matroid::uniform(2, set("1,2")).with_loops(ItemSet::full(3)).unwrap();
        assert!(matches!(
            split_origin_valuation(&looped, &WeightVector::from_ints(&[1, 2, 3]).unwrap(), int(1)),
            Err(Error::HasLoop(3))
        ));
    }

    #[test]
    fn oxs_fit_examples() {
        let add = Valuation::additive(ItemSet::full(3), &[int(5), int(3), int(1)]).unwrap();
        let b = oxs_fit(&add).unwrap();
        assert_eq!(assignment_valuation(&b), add);
        // Shared-agent case on two items: w1 = 1, w2 = 2, v(12) = 5/2.
        let two = Valuation::from_values(ItemSet::full(2), vec![int(0), int(1), int(2), crate::rational::frac(5, 2)]).unwrap();
        assert_eq!(assignment_valuation(&oxs_fit(&two).unwrap()), two);
        let u23 = Matroid::uniform(2, ItemSet::full(3)).rank_valuation();
        assert_eq!(assignment_valuation(&oxs_fit(&u23).unwrap()), u23);
        // The role family needs item 3 in the leading role.
        let v = Valuation::from_ints(ItemSet::full(3), &[0, 3, 2, 5, 1, 4, 2, 5]).unwrap();
        assert!(gscheck::is_gross_substitutes(&v).0);
        assert_eq!(assignment_valuation(&oxs_fit(&v).unwrap()), v);
        let bad = Valuation::from_ints(ItemSet::full(2), &[0, 1, 1, 3]).unwrap();
        assert!(matches!(oxs_fit(&bad), Err(Error::NotGrossSubstitutes)));
    }

    #[test]
    fn search_fallback_agrees() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..15 {
            let v = random_gs_valuation(3, &mut rng, 4);
            let b = oxs_fit_by_search(&v).expect("every GS valuation on three items is OXS");
            assert_eq!(assignment_valuation(&b), v);
        }
    }
}
