//! Exact feasibility of mixed equality / weak / strict linear systems.
//!
//! Equalities are removed by Gaussian elimination; the remaining inequalities go
//! through Fourier–Motzkin elimination with parallel-row deduplication and Imbert's
//! history bound, and a witness is recovered by back-substitution.

use std::collections::BTreeMap;

use num_traits::{Signed, Zero};

use crate::linalg;
use crate::rational::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Relation {
    Eq,
    Ge,
    Gt,
}

/// `coeffs · x  (relation)  rhs`.
#[derive(Clone, Debug)]
pub struct Constraint {
    pub coeffs: Vec<Rational>,
    pub relation: Relation,
    pub rhs: Rational,
}

#[derive(Clone, Debug, Default)]
pub struct LinearSystem {
    vars: usize,
    rows: Vec<Constraint>,
}

impl LinearSystem {
    pub fn new(vars: usize) -> Self {
        LinearSystem { vars, rows: Vec::new() }
    }

    pub fn vars(&self) -> usize {
        self.vars
    }

    pub fn rows(&self) -> &[Constraint] {
        &self.rows
    }

    pub fn add(&mut self, coeffs: Vec<Rational>, relation: Relation, rhs: Rational) {
        assert_eq!(coeffs.len(), self.vars, "constraint width");
        self.rows.push(Constraint { coeffs, relation, rhs });
    }

    pub fn eq(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.add(coeffs, Relation::Eq, rhs)
    }

    pub fn ge(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.add(coeffs, Relation::Ge, rhs)
    }

    pub fn gt(&mut self, coeffs: Vec<Rational>, rhs: Rational) {
        self.add(coeffs, Relation::Gt, rhs)
    }

    /// Checks a candidate point exactly.
    pub fn satisfied_by(&self, x: &[Rational]) -> bool {
        self.rows.iter().all(|c| {
            let lhs = linalg::dot(&c.coeffs, x);
            match c.relation {
                Relation::Eq => lhs == c.rhs,
                Relation::Ge => lhs >= c.rhs,
                Relation::Gt => lhs > c.rhs,
            }
        })
    }

    /// A point satisfying every constraint, or `None` if the system is infeasible.
    pub fn solve(&self) -> Option<Vec<Rational>> {
        let n = self.vars;
        // Equalities -> RREF over [coeffs | rhs].
        let mut eqs: Vec<Vec<Rational>> = self
            .rows
            .iter()
            .filter(|c| c.relation == Relation::Eq)
            .map(|c| {
                let mut r = c.coeffs.clone();
                r.push(c.rhs);
                r
            })
            .collect();
        let pivots = linalg::rref(&mut eqs, n + 1);
        if pivots.last() == Some(&n) {
            return None;
        }
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();

        // Substitute x_p = rhs_r - Σ_f m[r][f] x_f into the inequalities.
        let ineqs: Vec<Ineq> = self
            .rows
            .iter()
            .filter(|c| c.relation != Relation::Eq)
            .enumerate()
            .map(|(k, c)| {
                let mut coeffs: Vec<Rational> = free.iter().map(|&f| c.coeffs[f]).collect();
                let mut rhs = c.rhs;
                for (r, &p) in pivots.iter().enumerate() {
                    let a = c.coeffs[p];
                    if a.is_zero() {
                        continue;
                    }
                    rhs -= a * eqs[r][n];
                    for (slot, &f) in free.iter().enumerate() {
                        coeffs[slot] -= a * eqs[r][f];
                    }
                }
                Ineq { coeffs, rhs, strict: c.relation == Relation::Gt, history: history_bit(k) }
            })
            .collect();

        let z = fourier_motzkin(free.len(), ineqs)?;
        let mut x = vec![Rational::zero(); n];
        for (slot, &f) in free.iter().enumerate() {
            x[f] = z[slot];
        }
        for (r, &p) in pivots.iter().enumerate() {
            let mut val = eqs[r][n];
            for &f in &free {
                val -= eqs[r][f] * x[f];
            }
            x[p] = val;
        }
        debug_assert!(self.satisfied_by(&x));
        Some(x)
    }

    pub fn is_feasible(&self) -> bool {
        self.solve().is_some()
    }
}

#[derive(Clone, Debug)]
struct Ineq {
    coeffs: Vec<Rational>,
    rhs: Rational,
    strict: bool,
    // Original rows this row was derived from; 0 once tracking is off.
    history: u128,
}

fn history_bit(k: usize) -> u128 {
    if k < 128 {
        1u128 << k
    } else {
        0
    }
}

impl Ineq {
    fn holds_as_constant(&self) -> bool {
        if self.strict {
            self.rhs < Rational::zero()
        } else {
            self.rhs <= Rational::zero()
        }
    }
}

/// Drops constant rows (failing if one is violated) and keeps the tightest of each
/// family of parallel rows.
fn reduce(rows: Vec<Ineq>) -> Option<Vec<Ineq>> {
    let mut best: BTreeMap<Vec<Rational>, Ineq> = BTreeMap::new();
    for mut row in rows {
        let Some(lead) = row.coeffs.iter().find(|c| !c.is_zero()).map(|c| c.abs()) else {
            if !row.holds_as_constant() {
                return None;
            }
            continue;
        };
        for c in row.coeffs.iter_mut() {
            *c /= lead;
        }
        row.rhs /= lead;
        match best.get_mut(&row.coeffs) {
            Some(cur) => {
                if row.rhs > cur.rhs || (row.rhs == cur.rhs && row.strict && !cur.strict) {
                    *cur = row;
                }
            }
            None => {
                best.insert(row.coeffs.clone(), row);
            }
        }
    }
    Some(best.into_values().collect())
}

fn fourier_motzkin(k: usize, rows: Vec<Ineq>) -> Option<Vec<Rational>> {
    let track = rows.len() <= 128;
    let mut cur = reduce(rows)?;
    let mut remaining: Vec<usize> = (0..k).collect();
    let mut stages: Vec<(usize, Vec<Ineq>)> = Vec::with_capacity(k);

    for step in 0..k {
        // Cheapest variable to eliminate.
        let (pos, &var) = remaining
            .iter()
            .enumerate()
            .min_by_key(|(_, &j)| {
                let p = cur.iter().filter(|r| r.coeffs[j].is_positive()).count();
                let q = cur.iter().filter(|r| r.coeffs[j].is_negative()).count();
                p * q
            })
            .expect("variables remain");
        remaining.swap_remove(pos);

        let (touching, mut next): (Vec<Ineq>, Vec<Ineq>) =
            cur.into_iter().partition(|r| !r.coeffs[var].is_zero());
        let (lower, upper): (Vec<&Ineq>, Vec<&Ineq>) =
            touching.iter().partition(|r| r.coeffs[var].is_positive());
        let limit = step + 2;
        for p in &lower {
            for q in &upper {
                let history = p.history | q.history;
                if track && history.count_ones() as usize > limit {
                    continue;
                }
                let sp = p.coeffs[var].recip();
                let sq = (-q.coeffs[var]).recip();
                let coeffs = p
                    .coeffs
                    .iter()
                    .zip(&q.coeffs)
                    .map(|(a, b)| *a * sp + *b * sq)
                    .collect::<Vec<_>>();
                next.push(Ineq {
                    coeffs,
                    rhs: p.rhs * sp + q.rhs * sq,
                    strict: p.strict || q.strict,
                    history,
                });
            }
        }
        cur = reduce(next)?;
        stages.push((var, touching));
    }
    debug_assert!(cur.is_empty());

    let mut x = vec![Rational::zero(); k];
    for (var, rows) in stages.iter().rev() {
        x[*var] = pick_value(*var, rows, &x)?;
    }
    Some(x)
}

fn pick_value(var: usize, rows: &[Ineq], x: &[Rational]) -> Option<Rational> {
    let mut lo: Option<(Rational, bool)> = None;
    let mut hi: Option<(Rational, bool)> = None;
    for r in rows {
        let rest: Rational = r
            .coeffs
            .iter()
            .enumerate()
            .filter(|(j, _)| *j != var)
            .map(|(j, c)| *c * x[j])
            .sum();
        let bound = (r.rhs - rest) / r.coeffs[var];
        if r.coeffs[var].is_positive() {
            lo = Some(match lo {
                Some((b, s)) if b > bound || (b == bound && s) => (b, s),
                Some((b, s)) if b == bound => (b, s || r.strict),
                _ => (bound, r.strict),
            });
        } else {
            hi = Some(match hi {
                Some((b, s)) if b < bound || (b == bound && s) => (b, s),
                Some((b, s)) if b == bound => (b, s || r.strict),
                _ => (bound, r.strict),
            });
        }
    }
    let one = Rational::from_integer(1);
    match (lo, hi) {
        (None, None) => Some(Rational::zero()),
        (Some((l, s)), None) => Some(if s { l.floor() + one } else { l }),
        (None, Some((h, s))) => Some(if s { h.ceil() - one } else { h }),
        (Some((l, ls)), Some((h, hs))) => {
            if l < h {
                Some(if !ls {
                    l
                } else if !hs {
                    h
                } else {
                    (l + h) / Rational::from_integer(2)
                })
            } else if l == h && !ls && !hs {
                Some(l)
            } else {
                None
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int};

    fn v(xs: &[i64]) -> Vec<Rational> {
        xs.iter().map(|&x| int(x)).collect()
    }

    #[test]
    fn strict_interval() {
        let mut s = LinearSystem::new(1);
        s.gt(v(&[1]), int(0));
        s.gt(v(&[-1]), int(-1));
        let x = s.solve().unwrap();
        assert!(x[0] > int(0) && x[0] < int(1));
    }

    #[test]
    fn strict_empty_interval() {
        let mut s = LinearSystem::new(1);
        s.gt(v(&[1]), int(1));
        s.ge(v(&[-1]), int(-1));
        assert!(s.solve().is_none());
        let mut w = LinearSystem::new(1);
        w.ge(v(&[1]), int(1));
        w.ge(v(&[-1]), int(-1));
        assert_eq!(w.solve().unwrap(), vec![int(1)]);
    }

    #[test]
    fn equalities_with_inequalities() {
        // x + y = 1, x - y > 0, y >= 1/4
        let mut s = LinearSystem::new(2);
        s.eq(v(&[1, 1]), int(1));
        s.gt(v(&[1, -1]), int(0));
        s.ge(v(&[0, 1]), frac(1, 4));
        let x = s.solve().unwrap();
        assert!(s.satisfied_by(&x));
        s.ge(v(&[0, 1]), frac(1, 2));
        assert!(s.solve().is_none());
    }

    #[test]
    fn inconsistent_equalities() {
        let mut s = LinearSystem::new(2);
        s.eq(v(&[1, 1]), int(1));
        s.eq(v(&[2, 2]), int(3));
        assert!(s.solve().is_none());
    }

    #[test]
    fn brute_force_agreement_on_small_boxes() {
        // Random 2-variable systems: compare against a fine rational grid search
        // augmented with the vertices of the arrangement.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..300 {
            let mut s = LinearSystem::new(2);
            let m = rng.gen_range(1..6);
            for _ in 0..m {
                let a = v(&[rng.gen_range(-3..=3), rng.gen_range(-3..=3)]);
                let b = int(rng.gen_range(-4..=4));
                if rng.gen_bool(0.5) {
                    s.gt(a, b);
                } else {
                    s.ge(a, b);
                }
            }
            let found = s.solve();
            if let Some(x) = &found {
                assert!(s.satisfied_by(x));
            }
            // Any feasible region of these small systems contains a point of the grid
            // with spacing 1/60 in [-20, 20]^2 or is unbounded through it.
            let mut grid_hit = false;
            'outer: for i in -200..=200 {
                for j in -200..=200 {
                    let p = [frac(i, 10), frac(j, 10)];
                    if s.satisfied_by(&p) {
                        grid_hit = true;
                        break 'outer;
                    }
                }
            }
            if grid_hit {
                assert!(found.is_some(), "solver missed a feasible system: {s:?}");
            }
        }
    }
}
