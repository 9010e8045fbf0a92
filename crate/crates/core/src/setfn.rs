//! Valuations: monotone, nonnegative set functions with `v(∅) = 0`, stored as dense
//! exact-rational tables indexed by subsets of the ground set.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{self, Rational};
use crate::set::{ItemSet, MAX_ITEMS};

/// Item universe `[n]` with optional item names.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroundSet {
    pub n: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GroundSet {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_ITEMS {
            return Err(Error::GroundTooLarge { size: n, limit: MAX_ITEMS });
        }
        Ok(GroundSet { n, labels: None })
    }

    pub fn items(&self) -> ItemSet {
        ItemSet::full(self.n)
    }
}

/// A validated valuation on the ground set `ground ⊆ [n]`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Valuation {
    ground: ItemSet,
    values: Vec<Rational>,
}

impl Valuation {
    /// Builds a valuation from a full table, checking every invariant.
    pub fn new(ground: ItemSet, table: &BTreeMap<ItemSet, Rational>) -> Result<Self> {
        let mut values = Vec::with_capacity(1 << ground.len());
        for s in ground.subsets() {
            let v = table.get(&s).ok_or(Error::MissingValue(s))?;
            values.push(*v);
        }
        for s in table.keys() {
            if !s.is_subset_of(ground) {
                return Err(Error::SubsetOutOfGround { set: *s, ground });
            }
        }
        Self::from_values(ground, values)
    }

    /// Builds a valuation from values listed in subset-index order of `ground`.
    pub fn from_values(ground: ItemSet, values: Vec<Rational>) -> Result<Self> {
        if ground.len() > MAX_ITEMS {
            return Err(Error::GroundTooLarge { size: ground.len(), limit: MAX_ITEMS });
        }
        if values.len() != 1 << ground.len() {
            return Err(Error::DimensionMismatch { expected: 1 << ground.len(), got: values.len() });
        }
        let v = Valuation { ground, values };
        v.validate()?;
        Ok(v)
    }

    /// Evaluates `f` on every subset of `ground`.
    pub fn from_fn(ground: ItemSet, mut f: impl FnMut(ItemSet) -> Rational) -> Result<Self> {
        let values = ground.subsets().map(&mut f).collect();
        Self::from_values(ground, values)
    }

    /// Builds from integer values listed in subset-index order.
    pub fn from_ints(ground: ItemSet, values: &[i64]) -> Result<Self> {
        Self::from_values(ground, values.iter().map(|&x| rational::int(x)).collect())
    }

    /// The valuation on the empty ground set.
    pub fn empty() -> Self {
        Valuation { ground: ItemSet::EMPTY, values: vec![Rational::zero()] }
    }

    /// The zero valuation on `ground`.
    pub fn zero(ground: ItemSet) -> Self {
        Valuation { ground, values: vec![Rational::zero(); 1 << ground.len()] }
    }

    /// Additive valuation `v(S) = Σ_{i∈S} w_i`, weights listed in item order.
    pub fn additive(ground: ItemSet, weights: &[Rational]) -> Result<Self> {
        if weights.len() != ground.len() {
            return Err(Error::DimensionMismatch { expected: ground.len(), got: weights.len() });
        }
        let items: Vec<usize> = ground.items().collect();
        Self::from_fn(ground, |s| {
            items
                .iter()
                .zip(weights)
                .filter(|(i, _)| s.contains(**i))
                .map(|(_, w)| *w)
                .sum()
        })
    }

    /// Checks `v(∅) = 0`, nonnegativity and monotonicity; reports a witness pair on failure.
    pub fn validate(&self) -> Result<()> {
        if !self.values[0].is_zero() {
            return Err(Error::NonZeroEmpty(rational::format(&self.values[0])));
        }
        for s in self.ground.subsets() {
            if *self.at(s) < Rational::zero() {
                return Err(Error::Negative(s));
            }
        }
        // Monotonicity follows from the one-element steps.
        for s in self.ground.subsets() {
            for i in (self.ground - s).items() {
                let t = s.with(i);
                if self.at(s) > self.at(t) {
                    return Err(Error::NonMonotone { smaller: s, larger: t });
                }
            }
        }
        Ok(())
    }

    pub fn ground(&self) -> ItemSet {
        self.ground
    }

    /// Number of items in the ground set.
    pub fn dim(&self) -> usize {
        self.ground.len()
    }

    /// Checked lookup.
    pub fn value(&self, s: ItemSet) -> Result<Rational> {
        if !s.is_subset_of(self.ground) {
            return Err(Error::SubsetOutOfGround { set: s, ground: self.ground });
        }
        Ok(*self.at(s))
    }

    /// Unchecked lookup; `s` must be a subset of the ground set.
    #[inline]
    pub fn at(&self, s: ItemSet) -> &Rational {
        &self.values[s.index_in(self.ground)]
    }

    /// Values in subset-index order.
    pub fn values(&self) -> &[Rational] {
        &self.values
    }

    /// `(subset, value)` pairs in subset-index order.
    pub fn iter(&self) -> impl Iterator<Item = (ItemSet, &Rational)> {
        self.ground.subsets().zip(self.values.iter())
    }

    /// Values of the singletons in item order.
    pub fn singleton_values(&self) -> Vec<Rational> {
        self.ground.items().map(|i| *self.at(ItemSet::singleton(i))).collect()
    }

    /// The valuation on ground `t` with the same values.
    pub fn restrict(&self, t: ItemSet) -> Result<Valuation> {
        if !t.is_subset_of(self.ground) {
            return Err(Error::SubsetOutOfGround { set: t, ground: self.ground });
        }
        Ok(Valuation { ground: t, values: t.subsets().map(|s| *self.at(s)).collect() })
    }

    /// Pointwise `self(S) ≤ other(S)` on the ground of `self`; `other` must contain that ground.
    pub fn le_on_ground(&self, other: &Valuation) -> bool {
        self.ground.is_subset_of(other.ground) && self.iter().all(|(s, x)| x <= other.at(s))
    }

    /// `v + c·(1 − 1_∅)`: adds `c` to every nonempty bundle.
    pub fn shift_nonempty(&self, c: Rational) -> Result<Valuation> {
        let values = self
            .values
            .iter()
            .enumerate()
            .map(|(k, x)| if k == 0 { *x } else { *x + c })
            .collect();
        Valuation::from_values(self.ground, values)
    }

    /// Distinct values on nonempty bundles.
    pub fn distinct_nonzero_values(&self) -> Vec<Rational> {
        let mut vals: Vec<Rational> = self.values.iter().filter(|x| !x.is_zero()).copied().collect();
        vals.sort();
        vals.dedup();
        vals
    }

    /// The same values with item labels moved by `perm` (`perm(i)` is the new label of `i`).
    pub fn relabel(&self, perm: impl Fn(usize) -> usize) -> Result<Valuation> {
        let map = |s: ItemSet| ItemSet::from_items(s.items().map(&perm));
        let ground = map(self.ground);
        if ground.len() != self.ground.len() {
            return Err(Error::Parse("relabeling is not injective".into()));
        }
        let mut values = vec![Rational::zero(); self.values.len()];
        for (s, x) in self.iter() {
            values[map(s).index_in(ground)] = *x;
        }
        Valuation::from_values(ground, values)
    }
}

impl fmt::Debug for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Valuation[{}]{{", self.ground)?;
        for (k, (s, x)) in self.iter().enumerate() {
            if k > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{{{s}}}:{}", rational::format(x))?;
        }
        f.write_str("}")
    }
}
