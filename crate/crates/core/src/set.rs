//! Bitmask subsets of the item universe `[n] = {1, ..., n}`.
//!
//! Item `i` is stored in bit `i - 1`, so `{1, 3}` is `0b101`.

use std::fmt;
use std::str::FromStr;

use crate::error::Error;

/// Largest supported item label.
pub const MAX_ITEMS: usize = 16;

/// A subset of `[n]` encoded as a bitmask.
#[derive(Clone, Copy, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemSet(pub u32);

impl ItemSet {
    pub const EMPTY: ItemSet = ItemSet(0);

    /// `[n]`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_ITEMS, "ground set larger than {MAX_ITEMS}");
        ItemSet(((1u64 << n) - 1) as u32)
    }

    pub fn singleton(item: usize) -> Self {
        assert!((1..=MAX_ITEMS).contains(&item), "item {item} out of range");
        ItemSet(1 << (item - 1))
    }

    pub fn from_items<I: IntoIterator<Item = usize>>(items: I) -> Self {
        items
            .into_iter()
            .fold(ItemSet::EMPTY, |acc, i| acc | ItemSet::singleton(i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, item: usize) -> bool {
        (1..=MAX_ITEMS).contains(&item) && self.0 & (1 << (item - 1)) != 0
    }

    pub fn is_subset_of(self, other: ItemSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn with(self, item: usize) -> Self {
        self | ItemSet::singleton(item)
    }

    pub fn without(self, item: usize) -> Self {
        ItemSet(self.0 & !ItemSet::singleton(item).0)
    }

    /// Largest item, or 0 for the empty set.
    pub fn max_item(self) -> usize {
        32 - self.0.leading_zeros() as usize
    }

    /// Items in increasing order.
    pub fn items(self) -> impl Iterator<Item = usize> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let tz = bits.trailing_zeros();
            bits &= bits - 1;
            Some(tz as usize + 1)
        })
    }

    /// All subsets of `self` in increasing bitmask order (`∅` first, `self` last).
    pub fn subsets(self) -> impl Iterator<Item = ItemSet> {
        let ground = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == ground {
                None
            } else {
                Some(cur.wrapping_sub(ground) & ground)
            };
            Some(ItemSet(cur))
        })
    }

    /// Position of `self` in the increasing enumeration of subsets of `ground`.
    ///
    /// Requires `self ⊆ ground`.
    #[inline]
    pub fn index_in(self, ground: ItemSet) -> usize {
        debug_assert!(self.is_subset_of(ground));
        if ground.0 & ground.0.wrapping_add(1) == 0 {
            return self.0 as usize;
        }
        let mut idx = 0usize;
        let mut bit = 0;
        let mut g = ground.0;
        while g != 0 {
            let low = g & g.wrapping_neg();
            if self.0 & low != 0 {
                idx |= 1 << bit;
            }
            bit += 1;
            g &= g - 1;
        }
        idx
    }

    /// Inverse of [`ItemSet::index_in`].
    #[inline]
    pub fn from_index(idx: usize, ground: ItemSet) -> ItemSet {
        if ground.0 & ground.0.wrapping_add(1) == 0 {
            return ItemSet(idx as u32);
        }
        let mut out = 0u32;
        let mut bit = 0;
        let mut g = ground.0;
        while g != 0 {
            let low = g & g.wrapping_neg();
            if idx & (1 << bit) != 0 {
                out |= low;
            }
            bit += 1;
            g &= g - 1;
        }
        ItemSet(out)
    }
}

impl std::ops::BitOr for ItemSet {
    type Output = ItemSet;
    fn bitor(self, rhs: ItemSet) -> ItemSet {
        ItemSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for ItemSet {
    type Output = ItemSet;
    fn bitand(self, rhs: ItemSet) -> ItemSet {
        ItemSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for ItemSet {
    type Output = ItemSet;
    fn sub(self, rhs: ItemSet) -> ItemSet {
        ItemSet(self.0 & !rhs.0)
    }
}

impl fmt::Display for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for i in self.items() {
            if !first {
                f.write_str(",")?;
            }
            write!(f, "{i}")?;
            first = false;
        }
        Ok(())
    }
}

impl fmt::Debug for ItemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{self}}}")
    }
}

/// Parses `"1,3"`; the empty string (or `"∅"`) is the empty set.
/// Serialized as the sorted list of items.
impl serde::Serialize for ItemSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.items())
    }
}

impl<'de> serde::Deserialize<'de> for ItemSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let items = Vec::<usize>::deserialize(d)?;
        if let Some(i) = items.iter().find(|i| **i == 0 || **i > MAX_ITEMS) {
            return Err(serde::de::Error::custom(format!("item {i} out of range")));
        }
        Ok(ItemSet::from_items(items))
    }
}

impl FromStr for ItemSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        let s = s.trim().trim_start_matches('{').trim_end_matches('}');
        if s.is_empty() || s == "∅" {
            return Ok(ItemSet::EMPTY);
        }
        let mut out = ItemSet::EMPTY;
        for tok in s.split(',') {
            let item: usize = tok
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("bad item {tok:?} in set {s:?}")))?;
            if !(1..=MAX_ITEMS).contains(&item) {
                return Err(Error::Parse(format!("item {item} outside 1..={MAX_ITEMS}")));
            }
            out = out.with(item);
        }
        Ok(out)
    }
}
