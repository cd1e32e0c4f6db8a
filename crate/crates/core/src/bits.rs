//! Bit-level representation of subsets and families of subsets.
//!
//! A subset of an `n`-element carrier is a [`Mask`] with bit `i` set iff
//! element `i` belongs to it. A family of subsets is a [`Family`], a 64-bit
//! set whose bit `m` is set iff the subset with mask `m` is a member; this
//! bounds carriers that carry families to six elements.

use serde::Serialize;

pub type Mask = u64;

/// Largest carrier whose subsets fit in a [`Family`].
pub const FAMILY_MAX_CARRIER: usize = 6;

#[inline]
pub fn full_mask(n: usize) -> Mask {
    if n >= 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

#[inline]
pub fn bit(i: usize) -> Mask {
    1u64 << i
}

#[inline]
pub fn has(mask: Mask, i: usize) -> bool {
    mask >> i & 1 == 1
}

#[inline]
pub fn is_subset(a: Mask, b: Mask) -> bool {
    a & !b == 0
}

#[inline]
pub fn is_singleton(mask: Mask) -> bool {
    mask.count_ones() == 1
}

/// Indices of set bits, ascending.
pub fn ones(mut mask: Mask) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}

/// All supersets of `mask` inside `full`, ascending.
pub fn supersets(mask: Mask, full: Mask) -> impl Iterator<Item = Mask> {
    (mask..=full).filter(move |y| is_subset(mask, *y) && is_subset(*y, full))
}

/// A set of subsets of a carrier with at most [`FAMILY_MAX_CARRIER`] elements.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Family(u64);

impl Family {
    pub const EMPTY: Family = Family(0);

    pub fn from_bits(bits: u64) -> Self {
        Family(bits)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, set: Mask) -> bool {
        set < 64 && has(self.0, set as usize)
    }

    pub fn insert(&mut self, set: Mask) {
        assert!(set < 64, "subset mask {set:#b} does not fit a family");
        self.0 |= bit(set as usize);
    }

    pub fn with(mut self, set: Mask) -> Self {
        self.insert(set);
        self
    }

    /// Members in ascending mask order.
    pub fn members(self) -> impl Iterator<Item = Mask> {
        ones(self.0).map(|i| i as Mask)
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, other: Family) -> Family {
        Family(self.0 | other.0)
    }

    /// Every subset of an `n`-element carrier.
    pub fn powerset(n: usize) -> Family {
        Family(full_mask(1 << n))
    }

    /// `{Y ⊆ carrier | ∃X ∈ self, X ⊆ Y}`.
    pub fn up_closure(self, n: usize) -> Family {
        let full = full_mask(n);
        let mut out = Family::EMPTY;
        for y in 0..=full {
            if self.members().any(|x| is_subset(x, y)) {
                out.insert(y);
            }
        }
        out
    }
}

impl FromIterator<Mask> for Family {
    fn from_iter<I: IntoIterator<Item = Mask>>(iter: I) -> Self {
        let mut f = Family::EMPTY;
        for m in iter {
            f.insert(m);
        }
        f
    }
}
