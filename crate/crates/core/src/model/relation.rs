use std::collections::HashSet;
use std::fmt;

use serde::Serialize;

use super::{Kappa, WorldSet};
use crate::bits::{full_mask, has, ones, Mask};
use crate::error::{Error, Result};
use crate::MAX_RELATIONS;

const MAX_RELATION_ARITY: usize = 8;

/// Binary relation on `n ≤ 8` worlds, packed so that the pair `(x, y)` is
/// bit `x * n + y`. The derived order (by packed value) is the canonical
/// order of relations inside a frame.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    n: u8,
    bits: u64,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        assert!(n <= MAX_RELATION_ARITY);
        Relation {
            n: n as u8,
            bits: 0,
        }
    }

    pub fn total(n: usize) -> Self {
        assert!(n <= MAX_RELATION_ARITY);
        Relation {
            n: n as u8,
            bits: full_mask(n * n),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut r = Self::empty(n);
        for x in 0..n {
            r.bits |= 1 << (x * n + x);
        }
        r
    }

    pub fn from_pairs<I>(n: usize, pairs: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n > MAX_RELATION_ARITY {
            return Err(Error::CapExceeded {
                what: "relation arity",
                limit: MAX_RELATION_ARITY,
                actual: n,
            });
        }
        let mut r = Self::empty(n);
        for (x, y) in pairs {
            for i in [x, y] {
                if i >= n {
                    return Err(Error::IndexOutOfRange { index: i, len: n });
                }
            }
            r.bits |= 1 << (x * n + y);
        }
        Ok(r)
    }

    /// Relation whose row `x` (successor set of `x`) is `rows[x]`.
    pub fn from_rows(rows: &[Mask]) -> Result<Self> {
        let n = rows.len();
        let mut pairs = Vec::new();
        for (x, &row) in rows.iter().enumerate() {
            if row & !full_mask(n) != 0 {
                return Err(Error::MaskOutOfRange { mask: row, len: n });
            }
            pairs.extend(ones(row).map(|y| (x, y)));
        }
        Self::from_pairs(n, pairs)
    }

    pub fn arity(&self) -> usize {
        self.n as usize
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        let n = self.arity();
        x < n && y < n && has(self.bits, x * n + y)
    }

    /// Successors of `x`, i.e. `↑_R x`.
    pub fn row(&self, x: usize) -> Mask {
        let n = self.arity();
        (self.bits >> (x * n)) & full_mask(n)
    }

    pub fn rows(&self) -> Vec<Mask> {
        (0..self.arity()).map(|x| self.row(x)).collect()
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        let n = self.arity();
        ones(self.bits).map(move |i| (i / n, i % n))
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.bits == 0
    }

    pub fn intersect(&self, other: &Relation) -> Relation {
        debug_assert_eq!(self.n, other.n);
        Relation {
            n: self.n,
            bits: self.bits & other.bits,
        }
    }

    pub fn is_subset_of(&self, other: &Relation) -> bool {
        self.bits & !other.bits == 0
    }

    /// `↑_R X = {w | ∃x ∈ X, x R w}`.
    pub fn image_up(&self, set: Mask) -> Mask {
        ones(set).fold(0, |acc, x| acc | self.row(x))
    }

    /// `↓_R X = {w | ∃x ∈ X, w R x}`.
    pub fn image_down(&self, set: Mask) -> Mask {
        (0..self.arity())
            .filter(|&w| self.row(w) & set != 0)
            .fold(0, |acc, w| acc | 1 << w)
    }
}

impl fmt::Debug for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.pairs()).finish()
    }
}

impl Serialize for Relation {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.pairs().map(|(x, y)| [x, y]))
    }
}

/// A world set with one accessibility relation.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct KripkeFrame {
    worlds: WorldSet,
    rel: Relation,
}

impl KripkeFrame {
    pub fn new(worlds: WorldSet, rel: Relation) -> Result<Self> {
        if rel.arity() != worlds.len() {
            return Err(Error::ArityMismatch {
                left: worlds.len(),
                right: rel.arity(),
            });
        }
        Ok(KripkeFrame { worlds, rel })
    }

    pub fn worlds(&self) -> &WorldSet {
        &self.worlds
    }

    pub fn relation(&self) -> &Relation {
        &self.rel
    }
}

/// A world set with a nonempty set of relations. Relations are stored
/// deduplicated and sorted, so construction order never matters.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MRFrame {
    worlds: WorldSet,
    rels: Vec<Relation>,
}

impl MRFrame {
    pub fn new<I>(worlds: WorldSet, rels: I) -> Result<Self>
    where
        I: IntoIterator<Item = Relation>,
    {
        let mut rels: Vec<Relation> = rels.into_iter().collect();
        if let Some(r) = rels.iter().find(|r| r.arity() != worlds.len()) {
            return Err(Error::ArityMismatch {
                left: worlds.len(),
                right: r.arity(),
            });
        }
        rels.sort_unstable();
        rels.dedup();
        if rels.is_empty() {
            return Err(Error::EmptyRelationSet);
        }
        if rels.len() > MAX_RELATIONS {
            return Err(Error::CapExceeded {
                what: "relations",
                limit: MAX_RELATIONS,
                actual: rels.len(),
            });
        }
        Ok(MRFrame { worlds, rels })
    }

    pub fn worlds(&self) -> &WorldSet {
        &self.worlds
    }

    pub fn relations(&self) -> &[Relation] {
        &self.rels
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// `⋂S`.
    pub fn intersection(&self) -> Relation {
        self.rels
            .iter()
            .fold(Relation::total(self.len()), |acc, r| acc.intersect(r))
    }

    /// Whether `⋂S ∈ S`, which on a finite frame is complete downward
    /// directedness.
    pub fn is_completely_directed(&self) -> bool {
        self.rels.binary_search(&self.intersection()).is_ok()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DirectednessReport {
    pub holds: bool,
    /// Indices (into the frame's relation list) of a subfamily `S'` whose
    /// intersection has no lower bound in the frame.
    pub witness: Option<Vec<usize>>,
}

/// κ-downward directedness: every `S' ⊆ S` with `|S'|` admitted by κ has some
/// `R ∈ S` with `R ⊆ ⋂S'`.
///
/// Subfamilies are explored by size, keyed by their intersection, so each
/// distinct intersection is tested once; the reported `S'` is the first
/// failure found, and it is among the smallest.
pub fn check_kappa_dd(m: &MRFrame, kappa: Kappa) -> DirectednessReport {
    let rels = m.relations();
    let members: HashSet<Relation> = rels.iter().copied().collect();
    let bounded = |i: &Relation| members.contains(i) || rels.iter().any(|r| r.is_subset_of(i));

    let total = Relation::total(m.len());
    let mut seen = HashSet::from([total]);
    let mut frontier = vec![(total, Vec::<usize>::new())];
    let mut size = 0;
    while !frontier.is_empty() && kappa.admits(size) {
        if let Some((_, s)) = frontier.iter().find(|(i, _)| !bounded(i)) {
            let report = DirectednessReport {
                holds: false,
                witness: Some(s.clone()),
            };
            if kappa == Kappa::All {
                debug_assert!(!m.is_completely_directed());
            }
            return report;
        }
        if !kappa.admits(size + 1) {
            break;
        }
        let mut next = Vec::new();
        for (inter, s) in &frontier {
            for (j, r) in rels.iter().enumerate() {
                if s.contains(&j) {
                    continue;
                }
                let i2 = inter.intersect(r);
                if seen.insert(i2) {
                    let mut s2 = s.clone();
                    s2.push(j);
                    s2.sort_unstable();
                    next.push((i2, s2));
                }
            }
        }
        frontier = next;
        size += 1;
    }
    if kappa == Kappa::All {
        debug_assert!(m.is_completely_directed());
    }
    DirectednessReport {
        holds: true,
        witness: None,
    }
}
