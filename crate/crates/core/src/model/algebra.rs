use serde::Serialize;

use super::{Kappa, WorldSet};
use crate::bits::{bit, is_subset, ones, Mask};
use crate::error::{Error, Result};
use crate::MAX_ATOMS;

/// Complete atomic modal algebra presented as the powerset of its atoms with
/// an explicit box table on all `2^n` elements. The box need not be normal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BoxAlgebra {
    atoms: WorldSet,
    table: Vec<Mask>,
}

impl BoxAlgebra {
    pub fn new(atoms: WorldSet, table: Vec<Mask>) -> Result<Self> {
        if atoms.len() > MAX_ATOMS {
            return Err(Error::CapExceeded {
                what: "atoms",
                limit: MAX_ATOMS,
                actual: atoms.len(),
            });
        }
        let size = 1usize << atoms.len();
        if table.len() != size {
            return Err(Error::TableSize {
                expected: size,
                actual: table.len(),
            });
        }
        for &v in &table {
            atoms.check_mask(v)?;
        }
        Ok(BoxAlgebra { atoms, table })
    }

    /// Normal algebra determined by the box value of each atom, extended to
    /// all elements by union.
    pub fn from_atom_rows(atoms: WorldSet, rows: &[Mask]) -> Result<Self> {
        if rows.len() != atoms.len() {
            return Err(Error::TableSize {
                expected: atoms.len(),
                actual: rows.len(),
            });
        }
        let table = (0..1u64 << atoms.len())
            .map(|x| ones(x).fold(0, |acc, a| acc | rows[a]))
            .collect();
        Self::new(atoms, table)
    }

    pub fn identity(atoms: WorldSet) -> Result<Self> {
        let table = (0..1u64 << atoms.len()).collect();
        Self::new(atoms, table)
    }

    pub fn atoms(&self) -> &WorldSet {
        &self.atoms
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn size(&self) -> usize {
        self.table.len()
    }

    pub fn top(&self) -> Mask {
        self.atoms.full()
    }

    pub fn complement(&self, x: Mask) -> Mask {
        self.top() & !x
    }

    pub fn elements(&self) -> impl Iterator<Item = Mask> {
        0..self.table.len() as Mask
    }

    /// Singleton masks, by atom index.
    pub fn atom_elements(&self) -> impl Iterator<Item = Mask> {
        (0..self.atom_count()).map(bit)
    }

    pub fn is_atom(&self, x: Mask) -> bool {
        x.count_ones() == 1 && x & !self.top() == 0
    }

    pub fn box_of(&self, x: Mask) -> Mask {
        self.table[x as usize]
    }

    pub fn table(&self) -> &[Mask] {
        &self.table
    }

    pub fn is_normal(&self) -> bool {
        let class = validate_algebra(self, Kappa::Finite(1));
        class.box_zero_is_zero && class.binary_additive
    }
}

/// Axiom profile of a box operator.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AlgebraClass {
    pub box_zero_is_zero: bool,
    pub monotone: bool,
    pub binary_additive: bool,
    pub kappa: Kappa,
    pub kappa_additive: bool,
    /// First `(x, y)` with `x ⊆ y` and `□x ⊄ □y`.
    pub monotone_witness: Option<(Mask, Mask)>,
    /// First `(x, y)` with `□(x ∪ y) ≠ □x ∪ □y`.
    pub additive_witness: Option<(Mask, Mask)>,
    /// A subset `X` with `|X|` admitted by κ and `⋁□[X] ≠ □⋁X`.
    pub kappa_witness: Option<Vec<Mask>>,
}

impl AlgebraClass {
    pub fn is_normal(&self) -> bool {
        self.box_zero_is_zero && self.binary_additive
    }
}

pub fn validate_algebra(a: &BoxAlgebra, kappa: Kappa) -> AlgebraClass {
    let elems: Vec<Mask> = a.elements().collect();

    let monotone_witness = elems.iter().find_map(|&x| {
        elems
            .iter()
            .find(|&&y| is_subset(x, y) && !is_subset(a.box_of(x), a.box_of(y)))
            .map(|&y| (x, y))
    });
    let additive_witness = elems.iter().find_map(|&x| {
        elems
            .iter()
            .filter(|&&y| y >= x)
            .find(|&&y| a.box_of(x | y) != a.box_of(x) | a.box_of(y))
            .map(|&y| (x, y))
    });
    let kappa_witness = kappa_additivity_failure(a, kappa);

    AlgebraClass {
        box_zero_is_zero: a.box_of(0) == 0,
        monotone: monotone_witness.is_none(),
        binary_additive: additive_witness.is_none(),
        kappa,
        kappa_additive: kappa_witness.is_none(),
        monotone_witness,
        additive_witness,
        kappa_witness,
    }
}

/// Explores the pairs `(⋁X, ⋁□[X])` reachable from subsets of growing size.
/// Two subsets with the same pair behave identically under extension, so
/// the search is over at most `4^n` states instead of `2^(2^n)` subsets.
fn kappa_additivity_failure(a: &BoxAlgebra, kappa: Kappa) -> Option<Vec<Mask>> {
    let size = a.size();
    let key = |join: Mask, boxes: Mask| join as usize * size + boxes as usize;
    let mut seen = vec![false; size * size];
    seen[key(0, 0)] = true;
    let mut frontier: Vec<(Mask, Mask, Vec<Mask>)> = vec![(0, 0, Vec::new())];
    let mut level = 0;
    while !frontier.is_empty() && kappa.admits(level) {
        if let Some((_, _, xs)) = frontier.iter().find(|(j, b, _)| a.box_of(*j) != *b) {
            return Some(xs.clone());
        }
        if !kappa.admits(level + 1) {
            break;
        }
        let mut next = Vec::new();
        for (join, boxes, xs) in &frontier {
            for x in a.elements() {
                let (j2, b2) = (join | x, boxes | a.box_of(x));
                let k = key(j2, b2);
                if !seen[k] {
                    seen[k] = true;
                    let mut xs2 = xs.clone();
                    xs2.push(x);
                    next.push((j2, b2, xs2));
                }
            }
        }
        frontier = next;
        level += 1;
    }
    None
}
