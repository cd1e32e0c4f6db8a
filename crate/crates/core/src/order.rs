//! Order-theoretic machinery on powerset algebras: relation images, element
//! maps and their adjoints, `p(X, a)`, upward closure and the equivalent
//! characterizations of atoms.

use serde::Serialize;

use crate::bits::{is_singleton, is_subset, Family, Mask};
use crate::error::{Error, Result};
use crate::model::{BoxAlgebra, Relation, WorldSet};
use crate::morphism::is_cba_hom;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    /// `↑_R X`: successors of members of `X`.
    Up,
    /// `↓_R X`: predecessors of members of `X`.
    Down,
}

pub fn relation_image(r: &Relation, set: Mask, dir: Direction) -> Result<Mask> {
    let n = r.arity();
    if set >> n != 0 {
        return Err(Error::MaskOutOfRange { mask: set, len: n });
    }
    Ok(match dir {
        Direction::Up => r.image_up(set),
        Direction::Down => r.image_down(set),
    })
}

/// A total map between the carriers of two algebras.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ElementMap {
    source: BoxAlgebra,
    target: BoxAlgebra,
    table: Vec<Mask>,
}

impl ElementMap {
    pub fn new(source: BoxAlgebra, target: BoxAlgebra, table: Vec<Mask>) -> Result<Self> {
        if table.len() != source.size() {
            return Err(Error::TableSize {
                expected: source.size(),
                actual: table.len(),
            });
        }
        for &v in &table {
            target.atoms().check_mask(v)?;
        }
        Ok(ElementMap {
            source,
            target,
            table,
        })
    }

    pub fn identity(a: &BoxAlgebra) -> Self {
        ElementMap {
            source: a.clone(),
            target: a.clone(),
            table: a.elements().collect(),
        }
    }

    pub fn source(&self) -> &BoxAlgebra {
        &self.source
    }

    pub fn target(&self) -> &BoxAlgebra {
        &self.target
    }

    pub fn table(&self) -> &[Mask] {
        &self.table
    }

    pub fn apply(&self, x: Mask) -> Mask {
        self.table[x as usize]
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &ElementMap) -> Result<ElementMap> {
        if self.target != next.source {
            return Err(Error::WorldSetMismatch("composed maps do not meet"));
        }
        Ok(ElementMap {
            source: self.source.clone(),
            target: next.target.clone(),
            table: self.table.iter().map(|&x| next.apply(x)).collect(),
        })
    }

    pub fn is_bijective(&self) -> bool {
        if self.source.size() != self.target.size() {
            return false;
        }
        let mut hit = vec![false; self.target.size()];
        for &v in &self.table {
            if std::mem::replace(&mut hit[v as usize], true) {
                return false;
            }
        }
        true
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Side {
    /// `f♯(b) = ⋁ f⁻¹[↓b]`.
    Right,
    /// `f♭(b) = ⋀ f⁻¹[↑b]`.
    Left,
}

/// Both adjoints of a complete Boolean homomorphism, tabulated over the
/// target carrier.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Adjoints {
    pub right: Vec<Mask>,
    pub left: Vec<Mask>,
}

impl Adjoints {
    /// Computed by definition: joins and meets over explicit preimages.
    pub fn of(f: &ElementMap) -> Result<Self> {
        let report = is_cba_hom(f);
        if let Some(witness) = report.witness {
            return Err(Error::InvalidMorphism {
                category: "complete Boolean",
                witness,
            });
        }
        let src = f.source();
        let right = f
            .target()
            .elements()
            .map(|b| {
                src.elements()
                    .filter(|&x| is_subset(f.apply(x), b))
                    .fold(0, |acc, x| acc | x)
            })
            .collect();
        let left = f
            .target()
            .elements()
            .map(|b| {
                src.elements()
                    .filter(|&x| is_subset(b, f.apply(x)))
                    .fold(src.top(), |acc, x| acc & x)
            })
            .collect();
        Ok(Adjoints { right, left })
    }

    pub fn get(&self, b: Mask, side: Side) -> Mask {
        match side {
            Side::Right => self.right[b as usize],
            Side::Left => self.left[b as usize],
        }
    }
}

pub fn adjoint(f: &ElementMap, b: Mask, side: Side) -> Result<Mask> {
    f.target().atoms().check_mask(b)?;
    Ok(Adjoints::of(f)?.get(b, side))
}

/// `p(X, a) = ⋁ (□⁻¹[↓(−a)] ∩ X)`: the join of members of `X` whose box
/// avoids the atom `a`.
pub fn p_element(a: &BoxAlgebra, xs: &[Mask], atom: Mask) -> Result<Mask> {
    if !a.is_atom(atom) {
        return Err(Error::NotAnAtom(atom));
    }
    let avoid = a.complement(atom);
    let mut join = 0;
    for &x in xs {
        a.atoms().check_mask(x)?;
        if is_subset(a.box_of(x), avoid) {
            join |= x;
        }
    }
    Ok(join)
}

/// `{Y ⊆ W | ∃X ∈ F, X ⊆ Y}`.
pub fn up_closure(family: Family, worlds: &WorldSet) -> Family {
    family.up_closure(worlds.len())
}

/// Per-element evaluation of the four equivalent conditions for atoms.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomConditions {
    pub element: Mask,
    pub minimal_nonzero: bool,
    pub complete_join_prime: bool,
    pub join_prime: bool,
    pub decides_every_element: bool,
}

impl AtomConditions {
    pub fn agree(&self) -> bool {
        let v = self.minimal_nonzero;
        self.complete_join_prime == v && self.join_prime == v && self.decides_every_element == v
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct AtomCharacterization {
    pub agree: bool,
    pub atoms: Vec<Mask>,
    pub rows: Vec<AtomConditions>,
}

/// Largest carrier on which complete join-primality is checked by
/// enumerating every subset of the carrier.
const BRUTE_FORCE_CARRIER_ATOMS: usize = 4;

pub fn atom_conditions(a: &BoxAlgebra, e: Mask) -> AtomConditions {
    let elems: Vec<Mask> = a.elements().collect();
    let minimal_nonzero = elems.iter().all(|&x| x == 0 || x == e || !is_subset(x, e));
    let join_prime = elems.iter().all(|&x| {
        elems
            .iter()
            .all(|&y| !is_subset(e, x | y) || is_subset(e, x) || is_subset(e, y))
    });
    let decides_every_element = elems
        .iter()
        .all(|&x| is_subset(e, x) || is_subset(e, a.complement(x)));
    let complete_join_prime = if a.atom_count() <= BRUTE_FORCE_CARRIER_ATOMS {
        // every X ⊆ carrier, as a bitset over element indices
        let subsets = 1u64 << elems.len();
        (0..subsets).all(|sel| {
            let chosen = || {
                elems
                    .iter()
                    .enumerate()
                    .filter(move |(i, _)| sel >> i & 1 == 1)
            };
            let join = chosen().fold(0, |acc, (_, &x)| acc | x);
            !is_subset(e, join) || chosen().any(|(_, &x)| is_subset(e, x))
        })
    } else {
        // X can always be enlarged to every element not above e
        let join = elems
            .iter()
            .filter(|&&x| !is_subset(e, x))
            .fold(0, |acc, &x| acc | x);
        !is_subset(e, join)
    };
    AtomConditions {
        element: e,
        minimal_nonzero,
        complete_join_prime,
        join_prime,
        decides_every_element,
    }
}

pub fn check_atom_characterizations(a: &BoxAlgebra) -> AtomCharacterization {
    let rows: Vec<AtomConditions> = a
        .elements()
        .filter(|&e| e != 0)
        .map(|e| atom_conditions(a, e))
        .collect();
    AtomCharacterization {
        agree: rows.iter().all(AtomConditions::agree),
        atoms: rows
            .iter()
            .filter(|r| r.minimal_nonzero)
            .map(|r| r.element)
            .collect(),
        rows,
    }
}

/// Whether every atom of the target is sent to a singleton by the left
/// adjoint.
pub fn left_adjoint_preserves_atoms(f: &ElementMap) -> Result<bool> {
    let adj = Adjoints::of(f)?;
    Ok(f.target()
        .atom_elements()
        .all(|b| is_singleton(adj.get(b, Side::Left))))
}
