//! Object and arrow parts of the functors between multi-relational frames,
//! neighborhood frames, Kripke frames and box algebras, together with the
//! underlying-neighborhood construction `U`, which is not a functor.
//!
//! Contravariant functors (`G`, `F`, `J`, `K`) send a map `X → Y` to a map
//! between the images in the opposite direction. Every arrow part validates
//! its input morphism first.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::bits::{is_singleton, Family, Mask};
use crate::error::{Error, Result};
use crate::model::{check_nfr, BoxAlgebra, Kappa, KripkeFrame, MRFrame, NFrame, Relation};
use crate::morphism::{is_kripke_hom, is_mkf_hom, is_modal_hom, is_nfr_hom, WorldMap};
use crate::order::{Adjoints, ElementMap, Side};
use crate::{MAX_ATOMS, MAX_RELATIONS, MAX_SELECTORS};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum FunctorTag {
    /// Frames to algebras.
    G,
    /// Normal algebras to frames.
    F,
    /// Frames to neighborhood frames.
    N,
    /// Neighborhood frames to frames.
    H,
    /// Normal algebras to neighborhood frames.
    J,
    /// Neighborhood frames to algebras.
    K,
    /// Kripke frames to frames.
    M,
    /// Completely directed frames to Kripke frames.
    L,
    /// Frames to (not necessarily upward closed) neighborhood frames.
    U,
}

impl FunctorTag {
    pub const ALL: [FunctorTag; 9] = [
        FunctorTag::G,
        FunctorTag::F,
        FunctorTag::N,
        FunctorTag::H,
        FunctorTag::J,
        FunctorTag::K,
        FunctorTag::M,
        FunctorTag::L,
        FunctorTag::U,
    ];

    pub fn is_contravariant(self) -> bool {
        matches!(
            self,
            FunctorTag::G | FunctorTag::F | FunctorTag::J | FunctorTag::K
        )
    }

    pub fn name(self) -> &'static str {
        match self {
            FunctorTag::G => "G",
            FunctorTag::F => "F",
            FunctorTag::N => "N",
            FunctorTag::H => "H",
            FunctorTag::J => "J",
            FunctorTag::K => "K",
            FunctorTag::M => "M",
            FunctorTag::L => "L",
            FunctorTag::U => "U",
        }
    }
}

impl fmt::Display for FunctorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FunctorTag {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        FunctorTag::ALL
            .into_iter()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown functor {s:?}; expected one of G F N H J K M L U"))
    }
}

fn invalid(category: &'static str, report: crate::morphism::MorphismReport) -> Result<()> {
    match report.witness {
        None => Ok(()),
        Some(witness) => Err(Error::InvalidMorphism { category, witness }),
    }
}

fn require_normal(a: &BoxAlgebra) -> Result<()> {
    if a.is_normal() {
        Ok(())
    } else {
        Err(Error::NotNormal)
    }
}

fn check_atom_cap(n: usize) -> Result<()> {
    if n > MAX_ATOMS {
        return Err(Error::CapExceeded {
            what: "atoms",
            limit: MAX_ATOMS,
            actual: n,
        });
    }
    Ok(())
}

/// `□X = ⋂_{R ∈ S} ↓_R X` over the powerset of the worlds.
pub fn functor_g_obj(m: &MRFrame) -> Result<BoxAlgebra> {
    check_atom_cap(m.len())?;
    let full = m.worlds().full();
    let table = (0..=full)
        .map(|x| {
            m.relations()
                .iter()
                .fold(full, |acc, r| acc & r.image_down(x))
        })
        .collect();
    BoxAlgebra::new(m.worlds().clone(), table)
}

/// `X ↦ f⁻¹[X]` from `G(M2)` to `G(M1)`.
pub fn functor_g_map(f: &WorldMap, m1: &MRFrame, m2: &MRFrame) -> Result<ElementMap> {
    invalid("multi-relational", is_mkf_hom(f, m1, m2)?)?;
    preimage_map(f, &functor_g_obj(m2)?, &functor_g_obj(m1)?)
}

/// `X ↦ f⁻¹[X]` from an algebra over `f`'s target worlds to one over its
/// source worlds, with no validation of `f`.
pub fn preimage_map(
    f: &WorldMap,
    over_target: &BoxAlgebra,
    over_source: &BoxAlgebra,
) -> Result<ElementMap> {
    if f.target() != over_target.atoms() || f.source() != over_source.atoms() {
        return Err(Error::WorldSetMismatch(
            "preimage map needs algebras over the map's ends",
        ));
    }
    let table = over_target.elements().map(|x| f.preimage(x)).collect();
    ElementMap::new(over_target.clone(), over_source.clone(), table)
}

/// The relation `R({x})`: row `a` is everything when `a ∈ □x`, and the
/// complement of `x` otherwise.
pub fn relation_for_element(a: &BoxAlgebra, x: Mask) -> Relation {
    let full = a.top();
    let boxed = a.box_of(x);
    let rows: Vec<Mask> = (0..a.atom_count())
        .map(|i| if boxed >> i & 1 == 1 { full } else { full & !x })
        .collect();
    Relation::from_rows(&rows).expect("rows are within the atom base")
}

/// `a R(X) b` iff `a ∈ □x` for every `x ∈ X` containing `b`.
pub fn relation_for(a: &BoxAlgebra, xs: &[Mask]) -> Relation {
    let n = a.atom_count();
    let pairs = (0..n)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            xs.iter()
                .all(|&x| x >> j & 1 == 0 || a.box_of(x) >> i & 1 == 1)
        });
    Relation::from_pairs(n, pairs).expect("pairs are within the atom base")
}

/// `F(A)`: the atoms of `A` with every `R(X)`.
pub fn functor_f_obj(a: &BoxAlgebra) -> Result<MRFrame> {
    require_normal(a)?;
    functor_f_obj_unchecked(a)
}

/// `F(A)` without the normality requirement; used to exhibit what goes
/// wrong on algebras of non-directed frames.
pub fn functor_f_obj_unchecked(a: &BoxAlgebra) -> Result<MRFrame> {
    let n = a.atom_count();
    let generators: Vec<Relation> = a
        .elements()
        .map(|x| relation_for_element(a, x))
        .collect::<HashSet<_>>()
        .into_iter()
        .collect();
    let total = Relation::total(n);
    let mut seen: HashSet<Relation> = HashSet::from([total]);
    let mut queue = vec![total];
    for g in &generators {
        if seen.insert(*g) {
            queue.push(*g);
        }
    }
    while let Some(r) = queue.pop() {
        for g in &generators {
            let i = r.intersect(g);
            if seen.insert(i) {
                if seen.len() > MAX_RELATIONS {
                    return Err(Error::CapExceeded {
                        what: "relations",
                        limit: MAX_RELATIONS,
                        actual: seen.len(),
                    });
                }
                queue.push(i);
            }
        }
    }
    MRFrame::new(a.atoms().clone(), seen)
}

/// Atom map `b ↦ h♭(b)` from the atoms of `h`'s target to those of its
/// source.
fn left_adjoint_atom_map(h: &ElementMap) -> Result<WorldMap> {
    let adj = Adjoints::of(h)?;
    let table = h
        .target()
        .atom_elements()
        .map(|b| {
            let a = adj.get(b, Side::Left);
            if is_singleton(a) {
                Ok(a.trailing_zeros() as usize)
            } else {
                Err(Error::Internal(format!(
                    "left adjoint sends atom {b:#b} to the non-atom {a:#b}"
                )))
            }
        })
        .collect::<Result<Vec<_>>>()?;
    WorldMap::new(
        h.target().atoms().clone(),
        h.source().atoms().clone(),
        table,
    )
}

/// `F(h) = h♭` restricted to atoms: `F(B) → F(A)` for `h: A → B`.
pub fn functor_f_map(h: &ElementMap) -> Result<WorldMap> {
    require_normal(h.source())?;
    require_normal(h.target())?;
    invalid("modal", is_modal_hom(h))?;
    left_adjoint_atom_map(h)
}

/// `N(M)(x) = ↑{↑_R x | R ∈ S}`.
pub fn functor_n_obj(m: &MRFrame) -> Result<NFrame> {
    let n = m.len();
    let u = underlying_u(m)?;
    NFrame::new(
        m.worlds().clone(),
        u.neighborhoods().iter().map(|f| f.up_closure(n)).collect(),
    )
}

/// `N(f) = f`, after checking that `f` is a frame homomorphism.
pub fn functor_n_map(f: &WorldMap, m1: &MRFrame, m2: &MRFrame) -> Result<WorldMap> {
    invalid("multi-relational", is_mkf_hom(f, m1, m2)?)?;
    Ok(f.clone())
}

/// `U(M)(x) = {↑_R x | R ∈ S}`, without upward closure.
pub fn underlying_u(m: &MRFrame) -> Result<NFrame> {
    let nbhd = (0..m.len())
        .map(|x| m.relations().iter().map(|r| r.row(x)).collect::<Family>())
        .collect();
    NFrame::new(m.worlds().clone(), nbhd)
}

/// `H(Z)`: one relation `R_v` per selector `v`, with `v(x) ∈ N(x)`.
pub fn functor_h_obj(z: &NFrame, kappa: Kappa) -> Result<MRFrame> {
    functor_h_obj_with_cap(z, kappa, MAX_SELECTORS)
}

pub fn functor_h_obj_with_cap(z: &NFrame, kappa: Kappa, cap: usize) -> Result<MRFrame> {
    if !check_nfr(z, kappa).holds {
        return Err(Error::NotComplete(kappa.to_string()));
    }
    let choices: Vec<Vec<Mask>> = z
        .neighborhoods()
        .iter()
        .map(|f| f.members().collect())
        .collect();
    let product = choices.iter().map(|c| c.len() as u128).product::<u128>();
    if product > cap as u128 {
        return Err(Error::SelectorCap {
            product,
            limit: cap,
        });
    }
    let mut rels = HashSet::new();
    let mut index = vec![0usize; choices.len()];
    loop {
        let rows: Vec<Mask> = index.iter().zip(&choices).map(|(&i, c)| c[i]).collect();
        rels.insert(Relation::from_rows(&rows)?);
        // odometer over selector choices, last world fastest
        let mut pos = choices.len();
        loop {
            if pos == 0 {
                return MRFrame::new(z.worlds().clone(), rels);
            }
            pos -= 1;
            index[pos] += 1;
            if index[pos] < choices[pos].len() {
                break;
            }
            index[pos] = 0;
        }
    }
}

/// `H(f) = f`, after checking that `f` is a neighborhood homomorphism.
pub fn functor_h_map(f: &WorldMap, z1: &NFrame, z2: &NFrame) -> Result<WorldMap> {
    invalid("neighborhood", is_nfr_hom(f, z1, z2)?)?;
    Ok(f.clone())
}

/// `J(A)(a) = {X | a ∉ □(−X)}`.
pub fn functor_j_obj(a: &BoxAlgebra) -> Result<NFrame> {
    require_normal(a)?;
    let nbhd = (0..a.atom_count())
        .map(|i| {
            a.elements()
                .filter(|&x| a.box_of(a.complement(x)) >> i & 1 == 0)
                .collect::<Family>()
        })
        .collect();
    NFrame::new(a.atoms().clone(), nbhd)
}

/// `J(h) = h♭` on atoms: `J(B) → J(A)` for `h: A → B`.
pub fn functor_j_map(h: &ElementMap) -> Result<WorldMap> {
    functor_f_map(h)
}

/// `K(Z)`: `□X = {c | C∖X ∉ N(c)}`.
pub fn functor_k_obj(z: &NFrame) -> Result<BoxAlgebra> {
    check_atom_cap(z.len())?;
    let full = z.worlds().full();
    let table = (0..=full)
        .map(|x| {
            (0..z.len())
                .filter(|&c| !z.neighborhood(c).contains(full & !x))
                .fold(0, |acc, c| acc | 1 << c)
        })
        .collect();
    BoxAlgebra::new(z.worlds().clone(), table)
}

/// `X ↦ f⁻¹[X]` from `K(Z2)` to `K(Z1)`.
pub fn functor_k_map(f: &WorldMap, z1: &NFrame, z2: &NFrame) -> Result<ElementMap> {
    invalid("neighborhood", is_nfr_hom(f, z1, z2)?)?;
    preimage_map(f, &functor_k_obj(z2)?, &functor_k_obj(z1)?)
}

/// `M(⟨W, R⟩) = ⟨W, {R}⟩`.
pub fn functor_m_obj(k: &KripkeFrame) -> MRFrame {
    MRFrame::new(k.worlds().clone(), [*k.relation()]).expect("one relation of the right arity")
}

pub fn functor_m_map(f: &WorldMap, k1: &KripkeFrame, k2: &KripkeFrame) -> Result<WorldMap> {
    invalid("Kripke", is_kripke_hom(f, k1, k2)?)?;
    Ok(f.clone())
}

/// `L(⟨W, S⟩) = ⟨W, ⋂S⟩`, defined when `⋂S ∈ S`.
pub fn functor_l_obj(m: &MRFrame) -> Result<KripkeFrame> {
    if !m.is_completely_directed() {
        return Err(Error::NotDirected(Kappa::All.to_string()));
    }
    KripkeFrame::new(m.worlds().clone(), m.intersection())
}

pub fn functor_l_map(f: &WorldMap, m1: &MRFrame, m2: &MRFrame) -> Result<WorldMap> {
    functor_l_obj(m1)?;
    functor_l_obj(m2)?;
    invalid("multi-relational", is_mkf_hom(f, m1, m2)?)?;
    Ok(f.clone())
}
