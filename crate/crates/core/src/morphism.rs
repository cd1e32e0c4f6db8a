//! Validators for every homomorphism notion, each returning a verdict and,
//! on failure, the first failing instance in scan order (worlds by index,
//! relations by canonical order, subsets by mask value).

use std::fmt;

use serde::Serialize;

use crate::bits::{full_mask, ones, Mask};
use crate::error::{Error, Result};
use crate::model::{BoxAlgebra, KripkeFrame, MRFrame, NFrame, Relation, WorldSet};
use crate::order::ElementMap;

/// Total function between two world sets, by index.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WorldMap {
    source: WorldSet,
    target: WorldSet,
    table: Vec<usize>,
}

impl WorldMap {
    pub fn new(source: WorldSet, target: WorldSet, table: Vec<usize>) -> Result<Self> {
        if table.len() != source.len() {
            return Err(Error::TableSize {
                expected: source.len(),
                actual: table.len(),
            });
        }
        for &t in &table {
            target.check_index(t)?;
        }
        Ok(WorldMap {
            source,
            target,
            table,
        })
    }

    pub fn identity(worlds: &WorldSet) -> Self {
        WorldMap {
            source: worlds.clone(),
            target: worlds.clone(),
            table: (0..worlds.len()).collect(),
        }
    }

    pub fn source(&self) -> &WorldSet {
        &self.source
    }

    pub fn target(&self) -> &WorldSet {
        &self.target
    }

    pub fn table(&self) -> &[usize] {
        &self.table
    }

    pub fn apply(&self, x: usize) -> usize {
        self.table[x]
    }

    /// `f[X]`.
    pub fn image(&self, set: Mask) -> Mask {
        ones(set).fold(0, |acc, x| acc | 1 << self.table[x])
    }

    /// `f⁻¹[Y]`.
    pub fn preimage(&self, set: Mask) -> Mask {
        self.table
            .iter()
            .enumerate()
            .filter(|(_, &t)| set >> t & 1 == 1)
            .fold(0, |acc, (x, _)| acc | 1 << x)
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &WorldMap) -> Result<WorldMap> {
        if self.target != next.source {
            return Err(Error::WorldSetMismatch("composed maps do not meet"));
        }
        Ok(WorldMap {
            source: self.source.clone(),
            target: next.target.clone(),
            table: self.table.iter().map(|&x| next.apply(x)).collect(),
        })
    }

    fn injectivity_failure(&self) -> Option<(usize, usize)> {
        for a in 0..self.table.len() {
            for b in a + 1..self.table.len() {
                if self.table[a] == self.table[b] {
                    return Some((a, b));
                }
            }
        }
        None
    }

    fn surjectivity_failure(&self) -> Option<usize> {
        (0..self.target.len()).find(|u| !self.table.contains(u))
    }

    pub fn is_bijective(&self) -> bool {
        self.injectivity_failure().is_none() && self.surjectivity_failure().is_none()
    }

    pub fn inverse(&self) -> Option<WorldMap> {
        if !self.is_bijective() {
            return None;
        }
        let mut table = vec![0; self.table.len()];
        for (x, &t) in self.table.iter().enumerate() {
            table[t] = x;
        }
        Some(WorldMap {
            source: self.target.clone(),
            target: self.source.clone(),
            table,
        })
    }
}

/// A failing instance of a named morphism condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum Witness {
    /// Kripke condition 1: `v R1 w` but not `f(v) R2 f(w)`.
    KripkeForth {
        from: usize,
        to: usize,
    },
    /// Kripke condition 2: `f(w) R2 u` but no `R1`-successor of `w` maps to `u`.
    KripkeLift {
        world: usize,
        target: usize,
    },
    /// Multi-relational condition 1 fails at `(world, S2[relation])`.
    /// `offenders` lists, for each `R1 ∈ S1`, a successor `y` of `world`
    /// with `f(world)` not related to `f(y)`.
    MkfForth {
        world: usize,
        relation: usize,
        offenders: Vec<(usize, usize)>,
    },
    /// Multi-relational condition 2 fails at `(world, S1[relation])`.
    /// `offenders` lists, for each `R2 ∈ S2`, a successor `u` of `f(world)`
    /// outside `f[R1(world)]`.
    MkfLift {
        world: usize,
        relation: usize,
        offenders: Vec<(usize, usize)>,
    },
    /// `f⁻¹[X] ∈ N1(c) ⟺ X ∈ N2(f(c))` fails.
    Nfr {
        world: usize,
        set: Mask,
    },
    CbaZero,
    CbaTop,
    CbaComplement {
        element: Mask,
    },
    CbaMeet {
        left: Mask,
        right: Mask,
    },
    CbaJoin {
        left: Mask,
        right: Mask,
    },
    /// `h(x)` differs from the union of the images of the atoms below `x`.
    CbaAtomJoin {
        element: Mask,
    },
    CbaCompleteJoin {
        elements: Vec<Mask>,
    },
    CbaCompleteMeet {
        elements: Vec<Mask>,
    },
    ModalBox {
        element: Mask,
    },
    NotInjective {
        first: usize,
        second: usize,
    },
    NotSurjective {
        target: usize,
    },
}

impl Witness {
    pub fn condition(&self) -> &'static str {
        match self {
            Witness::KripkeForth { .. } => "kripke condition 1",
            Witness::KripkeLift { .. } => "kripke condition 2",
            Witness::MkfForth { .. } => "mkf condition 1",
            Witness::MkfLift { .. } => "mkf condition 2",
            Witness::Nfr { .. } => "nfr preimage condition",
            Witness::CbaZero => "preserves 0",
            Witness::CbaTop => "preserves 1",
            Witness::CbaComplement { .. } => "preserves complement",
            Witness::CbaMeet { .. } => "preserves binary meet",
            Witness::CbaJoin { .. } => "preserves binary join",
            Witness::CbaAtomJoin { .. } => "image is the join of atom images",
            Witness::CbaCompleteJoin { .. } => "preserves arbitrary joins",
            Witness::CbaCompleteMeet { .. } => "preserves arbitrary meets",
            Witness::ModalBox { .. } => "commutes with box",
            Witness::NotInjective { .. } => "injective",
            Witness::NotSurjective { .. } => "surjective",
        }
    }

    /// Re-checks the named condition at this instance; `true` means the
    /// failure is confirmed.
    pub fn replays(&self, subject: Subject<'_>) -> bool {
        match (self, subject) {
            (Witness::KripkeForth { from, to }, Subject::Kripke(f, k1, k2)) => {
                k1.relation().contains(*from, *to)
                    && !k2.relation().contains(f.apply(*from), f.apply(*to))
            }
            (Witness::KripkeLift { world, target }, Subject::Kripke(f, k1, k2)) => {
                k2.relation().contains(f.apply(*world), *target)
                    && !ones(k1.relation().row(*world)).any(|v| f.apply(v) == *target)
            }
            (
                Witness::MkfForth {
                    world, relation, ..
                },
                Subject::Mkf(f, m1, m2),
            ) => m2
                .relations()
                .get(*relation)
                .is_some_and(|r2| forth_partner(f, m1, *world, r2).is_none()),
            (
                Witness::MkfLift {
                    world, relation, ..
                },
                Subject::Mkf(f, m1, m2),
            ) => m1
                .relations()
                .get(*relation)
                .is_some_and(|r1| lift_partner(f, m2, *world, r1).is_none()),
            (Witness::Nfr { world, set }, Subject::Nfr(f, z1, z2)) => {
                z1.neighborhood(*world).contains(f.preimage(*set))
                    != z2.neighborhood(f.apply(*world)).contains(*set)
            }
            (
                Witness::NotInjective { first, second },
                Subject::Mkf(f, ..) | Subject::Nfr(f, ..),
            ) => first != second && f.apply(*first) == f.apply(*second),
            (Witness::NotSurjective { target }, Subject::Mkf(f, ..) | Subject::Nfr(f, ..)) => {
                !f.table().contains(target)
            }
            (w, Subject::Element(h)) => element_witness_replays(w, h),
            _ => false,
        }
    }

    /// Human-readable account of the failure with world labels.
    pub fn describe(&self, subject: Subject<'_>) -> String {
        match (self, subject) {
            (Witness::KripkeForth { from, to }, Subject::Kripke(f, k1, k2)) => {
                let (l1, l2) = (k1.worlds(), k2.worlds());
                format!(
                    "{} R1 {} but not {} R2 {}",
                    l1.label(*from),
                    l1.label(*to),
                    l2.label(f.apply(*from)),
                    l2.label(f.apply(*to))
                )
            }
            (Witness::KripkeLift { world, target }, Subject::Kripke(f, k1, k2)) => {
                let (l1, l2) = (k1.worlds(), k2.worlds());
                format!(
                    "{} R2 {} but no R1-successor of {} maps to {}",
                    l2.label(f.apply(*world)),
                    l2.label(*target),
                    l1.label(*world),
                    l2.label(*target)
                )
            }
            (
                Witness::MkfForth {
                    world,
                    relation,
                    offenders,
                },
                Subject::Mkf(f, m1, m2),
            ) => {
                let (l1, l2) = (m1.worlds(), m2.worlds());
                let x = l1.label(*world);
                let fx = l2.label(f.apply(*world));
                let parts: Vec<String> = offenders
                    .iter()
                    .map(|&(i, y)| {
                        format!(
                            "S1[{i}]: {x} R {} but not {fx} Q {}",
                            l1.label(y),
                            l2.label(f.apply(y))
                        )
                    })
                    .collect();
                format!(
                    "no R in S1 maps into Q = S2[{relation}] at {x}; {}",
                    parts.join("; ")
                )
            }
            (
                Witness::MkfLift {
                    world,
                    relation,
                    offenders,
                },
                Subject::Mkf(f, m1, m2),
            ) => {
                let (l1, l2) = (m1.worlds(), m2.worlds());
                let x = l1.label(*world);
                let fx = l2.label(f.apply(*world));
                let parts: Vec<String> = offenders
                    .iter()
                    .map(|&(j, u)| {
                        format!(
                            "S2[{j}]: {fx} Q {} but no R-successor of {x} maps to {}",
                            l2.label(u),
                            l2.label(u)
                        )
                    })
                    .collect();
                format!(
                    "no Q in S2 is lifted by R = S1[{relation}] at {x}; {}",
                    parts.join("; ")
                )
            }
            (Witness::Nfr { world, set }, Subject::Nfr(f, z1, z2)) => {
                let pre = f.preimage(*set);
                let (l1, l2) = (z1.worlds(), z2.worlds());
                let in1 = z1.neighborhood(*world).contains(pre);
                format!(
                    "f^-1[{}] = {} {} N1({}) but {} {} N2({})",
                    l2.render_set(*set),
                    l1.render_set(pre),
                    if in1 { "∈" } else { "∉" },
                    l1.label(*world),
                    l2.render_set(*set),
                    if in1 { "∉" } else { "∈" },
                    l2.label(f.apply(*world))
                )
            }
            (w, _) => w.to_string(),
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Witness::KripkeForth { from, to } => {
                write!(f, "{} at ({from}, {to})", self.condition())
            }
            Witness::KripkeLift { world, target } => {
                write!(
                    f,
                    "{} at (world {world}, target {target})",
                    self.condition()
                )
            }
            Witness::MkfForth {
                world, relation, ..
            }
            | Witness::MkfLift {
                world, relation, ..
            } => {
                write!(
                    f,
                    "{} at (world {world}, relation #{relation})",
                    self.condition()
                )
            }
            Witness::Nfr { world, set } => {
                write!(f, "{} at (world {world}, set {set:#b})", self.condition())
            }
            Witness::CbaComplement { element }
            | Witness::CbaAtomJoin { element }
            | Witness::ModalBox { element } => {
                write!(f, "{} at {element:#b}", self.condition())
            }
            Witness::CbaMeet { left, right } | Witness::CbaJoin { left, right } => {
                write!(f, "{} at ({left:#b}, {right:#b})", self.condition())
            }
            Witness::CbaCompleteJoin { elements } | Witness::CbaCompleteMeet { elements } => {
                write!(f, "{} at {elements:?}", self.condition())
            }
            Witness::NotInjective { first, second } => {
                write!(f, "not injective: {first} and {second} collide")
            }
            Witness::NotSurjective { target } => write!(f, "not surjective: {target} missed"),
            Witness::CbaZero | Witness::CbaTop => f.write_str(self.condition()),
        }
    }
}

/// The morphism and objects a witness refers to.
#[derive(Debug, Clone, Copy)]
pub enum Subject<'a> {
    Kripke(&'a WorldMap, &'a KripkeFrame, &'a KripkeFrame),
    Mkf(&'a WorldMap, &'a MRFrame, &'a MRFrame),
    Nfr(&'a WorldMap, &'a NFrame, &'a NFrame),
    Element(&'a ElementMap),
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MorphismReport {
    pub verdict: bool,
    pub witness: Option<Witness>,
}

impl MorphismReport {
    pub fn pass() -> Self {
        MorphismReport {
            verdict: true,
            witness: None,
        }
    }

    pub fn fail(witness: Witness) -> Self {
        MorphismReport {
            verdict: false,
            witness: Some(witness),
        }
    }

    fn from_witness(witness: Option<Witness>) -> Self {
        witness.map_or_else(Self::pass, Self::fail)
    }
}

fn check_ends(f: &WorldMap, source: &WorldSet, target: &WorldSet) -> Result<()> {
    if f.source() != source {
        return Err(Error::WorldSetMismatch(
            "map source differs from the source object",
        ));
    }
    if f.target() != target {
        return Err(Error::WorldSetMismatch(
            "map target differs from the target object",
        ));
    }
    Ok(())
}

pub fn is_kripke_hom(f: &WorldMap, k1: &KripkeFrame, k2: &KripkeFrame) -> Result<MorphismReport> {
    check_ends(f, k1.worlds(), k2.worlds())?;
    let (r1, r2) = (k1.relation(), k2.relation());
    if let Some((v, w)) = r1
        .pairs()
        .find(|&(v, w)| !r2.contains(f.apply(v), f.apply(w)))
    {
        return Ok(MorphismReport::fail(Witness::KripkeForth {
            from: v,
            to: w,
        }));
    }
    for w in 0..k1.worlds().len() {
        let reached = f.image(r1.row(w));
        if let Some(u) = ones(r2.row(f.apply(w))).find(|u| reached >> u & 1 == 0) {
            return Ok(MorphismReport::fail(Witness::KripkeLift {
                world: w,
                target: u,
            }));
        }
    }
    Ok(MorphismReport::pass())
}

/// An `R1 ∈ S1` with `x R1 y ⇒ f(x) R2 f(y)` for all `y`.
fn forth_partner(f: &WorldMap, m1: &MRFrame, x: usize, r2: &Relation) -> Option<usize> {
    let allowed = r2.row(f.apply(x));
    m1.relations()
        .iter()
        .position(|r1| f.image(r1.row(x)) & !allowed == 0)
}

/// An `R2 ∈ S2` whose successors of `f(x)` all lie in `f[R1(x)]`.
fn lift_partner(f: &WorldMap, m2: &MRFrame, x: usize, r1: &Relation) -> Option<usize> {
    let reached = f.image(r1.row(x));
    m2.relations()
        .iter()
        .position(|r2| r2.row(f.apply(x)) & !reached == 0)
}

pub fn is_mkf_hom(f: &WorldMap, m1: &MRFrame, m2: &MRFrame) -> Result<MorphismReport> {
    check_ends(f, m1.worlds(), m2.worlds())?;
    let n1 = m1.len();
    for x in 0..n1 {
        for (j, r2) in m2.relations().iter().enumerate() {
            if forth_partner(f, m1, x, r2).is_none() {
                let allowed = r2.row(f.apply(x));
                let offenders = m1
                    .relations()
                    .iter()
                    .enumerate()
                    .map(|(i, r1)| {
                        let y = ones(r1.row(x))
                            .find(|&y| allowed >> f.apply(y) & 1 == 0)
                            .expect("a failing partner has an offending successor");
                        (i, y)
                    })
                    .collect();
                return Ok(MorphismReport::fail(Witness::MkfForth {
                    world: x,
                    relation: j,
                    offenders,
                }));
            }
        }
    }
    for x in 0..n1 {
        for (i, r1) in m1.relations().iter().enumerate() {
            if lift_partner(f, m2, x, r1).is_none() {
                let reached = f.image(r1.row(x));
                let offenders = m2
                    .relations()
                    .iter()
                    .enumerate()
                    .map(|(j, r2)| {
                        let u = ones(r2.row(f.apply(x)) & !reached)
                            .next()
                            .expect("a failing partner has an offending successor");
                        (j, u)
                    })
                    .collect();
                return Ok(MorphismReport::fail(Witness::MkfLift {
                    world: x,
                    relation: i,
                    offenders,
                }));
            }
        }
    }
    Ok(MorphismReport::pass())
}

pub fn is_nfr_hom(f: &WorldMap, z1: &NFrame, z2: &NFrame) -> Result<MorphismReport> {
    check_ends(f, z1.worlds(), z2.worlds())?;
    let full2 = z2.worlds().full();
    for c in 0..z1.len() {
        let (n1, n2) = (z1.neighborhood(c), z2.neighborhood(f.apply(c)));
        if let Some(set) = (0..=full2).find(|&x| n1.contains(f.preimage(x)) != n2.contains(x)) {
            return Ok(MorphismReport::fail(Witness::Nfr { world: c, set }));
        }
    }
    Ok(MorphismReport::pass())
}

/// Sources with at most this many atoms also get the definitional check of
/// arbitrary joins and meets (256 subsets of an 8-element carrier).
const DEFINITIONAL_CBA_ATOMS: usize = 3;

pub fn is_cba_hom(h: &ElementMap) -> MorphismReport {
    MorphismReport::from_witness(cba_failure(h))
}

fn cba_failure(h: &ElementMap) -> Option<Witness> {
    let (src, dst) = (h.source(), h.target());
    if h.apply(0) != 0 {
        return Some(Witness::CbaZero);
    }
    if h.apply(src.top()) != dst.top() {
        return Some(Witness::CbaTop);
    }
    if let Some(x) = src
        .elements()
        .find(|&x| h.apply(src.complement(x)) != dst.complement(h.apply(x)))
    {
        return Some(Witness::CbaComplement { element: x });
    }
    for x in src.elements() {
        for y in src.elements().filter(|&y| y >= x) {
            if h.apply(x & y) != h.apply(x) & h.apply(y) {
                return Some(Witness::CbaMeet { left: x, right: y });
            }
            if h.apply(x | y) != h.apply(x) | h.apply(y) {
                return Some(Witness::CbaJoin { left: x, right: y });
            }
        }
    }
    if let Some(x) = src
        .elements()
        .find(|&x| h.apply(x) != ones(x).fold(0, |acc, a| acc | h.apply(1 << a)))
    {
        return Some(Witness::CbaAtomJoin { element: x });
    }
    if src.atom_count() <= DEFINITIONAL_CBA_ATOMS {
        return complete_failure(h);
    }
    None
}

fn complete_failure(h: &ElementMap) -> Option<Witness> {
    let (src, dst) = (h.source(), h.target());
    let elems: Vec<Mask> = src.elements().collect();
    for sel in 0..1u64 << elems.len() {
        let chosen: Vec<Mask> = ones(sel).map(|i| elems[i]).collect();
        let join = chosen.iter().fold(0, |acc, &x| acc | x);
        let image_join = chosen.iter().fold(0, |acc, &x| acc | h.apply(x));
        if h.apply(join) != image_join {
            return Some(Witness::CbaCompleteJoin { elements: chosen });
        }
        let meet = chosen.iter().fold(src.top(), |acc, &x| acc & x);
        let image_meet = chosen.iter().fold(dst.top(), |acc, &x| acc & h.apply(x));
        if h.apply(meet) != image_meet {
            return Some(Witness::CbaCompleteMeet { elements: chosen });
        }
    }
    None
}

pub fn is_modal_hom(h: &ElementMap) -> MorphismReport {
    if let Some(w) = cba_failure(h) {
        return MorphismReport::fail(w);
    }
    let (src, dst) = (h.source(), h.target());
    MorphismReport::from_witness(
        src.elements()
            .find(|&x| h.apply(src.box_of(x)) != dst.box_of(h.apply(x)))
            .map(|element| Witness::ModalBox { element }),
    )
}

fn element_witness_replays(w: &Witness, h: &ElementMap) -> bool {
    let (src, dst) = (h.source(), h.target());
    let join_of = |xs: &[Mask]| xs.iter().fold(0, |acc, &x| acc | x);
    match w {
        Witness::CbaZero => h.apply(0) != 0,
        Witness::CbaTop => h.apply(src.top()) != dst.top(),
        Witness::CbaComplement { element } => {
            h.apply(src.complement(*element)) != dst.complement(h.apply(*element))
        }
        Witness::CbaMeet { left, right } => {
            h.apply(left & right) != h.apply(*left) & h.apply(*right)
        }
        Witness::CbaJoin { left, right } => {
            h.apply(left | right) != h.apply(*left) | h.apply(*right)
        }
        Witness::CbaAtomJoin { element } => {
            h.apply(*element) != ones(*element).fold(0, |acc, a| acc | h.apply(1 << a))
        }
        Witness::CbaCompleteJoin { elements } => {
            h.apply(join_of(elements)) != elements.iter().fold(0, |acc, &x| acc | h.apply(x))
        }
        Witness::CbaCompleteMeet { elements } => {
            let meet = elements.iter().fold(src.top(), |acc, &x| acc & x);
            h.apply(meet) != elements.iter().fold(dst.top(), |acc, &x| acc & h.apply(x))
        }
        Witness::ModalBox { element } => {
            h.apply(src.box_of(*element)) != dst.box_of(h.apply(*element))
        }
        _ => false,
    }
}

/// `X ↦ g⁻¹[X]` from `source` to `target`, where `g` sends each atom of
/// `target` to an atom of `source`.
pub fn cba_hom_from_atom_map(
    source: &BoxAlgebra,
    target: &BoxAlgebra,
    g: &[usize],
) -> Result<ElementMap> {
    if g.len() != target.atom_count() {
        return Err(Error::TableSize {
            expected: target.atom_count(),
            actual: g.len(),
        });
    }
    for &a in g {
        source.atoms().check_index(a)?;
    }
    let table = source
        .elements()
        .map(|x| {
            g.iter()
                .enumerate()
                .filter(|(_, &a)| x >> a & 1 == 1)
                .fold(0, |acc, (t, _)| acc | 1 << t)
        })
        .collect();
    ElementMap::new(source.clone(), target.clone(), table)
}

fn bijection_failure(f: &WorldMap) -> Option<Witness> {
    if let Some((first, second)) = f.injectivity_failure() {
        return Some(Witness::NotInjective { first, second });
    }
    f.surjectivity_failure()
        .map(|target| Witness::NotSurjective { target })
}

/// Bijective homomorphism whose inverse is also a homomorphism.
///
/// A bijective homomorphism whose inverse fails is reported as
/// [`Error::Internal`], since bijective homomorphisms are expected to invert.
pub fn is_mkf_iso(f: &WorldMap, m1: &MRFrame, m2: &MRFrame) -> Result<MorphismReport> {
    check_ends(f, m1.worlds(), m2.worlds())?;
    if let Some(w) = bijection_failure(f) {
        return Ok(MorphismReport::fail(w));
    }
    let forward = is_mkf_hom(f, m1, m2)?;
    if !forward.verdict {
        return Ok(forward);
    }
    let inv = f.inverse().expect("bijective");
    let backward = is_mkf_hom(&inv, m2, m1)?;
    if let Some(w) = backward.witness {
        return Err(Error::Internal(format!(
            "inverse of a bijective mkf homomorphism fails: {w}"
        )));
    }
    Ok(MorphismReport::pass())
}

pub fn is_nfr_iso(f: &WorldMap, z1: &NFrame, z2: &NFrame) -> Result<MorphismReport> {
    check_ends(f, z1.worlds(), z2.worlds())?;
    if let Some(w) = bijection_failure(f) {
        return Ok(MorphismReport::fail(w));
    }
    let forward = is_nfr_hom(f, z1, z2)?;
    if !forward.verdict {
        return Ok(forward);
    }
    let inv = f.inverse().expect("bijective");
    if let Some(w) = is_nfr_hom(&inv, z2, z1)?.witness {
        return Err(Error::Internal(format!(
            "inverse of a bijective nfr homomorphism fails: {w}"
        )));
    }
    Ok(MorphismReport::pass())
}

/// Every function from `source` to `target`, in lexicographic table order.
pub fn all_world_maps(source: &WorldSet, target: &WorldSet) -> impl Iterator<Item = WorldMap> {
    let (n, m) = (source.len(), target.len());
    let count = (m as u64).pow(n as u32);
    let (source, target) = (source.clone(), target.clone());
    (0..count).map(move |mut code| {
        let mut table = vec![0; n];
        for slot in table.iter_mut().rev() {
            *slot = (code % m as u64) as usize;
            code /= m as u64;
        }
        WorldMap {
            source: source.clone(),
            target: target.clone(),
            table,
        }
    })
}

/// Every complete Boolean homomorphism `source → target`, one per atom map.
pub fn all_cba_homs<'a>(
    source: &'a BoxAlgebra,
    target: &'a BoxAlgebra,
) -> impl Iterator<Item = ElementMap> + 'a {
    all_world_maps(target.atoms(), source.atoms()).map(move |g| {
        cba_hom_from_atom_map(source, target, g.table()).expect("atom map is in range")
    })
}

/// The subsets of `full` reachable as `f⁻¹[X]`; used by tests.
pub fn preimage_masks(f: &WorldMap) -> Vec<Mask> {
    (0..=full_mask(f.target().len()))
        .map(|x| f.preimage(x))
        .collect()
}
