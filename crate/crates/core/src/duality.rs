//! The natural maps of the dualities and equivalences, built as explicit
//! relabelings and checked for isomorphism and naturality.
//!
//! | map      | from          | to              |
//! |----------|---------------|-----------------|
//! | `τ_A`    | `A`           | `G(F(A))`       |
//! | `θ_M`    | `M`           | `F(G(M))`       |
//! | `γ_M`    | `M`           | `H(N(M))`       |
//! | `δ_Z`    | `Z`           | `N(H(Z))`       |
//! | `δ_A`    | `A`           | `K(J(A))`       |
//! | `γ_Z`    | `Z`           | `J(K(Z))`       |

use itertools::Itertools;
use serde::Serialize;

use crate::bits::{ones, Mask};
use crate::error::{Error, Result};
use crate::functor::{
    functor_f_obj, functor_f_obj_unchecked, functor_g_obj, functor_h_obj, functor_j_obj,
    functor_k_obj, functor_n_obj, preimage_map,
};
use crate::model::{check_kappa_dd, check_nfr, BoxAlgebra, Kappa, MRFrame, NFrame, WorldSet};
use crate::morphism::{
    is_mkf_hom, is_mkf_iso, is_modal_hom, is_nfr_hom, is_nfr_iso, MorphismReport, Witness, WorldMap,
};
use crate::order::{Adjoints, ElementMap, Side};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Direction {
    AlgebraFirst,
    FrameFirst,
    NfrEquivalence,
    CamaNfr,
}

/// One natural map and its verdict.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MapCheck {
    pub map: &'static str,
    pub iso: bool,
    pub witness: Option<Witness>,
    /// Source label or element, rendered, paired with its image.
    pub relabeling: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RoundTripReport {
    pub direction: Direction,
    pub iso: bool,
    pub checks: Vec<MapCheck>,
}

impl RoundTripReport {
    fn new(direction: Direction, checks: Vec<MapCheck>) -> Self {
        RoundTripReport {
            direction,
            iso: checks.iter().all(|c| c.iso),
            checks,
        }
    }

    /// The first failing witness, if any.
    pub fn witness(&self) -> Option<&Witness> {
        self.checks.iter().find_map(|c| c.witness.as_ref())
    }
}

/// World map sending each label of `from` to the same label in `to`.
fn by_label(from: &WorldSet, to: &WorldSet) -> Result<WorldMap> {
    let table = from
        .labels()
        .iter()
        .map(|l| to.index_of(l).ok_or_else(|| Error::UnknownLabel(l.clone())))
        .collect::<Result<Vec<_>>>()?;
    WorldMap::new(from.clone(), to.clone(), table)
}

/// Element map `x ↦ {atoms below x}`, each atom located by label in the
/// target's atom base.
fn atoms_below(from: &BoxAlgebra, to: &BoxAlgebra) -> Result<ElementMap> {
    let relabel = by_label(from.atoms(), to.atoms())?;
    let table = from.elements().map(|x| relabel.image(x)).collect();
    ElementMap::new(from.clone(), to.clone(), table)
}

fn world_relabeling(f: &WorldMap) -> Vec<(String, String)> {
    (0..f.source().len())
        .map(|w| {
            (
                f.source().label(w).to_owned(),
                format!("{{{}}}", f.target().label(f.apply(w))),
            )
        })
        .collect()
}

fn element_relabeling(h: &ElementMap) -> Vec<(String, String)> {
    h.source()
        .elements()
        .map(|x| {
            (
                h.source().atoms().render_set(x),
                h.target().atoms().render_set(h.apply(x)),
            )
        })
        .collect()
}

fn element_iso(h: &ElementMap) -> MorphismReport {
    let report = is_modal_hom(h);
    if !report.verdict {
        return report;
    }
    let mut seen = vec![None; h.target().size()];
    for x in h.source().elements() {
        if let Some(first) = seen[h.apply(x) as usize].replace(x) {
            return MorphismReport::fail(Witness::NotInjective {
                first: first as usize,
                second: x as usize,
            });
        }
    }
    if let Some(t) = seen.iter().position(Option::is_none) {
        return MorphismReport::fail(Witness::NotSurjective { target: t });
    }
    MorphismReport::pass()
}

fn element_check(map: &'static str, h: &ElementMap) -> MapCheck {
    let report = element_iso(h);
    MapCheck {
        map,
        iso: report.verdict,
        witness: report.witness,
        relabeling: element_relabeling(h),
    }
}

fn world_check(map: &'static str, f: &WorldMap, report: MorphismReport) -> MapCheck {
    MapCheck {
        map,
        iso: report.verdict,
        witness: report.witness,
        relabeling: world_relabeling(f),
    }
}

/// `τ_A: A → G(F(A))`, `x ↦ {a ∈ atom(A) | a ≤ x}`.
pub fn tau(a: &BoxAlgebra) -> Result<ElementMap> {
    let gfa = functor_g_obj(&functor_f_obj(a)?)?;
    atoms_below(a, &gfa)
}

pub fn verify_tau(a: &BoxAlgebra) -> Result<RoundTripReport> {
    let t = tau(a)?;
    Ok(RoundTripReport::new(
        Direction::AlgebraFirst,
        vec![element_check("tau", &t)],
    ))
}

/// `θ_M: M → F(G(M))`, `w ↦ {w}`. `G(M)` need not be normal, so `F` is
/// applied without that check.
pub fn theta(m: &MRFrame) -> Result<(WorldMap, MRFrame)> {
    let fgm = functor_f_obj_unchecked(&functor_g_obj(m)?)?;
    Ok((by_label(m.worlds(), fgm.worlds())?, fgm))
}

pub fn verify_theta(m: &MRFrame) -> Result<RoundTripReport> {
    let (t, fgm) = theta(m)?;
    let report = is_mkf_iso(&t, m, &fgm)?;
    Ok(RoundTripReport::new(
        Direction::FrameFirst,
        vec![world_check("theta", &t, report)],
    ))
}

/// `γ_M: M → H(N(M))`, the identity on worlds.
pub fn verify_nh_gamma(m: &MRFrame, kappa: Kappa) -> Result<MapCheck> {
    if !check_kappa_dd(m, kappa).holds {
        return Err(Error::NotDirected(kappa.to_string()));
    }
    let hnm = functor_h_obj(&functor_n_obj(m)?, kappa)?;
    let g = by_label(m.worlds(), hnm.worlds())?;
    let report = is_mkf_iso(&g, m, &hnm)?;
    Ok(world_check("gamma", &g, report))
}

/// `δ_Z: Z → N(H(Z))`, the identity on worlds.
pub fn verify_nh_delta(z: &NFrame, kappa: Kappa) -> Result<MapCheck> {
    let nhz = functor_n_obj(&functor_h_obj(z, kappa)?)?;
    let d = by_label(z.worlds(), nhz.worlds())?;
    let report = is_nfr_iso(&d, z, &nhz)?;
    Ok(world_check("delta", &d, report))
}

pub fn verify_nfr_equivalence(m: &MRFrame, z: &NFrame, kappa: Kappa) -> Result<RoundTripReport> {
    Ok(RoundTripReport::new(
        Direction::NfrEquivalence,
        vec![verify_nh_gamma(m, kappa)?, verify_nh_delta(z, kappa)?],
    ))
}

/// `δ_A: A → K(J(A))`, `x ↦ {a ∈ atom(A) | a ≤ x}`.
pub fn verify_jk_delta(a: &BoxAlgebra) -> Result<MapCheck> {
    let kja = functor_k_obj(&functor_j_obj(a)?)?;
    Ok(element_check("delta", &atoms_below(a, &kja)?))
}

/// `γ_Z: Z → J(K(Z))`, `y ↦ {y}`.
pub fn verify_jk_gamma(z: &NFrame, kappa: Kappa) -> Result<MapCheck> {
    if !check_nfr(z, kappa).holds {
        return Err(Error::NotComplete(kappa.to_string()));
    }
    let jkz = functor_j_obj(&functor_k_obj(z)?)?;
    let g = by_label(z.worlds(), jkz.worlds())?;
    let report = is_nfr_iso(&g, z, &jkz)?;
    Ok(world_check("gamma", &g, report))
}

pub fn verify_cama_nfr(a: &BoxAlgebra, z: &NFrame, kappa: Kappa) -> Result<RoundTripReport> {
    Ok(RoundTripReport::new(
        Direction::CamaNfr,
        vec![verify_jk_delta(a)?, verify_jk_gamma(z, kappa)?],
    ))
}

/// A morphism together with the natural transformation whose square is
/// checked against it.
#[derive(Debug, Clone, Copy)]
pub enum NaturalitySquare<'a> {
    /// `G(F(f)) ∘ τ_A = τ_B ∘ f` for a modal homomorphism `f: A → B`.
    Tau(&'a ElementMap),
    /// `K(J(f)) ∘ δ_A = δ_B ∘ f` for a modal homomorphism `f: A → B`.
    Delta(&'a ElementMap),
    /// `F(G(g)) ∘ θ_{M1} = θ_{M2} ∘ g` for a frame homomorphism `g`.
    Theta(&'a WorldMap, &'a MRFrame, &'a MRFrame),
    /// `H(N(g)) ∘ γ_{M1} = γ_{M2} ∘ g` for a frame homomorphism `g`.
    Gamma(&'a WorldMap, &'a MRFrame, &'a MRFrame, Kappa),
}

/// Where the two paths around a square first disagree.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SquareFailure {
    Element {
        element: Mask,
        left: Mask,
        right: Mask,
    },
    World {
        world: usize,
        left: usize,
        right: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NaturalityReport {
    pub commutes: bool,
    pub witness: Option<SquareFailure>,
}

impl NaturalityReport {
    fn from_failure(witness: Option<SquareFailure>) -> Self {
        NaturalityReport {
            commutes: witness.is_none(),
            witness,
        }
    }
}

/// `h♭` on atoms of `h`'s target, as a world map between atom bases.
fn lower_atom_map(h: &ElementMap) -> Result<WorldMap> {
    let adj = Adjoints::of(h)?;
    let table = h
        .target()
        .atom_elements()
        .map(|b| ones(adj.get(b, Side::Left)).next().unwrap_or(0))
        .collect();
    WorldMap::new(
        h.target().atoms().clone(),
        h.source().atoms().clone(),
        table,
    )
}

fn check_modal(h: &ElementMap) -> Result<()> {
    match is_modal_hom(h).witness {
        None => Ok(()),
        Some(witness) => Err(Error::InvalidMorphism {
            category: "modal",
            witness,
        }),
    }
}

fn check_mkf(g: &WorldMap, m1: &MRFrame, m2: &MRFrame) -> Result<()> {
    match is_mkf_hom(g, m1, m2)?.witness {
        None => Ok(()),
        Some(witness) => Err(Error::InvalidMorphism {
            category: "multi-relational",
            witness,
        }),
    }
}

fn element_square(
    f: &ElementMap,
    eta_a: &ElementMap,
    eta_b: &ElementMap,
    lifted: &ElementMap,
) -> Option<SquareFailure> {
    f.source().elements().find_map(|x| {
        let left = lifted.apply(eta_a.apply(x));
        let right = eta_b.apply(f.apply(x));
        (left != right).then_some(SquareFailure::Element {
            element: x,
            left,
            right,
        })
    })
}

fn world_square(
    g: &WorldMap,
    eta_1: &WorldMap,
    eta_2: &WorldMap,
    lifted: &WorldMap,
) -> Option<SquareFailure> {
    (0..g.source().len()).find_map(|w| {
        let left = lifted.apply(eta_1.apply(w));
        let right = eta_2.apply(g.apply(w));
        (left != right).then_some(SquareFailure::World {
            world: w,
            left,
            right,
        })
    })
}

pub fn check_naturality(square: NaturalitySquare<'_>) -> Result<NaturalityReport> {
    let failure = match square {
        NaturalitySquare::Tau(f) => {
            check_modal(f)?;
            let (fa, fb) = (functor_f_obj(f.source())?, functor_f_obj(f.target())?);
            let (gfa, gfb) = (functor_g_obj(&fa)?, functor_g_obj(&fb)?);
            // F(f): F(B) → F(A); G(F(f)): G(F(A)) → G(F(B))
            let ff = lower_atom_map(f)?;
            let ff = WorldMap::new(
                fb.worlds().clone(),
                fa.worlds().clone(),
                ff.table().to_vec(),
            )?;
            let lifted = preimage_map(&ff, &gfa, &gfb)?;
            element_square(
                f,
                &atoms_below(f.source(), &gfa)?,
                &atoms_below(f.target(), &gfb)?,
                &lifted,
            )
        }
        NaturalitySquare::Delta(f) => {
            check_modal(f)?;
            let (ja, jb) = (functor_j_obj(f.source())?, functor_j_obj(f.target())?);
            let (kja, kjb) = (functor_k_obj(&ja)?, functor_k_obj(&jb)?);
            let jf = lower_atom_map(f)?;
            let jf = WorldMap::new(
                jb.worlds().clone(),
                ja.worlds().clone(),
                jf.table().to_vec(),
            )?;
            let lifted = preimage_map(&jf, &kja, &kjb)?;
            element_square(
                f,
                &atoms_below(f.source(), &kja)?,
                &atoms_below(f.target(), &kjb)?,
                &lifted,
            )
        }
        NaturalitySquare::Theta(g, m1, m2) => {
            check_mkf(g, m1, m2)?;
            let (t1, _) = theta(m1)?;
            let (t2, _) = theta(m2)?;
            // G(g): G(M2) → G(M1); F(G(g)) = G(g)♭: F(G(M1)) → F(G(M2))
            let gg = preimage_map(g, &functor_g_obj(m2)?, &functor_g_obj(m1)?)?;
            let fgg = lower_atom_map(&gg)?;
            let fgg = WorldMap::new(
                t1.target().clone(),
                t2.target().clone(),
                fgg.table().to_vec(),
            )?;
            world_square(g, &t1, &t2, &fgg)
        }
        NaturalitySquare::Gamma(g, m1, m2, kappa) => {
            check_mkf(g, m1, m2)?;
            let (n1, n2) = (functor_n_obj(m1)?, functor_n_obj(m2)?);
            match is_nfr_hom(g, &n1, &n2)?.witness {
                None => {}
                Some(w) => {
                    return Err(Error::Internal(format!(
                        "N sends a frame homomorphism to a non-homomorphism: {w}"
                    )))
                }
            }
            let (h1, h2) = (functor_h_obj(&n1, kappa)?, functor_h_obj(&n2, kappa)?);
            let gamma1 = by_label(m1.worlds(), h1.worlds())?;
            let gamma2 = by_label(m2.worlds(), h2.worlds())?;
            let lifted =
                WorldMap::new(h1.worlds().clone(), h2.worlds().clone(), g.table().to_vec())?;
            world_square(g, &gamma1, &gamma2, &lifted)
        }
    };
    Ok(NaturalityReport::from_failure(failure))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CorollaryReport {
    pub mkf_hom: bool,
    pub modal_hom: bool,
    /// Whether the two verdicts agree.
    pub holds: bool,
}

/// Compares "`f` is a frame homomorphism" with "`X ↦ f⁻¹[X]` is a modal
/// homomorphism `G(M2) → G(M1)`".
pub fn corollary_preimage_check(
    f: &WorldMap,
    m1: &MRFrame,
    m2: &MRFrame,
) -> Result<CorollaryReport> {
    let mkf_hom = is_mkf_hom(f, m1, m2)?.verdict;
    let pre = preimage_map(f, &functor_g_obj(m2)?, &functor_g_obj(m1)?)?;
    let modal_hom = is_modal_hom(&pre).verdict;
    Ok(CorollaryReport {
        mkf_hom,
        modal_hom,
        holds: mkf_hom == modal_hom,
    })
}

/// Largest frame [`find_iso`] searches.
pub const FIND_ISO_MAX_WORLDS: usize = 4;

/// The first bijection, in lexicographic order of tables, that is a frame
/// isomorphism.
pub fn find_iso(m1: &MRFrame, m2: &MRFrame) -> Result<Option<WorldMap>> {
    let n = m1.len();
    if n != m2.len() {
        return Err(Error::WorldSetMismatch("frames have different sizes"));
    }
    if n > FIND_ISO_MAX_WORLDS {
        return Err(Error::CapExceeded {
            what: "isomorphism search worlds",
            limit: FIND_ISO_MAX_WORLDS,
            actual: n,
        });
    }
    for perm in (0..n).permutations(n) {
        let f = WorldMap::new(m1.worlds().clone(), m2.worlds().clone(), perm)?;
        if is_mkf_iso(&f, m1, m2)?.verdict {
            return Ok(Some(f));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::model::Relation;
    use crate::morphism::Subject;

    #[test]
    fn tau_on_identity_box() {
        let a = fixtures::fx5_idbox2();
        let r = verify_tau(&a).unwrap();
        assert!(r.iso);
        let t = tau(&a).unwrap();
        // the box of G(F(A)) at {a}, pulled back along τ, is {a}
        let boxed = t.target().box_of(t.apply(0b01));
        let back = a.elements().find(|&x| t.apply(x) == boxed).unwrap();
        assert_eq!(back, 0b01);
    }

    #[test]
    fn theta_on_fx2_and_fx3() {
        assert!(verify_theta(&fixtures::fx2_pair().source).unwrap().iso);
        assert!(verify_theta(&fixtures::fx3_triple().source).unwrap().iso);
    }

    #[test]
    fn theta_fails_on_fork() {
        let m = fixtures::fx4_fork();
        let r = verify_theta(&m).unwrap();
        assert!(!r.iso);
        let (t, fgm) = theta(&m).unwrap();
        let w = r.witness().unwrap().clone();
        match &w {
            Witness::MkfForth {
                world, relation, ..
            } => {
                assert_eq!(*world, 0);
                assert_eq!(fgm.relations()[*relation], Relation::empty(3));
            }
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(w.replays(Subject::Mkf(&t, &m, &fgm)));
    }

    #[test]
    fn nfr_equivalence_examples() {
        let m = fixtures::fx2_pair().source;
        let z = functor_n_obj(&m).unwrap();
        assert!(verify_nfr_equivalence(&m, &z, Kappa::All).unwrap().iso);
        assert!(
            verify_nh_gamma(&fixtures::fx3_triple().source, Kappa::All)
                .unwrap()
                .iso
        );
        assert!(matches!(
            verify_nh_gamma(&fixtures::fx4_fork(), Kappa::All),
            Err(Error::NotDirected(_))
        ));
    }

    #[test]
    fn cama_nfr_one_atom() {
        let a = BoxAlgebra::identity(WorldSet::numbered(1).unwrap()).unwrap();
        let z = functor_j_obj(&a).unwrap();
        assert!(verify_cama_nfr(&a, &z, Kappa::All).unwrap().iso);
    }

    #[test]
    fn naturality_identity_and_fx2() {
        let a = fixtures::fx5_idbox2();
        let id = ElementMap::identity(&a);
        assert!(
            check_naturality(NaturalitySquare::Tau(&id))
                .unwrap()
                .commutes
        );
        assert!(
            check_naturality(NaturalitySquare::Delta(&id))
                .unwrap()
                .commutes
        );
        let fx = fixtures::fx2_pair();
        let sq = NaturalitySquare::Theta(&fx.map, &fx.source, &fx.target);
        assert!(check_naturality(sq).unwrap().commutes);
        let sq = NaturalitySquare::Gamma(&fx.map, &fx.source, &fx.target, Kappa::All);
        assert!(check_naturality(sq).unwrap().commutes);
    }

    #[test]
    fn corollary_examples() {
        let fx2 = fixtures::fx2_pair();
        let r = corollary_preimage_check(&fx2.map, &fx2.source, &fx2.target).unwrap();
        assert!(r.mkf_hom && r.modal_hom && r.holds);
        let fx3 = fixtures::fx3_triple();
        let r = corollary_preimage_check(&fx3.map, &fx3.source, &fx3.target).unwrap();
        assert!(!r.mkf_hom && !r.modal_hom && r.holds);
    }

    #[test]
    fn find_iso_examples() {
        let m = fixtures::fx3_triple().source;
        assert_eq!(find_iso(&m, &m).unwrap().unwrap().table(), &[0, 1, 2]);

        let swap = |r: &Relation| {
            let s = [2, 1, 0];
            Relation::from_pairs(3, r.pairs().map(|(x, y)| (s[x], s[y]))).unwrap()
        };
        let copy = MRFrame::new(m.worlds().clone(), m.relations().iter().map(swap)).unwrap();
        assert_eq!(find_iso(&m, &copy).unwrap().unwrap().table(), &[2, 1, 0]);

        let empty = fixtures::fx1_single();
        let loop1 = fixtures::fx2_pair().source;
        assert_eq!(find_iso(&empty, &loop1).unwrap(), None);
    }
}
