//! Seeded and exhaustive verification sweeps behind the `suite` command.
//!
//! Each sweep returns a [`SuiteResult`] with case counts and the first
//! failure, rendered as text. Everything is single-threaded and iterates in
//! a fixed order, so equal parameters give equal results.

use serde::Serialize;

use modal_duality::bits::{is_singleton, is_subset, Mask};
use modal_duality::duality::{
    corollary_preimage_check, theta, verify_cama_nfr, verify_nfr_equivalence, verify_tau,
    verify_theta,
};
use modal_duality::fixtures;
use modal_duality::functor::{
    functor_f_obj, functor_g_obj, functor_h_obj, functor_j_obj, functor_k_obj, functor_n_obj,
    relation_for,
};
use modal_duality::generate::{
    enumerate_complete_nframes, enumerate_normal_algebras, random_mrframes, Filter, GenParams,
    EXHAUSTIVE_MAX,
};
use modal_duality::model::{BoxAlgebra, Kappa, MRFrame, WorldSet};
use modal_duality::morphism::{all_cba_homs, all_world_maps, is_modal_hom, Subject};
use modal_duality::order::{check_atom_characterizations, p_element, Adjoints, ElementMap, Side};
use modal_duality::Result;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Caps {
    pub worlds: usize,
    pub atoms: usize,
    pub relations: usize,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            worlds: 3,
            atoms: 3,
            relations: 3,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct SuiteConfig {
    pub seed: u64,
    /// Seeded cases per randomized sweep.
    pub count: usize,
    pub caps: Caps,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            seed: 0,
            count: 200,
            caps: Caps::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteResult {
    pub name: &'static str,
    pub cases: usize,
    pub passed: usize,
    pub failed: usize,
    /// Raw draws rejected by a filter before reaching a check.
    pub skipped: usize,
    pub failure: Option<String>,
}

impl SuiteResult {
    fn new(name: &'static str) -> Self {
        SuiteResult {
            name,
            cases: 0,
            passed: 0,
            failed: 0,
            skipped: 0,
            failure: None,
        }
    }

    fn record(&mut self, ok: bool, failure: impl FnOnce() -> String) {
        self.cases += 1;
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
            if self.failure.is_none() {
                self.failure = Some(failure());
            }
        }
    }

    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub config: SuiteConfig,
    pub suites: Vec<SuiteResult>,
    pub verdict: bool,
}

pub fn run_suite(config: &SuiteConfig) -> Result<SuiteReport> {
    let c = config.caps;
    let suites = vec![
        tau_suite(c.atoms)?,
        theta_suite(config.seed, config.count, c)?,
        nfr_equiv_suite(config.seed, config.count, c)?,
        cama_nfr_suite(c)?,
        corollary_suite(config.seed, config.count, c.worlds, c.relations)?,
        lemma_suite(c.atoms)?,
        adjoints_suite(c.atoms)?,
    ];
    Ok(SuiteReport {
        config: *config,
        verdict: suites.iter().all(SuiteResult::ok),
        suites,
    })
}

fn normal_algebras(max_atoms: usize) -> Result<Vec<BoxAlgebra>> {
    Ok(enumerate_normal_algebras(&GenParams {
        max_atoms: max_atoms.min(EXHAUSTIVE_MAX),
        ..GenParams::default()
    })?
    .collect())
}

/// Every modal homomorphism between the given algebras.
fn modal_homs(algebras: &[BoxAlgebra]) -> Vec<ElementMap> {
    let mut out = Vec::new();
    for a in algebras {
        for b in algebras {
            out.extend(all_cba_homs(a, b).filter(|h| is_modal_hom(h).verdict));
        }
    }
    out
}

/// τ on every normal algebra with at most `max_atoms` atoms.
pub fn tau_suite(max_atoms: usize) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("tau");
    for a in normal_algebras(max_atoms)? {
        let r = verify_tau(&a)?;
        s.record(r.iso, || {
            format!("box table {:?}: {:?}", a.table(), r.witness())
        });
    }
    Ok(s)
}

/// θ on `count` seeded frames closed under intersection, plus the fork,
/// where θ must fail with a witness that replays.
pub fn theta_suite(seed: u64, count: usize, caps: Caps) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("theta");
    let p = GenParams {
        max_worlds: caps.worlds,
        max_relations: caps.relations,
        seed,
        count,
        filter: Filter::Directed(Kappa::All),
        close_under_intersection: true,
        ..GenParams::default()
    };
    for m in random_mrframes(&p) {
        let r = verify_theta(&m)?;
        s.record(r.iso, || format!("{m:?}: {:?}", r.witness()));
    }
    s.skipped = count - s.cases;

    let fork = fixtures::fx4_fork();
    let r = verify_theta(&fork)?;
    let (t, fgm) = theta(&fork)?;
    let replayed = r
        .witness()
        .is_some_and(|w| w.replays(Subject::Mkf(&t, &fork, &fgm)));
    s.record(!r.iso && replayed, || {
        format!("fork: iso = {}, witness = {:?}", r.iso, r.witness())
    });
    Ok(s)
}

/// Draws until `count` frames pass `filter`, giving up after a fixed
/// multiple of raw draws.
fn filtered_frames(seed: u64, count: usize, caps: Caps, filter: Filter) -> (Vec<MRFrame>, usize) {
    let p = GenParams {
        max_worlds: caps.worlds,
        max_relations: caps.relations,
        seed,
        count: count.saturating_mul(64),
        filter: Filter::None,
        ..GenParams::default()
    };
    let mut kept = Vec::with_capacity(count);
    let mut rejected = 0;
    for m in random_mrframes(&p) {
        if kept.len() == count {
            break;
        }
        if filter.accepts_frame(&m) {
            kept.push(m);
        } else {
            rejected += 1;
        }
    }
    (kept, rejected)
}

/// N/H on every `All`-complete neighborhood frame with at most two worlds,
/// then on `count` seeded κ-directed frames for each κ in 2, 3 and `All`.
pub fn nfr_equiv_suite(seed: u64, count: usize, caps: Caps) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("nfr-equiv");
    for n in 1..=caps.worlds.min(2) {
        for z in enumerate_complete_nframes(n, Kappa::All)? {
            let m = functor_h_obj(&z, Kappa::All)?;
            let r = verify_nfr_equivalence(&m, &z, Kappa::All)?;
            s.record(r.iso, || format!("{z:?}: {:?}", r.witness()));
        }
    }
    for kappa in [Kappa::Finite(2), Kappa::Finite(3), Kappa::All] {
        let (frames, rejected) = filtered_frames(seed, count, caps, Filter::Directed(kappa));
        s.skipped += rejected;
        for m in frames {
            let z = functor_n_obj(&m)?;
            let r = verify_nfr_equivalence(&m, &z, kappa)?;
            s.record(r.iso, || format!("{m:?} at {kappa}: {:?}", r.witness()));
        }
    }
    Ok(s)
}

/// J/K on every normal algebra with at most two atoms and every
/// `All`-complete neighborhood frame with at most two worlds, together with
/// `J = N∘F` and `K = G∘H` on the same objects.
pub fn cama_nfr_suite(caps: Caps) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("cama-nfr");
    for a in normal_algebras(caps.atoms.min(2))? {
        let z = functor_j_obj(&a)?;
        let r = verify_cama_nfr(&a, &z, Kappa::All)?;
        s.record(r.iso, || {
            format!("box table {:?}: {:?}", a.table(), r.witness())
        });
        let route = functor_n_obj(&functor_f_obj(&a)?)?;
        s.record(route == z, || {
            format!("box table {:?}: J differs from N∘F", a.table())
        });
    }
    for n in 1..=caps.worlds.min(2) {
        for z in enumerate_complete_nframes(n, Kappa::All)? {
            let a = functor_k_obj(&z)?;
            let r = verify_cama_nfr(&a, &z, Kappa::All)?;
            s.record(r.iso, || format!("{z:?}: {:?}", r.witness()));
            let route = functor_g_obj(&functor_h_obj(&z, Kappa::All)?)?;
            s.record(route == a, || format!("{z:?}: K differs from G∘H"));
        }
    }
    Ok(s)
}

/// The preimage criterion on every map between `pairs` seeded frame pairs.
pub fn corollary_suite(
    seed: u64,
    pairs: usize,
    max_worlds: usize,
    max_relations: usize,
) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("corollary");
    let p = GenParams {
        max_worlds,
        max_relations,
        seed,
        count: pairs * 2,
        ..GenParams::default()
    };
    let frames: Vec<MRFrame> = random_mrframes(&p).collect();
    for pair in frames.chunks_exact(2) {
        let (m1, m2) = (&pair[0], &pair[1]);
        for f in all_world_maps(m1.worlds(), m2.worlds()) {
            let r = corollary_preimage_check(&f, m1, m2)?;
            s.record(r.holds, || {
                format!("{m1:?} -> {m2:?} by {:?}: {r:?}", f.table())
            });
        }
    }
    Ok(s)
}

/// Adjacency in `R(X)` against `p(X, a)` on two-atom normal algebras, and
/// the inverse construction `X = {h♯(p(Y, b))}` on modal homomorphisms
/// between algebras with at most two atoms.
pub fn lemma_suite(max_atoms: usize) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("lemma");
    let algebras = normal_algebras(max_atoms.min(2))?;
    for a in algebras.iter().filter(|a| a.atom_count() == 2) {
        let elems: Vec<Mask> = a.elements().collect();
        let mut families: Vec<Vec<Mask>> = vec![vec![]];
        for i in 0..elems.len() {
            for j in i..elems.len() {
                families.push(if i == j {
                    vec![elems[i]]
                } else {
                    vec![elems[i], elems[j]]
                });
            }
        }
        for xs in &families {
            let r = relation_for(a, xs);
            for x in 0..a.atom_count() {
                let p = p_element(a, xs, 1 << x)?;
                for y in 0..a.atom_count() {
                    let ok = r.contains(x, y) == (p >> y & 1 == 0);
                    s.record(ok, || {
                        format!("box table {:?}, X = {xs:?}, atoms ({x}, {y})", a.table())
                    });
                }
            }
        }
    }
    for h in modal_homs(&algebras) {
        let adj = Adjoints::of(&h)?;
        let (src, dst) = (h.source(), h.target());
        let elems: Vec<Mask> = dst.elements().collect();
        for sel in 0..1u64 << elems.len() {
            let ys: Vec<Mask> = (0..elems.len())
                .filter(|&i| sel >> i & 1 == 1)
                .map(|i| elems[i])
                .collect();
            for b in dst.atom_elements() {
                let bound = adj.get(p_element(dst, &ys, b)?, Side::Right);
                let lower = adj.get(b, Side::Left);
                let from = lower.trailing_zeros() as usize;
                let r = relation_for(src, &[bound]);
                let ok = is_singleton(lower)
                    && p_element(src, &[bound], lower)? == bound
                    && (0..src.atom_count()).all(|a| r.contains(from, a) == (bound >> a & 1 == 0));
                s.record(ok, || format!("{:?}, Y = {ys:?}, b = {b:#b}", h.table()));
            }
        }
    }
    Ok(s)
}

/// Galois laws, unit and counit inequalities and atom preservation of the
/// left adjoint for every complete homomorphism between powerset algebras
/// with at most `max_atoms` atoms; atom characterizations on every normal
/// algebra in the same range.
pub fn adjoints_suite(max_atoms: usize) -> Result<SuiteResult> {
    let mut s = SuiteResult::new("adjoints");
    let max_atoms = max_atoms.min(EXHAUSTIVE_MAX);
    let powersets: Vec<BoxAlgebra> = (1..=max_atoms)
        .map(|n| BoxAlgebra::identity(WorldSet::numbered(n)?))
        .collect::<Result<_>>()?;
    for a in &powersets {
        for b in &powersets {
            for f in all_cba_homs(a, b) {
                let adj = Adjoints::of(&f)?;
                let ok = adjoint_laws_hold(&f, &adj)
                    && b.atom_elements()
                        .all(|t| is_singleton(adj.get(t, Side::Left)));
                s.record(ok, || format!("{:?}", f.table()));
            }
        }
    }
    for a in normal_algebras(max_atoms)? {
        let c = check_atom_characterizations(&a);
        s.record(c.agree, || format!("box table {:?}", a.table()));
    }
    Ok(s)
}

fn adjoint_laws_hold(f: &ElementMap, adj: &Adjoints) -> bool {
    let (src, dst) = (f.source(), f.target());
    let right = |b: Mask| adj.get(b, Side::Right);
    let left = |b: Mask| adj.get(b, Side::Left);
    let galois = src.elements().all(|a| {
        dst.elements().all(|b| {
            is_subset(f.apply(a), b) == is_subset(a, right(b))
                && is_subset(b, f.apply(a)) == is_subset(left(b), a)
        })
    });
    let units = dst
        .elements()
        .all(|b| is_subset(f.apply(right(b)), b) && is_subset(b, f.apply(left(b))))
        && src
            .elements()
            .all(|a| is_subset(a, right(f.apply(a))) && is_subset(left(f.apply(a)), a));
    let order = dst.elements().all(|b| {
        dst.elements()
            .filter(|&c| is_subset(b, c))
            .all(|c| is_subset(right(b), right(c)) && is_subset(left(b), left(c)))
    });
    galois && units && order
}
