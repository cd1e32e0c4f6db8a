//! Exhaustive and seeded-random generation of small frames, neighborhood
//! frames, algebras and maps.
//!
//! Exhaustive enumeration refuses carriers above three worlds or atoms.
//! Random generation uses ChaCha8 seeded from a 64-bit seed, draws raw
//! encodings uniformly (a size, then each relation's pair bits, each table
//! entry or each neighborhood family) and applies filters afterwards, so the
//! sequence for a given seed is stable across platforms.

use std::collections::BTreeSet;

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::bits::{full_mask, Family, Mask};
use crate::error::{Error, Result};
use crate::model::{
    check_kappa_dd, check_nfr, BoxAlgebra, Kappa, KripkeFrame, MRFrame, NFrame, Relation, WorldSet,
};

/// Largest carrier accepted by the exhaustive enumerators.
pub const EXHAUSTIVE_MAX: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Filter {
    None,
    /// Frames passing `check_kappa_dd`.
    Directed(Kappa),
    /// Neighborhood frames passing `check_nfr`.
    Complete(Kappa),
    /// Algebras with `□0 = 0` and binary additivity.
    Normal,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GenParams {
    pub max_worlds: usize,
    pub max_relations: usize,
    pub max_atoms: usize,
    pub seed: u64,
    /// Number of raw draws for random generation.
    pub count: usize,
    pub filter: Filter,
    /// Close each random relation set under pairwise intersection.
    pub close_under_intersection: bool,
}

impl Default for GenParams {
    fn default() -> Self {
        GenParams {
            max_worlds: 3,
            max_relations: 3,
            max_atoms: 3,
            seed: 0,
            count: 100,
            filter: Filter::None,
            close_under_intersection: false,
        }
    }
}

impl Filter {
    pub fn accepts_frame(self, m: &MRFrame) -> bool {
        match self {
            Filter::Directed(k) => check_kappa_dd(m, k).holds,
            _ => true,
        }
    }

    pub fn accepts_nframe(self, z: &NFrame) -> bool {
        match self {
            Filter::Complete(k) => check_nfr(z, k).holds,
            _ => true,
        }
    }

    pub fn accepts_algebra(self, a: &BoxAlgebra) -> bool {
        match self {
            Filter::Normal => a.is_normal(),
            _ => true,
        }
    }
}

fn exhaustive_cap(what: &str, requested: usize) -> Result<()> {
    if requested > EXHAUSTIVE_MAX {
        return Err(Error::EnumerationCap(format!(
            "{what} {requested} > {EXHAUSTIVE_MAX}"
        )));
    }
    Ok(())
}

fn numbered(n: usize) -> WorldSet {
    WorldSet::numbered(n).expect("within the world cap")
}

fn relation_from_bits(n: usize, bits: u64) -> Relation {
    let full = full_mask(n);
    let rows: Vec<Mask> = (0..n).map(|x| bits >> (x * n) & full).collect();
    Relation::from_rows(&rows).expect("rows are within the carrier")
}

/// All `2^(n²)` relations on `n` worlds, in canonical order.
pub fn all_relations(n: usize) -> impl Iterator<Item = Relation> {
    (0..1u64 << (n * n)).map(move |b| relation_from_bits(n, b))
}

/// Every frame with `1..=max_worlds` worlds and `1..=max_relations`
/// distinct relations, ordered by size, then relation count, then
/// lexicographically by relation set.
pub fn enumerate_mrframes(p: &GenParams) -> Result<impl Iterator<Item = MRFrame>> {
    exhaustive_cap("worlds", p.max_worlds)?;
    let (max_relations, filter) = (p.max_relations, p.filter);
    Ok((1..=p.max_worlds)
        .flat_map(move |n| {
            let worlds = numbered(n);
            let rels: Vec<Relation> = all_relations(n).collect();
            (1..=max_relations.min(rels.len())).flat_map(move |k| {
                let worlds = worlds.clone();
                rels.clone()
                    .into_iter()
                    .combinations(k)
                    .map(move |s| MRFrame::new(worlds.clone(), s).expect("distinct relations"))
            })
        })
        .filter(move |m| filter.accepts_frame(m)))
}

/// Every Kripke frame with `1..=max_worlds` worlds.
pub fn enumerate_kripke_frames(max_worlds: usize) -> Result<impl Iterator<Item = KripkeFrame>> {
    exhaustive_cap("worlds", max_worlds)?;
    Ok((1..=max_worlds).flat_map(|n| {
        let worlds = numbered(n);
        all_relations(n).map(move |r| KripkeFrame::new(worlds.clone(), r).expect("same arity"))
    }))
}

/// Every normal algebra on `1..=max_atoms` atoms: each atom's box value
/// ranges over all elements and the table is extended by union.
pub fn enumerate_normal_algebras(p: &GenParams) -> Result<impl Iterator<Item = BoxAlgebra>> {
    exhaustive_cap("atoms", p.max_atoms)?;
    Ok((1..=p.max_atoms).flat_map(|n| {
        let atoms = numbered(n);
        let size = 1u64 << n;
        (0..size.pow(n as u32)).map(move |mut code| {
            let rows: Vec<Mask> = (0..n)
                .map(|_| {
                    let r = code % size;
                    code /= size;
                    r
                })
                .collect();
            BoxAlgebra::from_atom_rows(atoms.clone(), &rows).expect("rows within the carrier")
        })
    }))
}

/// Every neighborhood frame on `1..=max_worlds` worlds (each neighborhood
/// any family of subsets), the last world's family varying fastest, filtered
/// post hoc.
pub fn enumerate_nframes(p: &GenParams) -> Result<impl Iterator<Item = NFrame>> {
    exhaustive_cap("worlds", p.max_worlds)?;
    let filter = p.filter;
    Ok((1..=p.max_worlds)
        .flat_map(|n| {
            let worlds = numbered(n);
            (0..n)
                .map(|_| (0..1u64 << (1 << n)).map(Family::from_bits))
                .multi_cartesian_product()
                .map(move |nbhd| {
                    NFrame::new(worlds.clone(), nbhd).expect("families within the carrier")
                })
        })
        .filter(move |z| filter.accepts_nframe(z)))
}

/// Every κ-complete neighborhood frame on exactly `n ≤ 3` worlds, in the
/// order of [`enumerate_nframes`], built from the complete families of a
/// single world rather than by filtering.
pub fn enumerate_complete_nframes(n: usize, kappa: Kappa) -> Result<Vec<NFrame>> {
    exhaustive_cap("worlds", n)?;
    let worlds = numbered(n);
    let families: Vec<Family> = (0..1u64 << (1 << n))
        .map(Family::from_bits)
        .filter(|&f| {
            let z = NFrame::new(worlds.clone(), vec![f; n]).expect("families within the carrier");
            check_nfr(&z, kappa).holds
        })
        .collect();
    Ok((0..n)
        .map(|_| families.iter().copied())
        .multi_cartesian_product()
        .map(|nbhd| NFrame::new(worlds.clone(), nbhd).expect("families within the carrier"))
        .collect())
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Closes a relation set under pairwise intersection.
pub fn close_under_intersection(rels: &[Relation]) -> Vec<Relation> {
    let mut set: BTreeSet<Relation> = rels.iter().copied().collect();
    loop {
        let current: Vec<Relation> = set.iter().copied().collect();
        let before = set.len();
        for (a, b) in current.iter().tuple_combinations() {
            set.insert(a.intersect(b));
        }
        if set.len() == before {
            return current;
        }
    }
}

/// `p.count` raw frames: a world count uniform in `1..=max_worlds`, a
/// relation count uniform in `1..=max_relations`, and each relation uniform
/// over all relations; optionally closed under intersection, then filtered.
pub fn random_mrframes(p: &GenParams) -> impl Iterator<Item = MRFrame> {
    let mut rng = rng(p.seed);
    let p = p.clone();
    (0..p.count)
        .map(move |_| {
            let n = rng.gen_range(1..=p.max_worlds);
            let k = rng.gen_range(1..=p.max_relations);
            let rels: Vec<Relation> = (0..k)
                .map(|_| relation_from_bits(n, rng.gen::<u64>() & full_mask(n * n)))
                .collect();
            let rels = if p.close_under_intersection {
                close_under_intersection(&rels)
            } else {
                rels
            };
            MRFrame::new(numbered(n), rels).expect("nonempty relation set")
        })
        .filter(move |m| p.filter.accepts_frame(m))
}

/// `p.count` raw algebras with uniform box tables, then filtered.
pub fn random_algebras(p: &GenParams) -> impl Iterator<Item = BoxAlgebra> {
    let mut rng = rng(p.seed);
    let p = p.clone();
    (0..p.count)
        .map(move |_| {
            let n = rng.gen_range(1..=p.max_atoms);
            let table = (0..1u64 << n)
                .map(|_| rng.gen::<u64>() & full_mask(n))
                .collect();
            BoxAlgebra::new(numbered(n), table).expect("table within the carrier")
        })
        .filter(move |a| p.filter.accepts_algebra(a))
}

/// `p.count` normal algebras with uniform atom rows.
pub fn random_normal_algebras(p: &GenParams) -> impl Iterator<Item = BoxAlgebra> {
    let mut rng = rng(p.seed);
    let p = p.clone();
    (0..p.count).map(move |_| {
        let n = rng.gen_range(1..=p.max_atoms);
        let rows: Vec<Mask> = (0..n).map(|_| rng.gen::<u64>() & full_mask(n)).collect();
        BoxAlgebra::from_atom_rows(numbered(n), &rows).expect("rows within the carrier")
    })
}

/// `p.count` raw neighborhood frames with uniform families, then filtered.
pub fn random_nframes(p: &GenParams) -> impl Iterator<Item = NFrame> {
    let mut rng = rng(p.seed);
    let p = p.clone();
    (0..p.count)
        .map(move |_| {
            let n = rng.gen_range(1..=p.max_worlds);
            let nbhd = (0..n)
                .map(|_| Family::from_bits(rng.gen::<u64>() & full_mask(1 << n)))
                .collect();
            NFrame::new(numbered(n), nbhd).expect("families within the carrier")
        })
        .filter(move |z| p.filter.accepts_nframe(z))
}
