//! Named small structures: the three counterexamples to the forgetful
//! construction, the non-directed fork and the identity-box algebra.

use crate::error::{Error, Result};
use crate::model::{BoxAlgebra, MRFrame, Relation, WorldSet};
use crate::morphism::WorldMap;

pub const FIXTURE_NAMES: [&str; 5] = [
    "FX1_single",
    "FX2_pair",
    "FX3_triple",
    "FX4_fork",
    "FX5_idbox2",
];

/// Two frames and a map between them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramePair {
    pub source: MRFrame,
    pub target: MRFrame,
    pub map: WorldMap,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Fixture {
    Frame(MRFrame),
    Pair(FramePair),
    Algebra(BoxAlgebra),
}

pub fn fixture(name: &str) -> Result<Fixture> {
    Ok(match name {
        "FX1_single" => Fixture::Frame(fx1_single()),
        "FX2_pair" => Fixture::Pair(fx2_pair()),
        "FX3_triple" => Fixture::Pair(fx3_triple()),
        "FX4_fork" => Fixture::Frame(fx4_fork()),
        "FX5_idbox2" => Fixture::Algebra(fx5_idbox2()),
        _ => return Err(Error::UnknownFixture(name.to_owned())),
    })
}

fn frame(n: usize, rels: &[&[(usize, usize)]]) -> MRFrame {
    let worlds = WorldSet::numbered(n).expect("fixture worlds");
    let rels = rels
        .iter()
        .map(|pairs| Relation::from_pairs(n, pairs.iter().copied()).expect("fixture relation"));
    MRFrame::new(worlds, rels).expect("fixture frame")
}

fn map(source: &MRFrame, target: &MRFrame, table: Vec<usize>) -> WorldMap {
    WorldMap::new(source.worlds().clone(), target.worlds().clone(), table).expect("fixture map")
}

/// `⟨{0}, {∅}⟩`.
pub fn fx1_single() -> MRFrame {
    frame(1, &[&[]])
}

/// `⟨{0},{{(0,0)}}⟩ → ⟨{0,1},{{(0,0)}}⟩` by `0 ↦ 0`.
pub fn fx2_pair() -> FramePair {
    let source = frame(1, &[&[(0, 0)]]);
    let target = frame(2, &[&[(0, 0)]]);
    let map = map(&source, &target, vec![0]);
    FramePair {
        source,
        target,
        map,
    }
}

/// `⟨{0,1,2},{R1,R2}⟩ → ⟨{0,1},{Q}⟩` by `0 ↦ 0, 1 ↦ 1, 2 ↦ 1`, with
/// `R1 = {(0,1)}`, `R2 = {(0,0),(0,1),(0,2)}`, `Q = {(0,0),(0,1)}`.
pub fn fx3_triple() -> FramePair {
    let source = frame(3, &[&[(0, 1)], &[(0, 0), (0, 1), (0, 2)]]);
    let target = frame(2, &[&[(0, 0), (0, 1)]]);
    let map = map(&source, &target, vec![0, 1, 1]);
    FramePair {
        source,
        target,
        map,
    }
}

/// `⟨{0,1,2},{{(0,1)},{(0,2)}}⟩`, not downward directed.
pub fn fx4_fork() -> MRFrame {
    frame(3, &[&[(0, 1)], &[(0, 2)]])
}

/// Identity box over atoms `a`, `b`.
pub fn fx5_idbox2() -> BoxAlgebra {
    BoxAlgebra::identity(WorldSet::new(["a", "b"]).expect("fixture atoms"))
        .expect("fixture algebra")
}
