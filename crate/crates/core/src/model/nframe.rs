use std::collections::HashSet;

use serde::Serialize;

use super::{Kappa, WorldSet};
use crate::bits::{supersets, Family, Mask, FAMILY_MAX_CARRIER};
use crate::error::{Error, Result};

/// Neighborhood frame: every world carries a family of subsets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NFrame {
    worlds: WorldSet,
    nbhd: Vec<Family>,
}

impl NFrame {
    pub fn new(worlds: WorldSet, nbhd: Vec<Family>) -> Result<Self> {
        if worlds.len() > FAMILY_MAX_CARRIER {
            return Err(Error::CapExceeded {
                what: "neighborhood frame worlds",
                limit: FAMILY_MAX_CARRIER,
                actual: worlds.len(),
            });
        }
        if nbhd.len() != worlds.len() {
            return Err(Error::TableSize {
                expected: worlds.len(),
                actual: nbhd.len(),
            });
        }
        for f in &nbhd {
            for m in f.members() {
                worlds.check_mask(m)?;
            }
        }
        Ok(NFrame { worlds, nbhd })
    }

    pub fn worlds(&self) -> &WorldSet {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn neighborhood(&self, c: usize) -> Family {
        self.nbhd[c]
    }

    pub fn neighborhoods(&self) -> &[Family] {
        &self.nbhd
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum NfrViolation {
    MissingWholeSet {
        world: usize,
    },
    NotUpwardClosed {
        world: usize,
        member: Mask,
        superset: Mask,
    },
    NotIntersectionClosed {
        world: usize,
        sets: Vec<Mask>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct NfrReport {
    pub holds: bool,
    pub witness: Option<NfrViolation>,
}

/// κ-completeness: whole set included, upward closed, and closed under
/// intersections of nonempty subfamilies whose size κ admits.
pub fn check_nfr(z: &NFrame, kappa: Kappa) -> NfrReport {
    let full = z.worlds().full();
    let fail = |v| NfrReport {
        holds: false,
        witness: Some(v),
    };
    for c in 0..z.len() {
        let fam = z.neighborhood(c);
        if !fam.contains(full) {
            return fail(NfrViolation::MissingWholeSet { world: c });
        }
        for x in fam.members() {
            if let Some(y) = supersets(x, full).find(|&y| !fam.contains(y)) {
                return fail(NfrViolation::NotUpwardClosed {
                    world: c,
                    member: x,
                    superset: y,
                });
            }
        }
        if let Some(sets) = intersection_failure(fam, kappa) {
            return fail(NfrViolation::NotIntersectionClosed { world: c, sets });
        }
    }
    NfrReport {
        holds: true,
        witness: None,
    }
}

/// First `(world, member, superset)` with `member ∈ N(world)` and
/// `superset ∉ N(world)`.
pub fn upward_closure_violation(z: &NFrame) -> Option<NfrViolation> {
    let full = z.worlds().full();
    (0..z.len()).find_map(|c| {
        let fam = z.neighborhood(c);
        fam.members().find_map(|x| {
            supersets(x, full)
                .find(|&y| !fam.contains(y))
                .map(|y| NfrViolation::NotUpwardClosed {
                    world: c,
                    member: x,
                    superset: y,
                })
        })
    })
}

fn intersection_failure(fam: Family, kappa: Kappa) -> Option<Vec<Mask>> {
    let members: Vec<Mask> = fam.members().collect();
    let mut seen: HashSet<Mask> = members.iter().copied().collect();
    let mut frontier: Vec<(Mask, Vec<Mask>)> = members.iter().map(|&m| (m, vec![m])).collect();
    let mut size = 1;
    while !frontier.is_empty() && kappa.admits(size + 1) {
        let mut next = Vec::new();
        for (inter, s) in &frontier {
            for &m in &members {
                if s.contains(&m) {
                    continue;
                }
                let i2 = inter & m;
                if seen.insert(i2) {
                    let mut s2 = s.clone();
                    s2.push(m);
                    s2.sort_unstable();
                    if !fam.contains(i2) {
                        return Some(s2);
                    }
                    next.push((i2, s2));
                }
            }
        }
        frontier = next;
        size += 1;
    }
    None
}
