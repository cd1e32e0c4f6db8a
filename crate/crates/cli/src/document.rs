//! JSON wire format for frames, neighborhood frames, algebras and maps.
//!
//! Parsing sorts worlds (and atoms) by label, so indices follow label order.
//! Serialization writes the same canonical form: subsets list labels in
//! sorted order, relation pairs are lexicographic, relation sets follow the
//! canonical relation order, families and box tables go by subset mask and
//! map entries go by source.

use serde::{Deserialize, Serialize};

use modal_duality::bits::{ones, Family, Mask};
use modal_duality::fixtures;
use modal_duality::model::{BoxAlgebra, KripkeFrame, MRFrame, NFrame, Relation, WorldSet};
use modal_duality::morphism::WorldMap;
use modal_duality::order::ElementMap;

use crate::CliError;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Document {
    Kripke(KripkeFrame),
    Mkf(MRFrame),
    Nfr(NFrame),
    Cama(BoxAlgebra),
    Map(MapTable),
}

impl Document {
    pub fn kind(&self) -> &'static str {
        match self {
            Document::Kripke(_) => "kripke",
            Document::Mkf(_) => "mkf",
            Document::Nfr(_) => "nfr",
            Document::Cama(_) => "cama",
            Document::Map(_) => "map",
        }
    }
}

/// A map given by labels, resolved against its ends only when used.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapTable {
    Worlds(Vec<(String, String)>),
    Elements(Vec<(Vec<String>, Vec<String>)>),
}

#[derive(Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
enum Wire {
    Kripke(KripkeWire),
    Mkf(MkfWire),
    Nfr(NfrWire),
    Cama(CamaWire),
    Map(MapWire),
}

type Pair = (String, String);

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KripkeWire {
    worlds: Vec<String>,
    relation: Vec<Pair>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MkfWire {
    worlds: Vec<String>,
    relations: Vec<Vec<Pair>>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct NfrWire {
    worlds: Vec<String>,
    neighborhoods: Vec<(String, Vec<Vec<String>>)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CamaWire {
    atoms: Vec<String>,
    #[serde(rename = "box")]
    table: Vec<(Vec<String>, Vec<String>)>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MapWire {
    table: MapTable,
}

fn schema(msg: impl Into<String>) -> CliError {
    CliError::Schema(msg.into())
}

fn world_set(mut labels: Vec<String>, field: &str) -> Result<WorldSet, CliError> {
    labels.sort();
    WorldSet::new(labels).map_err(|e| schema(format!("{field}: {e}")))
}

fn index(ws: &WorldSet, label: &str, context: &str) -> Result<usize, CliError> {
    ws.index_of(label)
        .ok_or_else(|| schema(format!("{context}: unknown world label {label:?}")))
}

fn relation(ws: &WorldSet, pairs: &[Pair], context: &str) -> Result<Relation, CliError> {
    let idx = pairs
        .iter()
        .map(|(x, y)| {
            let ctx = format!("{context} pair [{x:?},{y:?}]");
            Ok((index(ws, x, &ctx)?, index(ws, y, &ctx)?))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Relation::from_pairs(ws.len(), idx).map_err(|e| schema(format!("{context}: {e}")))
}

fn subset(ws: &WorldSet, labels: &[String], context: &str) -> Result<Mask, CliError> {
    labels
        .iter()
        .try_fold(0, |acc, l| Ok(acc | 1 << index(ws, l, context)?))
}

fn pairs_of(ws: &WorldSet, r: &Relation) -> Vec<Pair> {
    r.pairs()
        .map(|(x, y)| (ws.label(x).to_owned(), ws.label(y).to_owned()))
        .collect()
}

fn labels_of(ws: &WorldSet, mask: Mask) -> Vec<String> {
    ws.render(mask).into_iter().map(str::to_owned).collect()
}

/// Positioned JSON errors become [`CliError::Parse`]; everything detected
/// after decoding becomes [`CliError::Schema`].
pub fn parse_document(text: &str) -> Result<Document, CliError> {
    let wire: Wire = serde_json::from_str(text).map_err(|e| {
        if e.is_data() {
            CliError::Schema(format!("{e}"))
        } else {
            CliError::Parse {
                line: e.line(),
                column: e.column(),
                message: e.to_string(),
            }
        }
    })?;
    match wire {
        Wire::Kripke(w) => {
            let ws = world_set(w.worlds, "worlds")?;
            let r = relation(&ws, &w.relation, "relation")?;
            Ok(Document::Kripke(
                KripkeFrame::new(ws, r).map_err(|e| schema(e.to_string()))?,
            ))
        }
        Wire::Mkf(w) => {
            let ws = world_set(w.worlds, "worlds")?;
            if w.relations.is_empty() {
                return Err(schema("relations: at least one relation is required"));
            }
            let rels = w
                .relations
                .iter()
                .enumerate()
                .map(|(i, r)| relation(&ws, r, &format!("relations[{i}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Document::Mkf(
                MRFrame::new(ws, rels).map_err(|e| schema(format!("relations: {e}")))?,
            ))
        }
        Wire::Nfr(w) => {
            let ws = world_set(w.worlds, "worlds")?;
            let mut nbhd: Vec<Option<Family>> = vec![None; ws.len()];
            if ws.len() > modal_duality::bits::FAMILY_MAX_CARRIER {
                return Err(schema(format!(
                    "worlds: neighborhood frames support at most {} worlds",
                    modal_duality::bits::FAMILY_MAX_CARRIER
                )));
            }
            for (label, sets) in &w.neighborhoods {
                let c = index(&ws, label, "neighborhoods")?;
                if nbhd[c].is_some() {
                    return Err(schema(format!(
                        "neighborhoods: world {label:?} listed twice"
                    )));
                }
                let ctx = format!("neighborhoods[{label:?}]");
                let fam = sets
                    .iter()
                    .map(|s| subset(&ws, s, &ctx))
                    .collect::<Result<Family, _>>()?;
                nbhd[c] = Some(fam);
            }
            let nbhd = nbhd
                .into_iter()
                .enumerate()
                .map(|(c, f)| {
                    f.ok_or_else(|| {
                        schema(format!("neighborhoods: world {:?} missing", ws.label(c)))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Document::Nfr(
                NFrame::new(ws, nbhd).map_err(|e| schema(e.to_string()))?,
            ))
        }
        Wire::Cama(w) => {
            let ws = world_set(w.atoms, "atoms")?;
            if ws.len() > modal_duality::MAX_ATOMS {
                return Err(schema(format!(
                    "atoms: at most {} atoms are supported",
                    modal_duality::MAX_ATOMS
                )));
            }
            let mut table: Vec<Option<Mask>> = vec![None; 1 << ws.len()];
            for (x, image) in &w.table {
                let xm = subset(&ws, x, "box")?;
                let im = subset(&ws, image, "box")?;
                if table[xm as usize].replace(im).is_some() {
                    return Err(schema(format!(
                        "box: element {} listed twice",
                        ws.render_set(xm)
                    )));
                }
            }
            let table = table
                .into_iter()
                .enumerate()
                .map(|(x, v)| {
                    v.ok_or_else(|| {
                        schema(format!("box: element {} missing", ws.render_set(x as Mask)))
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            Ok(Document::Cama(
                BoxAlgebra::new(ws, table).map_err(|e| schema(e.to_string()))?,
            ))
        }
        Wire::Map(w) => Ok(Document::Map(w.table)),
    }
}

/// Index of each world after sorting by label.
fn sorted_positions(ws: &WorldSet) -> (WorldSet, Vec<usize>) {
    let mut order: Vec<usize> = (0..ws.len()).collect();
    order.sort_by(|&a, &b| ws.label(a).cmp(ws.label(b)));
    let mut pos = vec![0; ws.len()];
    for (new, &old) in order.iter().enumerate() {
        pos[old] = new;
    }
    let sorted = WorldSet::new(order.iter().map(|&i| ws.label(i))).expect("labels are distinct");
    (sorted, pos)
}

fn remap(mask: Mask, pos: &[usize]) -> Mask {
    ones(mask).fold(0, |acc, i| acc | 1 << pos[i])
}

fn remap_relation(r: &Relation, pos: &[usize]) -> Relation {
    Relation::from_pairs(pos.len(), r.pairs().map(|(x, y)| (pos[x], pos[y])))
        .expect("a permutation keeps pairs in range")
}

/// Relabels so that indices follow label order; parsed documents are
/// already in this form.
pub fn canonical(doc: &Document) -> Document {
    match doc {
        Document::Kripke(k) => {
            let (ws, pos) = sorted_positions(k.worlds());
            let r = remap_relation(k.relation(), &pos);
            Document::Kripke(KripkeFrame::new(ws, r).expect("same arity"))
        }
        Document::Mkf(m) => {
            let (ws, pos) = sorted_positions(m.worlds());
            let rels = m.relations().iter().map(|r| remap_relation(r, &pos));
            Document::Mkf(MRFrame::new(ws, rels).expect("same arity"))
        }
        Document::Nfr(z) => {
            let (ws, pos) = sorted_positions(z.worlds());
            let mut nbhd = vec![Family::EMPTY; z.len()];
            for c in 0..z.len() {
                nbhd[pos[c]] = z
                    .neighborhood(c)
                    .members()
                    .map(|x| remap(x, &pos))
                    .collect();
            }
            Document::Nfr(NFrame::new(ws, nbhd).expect("same carrier"))
        }
        Document::Cama(a) => {
            let (ws, pos) = sorted_positions(a.atoms());
            let mut table = vec![0; a.size()];
            for x in a.elements() {
                table[remap(x, &pos) as usize] = remap(a.box_of(x), &pos);
            }
            Document::Cama(BoxAlgebra::new(ws, table).expect("same size"))
        }
        Document::Map(t) => Document::Map(canonical_table(t)),
    }
}

fn canonical_table(t: &MapTable) -> MapTable {
    match t {
        MapTable::Worlds(entries) => {
            let mut entries = entries.clone();
            entries.sort();
            MapTable::Worlds(entries)
        }
        MapTable::Elements(entries) => {
            let mut entries = entries.clone();
            for (x, y) in &mut entries {
                x.sort();
                x.dedup();
                y.sort();
                y.dedup();
            }
            let universe: Vec<String> = {
                let mut u: Vec<String> = entries.iter().flat_map(|(x, _)| x.clone()).collect();
                u.sort();
                u.dedup();
                u
            };
            let key = |x: &[String]| -> Mask {
                x.iter()
                    .map(|l| 1 << universe.binary_search(l).expect("collected above"))
                    .fold(0, |acc, b| acc | b)
            };
            entries.sort_by(|(a, ya), (b, yb)| key(a).cmp(&key(b)).then_with(|| ya.cmp(yb)));
            MapTable::Elements(entries)
        }
    }
}

pub fn serialize_document(doc: &Document) -> String {
    let wire = match &canonical(doc) {
        Document::Kripke(k) => Wire::Kripke(KripkeWire {
            worlds: k.worlds().labels().to_vec(),
            relation: pairs_of(k.worlds(), k.relation()),
        }),
        Document::Mkf(m) => Wire::Mkf(MkfWire {
            worlds: m.worlds().labels().to_vec(),
            relations: m
                .relations()
                .iter()
                .map(|r| pairs_of(m.worlds(), r))
                .collect(),
        }),
        Document::Nfr(z) => Wire::Nfr(NfrWire {
            worlds: z.worlds().labels().to_vec(),
            neighborhoods: (0..z.len())
                .map(|c| {
                    (
                        z.worlds().label(c).to_owned(),
                        z.neighborhood(c)
                            .members()
                            .map(|x| labels_of(z.worlds(), x))
                            .collect(),
                    )
                })
                .collect(),
        }),
        Document::Cama(a) => Wire::Cama(CamaWire {
            atoms: a.atoms().labels().to_vec(),
            table: a
                .elements()
                .map(|x| (labels_of(a.atoms(), x), labels_of(a.atoms(), a.box_of(x))))
                .collect(),
        }),
        Document::Map(t) => Wire::Map(MapWire { table: t.clone() }),
    };
    serde_json::to_string(&wire).expect("documents serialize")
}

pub fn world_map_table(f: &WorldMap) -> MapTable {
    MapTable::Worlds(
        (0..f.source().len())
            .map(|x| {
                (
                    f.source().label(x).to_owned(),
                    f.target().label(f.apply(x)).to_owned(),
                )
            })
            .collect(),
    )
}

pub fn element_map_table(h: &ElementMap) -> MapTable {
    let (src, dst) = (h.source().atoms(), h.target().atoms());
    MapTable::Elements(
        h.source()
            .elements()
            .map(|x| (labels_of(src, x), labels_of(dst, h.apply(x))))
            .collect(),
    )
}

/// Resolves a label table to a total function between two world sets.
pub fn resolve_world_map(
    table: &MapTable,
    source: &WorldSet,
    target: &WorldSet,
) -> Result<WorldMap, CliError> {
    let MapTable::Worlds(entries) = table else {
        return Err(schema("map: expected world label pairs"));
    };
    let mut out: Vec<Option<usize>> = vec![None; source.len()];
    for (x, y) in entries {
        let xi = index(source, x, "map source")?;
        let yi = index(target, y, "map target")?;
        if out[xi].replace(yi).is_some() {
            return Err(schema(format!("map: world {x:?} mapped twice")));
        }
    }
    let table = out
        .into_iter()
        .enumerate()
        .map(|(x, v)| v.ok_or_else(|| schema(format!("map: world {:?} unmapped", source.label(x)))))
        .collect::<Result<Vec<_>, _>>()?;
    WorldMap::new(source.clone(), target.clone(), table).map_err(|e| schema(e.to_string()))
}

/// Resolves a label-list table to a total element map between two algebras.
pub fn resolve_element_map(
    table: &MapTable,
    source: &BoxAlgebra,
    target: &BoxAlgebra,
) -> Result<ElementMap, CliError> {
    let MapTable::Elements(entries) = table else {
        return Err(schema("map: expected element pairs (label lists)"));
    };
    let mut out: Vec<Option<Mask>> = vec![None; source.size()];
    for (x, y) in entries {
        let xm = subset(source.atoms(), x, "map source")?;
        let ym = subset(target.atoms(), y, "map target")?;
        if out[xm as usize].replace(ym).is_some() {
            return Err(schema(format!(
                "map: element {} mapped twice",
                source.atoms().render_set(xm)
            )));
        }
    }
    let table = out
        .into_iter()
        .enumerate()
        .map(|(x, v)| {
            v.ok_or_else(|| {
                schema(format!(
                    "map: element {} unmapped",
                    source.atoms().render_set(x as Mask)
                ))
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    ElementMap::new(source.clone(), target.clone(), table).map_err(|e| schema(e.to_string()))
}

/// Names accepted after `fx:`.
pub const FIXTURE_URIS: [&str; 9] = [
    "FX1_single",
    "FX2_M1",
    "FX2_M2",
    "FX2_f",
    "FX3_M1",
    "FX3_M2",
    "FX3_f",
    "FX4_fork",
    "FX5_idbox2",
];

pub fn fixture_document(name: &str) -> Result<Document, CliError> {
    Ok(match name {
        "FX1_single" => Document::Mkf(fixtures::fx1_single()),
        "FX2_M1" => Document::Mkf(fixtures::fx2_pair().source),
        "FX2_M2" => Document::Mkf(fixtures::fx2_pair().target),
        "FX2_f" => Document::Map(world_map_table(&fixtures::fx2_pair().map)),
        "FX3_M1" => Document::Mkf(fixtures::fx3_triple().source),
        "FX3_M2" => Document::Mkf(fixtures::fx3_triple().target),
        "FX3_f" => Document::Map(world_map_table(&fixtures::fx3_triple().map)),
        "FX4_fork" => Document::Mkf(fixtures::fx4_fork()),
        "FX5_idbox2" => Document::Cama(fixtures::fx5_idbox2()),
        _ => {
            return Err(CliError::Usage(format!(
                "unknown fixture {name:?}; available: {}",
                FIXTURE_URIS.join(", ")
            )))
        }
    })
}
