use std::fs;
use std::io::Read;
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use modal_duality::duality::{
    theta, verify_cama_nfr, verify_nfr_equivalence, verify_tau, verify_theta,
};
use modal_duality::fixtures;
use modal_duality::functor::{
    functor_f_obj, functor_g_obj, functor_h_obj, functor_j_obj, functor_k_obj, functor_l_obj,
    functor_m_obj, functor_n_obj, underlying_u, FunctorTag,
};
use modal_duality::model::{
    check_kappa_dd, check_nfr, upward_closure_violation, validate_algebra, Kappa, NfrViolation,
};
use modal_duality::morphism::{
    is_cba_hom, is_kripke_hom, is_mkf_hom, is_modal_hom, is_nfr_hom, MorphismReport, Subject,
    Witness,
};
use modal_duality::order::check_atom_characterizations;

use crate::document::{
    fixture_document, parse_document, resolve_element_map, resolve_world_map, serialize_document,
    world_map_table, Document,
};
use crate::suite::{run_suite, Caps, SuiteConfig};
use crate::{CliError, Outcome};

#[derive(Parser, Debug)]
#[command(name = "mdual", version, about = "Finite modal duality toolkit")]
struct Cli {
    /// Omit the `timestamp` field from reports.
    #[arg(long, global = true)]
    no_timestamp: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Apply a functor to an object document.
    Apply {
        functor: FunctorTag,
        /// File path, `-` for stdin, or `fx:NAME`.
        input: String,
        #[arg(short, long)]
        output: Option<String>,
        #[arg(long, default_value = "all")]
        kappa: Kappa,
    },
    /// Check whether a map is a morphism of the given category.
    CheckHom {
        category: Category,
        map: String,
        source: String,
        target: String,
    },
    /// Check that the natural maps of a duality are isomorphisms.
    Roundtrip {
        direction: RoundTrip,
        input: String,
        #[arg(long, default_value = "all")]
        kappa: Kappa,
    },
    /// Report structural properties of an object.
    Props {
        input: String,
        #[arg(long, default_value = "all")]
        kappa: Kappa,
    },
    /// Reproduce the three failures of the forgetful construction.
    Counterexamples,
    /// Run the seeded and exhaustive verification sweeps.
    Suite {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 200)]
        count: usize,
        /// Comma-separated `worlds=N,atoms=N,relations=N`.
        #[arg(long, value_parser = parse_caps, default_value = "worlds=3,atoms=3,relations=3")]
        caps: Caps,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Category {
    Kripke,
    Mkf,
    Nfr,
    Cba,
    Modal,
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum RoundTrip {
    Tau,
    Theta,
    NfrEquiv,
    CamaNfr,
}

fn parse_caps(s: &str) -> Result<Caps, String> {
    let mut caps = Caps::default();
    for part in s.split(',').filter(|p| !p.is_empty()) {
        let (key, value) = part
            .split_once('=')
            .ok_or_else(|| format!("expected key=value, got {part:?}"))?;
        let value: usize = value
            .parse()
            .map_err(|_| format!("{key}: expected a positive integer, got {value:?}"))?;
        if value == 0 {
            return Err(format!("{key}: must be at least 1"));
        }
        match key {
            "worlds" => caps.worlds = value,
            "atoms" => caps.atoms = value,
            "relations" => caps.relations = value,
            _ => {
                return Err(format!(
                    "unknown cap {key:?}; expected worlds, atoms or relations"
                ))
            }
        }
    }
    if caps.worlds > modal_duality::generate::EXHAUSTIVE_MAX {
        return Err(format!(
            "worlds: at most {} supported",
            modal_duality::generate::EXHAUSTIVE_MAX
        ));
    }
    Ok(caps)
}

pub(crate) fn run<I, S>(argv: I, stdin: &mut dyn Read) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                Outcome {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let mut ctx = Context {
        stdin,
        timestamp: !cli.no_timestamp,
    };
    match ctx.dispatch(cli.command) {
        Ok(o) => o,
        Err(e) => Outcome::error(&e),
    }
}

struct Context<'a> {
    stdin: &'a mut dyn Read,
    timestamp: bool,
}

fn report(code: i32, mut body: Value, timestamp: bool) -> Outcome {
    if timestamp {
        let secs = SystemTime::now()
            .duration_since(UNIX_EPOCH)
            .map_or(0, |d| d.as_secs());
        body["timestamp"] = json!(secs);
    }
    let mut stdout = serde_json::to_string_pretty(&body).expect("reports serialize");
    stdout.push('\n');
    Outcome {
        code,
        stdout,
        stderr: String::new(),
    }
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn verdict_code(ok: bool) -> i32 {
    if ok {
        0
    } else {
        1
    }
}

fn wrong_kind(what: &str, expected: &str, doc: &Document) -> CliError {
    CliError::Usage(format!(
        "{what} expects {expected}, got a {} document",
        doc.kind()
    ))
}

fn witness_value(w: Option<&Witness>, detail: Option<String>) -> Value {
    match w {
        None => Value::Null,
        Some(w) => {
            let mut v = to_value(w);
            v["detail"] = json!(detail.unwrap_or_else(|| w.to_string()));
            v
        }
    }
}

fn hom_value(r: &MorphismReport, subject: Subject<'_>) -> Value {
    json!({
        "verdict": r.verdict,
        "witness": witness_value(r.witness.as_ref(), r.witness.as_ref().map(|w| w.describe(subject))),
    })
}

impl Context<'_> {
    fn load(&mut self, source: &str) -> Result<Document, CliError> {
        if let Some(name) = source.strip_prefix("fx:") {
            return fixture_document(name);
        }
        let text = if source == "-" {
            let mut s = String::new();
            self.stdin
                .read_to_string(&mut s)
                .map_err(|e| CliError::Io {
                    path: "<stdin>".into(),
                    message: e.to_string(),
                })?;
            s
        } else {
            fs::read_to_string(source).map_err(|e| CliError::Io {
                path: source.into(),
                message: e.to_string(),
            })?
        };
        parse_document(&text)
    }

    fn dispatch(&mut self, command: Command) -> Result<Outcome, CliError> {
        match command {
            Command::Apply {
                functor,
                input,
                output,
                kappa,
            } => self.apply(functor, &input, output.as_deref(), kappa),
            Command::CheckHom {
                category,
                map,
                source,
                target,
            } => self.check_hom(category, &map, &source, &target),
            Command::Roundtrip {
                direction,
                input,
                kappa,
            } => self.roundtrip(direction, &input, kappa),
            Command::Props { input, kappa } => self.props(&input, kappa),
            Command::Counterexamples => counterexamples(self.timestamp),
            Command::Suite { seed, count, caps } => {
                let r = run_suite(&SuiteConfig { seed, count, caps })?;
                let body = json!({ "command": "suite", "report": to_value(&r) });
                Ok(report(verdict_code(r.verdict), body, self.timestamp))
            }
        }
    }

    fn apply(
        &mut self,
        functor: FunctorTag,
        input: &str,
        output: Option<&str>,
        kappa: Kappa,
    ) -> Result<Outcome, CliError> {
        let doc = self.load(input)?;
        let out = match (functor, &doc) {
            (FunctorTag::G, Document::Mkf(m)) => Document::Cama(functor_g_obj(m)?),
            (FunctorTag::F, Document::Cama(a)) => Document::Mkf(functor_f_obj(a)?),
            (FunctorTag::N, Document::Mkf(m)) => Document::Nfr(functor_n_obj(m)?),
            (FunctorTag::U, Document::Mkf(m)) => Document::Nfr(underlying_u(m)?),
            (FunctorTag::H, Document::Nfr(z)) => Document::Mkf(functor_h_obj(z, kappa)?),
            (FunctorTag::J, Document::Cama(a)) => Document::Nfr(functor_j_obj(a)?),
            (FunctorTag::K, Document::Nfr(z)) => Document::Cama(functor_k_obj(z)?),
            (FunctorTag::M, Document::Kripke(k)) => Document::Mkf(functor_m_obj(k)),
            (FunctorTag::L, Document::Mkf(m)) => Document::Kripke(functor_l_obj(m)?),
            (tag, doc) => {
                let expected = match tag {
                    FunctorTag::G | FunctorTag::N | FunctorTag::U | FunctorTag::L => "an mkf",
                    FunctorTag::F | FunctorTag::J => "a cama",
                    FunctorTag::H | FunctorTag::K => "an nfr",
                    FunctorTag::M => "a kripke",
                };
                return Err(wrong_kind(&format!("functor {tag}"), expected, doc));
            }
        };
        let mut text = serialize_document(&out);
        text.push('\n');
        match output {
            None => Ok(Outcome {
                code: 0,
                stdout: text,
                stderr: String::new(),
            }),
            Some(path) => {
                fs::write(path, &text).map_err(|e| CliError::Io {
                    path: path.into(),
                    message: e.to_string(),
                })?;
                let body = json!({
                    "command": "apply",
                    "functor": functor.name(),
                    "kind": out.kind(),
                    "output": path,
                });
                Ok(report(0, body, self.timestamp))
            }
        }
    }

    fn check_hom(
        &mut self,
        category: Category,
        map: &str,
        source: &str,
        target: &str,
    ) -> Result<Outcome, CliError> {
        let map = match self.load(map)? {
            Document::Map(t) => t,
            other => return Err(wrong_kind("the map argument", "a map", &other)),
        };
        let (src, dst) = (self.load(source)?, self.load(target)?);
        let (name, result) = match (category, &src, &dst) {
            (Category::Kripke, Document::Kripke(k1), Document::Kripke(k2)) => {
                let f = resolve_world_map(&map, k1.worlds(), k2.worlds())?;
                let r = is_kripke_hom(&f, k1, k2)?;
                ("kripke", hom_value(&r, Subject::Kripke(&f, k1, k2)))
            }
            (Category::Mkf, Document::Mkf(m1), Document::Mkf(m2)) => {
                let f = resolve_world_map(&map, m1.worlds(), m2.worlds())?;
                let r = is_mkf_hom(&f, m1, m2)?;
                ("mkf", hom_value(&r, Subject::Mkf(&f, m1, m2)))
            }
            (Category::Nfr, Document::Nfr(z1), Document::Nfr(z2)) => {
                let f = resolve_world_map(&map, z1.worlds(), z2.worlds())?;
                let r = is_nfr_hom(&f, z1, z2)?;
                ("nfr", hom_value(&r, Subject::Nfr(&f, z1, z2)))
            }
            (Category::Cba | Category::Modal, Document::Cama(a), Document::Cama(b)) => {
                let h = resolve_element_map(&map, a, b)?;
                let (name, r) = match category {
                    Category::Cba => ("cba", is_cba_hom(&h)),
                    _ => ("modal", is_modal_hom(&h)),
                };
                (name, hom_value(&r, Subject::Element(&h)))
            }
            (c, s, t) => {
                let expected = match c {
                    Category::Kripke => "kripke",
                    Category::Mkf => "mkf",
                    Category::Nfr => "nfr",
                    Category::Cba | Category::Modal => "cama",
                };
                return Err(CliError::Usage(format!(
                    "{expected} homomorphisms need two {expected} documents, got {} and {}",
                    s.kind(),
                    t.kind()
                )));
            }
        };
        let code = verdict_code(result["verdict"] == json!(true));
        let mut body = result;
        body["command"] = json!("check-hom");
        body["category"] = json!(name);
        Ok(report(code, body, self.timestamp))
    }

    fn roundtrip(
        &mut self,
        direction: RoundTrip,
        input: &str,
        kappa: Kappa,
    ) -> Result<Outcome, CliError> {
        let doc = self.load(input)?;
        let (r, detail) = match (direction, &doc) {
            (RoundTrip::Tau, Document::Cama(a)) => (verify_tau(a)?, None),
            (RoundTrip::Theta, Document::Mkf(m)) => {
                let r = verify_theta(m)?;
                let detail = match r.witness() {
                    Some(w) => {
                        let (t, fgm) = theta(m)?;
                        Some(w.describe(Subject::Mkf(&t, m, &fgm)))
                    }
                    None => None,
                };
                (r, detail)
            }
            (RoundTrip::NfrEquiv, Document::Mkf(m)) => {
                (verify_nfr_equivalence(m, &functor_n_obj(m)?, kappa)?, None)
            }
            (RoundTrip::NfrEquiv, Document::Nfr(z)) => (
                verify_nfr_equivalence(&functor_h_obj(z, kappa)?, z, kappa)?,
                None,
            ),
            (RoundTrip::CamaNfr, Document::Cama(a)) => {
                (verify_cama_nfr(a, &functor_j_obj(a)?, kappa)?, None)
            }
            (RoundTrip::CamaNfr, Document::Nfr(z)) => {
                (verify_cama_nfr(&functor_k_obj(z)?, z, kappa)?, None)
            }
            (d, doc) => {
                let expected = match d {
                    RoundTrip::Tau => "a cama",
                    RoundTrip::Theta => "an mkf",
                    RoundTrip::NfrEquiv => "an mkf or nfr",
                    RoundTrip::CamaNfr => "a cama or nfr",
                };
                return Err(wrong_kind("this round trip", expected, doc));
            }
        };
        let body = json!({
            "command": "roundtrip",
            "kappa": kappa.to_string(),
            "report": to_value(&r),
            "witness": witness_value(r.witness(), detail),
        });
        Ok(report(verdict_code(r.iso), body, self.timestamp))
    }

    fn props(&mut self, input: &str, kappa: Kappa) -> Result<Outcome, CliError> {
        let doc = self.load(input)?;
        let props = match &doc {
            Document::Kripke(k) => json!({
                "worlds": k.worlds().len(),
                "edges": k.relation().len(),
            }),
            Document::Mkf(m) => {
                let a = functor_g_obj(m)?;
                json!({
                    "worlds": m.len(),
                    "relations": m.relations().len(),
                    "completely_directed": m.is_completely_directed(),
                    "directed": to_value(&check_kappa_dd(m, kappa)),
                    "box_algebra": to_value(&validate_algebra(&a, kappa)),
                })
            }
            Document::Nfr(z) => json!({
                "worlds": z.len(),
                "complete": to_value(&check_nfr(z, kappa)),
                "upward_closure_violation": to_value(&upward_closure_violation(z)),
            }),
            Document::Cama(a) => json!({
                "atoms": a.atom_count(),
                "class": to_value(&validate_algebra(a, kappa)),
                "atom_characterizations_agree": check_atom_characterizations(a).agree,
            }),
            Document::Map(t) => json!({
                "entries": match t {
                    crate::MapTable::Worlds(e) => e.len(),
                    crate::MapTable::Elements(e) => e.len(),
                },
            }),
        };
        let body = json!({
            "command": "props",
            "kind": doc.kind(),
            "kappa": kappa.to_string(),
            "properties": props,
        });
        Ok(report(0, body, self.timestamp))
    }
}

fn counterexamples(timestamp: bool) -> Result<Outcome, CliError> {
    let fx1 = fixtures::fx1_single();
    let u = underlying_u(&fx1)?;
    let violation = upward_closure_violation(&u);
    let item1_ok = matches!(violation, Some(NfrViolation::NotUpwardClosed { .. }))
        && !check_nfr(&u, Kappa::Finite(1)).holds;
    let item1 = json!({
        "item": 1,
        "claim": "U(<{0},{∅}>) is not upward closed",
        "reproduced": item1_ok,
        "frame": serialize_value(&Document::Mkf(fx1)),
        "image": serialize_value(&Document::Nfr(u.clone())),
        "violation": to_value(&violation),
        "detail": match violation {
            Some(NfrViolation::NotUpwardClosed { world, member, superset }) => format!(
                "{} ∈ N({}) but its superset {} is not",
                u.worlds().render_set(member),
                u.worlds().label(world),
                u.worlds().render_set(superset)
            ),
            _ => "no violation".to_owned(),
        },
    });

    let fx2 = fixtures::fx2_pair();
    let (u1, u2) = (underlying_u(&fx2.source)?, underlying_u(&fx2.target)?);
    let mkf = is_mkf_hom(&fx2.map, &fx2.source, &fx2.target)?;
    let nfr = is_nfr_hom(&fx2.map, &u1, &u2)?;
    let item2_ok =
        mkf.verdict && matches!(nfr.witness, Some(Witness::Nfr { set, .. }) if set == 0b11);
    let item2 = json!({
        "item": 2,
        "claim": "f: 0 ↦ 0 is a frame homomorphism but U(f) is not a neighborhood homomorphism",
        "reproduced": item2_ok,
        "source": serialize_value(&Document::Mkf(fx2.source.clone())),
        "target": serialize_value(&Document::Mkf(fx2.target.clone())),
        "map": to_value(&world_map_table(&fx2.map)),
        "mkf_hom": hom_value(&mkf, Subject::Mkf(&fx2.map, &fx2.source, &fx2.target)),
        "nfr_hom": hom_value(&nfr, Subject::Nfr(&fx2.map, &u1, &u2)),
    });

    let fx3 = fixtures::fx3_triple();
    let (u1, u2) = (underlying_u(&fx3.source)?, underlying_u(&fx3.target)?);
    let mkf = is_mkf_hom(&fx3.map, &fx3.source, &fx3.target)?;
    let nfr = is_nfr_hom(&fx3.map, &u1, &u2)?;
    let item3_ok = nfr.verdict
        && matches!(
            &mkf.witness,
            Some(Witness::MkfLift { world: 0, relation: 0, offenders }) if offenders == &[(0, 0)]
        );
    let item3 = json!({
        "item": 3,
        "claim": "U(f) is a neighborhood homomorphism but f is not a frame homomorphism",
        "reproduced": item3_ok,
        "source": serialize_value(&Document::Mkf(fx3.source.clone())),
        "target": serialize_value(&Document::Mkf(fx3.target.clone())),
        "map": to_value(&world_map_table(&fx3.map)),
        "mkf_hom": hom_value(&mkf, Subject::Mkf(&fx3.map, &fx3.source, &fx3.target)),
        "nfr_hom": hom_value(&nfr, Subject::Nfr(&fx3.map, &u1, &u2)),
    });

    let all = item1_ok && item2_ok && item3_ok;
    let body = json!({
        "command": "counterexamples",
        "items": [item1, item2, item3],
        "reproduced": all,
    });
    Ok(report(verdict_code(all), body, timestamp))
}

fn serialize_value(doc: &Document) -> Value {
    serde_json::from_str(&serialize_document(doc)).expect("documents are valid JSON")
}
