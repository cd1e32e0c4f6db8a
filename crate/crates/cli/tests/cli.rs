use std::path::PathBuf;

use serde_json::Value;

use modal_duality::fixtures;
use modal_duality::generate::{enumerate_mrframes, GenParams};
use modal_duality::model::{BoxAlgebra, MRFrame, WorldSet};
use modal_duality::morphism::{all_world_maps, is_mkf_hom};
use modal_duality_cli::document::{canonical, fixture_document, world_map_table, FIXTURE_URIS};
use modal_duality_cli::{
    parse_document, run_command, serialize_document, CliError, Document, Outcome,
};

fn run(args: &[&str]) -> Outcome {
    run_with_stdin(args, "")
}

fn run_with_stdin(args: &[&str], stdin: &str) -> Outcome {
    let argv = std::iter::once("mdual").chain(args.iter().copied());
    run_command(argv, &mut stdin.as_bytes())
}

fn json(o: &Outcome) -> Value {
    serde_json::from_str(&o.stdout).unwrap_or_else(|e| panic!("{e}: {:?}", o))
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("mdual-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

const FX3_M1: &str = r#"{"kind":"mkf","worlds":["0","1","2"],"relations":[[["0","1"]],[["0","0"],["0","1"],["0","2"]]]}"#;

#[test]
fn parses_the_fx3_source_frame() {
    let doc = parse_document(FX3_M1).unwrap();
    assert_eq!(doc, Document::Mkf(fixtures::fx3_triple().source));
    assert_eq!(serialize_document(&doc), FX3_M1);
}

#[test]
fn parses_the_one_atom_identity_box() {
    let text = r#"{"kind":"cama","atoms":["a"],"box":[[[],[]],[["a"],["a"]]]}"#;
    let doc = parse_document(text).unwrap();
    let id = BoxAlgebra::identity(WorldSet::new(["a"]).unwrap()).unwrap();
    assert_eq!(doc, Document::Cama(id));
    assert_eq!(serialize_document(&doc), text);
}

#[test]
fn unknown_world_in_a_relation_names_the_pair() {
    let text = r#"{"kind":"mkf","worlds":["0","1"],"relations":[[["0","9"]]]}"#;
    let err = parse_document(text).unwrap_err();
    let CliError::Schema(msg) = &err else {
        panic!("{err:?}");
    };
    assert!(msg.contains(r#"["0","9"]"#), "{msg}");
    assert!(msg.contains(r#""9""#), "{msg}");
    let o = run_with_stdin(&["props", "-"], text);
    assert_eq!(o.code, 2);
    assert!(o.stderr.contains("schema error"), "{}", o.stderr);
}

#[test]
fn syntax_errors_carry_a_position() {
    let err = parse_document("{\"kind\":\"mkf\",\n  \"worlds\": [\"0\",]}").unwrap_err();
    let CliError::Parse { line, column, .. } = err else {
        panic!("{err:?}");
    };
    assert_eq!((line, column), (2, 18));
}

#[test]
fn strict_schema() {
    for bad in [
        r#"{"kind":"mkf","worlds":["0"],"relations":[[]],"extra":1}"#,
        r#"{"kind":"frame","worlds":["0"]}"#,
        r#"{"kind":"mkf","worlds":["0","0"],"relations":[[]]}"#,
        r#"{"kind":"mkf","worlds":["0"],"relations":[]}"#,
        r#"{"kind":"nfr","worlds":["0","1"],"neighborhoods":[["0",[]]]}"#,
        r#"{"kind":"nfr","worlds":["0"],"neighborhoods":[["0",[]],["0",[]]]}"#,
        r#"{"kind":"cama","atoms":["a"],"box":[[[],[]]]}"#,
        r#"{"kind":"cama","atoms":["a"],"box":[[[],[]],[["a"],[]],[["a"],["a"]]]}"#,
        r#"{"kind":"cama","atoms":["a"],"box":[[[],["b"]],[["a"],[]]]}"#,
        r#"{"kind":"kripke","worlds":[],"relation":[]}"#,
    ] {
        assert!(
            matches!(parse_document(bad), Err(CliError::Schema(_))),
            "{bad}: {:?}",
            parse_document(bad)
        );
    }
}

#[test]
fn serialization_is_canonical() {
    // worlds sort by label, duplicate pairs and relations collapse
    let messy = r#"{"relations":[[["b","a"],["a","b"],["a","b"]],[["a","b"],["b","a"]]],"worlds":["b","a"],"kind":"mkf"}"#;
    let doc = parse_document(messy).unwrap();
    let text = serialize_document(&doc);
    assert_eq!(
        text,
        r#"{"kind":"mkf","worlds":["a","b"],"relations":[[["a","b"],["b","a"]]]}"#
    );
    assert_eq!(parse_document(&text).unwrap(), doc);

    let nfr =
        r#"{"kind":"nfr","worlds":["y","x"],"neighborhoods":[["y",[["y","x"],[]]],["x",[["x"]]]]}"#;
    let text = serialize_document(&parse_document(nfr).unwrap());
    assert_eq!(
        text,
        r#"{"kind":"nfr","worlds":["x","y"],"neighborhoods":[["x",[["x"]]],["y",[[],["x","y"]]]]}"#
    );
}

#[test]
fn documents_round_trip() {
    for name in FIXTURE_URIS {
        let doc = fixture_document(name).unwrap();
        let text = serialize_document(&doc);
        let again = parse_document(&text).unwrap();
        assert_eq!(serialize_document(&again), text, "{name}");
        assert_eq!(again, canonical(&doc), "{name}");
    }
    let frames = enumerate_mrframes(&GenParams {
        max_worlds: 2,
        max_relations: 2,
        ..GenParams::default()
    })
    .unwrap();
    for m in frames {
        let doc = Document::Mkf(m);
        assert_eq!(parse_document(&serialize_document(&doc)).unwrap(), doc);
    }
}

#[test]
fn relabeled_objects_serialize_in_label_order() {
    let ws = WorldSet::new(["q", "p"]).unwrap();
    let m = MRFrame::new(
        ws,
        [modal_duality::model::Relation::from_pairs(2, [(0, 1)]).unwrap()],
    )
    .unwrap();
    assert_eq!(
        serialize_document(&Document::Mkf(m)),
        r#"{"kind":"mkf","worlds":["p","q"],"relations":[[["q","p"]]]}"#
    );
}

#[test]
fn counterexamples_reproduce() {
    let o = run(&["counterexamples", "--no-timestamp"]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["reproduced"], true);
    let items = v["items"].as_array().unwrap();
    assert_eq!(items.len(), 3);
    assert_eq!(items[0]["violation"]["condition"], "not_upward_closed");
    assert_eq!(items[1]["mkf_hom"]["verdict"], true);
    assert_eq!(items[1]["nfr_hom"]["witness"]["set"], 0b11);
    assert_eq!(items[2]["nfr_hom"]["verdict"], true);
    let w = &items[2]["mkf_hom"]["witness"];
    assert_eq!(w["condition"], "mkf_lift");
    assert!(w["detail"].as_str().unwrap().contains("0 Q 0"));
}

#[test]
fn theta_fails_on_the_fork() {
    let o = run(&["roundtrip", "theta", "fx:FX4_fork", "--no-timestamp"]);
    assert_eq!(o.code, 1, "{}", o.stderr);
    let v = json(&o);
    assert_eq!(v["report"]["iso"], false);
    assert_eq!(v["witness"]["condition"], "mkf_forth");
    assert_eq!(v["witness"]["world"], 0);
}

#[test]
fn g_then_tau_pipeline() {
    let g = run(&["apply", "G", "fx:FX3_M1"]);
    assert_eq!(g.code, 0, "{}", g.stderr);
    assert!(matches!(
        parse_document(&g.stdout).unwrap(),
        Document::Cama(_)
    ));
    let o = run_with_stdin(&["roundtrip", "tau", "-"], &g.stdout);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(json(&o)["report"]["iso"], true);
}

#[test]
fn apply_every_functor() {
    let k = r#"{"kind":"kripke","worlds":["0","1"],"relation":[["0","1"]]}"#;
    let cases = [
        ("G", "fx:FX2_M2", "cama"),
        ("N", "fx:FX2_M2", "nfr"),
        ("U", "fx:FX1_single", "nfr"),
        ("L", "fx:FX2_M1", "kripke"),
        ("F", "fx:FX5_idbox2", "mkf"),
        ("J", "fx:FX5_idbox2", "nfr"),
    ];
    for (f, input, kind) in cases {
        let o = run(&["apply", f, input]);
        assert_eq!(o.code, 0, "{f}: {}", o.stderr);
        assert_eq!(parse_document(&o.stdout).unwrap().kind(), kind, "{f}");
    }
    let m = run_with_stdin(&["apply", "M", "-"], k);
    assert_eq!(m.code, 0, "{}", m.stderr);
    let n = run_with_stdin(&["apply", "n", "-"], &m.stdout);
    let h = run_with_stdin(&["apply", "H", "-", "--kappa", "2"], &n.stdout);
    assert_eq!(h.code, 0, "{}", h.stderr);
    let z = run(&["apply", "J", "fx:FX5_idbox2"]);
    let a = run_with_stdin(&["apply", "K", "-"], &z.stdout);
    assert_eq!(
        parse_document(&a.stdout).unwrap(),
        fixture_document("FX5_idbox2").unwrap()
    );
}

#[test]
fn apply_rejects_wrong_inputs() {
    assert_eq!(run(&["apply", "G", "fx:FX5_idbox2"]).code, 2);
    assert_eq!(run(&["apply", "L", "fx:FX4_fork"]).code, 2);
    assert_eq!(run(&["apply", "X", "fx:FX4_fork"]).code, 2);
    assert_eq!(run(&["apply", "G", "fx:nope"]).code, 2);
    assert_eq!(run(&["apply", "G", "/nonexistent/file.json"]).code, 2);
    // G of the fork is not normal, so F refuses it
    let g = run(&["apply", "G", "fx:FX4_fork"]);
    assert_eq!(run_with_stdin(&["apply", "F", "-"], &g.stdout).code, 2);
}

#[test]
fn apply_writes_to_a_file() {
    let out = scratch("apply-out.json", "");
    let o = run(&[
        "apply",
        "G",
        "fx:FX4_fork",
        "-o",
        out.to_str().unwrap(),
        "--no-timestamp",
    ]);
    assert_eq!(o.code, 0, "{}", o.stderr);
    assert_eq!(json(&o)["kind"], "cama");
    let written = std::fs::read_to_string(&out).unwrap();
    assert_eq!(written, run(&["apply", "G", "fx:FX4_fork"]).stdout);
}

#[test]
fn check_hom_on_the_fixtures() {
    let o = run(&[
        "check-hom",
        "mkf",
        "fx:FX3_f",
        "fx:FX3_M1",
        "fx:FX3_M2",
        "--no-timestamp",
    ]);
    assert_eq!(o.code, 1, "{}", o.stderr);
    assert_eq!(json(&o)["witness"]["condition"], "mkf_lift");
    let o = run(&["check-hom", "mkf", "fx:FX2_f", "fx:FX2_M1", "fx:FX2_M2"]);
    assert_eq!(o.code, 0, "{}", o.stderr);

    let u1 = scratch("u1.json", &run(&["apply", "U", "fx:FX2_M1"]).stdout);
    let u2 = scratch("u2.json", &run(&["apply", "U", "fx:FX2_M2"]).stdout);
    let o = run(&[
        "check-hom",
        "nfr",
        "fx:FX2_f",
        u1.to_str().unwrap(),
        u2.to_str().unwrap(),
    ]);
    assert_eq!(o.code, 1);
    assert_eq!(json(&o)["witness"]["set"], 0b11);

    let o = run(&["check-hom", "nfr", "fx:FX2_f", "fx:FX2_M1", "fx:FX2_M2"]);
    assert_eq!(o.code, 2);
}

#[test]
fn check_hom_on_element_maps() {
    let id =
        r#"{"kind":"map","table":[[[],[]],[["a"],["a"]],[["b"],["b"]],[["a","b"],["a","b"]]]}"#;
    let swap =
        r#"{"kind":"map","table":[[[],[]],[["a"],["b"]],[["b"],["a"]],[["b","a"],["a","b"]]]}"#;
    let zero = r#"{"kind":"map","table":[[[],[]],[["a"],[]],[["b"],[]],[["a","b"],[]]]}"#;
    for (map, cba, modal) in [(id, 0, 0), (swap, 0, 0), (zero, 1, 1)] {
        let p = scratch("emap.json", map);
        let p = p.to_str().unwrap();
        assert_eq!(
            run(&["check-hom", "cba", p, "fx:FX5_idbox2", "fx:FX5_idbox2"]).code,
            cba,
            "{map}"
        );
        assert_eq!(
            run(&["check-hom", "modal", p, "fx:FX5_idbox2", "fx:FX5_idbox2"]).code,
            modal,
            "{map}"
        );
    }
    // a non-identity box breaks modality of the swap
    let lop = r#"{"kind":"cama","atoms":["a","b"],"box":[[[],[]],[["a"],["a"]],[["b"],[]],[["a","b"],["a"]]]}"#;
    let lop = scratch("lop.json", lop);
    let swap = scratch("swap.json", swap);
    let (l, s) = (lop.to_str().unwrap(), swap.to_str().unwrap());
    assert_eq!(run(&["check-hom", "cba", s, l, l]).code, 0);
    let o = run(&["check-hom", "modal", s, l, l]);
    assert_eq!(o.code, 1);
    assert_eq!(json(&o)["witness"]["condition"], "modal_box");
}

#[test]
fn kripke_check_hom() {
    let k = r#"{"kind":"kripke","worlds":["0","1"],"relation":[["0","1"]]}"#;
    let loop_ = r#"{"kind":"kripke","worlds":["0"],"relation":[["0","0"]]}"#;
    let k = scratch("k.json", k);
    let l = scratch("loop.json", loop_);
    let collapse = scratch(
        "collapse.json",
        r#"{"kind":"map","table":[["0","0"],["1","0"]]}"#,
    );
    let o = run(&[
        "check-hom",
        "kripke",
        collapse.to_str().unwrap(),
        k.to_str().unwrap(),
        l.to_str().unwrap(),
    ]);
    // 1 has no successor but its image does
    assert_eq!(o.code, 1, "{}", o.stderr);
    assert_eq!(json(&o)["witness"]["condition"], "kripke_lift");
}

#[test]
fn check_hom_verdicts_match_the_library() {
    let frames: Vec<MRFrame> = enumerate_mrframes(&GenParams {
        max_worlds: 2,
        max_relations: 1,
        ..GenParams::default()
    })
    .unwrap()
    .collect();
    for (i, m1) in frames.iter().enumerate().step_by(3) {
        for (j, m2) in frames.iter().enumerate().step_by(5) {
            let p1 = scratch(
                &format!("m{i}.json"),
                &serialize_document(&Document::Mkf(m1.clone())),
            );
            let p2 = scratch(
                &format!("m{j}.json"),
                &serialize_document(&Document::Mkf(m2.clone())),
            );
            for f in all_world_maps(m1.worlds(), m2.worlds()) {
                let map = serialize_document(&Document::Map(world_map_table(&f)));
                let o = run_with_stdin(
                    &[
                        "check-hom",
                        "mkf",
                        "-",
                        p1.to_str().unwrap(),
                        p2.to_str().unwrap(),
                    ],
                    &map,
                );
                let expected = is_mkf_hom(&f, m1, m2).unwrap().verdict;
                assert_eq!(
                    o.code,
                    if expected { 0 } else { 1 },
                    "{m1:?} {m2:?} {:?}",
                    f.table()
                );
            }
        }
    }
}

#[test]
fn map_tables_must_be_total_functions() {
    let m = scratch(
        "m2.json",
        r#"{"kind":"mkf","worlds":["0","1"],"relations":[[]]}"#,
    );
    let m = m.to_str().unwrap();
    for table in [
        r#"{"kind":"map","table":[["0","0"]]}"#,
        r#"{"kind":"map","table":[["0","0"],["0","1"],["1","1"]]}"#,
        r#"{"kind":"map","table":[["0","0"],["1","7"]]}"#,
    ] {
        let o = run_with_stdin(&["check-hom", "mkf", "-", m, m], table);
        assert_eq!(o.code, 2, "{table}");
    }
}

#[test]
fn props_reports_the_fork_algebra() {
    let o = run(&["props", "fx:FX4_fork", "--no-timestamp"]);
    assert_eq!(o.code, 0);
    let v = json(&o);
    let class = &v["properties"]["box_algebra"];
    assert_eq!(class["monotone"], true);
    assert_eq!(class["binary_additive"], false);
    assert_eq!(class["additive_witness"], serde_json::json!([0b010, 0b100]));
    assert_eq!(v["properties"]["directed"]["holds"], false);

    for input in ["fx:FX1_single", "fx:FX5_idbox2", "fx:FX3_f"] {
        assert_eq!(run(&["props", input]).code, 0, "{input}");
    }
    let u = run(&["apply", "U", "fx:FX1_single"]);
    let o = run_with_stdin(&["props", "-", "--kappa", "3", "--no-timestamp"], &u.stdout);
    assert_eq!(o.code, 0);
    assert_eq!(json(&o)["properties"]["complete"]["holds"], false);
}

#[test]
fn kappa_arguments() {
    assert_eq!(run(&["props", "fx:FX4_fork", "--kappa", "2"]).code, 0);
    assert_eq!(run(&["props", "fx:FX4_fork", "--kappa", "all"]).code, 0);
    assert_eq!(run(&["props", "fx:FX4_fork", "--kappa", "0"]).code, 2);
    assert_eq!(run(&["props", "fx:FX4_fork", "--kappa", "many"]).code, 2);
    // the fork is vacuously 2-directed, so the equivalence holds there
    assert_eq!(
        run(&["roundtrip", "nfr-equiv", "fx:FX4_fork", "--kappa", "2"]).code,
        0
    );
    assert_eq!(run(&["roundtrip", "nfr-equiv", "fx:FX4_fork"]).code, 2);
}

#[test]
fn roundtrips_on_fixtures() {
    assert_eq!(run(&["roundtrip", "tau", "fx:FX5_idbox2"]).code, 0);
    assert_eq!(run(&["roundtrip", "theta", "fx:FX3_M2"]).code, 0);
    assert_eq!(run(&["roundtrip", "cama-nfr", "fx:FX5_idbox2"]).code, 0);
    assert_eq!(run(&["roundtrip", "nfr-equiv", "fx:FX3_M2"]).code, 0);
    let z = run(&["apply", "N", "fx:FX3_M2"]);
    assert_eq!(
        run_with_stdin(&["roundtrip", "nfr-equiv", "-"], &z.stdout).code,
        0
    );
    assert_eq!(
        run_with_stdin(&["roundtrip", "cama-nfr", "-"], &z.stdout).code,
        0
    );
    assert_eq!(run(&["roundtrip", "tau", "fx:FX4_fork"]).code, 2);
}

#[test]
fn usage_errors_and_help() {
    assert_eq!(run(&[]).code, 2);
    assert_eq!(run(&["frobnicate"]).code, 2);
    assert_eq!(run(&["roundtrip", "sideways", "fx:FX4_fork"]).code, 2);
    assert_eq!(run(&["suite", "--caps", "worlds=9"]).code, 2);
    assert_eq!(run(&["suite", "--caps", "depth=1"]).code, 2);
    let help = run(&["--help"]);
    assert_eq!(help.code, 0);
    assert!(help.stdout.contains("counterexamples"));
}

#[test]
fn reports_are_reproducible() {
    let args = ["suite", "--seed", "9", "--count", "20", "--no-timestamp"];
    let a = run(&args);
    assert_eq!(a.code, 0, "{}", a.stdout);
    assert_eq!(a.stdout, run(&args).stdout);
    assert!(json(&a).get("timestamp").is_none());
    let stamped = run(&["suite", "--seed", "9", "--count", "20"]);
    assert!(json(&stamped)["timestamp"].is_u64());
    assert_ne!(
        a.stdout,
        run(&["suite", "--seed", "10", "--count", "20", "--no-timestamp"]).stdout
    );
}
