//! Acceptance checks, one line per criterion. Runs without the libtest
//! harness so the lines are always printed; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use serde_json::Value;

use modal_duality::bits::{is_singleton, is_subset, Mask};
use modal_duality::duality::{
    corollary_preimage_check, theta, verify_cama_nfr, verify_nfr_equivalence, verify_tau,
    verify_theta,
};
use modal_duality::fixtures;
use modal_duality::functor::{
    functor_f_obj, functor_g_obj, functor_h_obj, functor_j_obj, functor_k_obj, functor_n_obj,
    relation_for, underlying_u,
};
use modal_duality::generate::{
    enumerate_complete_nframes, enumerate_normal_algebras, random_mrframes, Filter, GenParams,
};
use modal_duality::model::{
    check_kappa_dd, validate_algebra, BoxAlgebra, Kappa, MRFrame, NfrViolation, WorldSet,
};
use modal_duality::morphism::{
    all_cba_homs, all_world_maps, is_mkf_hom, is_modal_hom, is_nfr_hom, Subject, Witness,
};
use modal_duality::order::{
    check_atom_characterizations, left_adjoint_preserves_atoms, p_element, Adjoints, ElementMap,
    Side,
};
use modal_duality_cli::run_command;

const SEED: u64 = 2024;

type Check = Result<String, String>;

/// Criterion number, check and optional time limit.
type Criterion = (u32, fn() -> Check, Option<Duration>);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: modal_duality::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn cli(args: &[&str]) -> (i32, String) {
    let argv = std::iter::once("mdual").chain(args.iter().copied());
    let o = run_command(argv, &mut std::io::empty());
    (o.code, o.stdout)
}

fn normal_algebras(max_atoms: usize) -> Result<Vec<BoxAlgebra>, String> {
    Ok(lib(enumerate_normal_algebras(&GenParams {
        max_atoms,
        ..GenParams::default()
    }))?
    .collect())
}

fn modal_homs(algebras: &[BoxAlgebra]) -> Vec<ElementMap> {
    let mut out = Vec::new();
    for a in algebras {
        for b in algebras {
            out.extend(all_cba_homs(a, b).filter(|h| is_modal_hom(h).verdict));
        }
    }
    out
}

fn counterexamples() -> Check {
    let (code, out) = cli(&["counterexamples", "--no-timestamp"]);
    ensure(code == 0, || format!("exit code {code}"))?;
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    let items = &v["items"];

    // the report must agree with the library on the same structures
    let u = lib(underlying_u(&fixtures::fx1_single()))?;
    ensure(
        matches!(
            modal_duality::model::upward_closure_violation(&u),
            Some(NfrViolation::NotUpwardClosed {
                world: 0,
                member: 0,
                superset: 1
            })
        ) && items[0]["violation"]["condition"] == "not_upward_closed",
        || "item 1: U(<{0},{∅}>) should fail upward closure at ∅ ⊆ {0}".into(),
    )?;

    let fx2 = fixtures::fx2_pair();
    let (u1, u2) = (
        lib(underlying_u(&fx2.source))?,
        lib(underlying_u(&fx2.target))?,
    );
    let mkf = lib(is_mkf_hom(&fx2.map, &fx2.source, &fx2.target))?;
    let nfr = lib(is_nfr_hom(&fx2.map, &u1, &u2))?;
    ensure(
        mkf.verdict
            && nfr.witness
                == Some(Witness::Nfr {
                    world: 0,
                    set: 0b11,
                })
            && items[1]["nfr_hom"]["witness"]["set"] == 0b11,
        || format!("item 2: mkf {mkf:?}, nfr {nfr:?}"),
    )?;

    let fx3 = fixtures::fx3_triple();
    let (u1, u2) = (
        lib(underlying_u(&fx3.source))?,
        lib(underlying_u(&fx3.target))?,
    );
    let mkf = lib(is_mkf_hom(&fx3.map, &fx3.source, &fx3.target))?;
    let nfr = lib(is_nfr_hom(&fx3.map, &u1, &u2))?;
    let detail = items[2]["mkf_hom"]["witness"]["detail"]
        .as_str()
        .unwrap_or("");
    ensure(
        nfr.verdict
            && mkf.witness
                == Some(Witness::MkfLift {
                    world: 0,
                    relation: 0,
                    offenders: vec![(0, 0)],
                })
            && detail.contains("0 Q 0"),
        || format!("item 3: mkf {mkf:?}, nfr {nfr:?}, detail {detail:?}"),
    )?;
    Ok("items (1), (2), (3) reproduced".into())
}

fn tau() -> Check {
    let mut per_size = [0usize; 4];
    for a in normal_algebras(3)? {
        let r = lib(verify_tau(&a))?;
        ensure(r.iso, || {
            format!("box table {:?}: {:?}", a.table(), r.witness())
        })?;
        per_size[a.atom_count()] += 1;
    }
    ensure(per_size[1..] == [2, 16, 512], || {
        format!("counts {per_size:?}")
    })?;
    Ok("2 + 16 + 512 algebras".into())
}

fn theta_suite() -> Check {
    let p = GenParams {
        max_worlds: 3,
        max_relations: 3,
        seed: SEED,
        count: 1000,
        close_under_intersection: true,
        ..GenParams::default()
    };
    let mut n = 0;
    for m in random_mrframes(&p) {
        ensure(check_kappa_dd(&m, Kappa::All).holds, || {
            format!("{m:?} is not directed")
        })?;
        let r = lib(verify_theta(&m))?;
        ensure(r.iso, || format!("{m:?}: {:?}", r.witness()))?;
        n += 1;
    }
    ensure(n == 1000, || format!("{n} frames"))?;

    let fork = fixtures::fx4_fork();
    let r = lib(verify_theta(&fork))?;
    let (t, fgm) = lib(theta(&fork))?;
    let w = r.witness().ok_or("θ is an isomorphism on the fork")?;
    ensure(!r.iso && w.replays(Subject::Mkf(&t, &fork, &fgm)), || {
        format!("fork witness {w:?} does not replay")
    })?;
    Ok(format!("1000 frames; fork fails with {w}"))
}

fn nfr_equivalence() -> Check {
    let mut exhaustive = 0;
    for n in 1..=2 {
        for z in lib(enumerate_complete_nframes(n, Kappa::All))? {
            let m = lib(functor_h_obj(&z, Kappa::All))?;
            let r = lib(verify_nfr_equivalence(&m, &z, Kappa::All))?;
            ensure(r.iso, || format!("{z:?}: {:?}", r.witness()))?;
            exhaustive += 1;
        }
    }
    for kappa in [Kappa::Finite(2), Kappa::Finite(3), Kappa::All] {
        let p = GenParams {
            seed: SEED,
            count: 1_000_000,
            filter: Filter::Directed(kappa),
            ..GenParams::default()
        };
        let frames: Vec<MRFrame> = random_mrframes(&p).take(500).collect();
        ensure(frames.len() == 500, || {
            format!("only {} {kappa}-directed frames", frames.len())
        })?;
        for m in frames {
            let z = lib(functor_n_obj(&m))?;
            let r = lib(verify_nfr_equivalence(&m, &z, kappa))?;
            ensure(r.iso, || format!("{m:?} at {kappa}: {:?}", r.witness()))?;
        }
    }
    Ok(format!(
        "{exhaustive} complete frames; 500 frames for each of κ = 2, 3, all"
    ))
}

fn cama_nfr() -> Check {
    let algebras = normal_algebras(2)?;
    for a in &algebras {
        let z = lib(functor_j_obj(a))?;
        let r = lib(verify_cama_nfr(a, &z, Kappa::All))?;
        ensure(r.iso, || {
            format!("box table {:?}: {:?}", a.table(), r.witness())
        })?;
        let route = lib(functor_n_obj(&lib(functor_f_obj(a))?))?;
        ensure(route == z, || format!("box table {:?}: J ≠ N∘F", a.table()))?;
    }
    let mut frames = 0;
    for n in 1..=2 {
        for z in lib(enumerate_complete_nframes(n, Kappa::All))? {
            let a = lib(functor_k_obj(&z))?;
            let r = lib(verify_cama_nfr(&a, &z, Kappa::All))?;
            ensure(r.iso, || format!("{z:?}: {:?}", r.witness()))?;
            let route = lib(functor_g_obj(&lib(functor_h_obj(&z, Kappa::All))?))?;
            ensure(route == a, || format!("{z:?}: K ≠ G∘H"))?;
            frames += 1;
        }
    }
    Ok(format!(
        "{} algebras, {frames} neighborhood frames",
        algebras.len()
    ))
}

fn lemmas() -> Check {
    let algebras = normal_algebras(2)?;
    let mut adjacency = 0;
    for a in algebras.iter().filter(|a| a.atom_count() == 2) {
        let elems: Vec<Mask> = a.elements().collect();
        let mut families: Vec<Vec<Mask>> = vec![vec![]];
        for i in 0..elems.len() {
            families.push(vec![elems[i]]);
            for j in i + 1..elems.len() {
                families.push(vec![elems[i], elems[j]]);
            }
        }
        for xs in &families {
            let r = relation_for(a, xs);
            for x in 0..2 {
                let p = lib(p_element(a, xs, 1 << x))?;
                for y in 0..2 {
                    ensure(r.contains(x, y) == (p >> y & 1 == 0), || {
                        format!("box table {:?}, X = {xs:?}, atoms {x}, {y}", a.table())
                    })?;
                    adjacency += 1;
                }
            }
        }
    }
    let homs = modal_homs(&algebras);
    for h in &homs {
        let adj = lib(Adjoints::of(h))?;
        let (src, dst) = (h.source(), h.target());
        let elems: Vec<Mask> = dst.elements().collect();
        for sel in 0..1u64 << elems.len() {
            let ys: Vec<Mask> = (0..elems.len())
                .filter(|&i| sel >> i & 1 == 1)
                .map(|i| elems[i])
                .collect();
            for b in dst.atom_elements() {
                let bound = adj.get(lib(p_element(dst, &ys, b))?, Side::Right);
                let lower = adj.get(b, Side::Left);
                ensure(is_singleton(lower), || {
                    format!("{:?}: h♭({b:#b}) is no atom", h.table())
                })?;
                let from = lower.trailing_zeros() as usize;
                let r = relation_for(src, &[bound]);
                let ok = lib(p_element(src, &[bound], lower))? == bound
                    && (0..src.atom_count()).all(|a| r.contains(from, a) == (bound >> a & 1 == 0));
                ensure(ok, || format!("{:?}, Y = {ys:?}, b = {b:#b}", h.table()))?;
            }
        }
    }
    Ok(format!(
        "{adjacency} adjacency cases; {} modal homomorphisms",
        homs.len()
    ))
}

fn corollary() -> Check {
    let p = GenParams {
        max_worlds: 3,
        seed: SEED,
        count: 400,
        ..GenParams::default()
    };
    let frames: Vec<MRFrame> = random_mrframes(&p).collect();
    let mut maps = 0;
    for pair in frames.chunks_exact(2) {
        let (m1, m2) = (&pair[0], &pair[1]);
        for f in all_world_maps(m1.worlds(), m2.worlds()) {
            let r = lib(corollary_preimage_check(&f, m1, m2))?;
            ensure(r.holds, || {
                format!("{m1:?} → {m2:?} by {:?}: {r:?}", f.table())
            })?;
            maps += 1;
        }
    }
    ensure(frames.len() == 400, || format!("{} frames", frames.len()))?;
    Ok(format!("200 pairs, {maps} maps"))
}

fn adjoints() -> Check {
    let powersets: Vec<BoxAlgebra> = (1..=3)
        .map(|n| lib(WorldSet::numbered(n).and_then(BoxAlgebra::identity)))
        .collect::<Result<_, _>>()?;
    let mut homs = 0;
    for a in &powersets {
        for b in &powersets {
            for f in all_cba_homs(a, b) {
                let adj = lib(Adjoints::of(&f))?;
                let right = |y: Mask| adj.get(y, Side::Right);
                let left = |y: Mask| adj.get(y, Side::Left);
                for x in a.elements() {
                    for y in b.elements() {
                        let galois = is_subset(f.apply(x), y) == is_subset(x, right(y))
                            && is_subset(y, f.apply(x)) == is_subset(left(y), x);
                        ensure(galois, || format!("{:?} at ({x:#b}, {y:#b})", f.table()))?;
                    }
                    ensure(
                        is_subset(x, right(f.apply(x))) && is_subset(left(f.apply(x)), x),
                        || format!("{:?}: unit fails at {x:#b}", f.table()),
                    )?;
                }
                for y in b.elements() {
                    ensure(
                        is_subset(f.apply(right(y)), y) && is_subset(y, f.apply(left(y))),
                        || format!("{:?}: counit fails at {y:#b}", f.table()),
                    )?;
                }
                ensure(lib(left_adjoint_preserves_atoms(&f))?, || {
                    format!("{:?}: left adjoint misses an atom", f.table())
                })?;
                homs += 1;
            }
        }
    }
    let mut algebras = 0;
    let small = (1..=2).flat_map(|n| {
        let w = WorldSet::numbered(n).expect("small");
        (0..1u64 << (n << n)).map(move |bits| {
            let table = (0..1 << n)
                .map(|x| bits >> (x * n) & ((1 << n) - 1))
                .collect();
            BoxAlgebra::new(w.clone(), table).expect("table within the carrier")
        })
    });
    for a in small.chain(normal_algebras(3)?) {
        let c = check_atom_characterizations(&a);
        ensure(c.agree, || {
            format!("box table {:?}: {:?}", a.table(), c.rows)
        })?;
        algebras += 1;
    }
    Ok(format!("{homs} homomorphisms; {algebras} algebras"))
}

fn non_normality() -> Check {
    let a = lib(functor_g_obj(&fixtures::fx4_fork()))?;
    let c = validate_algebra(&a, Kappa::All);
    ensure(
        c.monotone && !c.binary_additive && c.additive_witness == Some((0b010, 0b100)),
        || format!("{c:?}"),
    )?;
    let (code, out) = cli(&["props", "fx:FX4_fork", "--no-timestamp"]);
    let v: Value = serde_json::from_str(&out).map_err(|e| e.to_string())?;
    ensure(
        code == 0
            && v["properties"]["box_algebra"]["additive_witness"] == serde_json::json!([2, 4]),
        || format!("props report {out}"),
    )?;
    Ok("monotone, not additive at ({1}, {2})".into())
}

fn determinism() -> Check {
    let runs: [&[&str]; 4] = [
        &["suite", "--seed", "77", "--count", "100", "--no-timestamp"],
        &["counterexamples", "--no-timestamp"],
        &["roundtrip", "theta", "fx:FX4_fork", "--no-timestamp"],
        &["props", "fx:FX3_M1", "--no-timestamp"],
    ];
    for args in runs {
        let (a, b) = (cli(args), cli(args));
        ensure(a == b, || format!("{args:?} differs between runs"))?;
    }
    let p = GenParams {
        seed: SEED,
        count: 300,
        ..GenParams::default()
    };
    let first: Vec<MRFrame> = random_mrframes(&p).collect();
    ensure(first == random_mrframes(&p).collect::<Vec<_>>(), || {
        "generator differs between runs".into()
    })?;
    Ok("suite, counterexamples, roundtrip, props and generators".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        (1, counterexamples, Some(Duration::from_secs(1))),
        (2, tau, Some(Duration::from_secs(60))),
        (3, theta_suite, Some(Duration::from_secs(120))),
        (4, nfr_equivalence, None),
        (5, cama_nfr, None),
        (6, lemmas, Some(Duration::from_secs(30))),
        (7, corollary, None),
        (8, adjoints, None),
        (9, non_normality, None),
        (10, determinism, None),
    ];
    let mut failed = 0;
    for (n, run, limit) in criteria {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let result = match (result, limit) {
            (Ok(_), Some(limit)) if elapsed > limit => {
                Err(format!("took {elapsed:.2?}, limit {limit:?}"))
            }
            (r, _) => r,
        };
        match result {
            Ok(detail) => println!("criterion {n}: PASS ({elapsed:.2?}) {detail}"),
            Err(why) => {
                failed += 1;
                println!("criterion {n}: FAIL ({elapsed:.2?}) {why}");
            }
        }
    }
    println!("acceptance: {} of 10 criteria pass", 10 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
