//! One test per acceptance criterion. Every comparison is exact; the only
//! tolerances are the wall-clock limits below.

use std::collections::{BTreeMap, BTreeSet};
use std::process::Command;
use std::sync::Arc;
use std::time::{Duration, Instant};

use dgar::ar::{ArEngine, Decision};
use dgar::catalog;
use dgar::constructions::{build_tree, case2_alpha, distinct_component_certificate, PairReason, Stats, Step};
use dgar::dg::{DGAlgebra, DGModule, DGMorphism};
use dgar::linalg::{Matrix, Scalar};
use dgar::quiver::{sphere_module, SphereObject};
use dgar::resolution::{compactness_certificate, derived_tensor, phi, resolve, CompactnessVerdict, ResolutionBudget};
use dgar::sample::random_compact;
use serde_json::Value;

const GORENSTEIN_LIMIT: Duration = Duration::from_secs(10);
const QUIVER_LIMIT: Duration = Duration::from_secs(30);
const TREE_LIMIT: Duration = Duration::from_secs(60);
const SEED: u64 = 2024;

fn budget() -> ResolutionBudget {
    ResolutionBudget::default()
}

fn dgar(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_dgar")).args(args).output().expect("running dgar");
    (out.status.code().unwrap_or(-1), String::from_utf8(out.stdout).unwrap())
}

fn dgar_json(args: &[&str]) -> Value {
    let (code, text) = dgar(args);
    assert_eq!(code, 0, "dgar {args:?}");
    serde_json::from_str(&text).unwrap()
}

fn cone_of_top(r: &Arc<DGAlgebra>) -> DGModule {
    let reg = DGModule::regular(r.clone());
    let f = r.field;
    let mut map = Matrix::zeros(f, r.dim(), r.dim());
    map.set(r.dim() - 1, r.unit, f.one());
    DGMorphism::new(reg.suspend(-r.top), reg, map).cone().module
}

#[test]
fn criterion_01_gorenstein_cross_validation() {
    let start = Instant::now();
    for name in catalog::names() {
        let report = dgar_json(&["gorenstein", name, "--seed", "1"]);
        let r = &report["result"];
        assert_eq!(r["agreement"], Value::Bool(true), "{name}");
        assert_eq!(r["verdict"], Value::Bool(name != "wedge"), "{name}");
        assert_eq!(r["cond1"]["holds"], r["cond5"]["holds"], "{name}");
    }
    let elapsed = start.elapsed();
    assert!(elapsed < GORENSTEIN_LIMIT, "took {elapsed:?}");
}

/// Weakly connected components of a DOT digraph, counting every edge.
fn dot_components(dot: &str) -> usize {
    let mut parent: BTreeMap<String, String> = BTreeMap::new();
    fn find(p: &mut BTreeMap<String, String>, x: &str) -> String {
        let up = p.get(x).cloned().unwrap_or_else(|| x.to_string());
        if up == x {
            return up;
        }
        let root = find(p, &up);
        p.insert(x.to_string(), root.clone());
        root
    }
    for line in dot.lines().map(str::trim) {
        let quoted: Vec<&str> = line.split('"').skip(1).step_by(2).collect();
        if line.contains("->") {
            let (a, b) = (find(&mut parent, quoted[0]), find(&mut parent, quoted[1]));
            parent.insert(a, b);
        } else if line.contains("[label=") && !quoted.is_empty() {
            parent.entry(quoted[0].to_string()).or_insert_with(|| quoted[0].to_string());
        }
    }
    let keys: Vec<String> = parent.keys().cloned().collect();
    keys.iter().map(|k| find(&mut parent, k)).collect::<BTreeSet<_>>().len()
}

#[test]
fn criterion_02_sphere_quiver_components() {
    let start = Instant::now();
    for (d, want) in [("3", 2u64), ("4", 3)] {
        let r = &dgar_json(&["sphere-quiver", d, "6", "4"])["result"];
        assert_eq!(r["components"].as_u64(), Some(want));
        assert_eq!(r["window_failures"].as_array().unwrap().len(), 0);
        assert!(r["windows_checked"].as_u64().unwrap() > 0);
        assert_eq!(r["labels_unit"], Value::Bool(true));
        assert_eq!(r["stable"]["holds"], Value::Bool(true));
        let (code, dot) = dgar(&["sphere-quiver", d, "6", "4", "--format", "dot"]);
        assert_eq!(code, 0);
        assert_eq!(dot_components(&dot) as u64, want);
        assert_eq!(dgar(&["sphere-quiver", d, "6", "4", "--format", "dot"]).1, dot);
    }
    let elapsed = start.elapsed();
    assert!(elapsed < QUIVER_LIMIT, "took {elapsed:?}");
}

#[test]
fn criterion_03_row_law() {
    for name in ["sphere-3", "sphere-4"] {
        let a = catalog::by_name(name).unwrap();
        for row in 1..=3u32 {
            for j in [-3, 0, 2] {
                let x = sphere_module(&a, SphereObject { j, m: row - 1 }).unwrap().realize();
                assert_eq!(phi(&x, &budget()).unwrap(), row as usize, "{name} row {row} j {j}");
            }
        }
    }
}

fn corpus() -> Vec<(String, DGModule)> {
    let mut out = Vec::new();
    for name in ["sphere-2", "sphere-3", "sphere-4", "sphere-7", "cp2-like", "s2xs2"] {
        let a = catalog::by_name(name).unwrap();
        let reg = DGModule::regular(a.clone());
        out.push((format!("{name}: R"), reg.clone()));
        out.push((format!("{name}: cone of the top class"), cone_of_top(&a)));
        out.push((format!("{name}: R ⊕ Σ²R"), reg.direct_sum(&reg.suspend(2)).unwrap()));
    }
    for (k, name) in ["cp2-like", "s2xs2"].iter().enumerate() {
        let a = catalog::by_name(name).unwrap();
        out.push((format!("{name}: random"), random_compact(&a, 3, 77 + k as u64, &budget()).unwrap().realize()));
    }
    out
}

#[test]
fn criterion_04_tau_shift() {
    let corpus = corpus();
    assert_eq!(corpus.len(), 20);
    for (label, m) in corpus {
        let d = m.algebra.top;
        let e = ArEngine::new(m.algebra.clone(), budget(), SEED).unwrap();
        let t = e.tau(&m).unwrap();
        assert_eq!(t.cohomology_dims(), m.cohomology_dims().suspended(d - 1), "{label}");
    }
}

#[test]
fn criterion_05_triangle_laws() {
    let s3 = catalog::by_name("sphere-3").unwrap();
    let cp2 = catalog::by_name("cp2-like").unwrap();
    let s22 = catalog::by_name("s2xs2").unwrap();
    let cases: Vec<(Arc<DGAlgebra>, DGModule)> = vec![
        (s3.clone(), DGModule::regular(s3.clone())),
        (s3.clone(), sphere_module(&s3, SphereObject { j: 0, m: 1 }).unwrap().realize()),
        (s3.clone(), sphere_module(&s3, SphereObject { j: 1, m: 2 }).unwrap().realize()),
        (cp2.clone(), DGModule::regular(cp2.clone())),
        (cp2.clone(), cone_of_top(&cp2)),
        (s22.clone(), DGModule::regular(s22.clone())),
    ];
    for (a, p) in cases {
        let e = ArEngine::new(a.clone(), budget(), SEED).unwrap();
        let t = e.ar_triangle_ending_at(&p).unwrap();
        assert!(!t.connecting.is_zero());
        let s = t.summary(&e.budget).unwrap();
        assert_eq!(s.phi[0], s.phi[2], "{}", a.name);
        assert!(s.phi_additive, "{}", a.name);
        let parts = e.split_summands(&t.middle).unwrap();
        let arrow_sum: usize = parts.iter().map(|x| x.multiplicity * x.resolution.phi()).sum();
        assert_eq!(arrow_sum, s.phi[0] + s.phi[2], "{}", a.name);
        for x in &parts {
            assert_eq!(dgar::ar::is_isomorphic_resolved(&x.resolution, &t.end, SEED).unwrap(), Decision::No);
        }
    }
}

#[test]
fn criterion_06_growth_laws() {
    let start = Instant::now();
    let a = catalog::by_name("cp2-like").unwrap();
    let (d, e) = (a.top, 2);
    let nodes = build_tree(&a, e, 3, &budget(), SEED).unwrap();
    assert_eq!(nodes.len(), 11);
    for n in &nodes {
        let r = n.word.len() as i32;
        let s = n.word.iter().filter(|&&w| w == Step::One).count() as i32;
        assert!(n.laws_hold, "{}", n.id);
        assert_eq!(n.stats.amp, d + s * (d - 1) + (r - s) * (e - 1), "{}", n.id);
        assert_eq!(n.stats.phi, n.word.len() + 1, "{}", n.id);
        assert_eq!(n.stats.inf, 0);
        assert!(n.word.windows(2).all(|w| w != [Step::Two, Step::Two]));
    }
    let elapsed = start.elapsed();
    assert!(elapsed < TREE_LIMIT, "took {elapsed:?}");
}

#[test]
fn criterion_07_many_components() {
    let a = catalog::by_name("cp2-like").unwrap();
    let nodes = build_tree(&a, 2, 3, &budget(), SEED).unwrap();
    let family: Vec<_> = nodes.iter().skip(1).map(|n| (n.id.clone(), n.module.clone().unwrap())).collect();
    let cert = distinct_component_certificate(&family, &budget(), SEED).unwrap();
    assert!(cert.amplitude_lower_bound >= 3, "{:?}", cert.amplitude_witnesses);
}

#[test]
fn criterion_08_projective_family() {
    let a = catalog::by_name("s2xs2").unwrap();
    let f = a.field;
    let x = resolve(&DGModule::regular(a.clone()), &budget()).unwrap().semifree;
    let alpha = |c: [i64; 2]| -> Vec<Scalar> { c.iter().map(|&v| f.from_i64(v)).collect() };
    let family: Vec<_> = [("x", [1, 0]), ("y", [0, 1]), ("x+y", [1, 1])]
        .iter()
        .map(|(n, c)| (n.to_string(), case2_alpha(&x, 2, &alpha(*c), &budget()).unwrap()))
        .collect();
    let stats: Vec<Stats> = family.iter().map(|(_, m)| Stats::of(m).unwrap()).collect();
    assert!(stats.iter().all(|s| (s.phi, s.amp, s.inf) == (stats[0].phi, stats[0].amp, stats[0].inf)));
    let cert = distinct_component_certificate(&family, &budget(), SEED).unwrap();
    assert!(cert.pairs.iter().all(|p| p.reason == PairReason::NotIsomorphic));
    assert_eq!(cert.lower_bound, 3);
    for (name, c) in [("x", [1, 0]), ("y", [0, 1]), ("x+y", [1, 1])] {
        let base = family.iter().find(|m| m.0 == name).unwrap().1.realize();
        for k in [2, -1] {
            let scaled = case2_alpha(&x, 2, &alpha([c[0] * k, c[1] * k]), &budget()).unwrap().realize();
            assert_eq!(dgar::ar::is_isomorphic(&base, &scaled, &budget(), SEED).unwrap(), Decision::Yes);
        }
    }
}

#[test]
fn criterion_09_residue_field_is_not_compact() {
    let a = catalog::by_name("sphere-3").unwrap();
    let cert = compactness_certificate(&DGModule::residue_field(a), &ResolutionBudget::with_generators(4)).unwrap();
    assert_eq!(cert.verdict, CompactnessVerdict::NotWithinBudget);
    assert!(cert.trace.passes.iter().all(|p| p.1 == 1));
    assert_eq!(cert.trace.suspension_indices(), vec![0, -2, -4, -6]);
    let (code, text) = dgar(&["resolve", "sphere-3", "k", "--budget-generators", "4"]);
    assert_eq!(code, 3);
    let r: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(r["result"]["suspension_indices"], serde_json::json!([0, -2, -4, -6]));
    assert_eq!(r["result"]["certificate"]["verdict"], "not-within-budget");
}

#[test]
fn criterion_10_infima_add() {
    let mut checked = 0;
    for name in ["sphere-3", "cp2-like"] {
        let a = catalog::by_name(name).unwrap();
        for k in 0..25u64 {
            let m = random_compact(&a, 3, SEED + 2 * k, &budget()).unwrap().realize();
            let n = random_compact(&a, 3, SEED + 2 * k + 1, &budget()).unwrap().realize();
            let t = derived_tensor(&m.commutative_flip().unwrap(), &n, &budget()).unwrap();
            let inf = t.cohomology().dims().inf().unwrap();
            assert_eq!(inf, m.cohomology_dims().inf().unwrap() + n.cohomology_dims().inf().unwrap(), "{name} pair {k}");
            checked += 1;
        }
    }
    assert_eq!(checked, 50);
}

#[test]
fn criterion_11_refusal() {
    assert_eq!(dgar(&["tau", "wedge", "R"]).0, 4);
    assert_eq!(dgar(&["tau", "wedge", "R", "--inverse"]).0, 4);
    assert_eq!(dgar(&["ar-triangle", "wedge", "R"]).0, 4);
}
