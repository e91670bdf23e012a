use std::collections::BTreeSet;

use dgar::ar::{ArEngine, Decision};
use dgar::catalog;
use dgar::constructions::case1;
use dgar::dg::DGModule;
use dgar::quiver::{
    check_additive, check_stable, check_za_infinity_window, identify_against_catalog, sphere_module, sphere_quiver,
    to_dot, Arrow, SphereObject, TranslationQuiver, Vertex,
};
use dgar::resolution::{phi, resolve, ResolutionBudget};

const SEED: u64 = 11;

fn budget() -> ResolutionBudget {
    ResolutionBudget::default()
}

fn plain(id: &str, complete: bool) -> Vertex {
    Vertex { id: id.into(), stats: None, complete, object: None }
}

#[test]
fn sphere_windows_have_d_minus_one_components() {
    for (d, want) in [(2, 1), (3, 2), (4, 3), (7, 6)] {
        let q = sphere_quiver(d, 6, 4).unwrap();
        assert_eq!(q.components().len(), want, "d = {d}");
        assert!(check_stable(&q).holds);
        assert!(q.arrows.iter().all(|a| a.label == (1, 1)));
    }
}

#[test]
fn every_complete_vertex_sits_in_a_za_infinity_window() {
    let q = sphere_quiver(3, 6, 4).unwrap();
    let mut checked = 0;
    for v in 0..q.vertices.len() {
        if !q.vertices[v].complete {
            continue;
        }
        let w = check_za_infinity_window(&q, &q.ball(v, 2));
        assert!(w.holds, "{:?}", w.counterexample);
        let obj = q.vertices[v].object.unwrap();
        assert_eq!(w.embedding[&q.vertices[v].id].1, obj.m as i32 + 1);
        checked += 1;
    }
    assert!(checked > 20);
    for comp in q.components() {
        assert!(check_za_infinity_window(&q, &comp).holds);
    }
}

#[test]
fn window_counterexamples() {
    let single = TranslationQuiver { vertices: vec![plain("a", false)], ..Default::default() };
    let w = check_za_infinity_window(&single, &[0]);
    assert!(w.holds && w.degenerate);

    // τ jumps two columns at the vertex of degree 4
    let mut q = sphere_quiver(3, 6, 4).unwrap();
    let t = q.index_of("(0,1)").unwrap();
    let far = q.index_of("(4,1)").unwrap();
    for p in q.tau.iter_mut() {
        if p.0 == t {
            p.1 = far;
        }
    }
    let w = check_za_infinity_window(&q, &q.ball(t, 2));
    assert!(!w.holds);
    assert!(!check_stable(&q).holds);

    let looped = TranslationQuiver {
        vertices: vec![plain("a", true)],
        arrows: vec![Arrow { source: 0, target: 0, label: (1, 1) }],
        tau: vec![(0, 0)],
        ..Default::default()
    };
    let v = check_stable(&looped);
    assert!(!v.holds);
    assert_eq!(v.loops, vec!["a".to_string()]);
}

#[test]
fn additive_functions_on_sphere_windows() {
    let q = sphere_quiver(3, 6, 4).unwrap();
    let by_phi = check_additive(&q, |v| v.stats.unwrap().phi as i64);
    assert!(by_phi.holds && by_phi.checked > 0);
    assert!(!check_additive(&q, |_| 1).holds);
    let by_row = check_additive(&q, |v| v.object.unwrap().m as i64 + 1);
    assert!(by_row.holds);
}

#[test]
fn export_is_deterministic() {
    assert_eq!(to_dot(&TranslationQuiver::default()), "digraph \"quiver\" {\n}\n");
    let one = TranslationQuiver {
        name: "one".into(),
        vertices: vec![plain("a", false), plain("b", false)],
        arrows: vec![Arrow { source: 0, target: 1, label: (1, 1) }],
        tau: vec![],
    };
    let dot = to_dot(&one);
    assert_eq!(dot.matches("->").count(), 1);
    assert!(dot.contains("label=\"(1,1)\""));
    let q = sphere_quiver(4, 6, 4).unwrap();
    assert_eq!(to_dot(&q), to_dot(&sphere_quiver(4, 6, 4).unwrap()));
    let json = serde_json::to_string(&q).unwrap();
    let back: TranslationQuiver = serde_json::from_str(&json).unwrap();
    assert_eq!(back, q);
}

#[test]
fn row_law_on_realized_objects() {
    let a = catalog::by_name("sphere-3").unwrap();
    for m in 0..3 {
        for j in [-2, 0, 3] {
            let obj = SphereObject { j, m };
            let x = sphere_module(&a, obj).unwrap().realize();
            assert_eq!(phi(&x, &budget()).unwrap(), m as usize + 1);
            assert_eq!(identify_against_catalog(&x, &budget(), SEED).unwrap(), Some(obj));
        }
    }
}

#[test]
fn engine_agrees_with_the_classification() {
    let a = catalog::by_name("sphere-3").unwrap();
    let d = a.top;
    let e = ArEngine::new(a.clone(), budget(), SEED).unwrap();
    let reg = DGModule::regular(a.clone());
    assert_eq!(identify_against_catalog(&reg, &budget(), SEED).unwrap(), Some(SphereObject { j: 0, m: 0 }));
    for obj in [SphereObject { j: 0, m: 0 }, SphereObject { j: 0, m: 1 }, SphereObject { j: 1, m: 1 }] {
        let x = sphere_module(&a, obj).unwrap().realize();
        let t = e.tau(&x).unwrap();
        assert_eq!(identify_against_catalog(&t, &budget(), SEED).unwrap(), Some(obj.tau(d)));
        let tri = e.ar_triangle_ending_at(&x).unwrap();
        let parts = e.split_summands(&tri.middle).unwrap();
        let found: BTreeSet<SphereObject> = parts
            .iter()
            .map(|p| identify_against_catalog(p.module(), &budget(), SEED).unwrap().unwrap())
            .collect();
        let predicted: BTreeSet<SphereObject> = obj.predecessors(d).into_iter().collect();
        assert_eq!(found, predicted, "{obj:?}");
        assert!(e.arrow_labels(&tri).unwrap().iter().all(|l| (l.alpha, l.beta) == (1, 1)));
    }
    let x1 = case1(&resolve(&reg, &budget()).unwrap().semifree, &budget()).unwrap().realize();
    let obj = identify_against_catalog(&x1, &budget(), SEED).unwrap().unwrap();
    assert_eq!(obj.stats(d).phi, 2);
    assert_eq!(e.is_isomorphic(&x1, &sphere_module(&a, obj).unwrap().realize()).unwrap(), Decision::Yes);
}
