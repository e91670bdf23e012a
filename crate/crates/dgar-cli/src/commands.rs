use anyhow::{bail, Result};
use dgar::ar::{ArEngine, Locality};
use dgar::constructions::{build_tree, distinct_component_certificate, Stats};
use dgar::dg::GradedDims;
use dgar::gorenstein::{gorenstein as run_gorenstein, COND_COMPACT, COND_DUALITY, COND_EXT};
use dgar::quiver::{check_additive, check_stable, check_za_infinity_window, sphere_quiver as build_sphere_quiver, to_dot};
use dgar::resolution::{compactness_certificate, resolve as run_resolve, CompactnessVerdict, Resolution};
use dgar::schema::ModuleDescription;
use serde::Serialize;
use serde_json::json;

use crate::load;
use crate::output::{emit_json, emit_text, report, Format, RunConfig, EXIT_BUDGET, EXIT_INVALID, EXIT_UNDECIDED};

const GORENSTEIN: [&str; 3] = [COND_EXT, COND_DUALITY, COND_COMPACT];

fn json_only(config: &RunConfig) -> Result<()> {
    if config.format != Format::Json {
        bail!(dgar::DgError::InvalidInput("this command only writes JSON".into()));
    }
    Ok(())
}

fn model(res: &Resolution) -> ModuleDescription {
    res.semifree.to_description()
}

pub fn validate(path: &str, config: &RunConfig) -> Result<u8> {
    json_only(config)?;
    let desc = load::description(path)?;
    let a = desc.build()?;
    let r = desc.validate(&a);
    emit_json(config, &report("validate", config, &["validate"], &r))?;
    Ok(if r.valid { 0 } else { EXIT_INVALID })
}

pub fn gorenstein(algebra: &str, config: &RunConfig) -> Result<u8> {
    json_only(config)?;
    let a = load::algebra(algebra)?;
    let r = run_gorenstein(&a, &config.budget()?, config.seed)?;
    emit_json(config, &report("gorenstein", config, &GORENSTEIN, &r))?;
    Ok(if r.verdict.is_some() { 0 } else { EXIT_UNDECIDED })
}

pub fn resolve(algebra: &str, module: &str, config: &RunConfig) -> Result<u8> {
    json_only(config)?;
    let a = load::algebra(algebra)?;
    let m = load::module(&a, module)?;
    let budget = config.budget()?;
    let cert = compactness_certificate(&m, &budget)?;
    let compact = cert.verdict == CompactnessVerdict::Compact;
    let res = if compact { Some(run_resolve(&m, &budget)?) } else { None };
    let result = json!({
        "cohomology": m.cohomology_dims(),
        "suspension_indices": cert.trace.suspension_indices(),
        "certificate": cert,
        "phi": res.as_ref().map(Resolution::phi),
        "ext_to_k": res.as_ref().map(|r| r.semifree.generator_dims().negated()),
        "model": res.as_ref().map(model),
    });
    emit_json(config, &report("resolve", config, &["resolution.minimal"], result))?;
    Ok(if compact { 0 } else { EXIT_BUDGET })
}

#[derive(Serialize)]
struct TauResult {
    inverse: bool,
    input: GradedDims,
    output: GradedDims,
    /// H(τm) ≅ H(Σ^{d-1}m), or the inverse shift.
    expected: GradedDims,
    shift_matches: bool,
    model: ModuleDescription,
}

pub fn tau(algebra: &str, module: &str, inverse: bool, config: &RunConfig) -> Result<u8> {
    json_only(config)?;
    let a = load::algebra(algebra)?;
    let engine = ArEngine::new(a.clone(), config.budget()?, config.seed)?;
    let m = load::module(&a, module)?;
    let out = if inverse { engine.tau_inverse(&m)? } else { engine.tau(&m)? };
    let shift = if inverse { 1 - a.top } else { a.top - 1 };
    let input = m.cohomology_dims();
    let expected = input.suspended(shift);
    let output = out.cohomology_dims();
    let result = TauResult {
        inverse,
        shift_matches: output == expected,
        model: model(&run_resolve(&out, &engine.budget)?),
        input,
        output,
        expected,
    };
    let ids = [COND_EXT, COND_DUALITY, COND_COMPACT, "ar.tau"];
    emit_json(config, &report("tau", config, &ids, result))?;
    Ok(0)
}

pub fn ar_triangle(algebra: &str, module: &str, labels: bool, config: &RunConfig) -> Result<u8> {
    json_only(config)?;
    let a = load::algebra(algebra)?;
    let engine = ArEngine::new(a.clone(), config.budget()?, config.seed)?;
    let p = load::module(&a, module)?;
    let t = engine.ar_triangle_ending_at(&p)?;
    let summary = t.summary(&engine.budget)?;
    let summands = engine.split_summands(&t.middle)?;
    let no_loops = summands
        .iter()
        .map(|s| dgar::ar::is_isomorphic_resolved(&s.resolution, &t.end, engine.seed))
        .collect::<dgar::Result<Vec<_>>>()?
        .iter()
        .all(|d| *d == dgar::ar::Decision::No);
    let arrow_sum: usize = summands.iter().map(|s| s.multiplicity * s.resolution.phi()).sum();
    let labels = if labels { Some(engine.arrow_labels(&t)?) } else { None };
    let result = json!({
        "triangle": summary,
        "connecting_nonzero": !t.connecting.is_zero(),
        "tau_phi_equals_end_phi": summary.phi[0] == summary.phi[2],
        "summands": summands.iter().map(|s| json!({
            "cohomology": s.module().cohomology_dims(),
            "phi": s.resolution.phi(),
            "multiplicity": s.multiplicity,
            "model": model(&s.resolution),
        })).collect::<Vec<_>>(),
        "arrow_sum": arrow_sum,
        "arrow_sum_rule": arrow_sum == summary.phi[0] + summary.phi[2],
        "no_loops": no_loops,
        "labels": labels,
    });
    let ids = [COND_EXT, COND_DUALITY, COND_COMPACT, "ar.triangle", "ar.phi-additive", "ar.no-loops"];
    emit_json(config, &report("ar-triangle", config, &ids, result))?;
    Ok(0)
}

pub fn tree(algebra: &str, e: i32, depth: usize, config: &RunConfig) -> Result<u8> {
    json_only(config)?;
    let a = load::algebra(algebra)?;
    let budget = config.budget()?;
    let nodes = build_tree(&a, e, depth, &budget, config.seed)?;
    let (root, rest) = nodes.split_first().expect("the tree has a root");
    let family: Vec<_> = rest.iter().map(|n| (n.id.clone(), n.module.clone().expect("tree nodes carry modules"))).collect();
    let certificate = distinct_component_certificate(&family, &budget, config.seed)?;
    let columns_constant = rest.iter().all(|n| n.stats.phi == n.word.len() + 1);
    let result = json!({
        "algebra": a.name,
        "top_degree": a.top,
        "e": e,
        "depth": depth,
        "root": root,
        "nodes": rest,
        "laws_hold": nodes.iter().all(|n| n.laws_hold),
        "all_local": nodes.iter().all(|n| n.locality == Locality::Local),
        "column_phi_constant": columns_constant,
        "certificate": certificate,
    });
    let ids = [COND_EXT, COND_DUALITY, COND_COMPACT, "construction.case1", "construction.case2", "certificate.amplitude", "certificate.isomorphism"];
    emit_json(config, &report("tree", config, &ids, result))?;
    Ok(0)
}

pub fn sphere_quiver(d: i32, j: i32, m: u32, config: &RunConfig) -> Result<u8> {
    let q = build_sphere_quiver(d, j, m)?;
    if config.format == Format::Dot {
        emit_text(config.out.as_deref(), &to_dot(&q))?;
        return Ok(0);
    }
    let windows: Vec<_> = (0..q.vertices.len())
        .filter(|&v| q.vertices[v].complete)
        .map(|v| (q.vertices[v].id.clone(), check_za_infinity_window(&q, &q.ball(v, 2))))
        .collect();
    let failed: Vec<_> = windows.iter().filter(|w| !w.1.holds).map(|w| json!({ "vertex": w.0, "why": w.1.counterexample })).collect();
    let result = json!({
        "components": q.components().len(),
        "stable": check_stable(&q),
        "windows_checked": windows.len(),
        "window_failures": failed,
        "phi_additive": check_additive(&q, |v| v.stats.map_or(0, |s| s.phi as i64)),
        "labels_unit": q.arrows.iter().all(|a| a.label == (1, 1)),
        "quiver": q,
    });
    let ids = ["quiver.stable", "quiver.za-infinity", "quiver.additive"];
    emit_json(config, &report("sphere-quiver", config, &ids, result))?;
    Ok(0)
}

pub fn certify(algebra: &str, modules: &[String], config: &RunConfig) -> Result<u8> {
    json_only(config)?;
    let a = load::algebra(algebra)?;
    let engine = ArEngine::new(a.clone(), config.budget()?, config.seed)?;
    let mut family = Vec::new();
    let mut stats = Vec::new();
    for arg in modules {
        let res = run_resolve(&load::module(&a, arg)?, &engine.budget)?;
        let locality = dgar::ar::EndAlgebra::of(&res)?.locality(engine.seed);
        stats.push(json!({ "module": arg, "stats": Stats::of(&res.semifree)?, "locality": locality }));
        family.push((arg.clone(), res.semifree));
    }
    let certificate = distinct_component_certificate(&family, &engine.budget, engine.seed)?;
    let result = json!({ "modules": stats, "certificate": certificate });
    let ids = [COND_EXT, COND_DUALITY, COND_COMPACT, "certificate.amplitude", "certificate.isomorphism"];
    emit_json(config, &report("certify", config, &ids, result))?;
    Ok(0)
}
