//! Mapping-cone extensions of a compact module X with inf X = 0 and
//! sup X = i: Case 1 cones off a top class (Σ^{-i}R → X), Case 2 cones off
//! a class α of degree i - d + e (Σ^{-i+d-e}R → X), and the tree of words
//! in {1, 2} without two neighbouring 2's.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ar::{is_isomorphic_resolved, Decision, EndAlgebra, Locality};
use crate::dg::DGAlgebra;
use crate::error::{DgError, Result};
use crate::gorenstein::require_gorenstein;
use crate::linalg::{Matrix, Scalar};
use crate::resolution::{resolve, Resolution, ResolutionBudget, SemifreeModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Stats {
    pub inf: i32,
    pub sup: i32,
    pub amp: i32,
    pub phi: usize,
}

impl Stats {
    pub fn of(x: &SemifreeModule) -> Result<Stats> {
        let h = x.realize().cohomology_dims();
        let (Some(inf), Some(sup)) = (h.inf(), h.sup()) else {
            return Err(DgError::Precondition("module is acyclic".into()));
        };
        Ok(Stats { inf, sup, amp: sup - inf, phi: x.len() })
    }
}

/// Checks 2 ≤ e ≤ d - 2 and H^e(R) ≠ 0.
pub fn check_middle_degree(a: &DGAlgebra, e: i32) -> Result<()> {
    if e < 2 || e > a.top - 2 || a.cohomology_dims().get(e) == 0 {
        return Err(DgError::Precondition(format!("no middle class: H^{e}({}) vanishes or e is out of range", a.name)));
    }
    Ok(())
}

fn top_and_check(x: &SemifreeModule) -> Result<i32> {
    let s = Stats::of(x)?;
    if s.inf != 0 {
        return Err(DgError::Precondition(format!("inf X = {} instead of 0", s.inf)));
    }
    if s.sup < 2 {
        return Err(DgError::Precondition(format!("sup X = {} is below 2", s.sup)));
    }
    Ok(s.sup)
}

/// Adds a generator killing the cycle z and re-minimizes if needed.
fn cone_off(x: &SemifreeModule, degree: i32, z: &[Scalar], budget: &ResolutionBudget) -> Result<SemifreeModule> {
    let mut out = x.clone();
    out.attach(format!("g{}", x.len()), degree, z)?;
    if out.is_minimal() {
        Ok(out)
    } else {
        Ok(resolve(&out.realize(), budget)?.semifree)
    }
}

/// X(1): cone of Σ^{-i}R → X hitting the first basis class of H^i(X).
pub fn case1(x: &SemifreeModule, budget: &ResolutionBudget) -> Result<SemifreeModule> {
    let i = top_and_check(x)?;
    let h = x.realize().cohomology();
    let z = h.reps(i)[0].clone();
    cone_off(x, i - 1, &z, budget)
}

/// X(2) with the first basis class of H^{i-d+e}(X).
pub fn case2(x: &SemifreeModule, e: i32, budget: &ResolutionBudget) -> Result<SemifreeModule> {
    let i = top_and_check(x)?;
    let d = x.algebra.top;
    let n = x.realize().cohomology().dim(i - d + e);
    let mut alpha = vec![x.algebra.field.zero(); n];
    if let Some(a) = alpha.first_mut() {
        *a = x.algebra.field.one();
    }
    cone_class(x, e, &alpha, budget)
}

/// X(2_α) for α given in the representative basis of H^{i-d+e}(X);
/// additionally requires H^i(X) = k and a nondegenerate pairing
/// H^{d-e}(R) × H^{i-d+e}(X) → H^i(X).
pub fn case2_alpha(x: &SemifreeModule, e: i32, alpha: &[Scalar], budget: &ResolutionBudget) -> Result<SemifreeModule> {
    let i = top_and_check(x)?;
    let d = x.algebra.top;
    if x.realize().cohomology().dim(i) != 1 {
        return Err(DgError::Precondition(format!("H^{i}(X) is not one-dimensional")));
    }
    if !pairing_nondegenerate(x, d - e, i - d + e)? {
        return Err(DgError::Precondition("the pairing into H^i(X) is degenerate".into()));
    }
    cone_class(x, e, alpha, budget)
}

fn cone_class(x: &SemifreeModule, e: i32, alpha: &[Scalar], budget: &ResolutionBudget) -> Result<SemifreeModule> {
    check_middle_degree(&x.algebra, e)?;
    let i = top_and_check(x)?;
    let d = x.algebra.top;
    let p = i - d + e;
    let h = x.realize().cohomology();
    let reps = h.reps(p);
    if reps.is_empty() {
        return Err(DgError::Precondition(format!("H^{p}(X) vanishes")));
    }
    if alpha.len() != reps.len() {
        return Err(DgError::DimensionMismatch(format!("α has {} coordinates, H^{p}(X) has dimension {}", alpha.len(), reps.len())));
    }
    if alpha.iter().all(Scalar::is_zero) {
        return Err(DgError::Precondition("α = 0".into()));
    }
    let f = x.algebra.field;
    let mut z = vec![f.zero(); x.len() * x.algebra.dim()];
    for (c, r) in alpha.iter().zip(reps) {
        for (zi, ri) in z.iter_mut().zip(r) {
            *zi = &*zi + &(c * ri);
        }
    }
    cone_off(x, p - 1, &z, budget)
}

/// The matrix of H^a(R) × H^b(X) → H^{a+b}(X) when the target is
/// one-dimensional.
pub fn pairing_matrix(x: &SemifreeModule, a: i32, b: i32) -> Result<Matrix> {
    let r = &x.algebra;
    let m = x.realize();
    let hx = m.cohomology();
    if hx.dim(a + b) != 1 {
        return Err(DgError::Precondition(format!("H^{}(X) is not one-dimensional", a + b)));
    }
    let hr = r.cohomology();
    let rows = hr
        .reps(a)
        .iter()
        .map(|ra| {
            let act = m.act(ra);
            hx.reps(b)
                .iter()
                .map(|y| {
                    let c = hx.classify(a + b, &act.mul_vec(y)).ok_or_else(|| DgError::Inconsistent("product is not a cycle".into()))?;
                    Ok(c[0].clone())
                })
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Matrix::from_rows(r.field, rows))
}

pub fn pairing_nondegenerate(x: &SemifreeModule, a: i32, b: i32) -> Result<bool> {
    let p = pairing_matrix(x, a, b)?;
    Ok(p.rows() > 0 && p.rows() == p.cols() && p.rank() == p.rows())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct TreeNode {
    pub id: String,
    pub word: Vec<Step>,
    pub stats: Stats,
    /// d + s(d-1) + (r-s)(e-1) for a word of length r with s ones.
    pub expected_amp: i32,
    /// Each step changed amp by d-1 or e-1 and φ by 1, keeping inf = 0.
    pub laws_hold: bool,
    pub locality: Locality,
    /// Pairing H^{d-e}(R) × H^{sup-d+e}(X) → H^{sup}(X), where defined.
    pub pairing_nondegenerate: Option<bool>,
    #[serde(skip)]
    pub module: Option<SemifreeModule>,
}

pub fn word_id(word: &[Step]) -> String {
    if word.is_empty() {
        return "X".into();
    }
    let parts: Vec<&str> = word.iter().map(|s| if *s == Step::One { "1" } else { "2" }).collect();
    format!("X({})", parts.join(","))
}

/// All words of length ≤ depth without two neighbouring 2's, rooted at R.
pub fn build_tree(
    a: &Arc<DGAlgebra>,
    e: i32,
    depth: usize,
    budget: &ResolutionBudget,
    seed: u64,
) -> Result<Vec<TreeNode>> {
    require_gorenstein(a, budget, seed)?;
    if depth > 0 {
        check_middle_degree(a, e)?;
    }
    let d = a.top;
    let root = resolve(&crate::dg::DGModule::regular(a.clone()), budget)?.semifree;
    let mut nodes = vec![make_node(Vec::new(), root, d, e, true, seed)?];
    let mut frontier = vec![0usize];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &p in &frontier {
            let (word, x, parent) = {
                let n = &nodes[p];
                (n.word.clone(), n.module.clone().unwrap(), n.stats)
            };
            for step in [Step::One, Step::Two] {
                if step == Step::Two && word.last() == Some(&Step::Two) {
                    continue;
                }
                let child = match step {
                    Step::One => case1(&x, budget)?,
                    Step::Two => case2(&x, e, budget)?,
                };
                let s = Stats::of(&child)?;
                let growth = if step == Step::One { d - 1 } else { e - 1 };
                let ok = s.inf == 0 && s.amp - parent.amp == growth && s.phi == parent.phi + 1;
                let mut w = word.clone();
                w.push(step);
                nodes.push(make_node(w, child, d, e, ok, seed)?);
                next.push(nodes.len() - 1);
            }
        }
        frontier = next;
    }
    Ok(nodes)
}

fn make_node(word: Vec<Step>, x: SemifreeModule, d: i32, e: i32, step_ok: bool, seed: u64) -> Result<TreeNode> {
    let stats = Stats::of(&x)?;
    let r = word.len() as i32;
    let s = word.iter().filter(|&&w| w == Step::One).count() as i32;
    let expected_amp = d + s * (d - 1) + (r - s) * (e - 1);
    let res = Resolution::of_minimal(x.clone());
    let locality = EndAlgebra::of(&res)?.locality(seed);
    let pairing_nondegenerate = if res.realized.cohomology().dim(stats.sup) == 1 && x.algebra.cohomology_dims().get(d - e) > 0 {
        Some(pairing_nondegenerate(&x, d - e, stats.sup - d + e)?)
    } else {
        None
    };
    Ok(TreeNode {
        id: word_id(&word),
        laws_hold: step_ok && stats.inf == 0 && stats.amp == expected_amp && stats.phi == word.len() + 1,
        word,
        stats,
        expected_amp,
        locality,
        pairing_nondegenerate,
        module: Some(x),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairReason {
    /// Equal φ, different amplitude.
    DifferentAmplitude,
    /// Equal φ, amp and inf, and not isomorphic.
    NotIsomorphic,
    Isomorphic,
    /// φ differs or inf differs: no sound criterion applies.
    NoCriterion,
    Undecided,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct PairVerdict {
    pub first: String,
    pub second: String,
    pub reason: PairReason,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ComponentCertificate {
    pub pairs: Vec<PairVerdict>,
    /// Largest family of pairwise certified-distinct modules.
    pub witnesses: Vec<String>,
    pub lower_bound: usize,
    /// The same using only the amplitude criterion.
    pub amplitude_witnesses: Vec<String>,
    pub amplitude_lower_bound: usize,
}

/// Certifies pairs of compact indecomposables as lying in different
/// components of the AR quiver. The module list is (id, model) pairs.
pub fn distinct_component_certificate(
    modules: &[(String, SemifreeModule)],
    budget: &ResolutionBudget,
    seed: u64,
) -> Result<ComponentCertificate> {
    let resolved: Vec<Resolution> = modules.iter().map(|(_, x)| resolve(&x.realize(), budget)).collect::<Result<_>>()?;
    let stats: Vec<Stats> = resolved.iter().map(|r| Stats::of(&r.semifree)).collect::<Result<_>>()?;
    let n = modules.len();
    let mut pairs = Vec::new();
    let mut any = vec![vec![false; n]; n];
    let mut by_amp = vec![vec![false; n]; n];
    for a in 0..n {
        for b in a + 1..n {
            let (s, t) = (stats[a], stats[b]);
            let reason = if s.phi != t.phi {
                PairReason::NoCriterion
            } else if s.amp != t.amp {
                PairReason::DifferentAmplitude
            } else if s.inf != t.inf {
                PairReason::NoCriterion
            } else {
                match is_isomorphic_resolved(&resolved[a], &resolved[b], seed)? {
                    Decision::Yes => PairReason::Isomorphic,
                    Decision::No => PairReason::NotIsomorphic,
                    Decision::Undecided => PairReason::Undecided,
                }
            };
            let distinct = matches!(reason, PairReason::DifferentAmplitude | PairReason::NotIsomorphic);
            any[a][b] = distinct;
            any[b][a] = distinct;
            by_amp[a][b] = reason == PairReason::DifferentAmplitude;
            by_amp[b][a] = by_amp[a][b];
            pairs.push(PairVerdict { first: modules[a].0.clone(), second: modules[b].0.clone(), reason });
        }
    }
    let ids = |c: Vec<usize>| -> Vec<String> { c.into_iter().map(|i| modules[i].0.clone()).collect() };
    let witnesses = ids(max_clique(&any));
    let amplitude_witnesses = ids(max_clique(&by_amp));
    Ok(ComponentCertificate {
        pairs,
        lower_bound: witnesses.len(),
        witnesses,
        amplitude_lower_bound: amplitude_witnesses.len(),
        amplitude_witnesses,
    })
}

/// Exhaustive branch-and-bound; the families certified here are small.
fn max_clique(adj: &[Vec<bool>]) -> Vec<usize> {
    fn grow(adj: &[Vec<bool>], current: &mut Vec<usize>, candidates: &[usize], best: &mut Vec<usize>) {
        if current.len() + candidates.len() <= best.len() {
            return;
        }
        if candidates.is_empty() {
            *best = current.clone();
            return;
        }
        for (k, &v) in candidates.iter().enumerate() {
            let rest: Vec<usize> = candidates[k + 1..].iter().copied().filter(|&u| adj[v][u]).collect();
            current.push(v);
            grow(adj, current, &rest, best);
            current.pop();
        }
        if current.len() > best.len() {
            *best = current.clone();
        }
    }
    let all: Vec<usize> = (0..adj.len()).collect();
    let mut best = Vec::new();
    grow(adj, &mut Vec::new(), &all, &mut best);
    best
}

/// Nodes grouped by word length (the tree's columns).
pub fn columns(nodes: &[TreeNode]) -> BTreeMap<usize, Vec<&TreeNode>> {
    let mut out: BTreeMap<usize, Vec<&TreeNode>> = BTreeMap::new();
    for n in nodes {
        out.entry(n.word.len()).or_default().push(n);
    }
    out
}
