//! Stable translation quivers, ℤA∞ recognition on finite windows, additive
//! functions, and the sphere case, where the indecomposables are the
//! modules E_m (a string of m + 1 generators joined by the top class) and
//! their suspensions.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::Write as _;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::ar::{is_isomorphic, Decision};
use crate::dg::{DGAlgebra, DGModule};
use crate::error::{DgError, Result};
use crate::resolution::{ResolutionBudget, SemifreeModule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexStats {
    pub inf: i32,
    pub amp: i32,
    pub phi: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: String,
    pub stats: Option<VertexStats>,
    /// Every arrow at this vertex in the full quiver is present.
    pub complete: bool,
    pub object: Option<SphereObject>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: (usize, usize),
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TranslationQuiver {
    pub name: String,
    pub vertices: Vec<Vertex>,
    pub arrows: Vec<Arrow>,
    /// (t, τt) pairs.
    pub tau: Vec<(usize, usize)>,
}

impl TranslationQuiver {
    pub fn tau_of(&self, t: usize) -> Option<usize> {
        self.tau.iter().find(|p| p.0 == t).map(|p| p.1)
    }

    pub fn index_of(&self, id: &str) -> Option<usize> {
        self.vertices.iter().position(|v| v.id == id)
    }

    fn count(&self, s: usize, t: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == s && a.target == t).count()
    }

    pub fn in_degree(&self, t: usize) -> usize {
        self.arrows.iter().filter(|a| a.target == t).count()
    }

    pub fn out_degree(&self, s: usize) -> usize {
        self.arrows.iter().filter(|a| a.source == s).count()
    }

    fn neighbours(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.vertices.len()];
        for a in &self.arrows {
            adj[a.source].push(a.target);
            adj[a.target].push(a.source);
        }
        for &(t, s) in &self.tau {
            adj[t].push(s);
            adj[s].push(t);
        }
        adj
    }

    /// Weakly connected components, each sorted, in order of first vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let adj = self.neighbours();
        let mut seen = vec![false; self.vertices.len()];
        let mut out = Vec::new();
        for v in 0..self.vertices.len() {
            if seen[v] {
                continue;
            }
            let mut comp = Vec::new();
            let mut queue = VecDeque::from([v]);
            seen[v] = true;
            while let Some(x) = queue.pop_front() {
                comp.push(x);
                for &y in &adj[x] {
                    if !seen[y] {
                        seen[y] = true;
                        queue.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    /// Vertices within undirected distance `radius` of v.
    pub fn ball(&self, v: usize, radius: usize) -> Vec<usize> {
        let dist = bfs(&self.neighbours(), &[v]);
        (0..self.vertices.len()).filter(|&u| dist[u].is_some_and(|d| d <= radius)).collect()
    }
}

fn bfs(adj: &[Vec<usize>], sources: &[usize]) -> Vec<Option<usize>> {
    let mut dist = vec![None; adj.len()];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = Some(0);
        queue.push_back(s);
    }
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap();
        for &y in &adj[x] {
            if dist[y].is_none() {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

/// Breadth-first distances with free τ steps.
fn row_distances(q: &TranslationQuiver, sources: &[usize]) -> Vec<Option<usize>> {
    let n = q.vertices.len();
    let mut arrows = vec![Vec::new(); n];
    for a in &q.arrows {
        arrows[a.source].push(a.target);
        arrows[a.target].push(a.source);
    }
    let mut orbit = vec![Vec::new(); n];
    for &(t, s) in &q.tau {
        orbit[t].push(s);
        orbit[s].push(t);
    }
    let mut dist = vec![None; n];
    let mut queue = VecDeque::new();
    for &s in sources {
        dist[s] = Some(0);
        queue.push_back(s);
    }
    while let Some(x) = queue.pop_front() {
        let d = dist[x].unwrap();
        for &y in &orbit[x] {
            if dist[y].is_none_or(|e| e > d) {
                dist[y] = Some(d);
                queue.push_front(y);
            }
        }
        for &y in &arrows[x] {
            if dist[y].is_none_or(|e| e > d + 1) {
                dist[y] = Some(d + 1);
                queue.push_back(y);
            }
        }
    }
    dist
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StableVerdict {
    pub holds: bool,
    pub loops: Vec<String>,
    pub failures: Vec<String>,
}

/// Arrows τt → s and s → t must be equinumerous for every s, wherever τ is
/// defined; loops are reported separately and fail the check.
pub fn check_stable(q: &TranslationQuiver) -> StableVerdict {
    let loops: Vec<String> =
        q.arrows.iter().filter(|a| a.source == a.target).map(|a| q.vertices[a.source].id.clone()).collect();
    let mut failures = Vec::new();
    let mut images = BTreeSet::new();
    for &(t, tt) in &q.tau {
        if !images.insert(tt) {
            failures.push(format!("τ is not injective at {}", q.vertices[tt].id));
        }
        for s in 0..q.vertices.len() {
            let (a, b) = (q.count(tt, s), q.count(s, t));
            if a != b {
                failures.push(format!(
                    "{} arrows {} → {} but {} arrows {} → {}",
                    a, q.vertices[tt].id, q.vertices[s].id, b, q.vertices[s].id, q.vertices[t].id
                ));
            }
        }
    }
    StableVerdict { holds: loops.is_empty() && failures.is_empty(), loops, failures }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WindowVerdict {
    pub holds: bool,
    /// Coordinates (p, t) with τ(p, t) = (p + 1, t) and arrows
    /// (p, t) → (p, t + 1), (p, t + 1) → (p - 1, t).
    pub embedding: BTreeMap<String, (i32, i32)>,
    pub counterexample: Option<String>,
    /// A window without arrows embeds for trivial reasons.
    pub degenerate: bool,
}

impl WindowVerdict {
    fn fail(v: &str, why: &str) -> WindowVerdict {
        WindowVerdict { holds: false, embedding: BTreeMap::new(), counterexample: Some(format!("{v}: {why}")), degenerate: false }
    }
}

/// Matches the window (vertex indices) against ℤA∞. The row t of a vertex
/// is one more than its distance in q to the nearest complete vertex with a
/// single incoming arrow, where τ steps cost nothing (τ keeps the row); the
/// column p is propagated along arrows and τ.
pub fn check_za_infinity_window(q: &TranslationQuiver, window: &[usize]) -> WindowVerdict {
    let inside: BTreeSet<usize> = window.iter().copied().collect();
    let local_arrows: Vec<&Arrow> =
        q.arrows.iter().filter(|a| inside.contains(&a.source) && inside.contains(&a.target)).collect();
    if local_arrows.is_empty() {
        let embedding = window.iter().enumerate().map(|(k, &v)| (q.vertices[v].id.clone(), (k as i32, 1))).collect();
        return WindowVerdict { holds: true, embedding, counterexample: None, degenerate: true };
    }
    let edge: Vec<usize> =
        (0..q.vertices.len()).filter(|&v| q.vertices[v].complete && q.in_degree(v) == 1).collect();
    let adj = q.neighbours();
    let dist = row_distances(q, &edge);
    let mut coords: BTreeMap<usize, (i32, i32)> = BTreeMap::new();
    for &root in window {
        if coords.contains_key(&root) {
            continue;
        }
        let Some(t0) = dist[root] else { return WindowVerdict::fail(&q.vertices[root].id, "no edge vertex reachable") };
        coords.insert(root, (0, t0 as i32 + 1));
        let mut queue = VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &y in &adj[x] {
                if !inside.contains(&y) || coords.contains_key(&y) {
                    continue;
                }
                let Some(ty) = dist[y] else { return WindowVerdict::fail(&q.vertices[y].id, "no edge vertex reachable") };
                let (px, tx) = coords[&x];
                let ty = ty as i32 + 1;
                let p = if q.tau_of(y) == Some(x) {
                    px - 1
                } else if q.tau_of(x) == Some(y) {
                    px + 1
                } else if q.count(x, y) > 0 {
                    if ty == tx + 1 { px } else { px - 1 }
                } else if ty == tx - 1 {
                    px
                } else {
                    px + 1
                };
                coords.insert(y, (p, ty));
                queue.push_back(y);
            }
        }
    }
    let name = |v: usize| q.vertices[v].id.as_str();
    let mut used = BTreeMap::new();
    for (&v, &c) in &coords {
        if let Some(u) = used.insert(c, v) {
            return WindowVerdict::fail(name(v), &format!("shares coordinates {c:?} with {}", name(u)));
        }
    }
    for a in &local_arrows {
        let ((ps, ts), (pt, tt)) = (coords[&a.source], coords[&a.target]);
        let standard = (pt == ps && tt == ts + 1) || (pt == ps - 1 && tt == ts - 1);
        if !standard {
            return WindowVerdict::fail(name(a.source), &format!("arrow to {} is not a ℤA∞ arrow", name(a.target)));
        }
    }
    for &(t, s) in &q.tau {
        if inside.contains(&t) && inside.contains(&s) {
            let ((pt, tt), (ps, ts)) = (coords[&t], coords[&s]);
            if ps != pt + 1 || ts != tt {
                return WindowVerdict::fail(name(t), "τ does not shift the column by one");
            }
        }
    }
    for &v in window {
        if !q.vertices[v].complete {
            continue;
        }
        let expected = if coords[&v].1 == 1 { 1 } else { 2 };
        if q.in_degree(v) != expected || q.out_degree(v) != expected {
            return WindowVerdict::fail(name(v), "wrong number of arrows for its row");
        }
    }
    let embedding = coords.into_iter().map(|(v, c)| (q.vertices[v].id.clone(), c)).collect();
    WindowVerdict { holds: true, embedding, counterexample: None, degenerate: false }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AdditiveVerdict {
    pub holds: bool,
    pub checked: usize,
    pub failures: Vec<String>,
}

/// f(τt) + f(t) = Σ_{s → t} α f(s) at every complete vertex t with τt
/// defined.
pub fn check_additive(q: &TranslationQuiver, f: impl Fn(&Vertex) -> i64) -> AdditiveVerdict {
    let mut failures = Vec::new();
    let mut checked = 0;
    for &(t, tt) in &q.tau {
        if !q.vertices[t].complete {
            continue;
        }
        checked += 1;
        let lhs = f(&q.vertices[tt]) + f(&q.vertices[t]);
        let rhs: i64 = q.arrows.iter().filter(|a| a.target == t).map(|a| a.label.0 as i64 * f(&q.vertices[a.source])).sum();
        if lhs != rhs {
            failures.push(format!("{}: {lhs} ≠ {rhs}", q.vertices[t].id));
        }
    }
    AdditiveVerdict { holds: failures.is_empty(), checked, failures }
}

/// Σ^n E_m with n = j + m(d - 1), where E_m has generators g_0..g_m in
/// degrees t(d - 1) and d g_t = X g_{t-1}. H(E_m) sits in degrees 0 and
/// m(d - 1) + d, so the pair (j, m) is read off from cohomology.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SphereObject {
    pub j: i32,
    pub m: u32,
}

impl SphereObject {
    pub fn id(&self) -> String {
        format!("({},{})", self.j, self.m)
    }

    pub fn shift(&self, d: i32) -> i32 {
        self.j + self.m as i32 * (d - 1)
    }

    pub fn tau(&self, d: i32) -> SphereObject {
        SphereObject { j: self.j + d - 1, m: self.m }
    }

    /// Sources of the arrows ending here.
    pub fn predecessors(&self, d: i32) -> Vec<SphereObject> {
        let mut out = vec![SphereObject { j: self.j, m: self.m + 1 }];
        if self.m > 0 {
            out.push(SphereObject { j: self.j + d - 1, m: self.m - 1 });
        }
        out
    }

    pub fn successors(&self, d: i32) -> Vec<SphereObject> {
        let mut out = vec![SphereObject { j: self.j - d + 1, m: self.m + 1 }];
        if self.m > 0 {
            out.push(SphereObject { j: self.j, m: self.m - 1 });
        }
        out
    }

    pub fn stats(&self, d: i32) -> VertexStats {
        let m = self.m as i32;
        VertexStats { inf: -self.shift(d), amp: m * (d - 1) + d, phi: self.m as usize + 1 }
    }
}

fn sphere_degree(a: &DGAlgebra) -> Result<i32> {
    let h = a.cohomology_dims();
    if h.total() != 2 || h.get(0) != 1 || h.get(a.top) != 1 || a.top < 2 {
        return Err(DgError::Precondition(format!("{} is not a sphere algebra", a.name)));
    }
    Ok(a.top)
}

/// The semi-free model of a sphere object.
pub fn sphere_module(a: &Arc<DGAlgebra>, obj: SphereObject) -> Result<SemifreeModule> {
    let d = sphere_degree(a)?;
    let top = (0..a.dim())
        .find(|&i| a.degree(i) == d && !a.diff.column(i).iter().any(|x| !x.is_zero()))
        .ok_or_else(|| DgError::Precondition("no top cycle".into()))?;
    if a.dim() != 2 {
        return Err(DgError::Precondition(format!("{} is not the two-dimensional sphere model", a.name)));
    }
    let mut f = SemifreeModule::free(a.clone(), crate::dg::Side::Left);
    for t in 1..=obj.m as usize {
        let mut b = vec![a.field.zero(); f.len() * a.dim()];
        b[(t - 1) * a.dim() + top] = a.field.one();
        f.attach(format!("g{t}"), t as i32 * (d - 1), &b)?;
    }
    Ok(f.suspend(obj.shift(d)))
}

/// The window |j| ≤ j_max, m ≤ m_max of the AR quiver of a sphere algebra
/// in dimension d, from the classification.
pub fn sphere_quiver(d: i32, j_max: i32, m_max: u32) -> Result<TranslationQuiver> {
    if d < 2 {
        return Err(DgError::InvalidInput(format!("sphere dimension {d} is below 2")));
    }
    let inside = |o: &SphereObject| o.j.abs() <= j_max && o.m <= m_max;
    let objects: Vec<SphereObject> =
        (0..=m_max).flat_map(|m| (-j_max..=j_max).map(move |j| SphereObject { j, m })).collect();
    let index: BTreeMap<SphereObject, usize> = objects.iter().enumerate().map(|(i, o)| (*o, i)).collect();
    let vertices = objects
        .iter()
        .map(|o| Vertex {
            id: o.id(),
            stats: Some(o.stats(d)),
            complete: o.predecessors(d).iter().chain(&o.successors(d)).all(&inside),
            object: Some(*o),
        })
        .collect();
    let mut arrows = Vec::new();
    let mut tau = Vec::new();
    for (i, o) in objects.iter().enumerate() {
        for s in o.successors(d) {
            if let Some(&k) = index.get(&s) {
                arrows.push(Arrow { source: i, target: k, label: (1, 1) });
            }
        }
        if let Some(&k) = index.get(&o.tau(d)) {
            tau.push((i, k));
        }
    }
    Ok(TranslationQuiver { name: format!("sphere-{d}"), vertices, arrows, tau })
}

/// Matches a compact indecomposable over a sphere algebra with a catalog
/// object; `None` if the cohomology has the wrong shape or the realized
/// candidate is not isomorphic.
pub fn identify_against_catalog(m: &DGModule, budget: &ResolutionBudget, seed: u64) -> Result<Option<SphereObject>> {
    let d = sphere_degree(&m.algebra)?;
    let h = m.cohomology_dims();
    let degrees: Vec<i32> = h.0.iter().filter(|e| *e.1 > 0).map(|e| *e.0).collect();
    if h.total() != 2 || degrees.len() != 2 {
        return Ok(None);
    }
    let (lo, hi) = (degrees[0], degrees[1]);
    let span = hi - lo - d;
    if span < 0 || span % (d - 1) != 0 {
        return Ok(None);
    }
    let len = (span / (d - 1)) as u32;
    let obj = SphereObject { j: -lo - len as i32 * (d - 1), m: len };
    let candidate = sphere_module(&m.algebra, obj)?.realize();
    Ok(match is_isomorphic(m, &candidate, budget, seed)? {
        Decision::Yes => Some(obj),
        _ => None,
    })
}

/// Graphviz text with vertices in quiver order, τ drawn dashed.
pub fn to_dot(q: &TranslationQuiver) -> String {
    let mut out = String::new();
    let name = if q.name.is_empty() { "quiver" } else { &q.name };
    writeln!(out, "digraph \"{name}\" {{").unwrap();
    if !q.vertices.is_empty() {
        writeln!(out, "  rankdir=LR;").unwrap();
    }
    for v in &q.vertices {
        match v.stats {
            Some(s) => writeln!(out, "  \"{}\" [label=\"{}\\nφ={} amp={}\"];", v.id, v.id, s.phi, s.amp).unwrap(),
            None => writeln!(out, "  \"{}\";", v.id).unwrap(),
        }
    }
    for a in &q.arrows {
        let (s, t) = (&q.vertices[a.source].id, &q.vertices[a.target].id);
        writeln!(out, "  \"{s}\" -> \"{t}\" [label=\"({},{})\"];", a.label.0, a.label.1).unwrap();
    }
    for &(t, s) in &q.tau {
        writeln!(out, "  \"{}\" -> \"{}\" [style=dashed, constraint=false];", q.vertices[t].id, q.vertices[s].id).unwrap();
    }
    out.push_str("}\n");
    out
}
