//! Independent oracle for the sphere quiver. Finite-dimensional graded
//! modules over k[Y] with |Y| = d - 1 are sums of intervals M(n, s): basis
//! b_0..b_{n-1}, b_i in degree s + i|Y|, Y b_i = b_{i+1}. Irreducible maps are
//! found by brute force as rad / rad², τ by mesh completion, and the result is
//! compared with `sphere_quiver` under M(n, s) ↔ (j, m) = (s, n - 1).

use std::collections::{BTreeMap, BTreeSet};

use dgar::quiver::{sphere_quiver, SphereObject};

type Interval = (usize, i32);
type IntMatrix = Vec<Vec<i64>>;

/// The degree-0 Y-linear maps M(n, s) -> M(n', s'), as matrices in the
/// interval bases. At most one up to scalars: b_0 must go to b'_k.
fn homs(x: Interval, y: Interval, step: i32) -> Vec<IntMatrix> {
    let ((n, s), (n2, s2)) = (x, y);
    if (s - s2) % step != 0 || s < s2 {
        return vec![];
    }
    let k = ((s - s2) / step) as usize;
    // Y^n b_0 = 0 forces Y^n b'_k = 0
    if k >= n2 || k + n < n2 {
        return vec![];
    }
    let mut f = vec![vec![0; n]; n2];
    for i in 0..n {
        if k + i < n2 {
            f[k + i][i] = 1;
        }
    }
    vec![f]
}

fn compose(g: &IntMatrix, f: &IntMatrix) -> IntMatrix {
    let inner = f.len();
    let cols = f.first().map_or(0, Vec::len);
    g.iter().map(|row| (0..cols).map(|c| (0..inner).map(|t| row[t] * f[t][c]).sum()).collect()).collect()
}

fn is_zero(m: &IntMatrix) -> bool {
    m.iter().flatten().all(|&x| x == 0)
}

/// dim rad(x, y) - dim rad²(x, y), with the middle term running over `all`.
fn irreducible(x: Interval, y: Interval, all: &[Interval], step: i32) -> usize {
    if x == y {
        return 0;
    }
    let direct = homs(x, y, step);
    assert!(direct.len() <= 1);
    if direct.is_empty() {
        return 0;
    }
    let factors = all.iter().filter(|&&z| z != x && z != y).any(|&z| {
        homs(x, z, step)
            .iter()
            .any(|f| homs(z, y, step).iter().any(|g| !is_zero(&compose(g, f))))
    });
    usize::from(!factors)
}

struct Oracle {
    successors: BTreeMap<Interval, BTreeSet<Interval>>,
    predecessors: BTreeMap<Interval, BTreeSet<Interval>>,
}

fn oracle(step: i32, n_max: usize, s_range: i32) -> Oracle {
    let all: Vec<Interval> =
        (1..=n_max).flat_map(|n| (-s_range..=s_range).map(move |s| (n, s))).collect();
    let mut successors: BTreeMap<Interval, BTreeSet<Interval>> = BTreeMap::new();
    let mut predecessors: BTreeMap<Interval, BTreeSet<Interval>> = BTreeMap::new();
    for &x in &all {
        for &y in &all {
            let irr = irreducible(x, y, &all, step);
            assert!(irr <= 1, "{x:?} -> {y:?} has {irr} irreducible maps");
            if irr == 1 {
                successors.entry(x).or_default().insert(y);
                predecessors.entry(y).or_default().insert(x);
            }
        }
    }
    Oracle { successors, predecessors }
}

impl Oracle {
    /// The unique A whose successors are the predecessors of c.
    fn tau(&self, c: Interval) -> Interval {
        let want = &self.predecessors[&c];
        let found: Vec<Interval> =
            self.successors.iter().filter(|(a, s)| **a != c && *s == want).map(|(a, _)| *a).collect();
        assert_eq!(found.len(), 1, "mesh at {c:?}: {found:?}");
        found[0]
    }
}

fn interval(o: &SphereObject) -> Interval {
    (o.m as usize + 1, o.j)
}

#[test]
fn sphere_quiver_matches_graded_polynomial_modules() {
    for d in [2, 3, 4] {
        let step = d - 1;
        let (j_max, m_max) = (6, 4);
        // generous margins so every factorization through a middle term is seen
        let o = oracle(step, m_max as usize + 4, j_max + 8 * step);
        let q = sphere_quiver(d, j_max, m_max).unwrap();
        let mut checked = 0;
        for (i, v) in q.vertices.iter().enumerate() {
            let obj = v.object.unwrap();
            let x = interval(&obj);
            assert_eq!(v.stats.unwrap().phi, x.0, "row law at {}", v.id);
            if !v.complete {
                continue;
            }
            let out: BTreeSet<Interval> = q
                .arrows
                .iter()
                .filter(|a| a.source == i)
                .map(|a| interval(&q.vertices[a.target].object.unwrap()))
                .collect();
            assert_eq!(out, o.successors[&x], "d = {d}, successors of {}", v.id);
            if let Some(t) = q.tau_of(i) {
                assert_eq!(interval(&q.vertices[t].object.unwrap()), o.tau(x), "d = {d}, τ of {}", v.id);
            }
            checked += 1;
        }
        assert!(checked > 10, "d = {d}: only {checked} complete vertices");
    }
}

#[test]
fn mesh_dimensions_add() {
    // lengths are φ, so every mesh satisfies φ(τc) + φ(c) = Σ φ(middle)
    let o = oracle(2, 6, 12);
    for n in 1..=4 {
        for s in -4..=4 {
            let c = (n, s);
            let t = o.tau(c);
            assert_eq!(t, (n, s + 2));
            let middle: usize = o.predecessors[&c].iter().map(|m| m.0).sum();
            assert_eq!(t.0 + c.0, middle, "{c:?}");
        }
    }
}
