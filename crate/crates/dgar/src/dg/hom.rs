use super::bimodule::{right_action_matrices, Bimodule};
use super::cohomology::Cohomology;
use super::graded::{degree_set, sign_odd};
use super::module::{DGModule, QuotientMap, Side};
use crate::error::{DgError, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// A finite cochain complex over the ground field.
#[derive(Clone, Debug)]
pub struct Complex {
    pub field: Field,
    pub degrees: Vec<i32>,
    pub diff: Matrix,
}

impl Complex {
    pub fn cohomology(&self) -> Cohomology {
        Cohomology::of(self.field, &self.degrees, &self.diff)
    }
}

/// Hom_R(M, N): basis element i is the graded R-linear map `maps[i]`
/// (a target × source matrix) of degree `complex.degrees[i]`.
#[derive(Clone, Debug)]
pub struct HomComplex {
    pub complex: Complex,
    pub maps: Vec<Matrix>,
}

impl HomComplex {
    /// The map represented by a coordinate vector.
    pub fn map_of(&self, coords: &[Scalar]) -> Matrix {
        let (r, c) = self.maps.first().map_or((0, 0), |m| (m.rows(), m.cols()));
        let mut out = Matrix::zeros(self.complex.field, r, c);
        for (x, m) in coords.iter().zip(&self.maps) {
            if !x.is_zero() {
                out = out.add(&m.scale(x));
            }
        }
        out
    }
}

/// Graded R-linear maps of degree p satisfy h(r·m) = (-1)^{p|r|} r·h(m); the
/// differential is h ↦ d∘h - (-1)^p h∘d.
pub fn hom_complex(m: &DGModule, n: &DGModule) -> Result<HomComplex> {
    if !m.same_algebra(n) || m.side != n.side {
        return Err(DgError::InvalidInput("Hom between modules over different algebras or sides".into()));
    }
    let f = m.field();
    let r = &m.algebra;
    let (sm, tn) = (m.dim(), n.dim());
    let mut per_degree: Vec<(i32, Vec<Matrix>)> = Vec::new();
    let (ms, ns) = (degree_set(&m.degrees), degree_set(&n.degrees));
    let mut ps: Vec<i32> = ms.iter().flat_map(|a| ns.iter().map(move |b| b - a)).collect();
    ps.sort_unstable();
    ps.dedup();
    for &p in &ps {
        let slots: Vec<(usize, usize)> = (0..tn)
            .flat_map(|t| (0..sm).map(move |s| (t, s)))
            .filter(|&(t, s)| n.degrees[t] == m.degrees[s] + p)
            .collect();
        if slots.is_empty() {
            continue;
        }
        let mut eqs: Vec<Vec<Scalar>> = Vec::new();
        for a in 0..r.dim() {
            let sign = f.sign(sign_odd(p * r.degree(a)));
            let (am, an) = (&m.action[a], &n.action[a]);
            for i in 0..tn {
                for j in 0..sm {
                    if n.degrees[i] != m.degrees[j] + r.degree(a) + p {
                        continue;
                    }
                    // (H·A^M)[i][j] - sign·(A^N·H)[i][j]
                    let row: Vec<Scalar> = slots
                        .iter()
                        .map(|&(t, s)| {
                            let mut v = f.zero();
                            if t == i {
                                v = &v + am.get(s, j);
                            }
                            if s == j {
                                v = &v - &(&sign * an.get(i, t));
                            }
                            v
                        })
                        .collect();
                    if row.iter().any(|x| !x.is_zero()) {
                        eqs.push(row);
                    }
                }
            }
        }
        let kernel = if eqs.is_empty() {
            Matrix::zeros(f, 1, slots.len()).kernel().basis
        } else {
            Matrix::from_rows(f, eqs).kernel().basis
        };
        let maps: Vec<Matrix> = kernel
            .iter()
            .map(|v| {
                let mut h = Matrix::zeros(f, tn, sm);
                for (x, &(t, s)) in v.iter().zip(&slots) {
                    if !x.is_zero() {
                        h.set(t, s, x.clone());
                    }
                }
                h
            })
            .collect();
        if !maps.is_empty() {
            per_degree.push((p, maps));
        }
    }
    let mut degrees = Vec::new();
    let mut maps = Vec::new();
    let mut offsets = std::collections::BTreeMap::new();
    for (p, ms) in &per_degree {
        offsets.insert(*p, degrees.len());
        for h in ms {
            degrees.push(*p);
            maps.push(h.clone());
        }
    }
    let total = degrees.len();
    let mut diff = Matrix::zeros(f, total, total);
    for (p, ms) in &per_degree {
        let sign = f.sign(sign_odd(*p));
        let Some(&off1) = offsets.get(&(p + 1)) else { continue };
        let targets: Vec<Vec<Scalar>> = per_degree
            .iter()
            .find(|(q, _)| *q == p + 1)
            .unwrap()
            .1
            .iter()
            .map(flatten)
            .collect();
        let basis = Matrix::from_columns(f, tn * sm, &targets);
        let off = offsets[p];
        for (k, h) in ms.iter().enumerate() {
            let dh = n.diff.mul(h).sub(&h.mul(&m.diff).scale(&sign));
            if dh.is_zero() {
                continue;
            }
            let x = basis
                .solve(&flatten(&dh))?
                .ok_or_else(|| DgError::Inconsistent("Hom differential left the R-linear maps".into()))?;
            for (i, v) in x.into_iter().enumerate() {
                diff.set(off1 + i, off + k, v);
            }
        }
    }
    Ok(HomComplex { complex: Complex { field: f, degrees, diff }, maps })
}

fn flatten(m: &Matrix) -> Vec<Scalar> {
    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
}

/// A ⊗_R B for a right module A and a left module B: the quotient of
/// A ⊗_k B by a·r ⊗ b - a ⊗ r·b, with d(a⊗b) = da⊗b + (-1)^{|a|} a⊗db.
pub fn tensor_complex(a: &DGModule, b: &DGModule) -> Result<Complex> {
    if a.side != Side::Right || b.side != Side::Left {
        return Err(DgError::InvalidInput("tensor needs a right and a left module".into()));
    }
    if !a.algebra.same_structure(&b.algebra.opposite()) {
        return Err(DgError::InvalidInput("tensor factors over different algebras".into()));
    }
    let t = tensor_core(&a.degrees, &a.diff, &right_action_matrices(a), None, b);
    Ok(t.0)
}

/// X ⊗_R B for a bimodule X; the result keeps the left structure of X.
pub fn tensor_bimodule(x: &Bimodule, b: &DGModule) -> Result<DGModule> {
    if b.side != Side::Left || !x.algebra.same_structure(&b.algebra) {
        return Err(DgError::InvalidInput("bimodule tensor needs a left module over the same algebra".into()));
    }
    let (c, left) = tensor_core(&x.degrees, &x.diff, &x.right, Some(&x.left), b);
    let n = c.degrees.len();
    Ok(DGModule {
        algebra: x.algebra.clone(),
        side: Side::Left,
        labels: (0..n).map(|i| format!("t{i}")).collect(),
        degrees: c.degrees,
        diff: c.diff,
        action: left.unwrap(),
    })
}

fn tensor_core(
    a_deg: &[i32],
    a_diff: &Matrix,
    a_right: &[Matrix],
    a_left: Option<&[Matrix]>,
    b: &DGModule,
) -> (Complex, Option<Vec<Matrix>>) {
    let f = b.field();
    let (na, nb) = (a_deg.len(), b.dim());
    let n = na * nb;
    let idx = |i: usize, j: usize| i * nb + j;
    let degrees: Vec<i32> = (0..na).flat_map(|i| (0..nb).map(move |j| a_deg[i] + b.degrees[j])).collect();
    let mut rels: Vec<Vec<Scalar>> = Vec::new();
    for (r, ar) in a_right.iter().enumerate() {
        let br = &b.action[r];
        for i in 0..na {
            for j in 0..nb {
                let mut v = vec![f.zero(); n];
                let mut nz = false;
                for k in 0..na {
                    let x = ar.get(k, i);
                    if !x.is_zero() {
                        v[idx(k, j)] = &v[idx(k, j)] + x;
                        nz = true;
                    }
                }
                for l in 0..nb {
                    let x = br.get(l, j);
                    if !x.is_zero() {
                        v[idx(i, l)] = &v[idx(i, l)] - x;
                        nz = true;
                    }
                }
                if nz && v.iter().any(|x| !x.is_zero()) {
                    rels.push(v);
                }
            }
        }
    }
    let q = QuotientMap::new(f, n, &rels);
    let keep = &q.keep;
    let apply = |c: usize, op: &dyn Fn(usize, usize, &mut Vec<Scalar>)| {
        let (i, j) = (c / nb, c % nb);
        let mut v = vec![f.zero(); n];
        op(i, j, &mut v);
        q.project(&v)
    };
    let k = keep.len();
    let mut diff = Matrix::zeros(f, k, k);
    for (col, &c) in keep.iter().enumerate() {
        let img = apply(c, &|i, j, v| {
            for kk in 0..na {
                let x = a_diff.get(kk, i);
                if !x.is_zero() {
                    v[idx(kk, j)] = &v[idx(kk, j)] + x;
                }
            }
            let s = f.sign(sign_odd(a_deg[i]));
            for l in 0..nb {
                let x = b.diff.get(l, j);
                if !x.is_zero() {
                    v[idx(i, l)] = &v[idx(i, l)] + &(x * &s);
                }
            }
        });
        for (row, x) in img.into_iter().enumerate() {
            diff.set(row, col, x);
        }
    }
    let left = a_left.map(|ls| {
        ls.iter()
            .map(|lr| {
                let mut m = Matrix::zeros(f, k, k);
                for (col, &c) in keep.iter().enumerate() {
                    let img = apply(c, &|i, j, v| {
                        for kk in 0..na {
                            let x = lr.get(kk, i);
                            if !x.is_zero() {
                                v[idx(kk, j)] = &v[idx(kk, j)] + x;
                            }
                        }
                    });
                    for (row, x) in img.into_iter().enumerate() {
                        m.set(row, col, x);
                    }
                }
                m
            })
            .collect()
    });
    let degrees = keep.iter().map(|&c| degrees[c]).collect();
    (Complex { field: f, degrees, diff }, left)
}
