use std::sync::Arc;

use super::algebra::DGAlgebra;
use super::graded::indices_in;
use super::module::{DGModule, DGMorphism, QuotientMap};
use crate::error::{DgError, Result};
use crate::linalg::{Field, Matrix, Scalar};

fn unit_vector(f: Field, n: usize, i: usize) -> Vec<Scalar> {
    let mut v = vec![f.zero(); n];
    v[i] = f.one();
    v
}

/// Coordinate vectors (within the index set `idx`) spanning a complement
/// of the span of `vs`, chosen as the non-pivot coordinates.
fn complement(f: Field, n: usize, idx: &[usize], vs: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let local: Vec<Vec<Scalar>> = vs.iter().map(|v| idx.iter().map(|&i| v[i].clone()).collect()).collect();
    let pivots = if local.is_empty() { Vec::new() } else { Matrix::from_rows(f, local).echelon().pivots };
    (0..idx.len()).filter(|k| !pivots.contains(k)).map(|k| unit_vector(f, n, idx[k])).collect()
}

fn embed(f: Field, n: usize, idx: &[usize], local: &[Scalar]) -> Vec<Scalar> {
    let mut v = vec![f.zero(); n];
    for (k, &i) in idx.iter().enumerate() {
        v[i] = local[k].clone();
    }
    v
}

/// A submodule U with U^i = 0 below inf m, and the inclusion U -> m, which
/// is a quasi-isomorphism.
pub fn truncate_below(m: &DGModule) -> Result<(DGModule, DGMorphism)> {
    let h = m.cohomology();
    let inf = h.dims().inf().ok_or_else(|| DgError::Precondition("truncation of an acyclic module".into()))?;
    let f = m.field();
    let n = m.dim();
    let mut span: Vec<Vec<Scalar>> = h.reps(inf).to_vec();
    let idx1 = indices_in(&m.degrees, inf + 1);
    let idx0 = indices_in(&m.degrees, inf);
    let bounds: Vec<Vec<Scalar>> = idx0.iter().map(|&j| m.diff.column(j)).collect();
    span.extend(complement(f, n, &idx1, &bounds));
    for i in 0..n {
        if m.degrees[i] >= inf + 2 {
            span.push(unit_vector(f, n, i));
        }
    }
    let (u, inc) = m.submodule(&span)?;
    let mor = DGMorphism::new(u.clone(), m.clone(), inc);
    debug_assert!(mor.is_quasi_isomorphism());
    Ok((u, mor))
}

/// A quotient V with V^j = 0 above sup m, and the projection m -> V, which
/// is a quasi-isomorphism.
pub fn truncate_above(m: &DGModule) -> Result<(DGModule, DGMorphism)> {
    let sup = m
        .cohomology_dims()
        .sup()
        .ok_or_else(|| DgError::Precondition("truncation of an acyclic module".into()))?;
    let (v, proj) = m.quotient(&above_kernel(m.field(), &m.degrees, &m.diff, sup))?;
    let mor = DGMorphism::new(m.clone(), v.clone(), proj);
    debug_assert!(mor.is_quasi_isomorphism());
    Ok((v, mor))
}

/// The acyclic subcomplex D ⊕ M^{>s}, D a complement of the cycles in degree s.
fn above_kernel(f: Field, degrees: &[i32], diff: &Matrix, s: i32) -> Vec<Vec<Scalar>> {
    let n = degrees.len();
    let idx = indices_in(degrees, s);
    let idx1 = indices_in(degrees, s + 1);
    let cycles = diff.select(&idx1, &idx).kernel().basis;
    let cyc_full: Vec<Vec<Scalar>> = cycles.iter().map(|c| embed(f, n, &idx, c)).collect();
    let mut span = complement(f, n, &idx, &cyc_full);
    for i in 0..n {
        if degrees[i] > s {
            span.push(unit_vector(f, n, i));
        }
    }
    span
}

/// Quotient algebra S with S^{>d} = 0, together with the projection R -> S
/// (a quasi-isomorphism of DG algebras).
pub fn truncate_algebra(a: &DGAlgebra) -> Result<(DGAlgebra, Matrix)> {
    let d = a.top;
    let f = a.field;
    let reg = DGModule::regular(Arc::new(a.clone()));
    let span = above_kernel(f, &a.degrees, &a.diff, d);
    let keep = QuotientMap::new(f, a.dim(), &span).keep;
    let (q, proj) = reg.quotient(&span)?;
    let mul: Vec<Matrix> = keep.iter().map(|&i| q.action[i].clone()).collect();
    let unit = keep
        .iter()
        .position(|&i| i == a.unit)
        .ok_or_else(|| DgError::Inconsistent("truncation removed the unit".into()))?;
    let s = DGAlgebra::new(
        a.name.clone(),
        f,
        q.degrees.clone(),
        q.labels.clone(),
        q.diff.clone(),
        mul,
        unit,
    );
    Ok((s, proj))
}
