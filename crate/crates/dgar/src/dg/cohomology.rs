use std::collections::BTreeMap;

use super::graded::{degree_set, indices_in, GradedDims};
use crate::linalg::{Field, Matrix, Scalar};

/// Cohomology of one degree: chosen representative cycles and the data
/// needed to express any cycle in terms of them.
#[derive(Clone, Debug)]
pub struct CohomologyDegree {
    pub degree: i32,
    pub indices: Vec<usize>,
    /// Representatives as full-length vectors of the ambient complex.
    pub reps: Vec<Vec<Scalar>>,
    boundaries: Vec<Vec<Scalar>>,
    local_reps: Vec<Vec<Scalar>>,
}

#[derive(Clone, Debug)]
pub struct Cohomology {
    pub field: Field,
    pub len: usize,
    pub degrees: BTreeMap<i32, CohomologyDegree>,
}

fn block(diff: &Matrix, degrees: &[i32], from: i32) -> Matrix {
    diff.select(&indices_in(degrees, from + 1), &indices_in(degrees, from))
}

impl Cohomology {
    /// H of a finite complex with basis degrees `degrees` and differential
    /// `diff` (column j is d of basis vector j).
    pub fn of(field: Field, degrees: &[i32], diff: &Matrix) -> Cohomology {
        let mut out = BTreeMap::new();
        for d in degree_set(degrees) {
            let idx = indices_in(degrees, d);
            let cycles = block(diff, degrees, d).kernel().basis;
            let prev = block(diff, degrees, d - 1);
            let boundary_cols: Vec<Vec<Scalar>> = (0..prev.cols()).map(|j| prev.column(j)).collect();
            let mut cols = boundary_cols.clone();
            cols.extend(cycles.iter().cloned());
            if cols.is_empty() {
                continue;
            }
            let e = Matrix::from_columns(field, idx.len(), &cols).echelon();
            let nb = boundary_cols.len();
            let local_reps: Vec<Vec<Scalar>> =
                e.pivots.iter().filter(|&&p| p >= nb).map(|&p| cols[p].clone()).collect();
            if local_reps.is_empty() {
                continue;
            }
            let boundaries: Vec<Vec<Scalar>> =
                e.pivots.iter().filter(|&&p| p < nb).map(|&p| cols[p].clone()).collect();
            let reps = local_reps
                .iter()
                .map(|r| {
                    let mut v = vec![field.zero(); degrees.len()];
                    for (k, &i) in idx.iter().enumerate() {
                        v[i] = r[k].clone();
                    }
                    v
                })
                .collect();
            out.insert(d, CohomologyDegree { degree: d, indices: idx, reps, boundaries, local_reps });
        }
        Cohomology { field, len: degrees.len(), degrees: out }
    }

    pub fn dims(&self) -> GradedDims {
        GradedDims(self.degrees.iter().map(|(&d, c)| (d, c.reps.len())).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.degrees.is_empty()
    }

    pub fn reps(&self, d: i32) -> &[Vec<Scalar>] {
        self.degrees.get(&d).map_or(&[], |c| c.reps.as_slice())
    }

    pub fn dim(&self, d: i32) -> usize {
        self.reps(d).len()
    }

    /// Coordinates of the class of a cycle of degree `d` (a full-length
    /// vector) in the representative basis. `None` if the vector is not a
    /// cycle in degree `d` modulo boundaries.
    pub fn classify(&self, d: i32, v: &[Scalar]) -> Option<Vec<Scalar>> {
        let Some(c) = self.degrees.get(&d) else {
            // Zero cohomology: only boundaries; caller vouches for cyclicity.
            return Some(Vec::new());
        };
        let local: Vec<Scalar> = c.indices.iter().map(|&i| v[i].clone()).collect();
        let mut cols = c.boundaries.clone();
        cols.extend(c.local_reps.iter().cloned());
        let m = Matrix::from_columns(self.field, c.indices.len(), &cols);
        let x = m.solve(&local).ok()??;
        Some(x[c.boundaries.len()..].to_vec())
    }

    /// Whether a degree-`d` cycle is a boundary.
    pub fn is_boundary(&self, d: i32, v: &[Scalar]) -> bool {
        self.classify(d, v).is_some_and(|c| c.iter().all(Scalar::is_zero))
    }
}

/// Whether every degree of the complex is exact.
pub fn is_acyclic(degrees: &[i32], diff: &Matrix) -> bool {
    degree_set(degrees).into_iter().all(|d| {
        let n = indices_in(degrees, d).len();
        let out_rank = block(diff, degrees, d).rank();
        let in_rank = block(diff, degrees, d - 1).rank();
        n == out_rank + in_rank
    })
}
