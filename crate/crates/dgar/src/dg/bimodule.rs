use std::sync::Arc;

use super::algebra::{DGAlgebra, ValidationFailure};
use super::graded::sign_odd;
use super::module::{DGModule, Side};
use crate::linalg::Matrix;

/// A DG bimodule over one algebra on both sides. `right[r]` is the matrix
/// of x ↦ x·r (a genuine right action).
#[derive(Clone, Debug)]
pub struct Bimodule {
    pub algebra: Arc<DGAlgebra>,
    pub degrees: Vec<i32>,
    pub labels: Vec<String>,
    pub diff: Matrix,
    pub left: Vec<Matrix>,
    pub right: Vec<Matrix>,
}

impl Bimodule {
    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// R as a bimodule over itself.
    pub fn regular(algebra: Arc<DGAlgebra>) -> Bimodule {
        let n = algebra.dim();
        let f = algebra.field;
        let right = (0..n)
            .map(|r| {
                let mut m = Matrix::zeros(f, n, n);
                for x in 0..n {
                    for c in 0..n {
                        let v = algebra.mu(x, r, c);
                        if !v.is_zero() {
                            m.set(c, x, v.clone());
                        }
                    }
                }
                m
            })
            .collect();
        Bimodule {
            degrees: algebra.degrees.clone(),
            labels: algebra.labels.clone(),
            diff: algebra.diff.clone(),
            left: algebra.mul.clone(),
            right,
            algebra,
        }
    }

    /// DR = Hom_k(R, k) with (f·r)(x) = f(rx), (r·f)(x) = ±f(xr) and
    /// (df)(x) = -(-1)^{|f|} f(dx).
    pub fn dual_of_algebra(algebra: Arc<DGAlgebra>) -> Bimodule {
        let n = algebra.dim();
        let f = algebra.field;
        let deg = |a: usize| algebra.degree(a);
        let mut diff = Matrix::zeros(f, n, n);
        for a in 0..n {
            for x in 0..n {
                let v = algebra.diff.get(a, x);
                if !v.is_zero() {
                    diff.set(x, a, -(v * &f.sign(sign_odd(deg(a)))));
                }
            }
        }
        let mut left = Vec::with_capacity(n);
        let mut right = Vec::with_capacity(n);
        for r in 0..n {
            let mut l = Matrix::zeros(f, n, n);
            let mut rt = Matrix::zeros(f, n, n);
            for a in 0..n {
                for x in 0..n {
                    let v = algebra.mu(r, x, a);
                    if !v.is_zero() {
                        rt.set(x, a, v.clone());
                    }
                    let w = algebra.mu(x, r, a);
                    if !w.is_zero() {
                        let s = f.sign(sign_odd(deg(r) * (deg(x) - deg(a))));
                        l.set(x, a, w * &s);
                    }
                }
            }
            left.push(l);
            right.push(rt);
        }
        Bimodule {
            degrees: algebra.degrees.iter().map(|d| -d).collect(),
            labels: algebra.labels.iter().map(|l| format!("{l}*")).collect(),
            diff,
            left,
            right,
            algebra,
        }
    }

    pub fn as_left(&self) -> DGModule {
        DGModule {
            algebra: self.algebra.clone(),
            side: Side::Left,
            degrees: self.degrees.clone(),
            labels: self.labels.clone(),
            diff: self.diff.clone(),
            action: self.left.clone(),
        }
    }

    /// The right structure as a left module over the opposite algebra.
    pub fn as_right(&self) -> DGModule {
        DGModule {
            algebra: Arc::new(self.algebra.opposite()),
            side: Side::Right,
            degrees: self.degrees.clone(),
            labels: self.labels.clone(),
            diff: self.diff.clone(),
            action: koszul_twist(&self.algebra, &self.degrees, &self.right),
        }
    }

    pub fn validate(&self) -> Vec<ValidationFailure> {
        let mut out = self.as_left().validate();
        out.extend(self.as_right().validate());
        'c: for r in 0..self.algebra.dim() {
            for s in 0..self.algebra.dim() {
                if self.left[r].mul(&self.right[s]) != self.right[s].mul(&self.left[r]) {
                    out.push(ValidationFailure {
                        check: "bimodule",
                        detail: format!("({}·m)·{} != {}·(m·{})", self.algebra.label(r), self.algebra.label(s), self.algebra.label(r), self.algebra.label(s)),
                    });
                    break 'c;
                }
            }
        }
        out
    }
}

/// Converts a right module (stored as a left module over the opposite
/// algebra) to genuine right-action matrices.
pub fn right_action_matrices(m: &DGModule) -> Vec<Matrix> {
    koszul_twist(&m.algebra, &m.degrees, &m.action)
}

/// Multiplies the entry for (r, m) by (-1)^{|r||m|}; an involution that
/// turns right actions into left actions of the opposite algebra and back.
fn koszul_twist(algebra: &DGAlgebra, degrees: &[i32], mats: &[Matrix]) -> Vec<Matrix> {
    mats.iter()
        .enumerate()
        .map(|(r, m)| {
            let mut a = m.clone();
            for (j, &dj) in degrees.iter().enumerate() {
                if sign_odd(algebra.degree(r) * dj) {
                    for i in 0..degrees.len() {
                        let v = a.get(i, j);
                        if !v.is_zero() {
                            let w = -v;
                            a.set(i, j, w);
                        }
                    }
                }
            }
            a
        })
        .collect()
}
