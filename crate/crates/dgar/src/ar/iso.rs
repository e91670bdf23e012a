use serde::{Deserialize, Serialize};

use crate::dg::DGModule;
use crate::error::{DgError, Result};
use crate::linalg::{invertible_combination, Invertibility, Matrix};
use crate::resolution::{resolve, semifree_hom, Resolution, ResolutionBudget};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Decision {
    Yes,
    No,
    Undecided,
}

/// Between minimal semi-free modules a chain map is a homotopy equivalence
/// iff its linear part (the generator-to-generator block modulo the
/// augmentation ideal) is invertible, so only those blocks are tested.
pub fn is_isomorphic_resolved(a: &Resolution, b: &Resolution, seed: u64) -> Result<Decision> {
    let (fa, fb) = (&a.semifree, &b.semifree);
    if !fa.algebra.same_structure(&fb.algebra) || fa.side != fb.side {
        return Err(DgError::InvalidInput("modules over different algebras or sides".into()));
    }
    if a.realized.cohomology_dims() != b.realized.cohomology_dims() || fa.generator_dims() != fb.generator_dims() {
        return Ok(Decision::No);
    }
    if fa.is_empty() {
        return Ok(Decision::Yes);
    }
    let hom = semifree_hom(fa, &b.realized)?;
    let zero = hom.indices_in(0);
    let rows = hom.indices_in(1);
    let cycles = if rows.is_empty() {
        Matrix::zeros(hom.complex.field, 1, zero.len()).kernel().basis
    } else {
        hom.complex.diff.select(&rows, &zero).kernel().basis
    };
    let field = hom.complex.field;
    let linear: Vec<Matrix> = cycles
        .iter()
        .map(|c| {
            let mut full = vec![field.zero(); hom.dim()];
            for (x, &i) in c.iter().zip(&zero) {
                full[i] = x.clone();
            }
            let h = hom.map_of(&full);
            let n = fa.len();
            let mut l = Matrix::zeros(field, n, n);
            for k in 0..n {
                for t in 0..n {
                    l.set(t, k, h.get(fb.generator_index(t), fa.generator_index(k)).clone());
                }
            }
            l
        })
        .collect();
    Ok(match invertible_combination(field, &linear, seed) {
        Invertibility::Invertible(_) => Decision::Yes,
        Invertibility::Singular => Decision::No,
        Invertibility::Undecided => Decision::Undecided,
    })
}

pub fn is_isomorphic(m: &DGModule, n: &DGModule, budget: &ResolutionBudget, seed: u64) -> Result<Decision> {
    if m.cohomology_dims() != n.cohomology_dims() {
        return Ok(Decision::No);
    }
    is_isomorphic_resolved(&resolve(m, budget)?, &resolve(n, budget)?, seed)
}
