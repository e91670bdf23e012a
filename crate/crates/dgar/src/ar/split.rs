use crate::dg::DGModule;
use crate::error::{DgError, Result};
use crate::linalg::Scalar;
use crate::resolution::{resolve, Resolution, ResolutionBudget};

use super::endo::{EndAlgebra, Locality};
use super::iso::{is_isomorphic_resolved, Decision};

/// An indecomposable summand up to isomorphism.
#[derive(Clone, Debug)]
pub struct Summand {
    pub resolution: Resolution,
    pub multiplicity: usize,
}

impl Summand {
    pub fn module(&self) -> &DGModule {
        &self.resolution.realized
    }
}

/// Indecomposable summands listed with repetition. A summand whose
/// endomorphism ring is neither certified local nor split makes the whole
/// call undecided.
pub fn indecomposable_summands(m: &DGModule, budget: &ResolutionBudget, seed: u64) -> Result<Vec<Resolution>> {
    let mut out = Vec::new();
    let mut stack = vec![resolve(m, budget)?];
    while let Some(res) = stack.pop() {
        if res.semifree.is_empty() {
            continue;
        }
        let end = EndAlgebra::of(&res)?;
        match end.locality(seed) {
            Locality::Local => out.push(res),
            Locality::Undecided => {
                return Err(DgError::Undecided(format!(
                    "locality of an endomorphism ring of dimension {}",
                    end.dim()
                )))
            }
            Locality::NotLocal => {
                let e = end.find_idempotent(seed).ok_or_else(|| DgError::Inconsistent("idempotent vanished".into()))?;
                let lifted = end.lift_idempotent(&e)?;
                let complement = crate::linalg::Matrix::identity(lifted.field, lifted.rows()).sub(&lifted);
                for p in [lifted, complement] {
                    let cols: Vec<Vec<Scalar>> = (0..p.cols()).map(|j| p.column(j)).collect();
                    let (sub, _) = res.realized.submodule(&cols)?;
                    stack.push(resolve(&sub, budget)?);
                }
            }
        }
    }
    let total = out.iter().fold(crate::dg::GradedDims::default(), |acc, r| acc.sum(&r.realized.cohomology_dims()));
    if total != m.cohomology_dims() {
        return Err(DgError::Inconsistent("summands do not add up".into()));
    }
    Ok(out)
}

/// Groups a list of indecomposables by isomorphism class.
pub fn group_summands(parts: Vec<Resolution>, seed: u64) -> Result<Vec<Summand>> {
    let mut groups: Vec<Summand> = Vec::new();
    'parts: for r in parts {
        for g in groups.iter_mut() {
            match is_isomorphic_resolved(&g.resolution, &r, seed)? {
                Decision::Yes => {
                    g.multiplicity += 1;
                    continue 'parts;
                }
                Decision::No => {}
                Decision::Undecided => return Err(DgError::Undecided("isomorphism between summands".into())),
            }
        }
        groups.push(Summand { resolution: r, multiplicity: 1 });
    }
    Ok(groups)
}

pub fn split_summands(m: &DGModule, budget: &ResolutionBudget, seed: u64) -> Result<Vec<Summand>> {
    group_summands(indecomposable_summands(m, budget, seed)?, seed)
}
