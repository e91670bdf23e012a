use serde::{Deserialize, Serialize};

use crate::dg::{DGModule, DGMorphism, GradedDims};
use crate::error::{DgError, Result};
use crate::linalg::{Matrix, Scalar};
use crate::resolution::{resolve, semifree_hom, Resolution, ResolutionBudget};

use super::endo::{EndAlgebra, Locality};
use super::iso::{is_isomorphic_resolved, Decision};
use super::split::{indecomposable_summands, split_summands};
use super::tau::{serre, tau_inverse};

/// τP → N → P → Στ P. The middle term is Σ^{-1} cone(π) for the
/// connecting map π: P → S P spanning the socle of Hom(P, S P) over End(P).
#[derive(Clone, Debug)]
pub struct ArTriangle {
    pub end: Resolution,
    pub tau_term: DGModule,
    pub middle: DGModule,
    /// Chain map from the model of P to S P.
    pub connecting: Matrix,
    /// τP → N.
    pub inclusion: Matrix,
    /// N → P (its model).
    pub projection: Matrix,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TriangleSummary {
    pub tau_dims: GradedDims,
    pub middle_dims: GradedDims,
    pub end_dims: GradedDims,
    /// φ of τP, N and P.
    pub phi: [usize; 3],
    pub phi_additive: bool,
}

impl ArTriangle {
    pub fn summary(&self, budget: &ResolutionBudget) -> Result<TriangleSummary> {
        let phi = [
            resolve(&self.tau_term, budget)?.phi(),
            resolve(&self.middle, budget)?.phi(),
            self.end.phi(),
        ];
        Ok(TriangleSummary {
            tau_dims: self.tau_term.cohomology_dims(),
            middle_dims: self.middle.cohomology_dims(),
            end_dims: self.end.realized.cohomology_dims(),
            phi,
            phi_additive: phi[1] == phi[0] + phi[2],
        })
    }
}

/// Requires an indecomposable compact P (certified by a local
/// endomorphism ring).
pub fn ar_triangle_ending_at(p: &DGModule, budget: &ResolutionBudget, seed: u64) -> Result<ArTriangle> {
    let res = resolve(p, budget)?;
    if res.semifree.is_empty() {
        return Err(DgError::Precondition("the zero module has no AR triangle".into()));
    }
    let end = EndAlgebra::of(&res)?;
    match end.locality(seed) {
        Locality::Local => {}
        Locality::NotLocal => return Err(DgError::Decomposable),
        Locality::Undecided => return Err(DgError::Undecided("indecomposability of the end term".into())),
    }
    let rad = end.radical.clone().ok_or_else(|| DgError::Undecided("radical in small characteristic".into()))?;
    let sp = serre(&res);
    let hom = semifree_hom(&res.semifree, &sp)?;
    let h = hom.complex.cohomology();
    let classes = h.reps(0);
    let field = sp.field();
    let maps: Vec<Matrix> = classes.iter().map(|c| hom.map_of(c)).collect();
    let radical_maps: Vec<Matrix> = rad.basis.iter().map(|x| end.chain_map(x)).collect();
    // v ↦ (v∘r)_r, the socle being its kernel
    let mut rows: Vec<Vec<Scalar>> = Vec::new();
    for r in &radical_maps {
        let images = maps
            .iter()
            .map(|v| {
                let c = h.classify(0, &hom.coords(&v.mul(r))).ok_or_else(|| DgError::Inconsistent("non-cycle".into()))?;
                Ok(if c.is_empty() { vec![field.zero(); classes.len()] } else { c })
            })
            .collect::<Result<Vec<_>>>()?;
        let block = Matrix::from_columns(field, classes.len(), &images);
        rows.extend((0..block.rows()).map(|i| block.row(i).to_vec()));
    }
    let socle = if rows.is_empty() {
        Matrix::zeros(field, 1, classes.len()).kernel()
    } else {
        Matrix::from_rows(field, rows).kernel()
    };
    if socle.dim() != 1 {
        return Err(DgError::Inconsistent(format!("socle of Hom(P, SP) has dimension {}", socle.dim())));
    }
    let mut pi = Matrix::zeros(field, sp.dim(), res.realized.dim());
    for (c, m) in socle.basis[0].iter().zip(&maps) {
        if !c.is_zero() {
            pi = pi.add(&m.scale(c));
        }
    }
    let cone = DGMorphism::new(res.realized.clone(), sp.clone(), pi.clone()).cone();
    Ok(ArTriangle {
        tau_term: sp.suspend(-1),
        middle: cone.module.suspend(-1),
        connecting: pi,
        inclusion: cone.inclusion,
        projection: cone.projection,
        end: res,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowLabel {
    pub summand_dims: GradedDims,
    pub summand_phi: usize,
    /// Multiplicity of the summand M in the middle term ending at P.
    pub alpha: usize,
    /// Multiplicity of P in the middle term ending at τ^{-1}M.
    pub beta: usize,
}

/// Labels (α, β) of the arrows M → P for the indecomposable summands M of
/// the middle term.
pub fn arrow_labels(t: &ArTriangle, budget: &ResolutionBudget, seed: u64) -> Result<Vec<ArrowLabel>> {
    let mut out = Vec::new();
    for s in split_summands(&t.middle, budget, seed)? {
        let next = ar_triangle_ending_at(&tau_inverse(s.module(), budget)?, budget, seed)?;
        let mut beta = 0;
        for part in indecomposable_summands(&next.middle, budget, seed)? {
            match is_isomorphic_resolved(&part, &t.end, seed)? {
                Decision::Yes => beta += 1,
                Decision::No => {}
                Decision::Undecided => return Err(DgError::Undecided("isomorphism in arrow label".into())),
            }
        }
        out.push(ArrowLabel {
            summand_dims: s.module().cohomology_dims(),
            summand_phi: s.resolution.phi(),
            alpha: s.multiplicity,
            beta,
        });
    }
    Ok(out)
}
