use std::sync::Arc;

use crate::dg::{Bimodule, DGAlgebra, DGModule, Side};
use crate::error::{DgError, Result};
use crate::linalg::Matrix;
use crate::resolution::{resolve, semifree_hom, semifree_tensor, Resolution, ResolutionBudget};

fn labelled(algebra: Arc<DGAlgebra>, prefix: &str, degrees: Vec<i32>, diff: Matrix, action: Vec<Matrix>) -> DGModule {
    DGModule {
        algebra,
        side: Side::Left,
        labels: (0..degrees.len()).map(|i| format!("{prefix}{i}")).collect(),
        degrees,
        diff,
        action,
    }
}

/// The Serre functor DR ⊗^L_R − evaluated on a resolution.
pub fn serre(res: &Resolution) -> DGModule {
    let r = res.semifree.algebra.clone();
    let dr = Bimodule::dual_of_algebra(r.clone());
    let (c, left) = semifree_tensor(&dr.degrees, &dr.diff, &dr.right, Some(&dr.left), &res.semifree);
    labelled(r, "s", c.degrees, c.diff, left.unwrap_or_default())
}

/// τ = Σ^{-1} (DR ⊗^L_R −).
pub fn tau_resolved(res: &Resolution) -> DGModule {
    serre(res).suspend(-1)
}

/// RHom_R(DR, M), computed as RHom_{R^o}(DM, R) (D is a duality on
/// finite-dimensional modules and D(DR) = R); R acts through its left
/// action on the target.
pub fn inverse_serre(m: &DGModule, budget: &ResolutionBudget) -> Result<DGModule> {
    let r = m.algebra.clone();
    let g = resolve(&m.dual(), budget)?;
    let reg = Bimodule::regular(r.clone());
    let hom = semifree_hom(&g.semifree, &reg.as_right())?;
    let n = hom.dim();
    let basis: Vec<Matrix> = (0..n)
        .map(|j| {
            let mut e = vec![r.field.zero(); n];
            e[j] = r.field.one();
            hom.map_of(&e)
        })
        .collect();
    let action = reg
        .left
        .iter()
        .map(|l| {
            let cols: Vec<_> = basis.iter().map(|h| hom.coords(&l.mul(h))).collect();
            Matrix::from_columns(r.field, n, &cols)
        })
        .collect();
    let out = labelled(r, "h", hom.complex.degrees.clone(), hom.complex.diff.clone(), action);
    out.ensure_valid()?;
    Ok(out)
}

pub fn tau(m: &DGModule, budget: &ResolutionBudget) -> Result<DGModule> {
    require_left(m)?;
    Ok(tau_resolved(&resolve(m, budget)?))
}

/// τ^{-1} = Σ RHom_R(DR, −).
pub fn tau_inverse(m: &DGModule, budget: &ResolutionBudget) -> Result<DGModule> {
    require_left(m)?;
    Ok(inverse_serre(m, budget)?.suspend(1))
}

pub(crate) fn require_left(m: &DGModule) -> Result<()> {
    if m.side != Side::Left {
        return Err(DgError::InvalidInput("expected a left module".into()));
    }
    Ok(())
}
