//! Auslander-Reiten theory for compact modules over a Gorenstein algebra:
//! τ, τ^{-1}, endomorphism rings, splitting, AR triangles.

mod endo;
mod iso;
mod split;
mod tau;
mod triangle;

use std::sync::Arc;

pub use endo::{EndAlgebra, Locality};
pub use iso::{is_isomorphic, is_isomorphic_resolved, Decision};
pub use split::{group_summands, indecomposable_summands, split_summands, Summand};
pub use tau::{inverse_serre, serre, tau, tau_inverse, tau_resolved};
pub use triangle::{ar_triangle_ending_at, arrow_labels, ArTriangle, ArrowLabel, TriangleSummary};

use crate::dg::{DGAlgebra, DGModule};
use crate::error::{DgError, Result};
use crate::gorenstein::require_gorenstein;
use crate::resolution::ResolutionBudget;

/// Entry point that certifies the Gorenstein property once and then
/// answers questions about modules over that algebra.
#[derive(Clone, Debug)]
pub struct ArEngine {
    pub algebra: Arc<DGAlgebra>,
    pub budget: ResolutionBudget,
    pub seed: u64,
}

impl ArEngine {
    pub fn new(algebra: Arc<DGAlgebra>, budget: ResolutionBudget, seed: u64) -> Result<ArEngine> {
        require_gorenstein(&algebra, &budget, seed)?;
        Ok(ArEngine { algebra, budget, seed })
    }

    fn check(&self, m: &DGModule) -> Result<()> {
        if !m.algebra.same_structure(&self.algebra) {
            return Err(DgError::InvalidInput(format!("module is not over {}", self.algebra.name)));
        }
        tau::require_left(m)
    }

    pub fn tau(&self, m: &DGModule) -> Result<DGModule> {
        self.check(m)?;
        tau(m, &self.budget)
    }

    pub fn tau_inverse(&self, m: &DGModule) -> Result<DGModule> {
        self.check(m)?;
        tau_inverse(m, &self.budget)
    }

    pub fn is_isomorphic(&self, m: &DGModule, n: &DGModule) -> Result<Decision> {
        self.check(m)?;
        self.check(n)?;
        is_isomorphic(m, n, &self.budget, self.seed)
    }

    pub fn split_summands(&self, m: &DGModule) -> Result<Vec<Summand>> {
        self.check(m)?;
        split_summands(m, &self.budget, self.seed)
    }

    pub fn ar_triangle_ending_at(&self, p: &DGModule) -> Result<ArTriangle> {
        self.check(p)?;
        ar_triangle_ending_at(p, &self.budget, self.seed)
    }

    pub fn arrow_labels(&self, t: &ArTriangle) -> Result<Vec<ArrowLabel>> {
        arrow_labels(t, &self.budget, self.seed)
    }
}
