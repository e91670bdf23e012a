//! Three independent Gorenstein tests, run side by side: Ext_R(k, R) is k
//! in degree d, D H(R) ≅ Σ^d H(R), and DR is compact, each on both sides.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dg::{hom_complex, Bimodule, DGAlgebra, DGModule, GradedDims, Side};
use crate::error::{DgError, Result};
use crate::linalg::{invertible_combination, Invertibility, Matrix};
use crate::resolution::{
    compactness_certificate, resolve_partial, semifree_hom, CompactnessCertificate, CompactnessVerdict,
    ResolutionBudget,
};

pub const COND_EXT: &str = "gorenstein.cond1";
pub const COND_DUALITY: &str = "gorenstein.cond2";
pub const COND_COMPACT: &str = "gorenstein.cond5";

/// Ext_R(k, R) restricted to the degrees a partial resolution of k
/// determines: every p in [lo, hi] (lo absent when the resolution finished).
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtWindow {
    pub dims: GradedDims,
    pub lo: Option<i32>,
    pub hi: i32,
    pub generators: usize,
}

impl ExtWindow {
    fn is_dualizing(&self, d: i32) -> bool {
        self.dims == GradedDims::from_pairs(&[(d, 1)])
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ExtCondition {
    pub left: ExtWindow,
    pub right: ExtWindow,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case", tag = "kind")]
pub enum IsoOutcome {
    /// Coefficients of an invertible map in the basis of degree-0 cycles.
    Isomorphic { coefficients: Vec<String> },
    DimensionObstruction,
    NoIsomorphism,
    Undecided,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct IsoCheck {
    pub source_dims: GradedDims,
    pub target_dims: GradedDims,
    pub outcome: IsoOutcome,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct DualityCondition {
    pub left: IsoCheck,
    pub right: IsoCheck,
    pub holds: Option<bool>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompactCondition {
    pub left: CompactnessCertificate,
    pub right: CompactnessCertificate,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GorensteinReport {
    pub algebra: String,
    pub top_degree: i32,
    pub seed: u64,
    pub conditions: Vec<String>,
    pub cond1: ExtCondition,
    pub cond2: DualityCondition,
    pub cond5: CompactCondition,
    pub agreement: bool,
    /// Present only when every condition reached the same definite answer.
    pub verdict: Option<bool>,
}

fn ext_window(alg: Arc<DGAlgebra>, side: Side, budget: &ResolutionBudget) -> Result<ExtWindow> {
    let d = alg.top;
    let k = DGModule::residue_field(alg.clone()).with_side(side);
    let reg = DGModule::regular(alg).with_side(side);
    let (res, next) = resolve_partial(&k, budget)?;
    // The unresolved part has generators in degrees ≥ next, so it only
    // affects Ext^p for p ≤ d - next.
    let lo = next.map(|j| d - j + 1);
    if lo.is_some_and(|lo| lo > d) {
        return Err(DgError::Budget(res.trace));
    }
    let h = semifree_hom(&res.semifree, &reg)?.complex.cohomology().dims();
    let dims = GradedDims(h.0.into_iter().filter(|&(p, _)| lo.is_none_or(|lo| p >= lo)).collect());
    Ok(ExtWindow { dims, lo, hi: d, generators: res.semifree.len() })
}

pub fn check_condition1(a: &Arc<DGAlgebra>, budget: &ResolutionBudget) -> Result<ExtCondition> {
    let left = ext_window(a.clone(), Side::Left, budget)?;
    let right = ext_window(Arc::new(a.opposite()), Side::Right, budget)?;
    let holds = left.is_dualizing(a.top) && right.is_dualizing(a.top);
    Ok(ExtCondition { left, right, holds })
}

fn rebind(m: DGModule, alg: &Arc<DGAlgebra>) -> DGModule {
    debug_assert!(m.algebra.same_structure(alg));
    DGModule { algebra: alg.clone(), ..m }
}

/// Searches the degree-0 cycles of Hom(m, n) for an invertible map.
pub fn find_isomorphism(m: &DGModule, n: &DGModule, seed: u64) -> Result<IsoCheck> {
    let (sd, td) = (m.cohomology_dims(), n.cohomology_dims());
    let same_shape = GradedDims::from_degrees(&m.degrees) == GradedDims::from_degrees(&n.degrees);
    let outcome = if sd != td || !same_shape {
        IsoOutcome::DimensionObstruction
    } else {
        let h = hom_complex(m, n)?;
        let idx: Vec<usize> = (0..h.complex.degrees.len()).filter(|&i| h.complex.degrees[i] == 0).collect();
        let rows: Vec<usize> = (0..h.complex.degrees.len()).filter(|&i| h.complex.degrees[i] == 1).collect();
        let cycles = if rows.is_empty() {
            Matrix::zeros(m.field(), 1, idx.len()).kernel().basis
        } else {
            h.complex.diff.select(&rows, &idx).kernel().basis
        };
        let maps: Vec<Matrix> = cycles
            .iter()
            .map(|c| {
                let mut full = vec![m.field().zero(); h.complex.degrees.len()];
                for (x, &i) in c.iter().zip(&idx) {
                    full[i] = x.clone();
                }
                h.map_of(&full)
            })
            .collect();
        match invertible_combination(m.field(), &maps, seed) {
            Invertibility::Invertible(c) => IsoOutcome::Isomorphic { coefficients: c.iter().map(|x| x.to_string()).collect() },
            Invertibility::Singular => IsoOutcome::NoIsomorphism,
            Invertibility::Undecided => IsoOutcome::Undecided,
        }
    };
    Ok(IsoCheck { source_dims: sd, target_dims: td, outcome })
}

pub fn check_condition2(a: &Arc<DGAlgebra>, seed: u64) -> Result<DualityCondition> {
    let d = a.top;
    let hr = Arc::new(a.cohomology_algebra()?);
    let right_regular = Bimodule::regular(hr.clone()).as_right();
    let left_regular = DGModule::regular(hr.clone());

    let dual_left = rebind(right_regular.dual(), &hr);
    let left = find_isomorphism(&dual_left, &left_regular.suspend(d), seed)?;

    let target = right_regular.suspend(d);
    let dual_right = rebind(left_regular.dual(), &target.algebra);
    let right = find_isomorphism(&dual_right, &target, seed)?;

    let verdict = |c: &IsoCheck| match c.outcome {
        IsoOutcome::Isomorphic { .. } => Some(true),
        IsoOutcome::DimensionObstruction | IsoOutcome::NoIsomorphism => Some(false),
        IsoOutcome::Undecided => None,
    };
    let holds = match (verdict(&left), verdict(&right)) {
        (Some(false), _) | (_, Some(false)) => Some(false),
        (Some(true), Some(true)) => Some(true),
        _ => None,
    };
    Ok(DualityCondition { left, right, holds })
}

pub fn check_condition5(a: &Arc<DGAlgebra>, budget: &ResolutionBudget) -> Result<CompactCondition> {
    let dr = Bimodule::dual_of_algebra(a.clone());
    let left = compactness_certificate(&dr.as_left(), budget)?;
    let right = compactness_certificate(&dr.as_right(), budget)?;
    let holds = left.verdict == CompactnessVerdict::Compact && right.verdict == CompactnessVerdict::Compact;
    Ok(CompactCondition { left, right, holds })
}

pub fn gorenstein(a: &Arc<DGAlgebra>, budget: &ResolutionBudget, seed: u64) -> Result<GorensteinReport> {
    a.ensure_valid()?;
    let cond1 = check_condition1(a, budget)?;
    let cond2 = check_condition2(a, seed)?;
    let cond5 = check_condition5(a, budget)?;
    let answers = [Some(cond1.holds), cond2.holds, Some(cond5.holds)];
    let definite: Vec<bool> = answers.iter().flatten().copied().collect();
    if definite.iter().any(|&x| x != definite[0]) {
        return Err(DgError::Inconsistent(format!(
            "Gorenstein conditions disagree on {}: ext {}, duality {:?}, compact {}",
            a.name, cond1.holds, cond2.holds, cond5.holds
        )));
    }
    let agreement = definite.len() == answers.len();
    Ok(GorensteinReport {
        algebra: a.name.clone(),
        top_degree: a.top,
        seed,
        conditions: vec![COND_EXT.into(), COND_DUALITY.into(), COND_COMPACT.into()],
        verdict: agreement.then(|| definite[0]),
        agreement,
        cond1,
        cond2,
        cond5,
    })
}

/// Refuses algebras that are not (certifiably) Gorenstein.
pub fn require_gorenstein(a: &Arc<DGAlgebra>, budget: &ResolutionBudget, seed: u64) -> Result<()> {
    match gorenstein(a, budget, seed)?.verdict {
        Some(true) => Ok(()),
        Some(false) => Err(DgError::NotGorenstein(a.name.clone())),
        None => Err(DgError::Undecided(format!("Gorenstein property of {}", a.name))),
    }
}
