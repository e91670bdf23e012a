//! Minimal semi-free resolutions by cone killing, and the derived functors
//! computed from them.

use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::dg::{indices_in, sign_odd, Complex, DGAlgebra, DGModule, DGMorphism, GradedDims, Side};
use crate::error::{DgError, Result};
use crate::linalg::{Matrix, Scalar};
use crate::schema::{GeneratorDifferential, GeneratorEntry, ModuleDescription, MODULE_SCHEMA};

/// Per pass: the degree of the generators added and how many.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct BudgetTrace {
    pub passes: Vec<(i32, usize)>,
}

impl BudgetTrace {
    pub fn total_generators(&self) -> usize {
        self.passes.iter().map(|p| p.1).sum()
    }

    /// Generator degrees strictly increase from pass to pass.
    pub fn is_monotone(&self) -> bool {
        self.passes.windows(2).all(|w| w[0].0 < w[1].0)
    }

    /// The pass degrees as suspension indices: a generator in degree j is a
    /// copy of Σ^{-j}R.
    pub fn suspension_indices(&self) -> Vec<i32> {
        self.passes.iter().map(|p| -p.0).collect()
    }
}

/// Limits on a resolution: total generators and the admissible range of
/// generator degrees.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionBudget {
    pub max_generators: usize,
    pub degree_lo: i32,
    pub degree_hi: i32,
}

impl Default for ResolutionBudget {
    fn default() -> Self {
        ResolutionBudget { max_generators: 32, degree_lo: -64, degree_hi: 64 }
    }
}

impl ResolutionBudget {
    pub fn new(max_generators: usize, degree_lo: i32, degree_hi: i32) -> Result<ResolutionBudget> {
        if max_generators == 0 || degree_lo > degree_hi {
            return Err(DgError::InvalidInput(format!(
                "budget needs max_generators >= 1 and lo <= hi, got {max_generators}, [{degree_lo}, {degree_hi}]"
            )));
        }
        Ok(ResolutionBudget { max_generators, degree_lo, degree_hi })
    }

    pub fn with_generators(max_generators: usize) -> ResolutionBudget {
        ResolutionBudget { max_generators, ..Default::default() }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: i32,
}

/// One term s·b_a·g_l of a generator's differential.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub generator: usize,
    pub basis: usize,
    pub coeff: Scalar,
}

/// A semi-free module R g_0 ⊕ ... ⊕ R g_n (as graded modules) with dg_k
/// an R-combination of g_0..g_{k-1}.
///
/// The realized module has basis b_a·g_k at index k·dim R + a.
#[derive(Clone, Debug)]
pub struct SemifreeModule {
    pub algebra: Arc<DGAlgebra>,
    pub side: Side,
    pub generators: Vec<Generator>,
    pub diff: Vec<Vec<Term>>,
}

impl SemifreeModule {
    pub fn empty(algebra: Arc<DGAlgebra>, side: Side) -> SemifreeModule {
        SemifreeModule { algebra, side, generators: Vec::new(), diff: Vec::new() }
    }

    /// R itself on one generator of degree 0.
    pub fn free(algebra: Arc<DGAlgebra>, side: Side) -> SemifreeModule {
        let mut f = SemifreeModule::empty(algebra, side);
        f.generators.push(Generator { name: "g0".into(), degree: 0 });
        f.diff.push(Vec::new());
        f
    }

    pub fn len(&self) -> usize {
        self.generators.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generators.is_empty()
    }

    pub fn offset(&self, k: usize) -> usize {
        k * self.algebra.dim()
    }

    /// Index of g_k itself in the realized module.
    pub fn generator_index(&self, k: usize) -> usize {
        self.offset(k) + self.algebra.unit
    }

    pub fn generator_degrees(&self) -> Vec<i32> {
        self.generators.iter().map(|g| g.degree).collect()
    }

    pub fn generator_dims(&self) -> GradedDims {
        GradedDims::from_degrees(&self.generator_degrees())
    }

    /// Every differential coefficient lies in R^{≥1}.
    pub fn is_minimal(&self) -> bool {
        let u = self.algebra.unit;
        self.diff.iter().flatten().all(|t| t.basis != u || t.coeff.is_zero())
    }

    /// Adjoins a generator of the given degree whose differential is the
    /// given cycle (a vector in the current realized module).
    pub fn attach(&mut self, name: impl Into<String>, degree: i32, boundary: &[Scalar]) -> Result<()> {
        let n = self.algebra.dim();
        if boundary.len() != self.len() * n {
            return Err(DgError::DimensionMismatch(format!(
                "boundary of length {} for a module of dimension {}",
                boundary.len(),
                self.len() * n
            )));
        }
        let mut terms = Vec::new();
        for (i, x) in boundary.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            let (l, a) = (i / n, i % n);
            if self.generators[l].degree + self.algebra.degree(a) != degree + 1 {
                return Err(DgError::InvalidInput(format!("boundary of g{} is not homogeneous of degree {}", self.len(), degree + 1)));
            }
            terms.push(Term { generator: l, basis: a, coeff: x.clone() });
        }
        self.generators.push(Generator { name: name.into(), degree });
        self.diff.push(terms);
        Ok(())
    }

    pub fn realize(&self) -> DGModule {
        let r = &self.algebra;
        let n = r.dim();
        let f = r.field;
        let total = self.len() * n;
        let mut degrees = Vec::with_capacity(total);
        let mut labels = Vec::with_capacity(total);
        for g in &self.generators {
            for a in 0..n {
                degrees.push(g.degree + r.degree(a));
                labels.push(if a == r.unit { g.name.clone() } else { format!("{}·{}", r.label(a), g.name) });
            }
        }
        let mut action = vec![Matrix::zeros(f, total, total); n];
        for (x, act) in action.iter_mut().enumerate() {
            for k in 0..self.len() {
                let off = self.offset(k);
                for a in 0..n {
                    for c in 0..n {
                        let v = r.mu(x, a, c);
                        if !v.is_zero() {
                            act.set(off + c, off + a, v.clone());
                        }
                    }
                }
            }
        }
        let mut diff = Matrix::zeros(f, total, total);
        for k in 0..self.len() {
            let off = self.offset(k);
            for a in 0..n {
                let col = off + a;
                for c in 0..n {
                    let v = r.diff.get(c, a);
                    if !v.is_zero() {
                        diff.add_at(off + c, col, v);
                    }
                }
                let s = f.sign(sign_odd(r.degree(a)));
                for t in &self.diff[k] {
                    let base = self.offset(t.generator);
                    for e in 0..n {
                        let v = r.mu(a, t.basis, e);
                        if !v.is_zero() {
                            diff.add_at(base + e, col, &(&(v * &t.coeff) * &s));
                        }
                    }
                }
            }
        }
        DGModule { algebra: r.clone(), side: self.side, degrees, labels, diff, action }
    }

    /// Σⁿ, matching `DGModule::suspend` on realizations up to the basis
    /// signs (-1)^{n|a|} on b_a·g.
    pub fn suspend(&self, n: i32) -> SemifreeModule {
        let f = self.algebra.field;
        SemifreeModule {
            algebra: self.algebra.clone(),
            side: self.side,
            generators: self.generators.iter().map(|g| Generator { name: g.name.clone(), degree: g.degree - n }).collect(),
            diff: self
                .diff
                .iter()
                .map(|ts| {
                    ts.iter()
                        .map(|t| Term {
                            coeff: &t.coeff * &f.sign(sign_odd(n * (1 + self.algebra.degree(t.basis)))),
                            ..t.clone()
                        })
                        .collect()
                })
                .collect(),
        }
    }

    pub fn direct_sum(&self, other: &SemifreeModule) -> Result<SemifreeModule> {
        if !self.algebra.same_structure(&other.algebra) || self.side != other.side {
            return Err(DgError::InvalidInput("direct sum over different algebras".into()));
        }
        let mut out = self.clone();
        let shift = self.len();
        out.generators.extend(other.generators.iter().map(|g| Generator { name: format!("{}'", g.name), degree: g.degree }));
        out.diff.extend(
            other.diff.iter().map(|ts| ts.iter().map(|t| Term { generator: t.generator + shift, ..t.clone() }).collect()),
        );
        Ok(out)
    }

    pub fn from_description(d: &ModuleDescription, algebra: Arc<DGAlgebra>) -> Result<SemifreeModule> {
        let f = algebra.field;
        let mut out = SemifreeModule::empty(algebra.clone(), d.side);
        for (k, g) in d.generators.iter().enumerate() {
            let n = algebra.dim();
            let mut boundary = vec![f.zero(); k * n];
            if let Some(gd) = d.differential.iter().find(|x| x.generator == g.name) {
                for (a, l, s) in &gd.terms {
                    let a = algebra.index_of(a).ok_or_else(|| DgError::InvalidInput(format!("unknown basis element {a:?}")))?;
                    let l = d.generators[..k]
                        .iter()
                        .position(|x| &x.name == l)
                        .ok_or_else(|| DgError::InvalidInput(format!("{:?} must be an earlier generator than {:?}", l, g.name)))?;
                    boundary[l * n + a] = &boundary[l * n + a] + &f.parse(s)?;
                }
            }
            out.attach(g.name.clone(), g.degree, &boundary)?;
        }
        let m = out.realize();
        m.ensure_valid().map_err(|e| DgError::InvalidInput(format!("module description: {e}")))?;
        Ok(out)
    }

    pub fn to_description(&self) -> ModuleDescription {
        let r = &self.algebra;
        ModuleDescription {
            schema: MODULE_SCHEMA.into(),
            name: String::new(),
            side: self.side,
            generators: self.generators.iter().map(|g| GeneratorEntry { name: g.name.clone(), degree: g.degree }).collect(),
            differential: self
                .generators
                .iter()
                .zip(&self.diff)
                .filter(|(_, ts)| !ts.is_empty())
                .map(|(g, ts)| GeneratorDifferential {
                    generator: g.name.clone(),
                    terms: ts
                        .iter()
                        .map(|t| (r.label(t.basis).to_string(), self.generators[t.generator].name.clone(), t.coeff.to_string()))
                        .collect(),
                })
                .collect(),
        }
    }
}

/// A minimal semi-free resolution F -> m.
#[derive(Clone, Debug)]
pub struct Resolution {
    pub semifree: SemifreeModule,
    pub realized: DGModule,
    /// m.dim × F.dim
    pub map: Matrix,
    pub trace: BudgetTrace,
}

impl Resolution {
    /// A minimal semi-free module viewed as its own resolution.
    pub fn of_minimal(semifree: SemifreeModule) -> Resolution {
        let realized = semifree.realize();
        let map = Matrix::identity(realized.field(), realized.dim());
        Resolution { semifree, realized, map, trace: BudgetTrace::default() }
    }

    pub fn phi(&self) -> usize {
        self.semifree.len()
    }

    pub fn morphism(&self, target: &DGModule) -> DGMorphism {
        DGMorphism::new(self.realized.clone(), target.clone(), self.map.clone())
    }
}

/// The map F -> m determined by generator images.
fn extend_map(m: &DGModule, f: &SemifreeModule, images: &[Vec<Scalar>]) -> Matrix {
    let n = f.algebra.dim();
    let mut out = Matrix::zeros(m.field(), m.dim(), f.len() * n);
    for (k, img) in images.iter().enumerate() {
        for a in 0..n {
            let col = m.action[a].mul_vec(img);
            for (i, x) in col.into_iter().enumerate() {
                if !x.is_zero() {
                    out.set(i, f.offset(k) + a, x);
                }
            }
        }
    }
    out
}

/// Cone killing: while the comparison cone C of F -> m has cohomology,
/// take j = inf H(C) and for each class (n, σf) adjoin g with |g| = j,
/// dg = -f and g ↦ n.
pub fn resolve(m: &DGModule, budget: &ResolutionBudget) -> Result<Resolution> {
    match resolve_partial(m, budget)? {
        (res, None) => Ok(res),
        (res, Some(_)) => Err(DgError::Budget(res.trace)),
    }
}

/// Like `resolve`, but on budget exhaustion returns the partial
/// resolution together with the degree of the generators it would add next.
pub fn resolve_partial(m: &DGModule, budget: &ResolutionBudget) -> Result<(Resolution, Option<i32>)> {
    let fld = m.field();
    let mut f = SemifreeModule::empty(m.algebra.clone(), m.side);
    let mut images: Vec<Vec<Scalar>> = Vec::new();
    let mut trace = BudgetTrace::default();
    loop {
        let realized = f.realize();
        let map = extend_map(m, &f, &images);
        let cone = DGMorphism::new(realized.clone(), m.clone(), map.clone()).cone().module;
        let h = cone.cohomology();
        let Some(j) = h.dims().inf() else {
            if !f.is_minimal() {
                return Err(DgError::Inconsistent("cone killing produced a non-minimal resolution".into()));
            }
            return Ok((Resolution { semifree: f, realized, map, trace }, None));
        };
        let reps = h.reps(j);
        if j < budget.degree_lo || j > budget.degree_hi || f.len() + reps.len() > budget.max_generators {
            return Ok((Resolution { semifree: f, realized, map, trace }, Some(j)));
        }
        let md = m.dim();
        let before = f.len();
        for (c, rep) in reps.iter().enumerate() {
            let n_part = rep[..md].to_vec();
            let mut boundary: Vec<Scalar> = rep[md..].iter().map(|x| -x).collect();
            boundary.resize(f.len() * m.algebra.dim(), fld.zero());
            f.attach(format!("g{}", before + c), j, &boundary)?;
            images.push(n_part);
        }
        trace.passes.push((j, reps.len()));
    }
}

pub fn phi(m: &DGModule, budget: &ResolutionBudget) -> Result<usize> {
    Ok(resolve(m, budget)?.phi())
}

/// Ext^p_R(m, k): one class in degree -|g| per generator g.
pub fn ext_to_k(m: &DGModule, budget: &ResolutionBudget) -> Result<GradedDims> {
    Ok(resolve(m, budget)?.semifree.generator_dims().negated())
}

/// Hom_R(F, N) for semi-free F. A degree-p map is determined by the
/// images of the generators, h(b_a·g) = (-1)^{p|a|} b_a·h(g), so basis
/// element (k, i) sends g_k to the i-th basis vector of N.
#[derive(Clone, Debug)]
pub struct SemifreeHom {
    pub complex: Complex,
    source: SemifreeModule,
    target: DGModule,
    slots: Vec<(usize, usize)>,
}

impl SemifreeHom {
    pub fn dim(&self) -> usize {
        self.slots.len()
    }

    /// Basis indices of degree p.
    pub fn indices_in(&self, p: i32) -> Vec<usize> {
        indices_in(&self.complex.degrees, p)
    }

    /// The R-linear map (target × realized source) with the given
    /// coordinates.
    pub fn map_of(&self, coords: &[Scalar]) -> Matrix {
        let (f, n) = (&self.source, &self.target);
        let r = &f.algebra;
        let fld = r.field;
        let mut h = Matrix::zeros(fld, n.dim(), f.len() * r.dim());
        for (c, (&(k, i), &p)) in coords.iter().zip(self.slots.iter().zip(&self.complex.degrees)) {
            if c.is_zero() {
                continue;
            }
            for a in 0..r.dim() {
                let s = &fld.sign(sign_odd(p * r.degree(a))) * c;
                for row in 0..n.dim() {
                    let v = n.action[a].get(row, i);
                    if !v.is_zero() {
                        h.add_at(row, f.offset(k) + a, &(v * &s));
                    }
                }
            }
        }
        h
    }

    /// Coordinates of an R-linear map: its values on the generators.
    pub fn coords(&self, map: &Matrix) -> Vec<Scalar> {
        self.slots.iter().map(|&(k, i)| map.get(i, self.source.generator_index(k)).clone()).collect()
    }
}

pub fn semifree_hom(f: &SemifreeModule, n: &DGModule) -> Result<SemifreeHom> {
    if !f.algebra.same_structure(&n.algebra) || f.side != n.side {
        return Err(DgError::InvalidInput("Hom between modules over different algebras or sides".into()));
    }
    let r = &f.algebra;
    let fld = r.field;
    let mut slots: Vec<(i32, usize, usize)> = Vec::new();
    for (k, g) in f.generators.iter().enumerate() {
        for (i, &d) in n.degrees.iter().enumerate() {
            slots.push((d - g.degree, k, i));
        }
    }
    slots.sort_by_key(|s| s.0);
    let mut index = vec![vec![0; n.dim()]; f.len()];
    for (pos, &(_, k, i)) in slots.iter().enumerate() {
        index[k][i] = pos;
    }
    let degrees: Vec<i32> = slots.iter().map(|s| s.0).collect();
    let total = slots.len();
    let mut diff = Matrix::zeros(fld, total, total);
    // (Dh)(g_l) = d(h(g_l)) - (-1)^p h(dg_l)
    for (col, &(p, k, i)) in slots.iter().enumerate() {
        for row in 0..n.dim() {
            let v = n.diff.get(row, i);
            if !v.is_zero() {
                diff.add_at(index[k][row], col, v);
            }
        }
        for (l, terms) in f.diff.iter().enumerate() {
            for t in terms.iter().filter(|t| t.generator == k) {
                let s = &fld.sign(sign_odd(p + p * r.degree(t.basis))) * &t.coeff;
                for row in 0..n.dim() {
                    let v = n.action[t.basis].get(row, i);
                    if !v.is_zero() {
                        diff.add_at(index[l][row], col, &-(v * &s));
                    }
                }
            }
        }
    }
    Ok(SemifreeHom {
        complex: Complex { field: fld, degrees, diff },
        source: f.clone(),
        target: n.clone(),
        slots: slots.into_iter().map(|s| (s.1, s.2)).collect(),
    })
}

/// RHom_R(m, n) via the minimal resolution of m.
pub fn derived_hom(m: &DGModule, n: &DGModule, budget: &ResolutionBudget) -> Result<(Resolution, SemifreeHom)> {
    let res = resolve(m, budget)?;
    let h = semifree_hom(&res.semifree, n)?;
    Ok((res, h))
}

/// A ⊗_R F for semi-free F, with basis x_i ⊗ g_k. `right` holds genuine
/// right-action matrices of A; `left`, if given, is carried over to the
/// result.
pub fn semifree_tensor(
    a_degrees: &[i32],
    a_diff: &Matrix,
    right: &[Matrix],
    left: Option<&[Matrix]>,
    f: &SemifreeModule,
) -> (Complex, Option<Vec<Matrix>>) {
    let fld = f.algebra.field;
    let na = a_degrees.len();
    let total = na * f.len();
    let idx = |k: usize, i: usize| k * na + i;
    let degrees: Vec<i32> = f.generators.iter().flat_map(|g| a_degrees.iter().map(move |d| d + g.degree)).collect();
    let mut diff = Matrix::zeros(fld, total, total);
    for k in 0..f.len() {
        for i in 0..na {
            let col = idx(k, i);
            for row in 0..na {
                let v = a_diff.get(row, i);
                if !v.is_zero() {
                    diff.add_at(idx(k, row), col, v);
                }
            }
            let s = fld.sign(sign_odd(a_degrees[i]));
            for t in &f.diff[k] {
                for row in 0..na {
                    let v = right[t.basis].get(row, i);
                    if !v.is_zero() {
                        diff.add_at(idx(t.generator, row), col, &(&(v * &t.coeff) * &s));
                    }
                }
            }
        }
    }
    let left = left.map(|ls| {
        ls.iter()
            .map(|l| {
                let mut m = Matrix::zeros(fld, total, total);
                for k in 0..f.len() {
                    for i in 0..na {
                        for row in 0..na {
                            let v = l.get(row, i);
                            if !v.is_zero() {
                                m.set(idx(k, row), idx(k, i), v.clone());
                            }
                        }
                    }
                }
                m
            })
            .collect()
    });
    (Complex { field: fld, degrees, diff }, left)
}

/// M ⊗^L_R N for a right module M and a left module N, through a minimal
/// resolution of N.
pub fn derived_tensor(m: &DGModule, n: &DGModule, budget: &ResolutionBudget) -> Result<Complex> {
    if m.side != Side::Right || n.side != Side::Left || !m.algebra.opposite().same_structure(&n.algebra) {
        return Err(DgError::InvalidInput("derived tensor needs a right and a left module over one algebra".into()));
    }
    let res = resolve(n, budget)?;
    let right = crate::dg::right_action_matrices(m);
    Ok(semifree_tensor(&m.degrees, &m.diff, &right, None, &res.semifree).0)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CompactnessVerdict {
    Compact,
    NotWithinBudget,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CompactnessCertificate {
    pub verdict: CompactnessVerdict,
    /// Generator degrees of the finished resolution, when compact.
    pub generators: Option<Vec<i32>>,
    pub trace: BudgetTrace,
}

pub fn compactness_certificate(m: &DGModule, budget: &ResolutionBudget) -> Result<CompactnessCertificate> {
    match resolve(m, budget) {
        Ok(res) => {
            if !res.morphism(m).is_quasi_isomorphism() {
                return Err(DgError::Inconsistent("resolution map is not a quasi-isomorphism".into()));
            }
            Ok(CompactnessCertificate {
                verdict: CompactnessVerdict::Compact,
                generators: Some(res.semifree.generator_degrees()),
                trace: res.trace,
            })
        }
        Err(DgError::Budget(trace)) => Ok(CompactnessCertificate { verdict: CompactnessVerdict::NotWithinBudget, generators: None, trace }),
        Err(e) => Err(e),
    }
}
