use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::algebra::{DGAlgebra, ValidationFailure};
use super::cohomology::Cohomology;
use super::graded::{sign_odd, GradedDims, InfSupAmp};
use crate::error::{DgError, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// Which side the base algebra acts on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }
}

/// A finite-dimensional DG module.
///
/// The action is always stored as a left action over `algebra`. A right
/// module over R is stored as a left module over the opposite algebra with
/// r * m = (-1)^{|r||m|} m·r, and carries `side == Right` to record this.
#[derive(Clone, Debug)]
pub struct DGModule {
    pub algebra: Arc<DGAlgebra>,
    pub side: Side,
    pub degrees: Vec<i32>,
    pub labels: Vec<String>,
    pub diff: Matrix,
    /// `action[a]` is the matrix of the action of algebra basis element a.
    pub action: Vec<Matrix>,
}

/// A degree-zero morphism given by one matrix (target × source).
#[derive(Clone, Debug)]
pub struct DGMorphism {
    pub source: DGModule,
    pub target: DGModule,
    pub map: Matrix,
}

pub struct Cone {
    pub module: DGModule,
    /// target -> cone
    pub inclusion: Matrix,
    /// cone -> Σ source
    pub projection: Matrix,
}

impl DGModule {
    pub fn field(&self) -> Field {
        self.algebra.field
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    /// R as a module over itself.
    pub fn regular(algebra: Arc<DGAlgebra>) -> DGModule {
        let labels = algebra.labels.clone();
        DGModule {
            side: Side::Left,
            degrees: algebra.degrees.clone(),
            labels,
            diff: algebra.diff.clone(),
            action: algebra.mul.clone(),
            algebra,
        }
    }

    /// The zero module.
    pub fn zero(algebra: Arc<DGAlgebra>, side: Side) -> DGModule {
        let f = algebra.field;
        DGModule {
            side,
            degrees: Vec::new(),
            labels: Vec::new(),
            diff: Matrix::zeros(f, 0, 0),
            action: vec![Matrix::zeros(f, 0, 0); algebra.dim()],
            algebra,
        }
    }

    /// The ground field k = R/R^{≥1} in degree 0.
    pub fn residue_field(algebra: Arc<DGAlgebra>) -> DGModule {
        let f = algebra.field;
        let action = (0..algebra.dim())
            .map(|a| if a == algebra.unit { Matrix::identity(f, 1) } else { Matrix::zeros(f, 1, 1) })
            .collect();
        DGModule {
            side: Side::Left,
            degrees: vec![0],
            labels: vec!["k".into()],
            diff: Matrix::zeros(f, 1, 1),
            action,
            algebra,
        }
    }

    pub fn with_side(mut self, side: Side) -> DGModule {
        self.side = side;
        self
    }

    pub fn cohomology(&self) -> Cohomology {
        Cohomology::of(self.field(), &self.degrees, &self.diff)
    }

    pub fn cohomology_dims(&self) -> GradedDims {
        self.cohomology().dims()
    }

    pub fn inf_sup_amp(&self) -> InfSupAmp {
        self.cohomology_dims().inf_sup_amp()
    }

    pub fn basis_vector(&self, i: usize) -> Vec<Scalar> {
        let mut v = vec![self.field().zero(); self.dim()];
        v[i] = self.field().one();
        v
    }

    /// Action of an arbitrary algebra element.
    pub fn act(&self, r: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut m = Matrix::zeros(self.field(), n, n);
        for (a, x) in r.iter().enumerate() {
            if !x.is_zero() {
                m = m.add(&self.action[a].scale(x));
            }
        }
        m
    }

    /// Over a graded-commutative algebra a left module is a right module
    /// via m·r = (-1)^{|r||m|} rm, and in the left-over-opposite encoding
    /// the action matrices do not change.
    pub fn commutative_flip(&self) -> Result<DGModule> {
        let op = self.algebra.opposite();
        if !op.same_structure(&self.algebra) {
            return Err(DgError::Precondition(format!("{} is not graded-commutative", self.algebra.name)));
        }
        Ok(DGModule { algebra: Arc::new(op), side: self.side.flip(), ..self.clone() })
    }

    pub fn same_algebra(&self, other: &DGModule) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra.same_structure(&other.algebra)
    }

    /// Checks d² = 0, homogeneity, the unit and associativity of the action,
    /// and the Leibniz rule, naming the first failing basis pair.
    pub fn validate(&self) -> Vec<ValidationFailure> {
        let mut out = Vec::new();
        let r = &self.algebra;
        let n = self.dim();
        let mut fail = |check: &'static str, detail: String| out.push(ValidationFailure { check, detail });
        if self.diff.rows() != n || self.diff.cols() != n || self.action.len() != r.dim() {
            fail("shape", "module matrices have the wrong size".into());
            return out;
        }
        let ml = |i: usize| self.labels.get(i).cloned().unwrap_or_else(|| format!("m{i}"));
        for j in 0..n {
            if let Some(i) = (0..n).find(|&i| !self.diff.get(i, j).is_zero() && self.degrees[i] != self.degrees[j] + 1) {
                fail("homogeneity", format!("d({}) has a component on {}", ml(j), ml(i)));
                break;
            }
        }
        'h: for a in 0..r.dim() {
            for j in 0..n {
                for i in 0..n {
                    if !self.action[a].get(i, j).is_zero() && self.degrees[i] != self.degrees[j] + r.degree(a) {
                        fail("homogeneity", format!("{}·{} has a component on {}", r.label(a), ml(j), ml(i)));
                        break 'h;
                    }
                }
            }
        }
        let dd = self.diff.mul(&self.diff);
        if let Some(j) = (0..n).find(|&j| (0..n).any(|i| !dd.get(i, j).is_zero())) {
            fail("d-squared", format!("d(d({})) != 0", ml(j)));
        }
        if self.action[r.unit] != Matrix::identity(self.field(), n) {
            fail("unit", "the unit does not act as the identity".into());
        }
        'assoc: for a in 0..r.dim() {
            for b in 0..r.dim() {
                let lhs = self.action[a].mul(&self.action[b]);
                let rhs = self.act(&r.mul[a].column(b));
                if lhs != rhs {
                    let j = (0..n).find(|&j| lhs.column(j) != rhs.column(j)).unwrap();
                    fail("associativity", format!("{}·({}·{}) != ({}·{})·{}", r.label(a), r.label(b), ml(j), r.label(a), r.label(b), ml(j)));
                    break 'assoc;
                }
            }
        }
        for a in 0..r.dim() {
            let lhs = self.diff.mul(&self.action[a]);
            let s = self.field().sign(sign_odd(r.degree(a)));
            let rhs = self.act(&r.diff.column(a)).add(&self.action[a].mul(&self.diff).scale(&s));
            if lhs != rhs {
                let j = (0..n).find(|&j| lhs.column(j) != rhs.column(j)).unwrap();
                fail("leibniz", format!("d({}·{}) violates the Leibniz rule", r.label(a), ml(j)));
                break;
            }
        }
        out
    }

    pub fn ensure_valid(&self) -> Result<()> {
        match self.validate().first() {
            None => Ok(()),
            Some(f) => Err(DgError::Inconsistent(format!("module {}: {}", f.check, f.detail))),
        }
    }

    pub fn direct_sum(&self, other: &DGModule) -> Result<DGModule> {
        if !self.same_algebra(other) || self.side != other.side {
            return Err(DgError::InvalidInput("direct sum of modules over different algebras".into()));
        }
        let (n, m) = (self.dim(), other.dim());
        let f = self.field();
        let blk = |a: &Matrix, b: &Matrix| {
            let mut out = Matrix::zeros(f, n + m, n + m);
            for i in 0..n {
                for j in 0..n {
                    out.set(i, j, a.get(i, j).clone());
                }
            }
            for i in 0..m {
                for j in 0..m {
                    out.set(n + i, n + j, b.get(i, j).clone());
                }
            }
            out
        };
        let mut degrees = self.degrees.clone();
        degrees.extend(&other.degrees);
        let mut labels = self.labels.clone();
        labels.extend(other.labels.iter().map(|l| format!("{l}'")));
        Ok(DGModule {
            algebra: self.algebra.clone(),
            side: self.side,
            degrees,
            labels,
            diff: blk(&self.diff, &other.diff),
            action: self.action.iter().zip(&other.action).map(|(a, b)| blk(a, b)).collect(),
        })
    }

    /// Σⁿ: (Σⁿm)^i = m^{i+n}, differential (-1)^n d, action twisted by
    /// (-1)^{n|r|}.
    pub fn suspend(&self, n: i32) -> DGModule {
        if n == 0 {
            return self.clone();
        }
        let f = self.field();
        let r = &self.algebra;
        DGModule {
            algebra: r.clone(),
            side: self.side,
            degrees: self.degrees.iter().map(|d| d - n).collect(),
            labels: self.labels.clone(),
            diff: self.diff.scale(&f.sign(sign_odd(n))),
            action: (0..r.dim()).map(|a| self.action[a].scale(&f.sign(sign_odd(n * r.degree(a))))).collect(),
        }
    }

    /// The k-linear dual, (Dm)^j = (m^{-j})*, as a module over the opposite
    /// algebra, with (r * f)(m) = (-1)^{|r||f|} f(r·m) and
    /// (df)(m) = -(-1)^{|f|} f(dm).
    pub fn dual(&self) -> DGModule {
        let f = self.field();
        let r = &self.algebra;
        let n = self.dim();
        let mut diff = Matrix::zeros(f, n, n);
        for i in 0..n {
            for j in 0..n {
                let x = self.diff.get(i, j);
                if !x.is_zero() {
                    diff.set(j, i, -(x * &f.sign(sign_odd(self.degrees[i]))));
                }
            }
        }
        let action = (0..r.dim())
            .map(|a| {
                let mut m = Matrix::zeros(f, n, n);
                for i in 0..n {
                    for j in 0..n {
                        let x = self.action[a].get(i, j);
                        if !x.is_zero() {
                            m.set(j, i, x * &f.sign(sign_odd(r.degree(a) * self.degrees[i])));
                        }
                    }
                }
                m
            })
            .collect();
        DGModule {
            algebra: Arc::new(r.opposite()),
            side: self.side.flip(),
            degrees: self.degrees.iter().map(|d| -d).collect(),
            labels: self.labels.iter().map(|l| format!("{l}*")).collect(),
            diff,
            action,
        }
    }

    /// Sub-DG-module spanned by the given vectors; returns it with the
    /// inclusion matrix. The span must be closed under d and the action.
    pub fn submodule(&self, vectors: &[Vec<Scalar>]) -> Result<(DGModule, Matrix)> {
        let f = self.field();
        let n = self.dim();
        let mut basis: Vec<Vec<Scalar>> = Vec::new();
        let mut degrees = Vec::new();
        // Split into homogeneous pieces first so the basis is graded.
        let mut pieces: Vec<(i32, Vec<Scalar>)> = Vec::new();
        for v in vectors {
            for d in super::graded::degree_set(&self.degrees) {
                let w: Vec<Scalar> = (0..n).map(|i| if self.degrees[i] == d { v[i].clone() } else { f.zero() }).collect();
                if w.iter().any(|x| !x.is_zero()) {
                    pieces.push((d, w));
                }
            }
        }
        for d in super::graded::degree_set(&self.degrees) {
            let ps: Vec<Vec<Scalar>> = pieces.iter().filter(|p| p.0 == d).map(|p| p.1.clone()).collect();
            let sub = crate::linalg::Subspace::spanned_by(f, n, &ps);
            for b in sub.basis {
                basis.push(b);
                degrees.push(d);
            }
        }
        let k = basis.len();
        let inc = Matrix::from_columns(f, n, &basis);
        let express = |m: &Matrix| -> Result<Matrix> {
            let mut out = Matrix::zeros(f, k, k);
            for (j, b) in basis.iter().enumerate() {
                let img = m.mul_vec(b);
                let x = if k == 0 { Some(vec![]) } else { inc.solve(&img)? };
                let x = x.ok_or_else(|| DgError::Inconsistent("span is not a submodule".into()))?;
                for (i, v) in x.into_iter().enumerate() {
                    out.set(i, j, v);
                }
            }
            Ok(out)
        };
        let diff = express(&self.diff)?;
        let action = self.action.iter().map(express).collect::<Result<Vec<_>>>()?;
        let labels = (0..k).map(|i| format!("s{i}")).collect();
        Ok((DGModule { algebra: self.algebra.clone(), side: self.side, degrees, labels, diff, action }, inc))
    }

    /// Quotient by the submodule spanned by `vectors`; returns the quotient
    /// and the projection matrix.
    pub fn quotient(&self, vectors: &[Vec<Scalar>]) -> Result<(DGModule, Matrix)> {
        let f = self.field();
        let n = self.dim();
        let q = QuotientMap::new(f, n, vectors);
        let k = q.keep.len();
        let mut proj = Matrix::zeros(f, k, n);
        for j in 0..n {
            for (i, x) in q.project(&self.basis_vector(j)).into_iter().enumerate() {
                proj.set(i, j, x);
            }
        }
        let induce = |m: &Matrix| -> Result<Matrix> {
            let mut out = Matrix::zeros(f, k, k);
            for (j, &c) in q.keep.iter().enumerate() {
                let img = m.mul_vec(&self.basis_vector(c));
                for (i, x) in q.project(&img).into_iter().enumerate() {
                    out.set(i, j, x);
                }
            }
            Ok(out)
        };
        // The relation span must be stable: check by projecting its image.
        for v in &q.rows {
            let dv = self.diff.mul_vec(v);
            if q.project(&dv).iter().any(|x| !x.is_zero()) {
                return Err(DgError::Inconsistent("quotient by a non-subcomplex".into()));
            }
        }
        let diff = induce(&self.diff)?;
        let action = self.action.iter().map(induce).collect::<Result<Vec<_>>>()?;
        Ok((
            DGModule {
                algebra: self.algebra.clone(),
                side: self.side,
                degrees: q.keep.iter().map(|&i| self.degrees[i]).collect(),
                labels: q.keep.iter().map(|&i| self.labels[i].clone()).collect(),
                diff,
                action,
            },
            proj,
        ))
    }
}

/// Projection onto k^n / W using the reduced echelon basis of W; the
/// quotient coordinates are the non-pivot coordinates.
pub struct QuotientMap {
    pub keep: Vec<usize>,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl QuotientMap {
    pub fn new(f: Field, n: usize, vectors: &[Vec<Scalar>]) -> QuotientMap {
        let (rows, pivots) = if vectors.is_empty() {
            (Vec::new(), Vec::new())
        } else {
            let e = Matrix::from_rows(f, vectors.to_vec()).echelon();
            ((0..e.pivots.len()).map(|i| e.matrix.row(i).to_vec()).collect(), e.pivots)
        };
        let keep = (0..n).filter(|c| !pivots.contains(c)).collect();
        QuotientMap { keep, rows, pivots }
    }

    pub fn project(&self, v: &[Scalar]) -> Vec<Scalar> {
        let mut w = v.to_vec();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = w[p].clone();
            if c.is_zero() {
                continue;
            }
            for (x, r) in w.iter_mut().zip(row) {
                if !r.is_zero() {
                    *x = &*x - &(&c * r);
                }
            }
        }
        self.keep.iter().map(|&i| w[i].clone()).collect()
    }
}

impl DGMorphism {
    pub fn new(source: DGModule, target: DGModule, map: Matrix) -> DGMorphism {
        DGMorphism { source, target, map }
    }

    /// Commutes with differentials, is homogeneous of degree 0, and is
    /// R-linear on every basis pair.
    pub fn validate(&self) -> Vec<ValidationFailure> {
        let mut out = Vec::new();
        let (s, t) = (&self.source, &self.target);
        if self.map.rows() != t.dim() || self.map.cols() != s.dim() {
            out.push(ValidationFailure { check: "shape", detail: "morphism matrix has the wrong size".into() });
            return out;
        }
        for j in 0..s.dim() {
            if let Some(i) = (0..t.dim()).find(|&i| !self.map.get(i, j).is_zero() && t.degrees[i] != s.degrees[j]) {
                out.push(ValidationFailure { check: "homogeneity", detail: format!("{} maps to {}", s.labels[j], t.labels[i]) });
                break;
            }
        }
        if t.diff.mul(&self.map) != self.map.mul(&s.diff) {
            out.push(ValidationFailure { check: "chain-map", detail: "does not commute with the differentials".into() });
        }
        for a in 0..s.algebra.dim() {
            if t.action[a].mul(&self.map) != self.map.mul(&s.action[a]) {
                out.push(ValidationFailure {
                    check: "linearity",
                    detail: format!("not linear for {}", s.algebra.label(a)),
                });
                break;
            }
        }
        out
    }

    /// Mapping cone: target ⊕ Σ source with differential [[d_N, f], [0, -d_M]].
    pub fn cone(&self) -> Cone {
        let (m, nn) = (&self.source, &self.target);
        let f = m.field();
        let r = &m.algebra;
        let (a, b) = (nn.dim(), m.dim());
        let sm = m.suspend(1);
        let mut diff = Matrix::zeros(f, a + b, a + b);
        for i in 0..a {
            for j in 0..a {
                diff.set(i, j, nn.diff.get(i, j).clone());
            }
            for j in 0..b {
                diff.set(i, a + j, self.map.get(i, j).clone());
            }
        }
        for i in 0..b {
            for j in 0..b {
                diff.set(a + i, a + j, sm.diff.get(i, j).clone());
            }
        }
        let action = (0..r.dim())
            .map(|x| {
                let mut out = Matrix::zeros(f, a + b, a + b);
                for i in 0..a {
                    for j in 0..a {
                        out.set(i, j, nn.action[x].get(i, j).clone());
                    }
                }
                for i in 0..b {
                    for j in 0..b {
                        out.set(a + i, a + j, sm.action[x].get(i, j).clone());
                    }
                }
                out
            })
            .collect();
        let mut degrees = nn.degrees.clone();
        degrees.extend(&sm.degrees);
        let mut labels = nn.labels.clone();
        labels.extend(m.labels.iter().map(|l| format!("s({l})")));
        let mut inclusion = Matrix::zeros(f, a + b, a);
        for i in 0..a {
            inclusion.set(i, i, f.one());
        }
        let mut projection = Matrix::zeros(f, b, a + b);
        for i in 0..b {
            projection.set(i, a + i, f.one());
        }
        Cone {
            module: DGModule { algebra: nn.algebra.clone(), side: nn.side, degrees, labels, diff, action },
            inclusion,
            projection,
        }
    }

    /// Whether the induced map on cohomology is bijective.
    pub fn is_quasi_isomorphism(&self) -> bool {
        let c = self.cone();
        super::cohomology::is_acyclic(&c.module.degrees, &c.module.diff)
    }
}
