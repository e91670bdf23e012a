use serde::Serialize;

use super::cohomology::Cohomology;
use super::graded::{sign_odd, GradedDims};
use crate::error::{DgError, Result};
use crate::linalg::{Field, Matrix, Scalar};

/// A finite-dimensional cochain DG algebra, stored on a global homogeneous
/// basis. `mul[a]` is the matrix of left multiplication by basis element `a`.
#[derive(Clone, Debug)]
pub struct DGAlgebra {
    pub name: String,
    pub field: Field,
    pub degrees: Vec<i32>,
    pub labels: Vec<String>,
    pub diff: Matrix,
    pub mul: Vec<Matrix>,
    pub unit: usize,
    /// Top cohomological degree d = sup H(R); 0 for the ground field.
    pub top: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationFailure {
    pub check: &'static str,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub valid: bool,
    pub top_degree: i32,
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn failed(&self, check: &str) -> bool {
        self.failures.iter().any(|f| f.check == check)
    }
}

impl DGAlgebra {
    pub fn new(
        name: impl Into<String>,
        field: Field,
        degrees: Vec<i32>,
        labels: Vec<String>,
        diff: Matrix,
        mul: Vec<Matrix>,
        unit: usize,
    ) -> DGAlgebra {
        let top = Cohomology::of(field, &degrees, &diff).dims().sup().unwrap_or(0);
        DGAlgebra { name: name.into(), field, degrees, labels, diff, mul, unit, top }
    }

    pub fn dim(&self) -> usize {
        self.degrees.len()
    }

    pub fn degree(&self, a: usize) -> i32 {
        self.degrees[a]
    }

    pub fn label(&self, a: usize) -> &str {
        &self.labels[a]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Structure constant: coefficient of basis `c` in `a·b`.
    pub fn mu(&self, a: usize, b: usize, c: usize) -> &Scalar {
        self.mul[a].get(c, b)
    }

    pub fn basis_vector(&self, a: usize) -> Vec<Scalar> {
        let mut v = vec![self.field.zero(); self.dim()];
        v[a] = self.field.one();
        v
    }

    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![self.field.zero(); self.dim()];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            let col = self.mul[a].mul_vec(y);
            for (o, c) in out.iter_mut().zip(col) {
                if !c.is_zero() {
                    *o = &*o + &(xa * &c);
                }
            }
        }
        out
    }

    /// Left multiplication by an arbitrary element.
    pub fn left_mul(&self, x: &[Scalar]) -> Matrix {
        let mut m = Matrix::zeros(self.field, self.dim(), self.dim());
        for (a, xa) in x.iter().enumerate() {
            if !xa.is_zero() {
                m = m.add(&self.mul[a].scale(xa));
            }
        }
        m
    }

    pub fn cohomology(&self) -> Cohomology {
        Cohomology::of(self.field, &self.degrees, &self.diff)
    }

    pub fn cohomology_dims(&self) -> GradedDims {
        self.cohomology().dims()
    }

    /// H(R) as a DG algebra with zero differential, on the chosen
    /// representative cycles.
    pub fn cohomology_algebra(&self) -> Result<DGAlgebra> {
        let h = self.cohomology();
        let f = self.field;
        let mut reps: Vec<(i32, Vec<Scalar>)> = Vec::new();
        for (&d, c) in &h.degrees {
            reps.extend(c.reps.iter().map(|r| (d, r.clone())));
        }
        let n = reps.len();
        let label = |v: &[Scalar]| {
            let i = v.iter().position(|x| !x.is_zero()).unwrap_or(0);
            format!("[{}]", self.labels[i])
        };
        let mut mul = vec![Matrix::zeros(f, n, n); n];
        for (a, (da, ra)) in reps.iter().enumerate() {
            for (b, (db, rb)) in reps.iter().enumerate() {
                let p = self.product(ra, rb);
                let coords = h
                    .classify(da + db, &p)
                    .ok_or_else(|| DgError::Inconsistent("product of cycles is not a cycle".into()))?;
                let base = reps.iter().position(|r| r.0 == da + db).unwrap_or(0);
                for (k, x) in coords.into_iter().enumerate() {
                    mul[a].set(base + k, b, x);
                }
            }
        }
        let unit = reps
            .iter()
            .position(|r| r.0 == 0)
            .ok_or_else(|| DgError::Precondition("H^0 vanishes".into()))?;
        // H^0 = k is spanned by the class of 1, picked as the pivot vector
        let u = reps[unit].1[self.unit].clone();
        if !u.is_one() {
            return Err(DgError::Inconsistent(format!("unit class represented by {u}·1")));
        }
        Ok(DGAlgebra::new(
            format!("H({})", self.name),
            f,
            reps.iter().map(|r| r.0).collect(),
            reps.iter().map(|r| label(&r.1)).collect(),
            Matrix::zeros(f, n, n),
            mul,
            unit,
        ))
    }

    /// Structural equality ignoring names and labels.
    pub fn same_structure(&self, o: &DGAlgebra) -> bool {
        self.field == o.field
            && self.degrees == o.degrees
            && self.diff == o.diff
            && self.mul == o.mul
            && self.unit == o.unit
    }

    /// The opposite algebra with product r·s = (-1)^{|r||s|} s r.
    pub fn opposite(&self) -> DGAlgebra {
        let n = self.dim();
        let mut mul = vec![Matrix::zeros(self.field, n, n); n];
        for (a, m) in mul.iter_mut().enumerate() {
            for b in 0..n {
                let s = self.field.sign(sign_odd(self.degrees[a] * self.degrees[b]));
                for c in 0..n {
                    let x = self.mu(b, a, c);
                    if !x.is_zero() {
                        m.set(c, b, x * &s);
                    }
                }
            }
        }
        let name = match self.name.strip_suffix("^op") {
            Some(base) => base.to_string(),
            None => format!("{}^op", self.name),
        };
        DGAlgebra {
            name,
            field: self.field,
            degrees: self.degrees.clone(),
            labels: self.labels.clone(),
            diff: self.diff.clone(),
            mul,
            unit: self.unit,
            top: self.top,
        }
    }

    /// Checks every structural invariant, naming the first failing basis
    /// element, pair or triple for each check.
    pub fn validate(&self) -> ValidationReport {
        let mut failures = Vec::new();
        let n = self.dim();
        let mut fail = |check: &'static str, detail: String| failures.push(ValidationFailure { check, detail });
        let shapes_ok = self.labels.len() == n
            && self.diff.rows() == n
            && self.diff.cols() == n
            && self.mul.len() == n
            && self.mul.iter().all(|m| m.rows() == n && m.cols() == n)
            && self.unit < n;
        if !shapes_ok {
            fail("shape", "basis, differential and multiplication sizes disagree".into());
            return ValidationReport { valid: false, top_degree: self.top, failures };
        }
        let l = |i: usize| self.labels[i].clone();

        if let Some(a) = (0..n).find(|&a| self.degrees[a] < 0) {
            fail("connectivity", format!("negative degree element {}", l(a)));
        }
        let deg0: Vec<usize> = (0..n).filter(|&a| self.degrees[a] == 0).collect();
        if deg0 != vec![self.unit] {
            fail("connectivity", format!("degree 0 must be spanned by the unit, found {} elements", deg0.len()));
        }
        if let Some(a) = (0..n).find(|&a| self.degrees[a] == 1) {
            fail("connectivity", format!("degree 1 element {}", l(a)));
        }

        'hd: for j in 0..n {
            for i in 0..n {
                if !self.diff.get(i, j).is_zero() && self.degrees[i] != self.degrees[j] + 1 {
                    fail("homogeneity", format!("d({}) has a component on {}", l(j), l(i)));
                    break 'hd;
                }
            }
        }
        'hm: for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if !self.mu(a, b, c).is_zero() && self.degrees[c] != self.degrees[a] + self.degrees[b] {
                        fail("homogeneity", format!("{}·{} has a component on {}", l(a), l(b), l(c)));
                        break 'hm;
                    }
                }
            }
        }

        let dd = self.diff.mul(&self.diff);
        if let Some(b) = (0..n).find(|&b| (0..n).any(|i| !dd.get(i, b).is_zero())) {
            fail("d-squared", format!("d(d({})) != 0", l(b)));
        }

        let id = Matrix::identity(self.field, n);
        if self.mul[self.unit] != id {
            fail("unit", format!("left multiplication by {} is not the identity", l(self.unit)));
        }
        if let Some(a) = (0..n).find(|&a| self.mul[a].column(self.unit) != self.basis_vector(a)) {
            fail("unit", format!("{}·{} != {}", l(a), l(self.unit), l(a)));
        }

        'assoc: for a in 0..n {
            for b in 0..n {
                let lhs = self.mul[a].mul(&self.mul[b]);
                let ab = self.mul[a].column(b);
                let rhs = self.left_mul(&ab);
                if lhs != rhs {
                    let c = (0..n).find(|&c| lhs.column(c) != rhs.column(c)).unwrap();
                    fail("associativity", format!("({}·{})·{} != {}·({}·{})", l(a), l(b), l(c), l(a), l(b), l(c)));
                    break 'assoc;
                }
            }
        }

        for a in 0..n {
            let da = self.diff.column(a);
            let lhs = self.diff.mul(&self.mul[a]);
            let s = self.field.sign(sign_odd(self.degrees[a]));
            let rhs = self.left_mul(&da).add(&self.mul[a].mul(&self.diff).scale(&s));
            if lhs != rhs {
                let b = (0..n).find(|&b| lhs.column(b) != rhs.column(b)).unwrap();
                fail("leibniz", format!("d({}·{}) violates the Leibniz rule", l(a), l(b)));
                break;
            }
        }

        let top = self.cohomology_dims().sup().unwrap_or(0);
        if top == 1 || top < 0 {
            fail("top-degree", format!("sup H = {top} but d must be 0 or at least 2"));
        }
        ValidationReport { valid: failures.is_empty(), top_degree: top, failures }
    }

    pub fn ensure_valid(&self) -> Result<()> {
        let r = self.validate();
        match r.failures.first() {
            None => Ok(()),
            Some(f) => Err(DgError::InvalidInput(format!("{}: {}", f.check, f.detail))),
        }
    }
}

/// (left, right, sparse product) in basis indices.
type ProductRule = (usize, usize, Vec<(usize, Scalar)>);

/// Assembles an algebra from named basis elements and sparse structure
/// constants; products with the unit are implied.
pub struct AlgebraBuilder {
    name: String,
    field: Field,
    degrees: Vec<i32>,
    labels: Vec<String>,
    diff: Vec<(usize, usize, Scalar)>,
    products: Vec<ProductRule>,
}

impl AlgebraBuilder {
    pub fn new(name: impl Into<String>, field: Field) -> AlgebraBuilder {
        AlgebraBuilder {
            name: name.into(),
            field,
            degrees: Vec::new(),
            labels: Vec::new(),
            diff: Vec::new(),
            products: Vec::new(),
        }
    }

    pub fn basis(mut self, label: &str, degree: i32) -> Self {
        self.labels.push(label.to_string());
        self.degrees.push(degree);
        self
    }

    fn idx(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| DgError::InvalidInput(format!("unknown basis element {label:?}")))
    }

    /// d(from) gains `scalar · to`.
    pub fn diff(mut self, from: &str, to: &str, scalar: Scalar) -> Result<Self> {
        let (f, t) = (self.idx(from)?, self.idx(to)?);
        self.diff.push((f, t, scalar));
        Ok(self)
    }

    pub fn product(mut self, a: &str, b: &str, result: &[(&str, Scalar)]) -> Result<Self> {
        let (ia, ib) = (self.idx(a)?, self.idx(b)?);
        let terms = result.iter().map(|(l, s)| Ok((self.idx(l)?, s.clone()))).collect::<Result<Vec<_>>>()?;
        self.products.push((ia, ib, terms));
        Ok(self)
    }

    pub fn build(self) -> Result<DGAlgebra> {
        let n = self.degrees.len();
        let f = self.field;
        let units: Vec<usize> = (0..n).filter(|&a| self.degrees[a] == 0).collect();
        let &[unit] = units.as_slice() else {
            return Err(DgError::InvalidInput(format!(
                "degree 0 must be one-dimensional, found {} elements",
                units.len()
            )));
        };
        let mut diff = Matrix::zeros(f, n, n);
        for (from, to, s) in self.diff {
            diff.add_at(to, from, &s);
        }
        let mut mul = vec![Matrix::zeros(f, n, n); n];
        for b in 0..n {
            mul[unit].set(b, b, f.one());
            mul[b].set(b, unit, f.one());
        }
        for (a, b, terms) in self.products {
            if a == unit || b == unit {
                continue;
            }
            for (c, s) in terms {
                mul[a].add_at(c, b, &s);
            }
        }
        Ok(DGAlgebra::new(self.name, f, self.degrees, self.labels, diff, mul, unit))
    }
}
