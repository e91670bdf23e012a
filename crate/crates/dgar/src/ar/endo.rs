//! H^0 End(M) computed on a minimal semi-free model, with its radical and
//! a search for nontrivial idempotents.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{DgError, Result};
use crate::linalg::{Field, Matrix, Poly, Scalar, Subspace};
use crate::resolution::{semifree_hom, Resolution};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Locality {
    Local,
    NotLocal,
    Undecided,
}

/// Random candidates tried after basis elements and their pairwise sums.
const RANDOM_CANDIDATES: usize = 24;

pub struct EndAlgebra {
    pub field: Field,
    /// Chain maps F → F representing the basis of H^0 End(F).
    pub reps: Vec<Matrix>,
    /// `left[i]` is composition with `reps[i]` on the left, in that basis.
    pub left: Vec<Matrix>,
    pub unit: Vec<Scalar>,
    /// `None` when the trace form cannot detect the radical (characteristic
    /// at most the dimension).
    pub radical: Option<Subspace>,
    /// Dimension of the realized model F.
    size: usize,
}

impl EndAlgebra {
    pub fn of(res: &Resolution) -> Result<EndAlgebra> {
        let field = res.realized.field();
        let hom = semifree_hom(&res.semifree, &res.realized)?;
        let h = hom.complex.cohomology();
        let reps: Vec<Matrix> = h.reps(0).iter().map(|c| hom.map_of(c)).collect();
        let classify = |m: &Matrix| -> Result<Vec<Scalar>> {
            let c = h.classify(0, &hom.coords(m)).ok_or_else(|| DgError::Inconsistent("composite is not a chain map".into()))?;
            Ok(if c.is_empty() { vec![field.zero(); reps.len()] } else { c })
        };
        let n = reps.len();
        let mut left = Vec::with_capacity(n);
        for a in &reps {
            let cols = reps.iter().map(|b| classify(&a.mul(b))).collect::<Result<Vec<_>>>()?;
            left.push(Matrix::from_columns(field, n, &cols));
        }
        let unit = classify(&Matrix::identity(field, res.realized.dim()))?;
        let p = field.characteristic();
        let radical = (p == 0 || p > n as u64).then(|| {
            let mut form = Matrix::zeros(field, n, n);
            for i in 0..n {
                for j in 0..n {
                    form.set(i, j, left[i].mul(&left[j]).trace());
                }
            }
            form.kernel()
        });
        Ok(EndAlgebra { field, reps, left, unit, radical, size: res.realized.dim() })
    }

    pub fn dim(&self) -> usize {
        self.reps.len()
    }

    pub fn left_mul(&self, x: &[Scalar]) -> Matrix {
        let n = self.dim();
        let mut out = Matrix::zeros(self.field, n, n);
        for (c, l) in x.iter().zip(&self.left) {
            if !c.is_zero() {
                out = out.add(&l.scale(c));
            }
        }
        out
    }

    pub fn product(&self, x: &[Scalar], y: &[Scalar]) -> Vec<Scalar> {
        self.left_mul(x).mul_vec(y)
    }

    /// A chain map representing the class x.
    pub fn chain_map(&self, x: &[Scalar]) -> Matrix {
        let mut out = Matrix::zeros(self.field, self.size, self.size);
        for (c, r) in x.iter().zip(&self.reps) {
            if !c.is_zero() {
                out = out.add(&r.scale(c));
            }
        }
        out
    }

    pub fn locality(&self, seed: u64) -> Locality {
        if self.dim() == 0 {
            return Locality::NotLocal;
        }
        if let Some(rad) = &self.radical {
            if self.dim() - rad.dim() == 1 {
                return Locality::Local;
            }
        }
        if self.find_idempotent(seed).is_some() {
            Locality::NotLocal
        } else {
            Locality::Undecided
        }
    }

    /// A nontrivial idempotent, found as a CRT idempotent in k[x] ⊂ End for
    /// candidate elements x whose minimal polynomial has a rational root and
    /// is not a power of a single linear factor.
    pub fn find_idempotent(&self, seed: u64) -> Option<Vec<Scalar>> {
        let n = self.dim();
        let f = self.field;
        let basis = |i: usize| -> Vec<Scalar> { (0..n).map(|j| if i == j { f.one() } else { f.zero() }).collect() };
        let mut candidates: Vec<Vec<Scalar>> = (0..n).map(basis).collect();
        for i in 0..n {
            for j in i + 1..n {
                candidates.push(basis(i).iter().zip(basis(j)).map(|(a, b)| a + &b).collect());
            }
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..RANDOM_CANDIDATES {
            candidates.push((0..n).map(|_| f.from_i64(rng.gen_range(-20..=20))).collect());
        }
        candidates.iter().find_map(|x| self.split_by(x))
    }

    fn split_by(&self, x: &[Scalar]) -> Option<Vec<Scalar>> {
        let f = self.field;
        let lx = self.left_mul(x);
        // Krylov sequence 1, x, x², ... until the first dependency.
        let mut powers = vec![self.unit.clone()];
        let minpoly = loop {
            let next = lx.mul_vec(powers.last().unwrap());
            let span = Matrix::from_columns(f, self.dim(), &powers);
            if let Ok(Some(c)) = span.solve(&next) {
                let mut coeffs: Vec<Scalar> = c.into_iter().map(|v| -v).collect();
                coeffs.push(f.one());
                break Poly::new(f, coeffs);
            }
            powers.push(next);
        };
        for c in minpoly.roots() {
            let q = Poly::linear(f, &c).pow(minpoly.root_multiplicity(&c));
            let (g, rem) = minpoly.div_rem(&q);
            debug_assert!(rem.is_zero());
            if g.degree() == Some(0) {
                continue;
            }
            let (_, _, v) = Poly::ext_gcd(&q, &g);
            let (_, e) = v.mul(&g).div_rem(&minpoly);
            let mut out = vec![f.zero(); self.dim()];
            for (k, a) in e.coeffs.iter().enumerate() {
                for (o, p) in out.iter_mut().zip(&powers[k]) {
                    *o = &*o + &(a * p);
                }
            }
            return Some(out);
        }
        None
    }

    /// Lifts an idempotent class to a strictly idempotent chain map by
    /// iterating E ↦ 3E² − 2E³; the defect lies in a nilpotent ideal.
    pub fn lift_idempotent(&self, e: &[Scalar]) -> Result<Matrix> {
        let f = self.field;
        let mut m = self.chain_map(e);
        let (two, three) = (f.from_i64(2), f.from_i64(3));
        for _ in 0..64 {
            let sq = m.mul(&m);
            if sq == m {
                return Ok(m);
            }
            m = sq.scale(&three).sub(&sq.mul(&m).scale(&two));
        }
        Err(DgError::Inconsistent("idempotent lifting did not converge".into()))
    }
}
