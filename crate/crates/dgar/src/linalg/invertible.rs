use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::field::{Field, Scalar};
use super::matrix::Matrix;

/// Outcome of searching a linear span of square matrices for an invertible
/// member.
#[derive(Clone, Debug, PartialEq)]
pub enum Invertibility {
    /// Coefficients of an invertible combination.
    Invertible(Vec<Scalar>),
    /// The determinant vanishes identically on the span.
    Singular,
    Undecided,
}

const SAMPLES: usize = 8;
const RANGE: i64 = 1000;
const MAX_GRID: usize = 20_000;

fn combine(field: Field, maps: &[Matrix], coeffs: &[Scalar]) -> Matrix {
    let n = maps[0].rows();
    let mut out = Matrix::zeros(field, n, n);
    for (m, c) in maps.iter().zip(coeffs) {
        if !c.is_zero() {
            out = out.add(&m.scale(c));
        }
    }
    out
}

/// Random determinants first; if every sample is singular and there are at
/// most four parameters, the determinant (a polynomial of degree ≤ n in
/// each parameter) is evaluated on the grid {0..n}^s, where a nonzero
/// polynomial cannot vanish everywhere.
pub fn invertible_combination(field: Field, maps: &[Matrix], seed: u64) -> Invertibility {
    let Some(first) = maps.first() else { return Invertibility::Singular };
    let n = first.rows();
    if maps.iter().any(|m| m.rows() != n || m.cols() != n) {
        return Invertibility::Singular;
    }
    if n == 0 {
        return Invertibility::Invertible(vec![field.zero(); maps.len()]);
    }
    let s = maps.len();
    // a row that is zero in every map stays zero in every combination
    if (0..n).any(|i| (0..s).all(|k| maps[k].row(i).iter().all(Scalar::is_zero))) {
        return Invertibility::Singular;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..SAMPLES {
        let coeffs: Vec<Scalar> = (0..s).map(|_| field.from_i64(rng.gen_range(-RANGE..=RANGE))).collect();
        if !combine(field, maps, &coeffs).determinant().is_zero() {
            return Invertibility::Invertible(coeffs);
        }
    }
    let p = field.characteristic();
    let grid = (n + 1).checked_pow(s as u32).unwrap_or(usize::MAX);
    if s > 4 || grid > MAX_GRID || (p != 0 && p <= n as u64) {
        return Invertibility::Undecided;
    }
    let mut idx = vec![0usize; s];
    loop {
        let coeffs: Vec<Scalar> = idx.iter().map(|&i| field.from_i64(i as i64)).collect();
        if !combine(field, maps, &coeffs).determinant().is_zero() {
            return Invertibility::Invertible(coeffs);
        }
        let mut k = 0;
        loop {
            if k == s {
                return Invertibility::Singular;
            }
            idx[k] += 1;
            if idx[k] <= n {
                break;
            }
            idx[k] = 0;
            k += 1;
        }
    }
}
