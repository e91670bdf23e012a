//! Seeded random compact modules, built by attaching cells that kill random
//! cohomology classes and by adding shifted free summands.

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dg::{degree_set, DGAlgebra, Side};
use crate::error::{DgError, Result};
use crate::linalg::Scalar;
use crate::resolution::{resolve, ResolutionBudget, SemifreeModule};

const ATTEMPTS: usize = 32;

/// A minimal model of a random non-acyclic compact module with at most
/// `steps` construction steps after the first free summand.
pub fn random_compact(algebra: &Arc<DGAlgebra>, steps: usize, seed: u64, budget: &ResolutionBudget) -> Result<SemifreeModule> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let x = attempt(algebra, steps, &mut rng)?;
        let m = x.realize();
        if m.cohomology_dims().is_zero() {
            continue;
        }
        return if x.is_minimal() { Ok(x) } else { Ok(resolve(&m, budget)?.semifree) };
    }
    Err(DgError::Inconsistent("every sampled module was acyclic".into()))
}

fn attempt(algebra: &Arc<DGAlgebra>, steps: usize, rng: &mut ChaCha8Rng) -> Result<SemifreeModule> {
    let f = algebra.field;
    let free = SemifreeModule::free(algebra.clone(), Side::Left);
    let mut x = free.suspend(rng.gen_range(-3..=3));
    for _ in 0..rng.gen_range(0..=steps) {
        let h = x.realize().cohomology();
        let degrees: Vec<i32> = degree_set(&x.realize().degrees).into_iter().filter(|&d| h.dim(d) > 0).collect();
        if degrees.is_empty() || rng.gen_bool(0.25) {
            x = x.direct_sum(&free.suspend(rng.gen_range(-3..=3)))?;
            continue;
        }
        let p = degrees[rng.gen_range(0..degrees.len())];
        let mut z = vec![f.zero(); x.len() * algebra.dim()];
        for r in h.reps(p) {
            let c: Scalar = f.from_i64(rng.gen_range(-3..=3));
            for (zi, ri) in z.iter_mut().zip(r) {
                *zi = &*zi + &(&c * ri);
            }
        }
        if z.iter().all(Scalar::is_zero) {
            continue;
        }
        x.attach(format!("c{}", x.len()), p - 1, &z)?;
    }
    Ok(x)
}
