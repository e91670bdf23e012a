//! Hand-entered finite models shipped with the engine.

use std::sync::Arc;

use crate::dg::{AlgebraBuilder, DGAlgebra};
use crate::error::{DgError, Result};
use crate::linalg::Field;
use crate::schema::AlgebraDescription;

const ENTRIES: &[(&str, &str)] = &[
    ("sphere-2", include_str!("../catalog/sphere-2.json")),
    ("sphere-3", include_str!("../catalog/sphere-3.json")),
    ("sphere-4", include_str!("../catalog/sphere-4.json")),
    ("sphere-7", include_str!("../catalog/sphere-7.json")),
    ("cp2-like", include_str!("../catalog/cp2-like.json")),
    ("s2xs2", include_str!("../catalog/s2xs2.json")),
    ("wedge", include_str!("../catalog/wedge.json")),
];

pub fn names() -> Vec<&'static str> {
    ENTRIES.iter().map(|e| e.0).collect()
}

pub fn description(name: &str) -> Result<AlgebraDescription> {
    let (_, text) = ENTRIES
        .iter()
        .find(|e| e.0 == name)
        .ok_or_else(|| DgError::InvalidInput(format!("no catalog entry named {name:?}")))?;
    AlgebraDescription::parse(text)
}

pub fn by_name(name: &str) -> Result<Arc<DGAlgebra>> {
    Ok(Arc::new(description(name)?.build()?))
}

pub fn all() -> Result<Vec<Arc<DGAlgebra>>> {
    names().into_iter().map(by_name).collect()
}

/// k[X]/(X²) with |X| = d.
pub fn sphere(d: i32) -> Result<Arc<DGAlgebra>> {
    if d < 2 {
        return Err(DgError::InvalidInput(format!("sphere degree {d} < 2")));
    }
    let f = Field::Rationals;
    Ok(Arc::new(AlgebraBuilder::new(format!("sphere-{d}"), f).basis("1", 0).basis("X", d).build()?))
}

/// k[x]/(x^{n+1}) with |x| = deg.
pub fn truncated_polynomial(field: Field, deg: i32, n: usize) -> Result<Arc<DGAlgebra>> {
    let mut b = AlgebraBuilder::new(format!("k[x]/(x^{})", n + 1), field).basis("1", 0);
    let label = |i: usize| if i == 1 { "x".to_string() } else { format!("x{i}") };
    for i in 1..=n {
        b = b.basis(&label(i), deg * i as i32);
    }
    for i in 1..=n {
        for j in 1..=n - i {
            b = b.product(&label(i), &label(j), &[(&label(i + j), field.one())])?;
        }
    }
    Ok(Arc::new(b.build()?))
}
