//! JSON descriptions of algebras and semi-free modules.

use serde::{Deserialize, Serialize};

use crate::dg::{AlgebraBuilder, DGAlgebra, Side, ValidationFailure, ValidationReport};
use crate::error::{DgError, Result};
use crate::linalg::Field;

pub const ALGEBRA_SCHEMA: &str = "dgar.algebra/1";
pub const MODULE_SCHEMA: &str = "dgar.module/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct BasisEntry {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ProductEntry {
    pub left: String,
    pub right: String,
    /// (basis name, scalar) pairs.
    pub result: Vec<(String, String)>,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDescription {
    pub schema: String,
    pub name: String,
    #[serde(default)]
    pub note: String,
    #[serde(default)]
    pub exercises: Vec<String>,
    pub field: Field,
    pub basis: Vec<BasisEntry>,
    /// (from, to, scalar): d(from) contains scalar·to.
    #[serde(default)]
    pub differential: Vec<(String, String, String)>,
    #[serde(default)]
    pub multiplication: Vec<ProductEntry>,
    #[serde(default)]
    pub top_degree: Option<i32>,
}

fn check_field(f: Field) -> Result<Field> {
    match f {
        Field::Rationals => Ok(f),
        Field::PrimeField { characteristic } => Field::prime(characteristic),
    }
}

impl AlgebraDescription {
    pub fn parse(text: &str) -> Result<AlgebraDescription> {
        let d: AlgebraDescription =
            serde_json::from_str(text).map_err(|e| DgError::InvalidInput(format!("algebra description: {e}")))?;
        if d.schema != ALGEBRA_SCHEMA {
            return Err(DgError::InvalidInput(format!("schema {:?}, expected {ALGEBRA_SCHEMA:?}", d.schema)));
        }
        check_field(d.field)?;
        Ok(d)
    }

    pub fn build(&self) -> Result<DGAlgebra> {
        let f = check_field(self.field)?;
        let mut b = AlgebraBuilder::new(&self.name, f);
        for e in &self.basis {
            b = b.basis(&e.name, e.degree);
        }
        for (from, to, s) in &self.differential {
            b = b.diff(from, to, f.parse(s)?)?;
        }
        for p in &self.multiplication {
            let terms = p.result.iter().map(|(n, s)| Ok((n.as_str(), f.parse(s)?))).collect::<Result<Vec<_>>>()?;
            b = b.product(&p.left, &p.right, &terms)?;
        }
        b.build()
    }

    /// Structural validation plus the declared top degree, if any.
    pub fn validate(&self, a: &DGAlgebra) -> ValidationReport {
        let mut r = a.validate();
        if let Some(t) = self.top_degree {
            if t != r.top_degree {
                r.failures.push(ValidationFailure {
                    check: "top-degree",
                    detail: format!("declared top degree {t} but sup H = {}", r.top_degree),
                });
                r.valid = false;
            }
        }
        r
    }
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub name: String,
    pub degree: i32,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct GeneratorDifferential {
    pub generator: String,
    /// (algebra basis name, generator name, scalar) triples.
    pub terms: Vec<(String, String, String)>,
}

/// A finitely generated semi-free module: generators and their
/// differentials as R-linear combinations of earlier generators.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleDescription {
    pub schema: String,
    #[serde(default)]
    pub name: String,
    #[serde(default = "left")]
    pub side: Side,
    pub generators: Vec<GeneratorEntry>,
    #[serde(default)]
    pub differential: Vec<GeneratorDifferential>,
}

fn left() -> Side {
    Side::Left
}

impl ModuleDescription {
    pub fn parse(text: &str) -> Result<ModuleDescription> {
        let d: ModuleDescription =
            serde_json::from_str(text).map_err(|e| DgError::InvalidInput(format!("module description: {e}")))?;
        if d.schema != MODULE_SCHEMA {
            return Err(DgError::InvalidInput(format!("schema {:?}, expected {MODULE_SCHEMA:?}", d.schema)));
        }
        Ok(d)
    }
}
