use std::path::Path;
use std::sync::Arc;

use anyhow::{Context, Result};
use dgar::catalog;
use dgar::dg::{Bimodule, DGAlgebra, DGModule};
use dgar::resolution::SemifreeModule;
use dgar::schema::{AlgebraDescription, ModuleDescription};
use dgar::DgError;

/// A path to an algebra description, or a catalog name.
pub fn algebra(arg: &str) -> Result<Arc<DGAlgebra>> {
    if Path::new(arg).is_file() {
        let desc = description(arg)?;
        let a = desc.build()?;
        a.ensure_valid()?;
        return Ok(Arc::new(a));
    }
    if catalog::names().contains(&arg) {
        return Ok(catalog::by_name(arg)?);
    }
    Err(DgError::InvalidInput(format!("{arg:?} is neither a file nor one of {}", catalog::names().join(", "))).into())
}

pub fn description(path: &str) -> Result<AlgebraDescription> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    Ok(AlgebraDescription::parse(&text)?)
}

/// `R`, `R[n]` (Σ^n R), `k`, `DR`, or a path to a module description.
pub fn module(a: &Arc<DGAlgebra>, arg: &str) -> Result<DGModule> {
    let reg = || DGModule::regular(a.clone());
    match arg {
        "R" => return Ok(reg()),
        "k" => return Ok(DGModule::residue_field(a.clone())),
        "DR" => return Ok(Bimodule::dual_of_algebra(a.clone()).as_left()),
        _ => {}
    }
    if let Some(n) = arg.strip_prefix("R[").and_then(|s| s.strip_suffix(']')) {
        let n: i32 = n.parse().map_err(|_| DgError::InvalidInput(format!("bad shift in {arg:?}")))?;
        return Ok(reg().suspend(n));
    }
    let text = std::fs::read_to_string(arg).with_context(|| format!("reading {arg}"))?;
    let desc = ModuleDescription::parse(&text)?;
    Ok(SemifreeModule::from_description(&desc, a.clone())?.realize())
}
