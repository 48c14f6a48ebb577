pub mod blocks;
pub mod quotients;
pub mod rep;
pub mod roundtrip;

use std::sync::Arc;

use tqft_core::cyclo::{make_root, Level, Root, RootChoice};
use tqft_core::rep::{Quantum, Representation, SurfaceSpec};

use crate::error::{CliError, CliResult};

pub fn level(p: u64) -> CliResult<Level> {
    Ok(Level::new(p)?)
}

pub fn root_choice(s: &str) -> CliResult<RootChoice> {
    if s == "unitary" {
        return Ok(RootChoice::Unitary);
    }
    s.parse().map(RootChoice::Exponent).map_err(|_| CliError::Config(format!("root '{s}' is neither 'unitary' nor an integer exponent")))
}

pub fn spec(s: &str) -> CliResult<SurfaceSpec> {
    s.parse().map_err(|e: tqft_core::Error| CliError::Config(format!("spec '{s}': {e}")))
}

pub fn root(p: u64, choice: &str) -> CliResult<Root> {
    Ok(make_root(level(p)?, root_choice(choice)?)?)
}

pub fn build(spec: &SurfaceSpec, root: Root) -> CliResult<Representation> {
    Ok(Representation::build(spec, Arc::new(Quantum::new(root)))?)
}

/// File-name stem for a surface, e.g. `torus2_2_4`.
pub fn stem(spec: &str) -> String {
    let s: String = spec.chars().map(|c| if c.is_ascii_alphanumeric() { c } else { '_' }).collect();
    s.trim_matches('_').to_string()
}
