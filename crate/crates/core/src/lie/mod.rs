//! Lie algebras by structure constants, the classification catalog and a
//! plain-text bracket table reader.

mod algebra;
mod catalog;
mod ingest;

pub use algebra::{format_vector, unit, JacobiDefect, LieAlgebra, Params};
pub use catalog::{
    catalog_build, catalog_build_unchecked, check_range, default_grid, format_params, grid_instances,
    instance_name, parse_params, CaseId, Instance, LABEL_ALIASES,
};
pub use ingest::parse_bracket_table;
