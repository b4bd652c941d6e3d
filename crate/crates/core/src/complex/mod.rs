//! Almost-complex and complex structures, and complex subalgebras of 𝔤^ℂ.

mod search;
mod structure;
mod subalgebra;
mod template;

pub use search::{default_grid, grid_by_name, grid_search_subalgebras, instance_count, small_grid, SearchResult, DEFAULT_CAP};
pub use structure::{
    is_abelian_structure, is_biinvariant, is_integrable, nijenhuis, nijenhuis_defect, AlmostComplexStructure,
};
pub use subalgebra::{
    commutes_with_conjugate, conj, eigenspace, is_abelian_subalgebra, is_direct_sum, is_direct_sum_real,
    is_integrable_by_eigenspace, is_subalgebra, j_from_subalgebra, subalgebra_from_j, Closure, ComplexSubalgebra,
};
pub use template::{generic_pool, GeneralFormVerdict, TemplateInstance};
