//! Shared inputs for the engine benchmarks.

use lieinv_core::lie::{catalog_build, CaseId, LieAlgebra, Params};

pub fn r2p() -> LieAlgebra {
    catalog_build(CaseId::R2p, &Params::new()).expect("r'2 has no parameters")
}

pub fn h4() -> LieAlgebra {
    catalog_build(CaseId::H4, &Params::new()).expect("h4 has no parameters")
}
