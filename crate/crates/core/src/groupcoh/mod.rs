//! Cohomology of mu_2 = C2 with F_p coefficients, connecting maps, and the
//! D8 bicomplex check.

pub mod d8;
pub mod filtration;
pub mod module;

pub use d8::{d8_resolution_check, D8Module, D8Report};
pub use filtration::{x1_adic_d2, X1AdicReport};
pub use module::{
    c2_cohomology, c2_tate, connecting_map, induced_map, les_check, symmetric_piece, CohomologyGroup, GModule,
    ShortExact,
};
