//! Multiplicative spectral sequences on finite windows.

pub mod abutment;
pub mod collapse;
pub mod e2;
pub mod page;
pub mod rules;
pub mod taxonomy;

pub use abutment::{assemble_abutment, class_of, ExtensionRule, StemGroup, Summand};
pub use collapse::{run_to_collapse, CollapseCertificate, Evidence, PermanentGenerator};
pub use e2::Flavor;
pub use page::{build_e2, shift, Page, Piece, Window};
pub use rules::DifferentialRule;
pub use taxonomy::ClassColor;
