pub mod abelian;
pub mod element;
pub mod fp;
pub mod graded_map;
pub mod matrix;
pub mod monomial;
pub mod presentation;
pub mod ring;
pub mod snf;

pub use abelian::{AbGroup, GroupMap, GroupSummary, PadicGroup};
pub use element::GradedElement;
pub use fp::{FpMatrix, Subspace};
pub use graded_map::GradedMap;
pub use matrix::SparseMatrix;
pub use monomial::{Alphabet, ExpRange, GeneratorSpec, Monomial, Tridegree};
pub use presentation::{Presentation, Rule, SpecValue, Specialization};
pub use ring::BaseRing;
