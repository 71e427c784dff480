//! Exact-arithmetic engine for equivariant cyclic homology of constant
//! C2-Mackey functors: graded algebras, group cohomology, spectral
//! sequences, Witt vectors and the pipelines that tie them together.

pub mod coeff;
pub mod error;
pub mod gralg;
pub mod groupcoh;
pub mod pipelines;
pub mod specseq;
pub mod witt;

pub use error::{Error, Result};
pub use gralg::{
    AbGroup, Alphabet, BaseRing, GeneratorSpec, GradedElement, GradedMap, GroupMap, GroupSummary, Monomial,
    PadicGroup, Presentation, SparseMatrix, Tridegree,
};
