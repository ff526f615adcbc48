//! Exact search for irreducible modules inside symmetric powers.
//!
//! Given a finite matrix group `G ≤ GL_n(F)` over a finite field, the crate
//! enumerates `G`, builds symmetric powers `Sym^m(V)` as spaces of
//! homogeneous polynomials, and decides for each irreducible `W` whether it
//! embeds in or is a quotient of `Sym^m(V)`, both by scanning degrees and by
//! building explicit coset-product witnesses.

pub mod cli;
pub mod construct;
pub mod error;
pub mod fields;
pub mod groups;
pub mod homs;
pub mod linalg;
pub mod meataxe;
pub mod reps;
pub mod scan;

pub use error::{Error, Result};
pub use fields::{make_field, FieldElem, FieldEmbedding, FieldSpec};
pub use groups::GroupData;
pub use linalg::Mat;
