//! Finite-dimensional graded Lie algebras over exact fields.
//!
//! The crate validates Lie gradings, extracts the partial operation they induce
//! on their index set, and decides whether that operation is realized inside
//! an abelian group, an abelian semigroup, or an arbitrary semigroup. Every
//! decision comes with a certificate that [`realize::verify_certificate`]
//! replays independently.

pub mod corpus;
pub mod enumerate;
pub mod exactmath;
pub mod grading;
pub mod liealg;
pub mod realize;
