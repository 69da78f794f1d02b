//! Computational group theory for the pure braid groups `P_n`.
//!
//! * [`word`]: freely reduced words over ranked alphabets.
//! * [`braid`]: braid words, the Artin representation, combing.
//! * [`hom`]: presentations and homomorphisms given by generator images.
//! * [`aut`]: the automorphisms `ξ`, `β_k`, `ψ`, `φ_{p,q}` of `P_n`.
//! * [`os`]: the Orlik–Solomon algebra in degrees ≤ 2 and resonance tests.
//! * [`cli`]: word syntax, check registry, reports and braid diagrams.

pub mod aut;
pub mod braid;
pub mod cli;
pub mod hom;
pub mod linalg;
pub mod os;
pub mod subsets;
pub mod tables;
pub mod word;

pub use braid::{BraidError, BraidWord, FreeEndo, Permutation, PureBraidWord};
pub use word::{Alphabet, ExponentVector, Letter, ReducedWord, WordError};
