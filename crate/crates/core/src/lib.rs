//! Free binary algebras: words over a finite alphabet and leaf-labelled
//! binary trees, both with a neutral element `⊥` and one length-additive
//! binary operation `⋆`.
//!
//! The crate provides
//!
//! * the term algebra itself ([`object`], [`polynomial`], [`text`]),
//! * leftmost rewriting to canonical forms under principal congruences,
//!   together with irreducibility certificates ([`rewrite`]),
//! * a brute-force bounded congruence closure that cross-checks the
//!   canonical forms ([`congruence`]),
//! * synthesis of the unique polynomial behind a congruence-preserving
//!   black-box function, and refutation search for functions that are not
//!   ([`cp`]),
//! * the companion results on `ℕ` and `ℕ^p` ([`numeric`]).
//!
//! Everything is `no_std` compatible (alloc required); IO, the CLI and file
//! handling live in the companion binary crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod alphabet;
pub mod congruence;
pub mod cp;
pub mod numeric;
pub mod object;
pub mod polynomial;
pub mod rewrite;
pub mod text;

pub use alphabet::Alphabet;
pub use congruence::{closure_oracle, ClosureConfig, CongruenceSpec, Partition};
pub use object::{Mode, Object, Side, Sym, Tree};
pub use polynomial::{find_occurrence, length_law_check, Context, Polynomial};
pub use rewrite::{
    check_assumption1, ct_tree_comb, ct_word, equivalent, in_ct, is_reducible,
    is_strongly_irreducible, polynomial_reduce, reduce_once, reduce_star, strong_irreducibility,
    ReductionSpec, StrongIrreducibility,
};
