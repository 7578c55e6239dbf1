//! Finite permutation-group machinery for building groups whose normaliser
//! towers have prescribed heights, and for checking how those heights move
//! when rigid components are identified.
//!
//! The crate is organised bottom-up:
//!
//! * [`perm`]: permutations, Schreier–Sims chains, labeled actions, products.
//! * [`grouptop`]: orbits, blocks, normalisers, towers, permutation isomorphism.
//! * [`graphs`]: simple graphs, automorphism groups, rigid families, tree coding.
//! * [`towerlab`]: the stage complexes `H_n`, `F_n`, `D^n_m` and the main assembly.
//! * [`absgroup`]: abstract finite groups and automorphism towers.
//! * [`projline`]: `PGL(2,q)` and `PΓL(2,q)` on the projective line.
//! * [`normtrees`]: finite normal trees and isomorphism extension.

pub mod absgroup;
pub mod error;
pub mod graphs;
pub mod grouptop;
pub mod normtrees;
pub mod towerlab;
pub mod perm;
pub mod projline;

pub use error::{Error, Result};
pub use grouptop::{normaliser_tower, normalizer, perm_iso, SearchConfig, Tower};
pub use perm::{LabeledAction, PermGroup, Permutation};
