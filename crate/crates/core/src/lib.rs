//! Exact combinatorics of Coxeter systems and their Weyl-group geometry:
//! words and weak order, real roots and inversion sets, Davis-type coset
//! posets with homotopy certificates, graph-product unipotent models over
//! finite fields, and graded cohomology bookkeeping (Poincare series, Koszul
//! Tor, fixed-point tables, tree Hilbert series, telescopes).

pub mod cartan;
pub mod coxeter;
pub mod error;
pub mod graded;
pub mod davis;
pub mod homology;
pub mod poset;
pub mod rank2;
pub mod roots;
pub mod treecoho;
pub mod unipotent;

pub use cartan::{gcm_to_coxeter, Bond, CoxeterMatrix, GeneralizedCartanMatrix};
pub use coxeter::{CosetReps, CoxeterSystem, Gen, WeakBall, WeylElement};
pub use error::{Error, Result};
pub use homology::{nerve_homology, HomologyGroup};
pub use poset::{comma_fiber, transport, FinPoset};
pub use roots::{act, act_simple, commutes, theta, Commutation, Root};
