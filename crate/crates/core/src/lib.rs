//! Pregeometries with group actions: quotients, basicness, and the
//! classification of primitive-basic and normal-basic pairs.
//!
//! The layers, bottom up: [`perm`] (permutation groups), [`geom`]
//! (pregeometries), [`action`] (a group bound to a pregeometry),
//! [`quotient`], [`classify`], [`gen`] (constructions), and [`doc`] /
//! [`census`] for the command-line front end.

pub mod action;
pub mod census;
pub mod classify;
pub mod doc;
pub mod error;
pub mod gen;
pub mod geom;
pub mod limits;
pub mod perm;
pub mod quotient;

pub use action::{BoundAction, TypeClasses};
pub use classify::{Case, ClassificationReport, Table1Line, Verdict};
pub use error::{Error, Result};
pub use geom::{Pregeometry, TypePartition};
pub use limits::Limits;
pub use perm::{PermGroup, Permutation};
pub use quotient::{QuotientResult, TypeRefiningPartition};
