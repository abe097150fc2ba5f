//! Exact computations with multiparameter affine Hecke algebra modules built
//! from J-folded alcove paths.
//!
//! The layers build on each other: [`laurent`] supplies the coefficient ring,
//! [`rootdata`] and [`weyl`] the combinatorics of (extended) affine Weyl groups,
//! [`jgeom`] the fundamental J-alcove, [`jparam`] the J-parameter systems,
//! [`paths`] the folded alcove paths, [`heckemod`] the matrix modules and
//! [`bounds`] the degree bounds and recognised cells.

pub mod bounds;
pub mod error;
pub mod heckemod;
pub mod jgeom;
pub mod jparam;
pub mod laurent;
pub mod paths;
pub mod rootdata;
pub mod svg;
pub mod weyl;

pub use error::{Error, Result};
pub use heckemod::{HeckeRep, RepMatrix};
pub use jgeom::{FundamentalDomain, JContext};
pub use jparam::{JParamSystem, WeightFunction};
pub use laurent::{DegreeValue, QLaurent, SignedQMonomial};
pub use paths::{JFoldedPath, Step, StepKind, Word};
pub use rootdata::{CartanType, Coweight, Root, RootSystem};
pub use weyl::{AffineRoot, AffineWeyl, DiagramAut, ExtAffineElt, FiniteWeylElt};
