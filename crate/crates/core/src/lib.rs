//! Finite simplicial sets in Eilenberg–Zilber normal form, with joins, wide
//! joins, slices, lifting search and anodyne cell presentations.

pub mod anodyne;
pub mod constructions;
pub mod error;
pub mod hom;
pub mod operator;
pub mod simpset;
pub mod slices;
pub mod truncated;
pub mod verify;

pub use error::{Error, Result};
pub use operator::Operator;
pub use simpset::{isomorphic, CountMode, EzForm, SimplexId, SimplicialMap, SimplicialSet, Subcomplex};
pub use hom::{FibrationClass, LiftingProblem};
pub use truncated::TruncatedSimplicialSet;
