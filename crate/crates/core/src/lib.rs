//! Computational core for quasi-line counting on del Pezzo surfaces.
//!
//! * [`lattice`]: intersection theory on `Pic(Bl_n P^2)` for `0 <= n <= 8`.
//! * [`negcurves`]: (-1)-curve enumeration, meet graphs and blow-down
//!   configurations.
//! * [`bounds`]: exact evaluators for the explicit `e(X, l)` bounds.
//! * [`closure`]: finite incidence models and the stable-closure fixpoint.

pub mod bounds;
pub mod closure;
pub mod error;
pub mod lattice;
pub mod negcurves;

pub use bounds::{BoundReport, BoundValue, DegreeData, FoliationProfile, Statement};
pub use closure::{ClosureResult, IncidenceModel, PointId};
pub use error::{Error, Result};
pub use lattice::{DivisorClass, SurfaceModel};
pub use negcurves::{CurveGraph, Family, NegCurve};
