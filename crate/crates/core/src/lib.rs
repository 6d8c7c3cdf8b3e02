//! Exact point-line arrangement statistics for finite planar point sets,
//! per-instance audits of the classical incidence inequalities, and a
//! certified pipeline for the incidence-density constants.
//!
//! All geometry is done in exact rational arithmetic. The only inexact
//! quantity anywhere is the tail `sum_{i>=c} (i+1)/i^3`, which is carried as
//! a rational [`Interval`](interval::Interval) enclosure.

pub mod audit;
pub mod configurations;
pub mod constants;
pub mod error;
pub mod geometry;
pub mod interval;
pub mod par;
pub mod rational;

pub use error::{Error, Result};
pub use geometry::{ArrangementStats, Line, Point, PointSet};
pub use par::Execution;
