//! Persistent homology of planar point clouds and height-filtered graphs,
//! accumulated persistence functions (APFs), and the statistical procedures
//! that operate on them: rank-envelope goodness-of-fit tests, functional
//! boxplots, bootstrap confidence bands, two-sample tests, clustering, and
//! classification, together with the point-process simulators used to drive
//! them.

pub mod apf;
pub mod bootstrap;
pub mod envelope;
pub mod fda;
pub mod geometry;
pub mod persistence;
pub mod pipeline;
pub mod pointprocess;
pub mod seeds;
