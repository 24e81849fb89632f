//! Convex floating bodies: caps, minimal caps, wet parts and the limit study.

pub mod cap;
pub mod constants;
pub mod mincap;
pub mod report;
pub mod study;
pub mod wet;

pub use cap::{cap_volume, cap_volume_mc, CapSpec};
pub use constants::{c_n_constant, convention_ratio, Convention};
pub use mincap::{min_cap_volume, MinCap, MinCapSolver};
pub use report::ConvergenceReport;
pub use study::{asa_limit_study, exact_affine_surface_area, AsaStudyOptions, WetPath};
pub use wet::{wet_volume, wet_volume_exact, wet_volumes, WetClassifier};
