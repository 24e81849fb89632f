//! Convex bodies in R^n, Gaussian curvature and affine surface area.

pub mod asa;
pub mod body;
pub mod curvature;

pub use asa::{affine_surface_area, surface_area};
pub use body::{BodyDescriptor, ConvexBody, ImplicitJet, Shape};
pub use curvature::{gauss_curvature, CurvatureJet};
