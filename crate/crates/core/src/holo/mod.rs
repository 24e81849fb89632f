//! Holomorphic floating bodies: peak families, sublevel quantiles, wet
//! volumes and the normal-form cap volumes behind their limit.

pub mod family;
pub mod normal_form;
pub mod peak;
pub mod study;
pub mod wet;

pub use family::{polydisk_quantile, sublevel_quantiles, sublevel_volume, FamilyKind, PeakFamily};
pub use normal_form::{boundary_normal_form, cap_area, hermitian_cap_volume, webster_normal_form, NormalForm};
pub use peak::{levi_peak, levi_polynomial, polydisk_peak, PeakFunction};
pub use study::{holo_constant, holo_limit_study, HoloStudy, HoloStudyOptions, SaturationCheck};
pub use wet::{holo_wet_volume, holo_wet_volume_with, WetMode};
