//! Strictly pseudoconvex model domains and the Fefferman measure.

pub mod density;
pub mod domain;
pub mod jet;
pub mod total;

pub use density::{fefferman_density, fefferman_density_leviframe, levi_adapted, LeviData};
pub use domain::{Domain, DomainDescriptor};
pub use jet::{monge_ampere, ComplexJet2};
pub use total::{fefferman_total, transformation_check, tube_density_check, TransformCheck, TubeCheck};
