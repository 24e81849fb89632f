//! Shared numerical machinery.

pub mod fit;
pub mod kdtree;
pub mod linalg;
pub mod mc;
pub mod optimize;
pub mod quadrature;
pub mod rng;
pub mod roots;
pub mod special;
pub mod sphere;
pub mod takagi;

pub use fit::{fit_power_law, PowerFit};
pub use linalg::{CMatrix, RMatrix, C64};
pub use mc::{mc_mean, mc_mean_stream, mc_multi_volume, mc_volume, Aabb, McEstimate};
pub use optimize::{nelder_mead, NelderMeadOptions};
pub use rng::SampleRng;
pub use roots::find_root;
pub use special::gamma_fn;
pub use sphere::{sphere_sample, SphereSampling};
pub use takagi::{takagi, Takagi};
