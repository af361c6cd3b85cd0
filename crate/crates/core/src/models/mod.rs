//! Exact models: the Klein arrangement, the Grünbaum–Rigby realization and
//! the configurations derived from them.

pub mod catalog;
pub mod derived;
pub mod gr;
pub mod klein;

pub use catalog::{point_conic_configs, PointConicCatalog};
pub use derived::{
    collinear_ktuples, gr_d28, half_orbit_42_config, incidence_sum_49, subconfigs_14_2_7_4, DerivedConfig,
};
pub use gr::{gr_double_orbits, gr_model, GrModel};
pub use klein::{klein_model, KleinModel};
