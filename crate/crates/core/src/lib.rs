//! Degree-zero Donaldson-Thomas generating functions of the generic quantum
//! Fermat quintic, computed from colored and multi-colored plane partitions.

pub mod assembly;
pub mod check;
pub mod cli;
pub mod multicolor;
pub mod plane_partition;
pub mod quiver;
pub mod series;

pub use assembly::{dt_orbifold_series, dt_quiver_series, quintic_series, stratum_euler_chars};
pub use multicolor::{multicolor_oracle, multicolor_product, CountTable};
pub use plane_partition::{ColorWeights, PlanePartition, QUINTIC_WEIGHTS};
pub use quiver::{DimensionVector, QuantumMatrix, Quiver};
pub use series::{macmahon, TruncatedSeries};
