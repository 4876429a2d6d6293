pub mod cli;
pub mod dirac_moving;
pub mod error;
pub mod field;
pub mod kg_moving;
pub mod lightcone;
pub mod observables;
pub mod oracle;
pub mod params;
pub mod special_fn;
pub mod static_well;

pub use error::{Error, Result};
pub use field::{ScalarField, SpinorField};
pub use params::{natural_units, NaturalUnits, PhysicalParams, SpacetimePoint, SpinorSample};
