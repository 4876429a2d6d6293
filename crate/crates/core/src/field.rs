//! Sampler abstractions shared by the analytic modes and the oracles.

use num_complex::Complex64;

use crate::error::Result;
use crate::params::{SpacetimePoint, SpinorSample};

/// A complex scalar field on (z, t).
pub trait ScalarField: Sync {
    fn value(&self, p: SpacetimePoint) -> Result<Complex64>;
}

/// A two-component spinor field on (z, t).
pub trait SpinorField: Sync {
    fn spinor(&self, p: SpacetimePoint) -> Result<SpinorSample>;
}

impl<F> ScalarField for F
where
    F: Fn(SpacetimePoint) -> Result<Complex64> + Sync,
{
    fn value(&self, p: SpacetimePoint) -> Result<Complex64> {
        self(p)
    }
}

impl<F> SpinorField for F
where
    F: Fn(SpacetimePoint) -> Result<SpinorSample> + Sync,
{
    fn spinor(&self, p: SpacetimePoint) -> Result<SpinorSample> {
        self(p)
    }
}
