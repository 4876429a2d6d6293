//! Verification engines that share no code with the analytic solutions:
//! finite-difference PDE residuals and a nonrelativistic well solver.

mod fd;
mod schrodinger;

pub use fd::{
    fd_residual, point_residual, HPolicy, Pde, PdeKind, Potential, ResidualReport, Sampler,
    SpacetimeGrid, StencilOrder, RESIDUAL_FLOOR, u2_from_u1,
};
pub use schrodinger::schrodinger_well_oracle;
