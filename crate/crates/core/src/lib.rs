//! Finite-stage non-Archimedean grid calculus and spectral quantum
//! mechanics with singular potentials.
//!
//! The library models function spaces over a symmetric periodic grid whose
//! points carry positive weights, so that delta functions are actual grid
//! functions (`δ_a = χ_a/d(a)`) with an exact reproducing property, every
//! potential — including delta bumps and single-point indicators — yields a
//! W-Hermitian Hamiltonian with a complete eigendecomposition, and the
//! infinitesimal bookkeeping (point weights, measurement probabilities,
//! physical-versus-ideal states) is carried by truncated Laurent scalars in
//! a formal infinitesimal `ε`.
//!
//! Module map:
//!
//! * [`scalar`] — truncated Laurent arithmetic, ordering, standard parts.
//! * [`grid`] — stages, grids, grid functions, pointwise integral, inner
//!   product, deltas, numerosity counts.
//! * [`deriv`] — central-difference derivative and the two Laplacians.
//! * [`eigen`] — bordered Sturm bisection and cyclic Jacobi solvers.
//! * [`operators`] — Hamiltonians, spectra, evolution, measurement, the
//!   energy bound.
//! * [`symbolic`] — delta-combination state algebra and state
//!   classification.
//! * [`two_d`] — small tensor-product assemblies (dimension uniformity).
//! * [`oracle`] — closed-form and root-found reference solutions.
//! * [`distributions`] — test-function pairings, boundedness, association,
//!   equivalence, standard-connection residuals.
//! * [`stages`] — refinement nets and limit estimation.
//! * [`io`] — CSV/JSON output formats.

pub mod deriv;
pub mod distributions;
pub mod eigen;
pub mod grid;
pub mod io;
pub mod operators;
pub mod oracle;
pub mod scalar;
pub mod stages;
pub mod symbolic;
pub mod two_d;

pub use deriv::{build_derivative, laplacian, LaplacianVariant, StencilOperator};
pub use grid::{
    chi, delta, embed, embed_total, make_grid, sqrt_delta, Grid, GridError, GridFunction,
    GridScalar, Stage,
};
pub use operators::{
    assemble_hamiltonian, eigendecompose, evolve, lowest_eigenpair, measurement_probabilities,
    position_probability, spectral_bound_check, BoundCheckReport, Hamiltonian, OperatorError,
    Potential, SpectralDecomposition, DEFAULT_SEED,
};
pub use scalar::{Classification, ComplexEuclidean, EuclideanScalar, ScalarError, StandardPart};
pub use symbolic::{
    classify_sampled, classify_symbolic, StateClass, StateClassTag, SymbolicPotential,
    SymbolicState,
};
