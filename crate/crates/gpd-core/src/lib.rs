//! Grassmannian persistence diagrams of one-parameter simplicial filtrations.
//!
//! The crate computes subspace-valued persistence diagrams by orthogonal
//! Mobius inversion of two chain-level invariants of a filtration — birth-death
//! spaces under the product order on intervals, and persistent Laplacian
//! kernels under the reverse inclusion order — on top of an exact rational
//! subspace-arithmetic core. It also provides treegrams with a constructive
//! equivalence to degree-0 diagrams, cost-carrying morphisms between
//! filtrations and diagrams, and seeded verification suites for every
//! structural identity the constructions rely on.
//!
//! The numeric backend is exact rational arithmetic by default
//! ([`scalar::Rat`]); a double-precision backend with a relative tolerance is
//! available for experiments.

pub mod complex;
pub mod error;
pub mod invariants;
pub mod io;
pub mod inversion;
pub mod matrix;
pub mod morphisms;
pub mod poset;
pub mod scalar;
pub mod subspace;
pub mod treegram;
pub mod verify;

pub use complex::{adjoint, boundary_matrix, ChainContext, ChainData, Filtration, Simplex, SimplicialComplex};
pub use error::{GpdError, Result};
pub use invariants::{
    birth_death_spaces, gamma_preimage, harmonic_image, harmonic_space, harmonic_tower,
    laplacian_kernel_via_intersection, laplacian_kernel_via_operator, laplacian_kernels,
    persistent_betti, persistent_betti_quotient_oracle, persistent_laplacian,
    relative_chain_space, HarmonicTower, PersistentLaplacian, SubspaceIntervalFunction,
};
pub use inversion::{
    check_monoidal_inverse, check_monoidal_inverse_points, dimension_diagram, mobius_equivalent,
    mobius_equivalent_points, product_orthogonal_inverse, product_orthogonal_inverse_expanded,
    pullback_function, pushforward_diagram, reverse_inclusion_orthogonal_inverse,
    GrassmannianDiagram,
};
pub use matrix::Matrix;
pub use morphisms::{
    charge_preserved_off_diagonal, diagonal_erasure_morphism, equal_off_diagonal, induce_charge,
    induce_gpd, induce_inn, integer_mobius_equivalent, path_cost, ChargeMorphism, FilMorphism,
    GpdMorphism, InnMorphism, PathStep, StepDirection,
};
pub use poset::{
    interval_domain, leq, mobius_invert_int, mobius_invert_point, pullback_int, pullback_point,
    pushforward_int, pushforward_point, Adjoint, Death, ExtScalar, GaloisConnection,
    IntegerIntervalFunction, Interval, IntervalConnection, IntervalOrder, LinearMetricPoset,
};
pub use treegram::{
    degree0_diagram_from_treegram, treegram_from_degree0_diagram, SubPartition, Treegram,
};
pub use scalar::{rat, set_float_tolerance, F64S, Rat, Scalar};
pub use subspace::{
    intersect, is_transverse, ominus, perp, project, project_subspace, span, sum, sum_many,
    AmbientSpace, Subspace, Vector,
};
