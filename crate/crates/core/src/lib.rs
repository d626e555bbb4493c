//! Exact-arithmetic invariants of smooth cubic surfaces and the double covers
//! of projective space branched along their Hessian quartics.
//!
//! Everything here is computed over exact scalars — arbitrary-precision
//! rationals and the Eisenstein field Q(w) with w^2 = -1 - w — so every
//! reported rank, determinant, signature, and invariant factor is a certified
//! integer identity, never a floating-point approximation.
//!
//! Module layout:
//!
//! * [`exact`] — scalars (rationals, Eisenstein numbers) and integer matrix
//!   algorithms: Hermite and Smith normal forms, saturated kernels, and
//!   invariants of symmetric bilinear forms.
//! * [`poly`] — sparse multivariate polynomials over an exact field, cubic
//!   surfaces, Hessian determinants, and line-restriction expansions.
//! * [`chow`] — the Chow ring of the point-line incidence variety of P^3 and
//!   the class of the triple-tangency locus.
//! * [`lines`] — the 27 lines, their incidence graph, Eckardt points, and the
//!   classification of branch-cover fibers over points of a cubic surface.
//! * [`ns`] — Néron–Severi Gram models for the cover: pullback classes,
//!   divisor relations, lattice spans, and quotient torsion.
//! * [`periods`] — the rank-10 Eisenstein period module of the five-fold
//!   self-product elliptic curve abelian variety, its exterior square, and the
//!   Galois-invariant sublattices with their twisted cup forms.
//! * [`ivhs`] — the rank-16 infinitesimal variation computation in the
//!   Jacobian ring of a cubic, built from explicit multiplication and
//!   differentiation maps between symmetric powers.

pub mod chow;
pub mod exact;
pub mod ivhs;
pub mod lines;
pub mod ns;
pub mod periods;
pub mod poly;
