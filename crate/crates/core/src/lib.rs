//! Exact computations around GT-systems of degree `d >= 4`.
//!
//! A GT-system is the set of monomials `x^a y^b z^c t^g` of total degree `d`
//! that are invariant under the diagonal action with weights `(1, e, e^2, e^3)`
//! for a primitive d-th root of unity `e`.  Each such monomial is indexed by a
//! weight triple `(r, gamma, delta)`; the set of triples is called `W_d` here.
//!
//! The crate computes, in exact integer arithmetic only:
//!
//! * the triple set `W_d`, the monomial parametrization and the count `mu`
//!   ([`gtsystem`]),
//! * Hermite/Smith normal forms, integer kernels and lattice membership for
//!   arbitrary-precision integer matrices ([`linalg`]),
//! * suitable binomials, their lattice vectors, fibers and the minimal
//!   quadric/cubic generators of the associated lattice ideal ([`binomials`]),
//! * an upper-triangular Z-basis of the lattice of the ideal ([`basis`]),
//! * fiber-connectivity checks that certify the generator degrees
//!   ([`markov`]).
//!
//! No floating point is used anywhere; every certificate is checked with
//! integer arithmetic and failures are reported as [`Error::Certification`].

pub mod basis;
pub mod binomials;
pub mod gtsystem;
pub mod linalg;
pub mod markov;

/// Default arbitrary-precision integer scalar used by the lattice routines.
pub type Int = num_bigint::BigInt;

/// Matrix over the default scalar.
pub type IntMatrix = linalg::Matrix<Int>;

pub use basis::{build_basis, build_basis_with, excluded_triples, BasisConfig, BasisSystem};
pub use binomials::{
    enumerate_fibers, fiber_members, m3_set, quadric_generators, LatticeVector, MultiDegree,
    SuitableBinomial, WMonomial, Wd,
};
pub use gtsystem::{
    check_gt_bound, derive_params, enumerate_wd, mu_closed_form, triple_to_monomial, GtParams,
    Monomial4, Triple,
};
pub use markov::{
    build_sequence, cubic_admissibility, cubic_witness, fiber_components,
    minimal_generators_in_degree, pair_admits_suitable2, pair_admits_suitable2_bruteforce,
    quadric_isolated_cubics, verify_main_theorem, ConnectivityReport, DegreeSummary, FiberReport,
    MoveSet,
};

/// Error type shared by the whole crate.
///
/// The three variants deliberately mirror the three ways a computation can
/// refuse to produce a result: bad input, a certificate that failed to check,
/// and a guard against runaway enumeration.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    /// Input outside the supported domain (e.g. `d < 4`, a triple not in `W_d`).
    #[error("domain error: {0}")]
    Domain(String),

    /// An internally computed certificate failed verification.  This is never
    /// silently ignored; callers are expected to treat it as a hard failure.
    #[error("certification failure: {0}")]
    Certification(String),

    /// A configured resource cap would be exceeded.
    #[error("resource limit exceeded: {0}")]
    Resource(String),
}

pub type Result<T> = std::result::Result<T, Error>;

/// Caps on the brute-force enumerations.
///
/// Fiber enumeration is exponential in the degree, so both the degree and the
/// system size are guarded.  The defaults are desk-scale; raise them
/// explicitly when more is wanted.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Largest fiber degree `n` that [`binomials::enumerate_fibers`] accepts.
    pub max_fiber_degree: usize,
    /// Largest `d` for which degree `>= 3` fiber enumeration is attempted.
    pub max_d: i64,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            max_fiber_degree: 4,
            max_d: 12,
        }
    }
}

impl Caps {
    pub fn with_max_fiber_degree(mut self, n: usize) -> Self {
        self.max_fiber_degree = n;
        self
    }

    pub fn with_max_d(mut self, d: i64) -> Self {
        self.max_d = d;
        self
    }
}
