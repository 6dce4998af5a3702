//! Fuzzy `(q, r)`-continuity on finite sets of reals.
//!
//! * [`set`]: discrete sets, gaps, lower/upper inner bounds, set algebra.
//! * [`function`]: sampled functions, step extension, monotone inversion.
//! * [`continuity`]: continuity defects, `(q, r)` verdicts, gap certificates.
//! * [`solver`]: fuzzy, discrete and digital intermediate value solvers.
//! * [`connect`]: r-connectedness of interval unions and point sets.
//! * [`io`] and [`cli`]: dataset files, JSON reports and the `fuzzycont` binary.

pub mod cli;
pub mod connect;
pub mod continuity;
pub mod error;
pub mod function;
pub mod io;
pub mod set;
pub mod solver;

pub use connect::{
    dist_to_set, image_connectedness_check, is_r_connected, r_components,
    ComponentDecomposition, ImageConnectedness, Piece, RealSubset,
};
pub use continuity::{
    defect_at, defect_profile, gap_certificate, is_qr_continuous, is_qr_continuous_at,
    trivial_continuity_bound, DefectProfile, FuzzyParams, GapCertificate, PointDefect,
};
pub use error::{Error, Precondition, Result};
pub use function::{MonotoneClass, SampledFunction, StepExtension};
pub use set::{DiscreteSet, Gap, GapReport, Origin, SetStats};
pub use solver::{
    digital_intermediate, discrete_intermediate, fuzzy_intermediate, CodomainGrid, Guarantee,
    Witness,
};
