//! Numerical tools for weighted Hardy spaces on embedded discs.
//!
//! Kernel weight recursions, pseudohyperbolic geometry in the ball, Pick
//! matrices and interpolating subsequences, diagnostics for sequences in
//! the disc, and a tangentially embedded disc built from conformal maps.

// `!(x > 0.0)` style guards are used on purpose so that NaN is rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod csvio;
pub mod error;
pub mod geometry;
pub mod kernels;
pub mod pick;
pub mod sequences;
pub mod series;
pub mod tangential;

pub use error::{Error, Result};
pub use geometry::{
    distortion_profile, mobius_auto, pseudo_dist, pseudo_dist_bounds, tangential_ratio,
    transversality_pairing, BallPoint, CrossingMap, Curve, DiscIdentity, DiscPoint,
    DistortionProfile, EmbeddedDisc, Regime,
};
pub use kernels::{
    are_comparable, ClassificationReport, Comparability, ComparabilityReport, Family, KernelHandle,
};
pub use pick::{
    crossing_determinant, extract_interpolating_subsequence, psd_check, CrossingReport, Extraction,
    PickKernel, PickProblem, PsdVerdict, Verdict,
};
pub use sequences::{named_sequence, DiscSequence};
pub use series::{
    evaluate_generating, is_complete_np, moduli_from_weights, weights_from_moduli,
    CoefficientSequence, Generating, KernelWeights, TruncatedSeries, DEFAULT_TRUNCATION,
};
pub use tangential::{
    assemble_embedding, boundary_modulus_defect, harmonic_conjugate, tangency_report,
    BoundarySampling, ConformalChain, Stage, TangencyReport, TangentialEmbedding,
};

pub use num_complex::Complex64;
