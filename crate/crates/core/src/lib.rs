//! Transfinite series over countable ordinals, summed numerically.
//!
//! A series here is indexed by the ordinals below some countable ordinal in
//! Cantor normal form (anything below epsilon-zero), with terms in a normed
//! space. Partial sums extend through limit stages, and the central question
//! the crate answers is whether reordering such a series along a bijection
//! with another ordinal moves its sum. For absolutely convergent series it
//! must not; the tooling makes that checkable with explicit error bounds
//! rather than wishful floating point.
//!
//! The pieces:
//!
//! - [`ordinal`]: normal-form arithmetic, comparison, fundamental sequences.
//! - [`text`]: the expression grammar (`w^2*3+w+5`) and rendering.
//! - [`space`]: scalar and fixed-dimension vector values with their norms.
//! - [`hyperseq`]: ordinal-indexed term rules, tail certificates, built-in
//!   families, masking.
//! - [`bijection`]: explicit enumerations of infinite ordinals by the
//!   naturals, perturbations, composition.
//! - [`engine`]: the summation semantics under an explicit budget, with
//!   certified or heuristic limit resolution.
//! - [`rearrange`]: transporting series along enumerations and verifying
//!   sum invariance.

pub mod bijection;
pub mod engine;
pub mod hyperseq;
pub mod ordinal;
pub mod rearrange;
pub mod space;
pub mod text;

pub use bijection::{
    canonical_enumeration, compose_to, image_membership, membership_mask, parse_bijection_spec,
    perturb, position_in_image, BijectionError, Enumeration, OrdinalMap, Provenance,
};
pub use engine::{
    abs_converges, dominated_compare, norm_series, partials_along, split_sum, sum_series,
    DominationCertificate, DominationError, EngineError, EvalBudget, SumOutcome, UnresolvedReason,
};
pub use hyperseq::{
    make_family, mask, parse_family_spec, FamilySpec, Hypersequence, HyperseqError, IndicatorMask,
    TailBound, TailCertificate,
};
pub use ordinal::{Ordinal, OrdinalError, OrdinalKind};
pub use rearrange::{
    rearrange_from_omega, rearrange_general, rearrange_to_omega, verify_invariance, RearrangeError,
    TailData, Verdict, VerificationReport, VERIFY_CSV_HEADER,
};
pub use space::{axpy, SpaceElement, SpaceError, SpaceTag};
pub use text::{parse, parse_with_depth, render, ParseError, ParseErrorKind, DEFAULT_MAX_DEPTH};
