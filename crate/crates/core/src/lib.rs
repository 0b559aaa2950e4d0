//! Exact terminality analysis for quotients of projective space by finite
//! permutation groups.
//!
//! A subgroup G ⊆ S_n acts on P^{n−1} by permuting homogeneous coordinates.
//! This crate decides whether the quotient P^{n−1}/G has terminal
//! singularities by computing the ages of all group elements in exact
//! rational arithmetic, with an independent floating-point eigenvalue oracle
//! for cross-checking, and certifies that the coordinate power maps descend
//! to endomorphisms of the quotient of degree d^{n−1}.
//!
//! Module layout:
//!
//! - [`perm`]: permutation arithmetic, cycle decomposition, cycle notation.
//! - [`group`]: generator closure, multiplication tables, the regular
//!   (Cayley) embedding, named group families.
//! - [`age`]: weight vectors, exact chart ages, quasi-reflection detection,
//!   terminality verdicts, the numeric spectrum oracle.
//! - [`endo`]: symbolic commutation certificates for the power maps and the
//!   exact degree formula.
//! - [`report`]: request/report types with deterministic text and JSON
//!   rendering.

pub mod age;
pub mod endo;
pub mod group;
mod numeric;
pub mod perm;
pub mod report;
mod rng;

pub use age::{
    age_lower_bound, age_report, age_via_spectrum, chart_age, lemma_shortcut, min_age,
    quasi_reflection_charts, reid_tai_verdict, weights_of, AgeReport, Decision, Rational, Verdict,
    WeightVector, Witness,
};
pub use endo::{
    certificate, commutes, endo_degree, power_map, preimage_count_spot_check, EndoCertificate,
    MonomialMap,
};
pub use group::{
    close_generators, regular_representation, GroupError, GroupFamily, MultiplicationTable,
    PermutationGroup,
};
pub use perm::{CycleType, ParseError, PermError, Permutation};
pub use report::{
    parse_family_spec, parse_generators_input, render_json, render_text, run, AnalysisReport,
    AnalysisRequest, GroupSource, OutputFormat, RunError,
};
