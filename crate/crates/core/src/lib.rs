//! Exact quantum measure of the two-site quantum random walk.
//!
//! A particle starts at site 0 and at each step stays with amplitude `1/√2`
//! or hops with amplitude `i/√2`. This crate computes, in exact arithmetic,
//! the decoherence matrix of its n-step paths, the resulting quantum measure
//! `μ_n` on events, and the measure of "the particle has left site 0 by time
//! n" through three independent routes. Alongside it lives the combinatorics
//! that yields the closed form: sums of every fourth binomial coefficient,
//! the recurrences they satisfy, and popcount classes of `n`-bit integers.
//!
//! Nothing here uses floating point for a value that is compared; decimals
//! exist only for display.

pub mod combinatorics;
pub mod decoherence;
pub mod dyadic;
pub mod error;
pub mod gaussian;
pub mod io;
pub mod pathspace;
pub mod qmeasure;
pub mod sampling;
pub mod verify;

pub use combinatorics::{
    alternating_sums, binom, binom_sum_mod4, quad_by_recurrence, quad_closed_form, spaced_sum_mod2,
    third_order_sequence, RecurrenceState, SequenceQuad,
};
pub use decoherence::{
    amplitude, decoherence_entry, decoherence_matrix, psd_certificate, Amplitude,
    DecoherenceMatrix, PsdCertificate,
};
pub use dyadic::Dyadic;
pub use error::{Error, Result};
pub use gaussian::{gauss_pow_1pi, GaussianInt};
pub use pathspace::{
    class_counts, ones_count, parity, parse_path, switch_count, y_vector, z_vector, ClassCounts,
    CountVector, PathIndex,
};
pub use qmeasure::{
    complement_event, convergence_report, grade2_check, mu_complement_closed, mu_complement_rowsum,
    mu_cylinder, mu_fast, mu_pairsum, refine, CylinderEvent, Event,
};
pub use verify::{run_suite, Suite, VerificationReport, VerifyConfig};
