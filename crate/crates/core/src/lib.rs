//! Quantum synchronizable codes built from nested pairs of cyclic codes.
//!
//! A dual-containing cyclic code `C = [n, k1]` sitting strictly inside a
//! larger cyclic code `D = [n, k2]` yields, for any slip tolerances
//! `a_l + a_r < k2 - k1`, a CSS-style quantum code on `n + a_l + a_r` qubits
//! that corrects bit flips through `D`, phase flips through `C`, and
//! recovers block misalignment of up to `a_l` qubits left / `a_r` qubits
//! right from the remainder structure of the quotient `f = g_C / g_D`.
//!
//! The crate is organized in layers:
//!
//! * [`bits`] / [`gf2`]: packed bit vectors, carryless polynomial
//!   arithmetic, the cyclic ring, GF(2^m) tables, cyclotomic cosets.
//! * [`code`]: classical cyclic codes, with generator/check polynomials,
//!   duals, BCH construction, parity-check matrices, brute-force
//!   distances, and table-driven bounded-distance decoding.
//! * [`sync`]: the synchronizable-code constructor and the slip-recovery
//!   algebra.
//! * [`frame`]: a Pauli-frame simulation of the full pipeline, from encode
//!   through noisy misaligned channel, window correction, slip recovery,
//!   outer correction, and phase correction.
//! * [`statevec`]: a complex-amplitude state-vector oracle (up to 20
//!   qubits) that re-runs decoded frames as explicit quantum states and
//!   certifies them by fidelity.
//! * [`descriptor`]: JSON-serializable descriptions of constructed codes.

pub mod bits;
pub mod code;
pub mod descriptor;
pub mod frame;
pub mod gf2;
pub mod statevec;
pub mod sync;

pub use bits::BitVec;
pub use code::{bch_code, CyclicCode, Distance, DistanceTag, ParityCheckMatrix, SyndromeDecoder};
pub use descriptor::{CodeDescriptor, QsyncDescriptor, SyncEntryDescriptor};
pub use frame::{ChannelEffect, DecodeReport, DecodeStatus, EncodedFrame, NoisyFrame};
pub use gf2::{BitPoly, RingElement};
pub use statevec::StateVector;
pub use sync::{LogicalBasis, QsyncCode};

/// Unified error type for construction-time and budget failures.
///
/// Decoding failures are not errors: they are reported as statuses or
/// `Option` values, since they are expected outcomes of noisy channels.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("length {n} is not an odd positive integer; even lengths have repeated roots and are out of scope")]
    EvenModulus { n: usize },

    #[error("{poly} does not divide x^{n}-1")]
    NotARingDivisor { poly: String, n: usize },

    #[error("multiplicative order of 2 mod {n} is {ord}, beyond the supported factoring range")]
    OrderBudget { n: usize, ord: usize },

    #[error("extension degree m={m} outside the built-in table range 1..=16")]
    FieldDegree { m: usize },

    #[error("ring length {n} does not match the field group order {order}")]
    FieldOrderMismatch { n: usize, order: usize },

    #[error("parse error: {0}")]
    Parse(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    #[error("BCH designed distance must be odd with 3 <= d <= n, got d={d} for n={n}")]
    BchDistance { d: usize, n: usize },

    #[error("dimension k={k} exceeds the codeword enumeration budget of k <= {budget}")]
    EnumerationBudget { k: usize, budget: usize },

    #[error("weight-ordered search visited {checked} candidates, over the budget of {budget}")]
    SearchBudget { checked: u64, budget: u64 },

    #[error("the zero code has no nonzero codeword, so no minimum distance")]
    ZeroCode,

    #[error("distance of the {role} code is unknown; construct it with a designed distance or compute one within the enumeration budget")]
    DistanceUnknown { role: &'static str },

    #[error("construction requires {clause}")]
    Construction { clause: String },

    #[error("syndrome table would hold {entries} entries, over the budget of {budget}")]
    DecoderBudget { entries: u64, budget: u64 },

    #[error("logical index {index} out of range for {count} basis states")]
    LogicalIndex { index: usize, count: usize },

    #[error("branch sample is not a codeword of the dual of the phase code")]
    SampleNotInDual,

    #[error("state of {qubits} qubits exceeds the {max}-qubit state-vector budget")]
    QubitBudget { qubits: usize, max: usize },

    #[error("sweep of about {estimate} cases exceeds the budget of {budget}")]
    SweepBudget { estimate: u128, budget: u128 },

    #[error("descriptor is inconsistent with the reconstructed code: {field}")]
    DescriptorMismatch { field: String },
}
