//! Symbolic Pauli-frame simulation of the encode / noisy channel / decode
//! pipeline.
//!
//! CSS states under Pauli noise evolve classically: it suffices to track
//! one superposition branch (a dual codeword), the coset data, and the
//! accumulated X/Z flip vectors. Nothing here is exponential in the block
//! length, which is what makes the n = 31 codes simulable; the dense
//! state-vector module certifies faithfulness at small n.
//!
//! Decoding runs in four stages, mirroring what a misaligned device does:
//!
//! 1. syndrome-decode the length-n window the device actually read, using
//!    the bit code;
//! 2. recover the slip from the cleaned window by two-step division;
//! 3. re-read the first n and last n positions of the block the device now
//!    believes in, correcting remaining bit flips window by window;
//! 4. fold the phase record onto the core, syndrome-decode it with the
//!    phase code, and check the residual is a stabilizer.
//!
//! Failures are statuses, never panics or `Err`: the ground truth is in
//! hand, so every run is judged exactly.

use std::collections::BTreeMap;

use itertools::Itertools;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha12Rng;
use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::gf2::ring::RingElement;
use crate::sync::QsyncCode;
use crate::Error;

/// Cap on the number of cases `exhaustive_sweep` will enumerate.
pub const SWEEP_BUDGET: u128 = 20_000_000;

/// At most this many failing cases are stored verbatim in a sweep summary.
pub const VIOLATION_CAP: usize = 32;

/// One logical basis state, encoded: a single dual-code branch of the
/// superposition, the n-bit core, and the edge-extended block.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EncodedFrame {
    pub logical_index: usize,
    pub branch: BitVec,
    pub core: BitVec,
    pub extended: BitVec,
}

/// A Pauli channel outcome: X flips, Z flips (both over the extended
/// block), and the boundary slip the next device starts reading at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChannelEffect {
    pub bit_flips: BitVec,
    pub phase_flips: BitVec,
    pub slip: i64,
}

impl ChannelEffect {
    /// No flips, just a (possibly zero) slip.
    pub fn silent(n_ext: usize, slip: i64) -> Self {
        ChannelEffect {
            bit_flips: BitVec::zeros(n_ext),
            phase_flips: BitVec::zeros(n_ext),
            slip,
        }
    }
}

/// The frame as the channel leaves it: bit content with X flips applied,
/// the Z record kept for folding, and the ground-truth slip.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NoisyFrame {
    pub bits: BitVec,
    pub phase_flips: BitVec,
    pub slip: i64,
}

/// Verdict for one pipeline run, judged against the ground truth.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DecodeStatus {
    /// Slip recovered, bit flips cancelled exactly, phase residual a
    /// stabilizer.
    Success,
    /// Bit correction differs from the truth by a consistently extended
    /// dual codeword: physically harmless, reported separately.
    DegenerateSuccess,
    /// Slip estimate missing or wrong.
    SyncFailure,
    /// Residual bit flips that are not a harmless dual pattern.
    BitFailure,
    /// Phase residual outside the dual of the phase code (a logical Z).
    PhaseFailure,
}

impl DecodeStatus {
    pub const ALL: [DecodeStatus; 5] = [
        DecodeStatus::Success,
        DecodeStatus::DegenerateSuccess,
        DecodeStatus::SyncFailure,
        DecodeStatus::BitFailure,
        DecodeStatus::PhaseFailure,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            DecodeStatus::Success => "success",
            DecodeStatus::DegenerateSuccess => "degenerate_success",
            DecodeStatus::SyncFailure => "sync_failure",
            DecodeStatus::BitFailure => "bit_failure",
            DecodeStatus::PhaseFailure => "phase_failure",
        }
    }

    pub fn is_success(&self) -> bool {
        matches!(self, DecodeStatus::Success)
    }
}

impl std::fmt::Display for DecodeStatus {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Everything a pipeline run decided, plus the verdict.
#[derive(Clone, Debug)]
pub struct DecodeReport {
    /// `None` when the sync division left an unrecognized remainder.
    pub slip_estimate: Option<i64>,
    /// Stage-1 correction, in extended-block coordinates.
    pub window_bit_correction: BitVec,
    /// Stage-3 corrections (both outer windows), extended coordinates.
    pub outer_bit_corrections: BitVec,
    /// Stage-4 input: the phase record folded onto the core.
    pub folded_phase: BitVec,
    /// Stage-4 correction over the core.
    pub phase_correction: BitVec,
    pub status: DecodeStatus,
}

impl DecodeReport {
    /// XOR of the stage-1 and stage-3 corrections.
    pub fn total_bit_correction(&self) -> BitVec {
        self.window_bit_correction.xor(&self.outer_bit_corrections)
    }
}

/// Edge extension: positions `[0, a_l)` copy the last `a_l` core bits,
/// the middle `n` hold the core, positions `[a_l+n, n_ext)` copy the first
/// `a_r` bits. Equivalently `P[i] = core[(i - a_l) mod n]`.
pub fn extend_bits(core: &BitVec, a_l: usize, a_r: usize) -> BitVec {
    let n = core.len();
    assert!(a_l < n && a_r < n, "extensions shorter than the core");
    let mut out = BitVec::zeros(n + a_l + a_r);
    for i in 0..out.len() {
        if core.get((i + n - a_l) % n) {
            out.set(i, true);
        }
    }
    out
}

/// Encodes one logical basis state on one superposition branch.
///
/// The core is `branch + representative(logical_index) + g`, `g` the bit
/// code's generator; the translation by `g` is what stamps the nonzero
/// division remainder that slip recovery reads.
pub fn encode(
    code: &QsyncCode,
    logical_index: usize,
    branch: &BitVec,
) -> Result<EncodedFrame, Error> {
    let n = code.n();
    if branch.len() != n {
        return Err(Error::LengthMismatch {
            left: branch.len(),
            right: n,
        });
    }
    if !code.phase_dual().contains_word(branch) {
        return Err(Error::SampleNotInDual);
    }
    let mut core = code.logical().representative(logical_index)?;
    core.xor_assign(branch);
    core.xor_assign(&code.bit_code().generator().to_bits(n));
    let extended = extend_bits(&core, code.a_l(), code.a_r());
    Ok(EncodedFrame {
        logical_index,
        branch: branch.clone(),
        core,
        extended,
    })
}

/// Uniform sample from the dual of the phase code, one superposition
/// branch of the encoded state.
pub fn sample_branch(code: &QsyncCode, rng: &mut impl Rng) -> BitVec {
    let mut v = BitVec::zeros(code.n());
    for row in code.phase_dual().generator_matrix() {
        if rng.random() {
            v.xor_assign(&row);
        }
    }
    v
}

/// Applies the channel: X flips change the bit content, Z flips are
/// recorded for stage 4 (diagonal action), the slip is carried through.
pub fn apply_channel(frame: &EncodedFrame, eff: &ChannelEffect) -> NoisyFrame {
    assert_eq!(frame.extended.len(), eff.bit_flips.len(), "length mismatch");
    NoisyFrame {
        bits: frame.extended.xor(&eff.bit_flips),
        phase_flips: eff.phase_flips.clone(),
        slip: eff.slip,
    }
}

/// Length-n read at a signed offset; positions outside the block read 0.
fn read_window(bits: &BitVec, start: i64, len: usize) -> BitVec {
    let mut w = BitVec::zeros(len);
    for j in 0..len {
        let idx = start + j as i64;
        if idx >= 0 && (idx as usize) < bits.len() && bits.get(idx as usize) {
            w.set(j, true);
        }
    }
    w
}

/// XORs a window-coordinate pattern into extended coordinates at a signed
/// offset; flips landing outside the block are dropped.
fn add_window(target: &mut BitVec, start: i64, pattern: &BitVec) {
    for j in pattern.iter_ones() {
        let idx = start + j as i64;
        if idx >= 0 && (idx as usize) < target.len() {
            target.flip(idx as usize);
        }
    }
}

/// Stage-1 outcome: the cleaned device window and the correction it took.
#[derive(Clone, Debug)]
pub struct WindowDecode {
    /// The device window after correction, length n.
    pub window: BitVec,
    /// The same correction in extended-block coordinates.
    pub correction: BitVec,
    /// False when the syndrome fell outside the decoding radius.
    pub decoded: bool,
}

/// Stage 1: syndrome-decode the window a device misaligned by `slip`
/// actually reads, extended positions `[a_l+slip, a_l+slip+n)`.
pub fn decode_stage1_window(code: &QsyncCode, noisy: &NoisyFrame, slip: i64) -> WindowDecode {
    let start = code.a_l() as i64 + slip;
    let raw = read_window(&noisy.bits, start, code.n());
    match code.bit_decoder().correct(&raw) {
        Some((window, err)) => {
            let mut correction = BitVec::zeros(code.n_ext());
            add_window(&mut correction, start, &err);
            WindowDecode {
                window,
                correction,
                decoded: true,
            }
        }
        None => WindowDecode {
            window: raw,
            correction: BitVec::zeros(code.n_ext()),
            decoded: false,
        },
    }
}

/// Stage 2: estimate the slip from a bit-error-free window.
///
/// A device reading `slip` positions late sees the core cyclically
/// advanced by `slip`, so the two-step division remainder is
/// `x^{-slip} mod f`; the estimate inverts that mirrored signature map.
pub fn decode_stage2_sync(code: &QsyncCode, corrected_window: &BitVec) -> Option<i64> {
    code.recover_slip(&RingElement::from_bits(corrected_window))
}

/// Stage-3 outcome: the fully bit-corrected block and both corrections.
#[derive(Clone, Debug)]
pub struct OuterDecode {
    /// The block with stage-1 and stage-3 corrections applied.
    pub frame: BitVec,
    /// Stage-1 correction (re-derived), extended coordinates.
    pub window_correction: BitVec,
    /// Stage-3 correction, extended coordinates.
    pub outer_correction: BitVec,
    /// False when either outer window missed the decoding table.
    pub decoded: bool,
}

/// Stage 3: with the slip estimated, decode the first-n and last-n windows
/// of the block the device believes in, sequentially, clearing the bit
/// flips stage 1 could not see.
///
/// The believed block starts at true offset `slip - slip_estimate` (zero
/// when the estimate is right); reads outside the block are zeros and
/// corrections falling outside are dropped.
pub fn decode_stage3_outer(code: &QsyncCode, noisy: &NoisyFrame, slip_estimate: i64) -> OuterDecode {
    let stage1 = decode_stage1_window(code, noisy, noisy.slip);
    outer_from_stage1(code, noisy, &stage1, slip_estimate)
}

fn outer_from_stage1(
    code: &QsyncCode,
    noisy: &NoisyFrame,
    stage1: &WindowDecode,
    slip_estimate: i64,
) -> OuterDecode {
    let n = code.n();
    let delta = noisy.slip - slip_estimate;
    let mut frame = noisy.bits.xor(&stage1.correction);
    let mut outer = BitVec::zeros(code.n_ext());
    let mut decoded = true;
    for start in [delta, delta + (code.a_l() + code.a_r()) as i64] {
        let w = read_window(&frame, start, n);
        match code.bit_decoder().correct(&w) {
            Some((_, err)) => {
                add_window(&mut frame, start, &err);
                add_window(&mut outer, start, &err);
            }
            None => decoded = false,
        }
    }
    OuterDecode {
        frame,
        window_correction: stage1.correction.clone(),
        outer_correction: outer,
        decoded,
    }
}

/// Folds an extended-coordinate phase record onto the core: copies act,
/// through the un-extension CNOTs, as extra Z flips on the core positions
/// they mirror. `folded[j] = e[a_l+j] ^ e[j-(n-a_l)] ^ e[a_l+n+j]`, the
/// last two terms present only for `j >= n-a_l` and `j < a_r`.
pub fn fold_phase(phase: &BitVec, n: usize, a_l: usize, a_r: usize) -> BitVec {
    fold_phase_at(phase, n, a_l, a_r, 0)
}

/// The same fold for a block believed to start at true offset `delta`;
/// reads outside the true block are zeros.
fn fold_phase_at(phase: &BitVec, n: usize, a_l: usize, a_r: usize, delta: i64) -> BitVec {
    let read = |idx: i64| -> bool {
        idx >= 0 && (idx as usize) < phase.len() && phase.get(idx as usize)
    };
    let mut folded = BitVec::zeros(n);
    for j in 0..n {
        let mut acc = read(delta + (a_l + j) as i64);
        if j >= n - a_l {
            acc ^= read(delta + (j - (n - a_l)) as i64);
        }
        if j < a_r {
            acc ^= read(delta + (a_l + n + j) as i64);
        }
        if acc {
            folded.set(j, true);
        }
    }
    folded
}

/// Stage-4 outcome: the folded phase record and its correction.
#[derive(Clone, Debug)]
pub struct PhaseDecode {
    pub folded: BitVec,
    pub correction: BitVec,
    /// False when the folded syndrome missed the decoding table.
    pub decoded: bool,
}

/// Stage 4: fold the phase record onto the believed core and
/// syndrome-decode it with the phase code.
pub fn decode_stage4_phase(code: &QsyncCode, noisy: &NoisyFrame, slip_estimate: i64) -> PhaseDecode {
    let delta = noisy.slip - slip_estimate;
    let folded = fold_phase_at(&noisy.phase_flips, code.n(), code.a_l(), code.a_r(), delta);
    match code.phase_decoder().correct(&folded) {
        Some((_, err)) => PhaseDecode {
            folded,
            correction: err,
            decoded: true,
        },
        None => PhaseDecode {
            correction: BitVec::zeros(code.n()),
            folded,
            decoded: false,
        },
    }
}

/// Runs all four stages and judges the outcome against the ground truth.
///
/// The verdict is exact, never optimistic: success requires the slip
/// estimate to equal the true slip, the bit corrections to cancel the true
/// flips (or differ by a consistently extended dual codeword, reported as
/// degenerate), and the phase residual to lie in the dual of the phase
/// code.
pub fn run_pipeline_with_branch(
    code: &QsyncCode,
    logical_index: usize,
    eff: &ChannelEffect,
    branch: &BitVec,
) -> Result<DecodeReport, Error> {
    let frame = encode(code, logical_index, branch)?;
    let noisy = apply_channel(&frame, eff);

    let stage1 = decode_stage1_window(code, &noisy, noisy.slip);
    let Some(est) = decode_stage2_sync(code, &stage1.window) else {
        return Ok(DecodeReport {
            slip_estimate: None,
            window_bit_correction: stage1.correction,
            outer_bit_corrections: BitVec::zeros(code.n_ext()),
            folded_phase: BitVec::zeros(code.n()),
            phase_correction: BitVec::zeros(code.n()),
            status: DecodeStatus::SyncFailure,
        });
    };
    let stage3 = outer_from_stage1(code, &noisy, &stage1, est);
    let stage4 = decode_stage4_phase(code, &noisy, est);

    let total = stage1.correction.xor(&stage3.outer_correction);
    let status = classify(code, eff, est, &total, &stage4);
    Ok(DecodeReport {
        slip_estimate: Some(est),
        window_bit_correction: stage1.correction,
        outer_bit_corrections: stage3.outer_correction,
        folded_phase: stage4.folded,
        phase_correction: stage4.correction,
        status,
    })
}

/// `run_pipeline_with_branch` with the branch drawn from a seeded
/// generator, so a trial is reproducible from `(inputs, branch_seed)`.
pub fn run_pipeline(
    code: &QsyncCode,
    logical_index: usize,
    eff: &ChannelEffect,
    branch_seed: u64,
) -> Result<DecodeReport, Error> {
    let mut rng = ChaCha12Rng::seed_from_u64(branch_seed);
    let branch = sample_branch(code, &mut rng);
    run_pipeline_with_branch(code, logical_index, eff, &branch)
}

fn classify(
    code: &QsyncCode,
    eff: &ChannelEffect,
    slip_estimate: i64,
    total_bit_correction: &BitVec,
    stage4: &PhaseDecode,
) -> DecodeStatus {
    if slip_estimate != eff.slip {
        return DecodeStatus::SyncFailure;
    }
    let phase_residual = stage4.folded.xor(&stage4.correction);
    let phase_ok = code.phase_dual().contains_word(&phase_residual);
    let bit_residual = eff.bit_flips.xor(total_bit_correction);
    if !bit_residual.is_zero() {
        // A residual equal to a dual codeword extended the same way the
        // block was re-indexes the superposition without moving the state.
        let middle = bit_residual.slice(code.a_l(), code.n());
        let harmless = phase_ok
            && code.phase_dual().contains_word(&middle)
            && extend_bits(&middle, code.a_l(), code.a_r()) == bit_residual;
        return if harmless {
            DecodeStatus::DegenerateSuccess
        } else {
            DecodeStatus::BitFailure
        };
    }
    if !phase_ok {
        return DecodeStatus::PhaseFailure;
    }
    DecodeStatus::Success
}

/// How the channel chooses the slip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SlipPolicy {
    /// Always this slip; values outside the tolerated range are allowed
    /// for negative tests.
    Fixed(i64),
    /// Uniform over the tolerated range `[-a_l, a_r]`.
    Uniform,
}

/// Independent per-qubit X and Z flips plus a slip policy.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ChannelModel {
    pub p_bit: f64,
    pub p_phase: f64,
    pub slip: SlipPolicy,
    /// When set, flips are thinned until every length-n window carries at
    /// most the bit radius and the total phase weight is at most the phase
    /// radius: the regime the code guarantees.
    pub clamp: bool,
}

/// Draws one channel outcome from the model.
pub fn sample_channel(
    code: &QsyncCode,
    model: &ChannelModel,
    rng: &mut impl Rng,
) -> ChannelEffect {
    let n_ext = code.n_ext();
    let mut bit_flips = BitVec::zeros(n_ext);
    let mut phase_flips = BitVec::zeros(n_ext);
    for i in 0..n_ext {
        if rng.random_bool(model.p_bit) {
            bit_flips.set(i, true);
        }
    }
    for i in 0..n_ext {
        if rng.random_bool(model.p_phase) {
            phase_flips.set(i, true);
        }
    }
    let slip = match model.slip {
        SlipPolicy::Fixed(s) => s,
        SlipPolicy::Uniform => rng.random_range(-(code.a_l() as i64)..=code.a_r() as i64),
    };
    if model.clamp {
        clamp_to_radii(code, &mut bit_flips, &mut phase_flips);
    }
    ChannelEffect {
        bit_flips,
        phase_flips,
        slip,
    }
}

/// Thins flip vectors into the guaranteed-correctable regime, dropping
/// the highest-indexed offender first (deterministic).
pub fn clamp_to_radii(code: &QsyncCode, bit_flips: &mut BitVec, phase_flips: &mut BitVec) {
    while phase_flips.weight() > code.phase_radius() {
        let last = phase_flips.iter_ones().last().expect("positive weight");
        phase_flips.set(last, false);
    }
    let n = code.n();
    loop {
        let heavy = (0..=code.a_l() + code.a_r())
            .find(|&o| bit_flips.slice(o, n).weight() > code.bit_radius());
        let Some(o) = heavy else { break };
        let last = bit_flips
            .slice(o, n)
            .iter_ones()
            .last()
            .expect("window over radius");
        bit_flips.set(o + last, false);
    }
}

/// Weight of a flip vector in each length-n window, offsets `0..=a_l+a_r`.
pub fn window_weights(code: &QsyncCode, flips: &BitVec) -> Vec<usize> {
    (0..=code.a_l() + code.a_r())
        .map(|o| flips.slice(o, code.n()).weight())
        .collect()
}

/// Which superposition branches a sweep runs.
#[derive(Clone, Debug)]
pub enum BranchSelection {
    /// Every dual codeword.
    All,
    /// `count` seeded samples.
    Sampled { count: usize, seed: u64 },
}

/// Bounds for an exhaustive sweep.
#[derive(Clone, Debug)]
pub struct SweepConfig {
    pub max_bit_weight: usize,
    pub max_phase_weight: usize,
    pub branches: BranchSelection,
}

/// A failing case, recorded with everything needed to replay it.
#[derive(Clone, Debug)]
pub struct SweepCase {
    pub logical_index: usize,
    pub slip: i64,
    pub bit_positions: Vec<usize>,
    pub phase_positions: Vec<usize>,
    pub branch: BitVec,
    pub status: DecodeStatus,
}

/// Tally of an exhaustive sweep.
#[derive(Clone, Debug)]
pub struct SweepSummary {
    pub total: u64,
    pub counts: BTreeMap<DecodeStatus, u64>,
    pub violation_count: u64,
    /// The first few violations, at most [`VIOLATION_CAP`].
    pub violations: Vec<SweepCase>,
}

impl SweepSummary {
    pub fn all_success(&self) -> bool {
        self.violation_count == 0
    }
}

fn weighted_patterns(len: usize, max_weight: usize) -> Vec<Vec<usize>> {
    (0..=max_weight.min(len))
        .flat_map(|w| (0..len).combinations(w))
        .collect()
}

fn count_weighted(len: usize, max_weight: usize) -> u128 {
    let mut total: u128 = 0;
    let mut binom: u128 = 1;
    for w in 0..=max_weight.min(len) {
        if w > 0 {
            binom = binom * (len as u128 - w as u128 + 1) / w as u128;
        }
        total += binom;
    }
    total
}

/// Runs the pipeline over every tuple of (logical index, tolerated slip,
/// bit flips up to a weight, phase flips up to a weight, branch) and
/// tallies the statuses. Anything other than plain success is a recorded
/// violation.
pub fn exhaustive_sweep(code: &QsyncCode, config: &SweepConfig) -> Result<SweepSummary, Error> {
    let n_ext = code.n_ext();
    let branches: Vec<BitVec> = match &config.branches {
        BranchSelection::All => code.phase_dual().codewords()?,
        BranchSelection::Sampled { count, seed } => {
            let mut rng = ChaCha12Rng::seed_from_u64(*seed);
            (0..*count).map(|_| sample_branch(code, &mut rng)).collect()
        }
    };
    let slips = code.a_l() as u128 + code.a_r() as u128 + 1;
    let estimate = (1u128 << code.k_logical())
        * slips
        * count_weighted(n_ext, config.max_bit_weight)
        * count_weighted(n_ext, config.max_phase_weight)
        * branches.len() as u128;
    if estimate > SWEEP_BUDGET {
        return Err(Error::SweepBudget {
            estimate,
            budget: SWEEP_BUDGET,
        });
    }

    let bit_patterns = weighted_patterns(n_ext, config.max_bit_weight);
    let phase_patterns = weighted_patterns(n_ext, config.max_phase_weight);
    let mut summary = SweepSummary {
        total: 0,
        counts: BTreeMap::new(),
        violation_count: 0,
        violations: Vec::new(),
    };
    for logical_index in 0..code.logical().count() {
        for slip in -(code.a_l() as i64)..=code.a_r() as i64 {
            for bits in &bit_patterns {
                for phases in &phase_patterns {
                    let eff = ChannelEffect {
                        bit_flips: BitVec::from_indices(n_ext, bits),
                        phase_flips: BitVec::from_indices(n_ext, phases),
                        slip,
                    };
                    for branch in &branches {
                        let report =
                            run_pipeline_with_branch(code, logical_index, &eff, branch)?;
                        summary.total += 1;
                        *summary.counts.entry(report.status).or_insert(0) += 1;
                        if !report.status.is_success() {
                            summary.violation_count += 1;
                            if summary.violations.len() < VIOLATION_CAP {
                                summary.violations.push(SweepCase {
                                    logical_index,
                                    slip,
                                    bit_positions: bits.clone(),
                                    phase_positions: phases.clone(),
                                    branch: branch.clone(),
                                    status: report.status,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    Ok(summary)
}
