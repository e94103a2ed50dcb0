//! Dense state-vector ground truth for small blocks.
//!
//! Everything the symbolic simulator claims is re-checkable here by brute
//! force: encoded coset states, Pauli errors, the edge-copy CNOT circuit,
//! and the corrections a decode report prescribes, all as explicit
//! amplitude vectors. The price is exponential memory, so the register is
//! capped at [`MAX_QUBITS`]; the point is certifying the n = 7 and n = 15
//! codes, not competing with the symbolic path.
//!
//! Basis convention: qubit `j` is bit `j` of the amplitude index, and
//! within a register it carries the coefficient of `x^j`.

use num_complex::Complex64;

use crate::bits::BitVec;
use crate::code::CyclicCode;
use crate::frame::{self, ChannelEffect};
use crate::sync::QsyncCode;
use crate::Error;

/// Dense vectors beyond this register size are refused.
pub const MAX_QUBITS: usize = 20;

#[derive(Clone, Debug)]
pub struct StateVector {
    num_qubits: usize,
    amps: Vec<Complex64>,
}

fn check_budget(num_qubits: usize) -> Result<(), Error> {
    if num_qubits > MAX_QUBITS {
        return Err(Error::QubitBudget {
            qubits: num_qubits,
            max: MAX_QUBITS,
        });
    }
    Ok(())
}

impl StateVector {
    /// The all-zeros basis state.
    pub fn zero_state(num_qubits: usize) -> Result<Self, Error> {
        check_budget(num_qubits)?;
        let mut amps = vec![Complex64::ZERO; 1usize << num_qubits];
        amps[0] = Complex64::ONE;
        Ok(StateVector { num_qubits, amps })
    }

    /// A computational basis state from its bit pattern.
    pub fn basis(bits: &BitVec) -> Result<Self, Error> {
        check_budget(bits.len())?;
        let mut amps = vec![Complex64::ZERO; 1usize << bits.len()];
        amps[bits.as_word() as usize] = Complex64::ONE;
        Ok(StateVector {
            num_qubits: bits.len(),
            amps,
        })
    }

    pub fn num_qubits(&self) -> usize {
        self.num_qubits
    }

    pub fn amps(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    /// `<self|other>`.
    pub fn inner(&self, other: &StateVector) -> Complex64 {
        assert_eq!(self.num_qubits, other.num_qubits, "register size mismatch");
        self.amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum()
    }

    /// `|<self|other>|`, insensitive to global phase.
    pub fn fidelity(&self, other: &StateVector) -> f64 {
        self.inner(other).norm()
    }

    /// Applies `X^{e_b} Z^{e_p}`: each basis state picks up the sign
    /// `(-1)^(basis . e_p)` and moves to `basis XOR e_b`.
    pub fn apply_pauli(&self, e_b: &BitVec, e_p: &BitVec) -> StateVector {
        assert_eq!(e_b.len(), self.num_qubits, "flip vector length");
        assert_eq!(e_p.len(), self.num_qubits, "flip vector length");
        let bmask = e_b.as_word() as usize;
        let pmask = e_p.as_word() as usize;
        let mut amps = vec![Complex64::ZERO; self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let sign = if (i & pmask).count_ones() % 2 == 1 {
                -Complex64::ONE
            } else {
                Complex64::ONE
            };
            amps[i ^ bmask] = sign * a;
        }
        StateVector {
            num_qubits: self.num_qubits,
            amps,
        }
    }

    /// Controlled-NOT: flips `target` on every basis state whose
    /// `control` bit is set.
    pub fn cnot(&self, control: usize, target: usize) -> StateVector {
        assert!(control < self.num_qubits && target < self.num_qubits);
        assert_ne!(control, target, "control and target must differ");
        let cmask = 1usize << control;
        let tmask = 1usize << target;
        let mut amps = vec![Complex64::ZERO; self.amps.len()];
        for (i, a) in self.amps.iter().enumerate() {
            let j = if i & cmask != 0 { i ^ tmask } else { i };
            amps[j] = *a;
        }
        StateVector {
            num_qubits: self.num_qubits,
            amps,
        }
    }
}

/// Uniform superposition over the coset `dual(C) + rep + offset`, each
/// amplitude `1/sqrt(|dual(C)|)`.
pub fn coset_state(
    phase_code: &CyclicCode,
    rep: &BitVec,
    offset: &BitVec,
) -> Result<StateVector, Error> {
    let n = phase_code.n();
    check_budget(n)?;
    assert_eq!(rep.len(), n, "representative length");
    assert_eq!(offset.len(), n, "offset length");
    let words = phase_code.dual().codewords()?;
    let amp = Complex64::new(1.0 / (words.len() as f64).sqrt(), 0.0);
    let mut amps = vec![Complex64::ZERO; 1usize << n];
    for s in &words {
        let mut v = s.clone();
        v.xor_assign(rep);
        v.xor_assign(offset);
        amps[v.as_word() as usize] = amp;
    }
    Ok(StateVector {
        num_qubits: n,
        amps,
    })
}

/// Places an n-qubit core into an `n + a_l + a_r` register at positions
/// `[a_l, a_l+n)`, ancillas in `|0>`.
pub fn embed_core(state: &StateVector, a_l: usize, a_r: usize) -> Result<StateVector, Error> {
    let n = state.num_qubits;
    let n_ext = n + a_l + a_r;
    check_budget(n_ext)?;
    let mut amps = vec![Complex64::ZERO; 1usize << n_ext];
    for (i, a) in state.amps.iter().enumerate() {
        amps[i << a_l] = *a;
    }
    Ok(StateVector {
        num_qubits: n_ext,
        amps,
    })
}

/// The edge-copy circuit: embeds the core and CNOT-copies the last `a_l`
/// core qubits onto the left ancillas and the first `a_r` onto the right,
/// so `|v>` becomes `|last a_l of v, v, first a_r of v>`.
pub fn extend_state(state: &StateVector, a_l: usize, a_r: usize) -> Result<StateVector, Error> {
    let n = state.num_qubits;
    let mut out = embed_core(state, a_l, a_r)?;
    for j in 0..a_l {
        out = out.cnot(n + j, j);
    }
    for j in 0..a_r {
        out = out.cnot(a_l + j, a_l + n + j);
    }
    Ok(out)
}

/// The same CNOTs applied to the block a device believes starts at true
/// offset `delta`; self-inverse, so on the believed block this undoes the
/// extension. Pairs reaching outside the register are skipped (those
/// qubits are not modeled).
pub fn unextend_cnots(
    state: &StateVector,
    n: usize,
    a_l: usize,
    a_r: usize,
    delta: i64,
) -> StateVector {
    let n_ext = state.num_qubits;
    let mut out = state.clone();
    let pair = |s: &StateVector, control: i64, target: i64| -> StateVector {
        let in_range =
            |idx: i64| -> bool { idx >= 0 && (idx as usize) < n_ext };
        if in_range(control) && in_range(target) {
            s.cnot(control as usize, target as usize)
        } else {
            s.clone()
        }
    };
    for j in 0..a_l {
        out = pair(&out, delta + (n + j) as i64, delta + j as i64);
    }
    for j in 0..a_r {
        out = pair(&out, delta + (a_l + j) as i64, delta + (a_l + n + j) as i64);
    }
    out
}

/// Fidelity of the corrected state against the ideal, with the corrections
/// given explicitly (true-coordinate X vector, believed-core Z vector, and
/// the believed slip).
///
/// `slip_estimate = None` models a device that never recovered a frame
/// belief: no unextension, no phase correction, no untranslation.
pub fn oracle_fidelity(
    code: &QsyncCode,
    logical_index: usize,
    eff: &ChannelEffect,
    x_correction: &BitVec,
    z_correction: &BitVec,
    slip_estimate: Option<i64>,
) -> Result<f64, Error> {
    let n = code.n();
    let n_ext = code.n_ext();
    check_budget(n_ext)?;
    let (a_l, a_r) = (code.a_l(), code.a_r());
    let rep = code.logical().representative(logical_index)?;
    let g = code.bit_code().generator().to_bits(n);

    let encoded = extend_state(&coset_state(code.phase_code(), &rep, &g)?, a_l, a_r)?;
    let noisy = encoded.apply_pauli(&eff.bit_flips, &eff.phase_flips);
    let corrected = noisy.apply_pauli(x_correction, &BitVec::zeros(n_ext));

    let finished = match slip_estimate {
        Some(est) => {
            let delta = eff.slip - est;
            let placed = |core_vec: &BitVec| -> BitVec {
                let mut v = BitVec::zeros(n_ext);
                for j in core_vec.iter_ones() {
                    let idx = delta + (a_l + j) as i64;
                    if idx >= 0 && (idx as usize) < n_ext {
                        v.flip(idx as usize);
                    }
                }
                v
            };
            let unextended = unextend_cnots(&corrected, n, a_l, a_r, delta);
            let rephased = unextended.apply_pauli(&BitVec::zeros(n_ext), &placed(z_correction));
            rephased.apply_pauli(&placed(&g), &BitVec::zeros(n_ext))
        }
        None => corrected,
    };

    let ideal = embed_core(
        &coset_state(code.phase_code(), &rep, &BitVec::zeros(n))?,
        a_l,
        a_r,
    )?;
    Ok(ideal.fidelity(&finished))
}

/// Runs the symbolic pipeline for `(logical_index, eff)`, applies exactly
/// the corrections its report prescribes to the true quantum state, and
/// returns the fidelity against the ideal decoded state.
///
/// Corrections are branch-independent, so the report is computed on the
/// zero branch while the state here carries the full superposition.
/// Fidelity 1 certifies a success verdict. The converse holds for X-type
/// residuals; a residual logical Z fixes every logical basis state up to
/// global phase, so such failures are visible only on superposed inputs
/// and are judged by the symbolic report, not by this oracle.
pub fn oracle_pipeline(
    code: &QsyncCode,
    logical_index: usize,
    eff: &ChannelEffect,
) -> Result<f64, Error> {
    let report =
        frame::run_pipeline_with_branch(code, logical_index, eff, &BitVec::zeros(code.n()))?;
    oracle_fidelity(
        code,
        logical_index,
        eff,
        &report.total_bit_correction(),
        &report.phase_correction,
        report.slip_estimate,
    )
}
