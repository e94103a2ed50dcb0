//! Construction of quantum synchronizable codes from nested cyclic pairs.
//!
//! Take cyclic codes `C = [n, k1]` and `D = [n, k2]` with `C` containing
//! its dual, `C` strictly inside `D`, and slip tolerances
//! `a_l + a_r < k2 - k1`. Writing `g` for the generator of `D`, the
//! generator of `C` factors exactly as `f * g`, and `deg f = k2 - k1`.
//! The quotient `f` carries the synchronization structure: the encoded
//! block is built from polynomials of the form `(j f + 1) g`, so dividing
//! a (bit-error-free) block by `g` and reducing the quotient modulo `f`
//! leaves a power of `x` that pins down the block boundary. Distinct
//! powers `x^a mod f` stay distinct while the exponent range is narrower
//! than `deg f`, and the shift orbit of `g` has full length `n` because
//! `k2 > n/2`, so slips up to `a_l` left and `a_r` right are identified
//! uniquely.

use std::collections::HashMap;

use crate::bits::BitVec;
use crate::code::{row_reduce, CyclicCode, SyndromeDecoder};
use crate::gf2::poly::{x_pow_mod, BitPoly};
use crate::gf2::ring::RingElement;
use crate::Error;

/// Cap on materializing the full list of logical representatives.
pub const REPRESENTATIVE_BUDGET: usize = 24;

/// Length of the cyclic shift orbit `{x^i * g mod x^n - 1}` of a divisor
/// `g` of `x^n - 1`.
pub fn orbit_length(g: &BitPoly, n: usize) -> Result<usize, Error> {
    if !g.divides(&BitPoly::xn_minus_one(n)) {
        return Err(Error::NotARingDivisor {
            poly: g.to_pretty(),
            n,
        });
    }
    let start = RingElement::new(n, g.clone());
    let mut cur = start.shift(1);
    let mut len = 1;
    while cur != start {
        cur = cur.shift(1);
        len += 1;
    }
    Ok(len)
}

/// Basis of a fixed complement of `dual(C)` inside `C`, indexing the
/// logical computational-basis states.
///
/// Representative `i` is the XOR of the basis rows selected by the binary
/// digits of `i`; representative 0 is the zero vector. The basis comes from
/// row-reducing the generator matrix of `C` against one of `dual(C)`, so it
/// is deterministic for a given code.
#[derive(Clone, Debug)]
pub struct LogicalBasis {
    n: usize,
    basis: Vec<BitVec>,
}

impl LogicalBasis {
    fn new(phase_code: &CyclicCode) -> Self {
        let n = phase_code.n();
        let dual = phase_code.dual();
        let mut reduced = dual.generator_matrix();
        row_reduce(&mut reduced);
        let mut complement: Vec<BitVec> = Vec::new();
        for row in phase_code.generator_matrix() {
            let mut v = row;
            for basis_row in reduced.iter().chain(complement.iter()) {
                let pivot = basis_row.iter_ones().next().expect("no zero basis rows");
                if v.get(pivot) {
                    v.xor_assign(basis_row);
                }
            }
            if v.is_zero() {
                continue;
            }
            let pivot = v.iter_ones().next().expect("nonzero");
            for prev in complement.iter_mut() {
                if prev.get(pivot) {
                    prev.xor_assign(&v);
                }
            }
            complement.push(v);
        }
        LogicalBasis {
            n,
            basis: complement,
        }
    }

    /// Number of logical qubits.
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn basis(&self) -> &[BitVec] {
        &self.basis
    }

    /// Number of logical basis states, `2^dim`.
    pub fn count(&self) -> usize {
        1usize << self.basis.len()
    }

    /// Coset representative for a logical index in binary counting order.
    pub fn representative(&self, index: usize) -> Result<BitVec, Error> {
        if index >= self.count() {
            return Err(Error::LogicalIndex {
                index,
                count: self.count(),
            });
        }
        let mut v = BitVec::zeros(self.n);
        for (j, row) in self.basis.iter().enumerate() {
            if (index >> j) & 1 == 1 {
                v.xor_assign(row);
            }
        }
        Ok(v)
    }

    /// The full representative list, for small logical dimensions.
    pub fn representatives(&self) -> Result<Vec<BitVec>, Error> {
        if self.dim() > REPRESENTATIVE_BUDGET {
            return Err(Error::EnumerationBudget {
                k: self.dim(),
                budget: REPRESENTATIVE_BUDGET,
            });
        }
        (0..self.count()).map(|i| self.representative(i)).collect()
    }
}

/// A quantum synchronizable code on `n + a_l + a_r` qubits.
///
/// Debug prints the headline parameters only; the decoder tables inside
/// are large and uninformative.
pub struct QsyncCode {
    phase_code: CyclicCode,
    bit_code: CyclicCode,
    phase_dual: CyclicCode,
    a_l: usize,
    a_r: usize,
    sync_modulus: BitPoly,
    sync_table: Vec<(i64, BitPoly)>,
    table_inverse: HashMap<BitPoly, i64>,
    recovery_inverse: HashMap<BitPoly, i64>,
    logical: LogicalBasis,
    phase_decoder: SyndromeDecoder,
    bit_decoder: SyndromeDecoder,
}

impl std::fmt::Debug for QsyncCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "QsyncCode {{ ({},{})-[[{},{}]], n: {}, f: {} }}",
            self.a_l,
            self.a_r,
            self.n_ext(),
            self.k_logical(),
            self.n(),
            self.sync_modulus.to_pretty()
        )
    }
}

impl QsyncCode {
    /// Validates the construction preconditions and assembles the code.
    ///
    /// Both input codes must carry a minimum distance (designed or
    /// computed): the bounded-distance decoding radii are derived from
    /// them. Each violated precondition is rejected with its own clause.
    pub fn build(
        phase_code: CyclicCode,
        bit_code: CyclicCode,
        a_l: usize,
        a_r: usize,
    ) -> Result<Self, Error> {
        let n = phase_code.n();
        if bit_code.n() != n {
            return Err(Error::LengthMismatch {
                left: n,
                right: bit_code.n(),
            });
        }
        if !phase_code.is_dual_containing() {
            return Err(Error::Construction {
                clause: "a dual-containing phase code".into(),
            });
        }
        if !(bit_code.contains(&phase_code)? && bit_code.k() > phase_code.k()) {
            return Err(Error::Construction {
                clause: "a bit code strictly containing the phase code".into(),
            });
        }
        let (k1, k2) = (phase_code.k(), bit_code.k());
        if a_l + a_r >= k2 - k1 {
            return Err(Error::Construction {
                clause: format!(
                    "slip tolerances with a_l + a_r < k2 - k1 (got {} + {} >= {})",
                    a_l,
                    a_r,
                    k2 - k1
                ),
            });
        }
        if 2 * k1 < n + 1 {
            return Err(Error::Construction {
                clause: format!(
                    "at least one logical qubit (2*k1 - n = {})",
                    2 * k1 as i64 - n as i64
                ),
            });
        }
        let phase_d = phase_code
            .distance()
            .ok_or(Error::DistanceUnknown { role: "phase" })?;
        let bit_d = bit_code
            .distance()
            .ok_or(Error::DistanceUnknown { role: "bit" })?;

        let (sync_modulus, rem) = phase_code.generator().divmod(bit_code.generator())?;
        assert!(rem.is_zero(), "containment guarantees exact division");
        assert_eq!(
            sync_modulus.degree(),
            Some(k2 - k1),
            "quotient degree must be k2 - k1"
        );

        // k2 > n/2 forces the shift orbit of g to have full length n;
        // tracked as an assertion rather than trusted.
        let orbit = orbit_length(bit_code.generator(), n)?;
        assert_eq!(orbit, n, "shift orbit of the bit-code generator must be n");

        let mut sync_table = Vec::new();
        let mut table_inverse = HashMap::new();
        let mut recovery_inverse = HashMap::new();
        for a in -(a_l as i64)..=(a_r as i64) {
            let fwd = x_pow_mod(a, &sync_modulus, n)?;
            let mirrored = x_pow_mod(-a, &sync_modulus, n)?;
            table_inverse.insert(fwd.clone(), a);
            recovery_inverse.insert(mirrored, a);
            sync_table.push((a, fwd));
        }
        assert_eq!(
            table_inverse.len(),
            sync_table.len(),
            "slip signatures must be pairwise distinct"
        );
        assert_eq!(
            recovery_inverse.len(),
            sync_table.len(),
            "mirrored slip signatures must be pairwise distinct"
        );

        let logical = LogicalBasis::new(&phase_code);
        assert_eq!(logical.dim(), 2 * k1 - n, "complement dimension");

        let phase_decoder = SyndromeDecoder::new(&phase_code, (phase_d.value - 1) / 2)?;
        let bit_decoder = SyndromeDecoder::new(&bit_code, (bit_d.value - 1) / 2)?;
        let phase_dual = phase_code.dual();

        Ok(QsyncCode {
            phase_code,
            bit_code,
            phase_dual,
            a_l,
            a_r,
            sync_modulus,
            sync_table,
            table_inverse,
            recovery_inverse,
            logical,
            phase_decoder,
            bit_decoder,
        })
    }

    pub fn n(&self) -> usize {
        self.phase_code.n()
    }

    /// Physical block length `n + a_l + a_r`.
    pub fn n_ext(&self) -> usize {
        self.n() + self.a_l + self.a_r
    }

    pub fn a_l(&self) -> usize {
        self.a_l
    }

    pub fn a_r(&self) -> usize {
        self.a_r
    }

    /// Number of logical qubits, `2*k1 - n`.
    pub fn k_logical(&self) -> usize {
        self.logical.dim()
    }

    /// The dual-containing code correcting phase flips (`C`).
    pub fn phase_code(&self) -> &CyclicCode {
        &self.phase_code
    }

    /// The larger code correcting bit flips and carrying sync structure (`D`).
    pub fn bit_code(&self) -> &CyclicCode {
        &self.bit_code
    }

    /// `dual(C)`, whose cosets inside `C` are the logical basis states.
    pub fn phase_dual(&self) -> &CyclicCode {
        &self.phase_dual
    }

    /// The quotient `f = g_C / g_D` whose residues identify slips.
    pub fn sync_modulus(&self) -> &BitPoly {
        &self.sync_modulus
    }

    /// Slip signature table `a -> x^a mod f` for `a in [-a_l, a_r]`,
    /// ascending in `a`.
    pub fn sync_table(&self) -> &[(i64, BitPoly)] {
        &self.sync_table
    }

    pub fn logical(&self) -> &LogicalBasis {
        &self.logical
    }

    pub fn phase_decoder(&self) -> &SyndromeDecoder {
        &self.phase_decoder
    }

    pub fn bit_decoder(&self) -> &SyndromeDecoder {
        &self.bit_decoder
    }

    /// Guaranteed phase-flip correction radius, `floor((d1-1)/2)`.
    pub fn phase_radius(&self) -> usize {
        self.phase_decoder.radius()
    }

    /// Guaranteed bit-flip correction radius per window, `floor((d2-1)/2)`.
    pub fn bit_radius(&self) -> usize {
        self.bit_decoder.radius()
    }

    /// Two-step division: the window must be a bit-error-free codeword of
    /// the bit code; divides by `g`, reduces the quotient mod `f`, and
    /// returns the remainder. `None` when the division is inexact (residual
    /// bit errors).
    pub fn sync_remainder(&self, window: &RingElement) -> Option<BitPoly> {
        if window.n() != self.n() {
            return None;
        }
        let (quotient, rem) = window
            .poly()
            .divmod(self.bit_code.generator())
            .expect("nonzero generator");
        if !rem.is_zero() {
            return None;
        }
        Some(
            quotient
                .rem(&self.sync_modulus)
                .expect("nonzero sync modulus"),
        )
    }

    /// Inverts the slip signature table: a window equal to `x^a` times an
    /// encoded core polynomial yields `a`, for `a in [-a_l, a_r]`. `None`
    /// signals residual bit errors or an out-of-range shift.
    pub fn sync_syndrome(&self, window: &RingElement) -> Option<i64> {
        let r = self.sync_remainder(window)?;
        self.table_inverse.get(&r).copied()
    }

    /// Recovers the slip of the device window read at extended-block offset
    /// `a_l + slip`.
    ///
    /// Reading `slip` positions late advances the window content cyclically
    /// by `slip`, so the window polynomial is `x^{-slip}` times the core and
    /// two-step division leaves `x^{-slip} mod f`. This inverts that
    /// mirrored map, which is injective over `[-a_l, a_r]` for the same
    /// reason the forward table is: the exponent range is narrower than
    /// `deg f`.
    pub fn recover_slip(&self, window: &RingElement) -> Option<i64> {
        let r = self.sync_remainder(window)?;
        self.recovery_inverse.get(&r).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::code::{Distance, DistanceTag};

    fn hamming7() -> CyclicCode {
        let c = CyclicCode::from_generator(7, BitPoly::from_terms(&[3, 1, 0])).unwrap();
        let d = c.min_distance_bruteforce().unwrap();
        c.with_distance(Distance {
            value: d,
            tag: DistanceTag::Computed,
        })
    }

    fn full7() -> CyclicCode {
        let c = CyclicCode::from_generator(7, BitPoly::one()).unwrap();
        c.with_distance(Distance {
            value: 1,
            tag: DistanceTag::Computed,
        })
    }

    fn nine_one() -> QsyncCode {
        QsyncCode::build(hamming7(), full7(), 1, 1).unwrap()
    }

    #[test]
    fn nine_one_code_parameters() {
        let q = nine_one();
        assert_eq!(q.n(), 7);
        assert_eq!(q.n_ext(), 9);
        assert_eq!(q.k_logical(), 1);
        assert_eq!(q.sync_modulus(), &BitPoly::from_terms(&[3, 1, 0]));
        assert_eq!(q.phase_radius(), 1);
        assert_eq!(q.bit_radius(), 0);
    }

    #[test]
    fn nine_one_sync_table_values() {
        let q = nine_one();
        let expect = [
            (-1i64, BitPoly::from_terms(&[2, 0])), // x^2+1
            (0, BitPoly::one()),
            (1, BitPoly::from_terms(&[1])), // x
        ];
        assert_eq!(q.sync_table(), &expect);
    }

    #[test]
    fn orbit_lengths() {
        assert_eq!(orbit_length(&BitPoly::one(), 7).unwrap(), 7);
        assert_eq!(
            orbit_length(&BitPoly::from_terms(&[3, 1, 0]), 7).unwrap(),
            7
        );
        // x^n - 1 reduces to 0, whose orbit is a fixed point.
        assert_eq!(orbit_length(&BitPoly::xn_minus_one(7), 7).unwrap(), 1);
        assert!(orbit_length(&BitPoly::from_terms(&[2, 0]), 7).is_err());
    }

    #[test]
    fn rejects_undersized_tolerances_gap() {
        // k2 - k1 = 3, so a_l + a_r = 3 must be rejected.
        let err = QsyncCode::build(hamming7(), full7(), 1, 2).unwrap_err();
        match err {
            Error::Construction { clause } => assert!(clause.contains("a_l + a_r")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_non_dual_containing_phase_code() {
        let simplex = hamming7().dual().with_distance(Distance {
            value: 4,
            tag: DistanceTag::Computed,
        });
        let err = QsyncCode::build(simplex, full7(), 0, 0).unwrap_err();
        match err {
            Error::Construction { clause } => assert!(clause.contains("dual-containing")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_non_strict_containment() {
        let err = QsyncCode::build(hamming7(), hamming7(), 0, 0).unwrap_err();
        match err {
            Error::Construction { clause } => assert!(clause.contains("strictly containing")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn rejects_zero_logical_dimension() {
        // n = 4: C = [4,2] with g = x^2+1 is self-dual, D = [4,4].
        let c = CyclicCode::from_generator(4, BitPoly::from_terms(&[2, 0])).unwrap();
        let d = CyclicCode::from_generator(4, BitPoly::one()).unwrap();
        let err = QsyncCode::build(c, d, 0, 1).unwrap_err();
        match err {
            Error::Construction { clause } => assert!(clause.contains("logical qubit")),
            other => panic!("unexpected error {other:?}"),
        }
    }

    #[test]
    fn logical_basis_of_nine_one() {
        let q = nine_one();
        let reps = q.logical().representatives().unwrap();
        assert_eq!(reps.len(), 2);
        assert!(reps[0].is_zero());
        let r = &reps[1];
        // The nonzero representative lies in C but not in dual(C).
        assert!(q.phase_code().contains_word(r));
        assert!(!q.phase_dual().contains_word(r));
    }

    #[test]
    fn sync_syndrome_identifies_polynomial_shifts() {
        let q = nine_one();
        // core = s + r + g with s in dual(C), r a representative, g = 1.
        let s = q.phase_dual().codeword(&BitPoly::from_terms(&[1, 0]));
        let r = q.logical().representative(1).unwrap();
        let mut core = s;
        core.xor_assign(&r);
        core.flip(0); // g = 1
        let base = RingElement::from_bits(&core);
        assert_eq!(q.sync_syndrome(&base), Some(0));
        assert_eq!(q.sync_syndrome(&base.shift(1)), Some(1));
        assert_eq!(q.sync_syndrome(&base.shift(-1)), Some(-1));
        // Out-of-range shifts are not in the table.
        assert_eq!(q.sync_syndrome(&base.shift(2)), None);
    }

    #[test]
    fn recover_slip_mirrors_device_reads() {
        let q = nine_one();
        let s = q.phase_dual().codeword(&BitPoly::from_terms(&[2]));
        let mut core = s;
        core.flip(0);
        let base = RingElement::from_bits(&core);
        for slip in -1i64..=1 {
            // A device late by `slip` sees the content advanced by `slip`.
            let seen = base.shift(-slip);
            assert_eq!(q.recover_slip(&seen), Some(slip), "slip {slip}");
        }
    }
}
