//! Classical binary cyclic codes.
//!
//! A length-`n` cyclic code is the set of polynomial multiples of a monic
//! generator `g | x^n - 1`, read as coefficient vectors. The check
//! polynomial `h = (x^n - 1) / g` gives the parity-check matrix and the
//! dual code (generated by the reciprocal of `h`). BCH codes arise from
//! prescribing roots `alpha^1 .. alpha^(d-1)` in GF(2^m).

use std::collections::{BTreeSet, HashMap};

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::bits::BitVec;
use crate::gf2::field::{doubling_orbit, minimal_polynomial, Gf2mField};
use crate::gf2::poly::BitPoly;
use crate::Error;

/// Dimension cap for full-codeword enumeration.
pub const ENUMERATION_BUDGET_K: usize = 24;
/// Candidate cap for the weight-ordered membership search.
pub const SEARCH_BUDGET: u64 = 200_000_000;
/// Entry cap for syndrome decoding tables.
pub const DECODER_BUDGET: u64 = 1 << 22;

/// How a recorded minimum distance was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DistanceTag {
    /// A design guarantee (lower bound that the decoder radius relies on).
    Designed,
    /// Exhaustively computed true minimum distance.
    Computed,
}

/// A minimum distance together with its provenance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Distance {
    pub value: usize,
    pub tag: DistanceTag,
}

/// Binary cyclic code `[n, k]` defined by its generator polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclicCode {
    n: usize,
    k: usize,
    generator: BitPoly,
    check: BitPoly,
    distance: Option<Distance>,
}

impl CyclicCode {
    /// Builds the code from a generator polynomial, which must divide
    /// `x^n - 1` exactly. The zero polynomial and non-divisors are rejected.
    pub fn from_generator(n: usize, generator: BitPoly) -> Result<Self, Error> {
        if n == 0 {
            return Err(Error::Parse("code length must be positive".into()));
        }
        if generator.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let ring = BitPoly::xn_minus_one(n);
        let (check, rem) = ring.divmod(&generator)?;
        if !rem.is_zero() {
            return Err(Error::NotARingDivisor {
                poly: generator.to_pretty(),
                n,
            });
        }
        let k = n - generator.degree().expect("nonzero generator");
        Ok(CyclicCode {
            n,
            k,
            generator,
            check,
            distance: None,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn generator(&self) -> &BitPoly {
        &self.generator
    }

    /// Check polynomial `h` with `g * h = x^n - 1`.
    pub fn check_poly(&self) -> &BitPoly {
        &self.check
    }

    pub fn distance(&self) -> Option<Distance> {
        self.distance
    }

    /// Attaches a known minimum distance (designed bound or computed value).
    pub fn with_distance(mut self, distance: Distance) -> Self {
        self.distance = Some(distance);
        self
    }

    /// Generator matrix rows `x^i * g` for `i = 0..k`.
    pub fn generator_matrix(&self) -> Vec<BitVec> {
        (0..self.k)
            .map(|i| self.generator.shl(i).to_bits(self.n))
            .collect()
    }

    /// Codeword of a message polynomial (degree `< k`).
    pub fn codeword(&self, message: &BitPoly) -> BitVec {
        if let Some(d) = message.degree() {
            assert!(d < self.k, "message degree {d} not below k={}", self.k);
        }
        message.mul(&self.generator).to_bits(self.n)
    }

    /// Membership test: a word is a codeword iff `g` divides it.
    pub fn contains_word(&self, word: &BitVec) -> bool {
        word.len() == self.n && self.generator.divides(&BitPoly::from_bits(word))
    }

    /// Whether this code contains `inner` as a subcode (`g_outer | g_inner`).
    pub fn contains(&self, inner: &CyclicCode) -> Result<bool, Error> {
        if self.n != inner.n {
            return Err(Error::LengthMismatch {
                left: self.n,
                right: inner.n,
            });
        }
        Ok(self.generator.divides(&inner.generator))
    }

    /// The dual code, generated by the reciprocal of the check polynomial.
    pub fn dual(&self) -> CyclicCode {
        let g_dual = self.check.reciprocal();
        CyclicCode::from_generator(self.n, g_dual)
            .expect("reciprocal of the check polynomial always divides x^n - 1")
    }

    /// Whether the code contains its dual. Codes with `2k < n` cannot.
    pub fn is_dual_containing(&self) -> bool {
        if 2 * self.k < self.n {
            return false;
        }
        self.contains(&self.dual()).expect("same length")
    }

    /// All codewords, for dimensions within the enumeration budget.
    pub fn codewords(&self) -> Result<Vec<BitVec>, Error> {
        if self.k > ENUMERATION_BUDGET_K {
            return Err(Error::EnumerationBudget {
                k: self.k,
                budget: ENUMERATION_BUDGET_K,
            });
        }
        let rows = self.generator_matrix();
        let mut out = Vec::with_capacity(1 << self.k);
        let mut cw = BitVec::zeros(self.n);
        out.push(cw.clone());
        for i in 1u64..(1 << self.k) {
            cw.xor_assign(&rows[i.trailing_zeros() as usize]);
            out.push(cw.clone());
        }
        Ok(out)
    }

    /// True minimum distance by Gray-code enumeration of all `2^k - 1`
    /// nonzero codewords. Dimensions above the budget are rejected; the
    /// zero code has no distance.
    pub fn min_distance_bruteforce(&self) -> Result<usize, Error> {
        if self.k == 0 {
            return Err(Error::ZeroCode);
        }
        if self.k > ENUMERATION_BUDGET_K {
            return Err(Error::EnumerationBudget {
                k: self.k,
                budget: ENUMERATION_BUDGET_K,
            });
        }
        let rows = self.generator_matrix();
        if self.n <= 64 {
            // Single-word fast path.
            let rows: Vec<u64> = rows.iter().map(|r| r.as_word()).collect();
            let mut cw = 0u64;
            let mut best = usize::MAX;
            for i in 1u64..(1u64 << self.k) {
                cw ^= rows[i.trailing_zeros() as usize];
                best = best.min(cw.count_ones() as usize);
            }
            Ok(best)
        } else {
            let mut cw = BitVec::zeros(self.n);
            let mut best = usize::MAX;
            for i in 1u64..(1u64 << self.k) {
                cw.xor_assign(&rows[i.trailing_zeros() as usize]);
                best = best.min(cw.weight());
            }
            Ok(best)
        }
    }

    /// True minimum distance by weight-ordered search: tests words of
    /// weight 1, 2, ... for membership via the parity-check matrix and
    /// returns the first weight that contains a codeword. An independent
    /// route from [`min_distance_bruteforce`](Self::min_distance_bruteforce)
    /// that stays cheap for high-rate codes with small distance.
    pub fn min_distance_by_weight(&self) -> Result<usize, Error> {
        if self.k == 0 {
            return Err(Error::ZeroCode);
        }
        let h = ParityCheckMatrix::from_code(self);
        let cols: Vec<BitVec> = (0..self.n)
            .map(|j| {
                let mut c = BitVec::zeros(h.rows().len());
                for (i, row) in h.rows().iter().enumerate() {
                    if row.get(j) {
                        c.set(i, true);
                    }
                }
                c
            })
            .collect();
        let mut checked = 0u64;
        for w in 1..=self.n {
            let acc = BitVec::zeros(h.rows().len());
            if Self::weight_w_hits_zero(&cols, 0, w, &acc, &mut checked)? {
                return Ok(w);
            }
        }
        unreachable!("a nonzero code has a codeword of weight <= n")
    }

    fn weight_w_hits_zero(
        cols: &[BitVec],
        start: usize,
        w: usize,
        acc: &BitVec,
        checked: &mut u64,
    ) -> Result<bool, Error> {
        if w == 0 {
            return Ok(acc.is_zero());
        }
        for j in start..=cols.len() - w {
            *checked += 1;
            if *checked > SEARCH_BUDGET {
                return Err(Error::SearchBudget {
                    checked: *checked,
                    budget: SEARCH_BUDGET,
                });
            }
            let next = acc.xor(&cols[j]);
            if Self::weight_w_hits_zero(cols, j + 1, w - 1, &next, checked)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Primitive narrow-sense BCH code of length `n = 2^m - 1` and odd designed
/// distance `d`: the generator is the least common multiple of the minimal
/// polynomials of `alpha^1 .. alpha^(d-1)`.
pub fn bch_code(m: usize, designed_distance: usize) -> Result<CyclicCode, Error> {
    if m < 3 {
        return Err(Error::FieldDegree { m });
    }
    let field = Gf2mField::new(m)?;
    let n = field.order() as usize;
    let d = designed_distance;
    if d % 2 == 0 || d < 3 || d > n {
        return Err(Error::BchDistance { d, n });
    }
    // Distinct cyclotomic cosets covering the prescribed roots; taking one
    // minimal polynomial per coset is exactly the lcm.
    let mut reps = BTreeSet::new();
    for e in 1..d {
        reps.insert(*doubling_orbit(e, n).iter().min().expect("nonempty"));
    }
    let mut g = BitPoly::one();
    for r in reps {
        g = g.mul(&minimal_polynomial(&field, r, n)?);
    }
    Ok(CyclicCode::from_generator(n, g)?.with_distance(Distance {
        value: d,
        tag: DistanceTag::Designed,
    }))
}

/// Full-rank parity-check matrix in reduced row-echelon form.
///
/// Rows start as the cyclic shifts of the reciprocal check polynomial
/// (the staircase form), then get row-reduced; the row space is the dual
/// code either way.
#[derive(Clone, Debug)]
pub struct ParityCheckMatrix {
    n: usize,
    rows: Vec<BitVec>,
}

impl ParityCheckMatrix {
    pub fn from_code(code: &CyclicCode) -> Self {
        let n = code.n();
        let r = n - code.k();
        let hrev = code.check_poly().reciprocal();
        let mut rows: Vec<BitVec> = (0..r).map(|i| hrev.shl(i).to_bits(n)).collect();
        let rank = row_reduce(&mut rows);
        assert_eq!(rank, r, "cyclic staircase form is always full rank");
        ParityCheckMatrix { n, rows }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[BitVec] {
        &self.rows
    }

    /// Syndrome `H * word` as a bit vector of length `n - k`.
    pub fn syndrome(&self, word: &BitVec) -> BitVec {
        assert_eq!(word.len(), self.n, "word length mismatch");
        let mut s = BitVec::zeros(self.rows.len());
        for (i, row) in self.rows.iter().enumerate() {
            if row.dot(word) {
                s.set(i, true);
            }
        }
        s
    }
}

/// In-place reduced row-echelon form over GF(2) with pivots at the lowest
/// set index, scanning columns in ascending order. Zero rows are removed;
/// returns the rank.
pub fn row_reduce(rows: &mut Vec<BitVec>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let n = rows[0].len();
    let mut rank = 0;
    for col in 0..n {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r].get(col)) else {
            continue;
        };
        rows.swap(rank, pivot);
        let pivot_row = rows[rank].clone();
        for (r, row) in rows.iter_mut().enumerate() {
            if r != rank && row.get(col) {
                row.xor_assign(&pivot_row);
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rows.retain(|r| !r.is_zero());
    rank
}

/// Bounded-distance decoder: a table from syndromes to the minimum-weight
/// error pattern (weight `<= radius`) producing them.
pub struct SyndromeDecoder {
    radius: usize,
    check: ParityCheckMatrix,
    table: HashMap<BitVec, BitVec>,
}

impl SyndromeDecoder {
    /// Builds the table by enumerating all error patterns of weight
    /// `0..=radius` in ascending weight, keeping the first (lightest)
    /// pattern per syndrome.
    pub fn new(code: &CyclicCode, radius: usize) -> Result<Self, Error> {
        let n = code.n();
        let mut entries: u128 = 1;
        let mut binom: u128 = 1;
        for w in 1..=radius.min(n) {
            binom = binom * (n as u128 - w as u128 + 1) / w as u128;
            entries = entries.saturating_add(binom);
        }
        if entries > DECODER_BUDGET as u128 {
            return Err(Error::DecoderBudget {
                entries: entries.min(u64::MAX as u128) as u64,
                budget: DECODER_BUDGET,
            });
        }
        let check = ParityCheckMatrix::from_code(code);
        let mut table = HashMap::with_capacity(entries as usize);
        table.insert(BitVec::zeros(check.rows().len()), BitVec::zeros(n));
        for w in 1..=radius {
            for combo in (0..n).combinations(w) {
                let e = BitVec::from_indices(n, &combo);
                let s = check.syndrome(&e);
                table.entry(s).or_insert(e);
            }
        }
        Ok(SyndromeDecoder {
            radius,
            check,
            table,
        })
    }

    pub fn radius(&self) -> usize {
        self.radius
    }

    pub fn check(&self) -> &ParityCheckMatrix {
        &self.check
    }

    /// Looks up the error pattern for a syndrome; `None` means the noise
    /// fell outside the decoding radius.
    pub fn decode(&self, syndrome: &BitVec) -> Option<&BitVec> {
        self.table.get(syndrome)
    }

    /// Syndrome-decodes a received word: returns the corrected word and the
    /// applied error pattern, or `None` beyond the radius.
    pub fn correct(&self, word: &BitVec) -> Option<(BitVec, BitVec)> {
        let s = self.check.syndrome(word);
        let e = self.decode(&s)?;
        Some((word.xor(e), e.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn hamming7() -> CyclicCode {
        CyclicCode::from_generator(7, BitPoly::from_terms(&[3, 1, 0])).unwrap()
    }

    #[test]
    fn from_generator_dimensions() {
        let c = hamming7();
        assert_eq!((c.n(), c.k()), (7, 4));
        assert_eq!(c.check_poly(), &BitPoly::from_terms(&[4, 2, 1, 0]));
        // Full space from g = 1.
        let full = CyclicCode::from_generator(7, BitPoly::one()).unwrap();
        assert_eq!(full.k(), 7);
        // Zero code from g = x^n - 1.
        let zero = CyclicCode::from_generator(7, BitPoly::xn_minus_one(7)).unwrap();
        assert_eq!(zero.k(), 0);
    }

    #[test]
    fn non_divisor_generator_rejected() {
        // x^2 + 1 does not divide x^7 - 1.
        assert!(matches!(
            CyclicCode::from_generator(7, BitPoly::from_terms(&[2, 0])),
            Err(Error::NotARingDivisor { .. })
        ));
        assert!(CyclicCode::from_generator(7, BitPoly::zero()).is_err());
    }

    #[test]
    fn cyclic_shift_closure() {
        let c = hamming7();
        for cw in c.codewords().unwrap() {
            let shifted = crate::gf2::RingElement::from_bits(&cw).shift(1).to_bits();
            assert!(c.contains_word(&shifted));
        }
    }

    #[test]
    fn dual_of_hamming_is_simplex() {
        let c = hamming7();
        let d = c.dual();
        assert_eq!((d.n(), d.k()), (7, 3));
        assert_eq!(d.generator(), &BitPoly::from_terms(&[4, 3, 2, 0]));
        // Dual of dual is the original.
        assert_eq!(d.dual().generator(), c.generator());
        // Every dual codeword is orthogonal to every codeword.
        for a in c.codewords().unwrap() {
            for b in d.codewords().unwrap() {
                assert!(!a.dot(&b));
            }
        }
    }

    #[test]
    fn hamming_is_dual_containing_simplex_is_not() {
        assert!(hamming7().is_dual_containing());
        assert!(!hamming7().dual().is_dual_containing());
        let full = CyclicCode::from_generator(7, BitPoly::one()).unwrap();
        assert!(full.is_dual_containing());
    }

    #[test]
    fn containment_matches_generator_divisibility() {
        let full = CyclicCode::from_generator(7, BitPoly::one()).unwrap();
        let c = hamming7();
        assert!(full.contains(&c).unwrap());
        assert!(!c.contains(&full).unwrap());
        assert!(c.contains(&c).unwrap());
        let other = CyclicCode::from_generator(15, BitPoly::one()).unwrap();
        assert!(matches!(
            c.contains(&other),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn parity_check_annihilates_exactly_the_code() {
        let c = hamming7();
        let h = ParityCheckMatrix::from_code(&c);
        assert_eq!(h.rows().len(), 3);
        for cw in c.codewords().unwrap() {
            assert!(h.syndrome(&cw).is_zero());
        }
        // Count the words with zero syndrome: must be exactly 2^k.
        let mut zero_syndromes = 0;
        for w in 0..(1u64 << 7) {
            if h.syndrome(&BitVec::from_word(7, w)).is_zero() {
                zero_syndromes += 1;
            }
        }
        assert_eq!(zero_syndromes, 1 << 4);
    }

    #[test]
    fn hamming_distance_is_three_both_routes() {
        let c = hamming7();
        assert_eq!(c.min_distance_bruteforce().unwrap(), 3);
        assert_eq!(c.min_distance_by_weight().unwrap(), 3);
        let full = CyclicCode::from_generator(7, BitPoly::one()).unwrap();
        assert_eq!(full.min_distance_bruteforce().unwrap(), 1);
        assert_eq!(full.min_distance_by_weight().unwrap(), 1);
        let zero = CyclicCode::from_generator(7, BitPoly::xn_minus_one(7)).unwrap();
        assert!(matches!(
            zero.min_distance_bruteforce(),
            Err(Error::ZeroCode)
        ));
    }

    #[test]
    fn bch_parameters_m4() {
        // [15,11] d=3, [15,7] d=5, [15,5] d=7.
        for (d, k) in [(3, 11), (5, 7), (7, 5)] {
            let c = bch_code(4, d).unwrap();
            assert_eq!((c.n(), c.k()), (15, k), "BCH(15, d={d})");
            assert_eq!(c.distance().unwrap().value, d);
            assert_eq!(c.distance().unwrap().tag, DistanceTag::Designed);
        }
    }

    #[test]
    fn bch_rejects_bad_designed_distance() {
        assert!(matches!(bch_code(4, 4), Err(Error::BchDistance { .. })));
        assert!(matches!(bch_code(4, 1), Err(Error::BchDistance { .. })));
        assert!(matches!(bch_code(4, 17), Err(Error::BchDistance { .. })));
        assert!(matches!(bch_code(2, 3), Err(Error::FieldDegree { .. })));
    }

    #[test]
    fn bch_codewords_vanish_on_prescribed_roots() {
        let c = bch_code(4, 5).unwrap();
        let f = Gf2mField::new(4).unwrap();
        for msg in [
            BitPoly::one(),
            BitPoly::from_terms(&[6, 2, 0]),
            BitPoly::from_terms(&[5, 3]),
        ] {
            let cw = BitPoly::from_bits(&c.codeword(&msg));
            for e in 1..5i64 {
                assert_eq!(f.eval_poly(&cw, e), 0, "root alpha^{e}");
            }
        }
    }

    #[test]
    fn decoder_roundtrip_within_radius() {
        let c = hamming7();
        let dec = SyndromeDecoder::new(&c, 1).unwrap();
        let cw = c.codeword(&BitPoly::from_terms(&[2, 0]));
        for j in 0..7 {
            let mut noisy = cw.clone();
            noisy.flip(j);
            let (fixed, e) = dec.correct(&noisy).unwrap();
            assert_eq!(fixed, cw);
            assert_eq!(e.iter_ones().collect::<Vec<_>>(), vec![j]);
        }
        // Weight-0: identity.
        let (fixed, e) = dec.correct(&cw).unwrap();
        assert_eq!(fixed, cw);
        assert!(e.is_zero());
    }

    #[test]
    fn decoder_beyond_radius_miscorrects_or_fails() {
        // Hamming is perfect: a weight-2 error lands on some weight-1 coset
        // leader, so decoding returns the wrong single-bit pattern.
        let c = hamming7();
        let dec = SyndromeDecoder::new(&c, 1).unwrap();
        let cw = c.codeword(&BitPoly::one());
        let mut noisy = cw.clone();
        noisy.flip(0);
        noisy.flip(3);
        let (fixed, e) = dec.correct(&noisy).unwrap();
        assert_eq!(e.weight(), 1);
        assert_ne!(fixed, cw);
        // A non-perfect code leaves some syndromes untabulated.
        let d15 = bch_code(4, 5).unwrap();
        let dec2 = SyndromeDecoder::new(&d15, 2).unwrap();
        let cw2 = d15.codeword(&BitPoly::one());
        let mut noisy2 = cw2.clone();
        noisy2.flip(0);
        noisy2.flip(5);
        noisy2.flip(9);
        assert!(dec2.correct(&noisy2).is_none());
    }

    #[test]
    fn row_reduce_ranks() {
        let mut rows = vec![
            BitVec::from_indices(4, &[0, 1]),
            BitVec::from_indices(4, &[1, 2]),
            BitVec::from_indices(4, &[0, 2]),
        ];
        assert_eq!(row_reduce(&mut rows), 2);
        assert_eq!(rows.len(), 2);
    }
}
