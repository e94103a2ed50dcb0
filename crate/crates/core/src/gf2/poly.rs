//! Binary polynomials with carryless arithmetic.
//!
//! A [`BitPoly`] stores the coefficient of `x^i` at bit `i`, packed into
//! `u64` words with no trailing zero words, so equal polynomials compare
//! equal structurally. Every nonzero polynomial over GF(2) is monic.

use std::fmt;

use crate::bits::BitVec;
use crate::Error;

const WORD_BITS: usize = 64;

/// Polynomial over GF(2), unbounded degree.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct BitPoly {
    words: Vec<u64>,
}

impl BitPoly {
    pub fn zero() -> Self {
        BitPoly { words: Vec::new() }
    }

    pub fn one() -> Self {
        BitPoly { words: vec![1] }
    }

    /// The monomial `x^d`.
    pub fn monomial(d: usize) -> Self {
        let mut words = vec![0u64; d / WORD_BITS + 1];
        words[d / WORD_BITS] = 1u64 << (d % WORD_BITS);
        BitPoly { words }
    }

    /// `x^n - 1`, the modulus of the length-`n` cyclic ring.
    pub fn xn_minus_one(n: usize) -> Self {
        let mut p = BitPoly::monomial(n);
        p = p.add(&BitPoly::one());
        p
    }

    /// Builds a polynomial with terms exactly at `degrees`.
    pub fn from_terms(degrees: &[usize]) -> Self {
        let mut p = BitPoly::zero();
        for &d in degrees {
            p = p.add(&BitPoly::monomial(d));
        }
        p
    }

    /// Reads the low bits of a word as coefficients `x^0, x^1, ...`.
    pub fn from_word(word: u64) -> Self {
        let mut p = BitPoly { words: vec![word] };
        p.normalize();
        p
    }

    /// Interprets a bit vector as a polynomial (bit `i` is the `x^i` term).
    pub fn from_bits(bits: &BitVec) -> Self {
        let mut p = BitPoly {
            words: bits.words().to_vec(),
        };
        p.normalize();
        p
    }

    /// Coefficient vector of fixed length `len`. Fails only by panic if the
    /// degree does not fit; callers guarantee `deg < len`.
    pub fn to_bits(&self, len: usize) -> BitVec {
        if let Some(d) = self.degree() {
            assert!(d < len, "degree {d} does not fit in {len} bits");
        }
        let mut v = BitVec::zeros(len);
        for i in self.iter_terms() {
            v.set(i, true);
        }
        v
    }

    fn normalize(&mut self) {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.words == [1]
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * WORD_BITS + (63 - last.leading_zeros() as usize))
    }

    pub fn coeff(&self, i: usize) -> bool {
        self.words
            .get(i / WORD_BITS)
            .map(|w| (w >> (i % WORD_BITS)) & 1 == 1)
            .unwrap_or(false)
    }

    /// Number of nonzero terms.
    pub fn weight(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Degrees of the nonzero terms, ascending.
    pub fn iter_terms(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(wi, &w)| {
            let base = wi * WORD_BITS;
            let mut rem = w;
            std::iter::from_fn(move || {
                if rem == 0 {
                    None
                } else {
                    let b = rem.trailing_zeros() as usize;
                    rem &= rem - 1;
                    Some(base + b)
                }
            })
        })
    }

    /// Sum (= difference) over GF(2).
    pub fn add(&self, other: &BitPoly) -> BitPoly {
        let mut words = if self.words.len() >= other.words.len() {
            self.words.clone()
        } else {
            other.words.clone()
        };
        let shorter = if self.words.len() >= other.words.len() {
            &other.words
        } else {
            &self.words
        };
        for (a, b) in words.iter_mut().zip(shorter) {
            *a ^= b;
        }
        let mut p = BitPoly { words };
        p.normalize();
        p
    }

    /// `self * x^s`.
    pub fn shl(&self, s: usize) -> BitPoly {
        if self.is_zero() {
            return BitPoly::zero();
        }
        let word_shift = s / WORD_BITS;
        let bit_shift = s % WORD_BITS;
        let mut words = vec![0u64; self.words.len() + word_shift + 1];
        for (i, &w) in self.words.iter().enumerate() {
            words[i + word_shift] |= w << bit_shift;
            if bit_shift > 0 {
                words[i + word_shift + 1] |= w >> (WORD_BITS - bit_shift);
            }
        }
        let mut p = BitPoly { words };
        p.normalize();
        p
    }

    /// Quotient of `self / x^s`, dropping low terms.
    pub fn shr(&self, s: usize) -> BitPoly {
        match self.degree() {
            None => BitPoly::zero(),
            Some(d) if d < s => BitPoly::zero(),
            Some(d) => {
                let mut out = BitPoly::zero();
                for t in self.iter_terms() {
                    if t >= s {
                        out = out.add(&BitPoly::monomial(t - s));
                    }
                }
                let _ = d;
                out
            }
        }
    }

    /// Low `s` terms, `self mod x^s`.
    pub fn low_terms(&self, s: usize) -> BitPoly {
        let mut out = BitPoly::zero();
        for t in self.iter_terms() {
            if t < s {
                out = out.add(&BitPoly::monomial(t));
            }
        }
        out
    }

    /// Reciprocal polynomial `x^deg * p(1/x)`: the coefficient sequence
    /// reversed. Monic again whenever the constant term is 1.
    pub fn reciprocal(&self) -> BitPoly {
        match self.degree() {
            None => BitPoly::zero(),
            Some(d) => {
                let mut out = BitPoly::zero();
                for t in self.iter_terms() {
                    out = out.add(&BitPoly::monomial(d - t));
                }
                out
            }
        }
    }

    /// Carryless product.
    pub fn mul(&self, other: &BitPoly) -> BitPoly {
        if self.is_zero() || other.is_zero() {
            return BitPoly::zero();
        }
        let (small, big) = if self.weight() <= other.weight() {
            (self, other)
        } else {
            (other, self)
        };
        let mut acc = BitPoly::zero();
        for t in small.iter_terms() {
            acc = acc.add(&big.shl(t));
        }
        acc
    }

    /// Long division: returns `(quotient, remainder)` with
    /// `self = quotient * divisor + remainder` and `deg r < deg divisor`.
    pub fn divmod(&self, divisor: &BitPoly) -> Result<(BitPoly, BitPoly), Error> {
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let mut rem = self.clone();
        let mut quo = BitPoly::zero();
        while let Some(dr) = rem.degree() {
            if dr < dd {
                break;
            }
            let s = dr - dd;
            rem = rem.add(&divisor.shl(s));
            quo = quo.add(&BitPoly::monomial(s));
        }
        Ok((quo, rem))
    }

    /// Remainder of `self mod divisor`.
    pub fn rem(&self, divisor: &BitPoly) -> Result<BitPoly, Error> {
        Ok(self.divmod(divisor)?.1)
    }

    /// Whether `self` divides `other` exactly.
    pub fn divides(&self, other: &BitPoly) -> bool {
        match other.divmod(self) {
            Ok((_, r)) => r.is_zero(),
            Err(_) => false,
        }
    }

    pub fn gcd(&self, other: &BitPoly) -> BitPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, exp: u128, modulus: &BitPoly) -> Result<BitPoly, Error> {
        if modulus.degree().is_none() {
            return Err(Error::DivisionByZero);
        }
        let mut base = self.rem(modulus)?;
        let mut acc = BitPoly::one().rem(modulus)?;
        let mut e = exp;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(modulus)?;
            }
            base = base.mul(&base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    /// Coefficient string as lowercase hex bytes, little-endian: byte 0 holds
    /// the `x^0..x^7` coefficients with `x^0` in its least significant bit.
    pub fn to_hex(&self) -> String {
        let n_bytes = match self.degree() {
            None => 1,
            Some(d) => d / 8 + 1,
        };
        let mut bytes = vec![0u8; n_bytes];
        for t in self.iter_terms() {
            bytes[t / 8] |= 1 << (t % 8);
        }
        bytes.iter().map(|b| format!("{b:02x}")).collect()
    }

    /// Parses the [`to_hex`](Self::to_hex) format; an optional `0x` prefix is
    /// accepted.
    pub fn from_hex(s: &str) -> Result<Self, Error> {
        let s = s.trim().trim_start_matches("0x");
        if s.is_empty() || s.len() % 2 != 0 {
            return Err(Error::Parse(format!(
                "hex polynomial must be a nonempty even-length string, got {s:?}"
            )));
        }
        let mut p = BitPoly::zero();
        for (bi, chunk) in s.as_bytes().chunks(2).enumerate() {
            let txt = std::str::from_utf8(chunk).expect("ascii checked below");
            let byte = u8::from_str_radix(txt, 16)
                .map_err(|_| Error::Parse(format!("bad hex byte {txt:?} in {s:?}")))?;
            for b in 0..8 {
                if (byte >> b) & 1 == 1 {
                    p = p.add(&BitPoly::monomial(bi * 8 + b));
                }
            }
        }
        Ok(p)
    }

    /// Human-readable form with descending powers, e.g. `x^3+x+1`.
    pub fn to_pretty(&self) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut terms: Vec<usize> = self.iter_terms().collect();
        terms.reverse();
        terms
            .iter()
            .map(|&d| match d {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{d}"),
            })
            .collect::<Vec<_>>()
            .join("+")
    }

    /// Parses the [`to_pretty`](Self::to_pretty) format.
    pub fn from_pretty(s: &str) -> Result<Self, Error> {
        let body = s.trim();
        if body == "0" {
            return Ok(BitPoly::zero());
        }
        let mut p = BitPoly::zero();
        for raw in body.split('+') {
            let term = raw.trim();
            let d = if term == "1" {
                0
            } else if term == "x" {
                1
            } else if let Some(exp) = term.strip_prefix("x^") {
                exp.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::Parse(format!("bad exponent in term {term:?}")))?
            } else {
                return Err(Error::Parse(format!("unrecognized term {term:?} in {s:?}")));
            };
            if p.coeff(d) {
                return Err(Error::Parse(format!("repeated term x^{d} in {s:?}")));
            }
            p = p.add(&BitPoly::monomial(d));
        }
        Ok(p)
    }
}

impl fmt::Debug for BitPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pretty())
    }
}

/// `x^e mod modulus` in the length-`n` cyclic ring, for signed `e`.
///
/// Negative exponents use `x^n = 1`, which is valid exactly because the
/// modulus divides `x^n - 1`; that divisibility is checked and rejected
/// otherwise. `e` is reduced modulo `n` first.
pub fn x_pow_mod(e: i64, modulus: &BitPoly, n: usize) -> Result<BitPoly, Error> {
    if n == 0 {
        return Err(Error::Parse("ring length must be positive".into()));
    }
    let ring = BitPoly::xn_minus_one(n);
    if !modulus.divides(&ring) {
        return Err(Error::NotARingDivisor {
            poly: modulus.to_pretty(),
            n,
        });
    }
    let n_i = n as i64;
    let e_norm = e.rem_euclid(n_i) as u128;
    BitPoly::monomial(1).pow_mod(e_norm, modulus)
}
