//! The cyclic ring GF(2)[x] / (x^n - 1).
//!
//! Multiplication by `x` is a one-step cyclic shift of the coefficient
//! vector toward higher indices, which is what makes cyclic codes closed
//! under rotation of their codewords.

use crate::bits::BitVec;
use crate::gf2::poly::BitPoly;

/// Residue class modulo `x^n - 1`, kept reduced to degree `< n`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RingElement {
    n: usize,
    poly: BitPoly,
}

impl RingElement {
    /// Reduces an arbitrary polynomial into the length-`n` ring by folding
    /// `x^{n+i}` onto `x^i`.
    pub fn new(n: usize, poly: BitPoly) -> Self {
        assert!(n > 0, "ring length must be positive");
        let mut p = poly;
        while p.degree().map(|d| d >= n).unwrap_or(false) {
            let high = p.shr(n);
            p = p.low_terms(n).add(&high);
        }
        RingElement { n, poly: p }
    }

    pub fn from_bits(bits: &BitVec) -> Self {
        RingElement {
            n: bits.len(),
            poly: BitPoly::from_bits(bits),
        }
    }

    pub fn zero(n: usize) -> Self {
        RingElement {
            n,
            poly: BitPoly::zero(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn poly(&self) -> &BitPoly {
        &self.poly
    }

    pub fn to_bits(&self) -> BitVec {
        self.poly.to_bits(self.n)
    }

    pub fn add(&self, other: &RingElement) -> RingElement {
        assert_eq!(self.n, other.n, "ring length mismatch");
        RingElement {
            n: self.n,
            poly: self.poly.add(&other.poly),
        }
    }

    pub fn mul(&self, other: &RingElement) -> RingElement {
        assert_eq!(self.n, other.n, "ring length mismatch");
        RingElement::new(self.n, self.poly.mul(&other.poly))
    }

    /// Cyclic shift by a signed amount: `shift(k)` multiplies by `x^k`,
    /// with negative `k` folded through `x^n = 1`.
    pub fn shift(&self, k: i64) -> RingElement {
        let k = k.rem_euclid(self.n as i64) as usize;
        RingElement::new(self.n, self.poly.shl(k))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduction_folds_high_terms() {
        // x^7 = 1 and x^9 = x^2 in the length-7 ring
        let e = RingElement::new(7, BitPoly::monomial(7));
        assert!(e.poly().is_one());
        let e = RingElement::new(7, BitPoly::monomial(9));
        assert_eq!(e.poly(), &BitPoly::monomial(2));
    }

    #[test]
    fn shift_is_cyclic_rotation() {
        let v = BitVec::from_indices(7, &[0, 3]);
        let e = RingElement::from_bits(&v);
        let s = e.shift(1);
        assert_eq!(s.to_bits().iter_ones().collect::<Vec<_>>(), vec![1, 4]);
        let back = s.shift(-1);
        assert_eq!(back, e);
        // A full revolution is the identity.
        assert_eq!(e.shift(7), e);
        assert_eq!(e.shift(-7), e);
    }

    #[test]
    fn ring_product_matches_plain_product_reduced() {
        let a = BitPoly::from_terms(&[4, 2]);
        let b = BitPoly::from_terms(&[5, 0]);
        let ra = RingElement::new(7, a.clone());
        let rb = RingElement::new(7, b.clone());
        let direct = RingElement::new(7, a.mul(&b));
        assert_eq!(ra.mul(&rb), direct);
    }
}
