//! GF(2^m) arithmetic via log/antilog tables, and minimal polynomials of
//! powers of the primitive element.
//!
//! Field elements are represented as `u32` bit masks: bit `i` holds the
//! coefficient of `x^i` of the residue modulo the primitive polynomial.
//! One fixed primitive polynomial is built in per extension degree.

use crate::gf2::poly::BitPoly;
use crate::Error;

/// One conventional primitive polynomial per degree `m = 1..=16`, encoded as
/// a mask including the `x^m` term. Index 0 is unused padding.
pub const PRIMITIVE_POLYNOMIALS: [u32; 17] = [
    0,
    0b11,                // x + 1
    0b111,               // x^2 + x + 1
    0b1011,              // x^3 + x + 1
    0b1_0011,            // x^4 + x + 1
    0b10_0101,           // x^5 + x^2 + 1
    0b100_0011,          // x^6 + x + 1
    0b1000_1001,         // x^7 + x^3 + 1
    0b1_0001_1101,       // x^8 + x^4 + x^3 + x^2 + 1
    0b10_0001_0001,      // x^9 + x^4 + 1
    0b100_0000_1001,     // x^10 + x^3 + 1
    0b1000_0000_0101,    // x^11 + x^2 + 1
    0b1_0000_0101_0011,  // x^12 + x^6 + x^4 + x + 1
    0b10_0000_0001_1011, // x^13 + x^4 + x^3 + x + 1
    0b100_0100_0100_0011, // x^14 + x^10 + x^6 + x + 1
    0b1000_0000_0000_0011, // x^15 + x + 1
    0b1_0001_0000_0000_1011, // x^16 + x^12 + x^3 + x + 1
];

/// The field GF(2^m) with its discrete-log tables.
pub struct Gf2mField {
    m: usize,
    order: u32,
    antilog: Vec<u32>,
    log: Vec<u32>,
}

impl Gf2mField {
    /// Builds the field; `m` must be in `1..=16`.
    pub fn new(m: usize) -> Result<Self, Error> {
        if !(1..=16).contains(&m) {
            return Err(Error::FieldDegree { m });
        }
        let prim = PRIMITIVE_POLYNOMIALS[m];
        let order = (1u32 << m) - 1;
        let mut antilog = vec![0u32; order as usize];
        let mut log = vec![0u32; 1usize << m];
        let mut cur = 1u32;
        for i in 0..order {
            assert!(
                i == 0 || cur != 1,
                "primitive polynomial table entry for m={m} is not primitive"
            );
            antilog[i as usize] = cur;
            log[cur as usize] = i;
            cur <<= 1;
            if cur & (1 << m) != 0 {
                cur ^= prim;
            }
        }
        assert_eq!(cur, 1, "alpha does not have order 2^m - 1 for m={m}");
        Ok(Gf2mField {
            m,
            order,
            antilog,
            log,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    /// Multiplicative group order, `2^m - 1`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// `alpha^e` for any signed exponent.
    pub fn alpha_pow(&self, e: i64) -> u32 {
        let e = e.rem_euclid(self.order as i64) as usize;
        self.antilog[e]
    }

    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        let s = (self.log[a as usize] + self.log[b as usize]) % self.order;
        self.antilog[s as usize]
    }

    pub fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        let e = (self.order - self.log[a as usize]) % self.order;
        self.antilog[e as usize]
    }

    /// Evaluates a binary polynomial at the field point `alpha^e`.
    pub fn eval_poly(&self, p: &BitPoly, e: i64) -> u32 {
        let mut acc = 0u32;
        for t in p.iter_terms() {
            acc ^= self.alpha_pow(e * t as i64);
        }
        acc
    }
}

/// The doubling orbit of `power` modulo `n`, in generation order.
pub fn doubling_orbit(power: usize, n: usize) -> Vec<usize> {
    let mut orbit = vec![power % n];
    let mut cur = (power * 2) % n;
    while cur != power % n {
        orbit.push(cur);
        cur = (cur * 2) % n;
    }
    orbit
}

/// Minimal polynomial over GF(2) of `alpha^power`, where `alpha` generates
/// the multiplicative group of the given field and `n = 2^m - 1`.
///
/// The result is the product of `(x - alpha^j)` over the doubling orbit of
/// `power`; conjugate closure forces every coefficient back into GF(2).
pub fn minimal_polynomial(field: &Gf2mField, power: usize, n: usize) -> Result<BitPoly, Error> {
    if n as u32 != field.order() {
        return Err(Error::FieldOrderMismatch {
            n,
            order: field.order() as usize,
        });
    }
    let orbit = doubling_orbit(power, n);
    // Coefficients of the expanding product, as field elements.
    let mut coeffs: Vec<u32> = vec![1];
    for &j in &orbit {
        let root = field.alpha_pow(j as i64);
        let mut next = vec![0u32; coeffs.len() + 1];
        for (i, &c) in coeffs.iter().enumerate() {
            next[i + 1] ^= c;
            next[i] ^= field.mul(root, c);
        }
        coeffs = next;
    }
    let mut p = BitPoly::zero();
    for (i, &c) in coeffs.iter().enumerate() {
        match c {
            0 => {}
            1 => p = p.add(&BitPoly::monomial(i)),
            _ => unreachable!("conjugate-closed product left a non-binary coefficient"),
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_table_entry_builds() {
        for m in 1..=16 {
            let f = Gf2mField::new(m).unwrap();
            assert_eq!(f.order() as u64, (1u64 << m) - 1);
        }
        assert!(Gf2mField::new(0).is_err());
        assert!(Gf2mField::new(17).is_err());
    }

    #[test]
    fn field_axioms_spot_checks() {
        let f = Gf2mField::new(5).unwrap();
        let elems = [1u32, 2, 3, 7, 19, 30, 31];
        for &a in &elems {
            assert_eq!(f.mul(a, f.inv(a)), 1);
            for &b in &elems {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for &c in &elems {
                    assert_eq!(f.mul(a, f.mul(b, c)), f.mul(f.mul(a, b), c));
                    // Distributivity over XOR addition.
                    assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                }
            }
        }
    }

    #[test]
    fn minimal_polynomial_of_alpha_is_the_primitive_polynomial() {
        for m in [3usize, 4, 5, 8] {
            let f = Gf2mField::new(m).unwrap();
            let n = f.order() as usize;
            let mp = minimal_polynomial(&f, 1, n).unwrap();
            let mut expect = BitPoly::zero();
            for b in 0..=m {
                if (PRIMITIVE_POLYNOMIALS[m] >> b) & 1 == 1 {
                    expect = expect.add(&BitPoly::monomial(b));
                }
            }
            assert_eq!(mp, expect);
        }
    }

    #[test]
    fn minimal_polynomial_degree_five_for_power_three_mod_31() {
        let f = Gf2mField::new(5).unwrap();
        let mp = minimal_polynomial(&f, 3, 31).unwrap();
        assert_eq!(mp.degree(), Some(5));
        assert_eq!(doubling_orbit(3, 31), vec![3, 6, 12, 24, 17]);
        // Every orbit member is a root.
        for &j in &doubling_orbit(3, 31) {
            assert_eq!(f.eval_poly(&mp, j as i64), 0);
        }
        assert_ne!(f.eval_poly(&mp, 1), 0);
    }

    #[test]
    fn power_zero_gives_x_plus_one() {
        let f = Gf2mField::new(3).unwrap();
        assert_eq!(
            minimal_polynomial(&f, 0, 7).unwrap(),
            BitPoly::from_terms(&[1, 0])
        );
    }

    #[test]
    fn wrong_ring_length_is_rejected() {
        let f = Gf2mField::new(3).unwrap();
        assert!(matches!(
            minimal_polynomial(&f, 1, 15),
            Err(Error::FieldOrderMismatch { .. })
        ));
    }
}
