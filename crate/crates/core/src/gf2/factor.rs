//! Cyclotomic cosets and the factorization of `x^n - 1` over GF(2).
//!
//! For odd `n` the polynomial `x^n - 1` is squarefree and its irreducible
//! factors correspond one-to-one with the cyclotomic cosets of 2 modulo `n`:
//! the coset of `s` yields the minimal polynomial of `beta^s`, where `beta`
//! is a primitive `n`-th root of unity in GF(2^ord) and `ord` is the
//! multiplicative order of 2 modulo `n`. Even `n` has repeated roots and is
//! rejected. Field arithmetic here is done directly on residue polynomials,
//! so no log tables bound the extension degree; exponents are capped at 127
//! to keep `2^ord - 1` inside `u128`.

use crate::gf2::field::PRIMITIVE_POLYNOMIALS;
use crate::gf2::poly::BitPoly;
use crate::Error;

/// Largest supported multiplicative order of 2 mod n.
const MAX_ORDER: usize = 127;

/// Multiplicative order of 2 modulo odd `n > 1`.
pub fn multiplicative_order_of_two(n: usize) -> Result<usize, Error> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::EvenModulus { n });
    }
    if n == 1 {
        return Ok(1);
    }
    let mut acc = 2usize % n;
    let mut ord = 1;
    while acc != 1 {
        acc = (acc * 2) % n;
        ord += 1;
    }
    Ok(ord)
}

/// Partition of `0..n` into cyclotomic cosets of 2 (doubling orbits), listed
/// by ascending smallest member, each in generation order.
pub fn cyclotomic_cosets(n: usize) -> Result<Vec<Vec<usize>>, Error> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::EvenModulus { n });
    }
    let mut seen = vec![false; n];
    let mut cosets = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut orbit = Vec::new();
        let mut cur = s;
        loop {
            seen[cur] = true;
            orbit.push(cur);
            cur = (cur * 2) % n;
            if cur == s {
                break;
            }
        }
        cosets.push(orbit);
    }
    Ok(cosets)
}

fn small_primes_dividing(mut d: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= d {
        if d % p == 0 {
            out.push(p);
            while d % p == 0 {
                d /= p;
            }
        }
        p += 1;
    }
    if d > 1 {
        out.push(d);
    }
    out
}

/// Frobenius power `x^(2^k) mod f` by repeated squaring.
fn frobenius_pow(k: usize, f: &BitPoly) -> BitPoly {
    let mut t = BitPoly::monomial(1).rem(f).expect("nonzero modulus");
    for _ in 0..k {
        t = t.mul(&t).rem(f).expect("nonzero modulus");
    }
    t
}

/// Irreducibility over GF(2): `x^(2^d) = x (mod f)` and, for each prime
/// `p | d`, `gcd(x^(2^(d/p)) - x, f) = 1`.
fn is_irreducible(f: &BitPoly) -> bool {
    let d = match f.degree() {
        Some(d) if d >= 1 => d,
        _ => return false,
    };
    let x = BitPoly::monomial(1);
    if frobenius_pow(d, f).add(&x.rem(f).unwrap()) != BitPoly::zero() {
        return false;
    }
    for p in small_primes_dividing(d) {
        let t = frobenius_pow(d / p, f).add(&x);
        if !t.gcd(f).is_one() {
            return false;
        }
    }
    true
}

/// A fixed irreducible polynomial of each degree: the built-in primitive
/// polynomial for degrees up to 16, otherwise the first irreducible in a
/// deterministic scan (constant term forced to 1).
fn irreducible_of_degree(d: usize) -> BitPoly {
    if d >= 1 && d <= 16 {
        let mask = PRIMITIVE_POLYNOMIALS[d];
        let mut p = BitPoly::zero();
        for b in 0..=d {
            if (mask >> b) & 1 == 1 {
                p = p.add(&BitPoly::monomial(b));
            }
        }
        return p;
    }
    let lead = BitPoly::monomial(d);
    let mut c = 1u64;
    loop {
        let candidate = lead.add(&BitPoly::from_word(c));
        if is_irreducible(&candidate) {
            return candidate;
        }
        c += 2;
    }
}

/// The distinct monic irreducible factors of `x^n - 1` over GF(2), for odd
/// `n`, ordered to match [`cyclotomic_cosets`].
pub fn factor_xn_minus_1(n: usize) -> Result<Vec<BitPoly>, Error> {
    if n == 0 || n % 2 == 0 {
        return Err(Error::EvenModulus { n });
    }
    if n == 1 {
        return Ok(vec![BitPoly::from_terms(&[1, 0])]);
    }
    let ord = multiplicative_order_of_two(n)?;
    if ord > MAX_ORDER {
        return Err(Error::OrderBudget { n, ord });
    }
    let modulus = irreducible_of_degree(ord);
    // beta = x^((2^ord - 1) / n) generates the n-element root group.
    let group = (1u128 << ord) - 1;
    debug_assert_eq!(group % n as u128, 0);
    let beta = BitPoly::monomial(1).pow_mod(group / n as u128, &modulus)?;
    // Powers beta^0 .. beta^(n-1).
    let mut beta_pow = Vec::with_capacity(n);
    let mut cur = BitPoly::one();
    for _ in 0..n {
        beta_pow.push(cur.clone());
        cur = cur.mul(&beta).rem(&modulus)?;
    }
    assert!(cur.is_one(), "beta must have exact order n");

    let mut factors = Vec::new();
    for coset in cyclotomic_cosets(n)? {
        // Expand prod_{j in coset} (X - beta^j); coefficients live in
        // GF(2^ord) as residue polynomials and collapse to GF(2).
        let mut coeffs: Vec<BitPoly> = vec![BitPoly::one()];
        for &j in &coset {
            let root = &beta_pow[j];
            let mut next = vec![BitPoly::zero(); coeffs.len() + 1];
            for (i, c) in coeffs.iter().enumerate() {
                next[i + 1] = next[i + 1].add(c);
                next[i] = next[i].add(&root.mul(c).rem(&modulus)?);
            }
            coeffs = next;
        }
        let mut factor = BitPoly::zero();
        for (i, c) in coeffs.iter().enumerate() {
            if c.is_one() {
                factor = factor.add(&BitPoly::monomial(i));
            } else {
                assert!(c.is_zero(), "conjugate-closed product must collapse to GF(2)");
            }
        }
        assert_eq!(factor.degree(), Some(coset.len()));
        factors.push(factor);
    }
    debug_assert_eq!(
        factors.iter().map(|f| f.degree().unwrap()).sum::<usize>(),
        n
    );
    Ok(factors)
}
