//! Arithmetic in GF(2^s) for 1 <= s <= 8.

use crate::error::{Error, Result};

pub const MAX_DEGREE: u32 = 8;

/// Reduction polynomials, bit `i` holding the coefficient of `x^i`.
/// For s = 1 the modulus is `x` itself, so multiplication is AND.
const MODULI: [u16; 9] = [
    0,
    0b10,          // x
    0b111,         // x^2 + x + 1
    0b1011,        // x^3 + x + 1
    0b1_0011,      // x^4 + x + 1
    0b10_0101,     // x^5 + x^2 + 1
    0b100_0011,    // x^6 + x + 1
    0b1000_0011,   // x^7 + x + 1
    0b1_0001_1101, // x^8 + x^4 + x^3 + x^2 + 1
];

/// An element of GF(2^s), as a polynomial over GF(2) packed into a byte.
pub type FieldElement = u8;

/// GF(2^s) with precomputed multiplication and inverse tables.
#[derive(Clone, Debug)]
pub struct GaloisField {
    s: u32,
    modulus: u16,
    mul: Vec<u8>,
    inv: Vec<u8>,
}

fn clmul_reduce(a: u16, b: u16, s: u32, modulus: u16) -> u8 {
    let mut acc: u32 = 0;
    for i in 0..s {
        if (b >> i) & 1 == 1 {
            acc ^= (a as u32) << i;
        }
    }
    for deg in (s..2 * s).rev() {
        if (acc >> deg) & 1 == 1 {
            acc ^= (modulus as u32) << (deg - s);
        }
    }
    acc as u8
}

impl GaloisField {
    pub fn new(s: u32) -> Result<Self> {
        if !(1..=MAX_DEGREE).contains(&s) {
            return Err(Error::UnsupportedDegree(s));
        }
        let q = 1usize << s;
        let modulus = MODULI[s as usize];
        let mut mul = vec![0u8; q * q];
        for a in 0..q {
            for b in 0..q {
                mul[a * q + b] = clmul_reduce(a as u16, b as u16, s, modulus);
            }
        }
        let mut inv = vec![0u8; q];
        for a in 1..q {
            let b = (1..q)
                .find(|&b| mul[a * q + b] == 1)
                .ok_or_else(|| Error::Geometry(format!("{a} has no inverse in GF(2^{s})")))?;
            inv[a] = b as u8;
        }
        Ok(Self {
            s,
            modulus,
            mul,
            inv,
        })
    }

    pub fn degree(&self) -> u32 {
        self.s
    }

    pub fn order(&self) -> usize {
        1 << self.s
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElement> {
        (0..self.order()).map(|e| e as u8)
    }

    pub fn add(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        a ^ b
    }

    pub fn mul(&self, a: FieldElement, b: FieldElement) -> FieldElement {
        self.mul[a as usize * self.order() + b as usize]
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self, a: FieldElement) -> Option<FieldElement> {
        (a != 0).then(|| self.inv[a as usize])
    }

    pub fn square(&self, a: FieldElement) -> FieldElement {
        self.mul(a, a)
    }

    /// The reduction polynomial in conventional notation, e.g. `x^3+x+1`.
    pub fn modulus_string(&self) -> String {
        let terms: Vec<String> = (0..=self.s)
            .rev()
            .filter(|&i| (self.modulus >> i) & 1 == 1)
            .map(|i| match i {
                0 => "1".to_string(),
                1 => "x".to_string(),
                _ => format!("x^{i}"),
            })
            .collect();
        terms.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gf2_is_and_xor() {
        let f = GaloisField::new(1).unwrap();
        for a in 0..2u8 {
            for b in 0..2u8 {
                assert_eq!(f.mul(a, b), a & b);
                assert_eq!(f.add(a, b), a ^ b);
            }
        }
    }

    #[test]
    fn reduction_examples() {
        assert_eq!(GaloisField::new(2).unwrap().mul(2, 2), 3);
        assert_eq!(GaloisField::new(3).unwrap().mul(2, 4), 3);
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for s in 1..=MAX_DEGREE {
            let f = GaloisField::new(s).unwrap();
            assert_eq!(f.inv(0), None);
            for a in 1..f.order() as u8 {
                assert_eq!(f.mul(a, f.inv(a).unwrap()), 1, "s={s} a={a}");
            }
        }
    }

    #[test]
    fn multiplication_is_associative_and_distributive() {
        let f = GaloisField::new(4).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b), f.mul(b, a));
                for c in f.elements() {
                    assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    assert_eq!(f.mul(a, b ^ c), f.mul(a, b) ^ f.mul(a, c));
                }
            }
        }
    }

    #[test]
    fn out_of_range_degree() {
        assert_eq!(
            GaloisField::new(0).unwrap_err(),
            Error::UnsupportedDegree(0)
        );
        assert_eq!(
            GaloisField::new(9).unwrap_err(),
            Error::UnsupportedDegree(9)
        );
    }

    #[test]
    fn modulus_strings() {
        assert_eq!(GaloisField::new(1).unwrap().modulus_string(), "x");
        assert_eq!(
            GaloisField::new(8).unwrap().modulus_string(),
            "x^8+x^4+x^3+x^2+1"
        );
    }
}
