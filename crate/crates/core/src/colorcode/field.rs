//! Arithmetic in GF(2^b) for 1 ≤ b ≤ 32.

/// Reduction polynomials (including the leading term), indexed by `b − 1`.
pub const IRREDUCIBLE: [u64; 32] = [
    0x3,
    0x7,
    0xb,
    0x13,
    0x25,
    0x43,
    0x83,
    0x11b,
    0x203,
    0x409,
    0x805,
    0x1009,
    0x201b,
    0x4021,
    0x8003,
    0x1002b,
    0x20009,
    0x40009,
    0x80027,
    0x100009,
    0x200005,
    0x400003,
    0x800021,
    0x100001b,
    0x2000009,
    0x400001b,
    0x8000027,
    0x10000003,
    0x20000005,
    0x40000003,
    0x80000009,
    0x10000008d,
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Gf2Field {
    bits: u32,
    modulus: u64,
}

impl Gf2Field {
    pub fn new(bits: u32) -> Self {
        assert!((1..=32).contains(&bits), "field degree {bits} unsupported");
        Gf2Field {
            bits,
            modulus: IRREDUCIBLE[bits as usize - 1],
        }
    }

    pub fn bits(&self) -> u32 {
        self.bits
    }

    pub fn size(&self) -> u64 {
        1 << self.bits
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        let (mut a, mut b, mut r) = (a, b, 0u64);
        while b != 0 {
            if b & 1 == 1 {
                r ^= a;
            }
            b >>= 1;
            a <<= 1;
            if a >> self.bits & 1 == 1 {
                a ^= self.modulus;
            }
        }
        r
    }

    /// Horner evaluation of `Σ coeffs[i]·x^i`.
    pub fn eval(&self, coeffs: &[u64], x: u64) -> u64 {
        coeffs.iter().rev().fold(0, |acc, &c| self.mul(acc, x) ^ c)
    }
}
