//! Arithmetic in GF(4) = GF(2)[t]/(t² + t + 1).
//!
//! Elements are encoded by a two-bit code: `0`, `1`, `ω` (code 2) and
//! `ω² = ω + 1` (code 3). Addition is xor of codes; multiplication goes
//! through log/antilog tables built once from the defining polynomial.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign};

use crate::error::FieldError;

/// Multiplicative order of GF(4)*.
const GROUP_ORDER: usize = 3;

/// Antilog table: `EXP[i] = ω^i` as a code.
const EXP: [u8; GROUP_ORDER] = build_exp();

/// Log table indexed by code; entry 0 is unused.
const LOG: [u8; 4] = build_log();

/// Full multiplication table, indexed `[a][b]`.
const MUL: [[u8; 4]; 4] = build_mul();

const fn build_exp() -> [u8; GROUP_ORDER] {
    // Multiplying by ω is a shift followed by reduction modulo t² + t + 1
    // (binary 0b111).
    let mut table = [0u8; GROUP_ORDER];
    let mut x: u8 = 1;
    let mut i = 0;
    while i < GROUP_ORDER {
        table[i] = x;
        x <<= 1;
        if x & 0b100 != 0 {
            x ^= 0b111;
        }
        i += 1;
    }
    table
}

const fn build_log() -> [u8; 4] {
    let exp = build_exp();
    let mut table = [0u8; 4];
    let mut i = 0;
    while i < GROUP_ORDER {
        table[exp[i] as usize] = i as u8;
        i += 1;
    }
    table
}

const fn build_mul() -> [[u8; 4]; 4] {
    let exp = build_exp();
    let log = build_log();
    let mut table = [[0u8; 4]; 4];
    let mut a = 1;
    while a < 4 {
        let mut b = 1;
        while b < 4 {
            table[a][b] = exp[(log[a] as usize + log[b] as usize) % GROUP_ORDER];
            b += 1;
        }
        a += 1;
    }
    table
}

/// An element of GF(4).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct FieldElement(u8);

impl FieldElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);
    /// A root of t² + t + 1.
    pub const OMEGA: Self = Self(2);
    pub const OMEGA_SQ: Self = Self(3);

    /// All four elements in code order.
    pub const ALL: [Self; 4] = [Self::ZERO, Self::ONE, Self::OMEGA, Self::OMEGA_SQ];
    /// The three units in code order.
    pub const UNITS: [Self; 3] = [Self::ONE, Self::OMEGA, Self::OMEGA_SQ];

    pub fn from_code(code: u8) -> Result<Self, FieldError> {
        if code < 4 {
            Ok(Self(code))
        } else {
            Err(FieldError::InvalidCode(code))
        }
    }

    #[inline]
    pub const fn code(self) -> u8 {
        self.0
    }

    #[inline]
    pub const fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn inv(self) -> Result<Self, FieldError> {
        ff_inv(self)
    }

    #[inline]
    pub fn square(self) -> Self {
        self * self
    }

    pub fn trace(self) -> Self {
        ff_trace(self)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "0",
            1 => "1",
            2 => "ω",
            _ => "ω²",
        })
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[inline]
pub fn ff_add(a: FieldElement, b: FieldElement) -> FieldElement {
    FieldElement(a.0 ^ b.0)
}

#[inline]
pub fn ff_mul(a: FieldElement, b: FieldElement) -> FieldElement {
    FieldElement(MUL[a.0 as usize][b.0 as usize])
}

pub fn ff_inv(a: FieldElement) -> Result<FieldElement, FieldError> {
    if a.is_zero() {
        return Err(FieldError::ZeroInverse);
    }
    let log = LOG[a.0 as usize] as usize;
    Ok(FieldElement(EXP[(GROUP_ORDER - log) % GROUP_ORDER]))
}

/// Absolute trace GF(4) → GF(2): `a + a²`.
pub fn ff_trace(a: FieldElement) -> FieldElement {
    ff_add(a, ff_mul(a, a))
}

impl Add for FieldElement {
    type Output = Self;

    #[inline]
    fn add(self, rhs: Self) -> Self {
        ff_add(self, rhs)
    }
}

impl AddAssign for FieldElement {
    fn add_assign(&mut self, rhs: Self) {
        *self = *self + rhs;
    }
}

impl Mul for FieldElement {
    type Output = Self;

    #[inline]
    fn mul(self, rhs: Self) -> Self {
        ff_mul(self, rhs)
    }
}

impl MulAssign for FieldElement {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}
