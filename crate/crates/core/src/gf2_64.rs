//! Arithmetic in GF(2^64) = GF(2)[x] / (x^64 + x^4 + x^3 + x + 1).
//!
//! Addition is XOR. Multiplication is a carry-less 64x64 -> 128 product
//! followed by reduction; the hardware `pclmulqdq` path and the portable
//! path produce identical bits.

use std::ops::{Add, AddAssign, Mul, MulAssign};

/// Low terms of the reduction polynomial: x^4 + x^3 + x + 1.
#[cfg(test)]
const REDUCTION_LOW: u64 = 0b1_1011;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Gf64(pub u64);

impl Gf64 {
    pub const ZERO: Gf64 = Gf64(0);
    pub const ONE: Gf64 = Gf64(1);

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn square(self) -> Self {
        self * self
    }
}

impl Add for Gf64 {
    type Output = Gf64;
    #[inline]
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn add(self, rhs: Gf64) -> Gf64 {
        Gf64(self.0 ^ rhs.0)
    }
}

impl AddAssign for Gf64 {
    #[inline]
    #[allow(clippy::suspicious_op_assign_impl)]
    fn add_assign(&mut self, rhs: Gf64) {
        self.0 ^= rhs.0;
    }
}

impl Mul for Gf64 {
    type Output = Gf64;
    #[inline]
    fn mul(self, rhs: Gf64) -> Gf64 {
        Gf64(reduce(clmul(self.0, rhs.0)))
    }
}

impl MulAssign for Gf64 {
    #[inline]
    fn mul_assign(&mut self, rhs: Gf64) {
        *self = *self * rhs;
    }
}

/// Fold the high 64 bits of a 128-bit product back into the low half.
#[inline]
pub(crate) fn reduce(product: u128) -> u64 {
    let lo = product as u64;
    let hi = (product >> 64) as u64;
    // hi * x^64 = hi * (x^4 + x^3 + x + 1); the shifted-out top bits of hi
    // are at most 4 bits wide and get folded a second time
    let carry = (hi >> 60) ^ (hi >> 61) ^ (hi >> 63);
    let folded = hi ^ (hi << 1) ^ (hi << 3) ^ (hi << 4);
    let carry_fold = carry ^ (carry << 1) ^ (carry << 3) ^ (carry << 4);
    lo ^ folded ^ carry_fold
}

#[inline]
pub(crate) fn clmul(a: u64, b: u64) -> u128 {
    #[cfg(target_arch = "x86_64")]
    {
        if std::arch::is_x86_feature_detected!("pclmulqdq") {
            // SAFETY: the feature was detected at runtime.
            return unsafe { clmul_x86(a, b) };
        }
    }
    clmul_portable(a, b)
}

#[cfg(target_arch = "x86_64")]
#[target_feature(enable = "pclmulqdq,sse2")]
unsafe fn clmul_x86(a: u64, b: u64) -> u128 {
    use std::arch::x86_64::*;
    let x = _mm_set_epi64x(0, a as i64);
    let y = _mm_set_epi64x(0, b as i64);
    let r = _mm_clmulepi64_si128(x, y, 0);
    let lo = _mm_cvtsi128_si64(r) as u64;
    let hi = _mm_cvtsi128_si64(_mm_unpackhi_epi64(r, r)) as u64;
    ((hi as u128) << 64) | lo as u128
}

/// Carry-less product with 4-bit windows.
pub(crate) fn clmul_portable(a: u64, b: u64) -> u128 {
    let mut table = [0u128; 16];
    let a = a as u128;
    for i in 1..16 {
        table[i] = (table[i >> 1] << 1) ^ if i & 1 == 1 { a } else { 0 };
    }
    let mut acc = 0u128;
    for nibble in (0..16).rev() {
        acc = (acc << 4) ^ table[((b >> (4 * nibble)) & 0xf) as usize];
    }
    acc
}
