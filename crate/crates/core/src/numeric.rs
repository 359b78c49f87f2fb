//! Floating-point boundary for exact integers.
//!
//! Logarithms are taken from the top 64 bits of a big integer plus an exact
//! binary exponent, so values with millions of bits lose nothing beyond the
//! final `f64` rounding.

use num_bigint::{BigInt, Sign};
use num_integer::Roots;
use num_traits::{Signed, ToPrimitive, Zero};

const MANTISSA_BITS: u64 = 64;

/// Splits `|n|` as `m · 2^shift` with `m < 2^64`.
fn top_bits(n: &BigInt, shift: u64) -> f64 {
    (n.magnitude() >> shift).to_f64().unwrap_or(f64::INFINITY)
}

/// Natural logarithm of `|n|`; `-∞` for zero.
pub fn ln_abs(n: &BigInt) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let shift = n.bits().saturating_sub(MANTISSA_BITS);
    top_bits(n, shift).ln() + shift as f64 * std::f64::consts::LN_2
}

/// `ln |num / den|` without forming either logarithm separately, so nearly
/// equal huge operands do not cancel catastrophically.
pub fn ln_abs_ratio(num: &BigInt, den: &BigInt) -> f64 {
    if num.is_zero() {
        return f64::NEG_INFINITY;
    }
    assert!(!den.is_zero(), "ln_abs_ratio: zero denominator");
    let bits = num.bits().max(den.bits());
    let shift = bits.saturating_sub(MANTISSA_BITS);
    let n_bits = num.bits().saturating_sub(shift);
    let d_bits = den.bits().saturating_sub(shift);
    // one operand may be far smaller than the other; fall back to separate logs
    if n_bits < 32 || d_bits < 32 {
        return ln_abs(num) - ln_abs(den);
    }
    (top_bits(num, shift) / top_bits(den, shift)).ln()
}

pub fn is_perfect_square(n: &BigInt) -> bool {
    if n.sign() == Sign::Minus {
        return false;
    }
    let r = n.sqrt();
    &r * &r == *n
}

pub fn isqrt_u64(n: u64) -> u64 {
    n.sqrt()
}

pub fn sign(n: &BigInt) -> i8 {
    if n.is_positive() {
        1
    } else if n.is_negative() {
        -1
    } else {
        0
    }
}
