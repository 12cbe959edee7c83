//! Exact rational arithmetic.
//!
//! All coherence values and squared defects are carried as reduced
//! fractions with arbitrary-precision integer parts. `num`'s `BigRational`
//! already maintains the invariants we need (positive denominator, fully
//! reduced), so `Rat` is an alias rather than a newtype.

use num::bigint::Sign;
use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{invalid, Result};

pub type Rat = BigRational;

/// Reduced fraction from machine integers.
pub fn rat(num: i64, den: i64) -> Rat {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_int(n: impl Into<BigInt>) -> Rat {
    BigRational::from_integer(n.into())
}

/// `base^exp` as a big integer.
pub fn bigint_pow(base: impl Into<BigInt>, exp: u64) -> BigInt {
    base.into().pow(exp as u32)
}

/// Renders `r` as a decimal string with `digits` digits after the point,
/// truncated toward zero (the convention used when comparing against
/// truncated table entries).
pub fn render_decimal(r: &Rat, digits: usize) -> String {
    let sign = if r.is_negative() { "-" } else { "" };
    let a = r.abs();
    let scale = BigInt::from(10u32).pow(digits as u32);
    let scaled = (a.numer() * &scale) / a.denom();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    format!("{}{}.{:0>width$}", sign, int_part, frac_part, width = digits)
}

/// Renders `r` as `"p/q"` (or just `"p"` when the denominator is 1).
pub fn render_fraction(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Parses the output of [`render_fraction`].
pub fn parse_fraction(s: &str) -> Result<Rat> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num
        .parse()
        .map_err(|_| invalid(format!("bad rational {s:?}")))?;
    let den: BigInt = den
        .parse()
        .map_err(|_| invalid(format!("bad rational {s:?}")))?;
    if den.is_zero() {
        return Err(invalid(format!("zero denominator in {s:?}")));
    }
    Ok(BigRational::new(num, den))
}

/// Lossy conversion to `f64` (used only for display and diagnostics).
pub fn rat_to_f64(r: &Rat) -> f64 {
    // Direct conversion of the parts overflows for the huge squared defects,
    // so go through a scaled integer quotient.
    let (num, den) = (r.numer(), r.denom());
    if num.is_zero() {
        return 0.0;
    }
    let nbits = num.bits() as i64;
    let dbits = den.bits() as i64;
    let shift = 80 - (nbits - dbits);
    let scaled = if shift >= 0 {
        (num << shift as u64) / den
    } else {
        num / (den << (-shift) as u64)
    };
    let (sign, digits) = scaled.to_u64_digits();
    let mut mag = 0.0f64;
    for (i, d) in digits.iter().enumerate() {
        mag += (*d as f64) * (64.0 * i as f64).exp2();
    }
    let val = mag * ((-shift) as f64).exp2();
    if sign == Sign::Minus {
        -val
    } else {
        val
    }
}
