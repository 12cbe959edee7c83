//! High-precision real arithmetic helpers.
//!
//! Floating values in this crate (defect, packing density, product measure,
//! embedding coordinates) are produced at a configurable precision from
//! exact rationals; rounding happens once, at the final square root or
//! trigonometric evaluation. The backing type is `astro_float::BigFloat`.

use std::cell::RefCell;

use astro_float::{BigFloat, Consts, Radix, RoundingMode, Sign};
use num::{BigInt, Signed, Zero};

use crate::rational::Rat;

pub const DEFAULT_PRECISION_BITS: usize = 256;

const RM: RoundingMode = RoundingMode::ToEven;

thread_local! {
    static CONSTS: RefCell<Consts> = RefCell::new(Consts::new().expect("constants cache"));
}

fn with_consts<T>(f: impl FnOnce(&mut Consts) -> T) -> T {
    CONSTS.with(|c| f(&mut c.borrow_mut()))
}

/// Pi at `p` bits.
pub fn pi(p: usize) -> BigFloat {
    with_consts(|cc| cc.pi(p, RM))
}

/// Exact conversion of a big integer (binary-string route keeps it exact up
/// to the requested precision).
pub fn bigint_to_float(x: &BigInt, p: usize) -> BigFloat {
    if x.is_zero() {
        return BigFloat::new(p);
    }
    let s = x.magnitude().to_str_radix(2);
    let f = with_consts(|cc| BigFloat::parse(&s, Radix::Bin, p, RM, cc));
    if x.is_negative() {
        f.neg()
    } else {
        f
    }
}

/// Rounded value of an exact rational at `p` bits.
pub fn rat_to_float(r: &Rat, p: usize) -> BigFloat {
    let guard = p + 64;
    let num = bigint_to_float(r.numer(), guard);
    let den = bigint_to_float(r.denom(), guard);
    let mut q = num.div(&den, guard, RM);
    q.set_precision(p, RM).expect("precision");
    q
}

/// Square root of a nonnegative exact rational at `p` bits.
pub fn sqrt_rat(r: &Rat, p: usize) -> BigFloat {
    debug_assert!(!r.is_negative());
    let guard = p + 64;
    let mut x = rat_to_float(r, guard).sqrt(guard, RM);
    x.set_precision(p, RM).expect("precision");
    x
}

/// `cos(2 pi a / n)` and `sin(2 pi a / n)` at `p` bits, with the argument
/// reduced modulo `n` before any floating arithmetic.
pub fn cos_sin_2pi_frac(a: u64, n: u64, p: usize) -> (BigFloat, BigFloat) {
    let a = a % n;
    let guard = p + 64;
    let two_pi = {
        let mut t = pi(guard);
        t.set_exponent(t.exponent().unwrap() + 1);
        t
    };
    let frac = BigFloat::from_u64(a, guard).div(&BigFloat::from_u64(n, guard), guard, RM);
    let theta = two_pi.mul(&frac, guard, RM);
    let (mut c, mut s) = with_consts(|cc| (theta.cos(guard, RM, cc), theta.sin(guard, RM, cc)));
    c.set_precision(p, RM).expect("precision");
    s.set_precision(p, RM).expect("precision");
    (c, s)
}

/// Mantissa as a big integer together with a power-of-two exponent, so that
/// the value equals `m * 2^e` exactly.
fn to_mantissa_exponent(x: &BigFloat) -> Option<(BigInt, i64)> {
    if x.is_zero() {
        return Some((BigInt::zero(), 0));
    }
    let (words, p, sign, e, _) = x.as_raw_parts()?;
    let mut m = BigInt::zero();
    for (i, w) in words.iter().enumerate() {
        m |= BigInt::from(*w) << (64 * i);
    }
    if sign == Sign::Neg {
        m = -m;
    }
    Some((m, e as i64 - p as i64))
}

/// Lossy conversion to `f64`, saturating to infinity outside its range.
pub fn to_f64(x: &BigFloat) -> f64 {
    let Some((m, e)) = to_mantissa_exponent(x) else {
        return f64::NAN;
    };
    if m.is_zero() {
        return 0.0;
    }
    let bits = m.bits() as i64;
    // Keep 64 significant bits and track the shift.
    let (top, e) = if bits > 64 {
        (&m >> (bits - 64), e + bits - 64)
    } else {
        (m, e)
    };
    let top_i = i64::try_from(top.clone()).map(|v| v as f64).unwrap_or_else(|_| {
        // magnitude needs u64
        let u: u64 = top.magnitude().iter_u64_digits().next().unwrap_or(0);
        if top.is_negative() {
            -(u as f64)
        } else {
            u as f64
        }
    });
    top_i * (e as f64).exp2()
}

/// Decimal rendering with `sig` significant digits, e.g. `1.75305e16`.
/// Exponents close to zero render without the `e` suffix.
pub fn format_sig(x: &BigFloat, sig: usize) -> String {
    assert!(sig >= 1);
    let Some((m, e2)) = to_mantissa_exponent(x) else {
        return "NaN".into();
    };
    if m.is_zero() {
        return "0".into();
    }
    let neg = m.is_negative();
    let m = m.magnitude().clone();
    // e10 estimate from bit length; correct below after producing digits.
    let bits = m.bits() as i64 + e2;
    let mut e10 = ((bits as f64) * std::f64::consts::LOG10_2).floor() as i64;
    let digits;
    loop {
        // d = round(m * 2^e2 * 10^(sig-1-e10))
        let k = sig as i64 - 1 - e10;
        let mut num = BigInt::from(m.clone());
        let mut den = BigInt::from(1u32);
        if e2 >= 0 {
            num <<= e2 as u64;
        } else {
            den <<= (-e2) as u64;
        }
        if k >= 0 {
            num *= BigInt::from(10u32).pow(k as u32);
        } else {
            den *= BigInt::from(10u32).pow((-k) as u32);
        }
        let d: BigInt = (num + (&den >> 1)) / den;
        let s = d.to_string();
        if s.len() == sig {
            digits = s;
            break;
        }
        // Rounding crossed a power of ten (or the log10 estimate was off).
        e10 += s.len() as i64 - sig as i64;
    }
    let sign = if neg { "-" } else { "" };
    let trimmed = digits.trim_end_matches('0');
    if (-4..=8).contains(&e10) {
        // Plain decimal.
        let mut out = String::new();
        if e10 >= 0 {
            let ip = e10 as usize + 1;
            if digits.len() <= ip {
                out.push_str(&digits);
                out.push_str(&"0".repeat(ip - digits.len()));
            } else {
                out.push_str(&digits[..ip]);
                let frac = digits[ip..].trim_end_matches('0');
                if !frac.is_empty() {
                    out.push('.');
                    out.push_str(frac);
                }
            }
        } else {
            out.push_str("0.");
            out.push_str(&"0".repeat((-e10 - 1) as usize));
            out.push_str(trimmed);
        }
        format!("{sign}{out}")
    } else {
        let head = &trimmed[..1];
        let tail = trimmed[1..].to_string();
        if tail.is_empty() {
            format!("{sign}{head}e{e10}")
        } else {
            format!("{sign}{head}.{tail}e{e10}")
        }
    }
}

/// Exact comparison of two floats (both NaN-free by construction).
pub fn float_eq(a: &BigFloat, b: &BigFloat) -> bool {
    a.cmp(b) == Some(0)
}
