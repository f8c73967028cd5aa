//! Exact rational arithmetic helpers.
//!
//! All densities and bounds are compared as [`Rational`] values; floating
//! point never takes part in a comparison.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

pub type Rational = num_rational::BigRational;

pub fn rat(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

/// Rational lower bound on e (e = 2.718281828459045...).
pub fn e_lower() -> Rational {
    Rational::new(BigInt::from(2_718_281_828_459i64), BigInt::from(1_000_000_000_000i64))
}

/// Rational upper bound on e, 12 decimal digits.
pub fn e_upper() -> Rational {
    Rational::new(BigInt::from(2_718_281_828_460i64), BigInt::from(1_000_000_000_000i64))
}

/// `base^exp` for a non-negative integer exponent, with `0^0 = 1`.
pub fn pow(base: &Rational, exp: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..exp {
        acc *= base;
    }
    acc
}

pub fn ceil_to_u64(x: &Rational) -> u64 {
    let c = x.ceil().to_integer();
    u64::try_from(c).expect("non-negative value that fits in u64")
}

/// Square root of a non-negative rational: exact when it is rational,
/// otherwise `None`.
pub fn exact_sqrt(x: &Rational) -> Option<Rational> {
    assert!(!x.is_negative(), "square root of a negative rational");
    let n = x.numer();
    let d = x.denom();
    let sn = n.sqrt();
    let sd = d.sqrt();
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rational::new(sn, sd))
}

/// Sound upper bound on `sqrt(x)`: exact if rational, otherwise within
/// `1e-12` above.
pub fn sqrt_upper(x: &Rational) -> Rational {
    if let Some(s) = exact_sqrt(x) {
        return s;
    }
    let scale = BigInt::from(10u64).pow(12);
    // isqrt(floor(x * 10^24)) = floor(sqrt(x) * 10^12), so adding one is strictly above.
    let scaled = (x * Rational::from_integer(&scale * &scale)).floor().to_integer();
    let root = scaled.sqrt() + BigInt::one();
    Rational::new(root, scale)
}

/// Renders a rational as `p/q`, or `p` when integral.
pub fn fmt(x: &Rational) -> String {
    if x.denom().is_one() || x.numer().is_zero() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Decimal approximation for human-readable output only.
pub fn approx(x: &Rational, digits: usize) -> String {
    let neg = x.is_negative();
    let a = x.abs();
    let scale = BigInt::from(10u64).pow(digits as u32);
    let scaled = (a * Rational::from_integer(scale.clone())).round().to_integer();
    let int_part = &scaled / &scale;
    let frac_part = &scaled % &scale;
    let mut s = String::new();
    if neg && !scaled.is_zero() {
        s.push('-');
    }
    s.push_str(&int_part.to_string());
    if digits > 0 {
        s.push('.');
        s.push_str(&format!("{:0>width$}", frac_part.to_string(), width = digits));
    }
    s
}
