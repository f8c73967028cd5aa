//! Closed-form bounds. Irrational factors are replaced by rational upper
//! bounds so that `density <= bound` checks never pass by rounding.

use std::fmt;

use crate::error::{Error, Result};
use crate::rational::{approx, e_upper, fmt as rfmt, int, pow, rat, sqrt_upper, Rational};

/// A bound of the form `coefficient * e`, with a rational upper bound on
/// its value.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EBound {
    pub coefficient: Rational,
    pub upper: Rational,
}

impl EBound {
    pub fn times_e(coefficient: Rational) -> Self {
        let upper = &coefficient * e_upper();
        EBound { coefficient, upper }
    }
}

impl fmt::Display for EBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*e <= {} (~{})", rfmt(&self.coefficient), rfmt(&self.upper), approx(&self.upper, 6))
    }
}

/// `(2r+2)d + 1`.
fn path_factor(d: usize, r: usize) -> Rational {
    int(((2 * r + 2) * d + 1) as i64)
}

/// `e t ((2r+2)d + 1)`.
pub fn bound_rig(d: usize, r: usize, t: &Rational) -> EBound {
    EBound::times_e(t * path_factor(d, r))
}

/// Upper bound on `sqrt(3g/2) + 3`; exact when the root is rational.
pub fn genus_density(g: usize) -> Rational {
    sqrt_upper(&rat(3 * g as i64, 2)) + int(3)
}

/// `(sqrt(3g/2) + 3) e ((2r+2)d + 1)`, with the square root rounded up.
pub fn bound_surface(d: usize, r: usize, g: usize) -> EBound {
    bound_rig(d, r, &genus_density(g))
}

/// `dr + d/2 - r - 1`.
pub fn bound_lower(d: usize, r: usize) -> Result<Rational> {
    if d < 2 || r < 1 {
        return Err(Error::Parameter(format!("need d >= 2 and r >= 1, got d = {d}, r = {r}")));
    }
    let (d, r) = (d as i64, r as i64);
    Ok(int(d * r) + rat(d, 2) - int(r) - int(1))
}

/// `(6r)^r ∇^{3r}`.
pub fn bound_scol(r: usize, nabla: &Rational) -> Result<Rational> {
    if r < 1 {
        return Err(Error::Parameter("r must be at least 1".into()));
    }
    Ok(pow(&int(6 * r as i64), r as u32) * pow(nabla, 3 * r as u32))
}
