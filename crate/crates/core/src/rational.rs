//! Small-denominator rational approximations for report readability.

use std::fmt;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Fraction {
    pub numer: i64,
    pub denom: u64,
}

impl Fraction {
    pub fn value(self) -> f64 {
        self.numer as f64 / self.denom as f64
    }
}

impl fmt::Display for Fraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denom == 1 {
            write!(f, "{}", self.numer)
        } else {
            write!(f, "{}/{}", self.numer, self.denom)
        }
    }
}

/// First continued-fraction convergent of `x` within `max_residual`, provided
/// its denominator does not exceed `max_denom`.
pub fn snap(x: f64, max_denom: u64, max_residual: f64) -> Option<Fraction> {
    if !x.is_finite() || x.abs() > 1e12 {
        return None;
    }
    let target = x.abs();
    let sign = if x < 0.0 { -1 } else { 1 };
    let (mut h_prev, mut h) = (0u64, 1u64);
    let (mut k_prev, mut k) = (1u64, 0u64);
    let mut y = target;
    for _ in 0..64 {
        let a = y.floor();
        let a_int = a as u64;
        let h_next = a_int.checked_mul(h)?.checked_add(h_prev)?;
        let k_next = a_int.checked_mul(k)?.checked_add(k_prev)?;
        if k_next > max_denom {
            return None;
        }
        (h_prev, h) = (h, h_next);
        (k_prev, k) = (k, k_next);
        if (target - h as f64 / k as f64).abs() < max_residual {
            return Some(Fraction {
                numer: sign * i64::try_from(h).ok()?,
                denom: k,
            });
        }
        let frac = y - a;
        if frac <= f64::EPSILON {
            return None;
        }
        y = 1.0 / frac;
    }
    None
}
