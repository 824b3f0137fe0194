//! Locating the Netto block that carries difference 1.
//!
//! With `p = 6t + 1` and Netto blocks `B_i = omega^i {1, z, z^2}`, the
//! differences of all blocks form a 6 x t array whose entry `(r, s)` is
//! `omega^(c + r t + s)`, where `omega^c = omega (omega^(2t) - 1)`. Column `s`
//! (0-based) holds the differences of the block at index `s`. Knowing `c`
//! gives the column of the entry 1 and vice versa.

use super::DesignError;
use crate::algebra::PrimeField;

/// Row, column and offset logarithm of the entry 1 in the difference array.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NettoPosition {
    pub c: u64,
    /// Row in `0..6`.
    pub r: u64,
    /// 0-based block index in `0..t`.
    pub s: u64,
}

fn netto_params(p: u64) -> Result<(PrimeField, u64), DesignError> {
    if p % 6 != 1 {
        return Err(DesignError::BadModulus {
            modulus: p,
            reason: "need p = 1 (mod 6)".into(),
        });
    }
    let field = PrimeField::new(p).map_err(|_| DesignError::BadModulus {
        modulus: p,
        reason: "not prime".into(),
    })?;
    Ok((field, (p - 1) / 6))
}

fn offset_element(field: &PrimeField, t: u64) -> u64 {
    let w = field.omega();
    field.mul(w, field.sub(field.omega_pow(2 * t as i64), 1))
}

/// `c = log(omega (omega^(2t) - 1))`, by discrete logarithm.
pub fn netto_offset_log(p: u64) -> Result<u64, DesignError> {
    let (field, t) = netto_params(p)?;
    Ok(field.discrete_log(offset_element(&field, t))?)
}

/// Position of the entry 1 given the offset logarithm `c`:
/// `s = (t - c) mod t` and the row `r` with `c + r t + s = 0 (mod 6t)`.
pub fn netto_index_from_dlog(p: u64, c: u64) -> Result<NettoPosition, DesignError> {
    let (_, t) = netto_params(p)?;
    if c > p - 2 {
        return Err(DesignError::OutOfRange(format!("exponent {c} outside [0, {}]", p - 2)));
    }
    let n = 6 * t;
    let s = (t - c % t) % t;
    let r = ((2 * n - c - s) % n) / t;
    Ok(NettoPosition { c, r, s })
}

/// `c = (6t - r t - s) mod 6t`.
pub fn netto_dlog_from_index(p: u64, r: u64, s: u64) -> Result<u64, DesignError> {
    let (_, t) = netto_params(p)?;
    if r > 5 {
        return Err(DesignError::OutOfRange(format!("row {r} outside [0, 5]")));
    }
    if s >= t {
        return Err(DesignError::OutOfRange(format!(
            "block index {s} outside [0, {}]",
            t - 1
        )));
    }
    let n = 6 * t;
    Ok((2 * n - r * t - s) % n)
}

/// Finds the entry 1 without a discrete logarithm: scans the columns for the
/// block whose differences contain 1, then the six rows of that column.
pub fn netto_unit_position(p: u64) -> Result<NettoPosition, DesignError> {
    let (field, t) = netto_params(p)?;
    let base = offset_element(&field, t);
    for s in 0..t {
        let col = field.mul(base, field.omega_pow(s as i64));
        let step = field.omega_pow(t as i64);
        let mut x = col;
        for r in 0..6 {
            if x == 1 {
                return Ok(NettoPosition {
                    c: netto_dlog_from_index(p, r, s)?,
                    r,
                    s,
                });
            }
            x = field.mul(x, step);
        }
    }
    unreachable!("omega is primitive, so 1 appears in the difference array")
}
