//! Closed-form odometer of rotor-router aggregation on the comb.
//!
//! In shifted coordinates `s = m - |x|`, the tooth at `s` has height
//! `h(s) = floor((s+1)^2 / 3)` and its lowest `r(s)` rotors point back
//! towards the backbone. Along a tooth the odometer follows the half-line
//! template `f(h - y) + e(r - y)` with `e(y) = 2y + 1`, `f(y) = y(y + 1)`.
//!
//! The formulas describe the aggregate of `|B_m|` particles for `m >= 3`;
//! for smaller `m` they are still defined but do not match the process.

use crate::engine::Odometer;
use crate::error::{Error, Result};
use crate::geometry::ClusterShape;

/// Smallest `m` for which [`u_m`] is the aggregation odometer.
pub const FIRST_FORMULA_M: u64 = 3;

/// Largest `m` for which all formula values fit comfortably in `u64`.
pub const MAX_SUPPORTED_M: u64 = 2000;

pub fn h_cluster(x: u64) -> u64 {
    (x + 1) * (x + 1) / 3
}

pub fn e(y: u64) -> u64 {
    2 * y + 1
}

pub fn f(y: u64) -> u64 {
    y * (y + 1)
}

/// Number of rotors pointing back to the backbone on tooth `x`.
pub fn r_of_x(x: u64) -> Result<u64> {
    let (num, den) = match x {
        0 | 1 => return Ok(0),
        _ if x % 3 == 2 => ((x * x + 10) - 7 * x, 18),
        _ => (x * x - x + 6, 6),
    };
    if num % den != 0 {
        return Err(Error::FormulaConsistency { x });
    }
    Ok(num / den)
}

/// Half-line odometer template with extent `h` and frontier `r`.
pub fn u_tilde(h: u64, r: u64, y: i64) -> Result<u64> {
    if r > h {
        return Err(Error::Domain(format!("frontier {r} exceeds extent {h}")));
    }
    if y < 1 || y as u64 > h {
        return Ok(0);
    }
    let y = y as u64;
    Ok(if y <= r { f(h - y) + e(r - y) } else { f(h - y) })
}

/// Odometer in shifted coordinates (`x = m - |x_orig|`, `y = |y_orig|`).
pub fn u_prime(x: u64, y: u64) -> Result<u64> {
    let h = h_cluster(x);
    let r = r_of_x(x)?;
    if y > 0 {
        return u_tilde(h, r, y as i64);
    }
    let base = 2 * f(h) + 2 * e(r) - 2;
    Ok(if x == 2 { base - 1 } else { base })
}

/// Odometer of `|B_m|` particles at `(x, y)`; zero outside `B_m`.
pub fn u_m(m: u64, x: i64, y: i64) -> Result<u64> {
    let ax = x.unsigned_abs();
    if ax > m {
        return Ok(0);
    }
    u_prime(m - ax, y.unsigned_abs())
}

/// Non-zero values of [`u_m`] over `B_m`.
pub fn odometer_map(m: u64) -> Result<Odometer> {
    let mut out = Odometer::new();
    for v in ClusterShape::cluster(m).vertices() {
        let u = u_m(m, v.x, v.y)?;
        if u > 0 {
            out.insert(v, u);
        }
    }
    Ok(out)
}

/// Extent and frontier of the half-line process after `n` particles:
/// the largest `k` with `k(k+1)/2 <= n`, and `n - k(k+1)/2`.
pub fn halfline_h_r(n: u64) -> (u64, u64) {
    let mut k = ((2.0 * n as f64).sqrt()) as u64;
    while k * (k + 1) / 2 > n {
        k -= 1;
    }
    while (k + 1) * (k + 2) / 2 <= n {
        k += 1;
    }
    (k, n - k * (k + 1) / 2)
}

/// Half-line odometer after `n` particles, indexed by `y` in `0..=extent`.
pub fn halfline_odometer(n: u64) -> Vec<u64> {
    let (h, r) = halfline_h_r(n);
    (0..=h as i64)
        .map(|y| u_tilde(h, r, y).expect("frontier never exceeds extent"))
        .collect()
}

/// Vertices of `B_m` whose neighbours are covered by the exceptional
/// cases of the closed form (checked by simulation rather than algebra).
pub fn exceptional_points() -> [(u64, u64); 6] {
    [(1, 1), (2, 1), (5, 1), (8, 1), (2, 0), (5, 0)]
}
