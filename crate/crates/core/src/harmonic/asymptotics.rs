//! Growth of the cluster-profile sequence `e(x)` and its slope `e(x)/x`.
//!
//! With `P(x) = h(2) h(3) ... h(x)` the scaled terms `E(x) = e(x) P(x)`
//! satisfy the division-free recursion
//! `E(x+1) = 2 (h(x) + 1) E(x) - h(x-1) h(x) E(x-1)`,
//! so long runs stay in integer arithmetic and ratios of consecutive
//! terms only involve small factors.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::recursion::RationalSeq;
use crate::error::{Error, Result};
use crate::oracle::h_cluster;

fn big(n: u128) -> BigInt {
    BigInt::from(n)
}

fn rat(n: i128) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Streams `(x, E(x), P(x))` for `x = 0, 1, 2, ...`.
struct Scaled {
    x: u64,
    prev: BigInt,
    cur: BigInt,
    scale: BigInt,
}

impl Scaled {
    fn new() -> Self {
        Scaled { x: 0, prev: BigInt::zero(), cur: BigInt::one(), scale: BigInt::one() }
    }

    fn advance(&mut self) {
        let x = self.x;
        let next = if x == 0 {
            BigInt::one()
        } else {
            let h = h_cluster(x) as u128;
            let hm = h_cluster(x - 1) as u128;
            &self.cur * big(2 * (h + 1)) - &self.prev * big(hm * h)
        };
        self.prev = std::mem::replace(&mut self.cur, next);
        self.x += 1;
        if self.x >= 2 {
            self.scale *= big(h_cluster(self.x) as u128);
        }
    }

    /// `e(x)` in lowest terms.
    fn value(&self) -> BigRational {
        BigRational::new(self.cur.clone(), self.scale.clone())
    }

    /// `e(x) / x` in lowest terms.
    fn slope(&self) -> BigRational {
        BigRational::new(self.cur.clone(), &self.scale * big(self.x as u128))
    }

    /// Whether `slope(x+1) * den < slope(x) * num`, given the terms at
    /// `x` (self before advancing) and `x+1`.
    fn ratio_below(e_x: &BigInt, e_next: &BigInt, x: u64, num: &BigInt, den: &BigInt) -> bool {
        // slope(x+1)/slope(x) = E(x+1) x / (E(x) h(x+1) (x+1))
        let lhs = e_next * big(x as u128) * den;
        let rhs = e_x * big(h_cluster(x + 1) as u128 * (x as u128 + 1)) * num;
        lhs < rhs
    }
}

/// `e(0), ..., e(len - 1)` for the cluster profile, seeded with `e(0) = e(1) = 1`.
pub fn cluster_sequence(len: usize) -> RationalSeq {
    let mut s = Scaled::new();
    let mut out = Vec::with_capacity(len);
    for _ in 0..len {
        out.push(s.value());
        s.advance();
    }
    RationalSeq::new(out)
}

/// One step `A_k e(k-1) = B_k e(k)` of the recursion on
/// `(e(3k), e(3k+1), e(3k+2))`, solved by forward substitution.
pub fn matrix_recursion_step(k: u64, prev: &[BigRational; 3]) -> Result<[BigRational; 3]> {
    if k == 0 {
        return Err(Error::Domain("matrix recursion starts at k = 1".into()));
    }
    let k = k as i128;
    let k2 = k * k;
    let a0 = rat(3 * k2 - 2 * k) * &prev[1] + rat(-6 * k2 - 2) * &prev[2];
    let a1 = rat(3 * k2) * &prev[2];
    let b00 = rat(-3 * k2 - 2 * k);
    let (b10, b11) = (rat(6 * k2 + 4 * k + 2), rat(-3 * k2 - 4 * k - 1));
    let (b20, b21, b22) = (rat(3 * k2 + 2 * k), rat(-6 * k2 - 8 * k - 4), rat(3 * k2 + 6 * k + 3));
    assert!(!b00.is_zero() && !b11.is_zero() && !b22.is_zero());
    let e0 = a0 / b00;
    let e1 = (a1 - &b10 * &e0) / b11;
    let e2 = -(&b20 * &e0 + &b21 * &e1) / b22;
    Ok([e0, e1, e2])
}

/// `ē(0), ..., ē(k_max)` from `ē(0) = (1, 1, 4/3)`.
pub fn matrix_sequence(k_max: u64) -> Result<Vec<[BigRational; 3]>> {
    let mut out = vec![[rat(1), rat(1), BigRational::new(4.into(), 3.into())]];
    for k in 1..=k_max {
        let next = matrix_recursion_step(k, &out[k as usize - 1])?;
        out.push(next);
    }
    Ok(out)
}

/// `(numerator, denominator)` of the bound function for residue `x mod 3`.
pub fn bound_function(x: u64) -> (BigInt, BigInt) {
    let x = x as u128;
    let num = match x % 3 {
        0 => x * x + 2 * x,
        1 => x * x + 3 * x,
        _ => x * x * x * x + 7 * x * x * x + 17 * x * x + 17 * x,
    };
    let gap = match x % 3 {
        0 => 1,
        1 => 2,
        _ => 6,
    };
    (big(num), big(num + gap))
}

/// Check `e(x+1)/(x+1) < f(x) e(x)/x` for `9 <= x <= x_max`, and plain
/// strict decrease of `e(x)/x` for `1 <= x < 9`.
pub fn verify_monotone_bounds(x_max: u64) -> Result<bool> {
    if x_max < 9 {
        return Err(Error::Domain("bounds are checked from x = 9".into()));
    }
    let mut s = Scaled::new();
    s.advance();
    let one = BigInt::one();
    while s.x <= x_max {
        let x = s.x;
        let e_x = s.cur.clone();
        s.advance();
        let ok = if x < 9 {
            Scaled::ratio_below(&e_x, &s.cur, x, &one, &one)
        } else {
            let (num, den) = bound_function(x);
            Scaled::ratio_below(&e_x, &s.cur, x, &num, &den)
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Bracket for `c = lim e(x)/x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CBracket {
    pub x_max: u64,
    /// `e(X)/X` minus twice the tail extrapolated from the last three steps.
    pub lower: BigRational,
    /// `e(X)/X`.
    pub upper: BigRational,
    /// `e(20)/20`.
    pub at_20: BigRational,
}

impl CBracket {
    pub fn width(&self) -> BigRational {
        &self.upper - &self.lower
    }

    pub fn lower_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.lower).unwrap_or(f64::NAN)
    }

    pub fn upper_f64(&self) -> f64 {
        num_traits::ToPrimitive::to_f64(&self.upper).unwrap_or(f64::NAN)
    }
}

/// Run the exact recursion to `x_max`, check that `e(x)/x` strictly
/// decreases from `x = 9` and stays below `1/2` from `x = 20`, and bracket
/// its limit.
///
/// The upper end is rigorous given monotonicity. The lower end assumes the
/// remaining decrease is at most twice what the last step of length three
/// predicts for a `1/x` tail; it is a numerical estimate, not a bound.
pub fn estimate_c(x_max: u64) -> Result<CBracket> {
    if x_max < 21 {
        return Err(Error::Domain("estimate_c needs X >= 21".into()));
    }
    let one = BigInt::one();
    let mut s = Scaled::new();
    s.advance();
    let mut history: Vec<BigRational> = Vec::new();
    let mut at_20 = None;
    while s.x < x_max {
        let x = s.x;
        let e_x = s.cur.clone();
        s.advance();
        if x >= 9 && !Scaled::ratio_below(&e_x, &s.cur, x, &one, &one) {
            return Err(Error::TheoremContradiction { x: x + 1 });
        }
        if s.x >= 20 {
            // 2 E(x) < x P(x)
            if &s.cur * big(2) >= &s.scale * big(s.x as u128) {
                return Err(Error::TheoremContradiction { x: s.x });
            }
            if s.x == 20 {
                at_20 = Some(s.slope());
            }
        }
        if s.x + 3 >= x_max {
            history.push(s.slope());
        }
    }
    let upper = history.last().cloned().expect("x_max >= 21");
    let earlier = history.first().cloned().expect("x_max >= 21");
    let steps = BigRational::new(BigInt::from(x_max), BigInt::from(3));
    let lower = &upper - rat(2) * steps * (earlier - &upper);
    Ok(CBracket { x_max, lower, upper, at_20: at_20.expect("x_max >= 21") })
}
