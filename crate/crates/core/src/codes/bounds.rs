//! Counting bounds on quantum code parameters, evaluated in exact integers.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Outcome of an inequality `lhs ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BoundCheck {
    pub lhs: BigUint,
    pub rhs: BigUint,
    pub holds: bool,
}

impl BoundCheck {
    fn new(lhs: BigUint, rhs: BigUint) -> Self {
        let holds = lhs <= rhs;
        BoundCheck { lhs, rhs, holds }
    }

    /// The inequality holds with equality.
    pub fn is_tight(&self) -> bool {
        self.lhs == self.rhs
    }
}

fn binomial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// `Σ_{j=0}^{r} 3^j C(n, j)`: Paulis of weight at most `r` up to phase.
fn ball_volume(n: u64, r: u64) -> BigUint {
    let mut total = BigUint::zero();
    let mut pow3 = BigUint::one();
    for j in 0..=r.min(n) {
        total += &pow3 * binomial(n, j);
        pow3 *= 3u32;
    }
    total
}

fn check_nk(n: u64, k: u64) -> Result<()> {
    if k > n {
        return Err(Error::Domain(alloc::format!("k = {k} exceeds n = {n}")));
    }
    Ok(())
}

/// Nondegenerate Hamming bound `2^k Σ_{j≤t} 3^j C(n,j) ≤ 2^n` for a code
/// correcting `t` errors.
pub fn hamming_bound(n: u64, k: u64, t: u64) -> Result<BoundCheck> {
    check_nk(n, k)?;
    let lhs = ball_volume(n, t) << k as usize;
    Ok(BoundCheck::new(lhs, BigUint::one() << n as usize))
}

/// Gilbert-Varshamov condition `2^k Σ_{j≤d-1} 3^j C(n,j) ≤ 2^n`, under
/// which an `[[n, k, d]]` code is guaranteed to exist.
pub fn gv_bound(n: u64, k: u64, d: u64) -> Result<BoundCheck> {
    check_nk(n, k)?;
    if d == 0 {
        return Err(Error::Domain("distance must be at least 1".into()));
    }
    let lhs = ball_volume(n, d - 1) << k as usize;
    Ok(BoundCheck::new(lhs, BigUint::one() << n as usize))
}

/// Singleton bound `n - k ≥ 2(d - 1)`, reported as `2(d-1) ≤ n - k`.
pub fn singleton_bound(n: u64, k: u64, d: u64) -> Result<BoundCheck> {
    check_nk(n, k)?;
    if d == 0 {
        return Err(Error::Domain("distance must be at least 1".into()));
    }
    Ok(BoundCheck::new(
        BigUint::from(2 * (d - 1)),
        BigUint::from(n - k),
    ))
}

/// Binary entropy in bits; `H(0) = H(1) = 0`.
pub fn binary_entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * libm::log2(x) - (1.0 - x) * libm::log2(1.0 - x)
}

/// Asymptotic achievable-rate window for relative distance `p = d/2n`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RateBounds {
    pub lower: f64,
    pub upper: f64,
}

/// `1 - 2p log₂3 - H(2p) ≤ R ≤ 1 - p log₂3 - H(p)`, each clamped to `[0, 1]`.
pub fn asymptotic_rate_bounds(p: f64) -> Result<RateBounds> {
    if !(p > 0.0 && p <= 0.25) {
        return Err(Error::Domain(alloc::format!(
            "relative distance {p} outside (0, 1/4]"
        )));
    }
    let log3 = libm::log2(3.0);
    let clamp = |v: f64| v.clamp(0.0, 1.0);
    Ok(RateBounds {
        lower: clamp(1.0 - 2.0 * p * log3 - binary_entropy(2.0 * p)),
        upper: clamp(1.0 - p * log3 - binary_entropy(p)),
    })
}
