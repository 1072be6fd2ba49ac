//! The order-theoretic norm `⌈a⌉ = inf{m/n : m·1 − n·a ∈ A_Σ}`, the
//! quasinorm `‖a‖² = ⌈aa*⌉ ∨ ⌈a*a⌉`, the order `≤` and orthogonality.

use super::algebraic::Algebraic;
use super::matrix::RMatrix;
use super::psd::psd_test;
use super::rational::{fmt_q, is_integer, simplest_between, Q};
use crate::error::{Error, Result};
use num_traits::{Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// The two unital backends. Integers are carried as `1×1` matrices with an
/// integral entry.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RingBackend {
    RationalMatrices(usize),
    Integers,
}

impl RingBackend {
    pub fn dim(&self) -> usize {
        match self {
            RingBackend::RationalMatrices(d) => *d,
            RingBackend::Integers => 1,
        }
    }

    pub fn unital(&self) -> bool {
        true
    }

    pub fn one(&self) -> RMatrix {
        RMatrix::identity(self.dim())
    }

    pub fn contains(&self, a: &RMatrix) -> bool {
        a.dim() == self.dim() && (*self != RingBackend::Integers || is_integer(a.get(0, 0)))
    }

    fn check(&self, a: &RMatrix) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{a} is not an element of the {self:?} backend")))
        }
    }
}

/// A value in `[0, ∞]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ExtNonneg {
    Finite(Algebraic),
    Infinite,
}

impl ExtNonneg {
    pub fn zero() -> Self {
        ExtNonneg::Finite(Algebraic::zero())
    }

    pub fn rational(x: Q) -> Self {
        assert!(!x.is_negative(), "negative value");
        ExtNonneg::Finite(Algebraic::rational(x))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtNonneg::Finite(x) if x.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtNonneg::Finite(_))
    }

    pub fn finite(&self) -> Option<&Algebraic> {
        match self {
            ExtNonneg::Finite(x) => Some(x),
            ExtNonneg::Infinite => None,
        }
    }

    pub fn as_rational(&self) -> Option<&Q> {
        self.finite().and_then(Algebraic::as_rational)
    }

    pub fn add(&self, o: &Self) -> Self {
        match (self, o) {
            (ExtNonneg::Finite(a), ExtNonneg::Finite(b)) => ExtNonneg::Finite(a.add(b)),
            _ => ExtNonneg::Infinite,
        }
    }

    /// Product with `0 · ∞ = 0`.
    pub fn mul(&self, o: &Self) -> Self {
        match (self, o) {
            (ExtNonneg::Finite(a), ExtNonneg::Finite(b)) => ExtNonneg::Finite(a.mul(b)),
            (x, _) | (_, x) if x.is_zero() => ExtNonneg::zero(),
            _ => ExtNonneg::Infinite,
        }
    }

    /// `self ≤ x + y` without building the sum when intervals decide it.
    pub fn le_add(&self, x: &Self, y: &Self) -> bool {
        match (self, x, y) {
            (ExtNonneg::Finite(l), ExtNonneg::Finite(a), ExtNonneg::Finite(b)) => l.le_sum(a, b),
            _ => *self <= x.add(y),
        }
    }

    /// `self ≤ xy` without building the product when intervals decide it.
    pub fn le_mul(&self, x: &Self, y: &Self) -> bool {
        match (self, x, y) {
            (ExtNonneg::Finite(l), ExtNonneg::Finite(a), ExtNonneg::Finite(b)) => l.le_product(a, b),
            _ => *self <= x.mul(y),
        }
    }

    pub fn square(&self) -> Self {
        match self {
            ExtNonneg::Finite(a) => ExtNonneg::Finite(a.square()),
            ExtNonneg::Infinite => ExtNonneg::Infinite,
        }
    }

    pub fn scale(&self, t: &Q) -> Self {
        match self {
            ExtNonneg::Finite(a) => ExtNonneg::Finite(a.scale(t)),
            ExtNonneg::Infinite if t.is_zero() => ExtNonneg::zero(),
            ExtNonneg::Infinite => ExtNonneg::Infinite,
        }
    }

    pub fn max(self, o: Self) -> Self {
        std::cmp::max(self, o)
    }

    pub fn cmp_rational(&self, x: &Q) -> Ordering {
        match self {
            ExtNonneg::Finite(a) => a.cmp_rational(x),
            ExtNonneg::Infinite => Ordering::Greater,
        }
    }
}

impl fmt::Debug for ExtNonneg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNonneg::Finite(a) => write!(f, "{a:?}"),
            ExtNonneg::Infinite => write!(f, "inf"),
        }
    }
}

impl fmt::Display for ExtNonneg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtNonneg::Finite(a) => write!(f, "{a}"),
            ExtNonneg::Infinite => write!(f, "inf"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormMode {
    Exact,
    /// A rational within the given distance above the infimum.
    Approx(Q),
}

/// Membership in `A_Σ`, the sums of *-squares.
pub fn sigma_membership(backend: RingBackend, a: &RMatrix) -> Result<bool> {
    backend.check(a)?;
    match backend {
        RingBackend::Integers => Ok(!a.get(0, 0).is_negative()),
        RingBackend::RationalMatrices(_) => {
            if !a.is_symmetric() {
                return Ok(false);
            }
            psd_test(a)
        }
    }
}

/// `x·1 − a ∈ A_Σ` for rational `x` (clearing the denominator of `x` keeps
/// this equivalent to the `m/n` form).
fn feasible(backend: RingBackend, a: &RMatrix, x: &Q) -> Result<bool> {
    let m = &RMatrix::scalar(a.dim(), x.clone()) - a;
    match backend {
        // On ℤ, n·(x − a) ≥ 0 for n clearing x's denominator.
        RingBackend::Integers => Ok(!m.get(0, 0).is_negative()),
        RingBackend::RationalMatrices(_) => sigma_membership(backend, &m),
    }
}

pub fn ceil_norm(backend: RingBackend, a: &RMatrix, mode: &NormMode) -> Result<ExtNonneg> {
    backend.check(a)?;
    if !a.is_symmetric() {
        return Ok(ExtNonneg::Infinite);
    }
    match mode {
        NormMode::Exact => ceil_exact(backend, a),
        NormMode::Approx(eps) => {
            if !eps.is_positive() {
                return Err(Error::Invalid(format!("eps must be positive, got {}", fmt_q(eps))));
            }
            ceil_approx(backend, a, eps).map(ExtNonneg::rational)
        }
    }
}

/// Largest eigenvalue's nonnegative part by Sturm isolation on the
/// characteristic polynomial, cross-checked against the `A_Σ` oracle.
fn ceil_exact(backend: RingBackend, a: &RMatrix) -> Result<ExtNonneg> {
    let p = a.char_poly();
    // Symmetric, so real-rooted and Descartes' count is exact.
    let value = if p.coefficient_sign_changes() == 0 {
        Algebraic::zero()
    } else {
        Algebraic::largest_positive_root(&p).expect("a sign change means a positive eigenvalue")
    };
    let disagree = || Error::Invalid(format!("eigenvalue isolation and psd oracle disagree on {a}"));
    match &value {
        Algebraic::Rational(x) => {
            if !feasible(backend, a, x)? {
                return Err(disagree());
            }
            if x.is_positive() {
                let below = x - x / Q::from_integer(1024.into());
                if feasible(backend, a, &below)? {
                    return Err(disagree());
                }
            }
        }
        Algebraic::Root(_) => {
            let (lo, hi) = value.interval();
            if !feasible(backend, a, &hi)? || feasible(backend, a, &lo)? {
                return Err(disagree());
            }
        }
    }
    Ok(ExtNonneg::Finite(value))
}

/// Bisection on `[0, Gershgorin bound]` with the oracle. Returns the simplest
/// feasible rational of the final bracket, else its upper end.
fn ceil_approx(backend: RingBackend, a: &RMatrix, eps: &Q) -> Result<Q> {
    let mut lo = Q::zero();
    if feasible(backend, a, &lo)? {
        return Ok(lo);
    }
    let mut hi = a.gershgorin_bound();
    let two = Q::from_integer(2.into());
    while &(&hi - &lo) > eps {
        let mid = (&lo + &hi) / &two;
        if feasible(backend, a, &mid)? {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    let s = simplest_between(&lo, &hi);
    if s != lo && feasible(backend, a, &s)? {
        Ok(s)
    } else {
        Ok(hi)
    }
}

/// `‖a‖² = ⌈aa*⌉ ∨ ⌈a*a⌉`.
pub fn quasi_norm_sq(backend: RingBackend, a: &RMatrix, mode: &NormMode) -> Result<ExtNonneg> {
    let x = ceil_norm(backend, &(a * &a.star()), mode)?;
    let y = ceil_norm(backend, &(&a.star() * a), mode)?;
    Ok(x.max(y))
}

/// `a ≤ b ⇔ ⌈a − b⌉ = 0`.
pub fn leq(backend: RingBackend, a: &RMatrix, b: &RMatrix) -> Result<bool> {
    Ok(ceil_norm(backend, &(a - b), &NormMode::Exact)?.is_zero())
}

/// `a ≤ b` read as `b − a ∈ A_Σ`; equivalent to [`leq`] on both backends.
pub fn leq_psd(backend: RingBackend, a: &RMatrix, b: &RMatrix) -> Result<bool> {
    sigma_membership(backend, &(b - a))
}

/// `a ⊥ b ⇔ ab* = 0`.
pub fn orthogonal(a: &RMatrix, b: &RMatrix) -> bool {
    (a * &b.star()).is_zero()
}

/// `a ≺ b ⇔ a = ab`.
pub fn ring_dominates(a: &RMatrix, b: &RMatrix) -> bool {
    &(a * b) == a
}

/// `‖a‖ ≤ 1`, exactly.
pub fn in_unit_ball(backend: RingBackend, a: &RMatrix) -> Result<bool> {
    Ok(quasi_norm_sq(backend, a, &NormMode::Exact)?.cmp_rational(&Q::from_integer(1.into())) != Ordering::Greater)
}

/// `1e-k` for `10^-k`, otherwise `p/q`.
pub fn fmt_eps(eps: &Q) -> String {
    use num_bigint::BigInt;
    use num_traits::One;
    if eps.numer().is_one() {
        let mut d = eps.denom().clone();
        let mut k = 0;
        let ten = BigInt::from(10);
        while &d % &ten == BigInt::zero() {
            d /= &ten;
            k += 1;
        }
        if d.is_one() && k > 0 {
            return format!("1e-{k}");
        }
    }
    fmt_q(eps)
}
