//! Exact real algebraic numbers: a rational, or the unique root of a
//! squarefree rational polynomial inside an isolating open interval.
//!
//! Comparisons are exact. Equality of two isolated roots is decided by
//! checking whether the gcd of their polynomials has a root in the overlap of
//! the intervals; inequality by refining until the intervals separate.

use super::poly::{count_roots_with, Poly};
use super::rational::{ceil_int, floor_int, fmt_q, q_to_f64, Q};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

#[derive(Clone)]
pub enum Algebraic {
    Rational(Q),
    Root(Root),
}

/// Invariants: `poly` is squarefree with exactly one root in the open
/// interval `(lo, hi)`, nonzero at both endpoints, and that root is
/// irrational.
#[derive(Clone)]
pub struct Root {
    poly: Poly,
    lo: Q,
    hi: Q,
}

impl Root {
    pub fn poly(&self) -> &Poly {
        &self.poly
    }

    pub fn interval(&self) -> (&Q, &Q) {
        (&self.lo, &self.hi)
    }
}

impl Algebraic {
    pub fn rational(x: Q) -> Self {
        Algebraic::Rational(x)
    }

    pub fn zero() -> Self {
        Algebraic::Rational(Q::zero())
    }

    pub fn as_rational(&self) -> Option<&Q> {
        match self {
            Algebraic::Rational(x) => Some(x),
            Algebraic::Root(_) => None,
        }
    }

    /// The root of `poly` isolated in `(lo, hi)`. `poly` is reduced to its
    /// squarefree part; the caller guarantees a unique root in the open
    /// interval.
    pub fn from_isolated(poly: &Poly, lo: Q, hi: Q) -> Self {
        let poly = poly.squarefree();
        let mut a = lo;
        let mut b = hi;
        // Move endpoints off roots (they are not the isolated root).
        if poly.eval(&a).is_zero() || poly.eval(&b).is_zero() {
            let seq = poly.sturm_sequence();
            while poly.eval(&a).is_zero() || poly.eval(&b).is_zero() {
                let mid = (&a + &b) / Q::from_integer(2.into());
                if poly.eval(&mid).is_zero() {
                    return Algebraic::Rational(mid);
                }
                let left = count_open(&seq, &poly, &a, &mid);
                if left == 1 {
                    b = mid;
                } else {
                    a = mid;
                }
            }
        }
        Root { poly, lo: a, hi: b }.normalize()
    }

    /// The largest real root of `p`, if any.
    pub fn largest_root(p: &Poly) -> Option<Self> {
        let sf = p.squarefree();
        if sf.degree() == 0 {
            return None;
        }
        let bound = sf.root_bound();
        Self::largest_root_in(&sf, -bound.clone(), bound)
    }

    /// The largest positive root of `p`, if any.
    pub fn largest_positive_root(p: &Poly) -> Option<Self> {
        let sf = p.squarefree();
        if sf.degree() == 0 {
            return None;
        }
        let bound = sf.root_bound();
        Self::largest_root_in(&sf, Q::zero(), bound)
    }

    /// Largest root of the squarefree `sf` in `(lo, hi]`.
    fn largest_root_in(sf: &Poly, mut lo: Q, hi: Q) -> Option<Self> {
        let seq = sf.sturm_sequence();
        if count_roots_with(&seq, &lo, &hi) == 0 {
            return None;
        }
        // Shrink from below until exactly one root remains in (lo, hi].
        let mut top = hi;
        loop {
            let c = count_roots_with(&seq, &lo, &top);
            if c == 1 {
                break;
            }
            let mid = (&lo + &top) / Q::from_integer(2.into());
            if count_roots_with(&seq, &mid, &top) >= 1 {
                lo = mid;
            } else {
                top = mid;
            }
        }
        if sf.eval(&top).is_zero() {
            return Some(Algebraic::Rational(top));
        }
        Some(Self::from_isolated(sf, lo, top))
    }

    /// A rational interval containing the number (degenerate when rational).
    pub fn interval(&self) -> (Q, Q) {
        match self {
            Algebraic::Rational(x) => (x.clone(), x.clone()),
            Algebraic::Root(r) => (r.lo.clone(), r.hi.clone()),
        }
    }

    /// Shrink the isolating interval to width at most `w`.
    pub fn refine_to(&mut self, w: &Q) {
        while let Algebraic::Root(r) = self {
            if &(&r.hi - &r.lo) <= w {
                return;
            }
            self.bisect();
        }
    }

    /// Halve the isolating interval once.
    pub fn bisect(&mut self) {
        if let Algebraic::Root(r) = self {
            let mid = (&r.lo + &r.hi) / Q::from_integer(2.into());
            let sm = r.poly.sign_at(&mid);
            if sm == Ordering::Equal {
                // Cannot happen for an irrational root, kept for safety.
                *self = Algebraic::Rational(mid);
                return;
            }
            if r.poly.sign_at(&r.lo) == sm {
                r.lo = mid;
            } else {
                r.hi = mid;
            }
        }
    }

    pub fn to_f64(&self) -> f64 {
        let mut c = self.clone();
        c.refine_to(&Q::new(1.into(), (1u64 << 60).into()));
        let (a, b) = c.interval();
        (q_to_f64(&a) + q_to_f64(&b)) / 2.0
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Algebraic::Rational(x) if x.is_zero())
    }

    pub fn signum(&self) -> Ordering {
        self.cmp_rational(&Q::zero())
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, x: &Q) -> Ordering {
        match self {
            Algebraic::Rational(y) => y.cmp(x),
            Algebraic::Root(_) => {
                let mut c = self.clone();
                loop {
                    let (a, b) = c.interval();
                    if &b <= x {
                        return Ordering::Less;
                    }
                    if &a >= x {
                        return Ordering::Greater;
                    }
                    c.bisect();
                    if let Algebraic::Rational(y) = &c {
                        return y.cmp(x);
                    }
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            Algebraic::Rational(x) => Algebraic::Rational(-x),
            Algebraic::Root(r) => Algebraic::Root(Root {
                poly: r.poly.reflect().monic(),
                lo: -r.hi.clone(),
                hi: -r.lo.clone(),
            }),
        }
    }

    /// `t · self` for a rational `t`.
    pub fn scale(&self, t: &Q) -> Self {
        match self {
            Algebraic::Rational(x) => Algebraic::Rational(x * t),
            Algebraic::Root(_) if t.is_zero() => Algebraic::zero(),
            Algebraic::Root(r) => {
                let (a, b) = (&r.lo * t, &r.hi * t);
                let (lo, hi) = if t.is_positive() { (a, b) } else { (b, a) };
                Algebraic::Root(Root {
                    poly: r.poly.scale_roots(t).monic(),
                    lo,
                    hi,
                })
            }
        }
    }

    pub fn add_rational(&self, t: &Q) -> Self {
        match self {
            Algebraic::Rational(x) => Algebraic::Rational(x + t),
            Algebraic::Root(r) => Algebraic::Root(Root {
                poly: r.poly.shift_roots(t).monic(),
                lo: &r.lo + t,
                hi: &r.hi + t,
            }),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        match (self, other) {
            (Algebraic::Rational(x), y) | (y, Algebraic::Rational(x)) => y.add_rational(x),
            (Algebraic::Root(a), Algebraic::Root(b)) => {
                let p = Poly::roots_sum_poly(&a.poly, &b.poly).squarefree();
                combine(self.clone(), other.clone(), p, |x, y| {
                    let (a0, a1) = x.interval();
                    let (b0, b1) = y.interval();
                    (a0 + b0, a1 + b1)
                })
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        match (self, other) {
            (Algebraic::Rational(x), y) | (y, Algebraic::Rational(x)) => y.scale(x),
            (Algebraic::Root(a), Algebraic::Root(b)) => {
                let p = Poly::roots_product_poly(&a.poly, &b.poly).squarefree();
                combine(self.clone(), other.clone(), p, |x, y| {
                    let (a0, a1) = x.interval();
                    let (b0, b1) = y.interval();
                    let corners = [&a0 * &b0, &a0 * &b1, &a1 * &b0, &a1 * &b1];
                    let lo = corners.iter().min().unwrap().clone();
                    let hi = corners.iter().max().unwrap().clone();
                    (lo, hi)
                })
            }
        }
    }

    pub fn square(&self) -> Self {
        match self {
            Algebraic::Rational(x) => Algebraic::Rational(x * x),
            Algebraic::Root(r) => {
                let p = r.poly.square_roots_poly().squarefree();
                let mut x = self.clone();
                loop {
                    let (a, b) = x.interval();
                    if let Algebraic::Rational(v) = &x {
                        return Algebraic::Rational(v * v);
                    }
                    // Interval of the square, valid once it avoids 0.
                    if a.is_positive() || b.is_negative() {
                        let (s0, s1) = if a.is_positive() { (&a * &a, &b * &b) } else { (&b * &b, &a * &a) };
                        if p.count_roots_open(&s0, &s1) == 1 && !p.eval(&s0).is_zero() && !p.eval(&s1).is_zero() {
                            return Root { poly: p, lo: s0, hi: s1 }.normalize();
                        }
                    }
                    x.bisect();
                }
            }
        }
    }

    /// `self ≤ x + y`, deciding on refined intervals before building the sum.
    pub fn le_sum(&self, x: &Self, y: &Self) -> bool {
        self.le_via(x, y, |(a0, a1), (b0, b1)| (a0 + b0, a1 + b1), Self::add)
    }

    /// `self ≤ xy`, deciding on refined intervals before building the product.
    pub fn le_product(&self, x: &Self, y: &Self) -> bool {
        self.le_via(
            x,
            y,
            |(a0, a1), (b0, b1)| {
                let corners = [&a0 * &b0, &a0 * &b1, &a1 * &b0, &a1 * &b1];
                (corners.iter().min().unwrap().clone(), corners.iter().max().unwrap().clone())
            },
            Self::mul,
        )
    }

    fn le_via(&self, x: &Self, y: &Self, image: impl Fn((Q, Q), (Q, Q)) -> (Q, Q), exact: impl Fn(&Self, &Self) -> Self) -> bool {
        let (mut l, mut x1, mut y1) = (self.clone(), x.clone(), y.clone());
        for _ in 0..24 {
            let (l0, l1) = l.interval();
            let (c0, c1) = image(x1.interval(), y1.interval());
            if l1 <= c0 {
                return true;
            }
            if l0 > c1 {
                return false;
            }
            l.bisect();
            x1.bisect();
            y1.bisect();
        }
        *self <= exact(x, y)
    }

    pub fn max(self, other: Self) -> Self {
        if self.cmp(&other) == Ordering::Less {
            other
        } else {
            self
        }
    }
}

fn count_open(seq: &[Poly], p: &Poly, lo: &Q, hi: &Q) -> usize {
    let c = count_roots_with(seq, lo, hi);
    if p.eval(hi).is_zero() {
        c - 1
    } else {
        c
    }
}

/// Isolate the root of `p` given by combining `x` and `y`, refining both
/// operands until the combined interval isolates a single root.
fn combine(mut x: Algebraic, mut y: Algebraic, p: Poly, interval: impl Fn(&Algebraic, &Algebraic) -> (Q, Q)) -> Algebraic {
    let seq = p.sturm_sequence();
    loop {
        let (lo, hi) = interval(&x, &y);
        if lo == hi {
            return Algebraic::Rational(lo);
        }
        if !p.eval(&lo).is_zero() && !p.eval(&hi).is_zero() && count_roots_with(&seq, &lo, &hi) == 1 {
            return Root { poly: p, lo, hi }.normalize();
        }
        x.bisect();
        y.bisect();
    }
}

impl Root {
    /// Detect a rational root: it must be `k / a_n` where `a_n` is the
    /// leading coefficient of the primitive integer multiple of `poly`.
    fn normalize(self) -> Algebraic {
        let lead = integer_leading(&self.poly);
        let step = Q::new(1.into(), lead.clone());
        let mut cur = Algebraic::Root(self);
        cur.refine_to(&step);
        let Algebraic::Root(r) = &cur else { return cur };
        let k0 = ceil_int(&(&r.lo * Q::from_integer(lead.clone())));
        let k1 = floor_int(&(&r.hi * Q::from_integer(lead.clone())));
        let mut k = k0;
        while k <= k1 {
            let cand = Q::new(k.clone(), lead.clone());
            if cand > r.lo && cand < r.hi && r.poly.eval(&cand).is_zero() {
                return Algebraic::Rational(cand);
            }
            k += 1;
        }
        cur
    }
}

/// Leading coefficient of the primitive integer polynomial proportional to `p`.
fn integer_leading(p: &Poly) -> num_bigint::BigInt {
    use num_integer::Integer;
    let mut den = num_bigint::BigInt::one();
    for c in p.coeffs() {
        den = den.lcm(c.denom());
    }
    let ints: Vec<num_bigint::BigInt> = p.coeffs().iter().map(|c| (c * Q::from_integer(den.clone())).to_integer()).collect();
    let mut g = num_bigint::BigInt::zero();
    for c in &ints {
        g = g.gcd(c);
    }
    let lead = ints.last().cloned().unwrap_or_else(num_bigint::BigInt::one);
    (lead / g).abs()
}

impl PartialEq for Algebraic {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Algebraic {}

impl PartialOrd for Algebraic {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Algebraic {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Algebraic::Rational(x), Algebraic::Rational(y)) => x.cmp(y),
            (a, Algebraic::Rational(y)) => a.cmp_rational(y),
            (Algebraic::Rational(x), b) => b.cmp_rational(x).reverse(),
            (Algebraic::Root(a), Algebraic::Root(b)) => {
                // Equal iff the common factor has a root in the overlap.
                let lo = (&a.lo).max(&b.lo);
                let hi = (&a.hi).min(&b.hi);
                if lo < hi {
                    let g = a.poly.gcd(&b.poly);
                    if g.degree() > 0 {
                        let c = g.count_roots(lo, hi) - usize::from(g.eval(hi).is_zero());
                        if c > 0 {
                            return Ordering::Equal;
                        }
                    }
                }
                let mut x = self.clone();
                let mut y = other.clone();
                loop {
                    let (x0, x1) = x.interval();
                    let (y0, y1) = y.interval();
                    if x1 <= y0 {
                        return Ordering::Less;
                    }
                    if y1 <= x0 {
                        return Ordering::Greater;
                    }
                    x.bisect();
                    y.bisect();
                }
            }
        }
    }
}

impl fmt::Debug for Algebraic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebraic::Rational(x) => write!(f, "{}", fmt_q(x)),
            Algebraic::Root(r) => write!(
                f,
                "root of {} in ({}, {})",
                r.poly,
                fmt_q(&r.lo),
                fmt_q(&r.hi)
            ),
        }
    }
}

impl fmt::Display for Algebraic {
    /// Rationals print as `p/q`; irrational roots as a decimal approximation
    /// followed by their defining polynomial.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Algebraic::Rational(x) => write!(f, "{}", fmt_q(x)),
            Algebraic::Root(r) => write!(f, "~{:.12} (root of {})", self.to_f64(), r.poly),
        }
    }
}
