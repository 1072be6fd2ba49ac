//! Univariate polynomials over the rationals with Sturm sequences.

use super::rational::{qi, Q};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Coefficients from the constant term upward, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    c: Vec<Q>,
}

impl Poly {
    pub fn new(mut c: Vec<Q>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_i64(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| qi(x)).collect())
    }

    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn constant(x: Q) -> Self {
        Self::new(vec![x])
    }

    /// `x - r`.
    pub fn linear_root(r: &Q) -> Self {
        Self::new(vec![-r.clone(), Q::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.c.len().saturating_sub(1)
    }

    pub fn coeffs(&self) -> &[Q] {
        &self.c
    }

    pub fn leading(&self) -> Q {
        self.c.last().cloned().unwrap_or_else(Q::zero)
    }

    pub fn eval(&self, x: &Q) -> Q {
        let mut acc = Q::zero();
        for a in self.c.iter().rev() {
            acc = acc * x + a;
        }
        acc
    }

    pub fn sign_at(&self, x: &Q) -> Ordering {
        self.eval(x).cmp(&Q::zero())
    }

    /// Sign of `p(x)` as `x → +∞`.
    pub fn sign_at_pos_inf(&self) -> Ordering {
        self.leading().cmp(&Q::zero())
    }

    /// Sign of `p(x)` as `x → −∞`.
    pub fn sign_at_neg_inf(&self) -> Ordering {
        let s = self.leading().cmp(&Q::zero());
        if self.degree() % 2 == 0 {
            s
        } else {
            s.reverse()
        }
    }

    pub fn scale(&self, x: &Q) -> Self {
        Self::new(self.c.iter().map(|a| a * x).collect())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.leading();
        self.scale(&l.recip())
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, a)| a * qi(i as i64))
                .collect(),
        )
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.c.clone();
        let dd = d.degree();
        let lead = d.leading();
        if self.c.len() < d.c.len() {
            return (Poly::zero(), self.clone());
        }
        let mut quot = vec![Q::zero(); self.c.len() - dd];
        for k in (0..quot.len()).rev() {
            let coef = &r[k + dd] / &lead;
            if !coef.is_zero() {
                for (i, b) in d.c.iter().enumerate() {
                    r[k + i] -= &coef * b;
                }
            }
            quot[k] = coef;
        }
        r.truncate(dd);
        (Poly::new(quot), Poly::new(r))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    /// The product of the distinct irreducible factors, made monic.
    pub fn squarefree(&self) -> Poly {
        if self.degree() == 0 {
            return self.monic();
        }
        let g = self.gcd(&self.derivative());
        self.div_rem(&g).0.monic()
    }

    /// `p(-x)`.
    pub fn reflect(&self) -> Poly {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .map(|(i, a)| if i % 2 == 1 { -a } else { a.clone() })
                .collect(),
        )
    }

    /// A polynomial whose roots are `t·α` for the roots `α` of `p` (`t ≠ 0`).
    pub fn scale_roots(&self, t: &Q) -> Poly {
        assert!(!t.is_zero(), "scaling roots by zero");
        // p(x / t) · t^deg
        let n = self.degree();
        let mut pw = Q::one();
        let mut out = vec![Q::zero(); self.c.len()];
        for i in (0..=n).rev() {
            out[i] = &self.c[i] * &pw;
            pw *= t;
        }
        Poly::new(out)
    }

    /// `p(x − t)`, whose roots are `α + t`.
    pub fn shift_roots(&self, t: &Q) -> Poly {
        // Horner in the polynomial ring: p(y) with y = x − t.
        let y = Poly::new(vec![-t.clone(), Q::one()]);
        let mut acc = Poly::zero();
        for a in self.c.iter().rev() {
            acc = &(&acc * &y) + &Poly::constant(a.clone());
        }
        acc
    }

    /// A polynomial whose roots are the squares of the roots of `p`.
    pub fn square_roots_poly(&self) -> Poly {
        // p(y) = E(y²) + y O(y²)  ⇒  E(x)² − x O(x)² vanishes at x = α².
        let even = Poly::new(self.c.iter().step_by(2).cloned().collect());
        let odd = Poly::new(self.c.iter().skip(1).step_by(2).cloned().collect());
        let x = Poly::new(vec![Q::zero(), Q::one()]);
        &(&even * &even) - &(&x * &(&odd * &odd))
    }

    /// Power sums `P_0..=P_k` of the roots (with multiplicity) of a nonzero `p`.
    pub fn power_sums(&self, k: usize) -> Vec<Q> {
        let p = self.monic();
        let m = p.degree();
        // e_i = (−1)^i c_{m−i}
        let e: Vec<Q> = (0..=m)
            .map(|i| {
                let c = p.c[m - i].clone();
                if i % 2 == 1 {
                    -c
                } else {
                    c
                }
            })
            .collect();
        let mut ps = vec![qi(m as i64)];
        for j in 1..=k {
            let mut acc = Q::zero();
            for i in 1..=(j - 1).min(m) {
                let term = &e[i] * &ps[j - i];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            if j <= m {
                let term = &e[j] * qi(j as i64);
                if j % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            ps.push(acc);
        }
        ps
    }

    /// The monic polynomial of degree `n` with power sums `ps[1..=n]`.
    pub fn from_power_sums(n: usize, ps: &[Q]) -> Poly {
        let mut e = vec![Q::one()];
        for k in 1..=n {
            let mut acc = Q::zero();
            for i in 1..=k {
                let term = &e[k - i] * &ps[i];
                if i % 2 == 1 {
                    acc += term;
                } else {
                    acc -= term;
                }
            }
            e.push(acc / qi(k as i64));
        }
        let c = (0..=n)
            .map(|i| {
                let ei = e[n - i].clone();
                if (n - i) % 2 == 1 {
                    -ei
                } else {
                    ei
                }
            })
            .collect();
        Poly::new(c)
    }

    /// Monic polynomial whose roots are all sums `α + β`.
    pub fn roots_sum_poly(p: &Poly, q: &Poly) -> Poly {
        let (m, n) = (p.degree(), q.degree());
        let big = m * n;
        let pp = p.power_sums(big);
        let qq = q.power_sums(big);
        let binom = binomials(big);
        let sums: Vec<Q> = (0..=big)
            .map(|k| {
                (0..=k)
                    .map(|t| &binom[k][t] * &pp[t] * &qq[k - t])
                    .sum::<Q>()
            })
            .collect();
        Poly::from_power_sums(big, &sums)
    }

    /// Monic polynomial whose roots are all products `αβ`.
    pub fn roots_product_poly(p: &Poly, q: &Poly) -> Poly {
        let big = p.degree() * q.degree();
        let pp = p.power_sums(big);
        let qq = q.power_sums(big);
        let prods: Vec<Q> = pp.iter().zip(&qq).map(|(a, b)| a * b).collect();
        Poly::from_power_sums(big, &prods)
    }

    /// The Sturm sequence `p, p', −rem(p, p'), …` of `p`.
    pub fn sturm_sequence(&self) -> Vec<Poly> {
        let mut seq = vec![self.clone()];
        if self.degree() == 0 {
            return seq;
        }
        seq.push(self.derivative());
        loop {
            let k = seq.len();
            let r = seq[k - 2].div_rem(&seq[k - 1]).1;
            if r.is_zero() {
                break;
            }
            seq.push(-&r);
        }
        seq
    }

    /// Number of distinct real roots in `(lo, hi]`.
    pub fn count_roots(&self, lo: &Q, hi: &Q) -> usize {
        count_roots_with(&self.sturm_sequence(), lo, hi)
    }

    /// Number of distinct real roots in the open interval `(lo, hi)`.
    pub fn count_roots_open(&self, lo: &Q, hi: &Q) -> usize {
        let c = self.count_roots(lo, hi);
        if self.eval(hi).is_zero() {
            c - 1
        } else {
            c
        }
    }

    /// Sign changes in the coefficient sequence; by Descartes' rule this is
    /// the number of positive roots when all roots are real.
    pub fn coefficient_sign_changes(&self) -> usize {
        let signs: Vec<bool> = self.coeffs().iter().filter(|c| !c.is_zero()).map(|c| c.is_positive()).collect();
        signs.windows(2).filter(|w| w[0] != w[1]).count()
    }

    /// A bound `B` with every real root in `(−B, B)` (Cauchy).
    pub fn root_bound(&self) -> Q {
        let l = self.leading().abs();
        let m = self.c[..self.c.len().saturating_sub(1)]
            .iter()
            .map(|a| a.abs() / &l)
            .max()
            .unwrap_or_else(Q::zero);
        m + Q::one()
    }
}

fn binomials(n: usize) -> Vec<Vec<Q>> {
    let mut rows: Vec<Vec<Q>> = vec![vec![Q::one()]];
    for k in 1..=n {
        let prev = &rows[k - 1];
        let mut row = vec![Q::one(); k + 1];
        for t in 1..k {
            row[t] = &prev[t - 1] + &prev[t];
        }
        rows.push(row);
    }
    rows
}

fn sign_changes(seq: &[Poly], signs: impl Fn(&Poly) -> Ordering) -> usize {
    let mut last = Ordering::Equal;
    let mut changes = 0;
    for p in seq {
        let s = signs(p);
        if s == Ordering::Equal {
            continue;
        }
        if last != Ordering::Equal && s != last {
            changes += 1;
        }
        last = s;
    }
    changes
}

/// Distinct roots in `(lo, hi]` from a precomputed Sturm sequence.
pub fn count_roots_with(seq: &[Poly], lo: &Q, hi: &Q) -> usize {
    if lo >= hi {
        return 0;
    }
    let a = sign_changes(seq, |p| p.sign_at(lo));
    let b = sign_changes(seq, |p| p.sign_at(hi));
    a.saturating_sub(b)
}

/// Distinct real roots overall.
pub fn count_real_roots(seq: &[Poly]) -> usize {
    let a = sign_changes(seq, |p| p.sign_at_neg_inf());
    let b = sign_changes(seq, |p| p.sign_at_pos_inf());
    a.saturating_sub(b)
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let z = Q::zero();
        Poly::new(
            (0..n)
                .map(|i| self.c.get(i).unwrap_or(&z) + o.c.get(i).unwrap_or(&z))
                .collect(),
        )
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, o: &Poly) -> Poly {
        self + &(-o)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        Poly {
            c: self.c.iter().map(|a| -a).collect(),
        }
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Q::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, a) in self.c.iter().enumerate().rev() {
            if a.is_zero() {
                continue;
            }
            let sign = if a.is_negative() { "-" } else { "+" };
            if first {
                if a.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = a.abs();
            match (i, mag.is_one()) {
                (0, _) => write!(f, "{mag}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{mag}x")?,
                (_, true) => write!(f, "x^{i}")?,
                (_, false) => write!(f, "{mag}x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::q;
    use proptest::prelude::*;

    fn from_roots(roots: &[i64]) -> Poly {
        roots
            .iter()
            .fold(Poly::from_i64(&[1]), |acc, &r| &acc * &Poly::from_i64(&[-r, 1]))
    }

    #[test]
    fn division_and_gcd() {
        let p = from_roots(&[1, 2, 3]);
        let d = from_roots(&[2]);
        let (quo, rem) = p.div_rem(&d);
        assert!(rem.is_zero());
        assert_eq!(quo, from_roots(&[1, 3]));
        assert_eq!(from_roots(&[1, 2, 2]).gcd(&from_roots(&[2, 5])), from_roots(&[2]));
        assert_eq!(from_roots(&[1, 2, 2, 2]).squarefree(), from_roots(&[1, 2]));
    }

    #[test]
    fn sturm_counts() {
        let p = from_roots(&[-1, 0, 2]);
        assert_eq!(count_real_roots(&p.sturm_sequence()), 3);
        assert_eq!(p.count_roots(&qi(-1), &qi(2)), 2); // (−1, 2] holds 0 and 2
        assert_eq!(p.count_roots_open(&qi(-1), &qi(2)), 1);
        let x2p1 = Poly::from_i64(&[1, 0, 1]);
        assert_eq!(count_real_roots(&x2p1.sturm_sequence()), 0);
    }

    #[test]
    fn root_transforms() {
        let p = from_roots(&[1, -2]);
        assert_eq!(p.scale_roots(&qi(3)).monic(), from_roots(&[3, -6]));
        assert_eq!(p.shift_roots(&qi(1)).monic(), from_roots(&[2, -1]));
        assert_eq!(p.reflect().monic(), from_roots(&[-1, 2]));
        assert_eq!(p.square_roots_poly().monic(), from_roots(&[1, 4]));
        let s = Poly::roots_sum_poly(&from_roots(&[1, 2]), &from_roots(&[10, 20]));
        assert_eq!(s, from_roots(&[11, 21, 12, 22]));
        let m = Poly::roots_product_poly(&from_roots(&[1, 2]), &from_roots(&[3, -1]));
        assert_eq!(m, from_roots(&[3, -1, 6, -2]));
    }

    #[test]
    fn irrational_sum() {
        // √2 + √3 has minimal polynomial x⁴ − 10x² + 1.
        let s = Poly::roots_sum_poly(&Poly::from_i64(&[-2, 0, 1]), &Poly::from_i64(&[-3, 0, 1]));
        assert_eq!(s, Poly::from_i64(&[1, 0, -10, 0, 1]));
    }

    #[test]
    fn display() {
        assert_eq!(format!("{}", Poly::new(vec![q(-1, 2), qi(0), qi(-3), qi(1)])), "x^3 - 3x^2 - 1/2");
    }

    proptest! {
        #[test]
        fn power_sums_round_trip(roots in proptest::collection::vec(-5i64..5, 1..5)) {
            let p = from_roots(&roots);
            let ps = p.power_sums(roots.len());
            for (k, s) in ps.iter().enumerate() {
                let direct: i64 = roots.iter().map(|r| r.pow(k as u32)).sum();
                prop_assert_eq!(s, &qi(direct));
            }
            prop_assert_eq!(Poly::from_power_sums(roots.len(), &ps), p);
        }

        #[test]
        fn sturm_count_matches_integer_roots(roots in proptest::collection::vec(-6i64..6, 1..5), lo in -7i64..7, w in 1i64..8) {
            let p = from_roots(&roots).squarefree();
            let hi = lo + w;
            let mut distinct = roots.clone();
            distinct.sort();
            distinct.dedup();
            let expected = distinct.iter().filter(|&&r| r > lo && r <= hi).count();
            prop_assert_eq!(p.count_roots(&qi(lo), &qi(hi)), expected);
        }
    }
}
