//! Exact rational square matrices with transpose as involution.

use super::poly::Poly;
use super::rational::{fmt_q, parse_q, qi, Q};
use crate::error::{Error, Result};
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// A `d×d` matrix over the rationals, stored row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RMatrix {
    d: usize,
    e: Vec<Q>,
}

impl RMatrix {
    pub fn zeros(d: usize) -> Self {
        RMatrix {
            d,
            e: vec![Q::zero(); d * d],
        }
    }

    pub fn identity(d: usize) -> Self {
        Self::scalar(d, Q::one())
    }

    pub fn scalar(d: usize, x: Q) -> Self {
        let mut m = Self::zeros(d);
        for i in 0..d {
            m.e[i * d + i] = x.clone();
        }
        m
    }

    pub fn diag(entries: &[Q]) -> Self {
        let d = entries.len();
        let mut m = Self::zeros(d);
        for (i, x) in entries.iter().enumerate() {
            m.e[i * d + i] = x.clone();
        }
        m
    }

    pub fn diag_i64(entries: &[i64]) -> Self {
        Self::diag(&entries.iter().map(|&x| qi(x)).collect::<Vec<_>>())
    }

    pub fn from_rows(rows: Vec<Vec<Q>>) -> Result<Self> {
        let d = rows.len();
        if rows.iter().any(|r| r.len() != d) {
            return Err(Error::Structure("matrix rows must form a square".into()));
        }
        Ok(RMatrix {
            d,
            e: rows.into_iter().flatten().collect(),
        })
    }

    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(rows.iter().map(|r| r.iter().map(|&x| qi(x)).collect()).collect())
            .expect("square integer matrix")
    }

    /// Parse rows of `"p/q"` strings.
    pub fn from_strings(rows: &[Vec<String>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|x| parse_q(x)).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(parsed)
    }

    pub fn to_strings(&self) -> Vec<Vec<String>> {
        (0..self.d)
            .map(|i| (0..self.d).map(|j| fmt_q(self.get(i, j))).collect())
            .collect()
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn get(&self, i: usize, j: usize) -> &Q {
        &self.e[i * self.d + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: Q) {
        self.e[i * self.d + j] = x;
    }

    pub fn entries(&self) -> &[Q] {
        &self.e
    }

    pub fn transpose(&self) -> Self {
        let d = self.d;
        let mut m = Self::zeros(d);
        for i in 0..d {
            for j in 0..d {
                m.e[j * d + i] = self.e[i * d + j].clone();
            }
        }
        m
    }

    /// The involution `a ↦ a*`.
    pub fn star(&self) -> Self {
        self.transpose()
    }

    pub fn scale(&self, x: &Q) -> Self {
        RMatrix {
            d: self.d,
            e: self.e.iter().map(|y| y * x).collect(),
        }
    }

    pub fn scale_i64(&self, n: i64) -> Self {
        self.scale(&qi(n))
    }

    pub fn is_zero(&self) -> bool {
        self.e.iter().all(Zero::is_zero)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.d).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn is_diagonal(&self) -> bool {
        (0..self.d).all(|i| (0..self.d).all(|j| i == j || self.get(i, j).is_zero()))
    }

    pub fn diagonal(&self) -> Vec<Q> {
        (0..self.d).map(|i| self.get(i, i).clone()).collect()
    }

    pub fn trace(&self) -> Q {
        (0..self.d).map(|i| self.get(i, i).clone()).sum()
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut out = Self::identity(self.d);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// Largest absolute row sum; bounds every eigenvalue in absolute value.
    pub fn gershgorin_bound(&self) -> Q {
        (0..self.d)
            .map(|i| (0..self.d).map(|j| self.get(i, j).abs()).sum::<Q>())
            .max()
            .unwrap_or_else(Q::zero)
    }

    /// `det(xI − A)` by the Faddeev–LeVerrier recurrence.
    pub fn char_poly(&self) -> Poly {
        let d = self.d;
        let mut coeffs = vec![Q::zero(); d + 1];
        coeffs[d] = Q::one();
        let mut m = Self::zeros(d);
        for k in 1..=d {
            // M_k = A M_{k-1} + c_{d-k+1} I, c_{d-k} = -tr(A M_k) / k
            let mut next = self * &m;
            for i in 0..d {
                let v = next.get(i, i) + &coeffs[d - k + 1];
                next.set(i, i, v);
            }
            m = next;
            let am = self * &m;
            coeffs[d - k] = -am.trace() / qi(k as i64);
        }
        Poly::new(coeffs)
    }
}

impl Add for &RMatrix {
    type Output = RMatrix;
    fn add(self, o: &RMatrix) -> RMatrix {
        assert_eq!(self.d, o.d, "dimension mismatch");
        RMatrix {
            d: self.d,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &RMatrix {
    type Output = RMatrix;
    fn sub(self, o: &RMatrix) -> RMatrix {
        assert_eq!(self.d, o.d, "dimension mismatch");
        RMatrix {
            d: self.d,
            e: self.e.iter().zip(&o.e).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &RMatrix {
    type Output = RMatrix;
    fn mul(self, o: &RMatrix) -> RMatrix {
        assert_eq!(self.d, o.d, "dimension mismatch");
        let d = self.d;
        let mut out = RMatrix::zeros(d);
        for i in 0..d {
            for k in 0..d {
                let a = &self.e[i * d + k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = &o.e[k * d + j];
                    if !b.is_zero() {
                        out.e[i * d + j] += a * b;
                    }
                }
            }
        }
        out
    }
}

impl Neg for &RMatrix {
    type Output = RMatrix;
    fn neg(self) -> RMatrix {
        RMatrix {
            d: self.d,
            e: self.e.iter().map(|x| -x).collect(),
        }
    }
}

impl fmt::Debug for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.d {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = (0..self.d).map(|j| fmt_q(self.get(i, j))).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl fmt::Display for RMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ring::rational::q;

    #[test]
    fn arithmetic() {
        let a = RMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        let b = RMatrix::from_i64(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, RMatrix::from_i64(&[&[2, 1], &[4, 3]]));
        assert_eq!(a.star(), RMatrix::from_i64(&[&[1, 3], &[2, 4]]));
        assert_eq!(&(&a + &b) - &b, a);
        assert_eq!((&a * &b).star(), &b.star() * &a.star());
        assert_eq!(a.gershgorin_bound(), qi(7));
    }

    #[test]
    fn characteristic_polynomial() {
        // det(xI - [[1,2],[3,4]]) = x^2 - 5x - 2
        let a = RMatrix::from_i64(&[&[1, 2], &[3, 4]]);
        assert_eq!(a.char_poly(), Poly::from_i64(&[-2, -5, 1]));
        let d = RMatrix::diag(&[q(1, 2), qi(-1), qi(3)]);
        let expected = &(&Poly::from_i64(&[-3, 1]) * &Poly::from_i64(&[1, 1])) * &Poly::new(vec![q(-1, 2), qi(1)]);
        assert_eq!(d.char_poly(), expected);
    }

    #[test]
    fn string_round_trip() {
        let a = RMatrix::diag(&[q(1, 2), qi(-1)]);
        let s = a.to_strings();
        assert_eq!(s, vec![vec!["1/2".to_string(), "0".into()], vec!["0".into(), "-1".into()]]);
        assert_eq!(RMatrix::from_strings(&s).unwrap(), a);
    }
}
