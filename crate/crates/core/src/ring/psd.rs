//! Exact positive-semidefiniteness for symmetric rational matrices.
//!
//! Over the rationals the sums of *-squares `Σ b bᵀ` are exactly the
//! symmetric PSD matrices: a pivoted LDLᵀ factorization writes `M` as
//! `Σ d_k v_k v_kᵀ` with rational `d_k ≥ 0`, and each `d_k` is a sum of four
//! rational squares. [`sum_of_squares`] makes that decomposition explicit.

use super::matrix::RMatrix;
use super::rational::{isqrt, Q};
use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// One rank-one term `d · v vᵀ` of an LDLᵀ decomposition.
#[derive(Clone, Debug)]
pub struct Term {
    pub weight: Q,
    pub vector: Vec<Q>,
}

/// Symmetric Gaussian elimination with diagonal pivoting. Returns the terms
/// when `M` is PSD and `None` otherwise.
pub fn ldl_terms(m: &RMatrix) -> Result<Option<Vec<Term>>> {
    if !m.is_symmetric() {
        return Err(Error::Invalid("psd test needs a symmetric matrix".into()));
    }
    let d = m.dim();
    let mut w: Vec<Vec<Q>> = (0..d).map(|i| (0..d).map(|j| m.get(i, j).clone()).collect()).collect();
    let mut alive: Vec<bool> = vec![true; d];
    let mut terms = Vec::new();
    loop {
        // Largest remaining diagonal entry as pivot keeps the choice canonical.
        let mut pivot: Option<usize> = None;
        for i in 0..d {
            if !alive[i] {
                continue;
            }
            if w[i][i].is_negative() {
                return Ok(None);
            }
            if w[i][i].is_zero() {
                if (0..d).any(|j| alive[j] && !w[i][j].is_zero()) {
                    return Ok(None);
                }
                alive[i] = false;
                continue;
            }
            if pivot.map_or(true, |p| w[i][i] > w[p][p]) {
                pivot = Some(i);
            }
        }
        let Some(k) = pivot else { break };
        let dk = w[k][k].clone();
        let v: Vec<Q> = (0..d).map(|j| if alive[j] { &w[k][j] / &dk } else { Q::zero() }).collect();
        for i in (0..d).filter(|&i| alive[i]) {
            for j in (0..d).filter(|&j| alive[j]) {
                let t = &dk * &v[i] * &v[j];
                w[i][j] -= t;
            }
        }
        alive[k] = false;
        terms.push(Term { weight: dk, vector: v });
    }
    Ok(Some(terms))
}

/// True iff the symmetric matrix `M` is positive semidefinite.
pub fn psd_test(m: &RMatrix) -> Result<bool> {
    Ok(ldl_terms(m)?.is_some())
}

/// Writes a nonnegative integer as a sum of four squares.
pub fn four_squares(n: &BigInt) -> Result<[BigInt; 4]> {
    if n.is_negative() {
        return Err(Error::Invalid("negative integer has no four-square form".into()));
    }
    let Some(n) = n.to_u128() else {
        return Err(Error::SizeLimit("four-square search above 2^128".into()));
    };
    let r = search_squares(n, 4).expect("every natural number is a sum of four squares");
    Ok([r[0].into(), r[1].into(), r[2].into(), r[3].into()])
}

fn sqrt_u128(n: u128) -> u128 {
    isqrt(&BigInt::from(n)).to_u128().unwrap()
}

/// Greedy search with backtracking: `n` as a sum of `k` squares, largest first.
fn search_squares(n: u128, k: usize) -> Option<Vec<u128>> {
    if n == 0 {
        return Some(vec![0; k]);
    }
    if k == 0 {
        return None;
    }
    let top = sqrt_u128(n);
    if k == 1 {
        return (top * top == n).then(|| vec![top]);
    }
    if k == 3 {
        // Legendre: n is a sum of three squares unless n = 4^a (8b + 7).
        let mut m = n;
        while m % 4 == 0 {
            m /= 4;
        }
        if m % 8 == 7 {
            return None;
        }
    }
    let mut a = top;
    loop {
        if let Some(mut rest) = search_squares(n - a * a, k - 1) {
            rest.insert(0, a);
            return Some(rest);
        }
        if a == 0 {
            return None;
        }
        a -= 1;
    }
}

/// Matrices `b_1, …, b_k` with `Σ b_i b_iᵀ = M`, when `M` is PSD.
pub fn sum_of_squares(m: &RMatrix) -> Result<Option<Vec<RMatrix>>> {
    let Some(terms) = ldl_terms(m)? else { return Ok(None) };
    let d = m.dim();
    let mut out = Vec::new();
    for t in terms {
        // p/q = (pq)/q², and pq is a sum of four integer squares.
        let num = t.weight.numer() * t.weight.denom();
        let den = t.weight.denom().clone();
        for x in four_squares(&num)? {
            if x.is_zero() {
                continue;
            }
            let c = Q::new(x, den.clone());
            let mut b = RMatrix::zeros(d);
            for (i, vi) in t.vector.iter().enumerate() {
                b.set(i, 0, vi * &c);
            }
            out.push(b);
        }
    }
    Ok(Some(out))
}

/// `Σ b bᵀ` for a list of matrices.
pub fn sum_bbt(d: usize, bs: &[RMatrix]) -> RMatrix {
    bs.iter().fold(RMatrix::zeros(d), |acc, b| &acc + &(b * &b.star()))
}

/// Determinants of all principal minors are nonnegative (Sylvester's
/// criterion for semidefiniteness); an independent slow oracle.
pub fn principal_minor_oracle(m: &RMatrix) -> bool {
    let d = m.dim();
    (1u32..(1u32 << d)).all(|mask| {
        let idx: Vec<usize> = (0..d).filter(|i| mask & (1 << i) != 0).collect();
        !det(&idx.iter().map(|&i| idx.iter().map(|&j| m.get(i, j).clone()).collect()).collect::<Vec<Vec<Q>>>()).is_negative()
    })
}

fn det(rows: &[Vec<Q>]) -> Q {
    let n = rows.len();
    let mut a = rows.to_vec();
    let mut det = Q::one();
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else { return Q::zero() };
        if p != c {
            a.swap(p, c);
            det = -det;
        }
        det *= a[c][c].clone();
        for r in c + 1..n {
            let f = &a[r][c] / &a[c][c];
            for k in c..n {
                let t = &f * &a[c][k];
                a[r][k] -= t;
            }
        }
    }
    det
}
