//! Symmetric inverse monoids `I_n` of partial bijections.

use super::embedded::EmbeddedModel;
use crate::error::{Error, Result};
use crate::ring::lattice::LatticeSubring;
use crate::ring::matrix::RMatrix;
use crate::ring::norm::RingBackend;
use crate::ring::rational::qi;
use crate::semigroup::{StarSemigroup, WeylPair};
use crate::set::ElementSet;
use std::collections::HashMap;

/// Largest `n` built without an explicit override.
pub const INVERSE_MONOID_LIMIT: usize = 4;

/// A partial bijection of `{0, .., n-1}`: `map[x] = Some(f(x))` on the domain.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PartialBijection {
    pub map: Vec<Option<usize>>,
}

impl PartialBijection {
    pub fn domain(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.map.len()).filter(|&x| self.map[x].is_some())
    }

    /// `(fg)(x) = f(g(x))`.
    pub fn compose(&self, g: &Self) -> Self {
        PartialBijection { map: g.map.iter().map(|y| y.and_then(|y| self.map[y])).collect() }
    }

    pub fn inverse(&self) -> Self {
        let mut map = vec![None; self.map.len()];
        for (x, y) in self.map.iter().enumerate() {
            if let Some(y) = y {
                map[*y] = Some(x);
            }
        }
        PartialBijection { map }
    }

    pub fn is_idempotent(&self) -> bool {
        self.map.iter().enumerate().all(|(x, y)| y.map_or(true, |y| y == x))
    }

    /// The 0/1 matrix with a one at `(f(x), x)`.
    pub fn matrix(&self) -> RMatrix {
        let mut m = RMatrix::zeros(self.map.len());
        for (x, y) in self.map.iter().enumerate() {
            if let Some(y) = y {
                m.set(*y, x, qi(1));
            }
        }
        m
    }
}

/// All partial bijections, by domain size, then lexicographically. The empty
/// map comes first.
pub fn partial_bijections(n: usize) -> Vec<PartialBijection> {
    let mut all = Vec::new();
    let mut cur = vec![None; n];
    fn go(x: usize, cur: &mut Vec<Option<usize>>, used: &mut Vec<bool>, all: &mut Vec<PartialBijection>) {
        if x == cur.len() {
            all.push(PartialBijection { map: cur.clone() });
            return;
        }
        cur[x] = None;
        go(x + 1, cur, used, all);
        for y in 0..cur.len() {
            if !used[y] {
                used[y] = true;
                cur[x] = Some(y);
                go(x + 1, cur, used, all);
                used[y] = false;
            }
        }
        cur[x] = None;
    }
    go(0, &mut cur, &mut vec![false; n], &mut all);
    all.sort_by_key(|f| (f.domain().count(), f.map.iter().map(|y| y.map_or(0, |y| y + 1)).collect::<Vec<_>>()));
    all
}

/// `(I_n, idempotents)` with inverse as involution and the empty map as zero.
pub fn symmetric_inverse_monoid(n: usize) -> Result<WeylPair> {
    symmetric_inverse_monoid_with_limit(n, INVERSE_MONOID_LIMIT)
}

pub fn symmetric_inverse_monoid_with_limit(n: usize, limit: usize) -> Result<WeylPair> {
    Ok(build(n, limit)?.0)
}

fn build(n: usize, limit: usize) -> Result<(WeylPair, Vec<PartialBijection>)> {
    if n > limit {
        return Err(Error::SizeLimit(format!("I_{n} exceeds the size limit n <= {limit}")));
    }
    let elems = partial_bijections(n);
    let index: HashMap<&PartialBijection, usize> = elems.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let k = elems.len();
    let mult = (0..k).map(|a| (0..k).map(|b| index[&elems[a].compose(&elems[b])]).collect()).collect();
    let star = (0..k).map(|a| index[&elems[a].inverse()]).collect();
    let s = StarSemigroup::from_tables_unchecked(mult, star, Some(0));
    let e = ElementSet::from_ids(k, (0..k).filter(|&a| elems[a].is_idempotent()));
    Ok((WeylPair::new(s, e)?, elems))
}

/// `I_n` embedded as partial permutation matrices, with `L` the diagonal
/// integer matrices.
pub fn inverse_monoid_embedding(n: usize) -> Result<EmbeddedModel> {
    let (pair, elems) = build(n, INVERSE_MONOID_LIMIT)?;
    let images = elems.iter().map(PartialBijection::matrix).collect();
    EmbeddedModel::certify(pair, RingBackend::RationalMatrices(n.max(1)), images, LatticeSubring::DiagonalInteger)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes() {
        let sizes: Vec<usize> = (0..=4).map(|n| partial_bijections(n).len()).collect();
        assert_eq!(sizes, vec![1, 2, 7, 34, 209]);
        assert!(matches!(symmetric_inverse_monoid(5), Err(Error::SizeLimit(_))));
        assert_eq!(symmetric_inverse_monoid(4).unwrap().n(), 209);
    }

    #[test]
    fn idempotents_are_partial_identities() {
        let p = symmetric_inverse_monoid(3).unwrap();
        assert_eq!(p.e().len(), 8);
        assert_eq!(p.s().zero(), Some(0));
    }

    #[test]
    fn matrix_embedding_flags() {
        let m = inverse_monoid_embedding(3).unwrap();
        assert!(m.flags.homomorphism && m.flags.injective);
        assert!(m.flags.unit_ball_hereditary);
        assert_eq!(m.flags.e_unit_ball, Some(false));
    }
}
