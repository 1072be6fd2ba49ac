//! Signed bisections of a finite groupoid: functions `G → {−1, 0, 1}`
//! supported on a bisection, under convolution, with `f*(γ) = f(γ⁻¹)` and
//! `E` the functions supported on units.

use super::embedded::EmbeddedModel;
use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::ring::lattice::LatticeSubring;
use crate::ring::matrix::RMatrix;
use crate::ring::norm::RingBackend;
use crate::ring::rational::qi;
use crate::semigroup::{StarSemigroup, WeylPair};
use crate::set::ElementSet;
use std::collections::HashMap;

/// Largest groupoid (in arrows) whose signed bisections are enumerated.
const BISECTION_ARROW_LIMIT: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedBisection {
    /// `values[γ] ∈ {−1, 0, 1}`.
    pub values: Vec<i8>,
}

impl SignedBisection {
    pub fn support(&self) -> ElementSet {
        ElementSet::from_ids(self.values.len(), (0..self.values.len()).filter(|&g| self.values[g] != 0))
    }

    pub fn support_on_units(&self, g: &FiniteGroupoid) -> bool {
        self.support().iter().all(|x| g.is_unit(x))
    }

    /// Units `s(γ)` over the support.
    pub fn domain(&self, g: &FiniteGroupoid) -> ElementSet {
        self.support().map(g.n(), |x| g.source(x))
    }

    pub fn convolve(&self, other: &Self, g: &FiniteGroupoid) -> Self {
        let mut values = vec![0i8; self.values.len()];
        for a in self.support().iter() {
            for b in other.support().iter() {
                if let Some(c) = g.mul(a, b) {
                    values[c] += self.values[a] * other.values[b];
                }
            }
        }
        SignedBisection { values }
    }

    pub fn adjoint(&self, g: &FiniteGroupoid) -> Self {
        SignedBisection { values: (0..self.values.len()).map(|x| self.values[g.inv(x)]).collect() }
    }
}

#[derive(Clone, Debug)]
pub struct BisectionModel {
    pub groupoid: FiniteGroupoid,
    pub pair: WeylPair,
    /// `functions[id]` is the signed bisection with semigroup id `id`.
    pub functions: Vec<SignedBisection>,
    pub embedding: Option<EmbeddedModel>,
}

/// Bisections in canonical set order; `s` and `r` injective on each.
fn bisections(g: &FiniteGroupoid) -> Vec<ElementSet> {
    let n = g.n();
    let mut out = Vec::new();
    fn go(g: &FiniteGroupoid, x: usize, cur: &mut ElementSet, out: &mut Vec<ElementSet>) {
        if x == g.n() {
            out.push(cur.clone());
            return;
        }
        go(g, x + 1, cur, out);
        if cur.iter().all(|y| g.source(y) != g.source(x) && g.range(y) != g.range(x)) {
            cur.insert(x);
            go(g, x + 1, cur, out);
            cur.remove(x);
        }
    }
    go(g, 0, &mut ElementSet::empty(n), &mut out);
    out.sort();
    out
}

/// The signed bisection semigroup of `g`, ids ordered by support and then by
/// sign pattern; id 0 is the zero function.
pub fn bisection_sign_semigroup(g: &FiniteGroupoid) -> Result<BisectionModel> {
    if g.n() > BISECTION_ARROW_LIMIT {
        return Err(Error::SizeLimit(format!("{} arrows exceed the limit {BISECTION_ARROW_LIMIT}", g.n())));
    }
    let mut functions = Vec::new();
    for o in bisections(g) {
        let arrows = o.to_vec();
        for signs in 0u32..(1 << arrows.len()) {
            let mut values = vec![0i8; g.n()];
            for (k, &a) in arrows.iter().enumerate() {
                values[a] = if signs & (1 << k) == 0 { 1 } else { -1 };
            }
            functions.push(SignedBisection { values });
        }
    }
    let index: HashMap<&SignedBisection, usize> = functions.iter().enumerate().map(|(i, f)| (f, i)).collect();
    let k = functions.len();
    let mult = (0..k).map(|a| (0..k).map(|b| index[&functions[a].convolve(&functions[b], g)]).collect()).collect();
    let star = (0..k).map(|a| index[&functions[a].adjoint(g)]).collect();
    let s = StarSemigroup::from_tables_unchecked(mult, star, Some(0));
    let e = ElementSet::from_ids(k, (0..k).filter(|&a| functions[a].support_on_units(g)));
    let pair = WeylPair::new(s, e)?;
    Ok(BisectionModel { groupoid: g.clone(), pair, functions, embedding: None })
}

/// Signed bisections of the pair groupoid on `n` points, embedded in `M_n(Q)`
/// by `f ↦ Σ f(i, j) e_ij` with `L` the diagonal integer matrices.
pub fn bisection_pair(n: usize) -> BisectionModel {
    assert!((1..=4).contains(&n), "bisection_pair supports 1 <= n <= 4");
    let g = FiniteGroupoid::pair(n);
    let mut model = bisection_sign_semigroup(&g).expect("pair groupoid within limits");
    let images = model
        .functions
        .iter()
        .map(|f| {
            let mut m = RMatrix::zeros(n);
            for x in f.support().iter() {
                m.set(x / n, x % n, qi(f.values[x].into()));
            }
            m
        })
        .collect();
    let embedded =
        EmbeddedModel::certify(model.pair.clone(), RingBackend::RationalMatrices(n), images, LatticeSubring::DiagonalInteger)
            .expect("matrix images have the right shape");
    model.embedding = Some(embedded);
    model
}
