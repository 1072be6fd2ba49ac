//! Finite Weyl pairs embedded in a matrix backend, with the certified flags
//! the ring-level theory needs.

use crate::error::{Error, Result};
use crate::report::{first_witness, Report};
use crate::ring::lattice::{hereditary_check, LatticeSubring};
use crate::ring::matrix::RMatrix;
use crate::ring::norm::{in_unit_ball, RingBackend};
use crate::ring::rational::{is_integer, qi};
use crate::semigroup::{Id, WeylPair};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;
use std::collections::HashMap;

/// Largest support enumerated when deciding whether `E` is the unit ball of
/// the `*`-subring it generates.
const E_BALL_SUPPORT_LIMIT: usize = 12;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ModelFlags {
    pub homomorphism: bool,
    pub injective: bool,
    /// `‖s‖ ≤ 1` for every `s ∈ S`.
    pub unit_ball: bool,
    /// `S` is `L`-hereditary.
    pub hereditary: bool,
    /// `S` lies in the unit ball and is `L`-hereditary.
    pub unit_ball_hereditary: bool,
    /// `E` is the unit ball of its generated `*`-subring; `None` when
    /// undecided (non-integral images or too large a support).
    pub e_unit_ball: Option<bool>,
}

#[derive(Clone, Debug)]
pub struct EmbeddedModel {
    pub pair: WeylPair,
    pub backend: RingBackend,
    pub images: Vec<RMatrix>,
    pub index: HashMap<RMatrix, Id>,
    pub lattice: LatticeSubring,
    pub flags: ModelFlags,
    pub report: Report,
}

impl EmbeddedModel {
    /// Checks the embedding and computes its flags. Fails only on malformed
    /// input; failed properties are recorded in the flags and report.
    pub fn certify(pair: WeylPair, backend: RingBackend, images: Vec<RMatrix>, lattice: LatticeSubring) -> Result<Self> {
        let s = pair.s();
        if images.len() != s.n() {
            return Err(Error::Invalid(format!("{} images for {} elements", images.len(), s.n())));
        }
        if let Some(m) = images.iter().find(|m| !backend.contains(m)) {
            return Err(Error::Invalid(format!("{m} is not in the {backend:?} backend")));
        }
        let mut report = Report::new();
        let n = s.n() as u64;
        let hom = first_witness(s.elements().flat_map(|a| s.elements().map(move |b| (a, b))), |(a, b)| {
            (images[s.mul(a, b)] != &images[a] * &images[b]).then(|| format!("a={a} b={b}"))
        });
        report.check("multiplicative", n * n, hom);
        let star = first_witness(s.elements(), |a| (images[s.star(a)] != images[a].star()).then(|| format!("a={a}")));
        report.check("star_preserving", n, star);
        let mut index = HashMap::new();
        let mut dup = None;
        for (i, m) in images.iter().enumerate() {
            if let Some(j) = index.insert(m.clone(), i) {
                dup.get_or_insert_with(|| format!("a={j} b={i}"));
            }
        }
        report.check("injective", n, dup);

        let mut ball = None;
        for (a, m) in images.iter().enumerate() {
            if !in_unit_ball(backend, m)? {
                ball = Some(format!("a={a}"));
                break;
            }
        }
        report.check("unit_ball", n, ball);
        let unit_ball = report.get("unit_ball").unwrap().passed;
        let hereditary = if unit_ball {
            let h = hereditary_check(lattice, backend, &images, true)?;
            let ok = h.passed();
            report.merge("hereditary", h);
            ok
        } else {
            false
        };
        let e_images: Vec<&RMatrix> = pair.e().iter().map(|e| &images[e]).collect();
        let e_unit_ball = e_is_unit_ball(backend, &e_images)?;
        let flags = ModelFlags {
            homomorphism: report.get("multiplicative").unwrap().passed && report.get("star_preserving").unwrap().passed,
            injective: report.get("injective").unwrap().passed,
            unit_ball,
            hereditary,
            unit_ball_hereditary: unit_ball && hereditary,
            e_unit_ball,
        };
        report.fact("unit_ball_hereditary", flags.unit_ball_hereditary.to_string());
        report.fact("e_unit_ball", flags.e_unit_ball.map_or("undecided".into(), |b| b.to_string()));
        Ok(EmbeddedModel { pair, backend, images, index, lattice, flags, report })
    }

    pub fn image(&self, a: Id) -> &RMatrix {
        &self.images[a]
    }

    pub fn preimage(&self, m: &RMatrix) -> Option<Id> {
        self.index.get(m).copied()
    }
}

/// Integer images of `E` span a `*`-subring (as `E` is a `*`-subsemigroup);
/// its unit ball consists of `{−1,0,1}` matrices on the joint support.
fn e_is_unit_ball(backend: RingBackend, e: &[&RMatrix]) -> Result<Option<bool>> {
    if e.iter().any(|m| !m.entries().iter().all(is_integer)) {
        return Ok(None);
    }
    let Some(first) = e.first() else { return Ok(Some(true)) };
    let len = first.entries().len();
    let support: Vec<usize> = (0..len).filter(|&i| e.iter().any(|m| !m.entries()[i].is_zero())).collect();
    if support.len() > E_BALL_SUPPORT_LIMIT {
        return Ok(None);
    }
    let vectors: Vec<Vec<BigInt>> = e.iter().map(|m| support.iter().map(|&i| m.entries()[i].to_integer()).collect()).collect();
    let basis = hermite_basis(vectors);
    let targets: std::collections::HashSet<Vec<BigInt>> =
        e.iter().map(|m| support.iter().map(|&i| m.entries()[i].to_integer()).collect()).collect();
    let d = first.dim();
    let k = support.len();
    let mut digits = vec![-1i64; k];
    loop {
        let v: Vec<BigInt> = digits.iter().map(|&x| x.into()).collect();
        if in_span(&basis, &v) {
            let mut m = RMatrix::zeros(d);
            for (slot, &i) in support.iter().enumerate() {
                m.set(i / d, i % d, qi(digits[slot]));
            }
            if in_unit_ball(backend, &m)? && !targets.contains(&v) {
                return Ok(Some(false));
            }
        }
        let mut i = 0;
        while i < k && digits[i] == 1 {
            digits[i] = -1;
            i += 1;
        }
        if i == k {
            return Ok(Some(true));
        }
        digits[i] += 1;
    }
}

/// Row echelon basis of the integer span, by repeated Euclidean steps.
pub(crate) fn hermite_basis(mut rows: Vec<Vec<BigInt>>) -> Vec<Vec<BigInt>> {
    let cols = rows.first().map_or(0, Vec::len);
    let mut basis = Vec::new();
    for c in 0..cols {
        rows.retain(|r| r.iter().any(|x| !x.is_zero()));
        loop {
            let nonzero: Vec<usize> = (0..rows.len()).filter(|&i| !rows[i][c].is_zero()).collect();
            if nonzero.len() <= 1 {
                break;
            }
            let p = *nonzero.iter().min_by_key(|&&i| rows[i][c].abs()).unwrap();
            let pivot = rows[p].clone();
            for &i in &nonzero {
                if i != p {
                    let f = rows[i][c].div_floor(&pivot[c]);
                    for (x, y) in rows[i].iter_mut().zip(&pivot) {
                        *x -= &f * y;
                    }
                }
            }
        }
        if let Some(i) = (0..rows.len()).find(|&i| !rows[i][c].is_zero()) {
            basis.push(rows.swap_remove(i));
        }
    }
    basis
}

pub(crate) fn in_span(basis: &[Vec<BigInt>], v: &[BigInt]) -> bool {
    let mut v = v.to_vec();
    for b in basis {
        let c = b.iter().position(|x| !x.is_zero()).expect("basis rows are nonzero");
        if v[..c].iter().any(|x| !x.is_zero()) {
            return false;
        }
        let (q, r) = v[c].div_rem(&b[c]);
        if !r.is_zero() {
            return false;
        }
        for (x, y) in v.iter_mut().zip(b) {
            *x -= &q * y;
        }
    }
    v.iter().all(|x| x.is_zero())
}
