//! Commutative lattice-ordered subrings `L` of the matrix backend, and the
//! S-hereditary check.

use super::matrix::RMatrix;
use super::norm::{leq_psd, RingBackend};
use super::rational::{floor_int, is_integer, Q};
use crate::error::{Error, Result};
use crate::report::Report;
use num_traits::Signed;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeSubring {
    /// Diagonal matrices with integer entries.
    DiagonalInteger,
    /// Diagonal matrices with rational entries.
    DiagonalRational,
    /// `{0}`.
    Zero,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeOp {
    Join,
    Meet,
    PosPart,
    NegPart,
}

impl LatticeSubring {
    pub fn contains(&self, a: &RMatrix) -> bool {
        match self {
            LatticeSubring::Zero => a.is_zero(),
            LatticeSubring::DiagonalRational => a.is_diagonal(),
            LatticeSubring::DiagonalInteger => a.is_diagonal() && a.diagonal().iter().all(is_integer),
        }
    }

    fn check(&self, a: &RMatrix) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::Invalid(format!("{a} is not in {self:?}")))
        }
    }

    fn entrywise(&self, a: &RMatrix, b: &RMatrix, f: impl Fn(&Q, &Q) -> Q) -> Result<RMatrix> {
        self.check(a)?;
        self.check(b)?;
        let (x, y) = (a.diagonal(), b.diagonal());
        Ok(RMatrix::diag(&x.iter().zip(&y).map(|(p, q)| f(p, q)).collect::<Vec<_>>()))
    }

    pub fn join(&self, a: &RMatrix, b: &RMatrix) -> Result<RMatrix> {
        self.entrywise(a, b, |p, q| p.max(q).clone())
    }

    pub fn meet(&self, a: &RMatrix, b: &RMatrix) -> Result<RMatrix> {
        self.entrywise(a, b, |p, q| p.min(q).clone())
    }

    /// `a₊ = 0 ∨ a`.
    pub fn pos_part(&self, a: &RMatrix) -> Result<RMatrix> {
        self.join(&RMatrix::zeros(a.dim()), a)
    }

    /// `a₋ = 0 ∨ −a`.
    pub fn neg_part(&self, a: &RMatrix) -> Result<RMatrix> {
        self.join(&RMatrix::zeros(a.dim()), &-a)
    }

    /// Probe grid step used to enumerate finite slices of `L₊`.
    fn step(&self) -> Q {
        match self {
            LatticeSubring::DiagonalRational => Q::new(1.into(), 2.into()),
            _ => Q::from_integer(1.into()),
        }
    }

    /// The elements `p ∈ L₊` on the probe grid with `p ≤ bound`, for a
    /// diagonal `bound`. Exact for integer `L`; a finite probe for rational `L`.
    pub fn slice_below(&self, bound: &RMatrix) -> Vec<RMatrix> {
        let d = bound.dim();
        if *self == LatticeSubring::Zero {
            return vec![RMatrix::zeros(d)];
        }
        assert!(bound.is_diagonal(), "slices are taken below diagonal bounds");
        let step = self.step();
        let counts: Vec<i64> = bound
            .diagonal()
            .iter()
            .map(|x| if x.is_negative() { -1 } else { i64::try_from(floor_int(&(x / &step))).unwrap_or(0) })
            .collect();
        if counts.iter().any(|&c| c < 0) {
            return Vec::new();
        }
        let mut out = Vec::new();
        let mut idx = vec![0i64; d];
        loop {
            out.push(RMatrix::diag(&idx.iter().map(|&k| &step * Q::from_integer(k.into())).collect::<Vec<_>>()));
            let mut i = 0;
            while i < d && idx[i] == counts[i] {
                idx[i] = 0;
                i += 1;
            }
            if i == d {
                return out;
            }
            idx[i] += 1;
        }
    }

    /// A finite window of `L` for sampled law checks: diagonals with entries
    /// in `{−k·step, …, k·step}`.
    pub fn window(&self, d: usize, k: i64) -> Vec<RMatrix> {
        if *self == LatticeSubring::Zero {
            return vec![RMatrix::zeros(d)];
        }
        let shift = RMatrix::scalar(d, self.step() * Q::from_integer(k.into()));
        self.slice_below(&RMatrix::scalar(d, self.step() * Q::from_integer((2 * k).into())))
            .into_iter()
            .map(|m| &m - &shift)
            .collect()
    }
}

pub fn lattice_ops(l: LatticeSubring, a: &RMatrix, b: &RMatrix, op: LatticeOp) -> Result<RMatrix> {
    match op {
        LatticeOp::Join => l.join(a, b),
        LatticeOp::Meet => l.meet(a, b),
        LatticeOp::PosPart => l.pos_part(a),
        LatticeOp::NegPart => l.neg_part(a),
    }
}

/// `|S|² ⊆ L` and `L₊ ∩ (|S|²)^≥ ⊆ S`, over the finite embedded `S`
/// (given by its matrix images) and the slices of `L₊` below each `s*s`.
pub fn hereditary_check(l: LatticeSubring, backend: RingBackend, images: &[RMatrix], unit_ball_certified: bool) -> Result<Report> {
    if !unit_ball_certified {
        return Err(Error::NotCertified("S is not certified to lie in the unit ball".into()));
    }
    let mut report = Report::new();
    let squares: Vec<RMatrix> = images.iter().map(|s| &s.star() * s).collect();
    let witness = squares.iter().find(|p| !l.contains(p)).map(|p| format!("{p}"));
    report.check("squares_in_lattice", squares.len() as u64, witness);
    let mut cases = 0u64;
    let mut witness = None;
    for p in &squares {
        if !p.is_diagonal() && l != LatticeSubring::Zero {
            witness.get_or_insert_with(|| format!("non-diagonal square {p}"));
            continue;
        }
        for x in l.slice_below(p) {
            cases += 1;
            if witness.is_none() && leq_psd(backend, &x, p)? && !images.contains(&x) {
                witness = Some(format!("{x} <= {p} lies outside S"));
            }
        }
    }
    report.check("positive_below_squares_in_s", cases, witness);
    Ok(report)
}
