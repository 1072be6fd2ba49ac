//! Constructive bounds and interpolants inside an embedded model: each
//! operation evaluates its closed formula in the matrix ring, maps the result
//! back to `S`, and scans `S` for the promised containments.

use super::lattice::LatticeSubring;
use super::matrix::RMatrix;
use super::norm::{leq_psd, orthogonal, ring_dominates, RingBackend};
use crate::error::{Error, Result};
use crate::models::EmbeddedModel;
use crate::relations::RelationKind;
use crate::report::{first_witness, Report};
use crate::semigroup::Id;
use crate::set::ElementSet;

/// Largest rescaling tried by the interpolation fallback.
const MAX_SCALE: u64 = 1 << 20;

/// A constructed element with the checks of its promised properties.
#[derive(Clone, Debug)]
pub struct Built {
    pub value: RMatrix,
    /// The element of `S` with this image, if any.
    pub id: Option<Id>,
    pub report: Report,
}

fn built(model: &EmbeddedModel, value: RMatrix, mut report: Report) -> Built {
    let id = model.preimage(&value);
    report.check("lies_in_s", 1, id.is_none().then(|| format!("{value} has no preimage")));
    Built { value, id, report }
}

fn require_hereditary(model: &EmbeddedModel) -> Result<()> {
    if !model.flags.unit_ball_hereditary {
        return Err(Error::NotCertified("embedding is not certified as unit-ball and L-hereditary".into()));
    }
    Ok(())
}

fn square_ids(model: &EmbeddedModel) -> ElementSet {
    let s = model.pair.s();
    ElementSet::from_ids(s.n(), s.elements().map(|a| s.square(a)))
}

fn product<'a>(d: usize, it: impl IntoIterator<Item = &'a RMatrix>) -> RMatrix {
    it.into_iter().fold(RMatrix::identity(d), |acc, x| &acc * x)
}

/// `r ∈ |S|²` from `p_k ≺ q_k` in `|S|²`: `a = Π_{k<m} p_k`,
/// `b = Π_{k≥m} (a² − a q_k a)²` and `r = b²`. With no factors after `m`,
/// `b = a`.
///
/// Checks `r ≺ q_k` and `r ⊥ p_{k'}`, and that every `c ∈ S` with `c ≺ p_k`
/// and `c ⊥ q_{k'}` has `c ≺ r` (`k < m ≤ k'`).
pub fn trap(model: &EmbeddedModel, p: &[Id], q: &[Id], m: usize) -> Result<Built> {
    require_hereditary(model)?;
    let n = p.len();
    if q.len() != n || m == 0 || m > n {
        return Err(Error::Precondition(format!("need 1 <= m <= n with equal lists, got m={m}, {} and {}", p.len(), q.len())));
    }
    let sq = square_ids(model);
    if let Some(x) = p.iter().chain(q).find(|&&x| !sq.contains(x)) {
        return Err(Error::Precondition(format!("{x} is not a *-square")));
    }
    let img = |x: Id| model.image(x);
    if let Some(k) = (0..n).find(|&k| !ring_dominates(img(p[k]), img(q[k]))) {
        return Err(Error::Precondition(format!("p_{k}={} does not satisfy p ≺ q_{k}={}", p[k], q[k])));
    }
    Ok(trap_matrices(model, &p.iter().map(|&x| img(x).clone()).collect::<Vec<_>>(), &q.iter().map(|&x| img(x).clone()).collect::<Vec<_>>(), m))
}

fn trap_matrices(model: &EmbeddedModel, p: &[RMatrix], q: &[RMatrix], m: usize) -> Built {
    let d = model.backend.dim();
    let n = p.len();
    let a = product(d, &p[..m]);
    let a2 = &a * &a;
    let b = if m == n {
        a.clone()
    } else {
        let factors: Vec<RMatrix> = q[m..]
            .iter()
            .map(|qk| {
                let f = &a2 - &(&(&a * qk) * &a);
                &f * &f
            })
            .collect();
        product(d, &factors)
    };
    let r = &b * &b;
    let mut report = Report::new();
    let w = first_witness(0..n, |k| {
        let ok = if k < m { ring_dominates(&r, &q[k]) } else { orthogonal(&r, &p[k]) };
        (!ok).then(|| format!("k={k}"))
    });
    report.check("r_below_q_and_perp_p", n as u64, w);
    let images = &model.images;
    let w = first_witness(0..images.len(), |c| {
        let x = &images[c];
        let inside = (0..m).all(|k| ring_dominates(x, &p[k])) && (m..n).all(|k| orthogonal(x, &q[k]));
        (inside && !ring_dominates(x, &r)).then(|| format!("c={c}"))
    });
    report.check("trapped_elements_below_r", images.len() as u64, w);
    let mut out = built(model, r, report);
    let is_square = out.id.is_some_and(|id| square_ids(model).contains(id));
    out.report.check("r_is_square", 1, (!is_square).then(|| "r is not a *-square".to_string()));
    out
}

/// `c = d·r` with `r` trapped between the squares of `a_k ≲ b_k ≲ d`.
///
/// Checks `c ≲ b_k` for `k < m`, `c ⊥ a_k` for `k ≥ m`, and that every
/// `f ≲ a_k` (`k < m`) with `f ⊥ b_k` (`k ≥ m`) has `f ≲ c`.
pub fn trap_lift(model: &EmbeddedModel, a: &[Id], b: &[Id], d: Id, m: usize) -> Result<Built> {
    require_hereditary(model)?;
    let n = a.len();
    if b.len() != n || m == 0 || m > n {
        return Err(Error::Precondition(format!("need 1 <= m <= n with equal lists, got m={m}")));
    }
    let pair = &model.pair;
    let rel = pair.relations();
    let sd = |x: Id, y: Id| rel.holds(RelationKind::StarDominates, x, y);
    if let Some(k) = (0..n).find(|&k| !sd(b[k], d) || !sd(a[k], b[k])) {
        return Err(Error::Precondition(format!("need a_{k} ≲ b_{k} ≲ d")));
    }
    let s = pair.s();
    let p: Vec<RMatrix> = a.iter().map(|&x| model.image(s.square(x)).clone()).collect();
    let q: Vec<RMatrix> = b.iter().map(|&x| model.image(s.square(x)).clone()).collect();
    let r = trap_matrices(model, &p, &q, m);
    let c = model.image(d) * &r.value;
    let mut report = Report::new();
    report.merge("trap", r.report);
    let cid = model.preimage(&c);
    if let Some(cid) = cid {
        let w = first_witness(0..n, |k| {
            let ok = if k < m { sd(cid, b[k]) } else { orthogonal(&c, model.image(a[k])) };
            (!ok).then(|| format!("k={k}"))
        });
        report.check("c_below_b_and_perp_a", n as u64, w);
        let w = first_witness(s.elements(), |f| {
            let inside = (0..m).all(|k| sd(f, a[k])) && (m..n).all(|k| orthogonal(model.image(f), model.image(b[k])));
            (inside && !sd(f, cid)).then(|| format!("f={f}"))
        });
        report.check("trapped_elements_below_c", s.n() as u64, w);
    }
    Ok(built(model, c, report))
}

/// `r = (2p − q)₊` and `s = 2p ∧ q` for `p ≺ q` in `L₊`, after replacing `p`
/// by `np` when `r` would vanish for nonzero `p`.
#[derive(Clone, Debug)]
pub struct Interpolation {
    pub r: RMatrix,
    pub s: RMatrix,
    /// The factor `n` applied to `p` (1 unless the fallback fired).
    pub scale: u64,
    pub report: Report,
}

/// Checks, over `probe`: `x ≺ p ⇒ x ≺ r` and `x ⊥ p ⇒ x ⊥ s`; also
/// `r ≺ s ≺ q`, `s ≤ q`, `p ≤ q ⇒ r ≤ q` and `p ≠ 0 ⇒ r ≠ 0`.
pub fn interpolate(l: LatticeSubring, backend: RingBackend, p: &RMatrix, q: &RMatrix, probe: &[RMatrix]) -> Result<Interpolation> {
    let zero = RMatrix::zeros(p.dim());
    for x in [p, q] {
        if !l.contains(x) || !leq_psd(backend, &zero, x)? {
            return Err(Error::Precondition(format!("{x} is not in L₊")));
        }
    }
    if !ring_dominates(p, q) {
        return Err(Error::Precondition("p ≺ q fails".into()));
    }
    let formula = |p: &RMatrix| -> Result<(RMatrix, RMatrix)> {
        let two_p = p.scale_i64(2);
        Ok((l.pos_part(&(&two_p - q))?, l.meet(&two_p, q)?))
    };
    let (mut r, mut s) = formula(p)?;
    let mut scale = 1u64;
    if r.is_zero() && !p.is_zero() {
        // r = 0 means 2p ≤ q; double until 2np ≰ q.
        while leq_psd(backend, &p.scale_i64(2 * scale as i64), q)? {
            scale *= 2;
            if scale > MAX_SCALE {
                return Err(Error::Invalid("interpolation rescaling did not terminate".into()));
            }
        }
        (r, s) = formula(&p.scale_i64(scale as i64))?;
    }
    let np = p.scale_i64(scale as i64);
    let mut report = Report::new();
    let w = first_witness(probe.iter().enumerate(), |(i, x)| (ring_dominates(x, p) && !ring_dominates(x, &r)).then(|| format!("probe {i}")));
    report.check("dominated_by_p_dominated_by_r", probe.len() as u64, w);
    let w = first_witness(probe.iter().enumerate(), |(i, x)| (orthogonal(x, p) && !orthogonal(x, &s)).then(|| format!("probe {i}")));
    report.check("perp_p_perp_s", probe.len() as u64, w);
    let chain = ring_dominates(&r, &s) && ring_dominates(&s, q) && leq_psd(backend, &s, q)?;
    report.check("r_below_s_below_q", 1, (!chain).then(|| format!("r={r} s={s}")));
    let bounded = !leq_psd(backend, &np, q)? || leq_psd(backend, &r, q)?;
    report.check("p_le_q_gives_r_le_q", 1, (!bounded).then(|| format!("r={r}")));
    report.check("nonzero_p_gives_nonzero_r", 1, (!p.is_zero() && r.is_zero()).then(|| "r = 0".to_string()));
    Ok(Interpolation { r, s, scale, report })
}

/// `c = b r²` and `d = b s²` from interpolating `a*a ≺ b*b`.
#[derive(Clone, Debug)]
pub struct InterpolatedPair {
    pub c: Built,
    pub d: Built,
    pub report: Report,
}

/// Checks `a^≳ ⊆ c^≳`, `a^⊥ ⊆ d^⊥`, `c ≲ d ≲ b` and `a ≠ 0 ⇒ c ≠ 0` over `S`.
pub fn interpolate_s(model: &EmbeddedModel, a: Id, b: Id) -> Result<InterpolatedPair> {
    require_hereditary(model)?;
    let pair = &model.pair;
    let rel = pair.relations();
    let sd = |x: Id, y: Id| rel.holds(RelationKind::StarDominates, x, y);
    if !sd(a, b) {
        return Err(Error::Precondition(format!("a={a} ≲ b={b} fails")));
    }
    let s = pair.s();
    let p = model.image(s.square(a));
    let q = model.image(s.square(b));
    let it = interpolate(model.lattice, model.backend, p, q, &model.images)?;
    let bm = model.image(b);
    let c = built(model, bm * &(&it.r * &it.r), Report::new());
    let d = built(model, bm * &(&it.s * &it.s), Report::new());
    let mut report = Report::new();
    report.fact("scale", it.scale);
    report.merge("interpolate", it.report);
    if let (Some(ci), Some(di)) = (c.id, d.id) {
        let w = first_witness(s.elements(), |f| (sd(f, a) && !sd(f, ci)).then(|| format!("f={f}")));
        report.check("below_a_below_c", s.n() as u64, w);
        let w = first_witness(s.elements(), |f| {
            (orthogonal(model.image(f), model.image(a)) && !orthogonal(model.image(f), &d.value)).then(|| format!("f={f}"))
        });
        report.check("perp_a_perp_d", s.n() as u64, w);
        report.check("c_below_d_below_b", 1, (!(sd(ci, di) && sd(di, b))).then(|| format!("c={ci} d={di}")));
        let nonzero = model.image(a).is_zero() || !c.value.is_zero();
        report.check("nonzero_a_gives_nonzero_c", 1, (!nonzero).then(|| "c = 0".to_string()));
    } else {
        report.check("c_and_d_in_s", 1, Some("c or d has no preimage".into()));
    }
    Ok(InterpolatedPair { c, d, report })
}

/// `c` is `≲`-above some element of `S`.
pub fn above_something(model: &EmbeddedModel, c: Id) -> bool {
    !model.pair.relations().below(RelationKind::StarDominates, c).is_empty()
}

/// `t = c(p ∨ q)⁴` for `a, b ≲ c, d` with `c ∼ d`, where `p = a*a`, `q = b*b`.
///
/// Checks `a^≳ ∪ b^≳ ⊆ t^≳`, `t^⊥ ⊆ a^⊥ ∩ b^⊥` and `t ≲ c, d` over `S`.
pub fn join_bound(model: &EmbeddedModel, a: Id, b: Id, c: Id, d: Id) -> Result<Built> {
    require_hereditary(model)?;
    let pair = &model.pair;
    let rel = pair.relations();
    let sd = |x: Id, y: Id| rel.holds(RelationKind::StarDominates, x, y);
    let pre = sd(a, c) && sd(a, d) && sd(b, c) && sd(b, d) && rel.holds(RelationKind::Compatible, c, d);
    if !pre || !above_something(model, c) || !above_something(model, d) {
        return Err(Error::Precondition(format!("need a, b ≲ c, d with c ∼ d above S: a={a} b={b} c={c} d={d}")));
    }
    let s = pair.s();
    let j = model.lattice.join(model.image(s.square(a)), model.image(s.square(b)))?;
    let t = model.image(c) * &j.pow(4);
    let mut out = built(model, t, Report::new());
    if let Some(ti) = out.id {
        let w = first_witness(s.elements(), |f| ((sd(f, a) || sd(f, b)) && !sd(f, ti)).then(|| format!("f={f}")));
        out.report.check("below_a_or_b_below_t", s.n() as u64, w);
        let w = first_witness(s.elements(), |f| {
            let x = model.image(f);
            (orthogonal(x, &out.value) && !(orthogonal(x, model.image(a)) && orthogonal(x, model.image(b)))).then(|| format!("f={f}"))
        });
        out.report.check("perp_t_perp_a_and_b", s.n() as u64, w);
        out.report.check("t_below_c_and_d", 1, (!(sd(ti, c) && sd(ti, d))).then(|| format!("t={ti}")));
    }
    Ok(out)
}

/// `d = c(p + q − pq)` for `a, b ≲ c`, where `p = a*a`, `q = b*b`; needs `E`
/// to be the unit ball of the `*`-subring it generates.
///
/// Checks `a^≳ ∪ b^≳ ⊆ d^≳` and `a^≲ ∩ b^≲ ⊆ d^≲` over `S`.
pub fn additive_bound(model: &EmbeddedModel, a: Id, b: Id, c: Id) -> Result<Built> {
    if model.flags.e_unit_ball != Some(true) || !model.flags.unit_ball || !model.backend.unital() {
        return Err(Error::NotCertified("E is not certified as the unit ball of the *-subring it generates".into()));
    }
    let pair = &model.pair;
    let rel = pair.relations();
    let sd = |x: Id, y: Id| rel.holds(RelationKind::StarDominates, x, y);
    if !sd(a, c) || !sd(b, c) {
        return Err(Error::Precondition(format!("need a, b ≲ c: a={a} b={b} c={c}")));
    }
    let s = pair.s();
    let p = model.image(s.square(a));
    let q = model.image(s.square(b));
    let e = &(p + q) - &(p * q);
    let mut out = built(model, model.image(c) * &e, Report::new());
    if let Some(di) = out.id {
        let w = first_witness(s.elements(), |f| ((sd(f, a) || sd(f, b)) && !sd(f, di)).then(|| format!("f={f}")));
        out.report.check("below_a_or_b_below_d", s.n() as u64, w);
        let w = first_witness(s.elements(), |f| (sd(a, f) && sd(b, f) && !sd(di, f)).then(|| format!("f={f}")));
        out.report.check("above_a_and_b_above_d", s.n() as u64, w);
    }
    Ok(out)
}
