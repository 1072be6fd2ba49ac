//! Exhaustive law checks inside a certified embedded model, where every
//! quantifier over `S`, `|S|²`, a window of `L` or the ultrafilters is
//! finite.

use super::construct::{above_something, additive_bound, interpolate, interpolate_s, join_bound, trap, trap_lift};
use super::matrix::RMatrix;
use super::norm::{leq_psd, orthogonal, ring_dominates};
use crate::cosets::enumerate_ultrafilters;
use crate::error::{Error, Result};
use crate::models::EmbeddedModel;
use crate::relations::{closure_down, RelationKind};
use crate::report::{first_witness, Report};
use crate::semigroup::Id;
use crate::set::ElementSet;
use std::collections::BTreeSet;

/// Half-width of the `L` window scanned by the lattice checks.
const WINDOW: i64 = 2;

/// Runs every model law; needs the unit-ball and hereditary certification.
pub fn model_law_suite(model: &EmbeddedModel) -> Result<Report> {
    if !model.flags.unit_ball_hereditary {
        return Err(Error::NotCertified("model laws need a unit-ball, L-hereditary embedding".into()));
    }
    let mut r = Report::new();
    square_factor_laws(model, &mut r);
    additive_bound_laws(model, &mut r)?;
    lattice_commutation(model, &mut r)?;
    trap_laws(model, &mut r)?;
    join_laws(model, &mut r)?;
    positive_part_laws(model, &mut r)?;
    interpolation_laws(model, &mut r)?;
    ultrafilter_laws(model, &mut r)?;
    Ok(r)
}

/// Folds construction reports: total cases and the first failing witness.
#[derive(Default)]
struct Acc {
    cases: u64,
    witness: Option<String>,
}

impl Acc {
    fn add(&mut self, what: impl FnOnce() -> String, report: &Report) {
        self.cases += 1;
        if self.witness.is_none() {
            if let Some(c) = report.failures().next() {
                self.witness = Some(format!("{}: {} [{}]", what(), c.name, c.witness.clone().unwrap_or_default()));
            }
        }
    }

    fn push(self, r: &mut Report, name: &str) {
        r.check(name, self.cases, self.witness);
    }
}

fn down(model: &EmbeddedModel, x: Id) -> &ElementSet {
    model.pair.relations().below(RelationKind::StarDominates, x)
}

fn zero_set(model: &EmbeddedModel) -> ElementSet {
    let n = model.pair.n();
    model.pair.s().zero().map_or(ElementSet::empty(n), |z| ElementSet::singleton(n, z))
}

fn squares(model: &EmbeddedModel) -> Vec<Id> {
    let s = model.pair.s();
    ElementSet::from_ids(s.n(), s.elements().map(|a| s.square(a))).to_vec()
}

/// `a ≲ bcc* ⇒ a ≲ b, a ≺ cc*`, and `(bc*c)^≳ = b^≳ ∩ c^≳` for `b ∼ c`.
/// The downset identity needs `c*c` on the right: with `cc*` it fails in
/// `I_2` for `b = c` a rank-one partial bijection with `c² = 0`.
fn square_factor_laws(model: &EmbeddedModel, r: &mut Report) {
    let pair = &model.pair;
    let s = pair.s();
    let rel = pair.relations();
    let mut cases = (0u64, 0u64);
    let mut wit = (None, None);
    for a in s.elements() {
        for b in s.elements() {
            for c in s.elements() {
                let cc = s.mul(c, s.star(c));
                let x = s.mul(b, cc);
                if rel.holds(RelationKind::StarDominates, a, x) {
                    cases.0 += 1;
                    if !(rel.holds(RelationKind::StarDominates, a, b) && rel.holds(RelationKind::Dominates, a, cc)) {
                        wit.0.get_or_insert_with(|| format!("a={a} b={b} c={c}"));
                    }
                }
                if a == 0 && rel.holds(RelationKind::Compatible, b, c) {
                    cases.1 += 1;
                    let y = s.mul(b, s.square(c));
                    if *down(model, y) != down(model, b).intersection(down(model, c)) {
                        wit.1.get_or_insert_with(|| format!("b={b} c={c}"));
                    }
                }
            }
        }
    }
    r.check("square_factor_bounds", cases.0, wit.0);
    r.check("compatible_square_factor_downset", cases.1, wit.1);
}

fn additive_bound_laws(model: &EmbeddedModel, r: &mut Report) -> Result<()> {
    if model.flags.e_unit_ball != Some(true) {
        r.fact("additive_bound", "skipped: E is not certified as a unit ball");
        return Ok(());
    }
    let mut acc = Acc::default();
    for c in model.pair.s().elements() {
        for a in down(model, c) {
            for b in down(model, c) {
                let built = additive_bound(model, a, b, c)?;
                acc.add(|| format!("a={a} b={b} c={c}"), &built.report);
            }
        }
    }
    acc.push(r, "additive_bound");
    Ok(())
}

/// Elements of the `L` window commute with each other and with `E` when `L`
/// lies in the integer span of `E`.
fn lattice_commutation(model: &EmbeddedModel, r: &mut Report) -> Result<()> {
    let d = model.backend.dim();
    let window = model.lattice.window(d, WINDOW);
    let e_images: Vec<&RMatrix> = model.pair.e().iter().map(|e| model.image(e)).collect();
    let units_in_e = (0..d).all(|i| {
        let mut u = RMatrix::zeros(d);
        u.set(i, i, crate::ring::rational::qi(1));
        e_images.contains(&&u)
    });
    let hypothesis = model.lattice == super::lattice::LatticeSubring::DiagonalInteger && units_in_e;
    r.fact("lattice_in_integer_span_of_e", hypothesis);
    if !hypothesis {
        return Ok(());
    }
    let commute = |x: &RMatrix, y: &RMatrix| &(x * y) == &(y * x);
    let mut cases = 0u64;
    let mut w = None;
    for (i, x) in window.iter().enumerate() {
        for (j, y) in window.iter().enumerate() {
            cases += 1;
            if !commute(x, y) {
                w.get_or_insert_with(|| format!("window {i} and {j}"));
            }
        }
        for e in &e_images {
            cases += 1;
            if !commute(x, e) {
                w.get_or_insert_with(|| format!("window {i} and {e}"));
            }
        }
    }
    r.check("lattice_commutes_with_lattice_and_e", cases, w);
    Ok(())
}

fn trap_laws(model: &EmbeddedModel, r: &mut Report) -> Result<()> {
    let sq = squares(model);
    let dom: Vec<(Id, Id)> = sq
        .iter()
        .flat_map(|&p| sq.iter().map(move |&q| (p, q)))
        .filter(|&(p, q)| ring_dominates(model.image(p), model.image(q)))
        .collect();
    let mut acc = Acc::default();
    for &(p1, q1) in &dom {
        let b = trap(model, &[p1], &[q1], 1)?;
        acc.add(|| format!("p={p1} q={q1}"), &b.report);
        for &(p2, q2) in &dom {
            for m in 1..=2 {
                let b = trap(model, &[p1, p2], &[q1, q2], m)?;
                acc.add(|| format!("p=[{p1},{p2}] q=[{q1},{q2}] m={m}"), &b.report);
            }
        }
    }
    acc.push(r, "trap");

    let mut acc = Acc::default();
    for d in model.pair.s().elements() {
        let pairs: Vec<(Id, Id)> = down(model, d).iter().flat_map(|b| down(model, b).iter().map(move |a| (a, b))).collect();
        for &(a1, b1) in &pairs {
            let c = trap_lift(model, &[a1], &[b1], d, 1)?;
            acc.add(|| format!("a={a1} b={b1} d={d}"), &c.report);
            for &(a2, b2) in &pairs {
                for m in 1..=2 {
                    let c = trap_lift(model, &[a1, a2], &[b1, b2], d, m)?;
                    acc.add(|| format!("a=[{a1},{a2}] b=[{b1},{b2}] d={d} m={m}"), &c.report);
                }
            }
        }
    }
    acc.push(r, "trap_lift");
    Ok(())
}

/// Joins of squares below a common square, and the join bound in `S`.
fn join_laws(model: &EmbeddedModel, r: &mut Report) -> Result<()> {
    let sq = squares(model);
    let img = |x: Id| model.image(x);
    let dom = |x: &RMatrix, y: &RMatrix| ring_dominates(x, y);
    let mut cases = 0u64;
    let mut w = None;
    for &p in &sq {
        for &q in &sq {
            for &rr in &sq {
                if !(dom(img(p), img(rr)) && dom(img(q), img(rr))) {
                    continue;
                }
                for &s in &sq {
                    if !dom(img(rr), img(s)) {
                        continue;
                    }
                    cases += 1;
                    let j = model.lattice.join(img(p), img(q))?;
                    let below = model.images.iter().all(|c| !(dom(c, img(p)) || dom(c, img(q))) || dom(c, &j));
                    let perp = model.images.iter().all(|c| !orthogonal(c, &j) || (orthogonal(c, img(p)) && orthogonal(c, img(q))));
                    if !(below && perp && dom(&j, img(rr))) {
                        w.get_or_insert_with(|| format!("p={p} q={q} r={rr} s={s}"));
                    }
                }
            }
        }
    }
    r.check("join_of_squares", cases, w);

    let pair = &model.pair;
    let rel = pair.relations();
    let mut acc = Acc::default();
    for c in pair.s().elements().filter(|&c| above_something(model, c)) {
        for d in rel.above(RelationKind::Compatible, c).iter().filter(|&d| above_something(model, d)) {
            let common = down(model, c).intersection(down(model, d));
            for a in &common {
                for b in &common {
                    let t = join_bound(model, a, b, c, d)?;
                    acc.add(|| format!("a={a} b={b} c={c} d={d}"), &t.report);
                }
            }
        }
    }
    acc.push(r, "join_bound");
    Ok(())
}

fn positive_part_laws(model: &EmbeddedModel, r: &mut Report) -> Result<()> {
    let l = model.lattice;
    let window = l.window(model.backend.dim(), WINDOW);
    let mut cases = 0u64;
    let mut w = None;
    for (i, x) in model.images.iter().enumerate() {
        for (j, b) in window.iter().enumerate() {
            if ring_dominates(x, b) {
                cases += 1;
                if !ring_dominates(x, &l.pos_part(b)?) {
                    w.get_or_insert_with(|| format!("a={i} window {j}"));
                }
            }
        }
    }
    r.check("domination_passes_to_positive_part", cases, w);
    Ok(())
}

fn interpolation_laws(model: &EmbeddedModel, r: &mut Report) -> Result<()> {
    let d = model.backend.dim();
    let zero = RMatrix::zeros(d);
    let mut positive: Vec<RMatrix> = Vec::new();
    for x in model.lattice.window(d, WINDOW) {
        if leq_psd(model.backend, &zero, &x)? {
            positive.push(x);
        }
    }
    for s in squares(model) {
        if !positive.contains(model.image(s)) {
            positive.push(model.image(s).clone());
        }
    }
    let mut acc = Acc::default();
    for p in &positive {
        for q in positive.iter().filter(|q| ring_dominates(p, q)) {
            let it = interpolate(model.lattice, model.backend, p, q, &model.images)?;
            acc.add(|| format!("p={p} q={q}"), &it.report);
        }
    }
    acc.push(r, "interpolate");

    let mut acc = Acc::default();
    for b in model.pair.s().elements() {
        for a in down(model, b) {
            let it = interpolate_s(model, a, b)?;
            let mut rep = it.report;
            rep.merge("c", it.c.report);
            rep.merge("d", it.d.report);
            acc.add(|| format!("a={a} b={b}"), &rep);
        }
    }
    acc.push(r, "interpolate_s");
    Ok(())
}

/// Ultrafilter laws: the perpendicular chain, the cover chain over all
/// `T ⊆ S`, and the downset characterisation of `U_a ⊆ U_b`.
fn ultrafilter_laws(model: &EmbeddedModel, r: &mut Report) -> Result<()> {
    let pair = &model.pair;
    let s = pair.s();
    let n = s.n();
    let rel = pair.relations();
    let ufs = enumerate_ultrafilters(pair);
    let m = ufs.len();
    r.fact("ultrafilters", m);
    let zero = zero_set(model);
    let dn = |t: &ElementSet| closure_down(pair, t, RelationKind::StarDominates);
    let u_of = |a: Id| ElementSet::from_ids(m, (0..m).filter(|&i| ufs[i].contains(a)));
    let perp_of = |t: &ElementSet| {
        let mut out = ElementSet::full(n);
        for x in t {
            out.intersect_with(rel.perp(x));
        }
        out
    };

    // (D(U) \ U) pushed down twice lies in U^⊥, which misses U.
    let w = first_witness(ufs.iter().enumerate(), |(i, u)| {
        let outside = dn(u).difference(u);
        let lower = dn(&dn(&outside));
        let mut uperp = ElementSet::empty(n);
        for x in u {
            uperp.union_with(rel.perp(x));
        }
        (!lower.is_subset(&uperp) || uperp.intersects(u)).then(|| format!("ultrafilter {i}"))
    });
    r.check("ultrafilter_perp_chain", m as u64, w);

    // T enters the cover chain only through (D(T), ∪ U_t); enumerate the
    // distinct pairs by closing the singletons under unions.
    let singles: BTreeSet<(ElementSet, ElementSet)> = s.elements().map(|t| (down(model, t).clone(), u_of(t))).collect();
    let mut family: BTreeSet<(ElementSet, ElementSet)> = BTreeSet::new();
    family.insert((ElementSet::empty(n), ElementSet::empty(m)));
    let mut frontier: Vec<(ElementSet, ElementSet)> = family.iter().cloned().collect();
    while let Some((dt, cover)) = frontier.pop() {
        for (ds, us) in &singles {
            let next = (dt.union(ds), cover.union(us));
            if family.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    r.fact("cover_families", family.len());
    let mut cases = 0u64;
    let mut w = None;
    for b in s.elements() {
        let ub = u_of(b);
        for a in down(model, b) {
            let ua = u_of(a);
            let da = down(model, a);
            for (dt, cover) in &family {
                cases += 1;
                let f = dn(&dn(&dt.intersection(down(model, b))));
                let mid = da.intersection(&perp_of(&f)).is_subset(&zero);
                let first = !ub.is_subset(cover) || mid;
                let second = !mid || ua.is_subset(cover);
                if !(first && second) {
                    w.get_or_insert_with(|| format!("a={a} b={b} D(T)={dt:?}"));
                }
            }
        }
    }
    r.check("cover_chain", cases, w);

    let mut w_eq = None;
    let mut w_fwd = None;
    let mut w_back = None;
    let mut back_cases = 0u64;
    let e_ball = model.flags.e_unit_ball == Some(true);
    for a in s.elements() {
        for b in s.elements() {
            let common = dn(&down(model, a).intersection(down(model, b)));
            let lhs = down(model, a).iter().all(|c| common.iter().any(|d| down(model, c).intersection(rel.perp(d)).is_subset(&zero)));
            let mid = down(model, a).is_subset(down(model, b));
            let rhs = u_of(a).is_subset(&u_of(b));
            if lhs != mid {
                w_eq.get_or_insert_with(|| format!("a={a} b={b}"));
            }
            if mid && !rhs {
                w_fwd.get_or_insert_with(|| format!("a={a} b={b}"));
            }
            let side = e_ball || (above_something(model, a) && above_something(model, b) && rel.holds(RelationKind::Compatible, a, b));
            if side {
                back_cases += 1;
                if rhs && !mid {
                    w_back.get_or_insert_with(|| format!("a={a} b={b}"));
                }
            }
        }
    }
    let nn = (n * n) as u64;
    r.check("downset_condition_iff_downset_inclusion", nn, w_eq);
    r.check("downset_inclusion_gives_cover", nn, w_fwd);
    r.check("cover_gives_downset_inclusion", back_cases, w_back);
    Ok(())
}
