//! Domination `≺`, compatibility `∼` and *-domination `≲`, their closures,
//! and the exhaustive law suite relating them to the product and involution.
//!
//! * `a ≺ b` iff `a = ab`
//! * `a ∼ b` iff `ab* ∈ E`
//! * `a ≲ b` iff `ab* ∈ E` and `a = ab*b`

use crate::error::{Error, Result};
use crate::report::{first_witness, Report};
use crate::semigroup::{Id, WeylPair};
use crate::set::ElementSet;
use rayon::prelude::*;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RelationKind {
    Dominates,
    Compatible,
    StarDominates,
}

/// Size above which the law suite refuses to run without an override.
pub const LAW_SUITE_LIMIT: usize = 64;

/// Row and column sets of the three relations, computed once per pair.
#[derive(Clone, Debug)]
pub struct Relations {
    /// `up[k][a] = {b : a ⊏ b}` for relation `k`.
    up: [Vec<ElementSet>; 3],
    /// `down[k][b] = {a : a ⊏ b}` for relation `k`.
    down: [Vec<ElementSet>; 3],
    /// `perp[a] = {b : ab* = 0}`, empty without a zero.
    perp: Vec<ElementSet>,
}

fn slot(kind: RelationKind) -> usize {
    match kind {
        RelationKind::Dominates => 0,
        RelationKind::Compatible => 1,
        RelationKind::StarDominates => 2,
    }
}

/// `a = ab`, read straight from the table.
pub fn dominates_direct(pair: &WeylPair, a: Id, b: Id) -> bool {
    pair.s().mul(a, b) == a
}

/// `ab* ∈ E`, read straight from the table.
pub fn compatible_direct(pair: &WeylPair, a: Id, b: Id) -> bool {
    pair.in_e(pair.s().mul(a, pair.s().star(b)))
}

/// `ab* ∈ E` and `a = ab*b`, read straight from the table.
pub fn star_dominates_direct(pair: &WeylPair, a: Id, b: Id) -> bool {
    let s = pair.s();
    let abs = s.mul(a, s.star(b));
    pair.in_e(abs) && s.mul(abs, b) == a
}

pub fn relation_direct(pair: &WeylPair, kind: RelationKind, a: Id, b: Id) -> bool {
    match kind {
        RelationKind::Dominates => dominates_direct(pair, a, b),
        RelationKind::Compatible => compatible_direct(pair, a, b),
        RelationKind::StarDominates => star_dominates_direct(pair, a, b),
    }
}

impl Relations {
    pub(crate) fn compute(pair: &WeylPair) -> Relations {
        let n = pair.n();
        let kinds = [RelationKind::Dominates, RelationKind::Compatible, RelationKind::StarDominates];
        let up = kinds.map(|k| {
            (0..n)
                .into_par_iter()
                .map(|a| ElementSet::from_ids(n, (0..n).filter(|&b| relation_direct(pair, k, a, b))))
                .collect::<Vec<_>>()
        });
        let down = kinds.map(|k| {
            (0..n)
                .into_par_iter()
                .map(|b| ElementSet::from_ids(n, (0..n).filter(|&a| relation_direct(pair, k, a, b))))
                .collect::<Vec<_>>()
        });
        let s = pair.s();
        let perp = (0..n)
            .map(|a| match s.zero() {
                Some(z) => ElementSet::from_ids(n, (0..n).filter(|&b| s.mul(a, s.star(b)) == z)),
                None => ElementSet::empty(n),
            })
            .collect();
        Relations { up, down, perp }
    }

    pub fn holds(&self, kind: RelationKind, a: Id, b: Id) -> bool {
        self.up[slot(kind)][a].contains(b)
    }

    /// `{b : a ⊏ b}`.
    pub fn above(&self, kind: RelationKind, a: Id) -> &ElementSet {
        &self.up[slot(kind)][a]
    }

    /// `{a : a ⊏ b}`.
    pub fn below(&self, kind: RelationKind, b: Id) -> &ElementSet {
        &self.down[slot(kind)][b]
    }

    /// `{b : ab* = 0}`; empty when the semigroup has no zero.
    pub fn perp(&self, a: Id) -> &ElementSet {
        &self.perp[a]
    }
}

pub fn dominates(pair: &WeylPair, a: Id, b: Id) -> bool {
    pair.relations().holds(RelationKind::Dominates, a, b)
}

pub fn compatible(pair: &WeylPair, a: Id, b: Id) -> bool {
    pair.relations().holds(RelationKind::Compatible, a, b)
}

pub fn star_dominates(pair: &WeylPair, a: Id, b: Id) -> bool {
    pair.relations().holds(RelationKind::StarDominates, a, b)
}

/// `a ⊥ b`, i.e. `ab* = 0`. Never holds without a zero.
pub fn perpendicular(pair: &WeylPair, a: Id, b: Id) -> bool {
    pair.relations().perp(a).contains(b)
}

/// `T^⊏ = {a : t ⊏ a for some t ∈ T}`.
pub fn closure_up(pair: &WeylPair, t: &ElementSet, kind: RelationKind) -> ElementSet {
    let rel = pair.relations();
    let mut out = ElementSet::empty(pair.n());
    for x in t {
        out.union_with(rel.above(kind, x));
    }
    out
}

/// `{a : a ⊏ t for some t ∈ T}`.
pub fn closure_down(pair: &WeylPair, t: &ElementSet, kind: RelationKind) -> ElementSet {
    let rel = pair.relations();
    let mut out = ElementSet::empty(pair.n());
    for x in t {
        out.union_with(rel.below(kind, x));
    }
    out
}

/// `T^⊥ = {a : ta* = 0 for all t ∈ T}`.
pub fn perp_set(pair: &WeylPair, t: &ElementSet) -> ElementSet {
    let rel = pair.relations();
    let mut out = ElementSet::full(pair.n());
    for x in t {
        out.intersect_with(rel.perp(x));
    }
    out
}

/// Exhaustively check how `≺`, `∼` and `≲` interact with each other, the
/// product and the involution. Refuses pairs above [`LAW_SUITE_LIMIT`]
/// elements unless `allow_large` is set.
pub fn relation_law_suite(pair: &WeylPair, allow_large: bool) -> Result<Report> {
    let n = pair.n();
    if n > LAW_SUITE_LIMIT && !allow_large {
        return Err(Error::SizeLimit(format!(
            "relation law suite is limited to {LAW_SUITE_LIMIT} elements (got {n})"
        )));
    }
    let s = pair.s();
    let rel = pair.relations();
    let sd = RelationKind::StarDominates;
    let dom = RelationKind::Dominates;
    let comp = RelationKind::Compatible;
    let nn = (n * n) as u64;
    let sd_pairs: Vec<(Id, Id)> = (0..n)
        .flat_map(|a| rel.above(sd, a).iter().map(move |b| (a, b)))
        .collect();
    let m = sd_pairs.len() as u64;
    let e_ids: Vec<Id> = pair.e().to_vec();
    let ne = e_ids.len() as u64;

    let mut report = Report::new();
    report.check(
        "star_domination_then_compatibility",
        m * n as u64,
        first_witness(&sd_pairs, |&(a, b)| {
            rel.above(comp, b)
                .difference(rel.above(comp, a))
                .first()
                .map(|c| format!("a={a} b={b} c={c}"))
        }),
    );
    report.check(
        "star_domination_then_domination",
        m * n as u64,
        first_witness(&sd_pairs, |&(a, b)| {
            rel.above(dom, b)
                .difference(rel.above(dom, a))
                .first()
                .map(|c| format!("a={a} b={b} c={c}"))
        }),
    );
    report.check(
        "star_domination_transitive",
        m * n as u64,
        first_witness(&sd_pairs, |&(a, b)| {
            rel.above(sd, b)
                .difference(rel.above(sd, a))
                .first()
                .map(|c| format!("a={a} b={b} c={c}"))
        }),
    );
    report.check(
        "star_domination_star_invariant",
        nn,
        first_witness((0..n).flat_map(|a| (0..n).map(move |b| (a, b))), |(a, b)| {
            (rel.holds(sd, a, b) != rel.holds(sd, s.star(a), s.star(b))).then(|| format!("a={a} b={b}"))
        }),
    );
    let product = sd_pairs.par_iter().find_map_first(|&(a, b)| {
        sd_pairs.iter().find_map(|&(c, d)| {
            (!rel.holds(sd, s.mul(a, c), s.mul(b, d))).then(|| format!("a={a} b={b} c={c} d={d}"))
        })
    });
    report.check("star_domination_preserves_product", m * m, product);
    report.check(
        "star_domination_under_projection",
        m * n as u64,
        first_witness(&sd_pairs, |&(a, b)| {
            (0..n).find_map(|c| {
                let cc = s.mul(c, s.star(c));
                if !rel.holds(dom, a, cc) {
                    return None;
                }
                let ok = rel.holds(sd, a, s.mul(b, cc)) && rel.holds(sd, s.mul(a, c), s.mul(b, c));
                (!ok).then(|| format!("a={a} b={b} c={c}"))
            })
        }),
    );
    report.check(
        "below_e_lies_in_e",
        n as u64 * ne,
        first_witness(&e_ids, |&e| {
            rel.below(sd, e)
                .difference(pair.e())
                .first()
                .map(|a| format!("a={a} e={e}"))
        }),
    );
    report.check(
        "e_dominated_by_square_is_star_dominated",
        n as u64 * ne,
        first_witness(0..n, |a| {
            let p = s.square(a);
            e_ids
                .iter()
                .find(|&&e| rel.holds(dom, e, p) && !rel.holds(sd, e, p))
                .map(|e| format!("a={a} e={e}"))
        }),
    );
    report.check(
        "e_star_dominated_is_dominated_by_range",
        n as u64 * ne,
        first_witness(0..n, |a| {
            let r = s.mul(a, s.star(a));
            e_ids
                .iter()
                .find(|&&e| rel.holds(sd, e, a) && !rel.holds(dom, e, r))
                .map(|e| format!("a={a} e={e}"))
        }),
    );
    report.check(
        "star_domination_absorbs_e",
        m * ne,
        first_witness(&sd_pairs, |&(a, b)| {
            e_ids
                .iter()
                .find(|&&e| !rel.holds(sd, s.mul(e, a), b) || !rel.holds(sd, s.mul(a, e), b))
                .map(|e| format!("a={a} b={b} e={e}"))
        }),
    );
    report.check(
        "domination_left_multiplication",
        nn * n as u64,
        first_witness((0..n).flat_map(|a| rel.above(dom, a).iter().map(move |b| (a, b))), |(a, b)| {
            (0..n)
                .find(|&c| !rel.holds(dom, s.mul(c, a), b))
                .map(|c| format!("a={a} b={b} c={c}"))
        }),
    );
    Ok(report)
}
