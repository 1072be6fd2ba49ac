//! Finite *-semigroups, Weyl pairs and the derived subsets built from them.

use crate::error::{Error, Result};
use crate::relations::Relations;
use crate::report::{first_witness, Report};
use crate::set::ElementSet;
use rayon::prelude::*;
use std::sync::OnceLock;

/// Element ids are dense indices `0..n`.
pub type Id = usize;

/// A finite *-semigroup given by its multiplication and involution tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StarSemigroup {
    n: usize,
    mult: Vec<u32>,
    star: Vec<u32>,
    zero: Option<Id>,
}

/// Check the table shapes, then the *-semigroup laws.
///
/// Shape problems (ragged rows, ids out of range) are returned as
/// [`Error::Structure`]; law violations are reported as failed checks, each
/// with one witness.
pub fn validate_star_semigroup(mult: &[Vec<Id>], star: &[Id], zero: Option<Id>) -> Result<Report> {
    let n = star.len();
    if mult.len() != n {
        return Err(Error::Structure(format!(
            "multiplication table has {} rows but the star table has {n} entries",
            mult.len()
        )));
    }
    for (a, row) in mult.iter().enumerate() {
        if row.len() != n {
            return Err(Error::Structure(format!("row {a} has length {}, expected {n}", row.len())));
        }
        if let Some(&bad) = row.iter().find(|&&x| x >= n) {
            return Err(Error::Structure(format!("row {a} contains out-of-range id {bad}")));
        }
    }
    if let Some(&bad) = star.iter().find(|&&x| x >= n) {
        return Err(Error::Structure(format!("star table contains out-of-range id {bad}")));
    }
    if let Some(z) = zero {
        if z >= n {
            return Err(Error::Structure(format!("zero {z} out of range")));
        }
    }

    let mut report = Report::new();
    let n64 = n as u64;
    report.check(
        "involution",
        n64,
        first_witness(0..n, |a| (star[star[a]] != a).then(|| format!("a={a}"))),
    );
    let assoc = (0..n).into_par_iter().find_map_first(|a| {
        for b in 0..n {
            for c in 0..n {
                if mult[a][mult[b][c]] != mult[mult[a][b]][c] {
                    return Some(format!("a={a} b={b} c={c}"));
                }
            }
        }
        None
    });
    report.check("associativity", n64.pow(3), assoc);
    report.check(
        "antihomomorphism",
        n64 * n64,
        first_witness((0..n).flat_map(|a| (0..n).map(move |b| (a, b))), |(a, b)| {
            (star[mult[a][b]] != mult[star[b]][star[a]]).then(|| format!("a={a} b={b}"))
        }),
    );
    if let Some(z) = zero {
        report.check(
            "absorbing_zero",
            n64,
            first_witness(0..n, |a| {
                (mult[z][a] != z || mult[a][z] != z).then(|| format!("zero={z} a={a}"))
            }),
        );
    }
    Ok(report)
}

impl StarSemigroup {
    /// Validated construction from tables; `mult[a][b]` is the id of `ab`.
    pub fn new(mult: Vec<Vec<Id>>, star: Vec<Id>, zero: Option<Id>) -> Result<Self> {
        let report = validate_star_semigroup(&mult, &star, zero)?;
        if let Some(bad) = report.failures().next() {
            return Err(Error::Laws(format!(
                "{} [{}]",
                bad.name,
                bad.witness.clone().unwrap_or_default()
            )));
        }
        Ok(Self::from_tables_unchecked(mult, star, zero))
    }

    /// Validated construction from product and involution functions.
    pub fn from_fn(n: usize, mul: impl Fn(Id, Id) -> Id, star: impl Fn(Id) -> Id, zero: Option<Id>) -> Result<Self> {
        let mult = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::new(mult, (0..n).map(star).collect(), zero)
    }

    /// Construction without law checks (shapes must still be consistent).
    pub fn from_tables_unchecked(mult: Vec<Vec<Id>>, star: Vec<Id>, zero: Option<Id>) -> Self {
        let n = star.len();
        assert_eq!(mult.len(), n, "table shape mismatch");
        StarSemigroup {
            n,
            mult: mult.into_iter().flatten().map(|x| x as u32).collect(),
            star: star.into_iter().map(|x| x as u32).collect(),
            zero,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: Id, b: Id) -> Id {
        self.mult[a * self.n + b] as Id
    }

    #[inline]
    pub fn star(&self, a: Id) -> Id {
        self.star[a] as Id
    }

    pub fn zero(&self) -> Option<Id> {
        self.zero
    }

    pub fn elements(&self) -> std::ops::Range<Id> {
        0..self.n
    }

    pub fn mult_table(&self) -> Vec<Vec<Id>> {
        (0..self.n).map(|a| (0..self.n).map(|b| self.mul(a, b)).collect()).collect()
    }

    pub fn star_table(&self) -> Vec<Id> {
        (0..self.n).map(|a| self.star(a)).collect()
    }

    pub fn empty_set(&self) -> ElementSet {
        ElementSet::empty(self.n)
    }

    pub fn full_set(&self) -> ElementSet {
        ElementSet::full(self.n)
    }

    /// `a* a`.
    pub fn square(&self, a: Id) -> Id {
        self.mul(self.star(a), a)
    }

    /// The product set `AB`.
    pub fn set_mul(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = self.empty_set();
        for x in a {
            for y in b {
                out.insert(self.mul(x, y));
            }
        }
        out
    }

    /// The set `A*`.
    pub fn set_star(&self, a: &ElementSet) -> ElementSet {
        a.map(self.n, |x| self.star(x))
    }

    pub fn set_mul_elem(&self, a: &ElementSet, c: Id) -> ElementSet {
        a.map(self.n, |x| self.mul(x, c))
    }
}

/// The derived subsets of a subset `T`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DerivedKind {
    /// `|T|² = {a*a : a ∈ T}`.
    Squares,
    /// `T_sa = {a ∈ T : a = a*}`.
    SelfAdjoint,
    /// `T_pi = {a ∈ T : a = aa*a}`.
    PartialIsometries,
    /// `T_* = {a ∈ S : a*Ta ∪ aTa* ⊆ T}`.
    StarNormalisers,
    /// `T_• = {a ∈ S : aT = Ta}`.
    Normalisers,
    /// `T' = {a ∈ S : at = ta for all t ∈ T}`.
    Centralisers,
}

pub fn derived_subset(s: &StarSemigroup, t: &ElementSet, kind: DerivedKind) -> ElementSet {
    let n = s.n();
    match kind {
        DerivedKind::Squares => t.map(n, |a| s.square(a)),
        DerivedKind::SelfAdjoint => ElementSet::from_ids(n, t.iter().filter(|&a| s.star(a) == a)),
        DerivedKind::PartialIsometries => {
            ElementSet::from_ids(n, t.iter().filter(|&a| s.mul(s.mul(a, s.star(a)), a) == a))
        }
        DerivedKind::StarNormalisers => ElementSet::from_ids(
            n,
            s.elements().filter(|&a| {
                let sa = s.star(a);
                t.iter()
                    .all(|x| t.contains(s.mul(s.mul(sa, x), a)) && t.contains(s.mul(s.mul(a, x), sa)))
            }),
        ),
        DerivedKind::Normalisers => ElementSet::from_ids(
            n,
            s.elements().filter(|&a| {
                let at = t.map(n, |x| s.mul(a, x));
                let ta = t.map(n, |x| s.mul(x, a));
                at == ta
            }),
        ),
        DerivedKind::Centralisers => ElementSet::from_ids(
            n,
            s.elements().filter(|&a| t.iter().all(|x| s.mul(a, x) == s.mul(x, a))),
        ),
    }
}

/// Check the three Weyl pair axioms for `(S, E)`.
pub fn is_weyl_pair(s: &StarSemigroup, e: &ElementSet) -> Report {
    let n = s.n() as u64;
    let ne = e.len() as u64;
    let mut report = Report::new();
    let sub = first_witness(e.iter(), |x| {
        if !e.contains(s.star(x)) {
            return Some(format!("e={x}: e* = {} outside E", s.star(x)));
        }
        e.iter()
            .find(|&y| !e.contains(s.mul(x, y)))
            .map(|y| format!("e={x} f={y}: ef = {} outside E", s.mul(x, y)))
    });
    report.check("star_subsemigroup", ne * ne + ne, sub);
    let normal = first_witness(s.elements(), |a| {
        e.iter()
            .find(|&x| !e.contains(s.mul(s.mul(s.star(a), x), a)))
            .map(|x| format!("a={a} e={x}: a*ea = {} outside E", s.mul(s.mul(s.star(a), x), a)))
    });
    report.check("star_normal", n * ne, normal);
    let central = first_witness(s.elements(), |a| {
        let p = s.square(a);
        if !e.contains(p) {
            return Some(format!("a={a}: a*a = {p} outside E"));
        }
        e.iter()
            .find(|&x| s.mul(p, x) != s.mul(x, p))
            .map(|x| format!("a={a} e={x}: a*a does not commute with e"))
    });
    report.check("central_squares", n * ne + n, central);
    report
}

/// A finite *-semigroup `S` with a distinguished subset `E` satisfying the
/// Weyl axioms: `E` is a *-normal *-subsemigroup whose centre contains every
/// *-square `a*a`.
#[derive(Clone, Debug)]
pub struct WeylPair {
    s: StarSemigroup,
    e: ElementSet,
    relations: OnceLock<Relations>,
}

impl WeylPair {
    pub fn new(s: StarSemigroup, e: ElementSet) -> Result<Self> {
        if e.universe() != s.n() {
            return Err(Error::Structure("E lives in a universe of the wrong size".into()));
        }
        let report = is_weyl_pair(&s, &e);
        if let Some(bad) = report.failures().next() {
            return Err(Error::NotWeylPair(format!(
                "{} [{}]",
                bad.name,
                bad.witness.clone().unwrap_or_default()
            )));
        }
        Ok(Self::new_unchecked(s, e))
    }

    /// Pair without axiom checks, for experiments with broken inputs.
    pub fn new_unchecked(s: StarSemigroup, e: ElementSet) -> Self {
        WeylPair {
            s,
            e,
            relations: OnceLock::new(),
        }
    }

    pub fn s(&self) -> &StarSemigroup {
        &self.s
    }

    pub fn e(&self) -> &ElementSet {
        &self.e
    }

    pub fn n(&self) -> usize {
        self.s.n()
    }

    pub fn in_e(&self, a: Id) -> bool {
        self.e.contains(a)
    }

    /// The memoized relation matrices of this pair.
    pub fn relations(&self) -> &Relations {
        self.relations.get_or_init(|| Relations::compute(self))
    }
}

/// Check that the partial isometries of `S` form an inverse semigroup.
pub fn check_pi_inverse_semigroup(pair: &WeylPair) -> Report {
    let s = pair.s();
    let pi = derived_subset(s, &s.full_set(), DerivedKind::PartialIsometries);
    let k = pi.len() as u64;
    let mut report = Report::new();
    let closed = first_witness(pi.iter(), |a| {
        pi.iter()
            .find(|&b| !pi.contains(s.mul(a, b)))
            .map(|b| format!("a={a} b={b}: ab = {} is not a partial isometry", s.mul(a, b)))
    });
    report.check("pi_closed_under_product", k * k, closed);
    report.check(
        "pi_closed_under_star",
        k,
        first_witness(pi.iter(), |a| (!pi.contains(s.star(a))).then(|| format!("a={a}"))),
    );
    let idempotents: Vec<Id> = pi.iter().filter(|&p| s.mul(p, p) == p).collect();
    let commute = first_witness(idempotents.iter(), |&p| {
        idempotents
            .iter()
            .find(|&&q| s.mul(p, q) != s.mul(q, p))
            .map(|q| format!("p={p} q={q}"))
    });
    report.check("pi_idempotents_commute", (idempotents.len() as u64).pow(2), commute);
    report.fact("partial_isometries", pi.len());
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models;

    #[test]
    fn z2_with_identity_star_is_valid() {
        let r = validate_star_semigroup(&[vec![0, 1], vec![1, 0]], &[0, 1], None).unwrap();
        assert!(r.passed());
    }

    #[test]
    fn structural_errors_are_not_law_failures() {
        assert!(matches!(
            validate_star_semigroup(&[vec![0, 1], vec![1]], &[0, 1], None),
            Err(Error::Structure(_))
        ));
        assert!(matches!(
            validate_star_semigroup(&[vec![0, 2], vec![1, 0]], &[0, 1], None),
            Err(Error::Structure(_))
        ));
    }

    #[test]
    fn s3_with_identity_star_breaks_antihomomorphism() {
        let g = models::symmetric_group3();
        let mult = g.mult_table();
        let r = validate_star_semigroup(&mult, &(0..6).collect::<Vec<_>>(), None).unwrap();
        assert!(r.get("associativity").unwrap().passed);
        assert!(r.get("involution").unwrap().passed);
        let anti = r.get("antihomomorphism").unwrap();
        assert!(!anti.passed);
        let w = anti.witness.as_ref().unwrap();
        let ids: Vec<usize> = w
            .split_whitespace()
            .map(|kv| kv.split('=').nth(1).unwrap().parse().unwrap())
            .collect();
        assert_ne!(g.mul(ids[0], ids[1]), g.mul(ids[1], ids[0]));
    }

    #[test]
    fn zero_must_absorb() {
        let r = validate_star_semigroup(&[vec![0, 1], vec![1, 0]], &[0, 1], Some(0)).unwrap();
        assert!(!r.get("absorbing_zero").unwrap().passed);
    }

    #[test]
    fn derived_subsets_examples() {
        let z2 = models::cyclic_group(2);
        let sq = derived_subset(&z2, &z2.full_set(), DerivedKind::Squares);
        assert_eq!(sq.to_vec(), vec![0]);
        let z3m = models::z3_multiplicative().s().clone();
        assert!(derived_subset(&z3m, &z3m.full_set(), DerivedKind::SelfAdjoint).is_full());
        let i2 = models::symmetric_inverse_monoid(2).unwrap();
        let pi = derived_subset(i2.s(), &i2.s().full_set(), DerivedKind::PartialIsometries);
        assert!(pi.is_full());
    }

    #[test]
    fn weyl_pair_examples() {
        let s3 = models::symmetric_group3();
        let a3 = models::alternating_subgroup(&s3);
        assert!(is_weyl_pair(&s3, &a3).passed());
        let i2 = models::symmetric_inverse_monoid(2).unwrap();
        assert!(is_weyl_pair(i2.s(), i2.e()).passed());
        // A transposition squares to the identity, so {e, t} is closed; it is
        // conjugation that leaves it.
        let t = ElementSet::from_ids(6, [0, models::S3_TRANSPOSITION_12]);
        let r = is_weyl_pair(&s3, &t);
        assert!(r.get("star_subsemigroup").unwrap().passed);
        assert!(!r.get("star_normal").unwrap().passed);
    }

    #[test]
    fn star_normalisers_contain_e() {
        for (name, pair) in models::bundled_pairs() {
            let en = derived_subset(pair.s(), pair.e(), DerivedKind::StarNormalisers);
            assert!(pair.e().is_subset(&en), "{name}");
        }
    }

    #[test]
    fn involution_and_antihomomorphism_on_bundled_models() {
        for (name, pair) in models::bundled_pairs() {
            let s = pair.s();
            for a in s.elements() {
                assert_eq!(s.star(s.star(a)), a, "{name}");
                for b in s.elements() {
                    assert_eq!(s.star(s.mul(a, b)), s.mul(s.star(b), s.star(a)), "{name}");
                }
            }
        }
    }

    #[test]
    fn pi_inverse_semigroup_examples() {
        let i3 = models::symmetric_inverse_monoid(3).unwrap();
        assert!(check_pi_inverse_semigroup(&i3).passed());
        let s3a3 = models::s3_a3();
        let r = check_pi_inverse_semigroup(&s3a3);
        assert!(r.passed());
        assert_eq!(r.fact_value("partial_isometries"), Some("6"));
        let bis = models::bisection_pair(2);
        assert!(check_pi_inverse_semigroup(&bis.pair).passed());
    }
}
