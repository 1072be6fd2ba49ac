//! Atlases, cosets, filters and ultrafilters of a Weyl pair, their
//! enumeration, and the coset groupoid product.
//!
//! Every list returned here is sorted by bit-set value.

use crate::error::{Error, Result};
use crate::relations::{closure_up, RelationKind};
use crate::report::{first_witness, Report};
use crate::semigroup::{Id, WeylPair};
use crate::set::ElementSet;
use rayon::prelude::*;
use serde::Serialize;

/// Largest `n` for which cosets are enumerated over all `2ⁿ` subsets.
pub const COSET_EXHAUSTIVE_LIMIT: usize = 16;
/// Largest `n` accepted by the brute-force filter oracle.
pub const BRUTE_FORCE_LIMIT: usize = 20;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubsetClassification {
    pub is_atlas: bool,
    pub is_coset: bool,
    pub is_filter: bool,
    pub is_unit_coset: bool,
    pub is_ultrafilter: bool,
    pub is_proper: bool,
    pub witness: Option<String>,
}

/// `T^≲ = {a : ∃t ∈ T, t ≲ a}`.
pub fn up(pair: &WeylPair, t: &ElementSet) -> ElementSet {
    closure_up(pair, t, RelationKind::StarDominates)
}

/// `CC*C` and the first triple `(x, y, z)` with `xy*z` outside `target`.
fn triple_witness(pair: &WeylPair, c: &ElementSet, target: &ElementSet) -> Option<String> {
    let s = pair.s();
    for x in c {
        for y in c {
            let xy = s.mul(x, s.star(y));
            for z in c {
                let p = s.mul(xy, z);
                if !target.contains(p) {
                    return Some(format!("a={x} b={y} c={z} ab*c={p}"));
                }
            }
        }
    }
    None
}

/// `CC*C ∪ C ⊆ C^≲`; `None` or the violating witness.
fn atlas_witness(pair: &WeylPair, c: &ElementSet) -> Option<String> {
    let cl = up(pair, c);
    if let Some(x) = c.iter().find(|&x| !cl.contains(x)) {
        return Some(format!("a={x} has no lower bound in C"));
    }
    triple_witness(pair, c, &cl)
}

pub fn is_atlas(pair: &WeylPair, c: &ElementSet) -> bool {
    atlas_witness(pair, c).is_none()
}

fn coset_witness(pair: &WeylPair, c: &ElementSet) -> Option<String> {
    let cl = up(pair, c);
    if &cl != c {
        let x = cl.symmetric_difference_first(c);
        return Some(format!("C != C^≲ at a={x}"));
    }
    triple_witness(pair, c, c)
}

/// `CC*C ⊆ C = C^≲` (the empty set included).
pub fn is_coset(pair: &WeylPair, c: &ElementSet) -> bool {
    coset_witness(pair, c).is_none()
}

/// Nonempty, down-directed and up-closed under `≲`.
pub fn is_filter(pair: &WeylPair, c: &ElementSet) -> bool {
    filter_witness(pair, c).is_none()
}

fn filter_witness(pair: &WeylPair, c: &ElementSet) -> Option<String> {
    if c.is_empty() {
        return Some("empty".into());
    }
    let rel = pair.relations();
    let cl = up(pair, c);
    if !cl.is_subset(c) {
        return Some(format!("not up-closed at a={}", cl.difference(c).first().unwrap()));
    }
    for a in c {
        for b in c.iter().filter(|&b| b >= a) {
            let lower = rel.below(RelationKind::StarDominates, a).intersection(rel.below(RelationKind::StarDominates, b));
            if !lower.intersects(c) {
                return Some(format!("a={a} b={b} have no common lower bound in C"));
            }
        }
    }
    None
}

/// `(CC*)^≲`.
fn range_set(pair: &WeylPair, c: &ElementSet) -> ElementSet {
    up(pair, &pair.s().set_mul(c, &pair.s().set_star(c)))
}

/// `(C*C)^≲`.
fn source_set(pair: &WeylPair, c: &ElementSet) -> ElementSet {
    up(pair, &pair.s().set_mul(&pair.s().set_star(c), c))
}

/// A coset with `C = (CC*)^≲`.
pub fn is_unit_coset(pair: &WeylPair, c: &ElementSet) -> bool {
    is_coset(pair, c) && &range_set(pair, c) == c
}

/// Classification against the pair's filter list (for ultrafilter status).
pub fn classify_subset(pair: &WeylPair, c: &ElementSet) -> SubsetClassification {
    let filters = enumerate_filters(pair);
    classify_with(pair, c, &filters)
}

fn classify_with(pair: &WeylPair, c: &ElementSet, filters: &[ElementSet]) -> SubsetClassification {
    let atlas = atlas_witness(pair, c);
    let coset = coset_witness(pair, c);
    let filter = filter_witness(pair, c);
    let is_coset = coset.is_none();
    let is_filter = filter.is_none();
    let is_proper = !c.is_full();
    let is_ultrafilter = is_filter && is_proper && !filters.iter().any(|f| !f.is_full() && f != c && c.is_subset(f));
    SubsetClassification {
        is_atlas: atlas.is_none(),
        is_coset,
        is_filter,
        is_unit_coset: is_coset && &range_set(pair, c) == c,
        is_ultrafilter,
        is_proper,
        witness: atlas.or(coset).or(filter),
    }
}

/// `C^≲`, for an atlas `C`.
pub fn coset_closure(pair: &WeylPair, c: &ElementSet) -> Result<ElementSet> {
    if let Some(w) = atlas_witness(pair, c) {
        return Err(Error::NotAtlas(w));
    }
    Ok(up(pair, c))
}

/// Filters by principal form: every finite filter is `c^≲` for some `c ≲ c`.
/// Candidates are classified, never assumed.
pub fn enumerate_filters(pair: &WeylPair) -> Vec<ElementSet> {
    let rel = pair.relations();
    let mut out: Vec<ElementSet> = pair
        .s()
        .elements()
        .into_par_iter()
        .filter(|&c| rel.holds(RelationKind::StarDominates, c, c))
        .map(|c| rel.above(RelationKind::StarDominates, c).clone())
        .filter(|f| is_filter(pair, f))
        .collect();
    out.sort();
    out.dedup();
    out
}

/// Every subset, classified directly. The oracle for [`enumerate_filters`].
pub fn enumerate_filters_brute_force(pair: &WeylPair) -> Result<Vec<ElementSet>> {
    let n = pair.n();
    if n > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit(format!("brute-force filter scan needs n <= {BRUTE_FORCE_LIMIT}, got {n}")));
    }
    let mut out: Vec<ElementSet> = (0u64..(1u64 << n))
        .into_par_iter()
        .map(|m| ElementSet::from_mask(n, m))
        .filter(|c| is_filter(pair, c))
        .collect();
    out.sort();
    Ok(out)
}

/// The maximal proper members of a filter list.
pub fn maximal_proper(filters: &[ElementSet]) -> Vec<ElementSet> {
    let proper: Vec<&ElementSet> = filters.iter().filter(|f| !f.is_full()).collect();
    let mut out: Vec<ElementSet> = proper
        .iter()
        .filter(|f| !proper.iter().any(|g| g != *f && f.is_subset(g)))
        .map(|f| (*f).clone())
        .collect();
    out.sort();
    out
}

pub fn enumerate_ultrafilters(pair: &WeylPair) -> Vec<ElementSet> {
    maximal_proper(&enumerate_filters(pair))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CosetEnumeration {
    /// Nonempty cosets, sorted.
    pub cosets: Vec<ElementSet>,
    /// False when generated from filters rather than scanned exhaustively.
    pub exhaustive: bool,
}

/// Nonempty cosets: all subsets for `n ≤ 16`, otherwise the closure of the
/// filters under involution and defined products.
pub fn enumerate_cosets(pair: &WeylPair) -> CosetEnumeration {
    let n = pair.n();
    if n <= COSET_EXHAUSTIVE_LIMIT {
        let mut cosets: Vec<ElementSet> = (1u64..(1u64 << n))
            .into_par_iter()
            .map(|m| ElementSet::from_mask(n, m))
            .filter(|c| is_coset(pair, c))
            .collect();
        cosets.sort();
        return CosetEnumeration { cosets, exhaustive: true };
    }
    let mut set: std::collections::BTreeSet<ElementSet> = enumerate_filters(pair).into_iter().collect();
    loop {
        let cur: Vec<ElementSet> = set.iter().cloned().collect();
        let mut grew = false;
        for b in &cur {
            let st = pair.s().set_star(b);
            grew |= set.insert(st);
            for c in &cur {
                if let Ok(Product::Defined(p)) = coset_product(pair, b, c) {
                    grew |= set.insert(p);
                }
            }
        }
        if !grew {
            break;
        }
    }
    CosetEnumeration { cosets: set.into_iter().collect(), exhaustive: false }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Product {
    Defined(ElementSet),
    Undefined,
}

/// `(BC)^≲` when `(B*B)^≲ = (CC*)^≲`; checks that it equals `(Bc)^≲` for
/// every `c ∈ C`.
pub fn coset_product(pair: &WeylPair, b: &ElementSet, c: &ElementSet) -> Result<Product> {
    for x in [b, c] {
        if x.is_empty() || !is_coset(pair, x) {
            return Err(Error::NotCoset(format!("{x:?} is not a nonempty coset")));
        }
    }
    if source_set(pair, b) != range_set(pair, c) {
        return Ok(Product::Undefined);
    }
    let s = pair.s();
    let prod = up(pair, &s.set_mul(b, c));
    if let Some(x) = c.iter().find(|&x| up(pair, &s.set_mul_elem(b, x)) != prod) {
        return Err(Error::Laws(format!("(BC)^≲ differs from (Bc)^≲ at c={x}")));
    }
    Ok(Product::Defined(prod))
}

fn require_coset(pair: &WeylPair, c: &ElementSet) -> Result<()> {
    if c.is_empty() || !is_coset(pair, c) {
        return Err(Error::NotCoset(format!("{c:?} is not a nonempty coset")));
    }
    Ok(())
}

/// `r(C) = (CC*)^≲`.
pub fn range_of(pair: &WeylPair, c: &ElementSet) -> Result<ElementSet> {
    require_coset(pair, c)?;
    Ok(range_set(pair, c))
}

/// `s(C) = (C*C)^≲`.
pub fn source_of(pair: &WeylPair, c: &ElementSet) -> Result<ElementSet> {
    require_coset(pair, c)?;
    Ok(source_set(pair, c))
}

/// The five unit-coset characterizations and whether they agree.
pub fn unit_coset_conditions(pair: &WeylPair, c: &ElementSet) -> [bool; 5] {
    let s = pair.s();
    let coset = is_coset(pair, c);
    let closed = &up(pair, c) == c;
    let cc = s.set_mul(c, &s.set_star(c));
    let squares = ElementSet::from_ids(s.n(), s.elements().map(|a| s.square(a)));
    [
        coset && &range_set(pair, c) == c,
        cc.is_subset(c) && closed,
        s.set_mul(c, c).is_subset(c) && s.set_star(c).is_subset(c) && closed,
        coset && c.intersects(&squares),
        coset && c.intersects(pair.e()),
    ]
}

pub fn unit_coset_equivalences(pair: &WeylPair, c: &ElementSet) -> Report {
    let v = unit_coset_conditions(pair, c);
    let mut r = Report::new();
    let names = ["unit_coset", "cc_star_in_closed", "closed_star_subsemigroup", "coset_with_square", "coset_with_e"];
    for (name, x) in names.iter().zip(v) {
        r.fact(*name, x);
    }
    let agree = v.iter().all(|&x| x == v[0]);
    r.check("five_way_agreement", 1, (!agree).then(|| format!("{v:?}")));
    r
}

/// Subsets the structural suites quantify over: every subset when small,
/// otherwise the enumerated cosets.
fn test_family(pair: &WeylPair, cosets: &CosetEnumeration) -> Vec<ElementSet> {
    let n = pair.n();
    if n <= 10 {
        (1u64..(1u64 << n)).map(|m| ElementSet::from_mask(n, m)).collect()
    } else {
        cosets.cosets.clone()
    }
}

fn down_directed(pair: &WeylPair, t: &ElementSet) -> bool {
    let rel = pair.relations();
    t.iter().all(|a| {
        t.iter().all(|b| {
            rel.below(RelationKind::StarDominates, a)
                .intersection(rel.below(RelationKind::StarDominates, b))
                .intersects(t)
        })
    })
}

fn squares_of(pair: &WeylPair, c: &ElementSet) -> ElementSet {
    c.map(pair.n(), |a| pair.s().square(a))
}

/// Coset and filter laws checked on every relevant subset of a pair.
pub fn coset_law_suite(pair: &WeylPair) -> Result<Report> {
    let s = pair.s();
    let n = pair.n();
    let rel = pair.relations();
    let cosets = enumerate_cosets(pair);
    let family = test_family(pair, &cosets);
    let filters = enumerate_filters(pair);
    let ultras = maximal_proper(&filters);
    let mut r = Report::new();
    r.fact("cosets", cosets.cosets.len());
    r.fact("coset_enumeration", if cosets.exhaustive { "exhaustive" } else { "non-exhaustive" });
    r.fact("filters", filters.len());
    r.fact("ultrafilters", ultras.len());

    let sd = |a: Id, b: Id| rel.holds(RelationKind::StarDominates, a, b);
    let dom = |a: Id, b: Id| rel.holds(RelationKind::Dominates, a, b);

    // C|C|² ⊆ C ⊆ C^≲ gives c ≲ a, d ≲ b, c ≺ b*b, d ≺ a*a with c*c = d*d.
    let hyp: Vec<&ElementSet> =
        family.iter().filter(|c| s.set_mul(c, &squares_of(pair, c)).is_subset(c) && c.is_subset(&up(pair, c))).collect();
    let w = first_witness(hyp.iter().flat_map(|c| c.iter().flat_map(move |a| c.iter().map(move |b| (*c, a, b)))), |(c, a, b)| {
        let found = c.iter().any(|x| {
            sd(x, a)
                && dom(x, s.square(b))
                && c.iter().any(|y| sd(y, b) && dom(y, s.square(a)) && s.square(x) == s.square(y))
        });
        (!found).then(|| format!("C={c:?} a={a} b={b}"))
    });
    r.check("trapping_pair_exists", hyp.len() as u64, w);

    let atlases: Vec<&ElementSet> = family.iter().filter(|c| is_atlas(pair, c)).collect();
    let w = first_witness(atlases.iter(), |c| {
        let sq = squares_of(pair, c);
        let ctc = s.set_mul(&s.set_star(c), c);
        let d1 = down_directed(pair, c);
        let d2 = down_directed(pair, &ctc);
        let d3 = up(pair, &ctc) == up(pair, &sq);
        if !down_directed(pair, &sq) {
            Some(format!("C={c:?}: |C|² not down-directed"))
        } else if d1 != d2 || d2 != d3 {
            Some(format!("C={c:?}: directed={d1} C*C directed={d2} closures equal={d3}"))
        } else {
            None
        }
    });
    r.check("atlas_squares_directed", atlases.len() as u64, w);

    let dom_up = |t: &ElementSet| closure_up(pair, t, RelationKind::Dominates);
    let w = first_witness(atlases.iter(), |c| {
        let ctc = s.set_mul(&s.set_star(c), c);
        (dom_up(&squares_of(pair, c)) != dom_up(&squares_of(pair, &ctc))).then(|| format!("C={c:?}"))
    });
    r.check("atlas_square_dominance", atlases.len() as u64, w);

    let w = first_witness(filters.iter(), |f| {
        if !is_coset(pair, f) {
            Some(format!("filter {f:?} is not a coset"))
        } else {
            (!is_filter(pair, &s.set_star(f))).then(|| format!("{f:?}* is not a filter"))
        }
    });
    r.check("filters_are_star_closed_cosets", filters.len() as u64, w);

    let products = |xs: &[ElementSet], ys: &[ElementSet], keep: &dyn Fn(&ElementSet) -> bool| -> Result<(u64, Option<String>)> {
        let mut cases = 0;
        for x in xs {
            for y in ys {
                for (b, c) in [(x, y), (y, x)] {
                    if let Product::Defined(p) = coset_product(pair, b, c)? {
                        cases += 1;
                        if !keep(&p) {
                            return Ok((cases, Some(format!("B={b:?} C={c:?} BC={p:?}"))));
                        }
                    }
                }
            }
        }
        Ok((cases, None))
    };
    let (cases, w) = products(&filters, &cosets.cosets, &|p| is_filter(pair, p))?;
    r.check("filters_form_an_ideal", cases, w);

    let w = first_witness(cosets.cosets.iter(), |c| {
        let unit_filter = is_unit_coset(pair, c) && is_filter(pair, c);
        let e_generated = &up(pair, &c.intersection(pair.e())) == c;
        (unit_filter != e_generated).then(|| format!("C={c:?} unit filter={unit_filter} E-generated={e_generated}"))
    });
    r.check("unit_filters_are_e_generated", cosets.cosets.len() as u64, w);

    let w = first_witness(ultras.iter(), |u| {
        (!ultras.contains(&s.set_star(u))).then(|| format!("{u:?}* is not an ultrafilter"))
    });
    r.check("ultrafilters_star_closed", ultras.len() as u64, w);
    let (cases, w) = products(&ultras, &filters, &|p| ultras.contains(p))?;
    r.check("ultrafilters_form_an_ideal", cases, w);

    let w = first_witness(family.iter(), |c| {
        let k = classify_with(pair, c, &filters);
        let chain = (!k.is_ultrafilter || k.is_filter) && (!k.is_filter || k.is_coset) && (!k.is_coset || k.is_atlas);
        (!chain || (k.is_unit_coset && !k.is_coset)).then(|| format!("C={c:?} {k:?}"))
    });
    r.check("classification_chain", family.len() as u64, w);

    let brute_ok = n <= 12;
    if brute_ok {
        let brute = enumerate_filters_brute_force(pair)?;
        r.check("principal_filters_match_brute_force", brute.len() as u64, (brute != filters).then(|| format!("{} vs {}", brute.len(), filters.len())));
    }
    Ok(r)
}

trait FirstDiff {
    fn symmetric_difference_first(&self, other: &Self) -> usize;
}

impl FirstDiff for ElementSet {
    fn symmetric_difference_first(&self, other: &Self) -> usize {
        self.difference(other).union(&other.difference(self)).first().expect("sets differ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{self, bisection_pair, cyclic_group, group_pair, s3_a3, symmetric_inverse_monoid, z4_02};

    fn set(n: usize, ids: &[usize]) -> ElementSet {
        ElementSet::from_ids(n, ids.iter().copied())
    }

    #[test]
    fn group_pair_cosets_and_filters() {
        let p = s3_a3();
        let a3 = p.e().clone();
        let k = classify_subset(&p, &a3);
        assert!(k.is_coset && k.is_filter && k.is_unit_coset && k.is_ultrafilter && k.is_proper);
        let filters = enumerate_filters(&p);
        assert_eq!(filters, vec![a3.clone(), a3.complement()]);
        assert_eq!(enumerate_ultrafilters(&p).len(), 2);
        let g = models::S3_TRANSPOSITION_12;
        assert_eq!(coset_closure(&p, &set(6, &[g])).unwrap(), a3.complement());
        assert_eq!(range_of(&p, &a3.complement()).unwrap(), a3);
    }

    #[test]
    fn empty_and_full_subsets() {
        let p = group_pair(cyclic_group(2), set(2, &[0])).unwrap();
        let k = classify_subset(&p, &ElementSet::empty(2));
        assert!(k.is_atlas && !k.is_filter);
        let full = classify_subset(&p, &ElementSet::full(2));
        assert!(full.is_coset && !full.is_proper && !full.is_filter && !full.is_ultrafilter);
        assert_eq!(enumerate_filters(&p), vec![set(2, &[0]), set(2, &[1])]);
    }

    #[test]
    fn full_normal_subgroup_has_no_ultrafilters() {
        let p = group_pair(cyclic_group(2), ElementSet::full(2)).unwrap();
        assert!(enumerate_ultrafilters(&p).is_empty());
        assert_eq!(enumerate_ultrafilters(&z4_02()).len(), 2);
    }

    #[test]
    fn products_in_the_group_case() {
        let p = s3_a3();
        let a3 = p.e().clone();
        let odd = a3.complement();
        assert_eq!(coset_product(&p, &odd, &odd).unwrap(), Product::Defined(a3.clone()));
        assert_eq!(coset_product(&p, &a3, &odd).unwrap(), Product::Defined(odd.clone()));
        assert!(coset_product(&p, &ElementSet::empty(6), &odd).is_err());
    }

    #[test]
    fn bisection_model_ultrafilters_are_arrows() {
        let m = bisection_pair(2);
        let ultras = enumerate_ultrafilters(&m.pair);
        assert_eq!(ultras.len(), 4);
        for u in &ultras {
            let arrows: Vec<usize> = (0..4).filter(|&g| u.iter().all(|a| m.functions[a].values[g] != 0)).collect();
            assert_eq!(arrows.len(), 1);
        }
        // Mismatched source and range: arrows (0,1) and (0,1) do not compose.
        let at = |g: usize| ultras.iter().find(|u| u.iter().all(|a| m.functions[a].values[g] != 0)).unwrap().clone();
        assert_eq!(coset_product(&m.pair, &at(1), &at(1)).unwrap(), Product::Undefined);
        let Product::Defined(p) = coset_product(&m.pair, &at(1), &at(2)).unwrap() else { panic!() };
        assert_eq!(p, at(0));
    }

    #[test]
    fn principal_form_matches_brute_force() {
        for (name, pair) in models::bundled_pairs().into_iter().filter(|(_, p)| p.n() <= 12) {
            assert_eq!(enumerate_filters(&pair), enumerate_filters_brute_force(&pair).unwrap(), "{name}");
        }
    }

    #[test]
    fn unit_coset_conditions_agree_exhaustively() {
        let i2 = symmetric_inverse_monoid(2).unwrap();
        for m in 1u64..(1 << 7) {
            let c = ElementSet::from_mask(7, m);
            assert!(unit_coset_equivalences(&i2, &c).passed(), "{c:?}");
        }
        let p = s3_a3();
        assert_eq!(unit_coset_conditions(&p, p.e()), [true; 5]);
        assert_eq!(unit_coset_conditions(&p, &p.e().complement()), [false; 5]);
    }

    #[test]
    fn law_suite_on_small_models() {
        for (name, pair) in models::bundled_pairs().into_iter().filter(|(_, p)| p.n() <= 17) {
            let r = coset_law_suite(&pair).unwrap();
            assert!(r.passed(), "{name}: {}", r.render_text());
        }
    }
}
