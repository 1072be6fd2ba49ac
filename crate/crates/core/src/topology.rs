//! Finite topologies, the coset and Weyl groupoids as topological groupoids,
//! and their étale, Hausdorff and compact-containment checks.

use crate::cosets::{coset_product, enumerate_cosets, enumerate_filters, is_unit_coset, maximal_proper, Product};
use crate::error::{Error, Result};
use crate::groupoid::{validate_groupoid, FiniteGroupoid};
use crate::models::EmbeddedModel;
use crate::relations::RelationKind;
use crate::report::{first_witness, Report};
use crate::semigroup::{Id, WeylPair};
use crate::set::ElementSet;
use serde::Serialize;
use std::collections::{BTreeSet, HashMap};

/// Most opens materialised by [`FiniteTopology::opens`].
pub const OPEN_LIMIT: usize = 1 << 20;
/// Most basic opens whose subfamilies are enumerated as covers.
pub const COVER_ENUMERATION_LIMIT: usize = 16;

/// A topology on `0..m`, stored by the minimal open neighbourhood of each
/// point. A set is open iff it contains the neighbourhood of each member.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiniteTopology {
    m: usize,
    nbhd: Vec<ElementSet>,
}

impl FiniteTopology {
    /// The topology generated by `subbasis`: the neighbourhood of `x` is the
    /// intersection of the subbasic sets containing it.
    pub fn from_subbasis(m: usize, subbasis: &[ElementSet]) -> Self {
        let nbhd = (0..m)
            .map(|x| {
                let mut n = ElementSet::full(m);
                for s in subbasis.iter().filter(|s| s.contains(x)) {
                    n.intersect_with(s);
                }
                n
            })
            .collect();
        FiniteTopology { m, nbhd }
    }

    pub fn discrete(m: usize) -> Self {
        FiniteTopology { m, nbhd: (0..m).map(|x| ElementSet::singleton(m, x)).collect() }
    }

    pub fn indiscrete(m: usize) -> Self {
        FiniteTopology { m, nbhd: vec![ElementSet::full(m); m] }
    }

    /// From an explicit family of opens, which must already be a topology.
    pub fn from_opens(m: usize, opens: &[ElementSet]) -> Result<Self> {
        let t = Self::from_subbasis(m, opens);
        let mut given: Vec<ElementSet> = opens.to_vec();
        given.push(ElementSet::empty(m));
        given.push(ElementSet::full(m));
        given.sort();
        given.dedup();
        if t.opens()? != given {
            return Err(Error::Invalid("family is not closed under unions and intersections".into()));
        }
        Ok(t)
    }

    pub fn points(&self) -> usize {
        self.m
    }

    /// The smallest open set containing `x`.
    pub fn nbhd(&self, x: usize) -> &ElementSet {
        &self.nbhd[x]
    }

    pub fn is_open(&self, o: &ElementSet) -> bool {
        o.iter().all(|x| self.nbhd[x].is_subset(o))
    }

    pub fn interior(&self, o: &ElementSet) -> ElementSet {
        ElementSet::from_ids(self.m, o.iter().filter(|&x| self.nbhd[x].is_subset(o)))
    }

    /// The distinct minimal neighbourhoods, sorted: the coarsest basis.
    pub fn basis(&self) -> Vec<ElementSet> {
        let set: BTreeSet<ElementSet> = self.nbhd.iter().cloned().collect();
        set.into_iter().collect()
    }

    pub fn is_discrete(&self) -> bool {
        (0..self.m).all(|x| self.nbhd[x].len() == 1)
    }

    /// All opens as unions of basic opens, sorted.
    pub fn opens(&self) -> Result<Vec<ElementSet>> {
        let mut all = BTreeSet::new();
        all.insert(ElementSet::empty(self.m));
        for b in self.basis() {
            let next: Vec<ElementSet> = all.iter().map(|o| o.union(&b)).collect();
            all.extend(next);
            if all.len() > OPEN_LIMIT {
                return Err(Error::SizeLimit(format!("more than {OPEN_LIMIT} open sets")));
            }
        }
        Ok(all.into_iter().collect())
    }

    /// Number of opens; `None` when they would have to be enumerated beyond
    /// [`OPEN_LIMIT`].
    pub fn open_count(&self) -> Option<u64> {
        if self.is_discrete() && self.m < 64 {
            return Some(1u64 << self.m);
        }
        self.opens().ok().map(|o| o.len() as u64)
    }

    /// The first point where `f: self → target` fails continuity.
    pub fn continuity_witness(&self, f: &[usize], target: &FiniteTopology) -> Option<usize> {
        (0..self.m).find(|&x| !self.nbhd[x].iter().all(|y| target.nbhd[f[x]].contains(f[y])))
    }

    /// The first basic open whose image under `f` is not open in `target`.
    pub fn openness_witness(&self, f: &[usize], target: &FiniteTopology) -> Option<ElementSet> {
        self.basis().into_iter().find(|b| !target.is_open(&b.map(target.m, |x| f[x])))
    }
}

pub fn topology_from_subbasis(m: usize, subbasis: &[ElementSet]) -> FiniteTopology {
    FiniteTopology::from_subbasis(m, subbasis)
}

/// `O ⋐ N`: every open cover of `N` has a finite subcover of `O`. Covers are
/// families of basic opens inside `N` together with `{N}` itself; with more
/// than [`COVER_ENUMERATION_LIMIT`] basic opens only the extreme covers are
/// tried.
pub fn compactly_contained(t: &FiniteTopology, o: &ElementSet, n: &ElementSet) -> Result<bool> {
    if !t.is_open(o) || !t.is_open(n) {
        return Err(Error::Invalid("compact containment needs open sets".into()));
    }
    let basics: Vec<ElementSet> = t.basis().into_iter().filter(|b| b.is_subset(n)).collect();
    let mut covers: Vec<Vec<&ElementSet>> = vec![vec![n]];
    if basics.len() <= COVER_ENUMERATION_LIMIT {
        for mask in 1u32..(1 << basics.len()) {
            let family: Vec<&ElementSet> = (0..basics.len()).filter(|&i| mask & (1 << i) != 0).map(|i| &basics[i]).collect();
            let mut u = ElementSet::empty(t.points());
            family.iter().for_each(|b| u.union_with(b));
            if n.is_subset(&u) {
                covers.push(family);
            }
        }
    } else {
        covers.push(basics.iter().collect());
    }
    // A finite cover is its own finite subcover; the question is whether it
    // reaches O at all.
    Ok(covers.iter().all(|family| {
        let mut u = ElementSet::empty(t.points());
        family.iter().for_each(|b| u.union_with(b));
        o.is_subset(&u)
    }))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Carrier {
    Cosets,
    Filters,
    Ultrafilters,
}

impl std::str::FromStr for Carrier {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "cosets" => Ok(Carrier::Cosets),
            "filters" => Ok(Carrier::Filters),
            "ultrafilters" => Ok(Carrier::Ultrafilters),
            _ => Err(Error::Parse(format!("unknown carrier {s:?}"))),
        }
    }
}

/// A finite groupoid with a topology. Points built from a pair carry their
/// underlying subsets of `S`.
#[derive(Clone, Debug)]
pub struct TopGroupoid {
    pub carrier: Option<Carrier>,
    pub points: Vec<ElementSet>,
    pub star: Vec<usize>,
    pub product: Vec<Vec<Option<usize>>>,
    pub units: ElementSet,
    pub topology: FiniteTopology,
    /// `subbasis_map[a]` holds the points containing `a`.
    pub subbasis_map: Vec<ElementSet>,
    /// False when the coset carrier was generated rather than exhaustive.
    pub exhaustive: bool,
    /// Structural checks made at assembly.
    pub checks: Report,
}

impl TopGroupoid {
    /// A hand-built topological groupoid.
    pub fn from_groupoid(g: &FiniteGroupoid, topology: FiniteTopology) -> Result<Self> {
        if topology.points() != g.n() {
            return Err(Error::Invalid("topology and groupoid sizes differ".into()));
        }
        Ok(TopGroupoid {
            carrier: None,
            points: Vec::new(),
            star: g.inv_table().to_vec(),
            product: g.product_table().to_vec(),
            units: g.units(),
            topology,
            subbasis_map: Vec::new(),
            exhaustive: true,
            checks: validate_groupoid(g.product_table(), g.inv_table())?,
        })
    }

    pub fn n(&self) -> usize {
        self.star.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.product[a][b]
    }

    pub fn source(&self, a: usize) -> usize {
        self.product[self.star[a]][a].expect("groupoid arrows are unitary")
    }

    pub fn range(&self, a: usize) -> usize {
        self.product[a][self.star[a]].expect("groupoid arrows are unitary")
    }

    pub fn groupoid(&self) -> FiniteGroupoid {
        FiniteGroupoid::from_tables_unchecked(self.product.clone(), self.star.clone())
    }

    /// Pointwise product of point sets.
    pub fn set_mul(&self, a: &ElementSet, b: &ElementSet) -> ElementSet {
        let mut out = ElementSet::empty(self.n());
        for x in a {
            for y in b {
                if let Some(z) = self.mul(x, y) {
                    out.insert(z);
                }
            }
        }
        out
    }

    /// Index of the point with underlying set `c`.
    pub fn point_of(&self, c: &ElementSet) -> Option<usize> {
        self.points.binary_search(c).ok()
    }
}

/// The coset, filter or ultrafilter groupoid of a pair, with the topology
/// generated by the sets `C_a = {C : a ∈ C}`.
pub fn weyl_groupoid(pair: &WeylPair, carrier: Carrier) -> Result<TopGroupoid> {
    let (points, exhaustive) = match carrier {
        Carrier::Cosets => {
            let e = enumerate_cosets(pair);
            (e.cosets, e.exhaustive)
        }
        Carrier::Filters => (enumerate_filters(pair), true),
        Carrier::Ultrafilters => (maximal_proper(&enumerate_filters(pair)), true),
    };
    let m = points.len();
    let index: HashMap<&ElementSet, usize> = points.iter().enumerate().map(|(i, c)| (c, i)).collect();
    let s = pair.s();
    let mut star = Vec::with_capacity(m);
    for c in &points {
        let cs = s.set_star(c);
        star.push(*index.get(&cs).ok_or_else(|| Error::Laws(format!("{c:?}* leaves the carrier")))?);
    }
    let mut product = vec![vec![None; m]; m];
    for (i, b) in points.iter().enumerate() {
        for (j, c) in points.iter().enumerate() {
            if let Product::Defined(p) = coset_product(pair, b, c)? {
                let k = *index.get(&p).ok_or_else(|| Error::Laws(format!("{b:?}·{c:?} leaves the carrier")))?;
                product[i][j] = Some(k);
            }
        }
    }
    let units = ElementSet::from_ids(m, (0..m).filter(|&i| is_unit_coset(pair, &points[i])));
    let subbasis_map: Vec<ElementSet> =
        s.elements().map(|a| ElementSet::from_ids(m, (0..m).filter(|&i| points[i].contains(a)))).collect();
    let topology = FiniteTopology::from_subbasis(m, &subbasis_map);

    let mut checks = validate_groupoid(&product, &star)?;
    if let Some(bad) = checks.failures().next() {
        return Err(Error::Laws(format!("{} [{}]", bad.name, bad.witness.clone().unwrap_or_default())));
    }
    let table_units = ElementSet::from_ids(m, (0..m).filter(|&i| product[star[i]][i] == Some(i)));
    checks.check("unit_cosets_are_units", m as u64, (table_units != units).then(|| format!("{units:?} vs {table_units:?}")));
    let w = first_witness(s.elements(), |a| {
        (subbasis_map[s.star(a)] != subbasis_map[a].map(m, |i| star[i])).then(|| format!("a={a}"))
    });
    checks.check("star_of_subbasic_set", s.n() as u64, w);
    if carrier == Carrier::Ultrafilters {
        checks.check("subbasis_is_basis", (m * s.n()) as u64, basis_witness(m, &subbasis_map));
    }
    Ok(TopGroupoid { carrier: Some(carrier), points, star, product, units, topology, subbasis_map, exhaustive, checks })
}

/// Every point lies in some basic set, and each point of `B₁ ∩ B₂` lies in a
/// basic set inside the intersection.
fn basis_witness(m: usize, basic: &[ElementSet]) -> Option<String> {
    let covered = basic.iter().fold(ElementSet::empty(m), |acc, b| acc.union(b));
    if let Some(x) = ElementSet::full(m).difference(&covered).first() {
        return Some(format!("point {x} is in no basic set"));
    }
    for (i, b1) in basic.iter().enumerate() {
        for (j, b2) in basic.iter().enumerate().skip(i + 1) {
            let both = b1.intersection(b2);
            if let Some(x) = both.iter().find(|&x| !basic.iter().any(|b| b.contains(x) && b.is_subset(&both))) {
                return Some(format!("a={i} b={j} point={x}"));
            }
        }
    }
    None
}

/// Continuity of the involution and the partial product, openness of the
/// units and of the source and range maps, and the agreement of the last two.
pub fn etale_report(g: &TopGroupoid) -> Report {
    let t = &g.topology;
    let m = g.n();
    let mut r = Report::new();
    let w = t.continuity_witness(&g.star, t).map(|x| format!("point={x}"));
    r.check("involution_continuous", m as u64, w);

    let mut cases = 0u64;
    let mut w = None;
    'outer: for x in 0..m {
        for y in 0..m {
            let Some(xy) = g.mul(x, y) else { continue };
            cases += 1;
            for x2 in t.nbhd(x) {
                for y2 in t.nbhd(y) {
                    if let Some(z) = g.mul(x2, y2) {
                        if !t.nbhd(xy).contains(z) {
                            w = Some(format!("x={x} y={y} near x'={x2} y'={y2}"));
                            break 'outer;
                        }
                    }
                }
            }
        }
    }
    r.check("product_continuous", cases, w);

    let units_open = t.is_open(&g.units);
    r.check("units_open", 1, (!units_open).then(|| format!("units {:?}", g.units)));
    let src: Vec<usize> = (0..m).map(|a| g.source(a)).collect();
    let rng: Vec<usize> = (0..m).map(|a| g.range(a)).collect();
    let ws = t.openness_witness(&src, t);
    let wr = t.openness_witness(&rng, t);
    let source_open = ws.is_none();
    r.check("source_open", t.basis().len() as u64, ws.map(|b| format!("s({b:?}) not open")));
    r.check("range_open", t.basis().len() as u64, wr.map(|b| format!("r({b:?}) not open")));
    r.check(
        "units_open_iff_source_open",
        1,
        (units_open != source_open).then(|| format!("units open={units_open} source open={source_open}")),
    );
    r
}

/// Distinct units are separated by disjoint opens of the unit subspace.
pub fn hausdorff_units(g: &TopGroupoid) -> bool {
    hausdorff_witness(&g.topology, &g.units).is_none()
}

/// First pair of points of `sub` not separated in the subspace topology.
pub fn hausdorff_witness(t: &FiniteTopology, sub: &ElementSet) -> Option<(usize, usize)> {
    let pts = sub.to_vec();
    for (i, &x) in pts.iter().enumerate() {
        for &y in &pts[i + 1..] {
            let nx = t.nbhd(x).intersection(sub);
            let ny = t.nbhd(y).intersection(sub);
            if nx.intersects(&ny) {
                return Some((x, y));
            }
        }
    }
    None
}

/// `C_{ab} = C_a C_b` and each `C_a` is a bisection, for a pair with a
/// certified unit-ball embedding.
pub fn bisection_product_check(model: Option<&EmbeddedModel>, carrier: Carrier) -> Result<Report> {
    let model = model.filter(|m| m.flags.homomorphism && m.flags.unit_ball).ok_or_else(|| {
        Error::NotCertified("no certified embedding of S in the unit ball of a *-ring".into())
    })?;
    let pair = &model.pair;
    let g = weyl_groupoid(pair, carrier)?;
    let s = pair.s();
    let n = s.n() as u64;
    let mut r = Report::new();
    let w = first_witness(s.elements().flat_map(|a| s.elements().map(move |b| (a, b))), |(a, b)| {
        let lhs = &g.subbasis_map[s.mul(a, b)];
        let rhs = g.set_mul(&g.subbasis_map[a], &g.subbasis_map[b]);
        (lhs != &rhs).then(|| format!("a={a} b={b}: {lhs:?} vs {rhs:?}"))
    });
    r.check("subbasic_product", n * n, w);
    let w = first_witness(s.elements(), |a| {
        let ca = &g.subbasis_map[a];
        let cs = ca.map(g.n(), |i| g.star[i]);
        let ok = g.set_mul(ca, &cs).is_subset(&g.units) && g.set_mul(&cs, ca).is_subset(&g.units);
        (!ok).then(|| format!("a={a}"))
    });
    r.check("subbasic_sets_are_bisections", n, w);
    Ok(r)
}

/// `c` is `≲`-above some element of `S`.
fn is_above_something(pair: &WeylPair, c: Id) -> bool {
    !pair.relations().below(RelationKind::StarDominates, c).is_empty()
}

/// Compact containment of basic sets against its order characterisation, and
/// local compactness, on the Weyl groupoid of an embedded model.
pub fn compact_containment_report(model: &EmbeddedModel) -> Result<Report> {
    let pair = &model.pair;
    if !model.flags.unit_ball_hereditary {
        return Err(Error::NotCertified("embedding is not certified as unit-ball and L-hereditary".into()));
    }
    let g = weyl_groupoid(pair, Carrier::Ultrafilters)?;
    let rel = pair.relations();
    let s = pair.s();
    let n = s.n();
    let below = |a: Id| rel.below(RelationKind::StarDominates, a);
    let sd = |a: Id, b: Id| rel.holds(RelationKind::StarDominates, a, b);
    let converse_everywhere = model.flags.e_unit_ball == Some(true);
    let mut contained = vec![vec![false; n]; n];
    for a in 0..n {
        for b in 0..n {
            contained[a][b] = compactly_contained(&g.topology, &g.subbasis_map[a], &g.subbasis_map[b])?;
        }
    }
    let mut r = Report::new();
    let mut converse_cases = 0u64;
    let mut wf = None;
    let mut wc = None;
    for a in 0..n {
        for b in 0..n {
            let order = (0..n).any(|c| below(a).is_subset(below(c)) && sd(c, b));
            if order && !contained[a][b] && wf.is_none() {
                wf = Some(format!("a={a} b={b}"));
            }
            let side = converse_everywhere
                || (rel.holds(RelationKind::Compatible, a, b) && is_above_something(pair, a) && is_above_something(pair, b));
            if side {
                converse_cases += 1;
                if contained[a][b] && !order && wc.is_none() {
                    wc = Some(format!("a={a} b={b}"));
                }
            }
        }
    }
    r.check("order_bound_gives_compact_containment", (n * n) as u64, wf);
    r.check("compact_containment_gives_order_bound", converse_cases, wc);
    let w = first_witness((0..g.n()).flat_map(|u| (0..n).map(move |a| (u, a))), |(u, a)| {
        if !g.subbasis_map[a].contains(u) {
            return None;
        }
        let found = g.points[u].iter().any(|b| sd(b, a) && contained[b][a]);
        (!found).then(|| format!("point={u} a={a}"))
    });
    r.check("locally_compact", (g.n() * n) as u64, w);
    Ok(r)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::{self, bisection_pair, regular_embedding, s3_a3};

    fn set(m: usize, ids: &[usize]) -> ElementSet {
        ElementSet::from_ids(m, ids.iter().copied())
    }

    /// Closure of the subbasis under pairwise unions and intersections.
    fn fixpoint_oracle(m: usize, subbasis: &[ElementSet]) -> Vec<ElementSet> {
        let mut all: BTreeSet<ElementSet> = subbasis.iter().cloned().collect();
        all.insert(ElementSet::empty(m));
        all.insert(ElementSet::full(m));
        loop {
            let cur: Vec<ElementSet> = all.iter().cloned().collect();
            let before = all.len();
            for a in &cur {
                for b in &cur {
                    all.insert(a.union(b));
                    all.insert(a.intersection(b));
                }
            }
            if all.len() == before {
                return all.into_iter().collect();
            }
        }
    }

    #[test]
    fn subbasis_examples() {
        assert_eq!(topology_from_subbasis(3, &[]).opens().unwrap(), vec![ElementSet::empty(3), ElementSet::full(3)]);
        let singles: Vec<ElementSet> = (0..3).map(|x| ElementSet::singleton(3, x)).collect();
        assert_eq!(topology_from_subbasis(3, &singles).opens().unwrap().len(), 8);
        let t = topology_from_subbasis(3, &[set(3, &[0, 1]), set(3, &[1, 2])]);
        let expected = vec![set(3, &[]), set(3, &[1]), set(3, &[0, 1]), set(3, &[1, 2]), set(3, &[0, 1, 2])];
        let mut got = t.opens().unwrap();
        got.sort();
        let mut want = expected.clone();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn subbasis_against_fixpoint() {
        let mut seed = 7u64;
        for _ in 0..200 {
            let m = 5;
            let k = (seed % 4) as usize;
            let sub: Vec<ElementSet> = (0..k)
                .map(|i| {
                    seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407 + i as u64);
                    ElementSet::from_mask(m, (seed >> 33) & 31)
                })
                .collect();
            assert_eq!(topology_from_subbasis(m, &sub).opens().unwrap(), fixpoint_oracle(m, &sub));
        }
    }

    #[test]
    fn compact_containment_examples() {
        let t = FiniteTopology::discrete(3);
        for o in 0u64..8 {
            for n in 0u64..8 {
                let (o, n) = (ElementSet::from_mask(3, o), ElementSet::from_mask(3, n));
                assert_eq!(compactly_contained(&t, &o, &n).unwrap(), o.is_subset(&n));
            }
        }
        let t = topology_from_subbasis(3, &[set(3, &[0, 1]), set(3, &[1, 2])]);
        assert!(compactly_contained(&t, &set(3, &[1]), &set(3, &[0, 1])).unwrap());
        assert!(compactly_contained(&t, &ElementSet::empty(3), &set(3, &[1])).unwrap());
        assert!(!compactly_contained(&t, &set(3, &[1, 2]), &set(3, &[0, 1])).unwrap());
        assert!(compactly_contained(&t, &set(3, &[0]), &set(3, &[0, 1])).is_err());
    }

    /// Brute force over every family of opens.
    #[test]
    fn compact_containment_against_all_covers() {
        let t = topology_from_subbasis(4, &[set(4, &[0, 1]), set(4, &[1, 2]), set(4, &[3]), set(4, &[2, 3])]);
        let opens = t.opens().unwrap();
        for o in &opens {
            for n in &opens {
                let mut every = true;
                for fam in 1u64..(1 << opens.len()) {
                    let fam: Vec<&ElementSet> = (0..opens.len()).filter(|&i| fam & (1 << i) != 0).map(|i| &opens[i]).collect();
                    let u = fam.iter().fold(ElementSet::empty(4), |acc, x| acc.union(x));
                    if n.is_subset(&u) && !o.is_subset(&u) {
                        every = false;
                    }
                }
                assert_eq!(compactly_contained(&t, o, n).unwrap(), every, "{o:?} {n:?}");
            }
        }
    }

    #[test]
    fn s3_weyl_groupoid_is_z2() {
        let g = weyl_groupoid(&s3_a3(), Carrier::Ultrafilters).unwrap();
        assert_eq!(g.n(), 2);
        assert_eq!(g.units.len(), 1);
        assert!(g.topology.is_discrete());
        let z2 = FiniteGroupoid::group_bundle(&[models::cyclic_group(2)]).unwrap();
        assert!(crate::groupoid::find_isomorphism(&g.groupoid(), &z2, None).is_some());
        assert!(g.checks.passed());
        assert!(etale_report(&g).passed());
    }

    #[test]
    fn bisection_model_groupoid_is_pair_groupoid() {
        let m = bisection_pair(2);
        let g = weyl_groupoid(&m.pair, Carrier::Ultrafilters).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.units.len(), 2);
        assert!(crate::groupoid::find_isomorphism(&g.groupoid(), &FiniteGroupoid::pair(2), None).is_some());
        assert!(hausdorff_units(&g));
        assert!(g.checks.passed(), "{}", g.checks.render_text());
    }

    #[test]
    fn every_carrier_is_etale() {
        for (name, pair) in models::bundled_pairs().into_iter().filter(|(_, p)| p.n() <= 17) {
            for carrier in [Carrier::Cosets, Carrier::Filters, Carrier::Ultrafilters] {
                let g = weyl_groupoid(&pair, carrier).unwrap();
                assert!(g.checks.passed(), "{name} {carrier:?}: {}", g.checks.render_text());
                let r = etale_report(&g);
                assert!(r.passed(), "{name} {carrier:?}: {}", r.render_text());
            }
        }
    }

    #[test]
    fn indiscrete_units_are_not_open() {
        let g = FiniteGroupoid::pair(2);
        let tg = TopGroupoid::from_groupoid(&g, FiniteTopology::indiscrete(4)).unwrap();
        let r = etale_report(&tg);
        assert!(!r.get("units_open").unwrap().passed);
        assert!(!hausdorff_units(&tg));
        let one = FiniteGroupoid::group_bundle(&[models::cyclic_group(1)]).unwrap();
        assert!(hausdorff_units(&TopGroupoid::from_groupoid(&one, FiniteTopology::indiscrete(1)).unwrap()));
    }

    #[test]
    fn subbasic_products() {
        let m = bisection_pair(2);
        assert!(bisection_product_check(m.embedding.as_ref(), Carrier::Ultrafilters).unwrap().passed());
        assert!(bisection_product_check(m.embedding.as_ref(), Carrier::Cosets).unwrap().passed());
        let reg = regular_embedding(&s3_a3()).unwrap();
        let r = bisection_product_check(Some(&reg), Carrier::Ultrafilters).unwrap();
        assert!(r.passed());
        assert_eq!(r.get("subbasic_product").unwrap().cases, 36);
        assert!(matches!(bisection_product_check(None, Carrier::Ultrafilters), Err(Error::NotCertified(_))));
    }

    #[test]
    fn order_bounds_and_compact_containment() {
        let m = bisection_pair(2);
        let r = compact_containment_report(m.embedding.as_ref().unwrap()).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(r.get("compact_containment_gives_order_bound").unwrap().cases > 0);
    }

    #[test]
    fn carrier_parse() {
        assert_eq!("cosets".parse::<Carrier>().unwrap(), Carrier::Cosets);
        assert!("x".parse::<Carrier>().is_err());
    }
}
