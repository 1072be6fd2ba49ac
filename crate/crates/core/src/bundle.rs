//! The Weyl bundle of an action of `S` on a finite uniform space: the
//! relations `R_U`, the equivalences `≡_U`, the bundle topology, and instance
//! checks of the projection and section theorems.
//!
//! Uniformities are given by finite bases. Every condition quantifies
//! monotonically over the uniformity, so ranging over the base suffices.

use crate::error::{Error, Result};
use crate::models::{partial_bijections, symmetric_group3, s3_a3, symmetric_inverse_monoid, tail_blocks};
use crate::report::{first_witness, Report};
use crate::semigroup::{Id, WeylPair};
use crate::set::ElementSet;
use crate::topology::{hausdorff_witness, weyl_groupoid, Carrier, FiniteTopology};
use serde::Serialize;

/// A symmetric reflexive relation on `0..m`, row `x` holding `{y : x R y}`.
pub type Relation = Vec<ElementSet>;

/// A uniformity on `0..m` given by a base of relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteUniformity {
    m: usize,
    base: Vec<Relation>,
}

fn compose(m: usize, p: &Relation, q: &Relation) -> Relation {
    p.iter().map(|row| row.iter().fold(ElementSet::empty(m), |acc, z| acc.union(&q[z]))).collect()
}

fn relation_subset(p: &Relation, q: &Relation) -> bool {
    p.iter().zip(q).all(|(a, b)| a.is_subset(b))
}

fn relation_meet(p: &Relation, q: &Relation) -> Relation {
    p.iter().zip(q).map(|(a, b)| a.intersection(b)).collect()
}

impl FiniteUniformity {
    /// Validates reflexivity, symmetry, divisibility and the filter-base
    /// property, reporting a witness for the first violation.
    pub fn new(m: usize, base: Vec<Vec<Vec<bool>>>) -> Result<Self> {
        if m == 0 {
            return Err(Error::Structure("a uniform space needs at least one point".into()));
        }
        if base.is_empty() {
            return Err(Error::Structure("a uniformity base needs at least one relation".into()));
        }
        let mut rels = Vec::with_capacity(base.len());
        for (i, r) in base.iter().enumerate() {
            if r.len() != m || r.iter().any(|row| row.len() != m) {
                return Err(Error::Structure(format!("relation {i} is not {m}×{m}")));
            }
            rels.push(r.iter().map(|row| ElementSet::from_ids(m, (0..m).filter(|&y| row[y]))).collect());
        }
        Self::from_relations(m, rels)
    }

    pub fn from_relations(m: usize, base: Vec<Relation>) -> Result<Self> {
        for (i, r) in base.iter().enumerate() {
            if let Some(x) = (0..m).find(|&x| !r[x].contains(x)) {
                return Err(Error::Laws(format!("relation {i} is not reflexive at {x}")));
            }
            for x in 0..m {
                if let Some(y) = r[x].iter().find(|&y| !r[y].contains(x)) {
                    return Err(Error::Laws(format!("relation {i} is not symmetric at ({x}, {y})")));
                }
            }
        }
        for (i, r) in base.iter().enumerate() {
            if !base.iter().any(|q| relation_subset(&compose(m, q, q), r)) {
                return Err(Error::Laws(format!("relation {i} has no base relation Q with Q∘Q inside it")));
            }
        }
        for (i, r) in base.iter().enumerate() {
            for (j, s) in base.iter().enumerate().skip(i + 1) {
                let both = relation_meet(r, s);
                if !base.iter().any(|t| relation_subset(t, &both)) {
                    return Err(Error::Laws(format!("no base relation lies inside relations {i} and {j}")));
                }
            }
        }
        Ok(FiniteUniformity { m, base })
    }

    pub fn discrete(m: usize) -> Self {
        let diag = (0..m).map(|x| ElementSet::singleton(m, x)).collect();
        FiniteUniformity { m, base: vec![diag] }
    }

    pub fn indiscrete(m: usize) -> Self {
        FiniteUniformity { m, base: vec![vec![ElementSet::full(m); m]] }
    }

    /// The uniformity with the single base relation "same label".
    pub fn from_labels(labels: &[usize]) -> Result<Self> {
        let m = labels.len();
        let rel = (0..m).map(|x| ElementSet::from_ids(m, (0..m).filter(|&y| labels[y] == labels[x]))).collect();
        Self::from_relations(m, vec![rel])
    }

    pub fn points(&self) -> usize {
        self.m
    }

    pub fn base(&self) -> &[Relation] {
        &self.base
    }

    pub fn related(&self, r: usize, x: usize, y: usize) -> bool {
        self.base[r][x].contains(y)
    }
}

/// An action of `S` on `0..m` with an `E`-equivariant map `Ψ` and a uniformity
/// making the action uniformly continuous.
#[derive(Clone, Debug)]
pub struct ActionSystem {
    pair: WeylPair,
    act: Vec<Vec<usize>>,
    psi: Vec<usize>,
    uniformity: FiniteUniformity,
}

impl ActionSystem {
    /// `act[s][x] = sx`. Validates the action law, `E`-equivariance of `Ψ` and
    /// uniform continuity (every base `R` has a base `Q` with `SQ ⊆ R`).
    pub fn new(pair: WeylPair, act: Vec<Vec<usize>>, psi: Vec<usize>, uniformity: FiniteUniformity) -> Result<Self> {
        let m = uniformity.points();
        let s = pair.s();
        if act.len() != s.n() || act.iter().any(|row| row.len() != m || row.iter().any(|&y| y >= m)) {
            return Err(Error::Structure(format!("the action table must be {}×{m} with entries below {m}", s.n())));
        }
        if psi.len() != m || psi.iter().any(|&y| y >= m) {
            return Err(Error::Structure(format!("Ψ must map {m} points into 0..{m}")));
        }
        for a in s.elements() {
            for b in s.elements() {
                if let Some(x) = (0..m).find(|&x| act[s.mul(a, b)][x] != act[a][act[b][x]]) {
                    return Err(Error::Laws(format!("(st)x = s(tx) fails at s={a} t={b} x={x}")));
                }
            }
        }
        for e in pair.e() {
            if let Some(x) = (0..m).find(|&x| psi[act[e][x]] != act[e][psi[x]]) {
                return Err(Error::Laws(format!("Ψ(ex) = eΨ(x) fails at e={e} x={x}")));
            }
        }
        let base = uniformity.base();
        for (i, r) in base.iter().enumerate() {
            let ok = base.iter().any(|q| {
                (0..m).all(|x| q[x].iter().all(|y| s.elements().all(|a| r[act[a][x]].contains(act[a][y]))))
            });
            if !ok {
                return Err(Error::Laws(format!("no base relation Q has SQ inside relation {i}")));
            }
        }
        Ok(ActionSystem { pair, act, psi, uniformity })
    }

    pub fn pair(&self) -> &WeylPair {
        &self.pair
    }

    pub fn points(&self) -> usize {
        self.uniformity.points()
    }

    pub fn act(&self, s: Id, x: usize) -> usize {
        self.act[s][x]
    }

    pub fn psi(&self, x: usize) -> usize {
        self.psi[x]
    }

    pub fn uniformity(&self) -> &FiniteUniformity {
        &self.uniformity
    }

    /// `Ψ(u*x)`.
    fn probe(&self, u: Id, x: usize) -> usize {
        self.psi[self.act[self.pair.s().star(u)][x]]
    }
}

/// `x R_U y ⇔ ∃u ∈ U (Ψ(u*x) R Ψ(u*y))`.
pub fn rel_ru(sys: &ActionSystem, u: &ElementSet, r: usize, x: usize, y: usize) -> bool {
    u.iter().any(|s| sys.uniformity.related(r, sys.probe(s, x), sys.probe(s, y)))
}

/// `x ≡_U y ⇔ x R_U y` for every base relation `R`.
pub fn equivalent(sys: &ActionSystem, u: &ElementSet, x: usize, y: usize) -> bool {
    (0..sys.uniformity.base.len()).all(|r| rel_ru(sys, u, r, x, y))
}

/// The blocks of `≡_U`, ordered by least member. Fails with a witness when
/// `≡_U` is not transitive, which happens only for sets that are not
/// down-directed.
pub fn equivalence_classes(sys: &ActionSystem, u: &ElementSet) -> Result<Vec<ElementSet>> {
    let m = sys.points();
    let rows: Vec<ElementSet> = (0..m).map(|x| ElementSet::from_ids(m, (0..m).filter(|&y| equivalent(sys, u, x, y)))).collect();
    for x in 0..m {
        for y in rows[x].iter() {
            if rows[x] != rows[y] {
                let z = rows[x].union(&rows[y]).difference(&rows[x].intersection(&rows[y])).first().unwrap_or(y);
                return Err(Error::Precondition(format!("≡_U is not an equivalence: x={x} y={y} z={z}")));
            }
        }
    }
    let mut classes: Vec<ElementSet> = Vec::new();
    for x in 0..m {
        if !classes.iter().any(|c| c.contains(x)) {
            classes.push(rows[x].clone());
        }
    }
    Ok(classes)
}

/// A point `(U, Y)` of the bundle: an ultrafilter index and a `≡_U` block.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BundlePoint {
    pub ultrafilter: usize,
    pub class: ElementSet,
}

/// The Weyl bundle with its topology and the base `U(S)`.
#[derive(Clone, Debug)]
pub struct WeylBundle {
    pub ultrafilters: Vec<ElementSet>,
    pub base_topology: FiniteTopology,
    pub points: Vec<BundlePoint>,
    pub topology: FiniteTopology,
    /// `class_of[U][x]` is the bundle point `(U, x^{≡_U})`.
    pub class_of: Vec<Vec<usize>>,
    /// `x_s^R`, indexed by `(x, s, R)` in row-major order.
    pub basic: Vec<ElementSet>,
    /// Neighbourhood-base and topology checks made while building.
    pub checks: Report,
}

impl WeylBundle {
    pub fn projection(&self) -> Vec<usize> {
        self.points.iter().map(|p| p.ultrafilter).collect()
    }

    fn basic_index(&self, sys: &ActionSystem, x: usize, s: Id, r: usize) -> usize {
        (x * sys.pair.n() + s) * sys.uniformity.base.len() + r
    }

    /// First pair of bundle points with no disjoint neighbourhoods.
    pub fn hausdorff_witness(&self) -> Option<(usize, usize)> {
        hausdorff_witness(&self.topology, &ElementSet::full(self.points.len()))
    }

    pub fn is_hausdorff(&self) -> bool {
        self.hausdorff_witness().is_none()
    }
}

/// Builds all `(U, Y)` and the topology whose neighbourhoods at `(U, x^{≡_U})`
/// contain some `x_s^R` with `s ∈ U`. Checks that this is a neighbourhood
/// base for every representative of the block, that the interior of a
/// neighbourhood is a neighbourhood, and that the sets `x_s^R` generate it.
pub fn bundle_space(sys: &ActionSystem) -> Result<WeylBundle> {
    let g = weyl_groupoid(&sys.pair, Carrier::Ultrafilters)?;
    let ultrafilters = g.points.clone();
    let base_topology = g.topology.clone();
    let m = sys.points();
    let n = sys.pair.n();
    let nr = sys.uniformity.base.len();

    let mut points = Vec::new();
    let mut class_of = Vec::with_capacity(ultrafilters.len());
    for (k, u) in ultrafilters.iter().enumerate() {
        let mut row = vec![0; m];
        for class in equivalence_classes(sys, u)? {
            for x in class.iter() {
                row[x] = points.len();
            }
            points.push(BundlePoint { ultrafilter: k, class });
        }
        class_of.push(row);
    }
    let w = points.len();

    let mut basic = Vec::with_capacity(m * n * nr);
    for x in 0..m {
        for s in sys.pair.s().elements() {
            for r in 0..nr {
                let set = (0..w).filter(|&p| {
                    let pt = &points[p];
                    let v = &ultrafilters[pt.ultrafilter];
                    v.contains(s) && pt.class.iter().any(|y| rel_ru(sys, v, r, x, y))
                });
                basic.push(ElementSet::from_ids(w, set));
            }
        }
    }
    let idx = |x: usize, s: Id, r: usize| (x * n + s) * nr + r;
    let nbhd_via = |p: usize, x: usize| {
        let u = &ultrafilters[points[p].ultrafilter];
        let mut acc = ElementSet::full(w);
        for s in u.iter() {
            for r in 0..nr {
                acc.intersect_with(&basic[idx(x, s, r)]);
            }
        }
        acc
    };
    let nbhd: Vec<ElementSet> = (0..w).map(|p| nbhd_via(p, points[p].class.first().expect("blocks are nonempty"))).collect();

    let mut checks = Report::new();
    let wit = first_witness(0..w, |p| (!nbhd[p].contains(p)).then(|| format!("point {p}")));
    checks.check("point_in_own_neighbourhoods", w as u64, wit);
    let wit = first_witness((0..w).flat_map(|p| points[p].class.iter().map(move |x| (p, x))), |(p, x)| {
        (nbhd_via(p, x) != nbhd[p]).then(|| format!("point {p} representative {x}"))
    });
    checks.check("neighbourhood_base_any_representative", (m * ultrafilters.len()) as u64, wit);
    let wit = first_witness((0..w).flat_map(|p| nbhd[p].iter().map(move |q| (p, q))), |(p, q)| {
        (!nbhd[q].is_subset(&nbhd[p])).then(|| format!("point {q} in the neighbourhood of {p}"))
    });
    checks.check("interior_of_neighbourhood", w as u64, wit);
    let topology = FiniteTopology::from_subbasis(w, &basic);
    let wit = first_witness(0..w, |p| (topology.nbhd(p) != &nbhd[p]).then(|| format!("point {p}")));
    checks.check("basic_sets_generate_neighbourhoods", w as u64, wit);

    Ok(WeylBundle { ultrafilters, base_topology, points, topology, class_of, basic, checks })
}

/// `π(U, Y) = U` is continuous, open and surjective, with `π[x_s^R] = U_s`
/// and `π⁻¹[U_s] = ⋃_x x_s^R` for every base `R`.
pub fn projection_report(sys: &ActionSystem, b: &WeylBundle) -> Report {
    let mut r = Report::new();
    let proj = b.projection();
    let k = b.ultrafilters.len();
    let w = b.points.len();
    let n = sys.pair.n();
    let nr = sys.uniformity.base.len();
    let u_s = |s: Id| ElementSet::from_ids(k, (0..k).filter(|&i| b.ultrafilters[i].contains(s)));

    let wit = b.topology.continuity_witness(&proj, &b.base_topology).map(|p| format!("point {p}"));
    r.check("projection_continuous", w as u64, wit);
    let wit = b.topology.openness_witness(&proj, &b.base_topology).map(|o| format!("basic open {o:?}"));
    r.check("projection_open", b.topology.basis().len() as u64, wit);
    let covered = ElementSet::from_ids(k, proj.iter().copied());
    r.check("projection_surjective", k as u64, (!covered.is_full()).then(|| format!("missed {:?}", ElementSet::full(k).difference(&covered))));

    let triples = (0..sys.points()).flat_map(|x| (0..n).flat_map(move |s| (0..nr).map(move |q| (x, s, q))));
    let wit = first_witness(triples, |(x, s, q)| {
        let image = b.basic[b.basic_index(sys, x, s, q)].map(k, |p| proj[p]);
        (image != u_s(s)).then(|| format!("x={x} s={s} R={q}"))
    });
    r.check("image_of_basic_set", (sys.points() * n * nr) as u64, wit);
    let wit = first_witness((0..n).flat_map(|s| (0..nr).map(move |q| (s, q))), |(s, q)| {
        let pre = ElementSet::from_ids(w, (0..w).filter(|&p| u_s(s).contains(proj[p])));
        let union = (0..sys.points()).fold(ElementSet::empty(w), |acc, x| acc.union(&b.basic[b.basic_index(sys, x, s, q)]));
        (pre != union).then(|| format!("s={s} R={q}"))
    });
    r.check("preimage_of_basic_set", (n * nr) as u64, wit);
    r
}

/// The section `U ↦ (U, x^{≡_U})`.
pub fn section(b: &WeylBundle, x: usize) -> Vec<usize> {
    b.class_of.iter().map(|row| row[x]).collect()
}

/// Whether the section through `x` is continuous.
pub fn section_continuity(b: &WeylBundle, x: usize) -> bool {
    b.base_topology.continuity_witness(&section(b, x), &b.topology).is_none()
}

/// All bundle checks for one system: construction, projection, sections,
/// plus the fibre sizes and the Hausdorff flag of the total space as facts.
pub fn bundle_report(sys: &ActionSystem) -> Result<(WeylBundle, Report)> {
    let b = bundle_space(sys)?;
    let mut r = b.checks.clone();
    let mut classes = Report::new();
    let wit = first_witness(0..b.ultrafilters.len(), |i| {
        let again = equivalence_classes(sys, &b.ultrafilters[i]).ok()?;
        let mine: Vec<&ElementSet> = b.points.iter().filter(|p| p.ultrafilter == i).map(|p| &p.class).collect();
        (again.iter().collect::<Vec<_>>() != mine).then(|| format!("ultrafilter {i}"))
    });
    classes.check("classes_stable_under_recomputation", b.ultrafilters.len() as u64, wit);
    r.merge("", classes);
    r.merge("", projection_report(sys, &b));
    let wit = first_witness(0..sys.points(), |x| (!section_continuity(&b, x)).then(|| format!("x={x}")));
    r.check("sections_continuous", sys.points() as u64, wit);
    r.fact("ultrafilters", b.ultrafilters.len());
    r.fact("bundle_points", b.points.len());
    r.fact("fibre_sizes", fibre_sizes(&b).iter().map(usize::to_string).collect::<Vec<_>>().join(","));
    r.fact("hausdorff", b.is_hausdorff());
    Ok((b, r))
}

pub fn fibre_sizes(b: &WeylBundle) -> Vec<usize> {
    (0..b.ultrafilters.len()).map(|i| b.points.iter().filter(|p| p.ultrafilter == i).count()).collect()
}

/// JSON summary of a bundle.
#[derive(Clone, Debug, Serialize)]
pub struct BundleSummary {
    pub ultrafilters: Vec<ElementSet>,
    pub fibres: Vec<Vec<ElementSet>>,
    pub open_count: Option<u64>,
    pub hausdorff: bool,
    pub report: Report,
}

pub fn bundle_summary(sys: &ActionSystem) -> Result<BundleSummary> {
    let (b, report) = bundle_report(sys)?;
    let fibres = (0..b.ultrafilters.len())
        .map(|i| b.points.iter().filter(|p| p.ultrafilter == i).map(|p| p.class.clone()).collect())
        .collect();
    Ok(BundleSummary { open_count: b.topology.open_count(), hausdorff: b.is_hausdorff(), ultrafilters: b.ultrafilters, fibres, report })
}

/// `(S_3, A_3)` acting on itself by left multiplication, `Ψ` the identity,
/// discrete uniformity.
pub fn s3_regular() -> ActionSystem {
    let pair = s3_a3();
    let s = symmetric_group3();
    let act = s.elements().map(|a| s.elements().map(|x| s.mul(a, x)).collect()).collect();
    ActionSystem::new(pair, act, (0..6).collect(), FiniteUniformity::discrete(6)).expect("regular action")
}

/// `I_2` acting on `{0, 1, ⊥} × {0, 1}` through the first coordinate, with
/// `Ψ` forgetting the second coordinate and the uniformity identifying points
/// with equal first coordinate. Point `(p, c)` has id `2p + c`, `⊥ = 2`.
pub fn i2_marked() -> ActionSystem {
    let pair = symmetric_inverse_monoid(2).expect("I_2");
    let maps = partial_bijections(2);
    let act = maps
        .iter()
        .map(|f| (0..6).map(|x| 2 * (if x / 2 < 2 { f.map[x / 2].unwrap_or(2) } else { 2 }) + x % 2).collect())
        .collect();
    let psi = (0..6).map(|x| x - x % 2).collect();
    let labels: Vec<usize> = (0..6).map(|x| x / 2).collect();
    ActionSystem::new(pair, act, psi, FiniteUniformity::from_labels(&labels).expect("label uniformity")).expect("I_2 action")
}

/// The finite analog of sequences whose two tails converge: `S` is
/// [`tail_blocks`] (patterns constant on the tail block `{0, 1}`) acting by
/// pointwise product on `X = {0,1}³`, `Ψ` the identity, discrete uniformity.
/// The fibre over the ultrafilter of the tail block records both tail
/// values, the other fibre one value. Point `x` is the bit pattern
/// `x₀ + 2x₁ + 4x₂`.
pub fn tail_sequences() -> ActionSystem {
    let pair = tail_blocks();
    let pattern = |a: Id| {
        let (f0, f2) = (a >> 1, a & 1);
        f0 | (f0 << 1) | (f2 << 2)
    };
    let act = pair.s().elements().map(|a| (0..8).map(|x| x & pattern(a)).collect()).collect();
    ActionSystem::new(pair, act, (0..8).collect(), FiniteUniformity::discrete(8)).expect("pointwise action")
}

pub const SYSTEM_NAMES: &[&str] = &["s3_regular", "i2_marked", "tail_sequences"];

pub fn bundled_systems() -> Vec<(String, ActionSystem)> {
    vec![
        ("s3_regular".into(), s3_regular()),
        ("i2_marked".into(), i2_marked()),
        ("tail_sequences".into(), tail_sequences()),
    ]
}

pub fn named_system(name: &str) -> Result<ActionSystem> {
    match name {
        "s3_regular" => Ok(s3_regular()),
        "i2_marked" => Ok(i2_marked()),
        "tail_sequences" => Ok(tail_sequences()),
        _ => Err(Error::Invalid(format!("unknown action system {name:?}; known: {}", SYSTEM_NAMES.join(", ")))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn singleton_system() -> ActionSystem {
        let pair = s3_a3();
        ActionSystem::new(pair, vec![vec![0]; 6], vec![0], FiniteUniformity::discrete(1)).unwrap()
    }

    #[test]
    fn uniformities_are_validated() {
        let t = true;
        let f = false;
        assert!(matches!(FiniteUniformity::new(2, vec![vec![vec![f, f], vec![f, t]]]), Err(Error::Laws(_))));
        assert!(matches!(FiniteUniformity::new(2, vec![vec![vec![t, t], vec![f, t]]]), Err(Error::Laws(_))));
        // A path relation on three points is not divisible on its own.
        let path = vec![vec![t, t, f], vec![t, t, t], vec![f, t, t]];
        assert!(matches!(FiniteUniformity::new(3, vec![path.clone()]), Err(Error::Laws(_))));
        let diag = vec![vec![t, f, f], vec![f, t, f], vec![f, f, t]];
        assert!(FiniteUniformity::new(3, vec![path, diag]).is_ok());
        // Two incomparable equivalences with no common refinement in the base.
        let a = vec![vec![t, t, f], vec![t, t, f], vec![f, f, t]];
        let b = vec![vec![t, f, f], vec![f, t, t], vec![f, t, t]];
        assert!(matches!(FiniteUniformity::new(3, vec![a, b]), Err(Error::Laws(_))));
        assert!(matches!(FiniteUniformity::new(2, vec![vec![vec![t]]]), Err(Error::Structure(_))));
    }

    #[test]
    fn action_systems_are_validated() {
        let pair = s3_a3();
        let s = symmetric_group3();
        // Right multiplication is not a left action of a nonabelian group.
        let right: Vec<Vec<usize>> = s.elements().map(|a| s.elements().map(|x| s.mul(x, a)).collect()).collect();
        let err = ActionSystem::new(pair.clone(), right, (0..6).collect(), FiniteUniformity::discrete(6)).unwrap_err();
        assert!(err.to_string().contains("(st)x"));
        let left: Vec<Vec<usize>> = s.elements().map(|a| s.elements().map(|x| s.mul(a, x)).collect()).collect();
        let err = ActionSystem::new(pair.clone(), left.clone(), vec![0; 6], FiniteUniformity::discrete(6)).unwrap_err();
        assert!(err.to_string().contains("Ψ"));
        // Identifying {0, 1} is not respected by left multiplication.
        let labels = [0, 0, 1, 2, 3, 4];
        let err = ActionSystem::new(pair, left, (0..6).collect(), FiniteUniformity::from_labels(&labels).unwrap()).unwrap_err();
        assert!(err.to_string().contains("SQ"));
    }

    #[test]
    fn rel_ru_examples() {
        let sys = singleton_system();
        let u = ElementSet::from_ids(6, [0, 1, 2]);
        assert!(rel_ru(&sys, &u, 0, 0, 0));
        let sys = tail_sequences();
        let b = bundle_space(&sys).unwrap();
        for u in &b.ultrafilters {
            for x in 0..8 {
                assert!(rel_ru(&sys, u, 0, x, x));
            }
        }
        // The ultrafilter of position 2 separates patterns differing there.
        let u2 = b.ultrafilters.iter().find(|u| u.contains(1)).unwrap();
        assert!(!rel_ru(&sys, u2, 0, 0, 4));
        assert!(rel_ru(&sys, u2, 0, 0, 3));
    }

    #[test]
    fn classes_of_discrete_and_indiscrete_systems() {
        let sys = s3_regular();
        let b = bundle_space(&sys).unwrap();
        assert_eq!(b.ultrafilters.len(), 2);
        // Ψ injective: u*x = u*y forces x = y.
        assert_eq!(fibre_sizes(&b), vec![6, 6]);
        let pair = s3_a3();
        let s = symmetric_group3();
        let left = s.elements().map(|a| s.elements().map(|x| s.mul(a, x)).collect()).collect();
        let sys = ActionSystem::new(pair, left, (0..6).collect(), FiniteUniformity::indiscrete(6)).unwrap();
        let b = bundle_space(&sys).unwrap();
        assert_eq!(fibre_sizes(&b), vec![1, 1]);
    }

    #[test]
    fn tail_fibres_record_both_tails_at_the_tail_ultrafilter() {
        let sys = tail_sequences();
        let b = bundle_space(&sys).unwrap();
        let tail = b.ultrafilters.iter().position(|u| u.contains(2) && !u.contains(1)).unwrap();
        let sizes = fibre_sizes(&b);
        assert_eq!(sizes[tail], 4);
        assert_eq!(sizes[1 - tail], 2);
    }

    #[test]
    fn non_directed_sets_can_break_transitivity() {
        // U = {10, 01} is not down-directed in tail_blocks; ≡_U relates patterns
        // agreeing on the tail or on position 2, which is not transitive.
        let sys = tail_sequences();
        let u = ElementSet::from_ids(4, [1, 2]);
        assert!(matches!(equivalence_classes(&sys, &u), Err(Error::Precondition(_))));
    }

    #[test]
    fn bundled_systems_pass_every_check() {
        for (name, sys) in bundled_systems() {
            let (b, r) = bundle_report(&sys).unwrap();
            assert!(r.passed(), "{name}: {}", r.render_text());
            assert!(r.checks.iter().all(|c| c.cases > 0), "{name}");
            assert_eq!(fibre_sizes(&b).iter().sum::<usize>(), b.points.len());
        }
    }

    #[test]
    fn finite_bundles_are_discrete() {
        for (name, sys) in bundled_systems() {
            let b = bundle_space(&sys).unwrap();
            assert!(b.base_topology.is_discrete(), "{name}");
            assert!(b.topology.is_discrete(), "{name}");
            assert!(b.is_hausdorff(), "{name}");
        }
    }

    #[test]
    fn singleton_space_bundle_is_the_weyl_groupoid() {
        let sys = singleton_system();
        let (b, r) = bundle_report(&sys).unwrap();
        assert!(r.passed());
        assert_eq!(b.points.len(), b.ultrafilters.len());
        assert_eq!(b.topology, b.base_topology);
        assert!(section_continuity(&b, 0));
    }

    #[test]
    fn i2_marked_fibres_split_by_range() {
        let sys = i2_marked();
        let b = bundle_space(&sys).unwrap();
        assert_eq!(b.ultrafilters.len(), 4);
        assert_eq!(fibre_sizes(&b), vec![2; 4]);
    }

    #[test]
    fn named_systems() {
        for name in SYSTEM_NAMES {
            assert!(named_system(name).is_ok());
        }
        assert!(named_system("nope").is_err());
    }
}
