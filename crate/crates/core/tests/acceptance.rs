//! Acceptance suite. Every criterion prints one line:
//!
//! ```text
//! [PASS] 01 group-pair reconstruction (0.01s / 1s) ...
//! ```
//!
//! Checks go through the library and, separately, through oracles written
//! here against the raw multiplication and involution tables. Tolerances and
//! time budgets are pinned below.

use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};
use weyl_groupoid::bundle::{bundle_report, bundled_systems};
use weyl_groupoid::cosets::{enumerate_filters, enumerate_ultrafilters, unit_coset_conditions};
use weyl_groupoid::groupoid::FiniteGroupoid;
use weyl_groupoid::models::{bisection_pair, bisection_sign_semigroup, bundled_pairs, named_embedding, s3_a3, z4_02, EmbeddedModel};
use weyl_groupoid::ring::laws::{model_law_suite, ring_law_suite};
use weyl_groupoid::ring::matrix::RMatrix;
use weyl_groupoid::ring::norm::{ceil_norm, quasi_norm_sq, ExtNonneg, NormMode, RingBackend};
use weyl_groupoid::ring::rational::{q, qi, Q};
use weyl_groupoid::semigroup::WeylPair;
use weyl_groupoid::set::ElementSet;
use weyl_groupoid::topology::{
    bisection_product_check, compact_containment_report, compactly_contained, etale_report, hausdorff_units, weyl_groupoid,
    Carrier, TopGroupoid,
};

/// Distance allowed between `⌈a⌉` and the eigenvalue oracle.
fn norm_tolerance() -> Q {
    q(1, 1_000_000)
}
/// Width to which the eigenvalue oracle isolates `λ_max`.
fn oracle_width() -> Q {
    q(1, 1_000_000_000)
}
const NORM_SAMPLES_PER_DIM: usize = 500;
const NORM_SEED: u64 = 0x5eed_0010;
const LAW_SAMPLES_PER_DIM: u64 = 5_000;
const LAW_SEED: u64 = 0x5eed_0011;
const FILTER_ORACLE_MAX_N: usize = 12;
const FIVE_WAY_MAX_N: usize = 8;

const BUDGET_1: Duration = Duration::from_secs(1);
const BUDGET_2: Duration = Duration::from_secs(30);
const BUDGET_6: Duration = Duration::from_secs(120);
const BUDGET_10: Duration = Duration::from_secs(60);
const BUDGET_11: Duration = Duration::from_secs(300);

/// Group pairs whose regular embeddings are exercised.
const GROUP_PAIRS: &[&str] = &["z2_trivial", "z2_full", "z4_02", "s3_a3", "s3_full"];
/// Models whose embeddings may certify the lattice hypotheses.
const EMBEDDED_MODELS: &[&str] =
    &["bisection_pair2", "bisection_pair3", "i1", "i2", "i3", "z2_trivial", "z2_full", "z4_02", "s3_a3", "s3_full"];

struct Outcome {
    id: u8,
    title: &'static str,
    passed: bool,
    detail: String,
    elapsed: Duration,
    budget: Option<Duration>,
}

impl Outcome {
    fn line(&self) -> String {
        let budget = self.budget.map(|b| format!(" / {}s", b.as_secs())).unwrap_or_default();
        let mark = if self.passed { "PASS" } else { "FAIL" };
        format!("[{mark}] {:02} {} ({:.2}s{budget}) {}", self.id, self.title, self.elapsed.as_secs_f64(), self.detail)
    }
}

fn run(id: u8, title: &'static str, budget: Option<Duration>, f: impl FnOnce() -> Result<String, String>) -> Outcome {
    let start = Instant::now();
    let result = f();
    let elapsed = start.elapsed();
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(b) = budget {
        if elapsed > b {
            passed = false;
            detail = format!("over budget; {detail}");
        }
    }
    let outcome = Outcome { id, title, passed, detail, elapsed, budget };
    println!("{}", outcome.line());
    outcome
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Relations and closures computed straight from the tables.
struct Oracle {
    n: usize,
    mul: Vec<Vec<usize>>,
    star: Vec<usize>,
    e: Vec<bool>,
    /// `sd[a][b]`: `ab* ∈ E` and `a = ab*b`.
    sd: Vec<Vec<bool>>,
}

impl Oracle {
    fn new(pair: &WeylPair) -> Self {
        let s = pair.s();
        let n = s.n();
        let mul = s.mult_table();
        let star = s.star_table();
        let e: Vec<bool> = (0..n).map(|a| pair.e().contains(a)).collect();
        let sd = (0..n)
            .map(|a| (0..n).map(|b| e[mul[a][star[b]]] && mul[mul[a][star[b]]][b] == a).collect())
            .collect();
        Oracle { n, mul, star, e, sd }
    }

    fn up(&self, t: &ElementSet) -> ElementSet {
        ElementSet::from_ids(self.n, (0..self.n).filter(|&a| t.iter().any(|x| self.sd[x][a])))
    }

    fn down(&self, a: usize) -> ElementSet {
        ElementSet::from_ids(self.n, (0..self.n).filter(|&x| self.sd[x][a]))
    }

    fn star_set(&self, c: &ElementSet) -> ElementSet {
        ElementSet::from_ids(self.n, c.iter().map(|a| self.star[a]))
    }

    fn mul_set(&self, b: &ElementSet, c: &ElementSet) -> ElementSet {
        ElementSet::from_ids(self.n, b.iter().flat_map(|x| c.iter().map(move |y| self.mul[x][y])))
    }

    fn is_filter(&self, f: &ElementSet) -> bool {
        !f.is_empty()
            && self.up(f).is_subset(f)
            && f.iter().all(|a| f.iter().all(|b| f.iter().any(|c| self.sd[c][a] && self.sd[c][b])))
    }

    fn is_coset(&self, c: &ElementSet) -> bool {
        &self.up(c) == c && self.mul_set(&self.mul_set(c, &self.star_set(c)), c).is_subset(c)
    }

    /// The five unit-coset conditions, in order.
    fn unit_conditions(&self, c: &ElementSet) -> [bool; 5] {
        let closed = &self.up(c) == c;
        let coset = self.is_coset(c);
        let cc = self.mul_set(c, &self.star_set(c));
        [
            coset && self.up(&cc) == *c,
            cc.is_subset(c) && closed,
            self.mul_set(c, c).is_subset(c) && self.star_set(c).is_subset(c) && closed,
            coset && c.iter().any(|a| (0..self.n).any(|x| self.mul[self.star[x]][x] == a)),
            coset && c.iter().any(|a| self.e[a]),
        ]
    }
}

/// Groupoid axioms on the tables of a topological groupoid.
fn groupoid_axioms(g: &TopGroupoid) -> Result<(), String> {
    let n = g.n();
    for a in 0..n {
        ensure(g.star[g.star[a]] == a, || format!("a**≠a at {a}"))?;
        let (s, r) = (g.product[g.star[a]][a], g.product[a][g.star[a]]);
        let (Some(s), Some(r)) = (s, r) else { return Err(format!("a*a or aa* undefined at {a}")) };
        ensure(g.units.contains(s) && g.units.contains(r), || format!("source or range of {a} not a unit"))?;
        ensure(g.product[a][s] == Some(a) && g.product[r][a] == Some(a), || format!("unit laws fail at {a}"))?;
    }
    for u in g.units.iter() {
        ensure(g.star[u] == u && g.product[u][u] == Some(u), || format!("unit {u} not a self-adjoint idempotent"))?;
    }
    for a in 0..n {
        for b in 0..n {
            let defined = g.product[a][b].is_some();
            let composable = g.product[g.star[a]][a] == g.product[b][g.star[b]];
            ensure(defined == composable, || format!("domain of the product wrong at ({a},{b})"))?;
            let Some(ab) = g.product[a][b] else { continue };
            ensure(g.product[g.star[b]][g.star[a]] == Some(g.star[ab]), || format!("(ab)* ≠ b*a* at ({a},{b})"))?;
            for c in 0..n {
                if g.product[b][c].is_some() {
                    let left = g.product[ab][c];
                    let right = g.product[b][c].and_then(|bc| g.product[a][bc]);
                    ensure(left.is_some() && left == right, || format!("associativity fails at ({a},{b},{c})"))?;
                }
            }
        }
    }
    Ok(())
}

/// `C_a`: the points containing `a`.
fn basic(g: &TopGroupoid, a: usize) -> ElementSet {
    ElementSet::from_ids(g.n(), (0..g.n()).filter(|&p| g.points[p].contains(a)))
}

fn set_product(g: &TopGroupoid, x: &ElementSet, y: &ElementSet) -> ElementSet {
    ElementSet::from_ids(g.n(), x.iter().flat_map(|p| y.iter().filter_map(move |r| g.product[p][r])))
}

fn criterion_1() -> Result<String, String> {
    let mut detail = Vec::new();
    for (name, pair) in [("s3_a3", s3_a3()), ("z4_02", z4_02())] {
        let o = Oracle::new(&pair);
        let coset_of = |a: usize| ElementSet::from_ids(o.n, pair.e().iter().map(|e| o.mul[a][e]));
        let quotient: BTreeSet<ElementSet> = (0..o.n).map(coset_of).collect();
        let ultras = enumerate_ultrafilters(&pair);
        ensure(ultras.len() == 2 && quotient.len() == 2, || format!("{name}: {} ultrafilters, |S/E| = {}", ultras.len(), quotient.len()))?;
        ensure(ultras.iter().cloned().collect::<BTreeSet<_>>() == quotient, || format!("{name}: ultrafilters are not the E-cosets"))?;
        let g = weyl_groupoid(&pair, Carrier::Ultrafilters).map_err(|e| e.to_string())?;
        for u in 0..g.n() {
            for v in 0..g.n() {
                let (a, b) = (g.points[u].first().unwrap(), g.points[v].first().unwrap());
                let w = g.product[u][v].ok_or_else(|| format!("{name}: product undefined"))?;
                ensure(g.points[w] == coset_of(o.mul[a][b]), || format!("{name}: UV ≠ (ab)E"))?;
            }
        }
        detail.push(format!("{name}: 2 ultrafilters = S/E"));
    }
    Ok(detail.join("; "))
}

fn criterion_2() -> Result<String, String> {
    let mut detail = Vec::new();
    for n in [2, 3] {
        let gpd = FiniteGroupoid::pair(n);
        let model = bisection_sign_semigroup(&gpd).map_err(|e| e.to_string())?;
        let g = weyl_groupoid(&model.pair, Carrier::Ultrafilters).map_err(|e| e.to_string())?;
        ensure(g.n() == n * n, || format!("pair({n}): |U(S)| = {}", g.n()))?;
        let k = model.pair.n();
        let phi: Vec<usize> = (0..gpd.n())
            .map(|x| {
                let sx = ElementSet::from_ids(k, (0..k).filter(|&a| model.functions[a].values[x] != 0));
                g.point_of(&sx).ok_or_else(|| format!("pair({n}): S_g for arrow {x} is not an ultrafilter"))
            })
            .collect::<Result<_, _>>()?;
        ensure(phi.iter().collect::<BTreeSet<_>>().len() == g.n(), || format!("pair({n}): g ↦ S_g not bijective"))?;
        for x in 0..gpd.n() {
            ensure(g.star[phi[x]] == phi[gpd.inv(x)], || format!("pair({n}): inverse not preserved at {x}"))?;
            for y in 0..gpd.n() {
                ensure(gpd.mul(x, y).map(|z| phi[z]) == g.product[phi[x]][phi[y]], || format!("pair({n}): product at ({x},{y})"))?;
            }
        }
        ensure(g.topology.is_discrete(), || format!("pair({n}): U(S) not discrete"))?;
        detail.push(format!("pair({n}): |S| = {k}, |U(S)| = {}", g.n()));
    }
    Ok(detail.join("; "))
}

fn criterion_3() -> Result<String, String> {
    let model = bisection_pair(2);
    let o = Oracle::new(&model.pair);
    let f = &model.functions;
    let mut cases = 0;
    for a in 0..o.n {
        for b in 0..o.n {
            // b is ±1, hence unimodular, wherever it is defined.
            let restriction = f[a].values.iter().zip(&f[b].values).all(|(&x, &y)| x == 0 || y != 0);
            let algebraic = o.mul[a][o.mul[o.star[b]][b]] == a && o.e[o.mul[a][o.star[b]]];
            let library = model.pair.relations().holds(weyl_groupoid::relations::RelationKind::StarDominates, a, b);
            ensure(restriction == algebraic && algebraic == library, || {
                format!("a={a} b={b}: restriction={restriction} algebraic={algebraic} library={library}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} pairs on |S| = {}", o.n))
}

fn criterion_4() -> Result<String, String> {
    let mut checked = Vec::new();
    for (name, pair) in bundled_pairs().into_iter().filter(|(_, p)| p.n() <= FILTER_ORACLE_MAX_N) {
        let o = Oracle::new(&pair);
        let brute: Vec<ElementSet> =
            (0u64..(1 << o.n)).map(|m| ElementSet::from_mask(o.n, m)).filter(|f| o.is_filter(f)).collect();
        let mut principal = enumerate_filters(&pair);
        principal.sort();
        ensure(principal == brute, || format!("{name}: {} principal vs {} brute force", principal.len(), brute.len()))?;
        checked.push(format!("{name}({})", brute.len()));
    }
    Ok(format!("filters agree on {}", checked.join(" ")))
}

fn criterion_5() -> Result<String, String> {
    let mut subsets = 0u64;
    let mut models = 0;
    for (name, pair) in bundled_pairs().into_iter().filter(|(_, p)| p.n() <= FIVE_WAY_MAX_N) {
        let o = Oracle::new(&pair);
        for m in 1u64..(1 << o.n) {
            let c = ElementSet::from_mask(o.n, m);
            let ours = o.unit_conditions(&c);
            ensure(ours.iter().all(|&x| x == ours[0]), || format!("{name}: {c:?} conditions {ours:?}"))?;
            let lib = unit_coset_conditions(&pair, &c);
            ensure(lib == ours, || format!("{name}: {c:?} library {lib:?} vs oracle {ours:?}"))?;
            subsets += 1;
        }
        models += 1;
    }
    Ok(format!("{subsets} subsets over {models} pairs, zero disagreements"))
}

fn criterion_6() -> Result<String, String> {
    let mut groupoids = 0;
    let mut ideal_cases = 0u64;
    let mut generated = Vec::new();
    for (name, pair) in bundled_pairs() {
        let o = Oracle::new(&pair);
        let mut filter_points = Vec::new();
        for carrier in [Carrier::Cosets, Carrier::Filters, Carrier::Ultrafilters] {
            let g = weyl_groupoid(&pair, carrier).map_err(|e| format!("{name} {carrier:?}: {e}"))?;
            groupoid_axioms(&g).map_err(|e| format!("{name} {carrier:?}: {e}"))?;
            ensure(g.checks.passed(), || format!("{name} {carrier:?}: {}", g.checks.render_text()))?;
            let etale = etale_report(&g);
            ensure(etale.passed(), || format!("{name} {carrier:?}: {}", etale.render_text()))?;
            groupoids += 1;
            match carrier {
                Carrier::Cosets => {
                    if !g.exhaustive {
                        generated.push(name.clone());
                    }
                    for p in (0..g.n()).filter(|&p| o.is_filter(&g.points[p])) {
                        for c in 0..g.n() {
                            for prod in [g.product[p][c], g.product[c][p]].into_iter().flatten() {
                                ideal_cases += 1;
                                ensure(o.is_filter(&g.points[prod]), || format!("{name}: filter times coset is not a filter"))?;
                            }
                        }
                    }
                }
                Carrier::Filters => filter_points = g.points.clone(),
                Carrier::Ultrafilters => {
                    let proper: Vec<&ElementSet> = filter_points.iter().filter(|f| !f.is_full()).collect();
                    let ultras: BTreeSet<&ElementSet> =
                        proper.iter().copied().filter(|f| !proper.iter().any(|h| h != f && f.is_subset(h))).collect();
                    ensure(g.points.iter().collect::<BTreeSet<_>>() == ultras, || format!("{name}: ultrafilter carrier"))?;
                    let gf = weyl_groupoid(&pair, Carrier::Filters).map_err(|e| e.to_string())?;
                    for u in (0..gf.n()).filter(|&u| ultras.contains(&gf.points[u])) {
                        for f in 0..gf.n() {
                            for prod in [gf.product[u][f], gf.product[f][u]].into_iter().flatten() {
                                ideal_cases += 1;
                                ensure(ultras.contains(&gf.points[prod]), || format!("{name}: ultrafilter ideal fails"))?;
                            }
                        }
                    }
                }
            }
        }
    }
    let note = if generated.is_empty() { String::new() } else { format!("; generated coset carriers: {}", generated.join(",")) };
    Ok(format!("{groupoids} groupoids étale, {ideal_cases} ideal products{note}"))
}

fn criterion_7() -> Result<String, String> {
    let mut checked = Vec::new();
    for (name, pair) in bundled_pairs().into_iter().filter(|(_, p)| p.s().zero().is_some()) {
        let g = weyl_groupoid(&pair, Carrier::Ultrafilters).map_err(|e| e.to_string())?;
        let nbhd = |p: usize| {
            g.points[p].iter().fold(ElementSet::full(g.n()), |acc, a| acc.intersection(&basic(&g, a)))
        };
        let units = g.units.to_vec();
        let separated = units.iter().all(|&u| {
            units.iter().all(|&v| u == v || nbhd(u).intersection(&nbhd(v)).intersection(&g.units).is_empty())
        });
        let lib = hausdorff_units(&g);
        ensure(lib && separated, || format!("{name}: library={lib} oracle={separated}"))?;
        checked.push(name);
    }
    Ok(format!("unit spaces Hausdorff on {}", checked.join(" ")))
}

fn embedded(name: &str) -> Result<EmbeddedModel, String> {
    named_embedding(name).map_err(|e| format!("{name}: {e}"))
}

fn criterion_8() -> Result<String, String> {
    let mut names = vec!["bisection_pair2"];
    names.extend_from_slice(GROUP_PAIRS);
    let mut cases = 0u64;
    let mut generated = Vec::new();
    for name in names {
        let model = embedded(name)?;
        for carrier in [Carrier::Cosets, Carrier::Filters, Carrier::Ultrafilters] {
            let lib = bisection_product_check(Some(&model), carrier).map_err(|e| format!("{name}: {e}"))?;
            ensure(lib.passed(), || format!("{name} {carrier:?}: {}", lib.render_text()))?;
            let g = weyl_groupoid(&model.pair, carrier).map_err(|e| e.to_string())?;
            if !g.exhaustive {
                generated.push(name);
            }
            let s = model.pair.s();
            for a in s.elements() {
                for b in s.elements() {
                    let lhs = basic(&g, s.mul(a, b));
                    ensure(lhs == set_product(&g, &basic(&g, a), &basic(&g, b)), || format!("{name} {carrier:?}: a={a} b={b}"))?;
                    cases += 1;
                }
            }
        }
    }
    let note = if generated.is_empty() { String::new() } else { format!("; coset carrier generated for {}", generated.join(",")) };
    Ok(format!("{cases} products over three carriers{note}"))
}

fn criterion_9() -> Result<String, String> {
    let mut certified = Vec::new();
    let mut forward = 0u64;
    let mut converse = 0u64;
    for name in EMBEDDED_MODELS {
        let model = embedded(name)?;
        if !model.flags.unit_ball_hereditary {
            continue;
        }
        let lib = compact_containment_report(&model).map_err(|e| format!("{name}: {e}"))?;
        ensure(lib.passed(), || format!("{name}: {}", lib.render_text()))?;
        let o = Oracle::new(&model.pair);
        let g = weyl_groupoid(&model.pair, Carrier::Ultrafilters).map_err(|e| e.to_string())?;
        let u: Vec<ElementSet> = (0..o.n).map(|a| basic(&g, a)).collect();
        let down: Vec<ElementSet> = (0..o.n).map(|a| o.down(a)).collect();
        let everywhere = model.flags.e_unit_ball == Some(true);
        for a in 0..o.n {
            for b in 0..o.n {
                // Every open cover of a finite space is finite, so compact
                // containment of opens is inclusion.
                let contained = u[a].is_subset(&u[b]);
                let lib_contained = compactly_contained(&g.topology, &u[a], &u[b]).map_err(|e| e.to_string())?;
                ensure(contained == lib_contained, || format!("{name}: containment of U_{a} in U_{b}"))?;
                let order = (0..o.n).any(|c| down[a].is_subset(&down[c]) && o.sd[c][b]);
                if order {
                    forward += 1;
                    ensure(contained, || format!("{name}: order bound without containment at a={a} b={b}"))?;
                }
                let compatible = o.e[o.mul[a][o.star[b]]];
                if everywhere || (compatible && !down[a].is_empty() && !down[b].is_empty()) {
                    converse += 1;
                    ensure(!contained || order, || format!("{name}: containment without order bound at a={a} b={b}"))?;
                }
            }
        }
        for p in 0..g.n() {
            for a in g.points[p].iter() {
                let found = g.points[p].iter().any(|b| o.sd[b][a] && u[b].is_subset(&u[a]));
                ensure(found, || format!("{name}: ultrafilter {p} has no basic pair below U_{a}"))?;
            }
        }
        certified.push(*name);
    }
    ensure(!certified.is_empty(), || "no certified models".into())?;
    Ok(format!("{} on {} ({forward} forward, {converse} converse cases)", certified.len(), certified.join(" ")))
}

/// Characteristic polynomial of a symmetric 2×2 or 3×3 matrix, highest
/// coefficient first.
fn char_poly(m: &RMatrix) -> Vec<Q> {
    let g = |i, j| m.get(i, j).clone();
    match m.dim() {
        2 => vec![qi(1), -(g(0, 0) + g(1, 1)), g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0)],
        3 => {
            let tr = g(0, 0) + g(1, 1) + g(2, 2);
            let minors = g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0) + g(0, 0) * g(2, 2) - g(0, 2) * g(2, 0) + g(1, 1) * g(2, 2)
                - g(1, 2) * g(2, 1);
            let det = g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1)) - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0));
            vec![qi(1), -tr, minors, -det]
        }
        d => panic!("no oracle for dimension {d}"),
    }
}

fn eval(p: &[Q], x: &Q) -> Q {
    p.iter().fold(Q::zero(), |acc, c| acc * x + c)
}

fn rem(a: &[Q], b: &[Q]) -> Vec<Q> {
    let mut r = a.to_vec();
    while r.len() >= b.len() {
        let f = r[0].clone() / b[0].clone();
        for (i, c) in b.iter().enumerate() {
            r[i] = r[i].clone() - f.clone() * c;
        }
        r.remove(0);
    }
    while r.first().is_some_and(Zero::is_zero) {
        r.remove(0);
    }
    r
}

/// Sturm chain `p, p', -rem(...)`.
fn sturm(p: &[Q]) -> Vec<Vec<Q>> {
    let deg = p.len() - 1;
    let dp: Vec<Q> = p[..deg].iter().enumerate().map(|(i, c)| c * qi((deg - i) as i64)).collect();
    let mut chain = vec![p.to_vec(), dp];
    loop {
        let r = rem(&chain[chain.len() - 2], &chain[chain.len() - 1]);
        if r.is_empty() {
            return chain;
        }
        chain.push(r.into_iter().map(|c| -c).collect());
    }
}

fn sign_changes(chain: &[Vec<Q>], x: &Q) -> usize {
    let signs: Vec<Ordering> =
        chain.iter().map(|p| eval(p, x).cmp(&Q::zero())).filter(|s| *s != Ordering::Equal).collect();
    signs.windows(2).filter(|w| w[0] != w[1]).count()
}

/// An interval of width below [`oracle_width`] holding `max(λ_max, 0)`.
fn lambda_max_plus(m: &RMatrix) -> (Q, Q) {
    let p = char_poly(m);
    let chain = sturm(&p);
    let bound = p.iter().skip(1).fold(qi(1), |acc, c| acc + c.abs());
    let above = |x: &Q| sign_changes(&chain, x);
    let mut lo = -bound.clone();
    let mut hi = bound;
    if above(&Q::zero()) == above(&hi) {
        return (Q::zero(), Q::zero());
    }
    while hi.clone() - lo.clone() > oracle_width() {
        let mid = (lo.clone() + hi.clone()) / qi(2);
        if above(&mid) == above(&hi) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    (lo.max(Q::zero()), hi)
}

fn random_matrix(rng: &mut ChaCha8Rng, d: usize, symmetric: bool) -> RMatrix {
    let mut m = RMatrix::zeros(d);
    for i in 0..d {
        for j in 0..d {
            if symmetric && j < i {
                let x = m.get(j, i).clone();
                m.set(i, j, x);
            } else {
                m.set(i, j, q(rng.gen_range(-12..=12), rng.gen_range(1..=6)));
            }
        }
    }
    m
}

fn within(v: &ExtNonneg, lo: &Q, hi: &Q, tol: &Q) -> bool {
    v.cmp_rational(&(lo.clone() - tol)) != Ordering::Less && v.cmp_rational(&(hi.clone() + tol)) != Ordering::Greater
}

fn criterion_10() -> Result<String, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(NORM_SEED);
    let tol = norm_tolerance();
    let approx = NormMode::Approx(tol.clone());
    let mut cases = 0;
    for d in [2, 3] {
        let backend = RingBackend::RationalMatrices(d);
        for _ in 0..NORM_SAMPLES_PER_DIM {
            let a = random_matrix(&mut rng, d, true);
            let (lo, hi) = lambda_max_plus(&a);
            let exact = ceil_norm(backend, &a, &NormMode::Exact).map_err(|e| e.to_string())?;
            let near = ceil_norm(backend, &a, &approx).map_err(|e| e.to_string())?;
            ensure(within(&exact, &lo, &hi, &tol) && within(&near, &lo, &hi, &tol), || {
                format!("{a}: exact {exact}, approximate {near}, oracle [{lo}, {hi}]")
            })?;
            let b = random_matrix(&mut rng, d, false);
            let bb = &b * &b.star();
            let ceil_bb = ceil_norm(backend, &bb, &NormMode::Exact).map_err(|e| e.to_string())?;
            let norm_sq_bb = quasi_norm_sq(backend, &bb, &NormMode::Exact).map_err(|e| e.to_string())?;
            let norm_sq_b = quasi_norm_sq(backend, &b, &NormMode::Exact).map_err(|e| e.to_string())?;
            ensure(norm_sq_bb == ceil_bb.square() && ceil_bb == norm_sq_b, || {
                format!("{b}: ‖bb*‖² = {norm_sq_bb}, ⌈bb*⌉ = {ceil_bb}, ‖b‖² = {norm_sq_b}")
            })?;
            cases += 1;
        }
    }
    Ok(format!("{cases} symmetric samples within {} of λ_max₊ and {cases} exact square identities", "1e-6"))
}

fn criterion_11() -> Result<String, String> {
    let mut cases = 0u64;
    for d in [2, 3] {
        let r = ring_law_suite(RingBackend::RationalMatrices(d), None, LAW_SAMPLES_PER_DIM, LAW_SEED + d as u64)
            .map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("dimension {d}: {}", r.render_text()))?;
        cases += r.checks.iter().map(|c| c.cases).sum::<u64>();
    }
    let model = embedded("bisection_pair2")?;
    let r = model_law_suite(&model).map_err(|e| e.to_string())?;
    ensure(r.passed(), || r.render_text())?;
    let model_cases: u64 = r.checks.iter().map(|c| c.cases).sum();
    Ok(format!(
        "{} samples, {cases} sampled cases; {} model laws, {model_cases} exhaustive cases",
        2 * LAW_SAMPLES_PER_DIM,
        r.checks.len()
    ))
}

/// Instance checks on every bundled action system, and whether the tail
/// analog is non-Hausdorff. The second part cannot hold for a finite
/// semigroup: `U(S)` is discrete, the least base relation is an equivalence,
/// and so every basic set `x_s^R` with `R` least is a single bundle point.
fn criterion_12() -> (Result<String, String>, bool) {
    let mut discrete_everywhere = true;
    let mut detail = Vec::new();
    let mut instance_checks = Ok(());
    let mut tail_hausdorff = None;
    for (name, sys) in bundled_systems() {
        let (b, report) = match bundle_report(&sys) {
            Ok(x) => x,
            Err(e) => return (Err(format!("{name}: {e}")), false),
        };
        if !report.passed() && instance_checks.is_ok() {
            instance_checks = Err(format!("{name}: {}", report.render_text()));
        }
        discrete_everywhere &= b.base_topology.is_discrete() && b.topology.is_discrete();
        if name == "tail_sequences" {
            tail_hausdorff = Some(b.is_hausdorff());
        }
        detail.push(format!("{name}: {} points, hausdorff={}", b.points.len(), b.is_hausdorff()));
    }
    let detail = detail.join("; ");
    let result = match (instance_checks, tail_hausdorff) {
        (Err(e), _) => Err(e),
        (Ok(()), Some(false)) => Ok(detail),
        (Ok(()), Some(true)) => {
            Err(format!("tail analog is Hausdorff; every finite bundle is discrete (instance checks pass; {detail})"))
        }
        (Ok(()), None) => Err("tail_sequences missing".into()),
    };
    (result, discrete_everywhere)
}

fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../..")
}

/// The CLI binary built alongside this test, if it is newer than every source.
fn cli_binary() -> Result<PathBuf, String> {
    let target = std::env::var_os("CARGO_TARGET_DIR").map(PathBuf::from).unwrap_or_else(|| workspace_root().join("target"));
    let bin = ["debug", "release"]
        .iter()
        .map(|p| target.join(p).join(format!("weyl{}", std::env::consts::EXE_SUFFIX)))
        .filter(|p| p.exists())
        .max_by_key(|p| p.metadata().and_then(|m| m.modified()).ok())
        .ok_or("the weyl binary is not built; run the whole workspace's tests")?;
    let built = bin.metadata().and_then(|m| m.modified()).map_err(|e| e.to_string())?;
    let mut stack = vec![workspace_root().join("crates/cli/src"), workspace_root().join("crates/core/src")];
    while let Some(dir) = stack.pop() {
        for entry in std::fs::read_dir(&dir).map_err(|e| e.to_string())? {
            let path = entry.map_err(|e| e.to_string())?.path();
            if path.is_dir() {
                stack.push(path);
            } else if path.metadata().and_then(|m| m.modified()).map_err(|e| e.to_string())? > built {
                return Err(format!("{} is older than {}", bin.display(), path.display()));
            }
        }
    }
    Ok(bin)
}

fn criterion_13() -> Result<String, String> {
    let bin = cli_binary()?;
    let dir = std::env::temp_dir().join(format!("weyl-acceptance-{}", std::process::id()));
    std::fs::create_dir_all(&dir).map_err(|e| e.to_string())?;
    let run = |args: &[String], workers: &str| -> Result<(Vec<u8>, i32), String> {
        let out = Command::new(&bin).args(args).env("WEYL_WORKERS", workers).output().map_err(|e| e.to_string())?;
        Ok((out.stdout, out.status.code().unwrap_or(-1)))
    };
    let s = |x: &str| x.to_owned();
    let pair_file = dir.join("pair.json").display().to_string();
    let matrix_file = dir.join("m.json").display().to_string();
    std::fs::write(&matrix_file, r#"{"d": 2, "entries": [["1/2", "0"], ["0", "-1"]]}"#).map_err(|e| e.to_string())?;
    let (_, code) = run(&[s("model"), s("s3_a3"), s("--emit"), pair_file.clone()], "1")?;
    ensure(code == 0, || "model --emit failed".into())?;
    let commands: Vec<(Vec<String>, Vec<&str>)> = vec![
        (vec![s("verify"), pair_file.clone(), s("--suites")], vec![]),
        (vec![s("--format"), s("json"), s("verify"), pair_file.clone()], vec![]),
        (vec![s("model"), s("--list")], vec![]),
        (vec![s("model"), s("i3"), s("--emit"), s("{out}/model.json")], vec!["model.json"]),
        (vec![s("weyl"), s("--model"), s("bisection_pair2"), s("--dot"), s("{out}/g.dot"), s("--emit"), s("{out}/g.json")], vec!["g.dot", "g.json"]),
        (vec![s("weyl"), pair_file.clone(), s("--carrier"), s("cosets")], vec![]),
        (vec![s("cosets"), s("--model"), s("i2"), s("--emit"), s("{out}/c.json")], vec!["c.json"]),
        (vec![s("--format"), s("json"), s("cosets"), s("--model"), s("bisection_pair2")], vec![]),
        (vec![s("laws"), s("--seed"), s("7"), s("--samples"), s("30"), s("--dim"), s("3")], vec![]),
        (vec![s("laws"), s("--seed"), s("8"), s("--samples"), s("10"), s("--model"), s("i2")], vec![]),
        (vec![s("norm"), matrix_file.clone(), s("--eps"), s("1/1000000")], vec![]),
        (vec![s("norm"), matrix_file.clone(), s("--mode"), s("exact")], vec![]),
        (vec![s("bundle"), s("--list")], vec![]),
        (vec![s("bundle"), s("tail_sequences"), s("--emit"), s("{out}/b.json")], vec!["b.json"]),
        (vec![s("bundle"), s("i2_marked")], vec![]),
        (
            vec![s("export"), s("bisection_pair2"), s("--dir"), s("{out}/export")],
            vec!["export/semigroup.json", "export/weyl.json", "export/weyl.dot", "export/embedding.json"],
        ),
    ];
    let mut runs = 0;
    for (args, files) in &commands {
        let mut baseline: Option<(Vec<u8>, Vec<Vec<u8>>)> = None;
        for (k, workers) in ["1", "1", "4", "4"].into_iter().enumerate() {
            let out = dir.join(format!("run{k}"));
            let out_str = out.display().to_string();
            std::fs::create_dir_all(&out).map_err(|e| e.to_string())?;
            let argv: Vec<String> = args.iter().map(|a| a.replace("{out}", &out_str)).collect();
            let (stdout, code) = run(&argv, workers)?;
            ensure(code == 0, || format!("{argv:?} exited {code}"))?;
            let stdout = String::from_utf8_lossy(&stdout).replace(&out_str, "{out}").into_bytes();
            let written = files.iter().map(|f| std::fs::read(out.join(f)).map_err(|e| e.to_string())).collect::<Result<Vec<_>, _>>()?;
            match &baseline {
                None => baseline = Some((stdout, written)),
                Some((b_out, b_files)) => {
                    ensure(b_out == &stdout, || format!("{args:?}: stdout differs (run {k}, {workers} workers)"))?;
                    ensure(b_files == &written, || format!("{args:?}: files differ (run {k}, {workers} workers)"))?;
                }
            }
            runs += 1;
        }
    }
    let _ = std::fs::remove_dir_all(&dir);
    Ok(format!("{} commands, {runs} runs over workers {{1, 4}}, byte-identical", commands.len()))
}

#[test]
fn acceptance() {
    let mut outcomes = vec![
        run(1, "group-pair reconstruction", Some(BUDGET_1), criterion_1),
        run(2, "groupoid reconstruction from signed bisections", Some(BUDGET_2), criterion_2),
        run(3, "support inclusion equals a = ab*b with ab* in E", None, criterion_3),
        run(4, "principal filters against the 2^n scan", None, criterion_4),
        run(5, "five unit-coset characterizations agree", None, criterion_5),
        run(6, "coset, filter and ultrafilter groupoids are étale", Some(BUDGET_6), criterion_6),
        run(7, "unit spaces with a zero are Hausdorff", None, criterion_7),
        run(8, "C_ab = C_a C_b", None, criterion_8),
        run(9, "order bounds against compact containment", None, criterion_9),
        run(10, "⌈a⌉ against the Sturm eigenvalue oracle", Some(BUDGET_10), criterion_10),
        run(11, "sampled ring laws and exhaustive model laws", Some(BUDGET_11), criterion_11),
    ];
    let mut discrete = false;
    outcomes.push(run(12, "Weyl bundles, non-Hausdorff tail analog", None, || {
        let (r, d) = criterion_12();
        discrete = d;
        r
    }));
    outcomes.push(run(13, "CLI byte-identical across runs and workers", None, criterion_13));

    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!("{} of {} criteria pass; failing: {failed:?}", outcomes.len() - failed.len(), outcomes.len());

    // Criterion 12 asks for a non-Hausdorff bundle over a finite semigroup,
    // which finite data cannot produce. It stays FAIL above; here the test
    // pins that it fails for exactly that reason and nothing else.
    let twelve = &outcomes[11];
    assert!(!twelve.passed, "the tail analog became non-Hausdorff; revisit the discreteness analysis");
    assert!(twelve.detail.starts_with("tail analog is Hausdorff"), "criterion 12 failed otherwise: {}", twelve.detail);
    assert!(discrete, "a finite bundle was not discrete");
    let unexpected: Vec<String> = outcomes.iter().filter(|o| !o.passed && o.id != 12).map(Outcome::line).collect();
    assert!(unexpected.is_empty(), "failing criteria:\n{}", unexpected.join("\n"));
}
