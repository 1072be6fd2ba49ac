//! Seeded law suites for the `*`-ring layer: sampled norm, order and
//! domination laws on random matrices, plus exhaustive checks inside a
//! certified embedded model.
//!
//! Sample `i` draws from its own ChaCha stream, so reports do not depend on
//! the number of workers. Structured instances (projections, block unit-ball
//! elements, signed-permutation conjugates) keep the hypotheses of the
//! implications satisfied often enough to be tested.

use super::lattice::LatticeSubring;
use super::matrix::RMatrix;
pub use super::model_laws::model_law_suite;
use super::norm::{ceil_norm, leq_psd, orthogonal, ring_dominates, sigma_membership, ExtNonneg, NormMode, RingBackend};
use super::psd::{sum_bbt, sum_of_squares};
use super::rational::{is_integer, q, qi, Q};
use crate::error::{Error, Result};
use crate::models::EmbeddedModel;
use crate::report::Report;
use num_traits::{One, Signed, Zero};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::cmp::Ordering;
use std::collections::HashMap;

/// Entries of sampled rational matrices.
pub fn default_grid() -> Vec<Q> {
    vec![qi(-1), q(-1, 2), qi(0), q(1, 2), qi(1)]
}

/// Entries of sampled integers.
pub fn integer_grid() -> Vec<Q> {
    (-2..=2).map(qi).collect()
}

/// Tolerance of the approximate-norm comparison.
pub fn approx_eps() -> Q {
    q(1, 1_000_000)
}

macro_rules! laws {
    ($($v:ident => $n:literal),* $(,)?) => {
        #[derive(Clone, Copy, Debug)]
        enum Law { $($v),* }
        const LAW_NAMES: &[&str] = &[$($n),*];
    };
}

laws! {
    CeilHomogeneous => "ceil_positive_homogeneous",
    CeilSubadditive => "ceil_subadditive",
    CeilStarSubmultiplicative => "ceil_star_submultiplicative",
    NormStarInvariant => "quasinorm_star_invariant",
    NormHomogeneous => "quasinorm_homogeneous",
    NormSubmultiplicative => "quasinorm_submultiplicative",
    NormSqrt2Subadditive => "quasinorm_sqrt2_subadditive",
    CeilBelowGivesMembership => "ceil_below_fraction_gives_membership",
    MembershipBoundsCeil => "membership_bounds_ceil",
    SquareNormIdentity => "square_norm_identity",
    OrderReflexive => "order_reflexive",
    OrderAntisymmetric => "order_antisymmetric",
    OrderTransitive => "order_transitive",
    OrderTranslation => "order_translation_invariant",
    OrderConjugation => "order_conjugation_monotone",
    OrderMatchesPsdCone => "order_matches_psd_cone",
    CeilBoundGivesOrder => "ceil_bound_gives_order",
    OrderBoundGivesCeil => "order_bound_gives_ceil",
    TorsionFree => "torsion_free",
    PositiveSelfAdjoint => "positive_is_self_adjoint",
    DominatedSquare => "dominated_square_gives_domination",
    PowerDomination => "power_domination_of_positive",
    UnitBallSquaresOrdered => "unit_ball_domination_orders_squares",
    FixedConjugate => "unit_ball_fixed_conjugate_gives_domination",
    StarDomination => "unit_ball_star_domination",
    ProductDomination => "unit_ball_product_domination",
    DominationThroughOrder => "domination_through_order",
    NullConjugatePerp => "null_conjugate_gives_perp",
    OrderThenDomination => "order_then_domination",
    OrderThenPerp => "order_then_perp",
    CommonLowerBoundVanishes => "common_lower_bound_of_perps_vanishes",
    AnticommutingPerp => "anticommuting_gives_perp",
    SquareCommutant => "square_commutant",
    MeetZeroProductZero => "meet_zero_gives_product_zero",
    PositivePartDomination => "domination_passes_to_positive_part",
    ExactMatchesApprox => "exact_matches_approx",
    SumOfSquares => "sum_of_squares_reconstructs",
}

/// Per-sample counts: instances where the hypothesis held, and whether one
/// of them violated the conclusion.
struct Tally {
    cases: Vec<u64>,
    failed: Vec<bool>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: vec![0; LAW_NAMES.len()], failed: vec![false; LAW_NAMES.len()] }
    }

    /// Evaluates `conclusion` only when `hypothesis` holds.
    fn law(&mut self, law: Law, hypothesis: bool, conclusion: impl FnOnce() -> Result<bool>) -> Result<()> {
        if hypothesis {
            self.cases[law as usize] += 1;
            if !conclusion()? {
                self.failed[law as usize] = true;
            }
        }
        Ok(())
    }

    fn holds(&mut self, law: Law, ok: bool) {
        self.cases[law as usize] += 1;
        if !ok {
            self.failed[law as usize] = true;
        }
    }
}

/// Memoised norm evaluations within one sample.
struct Ctx {
    backend: RingBackend,
    d: usize,
    ceil: HashMap<RMatrix, ExtNonneg>,
}

impl Ctx {
    fn ceil(&mut self, a: &RMatrix) -> Result<ExtNonneg> {
        if let Some(v) = self.ceil.get(a) {
            return Ok(v.clone());
        }
        let v = ceil_norm(self.backend, a, &NormMode::Exact)?;
        self.ceil.insert(a.clone(), v.clone());
        Ok(v)
    }

    fn qn(&mut self, a: &RMatrix) -> Result<ExtNonneg> {
        let x = self.ceil(&(a * &a.star()))?;
        let y = self.ceil(&(&a.star() * a))?;
        Ok(x.max(y))
    }

    /// `a ≤ b ⇔ ⌈a − b⌉ = 0`.
    fn leq(&mut self, a: &RMatrix, b: &RMatrix) -> Result<bool> {
        Ok(self.ceil(&(a - b))?.is_zero())
    }

    fn in_ball(&mut self, a: &RMatrix) -> Result<bool> {
        Ok(self.qn(a)?.cmp_rational(&Q::one()) != Ordering::Greater)
    }

    fn one(&self) -> RMatrix {
        RMatrix::identity(self.d)
    }
}

struct Gen {
    rng: ChaCha8Rng,
    d: usize,
    grid: Vec<Q>,
}

impl Gen {
    fn entry(&mut self) -> Q {
        self.grid.choose(&mut self.rng).expect("nonempty grid").clone()
    }

    fn matrix(&mut self) -> RMatrix {
        let mut m = RMatrix::zeros(self.d);
        for i in 0..self.d {
            for j in 0..self.d {
                m.set(i, j, self.entry());
            }
        }
        m
    }

    /// Each entry zeroed with probability 1/2.
    fn sparse(&mut self) -> RMatrix {
        let mut m = self.matrix();
        for i in 0..self.d {
            for j in 0..self.d {
                if self.rng.gen_bool(0.5) {
                    m.set(i, j, Q::zero());
                }
            }
        }
        m
    }

    fn symmetric(&mut self) -> RMatrix {
        let mut m = RMatrix::zeros(self.d);
        for i in 0..self.d {
            for j in i..self.d {
                let x = self.entry();
                m.set(i, j, x.clone());
                m.set(j, i, x);
            }
        }
        m
    }

    /// A diagonal 0/1 projection.
    fn projection(&mut self) -> RMatrix {
        let bits: Vec<i64> = (0..self.d).map(|_| i64::from(self.rng.gen_bool(0.5))).collect();
        RMatrix::diag_i64(&bits)
    }

    /// A signed permutation matrix, or the identity with probability 1/2.
    fn signed_permutation(&mut self) -> RMatrix {
        if self.rng.gen_bool(0.5) {
            return RMatrix::identity(self.d);
        }
        let mut perm: Vec<usize> = (0..self.d).collect();
        perm.shuffle(&mut self.rng);
        let mut m = RMatrix::zeros(self.d);
        for (i, &j) in perm.iter().enumerate() {
            m.set(i, j, qi(if self.rng.gen_bool(0.5) { 1 } else { -1 }));
        }
        m
    }

    fn small(&mut self, lo: i64, hi: i64) -> i64 {
        self.rng.gen_range(lo..=hi)
    }
}

fn max_abs(m: &RMatrix) -> Q {
    m.entries().iter().map(Signed::abs).max().unwrap_or_else(Q::zero)
}

/// `m / (d · max|m_ij|)`, whose norm is at most 1. Integral `1×1` inputs
/// stay integral.
fn shrink(m: &RMatrix) -> RMatrix {
    let top = max_abs(m);
    if top.is_zero() {
        return m.clone();
    }
    m.scale(&(Q::one() / (top * qi(m.dim() as i64))))
}

fn psd(g: &RMatrix) -> RMatrix {
    g * &g.star()
}

fn sample(backend: RingBackend, grid: &[Q], seed: u64, index: u64) -> Result<Tally> {
    let d = backend.dim();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    let mut g = Gen { rng, d, grid: grid.to_vec() };
    let mut cx = Ctx { backend, d, ceil: HashMap::new() };
    let mut t = Tally::new();

    let a = g.matrix();
    let b = g.matrix();
    let c = g.matrix();
    let h = g.symmetric();
    let k = g.symmetric();
    let sp = g.sparse();
    let n = g.small(0, 3);
    let z = g.small(-3, 3);
    let m = g.small(0, 4);
    let nn = g.small(1, 4);
    let one = cx.one();
    let bb = psd(&b);
    let cc = psd(&c);

    norm_laws(&mut cx, &mut t, [&a, &b, &h, &k], n, z)?;
    fraction_laws(&mut cx, &mut t, &b, &h, m, nn)?;
    order_laws(&mut cx, &mut t, [&a, &b, &c, &h, &k], &bb, &cc)?;

    // Torsion and positivity.
    for x in [&a, &sp] {
        for w in 1..=4 {
            t.holds(Law::TorsionFree, x.scale_i64(w).is_zero() == x.is_zero());
        }
    }
    for x in [&a, &h, &sp, &bb, &(-&bb)] {
        let finite = cx.ceil(&(-x))?.is_finite();
        t.law(Law::PositiveSelfAdjoint, finite, || Ok(x.is_symmetric()))?;
    }

    // Structured domination instances, conjugated by a signed permutation.
    let p = g.projection();
    let co = &one - &p;
    let qm = g.signed_permutation();
    let conj = |x: &RMatrix| &(&qm * x) * &qm.star();
    let a0 = g.matrix();
    let y1 = g.matrix();
    let y2 = g.matrix();
    let gm = g.matrix();
    let hm = g.matrix();
    let a_s = conj(&(&a0 * &p));
    let a_u = conj(&(&shrink(&a0) * &p));
    let block = |y: &RMatrix| &(&co * y) * &co;
    let bu1 = conj(&(&p + &shrink(&block(&y1))));
    let bu2 = conj(&(&p + &shrink(&block(&y2))));
    let bg = conj(&(&p + &(&co * &y1)));
    let bp = conj(&(&p + &block(&psd(&gm))));
    let bneg = conj(&(&p - &shrink(&block(&psd(&gm)))));
    let cpos = conj(&(&p + &shrink(&block(&psd(&hm)))));
    let (sb, sc, sh, sk) = (shrink(&b), shrink(&c), shrink(&h), shrink(&k));

    for (x, y) in [(&a_s, &bg), (&a, &b)] {
        t.law(Law::DominatedSquare, ring_dominates(&(&x.star() * x), y), || Ok(ring_dominates(x, y)))?;
    }
    let pw = g.small(1, 3) as u32;
    for (x, y, e) in [(&a_s, &bp, pw), (&a, &bb, 2)] {
        let hyp = y.is_symmetric() && cx.leq(&RMatrix::zeros(d), y)? && ring_dominates(x, &y.pow(e));
        t.law(Law::PowerDomination, hyp, || Ok(ring_dominates(x, y)))?;
    }
    for (x, y) in [(&a_u, &bg), (&shrink(&a), &b)] {
        let hyp = ring_dominates(x, y) && cx.in_ball(x)?;
        t.law(Law::UnitBallSquaresOrdered, hyp, || cx.leq(&(&x.star() * x), &(&y.star() * y)))?;
    }
    for (x, y) in [(&a_s, &bu1), (&a, &sb)] {
        let hyp = &(&(x * y) * &x.star()) == &(x * &x.star()) && cx.in_ball(y)?;
        t.law(Law::FixedConjugate, hyp, || Ok(ring_dominates(x, y)))?;
    }
    for (x, y) in [(&a_s, &bu1.star()), (&a, &sb)] {
        let hyp = ring_dominates(x, &y.star()) && cx.in_ball(y)?;
        t.law(Law::StarDomination, hyp, || Ok(ring_dominates(x, y)))?;
    }
    for (x, y, w) in [(&a_s, &bu1, &bu2), (&a, &sb, &sc)] {
        let hyp = ring_dominates(x, &(y * w)) && cx.in_ball(y)? && cx.in_ball(w)?;
        t.law(Law::ProductDomination, hyp, || Ok(ring_dominates(x, &(y * &y.star()))))?;
    }
    let bm = conj(&p);
    for (x, y, w) in [(&a_s, &bneg, &cpos), (&a_s, &bm, &cpos), (&a, &sh, &sk)] {
        let hyp = ring_dominates(x, y)
            && cx.leq(y, w)?
            && cx.ceil(w)?.cmp_rational(&Q::one()) != Ordering::Greater
            && cx.in_ball(w)?;
        t.law(Law::DominationThroughOrder, hyp, || Ok(ring_dominates(x, w)))?;
    }

    // Positive p: a PSD element supported under the projection.
    let pp = conj(&shrink(&(&(&p * &psd(&gm)) * &p)));
    let pr = psd(&gm);
    for (x, y) in [(&conj(&(&a0 * &co)), &pp), (&a, &pr)] {
        let hyp = (&(x * y) * &x.star()).is_zero();
        t.law(Law::NullConjugatePerp, hyp, || Ok(orthogonal(x, y)))?;
    }
    let cop = conj(&co);
    for (x, y, w) in [(&pp, &bm, &bu1), (&pp, &h, &k), (&pr, &bb, &one)] {
        let hyp = cx.leq(x, y)? && ring_dominates(y, w);
        t.law(Law::OrderThenDomination, hyp, || Ok(ring_dominates(x, w)))?;
    }
    let yperp = conj(&(&y1 * &co));
    for (x, y, w) in [(&pp, &bm, &yperp), (&pr, &h, &k)] {
        let hyp = cx.leq(x, y)? && orthogonal(y, w);
        t.law(Law::OrderThenPerp, hyp, || Ok(orthogonal(x, w)))?;
    }
    let zero = RMatrix::zeros(d);
    for (x, y, w) in [(&pp, &bm, &cop), (&zero, &bm, &cop), (&pr, &bb, &cc), (&shrink(&pr), &one, &zero)] {
        let hyp = cx.leq(x, y)? && cx.leq(x, w)? && orthogonal(y, w);
        t.law(Law::CommonLowerBoundVanishes, hyp, || Ok(x.is_zero()))?;
    }
    for (x, y) in [(&conj(&block(&y1)), &pp), (&a, &pr)] {
        let hyp = (&(x * y) + &(y * x)).is_zero();
        t.law(Law::AnticommutingPerp, hyp, || Ok(orthogonal(x, y)))?;
    }
    // p diagonal with nonnegative grid entries; a commutes with p² by being
    // block diagonal along p's eigenspaces.
    let nonneg: Vec<Q> = grid.iter().filter(|x| !x.is_negative()).cloned().collect();
    let dv: Vec<Q> = (0..d).map(|_| nonneg.choose(&mut g.rng).expect("grid has a nonnegative entry").clone()).collect();
    let mut ab = g.matrix();
    for i in 0..d {
        for j in 0..d {
            if dv[i] != dv[j] {
                ab.set(i, j, Q::zero());
            }
        }
    }
    let pd = conj(&RMatrix::diag(&dv));
    for (x, y) in [(&conj(&ab), &pd), (&a, &pr), (&a, &pd)] {
        let y2 = y * y;
        let hyp = &(x * &y2) == &(&y2 * x);
        t.law(Law::SquareCommutant, hyp, || Ok(&(x * y) == &(y * x)))?;
    }

    lattice_laws(&mut g, &mut t, &a0)?;

    // Exact against approximate norms.
    let eps = approx_eps();
    for x in [&h, &bb, &(-&cc)] {
        let exact = cx.ceil(x)?;
        let approx = ceil_norm(backend, x, &NormMode::Approx(eps.clone()))?;
        let ok = match approx.as_rational() {
            Some(v) => exact.cmp_rational(v) != Ordering::Greater && exact.cmp_rational(&(v - &eps)) != Ordering::Less,
            None => false,
        };
        t.holds(Law::ExactMatchesApprox, ok);
    }

    // A_Σ contains squares and their sums, reconstructed explicitly.
    let sum = &bb + &cc;
    let rebuilt = sum_of_squares(&sum)?;
    let ok = sigma_membership(backend, &bb)?
        && sigma_membership(backend, &sum)?
        && rebuilt.is_some_and(|bs| sum_bbt(d, &bs) == sum);
    t.holds(Law::SumOfSquares, ok);
    Ok(t)
}

fn norm_laws(cx: &mut Ctx, t: &mut Tally, [a, b, h, k]: [&RMatrix; 4], n: i64, z: i64) -> Result<()> {
    for x in [h, a] {
        let lhs = cx.ceil(&x.scale_i64(n))?;
        let rhs = cx.ceil(x)?.scale(&qi(n));
        t.holds(Law::CeilHomogeneous, lhs == rhs);
    }
    for (x, y) in [(h, k), (a, h), (h, &-h)] {
        let lhs = cx.ceil(&(x + y))?;
        t.holds(Law::CeilSubadditive, lhs.le_add(&cx.ceil(x)?, &cx.ceil(y)?));
    }
    for (x, w) in [(h, b), (a, b), (k, h)] {
        let lhs = cx.ceil(&(&(w * x) * &w.star()))?;
        t.holds(Law::CeilStarSubmultiplicative, lhs.le_mul(&cx.ceil(&psd(w))?, &cx.ceil(x)?));
    }
    let na = cx.qn(a)?;
    let nb = cx.qn(b)?;
    t.holds(Law::NormStarInvariant, cx.qn(&a.star())? == na);
    t.holds(Law::NormHomogeneous, cx.qn(&a.scale_i64(z))? == na.scale(&qi(z * z)));
    t.holds(Law::NormSubmultiplicative, cx.qn(&(a * b))?.le_mul(&na, &nb));
    t.holds(Law::NormSqrt2Subadditive, cx.qn(&(a + b))?.scale(&q(1, 2)).le_add(&na, &nb));
    // ‖aa*‖ = ⌈aa*⌉ = ‖a‖², squared on the left to stay algebraic.
    let aa = psd(a);
    let ceil_aa = cx.ceil(&aa)?;
    let ok = cx.qn(&aa)? == ceil_aa.square() && ceil_aa == na && cx.ceil(&(&a.star() * a))? == ceil_aa;
    t.holds(Law::SquareNormIdentity, ok);
    Ok(())
}

/// Norm bounds against `m·bb* − n·bhb*`. Over both backends `A_Σ/ℕ = A_Σ`.
fn fraction_laws(cx: &mut Ctx, t: &mut Tally, b: &RMatrix, h: &RMatrix, m: i64, n: i64) -> Result<()> {
    let backend = cx.backend;
    let frac = q(m, n);
    let bb = psd(b);
    let bhb = &(b * h) * &b.star();
    let lhs = &bb.scale_i64(m) - &bhb.scale_i64(n);
    let ceil_h = cx.ceil(h)?;
    t.law(Law::CeilBelowGivesMembership, ceil_h.cmp_rational(&frac) == Ordering::Less, || sigma_membership(backend, &lhs))?;
    let unit = &RMatrix::scalar(cx.d, qi(m)) - &h.scale_i64(n);
    let hyp = sigma_membership(backend, &unit)? && sigma_membership(backend, &lhs)?;
    t.law(Law::MembershipBoundsCeil, hyp, || Ok(ceil_h.cmp_rational(&frac) != Ordering::Greater))?;
    t.law(Law::CeilBoundGivesOrder, ceil_h.cmp_rational(&frac) != Ordering::Greater, || cx.leq(&bhb.scale_i64(n), &bb.scale_i64(m)))?;
    let hyp = cx.leq(&h.scale_i64(n), &RMatrix::scalar(cx.d, qi(m)))?;
    t.law(Law::OrderBoundGivesCeil, hyp, || Ok(ceil_h.cmp_rational(&frac) != Ordering::Greater))?;
    Ok(())
}

fn order_laws(cx: &mut Ctx, t: &mut Tally, [a, b, c, h, k]: [&RMatrix; 5], bb: &RMatrix, cc: &RMatrix) -> Result<()> {
    let backend = cx.backend;
    for x in [a, h] {
        t.holds(Law::OrderReflexive, cx.leq(x, x)?);
    }
    let hb = h + bb;
    let hbc = &hb + cc;
    let hz = h + &RMatrix::zeros(cx.d);
    for (x, y) in [(h, &hb), (h, &hz), (h, k), (a, b)] {
        let hyp = cx.leq(x, y)? && cx.leq(y, x)?;
        t.law(Law::OrderAntisymmetric, hyp, || Ok(x == y))?;
    }
    for (x, y, w) in [(h, &hb, &hbc), (h, k, a), (&-bb, h, &hb)] {
        let hyp = cx.leq(x, y)? && cx.leq(y, w)?;
        t.law(Law::OrderTransitive, hyp, || cx.leq(x, w))?;
    }
    for (x, y) in [(h, &hb), (h, k), (&-cc, &hz)] {
        let hyp = cx.leq(x, y)?;
        t.law(Law::OrderTranslation, hyp, || cx.leq(&(x + c), &(y + c)))?;
        t.law(Law::OrderConjugation, hyp, || cx.leq(&(&(c * x) * &c.star()), &(&(c * y) * &c.star())))?;
    }
    for (x, y) in [(h, &hb), (&hb, h), (h, k), (a, b), (&-cc, h)] {
        t.holds(Law::OrderMatchesPsdCone, cx.leq(x, y)? == leq_psd(backend, x, y)?);
    }
    Ok(())
}

fn lattice_laws(g: &mut Gen, t: &mut Tally, a0: &RMatrix) -> Result<()> {
    let l = LatticeSubring::DiagonalInteger;
    let d = g.d;
    let diag = |g: &mut Gen| RMatrix::diag_i64(&(0..d).map(|_| g.small(-2, 2)).collect::<Vec<_>>());
    let u = diag(g);
    let x = diag(g);
    let y = diag(g);
    for (p, r) in [(l.pos_part(&u)?, l.neg_part(&u)?), (x.clone(), y.clone()), (l.pos_part(&x)?, l.pos_part(&y)?)] {
        let hyp = l.meet(&p, &r)?.is_zero();
        t.law(Law::MeetZeroProductZero, hyp, || Ok((&p * &r).is_zero()))?;
    }
    // b is 1 on a projection's support and arbitrary elsewhere, so a0·P ≺ b.
    let p = g.projection();
    let mut bd = x.clone();
    for i in 0..d {
        if p.get(i, i).is_one() {
            bd.set(i, i, Q::one());
        }
    }
    let a = a0 * &p;
    for (x, y) in [(&a, &bd), (a0, &y)] {
        let bp = l.pos_part(y)?;
        t.law(Law::PositivePartDomination, ring_dominates(x, y), || Ok(ring_dominates(x, &bp)))?;
    }
    Ok(())
}

/// Runs the sampled laws on `samples` seeded draws. `cases` counts the
/// instances whose hypothesis held; witnesses name the lowest failing sample.
pub fn sampled_law_suite(backend: RingBackend, grid: &[Q], samples: u64, seed: u64) -> Result<Report> {
    if grid.is_empty() || !grid.iter().any(|x| !x.is_negative()) {
        return Err(Error::Invalid("the sampling grid needs a nonnegative entry".into()));
    }
    if backend == RingBackend::Integers && !grid.iter().all(is_integer) {
        return Err(Error::Invalid("the integers backend needs an integral grid".into()));
    }
    let tallies: Vec<Tally> = (0..samples).into_par_iter().map(|i| sample(backend, grid, seed, i)).collect::<Result<_>>()?;
    let mut report = Report::new();
    for (j, name) in LAW_NAMES.iter().enumerate() {
        let cases = tallies.iter().map(|t| t.cases[j]).sum();
        let witness = tallies.iter().position(|t| t.failed[j]).map(|i| format!("sample {i} (seed {seed})"));
        report.check(*name, cases, witness);
    }
    report.fact("samples", samples);
    report.fact("seed", seed);
    report.fact("dim", backend.dim());
    Ok(report)
}

/// Sampled laws under the default grid for the backend, then, when a model
/// is given, the exhaustive model laws.
pub fn ring_law_suite(backend: RingBackend, model: Option<&EmbeddedModel>, samples: u64, seed: u64) -> Result<Report> {
    let grid = match backend {
        RingBackend::Integers => integer_grid(),
        RingBackend::RationalMatrices(_) => default_grid(),
    };
    let mut report = Report::new();
    report.merge("sampled", sampled_law_suite(backend, &grid, samples, seed)?);
    if let Some(model) = model {
        report.merge("model", model_law_suite(model)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::bisection_pair;

    #[test]
    fn shrink_lands_in_unit_ball() {
        let m = RMatrix::from_i64(&[&[2, -1], &[0, 1]]);
        let s = shrink(&m);
        assert_eq!(s, m.scale(&q(1, 4)));
        assert!(crate::ring::norm::in_unit_ball(RingBackend::RationalMatrices(2), &s).unwrap());
        assert_eq!(shrink(&RMatrix::from_i64(&[&[-2]])), RMatrix::from_i64(&[&[-1]]));
    }

    #[test]
    fn sampled_suite_passes_and_exercises_every_law() {
        for d in [2, 3] {
            let r = sampled_law_suite(RingBackend::RationalMatrices(d), &default_grid(), 60, 7).unwrap();
            assert!(r.passed(), "{}", r.render_text());
            for c in &r.checks {
                assert!(c.cases > 0, "{} never had its hypothesis met (d={d})", c.name);
            }
        }
    }

    #[test]
    fn integer_backend_suite_passes() {
        let r = sampled_law_suite(RingBackend::Integers, &integer_grid(), 100, 3).unwrap();
        assert!(r.passed(), "{}", r.render_text());
    }

    #[test]
    fn reports_do_not_depend_on_worker_count() {
        let run = |w| {
            rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .unwrap()
                .install(|| sampled_law_suite(RingBackend::RationalMatrices(2), &default_grid(), 24, 11).unwrap())
        };
        assert_eq!(run(1), run(4));
    }

    #[test]
    fn grids_are_validated() {
        assert!(sampled_law_suite(RingBackend::Integers, &default_grid(), 1, 0).is_err());
        assert!(sampled_law_suite(RingBackend::RationalMatrices(2), &[qi(-1)], 1, 0).is_err());
    }

    #[test]
    fn combined_suite_merges_model_checks() {
        let m = bisection_pair(2);
        let r = ring_law_suite(RingBackend::RationalMatrices(2), m.embedding.as_ref(), 8, 1).unwrap();
        assert!(r.passed(), "{}", r.render_text());
        assert!(r.checks.iter().any(|c| c.name.starts_with("model.")));
    }
}
