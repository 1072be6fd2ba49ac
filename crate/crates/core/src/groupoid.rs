//! Finite groupoids given by partial product tables, their validation, and
//! isomorphism search.

use crate::error::{Error, Result};
use crate::report::{first_witness, Report};
use crate::semigroup::StarSemigroup;
use crate::set::ElementSet;

/// A finite groupoid: a partial product with an involution in which every
/// arrow is unitary. Arrow ids are `0..n`; `product[a][b]` is `Some(ab)`
/// exactly when the source of `a` equals the range of `b`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteGroupoid {
    product: Vec<Vec<Option<usize>>>,
    inv: Vec<usize>,
}

impl FiniteGroupoid {
    /// Validates the groupoid axioms and returns the groupoid.
    pub fn new(product: Vec<Vec<Option<usize>>>, inv: Vec<usize>) -> Result<Self> {
        let report = validate_groupoid(&product, &inv)?;
        if let Some(bad) = report.failures().next() {
            return Err(Error::Laws(format!("{} [{}]", bad.name, bad.witness.clone().unwrap_or_default())));
        }
        Ok(FiniteGroupoid { product, inv })
    }

    pub fn from_tables_unchecked(product: Vec<Vec<Option<usize>>>, inv: Vec<usize>) -> Self {
        FiniteGroupoid { product, inv }
    }

    /// The pair groupoid on `n` points: arrow `(i, j)` has id `i·n + j`,
    /// range `i` and source `j`, and `(i, j)(j, k) = (i, k)`.
    pub fn pair(n: usize) -> Self {
        let id = |i: usize, j: usize| i * n + j;
        let m = n * n;
        let mut product = vec![vec![None; m]; m];
        let mut inv = vec![0; m];
        for i in 0..n {
            for j in 0..n {
                inv[id(i, j)] = id(j, i);
                for k in 0..n {
                    product[id(i, j)][id(j, k)] = Some(id(i, k));
                }
            }
        }
        FiniteGroupoid { product, inv }
    }

    /// One unit per group; arrows of each group are consecutive ids.
    pub fn group_bundle(groups: &[StarSemigroup]) -> Result<Self> {
        let parts = groups.iter().map(Self::from_group).collect::<Result<Vec<_>>>()?;
        Ok(Self::disjoint_union(&parts))
    }

    fn from_group(g: &StarSemigroup) -> Result<Self> {
        let n = g.n();
        let product: Vec<Vec<Option<usize>>> = (0..n).map(|a| (0..n).map(|b| Some(g.mul(a, b))).collect()).collect();
        Self::new(product, g.star_table()).map_err(|e| Error::Invalid(format!("not a group with inverse as star: {e}")))
    }

    /// Arrows of the parts in order, with products only inside each part.
    pub fn disjoint_union(parts: &[FiniteGroupoid]) -> Self {
        let n: usize = parts.iter().map(|p| p.n()).sum();
        let mut product = vec![vec![None; n]; n];
        let mut inv = vec![0; n];
        let mut off = 0;
        for p in parts {
            for a in 0..p.n() {
                inv[off + a] = off + p.inv[a];
                for b in 0..p.n() {
                    product[off + a][off + b] = p.product[a][b].map(|c| off + c);
                }
            }
            off += p.n();
        }
        FiniteGroupoid { product, inv }
    }

    pub fn n(&self) -> usize {
        self.inv.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> Option<usize> {
        self.product[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    pub fn product_table(&self) -> &[Vec<Option<usize>>] {
        &self.product
    }

    pub fn inv_table(&self) -> &[usize] {
        &self.inv
    }

    /// `s(a) = a*a`.
    pub fn source(&self, a: usize) -> usize {
        self.product[self.inv[a]][a].expect("a*a is defined in a groupoid")
    }

    /// `r(a) = aa*`.
    pub fn range(&self, a: usize) -> usize {
        self.product[a][self.inv[a]].expect("aa* is defined in a groupoid")
    }

    pub fn is_unit(&self, a: usize) -> bool {
        self.source(a) == a
    }

    pub fn units(&self) -> ElementSet {
        ElementSet::from_ids(self.n(), (0..self.n()).filter(|&a| self.is_unit(a)))
    }

    /// Unit ids in ascending order; the index of a unit in this list is its
    /// unit index.
    pub fn unit_list(&self) -> Vec<usize> {
        self.units().to_vec()
    }

    /// `O` is a bisection iff `OO* ∪ O*O` consists of units.
    pub fn is_bisection(&self, o: &ElementSet) -> bool {
        o.iter().all(|a| {
            o.iter().all(|b| {
                let ab = self.mul(a, self.inv(b)).map_or(true, |c| self.is_unit(c));
                let ba = self.mul(self.inv(a), b).map_or(true, |c| self.is_unit(c));
                ab && ba
            })
        })
    }

    /// Pointwise product of arrow sets.
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

    pub fn set_inv(&self, a: &ElementSet) -> ElementSet {
        a.map(self.n(), |x| self.inv(x))
    }
}

/// Checks the groupoid axioms on raw tables. Structural problems (ragged
/// tables, ids out of range) are errors; law violations land in the report.
pub fn validate_groupoid(product: &[Vec<Option<usize>>], inv: &[usize]) -> Result<Report> {
    let n = inv.len();
    if product.len() != n || product.iter().any(|r| r.len() != n) {
        return Err(Error::Structure("groupoid product table must be n×n".into()));
    }
    if inv.iter().any(|&a| a >= n) || product.iter().flatten().flatten().any(|&c| c >= n) {
        return Err(Error::Structure("groupoid arrow id out of range".into()));
    }
    let mut report = Report::new();
    let mul = |a: usize, b: usize| product[a][b];
    let n64 = n as u64;
    let w = first_witness(0..n, |a| (inv[inv[a]] != a).then(|| format!("a={a}")));
    report.check("involution", n64, w);
    let w = first_witness(0..n, |a| {
        let ok = mul(a, inv[a]).is_some() && mul(inv[a], a).is_some();
        (!ok).then(|| format!("a={a}"))
    });
    report.check("unitary_products_defined", n64, w);
    if report.passed() {
        let src = |a: usize| mul(inv[a], a).unwrap();
        let rng = |a: usize| mul(a, inv[a]).unwrap();
        let w = first_witness(0..n, |a| (mul(a, src(a)) != Some(a) || mul(rng(a), a) != Some(a)).then(|| format!("a={a}")));
        report.check("unit_laws", n64, w);
        let w = first_witness(0..n * n, |i| {
            let (a, b) = (i / n, i % n);
            (mul(a, b).is_some() != (src(a) == rng(b))).then(|| format!("a={a} b={b}"))
        });
        report.check("composable_iff_source_is_range", n64 * n64, w);
        let w = first_witness(0..n * n, |i| {
            let (a, b) = (i / n, i % n);
            let ok = match mul(a, b) {
                Some(c) => mul(inv[b], inv[a]) == Some(inv[c]),
                None => mul(inv[b], inv[a]).is_none(),
            };
            (!ok).then(|| format!("a={a} b={b}"))
        });
        report.check("antihomomorphism", n64 * n64, w);
        let w = first_witness(0..n * n * n, |i| {
            let (a, b, c) = (i / (n * n), (i / n) % n, i % n);
            let left = mul(a, b).and_then(|ab| mul(ab, c));
            let right = mul(b, c).and_then(|bc| mul(a, bc));
            let defined = mul(a, b).is_some() && mul(b, c).is_some();
            (defined && left != right).then(|| format!("a={a} b={b} c={c}"))
        });
        report.check("associativity", n64 * n64 * n64, w);
        // Units are self-adjoint and act as identities where defined.
        let units: Vec<usize> = (0..n).filter(|&a| src(a) == a).collect();
        let w = first_witness(units.iter().copied(), |u| {
            let bad_star = inv[u] != u;
            let bad_act = (0..n).any(|a| mul(a, u).is_some_and(|c| c != a) || mul(u, a).is_some_and(|c| c != a));
            (bad_star || bad_act).then(|| format!("u={u}"))
        });
        report.check("units_are_identities", units.len() as u64, w);
    }
    Ok(report)
}

/// An isomorphism `f: G → H` maps arrows bijectively, preserves products and
/// their definedness, and the involution.
pub fn is_isomorphism(g: &FiniteGroupoid, h: &FiniteGroupoid, f: &[usize]) -> bool {
    let n = g.n();
    if h.n() != n || f.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &x in f {
        if x >= n || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    (0..n).all(|a| {
        f[g.inv(a)] == h.inv(f[a]) && (0..n).all(|b| g.mul(a, b).map(|c| f[c]) == h.mul(f[a], f[b]))
    })
}

/// Backtracking search for an isomorphism. Units are mapped first; each
/// arrow's image must connect the images of its source and range. When
/// `constraint` is given, only maps with `constraint(a, f(a))` are considered
/// (used to demand homeomorphisms alongside).
pub fn find_isomorphism(
    g: &FiniteGroupoid,
    h: &FiniteGroupoid,
    constraint: Option<&dyn Fn(usize, usize) -> bool>,
) -> Option<Vec<usize>> {
    let n = g.n();
    if h.n() != n || g.units().len() != h.units().len() {
        return None;
    }
    let mut order: Vec<usize> = g.unit_list();
    order.extend((0..n).filter(|&a| !g.is_unit(a)));
    let mut f = vec![usize::MAX; n];
    let mut used = vec![false; n];
    fn go(
        g: &FiniteGroupoid,
        h: &FiniteGroupoid,
        order: &[usize],
        k: usize,
        f: &mut Vec<usize>,
        used: &mut Vec<bool>,
        constraint: Option<&dyn Fn(usize, usize) -> bool>,
    ) -> bool {
        if k == order.len() {
            return is_isomorphism(g, h, f);
        }
        let a = order[k];
        for x in 0..h.n() {
            if used[x] || g.is_unit(a) != h.is_unit(x) {
                continue;
            }
            if !g.is_unit(a) && (h.source(x) != f[g.source(a)] || h.range(x) != f[g.range(a)]) {
                continue;
            }
            if constraint.is_some_and(|c| !c(a, x)) {
                continue;
            }
            // Products with already-mapped arrows must agree.
            let consistent = order[..k].iter().all(|&b| {
                let ok1 = g.mul(a, b).map_or(true, |c| f[c] == usize::MAX || h.mul(x, f[b]) == Some(f[c]));
                let ok2 = g.mul(b, a).map_or(true, |c| f[c] == usize::MAX || h.mul(f[b], x) == Some(f[c]));
                ok1 && ok2
            });
            if !consistent {
                continue;
            }
            f[a] = x;
            used[x] = true;
            if go(g, h, order, k + 1, f, used, constraint) {
                return true;
            }
            f[a] = usize::MAX;
            used[x] = false;
        }
        false
    }
    go(g, h, &order, 0, &mut f, &mut used, constraint).then_some(f)
}
