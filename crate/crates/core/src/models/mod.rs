//! Desk-scale instances: group pairs, symmetric inverse monoids, signed
//! bisection semigroups of finite groupoids, small commutative examples, and
//! certified matrix embeddings.

mod bisection;
mod embedded;
mod inverse;

pub use bisection::{bisection_pair, bisection_sign_semigroup, BisectionModel, SignedBisection};
pub use embedded::{EmbeddedModel, ModelFlags};
pub use inverse::{inverse_monoid_embedding, partial_bijections, symmetric_inverse_monoid, symmetric_inverse_monoid_with_limit, PartialBijection, INVERSE_MONOID_LIMIT};

use crate::error::{Error, Result};
use crate::groupoid::FiniteGroupoid;
use crate::ring::matrix::RMatrix;
use crate::ring::norm::RingBackend;
use crate::ring::rational::qi;
use crate::ring::lattice::LatticeSubring;
use crate::semigroup::{derived_subset, DerivedKind, Id, StarSemigroup, WeylPair};
use crate::set::ElementSet;

/// `Z/n` under addition with `a* = −a`.
pub fn cyclic_group(n: usize) -> StarSemigroup {
    StarSemigroup::from_fn(n, |a, b| (a + b) % n, |a| (n - a) % n, None).expect("cyclic group tables")
}

/// Permutations of `{0,1,2}` in lexicographic order of their images, with
/// composition `(ab)(x) = a(b(x))` and inverse as involution.
pub fn symmetric_group3() -> StarSemigroup {
    let perms = s3_perms();
    let id = |p: [usize; 3]| perms.iter().position(|q| *q == p).unwrap();
    StarSemigroup::from_fn(
        6,
        |a, b| {
            let (p, q) = (perms[a], perms[b]);
            id([p[q[0]], p[q[1]], p[q[2]]])
        },
        |a| {
            let p = perms[a];
            let mut inv = [0; 3];
            for (i, &x) in p.iter().enumerate() {
                inv[x] = i;
            }
            id(inv)
        },
        None,
    )
    .expect("symmetric group tables")
}

fn s3_perms() -> [[usize; 3]; 6] {
    [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]]
}

/// The transposition swapping 1 and 2 in [`symmetric_group3`].
pub const S3_TRANSPOSITION_12: Id = 1;

/// The subgroup generated by squares; for `S_3` this is `A_3`.
pub fn alternating_subgroup(g: &StarSemigroup) -> ElementSet {
    let squares = ElementSet::from_ids(g.n(), g.elements().map(|a| g.mul(a, a)));
    let mut out = squares.clone();
    loop {
        let next = out.union(&g.set_mul(&out, &out));
        if next == out {
            return out;
        }
        out = next;
    }
}

/// The identity of a group table, if any.
fn group_identity(g: &StarSemigroup) -> Option<Id> {
    g.elements().find(|&e| g.elements().all(|a| g.mul(e, a) == a && g.mul(a, e) == a))
}

/// `(G, N)` for a group `G` with `a* = a⁻¹` and a normal subgroup `N`.
pub fn group_pair(g: StarSemigroup, n: ElementSet) -> Result<WeylPair> {
    let e = group_identity(&g).ok_or_else(|| Error::Invalid("group table has no identity".into()))?;
    if let Some(a) = g.elements().find(|&a| g.mul(g.star(a), a) != e) {
        return Err(Error::Invalid(format!("star is not inversion at {a}")));
    }
    if !n.contains(e) || !g.set_mul(&n, &n).is_subset(&n) || !g.set_star(&n).is_subset(&n) {
        return Err(Error::Invalid("N is not a subgroup".into()));
    }
    for a in g.elements() {
        for x in &n {
            if !n.contains(g.mul(g.mul(a, x), g.star(a))) {
                return Err(Error::NotWeylPair(format!("N is not normal: a={a} x={x}")));
            }
        }
    }
    WeylPair::new(g, n)
}

pub fn s3_a3() -> WeylPair {
    let g = symmetric_group3();
    let a3 = alternating_subgroup(&g);
    group_pair(g, a3).expect("A_3 is normal in S_3")
}

pub fn z4_02() -> WeylPair {
    group_pair(cyclic_group(4), ElementSet::from_ids(4, [0, 2])).expect("{0,2} is normal in Z/4")
}

/// `{0, 1, 2}` under multiplication mod 3, `a* = a`, `E = {0, 1}`, zero `0`.
pub fn z3_multiplicative() -> WeylPair {
    let s = StarSemigroup::from_fn(3, |a, b| (a * b) % 3, |a| a, Some(0)).expect("Z/3 multiplicative tables");
    WeylPair::new(s, ElementSet::from_ids(3, [0, 1])).expect("squares lie in {0,1}")
}

/// `{−1, 0, 1}²` with pointwise product and `a* = a`. Element `(x, y)` has id
/// `3·(x+1) + (y+1)`.
pub fn signed_square_semigroup() -> StarSemigroup {
    let dec = |a: usize| ((a / 3) as i64 - 1, (a % 3) as i64 - 1);
    let enc = |x: i64, y: i64| (3 * (x + 1) + (y + 1)) as usize;
    StarSemigroup::from_fn(
        9,
        |a, b| {
            let ((x1, y1), (x2, y2)) = (dec(a), dec(b));
            enc(x1 * x2, y1 * y2)
        },
        |a| a,
        Some(enc(0, 0)),
    )
    .expect("pointwise product tables")
}

/// The diagonal `E = {(α, α)}` of [`signed_square_semigroup`].
pub fn signed_square_diagonal() -> ElementSet {
    ElementSet::from_ids(9, [0, 4, 8])
}

/// `(E_*, E)` for `A = {−1,0,1}²` and `E` the diagonal, restricted to the
/// subsemigroup `E_*` and relabelled `0..|E_*|`.
pub fn sign_pairs() -> WeylPair {
    let a = signed_square_semigroup();
    let e = signed_square_diagonal();
    let estar = derived_subset(&a, &e, DerivedKind::StarNormalisers);
    let (sub, map) = restrict(&a, &estar);
    let e_sub = ElementSet::from_ids(sub.n(), e.iter().map(|x| map[x].unwrap()));
    WeylPair::new(sub, e_sub).expect("(E_*, E) is a Weyl pair when E contains a unit")
}

/// The subsemigroup on `t` (assumed closed), with the id map `old → new`.
pub fn restrict(s: &StarSemigroup, t: &ElementSet) -> (StarSemigroup, Vec<Option<Id>>) {
    let ids = t.to_vec();
    let mut map = vec![None; s.n()];
    for (i, &x) in ids.iter().enumerate() {
        map[x] = Some(i);
    }
    let k = ids.len();
    let mult = (0..k).map(|i| (0..k).map(|j| map[s.mul(ids[i], ids[j])].expect("closed subset")).collect()).collect();
    let star = (0..k).map(|i| map[s.star(ids[i])].expect("closed subset")).collect();
    let zero = s.zero().and_then(|z| map[z]);
    (StarSemigroup::from_tables_unchecked(mult, star, zero), map)
}

/// Functions `f ∈ {0,1}³` with `f₀ = f₁` under pointwise product,
/// `f* = f`, `E = S`. Element id is the bit pattern compressed to
/// `(f₀, f₂)`: id `2·f₀ + f₂`. Zero is the constant `0`.
pub fn tail_blocks() -> WeylPair {
    let s = StarSemigroup::from_fn(4, |a, b| a & b, |a| a, Some(0)).expect("pointwise product of bit patterns");
    WeylPair::new(s, ElementSet::full(4)).expect("commutative idempotent semigroup")
}

/// Every small bundled pair, named. Sizes stay below the exhaustive-suite
/// caps.
pub fn bundled_pairs() -> Vec<(String, WeylPair)> {
    let z2 = || cyclic_group(2);
    vec![
        ("z2_trivial".into(), group_pair(z2(), ElementSet::from_ids(2, [0])).unwrap()),
        ("z2_full".into(), group_pair(z2(), ElementSet::full(2)).unwrap()),
        ("z4_02".into(), z4_02()),
        ("s3_a3".into(), s3_a3()),
        ("s3_full".into(), group_pair(symmetric_group3(), ElementSet::full(6)).unwrap()),
        ("z3_mult".into(), z3_multiplicative()),
        ("sign_pairs".into(), sign_pairs()),
        ("tail_blocks".into(), tail_blocks()),
        ("i1".into(), symmetric_inverse_monoid(1).unwrap()),
        ("i2".into(), symmetric_inverse_monoid(2).unwrap()),
        ("i3".into(), symmetric_inverse_monoid(3).unwrap()),
        ("bisection_z2".into(), bisection_sign_semigroup(&FiniteGroupoid::group_bundle(&[z2()]).unwrap()).unwrap().pair),
        ("bisection_pair2".into(), bisection_pair(2).pair),
    ]
}

/// Names accepted by [`named_pair`].
pub const MODEL_NAMES: &[&str] = &[
    "z2_trivial",
    "z2_full",
    "z4_02",
    "s3_a3",
    "s3_full",
    "z3_mult",
    "sign_pairs",
    "tail_blocks",
    "i1",
    "i2",
    "i3",
    "i4",
    "bisection_z2",
    "bisection_pair2",
    "bisection_pair3",
];

/// A pair by name; `cyclic:<n>`, `inverse:<n>` and `pair:<n>` take a size.
pub fn named_pair(name: &str) -> Result<WeylPair> {
    if let Some((kind, arg)) = name.split_once(':') {
        let n: usize = arg.parse().map_err(|_| Error::Parse(format!("bad size in {name:?}")))?;
        return match kind {
            "cyclic" if n >= 1 => group_pair(cyclic_group(n), ElementSet::from_ids(n, [0])),
            "inverse" => symmetric_inverse_monoid(n),
            "pair" if (1..=4).contains(&n) => Ok(bisection_pair(n).pair),
            _ => Err(Error::Invalid(format!("unknown model {name:?}"))),
        };
    }
    match name {
        "i4" => symmetric_inverse_monoid(4),
        "bisection_pair3" => Ok(bisection_pair(3).pair),
        _ => bundled_pairs()
            .into_iter()
            .find(|(n, _)| n == name)
            .map(|(_, p)| p)
            .ok_or_else(|| Error::Invalid(format!("unknown model {name:?}; known: {}", MODEL_NAMES.join(", ")))),
    }
}

/// The certified embedding registered for a model name: the bisection
/// models of pair groupoids, the inverse monoids, and the regular embedding
/// of group pairs.
pub fn named_embedding(name: &str) -> Result<EmbeddedModel> {
    let size = |prefix: &str, arg: &str| -> Result<usize> {
        arg.parse().map_err(|_| Error::Parse(format!("bad size in {prefix}{arg:?}")))
    };
    let pair_size = match name {
        "bisection_pair2" => Some(2),
        "bisection_pair3" => Some(3),
        _ => match name.strip_prefix("pair:") {
            Some(arg) => Some(size("pair:", arg)?),
            None => None,
        },
    };
    if let Some(n) = pair_size {
        if !(1..=4).contains(&n) {
            return Err(Error::Invalid(format!("pair groupoid size {n} outside 1..=4")));
        }
        return bisection_pair(n).embedding.ok_or_else(|| Error::NotCertified(format!("{name} has no embedding")));
    }
    let inverse_size = match name {
        "i1" | "i2" | "i3" | "i4" => Some(size("i", &name[1..])?),
        _ => match name.strip_prefix("inverse:") {
            Some(arg) => Some(size("inverse:", arg)?),
            None => None,
        },
    };
    if let Some(n) = inverse_size {
        return inverse_monoid_embedding(n);
    }
    regular_embedding(&named_pair(name)?)
}

/// Group pairs embedded by their regular representation as permutation
/// matrices. The embedding lies in the unit ball but `L` is not hereditary.
pub fn regular_embedding(pair: &WeylPair) -> Result<EmbeddedModel> {
    let s = pair.s();
    let n = s.n();
    if !group_identity(s).is_some_and(|e| s.elements().all(|a| s.mul(s.star(a), a) == e)) {
        return Err(Error::Invalid("regular embedding needs a group with inverse as star".into()));
    }
    let images = s
        .elements()
        .map(|g| {
            let mut m = RMatrix::zeros(n);
            for x in 0..n {
                m.set(s.mul(g, x), x, qi(1));
            }
            m
        })
        .collect();
    EmbeddedModel::certify(pair.clone(), RingBackend::RationalMatrices(n), images, LatticeSubring::DiagonalInteger)
}
