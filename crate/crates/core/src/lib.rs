//! Weyl groupoids of finite Weyl `*`-semigroups, and exact norm and order
//! computations in rational matrix `*`-rings.
//!
//! The guide in `book/` walks through the construction; its code blocks are
//! compiled as doctests of this crate.

pub mod error;
pub mod relations;
pub mod report;
pub mod ring;
pub mod semigroup;
pub mod set;
pub mod groupoid;
pub mod models;
pub mod cosets;
pub mod topology;
pub mod bundle;
pub mod io;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/semigroups.md")]
    mod semigroups {}
    #[doc = include_str!("../../../book/src/relations.md")]
    mod relations {}
    #[doc = include_str!("../../../book/src/cosets.md")]
    mod cosets {}
    #[doc = include_str!("../../../book/src/groupoid.md")]
    mod groupoid {}
    #[doc = include_str!("../../../book/src/star-rings.md")]
    mod star_rings {}
    #[doc = include_str!("../../../book/src/models.md")]
    mod models {}
    #[doc = include_str!("../../../book/src/bundles.md")]
    mod bundles {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
