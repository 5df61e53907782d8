//! Total graphs of finite commutative rings.
//!
//! The total graph of a commutative ring `R` has vertex set `R`, with two
//! distinct elements adjacent exactly when their sum is a zero-divisor.
//! This crate builds finite commutative rings from spec strings, realizes
//! their total graphs and the induced subgraphs on zero-divisors and
//! regular elements, constructs optimal proper colorings from Latin-sum
//! arrays, and certifies chromatic and clique numbers with independent
//! exact solvers.
//!
//! ```
//! use totgraph::ring::ring_from_spec;
//! use totgraph::graph::total_graph;
//! use totgraph::coloring::{color_total, max_ideal_clique};
//! use totgraph::solver::{certify, Budget, CliqueWitness};
//!
//! let ring = ring_from_spec("Z6").unwrap();
//! let graph = total_graph(&ring).unwrap();
//! let coloring = color_total(&ring, &graph, &Budget::default());
//! let clique = CliqueWitness { vertices: max_ideal_clique(&ring) };
//! let cert = certify(&graph, coloring, clique).unwrap();
//! assert_eq!(cert.k, Some(3)); // chi = omega = 3, the largest maximal ideal
//! ```
//!
//! The accompanying guide in `book/` walks through the underlying theory;
//! its code snippets compile and run as doctests of this crate.

// vertex and element ids double as indices throughout; looping over them
// by number is the clearer idiom here
#![allow(clippy::needless_range_loop)]

pub mod catalog;
pub mod coloring;
pub mod graph;
pub mod latin;
pub mod ring;
pub mod solver;
pub mod verify;

pub use coloring::{color_reg, color_reg_odd, color_total, verify_coloring, Coloring};
pub use graph::{blow_up, reg_subgraph, total_graph, zdiv_subgraph, Graph};
pub use latin::{build_latin_sum, build_latin_sum_reg, is_latin_sum, LatinSumArray};
pub use ring::{build_ring, parse_ring_spec, ring_from_spec, FiniteRing, RingDescriptor};
pub use solver::{certify, chromatic_number, clique_number, Budget, ChromaticCertificate};

// The book chapters double as doctests so the guide cannot drift from the
// API. Each hidden module pulls one chapter in.
#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/rings.md")]
    mod rings {}
    #[doc = include_str!("../../../book/src/total-graphs.md")]
    mod total_graphs {}
    #[doc = include_str!("../../../book/src/latin-sum-arrays.md")]
    mod latin_sum_arrays {}
    #[doc = include_str!("../../../book/src/colorings.md")]
    mod colorings {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/verification.md")]
    mod verification {}
}
