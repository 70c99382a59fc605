//! Interior polynomials of bipartite graphs.
//!
//! The interior polynomial `I_G(x)` of a bipartite graph `G` is the
//! numerator of the Ehrhart series of its root polytope:
//! `I_G(x) / (1-x)^{|V|+|W|-1} = 1 + Σ_{s>=1} ε(s) x^s`, where `ε(s)`
//! counts the integer points of the `s`-fold dilation. This crate computes
//! it by three mutually independent algorithms and cross-validates them:
//!
//! * [`ehrhart::interior_via_ehrhart`]: lattice-point enumeration of the
//!   dilated root polytope (the geometric ground truth);
//! * [`recursion::interior_nonexpanding`]: vertex-deletion recursion over
//!   non-expanding sets;
//! * [`recursion::interior_altcycle`]: edge-deletion recursion over
//!   alternating cycles;
//!
//! plus [`closed_form::interior_complete`], the closed form for complete
//! bipartite graphs.
//!
//! ```
//! use ipoly::{closed_form, ehrhart, recursion, BipartiteGraph};
//!
//! let g = BipartiteGraph::complete(2, 3).unwrap();
//! let i = ehrhart::interior_via_ehrhart(&g).unwrap();
//! assert_eq!(i.to_string(), "1 + 2x");
//! assert_eq!(recursion::interior_nonexpanding(&g).unwrap(), i);
//! assert_eq!(recursion::interior_altcycle(&g).unwrap(), i);
//! assert_eq!(closed_form::interior_complete(2, 3).unwrap(), i);
//! ```
//!
//! With the default `parallel` feature, dilation expansion and the subset
//! sums run on rayon; disabling the feature (or setting the `parallel`
//! flag in the option structs to `false`) gives a sequential fallback with
//! bit-identical results.

pub mod closed_form;
pub mod ehrhart;
pub mod error;
pub mod graph;
pub mod matching;
pub mod poly;
pub mod recursion;

pub use error::{Error, Result};
pub use graph::{BipartiteGraph, Labels, Side, Subgraph, VertexSet};
pub use poly::IntPolynomial;

pub use num_bigint;
pub use num_bigint::BigInt;
