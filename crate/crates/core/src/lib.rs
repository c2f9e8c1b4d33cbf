//! Exact graph polynomials for graphs of bounded clique-width.
//!
//! For a graph `G` and a vertex subset `S ⊆ V(G)`, every edge of `G` falls
//! into one of three classes: inside `S`, crossing between `S` and its
//! complement, or inside the complement. Summing the monomial
//!
//! ```text
//! X1^|S| · X2^|V\S| · Y11^(edges inside S) · Y12^(crossing edges) · Y22^(edges outside S)
//! ```
//!
//! over all subsets `S` satisfying a fixed predicate yields a five-variable
//! polynomial that specializes to the Ising partition polynomial, the
//! independence polynomial, the domination polynomial, and several of their
//! bivariate refinements. Enumerating subsets directly costs `2^n`; this
//! crate instead computes the polynomial by dynamic programming over a
//! clique-width `k`-expression of the graph, in time polynomial in `n` for
//! fixed `k`.
//!
//! The crate is organized around that pipeline:
//!
//! * [`graph`] — labeled simple graphs and the subset predicates,
//! * [`cwexpr`] — the `k`-expression term language: parser, evaluator,
//!   validator, and bounded-width builders for standard graph families,
//! * [`polynomial`] — sparse multivariate polynomials with big-integer
//!   coefficients,
//! * [`automata`] — finite-state trackers deciding the subset predicate
//!   compositionally along the expression,
//! * [`engine`] — the dynamic program itself, in a paper-trail `Reference`
//!   variant and an optimized `Aggregated` variant, plus the named
//!   specializations,
//! * [`oracle`] — the brute-force subset enumeration used as ground truth,
//! * [`bench`] — small timing helpers for the CLI `bench` command.
//!
//! The `cwising` binary exposes the whole pipeline as CLI subcommands; see
//! the crate README for the file formats and command reference.

pub mod automata;
pub mod bench;
pub mod cwexpr;
pub mod engine;
pub mod graph;
pub mod oracle;
pub mod polynomial;

pub use cwexpr::{CwTerm, ValidationReport};
pub use engine::{Preset, Theta, Variant};
pub use graph::{KGraph, VertexSubset};
pub use polynomial::Poly;
