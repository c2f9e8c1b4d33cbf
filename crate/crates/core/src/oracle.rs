//! Brute-force ground truth: enumerates every vertex subset and sums the
//! five-variable profile monomials directly.
//!
//! This is the trusted baseline the engines are checked against, so it
//! stays as plain as possible: one bitmask loop, one pass over the edge
//! list per subset, no sharing with the engine's table code beyond the
//! [`Poly`] output type. The loop is embarrassingly parallel over subset
//! ranges (partial polynomials merge associatively), but at the size bound
//! a sequential pass is already instant.

use num_bigint::BigInt;
use num_traits::One;
use thiserror::Error;

use crate::engine::{Theta, CANONICAL_VARS};
use crate::graph::{GraphError, KGraph, VertexSubset};
use crate::polynomial::Poly;

pub const DEFAULT_MAX_N: usize = 20;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("graph has {n} vertices, oracle bound is {bound}")]
    TooLarge { n: usize, bound: usize },
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
}

/// Output of [`brute_force`]: the five-variable polynomial and the number
/// of subsets that satisfied the predicate (always its coefficient sum).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OracleResult {
    pub poly: Poly,
    pub satisfying_count: BigInt,
}

/// Sums `X1^|S| X2^|V\S| Y11^e11 Y12^e12 Y22^e22` over every subset `S`
/// passing the predicate, where `(e11, e12, e22)` splits the edges into
/// inside / crossing / outside.
pub fn brute_force(g: &KGraph, theta: Theta, max_n: usize) -> Result<OracleResult, OracleError> {
    let n = g.n();
    if n > max_n {
        return Err(OracleError::TooLarge { n, bound: max_n });
    }
    let mut poly = Poly::zero(&CANONICAL_VARS);
    let mut satisfying = BigInt::ZERO;
    for mask in 0u64..(1u64 << n) {
        let s = VertexSubset::from_index_mask(g, mask)?;
        let keep = match theta {
            Theta::True => true,
            Theta::Independent => g.is_independent(&s),
            Theta::Dominating => g.is_dominating(&s),
        };
        if !keep {
            continue;
        }
        let (e11, e12, e22) = g.partition_edge_counts(&s);
        let size = s.len() as u64;
        poly.add_term(vec![size, n as u64 - size, e11, e12, e22], BigInt::one());
        satisfying += 1;
    }
    Ok(OracleResult {
        poly,
        satisfying_count: satisfying,
    })
}
