//! The aggregated table: cells keyed by (state, occupancy vector), values
//! are polynomials over the three edge variables.
//!
//! Correctness of the edge-creation step leans on irredundancy: when no
//! edge between the two classes exists yet, a cell with occupancy `d̄`
//! against class sizes `r̄` gains exactly
//!
//! ```text
//! Δ11 = d_p·d_q          new edges inside the subset
//! Δ12 = d_p·(r_q−d_q) + d_q·(r_p−d_p)   new crossing edges
//! Δ22 = (r_p−d_p)·(r_q−d_q)             new edges outside
//! ```
//!
//! for every subset it aggregates, so the whole cell is multiplied by one
//! monomial.

use std::collections::BTreeMap;

use num_bigint::BigInt;

use crate::automata::{FormulaAutomaton, OccupancySignature};
use crate::graph::Label;
use crate::polynomial::Poly;

use super::{DpTable, CANONICAL_VARS, EDGE_VARS};

/// Dynamic-programming table of the aggregated engine.
#[derive(Debug, Clone)]
pub struct AggTable<S> {
    k: usize,
    sizes: Vec<u64>,
    cells: BTreeMap<(S, Vec<u64>), Poly>,
}

impl<S: Clone + Ord + std::fmt::Debug> AggTable<S> {
    /// Table of a single vertex with the given label: one cell for the
    /// subset that skips it, one for the subset that takes it.
    pub fn singleton<A>(k: usize, label: Label, automaton: &A) -> Self
    where
        A: FormulaAutomaton<State = S>,
    {
        assert!(label as usize <= k, "label exceeds declared width");
        let mut sizes = vec![0u64; k];
        sizes[(label - 1) as usize] = 1;
        let mut table = AggTable {
            k,
            sizes,
            cells: BTreeMap::new(),
        };
        let excluded = vec![0u64; k];
        let mut included = vec![0u64; k];
        included[(label - 1) as usize] = 1;
        table.accumulate(
            automaton,
            automaton.init(label, false),
            excluded,
            Poly::one(&EDGE_VARS),
        );
        table.accumulate(
            automaton,
            automaton.init(label, true),
            included,
            Poly::one(&EDGE_VARS),
        );
        table
    }

    /// Disjoint union: class sizes add, occupancy vectors add, states join,
    /// cell polynomials multiply (edge sets of the parts are disjoint), and
    /// colliding output cells accumulate.
    pub fn union<A>(a: Self, b: Self, automaton: &A) -> Self
    where
        A: FormulaAutomaton<State = S>,
    {
        assert_eq!(a.k, b.k, "tables must share the label arity");
        let k = a.k;
        let sizes = a.sizes.iter().zip(&b.sizes).map(|(x, y)| x + y).collect();
        let mut out = AggTable {
            k,
            sizes,
            cells: BTreeMap::new(),
        };
        for ((sa, da), pa) in &a.cells {
            for ((sb, db), pb) in &b.cells {
                let state = automaton.join(sa, sb);
                let d: Vec<u64> = da.iter().zip(db).map(|(x, y)| x + y).collect();
                let value = pa.mul(pb).expect("edge variables always match");
                out.accumulate(automaton, state, d, value);
            }
        }
        out
    }

    /// Relabeling `p -> q`: class sizes and occupancies fold from `p` into
    /// `q`; cell polynomials pass through unchanged (no edge moves).
    pub fn recolor<A>(self, p: Label, q: Label, automaton: &A) -> Self
    where
        A: FormulaAutomaton<State = S>,
    {
        assert_ne!(p, q);
        let (pi, qi) = ((p - 1) as usize, (q - 1) as usize);
        let mut sizes = self.sizes.clone();
        sizes[qi] += sizes[pi];
        sizes[pi] = 0;
        let mut out = AggTable {
            k: self.k,
            sizes,
            cells: BTreeMap::new(),
        };
        for ((state, d), value) in self.cells {
            let mut nd = d;
            nd[qi] += nd[pi];
            nd[pi] = 0;
            let state = automaton.recolor(&state, p, q);
            out.accumulate(automaton, state, nd, value);
        }
        out
    }

    /// Edge creation between classes `p` and `q`; requires that the term is
    /// irredundant at this site (enforced upstream by validation).
    pub fn edge_add<A>(self, p: Label, q: Label, automaton: &A) -> Self
    where
        A: FormulaAutomaton<State = S>,
    {
        assert_ne!(p, q);
        let (pi, qi) = ((p - 1) as usize, (q - 1) as usize);
        let (rp, rq) = (self.sizes[pi], self.sizes[qi]);
        let mut out = AggTable {
            k: self.k,
            sizes: self.sizes.clone(),
            cells: BTreeMap::new(),
        };
        for ((state, d), value) in self.cells {
            let (dp, dq) = (d[pi], d[qi]);
            let delta = [
                dp * dq,
                dp * (rq - dq) + dq * (rp - dp),
                (rp - dp) * (rq - dq),
            ];
            let sig = OccupancySignature::new(&d, &self.sizes);
            let state = automaton.edge_add(&state, p, q, &sig);
            let value = value
                .mono_mul(&delta, &BigInt::from(1))
                .expect("delta arity is fixed");
            out.accumulate(automaton, state, d, value);
        }
        out
    }

    fn accumulate<A>(&mut self, automaton: &A, state: S, d: Vec<u64>, value: Poly)
    where
        A: FormulaAutomaton<State = S>,
    {
        if automaton.is_dead(&state) || value.is_zero() {
            return;
        }
        debug_assert!(
            d.iter().zip(&self.sizes).all(|(dc, rc)| dc <= rc),
            "occupancy exceeds class size"
        );
        match self.cells.entry((state, d)) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(value);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let merged = o.get().add(&value).expect("edge variables always match");
                if merged.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = merged;
                }
            }
        }
    }

    /// Root step: keep accepted states and expand each cell into
    /// five-variable monomials, `X1^Σd · X2^(n−Σd)` against the cell's edge
    /// exponents.
    pub fn extract<A>(&self, automaton: &A) -> Poly
    where
        A: FormulaAutomaton<State = S>,
    {
        let n: u64 = self.sizes.iter().sum();
        let mut poly = Poly::zero(&CANONICAL_VARS);
        for ((state, d), value) in &self.cells {
            if !automaton.accept(state) {
                continue;
            }
            let inside: u64 = d.iter().sum();
            for (exp, coeff) in value.terms() {
                poly.add_term(
                    vec![inside, n - inside, exp[0], exp[1], exp[2]],
                    coeff.clone(),
                );
            }
        }
        poly
    }

    pub fn cell_count(&self) -> usize {
        self.cells.len()
    }

    pub fn class_sizes(&self) -> &[u64] {
        &self.sizes
    }

    pub fn max_coeff_bits(&self) -> u64 {
        self.cells
            .values()
            .map(|p| p.max_coeff_bits())
            .max()
            .unwrap_or(0)
    }

    /// Cells in deterministic order, for tests and diagnostics.
    pub fn cells(&self) -> impl Iterator<Item = (&(S, Vec<u64>), &Poly)> {
        self.cells.iter()
    }

    /// Sum of every cell's coefficient total; `2^(vertices so far)` under
    /// the unconstrained automaton.
    pub fn total_mass(&self) -> BigInt {
        self.cells.values().map(|p| p.sum_of_coeffs()).sum()
    }
}

impl<S, A> DpTable<A> for AggTable<S>
where
    S: Clone + Ord + std::fmt::Debug,
    A: FormulaAutomaton<State = S>,
{
    fn singleton(k: usize, label: Label, automaton: &A) -> Self {
        AggTable::singleton(k, label, automaton)
    }
    fn union(a: Self, b: Self, automaton: &A) -> Self {
        AggTable::union(a, b, automaton)
    }
    fn recolor(self, p: Label, q: Label, automaton: &A) -> Self {
        AggTable::recolor(self, p, q, automaton)
    }
    fn edge_add(self, p: Label, q: Label, automaton: &A) -> Self {
        AggTable::edge_add(self, p, q, automaton)
    }
    fn cell_count(&self) -> usize {
        AggTable::cell_count(self)
    }
    fn max_coeff_bits(&self) -> u64 {
        AggTable::max_coeff_bits(self)
    }
}
