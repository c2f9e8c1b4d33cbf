//! The reference table: cells carry the full per-label-pair edge exponent
//! profile and a big-integer count of subsets with that exact profile.
//!
//! Edge creation *sets* the `(p,q)` pair entries to the complete-bipartite
//! counts instead of adding deltas, which keeps the table exact even when a
//! term re-adds existing edges. The price is a state space exponential in
//! `k²`, so this variant is for small inputs and for cross-checking the
//! aggregated engine.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::One;

use crate::automata::{FormulaAutomaton, OccupancySignature};
use crate::graph::Label;
use crate::polynomial::Poly;

use super::{DpTable, CANONICAL_VARS};

/// Triangular / square index helpers for label pairs in `1..=k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PairIndex {
    k: usize,
}

impl PairIndex {
    pub fn new(k: usize) -> Self {
        PairIndex { k }
    }

    pub fn unordered_len(&self) -> usize {
        self.k * (self.k + 1) / 2
    }

    pub fn ordered_len(&self) -> usize {
        self.k * self.k
    }

    /// Index of the unordered pair `{a,b}` (diagonal included).
    pub fn unordered(&self, a: Label, b: Label) -> usize {
        let (i, j) = if a <= b {
            ((a - 1) as usize, (b - 1) as usize)
        } else {
            ((b - 1) as usize, (a - 1) as usize)
        };
        i * self.k - i * (i + 1) / 2 + j
    }

    /// Index of the ordered pair `(a,b)`.
    pub fn ordered(&self, a: Label, b: Label) -> usize {
        (a - 1) as usize * self.k + (b - 1) as usize
    }

    fn unordered_pairs(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        (1..=self.k as Label).flat_map(move |a| (a..=self.k as Label).map(move |b| (a, b)))
    }

    fn ordered_pairs(&self) -> impl Iterator<Item = (Label, Label)> + '_ {
        (1..=self.k as Label).flat_map(move |a| (1..=self.k as Label).map(move |b| (a, b)))
    }
}

/// Exact per-cell bookkeeping: occupancy counts plus, for every label pair,
/// how many edges are inside the subset (`m11`, unordered), crossing
/// (`m12`, ordered as subset-side label first), and outside (`m22`,
/// unordered).
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Profile {
    pub d: Vec<u64>,
    pub m11: Vec<u64>,
    pub m12: Vec<u64>,
    pub m22: Vec<u64>,
}

impl Profile {
    fn empty(idx: PairIndex, k: usize) -> Self {
        Profile {
            d: vec![0; k],
            m11: vec![0; idx.unordered_len()],
            m12: vec![0; idx.ordered_len()],
            m22: vec![0; idx.unordered_len()],
        }
    }

    fn add(&self, other: &Profile) -> Profile {
        fn zip_add(a: &[u64], b: &[u64]) -> Vec<u64> {
            a.iter().zip(b).map(|(x, y)| x + y).collect()
        }
        Profile {
            d: zip_add(&self.d, &other.d),
            m11: zip_add(&self.m11, &other.m11),
            m12: zip_add(&self.m12, &other.m12),
            m22: zip_add(&self.m22, &other.m22),
        }
    }

    /// Reclassifies every entry under the relabeling `p -> q`.
    fn recolor(&self, idx: PairIndex, p: Label, q: Label) -> Profile {
        let relabel = |c: Label| if c == p { q } else { c };
        let mut out = Profile::empty(idx, self.d.len());
        for (c, &v) in self.d.iter().enumerate() {
            out.d[(relabel(c as Label + 1) - 1) as usize] += v;
        }
        for (a, b) in idx.unordered_pairs() {
            let v = self.m11[idx.unordered(a, b)];
            if v > 0 {
                out.m11[idx.unordered(relabel(a), relabel(b))] += v;
            }
            let v = self.m22[idx.unordered(a, b)];
            if v > 0 {
                out.m22[idx.unordered(relabel(a), relabel(b))] += v;
            }
        }
        for (a, b) in idx.ordered_pairs() {
            let v = self.m12[idx.ordered(a, b)];
            if v > 0 {
                out.m12[idx.ordered(relabel(a), relabel(b))] += v;
            }
        }
        out
    }
}

/// Dynamic-programming table of the reference engine.
#[derive(Debug, Clone)]
pub struct RefTable<S> {
    idx: PairIndex,
    sizes: Vec<u64>,
    cells: BTreeMap<(S, Profile), BigInt>,
}

impl<S: Clone + Ord + std::fmt::Debug> RefTable<S> {
    pub fn singleton<A>(k: usize, label: Label, automaton: &A) -> Self
    where
        A: FormulaAutomaton<State = S>,
    {
        assert!(label as usize <= k, "label exceeds declared width");
        let idx = PairIndex::new(k);
        let mut sizes = vec![0u64; k];
        sizes[(label - 1) as usize] = 1;
        let mut table = RefTable {
            idx,
            sizes,
            cells: BTreeMap::new(),
        };
        let excluded = Profile::empty(idx, k);
        let mut included = Profile::empty(idx, k);
        included.d[(label - 1) as usize] = 1;
        table.accumulate(
            automaton,
            automaton.init(label, false),
            excluded,
            BigInt::one(),
        );
        table.accumulate(
            automaton,
            automaton.init(label, true),
            included,
            BigInt::one(),
        );
        table
    }

    pub fn union<A>(a: Self, b: Self, automaton: &A) -> Self
    where
        A: FormulaAutomaton<State = S>,
    {
        assert_eq!(a.idx, b.idx, "tables must share the label arity");
        let sizes: Vec<u64> = a.sizes.iter().zip(&b.sizes).map(|(x, y)| x + y).collect();
        let mut out = RefTable {
            idx: a.idx,
            sizes,
            cells: BTreeMap::new(),
        };
        for ((sa, pa), ca) in &a.cells {
            for ((sb, pb), cb) in &b.cells {
                out.accumulate(automaton, automaton.join(sa, sb), pa.add(pb), ca * cb);
            }
        }
        out
    }

    pub fn recolor<A>(self, p: Label, q: Label, automaton: &A) -> Self
    where
        A: FormulaAutomaton<State = S>,
    {
        assert_ne!(p, q);
        let idx = self.idx;
        let (pi, qi) = ((p - 1) as usize, (q - 1) as usize);
        let mut sizes = self.sizes.clone();
        sizes[qi] += sizes[pi];
        sizes[pi] = 0;
        let mut out = RefTable {
            idx,
            sizes,
            cells: BTreeMap::new(),
        };
        for ((state, profile), count) in self.cells {
            let profile = profile.recolor(idx, p, q);
            let state = automaton.recolor(&state, p, q);
            out.accumulate(automaton, state, profile, count);
        }
        out
    }

    /// Sets the `(p,q)` entries to the after-creation counts: all pairs
    /// between the classes are edges now, whatever was there before.
    pub fn edge_add<A>(self, p: Label, q: Label, automaton: &A) -> Self
    where
        A: FormulaAutomaton<State = S>,
    {
        assert_ne!(p, q);
        let idx = self.idx;
        let (pi, qi) = ((p - 1) as usize, (q - 1) as usize);
        let (rp, rq) = (self.sizes[pi], self.sizes[qi]);
        let mut out = RefTable {
            idx,
            sizes: self.sizes.clone(),
            cells: BTreeMap::new(),
        };
        for ((state, profile), count) in self.cells {
            let (dp, dq) = (profile.d[pi], profile.d[qi]);
            let mut np = profile.clone();
            np.m11[idx.unordered(p, q)] = dp * dq;
            np.m12[idx.ordered(p, q)] = dp * (rq - dq);
            np.m12[idx.ordered(q, p)] = dq * (rp - dp);
            np.m22[idx.unordered(p, q)] = (rp - dp) * (rq - dq);
            let sig = OccupancySignature::new(&profile.d, &self.sizes);
            let state = automaton.edge_add(&state, p, q, &sig);
            out.accumulate(automaton, state, np, count);
        }
        out
    }

    fn accumulate<A>(&mut self, automaton: &A, state: S, profile: Profile, count: BigInt)
    where
        A: FormulaAutomaton<State = S>,
    {
        use num_traits::Zero;
        if automaton.is_dead(&state) || count.is_zero() {
            return;
        }
        debug_assert!(
            profile.d.iter().zip(&self.sizes).all(|(dc, rc)| dc <= rc),
            "occupancy exceeds class size"
        );
        *self
            .cells
            .entry((state, profile))
            .or_insert_with(BigInt::zero) += count;
    }

    /// Root step: collapse each pair family by summation, then emit the
    /// five-variable monomial per accepted cell.
    pub fn extract<A>(&self, automaton: &A) -> Poly
    where
        A: FormulaAutomaton<State = S>,
    {
        let n: u64 = self.sizes.iter().sum();
        let mut poly = Poly::zero(&CANONICAL_VARS);
        for ((state, profile), count) in &self.cells {
            if !automaton.accept(state) {
                continue;
            }
            let inside: u64 = profile.d.iter().sum();
            let e11: u64 = profile.m11.iter().sum();
            let e12: u64 = profile.m12.iter().sum();
            let e22: u64 = profile.m22.iter().sum();
            poly.add_term(vec![inside, n - inside, e11, e12, e22], count.clone());
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
            .map(|c| c.magnitude().bits())
            .max()
            .unwrap_or(0)
    }

    pub fn cells(&self) -> impl Iterator<Item = (&(S, Profile), &BigInt)> {
        self.cells.iter()
    }

    pub fn total_mass(&self) -> BigInt {
        self.cells.values().sum()
    }

    pub fn pair_index(&self) -> PairIndex {
        self.idx
    }
}

impl<S, A> DpTable<A> for RefTable<S>
where
    S: Clone + Ord + std::fmt::Debug,
    A: FormulaAutomaton<State = S>,
{
    fn singleton(k: usize, label: Label, automaton: &A) -> Self {
        RefTable::singleton(k, label, automaton)
    }
    fn union(a: Self, b: Self, automaton: &A) -> Self {
        RefTable::union(a, b, automaton)
    }
    fn recolor(self, p: Label, q: Label, automaton: &A) -> Self {
        RefTable::recolor(self, p, q, automaton)
    }
    fn edge_add(self, p: Label, q: Label, automaton: &A) -> Self {
        RefTable::edge_add(self, p, q, automaton)
    }
    fn cell_count(&self) -> usize {
        RefTable::cell_count(self)
    }
    fn max_coeff_bits(&self) -> u64 {
        RefTable::max_coeff_bits(self)
    }
}
