//! Finite-state trackers that decide, compositionally along a
//! `k`-expression, whether the tracked vertex subset satisfies a fixed
//! predicate.
//!
//! The engine never looks at concrete graphs while it runs; per table cell
//! it carries one automaton state summarizing everything the predicate will
//! ever need to know about the subset built so far. States are composed by
//! one operation per term constructor: `init` at singleton leaves, `join`
//! at disjoint unions, `recolor` at relabelings, and `edge_add` at edge
//! creations. Edge creations may consult an [`OccupancySignature`] — which
//! label classes currently intersect the subset and its complement — since
//! that is exactly the information the table index exposes.
//!
//! Soundness is established empirically: for every corpus term and every
//! subset, replaying the automaton along the term agrees with the direct
//! graph predicate (see `tests/automata_vs_predicates.rs`).

use std::fmt::Debug;

use crate::graph::Label;

/// Which label classes currently contain subset members / complement
/// members. Derived from a table cell's occupancy counts `d̄` and the node's
/// class sizes `r̄`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OccupancySignature {
    in_subset: Vec<bool>,
    in_complement: Vec<bool>,
}

impl OccupancySignature {
    /// `occupancy[c]` = members of the subset with label `c+1`;
    /// `sizes[c]` = all vertices with label `c+1`.
    pub fn new(occupancy: &[u64], sizes: &[u64]) -> Self {
        debug_assert_eq!(occupancy.len(), sizes.len());
        OccupancySignature {
            in_subset: occupancy.iter().map(|&d| d > 0).collect(),
            in_complement: occupancy.iter().zip(sizes).map(|(&d, &r)| r > d).collect(),
        }
    }

    pub fn subset_occupies(&self, label: Label) -> bool {
        self.in_subset[(label - 1) as usize]
    }

    pub fn complement_occupies(&self, label: Label) -> bool {
        self.in_complement[(label - 1) as usize]
    }
}

/// The transition interface every predicate tracker implements.
///
/// Contract: the state space is finite for fixed `k`; transitions are total
/// and deterministic; `join` is commutative; a state with `is_dead` true is
/// absorbing under every transition and never accepted, so the engine may
/// drop its cells.
pub trait FormulaAutomaton {
    type State: Clone + Ord + Eq + Debug;

    /// State of a single vertex with label `c`, inside or outside the subset.
    fn init(&self, label: Label, in_subset: bool) -> Self::State;
    fn join(&self, a: &Self::State, b: &Self::State) -> Self::State;
    fn recolor(&self, a: &Self::State, from: Label, to: Label) -> Self::State;
    fn edge_add(
        &self,
        a: &Self::State,
        p: Label,
        q: Label,
        sig: &OccupancySignature,
    ) -> Self::State;
    fn accept(&self, a: &Self::State) -> bool;
    fn is_dead(&self, a: &Self::State) -> bool;
}

/// No constraint: every subset is accepted. One state, all transitions are
/// the identity.
#[derive(Debug, Clone, Copy, Default)]
pub struct TrueAutomaton;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct TrueState;

impl FormulaAutomaton for TrueAutomaton {
    type State = TrueState;

    fn init(&self, _label: Label, _in_subset: bool) -> TrueState {
        TrueState
    }
    fn join(&self, _a: &TrueState, _b: &TrueState) -> TrueState {
        TrueState
    }
    fn recolor(&self, _a: &TrueState, _from: Label, _to: Label) -> TrueState {
        TrueState
    }
    fn edge_add(
        &self,
        _a: &TrueState,
        _p: Label,
        _q: Label,
        _sig: &OccupancySignature,
    ) -> TrueState {
        TrueState
    }
    fn accept(&self, _a: &TrueState) -> bool {
        true
    }
    fn is_dead(&self, _a: &TrueState) -> bool {
        false
    }
}

/// Tracks whether the subset is still an independent set. An edge creation
/// kills the state as soon as both label classes contain subset members,
/// because every such pair becomes adjacent.
#[derive(Debug, Clone, Copy, Default)]
pub struct IndependentAutomaton;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum IndependentState {
    Ok,
    Dead,
}

impl FormulaAutomaton for IndependentAutomaton {
    type State = IndependentState;

    fn init(&self, _label: Label, _in_subset: bool) -> IndependentState {
        IndependentState::Ok
    }

    fn join(&self, a: &IndependentState, b: &IndependentState) -> IndependentState {
        match (a, b) {
            (IndependentState::Ok, IndependentState::Ok) => IndependentState::Ok,
            _ => IndependentState::Dead,
        }
    }

    fn recolor(&self, a: &IndependentState, _from: Label, _to: Label) -> IndependentState {
        *a
    }

    fn edge_add(
        &self,
        a: &IndependentState,
        p: Label,
        q: Label,
        sig: &OccupancySignature,
    ) -> IndependentState {
        if *a == IndependentState::Dead || (sig.subset_occupies(p) && sig.subset_occupies(q)) {
            IndependentState::Dead
        } else {
            IndependentState::Ok
        }
    }

    fn accept(&self, a: &IndependentState) -> bool {
        *a == IndependentState::Ok
    }

    fn is_dead(&self, a: &IndependentState) -> bool {
        *a == IndependentState::Dead
    }
}

/// Tracks the labels that still contain a complement vertex with no
/// neighbor in the subset. The subset dominates the graph exactly when that
/// set of labels is empty at the root.
///
/// The per-label flag is exact: an edge creation `e(p,q)` gives *every*
/// label-`p` vertex a subset neighbor precisely when the subset occupies
/// label `q`, so witnesses within one class never diverge.
#[derive(Debug, Clone, Copy, Default)]
pub struct DominatingAutomaton;

/// Bitmask over labels `1..=k` (bit `c-1` for label `c`).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct DominatingState {
    undominated: u64,
}

impl DominatingState {
    pub fn undominated_labels(&self) -> Vec<Label> {
        (0..64)
            .filter(|b| self.undominated >> b & 1 == 1)
            .map(|b| b + 1)
            .collect()
    }
}

const fn bit(label: Label) -> u64 {
    1u64 << (label - 1)
}

impl FormulaAutomaton for DominatingAutomaton {
    type State = DominatingState;

    fn init(&self, label: Label, in_subset: bool) -> DominatingState {
        DominatingState {
            undominated: if in_subset { 0 } else { bit(label) },
        }
    }

    fn join(&self, a: &DominatingState, b: &DominatingState) -> DominatingState {
        DominatingState {
            undominated: a.undominated | b.undominated,
        }
    }

    fn recolor(&self, a: &DominatingState, from: Label, to: Label) -> DominatingState {
        let mut mask = a.undominated;
        if mask & bit(from) != 0 {
            mask = (mask & !bit(from)) | bit(to);
        }
        DominatingState { undominated: mask }
    }

    fn edge_add(
        &self,
        a: &DominatingState,
        p: Label,
        q: Label,
        sig: &OccupancySignature,
    ) -> DominatingState {
        let mut mask = a.undominated;
        if sig.subset_occupies(q) {
            mask &= !bit(p);
        }
        if sig.subset_occupies(p) {
            mask &= !bit(q);
        }
        DominatingState { undominated: mask }
    }

    fn accept(&self, a: &DominatingState) -> bool {
        a.undominated == 0
    }

    fn is_dead(&self, _a: &DominatingState) -> bool {
        false
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sig(occupancy: &[u64], sizes: &[u64]) -> OccupancySignature {
        OccupancySignature::new(occupancy, sizes)
    }

    #[test]
    fn true_automaton_is_inert() {
        let a = TrueAutomaton;
        let s = a.init(1, true);
        assert_eq!(a.edge_add(&s, 1, 2, &sig(&[1, 0], &[1, 1])), s);
        assert_eq!(a.join(&s, &a.init(2, false)), s);
        assert!(a.accept(&s));
        assert!(!a.is_dead(&s));
    }

    #[test]
    fn independent_dies_when_both_sides_occupied() {
        let a = IndependentAutomaton;
        let ok = a.init(1, true);
        // K_2 cell with d = (1,1): both labels hold subset members
        let dead = a.edge_add(&ok, 1, 2, &sig(&[1, 1], &[1, 1]));
        assert_eq!(dead, IndependentState::Dead);
        assert!(a.is_dead(&dead));
        assert!(!a.accept(&dead));
        // d = (1,0): only one side occupied
        assert_eq!(
            a.edge_add(&ok, 1, 2, &sig(&[1, 0], &[1, 1])),
            IndependentState::Ok
        );
        // dead is absorbing
        assert_eq!(
            a.edge_add(&dead, 1, 2, &sig(&[0, 0], &[1, 1])),
            IndependentState::Dead
        );
        assert_eq!(a.join(&dead, &ok), IndependentState::Dead);
    }

    #[test]
    fn dominating_tracks_undominated_labels() {
        let a = DominatingAutomaton;
        // K_2 with S = {1}: leaf states {} and {2}
        let s_in = a.init(1, true);
        let s_out = a.init(2, false);
        assert_eq!(s_in.undominated_labels(), Vec::<Label>::new());
        assert_eq!(s_out.undominated_labels(), vec![2]);
        let joined = a.join(&s_in, &s_out);
        // edge creation with d = (1,0): label-2 side gains a subset neighbor
        let after = a.edge_add(&joined, 1, 2, &sig(&[1, 0], &[1, 1]));
        assert!(a.accept(&after));
        // S = {}: nothing dominates
        let empty = a.join(&a.init(1, false), &a.init(2, false));
        let after = a.edge_add(&empty, 1, 2, &sig(&[0, 0], &[1, 1]));
        assert!(!a.accept(&after));
        assert_eq!(after.undominated_labels(), vec![1, 2]);
    }

    #[test]
    fn dominating_recolor_moves_the_flag() {
        let a = DominatingAutomaton;
        let s = a.init(3, false);
        let moved = a.recolor(&s, 3, 1);
        assert_eq!(moved.undominated_labels(), vec![1]);
        // recoloring an absent label is a no-op
        assert_eq!(a.recolor(&moved, 3, 2), moved);
    }

    #[test]
    fn join_is_commutative_on_sampled_states() {
        let a = DominatingAutomaton;
        let states: Vec<DominatingState> = (0u64..8)
            .map(|m| DominatingState { undominated: m })
            .collect();
        for x in &states {
            for y in &states {
                assert_eq!(a.join(x, y), a.join(y, x));
            }
        }
    }
}
