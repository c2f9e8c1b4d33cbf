//! Helpers shared by the integration suites.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use cwising::automata::{FormulaAutomaton, OccupancySignature};
use cwising::cwexpr::{CwTerm, TermKind};
use cwising::engine::Theta;
use cwising::graph::{KGraph, Label, VertexId, VertexSubset};

/// Deterministic RNG for reproducible sweeps.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random graph on `1..=n` with independent edge probability 1/2.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize) -> KGraph {
    let mut edges = Vec::new();
    for u in 1..=n as VertexId {
        for v in (u + 1)..=n as VertexId {
            if rng.gen_bool(0.5) {
                edges.push((u, v));
            }
        }
    }
    KGraph::unlabeled(n, &edges).unwrap()
}

/// All labeled graphs on `1..=n`, one per subset of the possible edges.
pub fn all_graphs(n: usize) -> Vec<KGraph> {
    let pairs: Vec<(VertexId, VertexId)> = (1..=n as VertexId)
        .flat_map(|u| ((u + 1)..=n as VertexId).map(move |v| (u, v)))
        .collect();
    (0u64..(1 << pairs.len()))
        .map(|mask| {
            let edges: Vec<(VertexId, VertexId)> = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, &e)| e)
                .collect();
            KGraph::unlabeled(n, &edges).unwrap()
        })
        .collect()
}

/// Evaluates the direct graph predicate a theta names.
pub fn direct_predicate(g: &KGraph, theta: Theta, s: &VertexSubset) -> bool {
    match theta {
        Theta::True => true,
        Theta::Independent => g.is_independent(s),
        Theta::Dominating => g.is_dominating(s),
    }
}

/// Runs the automaton alongside a bottom-up evaluation of the term for one
/// concrete subset: states start at the leaves by membership and compose
/// through join / recolor / edge_add with occupancy signatures taken from
/// the true per-label counts. Returns the final state and the final
/// labeling of the subterm's vertices.
pub fn replay_state<A: FormulaAutomaton>(
    term: &CwTerm,
    automaton: &A,
    subset: &BTreeSet<VertexId>,
    k: usize,
) -> (A::State, BTreeMap<VertexId, Label>) {
    match &term.kind {
        TermKind::Singleton { vertex, label } => {
            let state = automaton.init(*label, subset.contains(vertex));
            (state, BTreeMap::from([(*vertex, *label)]))
        }
        TermKind::Union(a, b) => {
            let (sa, mut la) = replay_state(a, automaton, subset, k);
            let (sb, lb) = replay_state(b, automaton, subset, k);
            la.extend(lb);
            (automaton.join(&sa, &sb), la)
        }
        TermKind::Recolor { from, to, child } => {
            let (s, mut labels) = replay_state(child, automaton, subset, k);
            for l in labels.values_mut() {
                if l == from {
                    *l = *to;
                }
            }
            (automaton.recolor(&s, *from, *to), labels)
        }
        TermKind::EdgeAdd { p, q, child } => {
            let (s, labels) = replay_state(child, automaton, subset, k);
            let mut occupancy = vec![0u64; k];
            let mut sizes = vec![0u64; k];
            for (v, l) in &labels {
                sizes[(*l - 1) as usize] += 1;
                if subset.contains(v) {
                    occupancy[(*l - 1) as usize] += 1;
                }
            }
            let sig = OccupancySignature::new(&occupancy, &sizes);
            (automaton.edge_add(&s, *p, *q, &sig), labels)
        }
    }
}

/// Every subset of the graph's vertex ids, as (mask-backed set, id set).
pub fn subsets_of(g: &KGraph) -> Vec<(VertexSubset, BTreeSet<VertexId>)> {
    let ids = g.vertex_ids();
    (0u64..(1 << ids.len()))
        .map(|mask| {
            let id_set: BTreeSet<VertexId> = ids
                .iter()
                .enumerate()
                .filter(|(i, _)| (mask >> i) & 1 == 1)
                .map(|(_, &id)| id)
                .collect();
            (VertexSubset::from_index_mask(g, mask).unwrap(), id_set)
        })
        .collect()
}

/// Random term over up to `max_label` labels: distinct-vertex leaves glued
/// by unions, interleaved with random recolors and edge creations. Unlike
/// fallback terms of random graphs this exercises recoloring into occupied
/// and empty classes, edge creations on empty classes, and redundant edge
/// creations.
pub fn random_term(rng: &mut ChaCha8Rng, leaves: usize, max_label: Label) -> CwTerm {
    assert!(leaves >= 1);
    let mut forest: Vec<CwTerm> = Vec::new();
    for vertex in 1..=leaves as VertexId {
        forest.push(CwTerm::singleton(vertex, rng.gen_range(1..=max_label)));
    }
    let mut rng2 = rng.clone();
    let mut decorate = |mut t: CwTerm| -> CwTerm {
        for _ in 0..rng2.gen_range(0..3) {
            let p = rng2.gen_range(1..=max_label);
            let mut q = rng2.gen_range(1..=max_label);
            if q == p {
                q = 1 + (p % max_label);
            }
            if p != q {
                t = if rng2.gen_bool(0.5) {
                    CwTerm::recolor(p, q, t)
                } else {
                    CwTerm::edge_add(p, q, t)
                };
            }
        }
        t
    };
    let mut acc = decorate(forest.pop().unwrap());
    while let Some(part) = forest.pop() {
        let part = decorate(part);
        acc = decorate(CwTerm::union(part, acc));
    }
    acc
}

/// Hits every rng-driven sweep with a mix of sparse and dense graphs.
pub fn random_graph_biased(rng: &mut ChaCha8Rng, n: usize) -> KGraph {
    let p = match rng.gen_range(0..3) {
        0 => 0.25,
        1 => 0.5,
        _ => 0.75,
    };
    let mut edges = Vec::new();
    for u in 1..=n as VertexId {
        for v in (u + 1)..=n as VertexId {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    KGraph::unlabeled(n, &edges).unwrap()
}
