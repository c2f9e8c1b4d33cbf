//! The dynamic program over `k`-expressions.
//!
//! For a term node whose subterm evaluates to a labeled graph `H` with
//! label-class sizes `r̄`, the table at that node groups the subsets
//! `S ⊆ V(H)` by automaton state and by the occupancy vector
//! `d̄ = (|S ∩ R_c|)_c`. What else a cell stores depends on the variant:
//!
//! * [`Variant::Aggregated`] keeps, per cell, a three-variable polynomial
//!   in `Y11, Y12, Y22` counting subsets by their (inside, crossing,
//!   outside) edge totals. An irredundant edge creation multiplies each
//!   cell by one monomial, since every subset in the cell gains exactly
//!   the same number of new edges of each kind. This is the fast path.
//! * [`Variant::Reference`] keeps the full per-label-pair exponent
//!   profile and one big-integer count per profile, and *sets* the pair
//!   entries at each edge creation. It tolerates redundant edge
//!   creations and exists to cross-check the aggregated path.
//!
//! At the root both variants collapse to the same five-variable
//! polynomial over `X1, X2, Y11, Y12, Y22`; named presets then substitute
//! these into the classical specializations.
//!
//! Table operations are pure functions of their inputs, so independent
//! subterms may be evaluated concurrently and output cells of a union may
//! be merged in any associative order; the current fold is sequential and
//! its output is schedule-free by construction (every map is ordered).

mod agg;
mod reference;

pub use agg::AggTable;
pub use reference::{PairIndex, Profile, RefTable};

use std::collections::BTreeMap;
use std::str::FromStr;
use std::time::Instant;

use serde::Serialize;
use thiserror::Error;

use crate::automata::{DominatingAutomaton, FormulaAutomaton, IndependentAutomaton, TrueAutomaton};
use crate::cwexpr::{CwTerm, Span, TermKind};
use crate::graph::Label;
use crate::polynomial::{Poly, PolyError, Subst};

/// Variable order of every raw engine and oracle output.
pub const CANONICAL_VARS: [&str; 5] = ["X1", "X2", "Y11", "Y12", "Y22"];
/// Cell-local edge variables of the aggregated engine.
pub const EDGE_VARS: [&str; 3] = ["Y11", "Y12", "Y22"];

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Variant {
    Aggregated,
    Reference,
}

impl FromStr for Variant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "aggregated" => Ok(Variant::Aggregated),
            "reference" => Ok(Variant::Reference),
            other => Err(format!("unknown engine `{other}`")),
        }
    }
}

impl std::fmt::Display for Variant {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Variant::Aggregated => "aggregated",
            Variant::Reference => "reference",
        })
    }
}

/// The subset predicate an automaton enforces.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Theta {
    True,
    Independent,
    Dominating,
}

impl FromStr for Theta {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "true" => Ok(Theta::True),
            "independent" => Ok(Theta::Independent),
            "dominating" => Ok(Theta::Dominating),
            other => Err(format!("unknown predicate `{other}`")),
        }
    }
}

/// Named specializations of the raw five-variable polynomial.
///
/// `independence-ising` tracks the independent set as the `x`-marked block:
/// `x` counts its vertices and `y` the edges leaving it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Preset {
    /// `Z(G; x, y, z)`: all subsets; `x` size, `y` crossing, `z` inside.
    Ising,
    /// `I_Is(G; x, y)`: independent subsets only.
    IndependenceIsing,
    /// `D_Is(G; x, y, z)`: dominating subsets only.
    DominatingIsing,
    /// `I(G; x)`: the independence polynomial, `I_Is(G; x, 1)`.
    Independence,
    /// `D(G; x)`: the domination polynomial, `D_Is(G; x, 1, 1)`.
    Domination,
}

pub const ALL_PRESETS: [Preset; 5] = [
    Preset::Ising,
    Preset::IndependenceIsing,
    Preset::DominatingIsing,
    Preset::Independence,
    Preset::Domination,
];

impl Preset {
    pub fn theta(&self) -> Theta {
        match self {
            Preset::Ising => Theta::True,
            Preset::IndependenceIsing | Preset::Independence => Theta::Independent,
            Preset::DominatingIsing | Preset::Domination => Theta::Dominating,
        }
    }

    fn mapping(&self) -> BTreeMap<String, Subst> {
        let x = |name: &str| Subst::Var(name.to_string());
        let rows: [(&str, Subst); 5] = match self {
            Preset::Ising | Preset::DominatingIsing => [
                ("X1", x("x")),
                ("X2", Subst::One),
                ("Y11", x("z")),
                ("Y12", x("y")),
                ("Y22", Subst::One),
            ],
            Preset::IndependenceIsing => [
                ("X1", x("x")),
                ("X2", Subst::One),
                ("Y11", Subst::One),
                ("Y12", x("y")),
                ("Y22", Subst::One),
            ],
            Preset::Independence | Preset::Domination => [
                ("X1", x("x")),
                ("X2", Subst::One),
                ("Y11", Subst::One),
                ("Y12", Subst::One),
                ("Y22", Subst::One),
            ],
        };
        rows.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
    }
}

impl FromStr for Preset {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "ising" => Ok(Preset::Ising),
            "independence_ising" | "independence-ising" => Ok(Preset::IndependenceIsing),
            "dominating_ising" | "dominating-ising" => Ok(Preset::DominatingIsing),
            "independence" => Ok(Preset::Independence),
            "domination" => Ok(Preset::Domination),
            other => Err(format!("unknown preset `{other}`")),
        }
    }
}

impl std::fmt::Display for Preset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Preset::Ising => "ising",
            Preset::IndependenceIsing => "independence_ising",
            Preset::DominatingIsing => "dominating_ising",
            Preset::Independence => "independence",
            Preset::Domination => "domination",
        })
    }
}

/// Applies the named substitution to a raw five-variable polynomial.
pub fn preset(p: &Poly, name: Preset) -> Result<Poly, PolyError> {
    p.substitute(&name.mapping())
}

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("{span}: edge creation repeats existing edges; the aggregated engine requires irredundant terms")]
    RedundantEdgeAdd { span: Span },
    #[error("time budget exceeded")]
    BudgetExceeded,
    #[error(transparent)]
    Term(#[from] crate::cwexpr::TermError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

#[derive(Debug, Clone, Copy, Default)]
pub struct RunOptions {
    pub collect_trace: bool,
    pub deadline: Option<Instant>,
}

/// Per-node progress record, one line of the optional trace stream.
#[derive(Debug, Clone, Serialize)]
pub struct TraceRow {
    pub node: usize,
    pub op: &'static str,
    pub cells: usize,
    pub max_coeff_bits: u64,
}

#[derive(Debug, Clone, Default)]
pub struct RunStats {
    pub width: Label,
    pub vertices: usize,
    pub edges: usize,
    pub nodes: usize,
    pub peak_cells: usize,
    pub max_coeff_bits: u64,
}

#[derive(Debug, Clone)]
pub struct RunOutput {
    /// Raw polynomial over [`CANONICAL_VARS`].
    pub poly: Poly,
    pub stats: RunStats,
    pub trace: Vec<TraceRow>,
}

/// Interface the generic fold needs from either table variant.
trait DpTable<A: FormulaAutomaton>: Sized {
    fn singleton(k: usize, label: Label, automaton: &A) -> Self;
    fn union(a: Self, b: Self, automaton: &A) -> Self;
    fn recolor(self, p: Label, q: Label, automaton: &A) -> Self;
    fn edge_add(self, p: Label, q: Label, automaton: &A) -> Self;
    fn cell_count(&self) -> usize;
    fn max_coeff_bits(&self) -> u64;
}

struct Fold<'a, A> {
    automaton: &'a A,
    k: usize,
    opts: RunOptions,
    trace: Vec<TraceRow>,
    peak_cells: usize,
    max_coeff_bits: u64,
    next_node: usize,
}

impl<'a, A: FormulaAutomaton> Fold<'a, A> {
    fn record<T: DpTable<A>>(&mut self, op: &'static str, table: &T) {
        let cells = table.cell_count();
        let bits = table.max_coeff_bits();
        self.peak_cells = self.peak_cells.max(cells);
        self.max_coeff_bits = self.max_coeff_bits.max(bits);
        if self.opts.collect_trace {
            self.trace.push(TraceRow {
                node: self.next_node,
                op,
                cells,
                max_coeff_bits: bits,
            });
        }
        self.next_node += 1;
    }

    fn check_budget(&self) -> Result<(), EngineError> {
        if let Some(deadline) = self.opts.deadline {
            if Instant::now() > deadline {
                return Err(EngineError::BudgetExceeded);
            }
        }
        Ok(())
    }

    fn go<T: DpTable<A>>(&mut self, term: &CwTerm) -> Result<T, EngineError> {
        self.check_budget()?;
        let table = match &term.kind {
            TermKind::Singleton { label, .. } => T::singleton(self.k, *label, self.automaton),
            TermKind::Union(a, b) => {
                let ta = self.go(a)?;
                let tb = self.go(b)?;
                self.check_budget()?;
                T::union(ta, tb, self.automaton)
            }
            TermKind::Recolor { from, to, child } => {
                let tc: T = self.go(child)?;
                self.check_budget()?;
                tc.recolor(*from, *to, self.automaton)
            }
            TermKind::EdgeAdd { p, q, child } => {
                let tc: T = self.go(child)?;
                self.check_budget()?;
                tc.edge_add(*p, *q, self.automaton)
            }
        };
        self.record(op_name(term), &table);
        Ok(table)
    }
}

fn op_name(term: &CwTerm) -> &'static str {
    match &term.kind {
        TermKind::Singleton { .. } => "singleton",
        TermKind::Union(..) => "union",
        TermKind::Recolor { .. } => "recolor",
        TermKind::EdgeAdd { .. } => "edge_add",
    }
}

/// Computes the raw five-variable polynomial of `val(term)` for the subset
/// predicate tracked by `automaton`.
///
/// The term is validated first; the aggregated variant rejects terms with
/// redundant edge creations, naming the first offending site.
pub fn run<A: FormulaAutomaton>(
    term: &CwTerm,
    automaton: &A,
    variant: Variant,
    opts: &RunOptions,
) -> Result<RunOutput, EngineError> {
    let report = term.validate()?;
    if variant == Variant::Aggregated && !report.irredundant {
        return Err(EngineError::RedundantEdgeAdd {
            span: report.redundant_sites[0],
        });
    }
    let k = report.width.max(1) as usize;
    let mut fold = Fold {
        automaton,
        k,
        opts: *opts,
        trace: Vec::new(),
        peak_cells: 0,
        max_coeff_bits: 0,
        next_node: 0,
    };
    let poly = match variant {
        Variant::Aggregated => {
            let table: AggTable<A::State> = fold.go(term)?;
            table.extract(automaton)
        }
        Variant::Reference => {
            let table: RefTable<A::State> = fold.go(term)?;
            table.extract(automaton)
        }
    };
    Ok(RunOutput {
        poly,
        stats: RunStats {
            width: report.width,
            vertices: report.vertex_count,
            edges: report.edge_count,
            nodes: fold.next_node,
            peak_cells: fold.peak_cells,
            max_coeff_bits: fold.max_coeff_bits,
        },
        trace: fold.trace,
    })
}

/// [`run`] with the automaton picked by name.
pub fn run_theta(
    term: &CwTerm,
    theta: Theta,
    variant: Variant,
    opts: &RunOptions,
) -> Result<RunOutput, EngineError> {
    match theta {
        Theta::True => run(term, &TrueAutomaton, variant, opts),
        Theta::Independent => run(term, &IndependentAutomaton, variant, opts),
        Theta::Dominating => run(term, &DominatingAutomaton, variant, opts),
    }
}

/// Runs the automaton a preset implies, then applies its substitution.
/// Returns the specialized polynomial alongside the raw run output.
pub fn run_preset(
    term: &CwTerm,
    name: Preset,
    variant: Variant,
    opts: &RunOptions,
) -> Result<(Poly, RunOutput), EngineError> {
    let output = run_theta(term, name.theta(), variant, opts)?;
    let specialized = preset(&output.poly, name)?;
    Ok((specialized, output))
}
