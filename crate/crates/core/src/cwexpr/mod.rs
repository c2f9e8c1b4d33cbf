//! The clique-width `k`-expression term language.
//!
//! A term is built from labeled singleton vertices `v(id,label)`, disjoint
//! unions `U(s,t)`, relabelings `r(p->q,t)` that move every vertex of label
//! `p` to label `q`, and edge creations `e(p,q,t)` that connect every
//! label-`p` vertex with every label-`q` vertex. Evaluating a term bottom-up
//! produces a labeled graph; the largest label mentioned is the width of the
//! expression and bounds the clique-width of that graph.

mod build;
mod parse;

pub use build::{
    build_biclique, build_clique, build_cograph, build_cycle, build_fallback, build_family,
    build_path, Cotree,
};
pub use parse::parse_term;

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::graph::{GraphError, KGraph, Label, VertexId};

/// Position of a term node in its source text (1-based; 0 for generated
/// terms).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Default)]
pub struct Span {
    pub line: usize,
    pub col: usize,
}

impl Span {
    pub fn synthetic() -> Span {
        Span::default()
    }
}

impl fmt::Display for Span {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.line == 0 {
            write!(f, "<generated>")
        } else {
            write!(f, "{}:{}", self.line, self.col)
        }
    }
}

#[derive(Debug, Clone)]
pub enum TermKind {
    Singleton {
        vertex: VertexId,
        label: Label,
    },
    Union(Box<CwTerm>, Box<CwTerm>),
    Recolor {
        from: Label,
        to: Label,
        child: Box<CwTerm>,
    },
    EdgeAdd {
        p: Label,
        q: Label,
        child: Box<CwTerm>,
    },
}

/// A `k`-expression term node with its source position.
#[derive(Debug, Clone)]
pub struct CwTerm {
    pub kind: TermKind,
    pub span: Span,
}

/// Structural equality ignores source spans.
impl PartialEq for CwTerm {
    fn eq(&self, other: &Self) -> bool {
        match (&self.kind, &other.kind) {
            (
                TermKind::Singleton {
                    vertex: v1,
                    label: l1,
                },
                TermKind::Singleton {
                    vertex: v2,
                    label: l2,
                },
            ) => v1 == v2 && l1 == l2,
            (TermKind::Union(a1, b1), TermKind::Union(a2, b2)) => a1 == a2 && b1 == b2,
            (
                TermKind::Recolor {
                    from: f1,
                    to: t1,
                    child: c1,
                },
                TermKind::Recolor {
                    from: f2,
                    to: t2,
                    child: c2,
                },
            ) => f1 == f2 && t1 == t2 && c1 == c2,
            (
                TermKind::EdgeAdd {
                    p: p1,
                    q: q1,
                    child: c1,
                },
                TermKind::EdgeAdd {
                    p: p2,
                    q: q2,
                    child: c2,
                },
            ) => p1 == p2 && q1 == q2 && c1 == c2,
            _ => false,
        }
    }
}

impl Eq for CwTerm {}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TermError {
    #[error("{line}:{col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("{span}: duplicate vertex id {id}")]
    DuplicateVertex { id: VertexId, span: Span },
    #[error("{span}: label must be at least 1")]
    LabelOutOfRange { span: Span },
    #[error("{span}: p and q must differ")]
    EqualLabels { span: Span },
    #[error("cycles need at least 3 vertices, got {0}")]
    CycleTooShort(usize),
    #[error("{0}")]
    BadFamilySpec(String),
    #[error("cannot build a term for the empty graph")]
    EmptyGraph,
    #[error("term nesting exceeds {MAX_TERM_DEPTH} levels")]
    TooDeep,
    #[error("graph error: {0}")]
    Graph(#[from] GraphError),
}

/// Nesting bound for parsing and evaluation; everything deeper fails with
/// [`TermError::TooDeep`] instead of exhausting the call stack.
pub const MAX_TERM_DEPTH: usize = 8192;

/// Deep terms come from the family builders (a path doubles three levels
/// per vertex), so the automatic recursive drop glue would overflow on
/// them; unlink children onto an explicit stack instead.
impl Drop for CwTerm {
    fn drop(&mut self) {
        fn detach(t: &mut CwTerm) -> TermKind {
            std::mem::replace(&mut t.kind, TermKind::Singleton { vertex: 0, label: 0 })
        }
        let mut stack = vec![detach(self)];
        while let Some(kind) = stack.pop() {
            match kind {
                TermKind::Singleton { .. } => {}
                TermKind::Union(mut a, mut b) => {
                    stack.push(detach(&mut a));
                    stack.push(detach(&mut b));
                }
                TermKind::Recolor { mut child, .. } | TermKind::EdgeAdd { mut child, .. } => {
                    stack.push(detach(&mut child));
                }
            }
        }
    }
}

impl CwTerm {
    pub fn singleton(vertex: VertexId, label: Label) -> CwTerm {
        CwTerm {
            kind: TermKind::Singleton { vertex, label },
            span: Span::synthetic(),
        }
    }

    pub fn union(a: CwTerm, b: CwTerm) -> CwTerm {
        CwTerm {
            kind: TermKind::Union(Box::new(a), Box::new(b)),
            span: Span::synthetic(),
        }
    }

    pub fn recolor(from: Label, to: Label, child: CwTerm) -> CwTerm {
        CwTerm {
            kind: TermKind::Recolor {
                from,
                to,
                child: Box::new(child),
            },
            span: Span::synthetic(),
        }
    }

    pub fn edge_add(p: Label, q: Label, child: CwTerm) -> CwTerm {
        CwTerm {
            kind: TermKind::EdgeAdd {
                p,
                q,
                child: Box::new(child),
            },
            span: Span::synthetic(),
        }
    }

    /// All nodes of the term, preorder, without recursion.
    fn subterms(&self) -> Vec<&CwTerm> {
        let mut out = Vec::new();
        let mut stack = vec![self];
        while let Some(t) = stack.pop() {
            out.push(t);
            match &t.kind {
                TermKind::Singleton { .. } => {}
                TermKind::Union(a, b) => {
                    stack.push(b);
                    stack.push(a);
                }
                TermKind::Recolor { child, .. } | TermKind::EdgeAdd { child, .. } => {
                    stack.push(child)
                }
            }
        }
        out
    }

    /// Largest label mentioned anywhere in the term.
    pub fn width(&self) -> Label {
        self.subterms()
            .into_iter()
            .map(|t| match &t.kind {
                TermKind::Singleton { label, .. } => *label,
                TermKind::Union(..) => 1,
                TermKind::Recolor { from, to, .. } => (*from).max(*to),
                TermKind::EdgeAdd { p, q, .. } => (*p).max(*q),
            })
            .max()
            .unwrap_or(1)
    }

    pub fn vertex_count(&self) -> usize {
        self.subterms()
            .into_iter()
            .filter(|t| matches!(t.kind, TermKind::Singleton { .. }))
            .count()
    }

    /// Number of operation nodes (singletons included).
    pub fn node_count(&self) -> usize {
        self.subterms().len()
    }

    /// Canonical compact text form; `parse_term` round-trips it.
    pub fn render(&self) -> String {
        enum Piece<'a> {
            Term(&'a CwTerm),
            Comma,
            Close,
        }
        let mut out = String::new();
        let mut stack = vec![Piece::Term(self)];
        while let Some(piece) = stack.pop() {
            let t = match piece {
                Piece::Comma => {
                    out.push(',');
                    continue;
                }
                Piece::Close => {
                    out.push(')');
                    continue;
                }
                Piece::Term(t) => t,
            };
            match &t.kind {
                TermKind::Singleton { vertex, label } => {
                    let _ = write!(out, "v({vertex},{label})");
                }
                TermKind::Union(a, b) => {
                    out.push_str("U(");
                    stack.push(Piece::Close);
                    stack.push(Piece::Term(b));
                    stack.push(Piece::Comma);
                    stack.push(Piece::Term(a));
                }
                TermKind::Recolor { from, to, child } => {
                    let _ = write!(out, "r({from}->{to},");
                    stack.push(Piece::Close);
                    stack.push(Piece::Term(child));
                }
                TermKind::EdgeAdd { p, q, child } => {
                    let _ = write!(out, "e({p},{q},");
                    stack.push(Piece::Close);
                    stack.push(Piece::Term(child));
                }
            }
        }
        out
    }

    /// Builds the graph the term denotes: singleton leaves contribute the
    /// vertices, unions merge disjoint parts, `r` rewrites labels, and `e`
    /// inserts every missing edge between the two label classes. The result
    /// carries the final labeling and `k` equal to the term width.
    pub fn evaluate(&self) -> Result<KGraph, TermError> {
        let state = self.eval_state(0)?;
        let ids: Vec<VertexId> = state.labels.keys().copied().collect();
        let labels: Vec<Label> = state.labels.values().copied().collect();
        let edges: Vec<(VertexId, VertexId)> = state.edges.keys().copied().collect();
        Ok(KGraph::new(ids, labels, &edges, self.width())?)
    }

    fn eval_state(&self, depth: usize) -> Result<EvalState, TermError> {
        if depth >= MAX_TERM_DEPTH {
            return Err(TermError::TooDeep);
        }
        Ok(match &self.kind {
            TermKind::Singleton { vertex, label } => {
                if *label == 0 {
                    return Err(TermError::LabelOutOfRange { span: self.span });
                }
                let mut state = EvalState::default();
                state.labels.insert(*vertex, *label);
                state
            }
            TermKind::Union(a, b) => {
                let mut state = a.eval_state(depth + 1)?;
                let other = b.eval_state(depth + 1)?;
                for (v, l) in other.labels {
                    if state.labels.insert(v, l).is_some() {
                        return Err(TermError::DuplicateVertex {
                            id: v,
                            span: self.span,
                        });
                    }
                }
                state.edges.extend(other.edges);
                state.redundant_sites.extend(other.redundant_sites);
                state
            }
            TermKind::Recolor { from, to, child } => {
                if from == to {
                    return Err(TermError::EqualLabels { span: self.span });
                }
                let mut state = child.eval_state(depth + 1)?;
                for l in state.labels.values_mut() {
                    if l == from {
                        *l = *to;
                    }
                }
                state
            }
            TermKind::EdgeAdd { p, q, child } => {
                if p == q {
                    return Err(TermError::EqualLabels { span: self.span });
                }
                let mut state = child.eval_state(depth + 1)?;
                let ps: Vec<VertexId> = state
                    .labels
                    .iter()
                    .filter(|(_, l)| *l == p)
                    .map(|(v, _)| *v)
                    .collect();
                let qs: Vec<VertexId> = state
                    .labels
                    .iter()
                    .filter(|(_, l)| *l == q)
                    .map(|(v, _)| *v)
                    .collect();
                let mut redundant = false;
                for &u in &ps {
                    for &v in &qs {
                        let key = (u.min(v), u.max(v));
                        if state.edges.insert(key, ()).is_some() {
                            redundant = true;
                        }
                    }
                }
                if redundant {
                    state.redundant_sites.push(self.span);
                }
                state
            }
        })
    }

    /// Replays evaluation and reports width, vertex/edge counts, and every
    /// edge-creation site that re-added an existing edge. Redundant sites are
    /// legal input for the reference engine but rejected by the aggregated
    /// one.
    pub fn validate(&self) -> Result<ValidationReport, TermError> {
        let state = self.eval_state(0)?;
        let mut sites = state.redundant_sites;
        sites.sort();
        sites.dedup();
        Ok(ValidationReport {
            width: self.width(),
            irredundant: sites.is_empty(),
            redundant_sites: sites,
            vertex_count: state.labels.len(),
            edge_count: state.edges.len(),
        })
    }
}

#[derive(Default)]
struct EvalState {
    labels: BTreeMap<VertexId, Label>,
    edges: BTreeMap<(VertexId, VertexId), ()>,
    redundant_sites: Vec<Span>,
}

/// Outcome of [`CwTerm::validate`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub width: Label,
    pub irredundant: bool,
    pub redundant_sites: Vec<Span>,
    pub vertex_count: usize,
    pub edge_count: usize,
}
