//! Labeled simple graphs and the subset predicates used by the oracle and
//! the validators.
//!
//! A [`KGraph`] is a simple graph whose vertices each carry one label from
//! `1..=k`. External vertex ids are arbitrary positive integers; internally
//! they are mapped to dense indices in id order, and edges are stored as a
//! sorted set of normalized index pairs so every iteration order is
//! deterministic.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

/// Externally visible vertex identifier (1-based in files and terms).
pub type VertexId = u64;
/// Vertex label in `1..=k`.
pub type Label = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("unknown vertex id {0}")]
    UnknownVertex(VertexId),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex id 0 is not allowed")]
    ZeroVertexId,
    #[error("duplicate vertex id {0}")]
    DuplicateVertexId(VertexId),
    #[error("label must be at least 1")]
    ZeroLabel,
    #[error("edge endpoints must differ, got loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("duplicate edge {0} {1}")]
    DuplicateEdge(VertexId, VertexId),
    #[error("subset predicates support at most {max} vertices, graph has {n}")]
    TooManyVertices { n: usize, max: usize },
}

/// Largest vertex count for which [`VertexSubset`] masks are available.
pub const MAX_SUBSET_VERTICES: usize = 62;

/// A simple graph with a vertex labeling into `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KGraph {
    ids: Vec<VertexId>,
    index: BTreeMap<VertexId, usize>,
    edges: BTreeSet<(usize, usize)>,
    labels: Vec<Label>,
    adjacency: Vec<Vec<usize>>,
    k: Label,
}

impl KGraph {
    /// Builds a graph from explicit parts. `labels` pairs with `ids`
    /// positionally; `k` is the declared label bound (labels may leave some
    /// classes empty). Edges are given by external ids.
    pub fn new(
        ids: Vec<VertexId>,
        labels: Vec<Label>,
        edges: &[(VertexId, VertexId)],
        k: Label,
    ) -> Result<Self, GraphError> {
        assert_eq!(ids.len(), labels.len(), "one label per vertex");
        let mut index = BTreeMap::new();
        for (pos, &id) in ids.iter().enumerate() {
            if id == 0 {
                return Err(GraphError::ZeroVertexId);
            }
            if index.insert(id, pos).is_some() {
                return Err(GraphError::DuplicateVertexId(id));
            }
        }
        for &l in &labels {
            if l == 0 {
                return Err(GraphError::ZeroLabel);
            }
        }
        let mut g = KGraph {
            ids,
            index,
            edges: BTreeSet::new(),
            labels,
            adjacency: Vec::new(),
            k: k.max(1),
        };
        g.adjacency = vec![Vec::new(); g.ids.len()];
        for &(u, v) in edges {
            g.insert_edge(u, v)?;
        }
        Ok(g)
    }

    /// Graph with vertices `1..=n`, all labels 1.
    pub fn unlabeled(n: usize, edges: &[(VertexId, VertexId)]) -> Result<Self, GraphError> {
        KGraph::new((1..=n as VertexId).collect(), vec![1; n], edges, 1)
    }

    fn insert_edge(&mut self, u: VertexId, v: VertexId) -> Result<(), GraphError> {
        let ui = self.dense_index(u)?;
        let vi = self.dense_index(v)?;
        if ui == vi {
            return Err(GraphError::SelfLoop(u));
        }
        let pair = (ui.min(vi), ui.max(vi));
        if !self.edges.insert(pair) {
            return Err(GraphError::DuplicateEdge(u, v));
        }
        self.adjacency[ui].push(vi);
        self.adjacency[vi].push(ui);
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.ids.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn k(&self) -> Label {
        self.k
    }

    /// External ids in dense-index order.
    pub fn vertex_ids(&self) -> &[VertexId] {
        &self.ids
    }

    pub fn dense_index(&self, id: VertexId) -> Result<usize, GraphError> {
        self.index
            .get(&id)
            .copied()
            .ok_or(GraphError::UnknownVertex(id))
    }

    pub fn label_of_index(&self, idx: usize) -> Label {
        self.labels[idx]
    }

    pub fn label_of(&self, id: VertexId) -> Result<Label, GraphError> {
        Ok(self.labels[self.dense_index(id)?])
    }

    /// Edges as normalized dense-index pairs, sorted.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    /// Edges as external id pairs, in storage order.
    pub fn edge_ids(&self) -> Vec<(VertexId, VertexId)> {
        self.edges
            .iter()
            .map(|&(u, v)| (self.ids[u], self.ids[v]))
            .collect()
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> Result<bool, GraphError> {
        let ui = self.dense_index(u)?;
        let vi = self.dense_index(v)?;
        if ui == vi {
            return Ok(false);
        }
        Ok(self.edges.contains(&(ui.min(vi), ui.max(vi))))
    }

    /// Splits the edge set by a subset `S`: edges inside `S`, edges crossing
    /// between `S` and its complement, edges inside the complement. The three
    /// counts always sum to the edge count.
    pub fn partition_edge_counts(&self, s: &VertexSubset) -> (u64, u64, u64) {
        let (mut e11, mut e12, mut e22) = (0u64, 0u64, 0u64);
        for &(u, v) in &self.edges {
            match (s.contains_index(u), s.contains_index(v)) {
                (true, true) => e11 += 1,
                (false, false) => e22 += 1,
                _ => e12 += 1,
            }
        }
        (e11, e12, e22)
    }

    /// True iff no edge has both endpoints in `s`.
    pub fn is_independent(&self, s: &VertexSubset) -> bool {
        self.edges
            .iter()
            .all(|&(u, v)| !(s.contains_index(u) && s.contains_index(v)))
    }

    /// True iff every vertex is in `s` or adjacent to a member of `s`.
    pub fn is_dominating(&self, s: &VertexSubset) -> bool {
        (0..self.n())
            .all(|v| s.contains_index(v) || self.adjacency[v].iter().any(|&u| s.contains_index(u)))
    }

    /// Number of isolated vertices.
    pub fn iso_count(&self) -> usize {
        self.adjacency.iter().filter(|a| a.is_empty()).count()
    }

    /// Map degree -> number of vertices with that degree.
    pub fn degree_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        for a in &self.adjacency {
            *hist.entry(a.len() as u64).or_insert(0) += 1;
        }
        hist
    }

    /// Parses the graph text format: first line `n m`, then `m` lines `u v`
    /// with 1-based endpoints in `1..=n`, then optionally the word `labels`
    /// followed by `n` label values. Blank lines and `#` comments are
    /// ignored. Duplicate edges and loops are rejected with the offending
    /// line number.
    pub fn parse(text: &str) -> Result<Self, GraphError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| {
                let body = match l.find('#') {
                    Some(pos) => &l[..pos],
                    None => l,
                };
                (i + 1, body.trim())
            })
            .filter(|(_, l)| !l.is_empty());

        let (line_no, header) = lines.next().ok_or_else(|| GraphError::Parse {
            line: 1,
            msg: "empty graph file, expected `n m` header".into(),
        })?;
        let mut header_it = header.split_whitespace();
        let n: usize = parse_field(header_it.next(), line_no, "vertex count")?;
        let m: usize = parse_field(header_it.next(), line_no, "edge count")?;
        if header_it.next().is_some() {
            return Err(GraphError::Parse {
                line: line_no,
                msg: "header must be exactly `n m`".into(),
            });
        }

        let mut edges: Vec<(VertexId, VertexId)> = Vec::with_capacity(m);
        let mut seen: BTreeSet<(VertexId, VertexId)> = BTreeSet::new();
        for _ in 0..m {
            let (line_no, line) = lines.next().ok_or_else(|| GraphError::Parse {
                line: 0,
                msg: format!("expected {m} edge lines, file ended early"),
            })?;
            let mut it = line.split_whitespace();
            let u: VertexId = parse_field(it.next(), line_no, "edge endpoint")?;
            let v: VertexId = parse_field(it.next(), line_no, "edge endpoint")?;
            if it.next().is_some() {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: "edge line must be exactly `u v`".into(),
                });
            }
            if u == 0 || v == 0 || u > n as VertexId || v > n as VertexId {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: format!("edge endpoint out of range 1..={n}"),
                });
            }
            if u == v {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: format!("loop at vertex {u}"),
                });
            }
            let key = (u.min(v), u.max(v));
            if !seen.insert(key) {
                return Err(GraphError::Parse {
                    line: line_no,
                    msg: format!("duplicate edge {u} {v}"),
                });
            }
            edges.push((u, v));
        }

        // optional trailing labels group; token count must be exactly n
        let rest: Vec<(usize, &str)> = lines.collect();
        let labels = if rest.is_empty() {
            vec![1; n]
        } else {
            let first_line = rest[0].0;
            let mut tokens: Vec<&str> = Vec::new();
            for (_, l) in &rest {
                tokens.extend(l.split_whitespace());
            }
            if tokens.first() != Some(&"labels") {
                return Err(GraphError::Parse {
                    line: first_line,
                    msg: "expected `labels l_1 ... l_n` or end of file".into(),
                });
            }
            if tokens.len() != n + 1 {
                return Err(GraphError::Parse {
                    line: first_line,
                    msg: format!("expected {n} labels, got {}", tokens.len() - 1),
                });
            }
            tokens[1..]
                .iter()
                .map(|t| {
                    t.parse::<Label>()
                        .ok()
                        .filter(|&l| l >= 1)
                        .ok_or_else(|| GraphError::Parse {
                            line: first_line,
                            msg: format!("bad label `{t}`"),
                        })
                })
                .collect::<Result<Vec<_>, _>>()?
        };
        let k = labels.iter().copied().max().unwrap_or(1);
        KGraph::new((1..=n as VertexId).collect(), labels, &edges, k)
    }

    /// Renders in the same text format `parse` accepts.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.n(), self.edge_count());
        for (u, v) in self.edge_ids() {
            out.push_str(&format!("{u} {v}\n"));
        }
        if self.labels.iter().any(|&l| l != 1) {
            out.push_str("labels");
            for l in &self.labels {
                out.push_str(&format!(" {l}"));
            }
            out.push('\n');
        }
        out
    }
}

fn parse_field<T: std::str::FromStr>(
    tok: Option<&str>,
    line: usize,
    what: &str,
) -> Result<T, GraphError> {
    tok.and_then(|t| t.parse().ok())
        .ok_or_else(|| GraphError::Parse {
            line,
            msg: format!("expected {what}"),
        })
}

/// A subset of the vertices of a specific [`KGraph`], stored as a bitmask
/// over dense indices. Only graphs with at most [`MAX_SUBSET_VERTICES`]
/// vertices support subsets; that is far beyond anything enumerable anyway.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VertexSubset {
    mask: u64,
    n: usize,
}

impl VertexSubset {
    pub fn empty(g: &KGraph) -> Result<Self, GraphError> {
        Self::from_index_mask(g, 0)
    }

    pub fn from_index_mask(g: &KGraph, mask: u64) -> Result<Self, GraphError> {
        if g.n() > MAX_SUBSET_VERTICES {
            return Err(GraphError::TooManyVertices {
                n: g.n(),
                max: MAX_SUBSET_VERTICES,
            });
        }
        debug_assert!(g.n() == 64 || mask < (1u64 << g.n()));
        Ok(VertexSubset { mask, n: g.n() })
    }

    pub fn from_ids<I: IntoIterator<Item = VertexId>>(
        g: &KGraph,
        ids: I,
    ) -> Result<Self, GraphError> {
        let mut s = Self::empty(g)?;
        for id in ids {
            s.mask |= 1u64 << g.dense_index(id)?;
        }
        Ok(s)
    }

    pub fn contains_index(&self, idx: usize) -> bool {
        idx < self.n && (self.mask >> idx) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }
}
