//! Bounded-width term builders for standard graph families.
//!
//! Every builder returns a term whose evaluation is exactly the target graph
//! and whose edge-creation sites are all irredundant, so both engine
//! variants accept the output. Widths: clique and biclique 2, path 3,
//! cycle 4, cograph 2, fallback `n` (one label per vertex).

use super::{parse_term, CwTerm, TermError};
use crate::graph::{KGraph, Label, VertexId};

/// Complete graph `K_n` on vertices `1..=n`, width 2 for `n >= 2`.
///
/// Grows one vertex at a time: the finished part keeps label 1, the new
/// vertex arrives with label 2, is connected to everything, and is folded
/// into label 1.
pub fn build_clique(n: usize) -> CwTerm {
    assert!(n >= 1);
    let mut term = CwTerm::singleton(1, 1);
    for v in 2..=n as VertexId {
        term = CwTerm::recolor(
            2,
            1,
            CwTerm::edge_add(1, 2, CwTerm::union(term, CwTerm::singleton(v, 2))),
        );
    }
    term
}

/// Complete bipartite graph `K_{a,b}`: left side `1..=a` labeled 1, right
/// side `a+1..=a+b` labeled 2, one edge creation. Width 2.
pub fn build_biclique(a: usize, b: usize) -> CwTerm {
    assert!(a >= 1 && b >= 1);
    let mut left = CwTerm::singleton(1, 1);
    for v in 2..=a as VertexId {
        left = CwTerm::union(left, CwTerm::singleton(v, 1));
    }
    let mut right = CwTerm::singleton(a as VertexId + 1, 2);
    for v in (a as VertexId + 2)..=(a + b) as VertexId {
        right = CwTerm::union(right, CwTerm::singleton(v, 2));
    }
    CwTerm::edge_add(1, 2, CwTerm::union(left, right))
}

/// Path `1-2-...-n`, width 3. Label roles: 1 retired interior, 2 the active
/// endpoint, 3 the incoming vertex.
pub fn build_path(n: usize) -> CwTerm {
    assert!(n >= 1);
    if n == 1 {
        return CwTerm::singleton(1, 1);
    }
    let mut term = CwTerm::singleton(1, 2);
    for v in 2..=n as VertexId {
        term = CwTerm::recolor(
            3,
            2,
            CwTerm::recolor(
                2,
                1,
                CwTerm::edge_add(2, 3, CwTerm::union(term, CwTerm::singleton(v, 3))),
            ),
        );
    }
    term
}

/// Cycle `1-2-...-n-1` for `n >= 3`, width 4. The first vertex keeps its own
/// label until the closing edge creation; otherwise the construction is the
/// path one shifted up a label.
pub fn build_cycle(n: usize) -> Result<CwTerm, TermError> {
    if n < 3 {
        return Err(TermError::CycleTooShort(n));
    }
    // anchor 1 has label 2, the growing endpoint uses label 3, arrivals 4
    let mut term = CwTerm::edge_add(
        2,
        3,
        CwTerm::union(CwTerm::singleton(1, 2), CwTerm::singleton(2, 3)),
    );
    for v in 3..=n as VertexId {
        term = CwTerm::recolor(
            4,
            3,
            CwTerm::recolor(
                3,
                1,
                CwTerm::edge_add(3, 4, CwTerm::union(term, CwTerm::singleton(v, 4))),
            ),
        );
    }
    Ok(CwTerm::edge_add(2, 3, term))
}

/// Shape of a cograph: leaves are vertex ids, internal nodes are disjoint
/// unions or joins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Cotree {
    Leaf(VertexId),
    Union(Box<Cotree>, Box<Cotree>),
    Join(Box<Cotree>, Box<Cotree>),
}

impl Cotree {
    /// Parses the mini-syntax `3`, `U(a,b)`, `J(a,b)` used by the CLI.
    pub fn parse(text: &str) -> Result<Cotree, TermError> {
        // Reuse the term lexer's conventions by translating: J/U keep their
        // arity, leaves are bare integers. Small enough to parse by hand.
        let mut chars = text.char_indices().peekable();
        let tree = Self::parse_inner(&mut chars)?;
        for (_, c) in chars {
            if !c.is_whitespace() {
                return Err(TermError::Syntax {
                    line: 1,
                    col: 1,
                    msg: format!("unexpected input after cotree: `{c}`"),
                });
            }
        }
        Ok(tree)
    }

    fn parse_inner(
        chars: &mut std::iter::Peekable<std::str::CharIndices>,
    ) -> Result<Cotree, TermError> {
        while matches!(chars.peek(), Some((_, c)) if c.is_whitespace()) {
            chars.next();
        }
        let err = |msg: &str| TermError::Syntax {
            line: 1,
            col: 1,
            msg: msg.to_string(),
        };
        match chars.peek().copied() {
            Some((_, c @ ('U' | 'J'))) => {
                chars.next();
                while matches!(chars.peek(), Some((_, w)) if w.is_whitespace()) {
                    chars.next();
                }
                if !matches!(chars.next(), Some((_, '('))) {
                    return Err(err("expected `(`"));
                }
                let a = Self::parse_inner(chars)?;
                while matches!(chars.peek(), Some((_, w)) if w.is_whitespace()) {
                    chars.next();
                }
                if !matches!(chars.next(), Some((_, ','))) {
                    return Err(err("expected `,`"));
                }
                let b = Self::parse_inner(chars)?;
                while matches!(chars.peek(), Some((_, w)) if w.is_whitespace()) {
                    chars.next();
                }
                if !matches!(chars.next(), Some((_, ')'))) {
                    return Err(err("expected `)`"));
                }
                let (a, b) = (Box::new(a), Box::new(b));
                Ok(if c == 'U' {
                    Cotree::Union(a, b)
                } else {
                    Cotree::Join(a, b)
                })
            }
            Some((_, c)) if c.is_ascii_digit() => {
                let mut value: u64 = 0;
                while let Some((_, d)) = chars.peek().copied() {
                    if let Some(digit) = d.to_digit(10) {
                        value = value
                            .checked_mul(10)
                            .and_then(|v| v.checked_add(digit as u64))
                            .ok_or_else(|| err("vertex id too large"))?;
                        chars.next();
                    } else {
                        break;
                    }
                }
                if value == 0 {
                    return Err(err("vertex ids start at 1"));
                }
                Ok(Cotree::Leaf(value))
            }
            _ => Err(err("expected `U(`, `J(`, or a vertex id")),
        }
    }
}

/// Cograph from its cotree, width 2. Invariant: the term for each subtree
/// leaves all of its vertices labeled 1.
pub fn build_cograph(cotree: &Cotree) -> Result<CwTerm, TermError> {
    let term = match cotree {
        Cotree::Leaf(v) => CwTerm::singleton(*v, 1),
        Cotree::Union(a, b) => CwTerm::union(build_cograph(a)?, build_cograph(b)?),
        Cotree::Join(a, b) => CwTerm::recolor(
            2,
            1,
            CwTerm::edge_add(
                1,
                2,
                CwTerm::union(build_cograph(a)?, CwTerm::recolor(1, 2, build_cograph(b)?)),
            ),
        ),
    };
    // Surfaces duplicate leaf ids with the standard error.
    parse_term(&term.render())
}

/// Builds a family term from the mini-syntax `name:args` used by the CLI
/// and the C API: `clique:N`, `biclique:A,B`, `path:N`, `cycle:N`,
/// `cograph:TREE`. The fallback family is not covered here because it needs
/// a graph argument.
pub fn build_family(spec: &str) -> Result<CwTerm, TermError> {
    let (name, args) = spec.split_once(':').unwrap_or((spec, ""));
    let bad = |msg: String| TermError::BadFamilySpec(msg);
    let parse_n = |what: &str| -> Result<usize, TermError> {
        args.parse::<usize>()
            .ok()
            .filter(|&n| n >= 1)
            .ok_or_else(|| {
                bad(format!(
                    "family {what} needs one positive parameter, e.g. `{what}:5`"
                ))
            })
    };
    match name {
        "clique" => Ok(build_clique(parse_n("clique")?)),
        "path" => Ok(build_path(parse_n("path")?)),
        "cycle" => build_cycle(parse_n("cycle")?),
        "biclique" => {
            let (a, b) = args
                .split_once(',')
                .and_then(|(a, b)| {
                    Some((
                        a.trim().parse::<usize>().ok()?,
                        b.trim().parse::<usize>().ok()?,
                    ))
                })
                .filter(|&(a, b)| a >= 1 && b >= 1)
                .ok_or_else(|| {
                    bad("family biclique needs two positive parameters, e.g. `biclique:3,3`".into())
                })?;
            Ok(build_biclique(a, b))
        }
        "cograph" => build_cograph(&Cotree::parse(args)?),
        other => Err(bad(format!("unknown family `{other}`"))),
    }
}

/// Expression of width `n` for an arbitrary graph: every vertex gets its own
/// label and each edge is created by its own irredundant `e` node.
pub fn build_fallback(g: &KGraph) -> Result<CwTerm, TermError> {
    let ids = g.vertex_ids();
    if ids.is_empty() {
        return Err(TermError::EmptyGraph);
    }
    let mut term = CwTerm::singleton(ids[0], 1);
    for (idx, &id) in ids.iter().enumerate().skip(1) {
        term = CwTerm::union(term, CwTerm::singleton(id, idx as Label + 1));
    }
    for (u, v) in g.edges() {
        term = CwTerm::edge_add(u as Label + 1, v as Label + 1, term);
    }
    Ok(term)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    fn edge_set(g: &KGraph) -> BTreeSet<(VertexId, VertexId)> {
        g.edge_ids().into_iter().collect()
    }

    #[test]
    fn clique_matches_direct_construction() {
        for n in 1..=6 {
            let t = build_clique(n);
            let g = t.evaluate().unwrap();
            assert_eq!(g.n(), n);
            assert_eq!(g.edge_count(), n * (n - 1) / 2);
            assert!(t.width() <= 2);
            assert!(t.validate().unwrap().irredundant);
        }
        let k3 = build_clique(3).evaluate().unwrap();
        assert_eq!(edge_set(&k3), BTreeSet::from([(1, 2), (1, 3), (2, 3)]));
    }

    #[test]
    fn biclique_matches_direct_construction() {
        let t = build_biclique(2, 2);
        let g = t.evaluate().unwrap();
        let mut expected = BTreeSet::new();
        for u in 1..=2 {
            for v in 3..=4 {
                expected.insert((u, v));
            }
        }
        assert_eq!(edge_set(&g), expected);
        assert_eq!(t.width(), 2);
        assert!(t.validate().unwrap().irredundant);
    }

    #[test]
    fn path_matches_direct_construction() {
        for n in 1..=8 {
            let t = build_path(n);
            let g = t.evaluate().unwrap();
            let expected: BTreeSet<(VertexId, VertexId)> =
                (1..n as VertexId).map(|v| (v, v + 1)).collect();
            assert_eq!(edge_set(&g), expected);
            assert!(t.width() <= 3);
            assert!(t.validate().unwrap().irredundant);
        }
        assert_eq!(build_path(5).width(), 3);
    }

    #[test]
    fn cycle_matches_direct_construction() {
        assert!(matches!(build_cycle(2), Err(TermError::CycleTooShort(2))));
        for n in 3..=8 {
            let t = build_cycle(n).unwrap();
            let g = t.evaluate().unwrap();
            let mut expected: BTreeSet<(VertexId, VertexId)> =
                (1..n as VertexId).map(|v| (v, v + 1)).collect();
            expected.insert((1, n as VertexId));
            assert_eq!(edge_set(&g), expected);
            assert!(t.width() <= 4);
            assert!(t.validate().unwrap().irredundant);
        }
    }

    #[test]
    fn cograph_join_and_union() {
        // J(U(1,2),3): vertices 1,2 joined to 3 -> path 1-3-2
        let tree = Cotree::parse("J(U(1,2),3)").unwrap();
        let t = build_cograph(&tree).unwrap();
        let g = t.evaluate().unwrap();
        assert_eq!(edge_set(&g), BTreeSet::from([(1, 3), (2, 3)]));
        assert_eq!(t.width(), 2);
        assert!(t.validate().unwrap().irredundant);

        // complete join of two unions -> K_{2,2}
        let tree = Cotree::parse("J(U(1,2),U(3,4))").unwrap();
        let g = build_cograph(&tree).unwrap().evaluate().unwrap();
        assert_eq!(g.edge_count(), 4);

        assert!(
            Cotree::parse("J(1,1)").is_err()
                || build_cograph(&Cotree::parse("J(1,1)").unwrap()).is_err()
        );
    }

    #[test]
    fn fallback_reproduces_any_graph() {
        let g = KGraph::unlabeled(4, &[(1, 2), (2, 3), (3, 4), (4, 1)]).unwrap();
        let t = build_fallback(&g).unwrap();
        assert_eq!(t.width(), 4);
        let back = t.evaluate().unwrap();
        assert_eq!(edge_set(&back), edge_set(&g));
        assert_eq!(back.n(), g.n());
        assert!(t.validate().unwrap().irredundant);
    }

    #[test]
    fn fallback_keeps_external_ids() {
        let g = KGraph::new(vec![10, 20, 30], vec![1, 1, 1], &[(10, 30)], 1).unwrap();
        let t = build_fallback(&g).unwrap();
        let back = t.evaluate().unwrap();
        assert_eq!(back.vertex_ids(), &[10, 20, 30]);
        assert!(back.has_edge(10, 30).unwrap());
    }
}
