//! Hand-rolled lexer and recursive-descent parser for the term grammar
//!
//! ```text
//! term := 'v' '(' int ',' int ')'
//!       | 'U' '(' term ',' term ')'
//!       | 'r' '(' int '->' int ',' term ')'
//!       | 'e' '(' int ',' int ',' term ')'
//! ```
//!
//! Whitespace is insignificant; `#` starts a comment running to end of line.

use std::collections::BTreeSet;

use super::{CwTerm, Span, TermError, TermKind, MAX_TERM_DEPTH};
use crate::graph::{Label, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Tok {
    Sym(char),
    Arrow,
    Int(u64),
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
}

impl<'a> Lexer<'a> {
    fn new(src: &'a str) -> Self {
        Lexer {
            src: src.as_bytes(),
            pos: 0,
            line: 1,
            col: 1,
        }
    }

    fn bump(&mut self) -> Option<u8> {
        let b = *self.src.get(self.pos)?;
        self.pos += 1;
        if b == b'\n' {
            self.line += 1;
            self.col = 1;
        } else {
            self.col += 1;
        }
        Some(b)
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_trivia(&mut self) {
        loop {
            match self.peek() {
                Some(b) if b.is_ascii_whitespace() => {
                    self.bump();
                }
                Some(b'#') => {
                    while let Some(b) = self.peek() {
                        if b == b'\n' {
                            break;
                        }
                        self.bump();
                    }
                }
                _ => return,
            }
        }
    }

    /// Next token with the span where it starts; `None` at end of input.
    fn next_tok(&mut self) -> Result<Option<(Tok, Span)>, TermError> {
        self.skip_trivia();
        let span = Span {
            line: self.line,
            col: self.col,
        };
        let b = match self.peek() {
            Some(b) => b,
            None => return Ok(None),
        };
        let tok = match b {
            b'(' | b')' | b',' | b'v' | b'U' | b'r' | b'e' => {
                self.bump();
                Tok::Sym(b as char)
            }
            b'-' => {
                self.bump();
                if self.peek() == Some(b'>') {
                    self.bump();
                    Tok::Arrow
                } else {
                    return Err(syntax(span, "expected `->`"));
                }
            }
            b'0'..=b'9' => {
                let mut value: u64 = 0;
                while let Some(d) = self.peek() {
                    if !d.is_ascii_digit() {
                        break;
                    }
                    value = value
                        .checked_mul(10)
                        .and_then(|v| v.checked_add((d - b'0') as u64))
                        .ok_or_else(|| syntax(span, "integer too large"))?;
                    self.bump();
                }
                Tok::Int(value)
            }
            other => {
                return Err(syntax(
                    span,
                    &format!("unexpected character `{}`", other as char),
                ))
            }
        };
        Ok(Some((tok, span)))
    }
}

struct Parser<'a> {
    lexer: Lexer<'a>,
    lookahead: Option<(Tok, Span)>,
}

fn syntax(span: Span, msg: &str) -> TermError {
    TermError::Syntax {
        line: span.line,
        col: span.col,
        msg: msg.to_string(),
    }
}

impl<'a> Parser<'a> {
    fn new(src: &'a str) -> Result<Self, TermError> {
        let mut lexer = Lexer::new(src);
        let lookahead = lexer.next_tok()?;
        Ok(Parser { lexer, lookahead })
    }

    fn advance(&mut self) -> Result<Option<(Tok, Span)>, TermError> {
        let cur = self.lookahead.take();
        self.lookahead = self.lexer.next_tok()?;
        Ok(cur)
    }

    fn eof_span(&self) -> Span {
        Span {
            line: self.lexer.line,
            col: self.lexer.col,
        }
    }

    fn expect_sym(&mut self, c: char) -> Result<Span, TermError> {
        match self.advance()? {
            Some((Tok::Sym(got), span)) if got == c => Ok(span),
            Some((_, span)) => Err(syntax(span, &format!("expected `{c}`"))),
            None => Err(syntax(
                self.eof_span(),
                &format!("expected `{c}`, found end of input"),
            )),
        }
    }

    fn expect_int(&mut self, what: &str) -> Result<(u64, Span), TermError> {
        match self.advance()? {
            Some((Tok::Int(v), span)) => Ok((v, span)),
            Some((_, span)) => Err(syntax(span, &format!("expected {what}"))),
            None => Err(syntax(
                self.eof_span(),
                &format!("expected {what}, found end of input"),
            )),
        }
    }

    fn expect_label(&mut self) -> Result<(Label, Span), TermError> {
        let (v, span) = self.expect_int("a label")?;
        if v == 0 || v > Label::MAX as u64 {
            return Err(TermError::LabelOutOfRange { span });
        }
        Ok((v as Label, span))
    }

    fn expect_arrow(&mut self) -> Result<(), TermError> {
        match self.advance()? {
            Some((Tok::Arrow, _)) => Ok(()),
            Some((_, span)) => Err(syntax(span, "expected `->`")),
            None => Err(syntax(self.eof_span(), "expected `->`, found end of input")),
        }
    }

    fn term(&mut self, depth: usize) -> Result<CwTerm, TermError> {
        if depth >= MAX_TERM_DEPTH {
            return Err(TermError::TooDeep);
        }
        let (tok, span) = self
            .advance()?
            .ok_or_else(|| syntax(self.eof_span(), "expected a term, found end of input"))?;
        let head = match tok {
            Tok::Sym(c @ ('v' | 'U' | 'r' | 'e')) => c,
            _ => return Err(syntax(span, "expected one of `v`, `U`, `r`, `e`")),
        };
        self.expect_sym('(')?;
        let kind = match head {
            'v' => {
                let (vertex, vspan) = self.expect_int("a vertex id")?;
                if vertex == 0 {
                    return Err(syntax(vspan, "vertex ids start at 1"));
                }
                self.expect_sym(',')?;
                let (label, _) = self.expect_label()?;
                TermKind::Singleton {
                    vertex: vertex as VertexId,
                    label,
                }
            }
            'U' => {
                let a = self.term(depth + 1)?;
                self.expect_sym(',')?;
                let b = self.term(depth + 1)?;
                TermKind::Union(Box::new(a), Box::new(b))
            }
            'r' => {
                let (from, _) = self.expect_label()?;
                self.expect_arrow()?;
                let (to, _) = self.expect_label()?;
                if from == to {
                    return Err(TermError::EqualLabels { span });
                }
                self.expect_sym(',')?;
                let child = self.term(depth + 1)?;
                TermKind::Recolor {
                    from,
                    to,
                    child: Box::new(child),
                }
            }
            'e' => {
                let (p, _) = self.expect_label()?;
                self.expect_sym(',')?;
                let (q, _) = self.expect_label()?;
                if p == q {
                    return Err(TermError::EqualLabels { span });
                }
                self.expect_sym(',')?;
                let child = self.term(depth + 1)?;
                TermKind::EdgeAdd {
                    p,
                    q,
                    child: Box::new(child),
                }
            }
            _ => unreachable!(),
        };
        self.expect_sym(')')?;
        Ok(CwTerm { kind, span })
    }
}

/// Parses a single term. Beyond the grammar this checks that singleton
/// vertex ids are pairwise distinct and that nothing follows the term.
pub fn parse_term(text: &str) -> Result<CwTerm, TermError> {
    let mut parser = Parser::new(text)?;
    let term = parser.term(0)?;
    if let Some((_, span)) = parser.lookahead {
        return Err(syntax(span, "unexpected input after term"));
    }
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    check_distinct(&term, &mut seen)?;
    Ok(term)
}

fn check_distinct(t: &CwTerm, seen: &mut BTreeSet<VertexId>) -> Result<(), TermError> {
    match &t.kind {
        TermKind::Singleton { vertex, .. } => {
            if !seen.insert(*vertex) {
                return Err(TermError::DuplicateVertex {
                    id: *vertex,
                    span: t.span,
                });
            }
            Ok(())
        }
        TermKind::Union(a, b) => {
            check_distinct(a, seen)?;
            check_distinct(b, seen)
        }
        TermKind::Recolor { child, .. } | TermKind::EdgeAdd { child, .. } => {
            check_distinct(child, seen)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_edge_add_over_union() {
        let t = parse_term("e(1,2, U(v(1,1), v(2,2)))").unwrap();
        let expected = CwTerm::edge_add(
            1,
            2,
            CwTerm::union(CwTerm::singleton(1, 1), CwTerm::singleton(2, 2)),
        );
        assert_eq!(t, expected);
    }

    #[test]
    fn parses_recolor() {
        let t = parse_term("r(2->1, v(3,2))").unwrap();
        assert_eq!(t, CwTerm::recolor(2, 1, CwTerm::singleton(3, 2)));
    }

    #[test]
    fn rejects_equal_labels_in_edge_add() {
        let err = parse_term("e(1,1, v(1,1))").unwrap_err();
        assert_eq!(
            err,
            TermError::EqualLabels {
                span: Span { line: 1, col: 1 }
            }
        );
    }

    #[test]
    fn rejects_duplicate_vertex_ids() {
        let err = parse_term("U(v(1,1), v(1,2))").unwrap_err();
        assert!(matches!(err, TermError::DuplicateVertex { id: 1, .. }));
    }

    #[test]
    fn rejects_label_zero_and_vertex_zero() {
        assert!(matches!(
            parse_term("v(1,0)"),
            Err(TermError::LabelOutOfRange { .. })
        ));
        assert!(matches!(
            parse_term("v(0,1)"),
            Err(TermError::Syntax { .. })
        ));
    }

    #[test]
    fn reports_error_position() {
        let err = parse_term("U(v(1,1),\n  w(2,2))").unwrap_err();
        assert_eq!(
            err,
            TermError::Syntax {
                line: 2,
                col: 3,
                msg: "unexpected character `w`".into()
            }
        );
    }

    #[test]
    fn rejects_trailing_input_and_eof() {
        assert!(matches!(
            parse_term("v(1,1) v(2,1)"),
            Err(TermError::Syntax { .. })
        ));
        assert!(matches!(
            parse_term("U(v(1,1),"),
            Err(TermError::Syntax { .. })
        ));
        assert!(matches!(parse_term(""), Err(TermError::Syntax { .. })));
    }

    #[test]
    fn skips_comments_and_whitespace() {
        let t = parse_term("# K_2\n e(1,2,\n   U(v(1,1), # left\n     v(2,2)))\n").unwrap();
        assert_eq!(t.render(), "e(1,2,U(v(1,1),v(2,2)))");
    }
}
