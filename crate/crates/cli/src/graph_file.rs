//! Line-oriented graph files.
//!
//! ```text
//! # comment
//! vertex a
//! vertex b
//! edge x a -> {a, b}
//! edge y b -> a
//! ```
//!
//! A range with more than one vertex makes the file an ultragraph.

use std::collections::HashMap;
use std::fmt;

use dr_entropy::graph_model::Ultragraph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}, column {}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

/// A token with its 1-based column.
#[derive(Debug, Clone, Copy)]
struct Tok<'a> {
    text: &'a str,
    column: usize,
}

fn tokenize(line: &str) -> Vec<Tok<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    let chars: Vec<(usize, char)> = line.char_indices().collect();
    let column_of = |byte: usize| line[..byte].chars().count() + 1;
    let mut i = 0;
    while i < chars.len() {
        let (b, c) = chars[i];
        let single = matches!(c, '{' | '}' | ',');
        let arrow = c == '-' && chars.get(i + 1).map(|&(_, d)| d) == Some('>');
        if c.is_whitespace() || single || arrow {
            if let Some(s) = start.take() {
                out.push(Tok { text: &line[s..b], column: column_of(s) });
            }
            if single {
                out.push(Tok { text: &line[b..b + 1], column: column_of(b) });
            } else if arrow {
                out.push(Tok { text: &line[b..b + 2], column: column_of(b) });
                i += 1;
            }
        } else if start.is_none() {
            start = Some(b);
        }
        i += 1;
    }
    if let Some(s) = start {
        out.push(Tok { text: &line[s..], column: column_of(s) });
    }
    out
}

fn valid_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '.' | '\'' | '-'))
}

struct Cursor<'a> {
    line: usize,
    toks: Vec<Tok<'a>>,
    pos: usize,
    end_column: usize,
}

impl<'a> Cursor<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> ParseError {
        ParseError { line: self.line, column, message: message.into() }
    }

    fn next(&mut self, what: &str) -> Result<Tok<'a>, ParseError> {
        let t = self.toks.get(self.pos).copied().ok_or_else(|| self.err(self.end_column, format!("expected {what}")))?;
        self.pos += 1;
        Ok(t)
    }

    fn name(&mut self, what: &str) -> Result<Tok<'a>, ParseError> {
        let t = self.next(what)?;
        if !valid_name(t.text) {
            return Err(self.err(t.column, format!("expected {what}, found {:?}", t.text)));
        }
        Ok(t)
    }

    fn expect(&mut self, text: &str) -> Result<(), ParseError> {
        let t = self.next(&format!("{text:?}"))?;
        if t.text != text {
            return Err(self.err(t.column, format!("expected {text:?}, found {:?}", t.text)));
        }
        Ok(())
    }

    fn finish(&self) -> Result<(), ParseError> {
        match self.toks.get(self.pos) {
            Some(t) => Err(self.err(t.column, format!("unexpected {:?}", t.text))),
            None => Ok(()),
        }
    }
}

pub fn parse_graph(name: &str, text: &str) -> Result<Ultragraph, ParseError> {
    let mut vertices: Vec<String> = Vec::new();
    let mut index: HashMap<String, usize> = HashMap::new();
    let mut edges: Vec<(String, usize, Vec<usize>)> = Vec::new();
    let mut edge_names: HashMap<String, usize> = HashMap::new();
    let mut last_line = 0;
    for (i, raw) in text.lines().enumerate() {
        last_line = i + 1;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokenize(line);
        if toks.is_empty() {
            continue;
        }
        let end_column = line.trim_end().chars().count() + 1;
        let mut cur = Cursor { line: i + 1, toks, pos: 0, end_column };
        let kw = cur.next("a declaration")?;
        match kw.text {
            "vertex" => {
                let v = cur.name("a vertex name")?;
                cur.finish()?;
                if index.contains_key(v.text) {
                    return Err(cur.err(v.column, format!("vertex {} declared twice", v.text)));
                }
                index.insert(v.text.to_string(), vertices.len());
                vertices.push(v.text.to_string());
            }
            "edge" => {
                let e = cur.name("an edge name")?;
                if edge_names.contains_key(e.text) {
                    return Err(cur.err(e.column, format!("edge {} declared twice", e.text)));
                }
                let src = cur.name("a source vertex")?;
                let s = *index.get(src.text).ok_or_else(|| cur.err(src.column, format!("unknown vertex {}", src.text)))?;
                cur.expect("->")?;
                let mut range = Vec::new();
                let mut lookup = |cur: &Cursor, t: Tok| -> Result<(), ParseError> {
                    let v = *index.get(t.text).ok_or_else(|| cur.err(t.column, format!("unknown vertex {}", t.text)))?;
                    if range.contains(&v) {
                        return Err(cur.err(t.column, format!("vertex {} repeated in range", t.text)));
                    }
                    range.push(v);
                    Ok(())
                };
                let first = cur.next("a range")?;
                if first.text == "{" {
                    loop {
                        let t = cur.name("a range vertex")?;
                        lookup(&cur, t)?;
                        let sep = cur.next("\",\" or \"}\"")?;
                        match sep.text {
                            "," => continue,
                            "}" => break,
                            other => return Err(cur.err(sep.column, format!("expected \",\" or \"}}\", found {other:?}"))),
                        }
                    }
                } else if valid_name(first.text) {
                    lookup(&cur, first)?;
                } else {
                    return Err(cur.err(first.column, format!("expected a range, found {:?}", first.text)));
                }
                cur.finish()?;
                edge_names.insert(e.text.to_string(), edges.len());
                edges.push((e.text.to_string(), s, range));
            }
            "emitter" => {
                return Err(cur.err(
                    kw.column,
                    "emitter declarations are not supported: a file lists finitely many edges, so no vertex set emits infinitely many",
                ))
            }
            other => return Err(cur.err(kw.column, format!("unknown declaration {other:?}"))),
        }
    }
    if edges.is_empty() {
        return Err(ParseError { line: last_line.max(1), column: 1, message: "no edges declared".into() });
    }
    Ultragraph::explicit(name, vertices, edges)
        .map_err(|e| ParseError { line: last_line + 1, column: 1, message: format!("at end of input: {e}") })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_ladder_h2() {
        let text = "# H_2\nvertex v0\nvertex v1\nvertex v2\n\
                    edge e1 v0 -> {v1}\nedge f1 v1 -> v0\nedge e2 v1 -> {v2}  # tail comment\nedge f2 v2 -> {v1}\n";
        let g = parse_graph("h2", text).unwrap();
        assert_eq!(g.edge_count(), Some(4));
        assert_eq!(g.vertex_count(), Some(3));
        assert!(g.is_graph());
    }

    #[test]
    fn set_ranges_make_an_ultragraph() {
        let g = parse_graph("u", "vertex a\nvertex b\nedge x a -> {a,b}\nedge y b -> {a}\n").unwrap();
        assert!(!g.is_graph());
    }

    #[test]
    fn errors_carry_positions() {
        let cases = [
            ("vertex a\nedge x a -> {b}\n", 2, 14),
            ("vertex a\nedge x a {a}\n", 2, 10),
            ("vertex a\nvertex a\n", 2, 8),
            ("vertex a\nedge x a -> {a\n", 2, 15),
            ("vertex a\n  node b\n", 2, 3),
            ("vertex a\nemitter {a}\n", 2, 1),
            ("vertex a\nedge x a -> a extra\n", 2, 15),
        ];
        for (text, line, column) in cases {
            let e = parse_graph("bad", text).unwrap_err();
            assert_eq!((e.line, e.column), (line, column), "{text:?}: {e}");
        }
    }

    #[test]
    fn empty_files_are_rejected() {
        let e = parse_graph("empty", "# nothing\nvertex a\n").unwrap_err();
        assert_eq!((e.line, e.column), (2, 1));
    }
}
