//! Graph specifications on the command line.
//!
//! ```text
//! path:7   star:5   ary:2,8   cat:1,0,2,1   lobster:(1,2),(0),(3)
//! edges:0-1,1-2,2-0
//! ```
//!
//! A file may hold one of the above or a plain edge list: one `u v` pair per
//! line, `#` comments, and an optional `n <count>` line for isolated
//! trailing ids.

use std::fmt;
use std::path::Path;

use peg_core::graph::{build_family, FamilySpec, Graph};
use peg_core::Vertex;
use sha2::{Digest, Sha256};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{source_name}:{line}:{column}: {message}")]
pub struct ParseError {
    pub source_name: String,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GraphSpec {
    Family(FamilySpec),
    Edges { vertex_count: usize, edges: Vec<(Vertex, Vertex)> },
}

impl GraphSpec {
    pub fn build(&self) -> peg_core::Result<Graph> {
        match self {
            GraphSpec::Family(f) => build_family(f),
            GraphSpec::Edges { vertex_count, edges } => Graph::from_edges(*vertex_count, edges),
        }
    }

    /// Stable cache key: SHA-256 of the family string, or of the sorted
    /// edge list.
    pub fn key(&self) -> String {
        let canonical = match self {
            GraphSpec::Family(f) => f.to_string(),
            GraphSpec::Edges { vertex_count, edges } => {
                let mut sorted: Vec<(Vertex, Vertex)> =
                    edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
                sorted.sort_unstable();
                let body: Vec<String> = sorted.iter().map(|(u, v)| format!("{u}-{v}")).collect();
                format!("edges:{vertex_count}:{}", body.join(","))
            }
        };
        let digest = Sha256::digest(canonical.as_bytes());
        digest.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for GraphSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphSpec::Family(spec) => write!(f, "{spec}"),
            GraphSpec::Edges { vertex_count, edges } => {
                write!(f, "edges({vertex_count} vertices, {} edges)", edges.len())
            }
        }
    }
}

/// Parses an argument: an existing file is read, anything else is taken as
/// an inline specification.
pub fn parse_argument(arg: &str) -> Result<GraphSpec, ParseError> {
    let path = Path::new(arg);
    if !arg.contains(':') && path.is_file() {
        let text = std::fs::read_to_string(path).map_err(|e| ParseError {
            source_name: arg.to_string(),
            line: 0,
            column: 0,
            message: e.to_string(),
        })?;
        return parse_file(arg, &text);
    }
    parse_graph_spec(arg)
}

fn parse_file(name: &str, text: &str) -> Result<GraphSpec, ParseError> {
    let first = text
        .lines()
        .map(str::trim)
        .find(|l| !l.is_empty() && !l.starts_with('#'))
        .unwrap_or("");
    if first.contains(':') {
        return Parser::new(name, first).spec();
    }
    parse_edge_list(name, text)
}

/// Parses the inline family or `edges:` syntax.
pub fn parse_graph_spec(text: &str) -> Result<GraphSpec, ParseError> {
    Parser::new("spec", text.trim()).spec()
}

/// One `u v` pair per line.
pub fn parse_edge_list(name: &str, text: &str) -> Result<GraphSpec, ParseError> {
    let mut edges = Vec::new();
    let mut declared = None;
    let mut max_id = None;
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let err = |column: usize, message: String| ParseError {
            source_name: name.to_string(),
            line: i + 1,
            column,
            message,
        };
        let fields: Vec<(usize, &str)> = line
            .split_whitespace()
            .map(|f| (f.as_ptr() as usize - line.as_ptr() as usize + 1, f))
            .collect();
        match fields.as_slice() {
            [] => {}
            [(_, "n"), (col, count)] => {
                declared = Some(count.parse::<usize>().map_err(|_| err(*col, format!("expected a vertex count, found `{count}`")))?);
            }
            [(cu, u), (cv, v)] => {
                let u: Vertex = u.parse().map_err(|_| err(*cu, format!("expected a vertex id, found `{u}`")))?;
                let v: Vertex = v.parse().map_err(|_| err(*cv, format!("expected a vertex id, found `{v}`")))?;
                max_id = max_id.max(Some(u.max(v)));
                edges.push((u, v));
            }
            [(col, _), ..] => return Err(err(*col, "expected `u v` or `n <count>`".into())),
        }
    }
    let vertex_count = declared.unwrap_or(max_id.map_or(0, |m| m + 1));
    if vertex_count == 0 {
        return Err(ParseError {
            source_name: name.to_string(),
            line: 1,
            column: 1,
            message: "edge list is empty".into(),
        });
    }
    Ok(GraphSpec::Edges { vertex_count, edges })
}

struct Parser<'a> {
    name: &'a str,
    text: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn new(name: &'a str, text: &'a str) -> Self {
        Parser { name, text, pos: 0 }
    }

    fn error(&self, message: impl Into<String>) -> ParseError {
        ParseError {
            source_name: self.name.to_string(),
            line: 1,
            column: self.text[..self.pos].chars().count() + 1,
            message: message.into(),
        }
    }

    fn peek(&self) -> Option<char> {
        self.text[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, c: char) -> Result<(), ParseError> {
        if self.eat(c) {
            Ok(())
        } else {
            Err(self.error(match self.peek() {
                Some(found) => format!("expected `{c}`, found `{found}`"),
                None => format!("expected `{c}`, found end of input"),
            }))
        }
    }

    fn number(&mut self) -> Result<usize, ParseError> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error(match self.peek() {
                Some(found) => format!("expected a number, found `{found}`"),
                None => "expected a number, found end of input".to_string(),
            }));
        }
        self.text[start..self.pos].parse().map_err(|_| {
            self.pos = start;
            self.error("number out of range")
        })
    }

    fn list(&mut self) -> Result<Vec<usize>, ParseError> {
        let mut out = vec![self.number()?];
        while self.eat(',') {
            out.push(self.number()?);
        }
        Ok(out)
    }

    fn end(&self) -> Result<(), ParseError> {
        match self.peek() {
            None => Ok(()),
            Some(c) => Err(self.error(format!("unexpected `{c}`"))),
        }
    }

    fn spec(&mut self) -> Result<GraphSpec, ParseError> {
        let Some(colon) = self.text.find(':') else {
            return Err(self.error("expected `<family>:<parameters>`"));
        };
        let family = &self.text[..colon];
        self.pos = colon + 1;
        let parsed = match family {
            "path" => GraphSpec::Family(FamilySpec::Path(self.number()?)),
            "star" => GraphSpec::Family(FamilySpec::Star(self.number()?)),
            "ary" => {
                let branching = self.number()?;
                self.expect(',')?;
                let height = self.number()?;
                GraphSpec::Family(FamilySpec::Ary { branching, height })
            }
            "cat" => GraphSpec::Family(FamilySpec::Caterpillar(self.list()?)),
            "lobster" => {
                let mut spine = vec![self.legs()?];
                while self.eat(',') {
                    spine.push(self.legs()?);
                }
                GraphSpec::Family(FamilySpec::Lobster(spine))
            }
            "edges" => self.edges()?,
            other => {
                self.pos = 0;
                return Err(self.error(format!(
                    "unknown family `{other}` (expected path, star, ary, cat, lobster or edges)"
                )));
            }
        };
        self.end()?;
        if let GraphSpec::Family(f) = &parsed {
            if let Err(e) = f.validate() {
                self.pos = colon + 1;
                return Err(self.error(e.to_string()));
            }
        }
        Ok(parsed)
    }

    fn legs(&mut self) -> Result<Vec<usize>, ParseError> {
        self.expect('(')?;
        if self.eat(')') {
            return Ok(Vec::new());
        }
        let legs = self.list()?;
        self.expect(')')?;
        Ok(legs)
    }

    fn edges(&mut self) -> Result<GraphSpec, ParseError> {
        let mut edges = Vec::new();
        loop {
            let u = self.number()?;
            self.expect('-')?;
            let v = self.number()?;
            edges.push((u, v));
            if !self.eat(',') {
                break;
            }
        }
        let vertex_count = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
        Ok(GraphSpec::Edges { vertex_count, edges })
    }
}
