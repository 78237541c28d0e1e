//! Line-oriented text format for charts.
//!
//! ```text
//! chart 1
//! name theta
//! degree 4
//! vertex w1 white w1.0 w1.1 w1.2 w1.3 w1.4 w1.5
//! edge e1 2 w1.0 w2.3
//! edge s1 3 w1.1 -
//! hoop h1 2
//! place corner:w1.0 hoop:h1:0
//! outer corner:w1.0
//! ```
//!
//! The first record is the mandatory version header.  `vertex` lists the
//! counter-clockwise rotation by dart names; `edge` gives name, label, tail
//! dart and head dart (`-` for an open end).  Face references are either
//! `corner:<dart>` (the corner counter-clockwise after the dart) or
//! `hoop:<name>:<side>`.  Blank lines and lines starting with `#` are
//! ignored.  [`serialize`] writes records in a fixed order, so
//! `parse(serialize(c)) == c` and serializing is deterministic.

use std::fmt::Write as _;

use thiserror::Error;

use crate::model::{
    assemble, Chart, ChartSpec, EdgeSpec, FaceRef, FaceRefSpec, HoopSpec, ModelError,
    PlacementSpec, VertexKind, VertexSpec,
};

/// The only supported format version.
pub const FORMAT_VERSION: u32 = 1;

/// Errors raised by [`parse`].
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: unsupported format version {version}")]
    UnknownVersion { line: usize, version: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, ch) in line.char_indices() {
        if ch.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &line[s..i],
                    column: s + 1,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &line[s..],
            column: s + 1,
        });
    }
    out
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        column,
        message: message.into(),
    }
}

fn parse_face_ref(tok: &Token<'_>, line: usize) -> Result<FaceRefSpec, ParseError> {
    let parts: Vec<&str> = tok.text.split(':').collect();
    match parts.as_slice() {
        ["corner", d] if !d.is_empty() => Ok(FaceRefSpec::Corner(d.to_string())),
        ["hoop", h, s] if !h.is_empty() => {
            let side: u8 = s
                .parse()
                .map_err(|_| syntax(line, tok.column, format!("bad hoop side `{s}`")))?;
            Ok(FaceRefSpec::HoopSide(h.to_string(), side))
        }
        _ => Err(syntax(
            line,
            tok.column,
            format!("bad face reference `{}`", tok.text),
        )),
    }
}

/// Parse a chart document.
pub fn parse(text: &str) -> Result<Chart, ParseError> {
    let mut spec = ChartSpec::default();
    let mut version_seen = false;
    let mut degree_seen = false;
    let mut last_line = 0;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let toks = tokens(raw);
        if toks.is_empty() || toks[0].text.starts_with('#') {
            continue;
        }
        let kw = &toks[0];
        if !version_seen {
            if kw.text != "chart" {
                return Err(syntax(line, kw.column, "expected `chart <version>` header"));
            }
            let v = toks
                .get(1)
                .ok_or_else(|| syntax(line, raw.len() + 1, "missing format version"))?;
            if v.text != FORMAT_VERSION.to_string() {
                return Err(ParseError::UnknownVersion {
                    line,
                    version: v.text.to_string(),
                });
            }
            if toks.len() > 2 {
                return Err(syntax(line, toks[2].column, "unexpected token"));
            }
            version_seen = true;
            continue;
        }
        let need = |n: usize| -> Result<(), ParseError> {
            if toks.len() < n {
                Err(syntax(
                    line,
                    raw.len() + 1,
                    format!("`{}` record needs {} fields", kw.text, n - 1),
                ))
            } else {
                Ok(())
            }
        };
        let exact = |n: usize| -> Result<(), ParseError> {
            need(n)?;
            if toks.len() > n {
                Err(syntax(line, toks[n].column, "unexpected token"))
            } else {
                Ok(())
            }
        };
        let number = |t: &Token<'_>| -> Result<u32, ParseError> {
            t.text.parse::<u32>().map_err(|_| {
                syntax(
                    line,
                    t.column,
                    format!("expected a number, found `{}`", t.text),
                )
            })
        };
        match kw.text {
            "name" => {
                need(2)?;
                let start = toks[1].column - 1;
                spec.name = Some(raw[start..].trim_end().to_string());
            }
            "degree" => {
                exact(2)?;
                spec.degree = number(&toks[1])?;
                degree_seen = true;
            }
            "vertex" => {
                need(3)?;
                let kind = match toks[2].text {
                    "white" => VertexKind::White,
                    "black" => VertexKind::Black,
                    "crossing" => VertexKind::Crossing,
                    other => {
                        return Err(syntax(
                            line,
                            toks[2].column,
                            format!("unknown vertex kind `{other}`"),
                        ))
                    }
                };
                spec.vertices.push(VertexSpec {
                    name: toks[1].text.to_string(),
                    kind,
                    rotation: toks[3..].iter().map(|t| t.text.to_string()).collect(),
                });
            }
            "edge" => {
                exact(5)?;
                let end = |t: &Token<'_>| {
                    if t.text == "-" {
                        None
                    } else {
                        Some(t.text.to_string())
                    }
                };
                spec.edges.push(EdgeSpec {
                    name: toks[1].text.to_string(),
                    label: number(&toks[2])?,
                    tail: end(&toks[3]),
                    head: end(&toks[4]),
                });
            }
            "hoop" => {
                exact(3)?;
                spec.hoops.push(HoopSpec {
                    name: toks[1].text.to_string(),
                    label: number(&toks[2])?,
                });
            }
            "place" => {
                exact(3)?;
                spec.placements.push(PlacementSpec {
                    child: parse_face_ref(&toks[1], line)?,
                    parent: parse_face_ref(&toks[2], line)?,
                });
            }
            "outer" => {
                exact(2)?;
                spec.outer_face = Some(parse_face_ref(&toks[1], line)?);
            }
            other => return Err(syntax(line, kw.column, format!("unknown record `{other}`"))),
        }
    }
    if !version_seen {
        return Err(syntax(
            last_line.max(1),
            1,
            "missing `chart <version>` header",
        ));
    }
    if !degree_seen {
        return Err(syntax(last_line.max(1), 1, "missing `degree` record"));
    }
    Ok(assemble(&spec)?)
}

fn face_ref_text(chart: &Chart, f: FaceRef) -> String {
    match f {
        FaceRef::Corner(d) => format!("corner:{}", chart.darts[d].name),
        FaceRef::HoopSide(h, s) => format!("hoop:{}:{}", chart.hoops[h].name, s),
    }
}

/// Serialize a chart; the output is deterministic.
pub fn serialize(chart: &Chart) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "chart {FORMAT_VERSION}");
    if let Some(n) = &chart.name {
        let _ = writeln!(out, "name {n}");
    }
    let _ = writeln!(out, "degree {}", chart.degree);
    for v in &chart.vertices {
        let _ = write!(out, "vertex {} {}", v.name, v.kind.keyword());
        for &d in &v.rotation {
            let _ = write!(out, " {}", chart.darts[d].name);
        }
        out.push('\n');
    }
    let end = |d: Option<usize>| d.map_or("-".to_string(), |d| chart.darts[d].name.clone());
    for e in &chart.edges {
        let _ = writeln!(
            out,
            "edge {} {} {} {}",
            e.name,
            e.label,
            end(e.tail),
            end(e.head)
        );
    }
    for h in &chart.hoops {
        let _ = writeln!(out, "hoop {} {}", h.name, h.label);
    }
    for p in &chart.placements {
        let _ = writeln!(
            out,
            "place {} {}",
            face_ref_text(chart, p.child),
            face_ref_text(chart, p.parent)
        );
    }
    if let Some(f) = chart.outer_face {
        let _ = writeln!(out, "outer {}", face_ref_text(chart, f));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const THETA: &str = "chart 1\nname theta\ndegree 4\n\
        vertex w1 white a0 a1 a2 a3 a4 a5\n\
        vertex w2 white b0 b1 b2 b3 b4 b5\n";

    #[test]
    fn header_is_mandatory() {
        assert!(matches!(
            parse("degree 3\n"),
            Err(ParseError::Syntax {
                line: 1,
                column: 1,
                ..
            })
        ));
        assert!(matches!(parse(""), Err(ParseError::Syntax { .. })));
    }

    #[test]
    fn unknown_version_is_reported() {
        assert!(matches!(
            parse("chart 7\ndegree 3\n"),
            Err(ParseError::UnknownVersion { line: 1, .. })
        ));
    }

    #[test]
    fn truncated_record_is_a_syntax_error() {
        let err = parse("chart 1\ndegree 4\nvertex w1 white a0\nedge e1 2 a0").unwrap_err();
        match err {
            ParseError::Syntax { line, .. } => assert_eq!(line, 4),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn dangling_dart_is_a_model_error() {
        let text = format!("{THETA}edge e1 1 a0 zz\n");
        assert!(matches!(
            parse(&text),
            Err(ParseError::Model(ModelError::DanglingDart(_)))
        ));
    }

    #[test]
    fn bad_number_reports_column() {
        let err = parse("chart 1\ndegree x\n").unwrap_err();
        assert_eq!(
            err,
            ParseError::Syntax {
                line: 2,
                column: 8,
                message: "expected a number, found `x`".into()
            }
        );
    }

    #[test]
    fn empty_chart_round_trips() {
        let c = Chart::empty(3);
        let text = serialize(&c);
        assert_eq!(text, "chart 1\ndegree 3\n");
        assert_eq!(parse(&text).unwrap(), c);
    }

    #[test]
    fn hoop_chart_round_trips() {
        let text = "chart 1\ndegree 3\nhoop h1 1\n";
        let c = parse(text).unwrap();
        assert_eq!(serialize(&c), text);
    }
}
