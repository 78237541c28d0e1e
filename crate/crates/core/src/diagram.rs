//! Diagram emission: Graphviz DOT and a self-contained SVG.
//!
//! White vertices are drawn as hollow circles, black vertices as dots and
//! crossings as small squares.  Edges carry their name and label and point
//! from tail to head.  With the BW convention, a terminal edge is collapsed
//! into a dot drawn at its white vertex.  Open ends of half-edges are drawn
//! as short stubs; hoops are listed but not drawn.

use std::fmt::Write as _;
use std::str::FromStr;

use thiserror::Error;

use crate::model::{Chart, EdgeId, VertexId, VertexKind};

/// Output format of a diagram.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DiagramFormat {
    Dot,
    Svg,
}

/// Errors raised while emitting diagrams.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("unsupported diagram format `{0}` (expected dot or svg)")]
    UnsupportedFormat(String),
}

impl FromStr for DiagramFormat {
    type Err = DiagramError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "dot" => Ok(DiagramFormat::Dot),
            "svg" => Ok(DiagramFormat::Svg),
            other => Err(DiagramError::UnsupportedFormat(other.to_string())),
        }
    }
}

/// Diagram options.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct DiagramOptions {
    /// Collapse terminal edges into dots at their white vertices.
    pub collapse_bw: bool,
}

/// What is drawn: the visible nodes and edges after the BW collapse.
struct Layout {
    /// Visible vertices.
    nodes: Vec<VertexId>,
    /// White vertices carrying a collapsed terminal edge.
    dotted: Vec<bool>,
    /// Visible complete edges `(edge, tail vertex, head vertex)`.
    edges: Vec<(EdgeId, VertexId, VertexId)>,
    /// Open edges `(edge, attached vertex, attached at tail)`.
    stubs: Vec<(EdgeId, VertexId, bool)>,
}

fn layout(chart: &Chart, opts: DiagramOptions) -> Layout {
    let n = chart.vertices.len();
    let mut hidden = vec![false; n];
    let mut hidden_edge = vec![false; chart.edges.len()];
    let mut dotted = vec![false; n];
    if opts.collapse_bw {
        for (e, edge) in chart.edges.iter().enumerate() {
            let (Some(t), Some(h)) = (edge.tail, edge.head) else {
                continue;
            };
            let (vt, vh) = (chart.darts[t].vertex, chart.darts[h].vertex);
            let kt = chart.vertices[vt].kind;
            let kh = chart.vertices[vh].kind;
            let pair = match (kt, kh) {
                (VertexKind::Black, VertexKind::White) => Some((vt, vh)),
                (VertexKind::White, VertexKind::Black) => Some((vh, vt)),
                _ => None,
            };
            if let Some((b, w)) = pair {
                hidden[b] = true;
                hidden_edge[e] = true;
                dotted[w] = true;
            }
        }
    }
    let nodes = (0..n).filter(|&v| !hidden[v]).collect();
    let mut edges = Vec::new();
    let mut stubs = Vec::new();
    for (e, edge) in chart.edges.iter().enumerate() {
        if hidden_edge[e] {
            continue;
        }
        match (edge.tail, edge.head) {
            (Some(t), Some(h)) => edges.push((e, chart.darts[t].vertex, chart.darts[h].vertex)),
            (Some(t), None) => stubs.push((e, chart.darts[t].vertex, true)),
            (None, Some(h)) => stubs.push((e, chart.darts[h].vertex, false)),
            (None, None) => {}
        }
    }
    Layout {
        nodes,
        dotted,
        edges,
        stubs,
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Emit a diagram of the chart.
pub fn emit_diagram(chart: &Chart, format: DiagramFormat, opts: DiagramOptions) -> String {
    match format {
        DiagramFormat::Dot => emit_dot(chart, opts),
        DiagramFormat::Svg => emit_svg(chart, opts),
    }
}

fn emit_dot(chart: &Chart, opts: DiagramOptions) -> String {
    let l = layout(chart, opts);
    let mut s = String::new();
    let name = chart.name.as_deref().unwrap_or("chart");
    let _ = writeln!(s, "digraph \"{}\" {{", escape(name));
    for &v in &l.nodes {
        let vert = &chart.vertices[v];
        let attrs = match vert.kind {
            VertexKind::White if l.dotted[v] => "shape=doublecircle, style=filled, fillcolor=white",
            VertexKind::White => "shape=circle",
            VertexKind::Black => "shape=point, width=0.12",
            VertexKind::Crossing => "shape=square, width=0.1, label=\"\"",
        };
        let label = if vert.kind == VertexKind::Crossing {
            format!(", xlabel=\"{}\"", escape(&vert.name))
        } else {
            String::new()
        };
        let text = if vert.kind == VertexKind::White {
            format!(", label=\"{}\"", escape(&vert.name))
        } else {
            String::new()
        };
        let _ = writeln!(s, "  \"{}\" [{attrs}{text}{label}];", escape(&vert.name));
    }
    for &(e, t, h) in &l.edges {
        let edge = &chart.edges[e];
        let _ = writeln!(
            s,
            "  \"{}\" -> \"{}\" [label=\"{}:{}\"];",
            escape(&chart.vertices[t].name),
            escape(&chart.vertices[h].name),
            escape(&edge.name),
            edge.label
        );
    }
    for &(e, v, at_tail) in &l.stubs {
        let edge = &chart.edges[e];
        let open = format!("open:{}", edge.name);
        let _ = writeln!(s, "  \"{}\" [shape=point, style=invis];", escape(&open));
        let (a, b) = if at_tail {
            (&chart.vertices[v].name, &open)
        } else {
            (&open, &chart.vertices[v].name)
        };
        let _ = writeln!(
            s,
            "  \"{}\" -> \"{}\" [label=\"{}:{}\", style=dashed];",
            escape(a),
            escape(b),
            escape(&edge.name),
            edge.label
        );
    }
    for h in &chart.hoops {
        let _ = writeln!(s, "  // hoop {} label {}", h.name, h.label);
    }
    s.push_str("}\n");
    s
}

const SIZE: f64 = 400.0;
const RADIUS: f64 = 150.0;

fn emit_svg(chart: &Chart, opts: DiagramOptions) -> String {
    let l = layout(chart, opts);
    let c = SIZE / 2.0;
    let n = l.nodes.len().max(1) as f64;
    let mut pos = vec![(c, c); chart.vertices.len()];
    for (i, &v) in l.nodes.iter().enumerate() {
        let a = std::f64::consts::TAU * i as f64 / n - std::f64::consts::FRAC_PI_2;
        pos[v] = if l.nodes.len() == 1 {
            (c, c)
        } else {
            (c + RADIUS * a.cos(), c + RADIUS * a.sin())
        };
    }
    let mut s = String::new();
    let _ = writeln!(
        s,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{SIZE}\" height=\"{SIZE}\" viewBox=\"0 0 {SIZE} {SIZE}\">"
    );
    s.push_str(
        "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" orient=\"auto\"><path d=\"M0,0 L10,5 L0,10 z\"/></marker></defs>\n",
    );
    // Parallel edges between the same pair are bent apart.
    let mut seen: Vec<((VertexId, VertexId), usize)> = Vec::new();
    for &(e, t, h) in &l.edges {
        let key = (t.min(h), t.max(h));
        let k = match seen.iter_mut().find(|(p, _)| *p == key) {
            Some((_, k)) => {
                *k += 1;
                *k
            }
            None => {
                seen.push((key, 0));
                0
            }
        };
        let (x1, y1) = pos[t];
        let (x2, y2) = pos[h];
        let (mx, my) = ((x1 + x2) / 2.0, (y1 + y2) / 2.0);
        let (dx, dy) = (x2 - x1, y2 - y1);
        let len = (dx * dx + dy * dy).sqrt().max(1.0);
        let step = if k % 2 == 0 {
            (k / 2) as f64
        } else {
            -(k.div_ceil(2) as f64)
        };
        let bend = 30.0 * step * if t <= h { 1.0 } else { -1.0 };
        let (qx, qy) = if t == h {
            (x1 + 40.0, y1 - 40.0)
        } else {
            (mx - dy / len * bend, my + dx / len * bend)
        };
        let edge = &chart.edges[e];
        let _ = writeln!(
            s,
            "<path d=\"M{x1:.1},{y1:.1} Q{qx:.1},{qy:.1} {x2:.1},{y2:.1}\" fill=\"none\" stroke=\"black\" marker-end=\"url(#arrow)\"/>"
        );
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"10\">{}:{}</text>",
            (mx + qx) / 2.0,
            (my + qy) / 2.0,
            xml_escape(&edge.name),
            edge.label
        );
    }
    for &(e, v, at_tail) in &l.stubs {
        let (x, y) = pos[v];
        let (dx, dy) = (x - c, y - c);
        let len = (dx * dx + dy * dy).sqrt();
        let (ux, uy) = if len < 1e-9 {
            (0.0, -1.0)
        } else {
            (dx / len, dy / len)
        };
        let (ox, oy) = (x + 25.0 * ux, y + 25.0 * uy);
        let (a, b) = if at_tail {
            ((x, y), (ox, oy))
        } else {
            ((ox, oy), (x, y))
        };
        let edge = &chart.edges[e];
        let _ = writeln!(
            s,
            "<path d=\"M{:.1},{:.1} L{:.1},{:.1}\" fill=\"none\" stroke=\"gray\" stroke-dasharray=\"3,2\" marker-end=\"url(#arrow)\"/>",
            a.0, a.1, b.0, b.1
        );
        let _ = writeln!(
            s,
            "<text x=\"{ox:.1}\" y=\"{oy:.1}\" font-size=\"9\" fill=\"gray\">{}:{}</text>",
            xml_escape(&edge.name),
            edge.label
        );
    }
    for &v in &l.nodes {
        let (x, y) = pos[v];
        let vert = &chart.vertices[v];
        match vert.kind {
            VertexKind::White => {
                let _ = writeln!(
                    s,
                    "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"8\" fill=\"white\" stroke=\"black\"/>"
                );
                if l.dotted[v] {
                    let _ = writeln!(
                        s,
                        "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"3\" fill=\"black\"/>"
                    );
                }
            }
            VertexKind::Black => {
                let _ = writeln!(
                    s,
                    "<circle cx=\"{x:.1}\" cy=\"{y:.1}\" r=\"4\" fill=\"black\"/>"
                );
            }
            VertexKind::Crossing => {
                let _ = writeln!(
                    s,
                    "<rect x=\"{:.1}\" y=\"{:.1}\" width=\"6\" height=\"6\" fill=\"gray\"/>",
                    x - 3.0,
                    y - 3.0
                );
            }
        }
        let _ = writeln!(
            s,
            "<text x=\"{:.1}\" y=\"{:.1}\" font-size=\"11\">{}</text>",
            x + 10.0,
            y - 10.0,
            xml_escape(&vert.name)
        );
    }
    for h in &chart.hoops {
        let _ = writeln!(s, "<!-- hoop {} label {} -->", xml_escape(&h.name), h.label);
    }
    s.push_str("</svg>\n");
    s
}

/// Number of drawn vertex nodes (for reports and tests).
pub fn node_count(chart: &Chart, opts: DiagramOptions) -> usize {
    layout(chart, opts).nodes.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_chart_gives_empty_graph() {
        let c = Chart::empty(4);
        let dot = emit_diagram(&c, DiagramFormat::Dot, DiagramOptions::default());
        assert_eq!(dot, "digraph \"chart\" {\n}\n");
        let svg = emit_diagram(&c, DiagramFormat::Svg, DiagramOptions::default());
        assert!(!svg.contains("<circle"));
    }

    #[test]
    fn unknown_format_is_rejected() {
        assert_eq!(
            "png".parse::<DiagramFormat>(),
            Err(DiagramError::UnsupportedFormat("png".into()))
        );
        assert_eq!("dot".parse::<DiagramFormat>(), Ok(DiagramFormat::Dot));
    }
}
