//! Configurations: a five-vertex component of Γ_k realised as a chart with
//! its label-(k+ε) stubs, together with the oval placed in a host face.

use std::fmt;

use thiserror::Error;

use crate::component::{AbstractComponent, Slot};
use crate::embed::{EmbedError, Embedding, FaceId};
use crate::model::{Chart, ChartBuilder, FaceRef, Label, ModelError};
use crate::reference::reference_graph;
use crate::region::{
    find_angled_disks_in, oval_into, AngledDisk, PseudoChartTemplate, Region, RegionError,
};
use crate::subgraph::ClassKind;

/// Degree of the charts built by the engine.
pub const DEGREE: u32 = 5;
/// The label m of the type (m;7).
pub const M: Label = 2;

/// Errors raised while building configurations.
#[derive(Debug, Error)]
pub enum EngineError {
    #[error("unknown graph `{0}`")]
    UnknownGraph(char),
    #[error("orientation {0} is not valid")]
    Orientation(usize),
    #[error(transparent)]
    Region(#[from] RegionError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Embed(#[from] EmbedError),
}

/// Which of the two label bindings of the oval template is used.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Binding {
    /// `k = m`, `ε = +1`.
    Lower,
    /// `k = m+1`, `ε = −1`.
    Upper,
}

impl Binding {
    pub const ALL: [Binding; 2] = [Binding::Lower, Binding::Upper];

    pub fn template(self) -> PseudoChartTemplate {
        PseudoChartTemplate::oval(M, self == Binding::Upper)
    }

    /// Label of the component and the oval.
    pub fn k(self) -> Label {
        self.template().k
    }

    /// Label of the stubs.
    pub fn stub(self) -> Label {
        self.template().stub_label()
    }

    pub fn tag(self) -> &'static str {
        match self {
            Binding::Lower => "k=m",
            Binding::Upper => "k=m+1",
        }
    }
}

/// A choice of graph, binding, orientation and terminal corners.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ConfigKey {
    pub graph: char,
    pub binding: Binding,
    /// Index into `all_orientations(true)` of the reference graph.
    pub orientation: usize,
    /// Per BW-vertex (in vertex order): the terminal edge sits in the other
    /// corner than in the reference rotation.
    pub corners: Vec<bool>,
}

/// A configuration key plus the host face of the oval and its sense.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BranchKey {
    pub config: ConfigKey,
    pub host: FaceId,
    /// The oval with all directions reversed.
    pub reversed: bool,
}

impl fmt::Display for ConfigKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let c: String = self
            .corners
            .iter()
            .map(|&b| if b { '1' } else { '0' })
            .collect();
        write!(
            f,
            "fig12({})/{}/o{}/c{}",
            self.graph,
            self.binding.tag(),
            self.orientation,
            c
        )
    }
}

impl fmt::Display for BranchKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}/h{}/r{}",
            self.config,
            self.host,
            u8::from(self.reversed)
        )
    }
}

/// The reference graph with the terminal edges moved to the chosen corners.
pub fn graph_with_corners(graph: char, corners: &[bool]) -> Result<AbstractComponent, EngineError> {
    let mut g = reference_graph(ClassKind::Fig12(graph)).ok_or(EngineError::UnknownGraph(graph))?;
    let bw: Vec<usize> = (0..g.white_count())
        .filter(|&v| g.rotations[v].contains(&Slot::Terminal))
        .collect();
    for (&v, &flip) in bw.iter().zip(corners) {
        if flip {
            // A degree-3 rotation has two cyclic orders; the other one puts
            // the terminal edge in the other corner between the two edges.
            let r = &mut g.rotations[v];
            r.swap(1, 2);
        }
    }
    Ok(g)
}

/// Number of BW-vertices of a graph.
pub fn bw_count(graph: char) -> Result<usize, EngineError> {
    let g = reference_graph(ClassKind::Fig12(graph)).ok_or(EngineError::UnknownGraph(graph))?;
    Ok(g.terminal_counts().iter().filter(|&&t| t > 0).count())
}

/// All configuration keys of a graph and binding, in lexicographic order.
pub fn config_keys(graph: char, binding: Binding) -> Result<Vec<ConfigKey>, EngineError> {
    let g = reference_graph(ClassKind::Fig12(graph)).ok_or(EngineError::UnknownGraph(graph))?;
    let n_orient = g.all_orientations(true).len();
    let nb = bw_count(graph)?;
    let mut out = Vec::new();
    for orientation in 0..n_orient {
        for bits in 0u32..(1 << nb) {
            let corners = (0..nb).map(|i| bits >> (nb - 1 - i) & 1 == 1).collect();
            out.push(ConfigKey {
                graph,
                binding,
                orientation,
                corners,
            });
        }
    }
    Ok(out)
}

/// The chart of a component with its stubs, its faces and angled disks.
#[derive(Clone, Debug)]
pub struct Config {
    pub key: ConfigKey,
    pub component: AbstractComponent,
    pub chart: Chart,
    pub emb: Embedding,
    /// The angled disk formed by each face, when its boundary is one simple
    /// cycle through white vertices.
    pub disks: Vec<Option<AngledDisk>>,
}

/// The configuration chart with the oval added in a host face.
#[derive(Clone, Debug)]
pub struct HostChart {
    pub chart: Chart,
    pub emb: Embedding,
    /// The face of the new chart containing the oval and the old host face.
    pub face: FaceId,
}

impl Config {
    pub fn build(key: &ConfigKey) -> Result<Config, EngineError> {
        let g = graph_with_corners(key.graph, &key.corners)?;
        let o = g
            .all_orientations(true)
            .into_iter()
            .nth(key.orientation)
            .ok_or(EngineError::Orientation(key.orientation))?;
        let component = g.with_orientation(o);
        let chart = component
            .to_chart_labels(DEGREE, key.binding.k(), key.binding.stub(), None)
            .ok_or(EngineError::Orientation(key.orientation))?;
        let emb = Embedding::new(&chart)?;
        let all = find_angled_disks_in(&chart, &emb, key.binding.k());
        let disks = (0..emb.face_count)
            .map(|f| all.iter().find(|d| d.region == Region::single(f)).cloned())
            .collect();
        Ok(Config {
            key: key.clone(),
            component,
            chart,
            emb,
            disks,
        })
    }

    pub fn face_count(&self) -> usize {
        self.emb.face_count
    }

    /// Names of the white vertices on the boundary of a face's disk.
    pub fn disk_name(&self, f: FaceId) -> String {
        match &self.disks[f] {
            Some(d) => {
                let names: Vec<&str> = d
                    .whites
                    .iter()
                    .map(|&v| self.chart.vertices[v].name.as_str())
                    .collect();
                format!("{}-angled disk ({})", d.k, names.join(","))
            }
            None => format!("face {f}"),
        }
    }

    /// Add the oval to face `host`, its outside facing the component.
    pub fn host(&self, host: FaceId, reversed: bool) -> Result<HostChart, EngineError> {
        place_oval(&self.chart, &self.emb, host, self.key.binding, reversed)
    }
}

/// Add the oval of the binding to face `face` of a chart.  The oval vertex
/// carrying the inward terminal edge is named `w6`, the other `w7`.
pub fn place_oval(
    chart: &Chart,
    emb: &Embedding,
    face: FaceId,
    binding: Binding,
    reversed: bool,
) -> Result<HostChart, EngineError> {
    let anchor = (0..chart.darts.len())
        .find(|&d| emb.corner_face(chart, d) == face)
        .ok_or(RegionError::UnknownFace {
            face,
            count: emb.face_count,
        })?;
    let mut b = ChartBuilder::from_chart(chart.clone());
    let names = if reversed { ["w7", "w6"] } else { ["w6", "w7"] };
    let ta = oval_into(&mut b, binding.template(), names, "o", reversed);
    b.place(FaceRef::Corner(ta), FaceRef::Corner(anchor));
    let chart = b.build()?;
    let emb = Embedding::new(&chart)?;
    let face = emb.corner_face(&chart, anchor);
    Ok(HostChart { chart, emb, face })
}

/// Every branch of a graph: bindings × orientations × terminal corners ×
/// host faces × oval senses.
pub fn branch_keys(graph: char) -> Result<Vec<BranchKey>, EngineError> {
    let mut out = Vec::new();
    for binding in Binding::ALL {
        for key in config_keys(graph, binding)? {
            let cfg = Config::build(&key)?;
            for host in 0..cfg.face_count() {
                for reversed in [false, true] {
                    out.push(BranchKey {
                        config: key.clone(),
                        host,
                        reversed,
                    });
                }
            }
        }
    }
    Ok(out)
}
