//! Face structure of a chart on the sphere.
//!
//! Every edge contributes two half-edges (tail side `2e`, head side `2e+1`).
//! A half-edge at an open end is *virtual*: it behaves like a leaf so that
//! the face walk goes out along the stub and comes back.  Faces of each
//! connected piece are the orbits of `φ = σ ∘ α`, where `σ` is the
//! counter-clockwise successor at a vertex and `α` swaps the two half-edges
//! of an edge.  Placement records glue the faces of different pieces.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::model::{Chart, DartId, EdgeId, FaceRef, HoopId, Label};

/// Index of a half-edge: `2 * edge + (0 for tail side, 1 for head side)`.
pub type HalfId = usize;
/// Index of a face on the sphere.
pub type FaceId = usize;

/// Errors raised when the rotation system is not a sphere embedding.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EmbedError {
    #[error("connected piece {piece} has Euler characteristic {chi} (a sphere needs 2)")]
    NotSpherical { piece: usize, chi: i64 },
    #[error("{pieces} connected pieces need {} placement records, found {records}", pieces - 1)]
    PlacementCount { pieces: usize, records: usize },
    #[error("placement records do not connect all pieces")]
    PlacementDisconnected,
    #[error("placement record glues a piece to itself")]
    PlacementSamePiece,
}

/// The computed embedding: pieces, local faces and glued global faces.
#[derive(Clone, Debug)]
pub struct Embedding {
    half_count: usize,
    /// Face of each half-edge.
    half_face: Vec<FaceId>,
    /// Faces of the two sides of each hoop.
    hoop_faces: Vec<[FaceId; 2]>,
    /// Piece of each vertex.
    pub vertex_piece: Vec<usize>,
    /// Piece of each hoop.
    pub hoop_piece: Vec<usize>,
    /// Number of connected pieces (hoops count as pieces).
    pub piece_count: usize,
    /// Boundary walks of each face: one cycle of half-edges per local face
    /// (hoop sides contribute an empty walk tagged in `face_hoop_sides`).
    pub face_walks: Vec<Vec<Vec<HalfId>>>,
    /// Hoop sides bounding each face.
    pub face_hoop_sides: Vec<Vec<(HoopId, u8)>>,
    /// Total number of faces.
    pub face_count: usize,
    /// Outer face if declared.
    pub outer_face: Option<FaceId>,
}

/// Dart at a half-edge, if attached.
pub fn half_dart(chart: &Chart, h: HalfId) -> Option<DartId> {
    let e = &chart.edges[h / 2];
    if h.is_multiple_of(2) {
        e.tail
    } else {
        e.head
    }
}

/// Half-edge of an attached dart.
pub fn dart_half(chart: &Chart, d: DartId) -> HalfId {
    let e = chart.darts[d].edge;
    if chart.edges[e].tail == Some(d) {
        2 * e
    } else {
        2 * e + 1
    }
}

fn sigma(chart: &Chart, h: HalfId) -> HalfId {
    match half_dart(chart, h) {
        Some(d) => dart_half(chart, chart.next_ccw(d)),
        None => h,
    }
}

/// `φ = σ ∘ α` on half-edges.
pub fn phi(chart: &Chart, h: HalfId) -> HalfId {
    sigma(chart, h ^ 1)
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind((0..n).collect())
    }
    fn find(&mut self, x: usize) -> usize {
        let mut r = x;
        while self.0[r] != r {
            r = self.0[r];
        }
        let mut y = x;
        while self.0[y] != r {
            let n = self.0[y];
            self.0[y] = r;
            y = n;
        }
        r
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.0[hi] = lo;
        true
    }
}

impl Embedding {
    /// Compute faces, checking that every piece is a sphere embedding and
    /// that placement records glue the pieces into one sphere.
    pub fn new(chart: &Chart) -> Result<Embedding, EmbedError> {
        let nh = 2 * chart.edges.len();
        let nv = chart.vertices.len();
        let nhoop = chart.hoops.len();

        // Pieces: union vertices along complete edges.
        let mut uf = UnionFind::new(nv);
        for e in &chart.edges {
            if let (Some(t), Some(h)) = (e.tail, e.head) {
                uf.union(chart.darts[t].vertex, chart.darts[h].vertex);
            }
        }
        let mut piece_of_root: BTreeMap<usize, usize> = BTreeMap::new();
        let mut vertex_piece = vec![0; nv];
        for (v, piece) in vertex_piece.iter_mut().enumerate() {
            let r = uf.find(v);
            let next = piece_of_root.len();
            *piece = *piece_of_root.entry(r).or_insert(next);
        }
        let vertex_pieces = piece_of_root.len();
        let hoop_piece: Vec<usize> = (0..nhoop).map(|i| vertex_pieces + i).collect();
        let piece_count = vertex_pieces + nhoop;

        let half_piece = |h: HalfId| -> usize {
            let e = &chart.edges[h / 2];
            let d = e.tail.or(e.head).expect("edge has an endpoint");
            vertex_piece[chart.darts[d].vertex]
        };

        // Local faces: orbits of φ, then two per hoop.
        let mut local_of_half = vec![usize::MAX; nh];
        let mut local_walks: Vec<Vec<HalfId>> = Vec::new();
        let mut local_piece: Vec<usize> = Vec::new();
        for start in 0..nh {
            if local_of_half[start] != usize::MAX {
                continue;
            }
            let id = local_walks.len();
            let mut walk = Vec::new();
            let mut h = start;
            while local_of_half[h] == usize::MAX {
                local_of_half[h] = id;
                walk.push(h);
                h = phi(chart, h);
            }
            local_walks.push(walk);
            local_piece.push(half_piece(start));
        }
        let first_hoop_local = local_walks.len();
        for &piece in &hoop_piece {
            for _ in 0..2 {
                local_walks.push(Vec::new());
                local_piece.push(piece);
            }
        }
        let nlocal = local_walks.len();

        // Euler check per vertex piece: V - E + F = 2 (stubs cancel out).
        let mut v_count = vec![0i64; vertex_pieces];
        let mut e_count = vec![0i64; vertex_pieces];
        let mut f_count = vec![0i64; vertex_pieces];
        for v in 0..nv {
            v_count[vertex_piece[v]] += 1;
        }
        for (ei, e) in chart.edges.iter().enumerate() {
            if e.is_complete() {
                e_count[half_piece(2 * ei)] += 1;
            }
        }
        for f in 0..first_hoop_local {
            f_count[local_piece[f]] += 1;
        }
        for p in 0..vertex_pieces {
            let chi = v_count[p] - e_count[p] + f_count[p];
            if chi != 2 {
                return Err(EmbedError::NotSpherical { piece: p, chi });
            }
        }

        // Glue pieces.
        let local_of_ref = |r: FaceRef| -> usize {
            match r {
                FaceRef::Corner(d) => local_of_half[dart_half(chart, chart.next_ccw(d))],
                FaceRef::HoopSide(h, s) => first_hoop_local + 2 * h + s as usize,
            }
        };
        if piece_count > 0 && chart.placements.len() != piece_count - 1 {
            return Err(EmbedError::PlacementCount {
                pieces: piece_count,
                records: chart.placements.len(),
            });
        }
        let mut piece_uf = UnionFind::new(piece_count);
        let mut face_uf = UnionFind::new(nlocal);
        for p in &chart.placements {
            let (a, b) = (local_of_ref(p.child), local_of_ref(p.parent));
            if local_piece[a] == local_piece[b] {
                return Err(EmbedError::PlacementSamePiece);
            }
            if !piece_uf.union(local_piece[a], local_piece[b]) {
                return Err(EmbedError::PlacementDisconnected);
            }
            face_uf.union(a, b);
        }

        // Number global faces in order of their first local face.
        let mut global_of_root: BTreeMap<usize, FaceId> = BTreeMap::new();
        let mut global_of_local = vec![0; nlocal];
        for (l, global) in global_of_local.iter_mut().enumerate() {
            let r = face_uf.find(l);
            let next = global_of_root.len();
            *global = *global_of_root.entry(r).or_insert(next);
        }
        let mut face_count = global_of_root.len();
        if nlocal == 0 {
            // The empty chart: the whole sphere is a single face.
            face_count = 1;
        }
        let mut face_walks = vec![Vec::new(); face_count];
        let mut face_hoop_sides = vec![Vec::new(); face_count];
        for l in 0..nlocal {
            let g = global_of_local[l];
            if l < first_hoop_local {
                face_walks[g].push(local_walks[l].clone());
            } else {
                let k = l - first_hoop_local;
                face_hoop_sides[g].push((k / 2, (k % 2) as u8));
            }
        }
        let half_face: Vec<FaceId> = (0..nh).map(|h| global_of_local[local_of_half[h]]).collect();
        let hoop_faces: Vec<[FaceId; 2]> = (0..nhoop)
            .map(|i| {
                [
                    global_of_local[first_hoop_local + 2 * i],
                    global_of_local[first_hoop_local + 2 * i + 1],
                ]
            })
            .collect();
        let outer_face = chart.outer_face.map(|r| global_of_local[local_of_ref(r)]);

        Ok(Embedding {
            half_count: nh,
            half_face,
            hoop_faces,
            vertex_piece,
            hoop_piece,
            piece_count,
            face_walks,
            face_hoop_sides,
            face_count,
            outer_face,
        })
    }

    /// Face containing half-edge `h`.
    pub fn face_of_half(&self, h: HalfId) -> FaceId {
        self.half_face[h]
    }

    /// Face containing the corner immediately counter-clockwise after `d`.
    pub fn corner_face(&self, chart: &Chart, d: DartId) -> FaceId {
        self.half_face[dart_half(chart, chart.next_ccw(d))]
    }

    /// Face referenced by a [`FaceRef`].
    pub fn face_of_ref(&self, chart: &Chart, r: FaceRef) -> FaceId {
        match r {
            FaceRef::Corner(d) => self.corner_face(chart, d),
            FaceRef::HoopSide(h, s) => self.hoop_faces[h][s as usize],
        }
    }

    /// The two faces on either side of an edge (equal for stubs and bridges).
    pub fn edge_sides(&self, e: EdgeId) -> [FaceId; 2] {
        [self.half_face[2 * e], self.half_face[2 * e + 1]]
    }

    /// The two faces on either side of a hoop.
    pub fn hoop_sides(&self, h: HoopId) -> [FaceId; 2] {
        self.hoop_faces[h]
    }

    /// Number of half-edges.
    pub fn half_count(&self) -> usize {
        self.half_count
    }

    /// Euler characteristic `V − E + F` of the whole chart on the sphere,
    /// counting a hoop as one vertex and one edge and ignoring stubs.
    pub fn euler_characteristic(&self, chart: &Chart) -> i64 {
        let v = chart.vertices.len() as i64 + chart.hoops.len() as i64;
        let e = chart.edges.iter().filter(|e| e.is_complete()).count() as i64
            + chart.hoops.len() as i64;
        v - e + self.face_count as i64
    }

    /// Group faces into the complementary domains of the union of all edges
    /// whose label satisfies `boundary`: faces are merged across every edge
    /// and hoop with a label outside the boundary set.  Returns the domain
    /// index of every face and the number of domains.
    pub fn domains(&self, chart: &Chart, boundary: impl Fn(Label) -> bool) -> (Vec<usize>, usize) {
        self.domains_excluding(
            chart,
            |e| boundary(chart.edges[e].label),
            |h| boundary(chart.hoops[h].label),
        )
    }

    /// Like [`Embedding::domains`], with explicit predicates deciding which
    /// edges and hoops act as boundary.
    pub fn domains_excluding(
        &self,
        chart: &Chart,
        edge_is_boundary: impl Fn(EdgeId) -> bool,
        hoop_is_boundary: impl Fn(HoopId) -> bool,
    ) -> (Vec<usize>, usize) {
        let mut uf = UnionFind::new(self.face_count);
        for e in 0..chart.edges.len() {
            if !edge_is_boundary(e) {
                let [a, b] = self.edge_sides(e);
                uf.union(a, b);
            }
        }
        for h in 0..chart.hoops.len() {
            if !hoop_is_boundary(h) {
                let [a, b] = self.hoop_faces[h];
                uf.union(a, b);
            }
        }
        let mut ids: BTreeMap<usize, usize> = BTreeMap::new();
        let mut out = vec![0; self.face_count];
        for (f, slot) in out.iter_mut().enumerate() {
            let r = uf.find(f);
            let next = ids.len();
            *slot = *ids.entry(r).or_insert(next);
        }
        (out, ids.len())
    }
}
