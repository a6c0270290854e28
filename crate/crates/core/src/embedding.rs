//! Combinatorial plane embeddings (rotation systems), face tracing and triangulation.
//!
//! Orientation convention: `rotation[v]` lists the neighbours of `v` in
//! clockwise order. Faces are traced by the rule "after the directed edge
//! `u -> v` comes `v -> succ_v(u)`", where `succ_v(u)` is the neighbour
//! following `u` in the rotation of `v`. Under this rule every traced face
//! lies to the left of its directed edges, so bounded faces come out
//! counter-clockwise and the outer face comes out clockwise. The outer face
//! of a [`RotationSystem`] is always stored in traced order.
//!
//! Consequently the face to the *right* of a directed edge `a -> b` is the
//! traced face of the reverse dart `b -> a`.

use std::collections::HashSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RotationSystem {
    graph: Graph,
    rotation: Vec<Vec<usize>>,
    outer_face: Vec<usize>,
}

impl RotationSystem {
    /// Builds an embedding from rotations alone, deriving the graph.
    /// Fails if the rotations are not symmetric or contain loops/duplicates.
    pub fn from_rotation(rotation: Vec<Vec<usize>>, outer_face: Vec<usize>) -> Result<Self> {
        let n = rotation.len();
        let mut graph = Graph::new(n);
        for (v, rot) in rotation.iter().enumerate() {
            for &w in rot {
                graph.check_vertex(w)?;
                if w == v {
                    return Err(Error::SelfLoop(v));
                }
                if v < w {
                    graph.add_edge(v, w)?;
                } else if !rotation[w].contains(&v) {
                    return Err(Error::BadRotation(v, w));
                }
            }
        }
        for (v, rot) in rotation.iter().enumerate() {
            if rot.len() != graph.degree(v) {
                let w = rot.iter().copied().find(|&w| !rotation[w].contains(&v)).unwrap_or(v);
                return Err(Error::BadRotation(v, w));
            }
        }
        Ok(RotationSystem { graph, rotation, outer_face })
    }

    /// Pairs an explicit graph with rotations without any validation;
    /// [`check_embedding`] reports what is wrong with the result.
    pub fn from_parts_unchecked(graph: Graph, rotation: Vec<Vec<usize>>, outer_face: Vec<usize>) -> Self {
        RotationSystem { graph, rotation, outer_face }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn n(&self) -> usize {
        self.graph.n()
    }

    pub fn rotation(&self, v: usize) -> &[usize] {
        &self.rotation[v]
    }

    pub fn rotations(&self) -> &[Vec<usize>] {
        &self.rotation
    }

    pub fn outer_face(&self) -> &[usize] {
        &self.outer_face
    }

    pub fn darts(&self) -> Result<DartTable> {
        DartTable::new(self)
    }

    /// The embedding restricted to `vertices` (rotations filtered, ids
    /// renumbered to positions in `vertices`). The outer face is the face
    /// containing the first outer dart when it survives, else the first
    /// traced face.
    pub fn restrict(&self, vertices: &[usize]) -> Result<(RotationSystem, Vec<usize>)> {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            self.graph.check_vertex(v)?;
            index[v] = i;
        }
        let rotation: Vec<Vec<usize>> = vertices
            .iter()
            .map(|&v| {
                self.rotation[v].iter().filter(|&&w| index[w] != usize::MAX).map(|&w| index[w]).collect()
            })
            .collect();
        let mut sub = RotationSystem::from_rotation(rotation, Vec::new())?;
        sub.outer_face = match sub.graph.m() {
            0 => vertices.first().map(|_| vec![0]).unwrap_or_default(),
            _ => {
                let darts = sub.darts()?;
                let seed = match self.outer_face.as_slice() {
                    [a, b, ..] if index[*a] != usize::MAX && index[*b] != usize::MAX => {
                        darts.dart(index[*a], index[*b])
                    }
                    _ => None,
                };
                let face = seed.map(|d| darts.face_of(d)).unwrap_or(0);
                darts.face_vertices(face)
            }
        };
        Ok((sub, vertices.to_vec()))
    }
}

/// Half-edge view of a rotation system. Dart ids are contiguous per tail vertex.
#[derive(Debug, Clone)]
pub struct DartTable {
    offsets: Vec<usize>,
    tail: Vec<usize>,
    head: Vec<usize>,
    twin: Vec<usize>,
    next: Vec<usize>,
    face_of: Vec<usize>,
    faces: Vec<Vec<usize>>,
    // per vertex: (neighbour, position in rotation), sorted by neighbour
    lookup: Vec<Vec<(usize, usize)>>,
}

impl DartTable {
    pub fn new(e: &RotationSystem) -> Result<Self> {
        let n = e.n();
        let mut offsets = Vec::with_capacity(n + 1);
        let mut tail = Vec::new();
        let mut head = Vec::new();
        let mut lookup = Vec::with_capacity(n);
        offsets.push(0);
        for v in 0..n {
            let rot = &e.rotation[v];
            let mut lk: Vec<(usize, usize)> = rot.iter().copied().zip(0..).collect();
            lk.sort_unstable();
            if lk.windows(2).any(|w| w[0].0 == w[1].0) {
                let dup = lk.windows(2).find(|w| w[0].0 == w[1].0).unwrap()[0].0;
                return Err(Error::BadRotation(v, dup));
            }
            for &w in rot {
                if w >= n || w == v {
                    return Err(Error::BadRotation(v, w));
                }
                tail.push(v);
                head.push(w);
            }
            lookup.push(lk);
            offsets.push(tail.len());
        }
        let mut table = DartTable {
            offsets,
            tail,
            head,
            twin: Vec::new(),
            next: Vec::new(),
            face_of: Vec::new(),
            faces: Vec::new(),
            lookup,
        };
        let darts = table.tail.len();
        let mut twin = Vec::with_capacity(darts);
        let mut next = Vec::with_capacity(darts);
        for d in 0..darts {
            let (u, v) = (table.tail[d], table.head[d]);
            let pos = table.position(v, u).ok_or(Error::BadRotation(u, v))?;
            twin.push(table.offsets[v] + pos);
            let deg = table.offsets[v + 1] - table.offsets[v];
            next.push(table.offsets[v] + (pos + 1) % deg);
        }
        table.twin = twin;
        table.next = next;

        let mut face_of = vec![usize::MAX; darts];
        let mut faces = Vec::new();
        for start in 0..darts {
            if face_of[start] != usize::MAX {
                continue;
            }
            let id = faces.len();
            let mut face = Vec::new();
            let mut d = start;
            while face_of[d] == usize::MAX {
                face_of[d] = id;
                face.push(d);
                d = table.next[d];
            }
            if d != start {
                return Err(Error::BadRotation(table.tail[d], table.head[d]));
            }
            faces.push(face);
        }
        table.face_of = face_of;
        table.faces = faces;
        Ok(table)
    }

    fn position(&self, v: usize, w: usize) -> Option<usize> {
        let lk = &self.lookup[v];
        lk.binary_search_by_key(&w, |&(x, _)| x).ok().map(|i| lk[i].1)
    }

    pub fn num_darts(&self) -> usize {
        self.tail.len()
    }

    pub fn dart(&self, u: usize, v: usize) -> Option<usize> {
        self.position(u, v).map(|p| self.offsets[u] + p)
    }

    pub fn tail(&self, d: usize) -> usize {
        self.tail[d]
    }

    pub fn head(&self, d: usize) -> usize {
        self.head[d]
    }

    pub fn twin(&self, d: usize) -> usize {
        self.twin[d]
    }

    pub fn next(&self, d: usize) -> usize {
        self.next[d]
    }

    pub fn face_of(&self, d: usize) -> usize {
        self.face_of[d]
    }

    pub fn faces(&self) -> &[Vec<usize>] {
        &self.faces
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    /// Darts of face `f` in traced order.
    pub fn face_darts(&self, f: usize) -> &[usize] {
        &self.faces[f]
    }

    /// Tails of the darts of face `f`, in traced order.
    pub fn face_vertices(&self, f: usize) -> Vec<usize> {
        self.faces[f].iter().map(|&d| self.tail[d]).collect()
    }

    /// Neighbour following `u` in the clockwise rotation of `v`.
    pub fn succ(&self, v: usize, u: usize) -> Option<usize> {
        let pos = self.position(v, u)?;
        let deg = self.offsets[v + 1] - self.offsets[v];
        Some(self.head[self.offsets[v] + (pos + 1) % deg])
    }

    /// Face on the left of `u -> v` (the traced face of that dart).
    pub fn left_face(&self, u: usize, v: usize) -> Option<usize> {
        self.dart(u, v).map(|d| self.face_of[d])
    }

    /// Face on the right of `u -> v` (the traced face of `v -> u`).
    pub fn right_face(&self, u: usize, v: usize) -> Option<usize> {
        self.dart(v, u).map(|d| self.face_of[d])
    }
}

/// Traces all faces. Each face is returned as the sequence of tails of its
/// darts in traced order; every directed edge appears in exactly one face.
pub fn trace_faces(e: &RotationSystem) -> Result<Vec<Vec<usize>>> {
    let darts = DartTable::new(e)?;
    Ok((0..darts.num_faces()).map(|f| darts.face_vertices(f)).collect())
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Violation {
    RotationAdjacencyMismatch { vertex: usize, detail: String },
    InconsistentRotation { from: usize, to: usize },
    Disconnected,
    NotPlanar { vertices: usize, edges: usize, faces: usize },
    OuterFaceNotFound(Vec<usize>),
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::RotationAdjacencyMismatch { vertex, detail } => {
                write!(f, "rotation/adjacency mismatch at vertex {vertex}: {detail}")
            }
            Violation::InconsistentRotation { from, to } => {
                write!(f, "inconsistent rotation at directed edge {from}->{to}")
            }
            Violation::Disconnected => write!(f, "embedding of a disconnected graph"),
            Violation::NotPlanar { vertices, edges, faces } => write!(
                f,
                "not planar embedding: n - m + f = {vertices} - {edges} + {faces} != 2"
            ),
            Violation::OuterFaceNotFound(face) => write!(f, "outer face {face:?} is not a traced face"),
        }
    }
}

/// Validates every rotation-system invariant and reports the first violation.
pub fn check_embedding(e: &RotationSystem) -> Result<(), Violation> {
    let g = e.graph();
    if e.rotation.len() != g.n() {
        return Err(Violation::RotationAdjacencyMismatch {
            vertex: e.rotation.len().min(g.n()),
            detail: format!("{} rotations for {} vertices", e.rotation.len(), g.n()),
        });
    }
    for v in 0..g.n() {
        let mut rot = e.rotation[v].clone();
        rot.sort_unstable();
        if rot != g.neighbours(v) {
            return Err(Violation::RotationAdjacencyMismatch {
                vertex: v,
                detail: format!("rotation {:?} vs neighbours {:?}", e.rotation[v], g.neighbours(v)),
            });
        }
    }
    let darts = match DartTable::new(e) {
        Ok(d) => d,
        Err(Error::BadRotation(from, to)) => return Err(Violation::InconsistentRotation { from, to }),
        Err(other) => {
            return Err(Violation::RotationAdjacencyMismatch { vertex: 0, detail: other.to_string() })
        }
    };
    if !g.is_connected() {
        return Err(Violation::Disconnected);
    }
    if g.m() == 0 {
        return match e.outer_face.as_slice() {
            [] | [_] => Ok(()),
            other => Err(Violation::OuterFaceNotFound(other.to_vec())),
        };
    }
    let faces = darts.num_faces();
    if g.n() + faces != 2 + g.m() {
        return Err(Violation::NotPlanar { vertices: g.n(), edges: g.m(), faces });
    }
    let outer = &e.outer_face;
    let found = match outer.as_slice() {
        [a, b, ..] => darts.dart(*a, *b).map(|d| darts.face_of(d)).filter(|&f| {
            let verts = darts.face_vertices(f);
            let start = darts.face_darts(f).iter().position(|&x| darts.tail(x) == *a && darts.head(x) == *b);
            match start {
                Some(s) => {
                    let rotated: Vec<usize> = verts[s..].iter().chain(&verts[..s]).copied().collect();
                    rotated == *outer
                }
                None => false,
            }
        }),
        _ => None,
    };
    match found {
        Some(_) => Ok(()),
        None => Err(Violation::OuterFaceNotFound(outer.clone())),
    }
}

pub fn is_triangulation(e: &RotationSystem) -> bool {
    check_embedding(e).is_ok()
        && e.n() >= 3
        && DartTable::new(e).map(|d| d.faces().iter().all(|f| f.len() == 3)).unwrap_or(false)
}

/// Adds chords until every face (the outer face included) is a triangle.
///
/// Each face walk is fanned from a pivot corner: the chord `w_i - w_{i+2}`
/// cuts off the triangle `(w_i, w_{i+1}, w_{i+2})`. When the chord would be a
/// loop or duplicate an existing edge, the pivot moves to the next corner.
pub fn triangulate(e: &RotationSystem) -> Result<RotationSystem> {
    let n = e.n();
    if n < 3 {
        return Err(Error::TooSmall { need: 3, got: n });
    }
    if let Err(v) = check_embedding(e) {
        return Err(match v {
            Violation::Disconnected => {
                let comps = e.graph().components();
                Error::Disconnected { root: comps[0][0], unreached: comps[1][0] }
            }
            other => Error::InvalidEmbedding(other.to_string()),
        });
    }
    let darts = DartTable::new(e)?;
    let mut rotation = e.rotation.clone();
    let mut edges: HashSet<(usize, usize)> = e.graph().edges().into_iter().collect();
    let key = |a: usize, b: usize| (a.min(b), a.max(b));

    for f in 0..darts.num_faces() {
        let mut walk = darts.face_vertices(f);
        let mut pivot = 0;
        let mut failures = 0;
        while walk.len() > 3 {
            let len = walk.len();
            let i = pivot % len;
            let (prev, a, mid, b) = (walk[(i + len - 1) % len], walk[i], walk[(i + 1) % len], walk[(i + 2) % len]);
            if a == b || edges.contains(&key(a, b)) {
                pivot = (i + 1) % len;
                failures += 1;
                if failures > len {
                    return Err(Error::Untriangulable(walk));
                }
                continue;
            }
            failures = 0;
            // corner of `a` sits between incoming `prev` and outgoing `mid`
            let pos = rotation[a].iter().position(|&x| x == prev).expect("corner at a");
            rotation[a].insert(pos + 1, b);
            // corner of `b` sits between incoming `mid` and the following walk vertex
            let pos = rotation[b].iter().position(|&x| x == mid).expect("corner at b");
            rotation[b].insert(pos + 1, a);
            edges.insert(key(a, b));
            walk.remove((i + 1) % len);
            pivot = if i + 1 == len { i - 1 } else { i };
        }
    }
    let mut out = RotationSystem::from_rotation(rotation, Vec::new())?;
    let table = out.darts()?;
    let d = table
        .dart(e.outer_face[0], e.outer_face[1])
        .ok_or_else(|| Error::Internal("outer dart lost during triangulation".into()))?;
    out.outer_face = table.face_vertices(table.face_of(d));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    /// K4 with vertex 3 inside triangle 0-1-2 (0 top, 1 bottom right, 2 bottom left).
    pub(crate) fn k4() -> RotationSystem {
        RotationSystem::from_rotation(
            vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 1, 2]],
            vec![2, 0, 1],
        )
        .unwrap()
    }

    fn cycle4() -> RotationSystem {
        RotationSystem::from_rotation(vec![vec![1, 3], vec![2, 0], vec![3, 1], vec![0, 2]], vec![0, 1, 2, 3])
            .unwrap()
    }

    #[test]
    fn triangle_has_two_faces() {
        let t = RotationSystem::from_rotation(vec![vec![1, 2], vec![2, 0], vec![0, 1]], vec![0, 1, 2]).unwrap();
        let faces = trace_faces(&t).unwrap();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(check_embedding(&t), Ok(()));
    }

    #[test]
    fn k4_has_four_triangles() {
        let faces = trace_faces(&k4()).unwrap();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(check_embedding(&k4()), Ok(()));
        assert!(is_triangulation(&k4()));
    }

    fn starting_at(mut face: Vec<usize>, v: usize) -> Vec<usize> {
        let i = face.iter().position(|&x| x == v).unwrap();
        face.rotate_left(i);
        face
    }

    #[test]
    fn inner_faces_counter_clockwise_outer_clockwise() {
        let d = k4().darts().unwrap();
        // bounded face 0 -> 3 -> 1 is counter-clockwise in the drawing
        let f = d.left_face(0, 3).unwrap();
        assert_eq!(starting_at(d.face_vertices(f), 0), vec![0, 3, 1]);
        // outer face traced 2 -> 0 -> 1 is clockwise
        let o = d.left_face(2, 0).unwrap();
        assert_eq!(starting_at(d.face_vertices(o), 2), vec![2, 0, 1]);
        assert_eq!(d.succ(0, 1), Some(3));
    }

    #[test]
    fn cycle_has_two_quadrilaterals() {
        let faces = trace_faces(&cycle4()).unwrap();
        assert_eq!(faces.len(), 2);
        assert!(faces.iter().all(|f| f.len() == 4));
        assert_eq!(check_embedding(&cycle4()), Ok(()));
    }

    #[test]
    fn non_neighbour_in_rotation_is_reported() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let bad = RotationSystem::from_parts_unchecked(g, vec![vec![1, 2], vec![2, 0], vec![0]], vec![0, 1, 2]);
        let v = check_embedding(&bad).unwrap_err();
        assert!(v.to_string().contains("rotation/adjacency mismatch"), "{v}");
    }

    #[test]
    fn wrong_face_count_is_reported() {
        // K4 with rotation at 3 reversed: consistent darts, wrong number of faces
        let e = RotationSystem::from_rotation(
            vec![vec![1, 3, 2], vec![2, 3, 0], vec![0, 3, 1], vec![0, 2, 1]],
            vec![2, 0, 1],
        )
        .unwrap();
        let v = check_embedding(&e).unwrap_err();
        assert!(v.to_string().contains("not planar embedding"), "{v}");
    }

    #[test]
    fn outer_face_must_be_traced() {
        let mut e = k4();
        e.outer_face = vec![0, 2, 1];
        assert!(matches!(check_embedding(&e), Err(Violation::OuterFaceNotFound(_))));
    }

    #[test]
    fn asymmetric_rotation_rejected() {
        assert!(RotationSystem::from_rotation(vec![vec![1], vec![]], vec![]).is_err());
    }

    #[test]
    fn triangulate_fixed_points() {
        let t = triangulate(&k4()).unwrap();
        assert_eq!(t.graph(), k4().graph());
        let tri = RotationSystem::from_rotation(vec![vec![1, 2], vec![2, 0], vec![0, 1]], vec![0, 1, 2]).unwrap();
        assert_eq!(triangulate(&tri).unwrap().graph(), tri.graph());
    }

    #[test]
    fn triangulate_cycle_gives_k4() {
        let t = triangulate(&cycle4()).unwrap();
        assert_eq!(t.graph().m(), 6);
        let faces = trace_faces(&t).unwrap();
        assert_eq!(faces.len(), 4);
        assert!(faces.iter().all(|f| f.len() == 3));
        assert_eq!(check_embedding(&t), Ok(()));
        assert_eq!(t.outer_face().len(), 3);
    }

    #[test]
    fn triangulate_star_and_path() {
        let star = RotationSystem::from_rotation(vec![vec![1, 2, 3], vec![0], vec![0], vec![0]], vec![0, 1, 0, 2, 0, 3])
            .unwrap();
        assert_eq!(check_embedding(&star), Ok(()));
        let t = triangulate(&star).unwrap();
        assert!(is_triangulation(&t));
        assert_eq!(t.graph().m(), 6);
        let path = RotationSystem::from_rotation(vec![vec![1], vec![0, 2], vec![1]], vec![0, 1, 2, 1]).unwrap();
        let t = triangulate(&path).unwrap();
        assert!(is_triangulation(&t));
    }

    #[test]
    fn triangulate_rejects_tiny() {
        let e = RotationSystem::from_rotation(vec![vec![1], vec![0]], vec![0, 1]).unwrap();
        assert!(matches!(triangulate(&e), Err(Error::TooSmall { .. })));
    }

    #[test]
    fn restrict_component() {
        let e = k4();
        let (sub, map) = e.restrict(&[0, 1, 2]).unwrap();
        assert_eq!(map, vec![0, 1, 2]);
        assert_eq!(check_embedding(&sub), Ok(()));
        assert_eq!(sub.graph().m(), 3);
    }
}
