//! Seeded instance generators. Identical parameters give identical output.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::{DartTable, RotationSystem};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Number of path vertices in the lower-bound gadget.
pub const LOWERBOUND_PATH_LEN: usize = 22;

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn insert_after(rot: &mut Vec<usize>, anchor: usize, x: usize) {
    let pos = rot.iter().position(|&w| w == anchor).expect("anchor in rotation");
    rot.insert(pos + 1, x);
}

fn remove_from(rot: &mut Vec<usize>, x: usize) {
    let pos = rot.iter().position(|&w| w == x).expect("neighbour in rotation");
    rot.remove(pos);
}

/// Random plane triangulation with outer face `(0, 2, 1)`.
///
/// Vertices `3..n` are stacked one by one into a uniformly random bounded
/// face, then `flips` random edge flips are applied to bounded edges whose
/// flip keeps the graph simple.
pub fn gen_triangulation(n: usize, seed: u64, flips: usize) -> Result<RotationSystem> {
    if n < 3 {
        return Err(Error::TooSmall { need: 3, got: n });
    }
    let mut rng = rng(seed);
    let mut rot: Vec<Vec<usize>> = vec![vec![1, 2], vec![2, 0], vec![0, 1]];
    // bounded faces as traced triples: darts a->b, b->c, c->a
    let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2]];
    for x in 3..n {
        let i = rng.gen_range(0..faces.len());
        let [a, b, c] = faces[i];
        insert_after(&mut rot[b], a, x);
        insert_after(&mut rot[c], b, x);
        insert_after(&mut rot[a], c, x);
        rot.push(vec![a, c, b]);
        faces[i] = [a, b, x];
        faces.push([b, c, x]);
        faces.push([c, a, x]);
    }

    let is_outer = |v: usize| v < 3;
    let mut done = 0;
    let mut attempts = 0;
    let max_attempts = 50 * flips + 100;
    while done < flips && attempts < max_attempts && n > 4 {
        attempts += 1;
        let a = rng.gen_range(0..n);
        let b = *rot[a].choose(&mut rng).expect("triangulations have no isolated vertices");
        if is_outer(a) && is_outer(b) {
            continue;
        }
        let c = succ(&rot, b, a);
        let d = succ(&rot, a, b);
        if c == d || rot[c].contains(&d) {
            continue;
        }
        remove_from(&mut rot[a], b);
        remove_from(&mut rot[b], a);
        insert_after(&mut rot[c], b, d);
        insert_after(&mut rot[d], a, c);
        done += 1;
    }
    RotationSystem::from_rotation(rot, vec![0, 2, 1])
}

fn succ(rot: &[Vec<usize>], v: usize, u: usize) -> usize {
    let r = &rot[v];
    let pos = r.iter().position(|&w| w == u).expect("neighbour in rotation");
    r[(pos + 1) % r.len()]
}

pub fn gen_path(n: usize) -> Result<Graph> {
    if n == 0 {
        return Err(Error::TooSmall { need: 1, got: 0 });
    }
    let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
    Graph::from_edges(n, &edges)
}

pub fn gen_cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::TooSmall { need: 3, got: n });
    }
    let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Graph::from_edges(n, &edges)
}

/// Random recursive tree: vertex `i` attaches to a uniform earlier vertex.
pub fn gen_random_tree(n: usize, seed: u64) -> Result<Graph> {
    if n == 0 {
        return Err(Error::TooSmall { need: 1, got: 0 });
    }
    let mut rng = rng(seed);
    let mut g = Graph::new(n);
    for i in 1..n {
        let j = rng.gen_range(0..i);
        g.add_edge(j, i)?;
    }
    Ok(g)
}

/// Embeds a tree with each rotation in neighbour order.
pub fn embed_tree(tree: &Graph) -> Result<RotationSystem> {
    if !tree.is_tree() {
        return Err(Error::NotATree(format!("{} vertices, {} edges", tree.n(), tree.m())));
    }
    embed_by_neighbour_order(tree)
}

/// The cycle `0, 1, ..., n-1` drawn as a circle.
pub fn embed_cycle(n: usize) -> Result<RotationSystem> {
    let g = gen_cycle(n)?;
    let rot = (0..n).map(|i| vec![(i + 1) % n, (i + n - 1) % n]).collect();
    let outer: Vec<usize> = (0..n).collect();
    RotationSystem::from_rotation(rot, outer).inspect(|e| {
        debug_assert_eq!(e.graph(), &g);
    })
}

fn embed_by_neighbour_order(g: &Graph) -> Result<RotationSystem> {
    let rot: Vec<Vec<usize>> = (0..g.n()).map(|v| g.neighbours(v).to_vec()).collect();
    let mut e = RotationSystem::from_rotation(rot, Vec::new())?;
    let outer = if g.m() == 0 {
        vec![0]
    } else {
        let d = DartTable::new(&e)?;
        d.face_vertices(0)
    };
    e = RotationSystem::from_rotation(e.rotations().to_vec(), outer)?;
    Ok(e)
}

/// The graph `G_T`: the tree plus a cycle through each BFS layer in the
/// cyclic order of a crossing-free drawing.
///
/// The drawing puts layer `i` on a circle of radius `i` around the root,
/// children ordered clockwise by ascending id. Layers with two vertices get
/// a single edge and singleton layers get nothing.
pub fn gen_tree_cycles(tree: &Graph, root: usize) -> Result<RotationSystem> {
    if !tree.is_tree() {
        return Err(Error::NotATree(format!("{} vertices, {} edges", tree.n(), tree.m())));
    }
    tree.check_vertex(root)?;
    let n = tree.n();
    let mut parent = vec![None; n];
    let mut depth = vec![0usize; n];
    let mut children: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut layers: Vec<Vec<usize>> = Vec::new();
    // preorder DFS with children in ascending id order
    let mut stack = vec![root];
    let mut seen = vec![false; n];
    seen[root] = true;
    while let Some(v) = stack.pop() {
        if layers.len() <= depth[v] {
            layers.push(Vec::new());
        }
        layers[depth[v]].push(v);
        for &w in tree.neighbours(v) {
            if !seen[w] {
                seen[w] = true;
                parent[w] = Some(v);
                depth[w] = depth[v] + 1;
                children[v].push(w);
            }
        }
        stack.extend(children[v].iter().rev());
    }

    let mut prev = vec![None; n];
    let mut next = vec![None; n];
    for layer in &layers {
        match layer.len() {
            0 | 1 => {}
            2 => {
                next[layer[0]] = Some(layer[1]);
                prev[layer[1]] = Some(layer[0]);
            }
            len => {
                for (i, &v) in layer.iter().enumerate() {
                    next[v] = Some(layer[(i + 1) % len]);
                    prev[v] = Some(layer[(i + len - 1) % len]);
                }
            }
        }
    }
    let rot: Vec<Vec<usize>> = (0..n)
        .map(|v| {
            let mut r = Vec::new();
            r.extend(prev[v]);
            r.extend(&children[v]);
            r.extend(next[v]);
            r.extend(parent[v]);
            r
        })
        .collect();
    let e = RotationSystem::from_rotation(rot, Vec::new())?;
    let last = layers.last().expect("nonempty tree");
    let outer = if n == 1 {
        vec![root]
    } else {
        let d = DartTable::new(&e)?;
        let dart = match last.len() {
            1 => d.dart(last[0], parent[last[0]].expect("deep leaf has a parent")),
            _ => d.dart(last[0], last[1]),
        }
        .ok_or_else(|| Error::Internal("outer dart missing".into()))?;
        d.face_vertices(d.face_of(dart))
    };
    RotationSystem::from_rotation(e.rotations().to_vec(), outer)
}

/// Vertex ids of the lower-bound gadget built by [`gen_lowerbound`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LowerBoundLayout {
    pub path: Vec<usize>,
    pub x: usize,
    pub y: usize,
    /// `copies[i]` lists the vertices of the copy of `h` attached to `path[i]`.
    pub copies: Vec<Vec<usize>>,
}

/// A path `v_1..v_22`, two adjacent vertices `x`, `y` dominating it, and
/// a disjoint copy of `h` fully joined to each path vertex.
pub fn gen_lowerbound(h: &Graph) -> Result<(Graph, LowerBoundLayout)> {
    let k = LOWERBOUND_PATH_LEN;
    let hn = h.n();
    let n = k + 2 + k * hn;
    let mut g = Graph::new(n);
    let path: Vec<usize> = (0..k).collect();
    let (x, y) = (k, k + 1);
    for i in 1..k {
        g.add_edge(i - 1, i)?;
    }
    g.add_edge(x, y)?;
    let mut copies = Vec::with_capacity(k);
    for &v in &path {
        g.add_edge(x, v)?;
        g.add_edge(y, v)?;
        let base = k + 2 + v * hn;
        for (a, b) in h.edges() {
            g.add_edge(base + a, base + b)?;
        }
        let copy: Vec<usize> = (base..base + hn).collect();
        for &c in &copy {
            g.add_edge(v, c)?;
        }
        copies.push(copy);
    }
    Ok((g, LowerBoundLayout { path, x, y, copies }))
}

/// A named generator configuration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GenSpec {
    Triangulation { n: usize, seed: u64, flips: usize },
    Path { n: usize },
    Cycle { n: usize },
    RandomTree { n: usize, seed: u64 },
    TreeCycles { n: usize, seed: u64 },
}

/// Output of [`GenSpec::generate`]: an embedding when the family has one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generated {
    Embedded(RotationSystem),
    Plain(Graph),
}

impl Generated {
    pub fn graph(&self) -> &Graph {
        match self {
            Generated::Embedded(e) => e.graph(),
            Generated::Plain(g) => g,
        }
    }
}

impl GenSpec {
    pub fn generate(&self) -> Result<Generated> {
        Ok(match *self {
            GenSpec::Triangulation { n, seed, flips } => Generated::Embedded(gen_triangulation(n, seed, flips)?),
            GenSpec::Path { n } => Generated::Embedded(embed_tree(&gen_path(n)?)?),
            GenSpec::Cycle { n } => Generated::Embedded(embed_cycle(n)?),
            GenSpec::RandomTree { n, seed } => Generated::Embedded(embed_tree(&gen_random_tree(n, seed)?)?),
            GenSpec::TreeCycles { n, seed } => {
                Generated::Embedded(gen_tree_cycles(&gen_random_tree(n, seed)?, 0)?)
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::embedding::{check_embedding, is_triangulation, trace_faces};

    #[test]
    fn small_triangulations() {
        let t3 = gen_triangulation(3, 0, 0).unwrap();
        assert_eq!(t3.graph().m(), 3);
        assert!(is_triangulation(&t3));
        let t4 = gen_triangulation(4, 9, 10).unwrap();
        assert_eq!(t4.graph().m(), 6);
        assert!(is_triangulation(&t4));
        assert!(gen_triangulation(2, 0, 0).is_err());
    }

    #[test]
    fn triangulation_fifty() {
        let t = gen_triangulation(50, 1, 50).unwrap();
        assert_eq!(t.graph().m(), 144);
        assert!(trace_faces(&t).unwrap().iter().all(|f| f.len() == 3));
        assert_eq!(check_embedding(&t), Ok(()));
        assert_eq!(gen_triangulation(50, 1, 50).unwrap(), t);
        assert_ne!(gen_triangulation(50, 2, 50).unwrap(), t);
    }

    #[test]
    fn flips_change_the_graph() {
        let stacked = gen_triangulation(30, 5, 0).unwrap();
        let flipped = gen_triangulation(30, 5, 30).unwrap();
        assert!(is_triangulation(&flipped));
        assert_ne!(stacked.graph(), flipped.graph());
    }

    #[test]
    fn simple_families() {
        assert_eq!(gen_path(4).unwrap().m(), 3);
        let c5 = gen_cycle(5).unwrap();
        assert_eq!(c5.m(), 5);
        assert!((0..5).all(|v| c5.degree(v) == 2));
        let t = gen_random_tree(30, 7).unwrap();
        assert!(t.is_tree());
        assert_eq!(t.m(), 29);
        assert!(gen_cycle(2).is_err());
        assert_eq!(check_embedding(&embed_cycle(6).unwrap()), Ok(()));
    }

    #[test]
    fn tree_cycles_of_path_is_path() {
        let p = gen_path(5).unwrap();
        let gt = gen_tree_cycles(&p, 0).unwrap();
        assert_eq!(gt.graph(), &p);
        assert_eq!(check_embedding(&gt), Ok(()));
    }

    #[test]
    fn tree_cycles_of_star_is_wheel() {
        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let gt = gen_tree_cycles(&star, 0).unwrap();
        assert_eq!(gt.graph().edges(), vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(check_embedding(&gt), Ok(()));
    }

    #[test]
    fn tree_cycles_of_binary_tree() {
        let edges: Vec<_> = (1..15).map(|i| ((i - 1) / 2, i)).collect();
        let tree = Graph::from_edges(15, &edges).unwrap();
        let gt = gen_tree_cycles(&tree, 0).unwrap();
        assert_eq!(check_embedding(&gt), Ok(()));
        // 14 tree edges, layer cycles of sizes 2 (one edge), 4 and 8
        assert_eq!(gt.graph().m(), 14 + 1 + 4 + 8);
    }

    #[test]
    fn tree_cycles_rejects_cycles() {
        assert!(gen_tree_cycles(&gen_cycle(4).unwrap(), 0).is_err());
    }

    #[test]
    fn lowerbound_with_single_vertex() {
        let (g, lay) = gen_lowerbound(&Graph::new(1)).unwrap();
        assert_eq!(g.n(), 46);
        assert!(g.has_edge(lay.x, lay.y));
        for (i, &v) in lay.path.iter().enumerate() {
            assert!(g.has_edge(lay.x, v) && g.has_edge(lay.y, v));
            assert_eq!(lay.copies[i].len(), 1);
            assert_eq!(g.neighbours(lay.copies[i][0]), &[v]);
        }
    }
}
