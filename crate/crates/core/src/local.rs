//! Colourings with no short repetition: colour each slab of `2k`
//! consecutive layers separately, then give every vertex the tuple of its
//! slab colours indexed by slab residue mod `2k`.

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::embedding::RotationSystem;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::layering::{forest_layering, Layering};
use crate::verify::{find_repetitive_path, min_nonrepetitive_colouring, Witness};

/// The subgraph induced by layers `lo..=hi`, where `lo = max(0, index)`
/// and `hi = min(p, index + 2k - 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Slab {
    pub index: i64,
    pub lo: usize,
    pub hi: usize,
    pub graph: Graph,
    /// Local id to vertex id of the whole graph.
    pub vertices: Vec<usize>,
}

impl Slab {
    pub fn residue(&self, k: usize) -> usize {
        self.index.rem_euclid(2 * k as i64) as usize
    }
}

/// Every index `i` in `-(2k - 1)..=p`. Indices below zero give truncated
/// windows so that each vertex has a covering slab at every residue.
pub fn slab_indices(p: usize, k: usize) -> std::ops::RangeInclusive<i64> {
    -(2 * k as i64 - 1)..=p as i64
}

pub fn slab_window(index: i64, p: usize, k: usize) -> (usize, usize) {
    let lo = index.max(0) as usize;
    let hi = (index + 2 * k as i64 - 1).min(p as i64) as usize;
    (lo, hi)
}

pub fn slabs(g: &Graph, lay: &Layering, k: usize) -> Result<Vec<Slab>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let by_layer = lay.layer_sets();
    slab_indices(lay.p(), k)
        .map(|index| {
            let (lo, hi) = slab_window(index, lay.p(), k);
            let mut members: Vec<usize> = by_layer[lo..=hi].iter().flatten().copied().collect();
            members.sort_unstable();
            let (graph, vertices) = g.induced_subgraph(&members)?;
            Ok(Slab { index, lo, hi, graph, vertices })
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlabOptions {
    /// Only repetitions of at most this order are excluded.
    pub max_order: Option<usize>,
    /// Slabs with at most this many vertices are coloured optimally.
    pub exact_limit: usize,
    pub exact_node_budget: u64,
    /// Recolouring moves per colour budget before doubling it.
    pub rounds: usize,
    /// Fail instead of doubling past this many colours.
    pub max_colours: Option<usize>,
    pub seed: u64,
}

impl Default for SlabOptions {
    fn default() -> Self {
        SlabOptions {
            max_order: None,
            exact_limit: 14,
            exact_node_budget: 5_000_000,
            rounds: 2000,
            max_colours: None,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlabColouring {
    pub colours: Vec<usize>,
    pub num_colours: usize,
    /// Whether the count is the exact minimum.
    pub exact: bool,
}

/// Colours `g` with no repetitive path of order at most `opts.max_order`.
pub fn colour_slab(g: &Graph, opts: &SlabOptions) -> Result<SlabColouring> {
    let n = g.n();
    if n == 0 {
        return Err(Error::InvalidParameter("empty slab".into()));
    }
    if n <= opts.exact_limit {
        match min_nonrepetitive_colouring(g, opts.max_order, opts.max_colours, opts.exact_node_budget) {
            Ok((num_colours, colours)) => return Ok(SlabColouring { colours, num_colours, exact: true }),
            Err(Error::BudgetExhausted(_)) => {}
            Err(e) => return Err(e),
        }
    }
    let mut budget = 2usize.min(n);
    let mut smallest: Option<Witness> = None;
    loop {
        if let Some(cap) = opts.max_colours {
            if budget > cap {
                let witness = smallest.map(|w| w.path).unwrap_or_default();
                return Err(Error::SlabBudgetExhausted { witness });
            }
        }
        if budget >= n {
            return Ok(SlabColouring { colours: (0..n).collect(), num_colours: n, exact: false });
        }
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ (budget as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        let mut col = greedy_start(g, budget, &mut rng);
        for _ in 0..opts.rounds {
            match find_repetitive_path(g, &col, opts.max_order)? {
                None => {
                    let num_colours = col.iter().collect::<std::collections::BTreeSet<_>>().len();
                    return Ok(SlabColouring { colours: col, num_colours, exact: false });
                }
                Some(w) => {
                    let v = w.path[rng.gen_range(0..w.path.len())];
                    let free: Vec<usize> =
                        (0..budget).filter(|&c| c != col[v] && g.neighbours(v).iter().all(|&u| col[u] != c)).collect();
                    col[v] = if free.is_empty() {
                        (col[v] + rng.gen_range(1..budget)) % budget
                    } else {
                        free[rng.gen_range(0..free.len())]
                    };
                    if smallest.as_ref().is_none_or(|s| w.order() < s.order()) {
                        smallest = Some(w);
                    }
                }
            }
        }
        budget *= 2;
    }
}

/// Random colours, avoiding colours already on neighbours when possible.
fn greedy_start(g: &Graph, budget: usize, rng: &mut ChaCha8Rng) -> Vec<usize> {
    let n = g.n();
    let mut col = vec![usize::MAX; n];
    for v in 0..n {
        let free: Vec<usize> = (0..budget).filter(|&c| g.neighbours(v).iter().all(|&u| col[u] != c)).collect();
        col[v] = if free.is_empty() { rng.gen_range(0..budget) } else { free[rng.gen_range(0..free.len())] };
    }
    col
}

/// Per vertex the tuple `(phi_0, ..., phi_{2k-1})`, where `phi_j` is the
/// colour from the unique slab with index congruent to `j` containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TupleColouring {
    pub k: usize,
    pub tuples: Vec<Vec<usize>>,
    /// Tuple ids numbered by first occurrence in vertex order.
    pub flat: Vec<usize>,
    pub num_colours: usize,
    pub slab_colourings: Vec<(i64, SlabColouring)>,
}

pub fn product_colouring(n: usize, k: usize, slabs: &[Slab], colourings: Vec<SlabColouring>) -> Result<TupleColouring> {
    if slabs.len() != colourings.len() {
        return Err(Error::InvalidParameter(format!("{} slabs, {} colourings", slabs.len(), colourings.len())));
    }
    let width = 2 * k;
    let mut entries: Vec<Vec<Option<usize>>> = vec![vec![None; width]; n];
    for (slab, colouring) in slabs.iter().zip(&colourings) {
        let j = slab.residue(k);
        for (local, &v) in slab.vertices.iter().enumerate() {
            if entries[v][j].replace(colouring.colours[local]).is_some() {
                return Err(Error::Internal(format!("vertex {v} covered twice at residue {j}")));
            }
        }
    }
    let mut tuples = Vec::with_capacity(n);
    for (vertex, row) in entries.into_iter().enumerate() {
        let tuple = row
            .into_iter()
            .enumerate()
            .map(|(residue, c)| c.ok_or(Error::MissingCover { vertex, residue }))
            .collect::<Result<Vec<_>>>()?;
        tuples.push(tuple);
    }
    let mut ids: HashMap<&[usize], usize> = HashMap::new();
    let flat: Vec<usize> = tuples
        .iter()
        .map(|t| {
            let next = ids.len();
            *ids.entry(t.as_slice()).or_insert(next)
        })
        .collect();
    let num_colours = ids.len();
    let slab_colourings = slabs.iter().map(|s| s.index).zip(colourings).collect();
    Ok(TupleColouring { k, tuples, flat, num_colours, slab_colourings })
}

/// Checks that each vertex lies in exactly one slab of every residue.
pub fn check_residue_cover(n: usize, k: usize, slabs: &[Slab]) -> Result<()> {
    let width = 2 * k;
    let mut count = vec![vec![0usize; width]; n];
    for s in slabs {
        let j = s.residue(k);
        for &v in &s.vertices {
            count[v][j] += 1;
        }
    }
    for (vertex, row) in count.iter().enumerate() {
        for (residue, &c) in row.iter().enumerate() {
            match c {
                1 => {}
                0 => return Err(Error::MissingCover { vertex, residue }),
                _ => return Err(Error::Internal(format!("vertex {vertex} covered {c} times at residue {residue}"))),
            }
        }
    }
    Ok(())
}

/// Index of the slab containing a path: its minimum layer.
pub fn covering_slab(lay: &Layering, path: &[usize]) -> i64 {
    path.iter().map(|&v| lay.layer(v)).min().unwrap_or(0) as i64
}

#[derive(Debug, Clone)]
pub struct LocalRun {
    pub colouring: TupleColouring,
    pub layering: Layering,
    pub slabs: Vec<Slab>,
}

/// Layers `g` from `root` (each other component from its smallest vertex),
/// colours every slab against repetitions of order at most `2k`, and
/// assembles the tuples.
pub fn colour_local(g: &Graph, root: usize, k: usize, seed: u64) -> Result<LocalRun> {
    g.check_vertex(root)?;
    if k == 0 {
        return Err(Error::InvalidParameter("k must be at least 1".into()));
    }
    let lay = forest_layering(g, &[root])?;
    let slabs = slabs(g, &lay, k)?;
    check_residue_cover(g.n(), k, &slabs)?;
    let colourings = slabs
        .iter()
        .map(|s| {
            let opts = SlabOptions { max_order: Some(2 * k), seed: seed ^ s.index as u64, ..SlabOptions::default() };
            colour_slab(&s.graph, &opts)
        })
        .collect::<Result<Vec<_>>>()?;
    let colouring = product_colouring(g.n(), k, &slabs, colourings)?;
    Ok(LocalRun { colouring, layering: lay, slabs })
}

pub fn colour_local_planar(e: &RotationSystem, root: usize, k: usize, seed: u64) -> Result<LocalRun> {
    colour_local(e.graph(), root, k, seed)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{gen_path, gen_triangulation};
    use crate::layering::bfs_layering;

    #[test]
    fn slab_windows() {
        // p = 5, k = 1: G_3 spans layers 3 and 4
        assert_eq!(slab_window(3, 5, 1), (3, 4));
        assert_eq!(slab_window(5, 5, 1), (5, 5));
        assert_eq!(slab_window(-1, 5, 1), (0, 0));
        assert_eq!(slab_window(0, 2, 3), (0, 2));
        assert_eq!(slab_indices(5, 1).count(), 7);
    }

    #[test]
    fn path_slabs_are_short_paths() {
        let g = gen_path(6).unwrap();
        let lay = bfs_layering(&g, 0).unwrap();
        let all = slabs(&g, &lay, 1).unwrap();
        assert!(all.iter().all(|s| s.graph.n() <= 2 && s.graph.m() + 1 == s.graph.n()));
        check_residue_cover(6, 1, &all).unwrap();
    }

    #[test]
    fn wide_k_gives_whole_graph() {
        let g = gen_path(4).unwrap();
        let lay = bfs_layering(&g, 0).unwrap();
        let all = slabs(&g, &lay, 5).unwrap();
        let s0 = all.iter().find(|s| s.index == 0).unwrap();
        assert_eq!(s0.graph, g);
    }

    #[test]
    fn slab_colour_examples() {
        let one = colour_slab(&Graph::new(1), &SlabOptions::default()).unwrap();
        assert_eq!(one.num_colours, 1);
        let p4 = colour_slab(&gen_path(4).unwrap(), &SlabOptions::default()).unwrap();
        assert_eq!(p4.num_colours, 3);
        let k4 = gen_triangulation(4, 0, 0).unwrap();
        assert_eq!(colour_slab(k4.graph(), &SlabOptions::default()).unwrap().num_colours, 4);
    }

    #[test]
    fn heuristic_path_colouring() {
        let g = gen_path(40).unwrap();
        let opts = SlabOptions { exact_limit: 0, ..SlabOptions::default() };
        let c = colour_slab(&g, &opts).unwrap();
        assert_eq!(find_repetitive_path(&g, &c.colours, None).unwrap(), None);
    }

    #[test]
    fn colour_cap_reports_witness() {
        let g = gen_triangulation(5, 0, 0).unwrap();
        let opts = SlabOptions { exact_limit: 0, max_colours: Some(2), rounds: 10, ..SlabOptions::default() };
        match colour_slab(g.graph(), &opts) {
            Err(Error::SlabBudgetExhausted { witness }) => assert!(!witness.is_empty()),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn missing_cover_detected() {
        let g = gen_path(3).unwrap();
        let lay = bfs_layering(&g, 0).unwrap();
        let all: Vec<Slab> = slabs(&g, &lay, 1).unwrap().into_iter().filter(|s| s.index >= 0).collect();
        assert_eq!(check_residue_cover(3, 1, &all), Err(Error::MissingCover { vertex: 0, residue: 1 }));
        let cols = all.iter().map(|s| colour_slab(&s.graph, &SlabOptions::default()).unwrap()).collect();
        assert!(matches!(product_colouring(3, 1, &all, cols), Err(Error::MissingCover { .. })));
    }

    #[test]
    fn k1_is_proper() {
        let t = gen_triangulation(30, 4, 30).unwrap();
        let run = colour_local_planar(&t, 0, 1, 7).unwrap();
        assert_eq!(run.colouring.tuples[0].len(), 2);
        assert_eq!(crate::verify::is_proper(t.graph(), &run.colouring.flat), Ok(()));
    }

    #[test]
    fn k2_triangulation_forty() {
        let t = gen_triangulation(40, 8, 40).unwrap();
        let run = colour_local_planar(&t, 0, 2, 1).unwrap();
        assert_eq!(find_repetitive_path(t.graph(), &run.colouring.flat, Some(4)).unwrap(), None);
    }
}
