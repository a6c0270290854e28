//! Layerings, BFS layerings and monotone paths.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// A partition of the vertices into layers `V_0, ..., V_p`.
///
/// When produced by [`bfs_layering`] the layer of a vertex is its distance
/// from `root`, and `parent` holds the lowest-id neighbour one layer closer
/// to the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Layering {
    layer: Vec<usize>,
    p: usize,
    root: Option<usize>,
    parent: Vec<Option<usize>>,
}

impl Layering {
    /// A layering from an arbitrary layer map (no BFS structure).
    pub fn from_layers(layer: Vec<usize>) -> Self {
        let p = layer.iter().copied().max().unwrap_or(0);
        let n = layer.len();
        Layering { layer, p, root: None, parent: vec![None; n] }
    }

    pub fn layer(&self, v: usize) -> usize {
        self.layer[v]
    }

    pub fn layers(&self) -> &[usize] {
        &self.layer
    }

    /// Largest layer index.
    pub fn p(&self) -> usize {
        self.p
    }

    pub fn root(&self) -> Option<usize> {
        self.root
    }

    pub fn parent(&self, v: usize) -> Option<usize> {
        self.parent[v]
    }

    pub fn n(&self) -> usize {
        self.layer.len()
    }

    /// Vertices of each layer in ascending id order.
    pub fn layer_sets(&self) -> Vec<Vec<usize>> {
        let mut sets = vec![Vec::new(); if self.layer.is_empty() { 0 } else { self.p + 1 }];
        for (v, &l) in self.layer.iter().enumerate() {
            sets[l].push(v);
        }
        sets
    }

    pub fn layer_sizes(&self) -> Vec<usize> {
        self.layer_sets().iter().map(Vec::len).collect()
    }
}

/// The layering starting at `root`: layer `i` holds the vertices at distance `i`.
pub fn bfs_layering(g: &Graph, root: usize) -> Result<Layering> {
    g.check_vertex(root)?;
    let n = g.n();
    let mut layer = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    layer[root] = 0;
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbours(v) {
            if layer[w] == usize::MAX {
                layer[w] = layer[v] + 1;
                queue.push_back(w);
            }
        }
    }
    if let Some(unreached) = layer.iter().position(|&l| l == usize::MAX) {
        return Err(Error::Disconnected { root, unreached });
    }
    // lowest-id neighbour in the previous layer; neighbour lists are sorted
    for v in 0..n {
        if v != root {
            parent[v] = g.neighbours(v).iter().copied().find(|&w| layer[w] + 1 == layer[v]);
        }
    }
    let p = layer.iter().copied().max().unwrap_or(0);
    Ok(Layering { layer, p, root: Some(root), parent })
}

/// BFS layering of each component from its root (`roots` lists one root per
/// component, or is empty to use each component's smallest vertex).
/// The union is a layering of the whole graph.
pub fn forest_layering(g: &Graph, roots: &[usize]) -> Result<Layering> {
    let n = g.n();
    let mut layer = vec![usize::MAX; n];
    let mut parent = vec![None; n];
    let comps = g.components();
    for comp in &comps {
        let root = roots.iter().copied().find(|r| comp.binary_search(r).is_ok()).unwrap_or(comp[0]);
        let (sub, map) = g.induced_subgraph(comp)?;
        let local_root = comp.binary_search(&root).expect("root in component");
        let lay = bfs_layering(&sub, local_root)?;
        for (i, &v) in map.iter().enumerate() {
            layer[v] = lay.layer(i);
            parent[v] = lay.parent(i).map(|j| map[j]);
        }
    }
    let p = layer.iter().copied().max().unwrap_or(0);
    let root = if comps.len() == 1 { roots.first().copied().or(Some(0)) } else { None };
    Ok(Layering { layer, p, root, parent })
}

/// A monotone path from `v` down to the root: one vertex per layer
/// `layer(v), ..., 0`, consecutive vertices adjacent.
///
/// Follows BFS parents. When `agree_with` supplies arms (layer-indexed, one
/// vertex per layer starting at the root), the path splices onto the first
/// arm it meets, preferring the first arm when both are met in the same
/// layer, and then follows that arm down to the root.
pub fn monotone_path(lay: &Layering, v: usize, agree_with: Option<(&[usize], &[usize])>) -> Vec<usize> {
    let mut path = Vec::with_capacity(lay.layer(v) + 1);
    let mut z = v;
    loop {
        let i = lay.layer(z);
        if let Some((u_arm, v_arm)) = agree_with {
            let arm = if u_arm.get(i) == Some(&z) {
                Some(u_arm)
            } else if v_arm.get(i) == Some(&z) {
                Some(v_arm)
            } else {
                None
            };
            if let Some(arm) = arm {
                path.extend(arm[..=i].iter().rev());
                return path;
            }
        }
        path.push(z);
        match lay.parent(z) {
            Some(p) => z = p,
            None => return path,
        }
    }
}
