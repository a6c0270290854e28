//! Simple undirected graphs, induced subgraphs and separations.

use std::collections::VecDeque;

use crate::error::{Error, Result};

/// Simple undirected graph on vertices `0..n`.
///
/// Neighbour lists are kept sorted, so iteration order is deterministic and
/// adjacency queries are a binary search.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl Graph {
    pub fn new(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], m: 0 }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::new(n);
        for &(u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::ParallelEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) -> bool {
        if u >= self.n() || v >= self.n() {
            return false;
        }
        match self.adj[u].binary_search(&v) {
            Ok(pos) => {
                self.adj[u].remove(pos);
                let pos = self.adj[v].binary_search(&u).expect("adjacency symmetric");
                self.adj[v].remove(pos);
                self.m -= 1;
                true
            }
            Err(_) => false,
        }
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    /// Neighbours of `v` in ascending id order.
    pub fn neighbours(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// All edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.m);
        for (u, nbrs) in self.adj.iter().enumerate() {
            out.extend(nbrs.iter().filter(|&&v| v > u).map(|&v| (u, v)));
        }
        out
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n()];
        let mut comps = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            comps.push(comp);
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.n() <= 1 || self.components().len() == 1
    }

    pub fn is_tree(&self) -> bool {
        self.n() >= 1 && self.m + 1 == self.n() && self.is_connected()
    }

    /// Subgraph induced by `s`. Vertex `i` of the result is `s[i]` of `self`;
    /// the returned map holds exactly that correspondence.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<(Graph, Vec<usize>)> {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in s.iter().enumerate() {
            self.check_vertex(v)?;
            if index[v] != usize::MAX {
                return Err(Error::InvalidParameter(format!("vertex {v} listed twice")));
            }
            index[v] = i;
        }
        let mut sub = Graph::new(s.len());
        for (i, &v) in s.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && i < j {
                    sub.add_edge(i, j)?;
                }
            }
        }
        Ok((sub, s.to_vec()))
    }
}

/// Membership mask over the vertices of a graph.
pub type VertexSet = Vec<bool>;

pub fn vertex_set(n: usize, members: impl IntoIterator<Item = usize>) -> VertexSet {
    let mut set = vec![false; n];
    for v in members {
        set[v] = true;
    }
    set
}

pub fn set_members(set: &[bool]) -> Vec<usize> {
    set.iter().enumerate().filter(|(_, &b)| b).map(|(v, _)| v).collect()
}

/// A pair of vertex sets `(V(G1), V(G2))`; the subgraphs are the induced closures.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Separation {
    pub left: VertexSet,
    pub right: VertexSet,
}

impl Separation {
    /// `(G, G)`: both parts are the whole graph, so the open sides are empty.
    pub fn whole(n: usize) -> Self {
        Separation { left: vec![true; n], right: vec![true; n] }
    }

    pub fn n(&self) -> usize {
        self.left.len()
    }

    pub fn in_boundary(&self, v: usize) -> bool {
        self.left[v] && self.right[v]
    }

    pub fn left_only(&self, v: usize) -> bool {
        self.left[v] && !self.right[v]
    }

    pub fn right_only(&self, v: usize) -> bool {
        self.right[v] && !self.left[v]
    }

    pub fn boundary(&self) -> Vec<usize> {
        (0..self.n()).filter(|&v| self.in_boundary(v)).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> Graph {
        Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap()
    }

    #[test]
    fn rejects_loops_and_parallel_edges() {
        let mut g = Graph::new(3);
        assert_eq!(g.add_edge(1, 1), Err(Error::SelfLoop(1)));
        g.add_edge(0, 1).unwrap();
        assert_eq!(g.add_edge(1, 0), Err(Error::ParallelEdge(0, 1)));
        assert!(matches!(g.add_edge(0, 5), Err(Error::VertexOutOfRange { vertex: 5, .. })));
        assert_eq!(g.m(), 1);
    }

    #[test]
    fn induced_whole_vertex_set_is_identity() {
        let g = k4();
        let (sub, map) = g.induced_subgraph(&[0, 1, 2, 3]).unwrap();
        assert_eq!(sub, g);
        assert_eq!(map, vec![0, 1, 2, 3]);
    }

    #[test]
    fn induced_empty_and_triangle() {
        let g = k4();
        let (empty, map) = g.induced_subgraph(&[]).unwrap();
        assert_eq!(empty.n(), 0);
        assert!(map.is_empty());
        let (tri, _) = g.induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(tri.edges(), vec![(0, 1), (0, 2), (1, 2)]);
    }

    #[test]
    fn induced_rejects_bad_ids() {
        assert!(k4().induced_subgraph(&[0, 9]).is_err());
    }

    #[test]
    fn components_and_trees() {
        let g = Graph::from_edges(5, &[(0, 1), (3, 4)]).unwrap();
        assert_eq!(g.components(), vec![vec![0, 1], vec![2], vec![3, 4]]);
        assert!(!g.is_connected());
        let t = Graph::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap();
        assert!(t.is_tree());
        assert!(!k4().is_tree());
    }
}
