//! Ground-truth checkers: repetitive-path search, properness, the exact
//! nonrepetitive chromatic number, and structural validators.
//!
//! A path `(v_1, ..., v_2t)` is repetitively coloured when
//! `col(v_j) = col(v_{t+j})` for every `j`. The search grows the two halves
//! `x = (v_1..v_t)` and `y = (v_{t+1}..v_2t)` in lockstep from a pair of
//! equally coloured start vertices and succeeds as soon as the end of the
//! first half is adjacent to the start of the second. Every repetitive path
//! arises this way, so the search is complete, and colour matching prunes
//! almost everything when the colouring is close to nonrepetitive.

use std::collections::VecDeque;

use crate::error::{Error, Result};
use crate::graph::{Graph, Separation};
use crate::layering::Layering;

pub const DEFAULT_NODE_BUDGET: u64 = 20_000_000_000;

/// A repetitively coloured path of even order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub path: Vec<usize>,
    pub half_colours: Vec<usize>,
}

impl Witness {
    fn new(path: Vec<usize>, col: &[usize]) -> Self {
        let half_colours = path[..path.len() / 2].iter().map(|&v| col[v]).collect();
        Witness { path, half_colours }
    }

    pub fn order(&self) -> usize {
        self.path.len()
    }
}

/// Options for [`find_repetitive_path_with`].
#[derive(Debug, Clone, Copy)]
pub struct PathSearch<'a> {
    /// Only paths of order at most this many vertices.
    pub max_order: Option<usize>,
    /// Abort with [`Error::BudgetExhausted`] after this many search nodes.
    pub node_budget: u64,
    /// Restrict to paths inside this vertex set.
    pub allowed: Option<&'a [bool]>,
    /// Only paths through this vertex.
    pub through: Option<usize>,
}

impl Default for PathSearch<'_> {
    fn default() -> Self {
        PathSearch { max_order: None, node_budget: DEFAULT_NODE_BUDGET, allowed: None, through: None }
    }
}

pub fn is_proper(g: &Graph, col: &[usize]) -> Result<(), (usize, usize)> {
    match g.edges().into_iter().find(|&(u, v)| col[u] == col[v]) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

pub fn find_repetitive_path(g: &Graph, col: &[usize], max_order: Option<usize>) -> Result<Option<Witness>> {
    find_repetitive_path_with(g, col, PathSearch { max_order, ..PathSearch::default() })
}

pub fn is_nonrepetitive(g: &Graph, col: &[usize]) -> Result<bool> {
    Ok(find_repetitive_path(g, col, None)?.is_none())
}

pub fn find_repetitive_path_with(g: &Graph, col: &[usize], opts: PathSearch<'_>) -> Result<Option<Witness>> {
    if col.len() != g.n() {
        return Err(Error::InvalidParameter(format!("{} colours for {} vertices", col.len(), g.n())));
    }
    let n = g.n();
    let allowed_count = opts.allowed.map_or(n, |a| a.iter().filter(|&&b| b).count());
    let max_half = opts.max_order.map_or(allowed_count / 2, |o| (o / 2).min(allowed_count / 2));
    if max_half == 0 {
        return Ok(None);
    }
    let mut search = PairSearch {
        g,
        col,
        allowed: opts.allowed,
        max_half,
        used: vec![false; n],
        xs: Vec::new(),
        ys: Vec::new(),
        nodes: 0,
        budget: opts.node_budget,
        dist: DistanceOracle::new(g, opts.allowed),
    };
    let found = match opts.through {
        Some(v) => search.anchored(v)?,
        None => search.unanchored()?,
    };
    Ok(found.map(|path| Witness::new(path, col)))
}

/// Distances used for pruning: the first half must still be able to reach a
/// neighbour of the second half's start.
struct DistanceOracle {
    n: usize,
    table: Vec<u16>,
}

impl DistanceOracle {
    const LIMIT: usize = 2048;

    fn new(g: &Graph, allowed: Option<&[bool]>) -> Self {
        let n = g.n();
        if n > Self::LIMIT {
            return DistanceOracle { n: 0, table: Vec::new() };
        }
        let mut table = vec![u16::MAX; n * n];
        let ok = |v: usize| allowed.is_none_or(|a| a[v]);
        let mut queue = VecDeque::new();
        for s in (0..n).filter(|&s| ok(s)) {
            let row = &mut table[s * n..(s + 1) * n];
            row[s] = 0;
            queue.push_back(s);
            while let Some(v) = queue.pop_front() {
                for &w in g.neighbours(v) {
                    if ok(w) && row[w] == u16::MAX {
                        row[w] = row[v] + 1;
                        queue.push_back(w);
                    }
                }
            }
        }
        DistanceOracle { n, table }
    }

    fn get(&self, a: usize, b: usize) -> usize {
        if self.n == 0 {
            0
        } else {
            self.table[a * self.n + b] as usize
        }
    }
}

struct PairSearch<'a> {
    g: &'a Graph,
    col: &'a [usize],
    allowed: Option<&'a [bool]>,
    max_half: usize,
    used: Vec<bool>,
    xs: Vec<usize>,
    ys: Vec<usize>,
    nodes: u64,
    budget: u64,
    dist: DistanceOracle,
}

impl PairSearch<'_> {
    fn ok(&self, v: usize) -> bool {
        !self.used[v] && self.allowed.is_none_or(|a| a[v])
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            Err(Error::BudgetExhausted(self.budget))
        } else {
            Ok(())
        }
    }

    fn push(&mut self, x: usize, y: usize) {
        self.used[x] = true;
        self.used[y] = true;
        self.xs.push(x);
        self.ys.push(y);
    }

    fn pop(&mut self) {
        let x = self.xs.pop().unwrap();
        let y = self.ys.pop().unwrap();
        self.used[x] = false;
        self.used[y] = false;
    }

    fn witness(&self) -> Vec<usize> {
        self.xs.iter().chain(&self.ys).copied().collect()
    }

    fn unanchored(&mut self) -> Result<Option<Vec<usize>>> {
        let n = self.g.n();
        for a in 0..n {
            if !self.ok(a) {
                continue;
            }
            for b in 0..n {
                if b == a || !self.ok(b) || self.col[a] != self.col[b] {
                    continue;
                }
                self.push(a, b);
                let found = self.forward()?;
                if found {
                    return Ok(Some(self.witness()));
                }
                self.pop();
            }
        }
        Ok(None)
    }

    /// Extends both halves at their far ends until the first half closes
    /// onto the start of the second.
    fn forward(&mut self) -> Result<bool> {
        self.tick()?;
        let j = self.xs.len();
        let x = self.xs[j - 1];
        let y = self.ys[j - 1];
        let y_first = self.ys[0];
        if self.g.has_edge(x, y_first) {
            return Ok(true);
        }
        if j >= self.max_half {
            return Ok(false);
        }
        let d = self.dist.get(x, y_first);
        if d == u16::MAX as usize || d > self.max_half - j + 1 {
            return Ok(false);
        }
        let g = self.g;
        for &nx in g.neighbours(x) {
            if !self.ok(nx) {
                continue;
            }
            for &ny in g.neighbours(y) {
                if ny == nx || !self.ok(ny) || self.col[nx] != self.col[ny] {
                    continue;
                }
                self.push(nx, ny);
                if self.forward()? {
                    return Ok(true);
                }
                self.pop();
            }
        }
        Ok(false)
    }

    /// Paths through `v`: `v` sits at some position `j` of one half and its
    /// partner (same colour) at position `j` of the other. Grow towards
    /// position 1 first, then forwards.
    fn anchored(&mut self, v: usize) -> Result<Option<Vec<usize>>> {
        if !self.ok(v) {
            return Ok(None);
        }
        let n = self.g.n();
        for u in 0..n {
            if u == v || !self.ok(u) || self.col[u] != self.col[v] {
                continue;
            }
            for (a, b) in [(v, u), (u, v)] {
                self.push(a, b);
                if self.backward()? {
                    return Ok(Some(self.witness()));
                }
                self.pop();
            }
        }
        Ok(None)
    }

    fn backward(&mut self) -> Result<bool> {
        // stop here: the current first entries are positions 1
        if self.forward()? {
            return Ok(true);
        }
        if self.xs.len() >= self.max_half {
            return Ok(false);
        }
        let (x, y) = (self.xs[0], self.ys[0]);
        let g = self.g;
        for &nx in g.neighbours(x) {
            if !self.ok(nx) {
                continue;
            }
            for &ny in g.neighbours(y) {
                if ny == nx || !self.ok(ny) || self.col[nx] != self.col[ny] {
                    continue;
                }
                self.used[nx] = true;
                self.used[ny] = true;
                self.xs.insert(0, nx);
                self.ys.insert(0, ny);
                if self.backward()? {
                    return Ok(true);
                }
                self.xs.remove(0);
                self.ys.remove(0);
                self.used[nx] = false;
                self.used[ny] = false;
            }
        }
        Ok(false)
    }
}

/// Independent oracle: enumerates every simple path once (from its smaller
/// endpoint) and tests it directly. Exponential; for small graphs only.
pub fn naive_find_repetitive_path(g: &Graph, col: &[usize], max_order: Option<usize>) -> Option<Vec<usize>> {
    fn is_repetitive(path: &[usize], col: &[usize]) -> bool {
        let t = path.len() / 2;
        path.len().is_multiple_of(2) && (0..t).all(|j| col[path[j]] == col[path[t + j]])
    }
    fn dfs(g: &Graph, col: &[usize], limit: usize, path: &mut Vec<usize>, on: &mut [bool]) -> bool {
        let last = *path.last().unwrap();
        if path.len() >= 2 && path[0] < last && is_repetitive(path, col) {
            return true;
        }
        if path.len() == limit {
            return false;
        }
        for &w in g.neighbours(last) {
            if !on[w] {
                on[w] = true;
                path.push(w);
                if dfs(g, col, limit, path, on) {
                    return true;
                }
                path.pop();
                on[w] = false;
            }
        }
        false
    }
    let limit = max_order.unwrap_or(g.n());
    let mut on = vec![false; g.n()];
    for s in 0..g.n() {
        let mut path = vec![s];
        on[s] = true;
        if dfs(g, col, limit, &mut path, &mut on) {
            return Some(path);
        }
        on[s] = false;
    }
    None
}

/// Minimum number of colours of a colouring with no repetitive path (of
/// order at most `max_order`, when given), together with such a colouring.
///
/// Backtracks over vertices in BFS order; colours are introduced in
/// ascending order of first use. After each assignment only paths through
/// the newly coloured vertex are searched.
pub fn min_nonrepetitive_colouring(
    g: &Graph,
    max_order: Option<usize>,
    max_colours: Option<usize>,
    node_budget: u64,
) -> Result<(usize, Vec<usize>)> {
    let n = g.n();
    if n == 0 {
        return Ok((0, Vec::new()));
    }
    let order = bfs_order(g);
    let cap = max_colours.unwrap_or(n).min(n);
    let start = if g.m() == 0 { 1 } else { 2 };
    let mut spent = 0u64;
    for k in start..=cap {
        let mut col = vec![usize::MAX; n];
        let mut coloured = vec![false; n];
        let mut search = Backtrack { g, order: &order, k, max_order, budget: node_budget, spent: &mut spent };
        if search.run(0, 0, &mut col, &mut coloured)? {
            return Ok((k, col));
        }
    }
    Err(Error::Inconclusive { max_colours: cap })
}

/// The nonrepetitive chromatic number by exhaustive search.
pub fn exact_pi(g: &Graph, max_colours: Option<usize>) -> Result<usize> {
    min_nonrepetitive_colouring(g, None, max_colours, DEFAULT_NODE_BUDGET).map(|(k, _)| k)
}

fn bfs_order(g: &Graph) -> Vec<usize> {
    let mut seen = vec![false; g.n()];
    let mut order = Vec::with_capacity(g.n());
    for s in 0..g.n() {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            order.push(v);
            for &w in g.neighbours(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

struct Backtrack<'a> {
    g: &'a Graph,
    order: &'a [usize],
    k: usize,
    max_order: Option<usize>,
    budget: u64,
    spent: &'a mut u64,
}

impl Backtrack<'_> {
    fn run(&mut self, idx: usize, used: usize, col: &mut [usize], coloured: &mut [bool]) -> Result<bool> {
        if idx == self.order.len() {
            return Ok(true);
        }
        let v = self.order[idx];
        let choices = (used + 1).min(self.k);
        coloured[v] = true;
        for c in 0..choices {
            *self.spent += 1;
            if *self.spent > self.budget {
                return Err(Error::BudgetExhausted(self.budget));
            }
            if self.g.neighbours(v).iter().any(|&w| coloured[w] && col[w] == c) {
                continue;
            }
            col[v] = c;
            let opts = PathSearch {
                max_order: self.max_order,
                node_budget: self.budget,
                allowed: Some(coloured),
                through: Some(v),
            };
            if find_repetitive_path_with(self.g, col, opts)?.is_none()
                && self.run(idx + 1, used.max(c + 1), col, coloured)?
            {
                return Ok(true);
            }
        }
        coloured[v] = false;
        col[v] = usize::MAX;
        Ok(false)
    }
}

pub fn verify_layering(g: &Graph, lay: &Layering) -> Result<(), (usize, usize)> {
    match g.edges().into_iter().find(|&(u, v)| lay.layer(u).abs_diff(lay.layer(v)) > 1) {
        Some(e) => Err(e),
        None => Ok(()),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationViolation {
    SizeMismatch,
    Uncovered(usize),
    CrossEdge(usize, usize),
}

/// `V(G1) ∪ V(G2) = V(G)` and no edge joins the two open sides.
pub fn verify_separation(g: &Graph, sep: &Separation) -> Result<(), SeparationViolation> {
    if sep.left.len() != g.n() || sep.right.len() != g.n() {
        return Err(SeparationViolation::SizeMismatch);
    }
    if let Some(v) = (0..g.n()).find(|&v| !sep.left[v] && !sep.right[v]) {
        return Err(SeparationViolation::Uncovered(v));
    }
    for (u, v) in g.edges() {
        let crossing = (sep.left_only(u) && sep.right_only(v)) || (sep.right_only(u) && sep.left_only(v));
        if crossing {
            return Err(SeparationViolation::CrossEdge(u, v));
        }
    }
    Ok(())
}
