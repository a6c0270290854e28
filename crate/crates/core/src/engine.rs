//! Recursive separator labelling and the colourings built on it.
//!
//! Each vertex gets `(pattern, depth, label)`: `pattern` is the certificate
//! symbol of its layer, `depth` the recursion level at which it joined a
//! separator boundary, and `label` its rank among that boundary's vertices
//! in the same layer.

use std::collections::BTreeSet;

use num_bigint::BigUint;

use crate::embedding::{triangulate, RotationSystem};
use crate::error::{Error, Result};
use crate::graph::{Graph, Separation};
use crate::layering::{bfs_layering, Layering};
use crate::separator::LollipopSearch;
use crate::verify::{verify_separation, SeparationViolation};
use crate::words::{certificate_with_fallback, WalkCertificate, DEFAULT_T_MAX};

/// Balance `epsilon = eps_num / eps_den` and per-layer boundary cap `c`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EngineParams {
    pub eps_num: u64,
    pub eps_den: u64,
    pub c: usize,
}

impl EngineParams {
    pub fn new(eps_num: u64, eps_den: u64, c: usize) -> Result<Self> {
        if eps_num == 0 || eps_num >= eps_den {
            return Err(Error::InvalidParameter(format!("epsilon {eps_num}/{eps_den} not in (0, 1)")));
        }
        if c == 0 {
            return Err(Error::InvalidParameter("c must be at least 1".into()));
        }
        Ok(EngineParams { eps_num, eps_den, c })
    }

    /// `epsilon = 1/3`, `c = 2`.
    pub fn planar() -> Self {
        EngineParams { eps_num: 1, eps_den: 3, c: 2 }
    }

    /// `x <= (1 - epsilon) * size`, exactly.
    pub fn side_ok(&self, x: usize, size: usize) -> bool {
        (x as u128) * (self.eps_den as u128) <= ((self.eps_den - self.eps_num) as u128) * (size as u128)
    }

    /// `d <= 1 + log_{1/(1-epsilon)} n`, exactly.
    pub fn depth_ok(&self, d: usize, n: usize) -> bool {
        if d <= 1 {
            return true;
        }
        let e = (d - 1) as u32;
        BigUint::from(self.eps_den).pow(e) <= BigUint::from(n) * BigUint::from(self.eps_den - self.eps_num).pow(e)
    }
}

/// Produces a separation of the whole graph balanced for `b`.
pub trait SeparatorOracle {
    fn separate(&mut self, b: &[bool]) -> Result<Separation>;
}

/// Instrumentation for one recursion node.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NodeReport {
    pub depth: usize,
    pub b_size: usize,
    pub boundary_b: usize,
    pub max_boundary_b_per_layer: usize,
    pub left_b: usize,
    pub right_b: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LabelRecord {
    pub depth: Vec<usize>,
    pub label: Vec<usize>,
    pub max_depth: usize,
    pub nodes: Vec<NodeReport>,
}

/// The recursion: label the boundary of a separation for `B` at depth `d`,
/// then recurse on each open side intersected with `B` at depth `d + 1`.
/// Every oracle answer is checked against the contract.
pub fn recursive_labels(
    g: &Graph,
    lay: &Layering,
    oracle: &mut dyn SeparatorOracle,
    params: EngineParams,
) -> Result<LabelRecord> {
    let n = g.n();
    if lay.n() != n {
        return Err(Error::InvalidParameter("layering size differs from graph".into()));
    }
    let mut depth = vec![0usize; n];
    let mut label = vec![0usize; n];
    let mut nodes = Vec::new();
    let mut stack: Vec<(Vec<usize>, usize)> = vec![((0..n).collect(), 1)];
    while let Some((members, d)) = stack.pop() {
        if members.is_empty() {
            continue;
        }
        let mut b = vec![false; n];
        for &v in &members {
            b[v] = true;
        }
        let sep = oracle.separate(&b)?;
        if sep.n() != n {
            return Err(Error::SeparatorContract(format!("separation has {} vertices, graph has {n}", sep.n())));
        }
        verify_separation(g, &sep).map_err(|v| {
            Error::SeparatorContract(match v {
                SeparationViolation::SizeMismatch => "size mismatch".into(),
                SeparationViolation::Uncovered(x) => format!("vertex {x} in neither part"),
                SeparationViolation::CrossEdge(x, y) => format!("edge {x}-{y} crosses the separation"),
            })
        })?;

        let mut boundary: Vec<usize> = members.iter().copied().filter(|&v| sep.in_boundary(v)).collect();
        boundary.sort_by_key(|&v| (lay.layer(v), v));
        let mut max_per_layer = 0;
        let mut i = 0;
        while i < boundary.len() {
            let l = lay.layer(boundary[i]);
            let mut j = i;
            while j < boundary.len() && lay.layer(boundary[j]) == l {
                let v = boundary[j];
                if depth[v] != 0 {
                    return Err(Error::Internal(format!("vertex {v} labelled twice")));
                }
                depth[v] = d;
                label[v] = j - i + 1;
                j += 1;
            }
            max_per_layer = max_per_layer.max(j - i);
            i = j;
        }
        if max_per_layer > params.c {
            return Err(Error::SeparatorContract(format!(
                "{max_per_layer} boundary vertices of B in one layer, cap is {}",
                params.c
            )));
        }
        let left: Vec<usize> = members.iter().copied().filter(|&v| sep.left_only(v)).collect();
        let right: Vec<usize> = members.iter().copied().filter(|&v| sep.right_only(v)).collect();
        for (name, side) in [("left", &left), ("right", &right)] {
            if !params.side_ok(side.len(), members.len()) {
                return Err(Error::SeparatorContract(format!(
                    "{name} side holds {} of {} vertices of B, above 1 - {}/{}",
                    side.len(),
                    members.len(),
                    params.eps_num,
                    params.eps_den
                )));
            }
        }
        nodes.push(NodeReport {
            depth: d,
            b_size: members.len(),
            boundary_b: boundary.len(),
            max_boundary_b_per_layer: max_per_layer,
            left_b: left.len(),
            right_b: right.len(),
        });
        stack.push((right, d + 1));
        stack.push((left, d + 1));
    }
    if let Some(v) = (0..n).find(|&v| depth[v] == 0) {
        return Err(Error::Internal(format!("vertex {v} never labelled")));
    }
    let max_depth = depth.iter().copied().max().unwrap_or(0);
    Ok(LabelRecord { depth, label, max_depth, nodes })
}

/// Median split of a path graph: boundary is the median vertex of `B`
/// in path order. Satisfies the contract with `epsilon = 1/2`, `c = 1`.
#[derive(Debug, Clone)]
pub struct PathOracle {
    order: Vec<usize>,
    position: Vec<usize>,
}

impl PathOracle {
    pub fn new(path: &Graph) -> Result<Self> {
        let n = path.n();
        if !path.is_tree() || (0..n).any(|v| path.degree(v) > 2) {
            return Err(Error::InvalidParameter("path oracle needs a path graph".into()));
        }
        let start = (0..n).find(|&v| path.degree(v) <= 1).unwrap_or(0);
        let mut order = vec![start];
        let mut prev = usize::MAX;
        while order.len() < n {
            let cur = *order.last().expect("nonempty");
            let next = path.neighbours(cur).iter().copied().find(|&w| w != prev).expect("path continues");
            prev = cur;
            order.push(next);
        }
        let mut position = vec![0; n];
        for (i, &v) in order.iter().enumerate() {
            position[v] = i;
        }
        Ok(PathOracle { order, position })
    }
}

impl SeparatorOracle for PathOracle {
    fn separate(&mut self, b: &[bool]) -> Result<Separation> {
        let n = self.order.len();
        let in_b: Vec<usize> = self.order.iter().copied().filter(|&v| b[v]).collect();
        if in_b.is_empty() {
            return Ok(Separation::whole(n));
        }
        let cut = self.position[in_b[(in_b.len() - 1) / 2]];
        let left = (0..n).map(|v| self.position[v] <= cut).collect();
        let right = (0..n).map(|v| self.position[v] >= cut).collect();
        Ok(Separation { left, right })
    }
}

/// Lollipop separators on a plane triangulation, recording the number of
/// improvement moves per call.
#[derive(Debug, Clone)]
pub struct LollipopOracle<'a> {
    search: LollipopSearch<'a>,
    pub iterations: Vec<u64>,
}

impl<'a> LollipopOracle<'a> {
    pub fn new(t: &'a RotationSystem, lay: &'a Layering) -> Result<Self> {
        Ok(LollipopOracle { search: LollipopSearch::new(t, lay)?, iterations: Vec::new() })
    }

    /// See [`LollipopSearch::with_audit`].
    pub fn with_audit(mut self, audit: bool) -> Self {
        self.search = self.search.with_audit(audit);
        self
    }
}

impl SeparatorOracle for LollipopOracle<'_> {
    fn separate(&mut self, b: &[bool]) -> Result<Separation> {
        if b.iter().filter(|&&x| x).count() <= 2 {
            return Ok(Separation::whole(b.len()));
        }
        let found = self.search.find_balanced(b)?;
        self.iterations.push(found.iterations);
        Ok(crate::separator::to_separation(&found.lollipop, &found.stats))
    }
}

/// Per-vertex `(pattern, depth, label)` and the flat colour id
/// `(pattern * c + label - 1) * max_depth + depth - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredColouring {
    pub pattern: Vec<usize>,
    pub depth: Vec<usize>,
    pub label: Vec<usize>,
    pub flat: Vec<usize>,
    pub c: usize,
    pub max_depth: usize,
}

impl StructuredColouring {
    fn build(pattern: Vec<usize>, depth: Vec<usize>, label: Vec<usize>, c: usize, max_depth: usize) -> Self {
        let flat = (0..pattern.len())
            .map(|v| (pattern[v] * c + label[v] - 1) * max_depth + depth[v] - 1)
            .collect();
        StructuredColouring { pattern, depth, label, flat, c, max_depth }
    }

    pub fn n(&self) -> usize {
        self.flat.len()
    }

    pub fn num_colours(&self) -> usize {
        self.flat.iter().collect::<BTreeSet<_>>().len()
    }
}

pub fn assemble_colouring(
    lay: &Layering,
    cert: &WalkCertificate,
    labels: &LabelRecord,
    c: usize,
) -> Result<StructuredColouring> {
    if cert.len() < lay.p() + 1 {
        return Err(Error::CertificateTooShort { have: cert.len(), need: lay.p() + 1 });
    }
    let pattern = (0..lay.n()).map(|v| cert.symbol(lay.layer(v))).collect();
    Ok(StructuredColouring::build(pattern, labels.depth.clone(), labels.label.clone(), c, labels.max_depth))
}

/// Largest colour count `C` with `C <= 8 (1 + log_{3/2} n)`.
pub fn planar_colour_bound(n: usize) -> usize {
    let mut c = 8;
    while colours_within_planar_bound(c + 1, n) {
        c += 1;
    }
    c
}

/// `colours <= 8 (1 + log_{3/2} n)`, decided as `3^(C-8) <= n^8 * 2^(C-8)`.
pub fn colours_within_planar_bound(colours: usize, n: usize) -> bool {
    if colours <= 8 {
        return true;
    }
    let e = (colours - 8) as u32;
    BigUint::from(3u32).pow(e) <= BigUint::from(n).pow(8) * BigUint::from(2u32).pow(e)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlanarOptions {
    pub root: usize,
    pub t_max: usize,
    /// Used instead of generating one; must cover every layer.
    pub certificate: Option<WalkCertificate>,
    /// Re-flood separator sides after every move; see [`LollipopSearch::with_audit`].
    pub audit: bool,
}

impl Default for PlanarOptions {
    fn default() -> Self {
        PlanarOptions { root: 0, t_max: DEFAULT_T_MAX, certificate: None, audit: false }
    }
}

/// One connected component's share of a planar run.
#[derive(Debug, Clone)]
pub struct ComponentRun {
    pub vertices: Vec<usize>,
    /// Number of layers minus one, measured in the triangulation.
    pub p: usize,
    pub max_depth: usize,
    pub nodes: Vec<NodeReport>,
    pub separator_iterations: Vec<u64>,
}

#[derive(Debug, Clone)]
pub struct PlanarRun {
    pub colouring: StructuredColouring,
    pub certificate: WalkCertificate,
    /// Layer of each vertex in its component's triangulation.
    pub layer: Vec<usize>,
    pub components: Vec<ComponentRun>,
}

/// Triangulates each component, labels it with lollipop separators and
/// colours by `(pattern, depth, label)`. Components share one certificate.
/// Components with at most three vertices get depth = rank + 1, label 1.
pub fn colour_planar(e: &RotationSystem, opts: &PlanarOptions) -> Result<PlanarRun> {
    let g = e.graph();
    let n = g.n();
    if n == 0 {
        return Err(Error::TooSmall { need: 1, got: 0 });
    }
    g.check_vertex(opts.root)?;
    let params = EngineParams::planar();
    let mut layer = vec![0usize; n];
    let mut depth = vec![0usize; n];
    let mut label = vec![0usize; n];
    let mut components = Vec::new();
    for comp in g.components() {
        let local_root = comp.iter().position(|&v| v == opts.root).unwrap_or(0);
        let (sub, map) = e.restrict(&comp)?;
        let run = if comp.len() <= 3 {
            let lay = bfs_layering(sub.graph(), local_root)?;
            for i in 0..comp.len() {
                layer[map[i]] = lay.layer(i);
                depth[map[i]] = i + 1;
                label[map[i]] = 1;
            }
            ComponentRun { vertices: comp, p: lay.p(), max_depth: map.len(), nodes: Vec::new(), separator_iterations: Vec::new() }
        } else {
            let t = triangulate(&sub)?;
            let lay = bfs_layering(t.graph(), local_root)?;
            let mut oracle = LollipopOracle::new(&t, &lay)?.with_audit(opts.audit);
            let rec = recursive_labels(t.graph(), &lay, &mut oracle, params)?;
            for i in 0..comp.len() {
                layer[map[i]] = lay.layer(i);
                depth[map[i]] = rec.depth[i];
                label[map[i]] = rec.label[i];
            }
            ComponentRun {
                vertices: comp,
                p: lay.p(),
                max_depth: rec.max_depth,
                nodes: rec.nodes,
                separator_iterations: oracle.iterations,
            }
        };
        components.push(run);
    }
    let need = components.iter().map(|c| c.p + 1).max().unwrap_or(1);
    let certificate = match &opts.certificate {
        Some(cert) if cert.len() < need => return Err(Error::CertificateTooShort { have: cert.len(), need }),
        Some(cert) => cert.clone(),
        None => certificate_with_fallback(need, opts.t_max)?,
    };
    let pattern = layer.iter().map(|&l| certificate.symbol(l)).collect();
    let max_depth = depth.iter().copied().max().unwrap_or(1);
    let colouring = StructuredColouring::build(pattern, depth, label, params.c, max_depth);
    Ok(PlanarRun { colouring, certificate, layer, components })
}

/// `v -> cert[depth(v)]` for a tree rooted at `root`.
pub fn colour_tree(tree: &Graph, root: usize, cert: &WalkCertificate) -> Result<Vec<usize>> {
    if !tree.is_tree() {
        return Err(Error::NotATree(format!("{} vertices, {} edges", tree.n(), tree.m())));
    }
    let lay = bfs_layering(tree, root)?;
    if cert.len() < lay.p() + 1 {
        return Err(Error::CertificateTooShort { have: cert.len(), need: lay.p() + 1 });
    }
    Ok((0..tree.n()).map(|v| cert.symbol(lay.layer(v))).collect())
}

/// [`colour_tree`] with a freshly generated certificate.
pub fn colour_tree_auto(tree: &Graph, root: usize, t_max: usize) -> Result<(Vec<usize>, WalkCertificate)> {
    if !tree.is_tree() {
        return Err(Error::NotATree(format!("{} vertices, {} edges", tree.n(), tree.m())));
    }
    let lay = bfs_layering(tree, root)?;
    let cert = certificate_with_fallback(lay.p() + 1, t_max)?;
    Ok((colour_tree(tree, root, &cert)?, cert))
}
