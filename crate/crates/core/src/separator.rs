//! Lollipop separators of plane triangulations, found by local search.
//!
//! A lollipop of height `k` is the closed walk
//! `u_0, ..., u_k, [u_{k+1}], v_k, ..., v_0` with `u_0 = v_0` the root,
//! `u_i, v_i` in layer `i`, and `u_{k+1}` (the apex) in layer `k + 1`.
//! Dropping the shared prefix leaves a cycle `C_S`; vertices strictly on
//! each side of it form the two open sides of the separation.

use std::cell::RefCell;
use std::cmp::Reverse;

use crate::embedding::{is_triangulation, DartTable, RotationSystem};
use crate::error::{Error, Result};
use crate::graph::{Separation, VertexSet};
use crate::layering::{monotone_path, Layering};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lollipop {
    /// `u_0, ..., u_k`.
    pub u: Vec<usize>,
    /// `v_0, ..., v_k`.
    pub v: Vec<usize>,
    /// `u_{k+1}` for a lollipop of the second type.
    pub apex: Option<usize>,
}

impl Lollipop {
    pub fn height(&self) -> usize {
        self.u.len() - 1
    }

    /// Largest `i` with `u_i = v_i`.
    pub fn shared_prefix(&self) -> usize {
        self.u.iter().zip(&self.v).take_while(|(a, b)| a == b).count() - 1
    }

    /// The closed walk `u_0, ..., u_k, [apex], v_k, ..., v_0`.
    pub fn walk(&self) -> Vec<usize> {
        let mut w = self.u.clone();
        w.extend(self.apex);
        w.extend(self.v.iter().rev());
        w
    }

    /// `C_S` in traversal order starting at `u_i`, `i` the shared prefix.
    /// The closing edge back to `u_i` is implicit.
    pub fn cycle(&self) -> Vec<usize> {
        let i = self.shared_prefix();
        let mut c = self.u[i..].to_vec();
        c.extend(self.apex);
        c.extend(self.v[i + 1..].iter().rev());
        c
    }

    pub fn vertices(&self) -> Vec<usize> {
        let mut vs = self.walk();
        vs.sort_unstable();
        vs.dedup();
        vs
    }

    pub fn reverse(&self) -> Lollipop {
        Lollipop { u: self.v.clone(), v: self.u.clone(), apex: self.apex }
    }

    /// Checks the structural invariants against a layering and embedding.
    pub fn validate(&self, t: &RotationSystem, lay: &Layering) -> Result<()> {
        let bad = |msg: &str| Err(Error::Internal(format!("invalid lollipop {self:?}: {msg}")));
        let k = self.u.len().wrapping_sub(1);
        if self.u.is_empty() || self.v.len() != self.u.len() || k == 0 {
            return bad("arms must have equal length at least 2");
        }
        if Some(self.u[0]) != lay.root() || self.v[0] != self.u[0] {
            return bad("arms must start at the root");
        }
        if self.u[k] == self.v[k] {
            return bad("u_k = v_k");
        }
        for i in 0..=k {
            if lay.layer(self.u[i]) != i || lay.layer(self.v[i]) != i {
                return bad("arm vertex in wrong layer");
            }
        }
        let i = self.shared_prefix();
        if (i + 1..=k).any(|j| self.u[j] == self.v[j]) {
            return bad("arms rejoin above the shared prefix");
        }
        if let Some(a) = self.apex {
            if lay.layer(a) != k + 1 {
                return bad("apex in wrong layer");
            }
        }
        let walk = self.walk();
        if walk.windows(2).any(|p| !t.graph().has_edge(p[0], p[1])) {
            return bad("consecutive walk vertices not adjacent");
        }
        Ok(())
    }
}

/// Side classification of a lollipop relative to a vertex set `B`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SideStats {
    pub right: VertexSet,
    pub left: VertexSet,
    pub r_b: usize,
    pub l_b: usize,
    pub r_all: usize,
    pub l_all: usize,
}

impl SideStats {
    /// Lexicographic objective: more of `B` on the right, then fewer
    /// vertices on the left, then more vertices on the right.
    pub fn objective(&self) -> (usize, Reverse<usize>, usize) {
        (self.r_b, Reverse(self.l_all), self.r_all)
    }
}

/// The counts of [`SideStats`] without the vertex sets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SideCounts {
    pub r_b: usize,
    pub l_b: usize,
    pub r_all: usize,
    pub l_all: usize,
}

impl SideCounts {
    pub fn objective(&self) -> (usize, Reverse<usize>, usize) {
        (self.r_b, Reverse(self.l_all), self.r_all)
    }
}

impl SideStats {
    pub fn counts(&self) -> SideCounts {
        SideCounts { r_b: self.r_b, l_b: self.l_b, r_all: self.r_all, l_all: self.l_all }
    }
}

/// `x <= (2/3) * b`, exactly.
pub fn within_two_thirds(x: usize, b: usize) -> bool {
    3 * x <= 2 * b
}

/// Result of [`find_balanced_lollipop`].
#[derive(Debug, Clone)]
pub struct BalancedLollipop {
    pub lollipop: Lollipop,
    pub stats: SideStats,
    pub iterations: u64,
}

/// Generation-stamped marks reused across classifications.
#[derive(Debug, Clone, Default)]
struct Scratch {
    gen: u32,
    on_s: Vec<u32>,
    blocked: Vec<u32>,
    face: Vec<u32>,
    face_side: Vec<u8>,
    vertex: Vec<u32>,
    vertex_side: Vec<u8>,
    queues: [Vec<usize>; 2],
}

/// Embedding, dart table and layering bundled for repeated searches.
#[derive(Debug, Clone)]
pub struct LollipopSearch<'a> {
    t: &'a RotationSystem,
    lay: &'a Layering,
    darts: DartTable,
    scratch: RefCell<Scratch>,
    audit: bool,
}

impl<'a> LollipopSearch<'a> {
    pub fn new(t: &'a RotationSystem, lay: &'a Layering) -> Result<Self> {
        if !is_triangulation(t) {
            return Err(Error::InvalidParameter("lollipop search needs a plane triangulation".into()));
        }
        if lay.n() != t.n() || lay.root().is_none() {
            return Err(Error::InvalidParameter("layering must be a BFS layering of the triangulation".into()));
        }
        let darts = t.darts()?;
        let scratch = Scratch {
            on_s: vec![0; t.n()],
            blocked: vec![0; darts.num_darts()],
            face: vec![0; darts.num_faces()],
            face_side: vec![0; darts.num_faces()],
            vertex: vec![0; t.n()],
            vertex_side: vec![0; t.n()],
            ..Scratch::default()
        };
        Ok(LollipopSearch { t, lay, darts, scratch: RefCell::new(scratch), audit: false })
    }

    /// With audit on, every single-vertex move also re-floods both sides
    /// and fails on any disagreement with the updated counts.
    pub fn with_audit(mut self, audit: bool) -> Self {
        self.audit = audit;
        self
    }

    pub fn embedding(&self) -> &RotationSystem {
        self.t
    }

    pub fn layering(&self) -> &Layering {
        self.lay
    }

    fn succ(&self, v: usize, u: usize) -> Result<usize> {
        self.darts.succ(v, u).ok_or_else(|| Error::Internal(format!("{u} is not a neighbour of {v}")))
    }

    /// Height-1 lollipop on the face `(r, u_1, v_1)` to the right of `r -> u_1`.
    pub fn initial(&self) -> Result<Lollipop> {
        let r = self.lay.root().expect("checked in new");
        let u1 = *self.t.rotation(r).first().ok_or(Error::TooSmall { need: 3, got: self.t.n() })?;
        let v1 = self.succ(r, u1)?;
        Ok(Lollipop { u: vec![r, u1], v: vec![r, v1], apex: None })
    }

    /// Flood-fills the faces on both sides of `C_S` in lockstep, counting
    /// vertices as faces are expanded. The side that finishes first is
    /// exact; the other is its complement. Returns the counts and the side
    /// (1 right, 2 left) whose vertex marks are complete in the scratch.
    fn flood(&self, s: &Lollipop, b: &[bool], size: usize, sc: &mut Scratch) -> Result<(SideCounts, u8)> {
        if sc.gen == u32::MAX {
            sc.on_s.fill(0);
            sc.blocked.fill(0);
            sc.face.fill(0);
            sc.vertex.fill(0);
            sc.gen = 0;
        }
        sc.gen += 1;
        let gen = sc.gen;
        let n = self.t.n();
        let (mut s_all, mut s_b) = (0, 0);
        for x in s.walk() {
            if sc.on_s[x] != gen {
                sc.on_s[x] = gen;
                s_all += 1;
                s_b += usize::from(b[x]);
            }
        }
        let cycle = s.cycle();
        for &x in &cycle {
            if sc.vertex[x] == gen {
                return Err(Error::Internal(format!("C_S is not a simple cycle: {cycle:?}")));
            }
            sc.vertex[x] = gen;
            sc.vertex_side[x] = 0;
        }
        sc.queues[0].clear();
        sc.queues[1].clear();
        for j in 0..cycle.len() {
            let (a, c) = (cycle[j], cycle[(j + 1) % cycle.len()]);
            let d = self
                .darts
                .dart(a, c)
                .ok_or_else(|| Error::Internal(format!("C_S edge {a}-{c} missing")))?;
            let back = self.darts.twin(d);
            sc.blocked[d] = gen;
            sc.blocked[back] = gen;
            for (side, f) in [(1u8, self.darts.face_of(back)), (2u8, self.darts.face_of(d))] {
                if sc.face[f] != gen {
                    sc.face[f] = gen;
                    sc.face_side[f] = side;
                    sc.queues[side as usize - 1].push(f);
                } else if sc.face_side[f] != side {
                    return Err(Error::Internal(format!("face {f} on both sides of {cycle:?}")));
                }
            }
        }
        let mut all = [0usize; 2];
        let mut in_b = [0usize; 2];
        let done = 'outer: loop {
            for side in [1u8, 2u8] {
                let q = side as usize - 1;
                let Some(f) = sc.queues[q].pop() else {
                    break 'outer side;
                };
                for &d in self.darts.face_darts(f) {
                    let x = self.darts.tail(d);
                    if sc.on_s[x] != gen {
                        if sc.vertex[x] != gen {
                            sc.vertex[x] = gen;
                            sc.vertex_side[x] = side;
                            all[q] += 1;
                            in_b[q] += usize::from(b[x]);
                        } else if sc.vertex_side[x] != side {
                            return Err(Error::Internal(format!("vertex {x} on both sides of {cycle:?}")));
                        }
                    }
                    if sc.blocked[d] == gen {
                        continue;
                    }
                    let g = self.darts.face_of(self.darts.twin(d));
                    if sc.face[g] != gen {
                        sc.face[g] = gen;
                        sc.face_side[g] = side;
                        sc.queues[q].push(g);
                    } else if sc.face_side[g] != side {
                        return Err(Error::Internal(format!("sides of {cycle:?} touch at face {g}")));
                    }
                }
            }
        };
        let q = done as usize - 1;
        all[1 - q] = n - s_all - all[q];
        in_b[1 - q] = size - s_b - in_b[q];
        let counts = SideCounts { r_all: all[0], l_all: all[1], r_b: in_b[0], l_b: in_b[1] };
        Ok((counts, done))
    }

    fn counts(&self, s: &Lollipop, b: &[bool], size: usize) -> Result<SideCounts> {
        let mut sc = self.scratch.borrow_mut();
        Ok(self.flood(s, b, size, &mut sc)?.0)
    }

    /// Vertices strictly to the right and left of `C_S`, excluding `S`.
    pub fn classify(&self, s: &Lollipop, b: &[bool]) -> Result<SideStats> {
        let n = self.t.n();
        let size = b.iter().filter(|&&x| x).count();
        let mut sc = self.scratch.borrow_mut();
        let (c, done) = self.flood(s, b, size, &mut sc)?;
        let gen = sc.gen;
        let in_done: Vec<bool> = (0..n).map(|x| sc.vertex[x] == gen && sc.vertex_side[x] == done).collect();
        let other: Vec<bool> = (0..n).map(|x| sc.on_s[x] != gen && !in_done[x]).collect();
        let (right, left) = if done == 1 { (in_done, other) } else { (other, in_done) };
        Ok(SideStats { right, left, r_b: c.r_b, l_b: c.l_b, r_all: c.r_all, l_all: c.l_all })
    }

    /// One improvement move. `stats` must be the counts of `s`.
    fn step(&self, s: &Lollipop, stats: &SideCounts, b: &[bool], size: usize) -> Result<(Lollipop, SideCounts)> {
        if !within_two_thirds(stats.r_b, size) {
            return Err(Error::InvalidParameter(format!(
                "right side holds {} of {size} vertices of B, more than two thirds",
                stats.r_b
            )));
        }
        if within_two_thirds(stats.l_b, size) {
            return Err(Error::AlreadyBalanced);
        }
        let k = s.height();
        let (uk, vk) = (s.u[k], s.v[k]);
        let layer = |x: usize| self.lay.layer(x);
        let arms = (s.u.as_slice(), s.v.as_slice());
        let z_path = |w: usize| {
            let mut z = monotone_path(self.lay, w, Some(arms));
            z.reverse();
            z
        };
        // moves that shift one vertex: `to_right` leaves S for the right
        // side, otherwise `x` leaves the left side and joins S
        let single = |l: Lollipop, x: usize, to_right: bool| -> Result<(Lollipop, SideCounts)> {
            let mut st = *stats;
            if to_right {
                st.r_all += 1;
                st.r_b += usize::from(b[x]);
            } else {
                st.l_all -= 1;
                st.l_b -= usize::from(b[x]);
            }
            if self.audit {
                let full = self.counts(&l, b, size)?;
                if full != st {
                    return Err(Error::Internal(format!("move to {l:?} expected {st:?}, flood gives {full:?}")));
                }
            }
            Ok((l, st))
        };
        let unexpected = |w: usize| Error::Internal(format!("no improvement case for {s:?} with third vertex {w}"));

        match s.apex {
            None => {
                let w = self.succ(vk, uk)?;
                let lw = layer(w);
                if lw == k + 1 {
                    single(Lollipop { u: s.u.clone(), v: s.v.clone(), apex: Some(w) }, w, false)
                } else if lw + 1 == k {
                    let (uk1, vk1) = (s.u[k - 1], s.v[k - 1]);
                    let (lower_u, lower_v) = (s.u[..k].to_vec(), s.v[..k].to_vec());
                    if w == uk1 && w == vk1 {
                        Err(unexpected(w))
                    } else if w == uk1 {
                        single(Lollipop { u: lower_u, v: lower_v, apex: Some(vk) }, uk, true)
                    } else if w == vk1 {
                        single(Lollipop { u: lower_u, v: lower_v, apex: Some(uk) }, vk, true)
                    } else {
                        let z = z_path(w);
                        self.choose(
                            Lollipop { u: lower_u, v: z.clone(), apex: Some(uk) },
                            Lollipop { u: z, v: lower_v, apex: Some(vk) },
                            b,
                            size,
                        )
                    }
                } else if lw == k {
                    let z = z_path(w);
                    self.choose(
                        Lollipop { u: s.u.clone(), v: z.clone(), apex: None },
                        Lollipop { u: z, v: s.v.clone(), apex: None },
                        b,
                        size,
                    )
                } else {
                    Err(unexpected(w))
                }
            }
            Some(a) => {
                let w = self.succ(a, uk)?;
                let lw = layer(w);
                if lw == k + 1 {
                    let mut u = s.u.clone();
                    let mut v = s.v.clone();
                    u.push(w);
                    v.push(a);
                    single(Lollipop { u, v, apex: None }, w, false)
                } else if w == vk {
                    single(Lollipop { u: s.u.clone(), v: s.v.clone(), apex: None }, a, true)
                } else if lw == k {
                    let z = z_path(w);
                    self.choose(
                        Lollipop { u: s.u.clone(), v: z.clone(), apex: None },
                        Lollipop { u: z, v: s.v.clone(), apex: Some(a) },
                        b,
                        size,
                    )
                } else {
                    Err(unexpected(w))
                }
            }
        }
    }

    fn choose(&self, first: Lollipop, second: Lollipop, b: &[bool], size: usize) -> Result<(Lollipop, SideCounts)> {
        let a = self.counts(&first, b, size)?;
        let c = self.counts(&second, b, size)?;
        let ok_a = within_two_thirds(a.r_b, size);
        let ok_c = within_two_thirds(c.r_b, size);
        match (ok_a, ok_c) {
            (false, false) => Err(Error::Internal(format!(
                "both candidates exceed two thirds of B: {first:?} ({}), {second:?} ({})",
                a.r_b, c.r_b
            ))),
            (true, false) => Ok((first, a)),
            (false, true) => Ok((second, c)),
            (true, true) if c.objective() > a.objective() => Ok((second, c)),
            (true, true) => Ok((first, a)),
        }
    }

    pub fn improve_step(&self, s: &Lollipop, b: &[bool]) -> Result<Lollipop> {
        let size = b.iter().filter(|&&x| x).count();
        if size < 3 {
            return Err(Error::InvalidParameter(format!("|B| = {size}, need at least 3")));
        }
        let stats = self.counts(s, b, size)?;
        let (next, _) = self.step(s, &stats, b, size)?;
        next.validate(self.t, self.lay)?;
        Ok(next)
    }

    /// Runs improvement moves from the initial lollipop until both sides
    /// hold at most two thirds of `B`.
    pub fn find_balanced(&self, b: &[bool]) -> Result<BalancedLollipop> {
        let size = b.iter().filter(|&&x| x).count();
        if size < 3 {
            return Err(Error::InvalidParameter(format!("|B| = {size}, need at least 3")));
        }
        let n = self.t.n() as u64;
        let cap = (n + 1).pow(3);
        let mut s = self.initial()?;
        let mut stats = self.counts(&s, b, size)?;
        let mut iterations = 0u64;
        while !within_two_thirds(stats.l_b, size) {
            if iterations >= cap {
                return Err(Error::Internal(format!("lollipop search exceeded {cap} iterations")));
            }
            let (next, next_stats) = self.step(&s, &stats, b, size)?;
            next.validate(self.t, self.lay)?;
            if next_stats.objective() <= stats.objective() {
                return Err(Error::Internal(format!(
                    "no strict improvement from {s:?} {:?} to {next:?} {:?}",
                    stats.objective(),
                    next_stats.objective()
                )));
            }
            s = next;
            stats = next_stats;
            iterations += 1;
        }
        if !within_two_thirds(stats.r_b, size) {
            return Err(Error::Internal("balanced lollipop has an oversized right side".into()));
        }
        let stats = self.classify(&s, b)?;
        Ok(BalancedLollipop { lollipop: s, stats, iterations })
    }

    /// `(S + left, S + right)`, or `(G, G)` when `|B| <= 2`.
    pub fn separation(&self, b: &[bool]) -> Result<Separation> {
        if b.iter().filter(|&&x| x).count() <= 2 {
            return Ok(Separation::whole(self.t.n()));
        }
        let found = self.find_balanced(b)?;
        Ok(to_separation(&found.lollipop, &found.stats))
    }
}

pub fn to_separation(s: &Lollipop, stats: &SideStats) -> Separation {
    let mut left = stats.left.clone();
    let mut right = stats.right.clone();
    for x in s.walk() {
        left[x] = true;
        right[x] = true;
    }
    Separation { left, right }
}

pub fn initial_lollipop(t: &RotationSystem, lay: &Layering) -> Result<Lollipop> {
    LollipopSearch::new(t, lay)?.initial()
}

pub fn classify_sides(t: &RotationSystem, lay: &Layering, s: &Lollipop, b: &[bool]) -> Result<SideStats> {
    LollipopSearch::new(t, lay)?.classify(s, b)
}

pub fn improve_step(t: &RotationSystem, lay: &Layering, s: &Lollipop, b: &[bool]) -> Result<Lollipop> {
    LollipopSearch::new(t, lay)?.improve_step(s, b)
}

pub fn find_balanced_lollipop(t: &RotationSystem, lay: &Layering, b: &[bool]) -> Result<BalancedLollipop> {
    LollipopSearch::new(t, lay)?.find_balanced(b)
}
