//! Squarefree words and walk-certified sequences.
//!
//! A sequence `f` is *walk-nonrepetitive up to `t_max`* when every lazy walk
//! `(i_1, ..., i_2t)` over its index range (consecutive indices differ by at
//! most one) with `t <= t_max` and `f(i_j) = f(i_{t+j})` for all `j` already
//! satisfies `i_j = i_{t+j}` for all `j`. Colouring each vertex by
//! `f(layer(v))` then forces the two halves of a short repetitively coloured
//! path into the same layers, position by position.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sequence {
    pub symbols: Vec<usize>,
    pub sigma: usize,
}

impl Sequence {
    pub fn new(symbols: Vec<usize>, sigma: usize) -> Result<Self> {
        if let Some(&bad) = symbols.iter().find(|&&s| s >= sigma) {
            return Err(Error::InvalidParameter(format!("symbol {bad} outside alphabet of size {sigma}")));
        }
        Ok(Sequence { symbols, sigma })
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkCertificate {
    pub sequence: Sequence,
    pub t_max: usize,
}

impl WalkCertificate {
    pub fn sigma(&self) -> usize {
        self.sequence.sigma
    }

    pub fn len(&self) -> usize {
        self.sequence.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequence.is_empty()
    }

    pub fn symbol(&self, i: usize) -> usize {
        self.sequence.symbols[i]
    }

    /// Re-runs the exhaustive walk check.
    pub fn verify(&self) -> bool {
        is_walk_nonrepetitive(&self.sequence.symbols, self.t_max)
    }
}

pub const DEFAULT_T_MAX: usize = 6;

/// Prefix of the fixed point of `0 -> 012, 1 -> 02, 2 -> 1`, the ternary
/// Thue word `012021012102012021020121...`, which is squarefree.
pub fn thue_word(n: usize) -> Sequence {
    let mut word = vec![0usize];
    let mut read = 0;
    while word.len() < n {
        let image: &[usize] = match word[read] {
            0 => &[0, 1, 2],
            1 => &[0, 2],
            _ => &[1],
        };
        // the first letter of the image of 0 is 0 itself, so skip it on the first pass
        let start = usize::from(read == 0);
        word.extend_from_slice(&image[start..]);
        read += 1;
    }
    word.truncate(n);
    Sequence { symbols: word, sigma: 3 }
}

/// First square `s[i..i+t] == s[i+t..i+2t]`, ordered by `i` then `t`.
pub fn find_square(s: &[usize]) -> Option<(usize, usize)> {
    let n = s.len();
    for i in 0..n {
        for t in 1..=(n - i) / 2 {
            if s[i..i + t] == s[i + t..i + 2 * t] {
                return Some((i, t));
            }
        }
    }
    None
}

pub fn is_squarefree(s: &[usize]) -> bool {
    find_square(s).is_none()
}

/// First lazy walk of half-length at most `t_max` whose halves carry equal
/// symbols but differ in some index. The walk is returned as its `2t` indices.
pub fn find_walk_repetition(s: &[usize], t_max: usize) -> Option<Vec<usize>> {
    find_walk_repetition_in(s, 0, s.len(), t_max)
}

pub fn is_walk_nonrepetitive(s: &[usize], t_max: usize) -> bool {
    find_walk_repetition(s, t_max).is_none()
}

/// Same search restricted to walks inside the index window `lo..hi`.
fn find_walk_repetition_in(s: &[usize], lo: usize, hi: usize, t_max: usize) -> Option<Vec<usize>> {
    if t_max == 0 {
        return None;
    }
    let mut search = WalkSearch { s, lo, hi, t_max, xs: Vec::with_capacity(t_max), ys: Vec::with_capacity(t_max) };
    for a in lo..hi {
        for b in lo..hi {
            if s[a] != s[b] {
                continue;
            }
            search.xs.push(a);
            search.ys.push(b);
            if search.dfs() {
                let mut walk = std::mem::take(&mut search.xs);
                walk.append(&mut search.ys);
                return Some(walk);
            }
            search.xs.clear();
            search.ys.clear();
        }
    }
    None
}

struct WalkSearch<'a> {
    s: &'a [usize],
    lo: usize,
    hi: usize,
    t_max: usize,
    xs: Vec<usize>,
    ys: Vec<usize>,
}

impl WalkSearch<'_> {
    fn dfs(&mut self) -> bool {
        let j = self.xs.len();
        let x = self.xs[j - 1];
        let y = self.ys[j - 1];
        let first_y = self.ys[0];
        if x.abs_diff(first_y) <= 1 && self.xs != self.ys {
            return true;
        }
        if j == self.t_max {
            return false;
        }
        // the first half must end next to the start of the second half
        if x.abs_diff(first_y) > self.t_max - j + 1 {
            return false;
        }
        for nx in steps(x, self.lo, self.hi) {
            for ny in steps(y, self.lo, self.hi) {
                if self.s[nx] != self.s[ny] {
                    continue;
                }
                self.xs.push(nx);
                self.ys.push(ny);
                if self.dfs() {
                    return true;
                }
                self.xs.pop();
                self.ys.pop();
            }
        }
        false
    }
}

/// Lazy-walk successors of `i` in the order `+1, 0, -1`.
fn steps(i: usize, lo: usize, hi: usize) -> impl Iterator<Item = usize> {
    let up = (i + 1 < hi).then_some(i + 1);
    let down = (i > lo).then(|| i - 1);
    up.into_iter().chain(std::iter::once(i)).chain(down)
}

/// Depth-first backtracking for a length-`n` sequence over `sigma` symbols
/// that is walk-nonrepetitive up to `t_max`. Each extension only re-checks
/// walks inside the last `2 * t_max` positions, since any new violation must
/// use the newly appended index.
pub fn generate_walk_certified(n: usize, sigma: usize, t_max: usize) -> Result<WalkCertificate> {
    if n == 0 || sigma == 0 || t_max == 0 {
        return Err(Error::InvalidParameter("n, sigma and t_max must be positive".into()));
    }
    const STEP_BUDGET: u64 = 20_000_000;
    let mut seq: Vec<usize> = Vec::with_capacity(n);
    let mut next_symbol = 0usize;
    let mut steps = 0u64;
    while seq.len() < n {
        let mut placed = false;
        for c in next_symbol..sigma {
            steps += 1;
            seq.push(c);
            let m = seq.len() - 1;
            let lo = (m + 1).saturating_sub(2 * t_max);
            if find_walk_repetition_in(&seq, lo, m + 1, t_max).is_none() {
                placed = true;
                break;
            }
            seq.pop();
        }
        if placed {
            next_symbol = 0;
            continue;
        }
        match seq.pop() {
            Some(last) if steps < STEP_BUDGET => next_symbol = last + 1,
            _ => return Err(Error::NoCertifiedSequence { n, sigma, t_max }),
        }
    }
    Ok(WalkCertificate { sequence: Sequence { symbols: seq, sigma }, t_max })
}

/// Tries `sigma = 4, 5, 6` in turn and returns the first certificate found.
pub fn certificate_with_fallback(n: usize, t_max: usize) -> Result<WalkCertificate> {
    let mut last = None;
    for sigma in 4..=6 {
        match generate_walk_certified(n.max(1), sigma, t_max) {
            Ok(cert) => return Ok(cert),
            Err(e) => last = Some(e),
        }
    }
    Err(last.expect("at least one attempt"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn thue_prefix_golden() {
        let w = thue_word(24);
        let expect = [0, 1, 2, 0, 2, 1, 0, 1, 2, 1, 0, 2, 0, 1, 2, 0, 2, 1, 0, 2, 0, 1, 2, 1];
        assert_eq!(w.symbols, expect);
        assert!(thue_word(0).is_empty());
        assert_eq!(thue_word(1).len(), 1);
    }

    #[test]
    fn thue_word_squarefree() {
        assert!(is_squarefree(&thue_word(64).symbols));
        assert!(is_squarefree(&thue_word(400).symbols));
    }

    #[test]
    fn square_examples() {
        assert_eq!(find_square(&[0, 1, 0]), None);
        assert_eq!(find_square(&[0, 1, 0, 1]), Some((0, 2)));
        assert_eq!(find_square(&[0, 0]), Some((0, 1)));
    }

    #[test]
    fn walk_examples() {
        assert_eq!(find_walk_repetition(&[0, 1, 0, 1], 2), Some(vec![0, 1, 2, 3]));
        assert!(is_walk_nonrepetitive(&[0, 1, 2], 1));
        let w = find_walk_repetition(&[2, 1, 3, 3, 0], 1).unwrap();
        assert_eq!(w, vec![2, 3]);
    }

    #[test]
    fn walk_witness_is_genuine() {
        let s = [0, 1, 2, 0, 1, 2, 0];
        let w = find_walk_repetition(&s, 4).unwrap();
        let t = w.len() / 2;
        assert!(w.windows(2).all(|p| p[0].abs_diff(p[1]) <= 1));
        assert!((0..t).all(|j| s[w[j]] == s[w[t + j]]));
        assert!((0..t).any(|j| w[j] != w[t + j]));
    }

    #[test]
    fn short_certificates() {
        let c = generate_walk_certified(1, 4, 6).unwrap();
        assert_eq!(c.len(), 1);
        let c = generate_walk_certified(16, 4, 4).unwrap();
        assert!(c.verify());
        assert_eq!(c.sigma(), 4);
    }

    #[test]
    fn three_symbols_cannot_certify() {
        // adjacent and distance-two symbols must differ, which forces period three
        assert!(matches!(generate_walk_certified(12, 3, 3), Err(Error::NoCertifiedSequence { .. })));
    }
}
