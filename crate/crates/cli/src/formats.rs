//! Plain-text readers and writers.
//!
//! - `.g`: `n m`, then `m` lines `u v` with `u < v`.
//! - `.pg`: `n`, then `n` lines `v: w1 w2 ...` (clockwise rotation), then `outer: a b c ...`.
//! - `.col`: `n C`, then `n` lines `v flat_id [pattern depth label]`.
//! - `.set`: one vertex id per line.
//! - `.seq`: `length sigma`, then the symbols on one line.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::path::Path;

use nonrep::embedding::{check_embedding, RotationSystem};
use nonrep::graph::Graph;
use nonrep::words::Sequence;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{path}: {error}")]
    Io { path: String, error: std::io::Error },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, FormatError>;

fn parse_err<T>(line: usize, msg: impl Into<String>) -> Result<T> {
    Err(FormatError::Parse { line, msg: msg.into() })
}

pub fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|error| FormatError::Io { path: path.display().to_string(), error })
}

pub fn write_file(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|error| FormatError::Io { path: path.display().to_string(), error })
}

/// Non-blank lines with their 1-based line numbers.
fn lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines().enumerate().map(|(i, l)| (i + 1, l.trim())).filter(|(_, l)| !l.is_empty())
}

fn numbers(line: usize, s: &str) -> Result<Vec<usize>> {
    s.split_whitespace()
        .map(|t| t.parse::<usize>().or_else(|_| parse_err(line, format!("expected a non-negative integer, got {t:?}"))))
        .collect()
}

fn header(it: &mut dyn Iterator<Item = (usize, &str)>, count: usize, what: &str) -> Result<(usize, Vec<usize>)> {
    let Some((line, text)) = it.next() else {
        return parse_err(1, format!("missing header ({what})"));
    };
    let nums = numbers(line, text)?;
    if nums.len() != count {
        return parse_err(line, format!("header must be {what}"));
    }
    Ok((line, nums))
}

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut it = lines(text);
    let (hl, h) = header(&mut it, 2, "\"n m\"")?;
    let (n, m) = (h[0], h[1]);
    let mut g = Graph::new(n);
    let mut last = hl;
    for (line, text) in it {
        last = line;
        let e = numbers(line, text)?;
        if e.len() != 2 {
            return parse_err(line, "edge line must be \"u v\"");
        }
        if e[0] >= e[1] {
            return parse_err(line, format!("edge {} {} must have u < v", e[0], e[1]));
        }
        g.add_edge(e[0], e[1]).or_else(|err| parse_err(line, err.to_string()))?;
    }
    if g.m() != m {
        return parse_err(last, format!("header declares {m} edges, found {}", g.m()));
    }
    Ok(g)
}

pub fn write_graph(g: &Graph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.m());
    for (u, v) in g.edges() {
        writeln!(s, "{u} {v}").expect("string write");
    }
    s
}

pub fn parse_embedding(text: &str) -> Result<RotationSystem> {
    let mut it = lines(text);
    let (_, h) = header(&mut it, 1, "\"n\"")?;
    let n = h[0];
    let mut rotation = vec![None; n];
    let mut outer = None;
    let mut last = 1;
    for (line, text) in it {
        last = line;
        let Some((head, rest)) = text.split_once(':') else {
            return parse_err(line, "expected \"v: w1 w2 ...\" or \"outer: ...\"");
        };
        let head = head.trim();
        let nums = numbers(line, rest)?;
        if head == "outer" {
            if outer.replace(nums).is_some() {
                return parse_err(line, "duplicate outer line");
            }
            continue;
        }
        if outer.is_some() {
            return parse_err(line, "rotation after the outer line");
        }
        let v: usize = head.parse().or_else(|_| parse_err(line, format!("bad vertex id {head:?}")))?;
        if v >= n {
            return parse_err(line, format!("vertex {v} out of range for n = {n}"));
        }
        if let Some(&w) = nums.iter().find(|&&w| w >= n) {
            return parse_err(line, format!("neighbour {w} out of range for n = {n}"));
        }
        if rotation[v].replace(nums).is_some() {
            return parse_err(line, format!("duplicate rotation for vertex {v}"));
        }
    }
    let Some(outer) = outer else {
        return parse_err(last, "missing \"outer:\" line");
    };
    let rotation = rotation
        .into_iter()
        .enumerate()
        .map(|(v, r)| r.ok_or_else(|| FormatError::Invalid(format!("no rotation line for vertex {v}"))))
        .collect::<Result<Vec<_>>>()?;
    let e = RotationSystem::from_rotation(rotation, outer).map_err(|e| FormatError::Invalid(e.to_string()))?;
    check_embedding(&e).map_err(|v| FormatError::Invalid(v.to_string()))?;
    Ok(e)
}

pub fn write_embedding(e: &RotationSystem) -> String {
    let mut s = format!("{}\n", e.n());
    for v in 0..e.n() {
        s.push_str(&labelled(&v.to_string(), e.rotation(v)));
    }
    s.push_str(&labelled("outer", e.outer_face()));
    s
}

fn labelled(head: &str, items: &[usize]) -> String {
    let mut line = format!("{head}:");
    for x in items {
        write!(line, " {x}").expect("string write");
    }
    line.push('\n');
    line
}

/// Reads `.pg` when the extension says so, otherwise `.g`.
pub fn read_any_graph(path: &Path) -> Result<Graph> {
    let text = read_file(path)?;
    if is_pg(path) {
        Ok(parse_embedding(&text)?.graph().clone())
    } else {
        parse_graph(&text)
    }
}

pub fn is_pg(path: &Path) -> bool {
    path.extension().is_some_and(|e| e == "pg")
}

/// Flat colour ids with optional `(pattern, depth, label)` triples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColourFile {
    pub flat: Vec<usize>,
    pub triples: Option<Vec<(usize, usize, usize)>>,
}

impl ColourFile {
    pub fn num_colours(&self) -> usize {
        self.flat.iter().collect::<BTreeSet<_>>().len()
    }
}

pub fn parse_colouring(text: &str) -> Result<ColourFile> {
    let mut it = lines(text);
    let (hl, h) = header(&mut it, 2, "\"n C\"")?;
    let (n, declared) = (h[0], h[1]);
    let mut flat = vec![None; n];
    let mut triples: Vec<Option<(usize, usize, usize)>> = vec![None; n];
    let mut with_triples = None;
    let mut last = hl;
    for (line, text) in it {
        last = line;
        let nums = numbers(line, text)?;
        let has = match nums.len() {
            2 => false,
            5 => true,
            _ => return parse_err(line, "expected \"v flat_id\" or \"v flat_id pattern depth label\""),
        };
        if *with_triples.get_or_insert(has) != has {
            return parse_err(line, "mixed lines with and without triples");
        }
        let v = nums[0];
        if v >= n {
            return parse_err(line, format!("vertex {v} out of range for n = {n}"));
        }
        if flat[v].replace(nums[1]).is_some() {
            return parse_err(line, format!("duplicate colour for vertex {v}"));
        }
        if has {
            triples[v] = Some((nums[2], nums[3], nums[4]));
        }
    }
    let flat = flat
        .into_iter()
        .enumerate()
        .map(|(v, c)| c.ok_or(()).or_else(|_| parse_err(last, format!("no colour for vertex {v}"))))
        .collect::<Result<Vec<_>>>()?;
    let triples = match with_triples {
        Some(true) => Some(triples.into_iter().map(|t| t.expect("set with flat")).collect()),
        _ => None,
    };
    let file = ColourFile { flat, triples };
    if file.num_colours() != declared {
        return parse_err(hl, format!("header declares {declared} colours, found {}", file.num_colours()));
    }
    Ok(file)
}

pub fn write_colouring(c: &ColourFile) -> String {
    let mut s = format!("{} {}\n", c.flat.len(), c.num_colours());
    for (v, &f) in c.flat.iter().enumerate() {
        match &c.triples {
            Some(t) => writeln!(s, "{v} {f} {} {} {}", t[v].0, t[v].1, t[v].2),
            None => writeln!(s, "{v} {f}"),
        }
        .expect("string write");
    }
    s
}

pub fn parse_set(text: &str, n: usize) -> Result<Vec<bool>> {
    let mut set = vec![false; n];
    for (line, text) in lines(text) {
        let nums = numbers(line, text)?;
        if nums.len() != 1 {
            return parse_err(line, "expected one vertex id per line");
        }
        if nums[0] >= n {
            return parse_err(line, format!("vertex {} out of range for n = {n}", nums[0]));
        }
        set[nums[0]] = true;
    }
    Ok(set)
}

pub fn write_set(members: &[usize]) -> String {
    members.iter().map(|v| format!("{v}\n")).collect()
}

pub fn parse_sequence(text: &str) -> Result<Sequence> {
    let mut it = lines(text);
    let (hl, h) = header(&mut it, 2, "\"length sigma\"")?;
    let (len, sigma) = (h[0], h[1]);
    let (line, symbols) = match it.next() {
        Some((line, text)) => (line, numbers(line, text)?),
        None => (hl, Vec::new()),
    };
    if let Some((extra, _)) = it.next() {
        return parse_err(extra, "symbols must be on a single line");
    }
    if symbols.len() != len {
        return parse_err(line, format!("header declares length {len}, found {}", symbols.len()));
    }
    Sequence::new(symbols, sigma).or_else(|e| parse_err(line, e.to_string()))
}

pub fn write_sequence(s: &Sequence) -> String {
    let symbols: Vec<String> = s.symbols.iter().map(|x| x.to_string()).collect();
    format!("{} {}\n{}\n", s.len(), s.sigma, symbols.join(" "))
}
