//! Vertex colourings, properness checks and the plain-text colouring format.
//!
//! The file format is one `index color` pair per line (both 0-based) after a
//! `# q=<q> m=<m> k=<k>` header.

use std::io::{BufRead, Write};

use crate::error::{Error, Result};
use crate::graph::Adjacency;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coloring {
    colors: Vec<usize>,
    num_colors: usize,
}

impl Coloring {
    /// Wraps a colour vector; the colour count is one past the largest id.
    pub fn new(colors: Vec<usize>) -> Self {
        let num_colors = colors.iter().max().map_or(0, |&c| c + 1);
        Coloring { colors, num_colors }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> usize {
        self.colors[v]
    }

    pub fn num_colors(&self) -> usize {
        self.num_colors
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    /// Relabels colours in order of first appearance by vertex index.
    pub fn canonical(&self) -> Coloring {
        let mut map = vec![usize::MAX; self.num_colors];
        let mut next = 0;
        let colors = self
            .colors
            .iter()
            .map(|&c| {
                if map[c] == usize::MAX {
                    map[c] = next;
                    next += 1;
                }
                map[c]
            })
            .collect();
        Coloring::new(colors)
    }

    pub fn write<W: Write>(&self, mut sink: W, q: u64, m: usize) -> Result<()> {
        writeln!(sink, "# q={q} m={m} k={}", self.num_colors)?;
        for (v, c) in self.colors.iter().enumerate() {
            writeln!(sink, "{v} {c}")?;
        }
        sink.flush()?;
        Ok(())
    }

    /// Reads a colouring file. Returns the header's `(q, m)` together with the
    /// colouring; every vertex of `F_q^m` must appear exactly once.
    pub fn read<R: BufRead>(source: R) -> Result<(ColoringHeader, Coloring)> {
        let mut lines = source.lines().enumerate();
        let header = loop {
            let (no, line) = lines.next().ok_or(Error::Parse {
                line: 1,
                msg: "missing header".into(),
            })?;
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            break ColoringHeader::parse(line.trim(), no + 1)?;
        };
        let n = header.vertex_count()?;
        let mut colors = vec![None; n];
        for (no, line) in lines {
            let line = line?;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |msg: &str| Error::Parse {
                line: no + 1,
                msg: msg.to_string(),
            };
            let mut parts = line.split_whitespace();
            let (Some(v), Some(c), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(bad("expected `index color`"));
            };
            let v: usize = v.parse().map_err(|_| bad("bad vertex index"))?;
            let c: usize = c.parse().map_err(|_| bad("bad color"))?;
            if v >= n {
                return Err(bad("vertex index out of range"));
            }
            if c >= header.k {
                return Err(bad("color id not below k"));
            }
            if colors[v].replace(c).is_some() {
                return Err(bad("vertex listed twice"));
            }
        }
        let missing = colors.iter().filter(|c| c.is_none()).count();
        if missing > 0 {
            let first = colors.iter().position(Option::is_none).unwrap();
            return Err(Error::IncompleteColoring(format!(
                "{missing} vertices uncolored, first is {first}"
            )));
        }
        let colors = colors.into_iter().map(Option::unwrap).collect();
        Ok((header, Coloring::new(colors)))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColoringHeader {
    pub q: u64,
    pub m: usize,
    pub k: usize,
}

impl ColoringHeader {
    fn parse(line: &str, no: usize) -> Result<Self> {
        let bad = |msg: &str| Error::Parse {
            line: no,
            msg: msg.to_string(),
        };
        let body = line
            .strip_prefix('#')
            .ok_or_else(|| bad("header must start with #"))?;
        let (mut q, mut m, mut k) = (None, None, None);
        for field in body.split_whitespace() {
            let (key, value) = field
                .split_once('=')
                .ok_or_else(|| bad("expected key=value"))?;
            let value: u64 = value.parse().map_err(|_| bad("bad header value"))?;
            match key {
                "q" => q = Some(value),
                "m" => m = Some(value as usize),
                "k" => k = Some(value as usize),
                _ => return Err(bad("unknown header key")),
            }
        }
        match (q, m, k) {
            (Some(q), Some(m), Some(k)) => Ok(ColoringHeader { q, m, k }),
            _ => Err(bad("header needs q, m and k")),
        }
    }

    pub fn vertex_count(&self) -> Result<usize> {
        self.q
            .checked_pow(self.m as u32)
            .filter(|&n| n <= crate::graph::DEFAULT_MAX_VERTICES)
            .map(|n| n as usize)
            .ok_or(Error::TooLarge {
                what: "vertex count",
                size: self.q.saturating_pow(self.m as u32),
                limit: crate::graph::DEFAULT_MAX_VERTICES,
            })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Proper,
    Violation { u: usize, v: usize },
}

impl Verdict {
    pub fn is_proper(self) -> bool {
        self == Verdict::Proper
    }
}

/// Scans edges in index order and reports the first monochromatic one.
pub fn verify_coloring(graph: &Adjacency, coloring: &Coloring) -> Result<Verdict> {
    if coloring.len() != graph.vertex_count() {
        return Err(Error::IncompleteColoring(format!(
            "{} colors for {} vertices",
            coloring.len(),
            graph.vertex_count()
        )));
    }
    Ok(graph
        .edges()
        .find(|&(u, v)| coloring.color(u) == coloring.color(v))
        .map_or(Verdict::Proper, |(u, v)| Verdict::Violation { u, v }))
}
