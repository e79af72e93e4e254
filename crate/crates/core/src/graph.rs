//! Unit-quadrance graphs `D_q^m` on `F_q^m`.
//!
//! Vertices are indexed row-major over canonical element codes with the last
//! coordinate varying fastest, so in the plane `(x, y)` has index `x*q + y`.

use std::io::Write;
use std::ops::Deref;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FieldElement};

/// Default bound on the vertex count for dense adjacency.
pub const DEFAULT_MAX_VERTICES: u64 = 1 << 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Point {
    pub coords: Vec<FieldElement>,
    pub index: usize,
}

impl Point {
    pub fn from_index(ctx: &FieldCtx, m: usize, index: usize) -> Point {
        let q = ctx.order() as usize;
        let mut coords = vec![FieldElement::ZERO; m];
        let mut r = index;
        for c in coords.iter_mut().rev() {
            *c = FieldElement::from_code_unchecked((r % q) as u32);
            r /= q;
        }
        Point { coords, index }
    }

    pub fn from_coords(ctx: &FieldCtx, coords: Vec<FieldElement>) -> Point {
        let index = index_of(ctx, &coords);
        Point { coords, index }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}

pub fn index_of(ctx: &FieldCtx, coords: &[FieldElement]) -> usize {
    let q = ctx.order() as usize;
    coords.iter().fold(0, |acc, c| acc * q + c.code() as usize)
}

pub fn quadrance(ctx: &FieldCtx, x: &Point, y: &Point) -> Result<FieldElement> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    Ok(x.coords
        .iter()
        .zip(&y.coords)
        .fold(FieldElement::ZERO, |acc, (&a, &b)| {
            ctx.add(acc, ctx.square(ctx.sub(a, b)))
        }))
}

/// Points `s` with `Q(0, s) = 1`, in index order.
pub fn unit_circle(ctx: &FieldCtx, m: usize) -> Result<Vec<Point>> {
    if m < 2 {
        return Err(Error::DimensionTooSmall(m));
    }
    let q = ctx.order() as usize;
    let squares: Vec<FieldElement> = ctx.elements().map(|x| ctx.square(x)).collect();
    let total = (q as u64).pow(m as u32);
    let mut out = Vec::new();
    for index in 0..total as usize {
        let p = Point::from_index(ctx, m, index);
        let norm = p.coords.iter().fold(FieldElement::ZERO, |acc, c| {
            ctx.add(acc, squares[c.code() as usize])
        });
        if norm == FieldElement::ONE {
            out.push(p);
        }
    }
    Ok(out)
}

/// A simple undirected graph stored as packed bit rows plus sorted neighbour
/// lists.
#[derive(Clone, Debug)]
pub struct Adjacency {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    neighbors: Vec<Vec<usize>>,
}

impl Adjacency {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64);
        Adjacency {
            n,
            words,
            bits: vec![0; n * words],
            neighbors: vec![Vec::new(); n],
        }
    }

    /// Builds from an edge list; loops are ignored and duplicates collapse.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Self {
        let mut adj = Self::empty(n);
        for &(u, v) in edges {
            if u != v {
                adj.set(u, v);
                adj.set(v, u);
            }
        }
        adj.finish();
        adj
    }

    fn set(&mut self, u: usize, v: usize) {
        self.bits[u * self.words + v / 64] |= 1 << (v % 64);
    }

    fn finish(&mut self) {
        for u in 0..self.n {
            let row = &self.bits[u * self.words..(u + 1) * self.words];
            let mut list = Vec::new();
            for (w, &word) in row.iter().enumerate() {
                let mut word = word;
                while word != 0 {
                    list.push(w * 64 + word.trailing_zeros() as usize);
                    word &= word - 1;
                }
            }
            self.neighbors[u] = list;
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.neighbors.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.bits[u * self.words + v / 64] >> (v % 64) & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    pub fn row(&self, v: usize) -> &[u64] {
        &self.bits[v * self.words..(v + 1) * self.words]
    }

    /// Common degree if the graph is regular.
    pub fn regular_degree(&self) -> Option<usize> {
        let d = self.neighbors.first().map_or(0, Vec::len);
        self.neighbors.iter().all(|l| l.len() == d).then_some(d)
    }

    /// Edges `(u, v)` with `u < v`, sorted lexicographically.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| {
            self.neighbors[u]
                .iter()
                .filter(move |&&v| v > u)
                .map(move |&v| (u, v))
        })
    }

    /// Number of unordered triangles. Each edge contributes its common
    /// neighbourhood size, which counts every triangle three times.
    pub fn triangle_count(&self) -> u64 {
        let total: u64 = self
            .edges()
            .map(|(u, v)| {
                self.row(u)
                    .iter()
                    .zip(self.row(v))
                    .map(|(a, b)| (a & b).count_ones() as u64)
                    .sum::<u64>()
            })
            .sum();
        debug_assert_eq!(total % 3, 0);
        total / 3
    }

    /// Whether the graph has an odd cycle, by BFS two-colouring.
    pub fn has_odd_cycle(&self) -> bool {
        let mut side = vec![u8::MAX; self.n];
        let mut queue = std::collections::VecDeque::new();
        for start in 0..self.n {
            if side[start] != u8::MAX {
                continue;
            }
            side[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &self.neighbors[u] {
                    if side[v] == u8::MAX {
                        side[v] = 1 - side[u];
                        queue.push_back(v);
                    } else if side[v] == side[u] {
                        return true;
                    }
                }
            }
        }
        false
    }
}

#[derive(Clone, Debug)]
pub struct UnitQuadranceGraph {
    ctx: FieldCtx,
    m: usize,
    circle: Vec<Point>,
    adj: Adjacency,
}

impl UnitQuadranceGraph {
    pub fn build(ctx: &FieldCtx, m: usize) -> Result<Self> {
        Self::build_with_limit(ctx, m, DEFAULT_MAX_VERTICES)
    }

    /// Builds the Cayley graph: `X ~ Y` iff `Y - X` is on the unit circle.
    pub fn build_with_limit(ctx: &FieldCtx, m: usize, max_vertices: u64) -> Result<Self> {
        if m < 2 {
            return Err(Error::DimensionTooSmall(m));
        }
        let size = (ctx.order() as u64)
            .checked_pow(m as u32)
            .unwrap_or(u64::MAX);
        if size > max_vertices {
            return Err(Error::TooLarge {
                what: "vertex count",
                size,
                limit: max_vertices,
            });
        }
        let circle = unit_circle(ctx, m)?;
        let n = size as usize;
        let mut adj = Adjacency::empty(n);
        let mut shifted = vec![FieldElement::ZERO; m];
        for u in 0..n {
            let x = Point::from_index(ctx, m, u);
            for s in &circle {
                for (k, slot) in shifted.iter_mut().enumerate() {
                    *slot = ctx.add(x.coords[k], s.coords[k]);
                }
                adj.set(u, index_of(ctx, &shifted));
            }
        }
        adj.finish();
        Ok(UnitQuadranceGraph {
            ctx: ctx.clone(),
            m,
            circle,
            adj,
        })
    }

    pub fn ctx(&self) -> &FieldCtx {
        &self.ctx
    }

    pub fn dim(&self) -> usize {
        self.m
    }

    pub fn connection_set(&self) -> &[Point] {
        &self.circle
    }

    pub fn adjacency(&self) -> &Adjacency {
        &self.adj
    }

    pub fn point(&self, index: usize) -> Point {
        Point::from_index(&self.ctx, self.m, index)
    }

    /// Writes the graph in DIMACS `.col` format with 1-based vertex ids.
    pub fn export_dimacs<W: Write>(&self, mut sink: W) -> Result<()> {
        let ctx = &self.ctx;
        let modulus: Vec<String> = ctx.modulus().iter().map(u32::to_string).collect();
        writeln!(sink, "c unit-quadrance graph D_q^m")?;
        writeln!(
            sink,
            "c q={} p={} n={} m={}",
            ctx.order(),
            ctx.p(),
            ctx.n(),
            self.m
        )?;
        writeln!(sink, "c modulus={}", modulus.join(","))?;
        writeln!(
            sink,
            "p edge {} {}",
            self.adj.vertex_count(),
            self.adj.edge_count()
        )?;
        for (u, v) in self.adj.edges() {
            writeln!(sink, "e {} {}", u + 1, v + 1)?;
        }
        sink.flush()?;
        Ok(())
    }
}

impl Deref for UnitQuadranceGraph {
    type Target = Adjacency;

    fn deref(&self) -> &Adjacency {
        &self.adj
    }
}

/// `q - (-1)^{(q-1)/2}`, the degree of the planar graph.
pub fn planar_degree_formula(q: u64) -> u64 {
    if q % 4 == 1 {
        q - 1
    } else {
        q + 1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "lowercase")]
pub enum TrianglePrediction {
    True,
    False,
    Unknown,
}

/// Triangle-freeness predicted for the planar graph: true for primes
/// `q ≡ ±7 (mod 12)`, otherwise unknown. Never returns `False`; the variant
/// exists for callers that merge in measured results.
pub fn triangle_free_predicted(q: u64) -> TrianglePrediction {
    if crate::field::is_prime(q) && matches!(q % 12, 5 | 7) {
        TrianglePrediction::True
    } else {
        TrianglePrediction::Unknown
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> FieldCtx {
        FieldCtx::from_order(q).unwrap()
    }

    fn pt(ctx: &FieldCtx, c: &[u32]) -> Point {
        Point::from_coords(
            ctx,
            c.iter()
                .map(|&v| FieldElement::from_code_unchecked(v))
                .collect(),
        )
    }

    #[test]
    fn quadrance_examples() {
        let f7 = f(7);
        let q = |a: &[u32], b: &[u32]| quadrance(&f7, &pt(&f7, a), &pt(&f7, b)).unwrap().code();
        assert_eq!(q(&[0, 0], &[1, 0]), 1);
        assert_eq!(q(&[0, 0], &[2, 3]), 6);
        assert_eq!(q(&[0, 0, 0], &[1, 1, 1]), 3);
        assert_eq!(q(&[4, 5], &[4, 5]), 0);
        assert!(matches!(
            quadrance(&f7, &pt(&f7, &[0, 0]), &pt(&f7, &[0, 0, 0])),
            Err(Error::DimensionMismatch(2, 3))
        ));
    }

    #[test]
    fn index_round_trip() {
        let f5 = f(5);
        for i in 0..125 {
            let p = Point::from_index(&f5, 3, i);
            assert_eq!(index_of(&f5, &p.coords), i);
        }
        assert_eq!(pt(&f5, &[1, 2]).index, 7);
    }

    #[test]
    fn unit_circle_examples() {
        let f5 = f(5);
        let circle = unit_circle(&f5, 2).unwrap();
        let coords: Vec<Vec<u32>> = circle
            .iter()
            .map(|p| p.coords.iter().map(|c| c.code()).collect())
            .collect();
        // index order: (0,1), (0,4), (1,0), (4,0)
        assert_eq!(coords, vec![vec![0, 1], vec![0, 4], vec![1, 0], vec![4, 0]]);
        assert_eq!(unit_circle(&f(7), 2).unwrap().len(), 8);
        assert!(matches!(
            unit_circle(&f5, 1),
            Err(Error::DimensionTooSmall(1))
        ));
    }

    #[test]
    fn circle_is_symmetric() {
        for q in [5, 7, 9, 11] {
            let ctx = f(q);
            let circle = unit_circle(&ctx, 2).unwrap();
            for s in &circle {
                let neg: Vec<_> = s.coords.iter().map(|&c| ctx.neg(c)).collect();
                assert!(circle.iter().any(|t| t.coords == neg));
            }
        }
    }

    #[test]
    fn build_examples() {
        let g7 = UnitQuadranceGraph::build(&f(7), 2).unwrap();
        assert_eq!(g7.vertex_count(), 49);
        assert_eq!(g7.regular_degree(), Some(8));
        let g5 = UnitQuadranceGraph::build(&f(5), 2).unwrap();
        assert_eq!(g5.regular_degree(), Some(4));
        let g53 = UnitQuadranceGraph::build(&f(5), 3).unwrap();
        assert_eq!(g53.vertex_count(), 125);
        assert_eq!(g53.regular_degree(), Some(g53.connection_set().len()));
        assert!(matches!(
            UnitQuadranceGraph::build_with_limit(&f(7), 3, 100),
            Err(Error::TooLarge { .. })
        ));
    }

    #[test]
    fn adjacency_matches_quadrance() {
        let ctx = f(9);
        let g = UnitQuadranceGraph::build(&ctx, 2).unwrap();
        for u in 0..g.vertex_count() {
            assert!(!g.has_edge(u, u));
            for v in 0..g.vertex_count() {
                let unit = quadrance(&ctx, &g.point(u), &g.point(v)).unwrap() == FieldElement::ONE;
                assert_eq!(g.has_edge(u, v), unit);
                assert_eq!(g.has_edge(u, v), g.has_edge(v, u));
            }
        }
    }

    #[test]
    fn triangle_examples() {
        let tri = |q| {
            UnitQuadranceGraph::build(&f(q), 2)
                .unwrap()
                .triangle_count()
        };
        assert_eq!(tri(7), 0);
        assert_eq!(tri(5), 0);
        assert!(tri(11) > 0);
        let k4 = Adjacency::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]);
        assert_eq!(k4.triangle_count(), 4);
    }

    #[test]
    fn triangle_count_against_brute_force() {
        let g = UnitQuadranceGraph::build(&f(13), 2).unwrap();
        let n = g.vertex_count();
        let mut brute = 0u64;
        for a in 0..n {
            for &b in g.neighbors(a).iter().filter(|&&b| b > a) {
                for &c in g.neighbors(b).iter().filter(|&&c| c > b) {
                    if g.has_edge(a, c) {
                        brute += 1;
                    }
                }
            }
        }
        assert_eq!(g.triangle_count(), brute);
    }

    #[test]
    fn prediction_examples() {
        assert_eq!(triangle_free_predicted(7), TrianglePrediction::True);
        assert_eq!(triangle_free_predicted(19), TrianglePrediction::True);
        assert_eq!(triangle_free_predicted(5), TrianglePrediction::True);
        assert_eq!(triangle_free_predicted(13), TrianglePrediction::Unknown);
        assert_eq!(triangle_free_predicted(25), TrianglePrediction::Unknown);
    }

    #[test]
    fn odd_cycle_detection() {
        assert!(Adjacency::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).has_odd_cycle());
        assert!(!Adjacency::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).has_odd_cycle());
        assert!(UnitQuadranceGraph::build(&f(7), 2).unwrap().has_odd_cycle());
    }

    #[test]
    fn dimacs_export() {
        let g = UnitQuadranceGraph::build(&f(5), 2).unwrap();
        let mut buf = Vec::new();
        g.export_dimacs(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert!(lines.iter().take_while(|l| l.starts_with("c ")).count() >= 1);
        assert!(text.contains("c q=5 p=5 n=1 m=2\n"));
        assert!(text.contains("p edge 25 50\n"));
        let edges: Vec<(usize, usize)> = lines
            .iter()
            .filter_map(|l| l.strip_prefix("e "))
            .map(|l| {
                let mut it = l.split(' ').map(|v| v.parse().unwrap());
                (it.next().unwrap(), it.next().unwrap())
            })
            .collect();
        assert_eq!(edges.len(), 50);
        assert!(edges.iter().all(|&(u, v)| 1 <= u && u < v && v <= 25));
        assert!(edges.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn dimacs_sink_failure() {
        struct Broken;
        impl Write for Broken {
            fn write(&mut self, _: &[u8]) -> std::io::Result<usize> {
                Err(std::io::Error::other("closed"))
            }
            fn flush(&mut self) -> std::io::Result<()> {
                Ok(())
            }
        }
        let g = UnitQuadranceGraph::build(&f(5), 2).unwrap();
        assert!(matches!(g.export_dimacs(Broken), Err(Error::Io(_))));
    }
}
