//! Chromatic number bounds and exact search.
//!
//! The exact solver repeatedly asks whether the best known colouring can be
//! beaten by one colour, answering each question with DSATUR-ordered
//! backtracking. Colour symmetry is broken by only ever opening the next unused
//! colour, which also fixes the first vertex to colour 0.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::coloring::{verify_coloring, Coloring};
use crate::construction::{build_coloring_md, ColoringPlan};
use crate::graph::{Adjacency, UnitQuadranceGraph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub max_time: Option<Duration>,
    pub max_nodes: Option<u64>,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_time: Some(Duration::from_secs(60)),
            max_nodes: Some(100_000_000),
        }
    }
}

impl Budget {
    pub fn nodes(max_nodes: u64) -> Self {
        Budget {
            max_time: None,
            max_nodes: Some(max_nodes),
        }
    }

    pub fn unlimited() -> Self {
        Budget {
            max_time: None,
            max_nodes: None,
        }
    }
}

const CLIQUE_NODE_CAP: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ChiStatus {
    Exact,
    Bounded,
}

#[derive(Clone, Debug)]
pub struct ChiResult {
    pub status: ChiStatus,
    pub lower: usize,
    pub upper: usize,
    pub witness: Coloring,
    pub nodes: u64,
    pub elapsed: Duration,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ChiRecord {
    pub q: u64,
    pub m: usize,
    pub status: ChiStatus,
    pub lower: usize,
    pub upper: usize,
    pub nodes: u64,
    pub millis: u64,
}

impl ChiResult {
    pub fn record(&self, q: u64, m: usize) -> ChiRecord {
        ChiRecord {
            q,
            m,
            status: self.status,
            lower: self.lower,
            upper: self.upper,
            nodes: self.nodes,
            millis: self.elapsed.as_millis() as u64,
        }
    }
}

/// DSATUR greedy colouring: highest saturation first, ties broken by larger
/// degree, then smaller index.
pub fn greedy_bound(graph: &Adjacency) -> Coloring {
    let n = graph.vertex_count();
    let max_deg = (0..n).map(|v| graph.degree(v)).max().unwrap_or(0);
    let words = (max_deg + 1).div_ceil(64);
    let mut seen = vec![0u64; n * words];
    let mut sat = vec![0usize; n];
    let mut color = vec![usize::MAX; n];
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by(|&a, &b| {
                (sat[a], graph.degree(a))
                    .cmp(&(sat[b], graph.degree(b)))
                    .then(b.cmp(&a))
            })
            .unwrap();
        let row = &seen[v * words..(v + 1) * words];
        let c = (0..=max_deg)
            .find(|&c| row[c / 64] >> (c % 64) & 1 == 0)
            .unwrap();
        color[v] = c;
        for &u in graph.neighbors(v) {
            let w = &mut seen[u * words + c / 64];
            if *w >> (c % 64) & 1 == 0 {
                *w |= 1 << (c % 64);
                sat[u] += 1;
            }
        }
    }
    Coloring::new(color)
}

/// Largest clique found by branch and bound within `node_budget` expansions.
/// Always a valid lower bound on the chromatic number.
pub fn clique_lower(graph: &Adjacency, node_budget: u64) -> usize {
    let n = graph.vertex_count();
    if n == 0 {
        return 0;
    }
    let mut search = CliqueSearch {
        graph,
        best: if graph.edge_count() > 0 { 2 } else { 1 },
        nodes: 0,
        budget: node_budget,
    };
    let words = n.div_ceil(64);
    let mut all = vec![0u64; words];
    for v in 0..n {
        all[v / 64] |= 1 << (v % 64);
    }
    search.expand(all, 0);
    search.best
}

struct CliqueSearch<'a> {
    graph: &'a Adjacency,
    best: usize,
    nodes: u64,
    budget: u64,
}

impl CliqueSearch<'_> {
    fn expand(&mut self, mut cand: Vec<u64>, size: usize) {
        loop {
            let count: usize = cand.iter().map(|w| w.count_ones() as usize).sum();
            if count == 0 || size + count <= self.best {
                return;
            }
            if self.nodes >= self.budget {
                return;
            }
            self.nodes += 1;
            let w = cand.iter().position(|&w| w != 0).unwrap();
            let v = w * 64 + cand[w].trailing_zeros() as usize;
            cand[w] &= cand[w] - 1;
            let next: Vec<u64> = cand
                .iter()
                .zip(self.graph.row(v))
                .map(|(a, b)| a & b)
                .collect();
            if next.iter().all(|&w| w == 0) {
                self.best = self.best.max(size + 1);
            } else {
                self.expand(next, size + 1);
            }
        }
    }
}

/// Cheap lower bound: clique size, raised to 3 when an odd cycle exists.
pub fn structural_lower(graph: &Adjacency, node_budget: u64) -> usize {
    let mut lower = clique_lower(graph, node_budget);
    if lower < 3 && graph.has_odd_cycle() {
        lower = 3;
    }
    lower
}

enum Outcome {
    Found(Coloring),
    Infeasible,
    OutOfBudget,
}

struct Frame {
    v: usize,
    next: usize,
    used_before: usize,
    assigned: Option<usize>,
}

struct KColoring<'a> {
    graph: &'a Adjacency,
    k: usize,
    color: Vec<usize>,
    /// count[v * k + c]: coloured neighbours of v with colour c
    count: Vec<u32>,
    sat: Vec<usize>,
    colored: usize,
}

impl<'a> KColoring<'a> {
    fn new(graph: &'a Adjacency, k: usize) -> Self {
        let n = graph.vertex_count();
        KColoring {
            graph,
            k,
            color: vec![usize::MAX; n],
            count: vec![0; n * k],
            sat: vec![0; n],
            colored: 0,
        }
    }

    fn select(&self) -> usize {
        let g = self.graph;
        (0..g.vertex_count())
            .filter(|&v| self.color[v] == usize::MAX)
            .max_by(|&a, &b| {
                (self.sat[a], g.degree(a))
                    .cmp(&(self.sat[b], g.degree(b)))
                    .then(b.cmp(&a))
            })
            .unwrap()
    }

    fn assign(&mut self, v: usize, c: usize) {
        self.color[v] = c;
        self.colored += 1;
        for &u in self.graph.neighbors(v) {
            let slot = &mut self.count[u * self.k + c];
            *slot += 1;
            if *slot == 1 {
                self.sat[u] += 1;
            }
        }
    }

    fn unassign(&mut self, v: usize, c: usize) {
        self.color[v] = usize::MAX;
        self.colored -= 1;
        for &u in self.graph.neighbors(v) {
            let slot = &mut self.count[u * self.k + c];
            *slot -= 1;
            if *slot == 0 {
                self.sat[u] -= 1;
            }
        }
    }

    fn run(&mut self, nodes: &mut u64, budget: &Budget, start: Instant) -> Outcome {
        let n = self.graph.vertex_count();
        let mut stack: Vec<Frame> = Vec::new();
        let mut used = 0;
        let mut descend = true;
        loop {
            if descend {
                if self.colored == n {
                    return Outcome::Found(Coloring::new(self.color.clone()));
                }
                let v = self.select();
                stack.push(Frame {
                    v,
                    next: 0,
                    used_before: used,
                    assigned: None,
                });
                descend = false;
                continue;
            }
            let Some(top) = stack.last_mut() else {
                return Outcome::Infeasible;
            };
            let (v, from) = (top.v, top.next);
            let previous = top.assigned.take();
            used = top.used_before;
            if let Some(c) = previous {
                self.unassign(v, c);
            }
            let limit = self.k.min(used + 1);
            let free = (from..limit).find(|&c| self.count[v * self.k + c] == 0);
            match free {
                Some(c) => {
                    let top = stack.last_mut().unwrap();
                    top.assigned = Some(c);
                    top.next = c + 1;
                    self.assign(v, c);
                    used = used.max(c + 1);
                    *nodes += 1;
                    if budget.max_nodes.is_some_and(|cap| *nodes >= cap)
                        || ((*nodes).is_multiple_of(4096)
                            && budget.max_time.is_some_and(|t| start.elapsed() >= t))
                    {
                        return Outcome::OutOfBudget;
                    }
                    descend = true;
                }
                None => {
                    stack.pop();
                }
            }
        }
    }
}

/// Exact chromatic number when the search completes within `budget`,
/// otherwise the best bracket found. A proper `seed` colouring (such as the
/// line construction) is used as the starting upper bound when it beats
/// DSATUR.
pub fn exact_chromatic(graph: &Adjacency, budget: Budget, seed: Option<&Coloring>) -> ChiResult {
    let start = Instant::now();
    let mut best = greedy_bound(graph);
    if let Some(seed) = seed {
        let proper = verify_coloring(graph, seed).is_ok_and(|v| v.is_proper());
        if proper && seed.num_colors() < best.num_colors() {
            best = seed.clone();
        }
    }
    let clique_budget = budget
        .max_nodes
        .unwrap_or(CLIQUE_NODE_CAP)
        .min(CLIQUE_NODE_CAP);
    let mut lower = structural_lower(graph, clique_budget);
    let mut nodes = 0u64;
    while lower < best.num_colors() {
        let k = best.num_colors() - 1;
        match KColoring::new(graph, k).run(&mut nodes, &budget, start) {
            Outcome::Found(c) => best = c,
            Outcome::Infeasible => lower = k + 1,
            Outcome::OutOfBudget => break,
        }
    }
    let upper = best.num_colors();
    ChiResult {
        status: if lower == upper {
            ChiStatus::Exact
        } else {
            ChiStatus::Bounded
        },
        lower,
        upper,
        witness: best,
        nodes,
        elapsed: start.elapsed(),
    }
}

/// Chromatic number of a unit-quadrance graph, seeded with the line
/// construction when it is available for this field.
pub fn chromatic_number(graph: &UnitQuadranceGraph, budget: Budget) -> ChiResult {
    let seed = ColoringPlan::canonical(graph.ctx())
        .and_then(|plan| build_coloring_md(graph.ctx(), graph.dim(), &plan))
        .ok();
    exact_chromatic(graph, budget, seed.as_ref())
}
