//! Weak length structures on directed graphs.
//!
//! Paths are edge sequences, the length of a path is the sum of its edge
//! lengths and the reverse of a path traverses the reverse edges backwards.
//! Floating-point queries go through petgraph; the comparison of symmetrized
//! and induced distances is done in exact arithmetic, where every `f64` edge
//! length is represented by its exact binary value.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Float, One, ToPrimitive, Zero};
use petgraph::algo::dijkstra;
use petgraph::graph::{DiGraph, NodeIndex};
use serde::{Deserialize, Serialize};

use crate::error::{GeomError, Result};
use crate::extended::ExtendedNonNegative;

/// One arc of the edge-list format.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub len: f64,
    /// Index of the reverse arc `v → u`, if any.
    #[serde(default)]
    pub rev_id: Option<usize>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum GraphFile {
    Full { vertices: usize, edges: Vec<Edge> },
    Edges(Vec<Edge>),
}

/// Directed multigraph with nonnegative arc lengths and an optional reverse map.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct WeightedDigraph {
    vertices: usize,
    edges: Vec<Edge>,
}

impl WeightedDigraph {
    pub fn new(vertices: usize, edges: Vec<Edge>) -> Result<Self> {
        for (i, e) in edges.iter().enumerate() {
            if e.u >= vertices {
                return Err(GeomError::InvalidVertex(e.u));
            }
            if e.v >= vertices {
                return Err(GeomError::InvalidVertex(e.v));
            }
            if !e.len.is_finite() || e.len < 0.0 {
                return Err(GeomError::InvalidArgument(format!(
                    "edge {i} has length {}",
                    e.len
                )));
            }
            if let Some(r) = e.rev_id {
                let rev = edges.get(r).ok_or_else(|| {
                    GeomError::InvalidArgument(format!("edge {i} names missing reverse {r}"))
                })?;
                if rev.rev_id != Some(i) || rev.u != e.v || rev.v != e.u {
                    return Err(GeomError::InvalidArgument(format!(
                        "reverse map is not an involution at edge {i}"
                    )));
                }
            }
        }
        Ok(Self { vertices, edges })
    }

    /// Builds a graph from `(u, v, forward, backward)` pairs of mutually
    /// reverse arcs.
    pub fn from_pairs(vertices: usize, pairs: &[(usize, usize, f64, f64)]) -> Result<Self> {
        let mut edges = Vec::with_capacity(2 * pairs.len());
        for &(u, v, forward, backward) in pairs {
            let i = edges.len();
            edges.push(Edge {
                u,
                v,
                len: forward,
                rev_id: Some(i + 1),
            });
            edges.push(Edge {
                u: v,
                v: u,
                len: backward,
                rev_id: Some(i),
            });
        }
        Self::new(vertices, edges)
    }

    /// Parses `{"vertices": n, "edges": [...]}` or a bare edge array, in
    /// which case the vertex count is one more than the largest endpoint.
    pub fn from_json(text: &str) -> Result<Self> {
        let parsed: GraphFile = serde_json::from_str(text)
            .map_err(|e| GeomError::InvalidArgument(format!("graph JSON: {e}")))?;
        match parsed {
            GraphFile::Full { vertices, edges } => Self::new(vertices, edges),
            GraphFile::Edges(edges) => {
                let n = edges.iter().map(|e| e.u.max(e.v) + 1).max().unwrap_or(0);
                Self::new(n, edges)
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.vertices {
            Ok(())
        } else {
            Err(GeomError::InvalidVertex(v))
        }
    }

    fn require_reverse_map(&self) -> Result<()> {
        match self.edges.iter().position(|e| e.rev_id.is_none()) {
            Some(i) => Err(GeomError::MissingReverse(i)),
            None => Ok(()),
        }
    }

    fn petgraph(&self) -> DiGraph<(), f64> {
        let mut g = DiGraph::with_capacity(self.vertices, self.edges.len());
        for _ in 0..self.vertices {
            g.add_node(());
        }
        for e in &self.edges {
            g.add_edge(NodeIndex::new(e.u), NodeIndex::new(e.v), e.len);
        }
        g
    }

    /// Sum of edge lengths along `path`, given as edge indices.
    pub fn path_length(&self, path: &[usize]) -> f64 {
        path.iter().map(|&i| self.edges[i].len).sum()
    }

    pub fn path_length_exact(&self, path: &[usize]) -> BigRational {
        path.iter().map(|&i| exact(self.edges[i].len)).sum()
    }

    /// The reverse path, or `None` if some edge has no reverse.
    pub fn reverse_path(&self, path: &[usize]) -> Option<Vec<usize>> {
        path.iter().rev().map(|&i| self.edges[i].rev_id).collect()
    }
}

fn exact(x: f64) -> BigRational {
    BigRational::from_float(x).expect("edge lengths are finite")
}

/// Edge lengths as integers over one shared power of two. Sums are then
/// plain big-integer additions with no gcd reductions.
struct ScaledLengths {
    nums: Vec<BigInt>,
    shift: usize,
}

impl ScaledLengths {
    fn new(g: &WeightedDigraph) -> Self {
        let parts: Vec<(u64, i16)> = g
            .edges
            .iter()
            .map(|e| {
                let (mantissa, exponent, _) = e.len.integer_decode();
                (mantissa, exponent)
            })
            .collect();
        let shift = parts
            .iter()
            .filter(|(m, _)| *m != 0)
            .map(|&(_, e)| (-i32::from(e)).max(0))
            .max()
            .unwrap_or(0) as usize;
        let nums = parts
            .iter()
            .map(|&(m, e)| {
                if m == 0 {
                    BigInt::zero()
                } else {
                    BigInt::from(m) << (i32::from(e) + shift as i32) as usize
                }
            })
            .collect();
        Self { nums, shift }
    }

    /// Mean of each arc and its reverse, over one more factor of two.
    fn symmetrized(&self, g: &WeightedDigraph) -> Self {
        let nums = g
            .edges
            .iter()
            .enumerate()
            .map(|(i, e)| &self.nums[i] + &self.nums[e.rev_id.expect("checked")])
            .collect();
        Self {
            nums,
            shift: self.shift + 1,
        }
    }

    fn rational(&self, n: BigInt) -> BigRational {
        BigRational::new(n, BigInt::one() << self.shift)
    }
}

fn to_extended(value: Option<BigRational>) -> ExtendedNonNegative {
    match value {
        Some(v) => ExtendedNonNegative::clamped(v.to_f64().unwrap_or(f64::INFINITY)),
        None => ExtendedNonNegative::INFINITY,
    }
}

/// `δ(u, v)`: infimum of path lengths from `u` to `v`, `+∞` if unreachable.
pub fn induced_weak_metric(g: &WeightedDigraph, u: usize, v: usize) -> Result<ExtendedNonNegative> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let pg = g.petgraph();
    let scores = dijkstra(&pg, NodeIndex::new(u), Some(NodeIndex::new(v)), |e| {
        *e.weight()
    });
    Ok(match scores.get(&NodeIndex::new(v)) {
        Some(&d) => ExtendedNonNegative::clamped(d),
        None => ExtendedNonNegative::INFINITY,
    })
}

/// All-pairs `δ`, row `u` holding `δ(u, ·)`.
pub fn induced_metric_matrix(g: &WeightedDigraph) -> Vec<Vec<ExtendedNonNegative>> {
    let pg = g.petgraph();
    (0..g.vertices)
        .map(|u| {
            let scores = dijkstra(&pg, NodeIndex::new(u), None, |e| *e.weight());
            (0..g.vertices)
                .map(|v| {
                    scores
                        .get(&NodeIndex::new(v))
                        .map_or(ExtendedNonNegative::INFINITY, |&d| {
                            ExtendedNonNegative::clamped(d)
                        })
                })
                .collect()
        })
        .collect()
}

/// Exact single-source distances; `None` marks unreachable vertices.
/// With `reversed` set, distances are to `source` rather than from it.
fn exact_distances(
    g: &WeightedDigraph,
    lengths: &[BigInt],
    source: usize,
    reversed: bool,
) -> Vec<Option<BigInt>> {
    let mut adjacency = vec![Vec::new(); g.vertices];
    for (i, e) in g.edges.iter().enumerate() {
        let (from, to) = if reversed { (e.v, e.u) } else { (e.u, e.v) };
        adjacency[from].push((to, i));
    }
    let mut dist: Vec<Option<BigInt>> = vec![None; g.vertices];
    let mut heap = BinaryHeap::new();
    dist[source] = Some(BigInt::zero());
    heap.push(Reverse((BigInt::zero(), source)));
    while let Some(Reverse((d, w))) = heap.pop() {
        if dist[w].as_ref().is_some_and(|best| *best < d) {
            continue;
        }
        for &(to, i) in &adjacency[w] {
            let candidate = &d + &lengths[i];
            if dist[to].as_ref().is_none_or(|best| candidate < *best) {
                dist[to] = Some(candidate.clone());
                heap.push(Reverse((candidate, to)));
            }
        }
    }
    dist
}

/// `δ(u, v)` in exact arithmetic; `None` if unreachable.
pub fn induced_weak_metric_exact(
    g: &WeightedDigraph,
    u: usize,
    v: usize,
) -> Result<Option<BigRational>> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    let lengths = ScaledLengths::new(g);
    Ok(exact_distances(g, &lengths.nums, u, false)
        .swap_remove(v)
        .map(|d| lengths.rational(d)))
}

/// Replaces every arc length by the mean of itself and its reverse.
pub fn symmetrize_lengths(g: &WeightedDigraph) -> Result<WeightedDigraph> {
    g.require_reverse_map()?;
    let edges = g
        .edges
        .iter()
        .map(|e| {
            let back = g.edges[e.rev_id.expect("checked")].len;
            // Same expression for both arcs of a pair, so they stay equal.
            let (a, b) = if e.len <= back {
                (e.len, back)
            } else {
                (back, e.len)
            };
            Edge {
                len: a + 0.5 * (b - a),
                ..*e
            }
        })
        .collect();
    WeightedDigraph::new(g.vertices, edges)
}

/// Outcome of comparing `δ_{sℓ}(u, v)` with `(δ(u, v) + δ(v, u)) / 2`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SymmetrizationCheck {
    pub lhs: ExtendedNonNegative,
    pub rhs: ExtendedNonNegative,
    pub holds: bool,
    /// `lhs == rhs` exactly.
    pub equal: bool,
}

/// Exact check of `δ_{sℓ}(u, v) ≥ (δ(u, v) + δ(v, u)) / 2`, where `sℓ`
/// averages each arc with its reverse.
pub fn verify_symmetrization_inequality(
    g: &WeightedDigraph,
    u: usize,
    v: usize,
) -> Result<SymmetrizationCheck> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    g.require_reverse_map()?;
    let lengths = ScaledLengths::new(g);
    let sym = lengths.symmetrized(g);
    let lhs = exact_distances(g, &sym.nums, u, false).swap_remove(v);
    let forward = exact_distances(g, &lengths.nums, u, false).swap_remove(v);
    let backward = exact_distances(g, &lengths.nums, v, false).swap_remove(u);
    // Both sides share the symmetrized denominator, so numerators compare.
    let rhs = match (forward, backward) {
        (Some(a), Some(b)) => Some(a + b),
        _ => None,
    };
    let (holds, equal) = match (&lhs, &rhs) {
        (Some(l), Some(r)) => (l >= r, l == r),
        (None, None) => (true, true),
        (None, Some(_)) => (true, false),
        (Some(_), None) => (false, false),
    };
    Ok(SymmetrizationCheck {
        lhs: to_extended(lhs.map(|n| sym.rational(n))),
        rhs: to_extended(rhs.map(|n| sym.rational(n))),
        holds,
        equal,
    })
}

/// Result of a bounded search for a bi-minimal path.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "path", rename_all = "kebab-case")]
pub enum BiminimalSearch {
    /// Edge indices of a path minimal in both directions.
    Found(Vec<usize>),
    NoneExists,
    /// The search budget ran out first.
    Unknown,
}

pub const DEFAULT_SEARCH_BUDGET: usize = 100_000;

/// Looks for a path from `u` to `v` realizing `δ(u, v)` whose reverse realizes
/// `δ(v, u)`. Only simple paths are examined: with nonnegative lengths, cutting
/// a cycle out of a bi-minimal path leaves a bi-minimal path. `budget` caps
/// the number of partial paths expanded.
pub fn find_biminimal_path(
    g: &WeightedDigraph,
    u: usize,
    v: usize,
    budget: usize,
) -> Result<BiminimalSearch> {
    g.check_vertex(u)?;
    g.check_vertex(v)?;
    g.require_reverse_map()?;
    if u == v {
        return Ok(BiminimalSearch::Found(Vec::new()));
    }
    let lengths = ScaledLengths::new(g).nums;
    let to_target = exact_distances(g, &lengths, v, true);
    let Some(best) = to_target[u].clone() else {
        return Ok(BiminimalSearch::NoneExists);
    };
    let back_best = exact_distances(g, &lengths, v, false)
        .swap_remove(u)
        .expect("reverse arcs exist");

    let mut out_edges = vec![Vec::new(); g.vertices];
    for (i, e) in g.edges.iter().enumerate() {
        out_edges[e.u].push(i);
    }

    struct Search<'a> {
        g: &'a WeightedDigraph,
        lengths: &'a [BigInt],
        to_target: &'a [Option<BigInt>],
        out_edges: &'a [Vec<usize>],
        best: &'a BigInt,
        back_best: &'a BigInt,
        target: usize,
        budget: usize,
        visited: Vec<bool>,
        path: Vec<usize>,
    }

    impl Search<'_> {
        // Some(true) found, Some(false) exhausted, None out of budget.
        fn run(&mut self, at: usize, so_far: &BigInt) -> Option<bool> {
            if at == self.target {
                let back: BigInt = self
                    .path
                    .iter()
                    .map(|&i| &self.lengths[self.g.edges[i].rev_id.expect("checked")])
                    .sum();
                return Some(&back == self.back_best);
            }
            if self.budget == 0 {
                return None;
            }
            self.budget -= 1;
            for &i in &self.out_edges[at] {
                let next = self.g.edges[i].v;
                if self.visited[next] {
                    continue;
                }
                let Some(rest) = &self.to_target[next] else {
                    continue;
                };
                let reached = so_far + &self.lengths[i];
                // Only paths that stay tight can be minimal.
                if &(&reached + rest) != self.best {
                    continue;
                }
                self.visited[next] = true;
                self.path.push(i);
                let outcome = self.run(next, &reached);
                if outcome != Some(false) {
                    return outcome;
                }
                self.path.pop();
                self.visited[next] = false;
            }
            Some(false)
        }
    }

    let mut search = Search {
        g,
        lengths: &lengths,
        to_target: &to_target,
        out_edges: &out_edges,
        best: &best,
        back_best: &back_best,
        target: v,
        budget,
        visited: vec![false; g.vertices],
        path: Vec::new(),
    };
    search.visited[u] = true;
    Ok(match search.run(u, &BigInt::zero()) {
        Some(true) => BiminimalSearch::Found(search.path),
        Some(false) => BiminimalSearch::NoneExists,
        None => BiminimalSearch::Unknown,
    })
}

/// Two points joined by an upper and a lower arc, each traversable both
/// ways: the upper arc costs 9 from vertex 0 to 1 and 1 back, the lower arc
/// the opposite. Edges 0 and 1 are the upper arc, 2 and 3 the lower.
pub fn circle_fixture() -> WeightedDigraph {
    WeightedDigraph::from_pairs(2, &[(0, 1, 9.0, 1.0), (0, 1, 1.0, 9.0)]).expect("valid fixture")
}
