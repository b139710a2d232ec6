//! Regular graphs: construction, random generation, girth, and the edge-list
//! text format.
//!
//! Neighbor lists are the source of truth. The dense 0/1 adjacency matrix and
//! the girth are computed on first use and cached; a [`RegularGraph`] is
//! immutable after construction and can be shared across threads.

use std::collections::VecDeque;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::OnceLock;

use nalgebra::DMatrix;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Default cap on whole-matching rejections in [`generate_config_model`].
pub const DEFAULT_MAX_REJECTIONS: usize = 10_000;

/// A simple undirected graph in which every vertex has the same degree.
#[derive(Debug)]
pub struct RegularGraph {
    n: usize,
    d: usize,
    adj: Vec<Vec<usize>>,
    dense: OnceLock<DMatrix<f64>>,
    girth: OnceLock<GirthReport>,
}

impl Clone for RegularGraph {
    fn clone(&self) -> Self {
        Self {
            n: self.n,
            d: self.d,
            adj: self.adj.clone(),
            dense: OnceLock::new(),
            girth: OnceLock::new(),
        }
    }
}

impl PartialEq for RegularGraph {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n && self.adj == other.adj
    }
}

impl Eq for RegularGraph {}

impl RegularGraph {
    /// Builds a graph on `n` vertices from an edge list, checking simplicity
    /// and regularity. Edges may be given in either orientation.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidParameter("graph needs at least one vertex".into()));
        }
        let mut adj = vec![Vec::new(); n];
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidParameter(format!(
                    "edge ({u}, {v}) out of range for {n} vertices"
                )));
            }
            if u == v {
                return Err(Error::NotRegular(format!("self-loop at vertex {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (v, nbrs) in adj.iter_mut().enumerate() {
            nbrs.sort_unstable();
            if let Some(w) = nbrs.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::NotRegular(format!(
                    "parallel edge between {v} and {}",
                    w[0]
                )));
            }
        }
        let d = adj[0].len();
        if let Some((v, nbrs)) = adj.iter().enumerate().find(|(_, nb)| nb.len() != d) {
            return Err(Error::NotRegular(format!(
                "vertex {v} has degree {} but vertex 0 has degree {d}",
                nbrs.len()
            )));
        }
        Ok(Self {
            n,
            d,
            adj,
            dense: OnceLock::new(),
            girth: OnceLock::new(),
        })
    }

    /// The graph on `n` vertices with no edges (0-regular).
    pub fn empty(n: usize) -> Result<Self> {
        Self::from_edges(n, std::iter::empty())
    }

    /// Builds a cubic Hamiltonian graph from LCF notation: vertex `i` on the
    /// cycle `0..n` is joined to `i + shifts[i mod len]`.
    pub fn from_lcf(n: usize, shifts: &[i64]) -> Result<Self> {
        if n < 4 || shifts.is_empty() {
            return Err(Error::InvalidParameter("LCF needs n >= 4 and at least one shift".into()));
        }
        let mut edges = std::collections::BTreeSet::new();
        let key = |u: usize, v: usize| (u.min(v), u.max(v));
        for i in 0..n {
            edges.insert(key(i, (i + 1) % n));
            let j = (i as i64 + shifts[i % shifts.len()]).rem_euclid(n as i64) as usize;
            edges.insert(key(i, j));
        }
        Self::from_edges(n, edges)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn d(&self) -> usize {
        self.d
    }

    /// Sorted neighbors of `v`.
    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn edge_count(&self) -> usize {
        self.n * self.d / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges `(u, v)` with `u < v` in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nbrs)| nbrs.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// Degree histogram as `(degree, count)` pairs; a single entry for a
    /// regular graph.
    pub fn degree_histogram(&self) -> Vec<(usize, usize)> {
        let mut hist = std::collections::BTreeMap::new();
        for nbrs in &self.adj {
            *hist.entry(nbrs.len()).or_insert(0) += 1;
        }
        hist.into_iter().collect()
    }

    /// Dense symmetric 0/1 adjacency matrix (cached).
    pub fn adjacency_matrix(&self) -> &DMatrix<f64> {
        self.dense.get_or_init(|| {
            let mut a = DMatrix::zeros(self.n, self.n);
            for (u, v) in self.edges() {
                a[(u, v)] = 1.0;
                a[(v, u)] = 1.0;
            }
            a
        })
    }

    /// Girth report (cached).
    pub fn girth(&self) -> &GirthReport {
        self.girth.get_or_init(|| girth(self))
    }

    /// Serializes to the edge-list text format: `n d` on the first line, then
    /// one `u v` pair per line with `u < v`, LF line endings.
    pub fn to_edge_list(&self) -> String {
        let mut out = String::with_capacity(12 * (self.edge_count() + 1));
        writeln!(out, "{} {}", self.n, self.d).unwrap();
        for (u, v) in self.edges() {
            writeln!(out, "{u} {v}").unwrap();
        }
        out
    }

    /// Parses the edge-list text format. Blank lines are ignored; the declared
    /// degree must match the edges.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty());
        let (hline, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            message: "missing header line \"n d\"".into(),
        })?;
        let (n, d) = parse_pair(hline, header)?;
        let mut edges = Vec::with_capacity(n * d / 2);
        for (line, text) in lines {
            let (u, v) = parse_pair(line, text)?;
            if u >= n || v >= n {
                return Err(Error::Parse {
                    line,
                    message: format!("vertex out of range 0..{n}"),
                });
            }
            if u == v {
                return Err(Error::Parse {
                    line,
                    message: format!("self-loop at vertex {u}"),
                });
            }
            edges.push((u, v));
        }
        let g = Self::from_edges(n, edges).map_err(|e| Error::Parse {
            line: hline,
            message: e.to_string(),
        })?;
        if g.d != d {
            return Err(Error::Parse {
                line: hline,
                message: format!("header declares degree {d} but edges give degree {}", g.d),
            });
        }
        Ok(g)
    }

    pub fn read_edge_list(path: impl AsRef<Path>) -> Result<Self> {
        Self::parse_edge_list(&std::fs::read_to_string(path)?)
    }

    pub fn write_edge_list(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_edge_list())?;
        Ok(())
    }
}

fn parse_pair(line: usize, text: &str) -> Result<(usize, usize)> {
    let mut it = text.split_whitespace();
    let mut field = |what: &str| -> Result<usize> {
        let tok = it.next().ok_or_else(|| Error::Parse {
            line,
            message: format!("expected two integers, missing {what}"),
        })?;
        tok.parse().map_err(|_| Error::Parse {
            line,
            message: format!("cannot parse {what} from {tok:?}"),
        })
    };
    let a = field("first field")?;
    let b = field("second field")?;
    if let Some(extra) = it.next() {
        return Err(Error::Parse {
            line,
            message: format!("unexpected trailing token {extra:?}"),
        });
    }
    Ok((a, b))
}

/// Shortest cycle length and one cycle achieving it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GirthReport {
    /// `None` means the graph is acyclic (infinite girth).
    pub girth: Option<usize>,
    /// Vertices of one shortest cycle in order; empty when acyclic.
    pub witness_cycle: Vec<usize>,
}

impl GirthReport {
    pub fn is_acyclic(&self) -> bool {
        self.girth.is_none()
    }
}

/// Exact girth by a breadth-first search from every vertex.
///
/// A non-tree edge `(u, v)` seen from root `r` closes a cycle through the
/// lowest common ancestor of `u` and `v`; the minimum over all roots is the
/// girth. The search from a root stops once `2 * depth + 1` reaches the
/// best length found so far.
pub fn girth(g: &RegularGraph) -> GirthReport {
    let n = g.n();
    let mut best: Option<Vec<usize>> = None;
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![usize::MAX; n];
    let mut queue = VecDeque::new();
    let mut touched = Vec::new();

    for root in 0..n {
        for &v in &touched {
            dist[v] = usize::MAX;
            parent[v] = usize::MAX;
        }
        touched.clear();
        queue.clear();
        dist[root] = 0;
        touched.push(root);
        queue.push_back(root);
        'bfs: while let Some(u) = queue.pop_front() {
            if let Some(b) = &best {
                if 2 * dist[u] + 1 >= b.len() {
                    break 'bfs;
                }
            }
            for &v in g.neighbors(u) {
                if dist[v] == usize::MAX {
                    dist[v] = dist[u] + 1;
                    parent[v] = u;
                    touched.push(v);
                    queue.push_back(v);
                } else if v != parent[u] && parent[v] != u {
                    let cycle = close_cycle(u, v, &dist, &parent);
                    if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                        best = Some(cycle);
                    }
                }
            }
        }
    }
    match best {
        Some(cycle) => GirthReport {
            girth: Some(cycle.len()),
            witness_cycle: cycle,
        },
        None => GirthReport {
            girth: None,
            witness_cycle: Vec::new(),
        },
    }
}

fn close_cycle(u: usize, v: usize, dist: &[usize], parent: &[usize]) -> Vec<usize> {
    let (mut a, mut b) = (u, v);
    let mut left = vec![a];
    let mut right = vec![b];
    while dist[a] > dist[b] {
        a = parent[a];
        left.push(a);
    }
    while dist[b] > dist[a] {
        b = parent[b];
        right.push(b);
    }
    while a != b {
        a = parent[a];
        b = parent[b];
        left.push(a);
        right.push(b);
    }
    // `right` ends with the common ancestor, already at the end of `left`.
    right.pop();
    left.reverse();
    left.extend(right);
    left
}

/// Fixture graphs with exact standard constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NamedGraph {
    Petersen,
    /// `K_q`, degree `q - 1`.
    Complete(usize),
    /// `C_q`, degree 2.
    Cycle(usize),
    /// `K_{q,q}`, degree `q`.
    CompleteBipartite(usize),
    /// Heawood graph: the (3,6)-cage on 14 vertices.
    Heawood,
    /// Tutte–Coxeter graph: the (3,8)-cage on 30 vertices.
    TutteCoxeter,
}

impl NamedGraph {
    pub fn build(self) -> Result<RegularGraph> {
        named_graph(self)
    }

    /// Parses names such as `petersen`, `complete:4`, `k4`, `cycle:5`, `c5`,
    /// `complete-bipartite:3`, `k33`, `heawood`, `tutte-coxeter`.
    pub fn parse(name: &str) -> Result<Self> {
        let lower = name.trim().to_ascii_lowercase();
        let bad = || Error::InvalidParameter(format!("unknown graph name {name:?}"));
        let num = |s: &str| s.parse::<usize>().map_err(|_| bad());
        if let Some((kind, q)) = lower.split_once(':') {
            let q = num(q)?;
            return match kind {
                "complete" | "k" => Ok(Self::Complete(q)),
                "cycle" | "c" => Ok(Self::Cycle(q)),
                "complete-bipartite" | "complete_bipartite" | "kqq" => Ok(Self::CompleteBipartite(q)),
                _ => Err(bad()),
            };
        }
        match lower.as_str() {
            "petersen" => Ok(Self::Petersen),
            "heawood" => Ok(Self::Heawood),
            "tutte-coxeter" | "tutte_coxeter" | "tutte8cage" => Ok(Self::TutteCoxeter),
            "k33" => Ok(Self::CompleteBipartite(3)),
            s if s.len() == 3 && s.starts_with('k') && s[1..2] == s[2..3] => {
                Ok(Self::CompleteBipartite(num(&s[1..2])?))
            }
            s if s.starts_with('k') => Ok(Self::Complete(num(&s[1..])?)),
            s if s.starts_with('c') => Ok(Self::Cycle(num(&s[1..])?)),
            _ => Err(bad()),
        }
    }
}

pub fn named_graph(name: NamedGraph) -> Result<RegularGraph> {
    let too_small = |what: &str, q: usize, min: usize| {
        Error::InvalidParameter(format!("{what}({q}) needs q >= {min}"))
    };
    match name {
        NamedGraph::Petersen => {
            let mut edges = Vec::with_capacity(15);
            for i in 0..5 {
                edges.push((i, (i + 1) % 5));
                edges.push((i, i + 5));
                edges.push((5 + i, 5 + (i + 2) % 5));
            }
            RegularGraph::from_edges(10, edges)
        }
        NamedGraph::Complete(q) => {
            if q < 2 {
                return Err(too_small("complete", q, 2));
            }
            let edges = (0..q).flat_map(|u| (u + 1..q).map(move |v| (u, v)));
            RegularGraph::from_edges(q, edges)
        }
        NamedGraph::Cycle(q) => {
            if q < 3 {
                return Err(too_small("cycle", q, 3));
            }
            RegularGraph::from_edges(q, (0..q).map(|i| (i, (i + 1) % q)))
        }
        NamedGraph::CompleteBipartite(q) => {
            if q < 2 {
                return Err(too_small("complete_bipartite", q, 2));
            }
            let edges = (0..q).flat_map(|u| (0..q).map(move |v| (u, q + v)));
            RegularGraph::from_edges(2 * q, edges)
        }
        NamedGraph::Heawood => RegularGraph::from_lcf(14, &[5, -5]),
        NamedGraph::TutteCoxeter => RegularGraph::from_lcf(30, &[-13, -9, 7, -7, 9, 13]),
    }
}

fn check_generator_params(n: usize, d: usize) -> Result<()> {
    if d == 0 {
        return Err(Error::InvalidParameter("degree must be at least 1".into()));
    }
    if n <= d {
        return Err(Error::InvalidParameter(format!("need n > d, got n = {n}, d = {d}")));
    }
    if !(n * d).is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!("n * d = {} is odd", n * d)));
    }
    Ok(())
}

/// Uniformly random simple `d`-regular graph from the configuration model.
///
/// Each vertex gets `d` half-edge copies; a uniformly random perfect matching
/// of the copies is drawn and the whole matching is rejected and redrawn
/// until it has no self-loops or parallel edges. Deterministic in `seed`.
pub fn generate_config_model(n: usize, d: usize, seed: u64) -> Result<RegularGraph> {
    generate_config_model_with(n, d, seed, DEFAULT_MAX_REJECTIONS).map(|(g, _)| g)
}

/// As [`generate_config_model`] with an explicit rejection cap; also returns
/// the number of matchings drawn (the accepted one included).
pub fn generate_config_model_with(
    n: usize,
    d: usize,
    seed: u64,
    max_rejections: usize,
) -> Result<(RegularGraph, usize)> {
    check_generator_params(n, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n * d).map(|p| p / d).collect();
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
    for attempt in 1..=max_rejections + 1 {
        points.shuffle(&mut rng);
        adj.iter_mut().for_each(Vec::clear);
        let mut simple = true;
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || adj[u].contains(&v) {
                simple = false;
                break;
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        if simple {
            let edges = points.chunks_exact(2).map(|p| (p[0], p[1]));
            return Ok((RegularGraph::from_edges(n, edges)?, attempt));
        }
    }
    Err(Error::ResampleLimit {
        attempts: max_rejections + 1,
    })
}

/// Random `d`-regular graph with girth at least `min_girth`, built by
/// sequential random pairing of half-edges.
///
/// At each step a uniformly random pair of free half-edges is joined if the
/// new edge keeps the graph simple and closes no cycle shorter than
/// `min_girth`; when random proposals keep failing, all admissible vertex
/// pairs are enumerated and one is drawn with weight equal to the product of
/// free half-edge counts. A dead end restarts the construction. The output is
/// not exactly uniform, unlike [`generate_config_model`], but it reaches
/// degrees and girths where whole-matching rejection is hopeless.
pub fn generate_random_regular_girth(
    n: usize,
    d: usize,
    min_girth: usize,
    seed: u64,
    max_restarts: usize,
) -> Result<RegularGraph> {
    check_generator_params(n, d)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let min_girth = min_girth.max(3);
    for _ in 0..=max_restarts {
        if let Some(adj) = sequential_attempt(n, d, min_girth, &mut rng) {
            let edges = adj
                .iter()
                .enumerate()
                .flat_map(|(u, nb)| nb.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
                .collect::<Vec<_>>();
            return RegularGraph::from_edges(n, edges);
        }
    }
    Err(Error::RestartLimit {
        restarts: max_restarts,
    })
}

const RANDOM_PROPOSALS: usize = 64;

fn sequential_attempt(
    n: usize,
    d: usize,
    min_girth: usize,
    rng: &mut ChaCha8Rng,
) -> Option<Vec<Vec<usize>>> {
    let mut adj: Vec<Vec<usize>> = vec![Vec::with_capacity(d); n];
    let mut stubs: Vec<usize> = (0..n * d).map(|p| p / d).collect();
    let mut seen = vec![usize::MAX; n];
    let mut stamp = 0usize;
    let mut frontier = Vec::new();
    let mut next = Vec::new();

    // dist(u, v) >= min_girth - 1 keeps every new cycle at least min_girth long.
    let mut admissible = |adj: &[Vec<usize>], u: usize, v: usize| -> bool {
        if u == v || adj[u].contains(&v) {
            return false;
        }
        let radius = min_girth - 2;
        stamp += 1;
        seen[u] = stamp;
        frontier.clear();
        frontier.push(u);
        for _ in 0..radius {
            next.clear();
            for &x in &frontier {
                for &y in &adj[x] {
                    if y == v {
                        return false;
                    }
                    if seen[y] != stamp {
                        seen[y] = stamp;
                        next.push(y);
                    }
                }
            }
            std::mem::swap(&mut frontier, &mut next);
            if frontier.is_empty() {
                break;
            }
        }
        true
    };

    while !stubs.is_empty() {
        let mut joined = None;
        for _ in 0..RANDOM_PROPOSALS {
            let i = rng.random_range(0..stubs.len());
            let j = rng.random_range(0..stubs.len());
            if i != j && admissible(&adj, stubs[i], stubs[j]) {
                joined = Some((i, j));
                break;
            }
        }
        let (u, v) = match joined {
            Some((i, j)) => {
                let (u, v) = (stubs[i], stubs[j]);
                stubs.swap_remove(i.max(j));
                stubs.swap_remove(i.min(j));
                (u, v)
            }
            None => {
                let mut free = vec![0usize; n];
                stubs.iter().for_each(|&s| free[s] += 1);
                let open: Vec<usize> = (0..n).filter(|&v| free[v] > 0).collect();
                let mut candidates = Vec::new();
                let mut total = 0usize;
                for (a, &u) in open.iter().enumerate() {
                    for &v in &open[a + 1..] {
                        if admissible(&adj, u, v) {
                            total += free[u] * free[v];
                            candidates.push((u, v, total));
                        }
                    }
                }
                if candidates.is_empty() {
                    return None;
                }
                let pick = rng.random_range(0..total);
                let idx = candidates.partition_point(|&(_, _, c)| c <= pick);
                let (u, v, _) = candidates[idx];
                let pos_u = stubs.iter().position(|&s| s == u).unwrap();
                stubs.swap_remove(pos_u);
                let pos_v = stubs.iter().position(|&s| s == v).unwrap();
                stubs.swap_remove(pos_v);
                (u, v)
            }
        };
        adj[u].push(v);
        adj[v].push(u);
    }
    Some(adj)
}
