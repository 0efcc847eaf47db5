//! Undirected simple graphs with dense vertex ids, edge-list parsing and
//! core decomposition.

use std::collections::{BTreeSet, HashMap};

use crate::error::{Error, Result};

/// Compact undirected simple graph.
///
/// Vertices are dense ids `0..n`. Every adjacency list is strictly increasing,
/// symmetric and free of self-loops. `id_map[v]` is the external id `v` was
/// read as.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: Vec<Vec<usize>>,
    id_map: Vec<u64>,
}

impl Graph {
    /// Graph on `n` dense vertices whose external ids equal their dense ids.
    /// Self-loops and duplicate edges are dropped.
    ///
    /// # Panics
    /// If an endpoint is `>= n`.
    pub fn from_dense_edges<I>(n: usize, edges: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut adjacency = vec![Vec::new(); n];
        for (u, v) in edges {
            assert!(u < n && v < n, "edge ({u}, {v}) out of range for n = {n}");
            if u != v {
                adjacency[u].push(v);
                adjacency[v].push(u);
            }
        }
        Self::finish(adjacency, (0..n as u64).collect())
    }

    /// Graph from edges over arbitrary external ids. Dense ids are assigned in
    /// first-seen order.
    pub fn from_edges<I>(edges: I) -> Self
    where
        I: IntoIterator<Item = (u64, u64)>,
    {
        let mut builder = Builder::default();
        for (u, v) in edges {
            builder.add(u, v);
        }
        builder.build()
    }

    fn finish(mut adjacency: Vec<Vec<usize>>, id_map: Vec<u64>) -> Self {
        for list in &mut adjacency {
            list.sort_unstable();
            list.dedup();
        }
        Graph { adjacency, id_map }
    }

    pub fn n(&self) -> usize {
        self.adjacency.len()
    }

    pub fn is_empty(&self) -> bool {
        self.adjacency.is_empty()
    }

    pub fn edge_count(&self) -> usize {
        self.adjacency.iter().map(Vec::len).sum::<usize>() / 2
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adjacency[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.adjacency[u].binary_search(&v).is_ok()
    }

    pub fn original_id(&self, v: usize) -> u64 {
        self.id_map[v]
    }

    pub fn id_map(&self) -> &[u64] {
        &self.id_map
    }

    /// Each edge once, as `(u, v)` with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adjacency
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().copied().filter(move |&v| u < v).map(move |v| (u, v)))
    }

    /// Induced subgraph on `keep`, which must be strictly increasing. Dense id
    /// `i` of the result corresponds to `keep[i]` here; external ids carry over.
    pub fn induced(&self, keep: &[usize]) -> Graph {
        debug_assert!(keep.windows(2).all(|w| w[0] < w[1]));
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            index[v] = i;
        }
        let adjacency = keep
            .iter()
            .map(|&v| {
                self.adjacency[v]
                    .iter()
                    .filter_map(|&u| (index[u] != usize::MAX).then_some(index[u]))
                    .collect()
            })
            .collect();
        let id_map = keep.iter().map(|&v| self.id_map[v]).collect();
        Graph { adjacency, id_map }
    }
}

#[derive(Default)]
struct Builder {
    index: HashMap<u64, usize>,
    id_map: Vec<u64>,
    adjacency: Vec<Vec<usize>>,
}

impl Builder {
    fn intern(&mut self, id: u64) -> usize {
        *self.index.entry(id).or_insert_with(|| {
            self.id_map.push(id);
            self.adjacency.push(Vec::new());
            self.id_map.len() - 1
        })
    }

    fn add(&mut self, u: u64, v: u64) {
        let a = self.intern(u);
        let b = self.intern(v);
        if a != b {
            self.adjacency[a].push(b);
            self.adjacency[b].push(a);
        }
    }

    fn build(self) -> Graph {
        Graph::finish(self.adjacency, self.id_map)
    }
}

/// Parse a whitespace-separated edge list.
///
/// Blank lines and lines starting with `#` or `%` are skipped. Every other
/// line must hold exactly two non-negative integers. Self-loops and duplicate
/// edges are dropped; a self-loop still registers its vertex.
pub fn parse_edge_list(input: &[u8]) -> Result<Graph> {
    let mut builder = Builder::default();
    let mut edge_lines = 0usize;
    let mut last_line = 0usize;
    for (i, raw) in input.split(|&b| b == b'\n').enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let err = |message: String| Error::Parse { line: line_no, message };
        let line = std::str::from_utf8(raw).map_err(|_| err("invalid UTF-8".into()))?;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') || line.starts_with('%') {
            continue;
        }
        let mut tokens = line.split_ascii_whitespace();
        let (Some(a), Some(b), None) = (tokens.next(), tokens.next(), tokens.next()) else {
            return Err(err(format!(
                "expected 2 tokens, found {}",
                line.split_ascii_whitespace().count()
            )));
        };
        let parse = |tok: &str| {
            tok.parse::<u64>()
                .map_err(|_| err(format!("malformed vertex id {tok:?}")))
        };
        builder.add(parse(a)?, parse(b)?);
        edge_lines += 1;
    }
    if edge_lines == 0 {
        return Err(Error::Parse {
            line: last_line,
            message: "empty input: no edges".into(),
        });
    }
    Ok(builder.build())
}

/// Core numbers, degeneracy and a degeneracy (peeling) order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreInfo {
    pub core: Vec<usize>,
    pub degeneracy: usize,
    /// Vertices in removal order of min-degree peeling, ties by smaller id.
    pub degeneracy_order: Vec<usize>,
}

impl CoreInfo {
    /// Vertices with core number at least `c`, increasing.
    pub fn vertices_in_core(&self, c: usize) -> Vec<usize> {
        (0..self.core.len()).filter(|&v| self.core[v] >= c).collect()
    }
}

/// Min-degree peeling. A vertex's core number is the largest minimum degree
/// seen up to its removal.
pub fn core_decomposition(g: &Graph) -> CoreInfo {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut queue: BTreeSet<(usize, usize)> = (0..n).map(|v| (degree[v], v)).collect();
    let mut removed = vec![false; n];
    let mut core = vec![0; n];
    let mut order = Vec::with_capacity(n);
    let mut level = 0;

    while let Some((d, v)) = queue.pop_first() {
        level = level.max(d);
        core[v] = level;
        removed[v] = true;
        order.push(v);
        for &u in g.neighbors(v) {
            if !removed[u] {
                queue.remove(&(degree[u], u));
                degree[u] -= 1;
                queue.insert((degree[u], u));
            }
        }
    }

    CoreInfo {
        degeneracy: core.iter().copied().max().unwrap_or(0),
        core,
        degeneracy_order: order,
    }
}

/// Induced subgraph on `{v : cn(v) >= c}`, possibly empty.
pub fn k_core_subgraph(g: &Graph, info: &CoreInfo, c: usize) -> Graph {
    g.induced(&info.vertices_in_core(c))
}
