//! Succinct clique tree.
//!
//! The tree is the pivoted Bron-Kerbosch recursion tree specialised to a
//! fixed clique size `k`. Each node stores one vertex labelled either
//! [`Label::Pivot`] or [`Label::Hold`]. A root-to-leaf path with hold set `H`
//! and pivot set `P` encodes the k-cliques `H ∪ X` for every `X ⊆ P` with
//! `|H| + |X| = k`, and every k-clique of the graph is encoded by exactly one
//! path.
//!
//! Two branch-pruning rules are applied while building (both can be switched
//! off through [`Pruning`]):
//!
//! * a branch whose path depth plus remaining candidates is below `k`;
//! * a branch whose path already carries more than `k` hold vertices.
//!
//! The third rule, dropping vertices outside the (k-1)-core, is the caller's
//! job: pass the graph returned by [`crate::graph::k_core_subgraph`].

use std::fmt::Write as _;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{CoreInfo, Graph};

pub type NodeId = u32;

const NONE: NodeId = NodeId::MAX;
const ROOT: NodeId = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Label {
    Pivot,
    Hold,
}

impl Label {
    pub fn as_str(self) -> &'static str {
        match self {
            Label::Pivot => "pivot",
            Label::Hold => "hold",
        }
    }
}

#[derive(Clone, Debug)]
pub struct SctNode {
    vertex: u32,
    label: Option<Label>,
    parent: NodeId,
    first_child: NodeId,
    next_sibling: NodeId,
    depth: u32,
    holds: u32,
    /// Vertex of the depth-1 ancestor (the node itself at depth 1).
    top: u32,
}

impl SctNode {
    /// `None` for the root.
    pub fn vertex(&self) -> Option<usize> {
        self.label.map(|_| self.vertex as usize)
    }

    /// `None` for the root.
    pub fn label(&self) -> Option<Label> {
        self.label
    }

    pub fn depth(&self) -> usize {
        self.depth as usize
    }

    /// Hold vertices on the path from the root down to and including this node.
    pub fn hold_count(&self) -> usize {
        self.holds as usize
    }
}

/// Which build-time pruning rules are active.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pruning {
    /// Drop a branch when path depth plus candidates is below `k`.
    pub candidates: bool,
    /// Drop a branch once its path holds more than `k` hold vertices.
    pub holds: bool,
}

impl Pruning {
    pub const ALL: Pruning = Pruning { candidates: true, holds: true };
    pub const NONE: Pruning = Pruning { candidates: false, holds: false };
}

impl Default for Pruning {
    fn default() -> Self {
        Pruning::ALL
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SctStats {
    /// Nodes including the root.
    pub nodes: usize,
    pub leaves: usize,
    pub max_depth: usize,
    pub pruned_branches: usize,
}

#[derive(Clone, Debug)]
pub struct Sct {
    nodes: Vec<SctNode>,
    vertex_count: usize,
    leaves: Vec<NodeId>,
    k: usize,
    stats: SctStats,
}

/// Build the tree for clique size `k` with every pruning rule on.
pub fn build_sct(g: &Graph, k: usize) -> Result<Sct> {
    build_sct_with(g, k, Pruning::ALL)
}

pub fn build_sct_with(g: &Graph, k: usize, pruning: Pruning) -> Result<Sct> {
    if k < 2 {
        return Err(Error::InvalidArgument(format!("clique size k must be >= 2, got {k}")));
    }
    if g.n() >= NONE as usize {
        return Err(Error::InvalidArgument("graph too large for 32-bit node ids".into()));
    }
    let mut builder = Builder {
        g,
        k,
        pruning,
        nodes: vec![SctNode {
            vertex: 0,
            label: None,
            parent: NONE,
            first_child: NONE,
            next_sibling: NONE,
            depth: 0,
            holds: 0,
            top: 0,
        }],
        leaves: Vec::new(),
        pruned: 0,
    };
    let all: Vec<usize> = (0..g.n()).collect();
    if pruning.candidates && all.len() < k {
        builder.pruned += 1;
    } else {
        builder.expand(ROOT, &all);
    }
    let Builder { nodes, leaves, pruned, .. } = builder;
    let stats = SctStats {
        nodes: nodes.len(),
        leaves: leaves.len(),
        max_depth: nodes.iter().map(|n| n.depth as usize).max().unwrap_or(0),
        pruned_branches: pruned,
    };
    Ok(Sct { nodes, vertex_count: g.n(), leaves, k, stats })
}

struct Builder<'g> {
    g: &'g Graph,
    k: usize,
    pruning: Pruning,
    nodes: Vec<SctNode>,
    leaves: Vec<NodeId>,
    pruned: usize,
}

impl Builder<'_> {
    /// Expand `node` over `candidates` (sorted). Returns whether the subtree
    /// below `node` holds at least one leaf.
    fn expand(&mut self, node: NodeId, candidates: &[usize]) -> bool {
        if candidates.is_empty() {
            if node != ROOT {
                self.leaves.push(node);
                return true;
            }
            return false;
        }

        let g = self.g;
        // Pivot: most neighbours inside the candidate set, smaller id on ties.
        let mut pivot = candidates[0];
        let mut best = 0;
        for (i, &p) in candidates.iter().enumerate() {
            let covered = intersection_len(g.neighbors(p), candidates);
            if i == 0 || covered > best {
                pivot = p;
                best = covered;
            }
        }

        let mut kept_any = false;
        let mut last_child = NONE;

        let pivot_candidates = intersect(candidates, g.neighbors(pivot));
        if self.child(node, pivot, Label::Pivot, &pivot_candidates, &mut last_child) {
            kept_any = true;
        }

        let holds: Vec<usize> = candidates
            .iter()
            .copied()
            .filter(|&h| h != pivot && !g.has_edge(pivot, h))
            .collect();
        for (i, &h) in holds.iter().enumerate() {
            let earlier = &holds[..i];
            let next: Vec<usize> = intersect(candidates, g.neighbors(h))
                .into_iter()
                .filter(|v| earlier.binary_search(v).is_err())
                .collect();
            if self.child(node, h, Label::Hold, &next, &mut last_child) {
                kept_any = true;
            }
        }
        kept_any
    }

    fn child(
        &mut self,
        parent: NodeId,
        vertex: usize,
        label: Label,
        candidates: &[usize],
        last_child: &mut NodeId,
    ) -> bool {
        let up = &self.nodes[parent as usize];
        let depth = up.depth + 1;
        let holds = up.holds + u32::from(label == Label::Hold);
        let top = if parent == ROOT { vertex as u32 } else { up.top };

        if self.pruning.candidates && candidates.len() + (depth as usize) < self.k {
            self.pruned += 1;
            return false;
        }
        if self.pruning.holds && holds as usize > self.k {
            self.pruned += 1;
            return false;
        }

        let id = self.nodes.len() as NodeId;
        self.nodes.push(SctNode {
            vertex: vertex as u32,
            label: Some(label),
            parent,
            first_child: NONE,
            next_sibling: NONE,
            depth,
            holds,
            top,
        });
        if !self.expand(id, candidates) {
            // Every branch below was pruned: nothing here encodes a k-clique.
            self.nodes.truncate(id as usize);
            return false;
        }
        if *last_child == NONE {
            self.nodes[parent as usize].first_child = id;
        } else {
            self.nodes[*last_child as usize].next_sibling = id;
        }
        *last_child = id;
        true
    }
}

fn intersection_len(a: &[usize], b: &[usize]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                n += 1;
                i += 1;
                j += 1;
            }
        }
    }
    n
}

fn intersect(a: &[usize], b: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}

impl Sct {
    pub fn k(&self) -> usize {
        self.k
    }

    /// Vertex count of the graph the tree was built from.
    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub(crate) fn leaf_ids(&self) -> &[NodeId] {
        &self.leaves
    }

    pub fn stats(&self) -> SctStats {
        self.stats
    }

    pub fn root(&self) -> NodeId {
        ROOT
    }

    pub fn node(&self, id: NodeId) -> &SctNode {
        &self.nodes[id as usize]
    }

    pub fn children(&self, id: NodeId) -> impl Iterator<Item = NodeId> + '_ {
        let mut next = self.nodes[id as usize].first_child;
        std::iter::from_fn(move || {
            (next != NONE).then(|| {
                let current = next;
                next = self.nodes[current as usize].next_sibling;
                current
            })
        })
    }

    pub fn path_count(&self) -> usize {
        self.leaves.len()
    }

    /// Every root-to-leaf path once, in depth-first build order.
    pub fn paths(&self) -> impl ExactSizeIterator<Item = PathView<'_>> + '_ {
        self.leaves.iter().map(move |&leaf| PathView { sct: self, leaf })
    }

    pub fn path(&self, leaf: NodeId) -> PathView<'_> {
        PathView { sct: self, leaf }
    }

    /// Text dump, one node per line in preorder as `depth original_id label`,
    /// after a versioned header line. The root is not listed.
    pub fn dump(&self, g: &Graph) -> String {
        let mut out = format!("# sct-dump v1 k={} nodes={}\n", self.k, self.nodes.len());
        let mut stack: Vec<NodeId> = self.children(ROOT).collect();
        stack.reverse();
        while let Some(id) = stack.pop() {
            let node = self.node(id);
            let label = node.label.expect("non-root node has a label");
            let _ = writeln!(
                out,
                "{} {} {}",
                node.depth,
                g.original_id(node.vertex as usize),
                label.as_str()
            );
            let start = stack.len();
            stack.extend(self.children(id));
            stack[start..].reverse();
        }
        out
    }
}

/// Alias of [`Sct::paths`].
pub fn iter_paths(sct: &Sct) -> impl ExactSizeIterator<Item = PathView<'_>> + '_ {
    sct.paths()
}

/// A root-to-leaf path, viewed in place over the tree's arena.
#[derive(Clone, Copy)]
pub struct PathView<'a> {
    sct: &'a Sct,
    leaf: NodeId,
}

impl std::fmt::Debug for PathView<'_> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PathView")
            .field("leaf", &self.leaf)
            .field("holds", &self.holds())
            .field("pivots", &self.pivots())
            .finish()
    }
}

impl<'a> PathView<'a> {
    pub fn leaf(&self) -> NodeId {
        self.leaf
    }

    pub fn depth(&self) -> usize {
        self.sct.node(self.leaf).depth()
    }

    pub fn hold_count(&self) -> usize {
        self.sct.node(self.leaf).hold_count()
    }

    pub fn pivot_count(&self) -> usize {
        self.depth() - self.hold_count()
    }

    /// The vertex stored directly under the root on this path.
    pub fn top_vertex(&self) -> usize {
        self.sct.node(self.leaf).top as usize
    }

    /// `(vertex, label)` from the leaf up to (excluding) the root.
    pub fn nodes(&self) -> impl Iterator<Item = (usize, Label)> + 'a {
        let sct = self.sct;
        let mut id = self.leaf;
        std::iter::from_fn(move || {
            let node = sct.node(id);
            let label = node.label?;
            id = node.parent;
            Some((node.vertex as usize, label))
        })
    }

    /// Clear and refill `holds` and `pivots` (leaf-to-root order).
    pub fn fill(&self, holds: &mut Vec<usize>, pivots: &mut Vec<usize>) {
        holds.clear();
        pivots.clear();
        for (v, label) in self.nodes() {
            match label {
                Label::Hold => holds.push(v),
                Label::Pivot => pivots.push(v),
            }
        }
    }

    /// Hold vertices, root to leaf.
    pub fn holds(&self) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.nodes().filter(|&(_, l)| l == Label::Hold).map(|(v, _)| v).collect();
        out.reverse();
        out
    }

    /// Pivot vertices, root to leaf.
    pub fn pivots(&self) -> Vec<usize> {
        let mut out: Vec<usize> =
            self.nodes().filter(|&(_, l)| l == Label::Pivot).map(|(v, _)| v).collect();
        out.reverse();
        out
    }

    /// The k-cliques this path encodes: the holds plus every
    /// `(k - |H|)`-subset of the pivots. Each clique is sorted.
    pub fn encoded_cliques(&self, k: usize) -> Vec<Vec<usize>> {
        let holds = self.holds();
        let pivots = self.pivots();
        let mut out = Vec::new();
        if holds.len() > k || k - holds.len() > pivots.len() {
            return out;
        }
        let need = k - holds.len();
        let mut chosen = Vec::with_capacity(need);
        subsets(&pivots, need, 0, &mut chosen, &mut |x| {
            let mut clique: Vec<usize> = holds.iter().chain(x).copied().collect();
            clique.sort_unstable();
            out.push(clique);
        });
        out
    }
}

fn subsets(
    items: &[usize],
    need: usize,
    from: usize,
    chosen: &mut Vec<usize>,
    emit: &mut dyn FnMut(&[usize]),
) {
    if chosen.len() == need {
        emit(chosen);
        return;
    }
    for i in from..items.len() {
        if items.len() - i < need - chosen.len() {
            break;
        }
        chosen.push(items[i]);
        subsets(items, need, i + 1, chosen, emit);
        chosen.pop();
    }
}

/// Order in which paths are visited by the simultaneous update.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum PathOrder {
    /// Depth-first build order.
    Build,
    /// Uniform shuffle from the seed.
    Random(u64),
    /// Deeper paths first.
    Depth,
    /// Paths whose top vertex has the larger core number first.
    Degeneracy,
}

impl PathOrder {
    pub fn name(self) -> &'static str {
        match self {
            PathOrder::Build => "build",
            PathOrder::Random(_) => "random",
            PathOrder::Depth => "depth",
            PathOrder::Degeneracy => "degeneracy",
        }
    }
}

/// Paths in the requested order. Sorted orders are stable with respect to
/// build order. `info` must describe the graph the tree was built from.
pub fn reorder_paths<'a>(sct: &'a Sct, order: PathOrder, info: &CoreInfo) -> Vec<PathView<'a>> {
    let mut paths: Vec<PathView<'a>> = sct.paths().collect();
    match order {
        PathOrder::Build => {}
        PathOrder::Random(seed) => paths.shuffle(&mut ChaCha8Rng::seed_from_u64(seed)),
        PathOrder::Depth => paths.sort_by_key(|p| std::cmp::Reverse(p.depth())),
        PathOrder::Degeneracy => {
            paths.sort_by_key(|p| std::cmp::Reverse(info.core[p.top_vertex()]))
        }
    }
    paths
}
