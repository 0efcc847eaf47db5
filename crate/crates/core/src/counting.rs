//! Exact k-clique counting: binomials, per-path contributions, tree-based
//! local counts and a brute-force oracle.

use num_integer::Integer;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::sct::{NodeId, Sct};
use crate::Exec;

/// `C(n, r)` in checked 128-bit arithmetic. Zero when `r < 0` or `r > n`.
pub fn binomial(n: u64, r: i64) -> Result<u128> {
    if r < 0 || r as u64 > n {
        return Ok(0);
    }
    let requested = r;
    let r = (r as u64).min(n - r as u64);
    let mut acc: u128 = 1;
    for i in 0..r {
        // acc = C(n, i); C(n, i + 1) = acc * (n - i) / (i + 1) exactly.
        let num = (n - i) as u128;
        let den = (i + 1) as u128;
        let g = acc.gcd(&den);
        let (acc_red, den_red) = (acc / g, den / g);
        acc = acc_red
            .checked_mul(num / den_red)
            .ok_or(Error::BinomialOverflow { n, r: requested })?;
    }
    Ok(acc)
}

/// Pascal triangle up to a fixed row, built with checked additions. Entries
/// that overflow are kept as `None` and only fail when requested.
#[derive(Clone, Debug)]
pub struct BinomialTable {
    rows: Vec<Vec<Option<u128>>>,
}

impl BinomialTable {
    pub fn new(max_n: usize) -> Self {
        let mut rows: Vec<Vec<Option<u128>>> = Vec::with_capacity(max_n + 1);
        for n in 0..=max_n {
            let mut row = vec![Some(1u128); n + 1];
            for r in 1..n {
                let prev = &rows[n - 1];
                row[r] = match (prev[r - 1], prev[r]) {
                    (Some(a), Some(b)) => a.checked_add(b),
                    _ => None,
                };
            }
            rows.push(row);
        }
        BinomialTable { rows }
    }

    pub fn max_n(&self) -> usize {
        self.rows.len().saturating_sub(1)
    }

    pub fn get(&self, n: usize, r: i64) -> Result<u128> {
        if r < 0 || r as usize > n {
            return Ok(0);
        }
        match self.rows.get(n) {
            Some(row) => row[r as usize].ok_or(Error::BinomialOverflow { n: n as u64, r }),
            None => binomial(n as u64, r),
        }
    }
}

/// k-cliques a single path contributes to each of its members.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PathContribution {
    pub per_pivot: u128,
    pub per_hold: u128,
    pub path_total: u128,
}

impl PathContribution {
    pub const ZERO: PathContribution = PathContribution { per_pivot: 0, per_hold: 0, path_total: 0 };
}

/// Contribution of a path with `holds` hold and `pivots` pivot vertices.
pub fn path_contribution(holds: usize, pivots: usize, k: usize) -> Result<PathContribution> {
    contribution_from(holds, pivots, k, |n, r| binomial(n as u64, r))
}

fn contribution_from(
    holds: usize,
    pivots: usize,
    k: usize,
    binom: impl Fn(usize, i64) -> Result<u128>,
) -> Result<PathContribution> {
    if holds > k || k - holds > pivots {
        return Ok(PathContribution::ZERO);
    }
    let need = (k - holds) as i64;
    let per_hold = binom(pivots, need)?;
    let per_pivot = if pivots == 0 { 0 } else { binom(pivots - 1, need - 1)? };
    Ok(PathContribution { per_pivot, per_hold, path_total: per_hold })
}

/// Exact per-vertex and total k-clique counts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CliqueCounts {
    pub per_vertex: Vec<u128>,
    pub total: u128,
    pub k: usize,
}

impl CliqueCounts {
    pub fn zero(n: usize, k: usize) -> Self {
        CliqueCounts { per_vertex: vec![0; n], total: 0, k }
    }

    #[cfg_attr(not(feature = "parallel"), allow(dead_code))]
    fn merge(mut self, other: CliqueCounts) -> Result<Self> {
        for (a, b) in self.per_vertex.iter_mut().zip(other.per_vertex) {
            *a = a.checked_add(b).ok_or(Error::CountOverflow)?;
        }
        self.total = self.total.checked_add(other.total).ok_or(Error::CountOverflow)?;
        Ok(self)
    }

    /// Counts for the dense ids of a subgraph scattered back to the parent
    /// graph: `to_parent[i]` is the parent id of subgraph vertex `i`.
    pub fn scatter(&self, to_parent: &[usize], parent_n: usize) -> CliqueCounts {
        let mut per_vertex = vec![0; parent_n];
        for (i, &c) in self.per_vertex.iter().enumerate() {
            per_vertex[to_parent[i]] = c;
        }
        CliqueCounts { per_vertex, total: self.total, k: self.k }
    }
}

/// Local counts read off every path of the tree.
pub fn local_counts(sct: &Sct) -> Result<CliqueCounts> {
    local_counts_with(sct, Exec::default())
}

pub fn local_counts_with(sct: &Sct, exec: Exec) -> Result<CliqueCounts> {
    let n = sct.vertex_count();
    let k = sct.k();
    let table = BinomialTable::new(sct.stats().max_depth);
    let add_path = |mut acc: CliqueCounts, leaf: &NodeId| -> Result<CliqueCounts> {
        let path = sct.path(*leaf);
        let c = contribution_from(path.hold_count(), path.pivot_count(), k, |n, r| table.get(n, r))?;
        if c.path_total == 0 {
            return Ok(acc);
        }
        for (v, label) in path.nodes() {
            let add = match label {
                crate::sct::Label::Hold => c.per_hold,
                crate::sct::Label::Pivot => c.per_pivot,
            };
            acc.per_vertex[v] = acc.per_vertex[v].checked_add(add).ok_or(Error::CountOverflow)?;
        }
        acc.total = acc.total.checked_add(c.path_total).ok_or(Error::CountOverflow)?;
        Ok(acc)
    };

    let leaves = sct.leaf_ids();
    #[cfg(feature = "parallel")]
    if exec.is_parallel() {
        return leaves
            .par_iter()
            .with_min_len(crate::PAR_MIN_PATHS)
            .try_fold(|| CliqueCounts::zero(n, k), add_path)
            .try_reduce(|| CliqueCounts::zero(n, k), CliqueCounts::merge);
    }
    let _ = exec;
    leaves.iter().try_fold(CliqueCounts::zero(n, k), add_path)
}

/// Every k-clique, each sorted ascending, by ordered extension with
/// higher-id common neighbours.
pub fn brute_force_cliques(g: &Graph, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k == 0 {
        return out;
    }
    let mut clique = Vec::with_capacity(k);
    for v in 0..g.n() {
        clique.push(v);
        let cand: Vec<usize> = g.neighbors(v).iter().copied().filter(|&u| u > v).collect();
        extend(g, k, &mut clique, &cand, &mut |c| out.push(c.to_vec()));
        clique.pop();
    }
    out
}

fn extend(g: &Graph, k: usize, clique: &mut Vec<usize>, cand: &[usize], emit: &mut dyn FnMut(&[usize])) {
    if clique.len() == k {
        emit(clique);
        return;
    }
    for (i, &u) in cand.iter().enumerate() {
        if cand.len() - i < k - clique.len() {
            break;
        }
        clique.push(u);
        let next: Vec<usize> = cand[i + 1..].iter().copied().filter(|&w| g.has_edge(u, w)).collect();
        extend(g, k, clique, &next, emit);
        clique.pop();
    }
}

/// Counts from explicit enumeration. Intended for small graphs.
pub fn brute_force_counts(g: &Graph, k: usize) -> Result<CliqueCounts> {
    let mut counts = CliqueCounts::zero(g.n(), k);
    for clique in brute_force_cliques(g, k) {
        for v in clique {
            counts.per_vertex[v] += 1;
        }
        counts.total += 1;
    }
    Ok(counts)
}

/// Largest number of k-cliques sharing one vertex.
pub fn max_local(counts: &CliqueCounts) -> u128 {
    counts.per_vertex.iter().copied().max().unwrap_or(0)
}
