//! Densest-subgraph extraction from a weight vector, density evaluation and an
//! exhaustive oracle for tiny graphs.

use std::cmp::Ordering;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::counting::{brute_force_counts, local_counts};
use crate::error::{Error, Result};
use crate::fw::WeightVector;
use crate::graph::Graph;
use crate::sct::build_sct;
use crate::Exec;

/// Largest graph [`exact_cds_bruteforce`] accepts.
pub const ORACLE_MAX_N: usize = 16;

/// Subsets up to this size are counted by enumeration instead of a tree.
const BRUTE_FORCE_MAX: usize = 30;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CdsSource {
    FwExtraction,
    Oracle,
    Evaluation,
}

#[derive(Clone, Debug, PartialEq)]
pub struct CdsResult {
    /// Dense ids, increasing.
    pub dense: Vec<usize>,
    /// External ids of `dense`, increasing.
    pub vertices: Vec<u64>,
    pub k: usize,
    pub clique_count: u128,
    pub density: f64,
    pub source: CdsSource,
}

impl CdsResult {
    fn new(g: &Graph, mut dense: Vec<usize>, k: usize, clique_count: u128, source: CdsSource) -> Self {
        dense.sort_unstable();
        let mut vertices: Vec<u64> = dense.iter().map(|&v| g.original_id(v)).collect();
        vertices.sort_unstable();
        let density = if dense.is_empty() { 0.0 } else { clique_count as f64 / dense.len() as f64 };
        CdsResult { dense, vertices, k, clique_count, density, source }
    }

    /// Exact comparison of `clique_count / |vertices|`.
    pub fn cmp_density(&self, other: &CdsResult) -> Ordering {
        cmp_ratio(self.clique_count, self.dense.len(), other.clique_count, other.dense.len())
    }
}

fn cmp_ratio(a_num: u128, a_den: usize, b_num: u128, b_den: usize) -> Ordering {
    // Empty sets have density 0.
    let lhs = if a_den == 0 { 0 } else { a_num.saturating_mul(b_den.max(1) as u128) };
    let rhs = if b_den == 0 { 0 } else { b_num.saturating_mul(a_den.max(1) as u128) };
    lhs.cmp(&rhs)
}

fn count_induced(g: &Graph, s: &[usize], k: usize) -> Result<u128> {
    let sub = g.induced(s);
    if s.len() <= BRUTE_FORCE_MAX {
        Ok(brute_force_counts(&sub, k)?.total)
    } else {
        Ok(local_counts(&build_sct(&sub, k)?)?.total)
    }
}

/// k-clique density of the subgraph induced by `s` (dense ids).
pub fn density(g: &Graph, s: &[usize], k: usize) -> Result<CdsResult> {
    if s.is_empty() {
        return Err(Error::InvalidArgument("vertex set must be nonempty".into()));
    }
    if let Some(&v) = s.iter().find(|&&v| v >= g.n()) {
        return Err(Error::InvalidArgument(format!("vertex {v} not in graph of {} vertices", g.n())));
    }
    let mut set = s.to_vec();
    set.sort_unstable();
    set.dedup();
    let count = count_induced(g, &set, k)?;
    Ok(CdsResult::new(g, set, k, count, CdsSource::Evaluation))
}

/// Level-set sweep: order vertices by weight (descending, smaller id first on
/// ties), cut wherever the weight strictly drops, and keep the densest prefix.
pub fn extract_cds(g: &Graph, w: &WeightVector, k: usize) -> Result<CdsResult> {
    extract_cds_with(g, w, k, Exec::default())
}

pub fn extract_cds_with(g: &Graph, w: &WeightVector, k: usize, exec: Exec) -> Result<CdsResult> {
    if w.r.len() != g.n() {
        return Err(Error::InvalidArgument(format!(
            "weight vector has {} entries, graph has {} vertices",
            w.r.len(),
            g.n()
        )));
    }
    if g.is_empty() {
        return Ok(CdsResult::new(g, Vec::new(), k, 0, CdsSource::FwExtraction));
    }
    let mut order: Vec<usize> = (0..g.n()).collect();
    order.sort_by(|&a, &b| w.r[b].total_cmp(&w.r[a]).then(a.cmp(&b)));
    let cuts: Vec<usize> = (1..=order.len())
        .filter(|&len| len == order.len() || w.r[order[len - 1]] > w.r[order[len]])
        .collect();

    let evaluate = |&len: &usize| -> Result<(usize, u128)> {
        let mut prefix = order[..len].to_vec();
        prefix.sort_unstable();
        Ok((len, count_induced(g, &prefix, k)?))
    };
    #[cfg(feature = "parallel")]
    let scored: Vec<(usize, u128)> = if exec.is_parallel() {
        cuts.par_iter().map(evaluate).collect::<Result<_>>()?
    } else {
        cuts.iter().map(evaluate).collect::<Result<_>>()?
    };
    #[cfg(not(feature = "parallel"))]
    let scored: Vec<(usize, u128)> = {
        let _ = exec;
        cuts.iter().map(evaluate).collect::<Result<_>>()?
    };

    // `scored` is in increasing prefix length; keep the first maximum.
    let mut best = scored[0];
    for &cand in &scored[1..] {
        if cmp_ratio(cand.1, cand.0, best.1, best.0) == Ordering::Greater {
            best = cand;
        }
    }
    let (len, count) = if best.1 == 0 { (1, 0) } else { best };
    Ok(CdsResult::new(g, order[..len].to_vec(), k, count, CdsSource::FwExtraction))
}

/// Exact densest subgraph by trying every nonempty vertex subset. Ties go to
/// the lexicographically smallest sorted list of dense ids.
pub fn exact_cds_bruteforce(g: &Graph, k: usize) -> Result<CdsResult> {
    exact_cds_bruteforce_with(g, k, Exec::default())
}

pub fn exact_cds_bruteforce_with(g: &Graph, k: usize, exec: Exec) -> Result<CdsResult> {
    let n = g.n();
    if n > ORACLE_MAX_N {
        return Err(Error::TooLarge { n, limit: ORACLE_MAX_N });
    }
    if n == 0 {
        return Ok(CdsResult::new(g, Vec::new(), k, 0, CdsSource::Oracle));
    }
    let cliques: Vec<u32> = crate::counting::brute_force_cliques(g, k)
        .into_iter()
        .map(|c| c.iter().fold(0u32, |m, &v| m | 1 << v))
        .collect();
    let score = |mask: u32| -> (u32, u128) {
        (mask, cliques.iter().filter(|&&c| c & mask == c).count() as u128)
    };
    let better = |a: (u32, u128), b: (u32, u128)| -> (u32, u128) {
        match cmp_ratio(a.1, a.0.count_ones() as usize, b.1, b.0.count_ones() as usize) {
            Ordering::Greater => a,
            Ordering::Less => b,
            Ordering::Equal => {
                if lex_cmp(a.0, b.0) == Ordering::Greater {
                    b
                } else {
                    a
                }
            }
        }
    };
    let masks = 1u32..(1u32 << n);
    #[cfg(feature = "parallel")]
    let best = if exec.is_parallel() {
        masks.into_par_iter().map(score).reduce_with(better)
    } else {
        masks.map(score).reduce(better)
    };
    #[cfg(not(feature = "parallel"))]
    let best = {
        let _ = exec;
        masks.map(score).reduce(better)
    };
    let (mask, count) = best.expect("n >= 1 gives at least one subset");
    let dense: Vec<usize> = (0..n).filter(|&v| mask >> v & 1 == 1).collect();
    Ok(CdsResult::new(g, dense, k, count, CdsSource::Oracle))
}

/// Lexicographic order of the increasing id lists encoded by two masks.
fn lex_cmp(a: u32, b: u32) -> Ordering {
    let (mut a, mut b) = (a, b);
    loop {
        match (a == 0, b == 0) {
            (true, true) => return Ordering::Equal,
            (true, false) => return Ordering::Less,
            (false, true) => return Ordering::Greater,
            _ => {}
        }
        let (x, y) = (a.trailing_zeros(), b.trailing_zeros());
        if x != y {
            return x.cmp(&y);
        }
        a &= a - 1;
        b &= b - 1;
    }
}
