//! Frank-Wolfe weight updates over the paths of a succinct clique tree.
//!
//! Each vertex carries a weight `r(v)`, initialised to its local clique count
//! divided by `k`. One iteration hands every k-clique to its minimum-weight
//! member (smaller id on ties) and mixes the resulting loads into `r` with
//! step size `2 / (t + 2)`. Cliques are never listed: a path with hold set
//! `H` and pivot set `P` is resolved in `O(|Γ| log |Γ|)` by walking its
//! vertices in weight order, see [`attribute`].
//!
//! Two variants are provided:
//!
//! * [`Variant::Basic`]: synchronous. All argmins read the previous iterate
//!   and the loads are mixed in once per iteration. Paths are independent and
//!   run in parallel.
//! * [`Variant::Simultaneous`]: every path immediately adds its share to the
//!   live weights, so later paths in the same iteration see it. Strictly
//!   sequential in the configured [`PathOrder`].

use std::time::Instant;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::counting::{local_counts_with, max_local, path_contribution, BinomialTable, CliqueCounts};
use crate::error::{Error, Result};
use crate::graph::{core_decomposition, CoreInfo, Graph};
use crate::sct::{build_sct, reorder_paths, NodeId, PathOrder, PathView, Sct};
use crate::Exec;

/// Per-vertex weights and the number of completed iterations.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    pub r: Vec<f64>,
    pub t: usize,
}

impl WeightVector {
    pub fn sum(&self) -> f64 {
        self.r.iter().sum()
    }

    /// `‖r‖∞`; weights are non-negative.
    pub fn max(&self) -> f64 {
        self.r.iter().copied().fold(0.0, f64::max)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Variant {
    Basic,
    Simultaneous,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::Basic => "basic",
            Variant::Simultaneous => "ccas",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct IterationConfig {
    pub iterations: usize,
    pub variant: Variant,
    /// Path order for the simultaneous variant. The basic variant is
    /// order-independent.
    pub order: PathOrder,
    pub exec: Exec,
}

impl Default for IterationConfig {
    fn default() -> Self {
        IterationConfig {
            iterations: 100,
            variant: Variant::Simultaneous,
            order: PathOrder::Depth,
            exec: Exec::default(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RunStats {
    pub gammas: Vec<f64>,
    pub iteration_ms: Vec<f64>,
    pub max_weight: f64,
    pub weight_sum: f64,
    /// Largest number of k-cliques sharing a vertex.
    pub delta: u128,
    pub total_cliques: u128,
    pub bound_report: String,
    /// Vertex count after restricting to the (k-1)-core.
    pub reduced_n: usize,
    pub degeneracy: usize,
    pub sct_nodes: usize,
    pub sct_paths: usize,
    pub sct_max_depth: usize,
}

/// Step size of iteration `t` (1-based).
pub fn gamma(t: usize) -> f64 {
    2.0 / (t as f64 + 2.0)
}

/// `r(v) = count(v) / k`, `t = 0`.
pub fn init_weights(counts: &CliqueCounts, k: usize) -> Result<WeightVector> {
    if k == 0 {
        return Err(Error::InvalidArgument("k must be positive".into()));
    }
    let r = counts.per_vertex.iter().map(|&c| c as f64 / k as f64).collect();
    Ok(WeightVector { r, t: 0 })
}

/// Hands the cliques encoded by one path to their minimum-weight members.
///
/// Vertices are visited in increasing `(weight, id)`. A pivot `v` reached with
/// `p` pivots still unvisited is the minimum of `C(p - 1, k - |H| - 1)` of the
/// remaining cliques; a hold is the minimum of all `C(p, k - |H|)` remaining
/// ones, which ends the walk. When `|H| = k` the single clique `H` goes to the
/// lightest hold even if every pivot is lighter. Zero counts are not emitted;
/// emitted counts sum to `C(|P|, k - |H|)`.
///
/// `scratch` is reused between calls. Requires `|H| <= k <= |H| + |P|`.
pub fn attribute(
    holds: &[usize],
    pivots: &[usize],
    weights: &[f64],
    k: usize,
    table: &BinomialTable,
    scratch: &mut Vec<(f64, usize, bool)>,
    mut emit: impl FnMut(usize, u128),
) -> Result<()> {
    debug_assert!(holds.len() <= k && k - holds.len() <= pivots.len());
    let need = (k - holds.len()) as i64;
    scratch.clear();
    scratch.extend(holds.iter().map(|&v| (weights[v], v, true)));
    scratch.extend(pivots.iter().map(|&v| (weights[v], v, false)));
    scratch.sort_unstable_by(|a, b| a.0.total_cmp(&b.0).then(a.1.cmp(&b.1)));

    let mut remaining = pivots.len();
    for &(_, v, is_hold) in scratch.iter() {
        if remaining == 0 {
            break;
        }
        if is_hold {
            let c = table.get(remaining, need)?;
            if c > 0 {
                emit(v, c);
            }
            return Ok(());
        }
        let c = table.get(remaining - 1, need - 1)?;
        if c > 0 {
            emit(v, c);
        }
        remaining -= 1;
    }
    if need == 0 {
        let lightest_hold = scratch.iter().find(|e| e.2).map(|e| e.1);
        if let Some(v) = lightest_hold {
            emit(v, 1);
        }
    }
    Ok(())
}

/// [`attribute`] for a tree path, collected into `(vertex, count)` pairs.
pub fn attribute_path(path: &PathView<'_>, weights: &[f64], k: usize) -> Result<Vec<(usize, u128)>> {
    let holds = path.holds();
    let pivots = path.pivots();
    let mut out = Vec::new();
    if holds.len() > k || k - holds.len() > pivots.len() {
        return Ok(out);
    }
    let table = BinomialTable::new(path.depth());
    attribute(&holds, &pivots, weights, k, &table, &mut Vec::new(), |v, c| out.push((v, c)))?;
    Ok(out)
}

/// Paths that carry at least one k-clique, in visiting order, plus the
/// binomial table they need.
#[derive(Clone, Debug)]
pub struct PreparedPaths {
    leaves: Vec<NodeId>,
    k: usize,
    table: BinomialTable,
}

impl PreparedPaths {
    pub fn new(sct: &Sct, ordered: &[PathView<'_>]) -> Result<Self> {
        let k = sct.k();
        let mut leaves = Vec::with_capacity(ordered.len());
        for p in ordered {
            if path_contribution(p.hold_count(), p.pivot_count(), k)?.path_total > 0 {
                leaves.push(p.leaf());
            }
        }
        Ok(PreparedPaths { leaves, k, table: BinomialTable::new(sct.stats().max_depth) })
    }

    pub fn len(&self) -> usize {
        self.leaves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.leaves.is_empty()
    }

    pub fn leaves(&self) -> &[NodeId] {
        &self.leaves
    }
}

struct Scratch {
    holds: Vec<usize>,
    pivots: Vec<usize>,
    sorted: Vec<(f64, usize, bool)>,
}

impl Scratch {
    fn new() -> Self {
        Scratch { holds: Vec::new(), pivots: Vec::new(), sorted: Vec::new() }
    }
}

/// One synchronous iteration: loads from the frozen `w`, then
/// `r ← (1 - γ) r + γ r̂`.
pub fn iterate_basic(sct: &Sct, paths: &PreparedPaths, w: &WeightVector, exec: Exec) -> Result<WeightVector> {
    let n = w.r.len();
    let weights = &w.r;
    let accumulate = |(mut load, mut scratch): (Vec<u128>, Scratch), leaf: &NodeId| -> Result<(Vec<u128>, Scratch)> {
        let Scratch { holds, pivots, sorted } = &mut scratch;
        sct.path(*leaf).fill(holds, pivots);
        let mut overflow = false;
        attribute(holds, pivots, weights, paths.k, &paths.table, sorted, |v, c| {
            match load[v].checked_add(c) {
                Some(x) => load[v] = x,
                None => overflow = true,
            }
        })?;
        if overflow {
            return Err(Error::CountOverflow);
        }
        Ok((load, scratch))
    };

    #[cfg(feature = "parallel")]
    let load = if exec.is_parallel() {
        paths
            .leaves
            .par_iter()
            .with_min_len(crate::PAR_MIN_PATHS)
            .try_fold(|| (vec![0u128; n], Scratch::new()), accumulate)
            .map(|r| r.map(|(load, _)| load))
            .try_reduce(
                || vec![0u128; n],
                |mut a, b| {
                    for (x, y) in a.iter_mut().zip(b) {
                        *x = x.checked_add(y).ok_or(Error::CountOverflow)?;
                    }
                    Ok(a)
                },
            )?
    } else {
        paths.leaves.iter().try_fold((vec![0u128; n], Scratch::new()), accumulate)?.0
    };
    #[cfg(not(feature = "parallel"))]
    let load = {
        let _ = exec;
        paths.leaves.iter().try_fold((vec![0u128; n], Scratch::new()), accumulate)?.0
    };

    let t = w.t + 1;
    let step = gamma(t);
    let r = w
        .r
        .iter()
        .zip(&load)
        .map(|(&old, &hat)| (1.0 - step) * old + step * hat as f64)
        .collect();
    Ok(WeightVector { r, t })
}

/// One simultaneous iteration: scale every weight by `1 - γ`, then walk the
/// paths in order, each adding `γ · count` to the live weights at once.
pub fn iterate_simultaneous(sct: &Sct, paths: &PreparedPaths, mut w: WeightVector) -> Result<WeightVector> {
    let t = w.t + 1;
    let step = gamma(t);
    for x in &mut w.r {
        *x *= 1.0 - step;
    }
    let mut scratch = Scratch::new();
    let mut pending: Vec<(usize, u128)> = Vec::new();
    for &leaf in &paths.leaves {
        let Scratch { holds, pivots, sorted } = &mut scratch;
        sct.path(leaf).fill(holds, pivots);
        pending.clear();
        attribute(holds, pivots, &w.r, paths.k, &paths.table, sorted, |v, c| pending.push((v, c)))?;
        // An emitted vertex leaves the walk, so applying after the walk is the
        // same as applying each share as it is found.
        for &(v, c) in &pending {
            w.r[v] += step * c as f64;
        }
    }
    w.t = t;
    Ok(w)
}

/// A graph prepared for iteration: restricted to its (k-1)-core, with the
/// tree built, counts taken and paths ordered. Weight vectors handled by the
/// engine are indexed by the reduced graph; use [`Engine::expand`] to get back
/// to the input graph.
pub struct Engine {
    k: usize,
    full_n: usize,
    keep: Vec<usize>,
    reduced: Graph,
    reduced_info: CoreInfo,
    degeneracy: usize,
    sct: Sct,
    counts: CliqueCounts,
    paths: PreparedPaths,
}

impl Engine {
    pub fn new(g: &Graph, k: usize, order: PathOrder) -> Result<Self> {
        Self::with_exec(g, k, order, Exec::default())
    }

    pub fn with_exec(g: &Graph, k: usize, order: PathOrder, exec: Exec) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidArgument(format!("clique size k must be >= 2, got {k}")));
        }
        let info = core_decomposition(g);
        let keep = info.vertices_in_core(k - 1);
        let reduced = g.induced(&keep);
        let reduced_info = core_decomposition(&reduced);
        let sct = build_sct(&reduced, k)?;
        let counts = local_counts_with(&sct, exec)?;
        let ordered = reorder_paths(&sct, order, &reduced_info);
        let paths = PreparedPaths::new(&sct, &ordered)?;
        Ok(Engine {
            k,
            full_n: g.n(),
            keep,
            reduced,
            reduced_info,
            degeneracy: info.degeneracy,
            sct,
            counts,
            paths,
        })
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Re-sort the visiting order without rebuilding the tree.
    pub fn set_order(&mut self, order: PathOrder) -> Result<()> {
        let ordered = reorder_paths(&self.sct, order, &self.reduced_info);
        self.paths = PreparedPaths::new(&self.sct, &ordered)?;
        Ok(())
    }

    pub fn reduced_graph(&self) -> &Graph {
        &self.reduced
    }

    pub fn reduced_core_info(&self) -> &CoreInfo {
        &self.reduced_info
    }

    /// Input-graph id of each reduced vertex.
    pub fn kept_vertices(&self) -> &[usize] {
        &self.keep
    }

    pub fn sct(&self) -> &Sct {
        &self.sct
    }

    pub fn paths(&self) -> &PreparedPaths {
        &self.paths
    }

    /// Counts over the reduced graph.
    pub fn reduced_counts(&self) -> &CliqueCounts {
        &self.counts
    }

    /// Counts over the input graph.
    pub fn counts(&self) -> CliqueCounts {
        self.counts.scatter(&self.keep, self.full_n)
    }

    pub fn delta(&self) -> u128 {
        max_local(&self.counts)
    }

    /// Degeneracy of the input graph.
    pub fn degeneracy(&self) -> usize {
        self.degeneracy
    }

    pub fn initial_weights(&self) -> Result<WeightVector> {
        init_weights(&self.counts, self.k)
    }

    pub fn step(&self, w: WeightVector, variant: Variant, exec: Exec) -> Result<WeightVector> {
        match variant {
            Variant::Basic => iterate_basic(&self.sct, &self.paths, &w, exec),
            Variant::Simultaneous => iterate_simultaneous(&self.sct, &self.paths, w),
        }
    }

    /// Reduced-graph weights scattered to the input graph; peeled vertices get 0.
    pub fn expand(&self, w: &WeightVector) -> WeightVector {
        let mut r = vec![0.0; self.full_n];
        for (i, &v) in self.keep.iter().enumerate() {
            r[v] = w.r[i];
        }
        WeightVector { r, t: w.t }
    }

    pub fn bound_report(&self, variant: Variant, iterations: usize) -> String {
        bound_report(self.delta(), self.counts.total, self.k, variant, iterations)
    }
}

/// Human-readable iteration bound: an `ε`-approximate `‖r‖∞` is guaranteed
/// once `t` exceeds roughly `Δ·|Ψ|/ε²` (basic) or `Δ·|Ψ|·√k/ε²` (simultaneous).
pub fn bound_report(delta: u128, total: u128, k: usize, variant: Variant, iterations: usize) -> String {
    if total == 0 {
        return "no k-cliques: weights are identically zero".into();
    }
    let scale = match variant {
        Variant::Basic => 1.0,
        Variant::Simultaneous => (k as f64).sqrt(),
    };
    let coefficient = delta as f64 * total as f64 * scale;
    let eps = if iterations == 0 {
        "unbounded".to_string()
    } else {
        format!("{:.4e}", (coefficient / iterations as f64).sqrt())
    };
    format!(
        "{}: t ~ {:.4e} / eps^2 (Delta = {delta}, cliques = {total}, k = {k}); eps implied at t = {iterations}: {eps}",
        variant.name(),
        coefficient
    )
}

/// Core restriction, tree build, initialisation and `cfg.iterations` updates.
/// The returned weights are indexed by `g`.
pub fn run(g: &Graph, k: usize, cfg: &IterationConfig) -> Result<(WeightVector, RunStats)> {
    let engine = Engine::with_exec(g, k, cfg.order, cfg.exec)?;
    let mut w = engine.initial_weights()?;
    let mut gammas = Vec::with_capacity(cfg.iterations);
    let mut iteration_ms = Vec::with_capacity(cfg.iterations);
    for _ in 0..cfg.iterations {
        let start = Instant::now();
        gammas.push(gamma(w.t + 1));
        w = engine.step(w, cfg.variant, cfg.exec)?;
        iteration_ms.push(start.elapsed().as_secs_f64() * 1e3);
    }
    let full = engine.expand(&w);
    let stats = engine.sct().stats();
    let run_stats = RunStats {
        gammas,
        iteration_ms,
        max_weight: full.max(),
        weight_sum: full.sum(),
        delta: engine.delta(),
        total_cliques: engine.reduced_counts().total,
        bound_report: engine.bound_report(cfg.variant, cfg.iterations),
        reduced_n: engine.reduced_graph().n(),
        degeneracy: engine.degeneracy(),
        sct_nodes: stats.nodes,
        sct_paths: stats.leaves,
        sct_max_depth: stats.max_depth,
    };
    Ok((full, run_stats))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::counting::brute_force_counts;
    use crate::generators::{complete, gnp, star};

    fn attribute_vec(holds: &[usize], pivots: &[usize], weights: &[f64], k: usize) -> Vec<(usize, u128)> {
        let mut out = Vec::new();
        let table = BinomialTable::new(holds.len() + pivots.len());
        attribute(holds, pivots, weights, k, &table, &mut Vec::new(), |v, c| out.push((v, c))).unwrap();
        out
    }

    #[test]
    fn worked_example_path() {
        // H = {2}, P = {5, 6, 3}; vertex 3 lightest, then 2.
        let mut weights = vec![10.0; 7];
        weights[3] = 0.5;
        weights[2] = 1.0;
        weights[5] = 2.0;
        weights[6] = 3.0;
        assert_eq!(attribute_vec(&[2], &[5, 6, 3], &weights, 3), vec![(3, 2), (2, 1)]);
    }

    #[test]
    fn hold_only_clique_goes_to_lightest_hold() {
        let weights = vec![3.0, 1.0, 2.0];
        assert_eq!(attribute_vec(&[0, 1, 2], &[], &weights, 3), vec![(1, 1)]);
        // Lighter pivots would otherwise exhaust the walk without a hold break.
        let weights = vec![3.0, 1.0, 2.0, 0.1, 0.2];
        assert_eq!(attribute_vec(&[0, 1, 2], &[3, 4], &weights, 3), vec![(1, 1)]);
    }

    #[test]
    fn ties_break_on_smaller_id() {
        let weights = vec![1.0; 4];
        // k = 2, H = {}, P = {0,1,2,3}: vertex 0 takes C(3,1) = 3, 1 takes 2, 2 takes 1.
        assert_eq!(attribute_vec(&[], &[3, 1, 2, 0], &weights, 2), vec![(0, 3), (1, 2), (2, 1)]);
    }

    #[test]
    fn gamma_schedule() {
        assert_eq!(gamma(1), 2.0 / 3.0);
        assert_eq!(gamma(2), 0.5);
    }

    #[test]
    fn init_weights_divides_by_k() {
        let counts = brute_force_counts(&complete(5), 3).unwrap();
        let w = init_weights(&counts, 3).unwrap();
        assert_eq!(w.r, vec![2.0; 5]);
        assert_eq!(w.sum(), 10.0);
        assert!(init_weights(&counts, 0).is_err());
        let w = init_weights(&brute_force_counts(&complete(3), 3).unwrap(), 3).unwrap();
        assert_eq!(w.r, vec![1.0 / 3.0; 3]);
    }

    #[test]
    fn zero_iterations_returns_initial_weights() {
        let g = gnp(15, 0.4, 3);
        let cfg = IterationConfig { iterations: 0, ..Default::default() };
        let (w, stats) = run(&g, 3, &cfg).unwrap();
        let counts = brute_force_counts(&g, 3).unwrap();
        assert_eq!(w, init_weights(&counts, 3).unwrap());
        assert!(stats.gammas.is_empty());
    }

    #[test]
    fn clique_free_graph_stays_zero() {
        let (w, stats) = run(&star(6), 3, &IterationConfig::default()).unwrap();
        assert!(w.r.iter().all(|&x| x == 0.0));
        assert_eq!(stats.delta, 0);
    }

    #[test]
    fn single_clique_keeps_mass_on_members() {
        // Triangle 0-1-2 with a tail 2-3-4.
        let g = Graph::from_dense_edges(5, [(0, 1), (1, 2), (0, 2), (2, 3), (3, 4)]);
        for variant in [Variant::Basic, Variant::Simultaneous] {
            let cfg = IterationConfig { iterations: 25, variant, ..Default::default() };
            let (w, _) = run(&g, 3, &cfg).unwrap();
            assert!((w.sum() - 1.0).abs() < 1e-12);
            assert_eq!(&w.r[3..], &[0.0, 0.0]);
        }
    }

    #[test]
    fn variants_agree_with_a_single_path() {
        let g = complete(4);
        let engine = Engine::new(&g, 3, PathOrder::Build).unwrap();
        assert_eq!(engine.paths().len(), 1);
        let mut a = engine.initial_weights().unwrap();
        let mut b = a.clone();
        for _ in 0..10 {
            a = engine.step(a, Variant::Basic, Exec::Sequential).unwrap();
            b = engine.step(b, Variant::Simultaneous, Exec::Sequential).unwrap();
            assert_eq!(a, b);
        }
    }

    #[test]
    fn basic_is_partition_independent() {
        let g = gnp(30, 0.4, 9);
        let engine = Engine::new(&g, 4, PathOrder::Build).unwrap();
        let mut seq = engine.initial_weights().unwrap();
        let mut par = seq.clone();
        for _ in 0..5 {
            seq = engine.step(seq, Variant::Basic, Exec::Sequential).unwrap();
            par = engine.step(par, Variant::Basic, Exec::Parallel).unwrap();
        }
        // Loads are exact integers, so the partitioning cannot change a bit.
        assert_eq!(seq, par);
    }

    #[test]
    fn bound_report_mentions_inputs() {
        let report = bound_report(6, 10, 3, Variant::Simultaneous, 100);
        assert!(report.contains("Delta = 6") && report.contains("cliques = 10"), "{report}");
        assert!(bound_report(0, 0, 3, Variant::Basic, 5).contains("no k-cliques"));
    }
}
