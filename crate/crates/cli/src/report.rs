//! JSON / text reports. Key names are part of the output contract.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;

#[derive(Serialize)]
pub struct CountReport {
    pub k: usize,
    pub total: u128,
    /// Keyed by external vertex id.
    pub per_vertex: BTreeMap<u64, u128>,
    pub delta: u128,
    pub core_reduced_n: usize,
}

#[derive(Serialize)]
pub struct DensestReport {
    pub k: usize,
    #[serde(rename = "T")]
    pub iterations: usize,
    pub variant: &'static str,
    pub ordering: &'static str,
    pub seed: u64,
    pub density: f64,
    pub clique_count: u128,
    pub vertices: Vec<u64>,
    pub max_weight: f64,
    pub weight_sum: f64,
    pub delta: u128,
    pub bound_report: String,
    pub per_iteration_ms: Vec<f64>,
}

#[derive(Serialize)]
pub struct OracleReport {
    pub k: usize,
    pub density: f64,
    pub clique_count: u128,
    pub vertices: Vec<u64>,
    pub delta: u128,
}

#[derive(Serialize)]
pub struct Checkpoint {
    pub t: usize,
    pub density: f64,
    pub max_weight: f64,
}

#[derive(Serialize)]
pub struct BenchTrace {
    pub variant: &'static str,
    pub ordering: &'static str,
    pub seed: u64,
    pub trace: Vec<Checkpoint>,
    pub elapsed_ms: f64,
}

fn join<T: ToString>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

impl CountReport {
    pub fn text(&self) -> String {
        let mut out = format!(
            "k: {}\ntotal: {}\ndelta: {}\ncore_reduced_n: {}\nper_vertex:\n",
            self.k, self.total, self.delta, self.core_reduced_n
        );
        for (v, c) in &self.per_vertex {
            let _ = writeln!(out, "  {v} {c}");
        }
        out
    }
}

impl DensestReport {
    pub fn text(&self) -> String {
        format!(
            "k: {}\nT: {}\nvariant: {}\nordering: {}\nseed: {}\ndensity: {}\nclique_count: {}\n\
             vertices: {}\nmax_weight: {}\nweight_sum: {}\ndelta: {}\nbound: {}\n",
            self.k,
            self.iterations,
            self.variant,
            self.ordering,
            self.seed,
            self.density,
            self.clique_count,
            join(&self.vertices),
            self.max_weight,
            self.weight_sum,
            self.delta,
            self.bound_report
        )
    }
}

impl OracleReport {
    pub fn text(&self) -> String {
        format!(
            "k: {}\ndensity: {}\nclique_count: {}\nvertices: {}\ndelta: {}\n",
            self.k,
            self.density,
            self.clique_count,
            join(&self.vertices),
            self.delta
        )
    }
}

pub fn bench_text(traces: &[BenchTrace]) -> String {
    let mut out = String::new();
    for trace in traces {
        let _ = writeln!(out, "{} / {}:", trace.variant, trace.ordering);
        for c in &trace.trace {
            let _ = writeln!(out, "  t={:<6} density={:<12} max_weight={}", c.t, c.density, c.max_weight);
        }
    }
    out
}
