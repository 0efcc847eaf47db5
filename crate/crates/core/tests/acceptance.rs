//! Acceptance suite. Every criterion prints one PASS/FAIL line; run with
//! `cargo test -p kcds --test acceptance -- --nocapture` to see them.

mod common;

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use kcds::counting::{brute_force_cliques, path_contribution};
use kcds::extract::extract_cds;
use kcds::fw::{attribute_path, gamma};
use kcds::generators::{complete, planted_clique};
use kcds::sct::{build_sct_with, Pruning};
use kcds::{
    brute_force_counts, build_sct, core_decomposition, exact_cds_bruteforce, k_core_subgraph,
    local_counts, run, Engine, Exec, Graph, IterationConfig, PathOrder, Variant,
};

use common::{corpus, hold_heavy, rel_close, KS};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

const ORDERS: [PathOrder; 4] = [PathOrder::Build, PathOrder::Random(17), PathOrder::Depth, PathOrder::Degeneracy];
const VARIANTS: [Variant; 2] = [Variant::Basic, Variant::Simultaneous];

fn worked_binomials() -> Outcome {
    let a = path_contribution(1, 3, 3).map_err(|e| e.to_string())?;
    ensure(a.per_pivot == 2, || format!("(h=1,p=3,k=3) per_pivot = {}", a.per_pivot))?;
    let b = path_contribution(1, 2, 3).map_err(|e| e.to_string())?;
    ensure(b.per_hold == 1, || format!("(h=1,p=2,k=3) per_hold = {}", b.per_hold))?;
    Ok("C(2,1) = 2 and C(2,2) = 1".into())
}

fn counting_oracle() -> Outcome {
    let mut checked = 0;
    for inst in corpus() {
        for k in KS {
            let oracle = brute_force_counts(&inst.graph, k).map_err(|e| e.to_string())?;
            // Through the core restriction, as the pipeline runs it.
            let engine = Engine::new(&inst.graph, k, PathOrder::Build).map_err(|e| e.to_string())?;
            ensure(engine.counts() == oracle, || format!("{} k={k}: core-restricted counts differ", inst.name))?;
            // And on the unrestricted graph.
            let direct = local_counts(&build_sct(&inst.graph, k).map_err(|e| e.to_string())?)
                .map_err(|e| e.to_string())?;
            ensure(direct == oracle, || format!("{} k={k}: direct counts differ", inst.name))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} (graph, k) pairs equal field-for-field"))
}

fn uniqueness() -> Outcome {
    let mut cliques = 0;
    for inst in corpus() {
        let info = core_decomposition(&inst.graph);
        for k in KS {
            let keep = info.vertices_in_core(k - 1);
            let core = inst.graph.induced(&keep);
            let sct = build_sct(&core, k).map_err(|e| e.to_string())?;
            let mut seen: Vec<Vec<usize>> = sct
                .paths()
                .flat_map(|p| p.encoded_cliques(k))
                .map(|c| c.into_iter().map(|v| keep[v]).collect())
                .collect();
            seen.sort();
            let expected = brute_force_cliques(&inst.graph, k);
            ensure(seen == expected, || {
                format!("{} k={k}: {} encoded vs {} brute-force cliques", inst.name, seen.len(), expected.len())
            })?;
            cliques += expected.len();
        }
    }
    Ok(format!("{cliques} cliques each encoded exactly once"))
}

fn pruning_neutrality() -> Outcome {
    let mut saved = 0usize;
    for inst in corpus() {
        let info = core_decomposition(&inst.graph);
        for k in KS {
            let core = k_core_subgraph(&inst.graph, &info, k - 1);
            let on = build_sct_with(&core, k, Pruning::ALL).map_err(|e| e.to_string())?;
            let off = build_sct_with(&core, k, Pruning::NONE).map_err(|e| e.to_string())?;
            let (a, b) = (local_counts(&on), local_counts(&off));
            ensure(a == b, || format!("{} k={k}: counts change with pruning", inst.name))?;
            saved += off.stats().nodes - on.stats().nodes;
        }
    }
    Ok(format!("identical counts; pruning removed {saved} nodes overall"))
}

fn mass_conservation() -> Outcome {
    let mut instances: Vec<(String, Graph, usize)> = Vec::new();
    for inst in corpus() {
        for k in KS {
            instances.push((inst.name.clone(), inst.graph.clone(), k));
        }
    }
    let special = hold_heavy();
    let sct = build_sct(&special, 3).map_err(|e| e.to_string())?;
    ensure(sct.paths().any(|p| p.hold_count() == 3 && p.pivot_count() > 0), || {
        "handcrafted graph lost its |H| = k path".into()
    })?;
    instances.push(("hold-heavy".into(), special, 3));

    let mut iterations = 0;
    for (name, g, k) in &instances {
        for order in ORDERS {
            let engine = Engine::new(g, *k, order).map_err(|e| e.to_string())?;
            let total = engine.reduced_counts().total as f64;
            for variant in VARIANTS {
                let mut w = engine.initial_weights().map_err(|e| e.to_string())?;
                ensure(rel_close(w.sum(), total, 1e-9), || format!("{name} k={k}: initial mass off"))?;
                for _ in 0..100 {
                    w = engine.step(w, variant, Exec::Parallel).map_err(|e| e.to_string())?;
                    let sum = w.sum();
                    ensure(rel_close(sum, total, 1e-9) && w.r.iter().all(|&x| x >= 0.0), || {
                        format!("{name} k={k} {variant:?} {order:?} t={}: sum {sum} vs {total}", w.t)
                    })?;
                    iterations += 1;
                }
            }
        }
    }
    Ok(format!("{iterations} iterations over {} instances, all within 1e-9", instances.len()))
}

fn attribution_oracle() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let graphs = corpus();
    let mut cases = 0;
    let mut attempts = 0;
    while cases < 1000 {
        attempts += 1;
        if attempts > 100_000 {
            return Err("could not draw 1000 contributing paths".into());
        }
        let g = &graphs[rng.gen_range(0..graphs.len())].graph;
        let k = KS[rng.gen_range(0..KS.len())];
        let info = core_decomposition(g);
        let core = k_core_subgraph(g, &info, k - 1);
        let sct = build_sct(&core, k).map_err(|e| e.to_string())?;
        if sct.path_count() == 0 {
            continue;
        }
        let path = sct.paths().nth(rng.gen_range(0..sct.path_count())).unwrap();
        let cliques = path.encoded_cliques(k);
        if cliques.is_empty() {
            continue;
        }
        // Small integer weights so ties are common.
        let weights: Vec<f64> = (0..core.n()).map(|_| rng.gen_range(0..4) as f64).collect();

        let mut expected: BTreeMap<usize, u128> = BTreeMap::new();
        for clique in &cliques {
            let owner = *clique
                .iter()
                .min_by(|&&a, &&b| weights[a].total_cmp(&weights[b]).then(a.cmp(&b)))
                .unwrap();
            *expected.entry(owner).or_default() += 1;
        }
        let mut got: BTreeMap<usize, u128> = BTreeMap::new();
        for (v, c) in attribute_path(&path, &weights, k).map_err(|e| e.to_string())? {
            *got.entry(v).or_default() += c;
        }
        ensure(got == expected, || format!("k={k} path {path:?} weights {weights:?}: {got:?} vs {expected:?}"))?;
        cases += 1;
    }
    Ok(format!("{cases} random (path, weights) cases match exactly"))
}

fn exact_recovery() -> Outcome {
    let k = 4;
    let cfg = IterationConfig {
        iterations: 2000,
        variant: Variant::Simultaneous,
        order: PathOrder::Depth,
        exec: Exec::Parallel,
    };
    let mut exact = 0;
    let mut at_planted = 0;
    for seed in 0..40 {
        let (g, _) = planted_clique(20, 0.1, 6, seed);
        let (w, _) = run(&g, k, &cfg).map_err(|e| e.to_string())?;
        let got = extract_cds(&g, &w, k).map_err(|e| e.to_string())?;
        let core = k_core_subgraph(&g, &core_decomposition(&g), k - 1);
        let oracle = exact_cds_bruteforce(&core, k).map_err(|e| format!("seed {seed}: {e}"))?;
        ensure(got.cmp_density(&oracle) != Ordering::Greater, || {
            format!("seed {seed}: extracted {} exceeds oracle {}", got.density, oracle.density)
        })?;
        ensure(got.density >= 0.98 * oracle.density, || {
            format!("seed {seed}: extracted {} not within 2% of {}", got.density, oracle.density)
        })?;
        if got.cmp_density(&oracle) == Ordering::Equal {
            exact += 1;
        }
        if oracle.density == 2.5 {
            at_planted += 1;
        }
    }
    ensure(exact >= 38, || format!("only {exact}/40 instances exact"))?;
    Ok(format!("{exact}/40 exact (oracle optimum = 2.5 on {at_planted}/40), all within 2%"))
}

fn determinism() -> Outcome {
    let g = planted_clique(20, 0.1, 6, 3).0;
    for variant in VARIANTS {
        for order in ORDERS {
            let cfg = IterationConfig { iterations: 50, variant, order, exec: Exec::Parallel };
            let once = || -> Result<_, String> {
                let (w, stats) = run(&g, 4, &cfg).map_err(|e| e.to_string())?;
                let cds = extract_cds(&g, &w, 4).map_err(|e| e.to_string())?;
                let counts = Engine::new(&g, 4, order).map_err(|e| e.to_string())?.counts();
                Ok((w, stats.gammas, stats.delta, cds, counts))
            };
            let (a, b) = (once()?, once()?);
            let bits = |w: &kcds::WeightVector| w.r.iter().map(|x| x.to_bits()).collect::<Vec<_>>();
            ensure(bits(&a.0) == bits(&b.0), || format!("{variant:?} {order:?}: weights differ"))?;
            ensure(a.1 == b.1 && a.2 == b.2, || format!("{variant:?} {order:?}: stats differ"))?;
            ensure(a.3 == b.3, || format!("{variant:?} {order:?}: extracted sets differ"))?;
            ensure(a.4 == b.4, || format!("{variant:?} {order:?}: counts differ"))?;
        }
    }
    Ok("8 configurations reproduce bit-for-bit".into())
}

fn structural_bounds() -> Outcome {
    let mut graphs: Vec<Graph> = corpus().into_iter().map(|i| i.graph).collect();
    graphs.push(hold_heavy());
    graphs.push(complete(5));
    graphs.push(complete(9));
    graphs.extend((0..10).map(|s| planted_clique(20, 0.1, 6, s).0));
    let mut deepest = 0;
    for g in &graphs {
        let delta = core_decomposition(g).degeneracy;
        for k in 2..=6 {
            let sct = build_sct_with(g, k, Pruning::NONE).map_err(|e| e.to_string())?;
            let depth = sct.stats().max_depth;
            ensure(depth <= delta + 1, || format!("max depth {depth} > degeneracy {delta} + 1"))?;
            deepest = deepest.max(depth);
        }
    }
    Ok(format!("{} graphs, k = 2..6, deepest path {deepest}", graphs.len()))
}

type Criterion = (&'static str, fn() -> Outcome);

fn gamma_schedule() -> Outcome {
    let cfg = IterationConfig { iterations: 5, ..Default::default() };
    let (_, stats) = run(&complete(5), 3, &cfg).map_err(|e| e.to_string())?;
    let expected = [2.0 / 3.0, 1.0 / 2.0, 2.0 / 5.0, 1.0 / 3.0, 2.0 / 7.0];
    ensure(stats.gammas == expected, || format!("recorded {:?}", stats.gammas))?;
    ensure((1..=5).map(gamma).eq(expected), || "gamma() disagrees".into())?;
    Ok(format!("{:?}", stats.gammas))
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 10] = [
        ("worked-example binomials", worked_binomials),
        ("counting oracle equivalence", counting_oracle),
        ("one path per clique", uniqueness),
        ("pruning neutrality", pruning_neutrality),
        ("mass conservation", mass_conservation),
        ("attribution oracle", attribution_oracle),
        ("exact recovery of planted K6", exact_recovery),
        ("determinism", determinism),
        ("depth bound", structural_bounds),
        ("step-size schedule", gamma_schedule),
    ];
    let mut failures = Vec::new();
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let elapsed = start.elapsed();
        match outcome {
            Ok(detail) => println!("[PASS] {:>2}. {name}: {detail} ({elapsed:.2?})", i + 1),
            Err(detail) => {
                println!("[FAIL] {:>2}. {name}: {detail} ({elapsed:.2?})", i + 1);
                failures.push(i + 1);
            }
        }
    }
    assert!(failures.is_empty(), "failed criteria: {failures:?}");
}
