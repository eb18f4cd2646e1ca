//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use cubic_twist::diagram::{build_diagram, crossing_partners};
use cubic_twist::experiment::monte_carlo_classes;
use cubic_twist::faces::singular_count;
use cubic_twist::oracle::{exact_expected_classes, summarize, verify_property6, verify_signature_coverage, Space};
use cubic_twist::properties::{check_regular_twist, check_singular_twist, check_structural_property, Claim};
use cubic_twist::reduce::{greedy_reduce, matching_bound_embedding};
use cubic_twist::twist::{local_rotation_flip, triple_twist};
use cubic_twist::{
    classify_edges, euler_characteristic, is_circular, is_orientable, named_graph, random_cubic, random_embedding,
    trace_faces, two_factor_cycles, CubicGraph, EdgeClass, Sign,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const CAP: usize = 25;

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn catalog() -> Vec<(&'static str, CubicGraph)> {
    ["theta", "k4", "k33", "petersen"].into_iter().map(|n| (n, named_graph(n).unwrap())).collect()
}

/// Catalog graphs plus one random cubic graph for each even `n` in 8..=14.
fn sweep_graphs(rng: &mut ChaCha8Rng) -> Vec<(String, CubicGraph)> {
    let mut out: Vec<(String, CubicGraph)> = catalog().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    for n in (8..=14).step_by(2) {
        out.push((format!("random{n}"), random_cubic(n, rng).unwrap()));
    }
    out
}

fn within(limit: Duration, start: Instant) -> std::result::Result<(), String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(())
    } else {
        Err(format!("took {took:?}, limit {limit:?}"))
    }
}

fn face_tracing() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let graphs = sweep_graphs(&mut rng);
    let mut checked = 0;
    while checked < 1000 {
        for (name, g) in &graphs {
            let emb = random_embedding(g, &mut rng);
            let fs = trace_faces(g, &emb);
            if fs.total_length() != 2 * g.m() {
                return Err(format!("{name}: total length {} for m = {}", fs.total_length(), g.m()));
            }
            let mut seen = vec![0; g.m()];
            for w in &fs.walks {
                for e in w.edges() {
                    seen[e] += 1;
                }
            }
            if let Some(e) = seen.iter().position(|&c| c != 2) {
                return Err(format!("{name}: edge {e} traversed {} times", seen[e]));
            }
            let chi = euler_characteristic(g, &fs);
            if chi > 2 || (is_orientable(g, &emb) && chi % 2 != 0) {
                return Err(format!("{name}: chi = {chi}, orientable = {}", is_orientable(g, &emb)));
            }
            checked += 1;
        }
    }
    within(Duration::from_secs(10), start)?;
    Ok(format!("{checked} embeddings in {:?}", start.elapsed()))
}

fn regular_twists() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let graphs = sweep_graphs(&mut rng);
    let mut embeddings = 0;
    let mut twists = 0;
    while embeddings < 200 {
        for (name, g) in &graphs {
            let emb = random_embedding(g, &mut rng);
            let fs = trace_faces(g, &emb);
            for (e, class) in classify_edges(&fs).into_iter().enumerate() {
                if class != EdgeClass::Regular {
                    continue;
                }
                let found = check_regular_twist(g, &emb, &fs, e).map_err(|err| err.to_string())?;
                if let Some(v) =
                    found.into_iter().find(|v| matches!(v.claim, Claim::RegularTwistMerges | Claim::Property(7)))
                {
                    return Err(format!("{name}: {:?} on e{e}: {}", v.claim, v.detail));
                }
                twists += 1;
            }
            embeddings += 1;
        }
    }
    Ok(format!("{twists} regular twists over {embeddings} embeddings (merge and singular delta exact)"))
}

fn local_switch() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let graphs = sweep_graphs(&mut rng);
    let mut pairs = 0;
    while pairs < 200 {
        for (name, g) in &graphs {
            let emb = random_embedding(g, &mut rng);
            let v = rng.gen_range(0..g.n());
            let a = trace_faces(g, &local_rotation_flip(&emb, v).unwrap()).face_multiset();
            let b = trace_faces(g, &triple_twist(g, &emb, v).unwrap()).face_multiset();
            if a != b {
                return Err(format!("{name}: vertex {v} flip and triple twist differ"));
            }
            pairs += 1;
        }
    }
    for name in ["theta", "k4", "k33"] {
        let report = verify_signature_coverage(&named_graph(name).unwrap(), CAP).map_err(|e| e.to_string())?;
        if !report.equal {
            return Err(format!(
                "{name}: {} face sets by signature, {} overall",
                report.distinct_face_sets_signature, report.distinct_face_sets_full
            ));
        }
    }
    Ok(format!("{pairs} pairs; coverage equal on theta, k4, k33"))
}

fn singular_twists() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let graphs = sweep_graphs(&mut rng);
    let (mut embeddings, mut minus, mut plus) = (0, 0, 0);
    while embeddings < 500 {
        for (name, g) in &graphs {
            let emb = random_embedding(g, &mut rng);
            let fd = build_diagram(g, &trace_faces(g, &emb));
            for e in 0..g.m() {
                let sign = match fd.sign_of_edge(e) {
                    Some(s) => s,
                    None => continue,
                };
                if sign == Sign::Plus && crossing_partners(&fd, e).is_empty() {
                    continue;
                }
                let found = check_singular_twist(g, &emb, &fd, e).map_err(|err| err.to_string())?;
                if let Some(v) = found.first() {
                    return Err(format!("{name}: {:?}: {}", v.claim, v.detail));
                }
                match sign {
                    Sign::Minus => minus += 1,
                    Sign::Plus => plus += 1,
                }
            }
            embeddings += 1;
        }
    }
    if minus == 0 || plus == 0 {
        return Err(format!("vacuous sweep: {minus} - twists, {plus} + twists"));
    }
    Ok(format!("{minus} - twists and {plus} crossing + twists over {embeddings} embeddings"))
}

fn structural_properties() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let graphs = sweep_graphs(&mut rng);
    let mut embeddings = 0;
    let mut twist_checks = 0;
    while embeddings < 1000 {
        for (name, g) in &graphs {
            let emb = random_embedding(g, &mut rng);
            let fs = trace_faces(g, &emb);
            let fd = build_diagram(g, &fs);
            for k in 1..=5u8 {
                let found = check_structural_property(&fd, g, k).map_err(|e| e.to_string())?;
                if let Some(v) = found.first() {
                    return Err(format!("{name}: property {k} falsified: {}", v.detail));
                }
            }
            for (e, class) in classify_edges(&fs).into_iter().enumerate() {
                if class != EdgeClass::Regular {
                    continue;
                }
                let found = check_regular_twist(g, &emb, &fs, e).map_err(|err| err.to_string())?;
                if let Some(v) = found.iter().find(|v| matches!(v.claim, Claim::Property(8 | 9))) {
                    return Err(format!("{name}: {:?} falsified on e{e}: {}", v.claim, v.detail));
                }
                twist_checks += 1;
            }
            embeddings += 1;
        }
    }
    Ok(format!("properties 1-5, 8, 9 hold on {embeddings} embeddings ({twist_checks} twist checks)"))
}

fn oracle_exactness() -> Outcome {
    let start = Instant::now();
    let cases = [("k4", Space::Full, 1024u64), ("k33", Space::Full, 32768), ("petersen", Space::SignaturesOnly, 32768)];
    let mut notes = Vec::new();
    for (name, space, configs) in cases {
        let g = named_graph(name).unwrap();
        let s = summarize(&g, name, space, CAP, 4).map_err(|e| e.to_string())?;
        if s.configurations != configs {
            return Err(format!("{name}: {} configurations, expected {configs}", s.configurations));
        }
        if s.min_singular != 0 {
            return Err(format!("{name}: min singular {}", s.min_singular));
        }
        if !is_circular(&trace_faces(&g, &s.witness)) {
            return Err(format!("{name}: witness {} is not circular", s.witness_index));
        }
        if name == "petersen" && (s.witness_faces != 6 || s.witness_euler_characteristic != 1) {
            return Err(format!(
                "petersen witness has {} faces, chi = {}",
                s.witness_faces, s.witness_euler_characteristic
            ));
        }
        notes.push(format!("{name} min 0 ({} faces)", s.witness_faces));
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!("{} in {:?}", notes.join(", "), start.elapsed()))
}

fn minimum_without_crossings() -> Outcome {
    let mut notes = Vec::new();
    for name in ["theta", "k4", "k33"] {
        let report = verify_property6(&named_graph(name).unwrap(), CAP).map_err(|e| e.to_string())?;
        if let Some((i, pairs)) = report.violations.first() {
            return Err(format!("{name}: minimum configuration {i} has crossings {pairs:?}"));
        }
        notes.push(format!("{name} {} minima", report.minimum_embeddings_checked));
    }
    Ok(notes.join(", "))
}

fn greedy() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let graphs = sweep_graphs(&mut rng);
    let mut runs = 0;
    let mut bounded = 0;
    while runs < 500 {
        for (name, g) in &graphs {
            let emb = random_embedding(g, &mut rng);
            let result = catch_unwind(AssertUnwindSafe(|| greedy_reduce(g, &emb)));
            let (out, seq) = result.map_err(|_| format!("{name}: greedy step broke its own invariant"))?;
            let fd = build_diagram(g, &trace_faces(g, &out));
            if fd.sign_counts().1 != 0 {
                return Err(format!("{name}: {} - links remain", fd.sign_counts().1));
            }
            if let Some(s) = seq.steps.iter().find(|s| s.after.bad > s.before.bad) {
                return Err(format!("{name}: twist of e{} raised + count {} -> {}", s.edge, s.before.bad, s.after.bad));
            }
            if seq.final_counts.singular() > seq.initial_counts.bad {
                return Err(format!(
                    "{name}: final singular {} exceeds initial + count {}",
                    seq.final_counts.singular(),
                    seq.initial_counts.bad
                ));
            }
            if 3 * seq.initial_counts.bad <= g.m() {
                bounded += 1;
            }
            runs += 1;
        }
    }
    Ok(format!("{runs} runs; {bounded} started within the m/3 + link bound"))
}

fn matching_construction() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut graphs: Vec<(String, CubicGraph)> = catalog().into_iter().map(|(n, g)| (n.to_string(), g)).collect();
    for i in 0..50 {
        let n = 4 + 2 * (i % 7);
        graphs.push((format!("random{n}#{i}"), random_cubic(n, &mut rng).unwrap()));
    }
    for (name, g) in &graphs {
        let (emb, matching) = matching_bound_embedding(g).map_err(|e| format!("{name}: {e}"))?;
        let fs = trace_faces(g, &emb);
        let classes = classify_edges(&fs);
        for (e, class) in classes.iter().enumerate() {
            if class.is_singular() && !matching.contains(e) {
                return Err(format!("{name}: singular edge {e} outside the matching"));
            }
            if !matching.contains(e) && *class != EdgeClass::Regular {
                return Err(format!("{name}: 2-factor edge {e} is {class:?}"));
            }
        }
        let walks: Vec<Vec<usize>> = fs
            .walks
            .iter()
            .map(|w| {
                let mut v: Vec<usize> = w.edges().collect();
                v.sort_unstable();
                v
            })
            .collect();
        for c in two_factor_cycles(g, &matching).map_err(|e| e.to_string())? {
            let mut edges = c.edges.clone();
            edges.sort_unstable();
            if !walks.contains(&edges) {
                return Err(format!("{name}: 2-factor cycle {:?} is not a facial walk", c.edges));
            }
        }
        if 3 * singular_count(&fs) > g.m() {
            return Err(format!("{name}: {} singular edges, m = {}", singular_count(&fs), g.m()));
        }
    }
    Ok(format!("{} graphs", graphs.len()))
}

fn monte_carlo() -> Outcome {
    let start = Instant::now();
    let g = named_graph("k4").unwrap();
    let report = monte_carlo_classes(&g, "k4", 100_000, 10, 4);
    if report.partition_failures != 0 {
        return Err(format!("{} samples did not partition m", report.partition_failures));
    }
    let exact = exact_expected_classes(&g, CAP).map_err(|e| e.to_string())?;
    let se = report.std_error().as_array();
    let mean = report.mean.as_array();
    let names = ["bad", "good", "regular"];
    for (k, want) in exact.as_f64().into_iter().enumerate() {
        if (mean[k] - want).abs() > 3.0 * se[k] {
            return Err(format!("{}: mean {} vs exact {want}, se {}", names[k], mean[k], se[k]));
        }
    }
    within(Duration::from_secs(30), start)?;
    let d = exact.deviation;
    Ok(format!(
        "means {:.4}/{:.4}/{:.4}; exact minus m/3: bad {}, good {}, regular {}",
        mean[0], mean[1], mean[2], d[0], d[1], d[2]
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("face tracing soundness", face_tracing),
        ("regular twist merges faces", regular_twists),
        ("local rotation flip equals triple twist", local_switch),
        ("singular link twists", singular_twists),
        ("structural diagram properties", structural_properties),
        ("oracle exactness", oracle_exactness),
        ("minimum embeddings have no crossings", minimum_without_crossings),
        ("greedy reduction", greedy),
        ("matching construction", matching_construction),
        ("monte carlo consistency", monte_carlo),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(run).unwrap_or_else(|_| Err("panicked".into()));
        match outcome {
            Ok(note) => println!("PASS {:>2} {name}: {note}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
