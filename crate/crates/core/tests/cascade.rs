use cubic_twist::diagram::{build_diagram, crossing_pairs};
use cubic_twist::faces::singular_count;
use cubic_twist::reduce::plus_cascade;
use cubic_twist::{named_graph, random_embedding, trace_faces, CubicGraph, Embedding, Sign};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// First seeded embedding with no `-` links and at least one crossing pair
/// of `+` links.
fn crossing_plus_start(g: &CubicGraph, rng: &mut ChaCha8Rng) -> Embedding {
    for _ in 0..100_000 {
        let emb = random_embedding(g, rng);
        let fd = build_diagram(g, &trace_faces(g, &emb));
        if fd.sign_counts().1 != 0 {
            continue;
        }
        let plus_pair = crossing_pairs(&fd)
            .iter()
            .any(|&(a, b)| fd.sign_of_edge(a) == Some(Sign::Plus) && fd.sign_of_edge(b) == Some(Sign::Plus));
        if plus_pair {
            return emb;
        }
    }
    panic!("no start with crossing + links found");
}

#[test]
fn one_cascade_round_removes_two_singular_edges() {
    for name in ["k33", "petersen"] {
        let g = named_graph(name).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut found = 0;
        while found < 20 {
            let start = crossing_plus_start(&g, &mut rng);
            let before = singular_count(&trace_faces(&g, &start));
            let (out, seq) = plus_cascade(&g, &start, 2, &mut rng);
            assert_eq!(seq.steps.len(), 2, "{name}: one + twist then one - twist");
            let after = singular_count(&trace_faces(&g, &out));
            assert!(after + 2 <= before, "{name}: singular {before} -> {after}");
            found += 1;
        }
    }
}

#[test]
fn cascade_never_raises_singular_count() {
    let g = named_graph("petersen").unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let start = random_embedding(&g, &mut rng);
        let (_, seq) = plus_cascade(&g, &start, 200, &mut rng);
        for s in &seq.steps {
            assert!(s.after.singular() <= s.before.singular());
        }
        assert!(seq.steps.len() <= 200);
    }
}
