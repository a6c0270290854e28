use std::collections::BTreeSet;

use nonrep::embedding::{check_embedding, is_triangulation, trace_faces, triangulate, RotationSystem};
use nonrep::engine::{colour_planar, PlanarOptions};
use nonrep::generators::{gen_random_tree, gen_tree_cycles, gen_triangulation};
use nonrep::graph::Graph;
use nonrep::layering::{bfs_layering, monotone_path};
use nonrep::verify::{exact_pi, find_repetitive_path, verify_layering};
use nonrep::words::{generate_walk_certified, is_squarefree, is_walk_nonrepetitive, thue_word};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn edge_set(g: &Graph) -> BTreeSet<(usize, usize)> {
    g.edges().into_iter().collect()
}

/// Deletes up to `count` random edges off the outer triangle while keeping
/// the graph connected, then re-traces the outer face from dart 0 -> 2.
fn thin_out(t: &RotationSystem, count: usize, seed: u64) -> RotationSystem {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = t.graph().clone();
    let mut rot = t.rotations().to_vec();
    let outer: BTreeSet<usize> = [0, 1, 2].into();
    for _ in 0..count {
        let edges = g.edges();
        let (a, b) = edges[rng.gen_range(0..edges.len())];
        if outer.contains(&a) && outer.contains(&b) {
            continue;
        }
        g.remove_edge(a, b);
        if !g.is_connected() {
            g.add_edge(a, b).unwrap();
            continue;
        }
        rot[a].retain(|&x| x != b);
        rot[b].retain(|&x| x != a);
    }
    let draft = RotationSystem::from_parts_unchecked(g, rot.clone(), Vec::new());
    let outer_face = trace_faces(&draft)
        .unwrap()
        .into_iter()
        .find(|f| (0..f.len()).any(|i| f[i] == 0 && f[(i + 1) % f.len()] == 2))
        .unwrap();
    RotationSystem::from_rotation(rot, outer_face).unwrap()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn bfs_edges_span_at_most_one_layer(n in 1usize..80, extra in 0usize..60, seed in any::<u64>(), root in any::<usize>()) {
        let mut g = gen_random_tree(n, seed).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x9e37);
        for _ in 0..extra {
            let (a, b) = (rng.gen_range(0..n), rng.gen_range(0..n));
            if a != b && !g.has_edge(a, b) {
                g.add_edge(a, b).unwrap();
            }
        }
        let lay = bfs_layering(&g, root % n).unwrap();
        prop_assert_eq!(verify_layering(&g, &lay), Ok(()));
        for (a, b) in g.edges() {
            prop_assert!(lay.layer(a).abs_diff(lay.layer(b)) <= 1);
        }
    }

    #[test]
    fn triangulate_restores_a_triangulation(n in 4usize..50, seed in any::<u64>(), cut in 0usize..40) {
        let t = gen_triangulation(n, seed, n).unwrap();
        let thin = thin_out(&t, cut, seed);
        let tri = triangulate(&thin).unwrap();
        prop_assert!(is_triangulation(&tri));
        prop_assert_eq!(check_embedding(&tri), Ok(()));
        prop_assert_eq!(tri.graph().m(), 3 * n - 6);
        prop_assert!(trace_faces(&tri).unwrap().iter().all(|f| f.len() == 3));
        prop_assert!(edge_set(thin.graph()).is_subset(&edge_set(tri.graph())));
    }

    #[test]
    fn faces_satisfy_euler(n in 3usize..60, seed in any::<u64>(), cut in 0usize..30) {
        for e in [thin_out(&gen_triangulation(n, seed, n).unwrap(), cut, seed), gen_tree_cycles(&gen_random_tree(n, seed).unwrap(), 0).unwrap()] {
            let faces = trace_faces(&e).unwrap();
            let m = e.graph().m();
            prop_assert_eq!(faces.iter().map(Vec::len).sum::<usize>(), 2 * m);
            prop_assert_eq!(faces.len() + n, 2 + m);
        }
    }

    #[test]
    fn monotone_paths_descend_and_agree(n in 4usize..60, seed in any::<u64>(), picks in proptest::collection::vec(any::<usize>(), 3)) {
        let t = gen_triangulation(n, seed, n).unwrap();
        let g = t.graph();
        let lay = bfs_layering(g, picks[0] % n).unwrap();
        let walk_ok = |p: &[usize]| {
            p.windows(2).all(|w| g.has_edge(w[0], w[1]) && lay.layer(w[0]) == lay.layer(w[1]) + 1)
                && lay.layer(*p.last().unwrap()) == 0
        };
        let u_top = picks[1] % n;
        let mut u_arm = monotone_path(&lay, u_top, None);
        prop_assert!(walk_ok(&u_arm));
        u_arm.reverse();
        let v_arm = u_arm.clone();
        let w = picks[2] % n;
        let z = monotone_path(&lay, w, Some((&u_arm, &v_arm)));
        prop_assert!(walk_ok(&z));
        prop_assert_eq!(z[0], w);
        // once the path meets an arm it stays on it
        if let Some(j) = z.iter().position(|&x| u_arm.get(lay.layer(x)) == Some(&x)) {
            for &x in &z[j..] {
                prop_assert_eq!(u_arm[lay.layer(x)], x);
            }
        }
    }

    #[test]
    fn walk_check_is_monotone_in_t(symbols in proptest::collection::vec(0usize..3, 1..40), t in 1usize..5) {
        if !is_walk_nonrepetitive(&symbols, t) {
            prop_assert!(!is_walk_nonrepetitive(&symbols, t + 1));
        }
    }

    #[test]
    fn planar_colouring_survives_vertex_deletion(n in 4usize..24, seed in any::<u64>(), keep in any::<u64>()) {
        let t = gen_triangulation(n, seed, n).unwrap();
        let run = colour_planar(&t, &PlanarOptions::default()).unwrap();
        let c = &run.colouring;
        let triples: BTreeSet<_> = (0..n).map(|v| (c.pattern[v], c.depth[v], c.label[v])).collect();
        prop_assert_eq!(triples.len(), c.flat.iter().collect::<BTreeSet<_>>().len());
        let kept: Vec<usize> = (0..n).filter(|&v| keep >> (v % 64) & 1 == 1).collect();
        let (sub, map) = t.graph().induced_subgraph(&kept).unwrap();
        let col: Vec<usize> = map.iter().map(|&v| c.flat[v]).collect();
        prop_assert_eq!(find_repetitive_path(&sub, &col, None).unwrap(), None);
    }
}

#[test]
fn thue_prefix_stability() {
    let long = thue_word(300);
    for n in 0..300 {
        assert_eq!(thue_word(n).symbols[..], long.symbols[..n]);
    }
}

#[test]
fn certified_sequences_have_no_short_squares() {
    for t_max in 1..=6 {
        let cert = generate_walk_certified(120, 4, t_max).unwrap();
        assert!(cert.verify());
        let s = &cert.sequence.symbols;
        assert!(s.windows(2).all(|w| w[0] != w[1]));
        // squares of half-length at most t_max are repetitive lazy walks
        for i in 0..s.len() {
            assert!(is_squarefree(&s[i..(i + 2 * t_max).min(s.len())]), "t_max {t_max} at {i}");
        }
    }
}

#[test]
fn exact_pi_is_monotone_under_subgraphs() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for seed in 0..12 {
        let n = rng.gen_range(4..9);
        let g = gen_triangulation(n, seed, n).unwrap();
        let full = exact_pi(g.graph(), None).unwrap();
        let mut sub = g.graph().clone();
        for (a, b) in g.graph().edges() {
            if rng.gen_bool(0.4) {
                sub.remove_edge(a, b);
            }
        }
        let part = exact_pi(&sub, None).unwrap();
        assert!(part <= full, "subgraph pi {part} > {full}");
        // every triangulation contains a triangle
        assert!(full >= 3);
    }
}
