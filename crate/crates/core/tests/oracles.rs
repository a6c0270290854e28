use nonrep::generators::{gen_cycle, gen_path, gen_random_tree, gen_triangulation};
use nonrep::graph::Graph;
use nonrep::verify::{exact_pi, find_repetitive_path, naive_find_repetitive_path};

fn complete(n: usize) -> Graph {
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect();
    Graph::from_edges(n, &edges).unwrap()
}

/// Smallest k such that some colouring in `0..k` has no repetitive path,
/// by trying every colouring with the naive path enumerator.
fn naive_pi(g: &Graph) -> usize {
    let n = g.n();
    for k in 1..=n {
        let mut col = vec![0usize; n];
        loop {
            if naive_find_repetitive_path(g, &col, None).is_none() {
                return k;
            }
            let mut i = 0;
            while i < n && col[i] + 1 == k {
                col[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
            col[i] += 1;
        }
    }
    n
}

#[test]
fn exact_pi_matches_naive_enumeration() {
    let mut graphs: Vec<(String, Graph)> = Vec::new();
    for n in 1..=6 {
        graphs.push((format!("P{n}"), gen_path(n).unwrap()));
        graphs.push((format!("K{n}"), complete(n)));
    }
    for n in 3..=6 {
        graphs.push((format!("C{n}"), gen_cycle(n).unwrap()));
    }
    for seed in 0..4 {
        graphs.push((format!("tree{seed}"), gen_random_tree(6, seed).unwrap()));
        graphs.push((format!("tri{seed}"), gen_triangulation(6, seed, 6).unwrap().graph().clone()));
    }
    for (name, g) in &graphs {
        assert_eq!(exact_pi(g, None).unwrap(), naive_pi(g), "{name}");
    }
}

#[test]
fn pair_search_agrees_with_naive_enumerator() {
    // every 3-colouring of a few small graphs
    let graphs = [gen_cycle(6).unwrap(), gen_random_tree(7, 3).unwrap(), gen_triangulation(6, 2, 6).unwrap().graph().clone()];
    for g in &graphs {
        let n = g.n();
        for code in 0..3usize.pow(n as u32) {
            let col: Vec<usize> = (0..n).map(|i| code / 3usize.pow(i as u32) % 3).collect();
            let fast = find_repetitive_path(g, &col, None).unwrap().is_some();
            assert_eq!(fast, naive_find_repetitive_path(g, &col, None).is_some(), "{col:?}");
        }
    }
}

#[test]
fn known_values() {
    for n in 4..=10 {
        assert_eq!(exact_pi(&gen_path(n).unwrap(), None).unwrap(), 3, "P{n}");
    }
    assert_eq!(exact_pi(&gen_cycle(5).unwrap(), None).unwrap(), 4);
    for n in 1..=6 {
        assert_eq!(exact_pi(&complete(n), None).unwrap(), n);
    }
}
