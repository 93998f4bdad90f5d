//! Shared generators for the integration suites: deterministic exhaustive
//! enumeration of small connected multigraphs and seeded random ones.
#![allow(dead_code)]

use rand::Rng;
use relroots::multigraph::{Multigraph, TerminalPair};

/// Vertex names `v0..v{n-1}`.
pub fn names(n: usize) -> Vec<String> {
    (0..n).map(|i| format!("v{i}")).collect()
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let r = find(parent, parent[x]);
            parent[x] = r;
        }
        parent[x]
    }
    for &(u, v) in edges {
        let (a, b) = (find(&mut parent, u), find(&mut parent, v));
        parent[a] = b;
    }
    let root = find(&mut parent, 0);
    (1..n).all(|v| find(&mut parent, v) == root)
}

pub fn build(n: usize, edges: &[(usize, usize)], s: usize, t: usize) -> (Multigraph, TerminalPair) {
    let vs = names(n);
    let es: Vec<(String, String)> = edges
        .iter()
        .map(|&(u, v)| (vs[u].clone(), vs[v].clone()))
        .collect();
    Multigraph::from_edge_list(&vs, &es, &vs[s], &vs[t]).expect("valid test graph")
}

/// Every connected multigraph on exactly `n` labeled vertices with at most
/// `max_edges` edges, as index edge lists: one entry per multiset of vertex
/// pairs, in odometer order. Deterministic.
pub fn connected_multigraph_edge_lists(n: usize, max_edges: usize) -> Vec<Vec<(usize, usize)>> {
    let slots: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut mult = vec![0usize; slots.len()];
    let mut out = Vec::new();
    loop {
        let total: usize = mult.iter().sum();
        if total <= max_edges && total > 0 {
            let mut edges = Vec::with_capacity(total);
            for (slot, &m) in slots.iter().zip(&mult) {
                for _ in 0..m {
                    edges.push(*slot);
                }
            }
            if is_connected(n, &edges) {
                out.push(edges);
            }
        }
        // odometer over multiplicity vectors bounded by max_edges per slot
        let mut i = 0;
        loop {
            if i == mult.len() {
                return out;
            }
            mult[i] += 1;
            if mult.iter().sum::<usize>() <= max_edges {
                break;
            }
            mult[i] = 0;
            i += 1;
        }
    }
}

/// A random connected multigraph: a random spanning tree plus random extra
/// edges, up to `max_edges` total, on 2..=`max_n` vertices.
pub fn random_connected_multigraph<R: Rng>(
    rng: &mut R,
    max_n: usize,
    max_edges: usize,
) -> (usize, Vec<(usize, usize)>) {
    let n = rng.gen_range(2..=max_n);
    let mut edges = Vec::new();
    for v in 1..n {
        edges.push((rng.gen_range(0..v), v));
    }
    let extra = rng.gen_range(0..=(max_edges - edges.len()));
    for _ in 0..extra {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n - 1);
        let v = if v >= u { v + 1 } else { v };
        edges.push((u.min(v), u.max(v)));
    }
    (n, edges)
}
