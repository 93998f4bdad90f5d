//! Exhaustive generation of connected simple graphs up to isomorphism.
//!
//! Graphs are encoded as bitmasks over the column-ordered upper triangle
//! (the same slot order the graph6 format uses). A canonical representative
//! is the minimum mask over all vertex permutations; keeping only masks that
//! equal their own canonical form enumerates each isomorphism class once.

use crate::{usage, CliError};

fn slot(i: usize, j: usize) -> usize {
    debug_assert!(i < j);
    j * (j - 1) / 2 + i
}

fn permute_mask(mask: u32, n: usize, perm: &[usize]) -> u32 {
    let mut out = 0u32;
    for j in 1..n {
        for i in 0..j {
            if mask >> slot(i, j) & 1 == 1 {
                let (a, b) = (perm[i].min(perm[j]), perm[i].max(perm[j]));
                out |= 1 << slot(a, b);
            }
        }
    }
    out
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..n).collect();
    fn heap(k: usize, items: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if k <= 1 {
            out.push(items.clone());
            return;
        }
        for i in 0..k {
            heap(k - 1, items, out);
            if k.is_multiple_of(2) {
                items.swap(i, k - 1);
            } else {
                items.swap(0, k - 1);
            }
        }
    }
    heap(n, &mut items, &mut out);
    out
}

fn is_connected(mask: u32, n: usize) -> bool {
    if n == 0 {
        return false;
    }
    let mut parent: Vec<usize> = (0..n).collect();
    fn find(parent: &mut Vec<usize>, x: usize) -> usize {
        if parent[x] != x {
            let root = find(parent, parent[x]);
            parent[x] = root;
        }
        parent[x]
    }
    for j in 1..n {
        for i in 0..j {
            if mask >> slot(i, j) & 1 == 1 {
                let (a, b) = (find(&mut parent, i), find(&mut parent, j));
                parent[a] = b;
            }
        }
    }
    let root = find(&mut parent, 0);
    (1..n).all(|v| find(&mut parent, v) == root)
}

/// All connected simple graphs on exactly `n` labeled-as-0..n-1 vertices,
/// one per isomorphism class, as edge lists. Ordered by mask value.
pub fn connected_graphs(n: usize) -> Result<Vec<Vec<(usize, usize)>>, CliError> {
    if !(2..=7).contains(&n) {
        return Err(usage(format!(
            "generated sweeps support orders 2 through 7, got {n}"
        )));
    }
    let nbits = n * (n - 1) / 2;
    let perms = permutations(n);
    let mut out = Vec::new();
    for mask in 0u32..1 << nbits {
        if !is_connected(mask, n) {
            continue;
        }
        if perms.iter().any(|p| permute_mask(mask, n, p) < mask) {
            continue;
        }
        let mut edges = Vec::new();
        for j in 1..n {
            for i in 0..j {
                if mask >> slot(i, j) & 1 == 1 {
                    edges.push((i, j));
                }
            }
        }
        out.push(edges);
    }
    Ok(out)
}
