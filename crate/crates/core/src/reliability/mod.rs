//! Exact two-terminal reliability.
//!
//! `trel` computes the probability polynomial that the terminals are joined
//! when every edge works independently with probability `p`. The engine is
//! exact end to end: it prunes edges that cannot lie on any terminal path
//! (block-cut-tree analysis), bundles parallel edges and contracts series
//! chains with per-edge weight polynomials, and falls back to memoized
//! deletion-contraction on a branching edge at the terminal `s`.
//!
//! The module also provides the closed family forms, gadget composition,
//! fixed-point classification at the origin, the root-lifting construction
//! for bundles, and the constructive search for theta roots near a target
//! point of the punctured unit disk (in [`density`], re-exported here).

mod density;

pub use density::{find_root_near_disk0, theta_bundle_residual, DensityError, DiskRootHit};

use crate::multigraph::{cut, FamilySpec, GraphError, Multigraph, TerminalPair};
use crate::polynomial::{FForm, Poly};
use crate::{C64, Q};
use num_traits::{One, Zero};
use std::collections::{BTreeMap, BTreeSet, HashMap};

/// Errors from reliability-level operations.
#[derive(Clone, Debug, PartialEq, thiserror::Error)]
pub enum RelError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("origin is not a fixed point: f(0) = {0}")]
    OriginNotFixed(String),
    #[error("multiplier a1 = {0} is not a nonnegative integer; input is not a reliability polynomial")]
    UnexpectedMultiplier(String),
    #[error("brute force is limited to 20 edges, got {0}")]
    BruteForceTooLarge(usize),
}

/// Reusable memo for the deletion-contraction engine, keyed on the
/// canonical (weight-aware) structure of reduced subproblems. Behaves as a
/// pure function table: a hit always returns exactly the polynomial the
/// engine would recompute.
#[derive(Clone, Debug, Default)]
pub struct RelCache {
    map: HashMap<String, Poly>,
}

impl RelCache {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&Poly> {
        self.map.get(key)
    }

    pub fn insert(&mut self, key: String, value: Poly) {
        self.map.insert(key, value);
    }

    pub fn iter(&self) -> impl Iterator<Item = (&String, &Poly)> {
        self.map.iter()
    }
}

#[derive(Clone)]
struct WEdge {
    u: usize,
    v: usize,
    w: Poly,
}

/// Two-terminal reliability polynomial of `g`, exactly.
pub fn trel(g: &Multigraph, tp: &TerminalPair) -> Result<Poly, GraphError> {
    trel_cached(g, tp, &mut RelCache::new())
}

/// [`trel`] with an external memo that persists across calls (and can be
/// serialized by callers). Safe to reuse across different graphs.
pub fn trel_cached(
    g: &Multigraph,
    tp: &TerminalPair,
    cache: &mut RelCache,
) -> Result<Poly, GraphError> {
    for x in [&tp.s, &tp.t] {
        if !g.has_vertex(x) {
            return Err(GraphError::UnknownVertex(x.clone()));
        }
    }
    let (names, endpoints) = g.index_view();
    let s = names.binary_search(&&tp.s).expect("terminal present");
    let t = names.binary_search(&&tp.t).expect("terminal present");
    let edges: Vec<WEdge> = endpoints
        .iter()
        .map(|&(u, v)| WEdge {
            u,
            v,
            w: Poly::var(),
        })
        .collect();
    Ok(rel(edges, s, t, cache))
}

/// Compact vertex indices to 0..n (terminals included even if isolated).
fn compact(edges: &mut [WEdge], s: &mut usize, t: &mut usize) -> usize {
    let mut verts: BTreeSet<usize> = BTreeSet::new();
    verts.insert(*s);
    verts.insert(*t);
    for e in edges.iter() {
        verts.insert(e.u);
        verts.insert(e.v);
    }
    let remap: BTreeMap<usize, usize> = verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    for e in edges.iter_mut() {
        e.u = remap[&e.u];
        e.v = remap[&e.v];
    }
    *s = remap[s];
    *t = remap[t];
    verts.len()
}

fn poly_fingerprint(w: &Poly) -> String {
    let parts: Vec<String> = w
        .coeffs()
        .iter()
        .map(|c| {
            if c.denom().is_one() {
                c.numer().to_string()
            } else {
                format!("{}/{}", c.numer(), c.denom())
            }
        })
        .collect();
    parts.join(",")
}

/// Canonical key of the reduced weighted graph: BFS renaming from `s`
/// (neighbors in decreasing degree, then the connecting edge's weight
/// fingerprint, then old index), then the sorted renamed edge list with
/// weights. Parallel edges are already merged when this runs, so each
/// neighbor pair has one weight.
fn canonical_key(edges: &[WEdge], n: usize, s: usize, t: usize) -> String {
    let mut deg = vec![0usize; n];
    let mut adj: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
    for (idx, e) in edges.iter().enumerate() {
        deg[e.u] += 1;
        deg[e.v] += 1;
        adj[e.u].insert(e.v, idx);
        adj[e.v].insert(e.u, idx);
    }
    let wstr: Vec<String> = edges.iter().map(|e| poly_fingerprint(&e.w)).collect();
    let mut new_of = vec![usize::MAX; n];
    let mut order = Vec::with_capacity(n);
    let mut queue = std::collections::VecDeque::new();
    new_of[s] = 0;
    order.push(s);
    queue.push_back(s);
    while let Some(v) = queue.pop_front() {
        let mut nbrs: Vec<(usize, usize)> = adj[v].iter().map(|(&w, &e)| (w, e)).collect();
        nbrs.sort_by(|a, b| {
            (deg[b.0], &wstr[a.1], a.0).cmp(&(deg[a.0], &wstr[b.1], b.0))
        });
        for (w, _) in nbrs {
            if new_of[w] == usize::MAX {
                new_of[w] = order.len();
                order.push(w);
                queue.push_back(w);
            }
        }
    }
    // Everything is connected to s here (pruned), but stay defensive.
    for (v, slot) in new_of.iter_mut().enumerate() {
        if *slot == usize::MAX {
            *slot = order.len();
            order.push(v);
        }
    }
    let mut parts: Vec<String> = edges
        .iter()
        .enumerate()
        .map(|(idx, e)| {
            let (a, b) = (new_of[e.u], new_of[e.v]);
            format!("{}-{}:{}", a.min(b), a.max(b), wstr[idx])
        })
        .collect();
    parts.sort_unstable();
    format!("t{};{}", new_of[t], parts.join(";"))
}

/// The weighted reliability recursion. Vertex indices may be arbitrary;
/// `s != t` is assumed.
fn rel(mut edges: Vec<WEdge>, mut s: usize, mut t: usize, cache: &mut RelCache) -> Poly {
    let n = compact(&mut edges, &mut s, &mut t);

    // Prune to the blocks on the s-t path; None means disconnected.
    let pairs: Vec<(usize, usize)> = edges.iter().map(|e| (e.u, e.v)).collect();
    let Some(mask) = cut::relevant_edge_mask(n, &pairs, s, t) else {
        return Poly::zero();
    };
    let mut kept: Vec<WEdge> = edges
        .into_iter()
        .zip(&mask)
        .filter(|(_, keep)| **keep)
        .map(|(e, _)| e)
        .collect();
    let n = compact(&mut kept, &mut s, &mut t);
    let mut edges = kept;

    // Series/parallel reduction to a fixpoint.
    loop {
        let mut changed = false;

        // Parallel: merge every group sharing an endpoint pair.
        let mut groups: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
        for (idx, e) in edges.iter().enumerate() {
            groups
                .entry((e.u.min(e.v), e.u.max(e.v)))
                .or_default()
                .push(idx);
        }
        if groups.values().any(|g| g.len() > 1) {
            changed = true;
            let mut merged: Vec<WEdge> = Vec::with_capacity(groups.len());
            let mut seen: BTreeSet<(usize, usize)> = BTreeSet::new();
            for e in &edges {
                let key = (e.u.min(e.v), e.u.max(e.v));
                if !seen.insert(key) {
                    continue;
                }
                let members = &groups[&key];
                let w = if members.len() == 1 {
                    edges[members[0]].w.clone()
                } else {
                    // 1 - prod (1 - w_i)
                    let mut miss = Poly::one();
                    for &m in members {
                        miss = &miss * &(&Poly::one() - &edges[m].w);
                    }
                    &Poly::one() - &miss
                };
                merged.push(WEdge { u: e.u, v: e.v, w });
            }
            edges = merged;
        }

        // Series: contract through one non-terminal degree-2 vertex.
        let mut deg = vec![0usize; n];
        for e in &edges {
            deg[e.u] += 1;
            deg[e.v] += 1;
        }
        let mut reduced_at = None;
        for (v, &d) in deg.iter().enumerate() {
            if v == s || v == t || d != 2 {
                continue;
            }
            let inc: Vec<usize> = edges
                .iter()
                .enumerate()
                .filter(|(_, e)| e.u == v || e.v == v)
                .map(|(i, _)| i)
                .collect();
            let (i, j) = (inc[0], inc[1]);
            let a = if edges[i].u == v { edges[i].v } else { edges[i].u };
            let b = if edges[j].u == v { edges[j].v } else { edges[j].u };
            if a == b {
                // Two parallel edges at v were already merged, so this is a
                // degree-2 vertex whose both edges go to the same neighbor,
                // impossible after pruning; skip defensively.
                continue;
            }
            let w = &edges[i].w * &edges[j].w;
            let mut next: Vec<WEdge> = Vec::with_capacity(edges.len() - 1);
            for (idx, e) in edges.iter().enumerate() {
                if idx != i && idx != j {
                    next.push(e.clone());
                }
            }
            next.push(WEdge { u: a, v: b, w });
            reduced_at = Some(next);
            break;
        }
        if let Some(next) = reduced_at {
            edges = next;
            changed = true;
        }

        if !changed {
            break;
        }
    }

    if edges.len() == 1 {
        debug_assert!(
            (edges[0].u == s && edges[0].v == t) || (edges[0].u == t && edges[0].v == s),
            "a fully reduced connected graph is a single terminal edge"
        );
        return edges[0].w.clone();
    }

    let key = canonical_key(&edges, n, s, t);
    if let Some(hit) = cache.get(&key) {
        return hit.clone();
    }

    // Branch on an edge at s whose other endpoint has maximal degree.
    let mut deg = vec![0usize; n];
    for e in &edges {
        deg[e.u] += 1;
        deg[e.v] += 1;
    }
    let (pick, _) = edges
        .iter()
        .enumerate()
        .filter(|(_, e)| e.u == s || e.v == s)
        .map(|(i, e)| (i, deg[if e.u == s { e.v } else { e.u }]))
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .expect("s has incident edges in a pruned connected graph");
    let e = edges[pick].clone();
    let x = if e.u == s { e.v } else { e.u };
    let w = e.w;

    let deleted: Vec<WEdge> = edges
        .iter()
        .enumerate()
        .filter(|(i, _)| *i != pick)
        .map(|(_, e)| e.clone())
        .collect();
    let r_del = rel(deleted.clone(), s, t, cache);

    let r_con = if x == t {
        // terminal merge: the contracted graph is surely connected
        Poly::one()
    } else {
        let contracted: Vec<WEdge> = deleted
            .iter()
            .map(|f| {
                let mut g = f.clone();
                if g.u == x {
                    g.u = s;
                }
                if g.v == x {
                    g.v = s;
                }
                g
            })
            .filter(|g| g.u != g.v)
            .collect();
        rel(contracted, s, t, cache)
    };

    let result = &(&w * &r_con) + &(&(&Poly::one() - &w) * &r_del);
    cache.insert(key, result.clone());
    result
}

/// Closed-form reliability of a parameterized family; always equals
/// [`trel`] on the built graph.
pub fn trel_family(spec: &FamilySpec) -> Result<Poly, GraphError> {
    spec.validate()?;
    Ok(match *spec {
        FamilySpec::Cycle { n, k } => {
            // p^k + p^(n-k) - p^n
            let mut f = &Poly::monomial(Q::one(), k as usize)
                + &Poly::monomial(Q::one(), (n - k) as usize);
            f = &f - &Poly::monomial(Q::one(), n as usize);
            f
        }
        FamilySpec::Theta { l, k } => {
            // 1 - (1 - p^l)^k
            let miss = &Poly::one() - &Poly::monomial(Q::one(), l as usize);
            &Poly::one() - &miss.pow(k)
        }
        FamilySpec::Bundle { m } => {
            let miss = Poly::from_i64(&[1, -1]);
            &Poly::one() - &miss.pow(m)
        }
        FamilySpec::Path { len } => Poly::monomial(Q::one(), len as usize),
    })
}

/// Gadget composition: the reliability of `g` with every edge replaced by
/// the gadget `h` is the composition of the two reliability polynomials.
pub fn compose_gadget(
    g: &Multigraph,
    gtp: &TerminalPair,
    h: &Multigraph,
    htp: &TerminalPair,
) -> Result<Poly, GraphError> {
    let fg = trel(g, gtp)?;
    let fh = trel(h, htp)?;
    Ok(fg.compose(&fh))
}

/// Reference implementation: sum over all `2^m` edge subsets, counting the
/// subsets of each size that connect the terminals (the F-form definition).
/// Exact, and deliberately independent of the engine's reductions.
pub fn trel_brute_force(g: &Multigraph, tp: &TerminalPair) -> Result<Poly, RelError> {
    for x in [&tp.s, &tp.t] {
        if !g.has_vertex(x) {
            return Err(RelError::Graph(GraphError::UnknownVertex(x.clone())));
        }
    }
    let m = g.edge_count();
    if m > 20 {
        return Err(RelError::BruteForceTooLarge(m));
    }
    let (names, endpoints) = g.index_view();
    let n = names.len();
    let s = names.binary_search(&&tp.s).expect("terminal present");
    let t = names.binary_search(&&tp.t).expect("terminal present");

    let mut counts = vec![Q::zero(); m + 1];
    for subset in 0u32..(1u32 << m) {
        // union-find over the working edges
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        let mut size = 0u32;
        for (i, &(u, v)) in endpoints.iter().enumerate() {
            if subset >> i & 1 == 1 {
                size += 1;
                let (ru, rv) = (find(&mut parent, u), find(&mut parent, v));
                parent[ru] = rv;
            }
        }
        if find(&mut parent, s) == find(&mut parent, t) {
            counts[size as usize] += Q::one();
        }
    }
    let ff = FForm::from_counts(m as u32, counts).expect("length matches");
    Ok(ff.to_poly())
}

/// Fixed-point type of the origin under a reliability polynomial.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OriginClass {
    /// `a1 = 0`: no parallel terminal edge; `f'(0) = 0`.
    Superattracting,
    /// `a1 = 1`: exactly one terminal edge; `f'(0) = 1`.
    RationallyIndifferent,
    /// `a1 > 1`: parallel terminal edges; `|f'(0)| > 1`.
    Repelling,
}

#[derive(Clone, Debug, PartialEq)]
pub struct OriginReport {
    /// The multiplier `f'(0) = a1` (the number of parallel `s`-`t` edges).
    pub multiplier: Q,
    pub class: OriginClass,
}

/// Classify the origin as a fixed point of `f`; requires `f(0) = 0`,
/// and a multiplier that is a nonnegative integer (as it always is for a
/// reliability polynomial, where it counts the parallel terminal edges).
pub fn classify_origin(f: &Poly) -> Result<OriginReport, RelError> {
    let at0 = f.coeff(0);
    if !at0.is_zero() {
        return Err(RelError::OriginNotFixed(at0.to_string()));
    }
    let a1 = f.coeff(1);
    let class = if a1.is_zero() {
        OriginClass::Superattracting
    } else if a1.is_one() {
        OriginClass::RationallyIndifferent
    } else if a1.denom().is_one() && a1 > Q::one() {
        OriginClass::Repelling
    } else {
        return Err(RelError::UnexpectedMultiplier(a1.to_string()));
    };
    Ok(OriginReport {
        multiplier: a1,
        class,
    })
}

/// The bundle root lift: if `r` is a two-terminal root of some graph, the
/// graph with every edge replaced by an `m`-bundle has roots
/// `{1 - z : z^m = 1 - r}`. Returned in branch order (principal root first,
/// then counterclockwise).
pub fn lift_roots_disk1(r: C64, m: u32) -> Vec<C64> {
    let one = C64::new(1.0, 0.0);
    let base = one - r;
    let mut out = Vec::with_capacity(m as usize);
    if m == 0 {
        return out;
    }
    let rad = base.norm().powf(1.0 / m as f64);
    let ang = base.arg() / m as f64;
    for b in 0..m {
        let theta = ang + 2.0 * std::f64::consts::PI * b as f64 / m as f64;
        let zeta = C64::from_polar(rad, theta);
        let lifted = one - zeta;
        debug_assert!(
            (one - (one - lifted).powu(m) - (one - base)).norm() < 1e-9,
            "lifted root must satisfy the bundle relation"
        );
        out.push(lifted);
    }
    out
}
