//! Labeled multigraphs with a marked terminal pair.
//!
//! Vertices carry string labels; parallel edges are allowed and each edge
//! has a stable numeric id that survives unrelated mutations. Self-loops are
//! rejected at construction (they never affect two-terminal reliability).
//! All operations are pure: they return new graphs.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

/// Vertex label.
pub type VertexId = String;

/// An undirected edge between two distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: usize,
    pub u: VertexId,
    pub v: VertexId,
}

impl Edge {
    pub fn touches(&self, x: &str) -> bool {
        self.u == x || self.v == x
    }

    /// The endpoint opposite `x`, when `x` is an endpoint.
    pub fn other(&self, x: &str) -> Option<&VertexId> {
        if self.u == x {
            Some(&self.v)
        } else if self.v == x {
            Some(&self.u)
        } else {
            None
        }
    }
}

/// The marked source/target pair; always two distinct vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TerminalPair {
    pub s: VertexId,
    pub t: VertexId,
}

impl TerminalPair {
    pub fn new(s: impl Into<VertexId>, t: impl Into<VertexId>) -> Result<Self, GraphError> {
        let (s, t) = (s.into(), t.into());
        if s == t {
            return Err(GraphError::TerminalsCoincide(s));
        }
        Ok(TerminalPair { s, t })
    }
}

/// Errors from graph construction and structural operations.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum GraphError {
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown edge id {0}")]
    UnknownEdge(usize),
    #[error("self-loops are not supported (at vertex `{0}`)")]
    SelfLoop(String),
    #[error("terminals must be distinct (both are `{0}`)")]
    TerminalsCoincide(String),
    #[error("terminals `{s}` and `{t}` are not connected")]
    TerminalsDisconnected { s: String, t: String },
    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

/// Result of contracting an edge: the quotient graph, and either the merged
/// terminal vertex (when the contracted edge joined the two terminals) or
/// the surviving terminal pair.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Contraction {
    pub graph: Multigraph,
    pub terminals: ContractedTerminals,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ContractedTerminals {
    /// The contracted edge joined `s` to `t`; both now live at this vertex.
    Merged(VertexId),
    /// The terminals are still two distinct vertices.
    Pair(TerminalPair),
}

/// A finite undirected multigraph without self-loops.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    vertices: BTreeSet<VertexId>,
    edges: Vec<Edge>,
}

impl Multigraph {
    /// Build a graph (and its terminal pair) from explicit vertex and edge
    /// lists. Vertex ids must be unique, edge endpoints must exist and be
    /// distinct, and the terminals must be two distinct existing vertices.
    /// Edge ids are assigned 0..m in list order.
    pub fn from_edge_list<S, T, U>(
        vertices: &[S],
        edges: &[(T, U)],
        s: &str,
        t: &str,
    ) -> Result<(Multigraph, TerminalPair), GraphError>
    where
        S: AsRef<str>,
        T: AsRef<str>,
        U: AsRef<str>,
    {
        let mut vset = BTreeSet::new();
        for v in vertices {
            if !vset.insert(v.as_ref().to_string()) {
                return Err(GraphError::DuplicateVertex(v.as_ref().to_string()));
            }
        }
        let mut elist = Vec::with_capacity(edges.len());
        for (id, (u, v)) in edges.iter().enumerate() {
            let (u, v) = (u.as_ref(), v.as_ref());
            for x in [u, v] {
                if !vset.contains(x) {
                    return Err(GraphError::UnknownVertex(x.to_string()));
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u.to_string()));
            }
            elist.push(Edge {
                id,
                u: u.to_string(),
                v: v.to_string(),
            });
        }
        for x in [s, t] {
            if !vset.contains(x) {
                return Err(GraphError::UnknownVertex(x.to_string()));
            }
        }
        let tp = TerminalPair::new(s, t)?;
        Ok((
            Multigraph {
                vertices: vset,
                edges: elist,
            },
            tp,
        ))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Vertices in sorted label order.
    pub fn vertices(&self) -> impl Iterator<Item = &VertexId> {
        self.vertices.iter()
    }

    pub fn has_vertex(&self, v: &str) -> bool {
        self.vertices.contains(v)
    }

    /// Edges in id-creation order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Option<&Edge> {
        self.edges.iter().find(|e| e.id == id)
    }

    /// Number of edge endpoints at `v` (parallel edges all count).
    pub fn degree(&self, v: &str) -> usize {
        self.edges.iter().filter(|e| e.touches(v)).count()
    }

    fn next_edge_id(&self) -> usize {
        self.edges.iter().map(|e| e.id + 1).max().unwrap_or(0)
    }

    fn check_terminals(&self, tp: &TerminalPair) -> Result<(), GraphError> {
        for x in [&tp.s, &tp.t] {
            if !self.vertices.contains(x) {
                return Err(GraphError::UnknownVertex(x.clone()));
            }
        }
        Ok(())
    }

    /// Remove one edge; vertices (including any newly isolated ones) stay.
    pub fn delete_edge(&self, edge_id: usize) -> Result<Multigraph, GraphError> {
        if self.edge(edge_id).is_none() {
            return Err(GraphError::UnknownEdge(edge_id));
        }
        Ok(Multigraph {
            vertices: self.vertices.clone(),
            edges: self
                .edges
                .iter()
                .filter(|e| e.id != edge_id)
                .cloned()
                .collect(),
        })
    }

    /// Contract one edge: its endpoints merge into a single vertex and any
    /// parallel copies of the edge vanish (they would become loops).
    ///
    /// The surviving vertex is `s` if an endpoint is the terminal `s`,
    /// else `t` if an endpoint is `t`, else the lexicographically smaller
    /// endpoint. Contracting an edge that joins `s` to `t` reports
    /// [`ContractedTerminals::Merged`].
    pub fn contract_edge(
        &self,
        edge_id: usize,
        tp: &TerminalPair,
    ) -> Result<Contraction, GraphError> {
        self.check_terminals(tp)?;
        let e = self
            .edge(edge_id)
            .ok_or(GraphError::UnknownEdge(edge_id))?
            .clone();
        let (u, v) = (e.u.clone(), e.v.clone());
        let touches_s = u == tp.s || v == tp.s;
        let touches_t = u == tp.t || v == tp.t;
        let kept = if touches_s {
            tp.s.clone()
        } else if touches_t {
            tp.t.clone()
        } else {
            u.clone().min(v.clone())
        };
        let gone = if kept == u { v.clone() } else { u.clone() };

        let mut vertices = self.vertices.clone();
        vertices.remove(&gone);
        let mut edges = Vec::with_capacity(self.edges.len() - 1);
        for f in &self.edges {
            if f.touches(&u) && f.touches(&v) {
                continue; // the contracted edge and its parallel copies
            }
            let mut g = f.clone();
            if g.u == gone {
                g.u = kept.clone();
            }
            if g.v == gone {
                g.v = kept.clone();
            }
            edges.push(g);
        }
        let terminals = if touches_s && touches_t {
            ContractedTerminals::Merged(kept)
        } else {
            ContractedTerminals::Pair(tp.clone())
        };
        Ok(Contraction {
            graph: Multigraph { vertices, edges },
            terminals,
        })
    }

    /// Replace one edge by a path of `parts` edges through `parts - 1` fresh
    /// internal vertices. `parts == 1` returns the graph unchanged.
    pub fn subdivide(&self, edge_id: usize, parts: u32) -> Result<Multigraph, GraphError> {
        if parts == 0 {
            return Err(GraphError::InvalidArgument(
                "subdivision needs at least one part".into(),
            ));
        }
        let e = self
            .edge(edge_id)
            .ok_or(GraphError::UnknownEdge(edge_id))?
            .clone();
        if parts == 1 {
            return Ok(self.clone());
        }
        let mut vertices = self.vertices.clone();
        let mut edges: Vec<Edge> = self
            .edges
            .iter()
            .filter(|f| f.id != edge_id)
            .cloned()
            .collect();
        let mut next_id = self.next_edge_id();
        let mut prev = e.u.clone();
        for i in 1..parts {
            let mut name = format!("sub{}_{}", edge_id, i);
            while vertices.contains(&name) {
                name.push('_');
            }
            vertices.insert(name.clone());
            edges.push(Edge {
                id: next_id,
                u: prev,
                v: name.clone(),
            });
            next_id += 1;
            prev = name;
        }
        edges.push(Edge {
            id: next_id,
            u: prev,
            v: e.v.clone(),
        });
        Ok(Multigraph { vertices, edges })
    }

    /// Replace **every** edge of `self` by a copy of the two-terminal gadget
    /// `(h, htp)`: on an edge `{u, v}`, the gadget's `s` is identified with
    /// the lexicographically smaller endpoint and its `t` with the larger;
    /// internal gadget vertices get fresh per-edge names. The host terminals
    /// survive unchanged.
    ///
    /// The result has `n_G + m_G * (n_H - 2)` vertices and `m_G * m_H` edges.
    pub fn substitute_gadget(
        &self,
        tp: &TerminalPair,
        h: &Multigraph,
        htp: &TerminalPair,
    ) -> Result<(Multigraph, TerminalPair), GraphError> {
        self.check_terminals(tp)?;
        h.check_terminals(htp)?;
        let mut vertices = self.vertices.clone();
        let mut edges = Vec::with_capacity(self.edge_count() * h.edge_count());
        let mut next_id = 0usize;
        for e in &self.edges {
            let lo = e.u.clone().min(e.v.clone());
            let hi = e.u.clone().max(e.v.clone());
            let mut rename: BTreeMap<&VertexId, VertexId> = BTreeMap::new();
            for w in h.vertices() {
                let target = if *w == htp.s {
                    lo.clone()
                } else if *w == htp.t {
                    hi.clone()
                } else {
                    let mut name = format!("e{}_{}", e.id, w);
                    while vertices.contains(&name) {
                        name.push('_');
                    }
                    vertices.insert(name.clone());
                    name
                };
                rename.insert(w, target);
            }
            for f in h.edges() {
                edges.push(Edge {
                    id: next_id,
                    u: rename[&f.u].clone(),
                    v: rename[&f.v].clone(),
                });
                next_id += 1;
            }
        }
        Ok((Multigraph { vertices, edges }, tp.clone()))
    }

    /// Sorted vertex labels and edge endpoints as indices into that order.
    pub(crate) fn index_view(&self) -> (Vec<&VertexId>, Vec<(usize, usize)>) {
        let names: Vec<&VertexId> = self.vertices.iter().collect();
        let index: BTreeMap<&VertexId, usize> =
            names.iter().enumerate().map(|(i, v)| (*v, i)).collect();
        let endpoints = self
            .edges
            .iter()
            .map(|e| (index[&e.u], index[&e.v]))
            .collect();
        (names, endpoints)
    }

    /// Keep exactly the edges that can lie on a simple `s`-`t` path: the
    /// edges of the biconnected blocks along the block-cut-tree path from
    /// `s` to `t`. Vertices stranded by the removal are dropped (the
    /// terminals always stay). Errors when the terminals are disconnected.
    pub fn prune(&self, tp: &TerminalPair) -> Result<Multigraph, GraphError> {
        self.check_terminals(tp)?;
        let (names, endpoints) = self.index_view();
        let si = names.binary_search(&&tp.s).expect("terminal present");
        let ti = names.binary_search(&&tp.t).expect("terminal present");
        let mask = cut::relevant_edge_mask(names.len(), &endpoints, si, ti).ok_or(
            GraphError::TerminalsDisconnected {
                s: tp.s.clone(),
                t: tp.t.clone(),
            },
        )?;
        let edges: Vec<Edge> = self
            .edges
            .iter()
            .zip(&mask)
            .filter(|(_, keep)| **keep)
            .map(|(e, _)| e.clone())
            .collect();
        let mut vertices = BTreeSet::new();
        vertices.insert(tp.s.clone());
        vertices.insert(tp.t.clone());
        for e in &edges {
            vertices.insert(e.u.clone());
            vertices.insert(e.v.clone());
        }
        Ok(Multigraph { vertices, edges })
    }

    /// Deterministic structural key: vertices are renamed by a BFS from `s`
    /// (neighbors visited in decreasing degree, then decreasing edge
    /// multiplicity, then label order; unreached vertices appended by
    /// decreasing degree then label), and the key lists the renamed edge
    /// multiset plus the renamed position of `t`.
    ///
    /// Equal keys imply identical labeled structure after the renaming; the
    /// key is **not** a complete isomorphism invariant.
    pub fn normal_key(&self, tp: &TerminalPair) -> Result<String, GraphError> {
        self.check_terminals(tp)?;
        let (names, endpoints) = self.index_view();
        let n = names.len();
        let si = names.binary_search(&&tp.s).expect("terminal present");
        let ti = names.binary_search(&&tp.t).expect("terminal present");

        let mut deg = vec![0usize; n];
        let mut adj: Vec<BTreeMap<usize, usize>> = vec![BTreeMap::new(); n];
        for &(u, v) in &endpoints {
            deg[u] += 1;
            deg[v] += 1;
            *adj[u].entry(v).or_insert(0) += 1;
            *adj[v].entry(u).or_insert(0) += 1;
        }

        let mut new_of = vec![usize::MAX; n];
        let mut order = Vec::with_capacity(n);
        let mut queue = VecDeque::new();
        new_of[si] = 0;
        order.push(si);
        queue.push_back(si);
        while let Some(v) = queue.pop_front() {
            let mut nbrs: Vec<(usize, usize)> =
                adj[v].iter().map(|(&w, &mult)| (w, mult)).collect();
            nbrs.sort_by(|a, b| {
                (deg[b.0], b.1, names[a.0]).cmp(&(deg[a.0], a.1, names[b.0]))
            });
            for (w, _) in nbrs {
                if new_of[w] == usize::MAX {
                    new_of[w] = order.len();
                    order.push(w);
                    queue.push_back(w);
                }
            }
        }
        let mut rest: Vec<usize> = (0..n).filter(|&v| new_of[v] == usize::MAX).collect();
        rest.sort_by(|&a, &b| (deg[b], names[a]).cmp(&(deg[a], names[b])));
        for v in rest {
            new_of[v] = order.len();
            order.push(v);
        }

        let mut pairs: Vec<(usize, usize)> = endpoints
            .iter()
            .map(|&(u, v)| {
                let (a, b) = (new_of[u], new_of[v]);
                (a.min(b), a.max(b))
            })
            .collect();
        pairs.sort_unstable();
        let edge_part: Vec<String> = pairs.iter().map(|(a, b)| format!("{a}-{b}")).collect();
        Ok(format!(
            "n{};m{};t{};E[{}]",
            n,
            endpoints.len(),
            new_of[ti],
            edge_part.join(",")
        ))
    }
}

/// Parameterized two-terminal families.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FamilySpec {
    /// Cycle on `n >= 3` vertices, terminals `k` steps apart (`1 <= k <= n/2`).
    Cycle { n: u32, k: u32 },
    /// `k >= 1` internally disjoint terminal-to-terminal paths of length `l >= 1`.
    Theta { l: u32, k: u32 },
    /// `m >= 1` parallel edges between the two terminals.
    Bundle { m: u32 },
    /// A path of `len >= 1` edges, terminals at the ends.
    Path { len: u32 },
}

impl FamilySpec {
    pub fn validate(&self) -> Result<(), GraphError> {
        match *self {
            FamilySpec::Cycle { n, k } => {
                if n < 3 {
                    Err(GraphError::InvalidFamily(format!(
                        "cycle needs n >= 3, got n = {n}"
                    )))
                } else if k == 0 || 2 * k > n {
                    Err(GraphError::InvalidFamily(format!(
                        "cycle separation needs 1 <= k <= n/2, got k = {k} with n = {n}"
                    )))
                } else {
                    Ok(())
                }
            }
            FamilySpec::Theta { l, k } => {
                if l == 0 || k == 0 {
                    Err(GraphError::InvalidFamily(format!(
                        "theta needs l >= 1 and k >= 1, got l = {l}, k = {k}"
                    )))
                } else {
                    Ok(())
                }
            }
            FamilySpec::Bundle { m } => {
                if m == 0 {
                    Err(GraphError::InvalidFamily("bundle needs m >= 1".into()))
                } else {
                    Ok(())
                }
            }
            FamilySpec::Path { len } => {
                if len == 0 {
                    Err(GraphError::InvalidFamily("path needs length >= 1".into()))
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Construct the family member with its terminal pair.
    pub fn build(&self) -> Result<(Multigraph, TerminalPair), GraphError> {
        self.validate()?;
        match *self {
            FamilySpec::Cycle { n, k } => {
                let vs: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
                let es: Vec<(String, String)> = (0..n)
                    .map(|i| (vs[i as usize].clone(), vs[((i + 1) % n) as usize].clone()))
                    .collect();
                Multigraph::from_edge_list(&vs, &es, "v0", &format!("v{k}"))
            }
            FamilySpec::Theta { l, k } => {
                let mut vs = vec!["s".to_string(), "t".to_string()];
                let mut es: Vec<(String, String)> = Vec::new();
                for j in 0..k {
                    let mut prev = "s".to_string();
                    for i in 1..l {
                        let w = format!("b{j}_{i}");
                        vs.push(w.clone());
                        es.push((prev, w.clone()));
                        prev = w;
                    }
                    es.push((prev, "t".to_string()));
                }
                Multigraph::from_edge_list(&vs, &es, "s", "t")
            }
            FamilySpec::Bundle { m } => {
                let vs = ["s", "t"];
                let es: Vec<(&str, &str)> = (0..m).map(|_| ("s", "t")).collect();
                Multigraph::from_edge_list(&vs, &es, "s", "t")
            }
            FamilySpec::Path { len } => {
                let vs: Vec<String> = (0..=len).map(|i| format!("v{i}")).collect();
                let es: Vec<(String, String)> = (0..len)
                    .map(|i| (vs[i as usize].clone(), vs[(i + 1) as usize].clone()))
                    .collect();
                Multigraph::from_edge_list(&vs, &es, "v0", &format!("v{len}"))
            }
        }
    }
}

/// Biconnected-component analysis on index graphs, shared by
/// [`Multigraph::prune`] and the reliability engine.
pub(crate) mod cut {
    /// Mark the edges that lie in biconnected blocks on the block-cut-tree
    /// path from `s` to `t`, exactly the edges that can appear on a simple
    /// `s`-`t` path. Returns `None` when `s` and `t` are disconnected.
    /// `s == t` marks nothing (trivially connected).
    pub(crate) fn relevant_edge_mask(
        nv: usize,
        edges: &[(usize, usize)],
        s: usize,
        t: usize,
    ) -> Option<Vec<bool>> {
        if s == t {
            return Some(vec![false; edges.len()]);
        }
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        for (idx, &(u, v)) in edges.iter().enumerate() {
            adj[u].push((v, idx));
            adj[v].push((u, idx));
        }

        // Iterative Hopcroft-Tarjan from s with an explicit edge stack.
        // Every undirected edge is seen twice in the adjacency lists; it is
        // pushed exactly once: as a tree edge on first discovery, or as a
        // back edge from its deeper endpoint. A block is complete when the
        // tree edge into the finished subtree is popped.
        let mut disc = vec![usize::MAX; nv];
        let mut low = vec![usize::MAX; nv];
        let mut is_cut = vec![false; nv];
        let mut blocks: Vec<Vec<usize>> = Vec::new();
        let mut estack: Vec<usize> = Vec::new();
        let mut timer = 0usize;
        // frame: (vertex, incoming tree-edge index or MAX, next adj position)
        let mut stack: Vec<(usize, usize, usize)> = vec![(s, usize::MAX, 0)];
        disc[s] = timer;
        low[s] = timer;
        timer += 1;
        let mut root_children = 0usize;
        while !stack.is_empty() {
            let top = stack.len() - 1;
            let (v, in_edge, pos) = stack[top];
            if pos < adj[v].len() {
                stack[top].2 += 1;
                let (w, eidx) = adj[v][pos];
                if eidx == in_edge {
                    continue; // the tree edge we arrived by (this copy only)
                }
                if disc[w] == usize::MAX {
                    estack.push(eidx);
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, eidx, 0));
                } else if disc[w] < disc[v] {
                    // back edge (or a parallel copy of the tree edge)
                    estack.push(eidx);
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(parent, _, _)) = stack.last() {
                    low[parent] = low[parent].min(low[v]);
                    if low[v] >= disc[parent] {
                        // `parent` separates v's subtree: everything pushed
                        // since (and including) the tree edge parent->v is
                        // one biconnected block.
                        let mut block = Vec::new();
                        while let Some(e) = estack.pop() {
                            block.push(e);
                            if e == in_edge {
                                break;
                            }
                        }
                        if parent == s {
                            root_children += 1;
                        } else {
                            is_cut[parent] = true;
                        }
                        blocks.push(block);
                    }
                }
            }
        }
        if disc[t] == usize::MAX {
            return None;
        }
        if root_children >= 2 {
            is_cut[s] = true;
        }

        // Vertices of each block.
        let block_verts: Vec<Vec<usize>> = blocks
            .iter()
            .map(|b| {
                let mut vs: Vec<usize> = b
                    .iter()
                    .flat_map(|&e| [edges[e].0, edges[e].1])
                    .collect();
                vs.sort_unstable();
                vs.dedup();
                vs
            })
            .collect();

        // Block-cut tree: nodes = blocks then cut vertices.
        let cut_list: Vec<usize> = (0..nv).filter(|&v| is_cut[v]).collect();
        let cut_node: std::collections::BTreeMap<usize, usize> = cut_list
            .iter()
            .enumerate()
            .map(|(i, &v)| (v, blocks.len() + i))
            .collect();
        let n_nodes = blocks.len() + cut_list.len();
        let mut tadj: Vec<Vec<usize>> = vec![Vec::new(); n_nodes];
        for (bi, vs) in block_verts.iter().enumerate() {
            for &v in vs {
                if let Some(&cn) = cut_node.get(&v) {
                    tadj[bi].push(cn);
                    tadj[cn].push(bi);
                }
            }
        }

        let locate = |v: usize| -> usize {
            if let Some(&cn) = cut_node.get(&v) {
                return cn;
            }
            block_verts
                .iter()
                .position(|vs| vs.binary_search(&v).is_ok())
                .expect("vertex in s's component lies in some block")
        };
        let start = locate(s);
        let goal = locate(t);

        // BFS path through the tree.
        let mut parent = vec![usize::MAX; n_nodes];
        let mut seen = vec![false; n_nodes];
        let mut queue = std::collections::VecDeque::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            if x == goal {
                break;
            }
            for &y in &tadj[x] {
                if !seen[y] {
                    seen[y] = true;
                    parent[y] = x;
                    queue.push_back(y);
                }
            }
        }
        debug_assert!(seen[goal], "terminals connected but tree path missing");

        let mut mask = vec![false; edges.len()];
        let mut node = goal;
        loop {
            if node < blocks.len() {
                for &e in &blocks[node] {
                    mask[e] = true;
                }
            }
            if node == start {
                break;
            }
            node = parent[node];
        }
        Some(mask)
    }
}
