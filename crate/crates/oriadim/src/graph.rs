//! Undirected and oriented graph representations plus the distance
//! machinery (BFS, diameter certificates, bridge detection) that every
//! other module builds on.
//!
//! Vertices are dense ids `0..n`. Graphs are immutable after construction,
//! so they can be shared freely across threads.

use std::collections::VecDeque;

use thiserror::Error;

/// Sentinel for an unreachable vertex. Kept as a dedicated sentinel rather
/// than a huge finite value so distance arithmetic cannot silently overflow.
pub const INF: u32 = u32::MAX;

pub type Vertex = u32;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {{{0}, {1}}}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for graph with {n} vertices")]
    VertexOutOfRange { vertex: Vertex, n: u32 },
    #[error("operation requires a non-empty graph")]
    EmptyGraph,
    #[error("orientation does not cover the edge set of the graph")]
    EdgeSetMismatch,
}

/// A finite simple undirected graph with vertex ids `0..n`.
///
/// Edges are stored as sorted pairs `(a, b)` with `a < b`, in lexicographic
/// order, alongside sorted adjacency lists.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UndirectedGraph {
    n: u32,
    edges: Vec<(Vertex, Vertex)>,
    adj: Vec<Vec<Vertex>>,
}

impl UndirectedGraph {
    pub fn new(
        n: u32,
        edges: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut norm: Vec<(Vertex, Vertex)> = Vec::new();
        for (a, b) in edges {
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            for v in [a, b] {
                if v >= n {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n });
                }
            }
            norm.push((a.min(b), a.max(b)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::DuplicateEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n as usize];
        for &(a, b) in &norm {
            adj[a as usize].push(b);
            adj[b as usize].push(a);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Self { n, edges: norm, adj })
    }

    pub fn vertex_count(&self) -> u32 {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted pairs `(a, b)`, `a < b`, in lexicographic order.
    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v as usize]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v as usize].len()
    }

    pub fn has_edge(&self, a: Vertex, b: Vertex) -> bool {
        self.adj[a as usize].binary_search(&b).is_ok()
    }

    /// Index of edge `{a, b}` in [`edges`](Self::edges), if present.
    pub fn edge_index(&self, a: Vertex, b: Vertex) -> Option<usize> {
        let key = (a.min(b), a.max(b));
        self.edges.binary_search(&key).ok()
    }

    /// Minimum vertex degree. Errors on the empty graph.
    pub fn min_degree(&self) -> Result<u32, GraphError> {
        if self.n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        Ok((0..self.n).map(|v| self.degree(v) as u32).min().unwrap())
    }

    pub fn is_connected(&self) -> bool {
        if self.n == 0 {
            return false;
        }
        match bfs_distances(self, 0) {
            Ok(dist) => dist.iter().all(|&d| d != INF),
            Err(_) => false,
        }
    }

    /// Copy of the graph with the given edges removed. Edges not present in
    /// the graph are ignored.
    pub fn without_edges(&self, removed: &[(Vertex, Vertex)]) -> UndirectedGraph {
        let removed: Vec<(Vertex, Vertex)> =
            removed.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        let kept = self
            .edges
            .iter()
            .copied()
            .filter(|e| !removed.contains(e));
        UndirectedGraph::new(self.n, kept).expect("subgraph of a valid graph is valid")
    }

    /// All cut-edges, found by a single DFS with low-link values.
    ///
    /// An edge is a bridge exactly when its removal increases the number of
    /// connected components.
    pub fn bridges(&self) -> Vec<(Vertex, Vertex)> {
        let n = self.n as usize;
        let mut disc = vec![u32::MAX; n];
        let mut low = vec![u32::MAX; n];
        let mut out = Vec::new();
        let mut clock = 0u32;
        // (vertex, parent edge index, neighbor cursor)
        let mut stack: Vec<(Vertex, Option<usize>, usize)> = Vec::new();
        for root in 0..self.n {
            if disc[root as usize] != u32::MAX {
                continue;
            }
            disc[root as usize] = clock;
            low[root as usize] = clock;
            clock += 1;
            stack.push((root, None, 0));
            while let Some(&mut (v, parent_edge, ref mut cursor)) = stack.last_mut() {
                if *cursor < self.degree(v) {
                    let w = self.adj[v as usize][*cursor];
                    *cursor += 1;
                    let eidx = self.edge_index(v, w).unwrap();
                    if Some(eidx) == parent_edge {
                        continue;
                    }
                    if disc[w as usize] == u32::MAX {
                        disc[w as usize] = clock;
                        low[w as usize] = clock;
                        clock += 1;
                        stack.push((w, Some(eidx), 0));
                    } else {
                        low[v as usize] = low[v as usize].min(disc[w as usize]);
                    }
                } else {
                    stack.pop();
                    if let Some(&mut (p, _, _)) = stack.last_mut() {
                        low[p as usize] = low[p as usize].min(low[v as usize]);
                        if low[v as usize] > disc[p as usize] {
                            out.push((p.min(v), p.max(v)));
                        }
                    }
                }
            }
        }
        out.sort_unstable();
        out
    }

    pub fn is_bridgeless(&self) -> bool {
        self.bridges().is_empty()
    }
}

/// An assignment of a direction to every edge of a base graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    base: UndirectedGraph,
    /// Per edge index of `base`: `true` means the stored pair `(a, b)` is
    /// directed `a -> b`, `false` means `b -> a`.
    forward: Vec<bool>,
    out_adj: Vec<Vec<Vertex>>,
}

impl Orientation {
    /// Builds an orientation from per-edge directions aligned with
    /// `base.edges()`.
    pub fn from_directions(base: UndirectedGraph, forward: Vec<bool>) -> Result<Self, GraphError> {
        if forward.len() != base.edge_count() {
            return Err(GraphError::EdgeSetMismatch);
        }
        let mut out_adj = vec![Vec::new(); base.vertex_count() as usize];
        for (idx, &(a, b)) in base.edges().iter().enumerate() {
            let (from, to) = if forward[idx] { (a, b) } else { (b, a) };
            out_adj[from as usize].push(to);
        }
        for list in &mut out_adj {
            list.sort_unstable();
        }
        Ok(Self { base, forward, out_adj })
    }

    /// Builds an orientation from an arc list that must cover every base
    /// edge exactly once.
    pub fn from_arcs(
        base: UndirectedGraph,
        arcs: impl IntoIterator<Item = (Vertex, Vertex)>,
    ) -> Result<Self, GraphError> {
        let mut forward: Vec<Option<bool>> = vec![None; base.edge_count()];
        for (from, to) in arcs {
            let idx = base
                .edge_index(from, to)
                .ok_or(GraphError::EdgeSetMismatch)?;
            if forward[idx].is_some() {
                return Err(GraphError::EdgeSetMismatch);
            }
            forward[idx] = Some(from < to);
        }
        let forward: Option<Vec<bool>> = forward.into_iter().collect();
        let forward = forward.ok_or(GraphError::EdgeSetMismatch)?;
        Self::from_directions(base, forward)
    }

    pub fn base(&self) -> &UndirectedGraph {
        &self.base
    }

    pub fn vertex_count(&self) -> u32 {
        self.base.vertex_count()
    }

    pub fn arc_count(&self) -> usize {
        self.forward.len()
    }

    pub fn out_neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.out_adj[v as usize]
    }

    /// Arcs in lexicographic order of the underlying edge pairs.
    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.base
            .edges()
            .iter()
            .zip(&self.forward)
            .map(|(&(a, b), &f)| if f { (a, b) } else { (b, a) })
    }

    /// Direction of edge `{a, b}` as an arc, if the edge exists.
    pub fn arc_of(&self, a: Vertex, b: Vertex) -> Option<(Vertex, Vertex)> {
        let idx = self.base.edge_index(a, b)?;
        let (lo, hi) = self.base.edges()[idx];
        Some(if self.forward[idx] { (lo, hi) } else { (hi, lo) })
    }

    /// Copy with the arc on edge index `idx` reversed.
    pub fn with_reversed(&self, idx: usize) -> Orientation {
        let mut forward = self.forward.clone();
        forward[idx] = !forward[idx];
        Orientation::from_directions(self.base.clone(), forward)
            .expect("same edge set stays valid")
    }

    /// Copy with every arc reversed.
    pub fn reversed(&self) -> Orientation {
        let forward = self.forward.iter().map(|f| !f).collect();
        Orientation::from_directions(self.base.clone(), forward)
            .expect("same edge set stays valid")
    }

    pub fn is_strongly_connected(&self) -> bool {
        diameter(self).map(|c| c.strongly_connected).unwrap_or(false)
    }
}

/// Read access to successor lists, implemented by both graph kinds so BFS
/// and diameter work uniformly. For undirected graphs successors are plain
/// neighbors.
pub trait AdjacencyView {
    fn vertex_count(&self) -> u32;
    fn successors(&self, v: Vertex) -> &[Vertex];
}

impl AdjacencyView for UndirectedGraph {
    fn vertex_count(&self) -> u32 {
        self.n
    }
    fn successors(&self, v: Vertex) -> &[Vertex] {
        self.neighbors(v)
    }
}

impl AdjacencyView for Orientation {
    fn vertex_count(&self) -> u32 {
        self.base.vertex_count()
    }
    fn successors(&self, v: Vertex) -> &[Vertex] {
        self.out_neighbors(v)
    }
}

/// Exact unweighted shortest-path distances from `source`; [`INF`] marks
/// unreachable vertices.
pub fn bfs_distances<G: AdjacencyView>(g: &G, source: Vertex) -> Result<Vec<u32>, GraphError> {
    let n = g.vertex_count();
    if source >= n {
        return Err(GraphError::VertexOutOfRange { vertex: source, n });
    }
    let mut dist = vec![INF; n as usize];
    dist[source as usize] = 0;
    let mut queue = VecDeque::from([source]);
    while let Some(v) = queue.pop_front() {
        let dv = dist[v as usize];
        for &w in g.successors(v) {
            if dist[w as usize] == INF {
                dist[w as usize] = dv + 1;
                queue.push_back(w);
            }
        }
    }
    Ok(dist)
}

/// Full distance matrix of a graph or digraph, with the diameter and a
/// connectivity verdict. Machine-checkable: the matrix itself is retained.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DiameterCertificate {
    /// `dist[i][j]` is the (directed) distance from `i` to `j`.
    pub dist: Vec<Vec<u32>>,
    /// Maximum entry; [`INF`] when some pair is unreachable.
    pub diameter: u32,
    /// True exactly when no entry is [`INF`].
    pub strongly_connected: bool,
}

impl DiameterCertificate {
    /// A pair realizing the diameter (any pair at distance `diameter`, or an
    /// unreachable pair when not strongly connected).
    pub fn witness_pair(&self) -> (Vertex, Vertex) {
        let n = self.dist.len();
        for i in 0..n {
            for j in 0..n {
                if self.dist[i][j] == self.diameter {
                    return (i as Vertex, j as Vertex);
                }
            }
        }
        unreachable!("diameter always realized by some pair")
    }

    /// SHA-256 over the distance matrix in row-major order.
    pub fn digest(&self) -> String {
        use sha2::{Digest, Sha256};
        let mut hasher = Sha256::new();
        for row in &self.dist {
            for &d in row {
                hasher.update(d.to_le_bytes());
            }
        }
        let out = hasher.finalize();
        out.iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Diameter with a full per-pair certificate. Errors on the empty graph.
pub fn diameter<G: AdjacencyView>(g: &G) -> Result<DiameterCertificate, GraphError> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(GraphError::EmptyGraph);
    }
    let mut dist = Vec::with_capacity(n as usize);
    for v in 0..n {
        dist.push(bfs_distances(g, v)?);
    }
    let mut diam = 0;
    let mut strong = true;
    for row in &dist {
        for &d in row {
            if d == INF {
                strong = false;
            }
            diam = diam.max(d);
        }
    }
    Ok(DiameterCertificate {
        dist,
        diameter: diam,
        strongly_connected: strong,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: u32) -> UndirectedGraph {
        UndirectedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    fn complete(n: u32) -> UndirectedGraph {
        let edges = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b)));
        UndirectedGraph::new(n, edges).unwrap()
    }

    fn path(n: u32) -> UndirectedGraph {
        UndirectedGraph::new(n, (0..n - 1).map(|i| (i, i + 1))).unwrap()
    }

    #[test]
    fn construction_rejects_self_loops_and_duplicates() {
        assert_eq!(
            UndirectedGraph::new(2, [(0, 0)]).unwrap_err(),
            GraphError::SelfLoop(0)
        );
        assert_eq!(
            UndirectedGraph::new(3, [(0, 1), (1, 0)]).unwrap_err(),
            GraphError::DuplicateEdge(0, 1)
        );
        assert_eq!(
            UndirectedGraph::new(2, [(0, 2)]).unwrap_err(),
            GraphError::VertexOutOfRange { vertex: 2, n: 2 }
        );
    }

    #[test]
    fn bfs_directed_triangle() {
        let base = cycle(3);
        let o = Orientation::from_arcs(base, [(0, 1), (1, 2), (2, 0)]).unwrap();
        assert_eq!(bfs_distances(&o, 0).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn bfs_undirected_path_from_middle() {
        let g = path(3);
        assert_eq!(bfs_distances(&g, 1).unwrap(), vec![1, 0, 1]);
    }

    #[test]
    fn bfs_c5() {
        assert_eq!(bfs_distances(&cycle(5), 0).unwrap(), vec![0, 1, 2, 2, 1]);
    }

    #[test]
    fn bfs_rejects_bad_source() {
        assert!(bfs_distances(&cycle(3), 5).is_err());
    }

    #[test]
    fn diameter_examples() {
        assert_eq!(diameter(&cycle(5)).unwrap().diameter, 2);
        assert_eq!(diameter(&complete(4)).unwrap().diameter, 1);
        let c5 = cycle(5);
        let o = Orientation::from_arcs(c5, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap();
        let cert = diameter(&o).unwrap();
        assert_eq!(cert.diameter, 4);
        assert!(cert.strongly_connected);
    }

    #[test]
    fn diameter_empty_graph_is_error() {
        let g = UndirectedGraph::new(0, []).unwrap();
        assert_eq!(diameter(&g).unwrap_err(), GraphError::EmptyGraph);
    }

    #[test]
    fn bridges_on_path() {
        assert_eq!(path(3).bridges(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn bridges_on_cycle_empty() {
        assert!(cycle(4).bridges().is_empty());
    }

    #[test]
    fn bridges_two_triangles_joined_by_edge() {
        let g = UndirectedGraph::new(
            6,
            [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)],
        )
        .unwrap();
        assert_eq!(g.bridges(), vec![(2, 3)]);
    }

    #[test]
    fn min_degree_examples() {
        assert_eq!(cycle(5).min_degree().unwrap(), 2);
        assert_eq!(complete(4).min_degree().unwrap(), 3);
        let star = UndirectedGraph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap();
        assert_eq!(star.min_degree().unwrap(), 1);
    }

    #[test]
    fn certificate_digest_is_stable() {
        let a = diameter(&cycle(5)).unwrap();
        let b = diameter(&cycle(5)).unwrap();
        assert_eq!(a.digest(), b.digest());
        let c = diameter(&cycle(6)).unwrap();
        assert_ne!(a.digest(), c.digest());
    }

    /// Brute-force bridge oracle: remove each edge and count components.
    fn bridges_by_removal(g: &UndirectedGraph) -> Vec<(Vertex, Vertex)> {
        let reachable_from_0 = |g: &UndirectedGraph| -> usize {
            let mut count = 0;
            let mut seen = vec![false; g.vertex_count() as usize];
            for v in 0..g.vertex_count() {
                if !seen[v as usize] {
                    count += 1;
                    let mut stack = vec![v];
                    seen[v as usize] = true;
                    while let Some(u) = stack.pop() {
                        for &w in g.neighbors(u) {
                            if !seen[w as usize] {
                                seen[w as usize] = true;
                                stack.push(w);
                            }
                        }
                    }
                }
            }
            count
        };
        let base = reachable_from_0(g);
        g.edges()
            .iter()
            .copied()
            .filter(|&e| reachable_from_0(&g.without_edges(&[e])) > base)
            .collect()
    }

    use proptest::prelude::*;

    prop_compose! {
        fn small_graph(max_n: u32)(n in 1..=max_n)(
            n in Just(n),
            mask in proptest::collection::vec(any::<bool>(), (n * (n.max(1) - 1) / 2) as usize),
        ) -> UndirectedGraph {
            let mut edges = Vec::new();
            let mut i = 0;
            for a in 0..n {
                for b in (a + 1)..n {
                    if mask[i] {
                        edges.push((a, b));
                    }
                    i += 1;
                }
            }
            UndirectedGraph::new(n, edges).unwrap()
        }
    }

    proptest! {
        #[test]
        fn lowlink_bridges_match_removal_oracle(g in small_graph(8)) {
            prop_assert_eq!(g.bridges(), bridges_by_removal(&g));
        }

        #[test]
        fn bfs_levels_are_tight(g in small_graph(8), src_pick in any::<u32>()) {
            let src = src_pick % g.vertex_count();
            let dist = bfs_distances(&g, src).unwrap();
            prop_assert_eq!(dist[src as usize], 0);
            for v in 0..g.vertex_count() {
                let d = dist[v as usize];
                if d != INF && d > 0 {
                    prop_assert!(g.neighbors(v).iter().any(|&w| dist[w as usize] == d - 1));
                }
            }
        }

        #[test]
        fn certificate_triangle_inequality(g in small_graph(7)) {
            let cert = diameter(&g).unwrap();
            let n = g.vertex_count() as usize;
            for i in 0..n {
                prop_assert_eq!(cert.dist[i][i], 0);
                for j in 0..n {
                    for k in 0..n {
                        let (a, b) = (cert.dist[i][j], cert.dist[j][k]);
                        if a != INF && b != INF && cert.dist[i][k] != INF {
                            prop_assert!(cert.dist[i][k] <= a + b);
                        }
                    }
                }
            }
        }

        #[test]
        fn orienting_never_shortens_distances(g in small_graph(7), dirs in proptest::collection::vec(any::<bool>(), 0..=21)) {
            let m = g.edge_count();
            prop_assume!(dirs.len() >= m);
            let o = Orientation::from_directions(g.clone(), dirs[..m].to_vec()).unwrap();
            let gu = diameter(&g).unwrap();
            let go = diameter(&o).unwrap();
            for i in 0..g.vertex_count() as usize {
                for j in 0..g.vertex_count() as usize {
                    prop_assert!(go.dist[i][j] >= gu.dist[i][j]);
                }
            }
        }
    }
}
