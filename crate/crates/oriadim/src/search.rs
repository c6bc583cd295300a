//! Ground-truth machinery: strong orientation by DFS, exact minimum
//! oriented diameter by branch-and-bound over edge directions, local
//! improvement by arc reversal, and extremal-witness hunting over small
//! graph streams.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{diameter, GraphError, Orientation, UndirectedGraph, Vertex, INF};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SearchError {
    #[error("graph has a bridge {{{0}, {1}}}; no strong orientation exists")]
    Bridge(Vertex, Vertex),
    #[error("graph is not connected")]
    Disconnected,
    #[error("edge count {m} exceeds the exhaustive cap {cap}")]
    AboveEdgeCap { m: usize, cap: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

/// Knobs for the exact search.
#[derive(Debug, Clone, Copy)]
pub struct SearchConfig {
    /// Max edges accepted by [`oriented_diameter_exact`]; hard ceiling 30.
    pub edge_cap: usize,
    /// Max branch-and-bound nodes before giving up on optimality; doubles
    /// as the per-order sample count in sampling-mode witness search.
    pub node_budget: u64,
    /// Early exit once an orientation at most this good is known.
    pub target: Option<u32>,
}

pub const EDGE_CAP_CEILING: usize = 30;

impl Default for SearchConfig {
    fn default() -> Self {
        Self {
            edge_cap: 20,
            node_budget: 5_000_000,
            target: None,
        }
    }
}

/// A strongly connected orientation of a bridgeless connected graph: DFS
/// tree arcs point forward, every other edge points back toward the
/// ancestor.
pub fn robbins_orient(g: &UndirectedGraph) -> Result<Orientation, SearchError> {
    if !g.is_connected() {
        return Err(SearchError::Disconnected);
    }
    if let Some(&(a, b)) = g.bridges().first() {
        return Err(SearchError::Bridge(a, b));
    }
    let n = g.vertex_count() as usize;
    let mut disc = vec![u32::MAX; n];
    let mut forward: Vec<Option<bool>> = vec![None; g.edge_count()];
    let mut clock = 0u32;
    let mut stack: Vec<(Vertex, usize)> = vec![(0, 0)];
    disc[0] = 0;
    clock += 1;
    while let Some(&mut (v, ref mut cursor)) = stack.last_mut() {
        if *cursor == g.degree(v) {
            stack.pop();
            continue;
        }
        let w = g.neighbors(v)[*cursor];
        *cursor += 1;
        let idx = g.edge_index(v, w).unwrap();
        if forward[idx].is_some() {
            continue;
        }
        let (lo, _) = g.edges()[idx];
        if disc[w as usize] == u32::MAX {
            // Tree arc v -> w.
            forward[idx] = Some(lo == v);
            disc[w as usize] = clock;
            clock += 1;
            stack.push((w, 0));
        } else {
            // Back arc v -> w (w was discovered earlier).
            forward[idx] = Some(lo == v);
        }
    }
    let forward: Vec<bool> = forward.into_iter().map(|f| f.unwrap()).collect();
    Ok(Orientation::from_directions(g.clone(), forward)?)
}

#[derive(Debug, Clone)]
pub struct ExactResult {
    pub diameter: u32,
    pub orientation: Orientation,
    /// False when the node budget ran out before the search tree was
    /// exhausted; `diameter` is then only the best found.
    pub proven_optimal: bool,
    pub nodes_explored: u64,
}

/// Internal bitset digraph used by the branch-and-bound: assigned arcs are
/// one-way, still-undirected edges count both ways, so its diameter lower
/// bounds every completion.
struct MixedState {
    n: usize,
    out: Vec<u64>,
}

impl MixedState {
    fn full(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    /// Max distance over ordered pairs, or INF when some pair is
    /// unreachable.
    fn diameter(&self) -> u32 {
        let full = self.full();
        let mut worst = 0u32;
        for src in 0..self.n {
            let mut reached = 1u64 << src;
            let mut frontier = reached;
            let mut d = 0u32;
            while reached != full {
                let mut next = 0u64;
                let mut f = frontier;
                while f != 0 {
                    let v = f.trailing_zeros() as usize;
                    f &= f - 1;
                    next |= self.out[v];
                }
                next &= !reached;
                if next == 0 {
                    return INF;
                }
                reached |= next;
                frontier = next;
                d += 1;
            }
            worst = worst.max(d);
        }
        worst
    }
}

/// Exact minimum diameter over all orientations, by branch-and-bound.
///
/// The first edge's direction is fixed (reversing every arc preserves the
/// diameter), branching follows descending endpoint degree sums, and
/// subtrees are pruned against the mixed-graph lower bound.
pub fn oriented_diameter_exact(
    g: &UndirectedGraph,
    cfg: &SearchConfig,
) -> Result<ExactResult, SearchError> {
    let cap = cfg.edge_cap.min(EDGE_CAP_CEILING);
    if g.edge_count() > cap {
        return Err(SearchError::AboveEdgeCap { m: g.edge_count(), cap });
    }
    // Seed the incumbent with a strong orientation so a witness always
    // exists; this also validates connectivity and bridgelessness.
    let seeded = improve_orientation(g, &robbins_orient(g)?, cfg);
    let mut best = diameter(&seeded)
        .map_err(GraphError::from)?
        .diameter;
    let mut best_forward: Vec<bool> = g.edges().iter().map(|&(a, b)| {
        seeded.arc_of(a, b).unwrap() == (a, b)
    }).collect();

    let n = g.vertex_count() as usize;
    assert!(n <= 64, "edge cap keeps connected graphs within 64 vertices");
    let mut order: Vec<usize> = (0..g.edge_count()).collect();
    order.sort_by_key(|&idx| {
        let (a, b) = g.edges()[idx];
        std::cmp::Reverse(g.degree(a) + g.degree(b))
    });

    let mut state = MixedState {
        n,
        out: vec![0u64; n],
    };
    for &(a, b) in g.edges() {
        state.out[a as usize] |= 1 << b;
        state.out[b as usize] |= 1 << a;
    }

    struct Ctx<'a> {
        g: &'a UndirectedGraph,
        order: &'a [usize],
        assigned: Vec<bool>,
        best: u32,
        best_forward: Vec<bool>,
        nodes: u64,
        budget: u64,
        target: Option<u32>,
        stop: bool,
        proven: bool,
    }

    fn dfs(ctx: &mut Ctx, state: &mut MixedState, depth: usize) {
        if ctx.stop {
            return;
        }
        ctx.nodes += 1;
        if ctx.nodes > ctx.budget {
            ctx.stop = true;
            ctx.proven = false;
            return;
        }
        let lb = state.diameter();
        if lb >= ctx.best {
            return;
        }
        if depth == ctx.order.len() {
            ctx.best = lb;
            ctx.best_forward = ctx.assigned.clone();
            if let Some(t) = ctx.target {
                if ctx.best <= t {
                    ctx.stop = true;
                }
            }
            return;
        }
        let idx = ctx.order[depth];
        let (a, b) = ctx.g.edges()[idx];
        let dirs: &[bool] = if depth == 0 { &[true] } else { &[true, false] };
        for &fwd in dirs {
            let (from, to) = if fwd { (a, b) } else { (b, a) };
            // Keep from -> to, drop the reverse.
            state.out[to as usize] &= !(1u64 << from);
            ctx.assigned[idx] = fwd;
            dfs(ctx, state, depth + 1);
            state.out[to as usize] |= 1u64 << from;
            if ctx.stop {
                return;
            }
        }
    }

    let mut ctx = Ctx {
        g,
        order: &order,
        assigned: vec![true; g.edge_count()],
        best,
        best_forward: best_forward.clone(),
        nodes: 0,
        budget: cfg.node_budget,
        target: cfg.target,
        stop: false,
        proven: true,
    };
    dfs(&mut ctx, &mut state, 0);
    best = ctx.best;
    best_forward = ctx.best_forward;

    // The symmetry reduction may have found the reversed witness; either
    // realizes the same diameter.
    let orientation = Orientation::from_directions(g.clone(), best_forward)?;
    Ok(ExactResult {
        diameter: best,
        orientation,
        proven_optimal: ctx.proven,
        nodes_explored: ctx.nodes,
    })
}

/// Greedy local search: scan arcs in edge order and keep any single
/// reversal that preserves strong connectivity and strictly lowers the
/// diameter; repeat until a full pass finds nothing.
pub fn improve_orientation(
    g: &UndirectedGraph,
    o: &Orientation,
    _cfg: &SearchConfig,
) -> Orientation {
    debug_assert_eq!(o.base(), g);
    let mut current = o.clone();
    let mut current_diam = match diameter(&current) {
        Ok(c) => c.diameter,
        Err(_) => return current,
    };
    loop {
        let mut improved = false;
        for idx in 0..current.arc_count() {
            let candidate = current.with_reversed(idx);
            if let Ok(cert) = diameter(&candidate) {
                if cert.strongly_connected && cert.diameter < current_diam {
                    current = candidate;
                    current_diam = cert.diameter;
                    improved = true;
                }
            }
        }
        if !improved {
            return current;
        }
    }
}

/// Largest vertex count still enumerated exhaustively (over all labeled
/// graphs); beyond this, witness search samples randomly.
pub const WITNESS_EXHAUSTIVE_CAP: u32 = 7;

#[derive(Debug, Clone)]
pub struct WitnessReport {
    /// Bridgeless diameter-<=3 graphs whose exact oriented diameter reaches
    /// the target, deduplicated up to isomorphism.
    pub witnesses: Vec<UndirectedGraph>,
    /// Labeled graphs streamed (including isomorphic duplicates).
    pub graphs_examined: u64,
    /// Graphs that passed the bridgeless/diameter filters.
    pub candidates: u64,
    /// True when every labeled graph up to `n_max` vertices was streamed.
    pub proven_exhaustive: bool,
}

fn edge_slots(n: u32) -> Vec<(Vertex, Vertex)> {
    (0..n)
        .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
        .collect()
}

/// Bitmask adjacency scratch for the enumeration hot loop.
fn mask_to_adj(n: u32, slots: &[(Vertex, Vertex)], mask: u64, adj: &mut [u64]) {
    adj[..n as usize].fill(0);
    for (i, &(a, b)) in slots.iter().enumerate() {
        if mask & (1 << i) != 0 {
            adj[a as usize] |= 1 << b;
            adj[b as usize] |= 1 << a;
        }
    }
}

/// Connected, min degree >= 2, and diameter <= 3, all on the bitmask form.
fn quick_filter(n: u32, adj: &[u64]) -> bool {
    let full = (1u64 << n) - 1;
    for v in 0..n as usize {
        if (adj[v].count_ones()) < 2 {
            return false;
        }
    }
    // Reach-within-3 closure per vertex covers both connectivity and the
    // diameter bound.
    for v in 0..n as usize {
        let mut reach = (1u64 << v) | adj[v];
        for _ in 0..2 {
            let mut next = reach;
            let mut f = reach;
            while f != 0 {
                let w = f.trailing_zeros() as usize;
                f &= f - 1;
                next |= adj[w];
            }
            reach = next;
        }
        if reach != full {
            return false;
        }
    }
    true
}

/// Canonical form under vertex relabeling: the minimum edge bitmask over
/// all permutations. Only used to deduplicate the (rare) witnesses.
fn canonical_mask(g: &UndirectedGraph) -> (u32, u64) {
    let n = g.vertex_count();
    let slots = edge_slots(n);
    let slot_index = |a: Vertex, b: Vertex| -> usize {
        slots
            .binary_search(&(a.min(b), a.max(b)))
            .expect("slot exists")
    };
    let mut perm: Vec<Vertex> = (0..n).collect();
    let mut best = u64::MAX;
    loop {
        let mut mask = 0u64;
        for &(a, b) in g.edges() {
            mask |= 1 << slot_index(perm[a as usize], perm[b as usize]);
        }
        best = best.min(mask);
        if !next_permutation(&mut perm) {
            break;
        }
    }
    (n, best)
}

fn next_permutation(p: &mut [Vertex]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// Does this candidate's exact oriented diameter reach the target?
fn is_witness(g: &UndirectedGraph, target: u32, cfg: &SearchConfig) -> bool {
    // Any strong orientation bounds the optimum by n - 1.
    if g.vertex_count() - 1 < target {
        return false;
    }
    let Ok(robbins) = robbins_orient(g) else {
        return false;
    };
    let improved = improve_orientation(g, &robbins, cfg);
    if let Ok(cert) = diameter(&improved) {
        if cert.diameter < target {
            return false;
        }
    }
    let exact_cfg = SearchConfig {
        target: Some(target.saturating_sub(1)),
        ..*cfg
    };
    match oriented_diameter_exact(g, &exact_cfg) {
        Ok(res) => res.diameter >= target,
        Err(_) => false,
    }
}

/// Streams bridgeless diameter-<=3 graphs up to `n_max` vertices and
/// returns those whose exact oriented diameter is at least `target`.
///
/// Orders up to [`WITNESS_EXHAUSTIVE_CAP`] are enumerated exhaustively over
/// labeled graphs (isomorphic duplicates cost time, never correctness);
/// larger orders are randomly sampled, `cfg.node_budget.min(100_000)`
/// graphs per order, seeded for reproducibility.
pub fn search_witness(
    n_max: u32,
    target: u32,
    cfg: &SearchConfig,
    threads: usize,
    seed: u64,
) -> WitnessReport {
    let threads = threads.max(1);
    let mut witnesses: Vec<UndirectedGraph> = Vec::new();
    let mut examined = 0u64;
    let mut candidates = 0u64;

    for n in 3..=n_max.min(WITNESS_EXHAUSTIVE_CAP) {
        let slots = edge_slots(n);
        let total: u64 = 1 << slots.len();
        let chunk = total.div_ceil(threads as u64);
        let results: Vec<(u64, u64, Vec<UndirectedGraph>)> = std::thread::scope(|scope| {
            let handles: Vec<_> = (0..threads as u64)
                .map(|t| {
                    let slots = &slots;
                    scope.spawn(move || {
                        let lo = t * chunk;
                        let hi = total.min(lo + chunk);
                        let mut adj = vec![0u64; n as usize];
                        let mut local_examined = 0u64;
                        let mut local_candidates = 0u64;
                        let mut local_witnesses = Vec::new();
                        for mask in lo..hi {
                            local_examined += 1;
                            mask_to_adj(n, slots, mask, &mut adj);
                            if !quick_filter(n, &adj) {
                                continue;
                            }
                            let edges = slots
                                .iter()
                                .enumerate()
                                .filter(|&(i, _)| mask & (1 << i) != 0)
                                .map(|(_, &e)| e);
                            let g = UndirectedGraph::new(n, edges).unwrap();
                            if !g.is_bridgeless() {
                                continue;
                            }
                            local_candidates += 1;
                            if is_witness(&g, target, cfg) {
                                local_witnesses.push(g);
                            }
                        }
                        (local_examined, local_candidates, local_witnesses)
                    })
                })
                .collect();
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for (e, c, w) in results {
            examined += e;
            candidates += c;
            witnesses.extend(w);
        }
    }

    let exhaustive = n_max <= WITNESS_EXHAUSTIVE_CAP;
    if !exhaustive {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let samples = cfg.node_budget.min(100_000);
        for n in (WITNESS_EXHAUSTIVE_CAP + 1)..=n_max {
            let slots = edge_slots(n);
            let mut adj = vec![0u64; n as usize];
            for _ in 0..samples {
                examined += 1;
                let mask: u64 = rng.gen::<u64>() & ((1u64 << slots.len().min(63)) - 1);
                mask_to_adj(n, &slots, mask, &mut adj);
                if !quick_filter(n, &adj) {
                    continue;
                }
                let edges = slots
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| mask & (1 << i) != 0)
                    .map(|(_, &e)| e);
                let g = UndirectedGraph::new(n, edges).unwrap();
                if !g.is_bridgeless() {
                    continue;
                }
                candidates += 1;
                if is_witness(&g, target, cfg) {
                    witnesses.push(g);
                }
            }
        }
    }

    // Deduplicate witnesses up to isomorphism.
    let mut seen = std::collections::BTreeSet::new();
    witnesses.retain(|g| seen.insert(canonical_mask(g)));

    WitnessReport {
        witnesses,
        graphs_examined: examined,
        candidates,
        proven_exhaustive: exhaustive,
    }
}
