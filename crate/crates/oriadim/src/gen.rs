//! Graph generators: named families for the CLI and seeded random
//! instances for tests.
//!
//! The class-instance generators build graphs around an adjacent degree-2
//! pair by construction and then reject anything that fails the actual
//! class membership check, so callers get verified members only.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;

use crate::classes::{find_adjacent_degree2_pair, in_class, ClassParams};
use crate::graph::{UndirectedGraph, Vertex};

pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn cycle(n: u32) -> UndirectedGraph {
    UndirectedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle is well-formed")
}

pub fn complete(n: u32) -> UndirectedGraph {
    let edges = (0..n).flat_map(|a| ((a + 1)..n).map(move |b| (a, b)));
    UndirectedGraph::new(n, edges).expect("complete graph is well-formed")
}

pub fn path(n: u32) -> UndirectedGraph {
    UndirectedGraph::new(n, (0..n.saturating_sub(1)).map(|i| (i, i + 1)))
        .expect("path is well-formed")
}

/// The smallest interesting input: the 5-cycle, whose only good orientation
/// is the directed cycle.
pub fn worked_example() -> UndirectedGraph {
    cycle(5)
}

/// Accumulates edges with normalized endpoints and no duplicates.
#[derive(Default)]
struct EdgeSet(std::collections::BTreeSet<(Vertex, Vertex)>);

impl EdgeSet {
    fn add(&mut self, a: Vertex, b: Vertex) {
        debug_assert_ne!(a, b);
        self.0.insert((a.min(b), a.max(b)));
    }
}

/// Draws a verified member of the diameter-3 deletion-robust class that
/// contains an adjacent degree-2 pair, with at most `n_max` vertices.
///
/// The skeleton is the pair u-v with outside neighbors x, y and a shared
/// vertex z0 adjacent to both x and y. Every optional cell of the vertex
/// partition can appear: extra common neighbors of x and y, first tiers
/// around x and y, isolated and clustered second/third tiers, and outer
/// vertices wired so each one sits within two steps of z0. Candidates that
/// fail membership or lose the degree-2 pair are rejected and redrawn.
pub fn random_class_instance(rng: &mut impl Rng, n_max: u32) -> UndirectedGraph {
    let n_max = n_max.max(6);
    let params = ClassParams::new(3, 4, 1).expect("valid params");
    loop {
        let g = class_candidate(rng, n_max);
        if find_adjacent_degree2_pair(&g).is_some()
            && in_class(&g, params).map(|r| r.member).unwrap_or(false)
        {
            return g;
        }
    }
}

fn class_candidate(rng: &mut impl Rng, n_max: u32) -> UndirectedGraph {
    // Fixed roles: u=0, v=1, x=2, y=3, z0=4.
    let (u, v, x, y, z0) = (0u32, 1, 2, 3, 4);
    let mut e = EdgeSet::default();
    e.add(u, v);
    e.add(u, x);
    e.add(v, y);
    e.add(x, z0);
    e.add(y, z0);
    let mut next = 5u32;
    let mut fresh = |count: u32| -> Vec<Vertex> {
        let vs: Vec<Vertex> = (next..next + count).collect();
        next += count;
        vs
    };

    struct Budget {
        spend: u32,
    }
    impl Budget {
        fn take(&mut self, rng: &mut impl Rng, cost: u32, weight: u32) -> bool {
            if self.spend >= cost && rng.gen_range(0..4) < weight {
                self.spend -= cost;
                true
            } else {
                false
            }
        }
    }
    let mut budget = Budget { spend: rng.gen_range(0..=n_max - 5) };

    // Extra common neighbors of x and y.
    let mut zs = vec![z0];
    while budget.take(rng, 1, 2) && zs.len() < 4 {
        let z = fresh(1)[0];
        e.add(x, z);
        e.add(y, z);
        zs.push(z);
    }

    // First tiers: adjacent to their own hub and to z0, so cross traffic
    // can route through the middle.
    let mut x1s = Vec::new();
    while budget.take(rng, 1, 3) && x1s.len() < 4 {
        let s = fresh(1)[0];
        e.add(x, s);
        e.add(s, *zs.choose(rng).unwrap());
        x1s.push(s);
    }
    let mut y1s = Vec::new();
    while budget.take(rng, 1, 3) && y1s.len() < 4 {
        let s = fresh(1)[0];
        e.add(y, s);
        e.add(s, *zs.choose(rng).unwrap());
        y1s.push(s);
    }

    // Second tier: isolated among the leftovers, leaning on a first-tier
    // vertex for its second edge.
    let mut x_extras = false;
    let mut y_extras = false;
    if !x1s.is_empty() && budget.take(rng, 1, 2) {
        let s = fresh(1)[0];
        e.add(x, s);
        e.add(s, *x1s.choose(rng).unwrap());
        x_extras = true;
    }
    if !y1s.is_empty() && budget.take(rng, 1, 2) {
        let s = fresh(1)[0];
        e.add(y, s);
        e.add(s, *y1s.choose(rng).unwrap());
        y_extras = true;
    }
    // Third tier: pairs hanging off the hub, oriented later as a shell.
    if budget.take(rng, 2, 2) {
        let p = fresh(2);
        e.add(x, p[0]);
        e.add(x, p[1]);
        e.add(p[0], p[1]);
        x_extras = true;
    }
    if budget.take(rng, 2, 2) {
        let p = fresh(2);
        e.add(y, p[0]);
        e.add(y, p[1]);
        e.add(p[0], p[1]);
        y_extras = true;
    }
    // Second and third tiers on both sides are four hops apart unless x and
    // y are adjacent.
    if x_extras && y_extras {
        e.add(x, y);
    }

    // Outer vertices. Each touches z0 (or another common neighbor) so that
    // any two outer vertices are two steps apart.
    if !x1s.is_empty() && !y1s.is_empty() && budget.take(rng, 1, 2) {
        // Bridges the two first tiers.
        let s = fresh(1)[0];
        e.add(s, *x1s.choose(rng).unwrap());
        e.add(s, *y1s.choose(rng).unwrap());
        e.add(s, z0);
        if budget.take(rng, 1, 2) {
            // A companion hanging off this one and z0.
            let t = fresh(1)[0];
            e.add(t, s);
            e.add(t, z0);
        }
    }
    let mut is = Vec::new();
    if !x1s.is_empty() && budget.take(rng, 1, 2) {
        let s = fresh(1)[0];
        e.add(s, *x1s.choose(rng).unwrap());
        e.add(s, z0);
        is.push(s);
    }
    let mut ks = Vec::new();
    if !y1s.is_empty() && budget.take(rng, 1, 2) {
        let s = fresh(1)[0];
        e.add(s, *y1s.choose(rng).unwrap());
        e.add(s, z0);
        ks.push(s);
    }
    // Deep outer vertices reached through the previous layer.
    if !ks.is_empty() && budget.take(rng, 1, 1) {
        let s = fresh(1)[0];
        e.add(s, ks[0]);
        e.add(s, z0);
    }
    if !is.is_empty() && budget.take(rng, 1, 1) {
        let s = fresh(1)[0];
        e.add(s, is[0]);
        e.add(s, z0);
    }
    // A vertex whose whole neighborhood lies among the common neighbors.
    if zs.len() >= 2 && budget.take(rng, 1, 1) {
        let s = fresh(1)[0];
        e.add(s, zs[0]);
        e.add(s, zs[1]);
    }
    // A clustered pair of deep outer vertices.
    if budget.take(rng, 2, 1) {
        let p = fresh(2);
        e.add(p[0], p[1]);
        e.add(p[0], z0);
        e.add(p[1], z0);
    }

    UndirectedGraph::new(next, e.0).expect("candidate is well-formed")
}

/// Like [`random_class_instance`] but with no common neighbor of x and y:
/// the two sides are joined by a matching of crossing edges instead, so the
/// partition's middle cells all come out empty.
pub fn random_case2_instance(rng: &mut impl Rng, n_max: u32) -> UndirectedGraph {
    let n_max = n_max.max(8);
    let params = ClassParams::new(3, 4, 1).expect("valid params");
    loop {
        let g = case2_candidate(rng, n_max);
        if find_adjacent_degree2_pair(&g).is_some()
            && in_class(&g, params).map(|r| r.member).unwrap_or(false)
        {
            return g;
        }
    }
}

fn case2_candidate(rng: &mut impl Rng, n_max: u32) -> UndirectedGraph {
    let (u, v, x, y) = (0u32, 1, 2, 3);
    let mut e = EdgeSet::default();
    e.add(u, v);
    e.add(u, x);
    e.add(v, y);
    // The hubs must stay adjacent: otherwise losing a hub edge of u or v
    // strands that endpoint five steps from the far side.
    e.add(x, y);
    let mut next = 4u32;
    // Crossing pairs: a_i adjacent to x, b_i adjacent to y, a_i-b_i edge.
    // Chains inside each side keep every a_i and b_i two-connected to its
    // hub, so single deletions never isolate them.
    let pairs = rng.gen_range(2..=((n_max - 4) / 2).max(2).min(5));
    let mut abs = Vec::new();
    for _ in 0..pairs {
        let (a, b) = (next, next + 1);
        next += 2;
        e.add(x, a);
        e.add(y, b);
        e.add(a, b);
        if let Some(&(pa, pb)) = abs.last() {
            e.add(pa, a);
            e.add(pb, b);
        }
        abs.push((a, b));
    }
    let (a0, b0) = abs[0];
    // Outer vertices lean on the first crossing pair from both sides.
    let outer = rng.gen_range(0..=n_max.saturating_sub(next).min(3));
    for _ in 0..outer {
        let w = next;
        next += 1;
        e.add(w, a0);
        e.add(w, b0);
    }
    UndirectedGraph::new(next, e.0).expect("candidate is well-formed")
}

/// A random connected bridgeless graph with between 4 and `n_max` vertices.
pub fn random_bridgeless(rng: &mut impl Rng, n_max: u32) -> UndirectedGraph {
    let n_max = n_max.max(4);
    loop {
        let n = rng.gen_range(4..=n_max);
        let p = rng.gen_range(0.25..0.6);
        let edges: Vec<(Vertex, Vertex)> = (0..n)
            .flat_map(|a| ((a + 1)..n).map(move |b| (a, b)))
            .filter(|_| rng.gen_bool(p))
            .collect();
        if edges.is_empty() {
            continue;
        }
        let g = UndirectedGraph::new(n, edges).expect("random graph is well-formed");
        if g.is_connected() && g.is_bridgeless() {
            return g;
        }
    }
}

/// A valid two-step input: a hub, shell components of size at least 2 glued
/// to the hub, and clutter edges elsewhere.
pub fn random_two_step_instance(
    rng: &mut impl Rng,
) -> (UndirectedGraph, Vec<Vertex>, Vec<Vertex>) {
    let hub_size = rng.gen_range(1..=3u32);
    let shell_size = rng.gen_range(2..=8u32);
    let n = hub_size + shell_size + rng.gen_range(0..=2u32);
    let hub: Vec<Vertex> = (0..hub_size).collect();
    let shell: Vec<Vertex> = (hub_size..hub_size + shell_size).collect();
    let mut e = EdgeSet::default();
    // Pair up shell vertices so nobody is isolated in the shell.
    let mut prev: Option<Vertex> = None;
    for &w in &shell {
        match prev {
            None => prev = Some(w),
            Some(p) => {
                e.add(p, w);
                prev = None;
            }
        }
    }
    if let Some(p) = prev {
        // Odd count: attach the straggler to some earlier shell vertex.
        let other = shell[rng.gen_range(0..shell.len() - 1)];
        e.add(other, p);
    }
    // Every shell vertex gets at least one hub edge.
    for &w in &shell {
        e.add(hub[rng.gen_range(0..hub.len())], w);
    }
    // Random extra shell-shell and shell-hub edges.
    for _ in 0..rng.gen_range(0..=6) {
        let a = shell[rng.gen_range(0..shell.len())];
        let pool: Vec<Vertex> = hub.iter().chain(&shell).copied().filter(|&b| b != a).collect();
        let b = pool[rng.gen_range(0..pool.len())];
        e.add(a, b);
    }
    let g = UndirectedGraph::new(n, e.0).expect("instance is well-formed");
    (g, hub, shell)
}
