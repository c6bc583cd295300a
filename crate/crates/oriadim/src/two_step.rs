//! Orients the edges inside a shell set and between the shell and a hub set
//! so that every shell vertex both reaches the hub and is reached from the
//! hub within two steps.
//!
//! The construction: in each component of the shell-induced subgraph, take a
//! BFS spanning tree and properly 2-color it. Tree edges point from the
//! second color to the first; first-color vertices send all their hub edges
//! toward the hub, second-color vertices receive theirs from the hub. Every
//! tree vertex has a neighbor of the opposite color (components are
//! non-trivial), which yields both bounds.

use std::collections::{BTreeSet, VecDeque};

use thiserror::Error;

use crate::graph::{UndirectedGraph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TwoStepError {
    #[error("hub and shell overlap at vertex {0}")]
    Overlap(Vertex),
    #[error("shell vertex {0} has no neighbor in the hub")]
    NoHubNeighbor(Vertex),
    #[error("shell vertex {0} is isolated within the shell")]
    TrivialComponent(Vertex),
    #[error("orientation does not cover exactly the instance edge set")]
    WrongEdgeSet,
    #[error("vertex {vertex} out of range for host with {n} vertices")]
    OutOfRange { vertex: Vertex, n: u32 },
}

/// An instance over a host graph: a hub set `S` and a disjoint shell set
/// contained in the neighborhood of the hub, whose induced subgraph has no
/// single-vertex components.
#[derive(Debug, Clone)]
pub struct TwoStepInstance<'a> {
    pub host: &'a UndirectedGraph,
    pub hub: BTreeSet<Vertex>,
    pub shell: BTreeSet<Vertex>,
}

impl<'a> TwoStepInstance<'a> {
    pub fn new(
        host: &'a UndirectedGraph,
        hub: impl IntoIterator<Item = Vertex>,
        shell: impl IntoIterator<Item = Vertex>,
    ) -> Self {
        Self {
            host,
            hub: hub.into_iter().collect(),
            shell: shell.into_iter().collect(),
        }
    }

    fn validate(&self) -> Result<(), TwoStepError> {
        let n = self.host.vertex_count();
        for &v in self.hub.iter().chain(&self.shell) {
            if v >= n {
                return Err(TwoStepError::OutOfRange { vertex: v, n });
            }
        }
        if let Some(&v) = self.hub.intersection(&self.shell).next() {
            return Err(TwoStepError::Overlap(v));
        }
        for &v in &self.shell {
            if !self.host.neighbors(v).iter().any(|w| self.hub.contains(w)) {
                return Err(TwoStepError::NoHubNeighbor(v));
            }
            if !self.host.neighbors(v).iter().any(|w| self.shell.contains(w)) {
                return Err(TwoStepError::TrivialComponent(v));
            }
        }
        Ok(())
    }

    /// Edges of the instance: shell-internal edges plus shell-hub edges.
    pub fn edge_set(&self) -> BTreeSet<(Vertex, Vertex)> {
        self.host
            .edges()
            .iter()
            .copied()
            .filter(|&(a, b)| {
                (self.shell.contains(&a) && self.shell.contains(&b))
                    || (self.shell.contains(&a) && self.hub.contains(&b))
                    || (self.hub.contains(&a) && self.shell.contains(&b))
            })
            .collect()
    }
}

/// Orients the instance edges; returns the arc list.
pub fn orient_two_step(inst: &TwoStepInstance) -> Result<Vec<(Vertex, Vertex)>, TwoStepError> {
    inst.validate()?;
    let mut arcs = Vec::new();
    // Color of each shell vertex: Some(true) for the first color.
    let mut color: std::collections::BTreeMap<Vertex, bool> = Default::default();
    let mut tree_edges: BTreeSet<(Vertex, Vertex)> = BTreeSet::new();

    for &root in &inst.shell {
        if color.contains_key(&root) {
            continue;
        }
        // BFS spanning tree from the smallest unvisited id, properly
        // 2-colored along tree edges.
        color.insert(root, true);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let cv = color[&v];
            for &w in inst.host.neighbors(v) {
                if inst.shell.contains(&w) && !color.contains_key(&w) {
                    color.insert(w, !cv);
                    tree_edges.insert((v.min(w), v.max(w)));
                    queue.push_back(w);
                }
            }
        }
    }

    for (a, b) in inst.edge_set() {
        let arc = match (inst.shell.contains(&a), inst.shell.contains(&b)) {
            (true, true) => {
                let (ca, cb) = (color[&a], color[&b]);
                if tree_edges.contains(&(a, b)) || ca != cb {
                    // Point from the second color to the first.
                    if ca {
                        (b, a)
                    } else {
                        (a, b)
                    }
                } else {
                    // Monochromatic non-tree edge: lower id to higher.
                    (a, b)
                }
            }
            // Shell-hub edge: direction follows the shell endpoint's color.
            (true, false) => {
                if color[&a] {
                    (a, b)
                } else {
                    (b, a)
                }
            }
            (false, true) => {
                if color[&b] {
                    (b, a)
                } else {
                    (a, b)
                }
            }
            (false, false) => unreachable!("edge_set only yields shell-incident edges"),
        };
        arcs.push(arc);
    }
    Ok(arcs)
}

/// Outcome of checking the two distance bounds for every shell vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TwoStepCheck {
    Ok,
    /// A shell vertex violating one bound; `toward_hub` tells which
    /// direction failed.
    Violation { vertex: Vertex, toward_hub: bool },
}

/// Verifies that the given arcs direct exactly the instance edges and that
/// every shell vertex is within set-distance 2 of the hub in both
/// directions, using the instance arcs only.
pub fn verify_two_step(
    inst: &TwoStepInstance,
    arcs: &[(Vertex, Vertex)],
) -> Result<TwoStepCheck, TwoStepError> {
    let expected = inst.edge_set();
    let covered: BTreeSet<(Vertex, Vertex)> = arcs
        .iter()
        .map(|&(a, b)| (a.min(b), a.max(b)))
        .collect();
    if covered != expected || covered.len() != arcs.len() {
        return Err(TwoStepError::WrongEdgeSet);
    }

    let n = inst.host.vertex_count() as usize;
    let mut out = vec![Vec::new(); n];
    let mut rin = vec![Vec::new(); n];
    for &(from, to) in arcs {
        out[from as usize].push(to);
        rin[to as usize].push(from);
    }
    let set_dist = |adj: &[Vec<Vertex>]| -> Vec<u32> {
        // Multi-source BFS from the hub.
        let mut dist = vec![u32::MAX; n];
        let mut queue: VecDeque<Vertex> = VecDeque::new();
        for &s in &inst.hub {
            dist[s as usize] = 0;
            queue.push_back(s);
        }
        while let Some(v) = queue.pop_front() {
            for &w in &adj[v as usize] {
                if dist[w as usize] == u32::MAX {
                    dist[w as usize] = dist[v as usize] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    };
    let from_hub = set_dist(&out);
    let to_hub = set_dist(&rin);
    for &w in &inst.shell {
        if from_hub[w as usize] > 2 {
            return Ok(TwoStepCheck::Violation { vertex: w, toward_hub: false });
        }
        if to_hub[w as usize] > 2 {
            return Ok(TwoStepCheck::Violation { vertex: w, toward_hub: true });
        }
    }
    Ok(TwoStepCheck::Ok)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn triangle_instance_meets_both_bounds() {
        let host = UndirectedGraph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let inst = TwoStepInstance::new(&host, [0], [1, 2]);
        let arcs = orient_two_step(&inst).unwrap();
        assert_eq!(verify_two_step(&inst, &arcs).unwrap(), TwoStepCheck::Ok);
    }

    #[test]
    fn isolated_shell_vertex_is_rejected() {
        let host = UndirectedGraph::new(2, [(0, 1)]).unwrap();
        let inst = TwoStepInstance::new(&host, [0], [1]);
        assert_eq!(
            orient_two_step(&inst).unwrap_err(),
            TwoStepError::TrivialComponent(1)
        );
    }

    #[test]
    fn shell_outside_hub_neighborhood_is_rejected() {
        let host = UndirectedGraph::new(4, [(0, 1), (1, 2), (2, 3)]).unwrap();
        let inst = TwoStepInstance::new(&host, [0], [2, 3]);
        assert_eq!(
            orient_two_step(&inst).unwrap_err(),
            TwoStepError::NoHubNeighbor(2)
        );
    }

    #[test]
    fn two_component_shell() {
        let host = UndirectedGraph::new(
            6,
            [(0, 2), (0, 3), (1, 4), (1, 5), (2, 3), (4, 5)],
        )
        .unwrap();
        let inst = TwoStepInstance::new(&host, [0, 1], [2, 3, 4, 5]);
        let arcs = orient_two_step(&inst).unwrap();
        assert_eq!(verify_two_step(&inst, &arcs).unwrap(), TwoStepCheck::Ok);
    }

    #[test]
    fn bad_orientation_is_caught_with_witness() {
        let host = UndirectedGraph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let inst = TwoStepInstance::new(&host, [0], [1, 2]);
        // Everything flows into the hub: nothing is reachable from it.
        let check = verify_two_step(&inst, &[(1, 0), (2, 0), (1, 2)]).unwrap();
        assert_eq!(check, TwoStepCheck::Violation { vertex: 1, toward_hub: false });
    }

    #[test]
    fn empty_shell_is_vacuously_fine() {
        let host = UndirectedGraph::new(2, [(0, 1)]).unwrap();
        let inst = TwoStepInstance::new(&host, [0], []);
        let arcs = orient_two_step(&inst).unwrap();
        assert!(arcs.is_empty());
        assert_eq!(verify_two_step(&inst, &arcs).unwrap(), TwoStepCheck::Ok);
    }

    #[test]
    fn wrong_edge_set_is_an_input_error() {
        let host = UndirectedGraph::new(3, [(0, 1), (0, 2), (1, 2)]).unwrap();
        let inst = TwoStepInstance::new(&host, [0], [1, 2]);
        assert_eq!(
            verify_two_step(&inst, &[(0, 1)]).unwrap_err(),
            TwoStepError::WrongEdgeSet
        );
    }

    /// Builds a random valid instance: a hub, shell components of size >= 2
    /// glued to the hub, plus clutter edges elsewhere.
    pub(crate) fn random_instance(
        rng: &mut impl Rng,
    ) -> (UndirectedGraph, Vec<Vertex>, Vec<Vertex>) {
        let hub_size = rng.gen_range(1..=3u32);
        let shell_size = rng.gen_range(2..=8u32);
        let n = hub_size + shell_size + rng.gen_range(0..=2u32);
        let hub: Vec<Vertex> = (0..hub_size).collect();
        let shell: Vec<Vertex> = (hub_size..hub_size + shell_size).collect();
        let mut edges = std::collections::BTreeSet::new();
        // Pair up shell vertices so nobody is isolated in the shell.
        let mut prev: Option<Vertex> = None;
        for &w in &shell {
            match prev {
                None => prev = Some(w),
                Some(p) => {
                    edges.insert((p, w));
                    prev = None;
                }
            }
        }
        if let Some(p) = prev {
            // Odd count: attach the straggler to some shell vertex.
            let other = shell[rng.gen_range(0..shell.len() - 1)];
            edges.insert((other.min(p), other.max(p)));
        }
        // Every shell vertex gets at least one hub edge.
        for &w in &shell {
            let s = hub[rng.gen_range(0..hub.len())];
            edges.insert((s, w));
        }
        // Random extra shell-shell and shell-hub edges.
        for _ in 0..rng.gen_range(0..=6) {
            let a = shell[rng.gen_range(0..shell.len())];
            let pool: Vec<Vertex> = hub.iter().chain(&shell).copied().filter(|&b| b != a).collect();
            let b = pool[rng.gen_range(0..pool.len())];
            edges.insert((a.min(b), a.max(b)));
        }
        let g = UndirectedGraph::new(n, edges).unwrap();
        (g, hub, shell)
    }

    #[test]
    fn randomized_instances_all_satisfy_contract() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..500 {
            let (g, hub, shell) = random_instance(&mut rng);
            let inst = TwoStepInstance::new(&g, hub, shell);
            let arcs = orient_two_step(&inst).expect("valid instance must orient");
            assert_eq!(verify_two_step(&inst, &arcs).unwrap(), TwoStepCheck::Ok);
            // No arc may touch edges outside the instance.
            for (a, b) in &arcs {
                assert!(
                    inst.shell.contains(a) || inst.shell.contains(b),
                    "arc ({a}, {b}) outside instance"
                );
            }
        }
    }
}
