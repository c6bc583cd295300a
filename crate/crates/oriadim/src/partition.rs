//! The vertex-set partition behind the diameter-3 orientation scheme.
//!
//! Around an adjacent degree-2 pair `u, v` with outside neighbors `x, y`,
//! every other vertex is labeled by how its neighborhood meets the
//! neighborhoods of `x` and `y`. The orientation rules are stated purely in
//! terms of these labels.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::classes::DegreeTwoPair;
use crate::graph::{UndirectedGraph, Vertex};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PartitionError {
    #[error("vertex {0} has no neighbor next to x or next to y; input is not a valid diameter-3 instance")]
    Unassignable(Vertex),
    #[error("vertex {0} outside the core lacks a neighbor adjacent to x")]
    NoRouteToX(Vertex),
    #[error("vertex {0} in the outer shell is isolated within its shell")]
    ShellIsolated(Vertex),
    #[error("x and y have no common neighbor, yet mixed cells are non-empty (vertex {0})")]
    CaseConsistency(Vertex),
    #[error("hub {0} would have no outgoing or no incoming arc under the rule set")]
    DegenerateHub(Vertex),
}

/// Labels of the partition cells, in the fixed global order used to break
/// ties when orienting leftover edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Cell {
    U,
    V,
    X,
    Y,
    X1,
    X2,
    X3,
    Y1,
    Y2,
    Y3,
    Z,
    W,
    I,
    K,
    J1,
    J2,
    J3,
    J41,
    J42,
}

impl Cell {
    pub fn name(self) -> &'static str {
        match self {
            Cell::U => "u",
            Cell::V => "v",
            Cell::X => "x",
            Cell::Y => "y",
            Cell::X1 => "X1",
            Cell::X2 => "X2",
            Cell::X3 => "X3",
            Cell::Y1 => "Y1",
            Cell::Y2 => "Y2",
            Cell::Y3 => "Y3",
            Cell::Z => "Z",
            Cell::W => "W",
            Cell::I => "I",
            Cell::K => "K",
            Cell::J1 => "J1",
            Cell::J2 => "J2",
            Cell::J3 => "J3",
            Cell::J41 => "J4,1",
            Cell::J42 => "J4,2",
        }
    }
}

/// The complete labeling: four distinguished vertices plus fifteen disjoint
/// sets covering the rest of the vertex set exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    pub u: Vertex,
    pub v: Vertex,
    pub x: Vertex,
    pub y: Vertex,
    pub x1: Vec<Vertex>,
    pub x2: Vec<Vertex>,
    pub x3: Vec<Vertex>,
    pub y1: Vec<Vertex>,
    pub y2: Vec<Vertex>,
    pub y3: Vec<Vertex>,
    pub z: Vec<Vertex>,
    pub w: Vec<Vertex>,
    pub i: Vec<Vertex>,
    pub k: Vec<Vertex>,
    pub j1: Vec<Vertex>,
    pub j2: Vec<Vertex>,
    pub j3: Vec<Vertex>,
    pub j41: Vec<Vertex>,
    pub j42: Vec<Vertex>,
}

impl Partition {
    pub fn cells(&self) -> [(Cell, &[Vertex]); 15] {
        [
            (Cell::X1, self.x1.as_slice()),
            (Cell::X2, self.x2.as_slice()),
            (Cell::X3, self.x3.as_slice()),
            (Cell::Y1, self.y1.as_slice()),
            (Cell::Y2, self.y2.as_slice()),
            (Cell::Y3, self.y3.as_slice()),
            (Cell::Z, self.z.as_slice()),
            (Cell::W, self.w.as_slice()),
            (Cell::I, self.i.as_slice()),
            (Cell::K, self.k.as_slice()),
            (Cell::J1, self.j1.as_slice()),
            (Cell::J2, self.j2.as_slice()),
            (Cell::J3, self.j3.as_slice()),
            (Cell::J41, self.j41.as_slice()),
            (Cell::J42, self.j42.as_slice()),
        ]
    }

    pub fn members(&self, cell: Cell) -> &[Vertex] {
        match cell {
            Cell::U | Cell::V | Cell::X | Cell::Y => {
                unreachable!("distinguished vertices are not set cells")
            }
            Cell::X1 => &self.x1,
            Cell::X2 => &self.x2,
            Cell::X3 => &self.x3,
            Cell::Y1 => &self.y1,
            Cell::Y2 => &self.y2,
            Cell::Y3 => &self.y3,
            Cell::Z => &self.z,
            Cell::W => &self.w,
            Cell::I => &self.i,
            Cell::K => &self.k,
            Cell::J1 => &self.j1,
            Cell::J2 => &self.j2,
            Cell::J3 => &self.j3,
            Cell::J41 => &self.j41,
            Cell::J42 => &self.j42,
        }
    }

    /// Cell of a vertex; total over `0..n` for a valid partition.
    pub fn cell_of(&self, v: Vertex) -> Cell {
        if v == self.u {
            return Cell::U;
        }
        if v == self.v {
            return Cell::V;
        }
        if v == self.x {
            return Cell::X;
        }
        if v == self.y {
            return Cell::Y;
        }
        for (cell, members) in self.cells() {
            if members.binary_search(&v).is_ok() {
                return cell;
            }
        }
        unreachable!("vertex {v} not assigned to any cell")
    }

    pub fn cell_sizes(&self) -> Vec<(&'static str, usize)> {
        self.cells()
            .into_iter()
            .map(|(c, m)| (c.name(), m.len()))
            .collect()
    }

    /// Totality check: every vertex of a graph on `n` vertices lies in
    /// exactly one cell.
    pub fn is_total(&self, n: u32) -> bool {
        let mut seen = vec![0usize; n as usize];
        for v in [self.u, self.v, self.x, self.y] {
            seen[v as usize] += 1;
        }
        for (_, members) in self.cells() {
            for &v in members {
                seen[v as usize] += 1;
            }
        }
        seen.iter().all(|&c| c == 1)
    }
}

/// Computes the partition in dependency order: the core around `u, v, x, y`
/// first, then the mixed cells, then the splits of the `x`-side, `y`-side,
/// and outer cells.
///
/// Preconditions (checked upstream): the pair comes from
/// [`find_adjacent_degree2_pair`](crate::classes::find_adjacent_degree2_pair)
/// and the graph is connected, bridgeless, with diameter at most 3. A
/// structural error here means the input violates those assumptions and the
/// caller should fall back to exact search.
pub fn partition_vertices(
    g: &UndirectedGraph,
    pair: &DegreeTwoPair,
) -> Result<Partition, PartitionError> {
    let DegreeTwoPair { u, v, x, y } = *pair;
    let special = [u, v, x, y];
    let nx: BTreeSet<Vertex> = g.neighbors(x).iter().copied().collect();
    let ny: BTreeSet<Vertex> = g.neighbors(y).iter().copied().collect();

    let x_side: BTreeSet<Vertex> = nx
        .difference(&ny)
        .copied()
        .filter(|s| !special.contains(s))
        .collect();
    let y_side: BTreeSet<Vertex> = ny
        .difference(&nx)
        .copied()
        .filter(|s| !special.contains(s))
        .collect();
    let z: BTreeSet<Vertex> = nx
        .intersection(&ny)
        .copied()
        .filter(|s| !special.contains(s))
        .collect();

    let mut core: BTreeSet<Vertex> = special.into_iter().collect();
    core.extend(&x_side);
    core.extend(&y_side);
    core.extend(&z);

    let meets = |s: Vertex, set: &BTreeSet<Vertex>| -> bool {
        g.neighbors(s).iter().any(|w| set.contains(w))
    };

    // Mixed cells, disjoint by priority: W, then I, then K, then the rest.
    let mut w_cell = Vec::new();
    let mut i_cell = Vec::new();
    let mut k_cell = Vec::new();
    let mut j_all = Vec::new();
    for s in 0..g.vertex_count() {
        if core.contains(&s) {
            continue;
        }
        let in_x = meets(s, &x_side);
        let in_y = meets(s, &y_side);
        let in_z = meets(s, &z);
        // Diameter 3 forces a route through both hubs' neighborhoods.
        if !(in_x || in_z) || !(in_y || in_z) {
            return Err(PartitionError::Unassignable(s));
        }
        if in_x && in_y {
            w_cell.push(s);
        } else if in_x && in_z {
            i_cell.push(s);
        } else if in_y && in_z {
            k_cell.push(s);
        } else {
            j_all.push(s);
        }
    }

    if z.is_empty() {
        if let Some(&s) = i_cell.first().or(k_cell.first()).or(j_all.first()) {
            return Err(PartitionError::CaseConsistency(s));
        }
    }

    let w_set: BTreeSet<Vertex> = w_cell.iter().copied().collect();
    let i_set: BTreeSet<Vertex> = i_cell.iter().copied().collect();
    let k_set: BTreeSet<Vertex> = k_cell.iter().copied().collect();
    let j_set: BTreeSet<Vertex> = j_all.iter().copied().collect();

    // x-side split: X1 reaches across; X2 is isolated among the remainder;
    // X3 is the rest and is never isolated among the remainder.
    let split_side = |side: &BTreeSet<Vertex>,
                      across: &BTreeSet<Vertex>,
                      mixed: &BTreeSet<Vertex>|
     -> (Vec<Vertex>, Vec<Vertex>, Vec<Vertex>) {
        let first: BTreeSet<Vertex> = side
            .iter()
            .copied()
            .filter(|&s| {
                g.neighbors(s).iter().any(|t| {
                    across.contains(t) || z.contains(t) || mixed.contains(t) || w_set.contains(t)
                })
            })
            .collect();
        let rest: BTreeSet<Vertex> = side.difference(&first).copied().collect();
        let mut second = Vec::new();
        let mut third = Vec::new();
        for &s in &rest {
            if g.neighbors(s).iter().any(|t| rest.contains(t)) {
                third.push(s);
            } else {
                second.push(s);
            }
        }
        (first.into_iter().collect(), second, third)
    };
    let (x1, x2, x3) = split_side(&x_side, &y_side, &i_set);
    let (y1, y2, y3) = split_side(&y_side, &x_side, &k_set);

    // Outer split by which mixed cell a vertex can hand off to, in priority
    // order; the remainder splits by whether all neighbors sit in Z.
    let mut j1 = Vec::new();
    let mut j2 = Vec::new();
    let mut j3 = Vec::new();
    let mut j41 = Vec::new();
    let mut j42 = Vec::new();
    for &s in &j_all {
        // Every outer vertex needs a neighbor adjacent to x; inside the
        // outer region that neighbor can only sit in Z.
        if !meets(s, &z) {
            return Err(PartitionError::NoRouteToX(s));
        }
        if meets(s, &k_set) {
            j1.push(s);
        } else if meets(s, &i_set) {
            j2.push(s);
        } else if meets(s, &w_set) {
            j3.push(s);
        } else if g.neighbors(s).iter().all(|t| z.contains(t)) {
            j41.push(s);
        } else {
            j42.push(s);
        }
    }
    // The shell orientation needs every J4,2 vertex to have a J4,2
    // neighbor; its non-Z neighbors must be outer vertices, but they could
    // land in J1..J3, which breaks the shell hypothesis.
    let j42_set: BTreeSet<Vertex> = j42.iter().copied().collect();
    for &s in &j42 {
        let ok = g.neighbors(s).iter().any(|t| j42_set.contains(t));
        if !ok {
            return Err(PartitionError::ShellIsolated(s));
        }
        if g.neighbors(s).iter().any(|t| {
            !z.contains(t) && !j_set.contains(t)
        }) {
            return Err(PartitionError::Unassignable(s));
        }
    }

    let partition = Partition {
        u,
        v,
        x,
        y,
        x1,
        x2,
        x3,
        y1,
        y2,
        y3,
        z: z.iter().copied().collect(),
        w: w_cell,
        i: i_cell,
        k: k_cell,
        j1,
        j2,
        j3,
        j41,
        j42,
    };

    // Hub outlet check: the rule set gives y out-arcs only toward its own
    // side and Z, and x in-arcs only from its side and Z. If either is
    // empty the oriented result cannot be strong; route to fallback.
    if partition.y1.is_empty() && partition.y3.is_empty() && partition.z.is_empty() {
        return Err(PartitionError::DegenerateHub(y));
    }
    if partition.x1.is_empty() && partition.x3.is_empty() && partition.z.is_empty() {
        return Err(PartitionError::DegenerateHub(x));
    }

    debug_assert!(partition.is_total(g.vertex_count()));
    Ok(partition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::classes::find_adjacent_degree2_pair;

    fn cycle(n: u32) -> UndirectedGraph {
        UndirectedGraph::new(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
    }

    #[test]
    fn c5_partition_is_a_single_common_neighbor() {
        let g = cycle(5);
        let pair = find_adjacent_degree2_pair(&g).unwrap();
        assert_eq!((pair.u, pair.v, pair.x, pair.y), (0, 1, 4, 2));
        let p = partition_vertices(&g, &pair).unwrap();
        assert_eq!(p.z, vec![3]);
        for (cell, members) in p.cells() {
            if cell != Cell::Z {
                assert!(members.is_empty(), "{:?} should be empty", cell);
            }
        }
        assert!(p.is_total(5));
    }

    #[test]
    fn vertex_without_route_is_unassignable() {
        // 0-1 is the degree-2 pair (x = 2, y = 3); vertex 6 only touches the
        // y-side, so it has no neighbor next to x, which contradicts
        // diameter 3.
        let g = UndirectedGraph::new(
            7,
            [(0, 1), (0, 2), (1, 3), (2, 3), (2, 4), (3, 5), (4, 5), (5, 6)],
        )
        .unwrap();
        let pair = DegreeTwoPair { u: 0, v: 1, x: 2, y: 3 };
        match partition_vertices(&g, &pair) {
            Err(PartitionError::Unassignable(_)) | Err(PartitionError::NoRouteToX(_)) => {}
            other => panic!("expected structural error, got {other:?}"),
        }
    }

    #[test]
    fn mixed_vertex_lands_in_w() {
        // u=0, v=1, x=2, y=3; 4 next to x only, 5 next to y only, 6 next to
        // both 4 and 5.
        let g = UndirectedGraph::new(
            7,
            [
                (0, 1),
                (0, 2),
                (1, 3),
                (2, 3),
                (2, 4),
                (3, 5),
                (4, 6),
                (5, 6),
                (4, 5),
            ],
        )
        .unwrap();
        let pair = DegreeTwoPair { u: 0, v: 1, x: 2, y: 3 };
        let p = partition_vertices(&g, &pair).unwrap();
        assert_eq!(p.w, vec![6]);
        assert_eq!(p.x1, vec![4]);
        assert_eq!(p.y1, vec![5]);
        assert!(p.is_total(7));
    }

    #[test]
    fn totality_on_a_rich_instance() {
        // Hub pair with a shared neighbor set and one vertex of each outer
        // flavor.
        let mut edges = vec![(0, 1), (0, 2), (1, 3)];
        // z vertices 4, 5 adjacent to both hubs.
        edges.extend([(2, 4), (3, 4), (2, 5), (3, 5)]);
        // x-side 6 (next to z), y-side 7 (next to z).
        edges.extend([(2, 6), (6, 4), (3, 7), (7, 4)]);
        // w 8 next to 6 and 7 and the shared z.
        edges.extend([(6, 8), (7, 8), (4, 8)]);
        // i 9 next to 6 and z; k 10 next to 7 and z.
        edges.extend([(6, 9), (4, 9), (7, 10), (4, 10)]);
        // j1 11 next to k and z; j2 12 next to i and z; j3 13 next to w and z.
        edges.extend([(10, 11), (4, 11), (9, 12), (4, 12), (8, 13), (4, 13)]);
        // j41 14 with both neighbors in z; j42 pair 15, 16.
        edges.extend([(4, 14), (5, 14), (15, 16), (4, 15), (4, 16)]);
        let g = UndirectedGraph::new(17, edges).unwrap();
        let pair = DegreeTwoPair { u: 0, v: 1, x: 2, y: 3 };
        let p = partition_vertices(&g, &pair).unwrap();
        assert!(p.is_total(17));
        assert_eq!(p.z, vec![4, 5]);
        assert_eq!(p.w, vec![8]);
        assert_eq!(p.i, vec![9]);
        assert_eq!(p.k, vec![10]);
        assert_eq!(p.j1, vec![11]);
        assert_eq!(p.j2, vec![12]);
        assert_eq!(p.j3, vec![13]);
        assert_eq!(p.j41, vec![14]);
        assert_eq!(p.j42, vec![15, 16]);
        assert_eq!(p.x1, vec![6]);
        assert_eq!(p.y1, vec![7]);
    }

    #[test]
    fn empty_z_with_outer_vertices_is_inconsistent() {
        // Outer vertex 6 adjacent to x-side 4 and y-side 5 is fine (W), but
        // an outer vertex with only z-routes cannot exist when z is empty;
        // build one adjacent only to another outer vertex.
        let g = UndirectedGraph::new(
            8,
            [
                (0, 1),
                (0, 2),
                (1, 3),
                (2, 4),
                (3, 5),
                (4, 6),
                (5, 6),
                (4, 5),
                (6, 7),
                (5, 7),
            ],
        )
        .unwrap();
        let pair = DegreeTwoPair { u: 0, v: 1, x: 2, y: 3 };
        // Vertex 7 neighbors 6 (outer) and 5 (y-side): no x-route.
        match partition_vertices(&g, &pair) {
            Err(PartitionError::Unassignable(7)) => {}
            other => panic!("expected Unassignable(7), got {other:?}"),
        }
    }
}
