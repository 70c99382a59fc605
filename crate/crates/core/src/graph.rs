//! Bipartite graphs with two colored vertex classes.
//!
//! Vertices are indexed `0..v_count` on the V side and `0..w_count` on the
//! W side. Vertex subsets are bitmasks over a single side, which keeps the
//! recursion engines' memo keys exact: a subgraph produced by deletions is
//! identified by the masks of surviving original indices, never by a
//! re-canonicalized graph.

use crate::error::{Error, Result};

/// Which of the two color classes a vertex or vertex set lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Side {
    V,
    W,
}

impl Side {
    pub fn opposite(self) -> Side {
        match self {
            Side::V => Side::W,
            Side::W => Side::V,
        }
    }
}

/// A subset of one side's vertices, stored as a bitmask.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct VertexSet {
    side: Side,
    mask: u64,
}

impl VertexSet {
    pub fn empty(side: Side) -> Self {
        VertexSet { side, mask: 0 }
    }

    pub fn from_mask(side: Side, mask: u64) -> Self {
        VertexSet { side, mask }
    }

    /// Panics if an index does not fit in the 64-bit mask.
    pub fn from_indices(side: Side, indices: &[u32]) -> Self {
        let mut mask = 0u64;
        for &i in indices {
            assert!(i < 64, "vertex index {i} out of mask range");
            mask |= 1 << i;
        }
        VertexSet { side, mask }
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, i: u32) -> bool {
        i < 64 && self.mask & (1 << i) != 0
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        self.side == other.side && self.mask & !other.mask == 0
    }

    /// Member indices in ascending order.
    pub fn members(&self) -> impl Iterator<Item = u32> + '_ {
        let mut rest = self.mask;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros();
                rest &= rest - 1;
                Some(i)
            }
        })
    }
}

/// Optional display names, one per vertex of each side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Labels {
    pub v: Vec<String>,
    pub w: Vec<String>,
}

/// Largest supported class size; the recursions and enumerations are
/// exponential, so this is a desk-scale tool by design.
pub const MAX_SIDE: usize = 64;

/// A simple bipartite graph. Immutable after construction; every operation
/// returns a new value, so sharing across threads is safe.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    v_count: usize,
    w_count: usize,
    edges: Vec<(u32, u32)>,
    adj_v: Vec<u64>,
    adj_w: Vec<u64>,
    labels: Option<Labels>,
}

impl BipartiteGraph {
    /// Builds a graph from an edge list. Edges are stored sorted; duplicate
    /// edges are rejected rather than merged, and indices are range-checked.
    pub fn new(
        v_count: usize,
        w_count: usize,
        edges: impl IntoIterator<Item = (u32, u32)>,
    ) -> Result<Self> {
        if v_count > MAX_SIDE || w_count > MAX_SIDE {
            return Err(Error::ResourceLimit(format!(
                "at most {MAX_SIDE} vertices per side are supported, got {v_count}x{w_count}"
            )));
        }
        let mut edges: Vec<(u32, u32)> = edges.into_iter().collect();
        for &(i, j) in &edges {
            if (i as usize) >= v_count || (j as usize) >= w_count {
                return Err(Error::InvalidEdge {
                    i,
                    j,
                    v_count,
                    w_count,
                });
            }
        }
        edges.sort_unstable();
        if let Some(k) = (1..edges.len()).find(|&k| edges[k] == edges[k - 1]) {
            let (i, j) = edges[k];
            return Err(Error::ParallelEdge { i, j });
        }
        let mut adj_v = vec![0u64; v_count];
        let mut adj_w = vec![0u64; w_count];
        for &(i, j) in &edges {
            adj_v[i as usize] |= 1 << j;
            adj_w[j as usize] |= 1 << i;
        }
        Ok(BipartiteGraph {
            v_count,
            w_count,
            edges,
            adj_v,
            adj_w,
            labels: None,
        })
    }

    /// The complete bipartite graph K_{v_count, w_count}.
    pub fn complete(v_count: usize, w_count: usize) -> Result<Self> {
        let edges = (0..v_count as u32)
            .flat_map(|i| (0..w_count as u32).map(move |j| (i, j)));
        Self::new(v_count, w_count, edges)
    }

    pub fn with_labels(mut self, labels: Labels) -> Result<Self> {
        if labels.v.len() != self.v_count || labels.w.len() != self.w_count {
            return Err(Error::InvalidInput(
                "label vectors must match the class sizes".into(),
            ));
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn labels(&self) -> Option<&Labels> {
        self.labels.as_ref()
    }

    pub fn v_count(&self) -> usize {
        self.v_count
    }

    pub fn w_count(&self) -> usize {
        self.w_count
    }

    pub fn vertex_count(&self) -> usize {
        self.v_count + self.w_count
    }

    pub fn side_count(&self, side: Side) -> usize {
        match side {
            Side::V => self.v_count,
            Side::W => self.w_count,
        }
    }

    /// Edges as (V index, W index) pairs, sorted ascending.
    pub fn edges(&self) -> &[(u32, u32)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn has_edge(&self, i: u32, j: u32) -> bool {
        (i as usize) < self.v_count && self.adj_v[i as usize] & (1 << j) != 0
    }

    /// Neighbor mask (on the opposite side) of one vertex.
    pub fn adjacency(&self, side: Side, i: u32) -> u64 {
        match side {
            Side::V => self.adj_v[i as usize],
            Side::W => self.adj_w[i as usize],
        }
    }

    pub fn degree(&self, side: Side, i: u32) -> usize {
        self.adjacency(side, i).count_ones() as usize
    }

    /// Every vertex of one side, as a set.
    pub fn full_set(&self, side: Side) -> VertexSet {
        VertexSet::from_mask(side, full_mask(self.side_count(side)))
    }

    fn assert_valid(&self, s: &VertexSet) {
        let n = self.side_count(s.side);
        assert!(
            s.mask & !full_mask(n) == 0,
            "vertex set has members outside the {n}-vertex side"
        );
    }

    /// Union of neighborhoods of the members of `s`, on the opposite side.
    pub fn neighborhood(&self, s: &VertexSet) -> VertexSet {
        self.assert_valid(s);
        let mut mask = 0u64;
        for i in s.members() {
            mask |= self.adjacency(s.side, i);
        }
        VertexSet::from_mask(s.side.opposite(), mask)
    }

    /// True iff `|s| >= |N(s)|`.
    pub fn is_nonexpanding(&self, s: &VertexSet) -> bool {
        s.len() >= self.neighborhood(s).len()
    }

    /// Deletes the vertices in `j` and all incident edges. The remaining
    /// indices are re-compacted; the returned maps recover original indices.
    pub fn delete_vertices(&self, j: &VertexSet) -> Subgraph {
        self.assert_valid(j);
        let keep = |side: Side, count: usize| -> Vec<u32> {
            (0..count as u32)
                .filter(|&i| side != j.side() || !j.contains(i))
                .collect()
        };
        let v_map = keep(Side::V, self.v_count);
        let w_map = keep(Side::W, self.w_count);
        self.induced(v_map, w_map)
    }

    /// Removes the edges in `f`, keeping every vertex.
    pub fn delete_edges(&self, f: &[(u32, u32)]) -> Result<Self> {
        let mut keep = self.edges.clone();
        for &(i, j) in f {
            match keep.iter().position(|&e| e == (i, j)) {
                Some(k) => {
                    keep.remove(k);
                }
                None => {
                    return Err(Error::InvalidEdge {
                        i,
                        j,
                        v_count: self.v_count,
                        w_count: self.w_count,
                    })
                }
            }
        }
        let mut g = Self::new(self.v_count, self.w_count, keep)
            .expect("edge subset of a valid graph is valid");
        g.labels = self.labels.clone();
        Ok(g)
    }

    /// Connected components in discovery order (V indices scanned first);
    /// isolated vertices appear as single-vertex components.
    pub fn components(&self) -> Vec<Subgraph> {
        let mut seen_v = 0u64;
        let mut seen_w = 0u64;
        let mut out = Vec::new();
        let starts = (0..self.v_count as u32)
            .map(|i| (Side::V, i))
            .chain((0..self.w_count as u32).map(|j| (Side::W, j)));
        for (side, i) in starts {
            let seen = match side {
                Side::V => seen_v,
                Side::W => seen_w,
            };
            if seen & (1 << i) != 0 {
                continue;
            }
            let (cv, cw) = self.explore(side, i);
            seen_v |= cv;
            seen_w |= cw;
            let v_map = VertexSet::from_mask(Side::V, cv).members().collect();
            let w_map = VertexSet::from_mask(Side::W, cw).members().collect();
            out.push(self.induced(v_map, w_map));
        }
        out
    }

    // BFS over adjacency masks from a single start vertex.
    fn explore(&self, side: Side, start: u32) -> (u64, u64) {
        let mut v_mask = 0u64;
        let mut w_mask = 0u64;
        match side {
            Side::V => v_mask |= 1 << start,
            Side::W => w_mask |= 1 << start,
        }
        loop {
            let mut grew = false;
            for i in VertexSet::from_mask(Side::V, v_mask).members() {
                let add = self.adj_v[i as usize] & !w_mask;
                if add != 0 {
                    w_mask |= add;
                    grew = true;
                }
            }
            for j in VertexSet::from_mask(Side::W, w_mask).members() {
                let add = self.adj_w[j as usize] & !v_mask;
                if add != 0 {
                    v_mask |= add;
                    grew = true;
                }
            }
            if !grew {
                return (v_mask, w_mask);
            }
        }
    }

    /// Exchanges the two color classes.
    pub fn swap_sides(&self) -> Self {
        let edges: Vec<(u32, u32)> = self.edges.iter().map(|&(i, j)| (j, i)).collect();
        let mut g = Self::new(self.w_count, self.v_count, edges)
            .expect("transposed edges of a valid graph are valid");
        g.labels = self.labels.as_ref().map(|l| Labels {
            v: l.w.clone(),
            w: l.v.clone(),
        });
        g
    }

    // Induced subgraph on the given original indices (ascending).
    fn induced(&self, v_map: Vec<u32>, w_map: Vec<u32>) -> Subgraph {
        let v_new: std::collections::HashMap<u32, u32> = v_map
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new as u32))
            .collect();
        let w_new: std::collections::HashMap<u32, u32> = w_map
            .iter()
            .enumerate()
            .map(|(new, &old)| (old, new as u32))
            .collect();
        let edges: Vec<(u32, u32)> = self
            .edges
            .iter()
            .filter_map(|(i, j)| Some((*v_new.get(i)?, *w_new.get(j)?)))
            .collect();
        let mut graph = Self::new(v_map.len(), w_map.len(), edges)
            .expect("induced subgraph of a valid graph is valid");
        graph.labels = self.labels.as_ref().map(|l| Labels {
            v: v_map.iter().map(|&i| l.v[i as usize].clone()).collect(),
            w: w_map.iter().map(|&j| l.w[j as usize].clone()).collect(),
        });
        Subgraph { graph, v_map, w_map }
    }
}

pub(crate) fn full_mask(n: usize) -> u64 {
    debug_assert!(n <= 64);
    if n == 64 {
        !0
    } else {
        (1u64 << n) - 1
    }
}

/// A compacted subgraph together with the original index of each surviving
/// vertex (`v_map[new] == old`).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Subgraph {
    pub graph: BipartiteGraph,
    pub v_map: Vec<u32>,
    pub w_map: Vec<u32>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn k23() -> BipartiteGraph {
        BipartiteGraph::complete(2, 3).unwrap()
    }

    #[test]
    fn build_complete() {
        let g = k23();
        assert_eq!(g.edge_count(), 6);
        assert_eq!(g.v_count(), 2);
        assert_eq!(g.w_count(), 3);
    }

    #[test]
    fn build_isolated_vertex() {
        let g = BipartiteGraph::new(1, 0, []).unwrap();
        assert_eq!(g.vertex_count(), 1);
        assert_eq!(g.edge_count(), 0);
    }

    #[test]
    fn build_rejects_duplicates_and_bad_indices() {
        assert_eq!(
            BipartiteGraph::new(2, 2, [(0, 0), (0, 0)]),
            Err(Error::ParallelEdge { i: 0, j: 0 })
        );
        assert!(matches!(
            BipartiteGraph::new(2, 3, [(2, 0)]),
            Err(Error::InvalidEdge { i: 2, j: 0, .. })
        ));
        assert!(matches!(
            BipartiteGraph::new(65, 0, []),
            Err(Error::ResourceLimit(_))
        ));
    }

    #[test]
    fn neighborhood_examples() {
        let g = k23();
        let s = VertexSet::from_indices(Side::W, &[0, 1]);
        assert_eq!(g.neighborhood(&s), VertexSet::from_indices(Side::V, &[0, 1]));
        assert!(g.neighborhood(&VertexSet::empty(Side::V)).is_empty());

        // path v0 - w0 - v1
        let path = BipartiteGraph::new(2, 1, [(0, 0), (1, 0)]).unwrap();
        assert_eq!(
            path.neighborhood(&VertexSet::from_indices(Side::V, &[0])),
            VertexSet::from_indices(Side::W, &[0])
        );
    }

    #[test]
    fn nonexpanding_examples() {
        let g = k23();
        assert!(g.is_nonexpanding(&VertexSet::from_indices(Side::W, &[0, 1])));
        assert!(!g.is_nonexpanding(&VertexSet::from_indices(Side::W, &[0])));
        assert!(g.is_nonexpanding(&VertexSet::empty(Side::W)));
    }

    #[test]
    fn delete_vertices_examples() {
        let g = k23();
        let sub = g.delete_vertices(&VertexSet::from_indices(Side::W, &[0]));
        assert_eq!(sub.graph, BipartiteGraph::complete(2, 2).unwrap());
        assert_eq!(sub.w_map, vec![1, 2]);

        let sub = g.delete_vertices(&VertexSet::from_indices(Side::W, &[0, 1]));
        assert_eq!(sub.graph, BipartiteGraph::complete(2, 1).unwrap());

        let sub = g.delete_vertices(&VertexSet::empty(Side::W));
        assert_eq!(sub.graph, g);
    }

    #[test]
    fn delete_edges_examples() {
        // 4-cycle = K_{2,2}
        let c4 = BipartiteGraph::complete(2, 2).unwrap();
        let path = c4.delete_edges(&[(1, 1)]).unwrap();
        assert_eq!(path.edge_count(), 3);
        assert_eq!(path.components().len(), 1);

        assert_eq!(c4.delete_edges(&[]).unwrap(), c4);

        let pm = c4.delete_edges(&[(0, 1), (1, 0)]).unwrap();
        assert_eq!(pm.edges(), &[(0, 0), (1, 1)]);

        assert!(matches!(
            c4.delete_edges(&[(5, 5)]),
            Err(Error::InvalidEdge { .. })
        ));
    }

    #[test]
    fn components_examples() {
        let g = BipartiteGraph::new(2, 1, [(0, 0)]).unwrap(); // K11 plus isolated v1
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].graph.edge_count(), 1);
        assert_eq!(comps[1].graph.vertex_count(), 1);

        assert_eq!(k23().components().len(), 1);

        let edgeless = BipartiteGraph::new(2, 1, []).unwrap();
        assert_eq!(edgeless.components().len(), 3);
    }

    #[test]
    fn swap_examples() {
        let g = k23();
        let s = g.swap_sides();
        assert_eq!(s, BipartiteGraph::complete(3, 2).unwrap());
        assert_eq!(s.swap_sides(), g);

        let single = BipartiteGraph::new(1, 0, []).unwrap();
        let swapped = single.swap_sides();
        assert_eq!((swapped.v_count(), swapped.w_count()), (0, 1));
    }

    #[test]
    fn labels_follow_operations() {
        let g = BipartiteGraph::new(2, 1, [(0, 0), (1, 0)])
            .unwrap()
            .with_labels(Labels {
                v: vec!["a".into(), "b".into()],
                w: vec!["x".into()],
            })
            .unwrap();
        let swapped = g.swap_sides();
        assert_eq!(swapped.labels().unwrap().v, vec!["x"]);

        let sub = g.delete_vertices(&VertexSet::from_indices(Side::V, &[0]));
        assert_eq!(sub.graph.labels().unwrap().v, vec!["b"]);

        assert!(
            BipartiteGraph::new(1, 1, [])
                .unwrap()
                .with_labels(Labels { v: vec![], w: vec![] })
                .is_err()
        );
    }

    #[test]
    fn delete_composition() {
        let g = k23();
        let first = g.delete_vertices(&VertexSet::from_indices(Side::W, &[1]));
        // w2 in the original is index 1 after deleting w1
        let second = first
            .graph
            .delete_vertices(&VertexSet::from_indices(Side::W, &[1]));
        let direct = g.delete_vertices(&VertexSet::from_indices(Side::W, &[1, 2]));
        assert_eq!(second.graph, direct.graph);
    }

    fn graph_strategy() -> impl Strategy<Value = BipartiteGraph> {
        (1usize..=4, 1usize..=4)
            .prop_flat_map(|(v, w)| {
                let full = (v * w) as u32;
                (Just(v), Just(w), 0u32..(1 << full))
            })
            .prop_map(|(v, w, bits)| {
                let edges = (0..v as u32)
                    .flat_map(|i| (0..w as u32).map(move |j| (i, j)))
                    .enumerate()
                    .filter(|(k, _)| bits & (1 << k) != 0)
                    .map(|(_, e)| e);
                BipartiteGraph::new(v, w, edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn neighborhood_is_monotone(g in graph_strategy(), m1: u64, m2: u64) {
            let full = full_mask(g.v_count());
            let inner = m1 & m2 & full;
            let outer = m1 & full;
            let s1 = VertexSet::from_mask(Side::V, inner);
            let s2 = VertexSet::from_mask(Side::V, outer);
            prop_assert!(g.neighborhood(&s1).is_subset_of(&g.neighborhood(&s2)));
        }

        #[test]
        fn swap_is_involution(g in graph_strategy()) {
            prop_assert_eq!(g.swap_sides().swap_sides(), g.clone());
            prop_assert_eq!(g.swap_sides().edge_count(), g.edge_count());
        }

        #[test]
        fn components_partition(g in graph_strategy()) {
            let comps = g.components();
            let vs: usize = comps.iter().map(|c| c.graph.v_count()).sum();
            let ws: usize = comps.iter().map(|c| c.graph.w_count()).sum();
            let es: usize = comps.iter().map(|c| c.graph.edge_count()).sum();
            prop_assert_eq!(vs, g.v_count());
            prop_assert_eq!(ws, g.w_count());
            prop_assert_eq!(es, g.edge_count());
        }
    }
}
