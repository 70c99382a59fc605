//! Maximum bipartite matching, Hall violators, and the selection of
//! non-expanding sets that drives the vertex-deletion recursion.

use crate::graph::{BipartiteGraph, Side, VertexSet};

/// A partial injection from `side` into the opposite class; every pair is an
/// edge and no vertex is used twice.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    side: Side,
    pairs: Vec<(u32, u32)>,
}

impl Matching {
    pub fn side(&self) -> Side {
        self.side
    }

    /// Matched pairs as (side vertex, opposite vertex), ascending.
    pub fn pairs(&self) -> &[(u32, u32)] {
        &self.pairs
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// True iff every member of `s` (on the matching's side) is matched.
    pub fn saturates(&self, s: &VertexSet) -> bool {
        s.side() == self.side && s.members().all(|i| self.pairs.iter().any(|&(a, _)| a == i))
    }
}

// Augmenting-path search from `u`, scanning neighbors in ascending order so
// the result is reproducible run to run.
fn try_augment(
    g: &BipartiteGraph,
    side: Side,
    u: u32,
    seen: &mut u64,
    left_match: &mut [Option<u32>],
    right_match: &mut [Option<u32>],
) -> bool {
    for v in VertexSet::from_mask(side.opposite(), g.adjacency(side, u)).members() {
        if *seen & (1 << v) != 0 {
            continue;
        }
        *seen |= 1 << v;
        let free = match right_match[v as usize] {
            None => true,
            Some(u2) => try_augment(g, side, u2, seen, left_match, right_match),
        };
        if free {
            right_match[v as usize] = Some(u);
            left_match[u as usize] = Some(v);
            return true;
        }
    }
    false
}

fn matching_over(
    g: &BipartiteGraph,
    side: Side,
    lefts: impl Iterator<Item = u32>,
) -> (Vec<Option<u32>>, Vec<Option<u32>>) {
    let mut left_match = vec![None; g.side_count(side)];
    let mut right_match = vec![None; g.side_count(side.opposite())];
    for u in lefts {
        let mut seen = 0u64;
        try_augment(g, side, u, &mut seen, &mut left_match, &mut right_match);
    }
    (left_match, right_match)
}

/// A maximum-cardinality matching, oriented from `side`. The cardinality is
/// unique; the matching itself is the deterministic ascending-scan one.
pub fn maximum_matching(g: &BipartiteGraph, side: Side) -> Matching {
    let (left_match, _) = matching_over(g, side, 0..g.side_count(side) as u32);
    let pairs = left_match
        .iter()
        .enumerate()
        .filter_map(|(u, v)| v.map(|v| (u as u32, v)))
        .collect();
    Matching { side, pairs }
}

/// If no matching saturates `s`, returns a witness `X ⊆ s` with
/// `|X| > |N(X)|`: the members of `s` reachable by alternating paths from
/// the smallest unmatched member. Returns `None` when `s` is saturable.
pub fn hall_violator(g: &BipartiteGraph, s: &VertexSet) -> Option<VertexSet> {
    let side = s.side();
    let (left_match, right_match) = matching_over(g, side, s.members());
    let start = s
        .members()
        .find(|&u| left_match[u as usize].is_none())?;

    let mut x = 1u64 << start;
    let mut frontier = vec![start];
    let mut seen_right = 0u64;
    while let Some(u) = frontier.pop() {
        let nbrs = g.adjacency(side, u) & !seen_right;
        seen_right |= nbrs;
        for w in VertexSet::from_mask(side.opposite(), nbrs).members() {
            // s was the only class offered to the matcher, so any matched
            // partner of w lies back in s.
            if let Some(u2) = right_match[w as usize] {
                if x & (1 << u2) == 0 {
                    x |= 1 << u2;
                    frontier.push(u2);
                }
            }
        }
    }
    Some(VertexSet::from_mask(side, x))
}

/// How [`choose_nonexpanding`] arrived at its set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// A single degree-1 vertex.
    Leaf,
    /// The larger color class, restricted to vertices of degree >= 1.
    WholeClass,
    /// A Hall violator extracted from an unsaturable class.
    Violator,
}

fn positive_degree_set(g: &BipartiteGraph, side: Side) -> VertexSet {
    let mask = (0..g.side_count(side) as u32)
        .filter(|&i| g.degree(side, i) >= 1)
        .fold(0u64, |m, i| m | 1 << i);
    VertexSet::from_mask(side, mask)
}

/// Picks a non-expanding set whose members all have degree >= 1, preferring
/// a leaf, then the larger class, then a violator. The degree guard is
/// load-bearing: the deletion identity fails for sets containing isolated
/// vertices (see the recursion tests for the witness).
pub fn choose_nonexpanding(g: &BipartiteGraph) -> Option<(VertexSet, Strategy)> {
    if g.edge_count() == 0 {
        return None;
    }
    for side in [Side::V, Side::W] {
        for i in 0..g.side_count(side) as u32 {
            if g.degree(side, i) == 1 {
                return Some((VertexSet::from_indices(side, &[i]), Strategy::Leaf));
            }
        }
    }
    let larger = if g.v_count() >= g.w_count() {
        Side::V
    } else {
        Side::W
    };
    let class = positive_degree_set(g, larger);
    if !class.is_empty() && g.is_nonexpanding(&class) {
        return Some((class, Strategy::WholeClass));
    }
    for side in [larger, larger.opposite()] {
        let full = positive_degree_set(g, side);
        if let Some(x) = hall_violator(g, &full) {
            return Some((x, Strategy::Violator));
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::full_mask;

    // Exhaustive maximum matching by scanning all edge subsets; the
    // independent oracle for the augmenting-path search.
    fn brute_force_max_matching(g: &BipartiteGraph) -> usize {
        let m = g.edge_count();
        assert!(m <= 20);
        let mut best = 0;
        for bits in 0u32..(1 << m) {
            let mut used_v = 0u64;
            let mut used_w = 0u64;
            let mut ok = true;
            let mut size = 0;
            for (k, &(i, j)) in g.edges().iter().enumerate() {
                if bits & (1 << k) == 0 {
                    continue;
                }
                if used_v & (1 << i) != 0 || used_w & (1 << j) != 0 {
                    ok = false;
                    break;
                }
                used_v |= 1 << i;
                used_w |= 1 << j;
                size += 1;
            }
            if ok {
                best = best.max(size);
            }
        }
        best
    }

    struct Rng(u64);
    impl Rng {
        fn next(&mut self) -> u64 {
            self.0 = self.0.wrapping_add(0x9e3779b97f4a7c15);
            let mut z = self.0;
            z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
            z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
            z ^ (z >> 31)
        }
        fn below(&mut self, n: u64) -> u64 {
            self.next() % n
        }
    }

    fn random_graph(rng: &mut Rng, v: usize, w: usize, density_pct: u64) -> BipartiteGraph {
        let edges = (0..v as u32).flat_map(|i| (0..w as u32).map(move |j| (i, j)));
        let picked: Vec<_> = edges.filter(|_| rng.below(100) < density_pct).collect();
        BipartiteGraph::new(v, w, picked).unwrap()
    }

    #[test]
    fn matching_k23() {
        let g = BipartiteGraph::complete(2, 3).unwrap();
        assert_eq!(maximum_matching(&g, Side::W).len(), 2);
        assert_eq!(maximum_matching(&g, Side::V).len(), 2);
        assert_eq!(brute_force_max_matching(&g), 2);
    }

    #[test]
    fn matching_edgeless() {
        let g = BipartiteGraph::new(3, 2, []).unwrap();
        assert!(maximum_matching(&g, Side::V).is_empty());
    }

    #[test]
    fn matching_matches_brute_force() {
        let mut rng = Rng(7);
        let mut checked = 0;
        while checked < 300 {
            let v = 1 + rng.below(5) as usize;
            let w = 1 + rng.below(5) as usize;
            let density = 30 + rng.below(60);
            let g = random_graph(&mut rng, v, w, density);
            if g.edge_count() > 16 {
                continue;
            }
            let expect = brute_force_max_matching(&g);
            assert_eq!(maximum_matching(&g, Side::V).len(), expect);
            assert_eq!(maximum_matching(&g, Side::W).len(), expect);
            checked += 1;
        }
    }

    #[test]
    fn violator_k23() {
        let g = BipartiteGraph::complete(2, 3).unwrap();
        let whole = g.full_set(Side::W);
        let x = hall_violator(&g, &whole).unwrap();
        assert_eq!(x, whole);
        assert!(x.len() > g.neighborhood(&x).len());

        assert!(hall_violator(&g, &VertexSet::from_indices(Side::W, &[0, 1])).is_none());
        assert!(hall_violator(&g, &VertexSet::empty(Side::W)).is_none());
    }

    // Independent saturation oracle: the largest matching that only uses
    // left vertices from `s`, by exhaustive edge-subset scan.
    fn brute_force_saturates(g: &BipartiteGraph, s: &VertexSet) -> bool {
        let relevant: Vec<(u32, u32)> = g
            .edges()
            .iter()
            .copied()
            .map(|(i, j)| if s.side() == Side::V { (i, j) } else { (j, i) })
            .filter(|&(l, _)| s.contains(l))
            .collect();
        let m = relevant.len();
        assert!(m <= 20);
        for bits in 0u32..(1 << m) {
            let mut used_l = 0u64;
            let mut used_r = 0u64;
            let mut ok = true;
            for (k, &(l, r)) in relevant.iter().enumerate() {
                if bits & (1 << k) == 0 {
                    continue;
                }
                if used_l & (1 << l) != 0 || used_r & (1 << r) != 0 {
                    ok = false;
                    break;
                }
                used_l |= 1 << l;
                used_r |= 1 << r;
            }
            if ok && used_l == s.mask() {
                return true;
            }
        }
        false
    }

    #[test]
    fn violator_agrees_with_matching() {
        let mut rng = Rng(21);
        for _ in 0..400 {
            let v = 1 + rng.below(5) as usize;
            let w = 1 + rng.below(5) as usize;
            let density = 20 + rng.below(70);
            let g = random_graph(&mut rng, v, w, density);
            let side = if rng.below(2) == 0 { Side::V } else { Side::W };
            let s = VertexSet::from_mask(side, rng.next() & full_mask(g.side_count(side)));
            let matching = {
                let (left, _) = matching_over(&g, side, s.members());
                s.members().filter(|&u| left[u as usize].is_some()).count()
            };
            match hall_violator(&g, &s) {
                None => assert_eq!(matching, s.len(), "saturation claimed but incomplete"),
                Some(x) => {
                    assert!(x.is_subset_of(&s));
                    assert!(x.len() > g.neighborhood(&x).len());
                    assert!(matching < s.len());
                }
            }
            if g.edge_count() <= 14 {
                assert_eq!(
                    hall_violator(&g, &s).is_none(),
                    brute_force_saturates(&g, &s),
                    "violator decision disagrees with brute force on {g:?}, S = {s:?}"
                );
            }
        }
    }

    #[test]
    fn choose_prefers_leaf_then_class() {
        let single = BipartiteGraph::new(1, 1, [(0, 0)]).unwrap();
        let (s, strat) = choose_nonexpanding(&single).unwrap();
        assert_eq!(strat, Strategy::Leaf);
        assert_eq!(s, VertexSet::from_indices(Side::V, &[0]));

        let k23 = BipartiteGraph::complete(2, 3).unwrap();
        let (s, strat) = choose_nonexpanding(&k23).unwrap();
        assert_eq!(strat, Strategy::WholeClass);
        assert_eq!(s, k23.full_set(Side::W));

        let k33 = BipartiteGraph::complete(3, 3).unwrap();
        let (s, strat) = choose_nonexpanding(&k33).unwrap();
        assert_eq!(strat, Strategy::WholeClass);
        assert_eq!(s, k33.full_set(Side::V));

        assert!(choose_nonexpanding(&BipartiteGraph::new(2, 2, []).unwrap()).is_none());
    }

    #[test]
    fn chosen_sets_satisfy_the_guard() {
        let mut rng = Rng(99);
        for _ in 0..400 {
            let v = 1 + rng.below(5) as usize;
            let w = 1 + rng.below(5) as usize;
            let density = 15 + rng.below(75);
            let g = random_graph(&mut rng, v, w, density);
            if g.edge_count() == 0 {
                continue;
            }
            let (s, _) = choose_nonexpanding(&g).expect("graph with an edge");
            assert!(g.is_nonexpanding(&s));
            assert!(!s.is_empty());
            assert!(s.members().all(|i| g.degree(s.side(), i) >= 1));
        }
    }
}
