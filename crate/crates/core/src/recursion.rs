//! Deletion recursions for the interior polynomial, plus a direct checker
//! for the alternating-sum identity they rest on.
//!
//! Two engines compute the same polynomial along different routes:
//!
//! * [`interior_nonexpanding`] deletes vertex subsets of a non-expanding
//!   class (the whole larger side of a connected piece), recursing through
//!   the identity `I_G = Σ_{∅≠J⊆S} (-1)^{|J|-1} I_{G-J}`.
//! * [`interior_altcycle`] deletes edge subsets of one half of an
//!   alternating cycle, recursing through
//!   `I_G = Σ_{∅≠S⊆half} (-1)^{|S|-1} I_{G\S}`.
//!
//! Both bottom out in the component product rule
//! `I_{G1 ⊔ G2} = (1-x) I_{G1} I_{G2}`, the leaf rule `I_G = I_{G-v}` for a
//! degree-1 vertex `v`, and the single-vertex value 1.
//!
//! [`alternating_sum`] evaluates `Σ_{J⊆S} (-1)^{|J|} I_{G-J}` with every
//! term supplied by the Ehrhart oracle, so it tests the identity itself
//! rather than either engine. The sum vanishes whenever `S` is
//! non-expanding with minimum degree >= 1; the degree guard cannot be
//! dropped, as the `K_{1,1} ⊔ {u}` regression test shows.

use std::collections::{HashMap, VecDeque};
use std::hash::Hash;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Mutex;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::ehrhart::{interior_via_ehrhart_with, EnumerationOptions};
use crate::error::{Error, Result};
use crate::graph::{full_mask, BipartiteGraph, Side, VertexSet};
use crate::poly::{one_minus_x_pow, IntPolynomial};

/// Hard ceiling on subset-sum width; `2^24` terms is already absurd.
const MAX_SUBSET: usize = 24;

/// Engine configuration.
#[derive(Debug, Clone)]
pub struct RecursionOptions {
    /// Cache subgraph results keyed by original-index masks.
    pub memoize: bool,
    /// Evaluate subset sums across threads. Ignored without the `parallel`
    /// feature; single-threaded runs produce identical output.
    pub parallel: bool,
    /// Largest class size the vertex-deletion engine will expand
    /// (`2^k - 1` terms per expansion).
    pub max_class_size: usize,
}

impl Default for RecursionOptions {
    fn default() -> Self {
        RecursionOptions {
            memoize: true,
            parallel: cfg!(feature = "parallel"),
            max_class_size: 20,
        }
    }
}

impl RecursionOptions {
    pub fn sequential() -> Self {
        RecursionOptions {
            parallel: false,
            ..Default::default()
        }
    }
}

/// Hit/miss counters of a [`MemoTable`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct MemoStats {
    pub hits: u64,
    pub misses: u64,
}

/// Cache from canonical subgraph keys to polynomials. Get-or-insert is
/// atomic enough for the engines: duplicate concurrent computation is
/// allowed because every route computes the identical polynomial.
#[derive(Debug, Default)]
pub struct MemoTable<K> {
    map: Mutex<HashMap<K, IntPolynomial>>,
    hits: AtomicU64,
    misses: AtomicU64,
}

impl<K: Eq + Hash + Clone> MemoTable<K> {
    fn new() -> Self {
        MemoTable {
            map: Mutex::new(HashMap::new()),
            hits: AtomicU64::new(0),
            misses: AtomicU64::new(0),
        }
    }

    pub fn get(&self, key: &K) -> Option<IntPolynomial> {
        let found = self.map.lock().unwrap().get(key).cloned();
        match found {
            Some(p) => {
                self.hits.fetch_add(1, Ordering::Relaxed);
                Some(p)
            }
            None => {
                self.misses.fetch_add(1, Ordering::Relaxed);
                None
            }
        }
    }

    pub fn insert(&self, key: K, value: IntPolynomial) {
        self.map.lock().unwrap().insert(key, value);
    }

    pub fn len(&self) -> usize {
        self.map.lock().unwrap().len()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn stats(&self) -> MemoStats {
        MemoStats {
            hits: self.hits.load(Ordering::Relaxed),
            misses: self.misses.load(Ordering::Relaxed),
        }
    }

    pub fn entries(&self) -> Vec<(K, IntPolynomial)> {
        self.map
            .lock()
            .unwrap()
            .iter()
            .map(|(k, v)| (k.clone(), v.clone()))
            .collect()
    }
}

// Nonempty submasks of `mask`, descending.
fn nonempty_submasks(mask: u64) -> Vec<u64> {
    let mut out = Vec::with_capacity((1usize << mask.count_ones()) - 1);
    let mut sub = mask;
    while sub != 0 {
        out.push(sub);
        sub = (sub - 1) & mask;
    }
    out
}

fn signed(p: IntPolynomial, negative: bool) -> IntPolynomial {
    if negative {
        -&p
    } else {
        p
    }
}

fn sum_terms<F>(subsets: &[u64], parallel: bool, term: F) -> Result<IntPolynomial>
where
    F: Fn(u64) -> Result<IntPolynomial> + Sync,
{
    #[cfg(feature = "parallel")]
    if parallel && subsets.len() >= 4 {
        return subsets
            .par_iter()
            .map(|&sub| term(sub))
            .try_reduce(IntPolynomial::zero, |a, b| Ok(&a + &b));
    }
    let _ = parallel;
    let mut acc = IntPolynomial::zero();
    for &sub in subsets {
        acc = &acc + &term(sub)?;
    }
    Ok(acc)
}

/// `Σ_{J⊆S} (-1)^{|J|} I_{G-J}`, every term computed by the Ehrhart oracle
/// so the identity is tested independently of both recursion engines.
pub fn alternating_sum(g: &BipartiteGraph, s: &VertexSet) -> Result<IntPolynomial> {
    alternating_sum_with(g, s, &EnumerationOptions::default())
}

pub fn alternating_sum_with(
    g: &BipartiteGraph,
    s: &VertexSet,
    opts: &EnumerationOptions,
) -> Result<IntPolynomial> {
    assert!(
        s.mask() & !full_mask(g.side_count(s.side())) == 0,
        "vertex set outside the graph"
    );
    if s.len() > MAX_SUBSET {
        return Err(Error::ResourceLimit(format!(
            "alternating sum over 2^{} subsets refused",
            s.len()
        )));
    }
    let mut subsets = nonempty_submasks(s.mask());
    subsets.push(0);
    let side = s.side();
    sum_terms(&subsets, opts.parallel, |sub| {
        let deleted = g.delete_vertices(&VertexSet::from_mask(side, sub));
        let p = interior_via_ehrhart_with(&deleted.graph, opts)?;
        Ok(signed(p, sub.count_ones() % 2 == 1))
    })
}

// ---------------------------------------------------------------------------
// Vertex-deletion engine

// A subgraph of the original input, as masks of surviving vertices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct View {
    v: u64,
    w: u64,
}

impl View {
    fn vertex_count(self) -> u32 {
        self.v.count_ones() + self.w.count_ones()
    }

    fn side_mask(self, side: Side) -> u64 {
        match side {
            Side::V => self.v,
            Side::W => self.w,
        }
    }

    fn minus(self, side: Side, mask: u64) -> View {
        match side {
            Side::V => View {
                v: self.v & !mask,
                w: self.w,
            },
            Side::W => View {
                v: self.v,
                w: self.w & !mask,
            },
        }
    }
}

/// Computes interior polynomials by deleting vertex subsets of
/// non-expanding classes, memoized on (V-mask, W-mask) keys relative to the
/// input graph.
pub struct NonexpandingEngine<'g> {
    g: &'g BipartiteGraph,
    opts: RecursionOptions,
    memo: MemoTable<(u64, u64)>,
}

impl<'g> NonexpandingEngine<'g> {
    pub fn new(g: &'g BipartiteGraph, opts: RecursionOptions) -> Self {
        NonexpandingEngine {
            g,
            opts,
            memo: MemoTable::new(),
        }
    }

    pub fn memo(&self) -> &MemoTable<(u64, u64)> {
        &self.memo
    }

    pub fn interior(&self) -> Result<IntPolynomial> {
        if self.g.vertex_count() == 0 {
            return Err(Error::InvalidInput(
                "the interior polynomial is undefined for the empty graph".into(),
            ));
        }
        self.interior_view(View {
            v: full_mask(self.g.v_count()),
            w: full_mask(self.g.w_count()),
        })
    }

    fn degree_in(&self, view: View, side: Side, i: u32) -> u32 {
        let opposite = view.side_mask(side.opposite());
        (self.g.adjacency(side, i) & opposite).count_ones()
    }

    // Split into connected pieces and apply the disjoint-union product rule.
    fn interior_view(&self, view: View) -> Result<IntPolynomial> {
        let comps = self.split_components(view);
        debug_assert!(!comps.is_empty());
        let mut acc = one_minus_x_pow(comps.len() - 1);
        for c in comps {
            acc = &acc * &self.connected(c)?;
        }
        Ok(acc)
    }

    fn connected(&self, view: View) -> Result<IntPolynomial> {
        if view.vertex_count() == 1 {
            return Ok(IntPolynomial::one());
        }
        let key = (view.v, view.w);
        if self.opts.memoize {
            if let Some(hit) = self.memo.get(&key) {
                return Ok(hit);
            }
        }

        let result = if let Some((side, i)) = self.find_leaf(view) {
            // leaf rule: S = {degree-1 vertex}
            self.interior_view(view.minus(side, 1 << i))?
        } else {
            // Connected with >= 2 vertices and no leaf, so every degree is
            // >= 2 and the larger side is a non-expanding set with the
            // degree guard satisfied.
            let side = if view.v.count_ones() >= view.w.count_ones() {
                Side::V
            } else {
                Side::W
            };
            let class = view.side_mask(side);
            let size = class.count_ones() as usize;
            if size > self.opts.max_class_size.min(MAX_SUBSET) {
                return Err(Error::ResourceLimit(format!(
                    "deletion class of {size} vertices exceeds the configured limit"
                )));
            }
            let subsets = nonempty_submasks(class);
            sum_terms(&subsets, self.opts.parallel, |sub| {
                let p = self.interior_view(view.minus(side, sub))?;
                Ok(signed(p, sub.count_ones() % 2 == 0))
            })?
        };

        if self.opts.memoize {
            self.memo.insert(key, result.clone());
        }
        Ok(result)
    }

    fn find_leaf(&self, view: View) -> Option<(Side, u32)> {
        for side in [Side::V, Side::W] {
            for i in VertexSet::from_mask(side, view.side_mask(side)).members() {
                if self.degree_in(view, side, i) == 1 {
                    return Some((side, i));
                }
            }
        }
        None
    }

    fn split_components(&self, view: View) -> Vec<View> {
        let mut rest = view;
        let mut out = Vec::new();
        while rest.v != 0 || rest.w != 0 {
            let (side, start) = if rest.v != 0 {
                (Side::V, rest.v.trailing_zeros())
            } else {
                (Side::W, rest.w.trailing_zeros())
            };
            let mut comp = match side {
                Side::V => View {
                    v: 1 << start,
                    w: 0,
                },
                Side::W => View {
                    v: 0,
                    w: 1 << start,
                },
            };
            loop {
                let mut grew = false;
                for i in VertexSet::from_mask(Side::V, comp.v).members() {
                    let add = self.g.adjacency(Side::V, i) & rest.w & !comp.w;
                    if add != 0 {
                        comp.w |= add;
                        grew = true;
                    }
                }
                for j in VertexSet::from_mask(Side::W, comp.w).members() {
                    let add = self.g.adjacency(Side::W, j) & rest.v & !comp.v;
                    if add != 0 {
                        comp.v |= add;
                        grew = true;
                    }
                }
                if !grew {
                    break;
                }
            }
            rest = View {
                v: rest.v & !comp.v,
                w: rest.w & !comp.w,
            };
            out.push(comp);
        }
        out
    }
}

/// The interior polynomial via the non-expanding-set vertex recursion.
pub fn interior_nonexpanding(g: &BipartiteGraph) -> Result<IntPolynomial> {
    NonexpandingEngine::new(g, RecursionOptions::default()).interior()
}

pub fn interior_nonexpanding_with(
    g: &BipartiteGraph,
    opts: &RecursionOptions,
) -> Result<IntPolynomial> {
    NonexpandingEngine::new(g, opts.clone()).interior()
}

// ---------------------------------------------------------------------------
// Edge-deletion (alternating cycle) engine

/// Computes interior polynomials by deleting subsets of one half of a
/// shortest cycle, memoized on edge-mask keys. Vertices are never deleted,
/// which is what makes edge masks sound memo keys.
pub struct AltcycleEngine<'g> {
    g: &'g BipartiteGraph,
    opts: RecursionOptions,
    memo: MemoTable<u64>,
    // unified vertex index -> (neighbor, edge index), ascending
    adj: Vec<Vec<(usize, usize)>>,
}

// Adjacency over unified vertex indices (V first, then W), with edge ids.
fn unified_adjacency(g: &BipartiteGraph) -> Vec<Vec<(usize, usize)>> {
    let nv = g.v_count();
    let mut adj = vec![Vec::new(); g.vertex_count()];
    for (e, &(i, j)) in g.edges().iter().enumerate() {
        adj[i as usize].push((nv + j as usize, e));
        adj[nv + j as usize].push((i as usize, e));
    }
    adj
}

impl<'g> AltcycleEngine<'g> {
    pub fn new(g: &'g BipartiteGraph, opts: RecursionOptions) -> Self {
        AltcycleEngine {
            g,
            opts,
            memo: MemoTable::new(),
            adj: unified_adjacency(g),
        }
    }

    pub fn memo(&self) -> &MemoTable<u64> {
        &self.memo
    }

    pub fn interior(&self) -> Result<IntPolynomial> {
        if self.g.vertex_count() == 0 {
            return Err(Error::InvalidInput(
                "the interior polynomial is undefined for the empty graph".into(),
            ));
        }
        if self.g.edge_count() > 64 {
            return Err(Error::ResourceLimit(
                "the edge-deletion engine supports at most 64 edges".into(),
            ));
        }
        self.interior_edges(full_mask(self.g.edge_count()))
    }

    fn interior_edges(&self, emask: u64) -> Result<IntPolynomial> {
        let cycle = match shortest_cycle(&self.adj, |e| emask & (1 << e) != 0) {
            None => return Ok(self.forest_value(emask)),
            Some(c) => c,
        };
        if self.opts.memoize {
            if let Some(hit) = self.memo.get(&emask) {
                return Ok(hit);
            }
        }

        let half = pick_half(&cycle);
        if half.len() > MAX_SUBSET {
            return Err(Error::ResourceLimit(format!(
                "cycle half of {} edges exceeds the subset limit",
                half.len()
            )));
        }
        let half_mask = half.iter().fold(0u64, |m, &e| m | 1 << e);
        let subsets = nonempty_submasks(half_mask);
        let result = sum_terms(&subsets, self.opts.parallel, |sub| {
            let p = self.interior_edges(emask & !sub)?;
            Ok(signed(p, sub.count_ones() % 2 == 0))
        })?;

        if self.opts.memoize {
            self.memo.insert(emask, result.clone());
        }
        Ok(result)
    }

    // A forest's interior polynomial: the leaf rule shrinks every tree
    // component to a single vertex worth 1, so only the component count
    // survives through the product rule.
    fn forest_value(&self, emask: u64) -> IntPolynomial {
        one_minus_x_pow(self.component_count(emask) - 1)
    }

    fn component_count(&self, emask: u64) -> usize {
        let n = self.g.vertex_count();
        let mut seen = vec![false; n];
        let mut count = 0;
        for start in 0..n {
            if seen[start] {
                continue;
            }
            count += 1;
            let mut stack = vec![start];
            seen[start] = true;
            while let Some(x) = stack.pop() {
                for &(y, e) in &self.adj[x] {
                    if emask & (1 << e) != 0 && !seen[y] {
                        seen[y] = true;
                        stack.push(y);
                    }
                }
            }
        }
        count
    }
}

// Shortest cycle among the edges passing `live`, as edge indices in
// traversal order; deterministic under ascending scans. `None` for forests.
fn shortest_cycle(
    adj: &[Vec<(usize, usize)>],
    live: impl Fn(usize) -> bool,
) -> Option<Vec<usize>> {
    let n = adj.len();
    let mut best: Option<Vec<usize>> = None;
    for start in 0..n {
        let mut dist = vec![usize::MAX; n];
        let mut parent_v = vec![usize::MAX; n];
        let mut parent_e = vec![usize::MAX; n];
        dist[start] = 0;
        let mut queue = VecDeque::from([start]);
        while let Some(x) = queue.pop_front() {
            for &(y, e) in &adj[x] {
                if !live(e) || e == parent_e[x] {
                    continue;
                }
                if dist[y] == usize::MAX {
                    dist[y] = dist[x] + 1;
                    parent_v[y] = x;
                    parent_e[y] = e;
                    queue.push_back(y);
                } else if dist[y] <= dist[x] {
                    // closing edge; reconstruct the actual cycle
                    let cycle = reconstruct_cycle(x, y, e, &parent_v, &parent_e, &dist);
                    if best.as_ref().is_none_or(|b| cycle.len() < b.len()) {
                        best = Some(cycle);
                    }
                }
            }
        }
    }
    best
}

// Walk both endpoints of a closing edge up the BFS tree to their lowest
// common ancestor; emit the cycle's edges in traversal order.
fn reconstruct_cycle(
    x: usize,
    y: usize,
    closing: usize,
    parent_v: &[usize],
    parent_e: &[usize],
    dist: &[usize],
) -> Vec<usize> {
    let mut up_from_x = Vec::new();
    let mut up_from_y = Vec::new();
    let (mut cx, mut cy) = (x, y);
    while cx != cy {
        if dist[cx] >= dist[cy] {
            up_from_x.push(parent_e[cx]);
            cx = parent_v[cx];
        } else {
            up_from_y.push(parent_e[cy]);
            cy = parent_v[cy];
        }
    }
    let mut cycle: Vec<usize> = up_from_x.into_iter().rev().collect();
    cycle.push(closing);
    cycle.extend(up_from_y);
    cycle
}

// The cycle half used for deletion: of the two interleaved halves (even and
// odd traversal positions), the one containing the smallest edge index,
// rotated to start there. Either half satisfies the recursion; fixing one
// keeps runs reproducible.
fn pick_half(cycle: &[usize]) -> Vec<usize> {
    debug_assert!(cycle.len() >= 4 && cycle.len() % 2 == 0);
    let min_pos = (0..cycle.len()).min_by_key(|&p| cycle[p]).unwrap();
    let mut half: Vec<usize> = (0..cycle.len())
        .filter(|p| p % 2 == min_pos % 2)
        .map(|p| cycle[p])
        .collect();
    let offset = half.iter().position(|&e| e == cycle[min_pos]).unwrap();
    half.rotate_left(offset);
    half
}

/// One half of a shortest cycle of `g`, in traversal order: the edges that
/// drive one step of the edge-deletion recursion. `None` for forests.
pub fn find_alternating_half(g: &BipartiteGraph) -> Option<Vec<(u32, u32)>> {
    let cycle = shortest_cycle(&unified_adjacency(g), |_| true)?;
    Some(pick_half(&cycle).iter().map(|&e| g.edges()[e]).collect())
}

/// The interior polynomial via the alternating-cycle edge recursion.
pub fn interior_altcycle(g: &BipartiteGraph) -> Result<IntPolynomial> {
    AltcycleEngine::new(g, RecursionOptions::default()).interior()
}

pub fn interior_altcycle_with(
    g: &BipartiteGraph,
    opts: &RecursionOptions,
) -> Result<IntPolynomial> {
    AltcycleEngine::new(g, opts.clone()).interior()
}
