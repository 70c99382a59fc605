//! Lattice-point enumeration of dilated root polytopes.
//!
//! The root polytope of a bipartite graph is the convex hull of the vectors
//! `v + w` over its edges, inside `R^V ⊕ R^W`. This module counts the
//! integer points of its dilations and recovers the interior polynomial
//! from those counts. It is the geometric ground truth against which the
//! recursion engines are checked.
//!
//! Two point-generation mechanisms coexist with different trust levels:
//!
//! * [`membership`] decides whether a candidate point lies in `s * Q_G` by
//!   a transportation-feasibility max-flow, a direct reading of the
//!   polytope's definition.
//! * [`lattice_points`] enumerates points by iterated Minkowski addition of
//!   the edge generators. This is the fast path; it is complete only
//!   because every lattice point of `s * Q_G` decomposes into a sum of `s`
//!   generators for these polytopes, a fact the tests verify against
//!   `membership` exhaustively at small scale instead of assuming.

use std::collections::HashSet;
use std::hash::Hash;

use num_bigint::BigInt;
use num_traits::Zero;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::BipartiteGraph;
use crate::poly::{binom, series_coeffs, IntPolynomial};

/// Default cap on the number of points in a single dilation.
pub const DEFAULT_MAX_POINTS: usize = 10_000_000;

/// Tuning knobs for the enumeration chain.
#[derive(Debug, Clone)]
pub struct EnumerationOptions {
    /// Abort with [`Error::ResourceLimit`] once a dilation's point set
    /// exceeds this many points.
    pub max_points: usize,
    /// Expand dilations across threads. Ignored (always sequential) when
    /// the `parallel` feature is disabled; results are identical either way.
    pub parallel: bool,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        EnumerationOptions {
            max_points: DEFAULT_MAX_POINTS,
            parallel: cfg!(feature = "parallel"),
        }
    }
}

impl EnumerationOptions {
    /// Sequential options with the default cap.
    pub fn sequential() -> Self {
        EnumerationOptions {
            parallel: false,
            ..Default::default()
        }
    }
}

/// An integer point of a dilated root polytope, recorded as the pair of
/// vertex-degree vectors of a fractional edge weighting.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct DegreePair {
    /// Per-V-vertex totals.
    pub a: Vec<u32>,
    /// Per-W-vertex totals.
    pub b: Vec<u32>,
}

impl DegreePair {
    /// The dilation this point belongs to, i.e. the coordinate sum of `a`.
    pub fn dilation(&self) -> u64 {
        self.a.iter().map(|&x| x as u64).sum()
    }
}

/// Ehrhart data of one graph: the counts `values[s]` for `s = 0..`, the
/// series exponent `n = |V|+|W|-1`, and the interior polynomial recovered
/// from them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartProfile {
    pub values: Vec<u64>,
    pub n: usize,
    pub interior: IntPolynomial,
}

/// True iff `p` is an integer point of `s * Q_G`: both coordinate sums
/// equal `s` and a transportation problem on the edges of `g` with supplies
/// `p.a` and demands `p.b` is feasible.
pub fn membership(g: &BipartiteGraph, p: &DegreePair, s: u64) -> bool {
    assert_eq!(p.a.len(), g.v_count(), "degree pair shape mismatch");
    assert_eq!(p.b.len(), g.w_count(), "degree pair shape mismatch");
    let sum_a: u64 = p.a.iter().map(|&x| x as u64).sum();
    let sum_b: u64 = p.b.iter().map(|&x| x as u64).sum();
    if sum_a != s || sum_b != s {
        return false;
    }
    max_flow(g, &p.a, &p.b) == s
}

// Edmonds-Karp on the source -> V -> W -> sink network with supply/demand
// capacities. Small and allocation-simple; membership is a correctness
// oracle, not a hot path.
fn max_flow(g: &BipartiteGraph, a: &[u32], b: &[u32]) -> u64 {
    let nv = g.v_count();
    let nw = g.w_count();
    let n = nv + nw + 2;
    let source = 0usize;
    let sink = n - 1;
    let vi = |i: usize| 1 + i;
    let wj = |j: usize| 1 + nv + j;

    let total: u64 = a.iter().map(|&x| x as u64).sum();
    let mut cap = vec![vec![0u64; n]; n];
    for (i, &x) in a.iter().enumerate() {
        cap[source][vi(i)] = x as u64;
    }
    for (j, &y) in b.iter().enumerate() {
        cap[wj(j)][sink] = y as u64;
    }
    for &(i, j) in g.edges() {
        cap[vi(i as usize)][wj(j as usize)] = total;
    }

    let mut flow = 0u64;
    loop {
        let mut parent = vec![usize::MAX; n];
        parent[source] = source;
        let mut queue = std::collections::VecDeque::from([source]);
        while let Some(u) = queue.pop_front() {
            for v in 0..n {
                if parent[v] == usize::MAX && cap[u][v] > 0 {
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        if parent[sink] == usize::MAX {
            return flow;
        }
        let mut bottleneck = u64::MAX;
        let mut v = sink;
        while v != source {
            let u = parent[v];
            bottleneck = bottleneck.min(cap[u][v]);
            v = u;
        }
        let mut v = sink;
        while v != source {
            let u = parent[v];
            cap[u][v] -= bottleneck;
            cap[v][u] += bottleneck;
            v = u;
        }
        flow += bottleneck;
    }
}

// ---------------------------------------------------------------------------
// Minkowski-sum chain
//
// P_0 = {0}; P_s = {p + e : p in P_{s-1}, e an edge generator}, deduplicated.
// Points on graphs with at most 16 vertices pack into one u128 (one byte per
// coordinate, valid while s <= 255 so bytes never carry); larger inputs fall
// back to boxed u16 slices.

trait PointRepr: Sized + Clone + Eq + Hash + Send + Sync {
    fn origin(dims: usize) -> Self;
    fn generator(dims: usize, v_count: usize, edge: (u32, u32)) -> Self;
    fn add(&self, gen: &Self) -> Self;
    fn unpack(&self, v_count: usize, w_count: usize) -> DegreePair;
}

impl PointRepr for u128 {
    fn origin(_dims: usize) -> Self {
        0
    }
    fn generator(_dims: usize, v_count: usize, (i, j): (u32, u32)) -> Self {
        (1u128 << (8 * i)) | (1u128 << (8 * (v_count as u32 + j)))
    }
    fn add(&self, gen: &Self) -> Self {
        self + gen
    }
    fn unpack(&self, v_count: usize, w_count: usize) -> DegreePair {
        let byte = |t: usize| ((self >> (8 * t)) & 0xff) as u32;
        DegreePair {
            a: (0..v_count).map(byte).collect(),
            b: (v_count..v_count + w_count).map(byte).collect(),
        }
    }
}

impl PointRepr for Box<[u16]> {
    fn origin(dims: usize) -> Self {
        vec![0u16; dims].into_boxed_slice()
    }
    fn generator(dims: usize, v_count: usize, (i, j): (u32, u32)) -> Self {
        let mut p = vec![0u16; dims];
        p[i as usize] = 1;
        p[v_count + j as usize] = 1;
        p.into_boxed_slice()
    }
    fn add(&self, gen: &Self) -> Self {
        self.iter()
            .zip(gen.iter())
            .map(|(x, y)| x + y)
            .collect::<Vec<_>>()
            .into_boxed_slice()
    }
    fn unpack(&self, v_count: usize, w_count: usize) -> DegreePair {
        DegreePair {
            a: self[..v_count].iter().map(|&x| x as u32).collect(),
            b: self[v_count..v_count + w_count]
                .iter()
                .map(|&x| x as u32)
                .collect(),
        }
    }
}

fn expand_seq<K: PointRepr>(prev: &[K], gens: &[K], cap: usize) -> Result<HashSet<K>> {
    let mut set = HashSet::with_capacity(prev.len().saturating_mul(2));
    for p in prev {
        for g in gens {
            set.insert(p.add(g));
        }
        if set.len() > cap {
            return Err(point_cap_error(cap));
        }
    }
    Ok(set)
}

#[cfg(feature = "parallel")]
fn expand_par<K: PointRepr>(prev: &[K], gens: &[K], cap: usize) -> Result<HashSet<K>> {
    let workers = rayon::current_num_threads();
    if workers <= 1 {
        return expand_seq(prev, gens, cap);
    }
    // one merge per worker set; oversplitting just rehashes
    let chunk = (prev.len() / (4 * workers)).max(4096);
    prev.par_chunks(chunk)
        .map(|chunk| {
            let mut set = HashSet::with_capacity(chunk.len() * 2);
            for p in chunk {
                for g in gens {
                    set.insert(p.add(g));
                }
                if set.len() > cap {
                    return Err(point_cap_error(cap));
                }
            }
            Ok(set)
        })
        .try_reduce(HashSet::new, |a, b| {
            let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
            merge_checked(big, small, cap)
        })
}

#[cfg(feature = "parallel")]
fn merge_checked<K: PointRepr>(
    mut big: HashSet<K>,
    small: HashSet<K>,
    cap: usize,
) -> Result<HashSet<K>> {
    big.extend(small);
    if big.len() > cap {
        return Err(point_cap_error(cap));
    }
    Ok(big)
}

fn point_cap_error(cap: usize) -> Error {
    Error::ResourceLimit(format!(
        "dilation point set exceeds the configured cap of {cap} points"
    ))
}

// Runs the chain up to `s_max`, returning per-dilation counts and, when
// `keep_last`, the final dilation's point set.
fn run_chain<K: PointRepr>(
    g: &BipartiteGraph,
    s_max: usize,
    opts: &EnumerationOptions,
    keep_last: bool,
) -> Result<(Vec<u64>, Vec<K>)> {
    let dims = g.vertex_count();
    let gens: Vec<K> = g
        .edges()
        .iter()
        .map(|&e| K::generator(dims, g.v_count(), e))
        .collect();
    let mut counts = vec![1u64];
    let mut prev: Vec<K> = vec![K::origin(dims)];
    for _s in 1..=s_max {
        if gens.is_empty() || prev.is_empty() {
            counts.push(0);
            prev.clear();
            continue;
        }
        #[cfg(feature = "parallel")]
        let set = if opts.parallel {
            expand_par(&prev, &gens, opts.max_points)?
        } else {
            expand_seq(&prev, &gens, opts.max_points)?
        };
        #[cfg(not(feature = "parallel"))]
        let set = expand_seq(&prev, &gens, opts.max_points)?;
        counts.push(set.len() as u64);
        prev = set.into_iter().collect();
    }
    if !keep_last {
        prev.clear();
    }
    Ok((counts, prev))
}

fn fits_u128(g: &BipartiteGraph, s_max: usize) -> bool {
    g.vertex_count() <= 16 && s_max <= 255
}

fn chain_counts(g: &BipartiteGraph, s_max: usize, opts: &EnumerationOptions) -> Result<Vec<u64>> {
    if fits_u128(g, s_max) {
        run_chain::<u128>(g, s_max, opts, false).map(|(c, _)| c)
    } else if s_max < u16::MAX as usize {
        run_chain::<Box<[u16]>>(g, s_max, opts, false).map(|(c, _)| c)
    } else {
        Err(Error::ResourceLimit(format!(
            "dilation {s_max} is beyond the supported coordinate range"
        )))
    }
}

/// The exact set of integer points of `s * Q_G`, in unspecified order.
pub fn lattice_points(g: &BipartiteGraph, s: usize) -> Result<Vec<DegreePair>> {
    lattice_points_with(g, s, &EnumerationOptions::default())
}

pub fn lattice_points_with(
    g: &BipartiteGraph,
    s: usize,
    opts: &EnumerationOptions,
) -> Result<Vec<DegreePair>> {
    let (v, w) = (g.v_count(), g.w_count());
    if fits_u128(g, s) {
        let (_, last) = run_chain::<u128>(g, s, opts, true)?;
        Ok(last.iter().map(|p| p.unpack(v, w)).collect())
    } else if s < u16::MAX as usize {
        let (_, last) = run_chain::<Box<[u16]>>(g, s, opts, true)?;
        Ok(last.iter().map(|p| p.unpack(v, w)).collect())
    } else {
        Err(Error::ResourceLimit(format!(
            "dilation {s} is beyond the supported coordinate range"
        )))
    }
}

/// Lattice counts `[ε(0), ε(1), ..., ε(m)]`; `ε(0) = 1` for every graph.
pub fn ehrhart_values(g: &BipartiteGraph, m: usize) -> Result<Vec<u64>> {
    ehrhart_values_with(g, m, &EnumerationOptions::default())
}

pub fn ehrhart_values_with(
    g: &BipartiteGraph,
    m: usize,
    opts: &EnumerationOptions,
) -> Result<Vec<u64>> {
    chain_counts(g, m, opts)
}

// I_k = sum_{j<=k} (-1)^j C(n, j) eps(k - j), for k = 0..=n.
fn interior_from_counts(counts: &[u64], n: usize) -> IntPolynomial {
    let coeffs: Vec<BigInt> = (0..=n)
        .map(|k| {
            let mut c = BigInt::zero();
            for j in 0..=k {
                let term = binom(n as u64, j as u64) * BigInt::from(counts[k - j]);
                if j % 2 == 0 {
                    c += term;
                } else {
                    c -= term;
                }
            }
            c
        })
        .collect();
    IntPolynomial::from_coeffs(coeffs)
}

/// Full Ehrhart data with counts through `max(upto, n + 1)` dilations.
pub fn ehrhart_profile(
    g: &BipartiteGraph,
    upto: usize,
    opts: &EnumerationOptions,
) -> Result<EhrhartProfile> {
    if g.vertex_count() == 0 {
        return Err(Error::InvalidInput(
            "the interior polynomial is undefined for the empty graph".into(),
        ));
    }
    let n = g.vertex_count() - 1;
    let s_max = (n + 1).max(upto);
    let values = chain_counts(g, s_max, opts)?;
    let interior = interior_from_counts(&values, n);

    // The counts must be reproducible from the polynomial, including the
    // extra value not used in its construction.
    let redone = series_coeffs(&interior, n, n + 1);
    let expect: Vec<BigInt> = values[..=n + 1].iter().map(|&x| BigInt::from(x)).collect();
    if redone != expect {
        return Err(Error::ConsistencyFailure(format!(
            "series of {interior} does not reproduce the lattice counts {:?}",
            &values[..=n + 1]
        )));
    }
    Ok(EhrhartProfile {
        values,
        n,
        interior,
    })
}

/// The interior polynomial via lattice-point counts: with
/// `n = |V| + |W| - 1`, the numerator of the Ehrhart series over
/// `(1 - x)^n`.
pub fn interior_via_ehrhart(g: &BipartiteGraph) -> Result<IntPolynomial> {
    interior_via_ehrhart_with(g, &EnumerationOptions::default())
}

pub fn interior_via_ehrhart_with(
    g: &BipartiteGraph,
    opts: &EnumerationOptions,
) -> Result<IntPolynomial> {
    ehrhart_profile(g, 0, opts).map(|p| p.interior)
}

/// Affine dimension of the root polytope (dimension of the first-dilation
/// point set); `None` for edgeless graphs, whose polytope is empty.
pub fn polytope_dim(g: &BipartiteGraph) -> Option<usize> {
    if g.edge_count() == 0 {
        return None;
    }
    let dims = g.vertex_count();
    let coords = |&(i, j): &(u32, u32)| -> Vec<BigInt> {
        let mut p = vec![BigInt::zero(); dims];
        p[i as usize] = BigInt::from(1);
        p[g.v_count() + j as usize] = BigInt::from(1);
        p
    };
    let base = coords(&g.edges()[0]);
    let rows: Vec<Vec<BigInt>> = g.edges()[1..]
        .iter()
        .map(|e| {
            coords(e)
                .into_iter()
                .zip(base.iter())
                .map(|(x, b)| x - b)
                .collect()
        })
        .collect();
    Some(integer_rank(rows))
}

// Rank over the rationals by fraction-free elimination against an echelon
// basis; exact at any scale thanks to BigInt entries.
fn integer_rank(rows: Vec<Vec<BigInt>>) -> usize {
    let mut basis: Vec<(usize, Vec<BigInt>)> = Vec::new(); // (pivot column, row)
    for mut row in rows {
        for (pivot, b) in &basis {
            if !row[*pivot].is_zero() {
                let f = row[*pivot].clone();
                let p = b[*pivot].clone();
                for (x, y) in row.iter_mut().zip(b.iter()) {
                    *x = &*x * &p - y * &f;
                }
            }
        }
        if let Some(pivot) = row.iter().position(|x| !x.is_zero()) {
            basis.push((pivot, row));
            basis.sort_by_key(|(p, _)| *p);
        }
    }
    basis.len()
}
