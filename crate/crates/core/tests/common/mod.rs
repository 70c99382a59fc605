//! Helpers shared by the integration suites: a deterministic RNG, graph
//! samplers, and the independent oracles the frozen expectations come from.

#![allow(dead_code)]

use std::collections::BTreeSet;

use ipoly::ehrhart::{membership, DegreePair};
use ipoly::{BigInt, BipartiteGraph, IntPolynomial};

/// SplitMix64; deterministic across platforms, no dependencies.
pub struct Rng(pub u64);

impl Rng {
    pub fn next(&mut self) -> u64 {
        self.0 = self.0.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.0;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    pub fn below(&mut self, n: u64) -> u64 {
        self.next() % n
    }

    pub fn f64(&mut self) -> f64 {
        (self.next() >> 11) as f64 / (1u64 << 53) as f64
    }

    pub fn chance(&mut self, p: f64) -> bool {
        self.f64() < p
    }
}

pub fn poly(coeffs: &[i64]) -> IntPolynomial {
    IntPolynomial::from_coeffs(coeffs.to_vec())
}

pub fn random_graph(rng: &mut Rng, v: usize, w: usize, p: f64) -> BipartiteGraph {
    let mut edges = Vec::new();
    for i in 0..v as u32 {
        for j in 0..w as u32 {
            if rng.chance(p) {
                edges.push((i, j));
            }
        }
    }
    BipartiteGraph::new(v, w, edges).unwrap()
}

pub fn random_connected_graph(rng: &mut Rng, v: usize, w: usize, p: f64) -> BipartiteGraph {
    loop {
        let g = random_graph(rng, v, w, p);
        if g.components().len() == 1 {
            return g;
        }
    }
}

/// Every bipartite graph on fixed classes (v, w), by edge-subset bits.
pub fn all_graphs(v: usize, w: usize) -> impl Iterator<Item = BipartiteGraph> {
    let full = v * w;
    assert!(full < 32);
    (0u32..(1 << full)).map(move |bits| {
        let edges = (0..v as u32)
            .flat_map(|i| (0..w as u32).map(move |j| (i, j)))
            .enumerate()
            .filter(|(k, _)| bits & (1 << k) != 0)
            .map(|(_, e)| e);
        BipartiteGraph::new(v, w, edges).unwrap()
    })
}

pub fn disjoint_union(g1: &BipartiteGraph, g2: &BipartiteGraph) -> BipartiteGraph {
    let dv = g1.v_count() as u32;
    let dw = g1.w_count() as u32;
    let edges = g1
        .edges()
        .iter()
        .copied()
        .chain(g2.edges().iter().map(|&(i, j)| (i + dv, j + dw)));
    BipartiteGraph::new(g1.v_count() + g2.v_count(), g1.w_count() + g2.w_count(), edges).unwrap()
}

/// P2 x Pk grid, bipartitioned by cell parity.
pub fn grid2(k: usize) -> BipartiteGraph {
    assert!(k >= 1);
    // cell (r, c); even r+c on the V side, in column-major discovery order
    let mut v_idx = vec![[usize::MAX; 2]; k];
    let mut w_idx = vec![[usize::MAX; 2]; k];
    let (mut nv, mut nw) = (0, 0);
    for c in 0..k {
        for r in 0..2 {
            if (r + c) % 2 == 0 {
                v_idx[c][r] = nv;
                nv += 1;
            } else {
                w_idx[c][r] = nw;
                nw += 1;
            }
        }
    }
    let mut edges = Vec::new();
    let mut push = |(r1, c1): (usize, usize), (r2, c2): (usize, usize)| {
        if (r1 + c1) % 2 == 0 {
            edges.push((v_idx[c1][r1] as u32, w_idx[c2][r2] as u32));
        } else {
            edges.push((v_idx[c2][r2] as u32, w_idx[c1][r1] as u32));
        }
    };
    for c in 0..k {
        push((0, c), (1, c));
        if c + 1 < k {
            push((0, c), (0, c + 1));
            push((1, c), (1, c + 1));
        }
    }
    BipartiteGraph::new(nv, nw, edges).unwrap()
}

/// Even cycle on `len` vertices (`len = 2k`).
pub fn cycle(len: usize) -> BipartiteGraph {
    assert!(len >= 4 && len % 2 == 0);
    let k = len / 2;
    let edges = (0..k as u32).flat_map(|i| [(i, i), ((i + 1) % k as u32, i)]);
    BipartiteGraph::new(k, k, edges).unwrap()
}

/// Box-scan oracle: all vectors in `{0..s}^{V ∪ W}` filtered by the
/// transportation-feasibility membership test.
pub fn box_scan(g: &BipartiteGraph, s: usize) -> BTreeSet<DegreePair> {
    let dims = g.vertex_count();
    let mut out = BTreeSet::new();
    let mut point = vec![0u32; dims];
    loop {
        let p = DegreePair {
            a: point[..g.v_count()].to_vec(),
            b: point[g.v_count()..].to_vec(),
        };
        if membership(g, &p, s as u64) {
            out.insert(p);
        }
        let mut t = 0;
        loop {
            if t == dims {
                return out;
            }
            if point[t] as usize == s {
                point[t] = 0;
                t += 1;
            } else {
                point[t] += 1;
                break;
            }
        }
    }
}

/// Expansion of `num / (1-x)^k` by repeated truncated multiplication with
/// the geometric series; independent of the crate's binomial convolution.
pub fn series_oracle(num: &[i64], k: usize, upto: usize) -> Vec<BigInt> {
    let mut acc: Vec<BigInt> = vec![BigInt::from(0); upto + 1];
    for (t, &a) in num.iter().enumerate().take(upto + 1) {
        acc[t] = BigInt::from(a);
    }
    for _ in 0..k {
        let mut next = vec![BigInt::from(0); upto + 1];
        for s in 0..=upto {
            for t in 0..=s {
                next[s] += &acc[t];
            }
        }
        acc = next;
    }
    acc
}

/// One pass/fail line per acceptance criterion.
pub fn report(criterion: &str, ok: bool) {
    println!(
        "acceptance {criterion}: {}",
        if ok { "PASS" } else { "FAIL" }
    );
    assert!(ok, "acceptance criterion failed: {criterion}");
}
