//! Built-in graph generators, so every test case can be driven without
//! hand-written files.

use std::str::FromStr;

use ipoly::BipartiteGraph;

use crate::CliError;

/// A generator spec as given to `--gen`, e.g. `"complete 2 3"`.
#[derive(Debug, Clone, PartialEq)]
pub enum GenSpec {
    Complete { m: usize, n: usize },
    /// P2 x Pk grid.
    Grid2 { k: usize },
    /// Path on `k` vertices.
    Path { k: usize },
    /// Even cycle on `len` vertices.
    Cycle { len: usize },
    /// Star K_{1,n}.
    Star { n: usize },
    Random { v: usize, w: usize, p: f64, seed: Option<u64> },
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

impl FromStr for GenSpec {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        let fields: Vec<&str> = s.split_whitespace().collect();
        let int = |f: &str| {
            f.parse::<usize>()
                .map_err(|_| usage(format!("`{f}` is not a count in generator `{s}`")))
        };
        match fields.as_slice() {
            ["complete", m, n] => Ok(GenSpec::Complete {
                m: int(m)?,
                n: int(n)?,
            }),
            ["grid2", k] => Ok(GenSpec::Grid2 { k: int(k)? }),
            ["path", k] => Ok(GenSpec::Path { k: int(k)? }),
            ["cycle", len] => {
                let len = int(len)?;
                if len < 4 || len % 2 != 0 {
                    return Err(usage("cycle length must be an even number >= 4"));
                }
                Ok(GenSpec::Cycle { len })
            }
            ["star", n] => Ok(GenSpec::Star { n: int(n)? }),
            ["random", v, w, p, rest @ ..] => {
                let p: f64 = p
                    .parse()
                    .map_err(|_| usage(format!("`{p}` is not a probability")))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(usage("edge probability must lie in [0, 1]"));
                }
                let seed = match rest {
                    [] => None,
                    [s] => Some(
                        s.parse::<u64>()
                            .map_err(|_| usage(format!("`{s}` is not a seed")))?,
                    ),
                    _ => return Err(usage("random takes `nV nW p [seed]`")),
                };
                Ok(GenSpec::Random {
                    v: int(v)?,
                    w: int(w)?,
                    p,
                    seed,
                })
            }
            _ => Err(usage(format!(
                "unknown generator `{s}`; available: complete m n, grid2 k, path k, \
                 cycle 2k, star n, random nV nW p [seed]"
            ))),
        }
    }
}

impl GenSpec {
    /// Builds the graph; `fallback_seed` feeds `random` specs without one.
    pub fn build(&self, fallback_seed: u64) -> Result<BipartiteGraph, CliError> {
        let g = match *self {
            GenSpec::Complete { m, n } => BipartiteGraph::complete(m, n)?,
            GenSpec::Grid2 { k } => grid2(k)?,
            GenSpec::Path { k } => path(k)?,
            GenSpec::Cycle { len } => cycle(len)?,
            GenSpec::Star { n } => BipartiteGraph::complete(1, n)?,
            GenSpec::Random { v, w, p, seed } => random(v, w, p, seed.unwrap_or(fallback_seed))?,
        };
        Ok(g)
    }
}

fn grid2(k: usize) -> Result<BipartiteGraph, ipoly::Error> {
    // cells (r, c) with r in {0,1}; even r+c on the V side, column-major
    let mut v_of = vec![[0u32; 2]; k];
    let mut w_of = vec![[0u32; 2]; k];
    let (mut nv, mut nw) = (0u32, 0u32);
    for c in 0..k {
        for r in 0..2 {
            if (r + c) % 2 == 0 {
                v_of[c][r] = nv;
                nv += 1;
            } else {
                w_of[c][r] = nw;
                nw += 1;
            }
        }
    }
    let mut edges = Vec::new();
    let mut link = |a: (usize, usize), b: (usize, usize)| {
        let (v_cell, w_cell) = if (a.0 + a.1) % 2 == 0 { (a, b) } else { (b, a) };
        edges.push((v_of[v_cell.1][v_cell.0], w_of[w_cell.1][w_cell.0]));
    };
    for c in 0..k {
        link((0, c), (1, c));
        if c + 1 < k {
            link((0, c), (0, c + 1));
            link((1, c), (1, c + 1));
        }
    }
    BipartiteGraph::new(nv as usize, nw as usize, edges)
}

fn path(k: usize) -> Result<BipartiteGraph, ipoly::Error> {
    // vertices alternate V, W along the path
    let edges = (0..k.saturating_sub(1)).map(|t| {
        if t % 2 == 0 {
            ((t / 2) as u32, (t / 2) as u32)
        } else {
            (t.div_ceil(2) as u32, ((t - 1) / 2) as u32)
        }
    });
    BipartiteGraph::new(k.div_ceil(2), k / 2, edges)
}

fn cycle(len: usize) -> Result<BipartiteGraph, ipoly::Error> {
    let k = (len / 2) as u32;
    let edges = (0..k).flat_map(|i| [(i, i), ((i + 1) % k, i)]);
    BipartiteGraph::new(len / 2, len / 2, edges)
}

fn random(v: usize, w: usize, p: f64, seed: u64) -> Result<BipartiteGraph, ipoly::Error> {
    let mut state = seed;
    let mut next = move || {
        state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    };
    let mut edges = Vec::new();
    for i in 0..v as u32 {
        for j in 0..w as u32 {
            if ((next() >> 11) as f64 / (1u64 << 53) as f64) < p {
                edges.push((i, j));
            }
        }
    }
    BipartiteGraph::new(v, w, edges)
}
