//! Library half of the `ipoly` binary: configuration, method dispatch,
//! verification, and report rendering. Kept apart from `main` so the
//! integration tests can drive everything but the argument parser.

pub mod format;
pub mod gen;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::Instant;

use serde_json::{json, Value};
use thiserror::Error;

use ipoly::ehrhart::{self, EnumerationOptions};
use ipoly::recursion::{self, RecursionOptions};
use ipoly::{closed_form, BipartiteGraph, IntPolynomial};

pub use gen::GenSpec;
use ipoly::num_bigint;
use num_bigint::BigInt;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}: {msg}")]
    Parse {
        path: String,
        line: usize,
        msg: String,
    },
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error(transparent)]
    Core(#[from] ipoly::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        1
    }
}

/// Exit status when verification finds disagreeing methods. Distinct from
/// 1 (run errors) and from 2 (argument errors, reserved by the parser).
pub const MISMATCH_EXIT_CODE: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Ehrhart,
    NonExpanding,
    AltCycle,
    ClosedForm,
    Auto,
    Verify,
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Ehrhart => "ehrhart",
            Method::NonExpanding => "nonexpanding",
            Method::AltCycle => "altcycle",
            Method::ClosedForm => "closed-form",
            Method::Auto => "auto",
            Method::Verify => "verify",
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Method {
    type Err = CliError;

    fn from_str(s: &str) -> Result<Self, CliError> {
        match s {
            "ehrhart" => Ok(Method::Ehrhart),
            "nonexpanding" => Ok(Method::NonExpanding),
            "altcycle" => Ok(Method::AltCycle),
            "closed-form" => Ok(Method::ClosedForm),
            "auto" => Ok(Method::Auto),
            "verify" => Ok(Method::Verify),
            _ => Err(CliError::Usage(format!(
                "unknown method `{s}`; expected ehrhart, nonexpanding, altcycle, \
                 closed-form, auto, or verify"
            ))),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Source {
    File(PathBuf),
    Gen(GenSpec),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub source: Source,
    pub method: Method,
    /// Also dump raw lattice counts for dilations `0..=upto`.
    pub ehrhart_upto: Option<usize>,
    pub max_points: usize,
    pub threads: Option<usize>,
    pub seed: u64,
    /// Testing hook: corrupt this method's result before comparison.
    pub inject_fault: Option<Method>,
}

impl RunConfig {
    pub fn new(source: Source) -> Self {
        RunConfig {
            source,
            method: Method::Auto,
            ehrhart_upto: None,
            max_points: ehrhart::DEFAULT_MAX_POINTS,
            threads: None,
            seed: 0,
            inject_fault: None,
        }
    }
}

// Size ceilings for picking methods automatically; the recursions are
// exponential in their class / cycle sizes.
const RECURSION_VERTEX_CAP: usize = 20;
const ALTCYCLE_EDGE_CAP: usize = 16;

#[derive(Debug, Clone)]
pub struct MethodRun {
    pub method: Method,
    pub interior: IntPolynomial,
    pub millis: f64,
}

#[derive(Debug, Clone)]
pub struct Report {
    pub graph: BipartiteGraph,
    pub requested: Method,
    pub runs: Vec<MethodRun>,
    pub ehrhart_values: Option<Vec<u64>>,
    /// `Some` only in verify mode.
    pub agreement: Option<bool>,
}

impl Report {
    /// The result a single-method run reports; in verify mode, the first.
    pub fn primary(&self) -> &MethodRun {
        &self.runs[0]
    }
}

pub fn run(config: &RunConfig) -> Result<Report, CliError> {
    let graph = match &config.source {
        Source::File(path) => format::parse_graph_file(path)?,
        Source::Gen(spec) => spec.build(config.seed)?,
    };

    let methods = resolve_methods(config, &graph)?;

    match config.threads {
        None | Some(0) => compute(config, graph, &methods),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| CliError::Usage(format!("cannot build thread pool: {e}")))?;
            pool.install(|| compute(config, graph, &methods))
        }
    }
}

fn resolve_methods(config: &RunConfig, g: &BipartiteGraph) -> Result<Vec<Method>, CliError> {
    let complete_dims = matches!(&config.source, Source::Gen(GenSpec::Complete { .. }));
    let methods = match config.method {
        Method::Verify => {
            let mut out = vec![Method::Ehrhart];
            if g.vertex_count() <= RECURSION_VERTEX_CAP {
                out.push(Method::NonExpanding);
            }
            if g.edge_count() <= ALTCYCLE_EDGE_CAP && g.vertex_count() <= RECURSION_VERTEX_CAP {
                out.push(Method::AltCycle);
            }
            if complete_dims {
                out.push(Method::ClosedForm);
            }
            out
        }
        Method::Auto => {
            if complete_dims {
                vec![Method::ClosedForm]
            } else if g.vertex_count() <= RECURSION_VERTEX_CAP {
                vec![Method::NonExpanding]
            } else {
                vec![Method::Ehrhart]
            }
        }
        Method::ClosedForm => {
            if !complete_dims {
                return Err(CliError::Usage(
                    "closed-form needs `--gen \"complete m n\"`".into(),
                ));
            }
            vec![Method::ClosedForm]
        }
        m => vec![m],
    };
    Ok(methods)
}

fn compute(
    config: &RunConfig,
    graph: BipartiteGraph,
    methods: &[Method],
) -> Result<Report, CliError> {
    let parallel = config.threads != Some(1);
    let enum_opts = EnumerationOptions {
        max_points: config.max_points,
        parallel,
    };
    let rec_opts = RecursionOptions {
        parallel,
        ..Default::default()
    };

    let mut runs = Vec::new();
    for &method in methods {
        let start = Instant::now();
        let mut interior = match method {
            Method::Ehrhart => ehrhart::interior_via_ehrhart_with(&graph, &enum_opts)?,
            Method::NonExpanding => recursion::interior_nonexpanding_with(&graph, &rec_opts)?,
            Method::AltCycle => recursion::interior_altcycle_with(&graph, &rec_opts)?,
            Method::ClosedForm => match &config.source {
                Source::Gen(GenSpec::Complete { m, n }) => closed_form::interior_complete(*m, *n)?,
                _ => unreachable!("resolve_methods rejects closed-form without dims"),
            },
            Method::Auto | Method::Verify => unreachable!("resolved earlier"),
        };
        if config.inject_fault == Some(method) {
            interior = &interior + &IntPolynomial::x();
        }
        runs.push(MethodRun {
            method,
            interior,
            millis: start.elapsed().as_secs_f64() * 1e3,
        });
    }

    let ehrhart_values = match config.ehrhart_upto {
        Some(upto) => Some(ehrhart::ehrhart_values_with(&graph, upto, &enum_opts)?),
        None => None,
    };

    let agreement = match config.method {
        Method::Verify => Some(runs.windows(2).all(|w| w[0].interior == w[1].interior)),
        _ => None,
    };

    Ok(Report {
        graph,
        requested: config.method,
        runs,
        ehrhart_values,
        agreement,
    })
}

fn coefficient_json(c: &BigInt) -> Value {
    // exact while it fits; decimal string beyond, so nothing silently wraps
    match i64::try_from(c) {
        Ok(v) => json!(v),
        Err(_) => json!(c.to_string()),
    }
}

pub fn render_json(report: &Report) -> Value {
    let g = &report.graph;
    let edges: Vec<Value> = g
        .edges()
        .iter()
        .map(|&(i, j)| json!([i + 1, j + 1]))
        .collect();
    let primary = report.primary();
    let mut out = json!({
        "graph": { "nV": g.v_count(), "nW": g.w_count(), "edges": edges },
        "method": report.requested.name(),
        "coefficients": primary.interior.coeffs().iter().map(coefficient_json).collect::<Vec<_>>(),
        "polynomial": primary.interior.to_string(),
        "timings_ms": report
            .runs
            .iter()
            .map(|r| (r.method.name().to_string(), json!(r.millis)))
            .collect::<serde_json::Map<_, _>>(),
    });
    if let Some(values) = &report.ehrhart_values {
        out["ehrhart_values"] = json!(values);
    }
    if let Some(agreement) = report.agreement {
        out["agreement"] = json!(agreement);
    }
    out
}

pub fn render_text(report: &Report) -> String {
    let g = &report.graph;
    let mut out = format!(
        "graph: nV={} nW={} edges={}\n",
        g.v_count(),
        g.w_count(),
        g.edge_count()
    );
    for run in &report.runs {
        out.push_str(&format!(
            "interior ({}): {}   [{:.2} ms]\n",
            run.method, run.interior, run.millis
        ));
    }
    if let Some(values) = &report.ehrhart_values {
        let list: Vec<String> = values.iter().map(u64::to_string).collect();
        out.push_str(&format!(
            "ehrhart values (s = 0..{}): {}\n",
            values.len() - 1,
            list.join(" ")
        ));
    }
    if let Some(agreement) = report.agreement {
        out.push_str(&format!(
            "agreement: {}\n",
            if agreement { "yes" } else { "NO" }
        ));
    }
    out
}
