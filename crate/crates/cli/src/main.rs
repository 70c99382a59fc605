use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser};

use ipoly_cli::{
    render_json, render_text, run, GenSpec, Method, RunConfig, Source, MISMATCH_EXIT_CODE,
};

/// Compute the interior polynomial of a bipartite graph by independent
/// methods and cross-check them.
#[derive(Parser, Debug)]
#[command(name = "ipoly", version, group = ArgGroup::new("source").required(true).args(["input", "gen"]))]
struct Args {
    /// Graph file (`p bip nV nW nE` header, `e i j` lines, 1-based)
    #[arg(long)]
    input: Option<PathBuf>,

    /// Generator spec: `complete m n`, `grid2 k`, `path k`, `cycle 2k`,
    /// `star n`, or `random nV nW p [seed]`
    #[arg(long)]
    gen: Option<String>,

    /// ehrhart, nonexpanding, altcycle, closed-form, auto, or verify
    #[arg(long, default_value = "auto")]
    method: String,

    /// Run every applicable method and check agreement (same as
    /// `--method verify`)
    #[arg(long)]
    verify: bool,

    /// Emit the report as JSON
    #[arg(long)]
    json: bool,

    /// Also print lattice counts for dilations 0..=S
    #[arg(long, value_name = "S")]
    ehrhart_upto: Option<usize>,

    /// Thread count for the parallel engines (1 forces sequential)
    #[arg(long, value_name = "N")]
    threads: Option<usize>,

    /// Abort enumeration once a dilation exceeds this many points
    #[arg(long, value_name = "N", default_value_t = ipoly::ehrhart::DEFAULT_MAX_POINTS)]
    max_points: usize,

    /// Seed for `random` generator specs that omit one
    #[arg(long, value_name = "N", default_value_t = 0)]
    seed: u64,

    /// Testing hook: corrupt one method's result in verify mode
    #[arg(long, hide = true, value_name = "METHOD")]
    inject_fault: Option<String>,
}

fn build_config(args: &Args) -> Result<RunConfig, ipoly_cli::CliError> {
    let source = match (&args.input, &args.gen) {
        (Some(path), None) => Source::File(path.clone()),
        (None, Some(spec)) => Source::Gen(spec.parse::<GenSpec>()?),
        _ => unreachable!("clap enforces exactly one source"),
    };
    let mut config = RunConfig::new(source);
    config.method = if args.verify {
        Method::Verify
    } else {
        args.method.parse()?
    };
    config.ehrhart_upto = args.ehrhart_upto;
    config.max_points = args.max_points;
    config.threads = args.threads;
    config.seed = args.seed;
    config.inject_fault = match &args.inject_fault {
        Some(name) => Some(name.parse()?),
        None => None,
    };
    Ok(config)
}

fn main() -> ExitCode {
    let args = Args::parse();
    let config = match build_config(&args) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    match run(&config) {
        Ok(report) => {
            if args.json {
                println!("{}", render_json(&report));
            } else {
                print!("{}", render_text(&report));
            }
            if report.agreement == Some(false) {
                eprintln!("error: methods disagree");
                return ExitCode::from(MISMATCH_EXIT_CODE as u8);
            }
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
