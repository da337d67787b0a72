//! Command-line front end: table sweeps, the verification suite,
//! transition-matrix display, spectral/tangency analysis of JSON input,
//! and the positivity sweep behind the vanishing argument.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use hitchin_ruled::elm::{transition_matrix, verify_cocycle};
use hitchin_ruled::residue::BranchPattern;
use hitchin_ruled::spectral::build;
use hitchin_ruled::tables::{
    ampleness_table, dimension_table, render_ampleness_table, render_dimension_table,
    OutputFormat,
};
use hitchin_ruled::verify::run_all;
use hitchin_ruled::{
    ChartAtlas, CurveContext, HiggsCharData, LocalData, SpectralPointData,
};

const EXIT_FAILURE: u8 = 1;
const EXIT_CONFIG: u8 = 2;

#[derive(Parser)]
#[command(
    name = "hitchin-ruled",
    about = "Divisor calculus, cohomology tables, and tangency checks on ruled-surface models"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
    Markdown,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Json => OutputFormat::Json,
            Format::Csv => OutputFormat::Csv,
            Format::Markdown => OutputFormat::Markdown,
        }
    }
}

#[derive(Args)]
struct GridArgs {
    /// Smallest genus in the sweep (2..=64).
    #[arg(long, default_value_t = 2)]
    genus_min: i64,
    /// Largest genus in the sweep (2..=64).
    #[arg(long, default_value_t = 6)]
    genus_max: i64,
    /// Smallest degree in the sweep (1..=16).
    #[arg(long, default_value_t = 1)]
    n_min: i64,
    /// Largest degree in the sweep (1..=16).
    #[arg(long, default_value_t = 6)]
    n_max: i64,
}

impl GridArgs {
    fn validate(&self) -> Result<((i64, i64), (i64, i64)), String> {
        if !(2..=64).contains(&self.genus_min)
            || !(2..=64).contains(&self.genus_max)
            || self.genus_min > self.genus_max
        {
            return Err(format!(
                "genus range {}..={} outside 2..=64 or empty",
                self.genus_min, self.genus_max
            ));
        }
        if !(1..=16).contains(&self.n_min)
            || !(1..=16).contains(&self.n_max)
            || self.n_min > self.n_max
        {
            return Err(format!(
                "degree range {}..={} outside 1..=16 or empty",
                self.n_min, self.n_max
            ));
        }
        Ok((
            (self.genus_min, self.genus_max),
            (self.n_min, self.n_max),
        ))
    }
}

#[derive(Subcommand)]
enum Command {
    /// Dimension/genus grid with dual-route cross-checked cells.
    Tables {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
    /// Run every invariant suite; exit 0 iff all pass.
    Verify {
        #[command(flatten)]
        grid: GridArgs,
        /// Seed for the randomized property checks.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Number of random atlases in the cocycle suite.
        #[arg(long, default_value_t = 100)]
        atlases: usize,
        /// Number of random multisets in the tail round trip.
        #[arg(long, default_value_t = 1000)]
        tails: usize,
    },
    /// Dump the transition matrices and cocycle traces of a random atlas.
    Elm {
        /// Number of charts in the generated atlas (2..=8).
        #[arg(long, default_value_t = 4)]
        charts: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Analyze spectral local data from a JSON file.
    Spectral {
        /// Input file matching the documented schema.
        input: PathBuf,
        /// Relative tolerance for root recovery and matching.
        #[arg(long, default_value_t = 1e-8)]
        tolerance: f64,
        /// Exit nonzero when the tangency verdict is FAIL.
        #[arg(long)]
        strict: bool,
    },
    /// Positivity sweep of the vanishing-test divisor on the blow-up.
    Ampleness {
        #[command(flatten)]
        grid: GridArgs,
        #[arg(long, value_enum, default_value_t = Format::Markdown)]
        format: Format,
    },
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InputPoint {
    id: String,
    abar: Vec<[f64; 2]>,
    #[serde(default)]
    lambda: Option<Vec<[f64; 2]>>,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct InputFile {
    genus: i64,
    n: usize,
    points: Vec<InputPoint>,
}

fn config_error(msg: &str) -> ExitCode {
    eprintln!("error: {msg}");
    ExitCode::from(EXIT_CONFIG)
}

fn cmd_tables(grid: &GridArgs, format: Format) -> ExitCode {
    let ((g, n), fmt) = match grid.validate() {
        Ok(ranges) => (ranges, OutputFormat::from(format)),
        Err(e) => return config_error(&e),
    };
    let rows = dimension_table(g, n);
    print!("{}", render_dimension_table(&rows, fmt));
    if rows.iter().any(|r| r.has_mismatch()) {
        eprintln!("error: dual-route disagreement in the table above");
        return ExitCode::from(EXIT_FAILURE);
    }
    ExitCode::SUCCESS
}

fn cmd_ampleness(grid: &GridArgs, format: Format) -> ExitCode {
    let ((g, n), fmt) = match grid.validate() {
        Ok(ranges) => (ranges, OutputFormat::from(format)),
        Err(e) => return config_error(&e),
    };
    let rows = ampleness_table(g, n);
    print!("{}", render_ampleness_table(&rows, fmt));
    if rows.iter().any(|r| r.has_mismatch()) {
        eprintln!("error: dual-route disagreement in the table above");
        return ExitCode::from(EXIT_FAILURE);
    }
    ExitCode::SUCCESS
}

fn cmd_verify(grid: &GridArgs, seed: u64, atlases: usize, tails: usize) -> ExitCode {
    if let Err(e) = grid.validate() {
        return config_error(&e);
    }
    let outcomes = run_all(seed, atlases, tails);
    let mut all_pass = true;
    for o in &outcomes {
        println!("{} {} ({})", if o.pass { "PASS" } else { "FAIL" }, o.name, o.detail);
        all_pass &= o.pass;
    }
    if all_pass {
        println!("verify: all {} suites passed (seed {seed})", outcomes.len());
        ExitCode::SUCCESS
    } else {
        eprintln!("verify: at least one suite failed (seed {seed})");
        ExitCode::from(EXIT_FAILURE)
    }
}

fn cmd_elm(charts: u32, seed: u64) -> ExitCode {
    if !(2..=8).contains(&charts) {
        return config_error("chart count must be in 2..=8");
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atlas = ChartAtlas::random(&mut rng, charts);
    println!("atlas: {charts} charts, seed {seed}");
    for (i, j, q0) in atlas.overlaps() {
        let m = transition_matrix::<i64>(&atlas, i, j).expect("overlap from the atlas");
        println!(
            "\noverlap ({i},{j}){}:",
            if q0 { " through q0" } else { "" }
        );
        println!("{m}");
    }
    let mut ok = true;
    for (i, j, k) in atlas.triples() {
        let check = verify_cocycle::<i64>(&atlas, i, j, k).expect("triple from the atlas");
        println!(
            "\ncocycle ({i},{j},{k}): {}",
            if check.ok { "holds" } else { "VIOLATED" }
        );
        println!("  {}", check.trace);
        ok &= check.ok;
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_FAILURE)
    }
}

fn cx(pair: [f64; 2]) -> Complex64 {
    Complex64::new(pair[0], pair[1])
}

fn cmd_spectral(input: &PathBuf, tolerance: f64, strict: bool) -> ExitCode {
    if !(tolerance > 0.0) {
        return config_error("tolerance must be positive");
    }
    let raw = match std::fs::read_to_string(input) {
        Ok(s) => s,
        Err(e) => return config_error(&format!("cannot read {}: {e}", input.display())),
    };
    let parsed: InputFile = match serde_json::from_str(&raw) {
        Ok(p) => p,
        Err(e) => return config_error(&format!("schema violation: {e}")),
    };
    if !(2..=64).contains(&parsed.genus) {
        return config_error("genus must be in 2..=64");
    }
    if !(1..=16).contains(&(parsed.n as i64)) {
        return config_error("n must be in 1..=16");
    }
    let local = LocalData {
        genus: parsed.genus,
        n: parsed.n,
        points: parsed
            .points
            .iter()
            .map(|p| SpectralPointData {
                id: p.id.clone(),
                abar: p.abar.iter().copied().map(cx).collect(),
                lambda: p
                    .lambda
                    .as_ref()
                    .map(|l| l.iter().copied().map(cx).collect()),
            })
            .collect(),
    };
    if let Err(e) = local.validate() {
        return config_error(&format!("schema violation: {e}"));
    }
    let ctx = match CurveContext::<i64>::new(
        parsed.genus,
        parsed.points.iter().map(|p| p.id.clone()).collect(),
    ) {
        Ok(c) => c,
        Err(e) => return config_error(&format!("schema violation: {e}")),
    };
    let data = match HiggsCharData::new(ctx, parsed.n as i64, local) {
        Ok(d) => d,
        Err(e) => return config_error(&format!("inconsistent input: {e}")),
    };
    let descriptor = match build(&data, tolerance) {
        Ok(d) => d,
        Err(e) => return config_error(&format!("analysis failed: {e}")),
    };

    println!(
        "spectral curve: n={}, g={} (class ({}, {}) on S', ({}, {}) on S)",
        descriptor.n,
        parsed.genus,
        descriptor.class_sprime.c0,
        descriptor.class_sprime.fdeg,
        descriptor.class_s.c0,
        descriptor.class_s.fdeg,
    );
    println!(
        "genus accounting: arithmetic {}, delta {}, geometric {}{}",
        descriptor.genus.arithmetic_genus,
        descriptor.genus.delta_total,
        descriptor.genus.geometric_genus,
        if descriptor.genus.exact {
            ""
        } else {
            " (upper bound: non-ordinary data)"
        }
    );
    for (id, pattern) in &descriptor.patterns {
        match pattern {
            BranchPattern::Ordinary => println!("point {id}: ordinary n-fold crossing"),
            BranchPattern::Repeated => println!("point {id}: repeated tail (non-ordinary)"),
            BranchPattern::MissesBase => println!("point {id}: branch misses C0 over point"),
        }
    }
    match &descriptor.tangency {
        None => {
            println!("tangency: skipped (no lambda tails in input)");
            ExitCode::SUCCESS
        }
        Some(report) => {
            for p in &report.points {
                let tails: Vec<String> = p
                    .recovered
                    .iter()
                    .map(|c| format!("{:.6}{:+.6}i", c.re, c.im))
                    .collect();
                print!("point {}: tails [{}]", p.id, tails.join(", "));
                if p.pass {
                    println!(" matched");
                } else {
                    println!(
                        " MISMATCH at branch {}",
                        p.failing_branch.expect("failed point names a branch")
                    );
                }
            }
            println!("tangency: {}", if report.pass { "PASS" } else { "FAIL" });
            if !report.pass && strict {
                ExitCode::from(EXIT_FAILURE)
            } else {
                ExitCode::SUCCESS
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match &cli.command {
        Command::Tables { grid, format } => cmd_tables(grid, *format),
        Command::Verify {
            grid,
            seed,
            atlases,
            tails,
        } => cmd_verify(grid, *seed, *atlases, *tails),
        Command::Elm { charts, seed } => cmd_elm(*charts, *seed),
        Command::Spectral {
            input,
            tolerance,
            strict,
        } => cmd_spectral(input, *tolerance, *strict),
        Command::Ampleness { grid, format } => cmd_ampleness(grid, *format),
    }
}
