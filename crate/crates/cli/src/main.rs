//! `kronfact` command line tool.
//!
//! Subcommands: `factorize`, `graph`, `layout`, `nkp`, `gen`. Exit codes:
//! 0 success (decomposable for `factorize`/`graph`), 1 unreadable or
//! malformed input, 2 domain error, 3 prime pattern, 4 power iteration did
//! not converge.

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use kronfact::branch::{build_branches, decomposition_graph, decompositions_from};
use kronfact::factorize::{all_length2, try_factorize, Length2Factorization};
use kronfact::generate;
use kronfact::io::{
    read_matrix_market, read_pattern, write_dot, write_json, write_pattern_coordinate,
    write_real_array, write_svg, FactorizationReport, LayoutReport, NkpReport, PositionReport,
    SvgStyle,
};
use kronfact::layout::{
    edge_segments, layout_positions, vertex_multi_index, LayoutConfig, DEFAULT_RADIUS_RATIO,
};
use kronfact::nkp::{nkp_multi, DEFAULT_MAXIT, DEFAULT_TOL};
use kronfact::pattern::{kron_all, BinaryPattern};
use kronfact::{Error, Result};

const EXIT_PARSE: u8 = 1;
const EXIT_DOMAIN: u8 = 2;
const EXIT_PRIME: u8 = 3;
const EXIT_NON_CONVERGENCE: u8 = 4;

/// Prints to stdout, swallowing broken pipes so downstream `head` does not
/// turn into a panic.
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout(), $($arg)*);
    }};
}

#[derive(Parser)]
#[command(
    name = "kronfact",
    version,
    about = "Kronecker factorization of sparse binary matrices"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Find every Kronecker factorization of a sparsity pattern.
    Factorize {
        /// Matrix Market file (pattern or real) or whitespace edge list.
        input: PathBuf,
        /// Test only this pair instead of sweeping all compatible pairs;
        /// factor primality is then no longer guaranteed.
        #[arg(long, num_args = 2, value_names = ["N1", "N2"])]
        pair: Option<Vec<u64>>,
        /// Write the full report as canonical JSON.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Re-verify every decomposition against the input pattern.
        #[arg(long)]
        verify: bool,
    },
    /// Factorize and export the decomposition graph as DOT.
    Graph {
        input: PathBuf,
        #[arg(long)]
        dot: PathBuf,
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Compute vertex positions for a Kronecker graph and render them.
    Layout {
        input: PathBuf,
        /// Factor sizes, e.g. 4,3,2; must multiply to the pattern size.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u64>,
        /// Per-level radii (default: 1, 0.35, 0.35^2, ...).
        #[arg(long, value_delimiter = ',')]
        radii: Option<Vec<f64>>,
        /// Rotation phase shift in radians.
        #[arg(long, default_value_t = std::f64::consts::FRAC_PI_2)]
        shift: f64,
        #[arg(long)]
        svg: Option<PathBuf>,
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long, default_value_t = 0.6)]
        stroke_opacity: f64,
        /// Draw arrowheads on directed edges.
        #[arg(long)]
        arrowheads: bool,
    },
    /// Nearest Kronecker product of a real matrix for fixed sizes.
    Nkp {
        /// Matrix Market real file (coordinate or array).
        input: PathBuf,
        /// Factor sizes, e.g. 31,12,12,12; must multiply to the matrix size.
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u64>,
        #[arg(long, default_value_t = DEFAULT_TOL)]
        tol: f64,
        #[arg(long, default_value_t = DEFAULT_MAXIT)]
        maxit: usize,
        /// Prefix for output files: <prefix>.factor<k>.mtx and <prefix>.json.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate deterministic fixture patterns.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Identity pattern of size n (maximal).
    Identity {
        n: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// All-ones pattern of size n (maximal).
    Ones {
        n: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Single-entry pattern at (i, j).
    Basis {
        n: u64,
        i: u64,
        j: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Pattern with i.i.d. Bernoulli(density) entries.
    Random {
        n: u64,
        density: f64,
        #[arg(long, default_value_t = generate::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Kronecker product of random nonempty patterns with the given sizes.
    Kron {
        #[arg(long, value_delimiter = ',', required = true)]
        sizes: Vec<u64>,
        #[arg(long, default_value_t = 0.5)]
        density: f64,
        #[arg(long, default_value_t = generate::DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Banded pattern with the given lower and upper bandwidths.
    Banded {
        n: u64,
        lower: u64,
        upper: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    configure_threads();
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Parse { .. } | Error::Io(_) => EXIT_PARSE,
                Error::Domain(_) | Error::EmptyPattern | Error::Consistency(_) => EXIT_DOMAIN,
                Error::NonConvergence { .. } => EXIT_NON_CONVERGENCE,
            })
        }
    }
}

/// KRONFACT_THREADS caps the parallelism of the compatible-pair sweep.
fn configure_threads() {
    if let Ok(value) = std::env::var("KRONFACT_THREADS") {
        if let Ok(threads) = value.parse::<usize>() {
            if threads > 0 {
                let _ = rayon::ThreadPoolBuilder::new()
                    .num_threads(threads)
                    .build_global();
            }
        }
    }
}

fn run(command: Command) -> Result<u8> {
    match command {
        Command::Factorize {
            input,
            pair,
            json,
            verify,
        } => cmd_factorize(&input, pair, json.as_deref(), verify),
        Command::Graph { input, dot, json } => cmd_graph(&input, &dot, json.as_deref()),
        Command::Layout {
            input,
            sizes,
            radii,
            shift,
            svg,
            json,
            stroke_opacity,
            arrowheads,
        } => cmd_layout(
            &input,
            &sizes,
            radii,
            shift,
            svg.as_deref(),
            json.as_deref(),
            stroke_opacity,
            arrowheads,
        ),
        Command::Nkp {
            input,
            sizes,
            tol,
            maxit,
            out,
        } => cmd_nkp(&input, &sizes, tol, maxit, out.as_deref()),
        Command::Gen { kind } => cmd_gen(kind),
    }
}

struct FactorizationRun {
    pattern: BinaryPattern,
    factorizations: Vec<Length2Factorization>,
    report: FactorizationReport,
}

fn run_factorization(path: &Path, pair: Option<(u64, u64)>) -> Result<FactorizationRun> {
    let pattern = read_pattern(path)?;
    let (factorizations, restricted) = match pair {
        Some((n1, n2)) => {
            let f = try_factorize(&pattern, n1, n2)?;
            (f.into_iter().collect::<Vec<_>>(), Some(vec![(n1, n2)]))
        }
        None => (all_length2(&pattern)?, None),
    };
    let branches = build_branches(&factorizations, pattern.size());
    let decompositions = decompositions_from(&pattern, &factorizations)?;
    let report = FactorizationReport::build(
        &pattern,
        &factorizations,
        &branches,
        &decompositions,
        restricted,
    );
    Ok(FactorizationRun {
        pattern,
        factorizations,
        report,
    })
}

fn print_report(report: &FactorizationReport) {
    out!("size: {}", report.size);
    out!("nnz: {}", report.nnz);
    if let Some(pairs) = &report.restricted_pairs {
        let formatted: Vec<String> = pairs.iter().map(|(a, b)| format!("({a},{b})")).collect();
        out!("restricted pairs: {}", formatted.join(" "));
    }
    out!("pairs tested: {}", report.pairs_tested.len());
    out!("length-2 factorizations: {}", report.factorizations.len());
    for f in &report.factorizations {
        out!(
            "  ({},{}) left nnz {}, right nnz {}",
            f.n1,
            f.n2,
            f.left_nnz,
            f.right_nnz
        );
    }
    out!("branches: {}", report.branches.len());
    out!("prime decompositions: {}", report.decompositions.len());
    for d in &report.decompositions {
        let sizes: Vec<String> = d.sizes.iter().map(|s| s.to_string()).collect();
        out!("  ({})", sizes.join(","));
    }
    out!("prime: {}", report.prime);
    out!("maximal: {}", report.maximal);
    if !report.primality_guaranteed {
        out!("warning: restricted pair set; factor primality not guaranteed");
    }
}

fn cmd_factorize(
    input: &Path,
    pair: Option<Vec<u64>>,
    json: Option<&Path>,
    verify: bool,
) -> Result<u8> {
    let pair = pair.map(|p| (p[0], p[1]));
    let run = run_factorization(input, pair)?;
    if verify {
        for d in &run.report.decompositions {
            let factors: Vec<BinaryPattern> = d
                .factors
                .iter()
                .map(|f| BinaryPattern::from_coordinates(f.size, f.entries.iter().copied()))
                .collect::<Result<_>>()?;
            if kron_all(&factors) != run.pattern {
                return Err(Error::Consistency(format!(
                    "decomposition {:?} failed verification",
                    d.sizes
                )));
            }
        }
        out!("verified: all decompositions reproduce the input");
    }
    print_report(&run.report);
    if let Some(path) = json {
        write_json(&run.report, path)?;
    }
    Ok(if run.report.prime { EXIT_PRIME } else { 0 })
}

fn cmd_graph(input: &Path, dot: &Path, json: Option<&Path>) -> Result<u8> {
    let run = run_factorization(input, None)?;
    let branches = build_branches(&run.factorizations, run.pattern.size());
    let graph = decomposition_graph(&branches, &run.factorizations, run.pattern.size());
    write_dot(&graph, dot)?;
    out!(
        "graph: {} vertices, {} edges, {} paths",
        graph.vertices().len(),
        graph.edges().len(),
        graph.branches().len()
    );
    if let Some(path) = json {
        write_json(&run.report, path)?;
    }
    Ok(if run.report.prime { EXIT_PRIME } else { 0 })
}

#[allow(clippy::too_many_arguments)]
fn cmd_layout(
    input: &Path,
    sizes: &[u64],
    radii: Option<Vec<f64>>,
    shift: f64,
    svg: Option<&Path>,
    json: Option<&Path>,
    stroke_opacity: f64,
    arrowheads: bool,
) -> Result<u8> {
    let pattern = read_pattern(input)?;
    let product = sizes.iter().try_fold(1u64, |acc, &s| acc.checked_mul(s));
    if product != Some(pattern.size()) {
        return Err(Error::Domain(format!(
            "sizes {sizes:?} do not multiply to the pattern size {}",
            pattern.size()
        )));
    }
    let radii = radii.unwrap_or_else(|| {
        let mut r = 1.0;
        sizes
            .iter()
            .map(|_| {
                let current = r;
                r *= DEFAULT_RADIUS_RATIO;
                current
            })
            .collect()
    });
    let config = LayoutConfig::new(sizes.to_vec(), radii, shift)?;
    let layout = layout_positions(&config);
    let segments = edge_segments(&pattern, &layout)?;
    out!(
        "layout: {} vertices, {} edges",
        layout.vertex_count(),
        segments.len()
    );

    if let Some(path) = svg {
        let style = SvgStyle {
            stroke_opacity,
            arrowheads,
            ..SvgStyle::default()
        };
        write_svg(&layout, &segments, &style, path)?;
    }
    if let Some(path) = json {
        let positions = layout
            .positions()
            .iter()
            .enumerate()
            .map(|(k, &(x, y))| {
                let vertex = k as u64 + 1;
                Ok(PositionReport {
                    vertex,
                    index: vertex_multi_index(vertex, sizes)?,
                    x,
                    y,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        write_json(&LayoutReport::new(sizes.to_vec(), positions), path)?;
    }
    Ok(0)
}

fn cmd_nkp(input: &Path, sizes: &[u64], tol: f64, maxit: usize, out: Option<&Path>) -> Result<u8> {
    let matrix = read_matrix_market(input)?.into_real()?;
    let result = nkp_multi(&matrix, sizes, tol, maxit)?;
    let norm = matrix.frobenius_norm();
    let relative = result.frobenius_error / norm;
    out!("sizes: {sizes:?}");
    out!("sigma: {:.12e}", result.sigma);
    out!("frobenius error: {:.12e}", result.frobenius_error);
    out!("relative error: {:.12e}", relative);

    if let Some(prefix) = out {
        let prefix = prefix.to_string_lossy();
        let mut factor_files = Vec::new();
        for (k, factor) in result.factors.iter().enumerate() {
            let path = PathBuf::from(format!("{prefix}.factor{}.mtx", k + 1));
            write_real_array(factor, &path)?;
            factor_files.push(path.to_string_lossy().into_owned());
        }
        let report = NkpReport::new(
            sizes.to_vec(),
            result.sigma,
            result.frobenius_error,
            relative,
            factor_files,
        );
        write_json(&report, &PathBuf::from(format!("{prefix}.json")))?;
    }
    Ok(0)
}

fn cmd_gen(kind: GenKind) -> Result<u8> {
    let (pattern, out) = match kind {
        GenKind::Identity { n, out } => (BinaryPattern::identity(n)?, out),
        GenKind::Ones { n, out } => (BinaryPattern::ones(n)?, out),
        GenKind::Basis { n, i, j, out } => (BinaryPattern::basis(n, i, j)?, out),
        GenKind::Random {
            n,
            density,
            seed,
            out,
        } => {
            let mut rng = generate::seeded_rng(seed);
            (generate::random_pattern(n, density, &mut rng)?, out)
        }
        GenKind::Kron {
            sizes,
            density,
            seed,
            out,
        } => {
            let mut rng = generate::seeded_rng(seed);
            (
                generate::random_kron_pattern(&sizes, density, &mut rng)?,
                out,
            )
        }
        GenKind::Banded {
            n,
            lower,
            upper,
            out,
        } => (BinaryPattern::banded(n, lower, upper)?, out),
    };
    write_pattern_coordinate(&pattern, &out)?;
    out!(
        "wrote {} ({} nnz, size {})",
        out.display(),
        pattern.nnz(),
        pattern.size()
    );
    Ok(0)
}
