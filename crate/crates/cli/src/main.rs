//! `abp`: construct, export, evaluate, compose and verify branching
//! programs from the command line.
//!
//! Exit codes: 0 success, 1 invalid input, 2 size guard exceeded,
//! 3 verification failure.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};

use abp_core::abp::{peek_header, read_json_fp, read_json_rational, to_dot, to_json};
use abp_core::algebra::{rect_permanent_algebra, Algebra, AlgebraElement, Grid};
use abp_core::apps::{
    count_k_paths_direct, count_k_paths_direct_matrix, count_k_paths_via_rdet, enumerate_k_paths,
    injection_filter_abp, nc_rect_determinant_abp, Digraph,
};
use abp_core::constructions::{
    elementary_symmetric_abp, elementary_symmetric_nc_abp, nc_determinant_abp, positive_weak_abp,
    rect_determinant_abp, rect_permanent_nc_abp, s_star_abp, superset_sums_abp,
    symmetrized_subsets_abp, weak_s_star_abp,
};
use abp_core::verify as suites;
use abp_core::{Abp, Error, FieldSpec, Fp, Rational, Scalar};

#[derive(Parser)]
#[command(name = "abp", version, about = "Exact branching-program constructions and evaluators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum PathMethod {
    Direct,
    Rdet,
    Matrix,
    Enumerate,
    All,
}

#[derive(Subcommand)]
enum Command {
    /// Build a named construction and write it as JSON or DOT.
    ///
    /// Names: s-star, rper-nc, ncdet, weak-s-star, positive-weak,
    /// snk-classic, snc, rdet, rdet-nc, b1, b2, filter.
    Construct {
        name: String,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long)]
        k: Option<u32>,
        /// Half-degree for b1/b2 (defaults to ceil(k/2) when --k is given).
        #[arg(long)]
        h: Option<u32>,
        #[arg(long, default_value = "rational")]
        field: String,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Expand a program file to its canonical polynomial dump.
    Expand {
        #[arg(long)]
        input: PathBuf,
        /// Treat variables as commuting (words sorted).
        #[arg(long)]
        commutative: bool,
        /// Source node index in layer 0 (defaults to the stored source).
        #[arg(long)]
        source: Option<usize>,
        /// Sink node index in the last layer (defaults to the stored sink).
        #[arg(long)]
        sink: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate a program file at a point.
    Eval {
        #[arg(long)]
        input: PathBuf,
        /// Comma-separated scalars, one per variable id.
        #[arg(long)]
        at: Option<String>,
        /// Evaluate at the all-ones point.
        #[arg(long)]
        ones: bool,
    },
    /// Hadamard product of two program files over the same field.
    Hadamard {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Count simple directed k-paths in an edge-list graph.
    CountPaths {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        k: u32,
        #[arg(long, value_enum, default_value = "direct")]
        method: PathMethod,
    },
    /// Rectangular permanent of a JSON matrix grid (scalar or matrix cells).
    Rper {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Rectangular determinant of a JSON matrix grid.
    Rdet {
        #[arg(long)]
        matrix: PathBuf,
    },
    /// Run verification suites and report pass/fail per suite.
    Verify {
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long, default_value_t = 5)]
        max_n: u32,
        #[arg(long, default_value_t = 3)]
        max_k: u32,
    },
    /// Print a size/time table for the main constructions.
    Bench {
        #[arg(long, default_value_t = 12)]
        max_n: u32,
        #[arg(long, default_value_t = 8)]
        max_k: u32,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // --help and --version land here with benign "errors".
            let benign = !e.use_stderr();
            let _ = e.print();
            return if benign { ExitCode::SUCCESS } else { ExitCode::from(1) };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            let code = match err.downcast_ref::<Error>() {
                Some(Error::SizeGuard { .. }) => 2,
                _ => 1,
            };
            ExitCode::from(code)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Construct { name, n, k, h, field, out, format } => {
            let field: FieldSpec = field.parse::<FieldSpec>().map_err(anyhow::Error::from)?;
            match field {
                FieldSpec::Rational => {
                    let abp = construct::<Rational>(&name, n, k, h)?;
                    emit(&abp, field, format, out.as_deref())?;
                }
                FieldSpec::Fp(p) => {
                    let abp = construct::<Fp>(&name, n, k, h)?;
                    // Bind stray literals so the file is self-describing.
                    let abp = abp.map_scalars(|c| c.bind(p));
                    emit(&abp, field, format, out.as_deref())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Expand { input, commutative, source, sink, out } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let dump = match peek_header(&text)?.field {
                FieldSpec::Rational => {
                    expand_dump(&read_json_rational(&text)?, source, sink, commutative)?
                }
                FieldSpec::Fp(_) => {
                    expand_dump(&read_json_fp(&text)?.0, source, sink, commutative)?
                }
            };
            write_or_print(&dump, out.as_deref())?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Eval { input, at, ones } => {
            let text = fs::read_to_string(&input)
                .with_context(|| format!("reading {}", input.display()))?;
            let value = match peek_header(&text)?.field {
                FieldSpec::Rational => {
                    let abp = read_json_rational(&text)?;
                    let point = parse_point::<Rational>(&abp, at.as_deref(), ones, |s| {
                        Ok(s.parse::<Rational>()?)
                    })?;
                    abp.eval_scalar(&point)?.to_string()
                }
                FieldSpec::Fp(p) => {
                    let (abp, _) = read_json_fp(&text)?;
                    let point = parse_point::<Fp>(&abp, at.as_deref(), ones, |s| {
                        Ok(s.parse::<Fp>()?.bind(p))
                    })?;
                    abp.eval_scalar(&point)?.bind(p).to_string()
                }
            };
            println!("{value}");
            Ok(ExitCode::SUCCESS)
        }
        Command::Hadamard { a, b, out, format } => {
            let ta = fs::read_to_string(&a).with_context(|| format!("reading {}", a.display()))?;
            let tb = fs::read_to_string(&b).with_context(|| format!("reading {}", b.display()))?;
            let (fa, fb) = (peek_header(&ta)?.field, peek_header(&tb)?.field);
            if fa != fb {
                bail!("operands use different fields: {fa} vs {fb}");
            }
            match fa {
                FieldSpec::Rational => {
                    let pa = read_json_rational(&ta)?;
                    let pb = read_json_rational(&tb)?;
                    let prod = abp_core::hadamard_abp(&pa, &pb)?;
                    emit(&prod, fa, format, out.as_deref())?;
                }
                FieldSpec::Fp(_) => {
                    let (pa, _) = read_json_fp(&ta)?;
                    let (pb, _) = read_json_fp(&tb)?;
                    let prod = abp_core::hadamard_abp(&pa, &pb)?;
                    emit(&prod, fa, format, out.as_deref())?;
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::CountPaths { graph, k, method } => {
            let text = fs::read_to_string(&graph)
                .with_context(|| format!("reading {}", graph.display()))?;
            let g = Digraph::from_edge_list(&text)?;
            match method {
                PathMethod::Direct => println!("{}", count_k_paths_direct(&g, k)?),
                PathMethod::Rdet => println!("{}", count_k_paths_via_rdet(&g, k)?),
                PathMethod::Matrix => println!("{}", count_k_paths_direct_matrix(&g, k)?),
                PathMethod::Enumerate => println!("{}", enumerate_k_paths(&g, k)?),
                PathMethod::All => {
                    println!("direct    {}", count_k_paths_direct(&g, k)?);
                    println!("matrix    {}", count_k_paths_direct_matrix(&g, k)?);
                    println!("rdet      {}", count_k_paths_via_rdet(&g, k)?);
                    println!("enumerate {}", enumerate_k_paths(&g, k)?);
                }
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Rper { matrix } => grid_eval(&matrix, false),
        Command::Rdet { matrix } => grid_eval(&matrix, true),
        Command::Verify { suite, max_n, max_k } => run_verify(&suite, max_n, max_k),
        Command::Bench { max_n, max_k } => {
            println!(
                "{:<8} {:>4} {:>4} {:>8} {:>8} {:>10} {:>10}",
                "name", "n", "k", "nodes", "edges", "time_us", "ns/node"
            );
            for row in suites::bench_table(max_n, max_k) {
                println!(
                    "{:<8} {:>4} {:>4} {:>8} {:>8} {:>10} {:>10.0}",
                    row.construction,
                    row.n,
                    row.k,
                    row.nodes,
                    row.edges,
                    row.micros,
                    row.nanos_per_node()
                );
            }
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn construct<S: Scalar>(
    name: &str,
    n: Option<u32>,
    k: Option<u32>,
    h: Option<u32>,
) -> Result<Abp<S>> {
    let need_n = || n.ok_or_else(|| anyhow!("construction {name:?} needs --n"));
    let need_k = || k.ok_or_else(|| anyhow!("construction {name:?} needs --k"));
    let need_h = || {
        h.or(k.map(|k| k.div_ceil(2)))
            .ok_or_else(|| anyhow!("construction {name:?} needs --h (or --k)"))
    };
    let abp = match name {
        "s-star" => s_star_abp(need_n()?, need_k()?)?,
        "rper-nc" => rect_permanent_nc_abp(need_k()?, need_n()?)?,
        "ncdet" => nc_determinant_abp(need_k()?)?,
        "weak-s-star" => {
            let n = need_n()?;
            weak_s_star_abp(n, need_k()?, &abp_core::constructions::default_alphas(n))?
        }
        "positive-weak" => positive_weak_abp(need_n()?, need_k()?)?,
        "snk-classic" => elementary_symmetric_abp(need_n()?, need_k()?)?,
        "snc" => elementary_symmetric_nc_abp(need_n()?, need_k()?)?,
        "rdet" => rect_determinant_abp(need_k()?, need_n()?)?,
        "rdet-nc" => nc_rect_determinant_abp(need_k()?, need_n()?)?,
        "b1" => symmetrized_subsets_abp(need_n()?, need_h()?).abp,
        "b2" => superset_sums_abp(need_n()?, need_h()?).abp,
        "filter" => injection_filter_abp(need_k()?, need_n()?),
        other => bail!(
            "unknown construction {other:?}; expected one of s-star, rper-nc, ncdet, \
             weak-s-star, positive-weak, snk-classic, snc, rdet, rdet-nc, b1, b2, filter"
        ),
    };
    Ok(abp)
}

fn emit<S: Scalar>(
    abp: &Abp<S>,
    field: FieldSpec,
    format: Format,
    out: Option<&Path>,
) -> Result<()> {
    let text = match format {
        Format::Json => to_json(abp, field),
        Format::Dot => to_dot(abp),
    };
    write_or_print(&text, out)
}

fn write_or_print(text: &str, out: Option<&Path>) -> Result<()> {
    use std::io::Write;
    match out {
        Some(path) => {
            fs::write(path, text).with_context(|| format!("writing {}", path.display()))?
        }
        None => {
            // Tolerate a closed pipe (e.g. piping into `head`).
            let mut stdout = std::io::stdout().lock();
            match writeln!(stdout, "{text}") {
                Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => {}
                other => other?,
            }
        }
    }
    Ok(())
}

fn expand_dump<S: Scalar>(
    abp: &Abp<S>,
    source: Option<usize>,
    sink: Option<usize>,
    commutative: bool,
) -> Result<String> {
    let source = source.unwrap_or_else(|| abp.sources()[0]);
    let sink = sink.unwrap_or_else(|| abp.sinks()[0]);
    Ok(abp.expand_pair(source, sink, commutative)?.to_string())
}

fn parse_point<S: Scalar>(
    abp: &Abp<S>,
    at: Option<&str>,
    ones: bool,
    parse: impl Fn(&str) -> Result<S>,
) -> Result<Vec<S>> {
    if ones {
        return Ok(vec![S::one(); abp.nvars() as usize]);
    }
    let at = at.ok_or_else(|| anyhow!("provide --at v1,v2,... or --ones"))?;
    let point: Vec<S> = at
        .split(',')
        .map(|s| parse(s.trim()))
        .collect::<Result<_>>()?;
    if point.len() != abp.nvars() as usize {
        bail!("program has {} variables, point has {}", abp.nvars(), point.len());
    }
    Ok(point)
}

/// Matrix grid file: `{"field": "...", "entries": [[cell, ...], ...]}` with
/// each cell a scalar string, an r x r array of strings, or a flat array of
/// r*r coordinates.
fn grid_eval(path: &Path, signed: bool) -> Result<ExitCode> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    let doc: serde_json::Value = serde_json::from_str(&text)?;
    let field: FieldSpec = doc
        .get("field")
        .and_then(|f| f.as_str())
        .unwrap_or("rational")
        .parse::<FieldSpec>()
        .map_err(anyhow::Error::from)?;
    let entries = doc
        .get("entries")
        .and_then(|e| e.as_array())
        .ok_or_else(|| anyhow!("matrix file needs an \"entries\" array"))?;
    match field {
        FieldSpec::Rational => {
            grid_eval_typed::<Rational>(entries, signed, |s| Ok(s.parse::<Rational>()?))
        }
        FieldSpec::Fp(p) => {
            grid_eval_typed::<Fp>(entries, signed, move |s| Ok(s.parse::<Fp>()?.bind(p)))
        }
    }
}

fn grid_eval_typed<S: Scalar>(
    rows: &[serde_json::Value],
    signed: bool,
    parse: impl Fn(&str) -> Result<S>,
) -> Result<ExitCode> {
    let scalar_of = |v: &serde_json::Value| -> Result<S> {
        match v {
            serde_json::Value::String(s) => parse(s),
            serde_json::Value::Number(x) => parse(&x.to_string()),
            _ => bail!("expected a scalar string, found {v}"),
        }
    };
    // Cell shape from the first entry: scalar, or r x r matrix.
    let first = rows
        .first()
        .and_then(|r| r.as_array())
        .and_then(|r| r.first())
        .ok_or_else(|| anyhow!("entries must be a nonempty grid"))?;
    let r: usize = match first {
        serde_json::Value::Array(cell) => match cell.first() {
            Some(serde_json::Value::Array(inner)) => inner.len(),
            Some(_) => {
                let len = cell.len();
                let r = (len as f64).sqrt().round() as usize;
                if r * r != len {
                    bail!("flat cell of length {len} is not a square coordinate vector");
                }
                r
            }
            None => bail!("empty cell"),
        },
        _ => 1,
    };

    let parse_cell = |v: &serde_json::Value, alg: &std::sync::Arc<Algebra<S>>| -> Result<AlgebraElement<S>> {
        let coords: Vec<S> = match v {
            serde_json::Value::Array(cell) if matches!(cell.first(), Some(serde_json::Value::Array(_))) => {
                let mut coords = Vec::with_capacity(r * r);
                if cell.len() != r {
                    bail!("cell has {} rows, expected {r}", cell.len());
                }
                for row in cell {
                    let row = row.as_array().ok_or_else(|| anyhow!("ragged matrix cell"))?;
                    if row.len() != r {
                        bail!("cell row has {} entries, expected {r}", row.len());
                    }
                    for x in row {
                        coords.push(scalar_of(x)?);
                    }
                }
                coords
            }
            serde_json::Value::Array(cell) => {
                if cell.len() != r * r {
                    bail!("flat cell has {} entries, expected {}", cell.len(), r * r);
                }
                cell.iter().map(&scalar_of).collect::<Result<_>>()?
            }
            other => vec![scalar_of(other)?],
        };
        Ok(AlgebraElement::new(alg, coords)?)
    };

    let algebra = Algebra::<S>::matrix(r);
    let mut grid_rows = Vec::with_capacity(rows.len());
    for row in rows {
        let row = row.as_array().ok_or_else(|| anyhow!("entries rows must be arrays"))?;
        let cells: Vec<AlgebraElement<S>> =
            row.iter().map(|c| parse_cell(c, &algebra)).collect::<Result<_>>()?;
        grid_rows.push(cells);
    }
    let grid = Grid::from_rows(grid_rows)?;
    let result = rect_permanent_algebra(&grid, signed)?;
    if r == 1 {
        println!("{}", result.coords()[0]);
    } else {
        let m = result.to_matrix()?;
        for i in 0..r {
            let line: Vec<String> = (0..r).map(|j| m.get(i, j).to_string()).collect();
            println!("{}", line.join("  "));
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run_verify(suite: &str, max_n: u32, max_k: u32) -> Result<ExitCode> {
    let outcomes = match suite {
        "all" => suites::verify_all(max_n, max_k),
        "s-star" => vec![suites::verify_s_star(max_n, max_k)],
        "s-star-size" => vec![suites::verify_s_star_size(max_n, max_k)],
        "rper-nc" => vec![suites::verify_rect_permanent(max_n, max_k)],
        "ncdet" => vec![suites::verify_nc_determinant(max_k.max(4))],
        "signs" => vec![suites::verify_insertion_signs(max_k.clamp(5, 8))],
        "weak" => vec![suites::verify_weak_equivalence(max_n.min(5), max_k.min(3))],
        "rdet" => vec![suites::verify_rect_determinant(max_k, max_n, 10, 0xC11)],
        "hadamard" => vec![suites::verify_hadamard(50, 0xC12)],
        "matrix-eval" => vec![suites::verify_matrix_eval(30, 0xC13)],
        "paths" => vec![suites::verify_path_pipelines(15, max_n.min(7), max_k.min(4), 0xC14)],
        "algebra" => vec![suites::verify_algebra(3, max_n.min(5), 3, 2, 0xC15)],
        "round-trip" => vec![suites::verify_round_trip(max_n.min(6), max_k.min(4))],
        other => bail!(
            "unknown suite {other:?}; expected all, s-star, s-star-size, rper-nc, ncdet, \
             signs, weak, rdet, hadamard, matrix-eval, paths, algebra, round-trip"
        ),
    };
    let mut failed = false;
    for outcome in &outcomes {
        if outcome.passed() {
            println!("suite {:<12} PASS ({} cases)", outcome.name, outcome.cases);
        } else {
            failed = true;
            println!(
                "suite {:<12} FAIL ({} cases, {} failures)",
                outcome.name,
                outcome.cases,
                outcome.failures.len()
            );
            for failure in &outcome.failures {
                println!("    {failure}");
            }
        }
    }
    Ok(if failed { ExitCode::from(3) } else { ExitCode::SUCCESS })
}
