//! Command line interface: compute subspace-valued persistence diagrams of a
//! filtration file, export treegrams, run the verification suites, and
//! compare diagram files up to the diagonal.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use gpd_core::io::{
    diagram_to_json, diagram_to_tsv, filtration_from_str, grams_from_json,
    integer_diagram_to_json, interval_to_json, poset_to_json, subspace_to_json, treegram_to_json,
    DiagramJson, DiagramPointJson, IntegerDiagramJson, PosetJson,
};
use gpd_core::verify::{SuiteStatus, VerifyConfig};
use gpd_core::*;

#[derive(Parser)]
#[command(name = "gpd", version, about = "Grassmannian persistence diagrams of simplicial filtrations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Backend {
    Rational,
    Float,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Invariant {
    /// Birth-death spaces under the product order.
    Bd,
    /// Persistent Laplacian kernels under the reverse inclusion order.
    Lap,
    Both,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TreegramFormat {
    Json,
    Dot,
}

#[derive(Args)]
struct CommonIo {
    /// Filtration file (text or JSON; see README).
    input: PathBuf,
    /// Directory for output files.
    #[arg(long, default_value = ".")]
    out_dir: PathBuf,
    #[arg(long, value_enum, default_value_t = Backend::Rational)]
    backend: Backend,
    /// Relative tolerance for the float backend.
    #[arg(long, default_value_t = 1e-10)]
    tolerance: f64,
    /// Gram matrix file: JSON object mapping degree to a matrix.
    #[arg(long)]
    gram: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Compute subspace-valued diagrams per degree and invariant.
    Compute {
        #[command(flatten)]
        io: CommonIo,
        /// Homology degree; repeatable.
        #[arg(long = "degree")]
        degrees: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Invariant::Bd)]
        invariant: Invariant,
        /// Also write the integer diagram of dimensions.
        #[arg(long)]
        classical: bool,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Compute the integer (classical) diagrams of dimensions.
    Classical {
        #[command(flatten)]
        io: CommonIo,
        #[arg(long = "degree")]
        degrees: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Export the treegram of a filtration with a connected final complex.
    Treegram {
        #[command(flatten)]
        io: CommonIo,
        /// Also rebuild the degree-0 diagram from the treegram and report
        /// whether it equals the inversion route.
        #[arg(long)]
        reconstruct: bool,
        #[arg(long, value_enum, default_value_t = TreegramFormat::Json)]
        format: TreegramFormat,
    },
    /// Compute the projected tower spaces per non-diagonal interval.
    Harmonic {
        #[command(flatten)]
        io: CommonIo,
        #[arg(long = "degree")]
        degrees: Vec<usize>,
    },
    /// Run the seeded verification suites and report per-property results.
    Verify {
        #[arg(long, default_value_t = 7)]
        seed: u64,
        #[arg(long, value_enum, default_value_t = Backend::Rational)]
        backend: Backend,
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
        /// Number of random filtrations per suite.
        #[arg(long, default_value_t = 40)]
        filtrations: usize,
    },
    /// Compare two diagram files up to diagonal points.
    Compare { first: PathBuf, second: PathBuf },
}

fn effective_backend(flag: Backend) -> Backend {
    match std::env::var("GPD_BACKEND").ok().as_deref() {
        Some("float") => Backend::Float,
        Some("rational") => Backend::Rational,
        _ => flag,
    }
}

fn read_input(path: &Path) -> std::io::Result<String> {
    std::fs::read_to_string(path)
}

fn is_effectively_empty(text: &str) -> bool {
    !text.trim_start().starts_with('{')
        && text.lines().all(|l| {
            let l = l.trim();
            l.is_empty() || l.starts_with('#') || l.starts_with("vertices:") || l.starts_with("grades:")
        })
}

fn empty_diagram_json(order: &str) -> DiagramJson {
    DiagramJson {
        poset: PosetJson { grades: Vec::new(), metric: None },
        order: order.to_string(),
        points: Vec::new(),
    }
}

struct OutputFile {
    name: String,
    content: String,
}

fn write_outputs(out_dir: &Path, files: &[OutputFile]) -> std::io::Result<()> {
    std::fs::create_dir_all(out_dir)?;
    for f in files {
        let path = out_dir.join(&f.name);
        std::fs::write(&path, &f.content)?;
        println!("wrote {}", path.display());
    }
    Ok(())
}

fn stem(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| "input".into())
}

fn json_pretty<T: serde::Serialize>(value: &T) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable");
    text.push('\n');
    text
}

fn integer_diagram_tsv(j: &IntegerDiagramJson) -> String {
    let mut out = String::from("birth\tdeath\tmultiplicity\n");
    for p in &j.points {
        out.push_str(&format!("{}\t{}\t{}\n", p.interval[0], p.interval[1], p.multiplicity));
    }
    out
}

/// The computation pipeline for one scalar backend.
fn run_compute<S: Scalar>(
    text: &str,
    input: &Path,
    degrees: &[usize],
    invariant: Invariant,
    classical: bool,
    format: Format,
    gram_text: Option<&str>,
) -> Result<Vec<OutputFile>> {
    if matches!(invariant, Invariant::Lap | Invariant::Both) && degrees.is_empty() {
        return Err(GpdError::InvalidDiagram(
            "kernel diagrams need an explicit --degree list".into(),
        ));
    }
    let degrees = if degrees.is_empty() { vec![0] } else { degrees.to_vec() };
    let filtration = filtration_from_str::<S>(text)?;
    let grams = match gram_text {
        Some(t) => grams_from_json::<S>(t)?,
        None => BTreeMap::new(),
    };
    let max_degree = degrees.iter().copied().max().unwrap();
    let data = ChainData::new(filtration, max_degree, &grams)?;
    let base = stem(input);
    let mut files = Vec::new();
    for &q in &degrees {
        if matches!(invariant, Invariant::Bd | Invariant::Both) {
            let m = product_orthogonal_inverse(&birth_death_spaces(&data, q))?;
            let (name, content) = match format {
                Format::Json => (format!("{base}.q{q}.bd.json"), json_pretty(&diagram_to_json(&m))),
                Format::Tsv => (format!("{base}.q{q}.bd.tsv"), diagram_to_tsv(&m)),
            };
            files.push(OutputFile { name, content });
        }
        if matches!(invariant, Invariant::Lap | Invariant::Both) {
            let m = reverse_inclusion_orthogonal_inverse(&laplacian_kernels(&data, q))?;
            let (name, content) = match format {
                Format::Json => (format!("{base}.q{q}.lap.json"), json_pretty(&diagram_to_json(&m))),
                Format::Tsv => (format!("{base}.q{q}.lap.tsv"), diagram_to_tsv(&m)),
            };
            files.push(OutputFile { name, content });
        }
        if classical {
            let m = product_orthogonal_inverse(&birth_death_spaces(&data, q))?;
            let dims = dimension_diagram(&m)?;
            let j = integer_diagram_to_json(&dims);
            let (name, content) = match format {
                Format::Json => (format!("{base}.q{q}.classical.json"), json_pretty(&j)),
                Format::Tsv => (format!("{base}.q{q}.classical.tsv"), integer_diagram_tsv(&j)),
            };
            files.push(OutputFile { name, content });
        }
    }
    Ok(files)
}

fn run_classical<S: Scalar>(
    text: &str,
    input: &Path,
    degrees: &[usize],
    format: Format,
    gram_text: Option<&str>,
) -> Result<Vec<OutputFile>> {
    let degrees = if degrees.is_empty() { vec![0] } else { degrees.to_vec() };
    let filtration = filtration_from_str::<S>(text)?;
    let grams = match gram_text {
        Some(t) => grams_from_json::<S>(t)?,
        None => BTreeMap::new(),
    };
    let data = ChainData::new(filtration, *degrees.iter().max().unwrap(), &grams)?;
    let base = stem(input);
    let mut files = Vec::new();
    for &q in &degrees {
        let m = product_orthogonal_inverse(&birth_death_spaces(&data, q))?;
        let dims = dimension_diagram(&m)?;
        let j = integer_diagram_to_json(&dims);
        let (name, content) = match format {
            Format::Json => (format!("{base}.q{q}.classical.json"), json_pretty(&j)),
            Format::Tsv => (format!("{base}.q{q}.classical.tsv"), integer_diagram_tsv(&j)),
        };
        files.push(OutputFile { name, content });
    }
    Ok(files)
}

fn run_treegram<S: Scalar>(
    text: &str,
    input: &Path,
    reconstruct: bool,
    format: TreegramFormat,
) -> Result<Vec<OutputFile>> {
    let filtration = filtration_from_str::<S>(text)?;
    let data = ChainData::new(filtration, 0, &BTreeMap::new())?;
    let t = Treegram::from_filtration(&data)?;
    let base = stem(input);
    let mut files = Vec::new();
    match format {
        TreegramFormat::Json => files.push(OutputFile {
            name: format!("{base}.treegram.json"),
            content: json_pretty(&treegram_to_json(&t)),
        }),
        TreegramFormat::Dot => files.push(OutputFile {
            name: format!("{base}.treegram.dot"),
            content: t.to_dot(),
        }),
    }
    if reconstruct {
        let rebuilt = degree0_diagram_from_treegram(&t, data.ambient(0))?;
        let direct = product_orthogonal_inverse(&birth_death_spaces(&data, 0))?;
        let verdict = if rebuilt.values == direct.values { "equal" } else { "DIFFERENT" };
        println!("reconstruction vs inversion: {verdict}");
        files.push(OutputFile {
            name: format!("{base}.q0.reconstructed.json"),
            content: json_pretty(&diagram_to_json(&rebuilt)),
        });
        if verdict != "equal" {
            return Err(GpdError::InvalidDiagram(
                "treegram reconstruction disagrees with the inversion route".into(),
            ));
        }
    }
    Ok(files)
}

fn run_harmonic<S: Scalar>(
    text: &str,
    input: &Path,
    degrees: &[usize],
    gram_text: Option<&str>,
) -> Result<Vec<OutputFile>> {
    let degrees = if degrees.is_empty() { vec![0] } else { degrees.to_vec() };
    let filtration = filtration_from_str::<S>(text)?;
    let grams = match gram_text {
        Some(t) => grams_from_json::<S>(t)?,
        None => BTreeMap::new(),
    };
    let data = ChainData::new(filtration, *degrees.iter().max().unwrap(), &grams)?;
    let base = stem(input);
    let mut files = Vec::new();
    for &q in &degrees {
        let mut points = Vec::new();
        for i in 0..data.steps() {
            for j in (i + 1)..data.steps() {
                let tower = harmonic_tower(&data, q, i, j)?;
                if tower.p_space.is_zero() {
                    continue;
                }
                points.push(DiagramPointJson {
                    interval: interval_to_json(data.filtration.poset(), &Interval::finite(i, j)),
                    dim: tower.p_space.dim(),
                    basis: subspace_to_json(&tower.p_space).basis,
                });
            }
        }
        let j = DiagramJson {
            poset: poset_to_json(data.filtration.poset()),
            order: "reverse-inclusion".into(),
            points,
        };
        files.push(OutputFile {
            name: format!("{base}.q{q}.harmonic.json"),
            content: json_pretty(&j),
        });
    }
    Ok(files)
}

fn run_verify(seed: u64, backend: Backend, filtrations: usize) -> ExitCode {
    let config = VerifyConfig {
        seed,
        filtrations,
        connected_filtrations: filtrations.max(10),
        morphisms: (filtrations / 2).max(10),
        grams: (filtrations / 10).max(2),
        max_degree: 2,
    };
    let results = match backend {
        Backend::Rational => gpd_core::verify::run_all(&config),
        Backend::Float => gpd_core::verify::run_all_float(&config),
    };
    let mut failed = false;
    for r in &results {
        let status = match r.status {
            SuiteStatus::Pass => "pass",
            SuiteStatus::Fail => {
                failed = true;
                "fail"
            }
            SuiteStatus::SkippedFloat => "skipped-float",
        };
        let line = serde_json::json!({
            "suite": r.name,
            "status": status,
            "cases": r.cases,
            "detail": r.detail,
        });
        println!("{line}");
    }
    if failed {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    }
}

fn run_compare(first: &Path, second: &Path) -> Result<bool> {
    let read = |p: &Path| -> Result<DiagramJson> {
        let text = std::fs::read_to_string(p).map_err(|e| GpdError::Parse {
            line: 0,
            msg: format!("{}: {e}", p.display()),
        })?;
        serde_json::from_str(&text).map_err(|e| GpdError::Parse {
            line: e.line(),
            msg: e.to_string(),
        })
    };
    let a = read(first)?;
    let b = read(second)?;
    if a.poset.grades != b.poset.grades {
        println!("posets differ");
        return Ok(false);
    }
    let off_diag = |d: &DiagramJson| -> Vec<(String, String, usize, Vec<Vec<String>>)> {
        let mut pts: Vec<_> = d
            .points
            .iter()
            .filter(|p| p.interval[0] != p.interval[1])
            .map(|p| (p.interval[0].clone(), p.interval[1].clone(), p.dim, p.basis.clone()))
            .collect();
        pts.sort();
        pts
    };
    let (pa, pb) = (off_diag(&a), off_diag(&b));
    if pa == pb {
        println!("equal up to diagonal points");
        Ok(true)
    } else {
        for (x, y, d, _) in pa.iter().filter(|p| !pb.contains(p)) {
            println!("only in {}: [{x},{y}] dim {d}", first.display());
        }
        for (x, y, d, _) in pb.iter().filter(|p| !pa.contains(p)) {
            println!("only in {}: [{x},{y}] dim {d}", second.display());
        }
        Ok(false)
    }
}

fn dispatch() -> std::result::Result<ExitCode, (String, u8)> {
    let cli = Cli::parse();
    let input_err = |e: GpdError| (e.to_string(), 2u8);
    let io_err = |e: std::io::Error| (e.to_string(), 2u8);

    match cli.command {
        Command::Compute { io, degrees, invariant, classical, format } => {
            let backend = effective_backend(io.backend);
            set_float_tolerance(io.tolerance);
            let text = read_input(&io.input).map_err(io_err)?;
            if is_effectively_empty(&text) {
                let order = if invariant == Invariant::Lap { "reverse-inclusion" } else { "product" };
                let files = vec![OutputFile {
                    name: format!("{}.empty.json", stem(&io.input)),
                    content: json_pretty(&empty_diagram_json(order)),
                }];
                write_outputs(&io.out_dir, &files).map_err(io_err)?;
                return Ok(ExitCode::SUCCESS);
            }
            let gram_text = match &io.gram {
                Some(p) => Some(read_input(p).map_err(io_err)?),
                None => None,
            };
            let files = match backend {
                Backend::Rational => run_compute::<Rat>(
                    &text, &io.input, &degrees, invariant, classical, format, gram_text.as_deref(),
                ),
                Backend::Float => run_compute::<F64S>(
                    &text, &io.input, &degrees, invariant, classical, format, gram_text.as_deref(),
                ),
            }
            .map_err(input_err)?;
            write_outputs(&io.out_dir, &files).map_err(io_err)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Classical { io, degrees, format } => {
            let backend = effective_backend(io.backend);
            set_float_tolerance(io.tolerance);
            let text = read_input(&io.input).map_err(io_err)?;
            let gram_text = match &io.gram {
                Some(p) => Some(read_input(p).map_err(io_err)?),
                None => None,
            };
            let files = match backend {
                Backend::Rational => {
                    run_classical::<Rat>(&text, &io.input, &degrees, format, gram_text.as_deref())
                }
                Backend::Float => {
                    run_classical::<F64S>(&text, &io.input, &degrees, format, gram_text.as_deref())
                }
            }
            .map_err(input_err)?;
            write_outputs(&io.out_dir, &files).map_err(io_err)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Treegram { io, reconstruct, format } => {
            let backend = effective_backend(io.backend);
            set_float_tolerance(io.tolerance);
            let text = read_input(&io.input).map_err(io_err)?;
            let files = match backend {
                Backend::Rational => run_treegram::<Rat>(&text, &io.input, reconstruct, format),
                Backend::Float => run_treegram::<F64S>(&text, &io.input, reconstruct, format),
            }
            .map_err(input_err)?;
            write_outputs(&io.out_dir, &files).map_err(io_err)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Harmonic { io, degrees } => {
            let backend = effective_backend(io.backend);
            set_float_tolerance(io.tolerance);
            let text = read_input(&io.input).map_err(io_err)?;
            let gram_text = match &io.gram {
                Some(p) => Some(read_input(p).map_err(io_err)?),
                None => None,
            };
            let files = match backend {
                Backend::Rational => {
                    run_harmonic::<Rat>(&text, &io.input, &degrees, gram_text.as_deref())
                }
                Backend::Float => {
                    run_harmonic::<F64S>(&text, &io.input, &degrees, gram_text.as_deref())
                }
            }
            .map_err(input_err)?;
            write_outputs(&io.out_dir, &files).map_err(io_err)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { seed, backend, tolerance, filtrations } => {
            set_float_tolerance(tolerance);
            Ok(run_verify(seed, effective_backend(backend), filtrations))
        }
        Command::Compare { first, second } => {
            let equal = run_compare(&first, &second).map_err(input_err)?;
            Ok(if equal { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
    }
}

fn main() -> ExitCode {
    match dispatch() {
        Ok(code) => code,
        Err((msg, code)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
