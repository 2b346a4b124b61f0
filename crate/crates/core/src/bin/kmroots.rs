use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use kmroots::classify::{
    build_hasse, derive_catalog, find_subsystems, group_index, verify_catalog, VerifyOptions,
    DEFAULT_MAX_TILES,
};
use kmroots::coset::DEFAULT_MAX_COSETS;
use kmroots::diagram::enumerate_hyperbolic_simplex_diagrams;
use kmroots::dsl::{parse_diagram, serialize_cartan, serialize_coxeter, Diagram};
use kmroots::dynkin::enumerate_dynkin;
use kmroots::io::{emit_dot, emit_json, load_catalog, serialize_catalog, Config};
use kmroots::roots::{RootSystem, RootVector};
use kmroots::subsystem::{check_star_bounded, Embedding, StarStatus};
use kmroots::{Error, GeneralizedCartanMatrix, TypeTag};

const DEFAULT_HEIGHT: u64 = 20;

/// Hyperbolic Kac-Moody root systems and their maximal rank subsystems.
///
/// Exit status: 0 success or condition holds, 1 condition fails or a
/// verification mismatch, 2 error.
#[derive(Parser)]
#[command(name = "kmroots", version)]
struct Cli {
    /// Config file with defaults for height, max_cosets and max_tiles.
    #[arg(long, global = true, default_value = "kmroots.toml")]
    config: PathBuf,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Type of a Cartan matrix or Coxeter diagram.
    ClassifyType { file: PathBuf },
    /// Coxeter diagrams of hyperbolic simplices of the given rank.
    EnumSimplices {
        #[arg(long)]
        rank: usize,
    },
    /// Root systems (Dynkin diagrams) on a Coxeter diagram, up to symmetry.
    EnumDynkin { file: PathBuf },
    /// Positive real roots up to a height.
    Roots {
        file: PathBuf,
        #[arg(long)]
        height: Option<u64>,
    },
    /// Condition (*) for a subsystem, checked on roots up to a height.
    StarCheck {
        ambient: PathBuf,
        roots: PathBuf,
        #[arg(long)]
        height: Option<u64>,
    },
    /// Index of the root lattice of a subsystem.
    LatticeIndex { ambient: PathBuf, roots: PathBuf },
    /// Index of the reflection subgroup of a subsystem, by coset enumeration.
    CosetIndex {
        ambient: PathBuf,
        roots: PathBuf,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Maximal rank hyperbolic subsystems with simple roots up to a height.
    FindSubsystems {
        file: PathBuf,
        #[arg(long)]
        height: Option<u64>,
    },
    /// Recompute every field of every catalog record.
    VerifyCatalog {
        catalog: PathBuf,
        #[arg(long)]
        height: Option<u64>,
        #[arg(long)]
        max_cosets: Option<usize>,
    },
    /// Hasse graph of a verified catalog.
    EmitHasse {
        catalog: PathBuf,
        #[arg(long, value_enum, default_value = "dot")]
        out: OutFormat,
    },
    /// Derive the catalog of maximal rank subsystems from scratch.
    DeriveCatalog {
        #[arg(long, default_value_t = 10)]
        max_rank: usize,
        /// Output file; standard output when absent.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum OutFormat {
    Dot,
    Json,
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

fn read_diagram(path: &Path) -> Result<Diagram, Error> {
    parse_diagram(&read(path)?)
}

fn read_cartan(path: &Path) -> Result<GeneralizedCartanMatrix, Error> {
    read_diagram(path)?.cartan()
}

/// One root per line, coordinates separated by spaces or commas.
fn read_roots(path: &Path, n: usize) -> Result<Vec<RootVector>, Error> {
    let text = read(path)?;
    let mut out = vec![];
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("");
        let toks: Vec<&str> = line
            .split(|c: char| c.is_whitespace() || c == ',' || c == '[' || c == ']')
            .filter(|t| !t.is_empty())
            .collect();
        if toks.is_empty() {
            continue;
        }
        let v = toks
            .iter()
            .map(|t| t.parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::Syntax {
                line: i + 1,
                column: 1,
                message: e.to_string(),
            })?;
        if v.len() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                got: v.len(),
            });
        }
        out.push(RootVector(v));
    }
    Ok(out)
}

fn fmt_root(v: &RootVector) -> String {
    v.0.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

fn run(cli: Cli) -> Result<ExitCode, Error> {
    let config = Config::load(&cli.config)?;
    let height = |flag: Option<u64>| flag.or(config.height).unwrap_or(DEFAULT_HEIGHT);
    let max_cosets = |flag: Option<usize>| flag.or(config.max_cosets).unwrap_or(DEFAULT_MAX_COSETS);
    let max_tiles = config.max_tiles.unwrap_or(DEFAULT_MAX_TILES);
    match cli.command {
        Command::ClassifyType { file } => match read_diagram(&file)? {
            Diagram::Cartan(a) => print_type(&a)?,
            Diagram::Coxeter(d) => match Diagram::Coxeter(d.clone()).cartan() {
                Ok(a) => print_type(&a)?,
                Err(_) => {
                    let t = if d.is_hyperbolic() {
                        "hyperbolic"
                    } else if d.is_finite_or_affine() {
                        "finite or affine"
                    } else {
                        "indefinite"
                    };
                    println!("coxeter diagram: {t}");
                }
            },
        },
        Command::EnumSimplices { rank } => {
            for d in enumerate_hyperbolic_simplex_diagrams(rank) {
                println!("{}", serialize_coxeter(&d));
            }
        }
        Command::EnumDynkin { file } => {
            let d = read_diagram(&file)?.coxeter()?;
            for a in enumerate_dynkin(&d, true) {
                println!("{}", serialize_cartan(&a));
            }
        }
        Command::Roots { file, height: h } => {
            let sys = RootSystem::new(&read_cartan(&file)?)?;
            for r in sys.real_roots_up_to_height(height(h))? {
                if r.is_positive() {
                    println!("{}", fmt_root(&r));
                }
            }
        }
        Command::StarCheck {
            ambient,
            roots,
            height: h,
        } => {
            let a = read_cartan(&ambient)?;
            let e = Embedding::new(&a, read_roots(&roots, a.rank())?)?;
            let verdict = check_star_bounded(&e, height(h))?;
            match &verdict.status {
                StarStatus::HoldsUpTo { height } => println!("holds up to height {height}"),
                StarStatus::FailsWithWitness { alpha, beta, sum } => {
                    println!(
                        "fails: ({}) + ({}) = ({})",
                        fmt_root(alpha),
                        fmt_root(beta),
                        fmt_root(sum)
                    )
                }
                StarStatus::FailsLattice { root } => {
                    println!("fails: root ({}) lies in the sublattice", fmt_root(root))
                }
            }
            if !verdict.holds() {
                return Ok(ExitCode::from(1));
            }
        }
        Command::LatticeIndex { ambient, roots } => {
            let a = read_cartan(&ambient)?;
            let e = Embedding::new(&a, read_roots(&roots, a.rank())?)?;
            println!("{}", e.lattice_index());
        }
        Command::CosetIndex {
            ambient,
            roots,
            max_cosets: m,
        } => {
            let a = read_cartan(&ambient)?;
            let e = Embedding::new(&a, read_roots(&roots, a.rank())?)?;
            println!("{}", group_index(&e, max_cosets(m))?);
        }
        Command::FindSubsystems { file, height: h } => {
            let a = read_cartan(&file)?;
            let found = find_subsystems(&a, height(h), max_tiles)?;
            println!("# complete up to height {}", found.complete_up_to);
            for e in &found.embeddings {
                let roots: Vec<String> = e.roots().iter().map(fmt_root).collect();
                println!("[{}] lattice index {}", roots.join("; "), e.lattice_index());
            }
        }
        Command::VerifyCatalog {
            catalog,
            height: h,
            max_cosets: m,
        } => {
            let records = load_catalog(&catalog)?;
            let opts = VerifyOptions {
                height: height(h),
                max_cosets: max_cosets(m),
                max_tiles,
            };
            let reports: Vec<_> = records
                .par_iter()
                .map(|r| verify_catalog(r, &opts))
                .collect();
            let mut failed = 0;
            for (i, rep) in reports.iter().enumerate() {
                let status = if rep.ok() { "ok" } else { "MISMATCH" };
                println!("record {} ({}): {status}", i + 1, rep.provenance);
                for c in rep.checks.iter().filter(|c| !c.ok) {
                    println!(
                        "  {}: expected {}, computed {}",
                        c.field, c.expected, c.computed
                    );
                }
                failed += usize::from(!rep.ok());
            }
            println!(
                "{} of {} records verified",
                reports.len() - failed,
                reports.len()
            );
            if failed > 0 {
                return Ok(ExitCode::from(1));
            }
        }
        Command::EmitHasse { catalog, out } => {
            let records = load_catalog(&catalog)?;
            let opts = VerifyOptions {
                height: height(None),
                max_cosets: max_cosets(None),
                max_tiles,
            };
            let verified: Vec<bool> = records
                .par_iter()
                .map(|r| verify_catalog(r, &opts).ok())
                .collect();
            let g = build_hasse(&records, &verified)?;
            match out {
                OutFormat::Dot => print!("{}", emit_dot(&g)),
                OutFormat::Json => print!("{}", emit_json(&g)),
            }
        }
        Command::DeriveCatalog { max_rank, output } => {
            let text = serialize_catalog(&derive_catalog(max_rank, max_tiles)?);
            match output {
                Some(p) => std::fs::write(&p, text)
                    .map_err(|e| Error::Io(format!("{}: {e}", p.display())))?,
                None => print!("{text}"),
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn print_type(a: &GeneralizedCartanMatrix) -> Result<(), Error> {
    let t = a.classify_type()?;
    let tag = match t.tag {
        TypeTag::Finite => "finite",
        TypeTag::Affine => "affine",
        TypeTag::Indefinite if t.hyperbolic => "hyperbolic",
        TypeTag::Indefinite => "indefinite",
    };
    println!("{tag}");
    println!("indecomposable: {}", t.indecomposable);
    println!("symmetrizable: {}", t.symmetrizable);
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
