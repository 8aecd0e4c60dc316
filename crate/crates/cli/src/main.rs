use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use fgpolar::report::{
    self, analyze, export, AnalyzeOptions, Artifact, DocFormat, LoadedGroup, NSelect,
};
use fgpolar::{Error, Level};

/// Polar spaces, quadrics and generalized quadrangles from finite groups.
#[derive(Parser, Debug)]
#[command(name = "fgpolar", version)]
struct Cli {
    /// Prime for the GF(p) structure; inferred from |G'| when omitted.
    #[arg(long, global = true)]
    p: Option<u32>,

    /// Modulus N: auto_N0, auto_K, auto_center, or comma-separated element ids.
    #[arg(long = "n-select", global = true, default_value = "auto_center")]
    n_select: String,

    /// Which non-identity element of G' fixes the isomorphism G' -> GF(p).
    #[arg(long = "g-index", global = true)]
    g_index: Option<usize>,

    /// Stop after: vector_space, bilinear, or quadratic.
    #[arg(long, global = true, default_value = "quadratic")]
    level: String,

    /// Output format: text, json (alias structured), or dot.
    #[arg(long, global = true, default_value = "text")]
    format: String,

    /// Write to this file (a directory for reproduce-paper) instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Exit with status 3 when the chosen N violates a condition required
    /// at the requested level.
    #[arg(long, global = true)]
    strict: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Full analysis report.
    Analyze { spec: String },
    /// Conditions 1-5 for N0, K, Z(G) and the chosen N.
    Conditions { spec: String },
    /// Symplectic polar space of V/V^⊥ as an incidence structure.
    Polar { spec: String },
    /// Singular points and lines of the quadric on G/K.
    Quadric { spec: String },
    /// GQ(2,4) derived from W_3(3) at point U.
    Gq {
        spec: String,
        /// Index of U among the points of W_3(3).
        #[arg(long, default_value_t = 0)]
        u: usize,
    },
    /// Any artifact: report, conditions, incidence, commutation_graph,
    /// quadric, fine_structure, gq, table.
    Export {
        spec: String,
        #[arg(long)]
        what: String,
        #[arg(long, default_value_t = 0)]
        u: usize,
    },
    /// Regenerate the worked examples.
    ReproducePaper,
}

enum Failure {
    Invalid(Error),
    Io(io::Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Io(e)
    }
}

/// `spec` is a path, `-` for stdin, or an inline JSON document.
fn read_spec(spec: &str) -> Result<LoadedGroup, Failure> {
    let text = if spec == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        s
    } else if spec.trim_start().starts_with('{') {
        spec.to_string()
    } else {
        fs::read_to_string(spec)?
    };
    Ok(report::load_spec(&text)?)
}

fn emit(out: &Option<PathBuf>, content: &str) -> io::Result<()> {
    match out {
        Some(path) => fs::write(path, content),
        None => io::stdout().write_all(content.as_bytes()),
    }
}

fn run(cli: &Cli) -> Result<bool, Failure> {
    let format: DocFormat = cli.format.parse()?;
    let options = AnalyzeOptions {
        p: cli.p,
        n_select: cli.n_select.parse::<NSelect>()?,
        g_index: cli.g_index,
        level: cli.level.parse::<Level>()?,
    };
    let (spec, what, u) = match &cli.command {
        Command::ReproducePaper => {
            let docs = report::reproduce_paper()?;
            match &cli.out {
                Some(dir) => {
                    fs::create_dir_all(dir)?;
                    for d in &docs {
                        fs::write(Path::new(dir).join(&d.name), &d.content)?;
                    }
                }
                None => {
                    let summary = docs.iter().find(|d| d.name == "summary.txt").unwrap();
                    emit(&None, &summary.content)?;
                }
            }
            return Ok(true);
        }
        Command::Analyze { spec } => (spec, Artifact::Report, 0),
        Command::Conditions { spec } => (spec, Artifact::Conditions, 0),
        Command::Polar { spec } => (spec, Artifact::Incidence, 0),
        Command::Quadric { spec } => (spec, Artifact::Quadric, 0),
        Command::Gq { spec, u } => (spec, Artifact::Gq, *u),
        Command::Export { spec, what, u } => (spec, what.parse::<Artifact>()?, *u),
    };
    let loaded = read_spec(spec)?;
    let analysis = analyze(&loaded, &options)?;
    let content = export(&analysis, what, format, u)?;
    emit(&cli.out, &content)?;
    Ok(!analysis.report.violates(options.level))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(clean) if clean || !cli.strict => ExitCode::SUCCESS,
        Ok(_) => {
            eprintln!("fgpolar: the chosen N violates a condition (strict mode)");
            ExitCode::from(3)
        }
        Err(Failure::Invalid(e)) => {
            eprintln!("fgpolar: {e}");
            ExitCode::from(2)
        }
        Err(Failure::Io(e)) => {
            eprintln!("fgpolar: {e}");
            ExitCode::from(2)
        }
    }
}
