//! `sdn`: encode, sort, and rank self-delimiting numbers; test trees for
//! isomorphism; run benchmarks.
//!
//! Exit codes: 0 success (or isomorphic), 1 not isomorphic, 2 error.

mod bench;
mod numbers;

use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use sdn_core::accounting::CountingAllocator;
use sdn_core::codec::{read_container, write_container, SdnSequence};
use sdn_core::iso::{isomorphic, IsoInput, IsoOptions};
use sdn_core::rank::{CompetitiveRankStructure, DenseRankStructure};
use sdn_core::sort::Sorter;
use sdn_core::sort::SortConfig;
use sdn_core::tree::TreeInput;

#[global_allocator]
static ALLOC: CountingAllocator = CountingAllocator;

#[derive(Parser)]
#[command(name = "sdn", version, about = "Self-delimiting numbers and O(n)-bit tree isomorphism")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Encode decimal integers into an SDN1 container.
    Encode {
        /// Text file of whitespace-separated integers; stdin if omitted.
        input: Option<PathBuf>,
        /// Container file to write; stdout if omitted.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Print the numbers of a container, one per line.
    Decode {
        /// Container file; stdin if omitted.
        input: Option<PathBuf>,
    },
    /// Sort a container.
    Sort {
        input: Option<PathBuf>,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Dense rank (distinct smaller values) of numbers in a container.
    DenseRank(RankArgs),
    /// Rank (smaller values, with multiplicity) of numbers in a container.
    Rank(RankArgs),
    /// Test two trees for isomorphism.
    TreeIso {
        first: PathBuf,
        second: PathBuf,
        /// Compare as rooted trees; edge-list files need a `root` line.
        #[arg(long)]
        rooted: bool,
        /// Take node colors into account; both files need a colors line.
        #[arg(long)]
        colored: bool,
        /// Only compare the roots' classifications at the end instead of
        /// every level.
        #[arg(long)]
        root_only: bool,
    },
    /// Time the library on seeded random inputs and print CSV.
    Bench {
        #[arg(long, value_enum)]
        suite: bench::Suite,
        /// Input sizes: N in bits for sort and rank, n nodes for iso.
        #[arg(long, value_delimiter = ',', default_values_t = [1usize << 16, 1 << 18, 1 << 20])]
        sizes: Vec<usize>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        /// Runs per size; the median time is reported.
        #[arg(long, default_value_t = 5)]
        runs: usize,
    },
}

#[derive(Args)]
struct RankArgs {
    input: PathBuf,
    /// Indices (0-based positions in the sequence) to query; all if omitted.
    #[arg(long, value_delimiter = ',')]
    queries: Option<Vec<usize>>,
}

type CliResult<T> = Result<T, String>;

fn read_input(path: Option<&Path>) -> CliResult<Vec<u8>> {
    match path {
        Some(p) => fs::read(p).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            let mut buf = Vec::new();
            io::stdin()
                .read_to_end(&mut buf)
                .map_err(|e| format!("stdin: {e}"))?;
            Ok(buf)
        }
    }
}

fn read_sequence(path: Option<&Path>) -> CliResult<SdnSequence> {
    let bytes = read_input(path)?;
    let name = path.map_or("stdin".into(), |p| p.display().to_string());
    read_container(&bytes[..]).map_err(|e| format!("{name}: {e}"))
}

fn write_sequence(path: Option<&Path>, seq: &SdnSequence) -> CliResult<()> {
    let mut bytes = Vec::new();
    write_container(&mut bytes, seq).map_err(|e| e.to_string())?;
    match path {
        Some(p) => fs::write(p, bytes).map_err(|e| format!("{}: {e}", p.display())),
        None => io::stdout()
            .write_all(&bytes)
            .map_err(|e| format!("stdout: {e}")),
    }
}

fn encode(input: Option<&Path>, output: Option<&Path>) -> CliResult<()> {
    let bytes = read_input(input)?;
    let text = String::from_utf8(bytes).map_err(|_| "input is not UTF-8 text".to_string())?;
    let values = numbers::parse_numbers(&text).map_err(|e| e.to_string())?;
    let seq = SdnSequence::from_biguints(&values);
    write_sequence(output, &seq)?;
    let summary = format!("N={} k={}", seq.len_bits(), seq.count());
    // Keep stdout clean when the container goes there.
    if output.is_some() {
        println!("{summary}");
    } else {
        eprintln!("{summary}");
    }
    Ok(())
}

fn decode(input: Option<&Path>) -> CliResult<()> {
    let seq = read_sequence(input)?;
    let mut out = io::BufWriter::new(io::stdout().lock());
    for x in seq.to_biguints() {
        writeln!(out, "{x}").map_err(|e| e.to_string())?;
    }
    out.flush().map_err(|e| e.to_string())
}

fn sort(input: Option<&Path>, output: Option<&Path>) -> CliResult<()> {
    let seq = read_sequence(input)?;
    let cfg = SortConfig::for_bits(seq.len_bits()).map_err(|e| e.to_string())?;
    let sorted = Sorter::new().sort(&seq, &cfg).map_err(|e| e.to_string())?;
    write_sequence(output, &sorted)
}

fn rank(args: &RankArgs, dense: bool) -> CliResult<()> {
    let seq = read_sequence(Some(&args.input))?;
    let positions: Vec<(usize, u64)> = seq.iter().collect();
    let queries: Vec<usize> = match &args.queries {
        Some(q) => q.clone(),
        None => (0..positions.len()).collect(),
    };
    if let Some(&bad) = queries.iter().find(|&&i| i >= positions.len()) {
        return Err(format!(
            "query index {bad} is out of range for {} numbers",
            positions.len()
        ));
    }
    let answer: Box<dyn Fn(usize, u64) -> u64> = if dense {
        let s = DenseRankStructure::build(&seq).map_err(|e| e.to_string())?;
        Box::new(move |p, x| s.rank(p, x))
    } else {
        let s = CompetitiveRankStructure::build(&seq).map_err(|e| e.to_string())?;
        Box::new(move |p, x| s.rank(p, x))
    };
    let mut out = io::BufWriter::new(io::stdout().lock());
    for i in queries {
        let (p, x) = positions[i];
        writeln!(out, "{}", answer(p, x)).map_err(|e| e.to_string())?;
    }
    out.flush().map_err(|e| e.to_string())
}

fn read_tree(path: &Path) -> CliResult<TreeInput> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    TreeInput::parse(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn tree_iso(
    first: &Path,
    second: &Path,
    rooted: bool,
    colored: bool,
    root_only: bool,
) -> CliResult<bool> {
    let (a, b) = (read_tree(first)?, read_tree(second)?);
    let side = |t: &TreeInput, path: &Path| -> CliResult<()> {
        if rooted && t.root.is_none() {
            return Err(format!("{}: --rooted needs a root line", path.display()));
        }
        if colored && t.colors.is_none() {
            return Err(format!("{}: --colored needs a colors line", path.display()));
        }
        Ok(())
    };
    side(&a, first)?;
    side(&b, second)?;
    fn input(t: &TreeInput, rooted: bool, colored: bool) -> IsoInput<'_> {
        let mut i = IsoInput::unrooted(&t.tree);
        if rooted {
            i.root = t.root;
        }
        if colored {
            i.colors = t.colors.as_deref();
        }
        i
    }
    let opts = IsoOptions { early_exit: !root_only };
    isomorphic(&input(&a, rooted, colored), &input(&b, rooted, colored), &opts)
        .map(|(iso, _)| iso)
        .map_err(|e| e.to_string())
}

fn run(cli: Cli) -> CliResult<ExitCode> {
    match cli.command {
        Command::Encode { input, output } => encode(input.as_deref(), output.as_deref())?,
        Command::Decode { input } => decode(input.as_deref())?,
        Command::Sort { input, output } => sort(input.as_deref(), output.as_deref())?,
        Command::DenseRank(args) => rank(&args, true)?,
        Command::Rank(args) => rank(&args, false)?,
        Command::TreeIso { first, second, rooted, colored, root_only } => {
            let iso = tree_iso(&first, &second, rooted, colored, root_only)?;
            println!("{}", if iso { "isomorphic" } else { "not-isomorphic" });
            return Ok(if iso { ExitCode::SUCCESS } else { ExitCode::from(1) });
        }
        Command::Bench { suite, sizes, seed, runs } => {
            let rows = bench::run(suite, &sizes, seed, runs).map_err(|e| e.to_string())?;
            println!("{}", bench::HEADER);
            for row in &rows {
                println!("{}", row.csv());
            }
            for line in bench::ratio_lines(&rows) {
                println!("{line}");
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
