use std::collections::BTreeMap;
use std::io::{ErrorKind, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};
use log::info;

use matroid_catalogue::catalogue::{
    build_property_table, column_index, count_by_size_rank, format_count_matrix, format_quad_matrix,
    missing_base_triples, query, read_catalogue, write_catalogue, Catalogue, PropertyTable, QueryExpr, TableOptions,
};
use matroid_catalogue::enumerate::{brute_force_enumerate, enumerate, EnumOptions};
use matroid_catalogue::johnson::{
    count_self_dual_sparse, enumerate_isets_orderly, estimate_iset_count, IsetOptions, JohnsonGraph,
};
use matroid_catalogue::props::{excluded_minors, single_minor_indices};
use matroid_catalogue::{Error, Matroid};

const DESK_MAX_N: usize = 8;

#[derive(Parser)]
#[command(name = "matcat", version, about = "Enumerate, classify and query small matroids")]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "MATCAT_JOBS", default_value_t = 0)]
    jobs: usize,
    /// Allow runs beyond desk scale (n = 9, GF(5) at n = 8, large Johnson graphs).
    #[arg(long, global = true)]
    extended: bool,
    /// More diagnostics on stderr (repeatable).
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Enumerate all matroids up to a size and write the catalogue.
    Enum(EnumArgs),
    /// Compute the property table of a catalogue.
    Props(PropsArgs),
    /// Filter, group and count rows of a property table.
    Query(QueryArgs),
    /// Count independent-set classes of a Johnson graph.
    Johnson(JohnsonArgs),
    /// Excluded minors for representability over GF(q).
    Exminors(ExminorsArgs),
    /// Compare brute-force and orderly enumeration.
    Oracle(OracleArgs),
}

#[derive(Args)]
struct EnumArgs {
    #[arg(long, default_value_t = DESK_MAX_N)]
    max_n: usize,
    #[arg(long, default_value = "catalogue.txt")]
    out: PathBuf,
    /// Directory for resumable per-level checkpoints.
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Parents per checkpointed batch.
    #[arg(long, default_value_t = 64)]
    batch: usize,
    /// Stop (resumably) after this many seconds.
    #[arg(long)]
    time_limit: Option<u64>,
    /// Stop (resumably) after examining this many modular cuts.
    #[arg(long)]
    max_candidates: Option<u64>,
}

#[derive(Args)]
struct PropsArgs {
    #[arg(long, default_value = "catalogue.txt")]
    catalogue: PathBuf,
    #[arg(long, default_value = "properties.tsv")]
    out: PathBuf,
    /// Largest size that gets representability, Ingleton, orderability and transversality.
    #[arg(long, default_value_t = DESK_MAX_N)]
    full_max_n: usize,
}

#[derive(Args)]
struct QueryArgs {
    /// Conjunction of comparisons, e.g. "n=6 and rank=3".
    #[arg(default_value = "")]
    filter: String,
    #[arg(long, default_value = "properties.tsv")]
    table: PathBuf,
    /// Comma-separated columns to group by.
    #[arg(long, value_delimiter = ',')]
    group_by: Vec<String>,
    /// Count rows per group.
    #[arg(long, conflicts_with = "count_distinct")]
    count: bool,
    /// Count distinct values of a column per group.
    #[arg(long)]
    count_distinct: Option<String>,
    /// List (n, r, b) triples realised by no matroid.
    #[arg(long)]
    missing_bases: bool,
    #[arg(long, default_value_t = DESK_MAX_N)]
    max_n: usize,
}

#[derive(Args)]
struct JohnsonArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    /// Count self-dual sparse paving matroids (needs n = 2k).
    #[arg(long)]
    selfdual: bool,
    /// Property table to cross-check the self-dual count against.
    #[arg(long)]
    table: Option<PathBuf>,
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Set size at which the search splits into subtrees.
    #[arg(long, default_value_t = 2)]
    split_depth: usize,
    /// Stop (resumably) after this many subtrees.
    #[arg(long)]
    max_subtrees: Option<usize>,
    /// Estimate by sampling this fraction of the prefixes instead of a full count.
    #[arg(long)]
    fraction: Option<f64>,
    #[arg(long, default_value_t = 3)]
    prefix_size: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
}

#[derive(Args)]
struct ExminorsArgs {
    #[arg(long, default_value_t = 2)]
    field: u8,
    #[arg(long, default_value_t = DESK_MAX_N)]
    max_n: usize,
    /// Read levels from a catalogue file instead of enumerating.
    #[arg(long)]
    catalogue: Option<PathBuf>,
}

#[derive(Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 5)]
    max_n: usize,
}

enum Failure {
    Usage(String),
    Budget(String),
    Mismatch(String),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::BudgetExceeded { .. } => Failure::Budget(e.to_string()),
            Error::Io { .. } | Error::Format { .. } | Error::ChecksumMismatch { .. } => Failure::Io(e.to_string()),
            Error::Parse { .. } | Error::UnknownColumn(_) | Error::TypeMismatch { .. } => Failure::Usage(e.to_string()),
            _ => Failure::Mismatch(e.to_string()),
        }
    }
}

type Outcome = Result<(), Failure>;

/// Writes to stdout; a closed pipe ends the program quietly.
fn emit(args: std::fmt::Arguments) -> Outcome {
    match std::io::stdout().lock().write_fmt(args) {
        Err(e) if e.kind() == ErrorKind::BrokenPipe => std::process::exit(0),
        r => r.map_err(|e| Failure::Io(format!("stdout: {e}"))),
    }
}

macro_rules! out {
    ($($t:tt)*) => { emit(format_args!($($t)*))? };
}

macro_rules! outln {
    ($($t:tt)*) => { emit(format_args!("{}\n", format_args!($($t)*)))? };
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let level = match cli.verbose {
        0 => "warn",
        1 => "info",
        _ => "debug",
    };
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or(level)).init();
    if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(cli.jobs).build_global() {
        eprintln!("matcat: {e}");
        return ExitCode::from(2);
    }
    let run = match &cli.cmd {
        Cmd::Enum(a) => cmd_enum(&cli, a),
        Cmd::Props(a) => cmd_props(a),
        Cmd::Query(a) => cmd_query(a),
        Cmd::Johnson(a) => cmd_johnson(&cli, a),
        Cmd::Exminors(a) => cmd_exminors(&cli, a),
        Cmd::Oracle(a) => cmd_oracle(a),
    };
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            let (code, msg) = match f {
                Failure::Usage(m) => (2, m),
                Failure::Budget(m) => (3, m),
                Failure::Mismatch(m) => (4, m),
                Failure::Io(m) => (5, m),
            };
            eprintln!("matcat: {msg}");
            ExitCode::from(code)
        }
    }
}

fn require_extended(cli: &Cli, what: &str) -> Outcome {
    if cli.extended {
        Ok(())
    } else {
        Err(Failure::Usage(format!("{what} is an extended run; pass --extended")))
    }
}

fn rank_counts(levels: &[Vec<Matroid>]) -> BTreeMap<(usize, usize), u64> {
    let mut c = BTreeMap::new();
    for (n, level) in levels.iter().enumerate() {
        for m in level {
            *c.entry((n, m.rank())).or_default() += 1;
        }
    }
    c
}

fn cmd_enum(cli: &Cli, a: &EnumArgs) -> Outcome {
    if a.max_n > 15 {
        return Err(Failure::Usage("--max-n is at most 15".into()));
    }
    if a.max_n > DESK_MAX_N {
        require_extended(cli, &format!("enumeration to n={}", a.max_n))?;
    }
    let opts = EnumOptions {
        workers: cli.jobs,
        batch: a.batch,
        checkpoint: a.checkpoint.clone(),
        max_candidates: a.max_candidates,
        time_limit: a.time_limit.map(Duration::from_secs),
    };
    if let Some(dir) = &a.checkpoint {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    }
    let levels = enumerate(a.max_n, &opts)?;
    let cat = Catalogue::from_levels(levels);
    write_catalogue(&cat, &a.out)?;
    info!("wrote {} records to {}", cat.len(), a.out.display());
    out!("{}", format_count_matrix(&rank_counts(cat.levels()), a.max_n));
    Ok(())
}

fn counts(t: &PropertyTable, filter: &str) -> Result<BTreeMap<(usize, usize), u64>, Failure> {
    Ok(count_by_size_rank(t, &QueryExpr::parse(filter)?))
}

fn cmd_props(a: &PropsArgs) -> Outcome {
    let cat = read_catalogue(&a.catalogue)?;
    let t = build_property_table(&cat, &TableOptions { full_max_n: a.full_max_n });
    t.write(&a.out)?;
    info!("wrote {} rows to {}", t.len(), a.out.display());
    let max_n = cat.max_n();
    for (title, filter) in [
        ("simple", "simple=1"),
        ("simple and cosimple", "simple=1 and cosimple=1"),
        ("simple paving", "simple=1 and paving=1"),
    ] {
        outln!("{title}");
        outln!("{}", format_count_matrix(&counts(&t, filter)?, max_n));
    }
    let full = a.full_max_n.min(max_n);
    if full >= 2 {
        let layers = [
            counts(&t, "")?,
            counts(&t, "baseOrderable=1")?,
            counts(&t, "strongBaseOrderable=1")?,
            counts(&t, "transversal=1")?,
        ];
        outln!("all/base-orderable/strongly base-orderable/transversal");
        out!("{}", format_quad_matrix(&layers, 2..=6.min(full), 2, full));
    }
    Ok(())
}

fn cmd_query(a: &QueryArgs) -> Outcome {
    let t = PropertyTable::read(&a.table)?;
    if a.missing_bases {
        for (n, r, b) in missing_base_triples(&t, a.max_n) {
            outln!("({n},{r},{b})");
        }
        return Ok(());
    }
    let groups: Vec<&str> = a.group_by.iter().map(String::as_str).collect();
    let mut q = QueryExpr::parse(&a.filter)?.group_by(&groups)?;
    if a.count {
        q = q.count();
    }
    if let Some(c) = &a.count_distinct {
        q = q.count_distinct(c)?;
    }
    out!("{}", query(&t, &q));
    Ok(())
}

fn cmd_johnson(cli: &Cli, a: &JohnsonArgs) -> Outcome {
    if a.k == 0 || a.k >= a.n || a.n > 15 {
        return Err(Failure::Usage("need 0 < k < n <= 15".into()));
    }
    if a.n > 9 && a.fraction.is_none() {
        require_extended(cli, &format!("J({},{})", a.n, a.k))?;
    }
    let g = JohnsonGraph::new(a.n, a.k);
    if a.selfdual {
        if a.n != 2 * a.k {
            return Err(Failure::Usage("--selfdual needs n = 2k".into()));
        }
        let s = count_self_dual_sparse(a.n);
        outln!("classes {}", s.classes);
        outln!("self-dual by certificate {}", s.by_certificate);
        outln!("self-dual by complementation {}", s.by_complement);
        if s.by_certificate != s.by_complement {
            return Err(Failure::Mismatch("self-dual counts disagree".into()));
        }
        if let Some(path) = &a.table {
            let t = PropertyTable::read(path)?;
            let q = QueryExpr::parse(&format!("n={} and rank={} and sparsePaving=1", a.n, a.k))?;
            let dual = column_index("dualId")?;
            let from_table = t.rows().iter().filter(|r| q.matches(r) && r[0] == r[dual]).count() as u64;
            outln!("self-dual from table {from_table}");
            if from_table != s.by_certificate {
                return Err(Failure::Mismatch("catalogue disagrees with the Johnson count".into()));
            }
        }
        return Ok(());
    }
    if let Some(fraction) = a.fraction {
        let e = estimate_iset_count(&g, a.prefix_size, fraction, a.seed);
        outln!(
            "estimate {:.1} (exact below {}: {}, sampled {} of {} prefixes, seed {})",
            e.estimate,
            a.prefix_size,
            e.exact_below,
            e.sampled,
            e.prefixes,
            e.seed
        );
        return Ok(());
    }
    if let Some(dir) = &a.checkpoint {
        std::fs::create_dir_all(dir).map_err(|e| Failure::Io(format!("{}: {e}", dir.display())))?;
    }
    let opts = IsetOptions {
        split_depth: a.split_depth,
        checkpoint: a.checkpoint.clone(),
        max_subtrees: a.max_subtrees,
        ..Default::default()
    };
    let c = enumerate_isets_orderly(&g, &opts)?;
    outln!("size\tclasses");
    for (s, v) in c.by_size.iter().enumerate() {
        outln!("{s}\t{v}");
    }
    outln!("total\t{}", c.total());
    if g.has_complementation() {
        outln!("under complementation\t{}", c.complement_total());
    }
    Ok(())
}

fn cmd_exminors(cli: &Cli, a: &ExminorsArgs) -> Outcome {
    if !(2..=5).contains(&a.field) {
        return Err(Failure::Usage("--field must be 2, 3, 4 or 5".into()));
    }
    if a.max_n > DESK_MAX_N || (a.field == 5 && a.max_n > 7) {
        require_extended(cli, &format!("GF({}) excluded minors to n={}", a.field, a.max_n))?;
    }
    let levels = match &a.catalogue {
        Some(p) => load_levels(p, a.max_n)?,
        None => enumerate(a.max_n, &EnumOptions { workers: cli.jobs, ..Default::default() })?,
    };
    let minors = single_minor_indices(&levels);
    let ex = excluded_minors(&levels, &minors, a.field);
    let c: BTreeMap<(usize, usize), u64> = ex.counts(&levels).into_iter().map(|(k, v)| (k, v as u64)).collect();
    outln!("excluded minors for GF({}): {}", a.field, ex.minors.len());
    out!("{}", format_count_matrix(&c, a.max_n));
    Ok(())
}

fn load_levels(path: &Path, max_n: usize) -> Result<Vec<Vec<Matroid>>, Failure> {
    let cat = read_catalogue(path)?;
    if cat.max_n() < max_n {
        return Err(Failure::Usage(format!("catalogue only reaches n={}", cat.max_n())));
    }
    let mut levels = cat.into_levels();
    levels.truncate(max_n + 1);
    Ok(levels)
}

fn cmd_oracle(a: &OracleArgs) -> Outcome {
    if a.max_n > 5 {
        return Err(Failure::Usage("brute force is limited to n <= 5".into()));
    }
    let levels = enumerate(a.max_n, &EnumOptions::default())?;
    let mut ok = true;
    for (n, level) in levels.iter().enumerate() {
        let brute = brute_force_enumerate(n);
        let same = brute == *level;
        ok &= same;
        outln!("n={n}: {} classes, brute force {} {}", level.len(), brute.len(), if same { "PASS" } else { "FAIL" });
    }
    if ok {
        Ok(())
    } else {
        Err(Failure::Mismatch("orderly and brute-force catalogues differ".into()))
    }
}
