//! `pedlex` command-line driver.
//!
//! Exit status: 0 on success, 1 on bad input or usage, 2 when an internal
//! invariant is violated. Data goes to stdout or `--out` files; diagnostics
//! go to stderr.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use clap::{Args, Parser, Subcommand, ValueEnum};
use pedlex::corpus::{extract_wordlists, g2p_convert, read_wordlist, G2pTable, Script, Upos, WordList};
use pedlex::similarity::{align_lists_detailed, build_matrix, AlignOptions, ListOrder, CSV_HEADER};
use pedlex::{
    load_inventory, ped_with_trace, tokenize, DistanceConfig, Error, FeatureInventory, Features, MannerDistanceTable,
    PhoneMetric, Result,
};

/// Environment variable naming a directory of default data files.
pub const DATA_ENV: &str = "PEDLEX_DATA";

#[derive(Debug, Parser)]
#[command(name = "pedlex", version, about = "Articulatory phonetic edit distance and lexical similarity")]
struct Cli {
    #[command(flatten)]
    global: GlobalOpts,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct GlobalOpts {
    /// Feature inventory file (default: $PEDLEX_DATA/inventory.tsv or bundled)
    #[arg(long, global = true)]
    inventory: Option<PathBuf>,

    /// Manner distance table (default: $PEDLEX_DATA/manner.tsv or bundled)
    #[arg(long, global = true)]
    manner_table: Option<PathBuf>,

    /// Place+manner threshold above which minor consonant features are ignored
    #[arg(long, global = true)]
    alpha: Option<f64>,

    /// Use the threshold-branching vowel distance
    #[arg(long, global = true)]
    literal_vowel_branch: bool,

    /// Substitution cost between a vowel and a consonant
    #[arg(long, global = true)]
    cross_type_cost: Option<f64>,

    /// Literal pseudocode settings for side-by-side comparison (implies --literal-vowel-branch)
    #[arg(long, global = true)]
    paper_mode: bool,

    /// Drop words containing symbols missing from the inventory instead of failing
    #[arg(long, global = true)]
    skip_unknown: bool,

    /// More log output (repeatable)
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Phonetic edit distance between two IPA words
    Dist {
        ipa1: String,
        ipa2: String,
        /// Divide by the longer length
        #[arg(long)]
        normalized: bool,
        /// Print the aligned edit script
        #[arg(long)]
        trace: bool,
    },
    /// Show inventory features, or pairwise distances between symbols
    Phones {
        symbols: Vec<String>,
        /// Print a distance matrix over the given symbols
        #[arg(long)]
        pairwise: bool,
    },
    /// Extract per-tag lemma lists from a CoNLL-U file
    Extract {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        lang: String,
        /// Restrict to these tags (repeatable)
        #[arg(long = "pos")]
        pos: Vec<String>,
        #[arg(long)]
        out_dir: PathBuf,
    },
    /// Convert a word list to IPA with orthographic rules
    G2p {
        #[arg(long)]
        script: String,
        /// Rule table (default: bundled table for the script)
        #[arg(long)]
        table: Option<PathBuf>,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
    /// Similarity cell for two word lists
    Compare {
        #[arg(long)]
        a: PathBuf,
        #[arg(long)]
        b: PathBuf,
        #[command(flatten)]
        align: AlignArgs,
    },
    /// Similarity matrix over a directory of word lists
    Matrix {
        #[arg(long)]
        lists: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// Worker threads (default: available parallelism)
        #[arg(long)]
        jobs: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutFormat::Csv)]
        out_format: OutFormat,
        #[command(flatten)]
        align: AlignArgs,
    },
}

#[derive(Debug, Args)]
struct AlignArgs {
    /// Skip cells where either list has fewer words
    #[arg(long, default_value_t = pedlex::similarity::DEFAULT_MIN_SIZE)]
    min_size: usize,
    /// Order of the shorter list: sorted or shuffle:<seed>
    #[arg(long, default_value = "sorted")]
    order: String,
    /// Disable early termination of the DP
    #[arg(long)]
    no_prune: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutFormat {
    Csv,
    LongTsv,
}

/// Resolved run configuration; every path is checked before work starts.
#[derive(Debug)]
pub struct RunConfig {
    pub inventory_path: Option<PathBuf>,
    pub manner_table_path: Option<PathBuf>,
    pub data_dir: Option<PathBuf>,
    pub distance: DistanceConfig,
    pub skip_unknown: bool,
}

impl RunConfig {
    fn resolve(g: &GlobalOpts, data_dir: Option<PathBuf>) -> Result<Self> {
        let from_data = |name: &str| data_dir.as_ref().map(|d| d.join(name)).filter(|p| p.exists());
        let inventory_path = g.inventory.clone().or_else(|| from_data("inventory.tsv"));
        let manner_table_path = g.manner_table.clone().or_else(|| from_data("manner.tsv"));
        for p in inventory_path.iter().chain(manner_table_path.iter()) {
            require_file(p)?;
        }
        let mut distance = DistanceConfig::default();
        if let Some(a) = g.alpha {
            distance.alpha = a;
        }
        if let Some(c) = g.cross_type_cost {
            distance.cross_type_cost = c;
        }
        distance.literal_vowel_branch = g.literal_vowel_branch || g.paper_mode;
        distance.validate()?;
        Ok(RunConfig { inventory_path, manner_table_path, data_dir, distance, skip_unknown: g.skip_unknown })
    }

    fn inventory(&self) -> Result<FeatureInventory> {
        match &self.inventory_path {
            Some(p) => load_inventory(p),
            None => Ok(FeatureInventory::default_inventory()),
        }
    }

    fn metric(&self) -> Result<PhoneMetric> {
        let manner = match &self.manner_table_path {
            Some(p) => MannerDistanceTable::load(p)?,
            None => MannerDistanceTable::default(),
        };
        PhoneMetric::new(self.distance, manner)
    }

    fn g2p_table(&self, script: Script, explicit: Option<&Path>) -> Result<G2pTable> {
        let file = match script {
            Script::PersoArabic => "g2p_perso_arabic.tsv",
            Script::Devanagari => "g2p_devanagari.tsv",
        };
        let path = explicit
            .map(Path::to_path_buf)
            .or_else(|| self.data_dir.as_ref().map(|d| d.join(file)).filter(|p| p.exists()));
        let table = match path {
            Some(p) => {
                require_file(&p)?;
                G2pTable::load(p)?
            }
            None => script.default_table(),
        };
        if table.script != script {
            return Err(Error::ScriptMismatch { table: table.script.to_string(), list: script.to_string() });
        }
        Ok(table)
    }
}

fn require_file(p: &Path) -> Result<()> {
    if p.is_file() {
        Ok(())
    } else {
        Err(Error::Invalid(format!("{}: file not found", p.display())))
    }
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    fs::write(path, contents).map_err(|e| Error::Io { path: path.to_path_buf(), source: e })
}

fn io_err(e: std::io::Error) -> Error {
    Error::Io { path: PathBuf::from("<stdout>"), source: e }
}

fn init_logging(verbose: u8) {
    let level = match verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        2 => log::LevelFilter::Debug,
        _ => log::LevelFilter::Trace,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .parse_env("PEDLEX_LOG")
        .format_timestamp(None)
        .target(env_logger::Target::Stderr)
        .try_init();
}

/// Runs the CLI with `args` (including the program name) and returns the
/// exit status. Output and diagnostics are written to the given streams.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{text}");
                    0
                }
                _ => {
                    let _ = write!(err, "{text}");
                    1
                }
            };
        }
    };
    init_logging(cli.global.verbose);
    let data_dir = std::env::var_os(DATA_ENV).map(PathBuf::from);
    match execute(cli, data_dir, out) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            if e.is_input_error() {
                1
            } else {
                2
            }
        }
    }
}

fn align_options(a: &AlignArgs, cfg: &RunConfig) -> Result<AlignOptions> {
    if a.min_size < 1 {
        return Err(Error::Invalid("--min-size must be at least 1".into()));
    }
    Ok(AlignOptions {
        min_size: a.min_size,
        order: a.order.parse::<ListOrder>()?,
        prune: !a.no_prune,
        skip_unknown: cfg.skip_unknown,
    })
}

fn execute(cli: Cli, data_dir: Option<PathBuf>, out: &mut dyn Write) -> Result<()> {
    let cfg = RunConfig::resolve(&cli.global, data_dir)?;
    match cli.command {
        Command::Dist { ipa1, ipa2, normalized, trace } => {
            let inv = cfg.inventory()?;
            let metric = cfg.metric()?;
            let a = tokenize(&ipa1, &inv)?;
            let b = tokenize(&ipa2, &inv)?;
            let r = ped_with_trace(&a, &b, &metric);
            let value = if normalized { r.normalized } else { r.distance };
            writeln!(out, "{value:.3}").map_err(io_err)?;
            if trace {
                for op in r.ops.unwrap_or_default() {
                    writeln!(out, "{op}").map_err(io_err)?;
                }
            }
        }
        Command::Phones { symbols, pairwise } => {
            let inv = cfg.inventory()?;
            let metric = cfg.metric()?;
            let phones = if symbols.is_empty() {
                inv.phones().to_vec()
            } else {
                symbols
                    .iter()
                    .map(|s| {
                        let label = pedlex::normalize_ipa(s);
                        inv.lookup(&label).cloned().ok_or(Error::UnknownSymbol { text: label, offset: 0 })
                    })
                    .collect::<Result<Vec<_>>>()?
            };
            if pairwise {
                let header: Vec<&str> = phones.iter().map(|p| p.label.as_str()).collect();
                writeln!(out, "\t{}", header.join("\t")).map_err(io_err)?;
                for a in &phones {
                    let row: Vec<String> = phones.iter().map(|b| format!("{:.3}", metric.between(a, b))).collect();
                    writeln!(out, "{}\t{}", a.label, row.join("\t")).map_err(io_err)?;
                }
            } else {
                for p in &phones {
                    let line = match p.features {
                        Features::Vowel(v) => {
                            format!("{}\tvowel\topen={} back={} rounded={}", p.label, v.open, v.back, v.rounded)
                        }
                        Features::Consonant(c) => format!(
                            "{}\tconsonant\tmanner={} place={} voiced={} aspirated={} airflow={} pharyngeal={}",
                            p.label, c.manner, c.place, c.voiced, c.aspirated, c.airflow, c.pharyngeal
                        ),
                    };
                    writeln!(out, "{line}").map_err(io_err)?;
                }
            }
        }
        Command::Extract { input, lang, pos, out_dir } => {
            require_file(&input)?;
            let filter = pos.iter().map(|p| p.parse::<Upos>()).collect::<Result<Vec<_>>>()?;
            let ex = extract_wordlists(&input, &lang, &filter)?;
            fs::create_dir_all(&out_dir).map_err(|e| Error::Io { path: out_dir.clone(), source: e })?;
            for list in &ex.lists {
                let path = out_dir.join(format!("{}_{}.tsv", list.language, list.pos));
                write_file(&path, &list.to_file_string())?;
                log::info!("{}: {} lemmas", path.display(), list.len());
                writeln!(out, "{}\t{}", path.display(), list.len()).map_err(io_err)?;
            }
            if ex.lists.is_empty() {
                log::warn!("{}: no lemmas with target tags", input.display());
            }
        }
        Command::G2p { script, table, input, out: out_path } => {
            let script: Script = script.parse()?;
            let table = cfg.g2p_table(script, table.as_deref())?;
            require_file(&input)?;
            let words = read_wordlist(&input)?;
            let outcome = g2p_convert(&words, &table)?;
            let mut text = outcome.list.to_file_string();
            for d in &outcome.dropped {
                text.push_str(&format!("# dropped\t{}\t{}\n", d.lemma, d.reason));
            }
            write_file(&out_path, &text)?;
            writeln!(
                out,
                "{}\t{} converted\t{} dropped",
                out_path.display(),
                outcome.list.len(),
                outcome.dropped.len()
            )
            .map_err(io_err)?;
        }
        Command::Compare { a, b, align } => {
            let opts = align_options(&align, &cfg)?;
            require_file(&a)?;
            require_file(&b)?;
            let (la, lb) = (read_wordlist(&a)?, read_wordlist(&b)?);
            let inv = cfg.inventory()?;
            let metric = cfg.metric()?;
            let al = align_lists_detailed(&la, &lb, &inv, &metric, &opts)?;
            log::info!(
                "{} PED calls, {} DP cells, {} abandoned",
                al.stats.ped.calls,
                al.stats.ped.cells,
                al.stats.ped.abandoned
            );
            writeln!(out, "{CSV_HEADER}").map_err(io_err)?;
            writeln!(out, "{}", al.cell.csv_row()).map_err(io_err)?;
        }
        Command::Matrix { lists, out: out_path, jobs, out_format, align } => {
            let opts = align_options(&align, &cfg)?;
            let jobs =
                jobs.unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1)).max(1);
            let wordlists = read_list_dir(&lists)?;
            let inv = cfg.inventory()?;
            let metric = cfg.metric()?;
            let mut report = build_matrix(&wordlists, &inv, &metric, &opts, jobs)?;
            report.metadata.created_unix = SystemTime::now().duration_since(UNIX_EPOCH).ok().map(|d| d.as_secs());
            let text = match out_format {
                OutFormat::Csv => report.to_csv(),
                OutFormat::LongTsv => report.to_long_tsv(),
            };
            write_file(&out_path, &text)?;
            log::info!(
                "{}: {} cells ({} computed), inventory {}",
                out_path.display(),
                report.cells.len(),
                report.computed().count(),
                report.metadata.inventory_source
            );
        }
    }
    Ok(())
}

/// Reads every word-list file in `dir`, in file-name order.
fn read_list_dir(dir: &Path) -> Result<Vec<WordList>> {
    let entries = fs::read_dir(dir).map_err(|e| Error::Io { path: dir.to_path_buf(), source: e })?;
    let mut paths: Vec<PathBuf> = entries.filter_map(|e| e.ok().map(|e| e.path())).filter(|p| p.is_file()).collect();
    paths.sort();
    let mut lists = Vec::new();
    for p in paths {
        match read_wordlist(&p) {
            Ok(l) => lists.push(l),
            Err(e @ Error::Parse { .. }) => log::warn!("skipping {}: {e}", p.display()),
            Err(e) => return Err(e),
        }
    }
    if lists.is_empty() {
        return Err(Error::Invalid(format!("{}: no word-list files found", dir.display())));
    }
    Ok(lists)
}
