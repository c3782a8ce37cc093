//! Command-line front end: block store management, ad-hoc simplification,
//! parallel jobs, the sequential baseline, and the benchmark harness.

use std::collections::HashSet;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand};

use sademr::bench::{
    emit_results, experiment_scaling, experiment_split, records_from_csv, render_report,
    ExperimentOptions,
};
use sademr::console::run_sequential;
use sademr::engine::{run_job, FailurePlan, JobSpec, MapperKind, ReducerKind};
use sademr::simplify::{simplify_line, SimplifierConfig};
use sademr::store::{CorpusStore, StoreConfig};

#[derive(Parser)]
#[command(
    name = "sademr",
    version,
    about = "Desk-scale map-only text processing"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Manage the block store.
    Corpus {
        #[command(subcommand)]
        command: CorpusCommand,
    },
    /// Simplify text from stdin or a file.
    Simplify(SimplifyArgs),
    /// Run parallel jobs over stored files.
    Job {
        #[command(subcommand)]
        command: JobCommand,
    },
    /// Run the sequential baseline.
    Console {
        #[command(subcommand)]
        command: ConsoleCommand,
    },
    /// Benchmark experiments and reports.
    Bench {
        #[command(subcommand)]
        command: BenchCommand,
    },
}

#[derive(Args)]
struct StoreArgs {
    /// Store root directory.
    #[arg(long, default_value = "./store")]
    root: PathBuf,
    /// Properties file; honors dfs.block.size, dfs.replication, store.nodes.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl StoreArgs {
    fn store_config(
        &self,
        block_size: Option<u64>,
        replication: Option<usize>,
        nodes: Option<usize>,
    ) -> Result<StoreConfig, Box<dyn std::error::Error>> {
        let base = match &self.config {
            Some(path) => StoreConfig::from_properties(&fs::read_to_string(path)?)?,
            None => StoreConfig::default(),
        };
        Ok(StoreConfig::new(
            block_size.unwrap_or(base.block_size()),
            replication.unwrap_or(base.replication()),
            nodes.unwrap_or(base.node_count()),
        )?)
    }
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// Split a file into replicated blocks and store it.
    Put {
        path: PathBuf,
        /// Name to store under (default: the file name).
        #[arg(long)]
        name: Option<String>,
        /// Block size in bytes.
        #[arg(long)]
        block_size: Option<u64>,
        #[arg(long)]
        replication: Option<usize>,
        #[arg(long)]
        nodes: Option<usize>,
        #[command(flatten)]
        store: StoreArgs,
    },
    /// List stored files.
    Ls {
        #[command(flatten)]
        store: StoreArgs,
    },
    /// Reconstruct a stored file on stdout.
    Cat {
        file: String,
        #[command(flatten)]
        store: StoreArgs,
    },
}

#[derive(Args)]
struct SimplifyArgs {
    /// Read lines from stdin.
    #[arg(long, conflicts_with = "file")]
    stdin: bool,
    /// Read lines from a file.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Override the shipped stopword lexicon.
    #[arg(long)]
    stopwords: Option<PathBuf>,
    /// Override the shipped suffix rules.
    #[arg(long)]
    suffixes: Option<PathBuf>,
}

#[derive(Subcommand)]
enum JobCommand {
    /// Execute a job over stored files.
    Run {
        /// Stored file name (repeatable).
        #[arg(long, required = true)]
        input: Vec<String>,
        /// simplify | identity | wordcount-map
        #[arg(long)]
        mapper: String,
        /// none | wordcount
        #[arg(long, default_value = "none")]
        reducer: String,
        #[arg(long, default_value_t = 4)]
        workers: usize,
        /// Output directory (must not exist or be empty).
        #[arg(long)]
        out: PathBuf,
        /// Fixed per-task dispatch delay in milliseconds.
        #[arg(long, default_value_t = 0)]
        task_overhead_ms: u64,
        /// Inject a failure: this worker dies mid-task.
        #[arg(long, requires = "after_tasks")]
        fail_worker: Option<usize>,
        /// The failing worker dies while running its (N+1)-th task.
        #[arg(long, requires = "fail_worker")]
        after_tasks: Option<usize>,
        #[arg(long)]
        stopwords: Option<PathBuf>,
        #[arg(long)]
        suffixes: Option<PathBuf>,
        #[command(flatten)]
        store: StoreArgs,
    },
}

#[derive(Subcommand)]
enum ConsoleCommand {
    /// Simplify files sequentially; prints `lines=<n> wall_ms=<t>`.
    Run {
        /// Input path (repeatable, processed in order).
        #[arg(long, required = true)]
        input: Vec<PathBuf>,
        #[arg(long)]
        out: PathBuf,
        #[arg(long)]
        stopwords: Option<PathBuf>,
        #[arg(long)]
        suffixes: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum BenchCommand {
    /// Console-vs-parallel scaling over a size ladder.
    Scaling {
        /// Corpus sizes, comma separated, in --unit units.
        #[arg(long, value_delimiter = ',', default_value = "1,4,16,64")]
        sizes: Vec<u64>,
        #[arg(long, default_value = "MiB")]
        unit: String,
        #[arg(long, default_value_t = 4)]
        workers: usize,
        #[arg(long, default_value_t = 10)]
        repeats: usize,
        /// Where to write the CSV.
        #[arg(long)]
        csv: PathBuf,
        /// Store block size in bytes for the parallel runs.
        #[arg(long, default_value_t = 1024 * 1024)]
        block_size: u64,
        /// Scratch directory (default: a fresh temp dir, removed after).
        #[arg(long)]
        workdir: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Single-file vs multi-file split overhead at equal total bytes.
    Split {
        /// Total corpus size in --unit units.
        #[arg(long, default_value_t = 64)]
        size: u64,
        #[arg(long, default_value = "MiB")]
        unit: String,
        /// File counts to test, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "1,16,256,1024")]
        files: Vec<usize>,
        #[arg(long, default_value_t = 4)]
        workers: usize,
        #[arg(long, default_value_t = 5)]
        task_overhead_ms: u64,
        #[arg(long, default_value_t = 10)]
        repeats: usize,
        #[arg(long)]
        csv: PathBuf,
        #[arg(long)]
        workdir: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
    /// Render the report for a previously written CSV.
    Report {
        #[arg(long)]
        csv: PathBuf,
    },
}

fn unit_bytes(unit: &str) -> Result<u64, String> {
    match unit {
        "B" | "b" => Ok(1),
        "KiB" | "kib" => Ok(1024),
        "MiB" | "mib" => Ok(1024 * 1024),
        "GiB" | "gib" => Ok(1024 * 1024 * 1024),
        other => Err(format!(
            "unknown unit {other:?} (expected B, KiB, MiB or GiB)"
        )),
    }
}

fn simplifier(
    stopwords: Option<&PathBuf>,
    suffixes: Option<&PathBuf>,
) -> Result<SimplifierConfig, Box<dyn std::error::Error>> {
    Ok(SimplifierConfig::from_files(
        stopwords.map(|p| p.as_path()),
        suffixes.map(|p| p.as_path()),
    )?)
}

/// A workdir that is deleted on drop unless the user supplied it.
struct Workdir {
    path: PathBuf,
    owned: bool,
}

impl Workdir {
    fn new(user: Option<PathBuf>) -> Result<Self, io::Error> {
        match user {
            Some(path) => {
                fs::create_dir_all(&path)?;
                Ok(Self { path, owned: false })
            }
            None => {
                let path = std::env::temp_dir().join(format!(
                    "sademr-bench-{}-{}",
                    std::process::id(),
                    std::time::SystemTime::now()
                        .duration_since(std::time::UNIX_EPOCH)
                        .map(|d| d.as_nanos())
                        .unwrap_or(0)
                ));
                fs::create_dir_all(&path)?;
                Ok(Self { path, owned: true })
            }
        }
    }
}

impl Drop for Workdir {
    fn drop(&mut self) {
        if self.owned {
            fs::remove_dir_all(&self.path).ok();
        }
    }
}

fn run() -> Result<(), Box<dyn std::error::Error>> {
    match Cli::parse().command {
        Command::Corpus { command } => match command {
            CorpusCommand::Put {
                path,
                name,
                block_size,
                replication,
                nodes,
                store,
            } => {
                let config = store.store_config(block_size, replication, nodes)?;
                let corpus = CorpusStore::open(&store.root, config)?;
                let manifest = corpus.put_path(&path, name.as_deref())?;
                println!(
                    "stored {} ({} bytes, {} blocks, {} replicas)",
                    manifest.file_name,
                    manifest.total_bytes,
                    manifest.block_count(),
                    config.effective_replication()
                );
            }
            CorpusCommand::Ls { store } => {
                let config = store.store_config(None, None, None)?;
                let corpus = CorpusStore::open(&store.root, config)?;
                for name in corpus.list_files()? {
                    println!("{name}");
                }
            }
            CorpusCommand::Cat { file, store } => {
                let config = store.store_config(None, None, None)?;
                let corpus = CorpusStore::open(&store.root, config)?;
                let manifest = corpus.manifest(&file)?;
                let stdout = io::stdout();
                let mut out = stdout.lock();
                let no_failures = HashSet::new();
                for entry in &manifest.blocks {
                    out.write_all(corpus.read_entry(entry, &no_failures)?.as_bytes())?;
                }
            }
        },
        Command::Simplify(args) => {
            let config = simplifier(args.stopwords.as_ref(), args.suffixes.as_ref())?;
            let stdout = io::stdout();
            let mut out = stdout.lock();
            if let Some(path) = args.file {
                let text = fs::read_to_string(&path)
                    .map_err(|e| format!("cannot read {}: {e}", path.display()))?;
                for line in text.lines() {
                    writeln!(out, "{}", simplify_line(line, &config))?;
                }
            } else if args.stdin {
                let stdin = io::stdin();
                for line in stdin.lock().lines() {
                    writeln!(out, "{}", simplify_line(&line?, &config))?;
                }
            } else {
                return Err("pass --stdin or --file <path>".into());
            }
        }
        Command::Job { command } => match command {
            JobCommand::Run {
                input,
                mapper,
                reducer,
                workers,
                out,
                task_overhead_ms,
                fail_worker,
                after_tasks,
                stopwords,
                suffixes,
                store,
            } => {
                let mapper: MapperKind = mapper.parse()?;
                let reducer: ReducerKind = reducer.parse()?;
                let config = store.store_config(None, None, None)?;
                let corpus = CorpusStore::open(&store.root, config)?;
                let spec = JobSpec {
                    inputs: input,
                    mapper,
                    reducer,
                    workers,
                    output_dir: out,
                    task_overhead: Duration::from_millis(task_overhead_ms),
                    failure_plan: fail_worker.zip(after_tasks).map(|(worker, after_tasks)| {
                        FailurePlan {
                            worker,
                            after_tasks,
                        }
                    }),
                };
                let simplifier = simplifier(stopwords.as_ref(), suffixes.as_ref())?;
                let result = run_job(&corpus, &spec, &simplifier)?;
                println!(
                    "{}: tasks_total={} tasks_retried={} wall_ms={} parts={}",
                    result.job_id,
                    result.tasks_total,
                    result.tasks_retried,
                    result.wall_time.as_millis(),
                    result.output_files.len()
                );
            }
        },
        Command::Console { command } => match command {
            ConsoleCommand::Run {
                input,
                out,
                stopwords,
                suffixes,
            } => {
                let config = simplifier(stopwords.as_ref(), suffixes.as_ref())?;
                let run = run_sequential(&input, &config, &out)?;
                println!(
                    "lines={} wall_ms={}",
                    run.lines_processed,
                    run.wall_time.as_millis()
                );
            }
        },
        Command::Bench { command } => match command {
            BenchCommand::Scaling {
                sizes,
                unit,
                workers,
                repeats,
                csv,
                block_size,
                workdir,
                seed,
            } => {
                let unit = unit_bytes(&unit)?;
                let sizes: Vec<u64> = sizes.iter().map(|s| s * unit).collect();
                let workdir = Workdir::new(workdir)?;
                let mut opts = ExperimentOptions::new(&workdir.path);
                opts.seed = seed;
                opts.scaling_block_size = block_size;
                let config = SimplifierConfig::shipped();
                let records = experiment_scaling(&sizes, workers, repeats, &config, &opts)?;
                let (csv_text, report) = emit_results(&records)?;
                fs::write(&csv, csv_text)?;
                print!("{report}");
                println!("csv written to {}", csv.display());
            }
            BenchCommand::Split {
                size,
                unit,
                files,
                workers,
                task_overhead_ms,
                repeats,
                csv,
                workdir,
                seed,
            } => {
                let unit = unit_bytes(&unit)?;
                let workdir = Workdir::new(workdir)?;
                let mut opts = ExperimentOptions::new(&workdir.path);
                opts.seed = seed;
                let config = SimplifierConfig::shipped();
                let records = experiment_split(
                    size * unit,
                    &files,
                    workers,
                    repeats,
                    Duration::from_millis(task_overhead_ms),
                    &config,
                    &opts,
                )?;
                let (csv_text, report) = emit_results(&records)?;
                fs::write(&csv, csv_text)?;
                print!("{report}");
                println!("csv written to {}", csv.display());
            }
            BenchCommand::Report { csv } => {
                let records = records_from_csv(&fs::read_to_string(&csv)?)?;
                print!("{}", render_report(&records));
            }
        },
    }
    Ok(())
}

fn main() -> ExitCode {
    match run() {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::FAILURE
        }
    }
}
