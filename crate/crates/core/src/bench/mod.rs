//! Benchmark harness: reproduces the scaling (console vs parallel) and
//! split-size (single file vs many small files) experiments at desk scale.
//!
//! Timing protocol: every configuration runs `repeats` times, the single
//! slowest and single fastest runs are discarded, and the rest are
//! averaged. No timing is accepted unless the outputs of all repeats are
//! byte-identical. Experiments run strictly one job at a time so timings
//! never contend with each other.

mod corpus;
mod report;

pub use corpus::{default_wordlist, generate_corpus, CorpusSpec, SplitMix64, DEFAULT_WORDLIST};
pub use report::{records_from_csv, records_to_csv, render_report, CSV_HEADER};

use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::time::Duration;

use thiserror::Error;

use crate::console::{run_sequential, ConsoleError};
use crate::engine::{read_canonical_output, run_job, EngineError, JobSpec, MapperKind};
use crate::simplify::SimplifierConfig;
use crate::store::{CorpusStore, StoreConfig, StoreError};

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("invalid benchmark input: {0}")]
    InvalidInput(String),
    #[error("repeat {repeat} produced different output than repeat 0; timing rejected")]
    NonDeterministic { repeat: usize },
    #[error("job planned {planned} tasks for {expected} one-block files")]
    TaskCountMismatch { planned: usize, expected: usize },
    #[error("bad csv at line {line}: {msg}")]
    Csv { line: usize, msg: String },
    #[error("{context}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error(transparent)]
    Engine(#[from] EngineError),
    #[error(transparent)]
    Console(#[from] ConsoleError),
}

fn io_err(context: impl Into<String>) -> impl FnOnce(io::Error) -> BenchError {
    let context = context.into();
    move |source| BenchError::Io { context, source }
}

/// Repeated wall-clock samples plus their trimmed mean: the arithmetic
/// mean after removing exactly one minimum and one maximum occurrence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RunningTime {
    samples: Vec<Duration>,
    trimmed_mean: Duration,
}

impl RunningTime {
    /// Builds the trimmed mean from at least three samples.
    pub fn from_samples(samples: Vec<Duration>) -> Result<Self, BenchError> {
        if samples.len() < 3 {
            return Err(BenchError::InvalidInput(
                "need at least 3 samples to trim one min and one max".into(),
            ));
        }
        let min_idx = samples
            .iter()
            .enumerate()
            .min_by_key(|(_, d)| **d)
            .map(|(i, _)| i)
            .expect("non-empty");
        let max_idx = samples
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != min_idx)
            .max_by_key(|(_, d)| **d)
            .map(|(i, _)| i)
            .expect("at least two samples");
        let kept: u128 = samples
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != min_idx && *i != max_idx)
            .map(|(_, d)| d.as_nanos())
            .sum();
        let trimmed_mean = Duration::from_nanos((kept / (samples.len() as u128 - 2)) as u64);
        Ok(Self {
            samples,
            trimmed_mean,
        })
    }

    pub fn samples(&self) -> &[Duration] {
        &self.samples
    }

    pub fn trimmed_mean(&self) -> Duration {
        self.trimmed_mean
    }
}

/// Which experiment a record belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExperimentKind {
    Scaling,
    Split,
}

impl fmt::Display for ExperimentKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Scaling => "scaling",
            Self::Split => "split",
        })
    }
}

impl FromStr for ExperimentKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "scaling" => Ok(Self::Scaling),
            "split" => Ok(Self::Split),
            other => Err(format!("unknown experiment {other:?}")),
        }
    }
}

/// Sequential console run or parallel engine run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RunMode {
    Console,
    Parallel,
}

impl fmt::Display for RunMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Console => "console",
            Self::Parallel => "parallel",
        })
    }
}

impl FromStr for RunMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "console" => Ok(Self::Console),
            "parallel" => Ok(Self::Parallel),
            other => Err(format!("unknown mode {other:?}")),
        }
    }
}

/// One benchmark cell: what ran, over how much data, and how long it took.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExperimentRecord {
    pub experiment: ExperimentKind,
    pub size_bytes: u64,
    pub mode: RunMode,
    pub workers: usize,
    pub file_count: usize,
    pub running_time: RunningTime,
}

impl ExperimentRecord {
    pub fn new(
        experiment: ExperimentKind,
        size_bytes: u64,
        mode: RunMode,
        workers: usize,
        file_count: usize,
        running_time: RunningTime,
    ) -> Result<Self, BenchError> {
        if mode == RunMode::Console && workers != 1 {
            return Err(BenchError::InvalidInput(
                "console records always have workers=1".into(),
            ));
        }
        if file_count < 1 {
            return Err(BenchError::InvalidInput(
                "file_count must be at least 1".into(),
            ));
        }
        Ok(Self {
            experiment,
            size_bytes,
            mode,
            workers,
            file_count,
            running_time,
        })
    }
}

/// One timed execution: its wall time and its canonical output bytes.
pub struct RunOutcome {
    pub wall: Duration,
    pub canonical: Vec<u8>,
}

/// Runs `runner` `repeats` times and applies the trim protocol. The
/// runner gets the repeat index (for per-repeat scratch space) and must
/// return the run's canonical output; if any repeat's output differs from
/// the first, the whole timing is rejected as non-deterministic.
pub fn time_run<F>(mut runner: F, repeats: usize) -> Result<RunningTime, BenchError>
where
    F: FnMut(usize) -> Result<RunOutcome, BenchError>,
{
    if repeats < 3 {
        return Err(BenchError::InvalidInput(
            "repeats must be at least 3".into(),
        ));
    }
    let mut samples = Vec::with_capacity(repeats);
    let mut reference: Option<Vec<u8>> = None;
    for repeat in 0..repeats {
        let outcome = runner(repeat)?;
        match &reference {
            None => reference = Some(outcome.canonical),
            Some(expected) => {
                if *expected != outcome.canonical {
                    return Err(BenchError::NonDeterministic { repeat });
                }
            }
        }
        samples.push(outcome.wall);
    }
    RunningTime::from_samples(samples)
}

/// Knobs shared by both experiments.
#[derive(Debug, Clone)]
pub struct ExperimentOptions {
    /// Scratch directory; every experiment cleans up what it creates here.
    pub workdir: PathBuf,
    /// Corpus seed (size and layout are mixed in per cell).
    pub seed: u64,
    /// Block size for the scaling experiment's store; the default 1 MiB
    /// over the default size ladder mirrors the 64 MiB-blocks-over-GBs
    /// ratio of a full-size deployment.
    pub scaling_block_size: u64,
}

impl ExperimentOptions {
    pub fn new(workdir: impl Into<PathBuf>) -> Self {
        Self {
            workdir: workdir.into(),
            seed: 1,
            scaling_block_size: 1024 * 1024,
        }
    }
}

fn console_outcome(
    inputs: &[PathBuf],
    simplifier: &SimplifierConfig,
    out_path: &Path,
) -> Result<RunOutcome, BenchError> {
    let run = run_sequential(inputs, simplifier, out_path)?;
    let canonical =
        fs::read(out_path).map_err(io_err(format!("reading {}", out_path.display())))?;
    fs::remove_file(out_path).ok();
    Ok(RunOutcome {
        wall: run.wall_time,
        canonical,
    })
}

fn parallel_outcome(
    store: &CorpusStore,
    spec: &JobSpec,
    simplifier: &SimplifierConfig,
) -> Result<RunOutcome, BenchError> {
    let result = run_job(store, spec, simplifier)?;
    let canonical = read_canonical_output(&spec.output_dir)?;
    fs::remove_dir_all(&spec.output_dir).ok();
    Ok(RunOutcome {
        wall: result.wall_time,
        canonical,
    })
}

/// Console-vs-parallel scaling over ascending corpus sizes. Per size, one
/// single-file corpus is generated and timed both sequentially and as a
/// parallel simplify job with `workers` workers.
pub fn experiment_scaling(
    sizes: &[u64],
    workers: usize,
    repeats: usize,
    simplifier: &SimplifierConfig,
    opts: &ExperimentOptions,
) -> Result<Vec<ExperimentRecord>, BenchError> {
    if sizes.is_empty() {
        return Err(BenchError::InvalidInput("no sizes given".into()));
    }
    if !sizes.windows(2).all(|w| w[0] < w[1]) {
        return Err(BenchError::InvalidInput("sizes must be ascending".into()));
    }
    if workers < 1 {
        return Err(BenchError::InvalidInput(
            "workers must be at least 1".into(),
        ));
    }
    let mut records = Vec::new();
    for &size in sizes {
        let cell_dir = opts.workdir.join(format!("scale-{size}"));
        let corpus_spec = CorpusSpec::new(size, 1, opts.seed ^ size);
        let inputs = generate_corpus(&corpus_spec, &cell_dir.join("corpus"))?;

        let console_time = time_run(
            |r| {
                console_outcome(
                    &inputs,
                    simplifier,
                    &cell_dir.join(format!("console-{r}.out")),
                )
            },
            repeats,
        )?;
        records.push(ExperimentRecord::new(
            ExperimentKind::Scaling,
            size,
            RunMode::Console,
            1,
            1,
            console_time,
        )?);

        let store_config = StoreConfig::new(
            opts.scaling_block_size,
            crate::store::DEFAULT_REPLICATION,
            crate::store::DEFAULT_NODE_COUNT,
        )?;
        let store = CorpusStore::open(cell_dir.join("store"), store_config)?;
        store.put_path(&inputs[0], Some("corpus"))?;
        let parallel_time = time_run(
            |r| {
                let spec = JobSpec::map_only(
                    vec!["corpus".into()],
                    MapperKind::Simplify,
                    workers,
                    cell_dir.join(format!("job-{r}.out")),
                );
                parallel_outcome(&store, &spec, simplifier)
            },
            repeats,
        )?;
        records.push(ExperimentRecord::new(
            ExperimentKind::Scaling,
            size,
            RunMode::Parallel,
            workers,
            1,
            parallel_time,
        )?);

        fs::remove_dir_all(&cell_dir).ok();
    }
    Ok(records)
}

/// Split-size experiment: the same total bytes regenerated as one file
/// and as each of the given file counts, run as a parallel simplify job.
/// The store's block size exceeds the total, so every file is one block
/// and the planned task count equals the file count, which is checked.
pub fn experiment_split(
    total_bytes: u64,
    file_counts: &[usize],
    workers: usize,
    repeats: usize,
    task_overhead: Duration,
    simplifier: &SimplifierConfig,
    opts: &ExperimentOptions,
) -> Result<Vec<ExperimentRecord>, BenchError> {
    if file_counts.iter().any(|&c| c < 1) {
        return Err(BenchError::InvalidInput(
            "file counts must be at least 1".into(),
        ));
    }
    let mut layouts: Vec<usize> = file_counts.to_vec();
    if !layouts.contains(&1) {
        layouts.insert(0, 1);
    }
    layouts.sort_unstable();
    layouts.dedup();

    let mut records = Vec::new();
    for file_count in layouts {
        let cell_dir = opts.workdir.join(format!("split-{file_count}"));
        let corpus_spec = CorpusSpec::new(
            total_bytes,
            file_count,
            opts.seed ^ (file_count as u64) << 32 ^ total_bytes,
        );
        let inputs = generate_corpus(&corpus_spec, &cell_dir.join("corpus"))?;

        // Every generated file must land in a single block.
        let store_config = StoreConfig::new(
            total_bytes + 1024 * 1024,
            crate::store::DEFAULT_REPLICATION,
            crate::store::DEFAULT_NODE_COUNT,
        )?;
        let store = CorpusStore::open(cell_dir.join("store"), store_config)?;
        let mut stored_names = Vec::with_capacity(inputs.len());
        for input in &inputs {
            let manifest = store.put_path(input, None)?;
            stored_names.push(manifest.file_name.clone());
        }

        let time = time_run(
            |r| {
                let mut spec = JobSpec::map_only(
                    stored_names.clone(),
                    MapperKind::Simplify,
                    workers,
                    cell_dir.join(format!("job-{r}.out")),
                );
                spec.task_overhead = task_overhead;
                let result = run_job(&store, &spec, simplifier)?;
                if result.tasks_total != file_count {
                    return Err(BenchError::TaskCountMismatch {
                        planned: result.tasks_total,
                        expected: file_count,
                    });
                }
                let canonical = read_canonical_output(&spec.output_dir)?;
                fs::remove_dir_all(&spec.output_dir).ok();
                Ok(RunOutcome {
                    wall: result.wall_time,
                    canonical,
                })
            },
            repeats,
        )?;
        records.push(ExperimentRecord::new(
            ExperimentKind::Split,
            total_bytes,
            RunMode::Parallel,
            workers,
            file_count,
            time,
        )?);

        fs::remove_dir_all(&cell_dir).ok();
    }
    Ok(records)
}

/// Renders records as CSV and as the human-readable report.
pub fn emit_results(records: &[ExperimentRecord]) -> Result<(String, String), BenchError> {
    if records.is_empty() {
        return Err(BenchError::InvalidInput("no records to emit".into()));
    }
    Ok((records_to_csv(records), render_report(records)))
}
