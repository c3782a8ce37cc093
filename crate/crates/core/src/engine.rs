//! Map-only job execution over stored blocks.
//!
//! A job plans one task per block of its input files, in block order, and
//! runs them on a pool of local worker threads pulling from a shared
//! queue. When a worker fails, its in-flight tasks go back to the queue
//! with an incremented attempt and the survivors pick them up; the final
//! output is byte-identical to a failure-free run because every part file
//! is written to a temp name and renamed into place, so a re-executed
//! task replaces its output rather than appending.
//!
//! Map-only jobs write one `part-<task index>` file per task holding the
//! mapped values in input-line order; concatenating the parts in part
//! order is the canonical job output. With a reducer, all map output is
//! grouped by key and written sorted as a single `key<TAB>value` part.
//!
//! The scheduler owns all mutable job state behind one mutex; workers
//! only claim tasks and report completion or failure. Two jobs must not
//! share an output directory.

use std::collections::{BTreeMap, HashSet, VecDeque};
use std::fmt;
use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::{Condvar, Mutex, MutexGuard};
use std::thread;
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::simplify::{simplify_line, tokenize, SimplifierConfig};
use crate::store::{Block, BlockId, BlockManifest, CorpusStore, StoreError};

#[derive(Debug, Error)]
pub enum EngineError {
    #[error("unknown mapper {0:?} (expected simplify, identity or wordcount-map)")]
    UnknownMapper(String),
    #[error("unknown reducer {0:?} (expected none or wordcount)")]
    UnknownReducer(String),
    #[error("invalid job spec: {0}")]
    InvalidSpec(String),
    #[error("output dir {0} exists and is not empty")]
    OutputDirNotEmpty(PathBuf),
    #[error("no surviving workers to finish the job")]
    NoSurvivingWorkers,
    #[error("job failed: block {0} is unavailable")]
    BlockUnavailable(BlockId),
    #[error(transparent)]
    Store(#[from] StoreError),
    #[error("{context}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

fn io_err(context: impl Into<String>) -> impl FnOnce(io::Error) -> EngineError {
    let context = context.into();
    move |source| EngineError::Io { context, source }
}

/// One key/value record flowing between the map and reduce stages.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KeyValuePair {
    /// Never empty.
    pub key: String,
    pub value: String,
}

impl KeyValuePair {
    pub fn new(key: impl Into<String>, value: impl Into<String>) -> Self {
        Self {
            key: key.into(),
            value: value.into(),
        }
    }
}

/// The named map transforms a job can run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MapperKind {
    /// Value = the simplified line.
    Simplify,
    /// Value = the line unchanged.
    Identity,
    /// One `(token, "1")` pair per normalized token.
    WordcountMap,
}

impl FromStr for MapperKind {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "simplify" => Ok(Self::Simplify),
            "identity" => Ok(Self::Identity),
            "wordcount-map" => Ok(Self::WordcountMap),
            other => Err(EngineError::UnknownMapper(other.to_string())),
        }
    }
}

impl fmt::Display for MapperKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Simplify => "simplify",
            Self::Identity => "identity",
            Self::WordcountMap => "wordcount-map",
        })
    }
}

/// Optional reduce stage.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReducerKind {
    /// Map-only: mapped values go straight to the output parts.
    None,
    /// Counts pairs per key, output sorted by key.
    Wordcount,
}

impl FromStr for ReducerKind {
    type Err = EngineError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "none" => Ok(Self::None),
            "wordcount" => Ok(Self::Wordcount),
            other => Err(EngineError::UnknownReducer(other.to_string())),
        }
    }
}

impl fmt::Display for ReducerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::None => "none",
            Self::Wordcount => "wordcount",
        })
    }
}

/// Injectable worker failure: the given worker dies between lines while
/// executing the task it claims after completing `after_tasks` tasks.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FailurePlan {
    pub worker: usize,
    pub after_tasks: usize,
}

/// Everything a job needs: inputs, transforms, pool size, output, and the
/// optional dispatch-overhead and failure-injection knobs.
#[derive(Debug, Clone)]
pub struct JobSpec {
    /// Stored file names; tasks are planned over their blocks in order.
    pub inputs: Vec<String>,
    pub mapper: MapperKind,
    pub reducer: ReducerKind,
    pub workers: usize,
    pub output_dir: PathBuf,
    /// Fixed per-task delay simulating dispatch cost.
    pub task_overhead: Duration,
    pub failure_plan: Option<FailurePlan>,
}

impl JobSpec {
    /// A map-only job with no overhead and no failure injection.
    pub fn map_only(
        inputs: Vec<String>,
        mapper: MapperKind,
        workers: usize,
        output_dir: impl Into<PathBuf>,
    ) -> Self {
        Self {
            inputs,
            mapper,
            reducer: ReducerKind::None,
            workers,
            output_dir: output_dir.into(),
            task_overhead: Duration::ZERO,
            failure_plan: None,
        }
    }
}

/// Task lifecycle.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TaskStatus {
    Pending,
    Running,
    Done,
    Failed,
}

/// Task identity; equals the task's position in the planned order, which
/// is also its output part index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TaskId(usize);

impl TaskId {
    pub fn ordinal(&self) -> usize {
        self.0
    }
}

impl fmt::Display for TaskId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "task-{:05}", self.0)
    }
}

/// One map task over one block.
#[derive(Debug, Clone)]
pub struct Task {
    pub id: TaskId,
    pub block: BlockId,
    pub attempt: u32,
    pub assigned_worker: Option<usize>,
    pub status: TaskStatus,
}

/// What a finished job reports.
#[derive(Debug, Clone)]
pub struct JobResult {
    pub job_id: String,
    pub tasks_total: usize,
    pub tasks_retried: u64,
    pub wall_time: Duration,
    pub output_files: Vec<PathBuf>,
}

static JOB_COUNTER: AtomicU64 = AtomicU64::new(0);

fn next_job_id() -> String {
    format!(
        "job-{}-{}",
        std::process::id(),
        JOB_COUNTER.fetch_add(1, Ordering::Relaxed)
    )
}

/// Plans exactly one pending task per block, in manifest order; an empty
/// manifest list yields an empty plan.
pub fn plan_tasks(manifests: &[BlockManifest]) -> Vec<Task> {
    let mut tasks = Vec::new();
    for manifest in manifests {
        for entry in &manifest.blocks {
            tasks.push(Task {
                id: TaskId(tasks.len()),
                block: entry.id.clone(),
                attempt: 1,
                assigned_worker: None,
                status: TaskStatus::Pending,
            });
        }
    }
    tasks
}

fn position_key(block: &Block, line_index: usize) -> String {
    format!("{}:{}:{}", block.file_name(), block.index(), line_index)
}

/// Runs the named transform over every line of a block.
///
/// `simplify` and `identity` emit one pair per input line keyed by
/// `<file>:<block index>:<line index within block>`; an empty mapped line
/// still emits a pair with an empty value so line accounting is
/// preserved. `wordcount-map` emits one `(token, "1")` pair per
/// normalized token.
pub fn map_task(
    block: &Block,
    mapper: MapperKind,
    simplifier: &SimplifierConfig,
) -> Vec<KeyValuePair> {
    let mut pairs = Vec::new();
    for (line_index, line) in block.content().split_inclusive('\n').enumerate() {
        let line = line.strip_suffix('\n').unwrap_or(line);
        match mapper {
            MapperKind::Identity => {
                pairs.push(KeyValuePair::new(position_key(block, line_index), line));
            }
            MapperKind::Simplify => {
                pairs.push(KeyValuePair::new(
                    position_key(block, line_index),
                    simplify_line(line, simplifier),
                ));
            }
            MapperKind::WordcountMap => {
                for token in tokenize(line) {
                    pairs.push(KeyValuePair::new(token.normalized, "1"));
                }
            }
        }
    }
    pairs
}

/// Groups pairs by key and applies the reducer per group; output is
/// sorted by key. `ReducerKind::None` passes the input through.
pub fn shuffle_reduce(pairs: Vec<KeyValuePair>, reducer: ReducerKind) -> Vec<KeyValuePair> {
    match reducer {
        ReducerKind::None => pairs,
        ReducerKind::Wordcount => {
            let mut counts: BTreeMap<String, u64> = BTreeMap::new();
            for pair in pairs {
                *counts.entry(pair.key).or_insert(0) += 1;
            }
            counts
                .into_iter()
                .map(|(key, count)| KeyValuePair::new(key, count.to_string()))
                .collect()
        }
    }
}

/// Output part file name for a task index: zero-padded to five digits.
pub fn part_file_name(index: usize) -> String {
    format!("part-{index:05}")
}

fn ensure_empty_output_dir(dir: &Path) -> Result<(), EngineError> {
    match fs::read_dir(dir) {
        Ok(mut entries) => {
            if entries.next().is_some() {
                return Err(EngineError::OutputDirNotEmpty(dir.to_path_buf()));
            }
            Ok(())
        }
        Err(e) if e.kind() == io::ErrorKind::NotFound => fs::create_dir_all(dir)
            .map_err(io_err(format!("creating output dir {}", dir.display()))),
        Err(e) => Err(io_err(format!("checking output dir {}", dir.display()))(e)),
    }
}

/// Writes one part via a temp file and an atomic rename, so a re-executed
/// task replaces the part instead of appending or interleaving.
fn write_part(dir: &Path, index: usize, records: &[String]) -> Result<PathBuf, EngineError> {
    let final_path = dir.join(part_file_name(index));
    let tmp_path = dir.join(format!(".{}.tmp", part_file_name(index)));
    {
        let file = fs::File::create(&tmp_path)
            .map_err(io_err(format!("creating {}", tmp_path.display())))?;
        let mut writer = BufWriter::with_capacity(64 * 1024, file);
        for record in records {
            writer
                .write_all(record.as_bytes())
                .and_then(|_| writer.write_all(b"\n"))
                .map_err(io_err(format!("writing {}", tmp_path.display())))?;
        }
        writer
            .flush()
            .map_err(io_err(format!("flushing {}", tmp_path.display())))?;
    }
    fs::rename(&tmp_path, &final_path)
        .map_err(io_err(format!("publishing {}", final_path.display())))?;
    Ok(final_path)
}

/// Streaming equivalent of `write_part` over the mapped values of one
/// block, skipping the intermediate pair vector; byte-identical to
/// writing `map_task` values (a test enforces it). With a line limit the
/// part is abandoned unpublished once the limit is reached, which is how
/// a dying worker leaves no trace in the output.
fn stream_map_only_part(
    dir: &Path,
    index: usize,
    block: &Block,
    mapper: MapperKind,
    simplifier: &SimplifierConfig,
    line_limit: Option<usize>,
) -> Result<(), EngineError> {
    let final_path = dir.join(part_file_name(index));
    let tmp_path = dir.join(format!(".{}.tmp", part_file_name(index)));
    let ctx_err = |tmp: &Path| io_err(format!("writing {}", tmp.display()));
    {
        let file = fs::File::create(&tmp_path)
            .map_err(io_err(format!("creating {}", tmp_path.display())))?;
        let mut writer = BufWriter::with_capacity(64 * 1024, file);
        for (line_index, line) in block.content().split_inclusive('\n').enumerate() {
            if line_limit.is_some_and(|limit| line_index >= limit) {
                return Ok(());
            }
            let line = line.strip_suffix('\n').unwrap_or(line);
            match mapper {
                MapperKind::Identity => {
                    writer
                        .write_all(line.as_bytes())
                        .and_then(|_| writer.write_all(b"\n"))
                        .map_err(ctx_err(&tmp_path))?;
                }
                MapperKind::Simplify => {
                    writer
                        .write_all(simplify_line(line, simplifier).as_bytes())
                        .and_then(|_| writer.write_all(b"\n"))
                        .map_err(ctx_err(&tmp_path))?;
                }
                MapperKind::WordcountMap => {
                    for _token in tokenize(line) {
                        writer.write_all(b"1\n").map_err(ctx_err(&tmp_path))?;
                    }
                }
            }
        }
        writer
            .flush()
            .map_err(io_err(format!("flushing {}", tmp_path.display())))?;
    }
    fs::rename(&tmp_path, &final_path)
        .map_err(io_err(format!("publishing {}", final_path.display())))?;
    Ok(())
}

/// Writes all output parts from per-task pair lists. Map-only jobs get
/// one part per task holding the values in input-line order; reduced jobs
/// get a single `part-00000` of `key<TAB>value` records. Refuses an
/// output directory that exists and is not empty.
pub fn write_output(
    output_dir: &Path,
    per_task: &[Vec<KeyValuePair>],
    reduced: bool,
) -> Result<Vec<PathBuf>, EngineError> {
    ensure_empty_output_dir(output_dir)?;
    if reduced {
        let records: Vec<String> = per_task
            .iter()
            .flatten()
            .map(|p| format!("{}\t{}", p.key, p.value))
            .collect();
        return Ok(vec![write_part(output_dir, 0, &records)?]);
    }
    let mut paths = Vec::with_capacity(per_task.len());
    for (index, pairs) in per_task.iter().enumerate() {
        let values: Vec<String> = pairs.iter().map(|p| p.value.clone()).collect();
        paths.push(write_part(output_dir, index, &values)?);
    }
    Ok(paths)
}

/// Scheduler state shared by the workers: the pending queue in block
/// order, per-task bookkeeping, and the liveness of each worker.
struct SchedState {
    pending: VecDeque<usize>,
    tasks: Vec<Task>,
    in_flight: Vec<Vec<usize>>,
    live: Vec<bool>,
    live_count: usize,
    done_count: usize,
    tasks_retried: u64,
    fatal: Option<EngineError>,
    /// When the master's dispatcher frees up; dispatch slots are strictly
    /// serial, so n claims cost at least n * task_overhead of wall time.
    dispatch_free_at: Option<Instant>,
    /// Per-task map output, kept only for reduced jobs.
    map_outputs: Vec<Option<Vec<KeyValuePair>>>,
}

impl SchedState {
    fn new(tasks: Vec<Task>, workers: usize, keep_map_outputs: bool) -> Self {
        let total = tasks.len();
        Self {
            pending: (0..total).collect(),
            tasks,
            in_flight: vec![Vec::new(); workers],
            live: vec![true; workers],
            live_count: workers,
            done_count: 0,
            tasks_retried: 0,
            fatal: None,
            dispatch_free_at: None,
            map_outputs: if keep_map_outputs {
                (0..total).map(|_| None).collect()
            } else {
                Vec::new()
            },
        }
    }

    /// Claims the next pending task and reserves its dispatch slot.
    /// Returns the task index and the instant its dispatch completes; the
    /// worker sleeps that out after releasing the lock, so slots serialize
    /// without the lock turning into a convoy.
    fn claim(&mut self, worker: usize, overhead: Duration) -> Option<(usize, Option<Instant>)> {
        let index = self.pending.pop_front()?;
        let task = &mut self.tasks[index];
        task.status = TaskStatus::Running;
        task.assigned_worker = Some(worker);
        self.in_flight[worker].push(index);
        let dispatched = if overhead.is_zero() {
            None
        } else {
            let now = Instant::now();
            let start = self.dispatch_free_at.map_or(now, |free| free.max(now));
            let end = start + overhead;
            self.dispatch_free_at = Some(end);
            Some(end)
        };
        Some((index, dispatched))
    }

    fn complete(&mut self, worker: usize, index: usize, output: Option<Vec<KeyValuePair>>) {
        let task = &mut self.tasks[index];
        task.status = TaskStatus::Done;
        self.in_flight[worker].retain(|t| *t != index);
        self.done_count += 1;
        if let Some(pairs) = output {
            // Replace, never append: a retried task overwrites the slot.
            self.map_outputs[index] = Some(pairs);
        }
    }

    /// Reschedules every in-flight task of a failed worker: back to
    /// pending with the attempt incremented, nothing lost or duplicated.
    /// Returns the rescheduled task ids.
    fn handle_worker_failure(&mut self, worker: usize) -> Vec<TaskId> {
        if self.live[worker] {
            self.live[worker] = false;
            self.live_count -= 1;
        }
        let orphaned = std::mem::take(&mut self.in_flight[worker]);
        let mut rescheduled = Vec::with_capacity(orphaned.len());
        for index in orphaned {
            let task = &mut self.tasks[index];
            task.status = TaskStatus::Pending;
            task.assigned_worker = None;
            task.attempt += 1;
            self.tasks_retried += 1;
            self.pending.push_back(index);
            rescheduled.push(task.id);
        }
        if self.live_count == 0 && self.done_count < self.tasks.len() {
            self.fatal = Some(EngineError::NoSurvivingWorkers);
        }
        rescheduled
    }

    fn finished(&self) -> bool {
        self.done_count == self.tasks.len()
    }
}

struct JobContext<'a> {
    store: &'a CorpusStore,
    simplifier: &'a SimplifierConfig,
    mapper: MapperKind,
    reduced: bool,
    output_dir: &'a Path,
    task_overhead: Duration,
    failure_plan: Option<FailurePlan>,
    /// Placements per task, aligned with the planned task order.
    placements: Vec<crate::store::ManifestEntry>,
    state: Mutex<SchedState>,
    cv: Condvar,
}

impl JobContext<'_> {
    fn lock(&self) -> MutexGuard<'_, SchedState> {
        self.state.lock().unwrap_or_else(|e| e.into_inner())
    }
}

/// Runs a job to completion: plans tasks, executes them on `workers`
/// local threads, honors the failure plan if any, and writes the output
/// parts plus a `_JOB` summary. The output is deterministic: reruns and
/// failure-injected runs produce byte-identical part files.
pub fn run_job(
    store: &CorpusStore,
    spec: &JobSpec,
    simplifier: &SimplifierConfig,
) -> Result<JobResult, EngineError> {
    if spec.workers < 1 {
        return Err(EngineError::InvalidSpec(
            "workers must be at least 1".into(),
        ));
    }
    if spec.inputs.is_empty() {
        return Err(EngineError::InvalidSpec("at least one input file".into()));
    }
    if let Some(plan) = spec.failure_plan {
        if plan.worker >= spec.workers {
            return Err(EngineError::InvalidSpec(format!(
                "failure plan names worker {} but the pool has {}",
                plan.worker, spec.workers
            )));
        }
    }

    let start = Instant::now();
    let job_id = next_job_id();

    let manifests = spec
        .inputs
        .iter()
        .map(|name| store.manifest(name))
        .collect::<Result<Vec<_>, _>>()?;
    ensure_empty_output_dir(&spec.output_dir)?;

    let tasks = plan_tasks(&manifests);
    let tasks_total = tasks.len();
    let placements: Vec<crate::store::ManifestEntry> = manifests
        .iter()
        .flat_map(|m| m.blocks.iter().cloned())
        .collect();

    let reduced = spec.reducer != ReducerKind::None;
    let ctx = JobContext {
        store,
        simplifier,
        mapper: spec.mapper,
        reduced,
        output_dir: &spec.output_dir,
        task_overhead: spec.task_overhead,
        failure_plan: spec.failure_plan,
        placements,
        state: Mutex::new(SchedState::new(tasks, spec.workers, reduced)),
        cv: Condvar::new(),
    };

    thread::scope(|scope| {
        for worker in 0..spec.workers {
            let ctx = &ctx;
            scope.spawn(move || worker_loop(ctx, worker));
        }
    });

    let state = ctx.state.into_inner().unwrap_or_else(|e| e.into_inner());
    if let Some(err) = state.fatal {
        return Err(err);
    }
    debug_assert!(state.done_count == tasks_total);

    let output_files = if reduced {
        let all: Vec<KeyValuePair> = state
            .map_outputs
            .into_iter()
            .flat_map(|slot| slot.expect("every task completed"))
            .collect();
        let pairs = shuffle_reduce(all, spec.reducer);
        let records: Vec<String> = pairs
            .iter()
            .map(|p| format!("{}\t{}", p.key, p.value))
            .collect();
        vec![write_part(&spec.output_dir, 0, &records)?]
    } else {
        (0..tasks_total)
            .map(|i| spec.output_dir.join(part_file_name(i)))
            .collect()
    };

    let wall_time = start.elapsed().max(Duration::from_nanos(1));
    let summary = format!(
        "tasks_total={}\ntasks_retried={}\nwall_time_ms={}\n",
        tasks_total,
        state.tasks_retried,
        wall_time.as_millis()
    );
    let summary_path = spec.output_dir.join("_JOB");
    fs::write(&summary_path, summary)
        .map_err(io_err(format!("writing {}", summary_path.display())))?;

    Ok(JobResult {
        job_id,
        tasks_total,
        tasks_retried: state.tasks_retried,
        wall_time,
        output_files,
    })
}

fn worker_loop(ctx: &JobContext<'_>, worker: usize) {
    let mut completed = 0usize;
    loop {
        let index = {
            let (index, dispatched) = {
                let mut state = ctx.lock();
                loop {
                    if state.fatal.is_some() || state.finished() {
                        return;
                    }
                    if let Some(claimed) = state.claim(worker, ctx.task_overhead) {
                        break claimed;
                    }
                    state = ctx.cv.wait(state).unwrap_or_else(|e| e.into_inner());
                }
            };
            // Wait out the reserved dispatch slot. Slots are strictly
            // serial at the master, which is what makes a many-small-files
            // job measurably slower than one big file at equal bytes.
            if let Some(ready) = dispatched {
                let now = Instant::now();
                if ready > now {
                    thread::sleep(ready - now);
                }
            }
            index
        };

        let fail = |err: EngineError| {
            let mut state = ctx.lock();
            state.tasks[index].status = TaskStatus::Failed;
            state.fatal = Some(err);
            ctx.cv.notify_all();
        };

        let entry = &ctx.placements[index];
        let content = match ctx.store.read_entry(entry, &HashSet::new()) {
            Ok(content) => content,
            Err(StoreError::BlockUnavailable(id)) => {
                fail(EngineError::BlockUnavailable(id));
                return;
            }
            Err(err) => {
                fail(err.into());
                return;
            }
        };
        let block = Block::from_content(entry.id.clone(), content);

        let dying = ctx
            .failure_plan
            .is_some_and(|plan| plan.worker == worker && completed == plan.after_tasks);
        if dying {
            // The stop signal is honored between lines: process half the
            // block, leave nothing published, and report the failure.
            let half = (block.line_count() / 2) as usize;
            if ctx.reduced {
                let lines: Vec<&str> = block.content().split_inclusive('\n').take(half).collect();
                let partial = Block::from_content(entry.id.clone(), lines.concat());
                let _ = map_task(&partial, ctx.mapper, ctx.simplifier);
            } else {
                let _ = stream_map_only_part(
                    ctx.output_dir,
                    index,
                    &block,
                    ctx.mapper,
                    ctx.simplifier,
                    Some(half),
                );
            }
            let mut state = ctx.lock();
            state.handle_worker_failure(worker);
            ctx.cv.notify_all();
            return;
        }

        let stash = if ctx.reduced {
            Some(map_task(&block, ctx.mapper, ctx.simplifier))
        } else {
            if let Err(err) = stream_map_only_part(
                ctx.output_dir,
                index,
                &block,
                ctx.mapper,
                ctx.simplifier,
                None,
            ) {
                fail(err);
                return;
            }
            None
        };

        let mut state = ctx.lock();
        state.complete(worker, index, stash);
        completed += 1;
        ctx.cv.notify_all();
    }
}

/// Reads a job's canonical output: the part files concatenated in part
/// order. The `_JOB` summary is not part of the canonical output.
pub fn read_canonical_output(output_dir: &Path) -> Result<Vec<u8>, EngineError> {
    let mut parts: Vec<PathBuf> = fs::read_dir(output_dir)
        .map_err(io_err(format!("listing {}", output_dir.display())))?
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| {
            p.file_name()
                .and_then(|n| n.to_str())
                .is_some_and(|n| n.starts_with("part-"))
        })
        .collect();
    parts.sort();
    let mut out = Vec::new();
    for part in parts {
        out.extend(fs::read(&part).map_err(io_err(format!("reading {}", part.display())))?);
    }
    Ok(out)
}
