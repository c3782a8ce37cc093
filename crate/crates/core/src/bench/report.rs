//! CSV serialization and the human-readable report.
//!
//! CSV columns: `experiment,size_bytes,mode,workers,file_count,
//! trimmed_mean_ms,samples`. Durations are milliseconds with six decimal
//! places (exact nanoseconds), samples are `;`-joined, so no field ever
//! needs quoting and parsing reconstructs every record bit for bit.

use std::time::Duration;

use super::{BenchError, ExperimentKind, ExperimentRecord, RunMode, RunningTime};

pub const CSV_HEADER: &str =
    "experiment,size_bytes,mode,workers,file_count,trimmed_mean_ms,samples";

/// Exact decimal milliseconds: nanosecond-precise and reversible.
fn duration_to_ms(d: Duration) -> String {
    let nanos = d.as_nanos();
    format!("{}.{:06}", nanos / 1_000_000, nanos % 1_000_000)
}

fn duration_from_ms(text: &str, line: usize) -> Result<Duration, BenchError> {
    let bad = |msg: &str| BenchError::Csv {
        line,
        msg: msg.to_string(),
    };
    let (int_part, frac_part) = text
        .split_once('.')
        .ok_or_else(|| bad("expected ms.frac"))?;
    if frac_part.len() != 6 {
        return Err(bad("fractional part must have 6 digits"));
    }
    let ms: u128 = int_part.parse().map_err(|_| bad("bad integer part"))?;
    let frac: u128 = frac_part.parse().map_err(|_| bad("bad fractional part"))?;
    Ok(Duration::from_nanos((ms * 1_000_000 + frac) as u64))
}

pub fn records_to_csv(records: &[ExperimentRecord]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for record in records {
        let samples: Vec<String> = record
            .running_time
            .samples()
            .iter()
            .map(|d| duration_to_ms(*d))
            .collect();
        out.push_str(&format!(
            "{},{},{},{},{},{},{}\n",
            record.experiment,
            record.size_bytes,
            record.mode,
            record.workers,
            record.file_count,
            duration_to_ms(record.running_time.trimmed_mean()),
            samples.join(";")
        ));
    }
    out
}

pub fn records_from_csv(text: &str) -> Result<Vec<ExperimentRecord>, BenchError> {
    let mut lines = text.lines().enumerate();
    let bad = |line: usize, msg: &str| BenchError::Csv {
        line,
        msg: msg.to_string(),
    };
    let (_, header) = lines.next().ok_or_else(|| bad(1, "empty csv"))?;
    if header.trim() != CSV_HEADER {
        return Err(bad(1, "unexpected header"));
    }
    let mut records = Vec::new();
    for (no, raw) in lines {
        let line = no + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = raw.split(',').collect();
        let [experiment, size_bytes, mode, workers, file_count, trimmed, samples] =
            fields.as_slice()
        else {
            return Err(bad(line, "expected 7 fields"));
        };
        let experiment: ExperimentKind = experiment.parse().map_err(|e: String| bad(line, &e))?;
        let size_bytes: u64 = size_bytes
            .parse()
            .map_err(|_| bad(line, "size_bytes must be an integer"))?;
        let mode: RunMode = mode.parse().map_err(|e: String| bad(line, &e))?;
        let workers: usize = workers
            .parse()
            .map_err(|_| bad(line, "workers must be an integer"))?;
        let file_count: usize = file_count
            .parse()
            .map_err(|_| bad(line, "file_count must be an integer"))?;
        let samples = samples
            .split(';')
            .map(|s| duration_from_ms(s, line))
            .collect::<Result<Vec<_>, _>>()?;
        let running_time = RunningTime::from_samples(samples)?;
        if running_time.trimmed_mean() != duration_from_ms(trimmed, line)? {
            return Err(bad(line, "trimmed_mean_ms does not match the samples"));
        }
        records.push(ExperimentRecord::new(
            experiment,
            size_bytes,
            mode,
            workers,
            file_count,
            running_time,
        )?);
    }
    Ok(records)
}

fn human_size(bytes: u64) -> String {
    const MIB: u64 = 1024 * 1024;
    const KIB: u64 = 1024;
    if bytes >= MIB && bytes.is_multiple_of(MIB) {
        format!("{} MiB", bytes / MIB)
    } else if bytes >= KIB && bytes.is_multiple_of(KIB) {
        format!("{} KiB", bytes / KIB)
    } else {
        format!("{bytes} B")
    }
}

fn ms(d: Duration) -> f64 {
    d.as_secs_f64() * 1e3
}

/// Side-by-side tables for the two experiments, with a computed speedup
/// column, plus the full-size reference measurements for context.
pub fn render_report(records: &[ExperimentRecord]) -> String {
    let mut out = String::new();
    out.push_str("benchmark report (all times are trimmed means in ms)\n");

    let scaling: Vec<&ExperimentRecord> = records
        .iter()
        .filter(|r| r.experiment == ExperimentKind::Scaling)
        .collect();
    if !scaling.is_empty() {
        out.push_str("\n== scaling: console vs parallel ==\n");
        out.push_str(&format!(
            "{:>12} {:>14} {:>16} {:>9}\n",
            "size", "console_ms", "parallel_ms", "speedup"
        ));
        let mut sizes: Vec<u64> = scaling.iter().map(|r| r.size_bytes).collect();
        sizes.sort_unstable();
        sizes.dedup();
        for size in sizes {
            let console = scaling
                .iter()
                .find(|r| r.size_bytes == size && r.mode == RunMode::Console);
            let parallel = scaling
                .iter()
                .find(|r| r.size_bytes == size && r.mode == RunMode::Parallel);
            let console_ms = console.map(|r| ms(r.running_time.trimmed_mean()));
            let parallel_ms = parallel.map(|r| ms(r.running_time.trimmed_mean()));
            let speedup = match (console_ms, parallel_ms) {
                (Some(c), Some(p)) if p > 0.0 => format!("{:.2}x", c / p),
                _ => "-".to_string(),
            };
            let workers = parallel.map(|r| r.workers).unwrap_or(0);
            out.push_str(&format!(
                "{:>12} {:>14} {:>16} {:>9}\n",
                human_size(size),
                console_ms.map_or("-".into(), |v| format!("{v:.1}")),
                parallel_ms.map_or("-".into(), |v| format!("{v:.1} (w={workers})")),
                speedup
            ));
        }
        out.push_str(
            "reference cluster measurements (7 worker nodes, full-size inputs): \
             16 GB took 383.9 min on one machine vs 33.3 min on the cluster (~11.5x).\n",
        );
    }

    let split: Vec<&ExperimentRecord> = records
        .iter()
        .filter(|r| r.experiment == ExperimentKind::Split)
        .collect();
    if !split.is_empty() {
        out.push_str("\n== split: single file vs many small files, equal bytes ==\n");
        out.push_str(&format!(
            "{:>12} {:>8} {:>9} {:>14} {:>12}\n",
            "size", "files", "workers", "trimmed_ms", "vs 1 file"
        ));
        let one_file = split
            .iter()
            .find(|r| r.file_count == 1)
            .map(|r| ms(r.running_time.trimmed_mean()));
        let mut rows = split.clone();
        rows.sort_by_key(|r| r.file_count);
        for record in rows {
            let t = ms(record.running_time.trimmed_mean());
            let ratio = match one_file {
                Some(base) if base > 0.0 => format!("{:.2}x", t / base),
                _ => "-".to_string(),
            };
            out.push_str(&format!(
                "{:>12} {:>8} {:>9} {:>14.1} {:>12}\n",
                human_size(record.size_bytes),
                record.file_count,
                record.workers,
                t,
                ratio
            ));
        }
        out.push_str(
            "reference cluster measurements: 16 GB single file 33.3 vs multi file 36.045; \
             at 0.1-1 GB the reference data shows multi file faster (1.33 vs 1.10, \
             3.35 vs 1.29), an anomaly in the source measurements left as observed.\n",
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bench::SplitMix64;

    fn record(
        experiment: ExperimentKind,
        size: u64,
        mode: RunMode,
        workers: usize,
        file_count: usize,
        sample_ms: &[u64],
    ) -> ExperimentRecord {
        let samples = sample_ms
            .iter()
            .map(|&m| Duration::from_millis(m))
            .collect();
        ExperimentRecord::new(
            experiment,
            size,
            mode,
            workers,
            file_count,
            RunningTime::from_samples(samples).unwrap(),
        )
        .unwrap()
    }

    #[test]
    fn one_record_is_header_plus_one_row() {
        let csv = records_to_csv(&[record(
            ExperimentKind::Scaling,
            1024,
            RunMode::Console,
            1,
            1,
            &[10, 11, 12],
        )]);
        let lines: Vec<&str> = csv.lines().collect();
        assert_eq!(lines.len(), 2);
        assert_eq!(lines[0], CSV_HEADER);
        assert_eq!(
            lines[1],
            "scaling,1024,console,1,1,11.000000,10.000000;11.000000;12.000000"
        );
    }

    #[test]
    fn csv_round_trips_every_field_exactly() {
        let mut rng = SplitMix64::new(0xc52);
        let mut records = Vec::new();
        for i in 0..40 {
            let samples: Vec<Duration> = (0..3 + rng.next_range(8))
                .map(|_| Duration::from_nanos(1 + rng.next_u64() % 10_000_000_000))
                .collect();
            let mode = if i % 2 == 0 {
                RunMode::Console
            } else {
                RunMode::Parallel
            };
            records.push(
                ExperimentRecord::new(
                    if i % 3 == 0 {
                        ExperimentKind::Split
                    } else {
                        ExperimentKind::Scaling
                    },
                    rng.next_u64() % 1_000_000_000,
                    mode,
                    if mode == RunMode::Console {
                        1
                    } else {
                        1 + rng.next_range(16)
                    },
                    1 + rng.next_range(1024),
                    RunningTime::from_samples(samples).unwrap(),
                )
                .unwrap(),
            );
        }
        let parsed = records_from_csv(&records_to_csv(&records)).unwrap();
        assert_eq!(parsed, records);
    }

    #[test]
    fn csv_rejects_tampered_trimmed_mean() {
        let csv = records_to_csv(&[record(
            ExperimentKind::Scaling,
            1024,
            RunMode::Console,
            1,
            1,
            &[10, 11, 12],
        )]);
        let tampered = csv.replace("11.000000,10.000000", "99.000000,10.000000");
        assert!(matches!(
            records_from_csv(&tampered),
            Err(BenchError::Csv { .. })
        ));
    }

    #[test]
    fn csv_rejects_bad_header_and_shape() {
        assert!(records_from_csv("nope\n").is_err());
        let missing_fields = format!("{CSV_HEADER}\nscaling,1,console\n");
        assert!(records_from_csv(&missing_fields).is_err());
    }

    #[test]
    fn report_has_rows_and_speedup_per_size() {
        let mut records = Vec::new();
        for (i, size) in [1u64, 4, 16].iter().enumerate() {
            let size = size * 1024 * 1024;
            let base = 10 * (i as u64 + 1);
            records.push(record(
                ExperimentKind::Scaling,
                size,
                RunMode::Console,
                1,
                1,
                &[base * 4, base * 4, base * 4],
            ));
            records.push(record(
                ExperimentKind::Scaling,
                size,
                RunMode::Parallel,
                4,
                1,
                &[base, base, base],
            ));
        }
        let report = render_report(&records);
        assert_eq!(
            report.matches("4.00x").count(),
            3,
            "each size row recomputes console/parallel: {report}"
        );
        assert!(report.contains("1 MiB"));
        assert!(report.contains("16 MiB"));
    }

    #[test]
    fn report_speedup_matches_recompute_from_csv() {
        let records = vec![
            record(
                ExperimentKind::Scaling,
                1024,
                RunMode::Console,
                1,
                1,
                &[30, 30, 30],
            ),
            record(
                ExperimentKind::Scaling,
                1024,
                RunMode::Parallel,
                4,
                1,
                &[12, 12, 12],
            ),
        ];
        let parsed = records_from_csv(&records_to_csv(&records)).unwrap();
        let console = parsed
            .iter()
            .find(|r| r.mode == RunMode::Console)
            .unwrap()
            .running_time
            .trimmed_mean()
            .as_secs_f64();
        let parallel = parsed
            .iter()
            .find(|r| r.mode == RunMode::Parallel)
            .unwrap()
            .running_time
            .trimmed_mean()
            .as_secs_f64();
        let speedup = console / parallel;
        let report = render_report(&parsed);
        assert!(
            report.contains(&format!("{speedup:.2}x")),
            "report must carry {speedup:.2}x: {report}"
        );
    }

    #[test]
    fn split_report_lists_file_counts_sorted() {
        let records = vec![
            record(
                ExperimentKind::Split,
                1 << 20,
                RunMode::Parallel,
                4,
                64,
                &[20, 20, 20],
            ),
            record(
                ExperimentKind::Split,
                1 << 20,
                RunMode::Parallel,
                4,
                1,
                &[10, 10, 10],
            ),
        ];
        let report = render_report(&records);
        let one = report.find(" 1 ").unwrap_or(usize::MAX);
        let sixty_four = report.find("64").unwrap_or(0);
        assert!(one < sixty_four, "rows sorted by file count: {report}");
        assert!(report.contains("2.00x"));
    }
}
