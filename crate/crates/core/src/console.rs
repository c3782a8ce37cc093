//! Sequential baseline: read input files directly, simplify line by line,
//! write the output. Strictly single-threaded by contract: this is the
//! experimental control, and its output is the reference the parallel
//! engine is compared against byte for byte.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use thiserror::Error;

use crate::simplify::{simplify_line, SimplifierConfig};

/// Reads and writes go through fixed 64 KiB buffers so the baseline's I/O
/// pattern stays the same across runs and machines.
const BUF_SIZE: usize = 64 * 1024;

#[derive(Debug, Error)]
pub enum ConsoleError {
    #[error("cannot read {path}")]
    Input {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("cannot write {path}")]
    Output {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("invalid UTF-8 in {path} at byte offset {offset}")]
    InvalidUtf8 { path: PathBuf, offset: u64 },
}

/// Accounting for one sequential run.
#[derive(Debug, Clone)]
pub struct ConsoleRun {
    pub input_paths: Vec<PathBuf>,
    pub output_path: PathBuf,
    pub lines_processed: u64,
    pub wall_time: Duration,
}

/// Simplifies every line of the given files, in the given order, into one
/// output file: one output line per input line, single pass, no
/// parallelism. Streaming line at a time, never whole files in memory.
pub fn run_sequential(
    input_paths: &[PathBuf],
    config: &SimplifierConfig,
    output_path: &Path,
) -> Result<ConsoleRun, ConsoleError> {
    let start = Instant::now();
    let out_file = File::create(output_path).map_err(|source| ConsoleError::Output {
        path: output_path.to_path_buf(),
        source,
    })?;
    let mut writer = BufWriter::with_capacity(BUF_SIZE, out_file);
    let mut lines_processed = 0u64;

    for path in input_paths {
        let file = File::open(path).map_err(|source| ConsoleError::Input {
            path: path.clone(),
            source,
        })?;
        let mut reader = BufReader::with_capacity(BUF_SIZE, file);
        let mut raw = Vec::with_capacity(256);
        let mut offset = 0u64;
        loop {
            raw.clear();
            let n = reader
                .read_until(b'\n', &mut raw)
                .map_err(|source| ConsoleError::Input {
                    path: path.clone(),
                    source,
                })?;
            if n == 0 {
                break;
            }
            let mut end = raw.len();
            if end > 0 && raw[end - 1] == b'\n' {
                end -= 1;
                // Normalize CRLF the same way the block store does.
                if end > 0 && raw[end - 1] == b'\r' {
                    end -= 1;
                }
            }
            let line = std::str::from_utf8(&raw[..end]).map_err(|e| ConsoleError::InvalidUtf8 {
                path: path.clone(),
                offset: offset + e.valid_up_to() as u64,
            })?;
            let simplified = simplify_line(line, config);
            writer
                .write_all(simplified.as_bytes())
                .and_then(|_| writer.write_all(b"\n"))
                .map_err(|source| ConsoleError::Output {
                    path: output_path.to_path_buf(),
                    source,
                })?;
            lines_processed += 1;
            offset += n as u64;
        }
    }

    writer.flush().map_err(|source| ConsoleError::Output {
        path: output_path.to_path_buf(),
        source,
    })?;
    Ok(ConsoleRun {
        input_paths: input_paths.to_vec(),
        output_path: output_path.to_path_buf(),
        lines_processed,
        wall_time: start.elapsed().max(Duration::from_nanos(1)),
    })
}
