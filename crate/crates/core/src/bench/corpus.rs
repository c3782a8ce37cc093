//! Deterministic synthetic Turkish corpora for the benchmark experiments.

use std::fs;
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use super::BenchError;

/// Shipped word list sampled by the generator; includes every surface form
/// of the sample sentence so the simplifier path is exercised end to end.
pub const DEFAULT_WORDLIST: &str = include_str!("../../data/wordlist_tr.txt");

/// Parses the shipped word list (one word per line, `#` comments).
pub fn default_wordlist() -> Vec<String> {
    DEFAULT_WORDLIST
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(str::to_string)
        .collect()
}

/// SplitMix64: tiny, seedable, identical on every platform. Used instead
/// of an external RNG so corpora and tests are reproducible bit for bit.
#[derive(Debug, Clone)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> Self {
        Self { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9e37_79b9_7f4a_7c15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
        z ^ (z >> 31)
    }

    /// Uniform-ish draw in `0..n` (modulo bias is irrelevant here).
    pub fn next_range(&mut self, n: usize) -> usize {
        if n == 0 {
            0
        } else {
            (self.next_u64() % n as u64) as usize
        }
    }
}

/// Describes a corpus to synthesize: total size, how many files to spread
/// it over, the seed, and the vocabulary to sample.
#[derive(Debug, Clone)]
pub struct CorpusSpec {
    pub total_bytes: u64,
    pub file_count: usize,
    pub seed: u64,
    pub lexicon_sample: Vec<String>,
}

impl CorpusSpec {
    /// A spec over the shipped word list.
    pub fn new(total_bytes: u64, file_count: usize, seed: u64) -> Self {
        Self {
            total_bytes,
            file_count,
            seed,
            lexicon_sample: default_wordlist(),
        }
    }
}

/// Writes `file_count` files of near-equal size under `dest`, totaling
/// `total_bytes` to within one line. Lines are space-joined samples from
/// the word list; output is a pure function of the [`CorpusSpec`].
pub fn generate_corpus(spec: &CorpusSpec, dest: &Path) -> Result<Vec<PathBuf>, BenchError> {
    if spec.file_count == 0 {
        return Err(BenchError::InvalidInput(
            "file_count must be at least 1".into(),
        ));
    }
    if spec.total_bytes < spec.file_count as u64 {
        return Err(BenchError::InvalidInput(
            "total_bytes must be at least file_count".into(),
        ));
    }
    if spec.lexicon_sample.is_empty() {
        return Err(BenchError::InvalidInput("lexicon_sample is empty".into()));
    }
    fs::create_dir_all(dest).map_err(|source| BenchError::Io {
        context: format!("creating corpus dir {}", dest.display()),
        source,
    })?;

    let mut rng = SplitMix64::new(spec.seed);
    let mut paths = Vec::with_capacity(spec.file_count);
    let mut written_total: u64 = 0;
    let mut line = String::with_capacity(128);
    for i in 0..spec.file_count {
        // Prefix targets compensate rounding so every file stays within a
        // line of its share and the grand total within a line overall.
        let target = spec.total_bytes * (i as u64 + 1) / spec.file_count as u64;
        let path = dest.join(format!("piece-{i:04}.txt"));
        let file = fs::File::create(&path).map_err(|source| BenchError::Io {
            context: format!("creating corpus file {}", path.display()),
            source,
        })?;
        let mut writer = BufWriter::with_capacity(64 * 1024, file);
        while written_total < target {
            line.clear();
            let words = 6 + rng.next_range(7);
            for w in 0..words {
                if w > 0 {
                    line.push(' ');
                }
                line.push_str(&spec.lexicon_sample[rng.next_range(spec.lexicon_sample.len())]);
            }
            line.push('\n');
            writer
                .write_all(line.as_bytes())
                .map_err(|source| BenchError::Io {
                    context: format!("writing corpus file {}", path.display()),
                    source,
                })?;
            written_total += line.len() as u64;
        }
        writer.flush().map_err(|source| BenchError::Io {
            context: format!("flushing corpus file {}", path.display()),
            source,
        })?;
        paths.push(path);
    }
    Ok(paths)
}
