//! Line-aligned block storage with replication over local node directories.
//!
//! A stored file is split into blocks that only ever end on line
//! boundaries; each block is written to `min(replication, node_count)`
//! distinct node directories chosen round-robin by block index, and a
//! per-file manifest records the placement. Reads fall back to the next
//! replica when a node is marked failed or its copy is gone, so losing a
//! node does not lose the file.
//!
//! Layout under the store root:
//!
//! ```text
//! <root>/node-<k>/<file_name>.block-<index>
//! <root>/manifests/<file_name>.manifest
//! ```
//!
//! The manifest is line-oriented text: a header `file total_bytes`
//! followed by one `index byte_len node,node,node` line per block.
//!
//! Writers are exclusive per file (a second put of the same name is
//! refused); block contents are immutable once written, so any number of
//! tasks may read concurrently after a put completes.

use std::borrow::Cow;
use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

pub const DEFAULT_BLOCK_SIZE: u64 = 64 * 1024 * 1024;
pub const DEFAULT_REPLICATION: usize = 3;
pub const DEFAULT_NODE_COUNT: usize = 7;

#[derive(Debug, Error)]
pub enum StoreError {
    #[error("invalid UTF-8 at byte offset {offset}")]
    InvalidUtf8 { offset: u64 },
    #[error("file {0:?} is already stored")]
    AlreadyExists(String),
    #[error("no stored file named {0:?}")]
    UnknownFile(String),
    #[error("no block {0} in the manifest")]
    UnknownBlock(BlockId),
    #[error("block {0} has no reachable replica")]
    BlockUnavailable(BlockId),
    #[error("invalid store config: {0}")]
    InvalidConfig(String),
    #[error("invalid file name {0:?}: must be non-empty, without path separators")]
    InvalidFileName(String),
    #[error("corrupt manifest for {file:?}: {msg}")]
    CorruptManifest { file: String, msg: String },
    #[error("{context}")]
    Io {
        context: String,
        #[source]
        source: io::Error,
    },
}

fn io_err(context: impl Into<String>) -> impl FnOnce(io::Error) -> StoreError {
    let context = context.into();
    move |source| StoreError::Io { context, source }
}

/// Identifies one block of a stored file: the file name plus the block's
/// ordinal within that file.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BlockId {
    file_name: String,
    index: usize,
}

impl BlockId {
    pub fn new(file_name: impl Into<String>, index: usize) -> Self {
        Self {
            file_name: file_name.into(),
            index,
        }
    }

    pub fn file_name(&self) -> &str {
        &self.file_name
    }

    pub fn index(&self) -> usize {
        self.index
    }
}

impl fmt::Display for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.block-{}", self.file_name, self.index)
    }
}

impl fmt::Debug for BlockId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "BlockId({self})")
    }
}

/// A logical storage node, realized as one directory under the store root.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct NodeId(usize);

impl NodeId {
    pub fn new(ordinal: usize) -> Self {
        Self(ordinal)
    }

    pub fn ordinal(&self) -> usize {
        self.0
    }

    pub fn dir_name(&self) -> String {
        format!("node-{}", self.0)
    }
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Store-wide knobs: block size in bytes, replica count, node count.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StoreConfig {
    block_size: u64,
    replication: usize,
    node_count: usize,
}

impl Default for StoreConfig {
    fn default() -> Self {
        Self {
            block_size: DEFAULT_BLOCK_SIZE,
            replication: DEFAULT_REPLICATION,
            node_count: DEFAULT_NODE_COUNT,
        }
    }
}

impl StoreConfig {
    pub fn new(block_size: u64, replication: usize, node_count: usize) -> Result<Self, StoreError> {
        if block_size < 1 {
            return Err(StoreError::InvalidConfig(
                "block size must be at least 1 byte".into(),
            ));
        }
        if replication < 1 {
            return Err(StoreError::InvalidConfig(
                "replication must be at least 1".into(),
            ));
        }
        if node_count < 1 {
            return Err(StoreError::InvalidConfig(
                "node count must be at least 1".into(),
            ));
        }
        Ok(Self {
            block_size,
            replication,
            node_count,
        })
    }

    /// Parses `key=value` properties, honoring the classic key names
    /// `dfs.block.size` and `dfs.replication` plus `store.nodes`.
    /// Unknown keys are ignored; `#` begins a comment.
    pub fn from_properties(text: &str) -> Result<Self, StoreError> {
        let defaults = Self::default();
        let mut block_size = defaults.block_size;
        let mut replication = defaults.replication;
        let mut node_count = defaults.node_count;
        for (no, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(StoreError::InvalidConfig(format!(
                    "line {}: expected key=value",
                    no + 1
                )));
            };
            let (key, value) = (key.trim(), value.trim());
            let parse = |what: &str| {
                value.parse::<u64>().map_err(|_| {
                    StoreError::InvalidConfig(format!("line {}: {what} must be an integer", no + 1))
                })
            };
            match key {
                "dfs.block.size" => block_size = parse("dfs.block.size")?,
                "dfs.replication" => replication = parse("dfs.replication")? as usize,
                "store.nodes" => node_count = parse("store.nodes")? as usize,
                _ => {}
            }
        }
        Self::new(block_size, replication, node_count)
    }

    pub fn block_size(&self) -> u64 {
        self.block_size
    }

    pub fn replication(&self) -> usize {
        self.replication
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    /// Replicas actually placed per block.
    pub fn effective_replication(&self) -> usize {
        self.replication.min(self.node_count)
    }
}

/// One line-aligned chunk of a stored file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Block {
    id: BlockId,
    byte_len: u64,
    line_count: u64,
    content: String,
}

impl Block {
    pub fn from_content(id: BlockId, content: String) -> Self {
        let byte_len = content.len() as u64;
        let line_count = content.split_inclusive('\n').count() as u64;
        Self {
            id,
            byte_len,
            line_count,
            content,
        }
    }

    pub fn id(&self) -> &BlockId {
        &self.id
    }

    pub fn file_name(&self) -> &str {
        self.id.file_name()
    }

    pub fn index(&self) -> usize {
        self.id.index()
    }

    pub fn byte_len(&self) -> u64 {
        self.byte_len
    }

    pub fn line_count(&self) -> u64 {
        self.line_count
    }

    pub fn content(&self) -> &str {
        &self.content
    }

    pub fn into_content(self) -> String {
        self.content
    }
}

/// Placement record for one block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ManifestEntry {
    pub id: BlockId,
    pub byte_len: u64,
    pub placements: Vec<NodeId>,
}

/// Per-file metadata: block order, sizes and placements. Reconstructing
/// the file is reading the blocks in manifest order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockManifest {
    pub file_name: String,
    pub total_bytes: u64,
    pub blocks: Vec<ManifestEntry>,
}

impl BlockManifest {
    pub fn block_count(&self) -> usize {
        self.blocks.len()
    }

    /// Serializes to the line-oriented manifest format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.file_name, self.total_bytes);
        for entry in &self.blocks {
            let nodes: Vec<String> = entry.placements.iter().map(|n| n.to_string()).collect();
            out.push_str(&format!(
                "{} {} {}\n",
                entry.id.index(),
                entry.byte_len,
                nodes.join(",")
            ));
        }
        out
    }

    /// Parses and validates the manifest format.
    pub fn parse(text: &str) -> Result<Self, StoreError> {
        let corrupt = |file: &str, msg: &str| StoreError::CorruptManifest {
            file: file.to_string(),
            msg: msg.to_string(),
        };
        let mut lines = text.lines();
        let header = lines.next().ok_or_else(|| corrupt("", "empty manifest"))?;
        let (file_name, total) = header
            .rsplit_once(' ')
            .ok_or_else(|| corrupt("", "header must be `file total_bytes`"))?;
        let total_bytes: u64 = total
            .parse()
            .map_err(|_| corrupt(file_name, "total_bytes must be an integer"))?;
        let mut blocks = Vec::new();
        for line in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            let [index, byte_len, nodes] = fields.as_slice() else {
                return Err(corrupt(
                    file_name,
                    "block line must be `index byte_len nodes`",
                ));
            };
            let index: usize = index
                .parse()
                .map_err(|_| corrupt(file_name, "block index must be an integer"))?;
            let byte_len: u64 = byte_len
                .parse()
                .map_err(|_| corrupt(file_name, "byte_len must be an integer"))?;
            let placements = nodes
                .split(',')
                .map(|n| n.parse::<usize>().map(NodeId::new))
                .collect::<Result<Vec<_>, _>>()
                .map_err(|_| corrupt(file_name, "node list must be integers"))?;
            blocks.push(ManifestEntry {
                id: BlockId::new(file_name, index),
                byte_len,
                placements,
            });
        }
        let manifest = Self {
            file_name: file_name.to_string(),
            total_bytes,
            blocks,
        };
        manifest.validate()?;
        Ok(manifest)
    }

    fn validate(&self) -> Result<(), StoreError> {
        let corrupt = |msg: String| StoreError::CorruptManifest {
            file: self.file_name.clone(),
            msg,
        };
        let sum: u64 = self.blocks.iter().map(|b| b.byte_len).sum();
        if sum != self.total_bytes {
            return Err(corrupt(format!(
                "block sizes sum to {sum}, header says {}",
                self.total_bytes
            )));
        }
        for (i, entry) in self.blocks.iter().enumerate() {
            if entry.id.index() != i {
                return Err(corrupt(format!(
                    "block {} out of order at position {i}",
                    entry.id.index()
                )));
            }
            let distinct: HashSet<NodeId> = entry.placements.iter().copied().collect();
            if distinct.len() != entry.placements.len() || entry.placements.is_empty() {
                return Err(corrupt(format!(
                    "block {i} placements must be non-empty and distinct"
                )));
            }
        }
        Ok(())
    }
}

/// Round-robin placement: block `i` goes to nodes `i, i+1, ...` modulo the
/// node count, `min(replication, node_count)` replicas in total.
/// Deterministic in `(block_id, config)`.
pub fn place_replicas(block: &BlockId, config: &StoreConfig) -> Vec<NodeId> {
    let replicas = config.effective_replication();
    (0..replicas)
        .map(|r| NodeId::new((block.index() + r) % config.node_count()))
        .collect()
}

/// Splits text into line-aligned blocks of at most `block_size` bytes.
///
/// Packing is greedy: each block takes the longest prefix of the
/// remaining lines that fits. A single line longer than `block_size`
/// becomes its own oversized block rather than being cut mid-line, so
/// concatenating the blocks always reproduces the input exactly.
pub fn split_file(
    file_name: &str,
    bytes: &[u8],
    block_size: u64,
) -> Result<Vec<Block>, StoreError> {
    if block_size < 1 {
        return Err(StoreError::InvalidConfig(
            "block size must be at least 1 byte".into(),
        ));
    }
    let text = std::str::from_utf8(bytes).map_err(|e| StoreError::InvalidUtf8 {
        offset: e.valid_up_to() as u64,
    })?;
    Ok(split_text(file_name, text, block_size))
}

fn split_text(file_name: &str, text: &str, block_size: u64) -> Vec<Block> {
    let mut blocks = Vec::new();
    let mut start = 0usize;
    let mut len = 0usize;
    let mut lines = 0u64;
    for line in text.split_inclusive('\n') {
        if len > 0 && (len + line.len()) as u64 > block_size {
            blocks.push(make_block(
                file_name,
                blocks.len(),
                &text[start..start + len],
                lines,
            ));
            start += len;
            len = 0;
            lines = 0;
        }
        len += line.len();
        lines += 1;
    }
    if len > 0 {
        blocks.push(make_block(
            file_name,
            blocks.len(),
            &text[start..start + len],
            lines,
        ));
    }
    blocks
}

fn make_block(file_name: &str, index: usize, content: &str, line_count: u64) -> Block {
    Block {
        id: BlockId::new(file_name, index),
        byte_len: content.len() as u64,
        line_count,
        content: content.to_string(),
    }
}

/// Normalizes `\r\n` to `\n`. A lone `\r` is ordinary whitespace, not a
/// line break, and is left in place.
fn normalize_newlines(text: &str) -> Cow<'_, str> {
    if text.contains("\r\n") {
        Cow::Owned(text.replace("\r\n", "\n"))
    } else {
        Cow::Borrowed(text)
    }
}

/// A block store rooted at a directory, with one subdirectory per node.
pub struct CorpusStore {
    root: PathBuf,
    config: StoreConfig,
}

impl CorpusStore {
    /// Opens (creating if needed) a store rooted at `root`.
    pub fn open(root: impl Into<PathBuf>, config: StoreConfig) -> Result<Self, StoreError> {
        let root = root.into();
        fs::create_dir_all(root.join("manifests"))
            .map_err(io_err(format!("creating store root {}", root.display())))?;
        for k in 0..config.node_count() {
            let dir = root.join(NodeId::new(k).dir_name());
            fs::create_dir_all(&dir)
                .map_err(io_err(format!("creating node dir {}", dir.display())))?;
        }
        Ok(Self { root, config })
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    pub fn config(&self) -> &StoreConfig {
        &self.config
    }

    fn manifest_path(&self, file_name: &str) -> PathBuf {
        self.root
            .join("manifests")
            .join(format!("{file_name}.manifest"))
    }

    fn block_path(&self, node: NodeId, id: &BlockId) -> PathBuf {
        self.root.join(node.dir_name()).join(id.to_string())
    }

    /// Splits, places and writes a file, then records its manifest.
    /// Line endings are normalized to `\n` on the way in. Refuses a file
    /// name that is already stored.
    pub fn put_file(&self, file_name: &str, bytes: &[u8]) -> Result<BlockManifest, StoreError> {
        if file_name.is_empty() || file_name.contains(['/', '\\']) {
            return Err(StoreError::InvalidFileName(file_name.to_string()));
        }
        let manifest_path = self.manifest_path(file_name);
        if manifest_path.exists() {
            return Err(StoreError::AlreadyExists(file_name.to_string()));
        }
        let text = std::str::from_utf8(bytes).map_err(|e| StoreError::InvalidUtf8 {
            offset: e.valid_up_to() as u64,
        })?;
        let text = normalize_newlines(text);
        let blocks = split_text(file_name, &text, self.config.block_size());

        let mut entries = Vec::with_capacity(blocks.len());
        for block in &blocks {
            let placements = place_replicas(block.id(), &self.config);
            for node in &placements {
                let path = self.block_path(*node, block.id());
                fs::write(&path, block.content())
                    .map_err(io_err(format!("writing block {}", path.display())))?;
            }
            entries.push(ManifestEntry {
                id: block.id().clone(),
                byte_len: block.byte_len(),
                placements,
            });
        }

        let manifest = BlockManifest {
            file_name: file_name.to_string(),
            total_bytes: text.len() as u64,
            blocks: entries,
        };
        let tmp = manifest_path.with_extension("manifest.tmp");
        fs::write(&tmp, manifest.to_text())
            .map_err(io_err(format!("writing manifest {}", tmp.display())))?;
        fs::rename(&tmp, &manifest_path).map_err(io_err(format!(
            "publishing manifest {}",
            manifest_path.display()
        )))?;
        Ok(manifest)
    }

    /// Reads a file from disk and stores it under `name` (default: the
    /// path's file name).
    pub fn put_path(&self, path: &Path, name: Option<&str>) -> Result<BlockManifest, StoreError> {
        let bytes = fs::read(path).map_err(io_err(format!("reading input {}", path.display())))?;
        let derived;
        let name = match name {
            Some(n) => n,
            None => {
                derived = path
                    .file_name()
                    .map(|n| n.to_string_lossy().into_owned())
                    .unwrap_or_default();
                &derived
            }
        };
        self.put_file(name, &bytes)
    }

    /// Loads the manifest for a stored file.
    pub fn manifest(&self, file_name: &str) -> Result<BlockManifest, StoreError> {
        let path = self.manifest_path(file_name);
        let text = match fs::read_to_string(&path) {
            Ok(text) => text,
            Err(e) if e.kind() == io::ErrorKind::NotFound => {
                return Err(StoreError::UnknownFile(file_name.to_string()))
            }
            Err(e) => return Err(io_err(format!("reading manifest {}", path.display()))(e)),
        };
        BlockManifest::parse(&text)
    }

    /// Stored file names, sorted.
    pub fn list_files(&self) -> Result<Vec<String>, StoreError> {
        let dir = self.root.join("manifests");
        let mut names = Vec::new();
        let entries = fs::read_dir(&dir).map_err(io_err(format!("listing {}", dir.display())))?;
        for entry in entries {
            let entry = entry.map_err(io_err(format!("listing {}", dir.display())))?;
            let name = entry.file_name().to_string_lossy().into_owned();
            if let Some(stripped) = name.strip_suffix(".manifest") {
                names.push(stripped.to_string());
            }
        }
        names.sort();
        Ok(names)
    }

    /// Returns the block's content from the first replica that is neither
    /// in `failed_nodes` nor physically missing. The content is identical
    /// whichever replica serves it.
    pub fn get_block(
        &self,
        id: &BlockId,
        failed_nodes: &HashSet<NodeId>,
    ) -> Result<String, StoreError> {
        let manifest = self.manifest(id.file_name())?;
        let entry = manifest
            .blocks
            .get(id.index())
            .ok_or_else(|| StoreError::UnknownBlock(id.clone()))?;
        self.read_entry(entry, failed_nodes)
    }

    /// Like [`CorpusStore::get_block`] but with the manifest entry already
    /// in hand, so bulk readers do not reload the manifest per block.
    pub fn read_entry(
        &self,
        entry: &ManifestEntry,
        failed_nodes: &HashSet<NodeId>,
    ) -> Result<String, StoreError> {
        for node in &entry.placements {
            if failed_nodes.contains(node) {
                continue;
            }
            match fs::read(self.block_path(*node, &entry.id)) {
                Ok(bytes) => {
                    return String::from_utf8(bytes).map_err(|e| StoreError::InvalidUtf8 {
                        offset: e.utf8_error().valid_up_to() as u64,
                    })
                }
                // A missing or unreadable replica is a failed node: fall
                // through to the next one.
                Err(_) => continue,
            }
        }
        Err(StoreError::BlockUnavailable(entry.id.clone()))
    }

    /// Reconstructs a whole file by concatenating its blocks in order.
    pub fn read_file(&self, file_name: &str) -> Result<String, StoreError> {
        let manifest = self.manifest(file_name)?;
        let mut out = String::with_capacity(manifest.total_bytes as usize);
        let no_failures = HashSet::new();
        for entry in &manifest.blocks {
            out.push_str(&self.read_entry(entry, &no_failures)?);
        }
        Ok(out)
    }
}
