//! Crash-safe scan progress: one JSON object per line, one line per
//! completed chunk, a final aggregate line when the scan finishes. Lines
//! are fsynced as written, so a checkpoint file is always a clean prefix
//! of the full scan.

use super::ScanAggregate;
use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::{Path, PathBuf};

/// Everything one completed chunk contributes to the final aggregate.
/// `mode` and `alpha` are recorded so a resume with different parameters
/// is refused instead of silently merging incompatible numbers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ChunkSummary {
    pub chunk_index: u64,
    pub lo: u64,
    pub hi: u64,
    pub sum_f: u64,
    pub exceed_count: u64,
    #[serde(default)]
    pub exceed_square_count: u64,
    pub violations: Vec<u64>,
    #[serde(default)]
    pub exceeding: Vec<u64>,
    #[serde(default)]
    pub mode: String,
    #[serde(default)]
    pub alpha: f64,
}

/// One line of a checkpoint file. Untagged: chunk lines carry
/// `chunk_index`, the aggregate line carries `chunks`, and no line has
/// both.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CheckpointLine {
    Chunk(ChunkSummary),
    Aggregate(ScanAggregate),
}

/// Append-only writer that fsyncs every line.
pub struct CheckpointWriter {
    path: PathBuf,
    file: File,
}

impl CheckpointWriter {
    /// Opens for a fresh scan, truncating anything already there.
    pub fn create(path: &Path) -> Result<Self> {
        let file = File::create(path)?;
        Ok(CheckpointWriter { path: path.to_path_buf(), file })
    }

    /// Opens for resumption, appending after the validated prefix.
    pub fn append(path: &Path) -> Result<Self> {
        let file = OpenOptions::new().create(true).append(true).open(path)?;
        Ok(CheckpointWriter { path: path.to_path_buf(), file })
    }

    pub fn write_line(&mut self, line: &CheckpointLine) -> Result<()> {
        let mut buf = serde_json::to_string(line)?;
        buf.push('\n');
        self.file.write_all(buf.as_bytes())?;
        self.file.sync_data()?;
        Ok(())
    }

    pub fn path(&self) -> &Path {
        &self.path
    }
}

/// The validated content of an existing checkpoint file: the completed
/// chunk prefix in order, plus the final aggregate if the scan finished.
#[derive(Debug, Default)]
pub struct ResumeState {
    pub completed: Vec<ChunkSummary>,
    pub finished: Option<ScanAggregate>,
}

/// Parses a checkpoint file, refusing on the first malformed or
/// out-of-place line (chunk lines must come first, in index order 0, 1, …,
/// with the aggregate line last if present).
pub fn read_checkpoint(path: &Path) -> Result<ResumeState> {
    let refuse = |line: usize, reason: String| Error::Checkpoint {
        path: path.to_path_buf(),
        line,
        reason,
    };
    let reader = BufReader::new(File::open(path)?);
    let mut state = ResumeState::default();
    for (idx, raw) in reader.lines().enumerate() {
        let line_no = idx + 1;
        let raw = raw?;
        if raw.trim().is_empty() {
            return Err(refuse(line_no, "blank line inside checkpoint".into()));
        }
        let parsed: CheckpointLine = serde_json::from_str(&raw)
            .map_err(|e| refuse(line_no, format!("not a checkpoint object: {e}")))?;
        if state.finished.is_some() {
            return Err(refuse(line_no, "content after the final aggregate line".into()));
        }
        match parsed {
            CheckpointLine::Chunk(c) => {
                if c.chunk_index != state.completed.len() as u64 {
                    return Err(refuse(
                        line_no,
                        format!(
                            "chunk_index {} where {} was expected",
                            c.chunk_index,
                            state.completed.len()
                        ),
                    ));
                }
                state.completed.push(c);
            }
            CheckpointLine::Aggregate(a) => state.finished = Some(a),
        }
    }
    Ok(state)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn summary(i: u64) -> ChunkSummary {
        ChunkSummary {
            chunk_index: i,
            lo: 2 + i * 10,
            hi: 11 + i * 10,
            sum_f: 5 * (i + 1),
            exceed_count: 0,
            exceed_square_count: 0,
            violations: vec![],
            exceeding: vec![],
            mode: "full".into(),
            alpha: 2.95,
        }
    }

    #[test]
    fn roundtrip_chunks_then_aggregate() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let mut w = CheckpointWriter::create(&path).unwrap();
        w.write_line(&CheckpointLine::Chunk(summary(0))).unwrap();
        w.write_line(&CheckpointLine::Chunk(summary(1))).unwrap();
        let state = read_checkpoint(&path).unwrap();
        assert_eq!(state.completed.len(), 2);
        assert_eq!(state.completed[1], summary(1));
        assert!(state.finished.is_none());

        let agg = ScanAggregate {
            lo: 2,
            hi: 21,
            chunks: 2,
            sum_f: 15,
            exceed_count: 0,
            exceed_square_count: 0,
            violations: vec![],
            exceeding: vec![],
            sum_f_ratio: None,
        };
        w.write_line(&CheckpointLine::Aggregate(agg.clone())).unwrap();
        let state = read_checkpoint(&path).unwrap();
        assert_eq!(state.finished, Some(agg));
    }

    #[test]
    fn corrupt_lines_are_refused_with_their_number() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let mut w = CheckpointWriter::create(&path).unwrap();
        w.write_line(&CheckpointLine::Chunk(summary(0))).unwrap();
        std::fs::write(
            &path,
            std::fs::read_to_string(&path).unwrap() + "{ definitely not json\n",
        )
        .unwrap();
        let err = read_checkpoint(&path).unwrap_err();
        assert!(err.to_string().contains("line 2"), "got: {err}");
    }

    #[test]
    fn out_of_order_chunks_are_refused() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let mut w = CheckpointWriter::create(&path).unwrap();
        w.write_line(&CheckpointLine::Chunk(summary(1))).unwrap();
        let err = read_checkpoint(&path).unwrap_err();
        assert!(err.to_string().contains("line 1"), "got: {err}");
    }
}
