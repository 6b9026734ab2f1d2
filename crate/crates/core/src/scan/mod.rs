//! Range scans: per-value solution statistics over `[lo, hi]`, computed in
//! fixed-size chunks by a small worker pool and emitted in deterministic
//! order regardless of worker count. Checkpointed scans can be resumed;
//! records from a resumed scan concatenate with the earlier run's output
//! to exactly the records a single uninterrupted scan would have written.

mod checkpoint;
mod suites;

pub use checkpoint::{read_checkpoint, CheckpointLine, CheckpointWriter, ChunkSummary, ResumeState};
pub use suites::{run_suite, Suite, SuiteReport, BIG_ELEVEN};

use crate::bounds::{exceedance_with_theta, Exceedance, EXCEED_ALPHA};
use crate::solver::{count_f, k_profile};
use crate::{arith, Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::BTreeMap;
use std::path::PathBuf;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::mpsc;

/// Values per work unit. Small enough that checkpoints are fine-grained,
/// large enough that the divisor sieve shared by a chunk pays for itself.
pub const CHUNK: u64 = 1024;

/// `full` and `figure` modes enumerate every value in the range; refuse
/// spans where that visibly stops being an interactive operation.
pub const FULL_SCAN_MAX_SPAN: u64 = 2_000_000;

/// What a scan computes per value.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ScanMode {
    /// Full statistics for every value: solution counts, multiplicity
    /// profile, bound-exceedance flag.
    Full,
    /// Only values whose weighted bound reaches `2n` get a record; the
    /// rest are counted but not enumerated. This is the mode that covers
    /// ranges in the millions.
    Exceed,
    /// Solution count only, all other columns zero.
    Figure,
}

impl ScanMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ScanMode::Full => "full",
            ScanMode::Exceed => "exceed",
            ScanMode::Figure => "figure",
        }
    }
}

impl std::str::FromStr for ScanMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "full" => Ok(ScanMode::Full),
            "exceed" => Ok(ScanMode::Exceed),
            "figure" => Ok(ScanMode::Figure),
            other => Err(Error::domain(format!(
                "unknown scan mode `{other}` (expected full, exceed, or figure)"
            ))),
        }
    }
}

impl std::fmt::Display for ScanMode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub lo: u64,
    pub hi: u64,
    pub mode: ScanMode,
    /// Worker threads. Output is identical for any value.
    pub jobs: usize,
    pub checkpoint: Option<PathBuf>,
    pub resume: bool,
}

/// One emitted row. In `exceed` mode only exceeding values produce rows;
/// in `figure` mode everything but `n`, `f` and `f_lt_n` is zeroed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ScanRecord {
    pub n: u64,
    pub f: u64,
    pub reduced: u64,
    pub m2: u64,
    pub m3: u64,
    #[serde(rename = "kmax")]
    pub k_max: u64,
    pub exceed: bool,
    pub f_lt_n: bool,
}

impl ScanRecord {
    pub const CSV_HEADER: &'static str = "n,f,reduced,m2,m3,kmax,exceed,f_lt_n";

    pub fn csv_row(&self) -> String {
        format!(
            "{},{},{},{},{},{},{},{}",
            self.n, self.f, self.reduced, self.m2, self.m3, self.k_max, self.exceed, self.f_lt_n
        )
    }
}

/// Whole-scan totals. `sum_f` sums the `f` column of emitted records, so
/// in `exceed` mode it covers exceeding values only. `sum_f_ratio` is the
/// normalized total `sum_f / (hi · (ln hi)³)`, filled in when the scan
/// starts at 2 and therefore sums the counting function from the start.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ScanAggregate {
    pub lo: u64,
    pub hi: u64,
    pub chunks: u64,
    pub sum_f: u64,
    /// Values whose plain-weight bound ½θ(n)·g reaches n — the interval
    /// exceedance tally. Squares are weighted θ(n) here like everything
    /// else; their θ(n)+1 predicate feeds `exceed_square_count` instead.
    pub exceed_count: u64,
    /// Squares whose corrected bound ½(θ(n)+1)·g reaches n.
    #[serde(default)]
    pub exceed_square_count: u64,
    pub violations: Vec<u64>,
    /// The values behind `exceed_count`, in order.
    #[serde(default)]
    pub exceeding: Vec<u64>,
    #[serde(default)]
    pub sum_f_ratio: Option<f64>,
}

/// Chunk geometry fixed by the scan request; shared, read-only.
#[derive(Clone, Copy, Debug)]
struct ScanPlan {
    lo: u64,
    hi: u64,
    mode: ScanMode,
}

impl ScanPlan {
    fn chunk_count(&self) -> u64 {
        (self.hi - self.lo + 1).div_ceil(CHUNK)
    }

    fn bounds(&self, index: u64) -> (u64, u64) {
        let lo = self.lo + index * CHUNK;
        let hi = (lo + CHUNK - 1).min(self.hi);
        (lo, hi)
    }
}

struct ChunkResult {
    summary: ChunkSummary,
    records: Vec<ScanRecord>,
}

fn exceed_applies(ex: &Exceedance) -> bool {
    if ex.is_square {
        ex.square
    } else {
        ex.nonsquare
    }
}

/// Computes one chunk. Pure function of the plan and index, which is what
/// makes the whole scan deterministic under any worker count.
fn compute_chunk(plan: &ScanPlan, index: u64) -> Result<ChunkResult> {
    let (lo, hi) = plan.bounds(index);
    let thetas = arith::divisor_count_range(lo, hi)?;
    let mut records = Vec::new();
    let mut summary = ChunkSummary {
        chunk_index: index,
        lo,
        hi,
        sum_f: 0,
        exceed_count: 0,
        exceed_square_count: 0,
        violations: vec![],
        exceeding: vec![],
        mode: plan.mode.as_str().into(),
        alpha: EXCEED_ALPHA,
    };
    for n in lo..=hi {
        let theta = u64::from(thetas[(n - lo) as usize]);
        // The weighted bound needs alpha·sqrt(n) < 2n, which at the fixed
        // alpha excludes only n = 2; an inapplicable bound certifies
        // nothing, so n = 2 counts as exceeding. Figure mode reports raw
        // counts only and skips the predicate altogether.
        let exceed = if plan.mode == ScanMode::Figure {
            false
        } else if n == 2 {
            summary.exceed_count += 1;
            summary.exceeding.push(n);
            true
        } else {
            let ex = exceedance_with_theta(n, theta, EXCEED_ALPHA)?;
            // The interval tally weights every n by θ(n); squares enter
            // the separate square tally with weight θ(n)+1. A record is
            // due when the predicate applicable to n fires.
            if ex.nonsquare {
                summary.exceed_count += 1;
                summary.exceeding.push(n);
            }
            if ex.square {
                summary.exceed_square_count += 1;
            }
            exceed_applies(&ex)
        };
        let record = match plan.mode {
            ScanMode::Full => {
                let profile = k_profile(n)?;
                let f = profile.total();
                Some(ScanRecord {
                    n,
                    f,
                    reduced: profile.m(1),
                    m2: profile.m(2),
                    m3: profile.m(3),
                    k_max: profile.k_max(),
                    exceed,
                    f_lt_n: f < n,
                })
            }
            ScanMode::Exceed => {
                if exceed {
                    let profile = k_profile(n)?;
                    let f = profile.total();
                    Some(ScanRecord {
                        n,
                        f,
                        reduced: profile.m(1),
                        m2: profile.m(2),
                        m3: profile.m(3),
                        k_max: profile.k_max(),
                        exceed,
                        f_lt_n: f < n,
                    })
                } else {
                    None
                }
            }
            ScanMode::Figure => {
                let f = count_f(n)?;
                Some(ScanRecord {
                    n,
                    f,
                    reduced: 0,
                    m2: 0,
                    m3: 0,
                    k_max: 0,
                    exceed: false,
                    f_lt_n: f < n,
                })
            }
        };
        if let Some(record) = record {
            summary.sum_f += record.f;
            if !record.f_lt_n {
                summary.violations.push(n);
            }
            records.push(record);
        }
    }
    Ok(ChunkResult { summary, records })
}

fn merge(plan: &ScanPlan, parts: &[ChunkSummary]) -> ScanAggregate {
    let mut agg = ScanAggregate {
        lo: plan.lo,
        hi: plan.hi,
        chunks: parts.len() as u64,
        sum_f: 0,
        exceed_count: 0,
        exceed_square_count: 0,
        violations: vec![],
        exceeding: vec![],
        sum_f_ratio: None,
    };
    for part in parts {
        agg.sum_f += part.sum_f;
        agg.exceed_count += part.exceed_count;
        agg.exceed_square_count += part.exceed_square_count;
        agg.violations.extend_from_slice(&part.violations);
        agg.exceeding.extend_from_slice(&part.exceeding);
    }
    if plan.lo == 2 && plan.mode != ScanMode::Exceed {
        let t = plan.hi as f64;
        agg.sum_f_ratio = Some(agg.sum_f as f64 / (t * t.ln().powi(3)));
    }
    agg
}

fn validate_resume_prefix(plan: &ScanPlan, state: &ResumeState, path: &std::path::Path) -> Result<()> {
    let refuse = |line: usize, reason: String| Error::Checkpoint {
        path: path.to_path_buf(),
        line,
        reason,
    };
    if state.completed.len() as u64 > plan.chunk_count() {
        return Err(refuse(
            state.completed.len(),
            format!(
                "{} completed chunks but the requested range only has {}",
                state.completed.len(),
                plan.chunk_count()
            ),
        ));
    }
    for (i, chunk) in state.completed.iter().enumerate() {
        let (lo, hi) = plan.bounds(i as u64);
        if (chunk.lo, chunk.hi) != (lo, hi) {
            return Err(refuse(
                i + 1,
                format!(
                    "chunk {} covers [{}, {}] but the requested range puts it at [{}, {}]",
                    i, chunk.lo, chunk.hi, lo, hi
                ),
            ));
        }
        if !chunk.mode.is_empty() && chunk.mode != plan.mode.as_str() {
            return Err(refuse(
                i + 1,
                format!("chunk was scanned in `{}` mode, not `{}`", chunk.mode, plan.mode),
            ));
        }
        if chunk.alpha != 0.0 && chunk.alpha != EXCEED_ALPHA {
            return Err(refuse(
                i + 1,
                format!("chunk used alpha = {}, not {}", chunk.alpha, EXCEED_ALPHA),
            ));
        }
    }
    if let Some(agg) = &state.finished {
        if (agg.lo, agg.hi) != (plan.lo, plan.hi) {
            return Err(refuse(
                state.completed.len() + 1,
                format!(
                    "finished scan covers [{}, {}], not the requested [{}, {}]",
                    agg.lo, agg.hi, plan.lo, plan.hi
                ),
            ));
        }
        if agg.chunks != state.completed.len() as u64 {
            return Err(refuse(
                state.completed.len() + 1,
                format!(
                    "aggregate claims {} chunks but {} are recorded",
                    agg.chunks,
                    state.completed.len()
                ),
            ));
        }
    }
    Ok(())
}

/// Runs a scan, feeding each record to `sink` in increasing order of `n`.
///
/// With a checkpoint path, completed chunks are persisted as the scan
/// goes; with `resume`, a valid checkpoint prefix is loaded and those
/// chunks are neither recomputed nor re-emitted, so the records seen by
/// `sink` across the two runs concatenate to the uninterrupted output.
pub fn scan_range(
    opts: &ScanOptions,
    mut sink: impl FnMut(&ScanRecord) -> Result<()>,
) -> Result<ScanAggregate> {
    if opts.lo < 2 || opts.lo > opts.hi {
        return Err(Error::domain(format!(
            "scan range [{}, {}] must satisfy 2 <= lo <= hi",
            opts.lo, opts.hi
        )));
    }
    let span = opts.hi - opts.lo + 1;
    if opts.mode != ScanMode::Exceed && span > FULL_SCAN_MAX_SPAN {
        // Rough single-core estimate: enumerating one value costs about
        // theta(n)·sqrt(n) window operations, ~25ns each.
        let secs = span as f64 * (opts.hi as f64).ln() * (opts.hi as f64).sqrt() * 25e-9;
        return Err(Error::domain(format!(
            "{} mode over {} values would enumerate every one (roughly {:.0} minutes); \
             the cap is {} values per scan — use exceed mode for wide ranges",
            opts.mode,
            span,
            (secs / 60.0).max(1.0),
            FULL_SCAN_MAX_SPAN
        )));
    }
    if opts.jobs < 1 || opts.jobs > 256 {
        return Err(Error::domain(format!(
            "jobs must be between 1 and 256, got {}",
            opts.jobs
        )));
    }
    if opts.resume && opts.checkpoint.is_none() {
        return Err(Error::domain(
            "resume requires a checkpoint file to resume from",
        ));
    }

    let plan = ScanPlan { lo: opts.lo, hi: opts.hi, mode: opts.mode };

    let mut completed: Vec<ChunkSummary> = Vec::new();
    let mut writer = None;
    if let Some(path) = &opts.checkpoint {
        if opts.resume && path.exists() {
            let state = read_checkpoint(path)?;
            validate_resume_prefix(&plan, &state, path)?;
            if let Some(agg) = state.finished {
                // Nothing left to do, and per the concatenation contract
                // nothing is re-emitted.
                return Ok(agg);
            }
            completed = state.completed;
            writer = Some(CheckpointWriter::append(path)?);
        } else {
            writer = Some(CheckpointWriter::create(path)?);
        }
    }

    let chunk_count = plan.chunk_count();
    let first_fresh = completed.len() as u64;
    let next = AtomicU64::new(first_fresh);
    let (tx, rx) = mpsc::channel::<Result<ChunkResult>>();

    let result = std::thread::scope(|scope| -> Result<Vec<ChunkSummary>> {
        for _ in 0..opts.jobs {
            let tx = tx.clone();
            let next = &next;
            let plan = &plan;
            scope.spawn(move || loop {
                let index = next.fetch_add(1, Ordering::Relaxed);
                if index >= chunk_count {
                    break;
                }
                let out = compute_chunk(plan, index);
                let stop = out.is_err();
                if tx.send(out).is_err() || stop {
                    break;
                }
            });
        }
        drop(tx);

        let mut parts = completed;
        let mut pending: BTreeMap<u64, ChunkResult> = BTreeMap::new();
        let mut want = first_fresh;
        for message in rx {
            let chunk = message?;
            pending.insert(chunk.summary.chunk_index, chunk);
            while let Some(ready) = pending.remove(&want) {
                for record in &ready.records {
                    sink(record)?;
                }
                if let Some(w) = writer.as_mut() {
                    w.write_line(&CheckpointLine::Chunk(ready.summary.clone()))?;
                }
                parts.push(ready.summary);
                want += 1;
            }
        }
        if want != chunk_count {
            return Err(Error::invariant(format!(
                "workers stopped after chunk {want} of {chunk_count} without reporting an error"
            )));
        }
        Ok(parts)
    });

    let parts = result?;
    let aggregate = merge(&plan, &parts);
    if let Some(w) = writer.as_mut() {
        w.write_line(&CheckpointLine::Aggregate(aggregate.clone()))?;
    }
    Ok(aggregate)
}

/// Normalized solution total: sums `f` over `[2, t]` and divides by
/// `t·(ln t)³`. The ratio is expected to stay within a small constant
/// band for any `t` large enough to be past start-up noise.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SumFRatio {
    pub t: u64,
    pub sum_f: u64,
    pub ratio: f64,
}

pub fn sum_f_ratio(t: u64, jobs: usize) -> Result<SumFRatio> {
    if t < 10 {
        return Err(Error::domain(format!(
            "the normalized total needs t >= 10, got {t}"
        )));
    }
    let opts = ScanOptions {
        lo: 2,
        hi: t,
        mode: ScanMode::Figure,
        jobs,
        checkpoint: None,
        resume: false,
    };
    let agg = scan_range(&opts, |_| Ok(()))?;
    let ratio = agg
        .sum_f_ratio
        .ok_or_else(|| Error::invariant("scan from 2 did not produce a normalized total"))?;
    Ok(SumFRatio { t, sum_f: agg.sum_f, ratio })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn collect(opts: &ScanOptions) -> Result<(Vec<ScanRecord>, ScanAggregate)> {
        let mut records = Vec::new();
        let agg = scan_range(opts, |r| {
            records.push(r.clone());
            Ok(())
        })?;
        Ok((records, agg))
    }

    fn full_opts(lo: u64, hi: u64, jobs: usize) -> ScanOptions {
        ScanOptions { lo, hi, mode: ScanMode::Full, jobs, checkpoint: None, resume: false }
    }

    #[test]
    fn full_scan_matches_direct_enumeration() {
        let (records, agg) = collect(&full_opts(2, 40, 1)).unwrap();
        assert_eq!(records.len(), 39);
        for record in &records {
            let profile = k_profile(record.n).unwrap();
            assert_eq!(record.f, profile.total());
            assert_eq!(record.reduced, profile.m(1));
            assert_eq!(record.m2, profile.m(2));
            assert_eq!(record.m3, profile.m(3));
            assert_eq!(record.k_max, profile.k_max());
            assert_eq!(record.f_lt_n, record.f < record.n);
        }
        assert_eq!(agg.sum_f, records.iter().map(|r| r.f).sum::<u64>());
        // Small n: the bound dwarfs 2n everywhere, so every value exceeds;
        // f(n) < n still holds even here, so no violations.
        assert_eq!(agg.exceed_count, 39);
        assert!(agg.violations.is_empty());
        assert!(agg.sum_f_ratio.is_some());
    }

    #[test]
    fn worker_count_does_not_change_output() {
        let base = collect(&full_opts(2, 2600, 1)).unwrap();
        for jobs in [4, 16] {
            let other = collect(&full_opts(2, 2600, jobs)).unwrap();
            assert_eq!(base.0, other.0, "records differ at jobs={jobs}");
            assert_eq!(base.1, other.1, "aggregate differs at jobs={jobs}");
        }
    }

    #[test]
    fn figure_mode_keeps_only_counts() {
        let opts = ScanOptions {
            lo: 30,
            hi: 34,
            mode: ScanMode::Figure,
            jobs: 1,
            checkpoint: None,
            resume: false,
        };
        let (records, agg) = collect(&opts).unwrap();
        assert_eq!(records.len(), 5);
        for record in &records {
            assert_eq!(record.f, count_f(record.n).unwrap());
            assert_eq!(
                (record.reduced, record.m2, record.m3, record.k_max, record.exceed),
                (0, 0, 0, 0, false)
            );
        }
        assert_eq!(agg.exceed_count, 0);
        assert!(agg.exceeding.is_empty());
    }

    #[test]
    fn exceed_mode_emits_only_exceeding_values() {
        // Everything this small exceeds, so exceed mode degenerates to
        // full mode here; the point is the record-selection plumbing.
        let opts = ScanOptions {
            lo: 2,
            hi: 50,
            mode: ScanMode::Exceed,
            jobs: 1,
            checkpoint: None,
            resume: false,
        };
        let (records, agg) = collect(&opts).unwrap();
        assert_eq!(agg.exceed_count as usize, records.len());
        assert!(records.iter().all(|r| r.exceed));
        assert_eq!(agg.exceeding, records.iter().map(|r| r.n).collect::<Vec<_>>());
        // A large prime is comfortably below the bound: singleton check.
        let lone = ScanOptions { lo: 99991, hi: 99991, ..opts };
        let (records, agg) = collect(&lone).unwrap();
        assert!(records.is_empty());
        assert_eq!(agg.exceed_count, 0);
        assert_eq!(agg.sum_f, 0);
    }

    #[test]
    fn refusals() {
        assert!(scan_range(&full_opts(1, 5, 1), |_| Ok(())).is_err());
        assert!(scan_range(&full_opts(9, 5, 1), |_| Ok(())).is_err());
        assert!(scan_range(&full_opts(2, 2, 0), |_| Ok(())).is_err());
        let wide = full_opts(2, 3 + FULL_SCAN_MAX_SPAN, 1);
        let err = scan_range(&wide, |_| Ok(())).unwrap_err();
        assert!(err.to_string().contains("exceed mode"), "got: {err}");
        let bad_resume = ScanOptions { resume: true, ..full_opts(2, 5, 1) };
        assert!(scan_range(&bad_resume, |_| Ok(())).is_err());
    }

    #[test]
    fn checkpoint_resume_concatenates_to_uninterrupted_output() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let reference = collect(&full_opts(2, 4200, 1)).unwrap();

        let opts = ScanOptions {
            checkpoint: Some(path.clone()),
            ..full_opts(2, 4200, 2)
        };
        let full_run = collect(&opts).unwrap();
        assert_eq!(full_run.0, reference.0);
        assert_eq!(full_run.1, reference.1);

        // Cut the checkpoint back to its first two chunk lines, as if the
        // scan had died mid-flight, and resume.
        let text = std::fs::read_to_string(&path).unwrap();
        let prefix: Vec<&str> = text.lines().take(2).collect();
        std::fs::write(&path, prefix.join("\n") + "\n").unwrap();

        let resumed_opts = ScanOptions { resume: true, ..opts.clone() };
        let resumed = collect(&resumed_opts).unwrap();
        assert_eq!(resumed.1, reference.1, "resumed aggregate differs");
        let replayed: Vec<ScanRecord> = reference
            .0
            .iter()
            .filter(|r| r.n >= 2 + 2 * CHUNK)
            .cloned()
            .collect();
        assert_eq!(resumed.0, replayed, "resume re-emitted or skipped records");

        // Resuming a finished scan returns the stored aggregate and emits
        // nothing at all.
        let again = collect(&resumed_opts).unwrap();
        assert!(again.0.is_empty());
        assert_eq!(again.1, reference.1);
    }

    #[test]
    fn resume_refuses_a_mismatched_range() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("scan.ckpt");
        let opts = ScanOptions {
            checkpoint: Some(path.clone()),
            ..full_opts(2, 3000, 1)
        };
        collect(&opts).unwrap();
        let shifted = ScanOptions {
            resume: true,
            checkpoint: Some(path),
            ..full_opts(3, 3001, 1)
        };
        let err = scan_range(&shifted, |_| Ok(())).unwrap_err();
        assert!(err.to_string().contains("chunk 0 covers"), "got: {err}");
    }

    #[test]
    fn sum_f_ratio_is_stable_between_nearby_cutoffs() {
        let a = sum_f_ratio(600, 1).unwrap();
        let b = sum_f_ratio(900, 1).unwrap();
        assert!(a.ratio > 0.0 && b.ratio > 0.0);
        assert!(a.ratio / b.ratio < 3.0 && b.ratio / a.ratio < 3.0);
        assert!(sum_f_ratio(9, 1).is_err());
    }
}
