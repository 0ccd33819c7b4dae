//! Batch verification over graph6 streams with JSON Lines reports.

use std::io::{BufRead, Write};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clock::Stopwatch;
use crate::error::{Error, Result};
use crate::graph::{Diameter, Graph};
use crate::graph6::{parse_graph6, HEADER};
use crate::linalg::{adjacency_matrix, format_rational, parse_rational, MembershipCertificate};
use crate::witness::{find_witness, verify_witness, SearchOptions, Strategy, Witness, DEFAULT_ORACLE_LIMIT};

pub const ORACLE_LIMIT_ENV: &str = "ROWSPACE_ORACLE_LIMIT";

/// Lines handed to the worker pool at once; output order is restored per chunk.
const CHUNK: usize = 4096;

/// Oracle bound from `ROWSPACE_ORACLE_LIMIT`, or the default when unset.
pub fn oracle_limit_from_env() -> Result<usize> {
    match std::env::var(ORACLE_LIMIT_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("{ORACLE_LIMIT_ENV}={v:?} is not a number"))),
        Err(_) => Ok(DEFAULT_ORACLE_LIMIT),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Ok,
    NoWitnessFound,
    SkippedTooLarge,
    /// Edgeless input; the question is only posed for graphs with an edge.
    Skipped,
    Error,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationRecord {
    pub graph6: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub edges: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub diameter: Option<Diameter>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategy: Option<Strategy>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub certificate: Option<Vec<String>>,
    pub status: Status,
    pub elapsed_ms: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub reason: Option<String>,
}

impl VerificationRecord {
    fn bare(graph6: &str, status: Status, reason: String) -> Self {
        Self {
            graph6: graph6.to_owned(),
            n: None,
            edges: None,
            diameter: None,
            rank: None,
            strategy: None,
            witness: None,
            certificate: None,
            status,
            elapsed_ms: 0,
            reason: Some(reason),
        }
    }

    /// Re-decodes the graph and re-verifies the witness from the record's
    /// text alone. Records without `status = ok` pass vacuously.
    pub fn recheck(&self) -> Result<bool> {
        if self.status != Status::Ok {
            return Ok(true);
        }
        let missing = |f: &str| Error::InvalidArgument(format!("ok record without {f}"));
        let g = parse_graph6(&self.graph6)?;
        let vector = self
            .witness
            .as_deref()
            .ok_or_else(|| missing("witness"))?
            .bytes()
            .map(|b| match b {
                b'0' | b'1' => Ok(b - b'0'),
                _ => Err(Error::InvalidArgument(format!("witness byte {b:#04x} is not 0/1"))),
            })
            .collect::<Result<Vec<u8>>>()?;
        let coefficients = self
            .certificate
            .as_ref()
            .ok_or_else(|| missing("certificate"))?
            .iter()
            .map(|s| parse_rational(s))
            .collect::<Result<Vec<_>>>()?;
        let w = Witness {
            certificate: MembershipCertificate {
                coefficients,
                target: vector.clone(),
            },
            vector,
            strategy: self.strategy.ok_or_else(|| missing("strategy"))?,
        };
        Ok(verify_witness(&g, &w))
    }
}

/// Verifies one graph6 line. Never fails: problems become `error` records.
pub fn verify_line(line: &str, opts: &SearchOptions) -> VerificationRecord {
    let start = Stopwatch::start();
    let text = line.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    let g = match parse_graph6(text) {
        Ok(g) => g,
        Err(e) => return VerificationRecord::bare(text, Status::Error, e.to_string()),
    };
    let mut rec = VerificationRecord::bare(text, Status::Error, String::new());
    rec.n = Some(g.n());
    rec.edges = Some(g.edge_count());
    rec.diameter = Some(g.diameter());
    rec.rank = Some(adjacency_matrix(&g).rank());
    rec.reason = None;
    if g.edge_count() == 0 {
        rec.status = Status::Skipped;
        rec.reason = Some("graph has no edges".into());
    } else {
        match find_witness(&g, opts) {
            Ok(report) => match report.witness {
                Some(w) if verify_witness(&g, &w) => {
                    rec.status = Status::Ok;
                    rec.witness = Some(w.vector_string());
                    rec.certificate = Some(w.certificate.coefficients.iter().map(format_rational).collect());
                    rec.strategy = Some(w.strategy);
                }
                Some(_) => {
                    rec.status = Status::Error;
                    rec.reason = Some("witness failed re-verification".into());
                }
                None if report.oracle_skipped => {
                    rec.status = Status::SkippedTooLarge;
                    rec.reason = Some(format!(
                        "no constructive strategy applied and {} vertices exceed oracle limit {}",
                        g.n(),
                        opts.oracle_limit
                    ));
                }
                None => {
                    rec.status = Status::NoWitnessFound;
                    rec.reason = Some(
                        report
                            .rejected
                            .iter()
                            .map(|(s, r)| format!("{s}: {r}"))
                            .collect::<Vec<_>>()
                            .join("; "),
                    );
                }
            },
            Err(e) => {
                rec.status = Status::Error;
                rec.reason = Some(e.to_string());
            }
        }
    }
    rec.elapsed_ms = start.elapsed().as_millis() as u64;
    rec
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct VerificationSummary {
    pub records: u64,
    pub ok: u64,
    pub no_witness_found: u64,
    pub skipped_too_large: u64,
    pub skipped: u64,
    pub errors: u64,
}

impl VerificationSummary {
    fn add(&mut self, s: Status) {
        self.records += 1;
        *match s {
            Status::Ok => &mut self.ok,
            Status::NoWitnessFound => &mut self.no_witness_found,
            Status::SkippedTooLarge => &mut self.skipped_too_large,
            Status::Skipped => &mut self.skipped,
            Status::Error => &mut self.errors,
        } += 1;
    }
}

#[derive(Debug, Clone, Default)]
pub struct RunOptions {
    pub search: SearchOptions,
    /// Worker threads; 0 uses the rayon default, 1 runs inline.
    pub jobs: usize,
}

pub(crate) fn in_pool<T: Send>(jobs: usize, f: impl FnOnce() -> T + Send) -> Result<T> {
    if jobs == 0 {
        return Ok(f());
    }
    Ok(rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| Error::InvalidArgument(e.to_string()))?
        .install(f))
}

fn io_err(e: std::io::Error) -> Error {
    Error::InvalidArgument(format!("i/o: {e}"))
}

/// Processes lines in chunks: each chunk is mapped in parallel and written
/// back in input order before the next chunk is read.
fn map_lines<R, W, T, F>(input: R, out: &mut W, jobs: usize, f: F, mut sink: impl FnMut(&T))
    -> Result<()>
where
    R: BufRead,
    W: Write,
    T: Serialize + Send,
    F: Fn(&str) -> T + Sync,
{
    let mut lines = input.lines();
    loop {
        let chunk = lines
            .by_ref()
            .take(CHUNK)
            .collect::<std::io::Result<Vec<String>>>()
            .map_err(io_err)?;
        if chunk.is_empty() {
            return Ok(());
        }
        let results: Vec<T> = if jobs == 1 {
            chunk.iter().map(|l| f(l)).collect()
        } else {
            in_pool(jobs, || chunk.par_iter().map(|l| f(l)).collect())?
        };
        for r in &results {
            serde_json::to_writer(&mut *out, r).map_err(|e| Error::InvalidArgument(e.to_string()))?;
            out.write_all(b"\n").map_err(io_err)?;
            sink(r);
        }
    }
}

/// One JSONL record per input line, in input order.
pub fn run_verification<R: BufRead, W: Write>(
    input: R,
    opts: &RunOptions,
    out: &mut W,
) -> Result<VerificationSummary> {
    let mut summary = VerificationSummary::default();
    map_lines(
        input,
        out,
        opts.jobs,
        |l| verify_line(l, &opts.search),
        |r: &VerificationRecord| summary.add(r.status),
    )?;
    out.flush().map_err(io_err)?;
    Ok(summary)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeBoundRecord {
    pub graph6: String,
    pub order: usize,
    pub size: usize,
    pub has_dominating: bool,
    pub diameter: Diameter,
    pub bound_2n_minus_5: i64,
    pub meets_bound: bool,
    /// Diameter 2 without a dominating vertex: the inequality is claimed.
    pub applicable: bool,
    pub equality: bool,
}

impl SizeBoundRecord {
    pub fn violation(&self) -> bool {
        self.applicable && !self.meets_bound
    }
}

pub fn size_bound_record(g: &Graph, graph6: &str) -> SizeBoundRecord {
    let order = g.n();
    let size = g.edge_count();
    let has_dominating = !g.dominating_vertices().is_empty();
    let diameter = g.diameter();
    let bound = 2 * order as i64 - 5;
    let applicable = diameter == Diameter::Finite(2) && !has_dominating;
    SizeBoundRecord {
        graph6: graph6.to_owned(),
        order,
        size,
        has_dominating,
        diameter,
        bound_2n_minus_5: bound,
        meets_bound: size as i64 >= bound,
        applicable,
        equality: applicable && size as i64 == bound,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SizeBoundLine {
    Record(SizeBoundRecord),
    Error { graph6: String, error: String },
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SizeBoundTally {
    pub records: u64,
    pub applicable: u64,
    pub violations: u64,
    pub equalities: u64,
    pub errors: u64,
}

pub fn size_bound_line(line: &str) -> SizeBoundLine {
    let text = line.trim_end_matches(['\n', '\r']);
    let text = text.strip_prefix(HEADER).unwrap_or(text);
    match parse_graph6(text) {
        Ok(g) => SizeBoundLine::Record(size_bound_record(&g, text)),
        Err(e) => SizeBoundLine::Error {
            graph6: text.to_owned(),
            error: e.to_string(),
        },
    }
}

/// One JSONL line per input line: a [`SizeBoundRecord`] or a parse error.
pub fn check_size_bound<R: BufRead, W: Write>(input: R, jobs: usize, out: &mut W) -> Result<SizeBoundTally> {
    let mut tally = SizeBoundTally::default();
    map_lines(input, out, jobs, size_bound_line, |l: &SizeBoundLine| {
        tally.records += 1;
        match l {
            SizeBoundLine::Record(r) => {
                tally.applicable += r.applicable as u64;
                tally.violations += r.violation() as u64;
                tally.equalities += r.equality as u64;
            }
            SizeBoundLine::Error { .. } => tally.errors += 1,
        }
    })?;
    out.flush().map_err(io_err)?;
    Ok(tally)
}
