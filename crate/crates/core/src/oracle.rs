//! Brute-force ground truth and exhaustive small-graph verification.

use std::collections::{BTreeMap, HashSet};
use std::time::Duration;

use rayon::prelude::*;
use serde::Serialize;

use crate::clock::Stopwatch;
use crate::error::{Error, Result};
use crate::graph::{Diameter, Graph};
use crate::graph6::write_graph6;
use crate::harness::in_pool;
use crate::linalg::{adjacency_matrix, solve_membership};
use crate::witness::{find_witness, verify_witness, SearchOptions, Strategy, Witness};

/// Hard ceiling on oracle scans regardless of configuration (2^30 candidates).
pub const ORACLE_HARD_LIMIT: usize = 30;

/// Largest order accepted by the built-in labeled-graph generator.
pub const MAX_EXHAUSTIVE_N: usize = 7;

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub found: bool,
    pub witness: Option<Witness>,
    pub candidates_checked: u64,
    pub elapsed: Duration,
}

fn check_bound(g: &Graph, bound: usize) -> Result<()> {
    let limit = bound.min(ORACLE_HARD_LIMIT);
    if g.n() > limit {
        return Err(Error::Capacity {
            what: "oracle vertex count",
            n: g.n(),
            limit,
        });
    }
    Ok(())
}

fn bits(mask: u64, n: usize) -> Vec<u8> {
    (0..n).map(|i| ((mask >> i) & 1) as u8).collect()
}

fn row_masks(g: &Graph) -> HashSet<u64> {
    (0..g.n())
        .map(|v| g.neighbors(v).ones().fold(0u64, |m, j| m | (1 << j)))
        .collect()
}

/// Scans every non-zero 0/1 vector in ascending order of `Σ x_i 2^i`,
/// skipping rows of `A(g)`, and returns the first one in the row space.
pub fn brute_force_witness(g: &Graph, bound: usize) -> Result<OracleResult> {
    check_bound(g, bound)?;
    let start = Stopwatch::start();
    let n = g.n();
    let a = adjacency_matrix(g);
    let space = a.row_space();
    let rows = row_masks(g);
    let mut checked = 0u64;
    for mask in 1..(1u64 << n) {
        if rows.contains(&mask) {
            continue;
        }
        checked += 1;
        let x = bits(mask, n);
        if space.contains(&x) {
            let certificate = solve_membership(&a, &x)?.expect("row space and solver agree");
            let w = Witness {
                vector: x,
                certificate,
                strategy: Strategy::Oracle,
            };
            debug_assert!(verify_witness(g, &w));
            return Ok(OracleResult {
                found: true,
                witness: Some(w),
                candidates_checked: checked,
                elapsed: start.elapsed(),
            });
        }
    }
    Ok(OracleResult {
        found: false,
        witness: None,
        candidates_checked: checked,
        elapsed: start.elapsed(),
    })
}

/// Every qualifying vector, in the same ascending order as
/// [`brute_force_witness`].
pub fn enumerate_all_witnesses(g: &Graph, bound: usize) -> Result<Vec<Vec<u8>>> {
    check_bound(g, bound)?;
    let n = g.n();
    let space = adjacency_matrix(g).row_space();
    let rows = row_masks(g);
    Ok((1..(1u64 << n))
        .filter(|m| !rows.contains(m))
        .map(|m| bits(m, n))
        .filter(|x| space.contains(x))
        .collect())
}

/// Number of vertex pairs, i.e. bits in a labeled-graph code.
fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// The labeled graph whose edge `k` (pairs `(i, j)`, `i < j`, ordered by `j`
/// then `i`) is present iff bit `k` of `code` is set. This is the bit order
/// of graph6.
pub fn labeled_graph(n: usize, code: u64) -> Graph {
    let mut edges = Vec::new();
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (code >> k) & 1 == 1 {
                edges.push((i, j));
            }
            k += 1;
        }
    }
    Graph::from_edges(n, &edges).expect("generated edges are valid")
}

/// Iterator over all `2^(n(n-1)/2)` labeled graphs on `n` vertices.
pub fn labeled_graphs(n: usize) -> Result<impl Iterator<Item = Graph>> {
    check_exhaustive_n(n)?;
    Ok((0..1u64 << pair_count(n)).map(move |c| labeled_graph(n, c)))
}

fn check_exhaustive_n(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    if n > MAX_EXHAUSTIVE_N {
        return Err(Error::Capacity {
            what: "exhaustive order",
            n,
            limit: MAX_EXHAUSTIVE_N,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SizeBoundSummary {
    /// Diameter-2 graphs without a dominating vertex.
    pub checked: u64,
    /// Those with fewer than `2n - 5` edges (graph6).
    pub violations: Vec<String>,
    /// Those with exactly `2n - 5` edges.
    pub equalities: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ExhaustiveReport {
    pub n: usize,
    pub labeled_graphs: u64,
    pub graphs_checked: u64,
    pub failures: Vec<String>,
    pub strategy_histogram: BTreeMap<Strategy, u64>,
    pub size_bound: SizeBoundSummary,
}

#[derive(Debug, Clone, Default)]
pub struct ExhaustiveOptions {
    pub search: SearchOptions,
    /// Worker threads; 0 uses the rayon default.
    pub jobs: usize,
}

#[derive(Default)]
struct Partial {
    checked: u64,
    failures: Vec<(u64, String)>,
    histogram: BTreeMap<Strategy, u64>,
    bound_checked: u64,
    violations: Vec<(u64, String)>,
    equalities: u64,
}

impl Partial {
    fn merge(mut self, other: Partial) -> Partial {
        self.checked += other.checked;
        self.failures.extend(other.failures);
        for (k, v) in other.histogram {
            *self.histogram.entry(k).or_default() += v;
        }
        self.bound_checked += other.bound_checked;
        self.violations.extend(other.violations);
        self.equalities += other.equalities;
        self
    }

    fn visit(mut self, n: usize, code: u64, search: &SearchOptions) -> Partial {
        let g = labeled_graph(n, code);
        if g.edge_count() == 0 || !g.is_connected() {
            return self;
        }
        self.checked += 1;
        match find_witness(&g, search) {
            Ok(report) => match report.witness {
                Some(w) if verify_witness(&g, &w) => {
                    *self.histogram.entry(w.strategy).or_default() += 1;
                }
                _ => self.failures.push((code, write_graph6(&g))),
            },
            Err(_) => self.failures.push((code, write_graph6(&g))),
        }
        if g.diameter() == Diameter::Finite(2) && g.dominating_vertices().is_empty() {
            self.bound_checked += 1;
            let size = g.edge_count() as i64;
            let bound = 2 * n as i64 - 5;
            if size < bound {
                self.violations.push((code, write_graph6(&g)));
            } else if size == bound {
                self.equalities += 1;
            }
        }
        self
    }
}

/// Runs [`find_witness`] on every connected labeled graph with an edge on
/// `n` vertices and tallies which strategy succeeded. Also checks the
/// `2n - 5` size bound on the diameter-2 graphs without a dominating vertex.
pub fn exhaustive_verify(n: usize, opts: &ExhaustiveOptions) -> Result<ExhaustiveReport> {
    check_exhaustive_n(n)?;
    let total = 1u64 << pair_count(n);
    let search = &opts.search;
    let run = || {
        (0..total)
            .into_par_iter()
            .fold(Partial::default, |acc, code| acc.visit(n, code, search))
            .reduce(Partial::default, Partial::merge)
    };
    let mut p = if opts.jobs == 1 {
        (0..total).fold(Partial::default(), |acc, code| acc.visit(n, code, search))
    } else {
        in_pool(opts.jobs, run)?
    };
    p.failures.sort();
    p.violations.sort();
    Ok(ExhaustiveReport {
        n,
        labeled_graphs: total,
        graphs_checked: p.checked,
        failures: p.failures.into_iter().map(|(_, s)| s).collect(),
        strategy_histogram: p.histogram,
        size_bound: SizeBoundSummary {
            checked: p.bound_checked,
            violations: p.violations.into_iter().map(|(_, s)| s).collect(),
            equalities: p.equalities,
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{build, cycle, Family, FamilySpec};

    fn v(s: &str) -> Vec<u8> {
        s.bytes().map(|b| b - b'0').collect()
    }

    #[test]
    fn brute_force_examples() {
        let star = build(&FamilySpec::sized(Family::Star, 4)).unwrap();
        let r = brute_force_witness(&star, 16).unwrap();
        assert!(r.found);
        assert_eq!(r.witness.unwrap().vector, v("11111"));

        let k2 = build(&FamilySpec::sized(Family::Complete, 2)).unwrap();
        assert_eq!(brute_force_witness(&k2, 16).unwrap().witness.unwrap().vector, v("11"));

        let pet = build(&FamilySpec::fixed(Family::Petersen)).unwrap();
        let r = brute_force_witness(&pet, 16).unwrap();
        assert_eq!(r.witness.unwrap().vector, v("1000000000"));
        assert_eq!(r.candidates_checked, 1);

        assert!(matches!(brute_force_witness(&pet, 8), Err(Error::Capacity { .. })));
    }

    #[test]
    fn exhausted_scan_counts_every_non_row() {
        let e2 = Graph::empty(2).unwrap();
        let r = brute_force_witness(&e2, 16).unwrap();
        assert!(!r.found);
        // Rows are all zero, so no non-zero candidate is skipped.
        assert_eq!(r.candidates_checked, 3);
    }

    #[test]
    fn enumeration_examples() {
        let k2 = build(&FamilySpec::sized(Family::Complete, 2)).unwrap();
        assert_eq!(enumerate_all_witnesses(&k2, 16).unwrap(), vec![v("11")]);
        assert!(enumerate_all_witnesses(&Graph::empty(2).unwrap(), 16).unwrap().is_empty());
        let c4 = cycle(4).unwrap();
        assert_eq!(enumerate_all_witnesses(&c4, 16).unwrap(), vec![v("1111")]);
        let p5 = crate::families::path(5).unwrap();
        let expected: Vec<Vec<u8>> = ["11100", "10110", "11110", "01101", "00111", "01111"]
            .iter()
            .map(|s| v(s))
            .collect();
        assert_eq!(enumerate_all_witnesses(&p5, 16).unwrap(), expected);
    }

    #[test]
    fn labeled_generator_order_matches_graph6_bits() {
        assert_eq!(labeled_graph(3, 0b001).edges().collect::<Vec<_>>(), vec![(0, 1)]);
        assert_eq!(labeled_graph(3, 0b010).edges().collect::<Vec<_>>(), vec![(0, 2)]);
        assert_eq!(labeled_graph(3, 0b100).edges().collect::<Vec<_>>(), vec![(1, 2)]);
        assert_eq!(labeled_graphs(4).unwrap().count(), 64);
        assert!(labeled_graphs(8).is_err());
    }

    #[test]
    fn exhaustive_small_orders() {
        let opts = ExhaustiveOptions::default();
        let r2 = exhaustive_verify(2, &opts).unwrap();
        assert_eq!((r2.graphs_checked, r2.failures.len()), (1, 0));
        let r3 = exhaustive_verify(3, &opts).unwrap();
        assert_eq!((r3.labeled_graphs, r3.graphs_checked), (8, 4));
        assert!(r3.failures.is_empty());
        let r1 = exhaustive_verify(1, &opts).unwrap();
        assert_eq!(r1.graphs_checked, 0);
        assert!(exhaustive_verify(8, &opts).is_err());
    }

    #[test]
    fn sequential_and_parallel_runs_agree() {
        let seq = exhaustive_verify(
            5,
            &ExhaustiveOptions {
                jobs: 1,
                ..Default::default()
            },
        )
        .unwrap();
        let par = exhaustive_verify(
            5,
            &ExhaustiveOptions {
                jobs: 3,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(seq, par);
        assert_eq!(seq.graphs_checked, 728);
    }
}
