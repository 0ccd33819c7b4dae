//! Constructive witnesses: non-zero 0/1 vectors in the row space of `A(Γ)`
//! that are not rows of `A(Γ)`, each carried with an exact certificate.
//!
//! Every strategy re-verifies its output before handing it back, so a
//! returned [`Witness`] always passes [`verify_witness`].

use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::families::{build, Family, FamilySpec};
use crate::graph::{Diameter, Graph, MultiplicityVector};
use crate::linalg::{adjacency_matrix, is_row, MembershipCertificate, RationalMatrix};
use crate::oracle;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    CompleteAllOnes,
    DisjointNeighborhood,
    DiamGe4Path,
    DominatingRegular,
    CatalogRank5,
    Lifted,
    Oracle,
}

impl Strategy {
    /// Order tried by [`find_witness`]: structural checks first, then degree
    /// pattern, exact catalog match, twin contraction and finally brute force.
    pub const DISPATCH_ORDER: [Strategy; 7] = [
        Strategy::CompleteAllOnes,
        Strategy::DisjointNeighborhood,
        Strategy::DiamGe4Path,
        Strategy::DominatingRegular,
        Strategy::CatalogRank5,
        Strategy::Lifted,
        Strategy::Oracle,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Strategy::CompleteAllOnes => "complete-all-ones",
            Strategy::DisjointNeighborhood => "disjoint-neighborhood",
            Strategy::DiamGe4Path => "diam-ge4-path",
            Strategy::DominatingRegular => "dominating-regular",
            Strategy::CatalogRank5 => "catalog-rank5",
            Strategy::Lifted => "lifted",
            Strategy::Oracle => "oracle",
        }
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Strategy {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Strategy::DISPATCH_ORDER
            .into_iter()
            .find(|st| st.name() == s.trim())
            .ok_or_else(|| Error::InvalidArgument(format!("unknown strategy {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub vector: Vec<u8>,
    pub certificate: MembershipCertificate,
    pub strategy: Strategy,
}

impl Witness {
    pub fn vector_string(&self) -> String {
        self.vector.iter().map(|&b| char::from(b'0' + b)).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StrategyOutcome {
    pub applicable: bool,
    pub witness: Option<Witness>,
    pub reason: Option<String>,
}

impl StrategyOutcome {
    fn inapplicable(reason: impl Into<String>) -> Self {
        Self {
            applicable: false,
            witness: None,
            reason: Some(reason.into()),
        }
    }

    fn failed(reason: impl Into<String>) -> Self {
        Self {
            applicable: true,
            witness: None,
            reason: Some(reason.into()),
        }
    }

    fn found(w: Witness) -> Self {
        Self {
            applicable: true,
            witness: Some(w),
            reason: None,
        }
    }
}

/// True iff `w.vector` is a non-zero 0/1 vector of length `n`, the
/// certificate reproduces it exactly, and it is not a row of `A(g)`.
pub fn verify_witness(g: &Graph, w: &Witness) -> bool {
    verify_against(&adjacency_matrix(g), w)
}

fn verify_against(a: &RationalMatrix, w: &Witness) -> bool {
    w.vector.len() == a.cols()
        && w.vector.iter().all(|&b| b <= 1)
        && w.vector.contains(&1)
        && w.certificate.target == w.vector
        && w.certificate.verify(a)
        && matches!(is_row(a, &w.vector), Ok(None))
}

fn certify(a: &RationalMatrix, coefficients: Vec<BigRational>, strategy: Strategy) -> StrategyOutcome {
    let sum = match a.combine_rows(&coefficients) {
        Ok(v) => v,
        Err(e) => return StrategyOutcome::failed(e.to_string()),
    };
    let mut vector = Vec::with_capacity(sum.len());
    for v in &sum {
        if v.is_zero() {
            vector.push(0);
        } else if v.is_one() {
            vector.push(1);
        } else {
            return StrategyOutcome::failed(format!("combination has entry {v}, not 0/1"));
        }
    }
    let w = Witness {
        certificate: MembershipCertificate {
            coefficients,
            target: vector.clone(),
        },
        vector,
        strategy,
    };
    if verify_against(a, &w) {
        StrategyOutcome::found(w)
    } else {
        StrategyOutcome::failed("candidate is zero or occurs as a row")
    }
}

fn indicator(n: usize, support: &[usize]) -> Vec<BigRational> {
    let mut c = vec![BigRational::zero(); n];
    for &i in support {
        c[i] += BigRational::one();
    }
    c
}

/// All-ones as `1/(n-1)` times the sum of all rows of `K_n`.
pub fn witness_complete(g: &Graph) -> StrategyOutcome {
    let n = g.n();
    if n < 2 || !g.is_complete() {
        return StrategyOutcome::inapplicable("not a complete graph on at least two vertices");
    }
    let c = vec![BigRational::new(1.into(), ((n - 1) as i64).into()); n];
    certify(&adjacency_matrix(g), c, Strategy::CompleteAllOnes)
}

/// Sum of the rows of an adjacent pair with no common neighbor.
pub fn witness_disjoint_nbhd(g: &Graph) -> StrategyOutcome {
    match g.find_adjacent_disjoint_pair() {
        Some((u, v)) => certify(
            &adjacency_matrix(g),
            indicator(g.n(), &[u, v]),
            Strategy::DisjointNeighborhood,
        ),
        None => StrategyOutcome::inapplicable("every edge lies in a triangle"),
    }
}

/// For a diametral geodesic `p_0 ~ … ~ p_ℓ` with `ℓ >= 4`, the sum of the
/// rows of `p_1` and `p_ℓ`. No vertex outside the path is adjacent to both
/// (that would give a `p_0`-`p_ℓ` walk of length 3), so the sum is 0/1.
pub fn witness_diam_ge4(g: &Graph) -> StrategyOutcome {
    match g.diameter() {
        Diameter::Finite(d) if d >= 4 => {}
        d => return StrategyOutcome::inapplicable(format!("diameter is {d}, need at least 4")),
    }
    let geo = match g.diametral_geodesic() {
        Ok(p) => p,
        Err(e) => return StrategyOutcome::failed(e.to_string()),
    };
    let support = [geo.path[1], geo.path[geo.ell]];
    certify(&adjacency_matrix(g), indicator(g.n(), &support), Strategy::DiamGe4Path)
}

/// Exactly one dominating vertex `h` and every other vertex of degree `d`:
/// `(n-d)/(n-1)·R_h + 1/(n-1)·Σ_{v≠h} R_v` is all-ones.
pub fn witness_dominating_regular(g: &Graph) -> StrategyOutcome {
    let n = g.n();
    if n < 3 || g.is_complete() {
        return StrategyOutcome::inapplicable("complete or too small");
    }
    let dom = g.dominating_vertices();
    let [hub] = dom[..] else {
        return StrategyOutcome::inapplicable(format!("{} dominating vertices", dom.len()));
    };
    let mut degrees = (0..n).filter(|&v| v != hub).map(|v| g.neighbors(v).count_ones(..));
    let d = degrees.next().unwrap();
    if !degrees.all(|x| x == d) || d < 1 || d > n - 2 {
        return StrategyOutcome::inapplicable("non-dominating vertices have unequal degrees");
    }
    let denom = BigRational::from_integer(((n - 1) as i64).into());
    let mut c = vec![BigRational::one() / &denom; n];
    c[hub] = BigRational::from_integer(((n - d) as i64).into()) / &denom;
    certify(&adjacency_matrix(g), c, Strategy::DominatingRegular)
}

/// A stored rank-5 matrix with its known all-ones-style combination.
pub struct CatalogEntry {
    pub family: Family,
    pub vector: &'static [u8],
    /// Coefficients as `(numerator, denominator)`.
    pub coefficients: &'static [(i64, i64)],
}

impl CatalogEntry {
    pub fn graph(&self) -> Graph {
        build(&FamilySpec::fixed(self.family)).expect("catalog graphs are valid")
    }

    pub fn coefficient_vector(&self) -> Vec<BigRational> {
        self.coefficients
            .iter()
            .map(|&(p, q)| BigRational::new(p.into(), q.into()))
            .collect()
    }
}

pub const RANK5_CATALOG: [CatalogEntry; 4] = [
    CatalogEntry {
        family: Family::D6,
        vector: &[0, 1, 1, 1, 1, 1, 1],
        coefficients: &[(0, 1), (-1, 2), (1, 2), (1, 1), (0, 1), (1, 2), (0, 1)],
    },
    CatalogEntry {
        family: Family::D14,
        vector: &[1, 1, 1, 1, 1, 1],
        coefficients: &[(1, 2), (-1, 2), (0, 1), (0, 1), (1, 2), (1, 1)],
    },
    CatalogEntry {
        family: Family::D15,
        vector: &[1, 1, 1, 1, 1, 1],
        coefficients: &[(0, 1), (0, 1), (0, 1), (1, 2), (1, 2), (1, 2)],
    },
    CatalogEntry {
        family: Family::D17,
        vector: &[1, 1, 1, 1, 1, 1, 1],
        coefficients: &[(-1, 2), (1, 2), (1, 1), (0, 1), (1, 2), (0, 1), (0, 1)],
    },
];

/// Label-exact match against the stored rank-5 matrices.
pub fn witness_catalog_rank5(g: &Graph) -> StrategyOutcome {
    for entry in &RANK5_CATALOG {
        if entry.vector.len() == g.n() && entry.graph() == *g {
            return certify(&adjacency_matrix(g), entry.coefficient_vector(), Strategy::CatalogRank5);
        }
    }
    StrategyOutcome::inapplicable("adjacency matrix not in the rank-5 catalog")
}

/// Lifts a witness of `g` to the blow-up whose vertex `x` clones
/// `origin[x]`: entries are repeated per clone and each coefficient is
/// placed on the first clone of its vertex.
fn lift_along(g: &Graph, origin: &[usize], w: &Witness) -> Result<StrategyOutcome> {
    if w.vector.len() != g.n() || w.certificate.coefficients.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: w.vector.len(),
        });
    }
    let big = g.lift_through(origin);
    let mut placed = vec![false; g.n()];
    let coefficients: Vec<BigRational> = origin
        .iter()
        .map(|&o| {
            if std::mem::replace(&mut placed[o], true) {
                BigRational::zero()
            } else {
                w.certificate.coefficients[o].clone()
            }
        })
        .collect();
    let vector: Vec<u8> = origin.iter().map(|&o| w.vector[o]).collect();
    let a = adjacency_matrix(&big);
    let lifted = Witness {
        certificate: MembershipCertificate {
            coefficients,
            target: vector.clone(),
        },
        vector,
        strategy: Strategy::Lifted,
    };
    if !lifted.certificate.verify(&a) {
        return Ok(StrategyOutcome::failed("lifted certificate does not reproduce the vector"));
    }
    if let Some(i) = is_row(&a, &lifted.vector)? {
        return Ok(StrategyOutcome::failed(format!("lifted vector equals row {i}")));
    }
    Ok(StrategyOutcome::found(lifted))
}

/// Witness for `g ⊙ m` built from a witness `w` of `g`.
pub fn lift_witness(g: &Graph, m: &MultiplicityVector, w: &Witness) -> Result<StrategyOutcome> {
    if m.len() != g.n() {
        return Err(Error::LengthMismatch {
            expected: g.n(),
            got: m.len(),
        });
    }
    lift_along(g, &m.origin_map(), w)
}

pub const DEFAULT_ORACLE_LIMIT: usize = 16;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchOptions {
    pub oracle_limit: usize,
    pub enabled: Vec<Strategy>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        Self {
            oracle_limit: DEFAULT_ORACLE_LIMIT,
            enabled: Strategy::DISPATCH_ORDER.to_vec(),
        }
    }
}

impl SearchOptions {
    pub fn with_oracle_limit(oracle_limit: usize) -> Self {
        Self {
            oracle_limit,
            ..Self::default()
        }
    }

    pub fn is_enabled(&self, s: Strategy) -> bool {
        self.enabled.contains(&s)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SearchReport {
    pub witness: Option<Witness>,
    /// Why each strategy that was tried did not produce a witness.
    pub rejected: Vec<(Strategy, String)>,
    /// The oracle was enabled but the graph exceeded the oracle limit.
    pub oracle_skipped: bool,
}

/// Tries every enabled strategy in [`Strategy::DISPATCH_ORDER`] and returns
/// the first verified witness.
///
/// Disconnected graphs are handled on the first component with an edge and
/// padded with zeros; any row from another component vanishes on that
/// component while the witness does not.
pub fn find_witness(g: &Graph, opts: &SearchOptions) -> Result<SearchReport> {
    if g.edge_count() == 0 {
        return Err(Error::Edgeless);
    }
    if g.is_connected() {
        return find_connected(g, opts);
    }
    let comp = g
        .components()
        .into_iter()
        .find(|c| c.len() >= 2)
        .expect("a graph with an edge has a nontrivial component");
    let sub = g.induced_subgraph(&comp)?;
    let mut report = find_connected(&sub, opts)?;
    if let Some(w) = report.witness.take() {
        let mut vector = vec![0u8; g.n()];
        let mut coefficients = vec![BigRational::zero(); g.n()];
        for (k, &v) in comp.iter().enumerate() {
            vector[v] = w.vector[k];
            coefficients[v] = w.certificate.coefficients[k].clone();
        }
        let padded = Witness {
            certificate: MembershipCertificate {
                coefficients,
                target: vector.clone(),
            },
            vector,
            strategy: w.strategy,
        };
        debug_assert!(verify_witness(g, &padded));
        report.witness = Some(padded);
    }
    Ok(report)
}

fn find_connected(g: &Graph, opts: &SearchOptions) -> Result<SearchReport> {
    let mut report = SearchReport {
        witness: None,
        rejected: Vec::new(),
        oracle_skipped: false,
    };
    for s in Strategy::DISPATCH_ORDER {
        if !opts.is_enabled(s) {
            continue;
        }
        let outcome = match s {
            Strategy::CompleteAllOnes => witness_complete(g),
            Strategy::DisjointNeighborhood => witness_disjoint_nbhd(g),
            Strategy::DiamGe4Path => witness_diam_ge4(g),
            Strategy::DominatingRegular => witness_dominating_regular(g),
            Strategy::CatalogRank5 => witness_catalog_rank5(g),
            Strategy::Lifted => witness_twin_contraction(g, opts)?,
            Strategy::Oracle => {
                if g.n() > opts.oracle_limit {
                    report.oracle_skipped = true;
                    report.rejected.push((
                        s,
                        format!("{} vertices exceed oracle limit {}", g.n(), opts.oracle_limit),
                    ));
                    continue;
                }
                let r = oracle::brute_force_witness(g, opts.oracle_limit)?;
                match r.witness {
                    Some(w) => StrategyOutcome::found(w),
                    None => StrategyOutcome::failed(format!(
                        "no qualifying vector among {} candidates",
                        r.candidates_checked
                    )),
                }
            }
        };
        match outcome.witness {
            Some(w) => {
                report.witness = Some(w);
                return Ok(report);
            }
            None => report
                .rejected
                .push((s, outcome.reason.unwrap_or_else(|| "no witness".into()))),
        }
    }
    Ok(report)
}

/// Collapses twin classes, solves the reduced graph and lifts the result.
fn witness_twin_contraction(g: &Graph, opts: &SearchOptions) -> Result<StrategyOutcome> {
    if g.is_reduced() {
        return Ok(StrategyOutcome::inapplicable("graph is reduced"));
    }
    let (reduced, class_of) = g.contract_twins();
    let inner = find_connected(&reduced, opts)?;
    match inner.witness {
        Some(w) => lift_along(&reduced, &class_of, &w),
        None => Ok(StrategyOutcome::failed("no witness for the reduced graph")),
    }
}
