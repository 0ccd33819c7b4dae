//! Exact dense linear algebra over the rationals.
//!
//! Adjacency systems are integral, so working in `Q` is lossless: a rational
//! linear system solvable over `R` is already solvable over `Q` (Gaussian
//! elimination never leaves the field generated by the entries). Row-space
//! membership over the reals is therefore decided here exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigRational>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            entries: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * cols);
        for row in rows {
            if row.len() != cols {
                return Err(Error::LengthMismatch {
                    expected: cols,
                    got: row.len(),
                });
            }
            entries.extend(row);
        }
        Ok(Self {
            rows: n,
            cols,
            entries,
        })
    }

    pub fn from_integer_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| BigRational::from_integer(v.into())).collect())
                .collect(),
        )
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigRational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    /// `Mᵀ·c`, i.e. the linear combination of rows weighted by `c`.
    pub fn combine_rows(&self, coefficients: &[BigRational]) -> Result<Vec<BigRational>> {
        if coefficients.len() != self.rows {
            return Err(Error::LengthMismatch {
                expected: self.rows,
                got: coefficients.len(),
            });
        }
        let mut out = vec![BigRational::zero(); self.cols];
        for (i, c) in coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            for (o, a) in out.iter_mut().zip(self.row(i)) {
                if !a.is_zero() {
                    *o += c * a;
                }
            }
        }
        Ok(out)
    }

    /// Rank over `Q` by fraction-free (Bareiss) elimination. Each row is
    /// first scaled to integers; the pivot in each column is the first
    /// nonzero entry at or below the current row.
    pub fn rank(&self) -> usize {
        let mut a: Vec<Vec<BigInt>> = (0..self.rows).map(|i| integer_row(self.row(i))).collect();
        let mut prev = BigInt::one();
        let mut r = 0;
        for col in 0..self.cols {
            if r == self.rows {
                break;
            }
            let Some(p) = (r..self.rows).find(|&i| !a[i][col].is_zero()) else {
                continue;
            };
            a.swap(p, r);
            let (top, rest) = a.split_at_mut(r + 1);
            let pivot_row = &top[r];
            let pivot = &pivot_row[col];
            for row in rest.iter_mut() {
                let lead = row[col].clone();
                for j in col + 1..self.cols {
                    let num = pivot * &row[j] - &lead * &pivot_row[j];
                    let (q, rem) = num.div_rem(&prev);
                    debug_assert!(rem.is_zero(), "Bareiss division must be exact");
                    row[j] = q;
                }
                row[col] = BigInt::zero();
            }
            prev = a[r][col].clone();
            r += 1;
        }
        r
    }

    pub fn row_space(&self) -> RowSpace {
        RowSpace::new(self)
    }
}

fn integer_row(row: &[BigRational]) -> Vec<BigInt> {
    let lcm = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    row.iter()
        .map(|x| x.numer() * (&lcm / x.denom()))
        .collect()
}

/// Symmetric 0/1 matrix with zero diagonal, rows in vertex order.
pub fn adjacency_matrix(g: &Graph) -> RationalMatrix {
    let n = g.n();
    let mut m = RationalMatrix::zeros(n, n);
    for (i, j) in g.edges() {
        m.set(i, j, BigRational::one());
        m.set(j, i, BigRational::one());
    }
    m
}

pub fn nullity(g: &Graph) -> usize {
    g.n() - adjacency_matrix(g).rank()
}

/// Proof that `target` lies in the row space: `Mᵀ·coefficients = target`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MembershipCertificate {
    pub coefficients: Vec<BigRational>,
    pub target: Vec<u8>,
}

impl MembershipCertificate {
    /// Exact recomputation of `Mᵀ·c` against the target.
    pub fn verify(&self, m: &RationalMatrix) -> bool {
        if self.target.len() != m.cols() {
            return false;
        }
        match m.combine_rows(&self.coefficients) {
            Ok(v) => v
                .iter()
                .zip(&self.target)
                .all(|(a, &t)| *a == BigRational::from_integer(t.into())),
            Err(_) => false,
        }
    }
}

/// Solves `Mᵀc = x` by Gauss–Jordan elimination, setting free coefficients to
/// zero. Returns `None` when `x` is outside the row space.
pub fn solve_membership(m: &RationalMatrix, x: &[u8]) -> Result<Option<MembershipCertificate>> {
    if x.len() != m.cols() {
        return Err(Error::LengthMismatch {
            expected: m.cols(),
            got: x.len(),
        });
    }
    let unknowns = m.rows();
    // One equation per column of M: sum_i c_i * M[i][j] = x_j.
    let mut sys: Vec<Vec<BigRational>> = (0..m.cols())
        .map(|j| {
            let mut eq: Vec<BigRational> = (0..unknowns).map(|i| m.get(i, j).clone()).collect();
            eq.push(BigRational::from_integer(x[j].into()));
            eq
        })
        .collect();
    let eqs = sys.len();
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        if r == eqs {
            break;
        }
        let Some(p) = (r..eqs).find(|&i| !sys[i][col].is_zero()) else {
            continue;
        };
        sys.swap(p, r);
        let inv = sys[r][col].recip();
        for v in sys[r].iter_mut() {
            *v *= &inv;
        }
        let pivot_row = sys[r].clone();
        for (i, row) in sys.iter_mut().enumerate() {
            if i == r || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (v, p) in row.iter_mut().zip(&pivot_row) {
                if !p.is_zero() {
                    *v -= &f * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
    }
    if sys[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return Ok(None);
    }
    let mut coefficients = vec![BigRational::zero(); unknowns];
    for (k, &col) in pivots.iter().enumerate() {
        coefficients[col] = sys[k][unknowns].clone();
    }
    let cert = MembershipCertificate {
        coefficients,
        target: x.to_vec(),
    };
    assert!(cert.verify(m), "elimination produced an invalid certificate");
    Ok(Some(cert))
}

/// Smallest index of a row equal to `x`.
pub fn is_row(m: &RationalMatrix, x: &[u8]) -> Result<Option<usize>> {
    if x.len() != m.cols() {
        return Err(Error::LengthMismatch {
            expected: m.cols(),
            got: x.len(),
        });
    }
    Ok((0..m.rows()).find(|&i| {
        m.row(i)
            .iter()
            .zip(x)
            .all(|(a, &b)| *a == BigRational::from_integer(b.into()))
    }))
}

/// Reduced row-echelon basis of a row space, built once and reused for many
/// membership queries.
#[derive(Debug, Clone)]
pub struct RowSpace {
    cols: usize,
    basis: Vec<Vec<BigRational>>,
    pivots: Vec<usize>,
}

impl RowSpace {
    pub fn new(m: &RationalMatrix) -> Self {
        let mut rows: Vec<Vec<BigRational>> = (0..m.rows()).map(|i| m.row(i).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut r = 0;
        for col in 0..m.cols() {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
                continue;
            };
            rows.swap(p, r);
            let inv = rows[r][col].recip();
            for v in rows[r].iter_mut() {
                *v *= &inv;
            }
            let pivot_row = rows[r].clone();
            for (i, row) in rows.iter_mut().enumerate() {
                if i == r || row[col].is_zero() {
                    continue;
                }
                let f = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    if !p.is_zero() {
                        *v -= &f * p;
                    }
                }
            }
            pivots.push(col);
            r += 1;
        }
        rows.truncate(r);
        Self {
            cols: m.cols(),
            basis: rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// In reduced echelon form the only candidate combination is
    /// `sum_k x[pivot_k] * basis_k`; `x` is in the span iff it matches on
    /// every non-pivot column.
    pub fn contains(&self, x: &[u8]) -> bool {
        debug_assert_eq!(x.len(), self.cols);
        let active: Vec<&Vec<BigRational>> = self
            .pivots
            .iter()
            .zip(&self.basis)
            .filter(|(&p, _)| x[p] != 0)
            .map(|(_, row)| row)
            .collect();
        let mut pivot_mask = vec![false; self.cols];
        for &p in &self.pivots {
            pivot_mask[p] = true;
        }
        (0..self.cols).filter(|&j| !pivot_mask[j]).all(|j| {
            let mut s = BigRational::zero();
            for row in &active {
                if !row[j].is_zero() {
                    s += &row[j];
                }
            }
            s == BigRational::from_integer(x[j].into())
        })
    }
}

/// Formats a rational as `p/q` with a positive denominator.
pub fn format_rational(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

/// Parses `p/q` or a bare integer `p`.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let bad = || Error::InvalidArgument(format!("not a rational: {s:?}"));
    let (p, q) = match s.split_once('/') {
        Some((p, q)) => (p, q),
        None => (s, "1"),
    };
    let p: BigInt = p.trim().parse().map_err(|_| bad())?;
    let q: BigInt = q.trim().parse().map_err(|_| bad())?;
    if q.is_zero() {
        return Err(bad());
    }
    let r = BigRational::new(p, q);
    debug_assert!(r.denom().is_positive());
    Ok(r)
}
