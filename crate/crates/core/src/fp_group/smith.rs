//! Abelian invariants through Smith normal form over arbitrary-precision integers.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::GroupPresentation;

/// The abelianization `Z^free_rank ⊕ Z/t_1 ⊕ … ⊕ Z/t_k` with `t_i | t_{i+1}` and `t_1 > 1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub free_rank: usize,
    pub torsion: Vec<BigUint>,
}

impl AbelianInvariants {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }

    /// Torsion coefficients as `u64`; panics if one does not fit.
    pub fn torsion_u64(&self) -> Vec<u64> {
        self.torsion
            .iter()
            .map(|t| t.to_u64().expect("torsion coefficient exceeds u64"))
            .collect()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t: Vec<String> = self.torsion.iter().map(|t| t.to_string()).collect();
        write!(f, "torsion [{}] free_rank {}", t.join(", "), self.free_rank)
    }
}

/// Abelian invariants of the group presented by `pres`, from the relation
/// matrix of exponent sums.
pub fn abelian_invariants(pres: &GroupPresentation) -> AbelianInvariants {
    let n = pres.generator_count();
    let mut m = SparseMatrix::new(n);
    for r in pres.relators() {
        m.push_row(
            r.exponent_sums(n)
                .into_iter()
                .enumerate()
                .filter(|&(_, e)| e != 0)
                .map(|(c, e)| (c, BigInt::from(e))),
        );
    }
    let (rank, diagonal) = m.smith();
    AbelianInvariants {
        free_rank: n - rank,
        torsion: diagonal
            .into_iter()
            .filter(|d| !d.is_one())
            .map(|d| d.magnitude().clone())
            .collect(),
    }
}

/// Nonzero invariant factors of a dense integer matrix, as a divisor chain
/// (unit factors included).
pub fn smith_diagonal(matrix: &[Vec<BigInt>]) -> Vec<BigInt> {
    let cols = matrix.first().map_or(0, Vec::len);
    let mut m = SparseMatrix::new(cols);
    for row in matrix {
        assert_eq!(row.len(), cols, "ragged matrix");
        m.push_row(row.iter().enumerate().filter(|(_, v)| !v.is_zero()).map(|(c, v)| (c, v.clone())));
    }
    m.smith().1
}

struct SparseMatrix {
    rows: Vec<BTreeMap<usize, BigInt>>,
    // rows with a nonzero entry in each column
    cols: Vec<BTreeSet<usize>>,
}

impl SparseMatrix {
    fn new(columns: usize) -> Self {
        SparseMatrix {
            rows: Vec::new(),
            cols: vec![BTreeSet::new(); columns],
        }
    }

    fn push_row(&mut self, entries: impl IntoIterator<Item = (usize, BigInt)>) {
        let r = self.rows.len();
        let row: BTreeMap<usize, BigInt> = entries.into_iter().collect();
        if row.is_empty() {
            return;
        }
        for &c in row.keys() {
            self.cols[c].insert(r);
        }
        self.rows.push(row);
    }

    /// Rank and the nonzero invariant factors (positive, divisor chain).
    fn smith(mut self) -> (usize, Vec<BigInt>) {
        let mut diagonal = Vec::new();
        // unit pivots first: they keep the matrix sparse and integral
        while let Some((r, c)) = self.unit_pivot() {
            self.eliminate(r, c);
            diagonal.push(BigInt::one());
        }
        let live_cols: Vec<usize> = (0..self.cols.len()).filter(|&c| !self.cols[c].is_empty()).collect();
        let mut dense: Vec<Vec<BigInt>> = self
            .rows
            .iter()
            .filter(|r| !r.is_empty())
            .map(|r| live_cols.iter().map(|c| r.get(c).cloned().unwrap_or_default()).collect())
            .collect();
        diagonal.extend(dense_diagonal(&mut dense));
        normalize_chain(&mut diagonal);
        (diagonal.len(), diagonal)
    }

    /// A ±1 entry, preferring short rows in sparse columns.
    fn unit_pivot(&self) -> Option<(usize, usize)> {
        let mut best: Option<(usize, (usize, usize))> = None;
        for (r, row) in self.rows.iter().enumerate() {
            if row.is_empty() {
                continue;
            }
            for (&c, v) in row {
                if v.magnitude().is_one() {
                    let cost = (row.len() - 1) * (self.cols[c].len() - 1);
                    if best.is_none_or(|(b, _)| cost < b) {
                        best = Some((cost, (r, c)));
                        if cost == 0 {
                            return Some((r, c));
                        }
                    }
                }
            }
        }
        best.map(|(_, p)| p)
    }

    fn eliminate(&mut self, r: usize, c: usize) {
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let unit = pivot_row[&c].clone();
        let others: Vec<usize> = self.cols[c].iter().copied().filter(|&o| o != r).collect();
        for o in others {
            // row_o -= (row_o[c] / unit) * pivot_row, and 1/unit = unit
            let factor = &self.rows[o][&c] * &unit;
            for (&k, v) in &pivot_row {
                let entry = self.rows[o].entry(k).or_default();
                *entry -= &factor * v;
                if entry.is_zero() {
                    self.rows[o].remove(&k);
                    self.cols[k].remove(&o);
                } else {
                    self.cols[k].insert(o);
                }
            }
        }
        for &k in pivot_row.keys() {
            self.cols[k].remove(&r);
        }
    }
}

/// Diagonalizes a dense matrix in place and returns the nonzero diagonal.
fn dense_diagonal(m: &mut [Vec<BigInt>]) -> Vec<BigInt> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    for t in 0..rows.min(cols) {
        loop {
            // smallest nonzero entry of the trailing block goes to (t, t)
            let mut best: Option<(usize, usize)> = None;
            for (i, row) in m.iter().enumerate().skip(t) {
                for (j, v) in row.iter().enumerate().skip(t) {
                    if !v.is_zero() && best.is_none_or(|(bi, bj)| v.magnitude() < m[bi][bj].magnitude()) {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return out;
            };
            m.swap(t, bi);
            for row in m.iter_mut() {
                row.swap(t, bj);
            }
            let p = m[t][t].clone();
            let mut clean = true;
            for i in t + 1..rows {
                if m[i][t].is_zero() {
                    continue;
                }
                let q = m[i][t].div_floor(&p);
                let (top, rest) = m.split_at_mut(i);
                for (x, y) in rest[0][t..].iter_mut().zip(&top[t][t..]) {
                    *x -= &q * y;
                }
                clean &= m[i][t].is_zero();
            }
            for j in t + 1..cols {
                if m[t][j].is_zero() {
                    continue;
                }
                let q = m[t][j].div_floor(&p);
                for row in m.iter_mut().skip(t) {
                    let delta = &q * &row[t];
                    row[j] -= delta;
                }
                clean &= m[t][j].is_zero();
            }
            if clean {
                out.push(p.abs());
                break;
            }
        }
    }
    out
}

/// Turns a list of positive integers into the divisor chain of the same
/// diagonal matrix by gcd/lcm exchanges.
fn normalize_chain(d: &mut [BigInt]) {
    for x in d.iter_mut() {
        if x.sign() == Sign::Minus {
            *x = -x.clone();
        }
    }
    for i in 0..d.len() {
        for j in i + 1..d.len() {
            let g = d[i].gcd(&d[j]);
            if g != d[i] {
                let l = d[i].lcm(&d[j]);
                d[i] = g;
                d[j] = l;
            }
        }
    }
}
