//! Sparse matrices over a cyclotomic field.
//!
//! Morphisms between objects of the graded category are stored as sparse
//! row-major matrices. Rows are kept sorted by column and never contain an
//! explicit zero, so structural equality is value equality.

use std::collections::BTreeMap;

use crate::cyclotomic::CycNum;
use crate::error::{domain, Result};

/// A sparse matrix with entries in `Q(ζ_order)`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Matrix {
    order: u32,
    nrows: usize,
    ncols: usize,
    rows: Vec<Vec<(usize, CycNum)>>,
}

impl Matrix {
    pub fn zeros(order: u32, nrows: usize, ncols: usize) -> Self {
        Matrix {
            order,
            nrows,
            ncols,
            rows: vec![Vec::new(); nrows],
        }
    }

    pub fn identity(order: u32, n: usize) -> Self {
        Self::scalar_identity(&CycNum::one(order), n)
    }

    /// `c` times the `n × n` identity.
    pub fn scalar_identity(c: &CycNum, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                if c.is_zero() {
                    Vec::new()
                } else {
                    vec![(i, c.clone())]
                }
            })
            .collect();
        Matrix {
            order: c.order(),
            nrows: n,
            ncols: n,
            rows,
        }
    }

    /// Builds a matrix from `(row, col, value)` triples, summing repeats.
    ///
    /// # Panics
    /// Panics if an index is out of range or a value has the wrong order.
    pub fn from_entries(
        order: u32,
        nrows: usize,
        ncols: usize,
        entries: impl IntoIterator<Item = (usize, usize, CycNum)>,
    ) -> Self {
        let mut acc: Vec<BTreeMap<usize, CycNum>> = vec![BTreeMap::new(); nrows];
        for (i, j, v) in entries {
            assert!(i < nrows && j < ncols, "matrix index out of range");
            assert_eq!(v.order(), order, "matrix entry has the wrong order");
            match acc[i].get_mut(&j) {
                Some(x) => *x += &v,
                None => {
                    acc[i].insert(j, v);
                }
            }
        }
        let rows = acc
            .into_iter()
            .map(|m| m.into_iter().filter(|(_, v)| !v.is_zero()).collect())
            .collect();
        Matrix {
            order,
            nrows,
            ncols,
            rows,
        }
    }

    /// Builds a matrix from dense rows.
    pub fn from_dense(order: u32, ncols: usize, dense: &[Vec<CycNum>]) -> Result<Self> {
        let mut entries = Vec::new();
        for (i, row) in dense.iter().enumerate() {
            if row.len() != ncols {
                return domain(format!(
                    "row {i} has {} entries, expected {ncols}",
                    row.len()
                ));
            }
            for (j, v) in row.iter().enumerate() {
                if v.order() != order {
                    return domain(format!(
                        "entry ({i}, {j}) has order {}, expected {order}",
                        v.order()
                    ));
                }
                if !v.is_zero() {
                    entries.push((i, j, v.clone()));
                }
            }
        }
        Ok(Self::from_entries(order, dense.len(), ncols, entries))
    }

    /// A single column vector.
    pub fn column_vector(order: u32, entries: &[CycNum]) -> Self {
        Self::from_entries(
            order,
            entries.len(),
            1,
            entries
                .iter()
                .enumerate()
                .filter(|(_, v)| !v.is_zero())
                .map(|(i, v)| (i, 0, v.clone())),
        )
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    /// Nonzero entries of row `i`, sorted by column.
    pub fn row(&self, i: usize) -> &[(usize, CycNum)] {
        &self.rows[i]
    }

    /// Iterates over all nonzero entries as `(row, col, value)`.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &CycNum)> {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(Vec::len).sum()
    }

    pub fn get(&self, i: usize, j: usize) -> CycNum {
        match self.rows[i].binary_search_by_key(&j, |(c, _)| *c) {
            Ok(pos) => self.rows[i][pos].1.clone(),
            Err(_) => CycNum::zero(self.order),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(Vec::is_empty)
    }

    pub fn to_dense(&self) -> Vec<Vec<CycNum>> {
        let mut out = vec![vec![CycNum::zero(self.order); self.ncols]; self.nrows];
        for (i, j, v) in self.entries() {
            out[i][j] = v.clone();
        }
        out
    }

    /// Column `j` as a dense vector.
    pub fn column(&self, j: usize) -> Vec<CycNum> {
        (0..self.nrows).map(|i| self.get(i, j)).collect()
    }

    /// Matrix product `self · rhs`, i.e. the composite "first `rhs`, then `self`".
    pub fn mul(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.ncols != rhs.nrows {
            return domain(format!(
                "cannot multiply {}x{} by {}x{}",
                self.nrows, self.ncols, rhs.nrows, rhs.ncols
            ));
        }
        self.check_order(rhs)?;
        let rows = self
            .rows
            .iter()
            .map(|row| {
                let mut acc: BTreeMap<usize, CycNum> = BTreeMap::new();
                for (k, a) in row {
                    for (j, b) in &rhs.rows[*k] {
                        let p = a * b;
                        match acc.get_mut(j) {
                            Some(x) => *x += &p,
                            None => {
                                acc.insert(*j, p);
                            }
                        }
                    }
                }
                acc.into_iter().filter(|(_, v)| !v.is_zero()).collect()
            })
            .collect();
        Ok(Matrix {
            order: self.order,
            nrows: self.nrows,
            ncols: rhs.ncols,
            rows,
        })
    }

    /// Kronecker product with the left factor most significant.
    pub fn kron(&self, rhs: &Matrix) -> Result<Matrix> {
        self.check_order(rhs)?;
        let mut rows = Vec::with_capacity(self.nrows * rhs.nrows);
        for ra in &self.rows {
            for rb in &rhs.rows {
                let mut row = Vec::with_capacity(ra.len() * rb.len());
                for (ja, a) in ra {
                    for (jb, b) in rb {
                        row.push((ja * rhs.ncols + jb, a * b));
                    }
                }
                rows.push(row);
            }
        }
        Ok(Matrix {
            order: self.order,
            nrows: self.nrows * rhs.nrows,
            ncols: self.ncols * rhs.ncols,
            rows,
        })
    }

    pub fn add(&self, rhs: &Matrix) -> Result<Matrix> {
        if self.nrows != rhs.nrows || self.ncols != rhs.ncols {
            return domain("cannot add matrices of different shapes");
        }
        self.check_order(rhs)?;
        Ok(Self::from_entries(
            self.order,
            self.nrows,
            self.ncols,
            self.entries()
                .chain(rhs.entries())
                .map(|(i, j, v)| (i, j, v.clone())),
        ))
    }

    pub fn sub(&self, rhs: &Matrix) -> Result<Matrix> {
        self.add(&rhs.scale(&CycNum::from_int(self.order, -1)))
    }

    pub fn scale(&self, c: &CycNum) -> Matrix {
        if c.is_zero() {
            return Self::zeros(self.order, self.nrows, self.ncols);
        }
        Matrix {
            order: self.order,
            nrows: self.nrows,
            ncols: self.ncols,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|(j, v)| (*j, v * c)).collect())
                .collect(),
        }
    }

    pub fn transpose(&self) -> Matrix {
        Self::from_entries(
            self.order,
            self.ncols,
            self.nrows,
            self.entries().map(|(i, j, v)| (j, i, v.clone())),
        )
    }

    /// Reindexes rows and columns: entry `(i, j)` moves to `(row_map[i], col_map[j])`.
    pub fn permute(&self, row_map: &[usize], col_map: &[usize]) -> Matrix {
        Self::from_entries(
            self.order,
            self.nrows,
            self.ncols,
            self.entries()
                .map(|(i, j, v)| (row_map[i], col_map[j], v.clone())),
        )
    }

    /// Embeds every entry into `Q(ζ_m)`.
    pub fn embed(&self, m: u32) -> Result<Matrix> {
        let rows = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|(j, v)| Ok((*j, v.embed(m)?)))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Matrix {
            order: m,
            nrows: self.nrows,
            ncols: self.ncols,
            rows,
        })
    }

    /// Exact rank over `Q(ζ_order)` by sparse Gaussian elimination.
    pub fn rank(&self) -> usize {
        rank_of_rows(self.order, self.rows.iter().map(|r| r.iter().cloned().collect()))
    }

    fn check_order(&self, rhs: &Matrix) -> Result<()> {
        if self.order != rhs.order {
            return domain(format!(
                "matrix orders differ: {} and {}",
                self.order, rhs.order
            ));
        }
        Ok(())
    }
}

/// Rank of the span of a family of sparse vectors.
pub fn rank_of_rows(order: u32, rows: impl IntoIterator<Item = BTreeMap<usize, CycNum>>) -> usize {
    let mut pivots: BTreeMap<usize, BTreeMap<usize, CycNum>> = BTreeMap::new();
    for mut row in rows {
        row.retain(|_, v| !v.is_zero());
        loop {
            let Some((&lead, lead_val)) = row.iter().next() else {
                break;
            };
            match pivots.get(&lead) {
                Some(p) => {
                    let factor = lead_val.clone();
                    for (j, pv) in p {
                        let delta = &factor * pv;
                        let entry = row.entry(*j).or_insert_with(|| CycNum::zero(order));
                        *entry = &*entry - &delta;
                        if entry.is_zero() {
                            row.remove(j);
                        }
                    }
                }
                None => {
                    let inv = lead_val.inverse().expect("leading entry is nonzero");
                    let normalized = row.into_iter().map(|(j, v)| (j, &v * &inv)).collect();
                    pivots.insert(lead, normalized);
                    break;
                }
            }
        }
    }
    pivots.len()
}

/// Rank of the span of a family of dense vectors of equal length.
pub fn rank_of_vectors(order: u32, vectors: &[Vec<CycNum>]) -> usize {
    rank_of_rows(
        order,
        vectors.iter().map(|v| {
            v.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        }),
    )
}
