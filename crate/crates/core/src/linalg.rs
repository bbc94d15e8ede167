//! Dense exact matrices: elimination, rank, kernels and inverses.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{check_dim, Error, Result};
use crate::rational::{dot, format_rat, parse_rat, Rat, RatVector};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    nrows: usize,
    ncols: usize,
    rows: Vec<RatVector>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(format_rat).collect())
            .collect();
        write!(f, "RatMatrix{rows:?}")
    }
}

impl RatMatrix {
    pub fn from_rows(nrows: usize, ncols: usize, rows: Vec<RatVector>) -> Result<Self> {
        check_dim(nrows, rows.len())?;
        for r in &rows {
            check_dim(ncols, r.len())?;
        }
        Ok(Self { nrows, ncols, rows })
    }

    /// Builds from a nonempty list of rows; the column count is taken from
    /// the first row.
    pub fn new(rows: Vec<RatVector>) -> Result<Self> {
        let ncols = rows.first().map_or(0, Vec::len);
        Self::from_rows(rows.len(), ncols, rows)
    }

    pub fn from_ints(rows: &[&[i64]]) -> Self {
        let rows: Vec<RatVector> = rows.iter().map(|r| crate::rational::ints(r)).collect();
        Self::new(rows).expect("ragged integer matrix")
    }

    pub fn from_columns(nrows: usize, cols: &[RatVector]) -> Result<Self> {
        for c in cols {
            check_dim(nrows, c.len())?;
        }
        let rows = (0..nrows)
            .map(|i| cols.iter().map(|c| c[i].clone()).collect())
            .collect();
        Ok(Self { nrows, ncols: cols.len(), rows })
    }

    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        Self { nrows, ncols, rows: vec![vec![Rat::zero(); ncols]; nrows] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i][i] = Rat::one();
        }
        m
    }

    pub fn diagonal(d: &[Rat]) -> Self {
        let mut m = Self::zeros(d.len(), d.len());
        for (i, x) in d.iter().enumerate() {
            m.rows[i][i] = x.clone();
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.nrows
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[RatVector] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &RatVector {
        &self.rows[i]
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: Rat) {
        self.rows[i][j] = v;
    }

    pub fn column(&self, j: usize) -> RatVector {
        self.rows.iter().map(|r| r[j].clone()).collect()
    }

    pub fn columns(&self) -> Vec<RatVector> {
        (0..self.ncols).map(|j| self.column(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_columns(self.ncols, &self.rows).expect("transpose shape")
    }

    pub fn apply(&self, x: &[Rat]) -> Result<RatVector> {
        check_dim(self.ncols, x.len())?;
        Ok(self.rows.iter().map(|r| dot(r, x)).collect())
    }

    pub fn mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        check_dim(self.ncols, other.nrows)?;
        let cols = other.columns();
        let rows = self
            .rows
            .iter()
            .map(|r| cols.iter().map(|c| dot(r, c)).collect())
            .collect();
        Ok(RatMatrix { nrows: self.nrows, ncols: other.ncols, rows })
    }

    fn zip_with(&self, other: &RatMatrix, f: impl Fn(&Rat, &Rat) -> Rat) -> Result<RatMatrix> {
        check_dim(self.nrows, other.nrows)?;
        check_dim(self.ncols, other.ncols)?;
        let rows = self
            .rows
            .iter()
            .zip(&other.rows)
            .map(|(a, b)| a.iter().zip(b).map(|(x, y)| f(x, y)).collect())
            .collect();
        Ok(RatMatrix { nrows: self.nrows, ncols: self.ncols, rows })
    }

    pub fn add(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &RatMatrix) -> Result<RatMatrix> {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, c: &Rat) -> RatMatrix {
        let rows = self.rows.iter().map(|r| r.iter().map(|x| c * x).collect()).collect();
        RatMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    pub fn map(&self, f: impl Fn(&Rat) -> Rat) -> RatMatrix {
        let rows = self.rows.iter().map(|r| r.iter().map(&f).collect()).collect();
        RatMatrix { nrows: self.nrows, ncols: self.ncols, rows }
    }

    /// Reduced row echelon form and its pivot columns.
    pub fn rref(&self) -> (RatMatrix, Vec<usize>) {
        let mut m = self.rows.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..self.ncols {
            if r == self.nrows {
                break;
            }
            let Some(p) = (r..self.nrows).find(|&i| !m[i][c].is_zero()) else {
                continue;
            };
            m.swap(r, p);
            let inv = m[r][c].recip();
            for x in m[r].iter_mut() {
                *x *= &inv;
            }
            for i in 0..self.nrows {
                if i != r && !m[i][c].is_zero() {
                    let factor = m[i][c].clone();
                    for j in c..self.ncols {
                        let delta = &factor * &m[r][j];
                        m[i][j] -= delta;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (RatMatrix { nrows: self.nrows, ncols: self.ncols, rows: m }, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of `{x : A x = 0}`, one vector per free column.
    pub fn nullspace(&self) -> Vec<RatVector> {
        let (r, pivots) = self.rref();
        let free: Vec<usize> = (0..self.ncols).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![Rat::zero(); self.ncols];
                v[f] = Rat::one();
                for (i, &p) in pivots.iter().enumerate() {
                    v[p] = -r.rows[i][f].clone();
                }
                v
            })
            .collect()
    }

    pub fn inverse(&self) -> Option<RatMatrix> {
        if self.nrows != self.ncols {
            return None;
        }
        let n = self.nrows;
        let aug: Vec<RatVector> = self
            .rows
            .iter()
            .enumerate()
            .map(|(i, r)| {
                let mut row = r.clone();
                row.extend((0..n).map(|j| if i == j { Rat::one() } else { Rat::zero() }));
                row
            })
            .collect();
        let (r, pivots) = RatMatrix { nrows: n, ncols: 2 * n, rows: aug }.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let rows = r.rows.into_iter().map(|row| row[n..].to_vec()).collect();
        Some(RatMatrix { nrows: n, ncols: n, rows })
    }

    /// Some solution of `A x = b`, if one exists.
    pub fn solve(&self, b: &[Rat]) -> Result<Option<RatVector>> {
        check_dim(self.nrows, b.len())?;
        let aug: Vec<RatVector> = self
            .rows
            .iter()
            .zip(b)
            .map(|(r, bi)| {
                let mut row = r.clone();
                row.push(bi.clone());
                row
            })
            .collect();
        let (r, pivots) = RatMatrix { nrows: self.nrows, ncols: self.ncols + 1, rows: aug }.rref();
        if pivots.last() == Some(&self.ncols) {
            return Ok(None);
        }
        let mut x = vec![Rat::zero(); self.ncols];
        for (i, &p) in pivots.iter().enumerate() {
            x[p] = r.rows[i][self.ncols].clone();
        }
        Ok(Some(x))
    }
}

pub fn rank_of(vectors: &[RatVector]) -> usize {
    match vectors.first() {
        None => 0,
        Some(first) => RatMatrix::from_rows(vectors.len(), first.len(), vectors.to_vec())
            .map(|m| m.rank())
            .unwrap_or(0),
    }
}

/// Basis of `{x : v . x = 0 for all v in rows}` in dimension `dim`.
pub fn kernel_of(rows: &[RatVector], dim: usize) -> Vec<RatVector> {
    if rows.is_empty() {
        return (0..dim).map(|i| crate::rational::unit(dim, i)).collect();
    }
    RatMatrix::from_rows(rows.len(), dim, rows.to_vec())
        .expect("kernel_of: ragged rows")
        .nullspace()
}

/// Canonical basis of the span of `vectors`: the nonzero rows of the RREF.
pub fn span_basis(vectors: &[RatVector], dim: usize) -> Vec<RatVector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let (r, pivots) = RatMatrix::from_rows(vectors.len(), dim, vectors.to_vec())
        .expect("span_basis: ragged rows")
        .rref();
    r.rows.into_iter().take(pivots.len()).collect()
}

pub fn in_span(basis: &[RatVector], v: &[Rat]) -> bool {
    let dim = v.len();
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_basis(&all, dim).len() == span_basis(basis, dim).len()
}

impl Serialize for RatMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let rows: Vec<Vec<String>> =
            self.rows.iter().map(|r| r.iter().map(format_rat).collect()).collect();
        rows.serialize(s)
    }
}

impl<'de> Deserialize<'de> for RatMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let rows: Vec<Vec<String>> = Vec::deserialize(d)?;
        let parsed = rows
            .iter()
            .map(|r| r.iter().map(|s| parse_rat(s)).collect::<Result<RatVector>>())
            .collect::<Result<Vec<_>>>()
            .map_err(serde::de::Error::custom)?;
        RatMatrix::new(parsed).map_err(|e: Error| serde::de::Error::custom(e))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{frac, int, ints};

    #[test]
    fn rank_and_kernel() {
        let m = RatMatrix::from_ints(&[&[1, 2, 3], &[2, 4, 6], &[1, 0, 1]]);
        assert_eq!(m.rank(), 2);
        let k = m.nullspace();
        assert_eq!(k.len(), 1);
        assert!(m.apply(&k[0]).unwrap().iter().all(Zero::is_zero));
    }

    #[test]
    fn inverse_of_singular_is_none() {
        assert!(RatMatrix::from_ints(&[&[1, 2], &[2, 4]]).inverse().is_none());
        let inv = RatMatrix::from_ints(&[&[2, 0], &[0, 4]]).inverse().unwrap();
        assert_eq!(inv, RatMatrix::diagonal(&[frac(1, 2), frac(1, 4)]));
    }

    #[test]
    fn solve_consistent_and_inconsistent() {
        let m = RatMatrix::from_ints(&[&[1, 1], &[1, 1]]);
        assert!(m.solve(&ints(&[1, 2])).unwrap().is_none());
        let x = m.solve(&ints(&[3, 3])).unwrap().unwrap();
        assert_eq!(&x[0] + &x[1], int(3));
    }

    #[test]
    fn dimension_errors() {
        let m = RatMatrix::identity(2);
        assert!(matches!(m.apply(&ints(&[1, 2, 3])), Err(Error::DimensionMismatch { .. })));
        assert!(RatMatrix::new(vec![ints(&[1]), ints(&[1, 2])]).is_err());
    }
}
