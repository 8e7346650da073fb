//! Exact dense linear algebra over the rationals.
//!
//! This is the substrate for every graded computation in the crate: echelon
//! forms, kernels, row-space sums and intersections, membership tests. All
//! operations are exact and deterministic; subspaces are canonicalized as
//! reduced row-echelon bases so that equality of subspaces is structural
//! equality of values.

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::rat::Rat;

/// Dense row-major matrix with exact rational entries.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MatrixQ {
    rows: usize,
    cols: usize,
    entries: Vec<Rat>,
}

/// Result of reduced row-echelon elimination.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    pub matrix: MatrixQ,
    pub pivots: Vec<usize>,
    pub rank: usize,
}

impl MatrixQ {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rat>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{rows}x{cols} matrix needs {} entries, got {}",
                rows * cols,
                entries.len()
            )));
        }
        Ok(MatrixQ { rows, cols, entries })
    }

    pub fn zero(rows: usize, cols: usize) -> Self {
        MatrixQ {
            rows,
            cols,
            entries: vec![Rat::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = MatrixQ::zero(n, n);
        for i in 0..n {
            *m.at_mut(i, i) = Rat::one();
        }
        m
    }

    /// Convenience constructor from integer entries.
    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Self {
        let entries = entries
            .iter()
            .map(|&v| Rat::from_integer(v.into()))
            .collect();
        MatrixQ::new(rows, cols, entries).expect("entry count")
    }

    pub fn from_rows(rows: Vec<Vec<Rat>>, cols: usize) -> Result<Self> {
        for r in &rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch(format!(
                    "row length {} != {cols}",
                    r.len()
                )));
            }
        }
        let n = rows.len();
        Ok(MatrixQ {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, r: usize, c: usize) -> &Rat {
        &self.entries[r * self.cols + c]
    }

    pub fn at_mut(&mut self, r: usize, c: usize) -> &mut Rat {
        &mut self.entries[r * self.cols + c]
    }

    pub fn row(&self, r: usize) -> &[Rat] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &[Rat]> {
        self.entries.chunks(self.cols)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn transpose(&self) -> MatrixQ {
        let mut t = MatrixQ::zero(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                *t.at_mut(c, r) = self.at(r, c).clone();
            }
        }
        t
    }

    pub fn matmul(&self, rhs: &MatrixQ) -> Result<MatrixQ> {
        if self.cols != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} * {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = MatrixQ::zero(self.rows, rhs.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..rhs.cols {
                    let b = rhs.at(k, c);
                    if !b.is_zero() {
                        *out.at_mut(r, c) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[Rat]) -> Result<Vec<Rat>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector length {} vs {} columns",
                v.len(),
                self.cols
            )));
        }
        Ok(self
            .row_iter()
            .map(|row| row.iter().zip(v).map(|(a, b)| a * b).sum())
            .collect())
    }

    pub fn sub(&self, rhs: &MatrixQ) -> Result<MatrixQ> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix subtraction".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a - b)
            .collect();
        MatrixQ::new(self.rows, self.cols, entries)
    }

    pub fn trace(&self) -> Rat {
        (0..self.rows.min(self.cols)).map(|i| self.at(i, i).clone()).sum()
    }

    pub fn scale(&self, s: &Rat) -> MatrixQ {
        MatrixQ {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    pub fn add(&self, rhs: &MatrixQ) -> Result<MatrixQ> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::DimensionMismatch("matrix addition".into()));
        }
        let entries = self
            .entries
            .iter()
            .zip(&rhs.entries)
            .map(|(a, b)| a + b)
            .collect();
        MatrixQ::new(self.rows, self.cols, entries)
    }

    /// Reduced row-echelon form by Gauss-Jordan elimination. The result has
    /// the same shape as the input (zero rows are kept) and is deterministic
    /// for a fixed input.
    pub fn rref(&self) -> Rref {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut pivot_row = 0usize;
        for col in 0..m.cols {
            if pivot_row == m.rows {
                break;
            }
            let Some(src) = (pivot_row..m.rows).find(|&r| !m.at(r, col).is_zero()) else {
                continue;
            };
            if src != pivot_row {
                for c in 0..m.cols {
                    let hi = src * m.cols + c;
                    let lo = pivot_row * m.cols + c;
                    m.entries.swap(hi, lo);
                }
            }
            let inv = m.at(pivot_row, col).clone().recip();
            for c in col..m.cols {
                let v = m.at(pivot_row, c) * &inv;
                *m.at_mut(pivot_row, c) = v;
            }
            for r in 0..m.rows {
                if r == pivot_row || m.at(r, col).is_zero() {
                    continue;
                }
                let factor = m.at(r, col).clone();
                for c in col..m.cols {
                    let v = m.at(r, c) - &factor * m.at(pivot_row, c);
                    *m.at_mut(r, c) = v;
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        let rank = pivots.len();
        Rref { matrix: m, pivots, rank }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// Basis of the right kernel `{v : Mv = 0}`, in canonical echelon form.
    pub fn kernel_basis(&self) -> RowBasis {
        let Rref { matrix: r, pivots, rank } = self.rref();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let mut rows = Vec::with_capacity(self.cols - rank);
        for free in (0..self.cols).filter(|c| !pivot_set.contains(c)) {
            let mut v = vec![Rat::zero(); self.cols];
            v[free] = Rat::one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = -r.at(i, free).clone();
            }
            rows.push(v);
        }
        RowBasis::from_rows(self.cols, rows).expect("kernel rows have ambient length")
    }
}

/// A subspace of `Q^n` represented by its canonical reduced row-echelon
/// basis. Two `RowBasis` values are equal iff they span the same subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowBasis {
    ambient_dim: usize,
    rows: Vec<Vec<Rat>>,
}

impl RowBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        RowBasis { ambient_dim, rows: Vec::new() }
    }

    pub fn full(ambient_dim: usize) -> Self {
        let rows = (0..ambient_dim)
            .map(|i| {
                let mut v = vec![Rat::zero(); ambient_dim];
                v[i] = Rat::one();
                v
            })
            .collect();
        RowBasis { ambient_dim, rows }
    }

    /// Canonicalize a spanning set: run elimination and drop zero rows.
    pub fn from_rows(ambient_dim: usize, rows: Vec<Vec<Rat>>) -> Result<Self> {
        for r in &rows {
            if r.len() != ambient_dim {
                return Err(Error::DimensionMismatch(format!(
                    "spanning vector length {} in ambient dimension {ambient_dim}",
                    r.len()
                )));
            }
        }
        if rows.is_empty() {
            return Ok(RowBasis::zero(ambient_dim));
        }
        let m = MatrixQ::from_rows(rows, ambient_dim)?;
        Ok(Self::from_matrix(&m))
    }

    pub fn from_matrix(m: &MatrixQ) -> Self {
        let r = m.rref();
        let rows = r
            .matrix
            .row_iter()
            .take(r.rank)
            .map(|row| row.to_vec())
            .collect();
        RowBasis { ambient_dim: m.cols(), rows }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rat]> {
        self.rows.iter().map(|r| r.as_slice())
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.rows[i]
    }

    pub fn to_matrix(&self) -> MatrixQ {
        MatrixQ::from_rows(self.rows.clone(), self.ambient_dim).expect("canonical rows")
    }

    /// Remainder of `v` after reduction by the echelon rows.
    pub fn reduce(&self, v: &[Rat]) -> Vec<Rat> {
        let mut v = v.to_vec();
        for row in &self.rows {
            let lead = row.iter().position(|x| !x.is_zero()).expect("no zero rows");
            if v[lead].is_zero() {
                continue;
            }
            let factor = v[lead].clone();
            for (a, b) in v.iter_mut().zip(row) {
                *a -= &factor * b;
            }
        }
        v
    }

    /// Membership test: is `v` a linear combination of the basis rows?
    pub fn contains(&self, v: &[Rat]) -> bool {
        assert_eq!(v.len(), self.ambient_dim, "vector length vs ambient dimension");
        self.reduce(v).iter().all(|x| x.is_zero())
    }

    pub fn is_subspace_of(&self, other: &RowBasis) -> bool {
        self.rows().all(|r| other.contains(r))
    }

    /// Orthogonal complement with respect to the standard bilinear form.
    pub fn complement(&self) -> RowBasis {
        if self.rows.is_empty() {
            return RowBasis::full(self.ambient_dim);
        }
        self.to_matrix().kernel_basis()
    }
}

/// Membership of a vector in a row space (spec-level alias of
/// [`RowBasis::contains`]).
pub fn in_row_space(v: &[Rat], basis: &RowBasis) -> bool {
    basis.contains(v)
}

fn check_common_ambient(spaces: &[RowBasis], what: &str) -> Result<usize> {
    let Some(first) = spaces.first() else {
        return Err(Error::EmptyInput(format!("{what} of no spaces")));
    };
    let ambient = first.ambient_dim();
    for s in spaces {
        if s.ambient_dim() != ambient {
            return Err(Error::DimensionMismatch(format!(
                "{what}: ambient {} vs {}",
                s.ambient_dim(),
                ambient
            )));
        }
    }
    Ok(ambient)
}

/// Sum of row spaces: stack the bases and re-echelonize.
pub fn sum_row_spaces(spaces: &[RowBasis]) -> Result<RowBasis> {
    let ambient = check_common_ambient(spaces, "sum")?;
    let rows: Vec<Vec<Rat>> = spaces
        .iter()
        .flat_map(|s| s.rows().map(|r| r.to_vec()))
        .collect();
    RowBasis::from_rows(ambient, rows)
}

/// Intersection of row spaces. Computed through orthogonal complements:
/// the intersection is the complement of the sum of the complements, which
/// handles any number of spaces in a single exact elimination.
pub fn intersect_row_spaces(spaces: &[RowBasis]) -> Result<RowBasis> {
    let ambient = check_common_ambient(spaces, "intersection")?;
    let mut complement_rows: Vec<Vec<Rat>> = Vec::new();
    for s in spaces {
        complement_rows.extend(s.complement().rows().map(|r| r.to_vec()));
    }
    if complement_rows.is_empty() {
        // every space is the full ambient space
        return Ok(RowBasis::full(ambient));
    }
    Ok(MatrixQ::from_rows(complement_rows, ambient)?.kernel_basis())
}
