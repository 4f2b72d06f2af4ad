//! Dense matrices over a [`Field`] with exact row reduction.

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::field::{Felt, FeltRepr, Field};
use crate::Form;

/// Row-major dense matrix of field elements.
#[derive(Clone)]
pub struct Mat {
    field: Arc<Field>,
    rows: usize,
    cols: usize,
    data: Vec<Felt>,
}

/// Result of [`Mat::rref`].
#[derive(Clone, Debug)]
pub struct Rref {
    pub mat: Mat,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

/// JSON shape of a matrix: `{rows, cols, entries}` with exponents or `"0"`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatRecord {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<FeltRepr>,
}

impl PartialEq for Mat {
    fn eq(&self, other: &Self) -> bool {
        *self.field == *other.field
            && self.rows == other.rows
            && self.cols == other.cols
            && self.data == other.data
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

impl Mat {
    pub fn zeros(field: &Arc<Field>, rows: usize, cols: usize) -> Mat {
        Mat {
            field: field.clone(),
            rows,
            cols,
            data: vec![Felt::ZERO; rows * cols],
        }
    }

    pub fn identity(field: &Arc<Field>, n: usize) -> Mat {
        let mut m = Mat::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, Felt::ONE);
        }
        m
    }

    pub fn from_vec(field: &Arc<Field>, rows: usize, cols: usize, data: Vec<Felt>) -> Result<Mat> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        if let Some(bad) = data.iter().find(|x| !field.contains(**x)) {
            return Err(Error::Precondition(format!("entry {bad} outside the field")));
        }
        Ok(Mat {
            field: field.clone(),
            rows,
            cols,
            data,
        })
    }

    /// Builds from rows of equal length; `cols` fixes the width when there
    /// are no rows.
    pub fn from_rows(field: &Arc<Field>, rows: Vec<Vec<Felt>>, cols: usize) -> Result<Mat> {
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let n = rows.len();
        Mat::from_vec(field, n, cols, rows.concat())
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Felt {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, x: Felt) {
        self.data[i * self.cols + j] = x;
    }

    pub fn row(&self, i: usize) -> &[Felt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Felt> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn entries(&self) -> &[Felt] {
        &self.data
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| x.is_zero())
    }

    fn same_field(&self, other: &Mat) -> Result<()> {
        if Arc::ptr_eq(&self.field, &other.field) || *self.field == *other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn transpose(&self) -> Mat {
        let mut t = Mat::zeros(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j));
            }
        }
        t
    }

    /// Entrywise Frobenius `x ↦ x^q`.
    pub fn conj(&self) -> Result<Mat> {
        self.field.subfield_order().ok_or(Error::NotQuadratic)?;
        let data = self.data.iter().map(|&x| self.field.conj_unchecked(x)).collect();
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    /// `M†`: transpose with conjugated entries.
    pub fn conj_transpose(&self) -> Result<Mat> {
        Ok(self.conj()?.transpose())
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                let s = f.sum((0..self.cols).map(|l| f.mul(self.get(i, l), other.get(l, j))));
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    /// `A·Bᵀ`, avoiding an explicit transpose.
    pub fn mul_transpose(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::Dimension("column counts differ".into()));
        }
        let f = &self.field;
        let mut out = Mat::zeros(f, self.rows, other.rows);
        for i in 0..self.rows {
            for j in 0..other.rows {
                out.set(i, j, dot(f, self.row(i), other.row(j)));
            }
        }
        Ok(out)
    }

    /// `G·Gᵀ` or `G·G†`.
    pub fn gram(&self, form: Form) -> Result<Mat> {
        match form {
            Form::Euclidean => self.mul_transpose(self),
            Form::Hermitian => self.mul_transpose(&self.conj()?),
        }
    }

    pub fn gram_rank(&self, form: Form) -> Result<usize> {
        Ok(self.gram(form)?.rank())
    }

    /// Stacks `self` above `other`.
    pub fn vstack(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::Dimension("column counts differ".into()));
        }
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows + other.rows,
            cols: self.cols,
            data,
        })
    }

    /// Places `other` to the right of `self`.
    pub fn hstack(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.rows != other.rows {
            return Err(Error::Dimension("row counts differ".into()));
        }
        let cols = self.cols + other.cols;
        let mut data = Vec::with_capacity(self.rows * cols);
        for i in 0..self.rows {
            data.extend_from_slice(self.row(i));
            data.extend_from_slice(other.row(i));
        }
        Ok(Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols,
            data,
        })
    }

    pub fn select_rows(&self, idx: &[usize]) -> Mat {
        let data = idx.iter().flat_map(|&i| self.row(i).iter().copied()).collect();
        Mat {
            field: self.field.clone(),
            rows: idx.len(),
            cols: self.cols,
            data,
        }
    }

    pub fn select_columns(&self, idx: &[usize]) -> Mat {
        let mut data = Vec::with_capacity(self.rows * idx.len());
        for i in 0..self.rows {
            data.extend(idx.iter().map(|&j| self.get(i, j)));
        }
        Mat {
            field: self.field.clone(),
            rows: self.rows,
            cols: idx.len(),
            data,
        }
    }

    /// Multiplies column `j` by `c_j`.
    pub fn scale_columns(&self, c: &[Felt]) -> Result<Mat> {
        if c.len() != self.cols {
            return Err(Error::Dimension("one multiplier per column".into()));
        }
        let mut out = self.clone();
        for i in 0..self.rows {
            for (j, &cj) in c.iter().enumerate() {
                out.set(i, j, self.field.mul(self.get(i, j), cj));
            }
        }
        Ok(out)
    }

    /// Reduced row-echelon form; pivots are the first nonzero entries
    /// scanning columns left to right.
    pub fn rref(&self) -> Rref {
        let f = &self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(r, p);
            let inv = f.inv(m.get(r, c)).expect("pivot is nonzero");
            m.scale_row(r, inv);
            for i in 0..m.rows {
                if i != r {
                    let factor = m.get(i, c);
                    if !factor.is_zero() {
                        m.add_row_multiple(i, r, f.neg(factor));
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        Rref {
            mat: m,
            rank: r,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank
    }

    /// The nonzero rows of the reduced echelon form: a canonical basis of
    /// the row space.
    pub fn row_basis(&self) -> Mat {
        let r = self.rref();
        r.mat.select_rows(&(0..r.rank).collect::<Vec<_>>())
    }

    /// Basis of `{x : A xᵀ = 0}`, one vector per row.
    pub fn null_space(&self) -> Mat {
        let f = &self.field;
        let r = self.rref();
        let free: Vec<usize> = (0..self.cols).filter(|c| !r.pivots.contains(c)).collect();
        let mut out = Mat::zeros(f, free.len(), self.cols);
        for (b, &fc) in free.iter().enumerate() {
            out.set(b, fc, Felt::ONE);
            for (i, &pc) in r.pivots.iter().enumerate() {
                out.set(b, pc, f.neg(r.mat.get(i, fc)));
            }
        }
        out
    }

    /// Basis of `rowspace(A) ∩ rowspace(B)` via the Zassenhaus block
    /// reduction of `[[A, A], [B, 0]]`.
    pub fn row_space_intersection(&self, other: &Mat) -> Result<Mat> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Err(Error::Dimension("column counts differ".into()));
        }
        let n = self.cols;
        let top = self.hstack(self)?;
        let bottom = other.hstack(&Mat::zeros(&self.field, other.rows, n))?;
        let red = top.vstack(&bottom)?.rref();
        let rows: Vec<usize> = (0..red.rank).filter(|&i| red.pivots[i] >= n).collect();
        let right: Vec<usize> = (n..2 * n).collect();
        Ok(red.mat.select_rows(&rows).select_columns(&right))
    }

    /// Whether two matrices have the same row space.
    pub fn same_row_space(&self, other: &Mat) -> Result<bool> {
        self.same_field(other)?;
        if self.cols != other.cols {
            return Ok(false);
        }
        Ok(self.row_basis() == other.row_basis())
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }

    fn scale_row(&mut self, i: usize, c: Felt) {
        for j in 0..self.cols {
            let x = self.field.mul(self.get(i, j), c);
            self.set(i, j, x);
        }
    }

    /// `row_i += c · row_src`
    fn add_row_multiple(&mut self, i: usize, src: usize, c: Felt) {
        for j in 0..self.cols {
            let s = self.get(src, j);
            if !s.is_zero() {
                let x = self.field.add(self.get(i, j), self.field.mul(c, s));
                self.set(i, j, x);
            }
        }
    }

    pub fn to_record(&self) -> MatRecord {
        MatRecord {
            rows: self.rows,
            cols: self.cols,
            entries: self.data.iter().map(|&x| x.into()).collect(),
        }
    }

    pub fn from_record(field: &Arc<Field>, rec: &MatRecord) -> Result<Mat> {
        let group = field.order() - 1;
        let data = rec
            .entries
            .iter()
            .map(|e| match e {
                FeltRepr::Exp(x) if *x < group => Ok(field.theta_pow(*x as i64)),
                FeltRepr::Exp(x) => Err(Error::Precondition(format!("exponent {x} out of range"))),
                FeltRepr::Zero(s) if s == "0" => Ok(Felt::ZERO),
                FeltRepr::Zero(s) => Err(Error::Precondition(format!("bad entry {s:?}"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Mat::from_vec(field, rec.rows, rec.cols, data)
    }
}

/// `Σ x_i y_i`
pub fn dot(f: &Field, x: &[Felt], y: &[Felt]) -> Felt {
    f.sum(x.iter().zip(y).map(|(&a, &b)| f.mul(a, b)))
}

/// `Σ x_i y_i^q`
pub fn hermitian_dot(f: &Field, x: &[Felt], y: &[Felt]) -> Felt {
    f.sum(x.iter().zip(y).map(|(&a, &b)| f.mul(a, f.conj_unchecked(b))))
}
