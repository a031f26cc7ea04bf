//! Dense square matrices over a finite field, plus the small amount of
//! linear algebra (rank, inverse, basis completion) the group modules need.

use crate::error::{Error, Result};
use crate::gf::{Field, FieldElem, FieldOps};

/// An n-by-n matrix over F_{p^r}, row-major.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Mat {
    n: usize,
    field: Field,
    entries: Vec<FieldElem>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "Mat{}x{}[", self.n, self.n)?;
        for i in 0..self.n {
            write!(f, "  ")?;
            for j in 0..self.n {
                write!(f, "{:?} ", self.get(i, j))?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

impl Mat {
    pub fn zero(n: usize, field: &Field) -> Mat {
        Mat { n, field: field.clone(), entries: vec![field.zero(); n * n] }
    }

    pub fn identity(n: usize, field: &Field) -> Mat {
        let mut m = Mat::zero(n, field);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Mat> {
        let n = rows.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in rows {
            if row.len() != n {
                return Err(Error::BadSpec("matrix rows must be square".into()));
            }
            for &c in row {
                entries.push(field.scalar(c));
            }
        }
        Ok(Mat { n, field: field.clone(), entries })
    }

    pub fn from_entries(n: usize, field: &Field, entries: Vec<FieldElem>) -> Result<Mat> {
        if entries.len() != n * n {
            return Err(Error::BadSpec(format!(
                "expected {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.spec() != field) {
            return Err(Error::Mismatch("matrix entries from a different field".into()));
        }
        Ok(Mat { n, field: field.clone(), entries })
    }

    /// Elementary matrix E_{ij} (0-based indices).
    pub fn unit(n: usize, field: &Field, i: usize, j: usize) -> Mat {
        let mut m = Mat::zero(n, field);
        m.set(i, j, field.one());
        m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn get(&self, i: usize, j: usize) -> &FieldElem {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: FieldElem) {
        self.entries[i * self.n + j] = v;
    }

    pub fn entries(&self) -> &[FieldElem] {
        &self.entries
    }

    pub fn add(&self, other: &Mat) -> Mat {
        debug_assert_eq!((self.n, &self.field), (other.n, &other.field));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.add(b))
            .collect();
        Mat { n: self.n, field: self.field.clone(), entries }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        debug_assert_eq!((self.n, &self.field), (other.n, &other.field));
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a.sub(b))
            .collect();
        Mat { n: self.n, field: self.field.clone(), entries }
    }

    pub fn neg(&self) -> Mat {
        let entries = self.entries.iter().map(|a| a.neg()).collect();
        Mat { n: self.n, field: self.field.clone(), entries }
    }

    pub fn scale(&self, c: &FieldElem) -> Mat {
        let entries = self.entries.iter().map(|a| a.mul(c)).collect();
        Mat { n: self.n, field: self.field.clone(), entries }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        debug_assert_eq!((self.n, &self.field), (other.n, &other.field));
        let n = self.n;
        let mut out = Mat::zero(n, &self.field);
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let v = out.get(i, j).add(&a.mul(other.get(k, j)));
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    pub fn pow(&self, mut e: u64) -> Mat {
        let mut result = Mat::identity(self.n, &self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = result.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        result
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|e| e.is_zero())
    }

    pub fn is_identity(&self) -> bool {
        for i in 0..self.n {
            for j in 0..self.n {
                let e = self.get(i, j);
                let ok = if i == j { e.is_one() } else { e.is_zero() };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Entrywise Frobenius a ↦ a^{p^e}.
    pub fn frobenius(&self, e: u32) -> Mat {
        let entries = self.entries.iter().map(|a| a.frobenius(e)).collect();
        Mat { n: self.n, field: self.field.clone(), entries }
    }

    /// Row-major flattening, used to treat matrices as vectors in gl_n.
    pub fn flatten(&self) -> Vec<FieldElem> {
        self.entries.clone()
    }

    /// Compact label such as "[[0,1],[1,0]]" (prime-subfield entries as
    /// bare integers, extension entries as coefficient lists).
    pub fn label(&self) -> String {
        let mut s = String::from("[");
        for i in 0..self.n {
            if i > 0 {
                s.push(',');
            }
            s.push('[');
            for j in 0..self.n {
                if j > 0 {
                    s.push(',');
                }
                let e = self.get(i, j);
                if self.field.r() == 1 {
                    s.push_str(&e.coeffs()[0].to_string());
                } else {
                    s.push_str(&format!("{:?}", e.coeffs()));
                }
            }
            s.push(']');
        }
        s.push(']');
        s
    }
}

/// Reduced row echelon form in place; returns the rank.
pub fn row_reduce(rows: &mut [Vec<FieldElem>]) -> usize {
    let width = rows.first().map_or(0, |r| r.len());
    row_reduce_within(rows, width)
}

/// Row reduction that only pivots on the first `pivot_cols` columns,
/// leaving the remaining columns as passengers (used for augmented
/// systems).  Returns the rank of the pivot block.
fn row_reduce_within(rows: &mut [Vec<FieldElem>], pivot_cols: usize) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let width = rows[0].len();
    let mut rank = 0;
    for col in 0..pivot_cols.min(width) {
        let pivot = (rank..rows.len()).find(|&i| !rows[i][col].is_zero());
        let Some(pivot) = pivot else { continue };
        rows.swap(rank, pivot);
        let inv = rows[rank][col].inv().expect("pivot nonzero");
        for v in rows[rank].iter_mut() {
            *v = v.mul(&inv);
        }
        for i in 0..rows.len() {
            if i != rank && !rows[i][col].is_zero() {
                let factor = rows[i][col].clone();
                for j in 0..width {
                    let sub = rows[rank][j].mul(&factor);
                    rows[i][j] = rows[i][j].sub(&sub);
                }
            }
        }
        rank += 1;
        if rank == rows.len() {
            break;
        }
    }
    rank
}

pub fn rank(rows: &[Vec<FieldElem>]) -> usize {
    let mut copy: Vec<Vec<FieldElem>> = rows.to_vec();
    row_reduce(&mut copy)
}

/// Invert a square matrix given as rows; None when singular.
pub fn invert_rows(rows: &[Vec<FieldElem>], field: &Field) -> Option<Vec<Vec<FieldElem>>> {
    let n = rows.len();
    let mut aug: Vec<Vec<FieldElem>> = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            for j in 0..n {
                r.push(if i == j { field.one() } else { field.zero() });
            }
            r
        })
        .collect();
    if row_reduce_within(&mut aug, n) < n {
        return None;
    }
    Some(aug.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solve Σ xᵢ·basisᵢ = target; None when target is outside the span.
pub fn coords_in_basis(basis: &[Vec<FieldElem>], target: &[FieldElem], field: &Field) -> Option<Vec<FieldElem>> {
    let k = basis.len();
    let mut rows: Vec<Vec<FieldElem>> = (0..target.len())
        .map(|j| {
            let mut row: Vec<FieldElem> = basis.iter().map(|b| b[j].clone()).collect();
            row.push(target[j].clone());
            row
        })
        .collect();
    row_reduce(&mut rows);
    let mut coords = vec![field.zero(); k];
    for row in &rows {
        match row[..k].iter().position(|c| !c.is_zero()) {
            // pivot entry is 1 after reduction; free variables stay 0
            Some(c) => coords[c] = row[k].clone(),
            None => {
                if !row[k].is_zero() {
                    return None;
                }
            }
        }
    }
    Some(coords)
}
