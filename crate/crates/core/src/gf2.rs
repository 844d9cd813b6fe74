//! Dense linear algebra over the two-element field.
//!
//! Vectors are packed into `u64` blocks. Matrices are stored by column, so
//! column `i` is the image of the basis vector `e_i`; this matches how the
//! homology oracle reads a mapping class off its action on crosscap cores.

use std::fmt;

use crate::error::{Error, ParseError};

const BLOCK: usize = 64;

fn blocks_for(len: usize) -> usize {
    len.div_ceil(BLOCK)
}

/// A vector in `(Z/2)^len`. Index `0` is the first basis vector `e_1`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Z2Vector {
    len: usize,
    blocks: Vec<u64>,
}

impl Z2Vector {
    pub fn zeros(len: usize) -> Self {
        Z2Vector {
            len,
            blocks: vec![0; blocks_for(len)],
        }
    }

    /// The basis vector with a single one at 0-based position `i`.
    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.set(i, true);
        v
    }

    /// Sum of the basis vectors at the given 0-based positions.
    pub fn from_positions<I: IntoIterator<Item = usize>>(len: usize, positions: I) -> Self {
        let mut v = Self::zeros(len);
        for i in positions {
            v.flip(i);
        }
        v
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn get(&self, i: usize) -> bool {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.blocks[i / BLOCK] >> (i % BLOCK) & 1 == 1
    }

    pub fn set(&mut self, i: usize, bit: bool) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        let mask = 1u64 << (i % BLOCK);
        if bit {
            self.blocks[i / BLOCK] |= mask;
        } else {
            self.blocks[i / BLOCK] &= !mask;
        }
    }

    pub fn flip(&mut self, i: usize) {
        assert!(i < self.len, "bit {i} out of range for length {}", self.len);
        self.blocks[i / BLOCK] ^= 1u64 << (i % BLOCK);
    }

    pub fn is_zero(&self) -> bool {
        self.blocks.iter().all(|&b| b == 0)
    }

    pub fn count_ones(&self) -> usize {
        self.blocks.iter().map(|b| b.count_ones() as usize).sum()
    }

    /// Positions of the set bits, ascending.
    pub fn ones(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.len).filter(move |&i| self.get(i))
    }

    pub fn add_assign(&mut self, other: &Z2Vector) {
        assert_eq!(self.len, other.len, "vector length mismatch");
        for (a, b) in self.blocks.iter_mut().zip(&other.blocks) {
            *a ^= b;
        }
    }

    pub fn add(&self, other: &Z2Vector) -> Z2Vector {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    /// The standard pairing `sum x_i y_i`, which is the mod-2 intersection
    /// form in the crosscap basis.
    pub fn dot(&self, other: &Z2Vector) -> bool {
        assert_eq!(self.len, other.len, "vector length mismatch");
        self.blocks
            .iter()
            .zip(&other.blocks)
            .map(|(a, b)| (a & b).count_ones())
            .sum::<u32>()
            % 2
            == 1
    }

    /// Parses a bit string such as `0110`; the first character is `e_1`.
    pub fn parse_bits(text: &str) -> Result<Self, ParseError> {
        let mut v = Self::zeros(text.len());
        for (i, ch) in text.chars().enumerate() {
            match ch {
                '0' => {}
                '1' => v.set(i, true),
                other => {
                    return Err(ParseError::new(i, format!("expected 0 or 1, found {other:?}")));
                }
            }
        }
        Ok(v)
    }
}

impl fmt::Display for Z2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.len {
            f.write_str(if self.get(i) { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl fmt::Debug for Z2Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z2Vector({self})")
    }
}

/// A square matrix over the two-element field, stored by column.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Z2Matrix {
    columns: Vec<Z2Vector>,
}

impl Z2Matrix {
    pub fn identity(n: usize) -> Self {
        Z2Matrix {
            columns: (0..n).map(|i| Z2Vector::unit(n, i)).collect(),
        }
    }

    pub fn zero(n: usize) -> Self {
        Z2Matrix {
            columns: vec![Z2Vector::zeros(n); n],
        }
    }

    pub fn from_columns(columns: Vec<Z2Vector>) -> Result<Self, Error> {
        let n = columns.len();
        if let Some(bad) = columns.iter().find(|c| c.len() != n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: bad.len(),
            });
        }
        Ok(Z2Matrix { columns })
    }

    /// The transvection `x -> x + <x,v> v`.
    pub fn transvection(v: &Z2Vector) -> Self {
        let n = v.len();
        let columns = (0..n)
            .map(|i| {
                let mut col = Z2Vector::unit(n, i);
                if v.get(i) {
                    col.add_assign(v);
                }
                col
            })
            .collect();
        Z2Matrix { columns }
    }

    pub fn dim(&self) -> usize {
        self.columns.len()
    }

    pub fn column(&self, i: usize) -> &Z2Vector {
        &self.columns[i]
    }

    pub fn entry(&self, row: usize, col: usize) -> bool {
        self.columns[col].get(row)
    }

    pub fn apply(&self, x: &Z2Vector) -> Z2Vector {
        assert_eq!(x.len(), self.dim(), "vector length mismatch");
        let mut out = Z2Vector::zeros(self.dim());
        for i in x.ones() {
            out.add_assign(&self.columns[i]);
        }
        out
    }

    /// Matrix product `self * rhs` (apply `rhs` first).
    pub fn mul(&self, rhs: &Z2Matrix) -> Z2Matrix {
        assert_eq!(self.dim(), rhs.dim(), "matrix dimension mismatch");
        Z2Matrix {
            columns: rhs.columns.iter().map(|c| self.apply(c)).collect(),
        }
    }

    pub fn transpose(&self) -> Z2Matrix {
        let n = self.dim();
        let mut out = Z2Matrix::zero(n);
        for (c, col) in self.columns.iter().enumerate() {
            for r in col.ones() {
                out.columns[r].set(c, true);
            }
        }
        out
    }

    /// Gauss-Jordan inverse; `None` when singular.
    pub fn inverse(&self) -> Option<Z2Matrix> {
        let n = self.dim();
        // Row-reduce [A^T | I]; row operations on A^T are column operations on A.
        let mut rows: Vec<Z2Vector> = self.transpose().columns;
        let mut inv: Vec<Z2Vector> = (0..n).map(|i| Z2Vector::unit(n, i)).collect();
        for col in 0..n {
            let pivot = (col..n).find(|&r| rows[r].get(col))?;
            rows.swap(col, pivot);
            inv.swap(col, pivot);
            for r in 0..n {
                if r != col && rows[r].get(col) {
                    let (pr, pi) = (rows[col].clone(), inv[col].clone());
                    rows[r].add_assign(&pr);
                    inv[r].add_assign(&pi);
                }
            }
        }
        // inv now holds (A^T)^{-1} as rows, i.e. the columns of A^{-1} transposed.
        Some(Z2Matrix { columns: inv }.transpose())
    }

    /// Integer power; negative exponents go through the inverse.
    pub fn pow(&self, exp: i64) -> Option<Z2Matrix> {
        let base = if exp < 0 { self.inverse()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = Z2Matrix::identity(self.dim());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&sq);
            }
            e >>= 1;
            if e > 0 {
                sq = sq.mul(&sq);
            }
        }
        Some(acc)
    }

    pub fn is_identity(&self) -> bool {
        self.first_moved().is_none()
    }

    /// First basis vector `e_i` with `M e_i != e_i`, and its image.
    pub fn first_moved(&self) -> Option<(usize, &Z2Vector)> {
        self.columns
            .iter()
            .enumerate()
            .find(|(i, col)| **col != Z2Vector::unit(self.dim(), *i))
    }

    /// `M^T M = I`, i.e. `M` preserves the diagonal intersection form.
    pub fn preserves_form(&self) -> bool {
        self.transpose().mul(self).is_identity()
    }

    /// One bit string per row.
    pub fn rows(&self) -> Vec<String> {
        let t = self.transpose();
        t.columns.iter().map(|r| r.to_string()).collect()
    }
}

impl fmt::Display for Z2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, row) in self.rows().iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            f.write_str(row)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Z2Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Z2Matrix[{}]", self.rows().join(" "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn v(bits: &str) -> Z2Vector {
        Z2Vector::parse_bits(bits).unwrap()
    }

    #[test]
    fn dot_is_parity_of_overlap() {
        assert!(v("110").dot(&v("011")));
        assert!(!v("110").dot(&v("110")));
        assert!(v("111").dot(&v("111")));
    }

    #[test]
    fn wide_vectors_span_blocks() {
        let mut a = Z2Vector::zeros(130);
        a.set(0, true);
        a.set(64, true);
        a.set(129, true);
        assert_eq!(a.count_ones(), 3);
        assert_eq!(a.ones().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert!(a.dot(&a));
    }

    #[test]
    fn transvection_along_adjacent_pair_swaps() {
        let t = Z2Matrix::transvection(&v("110"));
        assert_eq!(t.column(0), &v("010"));
        assert_eq!(t.column(1), &v("100"));
        assert_eq!(t.column(2), &v("001"));
    }

    #[test]
    fn transvection_along_odd_vector_is_singular() {
        // <v,v> = 1 makes x -> x + <x,v>v kill v.
        let t = Z2Matrix::transvection(&v("100"));
        assert!(t.inverse().is_none());
    }

    #[test]
    fn inverse_round_trips() {
        let a = Z2Matrix::transvection(&v("1111"));
        let b = Z2Matrix::transvection(&v("0110"));
        let m = a.mul(&b);
        let inv = m.inverse().unwrap();
        assert!(m.mul(&inv).is_identity());
        assert!(inv.mul(&m).is_identity());
        assert_eq!(inv, m.transpose());
    }

    #[test]
    fn pow_handles_signs() {
        let m = Z2Matrix::transvection(&v("110")).mul(&Z2Matrix::transvection(&v("011")));
        assert!(m.pow(3).unwrap().is_identity());
        assert_eq!(m.pow(-1).unwrap(), m.pow(2).unwrap());
        assert!(m.pow(0).unwrap().is_identity());
    }

    #[test]
    fn rows_render_as_bit_strings() {
        let t = Z2Matrix::transvection(&v("110"));
        assert_eq!(t.to_string(), "010\n100\n001");
        assert_eq!(t.first_moved().map(|(i, _)| i), Some(0));
    }
}
