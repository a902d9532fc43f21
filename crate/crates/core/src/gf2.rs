//! Dense matrices over GF(2) with at most 64 columns, one word per row.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct BitMatrix {
    ncols: usize,
    rows: Vec<u64>,
}

impl BitMatrix {
    pub fn zeros(nrows: usize, ncols: usize) -> Self {
        assert!(ncols <= 64, "at most 64 columns");
        BitMatrix {
            ncols,
            rows: vec![0; nrows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.rows[i] = 1 << i;
        }
        m
    }

    /// Row `i` has bit `j` set when entry `(i, j)` is one.
    pub fn from_rows(ncols: usize, rows: Vec<u64>) -> Self {
        assert!(ncols <= 64, "at most 64 columns");
        let mask = col_mask(ncols);
        assert!(rows.iter().all(|r| r & !mask == 0), "bits beyond ncols");
        BitMatrix { ncols, rows }
    }

    pub fn from_fn(nrows: usize, ncols: usize, f: impl Fn(usize, usize) -> bool) -> Self {
        let mut m = Self::zeros(nrows, ncols);
        for i in 0..nrows {
            for j in 0..ncols {
                if f(i, j) {
                    m.rows[i] |= 1 << j;
                }
            }
        }
        m
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn rows(&self) -> &[u64] {
        &self.rows
    }

    pub fn get(&self, i: usize, j: usize) -> bool {
        self.rows[i] >> j & 1 == 1
    }

    pub fn set(&mut self, i: usize, j: usize, on: bool) {
        if on {
            self.rows[i] |= 1 << j;
        } else {
            self.rows[i] &= !(1 << j);
        }
    }

    pub fn push_row(&mut self, row: u64) {
        assert!(row & !col_mask(self.ncols) == 0, "bits beyond ncols");
        self.rows.push(row);
    }

    pub fn rank(&self) -> usize {
        rank_of_rows(&self.rows)
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }

    pub fn transpose(&self) -> BitMatrix {
        assert!(self.nrows() <= 64, "transpose needs at most 64 rows");
        BitMatrix::from_fn(self.ncols, self.nrows(), |i, j| self.get(j, i))
    }

    pub fn add(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.nrows() != other.nrows() || self.ncols != other.ncols {
            return Err(Error::Invalid("matrix shapes differ".into()));
        }
        Ok(BitMatrix {
            ncols: self.ncols,
            rows: self.rows.iter().zip(&other.rows).map(|(a, b)| a ^ b).collect(),
        })
    }

    pub fn mul(&self, other: &BitMatrix) -> Result<BitMatrix> {
        if self.ncols != other.nrows() {
            return Err(Error::Invalid("inner dimensions differ".into()));
        }
        let rows = self
            .rows
            .iter()
            .map(|&r| {
                let mut acc = 0u64;
                let mut rest = r;
                while rest != 0 {
                    let k = rest.trailing_zeros() as usize;
                    rest &= rest - 1;
                    acc ^= other.rows[k];
                }
                acc
            })
            .collect();
        Ok(BitMatrix {
            ncols: other.ncols,
            rows,
        })
    }

    /// Inverse of a square matrix, or `None` when singular.
    pub fn inverse(&self) -> Option<BitMatrix> {
        let n = self.nrows();
        assert_eq!(n, self.ncols, "inverse of a non-square matrix");
        let mut a = self.rows.clone();
        let mut inv: Vec<u64> = (0..n).map(|i| 1u64 << i).collect();
        for c in 0..n {
            let p = (c..n).find(|&r| a[r] >> c & 1 == 1)?;
            a.swap(c, p);
            inv.swap(c, p);
            for r in 0..n {
                if r != c && a[r] >> c & 1 == 1 {
                    a[r] ^= a[c];
                    inv[r] ^= inv[c];
                }
            }
        }
        Some(BitMatrix { ncols: n, rows: inv })
    }

    /// Submatrix on the given row and column index lists, in that order.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> BitMatrix {
        BitMatrix::from_fn(rows.len(), cols.len(), |i, j| self.get(rows[i], cols[j]))
    }

    /// Reduced row echelon form with zero rows dropped, and the pivot columns.
    pub fn rref(&self) -> (BitMatrix, Vec<usize>) {
        let (rows, pivots) = rref_rows(&self.rows, self.ncols);
        (
            BitMatrix {
                ncols: self.ncols,
                rows,
            },
            pivots,
        )
    }

    /// Parses rows of `0`/`1` characters, one row per line.
    pub fn parse_rows(text: &str) -> Result<BitMatrix> {
        let mut ncols = None;
        let mut rows = Vec::new();
        for line in text.lines().map(str::trim).filter(|l| !l.is_empty()) {
            let bits: Vec<char> = line.chars().filter(|c| !c.is_whitespace()).collect();
            if *ncols.get_or_insert(bits.len()) != bits.len() {
                return Err(Error::Parse("rows of different lengths".into()));
            }
            crate::error::cap("matrix columns", 64, bits.len())?;
            let mut row = 0u64;
            for (j, c) in bits.iter().enumerate() {
                match c {
                    '0' => {}
                    '1' => row |= 1 << j,
                    _ => return Err(Error::Parse(format!("unexpected character {c:?}"))),
                }
            }
            rows.push(row);
        }
        Ok(BitMatrix {
            ncols: ncols.unwrap_or(0),
            rows,
        })
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}", self.nrows(), self.ncols)?;
        write!(f, "{self}")
    }
}

impl fmt::Display for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &r in &self.rows {
            for j in 0..self.ncols {
                f.write_str(if r >> j & 1 == 1 { "1" } else { "0" })?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn col_mask(ncols: usize) -> u64 {
    if ncols == 64 {
        u64::MAX
    } else {
        (1u64 << ncols) - 1
    }
}

/// Rank of a set of row vectors, by inserting into an xor basis keyed on the
/// highest set bit.
pub fn rank_of_rows(rows: &[u64]) -> usize {
    let mut basis = [0u64; 64];
    let mut rank = 0;
    for &r in rows {
        let mut x = r;
        while x != 0 {
            let hb = 63 - x.leading_zeros() as usize;
            if basis[hb] == 0 {
                basis[hb] = x;
                rank += 1;
                break;
            }
            x ^= basis[hb];
        }
    }
    rank
}

/// Reduced row echelon form over the first `ncols` bits; pivots are the lowest
/// set bits, in increasing order.
pub fn rref_rows(rows: &[u64], ncols: usize) -> (Vec<u64>, Vec<usize>) {
    let mut a: Vec<u64> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| a[i] >> c & 1 == 1) else {
            continue;
        };
        a.swap(r, p);
        for i in 0..a.len() {
            if i != r && a[i] >> c & 1 == 1 {
                a[i] ^= a[r];
            }
        }
        pivots.push(c);
        r += 1;
    }
    a.truncate(r);
    (a, pivots)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        assert_eq!(BitMatrix::zeros(3, 4).rank(), 0);
        assert_eq!(BitMatrix::identity(7).rank(), 7);
        assert_eq!(BitMatrix::from_fn(3, 4, |_, _| true).rank(), 1);
    }

    #[test]
    fn inverse_round_trip() {
        let m = BitMatrix::from_rows(3, vec![0b011, 0b110, 0b001]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv).unwrap(), BitMatrix::identity(3));
        assert!(BitMatrix::from_rows(2, vec![0b11, 0b11]).inverse().is_none());
    }

    #[test]
    fn rref_keeps_row_space() {
        let rows = vec![0b1010, 0b0110, 0b1100];
        let (r, piv) = rref_rows(&rows, 4);
        assert_eq!(r.len(), 2);
        assert_eq!(piv, vec![1, 2]);
        assert_eq!(rank_of_rows(&[rows.clone(), r].concat()), 2);
    }

    #[test]
    fn parse_and_print() {
        let m = BitMatrix::parse_rows("101\n011\n").unwrap();
        assert_eq!(m.to_string(), "101\n011\n");
        assert!(BitMatrix::parse_rows("10\n1\n").is_err());
    }
}
