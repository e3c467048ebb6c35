use std::collections::BTreeMap;
use std::fmt;

use dashu_int::IBig;

use super::Int;

/// Sparse integer matrix in compressed-row form. Zero entries are never stored.
#[derive(Clone, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<u32>,
    vals: Vec<Int>,
}

impl IntMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, row_ptr: vec![0; rows + 1], col_idx: Vec::new(), vals: Vec::new() }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_triplets(n, n, (0..n).map(|i| (i, i, Int::ONE)))
    }

    /// Builds a matrix from `(row, col, value)` triplets; duplicates are summed.
    pub fn from_triplets<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, Int)>,
    {
        let mut per_row: Vec<Vec<(u32, Int)>> = vec![Vec::new(); rows];
        for (r, c, v) in entries {
            assert!(r < rows && c < cols, "entry ({r},{c}) out of range for {rows}x{cols}");
            per_row[r].push((c as u32, v));
        }
        Self::from_rows(cols, per_row)
    }

    /// Same as `from_triplets` but for small machine-integer entries.
    pub fn from_small<I>(rows: usize, cols: usize, entries: I) -> Self
    where
        I: IntoIterator<Item = (usize, usize, i64)>,
    {
        Self::from_triplets(rows, cols, entries.into_iter().map(|(r, c, v)| (r, c, Int::from(v))))
    }

    /// Rows given as unsorted lists of `(col, value)`; duplicates are summed.
    pub fn from_rows(cols: usize, rows_in: Vec<Vec<(u32, Int)>>) -> Self {
        let rows = rows_in.len();
        let mut row_ptr = Vec::with_capacity(rows + 1);
        let mut col_idx = Vec::new();
        let mut vals = Vec::new();
        row_ptr.push(0);
        for mut row in rows_in {
            row.sort_by_key(|e| e.0);
            let mut iter = row.into_iter().peekable();
            while let Some((c, mut v)) = iter.next() {
                while let Some((c2, _)) = iter.peek() {
                    if *c2 != c {
                        break;
                    }
                    v += iter.next().unwrap().1;
                }
                if v != Int::ZERO {
                    debug_assert!((c as usize) < cols);
                    col_idx.push(c);
                    vals.push(v);
                }
            }
            row_ptr.push(col_idx.len());
        }
        IntMatrix { rows, cols, row_ptr, col_idx, vals }
    }

    pub fn from_dense(d: &[Vec<Int>], cols: usize) -> Self {
        let rows = d
            .iter()
            .map(|r| {
                r.iter()
                    .enumerate()
                    .filter(|(_, v)| **v != Int::ZERO)
                    .map(|(c, v)| (c as u32, v.clone()))
                    .collect()
            })
            .collect();
        Self::from_rows(cols, rows)
    }

    pub fn to_dense(&self) -> Vec<Vec<Int>> {
        let mut out = vec![vec![Int::ZERO; self.cols]; self.rows];
        for (r, c, v) in self.iter() {
            out[r][c] = v.clone();
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nnz(&self) -> usize {
        self.vals.len()
    }

    pub fn is_zero(&self) -> bool {
        self.vals.is_empty()
    }

    pub fn row(&self, r: usize) -> impl Iterator<Item = (usize, &Int)> + '_ {
        let (s, e) = (self.row_ptr[r], self.row_ptr[r + 1]);
        self.col_idx[s..e].iter().zip(&self.vals[s..e]).map(|(c, v)| (*c as usize, v))
    }

    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &Int)> + '_ {
        (0..self.rows).flat_map(move |r| self.row(r).map(move |(c, v)| (r, c, v)))
    }

    pub fn get(&self, r: usize, c: usize) -> Int {
        let (s, e) = (self.row_ptr[r], self.row_ptr[r + 1]);
        match self.col_idx[s..e].binary_search(&(c as u32)) {
            Ok(k) => self.vals[s + k].clone(),
            Err(_) => Int::ZERO,
        }
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut per_row: Vec<Vec<(u32, Int)>> = vec![Vec::new(); self.cols];
        for (r, c, v) in self.iter() {
            per_row[c].push((r as u32, v.clone()));
        }
        Self::from_rows(self.rows, per_row)
    }

    /// Matrix product `self * rhs`.
    pub fn mul(&self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "dimension mismatch in product");
        let mut acc: Vec<Int> = vec![Int::ZERO; rhs.cols];
        let mut touched: Vec<u32> = Vec::new();
        let mut mark = vec![false; rhs.cols];
        let mut rows_out = Vec::with_capacity(self.rows);
        for r in 0..self.rows {
            for (k, a) in self.row(r) {
                for (c, b) in rhs.row(k) {
                    if !mark[c] {
                        mark[c] = true;
                        touched.push(c as u32);
                    }
                    acc[c] += a * b;
                }
            }
            let mut row = Vec::with_capacity(touched.len());
            for &c in &touched {
                let c = c as usize;
                mark[c] = false;
                let v = std::mem::replace(&mut acc[c], Int::ZERO);
                if v != Int::ZERO {
                    row.push((c as u32, v));
                }
            }
            touched.clear();
            rows_out.push(row);
        }
        Self::from_rows(rhs.cols, rows_out)
    }

    pub fn mul_vec(&self, x: &[Int]) -> Vec<Int> {
        assert_eq!(self.cols, x.len());
        (0..self.rows)
            .map(|r| {
                let mut s = Int::ZERO;
                for (c, v) in self.row(r) {
                    s += v * &x[c];
                }
                s
            })
            .collect()
    }

    pub fn add(&self, rhs: &IntMatrix) -> IntMatrix {
        self.lin_comb(&Int::ONE, rhs, &Int::ONE)
    }

    pub fn sub(&self, rhs: &IntMatrix) -> IntMatrix {
        self.lin_comb(&Int::ONE, rhs, &Int::NEG_ONE)
    }

    /// `a*self + b*rhs`.
    pub fn lin_comb(&self, a: &Int, rhs: &IntMatrix, b: &Int) -> IntMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols), "dimension mismatch in sum");
        let rows = (0..self.rows)
            .map(|r| {
                self.row(r)
                    .map(|(c, v)| (c as u32, a * v))
                    .chain(rhs.row(r).map(|(c, v)| (c as u32, b * v)))
                    .collect()
            })
            .collect();
        Self::from_rows(self.cols, rows)
    }

    pub fn scale(&self, s: &Int) -> IntMatrix {
        if *s == Int::ZERO {
            return Self::zero(self.rows, self.cols);
        }
        let mut out = self.clone();
        for v in &mut out.vals {
            *v *= s;
        }
        out
    }

    pub fn neg(&self) -> IntMatrix {
        self.scale(&Int::NEG_ONE)
    }

    /// Submatrix on the given row and column index lists (in that order).
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> IntMatrix {
        let mut col_pos = vec![u32::MAX; self.cols];
        for (k, &c) in cols.iter().enumerate() {
            col_pos[c] = k as u32;
        }
        let out = rows
            .iter()
            .map(|&r| {
                self.row(r)
                    .filter(|(c, _)| col_pos[*c] != u32::MAX)
                    .map(|(c, v)| (col_pos[c], v.clone()))
                    .collect()
            })
            .collect();
        Self::from_rows(cols.len(), out)
    }

    /// Places `block` with its top-left corner at `(r0, c0)` inside a `rows x cols` zero matrix.
    pub fn embed(block: &IntMatrix, rows: usize, cols: usize, r0: usize, c0: usize) -> IntMatrix {
        Self::from_triplets(rows, cols, block.iter().map(|(r, c, v)| (r + r0, c + c0, v.clone())))
    }

    /// The first nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Int)> {
        self.iter().next()
    }

    /// The first nonzero entry scanning columns left to right, then rows.
    pub fn first_nonzero_colmajor(&self) -> Option<(usize, usize, Int)> {
        let mut best: Option<(usize, usize, Int)> = None;
        for (r, c, v) in self.iter() {
            let better = match &best {
                None => true,
                Some((br, bc, _)) => (c, r) < (*bc, *br),
            };
            if better {
                best = Some((r, c, v.clone()));
            }
        }
        best
    }

    pub fn max_abs(&self) -> Int {
        self.vals.iter().map(|v| super::abs(v)).max().unwrap_or(Int::ZERO)
    }

    /// Entries as a sorted map, handy for comparisons in tests.
    pub fn to_map(&self) -> BTreeMap<(usize, usize), Int> {
        self.iter().map(|(r, c, v)| ((r, c), v.clone())).collect()
    }

    /// Returns `s` in {+1, -1} with `self = s * other`, if such an `s` exists.
    /// Two zero matrices compare as `+1`.
    pub fn equal_up_to_sign(&self, other: &IntMatrix) -> Option<i8> {
        if self.rows != other.rows || self.cols != other.cols {
            return None;
        }
        if self == other {
            return Some(1);
        }
        if self.col_idx == other.col_idx
            && self.row_ptr == other.row_ptr
            && self.vals.iter().zip(&other.vals).all(|(a, b)| *a == -b)
        {
            return Some(-1);
        }
        None
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntMatrix {}x{} ({} nonzero)", self.rows, self.cols, self.nnz())?;
        if self.rows <= 16 && self.cols <= 16 {
            for row in self.to_dense() {
                let cells: Vec<String> = row.iter().map(|v| format!("{v:>3}")).collect();
                writeln!(f, "  [{}]", cells.join(" "))?;
            }
        }
        Ok(())
    }
}

/// Convenience for small literal matrices in tests and examples.
pub fn int_matrix(rows: &[&[i64]]) -> IntMatrix {
    let cols = rows.first().map_or(0, |r| r.len());
    let dense: Vec<Vec<Int>> = rows.iter().map(|r| r.iter().map(|&v| IBig::from(v)).collect()).collect();
    IntMatrix::from_dense(&dense, cols)
}
