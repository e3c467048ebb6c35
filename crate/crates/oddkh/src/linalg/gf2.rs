//! Dense linear algebra over GF(2) on packed bit rows.

/// A bit matrix stored as packed rows.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(rows: usize, cols: usize) -> Self {
        let words = cols.div_ceil(64).max(1);
        BitMatrix { rows, cols, words, data: vec![0; rows * words] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r * self.words + c / 64] >> (c % 64) & 1 == 1
    }

    pub fn set(&mut self, r: usize, c: usize, v: bool) {
        let w = &mut self.data[r * self.words + c / 64];
        if v {
            *w |= 1 << (c % 64);
        } else {
            *w &= !(1 << (c % 64));
        }
    }

    pub fn flip(&mut self, r: usize, c: usize) {
        self.data[r * self.words + c / 64] ^= 1 << (c % 64);
    }

    fn row_xor(&mut self, dst: usize, src: usize) {
        let w = self.words;
        for k in 0..w {
            let v = self.data[src * w + k];
            self.data[dst * w + k] ^= v;
        }
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            let w = self.words;
            for k in 0..w {
                self.data.swap(a * w + k, b * w + k);
            }
        }
    }
}

/// Result of [`solve_gf2`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gf2Solution {
    /// The solution with every free variable set to 0, if one exists.
    pub solution: Option<Vec<bool>>,
    pub nullity: usize,
    /// Pivot columns in increasing order.
    pub pivots: Vec<usize>,
}

/// Gauss–Jordan elimination over GF(2), columns taken left to right.
pub fn solve_gf2(a: &BitMatrix, b: &[bool]) -> Gf2Solution {
    assert_eq!(a.rows, b.len(), "dimension mismatch: {} rows vs rhs of length {}", a.rows, b.len());
    // augment with the right-hand side as an extra column
    let mut m = BitMatrix::new(a.rows, a.cols + 1);
    for r in 0..a.rows {
        for c in 0..a.cols {
            if a.get(r, c) {
                m.set(r, c, true);
            }
        }
        m.set(r, a.cols, b[r]);
    }
    let mut pivots = Vec::new();
    let mut row = 0;
    for c in 0..a.cols {
        let Some(p) = (row..m.rows).find(|&r| m.get(r, c)) else { continue };
        m.swap_rows(row, p);
        for r in 0..m.rows {
            if r != row && m.get(r, c) {
                m.row_xor(r, row);
            }
        }
        pivots.push(c);
        row += 1;
        if row == m.rows {
            break;
        }
    }
    let consistent = (row..m.rows).all(|r| !m.get(r, a.cols));
    let solution = consistent.then(|| {
        let mut x = vec![false; a.cols];
        for (i, &c) in pivots.iter().enumerate() {
            x[c] = m.get(i, a.cols);
        }
        x
    });
    Gf2Solution { solution, nullity: a.cols - pivots.len(), pivots }
}

/// Rank over GF(2).
pub fn rank_gf2(a: &BitMatrix) -> usize {
    solve_gf2(a, &vec![false; a.rows]).pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_unique() {
        let b = vec![true, false, true];
        let s = solve_gf2(&BitMatrix::identity(3), &b);
        assert_eq!(s.solution, Some(b));
        assert_eq!(s.nullity, 0);
    }

    #[test]
    fn inconsistent() {
        let mut a = BitMatrix::new(2, 1);
        a.set(0, 0, true);
        a.set(1, 0, true);
        assert!(solve_gf2(&a, &[true, false]).solution.is_none());
    }
}
