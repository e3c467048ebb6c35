//! Sparse elimination with unit pivots. Khovanov-type differentials are
//! almost entirely ±1 entries, so nearly everything disappears here before
//! any dense arithmetic is needed.

use super::{solve::solve_integer, Int, IntMatrix};

type Row = Vec<(u32, Int)>;

fn find(row: &Row, c: u32) -> Option<usize> {
    row.binary_search_by_key(&c, |e| e.0).ok()
}

/// `dst -= f * src`, both sorted by column.
fn sub_scaled(dst: &Row, src: &Row, f: &Int) -> Row {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        if j == src.len() || (i < dst.len() && dst[i].0 < src[j].0) {
            out.push(dst[i].clone());
            i += 1;
        } else if i == dst.len() || src[j].0 < dst[i].0 {
            out.push((src[j].0, -(f * &src[j].1)));
            j += 1;
        } else {
            let v = &dst[i].1 - f * &src[j].1;
            if v != Int::ZERO {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

fn is_unit(v: &Int) -> bool {
    *v == Int::ONE || *v == Int::NEG_ONE
}

struct Eliminator {
    rows: Vec<Row>,
    rhs: Option<Vec<Int>>,
    col_rows: Vec<Vec<u32>>,
}

impl Eliminator {
    fn new(rows: Vec<Row>, ncols: usize, rhs: Option<Vec<Int>>) -> Self {
        let mut col_rows = vec![Vec::new(); ncols];
        for (r, row) in rows.iter().enumerate() {
            for (c, _) in row {
                col_rows[*c as usize].push(r as u32);
            }
        }
        Eliminator { rows, rhs, col_rows }
    }

    /// Eliminates column `c` using row `r` (whose entry at `c` is a unit), then empties row `r`.
    fn pivot(&mut self, r: usize, c: u32) -> Row {
        let k = find(&self.rows[r], c).unwrap();
        let u = self.rows[r][k].1.clone();
        let prow = std::mem::take(&mut self.rows[r]);
        let users = std::mem::take(&mut self.col_rows[c as usize]);
        for r2 in users {
            let r2 = r2 as usize;
            if r2 == r {
                continue;
            }
            let Some(k2) = find(&self.rows[r2], c) else { continue };
            let f = &self.rows[r2][k2].1 * &u; // u^{-1} = u
            let new_row = sub_scaled(&self.rows[r2], &prow, &f);
            for (cc, _) in &new_row {
                if find(&self.rows[r2], *cc).is_none() {
                    self.col_rows[*cc as usize].push(r2 as u32);
                }
            }
            self.rows[r2] = new_row;
            if let Some(rhs) = &mut self.rhs {
                let t = &f * &rhs[r];
                rhs[r2] -= t;
            }
        }
        prow
    }

    /// Runs passes until no unit pivot remains. Returns the pivots as
    /// `(column, row index, pivot row)` in elimination order.
    fn run(&mut self) -> Vec<(u32, usize, Row)> {
        let mut pivots = Vec::new();
        loop {
            let mut order: Vec<usize> = (0..self.rows.len()).filter(|&r| !self.rows[r].is_empty()).collect();
            order.sort_by_key(|&r| self.rows[r].len());
            let mut progress = false;
            for r in order {
                if self.rows[r].is_empty() {
                    continue;
                }
                let best = self.rows[r]
                    .iter()
                    .filter(|(_, v)| is_unit(v))
                    .min_by_key(|(c, _)| (self.col_rows[*c as usize].len(), *c))
                    .map(|(c, _)| *c);
                if let Some(c) = best {
                    let prow = self.pivot(r, c);
                    pivots.push((c, r, prow));
                    progress = true;
                }
            }
            if !progress {
                return pivots;
            }
        }
    }
}

/// Eliminates all unit pivots in place; returns how many were used (each
/// contributes an elementary divisor 1). Eliminated rows are left empty.
pub fn eliminate_units(rows: &mut Vec<Row>, ncols: usize) -> usize {
    let mut e = Eliminator::new(std::mem::take(rows), ncols, None);
    let n = e.run().len();
    *rows = e.rows;
    n
}

/// One integer solution of `A x = b`, or `None`. Sparse unit elimination
/// first, then the dense SNF solver on what remains; free variables are 0.
pub fn solve_sparse(a: &IntMatrix, b: &[Int]) -> Option<Vec<Int>> {
    assert_eq!(a.rows(), b.len(), "dimension mismatch");
    let n = a.cols();
    let rows: Vec<Row> = (0..a.rows()).map(|r| a.row(r).map(|(c, v)| (c as u32, v.clone())).collect()).collect();
    let mut e = Eliminator::new(rows, n, Some(b.to_vec()));
    let pivots = e.run();
    let rhs = e.rhs.take().unwrap();
    let mut x = vec![Int::ZERO; n];

    let mut is_pivot_row = vec![false; e.rows.len()];
    for p in &pivots {
        is_pivot_row[p.1] = true;
    }
    let mut rest_rows = Vec::new();
    let mut rest_rhs = Vec::new();
    for (r, row) in e.rows.iter().enumerate() {
        if row.is_empty() {
            if rhs[r] != Int::ZERO && !is_pivot_row[r] {
                return None;
            }
        } else {
            rest_rows.push(row.clone());
            rest_rhs.push(rhs[r].clone());
        }
    }
    if !rest_rows.is_empty() {
        let mut used: Vec<u32> = rest_rows.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
        used.sort_unstable();
        used.dedup();
        let compact: Vec<Row> = rest_rows
            .into_iter()
            .map(|r| r.into_iter().map(|(c, v)| (used.binary_search(&c).unwrap() as u32, v)).collect())
            .collect();
        let m = IntMatrix::from_rows(used.len(), compact);
        let sol = solve_integer(&m, &rest_rhs).solution?;
        for (k, c) in used.iter().enumerate() {
            x[*c as usize] = sol[k].clone();
        }
    }
    for (c, r, prow) in pivots.iter().rev() {
        let mut acc = rhs[*r].clone();
        let mut u = Int::ONE;
        for (cc, v) in prow {
            if cc == c {
                u = v.clone();
            } else {
                acc -= v * &x[*cc as usize];
            }
        }
        x[*c as usize] = acc * u;
    }
    debug_assert_eq!(a.mul_vec(&x), b);
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_matrix;

    #[test]
    fn solves_unit_system() {
        let a = int_matrix(&[&[1, 1, 0], &[0, 1, -1], &[1, 0, 1]]);
        let b: Vec<Int> = [2, 0, 2].iter().map(|&v| Int::from(v)).collect();
        let x = solve_sparse(&a, &b).unwrap();
        assert_eq!(a.mul_vec(&x), b);
    }

    #[test]
    fn detects_parity_obstruction() {
        let a = int_matrix(&[&[2, 0], &[0, 1]]);
        let b: Vec<Int> = [3, 1].iter().map(|&v| Int::from(v)).collect();
        assert!(solve_sparse(&a, &b).is_none());
    }
}
