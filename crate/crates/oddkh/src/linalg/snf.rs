use super::{floor_div, Int, IntMatrix};

/// Smith normal form `U * A * V = D` with `U`, `V` unimodular.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: IntMatrix,
    pub u: IntMatrix,
    pub v: IntMatrix,
    /// Inverses of `u` and `v`, computed alongside them.
    pub u_inv: IntMatrix,
    pub v_inv: IntMatrix,
    /// Nonzero diagonal entries `d1 | d2 | ...`, all positive.
    pub divisors: Vec<Int>,
}

impl SnfResult {
    pub fn rank(&self) -> usize {
        self.divisors.len()
    }
}

struct Work {
    a: Vec<Vec<Int>>,
    m: usize,
    n: usize,
    track: bool,
    u: Vec<Vec<Int>>,
    u_inv: Vec<Vec<Int>>,
    v: Vec<Vec<Int>>,
    v_inv: Vec<Vec<Int>>,
}

fn ident(n: usize) -> Vec<Vec<Int>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { Int::ONE } else { Int::ZERO }).collect()).collect()
}

fn axpy_row(mat: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
    // row dst -= q * row src
    let (a, b) = if dst < src {
        let (lo, hi) = mat.split_at_mut(src);
        (&mut lo[dst], &hi[0])
    } else {
        let (lo, hi) = mat.split_at_mut(dst);
        (&mut hi[0], &lo[src])
    };
    for (x, y) in a.iter_mut().zip(b.iter()) {
        if *y != Int::ZERO {
            *x -= q * y;
        }
    }
}

fn axpy_col(mat: &mut [Vec<Int>], dst: usize, src: usize, q: &Int) {
    // col dst -= q * col src
    for row in mat.iter_mut() {
        if row[src] != Int::ZERO {
            let t = q * &row[src];
            row[dst] -= t;
        }
    }
}

fn swap_cols(mat: &mut [Vec<Int>], i: usize, j: usize) {
    for row in mat.iter_mut() {
        row.swap(i, j);
    }
}

impl Work {
    fn row_sub(&mut self, dst: usize, src: usize, q: &Int) {
        axpy_row(&mut self.a, dst, src, q);
        if self.track {
            axpy_row(&mut self.u, dst, src, q);
            let nq = -q;
            axpy_col(&mut self.u_inv, src, dst, &nq);
        }
    }

    fn col_sub(&mut self, dst: usize, src: usize, q: &Int) {
        axpy_col(&mut self.a, dst, src, q);
        if self.track {
            axpy_col(&mut self.v, dst, src, q);
            let nq = -q;
            axpy_row(&mut self.v_inv, src, dst, &nq);
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if self.track {
            self.u.swap(i, j);
            swap_cols(&mut self.u_inv, i, j);
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        swap_cols(&mut self.a, i, j);
        if self.track {
            swap_cols(&mut self.v, i, j);
            self.v_inv.swap(i, j);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -&*x;
        }
        if self.track {
            for x in self.u[i].iter_mut() {
                *x = -&*x;
            }
            for row in self.u_inv.iter_mut() {
                row[i] = -&row[i];
            }
        }
    }

    /// Smallest nonzero |entry| in the lower-right block from `t`, ties by lowest (row, col).
    fn pivot(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize, Int)> = None;
        for i in t..self.m {
            for j in t..self.n {
                let v = &self.a[i][j];
                if *v == Int::ZERO {
                    continue;
                }
                let abs = super::abs(v);
                if best.as_ref().is_none_or(|b| abs < b.2) {
                    let one = abs == Int::ONE;
                    best = Some((i, j, abs));
                    if one {
                        return best.map(|b| (b.0, b.1));
                    }
                }
            }
        }
        best.map(|b| (b.0, b.1))
    }

    fn run(&mut self) -> Vec<Int> {
        let mut divisors = Vec::new();
        let mut t = 0;
        while t < self.m.min(self.n) {
            let Some((pi, pj)) = self.pivot(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                // clear column t and row t; whenever a remainder survives, move the
                // smallest one into the pivot position and repeat
                let mut dirty = false;
                for i in t + 1..self.m {
                    if self.a[i][t] != Int::ZERO {
                        let q = floor_div(&self.a[i][t], &self.a[t][t]);
                        self.row_sub(i, t, &q);
                        dirty |= self.a[i][t] != Int::ZERO;
                    }
                }
                for j in t + 1..self.n {
                    if self.a[t][j] != Int::ZERO {
                        let q = floor_div(&self.a[t][j], &self.a[t][t]);
                        self.col_sub(j, t, &q);
                        dirty |= self.a[t][j] != Int::ZERO;
                    }
                }
                if dirty {
                    let mut best = (t, t, super::abs(&self.a[t][t]));
                    for i in t + 1..self.m {
                        let v = super::abs(&self.a[i][t]);
                        if v != Int::ZERO && v < best.2 {
                            best = (i, t, v);
                        }
                    }
                    for j in t + 1..self.n {
                        let v = super::abs(&self.a[t][j]);
                        if v != Int::ZERO && v < best.2 {
                            best = (t, j, v);
                        }
                    }
                    self.swap_rows(t, best.0);
                    self.swap_cols(t, best.1);
                    continue;
                }
                // divisibility of the remaining block
                let p = self.a[t][t].clone();
                let mut bad = None;
                'scan: for i in t + 1..self.m {
                    for j in t + 1..self.n {
                        if &self.a[i][j] % &p != Int::ZERO {
                            bad = Some(i);
                            break 'scan;
                        }
                    }
                }
                match bad {
                    Some(i) => {
                        // row t += row i
                        self.row_sub(t, i, &Int::NEG_ONE);
                    }
                    None => break,
                }
            }
            if self.a[t][t] < Int::ZERO {
                self.negate_row(t);
            }
            divisors.push(self.a[t][t].clone());
            t += 1;
        }
        divisors
    }
}

fn run_snf(a: &IntMatrix, track: bool) -> (Work, Vec<Int>) {
    let (m, n) = (a.rows(), a.cols());
    let mut w = Work {
        a: a.to_dense(),
        m,
        n,
        track,
        u: if track { ident(m) } else { Vec::new() },
        u_inv: if track { ident(m) } else { Vec::new() },
        v: if track { ident(n) } else { Vec::new() },
        v_inv: if track { ident(n) } else { Vec::new() },
    };
    let divisors = w.run();
    (w, divisors)
}

/// Smith normal form with unimodular transforms. Dense internally; meant for
/// matrices up to a few hundred rows.
pub fn smith_normal_form(a: &IntMatrix) -> SnfResult {
    let (m, n) = (a.rows(), a.cols());
    let (w, divisors) = run_snf(a, true);
    let d = IntMatrix::from_triplets(m, n, divisors.iter().enumerate().map(|(i, v)| (i, i, v.clone())));
    let res = SnfResult {
        d,
        u: IntMatrix::from_dense(&w.u, m),
        v: IntMatrix::from_dense(&w.v, n),
        u_inv: IntMatrix::from_dense(&w.u_inv, m),
        v_inv: IntMatrix::from_dense(&w.v_inv, n),
        divisors,
    };
    #[cfg(debug_assertions)]
    {
        assert_eq!(res.u.mul(a).mul(&res.v), res.d, "SNF transform check failed");
    }
    res
}

/// Elementary divisors only (no transforms), dense.
pub fn dense_divisors(a: &IntMatrix) -> Vec<Int> {
    run_snf(a, false).1
}

/// Rank and elementary divisors of a sparse matrix. Unit pivots are eliminated
/// sparsely first; whatever survives goes through the dense reduction.
pub fn elementary_divisors(a: &IntMatrix) -> Vec<Int> {
    let mut rows: Vec<Vec<(u32, Int)>> =
        (0..a.rows()).map(|r| a.row(r).map(|(c, v)| (c as u32, v.clone())).collect()).collect();
    let unit_rank = super::sparse::eliminate_units(&mut rows, a.cols());
    let rest: Vec<Vec<(u32, Int)>> = rows.into_iter().filter(|r| !r.is_empty()).collect();
    let mut out = vec![Int::ONE; unit_rank];
    if !rest.is_empty() {
        let mut used: Vec<u32> = rest.iter().flat_map(|r| r.iter().map(|e| e.0)).collect();
        used.sort_unstable();
        used.dedup();
        let remap = |c: u32| used.binary_search(&c).unwrap() as u32;
        let compact: Vec<Vec<(u32, Int)>> =
            rest.into_iter().map(|r| r.into_iter().map(|(c, v)| (remap(c), v)).collect()).collect();
        let m = IntMatrix::from_rows(used.len(), compact);
        out.extend(dense_divisors(&m));
    }
    out
}

/// Integer rank.
pub fn rank(a: &IntMatrix) -> usize {
    elementary_divisors(a).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_matrix;

    #[test]
    fn zero_matrix() {
        let a = IntMatrix::zero(2, 3);
        let s = smith_normal_form(&a);
        assert!(s.divisors.is_empty());
        assert_eq!(s.u, IntMatrix::identity(2));
        assert_eq!(s.v, IntMatrix::identity(3));
    }

    #[test]
    fn two_by_two() {
        let a = int_matrix(&[&[2, 4], &[6, 8]]);
        let s = smith_normal_form(&a);
        assert_eq!(s.divisors, vec![Int::from(2), Int::from(4)]);
        assert_eq!(s.u.mul(&a).mul(&s.v), s.d);
        assert_eq!(s.u.mul(&s.u_inv), IntMatrix::identity(2));
        assert_eq!(s.v_inv.mul(&s.v), IntMatrix::identity(2));
    }

    #[test]
    fn identity() {
        let a = IntMatrix::identity(4);
        assert_eq!(smith_normal_form(&a).d, a);
    }

    #[test]
    fn sparse_path_matches_dense() {
        let a = int_matrix(&[&[1, 2, 0, 3], &[0, 4, 6, 0], &[2, 0, 0, 6], &[0, 2, 3, 0]]);
        assert_eq!(elementary_divisors(&a), smith_normal_form(&a).divisors);
    }
}
