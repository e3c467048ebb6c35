use super::{smith_normal_form, Int, IntMatrix};

/// Result of [`solve_integer`].
#[derive(Clone, Debug)]
pub struct IntSolution {
    /// One solution with all free coordinates zero, if the system is solvable.
    pub solution: Option<Vec<Int>>,
    /// A basis of the integer kernel of `A`.
    pub kernel: Vec<Vec<Int>>,
}

/// Solves `A x = b` over the integers through the Smith form of `A`.
pub fn solve_integer(a: &IntMatrix, b: &[Int]) -> IntSolution {
    assert_eq!(a.rows(), b.len(), "dimension mismatch: {} rows vs rhs of length {}", a.rows(), b.len());
    let n = a.cols();
    let snf = smith_normal_form(a);
    let r = snf.rank();
    let ub = snf.u.mul_vec(b);
    let mut y = vec![Int::ZERO; n];
    let mut ok = true;
    for (i, ubi) in ub.iter().enumerate() {
        if i < r {
            if ubi % &snf.divisors[i] != Int::ZERO {
                ok = false;
                break;
            }
            y[i] = ubi / &snf.divisors[i];
        } else if *ubi != Int::ZERO {
            ok = false;
            break;
        }
    }
    let vt = snf.v.transpose();
    let kernel: Vec<Vec<Int>> = (r..n).map(|j| vt.row(j).fold(vec![Int::ZERO; n], |mut acc, (i, v)| {
        acc[i] = v.clone();
        acc
    })).collect();
    let solution = ok.then(|| snf.v.mul_vec(&y));
    IntSolution { solution, kernel }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::int_matrix;

    fn ints(v: &[i64]) -> Vec<Int> {
        v.iter().map(|&x| Int::from(x)).collect()
    }

    #[test]
    fn parity_unsolvable() {
        let s = solve_integer(&int_matrix(&[&[2]]), &ints(&[3]));
        assert!(s.solution.is_none());
    }

    #[test]
    fn exact_quotient() {
        let s = solve_integer(&int_matrix(&[&[2]]), &ints(&[4]));
        assert_eq!(s.solution, Some(ints(&[2])));
        assert!(s.kernel.is_empty());
    }

    #[test]
    fn zero_map() {
        let s = solve_integer(&IntMatrix::zero(1, 1), &ints(&[0]));
        assert_eq!(s.solution, Some(ints(&[0])));
        assert_eq!(s.kernel, vec![ints(&[1])]);
    }
}
