//! The odd TQFT on objects and generating morphisms. A resolution with `c`
//! circles goes to the exterior algebra on `c` generators; monomials are bit
//! masks over the circle indices, always read in increasing order.

use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::linalg::{Int, IntMatrix};
use crate::linkdiag::Resolution;

pub type Monomial = u64;

/// Exterior algebra on `n` ordered circles. Basis: monomials by size, then
/// lexicographically in their sorted circle lists.
#[derive(Debug)]
pub struct ExteriorSpace {
    n: usize,
    basis: Vec<Monomial>,
    index: Vec<u32>,
}

static SPACES: OnceLock<Mutex<Vec<Option<Arc<ExteriorSpace>>>>> = OnceLock::new();

/// The shared space on `n` circles.
pub fn space(n: usize) -> Arc<ExteriorSpace> {
    assert!(n < 32, "too many circles for a dense monomial index");
    let cache = SPACES.get_or_init(|| Mutex::new(Vec::new()));
    let mut g = cache.lock().unwrap();
    if g.len() <= n {
        g.resize(n + 1, None);
    }
    g[n].get_or_insert_with(|| Arc::new(ExteriorSpace::new(n))).clone()
}

pub fn vertex_space(r: &Resolution) -> Arc<ExteriorSpace> {
    space(r.n_circles())
}

fn indices(m: Monomial) -> impl Iterator<Item = usize> {
    (0..64).filter(move |i| m >> i & 1 == 1)
}

impl ExteriorSpace {
    fn new(n: usize) -> Self {
        let mut basis: Vec<Monomial> = (0..1u64 << n).collect();
        basis.sort_by_cached_key(|&m| (m.count_ones(), indices(m).collect::<Vec<_>>()));
        let mut index = vec![0u32; 1 << n];
        for (i, &m) in basis.iter().enumerate() {
            index[m as usize] = i as u32;
        }
        ExteriorSpace { n, basis, index }
    }

    pub fn n_circles(&self) -> usize {
        self.n
    }

    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[Monomial] {
        &self.basis
    }

    pub fn index_of(&self, m: Monomial) -> usize {
        self.index[m as usize] as usize
    }

    /// Human-readable name of a basis element, e.g. `c0^c2` or `1`.
    pub fn label(m: Monomial) -> String {
        if m == 0 {
            return "1".into();
        }
        indices(m).map(|i| format!("c{i}")).collect::<Vec<_>>().join("^")
    }
}

fn parity_below(m: Monomial, c: usize) -> bool {
    (m & ((1u64 << c) - 1)).count_ones() % 2 == 1
}

/// `c ∧ m` as `(sign, monomial)`, or `None` when `c` is already in `m`.
pub fn wedge(c: usize, m: Monomial) -> Option<(i8, Monomial)> {
    if m >> c & 1 == 1 {
        return None;
    }
    Some((if parity_below(m, c) { -1 } else { 1 }, m | 1 << c))
}

/// Left contraction with the dual of `c`.
pub fn contract(c: usize, m: Monomial) -> Option<(i8, Monomial)> {
    if m >> c & 1 == 0 {
        return None;
    }
    Some((if parity_below(m, c) { -1 } else { 1 }, m & !(1 << c)))
}

/// The algebra map sending circle `i` to circle `corr[i]`.
pub fn hom(corr: &[usize], m: Monomial) -> Option<(i8, Monomial)> {
    let mut acc: Monomial = 0;
    let mut sign = 1i8;
    for i in indices(m) {
        let j = corr[i];
        if acc >> j & 1 == 1 {
            return None;
        }
        if (acc >> j >> 1).count_ones() % 2 == 1 {
            sign = -sign;
        }
        acc |= 1 << j;
    }
    Some((sign, acc))
}

/// Matrix of a linear map given by the image of every basis monomial.
pub fn build_matrix<F>(src: &ExteriorSpace, dst: &ExteriorSpace, mut f: F) -> IntMatrix
where
    F: FnMut(Monomial, &mut Vec<(Monomial, i64)>),
{
    let mut rows: Vec<Vec<(u32, Int)>> = vec![Vec::new(); dst.rank()];
    let mut out = Vec::new();
    for (col, &m) in src.basis().iter().enumerate() {
        out.clear();
        f(m, &mut out);
        for &(img, coef) in &out {
            if coef != 0 {
                rows[dst.index_of(img)].push((col as u32, Int::from(coef)));
            }
        }
    }
    IntMatrix::from_rows(src.rank(), rows)
}

/// The correspondence that sends the circles of `src` other than `skip_src`
/// to the circles of `dst` other than `skip_dst`, preserving order.
pub fn order_preserving(n_src: usize, n_dst: usize, skip_src: &[usize], skip_dst: &[usize]) -> Vec<usize> {
    let targets: Vec<usize> = (0..n_dst).filter(|j| !skip_dst.contains(j)).collect();
    let mut corr = vec![usize::MAX; n_src];
    let mut t = targets.into_iter();
    for (i, slot) in corr.iter_mut().enumerate() {
        if !skip_src.contains(&i) {
            *slot = t.next().expect("circle bookkeeping");
        }
    }
    corr
}

fn check(cond: bool, msg: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Dimension(msg.into()))
    }
}

/// Merge of `c0` and `c1` into `c_new`: the quotient by `c0 - c1`.
pub fn merge_map(src: &ExteriorSpace, dst: &ExteriorSpace, c0: usize, c1: usize, c_new: usize) -> Result<IntMatrix> {
    check(c0 != c1 && c0 < src.n && c1 < src.n && c_new < dst.n && dst.n + 1 == src.n, "merge circles")?;
    let mut corr = order_preserving(src.n, dst.n, &[c0, c1], &[c_new]);
    corr[c0] = c_new;
    corr[c1] = c_new;
    Ok(merge_with(src, dst, &corr))
}

pub fn merge_with(src: &ExteriorSpace, dst: &ExteriorSpace, corr: &[usize]) -> IntMatrix {
    build_matrix(src, dst, |m, out| {
        if let Some((s, img)) = hom(corr, m) {
            out.push((img, s as i64));
        }
    })
}

/// Split of `c` into the ordered pair `(c0', c1')`: `m ↦ (c0' - c1') ∧ m̃`.
pub fn split_map(src: &ExteriorSpace, dst: &ExteriorSpace, c: usize, c0: usize, c1: usize) -> Result<IntMatrix> {
    check(c < src.n && c0 != c1 && c0 < dst.n && c1 < dst.n && dst.n == src.n + 1, "split circles")?;
    let mut corr = order_preserving(src.n, dst.n, &[c], &[c0, c1]);
    corr[c] = c0;
    Ok(split_with(src, dst, &corr, c0, c1))
}

/// Split with an explicit lift `corr` (the split circle may go to either half).
pub fn split_with(src: &ExteriorSpace, dst: &ExteriorSpace, corr: &[usize], c0: usize, c1: usize) -> IntMatrix {
    build_matrix(src, dst, |m, out| {
        if let Some((s, img)) = hom(corr, m) {
            if let Some((s0, w0)) = wedge(c0, img) {
                out.push((w0, (s * s0) as i64));
            }
            if let Some((s1, w1)) = wedge(c1, img) {
                out.push((w1, -(s * s1) as i64));
            }
        }
    })
}

/// Birth of circle `new` in `dst`; the other circles correspond in order.
pub fn birth_map(src: &ExteriorSpace, dst: &ExteriorSpace, new: usize) -> Result<IntMatrix> {
    check(new < dst.n && dst.n == src.n + 1, "birth circles")?;
    let corr = order_preserving(src.n, dst.n, &[], &[new]);
    Ok(merge_with(src, dst, &corr))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeathOrientation {
    Clockwise,
    Counterclockwise,
}

/// Death of circle `dying`: left contraction with its dual, negated for the
/// counterclockwise orientation.
pub fn death_map(src: &ExteriorSpace, dst: &ExteriorSpace, dying: usize, o: DeathOrientation) -> Result<IntMatrix> {
    check(dying < src.n && src.n == dst.n + 1, "death circles")?;
    let corr = order_preserving(src.n, dst.n, &[dying], &[]);
    let m = death_with(src, dst, dying, &corr);
    Ok(match o {
        DeathOrientation::Clockwise => m,
        DeathOrientation::Counterclockwise => m.neg(),
    })
}

pub fn death_with(src: &ExteriorSpace, dst: &ExteriorSpace, dying: usize, corr: &[usize]) -> IntMatrix {
    build_matrix(src, dst, |m, out| {
        if let Some((s0, rest)) = contract(dying, m) {
            if let Some((s1, img)) = hom(corr, rest) {
                out.push((img, (s0 * s1) as i64));
            }
        }
    })
}

/// Left wedge with `circle`.
pub fn dot_map(space: &ExteriorSpace, circle: usize) -> Result<IntMatrix> {
    check(circle < space.n, "dot circle")?;
    Ok(build_matrix(space, space, |m, out| {
        if let Some((s, img)) = wedge(circle, m) {
            out.push((img, s as i64));
        }
    }))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn col(m: &IntMatrix, sp: &ExteriorSpace, mono: Monomial) -> Vec<(Monomial, i64)> {
        let j = sp.index_of(mono);
        let mut out = Vec::new();
        for (r, c, v) in m.iter() {
            if c == j {
                out.push((r, crate::linalg::to_i64(v)));
            }
        }
        out.into_iter().map(|(r, v)| (r as Monomial, v)).collect()
    }

    #[test]
    fn ranks_and_order() {
        assert_eq!(space(0).rank(), 1);
        assert_eq!(space(1).rank(), 2);
        assert_eq!(space(2).rank(), 4);
        assert_eq!(space(3).basis(), &[0, 1, 2, 4, 3, 5, 6, 7]);
    }

    #[test]
    fn merge_and_split() {
        let (s2, s1) = (space(2), space(1));
        let m = merge_map(&s2, &s1, 0, 1, 0).unwrap();
        assert_eq!(m.to_dense()[1], vec![Int::ZERO, Int::ONE, Int::ONE, Int::ZERO]);
        assert!(m.to_dense().iter().all(|r| r[3] == Int::ZERO));
        let s = split_map(&s1, &s2, 0, 0, 1).unwrap();
        // 1 ↦ c0 - c1 ; c ↦ c0 ∧ c1
        assert_eq!(col(&s, &s1, 0), vec![(1, 1), (2, -1)]);
        assert_eq!(col(&s, &s1, 1), vec![(3, 1)]);
        let swapped = split_map(&s1, &s2, 0, 1, 0).unwrap();
        assert_eq!(swapped, s.neg());
    }

    #[test]
    fn birth_death_dot() {
        let (s1, s2) = (space(1), space(2));
        let b = birth_map(&s1, &s2, 1).unwrap();
        assert_eq!(crate::linalg::rank(&b), 2);
        let d = death_map(&s2, &s1, 1, DeathOrientation::Clockwise).unwrap();
        let dccw = death_map(&s2, &s1, 1, DeathOrientation::Counterclockwise).unwrap();
        assert_eq!(dccw, d.neg());
        // c0 ∧ c1 ↦ -c0
        assert_eq!(col(&d, &s2, 3), vec![(1, -1)]);
        assert!(d.mul(&b).is_zero());
        let m = merge_map(&s2, &s1, 0, 1, 0).unwrap();
        assert_eq!(m.mul(&b), IntMatrix::identity(2));
        let (a, c) = (dot_map(&s2, 0).unwrap(), dot_map(&s2, 1).unwrap());
        assert!(a.mul(&a).is_zero());
        assert_eq!(a.mul(&c), c.mul(&a).neg());
        let sp = split_map(&s1, &s2, 0, 0, 1).unwrap();
        let d0 = death_map(&s2, &s1, 0, DeathOrientation::Clockwise).unwrap();
        assert_eq!(d0.mul(&sp).equal_up_to_sign(&IntMatrix::identity(2)), Some(1));
    }
}
