use super::{ArcId, Planar};

/// The circles obtained by smoothing every crossing. Circles are numbered by
/// their smallest arc id, so labels are canonical.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolution {
    bits: u64,
    n: usize,
    arcs: Vec<ArcId>,
    circle_of: Vec<u32>,
    circles: Vec<Vec<ArcId>>,
}

fn root(uf: &mut [u32], mut x: u32) -> u32 {
    while uf[x as usize] != x {
        let p = uf[uf[x as usize] as usize];
        uf[x as usize] = p;
        x = p;
    }
    x
}

impl Resolution {
    /// Bit `i` of `bits` chooses the smoothing at crossing `i`: 0 joins slots
    /// (0,1) and (2,3), 1 joins (0,3) and (1,2).
    pub fn new(p: &Planar, bits: u64) -> Self {
        let n_arcs = p.n_arcs();
        let mut uf: Vec<u32> = (0..n_arcs as u32).collect();
        for k in 0..p.n_crossings() {
            let s = |i: usize| p.slot_arc(k, i) as u32;
            let pairs = if bits >> k & 1 == 0 { [(s(0), s(1)), (s(2), s(3))] } else { [(s(0), s(3)), (s(1), s(2))] };
            for (x, y) in pairs {
                let (rx, ry) = (root(&mut uf, x), root(&mut uf, y));
                // keep the smaller index as the root
                if rx < ry {
                    uf[ry as usize] = rx;
                } else if ry < rx {
                    uf[rx as usize] = ry;
                }
            }
        }
        let mut label = vec![u32::MAX; n_arcs];
        let mut circle_of = vec![0u32; n_arcs];
        let mut circles: Vec<Vec<ArcId>> = Vec::new();
        for i in 0..n_arcs {
            let r = root(&mut uf, i as u32) as usize;
            if label[r] == u32::MAX {
                label[r] = circles.len() as u32;
                circles.push(Vec::new());
            }
            circle_of[i] = label[r];
            circles[label[r] as usize].push(p.arc_id(i));
        }
        Resolution { bits, n: p.n_crossings(), arcs: p.arcs().to_vec(), circle_of, circles }
    }

    pub fn bits(&self) -> u64 {
        self.bits
    }

    pub fn alpha(&self) -> String {
        (0..self.n).map(|i| if self.bits >> i & 1 == 1 { '1' } else { '0' }).collect()
    }

    pub fn degree(&self) -> usize {
        self.bits.count_ones() as usize
    }

    pub fn n_circles(&self) -> usize {
        self.circles.len()
    }

    /// Arcs of each circle, ascending; circle `i` has the `i`-th smallest minimum.
    pub fn circles(&self) -> &[Vec<ArcId>] {
        &self.circles
    }

    pub fn circle_of(&self, a: ArcId) -> Option<usize> {
        self.arcs.binary_search(&a).ok().map(|i| self.circle_of[i] as usize)
    }

    pub(crate) fn circle_of_index(&self, i: usize) -> usize {
        self.circle_of[i] as usize
    }
}
