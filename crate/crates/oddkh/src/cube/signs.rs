//! Sign assignments: GF(2) 1-cochains on the cube whose coboundary matches
//! the face signs.

use std::collections::VecDeque;

use super::{cell_name, ResolutionCube, Theory};
use crate::error::{Error, Result};

/// `negative[e]` is true when edge `e` (in cube edge order) carries -1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignAssignment {
    pub negative: Vec<bool>,
    pub theory: Theory,
}

impl SignAssignment {
    pub fn sign(&self, e: usize) -> i8 {
        if self.negative[e] {
            -1
        } else {
            1
        }
    }

    /// Checks the face condition: product of the four edge signs times sigma is -1.
    pub fn validate(&self, cube: &ResolutionCube) -> Result<()> {
        if self.negative.len() != cube.edges().len() {
            return Err(Error::Signs(format!("{} edge signs for {} edges", self.negative.len(), cube.edges().len())));
        }
        for f in cube.faces() {
            if face_parity(cube, &self.negative, f.base, f.i, f.j) != wanted(f.ty.sigma(self.theory)) {
                return Err(Error::Signs(format!("face {} fails the sign condition", cell_name(cube.n(), f.base, &[f.i, f.j]))));
            }
        }
        Ok(())
    }

    pub fn is_valid(&self, cube: &ResolutionCube) -> bool {
        self.validate(cube).is_ok()
    }

    /// Adds the coboundary of the vertex cochain `eta`.
    pub fn add_coboundary(&self, cube: &ResolutionCube, eta: &[bool]) -> SignAssignment {
        let negative = cube
            .edges()
            .iter()
            .zip(&self.negative)
            .map(|(e, &s)| s ^ eta[e.from as usize] ^ eta[e.to() as usize])
            .collect();
        SignAssignment { negative, theory: self.theory }
    }

    /// The assignment for the same cube with the arrow at crossing `i`
    /// flipped: split edges in direction `i` change sign.
    pub fn flip_orientation(&self, cube: &ResolutionCube, i: usize) -> SignAssignment {
        let negative = cube
            .edges()
            .iter()
            .zip(&self.negative)
            .map(|(e, &s)| s ^ (e.crossing == i && !e.saddle.is_merge()))
            .collect();
        SignAssignment { negative, theory: self.theory }
    }
}

/// Parity of the sum of the face's edge bits that makes the face valid.
fn wanted(sigma: i8) -> bool {
    sigma > 0
}

fn face_parity(cube: &ResolutionCube, neg: &[bool], base: u64, i: usize, j: usize) -> bool {
    neg[cube.edge_id(base, i)]
        ^ neg[cube.edge_id(base, j)]
        ^ neg[cube.edge_id(base | 1 << i, j)]
        ^ neg[cube.edge_id(base | 1 << j, i)]
}

impl ResolutionCube {
    /// Some valid assignment, by propagating each direction across the lower
    /// directions. Fails only if the face classification is inconsistent.
    pub fn any_sign_assignment(&self, theory: Theory) -> Result<SignAssignment> {
        let n = self.n();
        let mut neg = vec![false; self.edges().len()];
        // sigma lookup for face (base, i, j)
        let mut sigma = std::collections::HashMap::with_capacity(self.faces().len());
        for f in self.faces() {
            sigma.insert((f.base, f.i, f.j), f.ty.sigma(theory));
        }
        for k in 0..n {
            for high in 0..1u64 << (n - k - 1) {
                let root = (high << (k + 1)) & !(1 << k);
                // BFS over the lower bits
                let mut seen = vec![false; 1 << k];
                seen[0] = true;
                let mut queue = VecDeque::from([0u64]);
                while let Some(low) = queue.pop_front() {
                    let v = root | low;
                    for i in 0..k {
                        let nb = low ^ 1 << i;
                        if seen[nb as usize] {
                            continue;
                        }
                        seen[nb as usize] = true;
                        // face spanned by i and k with base v minus bit i
                        let base = v & !(1 << i);
                        let s = sigma[&(base, i, k)];
                        let e_ik = neg[self.edge_id(base, i)] ^ neg[self.edge_id(base | 1 << k, i)];
                        let known = neg[self.edge_id(v, k)];
                        // known ^ other ^ e_ik == wanted
                        let other = wanted(s) ^ e_ik ^ known;
                        neg[self.edge_id(root | nb, k)] = other;
                        queue.push_back(nb);
                    }
                }
            }
        }
        let a = SignAssignment { negative: neg, theory };
        a.validate(self)?;
        Ok(a)
    }

    /// The canonical assignment: the solution of the face system found by
    /// elimination over edges in lexicographic order with free variables 0.
    /// The free edges form the spanning tree picked greedily from the last
    /// edge backwards, so the canonical solution is the one vanishing there.
    pub fn solve_sign_assignment(&self, theory: Theory) -> Result<SignAssignment> {
        let a = self.any_sign_assignment(theory)?;
        let tree = self.reverse_greedy_tree();
        // eta with a + d(eta) = 0 on the tree
        let nv = 1usize << self.n();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        for &e in &tree {
            let ed = &self.edges()[e];
            adj[ed.from as usize].push((ed.to() as usize, e));
            adj[ed.to() as usize].push((ed.from as usize, e));
        }
        let mut eta = vec![false; nv];
        let mut seen = vec![false; nv];
        seen[0] = true;
        let mut queue = VecDeque::from([0usize]);
        while let Some(v) = queue.pop_front() {
            for &(w, e) in &adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    eta[w] = eta[v] ^ a.negative[e];
                    queue.push_back(w);
                }
            }
        }
        let out = a.add_coboundary(self, &eta);
        debug_assert!(tree.iter().all(|&e| !out.negative[e]));
        Ok(out)
    }

    /// Spanning tree chosen greedily from the last edge to the first.
    fn reverse_greedy_tree(&self) -> Vec<usize> {
        let nv = 1usize << self.n();
        let mut uf: Vec<usize> = (0..nv).collect();
        fn root(uf: &mut [usize], mut x: usize) -> usize {
            while uf[x] != x {
                uf[x] = uf[uf[x]];
                x = uf[x];
            }
            x
        }
        let mut tree = Vec::with_capacity(nv.saturating_sub(1));
        for (k, e) in self.edges().iter().enumerate().rev() {
            let (a, b) = (root(&mut uf, e.from as usize), root(&mut uf, e.to() as usize));
            if a != b {
                uf[a] = b;
                tree.push(k);
            }
        }
        tree
    }

    /// Extends a sign assignment given on the edges marked in `on_sub` (a
    /// union of subcubes with vanishing first cohomology) to the whole cube,
    /// following the constructive proof: canonical solution plus the
    /// coboundary of a vertex cochain supported on the subcomplex.
    pub fn extend_sign_assignment(&self, on_sub: &[bool], partial: &SignAssignment) -> Result<SignAssignment> {
        let base = self.solve_sign_assignment(partial.theory)?;
        let nv = 1usize << self.n();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nv];
        let mut in_sub = vec![false; nv];
        for (k, e) in self.edges().iter().enumerate() {
            if on_sub[k] {
                adj[e.from as usize].push((e.to() as usize, k));
                adj[e.to() as usize].push((e.from as usize, k));
                in_sub[e.from as usize] = true;
                in_sub[e.to() as usize] = true;
            }
        }
        let mut eta = vec![false; nv];
        let mut seen = vec![false; nv];
        for start in 0..nv {
            if !in_sub[start] || seen[start] {
                continue;
            }
            seen[start] = true;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(w, e) in &adj[v] {
                    let want = eta[v] ^ base.negative[e] ^ partial.negative[e];
                    if !seen[w] {
                        seen[w] = true;
                        eta[w] = want;
                        queue.push_back(w);
                    } else if eta[w] != want {
                        return Err(Error::Signs("partial assignment is not valid on the subcomplex".into()));
                    }
                }
            }
        }
        let out = base.add_coboundary(self, &eta);
        out.validate(self)?;
        Ok(out)
    }
}

/// Vertex cochain `eta` with `d(eta) = a + b`, if the two assignments differ
/// by a coboundary. `(-1)^eta` at each vertex is then a chain isomorphism
/// between the two complexes.
pub fn sign_change(cube: &ResolutionCube, a: &SignAssignment, b: &SignAssignment) -> Result<Vec<bool>> {
    let nv = 1usize << cube.n();
    let mut adj: Vec<Vec<(usize, bool)>> = vec![Vec::new(); nv];
    for (k, e) in cube.edges().iter().enumerate() {
        let d = a.negative[k] ^ b.negative[k];
        adj[e.from as usize].push((e.to() as usize, d));
        adj[e.to() as usize].push((e.from as usize, d));
    }
    let mut eta = vec![false; nv];
    let mut seen = vec![false; nv];
    seen[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &(w, d) in &adj[v] {
            if !seen[w] {
                seen[w] = true;
                eta[w] = eta[v] ^ d;
                queue.push_back(w);
            } else if eta[w] != eta[v] ^ d {
                return Err(Error::Signs("assignments do not differ by a coboundary".into()));
            }
        }
    }
    Ok(eta)
}

/// The coboundary of a vertex cochain, as edge bits.
pub fn coboundary(cube: &ResolutionCube, eta: &[bool]) -> Vec<bool> {
    cube.edges().iter().map(|e| eta[e.from as usize] ^ eta[e.to() as usize]).collect()
}

/// Every valid assignment, by exhaustion. Only for cubes with at most three crossings.
pub fn enumerate_sign_assignments(cube: &ResolutionCube, theory: Theory) -> Result<Vec<SignAssignment>> {
    if cube.n() > 3 {
        return Err(Error::TooLarge { n: cube.n(), limit: 3 });
    }
    let m = cube.edges().len();
    let mut out = Vec::new();
    for bits in 0u64..1 << m {
        let a = SignAssignment { negative: (0..m).map(|k| bits >> k & 1 == 1).collect(), theory };
        if a.is_valid(cube) {
            out.push(a);
        }
    }
    Ok(out)
}
