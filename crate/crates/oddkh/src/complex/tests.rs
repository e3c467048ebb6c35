use std::sync::Arc;

use super::maps::homotopic_up_to_sign;
use super::*;
use crate::cube::{enumerate_sign_assignments, sign_change, Arrows};
use crate::linalg::int_matrix;
use crate::linkdiag::parse_pd;

fn hopf() -> LinkDiagram {
    parse_pd("[[1,3,2,4],[3,1,4,2]]").unwrap()
}

fn trefoil() -> LinkDiagram {
    parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap()
}

fn free(h: i32, q: i32) -> ((i32, i32), HomologyGroup) {
    ((h, q), HomologyGroup { rank: 1, torsion: vec![] })
}

#[test]
fn unknot() {
    let c = odd_complex(&LinkDiagram::unlink(1), Theory::Y).unwrap();
    assert_eq!(c.total_rank(), 2);
    let h = c.homology();
    assert_eq!(h.groups, [free(0, -1), free(0, 1)].into_iter().collect());
    let two = odd_complex(&LinkDiagram::unlink(2), Theory::Y).unwrap();
    let circ = LaurentPolynomial::monomial(1, 1).add(&LaurentPolynomial::monomial(-1, 1));
    assert_eq!(two.graded_euler_characteristic(), circ.pow(2));
}

#[test]
fn hopf_ranks() {
    let c = odd_complex(&hopf(), Theory::Y).unwrap();
    let ranks: Vec<usize> = c.degrees().map(|h| c.rank(h)).collect();
    assert_eq!(ranks, vec![4, 4, 4]);
    assert_eq!(c.h_min(), 0);
}

#[test]
fn trefoil_homology_is_frozen() {
    for th in [Theory::X, Theory::Y] {
        let c = odd_complex(&trefoil(), th).unwrap();
        let h = c.homology();
        let want = [free(-3, -9), free(-3, -7), free(-2, -7), free(-2, -5), free(0, -3), free(0, -1)];
        assert_eq!(h.groups, want.into_iter().collect());
    }
}

#[test]
fn acyclic_pieces() {
    let c = Arc::new(ChainComplex::from_matrices(0, vec![int_matrix(&[&[1]])]).unwrap());
    assert!(c.homology().is_zero());
    let id = ChainMap::identity(c.clone());
    assert!(id.is_chain_map());
    let z = ChainMap::zero(c.clone(), c.clone());
    let w = homotopic_up_to_sign(&id, &z).unwrap().unwrap();
    assert!(w.witnesses(&id, &z));
    let u = Arc::new(odd_complex(&LinkDiagram::unlink(1), Theory::Y).unwrap());
    let idu = ChainMap::identity(u.clone());
    assert!(homotopic_up_to_sign(&idu, &ChainMap::zero(u.clone(), u.clone())).unwrap().is_none());
    assert_eq!(idu.neg().equal_up_to_sign(&idu), Some(-1));
    assert_eq!(idu.then(&idu).unwrap().equal_up_to_sign(&idu), Some(1));
    let same = homotopic_up_to_sign(&idu, &idu).unwrap().unwrap();
    assert_eq!(same.sign, 1);
    assert!(same.h.is_empty());
}

#[test]
fn torsion_and_presentations() {
    let c = Arc::new(ChainComplex::from_matrices(0, vec![int_matrix(&[&[2, 0], &[0, 0]])]).unwrap());
    let h = c.homology();
    assert_eq!(h.get(1, 0), HomologyGroup { rank: 1, torsion: vec![2] });
    assert_eq!(h.get(0, 0).rank, 1);
    let p = c.presentation(1, 0);
    assert_eq!(p.orders.len(), 2);
    let id = ChainMap::identity(c.clone());
    for (_, m) in id.induced_map_on_homology().unwrap() {
        assert_eq!(m, crate::linalg::IntMatrix::identity(m.rows()));
    }
    // 2 * id is zero on Z/2 but not on Z
    let two = id.scale(2);
    assert!(!two.induces_zero().unwrap());
    assert_eq!(h.mod_p_dims(2), c.reduce_coefficients(2).unwrap());
}

#[test]
fn sign_assignments_give_isomorphic_complexes() {
    let d = trefoil();
    let cube = ResolutionCube::of(&d, Arrows::default()).unwrap();
    let all = enumerate_sign_assignments(&cube, Theory::Y).unwrap();
    let c0 = Arc::new(assemble_complex(&d, &cube, &all[0]).unwrap());
    for s in all.iter().step_by(17) {
        let c1 = Arc::new(assemble_complex(&d, &cube, s).unwrap());
        let eta = sign_change(&cube, &all[0], s).unwrap();
        let f = ChainMap::vertex_signs(c0.clone(), c1.clone(), &eta).unwrap();
        assert!(f.is_chain_map());
        assert_eq!(c1.homology(), c0.homology());
    }
}

#[test]
fn orientation_flip_keeps_differentials() {
    let d = trefoil();
    let cube = ResolutionCube::of(&d, Arrows::default()).unwrap();
    let s = cube.solve_sign_assignment(Theory::Y).unwrap();
    let c = assemble_complex(&d, &cube, &s).unwrap();
    for i in 0..3 {
        let flipped = ResolutionCube::of(&d, Arrows::default().flipped(i)).unwrap();
        let s2 = s.flip_orientation(&cube, i);
        let c2 = assemble_complex(&d, &flipped, &s2).unwrap();
        assert_eq!(c2, c);
    }
}
