use super::*;
use crate::linalg::{solve_gf2, BitMatrix};
use crate::linkdiag::parse_pd;

fn hopf() -> LinkDiagram {
    parse_pd("[[1,3,2,4],[3,1,4,2]]").unwrap()
}

fn trefoil() -> LinkDiagram {
    parse_pd("[[1,4,2,5],[3,6,4,1],[5,2,6,3]]").unwrap()
}

#[test]
fn sizes() {
    let u = ResolutionCube::of(&LinkDiagram::unlink(1), Arrows::default()).unwrap();
    assert_eq!((u.vertices().len(), u.edges().len(), u.faces().len()), (1, 0, 0));
    let h = ResolutionCube::of(&hopf(), Arrows::default()).unwrap();
    assert_eq!((h.vertices().len(), h.edges().len(), h.faces().len()), (4, 4, 1));
    let t = ResolutionCube::of(&trefoil(), Arrows::default()).unwrap();
    assert_eq!((t.vertices().len(), t.edges().len(), t.faces().len()), (8, 12, 6));
}

#[test]
fn counts_of_valid_assignments() {
    let k = crate::linkdiag::insert_kink(&LinkDiagram::unlink(1), 1, 1).unwrap();
    for (d, want) in [(k, 2), (hopf(), 8), (trefoil(), 128)] {
        let c = ResolutionCube::of(&d, Arrows::default()).unwrap();
        for th in [Theory::X, Theory::Y] {
            assert_eq!(enumerate_sign_assignments(&c, th).unwrap().len(), want);
        }
    }
}

/// Dense GF(2) elimination over edges in lexicographic order.
fn dense_canonical(c: &ResolutionCube, th: Theory) -> Vec<bool> {
    let m = c.edges().len();
    let mut a = BitMatrix::new(c.faces().len(), m);
    let mut b = Vec::new();
    for (r, f) in c.faces().iter().enumerate() {
        for (v, k) in [(f.base, f.i), (f.base, f.j), (f.base | 1 << f.i, f.j), (f.base | 1 << f.j, f.i)] {
            a.flip(r, c.edge_id(v, k));
        }
        b.push(f.ty.sigma(th) > 0);
    }
    let s = solve_gf2(&a, &b);
    assert_eq!(s.nullity, (1 << c.n()) - 1);
    s.solution.unwrap()
}

#[test]
fn canonical_solution_matches_elimination() {
    let fig8 = parse_pd("[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]").unwrap();
    for d in [hopf(), trefoil(), fig8] {
        for arrows in [Arrows(0), Arrows(0b101)] {
            let c = ResolutionCube::of(&d, arrows).unwrap();
            for th in [Theory::X, Theory::Y] {
                let s = c.solve_sign_assignment(th).unwrap();
                assert!(s.is_valid(&c));
                assert_eq!(s.negative, dense_canonical(&c, th));
            }
        }
    }
}

#[test]
fn faces_agree_with_tqft_composites() {
    let fig8 = parse_pd("[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]").unwrap();
    for d in [hopf(), trefoil(), fig8] {
        for arrows in [Arrows(0), Arrows(0b1010), Arrows(0b111)] {
            let c = ResolutionCube::of(&d, arrows).unwrap();
            for f in c.faces() {
                let a = c.edge_map(c.edge(f.base | 1 << f.i, f.j)).mul(&c.edge_map(c.edge(f.base, f.i)));
                let b = c.edge_map(c.edge(f.base | 1 << f.j, f.i)).mul(&c.edge_map(c.edge(f.base, f.j)));
                if a.is_zero() && b.is_zero() {
                    assert!(f.ty.is_ladybug(), "{:?}", f);
                } else {
                    assert!(!f.ty.is_ladybug());
                    assert_eq!(a.equal_up_to_sign(&b), Some(f.ty.sigma(Theory::Y)), "{:?}", f);
                }
            }
        }
    }
}

#[test]
fn differences_are_coboundaries() {
    let c = ResolutionCube::of(&trefoil(), Arrows::default()).unwrap();
    let all = enumerate_sign_assignments(&c, Theory::Y).unwrap();
    for a in &all[..8] {
        for b in &all {
            let eta = sign_change(&c, a, b).unwrap();
            let d = coboundary(&c, &eta);
            let diff: Vec<bool> = a.negative.iter().zip(&b.negative).map(|(x, y)| x ^ y).collect();
            assert_eq!(d, diff);
        }
    }
}

#[test]
fn extension_restricts() {
    let c = ResolutionCube::of(&trefoil(), Arrows::default()).unwrap();
    let all = enumerate_sign_assignments(&c, Theory::Y).unwrap();
    let on_sub: Vec<bool> = c.edges().iter().map(|e| e.from >> 2 & 1 == 0 && e.crossing != 2).collect();
    for p in all.iter().step_by(9) {
        let ext = c.extend_sign_assignment(&on_sub, p).unwrap();
        assert!(ext.is_valid(&c));
        for (k, &s) in on_sub.iter().enumerate() {
            if s {
                assert_eq!(ext.negative[k], p.negative[k]);
            }
        }
    }
    let none = vec![false; c.edges().len()];
    let s = c.solve_sign_assignment(Theory::Y).unwrap();
    assert_eq!(c.extend_sign_assignment(&none, &s).unwrap(), s);
}

#[test]
fn dump_round_trips() {
    let c = ResolutionCube::of(&hopf(), Arrows::default()).unwrap();
    let s = c.solve_sign_assignment(Theory::Y).unwrap();
    let d = c.dump(Theory::Y, Some(&s));
    let text = serde_json::to_string(&d).unwrap();
    assert_eq!(serde_json::from_str::<CubeDump>(&text).unwrap(), d);
}
