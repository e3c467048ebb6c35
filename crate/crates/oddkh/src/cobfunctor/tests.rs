use super::*;
use crate::complex::homotopic_up_to_sign;
use crate::fixtures::{hopf, trefoil};
use crate::linkdiag::{kink, r2_insert, R2Site, Side};

const Y: Theory = Theory::Y;

fn host(d: &LinkDiagram) -> Host {
    Host::new(d, Y).unwrap()
}

fn with_circle(d: &LinkDiagram) -> (LinkDiagram, ArcId) {
    birth_diagram(d).unwrap()
}

#[test]
fn s_values() {
    let t = trefoil();
    let z = Resolution::new(t.planar(), 0).n_circles() as i64;
    assert_eq!(s_value(&t, 0).unwrap(), z);
    let u2 = LinkDiagram::unlink(2);
    assert_eq!(s_value(&u2, 0).unwrap(), 2);
}

#[test]
fn birth_and_death() {
    for d in [LinkDiagram::unlink(1), trefoil(), hopf()] {
        let h0 = host(&d);
        let (d1, a) = with_circle(&d);
        let h1 = host(&d1);
        let b = birth_map(&h0, &h1, a).unwrap();
        assert!(b.is_chain_map());
        let k = death_map(&h1, &h0, a).unwrap();
        assert!(k.is_chain_map());
        // the sphere
        assert!(b.then(&k).unwrap().is_zero());
    }
}

#[test]
fn dots_square_to_zero_and_anticommute() {
    let h = host(&hopf());
    let arcs = h.diagram.arcs().to_vec();
    let d0 = dot_map(&h, arcs[0]).unwrap();
    assert!(d0.is_chain_map());
    assert!(d0.then(&d0).unwrap().is_zero());
    let other = arcs.iter().copied().find(|&a| h.diagram.component_of(a) != h.diagram.component_of(arcs[0])).unwrap();
    let d1 = dot_map(&h, other).unwrap();
    let ab = d0.then(&d1).unwrap();
    let ba = d1.then(&d0).unwrap();
    assert!(!ab.is_zero());
    assert_eq!(ab.equal_up_to_sign(&ba), Some(-1));
}

#[test]
fn saddles_are_chain_maps() {
    let u2 = LinkDiagram::unlink(2);
    let (t1, _) = with_circle(&trefoil());
    let cases = [
        (u2.clone(), SaddleSite { p: 1, q: 2, side: Side::Left }),
        (LinkDiagram::unlink(1), SaddleSite { p: 1, q: 1, side: Side::Left }),
        (t1.clone(), SaddleSite { p: 1, q: 7, side: Side::Left }),
        (trefoil(), SaddleSite { p: 1, q: 1, side: Side::Left }),
        (hopf(), SaddleSite { p: 1, q: 3, side: Side::Left }),
    ];
    for (d, site) in cases {
        let Ok(ss) = saddle_diagram(&d, &site) else { continue };
        let (h0, h1) = (host(&d), host(&ss.l1));
        let f = saddle_map(&h0, &h1, &ss).unwrap();
        assert!(f.is_chain_map());
        assert!(!f.is_zero());
        assert_eq!(f.q_shifts().into_iter().collect::<Vec<_>>(), vec![-1]);
    }
}

#[test]
fn explicit_saddle_formulas() {
    // merging a free circle into the trefoil: no signs
    let (t1, a) = with_circle(&trefoil());
    let ss = saddle_diagram(&t1, &SaddleSite { p: 1, q: a, side: Side::Left }).unwrap();
    let (h0, h1) = (host(&t1), host(&ss.l1));
    let f = saddle_map_raw(&h0, &h1, &ss).unwrap();
    let plain = explicit_saddle_blocks(&h0, &h1, &ss, false).unwrap();
    assert!(f.equal_up_to_sign(&plain).is_some());
    // splitting a component: the death sign
    let u = LinkDiagram::unlink(1);
    let ss = saddle_diagram(&u, &SaddleSite { p: 1, q: 1, side: Side::Left }).unwrap();
    let (h0, h1) = (host(&u), host(&ss.l1));
    let f = saddle_map_raw(&h0, &h1, &ss).unwrap();
    let signed = explicit_saddle_blocks(&h0, &h1, &ss, true).unwrap();
    assert!(f.equal_up_to_sign(&signed).is_some());
}

fn check_retraction(small: &Host, big: &Host, up: &ChainMap, down: &ChainMap) {
    assert!(up.is_chain_map() && down.is_chain_map());
    let id_small = ChainMap::identity(small.complex.clone());
    let id_big = ChainMap::identity(big.complex.clone());
    let a = homotopic_up_to_sign(&up.then(down).unwrap(), &id_small).unwrap();
    assert!(a.is_some(), "undo after do");
    let b = homotopic_up_to_sign(&down.then(up).unwrap(), &id_big).unwrap();
    assert!(b.is_some(), "do after undo");
}

#[test]
fn reidemeister_one() {
    for d in [LinkDiagram::unlink(1), trefoil()] {
        let arc = d.arcs()[0];
        for sign in [1, -1] {
            for side in [Side::Left, Side::Right] {
                let site = kink(&d, arc, sign, side).unwrap();
                let (s, b) = (host(&d), host(&site.big));
                let up = r1_map(&s, &b, &site, Direction::Do).unwrap();
                let down = r1_map(&s, &b, &site, Direction::Undo).unwrap();
                check_retraction(&s, &b, &up, &down);
            }
        }
    }
}

#[test]
fn reidemeister_two() {
    let mut cases = vec![(LinkDiagram::unlink(2), R2Site::new(1, 2, Side::Left))];
    let h = hopf();
    for &o in h.arcs() {
        for &u in h.arcs() {
            if h.component_of(o) != h.component_of(u) {
                cases.push((h.clone(), R2Site::new(o, u, Side::Left)));
            }
        }
    }
    let mut done = 0;
    for (d, site) in cases {
        let Ok(cfg) = r2_insert(&d, &site) else { continue };
        let (s, b) = (host(&d), host(&cfg.big));
        let up = r2_map(&s, &b, &cfg, Direction::Do).unwrap();
        let down = r2_map(&s, &b, &cfg, Direction::Undo).unwrap();
        check_retraction(&s, &b, &up, &down);
        done += 1;
    }
    assert!(done >= 3);
}

#[test]
fn chronology() {
    let u3 = LinkDiagram::unlink(3);
    assert!(death_pair(&u3, 1, 2, Y).unwrap().holds());
    let u4 = LinkDiagram::unlink(4);
    let s1 = SaddleSite { p: 1, q: 2, side: Side::Left };
    let s2 = SaddleSite { p: 3, q: 4, side: Side::Left };
    let sq = saddle_square(&u4, &s1, &s2, Y).unwrap();
    assert!(sq.holds(), "{:?}", sq.sign);
    let merge = death_saddle_pair(&u3, &s1, 3, Y).unwrap();
    assert_eq!(merge.expected, -1);
    assert!(merge.holds(), "{:?}", merge.sign);
    let split = death_saddle_pair(&LinkDiagram::unlink(2), &SaddleSite { p: 1, q: 1, side: Side::Left }, 2, Y).unwrap();
    assert_eq!(split.expected, 1);
    assert!(split.holds(), "{:?}", split.sign);
}

#[test]
fn movies() {
    let t = trefoil();
    let empty = MovieScript::new(&t, vec![]);
    let r = evaluate_movie(&empty, Y).unwrap();
    assert_eq!(r.map.equal_up_to_sign(&ChainMap::identity(r.map.source.clone())), Some(1));
    let bad = MovieScript::new(&t, vec![MovieEvent::Dot { arc: 99 }]);
    match evaluate_movie(&bad, Y) {
        Err(Error::Event { index, .. }) => assert_eq!(index, 0),
        other => panic!("{other:?}"),
    }
    let mm11 = MovieScript::new(&t, vec![MovieEvent::Birth {}, MovieEvent::Saddle { p: 1, q: 7, side: Side::Left }]);
    let r = evaluate_movie(&mm11, Y).unwrap();
    assert!(r.map.is_chain_map());
}

#[test]
fn movie_moves() {
    for d in [LinkDiagram::unlink(1), trefoil()] {
        let mm11 = movie_move_11(&d, d.arcs()[0], Y).unwrap();
        assert!(mm11.sign.is_some());
    }
    for sign in [1, -1] {
        let mm12 = movie_move_12(&LinkDiagram::unlink(1), sign, Y).unwrap();
        assert!(!mm12.left.is_zero());
        assert!(mm12.sign.is_some());
    }
}

#[test]
fn dots_on_the_trefoil() {
    let t = trefoil();
    let h = host(&t);
    for rel in coloring_relations(&t) {
        assert!(relation_map(&h, &rel).unwrap().induces_zero().unwrap(), "{rel:?}");
    }
    let (a, b, w) = dot_slide(&t, 0, Y).unwrap();
    let w = w.expect("over-slide homotopy");
    assert!(w.witnesses(&a, &b));
}

#[test]
fn hecke() {
    let hk = hecke_swap(Y).unwrap();
    // the cap-cup part is really there
    let id = ChainMap::identity(hk.g.source.clone());
    assert_eq!(hk.g.equal_up_to_sign(&id), None);
    assert!(hk.sign.is_some());
}

#[test]
fn r2_round_trip_is_the_identity_on_the_nose() {
    let u2 = LinkDiagram::unlink(2);
    let cfg = r2_insert(&u2, &R2Site::new(1, 2, Side::Left)).unwrap();
    let (s, b) = (host(&u2), host(&cfg.big));
    let up = r2_map(&s, &b, &cfg, Direction::Do).unwrap();
    let down = r2_map(&s, &b, &cfg, Direction::Undo).unwrap();
    let id = ChainMap::identity(s.complex.clone());
    assert_eq!(up.then(&down).unwrap().equal_up_to_sign(&id), Some(1));
}
