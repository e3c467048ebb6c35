//! The bundled fixture corpus: prime knots through seven crossings, a few
//! links, Reidemeister pairs, and one eight-crossing knot.

use crate::error::Result;
use crate::linkdiag::{braid_closure, insert_kink, parse_pd, r2_insert, LinkDiagram, R2Site, Side};

/// PD codes with slot 0 the incoming under-strand. Past the figure-eight
/// they come from the alternating DT codes of the Rolfsen table.
const KNOTS: &[(&str, &str)] = &[
    ("3_1", "[[1,4,2,5],[3,6,4,1],[5,2,6,3]]"),
    ("4_1", "[[4,2,5,1],[8,6,1,5],[6,3,7,4],[2,7,3,8]]"),
    ("5_1", "[[10,5,1,6],[2,7,3,8],[4,9,5,10],[6,1,7,2],[8,3,9,4]]"),
    ("5_2", "[[10,3,1,4],[2,7,3,8],[4,9,5,10],[6,1,7,2],[8,5,9,6]]"),
    ("6_1", "[[12,3,1,4],[2,8,3,7],[4,11,5,12],[6,9,7,10],[8,2,9,1],[10,5,11,6]]"),
    ("6_2", "[[12,3,1,4],[2,8,3,7],[4,9,5,10],[6,11,7,12],[8,2,9,1],[10,5,11,6]]"),
    ("6_3", "[[12,4,1,3],[2,8,3,7],[4,9,5,10],[6,2,7,1],[8,11,9,12],[10,5,11,6]]"),
    ("7_1", "[[14,7,1,8],[2,9,3,10],[4,11,5,12],[6,13,7,14],[8,1,9,2],[10,3,11,4],[12,5,13,6]]"),
    ("7_2", "[[14,3,1,4],[2,9,3,10],[4,13,5,14],[6,11,7,12],[8,1,9,2],[10,7,11,8],[12,5,13,6]]"),
    ("7_3", "[[14,5,1,6],[2,9,3,10],[4,11,5,12],[6,13,7,14],[8,1,9,2],[10,3,11,4],[12,7,13,8]]"),
    ("7_4", "[[14,5,1,6],[2,9,3,10],[4,11,5,12],[6,13,7,14],[8,3,9,4],[10,1,11,2],[12,7,13,8]]"),
    ("7_5", "[[14,3,1,4],[2,9,3,10],[4,11,5,12],[6,13,7,14],[8,1,9,2],[10,7,11,8],[12,5,13,6]]"),
    ("7_6", "[[14,4,1,3],[2,8,3,7],[4,12,5,11],[6,2,7,1],[8,13,9,14],[10,6,11,5],[12,9,13,10]]"),
    ("7_7", "[[14,4,1,3],[2,7,3,8],[4,10,5,9],[6,11,7,12],[8,1,9,2],[10,14,11,13],[12,5,13,6]]"),
];

/// Expected determinants, used to validate the table.
pub const DETERMINANTS: &[(&str, u64)] = &[
    ("3_1", 3),
    ("4_1", 5),
    ("5_1", 5),
    ("5_2", 7),
    ("6_1", 9),
    ("6_2", 11),
    ("6_3", 13),
    ("7_1", 7),
    ("7_2", 11),
    ("7_3", 13),
    ("7_4", 15),
    ("7_5", 17),
    ("7_6", 19),
    ("7_7", 21),
    ("8_19", 3),
];

#[derive(Clone, Debug)]
pub struct Fixture {
    pub name: String,
    pub diagram: LinkDiagram,
}

fn fx(name: &str, diagram: LinkDiagram) -> Fixture {
    Fixture { name: name.to_string(), diagram }
}

pub fn knot(name: &str) -> Option<LinkDiagram> {
    if name == "8_19" {
        return braid_closure(3, &[1, 2, 1, 2, 1, 2, 1, 2]).ok();
    }
    KNOTS.iter().find(|(n, _)| *n == name).map(|(_, pd)| parse_pd(pd).expect("bundled PD parses"))
}

pub fn hopf() -> LinkDiagram {
    parse_pd("[[1,3,2,4],[3,1,4,2]]").expect("bundled PD parses")
}

pub fn trefoil() -> LinkDiagram {
    knot("3_1").unwrap()
}

/// Every fixture diagram with at most `max` crossings, sorted by name.
pub fn corpus(max: usize) -> Result<Vec<Fixture>> {
    let mut out = vec![fx("unknot", LinkDiagram::unlink(1)), fx("unlink2", LinkDiagram::unlink(2))];
    let hopf = hopf();
    out.push(fx("hopf-", hopf.mirror()?));
    out.push(fx("hopf+", hopf));
    out.push(fx("kink+", insert_kink(&LinkDiagram::unlink(1), 1, 1)?));
    out.push(fx("kink-", insert_kink(&LinkDiagram::unlink(1), 1, -1)?));
    out.push(fx("3_1*", trefoil().mirror()?));
    for (name, pd) in KNOTS {
        out.push(fx(name, parse_pd(pd)?));
    }
    out.push(fx("8_19", knot("8_19").unwrap()));
    out.push(fx("T(2,4)", braid_closure(2, &[1, 1, 1, 1])?));
    out.retain(|f| f.diagram.n_crossings() <= max);
    out.sort_by(|a, b| a.name.cmp(&b.name));
    Ok(out)
}

/// Diagram pairs related by one Reidemeister move.
pub fn reidemeister_pairs() -> Result<Vec<(String, LinkDiagram, LinkDiagram)>> {
    let t = trefoil();
    let h = hopf();
    let u = LinkDiagram::unlink(1);
    let mut out = Vec::new();
    for (sign, side) in [(1, Side::Left), (-1, Side::Left), (1, Side::Right), (-1, Side::Right)] {
        let big = crate::linkdiag::kink(&t, t.arcs()[1], sign, side)?.big;
        out.push((format!("R1 sign {sign:+} {side:?} on 3_1"), t.clone(), big));
    }
    out.push(("R1 sign -1 on unknot".into(), u.clone(), insert_kink(&u, 1, -1)?));
    // first workable site per side and per choice of which component goes over
    for side in [Side::Left, Side::Right] {
        for over_comp in 0..2 {
            let site = h.arcs().iter().flat_map(|&o| h.arcs().iter().map(move |&u| (o, u))).find_map(|(o, u)| {
                let ok = h.component_of(o) == Some(over_comp) && h.component_of(u) == Some(1 - over_comp);
                ok.then(|| r2_insert(&h, &R2Site::new(o, u, side)).ok()).flatten().map(|c| (o, u, c.big))
            });
            if let Some((o, u, big)) = site {
                out.push((format!("R2 {side:?} over {o} under {u} on hopf"), h.clone(), big));
            }
        }
    }
    let two = LinkDiagram::unlink(2);
    out.push(("R2 on unlink2".into(), two.clone(), r2_insert(&two, &R2Site::new(1, 2, Side::Left))?.big));
    out.push((
        "R3 braid relation".into(),
        braid_closure(3, &[1, 2, 1, 1])?,
        braid_closure(3, &[2, 1, 2, 1])?,
    ));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn table_is_valid() {
        for f in corpus(8).unwrap() {
            assert!(f.diagram.is_planar(), "{}", f.name);
        }
        for (name, det) in DETERMINANTS {
            let d = knot(name).unwrap();
            assert_eq!(d.n_components(), 1, "{name}");
            assert!(d.is_planar(), "{name}");
            let want: usize = name.split('_').next().unwrap().parse().unwrap();
            assert_eq!(d.n_crossings(), want, "{name}");
            assert_eq!(d.determinant(), crate::linalg::Int::from(*det), "{name}");
        }
    }

    #[test]
    fn pairs_build() {
        let p = reidemeister_pairs().unwrap();
        assert!(p.len() >= 6);
        for (name, a, b) in p {
            assert!(a.is_planar() && b.is_planar(), "{name}");
        }
    }
}
