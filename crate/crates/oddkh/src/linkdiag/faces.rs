//! Faces of the underlying 4-valent graph, traced from the cyclic slot order.

use super::{ArcId, Planar, Slot};

/// An arc traversed towards the crossing slot `to`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub arc: ArcId,
    pub to: Slot,
}

/// A face, as the cycle of darts that keep it on their left.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub darts: Vec<Dart>,
}

impl Face {
    pub fn contains_arc(&self, a: ArcId) -> bool {
        self.darts.iter().any(|d| d.arc == a)
    }

    pub fn contains_dart(&self, d: &Dart) -> bool {
        self.darts.contains(d)
    }
}

/// After arriving at slot `s`, turning left means leaving through the
/// clockwise neighbour `s - 1`.
pub(crate) fn next_dart(p: &Planar, d: Dart) -> Dart {
    let out = Slot { crossing: d.to.crossing, pos: (d.to.pos + 3) % 4 };
    let arc = p.arc_id(p.slot_arc(out.crossing as usize, out.pos as usize));
    Dart { arc, to: p.other_end(out) }
}

pub(crate) fn faces(p: &Planar) -> Vec<Face> {
    let n = p.n_crossings();
    let mut seen = vec![[false; 4]; n];
    let mut out = Vec::new();
    for k in 0..n {
        for pos in 0..4u8 {
            if seen[k][pos as usize] {
                continue;
            }
            let to = Slot::new(k, pos);
            let start = Dart { arc: p.arc_id(p.slot_arc(k, pos as usize)), to };
            let mut darts = Vec::new();
            let mut d = start;
            loop {
                seen[d.to.crossing as usize][d.to.pos as usize] = true;
                darts.push(d);
                d = next_dart(p, d);
                if d == start {
                    break;
                }
            }
            out.push(Face { darts });
        }
    }
    out
}

/// The face to the left of `arc` when it is traversed towards its end `to`.
pub(crate) fn face_left_of(p: &Planar, arc: ArcId, to: Slot) -> Face {
    let start = Dart { arc, to };
    let mut darts = vec![start];
    let mut d = next_dart(p, start);
    while d != start {
        darts.push(d);
        d = next_dart(p, d);
    }
    Face { darts }
}
