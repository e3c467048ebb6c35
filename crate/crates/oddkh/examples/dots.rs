//! Dot maps on the trefoil: they square to zero, the relations of the
//! coloring group hold up to homotopy, and a dot slides through a crossing
//! along the over strand.

use oddkh::cobfunctor::{coloring_relations, dot_map, dot_slide, relation_map, Host};
use oddkh::cube::Theory;
use oddkh::fixtures::trefoil;

fn main() -> oddkh::Result<()> {
    let d = trefoil();
    let host = Host::new(&d, Theory::Y)?;
    for &a in d.arcs() {
        let x = dot_map(&host, a)?;
        println!("arc {a}: x^2 = 0 {}", x.then(&x)?.is_zero());
    }
    for rel in coloring_relations(&d) {
        let m = relation_map(&host, &rel)?;
        println!("crossing {} relation {:?}: null-homotopic {}", rel.crossing, rel.terms, m.null_homotopy().is_some());
    }
    let (_, _, w) = dot_slide(&d, 0, Theory::Y)?;
    println!("over-slide at crossing 0: homotopy found {}", w.is_some());
    Ok(())
}
