//! The strand swap on the 2-cable of the unknot satisfies a quadratic
//! relation up to sign.

use oddkh::cobfunctor::hecke_swap;
use oddkh::cube::Theory;

fn main() -> oddkh::Result<()> {
    let c = hecke_swap(Theory::Y)?;
    for ((h, q), m) in c.g.induced_map_on_homology()? {
        println!("g on H^({h},{q}): {:?}", m.to_dense().iter().map(|r| r.iter().map(|v| v.to_string()).collect::<Vec<_>>()).collect::<Vec<_>>());
    }
    match c.sign {
        Some(s) => println!("(({s}) g + 1)^2 = 0 on homology"),
        None => println!("no sign makes the relation hold"),
    }
    Ok(())
}
