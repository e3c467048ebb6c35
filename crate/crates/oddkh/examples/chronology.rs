//! Changing the order of two deaths flips the sign of the induced map.

use oddkh::cobfunctor::{death_pair, movie_move_12};
use oddkh::cube::Theory;
use oddkh::linkdiag::LinkDiagram;

fn main() -> oddkh::Result<()> {
    let d = LinkDiagram::unlink(3);
    let (a, b) = (d.free_circles()[0], d.free_circles()[1]);
    let p = death_pair(&d, a, b, Theory::Y)?;
    println!("deaths of {a} and {b}: sign {:?}, expected {}", p.sign, p.expected);
    for sign in [1, -1] {
        let c = movie_move_12(&LinkDiagram::unlink(0), sign, Theory::Y)?;
        println!("kink of sign {sign:+} on a newborn circle, left against right: {:?}", c.sign);
    }
    Ok(())
}
