//! Evaluates a small movie on the trefoil: a birth, then a saddle merging the
//! new circle into the knot. Prints the script and the induced map.

use oddkh::cobfunctor::{evaluate_movie, MovieEvent, MovieScript};
use oddkh::cube::Theory;
use oddkh::fixtures::trefoil;
use oddkh::linkdiag::Side;

fn main() -> oddkh::Result<()> {
    let t = trefoil();
    let script = MovieScript::new(
        &t,
        vec![
            MovieEvent::Birth {},
            MovieEvent::Saddle { p: 1, q: 7, side: Side::Left },
        ],
    );
    println!("{}", serde_json::to_string(&script)?);
    let r = evaluate_movie(&script, Theory::Y)?;
    println!("frames: {}", r.frames.len());
    println!("chain map: {}", r.map.is_chain_map());
    println!("q shifts: {:?}", r.map.q_shifts());
    let induced = r.map.induced_map_on_homology()?;
    for ((h, q), m) in induced {
        println!("  on H^({h},{q}): {}x{} with {} nonzero entries", m.rows(), m.cols(), m.nnz());
    }
    Ok(())
}
