//! Timings for the trefoil, 8_19 and the 12-crossing 2-cable of the trefoil.

use oddkh::fixtures::trefoil;
use oddkh::verify::{eight_crossing, timed_d_squared, timed_homology, trefoil_cable};

fn main() -> oddkh::Result<()> {
    let (h, s) = timed_homology(&trefoil())?;
    println!("trefoil: total rank {} in {s:.3}s", h.total_rank());
    let (h, s) = timed_homology(&eight_crossing()?)?;
    println!("8_19: total rank {} in {s:.3}s", h.total_rank());
    let cable = trefoil_cable()?;
    let (rank, s) = timed_d_squared(&cable)?;
    println!("{}-crossing cable: d^2 = 0 over {rank} generators in {s:.2}s", cable.n_crossings());
    Ok(())
}
