//! Integral odd homology of a few small knots, printed as tables.
//!
//!     cargo run --example homology [name ...]

use oddkh::complex::odd_complex;
use oddkh::cube::Theory;
use oddkh::fixtures::knot;

fn main() -> oddkh::Result<()> {
    let mut names: Vec<String> = std::env::args().skip(1).collect();
    if names.is_empty() {
        names = ["3_1", "4_1", "5_1", "8_19"].map(String::from).to_vec();
    }
    for name in names {
        let Some(d) = knot(&name) else {
            eprintln!("unknown knot {name}");
            continue;
        };
        let c = odd_complex(&d, Theory::Y)?;
        let h = c.homology();
        println!("{name}: {} crossings, total rank {}", d.n_crossings(), h.total_rank());
        println!("{}", h.table());
    }
    Ok(())
}
