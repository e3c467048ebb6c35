//! Cross-checks against independent computations: the graded Euler
//! characteristic against the Kauffman bracket, and the mod 2 reduction
//! against even Khovanov homology over GF(2).

use oddkh::complex::odd_complex;
use oddkh::cube::Theory;
use oddkh::fixtures::corpus;
use oddkh::oracles::{even_khovanov_mod2, kauffman_bracket};

fn main() -> oddkh::Result<()> {
    for f in corpus(6)? {
        let c = odd_complex(&f.diagram, Theory::Y)?;
        let euler = c.graded_euler_characteristic() == kauffman_bracket(&f.diagram);
        let mut odd2 = c.reduce_coefficients(2)?;
        odd2.retain(|_, r| *r > 0);
        let mod2 = odd2 == even_khovanov_mod2(&f.diagram);
        println!("{:<10} euler {:<5} mod 2 {}", f.name, euler, mod2);
    }
    Ok(())
}
