//! The cube of resolutions of the Hopf link: face types, the number of
//! valid sign assignments in each theory and the canonical one.

use oddkh::cube::{enumerate_sign_assignments, ResolutionCube, Theory};
use oddkh::fixtures::hopf;

fn main() -> oddkh::Result<()> {
    let d = hopf();
    let cube = ResolutionCube::of(&d, Default::default())?;
    for f in cube.faces() {
        println!("face at {:0w$b} on ({}, {}): type {}", f.base, f.i, f.j, f.ty.numeral(), w = cube.n());
    }
    for theory in [Theory::X, Theory::Y] {
        let all = enumerate_sign_assignments(&cube, theory)?;
        let canon = cube.solve_sign_assignment(theory)?;
        let signs: Vec<i8> = (0..cube.edges().len()).map(|e| canon.sign(e)).collect();
        println!("{theory:?}: {} valid assignments, canonical {signs:?}", all.len());
    }
    Ok(())
}
