//! Exact linear algebra over the integers and over finite fields.

mod gf2;
mod matrix;
mod modp;
mod snf;
mod solve;
pub(crate) mod sparse;

pub use dashu_int::IBig as Int;
pub use gf2::{rank_gf2, solve_gf2, BitMatrix, Gf2Solution};
pub use matrix::{int_matrix, IntMatrix};
pub use modp::{is_prime, rank_mod_p};
pub use snf::{dense_divisors, elementary_divisors, rank, smith_normal_form, SnfResult};
pub use solve::{solve_integer, IntSolution};
pub use sparse::solve_sparse;

/// Floor division for arbitrary-precision integers.
pub fn floor_div(a: &Int, b: &Int) -> Int {
    let q = a / b;
    let r = a - &q * b;
    if r != Int::ZERO && ((r < Int::ZERO) != (*b < Int::ZERO)) {
        q - Int::ONE
    } else {
        q
    }
}

/// Converts to `i64`, panicking on overflow; used for small bookkeeping values.
pub fn to_i64(v: &Int) -> i64 {
    i64::try_from(v.clone()).expect("integer fits in i64")
}

/// Absolute value.
pub fn abs(v: &Int) -> Int {
    use dashu_int::ops::Abs;
    v.abs()
}
