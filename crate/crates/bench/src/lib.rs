//! Fixtures shared by the benchmarks.

pub use walshdj_core::*;

/// Uniformly random function on `n` variables, fixed by `n`.
pub fn fixture(n: usize) -> BooleanFunction {
    fngen::random_function(n, 0x5eed ^ n as u64).expect("n within cap")
}

/// Sign vector `(-1)^f(x)` of [`fixture`], the input to the butterfly.
pub fn signs(n: usize) -> Vec<i64> {
    let f = fixture(n);
    (0..f.len() as u64)
        .map(|x| if f.table_bit(x) { -1 } else { 1 })
        .collect()
}
