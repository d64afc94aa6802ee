//! Small named tables used throughout tests, docs and the demo.

use crate::table::CayleyTable;

/// `Z_n` under addition.
pub fn cyclic(n: usize) -> CayleyTable {
    CayleyTable::from_fn(n, |x, y| (x + y) % n).with_name(format!("C{n}"))
}

/// `Z_2 × Z_2` with `x·y = x xor y`.
pub fn klein_four() -> CayleyTable {
    CayleyTable::from_fn(4, |x, y| x ^ y).with_name("V4")
}

/// `S_3` on the permutations of `{0,1,2}` in lexicographic order, composed
/// left to right. Element 0 is the identity, 1, 2 and 5 are transpositions,
/// 3 and 4 are the 3-cycles.
pub fn symmetric3() -> CayleyTable {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    CayleyTable::from_fn(6, |a, b| {
        let c = PERMS[a].map(|i| PERMS[b][i]);
        PERMS.iter().position(|p| *p == c).expect("closed")
    })
    .with_name("S3")
}
