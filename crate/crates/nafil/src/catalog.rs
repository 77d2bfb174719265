//! Built-in example tables and the Cayley-Dickson basis-loop constructor.

use crate::error::{Error, Result};
use crate::table::LoopTable;

/// The smallest non-associative invertible loop (order 5, non-abelian).
const L5: [[u8; 5]; 5] = [
    [1, 2, 3, 4, 5],
    [2, 1, 5, 3, 4],
    [3, 4, 1, 5, 2],
    [4, 5, 2, 1, 3],
    [5, 3, 4, 2, 1],
];

/// First member of the even-order family (order 6, abelian, unipotent).
const L6: [[u8; 6]; 6] = [
    [1, 2, 3, 4, 5, 6],
    [2, 1, 4, 5, 6, 3],
    [3, 4, 1, 6, 2, 5],
    [4, 5, 6, 1, 3, 2],
    [5, 6, 2, 3, 1, 4],
    [6, 3, 5, 2, 4, 1],
];

/// The order-9 left-semiautomorphic table as published. Row 7 contains a
/// duplicated 3, so this matrix is NOT a Latin square; it is kept verbatim
/// to exercise the validation error path. See [`LSAIP9`] for the repair.
const LSAIP9_RAW: [[u8; 9]; 9] = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9],
    [2, 3, 4, 1, 6, 7, 8, 9, 5],
    [3, 4, 1, 2, 7, 8, 9, 5, 6],
    [4, 1, 2, 3, 8, 9, 5, 6, 7],
    [5, 6, 7, 9, 1, 2, 3, 4, 8],
    [6, 7, 8, 5, 9, 1, 2, 3, 4],
    [7, 8, 9, 6, 4, 5, 1, 3, 3],
    [8, 9, 5, 7, 3, 4, 6, 1, 2],
    [9, 5, 6, 8, 2, 3, 4, 7, 1],
];

/// The order-9 left-semiautomorphic table with the single typo repaired:
/// cell (7, 8) is 2, not the published 3.
///
/// The repair is forced. Row 7 as published reads `7 8 9 6 4 5 1 3 3` and
/// misses the value 2, column 8 as published misses 2 as well, and the
/// companion table [`RSAIP9`] (which is a valid Latin square) must be the
/// transpose of this one; its cell (8, 7) is 2. All three constraints pin
/// (7, 8) = 2 and no other cell changes.
const LSAIP9: [[u8; 9]; 9] = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9],
    [2, 3, 4, 1, 6, 7, 8, 9, 5],
    [3, 4, 1, 2, 7, 8, 9, 5, 6],
    [4, 1, 2, 3, 8, 9, 5, 6, 7],
    [5, 6, 7, 9, 1, 2, 3, 4, 8],
    [6, 7, 8, 5, 9, 1, 2, 3, 4],
    [7, 8, 9, 6, 4, 5, 1, 2, 3],
    [8, 9, 5, 7, 3, 4, 6, 1, 2],
    [9, 5, 6, 8, 2, 3, 4, 7, 1],
];

/// The order-9 right-semiautomorphic table, verbatim; transpose of `LSAIP9`.
const RSAIP9: [[u8; 9]; 9] = [
    [1, 2, 3, 4, 5, 6, 7, 8, 9],
    [2, 3, 4, 1, 6, 7, 8, 9, 5],
    [3, 4, 1, 2, 7, 8, 9, 5, 6],
    [4, 1, 2, 3, 9, 5, 6, 7, 8],
    [5, 6, 7, 8, 1, 9, 4, 3, 2],
    [6, 7, 8, 9, 2, 1, 5, 4, 3],
    [7, 8, 9, 5, 3, 2, 1, 6, 4],
    [8, 9, 5, 6, 4, 3, 2, 1, 7],
    [9, 5, 6, 7, 8, 4, 3, 2, 1],
];

/// Largest doubling level accepted by [`cayley_basis_loop`] (order 64).
pub const CAYLEY_CEILING: u32 = 5;

fn rows_of<const N: usize>(m: &[[u8; N]; N]) -> Vec<Vec<u8>> {
    m.iter().map(|r| r.to_vec()).collect()
}

/// Raw rows of a named fixture, without validation.
pub fn builtin_rows(name: &str) -> Result<Vec<Vec<u8>>> {
    match name {
        "L5" => Ok(rows_of(&L5)),
        "L6" => Ok(rows_of(&L6)),
        "LSAIP9" => Ok(rows_of(&LSAIP9)),
        "RSAIP9" => Ok(rows_of(&RSAIP9)),
        "LSAIP9_raw" => Ok(rows_of(&LSAIP9_RAW)),
        _ => Err(Error::UnknownName(name.to_string())),
    }
}

/// A named fixture as a validated table.
///
/// `LSAIP9_raw` deliberately fails validation with a `NotLatin` error on
/// row 7; use [`builtin_rows`] to look at the matrix itself.
pub fn builtin(name: &str) -> Result<LoopTable> {
    let rows = builtin_rows(name)?;
    let n = rows.len();
    LoopTable::build(n, &rows)
}

/// Names accepted by [`builtin`], in display order.
pub const BUILTIN_NAMES: [&str; 5] = ["L5", "L6", "LSAIP9", "RSAIP9", "LSAIP9_raw"];

/// The cyclic group of order `n` in normal form.
pub fn cyclic_group(n: usize) -> LoopTable {
    let rows: Vec<Vec<u8>> = (0..n)
        .map(|i| (0..n).map(|j| (((i + j) % n) + 1) as u8).collect())
        .collect();
    LoopTable::build(n, &rows).expect("cyclic table is Latin")
}

/// Sign and index of the product `e_i * e_j` of basis vectors in the
/// 2^r-dimensional Cayley-Dickson algebra of dimension `dim = 2^r`.
///
/// Doubling convention: `(a,b)(c,d) = (ac - conj(d) b, da + b conj(c))`
/// with `conj(e_0) = e_0` and `conj(e_i) = -e_i` for `i >= 1`. On basis
/// vectors, writing `u`, `v` for half-size basis elements:
///
/// ```text
/// (u,0)(v,0) = (uv, 0)      (u,0)(0,v) = (0, vu)
/// (0,u)(v,0) = (0, u conj(v))   (0,u)(0,v) = (-conj(v) u, 0)
/// ```
fn basis_mul(dim: usize, i: usize, j: usize) -> (i8, usize) {
    if dim == 1 {
        return (1, 0);
    }
    let h = dim / 2;
    let conj = |x: usize| if x == 0 { 1 } else { -1 };
    match (i < h, j < h) {
        (true, true) => basis_mul(h, i, j),
        (true, false) => {
            let (s, k) = basis_mul(h, j - h, i);
            (s, h + k)
        }
        (false, true) => {
            let (s, k) = basis_mul(h, i - h, j);
            (s * conj(j), h + k)
        }
        (false, false) => {
            let (s, k) = basis_mul(h, j - h, i - h);
            (-s * conj(j - h), k)
        }
    }
}

/// Multiplication table of the signed basis vectors of the
/// 2^r-dimensional Cayley-Dickson algebra: a loop of order 2^(r+1).
///
/// Element `2i+1` is `+e_i` and element `2i+2` is `-e_i`, so `+e_0` is the
/// identity element 1 and the table comes out in normal form. For `r <= 2`
/// (complex numbers, quaternions) the loop is a group; from the octonions
/// (`r = 3`) upward it is invertible and non-associative.
pub fn cayley_basis_loop(r: u32) -> Result<LoopTable> {
    if r > CAYLEY_CEILING {
        return Err(Error::CeilingExceeded {
            what: "Cayley-Dickson basis loop",
            requested: r as usize,
            ceiling: CAYLEY_CEILING as usize,
            gated: false,
        });
    }
    let dim = 1usize << r;
    let n = 2 * dim;
    let decode = |x: u8| -> (usize, i8) {
        let x = (x - 1) as usize;
        (x / 2, if x % 2 == 0 { 1 } else { -1 })
    };
    let encode = |idx: usize, sign: i8| -> u8 { (2 * idx + if sign > 0 { 1 } else { 2 }) as u8 };
    let mut rows = vec![vec![0u8; n]; n];
    for a in 1..=n as u8 {
        for b in 1..=n as u8 {
            let (i, si) = decode(a);
            let (j, sj) = decode(b);
            let (s, k) = basis_mul(dim, i, j);
            rows[a as usize - 1][b as usize - 1] = encode(k, si * sj * s);
        }
    }
    LoopTable::build(n, &rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::table::Classification;

    #[test]
    fn fixtures_validate_and_are_normal() {
        for name in ["L5", "L6", "LSAIP9", "RSAIP9"] {
            let t = builtin(name).unwrap();
            assert!(t.is_normal(), "{name}");
        }
        assert!(builtin("LSAIP9_raw").is_err());
        assert!(matches!(builtin("nope"), Err(Error::UnknownName(_))));
    }

    #[test]
    fn fixture_rows_match_published_lines() {
        let l5 = builtin("L5").unwrap();
        assert_eq!(l5.row(4), &[4, 5, 2, 1, 3]);
        let r9 = builtin("RSAIP9").unwrap();
        assert_eq!(r9.row(9), &[9, 5, 6, 7, 8, 4, 3, 2, 1]);
        let l9 = builtin("LSAIP9").unwrap();
        assert_eq!(l9.row(7), &[7, 8, 9, 6, 4, 5, 1, 2, 3]);
    }

    #[test]
    fn order9_pair_are_transposes() {
        let l = builtin("LSAIP9").unwrap();
        let r = builtin("RSAIP9").unwrap();
        assert_eq!(l.transpose(), r);
        assert_eq!(r.transpose(), l);
    }

    #[test]
    fn order9_pair_share_subloops() {
        let l = builtin("LSAIP9").unwrap();
        let r = builtin("RSAIP9").unwrap();
        let ls = l.all_subloops().unwrap();
        assert_eq!(ls, r.all_subloops().unwrap());
        for required in [
            vec![1, 2, 3, 4],
            vec![1, 3],
            vec![1, 5],
            vec![1, 6],
            vec![1, 7],
            vec![1, 8],
            vec![1, 9],
        ] {
            assert!(ls.contains(&required), "missing {required:?}");
        }
    }

    #[test]
    fn cayley_ladder_orders_and_associativity() {
        for r in 0..=CAYLEY_CEILING {
            let t = cayley_basis_loop(r).unwrap();
            assert_eq!(t.order(), 1 << (r + 1));
            assert!(t.is_normal());
            let profile = t.axiom_profile();
            assert!(profile.invertible, "r={r}");
            if r <= 2 {
                assert_eq!(profile.classification, Classification::Group, "r={r}");
            } else {
                assert_eq!(profile.classification, Classification::Nafil, "r={r}");
            }
        }
        assert!(matches!(
            cayley_basis_loop(CAYLEY_CEILING + 1),
            Err(Error::CeilingExceeded { .. })
        ));
    }

    #[test]
    fn cayley_inverses_are_negated_basis_vectors() {
        for r in 0..=3 {
            let t = cayley_basis_loop(r).unwrap();
            let inv = t.inverse_maps().unwrap();
            assert!(inv.is_invertible());
            // -e_0 is its own inverse; +e_i and -e_i pair up for i >= 1.
            assert_eq!(inv.two_sided_of(2), Some(2));
            let dim = 1u8 << r;
            for i in 1..dim {
                assert_eq!(inv.two_sided_of(2 * i + 1), Some(2 * i + 2));
                assert_eq!(inv.two_sided_of(2 * i + 2), Some(2 * i + 1));
            }
        }
    }

    #[test]
    fn quaternion_loop_is_order_eight_group() {
        let q = cayley_basis_loop(2).unwrap();
        assert_eq!(q.order(), 8);
        let s = q.structural_profile().unwrap();
        // Q8: -1 is the only involution, the six imaginary units have order 4.
        assert_eq!(s.element_orders[1], 2);
        for a in 2..8 {
            assert_eq!(s.element_orders[a], 4);
        }
    }

    #[test]
    fn cyclic_group_is_a_group() {
        for n in 1..=7 {
            let z = cyclic_group(n);
            assert!(z.is_normal());
            assert_eq!(z.axiom_profile().classification, Classification::Group);
        }
    }
}
