//! Published example rows: target ranks, quadratic-form coefficients and the
//! printed equations of X and Z, verbatim.

#[derive(Clone, Copy, Debug)]
pub struct TableRow {
    pub p: u32,
    pub f: usize,
    pub f_prime: usize,
    pub q: [i64; 15],
    /// Printed affine quartic of X.
    pub x: &'static str,
    /// Variable names used in `x`, standing for `(u, v)`.
    pub x_vars: [&'static str; 2],
    /// Printed `expr` in `expr = 0`, with the square term `y^2` / `z^2` in it.
    pub z: &'static str,
    /// `(x, z)` names used in `z`.
    pub z_vars: [&'static str; 2],
}

const UV: [&str; 2] = ["u", "v"];
const XZ: [&str; 2] = ["x", "z"];
const XY: [&str; 2] = ["x", "y"];

const fn row(
    p: u32,
    f: usize,
    f_prime: usize,
    x: &'static str,
    z: &'static str,
    q: [i64; 15],
) -> TableRow {
    TableRow { p, f, f_prime, q, x, x_vars: UV, z, z_vars: XZ }
}

pub const TABLE: [TableRow; 30] = [
    row(
        3, 3, 0,
        "2u^4 + 2u^3v + u^3 + 2u^2v^2 + u^2v + 2u^2 + 2uv^3 + uv^2 + uv + 2u + v^3 + v^2 + 2v + 1",
        "2x^5 + x^4 + 2x^2 + x + z^2 + 1",
        [2, 0, 2, 0, 0, 1, 1, 1, 1, 0, 1, 2, 2, 2, 2],
    ),
    row(
        3, 2, 0,
        "2u^4 + u^3v + 2u^3 + u^2v + 2uv^3 + uv^2 + 2v^3 + 2v^2 + 2",
        "x^6 + 2x^5 + 2x^4 + x^2 + x + z^2",
        [1, 0, 2, 0, 0, 0, 1, 1, 1, 0, 1, 2, 2, 1, 2],
    ),
    row(
        3, 1, 0,
        "2u^4 + 2u^3 + 2u^2v + 2u^2 + uv^2 + 2uv + x + 2v^4 + v^3 + v + 2",
        "2x^6 + 2x^5 + z^2 + 1",
        [2, 0, 0, 1, 1, 1, 1, 1, 1, 0, 0, 1, 1, 1, 0],
    ),
    row(
        3, 0, 0,
        "2u^4 + 2u^3 + 2u^2v + 2u^2 + 2uv^2 + u + v^4 + 2v^3 + v + 1",
        "2x^6 + x + z^2 + 1",
        [2, 0, 2, 0, 0, 1, 1, 1, 1, 0, 0, 1, 1, 1, 2],
    ),
    TableRow {
        p: 3,
        f: 1,
        f_prime: 1,
        q: [0, 0, 1, 0, 0, 2, 1, 1, 1, 0, 1, 0, 1, 1, 2],
        x: "2x^4 + x^2y^2 + x^2 + xy^3 + xy^2 + 2xy + 2x + 2y^4 + y^3 + 2y",
        x_vars: XY,
        z: "2x^6 + 2x^4 + x + y^2",
        z_vars: XY,
    },
    TableRow {
        p: 3,
        f: 0,
        f_prime: 1,
        q: [2, 0, 1, 0, 0, 2, 1, 0, 0, 0, 1, 0, 1, 0, 1],
        x: "2x^4 + 2x^3y + 2x^3 + 2x^2 + xy^3 + xy^2 + 2xy + 2x + y^2 + 2",
        x_vars: XY,
        z: "2x^6 + 2x^3 + 2x^2 + x + y^2 + 1",
        z_vars: XY,
    },
    row(
        5, 3, 0,
        "4u^4 + 3u^3 + 4u^2v^2 + u^2v + 3uv^2 + 4u + v^3 + 3v^2 + 3v",
        "4x^6 + x^3 + 2x + z^2 + 3",
        [1, 0, 1, 0, 0, 3, 1, 1, 0, 0, 0, 1, 3, 1, 0],
    ),
    row(
        5, 2, 0,
        "4u^4 + 3u^3 + 4u^2v^2 + u^2v + 3uv^2 + u + v^3 + 2v^2 + 2v",
        "4x^6 + 4x^3 + 3x + z^2 + 2",
        [1, 0, 1, 0, 0, 2, 1, 1, 0, 0, 0, 1, 3, 1, 0],
    ),
    row(
        5, 1, 0,
        "4u^4 + 3u^2v^2 + 3u^2v + 2u^2 + 4uv^2 + uv + 2u + 4v^4 + 4v^3 + 4v^2 + 3",
        "2x^5 + x^3 + 2x^2 + 2x + z^2 + 2",
        [3, 4, 4, 4, 4, 3, 1, 1, 1, 0, 0, 0, 0, 1, 3],
    ),
    row(
        5, 0, 0,
        "4u^4 + 3u^2v^2 + 3u^2v + 2u^2 + 4uv^2 + 3uv + 3v + 4v^4 + 4v^3 + v + 2",
        "2x^5 + 2x^2 + 2x + z^2 + 2",
        [3, 4, 4, 1, 0, 1, 1, 1, 1, 0, 0, 0, 0, 1, 3],
    ),
    row(
        7, 3, 0,
        "6u^4 + 5u^2v^2 + 3u^2v + 6u^2 + 6v^4 + v^3 + 3v^2 + v + 4",
        "6x^5 + 6x^3 + z^2 + 4",
        [1, 0, 5, 0, 0, 5, 1, 1, 1, 0, 0, 0, 0, 3, 1],
    ),
    row(
        7, 2, 0,
        "6u^4 + 5u^2v^2 + 2u^2v + 2u^2 + 6v^4 + 4v^3 + 6v^2 + 6",
        "5x^5 + x^4 + 4x^3 + 6x^2 + 4x + z^2",
        [1, 0, 2, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 2, 4],
    ),
    row(
        7, 1, 0,
        "6u^4 + 5u^2v^2 + 2u^2v + u^2 + 6v^4 + 5v^2 + 4v + 5",
        "6x^5 + 6x^4 + x^2 + x + z^2",
        [3, 0, 0, 0, 0, 6, 1, 1, 1, 0, 0, 0, 0, 3, 1],
    ),
    row(
        7, 0, 0,
        "6u^4 + u^2v^2 + 4u^2 + 3v^4 + 6v^2 + 6",
        "4x^5 + 4x^4 + 3x^2 + 3x + z^2",
        [3, 0, 4, 0, 0, 0, 1, 1, 1, 0, 0, 1, 0, 0, 2],
    ),
    row(
        11, 3, 0,
        "10u^4 + 9u^2v^2 + 5u^2v + 2u^2 + 10v^4 + 10v^3 + 4v^2 + 4v + 6",
        "9x^5 + 4x^4 + x^3 + 7x^2 + 8x + z^2 + 3",
        [8, 0, 5, 0, 0, 2, 1, 1, 0, 0, 0, 0, 0, 2, 3],
    ),
    row(
        11, 2, 0,
        "10u^4 + 9u^2v^2 + 9u^2v + 9u^2 + 10v^4 + v^3 + v^2 + 7v + 7",
        "9x^5 + 9x^4 + 9x^3 + 2x^2 + 2x + z^2 + 1",
        [10, 0, 6, 0, 0, 9, 1, 1, 0, 0, 0, 0, 0, 2, 2],
    ),
    row(
        11, 1, 0,
        "10u^4 + 9u^2v^2 + 9u^2v + 8u^2 + 10v^4 + 3v^3 + 10v^2 + 4v + 6",
        "9x^5 + 2x^4 + 3x^3 + 9x^2 + 2x + z^2 + 8",
        [10, 0, 7, 0, 0, 2, 1, 1, 0, 0, 0, 0, 0, 2, 3],
    ),
    row(
        11, 0, 0,
        "10u^4 + 9u^2v^2 + 3u^2v + 5u^2 + 10v^4 + 9v^3 + 8v^2 + 4v + 1",
        "9x^5 + 8x^4 + 9x^3 + 3x^2 + 10x + z^2 + 8",
        [7, 0, 10, 0, 0, 2, 1, 1, 1, 0, 0, 0, 0, 2, 1],
    ),
    row(
        13, 3, 0,
        "12u^4 + 11u^2v^2 + 6u^2v + 11u^2 + 12v^4 + 12v^3 + 11v^2 + 3v + 12",
        "11x^5 + 10x^4 + 8x^3 + 3x^2 + 11x + z^2 + 1",
        [3, 0, 6, 0, 0, 8, 1, 1, 1, 0, 0, 0, 0, 2, 0],
    ),
    row(
        13, 2, 0,
        "12u^4 + 11u^2v^2 + 2u^2v + 4u^2 + 12v^4 + 11v^3 + 5v^2 + 11v + 6",
        "11x^5 + 10x^4 + 8x^3 + 3x^2 + 11x + z^2 + 1",
        [1, 0, 12, 0, 0, 12, 1, 1, 1, 0, 0, 0, 0, 2, 6],
    ),
    row(
        13, 1, 0,
        "12u^4 + 11u^2v^2 + 9u^2v + 9u^2 + 12v^4 + 7v^3 + 8v^2 + 4v + 1",
        "11x^5 + 7x^4 + 11x^3 + 6x^2 + 5x + z^2 + 1",
        [2, 0, 3, 0, 0, 11, 1, 1, 1, 0, 0, 0, 0, 11, 12],
    ),
    row(
        13, 0, 0,
        "12u^4 + 11 u^2 v^2 + 9 u^2v + 7 u^2 + 12 v^4 + 8 v^3 + 6 v^2 + 12 v + 11",
        "6 x^5 + 5 x^4 + 3 x^3 + 6 x^2 + 6 x + z^2 + 6",
        [9, 0, 8, 0, 0, 12, 1, 1, 1, 0, 0, 0, 0, 1, 1],
    ),
    row(
        17, 3, 0,
        "16u^4 + 15u^2v^2 + 15u^2 + 16v^4 + 5v^3 + 7v^2 + 6v + 3",
        "4x^5 + 8x^4 + 9x^3 + 9x^2 + x + z^2",
        [0, 0, 13, 0, 0, 2, 1, 1, 1, 0, 0, 0, 0, 3, 2],
    ),
    row(
        17, 2, 0,
        "16u^4 + 15u^2v^2 + 10u^2v + u^2 + 16v^4 + 3v^3 + 4v^2 + 16",
        "4x^5 + 8x^4 + 9x^3 + 9x^2 + x + z^2",
        [9, 0, 1, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 3, 6],
    ),
    row(
        17, 1, 0,
        "16u^4 + 15u^2v^2 + 10u^2v + 3u^2 + 16v^4 + 4v^3 + 14v + 6",
        "4x^5 + 7x^4 + 5x^3 + 10x^2 + 9x + z^2 + 5",
        [9, 0, 7, 0, 0, 16, 1, 1, 1, 0, 0, 0, 0, 3, 10],
    ),
    row(
        17, 0, 0,
        "16u^4 + 15u^2v^2 + 6u^2v + 15u^2 + 16v^4 + 9v^3 + 15v^2 + 15v + 16",
        "8x^5 + 7x^4 + 8x^3 + x^2 + 14x + z^2 + 11",
        [6, 0, 9, 0, 0, 15, 1, 1, 1, 0, 0, 0, 0, 1, 0],
    ),
    row(
        19, 3, 0,
        "18u^4 + 17u^2v^2 + 9u^2v + 3u^2 + 18v^4 + 5v^3 + 5v^2 + 18",
        "5x^5 + 11x^4 + 13x^3 + 8x^2 + 10x + z^2",
        [3, 0, 8, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 3, 8],
    ),
    row(
        19, 2, 0,
        "18u^4 + 17u^2v^2 + 12u^2v + 18u^2 + 18v^4 + 18v^3 + 9v^2 + 18",
        "5x^5 + 11x^4 + 13x^3 + 8x^2 + 10x + z^2",
        [4, 0, 6, 0, 0, 0, 1, 1, 1, 0, 0, 0, 0, 3, 5],
    ),
    row(
        19, 1, 0,
        "18u^4 + 17u^2v^2 + 5u^2v + 18u^2 + 18v^4 + 6v^3 + 3v^2 + 6v + 4",
        "17x^5 + x^4 + x^3 + 18x^2 + 10x + z^2 + 13",
        [12, 0, 3, 0, 0, 3, 1, 1, 1, 0, 0, 0, 0, 2, 8],
    ),
    row(
        19, 0, 0,
        "18u^4 + 17u^2v^2 + 17u^2v + 4u^2 + 18v^4 + v^3 + 14v^2 + 12v + 1",
        "16x^5 + 9x^4 + 14x^3 + 10x^2 + 8x + z^2 + 3",
        [11, 0, 4, 0, 0, 10, 1, 1, 1, 0, 0, 0, 0, 5, 4],
    ),
];

pub const TABLE_PRIMES: [u32; 7] = [3, 5, 7, 11, 13, 17, 19];

pub fn rows_for(p: u32) -> impl Iterator<Item = &'static TableRow> {
    TABLE.iter().filter(move |r| r.p == p)
}
