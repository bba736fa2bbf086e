//! Published closed forms that the interpolation checks are compared with.
//! Polynomials are written in the variable `t` (standing for alpha) and, for
//! the fixed-alpha entries, `a, b, c`.

/// Irreducible factors of the determinant for the plane `-X2 + X4`, with
/// multiplicities, as polynomials over F_3 in `t`.
pub const DET_H_FACTORS: [(&str, usize); 8] = [
    ("t", 3),
    ("t + 1", 4),
    ("t - 1", 5),
    ("t^3 + t^2 + t - 1", 1),
    ("t^5 + t^4 + t^3 + t^2 - t + 1", 1),
    ("t^5 - t^4 + t^3 + t^2 + t + 1", 1),
    ("t^6 - t^4 + t^3 - t + 1", 1),
    ("t^7 + t^5 + t - 1", 1),
];

/// Entries `a11 .. a33` for the plane `-X2 + X4`, row-major.
pub const DET_H_ENTRIES: [&str; 9] = [
    "t^13 - t^11 - t^10 + t^9 + t^7 + t^6 - t^3 - t^2 - 1",
    "-t^7 - t^6 + t^5 + t^4 + t^2 + t",
    "t^10 + t^9 + t^7 - t^6 + t^5 - t^4",
    "-t^16 - t^13 + t^11 + t^9 + t^8 + t^7 - t^5 + t^4 - t^3 - t^2",
    "t^13 + t^9 + t^8 + t^7 - t^6 - t^4 - t^3 - t^2 - t - 1",
    "-t^13 + t^10 + t^9 - t^6 + t^5 + t^4 + t^3 - t^2 - t - 1",
    "t^13 + t^12 - t^9 + t^8 + t^7 + t^6 - t^5 + t^2 + t",
    "t^10 - t^8 + t^7 + t^5 - t^4 - t^3 - t^2 - t - 1",
    "t^12 - t^10 + t^6 + t^5 - t^4 - t - 1",
];

/// Minimal polynomial of the alpha values where the `-X2 + X4` section drops
/// to 3-rank 2.
pub const RANK_TWO_ALPHA: &str = "t^3 + t^2 + t - 1";

/// alpha is a root of this polynomial in the fixed-alpha family.
pub const FIXALPHA_MINPOLY: &str = "t^2 + 2t + 2";

/// Entries `a11 .. a33` for fixed alpha and plane `(a, b, c, 1)`.
pub const FIXALPHA_ENTRIES: [&str; 9] = [
    "a^3c + b^2 + ac + (t + 1)(a^3 - bc + a) + (t - 1)(ab - b) - tc^2",
    "b^3c + (t + 1)b^3",
    "c^4 - ac + (t + 1)c^2(c - 1) + (-t + 1)b^2 + -t(ab + bc)",
    "a^3b - ab + (-t - 1)(a^3 + ac + c) + (-t + 1)(a^2 + c^2 + a - bc)",
    "b^4 + (-t - 1)b^3 - tc^2 + tb",
    "bc^3 + (-t - 1)c^3 + t(a^2 - ac + bc + c^2) + (t - 1)ab",
    "a^4 - a^2 + (-t + 1) + (t + 1)(a^3 - ab - b) + (-t + 1)(b^2 - bc - c) + tac",
    "ab^3 + (t + 1)b^3 + tbc",
    "ac^3 + a^2 + (t + 1)(c^3 + ac - c) - t(b^2 + bc + ab)",
];

/// Plane coefficients `(a, b, c)` with smooth X of 3-rank 2 for fixed alpha.
pub const FIXALPHA_RANK_TWO_PLANE: [i64; 3] = [2, 0, 2];
