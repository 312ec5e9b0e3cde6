//! Default moduli: for each (p, D) the primitive monic polynomial of degree D over F_p
//! whose ascending coefficient vector, read as a base-p integer, is smallest.

/// `(p, ascending coefficients)`; the degree is `len - 1`.
pub(crate) const DEFAULT_MODULI: &[(u32, &[u8])] = &[
    (2, &[1, 1]),
    (2, &[1, 1, 1]),
    (2, &[1, 1, 0, 1]),
    (2, &[1, 1, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 1, 1, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 0, 1, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 1, 0, 0, 1, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (2, &[1, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 1]),
    (3, &[2, 1, 1]),
    (3, &[1, 2, 0, 1]),
    (3, &[2, 1, 0, 0, 1]),
    (3, &[1, 2, 0, 0, 0, 1]),
    (3, &[2, 1, 0, 0, 0, 0, 1]),
    (3, &[1, 2, 1, 0, 0, 0, 0, 1]),
    (3, &[2, 0, 0, 1, 0, 0, 0, 0, 1]),
    (3, &[1, 0, 1, 2, 0, 0, 0, 0, 0, 1]),
    (3, &[2, 1, 0, 1, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[2, 2, 2, 1, 2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[2, 2, 0, 1, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 2, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[2, 2, 2, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[1, 2, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (3, &[2, 1, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[2, 1]),
    (5, &[2, 1, 1]),
    (5, &[2, 3, 0, 1]),
    (5, &[2, 2, 1, 0, 1]),
    (5, &[2, 4, 0, 0, 0, 1]),
    (5, &[2, 1, 0, 0, 0, 0, 1]),
    (5, &[2, 3, 0, 0, 0, 0, 0, 1]),
    (5, &[3, 2, 1, 0, 0, 0, 0, 0, 1]),
    (5, &[3, 2, 1, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[3, 1, 1, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[2, 3, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[3, 2, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (5, &[2, 3, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (7, &[2, 1]),
    (7, &[3, 1, 1]),
    (7, &[2, 3, 0, 1]),
    (7, &[5, 3, 1, 0, 1]),
    (7, &[4, 1, 0, 0, 0, 1]),
    (7, &[5, 1, 3, 0, 0, 0, 1]),
    (7, &[2, 6, 0, 0, 0, 0, 0, 1]),
    (7, &[3, 1, 0, 0, 0, 0, 0, 0, 1]),
    (7, &[2, 1, 1, 0, 0, 0, 0, 0, 0, 1]),
    (7, &[5, 1, 5, 0, 0, 0, 0, 0, 0, 0, 1]),
    (7, &[4, 1, 0, 0, 0, 0, 0, 0, 0, 0, 0, 1]),
    (11, &[3, 1]),
    (11, &[7, 1, 1]),
    (11, &[4, 1, 0, 1]),
    (11, &[2, 1, 0, 0, 1]),
    (11, &[4, 1, 1, 0, 0, 1]),
    (11, &[8, 2, 1, 0, 0, 0, 1]),
    (11, &[4, 1, 0, 0, 0, 0, 0, 1]),
    (11, &[6, 2, 1, 0, 0, 0, 0, 0, 1]),
    (11, &[9, 2, 0, 0, 0, 0, 0, 0, 0, 1]),
    (13, &[2, 1]),
    (13, &[2, 1, 1]),
    (13, &[6, 1, 0, 1]),
    (13, &[2, 1, 1, 0, 1]),
    (13, &[2, 4, 0, 0, 0, 1]),
    (13, &[2, 2, 1, 0, 0, 0, 1]),
    (13, &[2, 3, 0, 0, 0, 0, 0, 1]),
    (13, &[6, 1, 4, 0, 0, 0, 0, 0, 1]),
];
