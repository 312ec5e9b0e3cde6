//! Linear sets of a few subspaces of F_{q^n}^2 and their point weights.

use rmlab::gf::fqn;
use rmlab::linset::{linear_set, scattered_family, FamilyParams, ScatteredFamily};

fn main() -> rmlab::Result<()> {
    let budget = 1 << 24;
    let cases = [
        (2, 5, ScatteredFamily::U1, FamilyParams::default()),
        (2, 4, ScatteredFamily::U1, FamilyParams { s: Some(3), ..Default::default() }),
        (3, 4, ScatteredFamily::U2, FamilyParams::default()),
        (5, 6, ScatteredFamily::U4, FamilyParams::default()),
        (2, 2, ScatteredFamily::Baer, FamilyParams { r: Some(3), ..Default::default() }),
    ];
    for (q, n, family, params) in cases {
        let f = fqn(q, n)?;
        let u = scattered_family(&f, family, &params)?;
        let ls = linear_set(&u, budget)?;
        println!(
            "{family} in V({}, {q}^{n}): rank {}, {} points, weights {:?}, scattered {}",
            u.r(),
            u.dim(),
            ls.size,
            ls.weight_spectrum,
            ls.is_scattered()
        );
    }
    Ok(())
}
