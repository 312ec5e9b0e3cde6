//! The binomial example f(x) = a x^{q^3} in F_{2^12} over F_{2^4}, with its code of
//! 6 × 4 maps written out in coordinates.

use rmlab::bridge::worked_example_binomial;
use rmlab::linset::is_scattered;
use rmlab::rmcode::{verify, Code, EnumOptions};

fn main() -> rmlab::Result<()> {
    let ex = worked_example_binomial(2, 2, 3, 3, None)?;
    println!("a = {}, ω² = ω·{} + {}", ex.a, ex.a0, ex.a1);
    println!(
        "U: dimension {} in V({}, 16), scattered {}",
        ex.subspace.dim(),
        ex.subspace.r(),
        is_scattered(&ex.subspace, 1 << 24)?
    );
    let v = verify(&Code::Matrix(ex.code.clone()), &EnumOptions::default())?;
    println!("code {}: MRD={}", v.params, v.mrd);
    println!("agrees with the general construction: {}", ex.matches_construction);
    println!("linear over F_8: {}", ex.fqr_linear);
    Ok(())
}
