//! Sporadic MRD codes: C3 over F_{5^6} through its scattered subspace, and a parameter
//! search for C4 over F_{5^6}.

use rmlab::bridge::code_from_f;
use rmlab::gf::fqn;
use rmlab::linpoly::LinPoly;
use rmlab::linset::{is_scattered, subspace_from_map};
use rmlab::rmcode::{family_sporadic, sporadic_search, EnumOptions, Sporadic, SporadicParams};

fn main() -> rmlab::Result<()> {
    let f = fqn(5, 6)?;
    let params = SporadicParams { delta: Some(f.constant(2)), ..Default::default() };
    let c3 = family_sporadic(&f, Sporadic::C3, &params)?;
    let poly = LinPoly::parse(&f, "x^q + x^q^3 + 2x^q^5")?;
    assert_eq!(code_from_f(&f, &poly)?, c3);
    let u = subspace_from_map(&f, &poly)?;
    println!("C3 (δ = 2): dimension {} over F_5, U_f scattered {}", c3.dim(), is_scattered(&u, 1 << 24)?);

    for name in [Sporadic::C3, Sporadic::D3] {
        match sporadic_search(&f, name, &SporadicParams::default(), &EnumOptions::with_budget(1 << 26)) {
            Ok(Some((p, code))) => println!("{name}: first MRD instance with {p:?}, dimension {}", code.dim()),
            Ok(None) => println!("{name}: no MRD instance"),
            Err(e) => println!("{name}: {e}"),
        }
    }
    Ok(())
}
