//! U_f = {(x, f(x))} is maximum scattered exactly when C_f = ⟨x, f(x)⟩ is MRD.

use rmlab::bridge::verify_sheekey;
use rmlab::gf::fqn;
use rmlab::linpoly::LinPoly;
use rmlab::rmcode::EnumOptions;

fn main() -> rmlab::Result<()> {
    let cases = [(2, 5, "x^q"), (2, 5, "x^q^2"), (2, 4, "x^q^2"), (3, 4, "g^1 x^q + x^q^3"), (3, 4, "x^q + x^q^3")];
    for (q, n, text) in cases {
        let f = fqn(q, n)?;
        let poly = LinPoly::parse(&f, text)?;
        let rep = verify_sheekey(&f, &poly, &EnumOptions::default())?;
        println!(
            "f = {text:<14} over F_{q}^{n}: scattered={} MRD={} code {} weights {}",
            rep.scattered, rep.mrd, rep.code.params, rep.code.distribution
        );
        assert!(rep.agree);
    }
    Ok(())
}
