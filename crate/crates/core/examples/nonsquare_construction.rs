//! A maximum scattered subspace of F_8^4 gives a 6 × 3 MRD code, and the code gives the
//! subspace back.

use rmlab::bridge::{code_from_subspace, round_trip, subspace_from_code, GChoice};
use rmlab::gf::fqn;
use rmlab::linset::{is_scattered, scattered_family, FamilyParams, ScatteredFamily};
use rmlab::rmcode::{right_idealiser, verify, Code, EnumOptions};

fn main() -> rmlab::Result<()> {
    let f = fqn(2, 3)?;
    let u = scattered_family(&f, ScatteredFamily::Lavrauw, &FamilyParams { r: Some(4), ..Default::default() })?;
    let opts = EnumOptions::default();
    println!("U: dimension {} in V(4, 8), scattered {}", u.dim(), is_scattered(&u, opts.budget)?);

    for choice in [GChoice::Canonical, GChoice::Reversed] {
        let code = code_from_subspace(&u, choice, opts.budget)?;
        let c = Code::Matrix(code.clone());
        let v = verify(&c, &opts)?;
        println!("{choice:?} G: {} MRD={} |R| = 2^{}", v.params, v.mrd, right_idealiser(&c)?.dim());
        let back = subspace_from_code(&code, &opts)?;
        println!(
            "  recovered subspace: dimension {}, scattered {}",
            back.subspace.dim(),
            is_scattered(&back.subspace, opts.budget)?
        );
    }
    let rep = round_trip(&u, GChoice::Canonical, &opts)?;
    println!("{}", serde_json::to_string_pretty(&rep).expect("report serializes"));
    Ok(())
}
