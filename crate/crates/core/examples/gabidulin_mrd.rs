//! Gabidulin codes are MRD and their weight distribution is determined by the parameters.

use rmlab::gf::fqn;
use rmlab::rmcode::{family_gabidulin, mrd_weight_distribution, verify, Code, EnumOptions, Strategy};

fn main() -> rmlab::Result<()> {
    for (n, k, s) in [(3, 2, 1), (4, 2, 3), (5, 2, 1), (5, 3, 2)] {
        let f = fqn(2, n)?;
        let code: Code = family_gabidulin(&f, k, s)?.into();
        let v = verify(&code, &EnumOptions { strategy: Strategy::Exhaustive, ..Default::default() })?;
        let p = &v.params;
        let predicted = mrd_weight_distribution(p.m as u32, p.n as u32, p.q, p.d as u32)?;
        println!("G_{{{k},{s}}} over F_2^{n}: {p} MRD={} weights {}", v.mrd, v.spectrum.distribution);
        assert_eq!(v.spectrum.distribution.counts, predicted);
    }
    Ok(())
}
