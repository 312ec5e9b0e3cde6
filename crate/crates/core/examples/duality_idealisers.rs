//! Delsarte duals and idealisers of twisted Gabidulin codes over F_{3^4}.

use rmlab::gf::fqn;
use rmlab::rmcode::{
    delsarte_dual, family_twisted, is_field_algebra, left_idealiser, right_idealiser, verify, Code, EnumOptions,
};

fn main() -> rmlab::Result<()> {
    let f = fqn(3, 4)?;
    let minus_one = f.constant(-1);
    let eta = f.elements().find(|&e| f.norm(e, 1).unwrap() == minus_one).expect("norm is onto F_3^*");
    let opts = EnumOptions::default();
    for h in 0..4 {
        let code: Code = family_twisted(&f, 2, 1, eta, h)?.into();
        let (l, r) = (left_idealiser(&code)?, right_idealiser(&code)?);
        let dual = delsarte_dual(&code)?;
        println!(
            "H_{{2,1}}(η={eta}, h={h}): {} |L| = 3^{} |R| = 3^{} fields: {}/{}; dual {} MRD={}",
            verify(&code, &opts)?.params,
            l.dim(),
            r.dim(),
            is_field_algebra(&l)?,
            is_field_algebra(&r)?,
            verify(&dual, &opts)?.params,
            verify(&dual, &opts)?.mrd,
        );
        assert_eq!(delsarte_dual(&dual)?, code);
    }
    Ok(())
}
