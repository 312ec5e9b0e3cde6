//! q-polynomials over F_{3^3} as F_3-linear maps.

use rmlab::gf::fqn;
use rmlab::linpoly::LinPoly;

fn main() -> rmlab::Result<()> {
    let f = fqn(3, 3)?;
    let a = LinPoly::parse(&f, "x^q - x")?;
    let b = LinPoly::parse(&f, "g^2 x^q^2 + x")?;
    println!("a = {}, rank {}, kernel dimension {}", a.display(), a.rank(&f), a.kernel_dim(&f));
    println!("b = {}, rank {}", b.display(), b.rank(&f));

    let ab = a.compose(&f, &b);
    println!("a∘b = {}", ab.display());
    assert_eq!(ab.to_matrix(&f), a.to_matrix(&f).mul(f.small(), &b.to_matrix(&f)));

    let adj = b.adjoint(&f);
    println!("adjoint of b = {}, rank {}", adj.display(), adj.rank(&f));
    assert_eq!(adj.adjoint(&f), b);

    let m = b.to_matrix(&f);
    println!("matrix of b over F_3: {:?}", m.to_rows());
    assert_eq!(LinPoly::from_matrix(&f, &m)?, b);
    Ok(())
}
