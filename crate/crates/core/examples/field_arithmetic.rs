//! Arithmetic in F_{2^4} viewed over F_2 and over its subfield F_4.

use rmlab::gf::{fqn, Elem, Tower};

fn main() -> rmlab::Result<()> {
    let f = fqn(2, 4)?;
    let g = f.primitive();
    println!("{f}: modulus {:?}, primitive element {g}", f.spec().modulus);

    let x = f.pow(g, 7);
    println!("g^7 = {x}, its Frobenius images: {:?}", (0..4).map(|s| f.frob(x, s).0).collect::<Vec<_>>());
    println!("N(g^7) = {}, Tr(g^7) = {}", f.norm(x, 1)?, f.trace(x, 1)?);
    println!("relative norm to F_4: {}", f.norm(x, 2)?);
    println!("F_4 inside F_16: {:?}", f.subfield_elements(2)?.iter().map(|e| e.0).collect::<Vec<_>>());
    assert_eq!(f.mul(x, f.inv(x)), Elem::ONE);

    // F_16 as a 2-dimensional space over F_4
    let tower = Tower::new(f.clone(), fqn(2, 2)?)?;
    let c = tower.coordinates(x);
    println!("coordinates of g^7 over F_4: {:?}", c.iter().map(|e| e.0).collect::<Vec<_>>());
    assert_eq!(tower.from_coordinates(&c), x);
    Ok(())
}
