//! A field F_{q^n} embedded in an extension F_{q^{rn}}, used to identify F_{q^{rn}}
//! with the coordinate space F_{q^n}^r.

use std::collections::HashMap;
use std::sync::Arc;

use super::{Elem, Field};
use crate::linalg::{self, Echelon};
use crate::{Error, Result};

pub struct Tower {
    ambient: Arc<Field>,
    point: Arc<Field>,
    r: usize,
    embed: Vec<Elem>,
    back: HashMap<u32, Elem>,
    basis: Vec<Elem>,
    /// Inverse of the expansion matrix: ambient F_q-coordinates to (j, a) coordinates.
    inv: Vec<Vec<u8>>,
    /// Ambient local F_q code to point local F_q code.
    local_map: Vec<u8>,
}

impl std::fmt::Debug for Tower {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("Tower").field("ambient", &self.ambient).field("point", &self.point).finish()
    }
}

impl Tower {
    pub fn new(ambient: Arc<Field>, point: Arc<Field>) -> Result<Tower> {
        if ambient.p() != point.p() || ambient.h() != point.h() || !ambient.n().is_multiple_of(point.n()) {
            return Err(Error::BadSubfield { sub: point.n(), n: ambient.n() });
        }
        let r = ambient.n() / point.n();
        let big_m = ambient.order() as u64 - 1;
        let small_m = point.order() as u64 - 1;
        let zeta = ambient.pow(ambient.primitive(), big_m / small_m);
        let modulus: Vec<Elem> = point.spec().modulus.iter().map(|&c| Elem(c)).collect();
        let eval = |x: Elem| modulus.iter().rev().fold(Elem::ZERO, |acc, &c| ambient.add(ambient.mul(acc, x), c));
        let mut alpha = None;
        let mut x = Elem::ONE;
        for _ in 0..small_m {
            if eval(x).is_zero() {
                alpha = Some(x);
                break;
            }
            x = ambient.mul(x, zeta);
        }
        if point.degree() == 1 {
            alpha = Some(point.root());
        }
        let alpha = alpha.ok_or_else(|| Error::Condition("modulus has no root in the extension".into()))?;
        let p = point.p();
        let mut alpha_pows = vec![Elem::ONE];
        for _ in 1..point.degree() {
            alpha_pows.push(ambient.mul(*alpha_pows.last().unwrap(), alpha));
        }
        let mut embed = Vec::with_capacity(point.order() as usize);
        let mut back = HashMap::with_capacity(point.order() as usize);
        for code in 0..point.order() {
            let mut y = Elem::ZERO;
            let mut t = code;
            for &ap in &alpha_pows {
                let d = t % p;
                t /= p;
                if d != 0 {
                    y = ambient.add(y, ambient.mul(ambient.constant(d as i64), ap));
                }
            }
            embed.push(y);
            back.insert(y.0, Elem(code));
        }
        let sf = ambient.small();
        let n = point.n();
        let mut ech: Echelon<u8> = Echelon::new();
        let mut basis = Vec::new();
        let theta = ambient.root();
        let mut cand = Elem::ONE;
        while basis.len() < r {
            let mut trial = ech.clone();
            if point.basis().iter().all(|&b| trial.insert(sf, &ambient.coords(ambient.mul(embed[b.0 as usize], cand))))
            {
                ech = trial;
                basis.push(cand);
            }
            cand = ambient.mul(cand, theta);
        }
        let nn = ambient.n();
        let mut rows = vec![vec![0u8; nn]; nn];
        for (j, &e) in basis.iter().enumerate() {
            for (a, &b) in point.basis().iter().enumerate() {
                let c = ambient.coords(ambient.mul(embed[b.0 as usize], e));
                for i in 0..nn {
                    rows[i][j * n + a] = c[i];
                }
            }
        }
        let inv = linalg::invert(sf, &rows).expect("tower basis expansion is invertible");
        let local_map = (0..ambient.q())
            .map(|l| {
                let big = back[&ambient.from_local(l as u8).0];
                point.to_local(big).expect("F_q maps to F_q")
            })
            .collect();
        Ok(Tower { ambient, point, r, embed, back, basis, inv, local_map })
    }

    pub fn ambient(&self) -> &Arc<Field> {
        &self.ambient
    }

    pub fn point(&self) -> &Arc<Field> {
        &self.point
    }

    pub fn r(&self) -> usize {
        self.r
    }

    /// The chosen F_{q^n}-basis of the extension.
    pub fn basis(&self) -> &[Elem] {
        &self.basis
    }

    pub fn embed(&self, x: Elem) -> Elem {
        self.embed[x.0 as usize]
    }

    /// Preimage of an ambient element lying in the embedded F_{q^n}.
    pub fn restrict(&self, y: Elem) -> Option<Elem> {
        self.back.get(&y.0).copied()
    }

    /// Coordinates over the F_{q^n}-basis, as point-field elements.
    pub fn coordinates(&self, v: Elem) -> Vec<Elem> {
        let sf = self.ambient.small();
        let c = self.ambient.coords(v);
        let n = self.point.n();
        (0..self.r)
            .map(|j| {
                let loc: Vec<u8> = (0..n)
                    .map(|a| {
                        let row = &self.inv[j * n + a];
                        let y = row.iter().zip(&c).fold(0u8, |acc, (&x, &y)| sf.add(acc, sf.mul(x, y)));
                        self.local_map[y as usize]
                    })
                    .collect();
                self.point.from_coords(&loc)
            })
            .collect()
    }

    pub fn from_coordinates(&self, c: &[Elem]) -> Elem {
        c.iter()
            .zip(&self.basis)
            .fold(Elem::ZERO, |acc, (&x, &e)| self.ambient.add(acc, self.ambient.mul(self.embed(x), e)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fqn;

    #[test]
    fn embedding_is_a_ring_map_and_coordinates_round_trip() {
        for (q, n, r) in [(2, 4, 3), (2, 2, 2), (3, 2, 2)] {
            let amb = fqn(q, n * r).unwrap();
            let pt = fqn(q, n).unwrap();
            let t = Tower::new(amb.clone(), pt.clone()).unwrap();
            for a in pt.elements() {
                for b in pt.elements().step_by(3) {
                    assert_eq!(t.embed(pt.mul(a, b)), amb.mul(t.embed(a), t.embed(b)));
                    assert_eq!(t.embed(pt.add(a, b)), amb.add(t.embed(a), t.embed(b)));
                }
                assert_eq!(t.restrict(t.embed(a)), Some(a));
            }
            for v in amb.elements().step_by(7) {
                assert_eq!(t.from_coordinates(&t.coordinates(v)), v);
            }
        }
    }
}
