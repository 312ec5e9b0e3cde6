//! Exhaustive searches over F_q-subspaces: maximum scattered rank, Z(ΓL)-classes and
//! ΓL-equivalence. Subspaces are streamed as reduced echelon bases, pivot pattern by pivot
//! pattern; patterns are processed in parallel and merged in pattern order.

use std::collections::{HashMap, HashSet};
use std::sync::Arc;

use rayon::prelude::*;

use super::{apply_semilinear, for_each_fq_point, linear_set, scattered_basis, unflatten, PointKeys, Subspace};
use crate::gf::{fqn, Elem, Field};
use crate::linalg::{gaussian_binomial, RrefShape};
use crate::{Error, Result};

fn rows_to_vectors(f: &Field, m: &[u8], j: usize) -> Vec<Vec<Elem>> {
    let w = m.len() / j.max(1);
    m.chunks(w).map(|row| unflatten(f, row)).collect()
}

/// One level of the descending search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelReport {
    pub k: usize,
    /// Subspaces examined at this dimension.
    pub examined: u128,
    pub found: bool,
}

#[derive(Clone, Debug)]
pub struct MaxScatteredReport {
    /// Largest dimension of a scattered subspace.
    pub k: usize,
    /// The first scattered subspace of dimension k in echelon order.
    pub witness: Subspace,
    /// Levels from `rn` down to `k`; every level above `k` was exhausted without success.
    pub levels: Vec<LevelReport>,
}

/// Largest k such that F_{q^n}^r has a scattered F_q-subspace of dimension k, by
/// exhausting all subspaces of each dimension from `rn` downwards. `budget` caps the total
/// number of subspaces examined.
pub fn max_scattered_rank_search(q: u32, n: u32, r: usize, budget: u64) -> Result<MaxScatteredReport> {
    let field = fqn(q, n)?;
    let f = &*field;
    let total = r * f.n();
    let mut spent: u128 = 0;
    let mut levels = Vec::new();
    for k in (1..=total).rev() {
        let count = gaussian_binomial(total as u32, k as u32, q as u128);
        if spent + count > budget as u128 {
            return Err(Error::BudgetExceeded { needed: spent + count, budget });
        }
        let shapes = RrefShape::all(total, k);
        let per_shape: Vec<(u128, Option<Vec<u8>>)> = shapes
            .par_iter()
            .map(|shape| {
                let mut examined = 0u128;
                let mut hit = None;
                shape.for_each_while(q, |m| {
                    examined += 1;
                    let vecs = rows_to_vectors(f, m, k);
                    if scattered_basis(f, r, &vecs).expect("key width checked") {
                        hit = Some(m.to_vec());
                        return false;
                    }
                    true
                });
                (examined, hit)
            })
            .collect();
        // the first hit in pattern order; patterns after it count as unexamined
        let mut examined = 0u128;
        let mut witness = None;
        for (e, hit) in per_shape {
            examined += e;
            if let Some(m) = hit {
                witness = Some(m);
                break;
            }
        }
        spent += examined;
        levels.push(LevelReport { k, examined, found: witness.is_some() });
        if let Some(m) = witness {
            let rows: Vec<Vec<u8>> = m.chunks(total).map(|c| c.to_vec()).collect();
            let witness = Subspace::from_rows(&field, r, rows);
            assert_singleton(f.n(), r, k);
            return Ok(MaxScatteredReport { k, witness, levels });
        }
    }
    Err(Error::Condition("no nonzero scattered subspace exists".into()))
}

/// A scattered U of dimension k yields an F_q-linear code of `(rn − k) × n` matrices with
/// dimension rn and minimum distance n − 1; the Singleton bound must admit it.
fn assert_singleton(n: usize, r: usize, k: usize) {
    let m = r * n - k;
    let (lo, hi) = (m.min(n) as i64, m.max(n) as i64);
    let d = n as i64 - 1;
    let bound = hi * (lo - d + 1);
    assert!(
        (r * n) as i64 <= bound,
        "scattered subspace of dimension {k} in V({r}, q^{n}) contradicts the Singleton bound"
    );
}

/// Subspaces with the same linear set as a given one, grouped modulo `F_{q^n}^*`.
#[derive(Clone, Debug)]
pub struct ZglClass {
    /// One representative per class, first in echelon order.
    pub classes: Vec<Subspace>,
    /// Number of subspaces W with `L_W = L_U`.
    pub matching: usize,
    /// Number of subspaces examined.
    pub examined: u128,
}

impl ZglClass {
    pub fn class(&self) -> usize {
        self.classes.len()
    }
}

/// Enumerates every F_q-subspace W of the same dimension with `L_W = L_U` and counts them
/// modulo scalar multiplication.
pub fn zgl_class_bruteforce(u: &Subspace, budget: u64) -> Result<ZglClass> {
    let field = u.field().clone();
    let f = &*field;
    let q = f.q();
    let (r, k) = (u.r(), u.dim());
    let total = r * f.n();
    let count = gaussian_binomial(total as u32, k as u32, q as u128);
    if count > budget as u128 {
        return Err(Error::BudgetExceeded { needed: count, budget });
    }
    let keys = PointKeys::new(f, r)?;
    let mut target = HashSet::new();
    for_each_fq_point(f, u.basis(), |v| {
        target.insert(keys.key(v));
        true
    });
    let shapes = RrefShape::all(total, k);
    let found: Vec<Vec<Vec<Vec<u8>>>> = shapes
        .par_iter()
        .map(|shape| {
            let mut out = Vec::new();
            let mut seen = HashSet::with_capacity(target.len());
            shape.for_each(q, |m| {
                seen.clear();
                let vecs = rows_to_vectors(f, m, k);
                let inside = for_each_fq_point(f, &vecs, |v| {
                    let key = keys.key(v);
                    seen.insert(key);
                    target.contains(&key)
                });
                if inside && seen.len() == target.len() {
                    out.push(m.chunks(total).map(|c| c.to_vec()).collect());
                }
            });
            out
        })
        .collect();
    let matching: Vec<Subspace> =
        found.into_iter().flatten().map(|rows| Subspace::from_rows(&field, r, rows)).collect();
    let index: HashMap<&Vec<Vec<u8>>, usize> = matching.iter().enumerate().map(|(i, w)| (&w.rows, i)).collect();
    let mut assigned = vec![false; matching.len()];
    let mut classes = Vec::new();
    for i in 0..matching.len() {
        if assigned[i] {
            continue;
        }
        classes.push(matching[i].clone());
        for lambda in f.elements().skip(1) {
            if let Some(&j) = index.get(&matching[i].scale(lambda).rows) {
                assigned[j] = true;
            }
        }
    }
    Ok(ZglClass { classes, matching: matching.len(), examined: count })
}

/// Whether some `v ↦ M v^{p^k}` with `M ∈ GL(r, q^n)` maps U onto W, by full iteration
/// over the group (`|F_{q^n}|^{r²}` matrices times the field degree over F_p).
pub fn gl_orbit_equivalent(u: &Subspace, w: &Subspace, budget: u64) -> Result<bool> {
    let f: &Arc<Field> = u.field();
    if f.spec() != w.field().spec() || u.r() != w.r() {
        return Err(Error::Shape("subspaces live in different spaces".into()));
    }
    let r = u.r();
    let order = f.order() as u128;
    let size = order.checked_pow((r * r) as u32).and_then(|x| x.checked_mul(f.degree() as u128)).unwrap_or(u128::MAX);
    if size > budget as u128 {
        return Err(Error::BudgetExceeded { needed: size, budget });
    }
    if u.dim() != w.dim() {
        return Ok(false);
    }
    // the weight spectrum of the linear set is a ΓL-invariant
    let sb = budget.max(1);
    if linear_set(u, sb)?.weight_spectrum != linear_set(w, sb)?.weight_spectrum {
        return Ok(false);
    }
    let target = w.echelon();
    let sf = f.small();
    let rr = r * r;
    let first: Vec<u32> = (0..f.order()).collect();
    Ok(first.into_par_iter().any(|lead| {
        let mut entries = vec![0u32; rr];
        entries[0] = lead;
        loop {
            let m: Vec<Vec<Elem>> = entries.chunks(r).map(|row| row.iter().map(|&c| Elem(c)).collect()).collect();
            if crate::linalg::rank(&**f, &m) == r {
                for k in 0..f.degree() {
                    let ok = u
                        .basis()
                        .iter()
                        .all(|v| target.contains(sf, &super::flatten(f, &apply_semilinear(f, &m, k, v))));
                    if ok {
                        return true;
                    }
                }
            }
            let mut i = 1;
            loop {
                if i == rr {
                    return false;
                }
                entries[i] += 1;
                if entries[i] < f.order() {
                    break;
                }
                entries[i] = 0;
                i += 1;
            }
        }
    }))
}

/// Number of ΓL-orbits among `reps`, merging greedily with `gl_orbit_equivalent`.
pub fn gl_class_count(reps: &[Subspace], budget: u64) -> Result<usize> {
    let mut orbits: Vec<&Subspace> = Vec::new();
    for u in reps {
        let mut merged = false;
        for v in &orbits {
            if gl_orbit_equivalent(u, v, budget)? {
                merged = true;
                break;
            }
        }
        if !merged {
            orbits.push(u);
        }
    }
    Ok(orbits.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linpoly::LinPoly;
    use crate::linset::subspace_from_map;

    #[test]
    fn projective_line_over_f4() {
        let rep = max_scattered_rank_search(2, 2, 2, 1 << 20).unwrap();
        assert_eq!(rep.k, 2);
        assert!(rep.levels[..rep.levels.len() - 1].iter().all(|l| !l.found));
    }

    #[test]
    fn zgl_class_of_pseudoregulus_at_n3() {
        let f = fqn(2, 3).unwrap();
        let u = subspace_from_map(&f, &LinPoly::monomial(3, 1, Elem::ONE)).unwrap();
        let z = zgl_class_bruteforce(&u, 1 << 20).unwrap();
        assert_eq!(z.class(), 2);
        assert_eq!(z.matching, 14);
    }

    #[test]
    fn scalar_multiple_is_equivalent() {
        let f = fqn(2, 3).unwrap();
        let u = subspace_from_map(&f, &LinPoly::monomial(3, 1, Elem::ONE)).unwrap();
        let v = u.scale(f.primitive());
        assert!(gl_orbit_equivalent(&u, &v, 1 << 20).unwrap());
        let x = subspace_from_map(&f, &LinPoly::zero(3)).unwrap();
        assert!(!gl_orbit_equivalent(&u, &x, 1 << 20).unwrap());
    }
}
