//! F_q-subspaces of F_{q^n}^r and the linear sets they define.
//!
//! A subspace is stored by a reduced row echelon basis of F_q-coordinate rows: vector
//! `(v_0, …, v_{r−1})` flattens to the concatenation of the F_q-coordinates of each `v_i`.
//! Projective points are normalized by dividing by the first nonzero coordinate.

pub mod families;
pub mod search;

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use rand::Rng;

use crate::gf::{Elem, Field};
use crate::linalg::{self, Echelon};
use crate::linpoly::LinPoly;
use crate::{Error, Result};

pub use families::{scattered_family, FamilyParams, ScatteredFamily};
pub use search::{
    gl_class_count, gl_orbit_equivalent, max_scattered_rank_search, zgl_class_bruteforce, MaxScatteredReport, ZglClass,
};

/// An F_q-subspace of F_{q^n}^r with a canonical basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    field: Arc<Field>,
    r: usize,
    rows: Vec<Vec<u8>>,
    basis: Vec<Vec<Elem>>,
}

impl PartialEq for Subspace {
    fn eq(&self, other: &Self) -> bool {
        self.field.spec() == other.field.spec() && self.r == other.r && self.rows == other.rows
    }
}

impl Eq for Subspace {}

/// F_q-coordinates of a vector of F_{q^n}^r.
pub fn flatten(field: &Field, v: &[Elem]) -> Vec<u8> {
    let n = field.n();
    let mut out = vec![0u8; v.len() * n];
    for (i, &x) in v.iter().enumerate() {
        field.coords_into(x, &mut out[i * n..(i + 1) * n]);
    }
    out
}

pub fn unflatten(field: &Field, c: &[u8]) -> Vec<Elem> {
    c.chunks(field.n()).map(|b| field.from_coords(b)).collect()
}

impl Subspace {
    /// F_q-span of `vecs` in F_{q^n}^r.
    pub fn span(field: &Arc<Field>, r: usize, vecs: &[Vec<Elem>]) -> Result<Subspace> {
        for v in vecs {
            if v.len() != r {
                return Err(Error::LengthMismatch { expected: r, got: v.len() });
            }
            for &x in v {
                field.elem(x.code())?;
            }
        }
        let rows = vecs.iter().map(|v| flatten(field, v)).collect();
        Ok(Subspace::from_rows(field, r, rows))
    }

    /// Subspace spanned by F_q-coordinate rows of length `r·n`.
    pub fn from_rows(field: &Arc<Field>, r: usize, mut rows: Vec<Vec<u8>>) -> Subspace {
        linalg::rref(field.small(), &mut rows);
        let basis = rows.iter().map(|c| unflatten(field, c)).collect();
        Subspace { field: field.clone(), r, rows, basis }
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    /// Dimension of the ambient space over F_{q^n}.
    pub fn r(&self) -> usize {
        self.r
    }

    /// Rank of the linear set: the F_q-dimension of the subspace.
    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn basis(&self) -> &[Vec<Elem>] {
        &self.basis
    }

    /// Reduced echelon F_q-coordinate rows.
    pub fn rows(&self) -> &[Vec<u8>] {
        &self.rows
    }

    pub(crate) fn echelon(&self) -> Echelon<u8> {
        let mut e = Echelon::new();
        for row in &self.rows {
            e.insert(self.field.small(), row);
        }
        e
    }

    pub fn contains(&self, v: &[Elem]) -> bool {
        v.len() == self.r && self.echelon().contains(self.field.small(), &flatten(&self.field, v))
    }

    /// Whether `other ⊆ self`.
    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        let e = self.echelon();
        other.rows.iter().all(|row| e.contains(self.field.small(), row))
    }

    /// `λU`.
    pub fn scale(&self, lambda: Elem) -> Subspace {
        let f = &self.field;
        let vecs: Vec<Vec<Elem>> = self.basis.iter().map(|v| v.iter().map(|&x| f.mul(lambda, x)).collect()).collect();
        Subspace::span(f, self.r, &vecs).expect("same shape")
    }

    /// Image under `v ↦ M·v^{p^k}` (coordinate-wise Frobenius, then an r × r matrix).
    pub fn map_semilinear(&self, m: &[Vec<Elem>], k: usize) -> Subspace {
        let vecs: Vec<Vec<Elem>> = self.basis.iter().map(|v| apply_semilinear(&self.field, m, k, v)).collect();
        Subspace::span(&self.field, self.r, &vecs).expect("same shape")
    }

    /// Dimension of the F_{q^n}-span of the subspace.
    pub fn fqn_rank(&self) -> usize {
        linalg::rank(&*self.field, &self.basis)
    }
}

pub(crate) fn apply_semilinear(f: &Field, m: &[Vec<Elem>], k: usize, v: &[Elem]) -> Vec<Elem> {
    let w: Vec<Elem> = v.iter().map(|&x| f.frob_p(x, k)).collect();
    m.iter().map(|row| row.iter().zip(&w).fold(Elem::ZERO, |acc, (&a, &x)| f.add(acc, f.mul(a, x)))).collect()
}

/// `U_f = {(x, f(x)) : x ∈ F_{q^n}}`.
pub fn subspace_from_map(field: &Arc<Field>, f: &LinPoly) -> Result<Subspace> {
    f.check(field)?;
    let vecs: Vec<Vec<Elem>> = field.basis().iter().map(|&b| vec![b, f.eval(field, b)]).collect();
    Subspace::span(field, 2, &vecs)
}

/// F_q-basis rows of the F_{q^n}-span of `gens`.
fn fqn_span_rows(field: &Field, gens: &[Vec<Elem>]) -> Vec<Vec<u8>> {
    let mut rows = Vec::with_capacity(gens.len() * field.n());
    for g in gens {
        for &b in field.basis() {
            let v: Vec<Elem> = g.iter().map(|&x| field.mul(b, x)).collect();
            rows.push(flatten(field, &v));
        }
    }
    linalg::rref(field.small(), &mut rows);
    rows
}

/// `dim_{F_q}(U ∩ W)` with `W` the F_{q^n}-span of `gens`.
pub fn subspace_weight(u: &Subspace, gens: &[Vec<Elem>]) -> Result<usize> {
    for g in gens {
        if g.len() != u.r {
            return Err(Error::LengthMismatch { expected: u.r, got: g.len() });
        }
    }
    let w = fqn_span_rows(&u.field, gens);
    let mut all = u.rows.clone();
    all.extend(w.iter().cloned());
    let sum = linalg::rank(u.field.small(), &all);
    Ok(u.dim() + w.len() - sum)
}

/// Weight of the point `⟨v⟩_{F_{q^n}}` in `L_U`.
pub fn point_weight(u: &Subspace, v: &[Elem]) -> Result<usize> {
    if v.iter().all(|x| x.is_zero()) {
        return Err(Error::Condition("point_weight of the zero vector".into()));
    }
    subspace_weight(u, &[v.to_vec()])
}

/// The representative of `⟨v⟩` with first nonzero coordinate 1; `None` for the zero vector.
pub fn normalize_point(field: &Field, v: &[Elem]) -> Option<Vec<Elem>> {
    let lead = v.iter().find(|x| !x.is_zero())?;
    let inv = field.inv(*lead);
    Some(v.iter().map(|&x| field.mul(inv, x)).collect())
}

/// Packs normalized points into integers for hashing.
pub(crate) struct PointKeys<'a> {
    field: &'a Field,
    order: u128,
}

impl<'a> PointKeys<'a> {
    pub(crate) fn new(field: &'a Field, r: usize) -> Result<PointKeys<'a>> {
        let bits = 32 - (field.order() - 1).leading_zeros();
        if bits as usize * r > 128 {
            return Err(Error::Unsupported(format!("points of F_{}^{r} do not fit a 128-bit key", field.order())));
        }
        Ok(PointKeys { field, order: field.order() as u128 })
    }

    /// Key of the point through a nonzero `v`.
    pub(crate) fn key(&self, v: &[Elem]) -> u128 {
        let f = self.field;
        let lead = v.iter().find(|x| !x.is_zero()).expect("nonzero vector");
        let inv = f.inv(*lead);
        v.iter().fold(0u128, |acc, &x| acc * self.order + f.mul(inv, x).code() as u128)
    }

    pub(crate) fn point(&self, mut key: u128, r: usize) -> Vec<Elem> {
        let mut v = vec![Elem::ZERO; r];
        for slot in v.iter_mut().rev() {
            *slot = Elem((key % self.order) as u32);
            key /= self.order;
        }
        v
    }
}

/// Calls `f` on one nonzero vector of every 1-dimensional F_q-subspace of the span of
/// `basis` (the combination whose first nonzero coefficient is 1). Stops early when `f`
/// returns false; returns whether the enumeration completed.
pub(crate) fn for_each_fq_point(field: &Field, basis: &[Vec<Elem>], mut f: impl FnMut(&[Elem]) -> bool) -> bool {
    let k = basis.len();
    let q = field.q() as usize;
    let scal: Vec<Elem> = (0..q).map(|l| field.from_local(l as u8)).collect();
    for lead in 0..k {
        let mut cur = basis[lead].clone();
        let rest = &basis[lead + 1..];
        let mut digits = vec![0usize; rest.len()];
        loop {
            if !f(&cur) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == rest.len() {
                    break;
                }
                let old = digits[i];
                digits[i] = (old + 1) % q;
                let delta = field.sub(scal[digits[i]], scal[old]);
                for (c, &b) in cur.iter_mut().zip(&rest[i]) {
                    *c = field.add(*c, field.mul(delta, b));
                }
                if digits[i] != 0 {
                    break;
                }
                i += 1;
            }
            if i == rest.len() {
                break;
            }
        }
    }
    true
}

fn fq_point_count(q: u32, k: usize) -> u128 {
    ((q as u128).pow(k as u32) - 1) / (q as u128 - 1)
}

fn check_budget(q: u32, k: usize, budget: u64) -> Result<()> {
    let needed = fq_point_count(q, k);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    Ok(())
}

/// The linear set `L_U` with point weights.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSetSummary {
    pub rank: usize,
    /// Number of points `|L_U|`.
    pub size: u128,
    /// Normalized representatives with weights, ascending by packed key.
    pub points: Vec<(Vec<Elem>, usize)>,
    /// Number of points of each weight.
    pub weight_spectrum: BTreeMap<usize, u128>,
    /// Largest `ℓ | n` such that U is F_{q^ℓ}-linear.
    pub max_field_of_linearity: usize,
}

impl LinearSetSummary {
    pub fn is_scattered(&self) -> bool {
        self.points.iter().all(|p| p.1 == 1)
    }
}

/// Enumerates `L_U`; needs `(q^k − 1)/(q − 1) ≤ budget`.
pub fn linear_set(u: &Subspace, budget: u64) -> Result<LinearSetSummary> {
    let f = &*u.field;
    let q = f.q();
    check_budget(q, u.dim(), budget)?;
    let keys = PointKeys::new(f, u.r)?;
    let mut counts: HashMap<u128, u128> = HashMap::new();
    for_each_fq_point(f, &u.basis, |v| {
        *counts.entry(keys.key(v)).or_default() += 1;
        true
    });
    let mut sorted: Vec<(u128, u128)> = counts.into_iter().collect();
    sorted.sort_unstable();
    let mut spectrum = BTreeMap::new();
    let points: Vec<(Vec<Elem>, usize)> = sorted
        .into_iter()
        .map(|(key, c)| {
            // a weight-w point carries (q^w − 1)/(q − 1) F_q-lines of U
            let total = c * (q as u128 - 1) + 1;
            let w = (0..).find(|&w| (q as u128).pow(w) == total).expect("weight is a power of q") as usize;
            *spectrum.entry(w).or_insert(0) += 1;
            (keys.point(key, u.r), w)
        })
        .collect();
    Ok(LinearSetSummary {
        rank: u.dim(),
        size: points.len() as u128,
        points,
        weight_spectrum: spectrum,
        max_field_of_linearity: max_field_of_linearity(u),
    })
}

/// Whether every point of `L_U` has weight 1; stops at the first collision.
pub fn is_scattered(u: &Subspace, budget: u64) -> Result<bool> {
    let f = &*u.field;
    check_budget(f.q(), u.dim(), budget)?;
    scattered_basis(f, u.r, &u.basis)
}

pub(crate) fn scattered_basis(f: &Field, r: usize, basis: &[Vec<Elem>]) -> Result<bool> {
    let keys = PointKeys::new(f, r)?;
    let mut seen = std::collections::HashSet::new();
    Ok(for_each_fq_point(f, basis, |v| seen.insert(keys.key(v))))
}

/// `max_P w(P)` over the points of `L_U` (0 for the zero subspace).
pub fn max_point_weight(u: &Subspace, budget: u64) -> Result<usize> {
    Ok(linear_set(u, budget)?.points.iter().map(|p| p.1).max().unwrap_or(0))
}

/// Largest divisor `ℓ` of n with `ζ_ℓ U ⊆ U`, `ζ_ℓ` a generator of F_{q^ℓ}^*.
pub fn max_field_of_linearity(u: &Subspace) -> usize {
    let f = &*u.field;
    let n = f.n();
    let e = u.echelon();
    let m = f.order() as u64 - 1;
    (1..=n)
        .rev()
        .filter(|l| n.is_multiple_of(*l))
        .find(|&l| {
            let ql = (f.q() as u64).pow(l as u32);
            let zeta = f.pow(f.primitive(), m / (ql - 1));
            u.basis.iter().all(|v| {
                let w: Vec<Elem> = v.iter().map(|&x| f.mul(zeta, x)).collect();
                e.contains(f.small(), &flatten(f, &w))
            })
        })
        .unwrap_or(1)
}

/// Outcome of an h-scatteredness check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HScatterReport {
    pub h: usize,
    /// `⟨L_U⟩ = PG(r − 1, q^n)`.
    pub spans: bool,
    /// Largest weight of an h-dimensional F_{q^n}-subspace.
    pub max_weight: usize,
    /// `k ≤ r`: the rank bound does not apply and a spanning U is a canonical subgeometry.
    pub subgeometry_case: bool,
    pub h_scattered: bool,
    /// Number of h-dimensional F_{q^n}-subspaces examined.
    pub checked: u128,
}

/// Checks every h-dimensional F_{q^n}-subspace of F_{q^n}^r; needs `q^n ≤ 255` and the
/// number of such subspaces within `budget`.
pub fn h_scattered_report(u: &Subspace, h: usize, budget: u64) -> Result<HScatterReport> {
    let f = &*u.field;
    let r = u.r;
    if h == 0 || h >= r {
        return Err(Error::Condition(format!("need 1 ≤ h ≤ r − 1 = {}, got h = {h}", r - 1)));
    }
    let order = f.order();
    if order > 255 {
        return Err(Error::Unsupported(format!("enumerating subspaces over F_{order}")));
    }
    let needed = linalg::gaussian_binomial(r as u32, h as u32, order as u128);
    if needed > budget as u128 {
        return Err(Error::BudgetExceeded { needed, budget });
    }
    let spans = u.fqn_rank() == r;
    let mut max_weight = 0;
    for shape in linalg::RrefShape::all(r, h) {
        shape.for_each(order, |m| {
            let gens: Vec<Vec<Elem>> = m.chunks(r).map(|row| row.iter().map(|&c| Elem(c as u32)).collect()).collect();
            let w = subspace_weight(u, &gens).expect("shapes match");
            max_weight = max_weight.max(w);
        });
    }
    Ok(HScatterReport {
        h,
        spans,
        max_weight,
        subgeometry_case: u.dim() <= r,
        h_scattered: spans && max_weight <= h,
        checked: needed,
    })
}

/// `L_U` spans the space and every (h − 1)-dimensional projective subspace has weight ≤ h.
pub fn is_h_scattered(u: &Subspace, h: usize, budget: u64) -> Result<bool> {
    Ok(h_scattered_report(u, h, budget)?.h_scattered)
}

/// A uniformly random k-dimensional F_q-subspace of F_{q^n}^r (rejection on rank).
pub fn random_subspace<R: Rng>(field: &Arc<Field>, r: usize, k: usize, rng: &mut R) -> Result<Subspace> {
    let total = r * field.n();
    if k > total {
        return Err(Error::Condition(format!("dimension {k} exceeds r·n = {total}")));
    }
    let q = field.q();
    loop {
        let rows: Vec<Vec<u8>> = (0..k).map(|_| (0..total).map(|_| rng.gen_range(0..q) as u8).collect()).collect();
        if linalg::rank(field.small(), &rows) == k {
            return Ok(Subspace::from_rows(field, r, rows));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fqn;

    #[test]
    fn weights_of_monomial_subspaces() {
        let f = fqn(2, 4).unwrap();
        let u1 = subspace_from_map(&f, &LinPoly::monomial(4, 1, Elem::ONE)).unwrap();
        let u2 = subspace_from_map(&f, &LinPoly::monomial(4, 2, Elem::ONE)).unwrap();
        let one = vec![Elem::ONE, Elem::ONE];
        assert_eq!(point_weight(&u1, &one).unwrap(), 1);
        assert_eq!(point_weight(&u2, &one).unwrap(), 2);
        assert_eq!(point_weight(&u1, &[Elem::ZERO, Elem::ONE]).unwrap(), 0);
        assert!(point_weight(&u1, &[Elem::ZERO, Elem::ZERO]).is_err());
        assert!(is_scattered(&u1, 1 << 20).unwrap());
        assert!(!is_scattered(&u2, 1 << 20).unwrap());
    }

    #[test]
    fn weight_partition_and_linearity() {
        let f = fqn(2, 4).unwrap();
        let u2 = subspace_from_map(&f, &LinPoly::monomial(4, 2, Elem::ONE)).unwrap();
        let ls = linear_set(&u2, 1 << 20).unwrap();
        let total: u128 = ls.points.iter().map(|p| (1u128 << p.1) - 1).sum();
        assert_eq!(total, 15);
        assert_eq!(ls.max_field_of_linearity, 2);
        let zero = subspace_from_map(&f, &LinPoly::zero(4)).unwrap();
        assert_eq!(linear_set(&zero, 1 << 20).unwrap().size, 1);
    }

    #[test]
    fn whole_space_weight_is_rank() {
        let f = fqn(3, 2).unwrap();
        let u = subspace_from_map(&f, &LinPoly::monomial(2, 1, Elem::ONE)).unwrap();
        let gens = vec![vec![Elem::ONE, Elem::ZERO], vec![Elem::ZERO, Elem::ONE]];
        assert_eq!(subspace_weight(&u, &gens).unwrap(), 2);
    }

    #[test]
    fn scaling_preserves_the_linear_set() {
        let f = fqn(2, 3).unwrap();
        let u = subspace_from_map(&f, &LinPoly::monomial(3, 1, Elem::ONE)).unwrap();
        let v = u.scale(f.primitive());
        assert_ne!(u, v);
        assert_eq!(linear_set(&u, 1 << 10).unwrap().points, linear_set(&v, 1 << 10).unwrap().points);
    }
}
