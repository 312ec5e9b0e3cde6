//! The correspondence between maximum scattered subspaces and MRD codes.
//!
//! Square case: `U_f = {(x, f(x))}` is maximum scattered iff `C_f = ⟨x, f(x)⟩_{F_{q^n}}` is
//! MRD. General case: for `U ≤ F_{q^n}^r` of dimension rn/2 and `G` with kernel U,
//! `C_{U,G} = {G∘τ_v : v ∈ F_{q^n}^r}` with `τ_v(λ) = λv`; the converse recovers U as the
//! maps of a τ-closed code vanishing at 1.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use crate::gf::{Elem, Field};
use crate::linalg::{self, Echelon, FqMat};
use crate::linpoly::LinPoly;
use crate::linset::families::PlaneSetting;
use crate::linset::{flatten, is_scattered, linear_set, max_point_weight, subspace_from_map, Subspace};
use crate::rmcode::{fingerprint, is_mrd, min_distance, Code, EnumOptions, Fingerprint, MatrixCode, SquareCode};
use crate::{Error, Result};

pub use crate::rmcode::{is_fqn_linear, Side};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `C_f = {a f(x) + b x : a, b ∈ F_{q^n}}`.
pub fn code_from_f(field: &Arc<Field>, f: &LinPoly) -> Result<SquareCode> {
    let c = SquareCode::fqn_span(field, &[LinPoly::identity(field.n()), f.clone()])?;
    if c.dim() != 2 * field.n() {
        return Err(Error::Condition(format!(
            "C_f has dimension {} instead of 2n = {}: f is a scalar multiple of x",
            c.dim(),
            2 * field.n()
        )));
    }
    Ok(c)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    SubspaceToCode,
    CodeToSubspace,
}

/// Observables of a subspace that do not depend on its basis.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SubspaceFingerprint {
    pub r: usize,
    pub n: usize,
    pub q: u32,
    pub dim: usize,
    pub points: u128,
    /// Number of points of each weight.
    pub weights: BTreeMap<usize, u128>,
}

pub fn subspace_fingerprint(u: &Subspace, budget: u64) -> Result<SubspaceFingerprint> {
    let ls = linear_set(u, budget)?;
    Ok(SubspaceFingerprint {
        r: u.r(),
        n: u.field().n(),
        q: u.field().q(),
        dim: u.dim(),
        points: ls.size,
        weights: ls.weight_spectrum,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct CorrespondenceReport {
    pub direction: Direction,
    pub subspace: SubspaceFingerprint,
    pub code: Fingerprint,
    /// U is scattered of dimension rn/2.
    pub scattered: bool,
    pub mrd: bool,
    /// The two verdicts coincide.
    pub agree: bool,
    /// Rebuilding the input from the output reproduced it exactly; `None` when not attempted.
    pub round_trip_equal: Option<bool>,
}

/// Decides `U_f` maximum scattered and `C_f` MRD independently and reports both.
pub fn verify_sheekey(field: &Arc<Field>, f: &LinPoly, opts: &EnumOptions) -> Result<CorrespondenceReport> {
    let code: Code = code_from_f(field, f)?.into();
    let u = subspace_from_map(field, f)?;
    let (scattered, code_side) = rayon::join(
        || is_scattered(&u, opts.budget),
        || -> Result<(bool, Fingerprint)> { Ok((is_mrd(&code, opts)?, fingerprint(&code, opts)?)) },
    );
    let scattered = scattered?;
    let (mrd, fp) = code_side?;
    Ok(CorrespondenceReport {
        direction: Direction::SubspaceToCode,
        subspace: subspace_fingerprint(&u, opts.budget)?,
        code: fp,
        scattered,
        mrd,
        agree: scattered == mrd,
        round_trip_equal: None,
    })
}

/// How to pick `G` with kernel U.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum GChoice {
    /// Project onto the non-pivot coordinates of U's echelon basis.
    #[default]
    Canonical,
    /// The same with coordinates taken in reverse order, so pivots sit at the right.
    Reversed,
}

/// The `(rn − k) × rn` matrix of a projection with kernel U.
pub fn projection(u: &Subspace, choice: GChoice) -> FqMat {
    let f = u.field();
    let sf = f.small();
    let total = u.r() * f.n();
    let idx = |c: usize| if choice == GChoice::Reversed { total - 1 - c } else { c };
    let mut rows: Vec<Vec<u8>> = u.rows().iter().map(|row| (0..total).map(|c| row[idx(c)]).collect()).collect();
    let pivots = linalg::rref(sf, &mut rows);
    let free: Vec<usize> = (0..total).filter(|c| !pivots.contains(c)).collect();
    let mut g = FqMat::zeros(free.len(), total);
    for c in 0..total {
        let mut w = vec![0u8; total];
        w[idx(c)] = 1;
        for (row, &p) in rows.iter().zip(&pivots) {
            let coef = w[p];
            if coef != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = sf.sub(*x, sf.mul(coef, y));
                }
            }
        }
        for (i, &fc) in free.iter().enumerate() {
            g.set(i, c, w[fc]);
        }
    }
    g
}

/// `C_{U,G}` for an explicit `G` (an `m × rn` matrix over F_q whose kernel contains U).
pub fn code_from_subspace_g(u: &Subspace, g: &FqMat) -> Result<MatrixCode> {
    let f = u.field();
    let sf = f.small();
    let (r, n) = (u.r(), f.n());
    if g.cols() != r * n {
        return Err(Error::Shape(format!("G has {} columns, expected rn = {}", g.cols(), r * n)));
    }
    if u.rows().iter().any(|row| g.mul_vec(sf, row).iter().any(|&x| x != 0)) {
        return Err(Error::Condition("G does not vanish on U".into()));
    }
    let mut mats = Vec::with_capacity(r * n);
    for i in 0..r {
        for &bc in f.basis() {
            let mut m = FqMat::zeros(g.rows(), n);
            for (j, &bj) in f.basis().iter().enumerate() {
                let mut v = vec![Elem::ZERO; r];
                v[i] = f.mul(bj, bc);
                for (row, x) in g.mul_vec(sf, &flatten(f, &v)).into_iter().enumerate() {
                    m.set(row, j, x);
                }
            }
            mats.push(m);
        }
    }
    MatrixCode::span(f, g.rows(), n, &mats)
}

/// `C_{U,G}` with `G` the projection selected by `choice`. Needs `dim U = rn/2` and every
/// point weight below n; `budget` bounds the enumeration of `L_U`.
pub fn code_from_subspace(u: &Subspace, choice: GChoice, budget: u64) -> Result<MatrixCode> {
    let f = u.field();
    let (r, n) = (u.r(), f.n());
    if (r * n) % 2 != 0 || u.dim() * 2 != r * n {
        return Err(Error::Condition(format!(
            "need rn even and dim U = rn/2, got r = {r}, n = {n}, dim U = {}",
            u.dim()
        )));
    }
    let i = max_point_weight(u, budget)?;
    if i >= n {
        return Err(Error::Condition(format!("U contains a whole point (i = {i} = n)")));
    }
    code_from_subspace_g(u, &projection(u, choice))
}

/// The subspace and evaluation map recovered from a τ-closed code.
#[derive(Clone, Debug)]
pub struct Converse {
    pub subspace: Subspace,
    /// `G′ = [c_1 | … | c_r]`, evaluation at 1 in the chosen F_{q^n}-coordinates.
    pub g: FqMat,
    /// The F_{q^n}-basis `c_1, …, c_r` of the code under right composition.
    pub fqn_basis: Vec<FqMat>,
}

/// Multiplication by `alpha` on F_{q^n} as an `n × n` matrix over the field's F_q-basis.
pub fn scalar_map(field: &Field, alpha: Elem) -> FqMat {
    LinPoly::monomial(field.n(), 0, alpha).to_matrix(field)
}

/// Recovers a maximum scattered U with `C_{U,G′} = C` from a code of `t × n` matrices with
/// `t ≥ n`, `dim C = 2t`, minimum distance n − 1, closed under `c ↦ c∘τ_α`.
pub fn subspace_from_code(c: &MatrixCode, opts: &EnumOptions) -> Result<Converse> {
    let f = c.field();
    let sf = f.small();
    let (t, n) = (c.rows(), c.cols());
    if f.n() != n {
        return Err(Error::Shape(format!("code has {n} columns but the field has degree {}", f.n())));
    }
    if t < n || c.dim() != 2 * t {
        return Err(Error::Condition(format!("need t ≥ n and dim C = 2t, got t = {t}, n = {n}, dim = {}", c.dim())));
    }
    if !is_fqn_linear(&Code::Matrix(c.clone()), Side::Right) {
        return Err(Error::Condition(
            "code is not closed under right composition with scalar maps; present it in τ-closed form".into(),
        ));
    }
    let d = min_distance(&Code::Matrix(c.clone()), opts)?;
    if d != n - 1 {
        return Err(Error::Condition(format!("need minimum distance n − 1 = {}, got {d}", n - 1)));
    }
    let taus: Vec<FqMat> = f.basis().iter().map(|&b| scalar_map(f, b)).collect();
    let mut ech = Echelon::new();
    let mut basis = Vec::new();
    for m in c.basis() {
        if ech.contains(sf, m.data()) {
            continue;
        }
        for tau in &taus {
            ech.insert(sf, m.mul(sf, tau).data());
        }
        basis.push(m.clone());
    }
    let r = basis.len();
    if r * n != c.dim() {
        return Err(Error::Condition("code is not a free F_{q^n}-module under right composition".into()));
    }
    let mut g = FqMat::zeros(t, r * n);
    for (j, m) in basis.iter().enumerate() {
        for row in 0..t {
            for col in 0..n {
                g.set(row, j * n + col, m.get(row, col));
            }
        }
    }
    let kernel = linalg::nullspace(sf, &g.to_rows(), r * n);
    let subspace = Subspace::from_rows(f, r, kernel);
    if subspace.dim() * 2 != r * n {
        return Err(Error::Condition(format!("evaluation at 1 has kernel of dimension {}", subspace.dim())));
    }
    Ok(Converse { subspace, g, fqn_basis: basis })
}

/// Subspace → code → subspace → code, with verdicts on both ends.
pub fn round_trip(u: &Subspace, choice: GChoice, opts: &EnumOptions) -> Result<CorrespondenceReport> {
    let code = code_from_subspace(u, choice, opts.budget)?;
    let as_code = Code::Matrix(code.clone());
    let mrd = is_mrd(&as_code, opts)?;
    let scattered = is_scattered(u, opts.budget)?;
    let round_trip_equal = if mrd {
        let conv = subspace_from_code(&code, opts)?;
        Some(code_from_subspace_g(&conv.subspace, &conv.g)? == code && is_scattered(&conv.subspace, opts.budget)?)
    } else {
        None
    };
    Ok(CorrespondenceReport {
        direction: Direction::SubspaceToCode,
        subspace: subspace_fingerprint(u, opts.budget)?,
        code: fingerprint(&as_code, opts)?,
        scattered,
        mrd,
        agree: scattered == mrd,
        round_trip_equal,
    })
}

/// The binomial example `U_f = {xω + a x^{q^i} : x ∈ F_{q^{rt}}}` in F_{q^{2rt}} over
/// F_{q^{2t}}, together with its code `{F_v}` written in explicit coordinates.
#[derive(Clone, Debug)]
pub struct WorkedExample {
    pub subspace: Subspace,
    /// Maps `F_v : F_{q^t}² → F_{q^{rt}}` as `rt × 2t` matrices; columns index
    /// `(c_1, 0), …, (c_t, 0), (0, c_1), …, (0, c_t)` for the F_q-basis `c_j` of F_{q^t},
    /// rows the F_q-coordinates of F_{q^{rt}}.
    pub code: MatrixCode,
    /// `a` as an element of F_{q^{rt}}.
    pub a: Elem,
    /// `ω² = ωA_0 + A_1` in the point field F_{q^{2t}}.
    pub a0: Elem,
    pub a1: Elem,
    /// `{F_v}` equals `C_{U_f,G}` for `G: xω + y ↦ f(x) − y` after the change of coordinates.
    pub matches_construction: bool,
    /// `μF_v = F_{μv}` for every `μ ∈ F_{q^r}`.
    pub fqr_linear: bool,
}

/// Builds the worked example for `f(x) = a x^{q^i}`. When `a` is `None`, the first element of
/// F_{q^{rt}} (ascending code) with `N_{q^{rt}/q^r}(a) ∉ F_q` is used.
pub fn worked_example_binomial(q: u32, t: usize, r: usize, i: usize, a: Option<Elem>) -> Result<WorkedExample> {
    let cond = |ok: bool, msg: String| if ok { Ok(()) } else { Err(Error::Condition(msg)) };
    cond(r % 2 == 1, format!("need r odd, got r = {r}"))?;
    cond(t >= 2 && gcd(t, r) == 1, format!("need t ≥ 2 and gcd(t, r) = 1, got t = {t}, r = {r}"))?;
    cond(gcd(i, 2 * t) == 1, format!("need gcd(i, 2t) = 1, got i = {i}, t = {t}"))?;
    cond(gcd(i, r * t) == r, format!("need gcd(i, rt) = r, got i = {i}"))?;
    let point = crate::gf::fqn(q, (2 * t) as u32)?;
    let set = PlaneSetting::new(&point, r)?;
    let m = set.mid.clone();
    let rt = r * t;
    let norm_ok = |a: Elem| !a.is_zero() && !m.in_subfield(m.norm(a, r).expect("r | rt"), 1).expect("1 | rt");
    let a = match a {
        Some(a) => {
            m.elem(a.code())?;
            cond(norm_ok(a), format!("need N(a) ∉ F_q, got a = {}", a.code()))?;
            a
        }
        None => m.elements().find(|&a| norm_ok(a)).ok_or_else(|| Error::Condition("no a with N(a) ∉ F_q".into()))?,
    };
    let f_mid = |x: Elem| m.mul(a, m.frob(x, i as i64));
    let subspace = set.subspace(f_mid)?;

    let e = set.over_point.ambient().clone();
    let omega_p = point.root();
    let a0 = point.trace(omega_p, t)?;
    let a1 = point.neg(point.norm(omega_p, t)?);
    let (emb_p, emb_m) = (&set.over_point, &set.over_mid);
    let (omega, a0e, a1e) = (set.omega, emb_p.embed(a0), emb_p.embed(a1));
    let ae = emb_m.embed(a);
    let fe = |z: Elem| e.mul(ae, e.frob(z, i as i64));
    // F_q-coordinates of an element of F_{q^{rt}} ⊂ E, as local codes of the point field
    let mid_coords = |z: Elem| -> Vec<u8> {
        let zm = emb_m.restrict(z).expect("value lies in F_{q^{rt}}");
        m.coords(zm)
            .into_iter()
            .map(|l| {
                let big = emb_m.embed(m.from_local(l));
                point.to_local(emb_p.restrict(big).expect("F_q ⊂ F_{q^{2t}}")).expect("F_q element")
            })
            .collect()
    };
    let ct: Vec<Elem> = e.subfield_fq_basis(t)?;
    // domain basis: (c_j, 0) ↦ λ = c_j ω, (0, c_j) ↦ λ = c_j
    let domain: Vec<(Elem, Elem)> =
        ct.iter().map(|&c| (c, Elem::ZERO)).chain(ct.iter().map(|&c| (Elem::ZERO, c))).collect();
    let f_v = |v: Elem, x: Elem, y: Elem| -> Elem {
        let conj = e.frob(v, rt as i64);
        let omc = e.frob(omega, rt as i64);
        let v0 = e.div(e.sub(v, conj), e.sub(omega, omc));
        let v1 = e.sub(v, e.mul(v0, omega));
        let arg = e.add(e.mul(x, e.add(v1, e.mul(v0, a0e))), e.mul(y, v0));
        e.sub(e.sub(fe(arg), e.mul(e.mul(x, v0), a1e)), e.mul(y, v1))
    };
    let matrix_of = |v: Elem| -> FqMat {
        let mut mat = FqMat::zeros(rt, 2 * t);
        for (col, &(x, y)) in domain.iter().enumerate() {
            for (row, c) in mid_coords(f_v(v, x, y)).into_iter().enumerate() {
                mat.set(row, col, c);
            }
        }
        mat
    };
    let e_basis: Vec<Elem> = e.basis().to_vec();
    let mats: Vec<FqMat> = e_basis.iter().map(|&v| matrix_of(v)).collect();
    let code = MatrixCode::span(&point, rt, 2 * t, &mats)?;

    // G : xω + y ↦ f(x) − y, as an rt × rn matrix over the point-field coordinates
    let total = r * point.n();
    let mut g = FqMat::zeros(rt, total);
    for col in 0..total {
        let mut unit = vec![0u8; total];
        unit[col] = 1;
        let w = emb_p.from_coordinates(&crate::linset::unflatten(&point, &unit));
        let conj = e.frob(w, rt as i64);
        let x = e.div(e.sub(w, conj), e.sub(omega, e.frob(omega, rt as i64)));
        let y = e.sub(w, e.mul(x, omega));
        for (row, c) in mid_coords(e.sub(fe(x), y)).into_iter().enumerate() {
            g.set(row, col, c);
        }
    }
    let construction = code_from_subspace_g(&subspace, &g)?;
    // change of domain basis: point-basis coordinates of each λ in `domain`
    let sf = point.small();
    let mut s = FqMat::zeros(2 * t, 2 * t);
    for (col, &(x, y)) in domain.iter().enumerate() {
        let lambda = e.add(e.mul(x, omega), y);
        let lp = emb_p.restrict(lambda).expect("λ ∈ F_{q^{2t}}");
        for (row, c) in point.coords(lp).into_iter().enumerate() {
            s.set(row, col, c);
        }
    }
    let moved: Vec<FqMat> = construction.basis().iter().map(|b| b.mul(sf, &s)).collect();
    let matches_construction = MatrixCode::span(&point, rt, 2 * t, &moved)? == code;

    let fqr_linear = e.subfield_elements(r)?.into_iter().all(|mu| {
        e_basis.iter().all(|&v| domain.iter().all(|&(x, y)| e.mul(mu, f_v(v, x, y)) == f_v(e.mul(mu, v), x, y)))
    });
    Ok(WorkedExample { subspace, code, a, a0, a1, matches_construction, fqr_linear })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fqn;

    #[test]
    fn cf_of_xq_is_gabidulin() {
        let f = fqn(2, 4).unwrap();
        let c = code_from_f(&f, &LinPoly::monomial(4, 1, Elem::ONE)).unwrap();
        assert_eq!(c, crate::rmcode::family_gabidulin(&f, 2, 1).unwrap());
        assert!(code_from_f(&f, &LinPoly::identity(4)).is_err());
    }

    #[test]
    fn projections_have_kernel_u() {
        let f = fqn(2, 3).unwrap();
        let u = subspace_from_map(&f, &LinPoly::monomial(3, 1, Elem::ONE)).unwrap();
        for choice in [GChoice::Canonical, GChoice::Reversed] {
            let g = projection(&u, choice);
            assert_eq!((g.rows(), g.cols()), (3, 6));
            assert_eq!(g.rank(f.small()), 3);
            for row in u.rows() {
                assert!(g.mul_vec(f.small(), row).iter().all(|&x| x == 0));
            }
        }
        assert_ne!(projection(&u, GChoice::Canonical), projection(&u, GChoice::Reversed));
    }

    #[test]
    fn square_round_trip() {
        let f = fqn(2, 3).unwrap();
        let u = subspace_from_map(&f, &LinPoly::monomial(3, 1, Elem::ONE)).unwrap();
        let rep = round_trip(&u, GChoice::Canonical, &EnumOptions::default()).unwrap();
        assert!(rep.scattered && rep.mrd && rep.agree);
        assert_eq!(rep.round_trip_equal, Some(true));
    }

    #[test]
    fn worked_example_rejects_bad_i() {
        assert!(worked_example_binomial(2, 2, 3, 2, None).is_err());
    }
}
