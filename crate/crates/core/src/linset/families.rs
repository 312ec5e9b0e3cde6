//! Known maximum scattered subspaces.
//!
//! `U1`–`U5` live in F_{q^n}^2. `Lavrauw` is `{(x_1,…,x_{r/2},x_1^q,…,x_{r/2}^q)}` for even r,
//! `Baer` is F_q^r inside F_{q^2}^r. The `Bgmp*` and `Csmpz` families live in
//! F_{q^{2rt}} regarded as an r-dimensional space over the given field F_{q^{2t}}.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{is_scattered, Subspace};
use crate::gf::{fqn, Elem, Field, Tower};
use crate::linpoly::LinPoly;
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ScatteredFamily {
    U1,
    U2,
    U3,
    U4,
    U5,
    Lavrauw,
    Baer,
    Bgmp1,
    Bgmp2,
    Bgmp3,
    Csmpz,
}

impl ScatteredFamily {
    pub const ALL: [ScatteredFamily; 11] = [
        ScatteredFamily::U1,
        ScatteredFamily::U2,
        ScatteredFamily::U3,
        ScatteredFamily::U4,
        ScatteredFamily::U5,
        ScatteredFamily::Lavrauw,
        ScatteredFamily::Baer,
        ScatteredFamily::Bgmp1,
        ScatteredFamily::Bgmp2,
        ScatteredFamily::Bgmp3,
        ScatteredFamily::Csmpz,
    ];

    fn name(self) -> &'static str {
        use ScatteredFamily::*;
        match self {
            U1 => "U1",
            U2 => "U2",
            U3 => "U3",
            U4 => "U4",
            U5 => "U5",
            Lavrauw => "lavrauw",
            Baer => "baer",
            Bgmp1 => "bgmp1",
            Bgmp2 => "bgmp2",
            Bgmp3 => "bgmp3",
            Csmpz => "csmpz",
        }
    }
}

impl fmt::Display for ScatteredFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ScatteredFamily {
    type Err = Error;

    fn from_str(s: &str) -> Result<ScatteredFamily> {
        ScatteredFamily::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Parse(format!("unknown scattered family {s:?}")))
    }
}

/// Free parameters. Unset values get defaults (`s = 1`, `r = 3` for the plane families) or
/// are found by scanning field elements in ascending code order for the first one meeting
/// the family's stated conditions. `a` and `b` are codes in F_{q^{rt}} (built-in modulus).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyParams {
    pub s: Option<usize>,
    pub delta: Option<Elem>,
    pub h: Option<Elem>,
    pub r: Option<usize>,
    pub i: Option<usize>,
    pub a: Option<Elem>,
    pub b: Option<Elem>,
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn cond(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Condition(msg()))
    }
}

fn pick(f: &Field, given: Option<Elem>, what: &str, ok: impl Fn(Elem) -> bool) -> Result<Elem> {
    match given {
        Some(x) => {
            f.elem(x.code())?;
            cond(ok(x), || format!("{what} = {} violates the family conditions", x.code()))?;
            Ok(x)
        }
        None => f
            .elements()
            .find(|&x| ok(x))
            .ok_or_else(|| Error::Condition(format!("no {what} in F_{} meets the family conditions", f.order()))),
    }
}

fn graph(field: &Arc<Field>, terms: &[(usize, Elem)]) -> Result<Subspace> {
    let n = field.n();
    let f = terms.iter().fold(LinPoly::zero(n), |acc, &(i, a)| acc.add(field, &LinPoly::monomial(n, i % n, a)));
    super::subspace_from_map(field, &f)
}

/// The subspace `name` over `field`, with the family's conditions checked.
pub fn scattered_family(field: &Arc<Field>, name: ScatteredFamily, p: &FamilyParams) -> Result<Subspace> {
    use ScatteredFamily::*;
    let f = &**field;
    let n = f.n();
    let q = f.q();
    let odd = f.p() != 2;
    let one = Elem::ONE;
    let minus_one = f.constant(-1);
    let s = p.s.unwrap_or(1);
    match name {
        U1 => {
            cond(s >= 1 && s < n && gcd(s, n) == 1, || {
                format!("U1 needs 1 ≤ s ≤ n − 1 and gcd(s, n) = 1, got s = {s}")
            })?;
            graph(field, &[(s, one)])
        }
        U2 => {
            cond(n >= 4 && q != 2 && gcd(s, n) == 1, || "U2 needs n ≥ 4, q ≠ 2, gcd(s, n) = 1".to_string())?;
            let delta = pick(f, p.delta, "δ", |d| {
                let nm = f.norm(d, 1).expect("n divides n");
                !nm.is_zero() && nm != one
            })?;
            graph(field, &[(s, delta), (n - s, one)])
        }
        U3 => {
            cond((n == 6 || n == 8) && gcd(s, n / 2) == 1, || "U3 needs n ∈ {6, 8} and gcd(s, n/2) = 1".into())?;
            let delta = pick(f, p.delta, "δ", |d| {
                let nm = f.norm(d, n / 2).expect("n/2 divides n");
                !nm.is_zero() && nm != one
            })?;
            graph(field, &[(s, delta), (s + n / 2, one)])
        }
        U4 => {
            cond(n == 6 && odd, || "U4 needs n = 6 and q odd".into())?;
            let ok = |d: Elem| f.add(f.mul(d, d), d) == one;
            let delta = match p.delta {
                Some(d) => pick(f, Some(d), "δ", ok)?,
                None => f
                    .subfield_elements(1)?
                    .into_iter()
                    .find(|&d| ok(d))
                    .ok_or_else(|| Error::Condition(format!("δ² + δ = 1 has no solution over F_{q}")))?,
            };
            graph(field, &[(1, one), (3, one), (5, delta)])
        }
        U5 => {
            cond(n == 6 && odd, || "U5 needs n = 6 and q odd".into())?;
            let h = pick(f, p.h, "h", |h| f.mul(f.frob(h, 3), h) == minus_one)?;
            let hq1 = f.div(f.frob(h, 1), h);
            let hq2 = f.div(f.frob(h, 2), h);
            graph(field, &[(1, hq1), (2, f.neg(hq2)), (4, one), (5, one)])
        }
        Lavrauw => {
            let r = p.r.unwrap_or(2);
            cond(r >= 2 && r.is_multiple_of(2), || format!("lavrauw needs r even, got r = {r}"))?;
            let half = r / 2;
            let mut vecs = Vec::with_capacity(half * n);
            for j in 0..half {
                for &b in f.basis() {
                    let mut v = vec![Elem::ZERO; r];
                    v[j] = b;
                    v[j + half] = f.frob(b, 1);
                    vecs.push(v);
                }
            }
            Subspace::span(field, r, &vecs)
        }
        Baer => {
            let r = p.r.unwrap_or(3);
            cond(n == 2 && r >= 1, || format!("baer needs n = 2, got n = {n}"))?;
            let vecs: Vec<Vec<Elem>> =
                (0..r).map(|j| (0..r).map(|c| if c == j { one } else { Elem::ZERO }).collect()).collect();
            Subspace::span(field, r, &vecs)
        }
        Bgmp1 | Bgmp2 | Bgmp3 | Csmpz => plane_family(field, name, p),
    }
}

/// F_{q^{2rt}} as an r-space over `point = F_{q^{2t}}`, with `F_{q^{rt}}` inside it.
pub(crate) struct PlaneSetting {
    pub point: Arc<Field>,
    pub mid: Arc<Field>,
    pub over_point: Tower,
    pub over_mid: Tower,
    /// The root of the point field's modulus, `ω ∉ F_{q^t}`, embedded in the ambient field.
    pub omega: Elem,
    pub t: usize,
    pub r: usize,
}

impl PlaneSetting {
    pub(crate) fn new(point: &Arc<Field>, r: usize) -> Result<PlaneSetting> {
        let n = point.n();
        cond(n.is_multiple_of(2) && n >= 4, || format!("need n = 2t with t ≥ 2, got n = {n}"))?;
        let t = n / 2;
        let q = point.q();
        let ambient = fqn(q, (n * r) as u32)?;
        let mid = fqn(q, (t * r) as u32)?;
        let over_point = Tower::new(ambient.clone(), point.clone())?;
        let over_mid = Tower::new(ambient, mid.clone())?;
        let omega = over_point.embed(point.root());
        Ok(PlaneSetting { point: point.clone(), mid, over_point, over_mid, omega, t, r })
    }

    /// `{g(x) + xω : x ∈ F_{q^{rt}}}` as a subspace of F_{q^{2t}}^r.
    pub(crate) fn subspace(&self, g: impl Fn(Elem) -> Elem) -> Result<Subspace> {
        let amb = self.over_point.ambient();
        let vecs: Vec<Vec<Elem>> = self
            .mid
            .basis()
            .iter()
            .map(|&x| {
                let v = amb.add(self.over_mid.embed(g(x)), amb.mul(self.over_mid.embed(x), self.omega));
                self.over_point.coordinates(v)
            })
            .collect();
        Subspace::span(&self.point, self.r, &vecs)
    }
}

fn plane_family(field: &Arc<Field>, name: ScatteredFamily, p: &FamilyParams) -> Result<Subspace> {
    use ScatteredFamily::*;
    let r = p.r.unwrap_or(3);
    cond(r >= 3 && r % 2 == 1, || format!("{name} needs r odd and ≥ 3, got r = {r}"))?;
    let set = PlaneSetting::new(field, r)?;
    let (m, t, q) = (&*set.mid.clone(), set.t, field.q());
    let rt = r * t;
    match name {
        Bgmp1 => {
            let i = p.i.unwrap_or_else(|| (1..rt).find(|&i| gcd(i, 2 * t) == 1 && gcd(i, rt) == r).unwrap_or(0));
            cond(gcd(t, r) == 1, || format!("bgmp1 needs gcd(t, r) = 1, got t = {t}, r = {r}"))?;
            cond(i >= 1 && i < rt && gcd(i, 2 * t) == 1 && gcd(i, rt) == r, || {
                format!("bgmp1 needs gcd(i, 2t) = 1 and gcd(i, rt) = r, got i = {i}")
            })?;
            let a = pick(m, p.a, "a", |a| {
                !a.is_zero() && !m.in_subfield(m.norm(a, r).expect("r divides rt"), 1).expect("1 divides rt")
            })?;
            set.subspace(|x| m.mul(a, m.frob(x, i as i64)))
        }
        Bgmp2 => {
            let i = p.i.unwrap_or_else(|| (1..rt).find(|&i| gcd(i, 2 * t) == 1 && gcd(i, rt) == 1).unwrap_or(0));
            cond((q as usize) % r == 1, || format!("bgmp2 needs q ≡ 1 mod r, got q = {q}, r = {r}"))?;
            cond(i >= 1 && i < rt && gcd(i, 2 * t) == 1 && gcd(i, rt) == 1, || {
                format!("bgmp2 needs gcd(i, 2t) = gcd(i, rt) = 1, got i = {i}")
            })?;
            let e = (q as u64 - 1) / r as u64;
            let a = pick(m, p.a, "a", |a| !a.is_zero() && m.pow(m.norm(a, 1).expect("norm"), e) != Elem::ONE)?;
            set.subspace(|x| m.mul(a, m.frob(x, i as i64)))
        }
        Bgmp3 => {
            cond(q == 2 && r == 3, || format!("bgmp3 needs q = 2 and r = 3, got q = {q}, r = {r}"))?;
            let e = 2 * t + 1;
            let b = pick(m, p.b, "b", |b| {
                if b.is_zero() || m.norm(b, t).expect("t divides 3t") == Elem::ONE {
                    return false;
                }
                // x + b x^{2^{2t+1} − 1} ∉ F_{2^t} for every nonzero x
                m.elements().skip(1).all(|x| {
                    let y = m.add(x, m.div(m.mul(b, m.frob(x, e as i64)), x));
                    !m.in_subfield(y, t).expect("t divides 3t")
                })
            })?;
            set.subspace(|x| m.add(m.frob(x, 1), m.mul(b, m.frob(x, e as i64))))
        }
        Csmpz => {
            cond(r == 3, || format!("csmpz needs r = 3, got r = {r}"))?;
            csmpz_search(&set, p)
        }
        _ => unreachable!("plane families only"),
    }
}

/// First `(i, a, b)` in lexicographic order (i ascending with gcd(i, 2t) = 1, then a, b
/// over nonzero codes) whose subspace `{a x^{q^i} + b x^{q^{2t+i}} + ωx}` is scattered.
fn csmpz_search(set: &PlaneSetting, p: &FamilyParams) -> Result<Subspace> {
    let m = &*set.mid;
    let t = set.t;
    let rt = 3 * t;
    let is: Vec<usize> = match p.i {
        Some(i) => vec![i],
        None => (1..rt).filter(|&i| gcd(i, 2 * t) == 1).collect(),
    };
    let all: Vec<Elem> = m.elements().skip(1).collect();
    let a_pool = p.a.map(|a| vec![a]).unwrap_or_else(|| all.clone());
    let b_pool = p.b.map(|b| vec![b]).unwrap_or(all);
    for &i in &is {
        cond(gcd(i, 2 * t) == 1 && i >= 1 && i < rt, || format!("csmpz needs gcd(i, 2t) = 1, got i = {i}"))?;
        for &a in &a_pool {
            for &b in &b_pool {
                let u =
                    set.subspace(|x| m.add(m.mul(a, m.frob(x, i as i64)), m.mul(b, m.frob(x, (2 * t + i) as i64))))?;
                if u.dim() == rt && is_scattered(&u, u64::MAX)? {
                    log::info!("csmpz witness: i = {i}, a = {}, b = {}", a.code(), b.code());
                    return Ok(u);
                }
            }
        }
    }
    Err(Error::Condition("no csmpz witness within the searched (i, a, b) range".into()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linset::{is_scattered, linear_set};

    #[test]
    fn u1_and_lavrauw_are_scattered() {
        let f = fqn(2, 5).unwrap();
        let u = scattered_family(&f, ScatteredFamily::U1, &FamilyParams::default()).unwrap();
        assert_eq!(u.dim(), 5);
        assert!(is_scattered(&u, 1 << 20).unwrap());
        let f3 = fqn(2, 3).unwrap();
        let p = FamilyParams { r: Some(4), ..Default::default() };
        let l = scattered_family(&f3, ScatteredFamily::Lavrauw, &p).unwrap();
        assert_eq!((l.r(), l.dim()), (4, 6));
        assert!(is_scattered(&l, 1 << 20).unwrap());
    }

    #[test]
    fn u1_rejects_non_coprime_s() {
        let f = fqn(2, 4).unwrap();
        let p = FamilyParams { s: Some(2), ..Default::default() };
        assert!(scattered_family(&f, ScatteredFamily::U1, &p).is_err());
    }

    #[test]
    fn baer_subgeometry() {
        let f = fqn(2, 2).unwrap();
        let u = scattered_family(&f, ScatteredFamily::Baer, &FamilyParams::default()).unwrap();
        assert_eq!(linear_set(&u, 1 << 10).unwrap().size, 7);
        assert!(is_scattered(&u, 1 << 10).unwrap());
    }

    #[test]
    fn bgmp1_small_case_is_scattered() {
        let f = fqn(2, 4).unwrap();
        let p = FamilyParams { i: Some(3), ..Default::default() };
        let u = scattered_family(&f, ScatteredFamily::Bgmp1, &p).unwrap();
        assert_eq!((u.r(), u.dim()), (3, 6));
        assert!(is_scattered(&u, 1 << 20).unwrap());
    }

    #[test]
    fn family_names_parse() {
        for fam in ScatteredFamily::ALL {
            assert_eq!(fam.to_string().parse::<ScatteredFamily>().unwrap(), fam);
        }
    }
}
