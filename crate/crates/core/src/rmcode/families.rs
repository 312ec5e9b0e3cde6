//! Known constructions of square MRD codes as spans of q-polynomials.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{is_mrd, Code, EnumOptions, SquareCode};
use crate::gf::{Elem, Field};
use crate::linpoly::LinPoly;
use crate::{Error, Result};

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn mono(f: &Field, i: i64, a: Elem) -> LinPoly {
    let n = f.n();
    LinPoly::monomial(n, i.rem_euclid(n as i64) as usize, a)
}

/// Sum of monomials `Σ a_i x^{q^{e_i}}`.
fn poly(f: &Field, terms: &[(i64, Elem)]) -> LinPoly {
    terms.iter().fold(LinPoly::zero(f.n()), |acc, &(i, a)| acc.add(f, &mono(f, i, a)))
}

fn check_k(f: &Field, k: usize) -> Result<()> {
    if k == 0 || k >= f.n() {
        return Err(Error::Condition(format!("need 1 ≤ k ≤ n − 1 = {}, got k = {k}", f.n() - 1)));
    }
    Ok(())
}

fn require_coprime(f: &Field, s: usize) -> Result<()> {
    if gcd(s, f.n()) != 1 {
        return Err(Error::Condition(format!("need gcd(s, n) = 1, got gcd({s}, {}) ≠ 1", f.n())));
    }
    Ok(())
}

fn sign(f: &Field, e: usize) -> Elem {
    if e.is_multiple_of(2) {
        Elem::ONE
    } else {
        f.constant(-1)
    }
}

/// `G_{k,s} = ⟨x, x^{q^s}, …, x^{q^{s(k−1)}}⟩` over F_{q^n}. A warning is logged when
/// `gcd(s, n) ≠ 1`, since the code is then not MRD in general.
pub fn family_gabidulin(f: &Arc<Field>, k: usize, s: usize) -> Result<SquareCode> {
    check_k(f, k)?;
    if gcd(s, f.n()) != 1 {
        log::warn!("gcd(s = {s}, n = {}) ≠ 1: G_{{k,s}} is not MRD in general", f.n());
    }
    let gens: Vec<LinPoly> = (0..k).map(|i| mono(f, (s * i) as i64, Elem::ONE)).collect();
    SquareCode::fqn_span(f, &gens)
}

/// `H_{k,s}(η, h)`: `a_0 x + … + a_{k−1} x^{q^{s(k−1)}} + η a_0^{q^{sh}} x^{q^{sk}}`.
pub fn family_twisted(f: &Arc<Field>, k: usize, s: usize, eta: Elem, h: usize) -> Result<SquareCode> {
    check_k(f, k)?;
    require_coprime(f, s)?;
    let nrm = f.norm(eta, 1)?;
    if nrm == sign(f, f.n() * k) {
        return Err(Error::Condition(format!("norm condition N(η) ≠ (−1)^(nk) violated: N(η) = {}", nrm.code())));
    }
    let (s, k, h) = (s as i64, k as i64, h as i64);
    let mut gens = Vec::with_capacity(f.n() * k as usize);
    for &b in f.basis() {
        gens.push(poly(f, &[(0, b), (s * k, f.mul(eta, f.frob(b, s * h)))]));
        for i in 1..k {
            gens.push(mono(f, s * i, b));
        }
    }
    SquareCode::span(f, &gens)
}

/// `A_{k,s,q0}(η, h)`: `a_0 x + … + a_{k−1} x^{q^{s(k−1)}} + η a_0^{q0^h} x^{q^{sk}}`, an
/// F_{q0}-linear code stored with scalar degree `log_p q0`.
pub fn family_additive_twisted(f: &Arc<Field>, k: usize, s: usize, q0: u32, eta: Elem, h: usize) -> Result<SquareCode> {
    check_k(f, k)?;
    require_coprime(f, s)?;
    let p = f.p();
    let e0 = (1..=f.h()).find(|&e| p.pow(e as u32) == q0).filter(|e| f.h().is_multiple_of(*e));
    let e0 = e0.ok_or_else(|| Error::Condition(format!("q0 = {q0} is not a subfield order of F_q, q = {}", f.q())))?;
    let u = f.h() / e0;
    let ord = f.order() as u64;
    let nrm = f.pow(eta, (ord - 1) / (q0 as u64 - 1));
    if nrm == sign(f, f.n() * k * u) {
        return Err(Error::Condition(format!(
            "norm condition N_(q^n/q0)(η) ≠ (−1)^(nku) violated: N(η) = {}",
            nrm.code()
        )));
    }
    let rel = f.rel_basis(e0)?;
    let (s, k) = (s as i64, k as i64);
    let mut gens = Vec::with_capacity(rel.len() * k as usize);
    for &b in rel.elems() {
        gens.push(poly(f, &[(0, b), (s * k, f.mul(eta, f.frob_p(b, e0 * h)))]));
        for i in 1..k {
            gens.push(mono(f, s * i, b));
        }
    }
    SquareCode::span_over(f, e0, &gens)
}

/// `D_{k,s}(γ)`: `a x + c_1 x^{q^s} + … + c_{k−1} x^{q^{s(k−1)}} + γ b x^{q^{sk}}` with
/// `a, b ∈ F_{q^{n/2}}`.
pub fn family_trombetti_zhou(f: &Arc<Field>, k: usize, s: usize, gamma: Elem) -> Result<SquareCode> {
    check_k(f, k)?;
    if !f.n().is_multiple_of(2) {
        return Err(Error::Condition(format!("need n even, got n = {}", f.n())));
    }
    if f.p() == 2 {
        return Err(Error::Condition("need q odd for the non-square norm condition".into()));
    }
    require_coprime(f, s)?;
    let nrm = f.norm(gamma, 1)?;
    let euler = f.pow(nrm, (f.q() as u64 - 1) / 2);
    if nrm.is_zero() || euler == Elem::ONE {
        return Err(Error::Condition(format!("need N(γ) a non-square in F_q, got N(γ) = {}", nrm.code())));
    }
    let half = f.subfield_fq_basis(f.n() / 2)?;
    let (s, k) = (s as i64, k as i64);
    let mut gens = Vec::new();
    for &a in &half {
        gens.push(mono(f, 0, a));
        gens.push(mono(f, s * k, f.mul(gamma, a)));
    }
    for &c in f.basis() {
        for i in 1..k {
            gens.push(mono(f, s * i, c));
        }
    }
    SquareCode::span(f, &gens)
}

/// The sporadic constructions for `n ∈ {6, 7, 8}` and their Delsarte-dual presentations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Sporadic {
    C1,
    C2,
    C3,
    C4,
    C4Prime,
    C5,
    C6,
    D1,
    D2,
    D3,
    D4,
    D4Prime,
    D5,
    D6,
}

impl Sporadic {
    pub const ALL: [Sporadic; 14] = [
        Sporadic::C1,
        Sporadic::C2,
        Sporadic::C3,
        Sporadic::C4,
        Sporadic::C4Prime,
        Sporadic::C5,
        Sporadic::C6,
        Sporadic::D1,
        Sporadic::D2,
        Sporadic::D3,
        Sporadic::D4,
        Sporadic::D4Prime,
        Sporadic::D5,
        Sporadic::D6,
    ];

    /// Required extension degree n.
    pub fn degree(self) -> usize {
        use Sporadic::*;
        match self {
            C1 | C3 | C4 | C4Prime | D1 | D3 | D4 | D4Prime => 6,
            C5 | D5 => 7,
            C2 | C6 | D2 | D6 => 8,
        }
    }

    /// The primal member of the pair this presentation belongs to.
    pub fn primal(self) -> Sporadic {
        use Sporadic::*;
        match self {
            D1 => C1,
            D2 => C2,
            D3 => C3,
            D4 => C4,
            D4Prime => C4Prime,
            D5 => C5,
            D6 => C6,
            c => c,
        }
    }

    /// Expected minimum distance when the construction is MRD.
    pub fn expected_distance(self) -> usize {
        use Sporadic::*;
        match self {
            C1 | C3 | C4 | C4Prime | C5 => 5,
            C2 => 7,
            C6 => 6,
            D1 | D2 | D3 | D4 | D4Prime => 3,
            D5 | D6 => 4,
        }
    }

    fn name(self) -> &'static str {
        use Sporadic::*;
        match self {
            C1 => "C1",
            C2 => "C2",
            C3 => "C3",
            C4 => "C4",
            C4Prime => "C4prime",
            C5 => "C5",
            C6 => "C6",
            D1 => "D1",
            D2 => "D2",
            D3 => "D3",
            D4 => "D4",
            D4Prime => "D4prime",
            D5 => "D5",
            D6 => "D6",
        }
    }
}

impl fmt::Display for Sporadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Sporadic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Sporadic> {
        let t = s.trim().replace('\'', "prime");
        Sporadic::ALL
            .into_iter()
            .find(|c| c.name().eq_ignore_ascii_case(&t))
            .ok_or_else(|| Error::Parse(format!("unknown sporadic family {s:?}")))
    }
}

/// Free parameters of a sporadic construction. Missing values are solved for where the
/// defining equation determines them (`δ² = −1`, `δ² + δ = 1` over F_q); `s` defaults to 1.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SporadicParams {
    pub delta: Option<Elem>,
    pub h: Option<Elem>,
    pub s: Option<usize>,
}

/// Resolves and validates parameters; returns `(δ, h, s)` with unused entries zero.
fn resolve(f: &Field, name: Sporadic, params: &SporadicParams) -> Result<(Elem, Elem, usize)> {
    use Sporadic::*;
    let n = f.n();
    if n != name.degree() {
        return Err(Error::Condition(format!("{name} needs n = {}, got n = {n}", name.degree())));
    }
    let q = f.q();
    let odd = f.p() != 2;
    let minus_one = f.constant(-1);
    let s = params.s.unwrap_or(1);
    let mut delta = Elem::ZERO;
    let mut h = Elem::ZERO;
    match name.primal() {
        C1 => {
            if q <= 4 {
                return Err(Error::Condition(format!("{name} needs q > 4, got q = {q}")));
            }
            delta = params.delta.ok_or_else(|| Error::Condition(format!("{name} needs δ ∈ F_(q^2)")))?;
            if !f.in_subfield(delta, 2)? {
                return Err(Error::Condition(format!("{name} needs δ ∈ F_(q^2)")));
            }
        }
        C2 => {
            if !odd {
                return Err(Error::Condition(format!("{name} needs q odd")));
            }
            let ok = |d: Elem| f.mul(d, d) == minus_one;
            delta = match params.delta {
                Some(d) => d,
                None => f
                    .subfield_elements(2)?
                    .into_iter()
                    .find(|&d| ok(d))
                    .ok_or_else(|| Error::Condition("δ² = −1 has no solution".into()))?,
            };
            if !ok(delta) {
                return Err(Error::Condition(format!("{name} needs δ² = −1")));
            }
        }
        C3 => {
            if !odd {
                return Err(Error::Condition(format!("{name} needs q odd")));
            }
            let ok = |d: Elem| f.add(f.mul(d, d), d) == Elem::ONE;
            delta = match params.delta {
                Some(d) => d,
                None => f
                    .subfield_elements(1)?
                    .into_iter()
                    .find(|&d| ok(d))
                    .ok_or_else(|| Error::Condition(format!("δ² + δ = 1 has no solution over F_{q}")))?,
            };
            if !ok(delta) {
                return Err(Error::Condition(format!("{name} needs δ² + δ = 1")));
            }
        }
        C4 => {
            if q % 4 != 1 || q > 29 {
                return Err(Error::Condition(format!("{name} needs q ≡ 1 mod 4 and q ≤ 29, got q = {q}")));
            }
        }
        C4Prime => {
            if !odd {
                return Err(Error::Condition(format!("{name} needs q odd")));
            }
            h = params.h.ok_or_else(|| Error::Condition(format!("{name} needs h with h^(q³+1) = −1")))?;
            if f.mul(f.frob(h, 3), h) != minus_one {
                return Err(Error::Condition(format!("{name} needs h^(q³+1) = −1")));
            }
        }
        C5 => {
            if !odd || gcd(s, 7) != 1 {
                return Err(Error::Condition(format!("{name} needs q odd and gcd(s, 7) = 1")));
            }
        }
        C6 => {
            if q % 3 != 1 || gcd(s, 8) != 1 {
                return Err(Error::Condition(format!("{name} needs q ≡ 1 mod 3 and gcd(s, 8) = 1")));
            }
        }
        _ => unreachable!("primal() returns a C family"),
    }
    Ok((delta, h, s))
}

/// The sporadic code `name` over `f` (which must have the family's n), expanded to an F_q-basis.
pub fn family_sporadic(f: &Arc<Field>, name: Sporadic, params: &SporadicParams) -> Result<SquareCode> {
    use Sporadic::*;
    let (delta, h, s) = resolve(f, name, params)?;
    let one = Elem::ONE;
    let m1 = f.constant(-1);
    let s = s as i64;
    let x = |i: i64| mono(f, i, one);
    let gens: Vec<LinPoly> = match name {
        C1 => vec![x(0), poly(f, &[(1, delta), (4, one)])],
        D1 => vec![x(1), x(2), x(4), poly(f, &[(0, one), (3, f.neg(f.frob(delta, 1)))])],
        C2 => vec![x(0), poly(f, &[(1, delta), (5, one)])],
        D2 => vec![x(1), x(2), x(3), x(5), x(6), poly(f, &[(0, one), (4, f.neg(delta))])],
        C3 => vec![x(0), poly(f, &[(1, one), (3, one), (5, delta)])],
        D3 => vec![x(1), x(3), poly(f, &[(0, m1), (2, one)]), poly(f, &[(0, delta), (4, m1)])],
        C4 => vec![x(0), poly(f, &[(1, one), (2, m1), (4, one), (5, one)])],
        D4 => vec![x(3), poly(f, &[(1, one), (2, one)]), poly(f, &[(1, one), (4, m1)]), poly(f, &[(1, one), (5, m1)])],
        C4Prime => {
            let hq1 = f.div(f.frob(h, 1), h);
            let hq2 = f.div(f.frob(h, 2), h);
            vec![x(0), poly(f, &[(1, hq1), (2, f.neg(hq2)), (4, one), (5, one)])]
        }
        D4Prime => {
            let hq1 = f.div(f.frob(h, 1), h);
            vec![
                x(3),
                poly(f, &[(1, f.frob(h, 2)), (2, f.frob(h, 1))]),
                poly(f, &[(1, one), (4, f.neg(hq1))]),
                poly(f, &[(1, one), (5, f.neg(hq1))]),
            ]
        }
        C5 | C6 => vec![x(0), x(s), x(3 * s)],
        D5 => vec![x(0), x(2 * s), x(3 * s), x(4 * s)],
        D6 => (0..6).filter(|&i| i != 1).map(|i| x(i * s)).collect(),
    };
    SquareCode::fqn_span(f, &gens)
}

/// Scans candidate values of the free parameter (δ for C1/C2/C3 and their duals, h for
/// C4′/D4′) in ascending code order and returns the first whose code is MRD. Families
/// without a free parameter are checked once. Returns `None` if no candidate passes.
pub fn sporadic_search(
    f: &Arc<Field>,
    name: Sporadic,
    base: &SporadicParams,
    opts: &EnumOptions,
) -> Result<Option<(SporadicParams, SquareCode)>> {
    use Sporadic::*;
    let candidates: Vec<SporadicParams> = match name.primal() {
        C1 | C2 | C3 => {
            let pool = if name.primal() == C1 { f.subfield_elements(2)? } else { f.elements().collect() };
            pool.into_iter().map(|d| SporadicParams { delta: Some(d), ..*base }).collect()
        }
        C4Prime => f.elements().map(|h| SporadicParams { h: Some(h), ..*base }).collect(),
        _ => vec![*base],
    };
    for cand in candidates {
        let code = match family_sporadic(f, name, &cand) {
            Ok(c) => c,
            Err(Error::Condition(_)) => continue,
            Err(e) => return Err(e),
        };
        if is_mrd(&Code::Square(code.clone()), opts)? {
            return Ok(Some((cand, code)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fqn;
    use crate::rmcode::{min_distance, verify};

    #[test]
    fn gabidulin_dimensions() {
        let f = fqn(2, 5).unwrap();
        let g = family_gabidulin(&f, 2, 1).unwrap();
        assert_eq!(g.dim(), 10);
        assert!(family_gabidulin(&f, 0, 1).is_err());
        assert!(family_gabidulin(&f, 5, 1).is_err());
    }

    #[test]
    fn twisted_with_zero_eta_is_gabidulin() {
        let f = fqn(3, 4).unwrap();
        let h = family_twisted(&f, 2, 1, Elem::ZERO, 1).unwrap();
        assert_eq!(h, family_gabidulin(&f, 2, 1).unwrap());
    }

    #[test]
    fn twisted_rejects_binary_base() {
        let f = fqn(2, 4).unwrap();
        assert!(matches!(family_twisted(&f, 2, 1, Elem::ONE, 1), Err(Error::Condition(_))));
    }

    #[test]
    fn gcd_two_gabidulin_is_not_mrd() {
        let f = fqn(2, 4).unwrap();
        let c: Code = family_gabidulin(&f, 2, 2).unwrap().into();
        assert_eq!(min_distance(&c, &EnumOptions::default()).unwrap(), 2);
    }

    #[test]
    fn trombetti_zhou_preconditions() {
        let f = fqn(3, 3).unwrap();
        assert!(family_trombetti_zhou(&f, 1, 1, Elem::ONE).is_err());
        let f = fqn(2, 4).unwrap();
        assert!(family_trombetti_zhou(&f, 2, 1, Elem::ONE).is_err());
    }

    #[test]
    fn sporadic_parse_and_conditions() {
        assert_eq!("c4'".parse::<Sporadic>().unwrap(), Sporadic::C4Prime);
        assert_eq!("D4prime".parse::<Sporadic>().unwrap(), Sporadic::D4Prime);
        let f = fqn(4, 6).unwrap();
        let p = SporadicParams { delta: Some(Elem::ONE), ..Default::default() };
        assert!(family_sporadic(&f, Sporadic::C1, &p).is_err());
        let f3 = fqn(3, 6).unwrap();
        // δ² + δ − 1 has discriminant 5, a non-square mod 3
        assert!(family_sporadic(&f3, Sporadic::C3, &SporadicParams::default()).is_err());
    }

    #[test]
    fn additive_twisted_small_case_is_mrd() {
        let f = fqn(9, 2).unwrap();
        let eta = (1..f.order()).map(Elem).find(|&e| f.pow(e, (f.order() as u64 - 1) / 2) != Elem::ONE).unwrap();
        let a = family_additive_twisted(&f, 1, 1, 3, eta, 1).unwrap();
        assert_eq!(a.scalar_degree(), 1);
        let v = verify(&a.into(), &EnumOptions::default()).unwrap();
        assert!(v.mrd);
        assert_eq!(v.params.d, 2);
    }
}
