//! Linearized q-polynomials `f(x) = Σ_{i<n} a_i x^{q^i}` over F_{q^n}, i.e. F_q-linear
//! endomorphisms of F_{q^n}, with composition taken modulo `x^{q^n} − x`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::gf::{Elem, Field};
use crate::linalg::{rank_in_place, FqMat};
use crate::{Error, Result};

/// Coefficients `(a_0, …, a_{n−1})`; the field is supplied by the caller.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LinPoly {
    pub coeffs: Vec<Elem>,
}

impl LinPoly {
    pub fn new(coeffs: Vec<Elem>) -> LinPoly {
        LinPoly { coeffs }
    }

    pub fn zero(n: usize) -> LinPoly {
        LinPoly { coeffs: vec![Elem::ZERO; n] }
    }

    /// `a · x^{q^i}`.
    pub fn monomial(n: usize, i: usize, a: Elem) -> LinPoly {
        let mut f = LinPoly::zero(n);
        f.coeffs[i % n] = a;
        f
    }

    /// The identity map `x`.
    pub fn identity(n: usize) -> LinPoly {
        LinPoly::monomial(n, 0, Elem::ONE)
    }

    pub fn n(&self) -> usize {
        self.coeffs.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_zero())
    }

    pub fn check(&self, field: &Field) -> Result<()> {
        if self.coeffs.len() != field.n() {
            return Err(Error::LengthMismatch { expected: field.n(), got: self.coeffs.len() });
        }
        if let Some(c) = self.coeffs.iter().find(|c| c.0 >= field.order()) {
            return Err(Error::NotInField(c.0));
        }
        Ok(())
    }

    pub fn eval(&self, field: &Field, x: Elem) -> Elem {
        self.coeffs.iter().enumerate().fold(Elem::ZERO, |acc, (i, &a)| {
            if a.is_zero() {
                acc
            } else {
                field.add(acc, field.mul(a, field.frob(x, i as i64)))
            }
        })
    }

    /// `self ∘ g`.
    pub fn compose(&self, field: &Field, g: &LinPoly) -> LinPoly {
        let n = self.n();
        let mut out = vec![Elem::ZERO; n];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in g.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    let k = (i + j) % n;
                    out[k] = field.add(out[k], field.mul(a, field.frob(b, i as i64)));
                }
            }
        }
        LinPoly { coeffs: out }
    }

    /// The adjoint with respect to `Tr(x·y)`: coefficient `i` is `a_{n−i}^{q^i}`.
    pub fn adjoint(&self, field: &Field) -> LinPoly {
        let n = self.n();
        let coeffs = (0..n).map(|i| field.frob(self.coeffs[(n - i) % n], i as i64)).collect();
        LinPoly { coeffs }
    }

    pub fn add(&self, field: &Field, g: &LinPoly) -> LinPoly {
        LinPoly { coeffs: self.coeffs.iter().zip(&g.coeffs).map(|(&a, &b)| field.add(a, b)).collect() }
    }

    pub fn sub(&self, field: &Field, g: &LinPoly) -> LinPoly {
        LinPoly { coeffs: self.coeffs.iter().zip(&g.coeffs).map(|(&a, &b)| field.sub(a, b)).collect() }
    }

    /// `α · f(x)`.
    pub fn scale(&self, field: &Field, alpha: Elem) -> LinPoly {
        LinPoly { coeffs: self.coeffs.iter().map(|&a| field.mul(alpha, a)).collect() }
    }

    /// `f(α x)`.
    pub fn scale_right(&self, field: &Field, alpha: Elem) -> LinPoly {
        let coeffs = self.coeffs.iter().enumerate().map(|(i, &a)| field.mul(a, field.frob(alpha, i as i64))).collect();
        LinPoly { coeffs }
    }

    /// Applies `x ↦ x^{p^k}` to every coefficient.
    pub fn map_coeffs_frob_p(&self, field: &Field, k: usize) -> LinPoly {
        LinPoly { coeffs: self.coeffs.iter().map(|&a| field.frob_p(a, k)).collect() }
    }

    /// Writes the `n × n` matrix (row-major local codes) of `x ↦ f(x)` over the field's
    /// F_q-basis: column `j` holds the coordinates of `f(b_j)`.
    pub fn matrix_into(&self, field: &Field, out: &mut [u8]) {
        let n = field.n();
        let mut col = [0u8; 64];
        for j in 0..n {
            let mut y = Elem::ZERO;
            for (i, &a) in self.coeffs.iter().enumerate() {
                if !a.is_zero() {
                    y = field.add(y, field.mul(a, field.basis_frob(j, i)));
                }
            }
            field.coords_into(y, &mut col[..n]);
            for r in 0..n {
                out[r * n + j] = col[r];
            }
        }
    }

    pub fn to_matrix(&self, field: &Field) -> FqMat {
        let n = field.n();
        let mut data = vec![0u8; n * n];
        self.matrix_into(field, &mut data);
        FqMat::from_data(n, n, data)
    }

    /// Rank over F_q of the map `x ↦ f(x)`.
    pub fn rank(&self, field: &Field) -> usize {
        let n = field.n();
        let mut data = vec![0u8; n * n];
        self.matrix_into(field, &mut data);
        rank_in_place(field.small(), &mut data, n, n)
    }

    pub fn kernel_dim(&self, field: &Field) -> usize {
        field.n() - self.rank(field)
    }

    /// The linearized polynomial with the given `n × n` matrix over the field's F_q-basis.
    pub fn from_matrix(field: &Field, m: &FqMat) -> Result<LinPoly> {
        let n = field.n();
        if m.rows() != n || m.cols() != n {
            return Err(Error::Shape(format!("expected {n}×{n}, got {}×{}", m.rows(), m.cols())));
        }
        // Interpolate: f(b_j) = y_j; solve the Moore system Σ_i a_i b_j^{q^i} = y_j.
        let ys: Vec<Elem> =
            (0..n).map(|j| field.from_coords(&(0..n).map(|r| m.get(r, j)).collect::<Vec<_>>())).collect();
        let cols: Vec<Vec<Elem>> = (0..n).map(|i| (0..n).map(|j| field.basis_frob(j, i)).collect()).collect();
        let a = crate::linalg::solve_combination(field, &cols, &ys).expect("Moore matrix of a basis is invertible");
        Ok(LinPoly { coeffs: a })
    }

    /// Parses expressions such as `x^q`, `5*x^{q^3} - x`, `g^7 x^q^2 + x`.
    ///
    /// Coefficients are element codes or `g^k`, a power of the field's primitive element.
    pub fn parse(field: &Field, text: &str) -> Result<LinPoly> {
        let n = field.n();
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty expression".into()));
        }
        let mut terms: Vec<(bool, String)> = Vec::new();
        let mut depth = 0i32;
        let mut cur = String::new();
        let mut neg = false;
        let mut prev: Option<char> = None;
        for ch in s.chars() {
            match ch {
                '{' | '(' => depth += 1,
                '}' | ')' => depth -= 1,
                _ => {}
            }
            if depth == 0 && (ch == '+' || ch == '-') && prev.is_some_and(|p| p != '^') {
                terms.push((neg, std::mem::take(&mut cur)));
                neg = ch == '-';
            } else if depth == 0 && (ch == '+' || ch == '-') && prev.is_none() {
                neg = ch == '-';
            } else {
                cur.push(ch);
            }
            prev = Some(ch);
        }
        terms.push((neg, cur));
        let mut f = LinPoly::zero(n);
        for (neg, t) in terms {
            let Some(xpos) = t.find('x') else {
                return Err(Error::Parse(format!("term `{t}` is not linearized")));
            };
            let coef_str = t[..xpos].trim_end_matches('*');
            let exp_str = &t[xpos + 1..];
            let mut c = parse_coeff(field, coef_str)?;
            if neg {
                c = field.neg(c);
            }
            let i = parse_qpower(exp_str)?;
            f.coeffs[i % n] = field.add(f.coeffs[i % n], c);
        }
        Ok(f)
    }

    pub fn display(&self) -> LinPolyDisplay<'_> {
        LinPolyDisplay(self)
    }
}

/// Parses an element given as its integer code or as `g^k`.
pub fn parse_elem(field: &Field, s: &str) -> Result<Elem> {
    let s = s.trim();
    if s.is_empty() {
        return Err(Error::Parse("empty element".into()));
    }
    parse_coeff(field, s)
}

fn parse_coeff(field: &Field, s: &str) -> Result<Elem> {
    if s.is_empty() {
        return Ok(Elem::ONE);
    }
    let s = s.trim_start_matches('(').trim_end_matches(')');
    if let Some(k) = s.strip_prefix("g^") {
        let k: u64 = k
            .trim_matches(|c| c == '{' || c == '}')
            .parse()
            .map_err(|_| Error::Parse(format!("bad exponent `{k}`")))?;
        return Ok(field.pow(field.primitive(), k));
    }
    let code: u32 = s.parse().map_err(|_| Error::Parse(format!("bad coefficient `{s}`")))?;
    field.elem(code)
}

fn parse_qpower(s: &str) -> Result<usize> {
    if s.is_empty() {
        return Ok(0);
    }
    let body = s
        .strip_prefix('^')
        .ok_or_else(|| Error::Parse(format!("bad exponent `{s}`")))?
        .trim_start_matches(['{', '('])
        .trim_end_matches(['}', ')']);
    if body == "q" {
        return Ok(1);
    }
    if body == "1" {
        return Ok(0);
    }
    let k = body
        .strip_prefix("q^")
        .ok_or_else(|| Error::Parse(format!("exponent `{body}` is not a power of q")))?
        .trim_matches(|c| c == '{' || c == '}' || c == '(' || c == ')');
    k.parse().map_err(|_| Error::Parse(format!("bad q-exponent `{k}`")))
}

pub struct LinPolyDisplay<'a>(&'a LinPoly);

impl fmt::Display for LinPolyDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.0.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if *c != Elem::ONE {
                write!(f, "{c}*")?;
            }
            match i {
                0 => write!(f, "x")?,
                1 => write!(f, "x^q")?,
                _ => write!(f, "x^{{q^{i}}}")?,
            }
        }
        if first {
            write!(f, "0")?;
        }
        Ok(())
    }
}

pub fn lp_eval(field: &Field, f: &LinPoly, x: Elem) -> Elem {
    f.eval(field, x)
}

/// `f ∘ g`.
pub fn lp_compose(field: &Field, f: &LinPoly, g: &LinPoly) -> LinPoly {
    f.compose(field, g)
}

pub fn lp_adjoint(field: &Field, f: &LinPoly) -> LinPoly {
    f.adjoint(field)
}

pub fn lp_to_matrix(field: &Field, f: &LinPoly) -> FqMat {
    f.to_matrix(field)
}

pub fn lp_rank(field: &Field, f: &LinPoly) -> usize {
    f.rank(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fqn;

    #[test]
    fn evaluation_matches_frobenius() {
        let f4 = fqn(2, 2).unwrap();
        let xq = LinPoly::parse(&f4, "x^q").unwrap();
        assert_eq!(xq.eval(&f4, Elem(2)), Elem(3));
        let f8 = fqn(2, 3).unwrap();
        let id = LinPoly::identity(3);
        for x in f8.elements() {
            assert_eq!(id.eval(&f8, x), x);
        }
        assert_eq!(LinPoly::zero(3).eval(&f8, Elem(5)), Elem::ZERO);
    }

    #[test]
    fn composition_examples() {
        let f8 = fqn(2, 3).unwrap();
        let a = Elem(6);
        let xq = LinPoly::monomial(3, 1, Elem::ONE);
        let g = LinPoly::monomial(3, 2, a);
        assert_eq!(xq.compose(&f8, &g), LinPoly::monomial(3, 0, f8.frob(a, 1)));
        let f = LinPoly::parse(&f8, "3*x + x^q").unwrap();
        assert_eq!(f.compose(&f8, &LinPoly::identity(3)), f);
        assert_eq!(LinPoly::identity(3).compose(&f8, &f), f);
    }

    #[test]
    fn adjoint_examples() {
        let f = fqn(3, 4).unwrap();
        let a = Elem(17);
        let g = LinPoly::monomial(4, 1, a);
        assert_eq!(g.adjoint(&f), LinPoly::monomial(4, 3, f.frob(a, 3)));
        assert_eq!(LinPoly::monomial(4, 0, a).adjoint(&f), LinPoly::monomial(4, 0, a));
    }

    #[test]
    fn matrix_and_rank_examples() {
        let f8 = fqn(2, 3).unwrap();
        assert_eq!(LinPoly::identity(3).to_matrix(&f8), FqMat::identity(3));
        assert_eq!(LinPoly::zero(3).rank(&f8), 0);
        let f16 = fqn(2, 4).unwrap();
        let g = LinPoly::parse(&f16, "x^{q^2} - x").unwrap();
        assert_eq!(g.rank(&f16), 2);
        let tr = LinPoly::parse(&f8, "x + x^q + x^{q^2}").unwrap();
        assert_eq!(tr.rank(&f8), 1);
    }

    #[test]
    fn matrix_interpolation_round_trip() {
        let f = fqn(3, 3).unwrap();
        let g = LinPoly::parse(&f, "g^5*x + 7*x^q - x^{q^2}").unwrap();
        assert_eq!(LinPoly::from_matrix(&f, &g.to_matrix(&f)).unwrap(), g);
    }

    #[test]
    fn parse_forms() {
        let f = fqn(2, 5).unwrap();
        let a = LinPoly::parse(&f, "x^{q^2} + 3 x^q^3 - x").unwrap();
        assert_eq!(a.coeffs, vec![Elem(1), Elem(0), Elem(1), Elem(3), Elem(0)]);
        assert!(LinPoly::parse(&f, "x^2").is_err());
        assert!(LinPoly::parse(&f, "1 + x").is_err());
        assert!(LinPoly::parse(&f, "99*x").is_err());
        assert_eq!(format!("{}", a.display()), "x + x^{q^2} + 3*x^{q^3}");
    }
}
