//! Rank-metric codes: additive subgroups of F_q^{m×n} closed under a subfield of scalars.
//!
//! Square codes are spans of linearized polynomials over F_{q^n}; general codes are spans of
//! `m × n` matrices over F_q. Both keep a canonical (reduced echelon) basis, so two codes are
//! equal exactly when their bases are equal.

pub mod enumerate;
pub mod families;
pub mod formula;
pub mod ideal;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::gf::{Elem, Field, RelBasis, SmallField};
use crate::linalg::{self, Echelon, FqMat};
use crate::linpoly::LinPoly;
use crate::{Error, Result};

pub use enumerate::{spectrum, EnumOptions, Spectrum, Strategy, DEFAULT_BUDGET};
pub use families::{
    family_additive_twisted, family_gabidulin, family_sporadic, family_trombetti_zhou, family_twisted, sporadic_search,
    Sporadic, SporadicParams,
};
pub use formula::{mrd_weight_distribution, mrd_weight_formula};
pub use ideal::{is_field_algebra, left_idealiser, right_idealiser};

/// Which side scalars act on: `α·f` (left) or `f∘(αx)` (right).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Flattens linearized polynomials to coordinate vectors over a subfield F_{p^e} ⊆ F_q.
struct Flat<'a> {
    field: &'a Field,
    rel: Option<Arc<RelBasis>>,
}

impl<'a> Flat<'a> {
    fn new(field: &'a Field, e: usize) -> Result<Flat<'a>> {
        if e == field.h() {
            return Ok(Flat { field, rel: None });
        }
        if e == 0 || !field.h().is_multiple_of(e) {
            return Err(Error::Unsupported(format!("scalar field F_{}^{e} is not a subfield of F_q", field.p())));
        }
        Ok(Flat { field, rel: Some(field.rel_basis(e)?) })
    }

    fn small(&self) -> &SmallField {
        match &self.rel {
            None => self.field.small(),
            Some(r) => r.subfield().small(),
        }
    }

    fn width(&self) -> usize {
        match &self.rel {
            None => self.field.n(),
            Some(r) => r.len(),
        }
    }

    fn flatten(&self, f: &LinPoly) -> Vec<u8> {
        let w = self.width();
        let mut v = vec![0u8; f.n() * w];
        for (i, &a) in f.coeffs.iter().enumerate() {
            match &self.rel {
                None => self.field.coords_into(a, &mut v[i * w..(i + 1) * w]),
                Some(r) => self.field.rel_coords(r, a, &mut v[i * w..(i + 1) * w]),
            }
        }
        v
    }

    fn unflatten(&self, v: &[u8]) -> LinPoly {
        let w = self.width();
        let coeffs = v
            .chunks(w)
            .map(|c| match &self.rel {
                None => self.field.from_coords(c),
                Some(r) => self.field.rel_combine(r, c),
            })
            .collect();
        LinPoly::new(coeffs)
    }
}

/// A code of q-polynomials over F_{q^n}, linear over F_{p^e} (by default e = h, i.e. F_q).
#[derive(Clone, Debug)]
pub struct SquareCode {
    field: Arc<Field>,
    scalar_degree: usize,
    basis: Vec<LinPoly>,
}

impl PartialEq for SquareCode {
    fn eq(&self, other: &Self) -> bool {
        self.field.spec() == other.field.spec()
            && self.scalar_degree == other.scalar_degree
            && self.basis == other.basis
    }
}

impl SquareCode {
    /// F_q-span of `gens`.
    pub fn span(field: &Arc<Field>, gens: &[LinPoly]) -> Result<SquareCode> {
        SquareCode::span_over(field, field.h(), gens)
    }

    /// F_{p^e}-span of `gens`.
    pub fn span_over(field: &Arc<Field>, e: usize, gens: &[LinPoly]) -> Result<SquareCode> {
        let c = SquareCode::span_allow_empty(field, e, gens)?;
        if c.basis.is_empty() {
            return Err(Error::EmptySpan);
        }
        Ok(c)
    }

    /// Left F_{q^n}-span of `gens`, expanded over the field's F_q-basis.
    pub fn fqn_span(field: &Arc<Field>, gens: &[LinPoly]) -> Result<SquareCode> {
        let mut all = Vec::with_capacity(gens.len() * field.n());
        for g in gens {
            for &b in field.basis() {
                all.push(g.scale(field, b));
            }
        }
        SquareCode::span(field, &all)
    }

    pub(crate) fn span_allow_empty(field: &Arc<Field>, e: usize, gens: &[LinPoly]) -> Result<SquareCode> {
        for g in gens {
            g.check(field)?;
        }
        let flat = Flat::new(field, e)?;
        let mut rows: Vec<Vec<u8>> = gens.iter().map(|g| flat.flatten(g)).collect();
        linalg::rref(flat.small(), &mut rows);
        let basis = rows.iter().map(|r| flat.unflatten(r)).collect();
        Ok(SquareCode { field: field.clone(), scalar_degree: e, basis })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn basis(&self) -> &[LinPoly] {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    /// `e` such that the code is F_{p^e}-linear.
    pub fn scalar_degree(&self) -> usize {
        self.scalar_degree
    }

    pub fn contains(&self, f: &LinPoly) -> bool {
        let flat = Flat::new(&self.field, self.scalar_degree).expect("validated at construction");
        let mut ech = Echelon::new();
        for g in &self.basis {
            ech.insert(flat.small(), &flat.flatten(g));
        }
        ech.contains(flat.small(), &flat.flatten(f))
    }

    pub fn matrices(&self) -> Vec<FqMat> {
        self.basis.iter().map(|f| f.to_matrix(&self.field)).collect()
    }
}

/// An F_q-linear code of `m × n` matrices over F_q (entries are local F_q codes).
#[derive(Clone, Debug)]
pub struct MatrixCode {
    field: Arc<Field>,
    m: usize,
    n: usize,
    basis: Vec<FqMat>,
}

impl PartialEq for MatrixCode {
    fn eq(&self, other: &Self) -> bool {
        self.field.spec() == other.field.spec() && (self.m, self.n) == (other.m, other.n) && self.basis == other.basis
    }
}

impl MatrixCode {
    /// F_q-span of `mats`; `field` supplies F_q (and F_{q^n} for scalar actions).
    pub fn span(field: &Arc<Field>, m: usize, n: usize, mats: &[FqMat]) -> Result<MatrixCode> {
        let c = MatrixCode::span_allow_empty(field, m, n, mats)?;
        if c.basis.is_empty() {
            return Err(Error::EmptySpan);
        }
        Ok(c)
    }

    pub(crate) fn span_allow_empty(field: &Arc<Field>, m: usize, n: usize, mats: &[FqMat]) -> Result<MatrixCode> {
        let q = field.q();
        for a in mats {
            if a.rows() != m || a.cols() != n {
                return Err(Error::Shape(format!("expected {m}×{n}, got {}×{}", a.rows(), a.cols())));
            }
            if a.data().iter().any(|&x| x as u32 >= q) {
                return Err(Error::Shape("matrix entry outside F_q".into()));
            }
        }
        let mut rows: Vec<Vec<u8>> = mats.iter().map(|a| a.data().to_vec()).collect();
        linalg::rref(field.small(), &mut rows);
        let basis = rows.into_iter().map(|r| FqMat::from_data(m, n, r)).collect();
        Ok(MatrixCode { field: field.clone(), m, n, basis })
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn basis(&self) -> &[FqMat] {
        &self.basis
    }

    pub fn rows(&self) -> usize {
        self.m
    }

    pub fn cols(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, a: &FqMat) -> bool {
        let sf = self.field.small();
        let mut ech = Echelon::new();
        for b in &self.basis {
            ech.insert(sf, b.data());
        }
        ech.contains(sf, a.data())
    }

    pub fn transpose(&self) -> MatrixCode {
        let t: Vec<FqMat> = self.basis.iter().map(|b| b.transpose()).collect();
        MatrixCode::span_allow_empty(&self.field, self.n, self.m, &t).expect("same entries")
    }
}

/// Either kind of code.
#[derive(Clone, Debug, PartialEq)]
pub enum Code {
    Square(SquareCode),
    Matrix(MatrixCode),
}

impl From<SquareCode> for Code {
    fn from(c: SquareCode) -> Code {
        Code::Square(c)
    }
}

impl From<MatrixCode> for Code {
    fn from(c: MatrixCode) -> Code {
        Code::Matrix(c)
    }
}

/// Span of generators of one kind.
pub enum Generators {
    /// F_q-span of linearized polynomials.
    Polys(Vec<LinPoly>),
    /// Left F_{q^n}-span of linearized polynomials.
    FqnPolys(Vec<LinPoly>),
    /// F_q-span of `m × n` matrices.
    Matrices { m: usize, n: usize, mats: Vec<FqMat> },
}

/// Reduces generators to a canonical basis.
pub fn code_from_basis(field: &Arc<Field>, gens: Generators) -> Result<Code> {
    Ok(match gens {
        Generators::Polys(p) => SquareCode::span(field, &p)?.into(),
        Generators::FqnPolys(p) => SquareCode::fqn_span(field, &p)?.into(),
        Generators::Matrices { m, n, mats } => MatrixCode::span(field, m, n, &mats)?.into(),
    })
}

impl Code {
    pub fn field(&self) -> &Arc<Field> {
        match self {
            Code::Square(c) => &c.field,
            Code::Matrix(c) => &c.field,
        }
    }

    /// `(m, n)`: rows and columns of codeword matrices.
    pub fn shape(&self) -> (usize, usize) {
        match self {
            Code::Square(c) => (c.field.n(), c.field.n()),
            Code::Matrix(c) => (c.m, c.n),
        }
    }

    /// Dimension over the scalar field.
    pub fn dim(&self) -> usize {
        match self {
            Code::Square(c) => c.dim(),
            Code::Matrix(c) => c.dim(),
        }
    }

    /// `e` with scalars F_{p^e}.
    pub fn scalar_degree(&self) -> usize {
        match self {
            Code::Square(c) => c.scalar_degree,
            Code::Matrix(c) => c.field.h(),
        }
    }

    pub fn is_fq_linear(&self) -> bool {
        self.scalar_degree() == self.field().h()
    }

    /// `log_p |C|`.
    pub fn log_p_size(&self) -> usize {
        self.scalar_degree() * self.dim()
    }

    /// Basis codewords as matrices over F_q.
    pub fn matrices(&self) -> Vec<FqMat> {
        match self {
            Code::Square(c) => c.matrices(),
            Code::Matrix(c) => c.basis.clone(),
        }
    }

    pub fn as_square(&self) -> Option<&SquareCode> {
        match self {
            Code::Square(c) => Some(c),
            Code::Matrix(_) => None,
        }
    }

    pub fn as_matrix(&self) -> Option<&MatrixCode> {
        match self {
            Code::Matrix(c) => Some(c),
            Code::Square(_) => None,
        }
    }

    /// The same code as a matrix code over the field's F_q-basis.
    pub fn to_matrix_code(&self) -> Result<MatrixCode> {
        if !self.is_fq_linear() {
            return Err(Error::Unsupported("code is not F_q-linear".into()));
        }
        let (m, n) = self.shape();
        MatrixCode::span_allow_empty(self.field(), m, n, &self.matrices())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            Code::Square(_) => "square",
            Code::Matrix(_) => "matrix",
        }
    }
}

/// Rank-metric parameters `(m, n, q; d)` plus the dimension over F_q when integral.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CodeParams {
    pub m: usize,
    pub n: usize,
    pub q: u32,
    pub d: usize,
    /// Dimension over the scalar field.
    pub dim: usize,
    /// Order of the scalar field.
    pub scalars: u32,
    /// `log_p |C|`.
    pub log_p_size: usize,
    pub h: usize,
}

impl CodeParams {
    /// `log_p` of the Singleton bound `q^{max(m,n)(min(m,n)−d+1)}`.
    pub fn singleton_log_p(&self) -> usize {
        self.h * self.m.max(self.n) * (self.m.min(self.n) + 1 - self.d)
    }

    pub fn is_mrd(&self) -> bool {
        self.log_p_size == self.singleton_log_p()
    }
}

impl fmt::Display for CodeParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{};{})", self.m, self.n, self.q, self.d)
    }
}

/// Counts `A_0, …, A_{min(m,n)}` of codewords by rank.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightDistribution {
    pub counts: Vec<u128>,
}

impl WeightDistribution {
    /// Smallest nonzero weight, if the code is nonzero.
    pub fn min_distance(&self) -> Option<usize> {
        self.counts.iter().enumerate().skip(1).find(|(_, &c)| c > 0).map(|(i, _)| i)
    }

    pub fn total(&self) -> u128 {
        self.counts.iter().sum()
    }
}

impl fmt::Display for WeightDistribution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.counts.iter().map(|c| c.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Parameters, MRD verdict and the enumeration that produced them.
#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub params: CodeParams,
    pub mrd: bool,
    pub spectrum: Spectrum,
}

pub fn weight_distribution(code: &Code, opts: &EnumOptions) -> Result<WeightDistribution> {
    Ok(spectrum(code, opts)?.distribution)
}

pub fn min_distance(code: &Code, opts: &EnumOptions) -> Result<usize> {
    verify(code, opts).map(|v| v.params.d)
}

pub fn verify(code: &Code, opts: &EnumOptions) -> Result<Verification> {
    if code.dim() == 0 {
        return Err(Error::EmptyCode);
    }
    let sp = spectrum(code, opts)?;
    let params = params_with_distance(code, sp.distribution.min_distance().expect("nonzero code"));
    Ok(Verification { mrd: params.is_mrd(), params, spectrum: sp })
}

pub fn is_mrd(code: &Code, opts: &EnumOptions) -> Result<bool> {
    verify(code, opts).map(|v| v.mrd)
}

/// Parameters of `code` given its minimum distance.
pub fn params_with_distance(code: &Code, d: usize) -> CodeParams {
    let (m, n) = code.shape();
    let f = code.field();
    CodeParams {
        m,
        n,
        q: f.q(),
        d,
        dim: code.dim(),
        scalars: f.p().pow(code.scalar_degree() as u32),
        log_p_size: code.log_p_size(),
        h: f.h(),
    }
}

/// The Delsarte dual: `b(f, g) = Tr(Σ f_i g_i)` for square codes and `Tr(M Nᵗ)` for matrix codes.
pub fn delsarte_dual(code: &Code) -> Result<Code> {
    if !code.is_fq_linear() {
        return Err(Error::Unsupported("Delsarte dual of a code that is not F_q-linear".into()));
    }
    match code {
        Code::Square(c) => {
            let f = &c.field;
            let n = f.n();
            let sf = f.small();
            // entry (i, a) of row g: Tr(b_a g_i)
            let rows: Vec<Vec<u8>> = c
                .basis
                .iter()
                .map(|g| {
                    let mut row = Vec::with_capacity(n * n);
                    for &gi in &g.coeffs {
                        for &b in f.basis() {
                            let t = f.trace(f.mul(b, gi), 1).expect("1 divides n");
                            row.push(f.to_local(t).expect("trace lies in F_q"));
                        }
                    }
                    row
                })
                .collect();
            let ns = if rows.is_empty() { identity_rows(n * n) } else { linalg::nullspace(sf, &rows, n * n) };
            let polys: Vec<LinPoly> = ns
                .iter()
                .map(|v| {
                    LinPoly::new(
                        v.chunks(n)
                            .map(|x| {
                                x.iter()
                                    .zip(f.basis())
                                    .fold(Elem::ZERO, |acc, (&c, &b)| f.add(acc, f.mul(f.from_local(c), b)))
                            })
                            .collect(),
                    )
                })
                .collect();
            Ok(SquareCode::span_allow_empty(f, f.h(), &polys)?.into())
        }
        Code::Matrix(c) => {
            let sf = c.field.small();
            let rows: Vec<Vec<u8>> = c.basis.iter().map(|b| b.data().to_vec()).collect();
            let len = c.m * c.n;
            let ns = if rows.is_empty() { identity_rows(len) } else { linalg::nullspace(sf, &rows, len) };
            let mats: Vec<FqMat> = ns.into_iter().map(|v| FqMat::from_data(c.m, c.n, v)).collect();
            Ok(MatrixCode::span_allow_empty(&c.field, c.m, c.n, &mats)?.into())
        }
    }
}

fn identity_rows(n: usize) -> Vec<Vec<u8>> {
    (0..n).map(|i| (0..n).map(|j| (i == j) as u8).collect()).collect()
}

/// `C^⊤`: adjoints of square codewords, transposes of square matrix codewords.
pub fn adjoint_code(code: &Code) -> Result<Code> {
    match code {
        Code::Square(c) => {
            let adj: Vec<LinPoly> = c.basis.iter().map(|f| f.adjoint(&c.field)).collect();
            Ok(SquareCode::span_allow_empty(&c.field, c.scalar_degree, &adj)?.into())
        }
        Code::Matrix(c) if c.m == c.n => Ok(c.transpose().into()),
        Code::Matrix(c) => Err(Error::Shape(format!("adjoint code needs a square shape, got {}×{}", c.m, c.n))),
    }
}

/// Whether the code is closed under `α·` (left) or `∘ αx` (right) for all α ∈ F_{q^n}.
pub fn is_fqn_linear(code: &Code, side: Side) -> bool {
    let f = code.field();
    let beta = f.primitive();
    match code {
        Code::Square(c) => c.basis.iter().all(|g| {
            let img = match side {
                Side::Left => g.scale(f, beta),
                Side::Right => g.scale_right(f, beta),
            };
            c.contains(&img)
        }),
        Code::Matrix(c) => {
            let n = f.n();
            let t = LinPoly::monomial(n, 0, beta).to_matrix(f);
            let sf = f.small();
            match side {
                Side::Left if c.m == n => c.basis.iter().all(|b| c.contains(&t.mul(sf, b))),
                Side::Right if c.n == n => c.basis.iter().all(|b| c.contains(&b.mul(sf, &t))),
                _ => false,
            }
        }
    }
}

/// Invariants that certify non-equivalence when they differ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fingerprint {
    pub params: CodeParams,
    pub distribution: WeightDistribution,
    pub left_order_log_q: usize,
    pub right_order_log_q: usize,
    pub left_is_field: Option<bool>,
    pub right_is_field: Option<bool>,
}

pub fn fingerprint(code: &Code, opts: &EnumOptions) -> Result<Fingerprint> {
    let v = verify(code, opts)?;
    let l = left_idealiser(code)?;
    let r = right_idealiser(code)?;
    Ok(Fingerprint {
        params: v.params,
        distribution: v.spectrum.distribution,
        left_order_log_q: l.dim(),
        right_order_log_q: r.dim(),
        left_is_field: is_field_algebra(&l).ok(),
        right_is_field: is_field_algebra(&r).ok(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fqn;

    #[test]
    fn span_examples() {
        let f8 = fqn(2, 3).unwrap();
        let x = LinPoly::identity(3);
        let xq = LinPoly::monomial(3, 1, Elem::ONE);
        let c = SquareCode::fqn_span(&f8, &[x.clone(), xq.clone()]).unwrap();
        assert_eq!(c.dim(), 6);
        let d = SquareCode::fqn_span(&f8, &[x.clone(), xq, x.clone()]).unwrap();
        assert_eq!(c, d);
        assert!(matches!(SquareCode::span(&f8, &[LinPoly::zero(3)]), Err(Error::EmptySpan)));
        let m = FqMat::zeros(2, 3);
        let bad = MatrixCode::span(&f8, 2, 2, &[m]);
        assert!(matches!(bad, Err(Error::Shape(_))));
    }

    #[test]
    fn dual_of_full_space_is_zero() {
        let f4 = fqn(2, 2).unwrap();
        let all: Vec<FqMat> = (0..4)
            .map(|i| {
                let mut a = FqMat::zeros(2, 2);
                a.data_mut()[i] = 1;
                a
            })
            .collect();
        let full: Code = MatrixCode::span(&f4, 2, 2, &all).unwrap().into();
        let dual = delsarte_dual(&full).unwrap();
        assert_eq!(dual.dim(), 0);
        assert_eq!(delsarte_dual(&dual).unwrap(), full);
    }

    #[test]
    fn adjoint_of_identity_span() {
        let f = fqn(3, 3).unwrap();
        let c: Code = SquareCode::fqn_span(&f, &[LinPoly::identity(3)]).unwrap().into();
        assert_eq!(adjoint_code(&c).unwrap(), c);
        let m: Code =
            MatrixCode::span(&f, 2, 3, &[FqMat::from_rows(&[vec![1, 0, 0], vec![0, 1, 0]]).unwrap()]).unwrap().into();
        assert!(adjoint_code(&m).is_err());
    }
}
