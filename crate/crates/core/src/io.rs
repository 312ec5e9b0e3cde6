//! JSON documents for fields, linearized polynomials, codes and subspaces. Every document
//! carries its full field spec (including the modulus), so files are self-contained; loading
//! re-reduces bases, so a stored basis need not be in echelon form.

use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::gf::{field_create, Elem, Field, FieldSpec};
use crate::linalg::FqMat;
use crate::linpoly::LinPoly;
use crate::linset::Subspace;
use crate::rmcode::{Code, MatrixCode, SquareCode};
use crate::Result;

/// Basis of a stored code, tagged by kind.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum CodeBody {
    /// Coefficient lists `(a_0, …, a_{n−1})` spanning over F_{p^scalar_degree}.
    Square { scalar_degree: usize, basis: Vec<Vec<Elem>> },
    /// `m × n` matrices over F_q as rows of local codes.
    Matrix { m: usize, n: usize, basis: Vec<FqMat> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CodeDoc {
    pub field: FieldSpec,
    #[serde(flatten)]
    pub body: CodeBody,
}

impl CodeDoc {
    pub fn from_code(code: &Code) -> CodeDoc {
        let field = code.field().spec().clone();
        let body = match code {
            Code::Square(c) => CodeBody::Square {
                scalar_degree: c.scalar_degree(),
                basis: c.basis().iter().map(|f| f.coeffs.clone()).collect(),
            },
            Code::Matrix(c) => CodeBody::Matrix { m: c.rows(), n: c.cols(), basis: c.basis().to_vec() },
        };
        CodeDoc { field, body }
    }

    pub fn into_code(self) -> Result<Code> {
        let field = field_create(self.field)?;
        Ok(match self.body {
            CodeBody::Square { scalar_degree, basis } => {
                let gens: Vec<LinPoly> = basis.into_iter().map(LinPoly::new).collect();
                SquareCode::span_over(&field, scalar_degree, &gens)?.into()
            }
            CodeBody::Matrix { m, n, basis } => MatrixCode::span(&field, m, n, &basis)?.into(),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SubspaceDoc {
    pub field: FieldSpec,
    pub r: usize,
    /// Spanning vectors of length `r` over F_{q^n}.
    pub basis: Vec<Vec<Elem>>,
}

impl SubspaceDoc {
    pub fn from_subspace(u: &Subspace) -> SubspaceDoc {
        SubspaceDoc { field: u.field().spec().clone(), r: u.r(), basis: u.basis().to_vec() }
    }

    pub fn into_subspace(self) -> Result<Subspace> {
        let field = field_create(self.field)?;
        Subspace::span(&field, self.r, &self.basis)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct LinPolyDoc {
    pub field: FieldSpec,
    pub coeffs: Vec<Elem>,
}

impl LinPolyDoc {
    pub fn new(field: &Field, f: &LinPoly) -> LinPolyDoc {
        LinPolyDoc { field: field.spec().clone(), coeffs: f.coeffs.clone() }
    }

    pub fn into_parts(self) -> Result<(Arc<Field>, LinPoly)> {
        let field = field_create(self.field)?;
        let f = LinPoly::new(self.coeffs);
        f.check(&field)?;
        Ok((field, f))
    }
}

pub fn code_to_json(code: &Code) -> String {
    serde_json::to_string_pretty(&CodeDoc::from_code(code)).expect("plain data serializes")
}

pub fn code_from_json(text: &str) -> Result<Code> {
    serde_json::from_str::<CodeDoc>(text)?.into_code()
}

pub fn subspace_to_json(u: &Subspace) -> String {
    serde_json::to_string_pretty(&SubspaceDoc::from_subspace(u)).expect("plain data serializes")
}

pub fn subspace_from_json(text: &str) -> Result<Subspace> {
    serde_json::from_str::<SubspaceDoc>(text)?.into_subspace()
}

pub fn linpoly_to_json(field: &Field, f: &LinPoly) -> String {
    serde_json::to_string_pretty(&LinPolyDoc::new(field, f)).expect("plain data serializes")
}

pub fn linpoly_from_json(text: &str) -> Result<(Arc<Field>, LinPoly)> {
    serde_json::from_str::<LinPolyDoc>(text)?.into_parts()
}

pub fn field_to_json(field: &Field) -> String {
    serde_json::to_string_pretty(field.spec()).expect("plain data serializes")
}

pub fn field_from_json(text: &str) -> Result<Arc<Field>> {
    field_create(serde_json::from_str(text)?)
}

pub fn read_code(path: &Path) -> Result<Code> {
    code_from_json(&std::fs::read_to_string(path)?)
}

pub fn read_subspace(path: &Path) -> Result<Subspace> {
    subspace_from_json(&std::fs::read_to_string(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fqn;
    use crate::rmcode::family_gabidulin;

    #[test]
    fn square_code_document_shape() {
        let f = fqn(2, 3).unwrap();
        let c: Code = family_gabidulin(&f, 1, 1).unwrap().into();
        let v: serde_json::Value = serde_json::from_str(&code_to_json(&c)).unwrap();
        assert_eq!(v["kind"], "square");
        assert_eq!(v["field"]["modulus"].as_array().unwrap().len(), 4);
        assert_eq!(code_from_json(&code_to_json(&c)).unwrap(), c);
    }

    #[test]
    fn matrix_entries_are_checked() {
        let text = r#"{"field":{"p":2,"h":1,"n":2,"modulus":[1,1,1]},"kind":"matrix","m":1,"n":2,"basis":[[[1,2]]]}"#;
        assert!(code_from_json(text).is_err());
    }

    #[test]
    fn reducible_modulus_is_rejected() {
        assert!(field_from_json(r#"{"p":2,"h":1,"n":2,"modulus":[1,0,1]}"#).is_err());
    }
}
