//! Left and right idealisers `L(C) = {Y : Y C ⊆ C}` and `R(C) = {Z : C Z ⊆ C}`.
//!
//! Both are solved as one linear system over F_q against a parity-check basis `H_l` of C:
//! `Y C_j ∈ C` iff `⟨H_l, Y C_j⟩ = 0` for all `l`, and `⟨H, Y C⟩ = Σ Y_{ac} (H Cᵗ)_{ac}`.

use super::{Code, MatrixCode};
use crate::linalg::{self, FqMat};
use crate::{Error, Result};

/// Largest algebra order checked element by element.
pub const FIELD_CHECK_LIMIT: u64 = 1 << 16;

fn parity_checks(code: &Code) -> Result<(Vec<FqMat>, Vec<FqMat>)> {
    if !code.is_fq_linear() {
        return Err(Error::Unsupported("idealisers of a code that is not F_q-linear".into()));
    }
    let (m, n) = code.shape();
    let sf = code.field().small();
    let mats = code.matrices();
    let rows: Vec<Vec<u8>> = mats.iter().map(|a| a.data().to_vec()).collect();
    let h = linalg::nullspace(sf, &rows, m * n);
    Ok((mats, h.into_iter().map(|v| FqMat::from_data(m, n, v)).collect()))
}

fn solve(code: &Code, size: usize, eqs: Vec<Vec<u8>>) -> Result<MatrixCode> {
    let sf = code.field().small();
    let sol = if eqs.is_empty() {
        (0..size * size).map(|i| (0..size * size).map(|j| (i == j) as u8).collect()).collect()
    } else {
        linalg::nullspace(sf, &eqs, size * size)
    };
    let mats: Vec<FqMat> = sol.into_iter().map(|v| FqMat::from_data(size, size, v)).collect();
    MatrixCode::span_allow_empty(code.field(), size, size, &mats)
}

pub fn left_idealiser(code: &Code) -> Result<MatrixCode> {
    let (m, n) = code.shape();
    let sf = code.field().small();
    let (mats, checks) = parity_checks(code)?;
    let mut eqs = Vec::with_capacity(mats.len() * checks.len());
    for c in &mats {
        for h in &checks {
            let mut row = vec![0u8; m * m];
            for a in 0..m {
                for cc in 0..m {
                    let mut acc = 0u8;
                    for b in 0..n {
                        acc = sf.add(acc, sf.mul(h.get(a, b), c.get(cc, b)));
                    }
                    row[a * m + cc] = acc;
                }
            }
            eqs.push(row);
        }
    }
    solve(code, m, eqs)
}

pub fn right_idealiser(code: &Code) -> Result<MatrixCode> {
    let (m, n) = code.shape();
    let sf = code.field().small();
    let (mats, checks) = parity_checks(code)?;
    let mut eqs = Vec::with_capacity(mats.len() * checks.len());
    for c in &mats {
        for h in &checks {
            let mut row = vec![0u8; n * n];
            for cc in 0..n {
                for b in 0..n {
                    let mut acc = 0u8;
                    for a in 0..m {
                        acc = sf.add(acc, sf.mul(c.get(a, cc), h.get(a, b)));
                    }
                    row[cc * n + b] = acc;
                }
            }
            eqs.push(row);
        }
    }
    solve(code, n, eqs)
}

/// Whether a matrix algebra is a field: contains the identity, is closed under products,
/// and every nonzero element is invertible (checked on all elements).
pub fn is_field_algebra(a: &MatrixCode) -> Result<bool> {
    let f = a.field();
    let sf = f.small();
    let q = f.q() as u64;
    let k = a.dim();
    let order = q
        .checked_pow(k as u32)
        .filter(|&o| o <= FIELD_CHECK_LIMIT)
        .ok_or_else(|| Error::Unsupported(format!("field check of an algebra of order {}^{k}", f.q())))?;
    let size = a.rows();
    if a.cols() != size || !a.contains(&FqMat::identity(size)) {
        return Ok(false);
    }
    for x in a.basis() {
        for y in a.basis() {
            if !a.contains(&x.mul(sf, y)) {
                return Ok(false);
            }
        }
    }
    let mut digits = vec![0u8; k];
    let mut cur = FqMat::zeros(size, size);
    for _ in 1..order {
        let mut i = 0;
        loop {
            let old = digits[i];
            digits[i] = ((old as u64 + 1) % q) as u8;
            let delta = a.basis()[i].scale(sf, sf.sub(digits[i], old));
            cur = cur.add(sf, &delta);
            if digits[i] != 0 {
                break;
            }
            i += 1;
        }
        if cur.rank(sf) != size {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fqn;
    use crate::rmcode::family_gabidulin;

    #[test]
    fn gabidulin_idealisers_are_fields_of_order_qn() {
        let f = fqn(2, 3).unwrap();
        let c: Code = family_gabidulin(&f, 2, 1).unwrap().into();
        let l = left_idealiser(&c).unwrap();
        let r = right_idealiser(&c).unwrap();
        assert_eq!((l.dim(), r.dim()), (3, 3));
        assert!(is_field_algebra(&l).unwrap());
        assert!(is_field_algebra(&r).unwrap());
    }

    #[test]
    fn full_space_idealiser_is_everything() {
        let f = fqn(2, 2).unwrap();
        let all: Vec<FqMat> = (0..6)
            .map(|i| {
                let mut a = FqMat::zeros(2, 3);
                a.data_mut()[i] = 1;
                a
            })
            .collect();
        let c: Code = MatrixCode::span(&f, 2, 3, &all).unwrap().into();
        assert_eq!(left_idealiser(&c).unwrap().dim(), 4);
        assert_eq!(right_idealiser(&c).unwrap().dim(), 9);
        assert!(!is_field_algebra(&left_idealiser(&c).unwrap()).unwrap());
    }
}
