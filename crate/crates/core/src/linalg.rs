//! Exact linear algebra over finite fields: generic elimination, dense F_q matrices,
//! and enumeration of subspaces in reduced row echelon form.

use serde::{Deserialize, Serialize};

use crate::gf::SmallField;

/// Field operations needed by Gaussian elimination.
pub trait Scalars {
    type E: Copy + Eq + std::fmt::Debug;
    fn zero(&self) -> Self::E;
    fn one(&self) -> Self::E;
    fn add(&self, a: Self::E, b: Self::E) -> Self::E;
    fn sub(&self, a: Self::E, b: Self::E) -> Self::E;
    fn mul(&self, a: Self::E, b: Self::E) -> Self::E;
    fn neg(&self, a: Self::E) -> Self::E;
    /// Inverse of a nonzero element.
    fn inv(&self, a: Self::E) -> Self::E;
}

/// Brings `rows` to reduced row echelon form in place, dropping zero rows.
/// Returns the pivot columns, ascending; row `i` has a leading one at `pivots[i]`.
pub fn rref<S: Scalars>(s: &S, rows: &mut Vec<Vec<S::E>>) -> Vec<usize> {
    let zero = s.zero();
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == rows.len() {
            break;
        }
        let Some(pr) = (r..rows.len()).find(|&i| rows[i][c] != zero) else {
            continue;
        };
        rows.swap(r, pr);
        let inv = s.inv(rows[r][c]);
        for x in rows[r].iter_mut() {
            *x = s.mul(*x, inv);
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == r || row[c] == zero {
                continue;
            }
            let f = row[c];
            for (x, &y) in row.iter_mut().zip(&pivot_row) {
                if y != zero {
                    *x = s.sub(*x, s.mul(f, y));
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    rows.truncate(r);
    pivots
}

pub fn rank<S: Scalars>(s: &S, rows: &[Vec<S::E>]) -> usize {
    let mut m = rows.to_vec();
    rref(s, &mut m).len()
}

/// Basis of `{x : A x = 0}` where `A` is given by its rows, each of length `ncols`.
pub fn nullspace<S: Scalars>(s: &S, rows: &[Vec<S::E>], ncols: usize) -> Vec<Vec<S::E>> {
    let mut m = rows.to_vec();
    let pivots = rref(s, &mut m);
    let mut is_pivot = vec![false; ncols];
    for &c in &pivots {
        is_pivot[c] = true;
    }
    let mut out = Vec::new();
    for free in (0..ncols).filter(|&c| !is_pivot[c]) {
        let mut v = vec![s.zero(); ncols];
        v[free] = s.one();
        for (i, &pc) in pivots.iter().enumerate() {
            v[pc] = s.neg(m[i][free]);
        }
        out.push(v);
    }
    out
}

/// Inverse of a square matrix given by rows, or `None` if singular.
pub fn invert<S: Scalars>(s: &S, a: &[Vec<S::E>]) -> Option<Vec<Vec<S::E>>> {
    let n = a.len();
    let mut aug: Vec<Vec<S::E>> = a
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { s.one() } else { s.zero() }));
            r
        })
        .collect();
    let pivots = rref(s, &mut aug);
    if pivots.len() < n || pivots[n - 1] != n - 1 {
        return None;
    }
    Some(aug.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Some solution `x` of `Σ_i x_i cols[i] = target`, or `None`.
pub fn solve_combination<S: Scalars>(s: &S, cols: &[Vec<S::E>], target: &[S::E]) -> Option<Vec<S::E>> {
    let k = cols.len();
    let len = target.len();
    let mut aug: Vec<Vec<S::E>> = (0..len)
        .map(|r| {
            let mut row: Vec<S::E> = cols.iter().map(|c| c[r]).collect();
            row.push(target[r]);
            row
        })
        .collect();
    let pivots = rref(s, &mut aug);
    if pivots.last() == Some(&k) {
        return None;
    }
    let mut x = vec![s.zero(); k];
    for (i, &pc) in pivots.iter().enumerate() {
        x[pc] = aug[i][k];
    }
    Some(x)
}

/// Incrementally built row echelon basis supporting membership tests.
#[derive(Clone, Debug)]
pub struct Echelon<E> {
    rows: Vec<Vec<E>>,
    pivots: Vec<usize>,
}

impl<E: Copy + Eq + std::fmt::Debug> Echelon<E> {
    pub fn new() -> Self {
        Echelon { rows: Vec::new(), pivots: Vec::new() }
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// Reduces `v` in place against the stored rows.
    pub fn reduce<S: Scalars<E = E>>(&self, s: &S, v: &mut [E]) {
        let zero = s.zero();
        for (row, &pc) in self.rows.iter().zip(&self.pivots) {
            let f = v[pc];
            if f == zero {
                continue;
            }
            for (x, &y) in v.iter_mut().zip(row) {
                if y != zero {
                    *x = s.sub(*x, s.mul(f, y));
                }
            }
        }
    }

    pub fn contains<S: Scalars<E = E>>(&self, s: &S, v: &[E]) -> bool {
        let mut w = v.to_vec();
        self.reduce(s, &mut w);
        w.iter().all(|&x| x == s.zero())
    }

    /// Adds `v` if independent; returns whether the dimension grew.
    pub fn insert<S: Scalars<E = E>>(&mut self, s: &S, v: &[E]) -> bool {
        let mut w = v.to_vec();
        self.reduce(s, &mut w);
        let Some(pc) = w.iter().position(|&x| x != s.zero()) else {
            return false;
        };
        let inv = s.inv(w[pc]);
        for x in w.iter_mut() {
            *x = s.mul(*x, inv);
        }
        self.rows.push(w);
        self.pivots.push(pc);
        true
    }
}

impl<E: Copy + Eq + std::fmt::Debug> Default for Echelon<E> {
    fn default() -> Self {
        Self::new()
    }
}

/// Rank of a `rows × cols` matrix over a small field, destroying `a`.
pub fn rank_in_place(sf: &SmallField, a: &mut [u8], rows: usize, cols: usize) -> usize {
    if sf.order() == 2 && rows <= 256 && cols <= 64 {
        let mut bits = [0u64; 256];
        for r in 0..rows {
            let mut w = 0u64;
            for (c, &x) in a[r * cols..(r + 1) * cols].iter().enumerate() {
                w |= (x as u64) << c;
            }
            bits[r] = w;
        }
        return rank_bits(&mut bits[..rows]);
    }
    let mut rank = 0;
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(pr) = (rank..rows).find(|&r| a[r * cols + c] != 0) else {
            continue;
        };
        if pr != rank {
            for k in c..cols {
                a.swap(pr * cols + k, rank * cols + k);
            }
        }
        let pinv = sf.inv(a[rank * cols + c]);
        for r in rank + 1..rows {
            let x = a[r * cols + c];
            if x == 0 {
                continue;
            }
            let f = sf.neg(sf.mul(x, pinv));
            let frow = sf.mul_row(f);
            for k in c..cols {
                let y = a[rank * cols + k];
                if y != 0 {
                    a[r * cols + k] = sf.add(a[r * cols + k], frow[y as usize]);
                }
            }
        }
        rank += 1;
    }
    rank
}

/// Rank over F_2 of rows packed as bit masks.
pub fn rank_bits(rows: &mut [u64]) -> usize {
    let mut rank = 0;
    for i in 0..rows.len() {
        let v = rows[i];
        if v == 0 {
            continue;
        }
        let low = v & v.wrapping_neg();
        for r in rows.iter_mut().skip(i + 1) {
            if *r & low != 0 {
                *r ^= v;
            }
        }
        rank += 1;
    }
    rank
}

/// Dense matrix over a small field, row-major local codes.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<Vec<u8>>", try_from = "Vec<Vec<u8>>")]
pub struct FqMat {
    rows: usize,
    cols: usize,
    data: Vec<u8>,
}

impl From<FqMat> for Vec<Vec<u8>> {
    fn from(m: FqMat) -> Self {
        m.to_rows()
    }
}

impl TryFrom<Vec<Vec<u8>>> for FqMat {
    type Error = crate::Error;
    fn try_from(rows: Vec<Vec<u8>>) -> crate::Result<Self> {
        FqMat::from_rows(&rows)
    }
}

impl FqMat {
    pub fn zeros(rows: usize, cols: usize) -> FqMat {
        FqMat { rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(n: usize) -> FqMat {
        let mut m = FqMat::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = 1;
        }
        m
    }

    pub fn from_data(rows: usize, cols: usize, data: Vec<u8>) -> FqMat {
        assert_eq!(data.len(), rows * cols, "matrix data length");
        FqMat { rows, cols, data }
    }

    pub fn from_rows(rows: &[Vec<u8>]) -> crate::Result<FqMat> {
        let cols = rows.first().map_or(0, |r| r.len());
        if let Some(bad) = rows.iter().find(|r| r.len() != cols) {
            return Err(crate::Error::LengthMismatch { expected: cols, got: bad.len() });
        }
        Ok(FqMat { rows: rows.len(), cols, data: rows.concat() })
    }

    pub fn to_rows(&self) -> Vec<Vec<u8>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [u8] {
        &mut self.data
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> u8 {
        self.data[r * self.cols + c]
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: u8) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn transpose(&self) -> FqMat {
        let mut t = FqMat::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                t.data[c * self.rows + r] = self.data[r * self.cols + c];
            }
        }
        t
    }

    pub fn mul(&self, sf: &SmallField, other: &FqMat) -> FqMat {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let mut out = FqMat::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.data[i * self.cols + k];
                if a == 0 {
                    continue;
                }
                let row = sf.mul_row(a);
                for j in 0..other.cols {
                    let b = other.data[k * other.cols + j];
                    if b != 0 {
                        let o = &mut out.data[i * other.cols + j];
                        *o = sf.add(*o, row[b as usize]);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, sf: &SmallField, other: &FqMat) -> FqMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sf.add(a, b)).collect();
        FqMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, sf: &SmallField, other: &FqMat) -> FqMat {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape");
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| sf.sub(a, b)).collect();
        FqMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, sf: &SmallField, c: u8) -> FqMat {
        let row = sf.mul_row(c);
        let data = self.data.iter().map(|&a| row[a as usize]).collect();
        FqMat { rows: self.rows, cols: self.cols, data }
    }

    pub fn rank(&self, sf: &SmallField) -> usize {
        let mut d = self.data.clone();
        rank_in_place(sf, &mut d, self.rows, self.cols)
    }

    /// `Σ_k self[r][k] · v[k]`, as a column vector.
    pub fn mul_vec(&self, sf: &SmallField, v: &[u8]) -> Vec<u8> {
        (0..self.rows)
            .map(|r| {
                let mut acc = 0u8;
                for (k, &x) in self.data[r * self.cols..(r + 1) * self.cols].iter().enumerate() {
                    if x != 0 && v[k] != 0 {
                        acc = sf.add(acc, sf.mul(x, v[k]));
                    }
                }
                acc
            })
            .collect()
    }
}

/// Gaussian binomial coefficient `[n, k]_q`.
pub fn gaussian_binomial(n: u32, k: u32, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut res: u128 = 1;
    for t in 1..=k {
        res = res * (q.pow(n - t + 1) - 1) / (q.pow(t) - 1);
    }
    res
}

/// One pivot pattern of `j × ncols` matrices in reduced row echelon form.
#[derive(Clone, Debug)]
pub struct RrefShape {
    pub pivots: Vec<usize>,
    /// Flat positions `row * ncols + col` of the free entries.
    pub free: Vec<usize>,
    pub ncols: usize,
}

impl RrefShape {
    /// All pivot patterns for `j`-dimensional subspaces of `F^ncols`.
    pub fn all(ncols: usize, j: usize) -> Vec<RrefShape> {
        let mut out = Vec::new();
        let mut piv: Vec<usize> = (0..j).collect();
        loop {
            let mut free = Vec::new();
            for (r, &pc) in piv.iter().enumerate() {
                for c in pc + 1..ncols {
                    if !piv.contains(&c) {
                        free.push(r * ncols + c);
                    }
                }
            }
            out.push(RrefShape { pivots: piv.clone(), free, ncols });
            // next combination
            let mut i = j;
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if piv[i] < ncols - j + i {
                    piv[i] += 1;
                    for t in i + 1..j {
                        piv[t] = piv[t - 1] + 1;
                    }
                    break;
                }
            }
        }
    }

    pub fn count(&self, q: u32) -> u128 {
        (q as u128).pow(self.free.len() as u32)
    }

    /// Calls `f` on every matrix (row-major, `j × ncols`) with this pattern.
    pub fn for_each(&self, q: u32, mut f: impl FnMut(&[u8])) {
        self.for_each_while(q, |m| {
            f(m);
            true
        });
    }

    /// Like `for_each`, stopping once `f` returns false; returns whether it ran to the end.
    pub fn for_each_while(&self, q: u32, mut f: impl FnMut(&[u8]) -> bool) -> bool {
        let j = self.pivots.len();
        let mut m = vec![0u8; j * self.ncols];
        for (r, &pc) in self.pivots.iter().enumerate() {
            m[r * self.ncols + pc] = 1;
        }
        loop {
            if !f(&m) {
                return false;
            }
            let mut i = 0;
            loop {
                if i == self.free.len() {
                    return true;
                }
                let pos = self.free[i];
                if (m[pos] as u32) + 1 < q {
                    m[pos] += 1;
                    break;
                }
                m[pos] = 0;
                i += 1;
            }
        }
    }
}

/// Calls `f` on an RREF basis of every `j`-dimensional subspace of `F_q^ncols`.
pub fn for_each_subspace(q: u32, ncols: usize, j: usize, mut f: impl FnMut(&[u8])) {
    if j == 0 {
        f(&[]);
        return;
    }
    if j > ncols {
        return;
    }
    for shape in RrefShape::all(ncols, j) {
        shape.for_each(q, &mut f);
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_binomials() {
        assert_eq!(gaussian_binomial(6, 4, 2), 651);
        assert_eq!(gaussian_binomial(4, 2, 2), 35);
        assert_eq!(gaussian_binomial(3, 1, 3), 13);
        assert_eq!(gaussian_binomial(5, 0, 7), 1);
        assert_eq!(gaussian_binomial(2, 3, 2), 0);
    }

    #[test]
    fn subspace_counts_match_binomials() {
        for q in [2u32, 3] {
            for n in 1..=4 {
                for j in 0..=n {
                    let mut count = 0u128;
                    for_each_subspace(q, n, j, |_| count += 1);
                    assert_eq!(count, gaussian_binomial(n as u32, j as u32, q as u128));
                }
            }
        }
    }

    #[test]
    fn rank_paths_agree() {
        let f2 = SmallField::prime(2);
        let m = FqMat::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(m.rank(&f2), 2);
        let f3 = SmallField::prime(3);
        let m = FqMat::from_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![1, 0, 1]]).unwrap();
        assert_eq!(m.rank(&f3), 3);
    }

    #[test]
    fn nullspace_and_inverse() {
        let f3 = SmallField::prime(3);
        let a = vec![vec![1u8, 2, 0], vec![0, 1, 1]];
        let ns = nullspace(&f3, &a, 3);
        assert_eq!(ns.len(), 1);
        for row in &a {
            let dot = row.iter().zip(&ns[0]).fold(0u8, |acc, (&x, &y)| f3.add(acc, f3.mul(x, y)));
            assert_eq!(dot, 0);
        }
        let m = vec![vec![2u8, 1], vec![1, 1]];
        let inv = invert(&f3, &m).unwrap();
        let prod = FqMat::from_rows(&m).unwrap().mul(&f3, &FqMat::from_rows(&inv).unwrap());
        assert_eq!(prod, FqMat::identity(2));
        assert!(invert(&f3, &[vec![1u8, 2], vec![2, 1]]).is_none());
    }

    #[test]
    fn echelon_membership() {
        let f2 = SmallField::prime(2);
        let mut e = Echelon::new();
        assert!(e.insert(&f2, &[1, 1, 0]));
        assert!(e.insert(&f2, &[0, 1, 1]));
        assert!(!e.insert(&f2, &[1, 0, 1]));
        assert!(e.contains(&f2, &[1, 0, 1]));
        assert!(!e.contains(&f2, &[1, 0, 0]));
        let x = solve_combination(&f2, &[vec![1, 1, 0], vec![0, 1, 1]], &[1, 0, 1]).unwrap();
        assert_eq!(x, vec![1, 1]);
    }
}
