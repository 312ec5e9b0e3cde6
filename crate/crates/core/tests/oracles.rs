//! Independent brute-force oracles. Field arithmetic here is schoolbook polynomial
//! arithmetic over F_p modulo the field's own modulus, and ranks are computed by a separate
//! elimination; only prime q is used so F_q-coordinates are polynomial digits. Values that
//! the oracles produce are frozen as literals.

use std::collections::HashSet;

use rmlab::bridge::code_from_f;
use rmlab::gf::{fqn, Elem, Field};
use rmlab::linalg::{for_each_subspace, gaussian_binomial, RrefShape};
use rmlab::linpoly::LinPoly;
use rmlab::linset::{is_scattered, linear_set, max_scattered_rank_search, subspace_from_map};
use rmlab::rmcode::{
    delsarte_dual, family_gabidulin, left_idealiser, right_idealiser, weight_distribution, Code, EnumOptions, Strategy,
};

/// F_{p^D} as F_p[x]/(m); elements are digit vectors of length D.
struct Naive {
    p: u64,
    m: Vec<u64>,
    d: usize,
}

impl Naive {
    fn of(f: &Field) -> Naive {
        let m: Vec<u64> = f.spec().modulus.iter().map(|&c| c as u64).collect();
        Naive { p: f.p() as u64, d: m.len() - 1, m }
    }

    fn order(&self) -> u64 {
        self.p.pow(self.d as u32)
    }

    fn digits(&self, mut c: u64) -> Vec<u64> {
        (0..self.d)
            .map(|_| {
                let r = c % self.p;
                c /= self.p;
                r
            })
            .collect()
    }

    fn code(&self, v: &[u64]) -> u64 {
        v.iter().rev().fold(0, |acc, &x| acc * self.p + x)
    }

    fn add(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        self.code(&x.iter().zip(&y).map(|(u, v)| (u + v) % self.p).collect::<Vec<_>>())
    }

    fn mul(&self, a: u64, b: u64) -> u64 {
        let (x, y) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * self.d];
        for (i, u) in x.iter().enumerate() {
            for (j, v) in y.iter().enumerate() {
                prod[i + j] = (prod[i + j] + u * v) % self.p;
            }
        }
        // the modulus is monic
        for top in (self.d..2 * self.d).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            for k in 0..=self.d {
                let t = top - self.d + k;
                prod[t] = (prod[t] + self.p * self.p - c * self.m[k] % self.p) % self.p;
            }
        }
        self.code(&prod[..self.d])
    }

    fn pow(&self, a: u64, mut e: u64) -> u64 {
        let (mut base, mut acc) = (a, 1);
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn inv(&self, a: u64) -> u64 {
        self.pow(a, self.order() - 2)
    }

    /// `Σ a_i x^{p^i}` for q = p.
    fn eval(&self, coeffs: &[u64], x: u64) -> u64 {
        coeffs.iter().enumerate().fold(0, |acc, (i, &a)| self.add(acc, self.mul(a, self.pow(x, self.p.pow(i as u32)))))
    }
}

/// Rank over F_p by plain Gaussian elimination.
fn rank_mod_p(mut rows: Vec<Vec<u64>>, p: u64) -> usize {
    let cols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..rows.len()).find(|&r| rows[r][c] != 0) else { continue };
        rows.swap(rank, piv);
        let inv = (1..p).find(|&x| x * rows[rank][c] % p == 1).unwrap();
        for r in 0..rows.len() {
            if r != rank && rows[r][c] != 0 {
                let f = rows[r][c] * inv % p;
                for k in 0..cols {
                    rows[r][k] = (rows[r][k] + p * p - f * rows[rank][k] % p) % p;
                }
            }
        }
        rank += 1;
    }
    rank
}

#[test]
fn field_tables_match_schoolbook_arithmetic() {
    for (q, n) in [(2, 3), (2, 4), (2, 6), (3, 2), (3, 3), (3, 4), (5, 2), (7, 2)] {
        let f = fqn(q, n).unwrap();
        let nv = Naive::of(&f);
        for a in 0..f.order() {
            for b in 0..f.order() {
                let (x, y) = (Elem(a), Elem(b));
                assert_eq!(f.mul(x, y).0 as u64, nv.mul(a as u64, b as u64), "q={q} n={n} {a}·{b}");
                assert_eq!(f.add(x, y).0 as u64, nv.add(a as u64, b as u64));
            }
            assert_eq!(f.frob(Elem(a), 1).0 as u64, nv.pow(a as u64, q as u64));
        }
    }
}

/// Counts codewords `a x + b x^p` of each rank, evaluating on the polynomial basis.
fn naive_gabidulin_weights(q: u32, n: u32) -> Vec<u64> {
    let f = fqn(q, n).unwrap();
    let nv = Naive::of(&f);
    let basis: Vec<u64> = (0..nv.d).map(|i| nv.p.pow(i as u32)).collect();
    let mut counts = vec![0u64; n as usize + 1];
    for a in 0..nv.order() {
        for b in 0..nv.order() {
            let rows: Vec<Vec<u64>> = basis.iter().map(|&x| nv.digits(nv.eval(&[a, b], x))).collect();
            counts[rank_mod_p(rows, nv.p)] += 1;
        }
    }
    counts
}

#[test]
fn gabidulin_weights_by_schoolbook_enumeration() {
    let opts = EnumOptions { strategy: Strategy::Exhaustive, ..Default::default() };
    for (n, frozen) in [(3, vec![1, 0, 49, 14]), (4, vec![1, 0, 0, 225, 30])] {
        let naive = naive_gabidulin_weights(2, n);
        assert_eq!(naive, frozen);
        let f = fqn(2, n).unwrap();
        let lib = weight_distribution(&family_gabidulin(&f, 2, 1).unwrap().into(), &opts).unwrap();
        assert_eq!(lib.counts.iter().map(|&c| c as u64).collect::<Vec<_>>(), frozen);
    }
}

/// `U_f` is scattered iff `f(x)/x` takes `(q^n − 1)/(q − 1)` values on nonzero x.
fn naive_scattered(nv: &Naive, coeffs: &[u64]) -> bool {
    let vals: HashSet<u64> = (1..nv.order()).map(|x| nv.mul(nv.eval(coeffs, x), nv.inv(x))).collect();
    vals.len() as u64 == (nv.order() - 1) / (nv.p - 1)
}

#[test]
fn scatteredness_matches_quotient_count() {
    // (q, n, coefficient codes of x, x^q, …), frozen verdict
    let cases: [(u32, u32, Vec<u64>, bool); 6] = [
        (2, 5, vec![0, 1, 0, 0, 0], true),
        (2, 4, vec![0, 0, 1, 0], false),
        (2, 3, vec![0, 1, 0], true),
        (2, 6, vec![0, 0, 1, 0, 0, 0], false),
        (2, 6, vec![0, 0, 0, 0, 0, 1], true),
        (3, 4, vec![0, 3, 0, 1], true),
    ];
    for (q, n, coeffs, frozen) in cases {
        let f = fqn(q, n).unwrap();
        let nv = Naive::of(&f);
        assert_eq!(naive_scattered(&nv, &coeffs), frozen, "q={q} n={n} {coeffs:?}");
        let poly = LinPoly::new(coeffs.iter().map(|&c| Elem(c as u32)).collect());
        let u = subspace_from_map(&f, &poly).unwrap();
        assert_eq!(is_scattered(&u, 1 << 20).unwrap(), frozen);
    }
}

#[test]
fn linear_set_sizes_by_normalisation() {
    for (s, frozen) in [(1usize, 15u64), (2, 5)] {
        let f = fqn(2, 4).unwrap();
        let nv = Naive::of(&f);
        let mut coeffs = vec![0u64; 4];
        coeffs[s] = 1;
        let pts: HashSet<u64> = (1..nv.order()).map(|x| nv.mul(nv.eval(&coeffs, x), nv.inv(x))).collect();
        assert_eq!(pts.len() as u64, frozen);
        let u = subspace_from_map(&f, &LinPoly::monomial(4, s, Elem::ONE)).unwrap();
        assert_eq!(linear_set(&u, 1 << 20).unwrap().size, frozen as u128);
    }
}

#[test]
fn subspace_counts_by_distinct_spans() {
    // k = 2 subspaces of F_2^6 as sets of their three nonzero vectors
    let mut spans = HashSet::new();
    for a in 1u64..64 {
        for b in 1u64..64 {
            if a != b {
                let mut s = [a, b, a ^ b];
                s.sort();
                spans.insert(s);
            }
        }
    }
    assert_eq!(spans.len(), 651);
    assert_eq!(gaussian_binomial(6, 4, 2), 651);
    assert_eq!(gaussian_binomial(6, 2, 2), 651);
    let by_shape: u128 = RrefShape::all(6, 4).iter().map(|s| s.count(2)).sum();
    assert_eq!(by_shape, 651);
    let mut seen = 0;
    for_each_subspace(3, 4, 2, |_| seen += 1);
    assert_eq!(seen as u128, gaussian_binomial(4, 2, 3));
    assert_eq!(seen, 130);
}

fn mat_mul(a: &[Vec<u64>], b: &[Vec<u64>], p: u64) -> Vec<Vec<u64>> {
    let (m, k, n) = (a.len(), b.len(), b[0].len());
    (0..m).map(|i| (0..n).map(|j| (0..k).map(|t| a[i][t] * b[t][j]).sum::<u64>() % p).collect()).collect()
}

fn flat(m: &[Vec<u64>]) -> Vec<u64> {
    m.iter().flatten().copied().collect()
}

#[test]
fn idealisers_by_exhausting_all_matrices() {
    let f = fqn(2, 3).unwrap();
    let code: Code = family_gabidulin(&f, 2, 1).unwrap().into();
    let mats: Vec<Vec<Vec<u64>>> = code
        .matrices()
        .iter()
        .map(|m| m.to_rows().iter().map(|r| r.iter().map(|&x| x as u64).collect()).collect())
        .collect();
    let basis: Vec<Vec<u64>> = mats.iter().map(|m| flat(m)).collect();
    let dim = rank_mod_p(basis.clone(), 2);
    let inside = |m: &Vec<Vec<u64>>| {
        let mut rows = basis.clone();
        rows.push(flat(m));
        rank_mod_p(rows, 2) == dim
    };
    let (mut left, mut right) = (0, 0);
    for bits in 0u32..512 {
        let y: Vec<Vec<u64>> = (0..3).map(|i| (0..3).map(|j| ((bits >> (3 * i + j)) & 1) as u64).collect()).collect();
        if mats.iter().all(|c| inside(&mat_mul(&y, c, 2))) {
            left += 1;
        }
        if mats.iter().all(|c| inside(&mat_mul(c, &y, 2))) {
            right += 1;
        }
    }
    assert_eq!((left, right), (8, 8));
    assert_eq!(1usize << left_idealiser(&code).unwrap().dim(), left);
    assert_eq!(1usize << right_idealiser(&code).unwrap().dim(), right);
}

#[test]
fn delsarte_dual_is_trace_orthogonal() {
    let f = fqn(2, 4).unwrap();
    let code: Code = family_gabidulin(&f, 2, 1).unwrap().into();
    let m = code.to_matrix_code().unwrap();
    let dual = delsarte_dual(&Code::Matrix(m.clone())).unwrap();
    assert_eq!(m.dim() + dual.dim(), 16);
    for a in m.basis() {
        for b in dual.matrices() {
            let ip: u64 = a.data().iter().zip(b.data()).map(|(&x, &y)| (x as u64) * (y as u64)).sum();
            assert_eq!(ip % 2, 0);
        }
    }
}

#[test]
fn maximum_scattered_rank_by_span_sets() {
    // every subspace of F_4^2 = F_2^4 as the set of its vectors; scattered means each
    // F_4-line meets it in at most one nonzero vector
    let f = fqn(2, 2).unwrap();
    let nv = Naive::of(&f);
    let line_of = |v: u64| -> (u64, u64) {
        let (x, y) = (v & 3, v >> 2);
        let lead = if x != 0 { x } else { y };
        let inv = nv.inv(lead);
        (nv.mul(x, inv), nv.mul(y, inv))
    };
    let mut best = 0;
    for set in 1u32..(1 << 16) {
        let vecs: Vec<u64> = (0..16).filter(|&v| set >> v & 1 == 1).collect();
        // closed under addition and containing 0
        if !vecs.contains(&0) || !vecs.iter().all(|&a| vecs.iter().all(|&b| vecs.contains(&(a ^ b)))) {
            continue;
        }
        let k = (vecs.len() as f64).log2() as usize;
        let lines: HashSet<(u64, u64)> = vecs.iter().filter(|&&v| v != 0).map(|&v| line_of(v)).collect();
        if lines.len() == vecs.len() - 1 {
            best = best.max(k);
        }
    }
    assert_eq!(best, 2);
    assert_eq!(max_scattered_rank_search(2, 2, 2, 1 << 20).unwrap().k, 2);
}

#[test]
fn c_f_of_frobenius_is_gabidulin() {
    let f = fqn(3, 3).unwrap();
    let cf = code_from_f(&f, &LinPoly::monomial(3, 1, Elem::ONE)).unwrap();
    assert_eq!(cf, family_gabidulin(&f, 2, 1).unwrap());
}
