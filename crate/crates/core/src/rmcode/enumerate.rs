//! Exact weight distributions by enumeration.
//!
//! Three strategies, all exact:
//! * `Exhaustive`: every codeword, stepping an odometer over scalar coefficients so each
//!   step adds one precomputed difference matrix.
//! * `Projective`: for codes that are F_{q^n}-linear on one side, one codeword per
//!   F_{q^n}-projective point; every count is then multiplied by `q^n − 1`.
//! * `KernelLattice`: for any F_q-linear code, counts codewords vanishing on each subspace
//!   `Y ≤ F_q^c` by a rank computation, then inverts over the subspace lattice with
//!   Gaussian binomials (`B_j = Σ_κ E_κ [κ, j]_q`, `E_κ` = codewords with kernel dimension κ).
//!
//! Work is measured in rank evaluations and checked against the budget before starting.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{is_fqn_linear, Code, Side, WeightDistribution};
use crate::gf::{Elem, Field};
use crate::linalg::{gaussian_binomial, rank_bits, rank_in_place, Echelon, FqMat, RrefShape};
use crate::linpoly::LinPoly;
use crate::{Error, Result};

pub const DEFAULT_BUDGET: u64 = 1 << 24;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Strategy {
    #[default]
    Auto,
    Exhaustive,
    Projective,
    KernelLattice,
}

impl std::str::FromStr for Strategy {
    type Err = Error;
    fn from_str(s: &str) -> Result<Strategy> {
        match s {
            "auto" => Ok(Strategy::Auto),
            "exhaustive" => Ok(Strategy::Exhaustive),
            "projective" => Ok(Strategy::Projective),
            "kernel-lattice" => Ok(Strategy::KernelLattice),
            _ => Err(Error::Parse(format!("unknown strategy `{s}`"))),
        }
    }
}

#[derive(Clone, Debug)]
pub struct EnumOptions {
    /// Maximum number of rank evaluations.
    pub budget: u64,
    pub strategy: Strategy,
}

impl Default for EnumOptions {
    fn default() -> Self {
        EnumOptions { budget: DEFAULT_BUDGET, strategy: Strategy::Auto }
    }
}

impl EnumOptions {
    pub fn with_budget(budget: u64) -> Self {
        EnumOptions { budget, strategy: Strategy::Auto }
    }

    pub fn with_strategy(strategy: Strategy) -> Self {
        EnumOptions { strategy, ..Default::default() }
    }
}

/// A weight distribution together with how it was obtained.
#[derive(Clone, Debug, Serialize)]
pub struct Spectrum {
    pub distribution: WeightDistribution,
    pub strategy: Strategy,
    pub side: Option<Side>,
    /// Rank evaluations performed.
    pub work: u64,
}

fn exhaustive_cost(code: &Code) -> u128 {
    let s = code.field().p() as u128;
    s.checked_pow(code.log_p_size() as u32).unwrap_or(u128::MAX)
}

fn lattice_cost(code: &Code) -> Option<u128> {
    if !code.is_fq_linear() {
        return None;
    }
    let (m, n) = code.shape();
    let c = m.min(n) as u32;
    let q = code.field().q() as u128;
    Some((0..=c).map(|j| gaussian_binomial(c, j, q)).sum())
}

fn projective_cost(code: &Code) -> Option<u128> {
    let f = code.field();
    let d = f.degree();
    if !code.log_p_size().is_multiple_of(d) {
        return None;
    }
    let k = (code.log_p_size() / d) as u32;
    let big = f.order() as u128;
    Some((big.checked_pow(k)? - 1) / (big - 1))
}

fn fqn_side(code: &Code) -> Option<Side> {
    [Side::Left, Side::Right].into_iter().find(|&s| is_fqn_linear(code, s))
}

/// Exact weight distribution of `code` within the budget.
pub fn spectrum(code: &Code, opts: &EnumOptions) -> Result<Spectrum> {
    let (m, n) = code.shape();
    let width = m.min(n);
    if code.dim() == 0 {
        let mut counts = vec![0u128; width + 1];
        counts[0] = 1;
        return Ok(Spectrum {
            distribution: WeightDistribution { counts },
            strategy: Strategy::Exhaustive,
            side: None,
            work: 0,
        });
    }
    let budget = opts.budget as u128;
    let over = |needed: u128| Error::BudgetExceeded { needed, budget: opts.budget };
    let (strategy, side, cost) = match opts.strategy {
        Strategy::Exhaustive => (Strategy::Exhaustive, None, exhaustive_cost(code)),
        Strategy::KernelLattice => {
            let c = lattice_cost(code)
                .ok_or_else(|| Error::Unsupported("kernel lattice needs an F_q-linear code".into()))?;
            (Strategy::KernelLattice, None, c)
        }
        Strategy::Projective => {
            let side =
                fqn_side(code).ok_or_else(|| Error::Unsupported("code is not F_{q^n}-linear on either side".into()))?;
            (Strategy::Projective, Some(side), projective_cost(code).expect("F_{q^n}-linear"))
        }
        Strategy::Auto => {
            let mut best = (Strategy::Exhaustive, None, exhaustive_cost(code));
            if let Some(c) = lattice_cost(code) {
                if c < best.2 {
                    best = (Strategy::KernelLattice, None, c);
                }
            }
            if let Some(c) = projective_cost(code) {
                if c < best.2 {
                    if let Some(side) = fqn_side(code) {
                        best = (Strategy::Projective, Some(side), c);
                    }
                }
            }
            best
        }
    };
    if cost > budget {
        return Err(over(cost));
    }
    let (counts, work) = match strategy {
        Strategy::Exhaustive => exhaustive(code),
        Strategy::KernelLattice => kernel_lattice(code),
        Strategy::Projective => projective(code, side.expect("side chosen")),
        Strategy::Auto => unreachable!("resolved above"),
    };
    log::debug!("spectrum via {strategy:?}: {work} rank evaluations");
    Ok(Spectrum { distribution: WeightDistribution { counts }, strategy, side, work })
}

/// Scalar field elements as local F_q codes, zero first.
fn scalar_locals(code: &Code) -> Vec<u8> {
    let f = code.field();
    let e = code.scalar_degree();
    if e == f.h() {
        return (0..f.q()).map(|x| x as u8).collect();
    }
    let sub = f.subfield(e).expect("validated scalar field");
    (0..sub.order()).map(|l| f.to_local(sub.to_big(l as u8)).expect("subfield of F_q")).collect()
}

fn exhaustive(code: &Code) -> (Vec<u128>, u64) {
    let f = code.field();
    let sf = f.small();
    let (m, n) = code.shape();
    let mats = code.matrices();
    let scal = scalar_locals(code);
    let s = scal.len();
    let k = mats.len();
    let len = m * n;
    let width = m.min(n);
    // deltas[i][v]: change of the codeword when digit i steps from v to v+1 (mod s)
    let deltas: Vec<Vec<Vec<u8>>> = mats
        .iter()
        .map(|a| {
            (0..s)
                .map(|v| {
                    let c = sf.sub(scal[(v + 1) % s], scal[v]);
                    a.scale(sf, c).data().to_vec()
                })
                .collect()
        })
        .collect();
    let mut top = 0;
    while top < k && (s as u64).pow(top as u32) < 256 {
        top += 1;
    }
    let low = k - top;
    let chunks = (s as u64).pow(top as u32);
    let bits = f.q() == 2 && n <= 64 && m <= 256;
    let (counts, work) = (0..chunks)
        .into_par_iter()
        .map(|chunk| {
            let mut counts = vec![0u128; width + 1];
            let mut cur = vec![0u8; len];
            let mut t = chunk;
            for i in low..k {
                let v = (t % s as u64) as usize;
                t /= s as u64;
                if v != 0 {
                    let add = mats[i].scale(sf, scal[v]);
                    for (x, &y) in cur.iter_mut().zip(add.data()) {
                        *x = sf.add(*x, y);
                    }
                }
            }
            let mut digits = vec![0usize; low];
            let mut scratch = vec![0u8; len];
            let mut work = 0u64;
            if bits {
                let mut rows: Vec<u64> =
                    (0..m).map(|r| (0..n).fold(0u64, |w, c| w | ((cur[r * n + c] as u64) << c))).collect();
                let dbits: Vec<Vec<u64>> = deltas
                    .iter()
                    .take(low)
                    .map(|d| (0..m).map(|r| (0..n).fold(0u64, |w, c| w | ((d[0][r * n + c] as u64) << c))).collect())
                    .collect();
                let mut tmp = vec![0u64; m];
                loop {
                    tmp.copy_from_slice(&rows);
                    counts[rank_bits(&mut tmp)] += 1;
                    work += 1;
                    let mut i = 0;
                    loop {
                        if i == low {
                            return (counts, work);
                        }
                        for (r, d) in rows.iter_mut().zip(&dbits[i]) {
                            *r ^= d;
                        }
                        digits[i] ^= 1;
                        if digits[i] == 1 {
                            break;
                        }
                        i += 1;
                    }
                }
            }
            loop {
                scratch.copy_from_slice(&cur);
                counts[rank_in_place(sf, &mut scratch, m, n)] += 1;
                work += 1;
                let mut i = 0;
                loop {
                    if i == low {
                        return (counts, work);
                    }
                    let v = digits[i];
                    for (x, &y) in cur.iter_mut().zip(&deltas[i][v]) {
                        if y != 0 {
                            *x = sf.add(*x, y);
                        }
                    }
                    digits[i] = (v + 1) % s;
                    if digits[i] != 0 {
                        break;
                    }
                    i += 1;
                }
            }
        })
        .reduce(|| (vec![0u128; width + 1], 0), merge);
    (counts, work)
}

fn merge(mut a: (Vec<u128>, u64), b: (Vec<u128>, u64)) -> (Vec<u128>, u64) {
    for (x, y) in a.0.iter_mut().zip(&b.0) {
        *x += y;
    }
    a.1 += b.1;
    a
}

fn merge_i128(mut a: (Vec<i128>, u64), b: (Vec<i128>, u64)) -> (Vec<i128>, u64) {
    for (x, y) in a.0.iter_mut().zip(&b.0) {
        *x += y;
    }
    a.1 += b.1;
    a
}

fn kernel_lattice(code: &Code) -> (Vec<u128>, u64) {
    let f = code.field();
    let sf = f.small();
    let q = f.q();
    let (m, n) = code.shape();
    let mut mats = code.matrices();
    let (rows, cols) = if n <= m {
        (m, n)
    } else {
        mats = mats.iter().map(|a| a.transpose()).collect();
        (n, m)
    };
    let k = mats.len();
    let shapes: Vec<(usize, RrefShape)> =
        (1..=cols).flat_map(|j| RrefShape::all(cols, j).into_iter().map(move |s| (j, s))).collect();
    let (b, work) = shapes
        .par_iter()
        .map(|(j, shape)| {
            let j = *j;
            let mut b = vec![0i128; cols + 1];
            let mut work = 0u64;
            let w = rows * j;
            let mut r = vec![0u8; k * w];
            shape.for_each(q, |y| {
                // row i of R_Y: the columns M_i y_t, t < j
                for (i, a) in mats.iter().enumerate() {
                    for t in 0..j {
                        let yt = &y[t * cols..(t + 1) * cols];
                        for row in 0..rows {
                            let mut acc = 0u8;
                            let arow = &a.data()[row * cols..(row + 1) * cols];
                            for c in 0..cols {
                                if yt[c] != 0 && arow[c] != 0 {
                                    acc = sf.add(acc, sf.mul(arow[c], yt[c]));
                                }
                            }
                            r[i * w + t * rows + row] = acc;
                        }
                    }
                }
                let rk = rank_in_place(sf, &mut r, k, w);
                b[j] += (q as i128).pow((k - rk) as u32);
                work += 1;
            });
            (b, work)
        })
        .reduce(|| (vec![0i128; cols + 1], 0), merge_i128);
    let mut b = b;
    b[0] = (q as i128).pow(k as u32);
    // E_κ = B_κ − Σ_{k' > κ} E_{k'} [k', κ]_q
    let mut e = vec![0i128; cols + 1];
    for kappa in (0..=cols).rev() {
        let mut v = b[kappa];
        for kk in kappa + 1..=cols {
            v -= e[kk] * gaussian_binomial(kk as u32, kappa as u32, q as u128) as i128;
        }
        e[kappa] = v;
    }
    let counts = (0..=cols).map(|r| u128::try_from(e[cols - r]).expect("nonnegative count")).collect();
    (counts, work + 1)
}

/// F_{q^n}-basis of the code under the given scalar action, greedily from the F_q-basis.
enum ProjGen {
    SquareLeft(Vec<LinPoly>),
    SquareRight(Vec<LinPoly>),
    MatrixLeft(Vec<FqMat>),
    MatrixRight(Vec<FqMat>),
}

fn fqn_basis_mats(f: &Field, mats: &[FqMat], side: Side) -> Vec<FqMat> {
    let sf = f.small();
    let ts: Vec<FqMat> = f.basis().iter().map(|&b| LinPoly::monomial(f.n(), 0, b).to_matrix(f)).collect();
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for a in mats {
        let imgs: Vec<FqMat> = ts
            .iter()
            .map(|t| match side {
                Side::Left => t.mul(sf, a),
                Side::Right => a.mul(sf, t),
            })
            .collect();
        let mut trial = ech.clone();
        if imgs.iter().all(|x| trial.insert(sf, x.data())) {
            ech = trial;
            out.push(a.clone());
        }
    }
    out
}

fn fqn_basis_polys(f: &Field, polys: &[LinPoly], side: Side) -> Vec<LinPoly> {
    let sf = f.small();
    let n = f.n();
    let flat = |g: &LinPoly| {
        let mut v = vec![0u8; n * n];
        for (i, &c) in g.coeffs.iter().enumerate() {
            f.coords_into(c, &mut v[i * n..(i + 1) * n]);
        }
        v
    };
    let mut ech = Echelon::new();
    let mut out = Vec::new();
    for g in polys {
        let mut trial = ech.clone();
        let ok = f.basis().iter().all(|&b| {
            let img = match side {
                Side::Left => g.scale(f, b),
                Side::Right => g.scale_right(f, b),
            };
            trial.insert(sf, &flat(&img))
        });
        if ok {
            ech = trial;
            out.push(g.clone());
        }
    }
    out
}

impl ProjGen {
    fn new(code: &Code, side: Side) -> ProjGen {
        let f = code.field();
        match (code, side) {
            (Code::Square(c), Side::Left) => ProjGen::SquareLeft(fqn_basis_polys(f, c.basis(), side)),
            (Code::Square(c), Side::Right) => ProjGen::SquareRight(fqn_basis_polys(f, c.basis(), side)),
            (Code::Matrix(c), Side::Left) => ProjGen::MatrixLeft(fqn_basis_mats(f, c.basis(), side)),
            (Code::Matrix(c), Side::Right) => ProjGen::MatrixRight(fqn_basis_mats(f, c.basis(), side)),
        }
    }

    fn len(&self) -> usize {
        match self {
            ProjGen::SquareLeft(g) | ProjGen::SquareRight(g) => g.len(),
            ProjGen::MatrixLeft(g) | ProjGen::MatrixRight(g) => g.len(),
        }
    }

    /// Writes the codeword with F_{q^n}-coordinates `c` into `out` (row-major, local codes).
    fn build(&self, f: &Field, c: &[Elem], out: &mut FqMat) {
        let n = f.n();
        let sf = f.small();
        match self {
            ProjGen::SquareLeft(g) | ProjGen::SquareRight(g) => {
                let mut acc = vec![Elem::ZERO; n];
                for (gi, &ci) in g.iter().zip(c) {
                    if ci.is_zero() {
                        continue;
                    }
                    for (j, &a) in gi.coeffs.iter().enumerate() {
                        if a.is_zero() {
                            continue;
                        }
                        let s = if matches!(self, ProjGen::SquareLeft(_)) { ci } else { f.frob(ci, j as i64) };
                        acc[j] = f.add(acc[j], f.mul(a, s));
                    }
                }
                LinPoly::new(acc).matrix_into(f, out.data_mut());
            }
            ProjGen::MatrixLeft(g) | ProjGen::MatrixRight(g) => {
                out.data_mut().fill(0);
                for (gi, &ci) in g.iter().zip(c) {
                    if ci.is_zero() {
                        continue;
                    }
                    let t = LinPoly::monomial(n, 0, ci).to_matrix(f);
                    let prod = if matches!(self, ProjGen::MatrixLeft(_)) { t.mul(sf, gi) } else { gi.mul(sf, &t) };
                    for (x, &y) in out.data_mut().iter_mut().zip(prod.data()) {
                        *x = sf.add(*x, y);
                    }
                }
            }
        }
    }
}

fn projective(code: &Code, side: Side) -> (Vec<u128>, u64) {
    let f = code.field();
    let (m, n) = code.shape();
    let width = m.min(n);
    let gen = ProjGen::new(code, side);
    let k = gen.len();
    let big = f.order() as u64;
    const CHUNK: u64 = 1 << 14;
    let mut jobs: Vec<(usize, u64, u64)> = Vec::new();
    for lead in 0..k {
        let total = big.pow((k - 1 - lead) as u32);
        let mut start = 0;
        while start < total {
            let end = (start + CHUNK).min(total);
            jobs.push((lead, start, end));
            start = end;
        }
    }
    let (points, work) = jobs
        .par_iter()
        .map(|&(lead, start, end)| {
            let mut counts = vec![0u128; width + 1];
            let mut c = vec![Elem::ZERO; k];
            c[lead] = Elem::ONE;
            let tail = k - 1 - lead;
            let mut t = start;
            for slot in c[lead + 1..].iter_mut() {
                *slot = Elem((t % big) as u32);
                t /= big;
            }
            let mut out = FqMat::zeros(m, n);
            let mut scratch = vec![0u8; m * n];
            for _ in start..end {
                gen.build(f, &c, &mut out);
                scratch.copy_from_slice(out.data());
                counts[rank_in_place(f.small(), &mut scratch, m, n)] += 1;
                for i in 0..tail {
                    let slot = &mut c[lead + 1 + i];
                    slot.0 += 1;
                    if (slot.0 as u64) < big {
                        break;
                    }
                    slot.0 = 0;
                }
            }
            (counts, end - start)
        })
        .reduce(|| (vec![0u128; width + 1], 0), merge);
    let mut counts: Vec<u128> = points.iter().map(|&x| x * (big as u128 - 1)).collect();
    counts[0] = 1;
    (counts, work)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::fqn;
    use crate::rmcode::{family_gabidulin, SquareCode};

    fn all_strategies(code: &Code) -> Vec<WeightDistribution> {
        let mut out = Vec::new();
        for s in [Strategy::Exhaustive, Strategy::KernelLattice, Strategy::Projective] {
            if let Ok(sp) = spectrum(code, &EnumOptions::with_strategy(s)) {
                out.push(sp.distribution);
            }
        }
        out
    }

    #[test]
    fn strategies_agree_on_gabidulin() {
        for (q, n, k) in [(2, 3, 2), (2, 4, 2), (3, 3, 1), (2, 5, 3)] {
            let f = fqn(q, n).unwrap();
            let c: Code = family_gabidulin(&f, k, 1).unwrap().into();
            let ds = all_strategies(&c);
            assert_eq!(ds.len(), 3);
            assert!(ds.windows(2).all(|w| w[0] == w[1]), "{q} {n} {k}: {ds:?}");
        }
    }

    #[test]
    fn g21_over_f8_distribution() {
        let f = fqn(2, 3).unwrap();
        let c: Code = family_gabidulin(&f, 2, 1).unwrap().into();
        let sp = spectrum(&c, &EnumOptions::with_strategy(Strategy::Exhaustive)).unwrap();
        assert_eq!(sp.distribution.counts, vec![1, 0, 49, 14]);
        assert_eq!(sp.work, 64);
    }

    #[test]
    fn budget_is_enforced() {
        let f = fqn(2, 5).unwrap();
        let c: Code = family_gabidulin(&f, 2, 1).unwrap().into();
        let opts = EnumOptions { budget: 10, strategy: Strategy::Exhaustive };
        assert!(matches!(spectrum(&c, &opts), Err(Error::BudgetExceeded { .. })));
    }

    #[test]
    fn non_fqn_linear_code_refuses_projective() {
        let f = fqn(2, 4).unwrap();
        let g = LinPoly::parse(&f, "x + x^q").unwrap();
        let c: Code = SquareCode::span(&f, &[g]).unwrap().into();
        assert!(spectrum(&c, &EnumOptions::with_strategy(Strategy::Projective)).is_err());
        let a = spectrum(&c, &EnumOptions::with_strategy(Strategy::Exhaustive)).unwrap();
        let b = spectrum(&c, &EnumOptions::with_strategy(Strategy::KernelLattice)).unwrap();
        assert_eq!(a.distribution, b.distribution);
        assert_eq!(a.distribution.counts, vec![1, 0, 0, 1, 0]);
    }
}
