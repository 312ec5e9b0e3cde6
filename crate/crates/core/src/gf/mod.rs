//! Finite fields F_{p^{hn}} viewed as degree-n extensions of F_q, q = p^h.
//!
//! Elements are encoded by the base-p integer whose i-th digit is the coefficient of t^i
//! in the polynomial model modulo the field's modulus. Fields with at most 2^16 elements
//! use log/antilog/Zech tables; larger ones fall back to polynomial arithmetic.
//! Subfields are fixed fields of Frobenius inside the one arithmetic domain.

mod moduli;
mod poly;
mod small;
pub mod tower;

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use serde::{Deserialize, Serialize};

use crate::linalg::{self, Echelon, Scalars};
use crate::{Error, Result};
pub use small::SmallField;
pub use tower::Tower;

/// Largest field order that gets log/antilog tables.
pub const TABLE_LIMIT: u64 = 1 << 16;

/// Field element as its base-p integer code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Elem(pub u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Field parameters: F_{p^{hn}} as an extension of F_{p^h}, modulus in ascending coefficients.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldSpec {
    pub p: u32,
    pub h: u32,
    pub n: u32,
    pub modulus: Vec<u32>,
}

impl FieldSpec {
    /// Spec with the built-in default modulus of degree `hn`.
    pub fn new(p: u32, h: u32, n: u32) -> Result<FieldSpec> {
        FieldSpec::with_moduli(p, h, n, &ModulusTable::builtin())
    }

    pub fn with_moduli(p: u32, h: u32, n: u32, table: &ModulusTable) -> Result<FieldSpec> {
        let degree = (h * n) as usize;
        let modulus = table.lookup(p, degree).ok_or(Error::NoDefaultModulus { p, degree })?;
        Ok(FieldSpec { p, h, n, modulus })
    }

    /// Spec for F_{q^n} given q as a prime power.
    pub fn for_q(q: u32, n: u32, table: &ModulusTable) -> Result<FieldSpec> {
        let (p, h) = prime_power(q).ok_or_else(|| Error::InvalidField(format!("{q} is not a prime power")))?;
        FieldSpec::with_moduli(p, h, n, table)
    }
}

/// Splits `q = p^h`, if `q` is a prime power.
pub fn prime_power(q: u32) -> Option<(u32, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q.is_multiple_of(*d))?;
    let mut h = 0;
    let mut x = q;
    while x.is_multiple_of(p) {
        x /= p;
        h += 1;
    }
    (x == 1).then_some((p, h))
}

/// Default irreducible moduli, with optional overrides.
///
/// The built-in table holds, for each (p, D) used by the library, the primitive monic
/// polynomial of degree D whose ascending coefficient vector read in base p is smallest.
#[derive(Clone, Debug, Default)]
pub struct ModulusTable {
    overrides: Vec<(u32, Vec<u32>)>,
}

#[derive(Deserialize)]
struct ModulusEntry {
    p: u32,
    modulus: Vec<u32>,
}

impl ModulusTable {
    pub fn builtin() -> ModulusTable {
        ModulusTable::default()
    }

    /// Overrides from JSON: `[{"p":2,"modulus":[1,1,0,1]}, …]`.
    pub fn from_json(text: &str) -> Result<ModulusTable> {
        let entries: Vec<ModulusEntry> = serde_json::from_str(text)?;
        Ok(ModulusTable { overrides: entries.into_iter().map(|e| (e.p, e.modulus)).collect() })
    }

    /// Reads overrides from the file named by `RMLAB_MODULI`, if set.
    pub fn from_env() -> Result<ModulusTable> {
        match std::env::var_os("RMLAB_MODULI") {
            Some(path) => ModulusTable::from_json(&std::fs::read_to_string(path)?),
            None => Ok(ModulusTable::builtin()),
        }
    }

    pub fn lookup(&self, p: u32, degree: usize) -> Option<Vec<u32>> {
        if let Some((_, m)) = self.overrides.iter().find(|(pp, m)| *pp == p && m.len() == degree + 1) {
            return Some(m.clone());
        }
        moduli::DEFAULT_MODULI
            .iter()
            .find(|(pp, m)| *pp == p && m.len() == degree + 1)
            .map(|(_, m)| m.iter().map(|&c| c as u32).collect())
    }

    /// All built-in `(p, modulus)` pairs.
    pub fn builtin_entries() -> impl Iterator<Item = (u32, Vec<u32>)> {
        moduli::DEFAULT_MODULI.iter().map(|(p, m)| (*p, m.iter().map(|&c| c as u32).collect()))
    }
}

const NO_LOG: u32 = u32::MAX;

enum Arith {
    Table { exp: Vec<u32>, log: Vec<u32>, zech: Vec<u32> },
    Poly,
}

/// Raw arithmetic of F_p[t]/(m(t)).
struct Core {
    p: u32,
    deg: usize,
    order: u32,
    modulus: Vec<u32>,
    arith: Arith,
    /// `(order − 1) / 2`, the log of −1 for odd p.
    half: u32,
    /// For p = 2: the modulus as a bit mask.
    mod_full: u64,
}

impl Core {
    #[inline]
    fn m(&self) -> u64 {
        self.order as u64 - 1
    }

    fn digits(&self, mut x: u32) -> [u32; 32] {
        let mut d = [0u32; 32];
        for slot in d.iter_mut().take(self.deg) {
            *slot = x % self.p;
            x /= self.p;
        }
        d
    }

    fn from_digits(&self, d: &[u32]) -> u32 {
        d[..self.deg].iter().rev().fold(0u32, |acc, &x| acc * self.p + x)
    }

    fn digit_add(&self, a: u32, b: u32) -> u32 {
        let (da, db) = (self.digits(a), self.digits(b));
        let mut s = [0u32; 32];
        for i in 0..self.deg {
            s[i] = (da[i] + db[i]) % self.p;
        }
        self.from_digits(&s)
    }

    fn digit_neg(&self, a: u32) -> u32 {
        let d = self.digits(a);
        let mut s = [0u32; 32];
        for i in 0..self.deg {
            s[i] = (self.p - d[i]) % self.p;
        }
        self.from_digits(&s)
    }

    #[inline]
    fn add(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            return a ^ b;
        }
        match &self.arith {
            Arith::Table { exp, log, zech } => {
                if a == 0 {
                    return b;
                }
                if b == 0 {
                    return a;
                }
                let (la, lb) = (log[a as usize], log[b as usize]);
                let m = self.order - 1;
                let d = if lb >= la { lb - la } else { lb + m - la };
                let z = zech[d as usize];
                if z == NO_LOG {
                    0
                } else {
                    exp[(la + z) as usize]
                }
            }
            Arith::Poly => self.digit_add(a, b),
        }
    }

    #[inline]
    fn neg(&self, a: u32) -> u32 {
        if self.p == 2 || a == 0 {
            return a;
        }
        match &self.arith {
            Arith::Table { exp, log, .. } => exp[(log[a as usize] + self.half) as usize],
            Arith::Poly => self.digit_neg(a),
        }
    }

    #[inline]
    fn mul(&self, a: u32, b: u32) -> u32 {
        if a == 0 || b == 0 {
            return 0;
        }
        match &self.arith {
            Arith::Table { exp, log, .. } => exp[(log[a as usize] + log[b as usize]) as usize],
            Arith::Poly => self.poly_mul(a, b),
        }
    }

    fn poly_mul(&self, a: u32, b: u32) -> u32 {
        let d = self.deg;
        if self.p == 2 {
            let mut acc = 0u64;
            for i in 0..d {
                if (b >> i) & 1 == 1 {
                    acc ^= (a as u64) << i;
                }
            }
            let full = self.mod_full;
            for k in (d..2 * d).rev() {
                if (acc >> k) & 1 == 1 {
                    acc ^= full << (k - d);
                }
            }
            return acc as u32;
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let p = self.p;
        let mut c = [0u32; 64];
        for i in 0..d {
            if da[i] == 0 {
                continue;
            }
            for j in 0..d {
                c[i + j] = (c[i + j] + da[i] * db[j]) % p;
            }
        }
        for k in (d..2 * d - 1).rev() {
            let f = c[k];
            if f == 0 {
                continue;
            }
            c[k] = 0;
            for i in 0..d {
                c[k - d + i] = (c[k - d + i] + f * (p - self.modulus[i])) % p;
            }
        }
        self.from_digits(&c)
    }

    fn pow(&self, a: u32, e: u64) -> u32 {
        if a == 0 {
            return if e == 0 { 1 } else { 0 };
        }
        let e = e % self.m();
        match &self.arith {
            Arith::Table { exp, log, .. } => exp[((log[a as usize] as u64 * e) % self.m()) as usize],
            Arith::Poly => {
                let (mut r, mut b, mut e) = (1u32, a, e);
                while e > 0 {
                    if e & 1 == 1 {
                        r = self.poly_mul(r, b);
                    }
                    b = self.poly_mul(b, b);
                    e >>= 1;
                }
                r
            }
        }
    }

    fn inv(&self, a: u32) -> u32 {
        assert!(a != 0, "zero has no inverse");
        match &self.arith {
            Arith::Table { exp, log, .. } => {
                let m = self.order - 1;
                exp[((m - log[a as usize]) % m) as usize]
            }
            Arith::Poly => self.pow(a, self.m() - 1),
        }
    }
}

/// A subfield F_{p^e}, with tables over local codes and an F_p-basis of powers of a
/// multiplicative generator.
#[derive(Debug)]
pub struct Subfield {
    degree: usize,
    small: SmallField,
    big: Vec<Elem>,
    fp_basis: Vec<Elem>,
    tuple_local: Vec<u8>,
}

impl Subfield {
    fn build(core: &Core, primitive: u32, e: usize) -> Result<Subfield> {
        if e == 0 || !core.deg.is_multiple_of(e) {
            return Err(Error::BadSubfield { sub: e, n: core.deg });
        }
        let size = (core.p as u64).pow(e as u32);
        if size > 256 {
            return Err(Error::Unsupported(format!("subfield of order {size} exceeds the 256-element kernel limit")));
        }
        let zeta = core.pow(primitive, core.m() / (size - 1));
        let mut fp_basis = vec![1u32];
        for _ in 1..e {
            fp_basis.push(core.mul(*fp_basis.last().unwrap(), zeta));
        }
        let mut pairs = Vec::with_capacity(size as usize);
        for idx in 0..size as u32 {
            let mut x = 0u32;
            let mut t = idx;
            for &w in &fp_basis {
                for _ in 0..t % core.p {
                    x = core.add(x, w);
                }
                t /= core.p;
            }
            pairs.push((x, idx));
        }
        pairs.sort_unstable();
        let big: Vec<Elem> = pairs.iter().map(|&(x, _)| Elem(x)).collect();
        let mut tuple_local = vec![0u8; size as usize];
        for (local, &(_, idx)) in pairs.iter().enumerate() {
            tuple_local[idx as usize] = local as u8;
        }
        let local = |x: u32| big.binary_search(&Elem(x)).expect("closed subfield") as u32;
        let small = SmallField::from_ops(
            core.p,
            size as u32,
            |a, b| local(core.add(big[a as usize].0, big[b as usize].0)),
            |a, b| local(core.mul(big[a as usize].0, big[b as usize].0)),
        );
        Ok(Subfield { degree: e, small, big, fp_basis: fp_basis.into_iter().map(Elem).collect(), tuple_local })
    }

    /// Degree over the prime field.
    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u32 {
        self.small.order()
    }

    pub fn small(&self) -> &SmallField {
        &self.small
    }

    pub fn to_big(&self, local: u8) -> Elem {
        self.big[local as usize]
    }

    pub fn to_local(&self, x: Elem) -> Option<u8> {
        self.big.binary_search(&x).ok().map(|i| i as u8)
    }

    /// All elements in ascending big-field code order.
    pub fn elements(&self) -> &[Elem] {
        &self.big
    }
}

/// A basis of the field over a subfield, with coordinate maps.
#[derive(Debug)]
pub struct RelBasis {
    sub: Arc<Subfield>,
    elems: Vec<Elem>,
    /// Inverse of the F_p-expansion matrix, `deg × deg`, row-major over F_p.
    inv: Vec<u8>,
    deg: usize,
    p: u32,
}

impl RelBasis {
    fn build(core: &Core, sub: Arc<Subfield>, candidates: impl Iterator<Item = u32>) -> RelBasis {
        let fp = SmallField::prime(core.p);
        let e = sub.degree;
        let need = core.deg / e;
        let mut ech: Echelon<u8> = Echelon::new();
        let mut elems = Vec::new();
        let vec_of = |x: u32| core.digits(x)[..core.deg].iter().map(|&d| d as u8).collect::<Vec<u8>>();
        for c in candidates {
            if elems.len() == need {
                break;
            }
            let mut trial = ech.clone();
            if sub.fp_basis.iter().all(|w| trial.insert(&fp, &vec_of(core.mul(w.0, c)))) {
                ech = trial;
                elems.push(Elem(c));
            }
        }
        assert_eq!(elems.len(), need, "candidate scan did not span the field");
        // column a*e + c of B holds the digits of ω_c · b_a
        let d = core.deg;
        let mut rows = vec![vec![0u8; d]; d];
        for (a, b) in elems.iter().enumerate() {
            for (c, w) in sub.fp_basis.iter().enumerate() {
                let v = vec_of(core.mul(w.0, b.0));
                for i in 0..d {
                    rows[i][a * e + c] = v[i];
                }
            }
        }
        let inv = linalg::invert(&fp, &rows).expect("relative basis expansion is invertible");
        RelBasis { sub, elems, inv: inv.concat(), deg: d, p: core.p }
    }

    pub fn subfield(&self) -> &Arc<Subfield> {
        &self.sub
    }

    pub fn elems(&self) -> &[Elem] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    fn coords_core(&self, core: &Core, x: u32, out: &mut [u8]) {
        let dig = core.digits(x);
        let (d, e, p) = (self.deg, self.sub.degree, self.p);
        for (a, slot) in out.iter_mut().enumerate().take(self.elems.len()) {
            let mut idx = 0u32;
            for c in (0..e).rev() {
                let row = &self.inv[(a * e + c) * d..(a * e + c + 1) * d];
                let mut y = 0u32;
                for i in 0..d {
                    y += row[i] as u32 * dig[i];
                }
                idx = idx * p + y % p;
            }
            *slot = self.sub.tuple_local[idx as usize];
        }
    }
}

/// The field F_{p^{hn}} with its distinguished F_q-basis.
pub struct Field {
    spec: FieldSpec,
    core: Core,
    h: usize,
    n: usize,
    q: u32,
    primitive: Elem,
    /// `q^s mod (order − 1)` for `s < n`.
    q_pows: Vec<u64>,
    fq: Arc<Subfield>,
    basis: RelBasis,
    /// `basis_frob[j * n + i] = b_j^{q^i}`.
    basis_frob: Vec<Elem>,
    coord_table: Option<Vec<u8>>,
    subfields: Mutex<HashMap<usize, Arc<Subfield>>>,
    rel_bases: Mutex<HashMap<usize, Arc<RelBasis>>>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Field").field("spec", &self.spec).finish()
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} over F_{}", self.q, self.n, self.q)
    }
}

/// Creates a field from its parameters, validating primality and irreducibility.
pub fn field_create(spec: FieldSpec) -> Result<Arc<Field>> {
    Field::new(spec).map(Arc::new)
}

impl Field {
    pub fn new(spec: FieldSpec) -> Result<Field> {
        let FieldSpec { p, h, n, ref modulus } = spec;
        if !poly::is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        if h == 0 || n == 0 {
            return Err(Error::InvalidField("h and n must be positive".into()));
        }
        let deg = (h * n) as usize;
        if modulus.len() != deg + 1 {
            return Err(Error::InvalidField(format!(
                "modulus must have {} coefficients, got {}",
                deg + 1,
                modulus.len()
            )));
        }
        if modulus.iter().any(|&c| c >= p) {
            return Err(Error::InvalidField(format!("modulus coefficients must be < {p}")));
        }
        if modulus[deg] != 1 {
            return Err(Error::InvalidField("modulus is not monic".into()));
        }
        let order = (p as u64)
            .checked_pow(deg as u32)
            .filter(|&o| o < (1u64 << 32))
            .ok_or_else(|| Error::InvalidField(format!("field order {p}^{deg} exceeds 2^32")))?
            as u32;
        let q = p.pow(h);
        if q > 256 {
            return Err(Error::Unsupported(format!("q = {q} exceeds 256")));
        }
        if !poly::is_irreducible(modulus, p) {
            return Err(Error::Reducible { p });
        }
        let mut core = Core {
            p,
            deg,
            order,
            modulus: modulus.clone(),
            arith: Arith::Poly,
            half: (order - 1) / 2,
            mod_full: modulus.iter().enumerate().fold(0u64, |acc, (i, &c)| acc | ((c as u64 & 1) << i)),
        };
        let m = core.m();
        let factors = poly::prime_factors(m);
        let primitive = if order == 2 {
            1
        } else {
            (2..order)
                .find(|&g| factors.iter().all(|&r| core.pow(g, m / r) != 1))
                .expect("multiplicative group is cyclic")
        };
        if order as u64 <= TABLE_LIMIT {
            let mu = m as usize;
            let mut exp = vec![0u32; 2 * mu.max(1)];
            let mut log = vec![NO_LOG; order as usize];
            let mut x = 1u32;
            for i in 0..mu {
                exp[i] = x;
                exp[i + mu] = x;
                log[x as usize] = i as u32;
                x = core.poly_mul(x, primitive);
            }
            let mut zech = vec![NO_LOG; mu];
            for (k, z) in zech.iter_mut().enumerate() {
                let x = exp[k];
                let d0 = x % p;
                let y = x - d0 + (d0 + 1) % p;
                if y != 0 {
                    *z = log[y as usize];
                }
            }
            core.arith = Arith::Table { exp, log, zech };
        }
        let fq = Arc::new(Subfield::build(&core, primitive, h as usize)?);
        let root = if deg == 1 { core.neg(modulus[0]) } else { p };
        let powers = std::iter::successors(Some(1u32), |&x| Some(core.mul(x, root)));
        let basis = RelBasis::build(&core, fq.clone(), powers);
        let n = n as usize;
        let mut q_pows = Vec::with_capacity(n);
        let mut acc = 1u64;
        for _ in 0..n {
            q_pows.push(acc % m.max(1));
            acc = acc * q as u64 % m.max(1);
        }
        let mut field = Field {
            spec: spec.clone(),
            core,
            h: h as usize,
            n,
            q,
            primitive: Elem(primitive),
            q_pows,
            fq,
            basis,
            basis_frob: Vec::new(),
            coord_table: None,
            subfields: Mutex::new(HashMap::new()),
            rel_bases: Mutex::new(HashMap::new()),
        };
        let mut bf = Vec::with_capacity(n * n);
        for j in 0..n {
            for i in 0..n {
                bf.push(field.frob(field.basis.elems[j], i as i64));
            }
        }
        field.basis_frob = bf;
        if order as u64 <= TABLE_LIMIT {
            let mut table = vec![0u8; order as usize * n];
            for x in 0..order {
                field.basis.coords_core(&field.core, x, &mut table[x as usize * n..(x as usize + 1) * n]);
            }
            field.coord_table = Some(table);
        }
        Ok(field)
    }

    pub fn spec(&self) -> &FieldSpec {
        &self.spec
    }

    pub fn p(&self) -> u32 {
        self.core.p
    }

    pub fn h(&self) -> usize {
        self.h
    }

    /// Extension degree over F_q.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Degree over F_p.
    pub fn degree(&self) -> usize {
        self.core.deg
    }

    pub fn q(&self) -> u32 {
        self.q
    }

    pub fn order(&self) -> u32 {
        self.core.order
    }

    pub fn primitive(&self) -> Elem {
        self.primitive
    }

    /// A root of the modulus.
    pub fn root(&self) -> Elem {
        if self.core.deg == 1 {
            Elem(self.core.neg(self.core.modulus[0]))
        } else {
            Elem(self.core.p)
        }
    }

    pub fn elem(&self, code: u32) -> Result<Elem> {
        if code < self.core.order {
            Ok(Elem(code))
        } else {
            Err(Error::NotInField(code))
        }
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        (0..self.core.order).map(Elem)
    }

    /// Prime-field constant `c mod p`.
    pub fn constant(&self, c: i64) -> Elem {
        Elem(c.rem_euclid(self.core.p as i64) as u32)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.core.add(a.0, b.0))
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        Elem(self.core.neg(a.0))
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.core.add(a.0, self.core.neg(b.0)))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        Elem(self.core.mul(a.0, b.0))
    }

    pub fn try_inv(&self, a: Elem) -> Option<Elem> {
        (!a.is_zero()).then(|| Elem(self.core.inv(a.0)))
    }

    /// Inverse of a nonzero element; panics on zero.
    pub fn inv(&self, a: Elem) -> Elem {
        Elem(self.core.inv(a.0))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Elem {
        self.mul(a, self.inv(b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        Elem(self.core.pow(a.0, e))
    }

    /// `x^{q^s}` with `s` taken mod n.
    #[inline]
    pub fn frob(&self, x: Elem, s: i64) -> Elem {
        let s = s.rem_euclid(self.n as i64) as usize;
        if s == 0 || x.0 == 0 {
            return x;
        }
        Elem(self.core.pow(x.0, self.q_pows[s]))
    }

    /// `x^{p^k}`.
    pub fn frob_p(&self, x: Elem, k: usize) -> Elem {
        let k = k % self.core.deg;
        if k == 0 || x.0 == 0 {
            return x;
        }
        let m = self.core.m();
        let mut e = 1u64;
        for _ in 0..k {
            e = e * self.core.p as u64 % m;
        }
        Elem(self.core.pow(x.0, e))
    }

    fn check_sub(&self, sub: usize) -> Result<()> {
        if sub == 0 || !self.n.is_multiple_of(sub) {
            return Err(Error::BadSubfield { sub, n: self.n });
        }
        Ok(())
    }

    /// `(N_{q^n/q^sub}(x), Tr_{q^n/q^sub}(x))`.
    pub fn norm_trace(&self, x: Elem, sub: usize) -> Result<(Elem, Elem)> {
        self.check_sub(sub)?;
        let (mut nrm, mut tr) = (Elem::ONE, Elem::ZERO);
        for i in 0..self.n / sub {
            let y = self.frob(x, (i * sub) as i64);
            nrm = self.mul(nrm, y);
            tr = self.add(tr, y);
        }
        Ok((nrm, tr))
    }

    pub fn norm(&self, x: Elem, sub: usize) -> Result<Elem> {
        self.norm_trace(x, sub).map(|r| r.0)
    }

    pub fn trace(&self, x: Elem, sub: usize) -> Result<Elem> {
        self.norm_trace(x, sub).map(|r| r.1)
    }

    /// Whether `x^{q^sub} = x`.
    pub fn in_subfield(&self, x: Elem, sub: usize) -> Result<bool> {
        self.check_sub(sub)?;
        Ok(self.frob(x, sub as i64) == x)
    }

    /// The subfield F_{p^e}, cached.
    pub fn subfield(&self, e: usize) -> Result<Arc<Subfield>> {
        if e == self.h {
            return Ok(self.fq.clone());
        }
        let mut cache = self.subfields.lock().expect("subfield cache");
        if let Some(s) = cache.get(&e) {
            return Ok(s.clone());
        }
        let s = Arc::new(Subfield::build(&self.core, self.primitive.0, e)?);
        cache.insert(e, s.clone());
        Ok(s)
    }

    /// Basis of the field over F_{p^e} (powers of the modulus root, greedily), cached.
    pub fn rel_basis(&self, e: usize) -> Result<Arc<RelBasis>> {
        let mut cache = self.rel_bases.lock().expect("basis cache");
        if let Some(b) = cache.get(&e) {
            return Ok(b.clone());
        }
        drop(cache);
        let sub = self.subfield(e)?;
        let root = self.root().0;
        let powers = std::iter::successors(Some(1u32), |&x| Some(self.core.mul(x, root)));
        let b = Arc::new(RelBasis::build(&self.core, sub, powers));
        cache = self.rel_bases.lock().expect("basis cache");
        cache.insert(e, b.clone());
        Ok(b)
    }

    /// Coordinates of `x` over a relative basis, as local codes of its subfield.
    pub fn rel_coords(&self, basis: &RelBasis, x: Elem, out: &mut [u8]) {
        basis.coords_core(&self.core, x.0, out);
    }

    pub fn rel_combine(&self, basis: &RelBasis, c: &[u8]) -> Elem {
        let mut x = Elem::ZERO;
        for (&ci, &b) in c.iter().zip(&basis.elems) {
            if ci != 0 {
                x = self.add(x, self.mul(basis.sub.to_big(ci), b));
            }
        }
        x
    }

    /// F_q as a subfield with local codes.
    pub fn fq(&self) -> &Arc<Subfield> {
        &self.fq
    }

    /// Tables of F_q over local codes.
    pub fn small(&self) -> &SmallField {
        &self.fq.small
    }

    /// The distinguished F_q-basis of F_{q^n}.
    pub fn basis(&self) -> &[Elem] {
        &self.basis.elems
    }

    /// `b_j^{q^i}`.
    #[inline]
    pub fn basis_frob(&self, j: usize, i: usize) -> Elem {
        self.basis_frob[j * self.n + i]
    }

    /// F_q-coordinates of `x` as local codes.
    #[inline]
    pub fn coords_into(&self, x: Elem, out: &mut [u8]) {
        match &self.coord_table {
            Some(t) => out[..self.n].copy_from_slice(&t[x.0 as usize * self.n..(x.0 as usize + 1) * self.n]),
            None => self.basis.coords_core(&self.core, x.0, out),
        }
    }

    pub fn coords(&self, x: Elem) -> Vec<u8> {
        let mut v = vec![0u8; self.n];
        self.coords_into(x, &mut v);
        v
    }

    pub fn from_coords(&self, c: &[u8]) -> Elem {
        self.rel_combine(&self.basis, c)
    }

    /// Local F_q code of `x`, if `x ∈ F_q`.
    pub fn to_local(&self, x: Elem) -> Option<u8> {
        self.fq.to_local(x)
    }

    pub fn from_local(&self, l: u8) -> Elem {
        self.fq.to_big(l)
    }

    /// All elements of F_{q^sub}, ascending.
    pub fn subfield_elements(&self, sub: usize) -> Result<Vec<Elem>> {
        self.check_sub(sub)?;
        let size = (self.q as u64).pow(sub as u32);
        if size > TABLE_LIMIT * 16 {
            return Err(Error::Unsupported(format!("listing {size} subfield elements")));
        }
        let zeta = self.pow(self.primitive, self.core.m() / (size - 1));
        let mut v: Vec<Elem> = std::iter::once(Elem::ZERO)
            .chain(std::iter::successors(Some(Elem::ONE), |&x| Some(self.mul(x, zeta))).take(size as usize - 1))
            .collect();
        v.sort_unstable();
        Ok(v)
    }

    /// An F_q-basis of F_{q^sub}: powers of a multiplicative generator.
    pub fn subfield_fq_basis(&self, sub: usize) -> Result<Vec<Elem>> {
        self.check_sub(sub)?;
        let size = (self.q as u64).pow(sub as u32);
        let zeta = self.pow(self.primitive, self.core.m() / (size - 1));
        Ok(std::iter::successors(Some(Elem::ONE), |&x| Some(self.mul(x, zeta))).take(sub).collect())
    }
}

impl Scalars for Field {
    type E = Elem;
    fn zero(&self) -> Elem {
        Elem::ZERO
    }
    fn one(&self) -> Elem {
        Elem::ONE
    }
    fn add(&self, a: Elem, b: Elem) -> Elem {
        Field::add(self, a, b)
    }
    fn sub(&self, a: Elem, b: Elem) -> Elem {
        Field::sub(self, a, b)
    }
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        Field::mul(self, a, b)
    }
    fn neg(&self, a: Elem) -> Elem {
        Field::neg(self, a)
    }
    fn inv(&self, a: Elem) -> Elem {
        Field::inv(self, a)
    }
}

/// Shorthand for `field_create(FieldSpec::for_q(q, n, builtin))`.
pub fn fqn(q: u32, n: u32) -> Result<Arc<Field>> {
    field_create(FieldSpec::for_q(q, n, &ModulusTable::builtin())?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(p: u32, h: u32, n: u32) -> Field {
        Field::new(FieldSpec::new(p, h, n).unwrap()).unwrap()
    }

    #[test]
    fn f4_frobenius_norm_trace() {
        let f4 = f(2, 1, 2);
        assert_eq!(f4.order(), 4);
        assert_eq!(f4.frob(Elem(2), 1), Elem(3));
        assert_eq!(f4.norm_trace(Elem(2), 1).unwrap(), (Elem(1), Elem(1)));
        assert_eq!(f4.norm(Elem(1), 1).unwrap(), Elem(1));
        assert_eq!(f4.trace(Elem(0), 1).unwrap(), Elem(0));
        assert!(!f4.in_subfield(Elem(2), 1).unwrap());
        assert!(f4.in_subfield(Elem(1), 1).unwrap());
    }

    #[test]
    fn reducible_and_malformed_moduli_rejected() {
        let bad = FieldSpec { p: 2, h: 1, n: 2, modulus: vec![1, 0, 1] };
        assert!(matches!(Field::new(bad), Err(Error::Reducible { p: 2 })));
        let nonmonic = FieldSpec { p: 3, h: 1, n: 2, modulus: vec![2, 1, 2] };
        assert!(Field::new(nonmonic).is_err());
        let composite = FieldSpec { p: 4, h: 1, n: 1, modulus: vec![1, 1] };
        assert!(Field::new(composite).is_err());
        assert!(matches!(f(2, 1, 4).norm_trace(Elem(3), 3), Err(Error::BadSubfield { .. })));
    }

    #[test]
    fn trace_zeros_and_subfield_sizes() {
        let f8 = f(2, 1, 3);
        let zeros = f8.elements().filter(|&x| f8.trace(x, 1).unwrap().is_zero()).count();
        assert_eq!(zeros, 4);
        let f16 = f(2, 1, 4);
        let fixed = f16.elements().filter(|&x| f16.in_subfield(x, 2).unwrap()).count();
        assert_eq!(fixed, 4);
        assert_eq!(f16.subfield_elements(2).unwrap().len(), 4);
        let f81 = f(3, 1, 4);
        assert_eq!(f81.order(), 81);
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, h, n) in [(2, 1, 2), (2, 1, 3), (3, 1, 2), (2, 2, 2), (5, 1, 2), (2, 1, 8)] {
            let fl = f(p, h, n);
            let els: Vec<Elem> = fl.elements().collect();
            for &a in &els {
                assert_eq!(fl.add(a, fl.neg(a)), Elem::ZERO);
                if !a.is_zero() {
                    assert_eq!(fl.mul(a, fl.inv(a)), Elem::ONE);
                }
                for &b in els.iter().step_by(1 + els.len() / 24) {
                    assert_eq!(fl.add(a, b), fl.add(b, a));
                    assert_eq!(fl.mul(a, b), fl.mul(b, a));
                    for &c in els.iter().step_by(1 + els.len() / 12) {
                        assert_eq!(fl.mul(a, fl.add(b, c)), fl.add(fl.mul(a, b), fl.mul(a, c)));
                        assert_eq!(fl.mul(a, fl.mul(b, c)), fl.mul(fl.mul(a, b), c));
                    }
                }
            }
        }
    }

    #[test]
    fn table_and_polynomial_paths_agree() {
        let fl = f(3, 1, 5);
        let core_poly = Core {
            p: 3,
            deg: 5,
            order: 243,
            modulus: fl.spec.modulus.clone(),
            arith: Arith::Poly,
            half: 121,
            mod_full: 0,
        };
        for a in 0..243 {
            for b in (0..243).step_by(7) {
                assert_eq!(fl.core.mul(a, b), core_poly.mul(a, b));
                assert_eq!(fl.core.add(a, b), core_poly.add(a, b));
            }
            assert_eq!(fl.core.neg(a), core_poly.neg(a));
        }
    }

    #[test]
    fn coordinates_round_trip() {
        for (p, h, n) in [(2, 1, 5), (3, 1, 4), (2, 2, 3), (5, 1, 3), (2, 1, 20)] {
            let fl = f(p, h, n);
            let step = (fl.order() / 500).max(1);
            for x in (0..fl.order()).step_by(step as usize).map(Elem) {
                assert_eq!(fl.from_coords(&fl.coords(x)), x);
            }
            assert_eq!(fl.basis()[0], Elem::ONE);
        }
    }

    #[test]
    fn prime_powers() {
        assert_eq!(prime_power(2), Some((2, 1)));
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(16), Some((2, 4)));
        assert_eq!(prime_power(12), None);
        assert_eq!(prime_power(1), None);
    }

    #[test]
    fn modulus_overrides() {
        let t = ModulusTable::from_json(r#"[{"p":2,"modulus":[1,0,0,1,1]}]"#).unwrap();
        let s = FieldSpec::with_moduli(2, 1, 4, &t).unwrap();
        assert_eq!(s.modulus, vec![1, 0, 0, 1, 1]);
        assert!(Field::new(s).is_ok());
    }
}
