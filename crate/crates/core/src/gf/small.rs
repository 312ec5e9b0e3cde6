use crate::linalg::Scalars;

/// A field of order at most 256 with full operation tables over local codes `0..q`.
///
/// Local code 0 is zero and local code 1 is one.
#[derive(Clone, Debug)]
pub struct SmallField {
    p: u32,
    q: u32,
    add: Vec<u8>,
    sub: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    inv: Vec<u8>,
}

impl SmallField {
    /// The prime field F_p, locals equal to residues.
    pub fn prime(p: u32) -> SmallField {
        assert!(p <= 256, "prime field too large for local codes");
        SmallField::from_ops(p, p, |a, b| (a + b) % p, |a, b| a * b % p)
    }

    /// Builds tables from closures on local codes.
    pub(crate) fn from_ops(p: u32, q: u32, add: impl Fn(u32, u32) -> u32, mul: impl Fn(u32, u32) -> u32) -> SmallField {
        let qu = q as usize;
        let mut ta = vec![0u8; qu * qu];
        let mut tm = vec![0u8; qu * qu];
        for a in 0..q {
            for b in 0..q {
                ta[(a * q + b) as usize] = add(a, b) as u8;
                tm[(a * q + b) as usize] = mul(a, b) as u8;
            }
        }
        let mut neg = vec![0u8; qu];
        let mut inv = vec![0u8; qu];
        for a in 0..qu {
            for b in 0..qu {
                if ta[a * qu + b] == 0 {
                    neg[a] = b as u8;
                }
                if tm[a * qu + b] == 1 {
                    inv[a] = b as u8;
                }
            }
        }
        let mut ts = vec![0u8; qu * qu];
        for a in 0..qu {
            for b in 0..qu {
                ts[a * qu + b] = ta[a * qu + neg[b] as usize];
            }
        }
        SmallField { p, q, add: ta, sub: ts, mul: tm, neg, inv }
    }

    pub fn order(&self) -> u32 {
        self.q
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn sub(&self, a: u8, b: u8) -> u8 {
        self.sub[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.q as usize + b as usize]
    }

    #[inline]
    pub fn neg(&self, a: u8) -> u8 {
        self.neg[a as usize]
    }

    /// Inverse of a nonzero local; `inv(0)` is 0.
    #[inline]
    pub fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    /// Row of the multiplication table for `a`.
    #[inline]
    pub(crate) fn mul_row(&self, a: u8) -> &[u8] {
        let q = self.q as usize;
        &self.mul[a as usize * q..a as usize * q + q]
    }
}

impl Scalars for SmallField {
    type E = u8;
    fn zero(&self) -> u8 {
        0
    }
    fn one(&self) -> u8 {
        1
    }
    fn add(&self, a: u8, b: u8) -> u8 {
        SmallField::add(self, a, b)
    }
    fn sub(&self, a: u8, b: u8) -> u8 {
        SmallField::sub(self, a, b)
    }
    fn mul(&self, a: u8, b: u8) -> u8 {
        SmallField::mul(self, a, b)
    }
    fn neg(&self, a: u8) -> u8 {
        SmallField::neg(self, a)
    }
    fn inv(&self, a: u8) -> u8 {
        SmallField::inv(self, a)
    }
}
