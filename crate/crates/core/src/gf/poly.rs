//! Dense polynomials over a prime field, ascending coefficients.

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime factors, ascending.
pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub(crate) fn inv_mod(a: u32, p: u32) -> u32 {
    let mut r = 1u64;
    let mut b = a as u64 % p as u64;
    let mut e = p as u64 - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u64;
        }
        b = b * b % p as u64;
        e >>= 1;
    }
    r as u32
}

fn trim(a: &mut Vec<u32>) {
    while a.last() == Some(&0) {
        a.pop();
    }
}

/// Remainder of `a` modulo `m` (`m` nonzero).
fn rem(a: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    let mut r: Vec<u32> = a.to_vec();
    trim(&mut r);
    let mut m = m.to_vec();
    trim(&mut m);
    let dm = m.len() - 1;
    let lead_inv = inv_mod(m[dm], p);
    while r.len() > dm {
        let top = r.len() - 1;
        let c = r[top] * lead_inv % p;
        if c != 0 {
            for i in 0..=dm {
                let k = top - dm + i;
                r[k] = (r[k] + (p - c) * m[i] % p) % p;
            }
        }
        trim(&mut r);
    }
    r
}

fn mul_mod(a: &[u32], b: &[u32], m: &[u32], p: u32) -> Vec<u32> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut c = vec![0u32; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            c[i + j] = (c[i + j] + x * y) % p;
        }
    }
    rem(&c, m, p)
}

fn gcd(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or test: `f` (degree D ≥ 1) is irreducible iff gcd(t^{p^i} − t, f) = 1 for i ≤ D/2.
pub(crate) fn is_irreducible(f: &[u32], p: u32) -> bool {
    let d = f.len() - 1;
    if d == 1 {
        return true;
    }
    let mut x = rem(&[0, 1], f, p);
    for _ in 1..=d / 2 {
        let mut y = vec![1u32];
        let mut base = x.clone();
        let mut e = p;
        while e > 0 {
            if e & 1 == 1 {
                y = mul_mod(&y, &base, f, p);
            }
            base = mul_mod(&base, &base, f, p);
            e >>= 1;
        }
        x = y;
        let mut diff = x.clone();
        if diff.len() < 2 {
            diff.resize(2, 0);
        }
        diff[1] = (diff[1] + p - 1) % p;
        let g = gcd(f, &diff, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}
