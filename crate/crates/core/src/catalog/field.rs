//! Finite fields of prime-power order as lookup tables.

use crate::group::is_prime;

/// `GF(p^k)` with elements `0..q` written as base-`p` digit vectors.
#[derive(Clone, Debug)]
pub(crate) struct SmallField {
    p: usize,
    k: u32,
    q: usize,
    add: Vec<usize>,
    mul: Vec<usize>,
}

/// Splits `q = p^k` for a prime `p`, if possible.
pub(crate) fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let p = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut r = q;
    while r % p == 0 {
        r /= p;
        k += 1;
    }
    (r == 1 && is_prime(p)).then_some((p, k))
}

fn digits(x: usize, p: usize, k: u32) -> Vec<usize> {
    let mut d = Vec::with_capacity(k as usize);
    let mut x = x;
    for _ in 0..k {
        d.push(x % p);
        x /= p;
    }
    d
}

fn undigits(d: &[usize], p: usize) -> usize {
    d.iter().rev().fold(0, |acc, &c| acc * p + c)
}

// product of digit polynomials reduced by the monic `modulus` (low-order first, degree k)
fn poly_mul_mod(a: &[usize], b: &[usize], modulus: &[usize], p: usize) -> Vec<usize> {
    let k = modulus.len() - 1;
    let mut prod = vec![0; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x * y) % p;
        }
    }
    for d in (k..prod.len()).rev() {
        let c = prod[d];
        if c != 0 {
            for (i, &m) in modulus.iter().enumerate() {
                let t = d - k + i;
                prod[t] = (prod[t] + p * p - c * m % p) % p;
            }
        }
    }
    prod.truncate(k);
    prod
}

impl SmallField {
    pub(crate) fn new(q: u64) -> Option<Self> {
        let (p, k) = prime_power(q)?;
        let (p, q) = (p as usize, q as usize);
        let modulus = (0..q)
            .map(|low| {
                let mut m = digits(low, p, k);
                m.push(1);
                m
            })
            .find(|m| Self::is_field_modulus(m, p, k))?;
        let mut add = vec![0; q * q];
        let mut mul = vec![0; q * q];
        for a in 0..q {
            let da = digits(a, p, k);
            for b in 0..q {
                let db = digits(b, p, k);
                let s: Vec<usize> = da.iter().zip(&db).map(|(x, y)| (x + y) % p).collect();
                add[a * q + b] = undigits(&s, p);
                mul[a * q + b] = undigits(&poly_mul_mod(&da, &db, &modulus, p), p);
            }
        }
        Some(SmallField { p, k, q, add, mul })
    }

    // no zero divisors means the quotient ring is a field
    fn is_field_modulus(m: &[usize], p: usize, k: u32) -> bool {
        let q = p.pow(k);
        (1..q).all(|a| {
            let da = digits(a, p, k);
            (1..q).all(|b| poly_mul_mod(&da, &digits(b, p, k), m, p).iter().any(|&c| c != 0))
        })
    }

    pub(crate) fn order(&self) -> usize {
        self.q
    }

    pub(crate) fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.q + b]
    }

    pub(crate) fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.q + b]
    }

    pub(crate) fn neg(&self, a: usize) -> usize {
        (0..self.q).find(|&b| self.add(a, b) == 0).expect("additive inverse")
    }

    pub(crate) fn inv(&self, a: usize) -> Option<usize> {
        (1..self.q).find(|&b| self.mul(a, b) == 1)
    }

    /// The additive basis `1, t, t², …` of the field over its prime field.
    pub(crate) fn additive_basis(&self) -> Vec<usize> {
        (0..self.k).map(|i| self.p.pow(i)).collect()
    }
}
