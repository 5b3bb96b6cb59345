//! Arithmetic in GF(q): scalars, dense polynomials and small dense matrices.

use crate::error::{Error, Result};
use crate::group::is_prime;

/// The prime field GF(q).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PrimeField {
    q: u64,
}

impl PrimeField {
    pub fn new(q: u64) -> Self {
        debug_assert!(is_prime(q));
        PrimeField { q }
    }

    pub fn modulus(&self) -> u64 {
        self.q
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.q {
            s - self.q
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.q - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.q - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.q as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.q;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// Inverse of a nonzero element.
    pub fn inv(&self, a: u64) -> u64 {
        debug_assert!(a % self.q != 0);
        self.pow(a, self.q - 2)
    }

    pub fn from_u64(&self, a: u64) -> u64 {
        a % self.q
    }

    pub fn from_i64(&self, a: i64) -> u64 {
        a.rem_euclid(self.q as i64) as u64
    }

    /// A generator of the multiplicative group.
    pub fn primitive_root(&self) -> u64 {
        if self.q == 2 {
            return 1;
        }
        let mut factors = Vec::new();
        let mut m = self.q - 1;
        let mut d = 2;
        while d * d <= m {
            if m % d == 0 {
                factors.push(d);
                while m % d == 0 {
                    m /= d;
                }
            }
            d += 1;
        }
        if m > 1 {
            factors.push(m);
        }
        (2..self.q)
            .find(|&w| factors.iter().all(|&f| self.pow(w, (self.q - 1) / f) != 1))
            .expect("prime field has a primitive root")
    }

    // ---- polynomials: coefficient vectors, lowest degree first, no trailing zeros

    fn trim(p: &mut Vec<u64>) {
        while p.last() == Some(&0) {
            p.pop();
        }
    }

    pub fn poly_sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let n = a.len().max(b.len());
        let mut r: Vec<u64> = (0..n)
            .map(|i| {
                self.sub(
                    a.get(i).copied().unwrap_or(0),
                    b.get(i).copied().unwrap_or(0),
                )
            })
            .collect();
        Self::trim(&mut r);
        r
    }

    pub fn poly_mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut r = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                r[i + j] = self.add(r[i + j], self.mul(x, y));
            }
        }
        Self::trim(&mut r);
        r
    }

    /// Quotient and remainder.
    pub fn poly_divmod(&self, a: &[u64], b: &[u64]) -> (Vec<u64>, Vec<u64>) {
        assert!(!b.is_empty(), "division by the zero polynomial");
        let mut r = a.to_vec();
        Self::trim(&mut r);
        if r.len() < b.len() {
            return (Vec::new(), r);
        }
        let lead_inv = self.inv(*b.last().unwrap());
        let mut quot = vec![0u64; r.len() - b.len() + 1];
        while r.len() >= b.len() {
            let shift = r.len() - b.len();
            let c = self.mul(*r.last().unwrap(), lead_inv);
            quot[shift] = c;
            for (i, &bi) in b.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(c, bi));
            }
            Self::trim(&mut r);
        }
        Self::trim(&mut quot);
        (quot, r)
    }

    /// Monic greatest common divisor.
    pub fn poly_gcd(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut x = a.to_vec();
        let mut y = b.to_vec();
        Self::trim(&mut x);
        Self::trim(&mut y);
        while !y.is_empty() {
            let (_, r) = self.poly_divmod(&x, &y);
            x = y;
            y = r;
        }
        if let Some(&lead) = x.last() {
            let li = self.inv(lead);
            for c in x.iter_mut() {
                *c = self.mul(*c, li);
            }
        }
        x
    }

    /// `base^e mod m`.
    pub fn poly_powmod(&self, base: &[u64], mut e: u64, m: &[u64]) -> Vec<u64> {
        let mut result = vec![1u64];
        let (_, mut b) = self.poly_divmod(base, m);
        while e > 0 {
            if e & 1 == 1 {
                result = self.poly_divmod(&self.poly_mul(&result, &b), m).1;
            }
            b = self.poly_divmod(&self.poly_mul(&b, &b), m).1;
            e >>= 1;
        }
        let (_, r) = self.poly_divmod(&result, m);
        r
    }

    /// Distinct roots of `f` in GF(q), ascending.
    pub fn poly_roots(&self, f: &[u64]) -> Vec<u64> {
        let mut f = f.to_vec();
        Self::trim(&mut f);
        if f.len() <= 1 {
            return Vec::new();
        }
        // g = gcd(f, x^q - x) keeps one copy of every root
        let xq = self.poly_powmod(&[0, 1], self.q, &f);
        let g = self.poly_gcd(&f, &self.poly_sub(&xq, &[0, 1]));
        let mut roots = Vec::new();
        self.split_roots(&g, &mut roots);
        roots.sort_unstable();
        roots
    }

    fn split_roots(&self, g: &[u64], out: &mut Vec<u64>) {
        match g.len() {
            0 | 1 => {}
            2 => out.push(self.mul(self.neg(g[0]), self.inv(g[1]))),
            _ => {
                // deterministic equal-degree splitting over shifts x + a
                let half = (self.q - 1) / 2;
                for a in 0..self.q {
                    let h = self.poly_powmod(&[a, 1], half, g);
                    let d = self.poly_gcd(g, &self.poly_sub(&h, &[1]));
                    if d.len() > 1 && d.len() < g.len() {
                        let (rest, _) = self.poly_divmod(g, &d);
                        self.split_roots(&d, out);
                        self.split_roots(&rest, out);
                        return;
                    }
                }
                unreachable!("squarefree split polynomial always separates");
            }
        }
    }

    // ---- matrices: row-major Vec<Vec<u64>>

    /// Characteristic polynomial `det(xI - M)`, via Hessenberg reduction.
    pub fn char_poly(&self, m: &[Vec<u64>]) -> Vec<u64> {
        let n = m.len();
        let mut h: Vec<Vec<u64>> = m.to_vec();
        for c in 0..n.saturating_sub(2) {
            let r = c + 1;
            let Some(piv) = (r..n).find(|&i| h[i][c] != 0) else {
                continue;
            };
            if piv != r {
                h.swap(piv, r);
                for row in h.iter_mut() {
                    row.swap(piv, r);
                }
            }
            let t = self.inv(h[r][c]);
            for i in r + 1..n {
                let u = self.mul(h[i][c], t);
                if u == 0 {
                    continue;
                }
                for j in 0..n {
                    let v = self.mul(u, h[r][j]);
                    h[i][j] = self.sub(h[i][j], v);
                }
                for row in h.iter_mut() {
                    let v = self.mul(u, row[i]);
                    row[r] = self.add(row[r], v);
                }
            }
        }
        let mut polys: Vec<Vec<u64>> = vec![vec![1]];
        for m1 in 1..=n {
            let mut pm = self.poly_mul(&[self.neg(h[m1 - 1][m1 - 1]), 1], &polys[m1 - 1]);
            let mut t = 1u64;
            for i1 in (1..m1).rev() {
                t = self.mul(t, h[i1][i1 - 1]);
                let coef = self.mul(h[i1 - 1][m1 - 1], t);
                if coef != 0 {
                    let term: Vec<u64> = polys[i1 - 1].iter().map(|&c| self.mul(c, coef)).collect();
                    pm = self.poly_sub(&pm, &term);
                }
            }
            polys.push(pm);
        }
        polys.pop().unwrap()
    }

    /// Reduced row echelon form in place; returns pivot columns.
    pub fn rref(&self, rows: &mut Vec<Vec<u64>>) -> Vec<usize> {
        let ncols = rows.first().map_or(0, |r| r.len());
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            let Some(piv) = (r..rows.len()).find(|&i| rows[i][c] != 0) else {
                continue;
            };
            rows.swap(piv, r);
            let inv = self.inv(rows[r][c]);
            for x in rows[r].iter_mut() {
                *x = self.mul(*x, inv);
            }
            for i in 0..rows.len() {
                if i != r && rows[i][c] != 0 {
                    let f = rows[i][c];
                    for j in 0..ncols {
                        let v = self.mul(f, rows[r][j]);
                        rows[i][j] = self.sub(rows[i][j], v);
                    }
                }
            }
            pivots.push(c);
            r += 1;
            if r == rows.len() {
                break;
            }
        }
        rows.truncate(r);
        pivots
    }

    /// Basis of `{v : M v = 0}` for a square matrix.
    pub fn nullspace(&self, m: &[Vec<u64>]) -> Vec<Vec<u64>> {
        let n = m.first().map_or(0, |r| r.len());
        let mut rows = m.to_vec();
        let pivots = self.rref(&mut rows);
        let free: Vec<usize> = (0..n).filter(|c| !pivots.contains(c)).collect();
        free.iter()
            .map(|&f| {
                let mut v = vec![0u64; n];
                v[f] = 1;
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = self.neg(rows[r][f]);
                }
                v
            })
            .collect()
    }
}

/// Smallest prime `q ≡ 1 (mod exponent)` with `q > order²`.
pub fn dixon_modulus(order: usize, exponent: usize) -> Result<u64> {
    let order = order as u64;
    let exponent = exponent.max(1) as u64;
    let mut q = order * order + 1;
    while q % exponent != 1 % exponent {
        q += 1;
    }
    const SEARCH_BOUND: u64 = 1 << 40;
    while q < SEARCH_BOUND {
        if q % 2 == 1 && is_prime(q) {
            return Ok(q);
        }
        q += exponent;
    }
    Err(Error::ModulusSearchFailed)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modulus_choice() {
        // |S3|² = 36, exponent 6: 37 is prime and ≡ 1 mod 6
        assert_eq!(dixon_modulus(6, 6).unwrap(), 37);
        // |Q8|² = 64, exponent 4: 73 ≡ 1 mod 4
        assert_eq!(dixon_modulus(8, 4).unwrap(), 73);
        let q = dixon_modulus(60, 30).unwrap();
        assert!(q > 3600 && q % 30 == 1 && is_prime(q));
        assert_eq!(dixon_modulus(1, 1).unwrap(), 3);
    }

    #[test]
    fn roots_of_split_polynomial() {
        let f = PrimeField::new(101);
        let roots = [3u64, 17, 99];
        let mut p = vec![1u64];
        for &r in &roots {
            p = f.poly_mul(&p, &[f.neg(r), 1]);
        }
        // repeated factor
        p = f.poly_mul(&p, &[f.neg(17), 1]);
        assert_eq!(f.poly_roots(&p), vec![3, 17, 99]);
        assert_eq!(f.poly_roots(&[0, 1]), vec![0]);
    }

    #[test]
    fn char_poly_matches_determinant_expansion() {
        let f = PrimeField::new(97);
        // [[2,1,0],[0,3,4],[5,0,1]]: x^3 - 6x^2 + 11x - 26
        let m = vec![vec![2, 1, 0], vec![0, 3, 4], vec![5, 0, 1]];
        let cp = f.char_poly(&m);
        assert_eq!(cp, vec![f.from_i64(-26), 11, f.from_i64(-6), 1]);
    }

    #[test]
    fn nullspace_dimension() {
        let f = PrimeField::new(7);
        let m = vec![vec![1, 2, 3], vec![2, 4, 6], vec![0, 0, 0]];
        let ns = f.nullspace(&m);
        assert_eq!(ns.len(), 2);
        for v in ns {
            let s = (0..3).fold(0, |acc, j| f.add(acc, f.mul(m[0][j], v[j])));
            assert_eq!(s, 0);
        }
    }
}
