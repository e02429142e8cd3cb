//! Arithmetic, linear algebra, and polynomial root finding over prime fields.

use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};

/// Prime field of odd characteristic `p < 2^62`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fp {
    pub p: u64,
}

impl Fp {
    pub fn new(p: u64) -> Self {
        Fp { p }
    }

    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.p {
            s - self.p
        } else {
            s
        }
    }

    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.p - b
        }
    }

    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.p - a
        }
    }

    pub fn mul(&self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.p as u128) as u64
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut acc = 1u64;
        a %= self.p;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        acc
    }

    pub fn inv(&self, a: u64) -> u64 {
        assert!(a % self.p != 0, "inverse of zero mod {}", self.p);
        self.pow(a, self.p - 2)
    }

    /// Image of a rational scalar, or None if the denominator vanishes mod p
    /// or the scalar lives in a quadratic extension.
    pub fn from_scalar(&self, s: &Scalar) -> Option<u64> {
        let r = s.as_rational()?;
        self.from_bigint(r.denom()).filter(|&d| d != 0).map(|d| {
            let n = self.from_bigint(r.numer()).unwrap();
            self.mul(n, self.inv(d))
        })
    }

    pub fn from_bigint(&self, n: &BigInt) -> Option<u64> {
        let m = n.mod_floor(&BigInt::from(self.p));
        m.to_u64()
    }
}

use num_integer::Integer;

/// Rank of a matrix over GF(p) by Gaussian elimination.
pub fn rank_modp(fp: Fp, mut m: Vec<Vec<u64>>) -> usize {
    let rows = m.len();
    if rows == 0 {
        return 0;
    }
    let cols = m[0].len();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = fp.inv(m[r][c]);
        for j in c..cols {
            m[r][j] = fp.mul(m[r][j], inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in c..cols {
                    let s = fp.mul(m[r][j], f);
                    m[i][j] = fp.sub(m[i][j], s);
                }
            }
        }
        r += 1;
    }
    r
}

/// Right kernel basis of a matrix over GF(p).
pub fn kernel_modp(fp: Fp, mut m: Vec<Vec<u64>>) -> Vec<Vec<u64>> {
    let rows = m.len();
    let cols = if rows == 0 { 0 } else { m[0].len() };
    let mut pivots: Vec<usize> = Vec::new();
    let mut r = 0usize;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(piv) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, piv);
        let inv = fp.inv(m[r][c]);
        for j in c..cols {
            m[r][j] = fp.mul(m[r][j], inv);
        }
        for i in 0..rows {
            if i != r && m[i][c] != 0 {
                let f = m[i][c];
                for j in c..cols {
                    let s = fp.mul(m[r][j], f);
                    m[i][j] = fp.sub(m[i][j], s);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    let pivot_set: std::collections::BTreeSet<usize> = pivots.iter().copied().collect();
    let mut basis = Vec::new();
    for f in 0..cols {
        if pivot_set.contains(&f) {
            continue;
        }
        let mut v = vec![0u64; cols];
        v[f] = 1;
        for (row, &p) in pivots.iter().enumerate() {
            v[p] = fp.neg(m[row][f]);
        }
        basis.push(v);
    }
    basis
}

// ---- dense polynomials over GF(p), low degree first ----

fn ptrim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn pmul(fp: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = fp.add(out[i + j], fp.mul(x, y));
        }
    }
    ptrim(&mut out);
    out
}

fn prem(fp: Fp, a: &[u64], m: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    ptrim(&mut a);
    let dm = m.len() - 1;
    let lead_inv = fp.inv(m[dm]);
    while a.len() > dm {
        let da = a.len() - 1;
        let f = fp.mul(a[da], lead_inv);
        if f != 0 {
            for j in 0..=dm {
                let s = fp.mul(f, m[j]);
                a[da - dm + j] = fp.sub(a[da - dm + j], s);
            }
        }
        ptrim(&mut a);
        if a.len() <= dm {
            break;
        }
    }
    a
}

fn pgcd(fp: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    ptrim(&mut a);
    ptrim(&mut b);
    while !b.is_empty() {
        let r = prem(fp, &a, &b);
        a = b;
        b = r;
    }
    if let Some(&l) = a.last() {
        let inv = fp.inv(l);
        for x in a.iter_mut() {
            *x = fp.mul(*x, inv);
        }
    }
    a
}

/// `x^e mod m` over GF(p).
fn pow_x_mod(fp: Fp, e: u64, m: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = prem(fp, &[0, 1], m);
    let mut e = e;
    while e > 0 {
        if e & 1 == 1 {
            result = prem(fp, &pmul(fp, &result, &base), m);
        }
        base = prem(fp, &pmul(fp, &base, &base), m);
        e >>= 1;
    }
    result
}

/// `(x + shift)^((p-1)/2) mod m` over GF(p).
fn pow_linear_mod(fp: Fp, shift: u64, m: &[u64]) -> Vec<u64> {
    let mut result = vec![1u64];
    let mut base = prem(fp, &[shift, 1], m);
    let mut e = (fp.p - 1) / 2;
    while e > 0 {
        if e & 1 == 1 {
            result = prem(fp, &pmul(fp, &result, &base), m);
        }
        base = prem(fp, &pmul(fp, &base, &base), m);
        e >>= 1;
    }
    result
}

/// All roots in GF(p) of a nonzero polynomial, via the distinct-linear-factor
/// part and equal-degree splitting. Sorted ascending.
pub fn roots_modp(fp: Fp, poly: &[u64]) -> Vec<u64> {
    let mut f = poly.to_vec();
    ptrim(&mut f);
    assert!(!f.is_empty(), "zero polynomial");
    if f.len() == 1 {
        return Vec::new();
    }
    // product of distinct linear factors: gcd(x^p - x, f)
    let xp = pow_x_mod(fp, fp.p, &f);
    let mut xpx = xp;
    // subtract x
    if xpx.len() < 2 {
        xpx.resize(2, 0);
    }
    xpx[1] = fp.sub(xpx[1], 1);
    ptrim(&mut xpx);
    let g = if xpx.is_empty() { f.clone() } else { pgcd(fp, &f, &xpx) };
    let mut roots = Vec::new();
    split_linear(fp, g, &mut roots, 0x9e3779b97f4a7c15);
    roots.sort_unstable();
    roots
}

fn split_linear(fp: Fp, g: Vec<u64>, roots: &mut Vec<u64>, seed: u64) {
    if g.len() <= 1 {
        return;
    }
    if g.len() == 2 {
        // g = c0 + c1 x
        roots.push(fp.mul(fp.neg(g[0]), fp.inv(g[1])));
        return;
    }
    // deterministic sequence of shifts
    let mut s = seed;
    loop {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let shift = s % fp.p;
        let h = pow_linear_mod(fp, shift, &g);
        // gcd(g, h - 1)
        let mut hm1 = h;
        if hm1.is_empty() {
            hm1 = vec![fp.neg(1)];
        } else {
            hm1[0] = fp.sub(hm1[0], 1);
        }
        ptrim(&mut hm1);
        if hm1.is_empty() {
            continue;
        }
        let d = pgcd(fp, &g, &hm1);
        if d.len() > 1 && d.len() < g.len() {
            let q = pquot(fp, &g, &d);
            split_linear(fp, d, roots, s);
            split_linear(fp, q, roots, s ^ 0x5555_5555_5555_5555);
            return;
        }
    }
}

fn pquot(fp: Fp, a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut a = a.to_vec();
    ptrim(&mut a);
    let db = b.len() - 1;
    let lead_inv = fp.inv(b[db]);
    let mut q = vec![0u64; a.len().saturating_sub(db)];
    while a.len() > db {
        let da = a.len() - 1;
        let f = fp.mul(a[da], lead_inv);
        q[da - db] = f;
        for j in 0..=db {
            let s = fp.mul(f, b[j]);
            a[da - db + j] = fp.sub(a[da - db + j], s);
        }
        ptrim(&mut a);
    }
    q
}

/// Large primes for modular root finding and rational reconstruction.
pub const BIG_PRIMES: [u64; 8] = [
    (1 << 62) - 57,
    (1 << 62) - 87,
    (1 << 62) - 117,
    (1 << 62) - 143,
    (1 << 62) - 153,
    (1 << 62) - 167,
    (1 << 62) - 171,
    (1 << 62) - 195,
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn field_ops() {
        let fp = Fp::new(101);
        assert_eq!(fp.mul(fp.inv(7), 7), 1);
        assert_eq!(fp.pow(2, 100), 1);
    }

    #[test]
    fn small_rank_kernel() {
        let fp = Fp::new(7);
        let m = vec![vec![1, 2, 3], vec![2, 4, 6]];
        assert_eq!(rank_modp(fp, m.clone()), 1);
        let k = kernel_modp(fp, m);
        assert_eq!(k.len(), 2);
    }

    #[test]
    fn roots_of_factored_poly() {
        let fp = Fp::new(BIG_PRIMES[0]);
        // (x-2)(x-5)(x-11) = x^3 - 18x^2 + 87x - 110
        let poly = vec![fp.neg(110), 87, fp.neg(18), 1];
        let r = roots_modp(fp, &poly);
        assert_eq!(r, vec![2, 5, 11]);
    }

    #[test]
    fn irreducible_quadratic_has_no_roots() {
        let fp = Fp::new(BIG_PRIMES[0]);
        // x^2 + 1 has roots mod p only if p = 1 mod 4; p = 2^62 - 57 = 3 mod 4
        let poly = vec![1, 0, 1];
        assert!(roots_modp(fp, &poly).is_empty());
    }
}
