//! Dense univariate polynomials over the rationals: gcd, square-free parts,
//! exact root extraction through modular images, and splitting into
//! rational quadratic factors.

use super::modp::{roots_modp, Fp, BIG_PRIMES};
use super::rational_reconstruct;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Coefficients low degree first; trailing zeros trimmed, zero = empty.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QPoly {
    pub c: Vec<BigRational>,
}

impl QPoly {
    pub fn new(mut c: Vec<BigRational>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        QPoly { c }
    }

    pub fn zero() -> Self {
        QPoly { c: Vec::new() }
    }

    pub fn constant(v: BigRational) -> Self {
        QPoly::new(vec![v])
    }

    pub fn x() -> Self {
        QPoly::new(vec![BigRational::zero(), BigRational::one()])
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> usize {
        assert!(!self.is_zero(), "degree of zero polynomial");
        self.c.len() - 1
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    pub fn derivative(&self) -> QPoly {
        if self.c.len() <= 1 {
            return QPoly::zero();
        }
        QPoly::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * BigRational::from_integer(BigInt::from(i)))
                .collect(),
        )
    }

    pub fn monic(&self) -> QPoly {
        assert!(!self.is_zero());
        let l = self.c.last().unwrap().clone();
        QPoly::new(self.c.iter().map(|c| c / &l).collect())
    }

    pub fn add(&self, other: &QPoly) -> QPoly {
        let n = self.c.len().max(other.c.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.c.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.c.iter().enumerate() {
            out[i] += c;
        }
        QPoly::new(out)
    }

    pub fn sub(&self, other: &QPoly) -> QPoly {
        let n = self.c.len().max(other.c.len());
        let mut out = vec![BigRational::zero(); n];
        for (i, c) in self.c.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.c.iter().enumerate() {
            out[i] -= c;
        }
        QPoly::new(out)
    }

    pub fn mul(&self, other: &QPoly) -> QPoly {
        if self.is_zero() || other.is_zero() {
            return QPoly::zero();
        }
        let mut out = vec![BigRational::zero(); self.c.len() + other.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.c.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        QPoly::new(out)
    }

    /// Euclidean division; returns (quotient, remainder).
    pub fn divmod(&self, other: &QPoly) -> (QPoly, QPoly) {
        assert!(!other.is_zero(), "division by zero polynomial");
        let mut r = self.c.clone();
        let db = other.degree();
        let lead = other.c[db].clone();
        let mut q = vec![BigRational::zero(); self.c.len().saturating_sub(db)];
        while r.len() > db {
            let da = r.len() - 1;
            let f = &r[da] / &lead;
            if !f.is_zero() {
                q[da - db] = f.clone();
                for j in 0..=db {
                    let s = &other.c[j] * &f;
                    r[da - db + j] -= s;
                }
            }
            while r.last().map_or(false, |x| x.is_zero()) {
                r.pop();
            }
            if r.len() <= db {
                break;
            }
        }
        (QPoly::new(q), QPoly::new(r))
    }

    pub fn gcd(&self, other: &QPoly) -> QPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let (_, r) = a.divmod(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Product of the distinct irreducible factors, monic.
    pub fn square_free_part(&self) -> QPoly {
        assert!(!self.is_zero());
        if self.degree() == 0 {
            return QPoly::constant(BigRational::one());
        }
        let g = self.gcd(&self.derivative());
        if g.degree() == 0 {
            return self.monic();
        }
        let (q, r) = self.divmod(&g);
        debug_assert!(r.is_zero());
        q.monic()
    }

    /// Image mod p with denominators inverted; None when a denominator
    /// vanishes mod p.
    pub fn modp(&self, fp: Fp) -> Option<Vec<u64>> {
        self.c
            .iter()
            .map(|c| {
                let d = fp.from_bigint(c.denom())?;
                if d == 0 {
                    return None;
                }
                let n = fp.from_bigint(c.numer())?;
                Some(fp.mul(n, fp.inv(d)))
            })
            .collect()
    }

    /// All rational roots, found through modular images and verified exactly.
    /// Residues from up to three primes are combined by CRT, so roots with
    /// numerator and denominator up to roughly 2^92 are recovered; anything
    /// larger is treated as "no rational root" and callers fall back.
    pub fn rational_roots(&self) -> Vec<BigRational> {
        assert!(!self.is_zero());
        if self.degree() == 0 {
            return Vec::new();
        }
        let f = self.square_free_part();
        // root lists modulo up to three primes of good reduction
        let mut images: Vec<(BigInt, Vec<u64>)> = Vec::new();
        for &p in &BIG_PRIMES {
            let fp = Fp::new(p);
            let Some(fm) = f.modp(fp) else { continue };
            if fm.last() == Some(&0) {
                continue;
            }
            images.push((BigInt::from(p), roots_modp(fp, &fm)));
            if images.len() == 3 {
                break;
            }
        }
        let mut out: Vec<BigRational> = Vec::new();
        let mut push_verified = |cand: BigRational, f: &QPoly, out: &mut Vec<BigRational>| {
            if f.eval(&cand).is_zero() && !out.contains(&cand) {
                out.push(cand);
            }
        };
        // residue sets of increasing modulus: single primes, pairs, triples
        let mut stages: Vec<(BigInt, Vec<BigInt>)> = Vec::new();
        for (p, rs) in &images {
            stages.push((p.clone(), rs.iter().map(|&r| BigInt::from(r)).collect()));
        }
        if images.len() >= 2 {
            stages.push(crt_stage(&images[0], &images[1]));
        }
        if images.len() >= 3 {
            let pair = crt_stage(&images[0], &images[1]);
            let third = (
                images[2].0.clone(),
                images[2].1.iter().map(|&r| BigInt::from(r)).collect(),
            );
            stages.push(crt_stage2(&pair, &third));
        }
        for (m, residues) in stages {
            for a in residues {
                if let Some(cand) = rational_reconstruct(&a, &m) {
                    push_verified(cand, &f, &mut out);
                }
            }
        }
        out.sort();
        out
    }

    /// Divides out the linear factor (x - root); panics if not a root.
    pub fn deflate(&self, root: &BigRational) -> QPoly {
        let lin = QPoly::new(vec![-root.clone(), BigRational::one()]);
        let (q, r) = self.divmod(&lin);
        assert!(r.is_zero(), "deflate by a non-root");
        q
    }
}

/// All pairwise CRT combinations of two residue lists.
fn crt_stage(a: &(BigInt, Vec<u64>), b: &(BigInt, Vec<u64>)) -> (BigInt, Vec<BigInt>) {
    let bv: Vec<BigInt> = b.1.iter().map(|&r| BigInt::from(r)).collect();
    crt_stage2(&(a.0.clone(), a.1.iter().map(|&r| BigInt::from(r)).collect()), &(b.0.clone(), bv))
}

fn crt_stage2(a: &(BigInt, Vec<BigInt>), b: &(BigInt, Vec<BigInt>)) -> (BigInt, Vec<BigInt>) {
    let (pa, ra) = a;
    let (pb, rb) = b;
    let m = pa * pb;
    // inverse of pa mod pb by extended euclid
    let inv = mod_inverse(pa, pb).expect("coprime moduli");
    let mut out = Vec::with_capacity(ra.len() * rb.len());
    for x in ra {
        for y in rb {
            let k = ((y - x) * &inv).mod_floor(pb);
            out.push(x + pa * k);
        }
    }
    (m, out)
}

fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let (mut r0, mut r1) = (m.clone(), a.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while !r1.is_zero() {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = r1;
        r1 = r2;
        t0 = t1;
        t1 = t2;
    }
    if r0 == BigInt::one() {
        Some(t0.mod_floor(m))
    } else {
        None
    }
}

use num_integer::Integer;

/// Roots of a*x^2 + b*x + c over Q(sqrt(D)), exact.
pub fn quadratic_roots(a: &BigRational, b: &BigRational, c: &BigRational) -> (Scalar, Scalar) {
    assert!(!a.is_zero());
    let disc = b * b - BigRational::from_integer(BigInt::from(4)) * a * c;
    let sq = Scalar::sqrt_rational(&disc);
    let two_a = Scalar::from_rational(BigRational::from_integer(BigInt::from(2)) * a);
    let nb = Scalar::from_rational(-b.clone());
    let r1 = &(&nb + &sq) / &two_a;
    let r2 = &(&nb - &sq) / &two_a;
    (r1, r2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }

    fn poly(cs: &[i64]) -> QPoly {
        QPoly::new(cs.iter().map(|&x| q(x)).collect())
    }

    #[test]
    fn gcd_and_square_free() {
        // (x-1)^2 (x+2) = x^3 - 3x + 2
        let f = poly(&[2, -3, 0, 1]);
        let sf = f.square_free_part();
        // (x-1)(x+2) = x^2 + x - 2
        assert_eq!(sf, poly(&[-2, 1, 1]));
    }

    #[test]
    fn rational_roots_found_and_verified() {
        // (2x - 3)(x + 5)(x^2 + 1)
        let f = poly(&[-3, 2]).mul(&poly(&[5, 1])).mul(&poly(&[1, 0, 1]));
        let mut roots = f.rational_roots();
        roots.sort();
        assert_eq!(roots, vec![q(-5), BigRational::new(BigInt::from(3), BigInt::from(2))]);
    }

    #[test]
    fn no_rational_roots() {
        let f = poly(&[1, 0, 1]);
        assert!(f.rational_roots().is_empty());
    }

    #[test]
    fn quadratic_over_extension() {
        // x^2 - 2x - 1: roots 1 +- sqrt2
        let (r1, r2) = quadratic_roots(&q(1), &q(-2), &q(-1));
        let one = Scalar::from_int(1);
        let s2 = Scalar::sqrt_rational(&q(2));
        assert_eq!(r1, &one + &s2);
        assert_eq!(r2, &one - &s2);
    }

    #[test]
    fn big_rational_root_recovered() {
        // root 12345678901234567/98765432109876541 is far beyond one prime's bound
        let num = BigInt::parse_bytes(b"12345678901234567", 10).unwrap();
        let den = BigInt::parse_bytes(b"98765432109876541", 10).unwrap();
        let root = BigRational::new(num.clone(), den.clone());
        let f = QPoly::new(vec![
            BigRational::from_integer(-num),
            BigRational::from_integer(den),
        ])
        .mul(&poly(&[1, 3, 1]));
        let roots = f.rational_roots();
        assert_eq!(roots, vec![root]);
    }

    #[test]
    fn deflate_root() {
        let f = poly(&[-6, 11, -6, 1]); // (x-1)(x-2)(x-3)
        let g = f.deflate(&q(1));
        assert_eq!(g, poly(&[6, -5, 1]));
    }
}
