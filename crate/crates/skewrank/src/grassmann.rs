//! Decomposability tests, Plucker quadrics, rank-one sums, lines in the
//! Grassmannian, and exact 2-form decomposition.

use crate::exterior::{catalecticant, merge_sign, subsets_lex, Multivector};
use crate::linalg::Subspace;
use crate::scalar::Scalar;

/// Witness that a tensor is decomposable: `scale * (f_1 ^ ... ^ f_d) = t`,
/// with the factors an echelon basis of the spanned d-plane.
#[derive(Clone, Debug)]
pub struct DecomposableCertificate {
    pub factors: Vec<Multivector>,
    pub scale: Scalar,
}

impl DecomposableCertificate {
    pub fn expand(&self, dim: u8, degree: u8) -> Multivector {
        let mut w = Multivector::basis(dim, 0, false);
        for f in &self.factors {
            w = w.wedge(f);
        }
        debug_assert_eq!(w.degree, degree);
        w.scale(&self.scale)
    }
}

/// Kernel-dimension test: t of degree d is decomposable iff
/// dim ker C^{1,d-1} = n+1-d. Errors on the zero tensor.
pub fn is_decomposable(t: &Multivector) -> Result<Option<DecomposableCertificate>, String> {
    if t.is_zero() {
        return Err("decomposability test needs a nonzero tensor".to_string());
    }
    let n1 = t.dim as usize;
    let d = t.degree as usize;
    let cat = catalecticant(t, 1);
    let ker = cat.mat.kernel();
    if ker.dim() != n1 - d {
        return Ok(None);
    }
    let w = ker.perp();
    let factors: Vec<Multivector> = w
        .basis
        .iter()
        .map(|row| {
            let mut v = Multivector::zero(t.dim, 1, t.dual);
            for (i, c) in row.iter().enumerate() {
                v.add_term(1u16 << i, c);
            }
            v
        })
        .collect();
    let mut prod = Multivector::basis(t.dim, 0, t.dual);
    for f in &factors {
        prod = prod.wedge(f);
    }
    // lex-first nonzero coordinate fixes the scale
    let mask = match prod.coeffs.iter().find(|(_, c)| !c.is_zero()) {
        Some((&m, _)) => m,
        None => return Ok(None),
    };
    let scale = &t.coeff(mask) * &prod.coeff(mask).inv();
    if prod.scale(&scale).sub(t).is_zero() {
        Ok(Some(DecomposableCertificate { factors, scale }))
    } else {
        Ok(None)
    }
}

/// All three-term Plucker quadric values: for every (d-1)-subset S and
/// (d+1)-subset T, sum_k (-1)^k p_{S+T[k]} p_{T-T[k]}. All vanish iff t is
/// decomposable.
pub fn plucker_residuals(t: &Multivector) -> Vec<Scalar> {
    let n1 = t.dim;
    let d = t.degree;
    if d == 0 || d as usize >= n1 as usize {
        return Vec::new();
    }
    let smalls = subsets_lex(n1, d - 1);
    let bigs = subsets_lex(n1, d + 1);
    let mut out = Vec::with_capacity(smalls.len() * bigs.len());
    for &s in &smalls {
        for &b in &bigs {
            let mut acc = Scalar::zero();
            let mut sign = 1i32;
            for j in 0..n1 {
                let bit = 1u16 << j;
                if b & bit == 0 {
                    continue;
                }
                // term (-1)^k p_{S u {j}} p_{T \ {j}}, zero when j in S
                if s & bit == 0 {
                    let ms = merge_sign(bit, s);
                    let c = &t.coeff(s | bit) * &t.coeff(b & !bit);
                    if sign * ms == 1 {
                        acc = &acc + &c;
                    } else {
                        acc = &acc - &c;
                    }
                }
                sign = -sign;
            }
            out.push(acc);
        }
    }
    out
}

#[derive(Clone, Debug)]
pub enum RankOneSum {
    RankOne(DecomposableCertificate),
    RankTwo,
}

fn span_of(cert: &DecomposableCertificate, n1: usize) -> Subspace {
    let rows = cert
        .factors
        .iter()
        .map(|f| (0..n1).map(|i| f.coeff(1u16 << i)).collect())
        .collect();
    Subspace::from_spanning(n1, rows)
}

/// Sum of two rank-one tensors has rank one iff the spanned d-planes meet in
/// dimension at least d-1.
pub fn rank_one_sum(v1: &Multivector, v2: &Multivector) -> Result<RankOneSum, String> {
    let c1 = is_decomposable(v1)?.ok_or("first summand is not decomposable")?;
    let c2 = is_decomposable(v2)?.ok_or("second summand is not decomposable")?;
    let n1 = v1.dim as usize;
    let d = v1.degree as usize;
    let meet = span_of(&c1, n1).intersect(&span_of(&c2, n1));
    if meet.dim() + 1 < d {
        return Ok(RankOneSum::RankTwo);
    }
    let s = v1.add(v2);
    if s.is_zero() {
        return Ok(RankOneSum::RankOne(DecomposableCertificate {
            factors: c1.factors,
            scale: Scalar::zero(),
        }));
    }
    match is_decomposable(&s)? {
        Some(cert) => Ok(RankOneSum::RankOne(cert)),
        None => Err("sum of overlapping rank-one tensors failed to factor".to_string()),
    }
}

/// True iff the projective line through two distinct rank-one points lies
/// inside the Grassmannian.
pub fn line_in_grassmannian(v1: &Multivector, v2: &Multivector) -> Result<bool, String> {
    let full = subsets_lex(v1.dim, v1.degree);
    let a = v1.coordinates(&full);
    let b = v2.coordinates(&full);
    let pair = Subspace::from_spanning(full.len(), vec![a, b]);
    if pair.dim() < 2 {
        return Err("points are projectively equal".to_string());
    }
    Ok(matches!(rank_one_sum(v1, v2)?, RankOneSum::RankOne(_)))
}

/// Writes a 2-form as a sum of decomposable terms x_i ^ y_i by pivot peeling.
/// The number of terms is half the rank of the skew matrix.
pub fn two_form_decompose(t: &Multivector) -> Vec<(Multivector, Multivector)> {
    assert_eq!(t.degree, 2, "two_form_decompose needs a 2-form");
    let n1 = t.dim as usize;
    let mut w = t.clone();
    let mut out = Vec::new();
    while !w.is_zero() {
        let (&k, _) = w.coeffs.iter().find(|(_, c)| !c.is_zero()).unwrap();
        let i = k.trailing_zeros() as usize;
        let j = (15 - k.leading_zeros()) as usize;
        // skew matrix entries: A[a][b] = coeff of e_a^e_b for a<b, -coeff else
        let entry = |a: usize, b: usize| -> Scalar {
            if a == b {
                return Scalar::zero();
            }
            let m = (1u16 << a) | (1u16 << b);
            let c = w.coeff(m);
            if a < b {
                c
            } else {
                -&c
            }
        };
        let pivot = entry(i, j);
        let mut x = Multivector::zero(t.dim, 1, t.dual);
        let mut y = Multivector::zero(t.dim, 1, t.dual);
        for a in 0..n1 {
            x.add_term(1u16 << a, &entry(a, j));
            y.add_term(1u16 << a, &(&entry(i, a) * &pivot.inv()));
        }
        let term = x.wedge(&y);
        w = w.sub(&term);
        out.push((x, y));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::mask_of;

    fn mono(dim: u8, idx: &[usize]) -> Multivector {
        Multivector::monomial(dim, idx, Scalar::one(), false).unwrap()
    }

    #[test]
    fn rank_one_certificate() {
        let t = mono(6, &[0, 1, 2]);
        let c = is_decomposable(&t).unwrap().unwrap();
        assert_eq!(c.factors.len(), 3);
        assert!(c.expand(6, 3).sub(&t).is_zero());
    }

    #[test]
    fn rank_two_rejected() {
        let t = mono(6, &[0, 1, 2]).add(&mono(6, &[3, 4, 5]));
        assert!(is_decomposable(&t).unwrap().is_none());
    }

    #[test]
    fn scale_recovered() {
        let t = Multivector::monomial(4, &[0, 2, 3], Scalar::from_int(2), false)
            .unwrap()
            .add(&Multivector::monomial(4, &[1, 2, 3], Scalar::from_int(2), false).unwrap());
        // 2 (e0+e1)^e2^e3
        let c = is_decomposable(&t).unwrap().unwrap();
        assert!(c.expand(4, 3).sub(&t).is_zero());
        assert_eq!(c.scale, Scalar::from_int(2));
    }

    #[test]
    fn plucker_on_rank_two_2form() {
        let t = mono(4, &[0, 1]).add(&mono(4, &[2, 3]));
        let res = plucker_residuals(&t);
        assert!(res.iter().any(|c| *c == Scalar::one()));
        let dec = mono(4, &[0, 1]);
        assert!(plucker_residuals(&dec).iter().all(|c| c.is_zero()));
    }

    #[test]
    fn plucker_zero_iff_decomposable_cases() {
        let good = mono(6, &[1, 3, 5]);
        assert!(plucker_residuals(&good).iter().all(|c| c.is_zero()));
        let bad = mono(6, &[0, 1, 2]).add(&mono(6, &[3, 4, 5]));
        assert!(plucker_residuals(&bad).iter().any(|c| !c.is_zero()));
    }

    #[test]
    fn overlapping_planes_sum_to_rank_one() {
        // e0^e2 + e1^e0 is projectively e0^(e2-e1)
        let v1 = mono(4, &[0, 2]);
        // unsorted index input is normalized with a sign by the constructor
        let v2 = Multivector::monomial(4, &[1, 0], Scalar::one(), false).unwrap();
        assert_eq!(v2.coeff(0b11), Scalar::from_int(-1));
        match rank_one_sum(&v1, &v2).unwrap() {
            RankOneSum::RankOne(c) => {
                let s = v1.add(&v2);
                assert!(c.expand(4, 2).sub(&s).is_zero());
            }
            RankOneSum::RankTwo => panic!("expected rank one"),
        }
    }

    #[test]
    fn disjoint_planes_sum_to_rank_two() {
        let v1 = mono(7, &[0, 1, 2]);
        let v2 = mono(7, &[0, 3, 4]);
        assert!(line_in_grassmannian(&mono(7, &[0, 1, 2]), &mono(7, &[0, 1, 3])).unwrap());
        match rank_one_sum(&v1, &v2).unwrap() {
            RankOneSum::RankTwo => {}
            _ => panic!("expected rank two"),
        }
        assert!(!line_in_grassmannian(&v1, &v2).unwrap());
    }

    #[test]
    fn scalar_multiple_is_rank_one() {
        let v = mono(5, &[1, 2, 4]);
        let w = v.scale(&Scalar::from_int(3));
        match rank_one_sum(&v, &w).unwrap() {
            RankOneSum::RankOne(c) => assert!(c.expand(5, 3).sub(&v.add(&w)).is_zero()),
            _ => panic!("expected rank one"),
        }
    }

    #[test]
    fn cancelling_sum() {
        let v = mono(5, &[0, 1, 2]);
        let w = v.scale(&Scalar::from_int(-1));
        match rank_one_sum(&v, &w).unwrap() {
            RankOneSum::RankOne(c) => assert!(c.scale.is_zero()),
            _ => panic!("expected degenerate rank one"),
        }
    }

    #[test]
    fn two_form_peeling() {
        let zero = Multivector::zero(6, 2, false);
        assert!(two_form_decompose(&zero).is_empty());
        let one = mono(6, &[0, 1]);
        assert_eq!(two_form_decompose(&one).len(), 1);
        let two = mono(6, &[0, 1]).add(&mono(6, &[2, 3]));
        let terms = two_form_decompose(&two);
        assert_eq!(terms.len(), 2);
        let mut s = Multivector::zero(6, 2, false);
        for (x, y) in &terms {
            s = s.add(&x.wedge(y));
        }
        assert!(s.sub(&two).is_zero());
        // a messier one
        let mut t = Multivector::zero(6, 2, false);
        t.add_term(mask_of(&[0, 3]), &Scalar::from_int(2));
        t.add_term(mask_of(&[1, 3]), &Scalar::from_int(-5));
        t.add_term(mask_of(&[1, 4]), &Scalar::from_int(7));
        t.add_term(mask_of(&[2, 5]), &Scalar::from_int(1));
        t.add_term(mask_of(&[0, 5]), &Scalar::from_int(3));
        let terms = two_form_decompose(&t);
        let mut s = Multivector::zero(6, 2, false);
        for (x, y) in &terms {
            s = s.add(&x.wedge(y));
        }
        assert!(s.sub(&t).is_zero());
        assert!(terms.len() <= 3);
    }
}
