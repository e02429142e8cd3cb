//! Multivectors over exact scalars with bitmask-encoded basis tuples, the
//! wedge product, the dual pairing, the contraction action, and catalecticant
//! matrices.

use crate::linalg::ExactMatrix;
use crate::scalar::Scalar;
use std::collections::BTreeMap;

pub const MAX_DIM: u8 = 16;

/// Index tuples are strictly increasing sequences encoded as bitmasks:
/// bit i set means index i is present.
pub fn mask_of(indices: &[usize]) -> u16 {
    let mut m = 0u16;
    for &i in indices {
        m |= 1 << i;
    }
    m
}

pub fn bits_of(mask: u16) -> Vec<usize> {
    (0..16).filter(|i| mask >> i & 1 == 1).collect()
}

/// Sign of `e_A ∧ e_B` relative to the sorted merge, for disjoint masks:
/// parity of the number of pairs (a in A, b in B) with b < a.
pub fn merge_sign(a: u16, b: u16) -> i32 {
    debug_assert_eq!(a & b, 0);
    let mut inversions = 0u32;
    let mut a_rest = a;
    while a_rest != 0 {
        let i = a_rest.trailing_zeros();
        inversions += (b & ((1u16 << i) - 1)).count_ones();
        a_rest &= a_rest - 1;
    }
    if inversions % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Contraction of basis elements: `e*_S . e_T` for S ⊆ T equals
/// `sign * e_{T\S}` where the sign is the parity of the permutation moving
/// the S-positions of T to the front.
pub fn contract_sign(s: u16, t: u16) -> Option<(i32, u16)> {
    if s & t != s {
        return None;
    }
    let t_bits = bits_of(t);
    let mut parity = 0usize;
    let mut k = 0usize;
    for (pos, &i) in t_bits.iter().enumerate() {
        if s >> i & 1 == 1 {
            parity += pos - k;
            k += 1;
        }
    }
    let sign = if parity % 2 == 0 { 1 } else { -1 };
    Some((sign, t & !s))
}

/// All degree-k masks on {0..n1-1} in lexicographic order of the index tuples.
pub fn subsets_lex(n1: u8, k: u8) -> Vec<u16> {
    fn rec(out: &mut Vec<u16>, mask: u16, next: u8, chosen: u8, n1: u8, k: u8) {
        if chosen == k {
            out.push(mask);
            return;
        }
        for i in next..n1 {
            if n1 - i < k - chosen {
                break;
            }
            rec(out, mask | 1 << i, i + 1, chosen + 1, n1, k);
        }
    }
    let mut out = Vec::new();
    rec(&mut out, 0, 0, 0, n1, k);
    out
}

fn binom(n: u8, k: u8) -> usize {
    if k > n {
        return 0;
    }
    let mut r = 1usize;
    for i in 0..k as usize {
        r = r * (n as usize - i) / (i + 1);
    }
    r
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Multivector {
    pub dim: u8,
    pub degree: u8,
    pub dual: bool,
    pub coeffs: BTreeMap<u16, Scalar>,
}

impl Multivector {
    pub fn zero(dim: u8, degree: u8, dual: bool) -> Self {
        assert!(dim <= MAX_DIM && degree <= dim);
        Multivector { dim, degree, dual, coeffs: BTreeMap::new() }
    }

    pub fn basis(dim: u8, mask: u16, dual: bool) -> Self {
        let degree = mask.count_ones() as u8;
        assert!(dim <= MAX_DIM && degree <= dim && mask >> dim == 0);
        let mut coeffs = BTreeMap::new();
        coeffs.insert(mask, Scalar::one());
        Multivector { dim, degree, dual, coeffs }
    }

    pub fn basis_vector(dim: u8, i: usize, dual: bool) -> Self {
        Self::basis(dim, 1 << i, dual)
    }

    /// Term from possibly unsorted indices; the permutation sign is folded
    /// into the coefficient. Errors on repeated indices or range violations.
    pub fn monomial(dim: u8, indices: &[usize], coeff: Scalar, dual: bool) -> Result<Self, String> {
        for &i in indices {
            if i >= dim as usize {
                return Err(format!("index {} out of range for dimension {}", i, dim));
            }
        }
        let mask = mask_of(indices);
        if mask.count_ones() as usize != indices.len() {
            return Err("repeated index in term".to_string());
        }
        // parity of the permutation sorting the indices
        let mut v = indices.to_vec();
        let mut sign = 1i32;
        for i in 0..v.len() {
            for j in (i + 1)..v.len() {
                if v[i] > v[j] {
                    v.swap(i, j);
                    sign = -sign;
                }
            }
        }
        let mut m = Multivector::zero(dim, indices.len() as u8, dual);
        let c = if sign == 1 { coeff } else { -coeff };
        if !c.is_zero() {
            m.coeffs.insert(mask, c);
        }
        Ok(m)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, mask: u16) -> Scalar {
        self.coeffs.get(&mask).cloned().unwrap_or_else(Scalar::zero)
    }

    pub fn add_term(&mut self, mask: u16, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(mask).or_insert_with(Scalar::zero);
        *entry = &*entry + c;
        if entry.is_zero() {
            self.coeffs.remove(&mask);
        }
    }

    pub fn add(&self, other: &Multivector) -> Multivector {
        assert!(self.dim == other.dim && self.degree == other.degree && self.dual == other.dual);
        let mut out = self.clone();
        for (m, c) in &other.coeffs {
            out.add_term(*m, c);
        }
        out
    }

    pub fn sub(&self, other: &Multivector) -> Multivector {
        self.add(&other.scale(&Scalar::from_int(-1)))
    }

    pub fn scale(&self, c: &Scalar) -> Multivector {
        let mut out = Multivector::zero(self.dim, self.degree, self.dual);
        if c.is_zero() {
            return out;
        }
        for (m, v) in &self.coeffs {
            out.coeffs.insert(*m, v * c);
        }
        out
    }

    /// Exterior product. Degrees exceeding the ambient dimension give zero.
    pub fn wedge(&self, other: &Multivector) -> Multivector {
        assert!(self.dim == other.dim, "ambient dimension mismatch");
        assert!(self.dual == other.dual, "cannot wedge primal with dual");
        let deg = self.degree + other.degree;
        if deg > self.dim {
            return Multivector::zero(self.dim, self.dim, self.dual);
        }
        let mut out = Multivector::zero(self.dim, deg, self.dual);
        for (ma, ca) in &self.coeffs {
            for (mb, cb) in &other.coeffs {
                if ma & mb != 0 {
                    continue;
                }
                let s = merge_sign(*ma, *mb);
                let mut c = ca * cb;
                if s < 0 {
                    c = -c;
                }
                out.add_term(ma | mb, &c);
            }
        }
        out
    }

    /// Dual pairing of equal degrees: the determinant pairing, which on basis
    /// elements is the Kronecker delta of masks.
    pub fn pair(&self, other: &Multivector) -> Scalar {
        assert!(self.dim == other.dim && self.degree == other.degree, "pairing degree mismatch");
        assert!(self.dual != other.dual, "pairing needs one dual and one primal argument");
        let mut acc = Scalar::zero();
        for (m, c) in &self.coeffs {
            if let Some(cv) = other.coeffs.get(m) {
                acc += &(c * cv);
            }
        }
        acc
    }

    /// Skew-apolarity contraction: `self` (degree s, opposite flag) acts on
    /// `v` (degree d >= s), producing degree d - s with v's flag.
    pub fn contract(&self, v: &Multivector) -> Multivector {
        assert!(self.dim == v.dim, "ambient dimension mismatch");
        assert!(self.dual != v.dual, "contraction needs opposite flags");
        assert!(self.degree <= v.degree, "contraction degree too large");
        let mut out = Multivector::zero(v.dim, v.degree - self.degree, v.dual);
        for (mh, ch) in &self.coeffs {
            for (mv, cv) in &v.coeffs {
                if let Some((sign, rest)) = contract_sign(*mh, *mv) {
                    let mut c = ch * cv;
                    if sign < 0 {
                        c = -c;
                    }
                    out.add_term(rest, &c);
                }
            }
        }
        out
    }

    /// Coefficient of the volume element in `self ∧ other`.
    pub fn top_pairing_scalar(&self, other: &Multivector) -> Scalar {
        assert!(self.degree + other.degree == self.dim, "degrees are not complementary");
        assert!(self.dual == other.dual);
        let full = if self.dim == 16 { u16::MAX } else { (1u16 << self.dim) - 1 };
        self.wedge(other).coeff(full)
    }

    /// Applies the basis change `e_i -> sum_j g[j][i] e_j` multiplicatively.
    pub fn change_basis(&self, g: &[Vec<Scalar>]) -> Multivector {
        let n1 = self.dim as usize;
        assert!(g.len() == n1 && g.iter().all(|r| r.len() == n1));
        assert!(!self.dual, "change_basis acts on primal multivectors");
        let cols: Vec<Multivector> = (0..n1)
            .map(|i| {
                let mut v = Multivector::zero(self.dim, 1, false);
                for (j, row) in g.iter().enumerate() {
                    v.add_term(1 << j, &row[i]);
                }
                v
            })
            .collect();
        let mut out = Multivector::zero(self.dim, self.degree, self.dual);
        for (m, c) in &self.coeffs {
            let mut w = Multivector::basis(self.dim, 0, false);
            for i in bits_of(*m) {
                w = w.wedge(&cols[i]);
            }
            out = out.add(&w.scale(c));
        }
        out
    }

    /// Terms in lexicographic order of their index tuples.
    pub fn sorted_terms(&self) -> Vec<(Vec<usize>, Scalar)> {
        let mut terms: Vec<(Vec<usize>, Scalar)> =
            self.coeffs.iter().map(|(m, c)| (bits_of(*m), c.clone())).collect();
        terms.sort_by(|a, b| a.0.cmp(&b.0));
        terms
    }

    /// Coordinate vector with respect to the lex basis of the degree.
    pub fn coordinates(&self, basis: &[u16]) -> Vec<Scalar> {
        basis.iter().map(|m| self.coeff(*m)).collect()
    }
}

#[derive(Clone, Debug)]
pub struct CatalecticantMatrix {
    pub s: u8,
    pub d: u8,
    /// lex basis of ⋀^{d-s} V indexing the rows
    pub row_basis: Vec<u16>,
    /// lex basis of ⋀^s V* indexing the columns
    pub col_basis: Vec<u16>,
    pub mat: ExactMatrix,
}

/// Matrix of the contraction map `⋀^s V* -> ⋀^{d-s} V`, `h -> h . t`,
/// in lex bases on both sides.
pub fn catalecticant(t: &Multivector, s: u8) -> CatalecticantMatrix {
    assert!(s <= t.degree, "contraction degree out of range");
    assert!(!t.dual);
    let n1 = t.dim;
    let row_basis = subsets_lex(n1, t.degree - s);
    let col_basis = subsets_lex(n1, s);
    let row_index: BTreeMap<u16, usize> = row_basis.iter().enumerate().map(|(i, m)| (*m, i)).collect();
    let mut mat = ExactMatrix::zeros(row_basis.len(), col_basis.len());
    for (j, smask) in col_basis.iter().enumerate() {
        for (tmask, c) in &t.coeffs {
            if let Some((sign, rest)) = contract_sign(*smask, *tmask) {
                let i = row_index[&rest];
                let mut v = c.clone();
                if sign < 0 {
                    v = -v;
                }
                mat.add_at(i, j, &v);
            }
        }
    }
    CatalecticantMatrix { s, d: t.degree, row_basis, col_basis, mat }
}

/// Rebuilds a multivector from coordinates in a lex mask basis.
pub fn from_coordinates(dim: u8, degree: u8, dual: bool, basis: &[u16], coords: &[Scalar]) -> Multivector {
    let mut m = Multivector::zero(dim, degree, dual);
    for (mask, c) in basis.iter().zip(coords) {
        m.add_term(*mask, c);
    }
    m
}

pub fn binomial(n: u8, k: u8) -> usize {
    binom(n, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn e(dim: u8, i: usize) -> Multivector {
        Multivector::basis_vector(dim, i, false)
    }

    #[test]
    fn wedge_antisymmetry() {
        let a = e(4, 0);
        let b = e(4, 1);
        let ab = a.wedge(&b);
        let ba = b.wedge(&a);
        assert_eq!(ab, ba.scale(&Scalar::from_int(-1)));
        assert!(a.wedge(&a).is_zero());
    }

    #[test]
    fn wedge_of_sums() {
        // (e0+e2) ∧ (e1+e3) = e0e1 + e0e3 - e1e2 + e2e3
        let x = e(4, 0).add(&e(4, 2));
        let y = e(4, 1).add(&e(4, 3));
        let w = x.wedge(&y);
        assert_eq!(w.coeff(0b0011), Scalar::from_int(1));
        assert_eq!(w.coeff(0b1001), Scalar::from_int(1));
        assert_eq!(w.coeff(0b0110), Scalar::from_int(-1));
        assert_eq!(w.coeff(0b1100), Scalar::from_int(1));
    }

    #[test]
    fn contract_basis_cases() {
        let t = e(4, 0).wedge(&e(4, 1)).wedge(&e(4, 2));
        let h = Multivector::basis_vector(4, 0, true);
        let r = h.contract(&t);
        assert_eq!(r, e(4, 1).wedge(&e(4, 2)));
        let h2 = Multivector::basis(4, 0b0011, true);
        let r2 = h2.contract(&t);
        assert_eq!(r2, e(4, 2));
        let h3 = Multivector::basis(4, 0b1100, true);
        assert!(h3.contract(&t).is_zero());
    }

    #[test]
    fn pair_is_degree_zero_contraction() {
        let t = e(4, 0).wedge(&e(4, 1));
        let h = Multivector::basis(4, 0b0011, true);
        assert_eq!(h.pair(&t), Scalar::from_int(1));
        let g = Multivector::basis(4, 0b0101, true);
        assert_eq!(g.pair(&t), Scalar::zero());
    }

    #[test]
    fn lex_subsets() {
        let s = subsets_lex(4, 2);
        let tuples: Vec<Vec<usize>> = s.iter().map(|m| bits_of(*m)).collect();
        assert_eq!(
            tuples,
            vec![vec![0, 1], vec![0, 2], vec![0, 3], vec![1, 2], vec![1, 3], vec![2, 3]]
        );
    }

    #[test]
    fn monomial_sign_normalization() {
        let a = Multivector::monomial(4, &[1, 0], Scalar::one(), false).unwrap();
        let b = Multivector::monomial(4, &[0, 1], Scalar::from_int(-1), false).unwrap();
        assert_eq!(a, b);
        assert!(Multivector::monomial(4, &[1, 1], Scalar::one(), false).is_err());
    }
}
