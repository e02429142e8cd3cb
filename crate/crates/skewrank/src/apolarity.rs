//! Graded annihilators, apolar ideals of rank-one point sets with
//! minimal-generator reports, the apolarity criterion, and essential-variable
//! reduction.

use crate::exterior::{binomial, catalecticant, from_coordinates, subsets_lex, Multivector};
use crate::grassmann::is_decomposable;
use crate::linalg::{ExactMatrix, Subspace};
use crate::scalar::Scalar;

/// The annihilator of a degree-d tensor, graded by contraction degree s = 0..d.
/// Piece s is the kernel of the catalecticant mapping degree-s dual forms into
/// degree d-s, held as a subspace in the lex coordinates of that dual piece.
#[derive(Clone, Debug)]
pub struct GradedAnnihilator {
    pub dim: u8,
    pub degree: u8,
    pub pieces: Vec<Subspace>,
}

pub fn annihilator(t: &Multivector) -> GradedAnnihilator {
    let pieces = (0..=t.degree)
        .map(|s| catalecticant(t, s).mat.kernel())
        .collect();
    GradedAnnihilator {
        dim: t.dim,
        degree: t.degree,
        pieces,
    }
}

impl GradedAnnihilator {
    /// Basis of the degree-s piece as dual multivectors.
    pub fn piece_elements(&self, s: u8) -> Vec<Multivector> {
        let basis = subsets_lex(self.dim, s);
        self.pieces[s as usize]
            .basis
            .iter()
            .map(|row| from_coordinates(self.dim, s, true, &basis, row))
            .collect()
    }
}

/// Graded data of the ideal cutting out a finite set of rank-one points,
/// with minimal-generator degrees and bases.
#[derive(Clone, Debug)]
pub struct PointIdealReport {
    pub dim: u8,
    pub degree: u8,
    /// dimensions of the ideal piece in each dual degree s = 0..=n+1
    pub piece_dims: Vec<usize>,
    /// minimal generators in degree s: dim I_s - dim(V* wedge I_{s-1})
    pub generator_counts: Vec<usize>,
    /// representatives completing the wedge-up of lower degrees to I_s
    pub generator_bases: Vec<Vec<Multivector>>,
    /// when a tensor was supplied: whether its degree-d annihilator piece
    /// contains the ideal's degree-d piece
    pub apolar_to_supplied: Option<bool>,
    pieces: Vec<Subspace>,
}

impl PointIdealReport {
    pub fn piece(&self, s: usize) -> &Subspace {
        &self.pieces[s]
    }
}

fn wedge_up(dim: u8, s: u8, lower: &Subspace) -> Vec<Vec<Scalar>> {
    // span of e_i* ^ w over basis elements w of the lower piece
    let lower_basis = subsets_lex(dim, s - 1);
    let target_basis = subsets_lex(dim, s);
    let mut rows = Vec::new();
    for w in lower.basis.iter() {
        let mv = from_coordinates(dim, s - 1, true, &lower_basis, w);
        for i in 0..dim as usize {
            let e = Multivector::basis_vector(dim, i, true);
            let wedge = e.wedge(&mv);
            if !wedge.is_zero() {
                rows.push(wedge.coordinates(&target_basis));
            }
        }
    }
    rows
}

/// Apolar ideal of a set of rank-one points, all of the same dimension and
/// degree. Rejects points failing the decomposability test. When a tensor is
/// supplied, additionally reports whether the ideal annihilates it in degree d.
pub fn point_ideal(
    points: &[Multivector],
    supplied: Option<&Multivector>,
) -> Result<PointIdealReport, String> {
    if points.is_empty() {
        return Err("point_ideal needs at least one point".to_string());
    }
    let dim = points[0].dim;
    let degree = points[0].degree;
    for (i, p) in points.iter().enumerate() {
        if p.dim != dim || p.degree != degree {
            return Err(format!("point {} has mismatched dimension or degree", i));
        }
        if is_decomposable(p)?.is_none() {
            return Err(format!("point {} is not decomposable", i));
        }
    }
    let anns: Vec<GradedAnnihilator> = points.iter().map(annihilator).collect();
    let mut pieces: Vec<Subspace> = Vec::with_capacity(dim as usize + 1);
    for s in 0..=dim {
        let m = binomial(dim, s);
        if s > degree {
            pieces.push(Subspace::full(m));
            continue;
        }
        let mut acc = anns[0].pieces[s as usize].clone();
        for a in &anns[1..] {
            acc = acc.intersect(&a.pieces[s as usize]);
        }
        pieces.push(acc);
    }
    let piece_dims: Vec<usize> = pieces.iter().map(|p| p.dim()).collect();
    let mut generator_counts = vec![0usize; dim as usize + 1];
    let mut generator_bases: Vec<Vec<Multivector>> = vec![Vec::new(); dim as usize + 1];
    generator_counts[0] = piece_dims[0];
    for s in 1..=dim as usize {
        let up = wedge_up(dim, s as u8, &pieces[s - 1]);
        let from_below = Subspace::from_spanning(binomial(dim, s as u8), up);
        if !from_below.is_subspace_of(&pieces[s]) {
            return Err("ideal is not closed under wedging".to_string());
        }
        generator_counts[s] = pieces[s].dim() - from_below.dim();
        // grow the wedge-up echelon by ideal basis vectors that escape it
        let mut span = from_below;
        let target_basis = subsets_lex(dim, s as u8);
        for row in pieces[s].basis.iter() {
            if !span.contains(row) {
                generator_bases[s].push(from_coordinates(dim, s as u8, true, &target_basis, row));
                let mut rows = span.basis.clone();
                rows.push(row.clone());
                span = Subspace::from_spanning(binomial(dim, s as u8), rows);
            }
        }
        debug_assert_eq!(generator_bases[s].len(), generator_counts[s]);
    }
    let apolar_to_supplied = match supplied {
        None => None,
        Some(t) => {
            if t.dim != dim || t.degree != degree {
                return Err("supplied tensor has mismatched dimension or degree".to_string());
            }
            let tperp_d = catalecticant(t, degree).mat.kernel();
            Some(pieces[degree as usize].is_subspace_of(&tperp_d))
        }
    };
    Ok(PointIdealReport {
        dim,
        degree,
        piece_dims,
        generator_counts,
        generator_bases,
        apolar_to_supplied,
        pieces,
    })
}

/// Apolarity criterion: t lies in the span of the given rank-one points iff
/// the common degree-d annihilator of the points annihilates t. On success the
/// lex-least coefficient vector with t = sum a_i v_i is returned.
pub fn apolarity_check(
    t: &Multivector,
    points: &[Multivector],
) -> Result<(bool, Option<Vec<Scalar>>), String> {
    if points.is_empty() {
        return Err("apolarity_check needs at least one point".to_string());
    }
    let dim = t.dim;
    let degree = t.degree;
    for (i, p) in points.iter().enumerate() {
        if p.dim != dim || p.degree != degree {
            return Err(format!("point {} has mismatched dimension or degree", i));
        }
        if is_decomposable(p)?.is_none() {
            return Err(format!("point {} is not decomposable", i));
        }
    }
    let mut common = catalecticant(&points[0], degree).mat.kernel();
    for p in &points[1..] {
        common = common.intersect(&catalecticant(p, degree).mat.kernel());
    }
    let tperp = catalecticant(t, degree).mat.kernel();
    if !common.is_subspace_of(&tperp) {
        return Ok((false, None));
    }
    let full = subsets_lex(dim, degree);
    let cols: Vec<Vec<Scalar>> = points.iter().map(|p| p.coordinates(&full)).collect();
    let mut mat = ExactMatrix::zeros(full.len(), points.len());
    for (j, col) in cols.iter().enumerate() {
        for (i, c) in col.iter().enumerate() {
            mat.set(i, j, c.clone());
        }
    }
    let rhs = t.coordinates(&full);
    let sol = mat
        .solve(&rhs)
        .ok_or("apolarity criterion passed but the linear system is inconsistent")?;
    Ok((true, Some(sol)))
}

/// Smallest subspace W with t in its exterior power, together with t rewritten
/// in the echelon basis of W.
pub fn essential_space(t: &Multivector) -> Result<(Subspace, Multivector), String> {
    if t.is_zero() {
        return Err("the zero tensor has no essential space".to_string());
    }
    let ker = catalecticant(t, 1).mat.kernel();
    let w = ker.perp();
    let m = w.dim();
    let d = t.degree;
    // express t in wedges of the echelon basis vectors of W
    let target = subsets_lex(t.dim, d);
    let small = subsets_lex(m as u8, d);
    let mut mat = ExactMatrix::zeros(target.len(), small.len());
    for (j, &sm) in small.iter().enumerate() {
        let mut prod = Multivector::basis(t.dim, 0, t.dual);
        for i in 0..m {
            if sm & (1u16 << i) != 0 {
                let mut v = Multivector::zero(t.dim, 1, t.dual);
                for (a, c) in w.basis[i].iter().enumerate() {
                    v.add_term(1u16 << a, c);
                }
                prod = prod.wedge(&v);
            }
        }
        for (i, c) in prod.coordinates(&target).into_iter().enumerate() {
            mat.set(i, j, c);
        }
    }
    let rhs = t.coordinates(&target);
    let sol = mat
        .solve(&rhs)
        .ok_or("tensor does not lie in the exterior power of its essential space")?;
    let rewritten = from_coordinates(m as u8, d, t.dual, &small, &sol);
    Ok((w, rewritten))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mono(dim: u8, idx: &[usize]) -> Multivector {
        Multivector::monomial(dim, idx, Scalar::one(), false).unwrap()
    }

    #[test]
    fn rank_one_annihilator_dims() {
        // single rank-one point: piece s has dim C(n+1,s) - C(d,s)
        let t = mono(4, &[0, 1, 2]);
        let ann = annihilator(&t);
        assert_eq!(ann.pieces[1].dim(), 1);
        assert_eq!(ann.pieces[2].dim(), 3);
        assert_eq!(ann.pieces[3].dim(), 3);
        // degree-1 piece is spanned by the dual of the missing vector
        let els = ann.piece_elements(1);
        assert_eq!(els.len(), 1);
        assert_eq!(els[0].coeff(1 << 3), Scalar::one());
    }

    #[test]
    fn two_planes_ideal_generated_in_degree_two() {
        let v1 = mono(4, &[0, 1]);
        let v2 = mono(4, &[2, 3]);
        let rep = point_ideal(&[v1, v2], None).unwrap();
        assert_eq!(rep.piece_dims[1], 0);
        assert_eq!(rep.generator_counts[1], 0);
        assert_eq!(rep.generator_counts[2], 4);
        let masks: Vec<u16> = rep.generator_bases[2]
            .iter()
            .map(|g| *g.coeffs.keys().next().unwrap())
            .collect();
        assert_eq!(masks, vec![0b0101, 0b1001, 0b0110, 0b1010]);
        assert_eq!(rep.generator_counts[3], 0);
        assert_eq!(rep.generator_counts[4], 0);
    }

    #[test]
    fn non_decomposable_point_rejected() {
        let bad = mono(6, &[0, 1, 2]).add(&mono(6, &[3, 4, 5]));
        assert!(point_ideal(&[bad], None).is_err());
    }

    #[test]
    fn apolarity_recovers_coefficients() {
        let v1 = mono(6, &[0, 1, 2]);
        let v2 = mono(6, &[1, 3, 5]);
        let t = v1.add(&v2);
        let (ok, coeffs) = apolarity_check(&t, &[v1.clone(), v2.clone()]).unwrap();
        assert!(ok);
        assert_eq!(coeffs.unwrap(), vec![Scalar::one(), Scalar::one()]);
        // a tensor outside the span fails
        let (ok2, c2) = apolarity_check(&mono(6, &[0, 3, 4]), &[v1, v2]).unwrap();
        assert!(!ok2);
        assert!(c2.is_none());
    }

    #[test]
    fn essential_reduction() {
        let t = mono(8, &[0, 1, 2]);
        let (w, rt) = essential_space(&t).unwrap();
        assert_eq!(w.dim(), 3);
        assert_eq!(rt.dim, 3);
        assert_eq!(rt.coeff(0b111), Scalar::one());
        // rank 2 sharing a vector: five essential variables
        let t2 = mono(7, &[0, 1, 2]).add(&mono(7, &[0, 3, 4]));
        let (w2, rt2) = essential_space(&t2).unwrap();
        assert_eq!(w2.dim(), 5);
        // idempotent: rewritten tensor uses all its variables
        let (w3, _) = essential_space(&rt2).unwrap();
        assert_eq!(w3.dim(), 5);
        assert!(essential_space(&Multivector::zero(5, 3, false)).is_err());
    }

    #[test]
    fn essential_rewrite_respects_mixed_coordinates() {
        // t = (e0+e5)^e1^e2 in dim 6
        let v = mono(6, &[0, 1, 2]).add(&mono(6, &[5, 1, 2]));
        let (w, rt) = essential_space(&v).unwrap();
        assert_eq!(w.dim(), 3);
        // expanding rt back through the basis of w reproduces v
        let mut back = Multivector::basis(6, 0, false);
        let mut factors = Vec::new();
        for row in w.basis.iter() {
            let mut x = Multivector::zero(6, 1, false);
            for (a, c) in row.iter().enumerate() {
                x.add_term(1u16 << a, c);
            }
            factors.push(x);
        }
        for f in &factors {
            back = back.wedge(f);
        }
        assert!(back.scale(&rt.coeff(0b111)).sub(&v).is_zero());
    }

    #[test]
    fn intersecting_planes_ideal_content() {
        // two 3-planes in dim 5 sharing a line: the degree-2 piece is the
        // 4-dim span of cross products of the complementary dual directions
        let v1 = mono(5, &[0, 1, 2]);
        let v2 = mono(5, &[0, 3, 4]);
        let rep = point_ideal(&[v1.clone(), v2.clone()], None).unwrap();
        assert_eq!(rep.piece_dims[1], 0);
        assert_eq!(rep.generator_counts[2], 4);
        let basis2 = subsets_lex(5, 2);
        for (i, j) in [(1, 3), (1, 4), (2, 3), (2, 4)] {
            let g = mono(5, &[i, j]);
            assert!(rep.piece(2).contains(&g.coordinates(&basis2)));
        }
        // the binomial pairing the two complementary blocks annihilates the
        // sum of the points but not the points themselves, so it does not
        // belong to the point ideal
        let binom = mono(5, &[1, 2]).sub(&mono(5, &[3, 4]));
        assert!(!rep.piece(2).contains(&binom.coordinates(&basis2)));
        let mut dual = Multivector::zero(5, 2, true);
        for (m, c) in binom.coeffs.iter() {
            dual.add_term(*m, c);
        }
        assert!(dual.contract(&v1.add(&v2)).is_zero());
        assert!(!dual.contract(&v1).is_zero());
    }

    #[test]
    fn four_points_in_plane_quadric_ideal() {
        let v1 = mono(4, &[0, 1]);
        let v2 = mono(4, &[2, 3]);
        let v3 = mono(4, &[0, 1])
            .add(&mono(4, &[0, 3]))
            .sub(&mono(4, &[1, 2]))
            .add(&mono(4, &[2, 3]));
        let v4 = mono(4, &[0, 1])
            .add(&mono(4, &[0, 2]))
            .sub(&mono(4, &[1, 3]))
            .sub(&mono(4, &[2, 3]));
        let rep = point_ideal(&[v1, v2, v3, v4], None).unwrap();
        assert_eq!(rep.piece_dims[2], 2);
        assert_eq!(rep.generator_counts, vec![0, 0, 2, 0, 0]);
        let basis2 = subsets_lex(4, 2);
        let g1 = mono(4, &[0, 2]).add(&mono(4, &[1, 3]));
        let g2 = mono(4, &[0, 3]).add(&mono(4, &[1, 2]));
        assert!(rep.piece(2).contains(&g1.coordinates(&basis2)));
        assert!(rep.piece(2).contains(&g2.coordinates(&basis2)));
    }
}
