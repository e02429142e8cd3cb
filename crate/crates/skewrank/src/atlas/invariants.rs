//! Basis-independent quantities driving classification: the trace form in six
//! variables, the 7x7 boundary pairing and its determinant, finite-field
//! counts of decomposable partials, and the rank battery in eight variables.

use crate::exterior::{contract_sign, merge_sign, subsets_lex, Multivector};
use crate::linalg::modp::{kernel_modp, rank_modp, Fp, BIG_PRIMES};
use crate::linalg::{ExactMatrix, Subspace};
use crate::scalar::Scalar;
use std::collections::BTreeMap;

use super::OrbitLabel;

/// Kernel of the map `l -> l ∧ t` on vectors.
pub fn wedge_kernel(t: &Multivector) -> Subspace {
    let n1 = t.dim as usize;
    let out_basis = subsets_lex(t.dim, t.degree + 1);
    let mut idx = vec![usize::MAX; 1 << t.dim];
    for (i, m) in out_basis.iter().enumerate() {
        idx[*m as usize] = i;
    }
    let mut mat = ExactMatrix::zeros(out_basis.len(), n1);
    for j in 0..n1 {
        let bit = 1u16 << j;
        for (m, c) in &t.coeffs {
            if m & bit != 0 {
                continue;
            }
            let mut v = c.clone();
            if merge_sign(bit, *m) < 0 {
                v = -v;
            }
            mat.add_at(idx[(m | bit) as usize], j, &v);
        }
    }
    mat.kernel()
}

/// Endomorphism of a six-variable trivector: `x -> *((x . t) ∧ t)` where `*`
/// is the coefficient against the volume form.
pub fn t_endomorphism(t: &Multivector) -> ExactMatrix {
    assert_eq!(t.dim, 6);
    assert_eq!(t.degree, 3);
    let full: u16 = (1 << 6) - 1;
    let mut m = ExactMatrix::zeros(6, 6);
    for i in 0..6usize {
        let h = Multivector::basis_vector(6, i, true);
        let w = h.contract(t).wedge(t); // degree 5
        for (k, c) in &w.coeffs {
            let missing = full & !k;
            debug_assert_eq!(missing.count_ones(), 1);
            let j = missing.trailing_zeros() as usize;
            let mut v = c.clone();
            if merge_sign(missing, *k) < 0 {
                v = -v;
            }
            m.add_at(j, i, &v);
        }
    }
    m
}

/// Trace of the square of the endomorphism above. Vanishes on the tripod
/// orbit IV and is nonzero on the two-term orbit V.
pub fn wedge_square_class(t: &Multivector) -> Scalar {
    let m = t_endomorphism(t);
    let m2 = m.matmul(&m);
    let mut tr = Scalar::zero();
    for i in 0..6 {
        tr += m2.at(i, i);
    }
    tr
}

/// Seven-variable pairing `B[i][j] = *((e_i* . t) ∧ (e_j* . t) ∧ t)`.
pub fn b_matrix(t: &Multivector) -> ExactMatrix {
    assert_eq!(t.dim, 7);
    assert_eq!(t.degree, 3);
    let full: u16 = (1 << 7) - 1;
    let parts: Vec<Multivector> = (0..7)
        .map(|i| Multivector::basis_vector(7, i, true).contract(t))
        .collect();
    let mut b = ExactMatrix::zeros(7, 7);
    for i in 0..7 {
        for j in i..7 {
            let v = parts[i].wedge(&parts[j]).wedge(t).coeff(full);
            b.set(i, j, v.clone());
            if i != j {
                b.set(j, i, v);
            }
        }
    }
    b
}

pub fn det_b(t: &Multivector) -> Scalar {
    b_matrix(t).det()
}

pub fn rank_b(t: &Multivector) -> usize {
    b_matrix(t).rank()
}

/// Count of decomposable partials `l ∧ t` over a finite projective space.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum LocusCount {
    /// some nonzero l has l ∧ t = 0, so the locus is a cone
    Infinite,
    Finite(u64),
}

fn tensor_modp(t: &Multivector, fp: Fp) -> Result<BTreeMap<u16, u64>, String> {
    let mut out = BTreeMap::new();
    for (m, c) in &t.coeffs {
        let v = fp
            .from_scalar(c)
            .ok_or_else(|| format!("coefficient not reducible mod {}", fp.p))?;
        if v != 0 {
            out.insert(*m, v);
        }
    }
    Ok(out)
}

fn wedge_modp(fp: Fp, a: &BTreeMap<u16, u64>, b: &BTreeMap<u16, u64>) -> BTreeMap<u16, u64> {
    let mut out: BTreeMap<u16, u64> = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            if ma & mb != 0 {
                continue;
            }
            let mut v = fp.mul(*ca, *cb);
            if merge_sign(*ma, *mb) < 0 {
                v = fp.neg(v);
            }
            let e = out.entry(ma | mb).or_insert(0);
            *e = fp.add(*e, v);
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn contract_modp(fp: Fp, s: u16, t: &BTreeMap<u16, u64>) -> BTreeMap<u16, u64> {
    let mut out: BTreeMap<u16, u64> = BTreeMap::new();
    for (m, c) in t {
        if let Some((sign, rest)) = contract_sign(s, *m) {
            let v = if sign < 0 { fp.neg(*c) } else { *c };
            let e = out.entry(rest).or_insert(0);
            *e = fp.add(*e, v);
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn index_map(basis: &[u16]) -> Vec<usize> {
    let mut idx = vec![usize::MAX; 1 << 16];
    for (i, m) in basis.iter().enumerate() {
        idx[*m as usize] = i;
    }
    idx
}

fn to_row(fp: Fp, w: &BTreeMap<u16, u64>, idx: &[usize], len: usize) -> Vec<u64> {
    let _ = fp;
    let mut row = vec![0u64; len];
    for (m, v) in w {
        row[idx[*m as usize]] = *v;
    }
    row
}

/// Exhaustive projective count of vectors l over GF(p) with `l ∧ t`
/// decomposable, for seven-variable trivectors. A quadratic pre-filter cuts
/// the enumeration; survivors are confirmed by the rank-4 criterion on the
/// contraction matrix of the 4-form.
pub fn decomposable_l_locus(t: &Multivector, p: u64) -> Result<LocusCount, String> {
    assert_eq!(t.dim, 7);
    assert_eq!(t.degree, 3);
    let fp = Fp::new(p);
    let tm = tensor_modp(t, fp)?;
    let n1 = 7usize;
    let basis3 = subsets_lex(7, 3);
    let basis4 = subsets_lex(7, 4);
    let basis5 = subsets_lex(7, 5);
    let idx3 = index_map(&basis3);
    let idx4 = index_map(&basis4);
    let idx5 = index_map(&basis5);

    // w_i = e_i ∧ t as 4-forms
    let parts: Vec<BTreeMap<u16, u64>> = (0..n1)
        .map(|i| {
            let mut e = BTreeMap::new();
            e.insert(1u16 << i, 1u64);
            wedge_modp(fp, &e, &tm)
        })
        .collect();

    // kernel of l -> l ∧ t means an infinite (cone) locus
    let kmat: Vec<Vec<u64>> = (0..basis4.len())
        .map(|r| (0..n1).map(|i| *parts[i].get(&basis4[r]).unwrap_or(&0)).collect())
        .collect();
    if rank_modp(fp, kmat) < n1 {
        return Ok(LocusCount::Infinite);
    }

    // quadratic conditions: coefficient of every 5-form basis element of
    // (psi . (l ∧ t)) ∧ (l ∧ t) for every 3-form psi, as quadrics in l
    // stored in upper-triangular coordinates
    let tri: Vec<(usize, usize)> = (0..n1)
        .flat_map(|i| (i..n1).map(move |j| (i, j)))
        .collect();
    let mut quadrics: Vec<Vec<u64>> = Vec::new();
    for psi in &basis3 {
        // c[i] = psi . w_i, a 1-form
        let contracted: Vec<BTreeMap<u16, u64>> =
            (0..n1).map(|i| contract_modp(fp, *psi, &parts[i])).collect();
        let mut per_mask: Vec<Vec<Vec<u64>>> = vec![vec![vec![0; n1]; n1]; basis5.len()];
        for i in 0..n1 {
            if contracted[i].is_empty() {
                continue;
            }
            for j in 0..n1 {
                let w = wedge_modp(fp, &contracted[i], &parts[j]);
                for (m, v) in &w {
                    per_mask[idx5[*m as usize]][i][j] = *v;
                }
            }
        }
        for c in &per_mask {
            let mut q: Vec<u64> = Vec::with_capacity(tri.len());
            let mut nonzero = false;
            for &(i, j) in &tri {
                let v = if i == j {
                    c[i][i]
                } else {
                    fp.add(c[i][j], c[j][i])
                };
                if v != 0 {
                    nonzero = true;
                }
                q.push(v);
            }
            if nonzero {
                quadrics.push(q);
            }
        }
    }
    // reduce to an independent set for fast evaluation
    let qrank = rank_modp(fp, quadrics.clone());
    let qbasis = {
        let mut m = quadrics;
        // plain elimination keeping the reduced rows
        let rows = m.len();
        let cols = tri.len();
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
            for x in m[r].iter_mut() {
                *x = fp.mul(*x, inv);
            }
            for i in 0..rows {
                if i != r && m[i][c] != 0 {
                    let f = m[i][c];
                    for j in 0..cols {
                        let s = fp.mul(m[r][j], f);
                        m[i][j] = fp.sub(m[i][j], s);
                    }
                }
            }
            r += 1;
        }
        m.truncate(qrank);
        m
    };

    // enumerate projective points: first nonzero coordinate equals one
    let mut count = 0u64;
    let mut l = vec![0u64; n1];
    let mut mono = vec![0u64; tri.len()];
    for lead in 0..n1 {
        let tail = n1 - lead - 1;
        let total: u64 = p.pow(tail as u32);
        for code in 0..total {
            for x in l.iter_mut().take(lead) {
                *x = 0;
            }
            l[lead] = 1;
            let mut c = code;
            for k in 0..tail {
                l[lead + 1 + k] = c % p;
                c /= p;
            }
            for (pos, &(i, j)) in tri.iter().enumerate() {
                mono[pos] = fp.mul(l[i], l[j]);
            }
            let mut ok = true;
            for q in &qbasis {
                let mut acc = 0u64;
                for (pos, &qc) in q.iter().enumerate() {
                    if qc != 0 && mono[pos] != 0 {
                        acc = fp.add(acc, fp.mul(qc, mono[pos]));
                    }
                }
                if acc != 0 {
                    ok = false;
                    break;
                }
            }
            if !ok {
                continue;
            }
            // confirm with the rank criterion on the 4-form l ∧ t
            let mut w: BTreeMap<u16, u64> = BTreeMap::new();
            for (i, &li) in l.iter().enumerate() {
                if li == 0 {
                    continue;
                }
                for (m, v) in &parts[i] {
                    let e = w.entry(*m).or_insert(0);
                    *e = fp.add(*e, fp.mul(li, *v));
                }
            }
            w.retain(|_, v| *v != 0);
            if w.is_empty() {
                return Err("unexpected kernel vector during enumeration".into());
            }
            let cmat: Vec<Vec<u64>> = {
                let mut rows = vec![vec![0u64; n1]; basis3.len()];
                for j in 0..n1 {
                    let cj = contract_modp(fp, 1u16 << j, &w);
                    for (m, v) in &cj {
                        rows[idx3[*m as usize]][j] = *v;
                    }
                }
                rows
            };
            if rank_modp(fp, cmat) <= 4 {
                count += 1;
            }
        }
    }
    Ok(LocusCount::Finite(count))
}

// ---- eight-variable rank battery ----

/// Rank invariants of an eight-variable trivector, each the rank of an
/// integer matrix built functorially from the tensor, computed over large
/// prime fields with cross-prime agreement.
#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub struct Signature8 {
    pub rk_f: usize,
    pub rk_f3: usize,
    pub rk_f2: usize,
    pub dim_vk: usize,
    pub dim_kk: usize,
    pub orbit_dim: usize,
}

impl Signature8 {
    pub fn as_array(&self) -> [usize; 6] {
        [
            self.rk_f,
            self.rk_f3,
            self.rk_f2,
            self.dim_vk,
            self.dim_kk,
            self.orbit_dim,
        ]
    }
}

fn signature8_modp(t: &Multivector, fp: Fp) -> Result<Signature8, String> {
    assert_eq!(t.dim, 8);
    assert_eq!(t.degree, 3);
    let tm = tensor_modp(t, fp)?;
    let full: u16 = (1 << 8) - 1;
    let basis2 = subsets_lex(8, 2);
    let basis3 = subsets_lex(8, 3);
    let basis4 = subsets_lex(8, 4);
    let basis5 = subsets_lex(8, 5);
    let idx2 = index_map(&basis2);
    let idx3 = index_map(&basis3);
    let idx4 = index_map(&basis4);
    let idx5 = index_map(&basis5);

    let parts1: Vec<BTreeMap<u16, u64>> = (0..8)
        .map(|i| contract_modp(fp, 1u16 << i, &tm))
        .collect();
    let parts2: Vec<BTreeMap<u16, u64>> = basis2
        .iter()
        .map(|h| contract_modp(fp, *h, &tm))
        .collect();

    // F: rows pair (e_i* . t) ∧ (e_j* . t) ∧ t against the missing index
    let mut f = vec![vec![0u64; 64]; 8];
    for (i, pi) in parts1.iter().enumerate() {
        for (j, pj) in parts1.iter().enumerate() {
            let w7 = wedge_modp(fp, &wedge_modp(fp, pi, pj), &tm);
            for (k, v) in &w7 {
                let m = full & !k;
                debug_assert_eq!(m.count_ones(), 1);
                let row = m.trailing_zeros() as usize;
                let mut val = *v;
                if merge_sign(m, *k) < 0 {
                    val = fp.neg(val);
                }
                let e = &mut f[row][i * 8 + j];
                *e = fp.add(*e, val);
            }
        }
    }
    let rk_f = rank_modp(fp, f);

    // rows (h, i): (h . t) ∧ (e_i* . t) ∧ t paired against 2-form complements
    let mut f3: Vec<Vec<u64>> = Vec::with_capacity(basis2.len() * 8);
    for ph in &parts2 {
        for pi in &parts1 {
            let w6 = wedge_modp(fp, &wedge_modp(fp, ph, pi), &tm);
            let mut row = vec![0u64; basis2.len()];
            for (k, v) in &w6 {
                let comp = full & !k;
                let mut val = *v;
                if merge_sign(comp, *k) < 0 {
                    val = fp.neg(val);
                }
                let e = &mut row[idx2[comp as usize]];
                *e = fp.add(*e, val);
            }
            f3.push(row);
        }
    }
    let rk_f3 = rank_modp(fp, f3);

    // rows (a <= b): (h_a . t) ∧ (h_b . t) ∧ t as 5-forms
    let mut f2: Vec<Vec<u64>> = Vec::new();
    for a in 0..basis2.len() {
        for b in a..basis2.len() {
            let w5 = wedge_modp(fp, &wedge_modp(fp, &parts2[a], &parts2[b]), &tm);
            f2.push(to_row(fp, &w5, &idx5, basis5.len()));
        }
    }
    let rk_f2 = rank_modp(fp, f2);

    // kernel of the 2-form contraction, then wedges with V* and with itself
    let c21: Vec<Vec<u64>> = {
        let mut rows = vec![vec![0u64; basis2.len()]; 8];
        for (jj, ph) in parts2.iter().enumerate() {
            for (m, v) in ph {
                rows[m.trailing_zeros() as usize][jj] = *v;
            }
        }
        rows
    };
    let kker = kernel_modp(fp, c21);
    let mut vk: Vec<Vec<u64>> = Vec::with_capacity(kker.len() * 8);
    for k in &kker {
        for i in 0..8usize {
            let bit = 1u16 << i;
            let mut row = vec![0u64; basis3.len()];
            for (pos, &c) in k.iter().enumerate() {
                if c == 0 {
                    continue;
                }
                let cm = basis2[pos];
                if cm & bit != 0 {
                    continue;
                }
                let mut val = c;
                if merge_sign(bit, cm) < 0 {
                    val = fp.neg(val);
                }
                let e = &mut row[idx3[(cm | bit) as usize]];
                *e = fp.add(*e, val);
            }
            vk.push(row);
        }
    }
    let dim_vk = rank_modp(fp, vk);

    let mut kk: Vec<Vec<u64>> = Vec::new();
    for a in 0..kker.len() {
        for b in a..kker.len() {
            let mut row = vec![0u64; basis4.len()];
            for (pa, &x) in kker[a].iter().enumerate() {
                if x == 0 {
                    continue;
                }
                for (pb, &y) in kker[b].iter().enumerate() {
                    if y == 0 {
                        continue;
                    }
                    let (cm, dm) = (basis2[pa], basis2[pb]);
                    if cm & dm != 0 {
                        continue;
                    }
                    let mut val = fp.mul(x, y);
                    if merge_sign(cm, dm) < 0 {
                        val = fp.neg(val);
                    }
                    let e = &mut row[idx4[(cm | dm) as usize]];
                    *e = fp.add(*e, val);
                }
            }
            kk.push(row);
        }
    }
    let dim_kk = rank_modp(fp, kk);

    let orbit_dim = orbit_dimension_modp_inner(fp, &tm, 8, &basis3, &idx3);

    Ok(Signature8 {
        rk_f,
        rk_f3,
        rk_f2,
        dim_vk,
        dim_kk,
        orbit_dim,
    })
}

fn orbit_dimension_modp_inner(
    fp: Fp,
    tm: &BTreeMap<u16, u64>,
    n1: usize,
    basis3: &[u16],
    idx3: &[usize],
) -> usize {
    let mut rows: Vec<Vec<u64>> = Vec::with_capacity(n1 * n1);
    for a in 0..n1 {
        for b in 0..n1 {
            let mut row = vec![0u64; basis3.len()];
            for (k, v) in tm {
                if k & (1u16 << b) == 0 {
                    continue;
                }
                let k0 = k & !(1u16 << b);
                if k0 & (1u16 << a) != 0 {
                    continue;
                }
                let s = merge_sign(1u16 << b, k0) * merge_sign(1u16 << a, k0);
                let mut val = *v;
                if s < 0 {
                    val = fp.neg(val);
                }
                let e = &mut row[idx3[(k0 | 1 << a) as usize]];
                *e = fp.add(*e, val);
            }
            rows.push(row);
        }
    }
    rank_modp(fp, rows)
}

/// Dimension of the GL-orbit of the tensor, as the rank of the Lie algebra
/// action matrix over a large prime field.
pub fn orbit_dimension_modp(t: &Multivector, p: u64) -> Result<usize, String> {
    let fp = Fp::new(p);
    let tm = tensor_modp(t, fp)?;
    let basis3 = subsets_lex(t.dim, 3);
    let idx3 = index_map(&basis3);
    Ok(orbit_dimension_modp_inner(
        fp,
        &tm,
        t.dim as usize,
        &basis3,
        &idx3,
    ))
}

/// Battery over two large primes; a third breaks disagreements by taking the
/// componentwise maximum (modular ranks never exceed the true rank).
pub fn signature8(t: &Multivector) -> Result<Signature8, String> {
    let mut results: Vec<Signature8> = Vec::new();
    for &p in BIG_PRIMES.iter() {
        match signature8_modp(t, Fp::new(p)) {
            Ok(s) => results.push(s),
            Err(_) => continue, // bad prime for a denominator
        }
        if results.len() == 2 {
            if results[0] == results[1] {
                return Ok(results[0]);
            }
        }
        if results.len() == 3 {
            let arrs: Vec<[usize; 6]> = results.iter().map(|s| s.as_array()).collect();
            let mut best = [0usize; 6];
            for k in 0..6 {
                best[k] = arrs.iter().map(|a| a[k]).max().unwrap();
            }
            return Ok(Signature8 {
                rk_f: best[0],
                rk_f3: best[1],
                rk_f2: best[2],
                dim_vk: best[3],
                dim_kk: best[4],
                orbit_dim: best[5],
            });
        }
    }
    if let Some(s) = results.first() {
        Ok(*s)
    } else {
        Err("no usable prime for the signature battery".into())
    }
}

/// Shipped signature table for the eight-variable orbits, re-derivable with
/// [`derive_signature_table`]. Labels sharing a row are one orbit under the
/// catalog's identifications.
pub fn signature_table() -> Vec<(Vec<OrbitLabel>, [usize; 6])> {
    parse_signature_table(SIGNATURE8_DATA).expect("shipped table is well formed")
}

pub const SIGNATURE8_DATA: &str = include_str!("../../data/signature8.tsv");

pub fn parse_signature_table(data: &str) -> Result<Vec<(Vec<OrbitLabel>, [usize; 6])>, String> {
    let mut out = Vec::new();
    for line in data.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let cols: Vec<&str> = line.split('\t').collect();
        if cols.len() != 7 {
            return Err(format!("bad table line: {line}"));
        }
        let labels: Result<Vec<OrbitLabel>, String> = cols[0]
            .split('|')
            .map(|s| OrbitLabel::from_name(s).ok_or_else(|| format!("unknown label {s}")))
            .collect();
        let mut vals = [0usize; 6];
        for (k, c) in cols[1..].iter().enumerate() {
            vals[k] = c.parse().map_err(|_| format!("bad number in: {line}"))?;
        }
        out.push((labels?, vals));
    }
    Ok(out)
}

/// Recomputes the signature of every eight-variable normal form; used by the
/// table generator tool and the test suite to confirm the shipped data.
pub fn derive_signature_table() -> Result<Vec<(OrbitLabel, [usize; 6])>, String> {
    let mut out = Vec::new();
    for label in super::ALL_LABELS {
        if label.ambient_dim() != 8 {
            continue;
        }
        let t = super::normal_form(label);
        out.push((label, signature8(&t)?.as_array()));
    }
    Ok(out)
}

/// Formats derived rows in the shipped file format, merging labels with
/// identical signatures.
pub fn format_signature_table(rows: &[(OrbitLabel, [usize; 6])]) -> String {
    let mut merged: Vec<(Vec<OrbitLabel>, [usize; 6])> = Vec::new();
    for (label, sig) in rows {
        if let Some(entry) = merged.iter_mut().find(|(_, s)| s == sig) {
            entry.0.push(*label);
        } else {
            merged.push((vec![*label], *sig));
        }
    }
    let mut s = String::from("# label(s)\trk_f\trk_f3\trk_f2\tdim_vk\tdim_kk\torbit_dim\n");
    for (labels, sig) in merged {
        let names: Vec<&str> = labels.iter().map(|l| l.name()).collect();
        s.push_str(&format!(
            "{}\t{}\t{}\t{}\t{}\t{}\t{}\n",
            names.join("|"),
            sig[0],
            sig[1],
            sig[2],
            sig[3],
            sig[4],
            sig[5]
        ));
    }
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atlas::{embed, normal_form, orbit_sample, OrbitLabel::*};

    #[test]
    fn trace_class_separates_tripod_from_two_terms() {
        assert!(wedge_square_class(&normal_form(IV)).is_zero());
        assert!(!wedge_square_class(&normal_form(V)).is_zero());
        for seed in 0..3 {
            assert!(wedge_square_class(&orbit_sample(IV, seed)).is_zero());
            assert!(!wedge_square_class(&orbit_sample(V, seed)).is_zero());
        }
    }

    #[test]
    fn boundary_pairing_ranks() {
        let expect = [
            (II, 0),
            (III, 0),
            (IV, 0),
            (V, 0),
            (VI, 1),
            (VII, 1),
            (VIII, 2),
            (IX, 4),
            (X, 7),
        ];
        for (label, r) in expect {
            let t = embed(&normal_form(label), 7);
            assert_eq!(rank_b(&t), r, "{}", label.name());
            assert_eq!(det_b(&t).is_zero(), r < 7, "{}", label.name());
        }
        assert!(!det_b(&orbit_sample(X, 2)).is_zero());
        assert!(det_b(&orbit_sample(IX, 2)).is_zero());
    }

    #[test]
    fn locus_counts_on_normal_forms() {
        assert_eq!(
            decomposable_l_locus(&normal_form(VI), 5).unwrap(),
            LocusCount::Infinite
        );
        assert_eq!(
            decomposable_l_locus(&normal_form(VII), 5).unwrap(),
            LocusCount::Finite(1)
        );
        assert_eq!(
            decomposable_l_locus(&normal_form(VIII), 5).unwrap(),
            LocusCount::Finite(2)
        );
        assert_eq!(
            decomposable_l_locus(&normal_form(IX), 5).unwrap(),
            LocusCount::Finite(0)
        );
    }

    #[test]
    fn shipped_signature_table_matches_derivation() {
        let derived = derive_signature_table().unwrap();
        let formatted = format_signature_table(&derived);
        let reparsed = parse_signature_table(&formatted).unwrap();
        assert_eq!(reparsed, signature_table());
    }

    #[test]
    fn signature_battery_reference_values() {
        let s = signature8(&normal_form(XI)).unwrap();
        assert_eq!(s.as_array(), [3, 16, 25, 54, 58, 40]);
        let s = signature8(&normal_form(XXII)).unwrap();
        assert_eq!(s.as_array(), [8, 28, 28, 55, 62, 55]);
        let s = signature8(&normal_form(XXIII)).unwrap();
        assert_eq!(s.as_array(), [8, 28, 28, 55, 62, 56]);
    }

    #[test]
    fn wedge_kernel_detects_shared_vector() {
        let t = normal_form(VI);
        assert_eq!(wedge_kernel(&t).dim(), 1);
        let u = normal_form(IX);
        assert_eq!(wedge_kernel(&u).dim(), 0);
    }
}
