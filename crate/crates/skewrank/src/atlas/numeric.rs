//! Floating-point fallback used when the rank-4 line search has no rational
//! degenerate point: complex coordinates, pivoted elimination, and the conic
//! construction carried out numerically.

use super::NumericTerm;
use crate::exterior::{contract_sign, merge_sign, subsets_lex, Multivector};
use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::collections::BTreeMap;

pub type CTensor = BTreeMap<u16, Complex64>;

const TOL: f64 = 1e-8;

pub fn to_complex(t: &Multivector) -> CTensor {
    t.coeffs
        .iter()
        .map(|(m, c)| (*m, c.to_c64()))
        .collect()
}

fn cadd(map: &mut CTensor, mask: u16, c: Complex64) {
    if c.norm() == 0.0 {
        return;
    }
    *map.entry(mask).or_insert(Complex64::new(0.0, 0.0)) += c;
}

pub fn cwedge(a: &CTensor, b: &CTensor) -> CTensor {
    let mut out = CTensor::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            if ma & mb != 0 {
                continue;
            }
            let s = merge_sign(*ma, *mb) as f64;
            cadd(&mut out, ma | mb, ca * cb * s);
        }
    }
    out
}

pub fn ccontract(h: &CTensor, t: &CTensor) -> CTensor {
    let mut out = CTensor::new();
    for (mh, ch) in h {
        for (mt, ct) in t {
            if let Some((sign, rest)) = contract_sign(*mh, *mt) {
                cadd(&mut out, rest, ch * ct * sign as f64);
            }
        }
    }
    out
}

pub fn cscale(t: &CTensor, s: Complex64) -> CTensor {
    t.iter().map(|(m, c)| (*m, c * s)).collect()
}

pub fn cadd_tensor(a: &CTensor, b: &CTensor) -> CTensor {
    let mut out = a.clone();
    for (m, c) in b {
        cadd(&mut out, *m, *c);
    }
    out
}

fn cnorm(t: &CTensor) -> f64 {
    t.values().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

/// Durand-Kerner simultaneous root iteration for a monic-normalizable
/// polynomial, low coefficients first.
pub fn polynomial_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let mut cs: Vec<Complex64> = coeffs.to_vec();
    while let Some(last) = cs.last() {
        if last.norm() > 0.0 {
            break;
        }
        cs.pop();
    }
    let n = cs.len().saturating_sub(1);
    if n == 0 {
        return Vec::new();
    }
    let lead = cs[n];
    let monic: Vec<Complex64> = cs.iter().map(|c| c / lead).collect();
    // radius bound keeps the initial circle near the root annulus
    let r = 1.0
        + monic[..n]
            .iter()
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32 + 1) / seed.norm().powi(k as i32 + 1) * r * 0.7)
        .collect();
    let eval = |x: Complex64| {
        let mut acc = Complex64::new(1.0, 0.0);
        for c in monic[..n].iter().rev() {
            acc = acc * x + c;
        }
        acc
    };
    for _ in 0..300 {
        let mut shift = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if j != i {
                    den *= z[i] - z[j];
                }
            }
            if den.norm() == 0.0 {
                den = Complex64::new(1e-12, 0.0);
            }
            let d = eval(z[i]) / den;
            z[i] -= d;
            shift = shift.max(d.norm());
        }
        if shift < 1e-13 * r.max(1.0) {
            break;
        }
    }
    z
}

/// Solves an overdetermined but consistent system by pivoted elimination;
/// returns None when the residual rows are not negligible.
pub fn csolve(a: &[Vec<Complex64>], b: &[Complex64]) -> Option<Vec<Complex64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut aug: Vec<Vec<Complex64>> = a
        .iter()
        .zip(b)
        .map(|(r, v)| {
            let mut row = r.clone();
            row.push(*v);
            row
        })
        .collect();
    let scale = aug
        .iter()
        .flat_map(|r| r.iter().map(|c| c.norm()))
        .fold(0.0f64, f64::max)
        .max(1.0);
    let mut piv_rows = Vec::new();
    let mut piv_cols = Vec::new();
    let mut used = vec![false; rows];
    for col in 0..cols {
        let mut best = (0usize, 0.0f64);
        for (i, row) in aug.iter().enumerate() {
            if !used[i] && row[col].norm() > best.1 {
                best = (i, row[col].norm());
            }
        }
        if best.1 <= TOL * scale {
            continue;
        }
        let pi = best.0;
        used[pi] = true;
        piv_rows.push(pi);
        piv_cols.push(col);
        let inv = Complex64::new(1.0, 0.0) / aug[pi][col];
        for i in 0..rows {
            if i == pi {
                continue;
            }
            let f = aug[i][col] * inv;
            if f.norm() == 0.0 {
                continue;
            }
            for k in col..=cols {
                let sub = aug[pi][k] * f;
                aug[i][k] -= sub;
            }
        }
    }
    for (i, row) in aug.iter().enumerate() {
        if !used[i] && row[cols].norm() > 1e-6 * scale {
            return None;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); cols];
    for (pi, col) in piv_rows.iter().zip(&piv_cols) {
        x[*col] = aug[*pi][cols] / aug[*pi][*col];
    }
    Some(x)
}

pub fn ckernel(a: &[Vec<Complex64>]) -> Vec<Vec<Complex64>> {
    let rows = a.len();
    let cols = if rows == 0 { 0 } else { a[0].len() };
    let mut m: Vec<Vec<Complex64>> = a.to_vec();
    let scale = m
        .iter()
        .flat_map(|r| r.iter().map(|c| c.norm()))
        .fold(0.0f64, f64::max)
        .max(1.0);
    let mut used = vec![false; rows];
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; cols];
    for col in 0..cols {
        let mut best = (0usize, 0.0f64);
        for (i, row) in m.iter().enumerate() {
            if !used[i] && row[col].norm() > best.1 {
                best = (i, row[col].norm());
            }
        }
        if best.1 <= TOL * scale {
            continue;
        }
        let pi = best.0;
        used[pi] = true;
        pivot_of_col[col] = Some(pi);
        let inv = Complex64::new(1.0, 0.0) / m[pi][col];
        for i in 0..rows {
            if i == pi {
                continue;
            }
            let f = m[i][col] * inv;
            if f.norm() == 0.0 {
                continue;
            }
            for k in 0..cols {
                let sub = m[pi][k] * f;
                m[i][k] -= sub;
            }
        }
    }
    let mut basis = Vec::new();
    for free in 0..cols {
        if pivot_of_col[free].is_some() {
            continue;
        }
        let mut v = vec![Complex64::new(0.0, 0.0); cols];
        v[free] = Complex64::new(1.0, 0.0);
        for col in 0..cols {
            if let Some(pi) = pivot_of_col[col] {
                v[col] = -m[pi][free] / m[pi][col];
            }
        }
        basis.push(v);
    }
    basis
}

fn basis_covector(i: usize) -> CTensor {
    let mut h = CTensor::new();
    h.insert(1u16 << i, Complex64::new(1.0, 0.0));
    h
}

fn covector_from(coords: &[Complex64]) -> CTensor {
    let mut h = CTensor::new();
    for (i, c) in coords.iter().enumerate() {
        cadd(&mut h, 1u16 << i, *c);
    }
    h
}

fn boundary_matrix7(u: &CTensor) -> Vec<Vec<Complex64>> {
    let top = (1u16 << 7) - 1;
    let ct: Vec<CTensor> = (0..7).map(|i| ccontract(&basis_covector(i), u)).collect();
    (0..7)
        .map(|i| {
            (0..7)
                .map(|j| {
                    let w = cwedge(&cwedge(&ct[i], &ct[j]), u);
                    *w.get(&top).unwrap_or(&Complex64::new(0.0, 0.0))
                })
                .collect()
        })
        .collect()
}

/// Peels rank-one pairs off a complex 2-form; returns vector pairs.
fn peel_two_form(w0: &CTensor, n1: usize) -> Vec<(Vec<Complex64>, Vec<Complex64>)> {
    let mut w = w0.clone();
    let base = cnorm(w0).max(1.0);
    let mut pairs = Vec::new();
    while cnorm(&w) > 1e-7 * base && pairs.len() < n1 / 2 {
        let (&mask, _) = w
            .iter()
            .max_by(|a, b| a.1.norm().partial_cmp(&b.1.norm()).unwrap())
            .unwrap();
        let i = mask.trailing_zeros() as usize;
        let j = (mask & (mask - 1)).trailing_zeros() as usize;
        let ent = |a: usize, b: usize| {
            if a == b {
                return Complex64::new(0.0, 0.0);
            }
            let (lo, hi) = (a.min(b), a.max(b));
            let v = *w
                .get(&((1u16 << lo) | (1u16 << hi)))
                .unwrap_or(&Complex64::new(0.0, 0.0));
            if a < b {
                v
            } else {
                -v
            }
        };
        let x: Vec<Complex64> = (0..n1).map(|a| ent(a, j)).collect();
        let pv = ent(i, j);
        let y: Vec<Complex64> = (0..n1).map(|b| ent(i, b) / pv).collect();
        let wx = covector_from(&x);
        let wy = covector_from(&y);
        let xy = cwedge(&wx, &wy);
        for (m, c) in xy {
            cadd(&mut w, m, -c);
        }
        pairs.push((x, y));
    }
    pairs
}

/// Numeric version of the conic decomposition for a seven-variable tensor
/// whose boundary pairing is singular with 3-dim kernel.
pub fn conic7_numeric(u: &CTensor, rng: &mut ChaCha8Rng) -> Option<Vec<NumericTerm>> {
    let b = boundary_matrix7(u);
    let kb = ckernel(&b);
    if kb.len() != 3 {
        return None;
    }
    let cts: Vec<CTensor> = kb.iter().map(|k| ccontract(&covector_from(k), u)).collect();
    let ent = |w: &CTensor, a: usize, b: usize| {
        *w.get(&((1u16 << a) | (1u16 << b)))
            .unwrap_or(&Complex64::new(0.0, 0.0))
    };
    let mut best_row: Option<(f64, [Complex64; 6])> = None;
    for qm in subsets_lex(7, 4) {
        let ix = crate::exterior::bits_of(qm);
        let (a, bb, c, d) = (ix[0], ix[1], ix[2], ix[3]);
        let mut row = [Complex64::new(0.0, 0.0); 6];
        let mut pos = 0;
        for i in 0..3 {
            for j in i..3 {
                let v1 = ent(&cts[i], a, bb) * ent(&cts[j], c, d)
                    - ent(&cts[i], a, c) * ent(&cts[j], bb, d)
                    + ent(&cts[i], a, d) * ent(&cts[j], bb, c);
                let v2 = ent(&cts[j], a, bb) * ent(&cts[i], c, d)
                    - ent(&cts[j], a, c) * ent(&cts[i], bb, d)
                    + ent(&cts[j], a, d) * ent(&cts[i], bb, c);
                row[pos] = v1 + v2;
                pos += 1;
            }
        }
        let nrm = row.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
        if best_row.as_ref().map(|(n, _)| nrm > *n).unwrap_or(true) {
            best_row = Some((nrm, row));
        }
    }
    let (nrm, q) = best_row?;
    if nrm == 0.0 {
        return None;
    }
    let qm = [
        [q[0], q[1], q[2]],
        [q[1], q[3], q[4]],
        [q[2], q[4], q[5]],
    ];
    let qval = |x: &[Complex64; 3]| {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                acc += qm[i][j] * x[i] * x[j];
            }
        }
        acc
    };
    let polar = |x: &[Complex64; 3], y: &[Complex64; 3]| {
        let mut acc = Complex64::new(0.0, 0.0);
        for i in 0..3 {
            for j in 0..3 {
                acc += qm[i][j] * (x[i] * y[j] + y[i] * x[j]);
            }
        }
        acc
    };
    let qscale = nrm.sqrt().max(1e-30);
    let pnorm = |x: &[Complex64; 3]| x.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt();
    let distinct = |a: &[Complex64; 3], b: &[Complex64; 3]| {
        let (na, nb) = (pnorm(a), pnorm(b));
        for i in 0..3 {
            for j in 0..3 {
                if (a[i] * b[j] - a[j] * b[i]).norm() > 1e-6 * na * nb {
                    return true;
                }
            }
        }
        false
    };
    let mut pts: Option<[[Complex64; 3]; 3]> = None;
    'outer: for _ in 0..60 {
        let p: [Complex64; 3] =
            std::array::from_fn(|_| Complex64::new(rng.gen_range(-4..=4i64) as f64, 0.0));
        let v: [Complex64; 3] =
            std::array::from_fn(|_| Complex64::new(rng.gen_range(-4..=4i64) as f64, 0.0));
        let a2 = qval(&v);
        if a2.norm() < 1e-8 * qscale {
            continue;
        }
        let b1 = polar(&p, &v);
        let c0 = qval(&p);
        let disc = b1 * b1 - 4.0 * a2 * c0;
        let sq = disc.sqrt();
        if sq.norm() < 1e-6 * a2.norm() {
            continue;
        }
        let r1 = (-b1 + sq) / (2.0 * a2);
        let r2 = (-b1 - sq) / (2.0 * a2);
        let p1: [Complex64; 3] = std::array::from_fn(|i| p[i] + r1 * v[i]);
        let p2: [Complex64; 3] = std::array::from_fn(|i| p[i] + r2 * v[i]);
        if pnorm(&p1) < 1e-8 || pnorm(&p2) < 1e-8 || !distinct(&p1, &p2) {
            continue;
        }
        for _ in 0..20 {
            let w: [Complex64; 3] =
                std::array::from_fn(|_| Complex64::new(rng.gen_range(-4..=4i64) as f64, 0.0));
            let aw = qval(&w);
            if aw.norm() < 1e-8 * qscale {
                continue;
            }
            let s2 = -polar(&p1, &w) / aw;
            let p3: [Complex64; 3] = std::array::from_fn(|i| p1[i] + s2 * w[i]);
            if pnorm(&p3) > 1e-8 && distinct(&p3, &p1) && distinct(&p3, &p2) {
                pts = Some([p1, p2, p3]);
                break 'outer;
            }
        }
    }
    let pts = pts?;
    let phis: Vec<Vec<Complex64>> = pts
        .iter()
        .map(|x| {
            (0..7)
                .map(|j| x[0] * kb[0][j] + x[1] * kb[1][j] + x[2] * kb[2][j])
                .collect()
        })
        .collect();
    let mut bs = Vec::new();
    let mut pairs = Vec::new();
    for ph in &phis {
        let bk = ccontract(&covector_from(ph), u);
        let pk = peel_two_form(&bk, 7);
        if pk.len() != 1 {
            return None;
        }
        pairs.push(pk.into_iter().next().unwrap());
        bs.push(bk);
    }
    let basis3 = subsets_lex(7, 3);
    let mut cols: Vec<Vec<Complex64>> = Vec::new();
    for bk in &bs {
        for j in 0..7 {
            let mut e = CTensor::new();
            e.insert(1u16 << j, Complex64::new(1.0, 0.0));
            let w = cwedge(bk, &e);
            cols.push(
                basis3
                    .iter()
                    .map(|m| *w.get(m).unwrap_or(&Complex64::new(0.0, 0.0)))
                    .collect(),
            );
        }
    }
    // transpose to rows over the degree-3 basis
    let rows: Vec<Vec<Complex64>> = (0..basis3.len())
        .map(|r| cols.iter().map(|c| c[r]).collect())
        .collect();
    let rhs: Vec<Complex64> = basis3
        .iter()
        .map(|m| *u.get(m).unwrap_or(&Complex64::new(0.0, 0.0)))
        .collect();
    let sol = csolve(&rows, &rhs)?;
    let mut terms = Vec::new();
    for (k, (x, y)) in pairs.into_iter().enumerate() {
        let wv: Vec<Complex64> = sol[k * 7..(k + 1) * 7].to_vec();
        if wv.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt() < 1e-10 {
            continue;
        }
        terms.push(NumericTerm {
            coeff: Complex64::new(1.0, 0.0),
            vectors: [x, y, wv],
        });
    }
    Some(terms)
}
