//! Orbit catalog for trivectors in up to 8 variables: normal forms, reference
//! decompositions, seeded orbit sampling, and decomposition verification.

pub mod classify;
pub mod invariants;
pub mod numeric;
pub mod recipes;

use crate::exterior::{subsets_lex, Multivector};
use crate::grassmann::is_decomposable;
use crate::linalg::ExactMatrix;
use crate::scalar::Scalar;
use num_bigint::BigInt;
use num_complex::Complex64;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OrbitLabel {
    II,
    III,
    IV,
    V,
    VI,
    VII,
    VIII,
    IX,
    X,
    XI,
    XII,
    XIII,
    XIV,
    XV,
    XVI,
    XVII,
    XVIII,
    XIX,
    XX,
    XXI,
    XXII,
    XXIII,
}

use OrbitLabel::*;

pub const ALL_LABELS: [OrbitLabel; 22] = [
    II, III, IV, V, VI, VII, VIII, IX, X, XI, XII, XIII, XIV, XV, XVI, XVII, XVIII, XIX, XX, XXI,
    XXII, XXIII,
];

impl OrbitLabel {
    pub fn name(&self) -> &'static str {
        match self {
            II => "II",
            III => "III",
            IV => "IV",
            V => "V",
            VI => "VI",
            VII => "VII",
            VIII => "VIII",
            IX => "IX",
            X => "X",
            XI => "XI",
            XII => "XII",
            XIII => "XIII",
            XIV => "XIV",
            XV => "XV",
            XVI => "XVI",
            XVII => "XVII",
            XVIII => "XVIII",
            XIX => "XIX",
            XX => "XX",
            XXI => "XXI",
            XXII => "XXII",
            XXIII => "XXIII",
        }
    }

    pub fn from_name(s: &str) -> Option<OrbitLabel> {
        ALL_LABELS.iter().copied().find(|l| l.name() == s)
    }

    /// Minimal ambient dimension (number of essential variables).
    pub fn ambient_dim(&self) -> u8 {
        match self {
            II => 3,
            III => 5,
            IV | V => 6,
            VI | VII | VIII | IX | X => 7,
            _ => 8,
        }
    }

    /// Skew-symmetric rank from the catalog table.
    pub fn ssr(&self) -> usize {
        match self {
            II => 1,
            III | V => 2,
            IV | VI | VII | VIII | IX | XVI | XIX => 3,
            XV => 5,
            X | XI | XII | XIII | XIV | XVII | XVIII | XX | XXI | XXII | XXIII => 4,
        }
    }

    /// Normal-form words over the letters a,b,c,p,q,r,s,t.
    fn words(&self) -> &'static [&'static str] {
        match self {
            II => &["qrs"],
            III => &["aqp", "brp"],
            // the catalog's printed row "apr + brp + cpq" collapses to five
            // essential variables; the intended tripod uses aqr
            IV => &["aqr", "brp", "cpq"],
            V => &["abc", "prq"],
            VI => &["aqp", "brp", "csp"],
            VII => &["qrs", "aqp", "brp", "csp"],
            VIII => &["abc", "qrs", "aqp"],
            IX => &["abc", "qrs", "aqp", "brp"],
            X => &["abc", "qrs", "aqp", "brp", "csp"],
            XI => &["aqp", "brp", "csp", "crt"],
            XII => &["qrs", "aqp", "brp", "csp", "crt"],
            XIII => &["abc", "qrs", "aqp", "crt"],
            XIV => &["abc", "qrs", "aqp", "brp", "crt"],
            XV => &["abc", "qrs", "aqp", "brp", "csp", "crt"],
            XVI => &["aqp", "bst", "crt"],
            XVII => &["aqp", "brp", "bst", "crt"],
            XVIII => &["qrs", "aqp", "brp", "bst", "crt"],
            XIX => &["aqp", "brp", "csp", "bst", "crt"],
            XX => &["qrs", "aqp", "brp", "csp", "bst", "crt"],
            XXI => &["abc", "qrs", "aqp", "bst"],
            XXII => &["abc", "qrs", "aqp", "brp", "bst", "crt"],
            XXIII => &["abc", "qrs", "aqp", "brp", "csp", "bst", "crt"],
        }
    }
}

const LETTERS: &str = "abcpqrst";

fn letter_index(ch: char) -> usize {
    LETTERS.find(ch).expect("unknown letter")
}

/// Normal form of the orbit, compacted onto e0..e(m-1) where m is the minimal
/// ambient dimension; the used letters keep their relative order a,b,c,p,q,r,s,t.
pub fn normal_form(label: OrbitLabel) -> Multivector {
    let words = label.words();
    let used: Vec<char> = LETTERS
        .chars()
        .filter(|&ch| words.iter().any(|w| w.contains(ch)))
        .collect();
    let m = used.len() as u8;
    debug_assert_eq!(m, label.ambient_dim());
    let pos = |ch: char| used.iter().position(|&u| u == ch).unwrap();
    let mut t = Multivector::zero(m, 3, false);
    for w in words {
        let idx: Vec<usize> = w.chars().map(pos).collect();
        t = t.add(&Multivector::monomial(m, &idx, Scalar::one(), false).unwrap());
    }
    t
}

/// Same tensor padded with unused trailing coordinates.
pub fn embed(t: &Multivector, n1: u8) -> Multivector {
    assert!(n1 >= t.dim);
    let mut out = Multivector::zero(n1, t.degree, t.dual);
    for (m, c) in t.coeffs.iter() {
        out.add_term(*m, c);
    }
    out
}

/// One decomposable summand: coefficient times the wedge of three vectors.
#[derive(Clone, Debug)]
pub struct Term {
    pub coeff: Scalar,
    pub vectors: [Multivector; 3],
}

impl Term {
    pub fn new(coeff: Scalar, vectors: [Multivector; 3]) -> Self {
        Term { coeff, vectors }
    }

    pub fn from_vectors(v0: Multivector, v1: Multivector, v2: Multivector) -> Self {
        Term {
            coeff: Scalar::one(),
            vectors: [v0, v1, v2],
        }
    }

    pub fn expand(&self) -> Multivector {
        self.vectors[0]
            .wedge(&self.vectors[1])
            .wedge(&self.vectors[2])
            .scale(&self.coeff)
    }
}

#[derive(Clone, Debug)]
pub struct NumericTerm {
    pub coeff: Complex64,
    pub vectors: [Vec<Complex64>; 3],
}

/// A presentation as a sum of decomposable terms, exact over Q or Q(sqrt(D)),
/// or numeric for the generic rank-4 path.
#[derive(Clone, Debug)]
pub enum Decomposition {
    Exact(Vec<Term>),
    Numeric(Vec<NumericTerm>),
}

impl Decomposition {
    pub fn len(&self) -> usize {
        match self {
            Decomposition::Exact(v) => v.len(),
            Decomposition::Numeric(v) => v.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Decomposition::Exact(_))
    }

    /// D of the quadratic extension the exact coefficients live in, if any.
    pub fn field_d(&self) -> Option<BigInt> {
        let Decomposition::Exact(terms) = self else {
            return None;
        };
        for t in terms {
            let mut scan = |s: &Scalar| -> Option<BigInt> {
                if s.is_rational() {
                    None
                } else {
                    Some(s.d.clone())
                }
            };
            if let Some(d) = scan(&t.coeff) {
                return Some(d);
            }
            for v in &t.vectors {
                for c in v.coeffs.values() {
                    if let Some(d) = scan(c) {
                        return Some(d);
                    }
                }
            }
        }
        None
    }

    pub fn expand_exact(&self) -> Option<Multivector> {
        let Decomposition::Exact(terms) = self else {
            return None;
        };
        let first = terms.first()?;
        let mut s = Multivector::zero(first.vectors[0].dim, 3, first.vectors[0].dual);
        for t in terms {
            s = s.add(&t.expand());
        }
        Some(s)
    }
}

#[derive(Clone, Debug)]
pub struct VerifyReport {
    pub term_count: usize,
    pub exact: bool,
    pub residual_zero: bool,
    pub relative_residual: f64,
    pub all_terms_decomposable: bool,
}

fn numeric_coeffs(t: &Multivector, basis: &[u16]) -> Vec<Complex64> {
    basis.iter().map(|&m| t.coeff(m).to_c64()).collect()
}

/// Expands a decomposition and compares with the target tensor.
pub fn verify_decomposition(t: &Multivector, dec: &Decomposition) -> VerifyReport {
    let basis = subsets_lex(t.dim, 3);
    match dec {
        Decomposition::Exact(terms) => {
            let mut s = Multivector::zero(t.dim, 3, t.dual);
            let mut all_dec = true;
            for term in terms {
                let e = term.expand();
                if e.is_zero() || is_decomposable(&e).ok().flatten().is_none() {
                    all_dec = false;
                }
                s = s.add(&e);
            }
            let diff = s.sub(t);
            let zero = diff.is_zero();
            let tnorm: f64 = numeric_coeffs(t, &basis).iter().map(|c| c.norm_sqr()).sum();
            let dnorm: f64 = numeric_coeffs(&diff, &basis)
                .iter()
                .map(|c| c.norm_sqr())
                .sum();
            VerifyReport {
                term_count: terms.len(),
                exact: true,
                residual_zero: zero,
                relative_residual: (dnorm / tnorm.max(f64::MIN_POSITIVE)).sqrt(),
                all_terms_decomposable: all_dec,
            }
        }
        Decomposition::Numeric(terms) => {
            let n1 = t.dim as usize;
            let mut sum = vec![Complex64::new(0.0, 0.0); basis.len()];
            for term in terms {
                for (pos, &m) in basis.iter().enumerate() {
                    let idx: Vec<usize> =
                        (0..n1).filter(|i| m & (1u16 << i) != 0).collect();
                    // 3x3 determinant of the selected coordinates
                    let v = &term.vectors;
                    let d = v[0][idx[0]] * (v[1][idx[1]] * v[2][idx[2]] - v[1][idx[2]] * v[2][idx[1]])
                        - v[0][idx[1]] * (v[1][idx[0]] * v[2][idx[2]] - v[1][idx[2]] * v[2][idx[0]])
                        + v[0][idx[2]] * (v[1][idx[0]] * v[2][idx[1]] - v[1][idx[1]] * v[2][idx[0]]);
                    sum[pos] += term.coeff * d;
                }
            }
            let target = numeric_coeffs(t, &basis);
            let tnorm: f64 = target.iter().map(|c| c.norm_sqr()).sum();
            let dnorm: f64 = sum
                .iter()
                .zip(&target)
                .map(|(a, b)| (a - b).norm_sqr())
                .sum();
            let rel = (dnorm / tnorm.max(f64::MIN_POSITIVE)).sqrt();
            VerifyReport {
                term_count: terms.len(),
                exact: false,
                residual_zero: false,
                relative_residual: rel,
                all_terms_decomposable: true,
            }
        }
    }
}

// ---- reference decompositions from the catalog table ----

type Lin = &'static [(char, i64, i64)];

fn explicit_rows(label: OrbitLabel) -> Option<&'static [[Lin; 3]]> {
    // rows written on the same letters as the normal form
    const XII_ROWS: [[Lin; 3]; 4] = [
        [&[('a', 1, 1), ('s', -1, 1)], &[('q', 1, 1)], &[('p', 1, 1)]],
        [&[('q', 1, 1), ('c', -1, 1)], &[('p', 1, 1), ('r', 1, 1)], &[('s', 1, 1)]],
        [&[('t', 1, 1), ('s', 1, 1)], &[('c', 1, 1)], &[('r', 1, 1)]],
        [&[('b', 1, 1)], &[('r', 1, 1)], &[('p', 1, 1)]],
    ];
    const XIV_ROWS: [[Lin; 3]; 4] = [
        [&[('a', 1, 1)], &[('b', 1, 1)], &[('c', 1, 1), ('p', -1, 1)]],
        [&[('a', 1, 1), ('r', -1, 1)], &[('b', 1, 1), ('q', 1, 1)], &[('p', 1, 1)]],
        [&[('r', 1, 1)], &[('q', 1, 1)], &[('p', 1, 1), ('s', -1, 1)]],
        [&[('c', 1, 1)], &[('r', 1, 1)], &[('t', 1, 1)]],
    ];
    const XV_ROWS: [[Lin; 3]; 5] = [
        [&[('c', 1, 1)], &[('r', 1, 1)], &[('t', 1, 1)]],
        [&[('a', 1, 1)], &[('q', 1, 1)], &[('p', 1, 1)]],
        [&[('b', 1, 1), ('s', 1, 1)], &[('r', 1, 1), ('c', -1, 1)], &[('p', 1, 1)]],
        [&[('a', 1, 1), ('p', 1, 1)], &[('b', 1, 1)], &[('c', 1, 1)]],
        [&[('p', 1, 1), ('q', 1, 1)], &[('r', 1, 1)], &[('s', 1, 1)]],
    ];
    const XVIII_ROWS: [[Lin; 3]; 4] = [
        [&[('t', 1, 1), ('r', -1, 1)], &[('b', 1, 1)], &[('s', 1, 1)]],
        [&[('c', 1, 1)], &[('r', 1, 1)], &[('t', 1, 1)]],
        [&[('r', 1, 1)], &[('p', 1, 1), ('s', -1, 1)], &[('b', 1, 1), ('q', -1, 1)]],
        [&[('a', 1, 1), ('r', -1, 1)], &[('q', 1, 1)], &[('p', 1, 1)]],
    ];
    // last factor of the fourth row printed with the wrong sign on t
    const XX_ROWS: [[Lin; 3]; 4] = [
        [&[('r', 1, 1), ('s', 1, 1)], &[('t', 1, 1), ('r', -1, 1)], &[('b', 1, 1)]],
        [&[('r', 1, 1), ('s', 1, 1)], &[('r', 1, 1), ('p', 1, 1)], &[('c', 1, 1), ('q', -1, 1)]],
        [&[('a', 1, 1), ('r', -1, 1), ('s', -1, 1)], &[('q', 1, 1)], &[('p', 1, 1)]],
        [&[('r', 1, 1)], &[('b', 1, 1), ('c', -1, 1)], &[('s', 1, 1), ('p', -1, 1), ('t', 1, 1)]],
    ];
    const XXII_ROWS: [[Lin; 3]; 4] = [
        [
            &[('a', 1, 1), ('r', 1, 1)],
            &[('b', 1, 1), ('q', 2, 1)],
            &[('p', 1, 1), ('c', -1, 1), ('s', 1, 2)],
        ],
        [&[('c', 1, 1)], &[('r', 1, 1)], &[('t', 1, 1), ('b', -3, 1), ('q', -2, 1)]],
        [&[('b', 1, 1)], &[('s', 1, 1)], &[('a', 1, 2), ('r', 3, 2), ('t', 1, 1)]],
        [
            &[('b', 1, 1), ('q', 1, 1)],
            &[('a', 1, 1), ('r', 2, 1)],
            &[('p', 1, 1), ('c', -2, 1), ('s', 1, 1)],
        ],
    ];
    match label {
        XII => Some(&XII_ROWS),
        XIV => Some(&XIV_ROWS),
        XV => Some(&XV_ROWS),
        XVIII => Some(&XVIII_ROWS),
        XX => Some(&XX_ROWS),
        XXII => Some(&XXII_ROWS),
        _ => None,
    }
}

fn letter_vector(dim: u8, lin: Lin) -> Multivector {
    let mut v = Multivector::zero(dim, 1, false);
    for &(ch, num, den) in lin {
        v.add_term(1u16 << letter_index(ch), &Scalar::from_ratio(num, den));
    }
    v
}

fn random_vector(dim: u8, rng: &mut ChaCha8Rng) -> Multivector {
    let mut v = Multivector::zero(dim, 1, false);
    for i in 0..dim as usize {
        v.add_term(1u16 << i, &Scalar::from_int(rng.gen_range(-9..=9)));
    }
    v
}

fn seeded_frame(dim: u8, seed: u64) -> (Vec<Multivector>, ChaCha8Rng) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let vs: Vec<Multivector> = (0..dim).map(|_| random_vector(dim, &mut rng)).collect();
        let rows: Vec<Vec<Scalar>> = vs
            .iter()
            .map(|v| (0..dim as usize).map(|i| v.coeff(1u16 << i)).collect())
            .collect();
        if !ExactMatrix::from_rows(rows).det().is_zero() {
            return (vs, rng);
        }
    }
}

fn combo(vs: &[Multivector], upto: usize, rng: &mut ChaCha8Rng) -> Multivector {
    // random nonzero combination of vs[0..=upto]
    loop {
        let mut w = Multivector::zero(vs[0].dim, 1, false);
        for v in vs.iter().take(upto + 1) {
            let c = Scalar::from_int(rng.gen_range(-5..=5));
            w = w.add(&v.scale(&c));
        }
        if !w.is_zero() {
            return w;
        }
    }
}

fn vsum(vs: &[Multivector], upto: usize) -> Multivector {
    let mut w = Multivector::zero(vs[0].dim, 1, false);
    for v in vs.iter().take(upto + 1) {
        w = w.add(v);
    }
    w
}

/// Reference decomposition from the catalog table. Explicit-letter rows
/// expand exactly to the normal form; the other rows instantiate the generic
/// vectors pseudo-randomly from the seed.
pub fn standard_decomposition(label: OrbitLabel, seed: u64) -> Vec<Term> {
    let dim = label.ambient_dim();
    if let Some(rows) = explicit_rows(label) {
        return rows
            .iter()
            .map(|row| {
                Term::from_vectors(
                    letter_vector(dim, row[0]),
                    letter_vector(dim, row[1]),
                    letter_vector(dim, row[2]),
                )
            })
            .collect();
    }
    let (v, mut rng) = seeded_frame(dim, seed);
    let tri = |a: &Multivector, b: &Multivector, c: &Multivector| {
        Term::from_vectors(a.clone(), b.clone(), c.clone())
    };
    match label {
        II => vec![tri(&v[0], &v[1], &v[2])],
        III => vec![tri(&v[0], &v[1], &v[2]), tri(&v[0], &v[3], &v[4])],
        IV => vec![
            tri(&v[0], &v[1], &v[2]),
            tri(&v[0], &v[3], &v[4]),
            tri(&v[1], &v[3], &v[5]),
        ],
        V => vec![tri(&v[0], &v[1], &v[2]), tri(&v[3], &v[4], &v[5])],
        VI => vec![
            tri(&v[0], &v[1], &v[2]),
            tri(&v[0], &v[3], &v[4]),
            tri(&v[0], &v[5], &v[6]),
        ],
        VII => vec![
            tri(&v[0], &v[1], &v[2]),
            tri(&v[0], &v[3], &v[4]),
            tri(&v[5], &v[6], &vsum(&v, 6)),
        ],
        VIII => vec![
            tri(&v[0], &v[1], &v[2]),
            tri(&v[0], &v[3], &v[4]),
            tri(&v[3], &v[5], &v[6]),
        ],
        IX => {
            let m0 = combo(&v, 6, &mut rng);
            vec![
                tri(&v[0], &v[1], &v[2]),
                tri(&v[3], &v[4], &v[5]),
                tri(&v[6], &vsum(&v, 5), &m0),
            ]
        }
        X => {
            let m0 = combo(&v, 6, &mut rng);
            let m1 = combo(&v, 6, &mut rng);
            let m2 = combo(&v, 6, &mut rng);
            let m3 = combo(&v, 6, &mut rng);
            vec![
                tri(&v[0], &v[1], &v[2]),
                tri(&v[3], &v[4], &v[5]),
                tri(&v[6], &vsum(&v, 6), &m0),
                tri(&m1, &m2, &m3),
            ]
        }
        XI => vec![
            tri(&v[0], &v[1], &v[2]),
            tri(&v[0], &v[3], &v[4]),
            tri(&v[0], &v[5], &v[6]),
            tri(&v[1], &v[3], &v[7]),
        ],
        XIII | XXI => vec![
            tri(&v[0], &v[1], &v[2]),
            tri(&v[0], &v[3], &v[4]),
            tri(&v[1], &v[5], &v[6]),
            tri(&v[3], &v[5], &v[7]),
        ],
        XVI => vec![
            tri(&v[0], &v[1], &v[2]),
            tri(&v[0], &v[3], &v[4]),
            tri(&v[5], &v[6], &v[7]),
        ],
        XVII => vec![
            tri(&v[0], &v[1], &v[2]),
            tri(&v[0], &v[3], &v[4]),
            tri(&v[1], &v[3], &v[5]),
            tri(&v[2], &v[6], &v[7]),
        ],
        XIX => vec![
            tri(&v[0], &v[1], &v[2]),
            tri(&v[3], &v[4], &v[5]),
            tri(&v[6], &v[7], &vsum(&v, 5)),
        ],
        XXIII => {
            let l0 = combo(&v, 7, &mut rng);
            let l1 = combo(&v, 7, &mut rng);
            let l2 = combo(&v, 7, &mut rng);
            vec![
                tri(&v[0], &v[1], &v[2]),
                tri(&v[3], &v[4], &v[5]),
                tri(&v[6], &v[7], &vsum(&v, 5)),
                tri(&l0, &l1, &l2),
            ]
        }
        XII | XIV | XV | XVIII | XX | XXII => unreachable!("explicit rows handled above"),
    }
}

/// Seeded random invertible change of basis applied to the normal form.
/// The determinant is kept nonzero and coprime to 35 so the sample stays
/// usable in the finite-field sweeps.
pub fn orbit_sample(label: OrbitLabel, seed: u64) -> Multivector {
    let t = normal_form(label);
    let g = random_gl(t.dim, seed);
    t.change_basis(&g)
}

/// Seeded invertible rational matrix with entries in [-9,9].
pub fn random_gl(dim: u8, seed: u64) -> Vec<Vec<Scalar>> {
    let n = dim as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let g: Vec<Vec<Scalar>> = (0..n)
            .map(|_| {
                (0..n)
                    .map(|_| Scalar::from_int(rng.gen_range(-9..=9)))
                    .collect()
            })
            .collect();
        use num_traits::Zero as _;
        let d = ExactMatrix::from_rows(g.clone()).det();
        if let Some(r) = d.as_rational() {
            if !r.is_zero() {
                let num = r.numer();
                let five: BigInt = 5.into();
                let seven: BigInt = 7.into();
                if !(num % &five).is_zero() && !(num % &seven).is_zero() {
                    return g;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn normal_forms_have_declared_essential_dim() {
        for label in ALL_LABELS {
            let t = normal_form(label);
            assert_eq!(t.dim, label.ambient_dim(), "{}", label.name());
            let ker = crate::exterior::catalecticant(&t, 1).mat.kernel();
            assert_eq!(ker.dim(), 0, "{} not essential", label.name());
        }
    }

    #[test]
    fn explicit_rows_expand_to_normal_forms() {
        for (label, n) in [(XII, 4), (XIV, 4), (XV, 5), (XVIII, 4), (XX, 4), (XXII, 4)] {
            let dec = standard_decomposition(label, 0);
            assert_eq!(dec.len(), n, "{}", label.name());
            let rep = verify_decomposition(&normal_form(label), &Decomposition::Exact(dec));
            assert!(rep.residual_zero, "{} residual", label.name());
            assert!(rep.all_terms_decomposable, "{}", label.name());
        }
    }

    #[test]
    fn generic_rows_match_ssr_and_are_decomposable() {
        for label in ALL_LABELS {
            let dec = standard_decomposition(label, 1);
            assert_eq!(dec.len(), label.ssr(), "{}", label.name());
            for term in &dec {
                let e = term.expand();
                assert!(!e.is_zero(), "{} has a zero term", label.name());
                assert!(
                    is_decomposable(&e).unwrap().is_some(),
                    "{} term not decomposable",
                    label.name()
                );
            }
        }
    }

    #[test]
    fn sample_is_deterministic_and_invertible() {
        let a = orbit_sample(IX, 3);
        let b = orbit_sample(IX, 3);
        assert!(a.sub(&b).is_zero());
        let c = orbit_sample(IX, 4);
        assert!(!a.sub(&c).is_zero());
    }

    #[test]
    fn verify_flags_wrong_decomposition() {
        let t = normal_form(V);
        let dec = standard_decomposition(II, 0);
        let embedded: Vec<Term> = dec
            .into_iter()
            .map(|term| {
                Term::new(
                    term.coeff,
                    [
                        embed(&term.vectors[0], 6),
                        embed(&term.vectors[1], 6),
                        embed(&term.vectors[2], 6),
                    ],
                )
            })
            .collect();
        let rep = verify_decomposition(&t, &Decomposition::Exact(embedded));
        assert!(!rep.residual_zero);
    }
}
