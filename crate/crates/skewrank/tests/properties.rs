use proptest::prelude::*;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use skewrank::atlas::invariants::{det_b, signature8, signature_table};
use skewrank::atlas::{normal_form, orbit_sample, OrbitLabel, ALL_LABELS};
use skewrank::exterior::{binomial, catalecticant, subsets_lex, Multivector};
use skewrank::grassmann::{is_decomposable, plucker_residuals};
use skewrank::scalar::Scalar;

fn random_vector(dim: u8, rng: &mut ChaCha8Rng) -> Multivector {
    let mut v = Multivector::zero(dim, 1, false);
    for i in 0..dim as usize {
        v.add_term(1u16 << i, &Scalar::from_int(rng.gen_range(-9..=9)));
    }
    v
}

fn random_rank_one(dim: u8, degree: u8, rng: &mut ChaCha8Rng) -> Multivector {
    loop {
        let mut t = random_vector(dim, rng);
        for _ in 1..degree {
            t = t.wedge(&random_vector(dim, rng));
        }
        if !t.is_zero() {
            return t;
        }
    }
}

#[test]
fn kernel_dimensions_of_rank_one_catalecticants() {
    // for a rank-one t with d-dim support, the degree-s contraction map has
    // image of dimension C(d,s), hence kernel C(n+1,s) - C(d,s)
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for case in 0..200u32 {
        let degree = 2 + (case % 3) as u8;
        let dim = 5 + ((case / 3) % 4) as u8;
        let t = random_rank_one(dim, degree, &mut rng);
        for s in 0..=degree {
            let k = catalecticant(&t, s).mat.kernel().dim();
            assert_eq!(
                k,
                binomial(dim, s) - binomial(degree, s),
                "dim {dim} degree {degree} s {s}"
            );
        }
    }
}

#[test]
fn plucker_residuals_vanish_exactly_on_decomposables() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for case in 0..200u32 {
        let degree = 2 + (case % 2) as u8;
        let dim = 5 + ((case / 2) % 4) as u8;
        let t = if case % 2 == 0 {
            random_rank_one(dim, degree, &mut rng)
        } else {
            random_rank_one(dim, degree, &mut rng).add(&random_rank_one(dim, degree, &mut rng))
        };
        if t.is_zero() {
            continue;
        }
        let residuals_zero = plucker_residuals(&t).iter().all(|r| r.is_zero());
        let certified = is_decomposable(&t).unwrap().is_some();
        assert_eq!(residuals_zero, certified, "case {case}");
    }
}

fn arb_tensor(dim: u8, degree: u8, dual: bool) -> impl Strategy<Value = Multivector> {
    let masks = subsets_lex(dim, degree);
    let n = masks.len();
    proptest::collection::vec(-9i64..=9, n).prop_map(move |cs| {
        let mut t = Multivector::zero(dim, degree, dual);
        for (m, c) in masks.iter().zip(cs) {
            t.add_term(*m, &Scalar::from_int(c));
        }
        t
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    // (h1 ∧ h2) . t == h2 . (h1 . t)
    #[test]
    fn contraction_composition_sign_law(
        t in arb_tensor(6, 4, false),
        h1 in arb_tensor(6, 1, true),
        h2 in arb_tensor(6, 2, true),
    ) {
        let lhs = h1.wedge(&h2).contract(&t);
        let rhs = h2.contract(&h1.contract(&t));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }

    // wedge then contract in the other grouping as well
    #[test]
    fn contraction_composition_sign_law_odd_degrees(
        t in arb_tensor(5, 5, false),
        h1 in arb_tensor(5, 3, true),
        h2 in arb_tensor(5, 1, true),
    ) {
        let lhs = h1.wedge(&h2).contract(&t);
        let rhs = h2.contract(&h1.contract(&t));
        prop_assert!(lhs.sub(&rhs).is_zero());
    }
}

#[test]
fn signature_is_gl_equivariant() {
    let table = signature_table();
    for label in ALL_LABELS.iter().filter(|l| l.ambient_dim() == 8) {
        let expected = table
            .iter()
            .find(|(ls, _)| ls.contains(label))
            .map(|(_, row)| *row)
            .expect("every eight-variable orbit has a table row");
        for seed in 0..20u64 {
            let t = orbit_sample(*label, seed);
            let sig = signature8(&t).unwrap().as_array();
            assert_eq!(sig, expected, "{} seed {seed}", label.name());
        }
    }
}

#[test]
fn generic_lines_off_the_rank_three_locus() {
    // adding a generic v ∧ e2 ∧ e5 to the rank-4 normal form stays outside
    // the detB hypersurface
    let t = normal_form(OrbitLabel::X);
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for trial in 0..50 {
        let v = random_vector(7, &mut rng);
        let u = t.add(
            &v.wedge(&Multivector::basis_vector(7, 2, false))
                .wedge(&Multivector::basis_vector(7, 5, false)),
        );
        if u.is_zero() {
            continue;
        }
        assert!(!det_b(&u).is_zero(), "trial {trial}");
    }
}
