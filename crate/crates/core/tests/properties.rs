mod common;

use holokit::exactla::QMatrix;
use holokit::fdlie::{lcs_and_gr, obstruction_profile, two_step_malcev, validate, Validation};
use holokit::foxmagnus::{kappa2, magnus_free_on};
use holokit::freelie::{
    graded_quotient, lyndon_basis, lyndon_decompose, tensor_embed, witt_dimension, GradedLiePresentation,
    LieElement,
};
use holokit::series::{pbw_invert, pbw_series};
use holokit::words::Word;
use holokit::{BigInt, Rational};
use proptest::prelude::*;

const GENS: usize = 3;

fn word(max_len: usize) -> impl Strategy<Value = Word> {
    prop::collection::vec((1..=GENS as i64, prop::bool::ANY), 0..=max_len)
        .prop_map(|v| Word::from_letters(&v.into_iter().map(|(g, s)| if s { g } else { -g }).collect::<Vec<_>>()))
}

/// Random word of length at most 10 with every exponent sum zero.
fn balanced_word() -> impl Strategy<Value = Word> {
    word(5).prop_map(|w| {
        let mut tail = Word::identity();
        for g in 1..=GENS {
            tail = tail.mul(&Word::power(g, -w.exponent_sum(g)));
        }
        let w = w.mul(&tail);
        assert!(w.len() <= 10);
        w
    })
}

fn identity() -> QMatrix {
    QMatrix::identity(GENS)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn kappa2_is_antisymmetric_and_matches_letter_count(w in balanced_word()) {
        let k = kappa2(&w, &identity()).unwrap();
        for i in 0..GENS {
            for j in 0..GENS {
                prop_assert_eq!(&k[(i, j)], &-k[(j, i)].clone());
                prop_assert_eq!(common::rational_to_i64(&k[(i, j)]), common::magnus_quadratic(&w, i + 1, j + 1));
            }
        }
    }

    #[test]
    fn kappa2_adds_on_products(u in balanced_word(), v in balanced_word()) {
        let a = kappa2(&u, &identity()).unwrap();
        let b = kappa2(&v, &identity()).unwrap();
        let c = kappa2(&u.mul(&v), &identity()).unwrap();
        for i in 0..GENS {
            for j in 0..GENS {
                prop_assert_eq!(&c[(i, j)], &(&a[(i, j)] + &b[(i, j)]));
            }
        }
    }

    #[test]
    fn linear_magnus_part_adds(u in word(10), v in word(10)) {
        let m = magnus_free_on(&u.mul(&v), GENS, 1);
        for g in 1..=GENS {
            let expected = common::magnus_linear(&u, g) + common::magnus_linear(&v, g);
            prop_assert_eq!(m.coefficient(&[g]), Rational::from_integer(expected.into()));
        }
    }

    #[test]
    fn magnus_is_multiplicative(u in word(8), v in word(8)) {
        let cap = 4;
        let lhs = magnus_free_on(&u.mul(&v), GENS, cap);
        let rhs = magnus_free_on(&u, GENS, cap).mul(&magnus_free_on(&v, GENS, cap));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn magnus_of_inverse_is_inverse(u in word(8)) {
        let cap = 4;
        let prod = magnus_free_on(&u, GENS, cap).mul(&magnus_free_on(&u.inverse(), GENS, cap));
        prop_assert_eq!(prod, holokit::foxmagnus::TruncatedTensorSeries::one(GENS, cap));
    }
}

fn lie_element(n: usize, k: usize) -> impl Strategy<Value = LieElement> {
    let basis = lyndon_basis(n, k);
    prop::collection::vec(-3i64..=3, basis.len()).prop_map(move |cs| {
        LieElement::from_terms(n, basis.iter().cloned().zip(cs.into_iter().map(|c| Rational::from_integer(c.into()))))
            .unwrap()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lyndon_round_trip(e in (1usize..=3, 1usize..=5).prop_flat_map(|(n, k)| lie_element(n, k))) {
        let t = tensor_embed(&e, 6).unwrap();
        prop_assert_eq!(lyndon_decompose(&t, e.alphabet()).unwrap(), e);
    }

    #[test]
    fn pbw_inversion_round_trip(d in prop::collection::vec(0i64..6, 1..=7)) {
        let cap = d.len();
        let s = pbw_series(&d, cap).unwrap();
        let back = pbw_invert(&s).unwrap();
        prop_assert_eq!(back, d.iter().map(|&x| BigInt::from(x)).collect::<Vec<_>>());
        let oracle = common::pbw_coefficients(&d.iter().map(|&x| x as usize).collect::<Vec<_>>(), cap);
        for (k, c) in oracle.iter().enumerate() {
            prop_assert_eq!(s.coefficient(k + 1), Rational::from_integer(BigInt::from(*c)));
        }
    }

    #[test]
    fn random_quotients_satisfy_jacobi_and_pbw(
        quad in prop::collection::vec(lie_element(3, 2), 0..=2),
        cubic in prop::collection::vec(lie_element(3, 3), 0..=1),
    ) {
        let rels: Vec<LieElement> = quad.into_iter().chain(cubic).filter(|r| !r.is_zero()).collect();
        let p = GradedLiePresentation::new(3, rels.clone()).unwrap();
        let g = graded_quotient(&p, 5).unwrap();
        prop_assert!(g.check_jacobi().is_ok());
        let expected = common::associative_quotient_dims(3, &rels, 5);
        let pbw = common::pbw_coefficients(&g.dims(), 5);
        prop_assert_eq!(pbw, expected.iter().map(|&x| x as u128).collect::<Vec<_>>());
    }

    #[test]
    fn two_step_algebras_have_no_obstruction(
        n in 2usize..=4,
        m in 1usize..=2,
        seed in prop::collection::vec(-2i64..=2, 2 * 16),
    ) {
        let mut c = vec![vec![vec![0i64; n]; n]; m];
        let mut it = seed.into_iter();
        for layer in c.iter_mut() {
            for i in 0..n {
                for j in i + 1..n {
                    let v = it.next().unwrap();
                    layer[i][j] = v;
                    layer[j][i] = -v;
                }
            }
        }
        let g = two_step_malcev(n, m, &c).unwrap();
        prop_assert_eq!(validate(&g), Validation::Valid);
        prop_assert!(!obstruction_profile(&g).unwrap().obstruction_found());
    }

    #[test]
    fn associated_graded_is_a_fixed_point(
        seed in prop::collection::vec(-2i64..=2, 6),
    ) {
        // filiform-type algebra [e1, e_i] = e_{i+1}, plus a random deformation into the top
        let r = |x: i64| Rational::from_integer(x.into());
        let mut b: Vec<(usize, usize, Vec<(usize, Rational)>)> = (2..=5).map(|i| (1, i, vec![(i + 1, r(1))])).collect();
        b.push((2, 3, vec![(5, r(seed[0])), (6, r(seed[1]))]));
        b.push((2, 4, vec![(6, r(seed[0]))]));
        b.push((2, 5, vec![(6, r(0))]));
        b.push((3, 4, vec![(6, r(-seed[0]))]));
        let g = holokit::fdlie::StructureConstants::from_brackets(6, &b).unwrap();
        prop_assume!(validate(&g) == Validation::Valid);
        let gr = lcs_and_gr(&g).unwrap().graded;
        let grgr = lcs_and_gr(&gr).unwrap();
        prop_assert_eq!(validate(&gr), Validation::Valid);
        prop_assert_eq!(&grgr.lcs_dims, &lcs_and_gr(&g).unwrap().lcs_dims);
        let p1 = obstruction_profile(&gr).unwrap();
        prop_assert!(!p1.obstruction_found());
        prop_assert_eq!(grgr.graded, gr);
    }
}

#[test]
fn witt_counts_lyndon_words() {
    for n in 1..=5usize {
        for k in 1..=8usize {
            assert_eq!(witt_dimension(n as u64, k as u64), BigInt::from(lyndon_basis(n, k).len()), "n={n} k={k}");
        }
    }
}
