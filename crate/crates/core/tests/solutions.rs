use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use rekit::kmatrix::{
    assemble, classify, enumerate_families, invertible_members_exist, minimal_polynomial_class,
};
use rekit::rmatrix::{omega, r_graded, s_hat};
use rekit::verifier::{check_braid, check_re};
use rekit::{
    CheckMode, Classification, Grading, KFamily, KParams, MinimalPolynomialClass, Ring, Scalar,
    SquareMatrix, TensorMatrix,
};

fn int(v: i64) -> Scalar {
    Scalar::from_int(&Ring::empty(), v)
}

fn members(dims: std::ops::RangeInclusive<usize>) -> Vec<(Grading, KFamily)> {
    dims.flat_map(Grading::all)
        .flat_map(|g| {
            enumerate_families(&g)
                .into_iter()
                .map(move |f| (g.clone(), f))
        })
        .collect()
}

#[test]
fn braid_relation_holds_symbolically_up_to_four() {
    for n in 1..=4 {
        for g in Grading::all(n) {
            assert!(
                check_braid(&s_hat(&g), CheckMode::Symbolic)
                    .unwrap()
                    .is_zero,
                "{g}"
            );
        }
    }
}

#[test]
fn hecke_inverse_formula() {
    for n in 1..=4 {
        for g in Grading::all(n) {
            let s = s_hat(&g);
            let inv = s.matrix().sub(&TensorMatrix::scalar(n, &omega())).unwrap();
            assert_eq!(
                s.matrix().mat_mul(&inv).unwrap(),
                TensorMatrix::identity(n),
                "{g}"
            );
        }
    }
}

#[test]
fn graded_r_matrix_is_even() {
    for n in 1..=4 {
        for g in Grading::all(n) {
            assert!(r_graded(&g).is_even(&g), "{g}");
        }
    }
}

#[test]
fn type1_diagonal_profile() {
    for (g, f) in members(2..=4) {
        let KFamily::Type1 { b_minus, b_plus } = f else {
            continue;
        };
        let n = g.dim();
        let a = assemble(&f, &KParams::generic(&f, n), n).unwrap();
        let x = |i: usize| a.get(i, i).cloned().unwrap_or_else(|| int(0));
        for i in 1..=b_minus {
            assert_eq!(x(i), x(b_minus), "{g} {f}");
        }
        for j in b_plus..=n {
            assert!(x(j).is_zero(), "{g} {f} x{j}");
        }
    }
}

#[test]
fn random_mode_accepts_what_symbolic_accepts() {
    for (g, f) in members(1..=3) {
        let n = g.dim();
        let a = assemble(&f, &KParams::generic(&f, n), n).unwrap();
        for seed in [0, 1] {
            assert!(
                check_re(&s_hat(&g), &a, CheckMode::random(seed))
                    .unwrap()
                    .is_zero,
                "{g} {f}"
            );
        }
    }
}

/// Setting a structurally zero entry of a generic member to a nonzero
/// constant gives a solution exactly when the result is again a member.
#[test]
fn perturbations_are_rejected_unless_absorbed() {
    let mut absorbed = 0;
    let mut rejected = 0;
    for (g, f) in members(1..=3) {
        let n = g.dim();
        let a = assemble(&f, &KParams::generic(&f, n), n).unwrap();
        for r in 1..=n {
            for c in 1..=n {
                if a.get(r, c).is_some() {
                    continue;
                }
                let mut b = a.clone();
                b.set(r, c, int(3)).unwrap();
                let zero = check_re(&s_hat(&g), &b, CheckMode::Symbolic)
                    .unwrap()
                    .is_zero;
                let member = !matches!(classify(&b, &g), Classification::NotASolution);
                assert_eq!(zero, member, "{g} {f} at ({r}, {c})");
                if zero {
                    absorbed += 1;
                } else {
                    rejected += 1;
                }
            }
        }
    }
    assert!(
        rejected > absorbed && absorbed > 0,
        "{rejected} rejected, {absorbed} absorbed"
    );
}

/// Non-scalar invertible members exist exactly when the first and last
/// basis vectors have the same parity.
#[test]
fn invertible_members_characterization() {
    for n in 1..=5 {
        for g in Grading::all(n) {
            let expected = n >= 2 && g.parity(1).unwrap() == g.parity(n).unwrap();
            assert_eq!(invertible_members_exist(&g), expected, "{g}");
        }
    }
}

/// `(A - λ)(A - μ) = 0` with `λμ ≠ 0` makes `(λ + μ - A)/(λμ)` an inverse.
#[test]
fn quadratic_type1_members_are_invertible() {
    for (g, f) in members(2..=4) {
        let n = g.dim();
        if !matches!(f, KFamily::Type1 { .. })
            || minimal_polynomial_class(&f, n) != MinimalPolynomialClass::Quadratic
        {
            continue;
        }
        let p = KParams::generic(&f, n);
        let a = assemble(&f, &p, n).unwrap();
        let mu = p.mu.clone().unwrap();
        let complement = SquareMatrix::scalar(n, &(&p.lambda + &mu)).sub(&a).unwrap();
        let product = a.mat_mul(&complement).unwrap();
        assert_eq!(
            product,
            SquareMatrix::scalar(n, &(&p.lambda * &mu)),
            "{g} {f}"
        );
    }
}

fn nonzero_rational() -> impl Strategy<Value = Scalar> {
    (1i64..=9, 1i64..=4, any::<bool>()).prop_map(|(a, b, neg)| {
        let a = if neg { -a } else { a };
        Scalar::from_rational(
            &Ring::empty(),
            &BigRational::new(BigInt::from(a), BigInt::from(b)),
        )
    })
}

fn member_with_constants() -> impl Strategy<Value = (Grading, KFamily, KParams)> {
    (1usize..=4)
        .prop_flat_map(|n| prop::collection::vec(0u8..=1, n))
        .prop_map(|p| Grading::new(p).unwrap())
        .prop_flat_map(|g| {
            let fams = enumerate_families(&g);
            (Just(g), prop::sample::select(fams))
        })
        .prop_flat_map(|(g, f)| {
            let ys = f.stored_y();
            (
                Just(g),
                Just(f),
                nonzero_rational(),
                nonzero_rational(),
                prop::collection::vec(nonzero_rational(), ys.len()),
            )
        })
        .prop_map(|(g, f, lambda, mu, ys)| {
            let p = KParams {
                lambda,
                mu: matches!(f, KFamily::Type1 { .. }).then_some(mu),
                y: f.stored_y().into_iter().zip(ys).collect(),
            };
            (g, f, p)
        })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn members_are_even_solutions((g, f, p) in member_with_constants()) {
        let n = g.dim();
        let a = assemble(&f, &p, n).unwrap();
        prop_assert!(a.is_even(&g));
        prop_assert!(check_re(&s_hat(&g), &a, CheckMode::Symbolic).unwrap().is_zero);
        let back = classify(&a, &g);
        prop_assert!(back.family().is_some());
    }
}
