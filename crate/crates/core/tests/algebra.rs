use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use rekit::grading::Grading;
use rekit::rmatrix::omega;
use rekit::{GradedTensorElement, Point, Ring, Scalar, SquareMatrix, TensorMatrix};

fn ring() -> Ring {
    Ring::new(["q", "x", "y"]).unwrap()
}

fn monomial(c: i64, e: [u8; 3]) -> Scalar {
    let r = ring();
    let mut m = Scalar::from_int(&r, c);
    for (name, k) in ["q", "x", "y"].iter().zip(e) {
        m = &m * &Scalar::var(&r, name).unwrap().pow(k as i32).unwrap();
    }
    m
}

fn poly() -> impl Strategy<Value = Scalar> {
    prop::collection::vec((-6i64..=6, prop::array::uniform3(0u8..3)), 1..5).prop_map(|terms| {
        terms
            .into_iter()
            .fold(Scalar::zero(&ring()), |acc, (c, e)| &acc + &monomial(c, e))
    })
}

fn fraction() -> impl Strategy<Value = Scalar> {
    (poly(), poly()).prop_filter_map("nonzero denominator", |(a, b)| a.div(&b).ok())
}

fn point() -> impl Strategy<Value = Point> {
    prop::array::uniform3((1i64..30, 1i64..30, any::<bool>())).prop_map(|vals| {
        ["q", "x", "y"]
            .iter()
            .zip(vals)
            .map(|(n, (a, b, neg))| {
                let a = if neg { -a } else { a };
                (
                    n.to_string(),
                    BigRational::new(BigInt::from(a), BigInt::from(b)),
                )
            })
            .collect()
    })
}

fn small_int() -> impl Strategy<Value = Scalar> {
    (-4i64..=4).prop_map(|v| Scalar::from_int(&Ring::empty(), v))
}

fn square(n: usize) -> impl Strategy<Value = SquareMatrix> {
    prop::collection::vec(small_int(), n * n).prop_map(move |vals| {
        let entries = vals
            .into_iter()
            .enumerate()
            .map(|(k, v)| (k / n + 1, k % n + 1, v));
        SquareMatrix::from_entries(n, entries).unwrap()
    })
}

fn graded_element(n: usize) -> impl Strategy<Value = GradedTensorElement> {
    let idx = 1..=n;
    prop::collection::vec(
        ((idx.clone(), idx.clone()), (idx.clone(), idx), -3i64..=3),
        0..6,
    )
    .prop_map(move |terms| {
        let mut e = GradedTensorElement::zero(n);
        for (ij, lk, c) in terms {
            e.add_term(ij, lk, &Scalar::from_int(&Ring::empty(), c))
                .unwrap();
        }
        e
    })
}

fn grading(n: usize) -> impl Strategy<Value = Grading> {
    prop::collection::vec(0u8..=1, n).prop_map(|p| Grading::new(p).unwrap())
}

fn no_stored_zeros(m: &rekit::SparseMatrix) -> bool {
    m.entries().all(|(_, _, v)| !v.is_zero())
}

proptest! {
    #[test]
    fn quotient_cancels(a in fraction(), b in fraction()) {
        prop_assume!(!b.is_zero());
        let back = (&a * &b).div(&b).unwrap();
        prop_assert_eq!(back.to_canonical_string(), a.to_canonical_string());
        prop_assert_eq!(back, a);
    }

    #[test]
    fn evaluation_is_a_homomorphism(a in fraction(), b in fraction(), pt in point()) {
        if let (Ok(va), Ok(vb)) = (a.eval(&pt), b.eval(&pt)) {
            prop_assert_eq!((&a + &b).eval(&pt).unwrap(), &va + &vb);
            prop_assert_eq!((&a * &b).eval(&pt).unwrap(), &va * &vb);
        }
    }

    #[test]
    fn canonical_string_round_trips(a in fraction()) {
        let text = a.to_canonical_string();
        let back = Scalar::parse(&text, &ring()).unwrap();
        prop_assert_eq!(back.to_canonical_string(), text);
        prop_assert_eq!(Scalar::parse_infer(&a.to_canonical_string()).unwrap(), a);
    }

    #[test]
    fn amplify_is_multiplicative(a in square(3), b in square(3)) {
        let lhs = TensorMatrix::amplify(&a.mat_mul(&b).unwrap());
        let rhs = TensorMatrix::amplify(&a).mat_mul(&TensorMatrix::amplify(&b)).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn operations_store_no_zeros(a in square(3), b in square(3)) {
        prop_assert!(no_stored_zeros(&a));
        prop_assert!(a.sub(&a).unwrap().is_zero());
        prop_assert!(no_stored_zeros(&a.mat_mul(&b).unwrap()));
        prop_assert!(no_stored_zeros(&a.add(&b).unwrap()));
        prop_assert!(no_stored_zeros(&a.as_sparse().kron(b.as_sparse())));
    }

    #[test]
    fn phi_is_invertible(e in graded_element(3), g in grading(3)) {
        let t = e.phi(&g).unwrap();
        prop_assert_eq!(GradedTensorElement::phi_inv(&t, &g).unwrap(), e);
    }

    #[test]
    fn phi_is_multiplicative_on_sums(a in graded_element(2), b in graded_element(2), g in grading(2)) {
        let lhs = a.graded_mul(&b, &g).unwrap().phi(&g).unwrap();
        let rhs = a.phi(&g).unwrap().mat_mul(&b.phi(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }
}

#[test]
fn omega_times_q() {
    let q = Scalar::var(&Ring::new(["q"]).unwrap(), "q").unwrap();
    let expected = &(&q * &q) - &Scalar::one(&Ring::empty());
    assert_eq!(&omega() * &q, expected);
}

fn unit(n: usize, i: usize, j: usize, l: usize, k: usize) -> GradedTensorElement {
    let mut e = GradedTensorElement::zero(n);
    e.add_term((i, j), (l, k), &Scalar::one(&Ring::empty()))
        .unwrap();
    e
}

#[test]
fn phi_is_multiplicative_on_matrix_units() {
    for n in [2, 3] {
        let units: Vec<_> = (1..=n)
            .flat_map(|i| {
                (1..=n).flat_map(move |j| {
                    (1..=n).flat_map(move |l| (1..=n).map(move |k| (i, j, l, k)))
                })
            })
            .map(|(i, j, l, k)| unit(n, i, j, l, k))
            .collect();
        for g in Grading::all(n) {
            let images: Vec<TensorMatrix> = units.iter().map(|u| u.phi(&g).unwrap()).collect();
            for (a, pa) in units.iter().zip(&images) {
                for (b, pb) in units.iter().zip(&images) {
                    let lhs = a.graded_mul(b, &g).unwrap().phi(&g).unwrap();
                    assert_eq!(lhs, pa.mat_mul(pb).unwrap(), "{g}");
                }
            }
        }
    }
}

#[test]
fn graded_permutation_squares_to_identity() {
    for n in 1..=4 {
        for g in Grading::all(n) {
            let p = g.graded_permutation();
            assert_eq!(p.mat_mul(&p).unwrap(), TensorMatrix::identity(n), "{g}");
        }
    }
}

#[test]
fn graded_permutation_is_even() {
    for n in 1..=4 {
        for g in Grading::all(n) {
            let p = g.graded_permutation();
            for (r, c, _) in p.entries() {
                let (i, j) = ((r - 1) / n + 1, (r - 1) % n + 1);
                let (k, l) = ((c - 1) / n + 1, (c - 1) % n + 1);
                let deg: u8 = [i, j, k, l].iter().map(|&x| g.parity(x).unwrap()).sum();
                assert_eq!(deg % 2, 0, "{g} ({r}, {c})");
            }
        }
    }
}
