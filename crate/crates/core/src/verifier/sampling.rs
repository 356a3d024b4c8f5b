use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::kmatrix::{assemble, KFamily, KParams};
use crate::scalar::{Point, Ring, Scalar};
use crate::tensor::SquareMatrix;

// Resampling budget when a point hits a pole.
const MAX_POLE_RETRIES: u32 = 64;

/// A nonzero rational `a/b` with `|a| <= bound` and `1 <= b <= bound`.
pub(crate) fn nonzero_rational<R: Rng>(rng: &mut R, bound: u32) -> BigRational {
    let bound = bound.max(1) as i64;
    loop {
        let a = rng.gen_range(-bound..=bound);
        if a != 0 {
            let b = rng.gen_range(1..=bound);
            return BigRational::new(BigInt::from(a), BigInt::from(b));
        }
    }
}

/// A random nonzero rational value for every indeterminate of `ring`.
pub fn random_point<R: Rng>(rng: &mut R, ring: &Ring, bound: u32) -> Point {
    ring.names()
        .iter()
        .map(|n| (n.clone(), nonzero_rational(rng, bound)))
        .collect()
}

/// Calls `f` at fresh random points until it does not hit a pole.
pub(crate) fn retry_poles<R, T, F>(rng: &mut R, ring: &Ring, bound: u32, f: F) -> Result<T>
where
    R: Rng,
    F: Fn(&Point) -> Result<T>,
{
    for _ in 0..MAX_POLE_RETRIES {
        let pt = random_point(rng, ring, bound);
        match f(&pt) {
            Err(Error::PoleAtPoint) | Err(Error::DivisionByZero) => continue,
            other => return other,
        }
    }
    Err(Error::PoleAtPoint)
}

// Uniform rational in [-5, 5] with denominator at most 4.
pub(crate) fn small_rational<R: Rng>(rng: &mut R) -> BigRational {
    let d: i64 = rng.gen_range(1..=4);
    let a: i64 = rng.gen_range(-5 * d..=5 * d);
    BigRational::new(BigInt::from(a), BigInt::from(d))
}

pub(crate) fn small_nonzero<R: Rng>(rng: &mut R) -> BigRational {
    loop {
        let v = small_rational(rng);
        if v != BigRational::from_integer(0.into()) {
            return v;
        }
    }
}

/// A family member with random nonzero parameters from [`small_nonzero`].
pub(crate) fn random_member<R: Rng>(rng: &mut R, families: &[KFamily], n: usize) -> SquareMatrix {
    let empty = Ring::empty();
    let f = families.choose(rng).expect("at least the zero family");
    let mut c = || Scalar::from_rational(&empty, &small_nonzero(rng));
    let params = KParams {
        lambda: c(),
        mu: matches!(f, KFamily::Type1 { .. }).then(&mut c),
        y: f.stored_y().into_iter().map(|i| (i, c())).collect(),
    };
    assemble(f, &params, n).expect("valid family and nonzero parameters")
}
