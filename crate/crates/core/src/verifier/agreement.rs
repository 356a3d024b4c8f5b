//! Agreement of the graded reflection-equation checker with the non-graded
//! one on random matrices, odd entries included.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sampling::{random_member, small_nonzero};
use super::{check_re, check_re_graded, CheckMode};
use crate::error::Result;
use crate::grading::Grading;
use crate::kmatrix::enumerate_families;
use crate::rmatrix::{r_graded, s_hat};
use crate::scalar::{Ring, Scalar};
use crate::tensor::SquareMatrix;

#[derive(Clone, Debug, PartialEq)]
pub struct CheckerAgreementReport {
    pub grading: Grading,
    pub samples: usize,
    /// Samples accepted by both checkers.
    pub solutions: usize,
    /// Samples with at least one odd entry.
    pub with_odd_entries: usize,
    /// `(A, plain_zero, graded_zero)` for every disagreement.
    pub disagreements: Vec<(SquareMatrix, bool, bool)>,
}

impl CheckerAgreementReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// A family member (one third), a member with one to three random entries
/// added anywhere (one third), or a sparse random matrix (one third).
fn sample<R: Rng>(rng: &mut R, g: &Grading, families: &[crate::kmatrix::KFamily]) -> SquareMatrix {
    let n = g.dim();
    let empty = Ring::empty();
    let cells: Vec<(usize, usize)> = (1..=n).flat_map(|r| (1..=n).map(move |c| (r, c))).collect();
    let roll: f64 = rng.gen();
    let (mut a, edits) = if roll < 1.0 / 3.0 {
        (random_member(rng, families, n), 0)
    } else if roll < 2.0 / 3.0 {
        (random_member(rng, families, n), rng.gen_range(1..=3))
    } else {
        (SquareMatrix::zero(n), rng.gen_range(1..=cells.len()))
    };
    for _ in 0..edits {
        let &(r, c) = cells.choose(rng).expect("n >= 1");
        a.set(r, c, Scalar::from_rational(&empty, &small_nonzero(rng)))
            .expect("in range");
    }
    a
}

/// Runs both checkers symbolically in `q` on `samples` random matrices.
pub fn checker_agreement(g: &Grading, samples: usize, seed: u64) -> Result<CheckerAgreementReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let families = enumerate_families(g);
    let s = s_hat(g);
    let r = r_graded(g);
    let mut report = CheckerAgreementReport {
        grading: g.clone(),
        samples,
        solutions: 0,
        with_odd_entries: 0,
        disagreements: Vec::new(),
    };
    for _ in 0..samples {
        let a = sample(&mut rng, g, &families);
        if !a.is_even(g) {
            report.with_odd_entries += 1;
        }
        let plain = check_re(&s, &a, CheckMode::Symbolic)?.is_zero;
        let graded = check_re_graded(&r, &a, g, CheckMode::Symbolic)?.is_zero;
        if plain && graded {
            report.solutions += 1;
        }
        if plain != graded {
            report.disagreements.push((a, plain, graded));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn checkers_agree_in_dimension_two() {
        for g in Grading::all(2) {
            let rep = checker_agreement(&g, 30, 1).unwrap();
            assert!(rep.passed(), "{g}: {:?}", rep.disagreements);
            assert!(
                rep.solutions > 0 && rep.with_odd_entries > 0
                    || g.to_string() == "00"
                    || g.to_string() == "11"
            );
        }
    }
}
