//! Identity checks: reflection equation (plain and graded), Yang–Baxter
//! equation, braid relation, the quadratic lemma system and the support
//! pattern cross-check.
//!
//! Every check runs either symbolically or by exact evaluation at random
//! rational points. A nonzero trial is a definitive failure.

mod agreement;
mod crosscheck;
mod lemma;
mod sampling;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::rmatrix::omega;
use crate::scalar::{Point, Ring, Scalar};
use crate::tensor::{GradedTensorElement, SparseMatrix, SquareMatrix, TensorMatrix};

pub use agreement::{checker_agreement, CheckerAgreementReport};
pub use crosscheck::{
    support_pattern_crosscheck, CrosscheckReport, PatternReport, PatternStatus, Violation,
    MAX_CROSSCHECK_DIM,
};
pub use lemma::{
    lemma_equivalence, lemma_system_holds, lemma_system_residuals, lemma_system_residuals_at,
    LemmaEquation, LemmaEquivalenceReport, LemmaResidual,
};
pub use sampling::random_point;

/// Default number of random trials.
pub const DEFAULT_TRIALS: u32 = 8;
/// Default bound on numerators and denominators of sampled rationals.
pub const DEFAULT_BOUND: u32 = 1000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Symbolic,
    /// Exact evaluation at `trials` random points with numerators and
    /// denominators bounded by `bound`.
    Random {
        seed: u64,
        trials: u32,
        bound: u32,
    },
}

impl CheckMode {
    pub fn random(seed: u64) -> CheckMode {
        CheckMode::Random {
            seed,
            trials: DEFAULT_TRIALS,
            bound: DEFAULT_BOUND,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            CheckMode::Symbolic => "symbolic",
            CheckMode::Random { .. } => "random",
        }
    }
}

/// First nonzero entry of a residual (1-based).
#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub value: Scalar,
    /// Trial index in random mode.
    pub trial: Option<u32>,
}

/// `LHS - RHS` of a checked identity.
#[derive(Clone, Debug, PartialEq)]
pub struct Residual {
    /// The symbolic residual, or the residual at the first failing (else
    /// last) random point.
    pub matrix: SparseMatrix,
    pub is_zero: bool,
    pub witness: Option<Witness>,
    pub mode: CheckMode,
}

/// Runs `compute` symbolically or at random points for the indeterminates
/// of `ring`. `compute` receives the point to evaluate inputs at.
pub(crate) fn run_check<F>(ring: &Ring, mode: CheckMode, compute: F) -> Result<Residual>
where
    F: Fn(Option<&Point>) -> Result<SparseMatrix>,
{
    match mode {
        CheckMode::Symbolic => {
            let matrix = compute(None)?;
            Ok(finish(matrix, mode, None))
        }
        CheckMode::Random {
            seed,
            trials,
            bound,
        } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut last = None;
            for t in 0..trials {
                let matrix = sampling::retry_poles(&mut rng, ring, bound, |pt| compute(Some(pt)))?;
                let res = finish(matrix, mode, Some(t));
                if !res.is_zero {
                    return Ok(res);
                }
                last = Some(res);
            }
            Ok(last.unwrap_or_else(|| finish(SparseMatrix::zero(0), mode, None)))
        }
    }
}

fn finish(matrix: SparseMatrix, mode: CheckMode, trial: Option<u32>) -> Residual {
    let witness = matrix.first_nonzero().map(|(row, col, v)| Witness {
        row,
        col,
        value: v.clone(),
        trial,
    });
    Residual {
        is_zero: witness.is_none(),
        witness,
        matrix,
        mode,
    }
}

fn eval_or_unify(m: &SparseMatrix, ring: &Ring, point: Option<&Point>) -> Result<SparseMatrix> {
    match point {
        Some(p) => m.eval(p),
        None => m.to_ring(ring),
    }
}

fn require_same(expected: usize, found: usize) -> Result<()> {
    if expected != found {
        return Err(Error::DimensionMismatch { expected, found });
    }
    Ok(())
}

/// Residual of `Ŝ A₂ Ŝ A₂ - A₂ Ŝ A₂ Ŝ` with `A₂ = Id ⊗ A`.
pub fn check_re(s: &TensorMatrix, a: &SquareMatrix, mode: CheckMode) -> Result<Residual> {
    require_same(s.n(), a.n())?;
    let a2 = TensorMatrix::amplify(a);
    let ring = s.ring().union(&a.ring());
    run_check(&ring, mode, |pt| {
        let s = eval_or_unify(s.as_sparse(), &ring, pt)?;
        let a2 = eval_or_unify(a2.as_sparse(), &ring, pt)?;
        let sa = s.mul(&a2)?;
        let as_ = a2.mul(&s)?;
        let lhs = sa.mul(&sa)?;
        let rhs = as_.mul(&as_)?;
        lhs.sub(&rhs)
    })
}

/// Reflection equation `S A₂ S A₂ = A₂ S A₂ S` in End(V) ⊗ End(V) with the
/// graded product, `S = P·R` and `A₂ = 1 ⊗ A`. The residual is flattened.
pub fn check_re_graded(
    r: &GradedTensorElement,
    a: &SquareMatrix,
    g: &Grading,
    mode: CheckMode,
) -> Result<Residual> {
    require_same(r.n(), a.n())?;
    require_same(r.n(), g.dim())?;
    let mut ring = a.ring();
    for (_, _, v) in r.terms() {
        ring = ring.union(v.ring());
    }
    let p = g.graded_permutation_element();
    run_check(&ring, mode, |pt| {
        let (r, a) = match pt {
            Some(pt) => (r.eval(pt)?, a.eval(pt)?),
            None => (r.clone(), a.clone()),
        };
        let s = p.graded_mul(&r, g)?;
        let a2 = GradedTensorElement::second_leg(&a);
        let sa = s.graded_mul(&a2, g)?;
        let as_ = a2.graded_mul(&s, g)?;
        let lhs = sa.graded_mul(&sa, g)?;
        let rhs = as_.graded_mul(&as_, g)?;
        Ok(lhs.sub(&rhs)?.phi(g)?.into_sparse())
    })
}

/// Residual of `S² - ωS - Id`.
pub fn check_hecke(s: &TensorMatrix, mode: CheckMode) -> Result<Residual> {
    let w = omega();
    let ring = s.ring().union(w.ring());
    let id = SparseMatrix::identity(s.dim());
    run_check(&ring, mode, |pt| {
        let s = eval_or_unify(s.as_sparse(), &ring, pt)?;
        let w = match pt {
            Some(p) => Scalar::from_rational(&Ring::empty(), &w.eval(p)?),
            None => w.clone(),
        };
        s.mul(&s)?.sub(&s.scale(&w))?.sub(&id)
    })
}

/// Residual of `R₁₂ R₁₃ R₂₃ - R₂₃ R₁₃ R₁₂` on V⊗V⊗V.
pub fn check_ybe(r: &TensorMatrix, mode: CheckMode) -> Result<Residual> {
    let ring = r.ring();
    run_check(&ring, mode, |pt| {
        let r = TensorMatrix::from_sparse(r.n(), eval_or_unify(r.as_sparse(), &ring, pt)?)?;
        let (r12, r13, r23) = (r.leg12(), r.leg13(), r.leg23());
        let lhs = SparseMatrix::chain(&[&r12, &r13, &r23])?;
        let rhs = SparseMatrix::chain(&[&r23, &r13, &r12])?;
        lhs.sub(&rhs)
    })
}

/// Residual of `S₁₂ S₂₃ S₁₂ - S₂₃ S₁₂ S₂₃` on V⊗V⊗V.
pub fn check_braid(s: &TensorMatrix, mode: CheckMode) -> Result<Residual> {
    let ring = s.ring();
    run_check(&ring, mode, |pt| {
        let s = TensorMatrix::from_sparse(s.n(), eval_or_unify(s.as_sparse(), &ring, pt)?)?;
        let (s12, s23) = (s.leg12(), s.leg23());
        let lhs = SparseMatrix::chain(&[&s12, &s23, &s12])?;
        let rhs = SparseMatrix::chain(&[&s23, &s12, &s23])?;
        lhs.sub(&rhs)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kmatrix::{assemble, KFamily, KParams};
    use crate::rmatrix::{r_breve, r_graded, s_hat};

    fn g(s: &str) -> Grading {
        s.parse().unwrap()
    }

    fn int(v: i64) -> Scalar {
        Scalar::from_int(&Ring::empty(), v)
    }

    #[test]
    fn scalar_matrix_solves_re() {
        let lambda = Scalar::var(&Ring::standard(2), "lambda").unwrap();
        let a = SquareMatrix::scalar(3, &lambda);
        for gr in Grading::all(3) {
            assert!(
                check_re(&s_hat(&gr), &a, CheckMode::Symbolic)
                    .unwrap()
                    .is_zero
            );
        }
    }

    #[test]
    fn type1_member_solves_re() {
        let f: KFamily = "type1:1,2".parse().unwrap();
        let a = assemble(&f, &KParams::generic(&f, 2), 2).unwrap();
        let gr = g("00");
        assert!(
            check_re(&s_hat(&gr), &a, CheckMode::Symbolic)
                .unwrap()
                .is_zero
        );
        assert!(
            check_re(&s_hat(&gr), &a, CheckMode::random(0))
                .unwrap()
                .is_zero
        );
        assert!(
            check_re_graded(&r_graded(&gr), &a, &gr, CheckMode::Symbolic)
                .unwrap()
                .is_zero
        );
    }

    #[test]
    fn flip_is_a_type1_member() {
        // e12 + e21 squares to the identity: lambda = 1, mu = -1.
        let a = SquareMatrix::from_entries(2, [(1, 2, int(1)), (2, 1, int(1))]).unwrap();
        assert!(
            check_re(&s_hat(&g("00")), &a, CheckMode::Symbolic)
                .unwrap()
                .is_zero
        );
    }

    #[test]
    fn profile_violation_is_not_a_solution() {
        let a = SquareMatrix::from_entries(
            2,
            [(1, 1), (1, 2), (2, 1), (2, 2)].map(|(r, c)| (r, c, int(1))),
        )
        .unwrap();
        let res = check_re(&s_hat(&g("00")), &a, CheckMode::Symbolic).unwrap();
        assert!(!res.is_zero);
        assert!(res.witness.is_some());
        let res = check_re(&s_hat(&g("00")), &a, CheckMode::random(0)).unwrap();
        assert!(!res.is_zero);
        assert_eq!(res.witness.unwrap().trial, Some(0));
    }

    #[test]
    fn odd_entry_fails_both_checkers() {
        let gr = g("01");
        let a = SquareMatrix::from_entries(2, [(1, 2, int(1))]).unwrap();
        let plain = check_re(&s_hat(&gr), &a, CheckMode::Symbolic).unwrap();
        let graded = check_re_graded(&r_graded(&gr), &a, &gr, CheckMode::Symbolic).unwrap();
        assert!(!plain.is_zero);
        assert!(!graded.is_zero);
        let zero = SquareMatrix::zero(2);
        assert!(
            check_re_graded(&r_graded(&gr), &zero, &gr, CheckMode::Symbolic)
                .unwrap()
                .is_zero
        );
    }

    #[test]
    fn ybe_and_braid_small() {
        for gr in Grading::all(2) {
            assert!(
                check_ybe(&r_breve(&gr), CheckMode::Symbolic)
                    .unwrap()
                    .is_zero
            );
            assert!(
                check_braid(&s_hat(&gr), CheckMode::Symbolic)
                    .unwrap()
                    .is_zero
            );
        }
        let mut junk = TensorMatrix::identity(2);
        junk.set(1, 2, int(3)).unwrap();
        junk.set(4, 1, int(2)).unwrap();
        assert!(!check_ybe(&junk, CheckMode::Symbolic).unwrap().is_zero);
        assert!(!check_hecke(&junk, CheckMode::Symbolic).unwrap().is_zero);
    }

    #[test]
    fn dimension_mismatch_is_reported() {
        assert!(matches!(
            check_re(
                &s_hat(&g("00")),
                &SquareMatrix::zero(3),
                CheckMode::Symbolic
            ),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
