//! The quadratic system equivalent to the reflection equation for even
//! matrices, written with `A^r_c` = entry at row `r`, column `c` and the
//! braid coefficients `s_ik`.

use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::sampling::{random_member, small_nonzero, small_rational};
use super::{check_re, CheckMode};
use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::kmatrix::{enumerate_families, KFamily};
use crate::rmatrix::{omega, s_coefficient, s_hat};
use crate::scalar::{sum, Point, Ring, Scalar};
use crate::tensor::SquareMatrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaEquation {
    /// Entry at a position with `[r] + [c]` odd.
    Evenness,
    /// `A^m_i A^n_i = 0`, `m, n, i` distinct.
    Eq1Column,
    /// `A^i_m A^i_n = 0`, `m, n, i` distinct.
    Eq1Row,
    /// `A^n_i A^j_m = 0` for `j≠m, m≠n, n≠i`, `(m-i)(n-j) < 0`.
    Eq2,
    /// `(s_ii - s_mi) A^i_i A^m_i = Σ_ν s_iν A^ν_i A^m_ν`, `i ≠ m`.
    Eq3Column,
    /// `(s_ii - s_mi) A^i_i A^i_m = Σ_ν s_iν A^ν_m A^i_ν`, `i ≠ m`.
    Eq3Row,
    /// `Σ_ν s_iν A^ν_m A^n_ν = 0` for `(m-i)(n-i) < 0`.
    Eq3Sum,
    /// `(-1)^{[i][n]} A^n_i A^i_m - Σ_ν s_iν A^ν_m A^n_ν = (s_ni - s_im) A^i_i A^n_m`.
    Eq4,
    /// `ω A^m_m A^i_i = Σ_ν s_iν A^ν_m A^m_ν - Σ_ν s_mν A^ν_i A^i_ν`, `i < m`.
    Eq5,
}

impl LemmaEquation {
    pub fn name(&self) -> &'static str {
        match self {
            LemmaEquation::Evenness => "evenness",
            LemmaEquation::Eq1Column => "eq1-column",
            LemmaEquation::Eq1Row => "eq1-row",
            LemmaEquation::Eq2 => "eq2",
            LemmaEquation::Eq3Column => "eq3-column",
            LemmaEquation::Eq3Row => "eq3-row",
            LemmaEquation::Eq3Sum => "eq3-sum",
            LemmaEquation::Eq4 => "eq4",
            LemmaEquation::Eq5 => "eq5",
        }
    }
}

/// One instantiated equation, `LHS - RHS`, with its 1-based indices.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaResidual {
    pub equation: LemmaEquation,
    pub indices: Vec<usize>,
    pub value: Scalar,
}

/// All instances of the system with `q` an indeterminate.
pub fn lemma_system_residuals(a: &SquareMatrix, g: &Grading) -> Result<Vec<LemmaResidual>> {
    let n = g.dim();
    let s: Vec<Vec<Scalar>> = (0..n)
        .map(|i| (0..n).map(|k| s_coefficient(g, i, k)).collect())
        .collect();
    residuals(a, g, &s, &omega())
}

/// All instances of the system at the given value of `q`.
pub fn lemma_system_residuals_at(
    a: &SquareMatrix,
    g: &Grading,
    q: &BigRational,
) -> Result<Vec<LemmaResidual>> {
    let n = g.dim();
    let mut pt = Point::new();
    pt.insert("q".into(), q.clone());
    let empty = Ring::empty();
    let at = |v: Scalar| -> Result<Scalar> { Ok(Scalar::from_rational(&empty, &v.eval(&pt)?)) };
    let s = (0..n)
        .map(|i| {
            (0..n)
                .map(|k| at(s_coefficient(g, i, k)))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    residuals(a, g, &s, &at(omega())?)
}

/// True iff every residual of the system vanishes.
pub fn lemma_system_holds(a: &SquareMatrix, g: &Grading) -> Result<bool> {
    Ok(lemma_system_residuals(a, g)?
        .iter()
        .all(|r| r.value.is_zero()))
}

#[allow(clippy::needless_range_loop)]
fn residuals(
    a: &SquareMatrix,
    g: &Grading,
    s: &[Vec<Scalar>],
    w: &Scalar,
) -> Result<Vec<LemmaResidual>> {
    let n = g.dim();
    if a.n() != n {
        return Err(Error::DimensionMismatch {
            expected: n,
            found: a.n(),
        });
    }
    let ring = a.ring().union(s[0][0].ring());
    let zero = Scalar::zero(&ring);
    let e: Vec<Vec<Scalar>> = (0..n)
        .map(|r| {
            (0..n)
                .map(|c| match a.get(r + 1, c + 1) {
                    Some(v) => v.to_ring(&ring).expect("union ring"),
                    None => zero.clone(),
                })
                .collect()
        })
        .collect();
    // Σ_ν s_iν A^ν_c A^r_ν
    let conv = |i: usize, c: usize, r: usize| -> Scalar {
        sum(
            &ring,
            (0..n)
                .filter(|&v| !s[i][v].is_zero() && !e[v][c].is_zero() && !e[r][v].is_zero())
                .map(|v| &(&s[i][v] * &e[v][c]) * &e[r][v]),
        )
    };
    let mut out = Vec::new();
    let mut push = |equation, indices: &[usize], value: Scalar| {
        out.push(LemmaResidual {
            equation,
            indices: indices.iter().map(|i| i + 1).collect(),
            value,
        });
    };
    for r in 0..n {
        for c in 0..n {
            if g.unit_degree(r, c) == 1 {
                push(LemmaEquation::Evenness, &[r, c], e[r][c].clone());
            }
        }
    }
    for m in 0..n {
        for nn in 0..n {
            for i in 0..n {
                if m != nn && nn != i && i != m {
                    push(LemmaEquation::Eq1Column, &[m, nn, i], &e[m][i] * &e[nn][i]);
                    push(LemmaEquation::Eq1Row, &[m, nn, i], &e[i][m] * &e[i][nn]);
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            for m in 0..n {
                for nn in 0..n {
                    let (di, dj) = (m as i64 - i as i64, nn as i64 - j as i64);
                    if j != m && m != nn && nn != i && di * dj < 0 {
                        push(LemmaEquation::Eq2, &[i, j, m, nn], &e[nn][i] * &e[j][m]);
                    }
                }
            }
        }
    }
    for i in 0..n {
        for m in 0..n {
            if i == m {
                continue;
            }
            let c = &s[i][i] - &s[m][i];
            let col = &(&c * &e[i][i]) * &e[m][i];
            push(LemmaEquation::Eq3Column, &[i, m], &col - &conv(i, i, m));
            let row = &(&c * &e[i][i]) * &e[i][m];
            push(LemmaEquation::Eq3Row, &[i, m], &row - &conv(i, m, i));
        }
    }
    for i in 0..n {
        for m in 0..n {
            for nn in 0..n {
                if (m as i64 - i as i64) * (nn as i64 - i as i64) < 0 {
                    push(LemmaEquation::Eq3Sum, &[i, m, nn], conv(i, m, nn));
                }
            }
        }
    }
    for i in 0..n {
        for m in 0..n {
            for nn in 0..n {
                if m == i || nn == i || nn == m {
                    continue;
                }
                let mut lhs = &e[nn][i] * &e[i][m];
                if g.odd_pair(i, nn) {
                    lhs = -lhs;
                }
                let lhs = &lhs - &conv(i, m, nn);
                let rhs = &(&(&s[nn][i] - &s[i][m]) * &e[i][i]) * &e[nn][m];
                push(LemmaEquation::Eq4, &[i, m, nn], &lhs - &rhs);
            }
        }
    }
    for i in 0..n {
        for m in i + 1..n {
            let lhs = &(w * &e[m][m]) * &e[i][i];
            let rhs = &conv(i, m, m) - &conv(m, i, i);
            push(LemmaEquation::Eq5, &[i, m], &lhs - &rhs);
        }
    }
    Ok(out)
}

/// Outcome of comparing the lemma system with the reflection equation on
/// random even matrices.
#[derive(Clone, Debug, PartialEq)]
pub struct LemmaEquivalenceReport {
    pub grading: Grading,
    pub samples: usize,
    /// Samples on which both predicates hold.
    pub solutions: usize,
    /// `(A, q, re_holds, lemma_holds)` for every disagreement.
    pub disagreements: Vec<(SquareMatrix, BigRational, bool, bool)>,
}

impl LemmaEquivalenceReport {
    pub fn passed(&self) -> bool {
        self.disagreements.is_empty()
    }
}

/// A random even matrix: a family member, a family member with one or two
/// entries overwritten, or a sparse random matrix. Entries are rationals in
/// `[-5, 5]` except for derived Type 1 partners `-λμ/y`.
fn sample_even_matrix<R: Rng>(rng: &mut R, g: &Grading, families: &[KFamily]) -> SquareMatrix {
    let n = g.dim();
    let empty = Ring::empty();
    let even: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (0..n).map(move |c| (r, c)))
        .filter(|&(r, c)| g.unit_degree(r, c) == 0)
        .collect();
    let roll: f64 = rng.gen();
    let (mut a, edits) = if roll < 0.35 {
        (random_member(rng, families, n), 0)
    } else if roll < 0.7 {
        (random_member(rng, families, n), rng.gen_range(1..=2))
    } else {
        (SquareMatrix::zero(n), rng.gen_range(1..=even.len().max(1)))
    };
    for _ in 0..edits {
        let &(r, c) = even.choose(rng).expect("diagonal positions are even");
        a.set0(r, c, Scalar::from_rational(&empty, &small_rational(rng)));
    }
    a
}

/// Compares [`lemma_system_residuals_at`] with [`check_re`] on `samples`
/// random even matrices at random rational `q`.
pub fn lemma_equivalence(g: &Grading, samples: usize, seed: u64) -> Result<LemmaEquivalenceReport> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let families = enumerate_families(g);
    let s = s_hat(g);
    let one = BigRational::from_integer(1.into());
    let mut report = LemmaEquivalenceReport {
        grading: g.clone(),
        samples,
        solutions: 0,
        disagreements: Vec::new(),
    };
    for _ in 0..samples {
        let q = loop {
            let q = small_nonzero(&mut rng);
            if q != one && q != -one.clone() {
                break q;
            }
        };
        let a = sample_even_matrix(&mut rng, g, &families);
        let mut pt = Point::new();
        pt.insert("q".into(), q.clone());
        let s_at = s.matrix().eval(&pt)?;
        let re = check_re(&s_at, &a, CheckMode::Symbolic)?.is_zero;
        let lemma = lemma_system_residuals_at(&a, g, &q)?
            .iter()
            .all(|r| r.value.is_zero());
        if re && lemma {
            report.solutions += 1;
        }
        if re != lemma {
            report.disagreements.push((a, q, re, lemma));
        }
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kmatrix::{assemble, KParams};

    fn g(s: &str) -> Grading {
        s.parse().unwrap()
    }

    #[test]
    fn family_members_satisfy_the_system() {
        for gr in Grading::all(3) {
            for f in enumerate_families(&gr) {
                let a = assemble(&f, &KParams::generic(&f, 3), 3).unwrap();
                let bad: Vec<_> = lemma_system_residuals(&a, &gr)
                    .unwrap()
                    .into_iter()
                    .filter(|r| !r.value.is_zero())
                    .collect();
                assert!(bad.is_empty(), "{gr} {f}: {bad:?}");
            }
        }
    }

    #[test]
    fn two_entries_in_one_row_violate_eq1() {
        let r = Ring::empty();
        let a = SquareMatrix::from_entries(
            3,
            [
                (1, 2, Scalar::from_int(&r, 2)),
                (1, 3, Scalar::from_int(&r, 5)),
            ],
        )
        .unwrap();
        let res = lemma_system_residuals(&a, &g("000")).unwrap();
        assert!(res
            .iter()
            .any(|x| x.equation == LemmaEquation::Eq1Row && !x.value.is_zero()));
    }

    #[test]
    fn equivalence_small() {
        for gr in Grading::all(2) {
            let rep = lemma_equivalence(&gr, 60, 7).unwrap();
            assert!(rep.passed(), "{rep:?}");
            assert!(rep.solutions > 0);
        }
    }
}
