//! The GL-type R-matrix for an arbitrary grading, its non-graded form R̆ and
//! the braid matrix Ŝ.

use std::ops::Deref;

use crate::grading::Grading;
use crate::scalar::{Ring, Scalar};
use crate::tensor::{GradedTensorElement, TensorMatrix};

/// Ring generated by the deformation parameter `q`.
pub fn q_ring() -> Ring {
    Ring::new(["q"]).expect("valid name")
}

pub fn q() -> Scalar {
    Scalar::var(&q_ring(), "q").expect("q is in its ring")
}

/// `ω = q - q⁻¹`.
pub fn omega() -> Scalar {
    let q = q();
    &q - &q.inv().expect("q is nonzero")
}

fn signed(s: Scalar, odd: bool) -> Scalar {
    if odd {
        -s
    } else {
        s
    }
}

// q^{(-1)^{[i]}}
fn q_power(g: &Grading, i: usize) -> Scalar {
    if g.p(i) == 1 {
        q().inv().expect("q is nonzero")
    } else {
        q()
    }
}

/// `R = Σ q^{(-1)^{[i]}δ_ij} e_ii ⊗ e_jj + ω Σ_{i>j} (-1)^{[j]} e_ij ⊗ e_ji`.
pub fn r_graded(g: &Grading) -> GradedTensorElement {
    let n = g.dim();
    let one = Scalar::one(&q_ring());
    let w = omega();
    let mut r = GradedTensorElement::zero(n);
    for i in 0..n {
        for j in 0..n {
            let c = if i == j { q_power(g, i) } else { one.clone() };
            r.add_term0((i, i), (j, j), &c);
            if i > j {
                r.add_term0((i, j), (j, i), &signed(w.clone(), g.p(j) == 1));
            }
        }
    }
    r
}

/// R̆ built directly: `(-1)^{[i][j]} q^{(-1)^{[i]}δ_ij}` on the diagonal at
/// `(i, j)` and `ω` at row `(j, i)`, column `(i, j)` for `i < j`.
pub fn r_breve(g: &Grading) -> TensorMatrix {
    let n = g.dim();
    let one = Scalar::one(&q_ring());
    let w = omega();
    let mut t = TensorMatrix::zero(n);
    for i in 0..n {
        for j in 0..n {
            let c = if i == j { q_power(g, i) } else { one.clone() };
            t.set0((i, j), (i, j), signed(c, g.odd_pair(i, j)));
            if i < j {
                t.set0((j, i), (i, j), w.clone());
            }
        }
    }
    t
}

/// R̆ from the entries of [`r_graded`] via
/// `R̆^{ij}_{kl} = (-1)^{[i][j]+[j][k]+[k][l]} R_{ik,jl}`.
pub fn r_breve_from_graded(g: &Grading) -> TensorMatrix {
    let r = r_graded(g);
    let mut t = TensorMatrix::zero(g.dim());
    for ((i, k), (j, l), v) in r.terms() {
        let (i, j, k, l) = (i - 1, j - 1, k - 1, l - 1);
        let odd = (g.p(i) & g.p(j)) ^ (g.p(j) & g.p(k)) ^ (g.p(k) & g.p(l)) == 1;
        t.set0((i, j), (k, l), signed(v.clone(), odd));
    }
    t
}

/// Diagonal braid coefficient `s_ik` (1-based): `ω` for `i < k`,
/// `(-1)^{[i]} q^{(-1)^{[i]}}` for `i = k`, zero for `i > k`.
pub fn braid_coefficient(g: &Grading, i: usize, k: usize) -> Scalar {
    s_coefficient(g, i - 1, k - 1)
}

pub(crate) fn s_coefficient(g: &Grading, i: usize, k: usize) -> Scalar {
    use std::cmp::Ordering;
    match i.cmp(&k) {
        Ordering::Less => omega(),
        Ordering::Equal => signed(q_power(g, i), g.p(i) == 1),
        Ordering::Greater => Scalar::zero(&q_ring()),
    }
}

/// The braid matrix Ŝ of a grading.
#[derive(Clone, Debug, PartialEq)]
pub struct BraidMatrix {
    s: TensorMatrix,
    grading: Grading,
}

impl Deref for BraidMatrix {
    type Target = TensorMatrix;
    fn deref(&self) -> &TensorMatrix {
        &self.s
    }
}

impl BraidMatrix {
    /// Wraps an arbitrary matrix; `hecke_check` decides whether it is usable
    /// for baxterization.
    pub fn from_matrix(s: TensorMatrix, grading: Grading) -> BraidMatrix {
        BraidMatrix { s, grading }
    }

    pub fn matrix(&self) -> &TensorMatrix {
        &self.s
    }

    pub fn grading(&self) -> &Grading {
        &self.grading
    }

    /// `Ŝ₂₁`, the matrix with both tensor factors swapped.
    pub fn s21(&self) -> TensorMatrix {
        self.s.flipped()
    }

    /// `Ŝ - ω·Id`, the inverse of Ŝ when the Hecke condition holds.
    pub fn hecke_inverse(&self) -> TensorMatrix {
        let n = self.s.n();
        self.s
            .sub(&TensorMatrix::scalar(n, &omega()))
            .expect("same dimension")
    }

    pub fn hecke_check(&self) -> bool {
        hecke_check(&self.s)
    }
}

/// `Ŝ = Σ s_ik E_{(i,k),(i,k)} + Σ_{i≠j} (-1)^{[i][j]} E_{(i,j),(j,i)}`.
pub fn s_hat(g: &Grading) -> BraidMatrix {
    let n = g.dim();
    let mut s = TensorMatrix::zero(n);
    for i in 0..n {
        for k in 0..n {
            s.add0((i, k), (i, k), &s_coefficient(g, i, k));
            if i != k {
                let sign = if g.odd_pair(i, k) { -1 } else { 1 };
                s.add0((i, k), (k, i), &Scalar::from_int(&q_ring(), sign));
            }
        }
    }
    BraidMatrix {
        s,
        grading: g.clone(),
    }
}

/// `φ(P·R)` computed with the graded product.
pub fn s_hat_from_graded(g: &Grading) -> TensorMatrix {
    g.graded_permutation_element()
        .graded_mul(&r_graded(g), g)
        .and_then(|pr| pr.phi(g))
        .expect("dimensions agree")
}

/// True iff `S² - ωS - Id` vanishes identically.
pub fn hecke_check(s: &TensorMatrix) -> bool {
    let n = s.n();
    let Ok(sq) = s.mat_mul(s) else { return false };
    let rest = s
        .scale(&omega())
        .add(&TensorMatrix::identity(n))
        .expect("same dimension");
    sq.sub(&rest).map(|r| r.is_zero()).unwrap_or(false)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Grading {
        s.parse().unwrap()
    }

    fn sc(text: &str) -> Scalar {
        Scalar::parse(text, &q_ring()).unwrap()
    }

    fn dense(t: &TensorMatrix) -> Vec<Vec<String>> {
        let d = t.dim();
        (1..=d)
            .map(|r| {
                (1..=d)
                    .map(|c| {
                        t.get(r, c)
                            .map(|v| v.to_canonical_string())
                            .unwrap_or_else(|| "(0)/(1)".into())
                    })
                    .collect()
            })
            .collect()
    }

    fn expect(rows: &[[&str; 4]]) -> Vec<Vec<String>> {
        rows.iter()
            .map(|r| r.iter().map(|x| sc(x).to_canonical_string()).collect())
            .collect()
    }

    #[test]
    fn r_graded_small_cases() {
        let r = r_graded(&g("0"));
        assert_eq!(r.len(), 1);
        assert_eq!(r.coefficient((1, 1), (1, 1)), Some(&q()));
        let r = r_graded(&g("1"));
        assert_eq!(r.coefficient((1, 1), (1, 1)), Some(&sc("1/q")));

        let r = r_graded(&g("00"));
        assert_eq!(r.len(), 5);
        assert_eq!(r.coefficient((1, 1), (1, 1)), Some(&q()));
        assert_eq!(r.coefficient((2, 2), (2, 2)), Some(&q()));
        assert_eq!(r.coefficient((1, 1), (2, 2)), Some(&sc("1")));
        assert_eq!(r.coefficient((2, 2), (1, 1)), Some(&sc("1")));
        assert_eq!(r.coefficient((2, 1), (1, 2)), Some(&omega()));
    }

    #[test]
    fn r_graded_is_even() {
        for n in 1..=4 {
            for gr in Grading::all(n) {
                assert!(r_graded(&gr).is_even(&gr), "{gr}");
            }
        }
    }

    #[test]
    fn r_breve_examples() {
        let t = r_breve(&g("00"));
        assert_eq!(
            dense(&t),
            expect(&[
                ["q", "0", "0", "0"],
                ["0", "1", "0", "0"],
                ["0", "q - 1/q", "1", "0"],
                ["0", "0", "0", "q"],
            ])
        );
        let t = r_breve(&g("11"));
        assert_eq!(t.get_pair((1, 1), (1, 1)), Some(&sc("-1/q")));
        assert_eq!(t.get_pair((2, 2), (2, 2)), Some(&sc("-1/q")));
        assert_eq!(t.get_pair((1, 2), (1, 2)), Some(&sc("-1")));
        assert_eq!(t.get_pair((2, 1), (2, 1)), Some(&sc("-1")));
    }

    #[test]
    fn r_breve_constructions_agree() {
        for n in 1..=4 {
            for gr in Grading::all(n) {
                assert_eq!(r_breve(&gr), r_breve_from_graded(&gr), "{gr}");
            }
        }
    }

    #[test]
    fn s_hat_examples() {
        assert_eq!(
            dense(&s_hat(&g("00"))),
            expect(&[
                ["q", "0", "0", "0"],
                ["0", "q - 1/q", "1", "0"],
                ["0", "1", "0", "0"],
                ["0", "0", "0", "q"],
            ])
        );
        assert_eq!(
            dense(&s_hat(&g("01"))),
            expect(&[
                ["q", "0", "0", "0"],
                ["0", "q - 1/q", "1", "0"],
                ["0", "1", "0", "0"],
                ["0", "0", "0", "-1/q"],
            ])
        );
        assert_eq!(
            dense(&s_hat(&g("11"))),
            expect(&[
                ["-1/q", "0", "0", "0"],
                ["0", "q - 1/q", "-1", "0"],
                ["0", "-1", "0", "0"],
                ["0", "0", "0", "-1/q"],
            ])
        );
    }

    #[test]
    fn s_hat_is_flip_times_r_breve() {
        for n in 1..=3 {
            for gr in Grading::all(n) {
                assert_eq!(s_hat(&gr).s21().flipped(), *s_hat(&gr).matrix());
                let flip = Grading::even(n).graded_permutation();
                assert_eq!(
                    flip.mat_mul(&r_breve(&gr)).unwrap(),
                    *s_hat(&gr).matrix(),
                    "{gr}"
                );
            }
        }
    }

    #[test]
    fn hecke_small_and_identity() {
        assert!(s_hat(&g("00")).hecke_check());
        assert!(!hecke_check(&TensorMatrix::identity(2)));
        let s = s_hat(&g("011"));
        let prod = s.matrix().mat_mul(&s.hecke_inverse()).unwrap();
        assert_eq!(prod, TensorMatrix::identity(3));
    }
}
