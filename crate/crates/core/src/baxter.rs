//! Spectral-parameter solutions from constant ones.
//!
//! `Ŝ(x) = Ŝ - x⁻¹Ŝ⁻¹` with `Ŝ⁻¹ = Ŝ - ω` solves the spectral braid form of
//! the Yang–Baxter equation. A constant K-matrix with minimal polynomial
//! dividing `(A-λ)(A-μ)` becomes
//! `A(x) = A - x⁻¹(ξx - λ - μ)/(x - x⁻¹)`, and one with minimal polynomial
//! `A(A-λ)(A-μ)` becomes
//! `A(x) = A² + (ξx - λ - μ)A - x⁻¹(x²ξ² - ξx(λ+μ) + λμ)/(x - x⁻¹)`.
//! Scalars stand for multiples of the identity. `ξ` is a free indeterminate.

use crate::error::{Error, Result};
use crate::kmatrix::{
    annihilator, minimal_polynomial_class, KFamily, KParams, MinimalPolynomialClass,
};
use crate::rmatrix::{omega, BraidMatrix};
use crate::scalar::{Ring, Scalar};
use crate::tensor::{SparseMatrix, SquareMatrix, TensorMatrix};
use crate::verifier::{run_check, CheckMode, Residual};

/// Name of the spectral indeterminate of single-parameter matrices.
pub const SPECTRAL_VAR: &str = "x";
/// Second spectral indeterminate used by the two-parameter identities.
pub const SECOND_SPECTRAL_VAR: &str = "y";

fn spectral_ring() -> Ring {
    Ring::new(["q", "x", "xi", "y"]).expect("valid names")
}

fn var(name: &str) -> Scalar {
    Scalar::var(&spectral_ring(), name).expect("spectral ring name")
}

/// A matrix depending on the spectral indeterminate `x`.
#[derive(Clone, Debug, PartialEq)]
pub struct Spectral<M> {
    pub value: M,
}

impl Spectral<TensorMatrix> {
    /// The matrix at `x := z`.
    pub fn at(&self, z: &Scalar) -> Result<TensorMatrix> {
        self.value.substitute(SPECTRAL_VAR, z)
    }
}

impl Spectral<SquareMatrix> {
    /// The matrix at `x := z`.
    pub fn at(&self, z: &Scalar) -> Result<SquareMatrix> {
        self.value.substitute(SPECTRAL_VAR, z)
    }
}

/// `Ŝ(x) = Ŝ - x⁻¹(Ŝ - ω·Id)`.
pub fn s_spectral(s: &BraidMatrix) -> Result<Spectral<TensorMatrix>> {
    if !s.hecke_check() {
        return Err(Error::NotHecke);
    }
    let x_inv = var(SPECTRAL_VAR).inv()?;
    let value = s.matrix().sub(&s.hecke_inverse().scale(&x_inv))?;
    Ok(Spectral { value })
}

/// `x⁻¹ f / (x - x⁻¹)` for the scalar part of both formulas.
fn pole_term(f: &Scalar) -> Result<Scalar> {
    let x = var(SPECTRAL_VAR);
    let x_inv = x.inv()?;
    (&x_inv * f).div(&(&x - &x_inv))
}

/// Baxterization by an explicit branch, without checking that the branch
/// matches the minimal polynomial of `a`.
pub fn a_spectral_with(
    a: &SquareMatrix,
    class: MinimalPolynomialClass,
    lambda: &Scalar,
    mu: &Scalar,
) -> Result<Spectral<SquareMatrix>> {
    let n = a.n();
    let x = var(SPECTRAL_VAR);
    let xi = var("xi");
    let linear = &(&(&xi * &x) - lambda) - mu;
    let value = match class {
        MinimalPolynomialClass::Quadratic => {
            let c = pole_term(&linear)?;
            a.sub(&SquareMatrix::scalar(n, &c))?
        }
        MinimalPolynomialClass::Cubic => {
            let xi_x = &xi * &x;
            let f = &(&(&xi_x * &xi_x) - &(&xi_x * &(lambda + mu))) + &(lambda * mu);
            let c = pole_term(&f)?;
            a.mat_mul(a)?
                .add(&a.scale(&linear))?
                .sub(&SquareMatrix::scalar(n, &c))?
        }
    };
    Ok(Spectral { value })
}

/// Baxterizes a family member, choosing the branch from its minimal
/// polynomial class. Type 2 members use `μ = 0`.
pub fn a_spectral(a: &SquareMatrix, f: &KFamily, p: &KParams) -> Result<Spectral<SquareMatrix>> {
    let class = minimal_polynomial_class(f, a.n());
    let mu =
        p.mu.clone()
            .unwrap_or_else(|| Scalar::zero(p.lambda.ring()));
    if !annihilator(a, class, &p.lambda, &mu).is_zero() {
        return Err(Error::UnsupportedFamily);
    }
    a_spectral_with(a, class, &p.lambda, &mu)
}

/// `Ŝ₂₃(x)Ŝ₁₂(xy)Ŝ₂₃(y) - Ŝ₁₂(y)Ŝ₂₃(xy)Ŝ₁₂(x)` on V⊗V⊗V.
pub fn check_spectral_ybe(s: &BraidMatrix, mode: CheckMode) -> Result<Residual> {
    let sx = s_spectral(s)?;
    let (x, y) = (var(SPECTRAL_VAR), var(SECOND_SPECTRAL_VAR));
    let at_x = sx.at(&x)?;
    let at_y = sx.at(&y)?;
    let at_xy = sx.at(&(&x * &y))?;
    let factors = [
        at_x.leg23(),
        at_xy.leg12(),
        at_y.leg23(),
        at_y.leg12(),
        at_xy.leg23(),
        at_x.leg12(),
    ];
    let ring = factors
        .iter()
        .fold(Ring::empty(), |r, m| r.union(&m.ring()));
    run_check(&ring, mode, |pt| {
        let f = prepare(&factors, &ring, pt)?;
        let lhs = SparseMatrix::chain(&[&f[0], &f[1], &f[2]])?;
        let rhs = SparseMatrix::chain(&[&f[3], &f[4], &f[5]])?;
        lhs.sub(&rhs)
    })
}

/// `Ŝ(x/y)A₂(x)Ŝ(xy)A₂(y) - A₂(y)Ŝ(xy)A₂(x)Ŝ(x/y)` with `A₂ = Id ⊗ A`.
pub fn check_spectral_re(
    s: &BraidMatrix,
    ax: &Spectral<SquareMatrix>,
    mode: CheckMode,
) -> Result<Residual> {
    if s.n() != ax.value.n() {
        return Err(Error::DimensionMismatch {
            expected: s.n(),
            found: ax.value.n(),
        });
    }
    let sx = s_spectral(s)?;
    let (x, y) = (var(SPECTRAL_VAR), var(SECOND_SPECTRAL_VAR));
    let s_ratio = sx.at(&x.div(&y)?)?;
    let s_prod = sx.at(&(&x * &y))?;
    let a_x = TensorMatrix::amplify(&ax.at(&x)?);
    let a_y = TensorMatrix::amplify(&ax.at(&y)?);
    let factors = [
        s_ratio.into_sparse(),
        a_x.into_sparse(),
        s_prod.into_sparse(),
        a_y.into_sparse(),
    ];
    let ring = factors
        .iter()
        .fold(Ring::empty(), |r, m| r.union(&m.ring()));
    run_check(&ring, mode, |pt| {
        let f = prepare(&factors, &ring, pt)?;
        let lhs = SparseMatrix::chain(&[&f[0], &f[1], &f[2], &f[3]])?;
        let rhs = SparseMatrix::chain(&[&f[3], &f[2], &f[1], &f[0]])?;
        lhs.sub(&rhs)
    })
}

fn prepare(
    factors: &[SparseMatrix],
    ring: &Ring,
    pt: Option<&crate::scalar::Point>,
) -> Result<Vec<SparseMatrix>> {
    factors
        .iter()
        .map(|m| match pt {
            Some(p) => m.eval(p),
            None => m.to_ring(ring),
        })
        .collect()
}

/// `Ŝ(1) = ω·Id`, a quick consistency probe.
pub fn s_spectral_at_one(s: &BraidMatrix) -> Result<bool> {
    let one = Scalar::one(&Ring::empty());
    let at_one = s_spectral(s)?.at(&one)?;
    Ok(at_one == TensorMatrix::scalar(s.n(), &omega()))
}
