//! Sparse matrices over [`Scalar`] on V, V ⊗ V and V ⊗ V ⊗ V, the flattening
//! isomorphism from End(V) ⊗ End(V), and the graded product.
//!
//! All public indices are 1-based. A pair `(i, j)` of basis indices of V ⊗ V
//! flattens to `(i - 1) * N + j`.

use std::collections::BTreeMap;
use std::ops::Deref;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::scalar::{sum, Point, Ring, Scalar};

// Row counts above this are multiplied in parallel.
const PARALLEL_ROWS: usize = 32;

/// A sparse square matrix of arbitrary dimension. No zero entries are stored.
#[derive(Clone, Debug, PartialEq)]
pub struct SparseMatrix {
    dim: usize,
    rows: Vec<BTreeMap<usize, Scalar>>,
}

impl SparseMatrix {
    pub fn zero(dim: usize) -> SparseMatrix {
        SparseMatrix {
            dim,
            rows: vec![BTreeMap::new(); dim],
        }
    }

    pub fn identity(dim: usize) -> SparseMatrix {
        SparseMatrix::scalar(dim, &Scalar::one(&Ring::empty()))
    }

    /// `s` times the identity.
    pub fn scalar(dim: usize, s: &Scalar) -> SparseMatrix {
        let mut m = SparseMatrix::zero(dim);
        if !s.is_zero() {
            for (i, row) in m.rows.iter_mut().enumerate() {
                row.insert(i, s.clone());
            }
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    fn check(&self, r: usize, c: usize) -> Result<()> {
        for idx in [r, c] {
            if idx == 0 || idx > self.dim {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    n: self.dim,
                });
            }
        }
        Ok(())
    }

    /// Entry at 1-based `(r, c)`; `None` for a structural zero.
    pub fn get(&self, r: usize, c: usize) -> Option<&Scalar> {
        if r == 0 || c == 0 || r > self.dim || c > self.dim {
            return None;
        }
        self.rows[r - 1].get(&(c - 1))
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) -> Result<()> {
        self.check(r, c)?;
        self.set0(r - 1, c - 1, v);
        Ok(())
    }

    pub(crate) fn get0(&self, r: usize, c: usize) -> Option<&Scalar> {
        self.rows[r].get(&c)
    }

    pub(crate) fn set0(&mut self, r: usize, c: usize, v: Scalar) {
        if v.is_zero() {
            self.rows[r].remove(&c);
        } else {
            self.rows[r].insert(c, v);
        }
    }

    pub(crate) fn add0(&mut self, r: usize, c: usize, v: &Scalar) {
        let next = match self.rows[r].get(&c) {
            Some(old) => old + v,
            None => v.clone(),
        };
        self.set0(r, c, next);
    }

    /// Nonzero entries in row-major order with 1-based indices.
    pub fn entries(&self) -> impl Iterator<Item = (usize, usize, &Scalar)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(r, row)| row.iter().map(move |(&c, v)| (r + 1, c + 1, v)))
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.rows.iter().all(|r| r.is_empty())
    }

    /// First nonzero entry in row-major order.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &Scalar)> {
        self.entries().next()
    }

    /// Smallest ring containing every entry.
    pub fn ring(&self) -> Ring {
        let mut ring = Ring::empty();
        for row in &self.rows {
            for v in row.values() {
                ring = ring.union(v.ring());
            }
        }
        ring
    }

    pub fn to_ring(&self, ring: &Ring) -> Result<SparseMatrix> {
        self.try_map(|v| v.to_ring(ring))
    }

    pub fn map<F>(&self, f: F) -> SparseMatrix
    where
        F: Fn(&Scalar) -> Scalar,
    {
        self.try_map(|v| Ok(f(v))).expect("infallible map")
    }

    pub fn try_map<F>(&self, f: F) -> Result<SparseMatrix>
    where
        F: Fn(&Scalar) -> Result<Scalar>,
    {
        let mut out = SparseMatrix::zero(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                out.set0(r, c, f(v)?);
            }
        }
        Ok(out)
    }

    pub fn eval(&self, point: &Point) -> Result<SparseMatrix> {
        let empty = Ring::empty();
        self.try_map(|v| Ok(Scalar::from_rational(&empty, &v.eval(point)?)))
    }

    pub fn substitute(&self, name: &str, value: &Scalar) -> Result<SparseMatrix> {
        self.try_map(|v| v.substitute(name, value))
    }

    fn same_dim(&self, other: &SparseMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                found: other.dim,
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.same_dim(other)?;
        let mut out = self.clone();
        for (r, row) in other.rows.iter().enumerate() {
            for (&c, v) in row {
                out.add0(r, c, v);
            }
        }
        Ok(out)
    }

    pub fn sub(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SparseMatrix {
        self.map(|v| -v)
    }

    pub fn scale(&self, s: &Scalar) -> SparseMatrix {
        if s.is_zero() {
            return SparseMatrix::zero(self.dim);
        }
        self.map(|v| v * s)
    }

    /// Ordinary matrix product.
    pub fn mul(&self, other: &SparseMatrix) -> Result<SparseMatrix> {
        self.same_dim(other)?;
        let row_product = |row: &BTreeMap<usize, Scalar>| -> BTreeMap<usize, Scalar> {
            let mut acc: BTreeMap<usize, Vec<Scalar>> = BTreeMap::new();
            for (&k, a) in row {
                for (&c, b) in &other.rows[k] {
                    acc.entry(c).or_default().push(a * b);
                }
            }
            acc.into_iter()
                .filter_map(|(c, parts)| {
                    let ring = parts[0].ring().clone();
                    let v = sum(&ring, parts);
                    (!v.is_zero()).then_some((c, v))
                })
                .collect()
        };
        let rows: Vec<BTreeMap<usize, Scalar>> = if self.dim >= PARALLEL_ROWS {
            self.rows.par_iter().map(row_product).collect()
        } else {
            self.rows.iter().map(row_product).collect()
        };
        Ok(SparseMatrix {
            dim: self.dim,
            rows,
        })
    }

    /// Product of a chain of matrices, left to right.
    pub fn chain(factors: &[&SparseMatrix]) -> Result<SparseMatrix> {
        let (first, rest) = factors
            .split_first()
            .expect("chain needs at least one factor");
        rest.iter().try_fold((*first).clone(), |acc, m| acc.mul(m))
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &SparseMatrix) -> SparseMatrix {
        let d = other.dim;
        let mut out = SparseMatrix::zero(self.dim * d);
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, a) in row {
                for (r2, row2) in other.rows.iter().enumerate() {
                    for (&c2, b) in row2 {
                        out.set0(r * d + r2, c * d + c2, a * b);
                    }
                }
            }
        }
        out
    }

    pub fn transpose(&self) -> SparseMatrix {
        let mut out = SparseMatrix::zero(self.dim);
        for (r, row) in self.rows.iter().enumerate() {
            for (&c, v) in row {
                out.set0(c, r, v.clone());
            }
        }
        out
    }
}

macro_rules! wrapper_ops {
    ($ty:ident) => {
        impl Deref for $ty {
            type Target = SparseMatrix;
            fn deref(&self) -> &SparseMatrix {
                &self.m
            }
        }

        impl $ty {
            pub fn n(&self) -> usize {
                self.n
            }

            pub fn as_sparse(&self) -> &SparseMatrix {
                &self.m
            }

            pub fn into_sparse(self) -> SparseMatrix {
                self.m
            }

            fn wrap(&self, m: SparseMatrix) -> $ty {
                $ty { n: self.n, m }
            }

            fn same_n(&self, other: &$ty) -> Result<()> {
                if self.n != other.n {
                    return Err(Error::DimensionMismatch {
                        expected: self.n,
                        found: other.n,
                    });
                }
                Ok(())
            }

            pub fn set(&mut self, r: usize, c: usize, v: Scalar) -> Result<()> {
                self.m.set(r, c, v)
            }

            pub fn mat_mul(&self, other: &$ty) -> Result<$ty> {
                self.same_n(other)?;
                Ok(self.wrap(self.m.mul(&other.m)?))
            }

            pub fn add(&self, other: &$ty) -> Result<$ty> {
                self.same_n(other)?;
                Ok(self.wrap(self.m.add(&other.m)?))
            }

            pub fn sub(&self, other: &$ty) -> Result<$ty> {
                self.same_n(other)?;
                Ok(self.wrap(self.m.sub(&other.m)?))
            }

            pub fn scale(&self, s: &Scalar) -> $ty {
                self.wrap(self.m.scale(s))
            }

            pub fn eval(&self, point: &Point) -> Result<$ty> {
                Ok(self.wrap(self.m.eval(point)?))
            }

            pub fn substitute(&self, name: &str, value: &Scalar) -> Result<$ty> {
                Ok(self.wrap(self.m.substitute(name, value)?))
            }

            pub fn to_ring(&self, ring: &Ring) -> Result<$ty> {
                Ok(self.wrap(self.m.to_ring(ring)?))
            }

            pub fn map<F: Fn(&Scalar) -> Scalar>(&self, f: F) -> $ty {
                self.wrap(self.m.map(f))
            }

            pub fn transpose(&self) -> $ty {
                self.wrap(self.m.transpose())
            }
        }
    };
}

/// An N×N matrix, an element of End(V).
#[derive(Clone, Debug, PartialEq)]
pub struct SquareMatrix {
    n: usize,
    m: SparseMatrix,
}

wrapper_ops!(SquareMatrix);

impl SquareMatrix {
    pub fn zero(n: usize) -> SquareMatrix {
        SquareMatrix {
            n,
            m: SparseMatrix::zero(n),
        }
    }

    pub fn identity(n: usize) -> SquareMatrix {
        SquareMatrix {
            n,
            m: SparseMatrix::identity(n),
        }
    }

    /// `s` times the identity.
    pub fn scalar(n: usize, s: &Scalar) -> SquareMatrix {
        SquareMatrix {
            n,
            m: SparseMatrix::scalar(n, s),
        }
    }

    pub fn from_sparse(m: SparseMatrix) -> SquareMatrix {
        SquareMatrix { n: m.dim(), m }
    }

    /// Builds a matrix from 1-based `(row, col, value)` triples.
    pub fn from_entries<I>(n: usize, entries: I) -> Result<SquareMatrix>
    where
        I: IntoIterator<Item = (usize, usize, Scalar)>,
    {
        let mut a = SquareMatrix::zero(n);
        for (r, c, v) in entries {
            a.m.check(r, c)?;
            a.m.add0(r - 1, c - 1, &v);
        }
        Ok(a)
    }

    pub(crate) fn set0(&mut self, r: usize, c: usize, v: Scalar) {
        self.m.set0(r, c, v);
    }

    /// True when every entry sits at a position with `[r] + [c]` even.
    pub fn is_even(&self, g: &Grading) -> bool {
        self.m
            .rows
            .iter()
            .enumerate()
            .all(|(r, row)| row.keys().all(|&c| g.unit_degree(r, c) == 0))
    }
}

/// An N²×N² matrix acting on V ⊗ V.
#[derive(Clone, Debug, PartialEq)]
pub struct TensorMatrix {
    n: usize,
    m: SparseMatrix,
}

wrapper_ops!(TensorMatrix);

impl TensorMatrix {
    pub fn zero(n: usize) -> TensorMatrix {
        TensorMatrix {
            n,
            m: SparseMatrix::zero(n * n),
        }
    }

    pub fn identity(n: usize) -> TensorMatrix {
        TensorMatrix {
            n,
            m: SparseMatrix::identity(n * n),
        }
    }

    pub fn scalar(n: usize, s: &Scalar) -> TensorMatrix {
        TensorMatrix {
            n,
            m: SparseMatrix::scalar(n * n, s),
        }
    }

    /// Wraps an N²×N² sparse matrix.
    pub fn from_sparse(n: usize, m: SparseMatrix) -> Result<TensorMatrix> {
        if m.dim() != n * n {
            return Err(Error::DimensionMismatch {
                expected: n * n,
                found: m.dim(),
            });
        }
        Ok(TensorMatrix { n, m })
    }

    /// 1-based flattened index of the pair `(i, j)`.
    pub fn flat_index(&self, i: usize, j: usize) -> usize {
        (i - 1) * self.n + j
    }

    /// Entry at row pair `row`, column pair `col` (1-based).
    pub fn get_pair(&self, row: (usize, usize), col: (usize, usize)) -> Option<&Scalar> {
        let n = self.n;
        let ok = |p: (usize, usize)| p.0 >= 1 && p.1 >= 1 && p.0 <= n && p.1 <= n;
        if !ok(row) || !ok(col) {
            return None;
        }
        self.m
            .get0((row.0 - 1) * n + row.1 - 1, (col.0 - 1) * n + col.1 - 1)
    }

    pub(crate) fn set0(&mut self, row: (usize, usize), col: (usize, usize), v: Scalar) {
        let n = self.n;
        self.m.set0(row.0 * n + row.1, col.0 * n + col.1, v);
    }

    pub(crate) fn add0(&mut self, row: (usize, usize), col: (usize, usize), v: &Scalar) {
        let n = self.n;
        self.m.add0(row.0 * n + row.1, col.0 * n + col.1, v);
    }

    /// `Id ⊗ A`: entry `δ_il A_jk` at row `(i, j)`, column `(l, k)`.
    pub fn amplify(a: &SquareMatrix) -> TensorMatrix {
        let n = a.n();
        let mut out = TensorMatrix::zero(n);
        for i in 0..n {
            for (j, row) in a.m.rows.iter().enumerate() {
                for (&k, v) in row {
                    out.set0((i, j), (i, k), v.clone());
                }
            }
        }
        out
    }

    /// Diagonal conjugation `D T D` with `D = diag((-1)^{[i][j]})`.
    pub fn sign_twist(&self, g: &Grading) -> TensorMatrix {
        let n = self.n;
        let d = |flat: usize| g.odd_pair(flat / n, flat % n);
        let mut out = TensorMatrix::zero(n);
        for (r, row) in self.m.rows.iter().enumerate() {
            for (&c, v) in row {
                let v = if d(r) != d(c) { -v } else { v.clone() };
                out.m.set0(r, c, v);
            }
        }
        out
    }

    /// `T ⊗ Id` on V⊗V⊗V.
    pub fn leg12(&self) -> SparseMatrix {
        self.m.kron(&SparseMatrix::identity(self.n))
    }

    /// `Id ⊗ T` on V⊗V⊗V.
    pub fn leg23(&self) -> SparseMatrix {
        SparseMatrix::identity(self.n).kron(&self.m)
    }

    /// `T` acting on the first and third factors of V⊗V⊗V.
    pub fn leg13(&self) -> SparseMatrix {
        let n = self.n;
        let mut out = SparseMatrix::zero(n * n * n);
        for (r, row) in self.m.rows.iter().enumerate() {
            let (a, c) = (r / n, r % n);
            for (&col, v) in row {
                let (a2, c2) = (col / n, col % n);
                for b in 0..n {
                    out.set0((a * n + b) * n + c, (a2 * n + b) * n + c2, v.clone());
                }
            }
        }
        out
    }

    /// `S₂₁ = P₀ S P₀` with `P₀` the plain flip of the two factors.
    pub fn flipped(&self) -> TensorMatrix {
        let n = self.n;
        let swap = |f: usize| (f % n) * n + f / n;
        let mut out = TensorMatrix::zero(n);
        for (r, row) in self.m.rows.iter().enumerate() {
            for (&c, v) in row {
                out.m.set0(swap(r), swap(c), v.clone());
            }
        }
        out
    }
}

/// `Σ F_{ij,lk} e_ij ⊗ e_lk` in End(V) ⊗ End(V) with the graded product.
#[derive(Clone, Debug, PartialEq)]
pub struct GradedTensorElement {
    n: usize,
    // (i, j, l, k), 0-based, for e_ij ⊗ e_lk.
    terms: BTreeMap<(usize, usize, usize, usize), Scalar>,
}

impl GradedTensorElement {
    pub fn zero(n: usize) -> GradedTensorElement {
        GradedTensorElement {
            n,
            terms: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Adds `c · e_ij ⊗ e_lk` (1-based indices).
    pub fn add_term(&mut self, ij: (usize, usize), lk: (usize, usize), c: &Scalar) -> Result<()> {
        for idx in [ij.0, ij.1, lk.0, lk.1] {
            if idx == 0 || idx > self.n {
                return Err(Error::IndexOutOfRange {
                    index: idx,
                    n: self.n,
                });
            }
        }
        self.add_term0((ij.0 - 1, ij.1 - 1), (lk.0 - 1, lk.1 - 1), c);
        Ok(())
    }

    pub(crate) fn add_term0(&mut self, ij: (usize, usize), lk: (usize, usize), c: &Scalar) {
        let key = (ij.0, ij.1, lk.0, lk.1);
        let next = match self.terms.get(&key) {
            Some(old) => old + c,
            None => c.clone(),
        };
        if next.is_zero() {
            self.terms.remove(&key);
        } else {
            self.terms.insert(key, next);
        }
    }

    /// Coefficient of `e_ij ⊗ e_lk` (1-based).
    pub fn coefficient(&self, ij: (usize, usize), lk: (usize, usize)) -> Option<&Scalar> {
        if [ij.0, ij.1, lk.0, lk.1]
            .iter()
            .any(|&x| x == 0 || x > self.n)
        {
            return None;
        }
        self.terms.get(&(ij.0 - 1, ij.1 - 1, lk.0 - 1, lk.1 - 1))
    }

    /// Terms as `((i, j), (l, k), coefficient)` with 1-based indices.
    pub fn terms(&self) -> impl Iterator<Item = ((usize, usize), (usize, usize), &Scalar)> + '_ {
        self.terms
            .iter()
            .map(|(&(i, j, l, k), v)| ((i + 1, j + 1), (l + 1, k + 1), v))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `1 ⊗ A`.
    pub fn second_leg(a: &SquareMatrix) -> GradedTensorElement {
        let n = a.n();
        let mut f = GradedTensorElement::zero(n);
        for i in 0..n {
            for (l, row) in a.m.rows.iter().enumerate() {
                for (&k, v) in row {
                    f.add_term0((i, i), (l, k), v);
                }
            }
        }
        f
    }

    /// True when every term has total degree `[i]+[j]+[l]+[k]` even.
    pub fn is_even(&self, g: &Grading) -> bool {
        self.terms
            .keys()
            .all(|&(i, j, l, k)| (g.unit_degree(i, j) ^ g.unit_degree(l, k)) == 0)
    }

    fn check_grading(&self, g: &Grading) -> Result<()> {
        if g.dim() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: g.dim(),
            });
        }
        Ok(())
    }

    pub fn add(&self, other: &GradedTensorElement) -> Result<GradedTensorElement> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        let mut out = self.clone();
        for (&(i, j, l, k), v) in &other.terms {
            out.add_term0((i, j), (l, k), v);
        }
        Ok(out)
    }

    pub fn sub(&self, other: &GradedTensorElement) -> Result<GradedTensorElement> {
        let mut neg = other.clone();
        for v in neg.terms.values_mut() {
            *v = -&*v;
        }
        self.add(&neg)
    }

    pub fn eval(&self, point: &Point) -> Result<GradedTensorElement> {
        let empty = Ring::empty();
        let mut out = GradedTensorElement::zero(self.n);
        for (&(i, j, l, k), v) in &self.terms {
            out.add_term0(
                (i, j),
                (l, k),
                &Scalar::from_rational(&empty, &v.eval(point)?),
            );
        }
        Ok(out)
    }

    /// Graded product: `(a₁⊗b₁)(a₂⊗b₂) = (-1)^{deg a₂ deg b₁} a₁a₂ ⊗ b₁b₂`.
    pub fn graded_mul(
        &self,
        other: &GradedTensorElement,
        g: &Grading,
    ) -> Result<GradedTensorElement> {
        if self.n != other.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                found: other.n,
            });
        }
        self.check_grading(g)?;
        // Group the right factor by the row indices of its two units.
        type Row<'a> = Vec<(usize, usize, &'a Scalar)>;
        let mut by_rows: BTreeMap<(usize, usize), Row> = BTreeMap::new();
        for (&(i2, j2, l2, k2), v) in &other.terms {
            by_rows.entry((i2, l2)).or_default().push((j2, k2, v));
        }
        let mut acc: BTreeMap<(usize, usize, usize, usize), Vec<Scalar>> = BTreeMap::new();
        for (&(i, j, l, k), a) in &self.terms {
            let Some(right) = by_rows.get(&(j, k)) else {
                continue;
            };
            let deg_b1 = g.unit_degree(l, k);
            for &(j2, k2, b) in right {
                let deg_a2 = g.unit_degree(j, j2);
                let prod = a * b;
                let prod = if deg_a2 & deg_b1 == 1 { -prod } else { prod };
                acc.entry((i, j2, l, k2)).or_default().push(prod);
            }
        }
        let mut out = GradedTensorElement::zero(self.n);
        for (key, parts) in acc {
            let ring = parts[0].ring().clone();
            let v = sum(&ring, parts);
            if !v.is_zero() {
                out.terms.insert(key, v);
            }
        }
        Ok(out)
    }

    /// Flattening `e_ij ⊗ e_lk ↦ (-1)^{[j]([l]+[k])} E_{(i,l),(j,k)}`.
    pub fn phi(&self, g: &Grading) -> Result<TensorMatrix> {
        self.check_grading(g)?;
        let mut out = TensorMatrix::zero(self.n);
        for (&(i, j, l, k), v) in &self.terms {
            let odd = g.p(j) & g.unit_degree(l, k) == 1;
            out.set0((i, l), (j, k), if odd { -v } else { v.clone() });
        }
        Ok(out)
    }

    /// Inverse of [`GradedTensorElement::phi`].
    pub fn phi_inv(t: &TensorMatrix, g: &Grading) -> Result<GradedTensorElement> {
        let n = t.n();
        if g.dim() != n {
            return Err(Error::DimensionMismatch {
                expected: n,
                found: g.dim(),
            });
        }
        let mut out = GradedTensorElement::zero(n);
        for (r, row) in t.m.rows.iter().enumerate() {
            let (i, l) = (r / n, r % n);
            for (&c, v) in row {
                let (j, k) = (c / n, c % n);
                let odd = g.p(j) & g.unit_degree(l, k) == 1;
                out.terms
                    .insert((i, j, l, k), if odd { -v } else { v.clone() });
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(v: i64) -> Scalar {
        Scalar::from_int(&Ring::empty(), v)
    }

    fn g(s: &str) -> Grading {
        s.parse().unwrap()
    }

    fn unit(n: usize, ij: (usize, usize), lk: (usize, usize)) -> GradedTensorElement {
        let mut f = GradedTensorElement::zero(n);
        f.add_term(ij, lk, &int(1)).unwrap();
        f
    }

    #[test]
    fn phi_signs() {
        let f = unit(1, (1, 1), (1, 1));
        assert_eq!(f.phi(&g("1")).unwrap().get(1, 1), Some(&int(1)));

        let f = unit(2, (1, 2), (2, 1));
        let t = f.phi(&g("01")).unwrap();
        assert_eq!(t.get_pair((1, 2), (2, 1)), Some(&int(-1)));
        assert_eq!(t.nnz(), 1);
    }

    #[test]
    fn koszul_sign_example() {
        let a = unit(2, (1, 1), (1, 2));
        let b = unit(2, (1, 2), (2, 2));
        let p = a.graded_mul(&b, &g("01")).unwrap();
        assert_eq!(p.coefficient((1, 2), (1, 2)), Some(&int(-1)));
        assert_eq!(p.len(), 1);
    }

    #[test]
    fn amplify_unit() {
        let mut e12 = SquareMatrix::zero(2);
        e12.set(1, 2, int(1)).unwrap();
        let t = TensorMatrix::amplify(&e12);
        assert_eq!(t.nnz(), 2);
        assert_eq!(t.get_pair((1, 1), (1, 2)), Some(&int(1)));
        assert_eq!(t.get_pair((2, 1), (2, 2)), Some(&int(1)));
        assert_eq!(
            TensorMatrix::amplify(&SquareMatrix::identity(3)),
            TensorMatrix::identity(3)
        );
    }

    #[test]
    fn graded_permutation_is_involution() {
        for n in 1..=4 {
            for gr in Grading::all(n) {
                let p = gr.graded_permutation();
                assert_eq!(p.mat_mul(&p).unwrap(), TensorMatrix::identity(n));
                assert_eq!(gr.graded_permutation_element().phi(&gr).unwrap(), p);
            }
        }
        let p = g("01").graded_permutation();
        assert_eq!(p.get_pair((2, 2), (2, 2)), Some(&int(-1)));
        assert_eq!(p.get_pair((2, 1), (1, 2)), Some(&int(1)));
    }

    #[test]
    fn leg_embeddings() {
        let mut t = TensorMatrix::zero(2);
        t.set(2, 3, int(5)).unwrap(); // (1,2) <- (2,1)
        let l13 = t.leg13();
        // rows (1,b,2), cols (2,b,1)
        assert_eq!(l13.nnz(), 2);
        assert_eq!(l13.get(2, 5), Some(&int(5)));
        assert_eq!(l13.get(4, 7), Some(&int(5)));
        assert_eq!(t.leg12().nnz(), 2);
        assert_eq!(t.leg23().get(2, 3), Some(&int(5)));
    }

    #[test]
    fn dimension_mismatch() {
        let a = SquareMatrix::zero(2);
        let b = SquareMatrix::zero(3);
        assert_eq!(
            a.mat_mul(&b),
            Err(Error::DimensionMismatch {
                expected: 2,
                found: 3
            })
        );
        assert!(unit(2, (1, 1), (1, 1)).phi(&g("010")).is_err());
    }
}
