//! Constant solutions of the graded reflection equation: admissible pairs,
//! the two solution families, assembly of a K-matrix from a descriptor and
//! recognition of a K-matrix as a family member.
//!
//! A Type 1 family `(b₋, b₊)` has `Y = [1, b₋] ∪ [b₊, b₊+b₋-1]` with the
//! involution `σ(i) = b₊+b₋-i`, diagonal `λ+μ` on `[1, b₋]`, `λ` strictly
//! between `b₋` and `b₊` and `0` from `b₊` on, and off-diagonal entries with
//! `y_i y_σ(i) = -λμ ≠ 0`. A Type 2 family `(Y, σ, b)` has `Y ∩ σ(Y) = ∅`,
//! diagonal `λ` on `[1, b]` and `0` after it, and free nonzero `y_i`.
//! The entry `y_j` sits at row `σ(j)`, column `j`.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::scalar::{Ring, Scalar};
use crate::tensor::SquareMatrix;

/// An ordered subset `Y ⊂ [1, N]` with a strictly decreasing, fixed-point
/// free, parity-preserving map `σ: Y → [1, N]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AdmissiblePair {
    // Ascending; sigma[k] is the image of y[k].
    y: Vec<usize>,
    sigma: Vec<usize>,
}

impl AdmissiblePair {
    pub fn empty() -> AdmissiblePair {
        AdmissiblePair {
            y: Vec::new(),
            sigma: Vec::new(),
        }
    }

    /// Stores `(i, σ(i))` pairs without validation.
    pub(crate) fn unchecked(mut map: Vec<(usize, usize)>) -> AdmissiblePair {
        map.sort();
        AdmissiblePair {
            y: map.iter().map(|p| p.0).collect(),
            sigma: map.iter().map(|p| p.1).collect(),
        }
    }

    /// Validates `(i, σ(i))` pairs against dimension and grading.
    pub fn new(g: &Grading, mut map: Vec<(usize, usize)>) -> Result<AdmissiblePair> {
        let n = g.dim();
        map.sort();
        for w in map.windows(2) {
            if w[0].0 == w[1].0 {
                return Err(Error::InvalidFamily(format!(
                    "index {} mapped twice",
                    w[0].0
                )));
            }
            if w[0].1 <= w[1].1 {
                return Err(Error::InvalidFamily("σ must be strictly decreasing".into()));
            }
        }
        for &(i, s) in &map {
            for idx in [i, s] {
                if idx == 0 || idx > n {
                    return Err(Error::IndexOutOfRange { index: idx, n });
                }
            }
            if i == s {
                return Err(Error::InvalidFamily(format!("σ fixes {i}")));
            }
            if g.p(i - 1) != g.p(s - 1) {
                return Err(Error::InvalidFamily(format!("σ({i}) = {s} changes parity")));
            }
        }
        Ok(AdmissiblePair {
            y: map.iter().map(|p| p.0).collect(),
            sigma: map.iter().map(|p| p.1).collect(),
        })
    }

    /// The ordered set `Y`.
    pub fn y(&self) -> &[usize] {
        &self.y
    }

    /// Images `σ(y)` in the order of [`AdmissiblePair::y`].
    pub fn images(&self) -> &[usize] {
        &self.sigma
    }

    pub fn sigma(&self, i: usize) -> Option<usize> {
        self.y.iter().position(|&v| v == i).map(|k| self.sigma[k])
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.y.iter().copied().zip(self.sigma.iter().copied())
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    /// `Y₊ = {i : i > σ(i)}`.
    pub fn y_plus(&self) -> Vec<usize> {
        self.pairs().filter(|&(i, s)| i > s).map(|p| p.0).collect()
    }

    /// `Y₋ = {i : i < σ(i)}`.
    pub fn y_minus(&self) -> Vec<usize> {
        self.pairs().filter(|&(i, s)| i < s).map(|p| p.0).collect()
    }

    /// `b₋ = max(Y₋ ∪ σ(Y₊))`, or 0 for empty `Y`.
    pub fn b_minus(&self) -> usize {
        self.pairs()
            .map(|(i, s)| if i < s { i } else { s })
            .max()
            .unwrap_or(0)
    }

    /// `b₊ = min(Y₊ ∪ σ(Y₋))`, or `N + 1` for empty `Y`.
    pub fn b_plus(&self, n: usize) -> usize {
        self.pairs()
            .map(|(i, s)| if i > s { i } else { s })
            .min()
            .unwrap_or(n + 1)
    }

    /// `Y ∩ σ(Y) = ∅`.
    pub fn is_disjoint(&self) -> bool {
        self.sigma.iter().all(|s| !self.y.contains(s))
    }
}

/// Every admissible pair for the grading, ordered by `(Y, σ(Y))`.
pub fn admissible_pairs(g: &Grading) -> Vec<AdmissiblePair> {
    let n = g.dim();
    let mut out = Vec::new();
    for mask in 0u32..(1 << n) {
        let y: Vec<usize> = (1..=n).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        for images in decreasing_sequences(n, y.len()) {
            let ok = y
                .iter()
                .zip(&images)
                .all(|(&i, &s)| i != s && g.p(i - 1) == g.p(s - 1));
            if ok {
                out.push(AdmissiblePair {
                    y: y.clone(),
                    sigma: images,
                });
            }
        }
    }
    out.sort();
    out
}

// Strictly decreasing sequences of length r over [1, n].
fn decreasing_sequences(n: usize, r: usize) -> Vec<Vec<usize>> {
    fn rec(hi: usize, r: usize, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if r == 0 {
            out.push(prefix.clone());
            return;
        }
        for v in (r..=hi).rev() {
            prefix.push(v);
            rec(v - 1, r - 1, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(n, r, &mut Vec::new(), &mut out);
    out
}

/// A solution family descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum KFamily {
    Type1 { b_minus: usize, b_plus: usize },
    Type2 { pair: AdmissiblePair, b: usize },
}

impl KFamily {
    /// The admissible pair carrying the off-diagonal support.
    pub fn pair(&self) -> AdmissiblePair {
        match self {
            KFamily::Type1 { b_minus, b_plus } => {
                let s = b_minus + b_plus;
                AdmissiblePair::unchecked(
                    (1..=*b_minus)
                        .chain(*b_plus..s)
                        .map(|i| (i, s - i))
                        .collect(),
                )
            }
            KFamily::Type2 { pair, .. } => pair.clone(),
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            KFamily::Type1 { .. } => "type1",
            KFamily::Type2 { .. } => "type2",
        }
    }

    /// `(b₋, b₊)` of the underlying pair.
    pub fn bounds(&self, n: usize) -> (usize, usize) {
        match self {
            KFamily::Type1 { b_minus, b_plus } => (*b_minus, *b_plus),
            KFamily::Type2 { pair, .. } => (pair.b_minus(), pair.b_plus(n)),
        }
    }

    /// Indices whose `y` value is stored in [`KParams`]: `[1, b₋]` for Type 1,
    /// all of `Y` for Type 2.
    pub fn stored_y(&self) -> Vec<usize> {
        match self {
            KFamily::Type1 { b_minus, .. } => (1..=*b_minus).collect(),
            KFamily::Type2 { pair, .. } => pair.y.clone(),
        }
    }

    /// Checks every constraint of the descriptor for the grading.
    pub fn validate(&self, g: &Grading) -> Result<()> {
        let n = g.dim();
        match self {
            KFamily::Type1 { b_minus, b_plus } => {
                let (bm, bp) = (*b_minus, *b_plus);
                if bm == 0 || bm >= bp || bm + bp > n + 1 {
                    return Err(Error::InvalidFamily(format!(
                        "type1 bounds ({bm}, {bp}) need 1 <= b- < b+ and b- + b+ <= {}",
                        n + 1
                    )));
                }
                AdmissiblePair::new(g, self.pair().pairs().collect())?;
                Ok(())
            }
            KFamily::Type2 { pair, b } => {
                let checked = AdmissiblePair::new(g, pair.pairs().collect())?;
                if !checked.is_disjoint() {
                    return Err(Error::InvalidFamily("type2 needs Y ∩ σ(Y) = ∅".into()));
                }
                let (bm, bp) = (pair.b_minus(), pair.b_plus(n));
                if *b < bm || *b >= bp {
                    return Err(Error::InvalidFamily(format!(
                        "type2 b = {b} outside [{bm}, {bp})"
                    )));
                }
                Ok(())
            }
        }
    }
}

impl fmt::Display for KFamily {
    /// `type1:<b->,<b+>` or `type2:<b>[:<i>-<σ(i)>,...]`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            KFamily::Type1 { b_minus, b_plus } => write!(f, "type1:{b_minus},{b_plus}"),
            KFamily::Type2 { pair, b } => {
                write!(f, "type2:{b}")?;
                if !pair.is_empty() {
                    let parts: Vec<String> =
                        pair.pairs().map(|(i, s)| format!("{i}-{s}")).collect();
                    write!(f, ":{}", parts.join(","))?;
                }
                Ok(())
            }
        }
    }
}

impl FromStr for KFamily {
    type Err = Error;

    /// Parses the [`fmt::Display`] form. Parity is not checked here.
    fn from_str(s: &str) -> Result<KFamily> {
        let bad = || Error::InvalidFamily(format!("cannot parse `{s}`"));
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        let (kind, rest) = s.split_once(':').ok_or_else(bad)?;
        match kind.trim() {
            "type1" => {
                let (a, b) = rest.split_once(',').ok_or_else(bad)?;
                Ok(KFamily::Type1 {
                    b_minus: num(a)?,
                    b_plus: num(b)?,
                })
            }
            "type2" => {
                let (b, map) = match rest.split_once(':') {
                    Some((b, map)) => (b, map),
                    None => (rest, ""),
                };
                let mut pairs = Vec::new();
                for part in map.split(',').filter(|p| !p.trim().is_empty()) {
                    let (i, si) = part.split_once('-').ok_or_else(bad)?;
                    pairs.push((num(i)?, num(si)?));
                }
                Ok(KFamily::Type2 {
                    pair: AdmissiblePair::unchecked(pairs),
                    b: num(b)?,
                })
            }
            _ => Err(bad()),
        }
    }
}

/// Every Type 1 and Type 2 descriptor for the grading. Type 1 comes first,
/// ordered by `(b₋, b₊)`; Type 2 follows ordered by `(Y, σ(Y), b)`.
pub fn enumerate_families(g: &Grading) -> Vec<KFamily> {
    let n = g.dim();
    let mut out = Vec::new();
    for bm in 1..=n {
        for bp in bm + 1..=(n + 1 - bm) {
            let f = KFamily::Type1 {
                b_minus: bm,
                b_plus: bp,
            };
            if f.validate(g).is_ok() {
                out.push(f);
            }
        }
    }
    for pair in admissible_pairs(g).into_iter().filter(|p| p.is_disjoint()) {
        for b in pair.b_minus()..pair.b_plus(n) {
            out.push(KFamily::Type2 {
                pair: pair.clone(),
                b,
            });
        }
    }
    out
}

/// Parameters of a family member. Type 1 stores `y_i` for `i ∈ [1, b₋]`
/// only; the partner `y_σ(i) = -λμ / y_i` is derived.
#[derive(Clone, Debug, PartialEq)]
pub struct KParams {
    pub lambda: Scalar,
    pub mu: Option<Scalar>,
    pub y: BTreeMap<usize, Scalar>,
}

impl KParams {
    /// Indeterminate parameters `lambda`, `mu`, `y<i>` over [`Ring::standard`].
    pub fn generic(f: &KFamily, n: usize) -> KParams {
        let ring = Ring::standard(n);
        let var = |name: &str| Scalar::var(&ring, name).expect("standard ring name");
        KParams {
            lambda: var("lambda"),
            mu: matches!(f, KFamily::Type1 { .. }).then(|| var("mu")),
            y: f.stored_y()
                .into_iter()
                .map(|i| (i, var(&format!("y{i}"))))
                .collect(),
        }
    }
}

/// Builds `A = Σ x_i e^i_i + Σ y_j e^{σ(j)}_j` for a descriptor.
pub fn assemble(f: &KFamily, p: &KParams, n: usize) -> Result<SquareMatrix> {
    let expected = f.stored_y();
    let keys: Vec<usize> = p.y.keys().copied().collect();
    if keys != expected {
        return Err(Error::InvalidParams(format!(
            "y values given for {keys:?}, expected {expected:?}"
        )));
    }
    if let Some((i, _)) = p.y.iter().find(|(_, v)| v.is_zero()) {
        return Err(Error::InvalidParams(format!("y{i} must be nonzero")));
    }
    let pair = f.pair();
    if pair.y.iter().chain(&pair.sigma).any(|&i| i > n) {
        return Err(Error::InvalidFamily(format!(
            "{f} does not fit dimension {n}"
        )));
    }
    let mut a = SquareMatrix::zero(n);
    match f {
        KFamily::Type1 { b_minus, b_plus } => {
            let mu =
                p.mu.as_ref()
                    .ok_or_else(|| Error::InvalidParams("type1 needs mu".into()))?;
            let prod = &p.lambda * mu;
            if prod.is_zero() {
                return Err(Error::InvalidParams("type1 needs lambda*mu != 0".into()));
            }
            let total = &p.lambda + mu;
            for i in 1..=n {
                let x = if i <= *b_minus {
                    total.clone()
                } else if i < *b_plus {
                    p.lambda.clone()
                } else {
                    continue;
                };
                a.set0(i - 1, i - 1, x);
            }
            let s = b_minus + b_plus;
            for (&i, yi) in &p.y {
                let partner = (-&prod).div(yi)?;
                a.set0(s - i - 1, i - 1, yi.clone());
                a.set0(i - 1, s - i - 1, partner);
            }
        }
        KFamily::Type2 { b, .. } => {
            if *b > n {
                return Err(Error::InvalidFamily(format!("b = {b} exceeds {n}")));
            }
            for i in 0..*b {
                a.set0(i, i, p.lambda.clone());
            }
            for (j, s) in pair.pairs() {
                a.set0(s - 1, j - 1, p.y[&j].clone());
            }
        }
    }
    Ok(a)
}

/// Result of [`classify`].
#[derive(Clone, Debug, PartialEq)]
pub enum Classification {
    Member(KFamily, KParams),
    /// A Type 1 member whose `λ` and `μ` are the roots of
    /// `t² - trace·t + product`, which do not split over the entry field.
    Unsplit {
        family: KFamily,
        trace: Scalar,
        product: Scalar,
        y: BTreeMap<usize, Scalar>,
    },
    NotASolution,
}

impl Classification {
    pub fn family(&self) -> Option<&KFamily> {
        match self {
            Classification::Member(f, _) => Some(f),
            Classification::Unsplit { family, .. } => Some(family),
            Classification::NotASolution => None,
        }
    }
}

/// Recognizes `A` as a member of a solution family for `g`.
pub fn classify(a: &SquareMatrix, g: &Grading) -> Classification {
    classify_inner(a, g).unwrap_or(Classification::NotASolution)
}

fn classify_inner(a: &SquareMatrix, g: &Grading) -> Option<Classification> {
    let n = a.n();
    if g.dim() != n || !a.is_even(g) {
        return None;
    }
    let zero = Scalar::zero(&Ring::empty());
    let x: Vec<Scalar> = (1..=n)
        .map(|i| a.get(i, i).cloned().unwrap_or_else(|| zero.clone()))
        .collect();
    // Off-diagonal support: column j -> (row, value).
    let mut support: BTreeMap<usize, (usize, Scalar)> = BTreeMap::new();
    let mut rows_used = vec![false; n + 1];
    for (r, c, v) in a.entries() {
        if r == c {
            continue;
        }
        if support.contains_key(&c) || rows_used[r] {
            return None;
        }
        rows_used[r] = true;
        support.insert(c, (r, v.clone()));
    }
    let pair = AdmissiblePair::new(g, support.iter().map(|(&c, (r, _))| (c, *r)).collect()).ok()?;
    let yval = |j: usize| support[&j].1.clone();

    if pair.is_disjoint() {
        let (bm, bp) = (pair.b_minus(), pair.b_plus(n));
        let last = x.iter().rposition(|v| !v.is_zero());
        let (b, lambda) = match last {
            None => (bm, zero.clone()),
            Some(k) => {
                let lambda = x[0].clone();
                if x[..=k].iter().any(|v| *v != lambda) {
                    return None;
                }
                (k + 1, lambda)
            }
        };
        if b < bm || b >= bp {
            return None;
        }
        let params = KParams {
            lambda,
            mu: None,
            y: pair.y.iter().map(|&j| (j, yval(j))).collect(),
        };
        return Some(Classification::Member(KFamily::Type2 { pair, b }, params));
    }

    // Otherwise the support must be exactly a Type 1 involution.
    let bm = pair.y_minus().len();
    let bp = *pair.y_plus().first()?;
    let family = KFamily::Type1 {
        b_minus: bm,
        b_plus: bp,
    };
    if family.validate(g).is_err() || family.pair() != pair {
        return None;
    }
    let trace = x[0].clone();
    if x[..bm].iter().any(|v| *v != trace) || x[bp - 1..].iter().any(|v| !v.is_zero()) {
        return None;
    }
    let gap = &x[bm..bp - 1];
    let y: BTreeMap<usize, Scalar> = (1..=bm).map(|i| (i, yval(i))).collect();
    let neg_product = &yval(1) * &yval(bp + bm - 1);
    for i in 2..=bm {
        if &yval(i) * &yval(bp + bm - i) != neg_product {
            return None;
        }
    }
    let product = -&neg_product;
    if let Some(lambda) = gap.first() {
        if gap.iter().any(|v| v != lambda) {
            return None;
        }
        let mu = &trace - lambda;
        if (lambda * &mu) != product {
            return None;
        }
        let params = KParams {
            lambda: lambda.clone(),
            mu: Some(mu),
            y,
        };
        return Some(Classification::Member(family, params));
    }
    // λ, μ = (trace ± √(trace² - 4·product)) / 2.
    let disc = &(&trace * &trace) - &product.scale_int(4);
    let half = Scalar::from_rational(
        &Ring::empty(),
        &num_rational::BigRational::new(1.into(), 2.into()),
    );
    match disc.sqrt() {
        Some(root) => {
            let lambda = &(&trace + &root) * &half;
            let mu = &(&trace - &root) * &half;
            Some(Classification::Member(
                family,
                KParams {
                    lambda,
                    mu: Some(mu),
                    y,
                },
            ))
        }
        None => Some(Classification::Unsplit {
            family,
            trace,
            product,
            y,
        }),
    }
}

/// Degree class of the minimal polynomial of a family member.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MinimalPolynomialClass {
    /// Annihilated by `(A - λ)(A - μ)`; Type 2 uses `μ = 0`.
    Quadratic,
    /// Annihilated by `A(A - λ)(A - μ)`.
    Cubic,
}

/// Type 1 is quadratic iff `b₋ + b₊ = N + 1`; Type 2 is always quadratic.
pub fn minimal_polynomial_class(f: &KFamily, n: usize) -> MinimalPolynomialClass {
    match f {
        KFamily::Type1 { b_minus, b_plus } if b_minus + b_plus != n + 1 => {
            MinimalPolynomialClass::Cubic
        }
        _ => MinimalPolynomialClass::Quadratic,
    }
}

/// `(A - λ)(A - μ)`, and `A(A - λ)(A - μ)` for the cubic class.
pub fn annihilator(
    a: &SquareMatrix,
    class: MinimalPolynomialClass,
    lambda: &Scalar,
    mu: &Scalar,
) -> SquareMatrix {
    let n = a.n();
    let shift = |s: &Scalar| a.sub(&SquareMatrix::scalar(n, s)).expect("same dimension");
    let quad = shift(lambda).mat_mul(&shift(mu)).expect("same dimension");
    match class {
        MinimalPolynomialClass::Quadratic => quad,
        MinimalPolynomialClass::Cubic => a.mat_mul(&quad).expect("same dimension"),
    }
}

/// True iff some Type 1 family with `b₋ + b₊ = N + 1` exists, i.e. the
/// grading admits invertible even solutions.
pub fn invertible_members_exist(g: &Grading) -> bool {
    let n = g.dim();
    enumerate_families(g).iter().any(|f| match f {
        KFamily::Type1 { b_minus, b_plus } => b_minus + b_plus == n + 1,
        KFamily::Type2 { .. } => false,
    })
}
