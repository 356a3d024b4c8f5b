//! Cross-check of the classification on every admissible support pattern.
//!
//! For each admissible pair `(Y, σ)` the matrix `A = Σ x_i e^i_i + Σ y_j e^{σ(j)}_j`
//! with indeterminate `x_i`, `y_j` is substituted into the reflection
//! equation. The numerators of the residual form a polynomial system over
//! Z[q, x, y]; a case-splitting eliminator decides whether it has a solution
//! with every `y_j ≠ 0` for generic `q`. The verdict is compared with the
//! patterns produced by the family enumeration. For those patterns the
//! family parametrization is substituted back, and each single relation of
//! the parametrization is broken to confirm it is forced.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use rayon::prelude::*;

use super::{check_re, CheckMode};
use crate::error::{Error, Result};
use crate::grading::Grading;
use crate::kmatrix::{
    admissible_pairs, assemble, enumerate_families, AdmissiblePair, KFamily, KParams,
};
use crate::rmatrix::s_hat;
use crate::scalar::gcd::gcd_all;
use crate::scalar::poly::{Monomial, Poly};
use crate::scalar::{Ring, Scalar};
use crate::tensor::SquareMatrix;

/// Largest dimension accepted by [`support_pattern_crosscheck`].
pub const MAX_CROSSCHECK_DIM: usize = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PatternStatus {
    /// Some assignment with all `y_j ≠ 0` solves the equation.
    Solvable,
    /// No such assignment exists.
    Unsolvable,
    /// The eliminator could not decide.
    Undetermined,
}

/// A single broken relation and whether the residual detected it.
#[derive(Clone, Debug, PartialEq)]
pub struct Violation {
    pub family: KFamily,
    pub relation: String,
    pub detected: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PatternReport {
    pub pair: AdmissiblePair,
    pub status: PatternStatus,
    /// Families from the enumeration with this support.
    pub families: Vec<KFamily>,
    /// Every family with this support solves the equation with generic parameters.
    pub parametrization_ok: bool,
    pub violations: Vec<Violation>,
}

impl PatternReport {
    pub fn expected_solvable(&self) -> bool {
        !self.families.is_empty()
    }

    pub fn passed(&self) -> bool {
        let status_ok = match self.status {
            PatternStatus::Solvable => self.expected_solvable(),
            PatternStatus::Unsolvable => !self.expected_solvable(),
            PatternStatus::Undetermined => false,
        };
        status_ok && self.parametrization_ok && self.violations.iter().all(|v| v.detected)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CrosscheckReport {
    pub grading: Grading,
    pub patterns: Vec<PatternReport>,
}

impl CrosscheckReport {
    pub fn passed(&self) -> bool {
        self.patterns.iter().all(|p| p.passed())
    }

    pub fn solvable_patterns(&self) -> Vec<&AdmissiblePair> {
        self.patterns
            .iter()
            .filter(|p| p.status == PatternStatus::Solvable)
            .map(|p| &p.pair)
            .collect()
    }
}

/// Runs the cross-check for every admissible pair of the grading.
/// Violations are tested in random mode with `seed`.
pub fn support_pattern_crosscheck(g: &Grading, seed: u64) -> Result<CrosscheckReport> {
    let n = g.dim();
    if n > MAX_CROSSCHECK_DIM {
        return Err(Error::DimensionTooLarge {
            n,
            max: MAX_CROSSCHECK_DIM,
        });
    }
    let families = enumerate_families(g);
    let pairs = admissible_pairs(g);
    let patterns = pairs
        .par_iter()
        .map(|pair| {
            let fams: Vec<KFamily> = families
                .iter()
                .filter(|f| f.pair() == *pair)
                .cloned()
                .collect();
            pattern_report(g, pair, fams, seed)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(CrosscheckReport {
        grading: g.clone(),
        patterns,
    })
}

fn pattern_report(
    g: &Grading,
    pair: &AdmissiblePair,
    families: Vec<KFamily>,
    seed: u64,
) -> Result<PatternReport> {
    let n = g.dim();
    let status = decide_pattern(g, pair)?;
    let s = s_hat(g);
    let mut parametrization_ok = true;
    let mut violations = Vec::new();
    for f in &families {
        let a = assemble(f, &KParams::generic(f, n), n)?;
        parametrization_ok &= check_re(&s, &a, CheckMode::Symbolic)?.is_zero;
        for (relation, broken) in broken_relations(f, n)? {
            let res = check_re(&s, &broken, CheckMode::random(seed))?;
            violations.push(Violation {
                family: f.clone(),
                relation,
                detected: !res.is_zero,
            });
        }
    }
    Ok(PatternReport {
        pair: pair.clone(),
        status,
        families,
        parametrization_ok,
        violations,
    })
}

/// Copies of the generic member with one relation broken by a fresh
/// indeterminate `t`. Relations that a reparametrization absorbs are skipped.
fn broken_relations(f: &KFamily, n: usize) -> Result<Vec<(String, SquareMatrix)>> {
    let ring = Ring::standard(n).union(&Ring::new(["t"])?);
    let var = |name: &str| Scalar::var(&ring, name).expect("known name");
    let t = var("t");
    let p = KParams::generic(f, n);
    let base = assemble(f, &p, n)?;
    let diag = |i: usize| {
        base.get(i, i)
            .cloned()
            .unwrap_or_else(|| Scalar::zero(&ring))
    };
    let with = |r: usize, c: usize, v: Scalar| {
        let mut a = base.clone();
        a.set(r, c, v).expect("index in range");
        a
    };
    let mut out = Vec::new();
    match f {
        KFamily::Type1 { b_minus, b_plus } => {
            let (bm, bp) = (*b_minus, *b_plus);
            out.push((format!("x{bp} != 0"), with(bp, bp, t.clone())));
            for i in 1..bm {
                out.push((format!("x{i} != x{bm}"), with(i, i, &diag(bm) + &t)));
            }
            // With b+ = b- + 1 and a single pair, λ and μ are only fixed by
            // x_1 and the product, so any product can be absorbed.
            if bp > bm + 1 || bm >= 2 {
                for i in 1..=bm {
                    let s = bm + bp - i;
                    let partner = base.get(i, s).cloned().expect("partner entry present");
                    out.push((
                        format!("y{i}*y{s} != -lambda*mu"),
                        with(i, s, &partner + &t),
                    ));
                }
            }
        }
        KFamily::Type2 { pair, b } => {
            let b = *b;
            // For Y = ∅ and b = 0 the value of λ is free, so x_1 can move.
            if b < n && !(pair.is_empty() && b == 0) {
                out.push((format!("x{} != 0", b + 1), with(b + 1, b + 1, t.clone())));
            }
            if b >= 2 {
                out.push((format!("x{b} != x1"), with(b, b, &diag(1) + &t)));
            }
        }
    }
    Ok(out)
}

fn pattern_ring(n: usize) -> Ring {
    let mut names = vec!["q".to_string()];
    names.extend((1..=n).map(|i| format!("x{i}")));
    names.extend((1..=n).map(|i| format!("y{i}")));
    Ring::new(names).expect("valid names")
}

/// Decides whether the pattern admits a solution with all `y_j ≠ 0`.
pub(crate) fn decide_pattern(g: &Grading, pair: &AdmissiblePair) -> Result<PatternStatus> {
    let n = g.dim();
    let ring = pattern_ring(n);
    let var = |name: String| Scalar::var(&ring, &name).expect("pattern variable");
    let mut a = SquareMatrix::zero(n);
    for i in 1..=n {
        a.set(i, i, var(format!("x{i}")))?;
    }
    for (j, s) in pair.pairs() {
        a.set(s, j, var(format!("y{j}")))?;
    }
    let res = check_re(&s_hat(g), &a, CheckMode::Symbolic)?;
    let mut eqs: Vec<Poly> = res
        .matrix
        .entries()
        .map(|(_, _, v)| {
            v.to_ring(&ring)
                .expect("ring contains q")
                .numerator()
                .clone()
        })
        .collect();
    eqs.sort_by(|a, b| a.terms().cmp(b.terms()));
    eqs.dedup();

    let idx = |name: String| ring.index_of(&name).expect("pattern variable");
    let q = idx("q".into());
    let mut nonzero = 1u64 << q;
    for &j in pair.y() {
        nonzero |= 1 << idx(format!("y{j}"));
    }
    let unknowns = (1..=n).map(|i| idx(format!("x{i}"))).collect();
    let sys = System {
        arity: ring.arity(),
        q,
        unknowns,
        nonzero_vars: nonzero,
        nonzero_polys: Vec::new(),
        eqs,
    };
    Ok(sys.solve())
}

/// Polynomial system with nonvanishing side conditions, over generic `q`.
#[derive(Clone)]
struct System {
    arity: usize,
    q: usize,
    // Variables that may vanish; branching happens on these.
    unknowns: Vec<usize>,
    nonzero_vars: u64,
    nonzero_polys: Vec<Poly>,
    eqs: Vec<Poly>,
}

enum Simplified {
    Zero,
    Contradiction,
    Poly(Poly),
}

impl System {
    fn q_mask(&self) -> u64 {
        1 << self.q
    }

    /// Removes factors known to be nonzero.
    fn strip(&self, p: &Poly) -> Simplified {
        if p.is_zero() {
            return Simplified::Zero;
        }
        let mut p = p.div_scalar(&p.content()).normalize_sign().0;
        let m = p.monomial_content();
        let keep: Vec<u16> = m
            .exponents()
            .iter()
            .enumerate()
            .map(|(i, &e)| {
                if self.nonzero_vars & (1 << i) != 0 {
                    e
                } else {
                    0
                }
            })
            .collect();
        let m = Monomial::from_exponents(&keep);
        if !m.is_one() {
            p = p.div_monomial(&m);
        }
        if p.var_mask() & !self.q_mask() == 0 {
            return Simplified::Contradiction;
        }
        let qc = self.q_content(&p);
        if !qc.is_constant() {
            p = p.div_exact(&qc).expect("content divides");
        }
        loop {
            let mut changed = false;
            for f in &self.nonzero_polys {
                if f.is_constant() {
                    continue;
                }
                if let Some(d) = p.div_exact(f) {
                    p = d;
                    changed = true;
                }
            }
            if !changed {
                break;
            }
        }
        if p.var_mask() & !self.q_mask() == 0 {
            return Simplified::Contradiction;
        }
        Simplified::Poly(p.normalize_sign().0)
    }

    // Gcd of the coefficients of `p` viewed as a polynomial over Z[q].
    fn q_content(&self, p: &Poly) -> Poly {
        let mut groups: BTreeMap<Vec<u16>, Vec<(Monomial, BigInt)>> = BTreeMap::new();
        for (m, c) in p.terms() {
            let mut key = m.exponents().to_vec();
            let e = key[self.q];
            key[self.q] = 0;
            let mut qexp = vec![0u16; self.arity];
            qexp[self.q] = e;
            groups
                .entry(key)
                .or_default()
                .push((Monomial::from_exponents(&qexp), c.clone()));
        }
        let coeffs: Vec<Poly> = groups
            .into_values()
            .map(|terms| Poly::from_terms(self.arity, terms))
            .collect();
        let mut sorted: Vec<&Poly> = coeffs.iter().collect();
        sorted.sort_by_key(|c| c.len());
        gcd_all(self.arity, sorted)
    }

    fn known_nonzero(&self, p: &Poly) -> bool {
        match self.strip(p) {
            Simplified::Zero => false,
            Simplified::Contradiction => true,
            Simplified::Poly(r) => r.is_constant(),
        }
    }

    /// Replaces variable `v` by `num / den` in `p`, scaled by `den^deg`.
    fn substitute(p: &Poly, v: usize, num: &Poly, den: &Poly) -> Poly {
        let coeffs = p.coefficients_in(v);
        let d = coeffs.len().saturating_sub(1);
        if d == 0 {
            return p.clone();
        }
        let mut acc = Poly::zero(p.arity());
        for (k, c) in coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            acc = acc.add(&c.mul(&num.pow(k as u32)).mul(&den.pow((d - k) as u32)));
        }
        acc
    }

    /// Applies `v := num / den` everywhere. `None` on contradiction.
    fn assign(&self, v: usize, num: &Poly, den: &Poly) -> Option<System> {
        let mut next = self.clone();
        let was_nonzero = self.nonzero_vars & (1 << v) != 0;
        next.nonzero_vars &= !(1 << v);
        next.unknowns.retain(|&u| u != v);
        next.eqs = self
            .eqs
            .iter()
            .map(|e| System::substitute(e, v, num, den))
            .collect();
        let mut polys: Vec<Poly> = self
            .nonzero_polys
            .iter()
            .map(|f| System::substitute(f, v, num, den))
            .collect();
        if was_nonzero {
            polys.push(num.clone());
        }
        next.nonzero_polys = Vec::new();
        for f in polys {
            match next.strip(&f) {
                Simplified::Zero => return None,
                Simplified::Contradiction => {}
                Simplified::Poly(r) => {
                    if !r.is_constant() && !next.nonzero_polys.contains(&r) {
                        next.nonzero_polys.push(r);
                    }
                }
            }
        }
        Some(next)
    }

    fn solve(self) -> PatternStatus {
        // Normalize the equations.
        let mut eqs = Vec::new();
        for e in &self.eqs {
            match self.strip(e) {
                Simplified::Zero => {}
                Simplified::Contradiction => return PatternStatus::Unsolvable,
                Simplified::Poly(p) => {
                    if !eqs.contains(&p) {
                        eqs.push(p);
                    }
                }
            }
        }
        eqs.sort_by_key(|p| (p.len(), p.total_degree()));
        if eqs.is_empty() {
            return PatternStatus::Solvable;
        }
        let sys = System { eqs, ..self };
        let zero = Poly::zero(sys.arity);
        let one = Poly::one(sys.arity);

        // A single monomial forces one of its possibly-vanishing variables to 0.
        if let Some(e) = sys.eqs.iter().find(|e| e.len() == 1) {
            let vars: Vec<usize> = sys
                .unknowns
                .iter()
                .copied()
                .filter(|&v| e.degree_in(v) > 0)
                .collect();
            return sys.branch_all(vars.into_iter().map(|v| (v, zero.clone(), one.clone())));
        }

        // Linear elimination with a coefficient known to be nonzero.
        let mut candidates: Vec<usize> = sys.unknowns.clone();
        candidates.extend((0..sys.arity).filter(|&v| v != sys.q && !sys.unknowns.contains(&v)));
        for e in &sys.eqs {
            for &v in &candidates {
                if e.degree_in(v) != 1 {
                    continue;
                }
                let coeffs = e.coefficients_in(v);
                if sys.known_nonzero(&coeffs[1]) {
                    let num = coeffs[0].neg();
                    return match sys.assign(v, &num, &coeffs[1]) {
                        Some(next) => next.solve(),
                        None => PatternStatus::Unsolvable,
                    };
                }
            }
        }

        // Split on a possibly-vanishing variable.
        let pick = sys
            .unknowns
            .iter()
            .copied()
            .filter(|&v| sys.nonzero_vars & (1 << v) == 0)
            .max_by_key(|&v| {
                (
                    sys.eqs.iter().filter(|e| e.degree_in(v) > 0).count(),
                    std::cmp::Reverse(v),
                )
            });
        let Some(v) = pick else {
            return PatternStatus::Undetermined;
        };
        if sys.eqs.iter().all(|e| e.degree_in(v) == 0) {
            // Remaining equations do not involve any splittable variable.
            let mut marked = sys.clone();
            marked.nonzero_vars |= 1 << v;
            return marked.solve();
        }
        let vanishing = sys.assign(v, &zero, &one).map(|s| s.solve());
        if vanishing == Some(PatternStatus::Solvable) {
            return PatternStatus::Solvable;
        }
        let mut marked = sys.clone();
        marked.nonzero_vars |= 1 << v;
        let other = marked.solve();
        combine(vanishing.unwrap_or(PatternStatus::Unsolvable), other)
    }

    fn branch_all<I>(&self, branches: I) -> PatternStatus
    where
        I: IntoIterator<Item = (usize, Poly, Poly)>,
    {
        let mut acc = PatternStatus::Unsolvable;
        for (v, num, den) in branches {
            let status = match self.assign(v, &num, &den) {
                Some(next) => next.solve(),
                None => PatternStatus::Unsolvable,
            };
            acc = combine(acc, status);
            if acc == PatternStatus::Solvable {
                break;
            }
        }
        acc
    }
}

fn combine(a: PatternStatus, b: PatternStatus) -> PatternStatus {
    use PatternStatus::*;
    match (a, b) {
        (Solvable, _) | (_, Solvable) => Solvable,
        (Undetermined, _) | (_, Undetermined) => Undetermined,
        _ => Unsolvable,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn g(s: &str) -> Grading {
        s.parse().unwrap()
    }

    #[test]
    fn two_even() {
        let rep = support_pattern_crosscheck(&g("00"), 0).unwrap();
        assert!(rep.passed(), "{rep:#?}");
        assert_eq!(rep.solvable_patterns().len(), 4);
    }

    #[test]
    fn two_mixed_only_diagonal() {
        let rep = support_pattern_crosscheck(&g("01"), 0).unwrap();
        assert!(rep.passed(), "{rep:#?}");
        let solvable = rep.solvable_patterns();
        assert_eq!(solvable.len(), 1);
        assert!(solvable[0].is_empty());
    }

    #[test]
    fn flip_pattern_forces_zero_corner() {
        let rep = support_pattern_crosscheck(&g("00"), 0).unwrap();
        let flip = rep
            .patterns
            .iter()
            .find(|p| p.pair.y() == [1, 2])
            .expect("pattern {1,2}");
        assert!(flip
            .violations
            .iter()
            .any(|v| v.relation == "x2 != 0" && v.detected));
    }

    #[test]
    fn too_large() {
        assert_eq!(
            support_pattern_crosscheck(&g("00000"), 0).unwrap_err(),
            Error::DimensionTooLarge { n: 5, max: 4 }
        );
    }
}
