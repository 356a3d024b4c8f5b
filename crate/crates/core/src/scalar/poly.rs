//! Sparse multivariate polynomials with integer coefficients.
//!
//! Terms are stored strictly descending in the graded-lexicographic order
//! (total degree first, then lexicographic on the exponent vector, the first
//! indeterminate being the most significant). No zero coefficients are stored.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use smallvec::SmallVec;

pub(crate) type Exps = SmallVec<[u16; 12]>;

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: Exps,
}

impl Monomial {
    pub fn one(arity: usize) -> Monomial {
        Monomial {
            degree: 0,
            exps: SmallVec::from_elem(0, arity),
        }
    }

    pub fn from_exponents(exps: &[u16]) -> Monomial {
        Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            exps: SmallVec::from_slice(exps),
        }
    }

    pub fn variable(index: usize, arity: usize) -> Monomial {
        let mut m = Monomial::one(arity);
        m.exps[index] = 1;
        m.degree = 1;
        m
    }

    pub fn exponents(&self) -> &[u16] {
        &self.exps
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a + b)
            .collect();
        Monomial {
            degree: self.degree + other.degree,
            exps,
        }
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` if `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        let exps: Exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| a - b)
            .collect();
        Some(Monomial {
            degree: self.degree - other.degree,
            exps,
        })
    }

    pub fn gcd(&self, other: &Monomial) -> Monomial {
        let exps: Exps = self
            .exps
            .iter()
            .zip(other.exps.iter())
            .map(|(a, b)| *a.min(b))
            .collect();
        Monomial {
            degree: exps.iter().map(|&e| e as u32).sum(),
            exps,
        }
    }

    fn with_exponent(&self, var: usize, e: u16) -> Monomial {
        let mut exps = self.exps.clone();
        let old = exps[var];
        exps[var] = e;
        Monomial {
            degree: self.degree - old as u32 + e as u32,
            exps,
        }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree
            .cmp(&other.degree)
            .then_with(|| self.exps.cmp(&other.exps))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Poly {
    arity: usize,
    terms: Vec<(Monomial, BigInt)>,
}

impl Poly {
    pub fn zero(arity: usize) -> Poly {
        Poly {
            arity,
            terms: Vec::new(),
        }
    }

    pub fn one(arity: usize) -> Poly {
        Poly::constant(BigInt::one(), arity)
    }

    pub fn constant(c: BigInt, arity: usize) -> Poly {
        if c.is_zero() {
            return Poly::zero(arity);
        }
        Poly {
            arity,
            terms: vec![(Monomial::one(arity), c)],
        }
    }

    pub fn variable(index: usize, arity: usize) -> Poly {
        Poly {
            arity,
            terms: vec![(Monomial::variable(index, arity), BigInt::one())],
        }
    }

    pub fn term(m: Monomial, c: BigInt) -> Poly {
        let arity = m.exps.len();
        if c.is_zero() {
            return Poly::zero(arity);
        }
        Poly {
            arity,
            terms: vec![(m, c)],
        }
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms<I>(arity: usize, terms: I) -> Poly
    where
        I: IntoIterator<Item = (Monomial, BigInt)>,
    {
        let mut v: Vec<(Monomial, BigInt)> = terms.into_iter().collect();
        v.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        let mut out: Vec<(Monomial, BigInt)> = Vec::with_capacity(v.len());
        for (m, c) in v {
            match out.last_mut() {
                Some((lm, lc)) if *lm == m => *lc += c,
                _ => {
                    if let Some((_, lc)) = out.last() {
                        if lc.is_zero() {
                            out.pop();
                        }
                    }
                    out.push((m, c));
                }
            }
        }
        if let Some((_, lc)) = out.last() {
            if lc.is_zero() {
                out.pop();
            }
        }
        Poly { arity, terms: out }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[(Monomial, BigInt)] {
        &self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn as_constant(&self) -> Option<BigInt> {
        if self.terms.is_empty() {
            Some(BigInt::zero())
        } else if self.is_constant() {
            Some(self.terms[0].1.clone())
        } else {
            None
        }
    }

    pub fn leading_coefficient(&self) -> Option<&BigInt> {
        self.terms.first().map(|t| &t.1)
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.first().map(|t| &t.0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |t| t.0.degree)
    }

    /// Bit `i` is set when indeterminate `i` occurs.
    pub fn var_mask(&self) -> u64 {
        let mut mask = 0u64;
        for (m, _) in &self.terms {
            for (i, &e) in m.exps.iter().enumerate() {
                if e > 0 {
                    mask |= 1 << i;
                }
            }
        }
        mask
    }

    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms
            .iter()
            .map(|(m, _)| m.exps[var])
            .max()
            .unwrap_or(0)
    }

    pub fn neg(&self) -> Poly {
        Poly {
            arity: self.arity,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        self.merge(other, false)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.merge(other, true)
    }

    fn merge(&self, other: &Poly, negate: bool) -> Poly {
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { -&b[j].1 } else { b[j].1.clone() };
                    out.push((b[j].0.clone(), c));
                    j += 1;
                }
                Ordering::Equal => {
                    let c = if negate {
                        &a[i].1 - &b[j].1
                    } else {
                        &a[i].1 + &b[j].1
                    };
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        for (m, c) in &b[j..] {
            out.push((m.clone(), if negate { -c } else { c.clone() }));
        }
        Poly {
            arity: self.arity.max(other.arity),
            terms: out,
        }
    }

    pub fn mul_term(&self, m: &Monomial, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(tm, tc)| (tm.mul(m), tc * c))
                .collect(),
        }
    }

    pub fn scale(&self, c: &BigInt) -> Poly {
        if c.is_zero() {
            return Poly::zero(self.arity);
        }
        Poly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, tc)| (m.clone(), tc * c))
                .collect(),
        }
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.arity);
        }
        if other.terms.len() == 1 {
            return self.mul_term(&other.terms[0].0, &other.terms[0].1);
        }
        if self.terms.len() == 1 {
            return other.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, BigInt> =
            HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.mul(mb);
                let c = ca * cb;
                match acc.get_mut(&m) {
                    Some(v) => *v += c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        let mut terms: Vec<(Monomial, BigInt)> =
            acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly {
            arity: self.arity,
            terms,
        }
    }

    pub fn pow(&self, mut e: u32) -> Poly {
        let mut base = self.clone();
        let mut acc = Poly::one(self.arity);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Non-negative gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        let mut g = BigInt::zero();
        for (_, c) in &self.terms {
            g = g.gcd(c);
            if g.is_one() {
                break;
            }
        }
        g
    }

    /// Exact division of every coefficient by `c`.
    pub fn div_scalar(&self, c: &BigInt) -> Poly {
        if c.is_one() {
            return self.clone();
        }
        Poly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(m, tc)| (m.clone(), tc / c))
                .collect(),
        }
    }

    /// Greatest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        let first = match it.next() {
            Some((m, _)) => m.clone(),
            None => return Monomial::one(self.arity),
        };
        it.fold(first, |acc, (m, _)| acc.gcd(m))
    }

    pub fn div_monomial(&self, m: &Monomial) -> Poly {
        if m.is_one() {
            return self.clone();
        }
        Poly {
            arity: self.arity,
            terms: self
                .terms
                .iter()
                .map(|(tm, c)| (tm.div(m).expect("monomial divides every term"), c.clone()))
                .collect(),
        }
    }

    /// Exact quotient `self / divisor` in Z[X], or `None` if the division
    /// leaves a remainder.
    pub fn div_exact(&self, divisor: &Poly) -> Option<Poly> {
        if divisor.is_zero() {
            return None;
        }
        if self.is_zero() {
            return Some(Poly::zero(self.arity));
        }
        let (dm, dc) = &divisor.terms[0];
        if divisor.terms.len() == 1 {
            let mut terms = Vec::with_capacity(self.terms.len());
            for (m, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return None;
                }
                terms.push((m.div(dm)?, q));
            }
            return Some(Poly {
                arity: self.arity,
                terms,
            });
        }
        if self.total_degree() < divisor.total_degree() || self.terms.len() < divisor.terms.len() {
            return None;
        }
        let tail = Poly {
            arity: divisor.arity,
            terms: divisor.terms[1..].to_vec(),
        };
        let mut quotient = Vec::new();
        let mut rem = self.clone();
        while let Some((rm, rc)) = rem.terms.first() {
            let m = rm.div(dm)?;
            let (c, r) = rc.div_rem(dc);
            if !r.is_zero() {
                return None;
            }
            // leading terms cancel exactly; subtract the rest of the divisor
            let mut rest = rem.clone();
            rest.terms.remove(0);
            rem = rest.sub(&tail.mul_term(&m, &c));
            quotient.push((m, c));
        }
        Some(Poly {
            arity: self.arity,
            terms: quotient,
        })
    }

    /// Coefficients with respect to `var`: entry `k` multiplies `var^k`.
    pub fn coefficients_in(&self, var: usize) -> Vec<Poly> {
        let deg = self.degree_in(var) as usize;
        let mut buckets: Vec<Vec<(Monomial, BigInt)>> = vec![Vec::new(); deg + 1];
        for (m, c) in &self.terms {
            let k = m.exps[var] as usize;
            buckets[k].push((m.with_exponent(var, 0), c.clone()));
        }
        buckets
            .into_iter()
            .map(|terms| Poly::from_sorted_subsequence(self.arity, terms))
            .collect()
    }

    // Dropping one exponent from a descending list can reorder terms, so re-sort.
    fn from_sorted_subsequence(arity: usize, mut terms: Vec<(Monomial, BigInt)>) -> Poly {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { arity, terms }
    }

    pub fn from_coefficients_in(var: usize, arity: usize, coeffs: &[Poly]) -> Poly {
        let mut terms = Vec::new();
        for (k, p) in coeffs.iter().enumerate() {
            for (m, c) in &p.terms {
                terms.push((m.with_exponent(var, k as u16), c.clone()));
            }
        }
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Poly { arity, terms }
    }

    /// Re-express over a larger ring; `map[i]` is the new index of variable `i`.
    pub fn embed(&self, map: &[usize], new_arity: usize) -> Poly {
        Poly::from_terms(
            new_arity,
            self.terms.iter().map(|(m, c)| {
                let mut exps: Exps = SmallVec::from_elem(0, new_arity);
                for (i, &e) in m.exps.iter().enumerate() {
                    exps[map[i]] = e;
                }
                (
                    Monomial {
                        degree: m.degree,
                        exps,
                    },
                    c.clone(),
                )
            }),
        )
    }

    /// Evaluates at a point; `None` entries are unassigned indeterminates and
    /// the index of the first one that is actually needed is reported.
    pub fn eval(&self, point: &[Option<BigRational>]) -> Result<BigRational, usize> {
        let mut acc = BigRational::zero();
        for (m, c) in &self.terms {
            let mut t = BigRational::from_integer(c.clone());
            for (i, &e) in m.exps.iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let v = point[i].as_ref().ok_or(i)?;
                t *= num_traits::pow(v.clone(), e as usize);
            }
            acc += t;
        }
        Ok(acc)
    }

    /// `self` with positive leading coefficient, and the sign that was applied.
    pub fn normalize_sign(self) -> (Poly, bool) {
        match self.terms.first() {
            Some((_, c)) if c.is_negative() => (self.neg(), true),
            _ => (self, false),
        }
    }

    /// Exact square root with positive leading coefficient, if one exists.
    pub fn sqrt(&self) -> Option<Poly> {
        if self.is_zero() {
            return Some(self.clone());
        }
        let (lm, lc) = &self.terms[0];
        if lc.is_negative() {
            return None;
        }
        let root_c = lc.sqrt();
        if &(&root_c * &root_c) != lc || lm.exps.iter().any(|e| e % 2 == 1) {
            return None;
        }
        let half: Exps = lm.exps.iter().map(|e| e / 2).collect();
        let lead = (
            Monomial {
                degree: lm.degree / 2,
                exps: half,
            },
            root_c,
        );
        let two_lead_c = &lead.1 * 2;
        let mut root = Poly::term(lead.0.clone(), lead.1.clone());
        let mut rem = self.sub(&root.mul(&root));
        while let Some((rm, rc)) = rem.terms.first() {
            let m = rm.div(&lead.0)?;
            let (c, r) = rc.div_rem(&two_lead_c);
            if !r.is_zero() {
                return None;
            }
            root = root.add(&Poly::term(m, c));
            rem = self.sub(&root.mul(&root));
        }
        Some(root)
    }
}
