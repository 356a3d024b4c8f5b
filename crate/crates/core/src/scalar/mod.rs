//! Exact arithmetic in Q(t1, ..., tk).
//!
//! A [`Scalar`] is a reduced fraction of integer-coefficient polynomials over
//! a [`Ring`] of named indeterminates. The normal form is unique: numerator
//! and denominator are coprime in Z[X], their joint integer content is 1 and
//! the leading coefficient of the denominator is positive. Equality is
//! equality of normal forms.
//!
//! Scalars over different rings may be combined; the result lives over the
//! union of both rings.

mod format;
pub mod gcd;
pub mod poly;
mod ring;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub use ring::Ring;

use crate::error::{Error, Result};
use gcd::gcd;
use poly::{Monomial, Poly};

/// An assignment of rational values to indeterminates, keyed by name.
pub type Point = BTreeMap<String, BigRational>;

#[derive(Clone)]
pub struct Scalar {
    ring: Ring,
    num: Poly,
    den: Poly,
}

impl Scalar {
    pub fn zero(ring: &Ring) -> Scalar {
        Scalar {
            ring: ring.clone(),
            num: Poly::zero(ring.arity()),
            den: Poly::one(ring.arity()),
        }
    }

    pub fn one(ring: &Ring) -> Scalar {
        Scalar::from_int(ring, 1)
    }

    pub fn from_int(ring: &Ring, v: i64) -> Scalar {
        Scalar::from_bigint(ring, BigInt::from(v))
    }

    pub fn from_bigint(ring: &Ring, v: BigInt) -> Scalar {
        Scalar {
            ring: ring.clone(),
            num: Poly::constant(v, ring.arity()),
            den: Poly::one(ring.arity()),
        }
    }

    pub fn from_rational(ring: &Ring, v: &BigRational) -> Scalar {
        Scalar {
            ring: ring.clone(),
            num: Poly::constant(v.numer().clone(), ring.arity()),
            den: Poly::constant(v.denom().clone(), ring.arity()),
        }
    }

    /// The indeterminate `name`, which must belong to `ring`.
    pub fn var(ring: &Ring, name: &str) -> Result<Scalar> {
        let idx = ring
            .index_of(name)
            .ok_or_else(|| Error::UnknownIndeterminate(name.to_string()))?;
        Ok(Scalar {
            ring: ring.clone(),
            num: Poly::variable(idx, ring.arity()),
            den: Poly::one(ring.arity()),
        })
    }

    /// Builds `num / den` and brings it to normal form.
    pub fn from_polys(ring: &Ring, num: Poly, den: Poly) -> Result<Scalar> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::normalized(ring.clone(), num, den))
    }

    fn normalized(ring: Ring, num: Poly, den: Poly) -> Scalar {
        let arity = ring.arity();
        if num.is_zero() {
            return Scalar {
                ring,
                num: Poly::zero(arity),
                den: Poly::one(arity),
            };
        }
        let g = gcd(&num, &den);
        let (num, den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.div_exact(&g).expect("gcd divides numerator"),
                den.div_exact(&g).expect("gcd divides denominator"),
            )
        };
        Scalar::sign_normalized(ring, num, den)
    }

    // Caller guarantees num/den coprime in Z[X]; fixes the sign and any
    // residual integer content.
    fn sign_normalized(ring: Ring, num: Poly, den: Poly) -> Scalar {
        let c = num.content().gcd(&den.content());
        let negative = den.leading_coefficient().is_some_and(|c| c.is_negative());
        let c = if negative { -c } else { c };
        let (num, den) = if c.is_one() {
            (num, den)
        } else {
            (num.div_scalar(&c), den.div_scalar(&c))
        };
        Scalar { ring, num, den }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn numerator(&self) -> &Poly {
        &self.num
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The rational value if the scalar involves no indeterminate.
    pub fn as_rational(&self) -> Option<BigRational> {
        let n = self.num.as_constant()?;
        let d = self.den.as_constant()?;
        Some(BigRational::new(n, d))
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    /// Names of the indeterminates that actually occur.
    pub fn variables(&self) -> BTreeSet<String> {
        let mask = self.num.var_mask() | self.den.var_mask();
        self.ring
            .names()
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, n)| n.clone())
            .collect()
    }

    /// Re-expresses the scalar over `target`, which must contain every
    /// indeterminate of our ring.
    pub fn to_ring(&self, target: &Ring) -> Result<Scalar> {
        if &self.ring == target {
            return Ok(self.clone());
        }
        let map = self.ring.embedding_into(target)?;
        Ok(Scalar {
            ring: target.clone(),
            num: self.num.embed(&map, target.arity()),
            den: self.den.embed(&map, target.arity()),
        })
    }

    fn aligned<'a>(
        a: &'a Scalar,
        b: &'a Scalar,
    ) -> (std::borrow::Cow<'a, Scalar>, std::borrow::Cow<'a, Scalar>) {
        use std::borrow::Cow;
        if a.ring == b.ring {
            return (Cow::Borrowed(a), Cow::Borrowed(b));
        }
        let u = a.ring.union(&b.ring);
        (
            Cow::Owned(a.to_ring(&u).expect("union contains ring")),
            Cow::Owned(b.to_ring(&u).expect("union contains ring")),
        )
    }

    fn add_impl(&self, other: &Scalar) -> Scalar {
        if other.is_zero() {
            return self.clone();
        }
        if self.is_zero() {
            return other.clone();
        }
        let (a, b) = Scalar::aligned(self, other);
        let ring = a.ring.clone();
        if let (Some(x), Some(y)) = (a.as_rational(), b.as_rational()) {
            return Scalar::from_rational(&ring, &(x + y));
        }
        if a.den == b.den {
            let num = a.num.add(&b.num);
            return Scalar::normalized(ring, num, a.den.clone());
        }
        // Henrici: with g = gcd(b1, b2), only g can share factors with the new numerator.
        let g = gcd(&a.den, &b.den);
        if g.is_one() {
            let num = a.num.mul(&b.den).add(&b.num.mul(&a.den));
            let den = a.den.mul(&b.den);
            return Scalar::sign_normalized(ring, num, den);
        }
        let ad = a.den.div_exact(&g).expect("gcd divides");
        let bd = b.den.div_exact(&g).expect("gcd divides");
        let num = a.num.mul(&bd).add(&b.num.mul(&ad));
        if num.is_zero() {
            return Scalar::zero(&ring);
        }
        let den = ad.mul(&b.den);
        let g2 = gcd(&num, &g);
        if g2.is_one() {
            Scalar::sign_normalized(ring, num, den)
        } else {
            Scalar::sign_normalized(
                ring,
                num.div_exact(&g2).expect("gcd divides"),
                den.div_exact(&g2).expect("gcd divides"),
            )
        }
    }

    fn mul_impl(&self, other: &Scalar) -> Scalar {
        let (a, b) = Scalar::aligned(self, other);
        let ring = a.ring.clone();
        if a.is_zero() || b.is_zero() {
            return Scalar::zero(&ring);
        }
        if let (Some(x), Some(y)) = (a.as_rational(), b.as_rational()) {
            return Scalar::from_rational(&ring, &(x * y));
        }
        let g1 = gcd(&a.num, &b.den);
        let g2 = gcd(&b.num, &a.den);
        let div = |p: &Poly, g: &Poly| {
            if g.is_one() {
                p.clone()
            } else {
                p.div_exact(g).expect("gcd divides")
            }
        };
        let num = div(&a.num, &g1).mul(&div(&b.num, &g2));
        let den = div(&a.den, &g2).mul(&div(&b.den, &g1));
        Scalar::sign_normalized(ring, num, den)
    }

    pub fn inv(&self) -> Result<Scalar> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Scalar::sign_normalized(
            self.ring.clone(),
            self.den.clone(),
            self.num.clone(),
        ))
    }

    pub fn div(&self, other: &Scalar) -> Result<Scalar> {
        Ok(self * &other.inv()?)
    }

    pub fn pow(&self, e: i32) -> Result<Scalar> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = e.unsigned_abs();
        Ok(Scalar {
            ring: base.ring.clone(),
            num: base.num.pow(e),
            den: base.den.pow(e),
        })
    }

    pub fn scale_int(&self, c: i64) -> Scalar {
        self * &Scalar::from_int(&self.ring, c)
    }

    /// Exact value at a point given by name.
    pub fn eval(&self, point: &Point) -> Result<BigRational> {
        let values: Vec<Option<BigRational>> = self
            .ring
            .names()
            .iter()
            .map(|n| point.get(n).cloned())
            .collect();
        let missing = |i: usize| Error::MissingAssignment(self.ring.names()[i].clone());
        let den = self.den.eval(&values).map_err(missing)?;
        if den.is_zero() {
            return Err(Error::PoleAtPoint);
        }
        let num = self.num.eval(&values).map_err(missing)?;
        Ok(num / den)
    }

    /// Evaluates the indeterminates assigned in `point` and keeps the others.
    pub fn eval_partial(&self, point: &Point) -> Result<Scalar> {
        let mut acc = self.clone();
        for name in self.variables() {
            if let Some(v) = point.get(&name) {
                acc = acc.substitute(&name, &Scalar::from_rational(&self.ring, v))?;
            }
        }
        Ok(acc)
    }

    /// Replaces the indeterminate `name` by `value`.
    pub fn substitute(&self, name: &str, value: &Scalar) -> Result<Scalar> {
        let Some(idx) = self.ring.index_of(name) else {
            return Ok(self.clone());
        };
        if (self.num.var_mask() | self.den.var_mask()) & (1 << idx) == 0 {
            return Ok(self.clone());
        }
        let ring = self.ring.union(&value.ring);
        let num = subst_poly(&self.num, &self.ring, idx, value, &ring)?;
        let den = subst_poly(&self.den, &self.ring, idx, value, &ring)?;
        num.div(&den).map_err(|_| Error::PoleAtPoint)
    }

    /// Square root in Q(X), when the scalar is a perfect square.
    pub fn sqrt(&self) -> Option<Scalar> {
        let n = self.num.sqrt()?;
        let d = self.den.sqrt()?;
        Some(Scalar::sign_normalized(self.ring.clone(), n, d))
    }

    /// Canonical string form `(<numerator>)/(<denominator>)`.
    pub fn to_canonical_string(&self) -> String {
        format!(
            "({})/({})",
            format::poly_to_string(&self.num, &self.ring),
            format::poly_to_string(&self.den, &self.ring)
        )
    }

    /// Parses the canonical form, a bare polynomial, or `<poly>/<poly>`,
    /// using the indeterminates of `ring`.
    pub fn parse(s: &str, ring: &Ring) -> Result<Scalar> {
        format::parse_scalar(s, ring)
    }

    /// Parses with a ring made of exactly the names that occur in `s`.
    pub fn parse_infer(s: &str) -> Result<Scalar> {
        let ring = Ring::new(format::identifiers(s)?)?;
        format::parse_scalar(s, &ring)
    }
}

fn subst_poly(p: &Poly, ring: &Ring, idx: usize, value: &Scalar, target: &Ring) -> Result<Scalar> {
    let coeffs = p.coefficients_in(idx);
    // Horner in the substituted value.
    let mut acc = Scalar::zero(target);
    for c in coeffs.iter().rev() {
        acc =
            &(&acc * value) + &Scalar::normalized(ring.clone(), c.clone(), Poly::one(ring.arity()));
    }
    Ok(acc)
}

impl PartialEq for Scalar {
    fn eq(&self, other: &Self) -> bool {
        if self.ring == other.ring {
            return self.num == other.num && self.den == other.den;
        }
        let (a, b) = Scalar::aligned(self, other);
        a.num == b.num && a.den == b.den
    }
}

impl Eq for Scalar {}

impl fmt::Display for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl fmt::Debug for Scalar {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_canonical_string())
    }
}

impl<'a> Add<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn add(self, rhs: &'a Scalar) -> Scalar {
        self.add_impl(rhs)
    }
}

impl<'a> Sub<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn sub(self, rhs: &'a Scalar) -> Scalar {
        self.add_impl(&-rhs)
    }
}

impl<'a> Mul<&'a Scalar> for &'a Scalar {
    type Output = Scalar;
    fn mul(self, rhs: &'a Scalar) -> Scalar {
        self.mul_impl(rhs)
    }
}

impl Neg for &Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        Scalar {
            ring: self.ring.clone(),
            num: self.num.neg(),
            den: self.den.clone(),
        }
    }
}

impl Add for Scalar {
    type Output = Scalar;
    fn add(self, rhs: Scalar) -> Scalar {
        self.add_impl(&rhs)
    }
}

impl Sub for Scalar {
    type Output = Scalar;
    fn sub(self, rhs: Scalar) -> Scalar {
        self.add_impl(&-&rhs)
    }
}

impl Mul for Scalar {
    type Output = Scalar;
    fn mul(self, rhs: Scalar) -> Scalar {
        self.mul_impl(&rhs)
    }
}

impl Neg for Scalar {
    type Output = Scalar;
    fn neg(self) -> Scalar {
        -&self
    }
}

impl std::hash::Hash for Scalar {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.to_canonical_string().hash(state);
    }
}

/// Sums many scalars, pairing them up to keep intermediate fractions small.
pub fn sum<I>(ring: &Ring, items: I) -> Scalar
where
    I: IntoIterator<Item = Scalar>,
{
    let mut v: Vec<Scalar> = items.into_iter().filter(|s| !s.is_zero()).collect();
    if v.is_empty() {
        return Scalar::zero(ring);
    }
    while v.len() > 1 {
        let mut next = Vec::with_capacity(v.len().div_ceil(2));
        let mut it = v.into_iter();
        while let Some(a) = it.next() {
            match it.next() {
                Some(b) => next.push(&a + &b),
                None => next.push(a),
            }
        }
        v = next;
    }
    v.pop().expect("non-empty")
}

/// The monomial `name^e` as a polynomial, used by callers that build
/// polynomial systems directly.
pub fn monomial_poly(ring: &Ring, name: &str, e: u16) -> Result<Poly> {
    let idx = ring
        .index_of(name)
        .ok_or_else(|| Error::UnknownIndeterminate(name.to_string()))?;
    let mut exps = vec![0u16; ring.arity()];
    exps[idx] = e;
    Ok(Poly::term(Monomial::from_exponents(&exps), BigInt::one()))
}
