//! Multivariate gcd over Z[X].
//!
//! Cheap structural reductions come first (integer content, monomial content,
//! variables occurring in only one argument, trial division). What remains is
//! handled by a recursive subresultant polynomial remainder sequence in one
//! main variable with coefficients in Z[other variables].

use num_integer::Integer;

use super::poly::Poly;

/// Greatest common divisor in Z[X], normalized to a positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &Poly, b: &Poly) -> Poly {
    let arity = a.arity().max(b.arity());
    if a.is_zero() {
        return b.clone().normalize_sign().0;
    }
    if b.is_zero() {
        return a.clone().normalize_sign().0;
    }
    let ca = a.content();
    let cb = b.content();
    let c = ca.gcd(&cb);
    if a.is_constant() || b.is_constant() {
        return Poly::constant(c, arity);
    }
    let ma = a.monomial_content();
    let mb = b.monomial_content();
    let m = ma.gcd(&mb);
    let pa = a.div_monomial(&ma).div_scalar(&ca);
    let pb = b.div_monomial(&mb).div_scalar(&cb);
    let g = gcd_primitive(&pa, &pb);
    g.mul_term(&m, &c)
}

/// Gcd of several polynomials.
pub fn gcd_all<'a, I>(arity: usize, polys: I) -> Poly
where
    I: IntoIterator<Item = &'a Poly>,
{
    let mut g = Poly::zero(arity);
    for p in polys {
        g = gcd(&g, p);
        if g.is_one() {
            break;
        }
    }
    g
}

// Both arguments have integer content 1 and no monomial factor.
fn gcd_primitive(a: &Poly, b: &Poly) -> Poly {
    let arity = a.arity();
    if a.is_constant() || b.is_constant() {
        return Poly::one(arity);
    }
    let (a, _) = a.clone().normalize_sign();
    let (b, _) = b.clone().normalize_sign();
    if a == b {
        return a;
    }
    let va = a.var_mask();
    let vb = b.var_mask();
    let common = va & vb;
    if common == 0 {
        return Poly::one(arity);
    }
    // A common factor cannot involve a variable that only one side uses,
    // so it must divide every coefficient with respect to that variable.
    if let Some(v) = lowest_bit(va & !common) {
        return gcd_against_coefficients(&b, &a, v);
    }
    if let Some(v) = lowest_bit(vb & !common) {
        return gcd_against_coefficients(&a, &b, v);
    }
    let (small, large) = if a.len() <= b.len() {
        (&a, &b)
    } else {
        (&b, &a)
    };
    if large.div_exact(small).is_some() {
        return small.clone();
    }
    let main = (0..arity)
        .filter(|v| common & (1 << v) != 0)
        .min_by_key(|&v| (a.degree_in(v).max(b.degree_in(v)), v))
        .expect("common variable exists");
    gcd_in_variable(&a, &b, main)
}

fn lowest_bit(mask: u64) -> Option<usize> {
    if mask == 0 {
        None
    } else {
        Some(mask.trailing_zeros() as usize)
    }
}

fn gcd_against_coefficients(other: &Poly, with_var: &Poly, var: usize) -> Poly {
    let mut coeffs: Vec<Poly> = with_var
        .coefficients_in(var)
        .into_iter()
        .filter(|c| !c.is_zero())
        .collect();
    coeffs.sort_by_key(|c| c.len());
    let mut g = other.clone();
    for c in &coeffs {
        g = gcd(&g, c);
        if g.is_constant() {
            return Poly::one(g.arity());
        }
    }
    g.normalize_sign().0
}

type Univariate = Vec<Poly>;

fn trim(u: &mut Univariate) {
    while u.len() > 1 && u.last().is_some_and(|c| c.is_zero()) {
        u.pop();
    }
}

fn is_zero_u(u: &Univariate) -> bool {
    u.iter().all(|c| c.is_zero())
}

fn degree_u(u: &Univariate) -> usize {
    u.len() - 1
}

fn content_u(u: &Univariate, arity: usize) -> Poly {
    let mut parts: Vec<&Poly> = u.iter().filter(|c| !c.is_zero()).collect();
    parts.sort_by_key(|c| c.len());
    gcd_all(arity, parts)
}

fn div_u(u: &Univariate, d: &Poly) -> Univariate {
    if d.is_one() {
        return u.clone();
    }
    u.iter()
        .map(|c| c.div_exact(d).expect("exact coefficient division"))
        .collect()
}

fn gcd_in_variable(a: &Poly, b: &Poly, var: usize) -> Poly {
    let arity = a.arity();
    let mut ua = a.coefficients_in(var);
    let mut ub = b.coefficients_in(var);
    trim(&mut ua);
    trim(&mut ub);
    let ca = content_u(&ua, arity);
    let cb = content_u(&ub, arity);
    let content = gcd(&ca, &cb);
    let pa = div_u(&ua, &ca);
    let pb = div_u(&ub, &cb);
    let g = subresultant(pa, pb, arity);
    let result = if degree_u(&g) == 0 {
        content
    } else {
        let cg = content_u(&g, arity);
        let pg = div_u(&g, &cg);
        Poly::from_coefficients_in(var, arity, &pg).mul(&content)
    };
    result.normalize_sign().0
}

// Pseudo-remainder: lc(b)^(deg a - deg b + 1) * a mod b.
fn pseudo_remainder(a: &Univariate, b: &Univariate) -> Univariate {
    let db = degree_u(b);
    let lb = b[db].clone();
    let mut r = a.clone();
    let mut steps = degree_u(a) + 1 - db;
    while !is_zero_u(&r) && degree_u(&r) >= db {
        let dr = degree_u(&r);
        let lr = r[dr].clone();
        let shift = dr - db;
        let mut next: Univariate = r.iter().map(|c| c.mul(&lb)).collect();
        for (k, bc) in b.iter().enumerate() {
            next[k + shift] = next[k + shift].sub(&bc.mul(&lr));
        }
        next.pop();
        if next.is_empty() {
            next.push(Poly::zero(lb.arity()));
        }
        trim(&mut next);
        r = next;
        steps -= 1;
    }
    if steps > 0 {
        let f = lb.pow(steps as u32);
        r = r.iter().map(|c| c.mul(&f)).collect();
    }
    r
}

// Subresultant PRS; returns a polynomial associated to the gcd of two
// primitive univariate polynomials.
fn subresultant(mut a: Univariate, mut b: Univariate, arity: usize) -> Univariate {
    if degree_u(&a) < degree_u(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = Poly::one(arity);
    let mut h = Poly::one(arity);
    loop {
        let delta = degree_u(&a) - degree_u(&b);
        let r = pseudo_remainder(&a, &b);
        if is_zero_u(&r) {
            return b;
        }
        if degree_u(&r) == 0 {
            return vec![Poly::one(arity)];
        }
        let divisor = g.mul(&h.pow(delta as u32));
        a = b;
        b = div_u(&r, &divisor);
        g = a[degree_u(&a)].clone();
        h = match delta {
            0 => h,
            1 => g.clone(),
            d => g
                .pow(d as u32)
                .div_exact(&h.pow(d as u32 - 1))
                .expect("subresultant h update is exact"),
        };
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    fn var(i: usize, n: usize) -> Poly {
        Poly::variable(i, n)
    }

    fn c(v: i64, n: usize) -> Poly {
        Poly::constant(BigInt::from(v), n)
    }

    #[test]
    fn coprime_and_trivial_cases() {
        let x = var(0, 2);
        let y = var(1, 2);
        assert!(gcd(&x.add(&c(1, 2)), &y.add(&c(1, 2))).is_one());
        assert_eq!(
            gcd(&x.scale(&BigInt::from(6)), &x.scale(&BigInt::from(4))),
            x.scale(&BigInt::from(2))
        );
        assert_eq!(gcd(&Poly::zero(2), &x.neg()), x);
    }

    #[test]
    fn recovers_planted_common_factor() {
        let n = 3;
        let (x, y, z) = (var(0, n), var(1, n), var(2, n));
        let common = x.mul(&y).sub(&z.mul(&z)).add(&c(3, n));
        let f = common.mul(&x.add(&y).add(&c(2, n)));
        let g = common.mul(&y.sub(&z).mul(&x)).scale(&BigInt::from(-5));
        assert_eq!(gcd(&f, &g), common);
    }

    #[test]
    fn factor_only_in_shared_variables() {
        let n = 3;
        let (x, y, z) = (var(0, n), var(1, n), var(2, n));
        let common = x.add(&y);
        let f = common.mul(&z.add(&c(1, n)));
        let g = common.mul(&x.sub(&c(2, n)));
        assert_eq!(gcd(&f, &g), common);
    }

    #[test]
    fn high_degree_univariate() {
        let x = var(0, 1);
        let one = c(1, 1);
        // (x^2 - 1)^3 and (x - 1)^2 (x + 2)
        let a = x.mul(&x).sub(&one).pow(3);
        let b = x.sub(&one).pow(2).mul(&x.add(&c(2, 1)));
        assert_eq!(gcd(&a, &b), x.sub(&one).pow(2));
    }
}
