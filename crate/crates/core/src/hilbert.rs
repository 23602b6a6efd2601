//! Hilbert symbols `(a, b)_v` over Q at every place, the product formula,
//! and the two-way group product behind Rousseau's proof.

use num_traits::{Signed, Zero};

use crate::arith::{self, is_prime, support, vp_decompose, Place, Rational};
use crate::characters::{half_minus_one, lambda8, legendre, z2_parity, Sign};
use crate::error::{Error, Result};

/// The value of one local symbol, with the unit `t_{a,b}` it was read from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LocalSymbolReport {
    pub place: Place,
    pub symbol: Sign,
    /// `None` at the real place.
    pub t_value: Option<Rational>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductReport {
    /// Real place first, then primes ascending. Places not listed contribute +1.
    pub entries: Vec<LocalSymbolReport>,
    pub product: Sign,
}

fn nonzero(a: &Rational, b: &Rational) -> Result<()> {
    if a.is_zero() || b.is_zero() {
        Err(Error::Zero)
    } else {
        Ok(())
    }
}

/// `(a, b)_∞`: -1 exactly when both arguments are negative.
pub fn real_symbol(a: &Rational, b: &Rational) -> Result<Sign> {
    nonzero(a, b)?;
    Ok(Sign::from_parity(a.is_negative() && b.is_negative()))
}

/// `t_{a,b} = (-1)^{v(a)v(b)} u_a^{v(b)} u_b^{-v(a)}`, a unit at `p`.
pub fn t_value(a: &Rational, b: &Rational, p: u64) -> Result<Rational> {
    nonzero(a, b)?;
    let (va, ua) = vp_decompose(a, p)?;
    let (vb, ub) = vp_decompose(b, p)?;
    Ok(t_from_parts(va, &ua, vb, &ub))
}

fn rational_pow(x: &Rational, e: i64) -> Rational {
    let e = i32::try_from(e).expect("valuation exponent fits in i32");
    x.pow(e)
}

fn t_from_parts(va: i64, ua: &Rational, vb: i64, ub: &Rational) -> Rational {
    let t = rational_pow(ua, vb) * rational_pow(ub, -va);
    if (va * vb) % 2 != 0 {
        -t
    } else {
        t
    }
}

/// `(a, b)_v` at any place of Q.
pub fn symbol_at(a: &Rational, b: &Rational, v: Place) -> Result<Sign> {
    Ok(local_report(a, b, v)?.symbol)
}

/// `(a, b)_v` together with the unit `t_{a,b}`.
pub fn local_report(a: &Rational, b: &Rational, v: Place) -> Result<LocalSymbolReport> {
    nonzero(a, b)?;
    let p = match v {
        Place::Infinity => {
            return Ok(LocalSymbolReport { place: v, symbol: real_symbol(a, b)?, t_value: None });
        }
        Place::Finite(p) => p,
    };
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let (va, ua) = vp_decompose(a, p)?;
    let (vb, ub) = vp_decompose(b, p)?;
    let t = t_from_parts(va, &ua, vb, &ub);
    let symbol = if p == 2 {
        let e = half_minus_one(&ua) * half_minus_one(&ub);
        Sign::from_parity(z2_parity(&e)?) * lambda8(&t)?
    } else {
        legendre(&t, p)?
    };
    Ok(LocalSymbolReport { place: v, symbol, t_value: Some(t) })
}

/// Evaluates every local symbol on the support of `(a, b)` and multiplies.
pub fn product_check(a: &Rational, b: &Rational) -> Result<ProductReport> {
    nonzero(a, b)?;
    let entries = support(a, b)?
        .into_iter()
        .map(|v| local_report(a, b, v))
        .collect::<Result<Vec<_>>>()?;
    let product = entries.iter().map(|e| e.symbol).product();
    Ok(ProductReport { entries, product })
}

/// Outcome of computing the product of `(F_p^× × F_q^×)/{±1}` two ways.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RousseauReport {
    /// `λ_p(q) λ_q(p)`, each factor read off the componentwise product of
    /// the representatives `1 <= x <= (pq-1)/2` prime to `pq`.
    pub lhs: Sign,
    /// `(-1)^{((p-1)/2)((q-1)/2)}`.
    pub rhs: Sign,
    /// `λ_p(q)` as extracted from the mod-p component.
    pub legendre_qp: Sign,
    /// `λ_q(p)` as extracted from the mod-q component.
    pub legendre_pq: Sign,
    /// The sign relating the two products in the quotient group.
    pub epsilon: Sign,
}

fn as_sign(x: u64, m: u64) -> Result<Sign> {
    match x {
        1 => Ok(Sign::Plus),
        _ if x == m - 1 => Ok(Sign::Minus),
        _ => Err(Error::Internal(format!("{x} is not ±1 mod {m}"))),
    }
}

/// Rousseau's computation for distinct odd primes `p`, `q`.
pub fn rousseau_check(p: u64, q: u64) -> Result<RousseauReport> {
    for n in [p, q] {
        if n == 2 {
            return Err(Error::EvenPrime);
        }
        if !is_prime(n) {
            return Err(Error::NotPrime(n.to_string()));
        }
    }
    if p == q {
        return Err(Error::Domain(format!("the primes must be distinct, got {p} twice")));
    }
    let (hp, hq) = ((p - 1) / 2, (q - 1) / 2);

    // First section: integers in [1, (pq-1)/2] prime to pq.
    let (mut a, mut b) = (1u64, 1u64);
    for x in 1..=(p * q - 1) / 2 {
        if x % p != 0 && x % q != 0 {
            a = arith::mul_mod(a, x % p, p);
            b = arith::mul_mod(b, x % q, q);
        }
    }

    // Second section: pairs (i, j) with 1 <= i < p and 1 <= j <= (q-1)/2.
    let (mut a2, mut b2) = (1u64, 1u64);
    for i in 1..p {
        for j in 1..=hq {
            a2 = arith::mul_mod(a2, i, p);
            b2 = arith::mul_mod(b2, j, q);
        }
    }

    let epsilon = if a == a2 && b == b2 {
        Sign::Plus
    } else if a == (p - a2) % p && b == (q - b2) % q {
        Sign::Minus
    } else {
        return Err(Error::Internal(format!(
            "products ({a}, {b}) and ({a2}, {b2}) differ by more than a sign"
        )));
    };

    // The first product equals ((-1)^{(q-1)/2} λ_p(q), (-1)^{(p-1)/2} λ_q(p)).
    let legendre_qp = as_sign(a, p)? * Sign::from_parity(hq % 2 == 1);
    let legendre_pq = as_sign(b, q)? * Sign::from_parity(hp % 2 == 1);

    // The second equals ((-1)^{(q-1)/2}, (-1)^{((p-1)/2)((q+1)/2)}).
    if as_sign(a2, p)? != Sign::from_parity(hq % 2 == 1)
        || as_sign(b2, q)? != Sign::from_parity((hp * (hq + 1)) % 2 == 1)
    {
        return Err(Error::Internal("closed form of the second product failed".into()));
    }

    Ok(RousseauReport {
        lhs: legendre_qp * legendre_pq,
        rhs: Sign::from_parity((hp * hq) % 2 == 1),
        legendre_qp,
        legendre_pq,
        epsilon,
    })
}
