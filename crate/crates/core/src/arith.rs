//! Exact integer and rational arithmetic: primality, factorization and the
//! decomposition `x = p^v * u` with `u` a unit at `p`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::characters::Sign;
use crate::error::{Error, Result};

/// Elements of Q, always kept reduced with a positive denominator.
pub type Rational = num_rational::BigRational;

/// Largest magnitude accepted by [`factor`].
pub const FACTOR_LIMIT: u64 = 1 << 63;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `n`, `-n` or `n/d`.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Domain(format!("cannot parse {s:?} as a rational number"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n = BigInt::from_str(n).map_err(|_| bad())?;
    let d = BigInt::from_str(d).map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Domain(format!("{s:?} has a zero denominator")));
    }
    Ok(Rational::new(n, d))
}

/// A place of Q: the archimedean one or a prime.
///
/// The derived order puts the real place first and then primes ascending.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Place {
    Infinity,
    Finite(u64),
}

impl Place {
    pub fn finite(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Place::Finite(p))
        } else {
            Err(Error::NotPrime(p.to_string()))
        }
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Infinity => f.write_str("inf"),
            Place::Finite(p) => write!(f, "{p}"),
        }
    }
}

impl FromStr for Place {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "infinity" | "oo" | "∞" => Ok(Place::Infinity),
            other => {
                let p: u64 = other
                    .parse()
                    .map_err(|_| Error::Domain(format!("cannot parse {other:?} as a place")))?;
                Place::finite(p)
            }
        }
    }
}

/// Signed prime factorization of a nonzero rational. Denominator primes
/// carry negative exponents.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factorization {
    pub sign: Sign,
    pub exponents: BTreeMap<u64, i64>,
}

impl Factorization {
    /// Multiplies the factorization back out.
    pub fn value(&self) -> Rational {
        let mut num = BigInt::one();
        let mut den = BigInt::one();
        for (&p, &e) in &self.exponents {
            let pe = num_traits::pow(BigInt::from(p), e.unsigned_abs() as usize);
            if e > 0 {
                num *= pe;
            } else {
                den *= pe;
            }
        }
        if self.sign == Sign::Minus {
            num = -num;
        }
        Rational::new(num, den)
    }
}

pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of `a` modulo `m`, if it exists.
pub fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let g = (a as i128).extended_gcd(&(m as i128));
    if g.gcd != 1 {
        return None;
    }
    Some(g.x.rem_euclid(m as i128) as u64)
}

/// Image of `x` in `Z/mZ`, defined when the denominator is invertible.
pub fn reduce_mod(x: &Rational, m: u64) -> Option<u64> {
    let mb = BigInt::from(m);
    let n = x.numer().mod_floor(&mb).to_u64()?;
    let d = x.denom().mod_floor(&mb).to_u64()?;
    Some(mul_mod(n, inv_mod(d, m)?, m))
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &w in &WITNESSES {
        if n % w == 0 {
            return n == w;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Primes `p` with `lo <= p < hi`.
pub fn primes_in(lo: u64, hi: u64) -> Vec<u64> {
    (lo..hi).filter(|&n| is_prime(n)).collect()
}

const TRIAL_BOUND: u64 = 1 << 16;

fn pollard_brent(n: u64) -> u64 {
    // n is odd, composite, and has no factor below TRIAL_BOUND.
    let f = |x: u64, c: u64| (mul_mod(x, x, n) + c) % n;
    for c in 1.. {
        let (mut y, mut g, mut r, mut q) = (2u64, 1u64, 1u64, 1u64);
        let (mut x, mut ys) = (0u64, 0u64);
        let m = 128;
        while g == 1 {
            x = y;
            for _ in 0..r {
                y = f(y, c);
            }
            let mut k = 0;
            while k < r && g == 1 {
                ys = y;
                for _ in 0..m.min(r - k) {
                    y = f(y, c);
                    q = mul_mod(q, x.abs_diff(y), n);
                }
                g = q.gcd(&n);
                k += m;
            }
            r *= 2;
        }
        if g == n {
            loop {
                ys = f(ys, c);
                g = x.abs_diff(ys).gcd(&n);
                if g > 1 {
                    break;
                }
            }
        }
        if g != n {
            return g;
        }
    }
    unreachable!()
}

fn factor_into(n: u64, out: &mut BTreeMap<u64, i64>, sign: i64) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        *out.entry(n).or_insert(0) += sign;
        return;
    }
    let d = pollard_brent(n);
    factor_into(d, out, sign);
    factor_into(n / d, out, sign);
}

/// Prime factorization of a positive 64-bit integer, as `(p, e)` pairs.
pub fn factor_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut map = BTreeMap::new();
    let mut d = 2u64;
    while d < TRIAL_BOUND && d * d <= n {
        while n % d == 0 {
            *map.entry(d).or_insert(0) += 1;
            n /= d;
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        factor_into(n, &mut map, 1);
    }
    map.into_iter().map(|(p, e)| (p, e as u32)).collect()
}

fn to_bounded_u64(n: &BigInt) -> Result<u64> {
    n.abs()
        .to_u64()
        .filter(|&v| v <= FACTOR_LIMIT)
        .ok_or_else(|| Error::TooLarge(n.to_string()))
}

/// Signed prime factorization of a nonzero rational whose numerator and
/// denominator are at most 2^63.
pub fn factor(x: &Rational) -> Result<Factorization> {
    if x.is_zero() {
        return Err(Error::Zero);
    }
    let num = to_bounded_u64(x.numer())?;
    let den = to_bounded_u64(x.denom())?;
    let mut exponents = BTreeMap::new();
    for (p, e) in factor_u64(num) {
        exponents.insert(p, e as i64);
    }
    for (p, e) in factor_u64(den) {
        exponents.insert(p, -(e as i64));
    }
    let sign = if x.is_negative() { Sign::Minus } else { Sign::Plus };
    Ok(Factorization { sign, exponents })
}

fn strip(n: &mut BigInt, p: &BigInt) -> i64 {
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(p);
        if !r.is_zero() {
            return v;
        }
        *n = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(x: &Rational, p: u64) -> Result<i64> {
    Ok(vp_decompose(x, p)?.0)
}

/// Writes `x = p^v * u` with numerator and denominator of `u` prime to `p`.
pub fn vp_decompose(x: &Rational, p: u64) -> Result<(i64, Rational)> {
    if x.is_zero() {
        return Err(Error::Zero);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let pb = BigInt::from(p);
    let mut num = x.numer().clone();
    let mut den = x.denom().clone();
    let v = strip(&mut num, &pb) - strip(&mut den, &pb);
    Ok((v, Rational::new(num, den)))
}

/// Is `x` a unit of Z_(p)?
pub fn is_unit_at(x: &Rational, p: u64) -> bool {
    let pb = BigInt::from(p);
    !x.is_zero() && !x.numer().is_multiple_of(&pb) && !x.denom().is_multiple_of(&pb)
}

/// Places at which `(a, b)_v` may differ from +1: the real place, 2, and
/// every prime dividing a numerator or denominator.
pub fn support(a: &Rational, b: &Rational) -> Result<BTreeSet<Place>> {
    let mut places = BTreeSet::from([Place::Infinity, Place::Finite(2)]);
    for x in [a, b] {
        places.extend(factor(x)?.exponents.keys().map(|&p| Place::Finite(p)));
    }
    Ok(places)
}
