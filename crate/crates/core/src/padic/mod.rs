//! Truncated p-adic numbers.
//!
//! A nonzero [`PadicApprox`] is `p^v * m` with the unit `m` known modulo
//! `p^N`; reducing `m` modulo `p^n` for `n <= N` gives the compatible
//! system of residues that defines an element of Z_p. The zero element
//! records only how many digits are known to vanish.

mod oracle;

pub use oracle::{isotropy_oracle, norm_test, Isotropy, IsotropyWitness, ORACLE_PRIME_LIMIT};

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::{self, is_prime, vp_decompose, Rational};
use crate::error::{Error, Result};

/// Working precision used when none is given.
pub const DEFAULT_PRECISION: u32 = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Value {
    /// Known to be `≡ 0 mod p^abs_precision`.
    Zero { abs_precision: i64 },
    /// `p^valuation * mantissa`, mantissa a unit in `[0, p^precision)`.
    Unit { valuation: i64, mantissa: BigInt, precision: u32 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PadicApprox {
    p: u64,
    value: Value,
}

pub(crate) fn p_pow(p: u64, n: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), n as usize)
}

/// Strips factors of `p` from a nonzero integer.
pub(crate) fn split_valuation(n: &BigInt, p: u64) -> (u32, BigInt) {
    let pb = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&pb);
        if !r.is_zero() {
            return (v, n);
        }
        n = q;
        v += 1;
    }
}

pub(crate) fn inv_mod_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let g = a.mod_floor(m).extended_gcd(m);
    if !g.gcd.is_one() {
        return None;
    }
    Some(g.x.mod_floor(m))
}

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p.to_string()))
    }
}

/// The operations of the ring structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PadicOp {
    Add,
    Mul,
    Inv,
}

/// Applies `op`; `y` is required for the binary operations.
pub fn arith(op: PadicOp, x: &PadicApprox, y: Option<&PadicApprox>) -> Result<PadicApprox> {
    let second = || y.ok_or_else(|| Error::Domain(format!("{op:?} needs two operands")));
    match op {
        PadicOp::Add => x.add(second()?),
        PadicOp::Mul => x.mul(second()?),
        PadicOp::Inv => x.inv(),
    }
}

impl PadicApprox {
    pub fn zero(p: u64, abs_precision: i64) -> Result<Self> {
        require_prime(p)?;
        Ok(PadicApprox { p, value: Value::Zero { abs_precision } })
    }

    fn unit(p: u64, valuation: i64, mantissa: BigInt, precision: u32) -> Self {
        debug_assert!(precision >= 1);
        let mantissa = mantissa.mod_floor(&p_pow(p, precision));
        PadicApprox { p, value: Value::Unit { valuation, mantissa, precision } }
    }

    /// Image of `x` in Q_p, with `precision` significant digits.
    pub fn from_rational(x: &Rational, p: u64, precision: u32) -> Result<Self> {
        require_prime(p)?;
        if precision == 0 {
            return Err(Error::Domain("precision must be at least 1".into()));
        }
        if x.is_zero() {
            return PadicApprox::zero(p, precision as i64);
        }
        let (v, u) = vp_decompose(x, p)?;
        let modulus = p_pow(p, precision);
        let den_inv = inv_mod_big(u.denom(), &modulus)
            .ok_or_else(|| Error::Internal("unit denominator not invertible".into()))?;
        Ok(PadicApprox::unit(p, v, u.numer() * den_inv, precision))
    }

    /// An integer known modulo `p^abs_precision`.
    pub fn from_integer_mod(n: &BigInt, p: u64, abs_precision: u32) -> Result<Self> {
        require_prime(p)?;
        let n = n.mod_floor(&p_pow(p, abs_precision));
        if n.is_zero() {
            return PadicApprox::zero(p, abs_precision as i64);
        }
        let (v, m) = split_valuation(&n, p);
        Ok(PadicApprox::unit(p, v as i64, m, abs_precision - v))
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.value, Value::Zero { .. })
    }

    /// `None` for the zero element.
    pub fn valuation(&self) -> Option<i64> {
        match &self.value {
            Value::Zero { .. } => None,
            Value::Unit { valuation, .. } => Some(*valuation),
        }
    }

    pub fn mantissa(&self) -> Option<&BigInt> {
        match &self.value {
            Value::Zero { .. } => None,
            Value::Unit { mantissa, .. } => Some(mantissa),
        }
    }

    /// Number of significant digits; for the zero element, the number of
    /// digits known to vanish.
    pub fn precision(&self) -> i64 {
        match &self.value {
            Value::Zero { abs_precision } => *abs_precision,
            Value::Unit { precision, .. } => *precision as i64,
        }
    }

    /// The value is known modulo `p^absolute_precision`.
    pub fn absolute_precision(&self) -> i64 {
        match &self.value {
            Value::Zero { abs_precision } => *abs_precision,
            Value::Unit { valuation, precision, .. } => valuation + *precision as i64,
        }
    }

    /// Residue modulo `p^n`, defined when the value is integral and known to
    /// that many digits.
    pub fn residue(&self, n: u32) -> Option<BigInt> {
        if self.absolute_precision() < n as i64 {
            return None;
        }
        match &self.value {
            Value::Zero { .. } => Some(BigInt::zero()),
            Value::Unit { valuation, mantissa, .. } => {
                let v = u32::try_from(*valuation).ok()?;
                if v >= n {
                    return Some(BigInt::zero());
                }
                Some((mantissa * p_pow(self.p, v)).mod_floor(&p_pow(self.p, n)))
            }
        }
    }

    /// Drops digits beyond `precision` significant ones.
    pub fn truncate(&self, precision: u32) -> Self {
        match &self.value {
            Value::Unit { valuation, mantissa, precision: n } if precision >= 1 && precision < *n => {
                PadicApprox::unit(self.p, *valuation, mantissa.clone(), precision)
            }
            _ => self.clone(),
        }
    }

    fn same_prime(&self, other: &Self) -> Result<()> {
        if self.p == other.p {
            Ok(())
        } else {
            Err(Error::MixedPrimes(self.p, other.p))
        }
    }

    pub fn neg(&self) -> Self {
        match &self.value {
            Value::Zero { .. } => self.clone(),
            Value::Unit { valuation, mantissa, precision } => {
                PadicApprox::unit(self.p, *valuation, -mantissa, *precision)
            }
        }
    }

    /// Sum, keeping only the digits both summands guarantee.
    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let p = self.p;
        let abs = self.absolute_precision().min(other.absolute_precision());
        let (lhs, rhs) = match (&self.value, &other.value) {
            (Value::Zero { .. }, Value::Zero { .. }) => return PadicApprox::zero(p, abs),
            (Value::Zero { .. }, _) => return Ok(other.truncate_absolute(abs)),
            (_, Value::Zero { .. }) => return Ok(self.truncate_absolute(abs)),
            (
                Value::Unit { valuation: v1, mantissa: m1, .. },
                Value::Unit { valuation: v2, mantissa: m2, .. },
            ) => ((*v1, m1), (*v2, m2)),
        };
        let v = lhs.0.min(rhs.0);
        let shift = |(w, m): (i64, &BigInt)| m * p_pow(p, (w - v) as u32);
        let known = (abs - v) as u32;
        let sum = (shift(lhs) + shift(rhs)).mod_floor(&p_pow(p, known));
        if sum.is_zero() {
            return PadicApprox::zero(p, abs);
        }
        let (w, m) = split_valuation(&sum, p);
        Ok(PadicApprox::unit(p, v + w as i64, m, known - w))
    }

    fn truncate_absolute(&self, abs: i64) -> Self {
        match &self.value {
            Value::Zero { abs_precision } => {
                PadicApprox { p: self.p, value: Value::Zero { abs_precision: (*abs_precision).min(abs) } }
            }
            Value::Unit { valuation, mantissa, precision } => {
                if abs <= *valuation {
                    PadicApprox { p: self.p, value: Value::Zero { abs_precision: abs } }
                } else {
                    let n = (*precision as i64).min(abs - valuation) as u32;
                    PadicApprox::unit(self.p, *valuation, mantissa.clone(), n)
                }
            }
        }
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_prime(other)?;
        let p = self.p;
        match (&self.value, &other.value) {
            (Value::Zero { abs_precision: a }, Value::Zero { abs_precision: b }) => PadicApprox::zero(p, a + b),
            (Value::Zero { abs_precision }, Value::Unit { valuation, .. })
            | (Value::Unit { valuation, .. }, Value::Zero { abs_precision }) => {
                PadicApprox::zero(p, abs_precision + valuation)
            }
            (
                Value::Unit { valuation: v1, mantissa: m1, precision: n1 },
                Value::Unit { valuation: v2, mantissa: m2, precision: n2 },
            ) => Ok(PadicApprox::unit(p, v1 + v2, m1 * m2, (*n1).min(*n2))),
        }
    }

    pub fn inv(&self) -> Result<Self> {
        match &self.value {
            Value::Zero { .. } => Err(Error::DivisionByZero),
            Value::Unit { valuation, mantissa, precision } => {
                let inv = inv_mod_big(mantissa, &p_pow(self.p, *precision))
                    .ok_or_else(|| Error::Internal("mantissa is not a unit".into()))?;
                Ok(PadicApprox::unit(self.p, -valuation, inv, *precision))
            }
        }
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        self.mul(&other.inv()?)
    }

    /// Whether `self` and `other` agree to the precision both carry.
    pub fn agrees_with(&self, other: &Self) -> Result<bool> {
        Ok(self.sub(other)?.is_zero())
    }
}

impl fmt::Display for PadicApprox {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let p = self.p;
        match &self.value {
            Value::Zero { abs_precision } => write!(f, "O({p}^{abs_precision})"),
            Value::Unit { valuation, mantissa, precision } => {
                let top = valuation + *precision as i64;
                if *valuation == 0 {
                    write!(f, "{mantissa} + O({p}^{top})")
                } else {
                    write!(f, "{p}^{valuation} * {mantissa} + O({p}^{top})")
                }
            }
        }
    }
}

/// Square root of a nonzero residue modulo an odd prime (Tonelli-Shanks).
pub(crate) fn sqrt_mod_prime(a: u64, p: u64) -> Option<u64> {
    let a = a % p;
    if a == 0 || arith::pow_mod(a, (p - 1) / 2, p) != 1 {
        return None;
    }
    let s = (p - 1).trailing_zeros();
    let q = (p - 1) >> s;
    let z = (2..p).find(|&z| arith::pow_mod(z, (p - 1) / 2, p) == p - 1)?;
    let mut m = s;
    let mut c = arith::pow_mod(z, q, p);
    let mut t = arith::pow_mod(a, q, p);
    let mut r = arith::pow_mod(a, q.div_ceil(2), p);
    while t != 1 {
        let mut i = 0;
        let mut t2 = t;
        while t2 != 1 {
            t2 = arith::mul_mod(t2, t2, p);
            i += 1;
        }
        let b = arith::pow_mod(c, 1 << (m - i - 1), p);
        m = i;
        c = arith::mul_mod(b, b, p);
        t = arith::mul_mod(t, c, p);
        r = arith::mul_mod(r, b, p);
    }
    Some(r)
}

/// Whether `x` is a square in Q_p^×.
pub fn is_square(x: &Rational, p: u64) -> Result<bool> {
    if x.is_zero() {
        return Err(Error::Zero);
    }
    let (v, u) = vp_decompose(x, p)?;
    if v % 2 != 0 {
        return Ok(false);
    }
    if p == 2 {
        return Ok(arith::reduce_mod(&u, 8) == Some(1));
    }
    let r = arith::reduce_mod(&u, p).ok_or_else(|| Error::Internal("unit not invertible".into()))?;
    Ok(arith::pow_mod(r, (p - 1) / 2, p) == 1)
}

/// Square root of `x` in Q_p to `precision` digits, by Newton iteration from
/// a root modulo `p` (or modulo 8 when `p = 2`).
///
/// Of the two roots, the one whose p-adic digits are lexicographically
/// smallest (lowest digit first) is returned.
pub fn hensel_sqrt(x: &Rational, p: u64, precision: u32) -> Result<PadicApprox> {
    if x.is_zero() {
        return Err(Error::Zero);
    }
    if precision == 0 {
        return Err(Error::Domain("precision must be at least 1".into()));
    }
    require_prime(p)?;
    if !is_square(x, p)? {
        return Err(Error::NonResidue(x.to_string(), p));
    }
    let (v, _) = vp_decompose(x, p)?;
    let unit = PadicApprox::from_rational(x, p, precision + 2)?;
    let u = unit.mantissa().cloned().unwrap_or_default();
    let root = if p == 2 { sqrt_unit_dyadic(&u, precision) } else { sqrt_unit_odd(&u, p, precision)? };
    Ok(PadicApprox::unit(p, v / 2, root, precision))
}

fn sqrt_unit_odd(u: &BigInt, p: u64, precision: u32) -> Result<BigInt> {
    let r0 = u
        .mod_floor(&BigInt::from(p))
        .to_u64()
        .and_then(|r| sqrt_mod_prime(r, p))
        .ok_or_else(|| Error::Internal("square unit has no root mod p".into()))?;
    let r0 = r0.min(p - r0);
    let mut r = BigInt::from(r0);
    let mut k = 1u32;
    while k < precision {
        k = (2 * k).min(precision);
        let m = p_pow(p, k);
        let f = (&r * &r - u).mod_floor(&m);
        let d = inv_mod_big(&(BigInt::from(2) * &r), &m)
            .ok_or_else(|| Error::Internal("derivative not invertible".into()))?;
        r = (&r - f * d).mod_floor(&m);
    }
    // The lowest digit already selects the root; Newton preserves it.
    Ok(r)
}

fn sqrt_unit_dyadic(u: &BigInt, precision: u32) -> BigInt {
    // invariant: r^2 ≡ u mod 2^k
    let mut r = BigInt::one();
    let mut k = 3u32;
    while k < precision + 1 {
        let f = &r * &r - u;
        if !(f >> k).is_even() {
            r += BigInt::one() << (k - 1);
        }
        k += 1;
    }
    let m = p_pow(2, precision);
    let r = r.mod_floor(&m);
    // of ±r, keep the one congruent to 1 mod 4
    if precision >= 2 && (&r % 4u32) == BigInt::from(3) {
        (m - r).mod_floor(&p_pow(2, precision))
    } else {
        r
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{primes_in, rat, ratio};

    fn q(x: &Rational, p: u64, n: u32) -> PadicApprox {
        PadicApprox::from_rational(x, p, n).unwrap()
    }

    #[test]
    fn from_rational_examples() {
        let x = q(&rat(12), 2, 4);
        assert_eq!(x.valuation(), Some(2));
        assert_eq!(x.mantissa(), Some(&BigInt::from(3)));
        let x = q(&ratio(1, 3), 2, 4);
        assert_eq!(x.valuation(), Some(0));
        assert_eq!(x.mantissa(), Some(&BigInt::from(11)));
        assert!(q(&rat(0), 5, 7).is_zero());
        assert!(PadicApprox::from_rational(&rat(3), 4, 3).is_err());
    }

    #[test]
    fn arithmetic_examples() {
        for p in [2, 3, 5, 7] {
            let six = q(&rat(6), p, 10);
            assert_eq!(q(&rat(2), p, 10).mul(&q(&rat(3), p, 10)).unwrap(), six);
            let s = q(&ratio(1, 3), p, 10).add(&q(&ratio(2, 3), p, 10));
            if p != 3 {
                assert_eq!(s.unwrap(), q(&rat(1), p, 10));
            }
            let inv = q(&rat(p as i64), p, 10).inv().unwrap();
            assert_eq!(inv.valuation(), Some(-1));
            assert_eq!(inv.mantissa(), Some(&BigInt::one()));
        }
        assert_eq!(q(&rat(0), 5, 4).inv(), Err(Error::DivisionByZero));
        assert_eq!(q(&rat(1), 5, 4).add(&q(&rat(1), 3, 4)), Err(Error::MixedPrimes(5, 3)));
        let via_op = arith(PadicOp::Mul, &q(&rat(2), 3, 5), Some(&q(&rat(3), 3, 5))).unwrap();
        assert_eq!(via_op, q(&rat(6), 3, 5));
        assert!(arith(PadicOp::Add, &q(&rat(2), 3, 5), None).is_err());
    }

    #[test]
    fn cancellation_loses_precision() {
        // 1 + 3^5 and 1 agree to 5 digits; their difference is 3^5 known to 0 more digits.
        let a = q(&rat(1 + 243), 3, 8);
        let b = q(&rat(1), 3, 8);
        let d = a.sub(&b).unwrap();
        assert_eq!(d.valuation(), Some(5));
        assert_eq!(d.precision(), 3);
        assert_eq!(d.absolute_precision(), 8);
        let z = a.sub(&a).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.absolute_precision(), 8);
    }

    #[test]
    fn ring_morphism_compatibility() {
        let vals: Vec<Rational> = (-20i64..=20)
            .flat_map(|n| [1i64, 2, 3, 7, 9, 25, 100].map(move |d| ratio(n, d)))
            .filter(|x| !x.is_zero())
            .collect();
        for p in [2u64, 3, 5, 7] {
            for x in vals.iter().step_by(7) {
                for y in vals.iter().step_by(11) {
                    let (px, py) = (q(x, p, 20), q(y, p, 20));
                    assert!(px.mul(&py).unwrap().agrees_with(&q(&(x * y), p, 20)).unwrap());
                    assert!(px.add(&py).unwrap().agrees_with(&q(&(x + y), p, 20)).unwrap());
                }
            }
        }
    }

    #[test]
    fn residues_are_coherent() {
        let x = q(&ratio(-7, 11), 5, 12);
        for n in 1..12 {
            let hi = x.residue(n + 1).unwrap();
            let lo = x.residue(n).unwrap();
            assert_eq!(hi.mod_floor(&p_pow(5, n)), lo);
        }
        assert_eq!(x.residue(13), None);
    }

    #[test]
    fn hensel_examples() {
        let r = hensel_sqrt(&rat(2), 7, 2).unwrap();
        assert_eq!(r.valuation(), Some(0));
        assert_eq!(r.mantissa(), Some(&BigInt::from(10)));
        for p in [2, 3, 5, 7] {
            let r = hensel_sqrt(&rat(1), p, 8).unwrap();
            assert_eq!(r.mantissa(), Some(&BigInt::one()));
        }
        assert_eq!(hensel_sqrt(&rat(3), 5, 4), Err(Error::NonResidue("3".into(), 5)));
        assert!(matches!(hensel_sqrt(&rat(7), 7, 4), Err(Error::NonResidue(..))));
    }

    #[test]
    fn square_examples() {
        assert_eq!(is_square(&rat(2), 7), Ok(true));
        for p in primes_in(2, 30) {
            assert_eq!(is_square(&rat(4), p), Ok(true));
        }
        assert_eq!(is_square(&rat(-1), 2), Ok(false));
        assert_eq!(is_square(&rat(17), 2), Ok(true));
        assert_eq!(is_square(&rat(0), 2), Err(Error::Zero));
    }

    #[test]
    fn hensel_roots_square_back() {
        for p in primes_in(2, 50) {
            for n in -100i64..=100 {
                for d in [1i64, 2, 3, 4] {
                    let x = ratio(n, d);
                    if x.is_zero() {
                        continue;
                    }
                    let ok = is_square(&x, p).unwrap();
                    match hensel_sqrt(&x, p, 20) {
                        Ok(r) => {
                            assert!(ok);
                            let sq = r.mul(&r).unwrap();
                            assert_eq!(sq.precision(), 20);
                            assert!(sq.agrees_with(&q(&x, p, 20)).unwrap(), "{x} {p}");
                        }
                        Err(_) => assert!(!ok, "{x} {p}"),
                    }
                }
            }
        }
    }

    #[test]
    fn chosen_root_has_smallest_digits() {
        for p in primes_in(3, 40) {
            for a in 1..p as i64 {
                if let Ok(r) = hensel_sqrt(&rat(a), p, 6) {
                    let m = r.mantissa().unwrap();
                    let other = (p_pow(p, 6) - m).mod_floor(&p_pow(p, 6));
                    let low = |x: &BigInt| x.mod_floor(&BigInt::from(p));
                    assert!(low(m) < low(&other));
                }
            }
        }
        let r = hensel_sqrt(&rat(17), 2, 10).unwrap();
        assert_eq!(r.mantissa().unwrap().mod_floor(&BigInt::from(4)), BigInt::one());
    }

    #[test]
    fn square_classes_are_distinct() {
        // odd p: {1, u, p, up} with u a non-residue
        for p in primes_in(3, 30) {
            let u = (2..p as i64).find(|&a| !is_square(&rat(a), p).unwrap()).unwrap();
            let reps = [1, u, p as i64, u * p as i64];
            for (i, &a) in reps.iter().enumerate() {
                for &b in &reps[i + 1..] {
                    assert!(!is_square(&ratio(a, b), p).unwrap(), "{a} {b} {p}");
                }
            }
        }
        let reps = [1i64, -1, 2, -2, 5, -5, 10, -10];
        for (i, &a) in reps.iter().enumerate() {
            for &b in &reps[i + 1..] {
                assert!(!is_square(&ratio(a, b), 2).unwrap(), "{a} {b}");
            }
        }
    }

    #[test]
    fn tonelli_shanks_matches_brute_force() {
        for p in primes_in(3, 300) {
            for a in 1..p {
                let brute = (1..p).any(|r| r * r % p == a);
                match sqrt_mod_prime(a, p) {
                    Some(r) => assert_eq!(r * r % p, a),
                    None => assert!(!brute),
                }
            }
        }
    }
}
