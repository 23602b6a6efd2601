//! Quadratic characters: `λ_p` for odd primes, the three characters
//! `λ_4`, `λ_8`, `λ_4λ_8` of `(Z/8Z)^×`, all extended to units of Z_(p).

use std::fmt;
use std::ops::{Mul, MulAssign, Neg};

use num_integer::Integer;
use num_traits::One;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::{self, is_prime, is_unit_at, pow_mod, reduce_mod, Rational};
use crate::error::{Error, Result};

/// An element of `{+1, -1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    /// `(-1)^e` for an exponent whose parity is `odd`.
    pub fn from_parity(odd: bool) -> Self {
        if odd {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i8(self) -> i8 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

impl Mul for Sign {
    type Output = Sign;

    fn mul(self, rhs: Sign) -> Sign {
        Sign::from_parity(self.is_minus() != rhs.is_minus())
    }
}

impl MulAssign for Sign {
    fn mul_assign(&mut self, rhs: Sign) {
        *self = *self * rhs;
    }
}

impl Neg for Sign {
    type Output = Sign;

    fn neg(self) -> Sign {
        self * Sign::Minus
    }
}

impl std::iter::Product for Sign {
    fn product<I: Iterator<Item = Sign>>(iter: I) -> Sign {
        iter.fold(Sign::Plus, Mul::mul)
    }
}

impl fmt::Display for Sign {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sign::Plus => "+1",
            Sign::Minus => "-1",
        })
    }
}

impl Serialize for Sign {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_i8(self.to_i8())
    }
}

impl<'de> Deserialize<'de> for Sign {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        match i8::deserialize(d)? {
            1 => Ok(Sign::Plus),
            -1 => Ok(Sign::Minus),
            other => Err(serde::de::Error::custom(format!("{other} is not a sign"))),
        }
    }
}

/// Parity of an element of Z_(2), i.e. its image in `Z/2Z`.
///
/// The denominator is odd, so its inverse mod 2 is 1 and the image is the
/// numerator's parity.
pub fn z2_parity(x: &Rational) -> Result<bool> {
    if x.denom().is_even() {
        return Err(Error::NotUnit { value: x.to_string(), p: 2 });
    }
    Ok(x.numer().is_odd())
}

fn require_odd_prime(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenPrime);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(())
}

fn require_unit(a: &Rational, p: u64) -> Result<()> {
    if is_unit_at(a, p) {
        Ok(())
    } else {
        Err(Error::NotUnit { value: a.to_string(), p })
    }
}

/// Euler's criterion on a nonzero residue mod an odd prime.
fn euler(r: u64, p: u64) -> Sign {
    Sign::from_parity(pow_mod(r, (p - 1) / 2, p) != 1)
}

/// `λ_p(a)`: reduce `a` into `F_p^×` and apply Euler's criterion.
pub fn legendre(a: &Rational, p: u64) -> Result<Sign> {
    require_odd_prime(p)?;
    require_unit(a, p)?;
    let r = reduce_mod(a, p).ok_or_else(|| Error::Internal("unit without inverse".into()))?;
    Ok(euler(r, p))
}

/// `λ_4(a) = (-1)^((a-1)/2)` for a unit `a` of Z_(2).
pub fn lambda4(a: &Rational) -> Result<Sign> {
    require_unit(a, 2)?;
    let e = (a - Rational::one()) / arith::rat(2);
    Ok(Sign::from_parity(z2_parity(&e)?))
}

/// `λ_8(a) = (-1)^((a^2-1)/8)` for a unit `a` of Z_(2).
pub fn lambda8(a: &Rational) -> Result<Sign> {
    require_unit(a, 2)?;
    let e = (a * a - Rational::one()) / arith::rat(8);
    Ok(Sign::from_parity(z2_parity(&e)?))
}

pub fn lambda48(a: &Rational) -> Result<Sign> {
    Ok(lambda4(a)? * lambda8(a)?)
}

/// The three quadratic characters of `(Z/8Z)^×`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DyadicCharacter {
    /// Pulled back from the isomorphism `(Z/4Z)^× -> {±1}`.
    Four,
    /// Pulled back from the isomorphism `(Z/8Z)^× / {±1} -> {±1}`.
    Eight,
    /// The product of the other two.
    FourEight,
}

impl DyadicCharacter {
    pub const ALL: [DyadicCharacter; 3] =
        [DyadicCharacter::Four, DyadicCharacter::Eight, DyadicCharacter::FourEight];

    /// Value on a residue class in `(Z/8Z)^×`, from the group structure
    /// alone: the class mod 4, or the coset of `{1, 7}`.
    pub fn on_residue(self, r: u64) -> Result<Sign> {
        if r % 2 == 0 {
            return Err(Error::NotUnit { value: r.to_string(), p: 2 });
        }
        let r = r % 8;
        let four = Sign::from_parity(r % 4 == 3);
        let eight = Sign::from_parity(!(r == 1 || r == 7));
        Ok(match self {
            DyadicCharacter::Four => four,
            DyadicCharacter::Eight => eight,
            DyadicCharacter::FourEight => four * eight,
        })
    }

    /// Table value on a unit of Z_(2), via `Z_(2)^× -> (Z/8Z)^×`.
    pub fn by_table(self, a: &Rational) -> Result<Sign> {
        require_unit(a, 2)?;
        let r = reduce_mod(a, 8).ok_or_else(|| Error::Internal("odd denominator not invertible mod 8".into()))?;
        self.on_residue(r)
    }

    /// Value from the closed formulas.
    pub fn by_formula(self, a: &Rational) -> Result<Sign> {
        match self {
            DyadicCharacter::Four => lambda4(a),
            DyadicCharacter::Eight => lambda8(a),
            DyadicCharacter::FourEight => lambda48(a),
        }
    }

    /// Whether the character is trivial on `-1`.
    pub fn is_even(self) -> bool {
        self.on_residue(7) == Ok(Sign::Plus)
    }
}

impl std::str::FromStr for DyadicCharacter {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "4" => Ok(DyadicCharacter::Four),
            "8" => Ok(DyadicCharacter::Eight),
            "48" => Ok(DyadicCharacter::FourEight),
            other => Err(Error::Domain(format!("unknown character {other:?}; expected 4, 8 or 48"))),
        }
    }
}

/// Representative of `x mod m` in `(-m/2, m/2)`.
fn centered(x: u64, m: u64) -> i64 {
    if x > m / 2 {
        x as i64 - m as i64
    } else {
        x as i64
    }
}

/// `λ_p(a)` computed from the reciprocity law alone.
///
/// `a` is first reduced into `(-p/2, p/2)`; its factors are then evaluated
/// with `λ_p(-1) = λ_4(p)`, `λ_p(2) = λ_8(p)` and
/// `λ_p(q) = λ_q(λ_4(p) p)`, the last recursing on a strictly smaller
/// modulus.
pub fn legendre_via_reciprocity(a: &Rational, p: u64) -> Result<Sign> {
    require_odd_prime(p)?;
    require_unit(a, p)?;
    let r = reduce_mod(a, p).ok_or_else(|| Error::Internal("unit without inverse".into()))?;
    descend(centered(r, p), p)
}

fn descend(a: i64, p: u64) -> Result<Sign> {
    debug_assert!(a != 0 && a.unsigned_abs() < p);
    let pr = arith::rat(p as i64);
    let mut out = if a < 0 { lambda4(&pr)? } else { Sign::Plus };
    for (q, e) in arith::factor_u64(a.unsigned_abs()) {
        if e % 2 == 0 {
            continue;
        }
        out *= if q == 2 {
            lambda8(&pr)?
        } else {
            let twisted = lambda4(&pr)?.to_i8() as i64 * p as i64;
            let r = twisted.rem_euclid(q as i64) as u64;
            descend(centered(r, q), q)?
        };
    }
    Ok(out)
}

/// Exponent parity helper shared with the dyadic Hilbert symbol.
pub(crate) fn half_minus_one(u: &Rational) -> Rational {
    (u - Rational::one()) / arith::rat(2)
}
