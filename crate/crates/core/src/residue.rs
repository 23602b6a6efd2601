//! Gaussian integers `Z[i]`, Eisenstein integers `Z[ω]` (`ω² + ω + 1 = 0`),
//! and the quartic and cubic residue symbols they carry.
//!
//! A prime is *primary* when it is `≡ 1 mod (1+i)³` (Gaussian) or
//! `≡ 2 mod 3` (Eisenstein). With these conventions cubic reciprocity reads
//! `(π/θ)_3 = (θ/π)_3` and quartic reciprocity
//! `(π/θ)_4 = (θ/π)_4 (-1)^{((Nπ-1)/4)((Nθ-1)/4)}`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};

use crate::arith::{self, is_prime};
use crate::error::{Error, Result};

/// Coordinates of parsed literals are bounded so that products of reduced
/// residues stay inside `i64`.
pub const COORD_LIMIT: i64 = 1 << 24;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Ring {
    /// `Z[i]`
    Gaussian,
    /// `Z[ω]`
    Eisenstein,
}

impl Ring {
    /// The order of the residue symbol the ring carries: 4 for `Z[i]`, 3 for `Z[ω]`.
    pub fn symbol_order(self) -> u8 {
        match self {
            Ring::Gaussian => 4,
            Ring::Eisenstein => 3,
        }
    }

    pub fn for_order(m: u8) -> Result<Ring> {
        match m {
            4 => Ok(Ring::Gaussian),
            3 => Ok(Ring::Eisenstein),
            _ => Err(Error::Domain(format!("residue symbols are available for m = 3 or 4, got {m}"))),
        }
    }

    fn suffix(self) -> char {
        match self {
            Ring::Gaussian => 'i',
            Ring::Eisenstein => 'w',
        }
    }

    pub fn one(self) -> QuadInt {
        QuadInt::new(self, 1, 0)
    }

    /// `i` or `ω`.
    pub fn generator(self) -> QuadInt {
        QuadInt::new(self, 0, 1)
    }

    /// The prime above the ramified rational prime: `1 + i` or `1 - ω`.
    pub fn ramified_prime(self) -> QuadInt {
        match self {
            Ring::Gaussian => QuadInt::new(self, 1, 1),
            Ring::Eisenstein => QuadInt::new(self, 1, -1),
        }
    }

    /// Powers of the generating root of unity; these are all the units.
    pub fn roots_of_unity(self) -> Vec<QuadInt> {
        match self {
            Ring::Gaussian => vec![
                QuadInt::new(self, 1, 0),
                QuadInt::new(self, 0, 1),
                QuadInt::new(self, -1, 0),
                QuadInt::new(self, 0, -1),
            ],
            Ring::Eisenstein => vec![QuadInt::new(self, 1, 0), QuadInt::new(self, 0, 1), QuadInt::new(self, -1, -1)],
        }
    }

    /// All units of the ring.
    pub fn units(self) -> Vec<QuadInt> {
        let roots = self.roots_of_unity();
        match self {
            Ring::Gaussian => roots,
            Ring::Eisenstein => roots.iter().flat_map(|&u| [u, -u]).collect(),
        }
    }

    /// The modulus defining primary elements and the residue they must have.
    fn primary_condition(self) -> (QuadInt, QuadInt) {
        match self {
            Ring::Gaussian => (QuadInt::new(self, 2, 2), self.one()),
            Ring::Eisenstein => (QuadInt::new(self, 3, 0), QuadInt::new(self, 2, 0)),
        }
    }

    /// Whether `x² + 1` (resp. `x² + x + 1`) has no root mod `q`.
    fn is_inert(self, q: u64) -> bool {
        !(0..q).any(|x| {
            let f = match self {
                Ring::Gaussian => x * x + 1,
                Ring::Eisenstein => x * x + x + 1,
            };
            f % q == 0
        })
    }
}

/// `a + b·i` or `a + b·ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadInt {
    pub ring: Ring,
    pub a: i64,
    pub b: i64,
}

fn narrow(x: i128) -> i64 {
    i64::try_from(x).expect("quadratic integer coordinate overflowed i64")
}

impl QuadInt {
    pub const fn new(ring: Ring, a: i64, b: i64) -> Self {
        QuadInt { ring, a, b }
    }

    pub fn integer(ring: Ring, a: i64) -> Self {
        QuadInt::new(ring, a, 0)
    }

    pub fn is_zero(&self) -> bool {
        self.a == 0 && self.b == 0
    }

    pub fn conj(self) -> Self {
        match self.ring {
            Ring::Gaussian => QuadInt::new(self.ring, self.a, -self.b),
            // ω̄ = ω² = -1 - ω
            Ring::Eisenstein => QuadInt::new(self.ring, self.a - self.b, -self.b),
        }
    }

    fn same_ring(self, other: Self) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::Domain(format!("{self} and {other} live in different rings")))
        }
    }

    fn pow_mod(self, mut e: u64, modulus: QuadInt) -> Result<QuadInt> {
        let mut base = self.rem(modulus)?;
        let mut acc = self.ring.one().rem(modulus)?;
        while e > 0 {
            if e & 1 == 1 {
                acc = (acc * base).rem(modulus)?;
            }
            base = (base * base).rem(modulus)?;
            e >>= 1;
        }
        Ok(acc)
    }

    fn rem(self, y: QuadInt) -> Result<QuadInt> {
        Ok(qdivmod(self, y)?.1)
    }

    pub fn divides(self, x: QuadInt) -> Result<bool> {
        self.same_ring(x)?;
        if self.is_zero() {
            return Ok(x.is_zero());
        }
        let n = qnorm(self) as i128;
        let t = x * self.conj();
        Ok(t.a as i128 % n == 0 && t.b as i128 % n == 0)
    }

    pub fn associates(self) -> Vec<QuadInt> {
        self.ring.units().into_iter().map(|u| u * self).collect()
    }

    pub fn is_associate(self, other: QuadInt) -> bool {
        self.associates().contains(&other)
    }

    pub fn is_primary(self) -> bool {
        let (modulus, target) = self.ring.primary_condition();
        modulus.divides(self - target).unwrap_or(false)
    }

    /// Primality in `Z[i]` or `Z[ω]`: the norm is a rational prime, or the
    /// element is an associate of an inert rational prime.
    pub fn is_prime(self) -> bool {
        let n = qnorm(self);
        if n <= 1 {
            return false;
        }
        if is_prime(n as u64) {
            return true;
        }
        self.associates()
            .into_iter()
            .find(|z| z.b == 0 && z.a > 0)
            .is_some_and(|z| is_prime(z.a as u64) && self.ring.is_inert(z.a as u64))
    }
}

impl Add for QuadInt {
    type Output = QuadInt;

    fn add(self, o: QuadInt) -> QuadInt {
        debug_assert_eq!(self.ring, o.ring);
        QuadInt::new(self.ring, self.a + o.a, self.b + o.b)
    }
}

impl Sub for QuadInt {
    type Output = QuadInt;

    fn sub(self, o: QuadInt) -> QuadInt {
        debug_assert_eq!(self.ring, o.ring);
        QuadInt::new(self.ring, self.a - o.a, self.b - o.b)
    }
}

impl Neg for QuadInt {
    type Output = QuadInt;

    fn neg(self) -> QuadInt {
        QuadInt::new(self.ring, -self.a, -self.b)
    }
}

impl Mul for QuadInt {
    type Output = QuadInt;

    fn mul(self, o: QuadInt) -> QuadInt {
        debug_assert_eq!(self.ring, o.ring);
        let (a, b, c, d) = (self.a as i128, self.b as i128, o.a as i128, o.b as i128);
        match self.ring {
            Ring::Gaussian => QuadInt::new(self.ring, narrow(a * c - b * d), narrow(a * d + b * c)),
            Ring::Eisenstein => QuadInt::new(self.ring, narrow(a * c - b * d), narrow(a * d + b * c - b * d)),
        }
    }
}

impl fmt::Display for QuadInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.b == 0 {
            return write!(f, "{}", self.a);
        }
        let sign = if self.b < 0 { '-' } else { '+' };
        write!(f, "{}{}{}{}", self.a, sign, self.b.unsigned_abs(), self.ring.suffix())
    }
}

/// Parses `a`, `a+bi`, `a-bi`, `a+bw` or `a-bw` (whitespace ignored) into
/// `ring`. A bare `bi` or `bw` is accepted too, and an omitted `b` means 1.
pub fn parse_quad(s: &str, ring: Ring) -> Result<QuadInt> {
    let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    let bad = |why: &str| Error::Domain(format!("cannot parse {s:?} as an element of {ring:?}: {why}"));
    let int = |t: &str| -> Result<i64> {
        let v: i64 = t.parse().map_err(|_| bad("expected a decimal integer"))?;
        if v.abs() > COORD_LIMIT {
            return Err(bad("coordinate too large"));
        }
        Ok(v)
    };
    let Some(body) = compact.strip_suffix(['i', 'w']) else {
        return Ok(QuadInt::integer(ring, int(&compact)?));
    };
    if !compact.ends_with(ring.suffix()) {
        return Err(bad("wrong ring suffix"));
    }
    let split = body.char_indices().skip(1).filter(|&(_, c)| c == '+' || c == '-').last().map(|(i, _)| i);
    let (a, b) = match split {
        Some(i) => (int(&body[..i])?, &body[i..]),
        None => (0, body),
    };
    let b = match b {
        "" | "+" => 1,
        "-" => -1,
        t => int(t.strip_prefix('+').unwrap_or(t))?,
    };
    Ok(QuadInt::new(ring, a, b))
}

/// The field norm to Z.
pub fn qnorm(z: QuadInt) -> i64 {
    let (a, b) = (z.a as i128, z.b as i128);
    narrow(match z.ring {
        Ring::Gaussian => a * a + b * b,
        Ring::Eisenstein => a * a - a * b + b * b,
    })
}

/// Nearest integer to `n / d` for `d > 0`.
fn round_div(n: i128, d: i128) -> i128 {
    (2 * n + d).div_euclid(2 * d)
}

/// Division with remainder by rounding `x / y` to the nearest lattice
/// point; the remainder has norm below `N(y)`.
pub fn qdivmod(x: QuadInt, y: QuadInt) -> Result<(QuadInt, QuadInt)> {
    x.same_ring(y)?;
    if y.is_zero() {
        return Err(Error::DivisionByZero);
    }
    let n = qnorm(y) as i128;
    let t = x * y.conj();
    let q = QuadInt::new(x.ring, narrow(round_div(t.a as i128, n)), narrow(round_div(t.b as i128, n)));
    let r = x - q * y;
    debug_assert!(qnorm(r) < qnorm(y));
    Ok((q, r))
}

pub fn qgcd(mut x: QuadInt, mut y: QuadInt) -> Result<QuadInt> {
    x.same_ring(y)?;
    while !y.is_zero() {
        let r = qdivmod(x, y)?.1;
        x = y;
        y = r;
    }
    Ok(x)
}

fn require_good_prime(pi: QuadInt, m: u8) -> Result<()> {
    if Ring::for_order(m)? != pi.ring {
        return Err(Error::Domain(format!("m = {m} does not match the ring of {pi}")));
    }
    if !pi.is_prime() {
        return Err(Error::NotPrime(pi.to_string()));
    }
    if pi.ring.ramified_prime().is_associate(pi) {
        return Err(Error::Ramified(pi.to_string()));
    }
    Ok(())
}

/// The unique primary associate of a prime coprime to the ramified prime.
pub fn primary_associate(pi: QuadInt, m: u8) -> Result<QuadInt> {
    require_good_prime(pi, m)?;
    let mut primary = pi.associates().into_iter().filter(|z| z.is_primary());
    match (primary.next(), primary.next()) {
        (Some(z), None) => Ok(z),
        _ => Err(Error::Internal(format!("{pi} does not have exactly one primary associate"))),
    }
}

/// An element `ζ^k` of `μ_m`, with `ζ = i` for `m = 4` and `ζ = ω` for `m = 3`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootOfUnity {
    pub m: u8,
    pub k: u8,
}

impl RootOfUnity {
    pub fn new(m: u8, k: i64) -> Self {
        RootOfUnity { m, k: k.rem_euclid(m as i64) as u8 }
    }

    pub fn one(m: u8) -> Self {
        RootOfUnity { m, k: 0 }
    }

    pub fn is_one(self) -> bool {
        self.k == 0
    }

    pub fn to_quad(self) -> Result<QuadInt> {
        Ok(Ring::for_order(self.m)?.roots_of_unity()[self.k as usize])
    }
}

impl Mul for RootOfUnity {
    type Output = RootOfUnity;

    fn mul(self, o: RootOfUnity) -> RootOfUnity {
        debug_assert_eq!(self.m, o.m);
        RootOfUnity::new(self.m, self.k as i64 + o.k as i64)
    }
}

impl fmt::Display for RootOfUnity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.m, self.k) {
            (_, 0) => f.write_str("1"),
            (4, 1) => f.write_str("i"),
            (4, 2) => f.write_str("-1"),
            (4, 3) => f.write_str("-i"),
            (_, 1) => f.write_str("w"),
            (_, k) => write!(f, "w^{k}"),
        }
    }
}

/// The m-th power residue symbol `(α/π)_m`: the root of unity congruent to
/// `α^{(N(π)-1)/m}` modulo `π`.
pub fn residue_symbol(alpha: QuadInt, pi: QuadInt, m: u8) -> Result<RootOfUnity> {
    require_good_prime(pi, m)?;
    alpha.same_ring(pi)?;
    if pi.divides(alpha)? {
        return Err(Error::NotCoprime(alpha.to_string(), pi.to_string()));
    }
    let n = qnorm(pi) as u64;
    let power = alpha.pow_mod((n - 1) / m as u64, pi)?;
    let mut hits = pi
        .ring
        .roots_of_unity()
        .into_iter()
        .enumerate()
        .filter_map(|(k, zeta)| pi.divides(power - zeta).ok()?.then_some(k));
    match (hits.next(), hits.next()) {
        (Some(k), None) => Ok(RootOfUnity::new(m, k as i64)),
        _ => Err(Error::Internal(format!("{power} is not a unique root of unity mod {pi}"))),
    }
}

/// Both sides of the cubic (m = 3) or quartic (m = 4) reciprocity law for
/// two non-associate primary primes. The quartic right-hand side carries
/// the factor `(-1)^{((Nπ-1)/4)((Nθ-1)/4)}`.
pub fn reciprocity_check(pi: QuadInt, theta: QuadInt, m: u8) -> Result<(RootOfUnity, RootOfUnity)> {
    for z in [pi, theta] {
        require_good_prime(z, m)?;
        if !z.is_primary() {
            return Err(Error::NotPrimary(z.to_string()));
        }
    }
    if pi.is_associate(theta) {
        return Err(Error::Domain(format!("{pi} and {theta} are associates")));
    }
    let lhs = residue_symbol(pi, theta, m)?;
    let mut rhs = residue_symbol(theta, pi, m)?;
    if m == 4 {
        let e = ((qnorm(pi) - 1) / 4) * ((qnorm(theta) - 1) / 4);
        rhs = rhs * RootOfUnity::new(4, 2 * (e % 2));
    }
    Ok((lhs, rhs))
}

/// Primary primes of norm below `bound`, in ascending order of norm.
pub fn primary_primes(ring: Ring, bound: i64) -> Vec<QuadInt> {
    let reach = ((4 * bound) as f64 / 3.0).sqrt().ceil() as i64 + 1;
    let mut found = BTreeSet::new();
    for a in -reach..=reach {
        for b in -reach..=reach {
            let z = QuadInt::new(ring, a, b);
            if qnorm(z) < bound && z.is_prime() && !ring.ramified_prime().is_associate(z) && z.is_primary() {
                found.insert((qnorm(z), z));
            }
        }
    }
    found.into_iter().map(|(_, z)| z).collect()
}

/// A complete set of representatives of the residue field `O/π`.
pub fn residue_system(pi: QuadInt) -> Vec<QuadInt> {
    let n = qnorm(pi);
    let ring = pi.ring;
    if arith::is_prime(n as u64) {
        (0..n).map(|r| QuadInt::integer(ring, r)).collect()
    } else {
        let q = (n as f64).sqrt().round() as i64;
        (0..q).flat_map(|x| (0..q).map(move |y| QuadInt::new(ring, x, y))).collect()
    }
}

/// Whether `α` is an m-th power modulo `π`, by trying every residue.
pub fn is_power_by_enumeration(alpha: QuadInt, pi: QuadInt, m: u8) -> Result<bool> {
    for beta in residue_system(pi) {
        let mut power = pi.ring.one();
        for _ in 0..m {
            power = (power * beta).rem(pi)?;
        }
        if pi.divides(power - alpha)? {
            return Ok(true);
        }
    }
    Ok(false)
}
