//! Brute-force decision of `ax² + by² = 1` over Q_p.
//!
//! The search never consults a Hilbert symbol formula. It looks for a
//! primitive zero of `aX² + bY² - Z²` modulo `p^k`, digit by digit, until
//! some coordinate's partial derivative has valuation `t` with `k > 2t`; at
//! that point Hensel's lemma produces a genuine zero in Z_p³. If every branch
//! dies out first, no primitive zero exists and the equation is insoluble.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::{inv_mod_big, is_square, p_pow, split_valuation, PadicApprox, DEFAULT_PRECISION};
use crate::arith::{is_prime, rat, vp_decompose, Rational};
use crate::error::{Error, Result};

/// The oracle enumerates `p²` residues per branch at the first digit, so it
/// is restricted to small primes.
pub const ORACLE_PRIME_LIMIT: u64 = 1000;

/// Extra digits tried beyond the initial depth before giving up.
const DEEPENING: u32 = 8;

/// A solution `(x, y)` of `ax² + by² = 1` in Q_p.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsotropyWitness {
    pub x: PadicApprox,
    pub y: PadicApprox,
    /// Set when the approximation came from a Hensel-certified zero, so an
    /// exact solution in Q_p exists near it.
    pub certified: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Isotropy {
    Solvable(IsotropyWitness),
    /// No primitive zero survives modulo `p^depth`.
    NotSolvable { depth: u32 },
}

impl Isotropy {
    pub fn is_solvable(&self) -> bool {
        matches!(self, Isotropy::Solvable(_))
    }
}

/// `x = coef * scale²` with `v_p(coef)` in `{0, 1}`.
struct Normalized {
    coef: BigInt,
    scale: Rational,
}

fn normalize(x: &Rational, p: u64) -> Normalized {
    let mut coef = x.numer() * x.denom();
    let mut scale = Rational::new(BigInt::one(), x.denom().clone());
    let p2 = BigInt::from(p * p);
    while coef.is_multiple_of(&p2) {
        coef /= &p2;
        scale *= rat(p as i64);
    }
    Normalized { coef, scale }
}

fn valuation_of(n: &BigInt, p: u64) -> Option<u32> {
    if n.is_zero() {
        None
    } else {
        Some(split_valuation(n, p).0)
    }
}

/// The ternary form `c0 X² + c1 Y² + c2 Z²` with `c2 = -1`.
struct Form {
    p: u64,
    coefs: [BigInt; 3],
}

/// One way of pinning down a primitive triple up to unit scaling: the
/// coordinate set to 1, and the coordinates forced to vanish mod p.
struct Branch {
    fixed: usize,
    divisible: &'static [usize],
}

const BRANCHES: [Branch; 3] = [
    Branch { fixed: 2, divisible: &[] },
    Branch { fixed: 0, divisible: &[2] },
    Branch { fixed: 1, divisible: &[0, 2] },
];

enum Search {
    Certified { triple: [BigInt; 3], var: usize, t: u32 },
    Exhausted,
    Truncated,
}

impl Form {
    fn eval(&self, v: &[BigInt; 3]) -> BigInt {
        self.coefs.iter().zip(v).map(|(c, x)| c * x * x).sum()
    }

    /// Coordinate whose derivative certifies a zero mod `p^depth`.
    fn certify(&self, v: &[BigInt; 3], depth: u32) -> Option<(usize, u32)> {
        (0..3)
            .filter_map(|i| {
                let t = valuation_of(&(BigInt::from(2) * &self.coefs[i] * &v[i]), self.p)?;
                (depth > 2 * t).then_some((i, t))
            })
            .min_by_key(|&(_, t)| t)
    }

    fn search(&self, max_depth: u32) -> Search {
        let mut truncated = false;
        for branch in &BRANCHES {
            let mut start = [BigInt::zero(), BigInt::zero(), BigInt::zero()];
            start[branch.fixed] = BigInt::one();
            match self.descend(branch, start, 0, max_depth) {
                Search::Certified { triple, var, t } => return Search::Certified { triple, var, t },
                Search::Truncated => truncated = true,
                Search::Exhausted => {}
            }
        }
        if truncated {
            Search::Truncated
        } else {
            Search::Exhausted
        }
    }

    /// Extends a zero mod `p^depth` by one digit in each free coordinate.
    fn descend(&self, branch: &Branch, node: [BigInt; 3], depth: u32, max_depth: u32) -> Search {
        if depth > 0 {
            if let Some((var, t)) = self.certify(&node, depth) {
                return Search::Certified { triple: node, var, t };
            }
            if depth == max_depth {
                return Search::Truncated;
            }
        }
        let p = self.p;
        let place = p_pow(p, depth);
        let modulus = &place * BigInt::from(p);
        let free: Vec<usize> = (0..3).rev().filter(|&i| i != branch.fixed).collect();
        let digits = |i: usize| if depth == 0 && branch.divisible.contains(&i) { 1 } else { p };
        let mut truncated = false;
        for d0 in 0..digits(free[0]) {
            for d1 in 0..digits(free[1]) {
                let mut child = node.clone();
                child[free[0]] += &place * d0;
                child[free[1]] += &place * d1;
                if !self.eval(&child).is_multiple_of(&modulus) {
                    continue;
                }
                match self.descend(branch, child, depth + 1, max_depth) {
                    found @ Search::Certified { .. } => return found,
                    Search::Truncated => truncated = true,
                    Search::Exhausted => {}
                }
            }
        }
        if truncated {
            Search::Truncated
        } else {
            Search::Exhausted
        }
    }

    /// Newton iteration in coordinate `var` until the form vanishes mod `p^target`.
    fn lift(&self, mut v: [BigInt; 3], var: usize, t: u32, target: u32) -> Result<[BigInt; 3]> {
        let m = p_pow(self.p, target);
        let pt = p_pow(self.p, t);
        for _ in 0..64 {
            let f = self.eval(&v).mod_floor(&m);
            if f.is_zero() {
                return Ok(v);
            }
            let deriv = BigInt::from(2) * &self.coefs[var] * &v[var];
            let (q, r) = deriv.div_rem(&pt);
            let (fq, fr) = f.div_rem(&pt);
            if !r.is_zero() || !fr.is_zero() {
                return Err(Error::Internal("Hensel step lost divisibility".into()));
            }
            let inv = inv_mod_big(&q, &m).ok_or_else(|| Error::Internal("derivative unit not invertible".into()))?;
            v[var] = (&v[var] - fq * inv).mod_floor(&m);
        }
        Err(Error::Internal("Hensel lifting did not converge".into()))
    }
}

/// Decides whether `ax² + by² = 1` has a solution in Q_p.
///
/// The search depth starts at `2 v_p(4ab) + 3` (after normalizing `a`, `b`
/// to valuation 0 or 1) and deepens up to eight more digits.
pub fn isotropy_oracle(a: &Rational, b: &Rational, p: u64) -> Result<Isotropy> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Zero);
    }
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if p > ORACLE_PRIME_LIMIT {
        return Err(Error::Domain(format!(
            "the brute-force oracle only handles primes up to {ORACLE_PRIME_LIMIT}, got {p}"
        )));
    }
    let na = normalize(a, p);
    let nb = normalize(b, p);
    let form = Form { p, coefs: [na.coef.clone(), nb.coef.clone(), -BigInt::one()] };
    let disc = BigInt::from(4) * &na.coef * &nb.coef;
    let k0 = 2 * split_valuation(&disc, p).0 + 3;

    for depth in k0..=k0 + DEEPENING {
        match form.search(depth) {
            Search::Exhausted => return Ok(Isotropy::NotSolvable { depth }),
            Search::Truncated => continue,
            Search::Certified { triple, var, t } => {
                let witness = build_witness(&form, triple, var, t, &na, &nb)?;
                check_witness(a, b, &witness)?;
                return Ok(Isotropy::Solvable(witness));
            }
        }
    }
    Err(Error::Undecided(format!("({a})x² + ({b})y² = 1 over Q_{p}")))
}

fn build_witness(
    form: &Form,
    triple: [BigInt; 3],
    var: usize,
    t: u32,
    na: &Normalized,
    nb: &Normalized,
) -> Result<IsotropyWitness> {
    let p = form.p;
    // headroom for dividing by Z and by the normalizing scales
    let scale_loss = [&na.scale, &nb.scale]
        .iter()
        .map(|s| vp_decompose(s, p).map(|(v, _)| v.unsigned_abs() as u32))
        .sum::<Result<u32>>()?;
    let target = DEFAULT_PRECISION + 2 * t + scale_loss + 16;
    let lifted = form.lift(triple, var, t, target)?;
    let known = target - t;
    let [x, y, z] = lifted.map(|c| PadicApprox::from_integer_mod(&c, p, known));
    let (x, y, z) = (x?, y?, z?);
    let ca = PadicApprox::from_integer_mod(&na.coef, p, known)?;
    let cb = PadicApprox::from_integer_mod(&nb.coef, p, known)?;

    let (x, y) = if !z.is_zero() {
        (x.div(&z)?, y.div(&z)?)
    } else {
        // aX² + bY² = 0: the binary form is a hyperbolic plane and
        // represents 1 through the factorization a(x - sy)(x + sy).
        let one = PadicApprox::from_integer_mod(&BigInt::one(), p, known)?;
        let two = PadicApprox::from_integer_mod(&BigInt::from(2), p, known)?;
        if x.valuation() == Some(0) {
            let s = y.div(&x)?;
            let inv_a = ca.inv()?;
            (one.add(&inv_a)?.div(&two)?, s.mul(&one.sub(&inv_a)?)?.div(&two)?)
        } else {
            let s = x.div(&y)?;
            let inv_b = cb.inv()?;
            (s.mul(&one.sub(&inv_b)?)?.div(&two)?, one.add(&inv_b)?.div(&two)?)
        }
    };
    let sa = PadicApprox::from_rational(&na.scale, p, known)?;
    let sb = PadicApprox::from_rational(&nb.scale, p, known)?;
    Ok(IsotropyWitness { x: x.div(&sa)?, y: y.div(&sb)?, certified: true })
}

fn check_witness(a: &Rational, b: &Rational, w: &IsotropyWitness) -> Result<()> {
    let p = w.x.prime();
    let n = DEFAULT_PRECISION + 8;
    let pa = PadicApprox::from_rational(a, p, n)?;
    let pb = PadicApprox::from_rational(b, p, n)?;
    let one = PadicApprox::from_rational(&rat(1), p, n)?;
    let lhs = pa.mul(&w.x.mul(&w.x)?)?.add(&pb.mul(&w.y.mul(&w.y)?)?)?;
    if lhs.agrees_with(&one)? && lhs.absolute_precision() >= DEFAULT_PRECISION as i64 {
        Ok(())
    } else {
        Err(Error::Internal(format!("witness does not satisfy the equation: got {lhs}")))
    }
}

/// Whether `a` is a norm from `Q_p(√b)`.
///
/// When `b` is not a square, this decides `x² - by² = a` through the oracle
/// applied to the equivalent equation `(1/a)x² + (-b/a)y² = 1`.
pub fn norm_test(a: &Rational, b: &Rational, p: u64) -> Result<bool> {
    if a.is_zero() || b.is_zero() {
        return Err(Error::Zero);
    }
    if is_square(b, p)? {
        return Ok(true);
    }
    let inv_a = a.recip();
    Ok(isotropy_oracle(&inv_a, &(-b * &inv_a), p)?.is_solvable())
}
