//! Exhaustive verification sweeps, as run by `reciprocity verify`.

use std::fmt;
use std::str::FromStr;

use crate::arith::{primes_in, rat, support, Place, Rational};
use crate::characters::{lambda4, lambda8, legendre, legendre_via_reciprocity, Sign};
use crate::error::{Error, Result};
use crate::hilbert::{product_check, rousseau_check, symbol_at};
use crate::padic::{isotropy_oracle, norm_test};
use crate::residue::{
    is_power_by_enumeration, primary_primes, reciprocity_check, residue_symbol, residue_system, Ring,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    Qr,
    Product,
    Oracle,
    Rousseau,
    Cubic,
    Quartic,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Qr, Suite::Product, Suite::Oracle, Suite::Rousseau, Suite::Cubic, Suite::Quartic];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Qr => "qr",
            Suite::Product => "product",
            Suite::Oracle => "oracle",
            Suite::Rousseau => "rousseau",
            Suite::Cubic => "cubic",
            Suite::Quartic => "quartic",
        }
    }

    /// The bound each suite uses when none is given.
    pub fn default_bound(self) -> u64 {
        match self {
            Suite::Qr => 200,
            Suite::Product => 30,
            Suite::Oracle => 13,
            Suite::Rousseau => 50,
            Suite::Cubic | Suite::Quartic => 150,
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Domain(format!("unknown suite {s:?}")))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub inputs: String,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub suite: Suite,
    pub bound: u64,
    pub cases: usize,
    pub failures: Vec<Failure>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    cases: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn new() -> Self {
        Tally { cases: 0, failures: Vec::new() }
    }

    fn check(&mut self, ok: bool, inputs: impl FnOnce() -> String, detail: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(Failure { inputs: inputs(), detail: detail() });
        }
    }

    fn finish(self, suite: Suite, bound: u64) -> SuiteReport {
        SuiteReport { suite, bound, cases: self.cases, failures: self.failures }
    }
}

pub fn run_suite(suite: Suite, bound: u64) -> Result<SuiteReport> {
    let mut tally = Tally::new();
    match suite {
        Suite::Qr => quadratic_reciprocity(bound, &mut tally)?,
        Suite::Product => product_formula(bound, &mut tally)?,
        Suite::Oracle => oracle_agreement(bound, &mut tally)?,
        Suite::Rousseau => rousseau(bound, &mut tally)?,
        Suite::Cubic => power_reciprocity(Ring::Eisenstein, bound, &mut tally)?,
        Suite::Quartic => power_reciprocity(Ring::Gaussian, bound, &mut tally)?,
    }
    Ok(tally.finish(suite, bound))
}

fn quadratic_reciprocity(bound: u64, tally: &mut Tally) -> Result<()> {
    let primes = primes_in(3, bound);
    for &p in &primes {
        let pr = rat(p as i64);
        tally.check(legendre(&rat(-1), p)? == lambda4(&pr)?, || format!("p={p}"), || "λ_p(-1) ≠ λ_4(p)".into());
        tally.check(legendre(&rat(2), p)? == lambda8(&pr)?, || format!("p={p}"), || "λ_p(2) ≠ λ_8(p)".into());
        for &q in primes.iter().filter(|&&q| q != p) {
            let twisted = (lambda4(&pr)?.to_i8() as i64 * p as i64).rem_euclid(q as i64);
            let lhs = legendre(&rat(q as i64), p)?;
            let rhs = legendre(&rat(twisted), q)?;
            tally.check(lhs == rhs, || format!("p={p} q={q}"), || format!("λ_p(q) = {lhs}, λ_q(λ_4(p)p) = {rhs}"));
            let descent = legendre_via_reciprocity(&rat(q as i64), p)?;
            tally.check(descent == lhs, || format!("p={p} q={q}"), || format!("descent gave {descent}, Euler {lhs}"));
        }
    }
    Ok(())
}

/// Odd primes below this are spot-checked off the support.
const SPOT_CHECK_PRIMES: u64 = 50;

fn product_formula(bound: u64, tally: &mut Tally) -> Result<()> {
    let b = bound as i64;
    let spot = primes_in(3, SPOT_CHECK_PRIMES);
    for x in (-b..=b).filter(|&x| x != 0) {
        for y in (-b..=b).filter(|&y| y != 0) {
            let (a, c) = (rat(x), rat(y));
            let report = product_check(&a, &c)?;
            tally.check(report.product == Sign::Plus, || format!("a={x} b={y}"), || "product of local symbols is -1".into());
            let places = support(&a, &c)?;
            for &l in spot.iter().filter(|&&l| !places.contains(&Place::Finite(l))) {
                let s = symbol_at(&a, &c, Place::Finite(l))?;
                tally.check(s == Sign::Plus, || format!("a={x} b={y} l={l}"), || "off-support symbol is -1".into());
            }
        }
    }
    Ok(())
}

/// Arguments for the oracle grid at `p`.
pub fn oracle_grid(p: u64) -> Vec<Rational> {
    let p = p as i64;
    let mut vals: Vec<i64> = [1, 2, 3, 5, 6, 7, 10, p, 2 * p, 3 * p].into_iter().flat_map(|v| [v, -v]).collect();
    vals.sort_unstable();
    vals.dedup();
    vals.into_iter().map(rat).collect()
}

fn oracle_agreement(bound: u64, tally: &mut Tally) -> Result<()> {
    for p in primes_in(2, bound + 1) {
        let grid = oracle_grid(p);
        for a in &grid {
            for b in &grid {
                let symbol = symbol_at(a, b, Place::Finite(p))?;
                let solvable = isotropy_oracle(a, b, p)?.is_solvable();
                tally.check(
                    solvable == (symbol == Sign::Plus),
                    || format!("a={a} b={b} p={p}"),
                    || format!("symbol {symbol}, oracle solvable = {solvable}"),
                );
                let norm = norm_test(a, b, p)?;
                tally.check(
                    norm == (symbol == Sign::Plus),
                    || format!("a={a} b={b} p={p}"),
                    || format!("symbol {symbol}, norm test = {norm}"),
                );
            }
        }
    }
    Ok(())
}

fn rousseau(bound: u64, tally: &mut Tally) -> Result<()> {
    let primes = primes_in(3, bound);
    for &p in &primes {
        for &q in primes.iter().filter(|&&q| q != p) {
            let r = rousseau_check(p, q)?;
            tally.check(r.lhs == r.rhs, || format!("p={p} q={q}"), || format!("lhs {} rhs {}", r.lhs, r.rhs));
        }
    }
    Ok(())
}

fn power_reciprocity(ring: Ring, bound: u64, tally: &mut Tally) -> Result<()> {
    let m = ring.symbol_order();
    let bound = i64::try_from(bound).map_err(|_| Error::TooLarge(bound.to_string()))?;
    let primes = primary_primes(ring, bound);
    for (i, &pi) in primes.iter().enumerate() {
        for &theta in &primes[i + 1..] {
            if pi.is_associate(theta) {
                continue;
            }
            let (lhs, rhs) = reciprocity_check(pi, theta, m)?;
            tally.check(lhs == rhs, || format!("pi={pi} theta={theta}"), || format!("lhs {lhs} rhs {rhs}"));
        }
        let residues: Vec<_> = residue_system(pi).into_iter().filter(|z| !z.is_zero() && !pi.divides(*z).unwrap_or(true)).collect();
        for &alpha in &residues {
            let chi = residue_symbol(alpha, pi, m)?;
            let power = is_power_by_enumeration(alpha, pi, m)?;
            tally.check(
                chi.is_one() == power,
                || format!("alpha={alpha} pi={pi}"),
                || format!("symbol {chi}, m-th power = {power}"),
            );
        }
    }
    Ok(())
}

/// Convenience for callers that only need a yes/no answer.
pub fn all_pass(suite: Suite, bound: u64) -> Result<bool> {
    Ok(run_suite(suite, bound)?.passed())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_bounds_pass() {
        for suite in Suite::ALL {
            let bound = match suite {
                Suite::Oracle => 5,
                Suite::Cubic | Suite::Quartic => 60,
                _ => 20,
            };
            let report = run_suite(suite, bound).unwrap();
            assert!(report.cases > 0, "{suite}");
            assert!(report.passed(), "{suite}: {:?}", report.failures.first());
        }
    }

    #[test]
    fn suite_names_round_trip() {
        for suite in Suite::ALL {
            assert_eq!(suite.name().parse::<Suite>(), Ok(suite));
        }
        assert!("nope".parse::<Suite>().is_err());
    }
}
