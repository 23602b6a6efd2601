//! Acceptance checks, one line per criterion.
//!
//! Run with `cargo test -p reciprocity --test acceptance -- --nocapture`.

use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use reciprocity::arith::{primes_in, rat, ratio, support, Place, Rational};
use reciprocity::characters::{lambda4, lambda48, lambda8, legendre, DyadicCharacter, Sign};
use reciprocity::hilbert::{product_check, rousseau_check, symbol_at};
use reciprocity::padic::{hensel_sqrt, is_square, isotropy_oracle, norm_test};
use reciprocity::residue::{
    is_power_by_enumeration, primary_primes, reciprocity_check, residue_symbol, residue_system, Ring,
};
use reciprocity::verify::oracle_grid;

struct Outcome {
    failures: Vec<String>,
    cases: usize,
}

impl Outcome {
    fn new() -> Self {
        Outcome { failures: Vec::new(), cases: 0 }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

fn criterion(n: u32, title: &str, budget: Duration, body: impl FnOnce(&mut Outcome)) -> bool {
    let start = Instant::now();
    let mut out = Outcome::new();
    body(&mut out);
    let elapsed = start.elapsed();
    let in_time = elapsed < budget;
    let pass = out.failures.is_empty() && in_time;
    println!(
        "criterion {n}: {} {title} ({} cases, {} failures, {:.2}s of {}s)",
        if pass { "PASS" } else { "FAIL" },
        out.cases,
        out.failures.len(),
        elapsed.as_secs_f64(),
        budget.as_secs()
    );
    for f in out.failures.iter().take(5) {
        println!("    {f}");
    }
    pass
}

/// Euler's criterion computed directly on integers.
fn euler(a: i64, p: u64) -> Sign {
    let r = BigInt::from(a).mod_floor(&BigInt::from(p)).modpow(&BigInt::from((p - 1) / 2), &BigInt::from(p));
    if r.is_one() {
        Sign::Plus
    } else {
        Sign::Minus
    }
}

fn signed_parity(e: u64) -> Sign {
    Sign::from_parity(e % 2 == 1)
}

fn product_formula(out: &mut Outcome) {
    let spot = primes_in(2, 100);
    for x in (-30i64..=30).filter(|&x| x != 0) {
        for y in (-30i64..=30).filter(|&y| y != 0) {
            let (a, b) = (rat(x), rat(y));
            let report = product_check(&a, &b).unwrap();
            out.check(report.product == Sign::Plus, || format!("a={x} b={y}: product -1"));
            let places = support(&a, &b).unwrap();
            for &l in spot.iter().filter(|&&l| !places.contains(&Place::Finite(l))) {
                let s = symbol_at(&a, &b, Place::Finite(l)).unwrap();
                out.check(s == Sign::Plus, || format!("a={x} b={y} l={l}: off-support symbol -1"));
            }
        }
    }
}

fn quadratic_reciprocity(out: &mut Outcome) {
    let primes = primes_in(3, 200);
    for &p in &primes {
        let four = if p % 4 == 1 { Sign::Plus } else { Sign::Minus };
        let eight = if p % 8 == 1 || p % 8 == 7 { Sign::Plus } else { Sign::Minus };
        out.check(lambda4(&rat(p as i64)).unwrap() == four, || format!("λ_4({p})"));
        out.check(lambda8(&rat(p as i64)).unwrap() == eight, || format!("λ_8({p})"));
        out.check(legendre(&rat(-1), p).unwrap() == four, || format!("λ_{p}(-1)"));
        out.check(legendre(&rat(2), p).unwrap() == eight, || format!("λ_{p}(2)"));
        for &q in primes.iter().filter(|&&q| q != p) {
            let lhs = legendre(&rat(q as i64), p).unwrap();
            out.check(lhs == euler(q as i64, p), || format!("λ_{p}({q}) disagrees with Euler"));
            let twisted = (four.to_i8() as i64 * p as i64).rem_euclid(q as i64);
            let rhs = legendre(&rat(twisted), q).unwrap();
            out.check(lhs == rhs, || format!("p={p} q={q}: {lhs} vs {rhs}"));
        }
    }
}

fn oracle_equivalence(out: &mut Outcome) {
    for p in [2u64, 3, 5, 7, 11, 13] {
        let grid = oracle_grid(p);
        for a in &grid {
            for b in &grid {
                let symbol = symbol_at(a, b, Place::Finite(p)).unwrap();
                let solvable = isotropy_oracle(a, b, p).unwrap().is_solvable();
                out.check(solvable == (symbol == Sign::Plus), || {
                    format!("a={a} b={b} p={p}: symbol {symbol}, oracle {solvable}")
                });
                let norm = norm_test(a, b, p).unwrap();
                out.check(norm == (symbol == Sign::Plus), || {
                    format!("a={a} b={b} p={p}: symbol {symbol}, norm test {norm}")
                });
            }
        }
    }
}

fn odd_prime_case(out: &mut Outcome) {
    let primes = primes_in(3, 100);
    for &p in &primes {
        for &q in primes.iter().filter(|&&q| q != p) {
            let (a, b) = (rat(p as i64), rat(q as i64));
            let two = signed_parity(((p - 1) / 2) * ((q - 1) / 2));
            let at_p = euler(q as i64, p);
            let at_q = euler(p as i64, q);
            let expected = [
                (Place::Infinity, Sign::Plus),
                (Place::Finite(2), two),
                (Place::Finite(p), at_p),
                (Place::Finite(q), at_q),
            ];
            for (v, s) in expected {
                let got = symbol_at(&a, &b, v).unwrap();
                out.check(got == s, || format!("(p={p}, q={q})_{v}: expected {s}, got {got}"));
            }
            out.check(two * at_p * at_q == Sign::Plus, || format!("p={p} q={q}: identity fails"));
        }
    }
}

fn rousseau(out: &mut Outcome) {
    let primes = primes_in(3, 50);
    for &p in &primes {
        for &q in primes.iter().filter(|&&q| q != p) {
            let r = rousseau_check(p, q).unwrap();
            out.check(r.lhs == r.rhs, || format!("p={p} q={q}: lhs {} rhs {}", r.lhs, r.rhs));
            out.check(r.legendre_qp == euler(q as i64, p), || format!("p={p} q={q}: λ_p(q) extraction"));
            out.check(r.legendre_pq == euler(p as i64, q), || format!("p={p} q={q}: λ_q(p) extraction"));
        }
    }
}

fn hensel(out: &mut Outcome) {
    for p in primes_in(2, 50) {
        let modulus = BigInt::from(p).pow(20);
        for x in (-100i64..=100).filter(|&x| x != 0) {
            let value = rat(x);
            if !is_square(&value, p).unwrap() {
                continue;
            }
            let root = hensel_sqrt(&value, p, 20).unwrap();
            let square = root.mul(&root).unwrap();
            let residue = square.residue(20);
            let expected = BigInt::from(x).mod_floor(&modulus);
            out.check(residue.as_ref() == Some(&expected), || format!("x={x} p={p}: root {root}"));
        }
    }
}

fn power_reciprocity(ring: Ring, out: &mut Outcome) {
    let m = ring.symbol_order();
    let primes = primary_primes(ring, 150);
    out.check(!primes.is_empty(), || format!("{ring:?}: no primary primes"));
    for (i, &pi) in primes.iter().enumerate() {
        for &theta in &primes[i + 1..] {
            if pi.is_associate(theta) {
                continue;
            }
            let (lhs, rhs) = reciprocity_check(pi, theta, m).unwrap();
            out.check(lhs == rhs, || format!("m={m} pi={pi} theta={theta}: {lhs} vs {rhs}"));
        }
        for alpha in residue_system(pi) {
            if pi.divides(alpha).unwrap() {
                continue;
            }
            let chi = residue_symbol(alpha, pi, m).unwrap();
            let power = is_power_by_enumeration(alpha, pi, m).unwrap();
            out.check(chi.is_one() == power, || format!("m={m} alpha={alpha} pi={pi}: {chi} vs {power}"));
        }
    }
}

fn character_tables(out: &mut Outcome) {
    use DyadicCharacter::*;
    let closed: [(DyadicCharacter, fn(&Rational) -> reciprocity::Result<Sign>); 3] =
        [(Four, lambda4), (Eight, lambda8), (FourEight, lambda48)];
    for (chi, f) in closed {
        for r in [1i64, 3, 5, 7] {
            let table = chi.on_residue(r as u64).unwrap();
            out.check(f(&rat(r)).unwrap() == table, || format!("{chi:?} on {r}"));
        }
        let even = chi.on_residue(7).unwrap() == Sign::Plus;
        out.check(even == (chi == Eight), || format!("{chi:?} parity"));
        out.check(chi.is_even() == even, || format!("{chi:?} is_even"));
        for a in (-999i64..=999).filter(|a| a % 2 != 0) {
            let x = rat(a);
            out.check(f(&x).unwrap() == chi.by_table(&x).unwrap(), || format!("{chi:?} on {a}"));
        }
        for n in (-99i64..=99).filter(|n| n % 2 != 0) {
            for d in (1i64..=99).filter(|d| d % 2 != 0) {
                let x = ratio(n, d);
                let r = {
                    let inv = (1..8).find(|k| (d * k).rem_euclid(8) == 1).unwrap();
                    (n * inv).rem_euclid(8) as u64
                };
                let table = chi.on_residue(r).unwrap();
                out.check(f(&x).unwrap() == table, || format!("{chi:?} on {n}/{d}"));
            }
        }
    }
    out.check(lambda48(&rat(-1)).unwrap() == Sign::Minus && lambda4(&rat(-1)).unwrap() == Sign::Minus, || {
        "odd characters on -1".into()
    });
}

#[test]
fn acceptance() {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "product formula, |a|,|b| <= 30", secs(5), product_formula),
        criterion(2, "quadratic reciprocity, p, q < 200", secs(2), quadratic_reciprocity),
        criterion(3, "oracle and norm test agree with symbol_at", secs(60), oracle_equivalence),
        criterion(4, "odd-prime local values, p, q < 100", secs(2), odd_prime_case),
        criterion(5, "Rousseau components, p, q < 50", secs(5), rousseau),
        criterion(6, "Hensel square roots to 20 digits, p < 50", secs(5), hensel),
        criterion(7, "cubic and quartic reciprocity, norm < 150", secs(30), |out| {
            power_reciprocity(Ring::Eisenstein, out);
            power_reciprocity(Ring::Gaussian, out);
        }),
        criterion(8, "dyadic character tables", secs(2), character_tables),
    ];
    let failed: Vec<usize> = results.iter().enumerate().filter(|(_, ok)| !**ok).map(|(i, _)| i + 1).collect();
    assert!(failed.is_empty(), "failing criteria: {failed:?}");
}
