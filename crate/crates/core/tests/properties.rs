use proptest::prelude::*;

use reciprocity::arith::{factor, primes_in, ratio, vp_decompose, Place};
use reciprocity::characters::legendre;
use reciprocity::hilbert::{product_check, symbol_at};
use reciprocity::padic::{PadicApprox, DEFAULT_PRECISION};
use reciprocity::Sign;

fn nonzero() -> impl Strategy<Value = i64> {
    (-5000i64..=5000).prop_filter("nonzero", |x| *x != 0)
}

fn odd_prime() -> impl Strategy<Value = u64> {
    prop::sample::select(primes_in(3, 400))
}

fn place() -> impl Strategy<Value = Place> {
    prop_oneof![Just(Place::Infinity), prop::sample::select(primes_in(2, 60)).prop_map(Place::Finite)]
}

proptest! {
    #[test]
    fn factorization_round_trips(n in nonzero(), d in 1i64..5000) {
        let x = ratio(n, d);
        prop_assert_eq!(factor(&x).unwrap().value(), x);
    }

    #[test]
    fn decomposition_recombines(n in nonzero(), d in 1i64..5000, p in prop::sample::select(primes_in(2, 50))) {
        let x = ratio(n, d);
        let (v, u) = vp_decompose(&x, p).unwrap();
        let pv = ratio(p as i64, 1).pow(v as i32);
        prop_assert_eq!(u.clone() * pv, x);
        prop_assert_eq!(vp_decompose(&u, p).unwrap().0, 0);
    }

    #[test]
    fn legendre_is_multiplicative(a in nonzero(), b in nonzero(), p in odd_prime()) {
        prop_assume!(a % p as i64 != 0 && b % p as i64 != 0);
        let ab = legendre(&ratio(a * b, 1), p).unwrap();
        prop_assert_eq!(ab, legendre(&ratio(a, 1), p).unwrap() * legendre(&ratio(b, 1), p).unwrap());
    }

    #[test]
    fn hilbert_is_bimultiplicative(a in nonzero(), b in nonzero(), c in nonzero(), v in place()) {
        let (a, b, c) = (ratio(a, 1), ratio(b, 1), ratio(c, 1));
        let joint = symbol_at(&a, &(b.clone() * c.clone()), v).unwrap();
        prop_assert_eq!(joint, symbol_at(&a, &b, v).unwrap() * symbol_at(&a, &c, v).unwrap());
    }

    #[test]
    fn product_formula_on_rationals(n1 in nonzero(), d1 in 1i64..500, n2 in nonzero(), d2 in 1i64..500) {
        let report = product_check(&ratio(n1, d1), &ratio(n2, d2)).unwrap();
        prop_assert_eq!(report.product, Sign::Plus);
    }

    #[test]
    fn padic_field_operations(n1 in nonzero(), d1 in 1i64..500, n2 in nonzero(), d2 in 1i64..500,
                              p in prop::sample::select(primes_in(2, 30))) {
        let (x, y) = (ratio(n1, d1), ratio(n2, d2));
        let px = PadicApprox::from_rational(&x, p, DEFAULT_PRECISION).unwrap();
        let py = PadicApprox::from_rational(&y, p, DEFAULT_PRECISION).unwrap();
        let prod = PadicApprox::from_rational(&(x.clone() * y.clone()), p, DEFAULT_PRECISION).unwrap();
        prop_assert!(px.mul(&py).unwrap().agrees_with(&prod).unwrap());
        prop_assert!(px.mul(&px.inv().unwrap()).unwrap().agrees_with(&PadicApprox::from_rational(&ratio(1, 1), p, DEFAULT_PRECISION).unwrap()).unwrap());
        if x != y {
            let diff = PadicApprox::from_rational(&(x - y), p, DEFAULT_PRECISION).unwrap();
            prop_assert!(px.sub(&py).unwrap().agrees_with(&diff).unwrap());
        }
    }
}
