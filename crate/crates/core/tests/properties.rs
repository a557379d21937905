//! Randomized algebraic laws, checked with proptest.

use proptest::collection::vec;
use proptest::prelude::*;

use logalg::algebra::{Fe, Field, FieldCtx, Poly, RatFunc, XPoly};
use logalg::drinfeld::{star, DrinfeldModule};
use logalg::laurent::LaurentSeries;
use logalg::logalg::MuTable;
use logalg::lvalues::LEvaluator;
use logalg::twisted::TwistedPoly;

fn ctx(q: u64) -> FieldCtx {
    FieldCtx::from_q(q, 1).unwrap()
}

fn poly_of(f: &Field, c: &[u32]) -> Poly {
    Poly::from_coeffs(f, c.iter().map(|&v| Fe(v % f.size())).collect())
}

fn monic_of(f: &Field, c: &[u32]) -> Poly {
    let mut v: Vec<Fe> = c.iter().map(|&x| Fe(x % f.size())).collect();
    v.push(Fe::ONE);
    Poly::from_coeffs(f, v)
}

/// κ lists whose last entry is nonzero.
fn module_of(f: &Field, kappa: &[Vec<u32>]) -> DrinfeldModule {
    let mut k: Vec<Poly> = kappa.iter().map(|c| poly_of(f, c)).collect();
    if k.last().unwrap().is_zero() {
        *k.last_mut().unwrap() = Poly::one(f);
    }
    DrinfeldModule::new(f, k).unwrap()
}

fn q_small() -> impl Strategy<Value = u64> {
    prop_oneof![Just(2u64), Just(3), Just(4), Just(5)]
}

fn coeffs(len: std::ops::RangeInclusive<usize>) -> impl Strategy<Value = Vec<u32>> {
    vec(0u32..25, len)
}

fn series(f: &Field, low: i64, c: &[u32], err: Option<i64>) -> LaurentSeries {
    LaurentSeries::new(f, 1, c.iter().enumerate().map(|(i, &v)| (low + i as i64, Fe(v % f.size()))), err)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn ultrametric(q in q_small(), la in -8i64..8, lb in -8i64..8, a in coeffs(0..=6), b in coeffs(0..=6), ea in -20i64..-9, eb in -20i64..-9) {
        let f = ctx(q).ext;
        let (x, y) = (series(&f, la, &a, Some(ea)), series(&f, lb, &b, Some(eb)));
        let bound = [x.magnitude().upper(), y.magnitude().upper()].into_iter().flatten().max();
        let sum = x.add(&y).magnitude();
        match bound {
            Some(m) => prop_assert!(sum.at_most(m)),
            None => prop_assert!(sum.upper().is_none()),
        }
        prop_assert!(x.sub(&x).magnitude().at_most(ea));
    }

    #[test]
    fn embedding_is_multiplicative(q in q_small(), n1 in coeffs(1..=4), d1 in coeffs(0..=3), n2 in coeffs(1..=4), d2 in coeffs(0..=3), prec in 10i64..40) {
        let c = ctx(q);
        let f = &c.base;
        let r1 = RatFunc::new(poly_of(f, &n1), monic_of(f, &d1)).unwrap();
        let r2 = RatFunc::new(poly_of(f, &n2), monic_of(f, &d2)).unwrap();
        let (e1, e2) = (LaurentSeries::embed(&c, &r1, 1, prec), LaurentSeries::embed(&c, &r2, 1, prec));
        let prod = e1.mul(&e2);
        let direct = LaurentSeries::embed(&c, &r1.mul_rf(&r2), 1, prec);
        let bound = prod.err().unwrap_or(-prec).max(-prec);
        prop_assert!(prod.distance(&direct).at_most(bound));
    }

    #[test]
    fn nearest_a_recovers_polynomials(q in q_small(), a in coeffs(0..=6)) {
        let c = ctx(q);
        let p = poly_of(&c.base, &a);
        let (b, dist) = LaurentSeries::embed_poly(&c, &p, 1).nearest_a().unwrap();
        prop_assert_eq!(b, p);
        prop_assert!(dist.upper().is_none_or(|m| m < 0));
    }

    #[test]
    fn phi_is_a_ring_homomorphism(q in prop_oneof![Just(2u64), Just(3)], kappa in vec(coeffs(0..=2), 1..=2), a in coeffs(0..=2), b in coeffs(0..=2)) {
        let f = ctx(q).base;
        let phi = module_of(&f, &kappa);
        let (a, b) = (poly_of(&f, &a[..a.len().min(2)]), poly_of(&f, &b));
        let (pa, pb) = (phi.phi_of(&a), phi.phi_of(&b));
        prop_assert_eq!(phi.phi_of(&(&a * &b)), pa.tmul(&pb).unwrap());
        prop_assert_eq!(phi.phi_of(&(&a + &b)), pa.add(&pb));
        // commutativity of the image is a nontrivial consequence
        prop_assert_eq!(pa.tmul(&pb).unwrap(), pb.tmul(&pa).unwrap());
    }

    #[test]
    fn twisted_multiplication_is_associative(q in q_small(), a in vec(coeffs(0..=2), 1..=3), b in vec(coeffs(0..=2), 1..=3), c in vec(coeffs(0..=2), 1..=3)) {
        let f = ctx(q).base;
        let phi = DrinfeldModule::carlitz(&f);
        let ring = phi.ring();
        let tp = |v: &[Vec<u32>]| TwistedPoly::new(ring, v.iter().map(|x| poly_of(&f, x)).collect());
        let (x, y, z) = (tp(&a), tp(&b), tp(&c));
        prop_assert_eq!(x.tmul(&y).unwrap().tmul(&z).unwrap(), x.tmul(&y.tmul(&z).unwrap()).unwrap());
    }

    #[test]
    fn star_is_a_monoid_action(q in prop_oneof![Just(2u64), Just(3)], a in coeffs(0..=1), b in coeffs(0..=1), beta in vec(coeffs(0..=2), 1..=3)) {
        let f = ctx(q).base;
        let (a, b) = (monic_of(&f, &a), monic_of(&f, &b));
        let beta = XPoly::from_poly_terms(&f, beta.iter().enumerate().map(|(i, c)| (i as u64, poly_of(&f, c))));
        prop_assert_eq!(star(&(&a * &b), &beta), star(&a, &star(&b, &beta)));
        prop_assert_eq!(star(&Poly::one(&f), &beta), beta);
    }

    #[test]
    fn exp_and_log_are_inverse(q in q_small(), kappa in vec(coeffs(0..=2), 1..=3)) {
        let f = ctx(q).base;
        let phi = module_of(&f, &kappa);
        let n = 3;
        let (alpha, beta) = (phi.exp_coeffs(n).unwrap(), phi.log_coeffs(n));
        let deg = f.degree();
        for i in 0..=n {
            let s = (0..=i).fold(RatFunc::zero(&f), |acc, j| acc.add_rf(&alpha[j].mul_rf(&beta[i - j].pow_char_power(deg * j as u32))));
            prop_assert_eq!(s, if i == 0 { RatFunc::one(&f) } else { RatFunc::zero(&f) });
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn mu_is_multiplicative(q in prop_oneof![Just(2u64), Just(3)], kappa in vec(coeffs(0..=2), 1..=3), a in coeffs(1..=2), b in coeffs(1..=3)) {
        let f = ctx(q).base;
        let phi = module_of(&f, &kappa);
        let (a, b) = (monic_of(&f, &a), monic_of(&f, &b));
        prop_assume!(a.gcd(&b).is_one());
        let mu = MuTable::build(&phi, 6).unwrap();
        prop_assert_eq!(mu.get(&(&a * &b)).unwrap(), &(mu.get(&a).unwrap() * mu.get(&b).unwrap()));
    }

    /// The certified bound at depth N covers what blocks N+1 and N+2 actually add.
    #[test]
    fn tail_bound_is_sound(q in prop_oneof![Just(2u64), Just(3)], kappa in vec(coeffs(0..=2), 1..=2), n in 2usize..6, s in 0i64..2) {
        let c = ctx(q);
        let phi = module_of(&c.base, &kappa);
        let prec = 60;
        let short = LEvaluator::new(&phi, &c, n).unwrap().goss_l(true, s, prec).unwrap();
        let long = LEvaluator::new(&phi, &c, n + 2).unwrap().goss_l(true, s, prec).unwrap();
        prop_assert_eq!(short.depth, n);
        prop_assert!(short.series.distance(&long.series).at_most(short.tail_bound.max(-prec)));
    }
}
