use drinfeld::algebra::{APoly, Field, Fq, FqCtx, FrobField, LaurentSeries, Rat, Ring};
use drinfeld::carlitz::*;
use drinfeld::drinfeld::DrinfeldModule;
use proptest::prelude::*;

fn fq(q: u32) -> &'static FqCtx {
    FqCtx::prime(q).unwrap()
}

fn rat(p: APoly) -> Rat {
    Rat::from_poly(p)
}

fn identity_series(f: &'static FqCtx, n: usize) -> OreSeries {
    let mut c = vec![Rat::zero_in(f); n + 1];
    c[0] = Rat::one_in(f);
    OreSeries { coeffs: c }
}

#[test]
fn carlitz_functional_equation_to_prec_100() {
    let f = fq(7);
    let c = carlitz_module(f);
    let n = terms_for_prec(7, 100) - 1;
    assert_eq!(n, 2);
    let e = exp_coeffs(&c, n).unwrap();
    // Coefficient of z^{q^k} in e(Tz) − T e(z) − e(z)^q.
    let t = Rat::t(f);
    for k in 0..=n {
        let lhs = e.coeffs[k].mul(&t.frob_pow(k));
        let mut rhs = t.mul(&e.coeffs[k]);
        if k > 0 {
            rhs = rhs.add(&e.coeffs[k - 1].frob());
        }
        assert_eq!(lhs, rhs, "k = {k}");
    }
    assert!(exp_intertwines(&c, &e, &APoly::x(f)));
}

#[test]
fn carlitz_exp_log_inverse() {
    for q in [3u32, 7] {
        let f = fq(q);
        let c = carlitz_module(f);
        let n = terms_for_prec(q as u64, 50) - 1;
        let e = exp_coeffs(&c, n).unwrap();
        let l = log_coeffs(&c, n).unwrap();
        assert_eq!(e.compose(&l), identity_series(f, n));
        assert_eq!(l.compose(&e), identity_series(f, n));
    }
}

#[test]
fn zeta_trivial_precision() {
    let f = fq(5);
    for s in 1..5u64 {
        let z = carlitz_zeta(f, s, s as i64).unwrap();
        assert!(z.agrees_to(&LaurentSeries::one(f, s as i64), s as i64));
    }
    assert!(carlitz_zeta(f, 0, 10).is_err());
}

#[test]
fn zeta_one_closed_form() {
    let f = fq(7);
    let prec = 40;
    let z = carlitz_zeta(f, 1, prec).unwrap();
    // Σ_d 1/∏_{i=1}^d (T − T^{q^i})
    let t = APoly::x(f);
    let mut expected = LaurentSeries::zero(f, prec);
    let mut l = APoly::one(f);
    for d in 0..4u32 {
        if d > 0 {
            l = l.mul(&t.sub(&t.pow(7u64.pow(d))));
        }
        expected = expected.add(&LaurentSeries::from_rat(&Rat::new(APoly::one(f), l.clone()).unwrap(), prec));
    }
    assert_eq!(z, expected);
    assert_eq!(z.coeff(7).unwrap(), Fq::from_int(f, -1));
    assert_eq!(z.coeff(13).unwrap(), Fq::from_int(f, -1));
}

/// The block cutoff against the naive rule deg a ≤ ⌈N/s⌉.
#[test]
fn zeta_block_cutoff_matches_naive_sum() {
    for (q, s, prec) in [(3u32, 1u64, 8i64), (3, 2, 10), (2, 1, 12), (5, 1, 6), (3, 4, 16)] {
        let f = fq(q);
        let naive_deg = (prec as u64).div_ceil(s) as usize;
        let mut naive = LaurentSeries::zero(f, prec);
        for d in 0..=naive_deg {
            naive = naive.add(&zeta_block(f, d, s, prec));
        }
        assert_eq!(carlitz_zeta(f, s, prec).unwrap(), naive, "q={q} s={s}");
    }
}

#[test]
fn zeta_euler_product() {
    for (q, s, prec) in [(3u32, 3u64, 30i64), (7, 6, 30), (3, 2, 16), (5, 1, 8)] {
        let f = fq(q);
        assert_eq!(carlitz_zeta(f, s, prec).unwrap(), carlitz_zeta_euler(f, s, prec).unwrap(), "q={q} s={s}");
    }
}

#[test]
fn zeta_one_is_log_of_one() {
    let f = fq(7);
    let prec = 40;
    let c = carlitz_module(f);
    let l = log_coeffs(&c, 3).unwrap();
    let one = LaurentSeries::one(f, prec);
    let z = carlitz_zeta(f, 1, prec).unwrap();
    assert_eq!(l.eval(&one, prec), z);
    let e = exp_coeffs(&c, 3).unwrap();
    assert_eq!(e.eval(&z, prec), one);
}

#[test]
fn bernoulli_carlitz_vanishing() {
    for q in [3u32, 5] {
        let f = fq(q);
        let n = (q * q - 1) as usize;
        let bc = bernoulli_carlitz_all(f, n);
        assert!(bc[0].is_one());
        for (k, b) in bc.iter().enumerate().skip(1) {
            assert_eq!(b.is_zero(), k % (q as usize - 1) != 0, "q={q} k={k}");
        }
    }
}

#[test]
fn special_value_at_q_minus_one() {
    for q in [3u32, 5, 7] {
        let f = fq(q);
        let prec = 100;
        let s = (q - 1) as u64;
        let mut n = 1;
        while (q as i64).pow(n) - q as i64 - 1 < prec {
            n += 1;
        }
        let pi = pi_power_truncated(f, n, prec).unwrap();
        let ratio = bernoulli_carlitz(f, s as usize).div(&rat(carlitz_factorial(f, s))).unwrap();
        let rhs = LaurentSeries::from_rat(&ratio, prec + q as i64).mul(&pi).truncate(prec);
        assert_eq!(carlitz_zeta(f, s, prec).unwrap(), rhs, "q={q}");
    }
}

#[test]
fn pi_power_congruence_is_stable() {
    let f = fq(3);
    assert_eq!(pi_power_truncated(f, 3, 23).unwrap(), pi_power_truncated(f, 5, 23).unwrap());
    assert_eq!(pi_power_truncated(f, 4, 77).unwrap(), pi_power_truncated(f, 5, 77).unwrap());
    assert!(pi_power_truncated(f, 3, 24).is_err());
}

fn small_apoly(f: &'static FqCtx, c: Vec<u32>) -> APoly {
    APoly::from_u32(f, &c)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn exp_log_random_modules(
        q in prop::sample::select(vec![3u32, 5]),
        r in 1usize..=3,
        raw in prop::collection::vec(prop::collection::vec(0u32..5, 1..3), 3),
        a in prop::collection::vec(0u32..5, 1..3),
    ) {
        let f = fq(q);
        let mut coeffs = vec![Rat::t(f)];
        for c in raw.iter().take(r) {
            coeffs.push(rat(small_apoly(f, c.iter().map(|x| x % q).collect())));
        }
        if coeffs[r].is_zero() {
            coeffs[r] = Rat::one_in(f);
        }
        let phi = DrinfeldModule::new(coeffs).unwrap();
        let n = 3;
        let e = exp_coeffs(&phi, n).unwrap();
        let l = log_coeffs(&phi, n).unwrap();
        prop_assert_eq!(e.compose(&l), identity_series(f, n));
        prop_assert_eq!(l.compose(&e), identity_series(f, n));
        let a = small_apoly(f, a.iter().map(|x| x % q).collect());
        prop_assert!(exp_intertwines(&phi, &e, &a));
        prop_assert!(log_intertwines(&phi, &l, &a));
    }
}
