use drinfeld::algebra::apoly::monics;
use drinfeld::algebra::{APoly, FqCtx, LaurentSeries, Rat, Ring};
use drinfeld::carlitz::{carlitz_module, carlitz_zeta};
use drinfeld::drinfeld::DrinfeldModule;
use drinfeld::lseries::*;

fn fq(q: u32) -> &'static FqCtx {
    FqCtx::prime(q).unwrap()
}

fn module(f: &'static FqCtx, g: &[&[i64]]) -> DrinfeldModule<Rat> {
    let mut c = vec![Rat::t(f)];
    c.extend(g.iter().map(|x| Rat::from_poly(APoly::from_i64(f, x))));
    DrinfeldModule::new(c).unwrap()
}

#[test]
fn carlitz_value_is_zeta() {
    let f = fq(3);
    let c = carlitz_module(f);
    for s in [1u64, 2] {
        let l = lseries_value(&c, s, 20).unwrap();
        assert_eq!(l.value, carlitz_zeta(f, s + 1, 20).unwrap(), "s = {s}");
        assert!(l.skipped.is_empty());
    }
    assert_eq!(lseries_value(&c, 0, 20).unwrap().value, carlitz_zeta(f, 1, 20).unwrap());
}

/// L(c; X, s) = Σ_{a monic} X^{deg a} a^{-1-s}.
#[test]
fn carlitz_series_matches_monic_sum() {
    let f = fq(3);
    let c = carlitz_module(f);
    for s in [0u64, 1] {
        let n = 4;
        let l = lseries_truncated(&c, n, s).unwrap();
        for (k, coeff) in l.coeffs.iter().enumerate() {
            let mut sum = Rat::zero_in(f);
            for a in monics(f, k) {
                sum = sum.add(&Rat::new(APoly::one(f), a.pow(1 + s)).unwrap());
            }
            assert_eq!(*coeff, sum, "s = {s}, k = {k}");
        }
    }
}

#[test]
fn higher_places_do_not_change_the_truncation() {
    let f = fq(3);
    let phi = module(f, &[&[0, 0, 1], &[1]]);
    let n = 3;
    let a = lseries_truncated(&phi, n, 0).unwrap();
    let b = lseries_truncated_upto(&phi, n, 0, n + 1).unwrap();
    assert_eq!(a, b);
    assert!(a.coeffs[0].is_one());
    assert_eq!(lseries_truncated(&phi, 1, 0).unwrap().coeffs, vec![Rat::one_in(f)]);
}

#[test]
fn rank_two_value_is_stable_under_the_cutoff() {
    let f = fq(3);
    let phi = module(f, &[&[0, 0, 1], &[1]]);
    let (s, prec) = (1u64, 10i64);
    let l = lseries_value(&phi, s, prec).unwrap();
    let more = lseries_value_upto(&phi, s, prec, l.max_degree + 2).unwrap();
    assert_eq!(l.value, more.value);
    assert_ne!(l.value, LaurentSeries::one(f, prec));
    let tiny = lseries_value(&phi, s, 1).unwrap();
    assert_eq!(tiny.value, LaurentSeries::one(f, 1));
}

#[test]
fn bad_places_are_recorded() {
    let f = fq(3);
    let phi = module(f, &[&[1], &[0, 1]]);
    let l = lseries_truncated(&phi, 3, 0).unwrap();
    assert_eq!(l.skipped, vec![APoly::x(f)]);
    let v = lseries_value(&phi, 1, 6).unwrap();
    assert!(v.skipped.contains(&APoly::x(f)));
}
