use drinfeld::algebra::{APoly, ExtCtx, FElem, FqCtx, Ring};
use drinfeld::drinfeld::DrinfeldModule;
use drinfeld::ore::OrePoly;
use drinfeld::text::*;
use drinfeld::Error;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(q: u32, d: usize) -> &'static ExtCtx {
    ExtCtx::new(FqCtx::prime(q).unwrap(), d, None).unwrap()
}

fn col(e: Error) -> usize {
    match e {
        Error::Parse { col, .. } => col,
        other => panic!("expected a parse error, got {other}"),
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn round_trips(q in prop::sample::select(vec![2u32, 3, 5, 7]), d in 1usize..5, seed in any::<u64>(), r in 1usize..4) {
        let f = field(q, d);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x = f.random(&mut rng);
        prop_assert_eq!(parse_felem(&render_felem(&x), f).unwrap(), x.clone());

        let a = APoly::new(f.base, (0..r + 2).map(|_| f.random(&mut rng).coords_fq()[0]).collect());
        prop_assert_eq!(parse_apoly(&render_apoly_csv(&a), f.base).unwrap(), a);

        let mut c: Vec<FElem> = (0..=r).map(|_| f.random(&mut rng)).collect();
        if c[r].is_zero() {
            c[r] = f.one();
        }
        let u = OrePoly::new(f, c.clone());
        prop_assert_eq!(parse_ore(&render_ore(&u), f).unwrap(), u);
        let phi = DrinfeldModule::new(c).unwrap();
        prop_assert_eq!(parse_module(&render_module(&phi), f).unwrap(), phi.clone());
        prop_assert_eq!(parse_module_full(&render_module_full(&phi)).unwrap(), phi);
        prop_assert_eq!(parse_field(&render_field(f), None).unwrap(), f);
    }

    #[test]
    fn garbage_is_rejected_without_panicking(s in "[ -~]{0,24}") {
        let f = field(5, 2);
        let _ = parse_felem(&s, f);
        let _ = parse_ore(&s, f);
        let _ = parse_module(&s, f);
        let _ = parse_module_full(&s);
        let _ = parse_field(&s, None);
        let _ = parse_apoly(&s, f.base);
    }
}

#[test]
fn prime_power_bases() {
    let b = parse_base("3^2").unwrap();
    assert_eq!(b.q, 9);
    assert_eq!(parse_base(&render_base(b)).unwrap(), b);
    let f = parse_field("ext:3", Some(b)).unwrap();
    assert_eq!((f.q(), f.d), (9, 3));
    assert_eq!(parse_field(&render_field(f), Some(b)).unwrap(), f);
    assert!(parse_field("ext:3", None).is_err());
}

#[test]
fn error_columns() {
    let f = field(7, 2);
    assert_eq!(col(parse_base("7^").unwrap_err()), 2);
    assert_eq!(col(parse_apoly("1,x,3", f.base).unwrap_err()), 3);
    assert!(matches!(parse_base("6"), Err(Error::InvalidField(_))));
    assert!(matches!(parse_felem("z +", f), Err(Error::Parse { .. })));
}
