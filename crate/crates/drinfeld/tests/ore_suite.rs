use drinfeld::algebra::{Embedding, ExtCtx, FElem, FqCtx, FrobField, Ring};
use drinfeld::ore::{annihilator_of_subspace, llcm, moore_det, rgcd, OrePoly};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn field(q: u32, d: usize) -> &'static ExtCtx {
    ExtCtx::new(FqCtx::prime(q).unwrap(), d, None).unwrap()
}

fn ore(f: &'static ExtCtx, r: &mut ChaCha8Rng, deg: usize) -> OrePoly<FElem> {
    let mut c: Vec<FElem> = (0..=deg).map(|_| f.random(r)).collect();
    if c[deg].is_zero() {
        c[deg] = f.one();
    }
    OrePoly::new(f, c)
}

fn params() -> impl Strategy<Value = (u32, usize, u64, usize, usize)> {
    (prop::sample::select(vec![2u32, 3, 5]), 1usize..5, any::<u64>(), 0usize..5, 0usize..5)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ring_laws((q, d, seed, m, n) in params()) {
        let f = field(q, d);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (a, b, c) = (ore(f, &mut r, m), ore(f, &mut r, n), ore(f, &mut r, 2));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.mul(&b).deg(), Some(m + n));
        let x = f.random(&mut r);
        prop_assert_eq!(a.mul(&b).eval(&x), a.eval(&b.eval(&x)));
        let tau = OrePoly::tau(f);
        prop_assert_eq!(tau.mul(&OrePoly::constant(x.clone())), OrePoly::monomial(x.frob(), 1));
        prop_assert_eq!(a.pow(3), a.mul(&a).mul(&a));
    }

    #[test]
    fn right_division((q, d, seed, m, n) in params()) {
        let f = field(q, d);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let (a, b) = (ore(f, &mut r, m + n), ore(f, &mut r, n));
        let (qt, rem) = a.right_divmod(&b).unwrap();
        prop_assert_eq!(qt.mul(&b).add(&rem), a.clone());
        prop_assert!(rem.is_zero() || rem.deg() < b.deg());
        let c = ore(f, &mut r, m);
        prop_assert!(c.mul(&b).right_divisible_by(&b));
    }

    #[test]
    fn gcd_and_lcm((q, d, seed, m, n) in params()) {
        let f = field(q, d);
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let common = ore(f, &mut r, 1);
        let a = ore(f, &mut r, m).mul(&common);
        let b = ore(f, &mut r, n).mul(&common);
        let (g, s, t) = a.rxgcd(&b);
        prop_assert_eq!(s.mul(&a).add(&t.mul(&b)), g.clone());
        prop_assert!(a.right_divisible_by(&g) && b.right_divisible_by(&g));
        prop_assert!(g.right_divisible_by(&common.monic()));
        prop_assert_eq!(rgcd(&[a.clone(), b.clone()]).unwrap(), g.monic());
        let l = llcm(&[a.clone(), b.clone()]).unwrap();
        prop_assert!(l.right_divisible_by(&a) && l.right_divisible_by(&b));
        prop_assert_eq!(l.deg().unwrap() + g.deg().unwrap(), a.deg().unwrap() + b.deg().unwrap());
    }

    #[test]
    fn kernels_and_annihilators(q in prop::sample::select(vec![2u32, 3]), seed in any::<u64>(), k in 1usize..4) {
        let f = field(q, 2);
        let big = f.extension(3).unwrap();
        let mut r = ChaCha8Rng::seed_from_u64(seed);
        let emb = Embedding::find(f, big, &mut r).unwrap();
        let a = ore(f, &mut r, k);
        let ker = a.kernel_basis(&emb).unwrap();
        prop_assert!(ker.dim() <= k);
        for b in &ker.basis {
            prop_assert!(a.eval_in(&emb, b).unwrap().is_zero());
        }
        if ker.dim() > 0 && !a.coeff(0).is_zero() {
            // The kernel is Galois-stable, so its annihilator descends to F.
            let ann = annihilator_of_subspace(&ker, &emb).unwrap();
            prop_assert_eq!(ann.deg(), Some(ker.dim()));
            prop_assert!(ann.is_monic());
            for x in ker.elements() {
                prop_assert!(ann.eval_in(&emb, &x).unwrap().is_zero());
            }
            prop_assert!(a.right_divisible_by(&ann));
        }
    }
}

#[test]
fn moore_determinant_detects_dependence() {
    let f = field(3, 4);
    let mut r = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..30 {
        let xs: Vec<FElem> = (0..3).map(|_| f.random(&mut r)).collect();
        let dep = vec![xs[0].clone(), xs[1].clone(), xs[0].add(&xs[1].mul(&f.from_int(2)))];
        assert!(moore_det(&dep).is_zero());
        let rank = drinfeld::algebra::linalg::rank(&xs.iter().map(|x| x.coords_fq()).collect());
        assert_eq!(moore_det(&xs).is_zero(), rank < 3);
    }
}
