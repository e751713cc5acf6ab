use drinfeld::algebra::linalg::{self, Matrix};
use drinfeld::algebra::{ExtCtx, FElem, Fq, FqCtx, Ring};
use drinfeld::drinfeld::DrinfeldModule;
use drinfeld::lrc::*;
use drinfeld::ore::OrePoly;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn module(q: u32, m: usize, r: usize, a: &[i64], seed: u64) -> (DrinfeldModule<FElem>, Vec<Fq>) {
    let f = ExtCtx::new(FqCtx::prime(q).unwrap(), m, None).unwrap();
    let a: Vec<Fq> = a.iter().map(|x| Fq::from_int(f.base, *x)).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (search_module(f, r, &a, 100_000, &mut rng).expect("search exhausted"), a)
}

/// q = 3, m = 4, r = 2, ℓ = 2, t = 1, δ = 2, s = 1.
fn tiny() -> LrcConfig {
    let (phi, a) = module(3, 4, 2, &[1, 2], 0);
    lrc_setup(&phi, &a, 1, 2, 1).unwrap()
}

/// q = 2, m = 6, r = 3, ℓ = 1, s = 0.
fn binary(t: usize, delta: usize) -> LrcConfig {
    let (phi, a) = module(2, 6, 3, &[1], 0);
    lrc_setup(&phi, &a, t, delta, 0).unwrap()
}

fn configs() -> Vec<LrcConfig> {
    vec![tiny(), binary(2, 2), binary(1, 3)]
}

#[test]
fn tiny_parameters() {
    let cfg = tiny();
    assert_eq!(lrc_params(&cfg), LrcParams { n: 16, k: 8, d: 2, locality: (1, 2) });
}

#[test]
fn bruteforce_distance_is_optimal() {
    for cfg in configs() {
        let p = lrc_params(&cfg);
        assert_eq!(min_rank_distance_bruteforce(&cfg).unwrap(), p.d, "r={} t={} s={}", cfg.r(), cfg.t, cfg.s);
        for i in 0..cfg.ell() {
            let d = group_distance_bruteforce(&cfg, i).unwrap();
            assert!(d >= cfg.delta);
            assert_eq!(d, cfg.r() + 1 - cfg.t);
        }
    }
}

#[test]
fn bruteforce_guard() {
    let (phi, a) = module(2, 4, 2, &[1], 0);
    let cfg = lrc_setup(&phi, &a, 1, 2, 0).unwrap();
    assert_eq!(min_rank_distance_bruteforce(&cfg).unwrap(), 2);
    let (phi, a) = module(2, 12, 3, &[1], 0);
    let big = lrc_setup(&phi, &a, 2, 2, 0).unwrap();
    assert!(min_rank_distance_bruteforce(&big).is_err());
}

#[test]
fn encoder_is_linear_and_injective() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for cfg in configs() {
        let f = cfg.field();
        let zero = lrc_encode(&cfg, &Message::zero(&cfg)).unwrap();
        assert!(zero.entries.iter().all(|x| x.is_zero()));
        let x = Message::random(&cfg, &mut rng);
        let y = Message::random(&cfg, &mut rng);
        let c = f.random(&mut rng);
        let sum = Message { parts: x.parts.iter().zip(&y.parts).map(|(a, b)| a.scale_left(&c).add(b)).collect() };
        let ex = lrc_encode(&cfg, &x).unwrap();
        let ey = lrc_encode(&cfg, &y).unwrap();
        let es = lrc_encode(&cfg, &sum).unwrap();
        for j in 0..es.entries.len() {
            assert_eq!(es.entries[j], ex.entries[j].mul(&c).add(&ey.entries[j]));
        }
        // The Fq-linear encoding matrix has full row rank k.
        let mut rows: Matrix<Fq> = Vec::new();
        for k in 0..=cfg.s {
            for j in 0..cfg.t {
                for e in 0..cfg.m() {
                    let mut msg = Message::zero(&cfg);
                    msg.parts[k] = OrePoly::monomial(f.gen().pow(e as u64), j);
                    rows.push(lrc_encode(&cfg, &msg).unwrap().entries.iter().flat_map(|x| x.coords_fq()).collect());
                }
            }
        }
        assert_eq!(linalg::rank(&rows), lrc_params(&cfg).k);
    }
}

#[test]
fn restriction_identity() {
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for cfg in configs() {
        for _ in 0..10 {
            let msg = Message::random(&cfg, &mut rng);
            let word = lrc_encode(&cfg, &msg).unwrap();
            for (i, a) in cfg.a.iter().enumerate() {
                let g = msg.restricted(*a, cfg.field());
                for (w, x) in cfg.bases[i].iter().zip(&word.entries[cfg.group(i)]) {
                    assert_eq!(g.eval(w), *x);
                }
            }
        }
    }
}

#[test]
fn constant_message() {
    let cfg = binary(1, 3);
    let f = cfg.field();
    let c = f.gen().add(&f.one());
    let msg = Message { parts: vec![OrePoly::constant(c.clone())] };
    let word = lrc_encode(&cfg, &msg).unwrap();
    for (w, x) in cfg.bases[0].iter().zip(&word.entries) {
        assert_eq!(*x, w.mul(&c));
    }
    let bad = Message { parts: vec![OrePoly::tau(f)] };
    assert!(lrc_encode(&cfg, &bad).is_err());
}

fn subsets(n: usize, max: usize) -> Vec<Vec<usize>> {
    (0u32..1 << n).filter(|m| m.count_ones() as usize <= max).map(|m| (0..n).filter(|j| m >> j & 1 == 1).collect()).collect()
}

#[test]
fn local_recovery_on_random_codewords() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for cfg in configs() {
        let r = cfg.r();
        for _ in 0..100 {
            let word = lrc_encode(&cfg, &Message::random(&cfg, &mut rng)).unwrap().entries;
            for i in 0..cfg.ell() {
                for pattern in subsets(r, cfg.delta - 1) {
                    let mut w: Vec<Option<FElem>> = word.iter().cloned().map(Some).collect();
                    for j in &pattern {
                        w[i * r + j] = None;
                    }
                    assert_eq!(local_recover(&cfg, &w).unwrap(), word);
                }
            }
        }
    }
}

#[test]
fn too_many_erasures() {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let cfg = tiny();
    let word = lrc_encode(&cfg, &Message::random(&cfg, &mut rng)).unwrap().entries;
    let mut w: Vec<Option<FElem>> = word.iter().cloned().map(Some).collect();
    w[0] = None;
    w[1] = None;
    assert!(local_recover(&cfg, &w).is_err());
    let mut w: Vec<Option<FElem>> = word.iter().cloned().map(Some).collect();
    w[0] = None;
    w[2] = None;
    assert!(local_recover(&cfg, &w).is_err());
}

#[test]
fn stored_bases_round_trip() {
    let cfg = tiny();
    let again = LrcConfig::with_bases(&cfg.phi, &cfg.a, cfg.t, cfg.delta, cfg.s, cfg.bases.clone()).unwrap();
    assert_eq!(again.bases, cfg.bases);
    let mut bad = cfg.bases.clone();
    bad[0][1] = bad[0][0].clone();
    assert!(LrcConfig::with_bases(&cfg.phi, &cfg.a, cfg.t, cfg.delta, cfg.s, bad).is_err());
    let mut bad = cfg.bases.clone();
    bad.swap(0, 1);
    assert!(LrcConfig::with_bases(&cfg.phi, &cfg.a, cfg.t, cfg.delta, cfg.s, bad).is_err());
}

#[test]
fn missing_torsion_is_reported() {
    let small = ExtCtx::new(FqCtx::prime(3).unwrap(), 2, None).unwrap();
    let psi = DrinfeldModule::new(vec![small.gen(), small.one(), small.one()]).unwrap();
    let one = Fq::from_int(small.base, 1);
    assert!(matches!(lrc_setup(&psi, &[one], 1, 2, 0), Err(drinfeld::error::Error::TorsionNotRational(..))));
}
