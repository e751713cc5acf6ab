use std::time::Instant;

use drinfeld::algebra::{Embedding, ExtCtx, FqCtx, Ring};
use drinfeld::drinfeld::DrinfeldModule;
use drinfeld::hom::{hom_basis, is_isogenous};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn f49() -> &'static ExtCtx {
    ExtCtx::new(FqCtx::prime(7).unwrap(), 2, Some(&[3, 6, 1])).unwrap()
}

#[test]
fn supersingular_endomorphisms_over_degree_eight_extension() {
    let f = f49();
    let z = f.gen();
    let phi = DrinfeldModule::new(vec![f.one(), f.zero(), z]).unwrap();
    assert_eq!(hom_basis(&phi, &phi).len(), 2);
    let l = f.extension(8).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let emb = Embedding::find(f, l, &mut rng).unwrap();
    let t = Instant::now();
    let phi_l = phi.base_change(&emb);
    let end = hom_basis(&phi_l, &phi_l);
    eprintln!("End over L: {:?}", t.elapsed());
    assert_eq!(end.len(), 4);
}

#[test]
fn isogenous_over_degree_48_extension() {
    let f = f49();
    let z = f.gen();
    let phi = DrinfeldModule::new(vec![f.one(), f.zero(), z.clone()]).unwrap();
    let psi = DrinfeldModule::new(vec![f.one(), f.zero(), z.mul(&z)]).unwrap();
    assert!(!is_isogenous(&phi, &psi));
    let l = f.extension(48).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    let t = Instant::now();
    let emb = Embedding::find(f, l, &mut rng).unwrap();
    eprintln!("embedding: {:?}", t.elapsed());
    let t = Instant::now();
    assert!(is_isogenous(&phi.base_change(&emb), &psi.base_change(&emb)));
    eprintln!("isogeny over L: {:?}", t.elapsed());
}
