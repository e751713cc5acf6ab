//! Polynomial factorization over Fq (q odd) through supersingular
//! reductions of a rank-2 Drinfeld module with complex multiplications.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::apoly::sort_factors;
use crate::algebra::{APoly, ExtCtx, FElem, Field, Fq, FqCtx, Ring};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};

fn require_odd(fq: &FqCtx) -> Result<()> {
    if fq.p == 2 {
        return Err(Error::Unsupported("this factorization method needs odd q".into()));
    }
    Ok(())
}

/// r_0, …, r_n mod f for φ_T = T + gτ + Δτ², from r_0 = 1, r_1 = g and
/// r_{k+2} = g^{q^{k+1}} r_{k+1} − (T^{q^{k+1}} − T) Δ^{q^k} r_k.
pub fn hasse_sequence(g: &APoly, delta: &APoly, n: usize, f: &APoly) -> Result<Vec<APoly>> {
    if f.deg().map_or(true, |d| d == 0) {
        return Err(Error::InvalidArgument("modulus must be nonconstant".into()));
    }
    let ctx = f.fq();
    let q = ctx.q as u64;
    let t = APoly::x(ctx).rem(f);
    let mut r = vec![APoly::one(ctx).rem(f), g.rem(f)];
    let mut gk = g.rem(f).pow_mod(q, f);
    let mut tk = t.pow_mod(q, f);
    let mut dk = delta.rem(f);
    for k in 0..n.saturating_sub(1) {
        let next = gk.mul_mod(&r[k + 1], f).sub(&tk.sub(&t).mul_mod(&dk, f).mul_mod(&r[k], f));
        r.push(next);
        gk = gk.pow_mod(q, f);
        tk = tk.pow_mod(q, f);
        dk = dk.pow_mod(q, f);
    }
    r.truncate(n + 1);
    Ok(r)
}

/// gcd(f, r_{deg f} mod f, r_{deg f + 1} mod f), monic.
pub fn hbar(g: &APoly, delta: &APoly, f: &APoly) -> Result<APoly> {
    let n = f.deg().unwrap_or(0);
    let r = hasse_sequence(g, delta, n + 1, f)?;
    Ok(f.gcd(&r[n]).gcd(&r[n + 1]).monic())
}

/// j = (T − a)^{(q+1)/2} (1 + (T − a)^{(q−1)/2})^{q+1}.
pub fn cm_j(fq: &'static FqCtx, a: Fq) -> Result<APoly> {
    require_odd(fq)?;
    let q = fq.q as u64;
    let w = APoly::new(fq, vec![a.neg(), Fq::one_in(fq)]);
    let inner = APoly::one(fq).add(&w.pow((q - 1) / 2));
    Ok(w.pow(q.div_ceil(2)).mul(&inner.pow(q + 1)))
}

/// φ_T = T + τ + j^{-1}τ² reduced modulo an irreducible f ∤ j.
pub fn cm_module_mod(f: &APoly, a: Fq) -> Result<DrinfeldModule<FElem>> {
    let j = cm_j(f.fq(), a)?;
    let e = ExtCtx::from_irreducible(f);
    let jinv = e.from_apoly(&j).inv().ok_or(Error::DivisionByZero)?;
    DrinfeldModule::new(vec![e.gen(), e.one(), jinv])
}

/// A monic divisor of f: the product of the prime factors of f at which
/// the CM module for `a` has supersingular reduction. A common factor of j
/// and f is returned as is.
pub fn dns_split(f: &APoly, a: Fq) -> Result<APoly> {
    let fq = f.fq();
    require_odd(fq)?;
    let f = f.monic();
    let j = cm_j(fq, a)?.rem(&f);
    let c = j.gcd(&f);
    if c.deg() != Some(0) {
        return Ok(c.monic());
    }
    let delta = j.inv_mod(&f).unwrap();
    hbar(&APoly::one(fq), &delta, &f)
}

/// Full factorization into monic irreducibles with multiplicities, sorted
/// like `cz_factor`.
pub fn dns_factor(f: &APoly, seed: u64) -> Result<Vec<(APoly, usize)>> {
    let fq = f.fq();
    require_odd(fq)?;
    if f.is_zero() {
        return Err(Error::InvalidArgument("cannot factor 0".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    for (g, m) in f.squarefree_decomposition() {
        let mut stack = vec![g];
        while let Some(h) = stack.pop() {
            if h.deg().map_or(true, |d| d == 0) {
                continue;
            }
            if h.is_irreducible() {
                out.push((h, m));
                continue;
            }
            match split_once(&h, &mut rng)? {
                Some(d) => {
                    stack.push(h.div_exact(&d).unwrap());
                    stack.push(d);
                }
                None => {
                    let s: u64 = rand::Rng::gen(&mut rng);
                    out.extend(h.cz_factor(s).into_iter().map(|(p, _)| (p, m)));
                }
            }
        }
    }
    sort_factors(&mut out);
    Ok(out)
}

/// Tries every a ∈ Fq in a random order.
fn split_once(h: &APoly, rng: &mut ChaCha8Rng) -> Result<Option<APoly>> {
    let mut elems: Vec<Fq> = h.fq().elements().collect();
    elems.shuffle(rng);
    let n = h.deg().unwrap();
    for a in elems {
        let d = dns_split(h, a)?;
        if d.deg().is_some_and(|k| k > 0 && k < n) {
            return Ok(Some(d));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::is_supersingular;

    fn f7() -> &'static FqCtx {
        FqCtx::prime(7).unwrap()
    }

    fn ap(c: &[i64]) -> APoly {
        APoly::from_i64(f7(), c)
    }

    #[test]
    fn golden_hasse_step() {
        let t = ap(&[0, 1]);
        let m = t.pow(49).sub(&t);
        let r = hasse_sequence(&t, &ap(&[1, 1]), 2, &m).unwrap();
        assert_eq!(r.len(), 3);
        assert_eq!(r[2], ap(&[0, 1, 1, 0, 0, 0, 0, 6]));
        let r = hasse_sequence(&ap(&[3, 2]), &ap(&[1, 1]), 1, &m).unwrap();
        assert_eq!(r, vec![ap(&[1]), ap(&[3, 2])]);
        let r = hasse_sequence(&APoly::zero(f7()), &ap(&[1, 1]), 2, &m).unwrap();
        assert!(!r[2].is_zero());
    }

    #[test]
    fn cm_j_values() {
        let fq = f7();
        let t = ap(&[0, 1]);
        let one = ap(&[1]);
        assert_eq!(cm_j(fq, Fq::from_int(fq, 0)).unwrap(), t.pow(4).mul(&one.add(&t.pow(3)).pow(8)));
        let f3 = FqCtx::prime(3).unwrap();
        let t3 = APoly::x(f3);
        assert_eq!(cm_j(f3, Fq::from_int(f3, 0)).unwrap(), t3.pow(2).mul(&APoly::one(f3).add(&t3).pow(4)));
        assert!(cm_j(FqCtx::prime(2).unwrap(), Fq::from_int(FqCtx::prime(2).unwrap(), 0)).is_err());
    }

    #[test]
    fn golden_split() {
        let fq = f7();
        let f = ap(&[2, 0, 3, 0, 1]);
        assert_eq!(dns_split(&f, Fq::from_int(fq, 1)).unwrap(), ap(&[2, 0, 1]));
        let a = Fq::from_int(fq, 1);
        assert!(!is_supersingular(&cm_module_mod(&ap(&[1, 0, 1]), a).unwrap()));
        assert!(is_supersingular(&cm_module_mod(&ap(&[2, 0, 1]), a).unwrap()));
        assert_eq!(dns_factor(&f, 0).unwrap(), vec![(ap(&[1, 0, 1]), 1), (ap(&[2, 0, 1]), 1)]);
        assert_eq!(dns_factor(&ap(&[1, 1]).pow(3), 0).unwrap(), vec![(ap(&[1, 1]), 3)]);
    }
}
