//! Drinfeld modules φ: A → F{τ}, determined by φ_T = z + g_1 τ + … + g_r τ^r.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rand::Rng;

use crate::algebra::ext::roots;
use crate::algebra::{APoly, Embedding, ExtCtx, FElem, Field, FrobField, Poly, Ring};
use crate::error::{Error, Result};
use crate::ore::{OrePoly, Subspace};

#[derive(Clone)]
pub struct DrinfeldModule<E: FrobField> {
    ctx: E::Ctx,
    /// [γ(T), g_1, …, g_r]
    coeffs: Vec<E>,
}

impl<E: FrobField> PartialEq for DrinfeldModule<E> {
    fn eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.coeffs == o.coeffs
    }
}

impl<E: FrobField> fmt::Debug for DrinfeldModule<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DrinfeldModule{:?}", self.coeffs)
    }
}

impl<E: FrobField + fmt::Display> fmt::Display for DrinfeldModule<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "T |-> {}", self.phi_t())
    }
}

impl<E: FrobField> DrinfeldModule<E> {
    /// From [γ(T), g_1, …, g_r]; requires r ≥ 1 and g_r ≠ 0.
    pub fn new(coeffs: Vec<E>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidArgument("a Drinfeld module needs rank at least 1".into()));
        }
        if coeffs.last().unwrap().is_zero() {
            return Err(Error::InvalidArgument("leading coefficient g_r must be nonzero".into()));
        }
        let ctx = coeffs[0].ctx();
        if coeffs.iter().any(|c| c.ctx() != ctx) {
            return Err(Error::FieldMismatch);
        }
        Ok(DrinfeldModule { ctx, coeffs })
    }
    /// The module with φ_T equal to the given Ore polynomial.
    pub fn from_ore(phi_t: &OrePoly<E>) -> Result<Self> {
        Self::new(phi_t.coeffs().to_vec())
    }
    /// Carlitz module T ↦ z + τ.
    pub fn carlitz(z: E) -> Self {
        let one = z.one();
        DrinfeldModule { ctx: z.ctx(), coeffs: vec![z, one] }
    }
    pub fn ctx(&self) -> E::Ctx {
        self.ctx
    }
    pub fn rank(&self) -> usize {
        self.coeffs.len() - 1
    }
    /// γ(T).
    pub fn gen(&self) -> &E {
        &self.coeffs[0]
    }
    pub fn coeffs(&self) -> &[E] {
        &self.coeffs
    }
    /// g_i for 0 ≤ i ≤ r, zero beyond.
    pub fn coeff(&self, i: usize) -> E {
        self.coeffs.get(i).cloned().unwrap_or_else(|| E::zero_in(self.ctx))
    }
    pub fn phi_t(&self) -> OrePoly<E> {
        OrePoly::new(self.ctx, self.coeffs.clone())
    }
    /// γ(a) = a(z).
    pub fn gamma(&self, a: &APoly) -> E {
        a.eval_with(self.gen(), |c| E::from_fq(self.ctx, *c))
    }
    /// φ_a by Horner's rule in φ_T.
    pub fn image(&self, a: &APoly) -> OrePoly<E> {
        let phi_t = self.phi_t();
        let mut acc = OrePoly::zero(self.ctx);
        for c in a.coeffs().iter().rev() {
            acc = acc.mul(&phi_t).add(&OrePoly::constant(E::from_fq(self.ctx, *c)));
        }
        acc
    }
    /// Whether u·φ_T = ψ_T·u.
    pub fn intertwines(&self, u: &OrePoly<E>, psi: &Self) -> bool {
        u.mul(&self.phi_t()) == psi.phi_t().mul(u)
    }
}

impl DrinfeldModule<FElem> {
    pub fn field(&self) -> &'static ExtCtx {
        self.ctx
    }
    /// [F : Fq].
    pub fn degree(&self) -> usize {
        self.ctx.d
    }
    /// Monic generator 𝔭 of ker γ: the minimal polynomial of z.
    pub fn characteristic(&self) -> APoly {
        self.gen().minpoly()
    }
    /// Frobenius height: τ-val(φ_𝔭) / deg 𝔭.
    pub fn height(&self) -> usize {
        let p = self.characteristic();
        let v = self.image(&p).val().expect("φ_𝔭 is nonzero");
        v / p.deg().unwrap()
    }
    /// Same A-field coefficients mapped into an extension.
    pub fn base_change(&self, emb: &Embedding) -> DrinfeldModule<FElem> {
        DrinfeldModule { ctx: emb.to, coeffs: self.coeffs.iter().map(|c| emb.apply(c)).collect() }
    }

    /// Torsion φ[a] ∩ E with an A/aA-generating family.
    pub fn torsion_basis(&self, a: &APoly, emb: &Embedding) -> Result<Torsion> {
        let phi_a = self.image(a);
        let kernel = phi_a.kernel_basis(emb)?;
        let e = emb.to;
        let phi_t = self.phi_t().base_change(emb);
        let mut span = Subspace { field: e, basis: Vec::new() };
        let mut generators = Vec::new();
        for x in &kernel.basis {
            if span.contains(x) {
                continue;
            }
            generators.push(x.clone());
            let mut y = x.clone();
            while !span.contains(&y) {
                span.basis.push(y.clone());
                y = phi_t.eval(&y);
            }
        }
        let deg_a = a.deg().unwrap_or(0).max(1);
        let rank = if a.deg().unwrap_or(0) == 0 { 0 } else { kernel.dim() / deg_a };
        Ok(Torsion { kernel, generators, rank })
    }

    /// g_1^{q+1}/g_2, for rank 2.
    pub fn j_invariant(&self) -> Result<FElem> {
        if self.rank() != 2 {
            return Err(Error::InvalidArgument("j-invariant needs rank 2".into()));
        }
        let q = self.ctx.base.q as u64;
        Ok(self.coeffs[1].pow(q + 1).div(&self.coeffs[2]).unwrap())
    }

    /// J_k^s = ∏ g_{k_i}^{s_i} / g_r^{s_r}.
    pub fn potemine_j(&self, k: &[usize], s: &[u64]) -> Result<FElem> {
        let q = self.ctx.base.q as u64;
        let r = self.rank();
        if !potemine_admissible(q, r, k, s) {
            return Err(Error::InvalidArgument("inadmissible Potemine index".into()));
        }
        let mut num = self.ctx.one();
        for (ki, si) in k.iter().zip(s) {
            num = num.mul(&self.coeffs[*ki].pow(*si));
        }
        let den = self.coeffs[r].pow(*s.last().unwrap());
        Ok(num.div(&den).unwrap())
    }

    /// Basic Potemine J-invariants, in the order of `potemine_basic_parameters`.
    pub fn basic_j_invariants(&self) -> Result<Vec<((Vec<usize>, Vec<u64>), FElem)>> {
        let q = self.ctx.base.q as u64;
        potemine_basic_parameters(q, self.rank())?
            .into_iter()
            .map(|(k, s)| {
                let j = self.potemine_j(&k, &s)?;
                Ok(((k, s), j))
            })
            .collect()
    }

    /// Decides isomorphism over F; returns a witness u ∈ F^× with
    /// u·φ_T = ψ_T·u.
    pub fn isomorphism_over_base(&self, psi: &Self, rng: &mut impl Rng) -> Option<FElem> {
        let w = self.iso_reduced(psi)?;
        let (g, w) = w;
        let q = self.ctx.base.q as u64;
        let n = q.pow(g as u32) - 1;
        let f = self.ctx;
        let mut c = vec![f.zero(); n as usize + 1];
        c[0] = w.neg();
        c[n as usize] = f.one();
        let mut rs = roots(&Poly::new(f, c), rng);
        rs.sort_by(|a, b| a.coords().iter().rev().cmp(b.coords().iter().rev()));
        let u = rs.into_iter().next()?;
        debug_assert!(self.intertwines(&OrePoly::constant(u.clone()), psi));
        Some(u)
    }

    /// Decides isomorphism over an algebraic closure of F.
    pub fn is_isomorphic_absolutely(&self, psi: &Self) -> bool {
        if self.rank() != psi.rank() || self.gen() != psi.gen() || self.ctx != psi.ctx {
            return false;
        }
        if self.rank() <= 3 {
            if let (Ok(a), Ok(b)) = (self.basic_j_invariants(), psi.basic_j_invariants()) {
                return a.iter().zip(&b).all(|(x, y)| x.1 == y.1);
            }
        }
        self.iso_reduced(psi).is_some()
    }

    /// Shared reduction for both isomorphism tests. With S the support of
    /// (g_i), γ = gcd(S) and c_i = g_i/h_i, any isomorphism u satisfies
    /// u^{q^i-1} = c_i; writing m_i = (q^i-1)/(q^γ-1), which are coprime,
    /// w = u^{q^γ-1} is forced to be ∏ c_i^{λ_i} for Bézout λ.
    /// Returns (γ, w) when the system is consistent.
    fn iso_reduced(&self, psi: &Self) -> Option<(usize, FElem)> {
        if self.rank() != psi.rank() || self.gen() != psi.gen() || self.ctx != psi.ctx {
            return None;
        }
        let r = self.rank();
        let support: Vec<usize> = (1..=r).filter(|&i| !self.coeffs[i].is_zero()).collect();
        if support.iter().any(|&i| psi.coeffs[i].is_zero())
            || (1..=r).any(|i| self.coeffs[i].is_zero() != psi.coeffs[i].is_zero())
        {
            return None;
        }
        let q = BigInt::from(self.ctx.base.q);
        let g = support.iter().fold(0usize, |a, &b| a.gcd(&b));
        let qg1 = q.pow(g as u32) - 1;
        let order = BigInt::from(self.ctx.size()) - 1;
        let cs: Vec<FElem> = support.iter().map(|&i| self.coeffs[i].div(&psi.coeffs[i]).unwrap()).collect();
        let ms: Vec<BigInt> = support.iter().map(|&i| (q.pow(i as u32) - 1) / &qg1).collect();
        // Bézout coefficients with Σ λ_i m_i = 1.
        let mut lam = vec![BigInt::zero(); ms.len()];
        lam[0] = BigInt::one();
        let mut cur = ms[0].clone();
        for i in 1..ms.len() {
            let e = cur.extended_gcd(&ms[i]);
            for l in lam.iter_mut().take(i) {
                *l *= &e.x;
            }
            lam[i] = e.y;
            cur = e.gcd;
        }
        debug_assert!(cur.is_one());
        let mut w = self.ctx.one();
        for (c, l) in cs.iter().zip(&lam) {
            let e = l.mod_floor(&order);
            let e = BigUint::try_from(e.abs()).unwrap();
            w = w.mul(&c.pow_big(&e));
        }
        for (c, m) in cs.iter().zip(&ms) {
            if w.pow_big(&BigUint::try_from(m.clone()).unwrap()) != *c {
                return None;
            }
        }
        Some((g, w))
    }
}

/// Torsion points inside an explicit extension.
#[derive(Clone, Debug)]
pub struct Torsion {
    /// Fq-basis of φ[a] ∩ E.
    pub kernel: Subspace,
    /// Elements whose A-orbits span the kernel over Fq.
    pub generators: Vec<FElem>,
    /// dim_Fq(kernel) / deg a; equals r when E splits φ_a and a is prime to 𝔭.
    pub rank: usize,
}

fn gcd_u(a: usize, b: usize) -> usize {
    a.gcd(&b)
}

pub fn potemine_admissible(q: u64, r: usize, k: &[usize], s: &[u64]) -> bool {
    let l = k.len();
    if l == 0 || l >= r || s.len() != l + 1 {
        return false;
    }
    if k.windows(2).any(|w| w[0] > w[1]) || k[0] < 1 || k[l - 1] > r - 1 {
        return false;
    }
    let qr = (q as u128).pow(r as u32) - 1;
    let mut lhs: u128 = 0;
    for (ki, si) in k.iter().zip(s) {
        let bound = qr / ((q as u128).pow(gcd_u(*ki, r) as u32) - 1);
        if *si as u128 > bound {
            return false;
        }
        lhs += *si as u128 * ((q as u128).pow(*ki as u32) - 1);
    }
    lhs == s[l] as u128 * qr
}

/// Basic parameters (k, s): k strictly increasing in [1, r-1], every
/// s_i ≥ 1 within its bound, Σ s_i(q^{k_i}-1) = s_r(q^r-1) and
/// gcd(s) = 1.
pub fn potemine_basic_parameters(q: u64, r: usize) -> Result<Vec<(Vec<usize>, Vec<u64>)>> {
    if r < 2 {
        return Err(Error::InvalidArgument("Potemine invariants need rank at least 2".into()));
    }
    let qr = (q as u128).pow(r as u32) - 1;
    let bounds: Vec<u128> = (0..r).map(|k| if k == 0 { 0 } else { qr / ((q as u128).pow(gcd_u(k, r) as u32) - 1) }).collect();
    let mut out = Vec::new();
    for mask in 1u32..(1 << (r - 1)) {
        let k: Vec<usize> = (1..r).filter(|i| mask & (1 << (i - 1)) != 0).collect();
        let work: u128 = k.iter().map(|&i| bounds[i]).product();
        if work > 50_000_000 {
            return Err(Error::Unsupported(format!("Potemine enumeration for q = {q}, r = {r} is too large")));
        }
        let mut s = vec![1u64; k.len()];
        loop {
            let lhs: u128 = k.iter().zip(&s).map(|(&ki, &si)| si as u128 * ((q as u128).pow(ki as u32) - 1)).sum();
            if lhs % qr == 0 {
                let sr = (lhs / qr) as u64;
                let g = s.iter().fold(sr, |a, &b| a.gcd(&b));
                if g == 1 {
                    let mut full = s.clone();
                    full.push(sr);
                    out.push((k.clone(), full));
                }
            }
            // odometer
            let mut i = 0;
            loop {
                if i == s.len() {
                    break;
                }
                if (s[i] as u128) < bounds[k[i]] {
                    s[i] += 1;
                    break;
                }
                s[i] = 1;
                i += 1;
            }
            if i == s.len() {
                break;
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FqCtx;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn f49() -> &'static ExtCtx {
        ExtCtx::new(FqCtx::prime(7).unwrap(), 2, Some(&[3, 6, 1])).unwrap()
    }

    fn module(c: Vec<FElem>) -> DrinfeldModule<FElem> {
        DrinfeldModule::new(c).unwrap()
    }

    #[test]
    fn images_and_characteristic() {
        let f = f49();
        let z = f.gen();
        let phi = module(vec![z.clone(), z.clone(), z.clone(), z.add(&f.one())]);
        let a = APoly::from_i64(f.base, &[1, 1]);
        let img = phi.image(&a);
        assert_eq!(img.coeffs(), &[z.add(&f.one()), z.clone(), z.clone(), z.add(&f.one())]);
        assert_eq!(phi.characteristic(), APoly::from_i64(f.base, &[3, 6, 1]));
        let c = DrinfeldModule::carlitz(z.clone());
        let t2 = APoly::from_i64(f.base, &[0, 0, 1]);
        assert_eq!(c.image(&t2).coeffs(), &[z.pow(2), z.add(&z.frob()), f.one()]);
        assert_eq!(c.height(), 1);
        let ss = module(vec![f.one(), f.zero(), z.clone()]);
        assert_eq!(ss.characteristic(), APoly::from_i64(f.base, &[-1, 1]));
        assert_eq!(ss.height(), 2);
        assert!(DrinfeldModule::new(vec![z.clone()]).is_err());
    }

    #[test]
    fn j_and_isomorphism() {
        let f = f49();
        let z = f.gen();
        let one = f.one();
        let phi = module(vec![z.clone(), one.clone(), one.clone()]);
        assert!(phi.j_invariant().unwrap().is_one());
        assert_eq!(module(vec![z.clone(), z.clone(), one.clone()]).j_invariant().unwrap(), f.from_int(3));
        let psi = module(vec![z.clone(), z.mul(&f.from_int(2)).add(&one), one.clone()]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let u = phi.isomorphism_over_base(&psi, &mut rng).unwrap();
        assert_eq!(u, z.add(&one));
        assert!(phi.intertwines(&OrePoly::constant(u), &psi));
        let chi = module(vec![z.clone(), z.clone(), f.from_int(3)]);
        assert!(phi.isomorphism_over_base(&chi, &mut rng).is_none());
        assert!(phi.is_isomorphic_absolutely(&chi));
        assert!(phi.isomorphism_over_base(&phi, &mut rng).unwrap().is_one());
    }

    #[test]
    fn potemine_parameters() {
        for q in [2u64, 3, 7] {
            assert_eq!(potemine_basic_parameters(q, 2).unwrap(), vec![(vec![1], vec![q + 1, 1])]);
        }
        let ps = potemine_basic_parameters(7, 3).unwrap();
        assert!(!ps.is_empty());
        for (k, s) in &ps {
            assert!(potemine_admissible(7, 3, k, s));
        }
    }
}
