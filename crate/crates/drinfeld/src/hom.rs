//! Morphisms and isogenies between Drinfeld modules over finite fields.

use num_integer::Integer;
use rand::Rng;

use crate::algebra::ext::roots;
use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{APoly, Embedding, ExtCtx, FElem, FrobField, Poly, Ring};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::motive::{self, CharPoly, FPoly};
use crate::ore::{annihilator_of_subspace, OrePoly, Subspace};

/// u: φ → ψ with u·φ_T = ψ_T·u.
#[derive(Clone, Debug, PartialEq)]
pub struct Morphism {
    pub domain: DrinfeldModule<FElem>,
    pub codomain: DrinfeldModule<FElem>,
    pub ore: OrePoly<FElem>,
}

impl Morphism {
    /// Checks the intertwining relation at T.
    pub fn new(domain: DrinfeldModule<FElem>, codomain: DrinfeldModule<FElem>, ore: OrePoly<FElem>) -> Result<Self> {
        if domain.field() != codomain.field() || ore.field() != domain.field() {
            return Err(Error::FieldMismatch);
        }
        if !domain.intertwines(&ore, &codomain) {
            return Err(Error::NotAMorphism("u·φ_T ≠ ψ_T·u".into()));
        }
        Ok(Morphism { domain, codomain, ore })
    }

    pub fn identity(phi: &DrinfeldModule<FElem>) -> Self {
        Morphism { domain: phi.clone(), codomain: phi.clone(), ore: OrePoly::one(phi.field()) }
    }

    /// The isogeny with domain φ defined by u, its codomain read off from
    /// the exact right division of u·φ_T by u.
    pub fn from_ore(phi: &DrinfeldModule<FElem>, u: OrePoly<FElem>) -> Result<Self> {
        if u.is_zero() {
            return Err(Error::InvalidArgument("the zero polynomial defines no isogeny".into()));
        }
        let (psi_t, rem) = u.mul(&phi.phi_t()).right_divmod(&u)?;
        if !rem.is_zero() {
            return Err(Error::NotAMorphism("u does not right-divide u·φ_T".into()));
        }
        if psi_t.coeff(0) != *phi.gen() || psi_t.deg() != Some(phi.rank()) {
            return Err(Error::NotAMorphism("codomain is not over the same A-field".into()));
        }
        let psi = DrinfeldModule::from_ore(&psi_t)?;
        Ok(Morphism { domain: phi.clone(), codomain: psi, ore: u })
    }

    /// The endomorphism φ_a.
    pub fn scalar(phi: &DrinfeldModule<FElem>, a: &APoly) -> Self {
        Morphism { domain: phi.clone(), codomain: phi.clone(), ore: phi.image(a) }
    }

    /// The Frobenius endomorphism τ^d.
    pub fn frobenius(phi: &DrinfeldModule<FElem>) -> Self {
        let f = phi.field();
        Morphism { domain: phi.clone(), codomain: phi.clone(), ore: OrePoly::monomial(f.one(), f.d) }
    }

    /// next ∘ self.
    pub fn then(&self, next: &Morphism) -> Result<Morphism> {
        if self.codomain != next.domain {
            return Err(Error::InvalidArgument("morphisms do not compose".into()));
        }
        Morphism::new(self.domain.clone(), next.codomain.clone(), next.ore.mul(&self.ore))
    }

    pub fn add(&self, o: &Morphism) -> Result<Morphism> {
        if self.domain != o.domain || self.codomain != o.codomain {
            return Err(Error::InvalidArgument("morphisms have different endpoints".into()));
        }
        Morphism::new(self.domain.clone(), self.codomain.clone(), self.ore.add(&o.ore))
    }

    pub fn is_isogeny(&self) -> bool {
        !self.ore.is_zero()
    }
    pub fn is_separable(&self) -> bool {
        self.ore.val() == Some(0)
    }
}

/// The separable isogeny with kernel V ⊂ E, via the annihilator of V.
pub fn isogeny_from_kernel(phi: &DrinfeldModule<FElem>, v: &Subspace, emb: &Embedding) -> Result<Morphism> {
    let phi_t = phi.phi_t().base_change(emb);
    for b in &v.basis {
        if !v.contains(&phi_t.eval(b)) {
            return Err(Error::InvalidArgument("subspace is not stable under φ_T".into()));
        }
    }
    let u = annihilator_of_subspace(v, emb)?;
    Morphism::from_ore(phi, u)
}

/// u = v·τ^{m·deg 𝔭} with v separable.
pub fn separable_factor(u: &Morphism) -> Result<(Morphism, usize)> {
    let val = u.ore.val().ok_or_else(|| Error::InvalidArgument("zero morphism".into()))?;
    let dp = u.domain.characteristic().deg().unwrap();
    if val % dp != 0 {
        return Err(Error::NotAMorphism("τ-valuation is not a multiple of deg 𝔭".into()));
    }
    let f = u.domain.field();
    let v = OrePoly::new(f, u.ore.coeffs()[val..].to_vec());
    let twisted = DrinfeldModule::new(u.domain.coeffs().iter().map(|g| g.frob_pow(val)).collect())?;
    Ok((Morphism::new(twisted, u.codomain.clone(), v)?, val / dp))
}

/// An A-basis of Hom(φ, ψ).
///
/// A morphism u is an element of M(φ) with coordinates x ∈ F[T]^r; the
/// condition u·φ_T = ψ_T·u reads T·x − Σ_i h_i τ_φ^i(x) = 0, which is
/// A-linear in the Fq-coordinates of x. The basis is the kernel of that map
/// over A, computed by unimodular column reduction and reduced to weak
/// Popov form.
pub fn hom_basis(phi: &DrinfeldModule<FElem>, psi: &DrinfeldModule<FElem>) -> Vec<Morphism> {
    let r = phi.rank();
    if psi.rank() != r || phi.field() != psi.field() || phi.gen() != psi.gen() {
        return Vec::new();
    }
    let f = phi.field();
    let d = f.d;
    let base = f.base;
    let b = motive::tau_matrix(phi);
    // tau_pows[i] = σ^{i−1}(B)⋯σ(B)B
    let mut tau_pows: Vec<Matrix<FPoly>> = vec![linalg::identity(f, r), b.clone()];
    let mut tw = b.clone();
    for _ in 2..=r {
        tw = motive::sigma_matrix(&tw);
        let next = linalg::mat_mul(&tw, tau_pows.last().unwrap());
        tau_pows.push(next);
    }
    let t = Poly::x(f);
    let n = r * d;
    // columns: images of z^l·e_j
    let mut cols: Vec<Vec<APoly>> = Vec::with_capacity(n);
    let mut zl = f.one();
    let mut zpows = Vec::with_capacity(d);
    for _ in 0..d {
        zpows.push(zl.clone());
        zl = zl.mul(&f.gen());
    }
    for j in 0..r {
        for zp in &zpows {
            let mut out: Vec<FPoly> = vec![FPoly::zero(f); r];
            out[j] = t.mul(&Poly::constant(zp.clone()));
            for i in 0..=r {
                let h = psi.coeff(i);
                if h.is_zero() {
                    continue;
                }
                // h_i·σ^i(z^l)·(row j of B_i)
                let c = h.mul(&zp.frob_pow(i));
                for (k, o) in out.iter_mut().enumerate() {
                    let term = tau_pows[i][j][k].mul(&Poly::constant(c.clone()));
                    *o = o.sub(&term);
                }
            }
            let mut col = Vec::with_capacity(n);
            for o in &out {
                for l in 0..d {
                    col.push(APoly::new(base, o.coeffs().iter().map(|c| c.coords_fq()[l]).collect()));
                }
            }
            cols.push(col);
        }
    }
    let m: Matrix<APoly> = (0..n).map(|i| cols.iter().map(|c| c[i].clone()).collect()).collect();
    let kernel = linalg::poly_kernel(&m, n);
    kernel
        .into_iter()
        .map(|v| {
            let x: Vec<FPoly> = (0..r)
                .map(|j| {
                    let mut acc = FPoly::zero(f);
                    for l in 0..d {
                        let p = v[j * d + l].map(f, |c| f.from_fq(*c));
                        acc = acc.add(&p.mul(&Poly::constant(zpows[l].clone())));
                    }
                    acc
                })
                .collect();
            let u = motive::motive_reconstruct(phi, &x);
            Morphism::new(phi.clone(), psi.clone(), u).expect("kernel vectors are morphisms")
        })
        .collect()
}

/// Same Frobenius characteristic polynomial.
pub fn is_isogenous(phi: &DrinfeldModule<FElem>, psi: &DrinfeldModule<FElem>) -> bool {
    phi.field() == psi.field()
        && phi.gen() == psi.gen()
        && phi.rank() == psi.rank()
        && motive::frobenius_charpoly(phi) == motive::frobenius_charpoly(psi)
}

pub fn is_supersingular(phi: &DrinfeldModule<FElem>) -> bool {
    phi.height() == phi.rank()
}

pub fn is_ordinary(phi: &DrinfeldModule<FElem>) -> bool {
    phi.height() == 1
}

/// r_{φ, deg 𝔭} for rank 2, from r_0 = 1, r_1 = g_1 and
/// r_{k+2} = g_1^{q^{k+1}} r_{k+1} − (z^{q^{k+1}} − z) g_2^{q^k} r_k.
pub fn hasse_invariant(phi: &DrinfeldModule<FElem>) -> Result<FElem> {
    if phi.rank() != 2 {
        return Err(Error::InvalidArgument("Hasse invariant needs rank 2".into()));
    }
    let n = phi.characteristic().deg().unwrap();
    let z = phi.gen().clone();
    let g = phi.coeff(1);
    let delta = phi.coeff(2);
    let mut r0 = z.one();
    let mut r1 = g.clone();
    // g^{q^{k+1}}, z^{q^{k+1}}, Δ^{q^k}
    let mut gk = g.frob();
    let mut zk = z.frob();
    let mut dk = delta;
    for _ in 1..n {
        let r2 = gk.mul(&r1).sub(&zk.sub(&z).mul(&dk).mul(&r0));
        r0 = r1;
        r1 = r2;
        gk = gk.frob();
        zk = zk.frob();
        dk = dk.frob();
    }
    Ok(r1)
}

/// χ_φ(X) = ∏_{i=1}^{r/a} (X^a − c_i 𝔭^b) for supersingular φ.
#[derive(Clone, Debug)]
pub struct SupersingularShape {
    pub a: usize,
    pub b: usize,
    pub p: APoly,
    /// The c_i, in `field`.
    pub c: Vec<FElem>,
    pub field: &'static ExtCtx,
}

impl SupersingularShape {
    /// ∏ (X^a − c_i 𝔭^b) over field[T], coefficients ascending in X.
    pub fn expand(&self) -> Vec<FPoly> {
        let f = self.field;
        let pb = self.p.pow(self.b as u64).map(f, |c| f.from_fq(*c));
        let mut acc: Vec<FPoly> = vec![FPoly::one(f)];
        for ci in &self.c {
            let mut next = vec![FPoly::zero(f); acc.len() + self.a];
            let shift = pb.mul(&Poly::constant(ci.clone())).neg();
            for (k, x) in acc.iter().enumerate() {
                next[k + self.a] = next[k + self.a].add(x);
                next[k] = next[k].add(&x.mul(&shift));
            }
            acc = next;
        }
        acc
    }
}

pub fn supersingular_charpoly_shape(phi: &DrinfeldModule<FElem>, rng: &mut impl Rng) -> Result<SupersingularShape> {
    if !is_supersingular(phi) {
        return Err(Error::InvalidArgument("module is not supersingular".into()));
    }
    let chi = motive::frobenius_charpoly(phi);
    shape_of(phi, &chi, rng)
}

fn shape_of(phi: &DrinfeldModule<FElem>, chi: &CharPoly, rng: &mut impl Rng) -> Result<SupersingularShape> {
    let r = phi.rank();
    let f = phi.field();
    let d = f.d;
    let p = phi.characteristic();
    let dp = p.deg().unwrap();
    // deg a_0 = d forces a/b = r·deg 𝔭 / d.
    let g = (r * dp).gcd(&d);
    let (a, b) = (r * dp / g, d / g);
    if r % a != 0 {
        return Err(Error::Unsupported("characteristic polynomial has no power shape".into()));
    }
    let n = r / a;
    let base = f.base;
    // e_j with χ = Σ_j e_j 𝔭^{b(n−j)} X^{aj}
    let mut e = Vec::with_capacity(n + 1);
    for (i, coef) in chi.coeffs.iter().enumerate() {
        if i % a != 0 {
            if !coef.is_zero() {
                return Err(Error::Unsupported("unexpected nonzero coefficient".into()));
            }
            continue;
        }
        let j = i / a;
        let pw = p.pow((b * (n - j)) as u64);
        let q = coef.div_exact(&pw).filter(|q| q.deg().map_or(true, |d| d == 0));
        let q = q.ok_or_else(|| Error::Unsupported("coefficient is not a constant times a power of 𝔭".into()))?;
        e.push(q.coeff(0));
    }
    // splitting field of Σ e_j Y^j over Fq
    let ypoly = APoly::new(base, e);
    let k = ypoly
        .cz_factor(rng.gen())
        .iter()
        .map(|(fac, _)| fac.deg().unwrap())
        .fold(1usize, |acc, x| acc.lcm(&x));
    let field = if d % k == 0 { f } else { ExtCtx::new(base, d.lcm(&k), None)? };
    let yp = ypoly.map(field, |c| field.from_fq(*c));
    let mut c = Vec::new();
    let mut rest = yp;
    for root in roots(&rest.clone(), rng) {
        let lin = Poly::new(field, vec![root.neg(), field.one()]);
        while let Some(qt) = rest.div_exact(&lin) {
            c.push(root.clone());
            rest = qt;
        }
    }
    c.sort_by(|x, y| x.coords().iter().rev().cmp(y.coords().iter().rev()));
    Ok(SupersingularShape { a, b, p, c, field })
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

    #[test]
    fn codomain_inference() {
        let f = f49();
        let z = f.gen();
        let phi = DrinfeldModule::new(vec![z.clone(), z.clone(), f.one()]).unwrap();
        let u = Morphism::from_ore(&phi, OrePoly::new(f, vec![f.one(), f.one()])).unwrap();
        assert_eq!(u.codomain.coeffs(), &[z.clone(), z.pow(7), f.one()]);
        assert!(Morphism::identity(&phi).ore.is_one());
        let fr = Morphism::from_ore(&phi, OrePoly::monomial(f.one(), 2)).unwrap();
        assert_eq!(fr.codomain, phi);
    }

    #[test]
    fn supersingular_golden() {
        let f = f49();
        let z = f.gen();
        let phi = DrinfeldModule::new(vec![f.one(), f.zero(), z.clone()]).unwrap();
        assert!(is_supersingular(&phi));
        assert!(hasse_invariant(&phi).unwrap().is_zero());
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s = supersingular_charpoly_shape(&phi, &mut rng).unwrap();
        assert_eq!((s.a, s.b), (1, 1));
        assert_eq!(s.p, APoly::from_i64(f.base, &[-1, 1]));
        let mut want = vec![z.mul(&f.from_int(5)), z.mul(&f.from_int(2)).add(&f.from_int(5))];
        want.sort_by(|x, y| x.coords().iter().rev().cmp(y.coords().iter().rev()));
        assert_eq!(s.c, want);
        let phi_p = phi.image(&s.p);
        let (v, m) = separable_factor(&Morphism::scalar(&phi, &s.p)).unwrap();
        assert_eq!(phi_p, OrePoly::monomial(z.clone(), 2));
        assert_eq!((v.ore, m), (OrePoly::constant(z), 2));
    }

    #[test]
    fn ordinary_rank_two() {
        let f = f49();
        let z = f.gen();
        let phi = DrinfeldModule::new(vec![z.clone(), z.clone(), f.one()]).unwrap();
        assert!(is_ordinary(&phi));
        assert!(!hasse_invariant(&phi).unwrap().is_zero());
        let end = hom_basis(&phi, &phi);
        assert_eq!(end.len(), 2);
        let psi = DrinfeldModule::new(vec![z.clone(), f.one().sub(&z), f.one()]).unwrap();
        let h = hom_basis(&phi, &psi);
        assert_eq!(h.len(), 2);
        assert!(h.iter().any(|m| m.ore.deg() == Some(0)));
    }
}
