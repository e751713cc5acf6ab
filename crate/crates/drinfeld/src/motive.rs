//! Anderson motives M(φ) = F{τ} as F[T]-modules with basis 1, τ, …, τ^{r−1}.
//!
//! Vectors are rows. The τ-action is x ↦ σ(x)·B where σ twists the
//! F-coefficients and B = `tau_matrix(φ)`. A morphism u: φ → ψ gives the
//! F[T]-linear map M(ψ) → M(φ), f ↦ f·u, whose matrix has rows the
//! coordinates of τ^i·u.

use std::fmt;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{APoly, FElem, Field, FqCtx, FrobField, Poly, Ring};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::hom::Morphism;
use crate::ore::OrePoly;

/// Elements of F[T].
pub type FPoly = Poly<FElem>;

/// Coordinates of m ∈ M(φ): m = Σ_j Σ_k v_{jk} τ^j φ_T^k.
pub fn motive_reduce(phi: &DrinfeldModule<FElem>, m: &OrePoly<FElem>) -> Vec<FPoly> {
    let f = phi.field();
    let r = phi.rank();
    let phi_t = phi.phi_t();
    let mut cols: Vec<Vec<FElem>> = vec![Vec::new(); r];
    let mut cur = m.clone();
    while !cur.is_zero() {
        let (qt, rem) = cur.right_divmod(&phi_t).unwrap();
        for (j, col) in cols.iter_mut().enumerate() {
            col.push(rem.coeff(j));
        }
        cur = qt;
    }
    cols.into_iter().map(|c| Poly::new(f, c)).collect()
}

/// Inverse of `motive_reduce`.
pub fn motive_reconstruct(phi: &DrinfeldModule<FElem>, v: &[FPoly]) -> OrePoly<FElem> {
    let f = phi.field();
    let phi_t = phi.phi_t();
    let maxk = v.iter().map(|p| p.len()).max().unwrap_or(0);
    let mut acc = OrePoly::zero(f);
    for k in (0..maxk).rev() {
        let layer = OrePoly::new(f, v.iter().map(|p| p.coeff(k)).collect());
        acc = acc.mul(&phi_t).add(&layer);
    }
    acc
}

/// Matrix of τ_{M(φ)}: row i < r−1 is e_{i+1}; the last row is
/// ((T − z)/g_r, −g_1/g_r, …, −g_{r−1}/g_r).
pub fn tau_matrix(phi: &DrinfeldModule<FElem>) -> Matrix<FPoly> {
    let r = phi.rank();
    (0..r).map(|i| motive_reduce(phi, &OrePoly::tau(phi.field()).pow(i as u64 + 1))).collect()
}

/// Matrix of M(u): rows are the coordinates of τ^i·u in M(φ).
pub fn morphism_motive_matrix(u: &Morphism) -> Matrix<FPoly> {
    let phi = &u.domain;
    let r = phi.rank();
    let mut rows = Vec::with_capacity(r);
    let mut cur = u.ore.clone();
    for _ in 0..r {
        rows.push(motive_reduce(phi, &cur));
        cur = cur.tau_pow_mul(1);
    }
    rows
}

pub fn sigma_matrix(m: &Matrix<FPoly>) -> Matrix<FPoly> {
    m.iter().map(|row| row.iter().map(|p| p.frob_coeffs()).collect()).collect()
}

/// σ^{d−1}(B)⋯σ(B)·B, the matrix of τ^d.
pub fn frobenius_matrix(phi: &DrinfeldModule<FElem>) -> Matrix<FPoly> {
    let b = tau_matrix(phi);
    let mut acc = b.clone();
    let mut twisted = b;
    for _ in 1..phi.degree() {
        twisted = sigma_matrix(&twisted);
        acc = linalg::mat_mul(&twisted, &acc);
    }
    acc
}

/// X^r + a_{r−1} X^{r−1} + … + a_0 with a_i ∈ A.
#[derive(Clone, PartialEq, Debug)]
pub struct CharPoly {
    /// a_0, …, a_r with a_r = 1.
    pub coeffs: Vec<APoly>,
}

impl CharPoly {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }
    pub fn fq(&self) -> &'static FqCtx {
        self.coeffs[0].fq()
    }
    /// χ(u) = Σ φ_{a_i} u^i in F{τ}.
    pub fn eval_ore(&self, phi: &DrinfeldModule<FElem>, u: &OrePoly<FElem>) -> OrePoly<FElem> {
        let mut acc = OrePoly::zero(phi.field());
        for a in self.coeffs.iter().rev() {
            acc = acc.mul(u).add(&phi.image(a));
        }
        acc
    }
    /// Coefficients reduced modulo an element of A.
    pub fn reduce_mod(&self, m: &APoly) -> Vec<APoly> {
        self.coeffs.iter().map(|a| a.rem(m)).collect()
    }
}

impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        let r = self.degree();
        for i in (0..=r).rev() {
            let a = &self.coeffs[i];
            if a.is_zero() {
                continue;
            }
            let x = match i {
                0 => String::new(),
                1 => "X".to_string(),
                _ => format!("X^{i}"),
            };
            let s = crate::text::render_apoly(a, "T");
            terms.push(if x.is_empty() {
                s
            } else if a.is_one() {
                x
            } else if a.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 {
                format!("({s})*{x}")
            } else {
                format!("{s}*{x}")
            });
        }
        if terms.is_empty() {
            terms.push("0".into());
        }
        write!(f, "{}", terms.join(" + "))
    }
}

/// det(X − M) over F[T], with coefficients checked to lie in A.
pub fn charpoly_of_matrix(m: &Matrix<FPoly>, f: &'static crate::algebra::ExtCtx) -> Result<CharPoly> {
    let c = linalg::charpoly(m, f);
    let coeffs: Option<Vec<APoly>> = c.iter().map(descend).collect();
    let coeffs = coeffs.ok_or_else(|| Error::NotAMorphism("characteristic polynomial does not descend to A".into()))?;
    Ok(CharPoly { coeffs })
}

/// An element of F[T] with coefficients in Fq, as an element of A.
pub fn descend(p: &FPoly) -> Option<APoly> {
    let f = p.base_ctx();
    let c: Option<Vec<_>> = p.coeffs().iter().map(|x| x.as_fq()).collect();
    Some(APoly::new(f.base, c?))
}

/// Characteristic polynomial of an endomorphism.
pub fn charpoly_endo(u: &Morphism) -> Result<CharPoly> {
    if u.domain != u.codomain {
        return Err(Error::NotAMorphism("not an endomorphism".into()));
    }
    charpoly_of_matrix(&morphism_motive_matrix(u), u.domain.field())
}

/// χ_φ, the characteristic polynomial of the Frobenius endomorphism τ^d.
pub fn frobenius_charpoly(phi: &DrinfeldModule<FElem>) -> CharPoly {
    charpoly_of_matrix(&frobenius_matrix(phi), phi.field()).expect("Frobenius charpoly has coefficients in A")
}

/// Monic generator of det M(u)·A.
pub fn norm_isogeny(u: &Morphism) -> Result<APoly> {
    Ok(norm_parts(u)?.1)
}

/// det M(u) = c·a with a ∈ A monic.
fn norm_parts(u: &Morphism) -> Result<(FElem, APoly)> {
    if u.ore.is_zero() {
        return Err(Error::InvalidArgument("norm of the zero morphism".into()));
    }
    let f = u.domain.field();
    let d = linalg::det(&morphism_motive_matrix(u), f);
    let c = d.lc().unwrap().clone();
    let a = descend(&d.monic()).ok_or_else(|| Error::NotAMorphism("norm does not descend to A".into()))?;
    Ok((c, a))
}

/// û: ψ → φ with û·u = φ_a and u·û = ψ_a, a = norm(u).
pub fn dual_isogeny(u: &Morphism) -> Result<Morphism> {
    let (c, _) = norm_parts(u)?;
    let f = u.domain.field();
    let adj = linalg::adjugate(&morphism_motive_matrix(u), f);
    let cinv = Poly::constant(c.inv().unwrap());
    // Row 0 of Mat(û) = c^{-1}·adj(M(u)) gives û in M(ψ).
    let row: Vec<FPoly> = adj[0].iter().map(|p| p.mul(&cinv)).collect();
    let dual = motive_reconstruct(&u.codomain, &row);
    Morphism::new(u.codomain.clone(), u.domain.clone(), dual)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ExtCtx, FqCtx};

    fn f49() -> &'static ExtCtx {
        ExtCtx::new(FqCtx::prime(7).unwrap(), 2, Some(&[3, 6, 1])).unwrap()
    }

    fn ap(c: &[i64]) -> APoly {
        APoly::from_i64(FqCtx::prime(7).unwrap(), c)
    }

    #[test]
    fn golden_endomorphism_charpoly() {
        let f = f49();
        let z = f.gen();
        let phi = DrinfeldModule::new(vec![z.clone(), z.clone(), f.one()]).unwrap();
        let u = OrePoly::new(f, vec![f.zero(), f.zero(), z.add(&f.one()), z.clone(), f.one()]);
        let m = Morphism::new(phi.clone(), phi.clone(), u.clone()).unwrap();
        let chi = charpoly_endo(&m).unwrap();
        assert_eq!(chi.coeffs, vec![ap(&[3, 5, 2, 1, 1]), ap(&[5, 3, 5]), ap(&[1])]);
        assert!(chi.eval_ore(&phi, &u).is_zero());
    }

    #[test]
    fn tau_matrix_shape() {
        let f = f49();
        let z = f.gen();
        let c = DrinfeldModule::carlitz(z.clone());
        let b = tau_matrix(&c);
        assert_eq!(b, vec![vec![Poly::new(f, vec![z.neg(), f.one()])]]);
        let phi = DrinfeldModule::new(vec![z.clone(), z.clone(), z.clone(), z.add(&f.one())]).unwrap();
        let v = motive_reduce(&phi, &OrePoly::tau(f).pow(3));
        let inv = z.add(&f.one()).inv().unwrap();
        assert_eq!(v[0], Poly::new(f, vec![z.neg().mul(&inv), inv.clone()]));
        assert_eq!(v[1], Poly::constant(z.neg().mul(&inv)));
        assert_eq!(v[2], Poly::constant(z.neg().mul(&inv)));
    }

    #[test]
    fn carlitz_frobenius() {
        let f = f49();
        let c = DrinfeldModule::carlitz(f.gen());
        let chi = frobenius_charpoly(&c);
        assert_eq!(chi.coeffs, vec![ap(&[-3, -6, -1]), ap(&[1])]);
    }

    #[test]
    fn golden_norm_and_dual() {
        let f = f49();
        let z = f.gen();
        let phi = DrinfeldModule::new(vec![z.clone(), z.clone(), f.one()]).unwrap();
        let u = Morphism::from_ore(&phi, OrePoly::new(f, vec![f.one(), f.one()])).unwrap();
        assert_eq!(u.codomain.coeffs(), &[z.clone(), z.frob(), f.one()]);
        let a = norm_isogeny(&u).unwrap();
        assert_eq!(a, ap(&[-1, 1]));
        let du = dual_isogeny(&u).unwrap();
        assert_eq!(du.ore, OrePoly::new(f, vec![z.sub(&f.one()), f.one()]));
        assert_eq!(du.ore.mul(&u.ore), phi.image(&a));
        assert_eq!(u.ore.mul(&du.ore), u.codomain.image(&a));
    }
}
