//! The action of Cl(End φ) on the F-isogeny class of an ordinary rank-2
//! Drinfeld module, through ideals of A[X]/(χ_φ) and Mumford pairs.

use std::fmt;

use crate::algebra::{APoly, FElem, Poly};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::hom::{self, Morphism};
use crate::motive::{self, CharPoly};
use crate::ore::{rgcd, OrePoly};

/// An element of A[X]: coefficients of X^0, X^1, … in A.
pub type BiPoly = Poly<APoly>;

/// A finitely generated ideal of A[X]/(χ_φ(X)).
#[derive(Clone, Debug, PartialEq)]
pub struct IdealRep {
    pub generators: Vec<BiPoly>,
}

impl IdealRep {
    pub fn new(generators: Vec<BiPoly>) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::InvalidArgument("an ideal needs at least one generator".into()));
        }
        Ok(IdealRep { generators })
    }

    /// The ideal generated by a(T).
    pub fn scalar(a: &APoly) -> Self {
        IdealRep { generators: vec![Poly::constant(a.clone())] }
    }

    /// Products of generators.
    pub fn mul(&self, o: &IdealRep) -> IdealRep {
        let mut g = Vec::with_capacity(self.generators.len() * o.generators.len());
        for a in &self.generators {
            for b in &o.generators {
                g.push(a.mul(b));
            }
        }
        IdealRep { generators: g }
    }
}

/// (u, v) with u monic, deg v < deg u ≤ g and u | v² + a·v + b.
#[derive(Clone, Debug, PartialEq)]
pub struct MumfordDivisor {
    pub u: APoly,
    pub v: APoly,
}

impl MumfordDivisor {
    pub fn new(u: APoly, v: APoly, setup: &ActionSetup) -> Result<Self> {
        let g = setup.genus()?;
        if u.is_zero() {
            return Err(Error::InvalidArgument("degenerate divisor: u = 0".into()));
        }
        if !u.is_monic() {
            return Err(Error::InvalidArgument("u must be monic".into()));
        }
        let du = u.deg().unwrap();
        if du > g {
            return Err(Error::InvalidArgument(format!("deg u = {du} exceeds the genus {g}")));
        }
        if v.deg().is_some_and(|dv| dv >= du) {
            return Err(Error::InvalidArgument("deg v must be smaller than deg u".into()));
        }
        let (a, b) = (&setup.chi.coeffs[1], &setup.chi.coeffs[0]);
        if !u.divides(&v.mul(&v).add(&a.mul(&v)).add(b)) {
            return Err(Error::InvalidArgument("u does not divide χ(T, v)".into()));
        }
        Ok(MumfordDivisor { u, v })
    }

    pub fn identity(setup: &ActionSetup) -> Self {
        let f = setup.chi.fq();
        MumfordDivisor { u: APoly::one(f), v: APoly::zero(f) }
    }

    /// (u, −v − a mod u), the class of the conjugate divisor.
    pub fn inverse(&self, setup: &ActionSetup) -> Self {
        let a = &setup.chi.coeffs[1];
        MumfordDivisor { u: self.u.clone(), v: self.v.neg().sub(a).rem(&self.u) }
    }

    /// The ideal ⟨u, X − v⟩.
    pub fn ideal(&self) -> IdealRep {
        let f = self.u.fq();
        IdealRep {
            generators: vec![Poly::constant(self.u.clone()), Poly::new(f, vec![self.v.neg(), APoly::one(f)])],
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetupViolation {
    NotRank2,
    NotOrdinary,
    ZeroTrace,
    EvenCharacteristic,
    NotSmooth,
    EvenDegree,
}

impl fmt::Display for SetupViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SetupViolation::NotRank2 => "rank is not 2",
            SetupViolation::NotOrdinary => "φ is not ordinary",
            SetupViolation::ZeroTrace => "Frobenius trace a is zero",
            SetupViolation::EvenCharacteristic => "smoothness test needs odd q",
            SetupViolation::NotSmooth => "a² − 4b is not squarefree",
            SetupViolation::EvenDegree => "d is not odd",
        })
    }
}

/// Outcome of the hypothesis check, with χ_φ = X² + aX + b.
#[derive(Clone, Debug)]
pub struct ActionSetup {
    pub chi: CharPoly,
    pub violations: Vec<SetupViolation>,
    pub d: usize,
}

impl ActionSetup {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }

    /// g = (d − 1)/2, or every violated hypothesis.
    pub fn genus(&self) -> Result<usize> {
        if self.is_valid() {
            Ok((self.d - 1) / 2)
        } else {
            let v: Vec<String> = self.violations.iter().map(|v| v.to_string()).collect();
            Err(Error::Unsupported(v.join("; ")))
        }
    }
}

pub fn action_setup_check(phi: &DrinfeldModule<FElem>) -> ActionSetup {
    let d = phi.degree();
    let chi = motive::frobenius_charpoly(phi);
    let mut violations = Vec::new();
    if phi.rank() != 2 {
        violations.push(SetupViolation::NotRank2);
    } else {
        if !hom::is_ordinary(phi) {
            violations.push(SetupViolation::NotOrdinary);
        }
        let (a, b) = (&chi.coeffs[1], &chi.coeffs[0]);
        if a.is_zero() {
            violations.push(SetupViolation::ZeroTrace);
        }
        let fq = a.fq();
        if fq.p == 2 {
            violations.push(SetupViolation::EvenCharacteristic);
        } else {
            let disc = a.mul(a).sub(&b.scale(&crate::algebra::Fq::from_int(fq, 4)));
            if disc.is_zero() || !disc.is_squarefree() {
                violations.push(SetupViolation::NotSmooth);
            }
        }
    }
    if d % 2 == 0 {
        violations.push(SetupViolation::EvenDegree);
    }
    ActionSetup { chi, violations, d }
}

/// P(ψ_T, π) for P ∈ A[X], π = τ^d.
pub fn endomorphism(p: &BiPoly, psi: &DrinfeldModule<FElem>) -> OrePoly<FElem> {
    let f = psi.field();
    let mut acc = OrePoly::zero(f);
    for c in p.coeffs().iter().rev() {
        acc = acc.shift(f.d).add(&psi.image(c));
    }
    acc
}

/// 𝔞 ∗ ψ, the codomain of u_𝔞 = rgcd of the generator images.
///
/// The rgcd is taken monic, unless it is associate to one of the generator
/// images, in which case that image is used; principal ideals given by a
/// generator then act as the identity.
pub fn ideal_action(a: &IdealRep, psi: &DrinfeldModule<FElem>) -> Result<DrinfeldModule<FElem>> {
    let images: Vec<OrePoly<FElem>> =
        a.generators.iter().map(|p| endomorphism(p, psi)).filter(|u| !u.is_zero()).collect();
    if images.is_empty() {
        return Err(Error::InvalidArgument("all generators reduce to 0".into()));
    }
    rgcd_codomain(psi, &images)
}

/// D ∗ ψ through rgcd(ψ_u, π − ψ_v).
pub fn mumford_action(dv: &MumfordDivisor, psi: &DrinfeldModule<FElem>) -> Result<DrinfeldModule<FElem>> {
    if dv.u.is_zero() {
        return Err(Error::InvalidArgument("degenerate divisor: u = 0".into()));
    }
    let f = psi.field();
    let pi = OrePoly::monomial(f.one(), f.d);
    rgcd_codomain(psi, &[psi.image(&dv.u), pi.sub(&psi.image(&dv.v))])
}

fn rgcd_codomain(psi: &DrinfeldModule<FElem>, images: &[OrePoly<FElem>]) -> Result<DrinfeldModule<FElem>> {
    let mut u = rgcd(images)?;
    if let Some(w) = images.iter().find(|w| w.deg() == u.deg()) {
        u = w.clone();
    }
    Ok(Morphism::from_ore(psi, u)?.codomain)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ExtCtx, FqCtx};

    #[test]
    fn golden_ideal_squared_is_principal() {
        let fq = FqCtx::prime(7).unwrap();
        let f = ExtCtx::new(fq, 2, Some(&[3, 6, 1])).unwrap();
        let z = f.gen();
        let phi = DrinfeldModule::new(vec![z.clone(), z.clone(), f.one()]).unwrap();
        let a = IdealRep::new(vec![
            Poly::constant(APoly::from_i64(fq, &[4, 1])),
            Poly::new(fq, vec![APoly::from_i64(fq, &[3]), APoly::one(fq)]),
        ])
        .unwrap();
        let psi = ideal_action(&a, &phi).unwrap();
        assert_ne!(psi, phi);
        assert_eq!(motive::frobenius_charpoly(&psi), motive::frobenius_charpoly(&phi));
        assert_eq!(ideal_action(&a, &psi).unwrap(), phi);
        assert_eq!(ideal_action(&IdealRep::scalar(&APoly::one(fq)), &psi).unwrap(), psi);
        assert_eq!(ideal_action(&IdealRep::scalar(&APoly::from_i64(fq, &[4, 1])), &psi).unwrap(), psi);
        let setup = action_setup_check(&phi);
        assert!(setup.violations.contains(&SetupViolation::EvenDegree));
    }
}
