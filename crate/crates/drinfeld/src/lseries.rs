//! L-series of Drinfeld modules over F = Fq(z) with coefficients in Fq[z],
//! as truncated Euler products over the places of F.
//!
//! A module is given as `DrinfeldModule<Rat>` with γ(T) = z, where the
//! variable of `Rat` plays the role of z; each g_i must be a polynomial.

use crate::algebra::apoly::irreducibles_of_degree;
use crate::algebra::{APoly, ExtCtx, FElem, FqCtx, LaurentSeries, Rat, Ring};
use crate::carlitz;
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::motive::{frobenius_charpoly, CharPoly};

/// φ mod 𝔭 over F_𝔭 = Fq[z]/𝔭.
#[derive(Clone, Debug)]
pub struct ReducedModule {
    pub place: APoly,
    pub module: DrinfeldModule<FElem>,
}

fn integral_coeffs(phi: &DrinfeldModule<Rat>) -> Result<Vec<APoly>> {
    let f = phi.gen().fq();
    if *phi.gen() != Rat::t(f) {
        return Err(Error::InvalidArgument("γ(T) must be the variable z of F".into()));
    }
    phi.coeffs()[1..]
        .iter()
        .map(|g| {
            if g.is_poly() {
                Ok(g.num().clone())
            } else {
                Err(Error::InvalidArgument("coefficients must lie in Fq[z]".into()))
            }
        })
        .collect()
}

pub fn reduce_at_place(phi: &DrinfeldModule<Rat>, p: &APoly) -> Result<ReducedModule> {
    if !p.is_monic() || !p.is_irreducible() {
        return Err(Error::InvalidArgument("a place is a monic irreducible polynomial".into()));
    }
    let g = integral_coeffs(phi)?;
    let f = ExtCtx::from_irreducible(p);
    let mut coeffs = vec![f.gen()];
    coeffs.extend(g.iter().map(|c| f.from_apoly(c)));
    if coeffs.last().unwrap().is_zero() {
        return Err(Error::InvalidArgument("bad reduction: 𝔭 divides the leading coefficient".into()));
    }
    Ok(ReducedModule { place: p.clone(), module: DrinfeldModule::new(coeffs)? })
}

/// χ_{φ mod 𝔭}, or None at a bad place.
pub fn local_charpoly(phi: &DrinfeldModule<Rat>, p: &APoly) -> Result<Option<CharPoly>> {
    match reduce_at_place(phi, p) {
        Ok(red) => Ok(Some(frobenius_charpoly(&red.module))),
        Err(Error::InvalidArgument(m)) if m.starts_with("bad reduction") => Ok(None),
        Err(e) => Err(e),
    }
}

/// L(φ; X, s) mod X^n, with coefficients in K.
#[derive(Clone, Debug, PartialEq)]
pub struct LSeriesTruncation {
    pub coeffs: Vec<Rat>,
    /// Bad places of degree < n, whose factors were left out.
    pub skipped: Vec<APoly>,
}

impl LSeriesTruncation {
    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }
}

fn series_mul(a: &[Rat], b: &[Rat]) -> Vec<Rat> {
    let n = a.len().min(b.len());
    let mut out = vec![a[0].zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            if !y.is_zero() {
                out[i + j] = out[i + j].add(&x.mul(y));
            }
        }
    }
    out
}

/// 1/u for a series u with u_0 = 1.
fn series_inv_unit(u: &[Rat]) -> Vec<Rat> {
    let n = u.len();
    let mut out = vec![u[0].zero(); n];
    out[0] = u[0].one();
    for k in 1..n {
        let mut s = u[0].zero();
        for j in 1..=k {
            if !u[j].is_zero() && !out[k - j].is_zero() {
                s = s.sub(&u[j].mul(&out[k - j]));
            }
        }
        out[k] = s;
    }
    out
}

/// (a_i/a_0)·𝔭^{-si}, the coefficients of χ(Y)/χ(0) at Y = X^D 𝔭^{-s}.
fn normalized_terms(chi: &CharPoly, p: &APoly, s: u64) -> Vec<Rat> {
    let a0 = &chi.coeffs[0];
    let ps = p.pow(s);
    let mut pow = APoly::one(p.fq());
    chi.coeffs
        .iter()
        .map(|a| {
            let r = Rat::new(a.clone(), a0.mul(&pow)).unwrap();
            pow = pow.mul(&ps);
            r
        })
        .collect()
}

/// The product over good places of degree ≤ `max_degree`.
pub fn lseries_truncated_upto(phi: &DrinfeldModule<Rat>, n: usize, s: u64, max_degree: usize) -> Result<LSeriesTruncation> {
    if n == 0 {
        return Err(Error::InvalidArgument("X-precision must be at least 1".into()));
    }
    integral_coeffs(phi)?;
    let fq = phi.gen().fq();
    let mut acc = vec![Rat::zero_in(fq); n];
    acc[0] = Rat::one_in(fq);
    let mut skipped = Vec::new();
    for d in 1..=max_degree {
        for p in irreducibles_of_degree(fq, d) {
            let Some(chi) = local_charpoly(phi, &p)? else {
                if d < n {
                    skipped.push(p);
                }
                continue;
            };
            if d >= n {
                continue;
            }
            let mut u = vec![Rat::zero_in(fq); n];
            for (i, c) in normalized_terms(&chi, &p, s).into_iter().enumerate() {
                if i * d < n {
                    u[i * d] = c;
                }
            }
            acc = series_mul(&acc, &series_inv_unit(&u));
        }
    }
    Ok(LSeriesTruncation { coeffs: acc, skipped })
}

/// L(φ; X, s) mod X^n: places of degree ≥ n contribute factors ≡ 1.
pub fn lseries_truncated(phi: &DrinfeldModule<Rat>, n: usize, s: u64) -> Result<LSeriesTruncation> {
    lseries_truncated_upto(phi, n, s, n.saturating_sub(1))
}

/// L(φ; 1, s) modulo T^{-prec}.
#[derive(Clone, Debug, PartialEq)]
pub struct LValue {
    pub value: LaurentSeries,
    pub max_degree: usize,
    pub skipped: Vec<APoly>,
}

/// Largest place degree D whose factor can differ from 1 modulo T^{-prec}.
///
/// For a good place of degree D, χ has deg a_0 = D and deg a_i ≤ (r − i)D/r,
/// so the term (a_i/a_0)𝔭^{-si} has valuation at least Di(s + 1/r) ≥
/// D(rs + 1)/r. Places with D(rs + 1) ≥ r·prec are therefore invisible.
pub fn lvalue_degree_bound(r: usize, s: u64, prec: i64) -> usize {
    let r = r as i64;
    let per = r * s as i64 + 1;
    let mut d = 0;
    while (d + 1) * per < r * prec {
        d += 1;
    }
    d as usize
}

fn fq_of(phi: &DrinfeldModule<Rat>) -> &'static FqCtx {
    phi.gen().fq()
}

fn is_carlitz(phi: &DrinfeldModule<Rat>) -> bool {
    phi.rank() == 1 && phi.coeff(1).is_one()
}

/// The Euler product at X = 1 over good places of degree ≤ `max_degree`.
pub fn lseries_value_upto(phi: &DrinfeldModule<Rat>, s: u64, prec: i64, max_degree: usize) -> Result<LValue> {
    integral_coeffs(phi)?;
    let fq = fq_of(phi);
    let mut acc = LaurentSeries::one(fq, prec);
    let mut skipped = Vec::new();
    for d in 1..=max_degree {
        for p in irreducibles_of_degree(fq, d) {
            let Some(chi) = local_charpoly(phi, &p)? else {
                skipped.push(p);
                continue;
            };
            let mut den = LaurentSeries::zero(fq, prec);
            for c in normalized_terms(&chi, &p, s) {
                den = den.add(&LaurentSeries::from_rat(&c, prec));
            }
            acc = acc.mul(&den.inv()?).truncate(prec);
        }
    }
    Ok(LValue { value: acc, max_degree, skipped })
}

/// L(φ; 1, s) modulo T^{-prec}, for s ≥ 1. The Carlitz module also
/// accepts s = 0 through L(c; 1, s) = ζ_C(s + 1).
pub fn lseries_value(phi: &DrinfeldModule<Rat>, s: u64, prec: i64) -> Result<LValue> {
    if s == 0 {
        if is_carlitz(phi) {
            integral_coeffs(phi)?;
            let value = carlitz::carlitz_zeta(fq_of(phi), 1, prec)?;
            return Ok(LValue { value, max_degree: 0, skipped: Vec::new() });
        }
        return Err(Error::InvalidArgument("the value at X = 1 needs s ≥ 1".into()));
    }
    lseries_value_upto(phi, s, prec, lvalue_degree_bound(phi.rank(), s, prec))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u32) -> &'static FqCtx {
        FqCtx::prime(q).unwrap()
    }

    fn module(fq: &'static FqCtx, g: &[&[i64]]) -> DrinfeldModule<Rat> {
        let mut c = vec![Rat::t(fq)];
        c.extend(g.iter().map(|x| Rat::from_poly(APoly::from_i64(fq, x))));
        DrinfeldModule::new(c).unwrap()
    }

    #[test]
    fn reductions() {
        let fq = f(5);
        let z = APoly::x(fq);
        let c = carlitz::carlitz_module(fq);
        let p = APoly::from_i64(fq, &[2, 0, 1]);
        let red = reduce_at_place(&c, &p).unwrap();
        assert_eq!(red.module.coeffs()[1], red.module.field().one());
        let phi = module(fq, &[&[0, 0, 1], &[1]]);
        let red = reduce_at_place(&phi, &z).unwrap();
        assert!(red.module.coeff(1).is_zero());
        assert!(red.module.gen().is_zero());
        let bad = module(fq, &[&[1], &[0, 1]]);
        assert!(reduce_at_place(&bad, &z).is_err());
    }

    #[test]
    fn carlitz_first_term() {
        let fq = f(7);
        let c = carlitz::carlitz_module(fq);
        let l = lseries_truncated(&c, 2, 0).unwrap();
        let t = APoly::x(fq);
        assert!(l.coeffs[0].is_one());
        assert_eq!(l.coeffs[1], Rat::new(APoly::from_i64(fq, &[-1]), t.pow(7).sub(&t)).unwrap());
        let one = lseries_truncated(&c, 1, 0).unwrap();
        assert_eq!(one.coeffs, vec![Rat::one_in(fq)]);
        assert!(lseries_value(&module(fq, &[&[0, 1], &[1]]), 0, 10).is_err());
    }
}
