//! The Ore polynomial ring F{τ} with τ·c = c^q·τ.

use std::fmt;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{Embedding, ExtCtx, FElem, Field, Fq, FrobField, Ring};
use crate::error::{Error, Result};

/// Σ c_i τ^i, coefficients ascending; no trailing zeros.
#[derive(Clone)]
pub struct OrePoly<E: FrobField> {
    ctx: E::Ctx,
    c: Vec<E>,
}

impl<E: FrobField> PartialEq for OrePoly<E> {
    fn eq(&self, o: &Self) -> bool {
        self.ctx == o.ctx && self.c == o.c
    }
}

impl<E: FrobField> fmt::Debug for OrePoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Ore{:?}", self.c)
    }
}

impl<E: FrobField + fmt::Display> fmt::Display for OrePoly<E> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut terms = Vec::new();
        for (i, c) in self.c.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mono = match i {
                0 => String::new(),
                1 => "τ".to_string(),
                _ => format!("τ^{i}"),
            };
            let cs = c.to_string();
            terms.push(if mono.is_empty() {
                cs
            } else if c.is_one() {
                mono
            } else if cs.contains('+') {
                format!("({cs})*{mono}")
            } else {
                format!("{cs}*{mono}")
            });
        }
        write!(f, "{}", terms.join(" + "))
    }
}

impl<E: FrobField> OrePoly<E> {
    pub fn new(ctx: E::Ctx, mut c: Vec<E>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        OrePoly { ctx, c }
    }
    pub fn zero(ctx: E::Ctx) -> Self {
        OrePoly { ctx, c: Vec::new() }
    }
    pub fn one(ctx: E::Ctx) -> Self {
        Self::constant(E::one_in(ctx))
    }
    pub fn constant(a: E) -> Self {
        Self::new(a.ctx(), vec![a])
    }
    /// c·τ^n.
    pub fn monomial(a: E, n: usize) -> Self {
        let ctx = a.ctx();
        let mut c = vec![E::zero_in(ctx); n];
        c.push(a);
        Self::new(ctx, c)
    }
    pub fn tau(ctx: E::Ctx) -> Self {
        Self::monomial(E::one_in(ctx), 1)
    }
    pub fn ctx(&self) -> E::Ctx {
        self.ctx
    }
    pub fn coeffs(&self) -> &[E] {
        &self.c
    }
    pub fn coeff(&self, i: usize) -> E {
        self.c.get(i).cloned().unwrap_or_else(|| E::zero_in(self.ctx))
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }
    /// τ-degree; None for zero.
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// τ-valuation; None for zero.
    pub fn val(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }
    pub fn lc(&self) -> Option<&E> {
        self.c.last()
    }
    pub fn is_monic(&self) -> bool {
        self.lc().is_some_and(|c| c.is_one())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(self.ctx, (0..n).map(|i| self.coeff(i).add(&o.coeff(i))).collect())
    }
    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        Self::new(self.ctx, (0..n).map(|i| self.coeff(i).sub(&o.coeff(i))).collect())
    }
    pub fn neg(&self) -> Self {
        OrePoly { ctx: self.ctx, c: self.c.iter().map(|x| x.neg()).collect() }
    }
    /// a·f.
    pub fn scale_left(&self, a: &E) -> Self {
        Self::new(self.ctx, self.c.iter().map(|x| a.mul(x)).collect())
    }
    /// f·a = Σ c_i a^{q^i} τ^i.
    pub fn scale_right(&self, a: &E) -> Self {
        let mut ap = a.clone();
        let mut out = Vec::with_capacity(self.c.len());
        for x in &self.c {
            out.push(x.mul(&ap));
            ap = ap.frob();
        }
        Self::new(self.ctx, out)
    }
    /// f·τ^n.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![E::zero_in(self.ctx); n];
        c.extend(self.c.iter().cloned());
        OrePoly { ctx: self.ctx, c }
    }
    /// τ^n·f.
    pub fn tau_pow_mul(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![E::zero_in(self.ctx); n];
        c.extend(self.c.iter().map(|x| x.frob_pow(n)));
        OrePoly { ctx: self.ctx, c }
    }

    /// The twisted product; panics on mismatched base fields.
    pub fn mul(&self, o: &Self) -> Self {
        assert!(self.ctx == o.ctx, "Ore polynomials over different fields");
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ctx);
        }
        let n = self.c.len() + o.c.len() - 1;
        let mut out = vec![E::zero_in(self.ctx); n];
        // b^{(i)} holds the coefficients of o raised to q^i.
        let mut b: Vec<E> = o.c.clone();
        for (i, a) in self.c.iter().enumerate() {
            if i > 0 {
                for x in b.iter_mut() {
                    *x = x.frob();
                }
            }
            if a.is_zero() {
                continue;
            }
            for (j, bj) in b.iter().enumerate() {
                if !bj.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(bj));
                }
            }
        }
        Self::new(self.ctx, out)
    }
    pub fn checked_mul(&self, o: &Self) -> Result<Self> {
        if self.ctx != o.ctx {
            return Err(Error::FieldMismatch);
        }
        Ok(self.mul(o))
    }
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ctx);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// (Q, R) with f = Q·g + R and deg R < deg g.
    pub fn right_divmod(&self, g: &Self) -> Result<(Self, Self)> {
        let m = g.deg().ok_or(Error::DivisionByZero)?;
        let n0 = match self.deg() {
            Some(n) if n >= m => n,
            _ => return Ok((Self::zero(self.ctx), self.clone())),
        };
        // twists[k] = coefficients of g raised to q^k
        let mut twists: Vec<Vec<E>> = vec![g.c.clone()];
        for k in 1..=n0 - m {
            let nx = twists[k - 1].iter().map(|x| x.frob()).collect();
            twists.push(nx);
        }
        let lc_inv: Vec<E> = twists.iter().map(|t| t[m].inv().unwrap()).collect();
        let mut r = self.c.clone();
        let mut qc = vec![E::zero_in(self.ctx); n0 - m + 1];
        for n in (m..=n0).rev() {
            if r[n].is_zero() {
                continue;
            }
            let k = n - m;
            let x = r[n].mul(&lc_inv[k]);
            for (j, gj) in twists[k].iter().enumerate() {
                if !gj.is_zero() {
                    r[k + j] = r[k + j].sub(&x.mul(gj));
                }
            }
            qc[k] = x;
        }
        r.truncate(m);
        Ok((Self::new(self.ctx, qc), Self::new(self.ctx, r)))
    }
    pub fn right_rem(&self, g: &Self) -> Result<Self> {
        Ok(self.right_divmod(g)?.1)
    }
    /// Whether g right-divides self.
    pub fn right_divisible_by(&self, g: &Self) -> bool {
        self.right_divmod(g).is_ok_and(|(_, r)| r.is_zero())
    }
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(c) => self.scale_left(&c.inv().unwrap()),
        }
    }

    /// Extended right Euclid: (g, s, t) with s·f + t·o = g, g monic, and
    /// (s', t') with s'·f + t'·o = 0 where s'·f is the left-lcm.
    pub fn rxgcd_full(&self, o: &Self) -> (Self, Self, Self, Self, Self) {
        let ctx = self.ctx;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(ctx), Self::zero(ctx));
        let (mut t0, mut t1) = (Self::zero(ctx), Self::one(ctx));
        while !r1.is_zero() {
            let (qt, r2) = r0.right_divmod(&r1).unwrap();
            let s2 = s0.sub(&qt.mul(&s1));
            let t2 = t0.sub(&qt.mul(&t1));
            r0 = std::mem::replace(&mut r1, r2);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        if let Some(c) = r0.lc().cloned() {
            let ci = c.inv().unwrap();
            r0 = r0.scale_left(&ci);
            s0 = s0.scale_left(&ci);
            t0 = t0.scale_left(&ci);
        }
        (r0, s0, t0, s1, t1)
    }
    /// Monic right gcd with Bézout cofactors: s·f + t·o = g.
    pub fn rxgcd(&self, o: &Self) -> (Self, Self, Self) {
        let (g, s, t, _, _) = self.rxgcd_full(o);
        (g, s, t)
    }

    /// Monic left-lcm of two nonzero polynomials.
    pub fn llcm2(&self, o: &Self) -> Self {
        let (_, _, _, s1, _) = self.rxgcd_full(o);
        s1.mul(self).monic()
    }
}

/// Monic right gcd of a list; errors when every entry is zero.
pub fn rgcd<E: FrobField>(fs: &[OrePoly<E>]) -> Result<OrePoly<E>> {
    let mut it = fs.iter().filter(|f| !f.is_zero());
    let mut g = it.next().ok_or_else(|| Error::InvalidArgument("rgcd of zero polynomials".into()))?.monic();
    for f in it {
        if g.is_one() {
            break;
        }
        g = g.rxgcd(f).0;
    }
    Ok(g)
}

/// Monic left-lcm of a list of nonzero polynomials.
pub fn llcm<E: FrobField>(fs: &[OrePoly<E>]) -> Result<OrePoly<E>> {
    let first = fs.first().ok_or_else(|| Error::InvalidArgument("llcm of an empty list".into()))?;
    if fs.iter().any(|f| f.is_zero()) {
        return Err(Error::InvalidArgument("llcm with a zero polynomial".into()));
    }
    let mut l = first.monic();
    for f in &fs[1..] {
        l = l.llcm2(f);
    }
    Ok(l)
}

impl<E: FrobField> OrePoly<E> {
    /// Σ c_i x^{q^i} for x in the coefficient field.
    pub fn eval(&self, x: &E) -> E {
        let mut acc = E::zero_in(self.ctx);
        let mut xp = x.clone();
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                xp = xp.frob();
            }
            if !c.is_zero() {
                acc = acc.add(&c.mul(&xp));
            }
        }
        acc
    }
}

impl OrePoly<FElem> {
    pub fn field(&self) -> &'static ExtCtx {
        self.ctx
    }
    /// Coefficientwise image under an embedding F → E.
    pub fn base_change(&self, emb: &Embedding) -> OrePoly<FElem> {
        OrePoly::new(emb.to, self.c.iter().map(|x| emb.apply(x)).collect())
    }
    /// Evaluation at x ∈ E ⊇ F.
    pub fn eval_in(&self, emb: &Embedding, x: &FElem) -> Result<FElem> {
        if x.field() != emb.to || self.ctx != emb.from {
            return Err(Error::FieldMismatch);
        }
        Ok(self.base_change(emb).eval(x))
    }
    /// Matrix over Fq of x ↦ f(x) on E; column j is the image of z^j.
    pub fn fq_matrix(&self, emb: &Embedding) -> Matrix<Fq> {
        let e = emb.to;
        let fe = self.base_change(emb);
        let mut cols = Vec::with_capacity(e.d);
        let z = e.gen();
        let mut zp = e.one();
        for _ in 0..e.d {
            cols.push(fe.eval(&zp).coords_fq());
            zp = zp.mul(&z);
        }
        (0..e.d).map(|i| cols.iter().map(|c| c[i]).collect()).collect()
    }
    /// An Fq-basis of ker f in E.
    pub fn kernel_basis(&self, emb: &Embedding) -> Result<Subspace> {
        if self.is_zero() {
            return Err(Error::InvalidArgument("kernel of the zero polynomial".into()));
        }
        let e = emb.to;
        let m = self.fq_matrix(emb);
        let basis = linalg::nullspace(&m, e.base, e.d).into_iter().map(|v| e.from_fq_coords(&v)).collect();
        Ok(Subspace { field: e, basis })
    }
}

/// An Fq-subspace of an extension E, given by a basis.
#[derive(Clone, Debug)]
pub struct Subspace {
    pub field: &'static ExtCtx,
    pub basis: Vec<FElem>,
}

impl Subspace {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }
    /// Coordinates of x in the basis, or None if x ∉ V.
    pub fn coordinates(&self, x: &FElem) -> Option<Vec<Fq>> {
        let base = self.field.base;
        let d = self.field.d;
        let m: Matrix<Fq> = (0..d).map(|i| self.basis.iter().map(|b| b.coords_fq()[i]).collect()).collect();
        if self.basis.is_empty() {
            return x.is_zero().then(Vec::new);
        }
        linalg::solve(&m, &x.coords_fq(), base)
    }
    pub fn contains(&self, x: &FElem) -> bool {
        self.coordinates(x).is_some()
    }
    /// All elements; only for small dimension.
    pub fn elements(&self) -> Vec<FElem> {
        let q = self.field.base.q as u64;
        let n = q.pow(self.dim() as u32);
        (0..n)
            .map(|mut k| {
                let mut acc = self.field.zero();
                for b in &self.basis {
                    let c = (k % q) as u32;
                    k /= q;
                    acc = acc.add(&b.mul(&self.field.from_fq(Fq::new(self.field.base, c))));
                }
                acc
            })
            .collect()
    }
}

/// det(x_j^{q^i}); zero iff the family is Fq-linearly dependent.
pub fn moore_det<E: FrobField>(xs: &[E]) -> E {
    let ctx = xs[0].ctx();
    let n = xs.len();
    let mut m: Matrix<E> = Vec::with_capacity(n);
    let mut row = xs.to_vec();
    for i in 0..n {
        if i > 0 {
            row = row.iter().map(|x| x.frob()).collect();
        }
        m.push(row.clone());
    }
    det_field(m, ctx)
}

fn det_field<E: Field>(mut m: Matrix<E>, ctx: E::Ctx) -> E {
    let n = m.len();
    let mut d = E::one_in(ctx);
    for c in 0..n {
        let Some(p) = (c..n).find(|&i| !m[i][c].is_zero()) else { return E::zero_in(ctx) };
        if p != c {
            m.swap(p, c);
            d = d.neg();
        }
        d = d.mul(&m[c][c]);
        let inv = m[c][c].inv().unwrap();
        for i in c + 1..n {
            if m[i][c].is_zero() {
                continue;
            }
            let f = m[i][c].mul(&inv);
            for j in c..n {
                let t = f.mul(&m[c][j]);
                m[i][j] = m[i][j].sub(&t);
            }
        }
    }
    d
}

/// The monic separable polynomial of F{τ} whose kernel in E is V, when V is
/// stable under the Frobenius of F (so that the coefficients lie in F).
pub fn annihilator_of_subspace(v: &Subspace, emb: &Embedding) -> Result<OrePoly<FElem>> {
    let e = v.field;
    if e != emb.to {
        return Err(Error::FieldMismatch);
    }
    let df = emb.from.d;
    for b in &v.basis {
        if !v.contains(&b.frob_pow(df)) {
            return Err(Error::InvalidArgument("subspace is not Galois-stable over F".into()));
        }
    }
    let mut f = OrePoly::one(e);
    let q = e.base.q as u64;
    for w in &v.basis {
        let y = f.eval(w);
        if y.is_zero() {
            return Err(Error::InvalidArgument("basis is Fq-linearly dependent".into()));
        }
        // (τ − y^{q−1})·f kills w and keeps the old kernel.
        let lin = OrePoly::new(e, vec![y.pow(q - 1).neg(), e.one()]);
        f = lin.mul(&f);
    }
    let c: Option<Vec<FElem>> = f.coeffs().iter().map(|x| emb.preimage(x)).collect();
    let c = c.ok_or_else(|| Error::InvalidArgument("annihilator coefficients fall outside F".into()))?;
    Ok(OrePoly::new(emb.from, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FqCtx;

    fn f49() -> &'static ExtCtx {
        ExtCtx::new(FqCtx::prime(7).unwrap(), 2, Some(&[3, 6, 1])).unwrap()
    }

    #[test]
    fn twisted_product() {
        let f = f49();
        let z = f.gen();
        let one_tau = OrePoly::new(f, vec![f.one(), f.one()]);
        let z_tau = OrePoly::new(f, vec![z.clone(), f.one()]);
        let p = one_tau.mul(&z_tau);
        assert_eq!(p, OrePoly::new(f, vec![z.clone(), f.one().add(&z.pow(7)), f.one()]));
        let t = OrePoly::tau(f);
        assert_eq!(t.mul(&OrePoly::constant(z.clone())), OrePoly::monomial(z.frob(), 1));
        assert_ne!(t.mul(&OrePoly::constant(z.clone())), OrePoly::constant(z).mul(&t));
    }

    #[test]
    fn gcd_examples() {
        let f = f49();
        let z = f.gen();
        let zt = OrePoly::new(f, vec![z.clone(), f.one()]);
        let zmt = OrePoly::new(f, vec![z.clone(), f.from_int(-1)]);
        let a = OrePoly::new(f, vec![f.one(), f.one()]);
        let b = OrePoly::new(f, vec![f.one(), f.from_int(-1)]);
        assert_eq!(rgcd(&[a.mul(&zt), b.mul(&zt)]).unwrap(), zt);
        assert!(rgcd(&[a.mul(&zt), a.mul(&zmt)]).unwrap().is_one());
        let l = llcm(&[zt.clone(), zmt.clone()]).unwrap();
        assert_eq!(l.deg(), Some(2));
        assert!(l.right_divisible_by(&zt) && l.right_divisible_by(&zmt));
    }

    #[test]
    fn moore_of_one_and_z() {
        let f = f49();
        assert_eq!(moore_det(&[f.one(), f.gen()]), f.from_coeffs(&[1, 5]));
        assert!(moore_det(&[f.gen(), f.gen().mul(&f.from_int(3))]).is_zero());
    }

    #[test]
    fn kernel_and_annihilator() {
        let f = f49();
        let id = Embedding::identity(f);
        let t = OrePoly::tau(f);
        let tm1 = t.sub(&OrePoly::one(f));
        let k = tm1.kernel_basis(&id).unwrap();
        assert_eq!(k.dim(), 1);
        assert_eq!(annihilator_of_subspace(&k, &id).unwrap(), tm1);
        assert_eq!(t.kernel_basis(&id).unwrap().dim(), 0);
        let zero = Subspace { field: f, basis: vec![] };
        assert!(annihilator_of_subspace(&zero, &id).unwrap().is_one());
    }
}
