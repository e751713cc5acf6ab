//! Dense univariate polynomials over a ring.

use std::fmt;

use num_bigint::BigUint;

use super::{Field, FrobField, Ring};

/// A polynomial Σ c_i T^i with no trailing zero coefficient.
///
/// The zero polynomial has degree `None`, which orders below every `Some(n)`.
#[derive(Clone)]
pub struct Poly<R: Ring> {
    ctx: R::Ctx,
    c: Vec<R>,
}

impl<R: Ring> PartialEq for Poly<R> {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c
    }
}

impl<R: Ring> fmt::Debug for Poly<R> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.c)
    }
}

impl<R: Ring> Poly<R> {
    pub fn new(ctx: R::Ctx, mut c: Vec<R>) -> Self {
        while c.last().map_or(false, |x| x.is_zero()) {
            c.pop();
        }
        Poly { ctx, c }
    }
    pub fn zero(ctx: R::Ctx) -> Self {
        Poly { ctx, c: Vec::new() }
    }
    pub fn one(ctx: R::Ctx) -> Self {
        Poly::constant(R::one_in(ctx))
    }
    pub fn constant(a: R) -> Self {
        let ctx = a.ctx();
        Poly::new(ctx, vec![a])
    }
    /// The variable T.
    pub fn x(ctx: R::Ctx) -> Self {
        Poly::monomial(R::one_in(ctx), 1)
    }
    pub fn monomial(a: R, n: usize) -> Self {
        let ctx = a.ctx();
        let mut c = vec![R::zero_in(ctx); n];
        c.push(a);
        Poly::new(ctx, c)
    }
    pub fn base_ctx(&self) -> R::Ctx {
        self.ctx
    }
    pub fn coeffs(&self) -> &[R] {
        &self.c
    }
    pub fn into_coeffs(self) -> Vec<R> {
        self.c
    }
    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    pub fn deg(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }
    /// Degree with the zero polynomial mapped to -1, for bound arithmetic only.
    pub fn deg_i64(&self) -> i64 {
        self.c.len() as i64 - 1
    }
    pub fn len(&self) -> usize {
        self.c.len()
    }
    pub fn lc(&self) -> Option<&R> {
        self.c.last()
    }
    pub fn coeff(&self, i: usize) -> R {
        self.c.get(i).cloned().unwrap_or_else(|| R::zero_in(self.ctx))
    }
    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }
    /// Valuation at T = 0.
    pub fn val(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.add(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(self.ctx, c)
    }
    pub fn sub(&self, o: &Self) -> Self {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a.sub(b),
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.neg(),
                (None, None) => unreachable!(),
            });
        }
        Poly::new(self.ctx, c)
    }
    pub fn neg(&self) -> Self {
        Poly { ctx: self.ctx, c: self.c.iter().map(|a| a.neg()).collect() }
    }
    pub fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Poly::zero(self.ctx);
        }
        let mut c = vec![R::zero_in(self.ctx); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Poly::new(self.ctx, c)
    }
    pub fn scale(&self, a: &R) -> Self {
        Poly::new(self.ctx, self.c.iter().map(|x| x.mul(a)).collect())
    }
    /// Multiplication by T^n.
    pub fn shift(&self, n: usize) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![R::zero_in(self.ctx); n];
        c.extend(self.c.iter().cloned());
        Poly { ctx: self.ctx, c }
    }
    /// Truncation mod T^n.
    pub fn truncate(&self, n: usize) -> Self {
        Poly::new(self.ctx, self.c.iter().take(n).cloned().collect())
    }
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Poly::one(self.ctx);
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
    pub fn eval(&self, x: &R) -> R {
        let mut acc = R::zero_in(self.ctx);
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(a);
        }
        acc
    }
    /// Evaluates at an element of another ring through a coefficient map.
    pub fn eval_with<S: Ring>(&self, x: &S, f: impl Fn(&R) -> S) -> S {
        let mut acc = x.zero();
        for a in self.c.iter().rev() {
            acc = acc.mul(x).add(&f(a));
        }
        acc
    }
    /// Composition self(g).
    pub fn compose(&self, g: &Self) -> Self {
        let mut acc = Poly::zero(self.ctx);
        for a in self.c.iter().rev() {
            acc = acc.mul(g).add(&Poly::constant(a.clone()));
        }
        acc
    }
    pub fn map<S: Ring>(&self, ctx: S::Ctx, f: impl Fn(&R) -> S) -> Poly<S> {
        Poly::new(ctx, self.c.iter().map(f).collect())
    }
    pub fn derivative(&self) -> Self {
        let mut c = Vec::new();
        for (i, a) in self.c.iter().enumerate().skip(1) {
            // i · a computed by repeated addition keeps the ring generic.
            let mut s = R::zero_in(self.ctx);
            let mut t = a.clone();
            let mut n = i;
            while n > 0 {
                if n & 1 == 1 {
                    s = s.add(&t);
                }
                t = t.add(&t);
                n >>= 1;
            }
            c.push(s);
        }
        Poly::new(self.ctx, c)
    }
}

impl<R: Field> Poly<R> {
    pub fn monic(&self) -> Self {
        match self.lc() {
            None => self.clone(),
            Some(l) => {
                let i = l.inv().expect("nonzero leading coefficient");
                self.scale(&i)
            }
        }
    }
    pub fn is_monic(&self) -> bool {
        self.lc().map_or(false, |l| l.is_one())
    }
    /// Euclidean division; `None` when dividing by zero.
    pub fn divmod(&self, d: &Self) -> Option<(Self, Self)> {
        let dd = d.deg()?;
        let inv = d.lc().unwrap().inv()?;
        let mut r = self.c.clone();
        if r.len() <= dd {
            return Some((Poly::zero(self.ctx), self.clone()));
        }
        let mut q = vec![R::zero_in(self.ctx); r.len() - dd];
        for i in (dd..r.len()).rev() {
            if r[i].is_zero() {
                continue;
            }
            let t = r[i].mul(&inv);
            for (j, b) in d.c.iter().enumerate() {
                r[i - dd + j] = r[i - dd + j].sub(&t.mul(b));
            }
            q[i - dd] = t;
        }
        r.truncate(dd);
        Some((Poly::new(self.ctx, q), Poly::new(self.ctx, r)))
    }
    pub fn rem(&self, d: &Self) -> Self {
        self.divmod(d).expect("division by zero").1
    }
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        let (q, r) = self.divmod(d)?;
        r.is_zero().then_some(q)
    }
    pub fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }
    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }
    /// Returns (g, s, t) with s·self + t·o = g, g monic.
    pub fn xgcd(&self, o: &Self) -> (Self, Self, Self) {
        let ctx = self.ctx;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Poly::one(ctx), Poly::zero(ctx));
        let (mut t0, mut t1) = (Poly::zero(ctx), Poly::one(ctx));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1).unwrap();
            let s2 = s0.sub(&q.mul(&s1));
            let t2 = t0.sub(&q.mul(&t1));
            r0 = std::mem::replace(&mut r1, r);
            s0 = std::mem::replace(&mut s1, s2);
            t0 = std::mem::replace(&mut t1, t2);
        }
        match r0.lc() {
            None => (r0, s0, t0),
            Some(l) => {
                let i = l.inv().unwrap();
                (r0.scale(&i), s0.scale(&i), t0.scale(&i))
            }
        }
    }
    /// Inverse modulo m, if it exists.
    pub fn inv_mod(&self, m: &Self) -> Option<Self> {
        let (g, s, _) = self.rem(m).xgcd(m);
        (g.deg() == Some(0)).then(|| s.rem(m))
    }
    pub fn mul_mod(&self, o: &Self, m: &Self) -> Self {
        self.mul(o).rem(m)
    }
    pub fn pow_mod(&self, e: u64, m: &Self) -> Self {
        let mut base = self.rem(m);
        let mut acc = Poly::one(self.ctx).rem(m);
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }
    pub fn pow_mod_big(&self, e: &BigUint, m: &Self) -> Self {
        let base = self.rem(m);
        let mut acc = Poly::one(self.ctx).rem(m);
        let bits = e.bits();
        for i in (0..bits).rev() {
            acc = acc.mul_mod(&acc, m);
            if e.bit(i) {
                acc = acc.mul_mod(&base, m);
            }
        }
        acc
    }
    /// Lagrange interpolation through distinct abscissae.
    pub fn interpolate(ctx: R::Ctx, pts: &[(R, R)]) -> Self {
        let mut acc = Poly::zero(ctx);
        for (i, (xi, yi)) in pts.iter().enumerate() {
            let mut num = Poly::one(ctx);
            let mut den = R::one_in(ctx);
            for (j, (xj, _)) in pts.iter().enumerate() {
                if i != j {
                    num = num.mul(&Poly::new(ctx, vec![xj.neg(), R::one_in(ctx)]));
                    den = den.mul(&xi.sub(xj));
                }
            }
            acc = acc.add(&num.scale(&yi.mul(&den.inv().expect("distinct points"))));
        }
        acc
    }
}

impl<R: FrobField> Poly<R> {
    /// Applies the q-Frobenius to every coefficient (T is fixed).
    pub fn frob_coeffs(&self) -> Self {
        Poly::new(self.ctx, self.c.iter().map(|a| a.frob()).collect())
    }
    pub fn frob_coeffs_pow(&self, i: usize) -> Self {
        Poly::new(self.ctx, self.c.iter().map(|a| a.frob_pow(i)).collect())
    }
}

impl<R: Ring> Ring for Poly<R> {
    type Ctx = R::Ctx;
    fn ctx(&self) -> Self::Ctx {
        self.ctx
    }
    fn zero_in(ctx: Self::Ctx) -> Self {
        Poly::zero(ctx)
    }
    fn one_in(ctx: Self::Ctx) -> Self {
        Poly::one(ctx)
    }
    fn is_zero(&self) -> bool {
        self.c.is_empty()
    }
    fn add(&self, o: &Self) -> Self {
        Poly::add(self, o)
    }
    fn sub(&self, o: &Self) -> Self {
        Poly::sub(self, o)
    }
    fn mul(&self, o: &Self) -> Self {
        Poly::mul(self, o)
    }
    fn neg(&self) -> Self {
        Poly::neg(self)
    }
}

#[cfg(test)]
mod tests {

    use crate::algebra::{APoly, FqCtx};

    #[test]
    fn zero_degree_is_sentinel() {
        let f7 = FqCtx::prime(7).unwrap();
        let z = APoly::zero(f7);
        assert_eq!(z.deg(), None);
        assert!(z.deg() < APoly::one(f7).deg());
    }

    #[test]
    fn division_reconstructs() {
        let f7 = FqCtx::prime(7).unwrap();
        let a = APoly::from_i64(f7, &[1, 2, 3, 4, 5, 6, 1]);
        let b = APoly::from_i64(f7, &[3, 0, 2]);
        let (q, r) = a.divmod(&b).unwrap();
        assert_eq!(q.mul(&b).add(&r), a);
        assert!(r.deg() < b.deg());
    }

    #[test]
    fn xgcd_bezout() {
        let f5 = FqCtx::prime(5).unwrap();
        let a = APoly::from_i64(f5, &[1, 1, 0, 1]);
        let b = APoly::from_i64(f5, &[2, 0, 1]);
        let (g, s, t) = a.xgcd(&b);
        assert_eq!(s.mul(&a).add(&t.mul(&b)), g);
    }
}
