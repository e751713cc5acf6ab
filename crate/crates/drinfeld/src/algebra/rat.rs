//! The rational function field K = Fq(T).

use std::fmt;

use super::{APoly, Field, Fq, FqCtx, FrobField, Poly, Ring};

/// A reduced fraction with monic denominator.
#[derive(Clone, PartialEq)]
pub struct Rat {
    num: APoly,
    den: APoly,
}

impl fmt::Debug for Rat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?})/({:?})", self.num, self.den)
    }
}

impl Rat {
    pub fn new(num: APoly, den: APoly) -> Option<Rat> {
        if den.is_zero() {
            return None;
        }
        let g = num.gcd(&den);
        let (mut n, mut d) = if g.is_zero() || g.deg() == Some(0) {
            (num, den)
        } else {
            (num.div_exact(&g).unwrap(), den.div_exact(&g).unwrap())
        };
        let l = d.lc().unwrap().inv().unwrap();
        n = n.scale(&l);
        d = d.scale(&l);
        if n.is_zero() {
            d = APoly::one(d.fq());
        }
        Some(Rat { num: n, den: d })
    }
    pub fn from_poly(p: APoly) -> Rat {
        let ctx = p.fq();
        Rat { num: p, den: APoly::one(ctx) }
    }
    /// The element T.
    pub fn t(ctx: &'static FqCtx) -> Rat {
        Rat::from_poly(APoly::x(ctx))
    }
    pub fn num(&self) -> &APoly {
        &self.num
    }
    pub fn den(&self) -> &APoly {
        &self.den
    }
    pub fn fq(&self) -> &'static FqCtx {
        self.den.fq()
    }
    /// deg num - deg den, or None for zero.
    pub fn degree(&self) -> Option<i64> {
        self.num.deg().map(|n| n as i64 - self.den.deg().unwrap() as i64)
    }
    pub fn is_poly(&self) -> bool {
        self.den.deg() == Some(0)
    }
}

impl Ring for Rat {
    type Ctx = &'static FqCtx;
    fn ctx(&self) -> Self::Ctx {
        self.fq()
    }
    fn zero_in(ctx: Self::Ctx) -> Self {
        Rat { num: APoly::zero(ctx), den: APoly::one(ctx) }
    }
    fn one_in(ctx: Self::Ctx) -> Self {
        Rat { num: APoly::one(ctx), den: APoly::one(ctx) }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
    fn add(&self, o: &Self) -> Self {
        if self.den == o.den {
            return Rat::new(self.num.add(&o.num), self.den.clone()).unwrap();
        }
        Rat::new(self.num.mul(&o.den).add(&o.num.mul(&self.den)), self.den.mul(&o.den)).unwrap()
    }
    fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    fn mul(&self, o: &Self) -> Self {
        if self.is_zero() || o.is_zero() {
            return Rat::zero_in(self.fq());
        }
        // Cross-cancel first to keep intermediate degrees small.
        let g1 = self.num.gcd(&o.den);
        let g2 = o.num.gcd(&self.den);
        let n = self.num.div_exact(&g1).unwrap().mul(&o.num.div_exact(&g2).unwrap());
        let d = self.den.div_exact(&g2).unwrap().mul(&o.den.div_exact(&g1).unwrap());
        let l = d.lc().unwrap().inv().unwrap();
        Rat { num: n.scale(&l), den: d.scale(&l) }
    }
    fn neg(&self) -> Self {
        Rat { num: self.num.neg(), den: self.den.clone() }
    }
}

impl Field for Rat {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        Rat::new(self.den.clone(), self.num.clone())
    }
}

impl FrobField for Rat {
    fn fq_ctx(ctx: Self::Ctx) -> &'static FqCtx {
        ctx
    }
    fn from_fq(_ctx: Self::Ctx, c: Fq) -> Self {
        Rat::from_poly(Poly::constant(c))
    }
    /// f ↦ f^q, which is f(T^q) because Fq is fixed.
    fn frob(&self) -> Self {
        Rat { num: self.num.frob_substitute(), den: self.den.frob_substitute() }
    }
    fn as_fq(&self) -> Option<Fq> {
        (self.is_poly() && self.num.deg().map_or(true, |d| d == 0)).then(|| self.num.coeff(0))
    }
}
