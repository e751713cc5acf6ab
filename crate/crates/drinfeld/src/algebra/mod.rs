//! Exact arithmetic: finite fields, extensions, polynomial rings,
//! rational functions and Laurent series at infinity.

pub mod apoly;
pub mod ext;
pub mod fq;
pub mod laurent;
pub mod linalg;
pub mod poly;
pub mod rat;

use std::fmt::Debug;

pub use apoly::APoly;
pub use ext::{Embedding, ExtCtx, FElem};
pub use fq::{Fq, FqCtx};
pub use laurent::LaurentSeries;
pub use poly::Poly;
pub use rat::Rat;

/// A commutative ring whose elements carry a handle to their parent.
pub trait Ring: Clone + PartialEq + Debug {
    type Ctx: Copy + PartialEq + Debug;

    fn ctx(&self) -> Self::Ctx;
    fn zero_in(ctx: Self::Ctx) -> Self;
    fn one_in(ctx: Self::Ctx) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;

    fn zero(&self) -> Self {
        Self::zero_in(self.ctx())
    }
    fn one(&self) -> Self {
        Self::one_in(self.ctx())
    }
    fn is_one(&self) -> bool {
        *self == self.one()
    }
    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = self.one();
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
}

/// A field.
pub trait Field: Ring {
    fn inv(&self) -> Option<Self>;

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }
}

/// A field of characteristic p containing Fq, equipped with the q-power map.
///
/// For finite fields `frob` is an automorphism; for Fq(T) it is the
/// endomorphism f ↦ f^q.
pub trait FrobField: Field {
    /// The base field Fq, via its context.
    fn fq_ctx(ctx: Self::Ctx) -> &'static FqCtx;
    fn from_fq(ctx: Self::Ctx, c: Fq) -> Self;
    fn frob(&self) -> Self;
    fn frob_pow(&self, i: usize) -> Self {
        let mut x = self.clone();
        for _ in 0..i {
            x = x.frob();
        }
        x
    }
    /// Returns the underlying Fq element when `self` lies in Fq.
    fn as_fq(&self) -> Option<Fq>;
}
