//! Finite extensions F = Fq[z]/(M(z)) with a precomputed Frobenius matrix.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use num_bigint::BigUint;
use rand::Rng;
use smallvec::SmallVec;

use super::apoly::{first_irreducible, APoly};
use super::{Field, Fq, FqCtx, FrobField, Poly, Ring};
use crate::error::{Error, Result};

type Coeffs = SmallVec<[u32; 6]>;

pub struct ExtCtx {
    pub base: &'static FqCtx,
    pub d: usize,
    /// Monic modulus over Fq, ascending, length d + 1.
    pub modulus: Vec<u32>,
    /// Row j holds the coordinates of (z^j)^q.
    frob: Vec<Vec<u32>>,
}

impl PartialEq for ExtCtx {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
    }
}

impl fmt::Debug for ExtCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}[z]/{:?}", self.base, self.modulus)
    }
}

type Registry = Mutex<HashMap<(usize, Vec<u32>), &'static ExtCtx>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

impl ExtCtx {
    /// Degree-d extension of `base`; without a modulus the lexicographically
    /// smallest monic irreducible is used.
    pub fn new(base: &'static FqCtx, d: usize, modulus: Option<&[u32]>) -> Result<&'static ExtCtx> {
        if d == 0 {
            return Err(Error::InvalidField("extension degree must be positive".into()));
        }
        let m: Vec<u32> = match modulus {
            Some(m) => {
                let mp = APoly::from_u32(base, m);
                if mp.deg() != Some(d) || !mp.is_monic() {
                    return Err(Error::InvalidField(format!("modulus must be monic of degree {d}")));
                }
                if !mp.is_irreducible() {
                    return Err(Error::InvalidField("modulus is not irreducible".into()));
                }
                mp.coeffs_u32()
            }
            None => first_irreducible(base, d).coeffs_u32(),
        };
        Ok(Self::intern(base, m))
    }

    /// Interns a context for a modulus already known to be irreducible.
    pub fn from_irreducible(p: &APoly) -> &'static ExtCtx {
        Self::intern(p.fq(), p.monic().coeffs_u32())
    }

    fn intern(base: &'static FqCtx, m: Vec<u32>) -> &'static ExtCtx {
        let key = (base as *const FqCtx as usize, m.clone());
        if let Some(c) = registry().lock().unwrap().get(&key) {
            return c;
        }
        let d = m.len() - 1;
        let mp = APoly::from_u32(base, &m);
        let mut frob = Vec::with_capacity(d);
        let zq = APoly::x(base).pow_mod(base.q as u64, &mp);
        let mut cur = APoly::one(base);
        for _ in 0..d {
            let mut row = cur.coeffs_u32();
            row.resize(d, 0);
            frob.push(row);
            cur = cur.mul_mod(&zq, &mp);
        }
        let ctx: &'static ExtCtx = Box::leak(Box::new(ExtCtx { base, d, modulus: m, frob }));
        *registry().lock().unwrap().entry(key).or_insert(ctx)
    }

    /// Extension of degree k over this field, presented over Fq.
    pub fn extension(&'static self, k: usize) -> Result<&'static ExtCtx> {
        ExtCtx::new(self.base, self.d * k, None)
    }

    pub fn q(&self) -> u32 {
        self.base.q
    }
    pub fn size(&self) -> BigUint {
        BigUint::from(self.base.q).pow(self.d as u32)
    }
    pub fn size_u64(&self) -> Option<u64> {
        (self.base.q as u64).checked_pow(self.d as u32)
    }
    pub fn modulus_poly(&self) -> APoly {
        APoly::from_u32(self.base, &self.modulus)
    }
    pub fn zero(&'static self) -> FElem {
        FElem { ctx: self, c: SmallVec::from_elem(0, self.d) }
    }
    pub fn one(&'static self) -> FElem {
        let mut e = self.zero();
        e.c[0] = 1;
        e
    }
    /// The generator z (the class of the variable).
    pub fn gen(&'static self) -> FElem {
        if self.d == 1 {
            // z = -m_0
            let v = self.base.neg(self.modulus[0]);
            return self.from_coeffs(&[v]);
        }
        let mut e = self.zero();
        e.c[1] = 1;
        e
    }
    pub fn from_coeffs(&'static self, c: &[u32]) -> FElem {
        let mut e = self.zero();
        if c.len() <= self.d {
            for (i, &v) in c.iter().enumerate() {
                e.c[i] = Fq::new(self.base, v).v;
            }
            e
        } else {
            let p = APoly::from_u32(self.base, c).rem(&self.modulus_poly());
            self.from_apoly(&p)
        }
    }
    pub fn from_fq(&'static self, a: Fq) -> FElem {
        let mut e = self.zero();
        e.c[0] = a.v;
        e
    }
    pub fn from_int(&'static self, n: i64) -> FElem {
        self.from_fq(Fq::from_int(self.base, n))
    }
    /// Image of a polynomial in z.
    pub fn from_apoly(&'static self, p: &APoly) -> FElem {
        let r = p.rem(&self.modulus_poly());
        let mut e = self.zero();
        for (i, a) in r.coeffs().iter().enumerate() {
            e.c[i] = a.v;
        }
        e
    }
    pub fn random(&'static self, rng: &mut impl Rng) -> FElem {
        let mut e = self.zero();
        for x in e.c.iter_mut() {
            *x = rng.gen_range(0..self.base.q);
        }
        e
    }
    /// Enumerates all elements; only sensible for small fields.
    pub fn elements(&'static self) -> impl Iterator<Item = FElem> {
        let q = self.base.q as u64;
        let total = self.size_u64().expect("field too large to enumerate");
        (0..total).map(move |mut n| {
            let mut e = self.zero();
            for x in e.c.iter_mut() {
                *x = (n % q) as u32;
                n /= q;
            }
            e
        })
    }
    /// The element with the given Fq-coordinates.
    pub fn from_fq_coords(&'static self, v: &[Fq]) -> FElem {
        let mut e = self.zero();
        for (x, a) in e.c.iter_mut().zip(v) {
            *x = a.v;
        }
        e
    }
}

/// An element of an extension field, as coordinates in the power basis of z.
#[derive(Clone)]
pub struct FElem {
    pub ctx: &'static ExtCtx,
    c: Coeffs,
}

impl PartialEq for FElem {
    fn eq(&self, other: &Self) -> bool {
        self.c == other.c && std::ptr::eq(self.ctx, other.ctx)
    }
}
impl Eq for FElem {}

impl std::hash::Hash for FElem {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.c.hash(state)
    }
}

impl fmt::Debug for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for FElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, &c) in self.c.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            terms.push(match (i, c) {
                (0, _) => format!("{c}"),
                (1, 1) => "z".to_string(),
                (1, _) => format!("{c}*z"),
                (_, 1) => format!("z^{i}"),
                _ => format!("{c}*z^{i}"),
            });
        }
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

impl FElem {
    pub fn coords(&self) -> &[u32] {
        &self.c
    }
    pub fn coords_fq(&self) -> Vec<Fq> {
        self.c.iter().map(|&v| Fq { ctx: self.ctx.base, v }).collect()
    }
    pub fn to_apoly(&self) -> APoly {
        APoly::from_u32(self.ctx.base, &self.c)
    }
    pub fn field(&self) -> &'static ExtCtx {
        self.ctx
    }

    pub fn frobenius_power(&self, i: usize) -> FElem {
        self.frob_pow(i % self.ctx.d)
    }

    /// N_{F/Fq}(x) = ∏ x^{q^i}.
    pub fn norm(&self) -> Fq {
        let mut acc = self.one();
        let mut cur = self.clone();
        for _ in 0..self.ctx.d {
            acc = acc.mul(&cur);
            cur = cur.frob();
        }
        acc.as_fq().expect("norm lies in Fq")
    }

    pub fn trace(&self) -> Fq {
        let mut acc = self.zero();
        let mut cur = self.clone();
        for _ in 0..self.ctx.d {
            acc = acc.add(&cur);
            cur = cur.frob();
        }
        acc.as_fq().expect("trace lies in Fq")
    }

    pub fn pow_big(&self, e: &BigUint) -> FElem {
        let mut acc = self.one();
        for i in (0..e.bits()).rev() {
            acc = acc.mul(&acc);
            if e.bit(i) {
                acc = acc.mul(self);
            }
        }
        acc
    }

    /// Minimal polynomial over Fq.
    pub fn minpoly(&self) -> APoly {
        let base = self.ctx.base;
        let mut conj = vec![self.clone()];
        let mut cur = self.frob();
        while cur != *self {
            conj.push(cur.clone());
            cur = cur.frob();
        }
        let mut acc: Poly<FElem> = Poly::one(self.ctx);
        for c in conj {
            acc = acc.mul(&Poly::new(self.ctx, vec![c.neg(), self.one()]));
        }
        acc.map(base, |a| a.as_fq().expect("minimal polynomial over Fq"))
    }
}

impl Ring for FElem {
    type Ctx = &'static ExtCtx;
    fn ctx(&self) -> Self::Ctx {
        self.ctx
    }
    fn zero_in(ctx: Self::Ctx) -> Self {
        ctx.zero()
    }
    fn one_in(ctx: Self::Ctx) -> Self {
        ctx.one()
    }
    fn is_zero(&self) -> bool {
        self.c.iter().all(|&x| x == 0)
    }
    fn add(&self, o: &Self) -> Self {
        let b = self.ctx.base;
        let c = self.c.iter().zip(o.c.iter()).map(|(&x, &y)| b.add(x, y)).collect();
        FElem { ctx: self.ctx, c }
    }
    fn sub(&self, o: &Self) -> Self {
        let b = self.ctx.base;
        let c = self.c.iter().zip(o.c.iter()).map(|(&x, &y)| b.sub(x, y)).collect();
        FElem { ctx: self.ctx, c }
    }
    fn neg(&self) -> Self {
        let b = self.ctx.base;
        FElem { ctx: self.ctx, c: self.c.iter().map(|&x| b.neg(x)).collect() }
    }
    fn mul(&self, o: &Self) -> Self {
        let ctx = self.ctx;
        let d = ctx.d;
        let base = ctx.base;
        if d == 1 {
            return FElem { ctx, c: SmallVec::from_elem(base.mul(self.c[0], o.c[0]), 1) };
        }
        if base.is_prime_field() && base.p < (1 << 16) {
            let p = base.p as u64;
            let mut acc: SmallVec<[u64; 16]> = SmallVec::from_elem(0, 2 * d - 1);
            for (i, &x) in self.c.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let x = x as u64;
                for (j, &y) in o.c.iter().enumerate() {
                    acc[i + j] += x * y as u64;
                }
            }
            for i in (d..2 * d - 1).rev() {
                let c = acc[i] % p;
                if c == 0 {
                    continue;
                }
                for j in 0..d {
                    acc[i - d + j] += c * (p - ctx.modulus[j] as u64);
                }
            }
            let c = acc[..d].iter().map(|&v| (v % p) as u32).collect();
            return FElem { ctx, c };
        }
        let mut acc = vec![0u32; 2 * d - 1];
        for (i, &x) in self.c.iter().enumerate() {
            for (j, &y) in o.c.iter().enumerate() {
                acc[i + j] = base.add(acc[i + j], base.mul(x, y));
            }
        }
        for i in (d..2 * d - 1).rev() {
            let c = acc[i];
            if c == 0 {
                continue;
            }
            for j in 0..d {
                acc[i - d + j] = base.sub(acc[i - d + j], base.mul(c, ctx.modulus[j]));
            }
        }
        FElem { ctx, c: acc[..d].iter().copied().collect() }
    }
}

impl Field for FElem {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        if self.ctx.d == 1 {
            let v = self.ctx.base.inv(self.c[0])?;
            return Some(self.ctx.from_coeffs(&[v]));
        }
        let i = self.to_apoly().inv_mod(&self.ctx.modulus_poly())?;
        Some(self.ctx.from_apoly(&i))
    }
}

impl FrobField for FElem {
    fn fq_ctx(ctx: Self::Ctx) -> &'static FqCtx {
        ctx.base
    }
    fn from_fq(ctx: Self::Ctx, c: Fq) -> Self {
        ctx.from_fq(c)
    }
    fn frob(&self) -> Self {
        let ctx = self.ctx;
        let d = ctx.d;
        if d == 1 {
            return self.clone();
        }
        let base = ctx.base;
        if base.is_prime_field() && base.p < (1 << 16) {
            let p = base.p as u64;
            let mut acc: SmallVec<[u64; 8]> = SmallVec::from_elem(0, d);
            for (j, &x) in self.c.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let row = &ctx.frob[j];
                for k in 0..d {
                    acc[k] += x as u64 * row[k] as u64;
                }
            }
            return FElem { ctx, c: acc.iter().map(|&v| (v % p) as u32).collect() };
        }
        let mut acc = vec![0u32; d];
        for (j, &x) in self.c.iter().enumerate() {
            for k in 0..d {
                acc[k] = base.add(acc[k], base.mul(x, ctx.frob[j][k]));
            }
        }
        FElem { ctx, c: acc.into_iter().collect() }
    }
    fn as_fq(&self) -> Option<Fq> {
        if self.c[1..].iter().all(|&x| x == 0) {
            Some(Fq { ctx: self.ctx.base, v: self.c[0] })
        } else {
            None
        }
    }
}

/// Roots in E of a polynomial with coefficients in E (without multiplicity),
/// by equal-degree splitting of gcd(f, X^{|E|} - X).
pub fn roots(f: &Poly<FElem>, rng: &mut impl Rng) -> Vec<FElem> {
    let ctx = f.base_ctx();
    if f.is_zero() {
        return Vec::new();
    }
    let f = f.monic();
    if f.deg() == Some(0) {
        return Vec::new();
    }
    let x: Poly<FElem> = Poly::x(ctx);
    let q = ctx.base.q as u64;
    let mut h = x.rem(&f);
    for _ in 0..ctx.d {
        h = h.pow_mod(q, &f);
    }
    let g = h.sub(&x).gcd(&f);
    let mut out = Vec::new();
    split_linear(&g, rng, &mut out);
    out
}

fn split_linear(g: &Poly<FElem>, rng: &mut impl Rng, out: &mut Vec<FElem>) {
    let ctx = g.base_ctx();
    match g.deg() {
        None | Some(0) => return,
        Some(1) => {
            out.push(g.coeff(0).neg().mul(&g.coeff(1).inv().unwrap()));
            return;
        }
        _ => {}
    }
    let n = g.deg().unwrap();
    let p = ctx.base.p;
    loop {
        // aX + b: a shift alone cannot separate roots with equal trace.
        let a = ctx.random(rng);
        if a.is_zero() {
            continue;
        }
        let t = Poly::new(ctx, vec![ctx.random(rng), a]);
        let s = if p == 2 {
            let mut cur = t.rem(g);
            let mut acc = cur.clone();
            for _ in 1..(ctx.base.k as usize * ctx.d) {
                cur = cur.mul_mod(&cur, g);
                acc = acc.add(&cur);
            }
            acc
        } else {
            let e = (ctx.size() - 1u32) / 2u32;
            t.pow_mod_big(&e, g).sub(&Poly::one(ctx))
        };
        let d = s.gcd(g);
        if let Some(k) = d.deg() {
            if k > 0 && k < n {
                let h = g.div_exact(&d).unwrap();
                split_linear(&d, rng, out);
                split_linear(&h, rng, out);
                return;
            }
        }
    }
}

/// An Fq-algebra embedding of one extension into another.
#[derive(Clone, Debug)]
pub struct Embedding {
    pub from: &'static ExtCtx,
    pub to: &'static ExtCtx,
    /// Images of z^0, …, z^{d-1}.
    powers: Vec<FElem>,
}

impl Embedding {
    pub fn identity(f: &'static ExtCtx) -> Embedding {
        let z = f.gen();
        let mut powers = vec![f.one()];
        for i in 1..f.d {
            powers.push(powers[i - 1].mul(&z));
        }
        Embedding { from: f, to: f, powers }
    }

    /// Embedding sending z to the given root of the modulus of `from`.
    pub fn with_image(from: &'static ExtCtx, to: &'static ExtCtx, image: FElem) -> Result<Embedding> {
        let m = from.modulus_poly();
        let val = m.eval_with(&image, |c| to.from_fq(*c));
        if !val.is_zero() {
            return Err(Error::InvalidArgument("image is not a root of the modulus".into()));
        }
        let mut powers = vec![to.one()];
        for i in 1..from.d {
            powers.push(powers[i - 1].mul(&image));
        }
        Ok(Embedding { from, to, powers })
    }

    /// Some embedding from → to; deterministic given the rng.
    pub fn find(from: &'static ExtCtx, to: &'static ExtCtx, rng: &mut impl Rng) -> Result<Embedding> {
        if std::ptr::eq(from, to) {
            return Ok(Embedding::identity(from));
        }
        if from.base != to.base || to.d % from.d != 0 {
            return Err(Error::InvalidArgument(format!(
                "no embedding of a degree-{} field into a degree-{} field",
                from.d, to.d
            )));
        }
        let m = from.modulus_poly().map(to, |c| to.from_fq(*c));
        let mut rs = roots(&m, rng);
        rs.sort_by(|a, b| a.coords().iter().rev().cmp(b.coords().iter().rev()));
        let r = rs.into_iter().next().ok_or_else(|| Error::InvalidArgument("modulus has no root".into()))?;
        Embedding::with_image(from, to, r)
    }

    pub fn image_of_gen(&self) -> FElem {
        if self.from.d == 1 {
            self.apply(&self.from.gen())
        } else {
            self.powers[1].clone()
        }
    }

    /// The element of `from` mapping to `y`, if any.
    pub fn preimage(&self, y: &FElem) -> Option<FElem> {
        let base = self.from.base;
        let dd = self.to.d;
        let m: Vec<Vec<Fq>> = (0..dd)
            .map(|i| self.powers.iter().map(|p| Fq { ctx: base, v: p.c[i] }).collect())
            .collect();
        let x = super::linalg::solve(&m, &y.coords_fq(), base)?;
        Some(self.from.from_fq_coords(&x))
    }

    pub fn apply(&self, x: &FElem) -> FElem {
        let mut acc = self.to.zero();
        for (c, pw) in x.coords_fq().iter().zip(&self.powers) {
            if !c.is_zero() {
                acc = acc.add(&pw.mul(&self.to.from_fq(*c)));
            }
        }
        acc
    }
}
