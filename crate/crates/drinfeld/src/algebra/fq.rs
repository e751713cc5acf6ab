//! The base field Fq, q = p^k.
//!
//! Prime fields use plain modular arithmetic. For k > 1 an element is stored
//! as the integer Σ c_i p^i encoding its coordinates in the power basis of
//! F_p[w]/(modulus), and multiplication goes through log/exp tables.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Mutex, OnceLock};

use super::{Field, FrobField, Ring};
use crate::error::{Error, Result};

const MAX_TABLE_Q: u32 = 1 << 16;

pub struct FqCtx {
    pub p: u32,
    pub k: u32,
    pub q: u32,
    /// Monic modulus over F_p, ascending, length k + 1 (`[0, 1]` for prime fields).
    pub modulus: Vec<u32>,
    exp: Vec<u32>,
    log: Vec<u32>,
}

impl PartialEq for FqCtx {
    fn eq(&self, other: &Self) -> bool {
        std::ptr::eq(self, other)
    }
}

impl fmt::Debug for FqCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.k == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "F_{}^{}{:?}", self.p, self.k, self.modulus)
        }
    }
}

type Registry = Mutex<HashMap<(u32, Vec<u32>), &'static FqCtx>>;

fn registry() -> &'static Registry {
    static REG: OnceLock<Registry> = OnceLock::new();
    REG.get_or_init(|| Mutex::new(HashMap::new()))
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

fn mulmod_raw(p: u32, a: &[u32], b: &[u32], m: &[u32]) -> Vec<u32> {
    let k = m.len() - 1;
    let mut acc = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            acc[i + j] = (acc[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for i in (k..acc.len()).rev() {
        let c = acc[i] % p as u64;
        if c == 0 {
            continue;
        }
        for j in 0..=k {
            let t = c * m[j] as u64 % p as u64;
            acc[i - k + j] = (acc[i - k + j] + p as u64 - t) % p as u64;
        }
    }
    acc.truncate(k);
    acc.resize(k, 0);
    acc.into_iter().map(|x| x as u32).collect()
}

impl FqCtx {
    /// The prime field F_p.
    pub fn prime(p: u32) -> Result<&'static FqCtx> {
        if !is_prime(p as u64) {
            return Err(Error::InvalidField(format!("{p} is not prime")));
        }
        let key = (p, vec![0, 1]);
        let mut reg = registry().lock().unwrap();
        if let Some(c) = reg.get(&key) {
            return Ok(c);
        }
        let ctx: &'static FqCtx = Box::leak(Box::new(FqCtx {
            p,
            k: 1,
            q: p,
            modulus: vec![0, 1],
            exp: Vec::new(),
            log: Vec::new(),
        }));
        reg.insert(key, ctx);
        Ok(ctx)
    }

    /// F_{p^k}. Without a modulus the lexicographically smallest monic
    /// irreducible of degree k is used.
    pub fn new(p: u32, k: u32, modulus: Option<&[u32]>) -> Result<&'static FqCtx> {
        let fp = FqCtx::prime(p)?;
        if k == 0 {
            return Err(Error::InvalidField("degree must be positive".into()));
        }
        if k == 1 && modulus.map_or(true, |m| m.len() == 2) {
            // A linear modulus still gives F_p; keep a single context.
            return Ok(fp);
        }
        let q64 = (p as u64).checked_pow(k).unwrap_or(u64::MAX);
        if q64 > MAX_TABLE_Q as u64 {
            return Err(Error::InvalidField(format!(
                "q = {p}^{k} exceeds the supported base-field size {MAX_TABLE_Q}; use an extension instead"
            )));
        }
        let modulus: Vec<u32> = match modulus {
            Some(m) => {
                let m: Vec<u32> = m.iter().map(|&c| c % p).collect();
                if m.len() != k as usize + 1 || m[k as usize] != 1 {
                    return Err(Error::InvalidField(format!(
                        "modulus must be monic of degree {k}"
                    )));
                }
                let mp = super::APoly::from_u32(fp, &m);
                if !mp.is_irreducible() {
                    return Err(Error::InvalidField("modulus is not irreducible".into()));
                }
                m
            }
            None => super::apoly::first_irreducible(fp, k as usize).coeffs_u32(),
        };
        let key = (p, modulus.clone());
        if let Some(c) = registry().lock().unwrap().get(&key) {
            return Ok(c);
        }
        let q = q64 as u32;
        let to_vec = |mut v: u32| -> Vec<u32> {
            (0..k)
                .map(|_| {
                    let d = v % p;
                    v /= p;
                    d
                })
                .collect()
        };
        let from_vec = |c: &[u32]| -> u32 { c.iter().rev().fold(0u32, |acc, &d| acc * p + d) };
        let mut exp = vec![0u32; q as usize - 1];
        let mut log = vec![0u32; q as usize];
        let mut found = false;
        for g in 2..q {
            let gv = to_vec(g);
            let mut cur = to_vec(1);
            let mut ok = true;
            for (e, slot) in exp.iter_mut().enumerate() {
                let c = from_vec(&cur);
                if e > 0 && c == 1 {
                    ok = false;
                    break;
                }
                *slot = c;
                cur = mulmod_raw(p, &cur, &gv, &modulus);
            }
            if ok {
                found = true;
                break;
            }
        }
        if !found {
            return Err(Error::InvalidField("no primitive element found".into()));
        }
        for (e, &v) in exp.iter().enumerate() {
            log[v as usize] = e as u32;
        }
        let ctx: &'static FqCtx = Box::leak(Box::new(FqCtx { p, k, q, modulus, exp, log }));
        registry().lock().unwrap().entry(key).or_insert(ctx);
        Ok(ctx)
    }

    #[inline]
    pub fn is_prime_field(&self) -> bool {
        self.k == 1
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            let s = a as u64 + b as u64;
            (if s >= self.p as u64 { s - self.p as u64 } else { s }) as u32
        } else {
            let (mut a, mut b, mut r, mut pw) = (a, b, 0u32, 1u32);
            while a > 0 || b > 0 {
                let d = (a % self.p + b % self.p) % self.p;
                r += d * pw;
                pw *= self.p;
                a /= self.p;
                b /= self.p;
            }
            r
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        if self.k == 1 {
            if a == 0 {
                0
            } else {
                self.p - a
            }
        } else {
            let (mut a, mut r, mut pw) = (a, 0u32, 1u32);
            while a > 0 {
                let d = a % self.p;
                r += ((self.p - d) % self.p) * pw;
                pw *= self.p;
                a /= self.p;
            }
            r
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        if self.k == 1 {
            ((a as u64 * b as u64) % self.p as u64) as u32
        } else if a == 0 || b == 0 {
            0
        } else {
            let e = (self.log[a as usize] + self.log[b as usize]) % (self.q - 1);
            self.exp[e as usize]
        }
    }

    pub fn inv(&self, a: u32) -> Option<u32> {
        if a == 0 {
            return None;
        }
        if self.k == 1 {
            // Fermat is fine for word-size primes.
            Some(self.pow(a, self.p as u64 - 2))
        } else {
            let l = self.log[a as usize];
            Some(self.exp[((self.q - 1 - l) % (self.q - 1)) as usize])
        }
    }

    pub fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Image of an integer under Z → Fq.
    pub fn from_int(&self, n: i64) -> u32 {
        let r = n.rem_euclid(self.p as i64) as u32;
        r
    }

    pub fn elem(&'static self, v: u32) -> Fq {
        Fq::new(self, v)
    }

    /// All elements in index order.
    pub fn elements(&'static self) -> impl Iterator<Item = Fq> {
        (0..self.q).map(move |v| Fq { ctx: self, v })
    }
}

/// An element of Fq.
#[derive(Clone, Copy)]
pub struct Fq {
    pub ctx: &'static FqCtx,
    pub v: u32,
}

impl Fq {
    /// Builds an element from its index (reduced mod p for prime fields).
    pub fn new(ctx: &'static FqCtx, v: u32) -> Fq {
        let v = if ctx.k == 1 { v % ctx.p } else { v % ctx.q };
        Fq { ctx, v }
    }
    pub fn from_int(ctx: &'static FqCtx, n: i64) -> Fq {
        Fq { ctx, v: ctx.from_int(n) }
    }
    pub fn value(&self) -> u32 {
        self.v
    }
}

impl PartialEq for Fq {
    fn eq(&self, other: &Self) -> bool {
        self.v == other.v && std::ptr::eq(self.ctx, other.ctx)
    }
}
impl Eq for Fq {}

impl std::hash::Hash for Fq {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.v.hash(state)
    }
}

impl fmt::Debug for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.v)
    }
}

impl Ring for Fq {
    type Ctx = &'static FqCtx;
    #[inline]
    fn ctx(&self) -> Self::Ctx {
        self.ctx
    }
    #[inline]
    fn zero_in(ctx: Self::Ctx) -> Self {
        Fq { ctx, v: 0 }
    }
    #[inline]
    fn one_in(ctx: Self::Ctx) -> Self {
        Fq { ctx, v: 1 }
    }
    #[inline]
    fn is_zero(&self) -> bool {
        self.v == 0
    }
    #[inline]
    fn add(&self, o: &Self) -> Self {
        Fq { ctx: self.ctx, v: self.ctx.add(self.v, o.v) }
    }
    #[inline]
    fn sub(&self, o: &Self) -> Self {
        Fq { ctx: self.ctx, v: self.ctx.sub(self.v, o.v) }
    }
    #[inline]
    fn mul(&self, o: &Self) -> Self {
        Fq { ctx: self.ctx, v: self.ctx.mul(self.v, o.v) }
    }
    #[inline]
    fn neg(&self) -> Self {
        Fq { ctx: self.ctx, v: self.ctx.neg(self.v) }
    }
    fn pow(&self, e: u64) -> Self {
        Fq { ctx: self.ctx, v: self.ctx.pow(self.v, e) }
    }
}

impl Field for Fq {
    fn inv(&self) -> Option<Self> {
        self.ctx.inv(self.v).map(|v| Fq { ctx: self.ctx, v })
    }
}

impl FrobField for Fq {
    fn fq_ctx(ctx: Self::Ctx) -> &'static FqCtx {
        ctx
    }
    fn from_fq(_ctx: Self::Ctx, c: Fq) -> Self {
        c
    }
    fn frob(&self) -> Self {
        *self
    }
    fn frob_pow(&self, _i: usize) -> Self {
        *self
    }
    fn as_fq(&self) -> Option<Fq> {
        Some(*self)
    }
}
