//! Truncated Laurent series in 1/T over Fq, with absolute precision.

use std::fmt;

use super::{APoly, Field, Fq, FqCtx, Rat, Ring};
use crate::error::{Error, Result};

/// Σ_{k ≥ start} a_k T^{-k}, known modulo T^{-prec}.
///
/// `coeffs[i]` is a_{start+i}. The leading stored coefficient is nonzero
/// unless the series is zero to its precision, in which case `coeffs` is
/// empty and `start == prec`.
#[derive(Clone)]
pub struct LaurentSeries {
    ctx: &'static FqCtx,
    start: i64,
    coeffs: Vec<Fq>,
    prec: i64,
}

impl fmt::Debug for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self)
    }
}

impl fmt::Display for LaurentSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let k = self.start + i as i64;
            let mono = match k {
                0 => String::new(),
                -1 => "T".into(),
                k if k < 0 => format!("T^{}", -k),
                1 => "T^-1".into(),
                k => format!("T^-{k}"),
            };
            terms.push(match (c.v, mono.is_empty()) {
                (_, true) => format!("{}", c.v),
                (1, false) => mono,
                (v, false) => format!("{v}*{mono}"),
            });
        }
        terms.push(format!("O(T^-{})", self.prec));
        write!(f, "{}", terms.join(" + "))
    }
}

impl LaurentSeries {
    fn normalize(ctx: &'static FqCtx, mut start: i64, mut coeffs: Vec<Fq>, prec: i64) -> Self {
        let keep = (prec - start).max(0) as usize;
        coeffs.truncate(keep);
        let lead = coeffs.iter().position(|c| !c.is_zero());
        match lead {
            None => LaurentSeries { ctx, start: prec, coeffs: Vec::new(), prec },
            Some(i) => {
                coeffs.drain(..i);
                start += i as i64;
                LaurentSeries { ctx, start, coeffs, prec }
            }
        }
    }

    pub fn zero(ctx: &'static FqCtx, prec: i64) -> Self {
        LaurentSeries { ctx, start: prec, coeffs: Vec::new(), prec }
    }
    pub fn one(ctx: &'static FqCtx, prec: i64) -> Self {
        Self::from_apoly(&APoly::one(ctx), prec)
    }
    /// An exact polynomial in T, truncated mod T^{-prec}.
    pub fn from_apoly(p: &APoly, prec: i64) -> Self {
        let ctx = p.fq();
        match p.deg() {
            None => Self::zero(ctx, prec),
            Some(n) => {
                let coeffs: Vec<Fq> = p.coeffs().iter().rev().cloned().collect();
                Self::normalize(ctx, -(n as i64), coeffs, prec)
            }
        }
    }
    /// Expansion of a rational function at infinity, mod T^{-prec}.
    pub fn from_rat(r: &Rat, prec: i64) -> Self {
        let ctx = r.fq();
        if r.is_zero() {
            return Self::zero(ctx, prec);
        }
        // Long division of num by den in decreasing powers of T.
        let den = r.den();
        let e = den.deg().unwrap() as i64;
        let mut rem: Vec<Fq> = r.num().coeffs().to_vec();
        let n = rem.len() as i64 - 1;
        let start = e - n;
        let inv = den.lc().unwrap().inv().unwrap();
        let count = (prec - start).max(0) as usize;
        let mut coeffs = Vec::with_capacity(count);
        // rem represents Σ rem_i T^{i}; we shift conceptually instead of
        // extending by padding zeros below degree 0.
        let mut top = n; // current leading exponent
        let dc = den.coeffs();
        let mut buf: std::collections::VecDeque<Fq> = rem.drain(..).rev().collect();
        for _ in 0..count {
            let lead = buf.pop_front().unwrap_or(Fq::zero_in(ctx));
            let c = lead.mul(&inv);
            coeffs.push(c);
            if !c.is_zero() {
                for j in 1..dc.len() {
                    let a = c.mul(&dc[dc.len() - 1 - j]);
                    let idx = j - 1;
                    while buf.len() <= idx {
                        buf.push_back(Fq::zero_in(ctx));
                    }
                    buf[idx] = buf[idx].sub(&a);
                }
            }
            top -= 1;
        }
        let _ = top;
        Self::normalize(ctx, start, coeffs, prec)
    }

    pub fn ctx(&self) -> &'static FqCtx {
        self.ctx
    }
    pub fn prec(&self) -> i64 {
        self.prec
    }
    /// Valuation in 1/T; None when zero to precision.
    pub fn valuation(&self) -> Option<i64> {
        (!self.coeffs.is_empty()).then_some(self.start)
    }
    /// Coefficient of T^{-k}; None beyond the precision.
    pub fn coeff(&self, k: i64) -> Option<Fq> {
        if k >= self.prec {
            return None;
        }
        if k < self.start {
            return Some(Fq::zero_in(self.ctx));
        }
        Some(self.coeffs.get((k - self.start) as usize).copied().unwrap_or(Fq::zero_in(self.ctx)))
    }
    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
    fn low(&self) -> i64 {
        self.start
    }

    pub fn truncate(&self, prec: i64) -> Self {
        let p = prec.min(self.prec);
        Self::normalize(self.ctx, self.start, self.coeffs.clone(), p)
    }

    pub fn add(&self, o: &Self) -> Self {
        let prec = self.prec.min(o.prec);
        let start = self.low().min(o.low()).min(prec);
        let n = (prec - start).max(0) as usize;
        let mut c = vec![Fq::zero_in(self.ctx); n];
        for (s, src) in [(self.start, &self.coeffs), (o.start, &o.coeffs)] {
            for (i, a) in src.iter().enumerate() {
                let k = (s - start) as usize + i;
                if k < n {
                    c[k] = c[k].add(a);
                }
            }
        }
        Self::normalize(self.ctx, start, c, prec)
    }
    pub fn neg(&self) -> Self {
        LaurentSeries {
            ctx: self.ctx,
            start: self.start,
            coeffs: self.coeffs.iter().map(|a| a.neg()).collect(),
            prec: self.prec,
        }
    }
    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }
    pub fn scale(&self, a: Fq) -> Self {
        Self::normalize(self.ctx, self.start, self.coeffs.iter().map(|c| c.mul(&a)).collect(), self.prec)
    }
    /// Product; precision min(pa + vb, pb + va).
    pub fn mul(&self, o: &Self) -> Self {
        let prec = (self.prec + o.low()).min(o.prec + self.low());
        let start = self.low() + o.low();
        if self.is_zero() || o.is_zero() {
            return Self::zero(self.ctx, prec);
        }
        let n = (prec - start).max(0) as usize;
        let mut c = vec![Fq::zero_in(self.ctx); n];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() || i >= n {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if i + j >= n {
                    break;
                }
                c[i + j] = c[i + j].add(&a.mul(b));
            }
        }
        Self::normalize(self.ctx, start, c, prec)
    }
    /// Inverse; precision prec - 2·val.
    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroSeries);
        }
        let v = self.start;
        let rel = (self.prec - v) as usize;
        let inv0 = self.coeffs[0].inv().unwrap();
        let mut out = vec![Fq::zero_in(self.ctx); rel];
        for k in 0..rel {
            let mut s = if k == 0 { Fq::one_in(self.ctx) } else { Fq::zero_in(self.ctx) };
            for j in 1..=k.min(self.coeffs.len().saturating_sub(1)) {
                s = s.sub(&self.coeffs[j].mul(&out[k - j]));
            }
            out[k] = s.mul(&inv0);
        }
        Ok(Self::normalize(self.ctx, -v, out, self.prec - 2 * v))
    }
    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.ctx, i64::MAX / 4);
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
    /// Equality of all coefficients below the common precision `prec`.
    pub fn agrees_to(&self, o: &Self, prec: i64) -> bool {
        if prec > self.prec || prec > o.prec {
            return false;
        }
        let lo = self.low().min(o.low());
        (lo..prec).all(|k| self.coeff(k) == o.coeff(k))
    }
    /// Coefficients a_k for k in [from, to).
    pub fn coeff_range(&self, from: i64, to: i64) -> Vec<Fq> {
        (from..to).map(|k| self.coeff(k).unwrap_or(Fq::zero_in(self.ctx))).collect()
    }
}

impl PartialEq for LaurentSeries {
    fn eq(&self, o: &Self) -> bool {
        self.prec == o.prec && self.agrees_to(o, self.prec)
    }
}
