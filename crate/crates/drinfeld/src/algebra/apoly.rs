//! The ring A = Fq[T]: irreducibility, enumeration and Cantor–Zassenhaus.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Fq, FqCtx, Poly, Ring};

/// Element of A = Fq[T].
pub type APoly = Poly<Fq>;

impl Poly<Fq> {
    pub fn from_u32(ctx: &'static FqCtx, c: &[u32]) -> APoly {
        Poly::new(ctx, c.iter().map(|&v| Fq::new(ctx, v)).collect())
    }
    pub fn from_i64(ctx: &'static FqCtx, c: &[i64]) -> APoly {
        Poly::new(ctx, c.iter().map(|&v| Fq::from_int(ctx, v)).collect())
    }
    pub fn coeffs_u32(&self) -> Vec<u32> {
        self.coeffs().iter().map(|c| c.v).collect()
    }
    pub fn fq(&self) -> &'static FqCtx {
        self.base_ctx()
    }

    /// f(T^q), which equals f^q since coefficients are Frobenius-fixed.
    pub fn frob_substitute(&self) -> APoly {
        let q = self.fq().q as usize;
        if self.is_zero() {
            return self.clone();
        }
        let mut c = vec![Fq::zero_in(self.fq()); (self.len() - 1) * q + 1];
        for (i, a) in self.coeffs().iter().enumerate() {
            c[i * q] = *a;
        }
        Poly::new(self.fq(), c)
    }

    /// T^{q^k} mod self for k = 0..=n.
    pub fn frobenius_powers_of_t(&self, n: usize) -> Vec<APoly> {
        let q = self.fq().q as u64;
        let mut out = Vec::with_capacity(n + 1);
        let mut cur = APoly::x(self.fq()).rem(self);
        out.push(cur.clone());
        for _ in 0..n {
            cur = cur.pow_mod(q, self);
            out.push(cur.clone());
        }
        out
    }

    /// Irreducibility test: f of degree n is irreducible iff
    /// gcd(T^{q^i} - T, f) = 1 for every i <= n/2.
    pub fn is_irreducible(&self) -> bool {
        let n = match self.deg() {
            None | Some(0) => return false,
            Some(1) => return true,
            Some(n) => n,
        };
        let f = self.monic();
        let q = f.fq().q as u64;
        let x = APoly::x(f.fq());
        let mut h = x.rem(&f);
        for _ in 1..=n / 2 {
            h = h.pow_mod(q, &f);
            if h.sub(&x).gcd(&f).deg() != Some(0) {
                return false;
            }
        }
        true
    }

    /// p-th root of a polynomial whose exponents are all multiples of p.
    fn pth_root(&self) -> APoly {
        let ctx = self.fq();
        let p = ctx.p as usize;
        let e = (ctx.q / ctx.p) as u64;
        let c: Vec<Fq> = self.coeffs().iter().step_by(p).map(|a| a.pow(e)).collect();
        Poly::new(ctx, c)
    }

    /// Squarefree decomposition of a monic polynomial: pairs (g_i, i) with
    /// f = ∏ g_i^i and each g_i squarefree, pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(APoly, usize)> {
        let f = self.monic();
        let mut out = Vec::new();
        sff(&f, 1, &mut out);
        out.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| cmp_lex(&a.0, &b.0)));
        // Merge equal multiplicities produced by the p-th root recursion.
        let mut merged: Vec<(APoly, usize)> = Vec::new();
        for (g, m) in out {
            if let Some(last) = merged.last_mut() {
                if last.1 == m {
                    last.0 = last.0.mul(&g);
                    continue;
                }
            }
            merged.push((g, m));
        }
        merged
    }

    pub fn is_squarefree(&self) -> bool {
        !self.is_zero() && self.squarefree_decomposition().iter().all(|(_, m)| *m == 1)
    }

    /// Distinct-degree factorization of a monic squarefree polynomial.
    pub fn distinct_degree(&self) -> Vec<(APoly, usize)> {
        let ctx = self.fq();
        let q = ctx.q as u64;
        let mut f = self.monic();
        let x = APoly::x(ctx);
        let mut h = x.rem(&f);
        let mut out = Vec::new();
        let mut d = 0;
        while let Some(n) = f.deg() {
            if n < 2 * (d + 1) {
                if n > 0 {
                    out.push((f.clone(), n));
                }
                break;
            }
            d += 1;
            h = h.pow_mod(q, &f);
            let g = h.sub(&x).gcd(&f);
            if g.deg() != Some(0) {
                f = f.div_exact(&g).unwrap();
                h = h.rem(&f);
                out.push((g, d));
            }
        }
        out
    }

    /// Equal-degree splitting of a monic squarefree product of degree-d irreducibles.
    pub fn equal_degree(&self, d: usize, rng: &mut ChaCha8Rng) -> Vec<APoly> {
        let f = self.monic();
        let n = f.deg().unwrap_or(0);
        if n <= d {
            return vec![f];
        }
        let ctx = f.fq();
        loop {
            let a = random_below(ctx, n, rng);
            if a.deg().map_or(true, |k| k == 0) {
                continue;
            }
            let g = if ctx.p == 2 {
                // Trace map a + a^2 + ... + a^{2^{kd-1}}.
                let mut t = a.clone();
                let mut acc = a.clone();
                for _ in 1..(ctx.k as usize * d) {
                    t = t.mul_mod(&t, &f);
                    acc = acc.add(&t);
                }
                acc.gcd(&f)
            } else {
                let e = (BigUint::from(ctx.q).pow(d as u32) - 1u32) / 2u32;
                let b = a.pow_mod_big(&e, &f).sub(&APoly::one(ctx));
                b.gcd(&f)
            };
            if let Some(k) = g.deg() {
                if k > 0 && k < n {
                    let h = f.div_exact(&g).unwrap();
                    let mut out = g.equal_degree(d, rng);
                    out.extend(h.equal_degree(d, rng));
                    return out;
                }
            }
        }
    }

    /// Cantor–Zassenhaus factorization into monic irreducibles with multiplicity,
    /// sorted by degree and then lexicographically.
    pub fn cz_factor(&self, seed: u64) -> Vec<(APoly, usize)> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut out = Vec::new();
        for (g, m) in self.squarefree_decomposition() {
            for (h, d) in g.distinct_degree() {
                for p in h.equal_degree(d, &mut rng) {
                    out.push((p, m));
                }
            }
        }
        sort_factors(&mut out);
        out
    }
}

fn sff(f: &APoly, mult: usize, out: &mut Vec<(APoly, usize)>) {
    if f.deg().map_or(true, |d| d == 0) {
        return;
    }
    let p = f.fq().p as usize;
    let df = f.derivative();
    if df.is_zero() {
        sff(&f.pth_root(), mult * p, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_exact(&c).unwrap();
    let mut i = 1;
    while w.deg() != Some(0) {
        let y = w.gcd(&c);
        let fac = w.div_exact(&y).unwrap();
        if fac.deg() != Some(0) {
            out.push((fac, i * mult));
        }
        i += 1;
        c = c.div_exact(&y).unwrap();
        w = y;
    }
    if c.deg() != Some(0) {
        sff(&c.pth_root(), mult * p, out);
    }
}

/// Order used everywhere for monic polynomials: by degree, then by the
/// integer Σ c_i q^i (coefficient vectors compared from the top).
pub fn cmp_lex(a: &APoly, b: &APoly) -> std::cmp::Ordering {
    a.deg().cmp(&b.deg()).then_with(|| {
        let (x, y) = (a.coeffs_u32(), b.coeffs_u32());
        x.iter().rev().cmp(y.iter().rev())
    })
}

pub fn sort_factors(v: &mut [(APoly, usize)]) {
    v.sort_by(|a, b| cmp_lex(&a.0, &b.0).then(a.1.cmp(&b.1)));
}

/// Uniform random polynomial of degree < n.
pub fn random_below(ctx: &'static FqCtx, n: usize, rng: &mut impl Rng) -> APoly {
    let c: Vec<Fq> = (0..n).map(|_| Fq::new(ctx, rng.gen_range(0..ctx.q))).collect();
    Poly::new(ctx, c)
}

/// Uniform random monic polynomial of degree n.
pub fn random_monic(ctx: &'static FqCtx, n: usize, rng: &mut impl Rng) -> APoly {
    random_below(ctx, n, rng).add(&APoly::monomial(Fq::one_in(ctx), n))
}

/// Iterator over monic polynomials of degree n in lexicographic order.
pub struct Monics {
    ctx: &'static FqCtx,
    digits: Vec<u32>,
    done: bool,
}

impl Iterator for Monics {
    type Item = APoly;
    fn next(&mut self) -> Option<APoly> {
        if self.done {
            return None;
        }
        let mut c: Vec<u32> = self.digits.clone();
        c.push(1);
        let out = APoly::from_u32(self.ctx, &c);
        // increment, least significant digit first
        let mut i = 0;
        loop {
            if i == self.digits.len() {
                self.done = true;
                break;
            }
            self.digits[i] += 1;
            if self.digits[i] < self.ctx.q {
                break;
            }
            self.digits[i] = 0;
            i += 1;
        }
        Some(out)
    }
}

pub fn monics(ctx: &'static FqCtx, n: usize) -> Monics {
    Monics { ctx, digits: vec![0; n], done: false }
}

/// Monic irreducibles of degree n, each exactly once, in lexicographic order.
pub fn irreducibles_of_degree(ctx: &'static FqCtx, n: usize) -> impl Iterator<Item = APoly> {
    assert!(n >= 1, "degree must be positive");
    monics(ctx, n).filter(|f| f.is_irreducible())
}

/// The lexicographically smallest monic irreducible of degree n.
pub fn first_irreducible(ctx: &'static FqCtx, n: usize) -> APoly {
    irreducibles_of_degree(ctx, n).next().expect("irreducibles exist in every degree")
}

/// Number of monic irreducibles of degree n (necklace formula).
pub fn count_irreducibles(q: u64, n: usize) -> u64 {
    let mut total: i128 = 0;
    for d in 1..=n {
        if n % d == 0 {
            total += mobius(n / d) as i128 * (q as i128).pow(d as u32);
        }
    }
    (total / n as i128) as u64
}

fn mobius(mut n: usize) -> i32 {
    let mut m = 1;
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            m = -m;
        }
        d += 1;
    }
    if n > 1 {
        m = -m;
    }
    m
}

/// Multiplies out a factorization (with the given leading coefficient).
pub fn expand_factors(lc: Fq, factors: &[(APoly, usize)]) -> APoly {
    let mut acc = APoly::constant(lc);
    for (p, m) in factors {
        acc = acc.mul(&p.pow(*m as u64));
    }
    acc
}
