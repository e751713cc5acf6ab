//! Exponentials and logarithms of Drinfeld modules over K = Fq(T), the
//! Carlitz zeta function, Carlitz factorials and Bernoulli–Carlitz numbers.

use crate::algebra::apoly::{count_irreducibles, irreducibles_of_degree, monics};
use crate::algebra::{APoly, Field, FqCtx, FrobField, LaurentSeries, Rat, Ring};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::ore::OrePoly;

/// Σ_{n ≤ N} c_n τ^n with c_n ∈ K, known modulo τ^{N+1}.
#[derive(Clone, Debug, PartialEq)]
pub struct OreSeries {
    pub coeffs: Vec<Rat>,
}

impl OreSeries {
    pub fn fq(&self) -> &'static FqCtx {
        self.coeffs[0].fq()
    }

    /// Index of the last known coefficient.
    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// self·o modulo τ^{min(N, N')+1}.
    pub fn compose(&self, o: &OreSeries) -> OreSeries {
        let n = self.order().min(o.order());
        let mut out = vec![Rat::zero_in(self.fq()); n + 1];
        for (i, a) in self.coeffs.iter().enumerate().take(n + 1) {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate().take(n + 1 - i) {
                if !b.is_zero() {
                    out[i + j] = out[i + j].add(&a.mul(&b.frob_pow(i)));
                }
            }
        }
        OreSeries { coeffs: out }
    }

    fn from_ore(p: &OrePoly<Rat>, n: usize) -> OreSeries {
        OreSeries { coeffs: (0..=n).map(|i| p.coeff(i)).collect() }
    }

    /// Σ c_n x^{q^n}, truncated to precision `prec` at infinity.
    pub fn eval(&self, x: &LaurentSeries, prec: i64) -> LaurentSeries {
        let q = self.fq().q as u64;
        let mut acc = LaurentSeries::zero(self.fq(), prec);
        let mut xp = x.clone();
        for (n, c) in self.coeffs.iter().enumerate() {
            if n > 0 {
                xp = xp.pow(q);
            }
            if c.is_zero() {
                continue;
            }
            let cs = LaurentSeries::from_rat(c, prec - xp.valuation().unwrap_or(0).min(0));
            acc = acc.add(&cs.mul(&xp));
        }
        acc.truncate(prec)
    }
}

/// Number of n ≥ 0 with q^n < prec: the τ-terms seen by a power series in
/// x truncated at x^prec.
pub fn terms_for_prec(q: u64, prec: u64) -> usize {
    let mut n = 0;
    let mut qn = 1u64;
    while qn < prec {
        n += 1;
        qn = qn.saturating_mul(q);
    }
    n.max(1)
}

/// φ_T = T + τ over K.
pub fn carlitz_module(fq: &'static FqCtx) -> DrinfeldModule<Rat> {
    DrinfeldModule::carlitz(Rat::t(fq))
}

fn check_char_zero(phi: &DrinfeldModule<Rat>) -> Result<()> {
    let z = phi.gen();
    if z.degree().is_none() || (z.is_poly() && z.num().deg() == Some(0)) {
        return Err(Error::InvalidArgument("γ(T) is constant: the base has finite characteristic".into()));
    }
    Ok(())
}

/// c_0, …, c_N with c_n = (z^{q^n} − z)^{-1} Σ_{i=1}^{min(r,n)} g_i c_{n−i}^{q^i}.
pub fn exp_coeffs(phi: &DrinfeldModule<Rat>, n: usize) -> Result<OreSeries> {
    check_char_zero(phi)?;
    let z = phi.gen().clone();
    let r = phi.rank();
    let mut c = vec![z.one()];
    let mut zq = z.clone();
    for k in 1..=n {
        zq = zq.frob();
        let mut s = z.zero();
        for i in 1..=r.min(k) {
            let g = phi.coeff(i);
            if !g.is_zero() {
                s = s.add(&g.mul(&c[k - i].frob_pow(i)));
            }
        }
        c.push(s.div(&zq.sub(&z)).ok_or(Error::DivisionByZero)?);
    }
    Ok(OreSeries { coeffs: c })
}

/// ℓ_0, …, ℓ_N with ℓ_n = (z − z^{q^n})^{-1} Σ_{i=1}^{min(r,n)} g_i^{q^{n−i}} ℓ_{n−i}.
pub fn log_coeffs(phi: &DrinfeldModule<Rat>, n: usize) -> Result<OreSeries> {
    check_char_zero(phi)?;
    let z = phi.gen().clone();
    let r = phi.rank();
    let mut l = vec![z.one()];
    let mut zq = z.clone();
    for k in 1..=n {
        zq = zq.frob();
        let mut s = z.zero();
        for i in 1..=r.min(k) {
            let g = phi.coeff(i);
            if !g.is_zero() && !l[k - i].is_zero() {
                s = s.add(&g.frob_pow(k - i).mul(&l[k - i]));
            }
        }
        l.push(s.div(&z.sub(&zq)).ok_or(Error::DivisionByZero)?);
    }
    Ok(OreSeries { coeffs: l })
}

/// e·γ(a) = φ_a·e modulo τ^{N+1}.
pub fn exp_intertwines(phi: &DrinfeldModule<Rat>, e: &OreSeries, a: &APoly) -> bool {
    let n = e.order();
    let ga = OreSeries::from_ore(&OrePoly::constant(phi.gamma(a)), n);
    let pa = OreSeries::from_ore(&phi.image(a), n);
    e.compose(&ga) == pa.compose(e)
}

/// ℓ·φ_a = γ(a)·ℓ modulo τ^{N+1}.
pub fn log_intertwines(phi: &DrinfeldModule<Rat>, l: &OreSeries, a: &APoly) -> bool {
    let n = l.order();
    let ga = OreSeries::from_ore(&OrePoly::constant(phi.gamma(a)), n);
    let pa = OreSeries::from_ore(&phi.image(a), n);
    l.compose(&pa) == ga.compose(l)
}

fn check_zeta_args(s: u64, prec: i64) -> Result<()> {
    if s == 0 {
        return Err(Error::InvalidArgument("s must be positive".into()));
    }
    if prec < 0 {
        return Err(Error::Precision("precision must be nonnegative".into()));
    }
    Ok(())
}

/// Largest d whose monic block Σ_{deg a = d} a^{-s} can be nonzero modulo
/// T^{-prec}.
///
/// Writing a = T^d(1 + b/T^d) with deg b < d, the block is a sum of terms
/// binom(−s, k) T^{−ds−dk} Σ_b b^k, and Σ_b b^k vanishes unless the base-q
/// digit sum of k is at least d(q − 1), in particular unless k ≥ q^d − 1.
/// So the block has valuation at least ds + q^d − 1.
pub fn zeta_block_bound(q: u64, s: u64, prec: i64) -> usize {
    let mut d = 0usize;
    loop {
        let next = d as u64 + 1;
        let qd = q.checked_pow(next as u32).unwrap_or(u64::MAX);
        if (next * s).saturating_add(qd - 1) >= prec.max(0) as u64 {
            return d;
        }
        d += 1;
    }
}

/// a^{-s} modulo T^{-prec}.
fn inv_power(a: &APoly, s: u64, prec: i64) -> LaurentSeries {
    let d = a.deg().unwrap() as i64 * s as i64;
    LaurentSeries::from_apoly(&a.pow(s), prec - 2 * d).inv().unwrap()
}

/// Σ_{deg a = d} a^{-s} over monic a.
pub fn zeta_block(fq: &'static FqCtx, d: usize, s: u64, prec: i64) -> LaurentSeries {
    let mut acc = LaurentSeries::zero(fq, prec);
    if (d as i64) * (s as i64) >= prec {
        return acc;
    }
    for a in monics(fq, d) {
        acc = acc.add(&inv_power(&a, s, prec));
    }
    acc
}

/// ζ_C(s) = Σ_{a monic} a^{-s} modulo T^{-prec}.
pub fn carlitz_zeta(fq: &'static FqCtx, s: u64, prec: i64) -> Result<LaurentSeries> {
    check_zeta_args(s, prec)?;
    let dmax = zeta_block_bound(fq.q as u64, s, prec);
    let mut acc = LaurentSeries::zero(fq, prec);
    for d in 0..=dmax {
        acc = acc.add(&zeta_block(fq, d, s, prec));
    }
    Ok(acc)
}

/// Largest number of places the Euler product will visit.
pub const EULER_PLACE_LIMIT: u64 = 1_000_000;

/// ∏_𝔭 (1 − 𝔭^{-s})^{-1} modulo T^{-prec}, over places of degree D with
/// D·s < prec.
pub fn carlitz_zeta_euler(fq: &'static FqCtx, s: u64, prec: i64) -> Result<LaurentSeries> {
    check_zeta_args(s, prec)?;
    let top = (1..).take_while(|&d: &usize| (d as i64) * (s as i64) < prec).last().unwrap_or(0);
    let places: u64 = (1..=top).map(|d| count_irreducibles(fq.q as u64, d)).fold(0, u64::saturating_add);
    if places > EULER_PLACE_LIMIT {
        return Err(Error::Unsupported(format!("the Euler product needs {places} places; the limit is {EULER_PLACE_LIMIT}")));
    }
    let mut acc = LaurentSeries::one(fq, prec);
    let mut d = 1usize;
    while (d as i64) * (s as i64) < prec {
        for p in irreducibles_of_degree(fq, d) {
            let x = inv_power(&p, s, prec);
            // 1 + x + x² + … while the valuation stays below prec
            let mut term = x.clone();
            let mut factor = LaurentSeries::one(fq, prec).add(&x);
            loop {
                term = term.mul(&x).truncate(prec);
                if term.is_zero() {
                    break;
                }
                factor = factor.add(&term);
            }
            acc = acc.mul(&factor).truncate(prec);
        }
        d += 1;
    }
    Ok(acc)
}

/// D_i = ∏_{j<i} (T^{q^i} − T^{q^j}), via D_i = (T^{q^i} − T)·D_{i−1}^q.
pub fn carlitz_d(fq: &'static FqCtx, i: usize) -> APoly {
    let q = fq.q as u64;
    let t = APoly::x(fq);
    let mut d = APoly::one(fq);
    let mut tq = t.clone();
    for _ in 0..i {
        tq = tq.pow(q);
        d = tq.sub(&t).mul(&d.pow(q));
    }
    d
}

/// Π(n) = ∏ D_i^{n_i} for n = Σ n_i q^i.
pub fn carlitz_factorial(fq: &'static FqCtx, n: u64) -> APoly {
    let q = fq.q as u64;
    let mut acc = APoly::one(fq);
    let mut m = n;
    let mut i = 0;
    while m > 0 {
        let digit = m % q;
        if digit > 0 {
            acc = acc.mul(&carlitz_d(fq, i).pow(digit));
        }
        m /= q;
        i += 1;
    }
    acc
}

/// BC_0, …, BC_n from x/e_C(x) = Σ BC_k x^k / Π(k).
pub fn bernoulli_carlitz_all(fq: &'static FqCtx, n: usize) -> Vec<Rat> {
    let q = fq.q as usize;
    // e_C(x)/x = Σ_i x^{q^i − 1}/D_i
    let mut e = vec![Rat::zero_in(fq); n + 1];
    let mut i = 0;
    let mut qi = 1usize;
    while qi - 1 <= n {
        e[qi - 1] = Rat::new(APoly::one(fq), carlitz_d(fq, i)).unwrap();
        i += 1;
        qi = match qi.checked_mul(q) {
            Some(v) => v,
            None => break,
        };
    }
    // Inverse power series; e[0] = 1.
    let mut inv = vec![Rat::zero_in(fq); n + 1];
    inv[0] = Rat::one_in(fq);
    for k in 1..=n {
        let mut s = Rat::zero_in(fq);
        for j in 1..=k {
            if !e[j].is_zero() && !inv[k - j].is_zero() {
                s = s.sub(&e[j].mul(&inv[k - j]));
            }
        }
        inv[k] = s;
    }
    inv.into_iter()
        .enumerate()
        .map(|(k, c)| c.mul(&Rat::from_poly(carlitz_factorial(fq, k as u64))))
        .collect()
}

pub fn bernoulli_carlitz(fq: &'static FqCtx, n: usize) -> Rat {
    bernoulli_carlitz_all(fq, n).pop().unwrap()
}

/// π̃^{q−1} ≡ −T^q / ∏_{i=1}^{n−1} (1 − T^{1−q^i})^{q−1} modulo T^{q+1−q^n}.
pub fn pi_power_truncated(fq: &'static FqCtx, n_terms: u32, prec: i64) -> Result<LaurentSeries> {
    let q = fq.q as i64;
    let bound = q.checked_pow(n_terms).map(|qn| qn - q - 1).unwrap_or(i64::MAX);
    if prec > bound {
        return Err(Error::Precision(format!(
            "{n_terms} factors determine π̃^(q−1) only modulo T^-{bound}, {prec} requested"
        )));
    }
    let work = prec + q;
    let mut den = LaurentSeries::one(fq, work);
    for i in 1..n_terms {
        let e = q.pow(i) - 1;
        // 1 − T^{-(q^i − 1)}
        let mut c = vec![crate::algebra::Fq::zero_in(fq); (e + 1) as usize];
        c[0] = crate::algebra::Fq::one_in(fq);
        c[e as usize] = c[0].neg();
        let f = series_from_coeffs(fq, &c, work);
        den = den.mul(&f.pow(q as u64 - 1)).truncate(work);
    }
    let num = LaurentSeries::from_apoly(&APoly::monomial(crate::algebra::Fq::from_int(fq, -1), q as usize), prec);
    Ok(num.mul(&den.inv()?).truncate(prec))
}

/// Σ c_k T^{-k}.
fn series_from_coeffs(fq: &'static FqCtx, c: &[crate::algebra::Fq], prec: i64) -> LaurentSeries {
    let mut acc = LaurentSeries::zero(fq, prec);
    for (k, a) in c.iter().enumerate() {
        if !a.is_zero() && (k as i64) < prec {
            let r = Rat::new(APoly::constant(*a), APoly::monomial(crate::algebra::Fq::one_in(fq), k)).unwrap();
            acc = acc.add(&LaurentSeries::from_rat(&r, prec));
        }
    }
    acc
}
