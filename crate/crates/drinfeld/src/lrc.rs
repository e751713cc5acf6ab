//! Rank-metric locally recoverable codes from torsion of Drinfeld modules.
//!
//! A message f = Σ_{k≤s} f_k φ_T^k with deg_τ f_k ≤ t − 1 is evaluated on
//! fixed Fq-bases of φ[T − a_i] ⊆ F_{q^m}, i = 1..ℓ. The codeword is a vector
//! in F_{q^m}^{ℓr}, read as an (ℓr) × m matrix over Fq.

use rand::Rng;

use crate::algebra::linalg::{self, Matrix};
use crate::algebra::{Embedding, ExtCtx, FElem, Fq, FrobField, Ring};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::ore::OrePoly;

/// Exhaustive searches refuse message spaces larger than this.
pub const BRUTEFORCE_LIMIT: u64 = 1 << 20;

#[derive(Clone, Debug)]
pub struct LrcConfig {
    pub phi: DrinfeldModule<FElem>,
    pub a: Vec<Fq>,
    pub t: usize,
    pub delta: usize,
    pub s: usize,
    /// Fq-basis of φ[T − a_i] for each i; fixes the column order.
    pub bases: Vec<Vec<FElem>>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LrcParams {
    pub n: usize,
    pub k: usize,
    pub d: usize,
    pub locality: (usize, usize),
}

/// Ore polynomials f_0, …, f_s.
#[derive(Clone, Debug, PartialEq)]
pub struct Message {
    pub parts: Vec<OrePoly<FElem>>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Codeword {
    pub entries: Vec<FElem>,
}

impl Codeword {
    /// Row j holds the Fq-coordinates of entry j.
    pub fn matrix(&self) -> Matrix<Fq> {
        self.entries.iter().map(|e| e.coords_fq()).collect()
    }
    pub fn rank(&self) -> usize {
        linalg::rank(&self.matrix())
    }
}

fn check_shape(phi: &DrinfeldModule<FElem>, a: &[Fq], t: usize, delta: usize, s: usize) -> Result<()> {
    let r = phi.rank();
    if delta < 2 || t == 0 || t + delta - 1 != r {
        return Err(Error::InvalidArgument(format!("need r = t + δ − 1 with t ≥ 1, δ ≥ 2; got r = {r}, t = {t}, δ = {delta}")));
    }
    if a.is_empty() || s + 1 > a.len() {
        return Err(Error::InvalidArgument(format!("need s + 1 ≤ ℓ; got s = {s}, ℓ = {}", a.len())));
    }
    let f = phi.field();
    for (i, x) in a.iter().enumerate() {
        if x.ctx() != f.base {
            return Err(Error::FieldMismatch);
        }
        if x.is_zero() {
            return Err(Error::InvalidArgument("evaluation points must be nonzero".into()));
        }
        if a[..i].contains(x) {
            return Err(Error::InvalidArgument(format!("duplicate evaluation point {x}")));
        }
        if *phi.gen() == f.from_fq(*x) {
            return Err(Error::InvalidArgument(format!("T − {x} is the characteristic of φ")));
        }
    }
    Ok(())
}

/// A basis of φ[T − a] ∩ F_{q^m}.
pub fn torsion_in_base(phi: &DrinfeldModule<FElem>, a: Fq) -> Result<Vec<FElem>> {
    let f = phi.field();
    let map = phi.phi_t().sub(&OrePoly::constant(f.from_fq(a)));
    Ok(map.kernel_basis(&Embedding::identity(f))?.basis)
}

fn check_hypothesis(phi: &DrinfeldModule<FElem>, a: Fq, basis: &[FElem]) -> Result<()> {
    if basis.len() < phi.rank() {
        return Err(Error::TorsionNotRational(a.to_string(), basis.len(), phi.rank()));
    }
    Ok(())
}

pub fn lrc_setup(phi: &DrinfeldModule<FElem>, a: &[Fq], t: usize, delta: usize, s: usize) -> Result<LrcConfig> {
    check_shape(phi, a, t, delta, s)?;
    let mut bases = Vec::with_capacity(a.len());
    for x in a {
        let b = torsion_in_base(phi, *x)?;
        check_hypothesis(phi, *x, &b)?;
        bases.push(b);
    }
    Ok(LrcConfig { phi: phi.clone(), a: a.to_vec(), t, delta, s, bases })
}

impl LrcConfig {
    /// Rebuilds a config from stored bases, checking each is an Fq-basis
    /// of the corresponding torsion.
    pub fn with_bases(phi: &DrinfeldModule<FElem>, a: &[Fq], t: usize, delta: usize, s: usize, bases: Vec<Vec<FElem>>) -> Result<Self> {
        check_shape(phi, a, t, delta, s)?;
        if bases.len() != a.len() {
            return Err(Error::InvalidArgument("one basis per evaluation point".into()));
        }
        let phi_t = phi.phi_t();
        for (x, b) in a.iter().zip(&bases) {
            check_hypothesis(phi, *x, b)?;
            let ax = phi.field().from_fq(*x);
            if b.len() != phi.rank() || b.iter().any(|w| phi_t.eval(w) != w.mul(&ax)) || fq_rank(b) < b.len() {
                return Err(Error::InvalidArgument(format!("stored basis for a = {x} is not a basis of φ[T − a]")));
            }
        }
        Ok(LrcConfig { phi: phi.clone(), a: a.to_vec(), t, delta, s, bases })
    }

    pub fn field(&self) -> &'static ExtCtx {
        self.phi.field()
    }
    pub fn r(&self) -> usize {
        self.phi.rank()
    }
    pub fn ell(&self) -> usize {
        self.a.len()
    }
    pub fn m(&self) -> usize {
        self.field().d
    }
    /// Column range of group i.
    pub fn group(&self, i: usize) -> std::ops::Range<usize> {
        i * self.r()..(i + 1) * self.r()
    }
}

fn fq_rank(xs: &[FElem]) -> usize {
    let m: Matrix<Fq> = xs.iter().map(|x| x.coords_fq()).collect();
    linalg::rank(&m)
}

pub fn lrc_params(cfg: &LrcConfig) -> LrcParams {
    let (l, r, m) = (cfg.ell(), cfg.r(), cfg.m());
    LrcParams {
        n: m * l * r,
        k: m * (cfg.s + 1) * cfg.t,
        d: l * r - r * cfg.s - cfg.t + 1,
        locality: (cfg.t, cfg.delta),
    }
}

impl Message {
    pub fn zero(cfg: &LrcConfig) -> Self {
        Message { parts: vec![OrePoly::zero(cfg.field()); cfg.s + 1] }
    }

    pub fn random(cfg: &LrcConfig, rng: &mut impl Rng) -> Self {
        let f = cfg.field();
        let parts = (0..=cfg.s).map(|_| OrePoly::new(f, (0..cfg.t).map(|_| f.random(rng)).collect())).collect();
        Message { parts }
    }

    fn check(&self, cfg: &LrcConfig) -> Result<()> {
        if self.parts.len() != cfg.s + 1 {
            return Err(Error::InvalidArgument(format!("expected {} message parts, got {}", cfg.s + 1, self.parts.len())));
        }
        for (k, p) in self.parts.iter().enumerate() {
            if p.ctx() != cfg.field() {
                return Err(Error::FieldMismatch);
            }
            if p.deg().is_some_and(|d| d >= cfg.t) {
                return Err(Error::InvalidArgument(format!("f_{k} has τ-degree ≥ t = {}", cfg.t)));
            }
        }
        Ok(())
    }

    /// Σ f_k φ_T^k.
    pub fn to_ore(&self, phi: &DrinfeldModule<FElem>) -> OrePoly<FElem> {
        let phi_t = phi.phi_t();
        let mut acc = OrePoly::zero(phi.field());
        let mut pw = OrePoly::one(phi.field());
        for f in &self.parts {
            acc = acc.add(&f.mul(&pw));
            pw = pw.mul(&phi_t);
        }
        acc
    }

    /// Σ a^k f_k, the map induced on φ[T − a].
    pub fn restricted(&self, a: Fq, f: &'static ExtCtx) -> OrePoly<FElem> {
        let mut acc = OrePoly::zero(f);
        let mut ak = Fq::one_in(a.ctx());
        for p in &self.parts {
            acc = acc.add(&p.scale_left(&f.from_fq(ak)));
            ak = ak.mul(&a);
        }
        acc
    }
}

pub fn lrc_encode(cfg: &LrcConfig, msg: &Message) -> Result<Codeword> {
    msg.check(cfg)?;
    let f = msg.to_ore(&cfg.phi);
    Ok(Codeword { entries: cfg.bases.iter().flatten().map(|w| f.eval(w)).collect() })
}

/// Restores the erased entries of a codeword, all inside one group.
pub fn local_recover(cfg: &LrcConfig, word: &[Option<FElem>]) -> Result<Vec<FElem>> {
    let r = cfg.r();
    if word.len() != cfg.ell() * r {
        return Err(Error::InvalidArgument(format!("codeword length {} ≠ ℓr = {}", word.len(), cfg.ell() * r)));
    }
    let erased: Vec<usize> = (0..word.len()).filter(|&j| word[j].is_none()).collect();
    if erased.is_empty() {
        return Ok(word.iter().map(|x| x.clone().unwrap()).collect());
    }
    let i = erased[0] / r;
    if erased.iter().any(|&j| j / r != i) {
        return Err(Error::InvalidArgument("erasures span more than one group".into()));
    }
    if erased.len() >= cfg.delta {
        return Err(Error::InvalidArgument(format!(
            "{} erasures in one group; at most δ − 1 = {} can be recovered locally",
            erased.len(),
            cfg.delta - 1
        )));
    }
    let f = cfg.field();
    let basis = &cfg.bases[i];
    let known: Vec<usize> = (0..r).filter(|&j| word[i * r + j].is_some()).collect();
    // g(ω_j) = Σ_e g_e ω_j^{q^e} for the surviving ω_j.
    let m: Matrix<FElem> = known.iter().map(|&j| (0..cfg.t).map(|e| basis[j].frob_pow(e)).collect()).collect();
    let rhs: Vec<FElem> = known.iter().map(|&j| word[i * r + j].clone().unwrap()).collect();
    if linalg::rank(&m) < cfg.t {
        return Err(Error::InvalidArgument("surviving evaluations do not determine the local map".into()));
    }
    let g = linalg::solve(&m, &rhs, f).ok_or_else(|| Error::InvalidArgument("word is not a codeword on the surviving entries".into()))?;
    let g = OrePoly::new(f, g);
    let mut out: Vec<FElem> = Vec::with_capacity(word.len());
    for (j, x) in word.iter().enumerate() {
        out.push(match x {
            Some(v) => v.clone(),
            None => g.eval(&basis[j - i * r]),
        });
    }
    Ok(out)
}

fn guard(q: u64, exp: usize) -> Result<()> {
    let size = (q as u128).checked_pow(exp as u32).unwrap_or(u128::MAX);
    if size > BRUTEFORCE_LIMIT as u128 {
        return Err(Error::Unsupported(format!("q^{exp} codewords exceed the exhaustive-search limit 2^20")));
    }
    Ok(())
}

/// Minimum rank over nonzero combinations of the given Fq-matrices.
fn min_rank_of_span(gens: &[Matrix<Fq>]) -> usize {
    let fq = gens[0][0][0].ctx();
    let scalars: Vec<Fq> = fq.elements().collect();
    let zero = vec![vec![Fq::zero_in(fq); gens[0][0].len()]; gens[0].len()];
    let mut best = usize::MAX;
    fn rec(i: usize, acc: &Matrix<Fq>, nonzero: bool, gens: &[Matrix<Fq>], scalars: &[Fq], best: &mut usize) {
        if i == gens.len() {
            if nonzero {
                *best = (*best).min(linalg::rank(acc));
            }
            return;
        }
        for c in scalars {
            if c.is_zero() {
                rec(i + 1, acc, nonzero, gens, scalars, best);
                continue;
            }
            let next: Matrix<Fq> = acc
                .iter()
                .zip(&gens[i])
                .map(|(ra, rg)| ra.iter().zip(rg).map(|(x, y)| x.add(&c.mul(y))).collect())
                .collect();
            rec(i + 1, &next, true, gens, scalars, best);
        }
    }
    rec(0, &zero, false, gens, &scalars, &mut best);
    best
}

/// Fq-basis of the message space: z^e τ^j in slot k.
fn message_basis(cfg: &LrcConfig) -> Vec<Message> {
    let f = cfg.field();
    let mut out = Vec::new();
    for k in 0..=cfg.s {
        for j in 0..cfg.t {
            for e in 0..cfg.m() {
                let mut msg = Message::zero(cfg);
                msg.parts[k] = OrePoly::monomial(f.gen().pow(e as u64), j);
                out.push(msg);
            }
        }
    }
    out
}

/// min{rk(M_x) : x ∈ C, x ≠ 0} by enumerating all q^{m(s+1)t} messages.
pub fn min_rank_distance_bruteforce(cfg: &LrcConfig) -> Result<usize> {
    let q = cfg.field().q() as u64;
    guard(q, cfg.m() * (cfg.s + 1) * cfg.t)?;
    let gens: Vec<Matrix<Fq>> = message_basis(cfg)
        .iter()
        .map(|msg| lrc_encode(cfg, msg).map(|c| c.matrix()))
        .collect::<Result<_>>()?;
    Ok(min_rank_of_span(&gens))
}

/// Minimum rank distance of the local code on group i: all Ore polynomials
/// of τ-degree ≤ t − 1 evaluated on the basis of φ[T − a_i].
pub fn group_distance_bruteforce(cfg: &LrcConfig, i: usize) -> Result<usize> {
    let q = cfg.field().q() as u64;
    guard(q, cfg.m() * cfg.t)?;
    let f = cfg.field();
    let gens: Vec<Matrix<Fq>> = (0..cfg.t)
        .flat_map(|j| (0..cfg.m()).map(move |e| OrePoly::monomial(f.gen().pow(e as u64), j)))
        .map(|g| cfg.bases[i].iter().map(|w| g.eval(w).coords_fq()).collect())
        .collect();
    Ok(min_rank_of_span(&gens))
}

/// Random search for φ_T = γ + g_1τ + … + g_rτ^r over `f` satisfying (H)
/// for every a in `a`, with γ random outside Fq. Returns None when `tries`
/// candidates all fail.
pub fn search_module(f: &'static ExtCtx, r: usize, a: &[Fq], tries: usize, rng: &mut impl Rng) -> Option<DrinfeldModule<FElem>> {
    for _ in 0..tries {
        let gamma = f.random(rng);
        if f.d > 1 && gamma.minpoly().deg() == Some(1) {
            continue;
        }
        let mut c = vec![gamma];
        c.extend((0..r).map(|_| f.random(rng)));
        if c[r].is_zero() || a.iter().any(|x| c[0] == f.from_fq(*x)) {
            continue;
        }
        let Ok(phi) = DrinfeldModule::new(c) else { continue };
        if a.iter().all(|x| torsion_in_base(&phi, *x).is_ok_and(|b| b.len() == r)) {
            return Some(phi);
        }
    }
    None
}
