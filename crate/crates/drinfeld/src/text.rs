//! Text formats shared by the library and the command line.
//!
//! Grammar:
//! - base field `p` or `p^k[:m_0,…,m_k]`
//! - extension `p^k[:m_0,…,m_k]` (over F_p) or `ext:d[:m_0,…,m_d]` (over a
//!   given base)
//! - polynomial in A: comma-separated ascending coefficients
//! - field element: sum of terms `c`, `z`, `c*z`, `z^e`, `c*z^e`
//! - Ore polynomial: comma-separated field elements ascending in τ
//! - Drinfeld module: `γ;g_1;…;g_r`, or in full
//!   `q; d[:modulus]; γ; g_1,…,g_r`
//!
//! Coefficients of Fq are integers mod p for prime q and the integer code
//! 0..q−1 of the base field otherwise. Error columns are 1-based.

use crate::algebra::{APoly, ExtCtx, FElem, Fq, FqCtx, Rat, Ring};
use crate::drinfeld::DrinfeldModule;
use crate::error::{Error, Result};
use crate::ore::OrePoly;

fn err(col: usize, msg: impl Into<String>) -> Error {
    Error::Parse { col, msg: msg.into() }
}

/// Ascending rendering such as `3 + 5*T + T^2`.
pub fn render_apoly(p: &APoly, var: &str) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut terms = Vec::new();
    for (i, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let mono = match i {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{i}"),
        };
        terms.push(match (mono.is_empty(), c.is_one()) {
            (true, _) => c.v.to_string(),
            (false, true) => mono,
            (false, false) => format!("{}*{mono}", c.v),
        });
    }
    terms.join(" + ")
}

/// `num` or `(num)/(den)` in the variable `var`.
pub fn render_rat(r: &Rat, var: &str) -> String {
    let n = render_apoly(r.num(), var);
    if r.is_poly() {
        return n;
    }
    let wrap = |p: &APoly, s: String| if p.coeffs().iter().filter(|c| !c.is_zero()).count() > 1 { format!("({s})") } else { s };
    format!("{}/{}", wrap(r.num(), n), wrap(r.den(), render_apoly(r.den(), var)))
}

/// Splits on `sep`, returning trimmed pieces with their 1-based columns.
fn split_cols(s: &str, sep: char, offset: usize) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = 0;
    for (i, ch) in s.char_indices().chain(std::iter::once((s.len(), sep))) {
        if ch == sep {
            let piece = &s[start..i];
            let lead = piece.len() - piece.trim_start().len();
            out.push((offset + s[..start + lead].chars().count() + 1, piece.trim()));
            start = i + ch.len_utf8();
        }
    }
    out
}

fn parse_uint(s: &str, col: usize, what: &str) -> Result<u64> {
    if s.is_empty() {
        return Err(err(col, format!("expected {what}")));
    }
    s.parse::<u64>().map_err(|_| err(col, format!("invalid {what} `{s}`")))
}

fn parse_int(s: &str, col: usize) -> Result<i64> {
    if s.is_empty() {
        return Err(err(col, "expected an integer"));
    }
    s.parse::<i64>().map_err(|_| err(col, format!("invalid integer `{s}`")))
}

/// An integer token as an element of Fq.
fn scalar(fq: &'static FqCtx, n: i64, col: usize) -> Result<Fq> {
    if fq.is_prime_field() {
        return Ok(Fq::from_int(fq, n));
    }
    if n < 0 || n >= fq.q as i64 {
        return Err(err(col, format!("{n} is not an element code of F_{}", fq.q)));
    }
    Ok(Fq::new(fq, n as u32))
}

fn parse_u32_list(s: &str, offset: usize) -> Result<Vec<u32>> {
    split_cols(s, ',', offset)
        .into_iter()
        .map(|(c, t)| parse_uint(t, c, "coefficient").map(|v| v as u32))
        .collect()
}

/// `p^k` prefix with optional `:modulus`; returns (p, k, modulus).
fn parse_prime_power(s: &str) -> Result<(u32, usize, Option<Vec<u32>>)> {
    let (head, modulus) = match s.find(':') {
        Some(i) => (&s[..i], Some(parse_u32_list(&s[i + 1..], s[..=i].chars().count())?)),
        None => (s, None),
    };
    let (p, k) = match head.find('^') {
        Some(i) => {
            let p = parse_uint(head[..i].trim(), 1, "characteristic")?;
            let ks = &head[i + 1..];
            if ks.trim().is_empty() {
                return Err(err(i + 1, "missing exponent after `^`"));
            }
            (p, parse_uint(ks.trim(), i + 2, "exponent")?)
        }
        None => (parse_uint(head.trim(), 1, "characteristic")?, 1),
    };
    if k == 0 {
        return Err(err(1, "degree must be positive"));
    }
    let p = u32::try_from(p).map_err(|_| err(1, "characteristic too large"))?;
    Ok((p, k as usize, modulus))
}

/// Base field Fq from `p` or `p^k[:modulus]`.
pub fn parse_base(s: &str) -> Result<&'static FqCtx> {
    let (p, k, modulus) = parse_prime_power(s.trim())?;
    FqCtx::new(p, k as u32, modulus.as_deref())
}

pub fn render_base(fq: &FqCtx) -> String {
    if fq.is_prime_field() {
        return fq.p.to_string();
    }
    format!("{}^{}:{}", fq.p, fq.k, join(&fq.modulus))
}

/// Extension F of Fq. `p^k[:modulus]` is taken over F_p and ignores `base`;
/// `ext:d[:modulus]` requires it.
pub fn parse_field(s: &str, base: Option<&'static FqCtx>) -> Result<&'static ExtCtx> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("ext:") {
        let base = base.ok_or_else(|| err(1, "`ext:` needs a base field"))?;
        let (d, modulus) = match rest.find(':') {
            Some(i) => (&rest[..i], Some(parse_u32_list(&rest[i + 1..], 4 + i + 1)?)),
            None => (rest, None),
        };
        let d = parse_uint(d.trim(), 5, "extension degree")? as usize;
        if d == 0 {
            return Err(err(5, "degree must be positive"));
        }
        return ExtCtx::new(base, d, modulus.as_deref());
    }
    let (p, k, modulus) = parse_prime_power(s)?;
    ExtCtx::new(FqCtx::prime(p)?, k, modulus.as_deref())
}

/// `p^k:modulus` over a prime base, `ext:d:modulus` otherwise.
pub fn render_field(f: &ExtCtx) -> String {
    if f.base.is_prime_field() {
        format!("{}^{}:{}", f.base.p, f.d, join(&f.modulus))
    } else {
        format!("ext:{}:{}", f.d, join(&f.modulus))
    }
}

fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

pub fn parse_apoly(s: &str, fq: &'static FqCtx) -> Result<APoly> {
    parse_apoly_at(s, fq, 0)
}

fn parse_apoly_at(s: &str, fq: &'static FqCtx, offset: usize) -> Result<APoly> {
    let c = split_cols(s, ',', offset)
        .into_iter()
        .map(|(col, t)| scalar(fq, parse_int(t, col)?, col))
        .collect::<Result<Vec<_>>>()?;
    Ok(APoly::new(fq, c))
}

/// Comma-separated ascending coefficients; `0` for the zero polynomial.
pub fn render_apoly_csv(p: &APoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    join(&p.coeffs_u32())
}

pub fn parse_felem(s: &str, f: &'static ExtCtx) -> Result<FElem> {
    parse_felem_at(s, f, 0)
}

fn parse_felem_at(s: &str, f: &'static ExtCtx, offset: usize) -> Result<FElem> {
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    let col = |i: usize| offset + i + 1;
    let skip = |i: &mut usize| {
        while *i < chars.len() && chars[*i].is_whitespace() {
            *i += 1;
        }
    };
    let number = |i: &mut usize| -> Option<String> {
        let st = *i;
        while *i < chars.len() && chars[*i].is_ascii_digit() {
            *i += 1;
        }
        (*i > st).then(|| chars[st..*i].iter().collect())
    };
    let mut acc = f.zero();
    skip(&mut i);
    if i == chars.len() {
        return Err(err(col(i), "expected a field element"));
    }
    let mut first = true;
    while i < chars.len() {
        let mut negative = false;
        if !first || chars[i] == '-' || chars[i] == '+' {
            match chars[i] {
                '+' => i += 1,
                '-' => {
                    negative = true;
                    i += 1;
                }
                c => return Err(err(col(i), format!("expected `+` or `-`, found `{c}`"))),
            }
            skip(&mut i);
        }
        first = false;
        let start = i;
        let mut coeff = 1i64;
        let mut has_coeff = false;
        if let Some(n) = number(&mut i) {
            coeff = n.parse().map_err(|_| err(col(start), "integer too large"))?;
            has_coeff = true;
            skip(&mut i);
            if i < chars.len() && chars[i] == '*' {
                i += 1;
                skip(&mut i);
            } else {
                let c = scalar(f.base, if negative { -coeff } else { coeff }, col(start))?;
                acc = acc.add(&f.from_fq(c));
                continue;
            }
        }
        if i >= chars.len() || chars[i] != 'z' {
            let what = if has_coeff { "`z` after `*`" } else { "a coefficient or `z`" };
            return Err(err(col(i), format!("expected {what}")));
        }
        i += 1;
        skip(&mut i);
        let mut e = 1u64;
        if i < chars.len() && chars[i] == '^' {
            let caret = i;
            i += 1;
            skip(&mut i);
            let n = number(&mut i).ok_or_else(|| err(col(caret), "missing exponent after `^`"))?;
            e = n.parse().map_err(|_| err(col(caret + 1), "exponent too large"))?;
            skip(&mut i);
        }
        let c = scalar(f.base, if negative { -coeff } else { coeff }, col(start))?;
        acc = acc.add(&f.from_fq(c).mul(&f.gen().pow(e)));
    }
    Ok(acc)
}

/// Descending rendering such as `2*z^2 + z + 1`.
pub fn render_felem(x: &FElem) -> String {
    x.to_string()
}

pub fn parse_ore(s: &str, f: &'static ExtCtx) -> Result<OrePoly<FElem>> {
    parse_ore_at(s, f, 0)
}

fn parse_ore_at(s: &str, f: &'static ExtCtx, offset: usize) -> Result<OrePoly<FElem>> {
    let c = split_cols(s, ',', offset)
        .into_iter()
        .map(|(col, t)| parse_felem_at(t, f, col - 1))
        .collect::<Result<Vec<_>>>()?;
    Ok(OrePoly::new(f, c))
}

/// Comma-separated coefficients ascending in τ.
pub fn render_ore(u: &OrePoly<FElem>) -> String {
    if u.is_zero() {
        return "0".into();
    }
    u.coeffs().iter().map(render_felem).collect::<Vec<_>>().join(", ")
}

/// `γ;g_1;…;g_r` over a known field.
pub fn parse_module(s: &str, f: &'static ExtCtx) -> Result<DrinfeldModule<FElem>> {
    let c = split_cols(s, ';', 0)
        .into_iter()
        .map(|(col, t)| parse_felem_at(t, f, col - 1))
        .collect::<Result<Vec<_>>>()?;
    DrinfeldModule::new(c).map_err(|e| err(1, e.to_string()))
}

pub fn render_module(phi: &DrinfeldModule<FElem>) -> String {
    phi.coeffs().iter().map(render_felem).collect::<Vec<_>>().join("; ")
}

/// `q; d[:modulus]; γ; g_1,…,g_r`, carrying its own field.
pub fn parse_module_full(s: &str) -> Result<DrinfeldModule<FElem>> {
    let parts = split_cols(s, ';', 0);
    if parts.len() != 4 {
        return Err(err(1, "expected `q; d[:modulus]; gamma; g_1,...,g_r`"));
    }
    let base = parse_base(parts[0].1).map_err(|e| shift(e, parts[0].0 - 1))?;
    let spec = format!("ext:{}", parts[1].1);
    let f = parse_field(&spec, Some(base)).map_err(|e| shift(e, parts[1].0 - 1 - 4))?;
    let gamma = parse_felem_at(parts[2].1, f, parts[2].0 - 1)?;
    let mut c = vec![gamma];
    for (col, t) in split_cols(parts[3].1, ',', parts[3].0 - 1) {
        c.push(parse_felem_at(t, f, col - 1)?);
    }
    DrinfeldModule::new(c).map_err(|e| err(parts[3].0, e.to_string()))
}

pub fn render_module_full(phi: &DrinfeldModule<FElem>) -> String {
    let f = phi.field();
    let g: Vec<String> = phi.coeffs()[1..].iter().map(render_felem).collect();
    format!("{}; {}:{}; {}; {}", render_base(f.base), f.d, join(&f.modulus), render_felem(phi.gen()), g.join(", "))
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { col, msg } => Error::Parse { col: col + by, msg },
        e => e,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fields() {
        let f = parse_field("7^2:3,6,1", None).unwrap();
        assert_eq!(f.modulus, vec![3, 6, 1]);
        assert_eq!(render_field(f), "7^2:3,6,1");
        assert!(matches!(parse_field("7^", None), Err(Error::Parse { col: 2, .. })));
        assert!(matches!(parse_field("x", None), Err(Error::Parse { col: 1, .. })));
        assert!(matches!(parse_field("7^2:3,x,1", None), Err(Error::Parse { col: 7, .. })));
        let b = parse_base("3^2").unwrap();
        let e = parse_field("ext:3", Some(b)).unwrap();
        assert_eq!(e.d, 3);
        assert_eq!(parse_field(&render_field(e), Some(b)).unwrap(), e);
        assert_eq!(parse_base(&render_base(b)).unwrap(), b);
    }

    #[test]
    fn elements_and_modules() {
        let f = parse_field("7^2:3,6,1", None).unwrap();
        let z = f.gen();
        assert_eq!(parse_felem("1-z", f).unwrap(), f.one().sub(&z));
        assert_eq!(parse_felem(" 3*z^2 - 1", f).unwrap(), z.mul(&z).mul(&f.from_int(3)).sub(&f.one()));
        assert!(matches!(parse_felem("z^", f), Err(Error::Parse { col: 2, .. })));
        assert!(matches!(parse_felem("2*", f), Err(Error::Parse { col: 3, .. })));
        let phi = parse_module("z;z;1", f).unwrap();
        assert_eq!(phi.coeffs(), &[z.clone(), z.clone(), f.one()]);
        assert_eq!(parse_module(&render_module(&phi), f).unwrap(), phi);
        let full = render_module_full(&phi);
        assert_eq!(full, "7; 2:3,6,1; z; z, 1");
        assert_eq!(parse_module_full(&full).unwrap(), phi);
        assert!(matches!(parse_module("z;z;q", f), Err(Error::Parse { col: 5, .. })));
        let u = parse_ore("z+1, 0, 1", f).unwrap();
        assert_eq!(parse_ore(&render_ore(&u), f).unwrap(), u);
    }

    #[test]
    fn apolys() {
        let fq = FqCtx::prime(7).unwrap();
        let p = parse_apoly("2,0,3,0,1", fq).unwrap();
        assert_eq!(render_apoly_csv(&p), "2,0,3,0,1");
        assert_eq!(parse_apoly("-1", fq).unwrap(), APoly::from_i64(fq, &[6]));
        assert!(matches!(parse_apoly("1,,2", fq), Err(Error::Parse { col: 3, .. })));
        assert!(parse_apoly("0", fq).unwrap().is_zero());
    }
}
