//! Dense linear algebra: Gaussian elimination over fields, division-free
//! characteristic polynomials over rings, and kernels over Fq[T].

use super::{APoly, Field, Ring};

pub type Matrix<R> = Vec<Vec<R>>;

pub fn identity<R: Ring>(ctx: R::Ctx, n: usize) -> Matrix<R> {
    (0..n)
        .map(|i| (0..n).map(|j| if i == j { R::one_in(ctx) } else { R::zero_in(ctx) }).collect())
        .collect()
}

pub fn mat_mul<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    let n = a.len();
    let m = b.first().map_or(0, |r| r.len());
    let k = b.len();
    let mut out = Vec::with_capacity(n);
    for row in a {
        let mut r = Vec::with_capacity(m);
        for j in 0..m {
            let mut s = row[0].zero();
            for l in 0..k {
                if !row[l].is_zero() && !b[l][j].is_zero() {
                    s = s.add(&row[l].mul(&b[l][j]));
                }
            }
            r.push(s);
        }
        out.push(r);
    }
    out
}

pub fn mat_add<R: Ring>(a: &Matrix<R>, b: &Matrix<R>) -> Matrix<R> {
    a.iter().zip(b).map(|(x, y)| x.iter().zip(y).map(|(u, v)| u.add(v)).collect()).collect()
}

pub fn mat_scale<R: Ring>(a: &Matrix<R>, c: &R) -> Matrix<R> {
    a.iter().map(|r| r.iter().map(|x| x.mul(c)).collect()).collect()
}

pub fn vec_mat<R: Ring>(v: &[R], a: &Matrix<R>) -> Vec<R> {
    let m = a.first().map_or(0, |r| r.len());
    (0..m)
        .map(|j| {
            let mut s = v[0].zero();
            for (i, x) in v.iter().enumerate() {
                if !x.is_zero() {
                    s = s.add(&x.mul(&a[i][j]));
                }
            }
            s
        })
        .collect()
}

/// Reduced row echelon form in place; returns the pivot columns.
pub fn rref<F: Field>(m: &mut Matrix<F>) -> Vec<usize> {
    let rows = m.len();
    let cols = m.first().map_or(0, |r| r.len());
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let Some(p) = (r..rows).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let inv = m[r][c].inv().unwrap();
        for x in m[r].iter_mut() {
            *x = x.mul(&inv);
        }
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let f = m[i][c].clone();
                for j in c..cols {
                    let t = f.mul(&m[r][j]);
                    m[i][j] = m[i][j].sub(&t);
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    pivots
}

pub fn rank<F: Field>(m: &Matrix<F>) -> usize {
    rref(&mut m.clone()).len()
}

/// Basis of the right kernel {x : M x = 0}.
pub fn nullspace<F: Field>(m: &Matrix<F>, ctx: F::Ctx, cols: usize) -> Vec<Vec<F>> {
    let mut a = m.clone();
    let pivots = rref(&mut a);
    let mut out = Vec::new();
    for free in (0..cols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![F::zero_in(ctx); cols];
        v[free] = F::one_in(ctx);
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = a[r][free].neg();
        }
        out.push(v);
    }
    out
}

/// A solution of M x = b, if any.
pub fn solve<F: Field>(m: &Matrix<F>, b: &[F], ctx: F::Ctx) -> Option<Vec<F>> {
    let cols = m.first().map_or(0, |r| r.len());
    let mut a: Matrix<F> = m.iter().zip(b).map(|(r, x)| {
        let mut r = r.clone();
        r.push(x.clone());
        r
    }).collect();
    let pivots = rref(&mut a);
    if pivots.contains(&cols) {
        return None;
    }
    let mut x = vec![F::zero_in(ctx); cols];
    for (r, &pc) in pivots.iter().enumerate() {
        x[pc] = a[r][cols].clone();
    }
    Some(x)
}

/// Coefficients c_0..c_n (c_n = 1) of det(X·I − M), by Berkowitz's
/// division-free algorithm.
pub fn charpoly<R: Ring>(m: &Matrix<R>, ctx: R::Ctx) -> Vec<R> {
    let n = m.len();
    // p holds coefficients in descending order.
    let mut p = vec![R::one_in(ctx)];
    for k in 1..=n {
        let a = &m[k - 1][k - 1];
        let row: Vec<R> = m[k - 1][..k - 1].to_vec();
        let mut col: Vec<R> = (0..k - 1).map(|i| m[i][k - 1].clone()).collect();
        // Toeplitz column: 1, -a, -r c, -r A c, ..., -r A^{k-2} c
        let mut t = vec![R::one_in(ctx), a.neg()];
        for _ in 0..k.saturating_sub(1) {
            let mut s = R::zero_in(ctx);
            for (x, y) in row.iter().zip(&col) {
                s = s.add(&x.mul(y));
            }
            t.push(s.neg());
            col = (0..k - 1)
                .map(|i| {
                    let mut s = R::zero_in(ctx);
                    for (j, y) in col.iter().enumerate() {
                        s = s.add(&m[i][j].mul(y));
                    }
                    s
                })
                .collect();
        }
        let mut np = vec![R::zero_in(ctx); k + 1];
        for (i, slot) in np.iter_mut().enumerate() {
            let mut s = R::zero_in(ctx);
            for (j, pj) in p.iter().enumerate() {
                if i >= j && i - j < t.len() {
                    s = s.add(&t[i - j].mul(pj));
                }
            }
            *slot = s;
        }
        p = np;
    }
    p.reverse();
    p
}

pub fn det<R: Ring>(m: &Matrix<R>, ctx: R::Ctx) -> R {
    let c = charpoly(m, ctx);
    if m.len() % 2 == 0 { c[0].clone() } else { c[0].neg() }
}

/// Adjugate via Cayley–Hamilton; division-free.
pub fn adjugate<R: Ring>(m: &Matrix<R>, ctx: R::Ctx) -> Matrix<R> {
    let n = m.len();
    if n == 1 {
        return vec![vec![R::one_in(ctx)]];
    }
    let c = charpoly(m, ctx);
    // Horner: M^{n-1} + c_{n-1} M^{n-2} + ... + c_1 I
    let mut acc = identity::<R>(ctx, n);
    for k in (1..n).rev() {
        acc = mat_mul(&acc, m);
        for (i, row) in acc.iter_mut().enumerate() {
            row[i] = row[i].add(&c[k]);
        }
    }
    if n % 2 == 1 { acc } else { acc.iter().map(|r| r.iter().map(|x| x.neg()).collect()).collect() }
}

/// An Fq[T]-basis of {x ∈ A^n : M x = 0}, reduced so that column degrees
/// are small (weak Popov form).
pub fn poly_kernel(m: &Matrix<APoly>, n: usize) -> Vec<Vec<APoly>> {
    let ctx = m[0][0].fq();
    // Columns of the stacked matrix [M; I], reduced by unimodular column ops.
    let rows = m.len();
    let mut cols: Vec<Vec<APoly>> = (0..n)
        .map(|j| {
            let mut c: Vec<APoly> = (0..rows).map(|i| m[i][j].clone()).collect();
            for i in 0..n {
                c.push(if i == j { APoly::one(ctx) } else { APoly::zero(ctx) });
            }
            c
        })
        .collect();
    let mut active: Vec<usize> = (0..n).collect();
    for i in 0..rows {
        loop {
            let nz: Vec<usize> = active.iter().copied().filter(|&j| !cols[j][i].is_zero()).collect();
            if nz.len() <= 1 {
                if let Some(&j) = nz.first() {
                    active.retain(|&x| x != j);
                }
                break;
            }
            let piv = *nz.iter().min_by_key(|&&j| cols[j][i].deg().unwrap()).unwrap();
            for &j in &nz {
                if j == piv {
                    continue;
                }
                let (qt, _) = cols[j][i].divmod(&cols[piv][i]).unwrap();
                let pc = cols[piv].clone();
                for (x, y) in cols[j].iter_mut().zip(&pc) {
                    *x = x.sub(&qt.mul(y));
                }
            }
        }
    }
    let basis: Vec<Vec<APoly>> = active.iter().map(|&j| cols[j][rows..].to_vec()).collect();
    weak_popov(basis)
}

fn leading_pos(v: &[APoly]) -> Option<(usize, usize)> {
    let d = v.iter().filter_map(|x| x.deg()).max()?;
    let pos = v.iter().rposition(|x| x.deg() == Some(d))?;
    Some((pos, d))
}

/// Row reduction of a polynomial basis to weak Popov form: leading
/// positions pairwise distinct. Spans the same module.
pub fn weak_popov(mut basis: Vec<Vec<APoly>>) -> Vec<Vec<APoly>> {
    loop {
        let mut changed = false;
        'outer: for a in 0..basis.len() {
            for b in 0..basis.len() {
                if a == b {
                    continue;
                }
                let (Some((pa, da)), Some((pb, db))) = (leading_pos(&basis[a]), leading_pos(&basis[b])) else {
                    continue;
                };
                if pa == pb && da >= db {
                    let c = basis[a][pa].lc().unwrap().div(basis[b][pb].lc().unwrap()).unwrap();
                    let f = APoly::monomial(c, da - db);
                    let rb = basis[b].clone();
                    for (x, y) in basis[a].iter_mut().zip(&rb) {
                        *x = x.sub(&f.mul(y));
                    }
                    changed = true;
                    break 'outer;
                }
            }
        }
        if !changed {
            break;
        }
    }
    basis.retain(|v| v.iter().any(|x| !x.is_zero()));
    basis.sort_by_key(|v| leading_pos(v).map(|(p, d)| (d, p)));
    basis
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Fq, FqCtx};

    #[test]
    fn charpoly_and_adjugate() {
        let f = FqCtx::prime(7).unwrap();
        let e = |v: i64| Fq::from_int(f, v);
        let m = vec![vec![e(1), e(2), e(0)], vec![e(3), e(4), e(5)], vec![e(6), e(0), e(1)]];
        let c = charpoly(&m, f);
        assert_eq!(c.len(), 4);
        assert!(c[3].is_one());
        // trace = 6
        assert_eq!(c[2], e(-6));
        let d = det(&m, f);
        // 1*(4-0) - 2*(3-30) + 0 = 58 = 2 mod 7
        assert_eq!(d, e(58));
        let adj = adjugate(&m, f);
        let prod = mat_mul(&m, &adj);
        for (i, row) in prod.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                assert_eq!(*x, if i == j { d } else { e(0) });
            }
        }
    }

    #[test]
    fn kernel_over_a() {
        let f = FqCtx::prime(5).unwrap();
        let t = APoly::x(f);
        let one = APoly::one(f);
        // x0 * T + x1 * (T^2 + 1) = 0 has kernel spanned by (T^2+1, -T).
        let m = vec![vec![t.clone(), t.mul(&t).add(&one)]];
        let k = poly_kernel(&m, 2);
        assert_eq!(k.len(), 1);
        let v = &k[0];
        assert!(m[0][0].mul(&v[0]).add(&m[0][1].mul(&v[1])).is_zero());
        assert_eq!(v[0].deg(), Some(2));
        assert_eq!(v[1].deg(), Some(1));
    }
}
