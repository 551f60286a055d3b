//! Coefficient-vector arithmetic over any [`Ring`], plus interpolation tables
//! for the node set `0, 1, ..., N-1`.
//!
//! Vectors are ascending. Functions returning polynomials trim trailing zeros
//! using the ring's zero test, so the zero polynomial is the empty vector.

use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::ring::Ring;
use alloc::vec;
use alloc::vec::Vec;

pub fn trim<R: Ring>(r: &R, v: &mut Vec<R::Elem>) {
    while let Some(last) = v.last() {
        if r.is_zero(last) {
            v.pop();
        } else {
            break;
        }
    }
}

pub fn trimmed<R: Ring>(r: &R, mut v: Vec<R::Elem>) -> Vec<R::Elem> {
    trim(r, &mut v);
    v
}

pub fn add<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    let z = r.zero();
    let v = (0..n)
        .map(|i| r.add(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(r, v)
}

pub fn sub<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    let n = a.len().max(b.len());
    let z = r.zero();
    let v = (0..n)
        .map(|i| r.sub(a.get(i).unwrap_or(&z), b.get(i).unwrap_or(&z)))
        .collect();
    trimmed(r, v)
}

pub fn scale<R: Ring>(r: &R, a: &[R::Elem], c: u64) -> Vec<R::Elem> {
    trimmed(r, a.iter().map(|x| r.scale(x, c)).collect())
}

pub fn mul_elem<R: Ring>(r: &R, a: &[R::Elem], c: &R::Elem) -> Vec<R::Elem> {
    trimmed(r, a.iter().map(|x| r.mul(x, c)).collect())
}

pub fn mul<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
    trimmed(r, r.poly_mul(a, b))
}

pub fn pow<R: Ring>(r: &R, a: &[R::Elem], mut e: u64) -> Vec<R::Elem> {
    let mut acc = vec![r.one()];
    let mut base = a.to_vec();
    while e > 0 {
        if e & 1 == 1 {
            acc = mul(r, &acc, &base);
        }
        e >>= 1;
        if e > 0 {
            base = mul(r, &base, &base);
        }
    }
    acc
}

/// The `k`-fold formal derivative.
pub fn derivative<R: Ring>(r: &R, a: &[R::Elem], k: usize) -> Vec<R::Elem> {
    if k == 0 {
        return a.to_vec();
    }
    if a.len() <= k {
        return Vec::new();
    }
    let f = r.ctx();
    let v = (0..a.len() - k)
        .map(|i| {
            // (i+1)(i+2)...(i+k)
            let mut c = 1u64;
            for t in 1..=k {
                c = f.mul(c, f.from_u64((i + t) as u64));
            }
            r.scale(&a[i + k], c)
        })
        .collect();
    trimmed(r, v)
}

/// Horner evaluation at a ring element.
pub fn eval<R: Ring>(r: &R, a: &[R::Elem], x: &R::Elem) -> R::Elem {
    let mut acc = r.zero();
    for c in a.iter().rev() {
        acc = r.add(&r.mul(&acc, x), c);
    }
    acc
}

/// Horner evaluation at a field scalar.
pub fn eval_scalar<R: Ring>(r: &R, a: &[R::Elem], x: u64) -> R::Elem {
    let mut acc = r.zero();
    for c in a.iter().rev() {
        acc = r.add(&r.scale(&acc, x), c);
    }
    acc
}

/// Values of `a` at the nodes `0..nodes`. After the first `deg a + 1`
/// values, each further value takes `deg a` additions through the table of
/// forward differences.
pub fn eval_at_nodes<R: Ring>(r: &R, a: &[R::Elem], nodes: usize) -> Vec<R::Elem> {
    let deg = a.len().saturating_sub(1);
    let head = nodes.min(deg + 1);
    let mut out: Vec<R::Elem> = (0..head as u64).map(|t| eval_scalar(r, a, t)).collect();
    if nodes <= head {
        return out;
    }
    // diff[k] = Delta^k a at the current node.
    let mut diff = out.clone();
    for k in 1..=deg {
        for i in (k..=deg).rev() {
            diff[i] = r.sub(&diff[i], &diff[i - 1]);
        }
    }
    // Advance the table to the last computed node.
    for _ in 0..deg {
        for k in 0..deg {
            diff[k] = r.add(&diff[k], &diff[k + 1]);
        }
    }
    out.reserve(nodes - head);
    for _ in head..nodes {
        for k in 0..deg {
            diff[k] = r.add(&diff[k], &diff[k + 1]);
        }
        out.push(diff[0].clone());
    }
    out
}

pub fn is_monic<R: Ring>(r: &R, a: &[R::Elem]) -> bool {
    match a.last() {
        Some(l) => r.equal(l, &r.one()),
        None => false,
    }
}

/// Divides by the leading coefficient; returns the monic polynomial and the
/// coefficient.
pub fn make_monic<R: Ring>(r: &R, a: &[R::Elem]) -> Result<(Vec<R::Elem>, R::Elem)> {
    let lc = a.last().ok_or(Error::ZeroPolynomial)?.clone();
    let inv = r.inv(&lc)?;
    let mut v: Vec<_> = a.iter().map(|c| r.mul(c, &inv)).collect();
    if let Some(l) = v.last_mut() {
        *l = r.one();
    }
    Ok((v, lc))
}

/// Remainder modulo a monic polynomial `f` of positive degree.
pub fn rem_monic<R: Ring>(r: &R, a: &[R::Elem], f: &[R::Elem]) -> Vec<R::Elem> {
    let n = f.len() - 1;
    if a.len() <= n {
        return trimmed(r, a.to_vec());
    }
    let mut v = a.to_vec();
    for i in (n..v.len()).rev() {
        let c = v[i].clone();
        if r.is_zero_cheap(&c) {
            continue;
        }
        for j in 0..n {
            let t = r.mul(&c, &f[j]);
            v[i - n + j] = r.sub(&v[i - n + j], &t);
        }
        v[i] = r.zero();
    }
    v.truncate(n);
    trimmed(r, v)
}

/// Quotient and remainder modulo a monic polynomial `f`.
pub fn divrem_monic<R: Ring>(
    r: &R,
    a: &[R::Elem],
    f: &[R::Elem],
) -> (Vec<R::Elem>, Vec<R::Elem>) {
    let n = f.len() - 1;
    if a.len() <= n {
        return (Vec::new(), trimmed(r, a.to_vec()));
    }
    let mut v = a.to_vec();
    let mut q = vec![r.zero(); a.len() - n];
    for i in (n..v.len()).rev() {
        let c = v[i].clone();
        q[i - n] = c.clone();
        for j in 0..n {
            let t = r.mul(&c, &f[j]);
            v[i - n + j] = r.sub(&v[i - n + j], &t);
        }
        v[i] = r.zero();
    }
    v.truncate(n);
    (trimmed(r, q), trimmed(r, v))
}

pub fn mulmod<R: Ring>(r: &R, a: &[R::Elem], b: &[R::Elem], f: &[R::Elem]) -> Vec<R::Elem> {
    rem_monic(r, &r.poly_mul(a, b), f)
}

pub fn powmod<R: Ring>(r: &R, a: &[R::Elem], mut e: u64, f: &[R::Elem]) -> Vec<R::Elem> {
    let mut acc = rem_monic(r, &[r.one()], f);
    let mut base = rem_monic(r, a, f);
    while e > 0 {
        if e & 1 == 1 {
            acc = mulmod(r, &acc, &base, f);
        }
        e >>= 1;
        if e > 0 {
            base = mulmod(r, &base, &base, f);
        }
    }
    acc
}

/// Substitutes `x -> c x`.
pub fn scale_var<R: Ring>(r: &R, a: &[R::Elem], c: u64) -> Vec<R::Elem> {
    let f = r.ctx();
    let mut pw = 1u64;
    let v = a
        .iter()
        .map(|x| {
            let t = r.scale(x, pw);
            pw = f.mul(pw, c);
            t
        })
        .collect();
    trimmed(r, v)
}

/// Inverses of `1..=n` in the field; entry 0 is unused and set to 0.
pub fn small_inverses(f: FieldCtx, n: usize) -> Result<Vec<u64>> {
    if (n as u64) >= f.p() {
        return Err(Error::FieldTooSmall);
    }
    let p = f.p();
    let mut inv = vec![0u64; n + 1];
    if n >= 1 {
        inv[1] = 1;
    }
    for i in 2..=n {
        // inv[i] = -(p / i) * inv[p mod i]
        let q = p / i as u64;
        let r = (p % i as u64) as usize;
        inv[i] = f.neg(f.mul(f.from_u64(q), inv[r]));
    }
    Ok(inv)
}

/// Inverse factorials `1/0!, ..., 1/n!`.
pub fn inverse_factorials(f: FieldCtx, n: usize) -> Result<Vec<u64>> {
    let inv = small_inverses(f, n)?;
    let mut out = vec![1u64; n + 1];
    for i in 1..=n {
        out[i] = f.mul(out[i - 1], inv[i]);
    }
    Ok(out)
}

/// Calls `visit(i, w_i, q)` for each node `i < N`, where `w_i q[j]` is the
/// contribution of the value at node `i` to the coefficient of `x^j` in the
/// interpolating polynomial, `j < count`. The cost is `O(N * count)`.
fn visit_low_weights(f: FieldCtx, n_nodes: usize, count: usize, mut visit: impl FnMut(usize, u64, &[u64])) -> Result<()> {
    if n_nodes == 0 {
        return Ok(());
    }
    if (n_nodes as u64 - 1) >= f.p() {
        return Err(Error::FieldTooSmall);
    }
    let count = count.min(n_nodes);
    let inv = small_inverses(f, n_nodes)?;
    // Truncated M(x) = prod_{j<N} (x - j), coefficients 0..=count.
    let mut m = vec![0u64; count + 1];
    m[0] = 1;
    for j in 0..n_nodes {
        let c = f.neg(f.from_u64(j as u64));
        for t in (0..=count).rev() {
            let lower = if t > 0 { m[t - 1] } else { 0 };
            m[t] = f.add(f.mul(m[t], c), lower);
        }
    }
    // Barycentric weights w_i = 1 / (i! (N-1-i)! (-1)^(N-1-i)).
    let mut inv_fact = vec![1u64; n_nodes];
    for i in 1..n_nodes {
        inv_fact[i] = f.mul(inv_fact[i - 1], inv[i]);
    }
    let mut row = vec![0u64; count];
    for i in 0..n_nodes {
        let mut w = f.mul(inv_fact[i], inv_fact[n_nodes - 1 - i]);
        if (n_nodes - 1 - i) % 2 == 1 {
            w = f.neg(w);
        }
        // Low coefficients of M(x) / (x - i).
        if i == 0 {
            row.copy_from_slice(&m[1..=count]);
        } else {
            let xi = inv[i];
            let mut q = 0u64; // q_{-1}
            for j in 0..count {
                q = f.mul(f.sub(q, m[j]), xi);
                row[j] = q;
            }
        }
        visit(i, w, &row);
    }
    Ok(())
}

/// Weights turning values at the nodes `0..N-1` into the lowest `count`
/// coefficients of the interpolating polynomial.
///
/// `table[j][i]` is the contribution of the value at node `i` to the
/// coefficient of `x^j`. The cost is `O(N * count)`, which is what makes
/// extracting a handful of low coefficients from a high-degree product cheap.
pub fn low_coeff_table(f: FieldCtx, n_nodes: usize, count: usize) -> Result<Vec<Vec<u64>>> {
    let rows = if n_nodes == 0 { count } else { count.min(n_nodes) };
    let mut table = vec![vec![0u64; n_nodes]; rows];
    visit_low_weights(f, n_nodes, count, |i, w, row| {
        for (col, &q) in table.iter_mut().zip(row) {
            col[i] = f.mul(w, q);
        }
    })?;
    Ok(table)
}

/// The lowest `count` coefficients of the polynomial of degree `< N` taking
/// `values[i]` at node `i`.
pub fn interpolate_low<R: Ring>(r: &R, values: &[R::Elem], count: usize) -> Result<Vec<R::Elem>> {
    r.interpolate_low(values, count)
}

/// [`interpolate_low`] through ring operations only.
pub fn interpolate_low_generic<R: Ring>(r: &R, values: &[R::Elem], count: usize) -> Result<Vec<R::Elem>> {
    let mut out = vec![r.zero(); count];
    visit_low_weights(r.ctx(), values.len(), count, |i, w, row| {
        let v = r.scale(&values[i], w);
        for (o, &q) in out.iter_mut().zip(row) {
            *o = r.add(o, &r.scale(&v, q));
        }
    })?;
    Ok(out)
}

/// [`interpolate_low`] for several columns of field values at once.
///
/// Same weights as [`visit_low_weights`], but the quotient recursion runs
/// over all nodes at once for each coefficient, so the nodes proceed
/// independently and the sums are reduced once.
pub fn interpolate_low_columns(f: FieldCtx, columns: &[&[u64]], count: usize) -> Result<Vec<Vec<u64>>> {
    let n_nodes = columns.first().map_or(0, |c| c.len());
    if f.p() >= 1 << 32 {
        return columns.iter().map(|c| interpolate_low_generic(&f, c, count)).collect();
    }
    let mut out = vec![vec![0u64; count]; columns.len()];
    if n_nodes == 0 {
        return Ok(out);
    }
    if (n_nodes as u64 - 1) >= f.p() {
        return Err(Error::FieldTooSmall);
    }
    let used = count.min(n_nodes);
    let inv = small_inverses(f, n_nodes)?;
    let mut m = vec![0u64; used + 1];
    m[0] = 1;
    for j in 0..n_nodes {
        let c = f.neg(f.from_u64(j as u64));
        for t in (0..=used).rev() {
            let lower = if t > 0 { m[t - 1] } else { 0 };
            m[t] = f.add(f.mul(m[t], c), lower);
        }
    }
    let mut inv_fact = vec![1u64; n_nodes];
    for i in 1..n_nodes {
        inv_fact[i] = f.mul(inv_fact[i - 1], inv[i]);
    }
    let w: Vec<u64> = (0..n_nodes)
        .map(|i| {
            let w = f.mul(inv_fact[i], inv_fact[n_nodes - 1 - i]);
            if (n_nodes - 1 - i) % 2 == 1 {
                f.neg(w)
            } else {
                w
            }
        })
        .collect();
    let vw: Vec<Vec<u64>> = columns.iter().map(|c| c.iter().zip(&w).map(|(&v, &w)| f.mul(v, w)).collect()).collect();
    // Node 0 divides by x exactly: its quotient coefficients are m[j + 1].
    let mut q = vec![0u64; n_nodes];
    for j in 0..used {
        let mj = m[j];
        for (qi, &xi) in q.iter_mut().zip(&inv).skip(1) {
            *qi = f.mul(f.sub(*qi, mj), xi);
        }
        q[0] = m[j + 1];
        for (o, col) in out.iter_mut().zip(&vw) {
            // Products of two reduced values are below 2^64, so the sum
            // fits in a u128.
            let s: u128 = q.iter().zip(col).map(|(&a, &b)| (a * b) as u128).sum();
            o[j] = f.reduce_u128(s);
        }
    }
    Ok(out)
}

/// Full interpolation at nodes `0..N-1` (trimmed).
pub fn interpolate<R: Ring>(r: &R, values: &[R::Elem]) -> Result<Vec<R::Elem>> {
    Ok(trimmed(r, interpolate_low(r, values, values.len())?))
}

/// Weights extracting the single coefficient of `x^k` from values at `0..N-1`.
pub fn coeff_weights(f: FieldCtx, n_nodes: usize, k: usize) -> Result<Vec<u64>> {
    if k >= n_nodes {
        return Ok(vec![0; n_nodes]);
    }
    let mut t = low_coeff_table(f, n_nodes, k + 1)?;
    Ok(t.pop().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f() -> FieldCtx {
        FieldCtx::new(1_000_003).unwrap()
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = f();
        let poly = [5u64, 0, 7, 11, 999_000];
        let vals: Vec<u64> = (0..9).map(|i| eval_scalar(&f, &poly, i)).collect();
        assert_eq!(interpolate(&f, &vals).unwrap(), poly.to_vec());
        assert_eq!(interpolate_low(&f, &vals, 2).unwrap(), vec![5, 0]);
        assert_eq!(coeff_weights(f, 9, 3).unwrap().iter().zip(&vals).fold(0, |a, (w, v)| f.add(a, f.mul(*w, *v))), 11);
    }

    #[test]
    fn derivative_and_remainder() {
        let f = f();
        // x^3 + 2x + 1
        let a = [1u64, 2, 0, 1];
        assert_eq!(derivative(&f, &a, 1), vec![2, 0, 3]);
        assert_eq!(derivative(&f, &a, 2), vec![0, 6]);
        assert_eq!(derivative(&f, &a, 4), Vec::<u64>::new());
        // x^3 mod (x^2 - 1) = x
        let g = [f.neg(1), 0, 1];
        assert_eq!(rem_monic(&f, &[0, 0, 0, 1], &g), vec![0, 1]);
        let (q, r) = divrem_monic(&f, &[0, 0, 0, 1], &g);
        assert_eq!((q, r), (vec![0, 1], vec![0, 1]));
        assert_eq!(powmod(&f, &[0, 1], 5, &g), vec![0, 1]);
    }

    #[test]
    fn small_inverse_table() {
        let f = f();
        let inv = small_inverses(f, 50).unwrap();
        for i in 1..=50u64 {
            assert_eq!(f.mul(i, inv[i as usize]), 1);
        }
        let tiny = FieldCtx::new(7).unwrap();
        assert_eq!(small_inverses(tiny, 7), Err(Error::FieldTooSmall));
    }
}
