//! Dense univariate polynomials over a FieldCtx, constant term first.
//!
//! Just enough machinery for the Weil-bound checks: evaluation, gcd,
//! derivative, and squarefree decomposition in characteristic p.

use crate::field::{Elem, FieldCtx};

pub type Poly = Vec<Elem>;

pub fn trim(f: &mut Poly) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

/// Degree, or None for the zero polynomial.
pub fn deg(f: &[Elem]) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

pub fn eval(ctx: &FieldCtx, f: &[Elem], x: Elem) -> Elem {
    let mut acc: Elem = 0;
    for &c in f.iter().rev() {
        acc = ctx.add(ctx.mul(acc, x), c);
    }
    acc
}

pub fn mul(ctx: &FieldCtx, a: &[Elem], b: &[Elem]) -> Poly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0 as Elem; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = ctx.add(out[i + j], ctx.mul(x, y));
        }
    }
    trim(&mut out);
    out
}

pub fn divrem(ctx: &FieldCtx, num: &[Elem], den: &[Elem]) -> (Poly, Poly) {
    let dd = deg(den).expect("division by zero polynomial");
    let mut r = num.to_vec();
    trim(&mut r);
    if deg(&r).is_none_or(|dn| dn < dd) {
        return (Vec::new(), r);
    }
    let lead_inv = ctx.inv(den[dd]).expect("nonzero leading coefficient");
    let mut q = vec![0 as Elem; r.len() - dd];
    while deg(&r).is_some_and(|dr| dr >= dd) {
        let dr = r.len() - 1;
        let c = ctx.mul(r[dr], lead_inv);
        q[dr - dd] = c;
        for j in 0..=dd {
            r[dr - dd + j] = ctx.sub(r[dr - dd + j], ctx.mul(c, den[j]));
        }
        trim(&mut r);
    }
    trim(&mut q);
    (q, r)
}

/// Monic gcd.
pub fn gcd(ctx: &FieldCtx, a: &[Elem], b: &[Elem]) -> Poly {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let (_, r) = divrem(ctx, &a, &b);
        a = b;
        b = r;
    }
    monic(ctx, &a)
}

pub fn monic(ctx: &FieldCtx, f: &[Elem]) -> Poly {
    let mut f = f.to_vec();
    trim(&mut f);
    if let Some(&lead) = f.last() {
        if lead != 1 {
            let inv = ctx.inv(lead).expect("nonzero lead");
            for c in f.iter_mut() {
                *c = ctx.mul(*c, inv);
            }
        }
    }
    f
}

pub fn derivative(ctx: &FieldCtx, f: &[Elem]) -> Poly {
    if f.len() <= 1 {
        return Vec::new();
    }
    let mut out = Vec::with_capacity(f.len() - 1);
    for (i, &c) in f.iter().enumerate().skip(1) {
        out.push(ctx.mul(ctx.scalar(i as u64), c));
    }
    trim(&mut out);
    out
}

/// For f(x) = g(x^p), returns g; coefficients get their unique p-th root
/// c^(q/p).  Caller guarantees only exponents divisible by p occur.
pub fn pth_root(ctx: &FieldCtx, f: &[Elem]) -> Poly {
    let p = ctx.p() as usize;
    let root_exp = ctx.q() as u64 / ctx.p() as u64;
    let mut out = Vec::with_capacity(f.len() / p + 1);
    for (i, &c) in f.iter().enumerate() {
        if i % p == 0 {
            out.push(ctx.pow(c, root_exp));
        } else {
            debug_assert_eq!(c, 0, "pth_root needs exponents divisible by p");
        }
    }
    trim(&mut out);
    out
}

/// Squarefree decomposition in characteristic p: returns pairwise coprime
/// squarefree monic parts with their multiplicities, so that
/// f = c * prod part_i^mult_i.
pub fn squarefree_decomposition(ctx: &FieldCtx, f: &[Elem]) -> Vec<(Poly, u32)> {
    let f = monic(ctx, f);
    let mut out = Vec::new();
    sqf_inner(ctx, &f, 1, &mut out);
    out
}

fn sqf_inner(ctx: &FieldCtx, f: &[Elem], mult_scale: u32, out: &mut Vec<(Poly, u32)>) {
    if deg(f).is_none_or(|d| d == 0) {
        return;
    }
    let fp = derivative(ctx, f);
    if fp.is_empty() {
        // f is a p-th power
        let g = pth_root(ctx, f);
        sqf_inner(ctx, &g, mult_scale * ctx.p(), out);
        return;
    }
    let mut c = gcd(ctx, f, &fp);
    let (mut w, r) = divrem(ctx, f, &c);
    debug_assert!(r.is_empty());
    let mut i = 1u32;
    while deg(&w).is_some_and(|d| d >= 1) {
        let y = gcd(ctx, &w, &c);
        let (z, r) = divrem(ctx, &w, &y);
        debug_assert!(r.is_empty());
        if deg(&z).is_some_and(|d| d >= 1) {
            out.push((z, i * mult_scale));
        }
        let (c2, r) = divrem(ctx, &c, &y);
        debug_assert!(r.is_empty());
        c = c2;
        w = y;
        i += 1;
    }
    // whatever remains of c has all multiplicities divisible by p
    if deg(&c).is_some_and(|d| d >= 1) {
        let g = pth_root(ctx, &c);
        sqf_inner(ctx, &g, mult_scale * ctx.p(), out);
    }
}
