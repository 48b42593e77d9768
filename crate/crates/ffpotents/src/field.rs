//! A concrete model of GF(p^v) with exact arithmetic.
//!
//! Elements are indices in `[0, q)`: the index is the base-p encoding of the
//! coefficient vector of the residue polynomial (constant digit least
//! significant).  The modulus is the lexicographically smallest monic
//! irreducible polynomial of degree v over Z/pZ, so indexing is reproducible
//! across runs.  Multiplication goes through log/antilog tables when q is
//! small enough for them to pay off.

use crate::error::{Error, Result};

pub type Elem = u32;

/// Largest q for which full log/antilog tables are precomputed.
const TABLE_LIMIT: u64 = 1 << 16;

/// Largest supported field order.
const ORDER_LIMIT: u64 = 1 << 31;

#[derive(Debug, Clone)]
pub struct FieldSpec {
    pub p: u32,
    pub v: u32,
    pub q: u32,
    /// Monic modulus over Z/pZ, constant term first, length v+1.
    /// For v = 1 this is the formal polynomial x.
    pub modulus: Vec<u32>,
}

#[derive(Debug)]
pub struct FieldCtx {
    pub spec: FieldSpec,
    pub generator: Elem,
    /// Discrete log of each nonzero index; empty when q > TABLE_LIMIT.
    log: Vec<u32>,
    /// generator^i for i in [0, q-1); empty when q > TABLE_LIMIT.
    exp: Vec<u32>,
    /// Distinct prime factors of q-1.
    qm1_factors: Vec<u64>,
}

/// Builds GF(p^v) with the deterministic modulus and generator.
pub fn build_field(p: u32, v: u32) -> Result<FieldCtx> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidPrime(p as u64));
    }
    if v < 1 {
        return Err(Error::InvalidOrder(0));
    }
    let q = checked_pow(p as u64, v).ok_or(Error::LimitExceeded(u64::MAX))?;
    if q > ORDER_LIMIT {
        return Err(Error::LimitExceeded(q));
    }
    let modulus = if v == 1 {
        vec![0, 1]
    } else {
        smallest_irreducible(p, v)
    };
    finish_build(FieldSpec { p, v, q: q as u32, modulus })
}

/// Builds GF(p^v) with a caller-supplied modulus (validated).  All computed
/// answers are model-independent; this exists to test exactly that.
pub fn build_field_with_modulus(p: u32, v: u32, modulus: Vec<u32>) -> Result<FieldCtx> {
    if !is_prime(p as u64) {
        return Err(Error::InvalidPrime(p as u64));
    }
    let q = checked_pow(p as u64, v).ok_or(Error::LimitExceeded(u64::MAX))?;
    if q > ORDER_LIMIT {
        return Err(Error::LimitExceeded(q));
    }
    let ok = if v == 1 {
        modulus == [0, 1]
    } else {
        modulus.len() == v as usize + 1
            && modulus[v as usize] == 1
            && modulus.iter().all(|&c| c < p)
            && is_irreducible_mod_p(&modulus.iter().map(|&c| c as u64).collect::<Vec<_>>(), p as u64)
    };
    if !ok {
        return Err(Error::InvalidModulus);
    }
    finish_build(FieldSpec { p, v, q: q as u32, modulus })
}

fn finish_build(spec: FieldSpec) -> Result<FieldCtx> {
    let q = spec.q as u64;
    let qm1_factors = distinct_prime_factors(q - 1);
    let mut ctx = FieldCtx { spec, generator: 1, log: Vec::new(), exp: Vec::new(), qm1_factors };
    ctx.generator = ctx.find_generator();
    if q <= TABLE_LIMIT {
        let mut exp = vec![0u32; (q - 1) as usize];
        let mut log = vec![u32::MAX; q as usize];
        let mut acc: Elem = 1;
        for (i, slot) in exp.iter_mut().enumerate() {
            *slot = acc;
            log[acc as usize] = i as u32;
            acc = ctx.mul_raw(acc, ctx.generator);
        }
        debug_assert_eq!(acc, 1);
        ctx.exp = exp;
        ctx.log = log;
    }
    Ok(ctx)
}

impl FieldCtx {
    pub fn p(&self) -> u32 {
        self.spec.p
    }

    pub fn v(&self) -> u32 {
        self.spec.v
    }

    pub fn q(&self) -> u32 {
        self.spec.q
    }

    pub fn elements(&self) -> std::ops::Range<Elem> {
        0..self.spec.q
    }

    /// Discrete log base `generator`, if tables are present and a != 0.
    pub fn log(&self, a: Elem) -> Option<u32> {
        if a == 0 || self.log.is_empty() {
            None
        } else {
            Some(self.log[a as usize])
        }
    }

    /// Embeds the integer k as the constant polynomial k mod p.
    pub fn scalar(&self, k: u64) -> Elem {
        (k % self.spec.p as u64) as Elem
    }

    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        let p = self.spec.p as u64;
        if self.spec.v == 1 {
            return ((a as u64 + b as u64) % p) as Elem;
        }
        let (mut a, mut b) = (a as u64, b as u64);
        let mut out = 0u64;
        let mut place = 1u64;
        while a != 0 || b != 0 {
            out += (a % p + b % p) % p * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out as Elem
    }

    pub fn neg(&self, a: Elem) -> Elem {
        let p = self.spec.p as u64;
        if self.spec.v == 1 {
            return if a == 0 { 0 } else { (p - a as u64) as Elem };
        }
        let mut a = a as u64;
        let mut out = 0u64;
        let mut place = 1u64;
        while a != 0 {
            let d = a % p;
            if d != 0 {
                out += (p - d) * place;
            }
            a /= p;
            place *= p;
        }
        out as Elem
    }

    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a == 0 || b == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let qm1 = self.spec.q as u64 - 1;
            let s = (self.log[a as usize] as u64 + self.log[b as usize] as u64) % qm1;
            return self.exp[s as usize];
        }
        self.mul_raw(a, b)
    }

    /// Polynomial multiplication modulo (modulus, p); used to bootstrap the
    /// tables and as the fallback for q > TABLE_LIMIT.
    fn mul_raw(&self, a: Elem, b: Elem) -> Elem {
        let p = self.spec.p as u64;
        if self.spec.v == 1 {
            return (a as u64 * b as u64 % p) as Elem;
        }
        let v = self.spec.v as usize;
        let da = digits(a as u64, p, v);
        let db = digits(b as u64, p, v);
        let mut conv = vec![0u64; 2 * v - 1];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                conv[i + j] = (conv[i + j] + x * y) % p;
            }
        }
        // reduce x^i for i >= v using x^v = -sum m_j x^j
        for i in (v..2 * v - 1).rev() {
            let c = conv[i];
            if c == 0 {
                continue;
            }
            conv[i] = 0;
            for j in 0..v {
                let m = self.spec.modulus[j] as u64;
                if m != 0 {
                    conv[i - v + j] = (conv[i - v + j] + c * (p - m)) % p;
                }
            }
        }
        recompose(&conv[..v], p) as Elem
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        if !self.exp.is_empty() {
            let qm1 = self.spec.q as u64 - 1;
            let l = self.log[a as usize] as u64;
            return Ok(self.exp[((qm1 - l) % qm1) as usize]);
        }
        Ok(self.pow(a, self.spec.q as u64 - 2))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return 1;
        }
        if a == 0 {
            return 0;
        }
        if !self.exp.is_empty() {
            let qm1 = self.spec.q as u64 - 1;
            let l = self.log[a as usize] as u64;
            return self.exp[(l * (e % qm1) % qm1) as usize];
        }
        let mut base = a;
        let mut e = e;
        let mut acc: Elem = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }

    /// Smallest e >= 1 with a^e = 1.
    pub fn multiplicative_order(&self, a: Elem) -> Result<u64> {
        if a == 0 {
            return Err(Error::DivisionByZero);
        }
        let mut e = self.spec.q as u64 - 1;
        for &r in &self.qm1_factors {
            while e.is_multiple_of(r) && self.pow(a, e / r) == 1 {
                e /= r;
            }
        }
        Ok(e)
    }

    /// The three cube roots of unity (1, z, y = z^2), when 3 | q-1.
    pub fn cube_roots_of_unity(&self) -> Option<(Elem, Elem, Elem)> {
        let qm1 = self.spec.q as u64 - 1;
        if !qm1.is_multiple_of(3) {
            return None;
        }
        let z = self.pow(self.generator, qm1 / 3);
        let y = self.mul(z, z);
        debug_assert_eq!(y, self.sub(self.neg(1), z));
        debug_assert_eq!(self.mul(z, y), 1);
        Some((1, z, y))
    }

    /// Nonzero element of smallest index with multiplicative order q-1.
    fn find_generator(&self) -> Elem {
        let qm1 = self.spec.q as u64 - 1;
        'cand: for a in 1..self.spec.q {
            for &r in &self.qm1_factors {
                if self.pow_raw(a, qm1 / r) == 1 {
                    continue 'cand;
                }
            }
            debug_assert_eq!(self.pow_raw(a, qm1), 1);
            return a;
        }
        unreachable!("every finite field has a primitive root");
    }

    // table-free pow, usable before the tables exist
    fn pow_raw(&self, a: Elem, mut e: u64) -> Elem {
        let mut base = a;
        let mut acc: Elem = 1;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_raw(acc, base);
            }
            base = self.mul_raw(base, base);
            e >>= 1;
        }
        acc
    }
}

fn digits(mut x: u64, p: u64, v: usize) -> Vec<u64> {
    let mut out = vec![0u64; v];
    for d in out.iter_mut() {
        *d = x % p;
        x /= p;
    }
    out
}

fn recompose(digits: &[u64], p: u64) -> u64 {
    let mut out = 0u64;
    for &d in digits.iter().rev() {
        out = out * p + d;
    }
    out
}

fn checked_pow(p: u64, v: u32) -> Option<u64> {
    let mut out = 1u64;
    for _ in 0..v {
        out = out.checked_mul(p)?;
        if out > ORDER_LIMIT {
            return None;
        }
    }
    Some(out)
}

/// Deterministic Miller-Rabin, valid for all u64.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d.is_multiple_of(2) {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &[2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = mod_pow(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mod_mul(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mod_mul(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn mod_pow(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mod_mul(acc, a, m);
        }
        a = mod_mul(a, a, m);
        e >>= 1;
    }
    acc
}

/// Distinct prime factors by trial division.
pub fn distinct_prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Decomposes q as p^v for prime p, if q is a prime power.
pub fn prime_power_decompose(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let f = distinct_prime_factors(q);
    if f.len() != 1 {
        return None;
    }
    let p = f[0];
    let mut v = 0u32;
    let mut m = q;
    while m > 1 {
        m /= p;
        v += 1;
    }
    Some((p, v))
}

// ---------------------------------------------------------------------------
// polynomials over Z/pZ, used only for the modulus search
// ---------------------------------------------------------------------------

fn zp_trim(f: &mut Vec<u64>) {
    while f.last() == Some(&0) {
        f.pop();
    }
}

fn zp_deg(f: &[u64]) -> Option<usize> {
    if f.is_empty() {
        None
    } else {
        Some(f.len() - 1)
    }
}

fn zp_rem(a: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    let mut r = a.to_vec();
    zp_trim(&mut r);
    let df = zp_deg(f).expect("nonzero modulus");
    let lead_inv = mod_pow(f[df], p - 2, p); // f monic in practice
    while zp_deg(&r).is_some_and(|dr| dr >= df) {
        let dr = r.len() - 1;
        let c = mod_mul(r[dr], lead_inv, p);
        for (j, &fj) in f.iter().enumerate().take(df + 1) {
            let idx = dr - df + j;
            r[idx] = (r[idx] + p - mod_mul(c, fj, p)) % p;
        }
        zp_trim(&mut r);
    }
    r
}

fn zp_mulmod(a: &[u64], b: &[u64], f: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut conv = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            conv[i + j] = (conv[i + j] + x * y) % p;
        }
    }
    zp_rem(&conv, f, p)
}

fn zp_powmod(base: &[u64], mut e: u64, f: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = zp_rem(base, f, p);
    while e > 0 {
        if e & 1 == 1 {
            acc = zp_mulmod(&acc, &b, f, p);
        }
        b = zp_mulmod(&b, &b, f, p);
        e >>= 1;
    }
    acc
}

fn zp_gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    zp_trim(&mut a);
    zp_trim(&mut b);
    while !b.is_empty() {
        let r = zp_rem(&a, &b, p);
        a = b;
        b = r;
    }
    a
}

fn zp_sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let n = a.len().max(b.len());
    let mut out = vec![0u64; n];
    for (i, o) in out.iter_mut().enumerate() {
        let x = a.get(i).copied().unwrap_or(0);
        let y = b.get(i).copied().unwrap_or(0);
        *o = (x + p - y) % p;
    }
    zp_trim(&mut out);
    out
}

/// Irreducibility over Z/pZ by the gcd-with-x^(p^i)-x method: a monic f of
/// degree v is irreducible iff it has no irreducible factor of degree <= v/2.
pub fn is_irreducible_mod_p(f: &[u64], p: u64) -> bool {
    let v = match zp_deg(f) {
        Some(v) if v >= 1 => v,
        _ => return false,
    };
    if v == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut r = zp_rem(&x, f, p);
    for _ in 1..=v / 2 {
        r = zp_powmod(&r, p, f, p);
        let g = zp_gcd(&zp_sub(&r, &x, p), f, p);
        if zp_deg(&g).is_some_and(|d| d >= 1) {
            return false;
        }
    }
    true
}

/// Lexicographically smallest monic irreducible of degree v over Z/pZ
/// (coefficients compared constant-term-last).
fn smallest_irreducible(p: u32, v: u32) -> Vec<u32> {
    let p64 = p as u64;
    let count = checked_pow(p64, v).expect("bounded by ORDER_LIMIT");
    for t in 0..count {
        let mut f: Vec<u64> = digits(t, p64, v as usize);
        f.push(1);
        if is_irreducible_mod_p(&f, p64) {
            return f.iter().map(|&c| c as u32).collect();
        }
    }
    unreachable!("irreducible polynomials of every degree exist");
}

/// Renders a modulus as a human-readable polynomial in x.
pub fn modulus_to_string(modulus: &[u32]) -> String {
    let mut parts = Vec::new();
    for (i, &c) in modulus.iter().enumerate().rev() {
        if c == 0 {
            continue;
        }
        let part = match (i, c) {
            (0, c) => format!("{c}"),
            (1, 1) => "x".to_string(),
            (1, c) => format!("{c}x"),
            (i, 1) => format!("x^{i}"),
            (i, c) => format!("{c}x^{i}"),
        };
        parts.push(part);
    }
    if parts.is_empty() {
        "0".to_string()
    } else {
        parts.join("+")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn prime_powers_upto(limit: u32) -> Vec<(u32, u32)> {
        let mut out = Vec::new();
        for p in 2..=limit {
            if !is_prime(p as u64) {
                continue;
            }
            let mut q = p as u64;
            let mut v = 1u32;
            while q <= limit as u64 {
                out.push((p, v));
                q *= p as u64;
                v += 1;
            }
        }
        out
    }

    #[test]
    fn build_examples() {
        let f7 = build_field(7, 1).unwrap();
        assert_eq!(f7.q(), 7);
        assert_eq!(f7.generator, 3); // 2 has order 3 mod 7, 3 has order 6

        let f4 = build_field(2, 2).unwrap();
        assert_eq!(f4.spec.modulus, vec![1, 1, 1]); // x^2+x+1
    }

    #[test]
    fn build_rejects_composite_p() {
        assert!(matches!(build_field(4, 1), Err(Error::InvalidPrime(4))));
        assert!(matches!(build_field(1, 1), Err(Error::InvalidPrime(1))));
    }

    #[test]
    fn build_rejects_oversized_q() {
        assert!(matches!(build_field(2, 40), Err(Error::LimitExceeded(_))));
    }

    #[test]
    fn arithmetic_examples() {
        let f7 = build_field(7, 1).unwrap();
        assert_eq!(f7.mul(3, 5), 1);
        for a in f7.elements() {
            assert_eq!(f7.pow(a, 7), a);
        }
        let f4 = build_field(2, 2).unwrap();
        assert_eq!(f4.mul(2, 2), 3); // x * x = x + 1
        assert_eq!(f4.inv(0), Err(Error::DivisionByZero));
    }

    #[test]
    fn order_examples() {
        let f7 = build_field(7, 1).unwrap();
        assert_eq!(f7.multiplicative_order(6).unwrap(), 2);
        assert_eq!(f7.multiplicative_order(3).unwrap(), 6);
        assert_eq!(f7.multiplicative_order(0), Err(Error::DivisionByZero));
        let f13 = build_field(13, 1).unwrap();
        assert_eq!(f13.multiplicative_order(3).unwrap(), 3);
    }

    #[test]
    fn cube_roots_examples() {
        let f7 = build_field(7, 1).unwrap();
        let (one, z, y) = f7.cube_roots_of_unity().unwrap();
        assert_eq!(one, 1);
        assert_eq!([z.min(y), z.max(y)], [2, 4]);
        let f13 = build_field(13, 1).unwrap();
        let (_, z, y) = f13.cube_roots_of_unity().unwrap();
        assert_eq!([z.min(y), z.max(y)], [3, 9]);
        assert!(build_field(5, 1).unwrap().cube_roots_of_unity().is_none());
    }

    #[test]
    fn cube_roots_exist_iff_3_divides_qm1() {
        for (p, v) in prime_powers_upto(1000) {
            let ctx = build_field(p, v).unwrap();
            let present = ctx.cube_roots_of_unity().is_some();
            assert_eq!(present, (ctx.q() - 1).is_multiple_of(3), "q={}", ctx.q());
            if let Some((_, z, y)) = ctx.cube_roots_of_unity() {
                assert_eq!(y, ctx.sub(ctx.neg(1), z));
                assert_eq!(ctx.mul(z, y), 1);
            }
        }
    }

    #[test]
    fn field_axioms_exhaustive_small() {
        for (p, v) in prime_powers_upto(64) {
            let f = build_field(p, v).unwrap();
            let q = f.q();
            for a in 0..q {
                assert_eq!(f.add(a, 0), a);
                assert_eq!(f.mul(a, 1), a);
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for b in 0..q {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    for c in 0..q {
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn frobenius_fixed_points() {
        for (p, v) in prime_powers_upto(1000) {
            let f = build_field(p, v).unwrap();
            for a in f.elements() {
                assert_eq!(f.pow(a, f.q() as u64), a, "q={}", f.q());
            }
        }
    }

    #[test]
    fn log_antilog_bijection() {
        for (p, v) in [(2, 6), (3, 4), (101, 1), (5, 3)] {
            let f = build_field(p, v).unwrap();
            let mut seen = vec![false; f.q() as usize];
            for a in 1..f.q() {
                let l = f.log(a).unwrap();
                assert!(!seen[l as usize]);
                seen[l as usize] = true;
                assert_eq!(f.pow(f.generator, l as u64), a);
            }
        }
    }

    #[test]
    fn generator_is_primitive() {
        for (p, v) in prime_powers_upto(300) {
            let f = build_field(p, v).unwrap();
            assert_eq!(f.multiplicative_order(f.generator).unwrap(), f.q() as u64 - 1);
        }
    }

    #[test]
    fn custom_modulus_validation() {
        // x^2+1 is reducible over GF(5)
        assert!(matches!(
            build_field_with_modulus(5, 2, vec![1, 0, 1]),
            Err(Error::InvalidModulus)
        ));
        let alt = build_field_with_modulus(5, 2, vec![3, 0, 1]).unwrap();
        assert_eq!(alt.q(), 25);
    }

    #[test]
    fn large_field_without_tables() {
        // q = 131101 > 2^16 exercises the table-free path
        let f = build_field(131101, 1).unwrap();
        assert!(f.log(5).is_none());
        let a = 12345u32;
        assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
        assert_eq!(f.pow(a, f.q() as u64), a);
    }
}
