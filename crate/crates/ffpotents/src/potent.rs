//! The sets C_n = {a : a^n = a} of n-potent elements.
//!
//! For n >= 2 the nonzero n-potents form the unique multiplicative subgroup
//! of order gcd(n-1, q-1), so C_n is built in O(|C_n|) from the generator
//! instead of scanning the whole field.  Debug builds cross-check against
//! the defining equation.

use crate::error::{Error, Result};
use crate::field::{Elem, FieldCtx};

#[derive(Debug, Clone)]
pub struct PotentSet {
    pub q: u32,
    pub n: u64,
    /// Sorted element indices.
    pub members: Vec<Elem>,
    /// Bitset mirror of length q for O(1) membership.
    bits: Vec<u64>,
}

impl PotentSet {
    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.bits[(a >> 6) as usize] >> (a & 63) & 1 == 1
    }
}

/// The exact set {a in GF(q) : a^n = a}.
pub fn n_potents(ctx: &FieldCtx, n: u64) -> Result<PotentSet> {
    if n < 2 {
        return Err(Error::InvalidExponent(n));
    }
    let q = ctx.q();
    let qm1 = q as u64 - 1;
    let d = gcd(n - 1, qm1);
    let h = ctx.pow(ctx.generator, qm1 / d);
    let mut members = Vec::with_capacity(d as usize + 1);
    members.push(0);
    let mut acc: Elem = 1;
    for _ in 0..d {
        members.push(acc);
        acc = ctx.mul(acc, h);
    }
    debug_assert_eq!(acc, 1);
    members.sort_unstable();
    let mut bits = vec![0u64; (q as usize).div_ceil(64)];
    for &a in &members {
        bits[(a >> 6) as usize] |= 1 << (a & 63);
    }
    let set = PotentSet { q, n, members, bits };
    debug_assert!(ctx.elements().all(|a| (ctx.pow(a, n) == a) == set.contains(a)));
    Ok(set)
}

/// Smallest exponent n' with C_{n'} = C_n, namely gcd(n-1, q-1) + 1.
///
/// Note this is gcd(n-1, q-1) + 1, not gcd(n, q-1): the nonzero n-potents
/// are the solutions of a^(n-1) = 1, so only n-1 interacts with q-1.
pub fn reduce_exponent(q: u64, n: u64) -> u64 {
    gcd(n - 1, q - 1) + 1
}

/// |C_n| = gcd(n-1, q-1) + 1 without constructing the set.
pub fn potent_cardinality(q: u64, n: u64) -> u64 {
    gcd(n - 1, q - 1) + 1
}

pub fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
