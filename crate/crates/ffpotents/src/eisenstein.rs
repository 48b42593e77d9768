//! Exact arithmetic in Z[w], w a primitive complex cube root of unity
//! (w^2 = -1 - w).  Cubic character values and Jacobi sums live here.

use serde::{Deserialize, Serialize};
use std::ops::{Add, Mul, Neg, Sub};

/// a + b*w with integer a, b.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Eisenstein {
    pub a: i64,
    pub b: i64,
}

impl Eisenstein {
    pub const ZERO: Eisenstein = Eisenstein { a: 0, b: 0 };
    pub const ONE: Eisenstein = Eisenstein { a: 1, b: 0 };
    pub const OMEGA: Eisenstein = Eisenstein { a: 0, b: 1 };

    pub fn new(a: i64, b: i64) -> Self {
        Eisenstein { a, b }
    }

    pub fn from_int(a: i64) -> Self {
        Eisenstein { a, b: 0 }
    }

    /// w^k for k mod 3 in {0, 1, 2}.
    pub fn omega_pow(k: u64) -> Self {
        match k % 3 {
            0 => Self::ONE,
            1 => Self::OMEGA,
            _ => Eisenstein { a: -1, b: -1 }, // w^2 = -1 - w
        }
    }

    /// Field norm a^2 - ab + b^2 = |a + bw|^2.
    pub fn norm(self) -> i64 {
        self.a * self.a - self.a * self.b + self.b * self.b
    }

    /// Complex conjugation, i.e. w <-> w^2.
    pub fn conj(self) -> Self {
        Eisenstein { a: self.a - self.b, b: -self.b }
    }

    pub fn is_rational(self) -> bool {
        self.b == 0
    }

    pub fn scale(self, k: i64) -> Self {
        Eisenstein { a: self.a * k, b: self.b * k }
    }
}

impl Add for Eisenstein {
    type Output = Eisenstein;
    fn add(self, rhs: Eisenstein) -> Eisenstein {
        Eisenstein { a: self.a + rhs.a, b: self.b + rhs.b }
    }
}

impl Sub for Eisenstein {
    type Output = Eisenstein;
    fn sub(self, rhs: Eisenstein) -> Eisenstein {
        Eisenstein { a: self.a - rhs.a, b: self.b - rhs.b }
    }
}

impl Neg for Eisenstein {
    type Output = Eisenstein;
    fn neg(self) -> Eisenstein {
        Eisenstein { a: -self.a, b: -self.b }
    }
}

impl Mul for Eisenstein {
    type Output = Eisenstein;
    // (a+bw)(c+dw) = (ac - bd) + (ad + bc - bd)w, from w^2 = -1 - w
    fn mul(self, rhs: Eisenstein) -> Eisenstein {
        Eisenstein {
            a: self.a * rhs.a - self.b * rhs.b,
            b: self.a * rhs.b + self.b * rhs.a - self.b * rhs.b,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn omega_basics() {
        let w = Eisenstein::OMEGA;
        assert_eq!(w * w, Eisenstein::omega_pow(2));
        assert_eq!(w * w * w, Eisenstein::ONE);
        assert_eq!(Eisenstein::ONE + w + w * w, Eisenstein::ZERO);
        assert_eq!(w.norm(), 1);
        assert_eq!(w.conj(), w * w);
    }

    proptest! {
        #[test]
        fn norm_is_multiplicative(a in -1000i64..1000, b in -1000i64..1000,
                                  c in -1000i64..1000, d in -1000i64..1000) {
            let x = Eisenstein::new(a, b);
            let y = Eisenstein::new(c, d);
            prop_assert_eq!((x * y).norm(), x.norm() * y.norm());
        }

        #[test]
        fn conj_is_a_ring_map(a in -1000i64..1000, b in -1000i64..1000,
                              c in -1000i64..1000, d in -1000i64..1000) {
            let x = Eisenstein::new(a, b);
            let y = Eisenstein::new(c, d);
            prop_assert_eq!((x * y).conj(), x.conj() * y.conj());
            prop_assert_eq!((x + y).conj(), x.conj() + y.conj());
            prop_assert_eq!(x.norm(), (x * x.conj()).a);
            prop_assert!((x * x.conj()).is_rational());
        }

        #[test]
        fn norm_positive_definite(a in -1000i64..1000, b in -1000i64..1000) {
            let x = Eisenstein::new(a, b);
            prop_assert!(x.norm() >= 0);
            prop_assert_eq!(x.norm() == 0, x == Eisenstein::ZERO);
        }
    }
}
