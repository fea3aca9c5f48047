//! Exact graded-commutative algebra over `F_p`.
//!
//! Elements live in a polynomial ⊗ exterior algebra on declared generators.
//! Products carry Koszul signs; ideal-theoretic work (Gröbner bases, Hilbert
//! series, elimination) runs in the associated commutative quotient where odd
//! generators square to zero.

mod algebra;
pub(crate) mod gb;
mod hilbert;
pub mod linalg;
mod parse;
mod ring;

pub(crate) use algebra::shift_element;
pub use algebra::{GroebnerBasis, Ideal, PresentedAlgebra, DEFAULT_NILPOTENCY_CAP};
pub use hilbert::HilbertSeries;
pub use parse::parse_element;
pub use ring::{Element, Generator, GradedRing, Monomial};

use crate::error::{Error, Result};
use serde::Serialize;

/// A prime number, the characteristic of the ground field.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Prime(u32);

impl Prime {
    pub fn new(p: u32) -> Result<Self> {
        if p < 2 || (2..p).take_while(|d| d * d <= p).any(|d| p.is_multiple_of(d)) {
            return Err(Error::NotPrime(p));
        }
        Ok(Prime(p))
    }

    pub fn get(self) -> u32 {
        self.0
    }

    pub fn is_two(self) -> bool {
        self.0 == 2
    }

    pub fn reduce(self, a: i64) -> u32 {
        a.rem_euclid(self.0 as i64) as u32
    }

    pub fn add(self, a: u32, b: u32) -> u32 {
        (a + b) % self.0
    }

    pub fn sub(self, a: u32, b: u32) -> u32 {
        (a + self.0 - b) % self.0
    }

    pub fn neg(self, a: u32) -> u32 {
        (self.0 - a) % self.0
    }

    pub fn mul(self, a: u32, b: u32) -> u32 {
        ((a as u64 * b as u64) % self.0 as u64) as u32
    }

    pub fn pow(self, a: u32, mut e: u64) -> u32 {
        let mut base = a % self.0;
        let mut acc = 1 % self.0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse; `a` must be nonzero.
    pub fn inv(self, a: u32) -> u32 {
        debug_assert!(!a.is_multiple_of(self.0));
        self.pow(a, self.0 as u64 - 2)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primes_are_validated() {
        assert!(Prime::new(2).is_ok());
        assert!(Prime::new(3).is_ok());
        assert!(Prime::new(97).is_ok());
        assert_eq!(Prime::new(1), Err(Error::NotPrime(1)));
        assert_eq!(Prime::new(9), Err(Error::NotPrime(9)));
    }

    #[test]
    fn field_inverse() {
        let p = Prime::new(7).unwrap();
        for a in 1..7 {
            assert_eq!(p.mul(a, p.inv(a)), 1);
        }
    }
}
