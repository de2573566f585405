//! Residue rings: Z/ℓ, Z[ω]/ℓ, and small extensions F_{p^k}.

pub mod eisenstein;
pub mod ext;
pub mod field;
pub mod poly;
pub mod prime;

pub use eisenstein::{EisensteinResidue, EisensteinRing};
pub use ext::{build_ext_field, ExtElem, ExtField};
pub use field::{Field, InertField};
pub use poly::{factor, Factorization, PolyFp};
pub use prime::{classify_prime, is_prime, PrimeField, PrimeModulus, Splitting};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ResidueError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("{0} is not inert in Z[ω] (need ℓ ≡ 2 mod 3)")]
    NotInert(u32),
    #[error("{0} does not split in Z[ω] (need ℓ ≡ 1 mod 3)")]
    NotSplit(u32),
    #[error("operands live modulo different primes ({0} and {1})")]
    MixedModuli(u32, u32),
    #[error("element is a zero divisor")]
    ZeroDivisor,
    #[error("division by zero polynomial")]
    DivisionByZero,
    #[error("extension degree {0} unsupported (need 1..=3)")]
    UnsupportedDegree(u32),
    #[error("field with {0} elements is too large to tabulate")]
    FieldTooLarge(u64),
    #[error("coordinates do not describe a field element")]
    BadCoordinates,
    #[error("cannot factor a polynomial of degree {0}")]
    DegreeTooLarge(usize),
}
