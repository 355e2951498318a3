use alloc::string::String;
use core::fmt;

/// Which configured limit was hit.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Cap {
    Closure,
    Subgroups,
    Automorphisms,
    Saturation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    InvalidPermutation,
    DegreeMismatch { expected: usize, found: usize },
    CapExceeded { cap: Cap, limit: usize },
    NotASubgroup,
    NotNormal,
    NotStronglyClosed,
    NotInjective,
    NotIsomorphism,
    NotHomomorphism,
    NotPGroup { order: usize, prime: u32 },
    InvalidData(String),
    UnequalOrders { left: usize, right: usize },
    Parse(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidPermutation => f.write_str("image list is not a permutation"),
            Error::DegreeMismatch { expected, found } => {
                write!(f, "degree mismatch: expected {}, found {}", expected, found)
            }
            Error::CapExceeded { cap, limit } => {
                write!(f, "{:?} cap of {} exceeded", cap, limit)
            }
            Error::NotASubgroup => f.write_str("element set is not a subgroup"),
            Error::NotNormal => f.write_str("subgroup is not normal"),
            Error::NotStronglyClosed => f.write_str("subgroup is not strongly closed"),
            Error::NotInjective => f.write_str("map is not injective"),
            Error::NotIsomorphism => f.write_str("map is not a group isomorphism"),
            Error::NotHomomorphism => f.write_str("map is not a group homomorphism"),
            Error::NotPGroup { order, prime } => {
                write!(f, "group of order {} is not a {}-group", order, prime)
            }
            Error::InvalidData(msg) => write!(f, "invalid Goursat data: {}", msg),
            Error::UnequalOrders { left, right } => {
                write!(f, "p-groups of unequal order {} and {}", left, right)
            }
            Error::Parse(msg) => write!(f, "parse error: {}", msg),
        }
    }
}

impl core::error::Error for Error {}
