//! Exact rational vectors.
//!
//! A [`RationalVector`] is a point of `Q^d`; `num_rational` keeps every entry
//! in lowest terms with a positive denominator, which is exactly the storage
//! invariant we need.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// An exponent vector in `Q^d`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RationalVector {
    pub coords: Vec<BigRational>,
}

impl RationalVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RationalVector { coords }
    }

    pub fn zero(dim: usize) -> Self {
        RationalVector {
            coords: vec![BigRational::zero(); dim],
        }
    }

    /// The `i`-th unit vector of `Q^d`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zero(dim);
        v.coords[i] = BigRational::one();
        v
    }

    /// Convenience constructor from `(numer, denom)` pairs.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        RationalVector {
            coords: pairs
                .iter()
                .map(|&(n, d)| BigRational::new(BigInt::from(n), BigInt::from(d)))
                .collect(),
        }
    }

    /// Parse from a slice of `"p/q"` strings.
    pub fn parse(strs: &[&str]) -> Option<Self> {
        let mut coords = Vec::with_capacity(strs.len());
        for s in strs {
            coords.push(parse_rational(s)?);
        }
        Some(RationalVector { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|x| x.is_zero())
    }

    pub fn is_nonnegative(&self) -> bool {
        self.coords.iter().all(|x| !x.is_negative())
    }

    pub fn is_integral(&self) -> bool {
        self.coords.iter().all(|x| x.is_integer())
    }

    pub fn add(&self, other: &Self) -> Self {
        RationalVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        RationalVector {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, k: &BigRational) -> Self {
        RationalVector {
            coords: self.coords.iter().map(|a| a * k).collect(),
        }
    }

    pub fn scale_int(&self, k: &BigInt) -> Self {
        self.scale(&BigRational::from(k.clone()))
    }

    /// Coordinatewise `<=`.
    pub fn le(&self, other: &Self) -> bool {
        self.coords.iter().zip(&other.coords).all(|(a, b)| a <= b)
    }

    /// Coordinatewise `<=` and not equal.
    pub fn lt_strict(&self, other: &Self) -> bool {
        self.le(other) && self != other
    }

    /// Pairing with an integer vector: `sum_i w_i * x_i`.
    pub fn pairing(&self, w: &[BigInt]) -> BigRational {
        debug_assert_eq!(self.dim(), w.len());
        let mut acc = BigRational::zero();
        for (x, wi) in self.coords.iter().zip(w) {
            acc += x * BigRational::from(wi.clone());
        }
        acc
    }

    /// Least common multiple of the coordinate denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        let mut l = BigInt::one();
        for x in &self.coords {
            l = l.lcm(x.denom());
        }
        l
    }

    /// Integer coordinates, if every entry is integral.
    pub fn to_integer_vec(&self) -> Option<Vec<BigInt>> {
        if !self.is_integral() {
            return None;
        }
        Some(self.coords.iter().map(|x| x.to_integer()).collect())
    }

    pub fn from_integer_vec(v: &[BigInt]) -> Self {
        RationalVector {
            coords: v.iter().map(|x| BigRational::from(x.clone())).collect(),
        }
    }
}

impl fmt::Display for RationalVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, x) in self.coords.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", x)?;
        }
        write!(f, ")")
    }
}

/// Parse `"p/q"` or `"n"` into an exact rational.  The denominator must be
/// positive; the result is reduced by construction.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    match s.split_once('/') {
        Some((p, q)) => {
            let p = BigInt::from_str(p.trim()).ok()?;
            let q = BigInt::from_str(q.trim()).ok()?;
            if q <= BigInt::zero() {
                return None;
            }
            Some(BigRational::new(p, q))
        }
        None => Some(BigRational::from(BigInt::from_str(s).ok()?)),
    }
}

/// Render a rational as `"p/q"`, or `"p"` when integral.
pub fn rational_to_string(x: &BigRational) -> String {
    if x.is_integer() {
        x.to_integer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}
