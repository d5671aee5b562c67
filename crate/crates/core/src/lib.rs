//! Exact-arithmetic invariants of irreducible quasi-ordinary hypersurface
//! singularities.
//!
//! Starting from a sequence of characteristic exponents, this crate derives
//! the semigroup of the associated quasi-ordinary projection, the essential
//! divisorial valuations over the singular locus and over the origin, and the
//! multivariate Poincaré series they induce, as a quotient of cyclotomic
//! factors.  The inverse direction recovers the normalized characteristic
//! exponents from a Poincaré series in short form, and the one-variable
//! specialization is compared against the monodromy zeta function of a plane
//! section.
//!
//! All arithmetic is arbitrary-precision integer/rational; there is no
//! floating point anywhere, and every operation is a pure function over
//! immutable values.
//!
//! The full pipeline, on the exponents of `(y - x1)^3 = x1^8 x2 (unit)`:
//!
//! ```
//! use quasiord::charseq::{validate, CharacteristicSequence};
//! use quasiord::essential::essential_divisors;
//! use quasiord::inverse::{recover, ShortFormInput};
//! use quasiord::rat::RationalVector;
//! use quasiord::series::{poincare_forward, short_form};
//!
//! let cs = CharacteristicSequence::new(3, vec![
//!     RationalVector::parse(&["1/3", "0", "0"]).unwrap(),
//!     RationalVector::parse(&["5/9", "1/9", "0"]).unwrap(),
//! ]);
//! let sp = validate(&cs).unwrap();
//! assert_eq!(sp.ns.iter().map(|n| n.to_string()).collect::<Vec<_>>(), ["3", "9"]);
//!
//! let ed = essential_divisors(&sp);
//! let series = short_form(&poincare_forward(&sp, &ed).unwrap());
//! let report = recover(&ShortFormInput::new(series).unwrap()).unwrap();
//! assert_eq!(report.lambdas[0], RationalVector::parse(&["11/3", "1/9", "0"]).unwrap());
//! ```

pub mod charseq;
pub mod error;
pub mod essential;
pub mod inverse;
pub mod lattice;
pub mod rat;
pub mod series;
pub mod zeta;

pub use charseq::{CharacteristicSequence, SemigroupPresentation};
pub use error::Error;
pub use essential::{EssentialDivisors, EssentialMatrix, Groups, SingularLocus};
pub use inverse::{RecoveryBranch, RecoveryReport, ShortFormInput};
pub use lattice::{IntegerMatrix, LatticeBasis};
pub use rat::RationalVector;
pub use series::{CyclotomicRational, TruncatedSeries};
pub use zeta::{ZetaCase, ZetaReport};
