//! Poincaré series as products and quotients of cyclotomic factors
//! `1 - t^a`, their truncated expansions, and the fiber-counting oracle that
//! realizes the same coefficients by direct semigroup enumeration.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::charseq::{enumerate_semigroup, SemigroupPresentation};
use crate::error::{Error, Result};
use crate::essential::{EssentialDivisors, Groups};
use crate::rat::RationalVector;

/// A product/quotient of cyclotomic factors: `prod (1 - t^b) / prod
/// (1 - t^a)` over exponent vectors in `Z^p_{>=0}`.  Numerator and
/// denominator are sorted multisets; a short form additionally has disjoint
/// multisets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CyclotomicRational {
    pub vars: usize,
    pub groups: Groups,
    pub numerator: Vec<Vec<BigInt>>,
    pub denominator: Vec<Vec<BigInt>>,
}

impl CyclotomicRational {
    pub fn new(
        vars: usize,
        groups: Groups,
        mut numerator: Vec<Vec<BigInt>>,
        mut denominator: Vec<Vec<BigInt>>,
    ) -> Result<Self> {
        if groups.total() != vars {
            return Err(Error::GroupMismatch(format!(
                "groups sum to {}, expected {}",
                groups.total(),
                vars
            )));
        }
        for v in numerator.iter().chain(denominator.iter()) {
            if v.len() != vars {
                return Err(Error::DimensionMismatch(format!(
                    "exponent vector of length {}, expected {}",
                    v.len(),
                    vars
                )));
            }
            if v.iter().any(|x| x.is_negative()) {
                return Err(Error::NegativeExponent(format!("exponent {:?}", v)));
            }
            if v.iter().all(|x| x.is_zero()) {
                return Err(Error::DivergentAtOrigin);
            }
        }
        numerator.sort();
        denominator.sort();
        Ok(CyclotomicRational {
            vars,
            groups,
            numerator,
            denominator,
        })
    }

    /// Indicator exponent vector of a trailing block of variables: 1 on
    /// coordinates `from..vars`, 0 before.
    pub fn indicator_from(&self, from: usize) -> Vec<BigInt> {
        (0..self.vars)
            .map(|k| {
                if k >= from {
                    BigInt::from(1)
                } else {
                    BigInt::zero()
                }
            })
            .collect()
    }

    /// True when numerator and denominator share no factor.
    pub fn is_short(&self) -> bool {
        let mut counts: BTreeMap<&Vec<BigInt>, i64> = BTreeMap::new();
        for v in &self.numerator {
            *counts.entry(v).or_insert(0) += 1;
        }
        self.denominator.iter().all(|v| !counts.contains_key(v))
    }

    /// Multiply every exponent by the rational `k`; fails unless all scaled
    /// exponents stay integral.
    pub fn scale_exponents(&self, k: &BigRational) -> Result<CyclotomicRational> {
        let scale = |vs: &Vec<Vec<BigInt>>| -> Result<Vec<Vec<BigInt>>> {
            vs.iter()
                .map(|v| {
                    v.iter()
                        .map(|x| {
                            let y = BigRational::from(x.clone()) * k;
                            if y.is_integer() {
                                Ok(y.to_integer())
                            } else {
                                Err(Error::NonIntegralPairing(format!(
                                    "exponent {} scaled by {}",
                                    x, k
                                )))
                            }
                        })
                        .collect()
                })
                .collect()
        };
        CyclotomicRational::new(
            self.vars,
            self.groups,
            scale(&self.numerator)?,
            scale(&self.denominator)?,
        )
    }
}

impl fmt::Display for CyclotomicRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let factor = |v: &Vec<BigInt>| -> String {
            let mut s = String::from("(1 - ");
            let mut any = false;
            for (k, e) in v.iter().enumerate() {
                if e.is_zero() {
                    continue;
                }
                any = true;
                s.push_str(&format!("t{}", k + 1));
                if !e.is_one() {
                    s.push_str(&format!("^{}", e));
                }
                s.push(' ');
            }
            if !any {
                s.push_str("1 ");
            }
            s.pop();
            s.push(')');
            s
        };
        if self.numerator.is_empty() {
            write!(f, "1")?;
        } else {
            for v in &self.numerator {
                write!(f, "{}", factor(v))?;
            }
        }
        write!(f, " / ")?;
        if self.denominator.is_empty() {
            write!(f, "1")?;
        } else {
            for v in &self.denominator {
                write!(f, "{}", factor(v))?;
            }
        }
        Ok(())
    }
}

/// Finite box of coefficients of a power series in `vars` variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedSeries {
    pub vars: usize,
    pub bound: Vec<usize>,
    coeffs: Vec<BigInt>,
}

impl TruncatedSeries {
    pub fn zero(bound: &[usize]) -> Self {
        let total: usize = bound.iter().map(|b| b + 1).product();
        TruncatedSeries {
            vars: bound.len(),
            bound: bound.to_vec(),
            coeffs: vec![BigInt::zero(); total],
        }
    }

    pub fn one(bound: &[usize]) -> Self {
        let mut s = Self::zero(bound);
        s.coeffs[0] = BigInt::from(1);
        s
    }

    fn offset(&self, idx: &[usize]) -> usize {
        let mut off = 0usize;
        for (i, &x) in idx.iter().enumerate() {
            debug_assert!(x <= self.bound[i]);
            off = off * (self.bound[i] + 1) + x;
        }
        off
    }

    pub fn coeff(&self, idx: &[usize]) -> &BigInt {
        &self.coeffs[self.offset(idx)]
    }

    pub fn add_at(&mut self, idx: &[usize], v: BigInt) {
        let off = self.offset(idx);
        self.coeffs[off] += v;
    }

    /// Nonzero coefficients in lexicographic multidegree order.
    pub fn nonzero(&self) -> Vec<(Vec<usize>, BigInt)> {
        let mut out = Vec::new();
        let mut idx = vec![0usize; self.vars];
        loop {
            let c = self.coeff(&idx);
            if !c.is_zero() {
                out.push((idx.clone(), c.clone()));
            }
            let mut advanced = false;
            for i in (0..self.vars).rev() {
                if idx[i] < self.bound[i] {
                    idx[i] += 1;
                    idx[i + 1..].iter_mut().for_each(|x| *x = 0);
                    advanced = true;
                    break;
                }
                idx[i] = 0;
            }
            if !advanced {
                return out;
            }
        }
    }
}

/// The image `(<w_1, gamma>, .., <w_p, gamma>)` of a semigroup element under
/// the essential valuations.
pub fn monomial_map(gamma: &RationalVector, ed: &EssentialDivisors) -> Result<Vec<BigInt>> {
    ed.ws
        .iter()
        .map(|w| {
            let v = gamma.pairing(w);
            if v.is_integer() {
                Ok(v.to_integer())
            } else {
                Err(Error::NonIntegralPairing(format!(
                    "<{:?}, {}> = {}",
                    w, gamma, v
                )))
            }
        })
        .collect()
}

/// The Poincaré series of the germ under the essential valuations, as an
/// uncancelled cyclotomic quotient: numerator factors `1 - t^<w, n_i g_i>`,
/// denominator factors `1 - t^<w, e_j>` and `1 - t^<w, g_i>`.
pub fn poincare_forward(
    sp: &SemigroupPresentation,
    ed: &EssentialDivisors,
) -> Result<CyclotomicRational> {
    let d = sp.dim();
    let mut numerator = Vec::with_capacity(sp.g());
    let mut denominator = Vec::with_capacity(d + sp.g());
    for (gamma, n) in sp.gammas.iter().zip(&sp.ns) {
        numerator.push(monomial_map(&gamma.scale_int(n), ed)?);
        denominator.push(monomial_map(gamma, ed)?);
    }
    for j in 0..d {
        denominator.push(monomial_map(&RationalVector::unit(d, j), ed)?);
    }
    CyclotomicRational::new(ed.p(), ed.groups, numerator, denominator)
}

/// Cancel equal factors between numerator and denominator (multiset
/// difference).  For normalized presentations the forward series is already
/// short and this is the identity.
pub fn short_form(cr: &CyclotomicRational) -> CyclotomicRational {
    let mut den_pool: BTreeMap<Vec<BigInt>, usize> = BTreeMap::new();
    for v in &cr.denominator {
        *den_pool.entry(v.clone()).or_insert(0) += 1;
    }
    let mut numerator = Vec::new();
    for v in &cr.numerator {
        match den_pool.get_mut(v) {
            Some(k) if *k > 0 => *k -= 1,
            _ => numerator.push(v.clone()),
        }
    }
    let mut denominator = Vec::new();
    for (v, k) in den_pool {
        for _ in 0..k {
            denominator.push(v.clone());
        }
    }
    CyclotomicRational::new(cr.vars, cr.groups, numerator, denominator)
        .expect("cancellation preserves validity")
}

/// Expand the rational function as a power series on the coefficient box
/// `prod [0, bound_k]`.  Denominator factors are geometric-series
/// convolutions applied in sorted order; numerator factors subtract a
/// shifted copy.  Exact integer coefficients throughout.
pub fn expand(cr: &CyclotomicRational, bound: &[usize]) -> Result<TruncatedSeries> {
    if bound.len() != cr.vars {
        return Err(Error::DimensionMismatch(format!(
            "bound of length {}, series in {} variables",
            bound.len(),
            cr.vars
        )));
    }
    let mut series = TruncatedSeries::one(bound);
    let in_box = |v: &Vec<BigInt>| -> Option<Vec<usize>> {
        let mut idx = Vec::with_capacity(v.len());
        for (x, &b) in v.iter().zip(bound) {
            let x = usize::try_from(x).ok()?;
            if x > b {
                return None;
            }
            idx.push(x);
        }
        Some(idx)
    };

    // denominator: c[a] += c[a - alpha], ascending, so the updated values
    // feed forward and the whole geometric series accumulates
    for alpha in &cr.denominator {
        let Some(shift) = in_box(alpha) else { continue };
        let mut idx = vec![0usize; cr.vars];
        loop {
            if idx.iter().zip(&shift).all(|(a, s)| a >= s) {
                let lower: Vec<usize> = idx.iter().zip(&shift).map(|(a, s)| a - s).collect();
                let v = series.coeff(&lower).clone();
                series.add_at(&idx, v);
            }
            if !advance(&mut idx, bound) {
                break;
            }
        }
    }
    // numerator: c[a] -= c[a - beta], descending, so pre-update values are
    // read
    for beta in &cr.numerator {
        let Some(shift) = in_box(beta) else { continue };
        let mut idx = bound.to_vec();
        loop {
            if idx.iter().zip(&shift).all(|(a, s)| a >= s) {
                let lower: Vec<usize> = idx.iter().zip(&shift).map(|(a, s)| a - s).collect();
                let v = series.coeff(&lower).clone();
                series.add_at(&idx, -v);
            }
            if !retreat(&mut idx, bound) {
                break;
            }
        }
    }
    Ok(series)
}

fn advance(idx: &mut [usize], bound: &[usize]) -> bool {
    for i in (0..idx.len()).rev() {
        if idx[i] < bound[i] {
            idx[i] += 1;
            idx[i + 1..].iter_mut().for_each(|x| *x = 0);
            return true;
        }
        idx[i] = 0;
    }
    false
}

fn retreat(idx: &mut [usize], bound: &[usize]) -> bool {
    for i in (0..idx.len()).rev() {
        if idx[i] > 0 {
            idx[i] -= 1;
            let n = idx.len();
            idx[i + 1..].copy_from_slice(&bound[i + 1..n]);
            return true;
        }
        idx[i] = bound[i];
    }
    false
}

/// Coefficient box computed the hard way: enumerate the semigroup below the
/// bound and count the fiber of the valuation map over each multidegree.
/// This is the desk-scale realization of the dimension count
/// `dim J(a) = #{ gamma : <w_k, gamma> = a_k }`.
pub fn count_fibers(
    sp: &SemigroupPresentation,
    ed: &EssentialDivisors,
    bound: &[usize],
) -> Result<TruncatedSeries> {
    if bound.len() != ed.p() {
        return Err(Error::DimensionMismatch(format!(
            "bound of length {}, {} valuations",
            bound.len(),
            ed.p()
        )));
    }
    let bounds: Vec<BigInt> = bound.iter().map(|&b| BigInt::from(b)).collect();
    let elements = enumerate_semigroup(sp, &ed.ws, &bounds)?;
    let mut series = TruncatedSeries::zero(bound);
    for gamma in elements {
        let a = monomial_map(&gamma, ed)?;
        let idx: Vec<usize> = a
            .iter()
            .map(|x| usize::try_from(x).expect("pairing within bound"))
            .collect();
        series.add_at(&idx, BigInt::from(1));
    }
    Ok(series)
}

/// Truncated Poincaré series of a general affine semigroup given by a
/// generator list: coefficients count distinct semigroup elements per
/// multidegree.  Requires a weight that is strictly positive on every
/// generator, which keeps the search finite.
pub fn count_fibers_semigroup(
    generators: &[Vec<BigInt>],
    weights: &[Vec<BigInt>],
    bound: &[usize],
) -> Result<TruncatedSeries> {
    if bound.len() != weights.len() {
        return Err(Error::DimensionMismatch(format!(
            "bound of length {}, {} weights",
            bound.len(),
            weights.len()
        )));
    }
    let dim = generators.first().map_or(0, |g| g.len());
    for v in generators.iter().chain(weights.iter()) {
        if v.len() != dim {
            return Err(Error::DimensionMismatch(
                "ragged generator or weight".into(),
            ));
        }
    }
    let pair = |w: &[BigInt], v: &[BigInt]| -> BigInt { w.iter().zip(v).map(|(a, b)| a * b).sum() };
    let strict = (0..weights.len()).any(|k| {
        generators
            .iter()
            .all(|g| pair(&weights[k], g) > BigInt::zero())
    });
    if !strict {
        return Err(Error::NoInteriorWeight);
    }
    let in_bound = |v: &Vec<BigInt>| -> Option<Vec<usize>> {
        let mut idx = Vec::with_capacity(weights.len());
        for (w, &b) in weights.iter().zip(bound) {
            let d = pair(w, v);
            if d.is_negative() {
                return None;
            }
            let d = usize::try_from(&d).ok()?;
            if d > b {
                return None;
            }
            idx.push(d);
        }
        Some(idx)
    };

    let mut seen = std::collections::BTreeSet::new();
    let mut frontier = vec![vec![BigInt::zero(); dim]];
    seen.insert(frontier[0].clone());
    let mut series = TruncatedSeries::zero(bound);
    if let Some(idx) = in_bound(&frontier[0]) {
        series.add_at(&idx, BigInt::from(1));
    }
    while let Some(v) = frontier.pop() {
        for g in generators {
            let next: Vec<BigInt> = v.iter().zip(g).map(|(a, b)| a + b).collect();
            if let Some(idx) = in_bound(&next) {
                if seen.insert(next.clone()) {
                    series.add_at(&idx, BigInt::from(1));
                    frontier.push(next);
                }
            }
        }
    }
    Ok(series)
}

/// Substitute every variable by a single `t`: each exponent vector maps to
/// the sum of its coordinates.  No cancellation is performed.
pub fn specialize_sum(cr: &CyclotomicRational) -> CyclotomicRational {
    let sum = |vs: &Vec<Vec<BigInt>>| -> Vec<Vec<BigInt>> {
        vs.iter().map(|v| vec![v.iter().sum()]).collect()
    };
    CyclotomicRational::new(
        1,
        Groups {
            s1: 0,
            s2: 0,
            s0: 1,
        },
        sum(&cr.numerator),
        sum(&cr.denominator),
    )
    .expect("coordinate sums of nonzero nonnegative vectors are positive")
}
