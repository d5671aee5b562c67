//! Characteristic-exponent input and the derived semigroup presentation.
//!
//! A [`CharacteristicSequence`] is validated into a [`SemigroupPresentation`]:
//! the semigroup generators `gamma_1..gamma_g` obtained from the exponents
//! through `gamma_1 = lambda_1`, `gamma_{j+1} - n_j gamma_j =
//! lambda_{j+1} - lambda_j`, the characteristic integers `n_j` as indices of
//! the nested lattices `M_j = M_{j-1} + Z lambda_j`, the equisingular
//! dimension `c`, and the dual lattice `N` of vectors pairing integrally with
//! every generator.
//!
//! Every element of the semigroup `Z^d_{>=0} + sum gamma_i Z_{>=0}` has a
//! unique expansion `alpha + sum l_i gamma_i` with `0 <= l_i < n_i`;
//! [`canonical_form`] computes it and [`enumerate_semigroup`] lists all
//! elements below a weight bound in the lexicographic `(alpha, l)` order.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::lattice::{dual_sublattice, lattice_index, LatticeBasis};
use crate::rat::RationalVector;

/// Raw input: the dimension `d >= 2` and exponents
/// `lambda_1 < ... < lambda_g` (coordinatewise `<=` and not equal), with the
/// coordinate columns in decreasing lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CharacteristicSequence {
    pub dim: usize,
    pub lambdas: Vec<RationalVector>,
}

impl CharacteristicSequence {
    pub fn new(dim: usize, lambdas: Vec<RationalVector>) -> Self {
        CharacteristicSequence { dim, lambdas }
    }

    /// Number of characteristic exponents.
    pub fn g(&self) -> usize {
        self.lambdas.len()
    }
}

/// Validated characteristic data with all derived invariants.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SemigroupPresentation {
    pub char_seq: CharacteristicSequence,
    pub gammas: Vec<RationalVector>,
    /// Characteristic integers `n_1..n_g`, each at least 2.
    pub ns: Vec<BigInt>,
    /// Equisingular dimension: number of coordinates where the last exponent
    /// is nonzero; the discriminant is supported on `x_1 .. x_c`.
    pub c: usize,
    /// Degree `n_1 * ... * n_g` of the defining polynomial.
    pub degree: BigInt,
    /// `N = { v in Z^d : <v, gamma_j> in Z for all j }`.
    pub lattice_n: LatticeBasis,
    /// `m_i` is the least positive integer with `m_i * gamma_j^i` integral
    /// for every `j`; `m_i * e_i` is the primitive lattice vector of `N` on
    /// the `i`-th ray.
    pub m: Vec<BigInt>,
    pub normalized: bool,
    lattice_chain: Vec<LatticeBasis>,
}

impl SemigroupPresentation {
    pub fn dim(&self) -> usize {
        self.char_seq.dim
    }

    pub fn g(&self) -> usize {
        self.char_seq.g()
    }

    /// The nested lattices `M_0 = Z^d, M_1, ..., M_g = M`.
    pub fn lattice_chain(&self) -> &[LatticeBasis] {
        &self.lattice_chain
    }

    /// Last characteristic integer `n_g`.
    pub fn n_last(&self) -> &BigInt {
        self.ns.last().expect("g >= 1")
    }
}

/// Check all structural invariants of a characteristic sequence and derive
/// the presentation.  A sequence with some `lambda_j` already in `M_{j-1}`
/// (characteristic integer 1) is rejected; smooth germs (`g = 0`) are
/// rejected as well since the invariants below are only defined for singular
/// ones.
pub fn validate(cs: &CharacteristicSequence) -> Result<SemigroupPresentation> {
    let d = cs.dim;
    let g = cs.g();
    if d < 2 {
        return Err(Error::BadDimension(format!("ambient dimension {} < 2", d)));
    }
    if g == 0 {
        return Err(Error::BadDimension("no characteristic exponents".into()));
    }
    for (j, l) in cs.lambdas.iter().enumerate() {
        if l.dim() != d {
            return Err(Error::BadDimension(format!(
                "exponent {} has length {}, expected {}",
                j + 1,
                l.dim(),
                d
            )));
        }
        if !l.is_nonnegative() {
            return Err(Error::NegativeExponent(format!("lambda_{} = {}", j + 1, l)));
        }
    }
    for j in 0..g - 1 {
        if !cs.lambdas[j].lt_strict(&cs.lambdas[j + 1]) {
            return Err(Error::NotStrictlyIncreasing(format!(
                "lambda_{} = {} and lambda_{} = {}",
                j + 1,
                cs.lambdas[j],
                j + 2,
                cs.lambdas[j + 1]
            )));
        }
    }
    // columns (lambda_1^i, .., lambda_g^i) must decrease lexicographically
    for i in 0..d.saturating_sub(1) {
        let col =
            |i: usize| -> Vec<&BigRational> { cs.lambdas.iter().map(|l| &l.coords[i]).collect() };
        if col(i) < col(i + 1) {
            return Err(Error::LexOrderViolated(format!(
                "coordinate {} sorts before coordinate {}",
                i + 2,
                i + 1
            )));
        }
    }

    // nested lattices M_j = M_{j-1} + Z lambda_j and their indices
    let units: Vec<RationalVector> = (0..d).map(|i| RationalVector::unit(d, i)).collect();
    let mut chain = vec![LatticeBasis::standard(d)];
    let mut ns = Vec::with_capacity(g);
    for j in 0..g {
        let mut gens = units.clone();
        gens.extend(cs.lambdas[..=j].iter().cloned());
        let mj = LatticeBasis::from_rational_rows(&gens, d);
        let nj = lattice_index(&chain[j], &mj)?;
        if nj.is_one() {
            return Err(Error::RedundantExponent(format!(
                "lambda_{} = {} already lies in the previous lattice",
                j + 1,
                cs.lambdas[j]
            )));
        }
        ns.push(nj);
        chain.push(mj);
    }

    // semigroup generators
    let mut gammas = vec![cs.lambdas[0].clone()];
    for j in 0..g - 1 {
        let next = gammas[j]
            .scale_int(&ns[j])
            .add(&cs.lambdas[j + 1])
            .sub(&cs.lambdas[j]);
        gammas.push(next);
    }

    let last = &cs.lambdas[g - 1];
    let c = last.coords.iter().filter(|x| !x.is_zero()).count();

    let lattice_n = dual_sublattice(&gammas, d);
    let m: Vec<BigInt> = (0..d)
        .map(|i| {
            let mut l = BigInt::one();
            for gamma in &gammas {
                l = l.lcm(gamma.coords[i].denom());
            }
            l
        })
        .collect();

    let first = &cs.lambdas[0];
    let axial = first.coords[1..].iter().all(|x| x.is_zero());
    let normalized = !(axial && first.coords[0] <= BigRational::one());

    let mut degree = BigInt::one();
    for n in &ns {
        degree *= n;
    }

    Ok(SemigroupPresentation {
        char_seq: cs.clone(),
        gammas,
        ns,
        c,
        degree,
        lattice_n,
        m,
        normalized,
        lattice_chain: chain,
    })
}

/// Recompute the exponents from the semigroup generators by inverting the
/// defining recursion: `lambda_1 = gamma_1`,
/// `lambda_{j+1} = gamma_{j+1} - n_j gamma_j + lambda_j`.
pub fn lambdas_from_gammas(gammas: &[RationalVector], ns: &[BigInt]) -> Vec<RationalVector> {
    let mut lambdas = vec![gammas[0].clone()];
    for j in 0..gammas.len() - 1 {
        let next = gammas[j + 1]
            .sub(&gammas[j].scale_int(&ns[j]))
            .add(&lambdas[j]);
        lambdas.push(next);
    }
    lambdas
}

/// The unique expansion `gamma = alpha + sum l_i gamma_i` with `alpha` a
/// nonnegative integer vector and `0 <= l_i < n_i`, or `None` when `gamma`
/// is not in the semigroup.  The residues `l_i` are forced from the top
/// lattice down: `l_j` is the unique value with `gamma - l_j gamma_j` in
/// `M_{j-1}`.
pub fn canonical_form(
    gamma: &RationalVector,
    sp: &SemigroupPresentation,
) -> Option<(Vec<BigInt>, Vec<u64>)> {
    assert_eq!(gamma.dim(), sp.dim(), "dimension mismatch");
    if !gamma.is_nonnegative() {
        return None;
    }
    let g = sp.g();
    let mut rem = gamma.clone();
    let mut ls = vec![0u64; g];
    for j in (0..g).rev() {
        let nj: u64 = u64::try_from(&sp.ns[j]).expect("characteristic integer fits u64");
        let below = &sp.lattice_chain[j];
        let mut found = None;
        let mut probe = rem.clone();
        for l in 0..nj {
            if below.contains(&probe) {
                found = Some(l);
                break;
            }
            probe = probe.sub(&sp.gammas[j]);
        }
        ls[j] = found?;
        rem = rem.sub(&sp.gammas[j].scale(&BigRational::from(BigInt::from(ls[j]))));
    }
    let alpha = rem.to_integer_vec().expect("remainder lies in Z^d");
    if alpha.iter().any(|x| x.is_negative()) {
        return None;
    }
    Some((alpha, ls))
}

/// All semigroup elements `gamma` with `<w_k, gamma> <= b_k` for every
/// weight, each exactly once, sorted by the lexicographic `(alpha, l)` order
/// of their unique expansions.  At least one weight must be strictly
/// positive in every coordinate; that weight confines `alpha` to a box.
pub fn enumerate_semigroup(
    sp: &SemigroupPresentation,
    weights: &[Vec<BigInt>],
    bounds: &[BigInt],
) -> Result<Vec<RationalVector>> {
    Ok(enumerate_with_forms(sp, weights, bounds)?
        .into_iter()
        .map(|(_, _, gamma)| gamma)
        .collect())
}

pub(crate) type ExpandedElement = (Vec<BigInt>, Vec<u64>, RationalVector);

pub(crate) fn enumerate_with_forms(
    sp: &SemigroupPresentation,
    weights: &[Vec<BigInt>],
    bounds: &[BigInt],
) -> Result<Vec<ExpandedElement>> {
    let d = sp.dim();
    for w in weights {
        if w.len() != d {
            return Err(Error::DimensionMismatch(format!(
                "weight length {} vs dimension {}",
                w.len(),
                d
            )));
        }
        if w.iter().any(|x| x.is_negative()) {
            return Err(Error::NegativeExponent(format!("weight {:?}", w)));
        }
    }
    if bounds.len() != weights.len() {
        return Err(Error::DimensionMismatch(format!(
            "{} bounds for {} weights",
            bounds.len(),
            weights.len()
        )));
    }
    let interior: Vec<usize> = (0..weights.len())
        .filter(|&k| weights[k].iter().all(|x| x > &BigInt::zero()))
        .collect();
    if interior.is_empty() {
        return Err(Error::NoInteriorWeight);
    }

    let g = sp.g();
    let radices: Vec<u64> = sp
        .ns
        .iter()
        .map(|n| u64::try_from(n).expect("characteristic integer fits u64"))
        .collect();
    let mut out = Vec::new();
    let mut ls = vec![0u64; g];
    'outer: loop {
        let mut base = RationalVector::zero(d);
        for (l, gamma) in ls.iter().zip(&sp.gammas) {
            base = base.add(&gamma.scale(&BigRational::from(BigInt::from(*l))));
        }
        let residuals: Vec<BigRational> = weights
            .iter()
            .zip(bounds)
            .map(|(w, b)| BigRational::from(b.clone()) - base.pairing(w))
            .collect();
        if residuals.iter().all(|r| !r.is_negative()) {
            // the interior weights confine alpha to a finite box
            let alpha_max: Vec<BigInt> = (0..d)
                .map(|i| {
                    interior
                        .iter()
                        .map(|&k| {
                            (&residuals[k] / BigRational::from(weights[k][i].clone()))
                                .floor()
                                .to_integer()
                        })
                        .min()
                        .unwrap()
                })
                .collect();
            let mut alpha = vec![BigInt::zero(); d];
            if alpha_max.iter().all(|x| !x.is_negative()) {
                'alpha: loop {
                    let ok = weights.iter().zip(&residuals).all(|(w, r)| {
                        let mut pair = BigInt::zero();
                        for (a, wi) in alpha.iter().zip(w) {
                            pair += a * wi;
                        }
                        BigRational::from(pair) <= *r
                    });
                    if ok {
                        let gamma = base.add(&RationalVector::from_integer_vec(&alpha));
                        out.push((alpha.clone(), ls.clone(), gamma));
                    }
                    // odometer over the alpha box
                    for i in (0..d).rev() {
                        if alpha[i] < alpha_max[i] {
                            alpha[i] += 1;
                            for a in alpha.iter_mut().skip(i + 1) {
                                *a = BigInt::zero();
                            }
                            continue 'alpha;
                        }
                    }
                    break;
                }
            }
        }
        // odometer over the residue tuple
        for i in (0..g).rev() {
            if ls[i] + 1 < radices[i] {
                ls[i] += 1;
                for l in ls.iter_mut().skip(i + 1) {
                    *l = 0;
                }
                continue 'outer;
            }
        }
        break;
    }
    out.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));
    Ok(out)
}
