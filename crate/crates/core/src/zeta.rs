//! One-variable specialization of the Poincaré series and its comparison
//! with the monodromy zeta function of a plane section.
//!
//! Substituting every variable by `t` turns the Poincaré series into the one
//! attached to the single weight `b = w_1 + .. + w_p`.  The zeta function of
//! the germ equals that of the plane section `x_2 = .. = x_d = 0`: the
//! single factor `1 - t^n` when `lambda_{1,2}` is nonzero (case A), and
//! otherwise the semigroup series of the plane branch cut out by the leading
//! exponents, reparametrized (case B).  [`monodromy_zeta`] verifies the
//! resulting factorization of the specialized series exactly.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::charseq::SemigroupPresentation;
use crate::error::{Error, Result};
use crate::essential::{EssentialDivisors, Groups};
use crate::inverse::ShortFormInput;
use crate::rat::RationalVector;
use crate::series::{poincare_forward, short_form, specialize_sum, CyclotomicRational};

/// Which case of the plane-section theorem applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ZetaCase {
    /// `lambda_{1,2} != 0`: the zeta function is `1 - t^n`.
    A,
    /// `lambda_{1,2} = 0`: the zeta function comes from a plane branch.
    B,
}

/// Zeta function of the germ together with the exact verification of its
/// appearance inside the specialized Poincaré series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaReport {
    pub case: ZetaCase,
    /// Coordinates of `b = w_1 + .. + w_p`.
    pub b: Vec<BigInt>,
    /// Degree `n_1 * .. * n_g`.
    pub n: BigInt,
    /// Case B: the largest index with `lambda_{i,2} = 0`; 0 in case A.
    pub i0: usize,
    /// Case B: generators of the numerical semigroup of the plane branch.
    pub h_semigroup: Vec<BigInt>,
    pub zeta: CyclotomicRational,
    pub identity_verified: bool,
}

fn one_var(numerator: Vec<BigInt>, denominator: Vec<BigInt>) -> CyclotomicRational {
    CyclotomicRational::new(
        1,
        Groups {
            s1: 0,
            s2: 0,
            s0: 1,
        },
        numerator.into_iter().map(|x| vec![x]).collect(),
        denominator.into_iter().map(|x| vec![x]).collect(),
    )
    .expect("one-variable factors are positive")
}

struct PlaneBranch {
    /// Generators `deg(h), deg(h) * gamma_1, ..` of the semigroup of `h`.
    semigroup: Vec<BigInt>,
    /// Characteristic integers of the branch.
    ns: Vec<BigInt>,
    series: CyclotomicRational,
}

fn plane_branch_data(exps: &[BigRational]) -> Result<PlaneBranch> {
    for e in exps {
        if !e.is_positive() {
            return Err(Error::InvalidBranchData(format!(
                "exponent {} is not positive",
                e
            )));
        }
    }
    for w in exps.windows(2) {
        if w[0] >= w[1] {
            return Err(Error::InvalidBranchData(format!(
                "exponents {} and {} are not increasing",
                w[0], w[1]
            )));
        }
    }
    if exps.is_empty() {
        // smooth branch: the semigroup is all of Z_{>=0}
        return Ok(PlaneBranch {
            semigroup: vec![BigInt::one()],
            ns: vec![],
            series: one_var(vec![], vec![BigInt::one()]),
        });
    }
    // one-dimensional lattice chain: denominators accumulate by lcm
    let mut ns = Vec::with_capacity(exps.len());
    let mut scale = BigInt::one();
    for e in exps {
        let next = scale.lcm(e.denom());
        let n = &next / &scale;
        if n.is_one() {
            return Err(Error::InvalidBranchData(format!(
                "exponent {} lies in the previous lattice",
                e
            )));
        }
        ns.push(n);
        scale = next;
    }
    let degree = scale;
    let mut gammas = vec![exps[0].clone()];
    for j in 0..exps.len() - 1 {
        let next = BigRational::from(ns[j].clone()) * &gammas[j] + &exps[j + 1] - &exps[j];
        gammas.push(next);
    }
    let scaled: Vec<BigInt> = gammas
        .iter()
        .map(|g| {
            let v = g * BigRational::from(degree.clone());
            debug_assert!(v.is_integer());
            v.to_integer()
        })
        .collect();
    let mut semigroup = vec![degree.clone()];
    semigroup.extend(scaled.iter().cloned());
    let numerator: Vec<BigInt> = scaled.iter().zip(&ns).map(|(b, n)| b * n).collect();
    let mut denominator = vec![degree];
    denominator.extend(scaled);
    Ok(PlaneBranch {
        semigroup,
        ns,
        series: short_form(&one_var(numerator, denominator)),
    })
}

/// Semigroup generating series of an irreducible plane branch with the
/// given strictly increasing characteristic exponents, scaled to integer
/// exponents by the degree and cancelled.  A smooth branch gives
/// `1 / (1 - t)`.
pub fn plane_branch_series(exps: &[BigRational]) -> Result<CyclotomicRational> {
    Ok(plane_branch_data(exps)?.series)
}

/// The monodromy zeta function of the germ via its plane section, plus the
/// exact verification that the specialized Poincaré series factors through
/// it as predicted.
pub fn monodromy_zeta(sp: &SemigroupPresentation, ed: &EssentialDivisors) -> Result<ZetaReport> {
    let g = sp.g();
    let b = ed.weight_sum();
    let n = sp.degree.clone();
    let pair_b = |v: &RationalVector| -> BigInt {
        let x = v.pairing(&b);
        debug_assert!(x.is_integer());
        x.to_integer()
    };

    let case_a = !sp.char_seq.lambdas[0].coords[1].is_zero();
    let (case, i0, h_semigroup, zeta, rhs) = if case_a {
        let zeta = one_var(vec![n.clone()], vec![]);
        // specialized series = 1/zeta(t^{b_1/n}) * prod_j (1-t^<b,n_j g_j>)
        // / (1-t^<b,g_j>) * prod_{j>=2} 1/(1-t^{b_j})
        let mut num = Vec::new();
        let mut den = vec![b[0].clone()];
        for (gamma, nj) in sp.gammas.iter().zip(&sp.ns) {
            num.push(pair_b(&gamma.scale_int(nj)));
            den.push(pair_b(gamma));
        }
        den.extend(b[1..].iter().cloned());
        (ZetaCase::A, 0usize, Vec::new(), zeta, one_var(num, den))
    } else {
        let i0 = (1..=g)
            .rev()
            .find(|&i| sp.char_seq.lambdas[i - 1].coords[1].is_zero())
            .expect("lambda_{1,2} = 0 in case B");
        let h_exps: Vec<BigRational> = sp.char_seq.lambdas[..i0]
            .iter()
            .map(|l| l.coords[0].clone())
            .collect();
        let branch = plane_branch_data(&h_exps)?;
        debug_assert_eq!(branch.ns, sp.ns[..i0].to_vec());
        let mut deg_h = BigInt::one();
        for nj in &sp.ns[..i0] {
            deg_h *= nj;
        }
        let (reparam, rem) = n.div_rem(&deg_h);
        debug_assert!(rem.is_zero());
        let zeta = branch.series.scale_exponents(&BigRational::from(reparam))?;
        // specialized series = zeta(h)(t^{b_1/deg h}) * the factors for
        // j > i0 * prod_{j>=2} 1/(1-t^{b_j})
        let h_scaled = branch
            .series
            .scale_exponents(&BigRational::new(b[0].clone(), deg_h))?;
        let mut num: Vec<BigInt> = h_scaled.numerator.iter().map(|v| v[0].clone()).collect();
        let mut den: Vec<BigInt> = h_scaled.denominator.iter().map(|v| v[0].clone()).collect();
        for j in i0..g {
            num.push(pair_b(&sp.gammas[j].scale_int(&sp.ns[j])));
            den.push(pair_b(&sp.gammas[j]));
        }
        den.extend(b[1..].iter().cloned());
        (ZetaCase::B, i0, branch.semigroup, zeta, one_var(num, den))
    };

    let specialized = specialize_sum(&poincare_forward(sp, ed)?);
    let lhs = short_form(&specialized);
    let rhs = short_form(&rhs);
    let identity_verified = lhs.numerator == rhs.numerator && lhs.denominator == rhs.denominator;

    Ok(ZetaReport {
        case,
        b,
        n,
        i0,
        h_semigroup,
        zeta,
        identity_verified,
    })
}

/// Equisingularity test: `Some(k)` when the first series equals the second
/// one divided by `k` extra copies of the origin-group indicator factor
/// (same numerators, denominators differing by exactly those copies).
pub fn equi_check(p1: &ShortFormInput, p2: &ShortFormInput) -> Result<Option<usize>> {
    if p1.cr.vars != p2.cr.vars {
        return Err(Error::GroupMismatch(format!(
            "series in {} and {} variables",
            p1.cr.vars, p2.cr.vars
        )));
    }
    if p1.cr.numerator != p2.cr.numerator {
        return Ok(None);
    }
    if p1.cr.groups != p2.cr.groups {
        return Err(Error::GroupMismatch(format!(
            "groupings ({}, {}, {}) and ({}, {}, {})",
            p1.cr.groups.s1,
            p1.cr.groups.s2,
            p1.cr.groups.s0,
            p2.cr.groups.s1,
            p2.cr.groups.s2,
            p2.cr.groups.s0
        )));
    }
    let groups = p1.cr.groups;
    let indicator = p1.cr.indicator_from(groups.s1 + groups.s2);
    let mut rest = p1.cr.denominator.clone();
    for v in &p2.cr.denominator {
        match rest.iter().position(|x| x == v) {
            Some(i) => {
                rest.remove(i);
            }
            None => return Ok(None),
        }
    }
    if rest.iter().all(|v| *v == indicator) {
        Ok(Some(rest.len()))
    } else {
        Ok(None)
    }
}
