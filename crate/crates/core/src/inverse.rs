//! Recovery of the normalized characteristic exponents from a Poincaré
//! series in short form.
//!
//! The numerator factors pair off with denominator factors on the same ray
//! (`beta_i = n_i * alpha_{d+i}` with `n_i >= 2`), which yields the
//! characteristic integers.  The remaining denominator factors are the
//! images of the coordinate vectors; depending on the number `s2` of
//! second-group variables, a linear system built from them recovers the
//! semigroup generators, and the exponents follow by inverting the defining
//! recursion and sorting coordinates into the lexicographic normal form.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::charseq::{lambdas_from_gammas, validate, CharacteristicSequence};
use crate::error::{Error, Result};
use crate::lattice::{solve_exact_columns, SolveOutcome};
use crate::rat::RationalVector;
use crate::series::CyclotomicRational;

/// A short-form Poincaré series with its variable grouping, ready for
/// inversion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShortFormInput {
    pub cr: CyclotomicRational,
    /// Surfaces carry only two groups of variables.
    pub two_group_mode: bool,
}

impl ShortFormInput {
    pub fn new(cr: CyclotomicRational) -> Result<Self> {
        if !cr.is_short() {
            return Err(Error::UnknownShape(
                "numerator and denominator share a factor; not a short form".into(),
            ));
        }
        if cr.numerator.is_empty() || cr.denominator.len() <= cr.numerator.len() {
            return Err(Error::UnknownShape(format!(
                "{} numerator and {} denominator factors",
                cr.numerator.len(),
                cr.denominator.len()
            )));
        }
        let d = cr.denominator.len() - cr.numerator.len();
        if d < 2 {
            return Err(Error::UnknownShape(format!("implied dimension {} < 2", d)));
        }
        let two_group_mode = d == 2;
        if two_group_mode && cr.groups.s2 != 0 {
            return Err(Error::GroupMismatch(
                "surface series carry two groups, so s2 must be 0".into(),
            ));
        }
        Ok(ShortFormInput { cr, two_group_mode })
    }

    pub fn dim(&self) -> usize {
        self.cr.denominator.len() - self.cr.numerator.len()
    }
}

/// One numerator factor matched with its denominator factor on the same ray.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FactorPair {
    pub beta: Vec<BigInt>,
    pub alpha: Vec<BigInt>,
    pub n: BigInt,
}

/// Which case of the recovery ran.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RecoveryBranch {
    S2Ge2,
    S2Eq0,
    S2Eq1,
    Dim2,
    Dim2QuadraticCone,
}

impl RecoveryBranch {
    pub fn as_str(&self) -> &'static str {
        match self {
            RecoveryBranch::S2Ge2 => "s2_ge_2",
            RecoveryBranch::S2Eq0 => "s2_eq_0",
            RecoveryBranch::S2Eq1 => "s2_eq_1",
            RecoveryBranch::Dim2 => "dim2",
            RecoveryBranch::Dim2QuadraticCone => "dim2_quadratic_cone",
        }
    }
}

/// One linear system solved during recovery, kept for reporting.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SolveRecord {
    pub columns: Vec<Vec<BigInt>>,
    pub rhs: Vec<BigInt>,
    pub solution: Vec<BigRational>,
}

/// The recovered normalized characteristic data.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RecoveryReport {
    pub d: usize,
    pub g: usize,
    pub c: usize,
    pub ns: Vec<BigInt>,
    pub gammas: Vec<RationalVector>,
    pub lambdas: Vec<RationalVector>,
    pub branch: RecoveryBranch,
    pub solve_log: Vec<SolveRecord>,
}

/// Match every numerator factor `beta` with the largest available
/// denominator factor `alpha` on its ray such that `beta = n * alpha` for an
/// integer `n >= 2`.  Numerator factors are processed in increasing order;
/// they must be totally ordered coordinatewise.  Returns the implied
/// dimension `|den| - |num|` and the pairs in increasing order.
pub fn pair_factors(cr: &CyclotomicRational) -> Result<(usize, Vec<FactorPair>)> {
    if cr.denominator.len() <= cr.numerator.len() {
        return Err(Error::NoPairing(format!(
            "{} numerator factors but only {} denominator factors",
            cr.numerator.len(),
            cr.denominator.len()
        )));
    }
    let d = cr.denominator.len() - cr.numerator.len();
    let mut betas = cr.numerator.clone();
    betas.sort_by_key(|v| (v.iter().sum::<BigInt>(), v.clone()));
    for w in betas.windows(2) {
        if !w[0].iter().zip(&w[1]).all(|(a, b)| a <= b) {
            return Err(Error::AmbiguousOrder(format!(
                "{:?} and {:?} are incomparable",
                w[0], w[1]
            )));
        }
    }

    let mut available: Vec<(Vec<BigInt>, bool)> =
        cr.denominator.iter().map(|v| (v.clone(), true)).collect();
    let mut pairs = Vec::with_capacity(betas.len());
    for beta in betas {
        let mut best: Option<(usize, BigInt)> = None;
        for (i, (alpha, free)) in available.iter().enumerate() {
            if !free {
                continue;
            }
            let Some(n) = integral_ratio(&beta, alpha) else {
                continue;
            };
            if n < BigInt::from(2) {
                continue;
            }
            // candidates share a ray, so lexicographic max is the
            // coordinatewise max
            if best
                .as_ref()
                .is_none_or(|(bi, _)| alpha > &available[*bi].0)
            {
                best = Some((i, n));
            }
        }
        let Some((i, n)) = best else {
            return Err(Error::NoPairing(format!("numerator factor {:?}", beta)));
        };
        available[i].1 = false;
        pairs.push(FactorPair {
            beta,
            alpha: available[i].0.clone(),
            n,
        });
    }
    Ok((d, pairs))
}

/// `Some(n)` when `beta = n * alpha` exactly.
fn integral_ratio(beta: &[BigInt], alpha: &[BigInt]) -> Option<BigInt> {
    let k = alpha.iter().position(|x| !x.is_zero())?;
    let (n, rem) = num_integer::Integer::div_rem(&beta[k], &alpha[k]);
    if !rem.is_zero() {
        return None;
    }
    for (b, a) in beta.iter().zip(alpha) {
        if b != &(a * &n) {
            return None;
        }
    }
    Some(n)
}

fn indicator(p: usize, from: usize) -> Vec<BigInt> {
    (0..p)
        .map(|k| {
            if k >= from {
                BigInt::one()
            } else {
                BigInt::zero()
            }
        })
        .collect()
}

/// Remove `count` copies of `v` from the multiset; error if short.
fn remove_copies(
    pool: &mut Vec<Vec<BigInt>>,
    v: &[BigInt],
    count: usize,
    what: &str,
) -> Result<()> {
    for _ in 0..count {
        match pool.iter().position(|x| x == v) {
            Some(i) => {
                pool.remove(i);
            }
            None => {
                return Err(Error::UnknownShape(format!(
                    "expected another copy of the {} factor {:?}",
                    what, v
                )))
            }
        }
    }
    Ok(())
}

fn solve_or_err(
    columns: &[Vec<BigInt>],
    rhs: &[BigInt],
    log: &mut Vec<SolveRecord>,
) -> Result<Vec<BigRational>> {
    match solve_exact_columns(columns, rhs) {
        SolveOutcome::Unique(x) => {
            log.push(SolveRecord {
                columns: columns.to_vec(),
                rhs: rhs.to_vec(),
                solution: x.clone(),
            });
            Ok(x)
        }
        SolveOutcome::Inconsistent => Err(Error::InconsistentSystem(format!(
            "no solution for right-hand side {:?}",
            rhs
        ))),
        SolveOutcome::Underdetermined => Err(Error::InconsistentSystem(format!(
            "matrix of rank below {} for right-hand side {:?}",
            columns.len(),
            rhs
        ))),
    }
}

/// Execute the constructive inversion: from a short form with its grouping
/// to the normalized characteristic sequence.
pub fn recover(input: &ShortFormInput) -> Result<RecoveryReport> {
    let cr = &input.cr;
    let (d, pairs) = pair_factors(cr)?;
    let g = pairs.len();
    let p = cr.vars;
    let groups = cr.groups;

    // denominator factors not consumed by the pairing
    let mut unpaired: Vec<Vec<BigInt>> = cr.denominator.clone();
    for pair in &pairs {
        remove_copies(&mut unpaired, &pair.alpha, 1, "paired")?;
    }
    debug_assert_eq!(unpaired.len(), d);

    let mut log: Vec<SolveRecord> = Vec::new();
    let mut gammas_raw: Vec<RationalVector> = Vec::new();
    let branch;

    if d == 2 {
        let two = BigInt::from(2);
        let one = BigInt::one();
        let is_cone = p == 1
            && cr.numerator == vec![vec![two.clone()]]
            && cr.denominator == vec![vec![one.clone()], vec![one.clone()], vec![one]];
        if is_cone {
            branch = RecoveryBranch::Dim2QuadraticCone;
            gammas_raw.push(RationalVector::from_pairs(&[(1, 2), (1, 2)]));
        } else {
            branch = RecoveryBranch::Dim2;
            unpaired.sort();
            for pair in &pairs {
                let x = solve_or_err(&unpaired, &pair.alpha, &mut log)?;
                gammas_raw.push(RationalVector::new(x));
            }
        }
    } else {
        match groups.s2 {
            s2 if s2 >= 2 => {
                branch = RecoveryBranch::S2Ge2;
                let i0 = indicator(p, groups.s1 + groups.s2);
                let mult = unpaired.iter().filter(|v| **v == i0).count();
                if mult >= d {
                    return Err(Error::UnknownShape(
                        "every unpaired factor is the origin indicator".into(),
                    ));
                }
                let c = d - mult;
                remove_copies(&mut unpaired, &i0, mult, "origin indicator")?;
                unpaired.sort();
                for pair in &pairs {
                    let x = solve_or_err(&unpaired, &pair.alpha, &mut log)?;
                    let mut coords = x;
                    coords.resize(d, BigRational::zero());
                    gammas_raw.push(RationalVector::new(coords));
                }
                debug_assert_eq!(unpaired.len(), c);
            }
            0 => {
                branch = RecoveryBranch::S2Eq0;
                let i0 = indicator(p, groups.s1);
                let mult = unpaired.iter().filter(|v| **v == i0).count();
                if mult >= d {
                    return Err(Error::UnknownShape(
                        "every unpaired factor is the origin indicator".into(),
                    ));
                }
                remove_copies(&mut unpaired, &i0, mult, "origin indicator")?;
                unpaired.sort();
                // c is d - mult or one more; decide by solvability of the
                // system for the last generator, whose support is full
                let mut columns = unpaired.clone();
                let last_rhs = &pairs[g - 1].alpha;
                let solvable = matches!(
                    solve_exact_columns(&columns, last_rhs),
                    SolveOutcome::Unique(_)
                );
                if !solvable {
                    if mult == 0 {
                        return Err(Error::InconsistentSystem(
                            "no origin-indicator column left to add".into(),
                        ));
                    }
                    columns.push(i0);
                }
                let c = columns.len();
                for pair in &pairs {
                    let x = solve_or_err(&columns, &pair.alpha, &mut log)?;
                    let mut coords = x;
                    coords.resize(d, BigRational::zero());
                    gammas_raw.push(RationalVector::new(coords));
                }
                debug_assert!(c <= d);
            }
            1 => {
                branch = RecoveryBranch::S2Eq1;
                let s1 = groups.s1;
                let c = s1 + 2;
                if c > d {
                    return Err(Error::UnknownShape(format!(
                        "s2 = 1 forces c = s1 + 2 = {}, beyond dimension {}",
                        c, d
                    )));
                }
                if pairs[g - 1].n != BigInt::from(2) {
                    return Err(Error::UnknownShape(
                        "s2 = 1 forces the last characteristic integer to be 2".into(),
                    ));
                }
                // the first-group projections of the unpaired factors single
                // out the diagonal columns: every non-first-group column
                // vanishes there
                let mut diag: Vec<Option<Vec<BigInt>>> = vec![None; s1];
                for v in &unpaired {
                    let support: Vec<usize> = (0..s1).filter(|&k| !v[k].is_zero()).collect();
                    match support.len() {
                        0 => {}
                        1 => {
                            let k = support[0];
                            if diag[k].replace(v.clone()).is_some() {
                                return Err(Error::UnknownShape(format!(
                                    "two unpaired factors on first-group coordinate {}",
                                    k + 1
                                )));
                            }
                        }
                        _ => {
                            return Err(Error::UnknownShape(format!(
                                "unpaired factor {:?} is not diagonal on the first group",
                                v
                            )))
                        }
                    }
                }
                let diag: Vec<Vec<BigInt>> = diag
                    .into_iter()
                    .collect::<Option<Vec<_>>>()
                    .ok_or_else(|| {
                        Error::UnknownShape(
                            "missing a diagonal factor for some first-group coordinate".into(),
                        )
                    })?;
                let half = BigRational::new(BigInt::one(), BigInt::from(2));
                for (j, pair) in pairs.iter().enumerate() {
                    let mut coords = vec![BigRational::zero(); d];
                    for (k, col) in diag.iter().enumerate() {
                        coords[k] = BigRational::new(pair.alpha[k].clone(), col[k].clone());
                    }
                    if j + 1 == g {
                        coords[c - 2] = half.clone();
                        coords[c - 1] = half.clone();
                    }
                    log.push(SolveRecord {
                        columns: diag.clone(),
                        rhs: pair.alpha.clone(),
                        solution: coords.clone(),
                    });
                    gammas_raw.push(RationalVector::new(coords));
                }
            }
            _ => unreachable!(),
        }
    }

    // exponents from generators, then coordinates into lexicographic order
    let ns: Vec<BigInt> = pairs.iter().map(|p| p.n.clone()).collect();
    let lambdas_raw = lambdas_from_gammas(&gammas_raw, &ns);
    let mut order: Vec<usize> = (0..d).collect();
    let column = |lams: &[RationalVector], i: usize| -> Vec<BigRational> {
        lams.iter().map(|l| l.coords[i].clone()).collect()
    };
    order.sort_by_key(|&i| std::cmp::Reverse(column(&lambdas_raw, i)));
    let permute = |v: &RationalVector| -> RationalVector {
        RationalVector::new(order.iter().map(|&i| v.coords[i].clone()).collect())
    };
    let lambdas: Vec<RationalVector> = lambdas_raw.iter().map(permute).collect();

    let sp = validate(&CharacteristicSequence::new(d, lambdas))
        .map_err(|e| Error::NotNormalizable(e.to_string()))?;
    if !sp.normalized {
        return Err(Error::NotNormalizable(
            "recovered exponents fail the normalization condition".into(),
        ));
    }
    if sp.ns != ns {
        return Err(Error::InconsistentSystem(format!(
            "recovered characteristic integers {:?} disagree with the pairing {:?}",
            sp.ns, ns
        )));
    }

    Ok(RecoveryReport {
        d,
        g,
        c: sp.c,
        ns: sp.ns.clone(),
        gammas: sp.gammas.clone(),
        lambdas: sp.char_seq.lambdas.clone(),
        branch,
        solve_log: log,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::charseq::validate;
    use crate::essential::{essential_divisors, Groups};
    use crate::series::{poincare_forward, short_form};

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn vecs(rows: &[&[i64]]) -> Vec<Vec<BigInt>> {
        rows.iter()
            .map(|r| r.iter().map(|&x| bi(x)).collect())
            .collect()
    }

    fn forward_short(d: usize, rows: &[&[(i64, i64)]]) -> ShortFormInput {
        let sp = validate(&CharacteristicSequence::new(
            d,
            rows.iter().map(|r| RationalVector::from_pairs(r)).collect(),
        ))
        .unwrap();
        let ed = essential_divisors(&sp);
        ShortFormInput::new(short_form(&poincare_forward(&sp, &ed).unwrap())).unwrap()
    }

    #[test]
    fn pairing_reference_example() {
        let input = forward_short(3, &[&[(1, 3), (0, 1), (0, 1)], &[(5, 9), (1, 9), (0, 1)]]);
        let (d, pairs) = pair_factors(&input.cr).unwrap();
        assert_eq!(d, 3);
        assert_eq!(pairs.len(), 1);
        assert_eq!(pairs[0].beta, vec![bi(99), bi(36)]);
        assert_eq!(pairs[0].alpha, vec![bi(11), bi(4)]);
        assert_eq!(pairs[0].n, bi(9));
    }

    #[test]
    fn pairing_quadratic_cone_dim2() {
        let input = forward_short(2, &[&[(1, 2), (1, 2)]]);
        let (d, pairs) = pair_factors(&input.cr).unwrap();
        assert_eq!(d, 2);
        assert_eq!(pairs[0].beta, vec![bi(2)]);
        assert_eq!(pairs[0].alpha, vec![bi(1)]);
        assert_eq!(pairs[0].n, bi(2));
    }

    #[test]
    fn pairing_surface_example() {
        // forward data of the exponent (3/2, 1/2)
        let g = Groups {
            s1: 1,
            s2: 0,
            s0: 1,
        };
        let cr =
            CyclotomicRational::new(2, g, vecs(&[&[6, 4]]), vecs(&[&[2, 1], &[0, 1], &[3, 2]]))
                .unwrap();
        let (d, pairs) = pair_factors(&cr).unwrap();
        assert_eq!(d, 2);
        assert_eq!(pairs[0].alpha, vec![bi(3), bi(2)]);
        assert_eq!(pairs[0].n, bi(2));
    }

    #[test]
    fn pairing_errors() {
        let g = Groups {
            s1: 0,
            s2: 0,
            s0: 2,
        };
        // incomparable numerator vectors
        let cr = CyclotomicRational::new(
            2,
            g,
            vecs(&[&[1, 2], &[2, 1]]),
            vecs(&[&[1, 1], &[1, 1], &[1, 1], &[1, 1]]),
        )
        .unwrap();
        assert!(matches!(pair_factors(&cr), Err(Error::AmbiguousOrder(_))));

        // no factor on the ray of the numerator
        let cr =
            CyclotomicRational::new(2, g, vecs(&[&[2, 3]]), vecs(&[&[1, 2], &[1, 1], &[0, 1]]))
                .unwrap();
        assert!(matches!(pair_factors(&cr), Err(Error::NoPairing(_))));
    }

    #[test]
    fn recover_reference_example() {
        // the short form recovers the *normalized* exponents, which differ
        // from the non-normalized projection the series was built from
        let input = forward_short(3, &[&[(1, 3), (0, 1), (0, 1)], &[(5, 9), (1, 9), (0, 1)]]);
        let report = recover(&input).unwrap();
        assert_eq!(report.d, 3);
        assert_eq!(report.g, 1);
        assert_eq!(report.c, 2);
        assert_eq!(report.ns, vec![bi(9)]);
        assert_eq!(
            report.lambdas,
            vec![RationalVector::from_pairs(&[(11, 3), (1, 9), (0, 1)])]
        );
        assert_eq!(report.branch, RecoveryBranch::S2Eq0);
    }

    #[test]
    fn recover_quadratic_cones() {
        let input = forward_short(2, &[&[(1, 2), (1, 2)]]);
        let report = recover(&input).unwrap();
        assert_eq!(report.branch, RecoveryBranch::Dim2QuadraticCone);
        assert_eq!(
            report.lambdas,
            vec![RationalVector::from_pairs(&[(1, 2), (1, 2)])]
        );

        for d in [3usize, 4, 5] {
            let mut row = vec![(1i64, 2i64), (1, 2)];
            row.resize(d, (0, 1));
            let input = forward_short(d, &[&row]);
            let report = recover(&input).unwrap();
            assert_eq!(report.branch, RecoveryBranch::S2Eq1);
            assert_eq!(report.c, 2);
            assert_eq!(report.ns, vec![bi(2)]);
            let mut expected = vec![(1i64, 2i64), (1, 2)];
            expected.resize(d, (0, 1));
            assert_eq!(report.lambdas, vec![RationalVector::from_pairs(&expected)]);
        }
    }

    #[test]
    fn recover_surface_roundtrip() {
        let input = forward_short(2, &[&[(3, 2), (1, 2)]]);
        let report = recover(&input).unwrap();
        assert_eq!(report.branch, RecoveryBranch::Dim2);
        assert_eq!(
            report.lambdas,
            vec![RationalVector::from_pairs(&[(3, 2), (1, 2)])]
        );
        assert_eq!(report.ns, vec![bi(2)]);
    }

    #[test]
    fn recover_s2_ge_2_roundtrip() {
        // two essential valuations over the codimension-two component
        let input = forward_short(3, &[&[(1, 3), (1, 3), (0, 1)]]);
        let report = recover(&input).unwrap();
        assert_eq!(report.branch, RecoveryBranch::S2Ge2);
        assert_eq!(report.c, 2);
        assert_eq!(
            report.lambdas,
            vec![RationalVector::from_pairs(&[(1, 3), (1, 3), (0, 1)])]
        );
    }

    #[test]
    fn recover_s2_eq_0_with_indicator_column() {
        // here <w, e_c> coincides with the origin indicator, so the first
        // solve is inconsistent and the indicator is added as a column
        let input = forward_short(3, &[&[(3, 2), (1, 2), (0, 1)]]);
        let report = recover(&input).unwrap();
        assert_eq!(report.branch, RecoveryBranch::S2Eq0);
        assert_eq!(report.c, 2);
        assert_eq!(
            report.lambdas,
            vec![RationalVector::from_pairs(&[(3, 2), (1, 2), (0, 1)])]
        );
    }

    #[test]
    fn recover_s2_eq_1_with_entangled_minimals() {
        // three origin minimals, none of them all-ones on the second group;
        // the diagonal projection still recovers the exponent
        let input = forward_short(4, &[&[(3, 2), (1, 2), (1, 2), (0, 1)]]);
        let report = recover(&input).unwrap();
        assert_eq!(report.branch, RecoveryBranch::S2Eq1);
        assert_eq!(report.c, 3);
        assert_eq!(
            report.lambdas,
            vec![RationalVector::from_pairs(&[
                (3, 2),
                (1, 2),
                (1, 2),
                (0, 1)
            ])]
        );
    }

    #[test]
    fn recover_rejects_non_short_input() {
        let g = Groups {
            s1: 0,
            s2: 0,
            s0: 1,
        };
        let cr =
            CyclotomicRational::new(1, g, vecs(&[&[2]]), vecs(&[&[2], &[1], &[1], &[1]])).unwrap();
        assert!(matches!(
            ShortFormInput::new(cr),
            Err(Error::UnknownShape(_))
        ));
    }
}
