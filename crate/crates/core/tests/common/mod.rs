//! Seeded random generator of valid normalized characteristic sequences,
//! stratified by the `(s1, s2)` shape so every recovery branch can be
//! exercised on demand.  Deterministic across runs.

// shared between test targets; not every target touches every helper
#![allow(dead_code)]

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

use quasiord::charseq::{validate, CharacteristicSequence, SemigroupPresentation};
use quasiord::essential::{essential_divisors, EssentialDivisors};
use quasiord::rat::RationalVector;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BranchTarget {
    S2Ge2,
    S2Eq0,
    S2Eq1,
    Dim2,
}

pub struct Sampled {
    pub cs: CharacteristicSequence,
    pub sp: SemigroupPresentation,
    pub ed: EssentialDivisors,
    pub branch: BranchTarget,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn classify(sp: &SemigroupPresentation, ed: &EssentialDivisors) -> BranchTarget {
    if sp.dim() == 2 {
        BranchTarget::Dim2
    } else {
        match ed.groups.s2 {
            0 => BranchTarget::S2Eq0,
            1 => BranchTarget::S2Eq1,
            _ => BranchTarget::S2Ge2,
        }
    }
}

fn max_coordinate_denominator(cs: &CharacteristicSequence) -> BigInt {
    let mut m = BigInt::one();
    for l in &cs.lambdas {
        for x in &l.coords {
            if x.denom() > &m {
                m = x.denom().clone();
            }
        }
    }
    m
}

/// Propose a candidate matrix of exponents for the requested shape.  The
/// candidate may still fail validation or classify differently; `sample`
/// retries until it matches.
fn propose(
    r: &mut ChaCha8Rng,
    target: BranchTarget,
    max_dim: usize,
    force_axial_first: bool,
) -> CharacteristicSequence {
    // shape parameters
    let (d, s1, fresh, n_g): (usize, usize, usize, i64) = match target {
        BranchTarget::Dim2 => (2, 0, 0, 0),
        BranchTarget::S2Eq0 => {
            let d = r.gen_range(3..=max_dim);
            let fresh = r.gen_range(0..=1usize);
            let s1 = r.gen_range(1..=(d - fresh).max(1));
            (d, s1, fresh, [2, 3, 4, 6][r.gen_range(0..4)])
        }
        BranchTarget::S2Eq1 => {
            let d = r.gen_range(3..=max_dim);
            let s1 = r.gen_range(0..=(d - 2));
            (d, s1, 2, 2)
        }
        BranchTarget::S2Ge2 => {
            let d = r.gen_range(3..=max_dim);
            if d >= 4 && r.gen_bool(0.3) {
                let s1 = r.gen_range(0..=(d - 3));
                (d, s1, 3, [2, 3][r.gen_range(0..2)])
            } else {
                let s1 = r.gen_range(0..=(d - 2));
                (d, s1, 2, [3, 4, 6][r.gen_range(0..3)])
            }
        }
    };

    if target == BranchTarget::Dim2 {
        return propose_surface(r, force_axial_first);
    }

    let c = s1 + fresh;
    // g = 1 whenever there is no codimension-one column to grow along; an
    // axial first exponent with fresh columns needs at least two exponents
    let mut g = if s1 == 0 { 1 } else { r.gen_range(1..=3usize) };
    if force_axial_first && fresh > 0 && g == 1 && s1 > 0 {
        g = 2;
    }
    let mut lambdas = vec![vec![BigRational::zero(); d]; g];

    // fresh columns: zero until the last exponent, then 1/n_g
    for x in &mut lambdas[g - 1][s1..c] {
        *x = rat(1, n_g);
    }

    // codimension-one columns
    for i in 0..s1 {
        let axial_zero = force_axial_first && i > 0;
        let mut val = if axial_zero {
            BigRational::zero()
        } else {
            // start high enough that an axial first exponent stays
            // normalized
            let q = [1, 2, 3, 4, 6][r.gen_range(0..5)];
            rat(r.gen_range(q + 1..=3 * q), q)
        };
        lambdas[0][i] = val.clone();
        for row in lambdas.iter_mut().take(g - 1).skip(1) {
            if r.gen_bool(0.6) {
                let q = [1, 2, 3, 6][r.gen_range(0..4)];
                val += rat(r.gen_range(if q == 1 { 0 } else { 1 }..=q), q);
            }
            row[i] = val.clone();
        }
        if g > 1 {
            // last step moves by multiples of 1/n_g so the final
            // characteristic integer is exactly n_g
            let bump = rat(r.gen_range(0..=n_g), n_g);
            lambdas[g - 1][i] = val + bump;
        }
    }

    // keep exponents strictly increasing: fresh columns already move the
    // last step, earlier steps need some codimension-one movement
    for j in 0..g.saturating_sub(1) {
        let le = lambdas[j].iter().zip(&lambdas[j + 1]).all(|(a, b)| a <= b);
        let ne = lambdas[j] != lambdas[j + 1];
        if !(le && ne) && s1 > 0 {
            let i = r.gen_range(0..s1);
            let q = [2, 3, 6][r.gen_range(0..3)];
            let bump = rat(r.gen_range(1..=q), q);
            for row in lambdas.iter_mut().skip(j + 1) {
                row[i] += &bump;
            }
        }
    }

    // sort coordinate columns into decreasing lexicographic order
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        let col = |i: usize| -> Vec<&BigRational> { lambdas.iter().map(|l| &l[i]).collect() };
        col(b).cmp(&col(a))
    });
    let rows: Vec<RationalVector> = lambdas
        .iter()
        .map(|l| RationalVector::new(order.iter().map(|&i| l[i].clone()).collect()))
        .collect();
    CharacteristicSequence::new(d, rows)
}

fn propose_surface(r: &mut ChaCha8Rng, force_axial_first: bool) -> CharacteristicSequence {
    let g = r.gen_range(1..=2usize);
    let q1 = [2, 3, 4, 6][r.gen_range(0..4)];
    let first = if force_axial_first {
        vec![rat(r.gen_range(q1 + 1..=3 * q1), q1), BigRational::zero()]
    } else {
        let q2 = [1, 2, 3, 4, 6][r.gen_range(0..5)];
        vec![
            rat(r.gen_range(1..=2 * q1), q1),
            rat(r.gen_range(0..=q2), q2),
        ]
    };
    let mut lambdas = vec![first];
    for _ in 1..g {
        let prev = lambdas.last().unwrap().clone();
        let q = [2, 3, 6][r.gen_range(0..3)];
        let bump = [rat(r.gen_range(1..=q), q), rat(r.gen_range(0..=1), 1)];
        lambdas.push(vec![&prev[0] + &bump[0], &prev[1] + &bump[1]]);
    }
    let mut order = [0usize, 1];
    let col = |lams: &[Vec<BigRational>], i: usize| -> Vec<BigRational> {
        lams.iter().map(|l| l[i].clone()).collect()
    };
    if col(&lambdas, 0) < col(&lambdas, 1) {
        order = [1, 0];
    }
    CharacteristicSequence::new(
        2,
        lambdas
            .iter()
            .map(|l| RationalVector::new(order.iter().map(|&i| l[i].clone()).collect()))
            .collect(),
    )
}

/// Draw one valid normalized instance of the requested branch shape with
/// all coordinate denominators at most 6.
pub fn sample(r: &mut ChaCha8Rng, target: BranchTarget, max_dim: usize) -> Sampled {
    sample_opts(r, target, max_dim, false)
}

pub fn sample_opts(
    r: &mut ChaCha8Rng,
    target: BranchTarget,
    max_dim: usize,
    force_axial_first: bool,
) -> Sampled {
    for _ in 0..10_000 {
        let cs = propose(r, target, max_dim, force_axial_first);
        if max_coordinate_denominator(&cs) > BigInt::from(6) {
            continue;
        }
        let Ok(sp) = validate(&cs) else { continue };
        if !sp.normalized {
            continue;
        }
        let ed = essential_divisors(&sp);
        if ed.p() > 9 {
            continue;
        }
        if classify(&sp, &ed) != target {
            continue;
        }
        if force_axial_first && !sp.char_seq.lambdas[0].coords[1].is_zero() {
            continue;
        }
        return Sampled {
            cs,
            sp,
            ed,
            branch: target,
        };
    }
    panic!("instance generation failed for {:?}", target);
}

/// A deterministic corpus cycling through all four branch shapes; every
/// fifth instance additionally forces an axial first exponent so that both
/// zeta cases show up in quantity.
pub fn stratified_corpus(seed: u64, total: usize, max_dim: usize) -> Vec<Sampled> {
    let targets = [
        BranchTarget::S2Eq0,
        BranchTarget::S2Ge2,
        BranchTarget::S2Eq1,
        BranchTarget::Dim2,
    ];
    let mut r = rng(seed);
    (0..total)
        .map(|i| {
            let target = targets[i % targets.len()];
            let force_axial =
                i % 5 == 4 && matches!(target, BranchTarget::Dim2 | BranchTarget::S2Eq0);
            sample_opts(&mut r, target, max_dim, force_axial)
        })
        .collect()
}

/// Small per-coordinate bounds whose total stays at or below `total`, with
/// the box volume kept tame for dense expansion.
pub fn sample_bounds(r: &mut ChaCha8Rng, p: usize, total: usize) -> Vec<usize> {
    let mut bounds = vec![0usize; p];
    let mut budget = total.min(6 + 2 * p);
    let mut volume = 1usize;
    for (k, b) in bounds.iter_mut().enumerate() {
        let cap = if k < 2 { 6 } else { 1 };
        let take = r.gen_range(0..=cap.min(budget));
        if volume.saturating_mul(take + 1) > 20_000 {
            continue;
        }
        *b = take;
        volume *= take + 1;
        budget = budget.saturating_sub(take);
    }
    debug_assert!(bounds.iter().sum::<usize>() <= total);
    bounds
}
