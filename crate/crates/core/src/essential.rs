//! Essential divisorial valuations and the essential matrix.
//!
//! The singular locus of the germ has components of codimension one or two
//! only, read off the exponents coordinatewise.  Essential valuations come in
//! three groups: the primitive axis vectors `m_i e_i` over codimension-one
//! components, `n_g - 1` vectors supported on each codimension-two pair, and
//! the componentwise-minimal interior points of the lattice `N` over the
//! origin.  For surfaces (`d = 2`) the codimension-two components coincide
//! with the origin, so only two groups remain and the interior minimals carry
//! all of them.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::charseq::SemigroupPresentation;
use crate::error::{Error, Result};
use crate::lattice::{IntegerMatrix, LatticeBasis};

/// Sizes of the three groups of essential valuations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Groups {
    pub s1: usize,
    pub s2: usize,
    pub s0: usize,
}

impl Groups {
    pub fn total(&self) -> usize {
        self.s1 + self.s2 + self.s0
    }
}

/// Irreducible components of the singular locus, as 1-based coordinate
/// indices: `codim1` holds `i` with component `S  {x_i = 0}`, `codim2`
/// holds pairs `(i, j)` with component `S  {x_i = x_j = 0}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularLocus {
    pub codim1: Vec<usize>,
    pub codim2: Vec<(usize, usize)>,
}

/// The grouped sequence `w_1 .. w_p` of essential valuations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialDivisors {
    pub dim: usize,
    pub ws: Vec<Vec<BigInt>>,
    pub groups: Groups,
    /// For `d = 2` the codimension-two and origin valuations coincide; all
    /// interior valuations sit in the origin group and `s2 = 0`.
    pub two_group_mode: bool,
}

impl EssentialDivisors {
    pub fn p(&self) -> usize {
        self.ws.len()
    }

    /// Sum of all essential vectors, the canonical interior weight used for
    /// one-variable specializations.
    pub fn weight_sum(&self) -> Vec<BigInt> {
        let mut b = vec![BigInt::zero(); self.dim];
        for w in &self.ws {
            for (bi, wi) in b.iter_mut().zip(w) {
                *bi += wi;
            }
        }
        b
    }
}

/// The `p x d` matrix whose rows are the essential vectors, with the outcome
/// of the block-structure checks.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EssentialMatrix {
    pub matrix: IntegerMatrix,
    pub report: StructureReport,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    /// `(check name, passed)` for every check that applies.
    pub checks: Vec<(String, bool)>,
}

impl StructureReport {
    pub fn all_ok(&self) -> bool {
        self.checks.iter().all(|(_, ok)| *ok)
    }
}

/// Components of the singular locus.  `Z_i` for `i <= c` is a component
/// unless `lambda_1^i = .. = lambda_{g-1}^i = 0` and `lambda_g^i = 1/n_g`;
/// `Z_{i,j}` is a component exactly when neither `Z_i` nor `Z_j` is one.
pub fn singular_locus(sp: &SemigroupPresentation) -> SingularLocus {
    let g = sp.g();
    let n_g = sp.n_last();
    let inv_ng = num_rational::BigRational::new(BigInt::one(), n_g.clone());
    let mut codim1 = Vec::new();
    for i in 0..sp.c {
        let earlier_zero = sp.char_seq.lambdas[..g - 1]
            .iter()
            .all(|l| l.coords[i].is_zero());
        let last_is_inv = sp.char_seq.lambdas[g - 1].coords[i] == inv_ng;
        if !(earlier_zero && last_is_inv) {
            codim1.push(i + 1);
        }
    }
    let mut codim2 = Vec::new();
    for i in 1..=sp.c {
        for j in i + 1..=sp.c {
            if !codim1.contains(&i) && !codim1.contains(&j) {
                codim2.push((i, j));
            }
        }
    }
    SingularLocus { codim1, codim2 }
}

/// Componentwise-minimal elements of `{ v in N : v_i >= 1 for all i }`.
/// The box `prod [1, m_i]` is exhaustive: if `v_i > m_i` then `v - m_i e_i`
/// is a smaller interior point of `N`.  Output is an antichain, sorted
/// lexicographically.
pub fn essential_over_origin(n: &LatticeBasis, m: &[BigInt]) -> Vec<Vec<BigInt>> {
    let lo = vec![BigInt::one(); m.len()];
    let mut pts = n.points_in_box(&lo, m);
    pts.sort_by_key(|p| (p.iter().sum::<BigInt>(), p.clone()));
    let mut minimal: Vec<Vec<BigInt>> = Vec::new();
    for p in pts {
        if !minimal
            .iter()
            .any(|q| q.iter().zip(&p).all(|(qi, pi)| qi <= pi))
        {
            minimal.push(p);
        }
    }
    minimal.sort();
    minimal
}

/// Assemble the full grouped sequence of essential valuations.
pub fn essential_over_singular(
    sp: &SemigroupPresentation,
    sl: &SingularLocus,
) -> EssentialDivisors {
    let d = sp.dim();
    let mut ws: Vec<Vec<BigInt>> = Vec::new();
    for &i in &sl.codim1 {
        let mut u = vec![BigInt::zero(); d];
        u[i - 1] = sp.m[i - 1].clone();
        ws.push(u);
    }
    let s1 = sl.codim1.len();
    let mut s2 = 0usize;
    if d > 2 {
        let n_g: u64 = u64::try_from(sp.n_last()).expect("characteristic integer fits u64");
        for &(i, j) in &sl.codim2 {
            for k in 1..n_g {
                let mut w = vec![BigInt::zero(); d];
                w[i - 1] = BigInt::from(k);
                w[j - 1] = BigInt::from(n_g - k);
                ws.push(w);
                s2 += 1;
            }
        }
    }
    let origin = essential_over_origin(&sp.lattice_n, &sp.m);
    let s0 = origin.len();
    ws.extend(origin);
    debug_assert!(s0 >= 1);
    debug_assert!(ws.iter().all(|w| sp.lattice_n.member(w).unwrap()));
    EssentialDivisors {
        dim: d,
        ws,
        groups: Groups { s1, s2, s0 },
        two_group_mode: d == 2,
    }
}

/// Convenience: singular locus and essential valuations in one step.
pub fn essential_divisors(sp: &SemigroupPresentation) -> EssentialDivisors {
    essential_over_singular(sp, &singular_locus(sp))
}

/// Stack the essential vectors into the `p x d` matrix of pairings and run
/// the block-structure checks.  A failed check on a normalized presentation
/// is an internal-consistency error; on a non-normalized presentation it is
/// only recorded in the report.
pub fn essential_matrix(
    ed: &EssentialDivisors,
    sp: &SemigroupPresentation,
) -> Result<EssentialMatrix> {
    let d = ed.dim;
    let matrix = IntegerMatrix::from_rows(ed.ws.clone(), d);
    let mut checks: Vec<(String, bool)> = Vec::new();
    let Groups { s1, s2, s0: _ } = ed.groups;
    let p = ed.p();
    let c = sp.c;

    let submatrix_rank = |rows: std::ops::Range<usize>, cols: std::ops::Range<usize>| {
        let sub = IntegerMatrix::from_rows(
            rows.clone()
                .map(|i| cols.clone().map(|j| matrix[(i, j)].clone()).collect())
                .collect(),
            cols.len(),
        );
        sub.rank()
    };

    if d > 2 {
        let diag_ok = (0..s1).all(|i| (0..s1).all(|j| (i == j) != matrix[(i, j)].is_zero()));
        checks.push(("diagonal block nonsingular".into(), diag_ok));

        let zero_ok = (s1..s1 + s2).all(|i| {
            (0..s1).all(|j| matrix[(i, j)].is_zero()) && (c..d).all(|j| matrix[(i, j)].is_zero())
        }) && (0..s1).all(|i| (s1..d).all(|j| matrix[(i, j)].is_zero()));
        checks.push(("zero blocks".into(), zero_ok));

        let ones_ok = (s1 + s2..p).all(|i| (c..d).all(|j| matrix[(i, j)].is_one()));
        checks.push(("all-ones block on trailing columns".into(), ones_ok));

        if s2 != 1 && c >= s1 + 2 {
            let rank = submatrix_rank(s1..s1 + s2, s1..c);
            checks.push(("codimension-two block has full rank".into(), rank == c - s1));
        }
        if s2 != 1 {
            let rank = submatrix_rank(0..p, 0..c);
            checks.push(("leading columns have full rank".into(), rank == c));
        }
    } else {
        // surfaces: with the exception of the quadratic cone (p = 1), the
        // matrix must have rank 2
        if p > 1 {
            let rank = submatrix_rank(0..p, 0..d);
            checks.push(("surface matrix nonsingular".into(), rank == 2));
        } else {
            checks.push(("quadratic cone exception".into(), true));
        }
    }

    let report = StructureReport { checks };
    if sp.normalized && !report.all_ok() {
        let failed = report
            .checks
            .iter()
            .filter(|(_, ok)| !ok)
            .map(|(name, _)| name.clone())
            .collect::<Vec<_>>()
            .join(", ");
        return Err(Error::BlockStructureViolation(failed));
    }
    Ok(EssentialMatrix { matrix, report })
}
