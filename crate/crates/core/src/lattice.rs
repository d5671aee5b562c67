//! Exact integer/rational linear algebra: Hermite normal forms, lattice
//! bases with a denominator scale, indices of nested lattices, dual
//! sublattices cut out by integrality conditions, and exact linear solves.
//!
//! A lattice is stored as `(1/scale) * rowspan(basis)` where `basis` is an
//! integer matrix in row Hermite normal form.  The scale is minimal, so equal
//! lattices have identical representations and all outputs are deterministic.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::rat::RationalVector;

/// Dense matrix of arbitrary-precision integers, row major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntegerMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zero(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zero(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>, cols: usize) -> Self {
        let n = rows.len();
        let mut data = Vec::with_capacity(n * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged row");
            data.extend(r);
        }
        IntegerMatrix {
            rows: n,
            cols,
            data,
        }
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                .collect(),
            cols,
        )
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zero(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            let ai = a * self.cols + j;
            let bi = b * self.cols + j;
            self.data.swap(ai, bi);
        }
    }

    fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -std::mem::take(&mut self[(r, j)]);
            self[(r, j)] = v;
        }
    }

    /// `row[a] -= q * row[b]`
    fn sub_scaled_row(&mut self, a: usize, b: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let t = &self[(b, j)] * q;
            self[(a, j)] -= t;
        }
    }

    /// Row Hermite normal form with zero rows removed.  The profile is lower
    /// triangular: pivot columns strictly increase down the rows, each pivot
    /// is the last nonzero entry of its row and positive, and the entries
    /// below a pivot are reduced into `[0, pivot)`.  This is the canonical
    /// basis used for all lattice output; on a full-rank square input it is
    /// lower triangular with positive diagonal.
    pub fn hermite_normal_form(&self) -> IntegerMatrix {
        let (h, _, rank) = self.hnf_in_place(false);
        let keep = h.rows - rank;
        IntegerMatrix::from_rows(h.row_vecs().into_iter().skip(keep).collect(), self.cols)
    }

    /// Hermite normal form together with a unimodular transform `u` such that
    /// `u * self` equals the zero-row padded normal form (zero rows on top),
    /// and the rank.  The first `rows - rank` rows of `u` span the left
    /// kernel of `self`.
    pub fn hnf_with_transform(&self) -> (IntegerMatrix, IntegerMatrix, usize) {
        self.hnf_in_place(true)
    }

    fn hnf_in_place(&self, with_transform: bool) -> (IntegerMatrix, IntegerMatrix, usize) {
        let mut m = self.clone();
        let mut u = if with_transform {
            IntegerMatrix::identity(self.rows)
        } else {
            IntegerMatrix::zero(0, 0)
        };
        // `avail` rows 0..avail are still unassigned; pivots fill bottom-up,
        // columns are processed right to left
        let mut avail = m.rows;
        for col in (0..m.cols).rev() {
            if avail == 0 {
                break;
            }
            loop {
                // smallest nonzero entry in this column among unassigned rows
                let mut best: Option<usize> = None;
                for r in 0..avail {
                    if !m[(r, col)].is_zero()
                        && best.is_none_or(|b| m[(r, col)].abs() < m[(b, col)].abs())
                    {
                        best = Some(r);
                    }
                }
                let Some(r0) = best else { break };
                let prow = avail - 1;
                m.swap_rows(prow, r0);
                if with_transform {
                    u.swap_rows(prow, r0);
                }
                if m[(prow, col)].is_negative() {
                    m.negate_row(prow);
                    if with_transform {
                        u.negate_row(prow);
                    }
                }
                let pivot = m[(prow, col)].clone();
                let mut clean = true;
                for r in 0..prow {
                    if m[(r, col)].is_zero() {
                        continue;
                    }
                    let q = m[(r, col)].div_floor(&pivot);
                    m.sub_scaled_row(r, prow, &q);
                    if with_transform {
                        u.sub_scaled_row(r, prow, &q);
                    }
                    if !m[(r, col)].is_zero() {
                        clean = false;
                    }
                }
                if clean {
                    // reduce the entries below the pivot into [0, pivot)
                    for r in prow + 1..m.rows {
                        let q = m[(r, col)].div_floor(&pivot);
                        m.sub_scaled_row(r, prow, &q);
                        if with_transform {
                            u.sub_scaled_row(r, prow, &q);
                        }
                    }
                    avail -= 1;
                    break;
                }
            }
        }
        let rank = m.rows - avail;
        (m, u, rank)
    }

    pub fn rank(&self) -> usize {
        self.hnf_in_place(false).2
    }

    /// Signed determinant of a square matrix, by fraction-free elimination.
    pub fn det(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut m = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[(k, k)].is_zero() {
                let swap = (k + 1..n).find(|&r| !m[(r, k)].is_zero());
                match swap {
                    Some(r) => {
                        m.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                    m[(i, j)] = t.div_floor(&prev);
                }
                m[(i, k)] = BigInt::zero();
            }
            prev = m[(k, k)].clone();
        }
        sign * m[(n - 1, n - 1)].clone()
    }

    /// Basis of the right kernel `{ z : self * z = 0 }` over the integers.
    pub fn right_kernel(&self) -> IntegerMatrix {
        let t = self.transpose();
        let (_, u, rank) = t.hnf_with_transform();
        IntegerMatrix::from_rows(
            u.row_vecs().into_iter().take(t.rows - rank).collect(),
            self.cols,
        )
    }
}

impl std::ops::Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Position of a lattice relative to `Z^d`, kept for reporting.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LatticeKind {
    /// Contained in `Z^d` (scale is 1).
    SublatticeOfStandard,
    /// Contains `Z^d` with finite index.
    OverlatticeOfStandard,
    General,
}

/// A finitely generated lattice in `Q^d`, stored as a scaled integer basis in
/// Hermite normal form.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeBasis {
    dim: usize,
    basis: IntegerMatrix,
    scale: BigInt,
    kind: LatticeKind,
}

impl LatticeBasis {
    /// `Z^d` itself.
    pub fn standard(dim: usize) -> Self {
        LatticeBasis {
            dim,
            basis: IntegerMatrix::identity(dim),
            scale: BigInt::one(),
            kind: LatticeKind::SublatticeOfStandard,
        }
    }

    pub fn from_integer_rows(rows: Vec<Vec<BigInt>>, dim: usize) -> Self {
        Self::from_scaled(IntegerMatrix::from_rows(rows, dim), BigInt::one(), dim)
    }

    /// Lattice generated by rational row vectors: denominators are cleared to
    /// a common scale and the integer span is put in normal form.
    pub fn from_rational_rows(rows: &[RationalVector], dim: usize) -> Self {
        let mut scale = BigInt::one();
        for r in rows {
            assert_eq!(r.dim(), dim, "generator dimension mismatch");
            scale = scale.lcm(&r.denominator_lcm());
        }
        let int_rows: Vec<Vec<BigInt>> = rows
            .iter()
            .map(|r| {
                r.scale_int(&scale)
                    .to_integer_vec()
                    .expect("denominators cleared by lcm")
            })
            .collect();
        Self::from_scaled(IntegerMatrix::from_rows(int_rows, dim), scale, dim)
    }

    fn from_scaled(generators: IntegerMatrix, scale: BigInt, dim: usize) -> Self {
        let mut basis = generators.hermite_normal_form();
        let mut scale = scale;
        // make the scale minimal so equal lattices compare equal
        let mut content = scale.clone();
        for i in 0..basis.rows {
            for j in 0..basis.cols {
                content = content.gcd(&basis[(i, j)]);
                if content.is_one() {
                    break;
                }
            }
        }
        if !content.is_one() {
            for i in 0..basis.rows {
                for j in 0..basis.cols {
                    let v = basis[(i, j)].clone() / &content;
                    basis[(i, j)] = v;
                }
            }
            scale /= &content;
        }
        let mut lat = LatticeBasis {
            dim,
            basis,
            scale,
            kind: LatticeKind::General,
        };
        lat.kind = if lat.scale.is_one() {
            LatticeKind::SublatticeOfStandard
        } else if (0..dim).all(|i| lat.contains(&RationalVector::unit(dim, i))) {
            LatticeKind::OverlatticeOfStandard
        } else {
            LatticeKind::General
        };
        lat
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.basis.rows
    }

    pub fn is_full_rank(&self) -> bool {
        self.rank() == self.dim
    }

    pub fn kind(&self) -> LatticeKind {
        self.kind
    }

    pub fn basis_matrix(&self) -> &IntegerMatrix {
        &self.basis
    }

    pub fn scale(&self) -> &BigInt {
        &self.scale
    }

    /// Basis rows as rational vectors (integer rows divided by the scale).
    pub fn rational_rows(&self) -> Vec<RationalVector> {
        let s = BigRational::from(self.scale.clone());
        self.basis
            .row_vecs()
            .into_iter()
            .map(|r| {
                RationalVector::new(r.into_iter().map(|x| BigRational::from(x) / &s).collect())
            })
            .collect()
    }

    /// Covolume `|det| / scale^d` of a full-rank lattice.
    pub fn covolume(&self) -> BigRational {
        assert!(self.is_full_rank(), "covolume of a degenerate lattice");
        let det = self.basis.det().abs();
        let mut denom = BigInt::one();
        for _ in 0..self.dim {
            denom *= &self.scale;
        }
        BigRational::new(det, denom)
    }

    /// Membership of a rational point.
    pub fn contains(&self, v: &RationalVector) -> bool {
        assert_eq!(v.dim(), self.dim, "dimension mismatch");
        let scaled = v.scale_int(&self.scale);
        match scaled.to_integer_vec() {
            Some(w) => solve_in_hnf(&self.basis, &w),
            None => false,
        }
    }

    /// Membership of an integer point; the only fallible part is the
    /// dimension check.
    pub fn member(&self, v: &[BigInt]) -> Result<bool> {
        if v.len() != self.dim {
            return Err(Error::DimensionMismatch(format!(
                "vector has length {}, lattice dimension is {}",
                v.len(),
                self.dim
            )));
        }
        Ok(self.contains(&RationalVector::from_integer_vec(v)))
    }

    /// All lattice points `v` with `lo <= v <= hi` coordinatewise, in
    /// deterministic order.  Requires a full-rank lattice with scale 1; the
    /// triangular shape of the normal form turns the search into nested
    /// pivot-bounded loops, so the cost is proportional to points visited.
    pub fn points_in_box(&self, lo: &[BigInt], hi: &[BigInt]) -> Vec<Vec<BigInt>> {
        assert!(self.is_full_rank() && self.scale.is_one());
        assert_eq!(lo.len(), self.dim);
        assert_eq!(hi.len(), self.dim);
        let rows = self.basis.row_vecs();
        let mut out = Vec::new();
        let mut current = vec![BigInt::zero(); self.dim];
        self.points_rec(&rows, lo, hi, self.dim, &mut current, &mut out);
        out
    }

    // The basis is lower triangular, so coordinate `level` is decided by the
    // rows `level..dim` alone; recurse from the last coordinate down.
    fn points_rec(
        &self,
        rows: &[Vec<BigInt>],
        lo: &[BigInt],
        hi: &[BigInt],
        level: usize,
        current: &mut [BigInt],
        out: &mut Vec<Vec<BigInt>>,
    ) {
        if level == 0 {
            out.push(current.to_vec());
            return;
        }
        let level = level - 1;
        let pivot = &rows[level][level];
        // lo[level] <= current[level] + x * pivot <= hi[level]
        let xmin = ceil_div(&(&lo[level] - &current[level]), pivot);
        let xmax = (&hi[level] - &current[level]).div_floor(pivot);
        let mut x = xmin;
        while x <= xmax {
            let mut next = current.to_vec();
            for (j, entry) in rows[level].iter().enumerate().take(level + 1) {
                next[j] += entry * &x;
            }
            self.points_rec(rows, lo, hi, level, &mut next, out);
            x += 1;
        }
    }
}

fn ceil_div(a: &BigInt, b: &BigInt) -> BigInt {
    -(-a).div_floor(b)
}

/// Decide `target in rowspan(basis)` over the integers for a basis in row
/// HNF.  Rows are processed last to first, so each pivot (the trailing
/// nonzero entry of its row) is met before any earlier row can touch its
/// column.
fn solve_in_hnf(basis: &IntegerMatrix, target: &[BigInt]) -> bool {
    let mut t = target.to_vec();
    for i in (0..basis.rows).rev() {
        let Some(pivot_col) = (0..basis.cols).rev().find(|&j| !basis[(i, j)].is_zero()) else {
            continue;
        };
        let pivot = &basis[(i, pivot_col)];
        let (q, r) = t[pivot_col].div_rem(pivot);
        if !r.is_zero() {
            return false;
        }
        for j in 0..=pivot_col {
            let s = &basis[(i, j)] * &q;
            t[j] -= s;
        }
    }
    t.iter().all(|x| x.is_zero())
}

/// Canonical Hermite basis of the integer row span of `generators`.
/// All-zero input yields an empty basis.
pub fn hermite_normal_form(generators: &IntegerMatrix) -> LatticeBasis {
    LatticeBasis::from_scaled(generators.clone(), BigInt::one(), generators.cols)
}

/// Index `[sup : sub]` of nested full-rank lattices.
pub fn lattice_index(sub: &LatticeBasis, sup: &LatticeBasis) -> Result<BigInt> {
    if sub.dim() != sup.dim() {
        return Err(Error::DimensionMismatch(format!(
            "lattice dimensions {} and {}",
            sub.dim(),
            sup.dim()
        )));
    }
    if !sub.is_full_rank() || !sup.is_full_rank() {
        return Err(Error::DimensionMismatch(
            "lattices must be full rank".into(),
        ));
    }
    for row in sub.rational_rows() {
        if !sup.contains(&row) {
            return Err(Error::NotASublattice(format!(
                "generator {} is outside",
                row
            )));
        }
    }
    let idx = sub.covolume() / sup.covolume();
    debug_assert!(idx.is_integer());
    Ok(idx.to_integer())
}

/// The lattice `N = { v in Z^d : <v, gamma_j> in Z for all j }`, i.e. the
/// integral vectors pairing integrally with every generator.  Computed by
/// clearing denominators to a common `D` and solving `A v = 0 (mod D)`
/// through an integer kernel.
pub fn dual_sublattice(gammas: &[RationalVector], dim: usize) -> LatticeBasis {
    let mut scale = BigInt::one();
    for g in gammas {
        assert_eq!(g.dim(), dim, "generator dimension mismatch");
        scale = scale.lcm(&g.denominator_lcm());
    }
    if scale.is_one() {
        return LatticeBasis::standard(dim);
    }
    let g = gammas.len();
    // K = [ A | D*I ], kernel rows restricted to the first `dim` coordinates
    let mut k = IntegerMatrix::zero(g, dim + g);
    for (j, gamma) in gammas.iter().enumerate() {
        let scaled = gamma.scale_int(&scale).to_integer_vec().expect("cleared");
        for (i, x) in scaled.into_iter().enumerate() {
            k[(j, i)] = x;
        }
        k[(j, dim + j)] = scale.clone();
    }
    let kernel = k.right_kernel();
    let rows: Vec<Vec<BigInt>> = kernel
        .row_vecs()
        .into_iter()
        .map(|r| r[..dim].to_vec())
        .collect();
    LatticeBasis::from_integer_rows(rows, dim)
}

/// Outcome of an exact linear solve.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Unique(Vec<BigRational>),
    Inconsistent,
    Underdetermined,
}

/// Solve `sum_i x_i * columns[i] = rhs` exactly over the rationals.  The
/// system may be overdetermined; every equation is verified.
pub fn solve_exact_columns(columns: &[Vec<BigInt>], rhs: &[BigInt]) -> SolveOutcome {
    let p = rhs.len();
    let c = columns.len();
    let mut m: Vec<Vec<BigRational>> = (0..p)
        .map(|i| {
            let mut row: Vec<BigRational> = columns
                .iter()
                .map(|col| BigRational::from(col[i].clone()))
                .collect();
            row.push(BigRational::from(rhs[i].clone()));
            row
        })
        .collect();
    let mut pivot_of_col = vec![None; c];
    let mut row = 0usize;
    for col in 0..c {
        let Some(r0) = (row..p).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(row, r0);
        let pivot = m[row][col].clone();
        for x in &mut m[row][col..=c] {
            *x = &*x / &pivot;
        }
        let pivot_row: Vec<BigRational> = m[row][col..=c].to_vec();
        for (r, mrow) in m.iter_mut().enumerate() {
            if r != row && !mrow[col].is_zero() {
                let f = mrow[col].clone();
                for (x, pv) in mrow[col..=c].iter_mut().zip(&pivot_row) {
                    *x -= pv * &f;
                }
            }
        }
        pivot_of_col[col] = Some(row);
        row += 1;
        if row == p {
            break;
        }
    }
    // inconsistent if any zero row has a nonzero right-hand side
    for mrow in &m {
        if mrow[..c].iter().all(|x| x.is_zero()) && !mrow[c].is_zero() {
            return SolveOutcome::Inconsistent;
        }
    }
    if pivot_of_col.iter().any(|x| x.is_none()) {
        return SolveOutcome::Underdetermined;
    }
    let solution = (0..c)
        .map(|col| m[pivot_of_col[col].unwrap()][c].clone())
        .collect();
    SolveOutcome::Unique(solution)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn bi(x: i64) -> BigInt {
        BigInt::from(x)
    }

    #[test]
    fn hnf_canonical_example() {
        // generators of the degree-27 lattice check
        let m = IntegerMatrix::from_i64_rows(&[&[3, 0, 0], &[5, 1, 0], &[0, 9, 0], &[0, 0, 9]]);
        let h = hermite_normal_form(&m);
        assert_eq!(
            h.basis_matrix().row_vecs(),
            vec![
                vec![bi(3), bi(0), bi(0)],
                vec![bi(2), bi(1), bi(0)],
                vec![bi(0), bi(0), bi(9)],
            ]
        );
        assert_eq!(h.basis_matrix().det().abs(), bi(27));
    }

    #[test]
    fn hnf_identity_and_rank_deficient() {
        let id = IntegerMatrix::from_i64_rows(&[&[1, 0], &[0, 1]]);
        assert_eq!(hermite_normal_form(&id).basis_matrix(), &id);

        // spanning Z x 2Z with a redundant generator: determinant 2
        let m = IntegerMatrix::from_i64_rows(&[&[2, 0], &[0, 2], &[1, 1]]);
        let h = hermite_normal_form(&m);
        assert_eq!(
            h.basis_matrix().row_vecs(),
            vec![vec![bi(2), bi(0)], vec![bi(1), bi(1)]]
        );
        assert_eq!(h.basis_matrix().det(), bi(2));

        let zero = IntegerMatrix::zero(3, 2);
        assert_eq!(hermite_normal_form(&zero).rank(), 0);
    }

    #[test]
    fn lattice_index_examples() {
        let z3 = LatticeBasis::standard(3);
        let m1 = LatticeBasis::from_rational_rows(
            &[
                RationalVector::unit(3, 0),
                RationalVector::unit(3, 1),
                RationalVector::unit(3, 2),
                RationalVector::from_pairs(&[(1, 3), (0, 1), (0, 1)]),
            ],
            3,
        );
        assert_eq!(lattice_index(&z3, &m1).unwrap(), bi(3));

        let m2 = LatticeBasis::from_rational_rows(
            &[
                RationalVector::unit(3, 0),
                RationalVector::unit(3, 1),
                RationalVector::unit(3, 2),
                RationalVector::from_pairs(&[(1, 3), (0, 1), (0, 1)]),
                RationalVector::from_pairs(&[(5, 9), (1, 9), (0, 1)]),
            ],
            3,
        );
        assert_eq!(lattice_index(&m1, &m2).unwrap(), bi(9));
        assert_eq!(lattice_index(&m2, &m2).unwrap(), bi(1));
        assert!(matches!(
            lattice_index(&m1, &z3),
            Err(Error::NotASublattice(_))
        ));
    }

    #[test]
    fn dual_sublattice_reference_basis() {
        let gammas = vec![
            RationalVector::from_pairs(&[(1, 3), (0, 1), (0, 1)]),
            RationalVector::from_pairs(&[(11, 9), (1, 9), (0, 1)]),
        ];
        let n = dual_sublattice(&gammas, 3);
        assert_eq!(
            n.basis_matrix().row_vecs(),
            vec![
                vec![bi(9), bi(0), bi(0)],
                vec![bi(3), bi(3), bi(0)],
                vec![bi(0), bi(0), bi(1)],
            ]
        );
        assert_eq!(n.basis_matrix().det().abs(), bi(27));
        assert_eq!(n.kind(), LatticeKind::SublatticeOfStandard);

        assert_eq!(dual_sublattice(&[], 4), LatticeBasis::standard(4));

        // { v : v1 + v2 even }, index 2
        let even = dual_sublattice(&[RationalVector::from_pairs(&[(1, 2), (1, 2)])], 2);
        assert_eq!(even.covolume(), BigRational::from(bi(2)));
        assert!(even.member(&[bi(1), bi(1)]).unwrap());
        assert!(!even.member(&[bi(1), bi(0)]).unwrap());
    }

    #[test]
    fn member_examples() {
        let gammas = vec![
            RationalVector::from_pairs(&[(1, 3), (0, 1), (0, 1)]),
            RationalVector::from_pairs(&[(11, 9), (1, 9), (0, 1)]),
        ];
        let n = dual_sublattice(&gammas, 3);
        assert!(n.member(&[bi(3), bi(3), bi(1)]).unwrap());
        assert!(n.member(&[bi(0), bi(0), bi(0)]).unwrap());
        assert!(!n.member(&[bi(1), bi(0), bi(0)]).unwrap());
        assert!(matches!(
            n.member(&[bi(1), bi(0)]),
            Err(Error::DimensionMismatch(_))
        ));
    }

    #[test]
    fn overlattice_kind_and_scale() {
        let m = LatticeBasis::from_rational_rows(
            &[
                RationalVector::unit(2, 0),
                RationalVector::unit(2, 1),
                RationalVector::from_pairs(&[(1, 2), (1, 2)]),
            ],
            2,
        );
        assert_eq!(m.kind(), LatticeKind::OverlatticeOfStandard);
        assert_eq!(m.covolume(), BigRational::new(bi(1), bi(2)));
    }

    #[test]
    fn points_in_box_matches_membership_scan() {
        let n = dual_sublattice(&[RationalVector::from_pairs(&[(1, 2), (1, 2)])], 2);
        let lo = vec![bi(1), bi(1)];
        let hi = vec![bi(4), bi(4)];
        let pts = n.points_in_box(&lo, &hi);
        let mut expected = Vec::new();
        for a in 1..=4i64 {
            for b in 1..=4i64 {
                if (a + b) % 2 == 0 {
                    expected.push(vec![bi(a), bi(b)]);
                }
            }
        }
        let mut got = pts.clone();
        got.sort();
        expected.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn solve_exact_columns_cases() {
        // reference inversion system: columns (0,3),(3,1), rhs (11,4)
        let cols = vec![vec![bi(0), bi(3)], vec![bi(3), bi(1)]];
        let rhs = vec![bi(11), bi(4)];
        match solve_exact_columns(&cols, &rhs) {
            SolveOutcome::Unique(x) => {
                assert_eq!(x[0], BigRational::new(bi(1), bi(9)));
                assert_eq!(x[1], BigRational::new(bi(11), bi(3)));
            }
            other => panic!("unexpected outcome {:?}", other),
        }

        let cols = vec![vec![bi(2), bi(1)]];
        assert_eq!(
            solve_exact_columns(&cols, &[bi(3), bi(2)]),
            SolveOutcome::Inconsistent
        );

        let cols = vec![vec![bi(1), bi(1)], vec![bi(1), bi(1)]];
        assert_eq!(
            solve_exact_columns(&cols, &[bi(2), bi(2)]),
            SolveOutcome::Underdetermined
        );
    }

    fn small_matrix(n: usize) -> impl Strategy<Value = IntegerMatrix> {
        proptest::collection::vec(-9i64..=9, n * n).prop_map(move |v| {
            IntegerMatrix::from_rows(
                v.chunks(n)
                    .map(|c| c.iter().map(|&x| BigInt::from(x)).collect())
                    .collect(),
                n,
            )
        })
    }

    proptest! {
        #[test]
        fn hnf_idempotent(m in small_matrix(3)) {
            let h1 = m.hermite_normal_form();
            let h2 = h1.hermite_normal_form();
            prop_assert_eq!(h1, h2);
        }

        #[test]
        fn hnf_preserves_determinant(m in small_matrix(3)) {
            let h = m.hermite_normal_form();
            if h.rows == 3 {
                prop_assert_eq!(h.det().abs(), m.det().abs());
            } else {
                prop_assert_eq!(m.det(), BigInt::zero());
            }
        }

        #[test]
        fn index_multiplicative_on_chains(
            diag in proptest::collection::vec(1i64..=4, 3),
            diag2 in proptest::collection::vec(1i64..=3, 3),
        ) {
            // nested chain Z^3 >= L1 >= L2 built from diagonal scalings
            let l1 = LatticeBasis::from_integer_rows(
                (0..3).map(|i| {
                    let mut r = vec![BigInt::zero(); 3];
                    r[i] = BigInt::from(diag[i]);
                    r
                }).collect(), 3);
            let l2 = LatticeBasis::from_integer_rows(
                (0..3).map(|i| {
                    let mut r = vec![BigInt::zero(); 3];
                    r[i] = BigInt::from(diag[i] * diag2[i]);
                    r
                }).collect(), 3);
            let z3 = LatticeBasis::standard(3);
            let total = lattice_index(&l2, &z3).unwrap();
            let first = lattice_index(&l1, &z3).unwrap();
            let second = lattice_index(&l2, &l1).unwrap();
            prop_assert_eq!(total, first * second);
        }

        #[test]
        fn dual_index_equals_overlattice_index(
            num in proptest::collection::vec(0i64..=5, 2),
            den in 1i64..=6,
        ) {
            let gamma = RationalVector::new(
                num.iter().map(|&n| BigRational::new(BigInt::from(n), BigInt::from(den))).collect());
            let n = dual_sublattice(std::slice::from_ref(&gamma), 2);
            let mut gens = vec![RationalVector::unit(2, 0), RationalVector::unit(2, 1)];
            gens.push(gamma);
            let m = LatticeBasis::from_rational_rows(&gens, 2);
            let z2 = LatticeBasis::standard(2);
            let dual_idx = lattice_index(&n, &z2).unwrap();
            let over_idx = lattice_index(&z2, &m).unwrap();
            prop_assert_eq!(dual_idx, over_idx);
        }
    }
}
