#![allow(clippy::needless_range_loop)]

//! Exact Smith normal form of sparse integer matrices.
//!
//! The driver is a column reduction in the persistence style: columns are
//! sorted sparse vectors, and each column is reduced against the pivot
//! registered for its lowest (largest-index) nonzero row until it either
//! empties or registers a pivot of its own. All steps are unimodular column
//! operations, so the column lattice — hence the rank and the cokernel, and
//! with it every invariant factor — is preserved exactly.
//!
//! When every pivot coefficient is a unit the matrix is column-equivalent to
//! one splitting off a free summand per pivot, so the invariant factors are
//! all 1 with no further work. Otherwise the few non-unit pivot columns are
//! condensed into a small dense core and finished by the classic
//! minimal-pivot SNF with divisibility repair.
//!
//! Arithmetic is checked 64-bit first; any overflow restarts the whole
//! matrix over arbitrary-precision integers, so results never depend on
//! entries staying small.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) and the rank `r`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmithNormalForm {
    pub invariant_factors: Vec<BigUint>,
    pub rank: usize,
}

impl SmithNormalForm {
    /// Invariant factors exceeding 1, i.e. the torsion part.
    pub fn torsion(&self) -> Vec<BigUint> {
        self.invariant_factors
            .iter()
            .filter(|f| **f > BigUint::one())
            .cloned()
            .collect()
    }
}

/// Sparse integer matrix in triplet form.
#[derive(Clone, Debug, Default)]
pub struct SparseIntMatrix {
    pub n_rows: usize,
    pub n_cols: usize,
    pub entries: Vec<(u32, u32, i64)>,
}

impl SparseIntMatrix {
    pub fn new(n_rows: usize, n_cols: usize) -> Self {
        SparseIntMatrix {
            n_rows,
            n_cols,
            entries: Vec::new(),
        }
    }

    pub fn push(&mut self, row: u32, col: u32, value: i64) {
        debug_assert!((row as usize) < self.n_rows && (col as usize) < self.n_cols);
        if value != 0 {
            self.entries.push((row, col, value));
        }
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }
}

pub fn smith_normal_form(m: &SparseIntMatrix) -> SmithNormalForm {
    match eliminate::<i64>(m) {
        Ok(snf) => snf,
        // 64-bit overflow: redo everything in arbitrary precision.
        Err(Overflow) => eliminate::<BigInt>(m).unwrap_or_else(|_| unreachable!()),
    }
}

/// Rank of the matrix over the rationals (the SNF rank).
pub fn rank(m: &SparseIntMatrix) -> usize {
    smith_normal_form(m).rank
}

#[derive(Debug)]
pub struct Overflow;

/// Integer arithmetic used by the elimination; `i64` reports overflow,
/// `BigInt` never fails.
pub trait ElimInt: Clone + Ord + Zero + One + std::fmt::Debug {
    fn from_i64(v: i64) -> Self;
    fn checked_add_to(&self, other: &Self) -> Result<Self, Overflow>;
    fn checked_mul_by(&self, other: &Self) -> Result<Self, Overflow>;
    fn checked_neg_value(&self) -> Result<Self, Overflow>;
    fn abs_value(&self) -> Self;
    fn div_exact(&self, other: &Self) -> Self;
    fn rem_by(&self, other: &Self) -> Self;
    fn is_unit(&self) -> bool;
    fn divides(&self, other: &Self) -> bool;
    /// (g, a, b) with g = gcd > 0 and a*self + b*other = g.
    fn ext_gcd(&self, other: &Self) -> (Self, Self, Self);
    fn to_biguint_abs(&self) -> BigUint;
}

impl ElimInt for i64 {
    fn from_i64(v: i64) -> Self {
        v
    }
    fn checked_add_to(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_add(*other).ok_or(Overflow)
    }
    fn checked_mul_by(&self, other: &Self) -> Result<Self, Overflow> {
        self.checked_mul(*other).ok_or(Overflow)
    }
    fn checked_neg_value(&self) -> Result<Self, Overflow> {
        self.checked_neg().ok_or(Overflow)
    }
    fn abs_value(&self) -> Self {
        self.abs()
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn rem_by(&self, other: &Self) -> Self {
        self % other
    }
    fn is_unit(&self) -> bool {
        *self == 1 || *self == -1
    }
    fn divides(&self, other: &Self) -> bool {
        *self != 0 && other % self == 0
    }
    fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let e = self.extended_gcd(other);
        (e.gcd, e.x, e.y)
    }
    fn to_biguint_abs(&self) -> BigUint {
        BigUint::from(self.unsigned_abs())
    }
}

impl ElimInt for BigInt {
    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
    fn checked_add_to(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self + other)
    }
    fn checked_mul_by(&self, other: &Self) -> Result<Self, Overflow> {
        Ok(self * other)
    }
    fn checked_neg_value(&self) -> Result<Self, Overflow> {
        Ok(-self)
    }
    fn abs_value(&self) -> Self {
        self.abs()
    }
    fn div_exact(&self, other: &Self) -> Self {
        self / other
    }
    fn rem_by(&self, other: &Self) -> Self {
        self % other
    }
    fn is_unit(&self) -> bool {
        self.abs().is_one()
    }
    fn divides(&self, other: &Self) -> bool {
        !self.is_zero() && (other % self).is_zero()
    }
    fn ext_gcd(&self, other: &Self) -> (Self, Self, Self) {
        let e = self.extended_gcd(other);
        (e.gcd, e.x, e.y)
    }
    fn to_biguint_abs(&self) -> BigUint {
        self.abs().to_biguint().unwrap()
    }
}

/// A sparse column: (row, value) pairs sorted by row, values nonzero.
type Col<T> = Vec<(u32, T)>;

/// dst = dst + q * src, merging sorted supports.
fn axpy<T: ElimInt>(dst: &Col<T>, q: &T, src: &Col<T>) -> Result<Col<T>, Overflow> {
    let mut out = Vec::with_capacity(dst.len() + src.len());
    let (mut i, mut j) = (0, 0);
    while i < dst.len() || j < src.len() {
        let pick_dst = j >= src.len() || (i < dst.len() && dst[i].0 < src[j].0);
        let pick_src = i >= dst.len() || (j < src.len() && src[j].0 < dst[i].0);
        if pick_dst {
            out.push(dst[i].clone());
            i += 1;
        } else if pick_src {
            let v = q.checked_mul_by(&src[j].1)?;
            if !v.is_zero() {
                out.push((src[j].0, v));
            }
            j += 1;
        } else {
            let v = dst[i].1.checked_add_to(&q.checked_mul_by(&src[j].1)?)?;
            if !v.is_zero() {
                out.push((dst[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    Ok(out)
}

/// out = a * x + b * y.
fn combine<T: ElimInt>(a: &T, x: &Col<T>, b: &T, y: &Col<T>) -> Result<Col<T>, Overflow> {
    let scaled: Col<T> = x
        .iter()
        .map(|(r, v)| Ok((*r, a.checked_mul_by(v)?)))
        .collect::<Result<_, Overflow>>()?;
    let mut out = axpy(&scaled, b, y)?;
    out.retain(|(_, v)| !v.is_zero());
    Ok(out)
}

fn eliminate<T: ElimInt>(m: &SparseIntMatrix) -> Result<SmithNormalForm, Overflow> {
    // Assemble columns, merging duplicate coordinates.
    let mut cols: Vec<Col<T>> = vec![Vec::new(); m.n_cols];
    {
        let mut triplets: Vec<(u32, u32, i64)> = m.entries.clone();
        triplets.sort_unstable_by_key(|&(r, c, _)| (c, r));
        for (r, c, v) in triplets {
            let col = &mut cols[c as usize];
            match col.last_mut() {
                Some((lr, lv)) if *lr == r => {
                    *lv = lv.checked_add_to(&T::from_i64(v))?;
                    if lv.is_zero() {
                        col.pop();
                    }
                }
                _ => {
                    let v = T::from_i64(v);
                    if !v.is_zero() {
                        col.push((r, v));
                    }
                }
            }
        }
    }

    // Lowest-row column reduction. pivot_of_row[r] = column owning row r.
    let mut pivot_of_row: Vec<usize> = vec![usize::MAX; m.n_rows];
    for j in 0..cols.len() {
        loop {
            let Some((r, v)) = cols[j].last().cloned() else {
                break; // column reduced to zero
            };
            let p = pivot_of_row[r as usize];
            if p == usize::MAX {
                pivot_of_row[r as usize] = j;
                break;
            }
            let pval = cols[p].last().unwrap().1.clone();
            if pval.divides(&v) {
                let q = v.div_exact(&pval).checked_neg_value()?;
                cols[j] = axpy(&cols[j], &q, &cols[p])?;
            } else {
                // Unimodular 2-column update bringing gcd into the pivot.
                let (g, a, b) = pval.ext_gcd(&v);
                let new_pivot = combine(&a, &cols[p], &b, &cols[j])?;
                let new_col = combine(
                    &pval.div_exact(&g),
                    &cols[j],
                    &v.div_exact(&g).checked_neg_value()?,
                    &cols[p],
                )?;
                debug_assert_eq!(new_pivot.last().map(|e| e.0), Some(r));
                cols[p] = new_pivot;
                cols[j] = new_col;
            }
        }
    }

    let pivots: Vec<usize> = pivot_of_row
        .iter()
        .copied()
        .filter(|&p| p != usize::MAX)
        .collect();
    let rank = pivots.len();
    let non_unit: Vec<usize> = pivots
        .iter()
        .copied()
        .filter(|&p| !cols[p].last().unwrap().1.is_unit())
        .collect();
    if non_unit.is_empty() {
        // Every pivot is a unit: the cokernel is free and all invariant
        // factors are 1.
        return Ok(SmithNormalForm {
            invariant_factors: vec![BigUint::one(); rank],
            rank,
        });
    }

    // Split off the unit pivots: clear each unit pivot row from the non-unit
    // columns (a column operation), then drop those rows entirely.
    let mut unit_rows: Vec<bool> = vec![false; m.n_rows];
    let mut units = 0usize;
    for &p in &pivots {
        if cols[p].last().unwrap().1.is_unit() {
            unit_rows[cols[p].last().unwrap().0 as usize] = true;
            units += 1;
        }
    }
    let mut core_cols: Vec<Col<T>> = Vec::with_capacity(non_unit.len());
    for &p in &non_unit {
        let mut col = cols[p].clone();
        loop {
            let Some((r, v)) = col
                .iter()
                .rev()
                .find(|(r, _)| unit_rows[*r as usize])
                .cloned()
            else {
                break;
            };
            let piv = pivot_of_row[r as usize];
            let pval = cols[piv].last().unwrap().1.clone();
            let q = v.div_exact(&pval).checked_neg_value()?;
            col = axpy(&col, &q, &cols[piv])?;
        }
        col.retain(|(r, _)| !unit_rows[*r as usize]);
        core_cols.push(col);
    }

    // Condense the core and finish densely.
    let mut live_rows: Vec<u32> = core_cols
        .iter()
        .flat_map(|c| c.iter().map(|(r, _)| *r))
        .collect();
    live_rows.sort_unstable();
    live_rows.dedup();
    let row_pos: std::collections::HashMap<u32, usize> = live_rows
        .iter()
        .enumerate()
        .map(|(i, &r)| (r, i))
        .collect();
    let mut core = vec![vec![T::zero(); core_cols.len()]; live_rows.len()];
    for (j, col) in core_cols.iter().enumerate() {
        for (r, v) in col {
            core[row_pos[r]][j] = v.clone();
        }
    }
    let core_factors = dense_snf(&mut core)?;
    debug_assert_eq!(units + core_factors.len(), rank);

    let mut invariant_factors = vec![BigUint::one(); units];
    invariant_factors.extend(core_factors);
    Ok(SmithNormalForm {
        invariant_factors,
        rank,
    })
}

/// Classic dense SNF with minimal-absolute-value pivoting and divisibility
/// repair; returns the diagonal as positive values in chain order.
fn dense_snf<T: ElimInt>(a: &mut [Vec<T>]) -> Result<Vec<BigUint>, Overflow> {
    let n_rows = a.len();
    let n_cols = if n_rows == 0 { 0 } else { a[0].len() };
    let mut factors = Vec::new();
    let mut k = 0usize;
    while k < n_rows && k < n_cols {
        // Minimal |value| pivot in the trailing block, scanning row-major.
        let mut best: Option<(usize, usize)> = None;
        for r in k..n_rows {
            for c in k..n_cols {
                if a[r][c].is_zero() {
                    continue;
                }
                match best {
                    None => best = Some((r, c)),
                    Some((br, bc)) => {
                        if a[r][c].abs_value() < a[br][bc].abs_value() {
                            best = Some((r, c));
                        }
                    }
                }
            }
        }
        let Some((pr, pc)) = best else { break };
        a.swap(k, pr);
        for row in a.iter_mut() {
            row.swap(k, pc);
        }

        // Eliminate the pivot row and column; a non-dividing entry pulls the
        // whole row back in, shrinking the pivot until division is exact.
        loop {
            let mut clean = true;
            for r in k + 1..n_rows {
                if a[r][k].is_zero() {
                    continue;
                }
                let rem = a[r][k].rem_by(&a[k][k]);
                let q = a[r][k].div_exact(&a[k][k]);
                for c in k..n_cols {
                    let sub = q.checked_mul_by(&a[k][c])?;
                    a[r][c] = a[r][c].checked_add_to(&sub.checked_neg_value()?)?;
                }
                if !rem.is_zero() {
                    clean = false;
                }
            }
            for c in k + 1..n_cols {
                if a[k][c].is_zero() {
                    continue;
                }
                let rem = a[k][c].rem_by(&a[k][k]);
                let q = a[k][c].div_exact(&a[k][k]);
                for r in k..n_rows {
                    let sub = q.checked_mul_by(&a[r][k])?;
                    a[r][c] = a[r][c].checked_add_to(&sub.checked_neg_value()?)?;
                }
                if !rem.is_zero() {
                    clean = false;
                }
            }
            if clean
                && (k + 1..n_rows).all(|r| a[r][k].is_zero())
                && (k + 1..n_cols).all(|c| a[k][c].is_zero())
            {
                break;
            }
            // Re-pick the (now smaller) pivot within the block.
            let mut best = (k, k);
            for r in k..n_rows {
                for c in k..n_cols {
                    if !a[r][c].is_zero()
                        && (a[best.0][best.1].is_zero()
                            || a[r][c].abs_value() < a[best.0][best.1].abs_value())
                    {
                        best = (r, c);
                    }
                }
            }
            a.swap(k, best.0);
            for row in a.iter_mut() {
                row.swap(k, best.1);
            }
        }

        // Divisibility repair: the pivot must divide every later entry.
        let mut offender = None;
        'find: for r in k + 1..n_rows {
            for c in k + 1..n_cols {
                if !a[r][c].rem_by(&a[k][k]).is_zero() {
                    offender = Some(r);
                    break 'find;
                }
            }
        }
        if let Some(r) = offender {
            // Add the offending row to the pivot row and redo this step.
            for c in k..n_cols {
                a[k][c] = a[k][c].checked_add_to(&a[r][c].clone())?;
            }
            continue;
        }

        factors.push(a[k][k].to_biguint_abs());
        k += 1;
    }
    Ok(factors)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn mat(rows: usize, cols: usize, entries: &[(u32, u32, i64)]) -> SparseIntMatrix {
        let mut m = SparseIntMatrix::new(rows, cols);
        for &(r, c, v) in entries {
            m.push(r, c, v);
        }
        m
    }

    fn factors(m: &SparseIntMatrix) -> Vec<u64> {
        smith_normal_form(m)
            .invariant_factors
            .iter()
            .map(|f| u64::try_from(f).unwrap())
            .collect()
    }

    #[test]
    fn two_by_two_with_torsion() {
        // gcd of entries is 2, |det| = 8, so the chain is (2, 4).
        let m = mat(2, 2, &[(0, 0, 2), (0, 1, 4), (1, 0, 6), (1, 1, 8)]);
        assert_eq!(factors(&m), vec![2, 4]);
    }

    #[test]
    fn identity_and_zero() {
        let id = mat(4, 4, &[(0, 0, 1), (1, 1, 1), (2, 2, 1), (3, 3, 1)]);
        assert_eq!(factors(&id), vec![1, 1, 1, 1]);
        assert_eq!(rank(&id), 4);

        let z = mat(3, 5, &[]);
        assert!(factors(&z).is_empty());
        assert_eq!(rank(&z), 0);
    }

    #[test]
    fn divisibility_chain_holds() {
        let m = mat(
            3,
            3,
            &[
                (0, 0, 6),
                (0, 1, 10),
                (1, 0, 4),
                (1, 1, 8),
                (2, 2, 9),
                (0, 2, 3),
            ],
        );
        let snf = smith_normal_form(&m);
        for w in snf.invariant_factors.windows(2) {
            assert!(
                (&w[1] % &w[0]).is_zero(),
                "chain broken: {:?}",
                snf.invariant_factors
            );
        }
    }

    #[test]
    fn projective_plane_torsion() {
        // Edge-to-triangle boundary of the 6-vertex triangulation of the
        // real projective plane; coker has a single Z/2.
        let triangles: [[u32; 3]; 10] = [
            [0, 1, 3],
            [0, 1, 4],
            [0, 2, 3],
            [0, 2, 5],
            [0, 4, 5],
            [1, 2, 4],
            [1, 2, 5],
            [1, 3, 5],
            [2, 3, 4],
            [3, 4, 5],
        ];
        let mut edges: Vec<(u32, u32)> = Vec::new();
        for t in &triangles {
            for (a, b) in [(t[0], t[1]), (t[0], t[2]), (t[1], t[2])] {
                if !edges.contains(&(a, b)) {
                    edges.push((a, b));
                }
            }
        }
        edges.sort_unstable();
        let mut m = SparseIntMatrix::new(edges.len(), triangles.len());
        for (j, t) in triangles.iter().enumerate() {
            let faces = [(t[1], t[2]), (t[0], t[2]), (t[0], t[1])];
            for (i, f) in faces.iter().enumerate() {
                let r = edges.binary_search(f).unwrap() as u32;
                m.push(r, j as u32, if i % 2 == 0 { 1 } else { -1 });
            }
        }
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 10);
        assert_eq!(snf.torsion(), vec![BigUint::from(2u32)]);
    }

    #[test]
    fn overflow_promotes_to_bigint() {
        // Large coprime-ish entries that force products past i64 range.
        let big = 3_000_000_000_i64;
        let m = mat(
            2,
            2,
            &[(0, 0, big), (0, 1, big - 1), (1, 0, big - 2), (1, 1, big - 3)],
        );
        let snf = smith_normal_form(&m);
        assert_eq!(snf.rank, 2);
        // d1 * d2 = |det| = |big*(big-3) - (big-1)(big-2)| = 2
        let prod: BigUint = snf.invariant_factors.iter().product();
        assert_eq!(prod, BigUint::from(2u32));
    }

    #[test]
    fn projection_kills_rank() {
        // Row space is one-dimensional.
        let m = mat(
            3,
            3,
            &[(0, 0, 1), (0, 1, 2), (1, 0, 2), (1, 1, 4), (2, 0, 3), (2, 1, 6)],
        );
        assert_eq!(rank(&m), 1);
    }

    #[test]
    fn duplicate_triplets_accumulate() {
        let m = mat(1, 1, &[(0, 0, 2), (0, 0, -2)]);
        assert_eq!(rank(&m), 0);
        let m2 = mat(1, 1, &[(0, 0, 2), (0, 0, 1)]);
        assert_eq!(factors(&m2), vec![3]);
    }
}
