//! Reduced simplicial homology over the integers, via Smith normal form of
//! boundary matrices of the augmented chain complex.

use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::complex::SimplicialComplex;
use crate::snf::{self, SparseIntMatrix};

pub const DEFAULT_MATRIX_BUDGET: usize = 100_000_000;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum HomologyError {
    #[error("boundary matrix undefined for the void complex")]
    VoidComplex,
    #[error("boundary dimension must be >= 0, got {0}")]
    NegativeDimension(i32),
    #[error("matrix budget exceeded: {entries} stored entries over limit {budget}")]
    MatrixBudget { entries: usize, budget: usize },
    #[error("torsion on both sides of a join is not supported")]
    TorsionJoin,
}

/// The boundary map from d-chains to (d-1)-chains, with the augmentation row
/// standing in for the (-1)-simplices when `d == 0`.
#[derive(Clone, Debug)]
pub struct BoundaryMatrix {
    pub dim: i32,
    pub matrix: SparseIntMatrix,
}

/// Builds the boundary matrix of dimension `d >= 0`. Rows are indexed by the
/// (d-1)-simplices in their stored order, columns by the d-simplices; the
/// column of a simplex has `(-1)^i` against its i-th facet.
pub fn boundary_matrix(
    c: &SimplicialComplex,
    d: i32,
    max_entries: usize,
) -> Result<BoundaryMatrix, HomologyError> {
    if c.is_void() {
        return Err(HomologyError::VoidComplex);
    }
    if d < 0 {
        return Err(HomologyError::NegativeDimension(d));
    }
    let cols = c.simplices(d);
    let rows = c.f_count(d - 1);
    // One stored entry per facet incidence.
    let entries = cols.len().saturating_mul(d.max(1) as usize + 1);
    if entries > max_entries {
        return Err(HomologyError::MatrixBudget {
            entries,
            budget: max_entries,
        });
    }
    let mut m = SparseIntMatrix::new(rows, cols.len());
    if d == 0 {
        // Augmentation: every vertex maps to the empty simplex.
        for j in 0..cols.len() as u32 {
            m.push(0, j, 1);
        }
        return Ok(BoundaryMatrix { dim: 0, matrix: m });
    }
    let faces = c.simplices(d - 1);
    for (j, s) in cols.iter().enumerate() {
        let mut sign = 1i64;
        for skip in 0..s.len() {
            let face: Vec<u32> = s
                .iter()
                .enumerate()
                .filter(|(i, _)| *i != skip)
                .map(|(_, &v)| v)
                .collect();
            let i = faces
                .binary_search(&face)
                .expect("face of a stored simplex must be stored");
            m.push(i as u32, j as u32, sign);
            sign = -sign;
        }
    }
    Ok(BoundaryMatrix { dim: d, matrix: m })
}

/// Reduced Betti numbers and torsion per dimension. The void complex has the
/// empty profile in every dimension, including -1; the empty complex `{∅}`
/// has exactly one unit of homology in dimension -1.
#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize)]
pub struct HomologyProfile {
    pub is_void: bool,
    pub betti: BTreeMap<i32, u64>,
    pub torsion: BTreeMap<i32, Vec<BigUint>>,
}

impl HomologyProfile {
    pub fn void() -> Self {
        HomologyProfile {
            is_void: true,
            ..Default::default()
        }
    }

    pub fn contractible() -> Self {
        HomologyProfile::default()
    }

    pub fn betti_at(&self, d: i32) -> u64 {
        self.betti.get(&d).copied().unwrap_or(0)
    }

    pub fn is_trivial(&self) -> bool {
        !self.is_void && self.betti.is_empty() && self.torsion.is_empty()
    }

    pub fn has_torsion(&self) -> bool {
        !self.torsion.is_empty()
    }

    fn set_betti(&mut self, d: i32, v: u64) {
        if v != 0 {
            self.betti.insert(d, v);
        }
    }

    /// Shift every dimension up by `k`, as a k-fold suspension does.
    pub fn suspended(&self, k: i32) -> HomologyProfile {
        let mut out = HomologyProfile {
            is_void: self.is_void,
            ..Default::default()
        };
        for (&d, &b) in &self.betti {
            out.betti.insert(d + k, b);
        }
        for (&d, t) in &self.torsion {
            out.torsion.insert(d + k, t.clone());
        }
        out
    }

    /// Pointwise sum, as a wedge of spaces has.
    pub fn wedge_sum(&self, other: &HomologyProfile) -> HomologyProfile {
        let mut out = self.clone();
        out.is_void = false;
        for (&d, &b) in &other.betti {
            *out.betti.entry(d).or_insert(0) += b;
        }
        for (&d, t) in &other.torsion {
            out.torsion.entry(d).or_default().extend(t.iter().cloned());
        }
        for t in out.torsion.values_mut() {
            t.sort();
        }
        out
    }

    /// Profile of a join: free parts convolve with a dimension shift of one.
    /// Torsion is carried along only when at most one side has any.
    pub fn join(&self, other: &HomologyProfile) -> Result<HomologyProfile, HomologyError> {
        if self.is_void || other.is_void {
            return Ok(HomologyProfile::void());
        }
        if self.has_torsion() && other.has_torsion() {
            return Err(HomologyError::TorsionJoin);
        }
        let mut out = HomologyProfile::default();
        for (&da, &ba) in &self.betti {
            for (&db, &bb) in &other.betti {
                *out.betti.entry(da + db + 1).or_insert(0) += ba * bb;
            }
        }
        let (torsion_side, free_side) = if self.has_torsion() {
            (self, other)
        } else {
            (other, self)
        };
        for (&dt, t) in &torsion_side.torsion {
            for (&df, &bf) in &free_side.betti {
                let entry = out.torsion.entry(dt + df + 1).or_default();
                for _ in 0..bf {
                    entry.extend(t.iter().cloned());
                }
            }
        }
        for t in out.torsion.values_mut() {
            t.sort();
        }
        out.betti.retain(|_, b| *b != 0);
        out.torsion.retain(|_, t| !t.is_empty());
        Ok(out)
    }

    /// JSON with zero entries omitted: `{"betti": {...}, "torsion": {...}}`.
    pub fn to_json(&self) -> String {
        #[derive(Serialize)]
        struct Doc<'a> {
            #[serde(skip_serializing_if = "std::ops::Not::not")]
            void: bool,
            betti: &'a BTreeMap<i32, u64>,
            #[serde(skip_serializing_if = "BTreeMap::is_empty")]
            torsion: &'a BTreeMap<i32, Vec<BigUint>>,
        }
        serde_json::to_string(&Doc {
            void: self.is_void,
            betti: &self.betti,
            torsion: &self.torsion,
        })
        .expect("profile serialization cannot fail")
    }
}

/// Computes reduced homology of `c` over the given dimension range
/// (defaulting to every dimension the complex carries, including -1).
pub fn reduced_homology(
    c: &SimplicialComplex,
    range: Option<(i32, i32)>,
    max_entries: usize,
) -> Result<HomologyProfile, HomologyError> {
    if c.is_void() {
        return Ok(HomologyProfile::void());
    }
    let dim = c.dimension().unwrap_or(-1);
    let (lo, hi) = match range {
        Some((a, b)) => (a.max(-1), b.min(dim)),
        None => (-1, dim),
    };
    if lo > hi {
        return Ok(HomologyProfile::contractible());
    }

    // Ranks and torsion of every boundary map the range touches. The maps
    // share nothing but the complex, so they reduce in parallel.
    let needed: Vec<i32> = (lo.max(0)..=(hi + 1).min(dim)).collect();
    let snfs: Vec<(i32, snf::SmithNormalForm)> = needed
        .par_iter()
        .map(|&d| {
            boundary_matrix(c, d, max_entries).map(|b| (d, snf::smith_normal_form(&b.matrix)))
        })
        .collect::<Result<_, _>>()?;
    let snf_at = |d: i32| snfs.iter().find(|(dd, _)| *dd == d).map(|(_, s)| s);
    let rank_at = |d: i32| -> u64 {
        if d < 0 || d > dim {
            0
        } else {
            snf_at(d).map(|s| s.rank as u64).unwrap_or(0)
        }
    };

    let mut profile = HomologyProfile::default();
    for d in lo..=hi {
        let f = c.f_count(d) as i128;
        let betti = f - rank_at(d) as i128 - rank_at(d + 1) as i128;
        assert!(betti >= 0, "negative Betti number at dimension {d}");
        profile.set_betti(d, betti as u64);
        if let Some(s) = snf_at(d + 1) {
            let t = s.torsion();
            if !t.is_empty() {
                profile.torsion.insert(d, t);
            }
        }
    }
    Ok(profile)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex::{independence_complex, BuildOptions, DEFAULT_SIMPLEX_BUDGET};
    use crate::graph::Graph;

    fn ind(g: &Graph) -> SimplicialComplex {
        independence_complex(g, &BuildOptions::default()).unwrap()
    }

    fn profile(c: &SimplicialComplex) -> HomologyProfile {
        reduced_homology(c, None, DEFAULT_MATRIX_BUDGET).unwrap()
    }

    /// Full triangle: boundary of the 2-simplex composed with the edge
    /// boundary is zero.
    #[test]
    fn boundary_squares_to_zero() {
        let g = Graph::new((1..=3).map(crate::label::VertexLabel::int).collect(), &[]).unwrap();
        let c = ind(&g);
        let d1 = boundary_matrix(&c, 1, DEFAULT_MATRIX_BUDGET).unwrap();
        let d2 = boundary_matrix(&c, 2, DEFAULT_MATRIX_BUDGET).unwrap();
        assert_eq!(d1.matrix.n_cols, 3);
        assert_eq!(d2.matrix.n_cols, 1);
        // Compose by hand: (d1 * d2)[i][k] over the single column.
        let mut dense1 = vec![vec![0i64; 3]; 3];
        for &(r, c_, v) in &d1.matrix.entries {
            dense1[r as usize][c_ as usize] = v;
        }
        let mut col = vec![0i64; 3];
        for &(r, _, v) in &d2.matrix.entries {
            col[r as usize] = v;
        }
        for row in &dense1 {
            let s: i64 = row.iter().zip(&col).map(|(a, b)| a * b).sum();
            assert_eq!(s, 0);
        }
    }

    #[test]
    fn augmentation_row_is_all_ones() {
        let g = Graph::new((1..=4).map(crate::label::VertexLabel::int).collect(), &[]).unwrap();
        let c = ind(&g);
        let d0 = boundary_matrix(&c, 0, DEFAULT_MATRIX_BUDGET).unwrap();
        assert_eq!(d0.matrix.n_rows, 1);
        assert_eq!(d0.matrix.n_cols, 4);
        assert!(d0.matrix.entries.iter().all(|&(_, _, v)| v == 1));
    }

    #[test]
    fn hollow_triangle_rank() {
        // Ind(K3-complement): take the triangle boundary directly. Rank of
        // the edge boundary of a hollow triangle is 2.
        let c = {
            use crate::complex::SimplicialComplex;
            SimplicialComplex::from_parts(
                3,
                vec![
                    vec![vec![0], vec![1], vec![2]],
                    vec![vec![0, 1], vec![0, 2], vec![1, 2]],
                ],
            )
        };
        let d1 = boundary_matrix(&c, 1, DEFAULT_MATRIX_BUDGET).unwrap();
        assert_eq!(snf::rank(&d1.matrix), 2);
        let p = profile(&c);
        assert_eq!(p.betti_at(1), 1);
        assert_eq!(p.betti_at(0), 0);
    }

    #[test]
    fn void_and_empty_profiles() {
        assert_eq!(
            reduced_homology(&SimplicialComplex::void(), None, DEFAULT_MATRIX_BUDGET).unwrap(),
            HomologyProfile::void()
        );
        let empty = profile(&SimplicialComplex::empty());
        assert_eq!(empty.betti_at(-1), 1);
        assert!(boundary_matrix(&SimplicialComplex::void(), 0, DEFAULT_MATRIX_BUDGET).is_err());
    }

    #[test]
    fn paths_and_cycles_small() {
        // Ind(P_5) is a circle; Ind(C_6) has two independent 1-cycles.
        let p = profile(&ind(&Graph::path(5).unwrap()));
        assert_eq!(p.betti, BTreeMap::from([(1, 1)]));
        let c = profile(&ind(&Graph::cycle(6).unwrap()));
        assert_eq!(c.betti, BTreeMap::from([(1, 2)]));
        assert!(c.torsion.is_empty());
    }

    #[test]
    fn cone_is_trivial() {
        // Joining with a single point kills all reduced homology.
        let x = ind(&Graph::cycle(5).unwrap());
        let point = ind(&Graph::path(1).unwrap());
        let cone = x.join(&point, DEFAULT_SIMPLEX_BUDGET).unwrap();
        assert!(profile(&cone).is_trivial());
    }

    #[test]
    fn suspension_shifts_profile() {
        let x = ind(&Graph::cycle(5).unwrap());
        let s0 = ind(&Graph::complete(2));
        let susp = profile(&x.join(&s0, DEFAULT_SIMPLEX_BUDGET).unwrap());
        assert_eq!(susp.betti, BTreeMap::from([(2, 1)]));
    }

    #[test]
    fn join_profile_matches_complex_join() {
        let a = ind(&Graph::cycle(4).unwrap());
        let b = ind(&Graph::complete(3));
        let joined = profile(&a.join(&b, DEFAULT_SIMPLEX_BUDGET).unwrap());
        let composed = profile(&a).join(&profile(&b)).unwrap();
        assert_eq!(joined, composed);
    }

    #[test]
    fn matrix_budget_is_enforced() {
        let c = ind(&Graph::cycle(8).unwrap());
        let err = reduced_homology(&c, None, 3).unwrap_err();
        assert!(matches!(err, HomologyError::MatrixBudget { .. }));
    }
}
