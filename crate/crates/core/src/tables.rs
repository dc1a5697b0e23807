//! Closed-form minimum/maximum sphere dimensions and sphere counts.
//!
//! Two layers of formulas exist: per-family extremes keyed by the residue of
//! the family index, and product-level extremes for the matching complex of
//! `P_n x P_m` keyed by the residue of `k` where `n = 2k+2` or `n = 2k+3`.
//! Both are encoded from their residue tables; small-index entries where a
//! family degenerates (a contractible complex has no spheres at all) are
//! carried as explicit exceptions.

use thiserror::Error;

use num_bigint::BigUint;
use num_traits::One;

use crate::families::{FamilyId, FamilyName};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TableError {
    #[error("closed forms for products cover m in {{3,4,5}} and n >= 3, got n={n}, m={m}")]
    OutOfDomain { n: usize, m: u8 },
    #[error("sphere counts are tabulated only for m = 3, got m={0}")]
    CountsOnlyForThree(u8),
    #[error("no closed form for family {0}")]
    NoFamilyForm(FamilyId),
}

/// Minimum and maximum sphere dimension of a wedge; `None` when the complex
/// is contractible (empty wedge).
pub type DimRange = Option<(i32, i32)>;

/// Per-family closed-form extremes, valid for every defined index n >= 0.
pub fn family_dims(id: FamilyId) -> Result<DimRange, TableError> {
    use FamilyName::*;
    let n = id.n;
    if n < 0 {
        // The two standalone gadgets.
        return match (id.m, id.name) {
            (5, B) => Ok(Some((0, 0))),
            (5, BTilde) => Ok(Some((1, 1))),
            _ => Err(TableError::NoFamilyForm(id)),
        };
    }
    let n32 = n as i32;

    if id.m == 3 {
        // Every three-row family is a wedge of n-spheres.
        return match id.name {
            Gamma | A | Lambda | LambdaTilde => Ok(Some((n32, n32))),
            _ => Err(TableError::NoFamilyForm(id)),
        };
    }

    if id.m == 4 {
        let q = n32 / 7;
        let r = n32 % 7;
        let (dmin, dmax) = match id.name {
            Gamma => (
                n32,
                match r {
                    0 | 1 => n32 + 3 * q,
                    2..=4 => n32 + 3 * q + 1,
                    _ => n32 + 3 * q + 2,
                },
            ),
            Lambda => (
                n32 + 1,
                if n == 0 {
                    1
                } else {
                    match r {
                        0 => n32 + 3 * q,
                        1 | 2 => n32 + 3 * q + 1,
                        3 | 4 => n32 + 3 * q + 2,
                        _ => n32 + 3 * q + 3,
                    }
                },
            ),
            A => (
                n32,
                match r {
                    0 => n32 + 3 * q,
                    1..=3 => n32 + 3 * q + 1,
                    4 | 5 => n32 + 3 * q + 2,
                    _ => n32 + 3 * q + 3,
                },
            ),
            B => (
                n32 + 1,
                match r {
                    0 | 1 => n32 + 3 * q + 1,
                    2 | 3 => n32 + 3 * q + 2,
                    _ => n32 + 3 * q + 3,
                },
            ),
            C => (
                n32,
                match r {
                    0 | 1 => n32 + 3 * q,
                    2 | 3 => n32 + 3 * q + 1,
                    4 | 5 => n32 + 3 * q + 2,
                    _ => n32 + 3 * q + 3,
                },
            ),
            D => (
                n32 + 1,
                match r {
                    0 | 1 => n32 + 3 * q + 1,
                    2..=4 => n32 + 3 * q + 2,
                    _ => n32 + 3 * q + 3,
                },
            ),
            _ => return Err(TableError::NoFamilyForm(id)),
        };
        return Ok(Some((dmin, dmax)));
    }

    debug_assert_eq!(id.m, 5);
    let q4 = 7 * (n32 / 4);
    let r4 = n32 % 4;
    let q5 = 8 * (n32 / 5);
    let r5 = n32 % 5;

    let dmax = match id.name {
        Gamma if n == 0 => return Ok(None), // contractible
        Gamma | E => q4 + [0, 2, 4, 6][r4 as usize],
        Lambda => q4 + [1, 3, 5, 6][r4 as usize],
        A | F => q4 + [1, 3, 4, 6][r4 as usize],
        B => q4 + [2, 3, 5, 7][r4 as usize],
        C | D => q4 + [1, 2, 4, 6][r4 as usize],
        BTilde if n == 0 => return Ok(None),
        CTilde if n == 0 => return Ok(None),
        GammaTilde | ETilde => q4 + [1, 3, 5, 7][r4 as usize],
        LambdaTilde => q4 + [2, 4, 6, 7][r4 as usize],
        ATilde | FTilde => q4 + [2, 4, 5, 7][r4 as usize],
        BTilde => q4 + [3, 4, 6, 8][r4 as usize],
        CTilde | DTilde => q4 + [2, 3, 5, 7][r4 as usize],
    };
    let dmin = match id.name {
        Gamma if n == 0 => unreachable!(),
        Gamma | E => q5 + [0, 2, 4, 5, 7][r5 as usize],
        Lambda | A => q5 + [1, 3, 4, 6, 7][r5 as usize],
        F | D => q5 + [1, 2, 4, 6, 7][r5 as usize],
        B => q5 + [1, 3, 5, 6, 8][r5 as usize],
        C => q5 + [1, 2, 4, 5, 7][r5 as usize],
        GammaTilde | ETilde if n == 0 => 1,
        BTilde | CTilde if n == 0 => unreachable!(),
        GammaTilde | ETilde => q5 + [2, 3, 5, 6, 8][r5 as usize],
        LambdaTilde | ATilde => q5 + [2, 4, 5, 7, 9][r5 as usize],
        FTilde => q5 + [2, 4, 5, 7, 8][r5 as usize],
        BTilde => q5 + [3, 4, 6, 7, 9][r5 as usize],
        CTilde | DTilde => q5 + [2, 3, 5, 7, 8][r5 as usize],
    };
    Ok(Some((dmin, dmax)))
}

/// Product-level extremes for the matching complex of `P_n x P_m`, for
/// n >= 3 and m in {4, 5}. For m = 3 the wedge sits entirely in one
/// dimension and `closed_form_count` gives the number of spheres.
///
/// The product tables are stated in terms of k with n = 2k+2 or 2k+3. At
/// k = 0 on the odd side both tables miss the degenerate starting values of
/// their factors; the affected cells (n = 3) are carried as exceptions with
/// the values the factor formulas compose to.
pub fn closed_form_dims(n: usize, m: u8) -> Result<DimRange, TableError> {
    if n < 3 || !(3..=5).contains(&m) {
        return Err(TableError::OutOfDomain { n, m });
    }
    let even = n.is_multiple_of(2);
    let k = if even { (n - 2) / 2 } else { (n - 3) / 2 } as i32;

    match m {
        3 => {
            let d = 2 * k + 1;
            Ok(Some((d, d)))
        }
        4 => {
            let q = k / 7;
            let r = k % 7;
            let base = 2 * (k + 3 * q);
            let dmax = if even {
                match r {
                    0 | 1 => base + 1,
                    2..=4 => base + 3,
                    _ => base + 5,
                }
            } else if k == 0 {
                3 // composed from the one-sphere starting factor
            } else {
                match r {
                    0 => base + 1,
                    1 | 2 => base + 3,
                    3 | 4 => base + 5,
                    _ => base + 7,
                }
            };
            let dmin = if even { 2 * k + 1 } else { 2 * (k + 1) + 1 };
            Ok(Some((dmin, dmax)))
        }
        _ => {
            let r4 = (k % 4) as usize;
            let half = |x: i32| 7 * (x / 2);
            let dmax = if even {
                match r4 {
                    0 => half(k) + 1,
                    1 => half(k - 1) + 5,
                    2 => half(k - 2) + 9,
                    _ => half(k - 3) + 13,
                }
            } else {
                match r4 {
                    0 => half(k) + 3,
                    1 => half(k - 1) + 7,
                    2 => half(k - 2) + 11,
                    _ => half(k + 1),
                }
            };
            let r5 = (k % 5) as usize;
            let fifth = |x: i32| 16 * (x / 5);
            let dmin = if even {
                match r5 {
                    0 => fifth(k) + 1,
                    1 => fifth(k - 1) + 5,
                    2 => fifth(k - 2) + 9,
                    3 => fifth(k - 3) + 11,
                    _ => fifth(k - 4) + 15,
                }
            } else if k == 0 {
                3 // composed from the degenerate starting factors
            } else {
                match r5 {
                    0 => fifth(k) + 4,
                    1 => fifth(k - 1) + 7,
                    2 => fifth(k - 2) + 10,
                    3 => fifth(k - 3) + 13,
                    _ => fifth(k + 1),
                }
            };
            Ok(Some((dmin, dmax)))
        }
    }
}

/// Cells where a published residue table disagrees with the value its own
/// recurrences compose to. `family_dims` returns the tabulated value
/// verbatim; callers cross-checking against the recurrence route should
/// treat these cells as known discrepancies rather than failures.
///
/// The one affected family column is the tilde D minimum at indices
/// congruent to 1 mod 5 past the explicit n = 1 value: the shared tilde
/// C/D column carries +3 there, while the recurrence (through the tilde
/// Lambda and E extremes, which the same tables state) forces +4.
pub fn is_known_family_table_defect(id: FamilyId) -> bool {
    id.name == FamilyName::DTilde && id.m == 5 && id.n >= 6 && id.n % 5 == 1
}

/// Product-table cells with the same status: at n = 3 both product tables
/// miss the degenerate starting factors. `closed_form_dims` carries the
/// composed values there (the residue formulas are off by the start-value
/// exception), so the verbatim-formula readings are reported as known
/// discrepancies: the five-row minimum at n = 3 reads 4 instead of 3, and
/// the four-row maximum at n = 3 reads 1 instead of 3.
pub fn known_product_table_exception(n: usize, m: u8) -> Option<&'static str> {
    match (n, m) {
        (3, 5) => Some("k=0 odd minimum cell composed from starting factors (tabulated formula reads 4)"),
        (3, 4) => Some("k=0 odd maximum cell composed from starting factors (tabulated formula reads 1)"),
        _ => None,
    }
}

/// Number of spheres in the matching complex of `P_n x P_3`: a single sphere
/// at even n, `2^(t+2) - 1` of them at odd n = 2t+3.
pub fn closed_form_count(n: usize, m: u8) -> Result<BigUint, TableError> {
    if m != 3 {
        return Err(TableError::CountsOnlyForThree(m));
    }
    if n < 2 {
        return Err(TableError::OutOfDomain { n, m });
    }
    if n.is_multiple_of(2) {
        Ok(BigUint::one())
    } else {
        let t = (n as u32 - 3) / 2;
        Ok(BigUint::from(2u32).pow(t + 2) - BigUint::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::Evaluator;

    #[test]
    fn product_tables_match_composed_family_tables() {
        // Route one: the product-level residue tables. Route two: compose
        // the per-family extremes over the two line-graph components with
        // the join shift. They must agree on every n.
        for m in [4u8, 5] {
            for n in 3..=80usize {
                let table = closed_form_dims(n, m).unwrap();
                let composed = if n % 2 == 0 {
                    let k = (n as i64 - 2) / 2;
                    compose(
                        family_dims(FamilyId::new(FamilyName::Gamma, m, k).unwrap()).unwrap(),
                        family_dims(FamilyId::new(FamilyName::Gamma, m, k).unwrap()).unwrap(),
                    )
                } else {
                    let k = (n as i64 - 3) / 2;
                    let partner = if m == 5 {
                        FamilyName::GammaTilde
                    } else {
                        FamilyName::Lambda
                    };
                    compose(
                        family_dims(FamilyId::new(FamilyName::Lambda, m, k).unwrap()).unwrap(),
                        family_dims(FamilyId::new(partner, m, k).unwrap()).unwrap(),
                    )
                };
                assert_eq!(table, composed, "n={n}, m={m}");
            }
        }
    }

    fn compose(a: DimRange, b: DimRange) -> DimRange {
        match (a, b) {
            (Some((lo1, hi1)), Some((lo2, hi2))) => Some((lo1 + lo2 + 1, hi1 + hi2 + 1)),
            _ => None,
        }
    }

    #[test]
    fn family_dims_match_predictions_small() {
        let mut ev = Evaluator::new();
        for m in [3u8, 4, 5] {
            for name in FamilyId::names_for(m) {
                for n in 0..=12i64 {
                    let id = FamilyId::new(name, m, n).unwrap();
                    let predicted = ev.predict_family(id).unwrap().dim_range();
                    let table = family_dims(id).unwrap();
                    if is_known_family_table_defect(id) {
                        // Off-by-one minimum in the tabulated value.
                        let (plo, phi) = predicted.unwrap();
                        assert_eq!(table, Some((plo - 1, phi)), "{id}");
                    } else {
                        assert_eq!(predicted, table, "{id}");
                    }
                }
            }
        }
    }

    #[test]
    fn counts_for_three_rows() {
        assert_eq!(closed_form_count(4, 3).unwrap(), BigUint::one());
        assert_eq!(closed_form_count(5, 3).unwrap(), BigUint::from(7u32));
        assert_eq!(closed_form_count(9, 3).unwrap(), BigUint::from(31u32));
        assert!(closed_form_count(5, 4).is_err());
    }

    #[test]
    fn domain_errors() {
        assert!(closed_form_dims(2, 5).is_err());
        assert!(closed_form_dims(10, 6).is_err());
        assert_eq!(closed_form_dims(4, 5).unwrap(), Some((5, 5)));
        assert_eq!(closed_form_dims(3, 5).unwrap(), Some((3, 3)));
        assert_eq!(closed_form_dims(3, 4).unwrap(), Some((3, 3)));
    }
}
