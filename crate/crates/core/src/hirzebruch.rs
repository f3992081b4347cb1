//! Anti-pluricanonical sections of Hirzebruch surfaces.
//!
//! On the chart `U_1 x P^1` a section of `-kK` is `sum_i a_i(z_1) zeta_1^i`
//! times `(d/dz_1 ^ d/dzeta_1)^k` with `0 <= i <= 2k`. Gluing to the second
//! chart forces `a_i` to be a polynomial of degree at most `2k + (i - k) m`,
//! and then determines the other chart's coefficient uniquely. So a basis is
//! the set of monomials `zeta_1^i z_1^d` with `0 <= d <= 2k + (i - k) m`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::surface_invariants::{h1_from_rr, invariants_hirzebruch};

/// The Hirzebruch surface `F_m = P(O + O(m))`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct HirzebruchSurface {
    m: u32,
}

impl HirzebruchSurface {
    pub fn new(m: u32) -> Self {
        Self { m }
    }

    pub fn m(self) -> u32 {
        self.m
    }
}

impl std::fmt::Display for HirzebruchSurface {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "F_{}", self.m)
    }
}

/// One family of basis sections: `zeta_1^fiber_power * z_1^d` for
/// `0 <= d <= degree_bound`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionBasisTerm {
    pub fiber_power: u32,
    pub degree_bound: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectionBasisDescription {
    pub k: u32,
    pub terms: Vec<SectionBasisTerm>,
}

impl SectionBasisDescription {
    pub fn dimension(&self) -> u64 {
        self.terms.iter().map(|t| t.degree_bound + 1).sum()
    }
}

/// `2k + (i - k) m`, which may be negative.
fn degree_bound(m: u32, k: u32, i: u32) -> i64 {
    2 * i64::from(k) + (i64::from(i) - i64::from(k)) * i64::from(m)
}

pub fn section_basis(surface: HirzebruchSurface, k: u32) -> Result<SectionBasisDescription> {
    if k == 0 {
        return Err(Error::NonPositivePower);
    }
    if surface.m == 0 {
        return Err(Error::ZeroTwist);
    }
    let terms = (0..=2 * k)
        .filter_map(|i| {
            let bound = degree_bound(surface.m, k, i);
            (bound >= 0).then_some(SectionBasisTerm {
                fiber_power: i,
                degree_bound: bound as u64,
            })
        })
        .collect();
    Ok(SectionBasisDescription { k, terms })
}

/// `h0(-kK_{F_m})` by counting surviving monomials.
///
/// `F_0 = P^1 x P^1` is counted as the product of two copies of `O(2k)` on
/// `P^1`. `k = 0` is the trivial bundle.
pub fn dim_enumerated(surface: HirzebruchSurface, k: u32) -> u64 {
    if k == 0 {
        return 1;
    }
    if surface.m == 0 {
        let per_factor = 2 * u64::from(k) + 1;
        return per_factor * per_factor;
    }
    (0..=2 * k)
        .map(|i| (degree_bound(surface.m, k, i) + 1).max(0) as u64)
        .sum()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaValue {
    pub value: u64,
    /// Whether every index the closed sum runs over is a genuine fiber power.
    pub in_regime: bool,
}

/// The closed formula `(4k + (k - [2k/m]) m + 2)(k + [2k/m] + 1) / 2`,
/// evaluated verbatim.
///
/// It sums the arithmetic progression of term sizes from index
/// `k - [2k/m]` up to `2k`. For `m = 1` that lower index is negative and the
/// value exceeds the true count; [`formula_overcount`] gives the excess.
pub fn dim_formula(surface: HirzebruchSurface, k: u32) -> Result<FormulaValue> {
    let m = surface.m;
    if m == 0 {
        return Err(Error::ZeroTwist);
    }
    if k == 0 {
        return Err(Error::NonPositivePower);
    }
    let (m, k) = (i64::from(m), i64::from(k));
    let floor = (2 * k).div_euclid(m);
    let twice = (4 * k + (k - floor) * m + 2) * (k + floor + 1);
    debug_assert!(twice >= 0 && twice % 2 == 0);
    Ok(FormulaValue {
        value: (twice / 2) as u64,
        in_regime: k - floor >= 0,
    })
}

/// Contribution of the negative indices `-1, ..., k - [2k/m]` that the
/// closed formula sums over when it is out of regime; zero otherwise.
pub fn formula_overcount(surface: HirzebruchSurface, k: u32) -> Result<u64> {
    let m = surface.m;
    if m == 0 {
        return Err(Error::ZeroTwist);
    }
    let (m, k) = (i64::from(m), i64::from(k));
    let phantom = (2 * k).div_euclid(m) - k;
    Ok((1..=phantom)
        .map(|j| (2 * k - j * m + 1 - k * m).max(0) as u64)
        .sum())
}

/// `h1(kK_{F_m})` from the closed corollary
/// `(4k - 2 + (k-1) m - [2(k-1)/m] m)(k + [2(k-1)/m]) / 2 - 4k^2 + 4k - 1`.
///
/// `k = 1` returns 0 directly. The formula is only accepted in the regime
/// `(k-1) - [2(k-1)/m] >= 0`; outside it callers should use
/// [`h1_via_rr_chain`].
pub fn h1_pluricanonical_formula(surface: HirzebruchSurface, k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::NonPositivePower);
    }
    if k == 1 {
        return Ok(0);
    }
    if surface.m == 0 {
        return Err(Error::OutOfRegime { m: 0, k });
    }
    let (m, kk) = (i64::from(surface.m), i64::from(k));
    let floor = (2 * (kk - 1)).div_euclid(m);
    if (kk - 1) - floor < 0 {
        return Err(Error::OutOfRegime { m: surface.m, k });
    }
    let twice = (4 * kk - 2 + (kk - 1) * m - floor * m) * (kk + floor);
    debug_assert!(twice % 2 == 0);
    let value = twice / 2 - 4 * kk * kk + 4 * kk - 1;
    u64::try_from(value).map_err(|_| Error::NegativeH1 { k, value })
}

/// `h1(kK_{F_m})` through Riemann-Roch with `h0(kK) = 0` and
/// `h2(kK) = h0(-(k-1)K)` enumerated; valid for every `m`.
pub fn h1_via_rr_chain(surface: HirzebruchSurface, k: u32) -> Result<u64> {
    if k == 0 {
        return Err(Error::NonPositivePower);
    }
    let h2 = dim_enumerated(surface, k - 1);
    h1_from_rr(k, 0, h2, &invariants_hirzebruch(surface.m))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(m: u32) -> HirzebruchSurface {
        HirzebruchSurface::new(m)
    }

    /// Independent count: walk the lattice of (fiber power, base degree)
    /// pairs and keep those whose transported exponent stays holomorphic.
    fn lattice_count(m: u32, k: u32) -> u64 {
        let (m, k) = (i64::from(m), i64::from(k));
        let mut count = 0;
        for i in 0..=2 * k {
            for d in 0..=(2 * k + k * m) {
                // Exponent of z_2 on the other chart is 2k + (i-k)m - d.
                if 2 * k + (i - k) * m - d >= 0 {
                    count += 1;
                }
            }
        }
        count
    }

    fn terms(pairs: &[(u32, u64)]) -> Vec<SectionBasisTerm> {
        pairs
            .iter()
            .map(|&(fiber_power, degree_bound)| SectionBasisTerm {
                fiber_power,
                degree_bound,
            })
            .collect()
    }

    #[test]
    fn section_basis_examples() {
        let b = section_basis(f(4), 1).unwrap();
        assert_eq!(b.terms, terms(&[(1, 2), (2, 6)]));
        assert_eq!(b.dimension(), 10);

        let b = section_basis(f(2), 1).unwrap();
        assert_eq!(b.terms, terms(&[(0, 0), (1, 2), (2, 4)]));
        assert_eq!(b.dimension(), 9);

        let b = section_basis(f(1), 1).unwrap();
        assert_eq!(b.terms, terms(&[(0, 1), (1, 2), (2, 3)]));
        assert_eq!(b.dimension(), 9);
    }

    #[test]
    fn section_basis_rejects_degenerate_inputs() {
        assert_eq!(section_basis(f(3), 0), Err(Error::NonPositivePower));
        assert_eq!(section_basis(f(0), 2), Err(Error::ZeroTwist));
    }

    #[test]
    fn enumerated_examples() {
        assert_eq!(dim_enumerated(f(2), 1), 9);
        assert_eq!(dim_enumerated(f(0), 1), 9);
        assert_eq!(dim_enumerated(f(1), 2), 25);
        for m in 0..6 {
            assert_eq!(dim_enumerated(f(m), 0), 1);
        }
    }

    #[test]
    fn enumeration_matches_lattice_walk() {
        for m in 1..=12 {
            for k in 1..=10 {
                assert_eq!(dim_enumerated(f(m), k), lattice_count(m, k), "m={m} k={k}");
            }
        }
    }

    #[test]
    fn product_surface_count_is_square_of_factor_count() {
        for k in 1..=10u32 {
            let factor = (0..=2 * k).count() as u64;
            assert_eq!(dim_enumerated(f(0), k), factor * factor);
            assert_eq!(dim_enumerated(f(0), k), dim_enumerated(f(1), k));
        }
    }

    #[test]
    fn formula_examples() {
        assert_eq!(
            dim_formula(f(4), 1).unwrap(),
            FormulaValue { value: 10, in_regime: true }
        );
        assert_eq!(
            dim_formula(f(2), 3).unwrap(),
            FormulaValue { value: 49, in_regime: true }
        );
        assert_eq!(dim_enumerated(f(2), 3), 49);
        assert_eq!(
            dim_formula(f(1), 1).unwrap(),
            FormulaValue { value: 10, in_regime: false }
        );
        assert_eq!(dim_formula(f(0), 1), Err(Error::ZeroTwist));
        assert_eq!(dim_formula(f(3), 0), Err(Error::NonPositivePower));
    }

    #[test]
    fn formula_agrees_in_regime_and_overcount_explains_the_rest() {
        for m in 1..=12 {
            for k in 1..=10 {
                let s = f(m);
                let fv = dim_formula(s, k).unwrap();
                let enumerated = dim_enumerated(s, k);
                assert_eq!(fv.value, enumerated + formula_overcount(s, k).unwrap());
                if fv.in_regime {
                    assert_eq!(fv.value, enumerated, "m={m} k={k}");
                } else {
                    assert_eq!(m, 1);
                    assert!(fv.value > enumerated);
                }
            }
        }
    }

    #[test]
    fn basis_dimension_matches_enumeration() {
        for m in 1..=12 {
            for k in 1..=10 {
                let b = section_basis(f(m), k).unwrap();
                assert_eq!(b.dimension(), dim_enumerated(f(m), k));
                assert!(b.terms.windows(2).all(|w| w[0].fiber_power < w[1].fiber_power));
            }
        }
    }

    #[test]
    fn enumeration_is_nondecreasing_in_k() {
        for m in 0..=12 {
            for k in 0..10 {
                assert!(dim_enumerated(f(m), k) <= dim_enumerated(f(m), k + 1));
            }
        }
    }

    #[test]
    fn h1_formula_examples() {
        assert_eq!(h1_pluricanonical_formula(f(4), 2), Ok(1));
        assert_eq!(h1_pluricanonical_formula(f(2), 2), Ok(0));
        for m in 1..=6 {
            assert_eq!(h1_pluricanonical_formula(f(m), 1), Ok(0));
        }
    }

    #[test]
    fn h1_formula_rejects_out_of_regime() {
        assert_eq!(
            h1_pluricanonical_formula(f(1), 2),
            Err(Error::OutOfRegime { m: 1, k: 2 })
        );
        assert!(h1_pluricanonical_formula(f(0), 3).is_err());
        // The chain still answers there.
        assert_eq!(h1_via_rr_chain(f(1), 2), Ok(0));
        assert_eq!(h1_via_rr_chain(f(0), 2), Ok(0));
    }

    #[test]
    fn h1_formula_matches_rr_chain() {
        for m in 2..=12 {
            for k in 2..=10 {
                assert_eq!(
                    h1_pluricanonical_formula(f(m), k).unwrap(),
                    h1_via_rr_chain(f(m), k).unwrap(),
                    "m={m} k={k}"
                );
            }
        }
    }
}
