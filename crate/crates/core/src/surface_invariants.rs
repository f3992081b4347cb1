//! Numerical invariants of the two surface families and the Riemann-Roch,
//! Noether and Serre duality identities that turn `h0` data into `h1` and
//! `h2` of pluricanonical bundles.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// `(K^2, chi_top, chi(O))` of a compact complex surface, with Noether's
/// formula `12 chi(O) = K^2 + chi_top` enforced at construction.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SurfaceInvariants {
    k2: i64,
    chi_top: i64,
    chi_o: i64,
}

impl SurfaceInvariants {
    /// Derives `chi(O)` from Noether's formula; fails unless
    /// `K^2 + chi_top` is divisible by 12.
    pub fn from_noether(k2: i64, chi_top: i64) -> Result<Self> {
        let sum = k2 + chi_top;
        if sum.rem_euclid(12) != 0 {
            return Err(Error::NoetherViolation { sum });
        }
        Ok(Self {
            k2,
            chi_top,
            chi_o: sum / 12,
        })
    }

    pub fn k2(&self) -> i64 {
        self.k2
    }

    pub fn chi_top(&self) -> i64 {
        self.chi_top
    }

    pub fn chi_o(&self) -> i64 {
        self.chi_o
    }

    pub fn satisfies_noether(&self) -> bool {
        self.k2 + self.chi_top == 12 * self.chi_o
    }
}

/// Every `F_m` is a `P^1`-bundle over `P^1`: `chi_top = 4`, `K^2 = 8`.
pub fn invariants_hirzebruch(_m: u32) -> SurfaceInvariants {
    SurfaceInvariants::from_noether(8, 4).expect("F_m invariants satisfy Noether")
}

/// `P^2` blown up at `v` points: each point lowers `K^2` and raises
/// `chi_top` by one.
pub fn invariants_blowup_p2(v: usize) -> SurfaceInvariants {
    let v = v as i64;
    SurfaceInvariants::from_noether(9 - v, 3 + v).expect("blow-up invariants satisfy Noether")
}

/// `h1(kK) = h0(kK) + h2(kK) - (6k^2 - 6k + 1) chi(O) + k(k-1)/2 chi_top`.
///
/// A negative value means the inputs do not describe one surface and is
/// reported as an error.
pub fn h1_from_rr(k: u32, h0_kk: u64, h2_kk: u64, inv: &SurfaceInvariants) -> Result<u64> {
    if k == 0 {
        return Err(Error::NonPositivePower);
    }
    let kk = i64::from(k);
    let value = h0_kk as i64 + h2_kk as i64 - (6 * kk * kk - 6 * kk + 1) * inv.chi_o
        + kk * (kk - 1) / 2 * inv.chi_top;
    u64::try_from(value).map_err(|_| Error::NegativeH1 { k, value })
}

/// Serre duality on a surface: `h2(kK) = h0(K - kK) = h0(-(k-1)K)`.
///
/// The value passes through unchanged; the function exists so that reports
/// can name the duality step.
pub fn h2_via_serre(_k: u32, h0_minus_km1_k: u64) -> u64 {
    h0_minus_km1_k
}
