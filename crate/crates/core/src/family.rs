//! Deformation families at the level of fiber invariants.
//!
//! The Kodaira family has central fiber `F_m` and general fiber
//! `F_{m - 2 ell}`; the blow-up family varies `v` points of `P^2`. In both,
//! plurigenera stay zero while `h2((k+1)K) = h0(-kK)` and hence `h1((k+1)K)`
//! change between fibers.

use serde::{Deserialize, Serialize};

use crate::blowup::{generate_configuration, h0_blowup, ConfigurationKind, PointConfiguration};
use crate::error::{Error, Result};
use crate::hirzebruch::{dim_enumerated, HirzebruchSurface};
use crate::surface_invariants::{
    h1_from_rr, h2_via_serre, invariants_blowup_p2, invariants_hirzebruch, SurfaceInvariants,
};

/// Plurigenera of rational surfaces vanish; invariance along the family is
/// taken as given rather than computed.
pub const PLURIGENUS: u64 = 0;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KodairaFamily {
    m: u32,
    ell: u32,
}

impl KodairaFamily {
    pub fn new(m: u32, ell: u32) -> Result<Self> {
        if ell == 0 || 2 * u64::from(ell) > u64::from(m) {
            return Err(Error::InvalidFamily { m, ell });
        }
        Ok(Self { m, ell })
    }

    pub fn m(&self) -> u32 {
        self.m
    }

    pub fn ell(&self) -> u32 {
        self.ell
    }
}

/// `F_m` at `t = 0`, `F_{m - 2 ell}` elsewhere.
pub fn fiber_surface(family: &KodairaFamily, at_zero: bool) -> HirzebruchSurface {
    if at_zero {
        HirzebruchSurface::new(family.m)
    } else {
        HirzebruchSurface::new(family.m - 2 * family.ell)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FiberReportRow {
    pub k: u32,
    pub h0_minus_kk_central: u64,
    pub h0_minus_kk_general: u64,
    pub plurigenus_kp1_central: u64,
    pub plurigenus_kp1_general: u64,
    pub h2_kp1k_central: u64,
    pub h2_kp1k_general: u64,
    pub h1_kp1k_central: u64,
    pub h1_kp1k_general: u64,
    pub jump: bool,
}

impl FiberReportRow {
    /// Special fibers can only gain sections.
    pub fn is_semicontinuous(&self) -> bool {
        self.h2_kp1k_central >= self.h2_kp1k_general
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KodairaReport {
    pub family: KodairaFamily,
    pub central: HirzebruchSurface,
    pub general: HirzebruchSurface,
    pub rows: Vec<FiberReportRow>,
}

impl KodairaReport {
    pub fn any_jump(&self) -> bool {
        self.rows.iter().any(|r| r.jump)
    }

    pub fn is_semicontinuous(&self) -> bool {
        self.rows.iter().all(FiberReportRow::is_semicontinuous)
    }
}

/// `(h0(-kK), h2((k+1)K), h1((k+1)K))` on one fiber.
fn fiber_column(surface: HirzebruchSurface, k: u32) -> Result<(u64, u64, u64)> {
    let h0 = dim_enumerated(surface, k);
    let h2 = h2_via_serre(k + 1, h0);
    let h1 = h1_from_rr(k + 1, PLURIGENUS, h2, &invariants_hirzebruch(surface.m()))?;
    Ok((h0, h2, h1))
}

pub fn noninvariance_report_hirzebruch(family: &KodairaFamily, k_max: u32) -> Result<KodairaReport> {
    if k_max == 0 {
        return Err(Error::NonPositivePower);
    }
    let central = fiber_surface(family, true);
    let general = fiber_surface(family, false);
    let rows = (1..=k_max)
        .map(|k| {
            let (h0c, h2c, h1c) = fiber_column(central, k)?;
            let (h0g, h2g, h1g) = fiber_column(general, k)?;
            Ok(FiberReportRow {
                k,
                h0_minus_kk_central: h0c,
                h0_minus_kk_general: h0g,
                plurigenus_kp1_central: PLURIGENUS,
                plurigenus_kp1_general: PLURIGENUS,
                h2_kp1k_central: h2c,
                h2_kp1k_general: h2g,
                h1_kp1k_central: h1c,
                h1_kp1k_general: h1g,
                jump: h2c != h2g,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(KodairaReport {
        family: *family,
        central,
        general,
        rows,
    })
}

/// `h0(-K)`, `h2(2K)` and `h1(2K)` on one blow-up of `P^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupFiber {
    pub config: PointConfiguration,
    pub h0_minus_k: u64,
    pub plurigenus_2k: u64,
    pub h2_2k: u64,
    pub h1_2k: u64,
}

impl BlowupFiber {
    pub fn compute(config: PointConfiguration) -> Result<Self> {
        if config.n() != 2 {
            return Err(Error::NotPlanar(config.n()));
        }
        let inv: SurfaceInvariants = invariants_blowup_p2(config.v());
        let h0_minus_k = h0_blowup(&config, 1)? as u64;
        let h2_2k = h2_via_serre(2, h0_minus_k);
        let h1_2k = h1_from_rr(2, PLURIGENUS, h2_2k, &inv)?;
        Ok(Self {
            config,
            h0_minus_k,
            plurigenus_2k: PLURIGENUS,
            h2_2k,
            h1_2k,
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BlowupReport {
    pub v: usize,
    pub special: BlowupFiber,
    pub generic: BlowupFiber,
    pub jump: bool,
    /// `v = 5` already jumps although non-constancy is usually stated for
    /// `v > 5`; flagged so readers can see the boundary case.
    pub boundary_case: bool,
}

/// Compares a special configuration against a certified generic one with
/// the same number of points.
pub fn noninvariance_report_blowup(
    special: &PointConfiguration,
    generic_seed: u64,
) -> Result<BlowupReport> {
    if special.n() != 2 {
        return Err(Error::NotPlanar(special.n()));
    }
    let v = special.v();
    if v < 5 {
        return Err(Error::ForcedDimension(v));
    }
    let generic = generate_configuration(&ConfigurationKind::Generic, v, generic_seed)?;
    let special = BlowupFiber::compute(special.clone())?;
    let generic = BlowupFiber::compute(generic)?;
    Ok(BlowupReport {
        v,
        jump: special.h2_2k != generic.h2_2k,
        boundary_case: v == 5,
        special,
        generic,
    })
}
