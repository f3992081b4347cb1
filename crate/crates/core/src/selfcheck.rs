//! Invariant sweeps that cross-check closed formulas against enumeration and
//! rank computations. The checks take the formula under test as a parameter
//! so that a corrupted formula can be fed in and caught.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::blowup::{
    achievable_dims_seeded, h0_blowup, h1_2k, h1_2k_range, jet_matrix, PointConfiguration,
};
use crate::error::Result;
use crate::exact_linalg::{rank, rat_frac, BigRat};
use crate::family::{noninvariance_report_hirzebruch, KodairaFamily};
use crate::hirzebruch::{
    dim_enumerated, dim_formula, h1_pluricanonical_formula, h1_via_rr_chain, FormulaValue,
    HirzebruchSurface,
};
use crate::surface_invariants::{invariants_blowup_p2, invariants_hirzebruch};

pub const DEFAULT_BUDGET: u32 = 10;

/// Replacement budget per step for the achievable-dimension search.
const WITNESS_BUDGET: u32 = 32;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckOutcome {
    pub name: String,
    pub cases: u64,
    pub counterexample: Option<String>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.counterexample.is_none()
    }
}

/// Runs `case` over `inputs`, stopping at the first failure.
fn run<I, F>(name: &str, inputs: I, mut case: F) -> CheckOutcome
where
    I: IntoIterator,
    F: FnMut(I::Item) -> std::result::Result<(), String>,
{
    let mut cases = 0;
    for input in inputs {
        cases += 1;
        if let Err(msg) = case(input) {
            return CheckOutcome {
                name: name.to_string(),
                cases,
                counterexample: Some(msg),
            };
        }
    }
    CheckOutcome {
        name: name.to_string(),
        cases,
        counterexample: None,
    }
}

fn grid(ms: std::ops::RangeInclusive<u32>, ks: std::ops::RangeInclusive<u32>) -> Vec<(u32, u32)> {
    ms.flat_map(|m| ks.clone().map(move |k| (m, k))).collect()
}

pub type FormulaFn<'a> = dyn Fn(HirzebruchSurface, u32) -> Result<FormulaValue> + 'a;
pub type CorollaryFn<'a> = dyn Fn(HirzebruchSurface, u32) -> Result<u64> + 'a;

/// Closed formula equals enumeration and is in regime on `2..=m_max x 1..=k_max`.
pub fn check_formula_sweep(m_max: u32, k_max: u32, formula: &FormulaFn) -> CheckOutcome {
    run("hirzebruch formula vs enumeration", grid(2..=m_max, 1..=k_max), |(m, k)| {
        let s = HirzebruchSurface::new(m);
        let enumerated = dim_enumerated(s, k);
        match formula(s, k) {
            Ok(fv) if fv.in_regime && fv.value == enumerated => Ok(()),
            Ok(fv) => Err(format!(
                "m={m}, k={k}: formula {} (in_regime {}) vs enumerated {enumerated}",
                fv.value, fv.in_regime
            )),
            Err(e) => Err(format!("m={m}, k={k}: {e}")),
        }
    })
}

/// For `m = 1` the formula strictly overcounts the `(2k+1)^2` sections.
pub fn check_regime_boundary(k_max: u32, formula: &FormulaFn) -> CheckOutcome {
    run("m = 1 regime boundary", 1..=k_max, |k| {
        let s = HirzebruchSurface::new(1);
        let enumerated = dim_enumerated(s, k);
        let square = u64::from(2 * k + 1).pow(2);
        let fv = formula(s, k).map_err(|e| format!("m=1, k={k}: {e}"))?;
        if enumerated == square && fv.value > enumerated && !fv.in_regime {
            Ok(())
        } else {
            Err(format!(
                "m=1, k={k}: enumerated {enumerated}, formula {} (in_regime {})",
                fv.value, fv.in_regime
            ))
        }
    })
}

/// The `h1(kK)` corollary against the Riemann-Roch chain.
pub fn check_h1_corollary(m_max: u32, k_max: u32, corollary: &CorollaryFn) -> CheckOutcome {
    run("h1 corollary vs Riemann-Roch", grid(2..=m_max, 2..=k_max), |(m, k)| {
        let s = HirzebruchSurface::new(m);
        let chain = h1_via_rr_chain(s, k).map_err(|e| format!("m={m}, k={k}: {e}"))?;
        match corollary(s, k) {
            Ok(value) if value == chain => Ok(()),
            Ok(value) => Err(format!("m={m}, k={k}: corollary {value} vs chain {chain}")),
            Err(e) => Err(format!("m={m}, k={k}: {e}")),
        }
    })
}

pub fn check_noether(limit: u32) -> CheckOutcome {
    run("Noether exactness", 0..=limit, |i| {
        let pairs = [
            (format!("F_{i}"), invariants_hirzebruch(i)),
            (format!("Bl_{i} P^2"), invariants_blowup_p2(i as usize)),
        ];
        for (label, inv) in pairs {
            if !inv.satisfies_noether() {
                return Err(format!("{label}: {inv:?}"));
            }
        }
        Ok(())
    })
}

/// Random distinct plane points with small rational coordinates.
pub fn random_plane_configuration(rng: &mut ChaCha8Rng, v: usize) -> PointConfiguration {
    let mut points: Vec<Vec<BigRat>> = Vec::with_capacity(v);
    while points.len() < v {
        let p: Vec<BigRat> = (0..2)
            .map(|_| rat_frac(rng.gen_range(-50..=50), rng.gen_range(1..=5)))
            .collect();
        if !points.contains(&p) {
            points.push(p);
        }
    }
    PointConfiguration::new(2, points).expect("points are distinct by construction")
}

/// `v <= 4` distinct points always impose independent conditions on cubics.
pub fn check_forced_regime(samples: u32, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    run("blow-up forced regime", 0..samples, |i| {
        let v = (i % 4) as usize + 1;
        let config = random_plane_configuration(&mut rng, v);
        let h0 = h0_blowup(&config, 1).map_err(|e| e.to_string())?;
        let h1 = h1_2k(&config).map_err(|e| e.to_string())?;
        if h0 == 10 - v && h1 == 0 {
            Ok(())
        } else {
            Err(format!("sample {i}, v={v}: h0(-K) = {h0}, h1(2K) = {h1}\n{}", config.to_point_file()))
        }
    })
}

/// Witnesses for every achievable `h0(-K)` at each `v` in `5..=v_max`, each
/// with `h1(2K)` in range.
pub fn check_achievable(v_max: usize, seed: u64) -> CheckOutcome {
    run("achievable dimensions", 5..=v_max, |v| {
        let witnesses = achievable_dims_seeded(v, WITNESS_BUDGET, seed).map_err(|e| format!("v={v}: {e}"))?;
        let expected: Vec<usize> = (10usize.saturating_sub(v)..=6).collect();
        let found: Vec<usize> = witnesses.iter().map(|w| w.dimension).collect();
        if found != expected {
            return Err(format!("v={v}: dimensions {found:?}, expected {expected:?}"));
        }
        let (lo, hi) = h1_2k_range(v);
        for w in &witnesses {
            let h0 = h0_blowup(&w.config, 1).map_err(|e| e.to_string())?;
            let h1 = h1_2k(&w.config).map_err(|e| e.to_string())?;
            if h0 != w.dimension || h1 < lo || h1 > hi {
                return Err(format!("v={v}: witness claims {}, has h0 {h0}, h1(2K) {h1}", w.dimension));
            }
        }
        Ok(())
    })
}

/// Rank of jet matrices is stable under transposition and row reversal.
pub fn check_rank_properties(samples: u32, seed: u64) -> CheckOutcome {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed);
    run("rank invariances", 0..samples, |i| {
        let v = rng.gen_range(1..=12);
        let k = rng.gen_range(1..=2);
        let config = random_plane_configuration(&mut rng, v);
        let m = jet_matrix(&config, k).map_err(|e| e.to_string())?.matrix().clone();
        let r = rank(&m);
        let mut reversed: Vec<Vec<BigRat>> = m.row_iter().map(|row| row.to_vec()).collect();
        reversed.reverse();
        let reversed = crate::exact_linalg::RatMatrix::from_rows(m.cols(), reversed);
        if r == rank(&m.transpose()) && r == rank(&reversed) && r <= m.rows().min(m.cols()) {
            Ok(())
        } else {
            Err(format!("sample {i}: v={v}, k={k}, rank {r}"))
        }
    })
}

/// Serre column identity, vanishing plurigenera and semicontinuity in every
/// Kodaira family with `m <= m_max`.
pub fn check_families(m_max: u32, k_max: u32) -> CheckOutcome {
    let families: Vec<(u32, u32)> = (2..=m_max).flat_map(|m| (1..=m / 2).map(move |l| (m, l))).collect();
    run("Kodaira family reports", families, |(m, ell)| {
        let fam = KodairaFamily::new(m, ell).map_err(|e| e.to_string())?;
        let report = noninvariance_report_hirzebruch(&fam, k_max).map_err(|e| e.to_string())?;
        for r in &report.rows {
            let ok = r.h2_kp1k_central == r.h0_minus_kk_central
                && r.h2_kp1k_general == r.h0_minus_kk_general
                && r.plurigenus_kp1_central == 0
                && r.plurigenus_kp1_general == 0
                && r.is_semicontinuous();
            if !ok {
                return Err(format!("m={m}, ell={ell}, k={}: {r:?}", r.k));
            }
        }
        // F_2 -> F_0 is the only family here whose fibers never differ.
        if m >= 3 && !report.any_jump() {
            return Err(format!("m={m}, ell={ell}: no jump up to k={k_max}"));
        }
        Ok(())
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SelfcheckReport {
    pub budget: u32,
    pub checks: Vec<CheckOutcome>,
    pub warnings: Vec<String>,
}

impl SelfcheckReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(CheckOutcome::passed)
    }

    pub fn first_failure(&self) -> Option<&CheckOutcome> {
        self.checks.iter().find(|c| !c.passed())
    }
}

/// Runs every check. Budget `b` covers `k <= min(b, 10)`, `m <= 12`,
/// `v <= min(4 + b, 12)` and `10 b` random samples; the default budget
/// covers the full grid.
pub fn selfcheck(budget: u32, seed: u64) -> SelfcheckReport {
    let mut warnings = Vec::new();
    if budget == 0 {
        warnings.push("budget 0: no checks were run".to_string());
        return SelfcheckReport {
            budget,
            checks: Vec::new(),
            warnings,
        };
    }
    let k_max = budget.min(10);
    let m_max = 12;
    let v_max = (4 + budget as usize).min(12);
    let samples = 10 * budget;
    let checks = vec![
        check_formula_sweep(m_max, k_max, &dim_formula),
        check_regime_boundary(k_max, &dim_formula),
        check_h1_corollary(m_max, k_max, &h1_pluricanonical_formula),
        check_noether(12),
        check_forced_regime(samples, seed),
        check_achievable(v_max, seed),
        check_rank_properties(samples, seed),
        check_families(m_max, k_max),
    ];
    SelfcheckReport {
        budget,
        checks,
        warnings,
    }
}
