use serde_json::{Map, Value};

use pluricanon::blowup::{
    generate_configuration, h1_2k, h1_2k_range, jet_matrix, monomial_count, parse_points,
    ConfigurationKind, PointConfiguration,
};
use pluricanon::family::{
    noninvariance_report_blowup, noninvariance_report_hirzebruch, BlowupFiber, KodairaFamily,
};
use pluricanon::hirzebruch::{
    dim_enumerated, dim_formula, formula_overcount, h1_pluricanonical_formula, h1_via_rr_chain,
    section_basis, HirzebruchSurface,
};
use pluricanon::selfcheck;
use pluricanon::surface_invariants::h2_via_serre;

use crate::record::{OutputRecord, Provenance::*};
use crate::{BlowupArgs, FamilyArgs, GeneratedKind, HirzebruchArgs, Outcome, SelfcheckArgs, SpecialKind};

macro_rules! usage {
    ($e:expr) => {
        match $e {
            Ok(v) => v,
            Err(e) => return Outcome::Usage(e.to_string()),
        }
    };
}

fn row(pairs: &[(&str, Value)]) -> Map<String, Value> {
    pairs.iter().map(|(k, v)| (k.to_string(), v.clone())).collect()
}

fn point_strings(config: &PointConfiguration) -> Value {
    config
        .points()
        .iter()
        .map(|p| {
            let coords: Vec<String> = p.iter().map(|x| x.to_string()).collect();
            Value::from(coords.join(" "))
        })
        .collect()
}

pub fn hirzebruch(args: &HirzebruchArgs) -> Outcome {
    let (m, k) = (args.m, args.k);
    let surface = HirzebruchSurface::new(m);
    let mut rec = OutputRecord::new("hirzebruch");
    rec.param("m", m).param("k", k).param("basis", args.basis);
    rec.put("surface", surface.to_string());

    let enumerated = dim_enumerated(surface, k);
    rec.number("h0_minus_kk_enumerated", enumerated, Enumeration);
    rec.number("h2_kk", h2_via_serre(k, dim_enumerated(surface, k - 1)), Serre);
    let chain = usage!(h1_via_rr_chain(surface, k));
    rec.number("h1_kk_rr_chain", chain, RrChain);

    let mut failed = false;
    if m == 0 {
        rec.note("product surface P^1 x P^1: the closed formula is undefined at m = 0");
    } else {
        let fv = usage!(dim_formula(surface, k));
        rec.number("h0_minus_kk_formula", fv.value, ClosedFormula);
        rec.put("in_regime", fv.in_regime);
        if fv.in_regime {
            if fv.value != enumerated {
                failed = true;
                rec.warn(format!(
                    "cross-check failed: formula {} != enumerated {enumerated}",
                    fv.value
                ));
            }
        } else {
            rec.number("formula_overcount", usage!(formula_overcount(surface, k)), ClosedFormula);
            rec.warn(format!(
                "closed formula out of regime at m = {m}: it counts {} sections, enumeration finds {enumerated}",
                fv.value
            ));
        }
    }
    match h1_pluricanonical_formula(surface, k) {
        Ok(value) => {
            rec.number("h1_kk_corollary", value, ClosedFormula);
            if value != chain {
                failed = true;
                rec.warn(format!("cross-check failed: corollary {value} != Riemann-Roch {chain}"));
            }
        }
        Err(e) => {
            rec.note(format!("h1 corollary not applicable: {e}"));
        }
    }

    if args.basis {
        if m == 0 {
            rec.note("no section basis description for m = 0; sections are bidegree (2k, 2k) monomials");
        } else {
            let basis = usage!(section_basis(surface, k));
            let rows = basis
                .terms
                .iter()
                .map(|t| {
                    row(&[
                        ("fiber_power", t.fiber_power.into()),
                        ("degree_bound", t.degree_bound.into()),
                    ])
                })
                .collect();
            rec.table(
                "basis",
                rows,
                &[("fiber_power", Input), ("degree_bound", Enumeration)],
            );
        }
    }
    Outcome::Done { record: rec, failed }
}

fn generated(kind: GeneratedKind) -> ConfigurationKind {
    match kind {
        GeneratedKind::Generic => ConfigurationKind::Generic,
        GeneratedKind::Collinear => ConfigurationKind::Collinear,
        GeneratedKind::OnConic => ConfigurationKind::OnConic,
    }
}

fn read_points(path: &std::path::Path) -> Result<PointConfiguration, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    parse_points(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn blowup(args: &BlowupArgs, seed: u64) -> Outcome {
    let mut rec = OutputRecord::new("blowup");
    let config = if let Some(path) = &args.points {
        rec.param("points", path.display().to_string());
        usage!(read_points(path))
    } else {
        let kind = args.generate.expect("clap requires --points or --generate");
        let v = args.v.expect("clap requires --v with --generate") as usize;
        rec.param("generate", format!("{kind:?}").to_lowercase()).param("v", v).param("seed", seed);
        usage!(generate_configuration(&generated(kind), v, seed))
    };
    let k = args.k;
    rec.param("k", k);

    let jets = usage!(jet_matrix(&config, k));
    let monomials = monomial_count(config.n(), k);
    let rank = jets.rank();
    let h0 = (monomials - rank) as u64;
    rec.number("n", config.n() as u64, Input)
        .number("v", config.v() as u64, Input)
        .number("monomial_count", monomials as u64, ClosedFormula)
        .number("conditions", jets.matrix().rows() as u64, ClosedFormula)
        .number("rank", rank as u64, Rank)
        .number("h0_minus_kk", h0, Rank)
        .put("points", point_strings(&config));

    let mut failed = false;
    if config.n() == 2 && k == 1 {
        let h1 = usage!(h1_2k(&config));
        let (lo, hi) = h1_2k_range(config.v());
        let in_range = (lo..=hi).contains(&h1);
        rec.number("h2_2k", h2_via_serre(2, h0), Serre)
            .number("h1_2k", h1, RrChain)
            .number("h1_2k_range_low", lo, ClosedFormula)
            .number("h1_2k_range_high", hi, ClosedFormula)
            .put("h1_2k_in_range", in_range);
        if !in_range {
            failed = true;
            rec.warn(format!("cross-check failed: h1(2K) = {h1} outside [{lo}, {hi}]"));
        }
    }
    Outcome::Done { record: rec, failed }
}

pub fn family(args: &FamilyArgs, seed: u64) -> Outcome {
    if args.kodaira {
        kodaira_family(args)
    } else {
        blowup_family(args, seed)
    }
}

fn kodaira_family(args: &FamilyArgs) -> Outcome {
    let (m, ell) = (args.m.unwrap_or_default(), args.ell.unwrap_or_default());
    let fam = usage!(KodairaFamily::new(m, ell));
    let report = usage!(noninvariance_report_hirzebruch(&fam, args.kmax));

    let mut rec = OutputRecord::new("family");
    rec.param("kind", "kodaira")
        .param("m", m)
        .param("ell", ell)
        .param("kmax", args.kmax)
        .param("expect_jump", args.expect_jump);
    rec.put("central", report.central.to_string())
        .put("general", report.general.to_string())
        .put("any_jump", report.any_jump())
        .put("semicontinuous", report.is_semicontinuous());
    let rows = report
        .rows
        .iter()
        .map(|r| {
            row(&[
                ("k", r.k.into()),
                ("h0_minus_kk_central", r.h0_minus_kk_central.into()),
                ("h0_minus_kk_general", r.h0_minus_kk_general.into()),
                ("plurigenus_kp1_central", r.plurigenus_kp1_central.into()),
                ("plurigenus_kp1_general", r.plurigenus_kp1_general.into()),
                ("h2_kp1k_central", r.h2_kp1k_central.into()),
                ("h2_kp1k_general", r.h2_kp1k_general.into()),
                ("h1_kp1k_central", r.h1_kp1k_central.into()),
                ("h1_kp1k_general", r.h1_kp1k_general.into()),
                ("jump", r.jump.into()),
            ])
        })
        .collect();
    rec.table(
        "rows",
        rows,
        &[
            ("k", Input),
            ("h0_minus_kk_central", Enumeration),
            ("h0_minus_kk_general", Enumeration),
            ("plurigenus_kp1_central", ScopeAxiom),
            ("plurigenus_kp1_general", ScopeAxiom),
            ("h2_kp1k_central", Serre),
            ("h2_kp1k_general", Serre),
            ("h1_kp1k_central", RrChain),
            ("h1_kp1k_general", RrChain),
        ],
    );
    rec.note("plurigenera h0((k+1)K) of rational surfaces are 0 on every fiber");

    let mut failed = false;
    if !report.is_semicontinuous() {
        failed = true;
        rec.warn("cross-check failed: central fiber has fewer sections than the general fiber");
    }
    if args.expect_jump && !report.any_jump() {
        failed = true;
        rec.warn("no jump found but --expect-jump was given");
    }
    Outcome::Done { record: rec, failed }
}

fn put_fiber(rec: &mut OutputRecord, prefix: &str, fiber: &BlowupFiber) {
    rec.number(&format!("{prefix}_h0_minus_k"), fiber.h0_minus_k, Rank)
        .number(&format!("{prefix}_plurigenus_2k"), fiber.plurigenus_2k, ScopeAxiom)
        .number(&format!("{prefix}_h2_2k"), fiber.h2_2k, Serre)
        .number(&format!("{prefix}_h1_2k"), fiber.h1_2k, RrChain)
        .put(&format!("{prefix}_points"), point_strings(&fiber.config));
}

fn blowup_family(args: &FamilyArgs, seed: u64) -> Outcome {
    let special_kind = args.special.expect("clap requires --special with --blowup");
    let mut rec = OutputRecord::new("family");
    rec.param("kind", "blowup")
        .param("special", format!("{special_kind:?}").to_lowercase())
        .param("seed", seed)
        .param("expect_jump", args.expect_jump);

    let special = match special_kind {
        SpecialKind::Custom => {
            let Some(path) = &args.points else {
                return Outcome::Usage("--special custom needs --points".into());
            };
            rec.param("points", path.display().to_string());
            usage!(read_points(path))
        }
        other => {
            let Some(v) = args.v else {
                return Outcome::Usage("--v is required unless --special custom".into());
            };
            let kind = match other {
                SpecialKind::Generic => ConfigurationKind::Generic,
                SpecialKind::Collinear => ConfigurationKind::Collinear,
                SpecialKind::OnConic => ConfigurationKind::OnConic,
                SpecialKind::Custom => unreachable!(),
            };
            rec.param("v", v);
            usage!(generate_configuration(&kind, v as usize, seed))
        }
    };
    // The comparison fiber must not reuse the special fiber's stream.
    let report = usage!(noninvariance_report_blowup(&special, seed.wrapping_add(1)));

    rec.number("v", report.v as u64, Input);
    put_fiber(&mut rec, "special", &report.special);
    put_fiber(&mut rec, "generic", &report.generic);
    rec.put("jump", report.jump).put("boundary_case", report.boundary_case);
    if report.boundary_case {
        rec.note("v = 5 already shows a jump in h2(2K)");
    }
    rec.note("plurigenera h0(2K) of rational surfaces are 0 on every fiber");

    let mut failed = false;
    if report.special.h2_2k < report.generic.h2_2k {
        failed = true;
        rec.warn("cross-check failed: generic fiber has more sections than the special fiber");
    }
    if args.expect_jump && !report.jump {
        failed = true;
        rec.warn("no jump found but --expect-jump was given");
    }
    Outcome::Done { record: rec, failed }
}

pub fn selfcheck(args: &SelfcheckArgs, seed: u64) -> Outcome {
    let report = selfcheck::selfcheck(args.budget, seed);
    let mut rec = OutputRecord::new("selfcheck");
    rec.param("budget", args.budget).param("seed", seed);
    let rows = report
        .checks
        .iter()
        .map(|c| {
            row(&[
                ("name", c.name.clone().into()),
                ("cases", c.cases.into()),
                ("passed", c.passed().into()),
                ("counterexample", c.counterexample.clone().map_or(Value::Null, Value::from)),
            ])
        })
        .collect();
    rec.table("checks", rows, &[("cases", Enumeration)]);
    rec.put("passed", report.passed());
    for w in &report.warnings {
        rec.warn(w.clone());
    }
    if let Some(fail) = report.first_failure() {
        eprintln!(
            "selfcheck failed in {:?}: {}",
            fail.name,
            fail.counterexample.as_deref().unwrap_or_default()
        );
    }
    Outcome::Done {
        failed: !report.passed(),
        record: rec,
    }
}
