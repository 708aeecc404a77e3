//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on any failure.

use std::f64::consts::{FRAC_PI_2, PI};
use std::time::{Duration, Instant};

use bjortho::analysis::{
    euclidean_section_search, oracle_agreement, parallelogram_defect, radon_defect, section_candidates,
    structural_invariants, sum_acute_equivalence_check, SECTION_TOL,
};
use bjortho::preserver::{build_preserver, compose_inf_sum, preserver_from_table, EtaTable, PreserverMap};
use bjortho::{is_bj_orthogonal, unit_vector_at_angle, verify_preserver, NormedSpace};

const MARGIN: f64 = 1e-9;
const SEED: u64 = 7;

struct Outcome {
    ok: bool,
    detail: String,
}

fn space(s: &str) -> NormedSpace {
    NormedSpace::parse_compact(s).unwrap()
}

fn dj() -> NormedSpace {
    NormedSpace::day_james(3.0, 1.5).unwrap()
}

fn radon_symmetry() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for p in [1.5, 2.0, 3.0, 4.0] {
        let s = NormedSpace::day_james(p, p / (p - 1.0)).unwrap();
        let t = Instant::now();
        let r = radon_defect(&s, 720, 1e-8).unwrap();
        let fast = t.elapsed() < Duration::from_secs(10);
        ok &= r.defect <= 1e-8 && fast;
        detail.push(format!("{s}: {:.2e}", r.defect));
    }
    for p in [1.5, 3.0, 4.0] {
        let s = NormedSpace::lp(2, p).unwrap();
        let t = Instant::now();
        let r = radon_defect(&s, 720, 1e-8).unwrap();
        let fast = t.elapsed() < Duration::from_secs(10);
        ok &= r.defect > 1e-2 && r.witness.is_some() && fast;
        let w = r.witness.map(|(a, b)| format!(" at ({a:.4}, {b:.4})")).unwrap_or_default();
        detail.push(format!("{s}: {:.4}{w}", r.defect));
    }
    Outcome { ok, detail: detail.join("; ") }
}

fn eta_construction() -> Outcome {
    let plane = dj();
    let t = EtaTable::build(&plane, 1024).unwrap();
    let v = t.values();
    let endpoints = (v[0] - FRAC_PI_2).abs() <= 1e-10 && (v[1024] - PI).abs() <= 1e-10;
    let monotone = v.len() == 1025 && v.windows(2).all(|w| w[1] > w[0]);
    let worst = t.residuals().iter().fold(0.0_f64, |m, r| m.max(*r));
    let nodes_orthogonal = t.grid().iter().zip(v).all(|(&a, &b)| {
        let x = unit_vector_at_angle(&plane, a).unwrap();
        let y = unit_vector_at_angle(&plane, b).unwrap();
        is_bj_orthogonal(&plane, &x, &y, 1e-8).unwrap()
    });
    Outcome {
        ok: endpoints && monotone && worst <= 1e-8 && nodes_orthogonal,
        detail: format!("1025 nodes, max residual {worst:.2e}, monotone {monotone}, endpoints {endpoints}"),
    }
}

fn report_ok(r: &bjortho::VerificationReport) -> bool {
    r.pass
        && r.disagreements == 0
        && r.acute_violations == 0
        && r.max_norm_error <= 1e-9
        && r.max_homog_error <= 1e-12
}

fn preserver_correctness(map: &PreserverMap) -> Outcome {
    let r = verify_preserver(map, 10_000, MARGIN, SEED);
    let PreserverMap::RadonPlane { eta, .. } = map else { unreachable!() };
    let faulty = preserver_from_table(eta.with_swapped_entries(256, 768)).unwrap();
    let f = verify_preserver(&faulty, 10_000, MARGIN, SEED);
    let fault_caught = !f.pass && f.disagreements >= 1;
    Outcome {
        ok: report_ok(&r) && fault_caught,
        detail: format!(
            "disagreements {}, acute violations {}, excluded {}, norm err {:.1e}, homog err {:.1e}, modulus {:.3}; fault run: {} disagreements",
            r.disagreements, r.acute_violations, r.boundary_excluded, r.max_norm_error, r.max_homog_error,
            r.continuity_modulus, f.disagreements
        ),
    }
}

fn sum_lifting(map: &PreserverMap) -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for n in [1, 2, 8] {
        let id = PreserverMap::Identity { space: NormedSpace::linf(n).unwrap() };
        let sum = compose_inf_sum(vec![map.clone(), id]).unwrap();
        let r = verify_preserver(&sum, 10_000, MARGIN, SEED);
        ok &= report_ok(&r);
        detail.push(format!("linf:{n} pass={} disagreements={}", r.pass, r.disagreements));
    }
    Outcome { ok, detail: detail.join("; ") }
}

fn sum_acute_equivalence() -> Outcome {
    let mut ok = true;
    let mut detail = Vec::new();
    for (x, y) in [("lp:2:2", "linf:1"), ("dayjames:3:1.5", "linf:2")] {
        let r = sum_acute_equivalence_check(&space(x), &space(y), 10_000, MARGIN, SEED).unwrap();
        ok &= r.disagreements == 0 && r.excluded_fraction < 0.05;
        detail.push(format!(
            "{x}+{y}: {} disagreements, {} ties, excluded {:.2}%",
            r.disagreements,
            r.exact_ties,
            100.0 * r.excluded_fraction
        ));
    }
    Outcome { ok, detail: detail.join("; ") }
}

fn non_isometry() -> Outcome {
    let d = parallelogram_defect(&dj(), &[1.0, 0.0], &[0.0, 1.0]).unwrap();
    let value_ok = (d - 0.107_243_2).abs() <= 1e-6;
    let hilbert = space("sum(lp:2:2,linf:1)");
    let a = euclidean_section_search(&hilbert, &section_candidates(3, 1000, SEED), 100, SECTION_TOL, SEED).unwrap();
    let day = space("sum(dayjames:3:1.5,linf:1)");
    let b = euclidean_section_search(&day, &section_candidates(3, 1000, SEED), 100, SECTION_TOL, SEED).unwrap();
    Outcome {
        ok: value_ok && a.flagged.contains(&0) && b.flagged.is_empty(),
        detail: format!(
            "defect {d:.7}; l2 sum: canonical flagged {}, {} of 1000 flagged; day-james sum: {} flagged",
            a.flagged.contains(&0),
            a.flagged.len(),
            b.flagged.len()
        ),
    }
}

fn cross_spaces() -> Vec<NormedSpace> {
    ["lp:2:2", "lp:2:3", "linf:2", "dayjames:3:1.5", "sum(lp:2:2,linf:1)", "sum(dayjames:3:1.5,linf:2)", "sum(lp:2:3,linf:1)"]
        .iter()
        .map(|s| space(s))
        .collect()
}

fn oracle_cross_validation() -> Outcome {
    // Enough draws that at least 10^4 pairs survive the boundary exclusion.
    let r = oracle_agreement(&cross_spaces(), 10_500, MARGIN, SEED).unwrap();
    Outcome {
        ok: r.pass && r.orthogonality_compared >= 10_000,
        detail: format!(
            "two-sided {}/{} disagree, one-sided {}/{} disagree, excluded {}",
            r.orthogonality_disagreements,
            r.orthogonality_compared,
            r.one_sided_disagreements,
            r.one_sided_compared,
            r.boundary_excluded
        ),
    }
}

fn structural_suite() -> Outcome {
    let r = structural_invariants(&cross_spaces(), 11_000, MARGIN, SEED).unwrap();
    let props = [
        ("nondegeneracy", r.nondegeneracy),
        ("scaling", r.positive_scaling),
        ("reflection", r.reflection),
        ("orthogonal=acute+obtuse", r.orthogonal_is_acute_and_obtuse),
        ("cone convexity", r.cone_convexity),
    ];
    let ok = r.pass && props.iter().all(|(_, p)| p.checked >= 10_000 && p.violations == 0);
    let detail = props
        .iter()
        .map(|(n, p)| format!("{n} {}/{}", p.violations, p.checked))
        .collect::<Vec<_>>()
        .join(", ");
    Outcome { ok, detail }
}

fn main() {
    let start = Instant::now();
    let t = Instant::now();
    let map = build_preserver(&dj(), 1024).unwrap();
    let build_time = t.elapsed();

    type Run<'a> = Box<dyn Fn() -> Outcome + 'a>;
    let criteria: Vec<(&str, Duration, Duration, Run)> = vec![
        ("1 radon symmetry", Duration::from_secs(70), Duration::ZERO, Box::new(radon_symmetry)),
        ("2 eta construction", Duration::from_secs(5), Duration::ZERO, Box::new(eta_construction)),
        ("3 preserver correctness", Duration::from_secs(30), build_time, Box::new(|| preserver_correctness(&map))),
        ("4 sum lifting", Duration::from_secs(60), build_time, Box::new(|| sum_lifting(&map))),
        ("5 sum acute equivalence", Duration::from_secs(30), Duration::ZERO, Box::new(sum_acute_equivalence)),
        ("6 non-isometry evidence", Duration::from_secs(60), Duration::ZERO, Box::new(non_isometry)),
        ("7 oracle cross-validation", Duration::from_secs(30), Duration::ZERO, Box::new(oracle_cross_validation)),
        ("8 structural invariants", Duration::from_secs(30), Duration::ZERO, Box::new(structural_suite)),
    ];

    let mut failures = 0;
    for (name, budget, extra, run) in &criteria {
        let t = Instant::now();
        let outcome = run();
        let elapsed = t.elapsed() + *extra;
        let ok = outcome.ok && elapsed <= *budget;
        failures += usize::from(!ok);
        println!(
            "{} criterion {name} ({:.2}s / {}s): {}",
            if ok { "PASS" } else { "FAIL" },
            elapsed.as_secs_f64(),
            budget.as_secs(),
            outcome.detail
        );
    }
    println!("acceptance: {}/{} passed in {:.1}s", criteria.len() - failures, criteria.len(), start.elapsed().as_secs_f64());
    if failures > 0 {
        std::process::exit(1);
    }
}
