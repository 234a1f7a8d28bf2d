//! End-to-end acceptance checks. Runs as a plain binary so every criterion
//! prints its own PASS/FAIL line; exits nonzero if any fails.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::time::{Duration, Instant};

use altcsit_core::channel::{draw_channels, split_seed};
use altcsit_core::figures::{surface, tradeoff};
use altcsit_core::rational::{int, min_q, one, q, Rational};
use altcsit_core::trace::csit_permits;
use altcsit_core::{
    build_trace, case_of, catalog, check_decodable, compose_corner, marginals, min_csit,
    rate_sweep, region_from_marginals, region_from_pmf, regions_equal, subcase_of, sum_dof,
    validate_schedule, Corner, DofPoint, LambdaPmf, Marginals, RegionCase, SchemeId, Subcase,
    SweepConfig,
};
use num::complex::Complex64;

type Criterion = fn() -> Result<String, String>;

fn pmf(text: &str) -> LambdaPmf {
    LambdaPmf::parse(text).unwrap()
}

fn within(limit: Duration, start: Instant) -> Result<String, String> {
    let took = start.elapsed();
    if took <= limit {
        Ok(format!("{:.2}s", took.as_secs_f64()))
    } else {
        Err(format!(
            "took {:.1}s, limit {}s",
            took.as_secs_f64(),
            limit.as_secs()
        ))
    }
}

fn same_marginals() -> Result<String, String> {
    let start = Instant::now();
    let pmfs = common::pmfs_covering_subcases(1000, 1, 1);
    let mut ok = 0;
    for p in &pmfs[..1000] {
        let direct = region_from_pmf(p);
        let via = region_from_marginals(&marginals(p));
        if direct == via && regions_equal(&direct, &via) {
            ok += 1;
        }
    }
    if ok != 1000 {
        return Err(format!("{ok}/1000 regions agree"));
    }
    Ok(format!(
        "1000/1000 regions agree, {}",
        within(Duration::from_secs(10), start)?
    ))
}

fn min_csit_table() -> Result<String, String> {
    let rows = [
        (q(4, 3), (int(0), q(1, 3))),
        (q(3, 2), (q(1, 4), q(1, 4))),
        (q(8, 5), (q(2, 5), q(1, 5))),
        (q(5, 3), (q(1, 2), q(1, 6))),
        (int(2), (int(1), int(0))),
    ];
    for (dof, want) in rows {
        let got = min_csit(&dof).map_err(|e| e.to_string())?;
        if got != want {
            return Err(format!("min_csit({dof}) = {got:?}, want {want:?}"));
        }
    }
    Ok("5/5 rows exact".into())
}

fn synergy_examples() -> Result<String, String> {
    let cases = [
        ("PD=1/2, DP=1/2", q(5, 3)),
        ("DD=1/5, PN=2/5, NP=2/5", q(8, 5)),
        ("PN=1/2, NP=1/2", q(3, 2)),
        ("DD=1/3, NN=2/3", q(4, 3)),
    ];
    for (text, want) in cases {
        let got = sum_dof(&pmf(text).marginals());
        if got != want {
            return Err(format!("{text}: sum-DoF {got}, want {want}"));
        }
    }
    Ok("4/4 exact".into())
}

fn composer_soundness() -> Result<String, String> {
    let start = Instant::now();
    let pmfs = common::pmfs_covering_subcases(600, 10, 4);
    let mut coverage = [0usize; 6];
    let mut schedules = 0;
    for p in &pmfs {
        let m = p.marginals();
        let case = case_of(&m);
        coverage[Subcase::ALL
            .iter()
            .position(|s| *s == subcase_of(p))
            .unwrap()] += 1;
        for corner in Corner::for_case(case) {
            let s = compose_corner(p, corner).map_err(|e| format!("{corner}: {e}"))?;
            let target = match corner {
                Corner::P0 => {
                    let v = (int(2) + &m.lambda_p) / int(3);
                    DofPoint::new(v.clone(), v)
                }
                Corner::P1 => DofPoint::new(one(), m.lambda_p.clone()),
                Corner::P2 => DofPoint::new(m.lambda_p.clone(), one()),
                Corner::P1star => {
                    DofPoint::new(one() - &m.lambda_d, &m.lambda_p + int(2) * &m.lambda_d)
                }
                Corner::P2star => {
                    DofPoint::new(&m.lambda_p + int(2) * &m.lambda_d, one() - &m.lambda_d)
                }
            };
            let report = validate_schedule(p, &s, &target);
            if !report.passed() {
                return Err(format!(
                    "{corner} for {}:\n{report}",
                    p.to_canonical_string()
                ));
            }
            schedules += 1;
        }
    }
    if coverage.contains(&0) {
        return Err(format!("sub-case coverage {coverage:?}"));
    }
    Ok(format!(
        "{schedules} schedules over {} pmfs, sub-cases {coverage:?}, {}",
        pmfs.len(),
        within(Duration::from_secs(30), start)?
    ))
}

fn decodability() -> Result<String, String> {
    let mut passed = 0;
    let mut total = 0;
    for spec in catalog() {
        for i in 0..1000u64 {
            let ch =
                draw_channels(split_seed(0xDEC0DE, i), spec.slots()).map_err(|e| e.to_string())?;
            let t = build_trace(spec.id, &ch).map_err(|e| e.to_string())?;
            total += 1;
            if check_decodable(&t) == (true, true) {
                passed += 1;
            }
            if spec.id == SchemeId::S85
                && (t.interference_rank(0), t.interference_rank(1)) != (1, 1)
            {
                return Err(format!("S8/5 interference rank not 1 on trial {i}"));
            }
        }
    }
    if passed != total {
        return Err(format!("{passed}/{total} decodable"));
    }
    Ok(format!(
        "{passed}/{total} decodable, S8/5 interference rank 1 throughout"
    ))
}

fn dof_slopes() -> Result<String, String> {
    let start = Instant::now();
    let cfg = SweepConfig::uniform(20.0, 60.0, 5.0, 2000, 2012).map_err(|e| e.to_string())?;
    let mut notes = Vec::new();
    for id in [
        SchemeId::S2,
        SchemeId::S43_1,
        SchemeId::S32_3,
        SchemeId::S53_3,
        SchemeId::S85,
    ] {
        let samples = rate_sweep(id, &cfg).map_err(|e| e.to_string())?;
        let (d1, d2) = altcsit_core::dof_slope(&samples).map_err(|e| e.to_string())?;
        let nominal = altcsit_core::catalog::spec_of(id).dof_pair();
        let (n1, n2) = (to_f64(&nominal.d1), to_f64(&nominal.d2));
        if (d1 - n1).abs() > 0.1 || (d2 - n2).abs() > 0.1 || (d1 + d2 - n1 - n2).abs() > 0.1 {
            return Err(format!(
                "{id}: slopes ({d1:.3}, {d2:.3}), nominal ({n1:.3}, {n2:.3})"
            ));
        }
        notes.push(format!("{id} {:.3}", d1 + d2));
    }
    Ok(format!(
        "{}, {}",
        notes.join(", "),
        within(Duration::from_secs(300), start)?
    ))
}

fn to_f64(r: &Rational) -> f64 {
    altcsit_core::rational::to_f64(r)
}

fn figure_data() -> Result<String, String> {
    let rows = surface(&q(1, 30)).map_err(|e| e.to_string())?;
    for (d, p, s) in &rows {
        let want = min_q(&((int(4) + int(2) * p) / int(3)), &(one() + p + d));
        if *s != want {
            return Err(format!("surface at ({d},{p}): {s} vs {want}"));
        }
    }
    if rows.len() != 31 * 32 / 2 {
        return Err(format!("{} surface points", rows.len()));
    }
    let trade = tradeoff(&one(), &int(2), &q(1, 60)).map_err(|e| e.to_string())?;
    for (x, p, d) in &trade {
        let m = Marginals::from_pd(p.clone(), d.clone()).map_err(|e| e.to_string())?;
        if sum_dof(&m) != *x {
            return Err(format!(
                "tradeoff at {x}: sum-DoF of ({p},{d}) is {}",
                sum_dof(&m)
            ));
        }
    }
    if trade.len() != 61 {
        return Err(format!("{} tradeoff points", trade.len()));
    }
    Ok(format!(
        "{} surface points, {} tradeoff points exact",
        rows.len(),
        trade.len()
    ))
}

fn csit_causality() -> Result<String, String> {
    let bump = Complex64::new(0.37, -0.21);
    let mut probes = 0;
    for spec in catalog() {
        let n = spec.slots();
        let base_ch = draw_channels(77, n).map_err(|e| e.to_string())?;
        let base = build_trace(spec.id, &base_ch).map_err(|e| e.to_string())?;
        for at in 0..n {
            for rx in 0..2 {
                for slot in 0..n {
                    if csit_permits(&spec.state_per_slot, at, rx, slot) {
                        continue;
                    }
                    for antenna in 0..2 {
                        let old = base_ch.get(rx, slot)[antenna];
                        let ch = base_ch.with_entry(rx, slot, antenna, old + bump);
                        let t = build_trace(spec.id, &ch).map_err(|e| e.to_string())?;
                        probes += 1;
                        let same = t.tx[at].iter().zip(base.tx[at].iter()).all(|(a, b)| {
                            a.re.to_bits() == b.re.to_bits() && a.im.to_bits() == b.im.to_bits()
                        });
                        if !same {
                            return Err(format!(
                                "{}: slot {} depends on receiver {} channel at slot {}",
                                spec.id,
                                at + 1,
                                rx + 1,
                                slot + 1
                            ));
                        }
                    }
                }
            }
        }
    }
    Ok(format!(
        "{probes} forbidden perturbations, all transmissions unchanged"
    ))
}

fn main() {
    // sanity: the examples above are in the cases they are meant to cover
    assert_eq!(case_of(&pmf("PN=1/2").marginals()), RegionCase::B);

    let criteria: [(&str, Criterion); 8] = [
        ("same-marginals property", same_marginals),
        ("minimum CSIT table", min_csit_table),
        ("synergy examples", synergy_examples),
        ("composer soundness", composer_soundness),
        ("decodability", decodability),
        ("DoF slopes", dof_slopes),
        ("figure data", figure_data),
        ("CSIT causality", csit_causality),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let outcome = catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|e| {
            let msg = e
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_default();
            Err(format!("panicked: {msg}"))
        });
        match outcome {
            Ok(detail) => println!("PASS {} {name}: {detail}", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL {} {name}: {detail}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}
