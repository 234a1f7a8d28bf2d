use altcsit_core::rational::{q, to_f64};
use altcsit_core::sim::{from_csv, rate_sweep_with, to_csv};
use altcsit_core::{
    catalog, compose_corner, dof_slope, rate_sweep, Corner, Execution, LambdaPmf, SchemeId,
    SweepConfig, SweepTarget,
};

#[test]
fn every_scheme_has_its_nominal_slope() {
    let cfg = SweepConfig::uniform(20.0, 60.0, 5.0, 2000, 41).unwrap();
    for spec in catalog() {
        let (d1, d2) = dof_slope(&rate_sweep(spec.id, &cfg).unwrap()).unwrap();
        let p = spec.dof_pair();
        assert!((d1 - to_f64(&p.d1)).abs() < 0.1, "{}: d1 {d1}", spec.id);
        assert!((d2 - to_f64(&p.d2)).abs() < 0.1, "{}: d2 {d2}", spec.id);
    }
}

#[test]
fn sweeps_are_reproducible() {
    let cfg = SweepConfig::uniform(0.0, 40.0, 10.0, 100, 7).unwrap();
    let a = rate_sweep(SchemeId::S53_1, &cfg).unwrap();
    let b = rate_sweep(SchemeId::S53_1, &cfg).unwrap();
    assert_eq!(a, b);
    let c = rate_sweep_with(SchemeId::S53_1, &cfg, Execution::Sequential).unwrap();
    assert_eq!(a, c);
    let other = SweepConfig::uniform(0.0, 40.0, 10.0, 100, 8).unwrap();
    assert_ne!(a, rate_sweep(SchemeId::S53_1, &other).unwrap());
}

#[test]
fn averaged_rates_increase_with_snr() {
    let cfg = SweepConfig::uniform(-10.0, 50.0, 5.0, 200, 3).unwrap();
    for spec in catalog() {
        let out = rate_sweep(spec.id, &cfg).unwrap();
        for w in out.windows(2) {
            assert!(
                w[1].rate1 >= w[0].rate1 && w[1].rate2 >= w[0].rate2,
                "{}",
                spec.id
            );
        }
        assert!(out.iter().all(|s| s.rate1 >= 0.0 && s.rate2 >= 0.0));
    }
}

#[test]
fn s43_1_gains_two_thirds_per_log_p() {
    let cfg = SweepConfig::new(vec![40.0, 50.0], 2000, 11).unwrap();
    let out = rate_sweep(SchemeId::S43_1, &cfg).unwrap();
    let diff = out[1].rate1 - out[0].rate1;
    let expect = (2.0 / 3.0) * 10f64.log2();
    assert!((diff - expect).abs() < 0.1, "{diff} vs {expect}");
}

#[test]
fn schedule_slope_is_the_weighted_dof() {
    let pmf = LambdaPmf::parse("PP=1/6, PD=1/6, PN=1/6, DD=1/6").unwrap();
    let cfg = SweepConfig::uniform(20.0, 60.0, 5.0, 1500, 5).unwrap();
    for corner in [Corner::P0, Corner::P1] {
        let s = compose_corner(&pmf, corner).unwrap();
        let nominal = s.achieved();
        let (d1, d2) = dof_slope(&rate_sweep(SweepTarget::Schedule(s), &cfg).unwrap()).unwrap();
        assert!(
            (d1 - to_f64(&nominal.d1)).abs() < 0.1,
            "{corner}: {d1} vs {nominal}"
        );
        assert!(
            (d2 - to_f64(&nominal.d2)).abs() < 0.1,
            "{corner}: {d2} vs {nominal}"
        );
    }
    assert_eq!(
        compose_corner(&pmf, Corner::P0).unwrap().achieved().d1,
        q(5, 6)
    );
}

#[test]
fn csv_output() {
    let cfg = SweepConfig::uniform(10.0, 20.0, 5.0, 10, 1).unwrap();
    let out = rate_sweep(SchemeId::S85, &cfg).unwrap();
    let text = to_csv(&out, "S8/5");
    assert!(text.starts_with("snr_db,rate1,rate2,trials,scheme_id\n"));
    let back = from_csv(&text).unwrap();
    assert_eq!(back.len(), 3);
    for ((s, label), orig) in back.iter().zip(&out) {
        assert_eq!(label, "S8/5");
        assert_eq!(s.trials, 10);
        assert!((s.rate1 - orig.rate1).abs() < 1e-10 * orig.rate1.max(1.0));
    }
}
