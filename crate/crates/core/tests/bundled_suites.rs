use reflect_gkm::{bundled, run_suite, SuiteConfig};

#[test]
fn every_bundled_group_passes() {
    for name in bundled::NAMES {
        let w = bundled::load(name).unwrap().unwrap();
        let cfg = SuiteConfig { trials: 20, naive_control: true, ..SuiteConfig::default() };
        let report = run_suite(&w, &cfg).unwrap();
        for (suite, t) in &report.timings.0 {
            eprintln!("{name} {suite}: {t:?}");
        }
        assert!(report.pass, "{}", report.to_json());
    }
}
