use torslab_core::config::{RunConfig, CONFIGURED_INSTANCES};
use torslab_core::verify::{CheckId, Status, Workbench};

fn bench(spec: &str) -> Workbench {
    Workbench::new(spec.parse().unwrap(), RunConfig::default()).unwrap()
}

#[test]
fn every_configured_instance_passes() {
    for spec in CONFIGURED_INSTANCES {
        let report = bench(spec).run_suite(&CheckId::ALL);
        for c in &report.checks {
            assert_eq!(c.status, Status::Pass, "{spec} {}: {:?} {:?}", c.id, c.witness, c.notes);
        }
    }
}

#[test]
fn count_identities_hold_across_checks() {
    for spec in CONFIGURED_INSTANCES {
        let wb = bench(spec);
        let tors = wb.tors().unwrap().len();
        assert_eq!(wb.torf().unwrap().len(), tors, "{spec}");
        assert_eq!(wb.cc_monobricks().unwrap().len(), tors, "{spec}");
        assert_eq!(wb.wide().unwrap().len(), wb.semibricks().unwrap().len(), "{spec}");
        assert_eq!(wb.wide().unwrap().len(), tors, "{spec}");
    }
}

#[test]
fn lin4_reports_catalan_count() {
    let report = bench("linA:4").run_suite(&CheckId::ALL);
    assert!(report.passed());
    let sd = report.checks.iter().find(|c| c.id == CheckId::Sd).unwrap();
    assert_eq!(sd.counts["tors"], 42);
    assert_eq!(sd.counts["tors_cjr_samples"], 1000);
}

#[test]
fn report_json_shape() {
    let report = bench("linA:2").run_suite(&CheckId::parse_list("T1,T2").unwrap());
    let v = serde_json::to_value(&report).unwrap();
    assert_eq!(v["algebra"], "linA:2");
    assert!(v["kappa_order"].as_str().unwrap().contains("ext_kappa"));
    let check = &v["checks"][0];
    for key in ["id", "status", "counts", "witness", "ms"] {
        assert!(check.get(key).is_some(), "missing {key}");
    }
    assert_eq!(check["status"], "pass");
}

#[test]
fn caps_turn_into_skips() {
    let config = RunConfig { max_indecs: 4, ..RunConfig::default() };
    let wb = Workbench::new("linA:3".parse().unwrap(), config).unwrap();
    let r = wb.run_check(CheckId::T5);
    assert_eq!(r.status, Status::Skipped);
    assert!(r.notes.iter().any(|n| n.contains("cap")));
    assert!(wb.run_suite(&CheckId::ALL).passed());
}
