use chowkit::io::fixtures;
use chowkit::io::{grid_subgroups, run, Command, JobSpec, Overrides};
use serde_json::Value;

fn job(text: &str, ov: &Overrides) -> JobSpec {
    JobSpec::from_json(text, "test".into(), ov).unwrap()
}

fn conic() -> JobSpec {
    job(&fixtures::CONIC.input_json(), &Overrides::default())
}

#[test]
fn every_command_succeeds_on_the_conic() {
    let text = r#"{"num_vars": 3, "generators": ["z0*z2 - z1^2"], "lambdas": [[1, 1, -2], [1, 0, -1]],
                   "forms": [[1, 2, 3], [0, 1, -1]]}"#;
    let j = job(text, &Overrides::default());
    for c in Command::ALL.into_iter().filter(|c| *c != Command::Selftest) {
        let r = run(c, &j, None);
        assert_eq!(r.exit_code(), 0, "{}: {:?}", c.as_str(), r.error);
        assert!(r.result.is_some(), "{}", c.as_str());
    }
}

#[test]
fn weight_report_has_conic_values() {
    let r = run(Command::Futaki, &conic(), None);
    let v = r.result.unwrap();
    let rec = &v["lambdas"][0];
    assert_eq!(rec["F1"], Value::String("3/4".into()), "{rec}");
}

#[test]
fn reports_are_deterministic() {
    let j = conic();
    for c in [Command::Weight, Command::CgkmVerify, Command::Scan] {
        let a = run(c, &j, None).result_blocks().to_string();
        let b = run(c, &j, None).result_blocks().to_string();
        assert_eq!(a, b);
    }
}

#[test]
fn cache_is_transparent() {
    let dir = tempfile::tempdir().unwrap();
    let j = job(&fixtures::TWISTED_CUBIC.input_json(), &Overrides::default());
    let plain = run(Command::Futaki, &j, None).result_blocks();
    let cold = run(Command::Futaki, &j, Some(dir.path())).result_blocks();
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0);
    let warm = run(Command::Futaki, &j, Some(dir.path())).result_blocks();
    assert_eq!(plain, cold);
    assert_eq!(plain, warm);
}

#[test]
fn non_special_linear_subgroups() {
    let text = r#"{"num_vars": 3, "generators": ["z0*z2 - z1^2"], "lambdas": [[1, 0, 0]]}"#;
    let err = JobSpec::from_json(text, "x".into(), &Overrides::default()).unwrap_err();
    assert_eq!(err.exit_code(), 2);
    let ov = Overrides { allow_gl: true, ..Overrides::default() };
    let r = run(Command::Weight, &job(text, &ov), None);
    assert_eq!(r.exit_code(), 0);
    assert!(r.warnings.iter().any(|w| w.contains("not special linear")));
}

#[test]
fn unknown_fields_are_rejected() {
    let text = r#"{"num_vars": 3, "generators": ["z0*z2 - z1^2"], "lambda": [[1, 1, -2]]}"#;
    assert!(JobSpec::from_json(text, "x".into(), &Overrides::default()).is_err());
}

#[test]
fn incident_forms_report_incidence() {
    // Both forms vanish at [1 : 0 : 0], which lies on the conic.
    let text = r#"{"num_vars": 3, "generators": ["z0*z2 - z1^2"], "forms": [[0, 1, 0], [0, 0, 1]]}"#;
    let r = run(Command::ChowEval, &job(text, &Overrides::default()), None);
    assert_eq!(r.exit_code(), 3);
    assert_eq!(r.error.as_ref().unwrap().code, "incidence");
    assert_eq!(r.result.unwrap()["incident"], Value::Bool(true));
}

#[test]
fn tangent_pencil_warns() {
    let text = r#"{"num_vars": 3, "generators": ["z0*z2 - z1^2"], "forms": [[1, 2, 3], [0, 1, -1]],
                   "pencil": {"a": [[0, 1, 0], [0, 0, 1]], "b": [[1, 2, 3], [0, 0, 1]]}}"#;
    let r = run(Command::ChowEval, &job(text, &Overrides::default()), None);
    assert_eq!(r.exit_code(), 0, "{:?}", r.error);
    assert_eq!(r.result.unwrap()["probe"]["order"].as_i64().unwrap().abs(), 2);
    assert!(r.warnings.iter().any(|w| w.contains("tangent")));
}

#[test]
fn early_window_start_warns() {
    let ov = Overrides { m_start: Some(0), ..Overrides::default() };
    let r = run(Command::Weight, &job(&fixtures::FAT_POINT.input_json(), &ov), None);
    assert!(!r.warnings.is_empty(), "{:?}", r.warnings);
}

#[test]
fn grid_scan_covers_every_vector() {
    let ov = Overrides { use_grid: true, grid_bound: Some(2), ..Overrides::default() };
    let r = run(Command::Scan, &job(&fixtures::CONIC.input_json(), &ov), None);
    assert_eq!(r.exit_code(), 0, "{:?}", r.error);
    assert_eq!(r.result.unwrap()["count"], Value::from(grid_subgroups(3, 2).len()));
}

#[test]
fn cgkm_report_records_ratios() {
    let r = run(Command::CgkmVerify, &job(&fixtures::TWISTED_CUBIC.input_json(), &Overrides::default()), None);
    assert_eq!(r.exit_code(), 0, "{:?}", r.error);
    let t = &r.result.unwrap()["cm_ratio"];
    assert_eq!(t["normalized"]["constant"], Value::Bool(true));
    assert_eq!(t["normalized"]["ratios"][0], Value::String("12".into()));
    assert_eq!(t["conjectured_ratio"], Value::String("12".into()));
}
