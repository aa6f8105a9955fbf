use plfeq::engine::{pli, Form};
use plfeq::terms::Index;
use plfeq_cli::cache::EquationCache;
use plfeq_cli::record::{to_json, EquationRecord};

#[test]
fn records_round_trip_up_to_weight_six() {
    for n in Index::all_up_to_weight(6) {
        for form in [Form::Canonical, Form::Compact] {
            let r = pli(&n, form).unwrap();
            let s = to_json(&EquationRecord::new(&r)).unwrap();
            let back: EquationRecord = serde_json::from_str(&s).unwrap();
            assert_eq!(back.to_result().unwrap(), r, "({n}) {form:?}");
        }
    }
}

#[test]
fn cache_returns_what_was_stored() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = EquationCache::open(tmp.path()).unwrap();
    let indices = Index::all_up_to_weight(6);
    for n in &indices {
        cache.put(&pli(n, Form::Canonical).unwrap()).unwrap();
    }
    let reopened = EquationCache::open(tmp.path()).unwrap();
    for n in &indices {
        let hit = reopened.get(n, Form::Canonical).unwrap_or_else(|| panic!("miss for ({n})"));
        assert_eq!(hit, pli(n, Form::Canonical).unwrap());
        hit.check_structure().unwrap();
    }
}

#[test]
fn tampered_record_is_rejected() {
    let tmp = tempfile::tempdir().unwrap();
    let cache = EquationCache::open(tmp.path()).unwrap();
    let n: Index = "1,2".parse().unwrap();
    let r = cache.get_or_compute(&n, Form::Canonical).unwrap();
    let path = tmp.path().join("canonical/1-2.json");
    let s = std::fs::read_to_string(&path).unwrap();
    // a weight-4 generator in a weight-3 equation
    std::fs::write(&path, s.replacen("\"k\": 2", "\"k\": 3", 1)).unwrap();
    assert!(cache.get(&n, Form::Canonical).is_none());
    assert_eq!(cache.get_or_compute(&n, Form::Canonical).unwrap(), r);
}
