use dca::lab::registry;

#[test]
fn every_fixture_claim_holds() {
    let mut failed = Vec::new();
    for f in registry() {
        let out = f.run();
        if !out.passed {
            failed.push(serde_json::to_string_pretty(&out.to_json()).unwrap());
        }
    }
    assert!(failed.is_empty(), "{}", failed.join("\n"));
}

#[test]
fn shipped_json_matches_registry() {
    let dir = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures");
    let reg = registry();
    let shipped = std::fs::read_dir(&dir).unwrap().count();
    assert_eq!(shipped, reg.len(), "stale files in {}", dir.display());
    for f in reg {
        let text = std::fs::read_to_string(dir.join(format!("{}.json", f.id))).unwrap();
        assert_eq!(text, f.to_pretty(), "{} is out of date; run the export_fixtures example", f.id);
        let parsed: serde_json::Value = serde_json::from_str(&text).unwrap();
        assert_eq!(dca::lab::Fixture::from_json(&parsed).unwrap(), f);
    }
}
