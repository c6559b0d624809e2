use std::path::PathBuf;

use corrkit::io::{load_columns, write_paired_csv};
use corrkit::{load_paired, DataFormat, PairedSample};
use proptest::prelude::*;

fn fixture() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures/machining.jsonl")
}

const FEATURES: [&str; 5] = ["speed", "feed", "rms", "energy", "counts"];

#[test]
fn jsonl_fixture_loads_per_key() {
    let path = fixture();
    let samples: Vec<PairedSample> = FEATURES
        .iter()
        .map(|k| load_paired(&path, DataFormat::from_path(&path), k, "ra").unwrap())
        .collect();
    assert_eq!(samples.len(), 5);
    assert!(samples.iter().all(|s| s.len() == 50));

    // first and last records, copied from the fixture text
    let first = [100.0, 0.05, 1.5, 0.0, 0.0];
    let last = [140.0, 0.05, 1.825, 93.75, 18.0];
    for (k, s) in samples.iter().enumerate() {
        assert_eq!(s.xs()[0], first[k], "{}", FEATURES[k]);
        assert_eq!(s.xs()[49], last[k], "{}", FEATURES[k]);
        assert_eq!(s.ys()[0], 0.4);
        assert_eq!(s.ys()[49], 1.72);
    }
}

#[test]
fn jsonl_to_csv_and_back() {
    let path = fixture();
    let dir = tempfile::tempdir().unwrap();
    for key in FEATURES {
        let s = load_paired(&path, DataFormat::Jsonl, key, "ra").unwrap();
        let out = dir.path().join(format!("{key}.csv"));
        write_paired_csv(std::fs::File::create(&out).unwrap(), &s, key, "ra").unwrap();
        assert_eq!(load_paired(&out, DataFormat::Csv, key, "ra").unwrap(), s);
    }
}

#[test]
fn missing_key_is_reported() {
    let err = load_columns(&fixture(), DataFormat::Jsonl, &["torque"]).unwrap_err();
    assert_eq!(err, corrkit::CorrError::MissingColumn("torque".into()));
}

proptest! {
    #[test]
    fn csv_round_trip_is_identity(pts in prop::collection::vec((-1e6..1e6f64, -1e-3..1e-3f64), 2..100)) {
        let s = PairedSample::from_pairs(&pts).unwrap();
        let mut buf = Vec::new();
        write_paired_csv(&mut buf, &s, "x", "y").unwrap();
        let cols = corrkit::io::read_csv_columns(buf.as_slice(), &["x", "y"]).unwrap();
        prop_assert_eq!(PairedSample::new(cols[0].clone(), cols[1].clone()).unwrap(), s);
    }
}
