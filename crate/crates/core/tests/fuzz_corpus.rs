//! Replays the checked-in fuzz seeds through the same round trips the fuzz
//! targets assert.

use std::path::PathBuf;

use harmdesign::cli::parse_width;
use harmdesign::designcheck::PointSet;
use harmdesign::exact::{int, BigRational};
use harmdesign::fisher::{
    certificate_from_json, certificate_to_json, verify_certificate, HarmonicIndexSet,
};

fn seeds(target: &str) -> Vec<(String, String)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../fuzz/corpus")
        .join(target);
    let mut out: Vec<(String, String)> = std::fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|e| {
            let p = e.unwrap().path();
            (
                p.file_name().unwrap().to_string_lossy().into_owned(),
                std::fs::read_to_string(&p).unwrap(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn point_set_seeds() {
    let mut loaded = 0;
    for (name, s) in seeds("point_set_json") {
        if let Ok(y) = PointSet::from_json(&s) {
            assert_eq!(
                PointSet::from_json(&y.to_json().to_string()).unwrap(),
                y,
                "{name}"
            );
            loaded += 1;
        }
    }
    assert_eq!(loaded, 3);
}

#[test]
fn index_set_seeds() {
    let mut ok = Vec::new();
    for (name, s) in seeds("index_set") {
        if let Ok(ts) = HarmonicIndexSet::parse(&s) {
            let list: Vec<String> = ts.indices().iter().map(u32::to_string).collect();
            assert_eq!(
                HarmonicIndexSet::parse(&list.join(",")).unwrap(),
                ts,
                "{name}"
            );
            ok.push(name);
        }
    }
    assert_eq!(ok, ["10_6_2", "12_8_4", "6", "8_4"]);
}

#[test]
fn width_seeds() {
    let zero = BigRational::from_integer(0.into());
    let mut ok = 0;
    for (_, s) in seeds("width") {
        if let Ok(w) = parse_width(&s) {
            assert!(w > zero && w <= int(1));
            ok += 1;
        }
    }
    assert_eq!(ok, 5);
}

#[test]
fn certificate_seeds() {
    for (name, s) in seeds("certificate_json") {
        let cert = certificate_from_json(&s).unwrap_or_else(|e| panic!("{name}: {e}"));
        assert!(verify_certificate(&cert).ok, "{name}");
        let out = certificate_to_json(&cert).to_string();
        let again = certificate_from_json(&out).unwrap();
        assert_eq!(certificate_to_json(&again).to_string(), out, "{name}");
    }
}
