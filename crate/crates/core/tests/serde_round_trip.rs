use dzeta_core::coaction::oracle_trace;
use dzeta_core::matrices::Level;
use dzeta_core::period::{from_vector, RestrictedVector};
use dzeta_core::spectral::SpectralReport;
use dzeta_core::{HomogPoly, IndexPair, MatrixBundle};

#[test]
fn bundles_round_trip() {
    for level in [Level::One, Level::Two, Level::Three] {
        for k in [4, 6, 12, 20] {
            let b = MatrixBundle::build(level, k).unwrap();
            let json = serde_json::to_string(&b).unwrap();
            let back: MatrixBundle = serde_json::from_str(&json).unwrap();
            assert_eq!(back, b);
            assert_eq!(serde_json::to_string(&back).unwrap(), json);
        }
    }
}

#[test]
fn bundle_wire_format() {
    let b = MatrixBundle::build(Level::Two, 12).unwrap();
    let v = serde_json::to_value(&b).unwrap();
    assert_eq!(v["level"], 2);
    assert_eq!(v["weight"], 12);
    assert_eq!(v["c"][0][0], "6885/256");
    assert_eq!(v["c"][3][1], "0");
    assert_eq!(v["index"][0], serde_json::json!([9, 3]));
    let level_one = serde_json::to_value(MatrixBundle::build(Level::One, 12).unwrap()).unwrap();
    assert!(level_one.get("d").is_none());
}

#[test]
fn malformed_bundles_are_rejected() {
    let good = serde_json::to_value(MatrixBundle::build(Level::Two, 8).unwrap()).unwrap();
    let mut bad_index = good.clone();
    bad_index["index"] = serde_json::json!([[3, 5], [5, 3]]);
    assert!(serde_json::from_value::<MatrixBundle>(bad_index).is_err());
    let mut bad_entry = good.clone();
    bad_entry["c"][0][0] = serde_json::json!("1/0");
    assert!(serde_json::from_value::<MatrixBundle>(bad_entry).is_err());
    let mut bad_level = good;
    bad_level["level"] = serde_json::json!(5);
    assert!(serde_json::from_value::<MatrixBundle>(bad_level).is_err());
}

#[test]
fn polynomial_maps_round_trip() {
    let p = from_vector(&RestrictedVector::from_ints(10, &[2, -9, 18]).unwrap());
    let json = serde_json::to_value(&p).unwrap();
    assert_eq!(json, serde_json::json!({"2,6": "2", "4,4": "-9", "6,2": "18"}));
    let map = serde_json::from_value(json).unwrap();
    assert_eq!(HomogPoly::from_json_map(8, &map).unwrap(), p);
}

#[test]
fn reports_and_traces_serialize() {
    let r = SpectralReport::build(24, Level::Three).unwrap();
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["bs_dim"], 2);
    assert_eq!(v["bs_kernel"].as_array().unwrap().len(), 2);
    assert_eq!(v["hecke_charpoly"].as_array().unwrap().len(), 3);

    let m = IndexPair::new(9, 3).unwrap();
    let t = oracle_trace(Level::Two, 12, m, IndexPair::new(3, 9).unwrap()).unwrap();
    let v = serde_json::to_value(&t).unwrap();
    assert_eq!(v["value"], "6885/256");
    assert!(!v["terms"].as_array().unwrap().is_empty());
}
