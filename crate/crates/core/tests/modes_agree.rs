use aqar_core::enumerate::{enumerate_transitive_classes, enumerate_variety_groups};
use aqar_core::groupmodel::VarietyParams;
use aqar_core::matgrp::{classify_elem_abelian_r, GlSpace};
use aqar_core::{Config, ExecMode};

fn modes() -> [Config; 2] {
    [
        Config { mode: ExecMode::Sequential, ..Config::default() },
        Config { mode: ExecMode::Parallel, ..Config::default() },
    ]
}

#[test]
fn transitive_inventories_match() {
    for (n, q, r) in [(4, 2, 3), (5, 2, 5), (6, 2, 3)] {
        let [a, b] = modes().map(|cfg| enumerate_transitive_classes(n, q, r, &cfg).unwrap());
        assert_eq!(a.classes.len(), b.classes.len(), "degree {n}");
        for (x, y) in a.classes.iter().zip(&b.classes) {
            assert_eq!((x.order, x.signature, x.class_size), (y.order, y.signature, y.class_size));
            assert_eq!(x.representative.generators(), y.representative.generators());
        }
        assert_eq!(a.notes, b.notes);
    }
}

#[test]
fn census_json_matches() {
    for (p, e) in [([3, 2, 5], [1, 1, 0]), ([2, 3, 5], [2, 1, 1])] {
        let params = VarietyParams::new(p, e).unwrap();
        let [a, b] =
            modes().map(|cfg| serde_json::to_string(&enumerate_variety_groups(&params, &cfg).unwrap()).unwrap());
        assert_eq!(a, b);
    }
}

#[test]
fn census_json_shape() {
    let params = VarietyParams::new([3, 2, 5], [1, 1, 0]).unwrap();
    let v = serde_json::to_value(enumerate_variety_groups(&params, &Config::default()).unwrap()).unwrap();
    assert_eq!(v["count"], 2);
    let reps = v["representatives"].as_array().unwrap();
    assert_eq!(reps[0]["id"], "G1");
    assert!(reps.iter().all(|g| g["order"] == 6));
    assert_eq!(v["signatures"].as_array().unwrap().len(), 2);
}

#[test]
fn gl_classes_match() {
    for (t, alpha, r) in [(2, 3, 3), (2, 3, 7), (3, 2, 2)] {
        let sp = GlSpace::make(t, 1, alpha).unwrap();
        let [a, b] = modes().map(|cfg| classify_elem_abelian_r(&sp, r, &cfg).unwrap());
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.class_size, y.class_size);
            assert_eq!(x.group.generators(), y.group.generators());
        }
    }
}
