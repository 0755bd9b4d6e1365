use projconn::catalog::{ELLIPSOID, SPHERE};
use projconn::verify;

fn validator() -> jsonschema::Validator {
    let schema: serde_json::Value =
        serde_json::from_str(include_str!("../../../docs/report.schema.json"))
            .expect("schema is JSON");
    jsonschema::validator_for(&schema).expect("schema compiles")
}

fn assert_valid(v: &jsonschema::Validator, text: &str) {
    let value: serde_json::Value = serde_json::from_str(text).unwrap();
    let errors: Vec<String> = v.iter_errors(&value).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{errors:#?}");
}

#[test]
fn reports_validate() {
    let v = validator();
    for (ex, p, q, r) in [
        (ELLIPSOID, 2, 3, 4),
        (ELLIPSOID, 3, 2, 2),
        (SPHERE, 1, 1, 1),
        (SPHERE, 2, 1, 3),
    ] {
        let rep = verify::verify(ex, p, q, r, 2).unwrap();
        assert_valid(&v, &rep.to_json());
        assert_valid(&v, &rep.to_json_with_timings());
    }
    assert_valid(&v, &verify::sweep(SPHERE, 2, 1, 1, 2).unwrap().to_json());
}

#[test]
fn schema_rejects_bad_status() {
    let v = validator();
    let mut value: serde_json::Value =
        serde_json::from_str(&verify::verify(SPHERE, 1, 1, 1, 1).unwrap().to_json()).unwrap();
    value["checks"][0]["status"] = "skipped".into();
    assert!(!v.is_valid(&value));
}

#[test]
fn report_names_appear_in_listing() {
    for (ex, triples) in [
        (ELLIPSOID, vec![(2, 2, 2), (4, 3, 2)]),
        (SPHERE, vec![(1, 1, 1), (1, 2, 1)]),
    ] {
        let listed = verify::check_names(ex).unwrap();
        for (p, q, r) in triples {
            for c in verify::verify(ex, p, q, r, 1).unwrap().checks {
                assert!(listed.contains(&c.name.as_str()), "{ex}: {}", c.name);
            }
        }
    }
}

#[test]
fn every_failure_has_a_witness() {
    for rep in verify::sweep(SPHERE, 2, 2, 2, 4).unwrap().reports {
        for c in rep.checks {
            assert!(!c.witness.is_empty(), "{}", c.name);
        }
    }
}
