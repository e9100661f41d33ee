use std::collections::BTreeSet;
use std::sync::Arc;

use prmq::census::{self, DEFAULT_BUDGET};
use prmq::gf::GaloisField;
use prmq::prm::{self, Method};
use prmq::projspace::ProjectiveSpace;
use prmq::quadric::QuadricClass;
use prmq::Exec;

#[test]
fn all_pairs_scan_matches_interpolation_search() {
    let field = Arc::new(GaloisField::with_order(2).unwrap());
    let space = Arc::new(ProjectiveSpace::new(field, 3).unwrap());
    let forms: Vec<_> = (0..prm::projective_form_count(&space))
        .map(|t| prm::projective_form(&space, t))
        .collect();
    let sets: Vec<_> = forms.iter().map(|f| f.point_set()).collect();
    let classes: Vec<_> = forms.iter().map(|f| f.classify().unwrap().class).collect();
    let mut naive = BTreeSet::new();
    for (i, a) in sets.iter().enumerate() {
        if matches!(classes[i], QuadricClass::DoubleHyperplane | QuadricClass::ConjugatePair) {
            continue;
        }
        for (j, b) in sets.iter().enumerate() {
            if a.is_strict_subset(b) {
                naive.insert((forms[i].to_string(), forms[j].to_string()));
            }
        }
    }
    let found: BTreeSet<_> = census::find_containments(2, 3, DEFAULT_BUDGET, Exec::Parallel)
        .unwrap()
        .into_iter()
        .map(|v| (v.inner, v.outer))
        .collect();
    assert_eq!(naive, found);
}

#[test]
fn outputs_do_not_depend_on_execution_mode() {
    for method in Method::ALL {
        let a = census::brute_force_census(3, 2, method, DEFAULT_BUDGET, Exec::Sequential).unwrap();
        let b = census::brute_force_census(3, 2, method, DEFAULT_BUDGET, Exec::Parallel).unwrap();
        assert_eq!(a.to_json(), b.to_json());
    }
    let a = census::find_containments(2, 3, DEFAULT_BUDGET, Exec::Sequential).unwrap();
    let b = census::find_containments(2, 3, DEFAULT_BUDGET, Exec::Parallel).unwrap();
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
}

#[test]
fn closed_form_matches_brute_force_on_larger_fields() {
    for (q, n) in [(5, 2), (3, 3)] {
        let t = census::brute_force_census(q, n, Method::Characterization, DEFAULT_BUDGET, Exec::Parallel)
            .unwrap();
        assert!(t.is_consistent(), "{}", t.to_csv());
    }
}

#[test]
fn minimum_distance_of_every_scannable_code() {
    for (q, n) in [(2, 1), (2, 2), (2, 3), (3, 1), (3, 2), (4, 1), (4, 2), (5, 2)] {
        let code = prm::PrmCode::new(q, n).unwrap();
        let d = code.minimum_distance(Exec::Parallel).unwrap();
        assert_eq!(d as u128, code.expected_minimum_distance(), "({q},{n})");
    }
}
