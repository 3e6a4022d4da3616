use std::sync::Arc;

use glg_core::corpus::{self, BUILTIN_NAMES};
use glg_core::enumerate::{census, check_grading, enum_gradings};
use glg_core::exactmath::Field;
use glg_core::grading::{is_refinement, validate_grading};
use glg_core::realize::{realize, verify_certificate, Mode, SearchLimits, Status};

fn fields() -> Vec<Field> {
    vec![
        Field::Rationals,
        Field::prime(5).unwrap(),
        Field::prime(7).unwrap(),
    ]
}

#[test]
fn builtins_meet_their_expectations_in_every_mode() {
    for field in fields() {
        for name in BUILTIN_NAMES {
            let ex = corpus::builtin(name, field).unwrap();
            let table = ex.grading.fusion_table();
            for mode in Mode::ALL {
                let outcome = realize(&table, mode, &SearchLimits::default());
                assert_eq!(
                    outcome.status(),
                    ex.expected.for_mode(mode),
                    "{name} over {field} in {mode}"
                );
                assert!(
                    verify_certificate(&table, &outcome).unwrap(),
                    "{name} over {field} in {mode}"
                );
            }
        }
    }
}

#[test]
fn unknown_builtin_is_an_error() {
    assert!(corpus::builtin("nope", Field::Rationals).is_err());
}

#[test]
fn fine_grading_coarsens_to_the_counterexample() {
    let fine = corpus::semisimple6_fine_grading(Field::Rationals);
    let coarse = corpus::semisimple6_grading(Field::Rationals);
    assert!(is_refinement(&fine, &coarse).unwrap());
    assert!(!is_refinement(&coarse, &fine).unwrap());
    let blocks: Vec<Vec<String>> = fine
        .labels()
        .iter()
        .filter(|l| *l != "h" && *l != "e1")
        .map(|l| vec![l.clone()])
        .chain(std::iter::once(vec!["h".to_string(), "e1".to_string()]))
        .collect();
    let merged = fine.coarsen(&blocks, None).unwrap();
    assert!(merged.same_decomposition(&coarse));
    assert!(merged.labels().iter().any(|l| l == "h+e1"));
    // the group realization is lost on coarsening
    let table = merged.fusion_table();
    let outcome = realize(&table, Mode::Group, &SearchLimits::default());
    assert_eq!(outcome.status(), Status::NotRealizable);
}

#[test]
fn regrading_through_validate_gives_the_same_table() {
    for name in BUILTIN_NAMES {
        let ex = corpus::builtin(name, Field::Rationals).unwrap();
        let parts = ex
            .grading
            .labels()
            .iter()
            .cloned()
            .zip(ex.grading.parts().iter().cloned())
            .collect();
        let again = validate_grading(Arc::clone(&ex.algebra), parts).unwrap();
        assert_eq!(again.fusion_table(), ex.grading.fusion_table());
    }
}

#[test]
fn census_over_small_fields() {
    let gf2 = Field::gf2();
    for dim in 1..=3 {
        let report = census(gf2, dim, 0).unwrap();
        assert!(report.confirmed(), "dim {dim}: {:?}", report.failures);
        assert_eq!(report.certificates_verified, report.gradings_checked);
    }
    let gf3 = Field::prime(3).unwrap();
    let report = census(gf3, 2, 2).unwrap();
    assert!(report.confirmed());
    assert_eq!(report.algebras_total, 9);
}

#[test]
fn solvable4_fails_where_dimension_three_never_does() {
    let check = check_grading(&corpus::solvable4_grading(Field::gf2()));
    assert!(!check.realizable());
    // the remark algebra's gradings are all fine
    let alg = Arc::new(corpus::remark3_algebra(Field::gf2()));
    for g in enum_gradings(&alg).unwrap() {
        assert!(check_grading(&g).realizable(), "{g}");
    }
}
