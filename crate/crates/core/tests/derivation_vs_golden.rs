//! The derived determining system must reproduce the golden reference
//! transcriptions, each up to an overall rational factor.

use num::rational::BigRational;
use num::traits::Zero;
use superint_core::determining::{
    compatibility_condition, cross_compat_l, extract_determining_system, separable_split,
    PotentialForm,
};
use superint_core::jets::DiffPoly;
use superint_core::operator::IntegralCoefficients;
use superint_core::{golden, sexpr};

fn assert_matches(derived: &DiffPoly, name: &str) {
    let reference = golden::load(name).unwrap();
    let ratio = derived
        .ratio_to(&reference)
        .unwrap_or_else(|| panic!("{name}: derived equation is not a rational multiple"));
    assert!(!ratio.is_zero(), "{name}: zero ratio");
    println!("{name}: ratio {ratio}");
}

#[test]
fn golden_files_are_in_sync_with_transcriptions() {
    let mut entries = golden::all().unwrap();
    entries.extend(superint_core::golden_exotic::all().unwrap());
    for (name, expr) in entries {
        let on_disk = golden::load(name).unwrap();
        assert_eq!(
            sexpr::to_sexpr(&expr),
            sexpr::to_sexpr(&on_disk),
            "golden file {name}.sexp is stale"
        );
        // byte-exact round trip through the parser
        let reparsed = sexpr::from_sexpr(&sexpr::to_sexpr(&on_disk)).unwrap();
        assert_eq!(sexpr::to_sexpr(&reparsed), sexpr::to_sexpr(&on_disk));
    }
}

#[test]
fn leading_polynomials_match() {
    let sys =
        extract_determining_system(&IntegralCoefficients::generic(), PotentialForm::General)
            .unwrap();
    for (i, name) in ["f1", "f2", "f3", "f4", "f5"].iter().enumerate() {
        let derived = DiffPoly::from_mpoly(sys.f[i].clone());
        let reference = golden::load(name).unwrap();
        // the leading polynomials must match exactly, not just up to a factor
        let ratio = derived.ratio_to(&reference).unwrap();
        assert_eq!(ratio, BigRational::from_integer(1.into()), "{name}");
    }
}

#[test]
fn third_order_equations_match() {
    let sys =
        extract_determining_system(&IntegralCoefficients::generic(), PotentialForm::General)
            .unwrap();
    for (eq, name) in sys
        .order3
        .iter()
        .zip(["det_3rd_a", "det_3rd_b", "det_3rd_c", "det_3rd_d"])
    {
        assert_matches(eq, name);
    }
}

#[test]
fn first_order_equations_match() {
    let sys =
        extract_determining_system(&IntegralCoefficients::generic(), PotentialForm::General)
            .unwrap();
    for (eq, name) in sys.order1.iter().zip(["det_1st_a", "det_1st_b"]) {
        assert_matches(eq, name);
    }
}

#[test]
fn compatibility_pde_matches() {
    let sys =
        extract_determining_system(&IntegralCoefficients::generic(), PotentialForm::General)
            .unwrap();
    let compat = compatibility_condition(&sys).unwrap();
    assert_matches(&compat, "compat_pde");
}

#[test]
fn separable_condition_and_split_odes_match() {
    let split = separable_split(&IntegralCoefficients::generic()).unwrap();
    assert_matches(&split.mixed, "mixed_separable");
    assert_matches(&split.eq_x[0], "v1_ode_a");
    assert_matches(&split.eq_x[1], "v1_ode_b");
    assert_matches(&split.eq_y[0], "v2_ode_a");
    assert_matches(&split.eq_y[1], "v2_ode_b");
}

#[test]
fn verbatim_transcription_discrepancies_are_localized() {
    let reports = golden::mixed_separable_discrepancies();
    assert_eq!(reports.len(), 2, "{reports:#?}");
    let numeric = &reports[0];
    assert!(numeric.location.contains("V2'"), "{numeric:?}");
    assert!(numeric.verbatim.contains("2140"), "{numeric:?}");
    assert!(numeric.corrected.contains("240"), "{numeric:?}");
    assert!(reports[1].location.contains("V2'''"), "{:?}", reports[1]);
    // the derivation must reject the verbatim form and accept the corrected one
    let split = separable_split(&IntegralCoefficients::generic()).unwrap();
    let verbatim = golden::load("mixed_separable_verbatim").unwrap();
    assert!(split.mixed.ratio_to(&verbatim).is_none());
}

#[test]
fn cross_compatibility_matches() {
    let sys = extract_determining_system(
        &IntegralCoefficients::generic(),
        PotentialForm::Separable,
    )
    .unwrap();
    let cross = cross_compat_l(&sys).unwrap();
    assert_matches(&cross, "cross_l");
}
