//! The ARS singularity test must reproduce the known singularity structure
//! of the registered equations: the quantum third-order equations pass with
//! `W ~ -hbar^2 / (y - y0)` and resonances {-1, 1, 6}, the Painleve
//! transcendents pass with their textbook data, and the classical first
//! integrals exhibit a movable algebraic branch point instead.

use num::rational::BigRational;
use superint_core::painleve::{branch_exponent, leading_balances, painleve_test};
use superint_core::registry;

fn minus_hbar2() -> superint_core::mpoly::MPoly {
    use superint_core::mpoly::MPoly;
    MPoly::int(-1) * MPoly::var_pow("hbar", 2)
}

#[test]
fn quantum_third_order_equations_pass() {
    for key in ["VbII3", "VbI"] {
        let report = painleve_test(key).unwrap();
        assert!(report.passes, "{key}: {report:?}");
        assert_eq!(report.branches.len(), 1, "{key}");
        let b = &report.branches[0];
        assert_eq!(b.p, -1, "{key}");
        assert_eq!(b.d0, minus_hbar2(), "{key}");
        let mut res = b.resonances.clone();
        res.sort();
        assert_eq!(res, vec![-1, 1, 6], "{key}");
        assert!(b.failed_conditions.is_empty(), "{key}");
    }
}

#[test]
fn chazy_form_passes() {
    let report = painleve_test("chazyI").unwrap();
    assert!(report.passes, "{report:?}");
}

#[test]
fn painleve_one_and_two_pass_with_textbook_data() {
    let p1 = painleve_test("painleve1").unwrap();
    assert!(p1.passes, "{p1:?}");
    assert_eq!(p1.branches.len(), 1);
    assert_eq!(p1.branches[0].p, -2);
    let mut res = p1.branches[0].resonances.clone();
    res.sort();
    assert_eq!(res, vec![-1, 6]);

    let p2 = painleve_test("painleve2").unwrap();
    assert!(p2.passes, "{p2:?}");
    assert_eq!(p2.branches.len(), 2, "two leading signs");
    for b in &p2.branches {
        assert_eq!(b.p, -1);
        let mut res = b.resonances.clone();
        res.sort();
        assert_eq!(res, vec![-1, 4]);
    }
}

#[test]
fn weierstrass_passes() {
    let report = painleve_test("weierstrass").unwrap();
    assert!(report.passes, "{report:?}");
    assert_eq!(report.branches[0].p, -2);
}

#[test]
fn classical_integrals_have_movable_branch_points() {
    for key in ["clas1", "clas2"] {
        let spec = registry::ode(key).unwrap();
        // no pole-type dominant balance exists
        let balances = leading_balances(&spec.equation, &spec.func).unwrap();
        assert!(balances.is_empty(), "{key}: {balances:?}");
        // instead there is a movable algebraic branch with exponent 3/2
        let branch = branch_exponent(&spec.equation, &spec.func).unwrap();
        assert!(!branch.integer, "{key}");
        assert_eq!(
            branch.exponent,
            BigRational::new(3.into(), 2.into()),
            "{key}"
        );
    }
}

#[test]
fn mutated_equation_fails_the_test() {
    use superint_core::exotic::func_w;
    use superint_core::jets::DiffPoly;
    use superint_core::mpoly::MPoly;
    use superint_core::painleve::painleve_test_on;
    let spec = registry::ode("painleve2").unwrap();
    // W'' - 2 W^3 - y W - alpha with the cubic coefficient detuned
    let mutated =
        spec.equation.clone() + DiffPoly::func(&func_w()).pow(3).scale(&MPoly::rational(1, 2));
    let report = painleve_test_on(&mutated, &spec.func, "painleve2-mutated").unwrap();
    assert!(!report.passes, "{report:?}");
}
