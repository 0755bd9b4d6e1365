//! Property bodies shared by the property suite and the acceptance target.

use proptest::prelude::*;
use proptest::test_runner::{Config, TestError, TestRunner};

use projconn::catalog::build_sphere_line_bundle;
use projconn::{Derivation, MatrixA, RingElement};

use super::{derivation, element, matrix, ring, ELLIPSOID, SPHERE};

pub type Outcome = Result<(), TestCaseError>;

pub fn trace_of_commutator(a: &MatrixA, b: &MatrixA) -> Outcome {
    prop_assert!(a.commutator(b).unwrap().trace().unwrap().is_zero());
    Ok(())
}

pub fn traces_cancel(a: &MatrixA, b: &MatrixA) -> Outcome {
    let ex = build_sphere_line_bundle(1, 1, 1).unwrap();
    let c = a.commutator(b).unwrap();
    let sum = &ex.idempotent.trace_over_image(&c).unwrap()
        + &ex.idempotent.trace_over_kernel(&c).unwrap();
    prop_assert!(sum.is_zero(), "trace sum {}", sum);
    Ok(())
}

pub fn leibniz(d: &Derivation, a: &RingElement, b: &RingElement) -> Outcome {
    let lhs = d.apply(&(a * b)).unwrap();
    let rhs = &(&d.apply(a).unwrap() * b) + &(a * &d.apply(b).unwrap());
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

pub fn antisymmetry_and_jacobi(d: &Derivation, e: &Derivation, g: &Derivation) -> Outcome {
    prop_assert_eq!(d.bracket(e).unwrap(), e.bracket(d).unwrap().neg());
    let j = d
        .bracket(&e.bracket(g).unwrap())
        .unwrap()
        .try_add(&e.bracket(&g.bracket(d).unwrap()).unwrap())
        .unwrap()
        .try_add(&g.bracket(&d.bracket(e).unwrap()).unwrap())
        .unwrap();
    prop_assert!(j.is_zero());
    Ok(())
}

pub fn cayley_hamilton(a: &MatrixA) -> Outcome {
    prop_assert!(a.char_poly().unwrap().eval_matrix(a).unwrap().is_zero());
    Ok(())
}

/// `chi([[a, b], [0, D]]) = chi(a) * chi(D)` with `a` 1x1 and `D` 2x2.
pub fn char_poly_block(a: &RingElement, b: &[RingElement], d: &MatrixA) -> Outcome {
    let r = a.ring().clone();
    let z = r.zero();
    let m = MatrixA::from_rows(
        &r,
        vec![
            vec![a.clone(), b[0].clone(), b[1].clone()],
            vec![z.clone(), d.get(0, 0).clone(), d.get(0, 1).clone()],
            vec![z, d.get(1, 0).clone(), d.get(1, 1).clone()],
        ],
    )
    .unwrap();
    let block = MatrixA::from_rows(&r, vec![vec![a.clone()]]).unwrap();
    let product = block
        .char_poly()
        .unwrap()
        .mul(&d.char_poly().unwrap())
        .unwrap();
    prop_assert_eq!(m.char_poly().unwrap(), product);
    Ok(())
}

pub fn matrix_leibniz(d: &Derivation, a: &MatrixA, b: &MatrixA) -> Outcome {
    let lhs = d.apply_to_matrix(&a.try_mul(b).unwrap()).unwrap();
    let rhs = d
        .apply_to_matrix(a)
        .unwrap()
        .try_mul(b)
        .unwrap()
        .try_add(&a.try_mul(&d.apply_to_matrix(b).unwrap()).unwrap())
        .unwrap();
    prop_assert_eq!(lhs, rhs);
    Ok(())
}

fn report<T: std::fmt::Debug>(r: Result<(), TestError<T>>) -> Result<(), String> {
    r.map_err(|e| format!("{e}"))
}

/// Runs each named property for `cases` cases. Returns the first failure.
pub fn run_all(cases: u32) -> Vec<(&'static str, Result<(), String>)> {
    let config = Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    };
    let sphere = || ring(SPHERE);
    let ellipsoid = || ring(ELLIPSOID);
    let mut out = Vec::new();

    let mut t = TestRunner::new(config.clone());
    out.push((
        "trace of commutator",
        report(t.run(
            &(matrix(sphere(), 3, 2, 3), matrix(sphere(), 3, 2, 3)),
            |(a, b)| trace_of_commutator(&a, &b),
        )),
    ));
    let mut t = TestRunner::new(config.clone());
    out.push((
        "image + kernel trace of commutator",
        report(t.run(
            &(matrix(sphere(), 2, 2, 3), matrix(sphere(), 2, 2, 3)),
            |(a, b)| traces_cancel(&a, &b),
        )),
    ));
    let mut t = TestRunner::new(config.clone());
    out.push((
        "Leibniz rule",
        report(t.run(
            &(
                derivation(ellipsoid()),
                element(ellipsoid(), 3, 4),
                element(ellipsoid(), 3, 4),
            ),
            |(d, a, b)| leibniz(&d, &a, &b),
        )),
    ));
    let mut t = TestRunner::new(config.clone());
    out.push((
        "bracket antisymmetry and Jacobi",
        report(t.run(
            &(
                derivation(sphere()),
                derivation(sphere()),
                derivation(sphere()),
            ),
            |(d, e, g)| antisymmetry_and_jacobi(&d, &e, &g),
        )),
    ));
    let mut t = TestRunner::new(config.clone());
    out.push((
        "Cayley-Hamilton 2x2",
        report(t.run(&matrix(ellipsoid(), 2, 2, 3), |a| cayley_hamilton(&a))),
    ));
    let mut t = TestRunner::new(config.clone());
    out.push((
        "Cayley-Hamilton 3x3",
        report(t.run(&matrix(sphere(), 3, 2, 2), |a| cayley_hamilton(&a))),
    ));
    let mut t = TestRunner::new(config.clone());
    out.push((
        "char_poly of block-triangular 3x3",
        report(t.run(
            &(
                element(sphere(), 2, 3),
                prop::collection::vec(element(sphere(), 2, 3), 2),
                matrix(sphere(), 2, 2, 3),
            ),
            |(a, b, d)| char_poly_block(&a, &b, &d),
        )),
    ));
    let mut t = TestRunner::new(config);
    out.push((
        "matrix Leibniz",
        report(t.run(
            &(
                derivation(sphere()),
                matrix(sphere(), 2, 2, 3),
                matrix(sphere(), 2, 2, 3),
            ),
            |(d, a, b)| matrix_leibniz(&d, &a, &b),
        )),
    ));
    out
}
