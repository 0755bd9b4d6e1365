#![allow(dead_code)]

use proptest::prelude::*;

use projconn::{
    GaussianRational, MatrixA, Monomial, Polynomial, QuotientRing, RingElement, Variables,
};

pub fn ring(modulus: &str) -> QuotientRing {
    QuotientRing::from_text(modulus, &Variables::xyz()).unwrap()
}

pub fn coefficient() -> impl Strategy<Value = GaussianRational> {
    (-4i64..=4, -2i64..=2, 1i64..=3).prop_map(|(re, im, den)| {
        &GaussianRational::from_ratio(re, den)
            + &(&GaussianRational::i() * &GaussianRational::from_ratio(im, den))
    })
}

/// Polynomial in `x, y, z` with at most `terms` terms of degree `<= max_deg`.
pub fn polynomial(max_deg: u32, terms: usize) -> impl Strategy<Value = Polynomial> {
    prop::collection::vec(
        ((0..=max_deg, 0..=max_deg, 0..=max_deg), coefficient()),
        0..=terms,
    )
    .prop_map(move |ts| {
        let vars = Variables::xyz();
        Polynomial::from_terms(
            &vars,
            ts.into_iter()
                .filter(|((a, b, c), _)| a + b + c <= max_deg)
                .map(|((a, b, c), k)| (Monomial::new(vec![a, b, c]), k)),
        )
    })
}

pub fn element(
    ring: QuotientRing,
    max_deg: u32,
    terms: usize,
) -> impl Strategy<Value = RingElement> {
    polynomial(max_deg, terms).prop_map(move |p| ring.nf(&p).unwrap())
}

pub fn matrix(
    ring: QuotientRing,
    n: usize,
    max_deg: u32,
    terms: usize,
) -> impl Strategy<Value = MatrixA> {
    let r2 = ring.clone();
    prop::collection::vec(element(ring, max_deg, terms), n * n)
        .prop_map(move |entries| MatrixA::new(&r2, n, n, entries).unwrap())
}

pub mod props;

/// `a1*d1 + a2*d2 + a3*d3` for the Hamiltonian derivations of the modulus.
pub fn derivation(r: QuotientRing) -> impl Strategy<Value = projconn::Derivation> {
    let f = r.modulus();
    let g: Vec<RingElement> = (0..3)
        .map(|k| r.nf(&f.partial_derivative(k).unwrap()).unwrap())
        .collect();
    let basis = [
        projconn::Derivation::new(&r, vec![g[1].clone(), -&g[0], r.zero()]).unwrap(),
        projconn::Derivation::new(&r, vec![g[2].clone(), r.zero(), -&g[0]]).unwrap(),
        projconn::Derivation::new(&r, vec![r.zero(), g[2].clone(), -&g[1]]).unwrap(),
    ];
    prop::collection::vec(element(r, 1, 2), 3).prop_map(move |a| {
        let mut d = basis[0].scale(&a[0]).unwrap();
        d = d.try_add(&basis[1].scale(&a[1]).unwrap()).unwrap();
        d.try_add(&basis[2].scale(&a[2]).unwrap()).unwrap()
    })
}

pub const SPHERE: &str = "x^2+y^2+z^2-1";
pub const ELLIPSOID: &str = "x^2+y^3+z^4-1";
