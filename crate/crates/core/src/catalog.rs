//! The two example families: the cotangent module of the surface
//! `x^p + y^q + z^r = 1`, and the line bundle cut out by an involution on
//! `x^(2p) + y^(2q) + z^(2r) = 1`.
//!
//! [`expected`] holds the published displays as text templates in
//! `(p, q, r)`. They are parsed independently of the constructors so that
//! golden checks compare a computation against a transcription.

use crate::conn::ProjectivePresentation;
use crate::deriv::Derivation;
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::matring::MatrixA;
use crate::poly::{Polynomial, Variables};
use crate::quotient::{QuotientRing, RingElement};

pub const ELLIPSOID: &str = "ellipsoid";
pub const SPHERE: &str = "sphere";

/// Cotangent module of `A = Q(i)[x,y,z]/(x^p+y^q+z^r-1)`, presented as the
/// image of the fundamental matrix `M` of the splitting
/// `s(e_j) = u_j - (x_j/p_j) dF`.
#[derive(Clone, Debug)]
pub struct EllipsoidCotangent {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub ring: QuotientRing,
    pub presentation: ProjectivePresentation,
    /// `(p x^(p-1), q y^(q-1), r z^(r-1))`.
    pub df: Vec<RingElement>,
    /// `f_y d/dx - f_x d/dy`, `f_z d/dx - f_x d/dz`, `f_z d/dy - f_y d/dz`.
    pub derivations: [Derivation; 3],
}

impl EllipsoidCotangent {
    pub fn m(&self) -> &MatrixA {
        self.presentation.phi()
    }
}

pub fn build_ellipsoid_cotangent(p: u32, q: u32, r: u32) -> Result<EllipsoidCotangent> {
    if p < 2 || q < 2 || r < 2 {
        return Err(Error::InvalidParameter(format!(
            "ellipsoid needs p, q, r >= 2 (got {p}, {q}, {r})"
        )));
    }
    let vars = Variables::xyz();
    let exps = [p, q, r];
    let f = Polynomial::from_terms(
        &vars,
        (0..3)
            .map(|k| {
                (
                    crate::poly::Monomial::var(3, k, exps[k]),
                    GaussianRational::from_integer(1),
                )
            })
            .chain(std::iter::once((
                crate::poly::Monomial::one(3),
                GaussianRational::from_integer(-1),
            ))),
    );
    let ring = QuotientRing::new(f.clone())?;
    let grad: Vec<RingElement> = (0..3)
        .map(|k| ring.nf(&f.partial_derivative(k)?))
        .collect::<Result<_>>()?;

    // column j is s(e_j) = u_j - (x_j / p_j) dF
    let m = MatrixA::from_fn(&ring, 3, 3, |i, j| {
        let coeff = GaussianRational::from_ratio(1, exps[j] as i64);
        let correction = (&ring.var(j) * &grad[i]).scale(&coeff);
        if i == j {
            &ring.one() - &correction
        } else {
            -correction
        }
    });
    let presentation = ProjectivePresentation::new(m, Some(grad.clone()))?;

    let zero = ring.zero();
    let d1 = Derivation::new(&ring, vec![grad[1].clone(), -&grad[0], zero.clone()])?;
    let d2 = Derivation::new(&ring, vec![grad[2].clone(), zero.clone(), -&grad[0]])?;
    let d3 = Derivation::new(&ring, vec![zero, grad[2].clone(), -&grad[1]])?;

    Ok(EllipsoidCotangent {
        p,
        q,
        r,
        ring,
        presentation,
        df: grad,
        derivations: [d1, d2, d3],
    })
}

/// Line bundle on `x^(2p)+y^(2q)+z^(2r) = 1` given by the involution
/// `P = [[x^p, y^q + i z^r], [y^q - i z^r, -x^p]]` and `M = (P + I)/2`.
#[derive(Clone, Debug)]
pub struct SphereLineBundle {
    pub p: u32,
    pub q: u32,
    pub r: u32,
    pub ring: QuotientRing,
    pub involution: MatrixA,
    /// `M = (P + I)/2`, presented as the image of `M`.
    pub idempotent: ProjectivePresentation,
    /// The line bundle `L = ker(M)`, presented as the image of `I - M`.
    pub line_bundle: ProjectivePresentation,
    /// `q y^(2q-1) d/dx - p x^(2p-1) d/dy`, `r z^(2r-1) d/dx - p x^(2p-1) d/dz`,
    /// `q y^(2q-1) d/dz - r z^(2r-1) d/dy`.
    pub derivations: [Derivation; 3],
}

impl SphereLineBundle {
    pub fn m(&self) -> &MatrixA {
        self.idempotent.phi()
    }
}

pub fn build_sphere_line_bundle(p: u32, q: u32, r: u32) -> Result<SphereLineBundle> {
    if p < 1 || q < 1 || r < 1 {
        return Err(Error::InvalidParameter(format!(
            "sphere needs p, q, r >= 1 (got {p}, {q}, {r})"
        )));
    }
    let vars = Variables::xyz();
    let ring = QuotientRing::from_text(&format!("x^{}+y^{}+z^{}-1", 2 * p, 2 * q, 2 * r), &vars)?;
    let x = ring.var(0).pow(p);
    let y = ring.var(1).pow(q);
    let z = ring.var(2).pow(r);
    let iz = z.scale(&GaussianRational::i());
    let involution =
        MatrixA::from_rows(&ring, vec![vec![x.clone(), &y + &iz], vec![&y - &iz, -&x]])?;
    let id = MatrixA::identity(&ring, 2);
    let defect = involution.try_mul(&involution)?.try_sub(&id)?;
    if let Some((row, col, w)) = defect.first_nonzero() {
        return Err(Error::NotIdempotent {
            row,
            col,
            witness: format!("P^2 - I = {w}"),
        });
    }
    let m = involution
        .try_add(&id)?
        .scale_const(&GaussianRational::from_ratio(1, 2));
    let idempotent = ProjectivePresentation::new(m.clone(), None)?;
    let line_bundle = ProjectivePresentation::new(id.try_sub(&m)?, None)?;

    // half-gradient coefficients: q y^(2q-1), p x^(2p-1), r z^(2r-1)
    let hx = ring
        .var(0)
        .pow(2 * p - 1)
        .scale(&GaussianRational::from_integer(p as i64));
    let hy = ring
        .var(1)
        .pow(2 * q - 1)
        .scale(&GaussianRational::from_integer(q as i64));
    let hz = ring
        .var(2)
        .pow(2 * r - 1)
        .scale(&GaussianRational::from_integer(r as i64));
    let zero = ring.zero();
    let d1 = Derivation::new(&ring, vec![hy.clone(), -&hx, zero.clone()])?;
    let d2 = Derivation::new(&ring, vec![hz.clone(), zero.clone(), -&hx])?;
    let d3 = Derivation::new(&ring, vec![zero, -&hz, hy])?;

    Ok(SphereLineBundle {
        p,
        q,
        r,
        ring,
        involution,
        idempotent,
        line_bundle,
        derivations: [d1, d2, d3],
    })
}

/// A transcribed display.
#[derive(Clone, PartialEq, Eq, Debug)]
pub enum Expected {
    Matrix(MatrixA),
    Scalar(RingElement),
    Vector(Vec<RingElement>),
}

impl Expected {
    pub fn as_matrix(&self) -> Option<&MatrixA> {
        match self {
            Expected::Matrix(m) => Some(m),
            _ => None,
        }
    }

    pub fn as_scalar(&self) -> Option<&RingElement> {
        match self {
            Expected::Scalar(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_vector(&self) -> Option<&[RingElement]> {
        match self {
            Expected::Vector(v) => Some(v),
            _ => None,
        }
    }
}

/// Check ids accepted by [`expected`] for each example.
pub fn expected_ids(example: &str) -> Result<&'static [&'static str]> {
    match example {
        ELLIPSOID => Ok(&[
            "M",
            "dF",
            "d1M",
            "d2M",
            "d3M",
            "formone-scalar-1",
            "formone-scalar-2",
            "formone-scalar-3",
            "nested-12-scalar",
            "nested-21-scalar",
            "bracket-term-12-scalar",
            "bracket-12-coefficient",
            "bracket-13-coefficient",
            "bracket-23-coefficient",
        ]),
        SPHERE => Ok(&[
            "P",
            "P-printed",
            "D1M",
            "D2M",
            "D3M",
            "D3M-corrected",
            "R12",
            "R13",
            "R23",
            "R23-corrected",
            "tr12",
            "tr13",
            "tr23",
        ]),
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

/// `(n/d)` as parser text.
fn frac(n: i64, d: i64) -> String {
    format!("({n}/{d})")
}

fn matrix(ring: &QuotientRing, rows: [[String; 3]; 3]) -> Result<Expected> {
    let rows: Vec<Vec<String>> = rows.into_iter().map(|r| r.to_vec()).collect();
    Ok(Expected::Matrix(MatrixA::parse_rows(ring, &rows)?))
}

fn matrix2(ring: &QuotientRing, scale: &str, rows: [[&str; 2]; 2]) -> Result<Expected> {
    let rows: Vec<Vec<String>> = rows
        .iter()
        .map(|r| r.iter().map(|e| format!("{scale}*({e})")).collect())
        .collect();
    Ok(Expected::Matrix(MatrixA::parse_rows(ring, &rows)?))
}

/// The published value for `(example, check)` at parameters `(p, q, r)`.
///
/// Sphere displays other than `P` are only given for `p = q = r = 1`.
pub fn expected(example: &str, check: &str, p: u32, q: u32, r: u32) -> Result<Expected> {
    let unknown = || Error::UnknownCheck {
        example: example.to_string(),
        check: check.to_string(),
    };
    match example {
        ELLIPSOID => {
            if p < 2 || q < 2 || r < 2 {
                return Err(Error::InvalidParameter(format!(
                    "ellipsoid needs p, q, r >= 2 (got {p}, {q}, {r})"
                )));
            }
            let ring = QuotientRing::from_text(&format!("x^{p}+y^{q}+z^{r}-1"), &Variables::xyz())?;
            ellipsoid_expected(&ring, check, p as i64, q as i64, r as i64)?.ok_or_else(unknown)
        }
        SPHERE => {
            if p < 1 || q < 1 || r < 1 {
                return Err(Error::InvalidParameter(format!(
                    "sphere needs p, q, r >= 1 (got {p}, {q}, {r})"
                )));
            }
            let ring = QuotientRing::from_text(
                &format!("x^{}+y^{}+z^{}-1", 2 * p, 2 * q, 2 * r),
                &Variables::xyz(),
            )?;
            match check {
                "P" => {
                    return Ok(Expected::Matrix(MatrixA::parse_rows(
                        &ring,
                        &[
                            vec![format!("x^{p}"), format!("y^{q}+i*z^{r}")],
                            vec![format!("y^{q}-i*z^{r}"), format!("-x^{p}")],
                        ],
                    )?))
                }
                "P-printed" => {
                    return Ok(Expected::Matrix(MatrixA::parse_rows(
                        &ring,
                        &[
                            vec![format!("x^{p}"), format!("y^{q}+i*z^{r}")],
                            vec![format!("y^{p}-i*z^{r}"), format!("-x^{p}")],
                        ],
                    )?))
                }
                _ => {}
            }
            if !expected_ids(SPHERE)?.contains(&check) {
                return Err(unknown());
            }
            if (p, q, r) != (1, 1, 1) {
                return Err(Error::InvalidParameter(format!(
                    "display `{check}` is only given for p = q = r = 1"
                )));
            }
            sphere_expected(&ring, check)?.ok_or_else(unknown)
        }
        other => Err(Error::UnknownExample(other.to_string())),
    }
}

fn ellipsoid_expected(
    ring: &QuotientRing,
    check: &str,
    p: i64,
    q: i64,
    r: i64,
) -> Result<Option<Expected>> {
    let s = |t: String| ring.parse(&t).map(|e| Some(Expected::Scalar(e)));
    let value = match check {
        "M" => matrix(
            ring,
            [
                [
                    format!("1-x^{p}"),
                    format!("-{}*x^{}*y", frac(p, q), p - 1),
                    format!("-{}*x^{}*z", frac(p, r), p - 1),
                ],
                [
                    format!("-{}*x*y^{}", frac(q, p), q - 1),
                    format!("1-y^{q}"),
                    format!("-{}*y^{}*z", frac(q, r), q - 1),
                ],
                [
                    format!("-{}*x*z^{}", frac(r, p), r - 1),
                    format!("-{}*y*z^{}", frac(r, q), r - 1),
                    format!("1-z^{r}"),
                ],
            ],
        )?,
        "dF" => Expected::Vector(vec![
            ring.parse(&format!("{p}*x^{}", p - 1))?,
            ring.parse(&format!("{q}*y^{}", q - 1))?,
            ring.parse(&format!("{r}*z^{}", r - 1))?,
        ]),
        "d1M" => matrix(
            ring,
            [
                [
                    format!("-{}*x^{}*y^{}", p * q, p - 1, q - 1),
                    format!(
                        "-{}*x^{}*y^{q} + {}*x^{}",
                        p * (p - 1),
                        p - 2,
                        frac(p * p, q),
                        2 * (p - 1)
                    ),
                    format!("-{}*x^{}*y^{}*z", frac(q * p * (p - 1), r), p - 2, q - 1),
                ],
                [
                    format!(
                        "-{}*y^{} + {}*x^{p}*y^{}",
                        frac(q * q, p),
                        2 * (q - 1),
                        q * (q - 1),
                        q - 2
                    ),
                    format!("{}*x^{}*y^{}", p * q, p - 1, q - 1),
                    format!("{}*x^{}*y^{}*z", frac(p * q * (q - 1), r), p - 1, q - 2),
                ],
                [
                    format!("-{}*y^{}*z^{}", frac(q * r, p), q - 1, r - 1),
                    format!("{}*x^{}*z^{}", frac(p * r, q), p - 1, r - 1),
                    "0".to_string(),
                ],
            ],
        )?,
        "d2M" => matrix(
            ring,
            [
                [
                    format!("-{}*x^{}*z^{}", p * r, p - 1, r - 1),
                    format!("-{}*x^{}*y*z^{}", frac(r * p * (p - 1), q), p - 2, r - 1),
                    format!(
                        "-{}*x^{}*z^{r} + {}*x^{}",
                        p * (p - 1),
                        p - 2,
                        frac(p * p, r),
                        2 * (p - 1)
                    ),
                ],
                [
                    format!("-{}*y^{}*z^{}", frac(q * r, p), q - 1, r - 1),
                    "0".to_string(),
                    format!("{}*x^{}*y^{}", frac(p * q, r), p - 1, q - 1),
                ],
                [
                    format!(
                        "-{}*z^{} + {}*x^{p}*z^{}",
                        frac(r * r, p),
                        2 * (r - 1),
                        r * (r - 1),
                        r - 2
                    ),
                    format!("{}*x^{}*y*z^{}", frac(p * r * (r - 1), q), p - 1, r - 2),
                    format!("{}*x^{}*z^{}", p * r, p - 1, r - 1),
                ],
            ],
        )?,
        "d3M" => matrix(
            ring,
            [
                [
                    "0".to_string(),
                    format!("-{}*x^{}*z^{}", frac(p * r, q), p - 1, r - 1),
                    format!("{}*x^{}*y^{}", frac(p * q, r), p - 1, q - 1),
                ],
                [
                    format!("-{}*x*y^{}*z^{}", frac(r * q * (q - 1), p), q - 2, r - 1),
                    format!("-{}*y^{}*z^{}", q * r, q - 1, r - 1),
                    format!(
                        "-{}*y^{}*z^{r} + {}*y^{}",
                        q * (q - 1),
                        q - 2,
                        frac(q * q, r),
                        2 * (q - 1)
                    ),
                ],
                [
                    format!("{}*x*y^{}*z^{}", frac(q * r * (r - 1), p), q - 1, r - 2),
                    format!(
                        "-{}*z^{} + {}*y^{q}*z^{}",
                        frac(r * r, q),
                        2 * (r - 1),
                        r * (r - 1),
                        r - 2
                    ),
                    format!("{}*y^{}*z^{}", q * r, q - 1, r - 1),
                ],
            ],
        )?,
        "formone-scalar-1" => return s(format!("({})*x^{}*y^{}", p - q, p - 1, q - 1)),
        "formone-scalar-2" => return s(format!("({})*x^{}*z^{}", p - r, p - 1, r - 1)),
        "formone-scalar-3" => return s(format!("({})*y^{}*z^{}", q - r, q - 1, r - 1)),
        "nested-12-scalar" => {
            return s(format!(
                "({})*x^{}*y^{}*z^{}*(({})*x^{p}+{})",
                p - r,
                p - 2,
                q - 1,
                r - 1,
                p - q,
                q * (p - 1)
            ))
        }
        "nested-21-scalar" => {
            return s(format!(
                "({})*x^{}*y^{}*z^{}*(({})*x^{p}+{})",
                p - q,
                p - 2,
                q - 1,
                r - 1,
                p - r,
                (p - 1) * r
            ))
        }
        "bracket-term-12-scalar" => {
            return s(format!(
                "-({})*{}*x^{}*y^{}*z^{}",
                q - r,
                p * (p - 1),
                p - 2,
                q - 1,
                r - 1
            ))
        }
        "bracket-12-coefficient" => return s(format!("{}*x^{}", p * (p - 1), p - 2)),
        "bracket-13-coefficient" => return s(format!("-{}*y^{}", q * (q - 1), q - 2)),
        "bracket-23-coefficient" => return s(format!("{}*z^{}", r * (r - 1), r - 2)),
        _ => return Ok(None),
    };
    Ok(Some(value))
}

fn sphere_expected(ring: &QuotientRing, check: &str) -> Result<Option<Expected>> {
    let value = match check {
        "D1M" => matrix2(ring, "1/2", [["y", "-x"], ["-x", "-y"]])?,
        "D2M" => matrix2(ring, "1/2", [["z", "-i*x"], ["i*x", "-z"]])?,
        "D3M" => matrix2(ring, "1/2", [["0", "z-i*y"], ["z+i*y", "0"]])?,
        "D3M-corrected" => matrix2(ring, "1/2", [["0", "-z+i*y"], ["-z-i*y", "0"]])?,
        "R12" => matrix2(
            ring,
            "1/4",
            [["-2*i*x^2", "2*x*(z-i*y)"], ["-2*x*(z+i*y)", "2*i*x^2"]],
        )?,
        "R13" => matrix2(
            ring,
            "1/4",
            [["-2*i*x*y", "2*y*(z-i*y)"], ["-2*y*(z+i*y)", "2*i*x*y"]],
        )?,
        "R23" => matrix2(
            ring,
            "1/4",
            [["-2*i*x*z", "2*z*(z-i*z)"], ["-2*z*(z+i*y)", "2*i*x*z"]],
        )?,
        "R23-corrected" => matrix2(
            ring,
            "1/4",
            [["-2*i*x*z", "2*z*(z-i*y)"], ["-2*z*(z+i*y)", "2*i*x*z"]],
        )?,
        "tr12" => Expected::Scalar(ring.parse("-i*x")?),
        "tr13" => Expected::Scalar(ring.parse("-i*y")?),
        "tr23" => Expected::Scalar(ring.parse("-i*z")?),
        _ => return Ok(None),
    };
    Ok(Some(value))
}
