//! Projective modules presented as images of idempotent matrices, the
//! connection `A_delta = D_delta + delta(Phi)`, and its curvature.
//!
//! The module is always the image of `Phi`. Endomorphisms of `A^n` are
//! restricted to it by conjugation (`Phi * C * Phi`), which never needs
//! division in the ring.

use serde::ser::SerializeStruct;
use serde::{Serialize, Serializer};

use crate::deriv::Derivation;
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::matring::MatrixA;
use crate::quotient::{QuotientRing, RingElement};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ProjectivePresentation {
    ring: QuotientRing,
    phi: MatrixA,
    psi: MatrixA,
    kernel_generator: Option<Vec<RingElement>>,
}

/// Curvature of one derivation pair.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CurvatureReport {
    pub pair: (String, String),
    /// `[delta(Phi), eta(Phi)]` on the ambient free module.
    pub commutator: MatrixA,
    pub trace_image: RingElement,
    pub trace_kernel: RingElement,
    /// Whether `Phi * C * Phi` is nonzero.
    pub induced_nonzero: bool,
}

impl Serialize for CurvatureReport {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("CurvatureReport", 5)?;
        st.serialize_field("pair", &[&self.pair.0, &self.pair.1])?;
        st.serialize_field("commutator", &self.commutator.to_json())?;
        st.serialize_field("trace_image", &self.trace_image.to_string())?;
        st.serialize_field("trace_kernel", &self.trace_kernel.to_string())?;
        st.serialize_field("flat", &!self.induced_nonzero)?;
        st.end()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize)]
pub struct DeviationReport {
    pub ambient: usize,
    pub rank: usize,
    pub deviation: usize,
}

/// Both routes to the curvature of a modified connection, restricted to the
/// module.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct ModifiedCurvature {
    /// From the operators `A_delta + phi_delta` applied to basis vectors.
    pub direct: MatrixA,
    /// `R + r_phi + [A_delta, phi_eta] - [A_eta, phi_delta]`.
    pub via_identity: MatrixA,
}

impl ProjectivePresentation {
    /// Validates `Phi^2 = Phi` and, if given, `Phi * k = 0` with `k != 0`.
    pub fn new(phi: MatrixA, kernel_generator: Option<Vec<RingElement>>) -> Result<Self> {
        if !phi.is_square() {
            return Err(Error::NotSquare {
                rows: phi.rows(),
                cols: phi.cols(),
            });
        }
        let ring = phi.ring().clone();
        let n = phi.rows();
        let defect = phi.try_mul(&phi)?.try_sub(&phi)?;
        if let Some((row, col, w)) = defect.first_nonzero() {
            return Err(Error::NotIdempotent {
                row,
                col,
                witness: w.to_string(),
            });
        }
        if let Some(k) = &kernel_generator {
            if k.len() != n {
                return Err(Error::DimensionMismatch(format!(
                    "kernel generator of length {} for n = {n}",
                    k.len()
                )));
            }
            if k.iter().all(RingElement::is_zero) {
                return Err(Error::ZeroKernelGenerator);
            }
            let image = phi.mul_vec(k)?;
            if let Some(index) = image.iter().position(|e| !e.is_zero()) {
                return Err(Error::KernelNotAnnihilated {
                    index,
                    witness: image[index].to_string(),
                });
            }
        }
        let psi = MatrixA::identity(&ring, n).try_sub(&phi)?;
        Ok(ProjectivePresentation {
            ring,
            phi,
            psi,
            kernel_generator,
        })
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn ambient_rank(&self) -> usize {
        self.phi.rows()
    }

    pub fn phi(&self) -> &MatrixA {
        &self.phi
    }

    pub fn psi(&self) -> &MatrixA {
        &self.psi
    }

    pub fn kernel_generator(&self) -> Option<&[RingElement]> {
        self.kernel_generator.as_deref()
    }

    /// `delta(Phi)`.
    pub fn delta_phi(&self, delta: &Derivation) -> Result<MatrixA> {
        delta.apply_to_matrix(&self.phi)
    }

    /// `A_delta(v) = D_delta(v) + delta(Phi) * v`.
    pub fn connection_apply(
        &self,
        delta: &Derivation,
        v: &[RingElement],
    ) -> Result<Vec<RingElement>> {
        self.operator_apply(delta, None, v)
    }

    /// `(A_delta + potential)(v)`.
    fn operator_apply(
        &self,
        delta: &Derivation,
        potential: Option<&MatrixA>,
        v: &[RingElement],
    ) -> Result<Vec<RingElement>> {
        if v.len() != self.ambient_rank() {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for n = {}",
                v.len(),
                self.ambient_rank()
            )));
        }
        let dv = delta.apply_to_vector(v)?;
        let mut m = self.delta_phi(delta)?;
        if let Some(p) = potential {
            m = m.try_add(p)?;
        }
        let mv = m.mul_vec(v)?;
        Ok(dv.iter().zip(&mv).map(|(a, b)| a + b).collect())
    }

    /// `[delta(Phi), eta(Phi)]`. With a kernel generator `k`, also checks
    /// that the commutator annihilates `k`.
    pub fn curvature_matrix(&self, delta: &Derivation, eta: &Derivation) -> Result<MatrixA> {
        let c = self.delta_phi(delta)?.commutator(&self.delta_phi(eta)?)?;
        if let Some(k) = &self.kernel_generator {
            let ck = c.mul_vec(k)?;
            if let Some(index) = ck.iter().position(|e| !e.is_zero()) {
                return Err(Error::CurvatureOnKernel {
                    index,
                    witness: ck[index].to_string(),
                });
            }
        }
        Ok(c)
    }

    /// `Phi * C * Phi`, the endomorphism `C` induces on the module.
    pub fn induced_endomorphism(&self, c: &MatrixA) -> Result<MatrixA> {
        self.phi.try_mul(c)?.try_mul(&self.phi)
    }

    pub fn trace_over_image(&self, c: &MatrixA) -> Result<RingElement> {
        self.induced_endomorphism(c)?.trace()
    }

    pub fn trace_over_kernel(&self, c: &MatrixA) -> Result<RingElement> {
        self.psi.try_mul(c)?.try_mul(&self.psi)?.trace()
    }

    pub fn is_flat_pair(&self, delta: &Derivation, eta: &Derivation) -> Result<bool> {
        let c = self.curvature_matrix(delta, eta)?;
        Ok(self.induced_endomorphism(&c)?.is_zero())
    }

    pub fn curvature_report(
        &self,
        labels: (&str, &str),
        delta: &Derivation,
        eta: &Derivation,
    ) -> Result<CurvatureReport> {
        let commutator = self.curvature_matrix(delta, eta)?;
        let induced = self.induced_endomorphism(&commutator)?;
        Ok(CurvatureReport {
            pair: (labels.0.to_string(), labels.1.to_string()),
            trace_image: induced.trace()?,
            trace_kernel: self.trace_over_kernel(&commutator)?,
            induced_nonzero: !induced.is_zero(),
            commutator,
        })
    }

    fn check_preserves(&self, name: &str, potential: &MatrixA) -> Result<()> {
        let left = self.phi.try_mul(potential)?;
        let right = potential.try_mul(&self.phi)?;
        let both = left.try_mul(&self.phi)?;
        if left != right || both != right {
            return Err(Error::PotentialNotPreserving(name.to_string()));
        }
        Ok(())
    }

    /// Curvature of `A_delta + phi_delta`, computed directly and through the
    /// three-term identity, both restricted to the module.
    pub fn modified_curvature_routes(
        &self,
        delta: &Derivation,
        eta: &Derivation,
        bracket: &Derivation,
        phi_delta: &MatrixA,
        phi_eta: &MatrixA,
        phi_bracket: &MatrixA,
    ) -> Result<ModifiedCurvature> {
        self.check_preserves("phi_delta", phi_delta)?;
        self.check_preserves("phi_eta", phi_eta)?;
        self.check_preserves("phi_bracket", phi_bracket)?;
        let expected = delta.bracket(eta)?;
        if let Some(k) = expected
            .images()
            .iter()
            .zip(bracket.images())
            .position(|(a, b)| a != b)
        {
            return Err(Error::BracketMismatch(k));
        }

        let n = self.ambient_rank();
        let ring = &self.ring;
        let mut columns = Vec::with_capacity(n);
        for j in 0..n {
            let u: Vec<RingElement> = (0..n)
                .map(|i| if i == j { ring.one() } else { ring.zero() })
                .collect();
            let eu = self.operator_apply(eta, Some(phi_eta), &u)?;
            let de = self.operator_apply(delta, Some(phi_delta), &eu)?;
            let du = self.operator_apply(delta, Some(phi_delta), &u)?;
            let ed = self.operator_apply(eta, Some(phi_eta), &du)?;
            let bu = self.operator_apply(bracket, Some(phi_bracket), &u)?;
            columns.push(
                de.iter()
                    .zip(&ed)
                    .zip(&bu)
                    .map(|((a, b), c)| &(a - b) - c)
                    .collect::<Vec<_>>(),
            );
        }
        let direct = MatrixA::from_fn(ring, n, n, |i, j| columns[j][i].clone());

        let d_phi = self.delta_phi(delta)?;
        let e_phi = self.delta_phi(eta)?;
        let curvature = d_phi.commutator(&e_phi)?;
        let r_phi = phi_delta.commutator(phi_eta)?.try_sub(phi_bracket)?;
        let nabla_delta_eta = delta
            .apply_to_matrix(phi_eta)?
            .try_add(&d_phi.commutator(phi_eta)?)?;
        let nabla_eta_delta = eta
            .apply_to_matrix(phi_delta)?
            .try_add(&e_phi.commutator(phi_delta)?)?;
        let via_identity = curvature
            .try_add(&r_phi)?
            .try_add(&nabla_delta_eta)?
            .try_sub(&nabla_eta_delta)?;

        Ok(ModifiedCurvature {
            direct: self.induced_endomorphism(&direct)?,
            via_identity: self.induced_endomorphism(&via_identity)?,
        })
    }

    /// Curvature of the modified connection on the module; fails with
    /// [`Error::RouteMismatch`] if the two routes disagree.
    pub fn modified_curvature(
        &self,
        delta: &Derivation,
        eta: &Derivation,
        bracket: &Derivation,
        phi_delta: &MatrixA,
        phi_eta: &MatrixA,
        phi_bracket: &MatrixA,
    ) -> Result<MatrixA> {
        let routes =
            self.modified_curvature_routes(delta, eta, bracket, phi_delta, phi_eta, phi_bracket)?;
        if routes.direct != routes.via_identity {
            let diff = routes.direct.try_sub(&routes.via_identity)?;
            let (i, j, w) = diff.first_nonzero().expect("routes differ");
            return Err(Error::RouteMismatch {
                row: i,
                col: j,
                witness: w.to_string(),
            });
        }
        Ok(routes.direct)
    }

    /// `n - rank(Phi(point))` for this presentation.
    pub fn deviation_report(&self, point: &[GaussianRational]) -> Result<DeviationReport> {
        let rank = self.phi.rank_at_point(point)?;
        let ambient = self.ambient_rank();
        Ok(DeviationReport {
            ambient,
            rank,
            deviation: ambient - rank,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Variables;

    fn sphere() -> QuotientRing {
        QuotientRing::from_text("x^2+y^2+z^2-1", &Variables::xyz()).unwrap()
    }

    fn mat(a: &QuotientRing, rows: &[&[&str]]) -> MatrixA {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        MatrixA::parse_rows(a, &rows).unwrap()
    }

    #[test]
    fn presentations() {
        let a = sphere();
        let id = ProjectivePresentation::new(MatrixA::identity(&a, 3), None).unwrap();
        assert!(id.psi().is_zero());
        assert!(ProjectivePresentation::new(mat(&a, &[&["1", "1"], &["0", "0"]]), None).is_ok());
        let err =
            ProjectivePresentation::new(mat(&a, &[&["x", "0"], &["0", "0"]]), None).unwrap_err();
        assert!(matches!(err, Error::NotIdempotent { row: 0, col: 0, .. }));
        let upper = mat(&a, &[&["1", "1"], &["0", "0"]]);
        let err =
            ProjectivePresentation::new(upper.clone(), Some(vec![a.one(), a.zero()])).unwrap_err();
        assert!(matches!(err, Error::KernelNotAnnihilated { index: 0, .. }));
        let err =
            ProjectivePresentation::new(upper.clone(), Some(vec![a.zero(), a.zero()])).unwrap_err();
        assert_eq!(err, Error::ZeroKernelGenerator);
        assert!(ProjectivePresentation::new(upper, Some(vec![a.one(), a.integer(-1)])).is_ok());
        assert!(matches!(
            ProjectivePresentation::new(MatrixA::zero(&a, 2, 3), None),
            Err(Error::NotSquare { .. })
        ));
    }

    #[test]
    fn free_module_is_flat() {
        let a = sphere();
        let p = ProjectivePresentation::new(MatrixA::identity(&a, 2), None).unwrap();
        let d1 = Derivation::parse(&a, &["y", "-x", "0"]).unwrap();
        let d2 = Derivation::parse(&a, &["z", "0", "-x"]).unwrap();
        assert!(p.is_flat_pair(&d1, &d2).unwrap());
        assert!(p.is_flat_pair(&d1, &d1).unwrap());
        let zero = vec![a.zero(), a.zero()];
        assert_eq!(p.connection_apply(&d1, &zero).unwrap(), zero);
        let c = mat(&a, &[&["x", "y"], &["z", "1"]]);
        assert_eq!(p.trace_over_image(&c).unwrap(), c.trace().unwrap());
        let dev = p
            .deviation_report(&[1, 0, 0].map(GaussianRational::from_integer))
            .unwrap();
        assert_eq!(
            dev,
            DeviationReport {
                ambient: 2,
                rank: 2,
                deviation: 0
            }
        );
    }

    #[test]
    fn modified_curvature_rejects_bad_inputs() {
        let a = sphere();
        let phi = mat(&a, &[&["(1+x)/2", "(y+i*z)/2"], &["(y-i*z)/2", "(1-x)/2"]]);
        let p = ProjectivePresentation::new(phi.clone(), None).unwrap();
        let d1 = Derivation::parse(&a, &["y", "-x", "0"]).unwrap();
        let d2 = Derivation::parse(&a, &["z", "0", "-x"]).unwrap();
        let br = d1.bracket(&d2).unwrap();
        let zero = MatrixA::zero(&a, 2, 2);
        let not_preserving = mat(&a, &[&["1", "0"], &["0", "0"]]);
        assert!(matches!(
            p.modified_curvature(&d1, &d2, &br, &not_preserving, &zero, &zero),
            Err(Error::PotentialNotPreserving(_))
        ));
        assert_eq!(
            p.modified_curvature(&d1, &d2, &d1, &zero, &zero, &zero),
            Err(Error::BracketMismatch(0))
        );
        let plain = p
            .modified_curvature(&d1, &d2, &br, &zero, &zero, &zero)
            .unwrap();
        let c = p.curvature_matrix(&d1, &d2).unwrap();
        assert_eq!(plain, p.induced_endomorphism(&c).unwrap());
        let m = p
            .modified_curvature(&d1, &d2, &br, &phi, &phi, &phi)
            .unwrap();
        assert_eq!(m.rows(), 2);
    }

    #[test]
    fn report_json_shape() {
        let a = sphere();
        let p = ProjectivePresentation::new(MatrixA::identity(&a, 2), None).unwrap();
        let d1 = Derivation::parse(&a, &["y", "-x", "0"]).unwrap();
        let r = p.curvature_report(("D1", "D1"), &d1, &d1).unwrap();
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(
            v,
            serde_json::json!({
                "pair": ["D1", "D1"],
                "commutator": [["0", "0"], ["0", "0"]],
                "trace_image": "0",
                "trace_kernel": "0",
                "flat": true
            })
        );
    }
}
