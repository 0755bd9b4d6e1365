//! Derivations of a hypersurface ring, stored by their values on the
//! generators.

use std::fmt;

use crate::error::{Error, Result};
use crate::matring::MatrixA;
use crate::poly::Polynomial;
use crate::quotient::{QuotientRing, RingElement};

/// A derivation `delta` of `A = k[x_1..x_n]/(f)`, given by `delta(x_i)`.
///
/// Construction checks `delta(f) = 0` in `A`, so every value of this type
/// descends to the quotient.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Derivation {
    ring: QuotientRing,
    images: Vec<RingElement>,
}

/// `sum_i (dp/dx_i) * images[i]`, reduced.
fn apply_poly(ring: &QuotientRing, images: &[RingElement], p: &Polynomial) -> RingElement {
    let mut acc = Polynomial::zero(ring.vars());
    for (i, img) in images.iter().enumerate() {
        if img.is_zero() {
            continue;
        }
        let d = p.partial_derivative(i).expect("index within arity");
        if d.is_zero() {
            continue;
        }
        acc = &acc + &(&d * img.representative());
    }
    ring.nf(&acc).expect("same variables")
}

impl Derivation {
    pub fn new(ring: &QuotientRing, images: Vec<RingElement>) -> Result<Self> {
        if images.len() != ring.arity() {
            return Err(Error::ArityMismatch {
                left: ring.arity(),
                right: images.len(),
            });
        }
        if images.iter().any(|e| e.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        let on_modulus = apply_poly(ring, &images, ring.modulus());
        if !on_modulus.is_zero() {
            return Err(Error::NotTangent(on_modulus.to_string()));
        }
        Ok(Derivation {
            ring: ring.clone(),
            images,
        })
    }

    /// Parses one image per generator.
    pub fn parse(ring: &QuotientRing, images: &[&str]) -> Result<Self> {
        let images = images
            .iter()
            .map(|s| ring.parse(s))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ring, images)
    }

    pub fn zero(ring: &QuotientRing) -> Self {
        Derivation {
            ring: ring.clone(),
            images: vec![ring.zero(); ring.arity()],
        }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn images(&self) -> &[RingElement] {
        &self.images
    }

    pub fn is_zero(&self) -> bool {
        self.images.iter().all(RingElement::is_zero)
    }

    fn check_ring(&self, ring: &QuotientRing) -> Result<()> {
        if &self.ring == ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn apply(&self, a: &RingElement) -> Result<RingElement> {
        self.check_ring(a.ring())?;
        Ok(apply_poly(&self.ring, &self.images, a.representative()))
    }

    /// `[self, other](x_i) = self(other(x_i)) - other(self(x_i))`.
    pub fn bracket(&self, other: &Derivation) -> Result<Derivation> {
        self.check_ring(&other.ring)?;
        let images = self
            .images
            .iter()
            .zip(&other.images)
            .map(|(s, o)| Ok(&self.apply(o)? - &other.apply(s)?))
            .collect::<Result<Vec<_>>>()?;
        // brackets of tangent derivations are tangent; re-check anyway
        Derivation::new(&self.ring, images)
    }

    /// `a * self`.
    pub fn scale(&self, a: &RingElement) -> Result<Derivation> {
        self.check_ring(a.ring())?;
        Ok(Derivation {
            ring: self.ring.clone(),
            images: self.images.iter().map(|e| a * e).collect(),
        })
    }

    pub fn try_add(&self, other: &Derivation) -> Result<Derivation> {
        self.check_ring(&other.ring)?;
        Ok(Derivation {
            ring: self.ring.clone(),
            images: self
                .images
                .iter()
                .zip(&other.images)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn neg(&self) -> Derivation {
        Derivation {
            ring: self.ring.clone(),
            images: self.images.iter().map(|e| -e).collect(),
        }
    }

    /// Entry-wise action on a matrix.
    pub fn apply_to_matrix(&self, m: &MatrixA) -> Result<MatrixA> {
        self.check_ring(m.ring())?;
        Ok(m.map(|e| apply_poly(&self.ring, &self.images, e.representative())))
    }

    /// Component-wise action on a vector.
    pub fn apply_to_vector(&self, v: &[RingElement]) -> Result<Vec<RingElement>> {
        v.iter().map(|e| self.apply(e)).collect()
    }
}

/// `a1*d/dx + a2*d/dy + a3*d/dz`, omitting zero components.
impl fmt::Display for Derivation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (img, name) in self.images.iter().zip(self.ring.vars().names()) {
            if img.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            write!(f, "({img})*d/d{name}")?;
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Variables;

    fn sphere() -> QuotientRing {
        QuotientRing::from_text("x^2+y^2+z^2-1", &Variables::xyz()).unwrap()
    }

    #[test]
    fn tangency() {
        let a = sphere();
        assert!(Derivation::parse(&a, &["0", "0", "0"]).unwrap().is_zero());
        assert_eq!(
            Derivation::parse(&a, &["1", "0", "0"]),
            Err(Error::NotTangent("2*x".into()))
        );
        let e = QuotientRing::from_text("x^2+y^3+z^4-1", &Variables::xyz()).unwrap();
        let d1 = Derivation::parse(&e, &["3*y^2", "-2*x", "0"]).unwrap();
        assert_eq!(d1.apply(&e.var(0)).unwrap(), e.parse("3*y^2").unwrap());
        assert!(d1.apply(&e.one()).unwrap().is_zero());
        assert!(matches!(
            Derivation::parse(&e, &["1", "0"]),
            Err(Error::ArityMismatch { .. })
        ));
    }

    #[test]
    fn sphere_rotations() {
        let a = sphere();
        let d1 = Derivation::parse(&a, &["y", "-x", "0"]).unwrap();
        let d2 = Derivation::parse(&a, &["z", "0", "-x"]).unwrap();
        let d3 = Derivation::parse(&a, &["0", "-z", "y"]).unwrap();
        assert_eq!(d1.apply(&a.parse("1+x").unwrap()).unwrap(), a.var(1));
        assert_eq!(
            d1.apply(&a.parse("y+i*z").unwrap()).unwrap(),
            a.parse("-x").unwrap()
        );
        assert!(d1.bracket(&d1).unwrap().is_zero());
        assert_eq!(d1.bracket(&d2).unwrap(), d3.neg());
        assert!(d1
            .apply_to_matrix(&MatrixA::identity(&a, 2))
            .unwrap()
            .is_zero());
        assert_eq!(d3.to_string(), "(-z)*d/dy + (y)*d/dz");
    }
}
