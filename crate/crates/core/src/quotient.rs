//! The hypersurface ring `Q(i)[x_1..x_n]/(f)` with canonical remainders.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::poly::{parse, MonomialOrder, Polynomial, Variables};

#[derive(PartialEq, Eq, Hash, Debug)]
struct RingData {
    vars: Variables,
    modulus: Polynomial,
    order: MonomialOrder,
}

/// Handle to a quotient ring. Cheap to clone; compared by content.
#[derive(Clone, Debug)]
pub struct QuotientRing(Arc<RingData>);

impl PartialEq for QuotientRing {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl Eq for QuotientRing {}

impl QuotientRing {
    pub fn new(modulus: Polynomial) -> Result<Self> {
        match modulus.as_constant() {
            Some(c) if c.is_zero() => Err(Error::InvalidModulus("modulus is zero".into())),
            Some(_) => Err(Error::InvalidModulus(
                "modulus is a nonzero constant".into(),
            )),
            None => Ok(QuotientRing(Arc::new(RingData {
                vars: modulus.vars().clone(),
                modulus,
                order: MonomialOrder::grevlex(),
            }))),
        }
    }

    pub fn from_text(modulus: &str, vars: &Variables) -> Result<Self> {
        Self::new(parse(modulus, vars)?)
    }

    pub fn vars(&self) -> &Variables {
        &self.0.vars
    }

    pub fn arity(&self) -> usize {
        self.0.vars.arity()
    }

    pub fn modulus(&self) -> &Polynomial {
        &self.0.modulus
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.0.order
    }

    /// Normal form of `p`: its remainder on division by the modulus.
    pub fn nf(&self, p: &Polynomial) -> Result<RingElement> {
        let (_, rem) = p.divide_remainder(&self.0.modulus, &self.0.order)?;
        Ok(RingElement {
            ring: self.clone(),
            rep: rem,
        })
    }

    fn reduce(&self, p: &Polynomial) -> RingElement {
        self.nf(p).expect("polynomial over this ring's variables")
    }

    pub fn parse(&self, text: &str) -> Result<RingElement> {
        self.nf(&parse(text, self.vars())?)
    }

    pub fn zero(&self) -> RingElement {
        RingElement {
            ring: self.clone(),
            rep: Polynomial::zero(self.vars()),
        }
    }

    pub fn one(&self) -> RingElement {
        self.constant(GaussianRational::from_integer(1))
    }

    pub fn constant(&self, c: GaussianRational) -> RingElement {
        self.reduce(&Polynomial::constant(self.vars(), c))
    }

    pub fn integer(&self, n: i64) -> RingElement {
        self.constant(GaussianRational::from_integer(n))
    }

    pub fn var(&self, index: usize) -> RingElement {
        self.reduce(&Polynomial::var(self.vars(), index))
    }

    /// Checks that `point` has the right length and lies on `f = 0`.
    pub fn check_point(&self, point: &[GaussianRational]) -> Result<()> {
        let v = self.0.modulus.evaluate(point)?;
        if v.is_zero() {
            Ok(())
        } else {
            Err(Error::PointOffSurface(v.to_string()))
        }
    }
}

impl fmt::Display for QuotientRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Q(i)[{}]/({})", self.0.vars, self.0.modulus)
    }
}

/// Residue class, stored as its reduced representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RingElement {
    ring: QuotientRing,
    rep: Polynomial,
}

impl RingElement {
    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn representative(&self) -> &Polynomial {
        &self.rep
    }

    pub fn is_zero(&self) -> bool {
        self.rep.is_zero()
    }

    fn same_ring(&self, other: &RingElement) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn try_add(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        // Sums of remainders are remainders.
        Ok(RingElement {
            ring: self.ring.clone(),
            rep: &self.rep + &other.rep,
        })
    }

    pub fn try_sub(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(RingElement {
            ring: self.ring.clone(),
            rep: &self.rep - &other.rep,
        })
    }

    pub fn try_mul(&self, other: &RingElement) -> Result<RingElement> {
        self.same_ring(other)?;
        Ok(self.ring.reduce(&(&self.rep * &other.rep)))
    }

    pub fn scale(&self, c: &GaussianRational) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            rep: self.rep.scale(c),
        }
    }

    pub fn pow(&self, mut e: u32) -> RingElement {
        let mut base = self.clone();
        let mut acc = self.ring.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Value at a point of the hypersurface.
    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        self.ring.check_point(point)?;
        self.rep.evaluate(point)
    }

    pub fn to_text(&self) -> ElementText {
        ElementText {
            element: self.rep.to_string(),
            modulus: self.ring.modulus().to_string(),
            variables: self.ring.vars().names().to_vec(),
        }
    }
}

impl fmt::Display for RingElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.rep.fmt(f)
    }
}

/// Portable text form of a ring element.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ElementText {
    pub element: String,
    pub modulus: String,
    pub variables: Vec<String>,
}

impl ElementText {
    pub fn load(&self) -> Result<RingElement> {
        let ring = QuotientRing::from_text(&self.modulus, &Variables::new(&self.variables))?;
        ring.parse(&self.element)
    }
}

impl<'a> Add<&'a RingElement> for &'a RingElement {
    type Output = RingElement;

    /// Panics if the rings differ; see [`RingElement::try_add`].
    fn add(self, rhs: &RingElement) -> RingElement {
        self.try_add(rhs).expect("ring mismatch")
    }
}

impl<'a> Sub<&'a RingElement> for &'a RingElement {
    type Output = RingElement;

    fn sub(self, rhs: &RingElement) -> RingElement {
        self.try_sub(rhs).expect("ring mismatch")
    }
}

impl<'a> Mul<&'a RingElement> for &'a RingElement {
    type Output = RingElement;

    fn mul(self, rhs: &RingElement) -> RingElement {
        self.try_mul(rhs).expect("ring mismatch")
    }
}

impl Neg for &RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        RingElement {
            ring: self.ring.clone(),
            rep: -&self.rep,
        }
    }
}

impl Neg for RingElement {
    type Output = RingElement;

    fn neg(self) -> RingElement {
        -&self
    }
}
