use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_traits::{One, Signed, Zero};

use super::monomial::{Monomial, MonomialOrder};
use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;

/// Ordered list of variable names shared by polynomials of one ring.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Variables(Arc<[String]>);

impl Variables {
    pub fn new<S: AsRef<str>>(names: &[S]) -> Self {
        Variables(names.iter().map(|s| s.as_ref().to_string()).collect())
    }

    /// Parses a comma-separated list of distinct identifiers. `i` is
    /// reserved for the imaginary unit.
    pub fn parse_list(text: &str) -> Result<Self> {
        let names: Vec<&str> = text.split(',').map(str::trim).collect();
        for (k, n) in names.iter().enumerate() {
            let mut chars = n.chars();
            let ok = chars
                .next()
                .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !ok || *n == "i" {
                return Err(Error::InvalidParameter(format!("bad variable name `{n}`")));
            }
            if names[..k].contains(n) {
                return Err(Error::InvalidParameter(format!("duplicate variable `{n}`")));
            }
        }
        Ok(Variables::new(&names))
    }

    /// `x, y, z`.
    pub fn xyz() -> Self {
        Variables::new(&["x", "y", "z"])
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.0.iter().position(|n| n == name)
    }
}

impl fmt::Display for Variables {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0.join(","))
    }
}

/// Sparse polynomial over `Q(i)`. No stored coefficient is zero.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial {
    vars: Variables,
    terms: BTreeMap<Monomial, GaussianRational>,
}

impl Polynomial {
    pub fn zero(vars: &Variables) -> Self {
        Polynomial {
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(vars: &Variables, c: GaussianRational) -> Self {
        Self::term(vars, c, Monomial::one(vars.arity()))
    }

    pub fn one(vars: &Variables) -> Self {
        Self::constant(vars, GaussianRational::one())
    }

    /// The variable with index `index` (panics if out of range).
    pub fn var(vars: &Variables, index: usize) -> Self {
        Self::term(
            vars,
            GaussianRational::one(),
            Monomial::var(vars.arity(), index, 1),
        )
    }

    pub fn term(vars: &Variables, c: GaussianRational, m: Monomial) -> Self {
        assert_eq!(m.arity(), vars.arity(), "monomial arity");
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        Polynomial {
            vars: vars.clone(),
            terms,
        }
    }

    /// Builds a polynomial from possibly repeated or zero terms.
    pub fn from_terms<I>(vars: &Variables, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, GaussianRational)>,
    {
        let mut p = Polynomial::zero(vars);
        for (m, c) in terms {
            assert_eq!(m.arity(), vars.arity(), "monomial arity");
            p.add_term(m, &c);
        }
        p
    }

    pub fn vars(&self) -> &Variables {
        &self.vars
    }

    pub fn arity(&self) -> usize {
        self.vars.arity()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in descending monomial order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &GaussianRational)> {
        self.terms.iter().rev()
    }

    pub fn coefficient(&self, m: &Monomial) -> GaussianRational {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn leading_term(&self) -> Option<(&Monomial, &GaussianRational)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    /// `Some(c)` if the polynomial is a constant (including zero).
    pub fn as_constant(&self) -> Option<GaussianRational> {
        match self.terms.len() {
            0 => Some(GaussianRational::zero()),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    fn add_term(&mut self, m: Monomial, c: &GaussianRational) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c.clone());
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<()> {
        if self.vars.arity() != other.vars.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: other.arity(),
            });
        }
        if self.vars != other.vars {
            return Err(Error::VariableMismatch {
                left: self.vars.to_string(),
                right: other.vars.to_string(),
            });
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(other))
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.add_unchecked(&-other))
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial> {
        self.check_compatible(other)?;
        Ok(self.mul_unchecked(other))
    }

    fn add_unchecked(&self, other: &Polynomial) -> Polynomial {
        let (mut acc, rest) = if self.len() >= other.len() {
            (self.clone(), other)
        } else {
            (other.clone(), self)
        };
        for (m, c) in &rest.terms {
            acc.add_term(m.clone(), c);
        }
        acc
    }

    fn mul_unchecked(&self, other: &Polynomial) -> Polynomial {
        let mut acc = Polynomial::zero(&self.vars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                acc.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        acc
    }

    pub fn scale(&self, c: &GaussianRational) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, c: &GaussianRational, m: &Monomial) -> Polynomial {
        if c.is_zero() {
            return Polynomial::zero(&self.vars);
        }
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Polynomial {
        let mut base = self.clone();
        let mut acc = Polynomial::one(&self.vars);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        acc
    }

    pub fn partial_derivative(&self, index: usize) -> Result<Polynomial> {
        if index >= self.arity() {
            return Err(Error::IndexOutOfRange {
                index,
                arity: self.arity(),
            });
        }
        let mut acc = Polynomial::zero(&self.vars);
        for (m, c) in &self.terms {
            let e = m.exponents()[index];
            if e == 0 {
                continue;
            }
            let mut exps = m.exponents().to_vec();
            exps[index] -= 1;
            acc.add_term(
                Monomial::new(exps),
                &(c * &GaussianRational::from_integer(e as i64)),
            );
        }
        Ok(acc)
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<GaussianRational> {
        if point.len() != self.arity() {
            return Err(Error::ArityMismatch {
                left: self.arity(),
                right: point.len(),
            });
        }
        let mut acc = GaussianRational::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (x, &e) in point.iter().zip(m.exponents()) {
                if e > 0 {
                    t = &t * &x.pow(e);
                }
            }
            acc += &t;
        }
        Ok(acc)
    }

    /// Multivariate division by a single divisor: returns `(quotient,
    /// remainder)` with `self = quotient * divisor + remainder` and no
    /// remainder monomial divisible by the leading monomial of `divisor`.
    pub fn divide_remainder(
        &self,
        divisor: &Polynomial,
        order: &MonomialOrder,
    ) -> Result<(Polynomial, Polynomial)> {
        self.check_compatible(divisor)?;
        // Monomial's Ord is the only supported order.
        debug_assert_eq!(*order, MonomialOrder::grevlex());
        let (lead_m, lead_c) = divisor.leading_term().ok_or(Error::DivisionByZero)?;
        let lead_inv = lead_c.inv().expect("leading coefficient is nonzero");
        let tail: Vec<(&Monomial, &GaussianRational)> =
            divisor.terms.iter().rev().skip(1).collect();

        let mut work = self.terms.clone();
        let mut quotient = Polynomial::zero(&self.vars);
        let mut remainder = Polynomial::zero(&self.vars);
        while let Some((m, c)) = work.pop_last() {
            match m.checked_div(lead_m) {
                Some(shift) => {
                    let factor = &c * &lead_inv;
                    for (tm, tc) in &tail {
                        let key = tm.mul(&shift);
                        let delta = -(&factor * tc);
                        match work.entry(key) {
                            std::collections::btree_map::Entry::Vacant(v) => {
                                v.insert(delta);
                            }
                            std::collections::btree_map::Entry::Occupied(mut o) => {
                                *o.get_mut() += &delta;
                                if o.get().is_zero() {
                                    o.remove();
                                }
                            }
                        }
                    }
                    quotient.terms.insert(shift, factor);
                }
                None => {
                    remainder.terms.insert(m, c);
                }
            }
        }
        Ok((quotient, remainder))
    }
}

impl<'a> Add<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    /// Panics on incompatible variables; see [`Polynomial::try_add`].
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial addition")
    }
}

impl<'a> Sub<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial subtraction")
    }
}

impl<'a> Mul<&'a Polynomial> for &'a Polynomial {
    type Output = Polynomial;

    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial multiplication")
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        Polynomial {
            vars: self.vars.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;

    fn neg(self) -> Polynomial {
        -&self
    }
}

fn write_monomial(f: &mut fmt::Formatter<'_>, vars: &Variables, m: &Monomial) -> fmt::Result {
    let mut first = true;
    for (name, &e) in vars.names().iter().zip(m.exponents()) {
        if e == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        first = false;
        f.write_str(name)?;
        if e > 1 {
            write!(f, "^{e}")?;
        }
    }
    Ok(())
}

/// Canonical text, terms in descending monomial order, e.g.
/// `x^2-1/2*i*x*y+(1+i)*z-3`.
impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            // Pure real or pure imaginary coefficients carry their sign
            // outside; mixed ones are parenthesized.
            let negative =
                (c.is_real() && c.re().is_negative()) || (c.re().is_zero() && c.im().is_negative());
            let magnitude = if negative { -c } else { c.clone() };
            if negative {
                f.write_str("-")?;
            } else if k > 0 {
                f.write_str("+")?;
            }
            if m.is_one() {
                write!(f, "{magnitude}")?;
            } else {
                if !magnitude.is_one() {
                    write!(f, "{magnitude}*")?;
                }
                write_monomial(f, &self.vars, m)?;
            }
        }
        Ok(())
    }
}
