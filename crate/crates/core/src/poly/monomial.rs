use std::cmp::Ordering;

/// Exponent vector, one entry per ring variable.
///
/// `Ord` is graded reverse lexicographic with the first declared variable
/// largest, so an ordered map of monomials iterates in that order.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial(Box<[u32]>);

impl Monomial {
    pub fn new(exponents: Vec<u32>) -> Self {
        Monomial(exponents.into_boxed_slice())
    }

    pub fn one(arity: usize) -> Self {
        Monomial(vec![0; arity].into_boxed_slice())
    }

    pub fn var(arity: usize, index: usize, exp: u32) -> Self {
        let mut e = vec![0; arity];
        e[index] = exp;
        Monomial::new(e)
    }

    pub fn exponents(&self) -> &[u32] {
        &self.0
    }

    pub fn arity(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a + b)
                .collect(),
        )
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(other.0.iter()).all(|(a, b)| a <= b)
    }

    /// `self / other` if `other` divides `self`.
    pub fn checked_div(&self, other: &Monomial) -> Option<Monomial> {
        if !other.divides(self) {
            return None;
        }
        Some(Monomial(
            self.0
                .iter()
                .zip(other.0.iter())
                .map(|(a, b)| a - b)
                .collect(),
        ))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        MonomialOrder::default().cmp(self, other)
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub enum OrderKind {
    #[default]
    GradedReverseLex,
}

/// Monomial order used for leading terms and normal forms. Variable
/// precedence follows declaration order (first variable largest).
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Default)]
pub struct MonomialOrder {
    pub kind: OrderKind,
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::GradedReverseLex,
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self.kind {
            OrderKind::GradedReverseLex => a.degree().cmp(&b.degree()).then_with(|| {
                // smaller exponent in the last differing variable wins
                for (x, y) in a.0.iter().zip(b.0.iter()).rev() {
                    match x.cmp(y) {
                        Ordering::Equal => continue,
                        o => return o.reverse(),
                    }
                }
                Ordering::Equal
            }),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u32]) -> Monomial {
        Monomial::new(e.to_vec())
    }

    #[test]
    fn grevlex_order() {
        assert!(m(&[2, 0, 0]) > m(&[0, 2, 0]));
        assert!(m(&[0, 2, 0]) > m(&[0, 0, 2]));
        assert!(m(&[2, 0, 0]) > m(&[1, 1, 0]));
        // x*z^2 vs y^3: equal degree, compare z exponent
        assert!(m(&[0, 3, 0]) > m(&[1, 0, 2]));
        assert!(m(&[0, 0, 3]) > m(&[2, 0, 0]));
        assert!(m(&[1, 1, 1]) > m(&[0, 0, 2]));
    }

    #[test]
    fn division() {
        assert_eq!(
            m(&[3, 1, 0]).checked_div(&m(&[2, 0, 0])),
            Some(m(&[1, 1, 0]))
        );
        assert_eq!(m(&[1, 1, 0]).checked_div(&m(&[2, 0, 0])), None);
    }
}
