//! Matrices over a quotient ring.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::gaussian::GaussianRational;
use crate::quotient::{QuotientRing, RingElement};

/// Largest size accepted by [`MatrixA::determinant`] and [`MatrixA::char_poly`].
pub const MAX_COFACTOR_SIZE: usize = 6;

/// Dense row-major matrix whose entries are reduced elements of one ring.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct MatrixA {
    ring: QuotientRing,
    rows: usize,
    cols: usize,
    entries: Vec<RingElement>,
}

impl MatrixA {
    pub fn new(
        ring: &QuotientRing,
        rows: usize,
        cols: usize,
        entries: Vec<RingElement>,
    ) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                entries.len()
            )));
        }
        if entries.iter().any(|e| e.ring() != ring) {
            return Err(Error::RingMismatch);
        }
        Ok(MatrixA {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        })
    }

    pub fn from_rows(ring: &QuotientRing, rows: Vec<Vec<RingElement>>) -> Result<Self> {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        Self::new(ring, r, c, rows.into_iter().flatten().collect())
    }

    /// Parses each entry with [`QuotientRing::parse`].
    pub fn parse_rows<S: AsRef<str>>(ring: &QuotientRing, rows: &[Vec<S>]) -> Result<Self> {
        let parsed = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|s| ring.parse(s.as_ref()))
                    .collect::<Result<Vec<_>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_rows(ring, parsed)
    }

    pub fn zero(ring: &QuotientRing, rows: usize, cols: usize) -> Self {
        MatrixA {
            ring: ring.clone(),
            rows,
            cols,
            entries: vec![ring.zero(); rows * cols],
        }
    }

    pub fn identity(ring: &QuotientRing, n: usize) -> Self {
        let mut m = Self::zero(ring, n, n);
        for i in 0..n {
            m.entries[i * n + i] = ring.one();
        }
        m
    }

    pub fn diagonal(ring: &QuotientRing, diag: &[RingElement]) -> Result<Self> {
        let n = diag.len();
        let mut m = Self::zero(ring, n, n);
        for (i, d) in diag.iter().enumerate() {
            if d.ring() != ring {
                return Err(Error::RingMismatch);
            }
            m.entries[i * n + i] = d.clone();
        }
        Ok(m)
    }

    /// Builds a matrix entry by entry.
    pub fn from_fn(
        ring: &QuotientRing,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> RingElement,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        MatrixA {
            ring: ring.clone(),
            rows,
            cols,
            entries,
        }
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &RingElement {
        &self.entries[i * self.cols + j]
    }

    pub fn entries(&self) -> &[RingElement] {
        &self.entries
    }

    pub fn row(&self, i: usize) -> &[RingElement] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(RingElement::is_zero)
    }

    /// First nonzero entry in row-major order, as `(row, col, entry)`.
    pub fn first_nonzero(&self) -> Option<(usize, usize, &RingElement)> {
        self.entries
            .iter()
            .position(|e| !e.is_zero())
            .map(|k| (k / self.cols, k % self.cols, &self.entries[k]))
    }

    pub fn map(&self, f: impl FnMut(&RingElement) -> RingElement) -> MatrixA {
        MatrixA {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }

    fn check_ring(&self, other: &MatrixA) -> Result<()> {
        if self.ring == other.ring {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    fn check_same_shape(&self, other: &MatrixA) -> Result<()> {
        self.check_ring(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    fn check_square(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare {
                rows: self.rows,
                cols: self.cols,
            })
        }
    }

    pub fn try_add(&self, other: &MatrixA) -> Result<MatrixA> {
        self.check_same_shape(other)?;
        Ok(MatrixA {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a + b)
                .collect(),
        })
    }

    pub fn try_sub(&self, other: &MatrixA) -> Result<MatrixA> {
        self.check_same_shape(other)?;
        Ok(MatrixA {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a - b)
                .collect(),
        })
    }

    pub fn try_mul(&self, other: &MatrixA) -> Result<MatrixA> {
        self.check_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let vars = self.ring.vars();
        let mut entries = Vec::with_capacity(self.rows * other.cols);
        for i in 0..self.rows {
            for j in 0..other.cols {
                // accumulate unreduced, reduce once per entry
                let mut acc = crate::poly::Polynomial::zero(vars);
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    let b = other.get(k, j);
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    acc = &acc + &(a.representative() * b.representative());
                }
                entries.push(self.ring.nf(&acc)?);
            }
        }
        Ok(MatrixA {
            ring: self.ring.clone(),
            rows: self.rows,
            cols: other.cols,
            entries,
        })
    }

    pub fn scale(&self, a: &RingElement) -> Result<MatrixA> {
        if a.ring() != &self.ring {
            return Err(Error::RingMismatch);
        }
        Ok(self.map(|e| e * a))
    }

    pub fn scale_const(&self, c: &GaussianRational) -> MatrixA {
        self.map(|e| e.scale(c))
    }

    pub fn transpose(&self) -> MatrixA {
        MatrixA::from_fn(&self.ring, self.cols, self.rows, |i, j| {
            self.get(j, i).clone()
        })
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[RingElement]) -> Result<Vec<RingElement>> {
        if v.len() != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "vector of length {} for {} columns",
                v.len(),
                self.cols
            )));
        }
        if v.iter().any(|e| e.ring() != &self.ring) {
            return Err(Error::RingMismatch);
        }
        let col = MatrixA::new(&self.ring, v.len(), 1, v.to_vec())?;
        Ok(self.try_mul(&col)?.entries)
    }

    /// `AB - BA`.
    pub fn commutator(&self, other: &MatrixA) -> Result<MatrixA> {
        self.check_square()?;
        other.check_square()?;
        self.check_same_shape(other)?;
        self.try_mul(other)?.try_sub(&other.try_mul(self)?)
    }

    pub fn trace(&self) -> Result<RingElement> {
        let n = self.check_square()?;
        Ok((0..n).fold(self.ring.zero(), |acc, i| &acc + self.get(i, i)))
    }

    pub fn pow(&self, e: u32) -> Result<MatrixA> {
        let n = self.check_square()?;
        let mut acc = MatrixA::identity(&self.ring, n);
        for _ in 0..e {
            acc = acc.try_mul(self)?;
        }
        Ok(acc)
    }

    pub fn determinant(&self) -> Result<RingElement> {
        let n = self.check_square()?;
        if n > MAX_COFACTOR_SIZE {
            return Err(Error::TooLarge(n));
        }
        let rows: Vec<Vec<RingElement>> = (0..n).map(|i| self.row(i).to_vec()).collect();
        Ok(cofactor_det(&rows, &self.ring.zero(), &self.ring.one()))
    }

    /// `det(tI - self)` by cofactor expansion over `A[t]`.
    pub fn char_poly(&self) -> Result<CharPoly> {
        let n = self.check_square()?;
        if n > MAX_COFACTOR_SIZE {
            return Err(Error::TooLarge(n));
        }
        let rows: Vec<Vec<TPoly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut c = vec![-self.get(i, j)];
                        if i == j {
                            c.push(self.ring.one());
                        }
                        TPoly::new(c)
                    })
                    .collect()
            })
            .collect();
        let zero = TPoly::new(vec![self.ring.zero()]);
        let one = TPoly::new(vec![self.ring.one()]);
        let det = cofactor_det(&rows, &zero, &one);
        let mut coefficients = det.0;
        coefficients.resize(n + 1, self.ring.zero());
        coefficients.reverse();
        Ok(CharPoly {
            ring: self.ring.clone(),
            coefficients,
        })
    }

    pub fn evaluate(&self, point: &[GaussianRational]) -> Result<Vec<Vec<GaussianRational>>> {
        self.ring.check_point(point)?;
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|e| e.representative().evaluate(point))
                    .collect()
            })
            .collect()
    }

    /// Rank over `Q(i)` of the matrix evaluated at a point of the hypersurface.
    pub fn rank_at_point(&self, point: &[GaussianRational]) -> Result<usize> {
        Ok(rank(self.evaluate(point)?))
    }

    /// Entries as nested arrays of canonical strings.
    pub fn to_json(&self) -> serde_json::Value {
        serde_json::Value::Array(
            (0..self.rows)
                .map(|i| {
                    serde_json::Value::Array(
                        self.row(i).iter().map(|e| e.to_string().into()).collect(),
                    )
                })
                .collect(),
        )
    }
}

impl fmt::Display for MatrixA {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, e) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{e}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<'a> Add<&'a MatrixA> for &'a MatrixA {
    type Output = MatrixA;

    fn add(self, rhs: &MatrixA) -> MatrixA {
        self.try_add(rhs).expect("matrix addition")
    }
}

impl<'a> Sub<&'a MatrixA> for &'a MatrixA {
    type Output = MatrixA;

    fn sub(self, rhs: &MatrixA) -> MatrixA {
        self.try_sub(rhs).expect("matrix subtraction")
    }
}

impl<'a> Mul<&'a MatrixA> for &'a MatrixA {
    type Output = MatrixA;

    fn mul(self, rhs: &MatrixA) -> MatrixA {
        self.try_mul(rhs).expect("matrix multiplication")
    }
}

impl Neg for &MatrixA {
    type Output = MatrixA;

    fn neg(self) -> MatrixA {
        self.map(|e| -e)
    }
}

/// Characteristic polynomial `det(tI - g)`, coefficients from `t^n` down to `t^0`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct CharPoly {
    ring: QuotientRing,
    coefficients: Vec<RingElement>,
}

impl CharPoly {
    pub fn coefficients(&self) -> &[RingElement] {
        &self.coefficients
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Product of two characteristic polynomials (again monic).
    pub fn mul(&self, other: &CharPoly) -> Result<CharPoly> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch);
        }
        let mut out =
            vec![self.ring.zero(); self.coefficients.len() + other.coefficients.len() - 1];
        for (i, a) in self.coefficients.iter().enumerate() {
            for (j, b) in other.coefficients.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        Ok(CharPoly {
            ring: self.ring.clone(),
            coefficients: out,
        })
    }

    /// Substitutes a square matrix for `t` (Horner).
    pub fn eval_matrix(&self, g: &MatrixA) -> Result<MatrixA> {
        let n = g.check_square()?;
        let id = MatrixA::identity(&self.ring, n);
        let mut acc = MatrixA::zero(&self.ring, n, n);
        for c in &self.coefficients {
            acc = acc.try_mul(g)?.try_add(&id.scale(c)?)?;
        }
        Ok(acc)
    }
}

/// Constant coefficients print inline (`t^2-t`); others are parenthesized
/// (`t^2+(-x-1)*t`).
impl fmt::Display for CharPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.degree();
        let mut first = true;
        for (k, c) in self.coefficients.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = n - k;
            let power = match e {
                0 => String::new(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            };
            let constant = c.representative().as_constant();
            let text = c.to_string();
            let (negative, magnitude) = match &constant {
                Some(_) if text.starts_with('-') => (true, text[1..].to_string()),
                Some(_) => (false, text),
                None => (false, format!("({text})")),
            };
            if negative {
                f.write_str("-")?;
            } else if !first {
                f.write_str("+")?;
            }
            first = false;
            match (power.is_empty(), magnitude == "1") {
                (true, _) => f.write_str(&magnitude)?,
                (false, true) => f.write_str(&power)?,
                (false, false) => write!(f, "{magnitude}*{power}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

/// Minimal commutative-ring interface for cofactor expansion.
trait DetEntry: Clone {
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn is_zero(&self) -> bool;
}

impl DetEntry for RingElement {
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn is_zero(&self) -> bool {
        RingElement::is_zero(self)
    }
}

/// Polynomial in `t` over the ring, ascending coefficients.
#[derive(Clone, Debug)]
struct TPoly(Vec<RingElement>);

impl TPoly {
    fn new(mut c: Vec<RingElement>) -> Self {
        while c.len() > 1 && c.last().is_some_and(RingElement::is_zero) {
            c.pop();
        }
        TPoly(c)
    }
}

impl DetEntry for TPoly {
    fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = self.0[0].ring().zero();
        TPoly::new(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&zero) + other.0.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
    fn sub(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let zero = self.0[0].ring().zero();
        TPoly::new(
            (0..n)
                .map(|k| self.0.get(k).unwrap_or(&zero) - other.0.get(k).unwrap_or(&zero))
                .collect(),
        )
    }
    fn mul(&self, other: &Self) -> Self {
        let zero = self.0[0].ring().zero();
        let mut out = vec![zero; self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] = &out[i + j] + &(a * b);
            }
        }
        TPoly::new(out)
    }
    fn is_zero(&self) -> bool {
        self.0.iter().all(RingElement::is_zero)
    }
}

/// Laplace expansion along rows, memoizing minors by the set of columns
/// still available.
fn cofactor_det<T: DetEntry>(rows: &[Vec<T>], zero: &T, one: &T) -> T {
    let n = rows.len();
    if n == 0 {
        return one.clone();
    }
    // minors[mask] = det of the bottom |mask| rows restricted to columns in mask
    let mut minors: HashMap<u32, T> = HashMap::new();
    minors.insert(0, one.clone());
    let mut masks_by_size: Vec<Vec<u32>> = vec![Vec::new(); n + 1];
    for mask in 0u32..(1 << n) {
        masks_by_size[mask.count_ones() as usize].push(mask);
    }
    for size in 1..=n {
        let row = &rows[n - size];
        for &mask in &masks_by_size[size] {
            let mut acc = zero.clone();
            let mut position = 0;
            for c in 0..n {
                if mask & (1 << c) == 0 {
                    continue;
                }
                let a = &row[c];
                if !a.is_zero() {
                    let minor = &minors[&(mask & !(1 << c))];
                    let term = a.mul(minor);
                    acc = if position % 2 == 0 {
                        acc.add(&term)
                    } else {
                        acc.sub(&term)
                    };
                }
                position += 1;
            }
            minors.insert(mask, acc);
        }
    }
    minors.remove(&((1u32 << n) - 1)).unwrap()
}

/// Rank by Gaussian elimination over `Q(i)`.
pub fn rank(mut m: Vec<Vec<GaussianRational>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(r, pivot);
        let inv = m[r][c].inv().expect("nonzero pivot");
        for i in 0..rows {
            if i != r && !m[i][c].is_zero() {
                let factor = &m[i][c] * &inv;
                let pivot_row = m[r].clone();
                for (dst, src) in m[i][c..].iter_mut().zip(&pivot_row[c..]) {
                    *dst = &*dst - &(&factor * src);
                }
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::Variables;

    fn sphere() -> QuotientRing {
        QuotientRing::from_text("x^2+y^2+z^2-1", &Variables::xyz()).unwrap()
    }

    fn m(ring: &QuotientRing, rows: &[&[&str]]) -> MatrixA {
        let rows: Vec<Vec<&str>> = rows.iter().map(|r| r.to_vec()).collect();
        MatrixA::parse_rows(ring, &rows).unwrap()
    }

    fn g(n: i64) -> GaussianRational {
        GaussianRational::from_integer(n)
    }

    fn sphere_idempotent(a: &QuotientRing) -> MatrixA {
        m(a, &[&["(1+x)/2", "(y+i*z)/2"], &["(y-i*z)/2", "(1-x)/2"]])
    }

    #[test]
    fn basic_arithmetic() {
        let a = sphere();
        let x = m(
            &a,
            &[&["x", "y", "1"], &["z", "x*y", "0"], &["1", "2", "i"]],
        );
        assert_eq!(&MatrixA::identity(&a, 3) * &x, x);
        assert!((&x + &-&x).is_zero());
        assert!(x.commutator(&x).unwrap().is_zero());
        assert!(x.commutator(&MatrixA::identity(&a, 3)).unwrap().is_zero());
        assert_eq!(MatrixA::identity(&a, 3).trace().unwrap(), a.integer(3));
        assert_eq!(x.transpose().get(0, 1), &a.var(2));
    }

    #[test]
    fn dimension_errors() {
        let a = sphere();
        let x = MatrixA::zero(&a, 2, 3);
        assert!(matches!(x.try_mul(&x), Err(Error::DimensionMismatch(_))));
        assert_eq!(x.trace(), Err(Error::NotSquare { rows: 2, cols: 3 }));
        assert_eq!(
            MatrixA::identity(&a, 7).determinant(),
            Err(Error::TooLarge(7))
        );
        let b = QuotientRing::from_text("x^3-y", &Variables::xyz()).unwrap();
        assert_eq!(
            MatrixA::identity(&a, 2).try_add(&MatrixA::identity(&b, 2)),
            Err(Error::RingMismatch)
        );
    }

    #[test]
    fn sphere_idempotent_invariants() {
        let a = sphere();
        let p = sphere_idempotent(&a);
        assert!((&(&p * &p) - &p).is_zero());
        assert_eq!(p.trace().unwrap(), a.one());
        assert!(p.determinant().unwrap().is_zero());
        let cp = p.char_poly().unwrap();
        assert_eq!(cp.coefficients(), &[a.one(), a.integer(-1), a.zero()]);
        assert!(cp.eval_matrix(&p).unwrap().is_zero());
    }

    #[test]
    fn determinants() {
        let a = sphere();
        for n in 0..5 {
            assert_eq!(MatrixA::identity(&a, n).determinant().unwrap(), a.one());
        }
        let d = MatrixA::diagonal(&a, &[a.var(0), a.var(1)]).unwrap();
        assert_eq!(d.determinant().unwrap(), a.parse("x*y").unwrap());
        let x = m(&a, &[&["1", "2", "3"], &["4", "5", "6"], &["7", "8", "10"]]);
        assert_eq!(x.determinant().unwrap(), a.integer(-3));
        let cp = MatrixA::identity(&a, 2).char_poly().unwrap();
        assert_eq!(cp.coefficients(), &[a.one(), a.integer(-2), a.one()]);
    }

    #[test]
    fn ranks() {
        let a = sphere();
        let pt = [g(1), g(0), g(0)];
        assert_eq!(MatrixA::identity(&a, 3).rank_at_point(&pt).unwrap(), 3);
        assert_eq!(MatrixA::zero(&a, 3, 3).rank_at_point(&pt).unwrap(), 0);
        let p = sphere_idempotent(&a);
        let q = &MatrixA::identity(&a, 2) - &p;
        assert_eq!(
            p.rank_at_point(&pt).unwrap() + q.rank_at_point(&pt).unwrap(),
            2
        );
        assert!(matches!(
            p.rank_at_point(&[g(1), g(1), g(0)]),
            Err(Error::PointOffSurface(_))
        ));
    }

    #[test]
    fn printing() {
        let a = sphere();
        let x = m(&a, &[&["x", "0"], &["1/2", "i*y"]]);
        assert_eq!(x.to_string(), "[[x, 0], [1/2, i*y]]");
        assert_eq!(x.to_json(), serde_json::json!([["x", "0"], ["1/2", "i*y"]]));
    }
}
