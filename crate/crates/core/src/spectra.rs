//! Exact characteristic polynomials and the spectral classes of the
//! order-14 diameter-4 catalogue.

use std::fmt;
use std::ops::{Mul, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::graph::{GraphError, MixedGraph};

/// Largest order accepted by [`char_poly`].
pub const MAX_CHAR_POLY_ORDER: usize = 64;

/// Dense integer polynomial, lowest degree first, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: impl IntoIterator<Item = BigInt>) -> Self {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// From small coefficients given highest degree first, as polynomials are
    /// usually written.
    pub fn from_high(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().rev().map(|&c| BigInt::from(c)))
    }

    /// `x - a`.
    pub fn linear(a: i64) -> Self {
        Self::from_high(&[1, -a])
    }

    pub fn monomial(degree: usize) -> Self {
        let mut c = vec![BigInt::zero(); degree + 1];
        c[degree] = BigInt::one();
        IntPolynomial { coeffs: c }
    }

    pub fn one() -> Self {
        Self::monomial(0)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(Self::one(), |acc, _| &acc * self)
    }

    /// Quotient and remainder by a monic divisor; both are integral.
    pub fn div_rem_monic(&self, d: &IntPolynomial) -> (IntPolynomial, IntPolynomial) {
        let dd = d.degree().expect("division by the zero polynomial");
        assert!(d.leading().unwrap().is_one(), "divisor must be monic");
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (IntPolynomial::new([]), self.clone());
        }
        let mut quot = vec![BigInt::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = rem[i + dd].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in d.coeffs.iter().enumerate() {
                rem[i + j] -= &c * dc;
            }
            quot[i] = c;
        }
        (IntPolynomial::new(quot), IntPolynomial::new(rem))
    }

    /// Largest `m` with `d^m` dividing `self` (`d` monic and non-constant).
    pub fn multiplicity_of(&self, d: &IntPolynomial) -> u32 {
        assert!(d.degree().unwrap_or(0) > 0, "multiplicity needs a non-constant factor");
        let mut m = 0;
        let mut p = self.clone();
        while !p.is_zero() {
            let (q, r) = p.div_rem_monic(d);
            if !r.is_zero() {
                break;
            }
            m += 1;
            p = q;
        }
        m
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::new([]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        let get = |p: &IntPolynomial, i: usize| p.coeffs.get(i).cloned().unwrap_or_default();
        IntPolynomial::new((0..len).map(|i| get(self, i) - get(rhs, i)))
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let show_mag = !mag.is_one() || i == 0;
            match (show_mag, i) {
                (true, 0) => write!(f, "{mag}")?,
                (true, 1) => write!(f, "{mag}x")?,
                (true, _) => write!(f, "{mag}x^{i}")?,
                (false, 1) => write!(f, "x")?,
                (false, _) => write!(f, "x^{i}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

fn integer_adjacency(g: &MixedGraph) -> Result<Vec<Vec<BigInt>>, GraphError> {
    if g.order() > MAX_CHAR_POLY_ORDER {
        return Err(GraphError::TooLarge { n: g.order(), cap: MAX_CHAR_POLY_ORDER });
    }
    Ok(g.adjacency_matrix().into_iter().map(|r| r.into_iter().map(BigInt::from).collect()).collect())
}

/// `det(xI - A)` by Faddeev–LeVerrier. Every division by `k` is exact.
pub fn char_poly(g: &MixedGraph) -> Result<IntPolynomial, GraphError> {
    let a = integer_adjacency(g)?;
    let n = a.len();
    // coeffs[i] is the coefficient of x^i.
    let mut coeffs = vec![BigInt::zero(); n + 1];
    coeffs[n] = BigInt::one();
    let mut m = vec![vec![BigInt::zero(); n]; n];
    for k in 1..=n {
        // M_k = A M_{k-1} + c_{n-k+1} I, c_{n-k} = -tr(A M_k) / k.
        let mut next = mat_mul(&a, &m);
        for (i, row) in next.iter_mut().enumerate() {
            row[i] += &coeffs[n - k + 1];
        }
        let am = mat_mul(&a, &next);
        let trace: BigInt = (0..n).map(|i| &am[i][i]).sum();
        let (q, r) = (-trace).div_rem(&BigInt::from(k));
        assert!(r.is_zero(), "Faddeev–LeVerrier division must be exact");
        coeffs[n - k] = q;
        m = next;
    }
    Ok(IntPolynomial::new(coeffs))
}

fn mat_mul(a: &[Vec<BigInt>], b: &[Vec<BigInt>]) -> Vec<Vec<BigInt>> {
    let n = a.len();
    let mut out = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        for l in 0..n {
            if a[i][l].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[l][j].is_zero() {
                    out[i][j] += &a[i][l] * &b[l][j];
                }
            }
        }
    }
    out
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn bareiss_determinant(mut m: Vec<Vec<BigInt>>) -> BigInt {
    let n = m.len();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &m[i][j] * &m[k][k] - &m[i][k] * &m[k][j];
                m[i][j] = v / &prev;
            }
        }
        prev = m[k][k].clone();
    }
    if n == 0 {
        return BigInt::one();
    }
    sign * &m[n - 1][n - 1]
}

/// Characteristic polynomial by evaluating `det(tI - A)` with Bareiss at
/// `t = 0..=n` and interpolating. Independent of [`char_poly`].
pub fn char_poly_by_interpolation(g: &MixedGraph) -> Result<IntPolynomial, GraphError> {
    let a = integer_adjacency(g)?;
    let n = a.len();
    let xs: Vec<BigInt> = (0..=n as i64).map(BigInt::from).collect();
    let ys: Vec<BigInt> = xs
        .iter()
        .map(|t| {
            let m = (0..n)
                .map(|i| (0..n).map(|j| if i == j { t - &a[i][j] } else { -&a[i][j] }).collect())
                .collect();
            bareiss_determinant(m)
        })
        .collect();
    Ok(interpolate(&xs, &ys))
}

/// Newton interpolation through integer points; the result must be integral.
fn interpolate(xs: &[BigInt], ys: &[BigInt]) -> IntPolynomial {
    let n = xs.len();
    let mut dd: Vec<BigRational> = ys.iter().map(|y| BigRational::from_integer(y.clone())).collect();
    for level in 1..n {
        for i in (level..n).rev() {
            let den = BigRational::from_integer(&xs[i] - &xs[i - level]);
            dd[i] = (&dd[i] - &dd[i - 1]) / den;
        }
    }
    // Horner on the Newton form.
    let mut poly: Vec<BigRational> = vec![dd[n - 1].clone()];
    for i in (0..n - 1).rev() {
        // poly = poly * (x - xs[i]) + dd[i]
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (j, c) in poly.iter().enumerate() {
            next[j + 1] += c;
            next[j] -= c * BigRational::from_integer(xs[i].clone());
        }
        next[0] += &dd[i];
        poly = next;
    }
    IntPolynomial::new(poly.into_iter().map(|c| {
        assert!(c.is_integer(), "interpolated characteristic polynomial must be integral");
        c.to_integer()
    }))
}

/// `p_1 .. p_9`, index 0 holding `p_1`.
pub fn builtin_polynomials() -> [IntPolynomial; 9] {
    [
        IntPolynomial::from_high(&[1, 1, -2, -1, 2]),
        IntPolynomial::from_high(&[1, 1, -2, -1]),
        IntPolynomial::from_high(&[1, 0, -1, 1]),
        IntPolynomial::from_high(&[1, 2, -1, -3]),
        IntPolynomial::from_high(&[1, 1, -1, -1, 1]),
        IntPolynomial::from_high(&[1, 1, -3, -1, 5, 0, -4]),
        IntPolynomial::from_high(&[1, 3, 0, -6, 2, 11, -3, -9, 3, 3]),
        IntPolynomial::from_high(&[1, 1, -3, -2, 5, 2, -3]),
        IntPolynomial::from_high(&[1, 1, -1, 0, 3, 0, -1]),
    ]
}

/// A spectral class: its characteristic polynomial as a product of factors
/// with multiplicities, and how many catalogue graphs fall in it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SpectrumClass {
    pub id: u8,
    pub factors: Vec<(IntPolynomial, u32)>,
    pub expected_members: usize,
}

impl SpectrumClass {
    pub fn product(&self) -> IntPolynomial {
        self.factors.iter().fold(IntPolynomial::one(), |acc, (p, m)| &acc * &p.pow(*m))
    }

    pub fn degree(&self) -> usize {
        self.factors.iter().map(|(p, m)| p.degree().unwrap() * *m as usize).sum()
    }
}

/// The six classes of the order-14 diameter-4 catalogue.
pub fn spectrum_classes() -> Vec<SpectrumClass> {
    let p = builtin_polynomials();
    let x = IntPolynomial::linear(0);
    let two = IntPolynomial::linear(2);
    let one = IntPolynomial::linear(1);
    let minus_one = IntPolynomial::linear(-1);
    let class = |id: u8, factors: Vec<(&IntPolynomial, u32)>, expected_members| SpectrumClass {
        id,
        factors: factors.into_iter().map(|(f, m)| (f.clone(), m)).collect(),
        expected_members,
    };
    vec![
        class(1, vec![(&two, 1), (&x, 6), (&p[0], 1), (&p[1], 1)], 9),
        class(2, vec![(&two, 1), (&minus_one, 1), (&one, 1), (&x, 5), (&p[2], 1), (&p[3], 1)], 6),
        class(3, vec![(&two, 1), (&x, 7), (&p[1], 2)], 5),
        class(4, vec![(&two, 1), (&x, 3), (&p[4], 1), (&p[5], 1)], 4),
        class(5, vec![(&two, 1), (&one, 1), (&x, 3), (&p[6], 1)], 2),
        class(6, vec![(&two, 1), (&x, 1), (&p[7], 1), (&p[8], 1)], 1),
    ]
}

/// The class whose template equals the characteristic polynomial of `g`, or
/// `None` when no template matches.
pub fn classify(g: &MixedGraph) -> Result<Option<SpectrumClass>, GraphError> {
    let cp = char_poly(g)?;
    Ok(spectrum_classes().into_iter().find(|c| c.product() == cp))
}
