//! Exact dense univariate integer polynomials.
//!
//! Every algorithm in this crate produces or consumes an [`IntPolynomial`].
//! Coefficients are arbitrary-precision integers: lattice counts for graphs
//! like K_{5,5} reach the millions and binomial convolutions grow further,
//! so machine words are not safe here.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

/// Dense univariate polynomial with exact integer coefficients.
///
/// Index `k` of the coefficient vector is the coefficient of `x^k`. The
/// representation is canonical: trailing zeros are stripped and the zero
/// polynomial is the empty vector.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::one()],
        }
    }

    /// The monomial `x`.
    pub fn x() -> Self {
        IntPolynomial {
            coeffs: vec![BigInt::zero(), BigInt::one()],
        }
    }

    pub fn constant(c: impl Into<BigInt>) -> Self {
        Self::from_coeffs(vec![c.into()])
    }

    /// Builds a polynomial from ascending-power coefficients, normalizing
    /// away trailing zeros.
    pub fn from_coeffs<I, T>(coeffs: I) -> Self
    where
        I: IntoIterator<Item = T>,
        T: Into<BigInt>,
    {
        let mut coeffs: Vec<BigInt> = coeffs.into_iter().map(Into::into).collect();
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    /// Coefficients in ascending powers; empty for the zero polynomial.
    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    /// Coefficient of `x^k` (zero beyond the degree).
    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_else(BigInt::zero)
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Value at `x = 1`, i.e. the coefficient sum.
    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.iter().sum()
    }
}

impl<T: Into<BigInt>> From<Vec<T>> for IntPolynomial {
    fn from(v: Vec<T>) -> Self {
        Self::from_coeffs(v)
    }
}

fn normalized(mut coeffs: Vec<BigInt>) -> IntPolynomial {
    while coeffs.last().is_some_and(Zero::is_zero) {
        coeffs.pop();
    }
    IntPolynomial { coeffs }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        normalized(coeffs)
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        normalized(coeffs)
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut coeffs = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        normalized(coeffs)
    }
}

impl Neg for &IntPolynomial {
    type Output = IntPolynomial;

    fn neg(self) -> IntPolynomial {
        IntPolynomial {
            coeffs: self.coeffs.iter().map(|a| -a).collect(),
        }
    }
}

/// Binomial coefficient C(n, k); zero when `k > n`.
pub fn binom(n: u64, k: u64) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    let mut r = BigInt::one();
    for t in 0..k {
        r = r * BigInt::from(n - t) / BigInt::from(t + 1);
    }
    r
}

/// Expansion of `(1 - x)^k` with signed binomial coefficients.
pub fn one_minus_x_pow(k: usize) -> IntPolynomial {
    let coeffs = (0..=k as u64)
        .map(|j| {
            let b = binom(k as u64, j);
            if j % 2 == 0 {
                b
            } else {
                -b
            }
        })
        .collect::<Vec<_>>();
    IntPolynomial::from_coeffs(coeffs)
}

/// First `upto + 1` coefficients of `numerator / (1 - x)^denom_power`.
///
/// Expanding `1/(1-x)^k` as the stars-and-bars sequence `C(s+k-1, k-1)` and
/// convolving with the numerator keeps everything in exact integers.
pub fn series_coeffs(numerator: &IntPolynomial, denom_power: usize, upto: usize) -> Vec<BigInt> {
    let k = denom_power as u64;
    (0..=upto)
        .map(|s| {
            let mut c = BigInt::zero();
            for (t, a) in numerator.coeffs.iter().enumerate().take(s + 1) {
                if a.is_zero() {
                    continue;
                }
                let j = (s - t) as u64;
                if k == 0 {
                    if j == 0 {
                        c += a;
                    }
                } else {
                    c += a * binom(j + k - 1, k - 1);
                }
            }
            c
        })
        .collect()
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if k == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if k == 1 {
                    write!(f, "x")?;
                } else {
                    write!(f, "x^{k}")?;
                }
            }
        }
        Ok(())
    }
}
