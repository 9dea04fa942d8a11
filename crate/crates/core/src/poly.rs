//! Integer polynomials attached to rows of Pascal's triangle mod `p`.
//!
//! `P_n(X) = ∑ [binom(n,j) mod p] X^j` and `Q_n(X) = ∏ (1 + X^{p^i})^{n_i}`
//! agree mod `p`; they agree over the integers exactly when every product
//! `∏ binom(n_i, δ_i)` stays below `p`. Their difference is `κ_{p,n}`.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::basep::{digits_of_u64, Prime};
use crate::pascal;

/// Polynomial with arbitrary-precision integer coefficients, indexed by
/// exponent. The highest stored coefficient is never zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn from_coeffs(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::from_i64s(&[1])
    }

    /// `1 + X`.
    pub fn one_plus_x() -> Self {
        Self::from_i64s(&[1, 1])
    }

    pub fn monomial(c: BigInt, exp: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); exp + 1];
        coeffs[exp] = c;
        Self::from_coeffs(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, exp: usize) -> BigInt {
        self.coeffs.get(exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    /// Multiplies in place by `1 + X^shift`.
    fn mul_binomial_in_place(&mut self, shift: usize) {
        let old_len = self.coeffs.len();
        self.coeffs.resize(old_len + shift, BigInt::zero());
        for j in (shift..old_len + shift).rev() {
            let lower = self.coeffs[j - shift].clone();
            self.coeffs[j] += lower;
        }
    }
}

impl Add for &IntPolynomial {
    type Output = IntPolynomial;

    fn add(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &IntPolynomial {
    type Output = IntPolynomial;

    fn sub(self, rhs: &IntPolynomial) -> IntPolynomial {
        let len = self.coeffs.len().max(rhs.coeffs.len());
        IntPolynomial::from_coeffs((0..len).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Mul for &IntPolynomial {
    type Output = IntPolynomial;

    fn mul(self, rhs: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || rhs.is_zero() {
            return IntPolynomial::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::from_coeffs(out)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            match e {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if e == 1 {
                        f.write_str("X")?;
                    } else {
                        write!(f, "X^{e}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

/// `P_n(X) = ∑_j [binom(n,j) mod p] X^j`.
pub fn p_poly(n: u64, p: Prime) -> IntPolynomial {
    IntPolynomial::from_coeffs(
        pascal::row(n, p)
            .coeffs()
            .iter()
            .map(|&c| BigInt::from(c))
            .collect(),
    )
}

/// `Q_n(X) = ∏_i (1 + X^{p^i})^{n_i}`, expanded.
pub fn q_poly(n: u64, p: Prime) -> IntPolynomial {
    let mut out = IntPolynomial::one();
    let mut pi = 1usize;
    for d in digits_of_u64(n, p) {
        for _ in 0..d {
            out.mul_binomial_in_place(pi);
        }
        pi *= p.get() as usize;
    }
    out
}

/// Whether `∏ binom(n_i, δ_i) < p` for every choice `δ_i ≤ n_i`.
///
/// The maximum of the product is the product of the per-digit maxima
/// `binom(n_i, ⌊n_i/2⌋)`, so no enumeration over `δ` is needed.
pub fn digit_condition(n: u64, p: Prime) -> bool {
    let limit = u128::from(p.get());
    let mut product = 1u128;
    for d in digits_of_u64(n, p) {
        product *= central_binomial(d);
        if product >= limit {
            return false;
        }
    }
    true
}

fn central_binomial(a: u32) -> u128 {
    let b = u128::from(a / 2);
    let a = u128::from(a);
    (0..b).fold(1u128, |acc, i| acc * (a - i) / (i + 1))
}

/// `κ_{p,n}(X) = Q_n(X) - P_n(X)`.
pub fn kappa(n: u64, p: Prime) -> IntPolynomial {
    &q_poly(n, p) - &p_poly(n, p)
}

/// Horner evaluation.
pub fn eval_at(poly: &IntPolynomial, x: &BigInt) -> BigInt {
    poly.coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// `∏_{i<k} (1 + X^{p^i} + … + X^{(p-1)p^i})`, the partial product whose
/// expansion is `∑_{n < p^k} X^n`.
pub fn digit_expansion_product(k: u32, p: Prime) -> IntPolynomial {
    let mut out = IntPolynomial::one();
    let mut pi = 1usize;
    for _ in 0..k {
        let factor = IntPolynomial::from_coeffs(
            (0..(p.get() as usize - 1) * pi + 1)
                .map(|e| BigInt::from(u8::from(e % pi == 0)))
                .collect(),
        );
        out = &out * &factor;
        pi *= p.get() as usize;
    }
    out
}
